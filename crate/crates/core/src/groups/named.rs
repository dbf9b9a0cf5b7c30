//! Named permutation groups.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};
use crate::pa::Permutation;

use super::{parse_generator_file, PermGroup};

const M22_DATA: &str = include_str!("../../data/m22.txt");
const M23_DATA: &str = include_str!("../../data/m23.txt");
const M24_DATA: &str = include_str!("../../data/m24.txt");

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupName {
    /// `x -> ax + b` on `F_q`.
    Agl1 {
        q: u32,
    },
    /// `x -> (ax + b) / (cx + d)` on `F_q ∪ {∞}`, with `∞` as point `q`.
    Pgl2 {
        q: u32,
    },
    /// `v -> Av + w` on `F_q^d`; vectors are numbered by their base-`q`
    /// digits with coordinate 0 least significant.
    Agl {
        d: u32,
        q: u32,
    },
    /// `S_m` acting on the 2-subsets of `{0..m}`, numbered in lex order.
    SymPairs {
        m: u32,
    },
    Symmetric {
        n: u32,
    },
    Mathieu {
        n: u32,
    },
}

impl GroupName {
    /// Resolves a command-line style name. Parameters not used by the
    /// named family are ignored.
    pub fn from_parts(name: &str, q: Option<u32>, d: Option<u32>, m: Option<u32>) -> Result<Self> {
        let need = |v: Option<u32>, what: &str| {
            v.ok_or_else(|| Error::InvalidParameter(format!("group {name:?} needs --{what}")))
        };
        let lower = name.to_ascii_lowercase();
        Ok(match lower.as_str() {
            "agl1" => GroupName::Agl1 { q: need(q, "q")? },
            "pgl2" => GroupName::Pgl2 { q: need(q, "q")? },
            "agl" => GroupName::Agl { d: need(d, "d")?, q: need(q, "q")? },
            "sym_pairs" | "sym-pairs" | "sympairs" => GroupName::SymPairs { m: need(m, "m")? },
            "symmetric" | "sym" => GroupName::Symmetric { n: need(m, "m")? },
            "mathieu22" | "m22" => GroupName::Mathieu { n: 22 },
            "mathieu23" | "m23" => GroupName::Mathieu { n: 23 },
            "mathieu24" | "m24" => GroupName::Mathieu { n: 24 },
            _ => return Err(Error::UnknownGroup(name.to_string())),
        })
    }
}

impl fmt::Display for GroupName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GroupName::Agl1 { q } => write!(f, "AGL1({q})"),
            GroupName::Pgl2 { q } => write!(f, "PGL2({q})"),
            GroupName::Agl { d, q } => write!(f, "AGL{d}({q})"),
            GroupName::SymPairs { m } => write!(f, "SYM_PAIRS({m})"),
            GroupName::Symmetric { n } => write!(f, "S{n}"),
            GroupName::Mathieu { n } => write!(f, "M{n}"),
        }
    }
}

pub fn make_named(name: &GroupName) -> Result<PermGroup> {
    match *name {
        GroupName::Agl1 { q } => agl1(q),
        GroupName::Pgl2 { q } => pgl2(q),
        GroupName::Agl { d, q } => agl(d, q),
        GroupName::SymPairs { m } => sym_pairs(m),
        GroupName::Symmetric { n } => symmetric(n),
        GroupName::Mathieu { n } => mathieu(n),
    }
}

fn field_for_group(q: u32) -> Result<FieldCtx> {
    if !(2..=1 << 12).contains(&q) {
        return Err(Error::InvalidParameter(format!("group field order {q} outside 2..=4096")));
    }
    FieldCtx::with_order(u64::from(q))
}

fn perm_from_fn(n: usize, f: impl Fn(usize) -> usize) -> Result<Permutation> {
    Permutation::new((0..n).map(|x| f(x) as u32).collect())
}

pub fn agl1(q: u32) -> Result<PermGroup> {
    let ctx = field_for_group(q)?;
    let n = q as usize;
    let g = ctx.primitive_element();
    let shift = perm_from_fn(n, |x| ctx.add(FieldElem(x as u32), FieldElem::ONE).value() as usize)?;
    let scale = perm_from_fn(n, |x| ctx.mul(FieldElem(x as u32), g).value() as usize)?;
    PermGroup::new(n, vec![shift, scale], GroupName::Agl1 { q }.to_string())
}

pub fn pgl2(q: u32) -> Result<PermGroup> {
    let ctx = field_for_group(q)?;
    let n = q as usize + 1;
    let inf = q as usize;
    let g = ctx.primitive_element();
    let shift =
        perm_from_fn(
            n,
            |x| if x == inf { inf } else { ctx.add(FieldElem(x as u32), FieldElem::ONE).value() as usize },
        )?;
    let scale = perm_from_fn(n, |x| if x == inf { inf } else { ctx.mul(FieldElem(x as u32), g).value() as usize })?;
    let recip = perm_from_fn(n, |x| match x {
        0 => inf,
        x if x == inf => 0,
        x => ctx.inv(FieldElem(x as u32)).expect("nonzero").value() as usize,
    })?;
    PermGroup::new(n, vec![shift, scale, recip], GroupName::Pgl2 { q }.to_string())
}

/// Generators: `diag(g, 1, ..., 1)`, the transvections `I + E_ij` for
/// `i != j`, and translation by `e_0`.
pub fn agl(d: u32, q: u32) -> Result<PermGroup> {
    if !(1..=3).contains(&d) || q > 5 {
        return Err(Error::InvalidParameter(format!("AGL_d(q) supports d <= 3 and q <= 5, got d={d} q={q}")));
    }
    let ctx = field_for_group(q)?;
    let d = d as usize;
    let n = (q as usize).pow(d as u32);
    let decode = |mut x: usize| {
        let mut v = vec![FieldElem::ZERO; d];
        for c in v.iter_mut() {
            *c = FieldElem((x % q as usize) as u32);
            x /= q as usize;
        }
        v
    };
    let encode = |v: &[FieldElem]| v.iter().rev().fold(0usize, |acc, c| acc * q as usize + c.value() as usize);
    let mut gens = Vec::new();
    let g = ctx.primitive_element();
    gens.push(perm_from_fn(n, |x| {
        let mut v = decode(x);
        v[0] = ctx.mul(v[0], g);
        encode(&v)
    })?);
    for i in 0..d {
        for j in 0..d {
            if i != j {
                gens.push(perm_from_fn(n, |x| {
                    let mut v = decode(x);
                    v[i] = ctx.add(v[i], v[j]);
                    encode(&v)
                })?);
            }
        }
    }
    gens.push(perm_from_fn(n, |x| {
        let mut v = decode(x);
        v[0] = ctx.add(v[0], FieldElem::ONE);
        encode(&v)
    })?);
    gens.retain(|p| !p.is_identity());
    if gens.is_empty() {
        gens.push(Permutation::identity(n));
    }
    PermGroup::new(n, gens, GroupName::Agl { d: d as u32, q }.to_string())
}

/// Index of the 2-subset `{i, j}` (`i < j`) in lexicographic order.
fn pair_index(m: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    i * m - i * (i + 1) / 2 + (j - i - 1)
}

pub fn sym_pairs(m: u32) -> Result<PermGroup> {
    if !(3..=64).contains(&m) {
        return Err(Error::InvalidParameter(format!("SYM_PAIRS(m) needs 3 <= m <= 64, got {m}")));
    }
    let m = m as usize;
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|i| (i + 1..m).map(move |j| (i, j))).collect();
    let n = pairs.len();
    let induced = |sigma: &dyn Fn(usize) -> usize| {
        perm_from_fn(n, |p| {
            let (i, j) = pairs[p];
            pair_index(m, sigma(i), sigma(j))
        })
    };
    let swap = induced(&|x| match x {
        0 => 1,
        1 => 0,
        x => x,
    })?;
    let cycle = induced(&|x| (x + 1) % m)?;
    PermGroup::new(n, vec![swap, cycle], GroupName::SymPairs { m: m as u32 }.to_string())
}

pub fn symmetric(n: u32) -> Result<PermGroup> {
    if !(2..=4096).contains(&n) {
        return Err(Error::InvalidParameter(format!("S_n needs 2 <= n <= 4096, got {n}")));
    }
    let n = n as usize;
    let swap = perm_from_fn(n, |x| match x {
        0 => 1,
        1 => 0,
        x => x,
    })?;
    let cycle = perm_from_fn(n, |x| (x + 1) % n)?;
    PermGroup::new(n, vec![swap, cycle], GroupName::Symmetric { n: n as u32 }.to_string())
}

pub fn mathieu(n: u32) -> Result<PermGroup> {
    let data = match n {
        22 => M22_DATA,
        23 => M23_DATA,
        24 => M24_DATA,
        _ => return Err(Error::UnknownGroup(format!("mathieu{n}"))),
    };
    Ok(parse_generator_file(data)?.0)
}

/// Expected order recorded in the embedded data file.
pub fn mathieu_recorded_order(n: u32) -> Result<u128> {
    let data = match n {
        22 => M22_DATA,
        23 => M23_DATA,
        24 => M24_DATA,
        _ => return Err(Error::UnknownGroup(format!("mathieu{n}"))),
    };
    Ok(parse_generator_file(data)?.1)
}
