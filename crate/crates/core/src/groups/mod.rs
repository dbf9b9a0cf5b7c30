//! Permutation groups used as permutation arrays.
//!
//! The minimum distance of a group, viewed as an array, is its minimal
//! degree: `d(g, h)` is the number of points moved by `g h^-1`, so the
//! minimum over pairs equals the minimum over non-identity elements.

pub mod bsgs;
pub mod named;

use std::collections::{HashSet, VecDeque};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::pa::{PermArray, Permutation};

pub use bsgs::Bsgs;
pub use named::{make_named, GroupName};

/// Default element cap for closure and exact scans.
pub const DEFAULT_CAP: u128 = 1 << 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    name: String,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>, name: impl Into<String>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::InvalidParameter("a group needs at least one generator".into()));
        }
        if let Some(g) = generators.iter().find(|g| g.len() != degree) {
            return Err(Error::LengthMismatch(g.len(), degree));
        }
        Ok(PermGroup { degree, generators, name: name.into() })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn bsgs(&self) -> Bsgs {
        Bsgs::new(self.degree, &self.generators)
    }

    /// Exact order by Schreier–Sims.
    pub fn order(&self) -> u128 {
        self.bsgs().order()
    }

    /// Every element, by breadth-first closure under the generators,
    /// sorted.
    pub fn closure(&self, cap: u128) -> Result<Vec<Permutation>> {
        let id = Permutation::identity(self.degree);
        let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in &self.generators {
                let y = g.compose(&x);
                if !seen.contains(&y) {
                    if seen.len() as u128 >= cap {
                        return Err(Error::CapExceeded { what: "group closure", size: seen.len() as u128 + 1, cap });
                    }
                    seen.insert(y.clone());
                    queue.push_back(y);
                }
            }
        }
        let mut out: Vec<Permutation> = seen.into_iter().collect();
        out.sort_unstable();
        Ok(out)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum MinimalDegree {
    /// Every non-identity element was scanned.
    Exact { value: usize },
    /// Smallest degree seen among `trials` uniformly random elements: an
    /// upper bound on the true minimal degree.
    SampledUpperBound { observed: usize, trials: u64, seed: u64 },
}

impl MinimalDegree {
    pub fn value(&self) -> usize {
        match *self {
            MinimalDegree::Exact { value } => value,
            MinimalDegree::SampledUpperBound { observed, .. } => observed,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, MinimalDegree::Exact { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupFacts {
    pub name: String,
    pub degree: usize,
    pub order: u128,
    pub minimal_degree: MinimalDegree,
    /// `degree - minimal_degree` when the scan was exact.
    pub fixity: Option<usize>,
    /// Most fixed points seen on a non-identity element.
    pub max_fixed_points: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScanMode {
    Exact,
    Sampled { trials: u64, seed: u64 },
}

/// Order and minimal degree of `g`. The exact scan walks every element via
/// the strong generating set without storing them; it refuses groups larger
/// than `cap`.
pub fn minimal_degree(g: &PermGroup, mode: ScanMode, cap: u128) -> Result<GroupFacts> {
    let bsgs = g.bsgs();
    let order = bsgs.order();
    let n = g.degree;
    let (min, max_fixed, md) = match mode {
        ScanMode::Exact => {
            if order > cap {
                return Err(Error::CapExceeded { what: "exact minimal-degree scan", size: order, cap });
            }
            let (min, max_fixed) = bsgs.fold_elements(
                || (usize::MAX, 0usize),
                |(min, fixed), img| {
                    let moved = img.iter().enumerate().filter(|&(i, &v)| i as u32 != v).count();
                    if moved == 0 {
                        (min, fixed)
                    } else {
                        (min.min(moved), fixed.max(n - moved))
                    }
                },
                |a, b| (a.0.min(b.0), a.1.max(b.1)),
            );
            (min, max_fixed, MinimalDegree::Exact { value: min })
        }
        ScanMode::Sampled { trials, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut min = usize::MAX;
            let mut max_fixed = 0;
            for _ in 0..trials {
                let x = bsgs.random_element(&mut rng, 0);
                let moved = x.degree();
                if moved > 0 {
                    min = min.min(moved);
                    max_fixed = max_fixed.max(n - moved);
                }
            }
            (min, max_fixed, MinimalDegree::SampledUpperBound { observed: min, trials, seed })
        }
    };
    // the trivial group has no non-identity element
    let (md, fixity) = if min == usize::MAX {
        let md = match md {
            MinimalDegree::Exact { .. } => MinimalDegree::Exact { value: n },
            MinimalDegree::SampledUpperBound { trials, seed, .. } => {
                MinimalDegree::SampledUpperBound { observed: n, trials, seed }
            }
        };
        (md, None)
    } else {
        (md, md.is_exact().then(|| n - min))
    };
    Ok(GroupFacts { name: g.name.clone(), degree: n, order, minimal_degree: md, fixity, max_fixed_points: max_fixed })
}

/// The group's elements as an array whose claimed distance is the minimal
/// degree recorded in `facts`.
pub fn group_to_pa(g: &PermGroup, facts: &GroupFacts, cap: u128) -> Result<PermArray> {
    let rows = g.closure(cap)?;
    let d = facts.minimal_degree.value().clamp(1, g.degree.max(1));
    PermArray::new(g.degree, rows, d, None, format!("group:{}", g.name))
}

/// Parses a generator data file: `#` comments, a header line
/// `name=<name> degree=<n> order=<order>`, then one generator per line in
/// image form. Returns the group and its expected order.
pub fn parse_generator_file(text: &str) -> Result<(PermGroup, u128)> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'));
    let (hl, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "missing header".into() })?;
    let bad = |line: usize, msg: String| Error::Parse { line: line + 1, msg };
    let mut name = None;
    let mut degree = None;
    let mut order = None;
    for field in header.split_whitespace() {
        match field.split_once('=') {
            Some(("name", v)) => name = Some(v.to_string()),
            Some(("degree", v)) => degree = Some(v.parse::<usize>().map_err(|e| bad(hl, e.to_string()))?),
            Some(("order", v)) => order = Some(v.parse::<u128>().map_err(|e| bad(hl, e.to_string()))?),
            _ => return Err(bad(hl, format!("unexpected header field {field:?}"))),
        }
    }
    let (name, degree, order) = match (name, degree, order) {
        (Some(a), Some(b), Some(c)) => (a, b, c),
        _ => return Err(bad(hl, "header needs name, degree and order".into())),
    };
    let mut gens = Vec::new();
    for (i, line) in lines {
        let images = line
            .split_whitespace()
            .map(|t| t.parse::<u32>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| bad(i, e.to_string()))?;
        if images.len() != degree {
            return Err(bad(i, format!("expected {degree} images, found {}", images.len())));
        }
        gens.push(Permutation::new(images).map_err(|e| bad(i, e.to_string()))?);
    }
    Ok((PermGroup::new(degree, gens, name)?, order))
}

/// Renders generators in the data-file format.
pub fn format_generator_file(g: &PermGroup, comment: &str) -> String {
    let mut out = String::new();
    for line in comment.lines() {
        out.push_str("# ");
        out.push_str(line);
        out.push('\n');
    }
    out.push_str(&format!("name={} degree={} order={}\n", g.name, g.degree, g.order()));
    for gen in &g.generators {
        out.push_str(&gen.to_string());
        out.push('\n');
    }
    out
}
