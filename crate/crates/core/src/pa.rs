//! Permutations, permutation arrays and minimum-distance verification.

use std::collections::{HashMap, HashSet};
use std::fmt::{self, Write as _};
use std::sync::atomic::{AtomicUsize, Ordering};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Pair cap for full verification.
pub const DEFAULT_FULL_CAP: u128 = 10_000_000_000;
pub const DEFAULT_SAMPLES: u64 = 1_000_000;
pub const DEFAULT_SEED: u64 = 1;

/// A permutation of `{0, ..., n-1}` in image form: `images[i]` is the image
/// of point `i`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Permutation {
    images: Vec<u32>,
}

impl TryFrom<Vec<u32>> for Permutation {
    type Error = Error;

    fn try_from(images: Vec<u32>) -> Result<Self> {
        Permutation::new(images)
    }
}

impl From<Permutation> for Vec<u32> {
    fn from(p: Permutation) -> Self {
        p.images
    }
}

impl Permutation {
    pub fn new(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            let slot = seen
                .get_mut(v as usize)
                .ok_or_else(|| Error::InvalidPermutation(format!("image {v} out of range for length {n}")))?;
            if std::mem::replace(slot, true) {
                return Err(Error::InvalidPermutation(format!("image {v} repeated")));
            }
        }
        Ok(Permutation { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Permutation::new(images.clone()).is_ok());
        Permutation { images }
    }

    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n as u32).collect() }
    }

    /// Builds a permutation from disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[&[u32]]) -> Result<Self> {
        let mut images: Vec<u32> = (0..n as u32).collect();
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                let y = cycle[(i + 1) % cycle.len()];
                if x as usize >= n || y as usize >= n {
                    return Err(Error::InvalidPermutation(format!("cycle point out of range for length {n}")));
                }
                images[x as usize] = y;
            }
        }
        Permutation::new(images)
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    /// `self ∘ other`: first `other`, then `self`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.len(), other.len());
        Permutation { images: other.images.iter().map(|&x| self.images[x as usize]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i as u32 == v)
    }

    /// Number of points moved.
    pub fn degree(&self) -> usize {
        self.images.iter().enumerate().filter(|&(i, &v)| i as u32 != v).count()
    }

    pub fn smallest_moved_point(&self) -> Option<usize> {
        self.images.iter().enumerate().position(|(i, &v)| i as u32 != v)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.images.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Number of points where two permutations disagree.
pub fn hamming_distance(p: &Permutation, r: &Permutation) -> Result<usize> {
    if p.len() != r.len() {
        return Err(Error::LengthMismatch(p.len(), r.len()));
    }
    let d = mismatches(&p.images, &r.images);
    debug_assert_ne!(d, 1, "two permutations never differ in exactly one point");
    Ok(d)
}

#[inline]
fn mismatches<T: Copy + Eq>(a: &[T], b: &[T]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

/// Every permutation of `n` points in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Vec<u32>> {
    let mut current: Vec<u32> = (0..n as u32).collect();
    let mut out = vec![current.clone()];
    loop {
        let Some(i) = (1..n).rev().find(|&i| current[i - 1] < current[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| current[j] > current[i - 1]).expect("successor exists");
        current.swap(i - 1, j);
        current[i..].reverse();
        out.push(current.clone());
    }
}

/// An `(n, M, d)` permutation array with a claimed distance `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermArray {
    n: usize,
    rows: Vec<Permutation>,
    claimed_distance: usize,
    /// Index of the point standing for infinity, if any.
    infinity: Option<usize>,
    provenance: String,
}

impl PermArray {
    pub fn new(
        n: usize,
        rows: Vec<Permutation>,
        claimed_distance: usize,
        infinity: Option<usize>,
        provenance: impl Into<String>,
    ) -> Result<Self> {
        let provenance = provenance.into();
        if provenance.contains('\n') {
            return Err(Error::InvalidArray("provenance must be a single line".into()));
        }
        if !(1..=n).contains(&claimed_distance) {
            return Err(Error::InvalidArray(format!("claimed distance {claimed_distance} outside 1..={n}")));
        }
        if let Some(inf) = infinity {
            if inf != n - 1 {
                return Err(Error::InvalidArray(format!("infinity must be point {}", n - 1)));
            }
        }
        if let Some(bad) = rows.iter().position(|r| r.len() != n) {
            return Err(Error::InvalidArray(format!("row {bad} has length {} instead of {n}", rows[bad].len())));
        }
        let mut seen = HashMap::with_capacity(rows.len());
        for (i, r) in rows.iter().enumerate() {
            if let Some(&first) = seen.get(r) {
                return Err(Error::DuplicateRow { first, second: i });
            }
            seen.insert(r, i);
        }
        Ok(PermArray { n, rows, claimed_distance, infinity, provenance })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Permutation] {
        &self.rows
    }

    pub fn claimed_distance(&self) -> usize {
        self.claimed_distance
    }

    pub fn infinity(&self) -> Option<usize> {
        self.infinity
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    /// The text form: a header line
    /// `PA n=<n> M=<M> d=<d> inf=<none|index> provenance=<string>`
    /// followed by one row per line, images separated by single spaces.
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(self.rows.len() * self.n * 3 + 64);
        let inf = self.infinity.map_or_else(|| "none".to_string(), |i| i.to_string());
        writeln!(
            out,
            "PA n={} M={} d={} inf={} provenance={}",
            self.n,
            self.rows.len(),
            self.claimed_distance,
            inf,
            self.provenance
        )
        .unwrap();
        for r in &self.rows {
            writeln!(out, "{r}").unwrap();
        }
        out
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines.next().ok_or(Error::Parse { line: 1, msg: "empty input".into() })?;
        let bad = |msg: &str| Error::Parse { line: 1, msg: msg.to_string() };
        let rest = header.strip_prefix("PA ").ok_or_else(|| bad("header must start with \"PA \""))?;
        let (fields, provenance) = rest.split_once(" provenance=").ok_or_else(|| bad("missing provenance field"))?;
        let mut parts = fields.split(' ');
        let mut field = |key: &str| -> Result<&str> {
            parts.next().and_then(|p| p.strip_prefix(key)).ok_or_else(|| bad(&format!("expected field {key}")))
        };
        let n: usize = field("n=")?.parse().map_err(|_| bad("bad n"))?;
        let m: usize = field("M=")?.parse().map_err(|_| bad("bad M"))?;
        let d: usize = field("d=")?.parse().map_err(|_| bad("bad d"))?;
        let infinity = match field("inf=")? {
            "none" => None,
            "n-1" => Some(n.saturating_sub(1)),
            v => Some(v.parse().map_err(|_| bad("bad inf"))?),
        };
        let mut rows = Vec::with_capacity(m);
        for (idx, line) in lines.enumerate() {
            let lineno = idx + 2;
            if line.is_empty() {
                continue;
            }
            let images = line
                .split(' ')
                .map(|t| t.parse::<u32>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| Error::Parse { line: lineno, msg: e.to_string() })?;
            if images.len() != n {
                return Err(Error::Parse {
                    line: lineno,
                    msg: format!("expected {n} entries, found {}", images.len()),
                });
            }
            rows.push(Permutation::new(images).map_err(|e| Error::Parse { line: lineno, msg: e.to_string() })?);
        }
        if rows.len() != m {
            return Err(bad(&format!("header says M={m} but {} rows follow", rows.len())));
        }
        PermArray::new(n, rows, d, infinity, provenance)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(&PermArrayJson::from(self))?)
    }

    pub fn parse_json(text: &str) -> Result<Self> {
        let j: PermArrayJson = serde_json::from_str(text)?;
        if j.m != j.rows.len() {
            return Err(Error::InvalidArray(format!("M={} but {} rows", j.m, j.rows.len())));
        }
        PermArray::new(j.n, j.rows, j.d, j.inf, j.provenance)
    }

    /// Reads either format, sniffing the first byte.
    pub fn parse(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('{') {
            PermArray::parse_json(text)
        } else {
            PermArray::parse_text(text)
        }
    }

    /// Row data flattened into one contiguous buffer of narrow integers.
    fn flat<T: TryFrom<u32>>(&self) -> Vec<T> {
        self.rows.iter().flat_map(|r| r.images.iter().map(|&v| T::try_from(v).ok().expect("fits"))).collect()
    }
}

#[derive(Serialize, Deserialize)]
struct PermArrayJson {
    n: usize,
    #[serde(rename = "M")]
    m: usize,
    d: usize,
    inf: Option<usize>,
    provenance: String,
    rows: Vec<Permutation>,
}

impl From<&PermArray> for PermArrayJson {
    fn from(pa: &PermArray) -> Self {
        PermArrayJson {
            n: pa.n,
            m: pa.rows.len(),
            d: pa.claimed_distance,
            inf: pa.infinity,
            provenance: pa.provenance.clone(),
            rows: pa.rows.clone(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VerifyMode {
    Full,
    Sampled,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub mode: VerifyMode,
    pub rows: usize,
    pub pairs_checked: u128,
    /// `None` when fewer than two rows were available.
    pub min_observed: Option<usize>,
    pub witness: Option<(usize, usize)>,
    pub claimed_distance: usize,
    pub pass: bool,
    /// Whether `pass` is a proof (full scan) or only evidence.
    pub proof: bool,
}

impl VerifyReport {
    fn vacuous(mode: VerifyMode, pa: &PermArray) -> Self {
        VerifyReport {
            mode,
            rows: pa.size(),
            pairs_checked: 0,
            min_observed: None,
            witness: None,
            claimed_distance: pa.claimed_distance,
            pass: true,
            proof: true,
        }
    }
}

/// Exact minimum distance over all pairs.
///
/// Stops early once a row holding a pair closer than the claimed distance
/// has been found. Rows are scanned against all later rows; when a
/// violation exists only rows up to the first violating row contribute to
/// the report, so the report is the same for any thread count.
pub fn verify_full(pa: &PermArray, cap: u128) -> Result<VerifyReport> {
    let m = pa.size();
    if m < 2 {
        return Ok(VerifyReport::vacuous(VerifyMode::Full, pa));
    }
    let pairs = (m as u128) * (m as u128 - 1) / 2;
    if pairs > cap {
        return Err(Error::CapExceeded { what: "full pairwise verification", size: pairs, cap });
    }
    if pa.n <= 256 {
        Ok(verify_full_flat::<u8>(pa, pa.flat()))
    } else if pa.n <= 65536 {
        Ok(verify_full_flat::<u16>(pa, pa.flat()))
    } else {
        Ok(verify_full_flat::<u32>(pa, pa.flat()))
    }
}

fn verify_full_flat<T: Copy + Eq + Send + Sync>(pa: &PermArray, flat: Vec<T>) -> VerifyReport {
    let (m, n) = (pa.size(), pa.n);
    let claimed = pa.claimed_distance;
    let first_violation = AtomicUsize::new(usize::MAX);
    let per_row: Vec<Option<(usize, usize)>> = (0..m - 1)
        .into_par_iter()
        .map(|i| {
            if i > first_violation.load(Ordering::Relaxed) {
                return None;
            }
            let row = &flat[i * n..(i + 1) * n];
            let mut best = (usize::MAX, 0);
            for j in i + 1..m {
                let d = mismatches(row, &flat[j * n..(j + 1) * n]);
                if d < best.0 {
                    best = (d, j);
                }
            }
            if best.0 < claimed {
                first_violation.fetch_min(i, Ordering::Relaxed);
            }
            Some(best)
        })
        .collect();
    let last_row = first_violation.load(Ordering::Relaxed).min(m - 2);
    let mut min = usize::MAX;
    let mut witness = (0, 0);
    let mut pairs = 0u128;
    for (i, entry) in per_row.iter().enumerate().take(last_row + 1) {
        let (d, j) = entry.expect("rows up to the first violation are always scanned");
        pairs += (m - 1 - i) as u128;
        if d < min {
            min = d;
            witness = (i, j);
        }
    }
    assert_ne!(min, 1, "two permutations never differ in exactly one point");
    VerifyReport {
        mode: VerifyMode::Full,
        rows: m,
        pairs_checked: pairs,
        min_observed: Some(min),
        witness: Some(witness),
        claimed_distance: claimed,
        pass: min >= claimed,
        proof: true,
    }
}

/// Minimum over `samples` uniformly random pairs of distinct rows.
pub fn verify_sampled(pa: &PermArray, samples: u64, seed: u64) -> VerifyReport {
    let m = pa.size();
    if m < 2 || samples == 0 {
        return VerifyReport { proof: false, ..VerifyReport::vacuous(VerifyMode::Sampled, pa) };
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut min = usize::MAX;
    let mut witness = (0, 0);
    for _ in 0..samples {
        let i = rng.gen_range(0..m);
        let mut j = rng.gen_range(0..m - 1);
        if j >= i {
            j += 1;
        }
        let d = mismatches(&pa.rows[i].images, &pa.rows[j].images);
        if d < min {
            min = d;
            witness = (i.min(j), i.max(j));
        }
    }
    VerifyReport {
        mode: VerifyMode::Sampled,
        rows: m,
        pairs_checked: u128::from(samples),
        min_observed: Some(min),
        witness: Some(witness),
        claimed_distance: pa.claimed_distance,
        pass: min >= pa.claimed_distance,
        proof: false,
    }
}

/// Dispatches on `mode`.
pub fn min_distance(pa: &PermArray, mode: VerifyMode, samples: u64, seed: u64) -> Result<VerifyReport> {
    match mode {
        VerifyMode::Full => verify_full(pa, DEFAULT_FULL_CAP),
        VerifyMode::Sampled => Ok(verify_sampled(pa, samples, seed)),
    }
}

/// Whether the rows, taken to form a group, act sharply `k`-transitively:
/// the `k`-prefixes `(σ(0), ..., σ(k-1))` are pairwise distinct and there
/// are exactly `n!/(n-k)!` rows.
pub fn is_sharply_k_transitive(pa: &PermArray, k: usize) -> Result<bool> {
    if k > pa.n {
        return Err(Error::InvalidParameter(format!("k = {k} exceeds degree {}", pa.n)));
    }
    let expected = falling_factorial(pa.n, k);
    if expected != Some(pa.size() as u128) {
        return Ok(false);
    }
    let mut prefixes = HashSet::with_capacity(pa.size());
    Ok(pa.rows.iter().all(|r| prefixes.insert(&r.images[..k])))
}

/// `n (n-1) ... (n-k+1)`, `None` on overflow.
pub fn falling_factorial(n: usize, k: usize) -> Option<u128> {
    (0..k).try_fold(1u128, |acc, i| acc.checked_mul((n - i) as u128))
}

/// Checks on one instance that "distance at least `n-k+1`" and "sharply
/// `k`-transitive" agree for a group of order `n!/(n-k)!`.
pub fn theorem8_check(pa: &PermArray, k: usize) -> Result<bool> {
    if k > pa.n {
        return Err(Error::InvalidParameter(format!("k = {k} exceeds degree {}", pa.n)));
    }
    if falling_factorial(pa.n, k) != Some(pa.size() as u128) {
        return Err(Error::InvalidParameter(format!("group order {} is not {}!/({}-{})!", pa.size(), pa.n, pa.n, k)));
    }
    let report = verify_full(pa, DEFAULT_FULL_CAP)?;
    let distance_side = report.min_observed.is_none_or(|d| d > pa.n - k);
    Ok(distance_side == is_sharply_k_transitive(pa, k)?)
}

/// Whether the rows are closed under composition (quadratic; small arrays).
pub fn is_closed_under_composition(pa: &PermArray) -> bool {
    let set: HashSet<&Permutation> = pa.rows.iter().collect();
    pa.rows.iter().all(|a| pa.rows.iter().all(|b| set.contains(&a.compose(b))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn perm(v: &[u32]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    fn affine_pa(q: u32) -> PermArray {
        let mut rows = Vec::new();
        for a in 1..q {
            for b in 0..q {
                rows.push(perm(&(0..q).map(|x| (a * x + b) % q).collect::<Vec<_>>()));
            }
        }
        PermArray::new(q as usize, rows, q as usize - 1, None, "affine").unwrap()
    }

    #[test]
    fn distance_examples() {
        let id = Permutation::identity(5);
        assert_eq!(hamming_distance(&id, &id).unwrap(), 0);
        assert_eq!(hamming_distance(&Permutation::identity(3), &perm(&[1, 2, 0])).unwrap(), 3);
        assert_eq!(hamming_distance(&Permutation::identity(3), &perm(&[1, 0, 2])).unwrap(), 2);
        assert!(matches!(hamming_distance(&id, &Permutation::identity(4)), Err(Error::LengthMismatch(5, 4))));
    }

    #[test]
    fn permutation_validation() {
        assert!(Permutation::new(vec![0, 0, 1]).is_err());
        assert!(Permutation::new(vec![0, 3, 1]).is_err());
        let c = Permutation::from_cycles(4, &[&[0, 1, 2]]).unwrap();
        assert_eq!(c.images(), &[1, 2, 0, 3]);
        assert_eq!(c.compose(&c.inverse()), Permutation::identity(4));
    }

    #[test]
    fn all_permutations_counts() {
        assert_eq!(all_permutations(0).len(), 1);
        assert_eq!(all_permutations(4).len(), 24);
        let five = all_permutations(5);
        assert_eq!(five.len(), 120);
        assert_eq!(five.iter().collect::<HashSet<_>>().len(), 120);
    }

    #[test]
    fn full_verification_of_affine_maps() {
        let r = verify_full(&affine_pa(7), DEFAULT_FULL_CAP).unwrap();
        assert_eq!(r.min_observed, Some(6));
        assert_eq!(r.pairs_checked, 42 * 41 / 2);
        assert!(r.pass && r.proof);
    }

    #[test]
    fn duplicate_rows_rejected() {
        let rows = vec![Permutation::identity(3), Permutation::identity(3)];
        assert!(matches!(PermArray::new(3, rows, 2, None, "dup"), Err(Error::DuplicateRow { first: 0, second: 1 })));
    }

    #[test]
    fn violation_report_is_first_offending_row() {
        let mut rows = affine_pa(5).rows().to_vec();
        rows.push(perm(&[1, 0, 2, 3, 4]));
        let pa = PermArray::new(5, rows, 4, None, "bad").unwrap();
        let r = verify_full(&pa, DEFAULT_FULL_CAP).unwrap();
        assert!(!r.pass);
        let (i, j) = r.witness.unwrap();
        assert_eq!(hamming_distance(&pa.rows()[i], &pa.rows()[j]).unwrap(), r.min_observed.unwrap());
        assert_eq!(r.min_observed, Some(2));
        // identity is row 0 (a = 1, b = 0)
        assert_eq!((i, j), (0, 20));
    }

    #[test]
    fn full_cap() {
        assert!(matches!(verify_full(&affine_pa(7), 10), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn sampled_is_deterministic() {
        let pa = affine_pa(11);
        let a = verify_sampled(&pa, 1000, 42);
        assert_eq!(a, verify_sampled(&pa, 1000, 42));
        assert!(a.pass && !a.proof);
        assert_eq!(a.min_observed, Some(10));
    }

    #[test]
    fn text_round_trip() {
        let pa =
            PermArray::new(4, vec![Permutation::identity(4), perm(&[1, 0, 3, 2])], 2, Some(3), "test:x=1 with spaces")
                .unwrap();
        let text = pa.to_text();
        assert!(text.starts_with("PA n=4 M=2 d=2 inf=3 provenance=test:x=1 with spaces\n0 1 2 3\n"));
        let back = PermArray::parse(&text).unwrap();
        assert_eq!(back, pa);
        assert_eq!(back.to_text(), text);
        let json = pa.to_json().unwrap();
        assert_eq!(PermArray::parse(&json).unwrap(), pa);
    }

    #[test]
    fn parse_errors() {
        assert!(PermArray::parse_text("").is_err());
        assert!(PermArray::parse_text("PA n=3 M=1 d=2 inf=none provenance=x\n0 1\n").is_err());
        assert!(PermArray::parse_text("PA n=3 M=2 d=2 inf=none provenance=x\n0 1 2\n").is_err());
        assert!(PermArray::parse_text("PA n=3 M=1 d=2 inf=none provenance=x\n0 1 1\n").is_err());
        assert!(PermArray::parse_text("PB n=3 M=1 d=2 inf=none provenance=x\n0 1 2\n").is_err());
        let lit = PermArray::parse_text("PA n=3 M=1 d=2 inf=n-1 provenance=x\n0 1 2\n").unwrap();
        assert_eq!(lit.infinity(), Some(2));
    }

    #[test]
    fn sharp_transitivity_examples() {
        let s3: Vec<Permutation> = all_permutations(3).into_iter().map(|v| perm(&v)).collect();
        let s3 = PermArray::new(3, s3, 1, None, "S3").unwrap();
        assert!(is_sharply_k_transitive(&s3, 3).unwrap());
        assert!(is_closed_under_composition(&s3));
        let agl = affine_pa(7);
        assert!(is_sharply_k_transitive(&agl, 2).unwrap());
        assert!(!is_sharply_k_transitive(&agl, 1).unwrap());
        assert!(is_sharply_k_transitive(&agl, 8).is_err());
        assert!(theorem8_check(&affine_pa(5), 2).unwrap());
        let s4: Vec<Permutation> = all_permutations(4).into_iter().map(|v| perm(&v)).collect();
        let s4 = PermArray::new(4, s4, 1, None, "S4").unwrap();
        assert!(theorem8_check(&s4, 4).unwrap());
    }

    fn brute_min(rows: &[Permutation]) -> usize {
        let mut best = usize::MAX;
        for i in 0..rows.len() {
            for j in i + 1..rows.len() {
                best = best.min(hamming_distance(&rows[i], &rows[j]).unwrap());
            }
        }
        best
    }

    fn arb_perm(n: usize) -> impl Strategy<Value = Permutation> {
        Just((0..n as u32).collect::<Vec<_>>()).prop_shuffle().prop_map(|v| Permutation::new(v).unwrap())
    }

    proptest! {
        #[test]
        fn distance_is_a_metric_never_one(a in arb_perm(9), b in arb_perm(9), c in arb_perm(9)) {
            let ab = hamming_distance(&a, &b).unwrap();
            prop_assert_ne!(ab, 1);
            prop_assert_eq!(ab, hamming_distance(&b, &a).unwrap());
            prop_assert_eq!(ab == 0, a == b);
            prop_assert!(ab <= hamming_distance(&a, &c).unwrap() + hamming_distance(&c, &b).unwrap());
            // distance is the number of points moved by a b^-1
            prop_assert_eq!(ab, a.compose(&b.inverse()).degree());
        }

        #[test]
        fn distance_survives_relabeling(a in arb_perm(12), b in arb_perm(12), u in arb_perm(12)) {
            prop_assert_eq!(
                hamming_distance(&a.compose(&u), &b.compose(&u)).unwrap(),
                hamming_distance(&a, &b).unwrap()
            );
        }

        #[test]
        fn full_scan_matches_brute_force(rows in prop::collection::vec(arb_perm(7), 2..200)) {
            let mut uniq = Vec::new();
            let mut seen = HashSet::new();
            for r in rows {
                if seen.insert(r.clone()) {
                    uniq.push(r);
                }
            }
            prop_assume!(uniq.len() >= 2);
            let expected = brute_min(&uniq);
            let pa = PermArray::new(7, uniq, 1, None, "random").unwrap();
            let report = verify_full(&pa, DEFAULT_FULL_CAP).unwrap();
            prop_assert_eq!(report.min_observed, Some(expected));
        }

        #[test]
        fn text_round_trip_is_byte_exact(rows in prop::collection::vec(arb_perm(6), 1..30), d in 1usize..=6) {
            let uniq: Vec<_> = rows.into_iter().collect::<std::collections::BTreeSet<_>>().into_iter().collect();
            let pa = PermArray::new(6, uniq, d, Some(5), "prop").unwrap();
            let text = pa.to_text();
            prop_assert_eq!(PermArray::parse(&text).unwrap().to_text(), text);
        }
    }
}
