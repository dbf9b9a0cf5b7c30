//! Deterministic Schreier–Sims.
//!
//! Base points are chosen as the smallest point moved by the element that
//! forces a new level. Level `i` holds the generators of the pointwise
//! stabilizer of `b_0, ..., b_(i-1)` together with explicit coset
//! representatives for the orbit of `b_i`.

use std::collections::HashSet;

use rand::Rng;
use rayon::prelude::*;

use crate::pa::Permutation;

#[derive(Clone, Debug)]
struct Level {
    base: usize,
    gens: Vec<Permutation>,
    orbit: Vec<usize>,
    /// `reps[x]` maps the base point to `x`; `inv_reps[x]` is its inverse.
    reps: Vec<Option<Permutation>>,
    inv_reps: Vec<Option<Permutation>>,
    /// Schreier pairs `(orbit point, generator index)` already sifted.
    tested: HashSet<(usize, usize)>,
}

impl Level {
    fn new(n: usize, base: usize) -> Self {
        let mut reps = vec![None; n];
        let mut inv_reps = vec![None; n];
        reps[base] = Some(Permutation::identity(n));
        inv_reps[base] = Some(Permutation::identity(n));
        Level { base, gens: Vec::new(), orbit: vec![base], reps, inv_reps, tested: HashSet::new() }
    }

    fn extend_orbit(&mut self) {
        let mut idx = 0;
        while idx < self.orbit.len() {
            let x = self.orbit[idx];
            for s in &self.gens {
                let y = s.apply(x);
                if self.reps[y].is_none() {
                    let rep = s.compose(self.reps[x].as_ref().expect("orbit point has a rep"));
                    self.inv_reps[y] = Some(rep.inverse());
                    self.reps[y] = Some(rep);
                    self.orbit.push(y);
                }
            }
            idx += 1;
        }
    }

    fn next_untested(&self) -> Option<(usize, usize)> {
        self.orbit
            .iter()
            .flat_map(|&x| (0..self.gens.len()).map(move |g| (x, g)))
            .find(|pair| !self.tested.contains(pair))
    }
}

/// A base and strong generating set.
#[derive(Clone, Debug)]
pub struct Bsgs {
    n: usize,
    levels: Vec<Level>,
}

impl Bsgs {
    pub fn new(n: usize, gens: &[Permutation]) -> Self {
        Bsgs::with_base_prefix(n, gens, &[])
    }

    /// Like [`Bsgs::new`] but starts the base with `prefix`, so that level
    /// `i` describes the stabilizer of `prefix[..i]`.
    pub fn with_base_prefix(n: usize, gens: &[Permutation], prefix: &[usize]) -> Self {
        let mut bsgs = Bsgs { n, levels: prefix.iter().map(|&b| Level::new(n, b)).collect() };
        for g in gens.iter().filter(|g| !g.is_identity()) {
            if bsgs.levels.iter().all(|l| g.apply(l.base) == l.base) {
                let b = g.smallest_moved_point().expect("non-identity");
                bsgs.levels.push(Level::new(n, b));
            }
            for l in 0..bsgs.levels.len() {
                bsgs.levels[l].gens.push(g.clone());
                if g.apply(bsgs.levels[l].base) != bsgs.levels[l].base {
                    break;
                }
            }
        }
        for level in &mut bsgs.levels {
            level.extend_orbit();
        }
        bsgs.complete();
        bsgs
    }

    fn complete(&mut self) {
        let mut i = self.levels.len();
        while i > 0 {
            let lvl = i - 1;
            let Some((x, gi)) = self.levels[lvl].next_untested() else {
                i -= 1;
                continue;
            };
            self.levels[lvl].tested.insert((x, gi));
            let level = &self.levels[lvl];
            let s = &level.gens[gi];
            let y = s.apply(x);
            let schreier = level.inv_reps[y]
                .as_ref()
                .expect("orbit is closed")
                .compose(&s.compose(level.reps[x].as_ref().expect("orbit point")));
            let (residue, j) = self.sift(schreier, lvl + 1);
            if residue.is_identity() {
                continue;
            }
            if j == self.levels.len() {
                let b = residue.smallest_moved_point().expect("non-identity");
                self.levels.push(Level::new(self.n, b));
            }
            for l in lvl + 1..=j {
                self.levels[l].gens.push(residue.clone());
                self.levels[l].extend_orbit();
            }
            i = j + 1;
        }
    }

    /// Strips `h` through the levels from `from` on. Returns the residue
    /// and the level where stripping stopped (`levels.len()` if it ran
    /// through every level).
    fn sift(&self, mut h: Permutation, from: usize) -> (Permutation, usize) {
        for (l, level) in self.levels.iter().enumerate().skip(from) {
            let x = h.apply(level.base);
            match &level.inv_reps[x] {
                Some(inv) => h = inv.compose(&h),
                None => return (h, l),
            }
        }
        let end = self.levels.len();
        (h, end)
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.len() == self.n && self.sift(g.clone(), 0).0.is_identity()
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    /// Generators of the stabilizer described by level `i`.
    pub fn level_generators(&self, i: usize) -> &[Permutation] {
        &self.levels[i].gens
    }

    /// Strong generators, deduplicated, in insertion order.
    pub fn strong_generators(&self) -> Vec<Permutation> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for level in &self.levels {
            for g in &level.gens {
                if seen.insert(g.clone()) {
                    out.push(g.clone());
                }
            }
        }
        out
    }

    /// A uniformly random element of the stabilizer at level `from`.
    pub fn random_element(&self, rng: &mut impl Rng, from: usize) -> Permutation {
        let mut g = Permutation::identity(self.n);
        for level in self.levels.iter().skip(from) {
            let x = level.orbit[rng.gen_range(0..level.orbit.len())];
            g = g.compose(level.reps[x].as_ref().expect("orbit point"));
        }
        g
    }

    /// Folds over every group element as `u_0 ∘ u_1 ∘ ... ∘ u_(k-1)`,
    /// splitting the work over the first level's coset representatives.
    /// `visit` sees each element's image array.
    pub fn fold_elements<T, F, R>(&self, init: impl Fn() -> T + Sync + Send, visit: F, reduce: R) -> T
    where
        T: Send,
        F: Fn(T, &[u32]) -> T + Sync + Send,
        R: Fn(T, T) -> T + Sync + Send,
    {
        let n = self.n;
        if self.levels.is_empty() {
            let id: Vec<u32> = (0..n as u32).collect();
            return visit(init(), &id);
        }
        let rep_tables: Vec<Vec<&[u32]>> = self
            .levels
            .iter()
            .map(|l| l.orbit.iter().map(|&x| l.reps[x].as_ref().expect("orbit point").images()).collect())
            .collect();
        rep_tables[0]
            .par_iter()
            .map(|first| {
                let depth = rep_tables.len();
                let mut stack: Vec<Vec<u32>> = vec![vec![0; n]; depth];
                stack[0].copy_from_slice(first);
                let mut acc = init();
                let mut counters = vec![0usize; depth];
                // iterative odometer over levels 1..depth
                let mut level = 1;
                if depth == 1 {
                    return visit(acc, &stack[0]);
                }
                loop {
                    if counters[level] == rep_tables[level].len() {
                        counters[level] = 0;
                        level -= 1;
                        if level == 0 {
                            return acc;
                        }
                        counters[level] += 1;
                        continue;
                    }
                    let u = rep_tables[level][counters[level]];
                    let (done, rest) = stack.split_at_mut(level);
                    let prev = &done[level - 1];
                    for (dst, &x) in rest[0].iter_mut().zip(u) {
                        *dst = prev[x as usize];
                    }
                    if level + 1 == depth {
                        acc = visit(acc, &rest[0]);
                        counters[level] += 1;
                    } else {
                        level += 1;
                    }
                }
            })
            .reduce(&init, &reduce)
    }
}
