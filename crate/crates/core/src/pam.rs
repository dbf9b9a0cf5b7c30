//! Completion of a fractional polynomial's partial value map into a full
//! permutation of `F_q` or `F_q ∪ {∞}`.
//!
//! One canonical mapping is fixed: every attained value `y` is assigned to
//! the smallest preimage `min A_y`; in the `q+1` case a pole sends its
//! smallest root to `∞`. The remaining domain points are matched to the
//! remaining values in ascending order, with `∞` (point `q`) last.

use rayon::prelude::*;

use crate::error::Result;
use crate::field::{FieldCtx, FieldElem};
use crate::fracpoly::FracPoly;
use crate::pa::{PermArray, Permutation};
use crate::sfp::{enumerate_fast, SfpQuery, SfpResult, Variant};

const UNSET: u32 = u32::MAX;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PamAssignment {
    pub phi: FracPoly,
    pub permutation: Permutation,
    /// Points whose image the definition dictates (attained values, plus
    /// the `∞` assignment in the `q+1` case).
    pub forced_count: usize,
    /// Points completed by the ascending matching.
    pub filled_count: usize,
}

struct Builder {
    images: Vec<u32>,
    used: Vec<bool>,
    forced: usize,
}

impl Builder {
    fn new(n: usize) -> Self {
        Builder { images: vec![UNSET; n], used: vec![false; n], forced: 0 }
    }

    fn force(&mut self, x: usize, y: usize) {
        assert_eq!(self.images[x], UNSET, "point {x} assigned twice");
        assert!(!self.used[y], "value {y} assigned twice");
        self.images[x] = y as u32;
        self.used[y] = true;
        self.forced += 1;
    }

    /// Assigns each attained value to its smallest preimage.
    fn force_values(&mut self, ctx: &FieldCtx, phi: &FracPoly) {
        for x in ctx.elements() {
            if let Some(y) = phi.eval(ctx, x) {
                if !self.used[y.value() as usize] {
                    self.force(x.value() as usize, y.value() as usize);
                }
            }
        }
    }

    fn finish(mut self, phi: &FracPoly) -> PamAssignment {
        let free_values: Vec<u32> = (0..self.images.len() as u32).filter(|&v| !self.used[v as usize]).collect();
        let mut next = free_values.iter();
        let mut filled = 0;
        for img in self.images.iter_mut().filter(|v| **v == UNSET) {
            *img = *next.next().expect("as many free values as free points");
            filled += 1;
        }
        PamAssignment {
            phi: phi.clone(),
            permutation: Permutation::from_images_unchecked(self.images),
            forced_count: self.forced,
            filled_count: filled,
        }
    }
}

/// The canonical permutation of `F_q` for `phi`.
pub fn build_q_pam(ctx: &FieldCtx, phi: &FracPoly) -> PamAssignment {
    let mut b = Builder::new(ctx.order() as usize);
    b.force_values(ctx, phi);
    b.finish(phi)
}

/// The canonical permutation of `F_q ∪ {∞}` for `phi`; `∞` is point `q`.
pub fn build_q1_pam(ctx: &FieldCtx, phi: &FracPoly) -> PamAssignment {
    let q = ctx.order() as usize;
    let mut b = Builder::new(q + 1);
    match ctx.elements().find(|&x| phi.den().eval(ctx, x).is_zero()) {
        Some(root) => b.force(root.value() as usize, q),
        None => b.force(q, q),
    }
    b.force_values(ctx, phi);
    b.finish(phi)
}

/// Point images of `phi` under the canonical mapping, `None` at poles.
fn values(ctx: &FieldCtx, phi: &FracPoly) -> Vec<Option<FieldElem>> {
    ctx.elements().map(|x| phi.eval(ctx, x)).collect()
}

/// Checks the defining property of a PA-mapping on one assignment: every
/// attained value `y` is hit from inside its preimage set `A_y`, and in the
/// `q+1` case `∞` is handled as the definition requires.
pub fn satisfies_pam_definition(ctx: &FieldCtx, assignment: &PamAssignment, with_infinity: bool) -> bool {
    let q = ctx.order() as usize;
    let vals = values(ctx, &assignment.phi);
    let perm = &assignment.permutation;
    let inverse = perm.inverse();
    let attained = vals.iter().flatten().all(|y| {
        let pre = inverse.apply(y.value() as usize);
        pre < q && vals[pre] == Some(*y)
    });
    if !with_infinity {
        return attained;
    }
    let pole = vals.iter().any(|v| v.is_none());
    let inf_pre = inverse.apply(q);
    let inf_ok = if pole { inf_pre < q && vals[inf_pre].is_none() } else { inf_pre == q };
    attained && inf_ok
}

/// Applies the matching mapping to every member of a finished search.
pub fn build_pa_from(ctx: &FieldCtx, result: &SfpResult) -> Result<PermArray> {
    let query = result.query;
    let rows: Vec<Permutation> = result
        .members
        .par_iter()
        .map(|phi| match query.variant {
            Variant::LengthQ => build_q_pam(ctx, phi).permutation,
            Variant::LengthQPlus1 => build_q1_pam(ctx, phi).permutation,
        })
        .collect();
    let n = query.length();
    let infinity = (query.variant == Variant::LengthQPlus1).then_some(n - 1);
    let d = result.guaranteed_distance.clamp(1, n as i64) as usize;
    PermArray::new(n, rows, d, infinity, query.provenance())
}

/// Runs the search and builds the array.
pub fn build_pa(query: &SfpQuery) -> Result<PermArray> {
    let ctx = FieldCtx::with_order(u64::from(query.q))?;
    build_pa_from(&ctx, &enumerate_fast(query)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pa::{verify_full, DEFAULT_FULL_CAP};
    use crate::poly::Poly;
    use crate::sfp::queries_for;

    fn frac(ctx: &FieldCtx, f: &[u32], g: &[u32]) -> FracPoly {
        FracPoly::new(ctx, &Poly::from_values(ctx, f).unwrap(), &Poly::from_values(ctx, g).unwrap()).unwrap()
    }

    #[test]
    fn q_pam_examples() {
        let f3 = FieldCtx::new(3, 1).unwrap();
        let id = build_q_pam(&f3, &frac(&f3, &[0, 1], &[1]));
        assert_eq!(id.permutation, Permutation::identity(3));
        let a = build_q_pam(&f3, &frac(&f3, &[1, 2, 1], &[1]));
        assert_eq!(a.permutation.images(), &[1, 2, 0]);
        assert_eq!((a.forced_count, a.filled_count), (2, 1));
        let b = build_q_pam(&f3, &frac(&f3, &[0, 0, 1], &[1]));
        assert_eq!(b.permutation, Permutation::identity(3));
    }

    #[test]
    fn q1_pam_examples() {
        let f3 = FieldCtx::new(3, 1).unwrap();
        assert_eq!(build_q1_pam(&f3, &frac(&f3, &[0, 1], &[1])).permutation, Permutation::identity(4));
        let recip = build_q1_pam(&f3, &frac(&f3, &[1], &[0, 1]));
        assert_eq!(recip.permutation.images(), &[3, 1, 2, 0]);
        let c = build_q1_pam(&f3, &frac(&f3, &[0, 0, 1], &[1, 1]));
        assert_eq!(c.permutation.images(), &[0, 2, 3, 1]);
    }

    #[test]
    fn every_assignment_is_a_valid_mapping() {
        for q in [5u32, 7] {
            let ctx = FieldCtx::new(q, 1).unwrap();
            for phi in crate::fracpoly::tests::all_subnormalized(&ctx, 2, 2) {
                let a = build_q_pam(&ctx, &phi);
                assert!(Permutation::new(a.permutation.images().to_vec()).is_ok());
                assert!(satisfies_pam_definition(&ctx, &a, false), "{phi}");
                assert_eq!(a.forced_count as u32, phi.value_count(&ctx).v);
                let b = build_q1_pam(&ctx, &phi);
                assert!(Permutation::new(b.permutation.images().to_vec()).is_ok());
                assert!(satisfies_pam_definition(&ctx, &b, true), "{phi}");
                assert_eq!(b.forced_count + b.filled_count, q as usize + 1);
            }
        }
    }

    #[test]
    fn build_pa_examples() {
        let pa = build_pa(&SfpQuery::length_q(7, 1, 0)).unwrap();
        assert_eq!((pa.n(), pa.size(), pa.claimed_distance()), (7, 42, 6));
        let r = verify_full(&pa, DEFAULT_FULL_CAP).unwrap();
        assert_eq!(r.min_observed, Some(6));
        let pa = build_pa(&SfpQuery::length_q_plus_1(5, 1, 0, 0, 0)).unwrap();
        assert_eq!((pa.n(), pa.claimed_distance(), pa.infinity()), (6, 4, Some(5)));
    }

    #[test]
    fn distance_guarantees_on_small_fields() {
        for q in [5u32, 7] {
            for k in 0..=3 {
                let mut queries = queries_for(q, k, Variant::LengthQ).unwrap();
                if k + 3 <= i64::from(q) {
                    queries.extend(queries_for(q, k, Variant::LengthQPlus1).unwrap());
                }
                for query in queries {
                    let pa = build_pa(&query).unwrap();
                    let r = verify_full(&pa, DEFAULT_FULL_CAP).unwrap();
                    assert!(r.pass, "{query}: {r:?}");
                }
            }
        }
    }
}
