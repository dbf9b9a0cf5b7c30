//! Fractional polynomials `f/g` over `F_q`, their value counts, and the
//! `(alpha, beta)` action `f/g -> alpha f(x+beta) / g(x+beta)` used to cut
//! the search down to normalized representatives.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};
use crate::poly::{Degree, Poly};

/// A sub-normalized fractional polynomial: monic denominator coprime to the
/// numerator. Equality is componentwise.
///
/// The derived order compares the denominator coefficients first, then the
/// numerator's; this is the canonical order of every member listing.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FracPoly {
    den: Poly,
    num: Poly,
}

/// Value statistics of a fractional polynomial over the whole field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ValueProfile {
    /// Number of distinct values `f(a)/g(a)` over the non-poles.
    pub v: u32,
    /// Whether `g` has a root in the field.
    pub has_pole: bool,
    #[serde(skip)]
    pub num_deg: Degree,
    #[serde(skip)]
    pub den_deg: Degree,
}

impl FracPoly {
    /// Reduces `f/g` to sub-normalized form: divides out `gcd(f, g)` and
    /// moves the leading coefficient of `g` into the numerator.
    pub fn new(ctx: &FieldCtx, num: &Poly, den: &Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let common = num.gcd(ctx, den)?;
        let (num, den) = if common == Poly::one() {
            (num.clone(), den.clone())
        } else {
            (num.div_rem(ctx, &common)?.0, den.div_rem(ctx, &common)?.0)
        };
        let lead = den.leading().expect("nonzero denominator");
        let lead_inv = ctx.inv(lead)?;
        Ok(FracPoly { num: num.scale(ctx, lead_inv), den: den.scale(ctx, lead_inv) })
    }

    /// Wraps a pair the caller already knows is sub-normalized.
    pub(crate) fn from_parts_unchecked(num: Poly, den: Poly) -> Self {
        debug_assert!(den.is_monic());
        FracPoly { den, num }
    }

    /// The polynomial `f/1`.
    pub fn polynomial(f: Poly) -> Self {
        FracPoly { den: Poly::one(), num: f }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    /// `f(a)/g(a)`, or `None` at a pole.
    pub fn eval(&self, ctx: &FieldCtx, a: FieldElem) -> Option<FieldElem> {
        let g = self.den.eval(ctx, a);
        (!g.is_zero()).then(|| ctx.mul(self.num.eval(ctx, a), ctx.inv(g).expect("nonzero")))
    }

    /// Evaluates at every point of the field.
    pub fn value_count(&self, ctx: &FieldCtx) -> ValueProfile {
        let mut seen = vec![false; ctx.order() as usize];
        let mut v = 0;
        let mut has_pole = false;
        for a in ctx.elements() {
            match self.eval(ctx, a) {
                Some(y) => {
                    if !std::mem::replace(&mut seen[y.value() as usize], true) {
                        v += 1;
                    }
                }
                None => has_pole = true,
            }
        }
        ValueProfile { v, has_pole, num_deg: self.num.degree(), den_deg: self.den.degree() }
    }

    /// `alpha f(x+beta) / g(x+beta)`.
    pub fn transform(&self, ctx: &FieldCtx, alpha: FieldElem, beta: FieldElem) -> Result<Self> {
        if alpha.is_zero() {
            return Err(Error::InvalidParameter("transform scale must be nonzero".into()));
        }
        // Shifting preserves coprimality and keeps g monic.
        let num = self.num.shift(ctx, beta).scale(ctx, alpha);
        let den = self.den.shift(ctx, beta);
        Ok(FracPoly { den, num })
    }

    /// Normalized: both parts monic and, when the characteristic does not
    /// divide `deg f`, the coefficient of `x^(deg f - 1)` in `f` is zero.
    /// Only the numerator's subleading coefficient is constrained.
    pub fn is_normalized(&self, ctx: &FieldCtx) -> bool {
        if !self.num.is_monic() || !self.den.is_monic() {
            return false;
        }
        let s = self.num.degree().finite().expect("monic implies nonzero");
        s.is_multiple_of(ctx.characteristic() as usize) || self.num.coeff(s - 1).is_zero()
    }

    /// The orbit under every `(alpha, beta)` with `alpha != 0`.
    pub fn orbit(&self, ctx: &FieldCtx) -> BTreeSet<FracPoly> {
        let mut out = BTreeSet::new();
        for beta in ctx.elements() {
            let shifted_num = self.num.shift(ctx, beta);
            let shifted_den = self.den.shift(ctx, beta);
            for alpha in ctx.elements().skip(1) {
                out.insert(FracPoly { den: shifted_den.clone(), num: shifted_num.scale(ctx, alpha) });
            }
        }
        out
    }
}

impl fmt::Display for FracPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "f = {} ; g = {}", self.num, self.den)
    }
}
