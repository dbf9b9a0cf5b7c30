//! Univariate polynomials over a [`FieldCtx`].
//!
//! A [`Poly`] is a bare coefficient vector; every operation that needs
//! field arithmetic takes the context explicitly so that polynomials stay
//! cheap to clone, hash and sort.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};

/// Degree of a polynomial. The zero polynomial has degree
/// [`Degree::MinusInfinity`], which compares below every finite degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    MinusInfinity,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::MinusInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }

    /// `budget - self`, with `budget - (-inf) = +inf` saturated to `i64::MAX`.
    pub fn slack_below(self, budget: i64) -> i64 {
        match self {
            Degree::MinusInfinity => i64::MAX,
            Degree::Finite(d) => budget - d as i64,
        }
    }

    /// `self <= bound`; always true for the zero polynomial.
    pub fn at_most(self, bound: i64) -> bool {
        match self {
            Degree::MinusInfinity => true,
            Degree::Finite(d) => (d as i64) <= bound,
        }
    }
}

impl PartialEq<usize> for Degree {
    fn eq(&self, other: &usize) -> bool {
        *self == Degree::Finite(*other)
    }
}

impl PartialOrd<usize> for Degree {
    fn partial_cmp(&self, other: &usize) -> Option<Ordering> {
        self.partial_cmp(&Degree::Finite(*other))
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::MinusInfinity => f.write_str("-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// Coefficients in ascending powers, with no trailing zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Poly {
    coeffs: Vec<FieldElem>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(FieldElem::ONE)
    }

    pub fn constant(c: FieldElem) -> Self {
        Poly::new(vec![c])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Poly { coeffs: vec![FieldElem::ZERO, FieldElem::ONE] }
    }

    /// `x - root`.
    pub fn linear_factor(ctx: &FieldCtx, root: FieldElem) -> Self {
        Poly::new(vec![ctx.neg(root), FieldElem::ONE])
    }

    /// Takes ascending coefficients and strips trailing zeros.
    pub fn new(mut coeffs: Vec<FieldElem>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// Validating constructor from raw encodings.
    pub fn from_values(ctx: &FieldCtx, values: &[u32]) -> Result<Self> {
        let coeffs = values.iter().map(|&v| ctx.elem(v)).collect::<Result<Vec<_>>>()?;
        Ok(Poly::new(coeffs))
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<FieldElem> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::MinusInfinity,
            n => Degree::Finite(n - 1),
        }
    }

    /// Coefficient of `x^i`, zero past the end.
    pub fn coeff(&self, i: usize) -> FieldElem {
        self.coeffs.get(i).copied().unwrap_or(FieldElem::ZERO)
    }

    pub fn leading(&self) -> Option<FieldElem> {
        self.coeffs.last().copied()
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Some(FieldElem::ONE)
    }

    /// Horner evaluation.
    pub fn eval(&self, ctx: &FieldCtx, x: FieldElem) -> FieldElem {
        self.coeffs.iter().rev().fold(FieldElem::ZERO, |acc, &c| ctx.add(ctx.mul(acc, x), c))
    }

    pub fn add(&self, ctx: &FieldCtx, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| ctx.add(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn sub(&self, ctx: &FieldCtx, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| ctx.sub(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn neg(&self, ctx: &FieldCtx) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|&c| ctx.neg(c)).collect() }
    }

    pub fn scale(&self, ctx: &FieldCtx, c: FieldElem) -> Poly {
        Poly::new(self.coeffs.iter().map(|&a| ctx.mul(a, c)).collect())
    }

    pub fn mul(&self, ctx: &FieldCtx, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![FieldElem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = ctx.add(out[i + j], ctx.mul(a, b));
            }
        }
        Poly::new(out)
    }

    /// Euclidean division: `(quotient, remainder)`.
    pub fn div_rem(&self, ctx: &FieldCtx, divisor: &Poly) -> Result<(Poly, Poly)> {
        let lead = divisor.leading().ok_or(Error::DivisionByZero)?;
        let lead_inv = ctx.inv(lead)?;
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quot = vec![FieldElem::ZERO; rem.len() - dd];
        for top in (dd..rem.len()).rev() {
            let c = ctx.mul(rem[top], lead_inv);
            if c.is_zero() {
                continue;
            }
            quot[top - dd] = c;
            for (i, &d) in divisor.coeffs.iter().enumerate() {
                let idx = top - dd + i;
                rem[idx] = ctx.sub(rem[idx], ctx.mul(c, d));
            }
        }
        rem.truncate(dd);
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    pub fn rem(&self, ctx: &FieldCtx, divisor: &Poly) -> Result<Poly> {
        Ok(self.div_rem(ctx, divisor)?.1)
    }

    /// Scales to leading coefficient one; zero stays zero.
    pub fn monic(&self, ctx: &FieldCtx) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some(l) if l == FieldElem::ONE => self.clone(),
            Some(l) => self.scale(ctx, ctx.inv(l).expect("leading coefficient is nonzero")),
        }
    }

    /// Monic gcd by Euclid's algorithm.
    pub fn gcd(&self, ctx: &FieldCtx, other: &Poly) -> Result<Poly> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::ZeroGcd);
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(ctx, &b)?;
            a = b;
            b = r;
        }
        Ok(a.monic(ctx))
    }

    /// `f(x + shift)`, by Horner's scheme in the ring.
    pub fn shift(&self, ctx: &FieldCtx, shift: FieldElem) -> Poly {
        if shift.is_zero() {
            return self.clone();
        }
        let n = self.coeffs.len();
        let mut out = vec![FieldElem::ZERO; n];
        // out := out * (x + shift) + c, working in place from the top
        for (step, &c) in self.coeffs.iter().rev().enumerate() {
            for i in (1..=step).rev() {
                out[i] = ctx.add(out[i - 1], ctx.mul(out[i], shift));
            }
            out[0] = ctx.add(ctx.mul(out[0], shift), c);
        }
        Poly::new(out)
    }

    /// Lagrange interpolation through points with distinct abscissae.
    pub fn interpolate(ctx: &FieldCtx, points: &[(FieldElem, FieldElem)]) -> Result<Poly> {
        let mut seen = vec![false; ctx.order() as usize];
        for &(x, _) in points {
            ctx.elem(x.value())?;
            if std::mem::replace(&mut seen[x.value() as usize], true) {
                return Err(Error::RepeatedAbscissa(x.value()));
            }
        }
        let mut total = Poly::zero();
        for (i, &(xi, yi)) in points.iter().enumerate() {
            if yi.is_zero() {
                continue;
            }
            let mut basis = Poly::one();
            let mut denom = FieldElem::ONE;
            for (j, &(xj, _)) in points.iter().enumerate() {
                if i != j {
                    basis = basis.mul(ctx, &Poly::linear_factor(ctx, xj));
                    denom = ctx.mul(denom, ctx.sub(xi, xj));
                }
            }
            total = total.add(ctx, &basis.scale(ctx, ctx.div(yi, denom)?));
        }
        Ok(total)
    }

    /// Whether `f` has a root in the field.
    pub fn has_root(&self, ctx: &FieldCtx) -> bool {
        ctx.elements().any(|a| self.eval(ctx, a).is_zero())
    }
}

impl fmt::Display for Poly {
    /// Ascending comma-separated encodings, `0` for the zero polynomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}
