//! Arithmetic in finite fields `F_q`, `q = p^k`.
//!
//! Elements are encoded as integers in `[0, q)`. For prime fields the
//! encoding is the residue itself; for extension fields it is the base-`p`
//! digit vector of the element read as coefficients of the polynomial basis
//! `1, x, ..., x^(k-1)` modulo a fixed monic irreducible polynomial.

use std::fmt;

use crate::error::{Error, Result};

/// Largest field order accepted by [`FieldCtx::new`].
pub const MAX_ORDER: u64 = 1 << 20;

/// Fields up to this order get log/antilog tables.
const TABLE_LIMIT: u32 = 1 << 16;

/// An element of some [`FieldCtx`], by its integer encoding.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElem(pub u32);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    #[inline]
    pub fn value(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A finite field of order `q = p^k`. Immutable after construction.
#[derive(Clone, Debug)]
pub struct FieldCtx {
    p: u32,
    k: u32,
    q: u32,
    /// Monic irreducible of degree `k` over `F_p`, ascending coefficients
    /// (length `k + 1`). Just `[0, 1]` for prime fields.
    modulus: Vec<u32>,
    /// `exp[i] = g^i` for the primitive element `g`, `i < q - 1`.
    exp: Vec<u32>,
    /// `log[a]` for `a != 0`.
    log: Vec<u32>,
    primitive: FieldElem,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` into `(p, k)` with `q = p^k`, if `q` is a prime power.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut k = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p as u32, k))
}

impl FieldCtx {
    /// Builds `F_{p^k}`. For `k > 1` the modulus is the monic irreducible
    /// of degree `k` whose coefficient tuple `(c_0, c_1, ..., c_{k-1})` is
    /// lexicographically least.
    pub fn new(p: u32, k: u32) -> Result<Self> {
        if !is_prime(u64::from(p)) {
            return Err(Error::NotPrime(u64::from(p)));
        }
        if k == 0 {
            return Err(Error::InvalidParameter("extension degree must be at least 1".into()));
        }
        let q = (0..k).try_fold(1u64, |acc, _| acc.checked_mul(u64::from(p)).filter(|&v| v <= MAX_ORDER));
        let q = match q {
            Some(q) => q as u32,
            None => return Err(Error::OrderTooLarge { p, k }),
        };
        let modulus = if k == 1 { vec![0, 1] } else { least_irreducible(p, k) };
        let mut ctx = FieldCtx { p, k, q, modulus, exp: Vec::new(), log: Vec::new(), primitive: FieldElem::ONE };
        ctx.primitive = ctx.find_primitive();
        if q <= TABLE_LIMIT {
            ctx.build_tables();
        }
        Ok(ctx)
    }

    /// Builds the field of order `q`, which must be a prime power.
    pub fn with_order(q: u64) -> Result<Self> {
        match prime_power(q) {
            Some((p, k)) => FieldCtx::new(p, k),
            None => Err(Error::NotPrimePower(q)),
        }
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.k
    }

    #[inline]
    pub fn order(&self) -> u32 {
        self.q
    }

    /// Ascending coefficients of the defining polynomial.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The least encoding that generates the multiplicative group.
    pub fn primitive_element(&self) -> FieldElem {
        self.primitive
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + Clone {
        (0..self.q).map(FieldElem)
    }

    pub fn elem(&self, value: u32) -> Result<FieldElem> {
        if value < self.q {
            Ok(FieldElem(value))
        } else {
            Err(Error::InvalidElement { value, q: self.q })
        }
    }

    /// The image of an integer under `Z -> F_p -> F_q`.
    pub fn from_int(&self, n: i64) -> FieldElem {
        FieldElem(n.rem_euclid(i64::from(self.p)) as u32)
    }

    /// Base-`p` digits of the encoding, low degree first, length `k`.
    pub fn digits(&self, a: FieldElem) -> Vec<u32> {
        let mut v = a.0;
        (0..self.k)
            .map(|_| {
                let d = v % self.p;
                v /= self.p;
                d
            })
            .collect()
    }

    pub fn from_digits(&self, digits: &[u32]) -> FieldElem {
        debug_assert!(digits.len() <= self.k as usize);
        FieldElem(digits.iter().rev().fold(0, |acc, &d| acc * self.p + d % self.p))
    }

    #[inline]
    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if self.k == 1 {
            let s = a.0 + b.0;
            FieldElem(if s >= self.p { s - self.p } else { s })
        } else if self.p == 2 {
            FieldElem(a.0 ^ b.0)
        } else {
            self.digitwise(a, b, |x, y| (x + y) % self.p)
        }
    }

    #[inline]
    pub fn neg(&self, a: FieldElem) -> FieldElem {
        if a.0 == 0 || self.p == 2 {
            a
        } else if self.k == 1 {
            FieldElem(self.p - a.0)
        } else {
            self.digitwise(a, FieldElem::ZERO, |x, _| (self.p - x) % self.p)
        }
    }

    #[inline]
    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if self.k == 1 {
            FieldElem(((u64::from(a.0) * u64::from(b.0)) % u64::from(self.p)) as u32)
        } else if a.0 == 0 || b.0 == 0 {
            FieldElem::ZERO
        } else if !self.log.is_empty() {
            let e = self.log[a.0 as usize] + self.log[b.0 as usize];
            let e = if e >= self.q - 1 { e - (self.q - 1) } else { e };
            FieldElem(self.exp[e as usize])
        } else {
            self.mul_poly(a, b)
        }
    }

    pub fn inv(&self, a: FieldElem) -> Result<FieldElem> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        if !self.log.is_empty() {
            let l = self.log[a.0 as usize];
            let e = if l == 0 { 0 } else { self.q - 1 - l };
            return Ok(FieldElem(self.exp[e as usize]));
        }
        Ok(self.pow(a, u64::from(self.q) - 2))
    }

    pub fn div(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElem, mut e: u64) -> FieldElem {
        let mut base = a;
        let mut acc = FieldElem::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Whether `a` is a nonzero square.
    pub fn is_square(&self, a: FieldElem) -> bool {
        if a.is_zero() {
            return false;
        }
        self.p == 2 || self.pow(a, u64::from(self.q - 1) / 2) == FieldElem::ONE
    }

    fn digitwise(&self, a: FieldElem, b: FieldElem, op: impl Fn(u32, u32) -> u32) -> FieldElem {
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.k {
            out += op(x % self.p, y % self.p) * place;
            x /= self.p;
            y /= self.p;
            place *= self.p;
        }
        FieldElem(out)
    }

    /// Schoolbook product of the digit polynomials, reduced by the modulus.
    fn mul_poly(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        let p = u64::from(self.p);
        let k = self.k as usize;
        let (da, db) = (self.digits(a), self.digits(b));
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + u64::from(x) * u64::from(y)) % p;
            }
        }
        for top in (k..prod.len()).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            for (i, &m) in self.modulus[..k].iter().enumerate() {
                let idx = top - k + i;
                prod[idx] = (prod[idx] + (p - c) * u64::from(m)) % p;
            }
            prod[top] = 0;
        }
        let digits: Vec<u32> = prod[..k].iter().map(|&d| d as u32).collect();
        self.from_digits(&digits)
    }

    fn find_primitive(&self) -> FieldElem {
        if self.q == 2 {
            return FieldElem::ONE;
        }
        let n = u64::from(self.q - 1);
        let prime_factors: Vec<u64> = (2..=n).filter(|&d| n % d == 0 && is_prime(d)).collect();
        (1..self.q)
            .map(FieldElem)
            .find(|&g| prime_factors.iter().all(|&r| self.pow(g, n / r) != FieldElem::ONE))
            .expect("multiplicative group of a finite field is cyclic")
    }

    fn build_tables(&mut self) {
        let n = (self.q - 1) as usize;
        let mut exp = Vec::with_capacity(n);
        let mut log = vec![0u32; self.q as usize];
        let mut x = FieldElem::ONE;
        for i in 0..n {
            exp.push(x.0);
            log[x.0 as usize] = i as u32;
            x = self.mul(x, self.primitive);
        }
        debug_assert_eq!(x, FieldElem::ONE);
        self.exp = exp;
        self.log = log;
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k && self.modulus == other.modulus
    }
}

impl Eq for FieldCtx {}

/// Lexicographically least (low degree first) monic irreducible of degree
/// `k` over `F_p`.
fn least_irreducible(p: u32, k: u32) -> Vec<u32> {
    // Enumerating the integer `sum c_i p^(k-1-i)` in increasing order visits
    // the tuples (c_0, ..., c_{k-1}) lexicographically.
    let total = u64::from(p).pow(k);
    for code in 0..total {
        let mut coeffs = vec![0u32; k as usize + 1];
        let mut rest = code;
        for i in (0..k as usize).rev() {
            coeffs[i] = (rest % u64::from(p)) as u32;
            rest /= u64::from(p);
        }
        coeffs[k as usize] = 1;
        if is_irreducible_mod_p(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
pub(crate) fn is_irreducible_mod_p(f: &[u32], p: u32) -> bool {
    let deg = f.len() - 1;
    if deg <= 1 {
        return deg == 1;
    }
    for d in 1..=deg / 2 {
        let count = u64::from(p).pow(d as u32);
        for code in 0..count {
            let mut divisor = vec![0u32; d + 1];
            let mut rest = code;
            for c in divisor.iter_mut().take(d) {
                *c = (rest % u64::from(p)) as u32;
                rest /= u64::from(p);
            }
            divisor[d] = 1;
            if remainder_mod_p(f, &divisor, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Remainder of `f` by the monic `divisor`, coefficients mod `p`.
fn remainder_mod_p(f: &[u32], divisor: &[u32], p: u32) -> Vec<u32> {
    let d = divisor.len() - 1;
    let mut r: Vec<u64> = f.iter().map(|&c| u64::from(c)).collect();
    let p = u64::from(p);
    for top in (d..r.len()).rev() {
        let c = r[top] % p;
        if c == 0 {
            continue;
        }
        for (i, &m) in divisor.iter().enumerate() {
            let idx = top - d + i;
            r[idx] = (r[idx] + (p - c) * u64::from(m)) % p;
        }
    }
    r.truncate(d);
    r.into_iter().map(|c| c as u32).collect()
}
