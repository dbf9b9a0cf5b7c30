//! Enumeration of the fractional-polynomial families behind the length-`q`
//! and length-`q+1` constructions.
//!
//! A query fixes degree budgets `(s, t)` and, for length `q+1`, offsets
//! `(a, b)`. A sub-normalized `f/g` with `s' = deg f`, `t' = deg g` and
//! value count `v` is a member when
//!
//! * length `q`: `s' <= s`, `t' <= t`, `q - v <= min(s - s', t - t')`;
//! * length `q+1`, `g` has a root: the same bounds with `+1` slack;
//! * length `q+1`, `g` has no root: budgets `(s + a, t + b)`, no slack.
//!
//! Two independent enumerators are provided. [`enumerate_oracle`] walks every
//! coefficient tuple. [`enumerate_fast`] walks only normalized
//! representatives (monic numerator with vanishing subleading coefficient
//! when the characteristic allows) and expands each accepted one by its
//! `(alpha, beta)` orbit. Membership is invariant under that action, so both
//! return the same set.

use std::fmt;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};
use crate::fracpoly::{FracPoly, ValueProfile};
use crate::poly::{Degree, Poly};

/// Candidate-pair cap for [`enumerate_oracle`].
pub const ORACLE_CAP: f64 = 1e9;

/// Offsets `(a, b)` tried for length `q+1`, in tie-breaking order.
pub const OFFSETS: [(i64, i64); 3] = [(0, 0), (1, -1), (-1, 1)];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Variant {
    #[serde(rename = "q")]
    LengthQ,
    #[serde(rename = "q+1")]
    LengthQPlus1,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::LengthQ => "q",
            Variant::LengthQPlus1 => "q+1",
        })
    }
}

impl std::str::FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "q" => Ok(Variant::LengthQ),
            "q+1" | "q1" => Ok(Variant::LengthQPlus1),
            other => Err(Error::InvalidParameter(format!("unknown variant {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SfpQuery {
    pub q: u32,
    pub variant: Variant,
    pub s: i64,
    pub t: i64,
    pub a: i64,
    pub b: i64,
}

impl SfpQuery {
    pub fn length_q(q: u32, s: i64, t: i64) -> Self {
        SfpQuery { q, variant: Variant::LengthQ, s, t, a: 0, b: 0 }
    }

    pub fn length_q_plus_1(q: u32, s: i64, t: i64, a: i64, b: i64) -> Self {
        SfpQuery { q, variant: Variant::LengthQPlus1, s, t, a, b }
    }

    pub fn validate(&self) -> Result<()> {
        let q = i64::from(self.q);
        let (s, t, a, b) = (self.s, self.t, self.a, self.b);
        let ok = match self.variant {
            Variant::LengthQ => s >= 0 && t >= 0 && s + t <= q - 2 && a == 0 && b == 0,
            Variant::LengthQPlus1 => {
                s >= 0
                    && t >= 0
                    && s + a >= 0
                    && t + b >= 0
                    && s + t <= q - 2
                    && s + t + a <= q - 2
                    && s + t + b <= q - 2
                    && s + t + a + b <= q - 2
            }
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!("inadmissible query {self}")))
        }
    }

    /// Array length: `q` or `q + 1`.
    pub fn length(&self) -> usize {
        match self.variant {
            Variant::LengthQ => self.q as usize,
            Variant::LengthQPlus1 => self.q as usize + 1,
        }
    }

    /// Minimum distance the construction guarantees.
    pub fn guaranteed_distance(&self) -> i64 {
        let q = i64::from(self.q);
        let base = q - self.s - self.t;
        match self.variant {
            Variant::LengthQ => base,
            Variant::LengthQPlus1 => base.min(base - self.a - self.b).min(base + 1 - self.a.max(self.b)),
        }
    }

    /// Degree budgets and slack that apply to a denominator with or without
    /// a root in the field.
    fn budgets(&self, has_pole: bool) -> (i64, i64, i64) {
        match (self.variant, has_pole) {
            (Variant::LengthQ, _) => (self.s, self.t, 0),
            (Variant::LengthQPlus1, true) => (self.s, self.t, 1),
            (Variant::LengthQPlus1, false) => (self.s + self.a, self.t + self.b, 0),
        }
    }

    /// Largest numerator and denominator degrees any member can have.
    fn degree_caps(&self) -> (i64, i64) {
        match self.variant {
            Variant::LengthQ => (self.s, self.t),
            Variant::LengthQPlus1 => (self.s.max(self.s + self.a), self.t.max(self.t + self.b)),
        }
    }

    /// The membership predicate on an already computed value profile.
    pub fn admits(&self, profile: &ValueProfile) -> bool {
        let (sb, tb, extra) = self.budgets(profile.has_pole);
        if !profile.num_deg.at_most(sb) || !profile.den_deg.at_most(tb) {
            return false;
        }
        let slack = profile.num_deg.slack_below(sb).min(profile.den_deg.slack_below(tb)).saturating_add(extra);
        i64::from(self.q) - i64::from(profile.v) <= slack
    }

    pub fn admits_frac(&self, ctx: &FieldCtx, phi: &FracPoly) -> bool {
        self.admits(&phi.value_count(ctx))
    }

    pub fn provenance(&self) -> String {
        format!("sfp:q={},variant={},s={},t={},a={},b={}", self.q, self.variant, self.s, self.t, self.a, self.b)
    }
}

impl fmt::Display for SfpQuery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.variant {
            Variant::LengthQ => write!(f, "SFP({}, {}, {})", self.q, self.s, self.t),
            Variant::LengthQPlus1 => write!(f, "SFP({}, {}, {}, {}, {})", self.q, self.s, self.t, self.a, self.b),
        }
    }
}

/// Membership in the length-`q` family.
pub fn member_q(ctx: &FieldCtx, phi: &FracPoly, s: i64, t: i64) -> bool {
    SfpQuery::length_q(ctx.order(), s, t).admits_frac(ctx, phi)
}

/// Membership in the length-`q+1` family.
pub fn member_q1(ctx: &FieldCtx, phi: &FracPoly, s: i64, t: i64, a: i64, b: i64) -> bool {
    SfpQuery::length_q_plus_1(ctx.order(), s, t, a, b).admits_frac(ctx, phi)
}

#[derive(Clone, Debug)]
pub struct SfpResult {
    pub query: SfpQuery,
    /// Sorted by the canonical order of [`FracPoly`].
    pub members: Vec<FracPoly>,
    pub guaranteed_distance: i64,
    pub elapsed: Duration,
}

impl SfpResult {
    pub fn count(&self) -> usize {
        self.members.len()
    }
}

fn monic_polys(q: u32, degree: usize) -> impl Iterator<Item = Poly> {
    let count = (q as u64).pow(degree as u32);
    (0..count).map(move |mut code| {
        let mut c: Vec<FieldElem> = (0..degree)
            .map(|_| {
                let d = (code % u64::from(q)) as u32;
                code /= u64::from(q);
                FieldElem(d)
            })
            .collect();
        c.push(FieldElem::ONE);
        Poly::new(c)
    })
}

/// Every monic polynomial of degree at most `max_degree`.
fn monic_denominators(q: u32, max_degree: i64) -> Vec<Poly> {
    let mut out: Vec<Poly> = (0..=max_degree.max(-1)).flat_map(|d| monic_polys(q, d as usize)).collect();
    out.sort();
    out
}

fn finish(query: SfpQuery, mut members: Vec<FracPoly>, start: Instant) -> SfpResult {
    members.sort_unstable();
    members.dedup();
    SfpResult { query, members, guaranteed_distance: query.guaranteed_distance(), elapsed: start.elapsed() }
}

/// Brute force over every coefficient tuple in the degree caps.
pub fn enumerate_oracle(query: &SfpQuery) -> Result<SfpResult> {
    query.validate()?;
    let start = Instant::now();
    let ctx = FieldCtx::with_order(u64::from(query.q))?;
    let exponent = query.s + query.t + 2 + query.a.max(0) + query.b.max(0);
    let candidates = f64::from(query.q).powi(exponent as i32);
    if candidates > ORACLE_CAP {
        return Err(Error::SearchTooLarge { candidates, cap: ORACLE_CAP });
    }
    let (num_cap, den_cap) = query.degree_caps();
    let q = query.q;
    let num_len = (num_cap + 1) as u32;
    let members: Vec<FracPoly> = monic_denominators(q, den_cap)
        .into_par_iter()
        .flat_map_iter(|g| {
            let ctx = &ctx;
            (0..u64::from(q).pow(num_len)).filter_map(move |mut code| {
                let f = Poly::new(
                    (0..num_len)
                        .map(|_| {
                            let d = (code % u64::from(q)) as u32;
                            code /= u64::from(q);
                            FieldElem(d)
                        })
                        .collect(),
                );
                let phi = FracPoly::from_parts_unchecked(f, g.clone());
                if !query.admits_frac(ctx, &phi) {
                    return None;
                }
                (phi.num().gcd(ctx, phi.den()).ok()? == Poly::one()).then_some(phi)
            })
        })
        .collect();
    Ok(finish(*query, members, start))
}

/// Scratch state for scanning numerators against one denominator.
struct DenScan<'a> {
    ctx: &'a FieldCtx,
    /// `1/g(a)` per point, zero marks a pole.
    den_inv: Vec<FieldElem>,
    poles: u32,
    stamp: Vec<u32>,
    epoch: u32,
}

impl<'a> DenScan<'a> {
    fn new(ctx: &'a FieldCtx, g: &Poly) -> Self {
        let den_inv: Vec<FieldElem> =
            ctx.elements().map(|a| ctx.inv(g.eval(ctx, a)).unwrap_or(FieldElem::ZERO)).collect();
        let poles = den_inv.iter().filter(|v| v.is_zero()).count() as u32;
        DenScan { ctx, den_inv, poles, stamp: vec![0; ctx.order() as usize], epoch: 0 }
    }

    /// Whether `f/g` takes at least `q - max_deficit` distinct values,
    /// bailing out as soon as too many collisions are seen.
    fn enough_values(&mut self, f: &[FieldElem], max_deficit: i64) -> bool {
        let ctx = self.ctx;
        let q = i64::from(ctx.order());
        let mut allowed = max_deficit - i64::from(self.poles);
        if allowed < 0 {
            return false;
        }
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.stamp.iter_mut().for_each(|s| *s = 0);
            self.epoch = 1;
        }
        for x in 0..q as u32 {
            let gi = self.den_inv[x as usize];
            if gi.is_zero() {
                continue;
            }
            let xe = FieldElem(x);
            let fx = f.iter().rev().fold(FieldElem::ZERO, |acc, &c| ctx.add(ctx.mul(acc, xe), c));
            let y = ctx.mul(fx, gi).value() as usize;
            if self.stamp[y] == self.epoch {
                allowed -= 1;
                if allowed < 0 {
                    return false;
                }
            } else {
                self.stamp[y] = self.epoch;
            }
        }
        true
    }
}

/// Normalized-representative search expanded by orbits.
pub fn enumerate_fast(query: &SfpQuery) -> Result<SfpResult> {
    query.validate()?;
    let start = Instant::now();
    let ctx = FieldCtx::with_order(u64::from(query.q))?;
    let (_, den_cap) = query.degree_caps();
    let members: Vec<FracPoly> = monic_denominators(query.q, den_cap)
        .into_par_iter()
        .flat_map_iter(|g| scan_denominator(&ctx, query, &g))
        .collect();
    Ok(finish(*query, members, start))
}

fn scan_denominator(ctx: &FieldCtx, query: &SfpQuery, g: &Poly) -> Vec<FracPoly> {
    let mut scan = DenScan::new(ctx, g);
    let has_pole = scan.poles > 0;
    let (sb, tb, extra) = query.budgets(has_pole);
    let t_prime = g.degree().finite().expect("monic") as i64;
    if t_prime > tb {
        return Vec::new();
    }
    let p = ctx.characteristic() as usize;
    let q = ctx.order();
    let mut out = Vec::new();
    for s_prime in 0..=sb.max(-1) {
        let max_deficit = (sb - s_prime).min(tb - t_prime) + extra;
        if max_deficit < i64::from(scan.poles) {
            continue;
        }
        let deg = s_prime as usize;
        // free positions: everything below the leading term, except the
        // subleading one when the characteristic does not divide the degree
        let free: Vec<usize> = (0..deg).filter(|&i| !(!deg.is_multiple_of(p) && i + 1 == deg)).collect();
        let mut coeffs = vec![FieldElem::ZERO; deg + 1];
        coeffs[deg] = FieldElem::ONE;
        let total = u64::from(q).pow(free.len() as u32);
        for code in 0..total {
            let mut rest = code;
            for &i in &free {
                coeffs[i] = FieldElem((rest % u64::from(q)) as u32);
                rest /= u64::from(q);
            }
            if !scan.enough_values(&coeffs, max_deficit) {
                continue;
            }
            let f = Poly::new(coeffs.clone());
            if t_prime > 0 && f.gcd(ctx, g).expect("g nonzero") != Poly::one() {
                continue;
            }
            let rep = FracPoly::from_parts_unchecked(f, g.clone());
            out.extend(rep.orbit(ctx).into_iter().filter(|m| query.admits_frac(ctx, m)));
        }
    }
    out
}

/// Best count over every admissible split `s + t = k` (and, for length
/// `q+1`, every offset pair in [`OFFSETS`]).
#[derive(Clone, Debug)]
pub struct BestCount {
    pub k: i64,
    pub best: SfpResult,
    /// Every admissible query tried, with its count, in search order.
    pub tried: Vec<(SfpQuery, usize)>,
}

impl BestCount {
    pub fn count(&self) -> usize {
        self.best.count()
    }
}

/// Admissible queries for `s + t = k`, in tie-breaking order: smallest `s`
/// first, then offsets in [`OFFSETS`] order.
pub fn queries_for(q: u32, k: i64, variant: Variant) -> Result<Vec<SfpQuery>> {
    let qi = i64::from(q);
    let valid_k = match variant {
        Variant::LengthQ => (0..=qi - 2).contains(&k),
        Variant::LengthQPlus1 => k >= 0 && k < qi - 2,
    };
    if !valid_k {
        return Err(Error::InvalidParameter(format!("k = {k} is out of range for q = {q}, variant {variant}")));
    }
    let mut out = Vec::new();
    for s in 0..=k {
        let t = k - s;
        match variant {
            Variant::LengthQ => out.push(SfpQuery::length_q(q, s, t)),
            Variant::LengthQPlus1 => out.extend(
                OFFSETS
                    .iter()
                    .map(|&(a, b)| SfpQuery::length_q_plus_1(q, s, t, a, b))
                    .filter(|query| query.validate().is_ok()),
            ),
        }
    }
    Ok(out)
}

pub fn best_count(q: u32, k: i64, variant: Variant) -> Result<BestCount> {
    let mut best: Option<SfpResult> = None;
    let mut tried = Vec::new();
    for query in queries_for(q, k, variant)? {
        let result = enumerate_fast(&query)?;
        tried.push((query, result.count()));
        if best.as_ref().is_none_or(|b| result.count() > b.count()) {
            best = Some(result);
        }
    }
    let best = best.expect("at least one admissible split");
    Ok(BestCount { k, best, tried })
}

/// Number of permutation polynomials of degree at most `d` (reduced, so
/// degree below `q`). Small fields interpolate every permutation; larger
/// ones test every coefficient tuple.
pub fn pp_count(q: u32, d: i64) -> Result<u64> {
    let ctx = FieldCtx::with_order(u64::from(q))?;
    if d < 0 || d > i64::from(q) - 1 {
        return Err(Error::InvalidParameter(format!("degree bound {d} outside 0..=q-1")));
    }
    if q <= 8 {
        let bound = Degree::Finite(d as usize);
        let mut count = 0;
        for perm in crate::pa::all_permutations(q as usize) {
            let points: Vec<_> = perm.iter().enumerate().map(|(i, &v)| (FieldElem(i as u32), FieldElem(v))).collect();
            if Poly::interpolate(&ctx, &points)?.degree() <= bound {
                count += 1;
            }
        }
        return Ok(count);
    }
    let candidates = f64::from(q).powi(d as i32 + 1);
    if candidates > 1e8 {
        return Err(Error::SearchTooLarge { candidates, cap: 1e8 });
    }
    let len = d as u32 + 1;
    let count = (0..u64::from(q).pow(len))
        .into_par_iter()
        .filter(|&code| {
            let mut rest = code;
            let f = Poly::new(
                (0..len)
                    .map(|_| {
                        let c = (rest % u64::from(q)) as u32;
                        rest /= u64::from(q);
                        FieldElem(c)
                    })
                    .collect(),
            );
            FracPoly::polynomial(f).value_count(&ctx).v == q
        })
        .count();
    Ok(count as u64)
}

/// Search manifest written by the CLI.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SearchManifest {
    pub q: u32,
    pub variant: Variant,
    pub k: i64,
    pub s: i64,
    pub t: i64,
    pub a: i64,
    pub b: i64,
    pub count: usize,
    pub argmax: Argmax,
    pub guaranteed_distance: i64,
    pub elapsed_ms: u128,
    pub tool_version: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Argmax {
    pub s: i64,
    pub t: i64,
    pub a: i64,
    pub b: i64,
}

impl SearchManifest {
    pub fn new(result: &SfpResult, elapsed: Duration) -> Self {
        let query = result.query;
        SearchManifest {
            q: query.q,
            variant: query.variant,
            k: query.s + query.t,
            s: query.s,
            t: query.t,
            a: query.a,
            b: query.b,
            count: result.count(),
            argmax: Argmax { s: query.s, t: query.t, a: query.a, b: query.b },
            guaranteed_distance: result.guaranteed_distance,
            elapsed_ms: elapsed.as_millis(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }
}
