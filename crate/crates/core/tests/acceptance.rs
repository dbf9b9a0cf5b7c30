//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.
//!
//! `PA_FORGE_ACCEPTANCE_FULL=1` additionally runs the full pairwise check
//! of the 123804-row array.

use std::panic::{self, AssertUnwindSafe};
use std::time::Instant;

use pa_forge::field::FieldCtx;
use pa_forge::groups::{self, GroupName, MinimalDegree, ScanMode};
use pa_forge::pa::{self, PermArray};
use pa_forge::pam::{build_pa, build_pa_from};
use pa_forge::sfp::{self, queries_for, SfpQuery, Variant};
use pa_forge::{FieldElem, FracPoly, Poly};

/// Fixed seed and sample count for every sampled check.
const SEED: u64 = 1;
const PAIR_SAMPLES: u64 = 1_000_000;
const M24_TRIALS: u64 = 100_000;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn run(id: u32, title: &str, check: impl FnOnce() -> Check) -> bool {
    let start = Instant::now();
    let outcome = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
        let msg = e
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panic".into());
        Err(format!("panicked: {msg}"))
    });
    let secs = start.elapsed().as_secs_f64();
    let (tag, detail) = match &outcome {
        Ok(d) => ("PASS", d),
        Err(d) => ("FAIL", d),
    };
    println!("[{tag}] criterion {id}: {title} ({secs:.1}s) {detail}");
    outcome.is_ok()
}

fn bound_row(q: u32, k: i64, variant: Variant, want: usize, want_n: usize, want_d: i64) -> Result<String, String> {
    let best = sfp::best_count(q, k, variant).map_err(|e| e.to_string())?;
    let got = best.best.count();
    let query = best.best.query;
    ensure(got == want, || format!("{variant} q={q} k={k}: got {got}, expected {want}"))?;
    ensure(query.length() == want_n && best.best.guaranteed_distance == want_d, || {
        format!(
            "{query}: (n, d) = ({}, {}), expected ({want_n}, {want_d})",
            query.length(),
            best.best.guaranteed_distance
        )
    })?;
    Ok(format!("P({want_n},{want_d}) >= {got} via {query}"))
}

fn criterion_1() -> Check {
    let rows = [
        bound_row(19, 3, Variant::LengthQ, 684, 19, 16)?,
        bound_row(19, 4, Variant::LengthQ, 6840, 19, 15)?,
        bound_row(19, 5, Variant::LengthQ, 65322, 19, 14)?,
    ];
    Ok(rows.join("; "))
}

fn criterion_2() -> Check {
    let rows = [
        bound_row(17, 3, Variant::LengthQPlus1, 9520, 18, 14)?,
        bound_row(19, 5, Variant::LengthQPlus1, 123_804, 20, 14)?,
        bound_row(23, 3, Variant::LengthQPlus1, 23782, 24, 20)?,
    ];
    Ok(rows.join("; "))
}

fn criterion_3() -> Check {
    let mut arrays = 0;
    let mut pairs = 0u128;
    for q in [5u32, 7, 11] {
        for s in 0..=3i64 {
            for t in 0..=3 - s {
                let mut queries = vec![SfpQuery::length_q(q, s, t)];
                for (a, b) in sfp::OFFSETS {
                    let query = SfpQuery::length_q_plus_1(q, s, t, a, b);
                    if query.validate().is_ok() {
                        queries.push(query);
                    }
                }
                for query in queries {
                    let array = build_pa(&query).map_err(|e| format!("{query}: {e}"))?;
                    let report = pa::verify_full(&array, pa::DEFAULT_FULL_CAP).map_err(|e| e.to_string())?;
                    ensure(report.pass, || {
                        format!("{query}: min {:?} < {}", report.min_observed, array.claimed_distance())
                    })?;
                    arrays += 1;
                    pairs += report.pairs_checked;
                }
            }
        }
    }
    Ok(format!("{arrays} arrays, {pairs} pairs, no violations"))
}

fn criterion_4() -> Check {
    let mut notes = Vec::new();
    for (k, m, d) in [(3i64, 684usize, 16usize), (4, 6840, 15)] {
        let best = sfp::best_count(19, k, Variant::LengthQ).map_err(|e| e.to_string())?;
        let ctx = FieldCtx::new(19, 1).map_err(|e| e.to_string())?;
        let array = build_pa_from(&ctx, &best.best).map_err(|e| e.to_string())?;
        ensure(array.size() == m && array.claimed_distance() == d, || {
            format!("unexpected array ({}, {})", array.size(), array.claimed_distance())
        })?;
        let report = pa::verify_full(&array, pa::DEFAULT_FULL_CAP).map_err(|e| e.to_string())?;
        ensure(report.pass && report.proof, || format!("(19, {m}, {d}) failed: {report:?}"))?;
        notes.push(format!("(19,{m},{d}) FULL min={}", report.min_observed.unwrap()));
    }
    let best = sfp::best_count(19, 5, Variant::LengthQPlus1).map_err(|e| e.to_string())?;
    let ctx = FieldCtx::new(19, 1).map_err(|e| e.to_string())?;
    let big = build_pa_from(&ctx, &best.best).map_err(|e| e.to_string())?;
    ensure(big.size() == 123_804 && big.n() == 20 && big.claimed_distance() == 14, || "unexpected large array".into())?;
    let report = pa::verify_sampled(&big, PAIR_SAMPLES, SEED);
    ensure(report.pass, || format!("(20,123804,14) sampled failed: {report:?}"))?;
    notes.push(format!("(20,123804,14) SAMPLED {PAIR_SAMPLES} pairs seed {SEED} min={}", report.min_observed.unwrap()));
    if std::env::var("PA_FORGE_ACCEPTANCE_FULL").is_ok_and(|v| v == "1") {
        let report = pa::verify_full(&big, u128::MAX).map_err(|e| e.to_string())?;
        ensure(report.pass, || format!("(20,123804,14) full failed: {report:?}"))?;
        notes.push(format!("(20,123804,14) FULL min={}", report.min_observed.unwrap()));
    }
    Ok(notes.join("; "))
}

fn criterion_5() -> Check {
    let mut notes = Vec::new();
    for (n, order) in [(24u32, 244_823_040u128), (23, 10_200_960), (22, 443_520)] {
        let g = groups::make_named(&GroupName::Mathieu { n }).map_err(|e| e.to_string())?;
        let got = g.order();
        ensure(got == order, || format!("|M{n}| = {got}, expected {order}"))?;
    }
    notes.push("orders 244823040, 10200960, 443520".to_string());
    for n in [22u32, 23] {
        let g = groups::make_named(&GroupName::Mathieu { n }).map_err(|e| e.to_string())?;
        let facts = groups::minimal_degree(&g, ScanMode::Exact, groups::DEFAULT_CAP).map_err(|e| e.to_string())?;
        ensure(facts.minimal_degree == MinimalDegree::Exact { value: 16 }, || {
            format!("M{n}: {:?}", facts.minimal_degree)
        })?;
        notes.push(format!("M{n} exact minimal degree 16"));
    }
    let m24 = groups::make_named(&GroupName::Mathieu { n: 24 }).map_err(|e| e.to_string())?;
    let facts = groups::minimal_degree(&m24, ScanMode::Sampled { trials: M24_TRIALS, seed: SEED }, groups::DEFAULT_CAP)
        .map_err(|e| e.to_string())?;
    ensure(facts.minimal_degree.value() >= 16 && facts.max_fixed_points <= 8, || format!("M24 sample: {facts:?}"))?;
    notes.push(format!(
        "M24 sampled {M24_TRIALS} trials: min degree {}, max fixed {}",
        facts.minimal_degree.value(),
        facts.max_fixed_points
    ));
    Ok(notes.join("; "))
}

fn named_pa(name: GroupName, n: usize, m: usize, d: usize) -> Result<String, String> {
    let g = groups::make_named(&name).map_err(|e| e.to_string())?;
    let facts = groups::minimal_degree(&g, ScanMode::Exact, groups::DEFAULT_CAP).map_err(|e| e.to_string())?;
    let array = groups::group_to_pa(&g, &facts, groups::DEFAULT_CAP).map_err(|e| e.to_string())?;
    let got = (array.n(), array.size(), array.claimed_distance());
    ensure(got == (n, m, d), || format!("{name}: {got:?}, expected {:?}", (n, m, d)))?;
    let report = pa::verify_full(&array, pa::DEFAULT_FULL_CAP).map_err(|e| e.to_string())?;
    ensure(report.pass && report.min_observed == Some(d), || format!("{name}: {report:?}"))?;
    Ok(format!("{name}=({n},{m},{d})"))
}

fn criterion_6() -> Check {
    let mut notes = Vec::new();
    for q in [5usize, 7, 8] {
        notes.push(named_pa(GroupName::Agl1 { q: q as u32 }, q, q * (q - 1), q - 1)?);
    }
    for q in [5usize, 7] {
        notes.push(named_pa(GroupName::Pgl2 { q: q as u32 }, q + 1, (q + 1) * q * (q - 1), q - 1)?);
    }
    notes.push(named_pa(GroupName::SymPairs { m: 5 }, 10, 120, 6)?);
    // q^(d(d+1)/2) (q^d - 1) ... (q - 1) at d = q = 2
    let formula = 2usize.pow(3) * (4 - 1);
    notes.push(named_pa(GroupName::Agl { d: 2, q: 2 }, 4, formula, 2)?);
    Ok(notes.join(" "))
}

fn criterion_7() -> Check {
    let cases = [
        (GroupName::Agl1 { q: 5 }, 2usize),
        (GroupName::Agl1 { q: 7 }, 2),
        (GroupName::Pgl2 { q: 5 }, 3),
        (GroupName::Pgl2 { q: 7 }, 3),
        (GroupName::Symmetric { n: 4 }, 4),
    ];
    let mut notes = Vec::new();
    for (name, k) in cases {
        let g = groups::make_named(&name).map_err(|e| e.to_string())?;
        let facts = groups::minimal_degree(&g, ScanMode::Exact, groups::DEFAULT_CAP).map_err(|e| e.to_string())?;
        let array = groups::group_to_pa(&g, &facts, groups::DEFAULT_CAP).map_err(|e| e.to_string())?;
        let ok = pa::theorem8_check(&array, k).map_err(|e| e.to_string())?;
        let sharp = pa::is_sharply_k_transitive(&array, k).map_err(|e| e.to_string())?;
        ensure(ok && sharp, || format!("{name}, k={k}: check {ok}, sharply transitive {sharp}"))?;
        notes.push(format!("{name} k={k}"));
    }
    Ok(notes.join(", "))
}

/// Every sub-normalized `f/g` over a prime field with the given degree
/// caps, built coefficient by coefficient.
fn subnormalized(ctx: &FieldCtx, max_num: u32, max_den: u32) -> Vec<FracPoly> {
    let q = ctx.order();
    let tuples = |len: u32| -> Vec<Vec<FieldElem>> {
        (0..q.pow(len))
            .map(|mut code| {
                (0..len)
                    .map(|_| {
                        let c = FieldElem(code % q);
                        code /= q;
                        c
                    })
                    .collect()
            })
            .collect()
    };
    let mut out = Vec::new();
    for dg in 0..=max_den {
        for mut g in tuples(dg) {
            g.push(FieldElem::ONE);
            let g = Poly::new(g);
            for f in tuples(max_num + 1) {
                let f = Poly::new(f);
                if f.gcd(ctx, &g).unwrap() == Poly::one() {
                    out.push(FracPoly::new(ctx, &f, &g).unwrap());
                }
            }
        }
    }
    out
}

fn degree_of(p: &Poly) -> i64 {
    p.degree().finite().map_or(-1, |d| d as i64)
}

fn oracle_vs_fast() -> Result<String, String> {
    let mut compared = 0;
    for q in [2u32, 3, 4, 5, 7, 8, 9, 11] {
        for variant in [Variant::LengthQ, Variant::LengthQPlus1] {
            for k in 0..=3 {
                let Ok(queries) = queries_for(q, k, variant) else { continue };
                for query in queries {
                    let fast = sfp::enumerate_fast(&query).map_err(|e| e.to_string())?;
                    let oracle = sfp::enumerate_oracle(&query).map_err(|e| e.to_string())?;
                    ensure(fast.members == oracle.members, || {
                        format!("{query}: fast {} vs oracle {}", fast.count(), oracle.count())
                    })?;
                    compared += 1;
                }
            }
        }
    }
    Ok(format!("oracle=fast on {compared} queries"))
}

fn budget_inequality() -> Result<String, String> {
    let mut cases = 0u64;
    for s in 0..=6i64 {
        for t in 0..=6i64 {
            for s1 in 0..=s {
                for s2 in 0..=s {
                    for t1 in 0..=t {
                        for t2 in 0..=t {
                            let lhs = (s - s1).min(t - t1) + (s - s2).min(t - t2) + (s1 + t2).max(s2 + t1);
                            ensure(lhs <= s + t, || format!("fails at s={s} t={t} s1={s1} s2={s2} t1={t1} t2={t2}"))?;
                            cases += 1;
                        }
                    }
                }
            }
        }
    }
    Ok(format!("min/min/max inequality on {cases} cases"))
}

fn cross_difference() -> Result<String, String> {
    let mut pairs = 0u64;
    for q in [5u32, 7] {
        let ctx = FieldCtx::new(q, 1).unwrap();
        let all = subnormalized(&ctx, 2, 2);
        let bound = i64::from(q) - 2;
        let degs: Vec<(i64, i64)> = all.iter().map(|p| (degree_of(p.num()), degree_of(p.den()))).collect();
        for (i, a) in all.iter().enumerate() {
            for (j, b) in all.iter().enumerate() {
                let ((s1, t1), (s2, t2)) = (degs[i], degs[j]);
                if s1 + t2 > bound || s2 + t1 > bound {
                    continue;
                }
                let diff = a.num().mul(&ctx, b.den()).sub(&ctx, &b.num().mul(&ctx, a.den()));
                ensure(diff.is_zero() == (i == j), || format!("q={q}: {a} vs {b}"))?;
                pairs += 1;
            }
        }
    }
    Ok(format!("cross difference on {pairs} pairs"))
}

fn transform_invariance() -> Result<String, String> {
    let ctx = FieldCtx::new(5, 1).unwrap();
    let mut queries = Vec::new();
    for k in 0..=3 {
        queries.extend(queries_for(5, k, Variant::LengthQ).unwrap());
        if let Ok(more) = queries_for(5, k, Variant::LengthQPlus1) {
            queries.extend(more);
        }
    }
    let all = subnormalized(&ctx, 3, 3);
    let mut images = 0u64;
    for phi in &all {
        let profile = phi.value_count(&ctx);
        let verdicts: Vec<bool> = queries.iter().map(|qr| qr.admits_frac(&ctx, phi)).collect();
        for alpha in ctx.elements().skip(1) {
            for beta in ctx.elements() {
                let psi = phi.transform(&ctx, alpha, beta).unwrap();
                let p2 = psi.value_count(&ctx);
                ensure(p2.v == profile.v && p2.has_pole == profile.has_pole, || format!("V changed: {phi} -> {psi}"))?;
                for (qr, &v) in queries.iter().zip(&verdicts) {
                    ensure(qr.admits_frac(&ctx, &psi) == v, || format!("{qr}: {phi} -> {psi}"))?;
                }
                images += 1;
            }
        }
    }
    Ok(format!("transform invariance on {} fractions x 20 maps ({images})", all.len()))
}

fn round_trip() -> Result<String, String> {
    let mut arrays: Vec<PermArray> = Vec::new();
    for query in [SfpQuery::length_q(7, 1, 1), SfpQuery::length_q_plus_1(7, 1, 1, 1, -1), SfpQuery::length_q(8, 2, 1)] {
        arrays.push(build_pa(&query).map_err(|e| e.to_string())?);
    }
    let g = groups::make_named(&GroupName::Pgl2 { q: 4 }).map_err(|e| e.to_string())?;
    let facts = groups::minimal_degree(&g, ScanMode::Exact, groups::DEFAULT_CAP).map_err(|e| e.to_string())?;
    arrays.push(groups::group_to_pa(&g, &facts, groups::DEFAULT_CAP).map_err(|e| e.to_string())?);
    for array in &arrays {
        let text = array.to_text();
        let back = PermArray::parse(&text).map_err(|e| e.to_string())?;
        ensure(&back == array && back.to_text() == text, || format!("text round trip: {}", array.provenance()))?;
        let json = array.to_json().map_err(|e| e.to_string())?;
        let back = PermArray::parse(&json).map_err(|e| e.to_string())?;
        ensure(&back == array && back.to_json().unwrap() == json, || {
            format!("json round trip: {}", array.provenance())
        })?;
    }
    Ok(format!("{} arrays round-trip byte-exactly", arrays.len()))
}

fn thread_determinism() -> Result<String, String> {
    let queries = [SfpQuery::length_q(11, 2, 1), SfpQuery::length_q_plus_1(13, 2, 1, 1, -1)];
    let mut outputs: Vec<Vec<String>> = Vec::new();
    for threads in [1, 3] {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().map_err(|e| e.to_string())?;
        outputs.push(pool.install(|| {
            queries
                .iter()
                .flat_map(|q| {
                    let array = build_pa(q).unwrap();
                    let full = pa::verify_full(&array, pa::DEFAULT_FULL_CAP).unwrap();
                    let sampled = pa::verify_sampled(&array, 5000, SEED);
                    [array.to_text(), format!("{full:?}"), format!("{sampled:?}")]
                })
                .collect()
        }));
    }
    ensure(outputs[0] == outputs[1], || "outputs differ between 1 and 3 threads".into())?;
    Ok("byte-identical outputs with 1 and 3 threads".into())
}

fn criterion_8() -> Check {
    let parts = [
        oracle_vs_fast()?,
        budget_inequality()?,
        cross_difference()?,
        transform_invariance()?,
        round_trip()?,
        thread_determinism()?,
    ];
    Ok(parts.join("; "))
}

fn main() {
    let results = [
        run(1, "length-q bounds 684 / 6840 / 65322", criterion_1),
        run(2, "length-(q+1) bounds 9520 / 123804 / 23782", criterion_2),
        run(3, "distance guarantee, q in {5,7,11}, s+t <= 3, all offsets", criterion_3),
        run(4, "large constructed arrays verified", criterion_4),
        run(5, "Mathieu orders and minimal degrees", criterion_5),
        run(6, "named group constructions", criterion_6),
        run(7, "sharp transitivity equivalence", criterion_7),
        run(8, "property suites", criterion_8),
    ];
    let failed = results.iter().filter(|ok| !**ok).count();
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
