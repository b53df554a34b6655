//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails. All checks are exact.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::time::{Duration, Instant};

use double_a::certify::{
    certify, default_bound, sample_rho, verify_certificate, ClassSystem, ConstructiveBuilder,
    Verdict,
};
use double_a::chi::{
    build_family, decompose, family_b, family_s, family_sign_identity, t1_missing_degrees,
    BVariant, ChiSelector, FamilyId,
};
use double_a::ratio::{self, Rational};
use double_a::rnc::RncClassSystem;
use double_a::sections::{
    cotangent_span_check, pluricanonical_basis, listing_discrepancies, scroll_minor_check,
    torus_weights, PluriLabel,
};
use double_a::slope::{
    bielliptic_classify, bielliptic_weight_bound, bielliptic_weight_bound_by_parts,
    in_threshold_range, polarization_slope, slope_at_three, trigonal_comparison,
    BiellipticStatus,
};
use double_a::RhoWeights;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

const TRIALS: u64 = 10_000;
const SEED: u64 = 20_260_101;
const TIME_LIMIT: Duration = Duration::from_secs(60);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn grid() -> impl Iterator<Item = (usize, u32)> {
    (2..=5usize).flat_map(|k| (2..=6u32).map(move |m| (k, m)))
}

fn certify_grid() -> Outcome {
    let mut failures = Vec::new();
    let mut slowest = (Duration::ZERO, 0, 0);
    for (k, m) in grid() {
        let start = Instant::now();
        let sys = ClassSystem::new(k, m).expect("class system");
        let result = certify(&sys);
        let elapsed = start.elapsed();
        if elapsed > slowest.0 {
            slowest = (elapsed, k, m);
        }
        match result {
            Ok(cert) => {
                let verified = verify_certificate(&cert, &sys);
                if cert.verdict != Verdict::Semistable || !verified.pass || elapsed > TIME_LIMIT {
                    failures.push(format!(
                        "(k={k},m={m}) verdict={} verified={} time={elapsed:.2?}",
                        cert.verdict, verified.pass
                    ));
                }
            }
            Err(e) => failures.push(format!("(k={k},m={m}) error: {e}")),
        }
    }
    outcome(
        failures.is_empty(),
        format!(
            "20 instances SEMISTABLE with verified witnesses; slowest (k={},m={}) {:.2?}{}",
            slowest.1,
            slowest.2,
            slowest.0,
            if failures.is_empty() { String::new() } else { format!("; failures: {failures:?}") }
        ),
    )
}

fn chi_fuzz() -> Outcome {
    let mut failures = Vec::new();
    let mut worst_chi = i64::MIN;
    let mut worst_total = i64::MIN;
    for (k, m) in grid() {
        let selector = ChiSelector::new(k, m).expect("selector");
        let builder = ConstructiveBuilder::new(k, m).expect("builder");
        let bound = default_bound(k, m);
        let results: Vec<(i64, Result<i64, String>)> = (0..TRIALS)
            .into_par_iter()
            .map(|trial| {
                let r = sample_rho(k, bound, SEED, trial);
                let chi = selector.min_weight(&r);
                let total = builder.build(&r).map(|b| b.weight).map_err(|e| e.to_string());
                (chi, total)
            })
            .collect();
        for (chi, total) in results {
            worst_chi = worst_chi.max(chi);
            match total {
                Ok(w) => {
                    worst_total = worst_total.max(w);
                    if chi > 0 || w > 0 {
                        failures.push(format!("(k={k},m={m}) chi={chi} total={w}"));
                    }
                }
                Err(e) => failures.push(format!("(k={k},m={m}) {e}")),
            }
        }
    }
    outcome(
        failures.is_empty(),
        format!(
            "{} samples; max χ-minimum {worst_chi}, max constructive weight {worst_total}, violations {}",
            20 * TRIALS,
            failures.len()
        ),
    )
}

fn m2_identities() -> Outcome {
    let mut bad = Vec::new();
    for k in 2..=10 {
        for (variant, want) in [(BVariant::B1, -1), (BVariant::B2, k as i64 - 1)] {
            let basis = family_b(k, variant).expect("family");
            match decompose(&basis.occurrences()) {
                Some(d) if d.multiple() == want => {}
                other => bad.push(format!("k={k} {variant:?}: {other:?}")),
            }
        }
    }
    outcome(
        bad.is_empty(),
        if bad.is_empty() {
            "weight(B1) = -(λk+νk), weight(B2) = (k-1)(λk+νk) for k = 2..10".to_string()
        } else {
            format!("mismatches: {bad:?}")
        },
    )
}

fn family_suite() -> Outcome {
    let mut bad = Vec::new();
    let mut repairs = Vec::new();
    let mut claim_mismatches = Vec::new();
    for k in 2..=6usize {
        for m in 3..=6u32 {
            for s in 1..k {
                for flag in [false, true] {
                    for id in [FamilyId::T { s, primed: flag }, FamilyId::S { s, mirrored: flag }] {
                        if let Err(e) = build_family(k, m, id) {
                            bad.push(format!("{id} k={k} m={m}: {e}"));
                        }
                    }
                    if let Ok((_, r)) = family_s(k, m, s, flag) {
                        for rep in r {
                            if k % 2 == 0 {
                                bad.push(format!("unexpected even-k repair k={k} m={m}"));
                            }
                            repairs.push(format!(
                                "k={k} m={m} s={s}{} {}: {} -> {}",
                                if flag { " mirrored" } else { "" },
                                rep.location,
                                rep.literal,
                                rep.shipped
                            ));
                        }
                    }
                }
            }
            let want: Vec<i64> = (0..)
                .map(|j| k as i64 * (m as i64 - 3 - 2 * j))
                .take_while(|&d| d >= -(k as i64) * (m as i64 - 3))
                .collect();
            if t1_missing_degrees(k, m).ok() != Some(want) {
                bad.push(format!("T_1 gaps k={k} m={m}"));
            }
            match family_sign_identity(k, m) {
                Ok((t, s_route)) => {
                    if !(t.all_valid && t.symmetric && t.uniform_below_k && t.multiple > 0) {
                        bad.push(format!("T-union k={k} m={m}: multiple {}", t.multiple));
                    }
                    if !(s_route.all_valid && s_route.symmetric && s_route.uniform_below_k && s_route.multiple < 0) {
                        bad.push(format!("S-union k={k} m={m}: multiple {}", s_route.multiple));
                    }
                    for c in t.claims.iter().chain(&s_route.claims).filter(|c| !c.matches) {
                        claim_mismatches.push(format!(
                            "k={k} m={m} {}: stated {} computed {}",
                            c.what, c.claimed, c.computed
                        ));
                    }
                }
                Err(e) => bad.push(format!("sign identity k={k} m={m}: {e}")),
            }
        }
    }
    let mut listing = Vec::new();
    for k in 2..=6 {
        for m in 3..=6 {
            for d in listing_discrepancies(k, m).expect("listing") {
                if d.label != PluriLabel::omega(1) {
                    bad.push(format!("unexpected listing discrepancy {d:?}"));
                }
                listing.push(d);
            }
        }
    }
    for r in &repairs {
        println!("    repair: {r}");
    }
    if let Some(d) = listing.first() {
        println!(
            "    listing: {} component s{} listed exponent {} vs product {} ({} grid points)",
            d.label,
            d.component,
            d.listed_exponent,
            d.product_exponent,
            listing.len()
        );
    }
    for c in &claim_mismatches {
        println!("    stated count differs: {c}");
    }
    outcome(
        bad.is_empty(),
        format!(
            "all T/S members valid for k <= 6, m = 3..6; {} repairs (odd k only), {} listing discrepancies (omega:1 only), {} stated-count mismatches{}",
            repairs.len(),
            listing.len(),
            claim_mismatches.len(),
            if bad.is_empty() { String::new() } else { format!("; failures: {bad:?}") }
        ),
    )
}

fn section_algebra() -> Outcome {
    let mut bad = Vec::new();
    for k in 2..=6 {
        for m in 2..=6 {
            match pluricanonical_basis(k, m) {
                Ok(b) if b.len() == (2 * m as usize - 1) * (2 * k - 1) => {}
                Ok(b) => bad.push(format!("basis size {} at k={k} m={m}", b.len())),
                Err(e) => bad.push(format!("basis k={k} m={m}: {e}")),
            }
        }
        if !cotangent_span_check(k).map(|c| c.pass).unwrap_or(false) {
            bad.push(format!("cotangent k={k}"));
        }
    }
    for k in 3..=6 {
        if !scroll_minor_check(k).map(|s| s.pass).unwrap_or(false) {
            bad.push(format!("scroll k={k}"));
        }
    }
    for k in 2..=50 {
        if !torus_weights(k).map(|t| t.multiplicity_free).unwrap_or(false) {
            bad.push(format!("torus k={k}"));
        }
    }
    outcome(
        bad.is_empty(),
        if bad.is_empty() {
            "basis sizes and witnesses k,m <= 6; scroll minors k = 3..6; cotangent identities k <= 6; torus weights k <= 50".to_string()
        } else {
            format!("failures: {bad:?}")
        },
    )
}

fn kempf() -> Outcome {
    let mut bad = Vec::new();
    for k in 2..=5usize {
        for m in 1..=6u32 {
            let sys = RncClassSystem::new(k, m).expect("rnc");
            let b = 10 * k as i64 * m as i64;
            let fails = (0..TRIALS)
                .into_par_iter()
                .filter(|&trial| {
                    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0x6b65_6d70);
                    rng.set_stream(trial);
                    let lambda: Vec<i64> = (0..k).map(|_| rng.random_range(-b..=b)).collect();
                    !sys.kempf_check(&lambda).expect("check").pass
                })
                .count();
            if fails > 0 {
                bad.push(format!("k={k} m={m}: {fails} violations"));
            }
        }
    }
    for k in 2..=3 {
        for m in 1..=4 {
            let (max, _) = common::concave_max_on_centered_box(k, &common::rnc_classes(k, m));
            if !max.is_zero() {
                bad.push(format!("centered maximum {max} at k={k} m={m}"));
            }
        }
    }
    outcome(
        bad.is_empty(),
        if bad.is_empty() {
            format!("{TRIALS} random λ per (k <= 5, m <= 6) within the bound; centered maximum 0 for k <= 3, m <= 4")
        } else {
            format!("failures: {bad:?}")
        },
    )
}

fn calculators() -> Outcome {
    let mut sign_mismatch = Vec::new();
    let mut other = Vec::new();
    for g in 4..=24u64 {
        for m in 2..=10u64 {
            let v = bielliptic_classify(g, m).expect("classify");
            let positive = v.weight_bound.is_positive();
            if positive != in_threshold_range(g, m) {
                sign_mismatch.push(format!("(g={g},m={m}) bound {}", v.weight_bound));
            }
            if (v.verdict == BiellipticStatus::Nonsemistable) != positive {
                other.push(format!("verdict (g={g},m={m})"));
            }
            if bielliptic_weight_bound(g, m).ok() != bielliptic_weight_bound_by_parts(g, m).ok() {
                other.push(format!("forms disagree (g={g},m={m})"));
            }
        }
    }
    for g in 2..=60 {
        if polarization_slope(g, 3).map(|s| s.slope).ok() != Some(slope_at_three(g)) {
            other.push(format!("slope g={g}"));
        }
    }
    for g in 3..=60 {
        if !trigonal_comparison(g).map(|t| t.equivalent).unwrap_or(false) {
            other.push(format!("trigonal g={g}"));
        }
    }
    let mut detail = format!(
        "bound forms agree; slope(g,3) = 22/3 + 5/g for g <= 60; trigonal comparison matches (g-3)(2g-5) >= 0 for g = 3..60; sign equivalence bound > 0 <=> m <= (g-3)/2: {} mismatches",
        sign_mismatch.len()
    );
    if !sign_mismatch.is_empty() {
        detail.push_str(&format!(
            " {sign_mismatch:?} (all at g = 2m+2, m >= 3, where the bound is (g-1)(m-2) > 0)"
        ));
    }
    if !other.is_empty() {
        detail.push_str(&format!("; other failures: {other:?}"));
    }
    outcome(sign_mismatch.is_empty() && other.is_empty(), detail)
}

fn solver_soundness() -> Outcome {
    let mut bad = Vec::new();
    let toy = ClassSystem::toy(3, 3).expect("toy");
    match certify(&toy) {
        Ok(cert) => {
            match &cert.destabilizer {
                Some(d) => {
                    let r = RhoWeights::new(d.lambda.clone(), d.nu.clone()).expect("trace zero");
                    let w = toy.min_weight(&r).expect("weight");
                    if w <= 0 || w != d.min_weight {
                        bad.push(format!("recomputed toy weight {w}"));
                    }
                }
                None => bad.push(format!("toy verdict {}", cert.verdict)),
            }
            if !verify_certificate(&cert, &toy).pass {
                bad.push("toy certificate rejected".into());
            }
            let mut tampered = cert.clone();
            if let Some(d) = tampered.destabilizer.as_mut() {
                d.min_weight += 1;
            }
            if verify_certificate(&tampered, &toy).pass {
                bad.push("tampered toy weight accepted".into());
            }
            let mut tampered = cert.clone();
            if let Some(d) = tampered.destabilizer.as_mut() {
                d.lambda = vec![0; d.lambda.len()];
                d.nu = vec![0; d.nu.len()];
            }
            if verify_certificate(&tampered, &toy).pass {
                bad.push("zeroed destabilizer accepted".into());
            }
        }
        Err(e) => bad.push(format!("toy: {e}")),
    }
    let sys = ClassSystem::new(2, 2).expect("system");
    let cert = certify(&sys).expect("certify");
    let mut tampered = cert.clone();
    if let Some(w) = tampered.witness.as_mut() {
        if let Some((_, u)) = w.values_mut().flat_map(|c| c.iter_mut()).next() {
            *u = Rational(&u.0 + ratio::frac(1, 1000));
        }
    }
    if verify_certificate(&tampered, &sys).pass {
        bad.push("perturbed coefficient accepted".into());
    }
    let mut flipped = cert.clone();
    flipped.verdict = Verdict::Nonsemistable;
    if verify_certificate(&flipped, &sys).pass {
        bad.push("flipped verdict accepted".into());
    }
    outcome(
        bad.is_empty(),
        if bad.is_empty() {
            "toy system destabilized with positive recomputed weight; 4 tampered certificates rejected".to_string()
        } else {
            format!("failures: {bad:?}")
        },
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("certify grid k=2..5, m=2..6", certify_grid),
        ("non-positive χ and constructive bases under random ρ", chi_fuzz),
        ("m=2 family weight identities", m2_identities),
        ("T/S family suite", family_suite),
        ("section algebra", section_algebra),
        ("Kempf bound", kempf),
        ("bielliptic and slope calculators", calculators),
        ("solver soundness", solver_soundness),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        if !o.pass {
            failed += 1;
        }
        println!(
            "criterion {} [{name}]: {} ({:.1?}) {}",
            i + 1,
            if o.pass { "PASS" } else { "FAIL" },
            start.elapsed(),
            o.detail
        );
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
