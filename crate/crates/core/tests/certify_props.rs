mod common;

use common::SplitMix;
use double_a::certify::{
    certify, certify_with, constructive_basis, fuzz, sample_rho, verify_certificate, ClassSystem,
    ConstructiveBuilder, Verdict,
};
use double_a::lp::PivotRule;
use double_a::{Monomial, RhoWeights};
use num_traits::Zero;

fn flat(m: &Monomial) -> Vec<u32> {
    m.x_exponents().iter().chain(m.y_exponents()).copied().collect()
}

fn oracle_classes(sys: &ClassSystem) -> Vec<Vec<Vec<u32>>> {
    sys.classes()
        .iter()
        .map(|c| c.members.iter().map(flat).collect())
        .collect()
}

#[test]
fn classes_match_oracle_partition() {
    for (k, m) in [(2, 2), (2, 5), (3, 3), (4, 2)] {
        let sys = ClassSystem::new(k, m).unwrap();
        let mut ours: Vec<Vec<Vec<u32>>> = oracle_classes(&sys);
        let mut theirs = common::full_classes(k, m);
        for c in ours.iter_mut().chain(theirs.iter_mut()) {
            c.sort();
        }
        ours.sort();
        theirs.sort();
        assert_eq!(ours, theirs, "k={k} m={m}");
    }
}

#[test]
fn min_weight_is_separable() {
    let mut rng = SplitMix(1);
    for (k, m) in [(2, 2), (2, 3), (3, 2)] {
        let sys = ClassSystem::new(k, m).unwrap();
        let classes = oracle_classes(&sys);
        assert!(common::choice_count(&classes) <= 100_000);
        for _ in 0..30 {
            let rho = rng.trace_zero(2 * k, 15);
            let r = RhoWeights::from_flat(&rho).unwrap();
            assert_eq!(sys.min_weight(&r).unwrap(), common::brute_force_min(&classes, &rho));
        }
    }
}

#[test]
fn homogeneity_and_involution() {
    let mut rng = SplitMix(2);
    let sys = ClassSystem::new(3, 4).unwrap();
    for _ in 0..100 {
        let r = RhoWeights::from_flat(&rng.trace_zero(6, 120)).unwrap();
        let (basis, w) = sys.min_weight_basis(&r).unwrap();
        let (basis3, w3) = sys.min_weight_basis(&r.scale(3)).unwrap();
        assert_eq!(w3, 3 * w);
        assert_eq!(basis, basis3);
        assert_eq!(sys.min_weight(&r.swap()).unwrap(), w);
    }
}

#[test]
fn duality_soundness_by_vertex_enumeration() {
    for (k, m) in [(2, 2), (2, 3)] {
        let sys = ClassSystem::new(k, m).unwrap();
        let cert = certify(&sys).unwrap();
        assert_eq!(cert.verdict, Verdict::Semistable);
        let (max, _) = common::concave_max_on_centered_box(2 * k, &oracle_classes(&sys));
        assert!(max.is_zero(), "k={k} m={m}: max {max}");
    }
    let toy = ClassSystem::toy(2, 2).unwrap();
    let (max, _) = common::concave_max_on_centered_box(4, &oracle_classes(&toy));
    assert!(max > common::q(0));
    assert_eq!(certify(&toy).unwrap().verdict, Verdict::Nonsemistable);
}

#[test]
fn pivot_rules_agree() {
    for (k, m) in [(2, 3), (3, 3), (4, 2)] {
        let sys = ClassSystem::new(k, m).unwrap();
        let a = certify_with(&sys, PivotRule::Bland).unwrap();
        let b = certify_with(&sys, PivotRule::DantzigThenBland { stall: 1 }).unwrap();
        assert_eq!(a.verdict, b.verdict);
        assert!(verify_certificate(&a, &sys).pass);
        assert!(verify_certificate(&b, &sys).pass);
    }
}

#[test]
fn certificates_are_involution_symmetric() {
    let sys = ClassSystem::new(3, 3).unwrap();
    let cert = certify(&sys).unwrap();
    // swapping x and y in every witness entry gives another valid witness
    let mut swapped = cert.clone();
    let w = swapped.witness.take().unwrap();
    let mapped = w
        .into_iter()
        .map(|(_, coeffs)| {
            let mirror = coeffs.keys().next().unwrap().involution();
            let new_label = sys
                .classes()
                .iter()
                .find(|c| c.members.contains(&mirror))
                .unwrap()
                .label;
            (new_label, coeffs.into_iter().map(|(mon, u)| (mon.involution(), u)).collect())
        })
        .collect();
    swapped.witness = Some(mapped);
    assert!(verify_certificate(&swapped, &sys).pass);
}

#[test]
fn toy_destabilizer_and_injection() {
    let toy = ClassSystem::toy(3, 2).unwrap();
    let cert = certify(&toy).unwrap();
    let d = cert.destabilizer.clone().unwrap();
    assert!(d.lambda[0] > 0 && d.lambda[0] == *d.lambda.iter().chain(&d.nu).max().unwrap());
    let r = RhoWeights::new(d.lambda.clone(), d.nu.clone()).unwrap();
    let only_injected = fuzz(&toy, 1, 1, 10, std::slice::from_ref(&r)).unwrap();
    assert_eq!(only_injected.injected, 1);
    assert_eq!(only_injected.max_weight, d.min_weight);
    let report = fuzz(&toy, 50, 1, 10, &[r]).unwrap();
    assert!(report.max_weight > 0);
    assert!(report.positive_trials >= 1);
}

#[test]
fn constructive_basis_on_random_weights() {
    let builder = ConstructiveBuilder::new(4, 3).unwrap();
    let sys = ClassSystem::new(4, 3).unwrap();
    for trial in 0..10_000 {
        let r = sample_rho(4, 120, 2024, trial);
        let b = builder.build(&r).unwrap();
        assert!(b.weight <= 0);
        assert!(sys.min_weight(&r).unwrap() <= b.weight);
        let mut all: Vec<&Monomial> = b.omega.iter().chain(&b.eta).chain(&b.chi).collect();
        assert_eq!(all.len(), sys.classes().len());
        all.sort();
        all.dedup();
        assert_eq!(all.len(), sys.classes().len());
    }
    assert_eq!(constructive_basis(4, 3, &RhoWeights::zero(4)).unwrap().weight, 0);
}

#[test]
fn fuzz_is_deterministic_and_nonpositive() {
    let sys = ClassSystem::new(2, 2).unwrap();
    let a = fuzz(&sys, 10_000, 9, 40, &[]).unwrap();
    assert!(a.max_weight <= 0);
    assert_eq!(a.positive_trials, 0);
    let one = serde_json::to_string(&fuzz(&sys, 1, 4, 40, &[]).unwrap()).unwrap();
    assert_eq!(one, serde_json::to_string(&fuzz(&sys, 1, 4, 40, &[]).unwrap()).unwrap());
}
