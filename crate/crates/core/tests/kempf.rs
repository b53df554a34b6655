mod common;

use common::SplitMix;
use double_a::ratio;
use double_a::rnc::{kempf_bound_check, RncClassSystem};
use num_traits::Zero;

#[test]
fn classes_match_oracle() {
    for k in 2..=5 {
        for m in 1..=5 {
            let sys = RncClassSystem::new(k, m).unwrap();
            let ours: Vec<Vec<Vec<u32>>> = sys
                .classes()
                .iter()
                .map(|c| {
                    let mut v: Vec<Vec<u32>> = c.iter().map(|x| x.x_exponents().to_vec()).collect();
                    v.sort();
                    v
                })
                .collect();
            let theirs: Vec<Vec<Vec<u32>>> = common::rnc_classes(k, m)
                .into_iter()
                .map(|mut c| {
                    c.sort();
                    c
                })
                .collect();
            assert_eq!(ours, theirs);
        }
    }
}

#[test]
fn bound_holds_on_random_vectors() {
    let mut rng = SplitMix(10);
    for k in 2..=4 {
        for m in 1..=4 {
            let sys = RncClassSystem::new(k, m).unwrap();
            for _ in 0..500 {
                let lambda: Vec<i64> = (0..k).map(|_| rng.range(-50, 50)).collect();
                assert!(sys.kempf_check(&lambda).unwrap().pass, "k={k} m={m} {lambda:?}");
            }
        }
    }
}

#[test]
fn shift_covariance() {
    let mut rng = SplitMix(11);
    for k in 2..=4 {
        for m in 1..=4 {
            let sys = RncClassSystem::new(k, m).unwrap();
            let n = sys.classes().len() as i64;
            for _ in 0..50 {
                let lambda: Vec<i64> = (0..k).map(|_| rng.range(-20, 20)).collect();
                let c = rng.range(-7, 7);
                let shifted: Vec<i64> = lambda.iter().map(|l| l + c).collect();
                assert_eq!(
                    sys.min_weight(&shifted).unwrap(),
                    sys.min_weight(&lambda).unwrap() + m as i64 * n * c
                );
            }
        }
    }
}

#[test]
fn centered_maximum_is_zero() {
    for k in 2..=4 {
        for m in 1..=4u32 {
            if k == 4 && m > 3 {
                continue;
            }
            let (max, _) = common::concave_max_on_centered_box(k, &common::rnc_classes(k, m));
            assert!(max.is_zero(), "k={k} m={m}: {max}");
        }
    }
}

#[test]
fn constant_vectors_attain_the_bound() {
    for k in 2..=5 {
        for m in 1..=5 {
            let r = kempf_bound_check(k, m, &vec![-3; k]).unwrap();
            assert!(r.pass);
            assert_eq!(ratio::int(r.min_weight), r.bound);
        }
    }
}
