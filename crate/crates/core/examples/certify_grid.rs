//! Certify every `(k, m)` in a grid and print verdicts with timings.
//!
//! `cargo run --release -p double-a-core --example certify_grid -- 5 6`

use std::time::Instant;

use double_a::certify::{certify, verify_certificate, ClassSystem};

fn main() {
    let args: Vec<usize> = std::env::args().skip(1).map(|a| a.parse().expect("integer")).collect();
    let (max_k, max_m) = (args.first().copied().unwrap_or(4), args.get(1).copied().unwrap_or(4));
    for k in 2..=max_k {
        for m in 2..=max_m as u32 {
            let start = Instant::now();
            let sys = ClassSystem::new(k, m).expect("valid parameters");
            let cert = certify(&sys).expect("solver succeeds");
            let ok = verify_certificate(&cert, &sys).pass;
            let stats = cert.solver.as_ref().expect("solver stats");
            println!(
                "k={k} m={m} monomials={:5} verdict={} verified={ok} pivots={} bland_from={:?} time={:.2?}",
                sys.monomial_count(),
                cert.verdict,
                stats.pivots,
                stats.bland_from,
                start.elapsed()
            );
        }
    }
}
