//! Semistability of the `m`-th Hilbert point under diagonal one-parameter
//! subgroups.
//!
//! A monomial basis takes one monomial from every class of the
//! [`ClassSystem`]. The condition "every trace-zero ρ admits a basis of
//! weight ≤ 0" is equivalent, by LP duality, to the barycenter condition:
//! per-class convex combinations of exponent vectors summing to
//! `t·(1,…,1)` with `t = mC/(2k)`. [`certify`] decides that LP exactly and
//! returns either the convex coefficients or a destabilizing ρ read off the
//! Farkas vector.
//!
//! The verdict covers diagonal 1-PS in the canonical coordinates only.

use indexmap::IndexMap;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chi::{ChiFamilies, ChiRoute};
use crate::error::{out_of_range, Error, Result};
use crate::lp::{self, Outcome, PivotRule};
use crate::monomial::{enumerate, Monomial, Purity, RhoWeights};
use crate::ratio::{self, Rational, Q};
use crate::rnc::RncClassSystem;
use crate::sections::{label_of, PluriLabel};

/// What a SEMISTABLE verdict actually establishes.
pub const CONDITION: &str =
    "every diagonal one-parameter subgroup in the canonical coordinates admits a monomial basis of non-positive weight";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Class {
    pub label: PluriLabel,
    pub members: Vec<Monomial>,
}

#[derive(Clone, Debug)]
pub struct ClassSystem {
    k: usize,
    m: u32,
    classes: Vec<Class>,
}

impl ClassSystem {
    /// All degree-`m` monomials grouped by pluricanonical label:
    /// `(2m−1)(2k−1)` classes.
    pub fn new(k: usize, m: u32) -> Result<Self> {
        if k < 2 || m < 2 {
            return Err(out_of_range(format!("need k >= 2, m >= 2, got k={k}, m={m}")));
        }
        let labels = PluriLabel::all(k, m);
        let mut by_label: IndexMap<PluriLabel, Vec<Monomial>> =
            labels.iter().map(|l| (*l, Vec::new())).collect();
        for mon in enumerate(k, m, Purity::All) {
            let label = label_of(&mon, m)?;
            by_label
                .get_mut(&label)
                .ok_or_else(|| Error::Internal(format!("{mon} has unexpected label {label}")))?
                .push(mon);
        }
        let classes = by_label
            .into_iter()
            .map(|(label, members)| Class { label, members })
            .collect();
        Self::from_classes(k, m, classes)
    }

    /// Arbitrary class system; classes must be nonempty, disjoint, and made of
    /// degree-`m` monomials in `k` pairs of variables.
    pub fn from_classes(k: usize, m: u32, classes: Vec<Class>) -> Result<Self> {
        if classes.is_empty() {
            return Err(out_of_range("class system has no classes"));
        }
        let mut seen = std::collections::HashSet::new();
        let mut labels = std::collections::HashSet::new();
        for c in &classes {
            if c.members.is_empty() {
                return Err(out_of_range(format!("class {} is empty", c.label)));
            }
            if !labels.insert(c.label) {
                return Err(out_of_range(format!("class {} listed twice", c.label)));
            }
            for mon in &c.members {
                if mon.k() != k {
                    return Err(Error::DimensionMismatch {
                        expected: k,
                        found: mon.k(),
                    });
                }
                if mon.degree() != m {
                    return Err(Error::DegreeMismatch {
                        expected: m,
                        found: mon.degree(),
                    });
                }
                if !seen.insert(mon.clone()) {
                    return Err(out_of_range(format!("{mon} appears in two classes")));
                }
            }
        }
        Ok(Self { k, m, classes })
    }

    /// The single class `{x_1^m}`: never semistable, used as a solver self-test.
    pub fn toy(k: usize, m: u32) -> Result<Self> {
        if k < 1 || m < 1 {
            return Err(out_of_range(format!("need k >= 1, m >= 1, got k={k}, m={m}")));
        }
        Self::from_classes(
            k,
            m,
            vec![Class {
                label: PluriLabel::omega(0),
                members: vec![Monomial::x_pow(k, 1, m)],
            }],
        )
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn classes(&self) -> &[Class] {
        &self.classes
    }

    pub fn class(&self, label: &PluriLabel) -> Option<&Class> {
        self.classes.iter().find(|c| c.label == *label)
    }

    pub fn monomial_count(&self) -> usize {
        self.classes.iter().map(|c| c.members.len()).sum()
    }

    /// `t = mC/(2k)`.
    pub fn barycenter_target(&self) -> Q {
        ratio::frac(self.m as i64 * self.classes.len() as i64, 2 * self.k as i64)
    }

    fn check_rho(&self, r: &RhoWeights) -> Result<()> {
        if r.k() != self.k {
            return Err(Error::DimensionMismatch {
                expected: self.k,
                found: r.k(),
            });
        }
        Ok(())
    }

    /// Per-class minimal member (first in class order on ties) and the total,
    /// which is the minimum over all monomial bases.
    pub fn min_weight_basis(&self, r: &RhoWeights) -> Result<(Vec<(PluriLabel, Monomial)>, i64)> {
        self.check_rho(r)?;
        let mut total = 0;
        let mut basis = Vec::with_capacity(self.classes.len());
        for c in &self.classes {
            let (mon, w) = crate::chi::argmin(&c.members, r);
            total += w;
            basis.push((c.label, mon.clone()));
        }
        Ok((basis, total))
    }

    pub fn min_weight(&self, r: &RhoWeights) -> Result<i64> {
        self.check_rho(r)?;
        Ok(self
            .classes
            .iter()
            .map(|c| crate::chi::argmin(&c.members, r).1)
            .sum())
    }

    /// Rows: one per class, then `x_1..x_k, y_1..y_k`; right-hand side scaled
    /// by `2k` so that it is integral.
    fn barycenter_lp(&self) -> Result<lp::Problem> {
        let c = self.classes.len();
        let k = self.k;
        let mut columns = Vec::with_capacity(self.monomial_count());
        for (ci, class) in self.classes.iter().enumerate() {
            for mon in &class.members {
                let mut col = vec![(ci, 1)];
                for v in 0..2 * k {
                    let e = mon.exponent(v);
                    if e > 0 {
                        col.push((c + v, e as i64));
                    }
                }
                columns.push(col);
            }
        }
        let mut rhs = vec![BigInt::from(2 * k); c];
        rhs.extend(std::iter::repeat_n(BigInt::from(self.m as usize * c), 2 * k));
        lp::Problem::new(c + 2 * k, columns, rhs)
    }
}

pub fn build_class_system(k: usize, m: u32) -> Result<ClassSystem> {
    ClassSystem::new(k, m)
}

pub fn min_weight_basis(sys: &ClassSystem, r: &RhoWeights) -> Result<(Vec<(PluriLabel, Monomial)>, i64)> {
    sys.min_weight_basis(r)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Semistable,
    Nonsemistable,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Semistable => "SEMISTABLE",
            Verdict::Nonsemistable => "NONSEMISTABLE",
        })
    }
}

/// Convex coefficients per class, nonzero entries only.
pub type Witness = IndexMap<PluriLabel, IndexMap<Monomial, Rational>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Destabilizer {
    pub lambda: Vec<i64>,
    pub nu: Vec<i64>,
    pub min_weight: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolverStats {
    pub pivots: usize,
    pub bland_from: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityCertificate {
    pub k: usize,
    pub m: u32,
    pub verdict: Verdict,
    pub condition: String,
    #[serde(with = "ratio::serde_q")]
    pub t: Q,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub destabilizer: Option<Destabilizer>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub solver: Option<SolverStats>,
}

/// Decide the barycenter LP and package the answer as a certificate.
pub fn certify(sys: &ClassSystem) -> Result<StabilityCertificate> {
    certify_with(sys, PivotRule::default())
}

pub fn certify_with(sys: &ClassSystem, rule: PivotRule) -> Result<StabilityCertificate> {
    let problem = sys.barycenter_lp()?;
    let (outcome, stats) = lp::solve(&problem, rule)?;
    let t = sys.barycenter_target();
    let solver = Some(SolverStats {
        pivots: stats.pivots,
        bland_from: stats.bland_from,
    });
    let scale = ratio::int(2 * sys.k as i64);
    let cert = match outcome {
        Outcome::Feasible(x) => {
            let mut owner = Vec::with_capacity(sys.monomial_count());
            for (ci, class) in sys.classes.iter().enumerate() {
                for j in 0..class.members.len() {
                    owner.push((ci, j));
                }
            }
            let mut witness: Witness = sys
                .classes
                .iter()
                .map(|c| (c.label, IndexMap::new()))
                .collect();
            for (col, value) in x {
                let (ci, j) = owner[col];
                let class = &sys.classes[ci];
                witness[&class.label].insert(class.members[j].clone(), Rational(value / &scale));
            }
            for coeffs in witness.values_mut() {
                coeffs.sort_by(|a, _, b, _| a.cmp(b));
            }
            StabilityCertificate {
                k: sys.k,
                m: sys.m,
                verdict: Verdict::Semistable,
                condition: CONDITION.into(),
                t,
                witness: Some(witness),
                destabilizer: None,
                solver,
            }
        }
        Outcome::Infeasible(y) => {
            let r = destabilizer_from_farkas(sys, &y)?;
            let min_weight = sys.min_weight(&r)?;
            if min_weight <= 0 {
                return Err(Error::Internal(format!(
                    "Farkas-derived ρ = {r} has min-basis weight {min_weight} <= 0"
                )));
            }
            StabilityCertificate {
                k: sys.k,
                m: sys.m,
                verdict: Verdict::Nonsemistable,
                condition: CONDITION.into(),
                t,
                witness: None,
                destabilizer: Some(Destabilizer {
                    lambda: r.lambda().to_vec(),
                    nu: r.nu().to_vec(),
                    min_weight,
                }),
                solver,
            }
        }
    };
    Ok(cert)
}

/// `ρ = −y` on the variable rows, projected onto the trace-zero hyperplane
/// and reduced to coprime integers.
fn destabilizer_from_farkas(sys: &ClassSystem, y: &[BigInt]) -> Result<RhoWeights> {
    let c = sys.classes.len();
    let n = 2 * sys.k;
    let rho: Vec<BigInt> = y[c..c + n].iter().map(|v| -v).collect();
    let sum: BigInt = rho.iter().sum();
    let projected: Vec<BigInt> = rho.iter().map(|v| v * BigInt::from(n) - &sum).collect();
    let g = projected
        .iter()
        .fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if g.is_zero() {
        return Err(Error::Internal("Farkas vector vanishes on the variable rows".into()));
    }
    let flat = projected
        .iter()
        .map(|v| {
            (v / &g)
                .to_i64()
                .ok_or_else(|| Error::Internal(format!("destabilizer entry {v} exceeds i64")))
        })
        .collect::<Result<Vec<i64>>>()?;
    RhoWeights::from_flat(&flat)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub pass: bool,
    pub problems: Vec<String>,
}

/// Re-check a certificate against a class system from scratch.
pub fn verify_certificate(cert: &StabilityCertificate, sys: &ClassSystem) -> VerificationReport {
    let mut problems = Vec::new();
    if cert.k != sys.k || cert.m != sys.m {
        problems.push(format!(
            "certificate is for (k={}, m={}), system is (k={}, m={})",
            cert.k, cert.m, sys.k, sys.m
        ));
        return VerificationReport { pass: false, problems };
    }
    if cert.t != sys.barycenter_target() {
        problems.push(format!(
            "t = {} but mC/(2k) = {}",
            ratio::to_string(&cert.t),
            ratio::to_string(&sys.barycenter_target())
        ));
    }
    match cert.verdict {
        Verdict::Semistable => match &cert.witness {
            None => problems.push("SEMISTABLE certificate without witness".into()),
            Some(w) => check_witness(sys, w, &mut problems),
        },
        Verdict::Nonsemistable => match &cert.destabilizer {
            None => problems.push("NONSEMISTABLE certificate without destabilizer".into()),
            Some(d) => match RhoWeights::new(d.lambda.clone(), d.nu.clone()) {
                Err(e) => problems.push(format!("destabilizer: {e}")),
                Ok(r) => match sys.min_weight(&r) {
                    Err(e) => problems.push(format!("destabilizer: {e}")),
                    Ok(w) => {
                        if w != d.min_weight {
                            problems.push(format!("stated min weight {} but recomputed {w}", d.min_weight));
                        }
                        if w <= 0 {
                            problems.push(format!("recomputed min weight {w} is not positive"));
                        }
                    }
                },
            },
        },
    }
    VerificationReport {
        pass: problems.is_empty(),
        problems,
    }
}

fn check_witness(sys: &ClassSystem, w: &Witness, problems: &mut Vec<String>) {
    let n = 2 * sys.k;
    let mut total = vec![Q::zero(); n];
    for label in w.keys() {
        if sys.class(label).is_none() {
            problems.push(format!("witness has unknown class {label}"));
        }
    }
    for class in &sys.classes {
        let Some(coeffs) = w.get(&class.label) else {
            problems.push(format!("class {} missing from witness", class.label));
            continue;
        };
        let mut sum = Q::zero();
        for (mon, Rational(u)) in coeffs {
            // monomials read back from text may carry fewer variables
            let lifted = match Monomial::parse(&mon.to_string(), sys.k) {
                Ok(l) => l,
                Err(e) => {
                    problems.push(format!("class {}: {e}", class.label));
                    continue;
                }
            };
            if !class.members.contains(&lifted) {
                problems.push(format!("{lifted} is not in class {}", class.label));
                continue;
            }
            if u.is_negative() {
                problems.push(format!("negative coefficient {} on {lifted}", ratio::to_string(u)));
            }
            sum += u;
            for (v, slot) in total.iter_mut().enumerate() {
                let e = lifted.exponent(v);
                if e > 0 {
                    *slot += u * ratio::int(e as i64);
                }
            }
        }
        if sum != ratio::int(1) {
            problems.push(format!(
                "coefficients of class {} sum to {}",
                class.label,
                ratio::to_string(&sum)
            ));
        }
    }
    let t = sys.barycenter_target();
    for (v, s) in total.iter().enumerate() {
        if *s != t {
            let name = if v < sys.k {
                format!("x{}", v + 1)
            } else {
                format!("y{}", v - sys.k + 1)
            };
            problems.push(format!(
                "barycenter coordinate {name} is {} instead of {}",
                ratio::to_string(s),
                ratio::to_string(&t)
            ));
        }
    }
}

/// The basis assembled in the existence proof: minimal rational-normal-curve
/// bases on the pure-x and pure-y parts and a non-positive χ-basis.
#[derive(Clone, Debug, Serialize)]
pub struct ConstructiveBasis {
    pub omega: Vec<Monomial>,
    pub eta: Vec<Monomial>,
    pub chi: Vec<Monomial>,
    pub chi_route: ChiRoute,
    pub weight_omega: i64,
    pub weight_eta: i64,
    pub weight_chi: i64,
    pub weight: i64,
}

/// Precomputed pieces for repeated [`constructive_basis`] calls.
#[derive(Clone, Debug)]
pub struct ConstructiveBuilder {
    k: usize,
    m: u32,
    rnc: RncClassSystem,
    chi: ChiFamilies,
}

impl ConstructiveBuilder {
    pub fn new(k: usize, m: u32) -> Result<Self> {
        Ok(Self {
            k,
            m,
            rnc: RncClassSystem::new(k, m)?,
            chi: ChiFamilies::new(k, m)?,
        })
    }

    pub fn chi_families(&self) -> &ChiFamilies {
        &self.chi
    }

    pub fn build(&self, r: &RhoWeights) -> Result<ConstructiveBasis> {
        if r.k() != self.k {
            return Err(Error::DimensionMismatch {
                expected: self.k,
                found: r.k(),
            });
        }
        let (omega, weight_omega) = self.rnc.min_weight_basis(r.lambda())?;
        let (eta_x, weight_eta) = self.rnc.min_weight_basis(r.nu())?;
        let eta = eta_x.iter().map(Monomial::involution).collect();
        if weight_omega + weight_eta > 0 {
            return Err(Error::TheoremViolation(format!(
                "pure parts have weight {} > 0 at k={}, m={}, ρ={r}",
                weight_omega + weight_eta,
                self.k,
                self.m
            )));
        }
        let sel = self.chi.nonpositive(r)?;
        let weight = weight_omega + weight_eta + sel.weight;
        if weight > 0 {
            return Err(Error::TheoremViolation(format!(
                "constructive basis has weight {weight} > 0 at ρ={r}"
            )));
        }
        Ok(ConstructiveBasis {
            omega,
            eta,
            chi: sel.basis.into_monomials(),
            chi_route: sel.route,
            weight_omega,
            weight_eta,
            weight_chi: sel.weight,
            weight,
        })
    }
}

pub fn constructive_basis(k: usize, m: u32, r: &RhoWeights) -> Result<ConstructiveBasis> {
    ConstructiveBuilder::new(k, m)?.build(r)
}

/// Default entry bound `10·k·m` for random weights.
pub fn default_bound(k: usize, m: u32) -> i64 {
    10 * k as i64 * m as i64
}

/// Trial `trial` of the stream seeded by `seed`: `2k−1` entries uniform in
/// `[−bound, bound]`, the last one fixing the trace at zero.
pub fn sample_rho(k: usize, bound: i64, seed: u64, trial: u64) -> RhoWeights {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    let mut flat: Vec<i64> = (0..2 * k - 1).map(|_| rng.random_range(-bound..=bound)).collect();
    flat.push(-flat.iter().sum::<i64>());
    RhoWeights::from_flat(&flat).expect("trace zero by construction")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FuzzReport {
    pub k: usize,
    pub m: u32,
    pub trials: u64,
    pub seed: u64,
    pub bound: i64,
    pub injected: usize,
    pub max_weight: i64,
    pub argmax_trial: u64,
    pub argmax_rho: Vec<i64>,
    pub positive_trials: u64,
}

/// Random trace-zero ρ against [`ClassSystem::min_weight`]. The `injected`
/// vectors take the first trial slots; the rest are [`sample_rho`] draws.
pub fn fuzz(
    sys: &ClassSystem,
    trials: u64,
    seed: u64,
    bound: i64,
    injected: &[RhoWeights],
) -> Result<FuzzReport> {
    if trials < 1 {
        return Err(out_of_range("trials must be >= 1"));
    }
    if bound < 1 {
        return Err(out_of_range("bound must be >= 1"));
    }
    let results: Vec<(u64, i64, RhoWeights)> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let r = match injected.get(trial as usize) {
                Some(r) => r.clone(),
                None => sample_rho(sys.k, bound, seed, trial),
            };
            sys.min_weight(&r).map(|w| (trial, w, r))
        })
        .collect::<Result<_>>()?;
    let mut best = &results[0];
    for r in &results[1..] {
        if r.1 > best.1 {
            best = r;
        }
    }
    Ok(FuzzReport {
        k: sys.k,
        m: sys.m,
        trials,
        seed,
        bound,
        injected: injected.len().min(trials as usize),
        max_weight: best.1,
        argmax_trial: best.0,
        argmax_rho: best.2.flat(),
        positive_trials: results.iter().filter(|r| r.1 > 0).count() as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(s: &str, k: usize) -> Monomial {
        Monomial::parse(s, k).unwrap()
    }

    #[test]
    fn class_system_examples() {
        let sys = ClassSystem::new(2, 2).unwrap();
        assert_eq!(sys.classes().len(), 9);
        assert_eq!(sys.monomial_count(), 10);
        let multi: Vec<_> = sys.classes().iter().filter(|c| c.members.len() > 1).collect();
        assert_eq!(multi.len(), 1);
        assert_eq!(multi[0].label, PluriLabel::chi(0));
        for (k, m) in [(2, 3), (3, 2), (3, 4), (4, 3)] {
            let sys = ClassSystem::new(k, m).unwrap();
            assert_eq!(sys.classes().len(), (2 * m as usize - 1) * (2 * k - 1));
            assert_eq!(sys.class(&PluriLabel::omega(0)).unwrap().members, vec![Monomial::x_pow(k, 1, m)]);
            let top = k as i64 * (m as i64 - 1) - 1;
            assert_eq!(
                sys.class(&PluriLabel::chi(top)).unwrap().members,
                vec![Monomial::x_pow(k, k, m - 1).mul(&Monomial::y_pow(k, 1, 1))]
            );
        }
    }

    #[test]
    fn min_weight_examples() {
        let sys = ClassSystem::new(2, 2).unwrap();
        assert_eq!(sys.min_weight(&RhoWeights::zero(2)).unwrap(), 0);
        let r = RhoWeights::new(vec![1, -1], vec![1, -1]).unwrap();
        let (basis, w) = sys.min_weight_basis(&r).unwrap();
        assert_eq!(w, -2);
        assert!(basis.contains(&(PluriLabel::chi(0), mono("x2*y2", 2))));
        assert_eq!(sys.min_weight(&r.swap()).unwrap(), -2);
    }

    #[test]
    fn certify_small() {
        let sys = ClassSystem::new(2, 2).unwrap();
        let cert = certify(&sys).unwrap();
        assert_eq!(cert.verdict, Verdict::Semistable);
        assert_eq!(cert.t, ratio::frac(9, 2));
        assert!(verify_certificate(&cert, &sys).pass);
    }

    #[test]
    fn toy_is_destabilized() {
        let sys = ClassSystem::toy(2, 2).unwrap();
        let cert = certify(&sys).unwrap();
        assert_eq!(cert.verdict, Verdict::Nonsemistable);
        let d = cert.destabilizer.as_ref().unwrap();
        assert!(d.min_weight > 0);
        assert!(d.lambda[0] > 0);
        assert!(verify_certificate(&cert, &sys).pass);
    }

    #[test]
    fn tampering_is_detected() {
        let sys = ClassSystem::new(2, 2).unwrap();
        let mut cert = certify(&sys).unwrap();
        let w = cert.witness.as_mut().unwrap();
        let first = w.values_mut().next().unwrap().values_mut().next().unwrap();
        first.0 += ratio::frac(1, 7);
        assert!(!verify_certificate(&cert, &sys).pass);

        let toy = ClassSystem::toy(2, 2).unwrap();
        let mut cert = certify(&toy).unwrap();
        cert.destabilizer.as_mut().unwrap().min_weight += 1;
        assert!(!verify_certificate(&cert, &toy).pass);
    }

    #[test]
    fn certificate_json_round_trip() {
        let sys = ClassSystem::new(2, 3).unwrap();
        let cert = certify(&sys).unwrap();
        let text = serde_json::to_string(&cert).unwrap();
        let back: StabilityCertificate = serde_json::from_str(&text).unwrap();
        assert!(verify_certificate(&back, &sys).pass);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["verdict"], "SEMISTABLE");
        assert!(v["witness"]["omega:0"]["x1^3"].is_string());
    }

    #[test]
    fn constructive_examples() {
        let r = RhoWeights::new(vec![1, -1], vec![1, -1]).unwrap();
        let b = constructive_basis(2, 2, &r).unwrap();
        assert_eq!(b.weight, -2);
        assert_eq!(constructive_basis(3, 3, &RhoWeights::zero(3)).unwrap().weight, 0);
    }

    #[test]
    fn sampling_is_deterministic() {
        let a = sample_rho(3, 60, 7, 11);
        assert_eq!(a, sample_rho(3, 60, 7, 11));
        assert_ne!(a, sample_rho(3, 60, 7, 12));
        assert_eq!(a.flat().iter().sum::<i64>(), 0);
        let sys = ClassSystem::new(2, 2).unwrap();
        let f1 = fuzz(&sys, 200, 3, 40, &[]).unwrap();
        let f2 = fuzz(&sys, 200, 3, 40, &[]).unwrap();
        assert_eq!(f1, f2);
        assert!(f1.max_weight <= 0);
    }
}
