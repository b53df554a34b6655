//! Pluricanonical sections of the balanced double A_{2k+1}-curve.
//!
//! The curve is three copies `C_0, C_1, C_2` of `P^1` with uniformizers
//! `s_j` at `0` and `t_j = 1/s_j` at `∞`, glued `(∞ ∈ C_0) ~ (0 ∈ C_1)` and
//! `(∞ ∈ C_1) ~ (0 ∈ C_2)` along A_{2k+1} singularities. A section of
//! `ω^m` is stored on the normalization as `(f_0 (ds_0)^m, f_1 (ds_1)^m,
//! f_2 (ds_2)^m)` with each `f_j` a Laurent polynomial in `s_j`.
//!
//! Conventions: on `C_0` near `∞` we use `t_0 = 1/s_0`, so
//! `ds_0 = −dt_0 / t_0^2`. Signs from the gluing only matter in
//! [`cotangent_span_check`]; everything else lives on the normalization.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{out_of_range, Error, Result};
use crate::laurent::Laurent;
use crate::monomial::{enumerate, Monomial, Purity};
use crate::ratio::Q;

const VARS: [&str; 3] = ["s0", "s1", "s2"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionTriple {
    k: usize,
    twist: u32,
    comps: [Laurent; 3],
}

impl SectionTriple {
    pub fn new(k: usize, twist: u32, comps: [Laurent; 3]) -> Self {
        Self { k, twist, comps }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn twist(&self) -> u32 {
        self.twist
    }

    pub fn component(&self, j: usize) -> &Laurent {
        &self.comps[j]
    }

    pub fn components(&self) -> &[Laurent; 3] {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Laurent::is_zero)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.k != other.k {
            return Err(Error::DimensionMismatch {
                expected: self.k,
                found: other.k,
            });
        }
        Ok(Self {
            k: self.k,
            twist: self.twist + other.twist,
            comps: std::array::from_fn(|j| &self.comps[j] * &other.comps[j]),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.k != other.k || self.twist != other.twist {
            return Err(out_of_range("subtracting sections of different k or twist"));
        }
        Ok(Self {
            k: self.k,
            twist: self.twist,
            comps: std::array::from_fn(|j| &self.comps[j] - &other.comps[j]),
        })
    }

    pub fn scale(&self, c: &Q) -> Self {
        Self {
            k: self.k,
            twist: self.twist,
            comps: std::array::from_fn(|j| self.comps[j].scale(c)),
        }
    }

    /// Per-component text, e.g. `["1", "s1^-4", "0"]`.
    pub fn render(&self) -> [String; 3] {
        std::array::from_fn(|j| self.comps[j].render(VARS[j]))
    }
}

impl fmt::Display for SectionTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.render();
        write!(f, "({a}, {b}, {c}) (ds)^{}", self.twist)
    }
}

/// The canonical basis `x_1..x_k, y_1..y_k` of `H^0(C, ω_C)`:
/// `x_i = (s_0^{i−1} ds_0, ds_1/s_1^{i+1}, 0)`,
/// `y_i = (0, s_1^{i−1} ds_1, ds_2/s_2^{i+1})`.
#[derive(Clone, Debug)]
pub struct CanonicalBasis {
    x: Vec<SectionTriple>,
    y: Vec<SectionTriple>,
}

pub fn canonical_basis(k: usize) -> Result<CanonicalBasis> {
    if k < 2 {
        return Err(out_of_range(format!("canonical basis needs k >= 2, got {k}")));
    }
    let x = (1..=k as i64)
        .map(|i| {
            SectionTriple::new(
                k,
                1,
                [Laurent::power(i - 1), Laurent::power(-(i + 1)), Laurent::zero()],
            )
        })
        .collect();
    let y = (1..=k as i64)
        .map(|i| {
            SectionTriple::new(
                k,
                1,
                [Laurent::zero(), Laurent::power(i - 1), Laurent::power(-(i + 1))],
            )
        })
        .collect();
    Ok(CanonicalBasis { x, y })
}

impl CanonicalBasis {
    pub fn k(&self) -> usize {
        self.x.len()
    }

    /// `x_i`, 1-based.
    pub fn x(&self, i: usize) -> &SectionTriple {
        &self.x[i - 1]
    }

    /// `y_i`, 1-based.
    pub fn y(&self, i: usize) -> &SectionTriple {
        &self.y[i - 1]
    }

    /// Variable `v` in the order `x_1..x_k, y_1..y_k` (0-based).
    pub fn variable(&self, v: usize) -> &SectionTriple {
        let k = self.k();
        if v < k {
            &self.x[v]
        } else {
            &self.y[v - k]
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = &SectionTriple> {
        self.x.iter().chain(&self.y)
    }

    /// The image of a monomial under `Sym^m H^0(ω) → H^0(ω^m)`.
    pub fn section_of(&self, mon: &Monomial) -> Result<SectionTriple> {
        if mon.k() != self.k() {
            return Err(Error::DimensionMismatch {
                expected: self.k(),
                found: mon.k(),
            });
        }
        let factors: Vec<&SectionTriple> = mon.factors().into_iter().map(|v| self.variable(v)).collect();
        product(&factors)
    }
}

/// Componentwise product; twists add. The empty product is not defined here.
pub fn product(sections: &[&SectionTriple]) -> Result<SectionTriple> {
    let (first, rest) = sections
        .split_first()
        .ok_or_else(|| out_of_range("product of an empty list of sections"))?;
    rest.iter().try_fold((*first).clone(), |acc, s| acc.mul(s))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PluriKind {
    Omega,
    Eta,
    Chi,
}

impl PluriKind {
    fn name(self) -> &'static str {
        match self {
            PluriKind::Omega => "omega",
            PluriKind::Eta => "eta",
            PluriKind::Chi => "chi",
        }
    }
}

/// Label of a basis differential: `ω_i`, `η_i` or `χ_d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PluriLabel {
    pub kind: PluriKind,
    pub index: i64,
}

impl PluriLabel {
    pub fn omega(index: i64) -> Self {
        Self {
            kind: PluriKind::Omega,
            index,
        }
    }

    pub fn eta(index: i64) -> Self {
        Self {
            kind: PluriKind::Eta,
            index,
        }
    }

    pub fn chi(index: i64) -> Self {
        Self {
            kind: PluriKind::Chi,
            index,
        }
    }

    pub fn is_valid(&self, k: usize, m: u32) -> bool {
        let (k, m) = (k as i64, m as i64);
        match self.kind {
            PluriKind::Omega | PluriKind::Eta => (0..=m * (k - 1)).contains(&self.index),
            PluriKind::Chi => (-k * (m - 1) + 1..=k * (m - 1) - 1).contains(&self.index),
        }
    }

    /// All labels for `(k, m)`: ω's, then η's, then χ's in increasing index.
    pub fn all(k: usize, m: u32) -> Vec<Self> {
        let (ki, mi) = (k as i64, m as i64);
        let top = mi * (ki - 1);
        let span = ki * (mi - 1);
        (0..=top)
            .map(Self::omega)
            .chain((0..=top).map(Self::eta))
            .chain((-span + 1..span).map(Self::chi))
            .collect()
    }
}

impl fmt::Display for PluriLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.kind.name(), self.index)
    }
}

impl FromStr for PluriLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::Parse {
            what: "class label",
            detail: s.to_string(),
        };
        let (kind, idx) = s.split_once(':').ok_or_else(err)?;
        let index = idx.trim().parse().map_err(|_| err())?;
        let kind = match kind.trim() {
            "omega" => PluriKind::Omega,
            "eta" => PluriKind::Eta,
            "chi" => PluriKind::Chi,
            _ => return Err(err()),
        };
        Ok(Self { kind, index })
    }
}

impl Serialize for PluriLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PluriLabel {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// The class of a degree-`m` monomial, read off from its exponents:
/// pure-x ↦ `ω_{Σ(i−1)a_i}`, pure-y ↦ `η_{Σ(i−1)b_i}`, mixed ↦ `χ_{wdeg}`.
pub fn label_of(mon: &Monomial, m: u32) -> Result<PluriLabel> {
    if mon.degree() != m {
        return Err(Error::DegreeMismatch {
            expected: m,
            found: mon.degree(),
        });
    }
    if m < 2 {
        return Err(out_of_range(format!("classification needs m >= 2, got {m}")));
    }
    Ok(match mon.purity() {
        Purity::PureX => PluriLabel::omega(mon.x_shifted_degree()),
        Purity::PureY => PluriLabel::eta(mon.y_shifted_degree()),
        _ => PluriLabel::chi(mon.weighted_degree()),
    })
}

/// The fixed representative of a label:
/// `ω_i = (s_0^i, s_1^{−2m−i}, 0)`, `η_i = (0, s_1^i, s_2^{−2m−i})`,
/// `χ_d = (0, s_1^{−d−m}, 0)`, all times `(ds)^m`.
pub fn representative(k: usize, m: u32, label: PluriLabel) -> Result<SectionTriple> {
    if !label.is_valid(k, m) {
        return Err(out_of_range(format!("label {label} invalid for k={k}, m={m}")));
    }
    let mi = m as i64;
    let i = label.index;
    let comps = match label.kind {
        PluriKind::Omega => [Laurent::power(i), Laurent::power(-2 * mi - i), Laurent::zero()],
        PluriKind::Eta => [Laurent::zero(), Laurent::power(i), Laurent::power(-2 * mi - i)],
        PluriKind::Chi => [Laurent::zero(), Laurent::power(-i - mi), Laurent::zero()],
    };
    Ok(SectionTriple::new(k, m, comps))
}

/// Label and scalar `c` with `product(mon) = c · representative(label)`.
/// The label is predicted from exponents and then confirmed against the
/// actual Laurent product.
pub fn classify_monomial(mon: &Monomial, m: u32) -> Result<(PluriLabel, Q)> {
    let label = label_of(mon, m)?;
    let basis = canonical_basis(mon.k())?;
    let prod = basis.section_of(mon)?;
    let rep = representative(mon.k(), m, label)?;
    let scalar = proportionality(&prod, &rep).ok_or_else(|| {
        Error::Internal(format!(
            "product of {mon} is not a multiple of the representative of {label}"
        ))
    })?;
    Ok((label, scalar))
}

/// `c` with `a = c·b`, if it exists and `b ≠ 0`.
fn proportionality(a: &SectionTriple, b: &SectionTriple) -> Option<Q> {
    let (j, (e, c)) = b
        .comps
        .iter()
        .enumerate()
        .find_map(|(j, l)| l.terms().next().map(|t| (j, t)))?;
    let scalar = a.comps[j].coeff(e) / c;
    (scalar != Q::zero() && *a == b.scale(&scalar)).then_some(scalar)
}

#[derive(Clone, Debug)]
pub struct BasisElement {
    pub label: PluriLabel,
    pub witness: Monomial,
    pub section: SectionTriple,
}

/// The `(2m−1)(2k−1)` labelled basis of `H^0(C, ω^m)`. Each element carries
/// the first monomial (in enumeration order) mapping onto it; an element
/// without a witness would break surjectivity and is reported as an error.
pub fn pluricanonical_basis(k: usize, m: u32) -> Result<Vec<BasisElement>> {
    if k < 2 || m < 2 {
        return Err(out_of_range(format!("need k >= 2 and m >= 2, got k={k}, m={m}")));
    }
    let basis = canonical_basis(k)?;
    let mut witnesses: BTreeMap<PluriLabel, Monomial> = BTreeMap::new();
    for mon in enumerate(k, m, Purity::All) {
        let label = label_of(&mon, m)?;
        witnesses.entry(label).or_insert(mon);
    }
    PluriLabel::all(k, m)
        .into_iter()
        .map(|label| {
            let witness = witnesses
                .get(&label)
                .cloned()
                .ok_or_else(|| Error::Internal(format!("no monomial maps to {label}")))?;
            let section = representative(k, m, label)?;
            if basis.section_of(&witness)? != section {
                return Err(Error::Internal(format!(
                    "witness {witness} does not reproduce {label}"
                )));
            }
            Ok(BasisElement {
                label,
                witness,
                section,
            })
        })
        .collect()
}

/// Linear independence from supports alone: repeatedly remove a section that
/// is the only one remaining with a nonzero coefficient at some
/// `(component, exponent)`. If everything peels off, the family is
/// triangular, hence independent. `false` means "not certified", not
/// "dependent".
pub fn supports_certify_independence(sections: &[SectionTriple]) -> bool {
    let supports: Vec<BTreeSet<(usize, i64)>> = sections
        .iter()
        .map(|s| {
            (0..3)
                .flat_map(|j| s.comps[j].support().map(move |e| (j, e)))
                .collect()
        })
        .collect();
    if supports.iter().any(BTreeSet::is_empty) {
        return false;
    }
    let mut alive: Vec<bool> = vec![true; sections.len()];
    let mut remaining = sections.len();
    while remaining > 0 {
        let mut hits: BTreeMap<(usize, i64), (usize, usize)> = BTreeMap::new();
        for (i, sup) in supports.iter().enumerate().filter(|(i, _)| alive[*i]) {
            for key in sup {
                let e = hits.entry(*key).or_insert((0, i));
                e.0 += 1;
            }
        }
        let peel: BTreeSet<usize> = hits
            .values()
            .filter(|(count, _)| *count == 1)
            .map(|(_, i)| *i)
            .collect();
        if peel.is_empty() {
            return false;
        }
        for i in peel {
            alive[i] = false;
            remaining -= 1;
        }
    }
    true
}

/// A place where the closed-form basis listing disagrees with the product map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ListingDiscrepancy {
    pub label: PluriLabel,
    pub component: usize,
    pub listed_exponent: i64,
    pub product_exponent: i64,
}

/// Compares the exponents in the closed-form basis listing (the
/// first two rows and the last row of ω/η, plus the χ rows) with the
/// exponents produced by actual products. The only known mismatch is the
/// `s_1` exponent of `ω_1` (listed `−(2m−1)`, product `−(2m+1)`).
pub fn listing_discrepancies(k: usize, m: u32) -> Result<Vec<ListingDiscrepancy>> {
    let (ki, mi) = (k as i64, m as i64);
    let top = mi * (ki - 1);
    let span = ki * (mi - 1);
    // (label, component, listed exponent)
    let listed: Vec<(PluriLabel, usize, i64)> = vec![
        (PluriLabel::omega(0), 0, 0),
        (PluriLabel::omega(0), 1, -2 * mi),
        (PluriLabel::omega(1), 0, 1),
        (PluriLabel::omega(1), 1, -(2 * mi - 1)),
        (PluriLabel::omega(top), 0, top),
        (PluriLabel::omega(top), 1, -mi * (ki + 1)),
        (PluriLabel::eta(0), 1, 0),
        (PluriLabel::eta(0), 2, -2 * mi),
        (PluriLabel::eta(1), 1, 1),
        (PluriLabel::eta(1), 2, -(2 * mi + 1)),
        (PluriLabel::eta(top), 1, top),
        (PluriLabel::eta(top), 2, -mi * (ki + 1)),
        (PluriLabel::chi(-span + 1), 1, ki * (mi - 1) - mi - 1),
        (PluriLabel::chi(span - 1), 1, -(mi - 1) * (ki + 1)),
    ];
    let basis = pluricanonical_basis(k, m)?;
    let by_label: BTreeMap<PluriLabel, &BasisElement> = basis.iter().map(|b| (b.label, b)).collect();
    let mut out = Vec::new();
    for (label, component, listed_exponent) in listed {
        let el = by_label[&label];
        let (product_exponent, _) = el.section.component(component).as_monomial().ok_or_else(|| {
            Error::Internal(format!("{label} component {component} is not a monomial"))
        })?;
        if product_exponent != listed_exponent {
            out.push(ListingDiscrepancy {
                label,
                component,
                listed_exponent,
                product_exponent,
            });
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct MinorCheck {
    /// 0-based column pair of the 2×(2k−2) scroll matrix.
    pub columns: (usize, usize),
    pub expression: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScrollReport {
    pub k: usize,
    pub minors: Vec<MinorCheck>,
    pub pass: bool,
}

/// Column `c` of the scroll matrix as (top variable, bottom variable), using
/// 0-based variable indices `x_1..x_k, y_1..y_k`:
/// top row `x_1..x_{k−1}, y_k..y_2`, bottom row `x_2..x_k, y_{k−1}..y_1`.
fn scroll_column(k: usize, c: usize) -> (usize, usize) {
    if c < k - 1 {
        (c, c + 1)
    } else {
        let j = c - (k - 1); // 0 .. k-2
        (k + (k - 1 - j), k + (k - 2 - j))
    }
}

fn var_name(k: usize, v: usize) -> String {
    if v < k {
        format!("x{}", v + 1)
    } else {
        format!("y{}", v - k + 1)
    }
}

/// Checks that every 2×2 minor of the rank-one scroll matrix vanishes as a
/// section of `ω^2`. At `k = 2` the matrix has two columns and one minor.
pub fn scroll_minor_check(k: usize) -> Result<ScrollReport> {
    let basis = canonical_basis(k)?;
    let cols = 2 * (k - 1);
    let mut minors = Vec::new();
    for p in 0..cols {
        for q in p + 1..cols {
            let (tp, bp) = scroll_column(k, p);
            let (tq, bq) = scroll_column(k, q);
            let lhs = basis.variable(tp).mul(basis.variable(bq))?;
            let rhs = basis.variable(tq).mul(basis.variable(bp))?;
            let pass = lhs.sub(&rhs)?.is_zero();
            minors.push(MinorCheck {
                columns: (p, q),
                expression: format!(
                    "{}*{} - {}*{}",
                    var_name(k, tp),
                    var_name(k, bq),
                    var_name(k, tq),
                    var_name(k, bp)
                ),
                pass,
            });
        }
    }
    let pass = minors.iter().all(|m| m.pass);
    Ok(ScrollReport { k, minors, pass })
}

/// A twist-1 section restricted to the affine chart around the singularity
/// `(∞ ∈ C_0) ~ (0 ∈ C_1)`: coefficient of `dt_0` on `C_0` (a Laurent
/// polynomial in `t_0`) and coefficient of `ds_1` on `C_1`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct ChartForm {
    c0: Laurent,
    c1: Laurent,
}

impl ChartForm {
    fn of(section: &SectionTriple) -> Self {
        assert_eq!(section.twist(), 1);
        // f(s_0) ds_0 = f(1/t_0) · (−t_0^{−2}) dt_0
        let jac = Laurent::monomial(-Q::one(), -2);
        Self {
            c0: &section.component(0).invert_variable() * &jac,
            c1: section.component(1).clone(),
        }
    }

    fn times(&self, f: &ChartFunction) -> Self {
        Self {
            c0: &self.c0 * &f.c0,
            c1: &self.c1 * &f.c1,
        }
    }
}

/// A regular function on the chart: a pair (function of `t_0`, function of `s_1`).
#[derive(Clone, Debug, PartialEq, Eq)]
struct ChartFunction {
    c0: Laurent,
    c1: Laurent,
}

impl ChartFunction {
    fn pow(&self, e: u32) -> Self {
        let mut out = Self {
            c0: Laurent::one(),
            c1: Laurent::one(),
        };
        for _ in 0..e {
            out = Self {
                c0: &out.c0 * &self.c0,
                c1: &out.c1 * &self.c1,
            };
        }
        out
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck {
    pub identity: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CotangentReport {
    pub k: usize,
    pub identities: Vec<IdentityCheck>,
    pub pass: bool,
}

/// Verifies, on the chart `Spec C[(t_0, s_1), (t_0^{k+1}, −s_1^{k+1})]`:
///
/// * `x_k = (−dt_0/t_0^{k+1}, ds_1/s_1^{k+1})` (local generator),
/// * `y_1 = (0, s_1^{k+1}) · x_k`,
/// * `x_{k−1} = (t_0, s_1) · x_k`,
/// * `(0, s_1^{k+1}) = (X^{k+1} − Y)/2` with `X = (t_0, s_1)`,
///   `Y = (t_0^{k+1}, −s_1^{k+1})`, so the multiplier is a regular function.
pub fn cotangent_span_check(k: usize) -> Result<CotangentReport> {
    let basis = canonical_basis(k)?;
    let ki = k as i64;
    let xk = ChartForm::of(basis.x(k));
    let x_coord = ChartFunction {
        c0: Laurent::power(1),
        c1: Laurent::power(1),
    };
    let y_coord = ChartFunction {
        c0: Laurent::power(ki + 1),
        c1: Laurent::monomial(-Q::one(), ki + 1),
    };
    let bump = ChartFunction {
        c0: Laurent::zero(),
        c1: Laurent::power(ki + 1),
    };

    let expected_generator = ChartForm {
        c0: Laurent::monomial(-Q::one(), -(ki + 1)),
        c1: Laurent::power(-(ki + 1)),
    };
    let xk_plus = x_coord.pow(k as u32 + 1);
    let half = crate::ratio::frac(1, 2);
    let combo = ChartFunction {
        c0: (&xk_plus.c0 - &y_coord.c0).scale(&half),
        c1: (&xk_plus.c1 - &y_coord.c1).scale(&half),
    };

    let identities = vec![
        IdentityCheck {
            identity: format!("x{k} = (-dt0/t0^{}, ds1/s1^{})", k + 1, k + 1),
            pass: xk == expected_generator,
        },
        IdentityCheck {
            identity: format!("y1 = (0, s1^{}) * x{k}", k + 1),
            pass: ChartForm::of(basis.y(1)) == xk.times(&bump),
        },
        IdentityCheck {
            identity: format!("x{} = (t0, s1) * x{k}", k - 1),
            pass: ChartForm::of(basis.x(k - 1)) == xk.times(&x_coord),
        },
        IdentityCheck {
            identity: format!("(0, s1^{}) = (x^{} - y)/2", k + 1, k + 1),
            pass: combo == bump,
        },
    ];
    let pass = identities.iter().all(|c| c.pass);
    Ok(CotangentReport { k, identities, pass })
}

#[derive(Clone, Debug, Serialize)]
pub struct TorusWeights {
    pub k: usize,
    pub weights: Vec<i64>,
    pub multiplicity_free: bool,
}

/// `G_m` acts on `x_i` with weight `i` and on `y_i` with weight `−i`.
pub fn torus_weights(k: usize) -> Result<TorusWeights> {
    if k < 2 {
        return Err(out_of_range(format!("torus weights need k >= 2, got {k}")));
    }
    let ki = k as i64;
    let weights: Vec<i64> = (1..=ki).chain((1..=ki).map(|i| -i)).collect();
    let distinct: BTreeSet<i64> = weights.iter().copied().collect();
    Ok(TorusWeights {
        k,
        multiplicity_free: distinct.len() == weights.len(),
        weights,
    })
}

/// Serialized form of one basis element.
#[derive(Clone, Debug, Serialize)]
pub struct SectionRecord {
    pub kind: String,
    pub index: i64,
    pub label: PluriLabel,
    pub witness: Monomial,
    pub components: [String; 3],
}

impl From<&BasisElement> for SectionRecord {
    fn from(b: &BasisElement) -> Self {
        Self {
            kind: b.label.kind.name().to_string(),
            index: b.label.index,
            label: b.label,
            witness: b.witness.clone(),
            components: b.section.render(),
        }
    }
}

/// Everything the `sections` command reports for one `(k, m)`.
#[derive(Clone, Debug, Serialize)]
pub struct SectionsReport {
    pub k: usize,
    pub g: usize,
    pub m: u32,
    pub dimension: usize,
    pub expected_dimension: usize,
    pub independent: bool,
    pub witnesses_consistent: bool,
    pub listing_discrepancies: Vec<ListingDiscrepancy>,
    pub scroll: ScrollReport,
    pub cotangent: CotangentReport,
    pub torus: TorusWeights,
    pub sections: Vec<SectionRecord>,
    pub pass: bool,
}

pub fn sections_report(k: usize, m: u32) -> Result<SectionsReport> {
    let basis = pluricanonical_basis(k, m)?;
    let expected_dimension = (2 * m as usize - 1) * (2 * k - 1);
    let sections: Vec<SectionTriple> = basis.iter().map(|b| b.section.clone()).collect();
    let independent = supports_certify_independence(&sections);
    let witnesses_consistent = consistency_check(k, m)?;
    let scroll = scroll_minor_check(k)?;
    let cotangent = cotangent_span_check(k)?;
    let torus = torus_weights(k)?;
    let pass = basis.len() == expected_dimension
        && independent
        && witnesses_consistent
        && scroll.pass
        && cotangent.pass
        && torus.multiplicity_free;
    Ok(SectionsReport {
        k,
        g: 2 * k,
        m,
        dimension: basis.len(),
        expected_dimension,
        independent,
        witnesses_consistent,
        listing_discrepancies: listing_discrepancies(k, m)?,
        scroll,
        cotangent,
        torus,
        sections: basis.iter().map(SectionRecord::from).collect(),
        pass,
    })
}

/// Every degree-`m` monomial's product is `1 ·` the representative of its
/// predicted label.
pub fn consistency_check(k: usize, m: u32) -> Result<bool> {
    let basis = canonical_basis(k)?;
    for mon in enumerate(k, m, Purity::All) {
        let label = label_of(&mon, m)?;
        let prod = basis.section_of(&mon)?;
        if prod != representative(k, m, label)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Convenience for tests and reports: `product` of the given monomial's
/// factors compared against `c ·` an expected triple.
pub fn is_multiple_of(a: &SectionTriple, b: &SectionTriple) -> Option<Q> {
    proportionality(a, b)
}
