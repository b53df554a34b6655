//! χ-bases: sets of `2k(m−1)−1` mixed degree-`m` monomials hitting every
//! weighted degree in `[−k(m−1)+1, k(m−1)−1]` exactly once.
//!
//! Besides validation and exact minimum-weight selection this module builds
//! the explicit families used to show that every trace-zero weight vector
//! admits a χ-basis of non-positive weight:
//!
//! * `m = 2`: the two bases `B_1`, `B_2`, whose weights are `−(λ_k+ν_k)` and
//!   `(k−1)(λ_k+ν_k)`.
//! * `m ≥ 3`, T-route: `T_1 ∪ T_2(s)` and `T_1 ∪ T'_2(s)`, rich in `x_k, y_k`.
//! * `m ≥ 3`, S-route: `S_1 ∪ ι(S_1) ∪ S_2(s)` and its mirror, poor in
//!   `x_k, y_k`; separate constructions for even and odd `k`.
//!
//! Summed over `s = 1..k−1`, the T-route weights are a positive multiple of
//! `λ_k+ν_k` and the S-route weights a negative one, so one of the bases is
//! always non-positive.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::error::{out_of_range, Error, Result};
use crate::monomial::{enumerate, Monomial, OccurrenceVector, Purity, RhoWeights};

/// Size of a χ-basis, `2k(m−1)−1`.
pub fn chi_size(k: usize, m: u32) -> usize {
    2 * k * (m as usize - 1) - 1
}

/// Inclusive bounds `(−k(m−1)+1, k(m−1)−1)` of the χ weighted degrees.
pub fn chi_degree_bounds(k: usize, m: u32) -> (i64, i64) {
    let span = k as i64 * (m as i64 - 1);
    (-span + 1, span - 1)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChiBasis {
    k: usize,
    m: u32,
    monomials: Vec<Monomial>,
}

impl ChiBasis {
    /// Validates and wraps.
    pub fn new(k: usize, m: u32, monomials: Vec<Monomial>) -> Result<Self> {
        let v = is_chi_basis(&monomials, k, m);
        if !v.valid {
            return Err(out_of_range(format!("not a χ-basis: {}", v.summary())));
        }
        Ok(Self { k, m, monomials })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn into_monomials(self) -> Vec<Monomial> {
        self.monomials
    }

    pub fn weight(&self, r: &RhoWeights) -> Result<i64> {
        self.monomials.iter().map(|m| m.rho_weight(r)).sum()
    }

    pub fn occurrences(&self) -> OccurrenceVector {
        OccurrenceVector::of(self.k, &self.monomials).expect("monomials share k")
    }

    pub fn involution(&self) -> Self {
        Self {
            k: self.k,
            m: self.m,
            monomials: self.monomials.iter().map(Monomial::involution).collect(),
        }
    }

    /// Monomials sorted by weighted degree, highest first.
    pub fn by_degree(&self) -> Vec<&Monomial> {
        let mut v: Vec<&Monomial> = self.monomials.iter().collect();
        v.sort_by_key(|m| std::cmp::Reverse(m.weighted_degree()));
        v
    }
}

/// Diagnostics from [`is_chi_basis`]. `valid` holds iff every list is empty
/// and the cardinality is right.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChiValidity {
    pub expected_size: usize,
    /// Number of distinct monomials supplied.
    pub size: usize,
    pub duplicates: Vec<Monomial>,
    pub wrong_k_or_degree: Vec<Monomial>,
    pub not_mixed: Vec<Monomial>,
    pub missing_degrees: Vec<i64>,
    pub repeated_degrees: Vec<i64>,
    pub out_of_range_degrees: Vec<i64>,
    pub valid: bool,
}

impl ChiValidity {
    pub fn summary(&self) -> String {
        if self.valid {
            return "valid".into();
        }
        let mut parts = Vec::new();
        if self.size != self.expected_size {
            parts.push(format!("cardinality {} != {}", self.size, self.expected_size));
        }
        if !self.duplicates.is_empty() {
            parts.push(format!("duplicates {:?}", self.duplicates));
        }
        if !self.wrong_k_or_degree.is_empty() {
            parts.push(format!("wrong degree {:?}", self.wrong_k_or_degree));
        }
        if !self.not_mixed.is_empty() {
            parts.push(format!("not mixed {:?}", self.not_mixed));
        }
        if !self.missing_degrees.is_empty() {
            parts.push(format!("missing degrees {:?}", self.missing_degrees));
        }
        if !self.repeated_degrees.is_empty() {
            parts.push(format!("repeated degrees {:?}", self.repeated_degrees));
        }
        if !self.out_of_range_degrees.is_empty() {
            parts.push(format!("degrees out of range {:?}", self.out_of_range_degrees));
        }
        parts.join("; ")
    }
}

/// Checks the two χ-basis conditions (every monomial mixed; every weighted
/// degree in range exactly once) plus cardinality, on the distinct elements
/// of `candidates`.
pub fn is_chi_basis(candidates: &[Monomial], k: usize, m: u32) -> ChiValidity {
    let expected_size = if k >= 1 && m >= 2 { chi_size(k, m) } else { 0 };
    let mut seen = BTreeSet::new();
    let mut duplicates = Vec::new();
    for c in candidates {
        if !seen.insert(c.clone()) {
            duplicates.push(c.clone());
        }
    }
    let wrong_k_or_degree: Vec<Monomial> = seen
        .iter()
        .filter(|c| c.k() != k || c.degree() != m)
        .cloned()
        .collect();
    let not_mixed: Vec<Monomial> = seen.iter().filter(|c| !c.is_mixed()).cloned().collect();
    let (lo, hi) = chi_degree_bounds(k.max(1), m.max(2));
    let mut degree_count: BTreeMap<i64, usize> = BTreeMap::new();
    for c in &seen {
        *degree_count.entry(c.weighted_degree()).or_default() += 1;
    }
    let missing_degrees = (lo..=hi).filter(|d| !degree_count.contains_key(d)).collect();
    let repeated_degrees = degree_count
        .iter()
        .filter(|(_, &n)| n > 1)
        .map(|(&d, _)| d)
        .collect();
    let out_of_range_degrees = degree_count
        .keys()
        .copied()
        .filter(|d| *d < lo || *d > hi)
        .collect();
    let mut v = ChiValidity {
        expected_size,
        size: seen.len(),
        duplicates,
        wrong_k_or_degree,
        not_mixed,
        missing_degrees,
        repeated_degrees,
        out_of_range_degrees,
        valid: false,
    };
    v.valid = expected_size > 0
        && v.size == expected_size
        && v.duplicates.is_empty()
        && v.wrong_k_or_degree.is_empty()
        && v.not_mixed.is_empty()
        && v.missing_degrees.is_empty()
        && v.repeated_degrees.is_empty()
        && v.out_of_range_degrees.is_empty();
    v
}

fn x(k: usize, i: usize, e: u32) -> Monomial {
    Monomial::x_pow(k, i, e)
}

fn y(k: usize, i: usize, e: u32) -> Monomial {
    Monomial::y_pow(k, i, e)
}

fn prod(factors: &[Monomial]) -> Monomial {
    Monomial::product(factors).expect("non-empty product")
}

/// Which of the two `m = 2` bases.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum BVariant {
    B1,
    B2,
}

/// `B_1 = {x_k y_1, x_{k−1} y_1, x_{k−1} y_2, …, x_1 y_{k−1}, x_1 y_k}`,
/// `B_2 = {x_k y_1, …, x_k y_k, x_{k−1} y_k, …, x_1 y_k}`.
pub fn family_b(k: usize, variant: BVariant) -> Result<ChiBasis> {
    if k < 2 {
        return Err(out_of_range(format!("family B needs k >= 2, got {k}")));
    }
    let mut mons = Vec::with_capacity(2 * k - 1);
    match variant {
        BVariant::B1 => {
            for i in (1..=k).rev() {
                mons.push(x(k, i, 1).mul(&y(k, k + 1 - i, 1)));
                if i > 1 {
                    mons.push(x(k, i - 1, 1).mul(&y(k, k + 1 - i, 1)));
                }
            }
        }
        BVariant::B2 => {
            for j in 1..=k {
                mons.push(x(k, k, 1).mul(&y(k, j, 1)));
            }
            for i in (1..k).rev() {
                mons.push(x(k, i, 1).mul(&y(k, k, 1)));
            }
        }
    }
    checked_family(k, 2, mons, &format!("{variant:?}"))
}

fn checked_family(k: usize, m: u32, mons: Vec<Monomial>, name: &str) -> Result<ChiBasis> {
    let v = is_chi_basis(&mons, k, m);
    if !v.valid {
        return Err(Error::TheoremViolation(format!(
            "family {name} at k={k}, m={m} is not a χ-basis: {}",
            v.summary()
        )));
    }
    Ok(ChiBasis {
        k,
        m,
        monomials: mons,
    })
}

fn check_route_params(k: usize, m: u32, s: usize) -> Result<()> {
    if k < 2 {
        return Err(out_of_range(format!("need k >= 2, got {k}")));
    }
    if m < 3 {
        return Err(out_of_range(format!("T/S families need m >= 3, got {m}")));
    }
    if s < 1 || s >= k {
        return Err(out_of_range(format!("need 1 <= s <= k-1 = {}, got s = {s}", k - 1)));
    }
    Ok(())
}

/// Degree-`m` monomials of the ideal
/// `x_k^{m−1}(y_1..y_k) + Σ_{j=1}^{m−2} x_k^{m−1−j} y_k^j (y_1..y_k, x_1..x_{k−1}) + y_k^{m−1}(x_1..x_{k−1})`.
/// Every generator already has degree `m`, so the degree-`m` part is the
/// set of generators, deduplicated in generation order.
pub fn t1(k: usize, m: u32) -> Result<Vec<Monomial>> {
    if k < 2 || m < 3 {
        return Err(out_of_range(format!("T_1 needs k >= 2, m >= 3, got k={k}, m={m}")));
    }
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    let mut push = |mon: Monomial| {
        if seen.insert(mon.clone()) {
            out.push(mon);
        }
    };
    for i in 1..=k {
        push(x(k, k, m - 1).mul(&y(k, i, 1)));
    }
    for j in 1..=m - 2 {
        let base = x(k, k, m - 1 - j).mul(&y(k, k, j));
        for i in 1..=k {
            push(base.mul(&y(k, i, 1)));
        }
        for i in 1..k {
            push(base.mul(&x(k, i, 1)));
        }
    }
    for i in 1..k {
        push(y(k, k, m - 1).mul(&x(k, i, 1)));
    }
    Ok(out)
}

/// The χ-degrees not hit by `T_1`, in decreasing order.
pub fn t1_missing_degrees(k: usize, m: u32) -> Result<Vec<i64>> {
    let hit: BTreeSet<i64> = t1(k, m)?.iter().map(Monomial::weighted_degree).collect();
    let (lo, hi) = chi_degree_bounds(k, m);
    Ok((lo..=hi).rev().filter(|d| !hit.contains(d)).collect())
}

/// `T_2(s) = {x_k^{m−3−j} y_k^{j+1} x_{k−s} x_s : j = 0..m−3}`; the primed
/// variant is its image under ι.
pub fn t2(k: usize, m: u32, s: usize, primed: bool) -> Result<Vec<Monomial>> {
    check_route_params(k, m, s)?;
    let pair = x(k, k - s, 1).mul(&x(k, s, 1));
    let mons = (0..=m - 3).map(|j| prod(&[x(k, k, m - 3 - j), y(k, k, j + 1), pair.clone()]));
    Ok(if primed {
        mons.map(|m| m.involution()).collect()
    } else {
        mons.collect()
    })
}

pub fn family_t(k: usize, m: u32, s: usize, primed: bool) -> Result<ChiBasis> {
    let mut mons = t1(k, m)?;
    mons.extend(t2(k, m, s, primed)?);
    checked_family(k, m, mons, &format!("T_1 ∪ T_2{}({s})", if primed { "'" } else { "" }))
}

/// One corrected entry of a literal family listing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Repair {
    pub location: String,
    pub literal: Monomial,
    pub shipped: Monomial,
}

/// `S_1` as listed (`literal = true`) or corrected. Returns the monomials
/// and a parallel list of location tags.
fn s1_listing(k: usize, m: u32, literal: bool) -> Vec<(String, Monomial)> {
    let mut out = Vec::new();
    if k % 2 == 0 {
        let l = k / 2;
        // (ℓ−1) rows of m terms: x_{k−r+1}^{m−1−t} x_{k−r}^t y_r
        for r in 1..l {
            for t in 0..m {
                out.push((
                    format!("S_1 row A{r} term {t}"),
                    prod(&[x(k, k - r + 1, m - 1 - t), x(k, k - r, t), y(k, r, 1)]),
                ));
            }
        }
        // ℓ rows of (m−2) terms: x_{j+1}^{m−1−t} x_j^t y_j, j = ℓ..1
        for j in (1..=l).rev() {
            for t in 0..m - 2 {
                out.push((
                    format!("S_1 row B{j} term {t}"),
                    prod(&[x(k, j + 1, m - 1 - t), x(k, j, t), y(k, j, 1)]),
                ));
            }
        }
    } else {
        let l = (k - 1) / 2;
        for r in 1..l {
            for t in 0..m {
                out.push((
                    format!("S_1 row A{r} term {t}"),
                    prod(&[x(k, k - r + 1, m - 1 - t), x(k, k - r, t), y(k, r, 1)]),
                ));
            }
        }
        // ℓ rows of (m−2) terms: x_{j+2}^{m−1−t} x_{j+1}^t y_j, j = ℓ..1
        for j in (1..=l).rev() {
            for t in 0..m - 2 {
                let mut mon = prod(&[x(k, j + 2, m - 1 - t), x(k, j + 1, t), y(k, j, 1)]);
                // The literal second row (j = ℓ−1) opens with two entries of
                // the wrong total degree; the last entry of the row is listed
                // correctly, so only positions before it are affected.
                if literal && l >= 2 && j == l - 1 {
                    let last = m - 3;
                    if t == 0 && t < last {
                        mon = x(k, l + 1, m - 2).mul(&y(k, l - 1, 1));
                    } else if t == 1 && t < last {
                        mon = prod(&[x(k, l + 1, m - 1), x(k, l, 1), y(k, l, 1)]);
                    }
                }
                out.push((format!("S_1 row B{j} term {t}"), mon));
            }
        }
        out.push((
            "S_1 tail 0".into(),
            prod(&[x(k, l + 2, 1), y(k, l, 1), x(k, 2, m - 2)]),
        ));
        for t in 0..=m - 2 {
            out.push((
                format!("S_1 tail {}", t + 1),
                prod(&[x(k, l + 1, 1), y(k, l, 1), x(k, 2, m - 2 - t), x(k, 1, t)]),
            ));
        }
    }
    out
}

/// `S_2(s)`; the mirrored variant is `ι(S_2(s))`.
pub fn s2(k: usize, m: u32, s: usize, mirrored: bool) -> Result<Vec<Monomial>> {
    check_route_params(k, m, s)?;
    let xs_ys = x(k, s, 1).mul(&y(k, s, 1));
    let cross = prod(&[x(k, k, 1), y(k, s, 1), y(k, k - s, 1)]);
    let mut out = Vec::new();
    let (center, head, tail) = if k % 2 == 0 {
        let l = k / 2;
        (
            x(k, l, 1).mul(&y(k, l, 1)),
            Some(prod(&[x(k, l + 1, 1), y(k, l, 1), x(k, 1, m - 2)])),
            Some(prod(&[y(k, l + 1, 1), x(k, l, 1), y(k, 1, m - 2)])),
        )
    } else {
        let l = (k - 1) / 2;
        (x(k, l + 1, 1).mul(&y(k, l + 1, 1)), None, None)
    };
    out.extend(head);
    // center·(x_s y_s)^i·x_1^{m−2−2i} for 2i ≤ m−2, y_1 version for 2i < m−2
    for i in 0..=(m - 2) / 2 {
        out.push(prod(&[center.clone(), xs_ys.pow(i), x(k, 1, m - 2 - 2 * i)]));
    }
    for i in (0..).take_while(|i| 2 * i < m - 2) {
        out.push(prod(&[center.clone(), xs_ys.pow(i), y(k, 1, m - 2 - 2 * i)]));
    }
    // (x_k y_s y_{k−s})·(x_s y_s)^i·x_1^{m−3−2i} for 2i ≤ m−3, y_1 version for 2i < m−3
    for i in 0..=(m - 3) / 2 {
        out.push(prod(&[cross.clone(), xs_ys.pow(i), x(k, 1, m - 3 - 2 * i)]));
    }
    for i in (0..).take_while(|i| 2 * i < m - 3) {
        out.push(prod(&[cross.clone(), xs_ys.pow(i), y(k, 1, m - 3 - 2 * i)]));
    }
    out.extend(tail);
    Ok(if mirrored {
        out.iter().map(Monomial::involution).collect()
    } else {
        out
    })
}

fn assemble_s(k: usize, m: u32, s: usize, mirrored: bool, literal: bool) -> Result<Vec<(String, Monomial)>> {
    check_route_params(k, m, s)?;
    let s1 = s1_listing(k, m, literal);
    let mut out: Vec<(String, Monomial)> = s1.clone();
    out.extend(s1.into_iter().map(|(loc, mon)| (format!("ι({loc})"), mon.involution())));
    out.extend(
        s2(k, m, s, mirrored)?
            .into_iter()
            .enumerate()
            .map(|(i, mon)| (format!("S_2 term {i}"), mon)),
    );
    Ok(out)
}

/// `S_1 ∪ ι(S_1) ∪ S_2(s)` exactly as listed, typos included.
pub fn family_s_literal(k: usize, m: u32, s: usize, mirrored: bool) -> Result<Vec<Monomial>> {
    Ok(assemble_s(k, m, s, mirrored, true)?
        .into_iter()
        .map(|(_, mon)| mon)
        .collect())
}

/// The shipped S-route basis and the corrections applied to the literal
/// listing (empty when the literal listing is already a χ-basis).
pub fn family_s(k: usize, m: u32, s: usize, mirrored: bool) -> Result<(ChiBasis, Vec<Repair>)> {
    let literal = assemble_s(k, m, s, mirrored, true)?;
    let literal_mons: Vec<Monomial> = literal.iter().map(|(_, mon)| mon.clone()).collect();
    let name = format!("S(s={s}{})", if mirrored { ", mirrored" } else { "" });
    if is_chi_basis(&literal_mons, k, m).valid {
        return Ok((checked_family(k, m, literal_mons, &name)?, Vec::new()));
    }
    let repaired = assemble_s(k, m, s, mirrored, false)?;
    let repairs = literal
        .iter()
        .zip(&repaired)
        .filter(|((_, a), (_, b))| a != b)
        .map(|((loc, a), (_, b))| Repair {
            location: loc.clone(),
            literal: a.clone(),
            shipped: b.clone(),
        })
        .collect();
    let mons = repaired.into_iter().map(|(_, mon)| mon).collect();
    Ok((checked_family(k, m, mons, &name)?, repairs))
}

/// Named family member.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "route", rename_all = "kebab-case")]
pub enum FamilyId {
    B1,
    B2,
    T { s: usize, primed: bool },
    S { s: usize, mirrored: bool },
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyId::B1 => f.write_str("B1"),
            FamilyId::B2 => f.write_str("B2"),
            FamilyId::T { s, primed: false } => write!(f, "T1+T2({s})"),
            FamilyId::T { s, primed: true } => write!(f, "T1+T2'({s})"),
            FamilyId::S { s, mirrored: false } => write!(f, "S1+iS1+S2({s})"),
            FamilyId::S { s, mirrored: true } => write!(f, "S1+iS1+iS2({s})"),
        }
    }
}

impl FamilyId {
    pub fn s(&self) -> Option<usize> {
        match self {
            FamilyId::T { s, .. } | FamilyId::S { s, .. } => Some(*s),
            _ => None,
        }
    }
}

/// Build a family member; returns the basis and any repairs.
pub fn build_family(k: usize, m: u32, id: FamilyId) -> Result<(ChiBasis, Vec<Repair>)> {
    match id {
        FamilyId::B1 | FamilyId::B2 => {
            if m != 2 {
                return Err(out_of_range(format!("B families are for m = 2, got m = {m}")));
            }
            let v = if id == FamilyId::B1 { BVariant::B1 } else { BVariant::B2 };
            Ok((family_b(k, v)?, Vec::new()))
        }
        FamilyId::T { s, primed } => Ok((family_t(k, m, s, primed)?, Vec::new())),
        FamilyId::S { s, mirrored } => family_s(k, m, s, mirrored),
    }
}

/// `weight = c_k·(λ_k+ν_k) + c_rest·Σ_{i<k}(λ_i+ν_i)`; under trace zero this
/// is `(c_k − c_rest)·(λ_k+ν_k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct WeightDecomposition {
    pub c_k: i64,
    pub c_rest: i64,
}

impl WeightDecomposition {
    /// Coefficient of `λ_k+ν_k` after eliminating the rest via trace zero.
    pub fn multiple(&self) -> i64 {
        self.c_k - self.c_rest
    }

    pub fn evaluate(&self, r: &RhoWeights) -> i64 {
        let k = r.k();
        let rest: i64 = (0..k - 1).map(|i| r.lambda()[i] + r.nu()[i]).sum();
        self.c_k * r.last_pair_sum() + self.c_rest * rest
    }
}

/// Exists iff the occurrence vector is ι-symmetric and constant on `i < k`.
pub fn decompose(occ: &OccurrenceVector) -> Option<WeightDecomposition> {
    let k = occ.k();
    if !occ.is_involution_symmetric() {
        return None;
    }
    let rest = &occ.x[..k - 1];
    let c_rest = rest.first().copied().unwrap_or(0);
    if rest.iter().any(|&c| c != c_rest) {
        return None;
    }
    Some(WeightDecomposition {
        c_k: occ.x[k - 1] as i64,
        c_rest: c_rest as i64,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyReport {
    pub family: String,
    pub id: FamilyId,
    pub k: usize,
    pub m: u32,
    pub s: Option<usize>,
    pub monomials: Vec<Monomial>,
    pub valid: bool,
    pub validity: ChiValidity,
    pub occurrence: OccurrenceVector,
    pub weight_decomposition: Option<WeightDecomposition>,
    pub repairs: Vec<Repair>,
}

pub fn family_report(k: usize, m: u32, id: FamilyId) -> Result<FamilyReport> {
    let (basis, repairs) = build_family(k, m, id)?;
    let validity = is_chi_basis(basis.monomials(), k, m);
    let occurrence = basis.occurrences();
    Ok(FamilyReport {
        family: id.to_string(),
        id,
        k,
        m,
        s: id.s(),
        valid: validity.valid,
        validity,
        weight_decomposition: decompose(&occurrence),
        occurrence,
        monomials: basis.into_monomials(),
        repairs,
    })
}

/// Mixed degree-`m` monomials grouped by weighted degree, for repeated
/// minimum-weight selection.
#[derive(Clone, Debug)]
pub struct ChiSelector {
    k: usize,
    m: u32,
    groups: Vec<Vec<Monomial>>,
}

impl ChiSelector {
    pub fn new(k: usize, m: u32) -> Result<Self> {
        if k < 1 || m < 2 {
            return Err(out_of_range(format!("need k >= 1, m >= 2, got k={k}, m={m}")));
        }
        let (lo, hi) = chi_degree_bounds(k, m);
        let mut groups = vec![Vec::new(); (hi - lo + 1) as usize];
        for mon in enumerate(k, m, Purity::Mixed) {
            groups[(mon.weighted_degree() - lo) as usize].push(mon);
        }
        Ok(Self { k, m, groups })
    }

    /// One monomial per degree, each of minimal weight; ties go to the
    /// smallest monomial in enumeration order. The selection is optimal over
    /// all χ-bases since degrees are independent constraints.
    pub fn select(&self, r: &RhoWeights) -> Result<(ChiBasis, i64)> {
        if r.k() != self.k {
            return Err(Error::DimensionMismatch {
                expected: self.k,
                found: r.k(),
            });
        }
        let mut total = 0;
        let mut mons = Vec::with_capacity(self.groups.len());
        for group in &self.groups {
            let (best, w) = argmin(group, r);
            total += w;
            mons.push(best.clone());
        }
        Ok((
            ChiBasis {
                k: self.k,
                m: self.m,
                monomials: mons,
            },
            total,
        ))
    }

    /// Minimum weight only.
    pub fn min_weight(&self, r: &RhoWeights) -> i64 {
        self.groups.iter().map(|g| argmin(g, r).1).sum()
    }

    pub fn groups(&self) -> &[Vec<Monomial>] {
        &self.groups
    }
}

pub(crate) fn argmin<'a>(group: &'a [Monomial], r: &RhoWeights) -> (&'a Monomial, i64) {
    let mut best = &group[0];
    let mut best_w = best.weight_unchecked(r.lambda(), r.nu());
    for mon in &group[1..] {
        let w = mon.weight_unchecked(r.lambda(), r.nu());
        if w < best_w {
            best = mon;
            best_w = w;
        }
    }
    (best, best_w)
}

pub fn min_weight_chi_basis(k: usize, m: u32, r: &RhoWeights) -> Result<(ChiBasis, i64)> {
    ChiSelector::new(k, m)?.select(r)
}

/// How a non-positive χ-basis was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ChiRoute {
    Family { id: FamilyId },
    Optimal,
}

#[derive(Clone, Debug)]
pub struct ChiSelection {
    pub basis: ChiBasis,
    pub weight: i64,
    pub route: ChiRoute,
}

/// The explicit families for one `(k, m)`, precomputed as occurrence
/// vectors: `B_1, B_2` for `m = 2`, all T- and S-route members for `m ≥ 3`.
#[derive(Clone, Debug)]
pub struct ChiFamilies {
    k: usize,
    m: u32,
    members: Vec<(FamilyId, ChiBasis, OccurrenceVector)>,
    selector: ChiSelector,
}

impl ChiFamilies {
    pub fn new(k: usize, m: u32) -> Result<Self> {
        if k < 2 || m < 2 {
            return Err(out_of_range(format!("need k >= 2, m >= 2, got k={k}, m={m}")));
        }
        let ids: Vec<FamilyId> = if m == 2 {
            vec![FamilyId::B1, FamilyId::B2]
        } else {
            let t = (1..k).flat_map(|s| [false, true].map(|primed| FamilyId::T { s, primed }));
            let s = (1..k).flat_map(|s| [false, true].map(|mirrored| FamilyId::S { s, mirrored }));
            t.chain(s).collect()
        };
        let members = ids
            .into_iter()
            .map(|id| {
                let (basis, _) = build_family(k, m, id)?;
                let occ = basis.occurrences();
                Ok((id, basis, occ))
            })
            .collect::<Result<_>>()?;
        Ok(Self {
            k,
            m,
            members,
            selector: ChiSelector::new(k, m)?,
        })
    }

    pub fn members(&self) -> impl Iterator<Item = (&FamilyId, &ChiBasis)> {
        self.members.iter().map(|(id, b, _)| (id, b))
    }

    /// A χ-basis of weight `≤ 0`.
    ///
    /// `m = 2`: `B_1` if `λ_k+ν_k ≥ 0`, else `B_2`. `m ≥ 3`: the lightest
    /// T/S-route member (first in construction order on ties). If no family
    /// member is non-positive the exact optimum is used instead; a positive
    /// optimum contradicts the existence theorem and is returned as an error.
    pub fn nonpositive(&self, r: &RhoWeights) -> Result<ChiSelection> {
        if r.k() != self.k {
            return Err(Error::DimensionMismatch {
                expected: self.k,
                found: r.k(),
            });
        }
        let pick = if self.m == 2 {
            let want = if r.last_pair_sum() >= 0 { FamilyId::B1 } else { FamilyId::B2 };
            self.members.iter().find(|(id, _, _)| *id == want)
        } else {
            self.members
                .iter()
                .min_by_key(|(_, _, occ)| occ.dot(r))
        };
        if let Some((id, basis, occ)) = pick {
            let weight = occ.dot(r);
            if weight <= 0 {
                return Ok(ChiSelection {
                    basis: basis.clone(),
                    weight,
                    route: ChiRoute::Family { id: *id },
                });
            }
        }
        let (basis, weight) = self.selector.select(r)?;
        if weight > 0 {
            return Err(Error::TheoremViolation(format!(
                "no χ-basis of non-positive weight at k={}, m={}, ρ={r}: optimum {weight}",
                self.k, self.m
            )));
        }
        Ok(ChiSelection {
            basis,
            weight,
            route: ChiRoute::Optimal,
        })
    }

    pub fn optimal(&self, r: &RhoWeights) -> Result<(ChiBasis, i64)> {
        self.selector.select(r)
    }

    pub fn selector(&self) -> &ChiSelector {
        &self.selector
    }
}

pub fn nonpositive_chi_basis(k: usize, m: u32, r: &RhoWeights) -> Result<ChiSelection> {
    if r.k() != k {
        return Err(Error::DimensionMismatch {
            expected: k,
            found: r.k(),
        });
    }
    ChiFamilies::new(k, m)?.nonpositive(r)
}

/// A stated occurrence count compared with what the families produce.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountClaim {
    pub what: String,
    pub claimed: i64,
    pub computed: i64,
    pub matches: bool,
}

impl CountClaim {
    fn new(what: impl Into<String>, claimed: i64, computed: i64) -> Self {
        Self {
            what: what.into(),
            claimed,
            computed,
            matches: claimed == computed,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RouteUnionReport {
    pub route: String,
    pub k: usize,
    pub m: u32,
    pub bases: usize,
    pub all_valid: bool,
    pub occurrence: OccurrenceVector,
    pub symmetric: bool,
    pub uniform_below_k: bool,
    pub decomposition: Option<WeightDecomposition>,
    /// `count(x_k) − count(x_1)`: the multiple of `λ_k+ν_k` in the summed weight.
    pub multiple: i64,
    pub claims: Vec<CountClaim>,
    pub repairs: Vec<Repair>,
}

fn binom2(n: i64) -> i64 {
    n * (n - 1) / 2
}

/// Occurrence identities behind the sign argument: the union of the
/// `2(k−1)` T-route bases must have a positive multiple, the union of the
/// `2(k−1)` S-route bases a negative one.
pub fn family_sign_identity(k: usize, m: u32) -> Result<(RouteUnionReport, RouteUnionReport)> {
    if k < 2 || m < 3 {
        return Err(out_of_range(format!("need k >= 2, m >= 3, got k={k}, m={m}")));
    }
    let (ki, mi) = (k as i64, m as i64);
    let mut reports = Vec::new();
    for route in ["T", "S"] {
        let mut occ = OccurrenceVector::zero(k);
        let mut all_valid = true;
        let mut repairs = Vec::new();
        let mut bases = 0;
        for s in 1..k {
            for flag in [false, true] {
                let id = if route == "T" {
                    FamilyId::T { s, primed: flag }
                } else {
                    FamilyId::S { s, mirrored: flag }
                };
                let (basis, rep) = build_family(k, m, id)?;
                all_valid &= is_chi_basis(basis.monomials(), k, m).valid;
                occ.merge(&basis.occurrences());
                for r in rep {
                    if !repairs.contains(&r) {
                        repairs.push(r);
                    }
                }
                bases += 1;
            }
        }
        let decomposition = decompose(&occ);
        let multiple = occ.x[k - 1] as i64 - occ.x[0] as i64;
        let mut claims = Vec::new();
        if route == "T" {
            let t1_occ = OccurrenceVector::of(k, &t1(k, m)?)?;
            claims.push(CountClaim::new(
                "T_1: coefficient of (λ_k+ν_k)",
                ki * (mi - 1) + (2 * ki - 1) * binom2(mi - 1),
                t1_occ.x[k - 1] as i64,
            ));
            claims.push(CountClaim::new(
                "T_1: coefficient of Σ_{i<k}(λ_i+ν_i)",
                mi - 1,
                t1_occ.x[0] as i64,
            ));
        } else {
            let claimed_xk = if k % 2 == 0 {
                2 * (ki - 1) * (mi * mi - mi) - (ki - 1) * (mi * mi - 2 * mi + 2)
            } else {
                2 * (ki - 1) * binom2(mi) + 2 * (ki - 1) * (mi - 2)
            };
            claims.push(CountClaim::new("S-union: count(x_k)", claimed_xk, occ.x[k - 1] as i64));
            claims.push(CountClaim::new(
                "S-union: count of every other variable",
                2 * (ki - 1) * (mi * mi - mi) + (mi - 2) * (mi - 1),
                occ.x[0] as i64,
            ));
        }
        reports.push(RouteUnionReport {
            route: route.to_string(),
            k,
            m,
            bases,
            all_valid,
            symmetric: occ.is_involution_symmetric(),
            uniform_below_k: occ.x[..k - 1].iter().all(|&c| c == occ.x[0])
                && occ.y[..k - 1].iter().all(|&c| c == occ.y[0]),
            decomposition,
            multiple,
            occurrence: occ,
            claims,
            repairs,
        });
    }
    let s = reports.pop().expect("two routes");
    let t = reports.pop().expect("two routes");
    Ok((t, s))
}
