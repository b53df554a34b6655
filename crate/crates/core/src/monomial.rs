//! Monomials in `x_1..x_k, y_1..y_k` and diagonal one-parameter subgroups.
//!
//! The torus of the curve gives the grading `deg(x_i) = i`, `deg(y_i) = -i`;
//! a diagonal one-parameter subgroup assigns integer weights `λ_i` to `x_i`
//! and `ν_i` to `y_i`.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{out_of_range, Error, Result};

/// `x^a y^b` with `a, b` of length `k`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    x: Vec<u32>,
    y: Vec<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Purity {
    PureX,
    PureY,
    Mixed,
    All,
}

impl Monomial {
    pub fn new(x: Vec<u32>, y: Vec<u32>) -> Result<Self> {
        if x.is_empty() || x.len() != y.len() {
            return Err(Error::DimensionMismatch {
                expected: x.len(),
                found: y.len(),
            });
        }
        Ok(Self { x, y })
    }

    pub fn one(k: usize) -> Self {
        Self {
            x: vec![0; k],
            y: vec![0; k],
        }
    }

    /// `x_i^e`, 1-based index.
    pub fn x_pow(k: usize, i: usize, e: u32) -> Self {
        let mut m = Self::one(k);
        m.x[i - 1] = e;
        m
    }

    /// `y_i^e`, 1-based index.
    pub fn y_pow(k: usize, i: usize, e: u32) -> Self {
        let mut m = Self::one(k);
        m.y[i - 1] = e;
        m
    }

    pub fn k(&self) -> usize {
        self.x.len()
    }

    pub fn x_exponents(&self) -> &[u32] {
        &self.x
    }

    pub fn y_exponents(&self) -> &[u32] {
        &self.y
    }

    /// Exponent of the `v`-th coordinate in the order `x_1..x_k, y_1..y_k`.
    pub fn exponent(&self, v: usize) -> u32 {
        let k = self.k();
        if v < k {
            self.x[v]
        } else {
            self.y[v - k]
        }
    }

    pub fn x_degree(&self) -> u32 {
        self.x.iter().sum()
    }

    pub fn y_degree(&self) -> u32 {
        self.y.iter().sum()
    }

    pub fn degree(&self) -> u32 {
        self.x_degree() + self.y_degree()
    }

    /// Pure-x, pure-y or mixed. The constant monomial reports `PureX`; callers
    /// that need a degree-`m` monomial reject it before asking.
    pub fn purity(&self) -> Purity {
        match (self.x_degree(), self.y_degree()) {
            (_, 0) => Purity::PureX,
            (0, _) => Purity::PureY,
            _ => Purity::Mixed,
        }
    }

    pub fn is_mixed(&self) -> bool {
        self.x_degree() > 0 && self.y_degree() > 0
    }

    pub fn matches(&self, purity: Purity) -> bool {
        match purity {
            Purity::All => true,
            Purity::Mixed => self.is_mixed(),
            Purity::PureX => self.y_degree() == 0,
            Purity::PureY => self.x_degree() == 0,
        }
    }

    /// `Σ i·a_i − Σ i·b_i`.
    pub fn weighted_degree(&self) -> i64 {
        let grade = |e: &[u32]| -> i64 {
            e.iter()
                .enumerate()
                .map(|(i, &a)| (i as i64 + 1) * a as i64)
                .sum()
        };
        grade(&self.x) - grade(&self.y)
    }

    /// `Σ (i−1)·a_i`, the position of a pure-x monomial on the rational normal curve.
    pub fn x_shifted_degree(&self) -> i64 {
        self.x
            .iter()
            .enumerate()
            .map(|(i, &a)| i as i64 * a as i64)
            .sum()
    }

    /// `Σ (i−1)·b_i`.
    pub fn y_shifted_degree(&self) -> i64 {
        self.y
            .iter()
            .enumerate()
            .map(|(i, &b)| i as i64 * b as i64)
            .sum()
    }

    pub fn rho_weight(&self, r: &RhoWeights) -> Result<i64> {
        if r.k() != self.k() {
            return Err(Error::DimensionMismatch {
                expected: self.k(),
                found: r.k(),
            });
        }
        Ok(self.weight_unchecked(&r.lambda, &r.nu))
    }

    /// Weight with arbitrary (not necessarily trace-zero) weight vectors of
    /// length `k`. Panics on a length mismatch.
    pub fn weight_unchecked(&self, lambda: &[i64], nu: &[i64]) -> i64 {
        assert_eq!(lambda.len(), self.k());
        assert_eq!(nu.len(), self.k());
        let dot = |e: &[u32], w: &[i64]| -> i64 { e.iter().zip(w).map(|(&a, &l)| a as i64 * l).sum() };
        dot(&self.x, lambda) + dot(&self.y, nu)
    }

    /// ι: exchange `x_i` and `y_i`.
    pub fn involution(&self) -> Self {
        Self {
            x: self.y.clone(),
            y: self.x.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.k(), other.k(), "monomials over different k");
        let add = |a: &[u32], b: &[u32]| a.iter().zip(b).map(|(p, q)| p + q).collect();
        Self {
            x: add(&self.x, &other.x),
            y: add(&self.y, &other.y),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        Self {
            x: self.x.iter().map(|a| a * e).collect(),
            y: self.y.iter().map(|b| b * e).collect(),
        }
    }

    /// Product of a list of monomials; `None` for an empty list.
    pub fn product<'a>(factors: impl IntoIterator<Item = &'a Monomial>) -> Option<Self> {
        factors.into_iter().fold(None, |acc, f| match acc {
            None => Some(f.clone()),
            Some(a) => Some(a.mul(f)),
        })
    }

    /// Expands into `degree()` variable indices (0-based, `x` block first),
    /// in ascending order.
    pub fn factors(&self) -> Vec<usize> {
        let k = self.k();
        let mut out = Vec::with_capacity(self.degree() as usize);
        for v in 0..2 * k {
            for _ in 0..self.exponent(v) {
                out.push(v);
            }
        }
        out
    }

    /// Parses the text form `x1^2*y3`; `1` is the constant monomial.
    pub fn parse(s: &str, k: usize) -> Result<Self> {
        let err = |detail: String| Error::Parse {
            what: "monomial",
            detail: format!("{s:?}: {detail}"),
        };
        if k == 0 {
            return Err(out_of_range("k must be positive"));
        }
        let mut mon = Self::one(k);
        let s = s.trim();
        if s == "1" {
            return Ok(mon);
        }
        for factor in s.split('*') {
            let factor = factor.trim();
            let (var, exp) = match factor.split_once('^') {
                Some((v, e)) => (
                    v.trim(),
                    e.trim()
                        .parse::<u32>()
                        .map_err(|_| err(format!("bad exponent in {factor:?}")))?,
                ),
                None => (factor, 1),
            };
            let mut chars = var.chars();
            let block = chars.next();
            let idx: usize = chars
                .as_str()
                .parse()
                .map_err(|_| err(format!("bad variable {var:?}")))?;
            if idx == 0 || idx > k {
                return Err(err(format!("variable index {idx} outside 1..={k}")));
            }
            match block {
                Some('x') => mon.x[idx - 1] += exp,
                Some('y') => mon.y[idx - 1] += exp,
                _ => return Err(err(format!("bad variable {var:?}"))),
            }
        }
        Ok(mon)
    }

    /// Parses the text form, inferring `k` as the largest variable index
    /// (or using `min_k` if larger).
    pub fn parse_infer(s: &str, min_k: usize) -> Result<Self> {
        let max_idx = s
            .split(['*', '^'])
            .filter_map(|t| {
                let t = t.trim();
                t.strip_prefix('x')
                    .or_else(|| t.strip_prefix('y'))
                    .and_then(|d| d.parse::<usize>().ok())
            })
            .max()
            .unwrap_or(1);
        Self::parse(s, max_idx.max(min_k))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (name, exps) in [('x', &self.x), ('y', &self.y)] {
            for (i, &e) in exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first {
                    f.write_str("*")?;
                }
                first = false;
                write!(f, "{name}{}", i + 1)?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Graded order matching [`enumerate`]: lower degree first, then the
/// exponent vector `(a_1..a_k, b_1..b_k)` in decreasing lexicographic order,
/// so `x_1^m` is the smallest monomial of degree `m`.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.x.cmp(&self.x))
            .then_with(|| other.y.cmp(&self.y))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Serialize for Monomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Monomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Monomial::parse_infer(&s, 1).map_err(serde::de::Error::custom)
    }
}

/// Every degree-`m` monomial of the requested purity, in the order of
/// [`Monomial`]'s `Ord` (decreasing lex on the exponent vector).
pub fn enumerate(k: usize, m: u32, purity: Purity) -> Vec<Monomial> {
    assert!(k >= 1, "k must be positive");
    let vars = match purity {
        Purity::PureX | Purity::PureY => k,
        _ => 2 * k,
    };
    let mut out = Vec::new();
    let mut exps = vec![0u32; vars];
    compositions(&mut exps, 0, m, &mut |e| {
        let mon = match purity {
            Purity::PureX => Monomial {
                x: e.to_vec(),
                y: vec![0; k],
            },
            Purity::PureY => Monomial {
                x: vec![0; k],
                y: e.to_vec(),
            },
            _ => Monomial {
                x: e[..k].to_vec(),
                y: e[k..].to_vec(),
            },
        };
        if mon.matches(purity) {
            out.push(mon);
        }
    });
    out
}

fn compositions(exps: &mut [u32], pos: usize, remaining: u32, emit: &mut impl FnMut(&[u32])) {
    if pos + 1 == exps.len() {
        exps[pos] = remaining;
        emit(exps);
        exps[pos] = 0;
        return;
    }
    for e in (0..=remaining).rev() {
        exps[pos] = e;
        compositions(exps, pos + 1, remaining - e, emit);
    }
    exps[pos] = 0;
}

/// A diagonal one-parameter subgroup of `SL(2k)`: weights `λ` on `x_i`, `ν`
/// on `y_i`, summing to zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RhoWeights {
    lambda: Vec<i64>,
    nu: Vec<i64>,
}

impl RhoWeights {
    pub fn new(lambda: Vec<i64>, nu: Vec<i64>) -> Result<Self> {
        if lambda.is_empty() || lambda.len() != nu.len() {
            return Err(Error::DimensionMismatch {
                expected: lambda.len(),
                found: nu.len(),
            });
        }
        let trace: i64 = lambda.iter().chain(&nu).sum();
        if trace != 0 {
            return Err(Error::NotTraceZero(trace));
        }
        Ok(Self { lambda, nu })
    }

    /// From `2k` values: the λ block followed by the ν block.
    pub fn from_flat(values: &[i64]) -> Result<Self> {
        if values.is_empty() || values.len() % 2 != 0 {
            return Err(out_of_range(format!(
                "expected 2k weights, got {}",
                values.len()
            )));
        }
        let k = values.len() / 2;
        Self::new(values[..k].to_vec(), values[k..].to_vec())
    }

    pub fn zero(k: usize) -> Self {
        Self {
            lambda: vec![0; k],
            nu: vec![0; k],
        }
    }

    pub fn k(&self) -> usize {
        self.lambda.len()
    }

    pub fn lambda(&self) -> &[i64] {
        &self.lambda
    }

    pub fn nu(&self) -> &[i64] {
        &self.nu
    }

    /// Weight of the `v`-th coordinate in the order `x_1..x_k, y_1..y_k`.
    pub fn weight(&self, v: usize) -> i64 {
        let k = self.k();
        if v < k {
            self.lambda[v]
        } else {
            self.nu[v - k]
        }
    }

    pub fn flat(&self) -> Vec<i64> {
        self.lambda.iter().chain(&self.nu).copied().collect()
    }

    /// Exchange λ and ν (the action of ι on weights).
    pub fn swap(&self) -> Self {
        Self {
            lambda: self.nu.clone(),
            nu: self.lambda.clone(),
        }
    }

    pub fn scale(&self, c: i64) -> Self {
        Self {
            lambda: self.lambda.iter().map(|l| l * c).collect(),
            nu: self.nu.iter().map(|n| n * c).collect(),
        }
    }

    /// `λ_k + ν_k`, the quantity the χ-basis constructions dispatch on.
    pub fn last_pair_sum(&self) -> i64 {
        let k = self.k();
        self.lambda[k - 1] + self.nu[k - 1]
    }
}

impl fmt::Display for RhoWeights {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[i64]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "({} | {})", join(&self.lambda), join(&self.nu))
    }
}

/// Total number of occurrences of each variable across a multiset of monomials.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OccurrenceVector {
    pub x: Vec<u64>,
    pub y: Vec<u64>,
}

impl OccurrenceVector {
    pub fn zero(k: usize) -> Self {
        Self {
            x: vec![0; k],
            y: vec![0; k],
        }
    }

    pub fn of<'a>(k: usize, monomials: impl IntoIterator<Item = &'a Monomial>) -> Result<Self> {
        let mut occ = Self::zero(k);
        for m in monomials {
            occ.add(m)?;
        }
        Ok(occ)
    }

    pub fn add(&mut self, m: &Monomial) -> Result<()> {
        if m.k() != self.x.len() {
            return Err(Error::DimensionMismatch {
                expected: self.x.len(),
                found: m.k(),
            });
        }
        for (c, &a) in self.x.iter_mut().zip(&m.x) {
            *c += a as u64;
        }
        for (c, &b) in self.y.iter_mut().zip(&m.y) {
            *c += b as u64;
        }
        Ok(())
    }

    pub fn merge(&mut self, other: &Self) {
        for (c, o) in self.x.iter_mut().zip(&other.x) {
            *c += o;
        }
        for (c, o) in self.y.iter_mut().zip(&other.y) {
            *c += o;
        }
    }

    pub fn k(&self) -> usize {
        self.x.len()
    }

    pub fn total(&self) -> u64 {
        self.x.iter().chain(&self.y).sum()
    }

    /// `⟨occurrences, (λ, ν)⟩`, the weight of the underlying multiset.
    pub fn dot(&self, r: &RhoWeights) -> i64 {
        let dot = |c: &[u64], w: &[i64]| -> i64 { c.iter().zip(w).map(|(&c, &w)| c as i64 * w).sum() };
        dot(&self.x, r.lambda()) + dot(&self.y, r.nu())
    }

    /// `count(x_i) = count(y_i)` for every `i`.
    pub fn is_involution_symmetric(&self) -> bool {
        self.x == self.y
    }
}
