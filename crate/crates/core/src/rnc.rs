//! Pure-x monomials viewed as sections of `O(m(k−1))` on the rational normal
//! curve: one class per index `j = Σ(i−1)a_i`, minimal-weight selection, and
//! Kempf's bound `min ≤ m(m(k−1)+1)·mean(λ)`.

use serde::Serialize;

use crate::error::{out_of_range, Error, Result};
use crate::monomial::{enumerate, Monomial, Purity};
use crate::ratio::{self, Q};

#[derive(Clone, Debug)]
pub struct RncClassSystem {
    k: usize,
    m: u32,
    classes: Vec<Vec<Monomial>>,
}

impl RncClassSystem {
    pub fn new(k: usize, m: u32) -> Result<Self> {
        if k < 2 || m < 1 {
            return Err(out_of_range(format!("need k >= 2, m >= 1, got k={k}, m={m}")));
        }
        let mut classes = vec![Vec::new(); m as usize * (k - 1) + 1];
        for mon in enumerate(k, m, Purity::PureX) {
            classes[mon.x_shifted_degree() as usize].push(mon);
        }
        Ok(Self { k, m, classes })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Class `j` holds the monomials with `Σ(i−1)a_i = j`, in enumeration order.
    pub fn classes(&self) -> &[Vec<Monomial>] {
        &self.classes
    }

    fn check(&self, lambda: &[i64]) -> Result<()> {
        if lambda.len() != self.k {
            return Err(Error::DimensionMismatch {
                expected: self.k,
                found: lambda.len(),
            });
        }
        Ok(())
    }

    /// Minimum of `Σ a_i λ_i` over a class; first minimum in class order.
    fn class_min<'a>(class: &'a [Monomial], lambda: &[i64]) -> (&'a Monomial, i64) {
        let w = |mon: &Monomial| -> i64 {
            mon.x_exponents()
                .iter()
                .zip(lambda)
                .map(|(&a, &l)| a as i64 * l)
                .sum()
        };
        let mut best = &class[0];
        let mut best_w = w(best);
        for mon in &class[1..] {
            let v = w(mon);
            if v < best_w {
                best = mon;
                best_w = v;
            }
        }
        (best, best_w)
    }

    /// One monomial per class of minimal λ-weight, and the total.
    /// `lambda` need not sum to zero.
    pub fn min_weight_basis(&self, lambda: &[i64]) -> Result<(Vec<Monomial>, i64)> {
        self.check(lambda)?;
        let mut total = 0;
        let mut basis = Vec::with_capacity(self.classes.len());
        for class in &self.classes {
            let (mon, w) = Self::class_min(class, lambda);
            basis.push(mon.clone());
            total += w;
        }
        Ok((basis, total))
    }

    pub fn min_weight(&self, lambda: &[i64]) -> Result<i64> {
        self.check(lambda)?;
        Ok(self
            .classes
            .iter()
            .map(|c| Self::class_min(c, lambda).1)
            .sum())
    }

    /// `m(m(k−1)+1)·Σλ_i / k`.
    pub fn kempf_bound(&self, lambda: &[i64]) -> Q {
        let sum: i64 = lambda.iter().sum();
        let n = self.m as i64 * self.classes.len() as i64;
        ratio::frac(n * sum, self.k as i64)
    }

    pub fn kempf_check(&self, lambda: &[i64]) -> Result<KempfReport> {
        let min_weight = self.min_weight(lambda)?;
        let bound = self.kempf_bound(lambda);
        Ok(KempfReport {
            k: self.k,
            m: self.m,
            lambda: lambda.to_vec(),
            min_weight,
            pass: ratio::int(min_weight) <= bound,
            bound,
        })
    }
}

pub fn rnc_classes(k: usize, m: u32) -> Result<RncClassSystem> {
    RncClassSystem::new(k, m)
}

pub fn min_weight_rnc_basis(sys: &RncClassSystem, lambda: &[i64]) -> Result<(Vec<Monomial>, i64)> {
    sys.min_weight_basis(lambda)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KempfReport {
    pub k: usize,
    pub m: u32,
    pub lambda: Vec<i64>,
    pub min_weight: i64,
    #[serde(with = "ratio::serde_q")]
    pub bound: Q,
    pub pass: bool,
}

pub fn kempf_bound_check(k: usize, m: u32, lambda: &[i64]) -> Result<KempfReport> {
    RncClassSystem::new(k, m)?.kempf_check(lambda)
}
