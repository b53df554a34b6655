//! Laurent polynomials in one variable with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::ratio::Q;

/// Finite sum `Σ c_e s^e`, `e ∈ ℤ`. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Laurent {
    terms: BTreeMap<i64, Q>,
}

impl Laurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Q::one(), 0)
    }

    pub fn monomial(coeff: Q, exp: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        Self { terms }
    }

    /// `s^exp` with coefficient 1.
    pub fn power(exp: i64) -> Self {
        Self::monomial(Q::one(), exp)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> Q {
        self.terms.get(&exp).cloned().unwrap_or_else(Q::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Q)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn support(&self) -> impl Iterator<Item = i64> + '_ {
        self.terms.keys().copied()
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// The single term `(exp, coeff)` if the polynomial is a monomial.
    pub fn as_monomial(&self) -> Option<(i64, &Q)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(e, c)| (*e, c))
        } else {
            None
        }
    }

    /// `f(s) ↦ f(1/t)`: negates every exponent.
    pub fn invert_variable(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    fn accumulate(&mut self, exp: i64, c: Q) {
        let entry = self.terms.entry(exp).or_insert_with(Q::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    /// Text form `c*s^e + ...` in the given variable, lowest exponent first.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let a = c.abs();
            let coeff = if a.is_integer() { a.numer().to_string() } else { crate::ratio::to_string(&a) };
            match (coeff.as_str(), *e) {
                (_, 0) => out.push_str(&coeff),
                ("1", _) => out.push_str(&format!("{var}^{e}")),
                _ => out.push_str(&format!("{coeff}*{var}^{e}")),
            }
        }
        out
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("s"))
    }
}

impl Add for &Laurent {
    type Output = Laurent;
    fn add(self, rhs: &Laurent) -> Laurent {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.accumulate(*e, c.clone());
        }
        out
    }
}

impl Sub for &Laurent {
    type Output = Laurent;
    fn sub(self, rhs: &Laurent) -> Laurent {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.accumulate(*e, -c.clone());
        }
        out
    }
}

impl Neg for &Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        Laurent {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl Mul for &Laurent {
    type Output = Laurent;
    fn mul(self, rhs: &Laurent) -> Laurent {
        let mut out = Laurent::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.accumulate(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::{frac, int};

    #[test]
    fn arithmetic() {
        let a = &Laurent::monomial(int(2), -3) + &Laurent::power(1);
        let b = &Laurent::power(3) - &Laurent::one();
        let p = &a * &b;
        assert_eq!(p.coeff(0), int(2));
        assert_eq!(p.coeff(-3), int(-2));
        assert_eq!(p.coeff(4), int(1));
        assert_eq!(p.coeff(1), int(-1));
        assert_eq!(p.min_exponent(), Some(-3));
        assert_eq!(p.max_exponent(), Some(4));
        assert!((&p - &p).is_zero());
        assert_eq!(&a + &(-&a), Laurent::zero());
    }

    #[test]
    fn inversion_and_render() {
        let f = Laurent::monomial(frac(1, 2), -2);
        assert_eq!(f.invert_variable().as_monomial().unwrap().0, 2);
        assert_eq!(f.render("t"), "1/2*t^-2");
        assert_eq!(Laurent::zero().to_string(), "0");
        let g = &(&Laurent::one() - &Laurent::power(-4)) + &Laurent::monomial(int(3), 2);
        assert_eq!(g.render("s1"), "-s1^-4 + 1 + 3*s1^2");
        assert!(Laurent::monomial(int(0), 5).is_zero());
    }
}
