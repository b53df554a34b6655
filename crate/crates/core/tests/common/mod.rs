//! Independent oracles shared by the integration tests. Nothing here calls
//! into the library except for type conversions at the edges.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// All exponent vectors of length `n` and total degree `m`.
pub fn exponent_vectors(n: usize, m: u32) -> Vec<Vec<u32>> {
    fn go(n: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == n - 1 {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for e in 0..=left {
            cur.push(e);
            go(n, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, m, &mut Vec::new(), &mut out);
    out
}

/// `(x exponents, y exponents)` split of a length-`2k` vector.
pub fn split(e: &[u32]) -> (&[u32], &[u32]) {
    e.split_at(e.len() / 2)
}

pub fn is_mixed(e: &[u32]) -> bool {
    let (a, b) = split(e);
    a.iter().any(|&v| v > 0) && b.iter().any(|&v| v > 0)
}

/// `Σ i·a_i − Σ i·b_i`.
pub fn weighted_degree(e: &[u32]) -> i64 {
    let (a, b) = split(e);
    let pa: i64 = a.iter().enumerate().map(|(i, &v)| (i as i64 + 1) * v as i64).sum();
    let pb: i64 = b.iter().enumerate().map(|(i, &v)| (i as i64 + 1) * v as i64).sum();
    pa - pb
}

pub fn weight(e: &[u32], rho: &[i64]) -> i64 {
    e.iter().zip(rho).map(|(&a, &r)| a as i64 * r).sum()
}

/// Exponents of `s_0, s_1, s_2` in the product section, `None` for a zero
/// component: `x_i ↦ (s_0^{i−1}, s_1^{−(i+1)}, 0)`, `y_i ↦ (0, s_1^{i−1}, s_2^{−(i+1)})`.
pub fn section_exponents(e: &[u32]) -> [Option<i64>; 3] {
    let (a, b) = split(e);
    let sum = |v: &[u32], f: &dyn Fn(i64) -> i64| -> i64 {
        v.iter().enumerate().map(|(i, &x)| f(i as i64 + 1) * x as i64).sum()
    };
    let has_a = a.iter().any(|&v| v > 0);
    let has_b = b.iter().any(|&v| v > 0);
    let c0 = (!has_b).then(|| sum(a, &|i| i - 1));
    let c1 = Some(sum(a, &|i| -(i + 1)) + sum(b, &|i| i - 1));
    let c2 = (!has_a).then(|| sum(b, &|i| -(i + 1)));
    [c0, c1, c2]
}

/// Mixed degree-`m` exponent vectors grouped by weighted degree.
pub fn chi_groups(k: usize, m: u32) -> BTreeMap<i64, Vec<Vec<u32>>> {
    let mut groups: BTreeMap<i64, Vec<Vec<u32>>> = BTreeMap::new();
    for e in exponent_vectors(2 * k, m) {
        if is_mixed(&e) {
            groups.entry(weighted_degree(&e)).or_default().push(e);
        }
    }
    groups
}

/// Number of ways to pick one element per group.
pub fn choice_count(groups: &[Vec<Vec<u32>>]) -> u128 {
    groups.iter().map(|g| g.len() as u128).product()
}

/// Minimum total weight over every one-per-group choice, by exhaustive
/// enumeration of the product of groups.
pub fn brute_force_min(groups: &[Vec<Vec<u32>>], rho: &[i64]) -> i64 {
    let mut idx = vec![0usize; groups.len()];
    let mut best = i64::MAX;
    loop {
        let total: i64 = groups.iter().zip(&idx).map(|(g, &i)| weight(&g[i], rho)).sum();
        best = best.min(total);
        let mut pos = 0;
        loop {
            if pos == groups.len() {
                return best;
            }
            idx[pos] += 1;
            if idx[pos] < groups[pos].len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// Solve a square rational system; `None` if singular.
pub fn solve(mut a: Vec<Vec<Q>>, mut b: Vec<Q>) -> Option<Vec<Q>> {
    let n = a.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        b.swap(col, piv);
        let inv = Q::one() / &a[col][col];
        for c in col..n {
            a[col][c] = &a[col][c] * &inv;
        }
        b[col] = &b[col] * &inv;
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in col..n {
                    let v = &a[col][c] * &f;
                    a[r][c] -= v;
                }
                let v = &b[col] * &f;
                b[r] -= v;
            }
        }
    }
    Some(b)
}

fn normalize(v: Vec<i64>) -> Option<Vec<i64>> {
    let g = v.iter().fold(0i64, |acc, &x| num_integer::gcd(acc, x));
    if g == 0 {
        return None;
    }
    let sign = if v.iter().find(|&&x| x != 0).copied().unwrap_or(0) < 0 { -1 } else { 1 };
    Some(v.into_iter().map(|x| sign * x / g).collect())
}

/// Exact maximum of the concave function `λ ↦ Σ_c min_{e ∈ class c} e·λ`
/// over `{Σλ = 0, |λ_i| ≤ 1}`, by enumerating every vertex of the
/// arrangement of within-class difference hyperplanes and box faces.
/// Returns the maximum and a maximizer.
pub fn concave_max_on_centered_box(n: usize, classes: &[Vec<Vec<u32>>]) -> (Q, Vec<Q>) {
    let mut normals: BTreeSet<Vec<i64>> = BTreeSet::new();
    for class in classes {
        for i in 0..class.len() {
            for j in i + 1..class.len() {
                let d: Vec<i64> = class[i]
                    .iter()
                    .zip(&class[j])
                    .map(|(&a, &b)| a as i64 - b as i64)
                    .collect();
                if let Some(d) = normalize(d) {
                    normals.insert(d);
                }
            }
        }
    }
    let mut planes: Vec<(Vec<Q>, Q)> = normals
        .into_iter()
        .map(|d| (d.into_iter().map(q).collect(), Q::zero()))
        .collect();
    for i in 0..n {
        for s in [1, -1] {
            let mut row = vec![Q::zero(); n];
            row[i] = Q::one();
            planes.push((row, q(s)));
        }
    }
    let eval = |lam: &[Q]| -> Q {
        classes
            .iter()
            .map(|class| {
                class
                    .iter()
                    .map(|e| e.iter().zip(lam).map(|(&a, l)| l * q(a as i64)).sum::<Q>())
                    .min()
                    .expect("nonempty class")
            })
            .sum()
    };
    let mut best: Option<(Q, Vec<Q>)> = None;
    let need = n - 1;
    let mut pick: Vec<usize> = (0..need).collect();
    if need > planes.len() {
        panic!("not enough hyperplanes");
    }
    loop {
        let mut a = vec![vec![Q::one(); n]];
        let mut b = vec![Q::zero()];
        for &p in &pick {
            a.push(planes[p].0.clone());
            b.push(planes[p].1.clone());
        }
        if let Some(lam) = solve(a, b) {
            if lam.iter().all(|l| l.abs() <= Q::one()) {
                let v = eval(&lam);
                if best.as_ref().is_none_or(|(bv, _)| v > *bv) {
                    best = Some((v, lam));
                }
            }
        }
        // next combination
        let mut i = need;
        loop {
            if i == 0 {
                return best.expect("the box has vertices");
            }
            i -= 1;
            if pick[i] < planes.len() - need + i {
                pick[i] += 1;
                for j in i + 1..need {
                    pick[j] = pick[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Pure-x degree-`m` exponent vectors (length `k`) grouped by `Σ(i−1)a_i`.
pub fn rnc_classes(k: usize, m: u32) -> Vec<Vec<Vec<u32>>> {
    let mut groups: BTreeMap<i64, Vec<Vec<u32>>> = BTreeMap::new();
    for e in exponent_vectors(k, m) {
        let j: i64 = e.iter().enumerate().map(|(i, &a)| i as i64 * a as i64).sum();
        groups.entry(j).or_default().push(e);
    }
    groups.into_values().collect()
}

/// Every degree-`m` exponent vector (length `2k`) grouped by pluricanonical
/// class: pure-x by `Σ(i−1)a_i`, pure-y by `Σ(i−1)b_i`, mixed by weighted degree.
pub fn full_classes(k: usize, m: u32) -> Vec<Vec<Vec<u32>>> {
    let mut groups: BTreeMap<(u8, i64), Vec<Vec<u32>>> = BTreeMap::new();
    for e in exponent_vectors(2 * k, m) {
        let (a, b) = split(&e);
        let shifted = |v: &[u32]| -> i64 { v.iter().enumerate().map(|(i, &x)| i as i64 * x as i64).sum() };
        let key = if b.iter().all(|&v| v == 0) {
            (0, shifted(a))
        } else if a.iter().all(|&v| v == 0) {
            (1, shifted(b))
        } else {
            (2, weighted_degree(&e))
        };
        groups.entry(key).or_default().push(e);
    }
    groups.into_values().collect()
}

/// Deterministic small PRNG (SplitMix64) for test-side sampling, kept apart
/// from the library's generator.
pub struct SplitMix(pub u64);

impl SplitMix {
    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        lo + (self.next_u64() % (hi - lo + 1) as u64) as i64
    }

    /// `n` entries in `[−b, b]` summing to zero (last entry repaired).
    pub fn trace_zero(&mut self, n: usize, b: i64) -> Vec<i64> {
        let mut v: Vec<i64> = (0..n - 1).map(|_| self.range(-b, b)).collect();
        v.push(-v.iter().sum::<i64>());
        v
    }
}
