//! Exact feasibility for `A x = b, x ≥ 0` with small integer `A` and integer
//! `b`, by phase-I revised simplex.
//!
//! The basis inverse is kept fraction-free as `N / d` with `N = ±adj(B)` and
//! `d = |det B|`; every pivot updates `N` by an exact integer division, so no
//! gcd work is ever done on the hot path. An infeasible problem yields a
//! Farkas vector `y` with `yᵀA ≤ 0` and `yᵀb > 0`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ratio::Q;

/// Column as `(row, coefficient)` pairs, rows distinct.
pub type Column = Vec<(usize, i64)>;

#[derive(Clone, Debug)]
pub struct Problem {
    rows: usize,
    columns: Vec<Column>,
    rhs: Vec<BigInt>,
}

impl Problem {
    pub fn new(rows: usize, columns: Vec<Column>, rhs: Vec<BigInt>) -> Result<Self> {
        if rhs.len() != rows {
            return Err(Error::Internal(format!(
                "rhs has {} entries for {rows} rows",
                rhs.len()
            )));
        }
        for (j, col) in columns.iter().enumerate() {
            let mut seen = vec![false; rows];
            for &(r, _) in col {
                if r >= rows || std::mem::replace(&mut seen[r], true) {
                    return Err(Error::Internal(format!("column {j} has a bad row index {r}")));
                }
            }
        }
        Ok(Self { rows, columns, rhs })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn columns(&self) -> &[Column] {
        &self.columns
    }

    pub fn rhs(&self) -> &[BigInt] {
        &self.rhs
    }

    /// `Σ_j A_j x_j == b` with `x ≥ 0`.
    pub fn is_solution(&self, x: &[(usize, Q)]) -> bool {
        let mut lhs = vec![Q::zero(); self.rows];
        for (j, v) in x {
            if v.is_negative() || *j >= self.columns.len() {
                return false;
            }
            for &(r, a) in &self.columns[*j] {
                lhs[r] += v * Q::from_integer(BigInt::from(a));
            }
        }
        lhs.iter()
            .zip(&self.rhs)
            .all(|(l, b)| *l == Q::from_integer(b.clone()))
    }

    /// `yᵀA_j ≤ 0` for every column and `yᵀb > 0`.
    pub fn is_farkas(&self, y: &[BigInt]) -> bool {
        y.len() == self.rows
            && self.columns.iter().all(|c| !dot(y, c).is_positive())
            && y.iter().zip(&self.rhs).map(|(a, b)| a * b).sum::<BigInt>().is_positive()
    }
}

fn dot(y: &[BigInt], col: &Column) -> BigInt {
    col.iter().map(|&(r, a)| &y[r] * a).sum()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PivotRule {
    /// Bland's rule throughout.
    Bland,
    /// Most-negative reduced cost; switches to Bland for the rest of the run
    /// once the objective has not improved for `stall` consecutive pivots.
    DantzigThenBland { stall: usize },
}

impl Default for PivotRule {
    fn default() -> Self {
        PivotRule::DantzigThenBland { stall: 50 }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub pivots: usize,
    /// Pivot count at which Bland's rule took over, if it did.
    pub bland_from: Option<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Outcome {
    /// Nonzero entries of a solution, by column.
    Feasible(Vec<(usize, Q)>),
    /// Farkas vector.
    Infeasible(Vec<BigInt>),
}

struct Tableau<'a> {
    p: &'a Problem,
    /// Row-major `±adj(B)`.
    n: Vec<Vec<BigInt>>,
    /// `N b`.
    x: Vec<BigInt>,
    d: BigInt,
    /// Basic variable per row; ids `≥ columns.len()` are artificials.
    basis: Vec<usize>,
    in_basis: Vec<bool>,
}

impl<'a> Tableau<'a> {
    fn new(p: &'a Problem, rhs: Vec<BigInt>) -> Self {
        let r = p.rows;
        let n = (0..r)
            .map(|i| {
                let mut row = vec![BigInt::zero(); r];
                row[i] = BigInt::one();
                row
            })
            .collect();
        Self {
            p,
            n,
            x: rhs,
            d: BigInt::one(),
            basis: (0..r).map(|i| p.columns.len() + i).collect(),
            in_basis: vec![false; p.columns.len()],
        }
    }

    fn is_artificial(&self, var: usize) -> bool {
        var >= self.p.columns.len()
    }

    /// `d·y` for the phase-I duals: the sum of the `N` rows whose basic
    /// variable is artificial.
    fn duals(&self) -> Vec<BigInt> {
        let mut y = vec![BigInt::zero(); self.p.rows];
        for (i, &var) in self.basis.iter().enumerate() {
            if self.is_artificial(var) {
                for (yv, nv) in y.iter_mut().zip(&self.n[i]) {
                    *yv += nv;
                }
            }
        }
        y
    }

    /// `d·` phase-I objective.
    fn objective(&self) -> BigInt {
        self.basis
            .iter()
            .zip(&self.x)
            .filter(|(&v, _)| self.is_artificial(v))
            .map(|(_, x)| x.clone())
            .sum()
    }

    fn direction(&self, col: &Column) -> Vec<BigInt> {
        self.n
            .iter()
            .map(|row| col.iter().map(|&(r, a)| &row[r] * a).sum())
            .collect()
    }

    /// Row leaving the basis, or `None` if the direction is unbounded
    /// (impossible in phase I, whose objective is bounded below).
    fn ratio_test(&self, w: &[BigInt]) -> Option<usize> {
        let mut best: Option<usize> = None;
        for i in 0..w.len() {
            if !w[i].is_positive() {
                continue;
            }
            best = Some(match best {
                None => i,
                Some(b) => {
                    // x_i / w_i vs x_b / w_b, all denominators positive
                    let lhs = &self.x[i] * &w[b];
                    let rhs = &self.x[b] * &w[i];
                    if lhs < rhs || (lhs == rhs && self.basis[i] < self.basis[b]) {
                        i
                    } else {
                        b
                    }
                }
            });
        }
        best
    }

    fn pivot(&mut self, row: usize, var: usize, w: &[BigInt]) -> Result<()> {
        let wr = w[row].clone();
        let d = self.d.clone();
        let exact = |num: BigInt| -> Result<BigInt> {
            let (q, r) = num.div_rem(&d);
            if !r.is_zero() {
                return Err(Error::Internal("fraction-free pivot lost exactness".into()));
            }
            Ok(q)
        };
        let pivot_row = self.n[row].clone();
        let pivot_x = self.x[row].clone();
        for i in 0..self.n.len() {
            if i == row {
                continue;
            }
            let wi = &w[i];
            for c in 0..pivot_row.len() {
                let v = &self.n[i][c] * &wr - wi * &pivot_row[c];
                self.n[i][c] = exact(v)?;
            }
            let v = &self.x[i] * &wr - wi * &pivot_x;
            self.x[i] = exact(v)?;
        }
        self.d = wr;
        if self.d.is_negative() {
            self.d = -std::mem::take(&mut self.d);
            for row in &mut self.n {
                for v in row.iter_mut() {
                    *v = -std::mem::take(v);
                }
            }
            for v in &mut self.x {
                *v = -std::mem::take(v);
            }
        }
        let old = std::mem::replace(&mut self.basis[row], var);
        if !self.is_artificial(old) {
            self.in_basis[old] = false;
        }
        self.in_basis[var] = true;
        Ok(())
    }
}

/// Decide feasibility of `A x = b, x ≥ 0`.
pub fn solve(p: &Problem, rule: PivotRule) -> Result<(Outcome, SolveStats)> {
    // Make b ≥ 0 by flipping rows; flipped rows flip the Farkas entry back.
    let flip: Vec<bool> = p.rhs.iter().map(Signed::is_negative).collect();
    let flipped_columns: Vec<Column> = p
        .columns
        .iter()
        .map(|c| c.iter().map(|&(r, a)| (r, if flip[r] { -a } else { a })).collect())
        .collect();
    let rhs: Vec<BigInt> = p.rhs.iter().map(|b| b.abs()).collect();
    let q = Problem {
        rows: p.rows,
        columns: flipped_columns,
        rhs: rhs.clone(),
    };
    let mut t = Tableau::new(&q, rhs);
    let mut stats = SolveStats::default();
    let mut bland = matches!(rule, PivotRule::Bland);
    let stall_limit = match rule {
        PivotRule::DantzigThenBland { stall } => stall,
        PivotRule::Bland => 0,
    };
    let mut best_obj = Q::from_integer(t.objective());
    let mut stalled = 0usize;
    loop {
        let y = t.duals();
        // reduced cost of column j is −(yᵀA_j)/d; entering needs yᵀA_j > 0
        let mut enter: Option<(usize, BigInt)> = None;
        for (j, col) in q.columns.iter().enumerate() {
            if t.in_basis[j] {
                continue;
            }
            let s = dot(&y, col);
            if !s.is_positive() {
                continue;
            }
            if bland {
                enter = Some((j, s));
                break;
            }
            if enter.as_ref().is_none_or(|(_, b)| s > *b) {
                enter = Some((j, s));
            }
        }
        let Some((j, _)) = enter else {
            let obj = t.objective();
            let outcome = if obj.is_zero() {
                let mut x: Vec<(usize, Q)> = t
                    .basis
                    .iter()
                    .zip(&t.x)
                    .filter(|(&v, xv)| !t.is_artificial(v) && !xv.is_zero())
                    .map(|(&v, xv)| (v, Q::new(xv.clone(), t.d.clone())))
                    .collect();
                x.sort_by_key(|(v, _)| *v);
                if !p.is_solution(&x) {
                    return Err(Error::Internal("simplex solution fails Ax = b".into()));
                }
                Outcome::Feasible(x)
            } else {
                let y: Vec<BigInt> = y
                    .into_iter()
                    .zip(&flip)
                    .map(|(v, &f)| if f { -v } else { v })
                    .collect();
                if !p.is_farkas(&y) {
                    return Err(Error::Internal("phase-I duals are not a Farkas certificate".into()));
                }
                Outcome::Infeasible(y)
            };
            return Ok((outcome, stats));
        };
        let w = t.direction(&q.columns[j]);
        let row = t
            .ratio_test(&w)
            .ok_or_else(|| Error::Internal("unbounded phase-I direction".into()))?;
        t.pivot(row, j, &w)?;
        stats.pivots += 1;
        if !bland {
            let cur = Q::new(t.objective(), t.d.clone());
            if cur < best_obj {
                best_obj = cur;
                stalled = 0;
            } else {
                stalled += 1;
                if stalled >= stall_limit {
                    bland = true;
                    stats.bland_from = Some(stats.pivots);
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn feasible_system() {
        // x0 + x1 = 2, x1 + x2 = 3
        let p = Problem::new(2, vec![vec![(0, 1)], vec![(0, 1), (1, 1)], vec![(1, 1)]], ints(&[2, 3])).unwrap();
        for rule in [PivotRule::Bland, PivotRule::default()] {
            let (out, _) = solve(&p, rule).unwrap();
            let Outcome::Feasible(x) = out else { panic!("expected feasible") };
            assert!(p.is_solution(&x));
        }
    }

    #[test]
    fn infeasible_system_gives_farkas() {
        // x0 + x1 = 1, x0 + x1 = 2
        let p = Problem::new(2, vec![vec![(0, 1), (1, 1)], vec![(0, 1), (1, 1)]], ints(&[1, 2])).unwrap();
        let (out, _) = solve(&p, PivotRule::Bland).unwrap();
        let Outcome::Infeasible(y) = out else { panic!("expected infeasible") };
        assert!(p.is_farkas(&y));
    }

    #[test]
    fn negative_rhs_rows_are_flipped() {
        // −x0 = −3 is feasible; x0 = −1 is not
        let p = Problem::new(1, vec![vec![(0, -1)]], ints(&[-3])).unwrap();
        let (out, _) = solve(&p, PivotRule::default()).unwrap();
        assert_eq!(out, Outcome::Feasible(vec![(0, crate::ratio::int(3))]));
        let p = Problem::new(1, vec![vec![(0, 1)]], ints(&[-1])).unwrap();
        let (out, _) = solve(&p, PivotRule::default()).unwrap();
        let Outcome::Infeasible(y) = out else { panic!("expected infeasible") };
        assert!(p.is_farkas(&y));
    }

    #[test]
    fn malformed_columns_rejected() {
        assert!(Problem::new(1, vec![vec![(1, 1)]], ints(&[0])).is_err());
        assert!(Problem::new(1, vec![vec![(0, 1), (0, 2)]], ints(&[0])).is_err());
        assert!(Problem::new(2, vec![], ints(&[0])).is_err());
    }
}
