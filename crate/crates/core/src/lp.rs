//! A dense two-phase simplex for small linear programs in standard form
//! `max c·x  s.t.  A x = b, x >= 0`.
//!
//! Pivoting follows Bland's rule, so the method terminates on degenerate
//! problems. Intended for at most a few hundred variables.

use alloc::vec::Vec;

use crate::{PidError, Result};

/// Phase-one objective above which a problem is declared infeasible.
pub const FEASIBILITY_TOLERANCE: f64 = 1e-8;

const PIVOT_EPS: f64 = 1e-11;
const MAX_PIVOTS: usize = 200_000;

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal { x: Vec<f64>, value: f64 },
    Infeasible { residual: f64 },
    Unbounded,
}

impl LpOutcome {
    pub fn point(&self) -> Option<&[f64]> {
        match self {
            LpOutcome::Optimal { x, .. } => Some(x),
            _ => None,
        }
    }
}

struct Tableau {
    rows: Vec<Vec<f64>>,
    basis: Vec<usize>,
    cols: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> f64 {
        self.rows[i][self.cols]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let pv = self.rows[r][c];
        for v in self.rows[r].iter_mut() {
            *v /= pv;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                let f = row[c];
                if f != 0.0 {
                    for (v, &p) in row.iter_mut().zip(&pivot_row) {
                        *v -= f * p;
                    }
                    row[c] = 0.0;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Minimizes `cost · x` over the columns in `allowed`, starting from the
    /// current basic feasible solution. Returns false if unbounded.
    fn minimize(&mut self, cost: &[f64], allowed: usize) -> Result<bool> {
        for _ in 0..MAX_PIVOTS {
            let entering = (0..allowed).find(|&j| {
                let d = cost[j]
                    - self
                        .rows
                        .iter()
                        .zip(&self.basis)
                        .map(|(row, &b)| cost[b] * row[j])
                        .sum::<f64>();
                d < -1e-12
            });
            let Some(j) = entering else {
                return Ok(true);
            };
            let mut best: Option<(usize, f64)> = None;
            for i in 0..self.rows.len() {
                let a = self.rows[i][j];
                if a > PIVOT_EPS {
                    let ratio = self.rhs(i).max(0.0) / a;
                    best = match best {
                        None => Some((i, ratio)),
                        Some((k, r)) => {
                            if ratio < r - 1e-14
                                || (ratio <= r + 1e-14 && self.basis[i] < self.basis[k])
                            {
                                Some((i, ratio))
                            } else {
                                Some((k, r))
                            }
                        }
                    };
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, j),
                None => return Ok(false),
            }
        }
        Err(PidError::Solver(alloc::format!(
            "simplex exceeded {MAX_PIVOTS} pivots"
        )))
    }

    fn solution(&self, n: usize) -> Vec<f64> {
        let mut x = alloc::vec![0.0; n];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < n {
                x[b] = self.rhs(i).max(0.0);
            }
        }
        x
    }
}

/// Maximizes `c · x` subject to `a x = b`, `x >= 0`.
pub fn maximize(c: &[f64], a: &[Vec<f64>], b: &[f64]) -> Result<LpOutcome> {
    let n = c.len();
    let m = a.len();
    if b.len() != m || a.iter().any(|row| row.len() != n) {
        return Err(PidError::arg("linear program dimensions disagree"));
    }
    let cols = n + m;
    let mut rows = Vec::with_capacity(m);
    for (i, (row, &bi)) in a.iter().zip(b).enumerate() {
        let sign = if bi < 0.0 { -1.0 } else { 1.0 };
        let mut r = alloc::vec![0.0; cols + 1];
        for (v, &x) in r.iter_mut().zip(row) {
            *v = sign * x;
        }
        r[n + i] = 1.0;
        r[cols] = sign * bi;
        rows.push(r);
    }
    let mut t = Tableau {
        rows,
        basis: (n..cols).collect(),
        cols,
    };
    let mut phase1 = alloc::vec![0.0; cols];
    for v in phase1[n..].iter_mut() {
        *v = 1.0;
    }
    t.minimize(&phase1, cols)?;
    let residual: f64 = t
        .basis
        .iter()
        .enumerate()
        .filter(|&(_, &bv)| bv >= n)
        .map(|(i, _)| t.rhs(i).abs())
        .sum();
    if residual > FEASIBILITY_TOLERANCE {
        return Ok(LpOutcome::Infeasible { residual });
    }
    // drive remaining artificials out of the basis, dropping redundant rows
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= n {
            let col = (0..n)
                .filter(|&j| t.rows[i][j].abs() > 1e-9)
                .max_by(|&x, &y| t.rows[i][x].abs().total_cmp(&t.rows[i][y].abs()));
            match col {
                Some(j) => {
                    t.pivot(i, j);
                    i += 1;
                }
                None => {
                    t.rows.remove(i);
                    t.basis.remove(i);
                }
            }
        } else {
            i += 1;
        }
    }
    let mut cost = alloc::vec![0.0; cols];
    for (v, &ci) in cost.iter_mut().zip(c) {
        *v = -ci;
    }
    if !t.minimize(&cost, n)? {
        return Ok(LpOutcome::Unbounded);
    }
    let x = t.solution(n);
    let value = x.iter().zip(c).map(|(a, b)| a * b).sum();
    Ok(LpOutcome::Optimal { x, value })
}

/// A point of `{x >= 0 : a x = b}`, or `None` when the set is empty.
pub fn feasible_point(a: &[Vec<f64>], b: &[f64]) -> Result<Option<Vec<f64>>> {
    let n = a.first().map_or(0, Vec::len);
    match maximize(&alloc::vec![0.0; n], a, b)? {
        LpOutcome::Optimal { x, .. } => Ok(Some(x)),
        LpOutcome::Infeasible { .. } => Ok(None),
        LpOutcome::Unbounded => Err(PidError::Internal(
            "zero objective reported unbounded".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn optimum(out: LpOutcome) -> (Vec<f64>, f64) {
        match out {
            LpOutcome::Optimal { x, value } => (x, value),
            other => panic!("expected optimum, got {other:?}"),
        }
    }

    #[test]
    fn textbook_problem() {
        // max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18 (slacks s1..s3)
        let a = vec![
            vec![1.0, 0.0, 1.0, 0.0, 0.0],
            vec![0.0, 2.0, 0.0, 1.0, 0.0],
            vec![3.0, 2.0, 0.0, 0.0, 1.0],
        ];
        let (x, v) = optimum(maximize(&[3.0, 5.0, 0.0, 0.0, 0.0], &a, &[4.0, 12.0, 18.0]).unwrap());
        assert!((v - 36.0).abs() < 1e-9);
        assert!((x[0] - 2.0).abs() < 1e-9 && (x[1] - 6.0).abs() < 1e-9);
    }

    #[test]
    fn negative_rhs_and_redundant_rows() {
        // x + y = 1 stated three times, once negated
        let a = vec![vec![1.0, 1.0], vec![-1.0, -1.0], vec![2.0, 2.0]];
        let (x, v) = optimum(maximize(&[1.0, 2.0], &a, &[1.0, -1.0, 2.0]).unwrap());
        assert!((v - 2.0).abs() < 1e-12);
        assert!((x[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn infeasible_and_unbounded() {
        let a = vec![vec![1.0, 1.0], vec![1.0, 1.0]];
        assert!(matches!(
            maximize(&[0.0, 0.0], &a, &[1.0, 2.0]).unwrap(),
            LpOutcome::Infeasible { .. }
        ));
        let a = vec![vec![1.0, -1.0]];
        assert_eq!(
            maximize(&[1.0, 1.0], &a, &[0.0]).unwrap(),
            LpOutcome::Unbounded
        );
        assert!(feasible_point(&[vec![1.0]], &[-1.0]).unwrap().is_none());
    }

    #[test]
    fn degenerate_problem_terminates() {
        // a classic cycling example for the largest-coefficient rule
        let a = vec![
            vec![0.5, -5.5, -2.5, 9.0, 1.0, 0.0, 0.0],
            vec![0.5, -1.5, -0.5, 1.0, 0.0, 1.0, 0.0],
            vec![1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0],
        ];
        let c = [10.0, -57.0, -9.0, -24.0, 0.0, 0.0, 0.0];
        let (_, v) = optimum(maximize(&c, &a, &[0.0, 0.0, 1.0]).unwrap());
        assert!((v - 1.0).abs() < 1e-9);
    }

    #[test]
    fn dimension_mismatch_is_an_argument_error() {
        assert!(maximize(&[1.0], &[vec![1.0, 2.0]], &[1.0]).is_err());
    }
}
