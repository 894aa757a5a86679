//! A small dense two-phase simplex solver with Bland's rule, sufficient for
//! the relaxations built from envy constraints. Not a general-purpose LP
//! library: all variables are nonnegative and problems are minimizations.

use crate::error::{Error, Result};

/// Row sense of a constraint.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    /// `row >= rhs`
    Ge,
    /// `row == rhs`
    Eq,
}

/// `minimize c.x  subject to  A x (>=|==) b,  x >= 0`.
#[derive(Debug, Clone, Default)]
pub struct LinearProgram {
    pub objective: Vec<f64>,
    /// Sparse rows: (coefficients as (column, value), sense, rhs).
    pub rows: Vec<(Vec<(usize, f64)>, Sense, f64)>,
}

#[derive(Debug, Clone)]
pub struct LpSolution {
    pub value: f64,
    pub x: Vec<f64>,
}

pub const FEASIBILITY_TOL: f64 = 1e-9;

impl LinearProgram {
    pub fn new(num_vars: usize) -> Self {
        LinearProgram {
            objective: vec![0.0; num_vars],
            rows: Vec::new(),
        }
    }

    pub fn solve(&self) -> Result<LpSolution> {
        let n = self.objective.len();
        let num_rows = self.rows.len();
        let num_surplus = self
            .rows
            .iter()
            .filter(|(_, sense, _)| *sense == Sense::Ge)
            .count();
        // Columns: original | surplus | artificial, one artificial per row.
        let cols = n + num_surplus + num_rows;

        // Dense tableau rows, plus an objective row appended per phase.
        let mut a = vec![vec![0.0f64; cols]; num_rows];
        let mut b = vec![0.0f64; num_rows];
        let mut basis = vec![0usize; num_rows];
        let mut surplus_at = n;
        for (i, (coeffs, sense, rhs)) in self.rows.iter().enumerate() {
            for &(j, v) in coeffs {
                assert!(j < n, "coefficient column out of range");
                a[i][j] += v;
            }
            let mut rhs = *rhs;
            if *sense == Sense::Ge {
                a[i][surplus_at] = -1.0;
                surplus_at += 1;
            }
            // Normalize to a nonnegative right-hand side.
            if rhs < 0.0 {
                for v in a[i].iter_mut() {
                    *v = -*v;
                }
                rhs = -rhs;
            }
            b[i] = rhs;
            let art = n + num_surplus + i;
            a[i][art] = 1.0;
            basis[i] = art;
        }

        // Phase 1: minimize the sum of artificials.
        let mut phase1_cost = vec![0.0f64; cols];
        for j in n + num_surplus..cols {
            phase1_cost[j] = 1.0;
        }
        let value = simplex(&mut a, &mut b, &mut basis, &phase1_cost, cols)?;
        if value > 1e-7 {
            return Err(Error::Lp(format!(
                "phase 1 ended with infeasibility {value:.3e}"
            )));
        }
        // Pivot out any artificial still basic at zero; drop rows that have
        // no candidate pivot (they are redundant).
        let mut keep = vec![true; num_rows];
        for i in 0..num_rows {
            if basis[i] < n + num_surplus {
                continue;
            }
            let pivot = (0..n + num_surplus).find(|&j| a[i][j].abs() > 1e-9);
            match pivot {
                Some(j) => pivot_on(&mut a, &mut b, &mut basis, i, j),
                None => keep[i] = false,
            }
        }
        if keep.iter().any(|k| !k) {
            let mut a2 = Vec::new();
            let mut b2 = Vec::new();
            let mut basis2 = Vec::new();
            for i in 0..num_rows {
                if keep[i] {
                    a2.push(a[i].clone());
                    b2.push(b[i]);
                    basis2.push(basis[i]);
                }
            }
            a = a2;
            b = b2;
            basis = basis2;
        }

        // Phase 2: the real objective; artificial columns are forbidden by
        // giving them a cost no pivot can pay off -- simpler: zero their
        // columns out so they can never re-enter.
        for row in a.iter_mut() {
            for j in n + num_surplus..cols {
                row[j] = 0.0;
            }
        }
        let mut cost = vec![0.0f64; cols];
        cost[..n].copy_from_slice(&self.objective);
        let value = simplex(&mut a, &mut b, &mut basis, &cost, n + num_surplus)?;

        let mut x = vec![0.0f64; n];
        for (i, &var) in basis.iter().enumerate() {
            if var < n {
                x[var] = b[i];
            }
        }
        Ok(LpSolution { value, x })
    }

    /// Largest violation of any row or sign constraint by `x`.
    pub fn residual(&self, x: &[f64]) -> f64 {
        let mut worst = 0.0f64;
        for &v in x {
            worst = worst.max(-v);
        }
        for (coeffs, sense, rhs) in &self.rows {
            let lhs: f64 = coeffs.iter().map(|&(j, c)| c * x[j]).sum();
            let violation = match sense {
                Sense::Ge => rhs - lhs,
                Sense::Eq => (lhs - rhs).abs(),
            };
            worst = worst.max(violation);
        }
        worst
    }
}

/// Run simplex on the tableau, minimizing `cost`, allowing entering columns
/// only among `0..active_cols`. Uses Bland's rule throughout, so it cannot
/// cycle. Returns the objective value.
fn simplex(
    a: &mut [Vec<f64>],
    b: &mut [f64],
    basis: &mut [usize],
    cost: &[f64],
    active_cols: usize,
) -> Result<f64> {
    let rows = a.len();
    let max_iterations = 50_000 + 200 * (rows + active_cols);
    for _ in 0..max_iterations {
        // Reduced costs: c_j - c_B . B^-1 A_j, computed directly because the
        // tableau is kept in canonical form.
        let mut entering = None;
        for j in 0..active_cols {
            if basis.contains(&j) {
                continue;
            }
            let mut reduced = cost[j];
            for i in 0..rows {
                reduced -= cost[basis[i]] * a[i][j];
            }
            if reduced < -1e-9 {
                entering = Some(j);
                break; // Bland: smallest index wins.
            }
        }
        let Some(j) = entering else {
            let value = (0..rows).map(|i| cost[basis[i]] * b[i]).sum();
            return Ok(value);
        };
        // Ratio test; ties broken by the smallest basic variable (Bland).
        let mut leaving: Option<(usize, f64)> = None;
        for i in 0..rows {
            if a[i][j] > 1e-9 {
                let ratio = b[i] / a[i][j];
                match leaving {
                    None => leaving = Some((i, ratio)),
                    Some((li, lr)) => {
                        if ratio < lr - 1e-12
                            || ((ratio - lr).abs() <= 1e-12 && basis[i] < basis[li])
                        {
                            leaving = Some((i, ratio));
                        }
                    }
                }
            }
        }
        let Some((i, _)) = leaving else {
            return Err(Error::Lp("objective is unbounded".into()));
        };
        pivot_on(a, b, basis, i, j);
    }
    Err(Error::Lp("iteration limit exceeded".into()))
}

fn pivot_on(a: &mut [Vec<f64>], b: &mut [f64], basis: &mut [usize], row: usize, col: usize) {
    let pivot = a[row][col];
    debug_assert!(pivot.abs() > 1e-12);
    for v in a[row].iter_mut() {
        *v /= pivot;
    }
    b[row] /= pivot;
    for i in 0..a.len() {
        if i == row {
            continue;
        }
        let factor = a[i][col];
        if factor == 0.0 {
            continue;
        }
        for j in 0..a[i].len() {
            a[i][j] -= factor * a[row][j];
        }
        b[i] -= factor * b[row];
        if b[i].abs() < 1e-12 {
            b[i] = 0.0;
        }
    }
    basis[row] = col;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_assignment_lp() {
        // min x0 s.t. x0 >= y, y = 1  (y is column 1)
        let mut lp = LinearProgram::new(2);
        lp.objective[0] = 1.0;
        lp.rows
            .push((vec![(0, 1.0), (1, -1.0)], Sense::Ge, 0.0));
        lp.rows.push((vec![(1, 1.0)], Sense::Eq, 1.0));
        let sol = lp.solve().unwrap();
        assert!((sol.value - 1.0).abs() < 1e-9);
        assert!(lp.residual(&sol.x) <= FEASIBILITY_TOL);
    }

    #[test]
    fn fractional_optimum() {
        // min x0 + x1 s.t. x0 + x1 >= 1, x0 >= 0.25
        let mut lp = LinearProgram::new(2);
        lp.objective = vec![1.0, 1.0];
        lp.rows
            .push((vec![(0, 1.0), (1, 1.0)], Sense::Ge, 1.0));
        lp.rows.push((vec![(0, 1.0)], Sense::Ge, 0.25));
        let sol = lp.solve().unwrap();
        assert!((sol.value - 1.0).abs() < 1e-9);
        assert!(lp.residual(&sol.x) <= FEASIBILITY_TOL);
    }

    #[test]
    fn degenerate_rows_are_handled() {
        // Two identical equalities produce a redundant row.
        let mut lp = LinearProgram::new(2);
        lp.objective = vec![2.0, 1.0];
        lp.rows
            .push((vec![(0, 1.0), (1, 1.0)], Sense::Eq, 1.0));
        lp.rows
            .push((vec![(0, 1.0), (1, 1.0)], Sense::Eq, 1.0));
        let sol = lp.solve().unwrap();
        assert!((sol.value - 1.0).abs() < 1e-9);
        assert!((sol.x[1] - 1.0).abs() < 1e-9);
    }

    #[test]
    fn split_between_bounds() {
        // min x s.t. x >= a, x >= b, a + b = 1: optimum 0.5 at a = b = 0.5
        // is NOT forced; simplex may set a=1,b=0 giving x=... the optimum of
        // the LP is min over the max of the two lower bounds, attained where
        // they split evenly.
        let mut lp = LinearProgram::new(3);
        lp.objective = vec![1.0, 0.0, 0.0];
        lp.rows.push((vec![(0, 1.0), (1, -1.0)], Sense::Ge, 0.0));
        lp.rows.push((vec![(0, 1.0), (2, -1.0)], Sense::Ge, 0.0));
        lp.rows.push((vec![(1, 1.0), (2, 1.0)], Sense::Eq, 1.0));
        let sol = lp.solve().unwrap();
        assert!((sol.value - 0.5).abs() < 1e-9, "value {}", sol.value);
        assert!(lp.residual(&sol.x) <= FEASIBILITY_TOL);
    }
}
