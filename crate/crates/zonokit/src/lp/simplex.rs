//! Dense two-phase simplex core.
//!
//! Solves `maximize c^T x subject to A x <= b` with free variables. Free
//! variables are split into nonnegative pairs, every row gets a slack, and
//! rows with negative right-hand side get a phase-1 artificial. Pivoting uses
//! Bland's anti-cycling rule with ties broken by lowest index, so identical
//! inputs always produce identical pivots and results.

use nalgebra::{DMatrix, DVector};

use crate::config::Tolerances;
use crate::error::{Error, Result};

/// Reduced costs below this are treated as non-improving.
const OPT_EPS: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum SimplexStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Clone, Debug)]
pub(crate) struct SimplexSolution {
    pub status: SimplexStatus,
    /// Optimizer in the original (free) variables; empty unless Optimal.
    pub x: Vec<f64>,
    pub value: f64,
}

struct Tableau {
    /// (m + 1) rows by (cols + 1) entries, cost row last, rhs column last.
    data: Vec<f64>,
    width: usize,
    m: usize,
    cols: usize,
    basis: Vec<usize>,
}

impl Tableau {
    #[inline]
    fn at(&self, r: usize, c: usize) -> f64 {
        self.data[r * self.width + c]
    }

    #[inline]
    fn set(&mut self, r: usize, c: usize, v: f64) {
        self.data[r * self.width + c] = v;
    }

    fn rhs(&self, r: usize) -> f64 {
        self.at(r, self.width - 1)
    }

    /// Rebuild the cost row for the given column costs, pricing out the
    /// current basis.
    fn price_out(&mut self, costs: &[f64]) {
        let cost_row = self.m;
        for c in 0..self.cols {
            self.set(cost_row, c, costs[c]);
        }
        self.set(cost_row, self.width - 1, 0.0);
        for r in 0..self.m {
            let cb = costs[self.basis[r]];
            if cb != 0.0 {
                for c in 0..self.width {
                    let v = self.at(cost_row, c) - cb * self.at(r, c);
                    self.set(cost_row, c, v);
                }
            }
        }
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let inv = 1.0 / self.at(row, col);
        for c in 0..self.width {
            let v = self.at(row, c) * inv;
            self.set(row, c, v);
        }
        self.set(row, col, 1.0);
        for r in 0..=self.m {
            if r == row {
                continue;
            }
            let factor = self.at(r, col);
            if factor != 0.0 {
                for c in 0..self.width {
                    let v = self.at(r, c) - factor * self.at(row, c);
                    self.set(r, c, v);
                }
                self.set(r, col, 0.0);
            }
        }
        self.basis[row] = col;
    }

    /// Run simplex iterations over the first `allowed` columns. Returns false
    /// when an improving column has no blocking row (unbounded).
    fn iterate(
        &mut self,
        allowed: usize,
        tol: &Tolerances,
        budget: &mut usize,
    ) -> Result<bool> {
        let cost_row = self.m;
        loop {
            // Bland: first improving column by index.
            let mut entering = None;
            for c in 0..allowed {
                if self.at(cost_row, c) > OPT_EPS {
                    entering = Some(c);
                    break;
                }
            }
            let Some(col) = entering else {
                return Ok(true);
            };

            // Lowest ratio; ties by lowest basis index.
            let mut leaving: Option<(usize, f64)> = None;
            for r in 0..self.m {
                let a = self.at(r, col);
                if a > tol.lp_pivot {
                    let ratio = self.rhs(r).max(0.0) / a;
                    let better = match leaving {
                        None => true,
                        Some((best_r, best_ratio)) => {
                            ratio < best_ratio
                                || (ratio == best_ratio && self.basis[r] < self.basis[best_r])
                        }
                    };
                    if better {
                        leaving = Some((r, ratio));
                    }
                }
            }
            let Some((row, _)) = leaving else {
                return Ok(false);
            };

            if *budget == 0 {
                return Err(Error::NumericalFailure("simplex iteration cap reached"));
            }
            *budget -= 1;
            self.pivot(row, col);
        }
    }
}

/// Maximize `objective . x` over `constraints * x <= bounds`, x free.
pub(crate) fn maximize(
    objective: &DVector<f64>,
    constraints: &DMatrix<f64>,
    bounds: &DVector<f64>,
    tol: &Tolerances,
) -> Result<SimplexSolution> {
    let m = constraints.nrows();
    let k = constraints.ncols();
    debug_assert_eq!(objective.len(), k);
    debug_assert_eq!(bounds.len(), m);

    let negated: Vec<bool> = (0..m).map(|i| bounds[i] < 0.0).collect();
    let art_count = negated.iter().filter(|n| **n).count();
    let art_start = 2 * k + m;
    let cols = art_start + art_count;
    let width = cols + 1;

    let mut t = Tableau {
        data: vec![0.0; (m + 1) * width],
        width,
        m,
        cols,
        basis: vec![0; m],
    };

    let mut art_index = 0;
    for i in 0..m {
        let sign = if negated[i] { -1.0 } else { 1.0 };
        for j in 0..k {
            let a = sign * constraints[(i, j)];
            t.set(i, j, a);
            t.set(i, k + j, -a);
        }
        t.set(i, 2 * k + i, sign);
        t.set(i, width - 1, sign * bounds[i]);
        if negated[i] {
            t.set(i, art_start + art_index, 1.0);
            t.basis[i] = art_start + art_index;
            art_index += 1;
        } else {
            t.basis[i] = 2 * k + i;
        }
    }

    let mut budget = 10_000 + 200 * (m + cols);

    // Phase 1: drive the artificial variables to zero.
    if art_count > 0 {
        let mut phase1 = vec![0.0; cols];
        for c in art_start..cols {
            phase1[c] = -1.0;
        }
        t.price_out(&phase1);
        let bounded = t.iterate(art_start, tol, &mut budget)?;
        debug_assert!(bounded, "phase-1 objective is bounded by construction");
        let infeasibility = t.rhs(m);
        if infeasibility > tol.lp_feasibility {
            return Ok(SimplexSolution {
                status: SimplexStatus::Infeasible,
                x: Vec::new(),
                value: 0.0,
            });
        }
        // Pivot leftover artificials out of the basis where possible;
        // all-zero rows are redundant constraints and stay put harmlessly.
        for r in 0..m {
            if t.basis[r] >= art_start {
                if let Some(c) = (0..art_start).find(|&c| t.at(r, c).abs() > tol.lp_pivot) {
                    if budget == 0 {
                        return Err(Error::NumericalFailure("simplex iteration cap reached"));
                    }
                    budget -= 1;
                    t.pivot(r, c);
                }
            }
        }
    }

    // Phase 2: the real objective over split variables.
    let mut phase2 = vec![0.0; cols];
    for j in 0..k {
        phase2[j] = objective[j];
        phase2[k + j] = -objective[j];
    }
    t.price_out(&phase2);
    let bounded = t.iterate(art_start, tol, &mut budget)?;
    if !bounded {
        return Ok(SimplexSolution {
            status: SimplexStatus::Unbounded,
            x: Vec::new(),
            value: 0.0,
        });
    }

    let mut split = vec![0.0; 2 * k];
    for r in 0..m {
        if t.basis[r] < 2 * k {
            split[t.basis[r]] = t.rhs(r);
        }
    }
    let x = (0..k).map(|j| split[j] - split[k + j]).collect();
    Ok(SimplexSolution {
        status: SimplexStatus::Optimal,
        x,
        value: -t.rhs(m),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn bounded_maximum() {
        // max x1 s.t. x1 <= 3, -x1 <= 0
        let a = DMatrix::from_row_slice(2, 1, &[1.0, -1.0]);
        let b = DVector::from_column_slice(&[3.0, 0.0]);
        let c = DVector::from_column_slice(&[1.0]);
        let s = maximize(&c, &a, &b, &tol()).unwrap();
        assert_eq!(s.status, SimplexStatus::Optimal);
        assert!((s.value - 3.0).abs() < 1e-12);
        assert!((s.x[0] - 3.0).abs() < 1e-12);
    }

    #[test]
    fn contradictory_bounds_are_infeasible() {
        // x1 <= -1 and -x1 <= -2 (x1 >= 2)
        let a = DMatrix::from_row_slice(2, 1, &[1.0, -1.0]);
        let b = DVector::from_column_slice(&[-1.0, -2.0]);
        let c = DVector::from_column_slice(&[1.0]);
        let s = maximize(&c, &a, &b, &tol()).unwrap();
        assert_eq!(s.status, SimplexStatus::Infeasible);
    }

    #[test]
    fn unbounded_direction() {
        // max x1 with only -x1 <= 0
        let a = DMatrix::from_row_slice(1, 1, &[-1.0]);
        let b = DVector::from_column_slice(&[0.0]);
        let c = DVector::from_column_slice(&[1.0]);
        let s = maximize(&c, &a, &b, &tol()).unwrap();
        assert_eq!(s.status, SimplexStatus::Unbounded);
    }

    #[test]
    fn two_dimensional_vertex() {
        // max x + y over the triangle x, y >= 0, x + y <= 2
        let a = DMatrix::from_row_slice(3, 2, &[-1.0, 0.0, 0.0, -1.0, 1.0, 1.0]);
        let b = DVector::from_column_slice(&[0.0, 0.0, 2.0]);
        let c = DVector::from_column_slice(&[1.0, 1.0]);
        let s = maximize(&c, &a, &b, &tol()).unwrap();
        assert_eq!(s.status, SimplexStatus::Optimal);
        assert!((s.value - 2.0).abs() < 1e-12);
    }

    #[test]
    fn negative_rhs_phase_one() {
        // max -x1 - x2 s.t. x1 >= 1, x2 >= 1 -> optimum -2 at (1, 1)
        let a = DMatrix::from_row_slice(2, 2, &[-1.0, 0.0, 0.0, -1.0]);
        let b = DVector::from_column_slice(&[-1.0, -1.0]);
        let c = DVector::from_column_slice(&[-1.0, -1.0]);
        let s = maximize(&c, &a, &b, &tol()).unwrap();
        assert_eq!(s.status, SimplexStatus::Optimal);
        assert!((s.value + 2.0).abs() < 1e-12);
        assert!((s.x[0] - 1.0).abs() < 1e-10 && (s.x[1] - 1.0).abs() < 1e-10);
    }

    #[test]
    fn determinism_repeated_solves() {
        let a = DMatrix::from_row_slice(
            4,
            2,
            &[1.0, 1.0, -1.0, 2.0, 0.5, -1.0, -1.0, -1.0],
        );
        let b = DVector::from_column_slice(&[4.0, 3.0, 1.0, -0.5]);
        let c = DVector::from_column_slice(&[1.0, 0.3]);
        let first = maximize(&c, &a, &b, &tol()).unwrap();
        for _ in 0..5 {
            let again = maximize(&c, &a, &b, &tol()).unwrap();
            assert_eq!(again.status, first.status);
            assert_eq!(again.value.to_bits(), first.value.to_bits());
            assert_eq!(again.x, first.x);
        }
    }
}
