//! Linear-programming utilities: a self-contained dense solver plus the
//! polytope predicates built on it (emptiness, membership, and redundancy
//! elimination for minimal halfspace representations).

mod simplex;

use nalgebra::{DMatrix, DVector};

use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::set::HPolytope;
use simplex::{SimplexStatus, maximize};

/// `maximize objective . x` subject to `constraints * x <= bounds`, with
/// optional per-variable bounds (infinite entries mean unbounded).
#[derive(Clone, Debug, PartialEq)]
pub struct LpProblem {
    pub objective: DVector<f64>,
    pub constraints: DMatrix<f64>,
    pub bounds: DVector<f64>,
    pub var_bounds: Option<Vec<(f64, f64)>>,
}

impl LpProblem {
    pub fn new(
        objective: DVector<f64>,
        constraints: DMatrix<f64>,
        bounds: DVector<f64>,
    ) -> Result<Self> {
        if constraints.nrows() != bounds.len() {
            return Err(Error::DimensionMismatch {
                expected: constraints.nrows(),
                got: bounds.len(),
            });
        }
        if constraints.ncols() != objective.len() {
            return Err(Error::DimensionMismatch {
                expected: constraints.ncols(),
                got: objective.len(),
            });
        }
        if !objective.iter().all(|v| v.is_finite())
            || !constraints.iter().all(|v| v.is_finite())
            || !bounds.iter().all(|v| v.is_finite())
        {
            return Err(Error::NonFinite("lp coefficients"));
        }
        Ok(Self {
            objective,
            constraints,
            bounds,
            var_bounds: None,
        })
    }

    pub fn with_var_bounds(mut self, var_bounds: Vec<(f64, f64)>) -> Result<Self> {
        if var_bounds.len() != self.objective.len() {
            return Err(Error::DimensionMismatch {
                expected: self.objective.len(),
                got: var_bounds.len(),
            });
        }
        self.var_bounds = Some(var_bounds);
        Ok(self)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal { x: DVector<f64>, value: f64 },
    Infeasible,
    Unbounded,
}

pub fn solve_lp(problem: &LpProblem) -> Result<LpOutcome> {
    solve_lp_with(problem, &Tolerances::default())
}

pub fn solve_lp_with(problem: &LpProblem, tol: &Tolerances) -> Result<LpOutcome> {
    let k = problem.objective.len();
    // Fold finite variable bounds in as ordinary rows.
    let mut extra_rows: Vec<(usize, f64, f64)> = Vec::new();
    if let Some(vb) = &problem.var_bounds {
        for (j, (lo, hi)) in vb.iter().enumerate() {
            if hi.is_finite() {
                extra_rows.push((j, 1.0, *hi));
            }
            if lo.is_finite() {
                extra_rows.push((j, -1.0, -lo));
            }
        }
    }
    let m = problem.constraints.nrows() + extra_rows.len();
    let mut a = DMatrix::zeros(m, k);
    let mut b = DVector::zeros(m);
    a.view_mut((0, 0), (problem.constraints.nrows(), k))
        .copy_from(&problem.constraints);
    b.rows_mut(0, problem.bounds.len()).copy_from(&problem.bounds);
    for (at, (j, coeff, bound)) in extra_rows.into_iter().enumerate() {
        let r = problem.constraints.nrows() + at;
        a[(r, j)] = coeff;
        b[r] = bound;
    }

    let solution = maximize(&problem.objective, &a, &b, tol)?;
    Ok(match solution.status {
        SimplexStatus::Optimal => LpOutcome::Optimal {
            x: DVector::from_vec(solution.x),
            value: solution.value,
        },
        SimplexStatus::Infeasible => LpOutcome::Infeasible,
        SimplexStatus::Unbounded => LpOutcome::Unbounded,
    })
}

/// True iff `{ x : C x <= d }` has no point.
///
/// Fast path: when the rows pair up as `(i, i + q/2)` with opposite normals
/// (the facet-enumeration row contract), a pair with `d_i + d_{i+q/2} < -1e-9`
/// proves emptiness without an LP. Otherwise a phase-1 feasibility solve
/// decides.
pub fn is_empty(hp: &HPolytope) -> Result<bool> {
    is_empty_with(hp, &Tolerances::default())
}

pub fn is_empty_with(hp: &HPolytope, tol: &Tolerances) -> Result<bool> {
    let q = hp.num_rows();
    if q == 0 {
        return Ok(false);
    }
    if q % 2 == 0 {
        let half = q / 2;
        'pairs: for i in 0..half {
            for j in 0..hp.dim() {
                if (hp.normals()[(i, j)] + hp.normals()[(half + i, j)]).abs() > 1e-9 {
                    continue 'pairs;
                }
            }
            if hp.offsets()[i] + hp.offsets()[half + i] < -1e-9 {
                return Ok(true);
            }
        }
    }
    let problem = LpProblem::new(
        DVector::zeros(hp.dim()),
        hp.normals().clone(),
        hp.offsets().clone(),
    )?;
    Ok(matches!(solve_lp_with(&problem, tol)?, LpOutcome::Infeasible))
}

/// Result of redundancy elimination: the kept system plus the index
/// partition. Removing any kept row would change the feasible set; every
/// redundant row is implied by the kept ones.
#[derive(Clone, Debug, PartialEq)]
pub struct MinimalHrep {
    pub kept: HPolytope,
    pub kept_row_indices: Vec<usize>,
    pub redundant_row_indices: Vec<usize>,
}

/// Remove redundant rows from a nonempty system (callers check `is_empty`
/// first).
///
/// Rows are scanned in index order. Row `i` is tested by maximizing `C_i x`
/// over all other surviving rows with row `i` itself relaxed to `d_i + 1`
/// (which keeps the LP bounded); it is redundant iff the optimum stays within
/// the redundancy margin of `d_i`. Ties therefore keep the earlier row, making
/// the kept set deterministic.
pub fn minimal_hrep(hp: &HPolytope) -> Result<MinimalHrep> {
    minimal_hrep_with(hp, &Tolerances::default())
}

pub fn minimal_hrep_with(hp: &HPolytope, tol: &Tolerances) -> Result<MinimalHrep> {
    let q = hp.num_rows();
    let n = hp.dim();
    let mut surviving: Vec<bool> = vec![true; q];

    for i in 0..q {
        let active: Vec<usize> = (0..q).filter(|&j| j != i && surviving[j]).collect();
        let mut a = DMatrix::zeros(active.len() + 1, n);
        let mut b = DVector::zeros(active.len() + 1);
        for (at, &j) in active.iter().enumerate() {
            a.row_mut(at).copy_from(&hp.normals().row(j));
            b[at] = hp.offsets()[j];
        }
        a.row_mut(active.len()).copy_from(&hp.normals().row(i));
        b[active.len()] = hp.offsets()[i] + 1.0;

        let objective = hp.normal_row(i);
        let problem = LpProblem::new(objective, a, b)?;
        match solve_lp_with(&problem, tol)? {
            LpOutcome::Optimal { value, .. } => {
                if value <= hp.offsets()[i] + tol.redundancy {
                    surviving[i] = false;
                }
            }
            // The relaxed row bounds the objective, so this only occurs
            // numerically; keep the row rather than risking a drop.
            LpOutcome::Unbounded => {}
            LpOutcome::Infeasible => {
                return Err(Error::NumericalFailure(
                    "redundancy test on infeasible system",
                ));
            }
        }
    }

    let kept_row_indices: Vec<usize> = (0..q).filter(|&i| surviving[i]).collect();
    let redundant_row_indices: Vec<usize> = (0..q).filter(|&i| !surviving[i]).collect();
    Ok(MinimalHrep {
        kept: hp.select_rows(&kept_row_indices),
        kept_row_indices,
        redundant_row_indices,
    })
}

/// Membership test `C x <= d + 1e-9` component-wise.
pub fn contains_point(hp: &HPolytope, x: &DVector<f64>) -> Result<bool> {
    if x.len() != hp.dim() {
        return Err(Error::DimensionMismatch {
            expected: hp.dim(),
            got: x.len(),
        });
    }
    let lhs = hp.normals() * x;
    Ok((0..hp.num_rows()).all(|i| lhs[i] <= hp.offsets()[i] + 1e-9))
}
