//! The Minkowski-difference pipeline.
//!
//! `minkdiff` produces both the exact result as a minimal halfspace system
//! and an approximation back in generator representation: facet enumeration
//! of the minuend gives the halfspace system of the difference, LP redundancy
//! elimination prunes it, generators whose facets all became redundant are
//! removed, and the remaining generators are contracted by per-generator
//! stretching factors fitted to the kept halfspace offsets. The approximation
//! is exact in the plane; in higher dimensions the difference need not be a
//! zonotope at all.
//!
//! `minkdiff_recursive` is the independent reference path via pairwise
//! intersections of translates, one subtrahend generator at a time.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::combin::binomial;
use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::facet::{minkdiff_hrep_with, zonotope_hrep_with, FacetEnumeration, FacetRecord};
use crate::lp::{is_empty_with, minimal_hrep_with, MinimalHrep};
use crate::set::{HPolytope, Zonotope};

/// Stretching factors this close to zero (or below) drop their generator.
const MU_ZERO: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DiffStatus {
    Nonempty,
    Empty,
}

/// Counters and flags accumulated along the pipeline.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct DiffDiagnostics {
    /// Generator count of the minuend/subtrahend after `merge_aligned`.
    pub merged_minuend_generators: usize,
    pub merged_subtrahend_generators: usize,
    /// Skipped degenerate generator combinations during facet enumeration.
    pub degenerate_combinations: usize,
    /// Facet-normal pairs coinciding within tolerance (flagged, not merged).
    pub duplicate_normal_pairs: usize,
    /// Some opposite halfspace pair is tight (`d+ + d- = 0` within 1e-9): the
    /// difference has empty interior.
    pub flat: bool,
    /// Entries dropped because the first solve made them negative.
    pub mu_clamped_low: usize,
    /// Entries above one clamped down to one.
    pub mu_clamped_high: usize,
    /// Entries at numerical zero removed together with their generator.
    pub mu_dropped_zero: usize,
    /// A second solve ran after dropping negative entries.
    pub mu_resolved: bool,
    /// The stretching system was rank-deficient; ridge least squares was used.
    pub mu_singular_fallback: bool,
    /// Max-norm residual of the stretching system at the reported factors.
    pub mu_residual: f64,
}

/// Outcome of a Minkowski difference.
///
/// Nonempty results carry the exact minimal halfspace representation and the
/// generator-representation approximation; every reported stretching factor
/// lies in (0, 1] and pairs with the corresponding approx generator.
/// Generator indices refer to the minuend after `merge_aligned`.
#[derive(Clone, Debug, PartialEq)]
pub struct DiffResult {
    pub status: DiffStatus,
    pub exact: Option<MinimalHrep>,
    pub approx: Option<Zonotope>,
    pub mu: Vec<f64>,
    pub removed_indices: Vec<usize>,
    pub diagnostics: DiffDiagnostics,
}

impl DiffResult {
    pub fn is_empty(&self) -> bool {
        self.status == DiffStatus::Empty
    }

    pub fn approx_order(&self) -> Option<f64> {
        self.approx.as_ref().map(Zonotope::order)
    }

    fn empty(diagnostics: DiffDiagnostics) -> Self {
        Self {
            status: DiffStatus::Empty,
            exact: None,
            approx: None,
            mu: Vec::new(),
            removed_indices: Vec::new(),
            diagnostics,
        }
    }
}

/// Generator-removal rule: a minuend generator is no longer needed exactly
/// when every facet it spans is redundant.
///
/// Each redundant facet record (meaning: both of its signed halfspaces were
/// eliminated) contributes 2 to the counter of each spanning generator;
/// generator `i` is removable iff its counter reaches `2 C(p-1, n-2)`, the
/// total number of signed facets through it.
pub fn removable_generators(
    enumeration: &FacetEnumeration,
    redundant_records: &[usize],
) -> Result<Vec<usize>> {
    let p = enumeration.generator_count;
    let n = enumeration.dim;
    let mut counter = vec![0usize; p];
    for &k in redundant_records {
        let record = enumeration
            .records
            .get(k)
            .ok_or(Error::InconsistentEnumeration {
                index: k,
                generator_count: enumeration.records.len(),
            })?;
        for &i in &record.spanning_indices {
            if i >= p {
                return Err(Error::InconsistentEnumeration {
                    index: i,
                    generator_count: p,
                });
            }
            counter[i] += 2;
        }
    }
    let threshold = 2 * binomial(p - 1, n - 2);
    Ok((0..p).filter(|&i| counter[i] == threshold).collect())
}

/// Result of fitting stretching factors to the kept halfspace offsets.
#[derive(Clone, Debug, PartialEq)]
pub struct Contraction {
    /// One factor in (0, 1] per approx generator.
    pub mu: Vec<f64>,
    /// Indices (into the merged minuend) of the generators kept in `approx`.
    pub kept_generator_indices: Vec<usize>,
    pub approx: Zonotope,
    pub clamped_low: usize,
    pub clamped_high: usize,
    pub dropped_zero: usize,
    pub resolved: bool,
    pub singular_fallback: bool,
    pub residual: f64,
}

fn solve_stretch_system(
    m: &DMatrix<f64>,
    rhs: &DVector<f64>,
) -> (DVector<f64>, bool) {
    if m.nrows() == m.ncols() {
        if let Some(solution) = m.clone().lu().solve(rhs) {
            if solution.iter().all(|v| v.is_finite()) {
                return (solution, false);
            }
        }
    }
    // Rectangular or singular: ridge-regularized normal equations.
    let mut gram = m.transpose() * m;
    for i in 0..gram.nrows() {
        gram[(i, i)] += 1e-12;
    }
    let b = m.transpose() * rhs;
    match gram.clone().cholesky() {
        Some(chol) => (chol.solve(&b), m.nrows() == m.ncols()),
        None => {
            let svd = gram.svd(true, true);
            let solution = svd.solve(&b, 1e-14).unwrap_or_else(|_| DVector::zeros(b.len()));
            (solution, true)
        }
    }
}

/// Fit stretching factors so the scaled surviving generators reproduce the
/// kept halfspace offsets of the difference, then clamp to [0, 1] and drop
/// zero entries along with their generators.
///
/// The system is solved exactly when square, by ridge least squares when
/// rectangular; entries turning negative trigger one drop-and-resolve pass.
pub fn contract_generators(
    zm: &Zonotope,
    zs: &Zonotope,
    kept_facets: &[FacetRecord],
    surviving_generators: &[usize],
) -> Result<Contraction> {
    let center = zm.center() - zs.center();
    let nu = kept_facets.len();

    let rhs = DVector::from_iterator(
        nu,
        kept_facets.iter().map(|f| {
            let extent: f64 = zm
                .generators()
                .iter()
                .map(|g| f.normal.dot(g).abs())
                .sum();
            let reduction: f64 = zs
                .generators()
                .iter()
                .map(|g| f.normal.dot(g).abs())
                .sum();
            extent - reduction
        }),
    );

    let build_matrix = |active: &[usize]| -> DMatrix<f64> {
        DMatrix::from_fn(nu, active.len(), |k, i| {
            kept_facets[k].normal.dot(&zm.generators()[active[i]]).abs()
        })
    };

    let mut active: Vec<usize> = surviving_generators.to_vec();
    let mut clamped_low = 0;
    let mut resolved = false;
    let mut singular_fallback = false;

    let mut mu = if active.is_empty() || nu == 0 {
        DVector::zeros(active.len())
    } else {
        let (first, fallback) = solve_stretch_system(&build_matrix(&active), &rhs);
        singular_fallback |= fallback;
        let negatives: Vec<usize> = (0..active.len())
            .filter(|&i| first[i] < -MU_ZERO)
            .collect();
        if negatives.is_empty() {
            first
        } else {
            clamped_low = negatives.len();
            resolved = true;
            active = active
                .iter()
                .enumerate()
                .filter(|(i, _)| !negatives.contains(i))
                .map(|(_, &g)| g)
                .collect();
            if active.is_empty() {
                DVector::zeros(0)
            } else {
                let (second, fallback) = solve_stretch_system(&build_matrix(&active), &rhs);
                singular_fallback |= fallback;
                second
            }
        }
    };

    let mut clamped_high = 0;
    for v in mu.iter_mut() {
        if *v > 1.0 {
            // only count meaningful violations, not roundoff above 1
            if *v > 1.0 + 1e-12 {
                clamped_high += 1;
            }
            *v = 1.0;
        }
    }

    let mut kept_generator_indices = Vec::with_capacity(active.len());
    let mut final_mu = Vec::with_capacity(active.len());
    let mut dropped_zero = 0;
    for (i, &g) in active.iter().enumerate() {
        if mu[i] <= MU_ZERO {
            dropped_zero += 1;
        } else {
            kept_generator_indices.push(g);
            final_mu.push(mu[i]);
        }
    }

    let generators: Vec<DVector<f64>> = kept_generator_indices
        .iter()
        .zip(&final_mu)
        .map(|(&g, &f)| &zm.generators()[g] * f)
        .collect();
    let approx = Zonotope::new(center, generators)?;

    let residual = if nu == 0 {
        0.0
    } else {
        let m_final = build_matrix(&kept_generator_indices);
        let r = m_final * DVector::from_column_slice(&final_mu) - &rhs;
        r.iter().fold(0.0_f64, |acc, v| acc.max(v.abs()))
    };

    Ok(Contraction {
        mu: final_mu,
        kept_generator_indices,
        approx,
        clamped_low,
        clamped_high,
        dropped_zero,
        resolved,
        singular_fallback,
        residual,
    })
}

/// Full difference pipeline: align generators, build the halfspace system of
/// the difference, short-circuit on emptiness, prune redundancy, remove
/// generators whose facets all vanished, and contract the rest.
pub fn minkdiff(zm: &Zonotope, zs: &Zonotope) -> Result<DiffResult> {
    minkdiff_with(zm, zs, &Tolerances::default())
}

pub fn minkdiff_with(zm: &Zonotope, zs: &Zonotope, tol: &Tolerances) -> Result<DiffResult> {
    if zs.dim() != zm.dim() {
        return Err(Error::DimensionMismatch {
            expected: zm.dim(),
            got: zs.dim(),
        });
    }
    if zm.dim() == 1 {
        return interval_diff(zm, zs, tol);
    }

    let zm = zm.merge_aligned(tol.align);
    let zs = zs.merge_aligned(tol.align);
    let (hp, enumeration) = minkdiff_hrep_with(&zm, &zs, tol)?;
    let nu = enumeration.len();

    let mut diagnostics = DiffDiagnostics {
        merged_minuend_generators: zm.num_generators(),
        merged_subtrahend_generators: zs.num_generators(),
        degenerate_combinations: enumeration.diagnostics.degenerate_combinations,
        duplicate_normal_pairs: enumeration.diagnostics.duplicate_normal_pairs,
        ..DiffDiagnostics::default()
    };
    for i in 0..nu {
        if (hp.offsets()[i] + hp.offsets()[nu + i]).abs() <= 1e-9 {
            diagnostics.flat = true;
        }
    }

    if is_empty_with(&hp, tol)? {
        return Ok(DiffResult::empty(diagnostics));
    }

    let minimal = minimal_hrep_with(&hp, tol)?;
    let mut row_redundant = vec![false; 2 * nu];
    for &i in &minimal.redundant_row_indices {
        row_redundant[i] = true;
    }
    // a facet counts as redundant only when both signed halfspaces are
    let redundant_records: Vec<usize> = (0..nu)
        .filter(|&k| row_redundant[k] && row_redundant[nu + k])
        .collect();

    let removed_indices = removable_generators(&enumeration, &redundant_records)?;
    let mut is_removed = vec![false; zm.num_generators()];
    for &i in &removed_indices {
        is_removed[i] = true;
    }
    let surviving: Vec<usize> = (0..zm.num_generators()).filter(|&i| !is_removed[i]).collect();

    let mut record_redundant = vec![false; nu];
    for &k in &redundant_records {
        record_redundant[k] = true;
    }
    let kept_facets: Vec<FacetRecord> = enumeration
        .records
        .iter()
        .enumerate()
        .filter(|(k, _)| !record_redundant[*k])
        .map(|(_, r)| r.clone())
        .collect();

    let contraction = contract_generators(&zm, &zs, &kept_facets, &surviving)?;
    diagnostics.mu_clamped_low = contraction.clamped_low;
    diagnostics.mu_clamped_high = contraction.clamped_high;
    diagnostics.mu_dropped_zero = contraction.dropped_zero;
    diagnostics.mu_resolved = contraction.resolved;
    diagnostics.mu_singular_fallback = contraction.singular_fallback;
    diagnostics.mu_residual = contraction.residual;

    Ok(DiffResult {
        status: DiffStatus::Nonempty,
        exact: Some(minimal),
        approx: Some(contraction.approx),
        mu: contraction.mu,
        removed_indices,
        diagnostics,
    })
}

fn interval_diff(zm: &Zonotope, zs: &Zonotope, tol: &Tolerances) -> Result<DiffResult> {
    let zm = zm.merge_aligned(tol.align);
    let zs = zs.merge_aligned(tol.align);
    let im = zm.to_interval()?;
    let is = zs.to_interval()?;
    let d = im.minkowski_diff(&is);

    let mut diagnostics = DiffDiagnostics {
        merged_minuend_generators: zm.num_generators(),
        merged_subtrahend_generators: zs.num_generators(),
        ..DiffDiagnostics::default()
    };

    if d.is_empty() {
        return Ok(DiffResult::empty(diagnostics));
    }
    diagnostics.flat = d.width() == 0.0;

    let hp = HPolytope::new(
        DMatrix::from_row_slice(2, 1, &[1.0, -1.0]),
        DVector::from_column_slice(&[d.upper, -d.lower]),
    )?;
    let exact = MinimalHrep {
        kept: hp,
        kept_row_indices: vec![0, 1],
        redundant_row_indices: Vec::new(),
    };

    let center = DVector::from_column_slice(&[d.midpoint()]);
    let half = 0.5 * d.width();
    let (approx, mu) = if half > MU_ZERO {
        let radius = zm.generators()[0][0].abs();
        (
            Zonotope::new(center, vec![DVector::from_column_slice(&[half.min(radius)])])?,
            vec![(half / radius).min(1.0)],
        )
    } else {
        if zm.num_generators() > 0 {
            diagnostics.mu_dropped_zero = zm.num_generators();
        }
        (Zonotope::point(center)?, Vec::new())
    };

    Ok(DiffResult {
        status: DiffStatus::Nonempty,
        exact: Some(exact),
        approx: Some(approx),
        mu,
        removed_indices: Vec::new(),
        diagnostics,
    })
}

/// Reference path: intersect translates one subtrahend generator at a time,
/// pruning redundancy after every step. Returns the final halfspace system;
/// when the difference is empty the returned (stacked) system is infeasible.
pub fn minkdiff_recursive(zm: &Zonotope, zs: &Zonotope) -> Result<HPolytope> {
    minkdiff_recursive_with(zm, zs, &Tolerances::default())
}

pub fn minkdiff_recursive_with(
    zm: &Zonotope,
    zs: &Zonotope,
    tol: &Tolerances,
) -> Result<HPolytope> {
    if zs.dim() != zm.dim() {
        return Err(Error::DimensionMismatch {
            expected: zm.dim(),
            got: zs.dim(),
        });
    }
    if zm.dim() == 1 {
        let d = zm
            .merge_aligned(tol.align)
            .to_interval()?
            .minkowski_diff(&zs.merge_aligned(tol.align).to_interval()?);
        return HPolytope::new(
            DMatrix::from_row_slice(2, 1, &[1.0, -1.0]),
            DVector::from_column_slice(&[d.upper, -d.lower]),
        );
    }

    let zm = zm.merge_aligned(tol.align);
    let zs = zs.merge_aligned(tol.align);
    let (initial, _) = zonotope_hrep_with(&zm, tol)?;
    let mut current = initial.translate(&(-zs.center()))?;
    for g in zs.generators() {
        let plus = current.translate(g)?;
        let minus = current.translate(&(-g))?;
        let stacked = HPolytope::stacked(&[&plus, &minus])?;
        if is_empty_with(&stacked, tol)? {
            return Ok(stacked);
        }
        current = minimal_hrep_with(&stacked, tol)?.kept;
    }
    Ok(current)
}
