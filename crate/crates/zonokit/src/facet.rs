//! Facet-normal enumeration for zonotopes and the closed-form halfspace
//! representations built on it: the zonotope itself, the intersection of two
//! translated copies, and the Minkowski difference of two zonotopes.

use nalgebra::{DMatrix, DVector};

use crate::combin::{binomial, Combinations};
use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::set::{HPolytope, Zonotope};

/// One facet normal of a zonotope together with the indices of the n-1
/// generators spanning that facet.
///
/// Invariants: the normal has unit Euclidean norm; indices are strictly
/// increasing and reference the source generator list.
#[derive(Clone, Debug, PartialEq)]
pub struct FacetRecord {
    pub normal: DVector<f64>,
    pub spanning_indices: Vec<usize>,
}

/// Counters for combinations that could not produce a usable normal.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct EnumerationDiagnostics {
    /// Combinations whose cross product was numerically zero (skipped).
    pub degenerate_combinations: usize,
    /// Pairs of records sharing a hyperplane direction. Expected to be zero in
    /// general position; duplicates are flagged, never merged.
    pub duplicate_normal_pairs: usize,
}

/// All '+' facet normals of a zonotope, one per (n-1)-subset of generators in
/// lexicographic order. The '-' normals are the negations and are implicit.
#[derive(Clone, Debug, PartialEq)]
pub struct FacetEnumeration {
    pub records: Vec<FacetRecord>,
    pub dim: usize,
    pub generator_count: usize,
    pub diagnostics: EnumerationDiagnostics,
}

impl FacetEnumeration {
    /// Number of enumerated facet directions (rows of C+).
    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// The '+' normals stacked as rows of a nu x n matrix.
    pub fn normal_matrix(&self) -> DMatrix<f64> {
        let nu = self.records.len();
        DMatrix::from_fn(nu, self.dim, |i, j| self.records[i].normal[j])
    }
}

/// Generalized cross product of the n-1 columns of `h` (n x (n-1)):
/// entry i is `(-1)^(i+1) det(h with row i removed)`. The result is orthogonal
/// to every column.
pub fn n_cross(h: &DMatrix<f64>) -> Result<DVector<f64>> {
    let n = h.nrows();
    if n < 2 {
        return Err(Error::InvalidDimension(n));
    }
    if h.ncols() != n - 1 {
        return Err(Error::DimensionMismatch {
            expected: n - 1,
            got: h.ncols(),
        });
    }
    let mut y = DVector::zeros(n);
    for i in 0..n {
        let minor = h.clone().remove_row(i);
        let det = minor.determinant();
        y[i] = if i % 2 == 0 { det } else { -det };
    }
    Ok(y)
}

/// Enumerate the facet normals of the zonotope spanned by `generators`.
///
/// Combinations are visited in lexicographic order of their index sets; the
/// record order follows. Combinations whose cross product norm falls below
/// the degeneracy threshold (relative to the product of the column norms) are
/// skipped and counted. Callers are expected to have run `merge_aligned`
/// first so no two generators are parallel.
pub fn enumerate_facets(
    generators: &[DVector<f64>],
    dim: usize,
    tol: &Tolerances,
) -> Result<FacetEnumeration> {
    if dim < 2 {
        return Err(Error::InvalidDimension(dim));
    }
    let p = generators.len();
    for g in generators {
        if g.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: g.len(),
            });
        }
    }
    if p < dim - 1 {
        return Err(Error::DegenerateZonotope(
            "fewer than n-1 generators; no facet can be spanned",
        ));
    }

    let norms: Vec<f64> = generators.iter().map(|g| g.norm()).collect();
    let mut records = Vec::with_capacity(binomial(p, dim - 1));
    let mut diagnostics = EnumerationDiagnostics::default();

    let mut h = DMatrix::zeros(dim, dim - 1);
    for subset in Combinations::new(p, dim - 1) {
        let mut scale = 1.0;
        for (col, &gi) in subset.iter().enumerate() {
            h.set_column(col, &generators[gi]);
            scale *= norms[gi];
        }
        let y = n_cross(&h)?;
        let norm = y.norm();
        if norm <= tol.degenerate_cross * scale {
            diagnostics.degenerate_combinations += 1;
            continue;
        }
        records.push(FacetRecord {
            normal: y / norm,
            spanning_indices: subset,
        });
    }

    if records.is_empty() {
        return Err(Error::DegenerateZonotope(
            "every generator combination is degenerate",
        ));
    }

    diagnostics.duplicate_normal_pairs = near_duplicate_pairs(&records);

    Ok(FacetEnumeration {
        records,
        dim,
        generator_count: p,
        diagnostics,
    })
}

/// Count record pairs whose hyperplane directions coincide within 1e-9 on
/// |cosine|. Sort-based adjacent scan: exact duplicates are always found,
/// near-duplicates almost always; this feeds a diagnostics counter only.
fn near_duplicate_pairs(records: &[FacetRecord]) -> usize {
    let mut keys: Vec<(Vec<u64>, usize)> = records
        .iter()
        .enumerate()
        .map(|(i, r)| {
            // canonical sign: first component of significant magnitude positive
            let flip = r
                .normal
                .iter()
                .find(|v| v.abs() > 1e-12)
                .map_or(1.0, |v| v.signum());
            let key = r
                .normal
                .iter()
                .map(|v| (v * flip).to_bits())
                .collect::<Vec<u64>>();
            (key, i)
        })
        .collect();
    keys.sort();
    let mut count = 0;
    for w in keys.windows(2) {
        let a = &records[w[0].1].normal;
        let b = &records[w[1].1].normal;
        if a.dot(b).abs() >= 1.0 - 1e-9 {
            count += 1;
        }
    }
    count
}

fn rank_of(m: &DMatrix<f64>) -> usize {
    if m.ncols() == 0 || m.nrows() == 0 {
        return 0;
    }
    let svd = m.clone().svd(false, false);
    let max_sv = svd.singular_values.max();
    if max_sv <= 0.0 {
        return 0;
    }
    svd.singular_values
        .iter()
        .filter(|s| **s > 1e-10 * max_sv)
        .count()
}

fn require_full_rank(generators: &[DVector<f64>], dim: usize) -> Result<()> {
    let p = generators.len();
    let g = DMatrix::from_fn(dim, p, |i, j| generators[j][i]);
    if rank_of(&g) < dim {
        return Err(Error::DegenerateZonotope(
            "generator matrix does not span the full space",
        ));
    }
    Ok(())
}

/// Offsets `sum_v |C_i . g_v|` per record over the given generator list.
fn offset_contributions(records: &[FacetRecord], generators: &[DVector<f64>]) -> DVector<f64> {
    let mut delta = DVector::zeros(records.len());
    for (i, r) in records.iter().enumerate() {
        delta[i] = generators.iter().map(|g| r.normal.dot(g).abs()).sum();
    }
    delta
}

/// Assemble `[C+; -C+] x <= [C+ c + delta - reduction; -C+ c + delta - reduction]`.
///
/// Row order contract: rows `0..nu` are the '+' halfspaces in lexicographic
/// subset order, rows `nu..2nu` the matching '-' halfspaces. Downstream code
/// relies on this pairing.
fn assemble(
    enumeration: &FacetEnumeration,
    center: &DVector<f64>,
    delta: &DVector<f64>,
    reduction: &DVector<f64>,
) -> Result<HPolytope> {
    let nu = enumeration.len();
    let n = enumeration.dim;
    let mut normals = DMatrix::zeros(2 * nu, n);
    let mut offsets = DVector::zeros(2 * nu);
    for (i, r) in enumeration.records.iter().enumerate() {
        let shift = r.normal.dot(center);
        for j in 0..n {
            normals[(i, j)] = r.normal[j];
            normals[(nu + i, j)] = -r.normal[j];
        }
        offsets[i] = shift + delta[i] - reduction[i];
        offsets[nu + i] = -shift + delta[i] - reduction[i];
    }
    HPolytope::new(normals, offsets)
}

/// Halfspace representation of a full-dimensional zonotope, along with the
/// facet enumeration that produced it. Every row is tight: the zonotope's
/// support in a row direction equals the row offset.
pub fn zonotope_hrep(z: &Zonotope) -> Result<(HPolytope, FacetEnumeration)> {
    zonotope_hrep_with(z, &Tolerances::default())
}

pub fn zonotope_hrep_with(
    z: &Zonotope,
    tol: &Tolerances,
) -> Result<(HPolytope, FacetEnumeration)> {
    require_full_rank(z.generators(), z.dim())?;
    let enumeration = enumerate_facets(z.generators(), z.dim(), tol)?;
    let delta = offset_contributions(&enumeration.records, z.generators());
    let zero = DVector::zeros(enumeration.len());
    let hp = assemble(&enumeration, z.center(), &delta, &zero)?;
    Ok((hp, enumeration))
}

/// Halfspace representation of `(c - h, G) ∩ (c + h, G)`: same normals as the
/// plain zonotope, offsets reduced by `|C+ h|` per row.
pub fn translated_intersection_hrep(
    center: &DVector<f64>,
    generators: &[DVector<f64>],
    shift: &DVector<f64>,
) -> Result<HPolytope> {
    translated_intersection_hrep_with(center, generators, shift, &Tolerances::default())
}

pub fn translated_intersection_hrep_with(
    center: &DVector<f64>,
    generators: &[DVector<f64>],
    shift: &DVector<f64>,
    tol: &Tolerances,
) -> Result<HPolytope> {
    let n = center.len();
    if shift.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: shift.len(),
        });
    }
    require_full_rank(generators, n)?;
    let enumeration = enumerate_facets(generators, n, tol)?;
    let delta = offset_contributions(&enumeration.records, generators);
    let reduction =
        DVector::from_iterator(enumeration.len(), enumeration.records.iter().map(|r| {
            r.normal.dot(shift).abs()
        }));
    assemble(&enumeration, center, &delta, &reduction)
}

/// Halfspace representation of the Minkowski difference `zm ⊖ zs`.
///
/// Normals come from the minuend's facet enumeration; the offsets subtract
/// the subtrahend's per-direction extent. The system may be infeasible (the
/// difference is empty) and may contain redundant rows. Callers are expected
/// to have run `merge_aligned` on `zm`.
pub fn minkdiff_hrep(zm: &Zonotope, zs: &Zonotope) -> Result<(HPolytope, FacetEnumeration)> {
    minkdiff_hrep_with(zm, zs, &Tolerances::default())
}

pub fn minkdiff_hrep_with(
    zm: &Zonotope,
    zs: &Zonotope,
    tol: &Tolerances,
) -> Result<(HPolytope, FacetEnumeration)> {
    if zs.dim() != zm.dim() {
        return Err(Error::DimensionMismatch {
            expected: zm.dim(),
            got: zs.dim(),
        });
    }
    require_full_rank(zm.generators(), zm.dim())?;
    let enumeration = enumerate_facets(zm.generators(), zm.dim(), tol)?;
    let delta = offset_contributions(&enumeration.records, zm.generators());
    let reduction = offset_contributions(&enumeration.records, zs.generators());
    let shifted_center = zm.center() - zs.center();
    let hp = assemble(&enumeration, &shifted_center, &delta, &reduction)?;
    Ok((hp, enumeration))
}
