//! Brute-force ground truth for small instances: sign-point enumeration,
//! the vertex-translation route to the Minkowski difference, and containment
//! checks. Deliberately exponential; the caps fail loudly.

use nalgebra::DVector;

use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::facet::zonotope_hrep_with;
use crate::lp::{solve_lp_with, LpOutcome, LpProblem};
use crate::set::{HPolytope, Zonotope};

/// Cap on generators for sign-point enumeration (2^p points).
pub const MAX_ENUMERATION_GENERATORS: usize = 20;
/// Cap on subtrahend generators for the vertex-translation stack.
pub const MAX_STACK_GENERATORS: usize = 12;

/// Points of a set, tagged with where they came from.
#[derive(Clone, Debug, PartialEq)]
pub struct VertexSet {
    pub points: Vec<DVector<f64>>,
    pub source: String,
}

/// All `2^p` sign assignments `c + sum s_i g_i`, `s_i in {-1, +1}`,
/// deduplicated at 1e-12. A superset of the vertex set.
pub fn zonotope_points(z: &Zonotope) -> Result<VertexSet> {
    let p = z.num_generators();
    if p > MAX_ENUMERATION_GENERATORS {
        return Err(Error::TooManyGenerators {
            count: p,
            cap: MAX_ENUMERATION_GENERATORS,
        });
    }
    let mut points = Vec::with_capacity(1usize << p);
    for mask in 0..(1u32 << p) {
        let mut x = z.center().clone();
        for (i, g) in z.generators().iter().enumerate() {
            if mask >> i & 1 == 1 {
                x += g;
            } else {
                x -= g;
            }
        }
        points.push(x);
    }
    // Sort-then-scan dedup; coincident sign points are bitwise equal in
    // practice, the tolerance mops up roundoff.
    points.sort_by(|a, b| {
        a.iter()
            .zip(b.iter())
            .find_map(|(x, y)| x.partial_cmp(y).filter(|o| o.is_ne()))
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    points.dedup_by(|a, b| a.iter().zip(b.iter()).all(|(x, y)| (*x - *y).abs() <= 1e-12));
    Ok(VertexSet {
        points,
        source: format!("sign points of {p}-generator zonotope"),
    })
}

/// The Minkowski difference as the stacked intersection of `zm` translated by
/// every sign point of `zs`. Exact (the sign points cover all vertices of the
/// subtrahend), but exponential in the subtrahend's generator count.
pub fn minkdiff_vertex_oracle(zm: &Zonotope, zs: &Zonotope) -> Result<HPolytope> {
    minkdiff_vertex_oracle_with(zm, zs, &Tolerances::default())
}

pub fn minkdiff_vertex_oracle_with(
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
    if zs.num_generators() > MAX_STACK_GENERATORS {
        return Err(Error::TooManyGenerators {
            count: zs.num_generators(),
            cap: MAX_STACK_GENERATORS,
        });
    }
    let (hp, _) = zonotope_hrep_with(zm, tol)?;
    let translates = zonotope_points(zs)?;
    let mut parts = Vec::with_capacity(translates.points.len());
    for v in &translates.points {
        parts.push(hp.translate(&(-v))?);
    }
    HPolytope::stacked(&parts.iter().collect::<Vec<_>>())
}

/// True iff the zonotope lies inside the polytope, via the closed-form
/// support values `C_i . c + sum |C_i . g| <= d_i + 1e-9`.
pub fn zonotope_in_hpoly(z: &Zonotope, hp: &HPolytope) -> Result<bool> {
    if z.dim() != hp.dim() {
        return Err(Error::DimensionMismatch {
            expected: hp.dim(),
            got: z.dim(),
        });
    }
    for i in 0..hp.num_rows() {
        let row = hp.normal_row(i);
        let mut s = row.dot(z.center());
        for g in z.generators() {
            s += row.dot(g).abs();
        }
        if s > hp.offsets()[i] + 1e-9 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Support value of an H-polytope in a direction; `Unbounded` is reported
/// distinctly, an empty polytope is an error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Support {
    Finite(f64),
    Unbounded,
}

pub fn hpoly_support(hp: &HPolytope, dir: &DVector<f64>) -> Result<Support> {
    hpoly_support_with(hp, dir, &Tolerances::default())
}

pub fn hpoly_support_with(hp: &HPolytope, dir: &DVector<f64>, tol: &Tolerances) -> Result<Support> {
    if dir.len() != hp.dim() {
        return Err(Error::DimensionMismatch {
            expected: hp.dim(),
            got: dir.len(),
        });
    }
    if dir.iter().all(|v| *v == 0.0) {
        return Err(Error::ZeroDirection);
    }
    let problem = LpProblem::new(dir.clone(), hp.normals().clone(), hp.offsets().clone())?;
    match solve_lp_with(&problem, tol)? {
        LpOutcome::Optimal { value, .. } => Ok(Support::Finite(value)),
        LpOutcome::Unbounded => Ok(Support::Unbounded),
        LpOutcome::Infeasible => Err(Error::EmptySet),
    }
}
