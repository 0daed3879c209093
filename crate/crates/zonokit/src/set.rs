//! Core set types: zonotopes in generator representation, polytopes in
//! halfspace representation, and the 1-D interval specialization.
//!
//! All operations are pure functions over immutable values; the types are
//! `Send + Sync` and freely shareable across threads.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// A zonotope `{ c + sum_i beta_i g_i | beta_i in [-1, 1] }` given by a center
/// and an ordered list of generators.
///
/// Invariants:
/// - every generator has the same dimension as the center;
/// - generator storage order is preserved by all operations, so indices held
///   elsewhere (e.g. facet spanning lists) stay valid.
#[derive(Clone, Debug, PartialEq)]
pub struct Zonotope {
    center: DVector<f64>,
    generators: Vec<DVector<f64>>,
}

impl Zonotope {
    pub fn new(center: DVector<f64>, generators: Vec<DVector<f64>>) -> Result<Self> {
        let n = center.len();
        if n == 0 {
            return Err(Error::InvalidDimension(0));
        }
        if !center.iter().all(|v| v.is_finite()) {
            return Err(Error::NonFinite("center"));
        }
        for g in &generators {
            if g.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: g.len(),
                });
            }
            if !g.iter().all(|v| v.is_finite()) {
                return Err(Error::NonFinite("generator"));
            }
        }
        Ok(Self { center, generators })
    }

    /// Degenerate zonotope with no generators; acts as a translation vector
    /// under Minkowski addition.
    pub fn point(center: DVector<f64>) -> Result<Self> {
        Self::new(center, Vec::new())
    }

    /// Convenience constructor from plain slices.
    pub fn from_parts(center: &[f64], generators: &[&[f64]]) -> Result<Self> {
        Self::new(
            DVector::from_column_slice(center),
            generators
                .iter()
                .map(|g| DVector::from_column_slice(g))
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.center.len()
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn center(&self) -> &DVector<f64> {
        &self.center
    }

    pub fn generators(&self) -> &[DVector<f64>] {
        &self.generators
    }

    /// Generators stacked as columns of an n x p matrix.
    pub fn generator_matrix(&self) -> DMatrix<f64> {
        let n = self.dim();
        let p = self.num_generators();
        DMatrix::from_fn(n, p, |i, j| self.generators[j][i])
    }

    /// Order p/n: generator count relative to the dimension.
    pub fn order(&self) -> f64 {
        self.num_generators() as f64 / self.dim() as f64
    }

    pub fn translate(&self, t: &DVector<f64>) -> Result<Self> {
        if t.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: t.len(),
            });
        }
        Ok(Self {
            center: &self.center + t,
            generators: self.generators.clone(),
        })
    }

    /// Minkowski sum: centers add, generator lists concatenate (self's first).
    pub fn minkowski_sum(&self, other: &Zonotope) -> Result<Self> {
        if other.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: other.dim(),
            });
        }
        let mut generators = self.generators.clone();
        generators.extend(other.generators.iter().cloned());
        Ok(Self {
            center: &self.center + &other.center,
            generators,
        })
    }

    /// Image under the linear map `m` (q x n): center and generators map
    /// through `m` individually.
    pub fn linear_map(&self, m: &DMatrix<f64>) -> Result<Self> {
        if m.ncols() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: m.ncols(),
            });
        }
        if m.nrows() == 0 {
            return Err(Error::InvalidDimension(0));
        }
        Ok(Self {
            center: m * &self.center,
            generators: self.generators.iter().map(|g| m * g).collect(),
        })
    }

    /// Support function `max { <dir, x> : x in self }`, evaluated in closed
    /// form as `dir.c + sum_i |dir.g_i|`.
    pub fn support(&self, dir: &DVector<f64>) -> Result<f64> {
        if dir.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: dir.len(),
            });
        }
        if dir.iter().all(|v| *v == 0.0) {
            return Err(Error::ZeroDirection);
        }
        let mut s = dir.dot(&self.center);
        for g in &self.generators {
            s += dir.dot(g).abs();
        }
        Ok(s)
    }

    /// Drop zero generators and merge aligned ones.
    ///
    /// Generators with norm <= `tol` are removed. Each maximal group of
    /// generators parallel to a common representative (|cosine| >= 1 - tol)
    /// collapses to one generator along the first member's direction whose
    /// length is the sum of the member lengths; anti-parallel members add in
    /// length the same way. The represented set is unchanged.
    pub fn merge_aligned(&self, tol: f64) -> Self {
        let p = self.num_generators();
        let mut used = vec![false; p];
        let mut merged = Vec::with_capacity(p);
        for i in 0..p {
            if used[i] {
                continue;
            }
            used[i] = true;
            let ni = self.generators[i].norm();
            if ni <= tol {
                continue;
            }
            let mut total = ni;
            for j in i + 1..p {
                if used[j] {
                    continue;
                }
                let nj = self.generators[j].norm();
                if nj <= tol {
                    used[j] = true;
                    continue;
                }
                if self.generators[i].dot(&self.generators[j]).abs() >= (1.0 - tol) * ni * nj {
                    used[j] = true;
                    total += nj;
                }
            }
            merged.push(&self.generators[i] * (total / ni));
        }
        Self {
            center: self.center.clone(),
            generators: merged,
        }
    }

    /// Interval hull of a 1-D zonotope.
    pub fn to_interval(&self) -> Result<Interval> {
        if self.dim() != 1 {
            return Err(Error::DimensionMismatch {
                expected: 1,
                got: self.dim(),
            });
        }
        let radius: f64 = self.generators.iter().map(|g| g[0].abs()).sum();
        Ok(Interval::new(self.center[0] - radius, self.center[0] + radius))
    }
}

/// A polytope `{ x : C x <= d }` in halfspace representation.
///
/// Rows coming out of facet enumeration have unit Euclidean norm; arbitrary
/// stacked systems may not.
#[derive(Clone, Debug, PartialEq)]
pub struct HPolytope {
    normals: DMatrix<f64>,
    offsets: DVector<f64>,
}

impl HPolytope {
    pub fn new(normals: DMatrix<f64>, offsets: DVector<f64>) -> Result<Self> {
        if normals.nrows() != offsets.len() {
            return Err(Error::DimensionMismatch {
                expected: normals.nrows(),
                got: offsets.len(),
            });
        }
        if normals.ncols() == 0 {
            return Err(Error::InvalidDimension(0));
        }
        if !normals.iter().all(|v| v.is_finite()) {
            return Err(Error::NonFinite("normals"));
        }
        if !offsets.iter().all(|v| v.is_finite()) {
            return Err(Error::NonFinite("offsets"));
        }
        Ok(Self { normals, offsets })
    }

    pub fn dim(&self) -> usize {
        self.normals.ncols()
    }

    pub fn num_rows(&self) -> usize {
        self.normals.nrows()
    }

    pub fn normals(&self) -> &DMatrix<f64> {
        &self.normals
    }

    pub fn offsets(&self) -> &DVector<f64> {
        &self.offsets
    }

    /// The i-th halfspace normal as a column vector.
    pub fn normal_row(&self, i: usize) -> DVector<f64> {
        self.normals.row(i).transpose()
    }

    /// Translate the represented set by `t`: offsets become `d + C t`.
    pub fn translate(&self, t: &DVector<f64>) -> Result<Self> {
        if t.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: t.len(),
            });
        }
        Ok(Self {
            normals: self.normals.clone(),
            offsets: &self.offsets + &self.normals * t,
        })
    }

    /// Intersection by stacking constraint rows of several systems.
    pub fn stacked(parts: &[&HPolytope]) -> Result<Self> {
        let first = parts.first().ok_or(Error::InvalidDimension(0))?;
        let n = first.dim();
        let mut rows = 0;
        for p in parts {
            if p.dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: p.dim(),
                });
            }
            rows += p.num_rows();
        }
        let mut normals = DMatrix::zeros(rows, n);
        let mut offsets = DVector::zeros(rows);
        let mut at = 0;
        for p in parts {
            for i in 0..p.num_rows() {
                normals.row_mut(at).copy_from(&p.normals.row(i));
                offsets[at] = p.offsets[i];
                at += 1;
            }
        }
        Ok(Self { normals, offsets })
    }

    /// Restriction to a subset of rows (indices in the given order).
    pub fn select_rows(&self, indices: &[usize]) -> Self {
        let mut normals = DMatrix::zeros(indices.len(), self.dim());
        let mut offsets = DVector::zeros(indices.len());
        for (at, &i) in indices.iter().enumerate() {
            normals.row_mut(at).copy_from(&self.normals.row(i));
            offsets[at] = self.offsets[i];
        }
        Self { normals, offsets }
    }
}

/// Closed interval `[lower, upper]`; `lower > upper` encodes the empty set.
///
/// 1-D specialization used where facet enumeration degenerates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval {
    pub lower: f64,
    pub upper: f64,
}

impl Interval {
    pub fn new(lower: f64, upper: f64) -> Self {
        Self { lower, upper }
    }

    pub fn is_empty(&self) -> bool {
        self.lower > self.upper
    }

    pub fn width(&self) -> f64 {
        if self.is_empty() {
            0.0
        } else {
            self.upper - self.lower
        }
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lower + self.upper)
    }

    pub fn minkowski_sum(&self, other: &Interval) -> Interval {
        Interval::new(self.lower + other.lower, self.upper + other.upper)
    }

    /// Minkowski difference `{ x : x + other <= self }`; empty when `other`
    /// is wider than `self`.
    pub fn minkowski_diff(&self, other: &Interval) -> Interval {
        Interval::new(self.lower - other.lower, self.upper - other.upper)
    }
}
