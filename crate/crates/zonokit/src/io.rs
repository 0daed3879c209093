//! Document representations of the set types: plain structs with the field
//! layout fixed by the file formats (`center`/`generators` for zonotopes,
//! `C`/`d` for halfspace systems). Serialization through serde keeps full
//! f64 precision, so files round-trip without loss.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::diff::{DiffDiagnostics, DiffResult, DiffStatus};
use crate::error::{Error, Result};
use crate::set::{HPolytope, Zonotope};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZonotopeDoc {
    pub center: Vec<f64>,
    pub generators: Vec<Vec<f64>>,
}

impl From<&Zonotope> for ZonotopeDoc {
    fn from(z: &Zonotope) -> Self {
        Self {
            center: z.center().iter().copied().collect(),
            generators: z
                .generators()
                .iter()
                .map(|g| g.iter().copied().collect())
                .collect(),
        }
    }
}

impl TryFrom<&ZonotopeDoc> for Zonotope {
    type Error = Error;

    fn try_from(doc: &ZonotopeDoc) -> Result<Zonotope> {
        let n = doc.center.len();
        if n == 0 {
            return Err(Error::InvalidDocument("field `center` is empty".into()));
        }
        for (i, g) in doc.generators.iter().enumerate() {
            if g.len() != n {
                return Err(Error::InvalidDocument(format!(
                    "field `generators[{i}]` has length {}, expected {n}",
                    g.len()
                )));
            }
        }
        Zonotope::new(
            DVector::from_column_slice(&doc.center),
            doc.generators
                .iter()
                .map(|g| DVector::from_column_slice(g))
                .collect(),
        )
        .map_err(|e| Error::InvalidDocument(format!("zonotope document: {e}")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HPolytopeDoc {
    #[serde(rename = "C")]
    pub c: Vec<Vec<f64>>,
    pub d: Vec<f64>,
}

impl From<&HPolytope> for HPolytopeDoc {
    fn from(hp: &HPolytope) -> Self {
        Self {
            c: (0..hp.num_rows())
                .map(|i| hp.normals().row(i).iter().copied().collect())
                .collect(),
            d: hp.offsets().iter().copied().collect(),
        }
    }
}

impl TryFrom<&HPolytopeDoc> for HPolytope {
    type Error = Error;

    fn try_from(doc: &HPolytopeDoc) -> Result<HPolytope> {
        if doc.c.len() != doc.d.len() {
            return Err(Error::InvalidDocument(format!(
                "field `C` has {} rows but field `d` has {} entries",
                doc.c.len(),
                doc.d.len()
            )));
        }
        let n = doc
            .c
            .first()
            .map(Vec::len)
            .ok_or_else(|| Error::InvalidDocument("field `C` is empty".into()))?;
        for (i, row) in doc.c.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidDocument(format!(
                    "field `C[{i}]` has length {}, expected {n}",
                    row.len()
                )));
            }
        }
        let mut normals = DMatrix::zeros(doc.c.len(), n);
        for (i, row) in doc.c.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                normals[(i, j)] = *v;
            }
        }
        HPolytope::new(normals, DVector::from_column_slice(&doc.d))
            .map_err(|e| Error::InvalidDocument(format!("halfspace document: {e}")))
    }
}

/// Full outcome of a difference computation as written by the CLI.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiffResultDoc {
    pub status: DiffStatus,
    pub approx: Option<ZonotopeDoc>,
    pub exact_hrep: Option<HPolytopeDoc>,
    pub mu: Vec<f64>,
    pub removed_generator_indices: Vec<usize>,
    pub diagnostics: DiffDiagnostics,
}

impl From<&DiffResult> for DiffResultDoc {
    fn from(r: &DiffResult) -> Self {
        Self {
            status: r.status,
            approx: r.approx.as_ref().map(ZonotopeDoc::from),
            exact_hrep: r.exact.as_ref().map(|m| HPolytopeDoc::from(&m.kept)),
            mu: r.mu.clone(),
            removed_generator_indices: r.removed_indices.clone(),
            diagnostics: r.diagnostics,
        }
    }
}
