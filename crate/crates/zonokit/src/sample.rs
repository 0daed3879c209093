//! Seeded random zonotope generation for the benchmark harness.
//!
//! Directions are uniform on the unit hypersphere (normalized Gaussian
//! vectors), lengths uniform in `[0, l_max]`. Every instance draws from its
//! own ChaCha substream keyed by `(seed, instance_index)`, so batches can be
//! generated concurrently and still reproduce bit-for-bit.

use nalgebra::DVector;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::set::Zonotope;

/// Identifier of the generator family, echoed in benchmark reports.
pub const RNG_DESCRIPTION: &str = "chacha8(seed, stream = instance index)";

/// Parameters of one benchmark scenario.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScenarioSpec {
    pub dim: usize,
    pub order_m: f64,
    pub order_s: f64,
    pub instances: usize,
    pub seed: u64,
}

impl ScenarioSpec {
    pub fn validate(&self) -> Result<()> {
        if self.dim < 2 {
            return Err(Error::InvalidScenario(format!(
                "dim must be at least 2, got {}",
                self.dim
            )));
        }
        if !(self.order_m.is_finite() && self.order_m > 0.0)
            || !(self.order_s.is_finite() && self.order_s > 0.0)
        {
            return Err(Error::InvalidScenario(format!(
                "orders must be positive, got order_m={}, order_s={}",
                self.order_m, self.order_s
            )));
        }
        if generator_count(self.dim, self.order_m) == 0 || generator_count(self.dim, self.order_s) == 0
        {
            return Err(Error::InvalidScenario(
                "order rounds to zero generators".to_string(),
            ));
        }
        Ok(())
    }

    /// Maximum minuend generator length, balancing minuend and subtrahend
    /// size across orders; the subtrahend maximum is fixed at 1.
    pub fn minuend_length_cap(&self) -> f64 {
        3.0 * self.order_s / self.order_m
    }
}

/// Round-half-up generator count for a given order.
pub fn generator_count(dim: usize, order: f64) -> usize {
    (dim as f64 * order + 0.5).floor() as usize
}

fn gauss_pair<R: Rng + ?Sized>(rng: &mut R) -> (f64, f64) {
    let u1: f64 = rng.gen();
    let u2: f64 = rng.gen();
    // 1 - u1 lies in (0, 1]: the log stays finite
    let r = (-2.0 * (1.0 - u1).ln()).sqrt();
    let t = std::f64::consts::TAU * u2;
    (r * t.cos(), r * t.sin())
}

/// Uniform direction on the unit hypersphere: normalize a vector of
/// independent standard normals, resampling the (measure-zero) near-zero draw.
pub fn random_unit_vector<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> DVector<f64> {
    assert!(dim >= 1, "dimension must be positive");
    loop {
        let mut v = DVector::zeros(dim);
        let mut i = 0;
        while i < dim {
            let (a, b) = gauss_pair(rng);
            v[i] = a;
            if i + 1 < dim {
                v[i + 1] = b;
            }
            i += 2;
        }
        let norm = v.norm();
        if norm > 1e-12 {
            return v / norm;
        }
    }
}

/// Random zonotope: zero center, `round(dim * order)` generators with uniform
/// directions and lengths uniform in `[0, l_max]`.
///
/// Draws are rejected (and redrawn) when they are zero or parallel to an
/// earlier generator at the alignment tolerance, so the result needs no
/// further merging.
pub fn random_zonotope<R: Rng + ?Sized>(
    dim: usize,
    order: f64,
    l_max: f64,
    rng: &mut R,
) -> Zonotope {
    assert!(dim >= 1 && l_max > 0.0, "invalid generation parameters");
    let p = generator_count(dim, order);
    assert!(p >= 1, "order rounds to zero generators");
    let align = Tolerances::default().align;
    let mut generators: Vec<DVector<f64>> = Vec::with_capacity(p);
    while generators.len() < p {
        let dir = random_unit_vector(dim, rng);
        let len: f64 = rng.gen::<f64>() * l_max;
        let g = dir * len;
        if g.norm() <= align {
            continue;
        }
        let parallel = generators.iter().any(|h| {
            let nh = h.norm();
            let ng = g.norm();
            h.dot(&g).abs() >= (1.0 - align) * nh * ng
        });
        if parallel {
            continue;
        }
        generators.push(g);
    }
    Zonotope::new(DVector::zeros(dim), generators).expect("generated zonotope is valid")
}

/// Deterministic minuend/subtrahend pair for one benchmark instance. The
/// subtrahend is drawn first with unit length cap, then the minuend with the
/// balanced cap, both from the instance's own substream.
pub fn make_scenario_pair(spec: &ScenarioSpec, instance_index: usize) -> (Zonotope, Zonotope) {
    let mut rng = instance_rng(spec.seed, instance_index);
    let zs = random_zonotope(spec.dim, spec.order_s, 1.0, &mut rng);
    let zm = random_zonotope(spec.dim, spec.order_m, spec.minuend_length_cap(), &mut rng);
    (zm, zs)
}

/// Substream RNG for one instance of a seeded batch.
pub fn instance_rng(seed: u64, instance_index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(instance_index as u64);
    rng
}
