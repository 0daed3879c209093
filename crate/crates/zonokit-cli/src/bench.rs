//! Randomized benchmark harness: per scenario, generate seeded instance
//! pairs, time the difference and the difference-plus-addition, and aggregate
//! order and emptiness statistics.
//!
//! Instances draw from independent substreams keyed by `(seed, index)` and
//! results are reduced in index order, so every non-timing statistic is
//! bit-reproducible for a fixed seed regardless of the `--jobs` level.

use std::time::Instant;

use serde::Serialize;

use zonokit::diff::minkdiff_with;
use zonokit::diff::minkdiff_recursive_with;
use zonokit::lp::is_empty_with;
use zonokit::oracle::{hpoly_support_with, Support};
use zonokit::sample::{instance_rng, make_scenario_pair, random_unit_vector, ScenarioSpec,
    RNG_DESCRIPTION};
use zonokit::{Error, Tolerances};

/// Aggregated statistics of one scenario run.
#[derive(Clone, Debug, Serialize)]
pub struct ScenarioReport {
    pub dim: usize,
    pub order_m: f64,
    pub order_s: f64,
    pub instances: usize,
    pub seed: u64,
    /// Mean seconds per instance for the difference alone; NaN with no data.
    pub mean_time_diff_s: f64,
    /// Mean seconds per instance for difference followed by addition.
    pub mean_time_diffsum_s: f64,
    /// Mean order of the nonempty results; absent when every result is empty.
    pub mean_order: Option<f64>,
    /// Fraction of (successful) instances with an empty difference.
    pub empty_fraction: f64,
    pub failures: usize,
    pub rng: String,
    pub tol_lp_feasibility: f64,
    pub tol_redundancy: f64,
    pub tol_align: f64,
    /// Largest support gap against the recursive reference path, when the
    /// oracle comparison is enabled.
    pub max_oracle_discrepancy: Option<f64>,
}

#[derive(Clone, Debug)]
struct InstanceOutcome {
    failed: bool,
    empty: bool,
    order: f64,
    t_diff: f64,
    t_diffsum: f64,
    discrepancy: f64,
}

fn run_instance(
    spec: &ScenarioSpec,
    index: usize,
    tol: &Tolerances,
    compare_oracle: bool,
) -> InstanceOutcome {
    let (zm, zs) = make_scenario_pair(spec, index);

    let start = Instant::now();
    let result = minkdiff_with(&zm, &zs, tol);
    let t_diff = start.elapsed().as_secs_f64();

    let result = match result {
        Ok(r) => r,
        Err(_) => {
            return InstanceOutcome {
                failed: true,
                empty: false,
                order: 0.0,
                t_diff,
                t_diffsum: t_diff,
                discrepancy: 0.0,
            };
        }
    };

    // addition cost on top of the difference, as used in set-propagation loops
    let t_diffsum = if let Some(approx) = &result.approx {
        let start = Instant::now();
        let _ = approx.minkowski_sum(&zs);
        t_diff + start.elapsed().as_secs_f64()
    } else {
        t_diff
    };

    let mut outcome = InstanceOutcome {
        failed: false,
        empty: result.is_empty(),
        order: result.approx_order().unwrap_or(0.0),
        t_diff,
        t_diffsum,
        discrepancy: 0.0,
    };

    if compare_oracle {
        match minkdiff_recursive_with(&zm, &zs, tol) {
            Ok(reference) => {
                let ref_empty = is_empty_with(&reference, tol).unwrap_or(true);
                if ref_empty != result.is_empty() {
                    outcome.failed = true;
                } else if let Some(exact) = &result.exact {
                    let mut dirs = instance_rng(spec.seed ^ 0x0D15C0DE, index);
                    for _ in 0..100 {
                        let d = random_unit_vector(spec.dim, &mut dirs);
                        let a = hpoly_support_with(&exact.kept, &d, tol);
                        let b = hpoly_support_with(&reference, &d, tol);
                        match (a, b) {
                            (Ok(Support::Finite(a)), Ok(Support::Finite(b))) => {
                                outcome.discrepancy = outcome.discrepancy.max((a - b).abs());
                            }
                            _ => outcome.failed = true,
                        }
                    }
                }
            }
            Err(_) => outcome.failed = true,
        }
    }

    outcome
}

/// Run one scenario to completion. `jobs` > 1 distributes instances over
/// threads; the report is identical (timings aside) at any level.
pub fn run_scenario(
    spec: &ScenarioSpec,
    tol: &Tolerances,
    jobs: usize,
    compare_oracle: bool,
) -> Result<ScenarioReport, Error> {
    spec.validate()?;
    if compare_oracle && spec.dim > 3 {
        return Err(Error::InvalidScenario(
            "oracle comparison is limited to dimensions 2 and 3".to_string(),
        ));
    }

    let mut results: Vec<Option<InstanceOutcome>> = vec![None; spec.instances];
    let jobs = jobs.max(1);
    if jobs == 1 || spec.instances <= 1 {
        for (i, slot) in results.iter_mut().enumerate() {
            *slot = Some(run_instance(spec, i, tol, compare_oracle));
        }
    } else {
        let chunk_size = spec.instances.div_ceil(jobs);
        std::thread::scope(|scope| {
            for (ci, chunk) in results.chunks_mut(chunk_size).enumerate() {
                let base = ci * chunk_size;
                scope.spawn(move || {
                    for (off, slot) in chunk.iter_mut().enumerate() {
                        *slot = Some(run_instance(spec, base + off, tol, compare_oracle));
                    }
                });
            }
        });
    }

    let mut failures = 0usize;
    let mut empties = 0usize;
    let mut nonempty = 0usize;
    let mut order_sum = 0.0;
    let mut t_diff_sum = 0.0;
    let mut t_diffsum_sum = 0.0;
    let mut discrepancy: f64 = 0.0;
    for outcome in results.iter().map(|o| o.as_ref().expect("instance ran")) {
        if outcome.failed {
            failures += 1;
            continue;
        }
        t_diff_sum += outcome.t_diff;
        t_diffsum_sum += outcome.t_diffsum;
        if outcome.empty {
            empties += 1;
        } else {
            nonempty += 1;
            order_sum += outcome.order;
        }
        discrepancy = discrepancy.max(outcome.discrepancy);
    }
    let successes = spec.instances - failures;

    Ok(ScenarioReport {
        dim: spec.dim,
        order_m: spec.order_m,
        order_s: spec.order_s,
        instances: spec.instances,
        seed: spec.seed,
        mean_time_diff_s: if successes > 0 {
            t_diff_sum / successes as f64
        } else {
            f64::NAN
        },
        mean_time_diffsum_s: if successes > 0 {
            t_diffsum_sum / successes as f64
        } else {
            f64::NAN
        },
        mean_order: (nonempty > 0).then(|| order_sum / nonempty as f64),
        empty_fraction: if successes > 0 {
            empties as f64 / successes as f64
        } else {
            0.0
        },
        failures,
        rng: RNG_DESCRIPTION.to_string(),
        tol_lp_feasibility: tol.lp_feasibility,
        tol_redundancy: tol.redundancy,
        tol_align: tol.align,
        max_oracle_discrepancy: compare_oracle.then_some(discrepancy),
    })
}

pub const CSV_HEADER: &str =
    "dim,order_m,order_s,instances,seed,mean_time_diff_s,mean_time_diffsum_s,mean_order,empty_frac";

fn four_significant(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.3e}")
    } else {
        "NaN".to_string()
    }
}

pub fn csv_row(r: &ScenarioReport) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{}",
        r.dim,
        r.order_m,
        r.order_s,
        r.instances,
        r.seed,
        four_significant(r.mean_time_diff_s),
        four_significant(r.mean_time_diffsum_s),
        r.mean_order.map_or("NaN".to_string(), |v| v.to_string()),
        r.empty_fraction,
    )
}
