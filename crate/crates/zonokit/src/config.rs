/// Central numerical tolerances. Every threshold used by the facet
/// enumeration, LP solver, and contraction pipeline lives here so callers can
/// override them in one place (the CLI exposes `--tol-lp` / `--tol-align`).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    /// Constraint satisfaction slack accepted by the LP solver.
    pub lp_feasibility: f64,
    /// Entries below this are treated as zero when selecting pivots.
    pub lp_pivot: f64,
    /// Margin for declaring a halfspace redundant.
    pub redundancy: f64,
    /// Two generators count as parallel when |g_i . g_j| >= (1 - align) |g_i||g_j|;
    /// generators with norm <= align are dropped as zero.
    pub align: f64,
    /// A generator combination is degenerate when its cross product has norm
    /// below this fraction of the product of the column norms.
    pub degenerate_cross: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            lp_feasibility: 1e-8,
            lp_pivot: 1e-11,
            redundancy: 1e-7,
            align: 1e-9,
            degenerate_cross: 1e-10,
        }
    }
}
