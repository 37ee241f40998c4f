use serde::{Deserialize, Serialize};

/// Numerical tolerances used across validation, order checks, and audits.
///
/// Every comparison in the crate goes through one of these fields so that a
/// single `Tol` value pins the numerical behaviour of a run end to end.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Tol {
    /// Row-stochasticity slack: each row must sum to 1 within this.
    pub row: f64,
    /// Residual threshold for garbling feasibility (LP and least squares).
    pub lp: f64,
    /// Slack for order comparisons on curves, ratios, and quantiles.
    pub ord: f64,
    /// Slack for MLRP 2x2 minor checks.
    pub mlrp: f64,
    /// Base slack for audit inequalities (gradient error is added on top).
    pub audit: f64,
    /// Relative slack for cost-equality checks (split/permutation invariance).
    pub eq: f64,
}

impl Default for Tol {
    fn default() -> Self {
        Tol {
            row: 1e-9,
            lp: 1e-7,
            ord: 1e-9,
            mlrp: 1e-10,
            audit: 1e-7,
            eq: 1e-9,
        }
    }
}

impl Tol {
    /// Residuals in `(lp, 100 * lp]` are treated as numerically
    /// ill-conditioned rather than cleanly infeasible.
    pub fn lp_gray_zone(&self) -> f64 {
        100.0 * self.lp
    }

    /// Equality slack scaled by the magnitude of a cost value.
    pub fn eq_scaled(&self, value: f64) -> f64 {
        self.eq * (1.0 + value.abs())
    }
}

/// Strictness margin for activation conditions of reverse signal
/// replacements: the defining 2x2 determinant must exceed this.
pub const ACTIVATION_MARGIN: f64 = 1e-10;

/// Entries of sampled interior experiments are clipped to at least this.
pub const INTERIOR_CLIP: f64 = 1e-6;

/// A determinant driven to zero by a maximal reverse replacement step must
/// vanish within this.
pub const DET_VANISH: f64 = 1e-12;

/// Hard cap on states and signals.
pub const MAX_SIDE: usize = 64;
