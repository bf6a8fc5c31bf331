//! Power-splitting ratio that maximizes the secrecy outage capacity.
//!
//! The objective is not concave in `θ`, so the search scans a uniform grid
//! over `[0, 1]` first and only then polishes the best grid point with a
//! golden-section search confined to its two neighbouring cells.

use thiserror::Error;

use crate::capacity::{secrecy_outage_capacity, CapacityError};
use crate::params::SystemParams;

pub const DEFAULT_GRID_STEP: f64 = 1e-3;

const GOLDEN_TOL: f64 = 1e-12;
const GOLDEN_MAX_ITER: usize = 200;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SplitError {
    #[error("grid step {0} must be in (0, 0.01]")]
    GridStep(f64),
    #[error(transparent)]
    Capacity(#[from] CapacityError),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitResult {
    pub theta_star: f64,
    /// Secrecy outage capacity at `theta_star`, bit/s.
    pub c_soc_star: f64,
    /// Number of capacity evaluations spent.
    pub evaluations: usize,
}

/// Maximizes the secrecy outage capacity over `θ ∈ [0, 1]`.
///
/// `p.theta` is ignored. The grid is `{0, step, 2·step, …}` with `1` always
/// included; ties go to the smallest `θ`.
pub fn optimize_theta(
    p: &SystemParams,
    grid_step: f64,
    refine: bool,
) -> Result<SplitResult, SplitError> {
    if !(grid_step > 0.0 && grid_step <= 0.01) {
        return Err(SplitError::GridStep(grid_step));
    }
    let k = p.coeffs();
    let objective = |theta: f64| -> Result<f64, CapacityError> {
        let q = SystemParams { theta, ..*p };
        Ok(secrecy_outage_capacity(&q, &k)?.c_soc)
    };

    let cells = (1.0 / grid_step) as usize;
    let last = cells as f64 * grid_step;
    let grid = (0..=cells)
        .map(|i| i as f64 * grid_step)
        .chain((last < 1.0).then_some(1.0));
    let mut evaluations = 0;
    let mut best = (0.0, f64::NEG_INFINITY);
    for theta in grid {
        let v = objective(theta)?;
        evaluations += 1;
        if v > best.1 {
            best = (theta, v);
        }
    }

    if refine {
        let lo = (best.0 - grid_step).max(0.0);
        let hi = (best.0 + grid_step).min(1.0);
        let mut err = None;
        let (x, fx, n) = golden_section_max(
            |t| match objective(t) {
                Ok(v) => v,
                Err(e) => {
                    err = Some(e);
                    f64::NEG_INFINITY
                }
            },
            lo,
            hi,
        );
        if let Some(e) = err {
            return Err(e.into());
        }
        evaluations += n;
        if fx > best.1 {
            best = (x, fx);
        }
    }

    Ok(SplitResult {
        theta_star: best.0,
        c_soc_star: best.1,
        evaluations,
    })
}

/// Golden-section search for a maximum of `f` on `[lo, hi]`.
///
/// Returns `(x, f(x), evaluations)` for the best point seen.
fn golden_section_max<F: FnMut(f64) -> f64>(
    mut f: F,
    mut lo: f64,
    mut hi: f64,
) -> (f64, f64, usize) {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    let mut evals = 2;
    for _ in 0..GOLDEN_MAX_ITER {
        if hi - lo <= GOLDEN_TOL {
            break;
        }
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        }
        evals += 1;
    }
    if f1 >= f2 {
        (x1, f1, evals)
    } else {
        (x2, f2, evals)
    }
}
