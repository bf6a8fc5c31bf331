//! Channel-hardened closed forms.
//!
//! With many relay antennas `‖h_SR‖²/N_R → 1` and `‖ĥ_RD‖²/N_R → 1`, which
//! makes the legitimate capacity deterministic. The eavesdropper keeps one
//! random factor, `y = |h_REᴴ ĥ_RD/‖ĥ_RD‖|² ~ Exp(1)`, so
//!
//! ```text
//! γ_E = e·θ(1−θ)·N²·y / (f·θ·N·y + c(1−θ)N + 1)
//! ```
//!
//! and the secrecy outage capacity is the legitimate capacity minus the
//! rate of the `(1−ε)`-quantile of `γ_E`.

use thiserror::Error;

use crate::link::rate;
use crate::math;
use crate::params::{DerivedCoeffs, SystemParams};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CapacityError {
    #[error("epsilon = {0} must lie strictly inside (0, 1)")]
    Epsilon(f64),
    #[error("cdf argument x = {0} must be nonnegative")]
    NegativeArgument(f64),
    #[error("high-power limit needs theta strictly inside (0, 1), got {0}")]
    DegenerateTheta(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CapacityResult {
    /// Hardened legitimate capacity, bit/s.
    pub c_d: f64,
    /// Eavesdropper SNR exceeded with probability ε.
    pub gamma_e_threshold: f64,
    /// Secrecy outage capacity `[c_d − W·log2(1 + gamma_e_threshold)]⁺`, bit/s.
    pub c_soc: f64,
}

fn check_epsilon(epsilon: f64) -> Result<f64, CapacityError> {
    if epsilon > 0.0 && epsilon < 1.0 {
        Ok(math::ln(epsilon))
    } else {
        Err(CapacityError::Epsilon(epsilon))
    }
}

/// Legitimate capacity under channel hardening,
/// `W·log2(1 + aθ(1−θ)ρN³ / (bθρN² + c(1−θ)N + 1))`.
pub fn capacity_destination(p: &SystemParams, k: &DerivedCoeffs) -> f64 {
    let (n, th, rho) = (p.n(), p.theta, p.rho);
    let snr = k.a * th * (1.0 - th) * rho * n * n * n
        / (k.b * th * rho * n * n + k.c * (1.0 - th) * n + 1.0);
    rate(p.bandwidth_w, snr)
}

/// Cdf of the hardened eavesdropper SNR.
///
/// Finite support: `γ_E < e(1−θ)N/f` always, so the cdf reaches 1 there.
/// When `eθ(1−θ) = 0` the eavesdropper SNR is identically zero.
pub fn gamma_e_cdf(x: f64, p: &SystemParams, k: &DerivedCoeffs) -> Result<f64, CapacityError> {
    if x.is_nan() || x < 0.0 {
        return Err(CapacityError::NegativeArgument(x));
    }
    let (n, th) = (p.n(), p.theta);
    let scale = k.e_coef * th * (1.0 - th) * n * n;
    if scale <= 0.0 {
        return Ok(1.0);
    }
    let sup = k.e_coef * (1.0 - th) * n / k.f;
    if x >= sup {
        return Ok(1.0);
    }
    let y = (k.c * (1.0 - th) * n + 1.0) * x / (scale - k.f * th * n * x);
    Ok(-math::expm1(-y))
}

/// The `γ_E` value exceeded with probability exactly ε.
pub fn gamma_e_threshold(p: &SystemParams, k: &DerivedCoeffs) -> Result<f64, CapacityError> {
    let ln_eps = check_epsilon(p.epsilon)?;
    let (n, th) = (p.n(), p.theta);
    // ln ε < 0 makes numerator and denominator both nonpositive.
    let num = k.e_coef * th * (1.0 - th) * n * n * ln_eps;
    if num == 0.0 {
        return Ok(0.0);
    }
    let den = k.f * th * n * ln_eps - k.c * (1.0 - th) * n - 1.0;
    let x = num / den;
    debug_assert!(x >= 0.0, "eavesdropper threshold {x} negative");
    Ok(x)
}

/// Secrecy outage capacity at outage bound `p.epsilon`.
pub fn secrecy_outage_capacity(
    p: &SystemParams,
    k: &DerivedCoeffs,
) -> Result<CapacityResult, CapacityError> {
    let gamma_e_threshold = gamma_e_threshold(p, k)?;
    let c_d = capacity_destination(p, k);
    let c_soc = (c_d - rate(p.bandwidth_w, gamma_e_threshold)).max(0.0);
    Ok(CapacityResult {
        c_d,
        gamma_e_threshold,
        c_soc,
    })
}

/// High-power limit of [`secrecy_outage_capacity`], independent of `P_S`:
///
/// ```text
/// W·log2( ρ·α_RD·N·(ηθα_RE·lnε − (1−θ)) / ((ηα_RDρθN + (1−θ))·α_RE·lnε) )
/// ```
///
/// clipped at zero.
pub fn asymptotic_c_soc(p: &SystemParams) -> Result<f64, CapacityError> {
    let ln_eps = check_epsilon(p.epsilon)?;
    let th = p.theta;
    if !(th > 0.0 && th < 1.0) {
        return Err(CapacityError::DegenerateTheta(th));
    }
    let n = p.n();
    let num = p.rho * p.alpha_rd * n * (p.eta * th * p.alpha_re * ln_eps - (1.0 - th));
    let den = (p.eta * p.alpha_rd * p.rho * th * n + (1.0 - th)) * p.alpha_re * ln_eps;
    let ratio = num / den;
    if ratio <= 1.0 {
        return Ok(0.0);
    }
    Ok(p.bandwidth_w * math::log2(ratio))
}
