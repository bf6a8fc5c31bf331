//! Scenario configuration.
//!
//! Noise variances at the relay, destination and eavesdropper are all
//! normalized to one, so the source power `p_s` is also the transmit SNR in
//! linear scale.

use thiserror::Error;

use crate::math;

/// Rejection reasons for a [`SystemParams`].
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParamError {
    #[error("n_r must be at least 1")]
    NoAntennas,
    #[error("{field} = {value} is out of range, expected {expected}")]
    OutOfRange {
        field: &'static str,
        value: f64,
        expected: &'static str,
    },
}

/// All scalars of one relay scenario.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParams {
    /// Relay antenna count `N_R`.
    pub n_r: usize,
    /// Source transmit power `P_S` (linear, noise-normalized).
    pub p_s: f64,
    /// Fraction of received power diverted to energy harvesting.
    pub theta: f64,
    /// Correlation between estimated and true relay→destination CSI.
    pub rho: f64,
    /// Energy conversion efficiency.
    pub eta: f64,
    /// Secrecy outage probability bound.
    pub epsilon: f64,
    /// Bandwidth `W` in Hz multiplying every `log2(1 + SNR)`; half the
    /// spectral bandwidth since a relayed transmission takes two slots.
    pub bandwidth_w: f64,
    pub alpha_sr: f64,
    pub alpha_rd: f64,
    pub alpha_re: f64,
    /// Slot length `T` in seconds. Only scales the harvested energy.
    pub slot_t: f64,
}

impl Default for SystemParams {
    /// `N_R = 100`, `W = 10 kHz`, `η = 0.8`, `θ = 0.1`, `ρ = 0.9`, unit path
    /// losses, SNR 10 dB and `ε = 0.05`.
    fn default() -> Self {
        Self {
            n_r: 100,
            p_s: 10.0,
            theta: 0.1,
            rho: 0.9,
            eta: 0.8,
            epsilon: 0.05,
            bandwidth_w: 1.0e4,
            alpha_sr: 1.0,
            alpha_rd: 1.0,
            alpha_re: 1.0,
            slot_t: 1.0,
        }
    }
}

fn check(
    field: &'static str,
    value: f64,
    ok: bool,
    expected: &'static str,
) -> Result<(), ParamError> {
    // NaN fails every comparison, so `ok` is false for it as well.
    if ok {
        Ok(())
    } else {
        Err(ParamError::OutOfRange {
            field,
            value,
            expected,
        })
    }
}

fn unit(field: &'static str, v: f64) -> Result<(), ParamError> {
    check(field, v, (0.0..=1.0).contains(&v), "[0, 1]")
}

fn positive(field: &'static str, v: f64) -> Result<(), ParamError> {
    check(field, v, v > 0.0 && v.is_finite(), "a finite value > 0")
}

impl SystemParams {
    /// Returns `self` unchanged if every field is in range.
    pub fn validate(self) -> Result<Self, ParamError> {
        if self.n_r == 0 {
            return Err(ParamError::NoAntennas);
        }
        positive("p_s", self.p_s)?;
        unit("theta", self.theta)?;
        unit("rho", self.rho)?;
        unit("eta", self.eta)?;
        check(
            "epsilon",
            self.epsilon,
            self.epsilon > 0.0 && self.epsilon < 1.0,
            "(0, 1)",
        )?;
        positive("bandwidth_w", self.bandwidth_w)?;
        positive("alpha_sr", self.alpha_sr)?;
        positive("alpha_rd", self.alpha_rd)?;
        positive("alpha_re", self.alpha_re)?;
        positive("slot_t", self.slot_t)?;
        Ok(self)
    }

    /// Sets `p_s` from a transmit SNR in dB.
    pub fn with_snr_db(mut self, snr_db: f64) -> Self {
        self.p_s = db_to_linear(snr_db);
        self
    }

    pub fn snr_db(&self) -> f64 {
        linear_to_db(self.p_s)
    }

    pub fn coeffs(&self) -> DerivedCoeffs {
        DerivedCoeffs::from_params(self)
    }

    /// `N_R` as a float, for use in the closed forms.
    pub(crate) fn n(&self) -> f64 {
        self.n_r as f64
    }
}

pub fn db_to_linear(db: f64) -> f64 {
    math::pow10(db / 10.0)
}

pub fn linear_to_db(linear: f64) -> f64 {
    10.0 * math::log10(linear)
}

/// Composite constants of the destination and eavesdropper SNR expressions.
///
/// `e_coef` is the eavesdropper-side analogue of `a`; the name keeps it apart
/// from the CSI error vector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedCoeffs {
    /// `η·P_S²·α_SR²·α_RD`
    pub a: f64,
    /// `η·P_S·α_SR·α_RD`
    pub b: f64,
    /// `P_S·α_SR`
    pub c: f64,
    /// `η·P_S²·α_SR²·α_RE`
    pub e_coef: f64,
    /// `η·P_S·α_SR·α_RE`
    pub f: f64,
}

impl DerivedCoeffs {
    pub fn from_params(p: &SystemParams) -> Self {
        let c = p.p_s * p.alpha_sr;
        let b = p.eta * c * p.alpha_rd;
        let f = p.eta * c * p.alpha_re;
        Self {
            a: p.eta * c * c * p.alpha_rd,
            b,
            c,
            e_coef: p.eta * c * c * p.alpha_re,
            f,
        }
    }
}
