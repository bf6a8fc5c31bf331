//! Brute-force estimates used to check the closed forms.
//!
//! Trial `i` always draws from stream `i` of the run seed, and results are
//! collected in trial order, so every estimate is identical for any rayon
//! pool size.

use rayon::prelude::*;
use relay_secrecy::channel::{draw, trial_rng, ChannelRealization};
use relay_secrecy::{
    capacity_destination, evaluate_link, gamma_eavesdropper, CapacityError, DerivedCoeffs,
    LinkSample, ParamError, SystemParams,
};
use thiserror::Error;

pub const MIN_OUTAGE_TRIALS: usize = 1_000;
pub const MIN_QUANTILE_TRIALS: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum McError {
    #[error(transparent)]
    Params(#[from] ParamError),
    #[error(transparent)]
    Capacity(#[from] CapacityError),
    #[error("need at least {needed} trials, got {got}")]
    TooFewTrials { needed: usize, got: usize },
    #[error("rate must be nonnegative, got {0}")]
    NegativeRate(f64),
    #[error("cdf grid must be sorted ascending")]
    UnsortedGrid,
}

/// Empirical outage probability with a 3σ binomial half-width.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OutageEstimate {
    pub p_out: f64,
    pub outages: usize,
    pub trials: usize,
    /// `3·√(p_out(1 − p_out)/trials)`
    pub half_width: f64,
    /// Draws with a zero CSI estimate (SNRs forced to zero).
    pub degenerate: usize,
}

impl OutageEstimate {
    pub fn from_counts(outages: usize, trials: usize, degenerate: usize) -> Self {
        let p_out = outages as f64 / trials as f64;
        Self {
            p_out,
            outages,
            trials,
            half_width: 3.0 * (p_out * (1.0 - p_out) / trials as f64).sqrt(),
            degenerate,
        }
    }

    /// `|p_out − target| ≤ half_width`
    pub fn covers(&self, target: f64) -> bool {
        (self.p_out - target).abs() <= self.half_width
    }
}

/// Which legitimate rate enters the secrecy rate of a trial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LegitimateRate {
    /// The hardened constant, as in the outage-capacity derivation.
    #[default]
    Hardened,
    /// The per-draw destination rate; measures the hardening error.
    PerDraw,
}

fn require(trials: usize, needed: usize) -> Result<(), McError> {
    if trials < needed {
        Err(McError::TooFewTrials {
            needed,
            got: trials,
        })
    } else {
        Ok(())
    }
}

/// Runs `f` on `trials` independent realizations and returns the results in
/// trial order.
pub fn map_trials<T, F>(p: &SystemParams, trials: usize, seed: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(&DerivedCoeffs, &ChannelRealization) -> T + Sync,
{
    let k = p.coeffs();
    (0..trials as u64)
        .into_par_iter()
        .map(|i| {
            let ch = draw(p, &mut trial_rng(seed, i));
            f(&k, &ch)
        })
        .collect()
}

pub fn link_samples(
    p: &SystemParams,
    trials: usize,
    seed: u64,
) -> Result<Vec<LinkSample>, McError> {
    let p = p.validate()?;
    Ok(map_trials(&p, trials, seed, |k, ch| {
        evaluate_link(&p, k, ch)
    }))
}

/// Frequency of `rate > C_D − C_E` with `C_D` the hardened legitimate
/// capacity and `C_E` the per-draw eavesdropper rate.
pub fn estimate_outage(
    p: &SystemParams,
    rate: f64,
    trials: usize,
    seed: u64,
) -> Result<OutageEstimate, McError> {
    let p = p.validate()?;
    require(trials, MIN_OUTAGE_TRIALS)?;
    if rate.is_nan() || rate < 0.0 {
        return Err(McError::NegativeRate(rate));
    }
    let c_d = capacity_destination(&p, &p.coeffs());
    let samples = map_trials(&p, trials, seed, |k, ch| evaluate_link(&p, k, ch));
    let outages = samples.iter().filter(|s| rate > c_d - s.c_e_inst).count();
    let degenerate = samples.iter().filter(|s| s.degenerate).count();
    Ok(OutageEstimate::from_counts(outages, trials, degenerate))
}

/// Index (0-based) of the order statistic `⌈q·m⌉` in an ascending sample.
fn order_statistic_index(q: f64, m: usize) -> usize {
    let k = (q * m as f64 - 1e-9).ceil() as usize;
    k.clamp(1, m) - 1
}

/// Largest rate whose empirical outage frequency is ε, using the hardened
/// legitimate capacity.
pub fn empirical_secrecy_outage_capacity(
    p: &SystemParams,
    trials: usize,
    seed: u64,
) -> Result<f64, McError> {
    empirical_secrecy_outage_capacity_with(p, trials, seed, LegitimateRate::Hardened)
}

/// As [`empirical_secrecy_outage_capacity`], choosing how `C_D` is formed.
///
/// Sorts the per-trial shortfall `C_E − C_D` ascending and takes order
/// statistic `⌈(1−ε)M⌉`; its negation, clipped at zero, is a rate that a
/// fraction ε of the trials cannot support.
pub fn empirical_secrecy_outage_capacity_with(
    p: &SystemParams,
    trials: usize,
    seed: u64,
    legit: LegitimateRate,
) -> Result<f64, McError> {
    let p = p.validate()?;
    require(trials, MIN_QUANTILE_TRIALS)?;
    let c_d = capacity_destination(&p, &p.coeffs());
    let mut shortfall = map_trials(&p, trials, seed, |k, ch| {
        let s = evaluate_link(&p, k, ch);
        match legit {
            LegitimateRate::Hardened => s.c_e_inst - c_d,
            LegitimateRate::PerDraw => s.c_e_inst - s.c_d_inst,
        }
    });
    shortfall.sort_unstable_by(f64::total_cmp);
    let idx = order_statistic_index(1.0 - p.epsilon, trials);
    Ok((-shortfall[idx]).max(0.0))
}

/// Empirical cdf of the per-draw eavesdropper SNR on `grid`.
pub fn empirical_cdf_gamma_e(
    p: &SystemParams,
    trials: usize,
    seed: u64,
    grid: &[f64],
) -> Result<Vec<(f64, f64)>, McError> {
    if grid
        .windows(2)
        .any(|w| w[0].partial_cmp(&w[1]).is_none_or(|o| o.is_gt()))
    {
        return Err(McError::UnsortedGrid);
    }
    let sorted = sorted_gamma_e(p, trials, seed)?;
    let m = sorted.len() as f64;
    Ok(grid
        .iter()
        .map(|&x| (x, sorted.partition_point(|&g| g <= x) as f64 / m))
        .collect())
}

/// Per-draw eavesdropper SNRs, ascending.
pub fn sorted_gamma_e(p: &SystemParams, trials: usize, seed: u64) -> Result<Vec<f64>, McError> {
    let p = p.validate()?;
    require(trials, 1)?;
    let mut g = map_trials(&p, trials, seed, |k, ch| gamma_eavesdropper(&p, k, ch));
    g.sort_unstable_by(f64::total_cmp);
    Ok(g)
}

/// Kolmogorov–Smirnov distance between an ascending sample and a cdf.
pub fn ks_distance<F: Fn(f64) -> f64>(sorted: &[f64], cdf: F) -> f64 {
    let m = sorted.len() as f64;
    sorted
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            let above = (i + 1) as f64 / m - f;
            let below = f - i as f64 / m;
            above.max(below)
        })
        .fold(0.0, f64::max)
}

/// Spread of the per-draw destination capacity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CapacitySpread {
    /// Sample mean of `W·log2(1 + γ_D)`, bit/s.
    pub mean: f64,
    /// Sample standard deviation, bit/s.
    pub std_dev: f64,
    /// Hardened closed form for comparison, bit/s.
    pub hardened: f64,
    pub degenerate: usize,
}

impl CapacitySpread {
    pub fn coefficient_of_variation(&self) -> f64 {
        self.std_dev / self.mean
    }
}

pub fn capacity_spread(
    p: &SystemParams,
    trials: usize,
    seed: u64,
) -> Result<CapacitySpread, McError> {
    let p = p.validate()?;
    require(trials, 2)?;
    let samples = map_trials(&p, trials, seed, |k, ch| evaluate_link(&p, k, ch));
    let m = trials as f64;
    let mean = samples.iter().map(|s| s.c_d_inst).sum::<f64>() / m;
    let var = samples
        .iter()
        .map(|s| (s.c_d_inst - mean).powi(2))
        .sum::<f64>()
        / (m - 1.0);
    Ok(CapacitySpread {
        mean,
        std_dev: var.sqrt(),
        hardened: capacity_destination(&p, &p.coeffs()),
        degenerate: samples.iter().filter(|s| s.degenerate).count(),
    })
}
