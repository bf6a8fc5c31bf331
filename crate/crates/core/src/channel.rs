//! Small-scale fading draws and the imperfect-CSI model.
//!
//! Every entry is circularly-symmetric complex Gaussian with unit total
//! variance, generated as `(x + iy)/√2` from two standard real normals.

use alloc::vec::Vec;

use num_complex::Complex64;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use rand_distr::{Distribution, StandardNormal};
use thiserror::Error;

use crate::math;
use crate::params::SystemParams;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChannelError {
    #[error("estimate has {estimate} entries but error vector has {error}")]
    LengthMismatch { estimate: usize, error: usize },
}

/// One slot's worth of fading vectors, each of length `N_R`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelRealization {
    /// Source → relay.
    pub h_sr: Vec<Complex64>,
    /// Relay's estimate of the relay → destination channel.
    pub h_rd_hat: Vec<Complex64>,
    /// CSI error vector.
    pub err: Vec<Complex64>,
    /// True relay → destination channel, `√ρ·h_rd_hat + √(1−ρ)·err`.
    pub h_rd: Vec<Complex64>,
    /// Relay → eavesdropper.
    pub h_re: Vec<Complex64>,
}

/// Generator for trial `trial` of a run seeded with `seed`.
///
/// Each trial gets its own ChaCha stream, so a trial's draw does not depend
/// on which worker runs it or in what order.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// One `CN(0, 1)` sample.
pub fn complex_gaussian<R: RngCore + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    Complex64::new(re, im) * core::f64::consts::FRAC_1_SQRT_2
}

pub fn complex_gaussian_vec<R: RngCore + ?Sized>(rng: &mut R, len: usize) -> Vec<Complex64> {
    (0..len).map(|_| complex_gaussian(rng)).collect()
}

/// `√ρ·ĥ + √(1−ρ)·e`, componentwise.
pub fn reconstruct_true_csi(
    h_rd_hat: &[Complex64],
    err: &[Complex64],
    rho: f64,
) -> Result<Vec<Complex64>, ChannelError> {
    if h_rd_hat.len() != err.len() {
        return Err(ChannelError::LengthMismatch {
            estimate: h_rd_hat.len(),
            error: err.len(),
        });
    }
    Ok(combine(h_rd_hat, err, rho))
}

fn combine(h_rd_hat: &[Complex64], err: &[Complex64], rho: f64) -> Vec<Complex64> {
    let (ws, we) = (math::sqrt(rho), math::sqrt(1.0 - rho));
    h_rd_hat
        .iter()
        .zip(err)
        .map(|(h, e)| h * ws + e * we)
        .collect()
}

/// Draws a fresh realization for `p.n_r` relay antennas.
///
/// Vectors are drawn in the order `h_sr`, `h_rd_hat`, `err`, `h_re`.
pub fn draw<R: RngCore + ?Sized>(p: &SystemParams, rng: &mut R) -> ChannelRealization {
    let n = p.n_r;
    let h_sr = complex_gaussian_vec(rng, n);
    let h_rd_hat = complex_gaussian_vec(rng, n);
    let err = complex_gaussian_vec(rng, n);
    let h_re = complex_gaussian_vec(rng, n);
    let h_rd = combine(&h_rd_hat, &err, p.rho);
    ChannelRealization {
        h_sr,
        h_rd_hat,
        err,
        h_rd,
        h_re,
    }
}

impl ChannelRealization {
    pub fn n_r(&self) -> usize {
        self.h_sr.len()
    }
}

/// `‖v‖²`
pub fn norm_sq(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum()
}

/// `uᴴv`
pub fn inner(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}
