//! Instantaneous quantities of the two-hop AF chain for one channel draw.
//!
//! The relay transform `W = κ·(ĥ_RD/‖ĥ_RD‖)(h_SRᴴ/‖h_SR‖)` is rank one, so
//! both SNRs reduce to inner products and norms and `W` is never built.

use crate::channel::{inner, norm_sq, ChannelRealization};
use crate::math;
use crate::params::{DerivedCoeffs, SystemParams};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct LinkSample {
    pub kappa_sq: f64,
    /// Joules.
    pub harvested_energy: f64,
    pub gamma_d: f64,
    pub gamma_e: f64,
    /// bit/s
    pub c_d_inst: f64,
    /// bit/s
    pub c_e_inst: f64,
    /// `[c_d_inst − c_e_inst]⁺`, bit/s
    pub secrecy_rate_inst: f64,
    /// `‖ĥ_RD‖ = 0`; both SNRs were forced to zero.
    pub degenerate: bool,
}

/// Relay power constraint factor `κ²`. Harvested energy over one slot equals
/// the forwarding energy over the next, so the slot length cancels.
pub fn kappa_squared(p: &SystemParams, h_sr_norm_sq: f64) -> f64 {
    let received = p.p_s * p.alpha_sr * h_sr_norm_sq;
    p.theta * p.eta * received / ((1.0 - p.theta) * received + 1.0)
}

/// Energy stored at the relay during one slot.
pub fn harvested_energy(p: &SystemParams, h_sr_norm_sq: f64) -> f64 {
    p.theta * p.eta * p.alpha_sr * p.p_s * h_sr_norm_sq * p.slot_t
}

/// Shared shape of both SNR expressions:
/// `num·θ(1−θ)·g·s² / (den·θ·g·s + ‖ĥ‖²(c(1−θ)s + 1))`
/// where `g = |hᴴĥ|²` for the receiver's channel `h` and `s = ‖h_SR‖²`.
fn af_snr(theta: f64, num: f64, den: f64, c: f64, proj_sq: f64, s: f64, hat_norm_sq: f64) -> f64 {
    if hat_norm_sq <= 0.0 {
        return 0.0;
    }
    let numer = num * theta * (1.0 - theta) * proj_sq * s * s;
    if numer == 0.0 {
        return 0.0;
    }
    numer / (den * theta * proj_sq * s + hat_norm_sq * (c * (1.0 - theta) * s + 1.0))
}

/// Destination SNR `γ_D`.
pub fn gamma_destination(p: &SystemParams, k: &DerivedCoeffs, ch: &ChannelRealization) -> f64 {
    let proj = inner(&ch.h_rd, &ch.h_rd_hat).norm_sqr();
    af_snr(
        p.theta,
        k.a,
        k.b,
        k.c,
        proj,
        norm_sq(&ch.h_sr),
        norm_sq(&ch.h_rd_hat),
    )
}

/// Eavesdropper SNR `γ_E`.
pub fn gamma_eavesdropper(p: &SystemParams, k: &DerivedCoeffs, ch: &ChannelRealization) -> f64 {
    let proj = inner(&ch.h_re, &ch.h_rd_hat).norm_sqr();
    af_snr(
        p.theta,
        k.e_coef,
        k.f,
        k.c,
        proj,
        norm_sq(&ch.h_sr),
        norm_sq(&ch.h_rd_hat),
    )
}

/// `W·log2(1 + γ)`
pub(crate) fn rate(bandwidth_w: f64, gamma: f64) -> f64 {
    bandwidth_w * math::log2(1.0 + gamma)
}

pub fn evaluate_link(p: &SystemParams, k: &DerivedCoeffs, ch: &ChannelRealization) -> LinkSample {
    let s = norm_sq(&ch.h_sr);
    let hat = norm_sq(&ch.h_rd_hat);
    let proj_d = inner(&ch.h_rd, &ch.h_rd_hat).norm_sqr();
    let proj_e = inner(&ch.h_re, &ch.h_rd_hat).norm_sqr();
    let gamma_d = af_snr(p.theta, k.a, k.b, k.c, proj_d, s, hat);
    let gamma_e = af_snr(p.theta, k.e_coef, k.f, k.c, proj_e, s, hat);
    let c_d_inst = rate(p.bandwidth_w, gamma_d);
    let c_e_inst = rate(p.bandwidth_w, gamma_e);
    LinkSample {
        kappa_sq: kappa_squared(p, s),
        harvested_energy: harvested_energy(p, s),
        gamma_d,
        gamma_e,
        c_d_inst,
        c_e_inst,
        secrecy_rate_inst: (c_d_inst - c_e_inst).max(0.0),
        degenerate: hat <= 0.0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{draw, trial_rng};
    use alloc::vec;
    use approx::assert_relative_eq;
    use num_complex::Complex64;

    fn defaults() -> SystemParams {
        SystemParams::default()
    }

    fn scalar_channel(h_sr: f64, h_hat: f64, err: f64, h_re: f64, rho: f64) -> ChannelRealization {
        let c = |x: f64| vec![Complex64::new(x, 0.0)];
        let h_rd = crate::channel::reconstruct_true_csi(&c(h_hat), &c(err), rho).unwrap();
        ChannelRealization {
            h_sr: c(h_sr),
            h_rd_hat: c(h_hat),
            err: c(err),
            h_rd,
            h_re: c(h_re),
        }
    }

    #[test]
    fn kappa_values() {
        let p = defaults();
        assert_eq!(kappa_squared(&SystemParams { theta: 0.0, ..p }, 100.0), 0.0);
        assert_relative_eq!(kappa_squared(&p, 100.0), 80.0 / 901.0, max_relative = 1e-14);
        let full = SystemParams { theta: 1.0, ..p };
        assert_relative_eq!(
            kappa_squared(&full, 100.0),
            p.eta * p.alpha_sr * p.p_s * 100.0,
            max_relative = 1e-14
        );
    }

    #[test]
    fn harvested_energy_values() {
        let p = defaults();
        assert_eq!(
            harvested_energy(&SystemParams { theta: 0.0, ..p }, 100.0),
            0.0
        );
        assert_relative_eq!(harvested_energy(&p, 100.0), 80.0, max_relative = 1e-14);
        assert_eq!(
            harvested_energy(&SystemParams { eta: 0.0, ..p }, 100.0),
            0.0
        );
        let long_slot = SystemParams { slot_t: 2.5, ..p };
        assert_relative_eq!(
            harvested_energy(&long_slot, 100.0),
            200.0,
            max_relative = 1e-14
        );
    }

    #[test]
    fn snrs_vanish_at_theta_endpoints() {
        for theta in [0.0, 1.0] {
            let p = SystemParams {
                theta,
                ..defaults()
            };
            let k = p.coeffs();
            let mut rng = trial_rng(1, 0);
            for _ in 0..10 {
                let ch = draw(&p, &mut rng);
                let s = evaluate_link(&p, &k, &ch);
                assert_eq!(s.gamma_d, 0.0);
                assert_eq!(s.gamma_e, 0.0);
                assert_eq!(s.secrecy_rate_inst, 0.0);
                if theta == 0.0 {
                    assert_eq!(s, LinkSample::default());
                }
            }
        }
    }

    #[test]
    fn no_eavesdropper_link_means_zero_gamma_e() {
        let p = defaults();
        let mut k = p.coeffs();
        k.e_coef = 0.0;
        k.f = 0.0;
        let ch = draw(&p, &mut trial_rng(5, 5));
        assert_eq!(gamma_eavesdropper(&p, &k, &ch), 0.0);
    }

    #[test]
    fn scalar_perfect_csi_hand_value() {
        // N_R = 1, ρ = 1: g = |ĥ|⁴, so γ_D = aθ(1−θ)|ĥ|²s² / (bθ|ĥ|²s + c(1−θ)s + 1).
        let p = SystemParams {
            n_r: 1,
            rho: 1.0,
            ..defaults()
        };
        let k = p.coeffs();
        let ch = scalar_channel(2.0, 3.0, -1.0, 0.5, 1.0);
        let (s, h2) = (4.0, 9.0);
        let expect = 80.0 * 0.1 * 0.9 * h2 * s * s / (8.0 * 0.1 * h2 * s + 10.0 * 0.9 * s + 1.0);
        assert_relative_eq!(gamma_destination(&p, &k, &ch), expect, max_relative = 1e-13);
        // 7.2·9·16 / (0.8·9·4 + 9·4 + 1)
        assert_relative_eq!(expect, 1036.8 / 65.8, max_relative = 1e-13);
    }

    #[test]
    fn degenerate_estimate_is_flagged() {
        let p = SystemParams {
            n_r: 1,
            ..defaults()
        };
        let k = p.coeffs();
        let ch = scalar_channel(1.0, 0.0, 1.0, 1.0, p.rho);
        let s = evaluate_link(&p, &k, &ch);
        assert!(s.degenerate);
        assert_eq!(s.gamma_d, 0.0);
        assert_eq!(s.gamma_e, 0.0);
        assert!(!s.gamma_d.is_nan());
    }

    #[test]
    fn sample_fields_consistent() {
        let p = defaults();
        let k = p.coeffs();
        let mut rng = trial_rng(99, 0);
        for _ in 0..200 {
            let ch = draw(&p, &mut rng);
            let s = evaluate_link(&p, &k, &ch);
            assert_eq!(s.gamma_d, gamma_destination(&p, &k, &ch));
            assert_eq!(s.gamma_e, gamma_eavesdropper(&p, &k, &ch));
            assert_relative_eq!(
                s.c_d_inst,
                1e4 * (1.0 + s.gamma_d).log2(),
                max_relative = 1e-14
            );
            assert!(s.secrecy_rate_inst >= 0.0);
            assert_eq!(s.secrecy_rate_inst, (s.c_d_inst - s.c_e_inst).max(0.0));
            assert!(s.kappa_sq >= 0.0 && s.harvested_energy >= 0.0);
        }
    }

    #[test]
    fn phase_rotation_invariance() {
        let p = defaults();
        let k = p.coeffs();
        let ch = draw(&p, &mut trial_rng(4, 4));
        let rot = Complex64::from_polar(1.0, 0.731);
        let spin = |v: &Vec<Complex64>| v.iter().map(|z| z * rot).collect::<Vec<_>>();
        let base = gamma_destination(&p, &k, &ch);
        for which in 0..3 {
            let mut r = ch.clone();
            match which {
                0 => r.h_sr = spin(&r.h_sr),
                1 => r.h_rd = spin(&r.h_rd),
                _ => r.h_rd_hat = spin(&r.h_rd_hat),
            }
            assert_relative_eq!(gamma_destination(&p, &k, &r), base, max_relative = 1e-12);
        }
    }

    #[test]
    fn gamma_d_increases_with_source_gain() {
        let p = defaults();
        let k = p.coeffs();
        let ch = draw(&p, &mut trial_rng(8, 1));
        let mut last = 0.0;
        for scale in [0.25, 0.5, 1.0, 2.0, 4.0, 8.0] {
            let mut r = ch.clone();
            r.h_sr.iter_mut().for_each(|z| *z *= scale);
            let g = gamma_destination(&p, &k, &r);
            assert!(g > last, "{g} <= {last}");
            last = g;
        }
    }
}
