//! Secrecy outage analysis for a simultaneous wireless information and power
//! transfer (SWIPT) relay link.
//!
//! A single-antenna source reaches a single-antenna destination through an
//! amplify-and-forward relay with `N_R` antennas. The relay harvests a
//! fraction `θ` of the received power and spends it on forwarding the rest
//! with a combined MRC/MRT transform built from imperfect downlink CSI. A
//! passive single-antenna eavesdropper overhears the relay's transmission.
//!
//! The crate is `no_std` (with `alloc`) and covers:
//!
//! * [`params`]: scenario configuration and the composite path-loss/power
//!   coefficients shared by every formula,
//! * [`channel`]: seeded complex Gaussian channel draws with the CSI
//!   mismatch model,
//! * [`link`]: instantaneous per-draw SNRs, relay power factor and harvested
//!   energy,
//! * [`capacity`]: the channel-hardened closed forms (legitimate capacity,
//!   eavesdropper SNR cdf, secrecy outage capacity, high-power limit),
//! * [`splitter`]: the power-splitting ratio that maximizes the secrecy
//!   outage capacity.
#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod capacity;
pub mod channel;
pub mod link;
mod math;
pub mod params;
pub mod splitter;

pub use capacity::{
    asymptotic_c_soc, capacity_destination, gamma_e_cdf, gamma_e_threshold,
    secrecy_outage_capacity, CapacityError, CapacityResult,
};
pub use channel::{draw, reconstruct_true_csi, trial_rng, ChannelError, ChannelRealization};
pub use link::{
    evaluate_link, gamma_destination, gamma_eavesdropper, harvested_energy, kappa_squared,
    LinkSample,
};
pub use params::{db_to_linear, linear_to_db, DerivedCoeffs, ParamError, SystemParams};
pub use splitter::{optimize_theta, SplitError, SplitResult};
