//! Monte Carlo validation and experiment runner for the `relay-secrecy`
//! model.
//!
//! [`montecarlo`] estimates outage probabilities, empirical secrecy outage
//! capacities and eavesdropper SNR cdfs by brute force. [`experiment`] turns
//! sweeps of one scenario variable into CSV rows, and [`config`] reads the
//! `key=value` files the CLI accepts.

pub mod config;
pub mod experiment;
pub mod montecarlo;

use std::path::PathBuf;

use relay_secrecy::{CapacityError, ParamError, SplitError};
use thiserror::Error;

pub use config::{apply_config, parse_config, parse_config_str, ConfigError};
pub use experiment::{
    run_experiment, run_to_files, ExperimentSpec, Preset, Sweep, SweepRecord, SweepVar,
};
pub use montecarlo::{
    empirical_cdf_gamma_e, empirical_secrecy_outage_capacity, estimate_outage, McError,
    OutageEstimate,
};

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Params(#[from] ParamError),
    #[error(transparent)]
    Capacity(#[from] CapacityError),
    #[error(transparent)]
    Split(#[from] SplitError),
    #[error(transparent)]
    MonteCarlo(#[from] McError),
    #[error("{0}")]
    Sweep(String),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("cannot write {0}: {1}")]
    Output(PathBuf, #[source] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
