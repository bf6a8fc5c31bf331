//! `key=value` experiment configs.
//!
//! One assignment per line; blank lines and lines starting with `#` are
//! skipped. Keys are the [`SystemParams`](relay_secrecy::SystemParams) field
//! names plus `snr_db`, `preset`, `sweep`, `trials`, `seed`,
//! `optimize_theta`, `grid_step` and `out`. A `preset` line is applied
//! before every other key regardless of where it appears.

use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::experiment::{ExperimentSpec, Preset};

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {0}: {1}")]
    Io(PathBuf, #[source] std::io::Error),
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },
    #[error("invalid experiment: {0}")]
    Invalid(String),
}

fn entries(text: &str) -> Result<Vec<(usize, &str, &str)>, ConfigError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(ConfigError::Malformed {
                line: i + 1,
                message: format!("expected key=value, got `{line}`"),
            });
        };
        out.push((i + 1, key.trim(), value.trim()));
    }
    Ok(out)
}

fn parse_value<T: std::str::FromStr>(line: usize, key: &str, value: &str) -> Result<T, ConfigError>
where
    T::Err: std::fmt::Display,
{
    value.parse().map_err(|e: T::Err| ConfigError::Malformed {
        line,
        message: format!("bad value `{value}` for {key}: {e}"),
    })
}

/// Applies `text` on top of `base` (or on top of the preset it names).
pub fn apply_config(text: &str, base: ExperimentSpec) -> Result<ExperimentSpec, ConfigError> {
    let entries = entries(text)?;
    let mut spec = base;
    for &(line, key, value) in &entries {
        if key == "preset" {
            spec = parse_value::<Preset>(line, key, value)?.spec();
        }
    }
    for &(line, key, value) in &entries {
        let p = &mut spec.params;
        match key {
            "preset" => {}
            "n_r" => p.n_r = parse_value(line, key, value)?,
            "p_s" => p.p_s = parse_value(line, key, value)?,
            "snr_db" => *p = p.with_snr_db(parse_value(line, key, value)?),
            "theta" => p.theta = parse_value(line, key, value)?,
            "rho" => p.rho = parse_value(line, key, value)?,
            "eta" => p.eta = parse_value(line, key, value)?,
            "epsilon" => p.epsilon = parse_value(line, key, value)?,
            "bandwidth_w" => p.bandwidth_w = parse_value(line, key, value)?,
            "alpha_sr" => p.alpha_sr = parse_value(line, key, value)?,
            "alpha_rd" => p.alpha_rd = parse_value(line, key, value)?,
            "alpha_re" => p.alpha_re = parse_value(line, key, value)?,
            "slot_t" => p.slot_t = parse_value(line, key, value)?,
            "sweep" => spec.sweep = parse_value(line, key, value)?,
            "trials" => spec.trials = parse_value(line, key, value)?,
            "seed" => spec.seed = parse_value(line, key, value)?,
            "optimize_theta" => spec.optimize_theta = parse_value(line, key, value)?,
            "grid_step" => spec.grid_step = parse_value(line, key, value)?,
            "out" => spec.out = Some(PathBuf::from(value)),
            _ => {
                return Err(ConfigError::UnknownKey {
                    line,
                    key: key.to_string(),
                })
            }
        }
    }
    spec.validate()
        .map_err(|e| ConfigError::Invalid(e.to_string()))?;
    Ok(spec)
}

/// Parses a config string with the fig3 preset as the starting point.
pub fn parse_config_str(text: &str) -> Result<ExperimentSpec, ConfigError> {
    apply_config(text, ExperimentSpec::default())
}

pub fn parse_config(path: &Path) -> Result<ExperimentSpec, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Io(path.to_path_buf(), e))?;
    parse_config_str(&text)
}
