//! Parameter sweeps reproducing the evaluation figures, written as CSV.

use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;
use relay_secrecy::splitter::DEFAULT_GRID_STEP;
use relay_secrecy::{asymptotic_c_soc, optimize_theta, secrecy_outage_capacity, SystemParams};

use crate::montecarlo::{empirical_secrecy_outage_capacity, MIN_QUANTILE_TRIALS};
use crate::Error;

pub const DEFAULT_TRIALS: usize = 100_000;
pub const DEFAULT_SEED: u64 = 20_140_501;

/// Upper limit on sweep points, to catch a step typo before it runs for hours.
const MAX_SWEEP_POINTS: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    Fig2,
    Fig3,
    Fig4,
    Fig5,
    Fig6,
    Custom,
}

impl Preset {
    pub const ALL: [Preset; 6] = [
        Preset::Fig2,
        Preset::Fig3,
        Preset::Fig4,
        Preset::Fig5,
        Preset::Fig6,
        Preset::Custom,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Fig2 => "fig2",
            Preset::Fig3 => "fig3",
            Preset::Fig4 => "fig4",
            Preset::Fig5 => "fig5",
            Preset::Fig6 => "fig6",
            Preset::Custom => "custom",
        }
    }

    /// Fully resolved default experiment for this preset.
    ///
    /// All presets share `N_R = 100`, `W = 10 kHz`, `η = 0.8`, `θ = 0.1`,
    /// `ρ = 0.9` and unit path losses.
    pub fn spec(self) -> ExperimentSpec {
        let base = SystemParams::default();
        let (params, sweep, optimize_theta) = match self {
            // Transfer distance: secrecy capacity vs α_SR, optimized split.
            Preset::Fig2 => (
                SystemParams {
                    epsilon: 0.01,
                    ..base
                }
                .with_snr_db(0.0),
                Sweep::new(SweepVar::AlphaSr, 0.1, 1.0, 0.1),
                true,
            ),
            // Closed form vs simulation over α_RE.
            Preset::Fig3 => (
                SystemParams {
                    epsilon: 0.05,
                    ..base
                }
                .with_snr_db(10.0),
                Sweep::new(SweepVar::AlphaRe, 0.2, 2.0, 0.2),
                false,
            ),
            // Saturation in transmit SNR with the fixed split.
            Preset::Fig4 => (
                SystemParams {
                    epsilon: 0.01,
                    ..base
                },
                Sweep::new(SweepVar::SnrDb, -10.0, 30.0, 5.0),
                false,
            ),
            // Optimized vs fixed split over transmit SNR.
            Preset::Fig5 => (
                SystemParams {
                    epsilon: 0.01,
                    ..base
                },
                Sweep::new(SweepVar::SnrDb, -10.0, 30.0, 5.0),
                true,
            ),
            // Interception distance: secrecy capacity vs α_RE, optimized split.
            Preset::Fig6 => (
                SystemParams {
                    epsilon: 0.01,
                    ..base
                }
                .with_snr_db(0.0),
                Sweep::new(SweepVar::AlphaRe, 0.2, 2.0, 0.2),
                true,
            ),
            Preset::Custom => (base, Sweep::new(SweepVar::SnrDb, 0.0, 30.0, 10.0), false),
        };
        ExperimentSpec {
            preset: self,
            params,
            sweep,
            trials: DEFAULT_TRIALS,
            seed: DEFAULT_SEED,
            optimize_theta,
            grid_step: DEFAULT_GRID_STEP,
            out: None,
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Preset {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| {
                format!("unknown preset `{s}` (expected fig2|fig3|fig4|fig5|fig6|custom)")
            })
    }
}

/// Quantity varied along a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepVar {
    SnrDb,
    PS,
    Theta,
    Rho,
    Eta,
    Epsilon,
    AlphaSr,
    AlphaRd,
    AlphaRe,
    NR,
    BandwidthW,
}

impl SweepVar {
    pub const ALL: [SweepVar; 11] = [
        SweepVar::SnrDb,
        SweepVar::PS,
        SweepVar::Theta,
        SweepVar::Rho,
        SweepVar::Eta,
        SweepVar::Epsilon,
        SweepVar::AlphaSr,
        SweepVar::AlphaRd,
        SweepVar::AlphaRe,
        SweepVar::NR,
        SweepVar::BandwidthW,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SweepVar::SnrDb => "snr_db",
            SweepVar::PS => "p_s",
            SweepVar::Theta => "theta",
            SweepVar::Rho => "rho",
            SweepVar::Eta => "eta",
            SweepVar::Epsilon => "epsilon",
            SweepVar::AlphaSr => "alpha_sr",
            SweepVar::AlphaRd => "alpha_rd",
            SweepVar::AlphaRe => "alpha_re",
            SweepVar::NR => "n_r",
            SweepVar::BandwidthW => "bandwidth_w",
        }
    }

    /// `base` with this variable set to `value`.
    pub fn apply(self, base: &SystemParams, value: f64) -> SystemParams {
        let mut p = *base;
        match self {
            SweepVar::SnrDb => p = p.with_snr_db(value),
            SweepVar::PS => p.p_s = value,
            SweepVar::Theta => p.theta = value,
            SweepVar::Rho => p.rho = value,
            SweepVar::Eta => p.eta = value,
            SweepVar::Epsilon => p.epsilon = value,
            SweepVar::AlphaSr => p.alpha_sr = value,
            SweepVar::AlphaRd => p.alpha_rd = value,
            SweepVar::AlphaRe => p.alpha_re = value,
            SweepVar::NR => p.n_r = value as usize,
            SweepVar::BandwidthW => p.bandwidth_w = value,
        }
        p
    }
}

impl FromStr for SweepVar {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SweepVar::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| format!("unknown sweep variable `{s}`"))
    }
}

/// Inclusive uniform sweep `lo, lo + step, …, hi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sweep {
    pub var: SweepVar,
    pub lo: f64,
    pub hi: f64,
    pub step: f64,
}

impl Sweep {
    pub fn new(var: SweepVar, lo: f64, hi: f64, step: f64) -> Self {
        Self { var, lo, hi, step }
    }

    /// Sweep points, snapped to a 1e-9 grid so decimal steps print cleanly.
    pub fn points(&self) -> Result<Vec<f64>, String> {
        let Sweep { lo, hi, step, .. } = *self;
        if !(lo.is_finite() && hi.is_finite() && step.is_finite()) {
            return Err("sweep bounds must be finite".into());
        }
        if hi < lo {
            return Err(format!("empty sweep range: {lo} > {hi}"));
        }
        if step <= 0.0 {
            return Err(format!("sweep step must be positive, got {step}"));
        }
        let count = ((hi - lo) / step + 1e-9).floor() as usize + 1;
        if count > MAX_SWEEP_POINTS {
            return Err(format!(
                "sweep has {count} points, limit is {MAX_SWEEP_POINTS}"
            ));
        }
        let pts: Vec<f64> = (0..count)
            .map(|i| ((lo + i as f64 * step) * 1e9).round() / 1e9)
            .collect();
        if self.var == SweepVar::NR && pts.iter().any(|v| v.fract() != 0.0 || *v < 1.0) {
            return Err("n_r sweep values must be positive integers".into());
        }
        Ok(pts)
    }
}

impl fmt::Display for Sweep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{}:{}:{}",
            self.var.name(),
            self.lo,
            self.hi,
            self.step
        )
    }
}

impl FromStr for Sweep {
    type Err = String;

    /// `var:lo:hi:step`
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').map(str::trim).collect();
        let [var, lo, hi, step] = parts[..] else {
            return Err(format!("sweep `{s}` is not of the form var:lo:hi:step"));
        };
        let num = |x: &str| {
            x.parse::<f64>()
                .map_err(|_| format!("sweep bound `{x}` is not a number"))
        };
        let sweep = Sweep::new(var.parse()?, num(lo)?, num(hi)?, num(step)?);
        sweep.points()?;
        Ok(sweep)
    }
}

/// Everything needed to reproduce one CSV.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentSpec {
    pub preset: Preset,
    /// Base scenario; the sweep variable overrides one field per row.
    pub params: SystemParams,
    pub sweep: Sweep,
    /// Monte Carlo trials per row; 0 skips the empirical column.
    pub trials: usize,
    pub seed: u64,
    pub optimize_theta: bool,
    pub grid_step: f64,
    pub out: Option<PathBuf>,
}

impl Default for ExperimentSpec {
    fn default() -> Self {
        Preset::Fig3.spec()
    }
}

impl ExperimentSpec {
    pub fn validate(&self) -> Result<(), Error> {
        self.params.validate()?;
        let points = self.sweep.points().map_err(Error::Sweep)?;
        for v in points {
            self.sweep.var.apply(&self.params, v).validate()?;
        }
        if self.trials != 0 && self.trials < MIN_QUANTILE_TRIALS {
            return Err(Error::Sweep(format!(
                "trials must be 0 (analytic only) or at least {MIN_QUANTILE_TRIALS}, got {}",
                self.trials
            )));
        }
        if !(self.grid_step > 0.0 && self.grid_step <= 0.01) {
            return Err(Error::Sweep(format!(
                "grid_step must be in (0, 0.01], got {}",
                self.grid_step
            )));
        }
        Ok(())
    }

    /// Config-file rendering of the fully resolved spec.
    pub fn manifest(&self) -> String {
        let p = &self.params;
        let mut s = String::new();
        let mut line = |k: &str, v: String| {
            s.push_str(k);
            s.push('=');
            s.push_str(&v);
            s.push('\n');
        };
        line("preset", self.preset.to_string());
        line("n_r", p.n_r.to_string());
        line("p_s", p.p_s.to_string());
        line("theta", p.theta.to_string());
        line("rho", p.rho.to_string());
        line("eta", p.eta.to_string());
        line("epsilon", p.epsilon.to_string());
        line("bandwidth_w", p.bandwidth_w.to_string());
        line("alpha_sr", p.alpha_sr.to_string());
        line("alpha_rd", p.alpha_rd.to_string());
        line("alpha_re", p.alpha_re.to_string());
        line("slot_t", p.slot_t.to_string());
        line("sweep", self.sweep.to_string());
        line("trials", self.trials.to_string());
        line("seed", self.seed.to_string());
        line("optimize_theta", self.optimize_theta.to_string());
        line("grid_step", self.grid_step.to_string());
        s
    }
}

/// One CSV row.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRecord {
    pub value: f64,
    /// Closed-form secrecy outage capacity at the split actually used, bit/s.
    pub c_soc_analytic: f64,
    /// Monte Carlo counterpart, bit/s.
    pub c_soc_empirical: Option<f64>,
    pub c_d: f64,
    /// High-power limit, when `θ` is strictly inside `(0, 1)`.
    pub asymptote: Option<f64>,
    pub theta_star: Option<f64>,
    /// Closed form at the configured (unoptimized) split, bit/s.
    pub c_soc_fixed_theta: f64,
    pub trials: usize,
    pub seed: u64,
}

pub fn csv_header(var: SweepVar) -> [&'static str; 9] {
    [
        var.name(),
        "c_soc_analytic",
        "c_soc_empirical",
        "c_d",
        "asymptote",
        "theta_star",
        "c_soc_fixed_theta",
        "trials",
        "seed",
    ]
}

impl SweepRecord {
    pub fn to_row(&self) -> [String; 9] {
        let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
        [
            self.value.to_string(),
            self.c_soc_analytic.to_string(),
            opt(self.c_soc_empirical),
            self.c_d.to_string(),
            opt(self.asymptote),
            opt(self.theta_star),
            self.c_soc_fixed_theta.to_string(),
            self.trials.to_string(),
            self.seed.to_string(),
        ]
    }
}

/// Evaluates one sweep point.
pub fn evaluate_point(spec: &ExperimentSpec, value: f64) -> Result<SweepRecord, Error> {
    let fixed = spec.sweep.var.apply(&spec.params, value).validate()?;
    let fixed_result = secrecy_outage_capacity(&fixed, &fixed.coeffs())?;

    let (p, theta_star) = if spec.optimize_theta {
        let split = optimize_theta(&fixed, spec.grid_step, true)?;
        (
            SystemParams {
                theta: split.theta_star,
                ..fixed
            },
            Some(split.theta_star),
        )
    } else {
        (fixed, None)
    };
    let analytic = secrecy_outage_capacity(&p, &p.coeffs())?;
    let c_soc_empirical = if spec.trials > 0 {
        Some(empirical_secrecy_outage_capacity(
            &p,
            spec.trials,
            spec.seed,
        )?)
    } else {
        None
    };
    Ok(SweepRecord {
        value,
        c_soc_analytic: analytic.c_soc,
        c_soc_empirical,
        c_d: analytic.c_d,
        asymptote: asymptotic_c_soc(&p).ok(),
        theta_star,
        c_soc_fixed_theta: fixed_result.c_soc,
        trials: spec.trials,
        seed: spec.seed,
    })
}

/// Runs every sweep point on the current rayon pool; rows come back in
/// sweep order.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<Vec<SweepRecord>, Error> {
    spec.validate()?;
    let points = spec.sweep.points().map_err(Error::Sweep)?;
    points
        .par_iter()
        .map(|&v| evaluate_point(spec, v))
        .collect()
}

pub fn write_csv<W: Write>(writer: W, var: SweepVar, rows: &[SweepRecord]) -> Result<(), Error> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(csv_header(var))?;
    for r in rows {
        w.write_record(r.to_row())?;
    }
    w.flush()?;
    Ok(())
}

/// Path of the manifest written next to a CSV: `x.csv` → `x.manifest`.
pub fn manifest_path(csv: &Path) -> PathBuf {
    csv.with_extension("manifest")
}

/// Runs `spec` and writes the CSV and manifest to `spec.out`. Without an
/// output path the CSV goes to `stdout` and the manifest to `stderr`, each
/// manifest line prefixed with `# `.
pub fn run_to_files(spec: &ExperimentSpec) -> Result<Vec<SweepRecord>, Error> {
    let rows = run_experiment(spec)?;
    match &spec.out {
        Some(path) => {
            let file = std::fs::File::create(path).map_err(|e| Error::Output(path.clone(), e))?;
            write_csv(std::io::BufWriter::new(file), spec.sweep.var, &rows)?;
            let mpath = manifest_path(path);
            std::fs::write(&mpath, spec.manifest()).map_err(|e| Error::Output(mpath, e))?;
        }
        None => {
            for line in spec.manifest().lines() {
                eprintln!("# {line}");
            }
            write_csv(std::io::stdout().lock(), spec.sweep.var, &rows)?;
        }
    }
    Ok(rows)
}
