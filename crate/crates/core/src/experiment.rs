//! Monte-Carlo sweeps over random Rayleigh channels.

use std::fmt;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::channel::{ChannelRealization, InputCovariance};
use crate::error::{argument, Error, Result};
use crate::linalg::CMat;
use crate::mimo::{optimize_mimo, SolverBudget};
use crate::rates::{rate_report, RateReport, Scheme};
use crate::simo::solve_simo;

pub const CSV_HEADER: [&str; 7] = [
    "sweep_axis",
    "sweep_value",
    "scheme",
    "mean_rs",
    "mean_ro",
    "mean_rtotal",
    "trials",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepAxis {
    /// Antennas at the legitimate receiver.
    B,
    /// Antennas at the eavesdropper.
    E,
    /// Transmit power in dB.
    P,
    /// Transmit antennas per user.
    T,
}

impl SweepAxis {
    pub fn as_str(self) -> &'static str {
        match self {
            SweepAxis::B => "b",
            SweepAxis::E => "e",
            SweepAxis::P => "p",
            SweepAxis::T => "t",
        }
    }
}

impl fmt::Display for SweepAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SweepAxis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "b" => Ok(SweepAxis::B),
            "e" => Ok(SweepAxis::E),
            "p" | "p_db" | "p-db" => Ok(SweepAxis::P),
            "t" => Ok(SweepAxis::T),
            other => Err(argument(format!("unknown sweep axis '{other}'"))),
        }
    }
}

/// Antenna counts and power of one operating point. Both users share `t`
/// and the power `p_db`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dims {
    pub b: usize,
    pub e: usize,
    pub t: usize,
    pub p_db: f64,
}

impl Dims {
    /// Linear power in noise units.
    pub fn power(&self) -> f64 {
        10f64.powf(self.p_db / 10.0)
    }

    fn with(self, axis: SweepAxis, value: f64) -> Self {
        let mut d = self;
        match axis {
            SweepAxis::B => d.b = value as usize,
            SweepAxis::E => d.e = value as usize,
            SweepAxis::T => d.t = value as usize,
            SweepAxis::P => d.p_db = value,
        }
        d
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub schemes: Vec<Scheme>,
    pub axis: SweepAxis,
    pub values: Vec<f64>,
    /// Values of the non-swept dimensions; the swept one is ignored.
    pub fixed: Dims,
    pub trials: usize,
    pub seed: u64,
    pub budget: SolverBudget,
    /// Worker threads; `None` uses the global rayon pool.
    pub threads: Option<usize>,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.schemes.is_empty() {
            return Err(argument("schemes: at least one scheme is required"));
        }
        for (i, s) in self.schemes.iter().enumerate() {
            if self.schemes[..i].contains(s) {
                return Err(argument(format!("schemes: '{s}' listed twice")));
            }
        }
        if self.values.is_empty() {
            return Err(argument("values: at least one sweep value is required"));
        }
        if self.values.iter().any(|v| !v.is_finite()) {
            return Err(argument("values: sweep values must be finite"));
        }
        if self.values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(argument("values: sweep values must be strictly increasing"));
        }
        if self.axis != SweepAxis::P {
            if let Some(v) = self.values.iter().find(|v| **v < 1.0 || v.fract() != 0.0) {
                return Err(argument(format!(
                    "values: antenna count {v} must be a positive integer"
                )));
            }
        }
        for (name, v, axis) in [
            ("b", self.fixed.b, SweepAxis::B),
            ("e", self.fixed.e, SweepAxis::E),
            ("t", self.fixed.t, SweepAxis::T),
        ] {
            if v == 0 && self.axis != axis {
                return Err(argument(format!("{name}: must be at least 1")));
            }
        }
        if self.axis != SweepAxis::P && !self.fixed.p_db.is_finite() {
            return Err(argument("p_db: must be finite"));
        }
        if self.trials == 0 {
            return Err(argument("trials: must be at least 1"));
        }
        if self.threads == Some(0) {
            return Err(argument("threads: must be at least 1"));
        }
        self.budget
            .validate()
            .map_err(|e| argument(format!("budget: {e}")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResultRow {
    pub axis: SweepAxis,
    pub sweep_value: f64,
    pub scheme: Scheme,
    pub mean_rs: f64,
    pub mean_ro: f64,
    pub mean_rtotal: f64,
    pub trials: usize,
}

/// Draw one channel. Every matrix has i.i.d. `CN(0, 1)` entries from its own
/// ChaCha stream keyed by `(seed, trial, matrix)`.
pub fn generate_channel(trial: u64, seed: u64, b: usize, e: usize, t: usize) -> Result<ChannelRealization> {
    if b == 0 || e == 0 || t == 0 {
        return Err(argument("channel dimensions must be positive"));
    }
    if trial >> 62 != 0 {
        return Err(argument("trial index must be below 2^62"));
    }
    let draw = |id: u64, rows: usize| {
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        rng.set_stream((trial << 2) | id);
        let scale = std::f64::consts::FRAC_1_SQRT_2;
        CMat::from_fn(rows, t, |_, _| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            Complex64::new(re * scale, im * scale)
        })
    };
    ChannelRealization::new(draw(0, b), draw(1, b), draw(2, e), draw(3, e))
}

/// Optimize `scheme` on one channel with both users at power `p`, and report
/// its rates at the optimized covariances. Single-antenna users use the
/// closed forms.
pub fn solve_trial(ch: &ChannelRealization, scheme: Scheme, p: f64, budget: &SolverBudget) -> Result<RateReport> {
    let (f1, f2) = if ch.is_simo() {
        let sol = solve_simo(scheme, ch, p, p)?;
        (InputCovariance::scalar(sol.f1, p)?, InputCovariance::scalar(sol.f2, p)?)
    } else {
        let sol = optimize_mimo(scheme, ch, p, p, budget)?;
        (sol.f1, sol.f2)
    };
    rate_report(scheme, ch, &f1, &f2)
}

/// Run the sweep and return one row per sweep value and scheme, in the order
/// of `cfg.values` then `cfg.schemes`.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Vec<ResultRow>> {
    cfg.validate()?;
    let units: Vec<(usize, u64)> = (0..cfg.values.len())
        .flat_map(|v| (0..cfg.trials as u64).map(move |t| (v, t)))
        .collect();
    let work = || -> Vec<Result<Vec<RateReport>>> {
        units
            .par_iter()
            .map(|&(v, trial)| {
                let d = cfg.fixed.with(cfg.axis, cfg.values[v]);
                let ch = generate_channel(trial, cfg.seed, d.b, d.e, d.t)?;
                cfg.schemes
                    .iter()
                    .map(|&s| solve_trial(&ch, s, d.power(), &cfg.budget))
                    .collect()
            })
            .collect()
    };
    let reports = match cfg.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| argument(format!("threads: {e}")))?
            .install(work),
        None => work(),
    };

    let mut rows = Vec::with_capacity(cfg.values.len() * cfg.schemes.len());
    let mut per_value = reports.into_iter();
    for &value in &cfg.values {
        let mut sums = vec![(0.0f64, 0.0f64); cfg.schemes.len()];
        for _ in 0..cfg.trials {
            let trial = per_value.next().expect("one result per unit")?;
            for (acc, r) in sums.iter_mut().zip(&trial) {
                acc.0 += r.rs;
                acc.1 += r.ro;
            }
        }
        for (&scheme, &(rs, ro)) in cfg.schemes.iter().zip(&sums) {
            let n = cfg.trials as f64;
            let (mean_rs, mean_ro) = (rs / n, ro / n);
            rows.push(ResultRow {
                axis: cfg.axis,
                sweep_value: value,
                scheme,
                mean_rs,
                mean_ro,
                mean_rtotal: mean_rs + mean_ro,
                trials: cfg.trials,
            });
        }
    }
    Ok(rows)
}

/// `%.12g`-style formatting: 12 significant digits, trailing zeros removed.
pub fn format_sig(x: f64) -> String {
    const DIGITS: usize = 12;
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.*e}", DIGITS - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -5 || exp >= DIGITS as i32 {
        let m = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        return format!("{m}e{sign}{:02}", exp.abs());
    }
    let decimals = (DIGITS as i32 - 1 - exp).max(0) as usize;
    trim_zeros(&format!("{x:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn write_csv<W: Write>(rows: &[ResultRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in rows {
        w.write_record([
            r.axis.as_str().to_string(),
            format_sig(r.sweep_value),
            r.scheme.as_str().to_string(),
            format_sig(r.mean_rs),
            format_sig(r.mean_ro),
            format_sig(r.mean_rtotal),
            r.trials.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// [`run_experiment`] followed by writing the CSV to `out_path`.
pub fn run_experiment_to(cfg: &ExperimentConfig, out_path: &Path) -> Result<Vec<ResultRow>> {
    cfg.validate()?;
    let file = std::fs::File::create(out_path)?;
    let rows = run_experiment(cfg)?;
    write_csv(&rows, std::io::BufWriter::new(file))?;
    Ok(rows)
}
