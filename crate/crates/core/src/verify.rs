//! Quick solver-versus-oracle comparisons on seeded random channels.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;

use crate::error::{argument, Error, Result};
use crate::experiment::generate_channel;
use crate::linalg::{frobenius, real_diagonal, CMat};
use crate::mimo::{optimize_no_mimo, optimize_sit_cj_mimo, sdlc1_maximize, SolverBudget};
use crate::oracle::{grid_search_simo, projected_ascent, simo_breakpoints, AscentObjective, GridSpec};
use crate::rates::Scheme;
use crate::simdiag::{simultaneous_diagonalize, DEFAULT_RANK_TOL};
use crate::simo::solve_simo;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Simo,
    Mimo,
    Sd,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "simo" => Ok(Suite::Simo),
            "mimo" => Ok(Suite::Mimo),
            "sd" => Ok(Suite::Sd),
            other => Err(argument(format!("unknown suite '{other}'"))),
        }
    }
}

/// Named worst-case deviations.
#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub entries: Vec<(String, f64)>,
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, v) in &self.entries {
            writeln!(f, "{name}: {v:.3e}")?;
        }
        Ok(())
    }
}

pub fn run_suite(suite: Suite, seed: u64) -> Result<VerifyReport> {
    match suite {
        Suite::Simo => simo_suite(seed),
        Suite::Mimo => mimo_suite(seed),
        Suite::Sd => sd_suite(seed),
    }
}

fn simo_suite(seed: u64) -> Result<VerifyReport> {
    let p = 100.0;
    let mut max_gap = [0.0f64; 3];
    let mut min_margin = [f64::INFINITY; 3];
    let sizes = [1, 2, 4];
    for trial in 0..50u64 {
        let b = sizes[(trial % 3) as usize];
        let e = sizes[((trial / 3) % 3) as usize];
        let ch = generate_channel(trial, seed, b, e, 1)?;
        let (n1, n2) = simo_breakpoints(&ch, p, p)?;
        let spec = GridSpec::powers(201, p, p)?.with_nodes(0, &n1).with_nodes(1, &n2);
        for (k, scheme) in Scheme::ALL.into_iter().enumerate() {
            let closed = solve_simo(scheme, &ch, p, p)?.rs;
            let grid = grid_search_simo(scheme, &ch, &spec)?.value;
            max_gap[k] = max_gap[k].max((closed - grid).abs());
            min_margin[k] = min_margin[k].min(closed - grid);
        }
    }
    let mut entries = Vec::new();
    for (k, scheme) in Scheme::ALL.into_iter().enumerate() {
        entries.push((format!("{scheme} |closed - grid| max"), max_gap[k]));
        entries.push((format!("{scheme} closed - grid min"), min_margin[k]));
    }
    Ok(VerifyReport { entries })
}

fn mimo_suite(seed: u64) -> Result<VerifyReport> {
    let p = 10.0;
    let budget = SolverBudget::default();
    let mut sdlc1_gap = 0.0f64;
    let mut dominance = f64::INFINITY;
    let mut sandwich = 0.0f64;
    for trial in 0..10u64 {
        let ch = generate_channel(trial, seed, 2, 2, 2)?;
        let f = sdlc1_maximize(ch.h1(), ch.g1(), p, &budget)?;
        let obj = AscentObjective::SecrecyDifference { hb: ch.h1().clone(), ge: ch.g1().clone() };
        let oracle = projected_ascent(&obj, p, 20_000, 1.0)?;
        let ours = obj.value(f.matrix())?;
        let best = obj.value(oracle.matrix())?;
        sdlc1_gap = sdlc1_gap.max((best - ours) / best.abs().max(1e-12));

        let no = optimize_no_mimo(&ch, p, &budget)?;
        let sit = optimize_sit_cj_mimo(&ch, p, p, &budget)?;
        dominance = dominance.min(sit.rs - no.rs);
        if let Some(b) = sit.bounds {
            sandwich = sandwich.max(sit.rs - b.upper()).max(b.lower() - sit.rs);
        }
    }
    Ok(VerifyReport {
        entries: vec![
            ("sdlc1 relative shortfall vs ascent max".into(), sdlc1_gap),
            ("sitcj - no min".into(), dominance),
            ("sitcj bound violation max".into(), sandwich),
        ],
    })
}

fn random_psd(rng: &mut ChaCha12Rng, t: usize, rank: usize) -> CMat {
    let x = CMat::from_fn(t, rank, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    &x * x.adjoint()
}

fn sd_suite(seed: u64) -> Result<VerifyReport> {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut worst_q1 = 0.0f64;
    let mut worst_sum = 0.0f64;
    let mut eta_excess = 0.0f64;
    for _ in 0..100 {
        let t = rng.random_range(1..=6);
        let (k1, k2) = (rng.random_range(0..=t), rng.random_range(0..=t));
        let q1 = random_psd(&mut rng, t, k1);
        let q2 = random_psd(&mut rng, t, k2);
        let sd = simultaneous_diagonalize(&q1, &q2, DEFAULT_RANK_TOL)?;
        let mut eta = vec![0.0; t];
        let mut ones = vec![0.0; t];
        eta[..sd.rank].copy_from_slice(&sd.eta);
        ones[..sd.rank].fill(1.0);
        let s = &q1 + &q2;
        let r1 = frobenius(&(sd.w.adjoint() * &q1 * &sd.w - real_diagonal(&eta)));
        let r2 = frobenius(&(sd.w.adjoint() * &s * &sd.w - real_diagonal(&ones)));
        worst_q1 = worst_q1.max(r1 / (1.0 + frobenius(&q1)));
        worst_sum = worst_sum.max(r2 / (1.0 + frobenius(&s)));
        for &e in &sd.eta {
            eta_excess = eta_excess.max(-e).max(e - 1.0);
        }
    }
    Ok(VerifyReport {
        entries: vec![
            ("q1 reconstruction residual max".into(), worst_q1),
            ("q1+q2 reconstruction residual max".into(), worst_sum),
            ("eta outside [0,1] max".into(), eta_excess),
        ],
    })
}
