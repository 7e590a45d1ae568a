//! Full covariance optimization for each transmission scheme.

use super::sdlc::{sdlc1_maximize, sdlc2_step};
use super::{MimoSolution, SitCjBounds, SitCjCandidate, SolverBudget};
use crate::channel::{ChannelRealization, InputCovariance};
use crate::error::{argument, Result};
use crate::linalg::{congruence, identity, CMat};
use crate::rates::{rate_gn_jamming, rate_no_jamming, rate_sit_cj, secrecy_components, Scheme};
use crate::simdiag::inverse_sqrt_psd;

fn check_power(name: &str, p: f64) -> Result<()> {
    if p.is_finite() && p >= 0.0 {
        Ok(())
    } else {
        Err(argument(format!("{name} = {p} must be finite and nonnegative")))
    }
}

/// `(I + h·f·hᴴ)^{-1/2}`.
fn whitener(h: &CMat, f: &InputCovariance) -> Result<CMat> {
    inverse_sqrt_psd(&(identity(h.nrows()) + congruence(h, f.matrix())))
}

/// User 1 alone: maximize the wiretap difference directly.
pub fn optimize_no_mimo(ch: &ChannelRealization, p1: f64, budget: &SolverBudget) -> Result<MimoSolution> {
    check_power("p1", p1)?;
    let f1 = sdlc1_maximize(ch.h1(), ch.g1(), p1, budget)?;
    let rs = rate_no_jamming(ch, &f1)?.rs;
    Ok(MimoSolution {
        scheme: Scheme::No,
        f1,
        f2: InputCovariance::zeros(ch.t2(), 0.0),
        rs,
        candidate: None,
        bounds: None,
    })
}

/// User 1 update for fixed jamming: both receivers see the jammer as noise.
fn user1_against_jamming(
    ch: &ChannelRealization,
    f2: &InputCovariance,
    p1: f64,
    budget: &SolverBudget,
) -> Result<InputCovariance> {
    let hb = whitener(ch.h2(), f2)? * ch.h1();
    let ge = whitener(ch.g2(), f2)? * ch.g1();
    sdlc1_maximize(&hb, &ge, p1, budget)
}

/// Alternating optimization for Gaussian-noise jamming, keeping the best
/// iterate (the initial uniform point included).
pub fn optimize_gn_mimo(
    ch: &ChannelRealization,
    p1: f64,
    p2: f64,
    budget: &SolverBudget,
) -> Result<MimoSolution> {
    check_power("p1", p1)?;
    check_power("p2", p2)?;
    budget.validate()?;
    let mut f1 = InputCovariance::uniform(ch.t1(), p1);
    let mut f2 = InputCovariance::uniform(ch.t2(), p2);
    let mut best = (rate_gn_jamming(ch, &f1, &f2)?.rs, f1.clone(), f2.clone());
    let mut consider = |f1: &InputCovariance, f2: &InputCovariance| -> Result<()> {
        let rs = rate_gn_jamming(ch, f1, f2)?.rs;
        if rs > best.0 {
            best = (rs, f1.clone(), f2.clone());
        }
        Ok(())
    };
    for _ in 0..budget.l1 {
        f1 = user1_against_jamming(ch, &f2, p1, budget)?;
        consider(&f1, &f2)?;
        for _ in 0..budget.l2 {
            f2 = sdlc2_step(ch, &f1, &f2, p2, budget)?;
            consider(&f1, &f2)?;
        }
    }
    let (rs, f1, f2) = best;
    Ok(MimoSolution {
        scheme: Scheme::Gn,
        f1,
        f2,
        rs,
        candidate: None,
        bounds: None,
    })
}

/// Alternation for the bound where user 2 is noise at the eavesdropper.
/// Bob decodes user 2 first, so only the eavesdropper sees it as noise.
fn hat_iterates(
    ch: &ChannelRealization,
    p1: f64,
    p2: f64,
    budget: &SolverBudget,
    pool: &mut Vec<(InputCovariance, InputCovariance)>,
) -> Result<()> {
    let mut f1 = InputCovariance::uniform(ch.t1(), p1);
    let mut f2 = InputCovariance::uniform(ch.t2(), p2);
    pool.push((f1.clone(), f2.clone()));
    for _ in 0..budget.alt_iters {
        let ge = whitener(ch.g2(), &f2)? * ch.g1();
        f1 = sdlc1_maximize(ch.h1(), &ge, p1, budget)?;
        pool.push((f1.clone(), f2.clone()));
        // Jamming helps through ln|I + G₂F₂G₂ᴴ| − ln|I + D₁ + G₂F₂G₂ᴴ|.
        let ge2 = whitener(ch.g1(), &f1)? * ch.g2();
        f2 = sdlc1_maximize(ch.g2(), &ge2, p2, budget)?;
        pool.push((f1.clone(), f2.clone()));
    }
    Ok(())
}

/// Alternation for the joint-decoding bound.
fn tilde_iterates(
    ch: &ChannelRealization,
    p1: f64,
    p2: f64,
    budget: &SolverBudget,
    pool: &mut Vec<(InputCovariance, InputCovariance)>,
) -> Result<()> {
    let mut f1 = InputCovariance::uniform(ch.t1(), p1);
    let mut f2 = InputCovariance::uniform(ch.t2(), p2);
    pool.push((f1.clone(), f2.clone()));
    for _ in 0..budget.alt_iters {
        f1 = user1_against_jamming(ch, &f2, p1, budget)?;
        pool.push((f1.clone(), f2.clone()));
        let hb2 = whitener(ch.h1(), &f1)? * ch.h2();
        let ge2 = whitener(ch.g1(), &f1)? * ch.g2();
        f2 = sdlc1_maximize(&hb2, &ge2, p2, budget)?;
        pool.push((f1.clone(), f2.clone()));
    }
    Ok(())
}

/// First index maximizing `key`.
fn argmax(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, v) in values.iter().enumerate() {
        if *v > values[best] {
            best = i;
        }
    }
    best
}

/// SIT-CJ: run both jamming alternations and the no-jamming solver, pick the
/// point maximizing each bound over everything visited, and keep whichever
/// candidate yields the largest SIT-CJ rate.
///
/// Every visited `F₁` is also tried with user 2 silent, so the pool always
/// contains points where all three bounds coincide.
pub fn optimize_sit_cj_mimo(
    ch: &ChannelRealization,
    p1: f64,
    p2: f64,
    budget: &SolverBudget,
) -> Result<MimoSolution> {
    check_power("p1", p1)?;
    check_power("p2", p2)?;
    budget.validate()?;
    let bar = optimize_no_mimo(ch, p1, budget)?;
    let silent = InputCovariance::zeros(ch.t2(), p2);

    let mut pool = Vec::new();
    hat_iterates(ch, p1, p2, budget, &mut pool)?;
    tilde_iterates(ch, p1, p2, budget, &mut pool)?;
    let jammed = pool.len();
    for i in 0..jammed {
        let f1 = pool[i].0.clone();
        pool.push((f1, silent.clone()));
    }
    pool.push((bar.f1.clone(), silent.clone()));

    let comps = pool
        .iter()
        .map(|(f1, f2)| secrecy_components(ch, f1, f2))
        .collect::<Result<Vec<_>>>()?;
    let hats: Vec<f64> = comps.iter().map(|c| c.r_hat).collect();
    let tildes: Vec<f64> = comps.iter().map(|c| c.r_tilde).collect();
    let i_hat = argmax(&hats);
    let i_tilde = argmax(&tildes);
    let i_bar = pool.len() - 1;

    let bounds = SitCjBounds {
        hat_max: hats[i_hat],
        tilde_max: tildes[i_tilde],
        hat_lower: comps[i_hat].jamming_bound(),
        tilde_lower: comps[i_tilde].jamming_bound(),
        bar_lower: comps[i_bar].r_bar,
    };

    let choices = [
        (SitCjCandidate::Hat, i_hat),
        (SitCjCandidate::Tilde, i_tilde),
        (SitCjCandidate::Bar, i_bar),
    ];
    let rates = choices
        .iter()
        .map(|&(_, i)| rate_sit_cj(ch, &pool[i].0, &pool[i].1).map(|r| r.rs))
        .collect::<Result<Vec<_>>>()?;
    let k = argmax(&rates);
    let (candidate, i) = choices[k];
    let (f1, f2) = pool.swap_remove(i);
    Ok(MimoSolution {
        scheme: Scheme::SitCj,
        f1,
        f2,
        rs: rates[k],
        candidate: Some(candidate),
        bounds: Some(bounds),
    })
}

/// Dispatch on the scheme.
pub fn optimize_mimo(
    scheme: Scheme,
    ch: &ChannelRealization,
    p1: f64,
    p2: f64,
    budget: &SolverBudget,
) -> Result<MimoSolution> {
    match scheme {
        Scheme::No => optimize_no_mimo(ch, p1, budget),
        Scheme::Gn => optimize_gn_mimo(ch, p1, p2, budget),
        Scheme::SitCj => optimize_sit_cj_mimo(ch, p1, p2, budget),
    }
}
