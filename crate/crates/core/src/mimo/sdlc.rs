//! Simultaneous-diagonalization based solvers for the two covariance
//! subproblems.
//!
//! `sdlc1` maximizes a secrecy-type difference `ln|I + hb·F·hbᴴ| − ln|I + ge·F·geᴴ|`.
//! `sdlc2` takes one convexified step on the jammer covariance of the
//! Gaussian-noise scheme.

use super::waterfill::{bisect_multiplier, waterfill_modes, WaterfillMode};
use super::SolverBudget;
use crate::channel::{ChannelRealization, InputCovariance};
use crate::error::{argument, Result};
use crate::linalg::{congruence, gram, identity, inverse_hpd, ln_det_hpd, real_diagonal, CMat};
use crate::simdiag::{inverse_sqrt_psd, simultaneous_diagonalize, DEFAULT_RANK_TOL};

/// Output of [`sdlc1_solve`] with the per-mode quantities behind it.
#[derive(Debug, Clone, PartialEq)]
pub struct Sdlc1Solution {
    pub cov: InputCovariance,
    /// Power multiplier; zero when no mode is worth powering.
    pub beta: f64,
    pub eta: Vec<f64>,
    /// Squared column norms of the diagonalizing matrix, active modes only.
    pub weights: Vec<f64>,
    pub lambda: Vec<f64>,
}

/// Maximizer of `ln(ηλ+1) − ln((1−η)λ+1) − β·w·λ` over `λ ≥ 0`.
fn sdlc1_level(eta: f64, w: f64, beta: f64) -> f64 {
    if eta <= 0.5 {
        return 0.0;
    }
    if beta <= 0.0 {
        return f64::INFINITY;
    }
    // Stationarity: (ηλ+1)((1−η)λ+1) = (2η−1)/(βw), i.e. kλ² + λ − c = 0.
    let c = (2.0 * eta - 1.0) / (beta * w) - 1.0;
    if c <= 0.0 {
        return 0.0;
    }
    let k = eta * (1.0 - eta);
    2.0 * c / (1.0 + (1.0 + 4.0 * k * c).sqrt())
}

/// Full solution of the secrecy-difference maximization restricted to
/// covariances diagonalized by the pair `(hbᴴhb, geᴴge)`.
pub fn sdlc1_solve(hb: &CMat, ge: &CMat, p: f64, budget: &SolverBudget) -> Result<Sdlc1Solution> {
    let t = hb.ncols();
    if ge.ncols() != t {
        return Err(argument(format!(
            "hb has {t} columns but ge has {}",
            ge.ncols()
        )));
    }
    if !(p.is_finite() && p >= 0.0) {
        return Err(argument(format!("power budget {p} must be finite and nonnegative")));
    }
    let sd = simultaneous_diagonalize(&gram(hb), &gram(ge), DEFAULT_RANK_TOL)?;
    let weights: Vec<f64> = sd.column_weights().into_iter().take(sd.rank).collect();
    let eta = sd.eta.clone();
    let active = eta.iter().any(|&e| e > 0.5);

    let demand = |beta: f64| -> f64 {
        eta.iter()
            .zip(&weights)
            .map(|(&e, &w)| w * sdlc1_level(e, w, beta))
            .sum()
    };
    let beta = if active && p > 0.0 {
        bisect_multiplier(demand, p, budget)?
    } else {
        0.0
    };
    let lambda: Vec<f64> = if beta > 0.0 {
        eta.iter().zip(&weights).map(|(&e, &w)| sdlc1_level(e, w, beta)).collect()
    } else {
        vec![0.0; sd.rank]
    };

    let mut full = vec![0.0; t];
    full[..sd.rank].copy_from_slice(&lambda);
    let f = congruence(&sd.w, &real_diagonal(&full));
    let cov = InputCovariance::from_solver(f, p)?;
    Ok(Sdlc1Solution { cov, beta, eta, weights, lambda })
}

/// Covariance maximizing `ln|I + hb·F·hbᴴ| − ln|I + ge·F·geᴴ|` within the
/// diagonalizable family, subject to `trace F ≤ p`.
pub fn sdlc1_maximize(hb: &CMat, ge: &CMat, p: f64, budget: &SolverBudget) -> Result<InputCovariance> {
    Ok(sdlc1_solve(hb, ge, p, budget)?.cov)
}

/// Convex surrogate of the negated Gaussian-noise secrecy rate as a function
/// of the jammer covariance, linearized at a previous jammer covariance with
/// user 1's covariance held fixed.
#[derive(Debug, Clone)]
pub struct Sdlc2Surrogate {
    /// Bob's jammer channel whitened by user 1's interference.
    h_white: CMat,
    g2: CMat,
    /// Gradient of the linearized terms.
    a: CMat,
    t2: usize,
}

impl Sdlc2Surrogate {
    pub fn new(ch: &ChannelRealization, f1: &InputCovariance, f2_prev: &InputCovariance) -> Result<Self> {
        if f1.dim() != ch.t1() || f2_prev.dim() != ch.t2() {
            return Err(argument("covariance dimensions do not match the channel"));
        }
        let (b, e) = (ch.b(), ch.e());
        let c1 = congruence(ch.h1(), f1.matrix());
        let d1 = congruence(ch.g1(), f1.matrix());
        let h_white = inverse_sqrt_psd(&(&c1 + identity(b)))? * ch.h2();
        let g_white = inverse_sqrt_psd(&(&d1 + identity(e)))? * ch.g2();

        let bob_jam = inverse_hpd(&(congruence(ch.h2(), f2_prev.matrix()) + identity(b)))?;
        let eve_jam = inverse_hpd(&(congruence(&g_white, f2_prev.matrix()) + identity(e)))?;
        let a1 = ch.h2().adjoint() * bob_jam * ch.h2();
        let a2 = g_white.adjoint() * eve_jam * &g_white;
        let a = crate::linalg::hermitian_part(&(a1 + a2));
        Ok(Self {
            h_white,
            g2: ch.g2().clone(),
            a,
            t2: ch.t2(),
        })
    }

    /// `−ln|I + Ĥ₂F₂Ĥ₂ᴴ| − ln|I + G₂F₂G₂ᴴ| + tr(A·F₂)`, in nats.
    pub fn objective(&self, f2: &InputCovariance) -> Result<f64> {
        let f = f2.matrix();
        let bob = ln_det_hpd(&(identity(self.h_white.nrows()) + congruence(&self.h_white, f)))?;
        let eve = ln_det_hpd(&(identity(self.g2.nrows()) + congruence(&self.g2, f)))?;
        let linear = (&self.a * f).trace().re;
        Ok(-bob - eve + linear)
    }

    /// Diagonalized modes of the surrogate and the basis that carries them.
    pub fn modes(&self) -> Result<(Vec<WaterfillMode>, CMat)> {
        let sd = simultaneous_diagonalize(&gram(&self.h_white), &gram(&self.g2), DEFAULT_RANK_TOL)?;
        let u = sd.w;
        let proj = u.adjoint() * &self.a * &u;
        let weights = crate::linalg::column_norms_sq(&u);
        let modes = (0..sd.rank)
            .map(|t| WaterfillMode::new(sd.eta[t], proj[(t, t)].re, weights[t]))
            .collect();
        Ok((modes, u))
    }

    /// Surrogate minimizer over covariances `U·Λ·Uᴴ` with `trace ≤ p2`.
    pub fn solve(&self, p2: f64, budget: &SolverBudget) -> Result<InputCovariance> {
        if p2 == 0.0 {
            return Ok(InputCovariance::zeros(self.t2, 0.0));
        }
        let (modes, u) = self.modes()?;
        let sol = waterfill_modes(&modes, self.t2, p2, budget)?;
        InputCovariance::from_solver(congruence(&u, &real_diagonal(&sol.lambda)), p2)
    }
}

/// One jammer update of the Gaussian-noise scheme.
pub fn sdlc2_step(
    ch: &ChannelRealization,
    f1: &InputCovariance,
    f2_prev: &InputCovariance,
    p2: f64,
    budget: &SolverBudget,
) -> Result<InputCovariance> {
    if !(p2.is_finite() && p2 >= 0.0) {
        return Err(argument(format!("p2 = {p2} must be finite and nonnegative")));
    }
    Sdlc2Surrogate::new(ch, f1, f2_prev)?.solve(p2, budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::frobenius;
    use num_complex::Complex64;

    #[test]
    fn level_is_stationary() {
        let (eta, w, beta) = (0.8, 1.3, 0.05);
        let l = sdlc1_level(eta, w, beta);
        let slope = eta / (eta * l + 1.0) - (1.0 - eta) / ((1.0 - eta) * l + 1.0) - beta * w;
        assert!(l > 0.0 && slope.abs() < 1e-12);
        assert_eq!(sdlc1_level(0.5, 1.0, 0.1), 0.0);
        assert!((sdlc1_level(1.0, 1.0, 0.25) - 3.0).abs() < 1e-12);
    }

    #[test]
    fn uniform_when_eavesdropper_absent() {
        let sol = sdlc1_solve(&identity(3), &CMat::zeros(2, 3), 6.0, &SolverBudget::default()).unwrap();
        assert!(frobenius(&(sol.cov.matrix() - identity(3).scale(2.0))) < 1e-9);
    }

    #[test]
    fn zero_when_eavesdropper_dominates() {
        let hb = identity(2);
        let ge = identity(2).scale(2.0);
        let sol = sdlc1_solve(&hb, &ge, 5.0, &SolverBudget::default()).unwrap();
        assert_eq!(sol.cov.trace(), 0.0);
    }

    #[test]
    fn silent_jammer_channels_give_zero() {
        let z = CMat::zeros(2, 2);
        let h1 = identity(2);
        let ch = ChannelRealization::new(h1.clone(), z.clone(), h1.scale(0.5), z).unwrap();
        let f1 = InputCovariance::uniform(2, 4.0);
        let f2 = InputCovariance::uniform(2, 4.0);
        let out = sdlc2_step(&ch, &f1, &f2, 4.0, &SolverBudget::default()).unwrap();
        assert_eq!(out.trace(), 0.0);
        let out = sdlc2_step(&ch, &f1, &f2, 0.0, &SolverBudget::default()).unwrap();
        assert_eq!(out.trace(), 0.0);
    }

    #[test]
    fn rejects_mismatched_columns() {
        let hb = CMat::from_element(1, 2, Complex64::new(1.0, 0.0));
        assert!(sdlc1_solve(&hb, &identity(3), 1.0, &SolverBudget::default()).is_err());
    }
}
