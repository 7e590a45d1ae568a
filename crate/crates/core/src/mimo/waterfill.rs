//! Jammer power allocation over simultaneously diagonalized modes.
//!
//! Minimizes `Σ_t [−ln(ρ_tλ_t+1) − ln((1−ρ_t)λ_t+1)] + Σ_t a_tλ_t` subject to
//! `λ ≥ 0`, `Σ_t ‖u_t‖²λ_t ≤ p`.

use super::SolverBudget;
use crate::error::{argument, numeric, Result};

/// Collapse `ρ` onto `{0, 1}` within this distance.
const RHO_EDGE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaterfillMode {
    /// Share of the mode seen by the legitimate receiver, in `[0, 1]`.
    pub rho: f64,
    /// Linear cost per unit power.
    pub a: f64,
    /// Power cost of one unit of `λ`.
    pub u_norm_sq: f64,
}

impl WaterfillMode {
    pub fn new(rho: f64, a: f64, u_norm_sq: f64) -> Self {
        Self {
            rho: rho.clamp(0.0, 1.0),
            a,
            u_norm_sq,
        }
    }

    /// Minimizer of the mode's term for the effective slope `s = a + β‖u‖²`.
    pub fn level(&self, beta: f64) -> f64 {
        let s = self.a + beta * self.u_norm_sq;
        if s <= 0.0 {
            return f64::INFINITY;
        }
        if s >= 1.0 {
            return 0.0;
        }
        let rho = self.rho.clamp(0.0, 1.0);
        if rho < RHO_EDGE || rho > 1.0 - RHO_EDGE {
            return 1.0 / s - 1.0;
        }
        // Positive root of  s·k·λ² + (s − 2k)·λ + (s − 1) = 0,  k = ρ(1−ρ),
        // written without the 1/k cancellation.
        let k = rho * (1.0 - rho);
        let disc = (s * (2.0 * rho - 1.0)).powi(2) + 4.0 * k * k;
        2.0 * (1.0 - s) / ((s - 2.0 * k) + disc.sqrt())
    }

    /// `−ln(ρλ+1) − ln((1−ρ)λ+1) + aλ`.
    pub fn objective(&self, lambda: f64) -> f64 {
        -(self.rho * lambda).ln_1p() - ((1.0 - self.rho) * lambda).ln_1p() + self.a * lambda
    }

    /// Derivative of [`Self::objective`] plus `β‖u‖²`.
    pub fn lagrangian_slope(&self, lambda: f64, beta: f64) -> f64 {
        -self.rho / (self.rho * lambda + 1.0) - (1.0 - self.rho) / ((1.0 - self.rho) * lambda + 1.0)
            + self.a
            + beta * self.u_norm_sq
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WaterfillSolution {
    /// One entry per transmit dimension; zero past the active modes.
    pub lambda: Vec<f64>,
    pub beta: f64,
}

impl WaterfillSolution {
    pub fn objective(&self, modes: &[WaterfillMode]) -> f64 {
        modes.iter().zip(&self.lambda).map(|(m, &l)| m.objective(l)).sum()
    }

    pub fn power(&self, modes: &[WaterfillMode]) -> f64 {
        modes.iter().zip(&self.lambda).map(|(m, &l)| m.u_norm_sq * l).sum()
    }
}

fn demand(modes: &[WaterfillMode], beta: f64) -> f64 {
    modes.iter().map(|m| m.u_norm_sq * m.level(beta)).sum()
}

/// Per-mode levels at the smallest multiplier `β ≥ 0` that meets the power
/// budget. Modes past `modes.len()` (up to `t`) get zero power.
pub fn waterfill_modes(
    modes: &[WaterfillMode],
    t: usize,
    p: f64,
    budget: &SolverBudget,
) -> Result<WaterfillSolution> {
    if !(p.is_finite() && p >= 0.0) {
        return Err(argument(format!("power budget {p} must be finite and nonnegative")));
    }
    if modes.len() > t {
        return Err(argument(format!("{} modes exceed dimension {t}", modes.len())));
    }
    for m in modes {
        if !(m.u_norm_sq > 0.0 && m.u_norm_sq.is_finite() && m.a.is_finite() && m.rho.is_finite()) {
            return Err(argument("modes need finite coefficients and positive power weight"));
        }
    }
    let beta = if demand(modes, 0.0) <= p {
        0.0
    } else {
        bisect_multiplier(|b| demand(modes, b), p, budget)?
    };
    let mut lambda = vec![0.0; t];
    for (l, m) in lambda.iter_mut().zip(modes) {
        *l = m.level(beta);
    }
    Ok(WaterfillSolution { lambda, beta })
}

/// Smallest `β > 0` with `demand(β) ≤ p`, for `demand` continuous and
/// nonincreasing with `demand(0⁺) > p`. Returns the feasible end of the
/// final bracket.
pub(crate) fn bisect_multiplier(
    demand: impl Fn(f64) -> f64,
    p: f64,
    budget: &SolverBudget,
) -> Result<f64> {
    let mut hi = 1.0;
    let mut lo = 0.0;
    let mut expansions = 0;
    if demand(hi) > p {
        while demand(hi) > p {
            lo = hi;
            hi *= 2.0;
            expansions += 1;
            if expansions > budget.bisect_max || !hi.is_finite() {
                return Err(numeric(format!(
                    "power multiplier not bracketed: demand still above {p} at beta = {hi}"
                )));
            }
        }
    } else {
        lo = 0.5;
        while demand(lo) <= p {
            hi = lo;
            lo *= 0.5;
            expansions += 1;
            if expansions > budget.bisect_max || lo == 0.0 {
                return Err(numeric(format!(
                    "power multiplier not bracketed: demand below {p} at beta = {lo}"
                )));
            }
        }
    }
    // Run to bracket collapse; the multiplier can be large, so stopping at
    // the power tolerance would leave a visible complementary-slackness gap.
    for _ in 0..budget.bisect_max {
        if demand(hi) == p {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if demand(mid) > p {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let gap = p - demand(hi);
    if !(gap >= 0.0 && gap <= budget.bisect_tol * p.max(f64::MIN_POSITIVE)) {
        return Err(numeric(format!(
            "power multiplier bisection stalled in [{lo}, {hi}] with slack {gap}"
        )));
    }
    Ok(hi)
}
