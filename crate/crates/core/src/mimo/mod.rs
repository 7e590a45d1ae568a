//! Transmit-covariance optimization for multi-antenna users.
//!
//! Every subproblem is reduced to independent scalar modes by simultaneously
//! diagonalizing the two Gram matrices it involves, then solved by a
//! per-mode closed form with a bisected power multiplier.

mod schemes;
mod sdlc;
mod waterfill;

pub use schemes::{optimize_gn_mimo, optimize_mimo, optimize_no_mimo, optimize_sit_cj_mimo};
pub use sdlc::{sdlc1_maximize, sdlc1_solve, sdlc2_step, Sdlc1Solution, Sdlc2Surrogate};
pub use waterfill::{waterfill_modes, WaterfillMode, WaterfillSolution};

use crate::channel::InputCovariance;
use crate::error::{argument, Result};
use crate::rates::Scheme;

/// Iteration counts and bisection settings shared by the MIMO solvers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverBudget {
    /// Outer alternations of the Gaussian-noise solver.
    pub l1: usize,
    /// Jammer updates per outer alternation.
    pub l2: usize,
    /// Alternation rounds for each SIT-CJ subproblem.
    pub alt_iters: usize,
    /// Relative tolerance on the power constraint.
    pub bisect_tol: f64,
    /// Cap on bracket expansions and on bisection steps.
    pub bisect_max: usize,
}

impl Default for SolverBudget {
    fn default() -> Self {
        Self {
            l1: 5,
            l2: 50,
            alt_iters: 5,
            bisect_tol: 1e-9,
            bisect_max: 200,
        }
    }
}

impl SolverBudget {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("l1", self.l1),
            ("l2", self.l2),
            ("alt_iters", self.alt_iters),
            ("bisect_max", self.bisect_max),
        ] {
            if v == 0 {
                return Err(argument(format!("{name} must be positive")));
            }
        }
        if !(self.bisect_tol.is_finite() && self.bisect_tol > 0.0) {
            return Err(argument("bisect_tol must be positive"));
        }
        Ok(())
    }
}

/// Which bound produced the SIT-CJ operating point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SitCjCandidate {
    /// Jamming point tuned for the bound where user 2 is treated as noise.
    Hat,
    /// Jamming point tuned for the joint-decoding bound.
    Tilde,
    /// No-jamming point, user 2 silent.
    Bar,
}

/// Bound values collected while choosing the SIT-CJ operating point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SitCjBounds {
    /// Best `r̂` over every visited point.
    pub hat_max: f64,
    /// Best `r̃` over every visited point.
    pub tilde_max: f64,
    /// `min{r̂, r̃}` at the point maximizing `r̂`.
    pub hat_lower: f64,
    /// `min{r̂, r̃}` at the point maximizing `r̃`.
    pub tilde_lower: f64,
    /// `r̄` at the no-jamming point.
    pub bar_lower: f64,
}

impl SitCjBounds {
    pub fn upper(&self) -> f64 {
        self.hat_max.min(self.tilde_max)
    }

    pub fn lower(&self) -> f64 {
        self.hat_lower.max(self.tilde_lower).max(self.bar_lower)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MimoSolution {
    pub scheme: Scheme,
    pub f1: InputCovariance,
    pub f2: InputCovariance,
    pub rs: f64,
    /// Set for SIT-CJ only.
    pub candidate: Option<SitCjCandidate>,
    pub bounds: Option<SitCjBounds>,
}
