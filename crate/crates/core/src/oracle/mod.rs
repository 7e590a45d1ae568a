//! Brute-force reference solvers.
//!
//! These are slow and share no code path with the closed forms and SD-based
//! solvers they check: the grid search evaluates rates through Gram
//! determinants, the ascent works on the full covariance with analytic
//! gradients, and the random search samples covariances directly.

mod ascent;
mod grid;
mod random_search;

pub use ascent::{
    finite_difference_gradient, project_covariance, projected_ascent, projected_descent_modes,
    AscentObjective,
};
pub use grid::{grid_search_simo, simo_breakpoints, GridResult, GridSpec};
pub use random_search::{random_search, RandomSearchResult};
