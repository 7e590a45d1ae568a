//! Secrecy and open-message rates of the two-user Gaussian vector wiretap
//! channel with a helper that may jam, and transmit-covariance optimizers for
//! the three schemes: no jamming, Gaussian-noise jamming, and simultaneous
//! information transmission with cooperative jamming (SIT-CJ).
//!
//! Rates are in bits per channel use. Noise is unit-variance and white at both
//! receivers, so channel matrices are in noise-normalized units.

pub mod channel;
pub mod error;
pub mod experiment;
pub mod linalg;
pub mod mimo;
pub mod oracle;
pub mod rates;
pub mod simdiag;
pub mod simo;
pub mod verify;

pub use channel::{ChannelRealization, InputCovariance};
pub use error::{Error, Result};
pub use linalg::CMat;
pub use experiment::{generate_channel, run_experiment, ExperimentConfig, ResultRow, SweepAxis};
pub use mimo::{
    optimize_gn_mimo, optimize_no_mimo, optimize_sit_cj_mimo, sdlc1_maximize, sdlc2_step,
    waterfill_modes, MimoSolution, SitCjCandidate, SolverBudget, WaterfillMode,
};
pub use rates::{
    rate_gn_jamming, rate_no_jamming, rate_report, rate_sit_cj, region_membership,
    secrecy_components, weighted_logdet_rate, RateReport, RateTriple, RegionMembership, Scheme,
    SecrecyComponents,
};
pub use simdiag::{inverse_sqrt_psd, simultaneous_diagonalize, SdFactorization};
pub use simo::{
    solve_gn_simo, solve_no_jamming_simo, solve_simo, solve_sit_cj_simo, solve_subproblem_hat,
    solve_subproblem_tilde, SimoSolution,
};
