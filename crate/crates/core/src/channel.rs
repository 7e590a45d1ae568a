//! Channel realizations and transmit covariances.
//!
//! Both receivers see unit-variance white noise, so every channel matrix is
//! expressed in noise-normalized units and powers are linear SNR values.

use num_complex::Complex64;

use crate::error::{argument, domain, Result};
use crate::linalg::{frobenius, hermitian_defect, hermitian_eigen, hermitian_part, real_trace, CMat};

/// The four channel matrices of the two-user wiretap channel.
///
/// `h1: B×T₁`, `h2: B×T₂` go to the legitimate receiver and
/// `g1: E×T₁`, `g2: E×T₂` to the eavesdropper.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelRealization {
    h1: CMat,
    h2: CMat,
    g1: CMat,
    g2: CMat,
}

impl ChannelRealization {
    pub fn new(h1: CMat, h2: CMat, g1: CMat, g2: CMat) -> Result<Self> {
        let (b, t1) = h1.shape();
        let (e, t2) = g2.shape();
        if b == 0 || e == 0 || t1 == 0 || t2 == 0 {
            return Err(argument("channel dimensions must be positive"));
        }
        if h2.shape() != (b, t2) {
            return Err(argument(format!(
                "h2 is {:?}, expected ({b}, {t2})",
                h2.shape()
            )));
        }
        if g1.shape() != (e, t1) {
            return Err(argument(format!(
                "g1 is {:?}, expected ({e}, {t1})",
                g1.shape()
            )));
        }
        for (name, m) in [("h1", &h1), ("h2", &h2), ("g1", &g1), ("g2", &g2)] {
            if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
                return Err(argument(format!("{name} has non-finite entries")));
            }
        }
        Ok(Self { h1, h2, g1, g2 })
    }

    /// Single-antenna users: each argument is one column vector.
    pub fn simo(
        h1: &[Complex64],
        h2: &[Complex64],
        g1: &[Complex64],
        g2: &[Complex64],
    ) -> Result<Self> {
        Self::new(
            CMat::from_column_slice(h1.len(), 1, h1),
            CMat::from_column_slice(h2.len(), 1, h2),
            CMat::from_column_slice(g1.len(), 1, g1),
            CMat::from_column_slice(g2.len(), 1, g2),
        )
    }

    pub fn h1(&self) -> &CMat {
        &self.h1
    }
    pub fn h2(&self) -> &CMat {
        &self.h2
    }
    pub fn g1(&self) -> &CMat {
        &self.g1
    }
    pub fn g2(&self) -> &CMat {
        &self.g2
    }
    /// Receive antennas at the legitimate receiver.
    pub fn b(&self) -> usize {
        self.h1.nrows()
    }
    /// Receive antennas at the eavesdropper.
    pub fn e(&self) -> usize {
        self.g1.nrows()
    }
    pub fn t1(&self) -> usize {
        self.h1.ncols()
    }
    pub fn t2(&self) -> usize {
        self.h2.ncols()
    }

    pub fn is_simo(&self) -> bool {
        self.t1() == 1 && self.t2() == 1
    }

    /// Apply receive-side transforms: `h ← ub·h`, `g ← ue·g`.
    pub fn map_receivers(&self, ub: &CMat, ue: &CMat) -> Result<Self> {
        if ub.shape() != (self.b(), self.b()) || ue.shape() != (self.e(), self.e()) {
            return Err(argument("receiver transforms must be square and match B, E"));
        }
        Self::new(ub * &self.h1, ub * &self.h2, ue * &self.g1, ue * &self.g2)
    }
}

const HERMITIAN_TOL: f64 = 1e-10;
const PSD_TOL: f64 = 1e-10;
const BUDGET_TOL: f64 = 1e-9;

/// A transmit covariance `f ⪰ 0` with its trace budget.
#[derive(Debug, Clone, PartialEq)]
pub struct InputCovariance {
    f: CMat,
    budget: f64,
}

impl InputCovariance {
    /// Validates Hermitian symmetry, positive semidefiniteness and the trace
    /// budget; the stored matrix is the Hermitian part of `f`.
    pub fn new(f: CMat, budget: f64) -> Result<Self> {
        if !f.is_square() {
            return Err(argument("covariance must be square"));
        }
        if !(budget.is_finite() && budget >= 0.0) {
            return Err(argument(format!("power budget {budget} must be finite and nonnegative")));
        }
        if f.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(domain("covariance has non-finite entries"));
        }
        if hermitian_defect(&f) > HERMITIAN_TOL {
            return Err(domain("covariance is not Hermitian"));
        }
        let f = hermitian_part(&f);
        let trace = real_trace(&f);
        let scale = trace.max(frobenius(&f));
        if f.nrows() > 0 {
            let (values, _) = hermitian_eigen(&f);
            let min = values.last().copied().unwrap_or(0.0);
            if min < -PSD_TOL * scale {
                return Err(domain(format!("covariance has negative eigenvalue {min}")));
            }
        }
        if trace > budget * (1.0 + BUDGET_TOL) {
            return Err(domain(format!("trace {trace} exceeds budget {budget}")));
        }
        Ok(Self { f, budget })
    }

    pub fn zeros(t: usize, budget: f64) -> Self {
        Self {
            f: CMat::zeros(t, t),
            budget: budget.max(0.0),
        }
    }

    /// Uniform power `(budget / t)·I`.
    pub fn uniform(t: usize, budget: f64) -> Self {
        let budget = budget.max(0.0);
        let level = if t == 0 { 0.0 } else { budget / t as f64 };
        Self {
            f: CMat::identity(t, t).scale(level),
            budget,
        }
    }

    /// A 1×1 covariance holding transmit power `power`.
    pub fn scalar(power: f64, budget: f64) -> Result<Self> {
        Self::new(CMat::from_element(1, 1, Complex64::new(power, 0.0)), budget)
    }

    /// Accept a solver iterate: symmetrize, and rescale if rounding pushed the
    /// trace past the budget.
    pub(crate) fn from_solver(f: CMat, budget: f64) -> Result<Self> {
        let mut f = hermitian_part(&f);
        let trace = real_trace(&f);
        if trace > budget && trace > 0.0 {
            f = f.scale(budget / trace);
        }
        Self::new(f, budget)
    }

    pub fn matrix(&self) -> &CMat {
        &self.f
    }
    pub fn budget(&self) -> f64 {
        self.budget
    }
    pub fn dim(&self) -> usize {
        self.f.nrows()
    }
    pub fn trace(&self) -> f64 {
        real_trace(&self.f)
    }
}
