//! Projected gradient methods on the full covariance and on per-mode powers.

use crate::channel::InputCovariance;
use crate::error::{argument, numeric, Result};
use crate::linalg::{congruence, hermitian_eigen, hermitian_part, identity, inverse_hpd, ln_det_hpd, real_diagonal, CMat};
use crate::mimo::WaterfillMode;

use num_complex::Complex64;

/// Concave log-det objectives of a single covariance `F` (natural log).
#[derive(Debug, Clone)]
pub enum AscentObjective {
    /// `ln|I + hb·F·hbᴴ| − ln|I + ge·F·geᴴ|`.
    SecrecyDifference { hb: CMat, ge: CMat },
    /// `ln|I + h·F·hᴴ|`.
    Capacity { h: CMat },
    /// `ln|I + ĥ·F·ĥᴴ| + ln|I + g·F·gᴴ| − tr(a·F)`: the negated jammer
    /// surrogate.
    GnSurrogate { hhat: CMat, g: CMat, a: CMat },
}

fn log_det_term(h: &CMat, f: &CMat) -> Result<f64> {
    ln_det_hpd(&(identity(h.nrows()) + congruence(h, f)))
}

/// `hᴴ(I + h·F·hᴴ)⁻¹h`, the gradient of `ln|I + h·F·hᴴ|`.
fn log_det_gradient(h: &CMat, f: &CMat) -> Result<CMat> {
    let inv = inverse_hpd(&(identity(h.nrows()) + congruence(h, f)))?;
    Ok(hermitian_part(&(h.adjoint() * inv * h)))
}

impl AscentObjective {
    pub fn dim(&self) -> usize {
        match self {
            Self::SecrecyDifference { hb, .. } => hb.ncols(),
            Self::Capacity { h } => h.ncols(),
            Self::GnSurrogate { hhat, .. } => hhat.ncols(),
        }
    }

    pub fn value(&self, f: &CMat) -> Result<f64> {
        match self {
            Self::SecrecyDifference { hb, ge } => Ok(log_det_term(hb, f)? - log_det_term(ge, f)?),
            Self::Capacity { h } => log_det_term(h, f),
            Self::GnSurrogate { hhat, g, a } => {
                Ok(log_det_term(hhat, f)? + log_det_term(g, f)? - (a * f).trace().re)
            }
        }
    }

    /// Hermitian `G` with `d value = Re tr(G·dF)`.
    pub fn gradient(&self, f: &CMat) -> Result<CMat> {
        let g = match self {
            Self::SecrecyDifference { hb, ge } => log_det_gradient(hb, f)? - log_det_gradient(ge, f)?,
            Self::Capacity { h } => log_det_gradient(h, f)?,
            Self::GnSurrogate { hhat, g, a } => {
                log_det_gradient(hhat, f)? + log_det_gradient(g, f)? - hermitian_part(a)
            }
        };
        if g.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(numeric("gradient has non-finite entries"));
        }
        Ok(g)
    }
}

/// Central-difference gradient along the Hermitian basis directions.
pub fn finite_difference_gradient(obj: &AscentObjective, f: &CMat, h: f64) -> Result<CMat> {
    let n = f.nrows();
    let mut grad = CMat::zeros(n, n);
    let derivative = |dir: &CMat| -> Result<f64> {
        let plus = obj.value(&(f + dir.scale(h)))?;
        let minus = obj.value(&(f - dir.scale(h)))?;
        Ok((plus - minus) / (2.0 * h))
    };
    for i in 0..n {
        let mut d = CMat::zeros(n, n);
        d[(i, i)] = Complex64::new(1.0, 0.0);
        grad[(i, i)] = Complex64::new(derivative(&d)?, 0.0);
        for j in i + 1..n {
            let mut re = CMat::zeros(n, n);
            re[(i, j)] = Complex64::new(1.0, 0.0);
            re[(j, i)] = Complex64::new(1.0, 0.0);
            let mut im = CMat::zeros(n, n);
            im[(i, j)] = Complex64::new(0.0, 1.0);
            im[(j, i)] = Complex64::new(0.0, -1.0);
            let z = Complex64::new(derivative(&re)?, derivative(&im)?) * 0.5;
            grad[(i, j)] = z;
            grad[(j, i)] = z.conj();
        }
    }
    Ok(grad)
}

/// Euclidean projection of a vector onto `{x ≥ 0, Σx ≤ p}`.
fn project_capped_simplex(x: &[f64], p: f64) -> Vec<f64> {
    let clipped: Vec<f64> = x.iter().map(|v| v.max(0.0)).collect();
    if clipped.iter().sum::<f64>() <= p {
        return clipped;
    }
    let mut sorted = x.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let mut cumulative = 0.0;
    let mut tau = 0.0;
    for (k, v) in sorted.iter().enumerate() {
        cumulative += v;
        let candidate = (cumulative - p) / (k + 1) as f64;
        if *v > candidate {
            tau = candidate;
        }
    }
    x.iter().map(|v| (v - tau).max(0.0)).collect()
}

/// Nearest (Frobenius) covariance with nonnegative eigenvalues and trace at
/// most `p`.
pub fn project_covariance(f: &CMat, p: f64) -> CMat {
    let (values, vectors) = hermitian_eigen(f);
    let projected = project_capped_simplex(&values, p);
    hermitian_part(&congruence(&vectors, &real_diagonal(&projected)))
}

/// Maximize a concave objective over `{F ⪰ 0, tr F ≤ p}` from the uniform
/// point. A step that lowers the objective is rejected and the step size
/// halved.
pub fn projected_ascent(obj: &AscentObjective, p: f64, steps: usize, step_size: f64) -> Result<InputCovariance> {
    if !(p.is_finite() && p > 0.0) {
        return Err(argument(format!("power budget {p} must be positive")));
    }
    if !(step_size.is_finite() && step_size > 0.0) {
        return Err(argument("step size must be positive"));
    }
    let t = obj.dim();
    let mut f = identity(t).scale(p / t as f64);
    let mut value = obj.value(&f)?;
    let mut mu = step_size;
    for _ in 0..steps {
        let g = obj.gradient(&f)?;
        let candidate = project_covariance(&(&f + g.scale(mu)), p);
        let v = obj.value(&candidate)?;
        if v >= value {
            f = candidate;
            value = v;
        } else {
            mu *= 0.5;
            if mu < 1e-18 {
                break;
            }
        }
    }
    InputCovariance::from_solver(f, p)
}

/// Minimize `Σ_t mode_t.objective(λ_t)` over `λ ≥ 0`, `Σ‖u_t‖²λ_t ≤ p` by
/// projected gradient in the scaled powers `μ_t = ‖u_t‖²λ_t`.
pub fn projected_descent_modes(modes: &[WaterfillMode], p: f64, steps: usize) -> Result<Vec<f64>> {
    if !(p.is_finite() && p >= 0.0) {
        return Err(argument(format!("power budget {p} must be finite and nonnegative")));
    }
    if modes.is_empty() {
        return Ok(Vec::new());
    }
    let w: Vec<f64> = modes.iter().map(|m| m.u_norm_sq).collect();
    let objective = |mu: &[f64]| -> f64 {
        modes.iter().zip(mu).zip(&w).map(|((m, &x), &wt)| m.objective(x / wt)).sum()
    };
    // Curvature in μ is at most 1/w², so this step never overshoots.
    let mut step = w.iter().map(|x| x * x).fold(f64::INFINITY, f64::min);
    let mut mu = vec![p / modes.len() as f64; modes.len()];
    let mut value = objective(&mu);
    for _ in 0..steps {
        let grad: Vec<f64> = modes
            .iter()
            .zip(&mu)
            .zip(&w)
            .map(|((m, &x), &wt)| m.lagrangian_slope(x / wt, 0.0) / wt)
            .collect();
        let moved: Vec<f64> = mu.iter().zip(&grad).map(|(x, g)| x - step * g).collect();
        let candidate = project_capped_simplex(&moved, p);
        let v = objective(&candidate);
        if v <= value {
            let change: f64 = candidate.iter().zip(&mu).map(|(a, b)| (a - b).abs()).sum();
            mu = candidate;
            value = v;
            if change < 1e-15 * (1.0 + p) {
                break;
            }
        } else {
            step *= 0.5;
        }
    }
    Ok(mu.iter().zip(&w).map(|(x, wt)| x / wt).collect())
}
