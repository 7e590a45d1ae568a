//! Closed-form power control when both users have a single transmit antenna.
//!
//! With `T₁ = T₂ = 1` every rate depends on the channels only through six
//! Gram quantities, and the optimal powers sit at a handful of analytic
//! candidate points.

use crate::channel::ChannelRealization;
use crate::error::{argument, Result};
use crate::rates::Scheme;

/// Optimal powers and the resulting secrecy rate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimoSolution {
    pub scheme: Scheme,
    pub f1: f64,
    pub f2: f64,
    pub rs: f64,
}

/// Inner products of the four channel vectors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimoGains {
    /// `‖h₁‖²`
    pub h11: f64,
    /// `‖h₂‖²`
    pub h22: f64,
    /// `|h₁ᴴh₂|²`
    pub h12: f64,
    pub g11: f64,
    pub g22: f64,
    pub g12: f64,
}

impl SimoGains {
    pub fn new(ch: &ChannelRealization) -> Result<Self> {
        if !ch.is_simo() {
            return Err(argument(format!(
                "single-antenna users required, got T1 = {}, T2 = {}",
                ch.t1(),
                ch.t2()
            )));
        }
        let dot = |a: &crate::CMat, b: &crate::CMat| (a.adjoint() * b)[(0, 0)];
        Ok(Self {
            h11: dot(ch.h1(), ch.h1()).re,
            h22: dot(ch.h2(), ch.h2()).re,
            h12: dot(ch.h1(), ch.h2()).norm_sqr(),
            g11: dot(ch.g1(), ch.g1()).re,
            g22: dot(ch.g2(), ch.g2()).re,
            g12: dot(ch.g1(), ch.g2()).norm_sqr(),
        })
    }

    /// `h₁ᴴ(f₂h₂h₂ᴴ + I)⁻¹h₁`
    pub fn bob_user1_jammed(&self, f2: f64) -> f64 {
        self.h11 - f2 * self.h12 / (1.0 + f2 * self.h22)
    }

    /// `g₁ᴴ(f₂g₂g₂ᴴ + I)⁻¹g₁`
    pub fn eve_user1_jammed(&self, f2: f64) -> f64 {
        self.g11 - f2 * self.g12 / (1.0 + f2 * self.g22)
    }

    /// `h₂ᴴ(f₁h₁h₁ᴴ + I)⁻¹h₂`
    pub fn bob_user2_masked(&self, f1: f64) -> f64 {
        self.h22 - f1 * self.h12 / (1.0 + f1 * self.h11)
    }

    /// `g₂ᴴ(f₁g₁g₁ᴴ + I)⁻¹g₂`
    pub fn eve_user2_masked(&self, f1: f64) -> f64 {
        self.g22 - f1 * self.g12 / (1.0 + f1 * self.g11)
    }

    /// Unclamped `log₂(1+f₁h₁₁) − log₂(1+f₁g₁₁)`.
    pub fn bar_difference(&self, f1: f64) -> f64 {
        bits((f1 * self.h11).ln_1p() - (f1 * self.g11).ln_1p())
    }

    /// Unclamped `log₂(1+f₁h₁₁) − log₂(1+f₁·g₁ᴴ(f₂g₂g₂ᴴ+I)⁻¹g₁)`.
    pub fn hat_difference(&self, f1: f64, f2: f64) -> f64 {
        bits((f1 * self.h11).ln_1p() - (f1 * self.eve_user1_jammed(f2)).ln_1p())
    }

    /// Unclamped joint-decoding difference `I(X₁,X₂;Y) − I(X₁,X₂;Z)`.
    pub fn tilde_difference(&self, f1: f64, f2: f64) -> f64 {
        let bob = (f2 * self.h22).ln_1p() + (f1 * self.bob_user1_jammed(f2)).ln_1p();
        let eve = (f2 * self.g22).ln_1p() + (f1 * self.eve_user1_jammed(f2)).ln_1p();
        bits(bob - eve)
    }

    /// Unclamped secrecy rate with Gaussian-noise jamming.
    pub fn gn_difference(&self, f1: f64, f2: f64) -> f64 {
        bits((f1 * self.bob_user1_jammed(f2)).ln_1p() - (f1 * self.eve_user1_jammed(f2)).ln_1p())
    }

    pub fn rate(&self, scheme: Scheme, f1: f64, f2: f64) -> f64 {
        match scheme {
            Scheme::No => plus(self.bar_difference(f1)),
            Scheme::Gn => plus(self.gn_difference(f1, f2)),
            Scheme::SitCj => self.jamming_bound(f1, f2).max(plus(self.bar_difference(f1))),
        }
    }

    /// `min{r̂, r̃}` at `(f₁, f₂)`, each clamped.
    pub fn jamming_bound(&self, f1: f64, f2: f64) -> f64 {
        plus(self.hat_difference(f1, f2)).min(plus(self.tilde_difference(f1, f2)))
    }
}

fn bits(nats: f64) -> f64 {
    nats / std::f64::consts::LN_2
}

fn plus(x: f64) -> f64 {
    if x > 0.0 {
        x
    } else {
        0.0
    }
}

fn check_power(name: &str, p: f64) -> Result<()> {
    if p.is_finite() && p >= 0.0 {
        Ok(())
    } else {
        Err(argument(format!("{name} = {p} must be finite and nonnegative")))
    }
}

/// Single-user wiretap solution: full power exactly when Bob's channel is
/// stronger than Eve's.
pub fn solve_no_jamming_simo(ch: &ChannelRealization, p1: f64) -> Result<SimoSolution> {
    if ch.t1() != 1 {
        return Err(argument(format!("T1 must be 1, got {}", ch.t1())));
    }
    check_power("p1", p1)?;
    let h11 = ch.h1().iter().map(|z| z.norm_sqr()).sum::<f64>();
    let g11 = ch.g1().iter().map(|z| z.norm_sqr()).sum::<f64>();
    let f1 = if h11 > g11 { p1 } else { 0.0 };
    let rs = plus(bits((f1 * h11).ln_1p() - (f1 * g11).ln_1p()));
    Ok(SimoSolution { scheme: Scheme::No, f1, f2: 0.0, rs })
}

/// Coefficients of the quadratic whose sign is that of `∂R_GN/∂f₂` at
/// `f₁ = p₁`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadraticCoefficients {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    /// `‖h₂‖²`
    pub alpha2: f64,
    /// `h₂ᴴ(p₁h₁h₁ᴴ+I)⁻¹h₂`
    pub alpha2_hat: f64,
    /// `‖g₂‖²`
    pub beta2: f64,
    /// `g₂ᴴ(p₁g₁g₁ᴴ+I)⁻¹g₂`
    pub beta2_hat: f64,
    /// The root `(−b − √(b²−4ac)) / 2a`, when real, distinct and `a ≠ 0`.
    pub p0: Option<f64>,
}

impl QuadraticCoefficients {
    pub fn new(gains: &SimoGains, p1: f64) -> Self {
        let alpha2 = gains.h22;
        let alpha2_hat = gains.bob_user2_masked(p1);
        let beta2 = gains.g22;
        let beta2_hat = gains.eve_user2_masked(p1);
        let a = (alpha2_hat - alpha2) * beta2 * beta2_hat - (beta2_hat - beta2) * alpha2 * alpha2_hat;
        let b = 2.0 * (alpha2_hat * beta2 - alpha2 * beta2_hat);
        let c = alpha2_hat - alpha2 - beta2_hat + beta2;
        let disc = b * b - 4.0 * a * c;
        let p0 = (a != 0.0 && disc > 0.0).then(|| {
            let root = disc.sqrt();
            // Pick the algebraically equal form that avoids cancellation.
            if b < 0.0 {
                2.0 * c / (-b + root)
            } else {
                (-b - root) / (2.0 * a)
            }
        });
        Self { a, b, c, alpha2, alpha2_hat, beta2, beta2_hat, p0 }
    }

    pub fn discriminant(&self) -> f64 {
        self.b * self.b - 4.0 * self.a * self.c
    }

    pub fn eval(&self, x: f64) -> f64 {
        (self.a * x + self.b) * x + self.c
    }
}

/// Gaussian-noise jamming: user 1 always transmits at full power and the
/// jamming power is chosen among the stationary points and box ends.
pub fn solve_gn_simo(ch: &ChannelRealization, p1: f64, p2: f64) -> Result<SimoSolution> {
    let gains = SimoGains::new(ch)?;
    check_power("p1", p1)?;
    check_power("p2", p2)?;
    let q = QuadraticCoefficients::new(&gains, p1);
    let rate = |f2: f64| gains.rate(Scheme::Gn, p1, f2);
    // Of two candidates `lo < hi`, `hi` must be strictly better to win.
    let pick = |lo: f64, hi: f64| if rate(hi) > rate(lo) { hi } else { lo };
    let in_box = |x: f64| x > 0.0 && x < p2;

    let f2 = if q.a == 0.0 && q.b < 0.0 && in_box(-q.c / q.b) {
        -q.c / q.b
    } else {
        match q.p0 {
            Some(p0) if q.a > 0.0 && in_box(p0) => pick(p0, p2),
            Some(p0) if q.a < 0.0 && in_box(p0) => pick(0.0, p0),
            _ => pick(0.0, p2),
        }
    };
    Ok(SimoSolution { scheme: Scheme::Gn, f1: p1, f2, rs: rate(f2) })
}

fn check_interval(lb: f64, ub: f64) -> Result<()> {
    if !(lb.is_finite() && ub.is_finite() && lb >= 0.0 && lb < ub) {
        return Err(argument(format!("power interval [{lb}, {ub}] must satisfy 0 <= lb < ub")));
    }
    Ok(())
}

/// Maximizer of `r̂` over `f₁ ∈ [lb, ub]`, `f₂ ∈ [0, p₂]`.
///
/// `r̂` only grows with jamming power, and in `f₁` it is monotone with the
/// sign of `h₁₁ − g₁ᴴ(p₂g₂g₂ᴴ+I)⁻¹g₁`.
pub fn solve_subproblem_hat(ch: &ChannelRealization, p1_lb: f64, p1_ub: f64, p2: f64) -> Result<(f64, f64)> {
    let gains = SimoGains::new(ch)?;
    check_interval(p1_lb, p1_ub)?;
    check_power("p2", p2)?;
    let f1 = if gains.h11 > gains.eve_user1_jammed(p2) { p1_ub } else { p1_lb };
    Ok((f1, p2))
}

/// Maximizer of `r̃` over the same box, found among its four corners.
/// Ties go to larger `f₁`, then smaller `f₂`.
pub fn solve_subproblem_tilde(ch: &ChannelRealization, p1_lb: f64, p1_ub: f64, p2: f64) -> Result<(f64, f64)> {
    let gains = SimoGains::new(ch)?;
    check_interval(p1_lb, p1_ub)?;
    check_power("p2", p2)?;
    let corners = [(p1_ub, 0.0), (p1_ub, p2), (p1_lb, 0.0), (p1_lb, p2)];
    let value = |(f1, f2): (f64, f64)| plus(gains.tilde_difference(f1, f2));
    let mut best = corners[0];
    let mut best_value = value(best);
    for &corner in &corners[1..] {
        let v = value(corner);
        if v > best_value {
            best = corner;
            best_value = v;
        }
    }
    Ok(best)
}

/// Which of `r̂`, `r̃` is the binding bound as `f₁` ranges over `[0, p₁]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SitCjCase {
    /// `r̂ ≤ r̃` everywhere.
    Hat,
    /// `r̃ ≤ r̂` everywhere.
    Tilde,
    /// `r̂ ≤ r̃` on `[0, p0_prime]` and `r̂ ≥ r̃` on `[p0_prime, p₁]`.
    Split { p0_prime: f64 },
    /// The crossing could not be located reliably; both subproblems are
    /// solved over the whole interval.
    Unresolved,
}

/// Classify the channel and, in the split case, locate the crossing power
/// where `h₂ᴴ(f₁h₁h₁ᴴ+I)⁻¹h₂ = ‖g₂‖²`.
pub fn sit_cj_case(ch: &ChannelRealization, p1: f64) -> Result<SitCjCase> {
    let gains = SimoGains::new(ch)?;
    check_power("p1", p1)?;
    let alpha2_hat = gains.bob_user2_masked(p1);
    if gains.g22 <= alpha2_hat {
        return Ok(SitCjCase::Hat);
    }
    if gains.g22 >= gains.h22 {
        return Ok(SitCjCase::Tilde);
    }
    Ok(match crossing_power(ch, gains.g22) {
        Some(p) if p > 0.0 && p < p1 => SitCjCase::Split { p0_prime: p },
        _ => SitCjCase::Unresolved,
    })
}

/// Rotate `h₂` into the eigenbasis of `h₁h₁ᴴ` (the `h₁` direction last) and
/// solve `Σ_{i<B}|ĥ₂ᵢ|² + |ĥ₂_B|² / (p·‖h₁‖² + 1) = target` for `p`.
fn crossing_power(ch: &ChannelRealization, target: f64) -> Option<f64> {
    let h1 = ch.h1();
    let (values, vectors) = crate::linalg::hermitian_eigen(&(h1 * h1.adjoint()));
    let h11 = values[0];
    let rotated = vectors.adjoint() * ch.h2();
    // `hermitian_eigen` sorts descending, so the aligned component is first.
    let aligned = rotated[(0, 0)].norm_sqr();
    let orthogonal: f64 = rotated.iter().skip(1).map(|z| z.norm_sqr()).sum();
    let denom = h11 * (target - orthogonal);
    if !(denom > 0.0 && h11 > 0.0) {
        return None;
    }
    let p = aligned / denom - 1.0 / h11;
    p.is_finite().then_some(p)
}

/// SIT-CJ optimum over `[0, p₁] × [0, p₂]`.
pub fn solve_sit_cj_simo(ch: &ChannelRealization, p1: f64, p2: f64) -> Result<SimoSolution> {
    let gains = SimoGains::new(ch)?;
    check_power("p1", p1)?;
    check_power("p2", p2)?;
    let no = solve_no_jamming_simo(ch, p1)?;
    let mut candidates: Vec<(f64, f64)> = Vec::with_capacity(5);
    if p1 > 0.0 {
        match sit_cj_case(ch, p1)? {
            SitCjCase::Hat => candidates.push(solve_subproblem_hat(ch, 0.0, p1, p2)?),
            SitCjCase::Tilde => candidates.push(solve_subproblem_tilde(ch, 0.0, p1, p2)?),
            SitCjCase::Split { p0_prime } => {
                candidates.push(solve_subproblem_hat(ch, 0.0, p0_prime, p2)?);
                candidates.push(solve_subproblem_tilde(ch, p0_prime, p1, p2)?);
            }
            SitCjCase::Unresolved => {
                candidates.push(solve_subproblem_hat(ch, 0.0, p1, p2)?);
                candidates.push(solve_subproblem_tilde(ch, 0.0, p1, p2)?);
            }
        }
    }
    candidates.push((no.f1, 0.0));

    let mut best = candidates[0];
    let mut best_rate = gains.rate(Scheme::SitCj, best.0, best.1);
    for &cand in &candidates[1..] {
        let r = gains.rate(Scheme::SitCj, cand.0, cand.1);
        if r > best_rate {
            best = cand;
            best_rate = r;
        }
    }
    Ok(SimoSolution { scheme: Scheme::SitCj, f1: best.0, f2: best.1, rs: best_rate })
}

/// Closed-form optimum for any scheme.
pub fn solve_simo(scheme: Scheme, ch: &ChannelRealization, p1: f64, p2: f64) -> Result<SimoSolution> {
    match scheme {
        Scheme::No => solve_no_jamming_simo(ch, p1),
        Scheme::Gn => solve_gn_simo(ch, p1, p2),
        Scheme::SitCj => solve_sit_cj_simo(ch, p1, p2),
    }
}
