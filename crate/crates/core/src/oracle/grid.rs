//! Exhaustive grid search over the two scalar powers of single-antenna users.

use rayon::prelude::*;

use crate::channel::ChannelRealization;
use crate::error::{argument, Result};
use crate::rates::Scheme;
use crate::simo::{sit_cj_case, QuadraticCoefficients, SimoGains, SitCjCase};

#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    /// Uniform nodes per axis, endpoints included.
    pub steps: usize,
    /// `(lo, hi)` for `f₁` then `f₂`.
    pub axes: Vec<(f64, f64)>,
    /// Extra nodes per axis; values outside the axis range are dropped.
    pub extra: Vec<Vec<f64>>,
}

impl GridSpec {
    pub fn new(steps: usize, axes: Vec<(f64, f64)>) -> Result<Self> {
        if steps < 2 {
            return Err(argument("grid needs at least 2 steps per axis"));
        }
        if axes.is_empty() || axes.len() > 2 {
            return Err(argument("grid needs one or two axes"));
        }
        for &(lo, hi) in &axes {
            if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
                return Err(argument(format!("axis [{lo}, {hi}] is not an interval")));
            }
        }
        let extra = vec![Vec::new(); axes.len()];
        Ok(Self { steps, axes, extra })
    }

    /// `[0, p1] × [0, p2]`.
    pub fn powers(steps: usize, p1: f64, p2: f64) -> Result<Self> {
        Self::new(steps, vec![(0.0, p1), (0.0, p2)])
    }

    pub fn with_nodes(mut self, axis: usize, nodes: &[f64]) -> Self {
        if let Some(e) = self.extra.get_mut(axis) {
            e.extend_from_slice(nodes);
        }
        self
    }

    fn nodes(&self, axis: usize) -> Vec<f64> {
        let Some(&(lo, hi)) = self.axes.get(axis) else {
            return vec![0.0];
        };
        let n = self.steps - 1;
        let mut v: Vec<f64> = (0..=n).map(|i| lo + (hi - lo) * i as f64 / n as f64).collect();
        v[n] = hi;
        v.extend(self.extra[axis].iter().copied().filter(|x| *x >= lo && *x <= hi));
        v.sort_by(f64::total_cmp);
        v.dedup();
        v
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridResult {
    pub f1: f64,
    pub f2: f64,
    pub value: f64,
}

/// Scalar channel quantities and rates through 2×2 Gram determinants:
/// `|I + f₁h₁h₁ᴴ + f₂h₂h₂ᴴ| = (1+f₁‖h₁‖²)(1+f₂‖h₂‖²) − f₁f₂|h₁ᴴh₂|²`.
struct GramRates {
    h: [f64; 3],
    g: [f64; 3],
}

impl GramRates {
    fn new(ch: &ChannelRealization) -> Self {
        let norm = |m: &crate::CMat| m.iter().map(|z| z.norm_sqr()).sum::<f64>();
        let cross = |a: &crate::CMat, b: &crate::CMat| {
            a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum::<num_complex::Complex64>().norm_sqr()
        };
        Self {
            h: [norm(ch.h1()), norm(ch.h2()), cross(ch.h1(), ch.h2())],
            g: [norm(ch.g1()), norm(ch.g2()), cross(ch.g1(), ch.g2())],
        }
    }

    fn joint([n1, n2, x]: [f64; 3], f1: f64, f2: f64) -> f64 {
        ((1.0 + f1 * n1) * (1.0 + f2 * n2) - f1 * f2 * x).ln()
    }

    fn value(&self, scheme: Scheme, f1: f64, f2: f64) -> f64 {
        let bob1 = (f1 * self.h[0]).ln_1p();
        let bob2 = (f2 * self.h[1]).ln_1p();
        let eve1 = (f1 * self.g[0]).ln_1p();
        let eve2 = (f2 * self.g[1]).ln_1p();
        let bob12 = Self::joint(self.h, f1, f2);
        let eve12 = Self::joint(self.g, f1, f2);
        let plus = |x: f64| x.max(0.0);
        let nats = match scheme {
            Scheme::No => plus(bob1 - eve1),
            Scheme::Gn => plus((bob12 - bob2) - (eve12 - eve2)),
            Scheme::SitCj => {
                let hat = plus(bob1 - (eve12 - eve2));
                let tilde = plus(bob12 - eve12);
                let bar = plus(bob1 - eve1);
                hat.min(tilde).max(bar)
            }
        };
        nats / std::f64::consts::LN_2
    }
}

/// Analytic breakpoints worth adding as grid nodes: the crossing power of
/// user 1 and the stationary point of the jamming power.
pub fn simo_breakpoints(ch: &ChannelRealization, p1: f64, p2: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    let gains = SimoGains::new(ch)?;
    let mut f1_nodes = Vec::new();
    if let SitCjCase::Split { p0_prime } = sit_cj_case(ch, p1)? {
        f1_nodes.push(p0_prime);
    }
    let q = QuadraticCoefficients::new(&gains, p1);
    let mut f2_nodes: Vec<f64> = q.p0.into_iter().collect();
    if q.b != 0.0 {
        f2_nodes.push(-q.c / q.b);
    }
    f2_nodes.retain(|x| x.is_finite() && *x > 0.0 && *x < p2);
    Ok((f1_nodes, f2_nodes))
}

/// Maximize a scheme's secrecy rate over the grid. Ties resolve to the
/// lexicographically smallest `(f₁, f₂)`.
pub fn grid_search_simo(
    scheme: Scheme,
    ch: &ChannelRealization,
    spec: &GridSpec,
) -> Result<GridResult> {
    if !ch.is_simo() {
        return Err(argument(format!(
            "grid search needs single-antenna users, got T1 = {}, T2 = {}",
            ch.t1(),
            ch.t2()
        )));
    }
    let rates = GramRates::new(ch);
    let f1s = spec.nodes(0);
    let f2s = if scheme == Scheme::No { vec![0.0] } else { spec.nodes(1) };

    let rows: Vec<GridResult> = f1s
        .par_iter()
        .map(|&f1| {
            let mut best = GridResult { f1, f2: f2s[0], value: rates.value(scheme, f1, f2s[0]) };
            for &f2 in &f2s[1..] {
                let v = rates.value(scheme, f1, f2);
                if v > best.value {
                    best = GridResult { f1, f2, value: v };
                }
            }
            best
        })
        .collect();

    let mut best = rows[0];
    for r in &rows[1..] {
        if r.value > best.value {
            best = *r;
        }
    }
    Ok(best)
}
