//! Monte-Carlo search over random feasible covariance pairs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::channel::{ChannelRealization, InputCovariance};
use crate::error::{argument, Result};
use crate::linalg::{real_trace, CMat};
use crate::rates::{rate_report, Scheme};

const CHUNK: usize = 4096;

#[derive(Debug, Clone, PartialEq)]
pub struct RandomSearchResult {
    pub f1: InputCovariance,
    pub f2: InputCovariance,
    pub rs: f64,
}

/// `p·s·XXᴴ / tr(XXᴴ)` with `X` a `t×k` complex Gaussian matrix, `k` uniform
/// in `1..=t`, and the power fraction `s` equal to one half of the time and
/// uniform otherwise. With `allow_off`, one draw in eight is the zero matrix.
fn sample_covariance(rng: &mut ChaCha8Rng, t: usize, p: f64, allow_off: bool) -> CMat {
    if p == 0.0 || (allow_off && rng.random_range(0..8) == 0) {
        return CMat::zeros(t, t);
    }
    let k = rng.random_range(1..=t);
    let x = CMat::from_fn(t, k, |_, _| {
        num_complex::Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    let s = if rng.random_bool(0.5) { 1.0 } else { rng.random::<f64>() };
    let xx = &x * x.adjoint();
    let tr = real_trace(&xx);
    xx.scale(p * s / tr)
}

/// Best secrecy rate of `scheme` over `samples` random covariance pairs.
/// Deterministic in `seed` regardless of the thread count.
pub fn random_search(
    scheme: Scheme,
    ch: &ChannelRealization,
    p1: f64,
    p2: f64,
    samples: usize,
    seed: u64,
) -> Result<RandomSearchResult> {
    if samples == 0 {
        return Err(argument("random search needs at least one sample"));
    }
    let (t1, t2) = (ch.t1(), ch.t2());
    let chunks = samples.div_ceil(CHUNK);
    let best_per_chunk: Vec<Result<(f64, CMat, CMat)>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c as u64);
            let n = CHUNK.min(samples - c * CHUNK);
            let mut best: Option<(f64, CMat, CMat)> = None;
            for _ in 0..n {
                let f1 = sample_covariance(&mut rng, t1, p1, false);
                let f2 = if scheme == Scheme::No {
                    CMat::zeros(t2, t2)
                } else {
                    sample_covariance(&mut rng, t2, p2, true)
                };
                let c1 = InputCovariance::from_solver(f1.clone(), p1)?;
                let c2 = InputCovariance::from_solver(f2.clone(), p2)?;
                let rs = rate_report(scheme, ch, &c1, &c2)?.rs;
                if best.as_ref().is_none_or(|b| rs > b.0) {
                    best = Some((rs, f1, f2));
                }
            }
            Ok(best.expect("chunk is nonempty"))
        })
        .collect();

    let mut best: Option<(f64, CMat, CMat)> = None;
    for r in best_per_chunk {
        let r = r?;
        if best.as_ref().is_none_or(|b| r.0 > b.0) {
            best = Some(r);
        }
    }
    let (rs, f1, f2) = best.expect("at least one chunk");
    Ok(RandomSearchResult {
        f1: InputCovariance::from_solver(f1, p1)?,
        f2: InputCovariance::from_solver(f2, p2)?,
        rs,
    })
}
