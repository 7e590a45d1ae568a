#![allow(dead_code)]

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use sitcj_core::{CMat, InputCovariance};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian(rng: &mut ChaCha8Rng, r: usize, c: usize) -> CMat {
    CMat::from_fn(r, c, |_, _| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
}

/// Random covariance of random rank with trace in `(0, p]`.
pub fn covariance(rng: &mut ChaCha8Rng, t: usize, p: f64) -> InputCovariance {
    let k = rng.random_range(1..=t);
    let x = gaussian(rng, t, k);
    let xx = &x * x.adjoint();
    let tr: f64 = (0..t).map(|i| xx[(i, i)].re).sum();
    let s = rng.random_range(0.05..=1.0);
    InputCovariance::new(xx.scale(p * s / tr), p).unwrap()
}

/// Laplace expansion along the first row.
pub fn cofactor_det(m: &CMat) -> Complex64 {
    let n = m.nrows();
    if n == 1 {
        return m[(0, 0)];
    }
    let mut total = Complex64::new(0.0, 0.0);
    for j in 0..n {
        let minor = m.clone().remove_row(0).remove_column(j);
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        total += m[(0, j)] * cofactor_det(&minor) * sign;
    }
    total
}

pub fn log2_det(m: &CMat) -> f64 {
    cofactor_det(m).re.log2()
}

/// `log₂|I + Σ hᵢ·fᵢ·hᵢᴴ|`.
pub fn log2_det_sum(rows: usize, terms: &[(&CMat, &CMat)]) -> f64 {
    let mut m = CMat::identity(rows, rows);
    for (h, f) in terms {
        m += *h * *f * h.adjoint();
    }
    log2_det(&m)
}

pub fn random_unitary(rng: &mut ChaCha8Rng, n: usize) -> CMat {
    gaussian(rng, n, n).qr().q()
}
