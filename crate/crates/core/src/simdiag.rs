//! Simultaneous diagonalization of a pair of PSD Hermitian matrices by one
//! congruence, and PSD whitening.

use num_complex::Complex64;

use crate::error::{domain, Result};
use crate::linalg::{frobenius, hermitian_defect, hermitian_eigen, hermitian_part, real_diagonal, CMat};

/// Default relative threshold for the numerical rank of `q1 + q2`.
pub const DEFAULT_RANK_TOL: f64 = 1e-10;

const HERMITIAN_TOL: f64 = 1e-9;
const PSD_TOL: f64 = 1e-9;
/// Below this off-diagonal mass the reduced matrix is treated as diagonal.
const DIAGONAL_TOL: f64 = 1e-12;

/// `wᴴ·q1·w = diag(η, 0)` and `wᴴ·(q1 + q2)·w = diag(I_r, 0)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SdFactorization {
    pub w: CMat,
    /// Descending, in `[0, 1]`.
    pub eta: Vec<f64>,
    pub rank: usize,
}

impl SdFactorization {
    /// Squared norms of the columns of `w`.
    pub fn column_weights(&self) -> Vec<f64> {
        crate::linalg::column_norms_sq(&self.w)
    }
}

fn check_psd(name: &str, q: &CMat) -> Result<CMat> {
    if q.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(domain(format!("{name} has non-finite entries")));
    }
    if hermitian_defect(q) > HERMITIAN_TOL {
        return Err(domain(format!("{name} is not Hermitian")));
    }
    let q = hermitian_part(q);
    let (values, _) = hermitian_eigen(&q);
    let max = values.first().copied().unwrap_or(0.0).max(0.0);
    let min = values.last().copied().unwrap_or(0.0);
    if min < -PSD_TOL * max.max(frobenius(&q)) {
        return Err(domain(format!("{name} is indefinite (eigenvalue {min})")));
    }
    Ok(q)
}

/// Find `w = w₁·w₂` diagonalizing `q1` and `q2` at once.
///
/// `w₁` whitens the support of `q1 + q2`; `w₂` rotates the whitened `q1`
/// onto its eigenbasis. Columns past the rank span the common null space.
pub fn simultaneous_diagonalize(q1: &CMat, q2: &CMat, rank_tol: f64) -> Result<SdFactorization> {
    if !q1.is_square() || q1.shape() != q2.shape() {
        return Err(crate::error::argument(format!(
            "matrix pair must be square and equal-sized, got {:?} and {:?}",
            q1.shape(),
            q2.shape()
        )));
    }
    let q1 = check_psd("q1", q1)?;
    let q2 = check_psd("q2", q2)?;
    let n = q1.nrows();

    let (upsilon, psi1) = hermitian_eigen(&(&q1 + &q2));
    let top = upsilon.first().copied().unwrap_or(0.0);
    let rank = if top > 0.0 {
        upsilon.iter().filter(|&&v| v > rank_tol * top).count()
    } else {
        0
    };

    let mut scale = vec![1.0; n];
    for (s, v) in scale.iter_mut().zip(&upsilon).take(rank) {
        *s = 1.0 / v.sqrt();
    }
    let w1 = &psi1 * real_diagonal(&scale);

    let reduced = hermitian_part(&(w1.adjoint() * &q1 * &w1));
    let j = reduced.view((0, 0), (rank, rank)).into_owned();
    let (eta, psi2) = reduced_eigen(&j);

    let mut w2 = CMat::identity(n, n);
    w2.view_mut((0, 0), (rank, rank)).copy_from(&psi2);
    let w = w1 * w2;
    let eta = eta.into_iter().map(|v| v.clamp(0.0, 1.0)).collect();
    Ok(SdFactorization { w, eta, rank })
}

/// Eigenpairs of the reduced matrix, descending. When it is already diagonal
/// a permutation is used instead of a numerical eigenbasis, so clustered
/// eigenvalues keep the whitening basis intact.
fn reduced_eigen(j: &CMat) -> (Vec<f64>, CMat) {
    let n = j.nrows();
    let mut off = 0.0;
    for r in 0..n {
        for c in 0..n {
            if r != c {
                off += j[(r, c)].norm_sqr();
            }
        }
    }
    if off.sqrt() > DIAGONAL_TOL {
        return hermitian_eigen(j);
    }
    let diag: Vec<f64> = (0..n).map(|i| j[(i, i)].re).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| diag[b].total_cmp(&diag[a]).then(a.cmp(&b)));
    let mut perm = CMat::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        perm[(src, dst)] = Complex64::new(1.0, 0.0);
    }
    (order.iter().map(|&i| diag[i]).collect(), perm)
}

/// `c^{-1/2}` for Hermitian positive definite `c`.
pub fn inverse_sqrt_psd(c: &CMat) -> Result<CMat> {
    if !c.is_square() {
        return Err(crate::error::argument("matrix must be square"));
    }
    let c = check_psd("c", c)?;
    let (values, vectors) = hermitian_eigen(&c);
    let max = values.first().copied().unwrap_or(0.0);
    if values.iter().any(|&v| v <= 1e-12 * max) || max <= 0.0 && !values.is_empty() {
        return Err(domain("matrix is singular"));
    }
    let inv: Vec<f64> = values.iter().map(|v| 1.0 / v.sqrt()).collect();
    Ok(hermitian_part(&(&vectors * real_diagonal(&inv) * vectors.adjoint())))
}
