//! Small dense complex linear-algebra helpers shared by the rate formulas and
//! the solvers.

use nalgebra::{Cholesky, DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{domain, Result};

/// Dense complex matrix.
pub type CMat = DMatrix<Complex64>;

pub fn identity(n: usize) -> CMat {
    CMat::identity(n, n)
}

pub fn frobenius(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// `(m + mᴴ) / 2`.
pub fn hermitian_part(m: &CMat) -> CMat {
    (m + m.adjoint()).scale(0.5)
}

/// `‖m − mᴴ‖_F / max(‖m‖_F, tiny)`; zero for the zero matrix.
pub fn hermitian_defect(m: &CMat) -> f64 {
    let norm = frobenius(m);
    if norm == 0.0 {
        return 0.0;
    }
    frobenius(&(m - m.adjoint())) / norm
}

pub fn real_trace(m: &CMat) -> f64 {
    m.diagonal().iter().map(|z| z.re).sum()
}

/// `h · f · hᴴ`.
pub fn congruence(h: &CMat, f: &CMat) -> CMat {
    h * f * h.adjoint()
}

/// `mᴴ · m`, symmetrized.
pub fn gram(m: &CMat) -> CMat {
    hermitian_part(&(m.adjoint() * m))
}

/// Build a real diagonal matrix as a complex one.
pub fn real_diagonal(values: &[f64]) -> CMat {
    let n = values.len();
    let mut d = CMat::zeros(n, n);
    for (i, v) in values.iter().enumerate() {
        d[(i, i)] = Complex64::new(*v, 0.0);
    }
    d
}

/// Eigendecomposition of a Hermitian matrix with eigenvalues sorted in
/// descending order. Each eigenvector is rotated so that its largest-magnitude
/// entry is real and positive, which pins down the otherwise free phase.
pub fn hermitian_eigen(m: &CMat) -> (Vec<f64>, CMat) {
    let n = m.nrows();
    if n == 0 {
        return (Vec::new(), CMat::zeros(0, 0));
    }
    let eig = SymmetricEigen::new(hermitian_part(m));
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        eig.eigenvalues[j]
            .partial_cmp(&eig.eigenvalues[i])
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(i.cmp(&j))
    });
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vectors = CMat::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        let mut col = eig.eigenvectors.column(src).into_owned();
        fix_phase(col.as_mut_slice());
        vectors.set_column(dst, &col);
    }
    (values, vectors)
}

pub(crate) fn fix_phase(v: &mut [Complex64]) {
    let mut best = 0;
    let mut best_mag = -1.0;
    for (i, z) in v.iter().enumerate() {
        let mag = z.norm();
        if mag > best_mag * (1.0 + 1e-12) {
            best = i;
            best_mag = mag;
        }
    }
    if best_mag > 0.0 {
        let phase = v[best].conj() / best_mag;
        for z in v.iter_mut() {
            *z *= phase;
        }
    }
}

/// Cholesky factorization that also rejects indefinite input. The complex
/// factorization never fails on its own (the square root of a negative pivot
/// is just imaginary), so the pivots are checked here.
pub fn cholesky_hpd(m: &CMat) -> Option<Cholesky<Complex64, nalgebra::Dyn>> {
    let chol = Cholesky::new(hermitian_part(m))?;
    let ok = chol
        .l_dirty()
        .diagonal()
        .iter()
        .all(|z| z.re > 0.0 && z.re.is_finite() && z.im.abs() <= 1e-12 * z.re);
    ok.then_some(chol)
}

/// Natural-log determinant of a Hermitian positive definite matrix.
pub fn ln_det_hpd(m: &CMat) -> Result<f64> {
    if m.nrows() == 0 {
        return Ok(0.0);
    }
    let sym = hermitian_part(m);
    if let Some(chol) = cholesky_hpd(&sym) {
        let l = chol.l_dirty();
        return Ok(l.diagonal().iter().map(|z| 2.0 * z.re.ln()).sum());
    }
    // Cholesky can reject matrices that are PD only up to rounding.
    let (values, _) = hermitian_eigen(&sym);
    if values.iter().any(|&v| v <= 0.0) {
        return Err(domain("matrix is not positive definite"));
    }
    Ok(values.iter().map(|v| v.ln()).sum())
}

/// Base-2 log determinant of a Hermitian positive definite matrix.
pub fn log2_det_hpd(m: &CMat) -> Result<f64> {
    Ok(ln_det_hpd(m)? / std::f64::consts::LN_2)
}

/// Inverse of a Hermitian positive definite matrix via Cholesky.
pub fn inverse_hpd(m: &CMat) -> Result<CMat> {
    cholesky_hpd(m)
        .map(|c| hermitian_part(&c.inverse()))
        .ok_or_else(|| domain("matrix is not positive definite"))
}

/// Column squared norms.
pub fn column_norms_sq(m: &CMat) -> Vec<f64> {
    m.column_iter()
        .map(|c| c.iter().map(|z| z.norm_sqr()).sum())
        .collect()
}
