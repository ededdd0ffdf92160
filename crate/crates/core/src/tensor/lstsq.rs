//! Least-squares solves.
//!
//! [`ls_solve`] is the reference route: a thin SVD with the singular-value
//! cutoff `max(rows, cols) · ε · σ_max`, which yields the minimum-norm
//! solution `a⁺·b` whether or not `a` has full rank. [`solve_gram`] is the
//! fast route used inside the estimators when the Gram matrix `aᴴa` is
//! already available in structured form; it refuses (returns `None`) as soon
//! as the Cholesky pivots indicate that the normal equations would lose
//! accuracy, and callers then fall back to the SVD route.

use faer::linalg::solvers::Solve;
use faer::Side;

use crate::error::{ensure_dims, Error, Result};
use crate::tensor::ComplexMatrix;
use crate::C64;

/// Smallest accepted `min(diag L)² / max(diag L)²` for a Cholesky factor of a
/// Gram matrix. Roughly bounds the condition number of the underlying system
/// matrix by 1e4.
const GRAM_PIVOT_RATIO: f64 = 1e-8;

struct ThinSvd {
    u: ComplexMatrix,
    s: Vec<f64>,
    v: ComplexMatrix,
}

fn thin_svd(a: &ComplexMatrix) -> Result<ThinSvd> {
    let svd = a
        .as_faer()
        .thin_svd()
        .map_err(|e| Error::LinAlg(format!("svd did not converge: {e:?}")))?;
    let s = (0..svd.S().dim()).map(|i| svd.S()[i].re).collect();
    Ok(ThinSvd {
        u: ComplexMatrix::from_faer(svd.U()),
        s,
        v: ComplexMatrix::from_faer(svd.V()),
    })
}

fn cutoff(rows: usize, cols: usize, s: &[f64]) -> f64 {
    let smax = s.iter().copied().fold(0.0, f64::max);
    rows.max(cols) as f64 * f64::EPSILON * smax
}

fn check_finite(m: &ComplexMatrix, what: &str) -> Result<()> {
    if m.is_finite() {
        Ok(())
    } else {
        Err(Error::Contract(format!("{what} contains non-finite entries")))
    }
}

/// Moore-Penrose pseudoinverse.
pub fn pinv(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    let (m, n) = a.shape();
    ls_solve(a, &ComplexMatrix::identity(m)).inspect(|x| debug_assert_eq!(x.shape(), (n, m)))
}

/// Minimum-norm minimiser of `‖a·x − b‖_F`, i.e. `a⁺·b`.
pub fn ls_solve(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    ensure_dims!(
        a.rows() == b.rows(),
        "least squares needs matching row counts, got {} and {}",
        a.rows(),
        b.rows()
    );
    check_finite(a, "system matrix")?;
    check_finite(b, "right-hand side")?;
    if a.rows() == 0 || a.cols() == 0 {
        return Ok(ComplexMatrix::zeros(a.cols(), b.cols()));
    }
    let ThinSvd { u, s, v } = thin_svd(a)?;
    let tau = cutoff(a.rows(), a.cols(), &s);
    // x = V Σ⁺ Uᴴ b
    let mut coeffs = u.adjoint_matmul(b)?;
    let inv: Vec<C64> = s
        .iter()
        .map(|&sv| {
            if sv > tau && sv > 0.0 {
                C64::new(1.0 / sv, 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        })
        .collect();
    coeffs = coeffs.scale_rows(&inv)?;
    v.matmul(&coeffs)
}

/// Minimum-norm minimiser of `‖x·a − b‖_F`, i.e. `b·a⁺`.
pub fn ls_solve_right(b: &ComplexMatrix, a: &ComplexMatrix) -> Result<ComplexMatrix> {
    ensure_dims!(
        a.cols() == b.cols(),
        "right least squares needs matching column counts, got {} and {}",
        a.cols(),
        b.cols()
    );
    Ok(ls_solve(&a.adjoint(), &b.adjoint())?.adjoint())
}

/// Numerical rank with the same cutoff as [`ls_solve`].
pub fn rank(a: &ComplexMatrix) -> Result<usize> {
    check_finite(a, "matrix")?;
    if a.rows() == 0 || a.cols() == 0 {
        return Ok(0);
    }
    let s: Vec<f64> = a
        .as_faer()
        .singular_values()
        .map_err(|e| Error::LinAlg(format!("svd did not converge: {e:?}")))?;
    let tau = cutoff(a.rows(), a.cols(), &s);
    Ok(s.iter().filter(|&&x| x > tau && x > 0.0).count())
}

/// Rank of a system matrix `z` given only its Gram matrix `g = zᴴz` and the
/// row count of `z`. Eigenvalues of `g` are squared singular values of `z`,
/// but they are only resolved down to `n · ε · λ_max`, so the threshold sits at
/// that level rather than at the square of the SVD cutoff.
pub fn rank_from_gram(g: &ComplexMatrix, rows_of_z: usize) -> Result<usize> {
    ensure_dims!(g.rows() == g.cols(), "gram matrix must be square");
    check_finite(g, "gram matrix")?;
    if g.rows() == 0 {
        return Ok(0);
    }
    let ev = g
        .as_faer()
        .self_adjoint_eigenvalues(Side::Lower)
        .map_err(|e| Error::LinAlg(format!("eigensolver did not converge: {e:?}")))?;
    let lmax = ev.iter().copied().fold(0.0, f64::max);
    let tau = rows_of_z.max(g.rows()) as f64 * f64::EPSILON * lmax * 16.0;
    Ok(ev.iter().filter(|&&x| x > tau && x > 0.0).count())
}

/// Solves `g·x = rhs` for a Hermitian positive definite `g` through Cholesky.
///
/// Returns `None` when the factorisation fails or the pivots spread beyond
/// the accepted ratio; the caller is expected to fall back to [`ls_solve`].
pub fn solve_gram(g: &ComplexMatrix, rhs: &ComplexMatrix) -> Result<Option<ComplexMatrix>> {
    ensure_dims!(g.rows() == g.cols(), "gram matrix must be square");
    ensure_dims!(
        g.rows() == rhs.rows(),
        "gram system {}x{} vs rhs {} rows",
        g.rows(),
        g.cols(),
        rhs.rows()
    );
    if !g.is_finite() || !rhs.is_finite() {
        return Err(Error::Contract("normal equations contain non-finite entries".into()));
    }
    if g.rows() == 0 {
        return Ok(Some(ComplexMatrix::zeros(0, rhs.cols())));
    }
    let Ok(llt) = g.as_faer().llt(Side::Lower) else {
        return Ok(None);
    };
    let l = llt.L();
    let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
    for i in 0..l.nrows() {
        let d = l[(i, i)].re;
        lo = lo.min(d * d);
        hi = hi.max(d * d);
    }
    if !(hi > 0.0) || lo / hi < GRAM_PIVOT_RATIO {
        return Ok(None);
    }
    let x = llt.solve(rhs.as_faer());
    Ok(Some(ComplexMatrix::from_faer(x.as_ref())))
}
