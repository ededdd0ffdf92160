use crate::error::{ensure_dims, Result};
use crate::tensor::ComplexMatrix;

/// Kronecker product; block `(i, j)` of the result is `a[i, j] · b`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (ar, ac) = a.shape();
    let (br, bc) = b.shape();
    let mut out = ComplexMatrix::zeros(ar * br, ac * bc);
    for ja in 0..ac {
        for jb in 0..bc {
            let dst = out.col_mut(ja * bc + jb);
            for ia in 0..ar {
                let s = a[(ia, ja)];
                for (d, &x) in dst[ia * br..(ia + 1) * br].iter_mut().zip(b.col(jb)) {
                    *d = s * x;
                }
            }
        }
    }
    out
}

/// Column-wise Kronecker product: column `j` is `kron(a[:, j], b[:, j])`.
pub fn khatri_rao(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    ensure_dims!(
        a.cols() == b.cols(),
        "khatri-rao needs equal column counts, got {} and {}",
        a.cols(),
        b.cols()
    );
    let (ar, br) = (a.rows(), b.rows());
    let mut out = ComplexMatrix::zeros(ar * br, a.cols());
    for j in 0..a.cols() {
        let bj = b.col(j);
        let dst = out.col_mut(j);
        for (ia, &s) in a.col(j).iter().enumerate() {
            for (d, &x) in dst[ia * br..(ia + 1) * br].iter_mut().zip(bj) {
                *d = s * x;
            }
        }
    }
    Ok(out)
}

/// Stacks the columns of `a` into one column vector.
pub fn vec(a: &ComplexMatrix) -> ComplexMatrix {
    ComplexMatrix::column(a.as_slice().to_vec())
}

/// Inverse of [`vec`].
pub fn unvec(v: &ComplexMatrix, rows: usize, cols: usize) -> Result<ComplexMatrix> {
    ensure_dims!(
        v.rows() * v.cols() == rows * cols,
        "cannot reshape {} entries to {rows}x{cols}",
        v.rows() * v.cols()
    );
    ComplexMatrix::from_col_major(rows, cols, v.as_slice().to_vec())
}
