//! Complex matrix and 3-way tensor algebra: unfoldings, Kronecker and
//! Khatri-Rao products, vec/unvec and least-squares solves.

mod lstsq;
mod matrix;
mod products;
mod tensor3;

pub use lstsq::{ls_solve, ls_solve_right, pinv, rank, rank_from_gram, solve_gram};
pub use matrix::ComplexMatrix;
pub use products::{khatri_rao, kron, unvec, vec};
pub use tensor3::{ComplexTensor3, Mode};
