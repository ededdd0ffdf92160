// `!(x > 0.0)` is used on purpose so that NaN takes the rejecting branch.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub type C64 = num_complex::Complex64;

mod als;
pub mod channel;
pub mod cli;
pub mod dris;
mod error;
pub mod metrics;
pub mod rng;
pub mod sim;
pub mod sris;
pub mod tensor;
pub mod training;

pub use als::{AlsConfig, AlsResult, Termination};
pub use error::{Error, Result};
