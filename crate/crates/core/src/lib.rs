//! Time-frequency analysis on uniform grids: Gabor, Wigner and Cohen-class
//! representations, Weyl/localization/Cohen operators, sharp Lebesgue
//! constants and Donoho–Stark-type uncertainty bounds.

// NaN-rejecting guards are written as `!(x > 0.0)` on purpose.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod constants;
pub mod error;
pub mod exponent;
pub mod fourier;
pub mod grid;
pub mod io;
pub mod operators;
pub mod random;
pub mod tf;
pub mod transforms;
pub mod uncertainty;
pub mod verify;

pub use error::{Error, Result};
pub use exponent::Exponent;
pub use grid::{Grid, MeasurableSet, SetDomain, Signal};
pub use num_complex::Complex64;
pub use operators::OperatorMatrix;
pub use tf::TfFunction;
pub use transforms::CohenKernel;
