//! Exact computations in U(sp(2N)) and U(g^(n,j)).

pub mod error;
pub mod forms;
pub mod hc;
pub mod hw;
pub mod jacobi;
pub mod lie;
pub mod matrix;
pub mod ring;
pub mod scalar;
pub mod uea;

pub use error::{Error, Result};
pub use lie::{build_jacobi, build_sp, LieAlgebra, LieElement};
pub use matrix::Matrix;
pub use ring::{CommPoly, Ring};
pub use scalar::{ExactScalar, Param, ScalarError};
