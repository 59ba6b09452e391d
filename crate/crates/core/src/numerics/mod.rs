//! Factorial-scale combinatorics and real rotation-matrix elements.
//!
//! Two independent routes compute `d^j_{m',m}(β)`:
//! [`wigner_d_direct`] evaluates the explicit alternating factorial sum and is
//! trustworthy up to `j ≈ 20` in double precision, while
//! [`RotationGenerator`] diagonalizes the `J_x` generator and stays accurate
//! at every size used here (`j = 50` and beyond).

mod half_int;
mod log_factorial;
mod rotation;
mod tridiag;
mod wigner;

pub use half_int::{HalfInt, WignerIndex};
pub use log_factorial::{LogFactorialTable, DEFAULT_LOG_FACTORIAL_MAX};
pub use rotation::{wigner_d_column_stable, RotationGenerator};
pub use tridiag::{sym_tridiag_eigen, SymTridiagEigen};
pub use wigner::wigner_d_direct;
