//! Finite truncations of the isometric representation of `P*` on `ℓ²(P*)`,
//! as exact sparse 0/1 matrices with safety masks, and the operator
//! identities checked on them: isometry, covariance, matrix-unit
//! orthogonality of the stems, and invariance of each height level.

mod basis;
mod checks;
mod operator;

pub use basis::{build_basis, TruncatedBasis};
pub use checks::{check_covariance, check_hk_invariance, check_isometry, check_matrix_units};
pub use operator::{toeplitz_adjoint, toeplitz_op, SparseOperator};
