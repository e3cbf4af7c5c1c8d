//! Dense complex linear algebra used by every other module.

mod eig;
mod householder;
mod lu;
mod matrix;
mod svd;

pub use eig::{
    eig, generalized_eig, generalized_eig_with, hessenberg, schur, EigenResult, EigenValue, GenEigOptions,
    DEFAULT_COND_LIMIT, DEFAULT_INFINITE_TOL,
};
pub use householder::{householder_to_e1, left_null_vector, Reflector};
pub use lu::{cond_one, det, solve, Lu};
pub use matrix::CMatrix;
pub use svd::{jacobi_svd, norm2, singular_values, svd_min_right, RightSvd};
