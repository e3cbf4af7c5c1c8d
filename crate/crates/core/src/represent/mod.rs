//! Conversions between rational representations.
//!
//! A barycentric interpolant is rewritten as an RKFUN pencil (for roots and
//! poles via small generalized eigenproblems) or as a rational Newton form
//! (for the linearization of nonlinear eigenproblems).

mod compare;
mod newton;
mod pencil;

pub use compare::{chordal_distance, match_distance};
pub use newton::{bary_to_newton, newton_basis_eval, newton_pencil, NewtonRational};
pub use pencil::{
    bary_to_pencil, ones_reflector, pencil_basis_eval, poles, q_matrix, roots, roots_with_gamma,
    sort_eigenvalues, Normalization, RKFunPencil, NORMALIZATION_TOL,
};
