//! Rational approximation toolkit: AAA fitting of barycentric interpolants,
//! conversion to rational Krylov (RKFUN) pencils and rational Newton form,
//! roots and poles from small generalized eigenproblems, `r(A)·b` for matrix
//! arguments, and nonlinear eigenvalue problems through a rational surrogate.
//!
//! Everything is generic over the real scalar type ([`scalar::Real`], i.e.
//! `f32` or `f64`); the aliases below fix it to `f64`.

pub mod barycentric;
pub mod error;
pub mod matfun;
pub mod nleigs;
pub mod numkernel;
pub mod problems;
pub mod represent;
pub mod scalar;

pub use error::{Error, Result};

/// Complex `f64`.
pub type Complex64 = num_complex::Complex<f64>;
pub type CMatrix64 = numkernel::CMatrix<f64>;
pub type Barycentric64 = barycentric::BarycentricRational<f64>;
pub type SampleSet64 = barycentric::SampleSet<f64>;
pub type AaaReport64 = barycentric::AaaReport<f64>;
pub type RKFunPencil64 = represent::RKFunPencil<f64>;
pub type Newton64 = represent::NewtonRational<f64>;
pub type EigenValue64 = numkernel::EigenValue<f64>;
pub type SplitNlep64 = nleigs::SplitNlep<f64>;
pub type TargetSet64 = nleigs::TargetSet<f64>;
pub type NlepSolution64 = nleigs::NlepSolution<f64>;
pub type MatFunRequest64 = matfun::MatFunRequest<f64>;
