//! Scalar abstraction shared by every numerical routine in the crate.
//!
//! All kernels are written against [`Real`] and operate on `Complex<T>`.
//! Tolerances are stated for `f64` and rescaled by the ratio of machine
//! epsilons so the same relative accuracy target applies to `f32`.

use std::fmt::{Debug, Display, LowerExp};

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

/// Real floating-point type usable as the base field of the complex kernels.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + Debug
    + Display
    + LowerExp
    + Default
    + Send
    + Sync
    + 'static
{
}

impl<T> Real for T where
    T: Float
        + FloatConst
        + FromPrimitive
        + ToPrimitive
        + NumAssign
        + Debug
        + Display
        + LowerExp
        + Default
        + Send
        + Sync
        + 'static
{
}

/// Complex scalar over `T`.
pub type C<T> = Complex<T>;

/// Converts an `f64` literal into `T`.
#[inline]
pub fn lit<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("f64 literal representable in target type")
}

/// Converts a `usize` into `T`.
#[inline]
pub fn from_usize<T: Real>(n: usize) -> T {
    T::from_usize(n).expect("count representable in target type")
}

/// Rescales a tolerance stated for double precision to the precision of `T`.
///
/// `eps_tol::<f64>(1e-14)` is exactly `1e-14`; for `f32` the value grows by
/// `f32::EPSILON / f64::EPSILON`.
#[inline]
pub fn eps_tol<T: Real>(tol64: f64) -> T {
    lit::<T>(tol64 / f64::EPSILON) * T::epsilon()
}

#[inline]
pub fn czero<T: Real>() -> C<T> {
    Complex::new(T::zero(), T::zero())
}

#[inline]
pub fn cone<T: Real>() -> C<T> {
    Complex::new(T::one(), T::zero())
}

#[inline]
pub fn creal<T: Real>(x: T) -> C<T> {
    Complex::new(x, T::zero())
}

/// `|re| + |im|`, a cheap norm used in convergence tests.
#[inline]
pub fn abs1<T: Real>(z: C<T>) -> T {
    z.re.abs() + z.im.abs()
}

/// Converts a complex value to double precision (for reporting and errors).
#[inline]
pub fn to_c64<T: Real>(z: C<T>) -> Complex<f64> {
    Complex::new(z.re.to_f64().unwrap_or(f64::NAN), z.im.to_f64().unwrap_or(f64::NAN))
}

/// Converts a double-precision complex value into `C<T>`.
#[inline]
pub fn from_c64<T: Real>(z: Complex<f64>) -> C<T> {
    Complex::new(lit(z.re), lit(z.im))
}

#[inline]
pub fn is_finite<T: Real>(z: C<T>) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// Euclidean norm of a complex vector, guarded against overflow.
pub fn vec_norm<T: Real>(v: &[C<T>]) -> T {
    let scale = v.iter().fold(T::zero(), |m, z| m.max(z.re.abs()).max(z.im.abs()));
    if scale == T::zero() || !scale.is_finite() {
        return scale;
    }
    let s = v
        .iter()
        .fold(T::zero(), |acc, z| acc + (*z / scale).norm_sqr());
    scale * s.sqrt()
}

/// Largest modulus in a complex vector.
pub fn vec_norm_inf<T: Real>(v: &[C<T>]) -> T {
    v.iter().fold(T::zero(), |m, z| m.max(z.norm()))
}

/// `xᴴ y`.
pub fn dot_h<T: Real>(x: &[C<T>], y: &[C<T>]) -> C<T> {
    x.iter()
        .zip(y)
        .fold(czero(), |acc, (a, b)| acc + a.conj() * b)
}
