//! Nonlinear eigenvalue problems `F(λ)x = 0` through a rational surrogate.
//!
//! Pipeline: sample a random scalar projection `f(z) = uᴴF(z)v` on the
//! boundary of the target set, fit it with AAA, rewrite the interpolant in
//! Newton form, linearize the matrix-valued interpolant
//! `R(z) = Σ_j F(z_j)·b_j(z)` as a companion-type pencil, solve the pencil
//! densely and keep the eigenpairs inside the target with small residual.

mod linearization;
mod pipeline;

pub use linearization::{build_linearization, recover_eigvec, Linearization};
pub use pipeline::{
    approximation_history, residual, solve_nlep, solve_nlep_with, DegreeError, NlepOptions, NlepSolution,
    sample_scale, DEFAULT_NPTS, DEFAULT_RESIDUAL_CUT,
};

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::barycentric::SampleSet;
use crate::error::{Error, Result};
use crate::numkernel::CMatrix;
use crate::scalar::{cone, creal, czero, dot_h, from_usize, lit, to_c64, vec_norm, Real, C};

/// Scalar coefficient functions of a split problem `F(z) = Σ_i f_i(z)·C_i`.
#[derive(Debug, Clone, PartialEq)]
pub enum ScalarFn<T: Real> {
    /// `Σ_k c_k z^k`.
    Poly(Vec<C<T>>),
    /// Principal square root.
    Sqrt,
    /// `exp(α·z)`.
    Exp(C<T>),
    /// `1/(z − s)`.
    InvLin(C<T>),
}

impl<T: Real> ScalarFn<T> {
    pub fn eval(&self, z: C<T>) -> Result<C<T>> {
        let v = match self {
            ScalarFn::Poly(c) => c.iter().rev().fold(czero(), |acc, &ck| acc * z + ck),
            ScalarFn::Sqrt => z.sqrt(),
            ScalarFn::Exp(a) => (a * z).exp(),
            ScalarFn::InvLin(s) => {
                if z == *s {
                    return Err(eval_failure(z));
                }
                cone::<T>() / (z - s)
            }
        };
        if crate::scalar::is_finite(v) {
            Ok(v)
        } else {
            Err(eval_failure(z))
        }
    }
}

fn eval_failure<T: Real>(z: C<T>) -> Error {
    let z = to_c64(z);
    Error::EvaluationFailure { re: z.re, im: z.im }
}

/// `F(z) = Σ_i f_i(z)·C_i` with `N×N` coefficient matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct SplitNlep<T: Real> {
    dim: usize,
    terms: Vec<(ScalarFn<T>, CMatrix<T>)>,
}

impl<T: Real> SplitNlep<T> {
    pub fn new(terms: Vec<(ScalarFn<T>, CMatrix<T>)>) -> Result<Self> {
        let Some((_, first)) = terms.first() else {
            return Err(Error::InvalidInput("a split problem needs at least one term".into()));
        };
        let dim = first.rows();
        if dim == 0 {
            return Err(Error::InvalidInput("problem dimension must be positive".into()));
        }
        for (i, (f, c)) in terms.iter().enumerate() {
            if c.rows() != dim || c.cols() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "term {i} matrix is {}x{}, expected {dim}x{dim}",
                    c.rows(),
                    c.cols()
                )));
            }
            if let ScalarFn::Poly(p) = f {
                if p.is_empty() {
                    return Err(Error::InvalidInput(format!("term {i}: polynomial without coefficients")));
                }
            }
        }
        Ok(Self { dim, terms })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &[(ScalarFn<T>, CMatrix<T>)] {
        &self.terms
    }

    pub fn eval(&self, z: C<T>) -> Result<CMatrix<T>> {
        let mut out = CMatrix::zeros(self.dim, self.dim);
        for (f, c) in &self.terms {
            out.axpy(f.eval(z)?, c);
        }
        Ok(out)
    }

    /// Multiplies every coefficient matrix by `s`.
    pub fn scaled(&self, s: C<T>) -> Self {
        Self {
            dim: self.dim,
            terms: self.terms.iter().map(|(f, c)| (f.clone(), c.scale(s))).collect(),
        }
    }
}

/// Region in which eigenvalues are sought.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TargetSet<T: Real> {
    Disc { center: C<T>, radius: T },
    Interval { a: C<T>, b: C<T> },
}

/// Relative distance within which a point counts as lying on an interval.
pub const INTERVAL_TOL: f64 = 1e-8;

impl<T: Real> TargetSet<T> {
    pub fn validate(&self) -> Result<()> {
        match *self {
            TargetSet::Disc { center, radius } => {
                if !(radius > T::zero()) || !radius.is_finite() || !crate::scalar::is_finite(center) {
                    return Err(Error::InvalidInput("disc radius must be positive and finite".into()));
                }
            }
            TargetSet::Interval { a, b } => {
                if a == b || !crate::scalar::is_finite(a) || !crate::scalar::is_finite(b) {
                    return Err(Error::InvalidInput("interval endpoints must be finite and distinct".into()));
                }
            }
        }
        Ok(())
    }

    pub fn contains(&self, z: C<T>) -> bool {
        match *self {
            TargetSet::Disc { center, radius } => (z - center).norm() <= radius,
            TargetSet::Interval { a, b } => {
                let d = b - a;
                let len2 = d.norm_sqr();
                let t = ((z - a) * d.conj()).re / len2;
                let t = t.max(T::zero()).min(T::one());
                (z - (a + d * creal(t))).norm() <= lit::<T>(INTERVAL_TOL) * len2.sqrt()
            }
        }
    }

    /// A point in the middle of the set.
    pub fn center(&self) -> C<T> {
        match *self {
            TargetSet::Disc { center, .. } => center,
            TargetSet::Interval { a, b } => (a + b) * creal(lit::<T>(0.5)),
        }
    }
}

/// Minimum number of boundary points.
pub const MIN_BOUNDARY_POINTS: usize = 8;

/// Candidate points: `n` equispaced points on the circle, or `n` equispaced
/// points on the interval including both endpoints.
pub fn discretize_boundary<T: Real>(t: &TargetSet<T>, n: usize) -> Result<Vec<C<T>>> {
    if n < MIN_BOUNDARY_POINTS {
        return Err(Error::TooFewPoints { min: MIN_BOUNDARY_POINTS, got: n });
    }
    t.validate()?;
    let pts = match *t {
        TargetSet::Disc { center, radius } => (0..n)
            .map(|k| {
                let theta = T::TAU() * from_usize::<T>(k) / from_usize::<T>(n);
                center + C::from_polar(radius, theta)
            })
            .collect(),
        TargetSet::Interval { a, b } => (0..n)
            .map(|k| {
                if k == n - 1 {
                    b
                } else {
                    a + (b - a) * creal(from_usize::<T>(k) / from_usize::<T>(n - 1))
                }
            })
            .collect(),
    };
    Ok(pts)
}

/// Random unit vectors `u`, `v` with independent standard complex Gaussian
/// entries, drawn from ChaCha20 seeded with `seed`.
pub fn random_unit_pair<T: Real>(n: usize, seed: u64) -> (Vec<C<T>>, Vec<C<T>>) {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut draw = || -> Vec<C<T>> {
        let v: Vec<C<T>> = (0..n)
            .map(|_| {
                let re: f64 = StandardNormal.sample(&mut rng);
                let im: f64 = StandardNormal.sample(&mut rng);
                C::new(lit(re), lit(im))
            })
            .collect();
        let s = vec_norm(&v);
        v.into_iter().map(|x| x / creal(s)).collect()
    };
    let u = draw();
    let v = draw();
    (u, v)
}

/// Samples of the scalar surrogate `f(z) = uᴴF(z)v`, computed as
/// `Σ_i f_i(z)·(uᴴC_iv)` with the projections formed once.
pub fn surrogate_sample<T: Real>(
    f: &SplitNlep<T>,
    z: &[C<T>],
    seed: u64,
) -> Result<(SampleSet<T>, Vec<C<T>>, Vec<C<T>>)> {
    let (u, v) = random_unit_pair(f.dim(), seed);
    let samples = surrogate_sample_with(f, z, &u, &v)?;
    Ok((samples, u, v))
}

/// Surrogate samples for given projection vectors.
pub fn surrogate_sample_with<T: Real>(f: &SplitNlep<T>, z: &[C<T>], u: &[C<T>], v: &[C<T>]) -> Result<SampleSet<T>> {
    if z.is_empty() {
        return Err(Error::InvalidInput("no sample points".into()));
    }
    if u.len() != f.dim() || v.len() != f.dim() {
        return Err(Error::DimensionMismatch("projection vectors must match the problem dimension".into()));
    }
    let proj: Vec<C<T>> = f.terms().iter().map(|(_, c)| dot_h(u, &c.mul_vec(v))).collect();
    let mut values = Vec::with_capacity(z.len());
    for &zi in z {
        let mut s = czero::<T>();
        for ((fi, _), p) in f.terms().iter().zip(&proj) {
            s += fi.eval(zi)? * p;
        }
        values.push(s);
    }
    SampleSet::new(z.to_vec(), values)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C<f64> {
        C::new(re, im)
    }

    #[test]
    fn disc_four_points() {
        let t = TargetSet::Disc { center: c(0.0, 0.0), radius: 1.0 };
        assert!(discretize_boundary(&t, 4).is_err());
        let p = discretize_boundary(&t, 8).unwrap();
        assert!((p[0] - c(1.0, 0.0)).norm() < 1e-15);
        assert!((p[2] - c(0.0, 1.0)).norm() < 1e-15);
        assert!((p[4] - c(-1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn interval_includes_endpoints() {
        let t = TargetSet::Interval { a: c(4.0, -40.0), b: c(4.0, 40.0) };
        let p = discretize_boundary(&t, 100).unwrap();
        assert_eq!(p[0], c(4.0, -40.0));
        assert_eq!(p[99], c(4.0, 40.0));
        assert!(p.iter().all(|z| t.contains(*z)));
        assert!(!t.contains(c(4.1, 0.0)));
    }

    #[test]
    fn too_few_points_error() {
        let t = TargetSet::Disc { center: c(0.0, 0.0), radius: 1.0 };
        assert_eq!(discretize_boundary(&t, 3).unwrap_err(), Error::TooFewPoints { min: 8, got: 3 });
    }

    #[test]
    fn scalar_fns() {
        assert_eq!(ScalarFn::Poly(vec![c(1.0, 0.0), c(2.0, 0.0)]).eval(c(3.0, 0.0)).unwrap(), c(7.0, 0.0));
        assert!((ScalarFn::Sqrt.eval(c(-4.0, 0.0)).unwrap() - c(0.0, 2.0)).norm() < 1e-15);
        assert!(ScalarFn::InvLin(c(1.0, 0.0)).eval(c(1.0, 0.0)).is_err());
    }

    #[test]
    fn unit_projection_is_entry() {
        let m = CMatrix::from_real_rows(&[&[1.0, 2.0], &[3.0, 4.0]]);
        let f = SplitNlep::new(vec![(ScalarFn::Poly(vec![c(0.0, 0.0), c(1.0, 0.0)]), m)]).unwrap();
        let e1 = vec![c(1.0, 0.0), c(0.0, 0.0)];
        let s = surrogate_sample_with(&f, &[c(2.0, 0.0)], &e1, &e1).unwrap();
        assert_eq!(s.values()[0], c(2.0, 0.0));
    }

    #[test]
    fn seeded_vectors_are_reproducible() {
        let (u1, v1) = random_unit_pair::<f64>(5, 7);
        let (u2, v2) = random_unit_pair::<f64>(5, 7);
        assert_eq!((u1.clone(), v1), (u2, v2));
        assert!((vec_norm(&u1) - 1.0).abs() < 1e-15);
        assert_ne!(random_unit_pair::<f64>(5, 8).0, u1);
    }
}
