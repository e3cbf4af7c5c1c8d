//! Barycentric rational interpolants
//!
//! ```text
//!          Σ_j w_j f_j / (z − z_j)
//!   r(z) = ───────────────────────
//!          Σ_j w_j     / (z − z_j)
//! ```
//!
//! together with the basis functions `r_j(z) = (w_j/(z − z_j)) / Σ_i w_i/(z − z_i)`
//! and the AAA fitting algorithm.

mod aaa;

pub use aaa::{aaa_fit, aaa_fit_with, loewner_weights, AaaOptions, AaaReport, Termination, DEFAULT_MMAX, DEFAULT_TOL};

use crate::error::{Error, Result};
use crate::scalar::{czero, Real, C};

/// Rational interpolant of type `[m, m]` in barycentric form.
#[derive(Debug, Clone, PartialEq)]
pub struct BarycentricRational<T: Real> {
    nodes: Vec<C<T>>,
    values: Vec<C<T>>,
    weights: Vec<C<T>>,
}

impl<T: Real> BarycentricRational<T> {
    /// Validates lengths, node distinctness and nonzero weights.
    pub fn new(nodes: Vec<C<T>>, values: Vec<C<T>>, weights: Vec<C<T>>) -> Result<Self> {
        if nodes.is_empty() {
            return Err(Error::InvalidInput("at least one support node is required".into()));
        }
        if nodes.len() != values.len() || nodes.len() != weights.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} nodes, {} values, {} weights",
                nodes.len(),
                values.len(),
                weights.len()
            )));
        }
        let finite = |v: &[C<T>]| v.iter().all(|z| z.re.is_finite() && z.im.is_finite());
        if !finite(&nodes) || !finite(&values) || !finite(&weights) {
            return Err(Error::InvalidInput("barycentric data must be finite".into()));
        }
        if let Some(j) = weights.iter().position(|w| w.norm() == T::zero()) {
            return Err(Error::InvalidInput(format!("weight w_{j} is zero")));
        }
        for i in 0..nodes.len() {
            for j in i + 1..nodes.len() {
                if nodes[i] == nodes[j] {
                    return Err(Error::InvalidInput(format!("nodes z_{i} and z_{j} coincide")));
                }
            }
        }
        Ok(Self { nodes, values, weights })
    }

    /// Constant interpolant `r ≡ value` supported at `node`.
    pub fn constant(node: C<T>, value: C<T>) -> Self {
        Self {
            nodes: vec![node],
            values: vec![value],
            weights: vec![C::new(T::one(), T::zero())],
        }
    }

    /// Degree `m` (number of nodes minus one).
    pub fn degree(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn nodes(&self) -> &[C<T>] {
        &self.nodes
    }

    pub fn values(&self) -> &[C<T>] {
        &self.values
    }

    pub fn weights(&self) -> &[C<T>] {
        &self.weights
    }

    fn node_index(&self, z: C<T>) -> Option<usize> {
        self.nodes.iter().position(|&x| x == z)
    }

    /// Evaluates `r(z)`; returns `f_j` exactly when `z` equals node `z_j`.
    pub fn eval(&self, z: C<T>) -> Result<C<T>> {
        if let Some(j) = self.node_index(z) {
            return Ok(self.values[j]);
        }
        let mut num = czero::<T>();
        let mut den = czero::<T>();
        for ((&zj, &fj), &wj) in self.nodes.iter().zip(&self.values).zip(&self.weights) {
            let t = wj / (z - zj);
            num += t * fj;
            den += t;
        }
        if den.norm() == T::zero() || !crate::scalar::is_finite(num / den) {
            return Err(Error::PoleHit);
        }
        Ok(num / den)
    }

    /// Basis vector `[r_0(z), …, r_m(z)]`; the indicator `e_k` at node `z_k`.
    pub fn basis(&self, z: C<T>) -> Result<Vec<C<T>>> {
        let m1 = self.nodes.len();
        if let Some(k) = self.node_index(z) {
            let mut e = vec![czero(); m1];
            e[k] = C::new(T::one(), T::zero());
            return Ok(e);
        }
        let terms: Vec<C<T>> = self
            .nodes
            .iter()
            .zip(&self.weights)
            .map(|(&zj, &wj)| wj / (z - zj))
            .collect();
        let den = terms.iter().fold(czero::<T>(), |a, &t| a + t);
        if den.norm() == T::zero() {
            return Err(Error::PoleHit);
        }
        Ok(terms.into_iter().map(|t| t / den).collect())
    }

    /// Numerator and denominator sums `(Σ w_j f_j/(z−z_j), Σ w_j/(z−z_j))` at a non-node `z`.
    pub fn partial_fractions(&self, z: C<T>) -> (C<T>, C<T>) {
        let mut num = czero::<T>();
        let mut den = czero::<T>();
        for ((&zj, &fj), &wj) in self.nodes.iter().zip(&self.values).zip(&self.weights) {
            let t = wj / (z - zj);
            num += t * fj;
            den += t;
        }
        (num, den)
    }
}

/// Free-function form of [`BarycentricRational::eval`].
pub fn eval_bary<T: Real>(r: &BarycentricRational<T>, z: C<T>) -> Result<C<T>> {
    r.eval(z)
}

/// Free-function form of [`BarycentricRational::basis`].
pub fn basis_bary<T: Real>(r: &BarycentricRational<T>, z: C<T>) -> Result<Vec<C<T>>> {
    r.basis(z)
}

/// Sample points with function values, e.g. a discretized boundary.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleSet<T: Real> {
    points: Vec<C<T>>,
    values: Vec<C<T>>,
}

impl<T: Real> SampleSet<T> {
    pub fn new(points: Vec<C<T>>, values: Vec<C<T>>) -> Result<Self> {
        if points.len() != values.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} points but {} values",
                points.len(),
                values.len()
            )));
        }
        let finite = |v: &[C<T>]| v.iter().all(|z| z.re.is_finite() && z.im.is_finite());
        if !finite(&points) || !finite(&values) {
            return Err(Error::InvalidInput("samples must be finite".into()));
        }
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                if points[i] == points[j] {
                    return Err(Error::InvalidInput(format!("sample points {i} and {j} coincide")));
                }
            }
        }
        Ok(Self { points, values })
    }

    /// Samples `f` at every point.
    pub fn from_fn(points: Vec<C<T>>, f: impl Fn(C<T>) -> C<T>) -> Result<Self> {
        let values = points.iter().map(|&z| f(z)).collect();
        Self::new(points, values)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[C<T>] {
        &self.points
    }

    pub fn values(&self) -> &[C<T>] {
        &self.values
    }
}
