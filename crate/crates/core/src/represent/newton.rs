use crate::barycentric::BarycentricRational;
use crate::error::{Error, Result};
use crate::numkernel::CMatrix;
use crate::represent::pencil::{Normalization, RKFunPencil};
use crate::scalar::{cone, czero, Real, C};

/// Rational Newton form with basis
///
/// ```text
/// b_0 = 1,   b_j(z) = (z − σ_{j−1}) / (β_j·(h_j − k_j·z)) · b_{j−1}(z)
/// ```
///
/// and `r(z) = Σ_j d_j·b_j(z)`. The poles of `b_m` are `ξ_j = h_j/k_j`
/// (infinite when `k_j = 0`).
#[derive(Debug, Clone, PartialEq)]
pub struct NewtonRational<T: Real> {
    sigma: Vec<C<T>>,
    beta: Vec<C<T>>,
    h: Vec<C<T>>,
    k: Vec<C<T>>,
    coeffs: Vec<C<T>>,
}

impl<T: Real> NewtonRational<T> {
    /// `sigma`, `beta`, `h`, `k` have length `m`; `coeffs` has length `m + 1`.
    pub fn new(sigma: Vec<C<T>>, beta: Vec<C<T>>, h: Vec<C<T>>, k: Vec<C<T>>, coeffs: Vec<C<T>>) -> Result<Self> {
        let m = sigma.len();
        if beta.len() != m || h.len() != m || k.len() != m || coeffs.len() != m + 1 {
            return Err(Error::DimensionMismatch(format!(
                "Newton form needs m nodes/scalings and m+1 coefficients, got {}, {}, {}, {}, {}",
                sigma.len(),
                beta.len(),
                h.len(),
                k.len(),
                coeffs.len()
            )));
        }
        let all = sigma.iter().chain(&beta).chain(&h).chain(&k).chain(&coeffs);
        if !all.into_iter().all(|z| crate::scalar::is_finite(*z)) {
            return Err(Error::InvalidInput("Newton data must be finite".into()));
        }
        for j in 0..m {
            if beta[j] == czero() {
                return Err(Error::InvalidInput(format!("scaling beta_{} is zero", j + 1)));
            }
            if h[j] == czero() && k[j] == czero() {
                return Err(Error::InvalidInput(format!("h_{0} and k_{0} are both zero", j + 1)));
            }
            // A pole coinciding with the interpolation node would cancel.
            if h[j] - k[j] * sigma[j] == czero() {
                return Err(Error::InvalidInput(format!(
                    "pole h_{0}/k_{0} coincides with node sigma_{1}",
                    j + 1,
                    j
                )));
            }
        }
        Ok(Self { sigma, beta, h, k, coeffs })
    }

    pub fn degree(&self) -> usize {
        self.sigma.len()
    }

    pub fn sigma(&self) -> &[C<T>] {
        &self.sigma
    }

    pub fn beta(&self) -> &[C<T>] {
        &self.beta
    }

    pub fn h(&self) -> &[C<T>] {
        &self.h
    }

    pub fn k(&self) -> &[C<T>] {
        &self.k
    }

    pub fn coeffs(&self) -> &[C<T>] {
        &self.coeffs
    }

    /// `[b_0(z), …, b_m(z)]`; `PoleHit` when some `h_j − k_j·z` vanishes.
    pub fn basis(&self, z: C<T>) -> Result<Vec<C<T>>> {
        let m = self.degree();
        let mut b = Vec::with_capacity(m + 1);
        b.push(cone::<T>());
        for j in 0..m {
            let den = self.beta[j] * (self.h[j] - self.k[j] * z);
            let scale = T::one().max(self.h[j].norm()).max(self.k[j].norm() * z.norm());
            if den.norm() <= T::min_positive_value() * scale {
                return Err(Error::PoleHit);
            }
            let next = b[j] * (z - self.sigma[j]) / den;
            if !crate::scalar::is_finite(next) {
                return Err(Error::PoleHit);
            }
            b.push(next);
        }
        Ok(b)
    }

    /// `Σ_j d_j·b_j(z)`.
    pub fn eval(&self, z: C<T>) -> Result<C<T>> {
        let b = self.basis(z)?;
        Ok(b.iter().zip(&self.coeffs).fold(czero(), |a, (x, d)| a + x * d))
    }

    /// `Σ_j d_j·b_j(z) / Σ_j b_j(z)`; this is the interpolant when the form
    /// was obtained from barycentric data.
    pub fn eval_normalized(&self, z: C<T>) -> Result<C<T>> {
        let b = self.basis(z)?;
        let num = b.iter().zip(&self.coeffs).fold(czero::<T>(), |a, (x, d)| a + x * d);
        let den = b.iter().fold(czero::<T>(), |a, x| a + x);
        if den.norm() == T::zero() {
            return Err(Error::PoleHit);
        }
        let v = num / den;
        if !crate::scalar::is_finite(v) {
            return Err(Error::PoleHit);
        }
        Ok(v)
    }

    /// Basis poles `ξ_j = h_j/k_j`; `None` stands for infinity.
    pub fn poles(&self) -> Vec<Option<C<T>>> {
        self.h
            .iter()
            .zip(&self.k)
            .map(|(&h, &k)| if k == czero() { None } else { Some(h / k) })
            .collect()
    }

    /// The pencil `(M, N)` with `z·b(z)·M = b(z)·N`, `b = [b_0, …, b_m]`.
    ///
    /// Column `j` (1-based) of `M` has `1` in row `j−1` and `β_j·k_j` in row `j`;
    /// column `j` of `N` has `σ_{j−1}` and `β_j·h_j` in the same places.
    pub fn pencil(&self) -> (CMatrix<T>, CMatrix<T>) {
        let m = self.degree();
        let mut mm = CMatrix::zeros(m + 1, m);
        let mut nn = CMatrix::zeros(m + 1, m);
        for j in 0..m {
            mm[(j, j)] = cone();
            mm[(j + 1, j)] = self.beta[j] * self.k[j];
            nn[(j, j)] = self.sigma[j];
            nn[(j + 1, j)] = self.beta[j] * self.h[j];
        }
        (mm, nn)
    }

    /// The same basis as an RKFUN pencil with `b_0 ≡ 1` normalization.
    pub fn to_pencil(&self) -> RKFunPencil<T> {
        let (mm, nn) = self.pencil();
        RKFunPencil::new(nn, mm, self.coeffs.clone(), Normalization::FirstBasisConstant)
            .expect("a valid Newton form gives an unreduced pencil")
    }
}

/// Newton form of a barycentric interpolant, with `k_j = 1`, `σ_{j−1} = z_{j−1}`,
/// `h_j = z_j`, `β_j = −w_{j−1}/w_j` and `d_j = f_j`.
///
/// Then `b_j = r_j/r_0` for the barycentric basis `r_j`, so the interpolant is
/// recovered by [`NewtonRational::eval_normalized`].
pub fn bary_to_newton<T: Real>(r: &BarycentricRational<T>) -> NewtonRational<T> {
    let m = r.degree();
    let z = r.nodes();
    let w = r.weights();
    let sigma = z[..m].to_vec();
    let h = z[1..].to_vec();
    let k = vec![cone(); m];
    let beta = (1..=m).map(|j| -w[j - 1] / w[j]).collect();
    NewtonRational::new(sigma, beta, h, k, r.values().to_vec())
        .expect("barycentric data with distinct nodes gives a valid Newton form")
}

pub fn newton_basis_eval<T: Real>(n: &NewtonRational<T>, z: C<T>) -> Result<Vec<C<T>>> {
    n.basis(z)
}

pub fn newton_pencil<T: Real>(n: &NewtonRational<T>) -> (CMatrix<T>, CMatrix<T>) {
    n.pencil()
}
