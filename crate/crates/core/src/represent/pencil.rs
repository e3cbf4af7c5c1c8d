use crate::barycentric::BarycentricRational;
use crate::error::{Error, Result};
use crate::numkernel::{
    generalized_eig, householder_to_e1, left_null_vector, CMatrix, EigenValue,
};
use crate::scalar::{creal, czero, eps_tol, vec_norm, Real, C};

/// Relative size below which the normalization functional of a basis
/// null vector counts as zero (the evaluation point is a pole).
pub const NORMALIZATION_TOL: f64 = 1e-14;

/// Which linear functional pins down the basis defined by the pencil.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Normalization {
    /// `r_0 ≡ 1`.
    FirstBasisConstant,
    /// `Σ_j r_j ≡ 1`, the convention of barycentric basis functions.
    PartitionOfUnity,
}

/// RKFUN triple `(H, K, c)`: an `(m+1)×m` unreduced upper-Hessenberg pencil
/// defining basis functions through `z·ρ(z)·K = ρ(z)·H`, and coefficients
/// `c` with `r(z) = Σ_j c_j ρ_j(z)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RKFunPencil<T: Real> {
    h: CMatrix<T>,
    k: CMatrix<T>,
    coeffs: Vec<C<T>>,
    normalization: Normalization,
}

impl<T: Real> RKFunPencil<T> {
    pub fn new(h: CMatrix<T>, k: CMatrix<T>, coeffs: Vec<C<T>>, normalization: Normalization) -> Result<Self> {
        let m1 = coeffs.len();
        if m1 == 0 {
            return Err(Error::InvalidInput("RKFUN needs at least one coefficient".into()));
        }
        if (h.rows(), h.cols()) != (m1, m1 - 1) || (k.rows(), k.cols()) != (m1, m1 - 1) {
            return Err(Error::DimensionMismatch(format!(
                "pencil must be {}x{} for {} coefficients, got {}x{} and {}x{}",
                m1,
                m1 - 1,
                m1,
                h.rows(),
                h.cols(),
                k.rows(),
                k.cols()
            )));
        }
        let p = Self { h, k, coeffs, normalization };
        p.check_unreduced()?;
        Ok(p)
    }

    /// Verifies the unreduced upper-Hessenberg structure.
    pub fn check_unreduced(&self) -> Result<()> {
        let (r, c) = (self.h.rows(), self.h.cols());
        for j in 0..c {
            for i in j + 2..r {
                if self.h[(i, j)] != czero() || self.k[(i, j)] != czero() {
                    return Err(Error::InvalidInput(format!(
                        "entry ({i}, {j}) below the subdiagonal is nonzero"
                    )));
                }
            }
            if self.h[(j + 1, j)].norm() + self.k[(j + 1, j)].norm() == T::zero() {
                return Err(Error::InvalidInput(format!(
                    "pencil is reduced: both subdiagonal entries of column {j} vanish"
                )));
            }
        }
        Ok(())
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn h(&self) -> &CMatrix<T> {
        &self.h
    }

    pub fn k(&self) -> &CMatrix<T> {
        &self.k
    }

    pub fn coeffs(&self) -> &[C<T>] {
        &self.coeffs
    }

    pub fn normalization(&self) -> Normalization {
        self.normalization
    }

    /// Basis row vector `[ρ_0(z), …, ρ_m(z)]` spanning the left null space of `H − zK`.
    pub fn basis(&self, z: C<T>) -> Result<Vec<C<T>>> {
        let mut m = self.h.sub(&self.k.scale(z));
        // The null vector of D_r·M·D_c is ρ·D_r⁻¹; computing it from the
        // equilibrated matrix keeps small basis values accurate when the
        // pencil entries span many orders of magnitude.
        let (dr, dc) = equilibrate(&m);
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                m[(i, j)] *= creal(dr[i] * dc[j]);
            }
        }
        let mut rho = left_null_vector(&m)?;
        for (x, &d) in rho.iter_mut().zip(&dr) {
            *x *= creal(d);
        }
        let nrm = vec_norm(&rho);
        if !(nrm > T::zero()) || !nrm.is_finite() {
            return Err(Error::PoleHit);
        }
        for x in rho.iter_mut() {
            *x /= creal(nrm);
        }
        let functional = match self.normalization {
            Normalization::FirstBasisConstant => rho[0],
            Normalization::PartitionOfUnity => rho.iter().fold(czero::<T>(), |a, &x| a + x),
        };
        if functional.norm() < eps_tol::<T>(NORMALIZATION_TOL) || !crate::scalar::is_finite(functional) {
            return Err(Error::PoleHit);
        }
        Ok(rho.into_iter().map(|x| x / functional).collect())
    }

    /// `r(z) = Σ_j c_j ρ_j(z)`.
    pub fn eval(&self, z: C<T>) -> Result<C<T>> {
        let rho = self.basis(z)?;
        Ok(rho.iter().zip(&self.coeffs).fold(czero(), |a, (x, c)| a + x * c))
    }
}

/// Positive row and column scalings `(d_r, d_c)` that bring the entries of
/// an `(m+1)×m` Hessenberg matrix towards unit modulus.
///
/// Starts from the scaling that makes every diagonal and subdiagonal entry
/// exactly unit modulus (these entries form a spanning path of the
/// row/column graph, so the scaling is unique up to a constant), then runs
/// a few sweeps of alternating max-norm row and column equilibration.
fn equilibrate<T: Real>(m: &CMatrix<T>) -> (Vec<T>, Vec<T>) {
    let (r, c) = (m.rows(), m.cols());
    let mut dr = vec![T::one(); r];
    let mut dc = vec![T::one(); c];
    let mut ok = true;
    for j in 0..c {
        let (d, s) = (m[(j, j)].norm(), m[(j + 1, j)].norm());
        if !(d > T::zero()) || !(s > T::zero()) {
            ok = false;
            break;
        }
        dc[j] = T::one() / (dr[j] * d);
        dr[j + 1] = T::one() / (dc[j] * s);
    }
    let finite = dr.iter().chain(&dc).all(|x| x.is_finite() && *x > T::zero());
    if ok && finite {
        let top = dr.iter().fold(T::zero(), |a, &x| a.max(x));
        for x in dr.iter_mut() {
            *x /= top;
        }
        for x in dc.iter_mut() {
            *x *= top;
        }
    } else {
        dr.fill(T::one());
        dc.fill(T::one());
    }
    for _ in 0..EQUILIBRATION_SWEEPS {
        for i in 0..r {
            let s = (0..c).fold(T::zero(), |a, j| a.max(m[(i, j)].norm() * dr[i] * dc[j]));
            if s > T::zero() && s.is_finite() {
                dr[i] /= s;
            }
        }
        for j in 0..c {
            let s = (0..r).fold(T::zero(), |a, i| a.max(m[(i, j)].norm() * dr[i] * dc[j]));
            if s > T::zero() && s.is_finite() {
                dc[j] /= s;
            }
        }
    }
    (dr, dc)
}

const EQUILIBRATION_SWEEPS: usize = 4;

/// Converts a barycentric interpolant to the pencil `(Z·W, W)` with coefficients `f`.
///
/// Column `j` (1-based) of `W` holds `−w_j` in row `j−1` and `w_{j−1}` in
/// row `j`; `Z = diag(z_0, …, z_m)`.
pub fn bary_to_pencil<T: Real>(r: &BarycentricRational<T>) -> RKFunPencil<T> {
    let m = r.degree();
    let z = r.nodes();
    let w = r.weights();
    let mut k = CMatrix::zeros(m + 1, m);
    let mut h = CMatrix::zeros(m + 1, m);
    for j in 1..=m {
        let col = j - 1;
        k[(j - 1, col)] = -w[j];
        k[(j, col)] = w[j - 1];
        h[(j - 1, col)] = -z[j - 1] * w[j];
        h[(j, col)] = z[j] * w[j - 1];
    }
    RKFunPencil {
        h,
        k,
        coeffs: r.values().to_vec(),
        normalization: Normalization::PartitionOfUnity,
    }
}

/// Basis evaluation through the pencil.
pub fn pencil_basis_eval<T: Real>(p: &RKFunPencil<T>, z: C<T>) -> Result<Vec<C<T>>> {
    p.basis(z)
}

/// Roots of `r` from the lower `m×m` part of `(Pᴴ·H, Pᴴ·K)`, where the
/// Householder reflector `P` maps the coefficient vector to `γ·e₁`.
/// Also returns `γ`.
pub fn roots_with_gamma<T: Real>(p: &RKFunPencil<T>) -> Result<(Vec<EigenValue<T>>, C<T>)> {
    let (refl, gamma) = match householder_to_e1(&p.coeffs) {
        Ok(x) => x,
        Err(Error::ZeroVector) => return Err(Error::ZeroCoefficients),
        Err(e) => return Err(e),
    };
    let m = p.degree();
    if m == 0 {
        return Ok((Vec::new(), gamma));
    }
    // P is Hermitian, so Pᴴ·H = P·H.
    let ph = refl.apply_left(&p.h);
    let pk = refl.apply_left(&p.k);
    let a = ph.block(1, m + 1, 0, m);
    let b = pk.block(1, m + 1, 0, m);
    let res = generalized_eig(&a, &b, false)?;
    Ok((res.values, gamma))
}

pub fn roots<T: Real>(p: &RKFunPencil<T>) -> Result<Vec<EigenValue<T>>> {
    roots_with_gamma(p).map(|(v, _)| v)
}

/// Poles of `r` from the lower `m×m` part of the pencil after the basis has
/// been transformed to one whose first function is constant.
///
/// With partition-of-unity normalization the transform is `Q⁻¹` where
/// `Q = γ·U` has first column all ones and `U` is the Householder reflector
/// taking the ones vector to `γ·e₁`. Since `Q⁻¹ = U/γ` and scaling does not
/// move eigenvalues, only `U` is applied.
pub fn poles<T: Real>(p: &RKFunPencil<T>) -> Result<Vec<EigenValue<T>>> {
    let m = p.degree();
    if m == 0 {
        return Ok(Vec::new());
    }
    let (h, k) = match p.normalization {
        Normalization::FirstBasisConstant => (p.h.clone(), p.k.clone()),
        Normalization::PartitionOfUnity => {
            let (u, _) = ones_reflector::<T>(m + 1);
            (u.apply_left(&p.h), u.apply_left(&p.k))
        }
    };
    let a = h.block(1, m + 1, 0, m);
    let b = k.block(1, m + 1, 0, m);
    Ok(generalized_eig(&a, &b, false)?.values)
}

/// Reflector `U` with `U·1 = γ·e₁`, hence `Q = γ·U` has first column `1`.
pub fn ones_reflector<T: Real>(n: usize) -> (crate::numkernel::Reflector<T>, C<T>) {
    let ones = vec![C::new(T::one(), T::zero()); n];
    householder_to_e1(&ones).expect("ones vector is nonzero")
}

/// Dense `Q = γ·U` with first column all ones (for inspection and tests).
pub fn q_matrix<T: Real>(n: usize) -> CMatrix<T> {
    let (u, gamma) = ones_reflector::<T>(n);
    u.to_matrix().scale(gamma)
}

/// Sorts by real part, then imaginary part; infinite values go last.
pub fn sort_eigenvalues<T: Real>(v: &mut [EigenValue<T>]) {
    v.sort_by(|a, b| match (a, b) {
        (EigenValue::Infinite, EigenValue::Infinite) => std::cmp::Ordering::Equal,
        (EigenValue::Infinite, _) => std::cmp::Ordering::Greater,
        (_, EigenValue::Infinite) => std::cmp::Ordering::Less,
        (EigenValue::Finite(x), EigenValue::Finite(y)) => x
            .re
            .partial_cmp(&y.re)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(x.im.partial_cmp(&y.im).unwrap_or(std::cmp::Ordering::Equal)),
    });
}
