use crate::error::{Error, Result};
use crate::numkernel::CMatrix;
use crate::represent::NewtonRational;
use crate::scalar::{creal, czero, vec_norm, Real, C};

/// Companion-type pencil `L(z) = A − z·B` of size `N·m` for
/// `R(z) = Σ_{j=0}^{m} D_j·b_j(z)` with Newton basis functions `b_j`.
///
/// For every `z` off the basis poles, `(A − z·B)·(b(z) ⊗ x)` has first block
/// `(h_m − k_m·z)·R(z)·x` and zero blocks otherwise, where
/// `b(z) = [b_0(z), …, b_{m−1}(z)]`.
#[derive(Debug, Clone)]
pub struct Linearization<T: Real> {
    pub a: CMatrix<T>,
    pub b: CMatrix<T>,
    pub newton: NewtonRational<T>,
    pub d: Vec<CMatrix<T>>,
}

impl<T: Real> Linearization<T> {
    pub fn degree(&self) -> usize {
        self.newton.degree()
    }

    pub fn block_dim(&self) -> usize {
        self.d[0].rows()
    }

    /// `b(λ) ⊗ x` with the first `m` basis functions.
    pub fn lift(&self, lambda: C<T>, x: &[C<T>]) -> Result<Vec<C<T>>> {
        let b = self.newton.basis(lambda)?;
        let m = self.degree();
        let mut out = Vec::with_capacity(m * x.len());
        for bj in &b[..m] {
            out.extend(x.iter().map(|xi| xi * bj));
        }
        Ok(out)
    }

    /// `‖(A − λB)(b(λ) ⊗ x)‖`.
    pub fn pencil_residual(&self, lambda: C<T>, x: &[C<T>]) -> Result<T> {
        let y = self.lift(lambda, x)?;
        let ay = self.a.mul_vec(&y);
        let by = self.b.mul_vec(&y);
        let r: Vec<C<T>> = ay.iter().zip(&by).map(|(p, q)| p - lambda * q).collect();
        Ok(vec_norm(&r))
    }
}

/// Builds the linearization from a Newton form and the matrices
/// `D_0, …, D_m` (for an interpolant, `D_j = F(z_j)`).
///
/// Block row `j + 1` (`j = 1..m−1`) encodes the recursion
/// `β_j(h_j − k_j z)·b_j = (z − σ_{j−1})·b_{j−1}`, multiplied through by
/// `h_j`; the first block row eliminates `b_m` through the last step of the
/// recursion. Division by `β̃_m = h_m·β_m` requires every `h_j ≠ 0`.
pub fn build_linearization<T: Real>(n: &NewtonRational<T>, d: &[CMatrix<T>]) -> Result<Linearization<T>> {
    let m = n.degree();
    if m == 0 {
        return Err(Error::InvalidInput("linearization needs degree at least 1".into()));
    }
    if d.len() != m + 1 {
        return Err(Error::DimensionMismatch(format!("{} matrices for degree {m}, expected {}", d.len(), m + 1)));
    }
    let nn = d[0].rows();
    if d.iter().any(|dj| dj.rows() != nn || dj.cols() != nn) {
        return Err(Error::DimensionMismatch("coefficient matrices must share one square size".into()));
    }
    if let Some(j) = n.h().iter().position(|&h| h == czero()) {
        return Err(Error::ZeroH(j + 1));
    }
    let (sigma, beta, h, k) = (n.sigma(), n.beta(), n.h(), n.k());
    let beta_t = |j: usize| h[j] * beta[j];

    let size = nn * m;
    let mut a = CMatrix::zeros(size, size);
    let mut b = CMatrix::zeros(size, size);

    let (hm, km) = (h[m - 1], k[m - 1]);
    let bm = beta_t(m - 1);
    for c in 0..m {
        let mut ablk = d[c].scale(hm);
        let mut bblk = d[c].scale(km);
        if c == m - 1 {
            ablk.axpy(-hm * sigma[m - 1] / bm, &d[m]);
            bblk.axpy(-hm / bm, &d[m]);
        }
        a.set_block(0, c * nn, &ablk);
        b.set_block(0, c * nn, &bblk);
    }
    for j in 1..m {
        let (hj, kj, bj, sj) = (h[j - 1], k[j - 1], beta_t(j - 1), sigma[j - 1]);
        for i in 0..nn {
            let r = j * nn + i;
            a[(r, (j - 1) * nn + i)] = hj * sj;
            a[(r, j * nn + i)] = hj * bj;
            b[(r, (j - 1) * nn + i)] = hj;
            b[(r, j * nn + i)] = kj * bj;
        }
    }
    Ok(Linearization {
        a,
        b,
        newton: n.clone(),
        d: d.to_vec(),
    })
}

/// Extracts `x` from a pencil eigenvector `y ≈ b(λ) ⊗ x`: the block of
/// largest norm, divided by its basis value and normalized to unit length.
pub fn recover_eigvec<T: Real>(y: &[C<T>], lambda: C<T>, n: &NewtonRational<T>, dim: usize) -> Result<Vec<C<T>>> {
    let m = n.degree();
    if dim == 0 || y.len() != dim * m {
        return Err(Error::DimensionMismatch(format!("vector of length {} for {m} blocks of size {dim}", y.len())));
    }
    let total = vec_norm(y);
    let (jmax, bmax) = y
        .chunks(dim)
        .map(vec_norm)
        .enumerate()
        .fold((0, T::zero()), |best, (j, s)| if s > best.1 { (j, s) } else { best });
    if !(total > T::zero()) || bmax < crate::scalar::eps_tol::<T>(1e-14) * total {
        return Err(Error::DegenerateVector);
    }
    let block = &y[jmax * dim..(jmax + 1) * dim];
    // Dividing by b_j(λ) only changes the phase once the result is normalized.
    let phase = match n.basis(lambda) {
        Ok(b) if b[jmax].norm() > T::zero() && crate::scalar::is_finite(b[jmax]) => b[jmax] / creal(b[jmax].norm()),
        _ => creal(T::one()),
    };
    Ok(block.iter().map(|v| v / phase / creal(bmax)).collect())
}
