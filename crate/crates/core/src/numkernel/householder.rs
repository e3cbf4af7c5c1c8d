use crate::error::{Error, Result};
use crate::numkernel::CMatrix;
use crate::scalar::{czero, creal, dot_h, vec_norm, Real, C};

/// Householder reflector `P = I − s·u·uᴴ` with `s = 2/(uᴴu)`.
///
/// `P` is Hermitian and unitary, so `P⁻¹ = Pᴴ = P`.
#[derive(Debug, Clone)]
pub struct Reflector<T: Real> {
    u: Vec<C<T>>,
    s: T,
}

impl<T: Real> Reflector<T> {
    pub fn dim(&self) -> usize {
        self.u.len()
    }

    pub fn vector(&self) -> &[C<T>] {
        &self.u
    }

    pub fn factor(&self) -> T {
        self.s
    }

    /// Applies the reflector to a vector in place.
    pub fn apply_vec(&self, x: &mut [C<T>]) {
        let d = dot_h(&self.u, x) * creal(self.s);
        for (xi, ui) in x.iter_mut().zip(&self.u) {
            *xi -= ui * d;
        }
    }

    /// Computes `P·M` for a matrix with `dim()` rows.
    pub fn apply_left(&self, m: &CMatrix<T>) -> CMatrix<T> {
        assert_eq!(m.rows(), self.dim());
        let mut out = m.clone();
        for j in 0..m.cols() {
            let mut d = czero();
            for i in 0..m.rows() {
                d += self.u[i].conj() * m[(i, j)];
            }
            d *= creal(self.s);
            for i in 0..m.rows() {
                out[(i, j)] -= self.u[i] * d;
            }
        }
        out
    }

    /// Computes `M·P` for a matrix with `dim()` columns.
    pub fn apply_right(&self, m: &CMatrix<T>) -> CMatrix<T> {
        assert_eq!(m.cols(), self.dim());
        let mut out = m.clone();
        for i in 0..m.rows() {
            let row = out.row_mut(i);
            let d = row
                .iter()
                .zip(&self.u)
                .fold(czero::<T>(), |acc, (a, u)| acc + a * u)
                * creal(self.s);
            for (a, u) in row.iter_mut().zip(&self.u) {
                *a -= d * u.conj();
            }
        }
        out
    }

    /// Dense form of `P`.
    pub fn to_matrix(&self) -> CMatrix<T> {
        self.apply_left(&CMatrix::identity(self.dim()))
    }
}

/// Reflector mapping `v` onto a multiple of the first unit vector.
///
/// Returns `(P, γ)` with `Pᴴ·v = γ·e₁` and `|γ| = ‖v‖₂`. The phase of `γ`
/// is opposite to that of `v₀`, which avoids cancellation in `u = v − γe₁`.
pub fn householder_to_e1<T: Real>(v: &[C<T>]) -> Result<(Reflector<T>, C<T>)> {
    let norm = vec_norm(v);
    if v.is_empty() || norm == T::zero() {
        return Err(Error::ZeroVector);
    }
    let x0 = v[0];
    let phase = if x0.norm() == T::zero() {
        creal(T::one())
    } else {
        x0 / creal(x0.norm())
    };
    let gamma = -phase * creal(norm);
    let mut u = v.to_vec();
    u[0] -= gamma;
    let uu = u.iter().fold(T::zero(), |s, z| s + z.norm_sqr());
    let s = (T::one() + T::one()) / uu;
    Ok((Reflector { u, s }, gamma))
}

/// Unit row vector `ρ` with `ρ·M ≈ 0` for a tall `M` (`rows > cols`).
///
/// Computed from a Householder QR of `M`: the last row of `Qᴴ` annihilates
/// `M`. Householder QR is column-wise backward stable, so the result does not
/// degrade when the columns of `M` are badly scaled relative to each other.
pub fn left_null_vector<T: Real>(m: &CMatrix<T>) -> Result<Vec<C<T>>> {
    let (r, c) = (m.rows(), m.cols());
    if r <= c {
        return Err(Error::DimensionMismatch(format!(
            "left null vector needs more rows than columns, got {r}x{c}"
        )));
    }
    let mut work = m.clone();
    let mut reflectors: Vec<(usize, Reflector<T>)> = Vec::with_capacity(c);
    for k in 0..c {
        let x: Vec<C<T>> = (k..r).map(|i| work[(i, k)]).collect();
        if vec_norm(&x[1..]) == T::zero() {
            continue;
        }
        let (p, _) = householder_to_e1(&x)?;
        let sub = work.block(k, r, k, c);
        work.set_block(k, k, &p.apply_left(&sub));
        reflectors.push((k, p));
    }
    // ρ = e_lastᵀ·Q_c···Q_1, each Q Hermitian: x·Q = x − s·(x·u)·uᴴ.
    let mut rho = vec![czero(); r];
    rho[r - 1] = creal(T::one());
    for (offset, p) in reflectors.iter().rev() {
        let seg = &mut rho[*offset..];
        let d = seg
            .iter()
            .zip(p.vector())
            .fold(czero::<T>(), |acc, (x, u)| acc + x * u)
            * creal(p.factor());
        for (x, u) in seg.iter_mut().zip(p.vector()) {
            *x -= d * u.conj();
        }
    }
    Ok(rho)
}
