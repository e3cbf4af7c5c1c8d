//! One-sided (Hestenes) Jacobi SVD.
//!
//! Rotations act on the columns of the input itself rather than on its Gram
//! matrix, so singular values far below `‖L‖` keep their relative accuracy.
//! AAA relies on this when the Loewner matrix is numerically rank deficient.

use crate::numkernel::CMatrix;
use crate::scalar::{cone, czero, creal, Real, C};

const MAX_SWEEPS: usize = 80;

/// Singular values together with the right singular vectors.
#[derive(Debug, Clone)]
pub struct RightSvd<T: Real> {
    /// Unsorted, aligned with the columns of `v`.
    pub sigma: Vec<T>,
    /// Unitary `cols × cols` matrix of right singular vectors.
    pub v: CMatrix<T>,
}

/// Runs one-sided Jacobi on `l` (any shape; short matrices are padded with zero rows).
pub fn jacobi_svd<T: Real>(l: &CMatrix<T>) -> RightSvd<T> {
    let n = l.cols();
    let rows = l.rows().max(n);
    let mut cols: Vec<Vec<C<T>>> = (0..n)
        .map(|j| {
            let mut c = l.column(j);
            c.resize(rows, czero());
            c
        })
        .collect();
    let mut v: Vec<Vec<C<T>>> = (0..n)
        .map(|j| {
            let mut e = vec![czero(); n];
            e[j] = cone();
            e
        })
        .collect();

    let tol = T::epsilon();
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let (alpha, beta, gamma) = gram_entries(&cols[p], &cols[q]);
                let g = gamma.norm();
                if g == T::zero() || g <= tol * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                // Scale column q by the conjugate phase of γ so the 2×2 Gram
                // block becomes real, then apply a real Jacobi rotation.
                let phase = gamma / creal(g);
                let zeta = (beta - alpha) / (g + g);
                let t = zeta.signum() / (zeta.abs() + (T::one() + zeta * zeta).sqrt());
                let c = T::one() / (T::one() + t * t).sqrt();
                let s = c * t;
                rotate(&mut cols, p, q, phase, c, s);
                rotate(&mut v, p, q, phase, c, s);
            }
        }
        if !rotated {
            break;
        }
    }

    let sigma = cols.iter().map(|c| crate::scalar::vec_norm(c)).collect();
    let vm = CMatrix::from_fn(n, n, |i, j| v[j][i]);
    RightSvd { sigma, v: vm }
}

fn gram_entries<T: Real>(a: &[C<T>], b: &[C<T>]) -> (T, T, C<T>) {
    let mut alpha = T::zero();
    let mut beta = T::zero();
    let mut gamma = czero();
    for (x, y) in a.iter().zip(b) {
        alpha += x.norm_sqr();
        beta += y.norm_sqr();
        gamma += x.conj() * y;
    }
    (alpha, beta, gamma)
}

/// `a_p ← c·a_p − s·φ̄·a_q`, `a_q ← s·a_p + c·φ̄·a_q`.
fn rotate<T: Real>(cols: &mut [Vec<C<T>>], p: usize, q: usize, phase: C<T>, c: T, s: T) {
    let (left, right) = cols.split_at_mut(q);
    let ap = &mut left[p];
    let aq = &mut right[0];
    let ph = phase.conj();
    for (x, y) in ap.iter_mut().zip(aq.iter_mut()) {
        let yq = *y * ph;
        let xp = *x;
        *x = xp * creal(c) - yq * creal(s);
        *y = xp * creal(s) + yq * creal(c);
    }
}

/// Smallest singular value of `l` and a unit right singular vector for it.
pub fn svd_min_right<T: Real>(l: &CMatrix<T>) -> (T, Vec<C<T>>) {
    let svd = jacobi_svd(l);
    let (jmin, smin) = svd
        .sigma
        .iter()
        .copied()
        .enumerate()
        .fold((0, T::infinity()), |best, cur| if cur.1 < best.1 { cur } else { best });
    (smin, svd.v.column(jmin))
}

/// Singular values sorted in decreasing order.
pub fn singular_values<T: Real>(l: &CMatrix<T>) -> Vec<T> {
    let mut s = jacobi_svd(l).sigma;
    s.sort_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));
    s
}

/// Spectral norm.
pub fn norm2<T: Real>(l: &CMatrix<T>) -> T {
    if l.cols() > l.rows() {
        return norm2(&l.adjoint());
    }
    singular_values(l).first().copied().unwrap_or_else(T::zero)
}
