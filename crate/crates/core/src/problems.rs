//! Built-in problem definitions for the two demonstrations: a truncated
//! zeta function applied to a shifted skew-symmetric matrix, and the
//! square-root nonlinear eigenproblem built from the same matrix.

use crate::error::Result;
use crate::nleigs::{ScalarFn, SplitNlep, TargetSet};
use crate::numkernel::{eig, CMatrix, Lu};
use crate::scalar::{cone, creal, czero, from_usize, lit, Real, C};

/// Number of terms in the truncated zeta series.
pub const ZETA_TERMS: usize = 100_000;

/// `Σ_{n=1}^{N} n^{−z}`, each term computed as `exp(−z·ln n)` and summed
/// from `n = N` down to `n = 1` so that the small terms accumulate first.
pub fn truncated_zeta<T: Real>(z: C<T>, terms: usize) -> C<T> {
    let mut s = czero::<T>();
    for n in (1..=terms).rev() {
        let ln = from_usize::<T>(n).ln();
        s += (-z * creal(ln)).exp();
    }
    s
}

/// The `2n×2n` matrix `[[4I, T], [−T, 4I]]` with `T = 10·tridiag(−1, 2, −1)` of size `n`.
///
/// Its eigenvalues are `4 ± i·μ` for the eigenvalues `μ` of `T`.
pub fn shifted_skew_matrix<T: Real>(n: usize) -> CMatrix<T> {
    let t = |i: usize, j: usize| -> T {
        if i == j {
            lit(20.0)
        } else if i.abs_diff(j) == 1 {
            lit(-10.0)
        } else {
            T::zero()
        }
    };
    CMatrix::from_fn(2 * n, 2 * n, |i, j| {
        let (bi, bj) = (i / n, j / n);
        let (ii, jj) = (i % n, j % n);
        let v = match (bi, bj) {
            (0, 0) | (1, 1) if ii == jj => lit(4.0),
            (0, 1) => t(ii, jj),
            (1, 0) => -t(ii, jj),
            _ => T::zero(),
        };
        creal(v)
    })
}

/// The 20×20 matrix of both demonstrations.
pub fn example_matrix<T: Real>() -> CMatrix<T> {
    shifted_skew_matrix(10)
}

/// `f(A)·b` through a dense eigendecomposition `A = V·Λ·V⁻¹`.
pub fn eig_function_reference<T: Real>(a: &CMatrix<T>, b: &[C<T>], f: impl Fn(C<T>) -> C<T>) -> Result<Vec<C<T>>> {
    let (vals, vecs) = eig(a, true)?;
    let v = vecs.expect("requested eigenvectors");
    let coef = Lu::factor(&v)?.solve_vec(b);
    let scaled: Vec<C<T>> = coef.iter().zip(&vals).map(|(c, &l)| c * f(l)).collect();
    Ok(v.mul_vec(&scaled))
}

/// Sample line of the zeta demonstration, from `4 − 40i` to `4 + 40i`.
pub fn zeta_target<T: Real>() -> TargetSet<T> {
    TargetSet::Interval {
        a: C::new(lit(4.0), lit(-40.0)),
        b: C::new(lit(4.0), lit(40.0)),
    }
}

/// `F(z) = A − √z·I` with the example matrix.
pub fn sqrt_nep<T: Real>() -> SplitNlep<T> {
    let a = example_matrix::<T>();
    let n = a.rows();
    SplitNlep::new(vec![
        (ScalarFn::Poly(vec![cone()]), a),
        (ScalarFn::Sqrt, CMatrix::identity(n).scale(-cone::<T>())),
    ])
    .expect("fixed problem is well formed")
}

/// Disc of radius 50 around `10 + 50i`.
pub fn sqrt_nep_target<T: Real>() -> TargetSet<T> {
    TargetSet::Disc {
        center: C::new(lit(10.0), lit(50.0)),
        radius: lit(50.0),
    }
}

/// Exact eigenvalues of `A − √z·I`: the squares `μ²` of the eigenvalues of
/// `A` (all of which have positive real part, so the principal root of `μ²`
/// is `μ`), restricted to `target`.
pub fn sqrt_nep_oracle<T: Real>(target: &TargetSet<T>) -> Result<Vec<C<T>>> {
    let (vals, _) = eig(&example_matrix::<T>(), false)?;
    let mut out: Vec<C<T>> = vals.into_iter().map(|m| m * m).filter(|z| target.contains(*z)).collect();
    out.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap_or(std::cmp::Ordering::Equal));
    Ok(out)
}

/// All 20 exact eigenvalues `μ²`, unfiltered.
pub fn sqrt_nep_all_eigenvalues<T: Real>() -> Result<Vec<C<T>>> {
    let (vals, _) = eig(&example_matrix::<T>(), false)?;
    Ok(vals.into_iter().map(|m| m * m).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_spectrum() {
        let a = example_matrix::<f64>();
        let (vals, _) = eig(&a, false).unwrap();
        for v in vals {
            assert!((v.re - 4.0).abs() < 1e-12);
            assert!(v.im.abs() < 40.0 && v.im.abs() > 0.5);
        }
    }

    #[test]
    fn three_oracle_eigenvalues() {
        let ev = sqrt_nep_oracle::<f64>(&sqrt_nep_target()).unwrap();
        assert_eq!(ev.len(), 3);
        // μ = 4 + i·10·(2 − 2cos(kπ/11)).
        let want: Vec<C<f64>> = (1..=3)
            .map(|k| {
                let mu = C::new(4.0, 10.0 * (2.0 - 2.0 * (k as f64 * std::f64::consts::PI / 11.0).cos()));
                mu * mu
            })
            .collect();
        for w in want {
            assert!(ev.iter().any(|e| (e - w).norm() < 1e-10 * w.norm()));
        }
    }

    #[test]
    fn zeta_at_two() {
        // ζ(2) − Σ_{n≤N} n⁻² ≈ 1/N.
        let s = truncated_zeta(C::new(2.0, 0.0), 1000);
        let exact = std::f64::consts::PI.powi(2) / 6.0;
        assert!((s.re - exact + 1.0 / 1000.0).abs() < 1e-6);
    }

    #[test]
    fn eig_reference_matches_polynomial() {
        let a = example_matrix::<f64>();
        let b = vec![C::new(1.0, 0.0); 20];
        let y = eig_function_reference(&a, &b, |z| z * z).unwrap();
        let want = a.mul_vec(&a.mul_vec(&b));
        let err = y.iter().zip(&want).map(|(x, w)| (x - w).norm()).fold(0.0, f64::max);
        assert!(err < 1e-10 * want.iter().map(|w| w.norm()).fold(0.0, f64::max));
    }
}
