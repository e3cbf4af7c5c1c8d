use crate::error::{Error, Result};
use crate::numkernel::CMatrix;
use crate::scalar::{cone, czero, Real, C};

/// LU factorization with partial pivoting, `P·A = L·U`.
#[derive(Debug, Clone)]
pub struct Lu<T: Real> {
    lu: CMatrix<T>,
    perm: Vec<usize>,
    /// Parity of the row permutation, used by [`Lu::det`].
    swaps: usize,
}

impl<T: Real> Lu<T> {
    /// Factors `a`. Fails with [`Error::SingularMatrix`] when a pivot falls
    /// below `pivot_tol · ‖A‖∞`.
    pub fn factor_with_tol(a: &CMatrix<T>, pivot_tol: T) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "LU needs a square matrix, got {}x{}",
                a.rows(),
                a.cols()
            )));
        }
        let n = a.rows();
        let norm = a.norm_inf();
        let threshold = pivot_tol * norm;
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut swaps = 0;
        for k in 0..n {
            let (p, pmax) = (k..n)
                .map(|i| (i, lu[(i, k)].norm()))
                .fold((k, T::zero()), |best, cur| if cur.1 > best.1 { cur } else { best });
            if pmax <= threshold || pmax == T::zero() {
                return Err(Error::SingularMatrix);
            }
            if p != k {
                for j in 0..n {
                    let tmp = lu[(k, j)];
                    lu[(k, j)] = lu[(p, j)];
                    lu[(p, j)] = tmp;
                }
                perm.swap(k, p);
                swaps += 1;
            }
            let pivot = lu[(k, k)];
            for i in k + 1..n {
                let l = lu[(i, k)] / pivot;
                lu[(i, k)] = l;
                if l.re == T::zero() && l.im == T::zero() {
                    continue;
                }
                for j in k + 1..n {
                    let u = lu[(k, j)];
                    lu[(i, j)] -= l * u;
                }
            }
        }
        Ok(Self { lu, perm, swaps })
    }

    /// Factors with the default pivot threshold `ε`.
    pub fn factor(a: &CMatrix<T>) -> Result<Self> {
        Self::factor_with_tol(a, T::epsilon())
    }

    pub fn dim(&self) -> usize {
        self.lu.rows()
    }

    pub fn solve_vec(&self, b: &[C<T>]) -> Vec<C<T>> {
        let n = self.dim();
        assert_eq!(b.len(), n);
        let mut x: Vec<C<T>> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let mut s = x[i];
            for j in 0..i {
                s -= self.lu[(i, j)] * x[j];
            }
            x[i] = s;
        }
        for i in (0..n).rev() {
            let mut s = x[i];
            for j in i + 1..n {
                s -= self.lu[(i, j)] * x[j];
            }
            x[i] = s / self.lu[(i, i)];
        }
        x
    }

    pub fn solve(&self, b: &CMatrix<T>) -> CMatrix<T> {
        let n = self.dim();
        assert_eq!(b.rows(), n);
        let m = b.cols();
        let mut x = CMatrix::zeros(n, m);
        for i in 0..n {
            x.row_mut(i).copy_from_slice(b.row(self.perm[i]));
        }
        for i in 0..n {
            for j in 0..i {
                let l = self.lu[(i, j)];
                if l.re == T::zero() && l.im == T::zero() {
                    continue;
                }
                for c in 0..m {
                    let v = x[(j, c)];
                    x[(i, c)] -= l * v;
                }
            }
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                let u = self.lu[(i, j)];
                if u.re == T::zero() && u.im == T::zero() {
                    continue;
                }
                for c in 0..m {
                    let v = x[(j, c)];
                    x[(i, c)] -= u * v;
                }
            }
            let d = self.lu[(i, i)];
            for c in 0..m {
                x[(i, c)] /= d;
            }
        }
        x
    }

    pub fn inverse(&self) -> CMatrix<T> {
        self.solve(&CMatrix::identity(self.dim()))
    }

    pub fn det(&self) -> C<T> {
        let mut d = if self.swaps.is_multiple_of(2) { cone() } else { -cone::<T>() };
        for i in 0..self.dim() {
            d *= self.lu[(i, i)];
        }
        d
    }
}

/// Solves `A·X = B` by LU with partial pivoting.
pub fn solve<T: Real>(a: &CMatrix<T>, b: &CMatrix<T>) -> Result<CMatrix<T>> {
    if b.rows() != a.rows() {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side has {} rows, matrix has {}",
            b.rows(),
            a.rows()
        )));
    }
    Ok(Lu::factor(a)?.solve(b))
}

/// 1-norm condition number `‖A‖₁·‖A⁻¹‖₁`; infinite when the LU breaks down.
pub fn cond_one<T: Real>(a: &CMatrix<T>) -> T {
    match Lu::factor(a) {
        Ok(lu) => a.norm_one() * lu.inverse().norm_one(),
        Err(_) => T::infinity(),
    }
}

/// Determinant via LU; zero when the factorization reports singularity.
pub fn det<T: Real>(a: &CMatrix<T>) -> C<T> {
    Lu::factor_with_tol(a, T::zero()).map_or(czero(), |lu| lu.det())
}
