//! `r(A)·b` for a barycentric interpolant `r`.
//!
//! Numerator and denominator of the barycentric form are both rational
//! functions of `A` and commute, so
//!
//! ```text
//! r(A)·b = D(A)⁻¹ · Σ_j w_j f_j (A − z_j I)⁻¹ b,    D(A) = Σ_j w_j (A − z_j I)⁻¹.
//! ```
//!
//! This needs no diagonalization of `A`: `m + 1` resolvent factorizations
//! and one dense solve.

use crate::barycentric::BarycentricRational;
use crate::error::{Error, Result};
use crate::numkernel::{CMatrix, Lu};
use crate::scalar::{czero, Real, C};

#[derive(Debug, Clone)]
pub struct MatFunRequest<T: Real> {
    pub interp: BarycentricRational<T>,
    pub a: CMatrix<T>,
    pub b: Vec<C<T>>,
}

impl<T: Real> MatFunRequest<T> {
    pub fn new(interp: BarycentricRational<T>, a: CMatrix<T>, b: Vec<C<T>>) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::DimensionMismatch(format!("matrix is {}x{}, not square", a.rows(), a.cols())));
        }
        if b.len() != a.rows() {
            return Err(Error::DimensionMismatch(format!(
                "vector has length {} but the matrix is {}x{}",
                b.len(),
                a.rows(),
                a.cols()
            )));
        }
        Ok(Self { interp, a, b })
    }
}

/// Computes `r(A)·b`.
///
/// Fails with `ResolventSingular(j)` when `A − z_j I` is numerically
/// singular and with `DenominatorSingular` when `D(A)` is (an eigenvalue of
/// `A` sits at a pole of `r`).
pub fn eval_matrix<T: Real>(req: &MatFunRequest<T>) -> Result<Vec<C<T>>> {
    let r = &req.interp;
    let n = req.a.rows();
    if r.degree() == 0 {
        let c = r.values()[0];
        return Ok(req.b.iter().map(|x| x * c).collect());
    }
    let mut den = CMatrix::zeros(n, n);
    let mut num = vec![czero::<T>(); n];
    // Right-hand side [I | b], so one factorization yields both the resolvent and its action on b.
    let rhs = CMatrix::from_fn(n, n + 1, |i, j| match j {
        _ if j == n => req.b[i],
        _ if i == j => crate::scalar::cone(),
        _ => czero(),
    });
    for (j, ((&zj, &fj), &wj)) in r.nodes().iter().zip(r.values()).zip(r.weights()).enumerate() {
        let lu = Lu::factor(&req.a.shifted(zj)).map_err(|_| Error::ResolventSingular(j))?;
        let x = lu.solve(&rhs);
        if !x.is_finite() {
            return Err(Error::ResolventSingular(j));
        }
        den.axpy(wj, &x.block(0, n, 0, n));
        let wf = wj * fj;
        for (i, acc) in num.iter_mut().enumerate() {
            *acc += wf * x[(i, n)];
        }
    }
    let lu = Lu::factor(&den).map_err(|_| Error::DenominatorSingular)?;
    let y = lu.solve_vec(&num);
    if !y.iter().all(|z| crate::scalar::is_finite(*z)) {
        return Err(Error::DenominatorSingular);
    }
    Ok(y)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C<f64> {
        C::new(re, im)
    }

    fn two_point() -> BarycentricRational<f64> {
        BarycentricRational::new(
            vec![c(0.0, 0.0), c(1.0, 0.0)],
            vec![c(0.0, 0.0), c(1.0, 0.0)],
            vec![c(1.0, 0.0), c(1.0, 0.0)],
        )
        .unwrap()
    }

    #[test]
    fn diagonal_two_point() {
        let a = CMatrix::from_diag(&[c(2.0, 0.0), c(3.0, 0.0)]);
        let req = MatFunRequest::new(two_point(), a, vec![c(1.0, 0.0); 2]).unwrap();
        let y = eval_matrix(&req).unwrap();
        assert!((y[0] - c(2.0 / 3.0, 0.0)).norm() < 1e-14);
        assert!((y[1] - c(0.6, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn constant_interpolant() {
        let r = BarycentricRational::constant(c(1.0, 0.0), c(2.0, -1.0));
        // A has the node as an eigenvalue; the constant does not care.
        let a = CMatrix::identity(3);
        let b = vec![c(1.0, 0.0), c(0.0, 1.0), c(2.0, 0.0)];
        let y = eval_matrix(&MatFunRequest::new(r, a, b.clone()).unwrap()).unwrap();
        for (yi, bi) in y.iter().zip(&b) {
            assert_eq!(*yi, bi * c(2.0, -1.0));
        }
    }

    #[test]
    fn errors() {
        let a = CMatrix::from_diag(&[c(1.0, 0.0), c(3.0, 0.0)]);
        let req = MatFunRequest::new(two_point(), a, vec![c(1.0, 0.0); 2]).unwrap();
        assert_eq!(eval_matrix(&req).unwrap_err(), Error::ResolventSingular(1));
        let a = CMatrix::from_diag(&[c(0.5, 0.0), c(3.0, 0.0)]);
        let req = MatFunRequest::new(two_point(), a, vec![c(1.0, 0.0); 2]).unwrap();
        assert_eq!(eval_matrix(&req).unwrap_err(), Error::DenominatorSingular);
        assert!(MatFunRequest::new(two_point(), CMatrix::identity(2), vec![c(1.0, 0.0)]).is_err());
    }
}
