mod common;

use common::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use ratconv::numkernel::*;
use ratconv::represent::match_distance;

fn finite(v: Vec<num_complex::Complex64>) -> Vec<EigenValue<f64>> {
    v.into_iter().map(EigenValue::Finite).collect()
}

#[test]
fn eig_matches_characteristic_polynomial_roots() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for trial in 0..200 {
        let n = 1 + trial % 4;
        let a = random_matrix(&mut rng, n, n);
        let (vals, _) = eig(&a, false).unwrap();
        let oracle = poly_roots(&pencil_det_poly(&a, &CMatrix::identity(n)), n);
        let d = match_distance(&finite(vals), &oracle).unwrap();
        assert!(d < 1e-9, "trial {trial}: distance {d}");
    }
}

#[test]
fn generalized_eig_matches_determinant_polynomial() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for trial in 0..200 {
        let n = 1 + trial % 4;
        let a = random_matrix(&mut rng, n, n);
        let b = random_matrix(&mut rng, n, n);
        let res = generalized_eig(&a, &b, false).unwrap();
        let oracle = poly_roots(&pencil_det_poly(&a, &b), n);
        let d = match_distance(&res.values, &oracle).unwrap();
        assert!(d < 1e-8, "trial {trial}: distance {d}");
    }
}

#[test]
fn rank_deficient_b_gives_infinite_eigenvalues() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for n in 2..=4 {
        let a = random_matrix(&mut rng, n, n);
        let mut b = random_matrix(&mut rng, n, n);
        // Zero the last column of B: det(A − zB) drops one degree.
        for i in 0..n {
            b[(i, n - 1)] = c(0.0, 0.0);
        }
        let res = generalized_eig(&a, &b, false).unwrap();
        assert_eq!(res.infinite_count(), 1);
        let oracle = poly_roots(&pencil_det_poly(&a, &b), n);
        assert!(match_distance(&res.values, &oracle).unwrap() < 1e-8);
    }
}

#[test]
fn lu_determinant_matches_leibniz() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for n in 1..=4 {
        let a = random_matrix(&mut rng, n, n);
        let d1 = det(&a);
        let d2 = leibniz_det(&a);
        assert!((d1 - d2).norm() < 1e-13 * (1.0 + d2.norm()));
    }
}

fn matrix_strategy(max: usize) -> impl Strategy<Value = CMatrix<f64>> {
    (1..=max).prop_flat_map(|n| {
        proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n * n)
            .prop_map(move |v| CMatrix::from_fn(n, n, |i, j| c(v[i * n + j].0, v[i * n + j].1)))
    })
}

proptest! {
    #[test]
    fn eigenpairs_have_small_residuals(a in matrix_strategy(8)) {
        let (vals, vecs) = eig(&a, true).unwrap();
        let v = vecs.unwrap();
        for (k, &l) in vals.iter().enumerate() {
            let x = v.column(k);
            let ax = a.mul_vec(&x);
            let r: f64 = ax.iter().zip(&x).map(|(p, q)| (p - l * q).norm_sqr()).sum::<f64>().sqrt();
            prop_assert!(r <= 1e-12 * (1.0 + a.norm_fro()));
        }
    }

    #[test]
    fn lu_solve_residual(a in matrix_strategy(8)) {
        let n = a.rows();
        let b: Vec<_> = (0..n).map(|i| c(i as f64, 1.0)).collect();
        if let Ok(lu) = Lu::factor(&a) {
            let x = lu.solve_vec(&b);
            let r = a.mul_vec(&x);
            let res: f64 = r.iter().zip(&b).map(|(p, q)| (p - q).norm()).fold(0.0, f64::max);
            let xn: f64 = x.iter().map(|z| z.norm()).fold(0.0, f64::max);
            prop_assert!(res <= 1e-12 * a.norm_inf() * xn.max(1.0));
        }
    }

    #[test]
    fn reflector_is_unitary_and_maps_to_e1(v in proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1..10)) {
        let v: Vec<_> = v.into_iter().map(|(a, b)| c(a, b)).collect();
        prop_assume!(v.iter().any(|z| z.norm() > 1e-3));
        let (p, g) = householder_to_e1(&v).unwrap();
        let m = p.to_matrix();
        let n = v.len();
        prop_assert!(m.adjoint().matmul(&m).sub(&CMatrix::identity(n)).max_abs() < 1e-14);
        let mapped = m.adjoint().mul_vec(&v);
        prop_assert!((mapped[0] - g).norm() < 1e-14);
    }

    #[test]
    fn smallest_singular_vector(a in matrix_strategy(6)) {
        let (s, w) = svd_min_right(&a);
        let aw = a.mul_vec(&w);
        let nrm: f64 = aw.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        prop_assert!((nrm - s).abs() <= 1e-12 * (1.0 + a.norm_fro()));
        let sv = singular_values(&a);
        prop_assert!((sv.last().unwrap() - s).abs() <= 1e-12 * (1.0 + a.norm_fro()));
    }
}
