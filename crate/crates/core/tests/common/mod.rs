//! Independent reference computations for tests: polynomial arithmetic,
//! Durand–Kerner root finding, Leibniz determinants and random generators.
#![allow(dead_code)]

use num_complex::Complex64 as C;
use rand::Rng;
use ratconv::barycentric::BarycentricRational;
use ratconv::numkernel::{CMatrix, EigenValue};

pub fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

/// Polynomial coefficients, lowest degree first.
pub type Poly = Vec<C>;

pub fn poly_mul(a: &[C], b: &[C]) -> Poly {
    let mut out = vec![C::new(0.0, 0.0); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

pub fn poly_add(a: &[C], b: &[C]) -> Poly {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| a.get(i).copied().unwrap_or_default() + b.get(i).copied().unwrap_or_default())
        .collect()
}

pub fn poly_eval(p: &[C], z: C) -> C {
    p.iter().rev().fold(C::new(0.0, 0.0), |acc, &c| acc * z + c)
}

fn poly_deriv(p: &[C]) -> Poly {
    p.iter().enumerate().skip(1).map(|(k, &c)| c * k as f64).collect()
}

/// Roots of `p` as extended complex numbers: a leading coefficient that is
/// negligible relative to the others counts as a root at infinity.
pub fn poly_roots(p: &[C], degree: usize) -> Vec<EigenValue<f64>> {
    let mut p = p.to_vec();
    p.resize(degree + 1, C::new(0.0, 0.0));
    let scale = p.iter().fold(0.0f64, |m, c| m.max(c.norm()));
    let mut inf = 0;
    while p.len() > 1 && p.last().unwrap().norm() <= 1e-13 * scale {
        p.pop();
        inf += 1;
    }
    let mut out: Vec<EigenValue<f64>> = durand_kerner(&p).into_iter().map(EigenValue::Finite).collect();
    out.extend(std::iter::repeat_n(EigenValue::Infinite, inf));
    out
}

/// All roots of a polynomial with nonzero leading coefficient, polished
/// with Newton steps.
pub fn durand_kerner(p: &[C]) -> Vec<C> {
    let n = p.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    let lead = p[n];
    let monic: Vec<C> = p.iter().map(|c| c / lead).collect();
    // Cauchy bound for the starting circle.
    let radius = 1.0 + monic[..n].iter().fold(0.0f64, |m, c| m.max(c.norm()));
    let seed = c(0.4, 0.9);
    let mut z: Vec<C> = (0..n).map(|k| seed.powu(k as u32) * radius.min(10.0)).collect();
    for _ in 0..2000 {
        let mut delta = 0.0f64;
        for i in 0..n {
            let mut den = C::new(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    den *= z[i] - z[j];
                }
            }
            let step = poly_eval(&monic, z[i]) / den;
            z[i] -= step;
            delta = delta.max(step.norm() / (1.0 + z[i].norm()));
        }
        if delta < 1e-16 {
            break;
        }
    }
    let d = poly_deriv(&monic);
    for zi in z.iter_mut() {
        for _ in 0..3 {
            let dv = poly_eval(&d, *zi);
            if dv.norm() == 0.0 {
                break;
            }
            let step = poly_eval(&monic, *zi) / dv;
            if !(step.re.is_finite() && step.im.is_finite()) {
                break;
            }
            *zi -= step;
        }
    }
    z
}

/// Numerator and denominator of a barycentric interpolant multiplied by
/// `Π_i (z − z_i)`: `Σ_j w_j f_j Π_{i≠j}(z − z_i)` and `Σ_j w_j Π_{i≠j}(z − z_i)`.
pub fn bary_polynomials(r: &BarycentricRational<f64>) -> (Poly, Poly) {
    let z = r.nodes();
    let mut num = vec![C::new(0.0, 0.0)];
    let mut den = vec![C::new(0.0, 0.0)];
    for j in 0..z.len() {
        let mut p = vec![C::new(1.0, 0.0)];
        for (i, &zi) in z.iter().enumerate() {
            if i != j {
                p = poly_mul(&p, &[-zi, C::new(1.0, 0.0)]);
            }
        }
        let wj = r.weights()[j];
        let fj = r.values()[j];
        num = poly_add(&num, &p.iter().map(|x| x * wj * fj).collect::<Vec<_>>());
        den = poly_add(&den, &p.iter().map(|x| x * wj).collect::<Vec<_>>());
    }
    (num, den)
}

/// Coefficients of `det(A − zB)` by the Leibniz formula over polynomial entries.
pub fn pencil_det_poly(a: &CMatrix<f64>, b: &CMatrix<f64>) -> Poly {
    let n = a.rows();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = vec![C::new(0.0, 0.0)];
    permutations(&mut perm, 0, &mut |p, sign| {
        let mut term = vec![C::new(sign, 0.0)];
        for (i, &j) in p.iter().enumerate() {
            term = poly_mul(&term, &[a[(i, j)], -b[(i, j)]]);
        }
        total = poly_add(&total, &term);
    });
    total
}

/// `det(A)` by the Leibniz formula.
pub fn leibniz_det(a: &CMatrix<f64>) -> C {
    pencil_det_poly(a, &CMatrix::zeros(a.rows(), a.cols()))[0]
}

fn permutations(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize], f64)) {
    if k == p.len() {
        let mut sign = 1.0;
        for i in 0..p.len() {
            for j in i + 1..p.len() {
                if p[i] > p[j] {
                    sign = -sign;
                }
            }
        }
        f(p, sign);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permutations(p, k + 1, f);
        p.swap(k, i);
    }
}

pub fn random_complex(rng: &mut impl Rng) -> C {
    c(rng.random::<f64>() * 2.0 - 1.0, rng.random::<f64>() * 2.0 - 1.0)
}

pub fn random_in_disc(rng: &mut impl Rng, radius: f64) -> C {
    loop {
        let z = random_complex(rng);
        if z.norm() <= 1.0 {
            return z * radius;
        }
    }
}

pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> CMatrix<f64> {
    CMatrix::from_fn(rows, cols, |_, _| random_complex(rng))
}

/// Random interpolant of degree `m`: nodes in the unit disc with pairwise
/// separation at least `1e-3`, values in the unit disc, weights with
/// log-uniform modulus in `[1e-3, 1e3]` and uniform phase.
pub fn random_interpolant(rng: &mut impl Rng, m: usize) -> BarycentricRational<f64> {
    let mut nodes: Vec<C> = Vec::with_capacity(m + 1);
    while nodes.len() < m + 1 {
        let z = random_in_disc(rng, 1.0);
        if nodes.iter().all(|x| (x - z).norm() >= 1e-3) {
            nodes.push(z);
        }
    }
    let values = (0..=m).map(|_| random_in_disc(rng, 1.0)).collect();
    let weights = (0..=m)
        .map(|_| {
            let modulus = 10f64.powf(rng.random::<f64>() * 6.0 - 3.0);
            C::from_polar(modulus, rng.random::<f64>() * std::f64::consts::TAU)
        })
        .collect();
    BarycentricRational::new(nodes, values, weights).unwrap()
}

pub fn rel_err(a: &[C], b: &[C]) -> f64 {
    let num: f64 = a.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()).sum::<f64>().sqrt();
    let den: f64 = b.iter().map(|y| y.norm_sqr()).sum::<f64>().sqrt();
    if den == 0.0 {
        num
    } else {
        num / den
    }
}

/// Random split problem `F(z) = C_0 + z·C_1 + C_2/(z − s)` of size `n` with
/// the pole `s` well outside the unit disc, so that the surrogate is a
/// type-[2, 1] rational and AAA stops at a small degree.
pub fn random_split_problem(rng: &mut impl Rng, n: usize) -> ratconv::nleigs::SplitNlep<f64> {
    use ratconv::nleigs::{ScalarFn, SplitNlep};
    let s = C::from_polar(2.0 + rng.random::<f64>(), rng.random::<f64>() * std::f64::consts::TAU);
    SplitNlep::new(vec![
        (ScalarFn::Poly(vec![c(1.0, 0.0)]), random_matrix(rng, n, n)),
        (ScalarFn::Poly(vec![c(0.0, 0.0), c(1.0, 0.0)]), random_matrix(rng, n, n)),
        (ScalarFn::InvLin(s), random_matrix(rng, n, n)),
    ])
    .unwrap()
}
