//! Dense complex eigenvalue problems.
//!
//! Standard problems go through a Householder reduction to Hessenberg form
//! followed by single-shift complex QR iteration (Wilkinson shifts), giving a
//! Schur form `A = Z·T·Zᴴ`. Generalized problems are reduced to a standard
//! one, either `B⁻¹A` or the shift-and-invert operator `(A − τB)⁻¹B`.

use crate::error::{Error, Result};
use crate::numkernel::householder::householder_to_e1;
use crate::numkernel::lu::{cond_one, Lu};
use crate::numkernel::svd::svd_min_right;
use crate::numkernel::CMatrix;
use crate::scalar::{abs1, cone, czero, creal, eps_tol, lit, vec_norm, Real, C};

/// Maximum QR sweeps spent on a single eigenvalue before giving up.
const MAX_ITER_PER_EIGENVALUE: usize = 60;

/// `B` condition number above which the shift-and-invert route is taken.
pub const DEFAULT_COND_LIMIT: f64 = 1e10;

/// Relative size (for `f64`) below which a shift-and-invert eigenvalue is
/// declared zero, i.e. the pencil eigenvalue is infinite.
pub const DEFAULT_INFINITE_TOL: f64 = 1e-14;

/// An eigenvalue that may sit at infinity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EigenValue<T: Real> {
    Finite(C<T>),
    Infinite,
}

impl<T: Real> EigenValue<T> {
    pub fn finite(&self) -> Option<C<T>> {
        match *self {
            EigenValue::Finite(z) => Some(z),
            EigenValue::Infinite => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, EigenValue::Infinite)
    }
}

/// Eigenvalues of a (generalized) problem with optional right eigenvectors.
#[derive(Debug, Clone)]
pub struct EigenResult<T: Real> {
    pub values: Vec<EigenValue<T>>,
    /// Column `j` is a unit eigenvector for `values[j]` when it is finite.
    pub vectors: Option<CMatrix<T>>,
}

impl<T: Real> EigenResult<T> {
    pub fn finite_values(&self) -> Vec<C<T>> {
        self.values.iter().filter_map(EigenValue::finite).collect()
    }

    pub fn infinite_count(&self) -> usize {
        self.values.iter().filter(|v| v.is_infinite()).count()
    }
}

/// Tuning knobs for [`generalized_eig_with`].
#[derive(Debug, Clone, Copy)]
pub struct GenEigOptions<T: Real> {
    /// Forces shift-and-invert about this point. Eigenvalues close to the
    /// shift are resolved most accurately.
    pub shift: Option<C<T>>,
    pub cond_limit: T,
    pub infinite_tol: T,
}

impl<T: Real> Default for GenEigOptions<T> {
    fn default() -> Self {
        Self {
            shift: None,
            cond_limit: lit(DEFAULT_COND_LIMIT),
            infinite_tol: eps_tol(DEFAULT_INFINITE_TOL),
        }
    }
}

/// Reduces `a` to upper Hessenberg form, returning `(H, Q)` with `A = Q·H·Qᴴ`.
pub fn hessenberg<T: Real>(a: &CMatrix<T>) -> (CMatrix<T>, CMatrix<T>) {
    assert!(a.is_square());
    let n = a.rows();
    let mut h = a.clone();
    let mut q = CMatrix::identity(n);
    for k in 0..n.saturating_sub(2) {
        let x: Vec<C<T>> = (k + 1..n).map(|i| h[(i, k)]).collect();
        let tail = vec_norm(&x[1..]);
        if tail == T::zero() {
            continue;
        }
        let (p, gamma) = match householder_to_e1(&x) {
            Ok(r) => r,
            Err(_) => continue,
        };
        let u = p.vector();
        let s = creal(p.factor());
        // H ← P·H on rows k+1.., columns k..
        for j in k..n {
            let mut d = czero();
            for (t, ui) in u.iter().enumerate() {
                d += ui.conj() * h[(k + 1 + t, j)];
            }
            d *= s;
            for (t, ui) in u.iter().enumerate() {
                h[(k + 1 + t, j)] -= ui * d;
            }
        }
        // H ← H·P and Q ← Q·P on columns k+1..
        for m in [&mut h, &mut q] {
            for i in 0..n {
                let row = &mut m.row_mut(i)[k + 1..];
                let d = row
                    .iter()
                    .zip(u)
                    .fold(czero::<T>(), |acc, (a, ui)| acc + a * ui)
                    * s;
                for (a, ui) in row.iter_mut().zip(u) {
                    *a -= d * ui.conj();
                }
            }
        }
        h[(k + 1, k)] = gamma;
        for i in k + 2..n {
            h[(i, k)] = czero();
        }
    }
    (h, q)
}

#[derive(Clone, Copy)]
struct Givens<T: Real> {
    c: T,
    s: C<T>,
}

impl<T: Real> Givens<T> {
    /// Rotation `G = [[c, s], [−s̄, c]]` with `G·[a; b] = [r; 0]`.
    fn zeroing(a: C<T>, b: C<T>) -> (Self, C<T>) {
        let na = a.norm();
        let nb = b.norm();
        if nb == T::zero() {
            return (Self { c: T::one(), s: czero() }, a);
        }
        if na == T::zero() {
            return (Self { c: T::zero(), s: cone() }, b);
        }
        let norm = na.hypot(nb);
        let alpha = a / creal(na);
        let c = na / norm;
        let s = alpha * b.conj() / creal(norm);
        (Self { c, s }, alpha * creal(norm))
    }

    #[inline]
    fn apply_rows(&self, x: &mut C<T>, y: &mut C<T>) {
        let (a, b) = (*x, *y);
        *x = a * creal(self.c) + self.s * b;
        *y = -self.s.conj() * a + b * creal(self.c);
    }

    /// Right-multiplication by `Gᴴ` on a pair of column entries.
    #[inline]
    fn apply_cols(&self, x: &mut C<T>, y: &mut C<T>) {
        let (a, b) = (*x, *y);
        *x = a * creal(self.c) + b * self.s.conj();
        *y = -a * self.s + b * creal(self.c);
    }
}

fn wilkinson_shift<T: Real>(a: C<T>, b: C<T>, c: C<T>, d: C<T>) -> C<T> {
    let half = creal(lit::<T>(0.5));
    let delta = (a - d) * half;
    let bc = b * c;
    let disc = (delta * delta + bc).sqrt();
    let den = if (delta + disc).norm() >= (delta - disc).norm() {
        delta + disc
    } else {
        delta - disc
    };
    if den.norm() == T::zero() {
        d
    } else {
        d - bc / den
    }
}

/// Complex Schur decomposition `A = Z·T·Zᴴ` with `T` upper triangular.
pub fn schur<T: Real>(a: &CMatrix<T>) -> Result<(CMatrix<T>, CMatrix<T>)> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch("Schur form needs a square matrix".into()));
    }
    if !a.is_finite() {
        return Err(Error::InvalidInput("matrix has non-finite entries".into()));
    }
    let n = a.rows();
    let (mut h, mut z) = hessenberg(a);
    if n < 2 {
        return Ok((h, z));
    }
    let eps = T::epsilon();
    let hnorm = h.norm_fro().max(T::min_positive_value());
    let mut hi = n - 1;
    let mut iter = 0usize;
    let mut rots: Vec<Givens<T>> = Vec::with_capacity(n);
    while hi > 0 {
        let mut l = hi;
        while l > 0 {
            let mut s = abs1(h[(l - 1, l - 1)]) + abs1(h[(l, l)]);
            if s == T::zero() {
                s = hnorm;
            }
            if abs1(h[(l, l - 1)]) <= eps * s {
                h[(l, l - 1)] = czero();
                break;
            }
            l -= 1;
        }
        if l == hi {
            hi -= 1;
            iter = 0;
            continue;
        }
        iter += 1;
        if iter > MAX_ITER_PER_EIGENVALUE {
            return Err(Error::NoConvergence);
        }
        let mu = if iter.is_multiple_of(10) {
            h[(hi, hi)] + creal(lit::<T>(0.75) * h[(hi, hi - 1)].norm())
        } else {
            wilkinson_shift(
                h[(hi - 1, hi - 1)],
                h[(hi - 1, hi)],
                h[(hi, hi - 1)],
                h[(hi, hi)],
            )
        };

        // One explicitly shifted QR step on the active block l..=hi.
        for k in l..=hi {
            h[(k, k)] -= mu;
        }
        rots.clear();
        for k in l..hi {
            let (g, r) = Givens::zeroing(h[(k, k)], h[(k + 1, k)]);
            h[(k, k)] = r;
            h[(k + 1, k)] = czero();
            let (top, bottom) = h.rows_pair_mut(k, k + 1);
            for (x, y) in top[k + 1..].iter_mut().zip(&mut bottom[k + 1..]) {
                g.apply_rows(x, y);
            }
            rots.push(g);
        }
        for (idx, g) in rots.iter().enumerate() {
            let k = l + idx;
            let last = (k + 2).min(hi);
            for i in 0..=last {
                let row = h.row_mut(i);
                let (x, y) = row[k..k + 2].split_at_mut(1);
                g.apply_cols(&mut x[0], &mut y[0]);
            }
            for i in 0..n {
                let row = z.row_mut(i);
                let (x, y) = row[k..k + 2].split_at_mut(1);
                g.apply_cols(&mut x[0], &mut y[0]);
            }
        }
        for k in l..=hi {
            h[(k, k)] += mu;
        }
    }
    for j in 0..n {
        for i in j + 1..n {
            h[(i, j)] = czero();
        }
    }
    Ok((h, z))
}

/// Eigenvectors of an upper-triangular `T` by back substitution; columns are
/// unnormalized.
fn triangular_eigenvectors<T: Real>(t: &CMatrix<T>) -> CMatrix<T> {
    let n = t.rows();
    let small = T::epsilon() * t.norm_fro().max(T::min_positive_value());
    let mut x = CMatrix::zeros(n, n);
    for k in 0..n {
        let lambda = t[(k, k)];
        x[(k, k)] = cone();
        for j in (0..k).rev() {
            let mut s = czero::<T>();
            for l in j + 1..=k {
                s += t[(j, l)] * x[(l, k)];
            }
            let mut d = t[(j, j)] - lambda;
            if d.norm() < small {
                d = creal(small);
            }
            x[(j, k)] = -s / d;
        }
        // Rescale against overflow in long chains of tiny denominators.
        let m = (0..=k).fold(T::zero(), |m, i| m.max(abs1(x[(i, k)])));
        if m > lit(1e100) {
            for i in 0..=k {
                x[(i, k)] /= creal(m);
            }
        }
    }
    x
}

fn normalize_columns<T: Real>(v: &mut CMatrix<T>) {
    for j in 0..v.cols() {
        let col = v.column(j);
        let nrm = vec_norm(&col);
        if nrm > T::zero() {
            for i in 0..v.rows() {
                v[(i, j)] /= creal(nrm);
            }
        }
    }
}

/// Eigenvalues (and optionally unit right eigenvectors) of a square matrix.
pub fn eig<T: Real>(a: &CMatrix<T>, want_vectors: bool) -> Result<(Vec<C<T>>, Option<CMatrix<T>>)> {
    let (t, z) = schur(a)?;
    let values = t.diagonal();
    let vectors = if want_vectors {
        let mut v = z.matmul(&triangular_eigenvectors(&t));
        normalize_columns(&mut v);
        Some(v)
    } else {
        None
    };
    Ok((values, vectors))
}

/// Eigenvalues of the pencil `(A, B)`, i.e. the `λ` with `det(A − λB) = 0`.
pub fn generalized_eig<T: Real>(a: &CMatrix<T>, b: &CMatrix<T>, want_vectors: bool) -> Result<EigenResult<T>> {
    generalized_eig_with(a, b, want_vectors, &GenEigOptions::default())
}

pub fn generalized_eig_with<T: Real>(
    a: &CMatrix<T>,
    b: &CMatrix<T>,
    want_vectors: bool,
    opts: &GenEigOptions<T>,
) -> Result<EigenResult<T>> {
    if !a.is_square() || a.rows() != b.rows() || a.cols() != b.cols() {
        return Err(Error::DimensionMismatch(format!(
            "pencil needs equal square matrices, got {}x{} and {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    if !a.is_finite() || !b.is_finite() {
        return Err(Error::InvalidInput("pencil has non-finite entries".into()));
    }
    // Badly scaled rows or columns make singular values of the reduced
    // operator tiny without any eigenvalue being zero, which would send
    // finite eigenvalues to infinity in the deflation step.
    let (ab, bb, dc) = balance_pencil(a, b);
    let mut res = solve_pencil(&ab, &bb, want_vectors, opts)?;
    if let Some(v) = res.vectors.as_mut() {
        for j in 0..v.cols() {
            let mut col = v.column(j);
            for (x, d) in col.iter_mut().zip(&dc) {
                *x *= creal(*d);
            }
            let nrm = vec_norm(&col);
            if nrm > T::zero() {
                col.iter_mut().for_each(|x| *x /= creal(nrm));
            }
            v.set_column(j, &col);
        }
    }
    Ok(res)
}

/// Sweeps of the pencil balancing in [`balance_pencil`].
const BALANCE_SWEEPS: usize = 5;

fn pow2_near<T: Real>(x: T) -> T {
    let k = x.log2().round().to_i32().unwrap_or(0);
    lit::<T>(2.0).powi(k)
}

/// Diagonal equivalence `D_r (A, B) D_c` with power-of-two entries that
/// brings every row and column of the pair to unit max-modulus. Returns the
/// scaled pair and `D_c` (eigenvectors of the scaled pencil map back as
/// `x = D_c·y`).
fn balance_pencil<T: Real>(a: &CMatrix<T>, b: &CMatrix<T>) -> (CMatrix<T>, CMatrix<T>, Vec<T>) {
    let n = a.rows();
    let (mut a, mut b) = (a.clone(), b.clone());
    let mut dc = vec![T::one(); n];
    for _ in 0..BALANCE_SWEEPS {
        for i in 0..n {
            let r = (0..n).fold(T::zero(), |m, j| m.max(a[(i, j)].norm()).max(b[(i, j)].norm()));
            if r > T::zero() {
                let s = creal(pow2_near(T::one() / r));
                for j in 0..n {
                    a[(i, j)] *= s;
                    b[(i, j)] *= s;
                }
            }
        }
        for j in 0..n {
            let c = (0..n).fold(T::zero(), |m, i| m.max(a[(i, j)].norm()).max(b[(i, j)].norm()));
            if c > T::zero() {
                let s = pow2_near(T::one() / c);
                for i in 0..n {
                    a[(i, j)] *= creal(s);
                    b[(i, j)] *= creal(s);
                }
                dc[j] *= s;
            }
        }
    }
    (a, b, dc)
}

fn solve_pencil<T: Real>(
    a: &CMatrix<T>,
    b: &CMatrix<T>,
    want_vectors: bool,
    opts: &GenEigOptions<T>,
) -> Result<EigenResult<T>> {
    if !a.is_square() || a.rows() != b.rows() || a.cols() != b.cols() {
        return Err(Error::DimensionMismatch(format!(
            "pencil needs equal square matrices, got {}x{} and {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    if !a.is_finite() || !b.is_finite() {
        return Err(Error::InvalidInput("pencil has non-finite entries".into()));
    }
    let n = a.rows();
    if n == 0 {
        return Ok(EigenResult {
            values: Vec::new(),
            vectors: want_vectors.then(|| CMatrix::zeros(0, 0)),
        });
    }

    let cond_b = cond_one(b);
    if opts.shift.is_none() && cond_b < opts.cond_limit {
        let c = Lu::factor(b)?.solve(a);
        let (vals, vecs) = eig(&c, true)?;
        let vecs = vecs.expect("requested vectors");
        // A well-conditioned but tiny B (relative to A) still has eigenvalues
        // at infinity within rounding: λ is infinite when a perturbation of B
        // of relative size `infinite_tol` can annihilate B·x.
        let tol = opts.infinite_tol * (a.norm_fro() + b.norm_fro());
        let values = vals
            .into_iter()
            .enumerate()
            .map(|(j, l)| {
                let x = vecs.column(j);
                if vec_norm(&b.mul_vec(&x)) <= tol * vec_norm(&x) {
                    EigenValue::Infinite
                } else {
                    EigenValue::Finite(l)
                }
            })
            .collect();
        return Ok(EigenResult {
            values,
            vectors: want_vectors.then_some(vecs),
        });
    }

    let (tau, lu) = pick_shift(a, b, opts.shift)?;
    let c = lu.solve(b);
    let c_scale = c.norm_fro().max(T::min_positive_value());
    let zero_tol = opts.infinite_tol * c_scale;

    let mut mus: Vec<C<T>> = Vec::with_capacity(n);
    let mut vectors = want_vectors.then(|| CMatrix::zeros(n, n));
    if cond_b >= opts.cond_limit {
        let defl = deflate_zero_eigenvalues(c, zero_tol, want_vectors)?;
        mus = defl.values;
        if let Some(v) = vectors.as_mut() {
            *v = defl.vectors.expect("requested vectors");
        }
    } else {
        let (vals, vecs) = eig(&c, want_vectors)?;
        mus.extend(vals);
        if let Some(v) = vectors.as_mut() {
            *v = vecs.expect("requested vectors");
        }
    }

    let values = mus
        .into_iter()
        .map(|mu| {
            if mu.norm() <= zero_tol {
                EigenValue::Infinite
            } else {
                EigenValue::Finite(tau + cone::<T>() / mu)
            }
        })
        .collect();
    Ok(EigenResult { values, vectors })
}

/// Finds `τ` with `A − τB` safely invertible; several probes failing means
/// `det(A − λB)` vanishes identically.
fn pick_shift<T: Real>(a: &CMatrix<T>, b: &CMatrix<T>, shift: Option<C<T>>) -> Result<(C<T>, Lu<T>)> {
    let bn = b.norm_fro();
    let scale = if bn > T::zero() {
        (a.norm_fro() / bn).max(T::min_positive_value())
    } else {
        T::one()
    };
    let probes = [
        (0.318_309_886, 0.707_106_781),
        (-0.577_350_269, 0.270_670_566),
        (0.841_470_985, -0.540_302_306),
        (-0.135_335_283, -0.909_297_427),
    ];
    let base = shift.unwrap_or_else(czero);
    let mut candidates: Vec<C<T>> = Vec::with_capacity(probes.len() + 1);
    if shift.is_some() {
        candidates.push(base);
    }
    let rel = if shift.is_some() { lit::<T>(1e-3) } else { T::one() };
    for (re, im) in probes {
        candidates.push(base + C::new(lit::<T>(re), lit::<T>(im)) * creal(scale * rel));
    }
    for tau in candidates {
        let m = a.sub(&b.scale(tau));
        if let Ok(lu) = Lu::factor_with_tol(&m, eps_tol::<T>(1e-13)) {
            return Ok((tau, lu));
        }
    }
    Err(Error::SingularPencil)
}

struct Deflated<T: Real> {
    values: Vec<C<T>>,
    vectors: Option<CMatrix<T>>,
}

/// Splits off numerically zero eigenvalues of `c` one at a time.
///
/// At each stage a unitary `P` with first column spanning the null space of
/// the current block gives `Pᴴ·C·P = [[0, c₁₂], [0, C₂₂]]`, and the process
/// continues on `C₂₂`. Jordan chains at zero are therefore deflated exactly
/// rather than being perturbed to `O(√ε)`.
fn deflate_zero_eigenvalues<T: Real>(c: CMatrix<T>, zero_tol: T, want_vectors: bool) -> Result<Deflated<T>> {
    struct Stage<T: Real> {
        p: crate::numkernel::householder::Reflector<T>,
        c12: Vec<C<T>>,
    }
    let mut stages: Vec<Stage<T>> = Vec::new();
    let mut cur = c;
    while cur.rows() > 0 {
        let (smin, w) = svd_min_right(&cur);
        if smin > zero_tol {
            break;
        }
        let (p, _) = householder_to_e1(&w)?;
        let rotated = p.apply_right(&p.apply_left(&cur));
        let k = rotated.rows();
        let c12 = (1..k).map(|j| rotated[(0, j)]).collect();
        cur = rotated.block(1, k, 1, k);
        stages.push(Stage { p, c12 });
    }

    let (inner_vals, inner_vecs) = eig(&cur, want_vectors)?;
    let zeros = stages.len();
    let mut values = vec![czero(); zeros];
    values.extend(inner_vals.iter().copied());

    let vectors = if want_vectors {
        let inner_vecs = inner_vecs.expect("requested vectors");
        let n = zeros + cur.rows();
        // Maps a vector in the coordinates of stage `from` back to the input
        // coordinates. Vectors attached to deflated zeros are only meaningful
        // for the first stage (a true null vector); later ones are unspecified.
        let lift = |mut x: Vec<C<T>>, from: usize, value: C<T>| {
            for stage in stages[..from].iter().rev() {
                let x0 = if value.norm() > zero_tol {
                    stage
                        .c12
                        .iter()
                        .zip(&x)
                        .fold(czero::<T>(), |acc, (a, b)| acc + a * b)
                        / value
                } else {
                    czero()
                };
                let mut full = Vec::with_capacity(x.len() + 1);
                full.push(x0);
                full.extend_from_slice(&x);
                stage.p.apply_vec(&mut full);
                x = full;
            }
            x
        };
        let mut out = CMatrix::zeros(n, n);
        for (col, &value) in values.iter().enumerate() {
            let y = if col < zeros {
                let mut e = vec![czero(); n - col];
                e[0] = cone();
                stages[col].p.apply_vec(&mut e);
                lift(e, col, value)
            } else {
                lift(inner_vecs.column(col - zeros), zeros, value)
            };
            let nrm = vec_norm(&y);
            for (i, v) in y.iter().enumerate() {
                out[(i, col)] = if nrm > T::zero() { *v / creal(nrm) } else { *v };
            }
        }
        Some(out)
    } else {
        None
    };
    Ok(Deflated { values, vectors })
}
