use crate::barycentric::{aaa_fit_with, loewner_weights, AaaOptions, AaaReport, SampleSet};
use crate::error::Result;
use crate::nleigs::linearization::{build_linearization, recover_eigvec, Linearization};
use crate::nleigs::{discretize_boundary, surrogate_sample, SplitNlep, TargetSet};
use crate::numkernel::{generalized_eig_with, norm2, CMatrix, EigenValue, GenEigOptions};
use crate::represent::{bary_to_newton, bary_to_pencil, poles, sort_eigenvalues};
use crate::scalar::{creal, czero, eps_tol, lit, vec_norm, Real, C};

pub const DEFAULT_NPTS: usize = 100;
/// Relative residual above which a pencil eigenvalue is discarded.
pub const DEFAULT_RESIDUAL_CUT: f64 = 1e-6;

#[derive(Debug, Clone, Copy)]
pub struct NlepOptions<T: Real> {
    pub n_boundary: usize,
    /// AAA tolerance relative to the largest surrogate sample.
    pub tol: T,
    pub mmax: usize,
    pub seed: u64,
    pub residual_cut: T,
}

impl<T: Real> Default for NlepOptions<T> {
    fn default() -> Self {
        let aaa = AaaOptions::<T>::default();
        Self {
            n_boundary: DEFAULT_NPTS,
            tol: aaa.tol,
            mmax: aaa.mmax,
            seed: 1,
            residual_cut: eps_tol(DEFAULT_RESIDUAL_CUT),
        }
    }
}

#[derive(Debug, Clone)]
pub struct NlepSolution<T: Real> {
    /// Accepted eigenvalues, sorted by real then imaginary part.
    pub eigenvalues: Vec<C<T>>,
    /// Unit-norm eigenvectors aligned with `eigenvalues`.
    pub eigenvectors: Vec<Vec<C<T>>>,
    pub residuals: Vec<T>,
    pub degree: usize,
    pub surrogate_error_history: Vec<T>,
    /// Every eigenvalue of the pencil, unfiltered.
    pub all_pencil_eigenvalues: Vec<EigenValue<T>>,
    /// Support points `z_j` chosen by AAA.
    pub nodes: Vec<C<T>>,
    /// Poles of the scalar surrogate interpolant.
    pub poles: Vec<EigenValue<T>>,
    pub aaa: AaaReport<T>,
    pub samples: SampleSet<T>,
    pub u: Vec<C<T>>,
    pub v: Vec<C<T>>,
    /// `None` when the surrogate is constant (degree 0).
    pub linearization: Option<Linearization<T>>,
}

/// `‖F(λ)x‖₂ / Σ_i |f_i(λ)|·‖C_i‖_F`.
pub fn residual<T: Real>(f: &SplitNlep<T>, lambda: C<T>, x: &[C<T>]) -> Result<T> {
    let mut scale = T::zero();
    let mut fx = vec![czero::<T>(); f.dim()];
    for (fi, ci) in f.terms() {
        let s = fi.eval(lambda)?;
        scale += s.norm() * ci.norm_fro();
        for (acc, v) in fx.iter_mut().zip(ci.mul_vec(x)) {
            *acc += s * v;
        }
    }
    let num = vec_norm(&fx);
    Ok(if scale > T::zero() { num / scale } else { num })
}

pub fn solve_nlep<T: Real>(
    f: &SplitNlep<T>,
    t: &TargetSet<T>,
    n_boundary: usize,
    tol: T,
    seed: u64,
    residual_cut: T,
) -> Result<NlepSolution<T>> {
    let opts = NlepOptions {
        n_boundary,
        tol,
        seed,
        residual_cut,
        ..Default::default()
    };
    solve_nlep_with(f, t, &opts)
}

pub fn solve_nlep_with<T: Real>(f: &SplitNlep<T>, t: &TargetSet<T>, opts: &NlepOptions<T>) -> Result<NlepSolution<T>> {
    let z = discretize_boundary(t, opts.n_boundary)?;
    let (samples, u, v) = surrogate_sample(f, &z, opts.seed)?;
    let aaa = aaa_fit_with(&samples, &AaaOptions { tol: opts.tol, mmax: opts.mmax })?;
    let interp = &aaa.interp;
    let m = interp.degree();
    let nodes = interp.nodes().to_vec();
    let mut sol = NlepSolution {
        eigenvalues: Vec::new(),
        eigenvectors: Vec::new(),
        residuals: Vec::new(),
        degree: m,
        surrogate_error_history: aaa.error_history.clone(),
        all_pencil_eigenvalues: Vec::new(),
        nodes: nodes.clone(),
        poles: Vec::new(),
        aaa: aaa.clone(),
        samples,
        u,
        v,
        linearization: None,
    };
    if m == 0 {
        return Ok(sol);
    }
    let mut pl = poles(&bary_to_pencil(interp))?;
    sort_eigenvalues(&mut pl);
    sol.poles = pl;

    let newton = bary_to_newton(interp);
    let d = nodes.iter().map(|&zj| f.eval(zj)).collect::<Result<Vec<_>>>()?;
    let lin = build_linearization(&newton, &d)?;
    let eo = GenEigOptions {
        shift: Some(t.center()),
        ..Default::default()
    };
    let res = generalized_eig_with(&lin.a, &lin.b, true, &eo)?;
    let vecs = res.vectors.as_ref().expect("requested eigenvectors");

    let mut accepted: Vec<(C<T>, Vec<C<T>>, T)> = Vec::new();
    for (i, ev) in res.values.iter().enumerate() {
        let Some(lambda) = ev.finite() else { continue };
        if !t.contains(lambda) {
            continue;
        }
        let Ok(x) = recover_eigvec(&vecs.column(i), lambda, &newton, f.dim()) else {
            continue;
        };
        let Ok(r) = residual(f, lambda, &x) else { continue };
        if r <= opts.residual_cut {
            accepted.push((lambda, x, r));
        }
    }
    accepted.sort_by(|a, b| {
        a.0.re
            .partial_cmp(&b.0.re)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.0.im.partial_cmp(&b.0.im).unwrap_or(std::cmp::Ordering::Equal))
    });
    for (l, x, r) in accepted {
        sol.eigenvalues.push(l);
        sol.eigenvectors.push(x);
        sol.residuals.push(r);
    }
    let mut all = res.values;
    sort_eigenvalues(&mut all);
    sol.all_pencil_eigenvalues = all;
    sol.linearization = Some(lin);
    Ok(sol)
}

/// Scalar and matrix approximation error at one degree.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DegreeError<T: Real> {
    pub degree: usize,
    /// `max_z |f(z) − r(z)|` over the samples.
    pub scalar_error: T,
    /// `max_z ‖F(z) − R(z)‖₂` over the samples.
    pub matrix_error: T,
}

/// Errors of the scalar surrogate interpolant and of the matrix-valued
/// interpolant `R(z) = Σ_j w_j F(z_j)/(z − z_j) / Σ_j w_j/(z − z_j)` for every
/// prefix of the AAA support sequence, with weights refit per prefix.
pub fn approximation_history<T: Real>(
    f: &SplitNlep<T>,
    samples: &SampleSet<T>,
    support: &[usize],
) -> Result<Vec<DegreeError<T>>> {
    let z = samples.points();
    let fz = z.iter().map(|&zi| f.eval(zi)).collect::<Result<Vec<_>>>()?;
    let mut out = Vec::with_capacity(support.len());
    for k in 1..=support.len() {
        let prefix = &support[..k];
        let w = loewner_weights(samples, prefix);
        let mut se = T::zero();
        let mut me = T::zero();
        for (i, &zi) in z.iter().enumerate() {
            if prefix.contains(&i) {
                continue;
            }
            let mut den = czero::<T>();
            let mut num_s = czero::<T>();
            let mut num_m = CMatrix::zeros(f.dim(), f.dim());
            for (&j, &wj) in prefix.iter().zip(&w) {
                let c = wj / (zi - z[j]);
                den += c;
                num_s += c * samples.values()[j];
                num_m.axpy(c, &fz[j]);
            }
            let r = num_s / den;
            se = se.max(nan_to_inf((samples.values()[i] - r).norm()));
            let diff = fz[i].sub(&num_m.scale(creal(T::one()) / den));
            me = me.max(nan_to_inf(norm2(&diff)));
        }
        out.push(DegreeError {
            degree: k - 1,
            scalar_error: se,
            matrix_error: me,
        });
    }
    Ok(out)
}

fn nan_to_inf<T: Real>(x: T) -> T {
    if x.is_nan() {
        T::infinity()
    } else {
        x
    }
}

/// Scale used for relative surrogate errors: `max |f|` over the samples.
pub fn sample_scale<T: Real>(samples: &SampleSet<T>) -> T {
    samples.values().iter().fold(lit::<T>(0.0), |m, v| m.max(v.norm()))
}
