//! Adaptive Antoulas–Anderson (AAA) rational approximation.
//!
//! Greedy loop: start from the mean of the sample values, repeatedly move
//! the sample with the largest residual into the support set, and pick the
//! barycentric weights as the right singular vector belonging to the
//! smallest singular value of the Loewner matrix
//! `L_ij = (F_i − f_j)/(Z_i − z_j)` (rows: non-support samples, columns:
//! support nodes).

use crate::barycentric::{BarycentricRational, SampleSet};
use crate::error::{Error, Result};
use crate::numkernel::{svd_min_right, CMatrix};
use crate::scalar::{eps_tol, from_usize, Real, C};

pub const DEFAULT_TOL: f64 = 1e-13;
pub const DEFAULT_MMAX: usize = 100;

#[derive(Debug, Clone, Copy)]
pub struct AaaOptions<T: Real> {
    /// Relative stopping tolerance against `max |F|`.
    pub tol: T,
    /// Maximum degree `m` (the support set holds at most `mmax + 1` nodes).
    pub mmax: usize,
}

impl<T: Real> Default for AaaOptions<T> {
    fn default() -> Self {
        Self {
            tol: eps_tol(DEFAULT_TOL),
            mmax: DEFAULT_MMAX,
        }
    }
}

/// Why the greedy loop stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    /// Residual reached `tol · max|F|`.
    Converged,
    /// All sample values coincide; the constant interpolant is returned.
    Degenerate,
    /// Hit `mmax` before reaching the tolerance.
    MaxDegree,
    /// Too few non-support samples left to determine another weight vector.
    Exhausted,
    /// The SVD kept returning a zero weight after one removal and retry.
    ZeroWeight,
}

#[derive(Debug, Clone)]
pub struct AaaReport<T: Real> {
    pub interp: BarycentricRational<T>,
    /// `error_history[k]` is `max |F − r|` over the samples at degree `k`.
    pub error_history: Vec<T>,
    pub converged: bool,
    pub termination: Termination,
    /// Indices into the sample set, in selection order (aligned with `interp.nodes()`).
    pub support: Vec<usize>,
}

impl<T: Real> AaaReport<T> {
    pub fn degree(&self) -> usize {
        self.interp.degree()
    }

    pub fn final_error(&self) -> T {
        *self.error_history.last().expect("history is never empty")
    }
}

/// Barycentric weights for a given support set: the unit right singular
/// vector of the Loewner matrix for its smallest singular value.
pub fn loewner_weights<T: Real>(samples: &SampleSet<T>, support: &[usize]) -> Vec<C<T>> {
    let z = samples.points();
    let f = samples.values();
    let mut in_support = vec![false; z.len()];
    for &j in support {
        in_support[j] = true;
    }
    let rows: Vec<usize> = (0..z.len()).filter(|&i| !in_support[i]).collect();
    let l = CMatrix::from_fn(rows.len(), support.len(), |r, c| {
        let i = rows[r];
        let j = support[c];
        (f[i] - f[j]) / (z[i] - z[j])
    });
    svd_min_right(&l).1
}

/// Runs AAA with default tolerance `1e-13` and `mmax = 100`.
pub fn aaa_fit<T: Real>(samples: &SampleSet<T>) -> Result<AaaReport<T>> {
    aaa_fit_with(samples, &AaaOptions::default())
}

pub fn aaa_fit_with<T: Real>(samples: &SampleSet<T>, opts: &AaaOptions<T>) -> Result<AaaReport<T>> {
    let n = samples.len();
    if n < 2 {
        return Err(Error::InvalidInput("AAA needs at least two sample points".into()));
    }
    if !(opts.tol > T::zero()) {
        return Err(Error::InvalidInput("AAA tolerance must be positive".into()));
    }
    let z = samples.points();
    let f = samples.values();
    let fnorm = f.iter().fold(T::zero(), |m, v| m.max(v.norm()));
    let spread = f.iter().fold(T::zero(), |m, v| m.max((v - f[0]).norm()));
    let degenerate = spread <= T::epsilon() * fnorm;
    let threshold = opts.tol * fnorm;

    let mean = f.iter().fold(C::new(T::zero(), T::zero()), |a, v| a + v) / C::new(from_usize(n), T::zero());
    let mut approx = vec![mean; n];
    let mut support: Vec<usize> = Vec::new();
    let mut excluded = vec![false; n];
    let mut history: Vec<T> = Vec::new();
    let mut snapshots: Vec<(BarycentricRational<T>, Vec<usize>)> = Vec::new();

    let termination = loop {
        let next = (0..n)
            .filter(|&i| !excluded[i] && !support.contains(&i))
            .map(|i| (i, (f[i] - approx[i]).norm()))
            .fold(None, |best: Option<(usize, T)>, cur| match best {
                Some(b) if b.1 >= cur.1 => Some(b),
                _ => Some(cur),
            });
        let Some((j, _)) = next else {
            break Termination::Exhausted;
        };
        support.push(j);

        let mut weights = loewner_weights(samples, &support);
        let mut replaced = false;
        if let Some(k) = weights.iter().position(|w| w.norm() == T::zero()) {
            excluded[support[k]] = true;
            support.remove(k);
            weights = loewner_weights(samples, &support);
            if weights.iter().any(|w| w.norm() == T::zero()) {
                break Termination::ZeroWeight;
            }
            replaced = true;
        }

        let nodes = support.iter().map(|&i| z[i]).collect();
        let vals = support.iter().map(|&i| f[i]).collect();
        let interp = BarycentricRational::new(nodes, vals, weights)?;
        let mut err = T::zero();
        for i in 0..n {
            approx[i] = if support.contains(&i) {
                f[i]
            } else {
                let (num, den) = interp.partial_fractions(z[i]);
                num / den
            };
            let e = (f[i] - approx[i]).norm();
            err = if e.is_nan() { T::infinity() } else { err.max(e) };
        }
        if replaced && !history.is_empty() {
            // The removal left the degree unchanged.
            history.pop();
            snapshots.pop();
        }
        history.push(err);
        snapshots.push((interp, support.clone()));

        if err <= threshold {
            break if degenerate { Termination::Degenerate } else { Termination::Converged };
        }
        let k = support.len();
        if k > opts.mmax {
            break Termination::MaxDegree;
        }
        // The next Loewner matrix would have n − k − 1 rows and k + 1 columns;
        // beyond one row short of square its null space is no longer unique.
        if n - k - 1 + 1 < k + 1 {
            break Termination::Exhausted;
        }
    };

    if snapshots.is_empty() {
        // Only reachable when the very first weight vector degenerates.
        let j = support.first().copied().unwrap_or(0);
        return Ok(AaaReport {
            interp: BarycentricRational::constant(z[j], f[j]),
            error_history: vec![f.iter().fold(T::zero(), |m, v| m.max((v - f[j]).norm()))],
            converged: false,
            termination,
            support: vec![j],
        });
    }

    let converged = matches!(termination, Termination::Converged | Termination::Degenerate);
    let pick = if converged {
        snapshots.len() - 1
    } else {
        history
            .iter()
            .enumerate()
            .fold(0, |best, (i, e)| if *e < history[best] { i } else { best })
    };
    history.truncate(pick + 1);
    let (interp, support) = snapshots.swap_remove(pick);
    Ok(AaaReport {
        interp,
        error_history: history,
        converged,
        termination,
        support,
    })
}
