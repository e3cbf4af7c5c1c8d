//! End-to-end reproductions of the two worked examples: rational
//! approximation of zeta applied to a matrix, and the square-root
//! nonlinear eigenvalue problem.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use ratconv::barycentric::{aaa_fit, SampleSet};
use ratconv::matfun::{eval_matrix, MatFunRequest};
use ratconv::nleigs::{discretize_boundary, sample_scale, NlepOptions, DEFAULT_NPTS};
use ratconv::problems::{
    eig_function_reference, example_matrix, sqrt_nep, sqrt_nep_all_eigenvalues, sqrt_nep_oracle, sqrt_nep_target,
    truncated_zeta, zeta_target, ZETA_TERMS,
};
use ratconv::represent::bary_to_pencil;
use ratconv::{CMatrix64, Complex64};

use crate::commands::nleigs_staged;
use crate::error::{CliError, CliResult};
use crate::io::{csv_text, fmt_f64, mtx_text, samples_csv, to_json, vector_csv, FnSpec, InterpFile, ProblemFile, ProblemTerm, Sidecar, Staged};

/// Environment variable naming the base directory for demo output.
pub const OUTDIR_ENV: &str = "RATCONV_OUTDIR";

pub const ZETA_MAX_REL_ERROR: f64 = 1e-10;
pub const SQRT_DEGREE_BAND: (usize, usize) = (12, 18);
pub const SQRT_EIGENVALUE_COUNT: usize = 3;
pub const SQRT_MAX_MATCH_ERROR: f64 = 1e-7;
pub const SCALAR_ERROR_FACTOR: f64 = 1e-12;
pub const MATRIX_TO_SCALAR_FACTOR: f64 = 1e3;

/// `--outdir` if given, else `$RATCONV_OUTDIR/<name>`, else `demo-output/<name>`.
pub fn resolve_outdir(explicit: Option<&Path>, name: &str) -> PathBuf {
    if let Some(p) = explicit {
        return p.to_path_buf();
    }
    match std::env::var_os(OUTDIR_ENV) {
        Some(base) if !base.is_empty() => PathBuf::from(base).join(name),
        _ => PathBuf::from("demo-output").join(name),
    }
}

fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

#[derive(Debug, Clone)]
pub struct ZetaReport {
    pub degree: usize,
    pub final_aaa_error: f64,
    pub scale: f64,
    pub relative_error: f64,
    pub seconds: f64,
}

impl ZetaReport {
    pub fn passed(&self) -> bool {
        self.relative_error <= ZETA_MAX_REL_ERROR
    }

    fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "demo: zeta");
        let _ = writeln!(s, "aaa_degree: {}", self.degree);
        let _ = writeln!(s, "aaa_final_error: {}", fmt_f64(self.final_aaa_error));
        let _ = writeln!(s, "sample_scale: {}", fmt_f64(self.scale));
        let _ = writeln!(s, "relative_error: {}", fmt_f64(self.relative_error));
        let _ = writeln!(s, "bound: {}", fmt_f64(ZETA_MAX_REL_ERROR));
        let _ = writeln!(s, "status: {}", if self.passed() { "PASS" } else { "FAIL" });
        s
    }
}

/// Fits zeta on 100 points of `[4 − 40i, 4 + 40i]`, evaluates `r(A)b` for
/// the 20×20 shifted skew-symmetric matrix and `b` of all ones, and
/// compares against the eigendecomposition reference.
pub fn run_zeta(outdir: &Path) -> CliResult<ZetaReport> {
    let start = Instant::now();
    let zeta = |z: Complex64| truncated_zeta(z, ZETA_TERMS);
    let z = discretize_boundary(&zeta_target::<f64>(), DEFAULT_NPTS)?;
    let samples = SampleSet::from_fn(z, zeta)?;
    let fit = aaa_fit(&samples)?;
    let a: CMatrix64 = example_matrix();
    let b = vec![Complex64::new(1.0, 0.0); a.rows()];
    let y = eval_matrix(&MatFunRequest::new(fit.interp.clone(), a.clone(), b.clone())?)?;
    let reference = eig_function_reference(&a, &b, zeta)?;
    let diff: Vec<Complex64> = y.iter().zip(&reference).map(|(p, q)| p - q).collect();
    let report = ZetaReport {
        degree: fit.degree(),
        final_aaa_error: fit.final_error(),
        scale: sample_scale(&samples),
        relative_error: norm(&diff) / norm(&reference),
        seconds: start.elapsed().as_secs_f64(),
    };

    let mut staged = Staged::new();
    staged.add(outdir.join("samples.csv"), samples_csv(&samples));
    staged.add(outdir.join("interp.json"), to_json(&InterpFile::from_interp(&fit.interp)));
    staged.add(outdir.join("interp.rkfun.json"), to_json(&Sidecar::from_pencil(&bary_to_pencil(&fit.interp))));
    staged.add(outdir.join("A.mtx"), mtx_text(&a));
    staged.add(outdir.join("b.csv"), vector_csv(&b));
    staged.add(outdir.join("y.csv"), vector_csv(&y));
    staged.add(outdir.join("reference.csv"), vector_csv(&reference));
    staged.add(
        outdir.join("error_history.csv"),
        csv_text(
            &["degree", "error"],
            fit.error_history.iter().enumerate().map(|(k, e)| vec![k.to_string(), fmt_f64(*e)]),
        ),
    );
    staged.add(outdir.join("report.txt"), report.text());
    staged.commit()?;
    Ok(report)
}

#[derive(Debug, Clone)]
pub struct SqrtNepReport {
    pub seed: u64,
    pub degree: usize,
    pub eigenvalues: Vec<Complex64>,
    pub oracle: Vec<Complex64>,
    /// Largest relative distance from a computed eigenvalue to its oracle match.
    pub max_match_error: f64,
    /// Computed eigenvalues without an oracle value within the bound.
    pub unmatched: usize,
    pub scale: f64,
    pub final_scalar_error: f64,
    pub final_matrix_error: f64,
    pub converged: bool,
    pub seconds: f64,
}

impl SqrtNepReport {
    pub fn degree_ok(&self) -> bool {
        (SQRT_DEGREE_BAND.0..=SQRT_DEGREE_BAND.1).contains(&self.degree)
    }

    pub fn eigenvalues_ok(&self) -> bool {
        self.eigenvalues.len() == SQRT_EIGENVALUE_COUNT
            && self.unmatched == 0
            && self.max_match_error <= SQRT_MAX_MATCH_ERROR
    }

    /// Final scalar error small relative to the samples, and the matrix
    /// interpolant converging alongside it.
    pub fn convergence_ok(&self) -> bool {
        self.final_scalar_error <= SCALAR_ERROR_FACTOR * self.scale
            && self.final_matrix_error <= MATRIX_TO_SCALAR_FACTOR * self.final_scalar_error
    }

    pub fn failures(&self) -> Vec<String> {
        let mut f = Vec::new();
        if !self.degree_ok() {
            f.push(format!(
                "degree {} outside [{}, {}]",
                self.degree, SQRT_DEGREE_BAND.0, SQRT_DEGREE_BAND.1
            ));
        }
        if !self.eigenvalues_ok() {
            f.push(format!(
                "{} eigenvalues ({} unmatched, max match error {})",
                self.eigenvalues.len(),
                self.unmatched,
                fmt_f64(self.max_match_error)
            ));
        }
        if !self.convergence_ok() {
            f.push(format!(
                "final errors scalar {} / matrix {} (scale {})",
                fmt_f64(self.final_scalar_error),
                fmt_f64(self.final_matrix_error),
                fmt_f64(self.scale)
            ));
        }
        f
    }

    pub fn passed(&self) -> bool {
        self.failures().is_empty()
    }

    fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "demo: sqrtnep");
        let _ = writeln!(s, "seed: {}", self.seed);
        let _ = writeln!(s, "aaa_degree: {}", self.degree);
        let _ = writeln!(s, "aaa_converged: {}", self.converged);
        let _ = writeln!(s, "eigenvalue_count: {}", self.eigenvalues.len());
        for l in &self.eigenvalues {
            let _ = writeln!(s, "eigenvalue: {},{}", fmt_f64(l.re), fmt_f64(l.im));
        }
        let _ = writeln!(s, "oracle_count: {}", self.oracle.len());
        let _ = writeln!(s, "max_match_error: {}", fmt_f64(self.max_match_error));
        let _ = writeln!(s, "unmatched: {}", self.unmatched);
        let _ = writeln!(s, "sample_scale: {}", fmt_f64(self.scale));
        let _ = writeln!(s, "final_scalar_error: {}", fmt_f64(self.final_scalar_error));
        let _ = writeln!(s, "final_matrix_error: {}", fmt_f64(self.final_matrix_error));
        let _ = writeln!(s, "status: {}", if self.passed() { "PASS" } else { "FAIL" });
        s
    }
}

/// Matches each computed eigenvalue to its nearest oracle value; returns the
/// largest relative distance and how many exceed `SQRT_MAX_MATCH_ERROR`.
fn match_against(computed: &[Complex64], oracle: &[Complex64]) -> (f64, usize) {
    let mut worst = 0.0f64;
    let mut unmatched = 0;
    let mut used = vec![false; oracle.len()];
    for l in computed {
        let best = oracle
            .iter()
            .enumerate()
            .filter(|(i, _)| !used[*i])
            .map(|(i, o)| (i, (l - o).norm() / o.norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1));
        match best {
            Some((i, d)) if d <= SQRT_MAX_MATCH_ERROR => {
                used[i] = true;
                worst = worst.max(d);
            }
            Some((_, d)) => {
                unmatched += 1;
                worst = worst.max(d);
            }
            None => {
                unmatched += 1;
                worst = f64::INFINITY;
            }
        }
    }
    (worst, unmatched)
}

/// Solves `A − √z·I` on the disc of radius 50 around `10 + 50i` through the
/// surrogate fit and linearization, writing the problem files, eigenvalues,
/// plot data and a report.
pub fn run_sqrtnep(seed: u64, outdir: &Path) -> CliResult<SqrtNepReport> {
    let start = Instant::now();
    let f = sqrt_nep::<f64>();
    let target = sqrt_nep_target::<f64>();
    let opts = NlepOptions {
        seed,
        ..Default::default()
    };
    let mut exact = sqrt_nep_all_eigenvalues::<f64>()?;
    exact.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    let oracle = sqrt_nep_oracle(&target)?;
    let (sol, hist, mut staged) = nleigs_staged(
        &f,
        &target,
        &opts,
        &outdir.join("eigs.csv"),
        Some(&outdir.join("plot")),
        &exact,
    )?;
    let last = hist
        .last()
        .ok_or_else(|| CliError::Numerical("empty approximation history".into()))?;
    let (max_match_error, unmatched) = match_against(&sol.eigenvalues, &oracle);
    let report = SqrtNepReport {
        seed,
        degree: sol.degree,
        eigenvalues: sol.eigenvalues.clone(),
        oracle,
        max_match_error,
        unmatched,
        scale: sample_scale(&sol.samples),
        final_scalar_error: last.scalar_error,
        final_matrix_error: last.matrix_error,
        converged: sol.aaa.converged,
        seconds: start.elapsed().as_secs_f64(),
    };

    let names = ["C0.mtx", "C1.mtx"];
    let problem = ProblemFile {
        dim: f.dim(),
        terms: f
            .terms()
            .iter()
            .zip(names)
            .map(|((func, _), name)| ProblemTerm {
                func: FnSpec::from_fn(func),
                matrix: name.into(),
            })
            .collect(),
    };
    staged.add(outdir.join("problem.json"), to_json(&problem));
    for ((_, c), name) in f.terms().iter().zip(names) {
        staged.add(outdir.join(name), mtx_text(c));
    }
    staged.add(outdir.join("samples.csv"), samples_csv(&sol.samples));
    staged.add(outdir.join("interp.json"), to_json(&InterpFile::from_interp(&sol.aaa.interp)));
    staged.add(outdir.join("report.txt"), report.text());
    staged.commit()?;
    Ok(report)
}

pub fn print_zeta(r: &ZetaReport, outdir: &Path, out: &mut dyn std::io::Write) -> std::io::Result<()> {
    writeln!(out, "zeta: degree {} relative error {}", r.degree, fmt_f64(r.relative_error))?;
    writeln!(out, "wall time: {:.2} s", r.seconds)?;
    writeln!(out, "artifacts in {}", outdir.display())
}

pub fn print_sqrtnep(r: &SqrtNepReport, outdir: &Path, out: &mut dyn std::io::Write) -> std::io::Result<()> {
    writeln!(
        out,
        "sqrtnep (seed {}): degree {}, {} eigenvalues, max match error {}",
        r.seed,
        r.degree,
        r.eigenvalues.len(),
        fmt_f64(r.max_match_error)
    )?;
    for l in &r.eigenvalues {
        writeln!(out, "  {},{}", fmt_f64(l.re), fmt_f64(l.im))?;
    }
    writeln!(
        out,
        "final errors: scalar {} matrix {} (scale {})",
        fmt_f64(r.final_scalar_error),
        fmt_f64(r.final_matrix_error),
        fmt_f64(r.scale)
    )?;
    writeln!(out, "wall time: {:.2} s", r.seconds)?;
    writeln!(out, "artifacts in {}", outdir.display())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matching_counts_strays() {
        let o = [Complex64::new(1.0, 0.0), Complex64::new(2.0, 0.0)];
        assert_eq!(match_against(&o, &o), (0.0, 0));
        let (_, bad) = match_against(&[Complex64::new(1.0, 0.0), Complex64::new(1.0, 1e-12)], &o);
        assert_eq!(bad, 1);
    }

    #[test]
    fn explicit_outdir_wins() {
        assert_eq!(resolve_outdir(Some(Path::new("x")), "zeta"), PathBuf::from("x"));
    }
}
