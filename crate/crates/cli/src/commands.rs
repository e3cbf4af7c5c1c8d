use std::io::Write;
use std::path::{Path, PathBuf};

use ratconv::barycentric::{aaa_fit_with, AaaOptions};
use ratconv::matfun::{eval_matrix, MatFunRequest};
use ratconv::nleigs::{approximation_history, solve_nlep_with, sample_scale, NlepOptions};
use ratconv::represent::{bary_to_newton, bary_to_pencil, poles, roots, sort_eigenvalues};
use ratconv::{Complex64, EigenValue64, Error, NlepSolution64, RKFunPencil64, SplitNlep64, TargetSet64};

use crate::error::{CliError, CliResult};
use crate::io::{
    csv_text, fmt_complex_csv, fmt_f64, read_interp, read_mtx, read_points, read_problem, read_representation,
    read_samples, read_vector, samples_csv, to_json, vector_csv, InterpFile, Representation, Sidecar, Staged,
};

fn out_err(e: std::io::Error) -> CliError {
    CliError::Numerical(format!("cannot write to standard output: {e}"))
}

pub struct AaaArgs<'a> {
    pub input: &'a Path,
    pub tol: f64,
    pub mmax: usize,
    pub output: &'a Path,
}

pub fn aaa(args: &AaaArgs, out: &mut dyn Write) -> CliResult<()> {
    if !(args.tol.is_finite() && args.tol >= 0.0) {
        return Err(CliError::input("--tol must be a nonnegative number"));
    }
    let samples = read_samples(args.input)?;
    let report = aaa_fit_with(
        &samples,
        &AaaOptions {
            tol: args.tol,
            mmax: args.mmax,
        },
    )?;
    let mut staged = Staged::new();
    staged.add(args.output, to_json(&InterpFile::from_interp(&report.interp)));
    staged.commit()?;
    writeln!(out, "degree: {}", report.degree()).map_err(out_err)?;
    writeln!(out, "scale: {}", fmt_f64(sample_scale(&samples))).map_err(out_err)?;
    writeln!(out, "error history:").map_err(out_err)?;
    for (k, e) in report.error_history.iter().enumerate() {
        writeln!(out, "{k} {}", fmt_f64(*e)).map_err(out_err)?;
    }
    if !report.converged {
        return Err(CliError::NotConverged(format!(
            "stopped at degree {} ({:?}) with error {}",
            report.degree(),
            report.termination,
            fmt_f64(report.final_error())
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ConvertTarget {
    Rkfun,
    Newton,
}

/// `interp.json` → `interp.rkfun.json` / `interp.newton.json`.
pub fn default_sidecar_path(input: &Path, to: ConvertTarget) -> PathBuf {
    let stem = input.file_stem().unwrap_or_default().to_string_lossy();
    let ext = match to {
        ConvertTarget::Rkfun => "rkfun",
        ConvertTarget::Newton => "newton",
    };
    input.with_file_name(format!("{stem}.{ext}.json"))
}

pub fn convert(input: &Path, to: ConvertTarget, output: Option<&Path>, out: &mut dyn Write) -> CliResult<()> {
    let r = read_interp(input)?;
    let sidecar = match to {
        ConvertTarget::Rkfun => Sidecar::from_pencil(&bary_to_pencil(&r)),
        ConvertTarget::Newton => Sidecar::from_newton(&bary_to_newton(&r)),
    };
    let path = output.map_or_else(|| default_sidecar_path(input, to), Path::to_path_buf);
    let mut staged = Staged::new();
    staged.add(&path, to_json(&sidecar));
    staged.commit()?;
    writeln!(out, "wrote {}", path.display()).map_err(out_err)
}

pub fn eval(input: &Path, points: &Path, output: Option<&Path>, out: &mut dyn Write) -> CliResult<()> {
    let rep = read_representation(input)?;
    let z = read_points(points)?;
    let vals = z
        .iter()
        .map(|&zi| {
            rep.eval(zi).map_err(|e| match e {
                Error::PoleHit => CliError::Numerical(format!("{} is a pole", fmt_complex_csv(zi))),
                e => e.into(),
            })
        })
        .collect::<CliResult<Vec<_>>>()?;
    let samples = ratconv::SampleSet64::new(z, vals)?;
    let text = samples_csv(&samples);
    match output {
        Some(p) => {
            let mut staged = Staged::new();
            staged.add(p, text);
            staged.commit()
        }
        None => out.write_all(text.as_bytes()).map_err(out_err),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Which {
    Roots,
    Poles,
}

fn pencil_of(input: &Path) -> CliResult<RKFunPencil64> {
    match read_representation(input)? {
        Representation::Barycentric(r) => Ok(bary_to_pencil(&r)),
        Representation::Pencil(p) => Ok(p),
        Representation::Newton(_) => Err(CliError::input(
            "roots and poles need an interpolant or rkfun file, not a Newton sidecar",
        )),
    }
}

pub fn format_extended(z: &EigenValue64) -> String {
    match z {
        EigenValue64::Finite(z) => fmt_complex_csv(*z),
        EigenValue64::Infinite => "inf".into(),
    }
}

/// Roots or poles of the stored function: exactly `m` values, finite ones
/// sorted by real then imaginary part, infinite ones last.
pub fn roots_poles_values(input: &Path, which: Which) -> CliResult<Vec<EigenValue64>> {
    let p = pencil_of(input)?;
    let mut v = match which {
        Which::Roots => roots(&p),
        Which::Poles => poles(&p),
    }
    .map_err(|e| match e {
        Error::ZeroCoefficients => CliError::Numerical("coefficient vector is zero; roots are undefined".into()),
        e => e.into(),
    })?;
    sort_eigenvalues(&mut v);
    Ok(v)
}

pub fn roots_poles(input: &Path, which: Which, out: &mut dyn Write) -> CliResult<()> {
    for z in roots_poles_values(input, which)? {
        writeln!(out, "{}", format_extended(&z)).map_err(out_err)?;
    }
    Ok(())
}

pub fn funm(input: &Path, matrix: &Path, vector: &Path, output: &Path) -> CliResult<()> {
    let r = read_interp(input)?;
    let a = read_mtx(matrix)?;
    let b = read_vector(vector)?;
    let nodes = r.nodes().to_vec();
    let req = MatFunRequest::new(r, a, b)?;
    let y = eval_matrix(&req).map_err(|e| match e {
        Error::ResolventSingular(j) => CliError::Numerical(format!(
            "A - z_{j} I is singular at support node z_{j} = {}",
            fmt_complex_csv(nodes[j])
        )),
        e => e.into(),
    })?;
    let mut staged = Staged::new();
    staged.add(output, vector_csv(&y));
    staged.commit()
}

pub struct NleigsArgs<'a> {
    pub problem: &'a Path,
    pub target: &'a TargetSet64,
    pub opts: NlepOptions<f64>,
    pub output: &'a Path,
    pub plot_data: Option<&'a Path>,
}

/// `lambda_re,lambda_im,residual` rows.
pub fn eigs_csv(sol: &NlepSolution64) -> String {
    csv_text(
        &["lambda_re", "lambda_im", "residual"],
        sol.eigenvalues
            .iter()
            .zip(&sol.residuals)
            .map(|(l, r)| vec![fmt_f64(l.re), fmt_f64(l.im), fmt_f64(*r)]),
    )
}

/// Per-degree scalar and matrix approximation errors.
pub fn error_vs_degree_csv(f: &SplitNlep64, sol: &NlepSolution64) -> CliResult<(String, Vec<ratconv::nleigs::DegreeError<f64>>)> {
    let hist = approximation_history(f, &sol.samples, &sol.aaa.support)?;
    let text = csv_text(
        &["degree", "scalar_error", "matrix_error"],
        hist.iter()
            .map(|h| vec![h.degree.to_string(), fmt_f64(h.scalar_error), fmt_f64(h.matrix_error)]),
    );
    Ok((text, hist))
}

/// Points for the spectrum plot: optional exact eigenvalues, all finite
/// eigenvalues of the linearization, support nodes and finite poles.
pub fn spectrum_csv(sol: &NlepSolution64, exact: &[Complex64]) -> String {
    let row = |z: &Complex64, kind: &str| vec![fmt_f64(z.re), fmt_f64(z.im), kind.to_string()];
    let mut rows: Vec<Vec<String>> = exact.iter().map(|z| row(z, "exact")).collect();
    rows.extend(sol.all_pencil_eigenvalues.iter().filter_map(|e| e.finite()).map(|z| row(&z, "approx")));
    rows.extend(sol.nodes.iter().map(|z| row(z, "node")));
    rows.extend(sol.poles.iter().filter_map(|e| e.finite()).map(|z| row(&z, "pole")));
    csv_text(&["value_re", "value_im", "kind"], rows)
}

/// Runs the pipeline and stages `eigs.csv` plus optional plot data.
pub fn nleigs_staged(
    f: &SplitNlep64,
    target: &TargetSet64,
    opts: &NlepOptions<f64>,
    output: &Path,
    plot_data: Option<&Path>,
    exact: &[Complex64],
) -> CliResult<(NlepSolution64, Vec<ratconv::nleigs::DegreeError<f64>>, Staged)> {
    let sol = solve_nlep_with(f, target, opts)?;
    let mut staged = Staged::new();
    staged.add(output, eigs_csv(&sol));
    let mut hist = Vec::new();
    if let Some(dir) = plot_data {
        let (text, h) = error_vs_degree_csv(f, &sol)?;
        hist = h;
        staged.add(dir.join("error_vs_degree.csv"), text);
        staged.add(dir.join("spectrum.csv"), spectrum_csv(&sol, exact));
    }
    Ok((sol, hist, staged))
}

pub fn validate_options(opts: &NlepOptions<f64>) -> CliResult<()> {
    if !(opts.tol.is_finite() && opts.tol >= 0.0) {
        return Err(CliError::input("--tol must be a nonnegative number"));
    }
    if !(opts.residual_cut.is_finite() && opts.residual_cut > 0.0) {
        return Err(CliError::input("--residual-cut must be positive"));
    }
    Ok(())
}

pub fn nleigs(args: &NleigsArgs, out: &mut dyn Write) -> CliResult<()> {
    validate_options(&args.opts)?;
    let f = read_problem(args.problem)?;
    let (sol, _, staged) = nleigs_staged(&f, args.target, &args.opts, args.output, args.plot_data, &[])?;
    staged.commit()?;
    writeln!(out, "surrogate degree: {}", sol.degree).map_err(out_err)?;
    writeln!(out, "eigenvalues inside target: {}", sol.eigenvalues.len()).map_err(out_err)?;
    for (l, r) in sol.eigenvalues.iter().zip(&sol.residuals) {
        writeln!(out, "  {}  residual {}", fmt_complex_csv(*l), fmt_f64(*r)).map_err(out_err)?;
    }
    if !sol.aaa.converged {
        return Err(CliError::NotConverged(format!(
            "surrogate fit stopped at degree {} with error {}",
            sol.degree,
            fmt_f64(sol.aaa.final_error())
        )));
    }
    Ok(())
}
