//! Command-line front end for `ratconv`: fit, convert, evaluate and solve
//! from files, plus the two end-to-end demonstrations.

pub mod commands;
pub mod demo;
pub mod error;
pub mod io;
pub mod parse;

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use ratconv::barycentric::{DEFAULT_MMAX, DEFAULT_TOL};
use ratconv::nleigs::{NlepOptions, DEFAULT_NPTS, DEFAULT_RESIDUAL_CUT};

use commands::{ConvertTarget, Which};
pub use error::{CliError, CliResult};

#[derive(Debug, Parser)]
#[command(name = "ratconv", version, about = "Rational approximation, representation conversion and nonlinear eigenvalues")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fit a barycentric rational interpolant to samples (CSV z_re,z_im,f_re,f_im).
    Aaa {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(long, default_value_t = DEFAULT_MMAX)]
        mmax: usize,
        #[arg(long)]
        output: PathBuf,
    },
    /// Convert an interpolant file to its pencil (rkfun) or Newton form.
    Convert {
        #[arg(long, value_enum)]
        to: ConvertTarget,
        interp: PathBuf,
        /// Defaults to `<stem>.rkfun.json` / `<stem>.newton.json` beside the input.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Evaluate an interpolant or converted file at points (CSV z_re,z_im).
    Eval {
        file: PathBuf,
        #[arg(long)]
        points: PathBuf,
        /// Write CSV here instead of standard output.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Print the m roots, one `re,im` (or `inf`) per line.
    Roots { file: PathBuf },
    /// Print the m poles, one `re,im` (or `inf`) per line.
    Poles { file: PathBuf },
    /// Compute r(A)b for a Matrix Market matrix and a CSV vector (re,im).
    Funm {
        interp: PathBuf,
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        vector: PathBuf,
        #[arg(long)]
        output: PathBuf,
    },
    /// Eigenvalues of a split nonlinear problem inside a target set.
    Nleigs {
        #[arg(long)]
        problem: PathBuf,
        /// `disc:CENTER:RADIUS` or `interval:A:B`, e.g. `disc:10+50i:50`.
        #[arg(long, allow_hyphen_values = true)]
        target: String,
        #[arg(long, default_value_t = DEFAULT_NPTS)]
        npts: usize,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(long, default_value_t = DEFAULT_MMAX)]
        mmax: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_RESIDUAL_CUT)]
        residual_cut: f64,
        #[arg(long)]
        output: PathBuf,
        /// Directory for error_vs_degree.csv and spectrum.csv.
        #[arg(long)]
        plot_data: Option<PathBuf>,
    },
    /// Reproduce a worked example end to end.
    Demo {
        #[arg(value_enum)]
        name: DemoName,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Defaults to `$RATCONV_OUTDIR/<name>` or `demo-output/<name>`.
        #[arg(long)]
        outdir: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DemoName {
    Zeta,
    Sqrtnep,
}

impl DemoName {
    fn as_str(self) -> &'static str {
        match self {
            DemoName::Zeta => "zeta",
            DemoName::Sqrtnep => "sqrtnep",
        }
    }
}

pub fn run(cli: Cli, out: &mut dyn Write) -> CliResult<()> {
    match cli.command {
        Command::Aaa {
            input,
            tol,
            mmax,
            output,
        } => commands::aaa(
            &commands::AaaArgs {
                input: &input,
                tol,
                mmax,
                output: &output,
            },
            out,
        ),
        Command::Convert { to, interp, output } => commands::convert(&interp, to, output.as_deref(), out),
        Command::Eval { file, points, output } => commands::eval(&file, &points, output.as_deref(), out),
        Command::Roots { file } => commands::roots_poles(&file, Which::Roots, out),
        Command::Poles { file } => commands::roots_poles(&file, Which::Poles, out),
        Command::Funm {
            interp,
            matrix,
            vector,
            output,
        } => commands::funm(&interp, &matrix, &vector, &output),
        Command::Nleigs {
            problem,
            target,
            npts,
            tol,
            mmax,
            seed,
            residual_cut,
            output,
            plot_data,
        } => {
            let target = parse::parse_target(&target)?;
            commands::nleigs(
                &commands::NleigsArgs {
                    problem: &problem,
                    target: &target,
                    opts: NlepOptions {
                        n_boundary: npts,
                        tol,
                        mmax,
                        seed,
                        residual_cut,
                    },
                    output: &output,
                    plot_data: plot_data.as_deref(),
                },
                out,
            )
        }
        Command::Demo { name, seed, outdir } => {
            let dir = demo::resolve_outdir(outdir.as_deref(), name.as_str());
            let io_err = |e: std::io::Error| CliError::Numerical(format!("cannot write to standard output: {e}"));
            match name {
                DemoName::Zeta => {
                    let r = demo::run_zeta(&dir)?;
                    demo::print_zeta(&r, &dir, out).map_err(io_err)?;
                    if !r.passed() {
                        return Err(CliError::Acceptance(format!(
                            "relative error {} exceeds {}",
                            io::fmt_f64(r.relative_error),
                            io::fmt_f64(demo::ZETA_MAX_REL_ERROR)
                        )));
                    }
                }
                DemoName::Sqrtnep => {
                    let r = demo::run_sqrtnep(seed, &dir)?;
                    demo::print_sqrtnep(&r, &dir, out).map_err(io_err)?;
                    let failures = r.failures();
                    if !failures.is_empty() {
                        return Err(CliError::Acceptance(failures.join("; ")));
                    }
                }
            }
            Ok(())
        }
    }
}
