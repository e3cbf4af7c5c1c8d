//! File formats: interpolant and sidecar JSON, problem JSON, sample/point/
//! vector CSV and Matrix Market arrays.
//!
//! Complex numbers are `[re, im]` pairs in JSON and `re,im` column pairs in
//! CSV, always written in shortest round-trip form.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use ratconv::nleigs::ScalarFn;
use ratconv::represent::Normalization;
use ratconv::{Barycentric64, CMatrix64, Complex64, Newton64, RKFunPencil64, SampleSet64, SplitNlep64};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

pub type Pair = [f64; 2];

fn pair(z: Complex64) -> Pair {
    [z.re, z.im]
}

fn unpair(p: &Pair) -> Complex64 {
    Complex64::new(p[0], p[1])
}

fn pairs(v: &[Complex64]) -> Vec<Pair> {
    v.iter().copied().map(pair).collect()
}

fn unpairs(v: &[Pair]) -> Vec<Complex64> {
    v.iter().map(unpair).collect()
}

fn matrix_rows(a: &CMatrix64) -> Vec<Vec<Pair>> {
    (0..a.rows()).map(|i| pairs(a.row(i))).collect()
}

fn rows_matrix(rows: &[Vec<Pair>], name: &str) -> CliResult<CMatrix64> {
    let r = rows.len();
    let c = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|row| row.len() != c) {
        return Err(CliError::input(format!("{name}: ragged rows")));
    }
    let data = rows.iter().flat_map(|row| unpairs(row)).collect();
    Ok(CMatrix64::from_row_major(r, c, data)?)
}

/// Shortest round-trip decimal for `x`, without a trailing `.0` and with
/// negative zero printed as `0`.
pub fn fmt_f64(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    let s = format!("{x:?}");
    match s.strip_suffix(".0") {
        Some(t) => t.to_string(),
        None => s,
    }
}

pub fn fmt_complex_csv(z: Complex64) -> String {
    format!("{},{}", fmt_f64(z.re), fmt_f64(z.im))
}

// ---------------------------------------------------------------- JSON

/// Barycentric interpolant on disk.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InterpFile {
    pub m: usize,
    pub nodes: Vec<Pair>,
    pub values: Vec<Pair>,
    pub weights: Vec<Pair>,
}

impl InterpFile {
    pub fn from_interp(r: &Barycentric64) -> Self {
        Self {
            m: r.degree(),
            nodes: pairs(r.nodes()),
            values: pairs(r.values()),
            weights: pairs(r.weights()),
        }
    }

    pub fn to_interp(&self) -> CliResult<Barycentric64> {
        if [&self.nodes, &self.values, &self.weights].iter().any(|v| v.len() != self.m + 1) {
            return Err(CliError::input(format!(
                "interpolant of degree m = {} needs {} nodes, values and weights",
                self.m,
                self.m + 1
            )));
        }
        Ok(Barycentric64::new(
            unpairs(&self.nodes),
            unpairs(&self.values),
            unpairs(&self.weights),
        )?)
    }
}

/// Converted representations, tagged by `kind`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum Sidecar {
    Rkfun {
        normalization: NormalizationTag,
        m: usize,
        #[serde(rename = "H")]
        h: Vec<Vec<Pair>>,
        #[serde(rename = "K")]
        k: Vec<Vec<Pair>>,
        coeffs: Vec<Pair>,
    },
    Newton {
        m: usize,
        sigma: Vec<Pair>,
        beta: Vec<Pair>,
        h: Vec<Pair>,
        k: Vec<Pair>,
        coeffs: Vec<Pair>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NormalizationTag {
    PartitionOfUnity,
    FirstBasisConstant,
}

impl Sidecar {
    pub fn from_pencil(p: &RKFunPencil64) -> Self {
        Sidecar::Rkfun {
            normalization: match p.normalization() {
                Normalization::PartitionOfUnity => NormalizationTag::PartitionOfUnity,
                Normalization::FirstBasisConstant => NormalizationTag::FirstBasisConstant,
            },
            m: p.degree(),
            h: matrix_rows(p.h()),
            k: matrix_rows(p.k()),
            coeffs: pairs(p.coeffs()),
        }
    }

    pub fn from_newton(n: &Newton64) -> Self {
        Sidecar::Newton {
            m: n.degree(),
            sigma: pairs(n.sigma()),
            beta: pairs(n.beta()),
            h: pairs(n.h()),
            k: pairs(n.k()),
            coeffs: pairs(n.coeffs()),
        }
    }
}

/// Anything `eval` understands.
#[derive(Debug, Clone)]
pub enum Representation {
    Barycentric(Barycentric64),
    Pencil(RKFunPencil64),
    Newton(Newton64),
}

impl Representation {
    pub fn degree(&self) -> usize {
        match self {
            Representation::Barycentric(r) => r.degree(),
            Representation::Pencil(p) => p.degree(),
            Representation::Newton(n) => n.degree(),
        }
    }

    /// Value of the represented rational function. For the Newton form this
    /// is `Σ d_j b_j / Σ b_j`, which equals the barycentric interpolant.
    pub fn eval(&self, z: Complex64) -> ratconv::Result<Complex64> {
        match self {
            Representation::Barycentric(r) => r.eval(z),
            Representation::Pencil(p) => p.eval(z),
            Representation::Newton(n) => n.eval_normalized(z),
        }
    }
}

fn check_len(name: &str, got: usize, want: usize) -> CliResult<()> {
    if got != want {
        return Err(CliError::input(format!("{name} has length {got}, expected {want}")));
    }
    Ok(())
}

impl Sidecar {
    pub fn into_representation(self) -> CliResult<Representation> {
        match self {
            Sidecar::Rkfun {
                normalization,
                m,
                h,
                k,
                coeffs,
            } => {
                check_len("coeffs", coeffs.len(), m + 1)?;
                let (h, k) = (rows_matrix(&h, "H")?, rows_matrix(&k, "K")?);
                let norm = match normalization {
                    NormalizationTag::PartitionOfUnity => Normalization::PartitionOfUnity,
                    NormalizationTag::FirstBasisConstant => Normalization::FirstBasisConstant,
                };
                Ok(Representation::Pencil(RKFunPencil64::new(h, k, unpairs(&coeffs), norm)?))
            }
            Sidecar::Newton {
                m,
                sigma,
                beta,
                h,
                k,
                coeffs,
            } => {
                check_len("coeffs", coeffs.len(), m + 1)?;
                for (name, v) in [("sigma", &sigma), ("beta", &beta), ("h", &h), ("k", &k)] {
                    check_len(name, v.len(), m)?;
                }
                Ok(Representation::Newton(Newton64::new(
                    unpairs(&sigma),
                    unpairs(&beta),
                    unpairs(&h),
                    unpairs(&k),
                    unpairs(&coeffs),
                )?))
            }
        }
    }
}

fn read_text(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

fn parse_json<T: serde::de::DeserializeOwned>(text: &str, path: &Path) -> CliResult<T> {
    serde_json::from_str(text).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

pub fn read_interp(path: &Path) -> CliResult<Barycentric64> {
    parse_json::<InterpFile>(&read_text(path)?, path)?.to_interp()
}

/// Reads an interpolant file or a converted sidecar (recognised by its `kind` key).
pub fn read_representation(path: &Path) -> CliResult<Representation> {
    let text = read_text(path)?;
    let value: serde_json::Value = parse_json(&text, path)?;
    if value.get("kind").is_some() {
        parse_json::<Sidecar>(&text, path)?.into_representation()
    } else {
        Ok(Representation::Barycentric(parse_json::<InterpFile>(&text, path)?.to_interp()?))
    }
}

pub fn to_json<T: Serialize>(x: &T) -> String {
    let mut s = serde_json::to_string_pretty(x).expect("plain data serializes");
    s.push('\n');
    s
}

/// Split problem on disk; matrix paths are relative to the JSON file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub dim: usize,
    pub terms: Vec<ProblemTerm>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemTerm {
    #[serde(rename = "fn")]
    pub func: FnSpec,
    pub matrix: PathBuf,
}

/// A real number or an `[re, im]` pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Number {
    Real(f64),
    Complex(Pair),
}

impl Number {
    pub fn value(self) -> Complex64 {
        match self {
            Number::Real(x) => Complex64::new(x, 0.0),
            Number::Complex(p) => unpair(&p),
        }
    }

    pub fn from_complex(z: Complex64) -> Self {
        if z.im == 0.0 {
            Number::Real(z.re)
        } else {
            Number::Complex(pair(z))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum FnSpec {
    /// `Σ_k coeffs[k]·z^k`.
    Poly { coeffs: Vec<Number> },
    Sqrt,
    /// `exp(scale·z)`.
    Exp { scale: Number },
    /// `1/(z − shift)`.
    Invlin { shift: Number },
}

impl FnSpec {
    pub fn to_fn(&self) -> ScalarFn<f64> {
        match self {
            FnSpec::Poly { coeffs } => ScalarFn::Poly(coeffs.iter().map(|c| c.value()).collect()),
            FnSpec::Sqrt => ScalarFn::Sqrt,
            FnSpec::Exp { scale } => ScalarFn::Exp(scale.value()),
            FnSpec::Invlin { shift } => ScalarFn::InvLin(shift.value()),
        }
    }

    pub fn from_fn(f: &ScalarFn<f64>) -> Self {
        match f {
            ScalarFn::Poly(c) => FnSpec::Poly {
                coeffs: c.iter().copied().map(Number::from_complex).collect(),
            },
            ScalarFn::Sqrt => FnSpec::Sqrt,
            ScalarFn::Exp(a) => FnSpec::Exp {
                scale: Number::from_complex(*a),
            },
            ScalarFn::InvLin(s) => FnSpec::Invlin {
                shift: Number::from_complex(*s),
            },
        }
    }
}

pub fn read_problem(path: &Path) -> CliResult<SplitNlep64> {
    let pf: ProblemFile = parse_json(&read_text(path)?, path)?;
    if pf.terms.is_empty() {
        return Err(CliError::input("problem has no terms"));
    }
    let base = path.parent().unwrap_or(Path::new("."));
    let mut terms = Vec::with_capacity(pf.terms.len());
    for t in &pf.terms {
        let m = read_mtx(&base.join(&t.matrix))?;
        if (m.rows(), m.cols()) != (pf.dim, pf.dim) {
            return Err(CliError::input(format!(
                "{}: expected {}x{}, got {}x{}",
                t.matrix.display(),
                pf.dim,
                pf.dim,
                m.rows(),
                m.cols()
            )));
        }
        terms.push((t.func.to_fn(), m));
    }
    Ok(SplitNlep64::new(terms)?)
}

// ---------------------------------------------------------------- CSV

fn csv_reader(path: &Path, header: &[&str]) -> CliResult<Vec<Vec<f64>>> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    let got = rdr
        .headers()
        .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?
        .clone();
    if got.iter().ne(header.iter().copied()) {
        return Err(CliError::input(format!(
            "{}: expected header `{}`",
            path.display(),
            header.join(",")
        )));
    }
    let mut rows = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
        let row = rec
            .iter()
            .map(|s| s.parse::<f64>().ok().filter(|x| x.is_finite()))
            .collect::<Option<Vec<f64>>>()
            .ok_or_else(|| CliError::input(format!("{}: bad number on data row {}", path.display(), i + 1)))?;
        rows.push(row);
    }
    Ok(rows)
}

pub const SAMPLES_HEADER: [&str; 4] = ["z_re", "z_im", "f_re", "f_im"];
pub const POINTS_HEADER: [&str; 2] = ["z_re", "z_im"];
pub const VECTOR_HEADER: [&str; 2] = ["re", "im"];

pub fn read_samples(path: &Path) -> CliResult<SampleSet64> {
    let rows = csv_reader(path, &SAMPLES_HEADER)?;
    if rows.len() < 2 {
        return Err(CliError::input(format!("{}: need at least 2 samples", path.display())));
    }
    let z = rows.iter().map(|r| Complex64::new(r[0], r[1])).collect();
    let f = rows.iter().map(|r| Complex64::new(r[2], r[3])).collect();
    Ok(SampleSet64::new(z, f)?)
}

pub fn read_points(path: &Path) -> CliResult<Vec<Complex64>> {
    Ok(csv_reader(path, &POINTS_HEADER)?
        .iter()
        .map(|r| Complex64::new(r[0], r[1]))
        .collect())
}

pub fn read_vector(path: &Path) -> CliResult<Vec<Complex64>> {
    Ok(csv_reader(path, &VECTOR_HEADER)?
        .iter()
        .map(|r| Complex64::new(r[0], r[1]))
        .collect())
}

/// CSV text with `header` and one line per row of already formatted fields.
pub fn csv_text(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut s = header.join(",");
    s.push('\n');
    for r in rows {
        s.push_str(&r.join(","));
        s.push('\n');
    }
    s
}

pub fn samples_csv(samples: &SampleSet64) -> String {
    csv_text(
        &SAMPLES_HEADER,
        samples.points().iter().zip(samples.values()).map(|(z, f)| {
            vec![fmt_f64(z.re), fmt_f64(z.im), fmt_f64(f.re), fmt_f64(f.im)]
        }),
    )
}

pub fn points_csv(z: &[Complex64]) -> String {
    csv_text(&POINTS_HEADER, z.iter().map(|z| vec![fmt_f64(z.re), fmt_f64(z.im)]))
}

pub fn vector_csv(v: &[Complex64]) -> String {
    csv_text(&VECTOR_HEADER, v.iter().map(|z| vec![fmt_f64(z.re), fmt_f64(z.im)]))
}

// ---------------------------------------------------------------- Matrix Market

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Field {
    Real,
    Complex,
}

/// Reads a dense (`array`) or sparse (`coordinate`) Matrix Market file with
/// `real`, `integer` or `complex` entries and `general` symmetry.
pub fn read_mtx(path: &Path) -> CliResult<CMatrix64> {
    parse_mtx(&read_text(path)?).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

pub fn parse_mtx(text: &str) -> Result<CMatrix64, String> {
    let mut lines = text.lines();
    let banner = lines.next().ok_or("empty file")?;
    let words: Vec<String> = banner.split_whitespace().map(str::to_lowercase).collect();
    if words.len() != 5 || words[0] != "%%matrixmarket" || words[1] != "matrix" {
        return Err("missing %%MatrixMarket matrix banner".into());
    }
    let dense = match words[2].as_str() {
        "array" => true,
        "coordinate" => false,
        f => return Err(format!("unsupported format `{f}`")),
    };
    let field = match words[3].as_str() {
        "real" | "integer" | "double" => Field::Real,
        "complex" => Field::Complex,
        f => return Err(format!("unsupported field `{f}`")),
    };
    if words[4] != "general" {
        return Err(format!("unsupported symmetry `{}` (only general)", words[4]));
    }
    let mut body = lines.filter(|l| !l.trim_start().starts_with('%') && !l.trim().is_empty());
    let size_line = body.next().ok_or("missing size line")?;
    let dims: Vec<usize> = size_line
        .split_whitespace()
        .map(|s| s.parse().map_err(|_| format!("bad size line `{size_line}`")))
        .collect::<Result<_, _>>()?;
    let num = |s: &str| -> Result<f64, String> {
        s.parse::<f64>()
            .ok()
            .filter(|x| x.is_finite())
            .ok_or_else(|| format!("bad number `{s}`"))
    };
    let entry = |toks: &[&str]| -> Result<Complex64, String> {
        match (field, toks) {
            (Field::Real, [re]) => Ok(Complex64::new(num(re)?, 0.0)),
            (Field::Complex, [re, im]) => Ok(Complex64::new(num(re)?, num(im)?)),
            _ => Err(format!("wrong number of fields in entry `{}`", toks.join(" "))),
        }
    };
    if dense {
        let &[r, c] = dims.as_slice() else {
            return Err("array size line must be `rows cols`".into());
        };
        let mut a = CMatrix64::zeros(r, c);
        let mut count = 0;
        for line in body {
            let toks: Vec<&str> = line.split_whitespace().collect();
            if count >= r * c {
                return Err("too many entries".into());
            }
            // Column-major order.
            a[(count % r, count / r)] = entry(&toks)?;
            count += 1;
        }
        if count != r * c {
            return Err(format!("expected {} entries, found {count}", r * c));
        }
        Ok(a)
    } else {
        let &[r, c, nnz] = dims.as_slice() else {
            return Err("coordinate size line must be `rows cols nnz`".into());
        };
        let mut a = CMatrix64::zeros(r, c);
        let mut count = 0;
        for line in body {
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() < 2 {
                return Err(format!("bad entry `{line}`"));
            }
            let idx = |s: &str, bound: usize| -> Result<usize, String> {
                s.parse::<usize>()
                    .ok()
                    .filter(|&i| (1..=bound).contains(&i))
                    .map(|i| i - 1)
                    .ok_or_else(|| format!("index `{s}` out of range"))
            };
            let (i, j) = (idx(toks[0], r)?, idx(toks[1], c)?);
            a[(i, j)] += entry(&toks[2..])?;
            count += 1;
        }
        if count != nnz {
            return Err(format!("expected {nnz} entries, found {count}"));
        }
        Ok(a)
    }
}

/// Dense complex Matrix Market text, column-major.
pub fn mtx_text(a: &CMatrix64) -> String {
    let mut s = String::from("%%MatrixMarket matrix array complex general\n");
    let _ = writeln!(s, "{} {}", a.rows(), a.cols());
    for j in 0..a.cols() {
        for i in 0..a.rows() {
            let z = a[(i, j)];
            let _ = writeln!(s, "{} {}", fmt_f64(z.re), fmt_f64(z.im));
        }
    }
    s
}

// ---------------------------------------------------------------- staged output

/// Files collected during a command and written only once everything has
/// been computed, so that failing commands leave no partial output.
#[derive(Debug, Default)]
pub struct Staged {
    files: Vec<(PathBuf, String)>,
}

impl Staged {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, path: impl Into<PathBuf>, contents: String) {
        self.files.push((path.into(), contents));
    }

    pub fn paths(&self) -> impl Iterator<Item = &Path> {
        self.files.iter().map(|(p, _)| p.as_path())
    }

    pub fn commit(self) -> CliResult<()> {
        for (path, text) in self.files {
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir)
                    .map_err(|e| CliError::input(format!("{}: {e}", dir.display())))?;
            }
            std::fs::write(&path, text).map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
        }
        Ok(())
    }
}
