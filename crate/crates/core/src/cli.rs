//! Command-line frontend. Every command emits a JSON document
//! `{command, family, params, results, diagnostics, error?}`; wavefunction
//! samples can also be written as CSV.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{QesError, Result};
use crate::params::{PTAnharmonicParams, PoschlTellerParams, SexticParams, TwoJ};
use crate::polynomials::{generate_pt_polynomials, generate_ptanh_polynomials, generate_sextic_polynomials};
use crate::potentials::{
    eval_potential, generalized_pt_closed_form, scarf_closed_form, scarf_shift, transform_general_shift,
    Domain, FamilyTag, PotentialFamily,
};
use crate::scalar::Precision;
use crate::spectra::{family_energy, lambda_spectrum_roots, lambda_spectrum_tridiagonal};
use crate::verify::{
    daniel_benchmark, default_samples, fd_spectrum, ptanh_limit_convergence, residual_check_state,
    sextic_limit_convergence, GridConfig,
};
use crate::wavefunctions::{eval_wavefunction, normalize_numerically, EigenfunctionSpec, IntegrationGrid};

#[derive(Debug, Parser)]
#[command(name = "qes", version, about = "Spectra and eigenfunctions of quasi-exactly solvable potentials")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Real roots of the critical polynomial and their energies.
    Spectrum {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, value_enum, default_value_t = Method::Roots)]
        method: Method,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Coefficients of P_0..P_upto (default upto = 2j+1).
    Polytable {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        upto: Option<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Samples of ψ and V for one algebraic level.
    Wavefunction {
        #[command(flatten)]
        model: ModelArgs,
        /// 0-based index into the ascending real roots.
        #[arg(long, default_value_t = 0)]
        level: usize,
        #[arg(long, allow_hyphen_values = true)]
        x_min: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        x_max: Option<f64>,
        #[arg(long, default_value_t = 201)]
        points: usize,
        /// Scale ψ to unit L² norm on the default FD grid.
        #[arg(long)]
        normalize: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Pointwise checks of the coordinate maps against their closed forms.
    TransformCheck {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Finite-difference, residual or limit verification.
    Verify {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, value_enum, default_value_t = VerifyMode::Residual)]
        mode: VerifyMode,
        /// FD levels to compute.
        #[arg(long, default_value_t = 3)]
        states: usize,
        #[arg(long)]
        points: Option<usize>,
        #[arg(long, default_value_t = 1e-6)]
        tolerance: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// The three benchmark sextic potentials by the QES and FD routes.
    BenchDaniel {
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Roots,
    Tridiagonal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VerifyMode {
    Fd,
    Residual,
    Limit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

/// Family selector and parameter flags. Which flags are required depends
/// on the family.
#[derive(Debug, Clone, Args)]
pub struct ModelArgs {
    #[arg(long)]
    pub family: FamilyTag,
    #[arg(long = "L", allow_hyphen_values = true)]
    pub l: Option<f64>,
    #[arg(long = "A", allow_hyphen_values = true)]
    pub big_a: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub q: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<f64>,
    /// Sets a = 1 and q = qa².
    #[arg(long, allow_hyphen_values = true)]
    pub qa2: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub ell: Option<f64>,
    /// Twice the QES index j.
    #[arg(long, default_value_t = 0)]
    pub twoj: u32,
    #[arg(long, default_value = "double")]
    pub precision: Precision,
}

impl clap::builder::ValueParserFactory for FamilyTag {
    type Parser = clap::builder::ValueParser;
    fn value_parser() -> Self::Parser {
        clap::builder::ValueParser::new(|s: &str| s.parse::<FamilyTag>())
    }
}

impl clap::builder::ValueParserFactory for Precision {
    type Parser = clap::builder::ValueParser;
    fn value_parser() -> Self::Parser {
        clap::builder::ValueParser::new(|s: &str| s.parse::<Precision>())
    }
}

fn required(name: &str, v: Option<f64>, family: FamilyTag) -> Result<f64> {
    v.ok_or_else(|| QesError::InvalidParameter(format!("--{name} is required for family {}", family.name())))
}

impl ModelArgs {
    fn oscillator_aq(&self) -> Result<(f64, f64)> {
        match (self.qa2, self.a, self.q) {
            (Some(qa2), None, None) => Ok((1.0, qa2)),
            (None, Some(a), Some(q)) => Ok((a, q)),
            (Some(_), _, _) => Err(QesError::InvalidParameter("--qa2 excludes --a and --q".into())),
            _ => Err(QesError::InvalidParameter(format!(
                "family {} needs --a and --q, or --qa2",
                self.family.name()
            ))),
        }
    }

    pub fn family(&self) -> Result<PotentialFamily> {
        let f = self.family;
        let twoj = TwoJ(self.twoj);
        Ok(match f {
            FamilyTag::PoschlTeller | FamilyTag::GeneralizedPT | FamilyTag::ScarfPT => {
                let p = PoschlTellerParams::new(
                    required("L", self.l, f)?,
                    required("A", self.big_a, f)?,
                    required("q", self.q, f)?,
                    required("alpha", self.alpha, f)?,
                    twoj,
                )?;
                match f {
                    FamilyTag::PoschlTeller => PotentialFamily::PoschlTeller(p),
                    FamilyTag::GeneralizedPT => PotentialFamily::GeneralizedPT(p),
                    _ => PotentialFamily::ScarfPT(p),
                }
            }
            FamilyTag::Sextic => {
                let (a, q) = self.oscillator_aq()?;
                PotentialFamily::Sextic(SexticParams::new(required("L", self.l, f)?, required("b", self.b, f)?, a, q, twoj)?)
            }
            FamilyTag::PTAnharmonic => {
                let (a, q) = self.oscillator_aq()?;
                PotentialFamily::PTAnharmonic(PTAnharmonicParams::new(
                    required("b", self.b, f)?,
                    a,
                    q,
                    required("ell", self.ell, f)?,
                    twoj,
                )?)
            }
        })
    }
}

/// Outcome of one invocation: exit status and what goes to stdout.
#[derive(Debug, Clone, PartialEq)]
pub struct CliOutcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn exit_code(err: &QesError) -> i32 {
    if err.is_validation() {
        1
    } else {
        2
    }
}

fn family_params(fam: &PotentialFamily) -> Value {
    serde_json::to_value(fam).map(|v| v["params"].clone()).unwrap_or(Value::Null)
}

struct Report {
    command: &'static str,
    family: Option<PotentialFamily>,
    results: Value,
    diagnostics: Value,
    csv: Option<String>,
}

fn envelope(command: &str, family: Option<&PotentialFamily>, results: Value, diagnostics: Value, error: Option<&QesError>) -> Value {
    let mut doc = json!({
        "command": command,
        "family": family.map(|f| f.tag().name()),
        "params": family.map(family_params).unwrap_or(Value::Null),
        "results": results,
        "diagnostics": diagnostics,
    });
    if let Some(e) = error {
        doc["error"] = json!({ "kind": error_kind(e), "message": e.to_string() });
    }
    doc
}

fn error_kind(e: &QesError) -> &'static str {
    match e {
        QesError::InvalidParameter(_) => "invalid-parameter",
        QesError::NegativeRadicand { .. } => "negative-radicand",
        QesError::OutOfRange { .. } => "out-of-range",
        QesError::DegenerateParameters(_) => "degenerate-parameters",
        QesError::Singularity { .. } => "singularity",
        QesError::Domain { .. } => "domain",
        QesError::Pole { .. } => "pole",
        QesError::GammaPole { .. } => "gamma-pole",
        QesError::InconsistentCoefficients { .. } => "inconsistent-coefficients",
        QesError::ComplexPotential => "complex-potential",
        QesError::NotConverged { .. } => "not-converged",
        QesError::StepUnderflow { .. } => "step-underflow",
        QesError::NonNormalizable { .. } => "non-normalizable",
        QesError::Numerical(_) => "numerical",
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

/// Parses arguments (the first item is the program name) and runs the command.
pub fn run<I, T>(args: I) -> CliOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let text = e.render().to_string();
            return if code == 0 {
                CliOutcome { code, stdout: text, stderr: String::new() }
            } else {
                CliOutcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    execute(cli.command)
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Spectrum { .. } => "spectrum",
        Command::Polytable { .. } => "polytable",
        Command::Wavefunction { .. } => "wavefunction",
        Command::TransformCheck { .. } => "transform-check",
        Command::Verify { .. } => "verify",
        Command::BenchDaniel { .. } => "bench-daniel",
    }
}

fn output_of(cmd: &Command) -> &OutputArgs {
    match cmd {
        Command::Spectrum { output, .. }
        | Command::Polytable { output, .. }
        | Command::Wavefunction { output, .. }
        | Command::TransformCheck { output, .. }
        | Command::Verify { output, .. }
        | Command::BenchDaniel { output } => output,
    }
}

fn model_of(cmd: &Command) -> Option<&ModelArgs> {
    match cmd {
        Command::Spectrum { model, .. }
        | Command::Polytable { model, .. }
        | Command::Wavefunction { model, .. }
        | Command::TransformCheck { model, .. }
        | Command::Verify { model, .. } => Some(model),
        Command::BenchDaniel { .. } => None,
    }
}

pub fn execute(cmd: Command) -> CliOutcome {
    let name = command_name(&cmd);
    let output = output_of(&cmd).clone();
    let (text, code, stderr) = match dispatch(&cmd) {
        Ok(report) => {
            let text = match (output.format, report.csv) {
                (Format::Csv, Some(csv)) => csv,
                _ => pretty(&envelope(report.command, report.family.as_ref(), report.results, report.diagnostics, None)),
            };
            (text, 0, String::new())
        }
        Err(e) => {
            let family = model_of(&cmd).and_then(|m| m.family().ok());
            let doc = envelope(name, family.as_ref(), Value::Null, json!({}), Some(&e));
            (pretty(&doc), exit_code(&e), format!("error: {e}\n"))
        }
    };
    match output.out {
        Some(path) => match std::fs::write(&path, &text) {
            Ok(()) => CliOutcome { code, stdout: String::new(), stderr },
            Err(e) => CliOutcome {
                code: 2,
                stdout: String::new(),
                stderr: format!("error: cannot write {}: {e}\n", path.display()),
            },
        },
        None => CliOutcome { code, stdout: text, stderr },
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn dispatch(cmd: &Command) -> Result<Report> {
    match cmd {
        Command::Spectrum { model, method, output } => {
            require_json(output, "spectrum")?;
            let fam = model.family()?;
            let sol = match method {
                Method::Roots => lambda_spectrum_roots(&fam, model.precision)?,
                Method::Tridiagonal => lambda_spectrum_tridiagonal(&fam, model.precision)?,
            };
            let diagnostics = json!({
                "real_roots": sol.lambda_roots.len(),
                "complex_roots": sol.complex_roots.len(),
                "max_residual": sol.residuals.iter().fold(0.0f64, |m, r| m.max(*r)),
            });
            Ok(Report { command: "spectrum", family: Some(fam), results: to_value(&sol), diagnostics, csv: None })
        }
        Command::Polytable { model, upto, output } => {
            require_json(output, "polytable")?;
            let fam = model.family()?;
            let upto = upto.unwrap_or(fam.twoj().levels());
            let polys = match &fam {
                PotentialFamily::PoschlTeller(p) | PotentialFamily::GeneralizedPT(p) | PotentialFamily::ScarfPT(p) => {
                    generate_pt_polynomials(p, upto, model.precision)?
                }
                PotentialFamily::Sextic(p) => generate_sextic_polynomials(p, upto, model.precision)?,
                PotentialFamily::PTAnharmonic(p) => generate_ptanh_polynomials(p, upto, model.precision)?,
            };
            let diagnostics = json!({ "upto": upto, "precision": model.precision });
            Ok(Report { command: "polytable", family: Some(fam), results: json!({ "polynomials": polys }), diagnostics, csv: None })
        }
        Command::Wavefunction { model, level, x_min, x_max, points, normalize, output } => {
            wavefunction(model, *level, *x_min, *x_max, *points, *normalize, output.format)
        }
        Command::TransformCheck { model, samples, output } => {
            require_json(output, "transform-check")?;
            transform_check(model, *samples)
        }
        Command::Verify { model, mode, states, points, tolerance, output } => {
            require_json(output, "verify")?;
            verify(model, *mode, *states, *points, *tolerance)
        }
        Command::BenchDaniel { output } => {
            require_json(output, "bench-daniel")?;
            let rows = daniel_benchmark(6)?;
            let table: Vec<Value> = rows
                .iter()
                .map(|r| {
                    json!({
                        "t": r.potential.t,
                        "s": r.potential.s,
                        "reference": r.potential.reference_energy,
                        "qes": r.qes_energy,
                        "fd": r.fd_energy,
                        "qes_error": r.qes_error,
                        "fd_error": r.fd_error,
                        "qes_within_1e-5": r.qes_error <= 1e-5,
                        "fd_within_1e-4": r.fd_error <= 1e-4,
                        "selected": r.selected,
                        "candidates": r.candidates,
                    })
                })
                .collect();
            let diagnostics = json!({
                "units": "potentials doubled to the -psi'' + V psi = E psi convention; energies halved back",
                "grid": crate::verify::daniel_grid(),
            });
            Ok(Report { command: "bench-daniel", family: None, results: json!({ "rows": table }), diagnostics, csv: None })
        }
    }
}

fn require_json(output: &OutputArgs, command: &str) -> Result<()> {
    if output.format == Format::Csv {
        return Err(QesError::InvalidParameter(format!("{command} only writes JSON")));
    }
    Ok(())
}

fn wavefunction(
    model: &ModelArgs,
    level: usize,
    x_min: Option<f64>,
    x_max: Option<f64>,
    points: usize,
    normalize: bool,
    format: Format,
) -> Result<Report> {
    let fam = model.family()?;
    let sol = lambda_spectrum_roots(&fam, model.precision)?;
    let max = sol.lambda_roots.len().saturating_sub(1);
    let lambda = *sol.lambda_roots.get(level).ok_or(QesError::OutOfRange { index: level, max })?;
    let mut spec = EigenfunctionSpec::new(fam, lambda)?;
    let grid = GridConfig::default_for(&fam);
    if normalize {
        let n = normalize_numerically(&spec, &IntegrationGrid::new(grid.x_min, grid.x_max, grid.n_points)?)?;
        spec = spec.scaled(Complex64::new(1.0 / n.sqrt(), 0.0));
    }
    let lo = x_min.unwrap_or(match fam.domain() {
        Domain::PositiveHalfLine => 0.01 * fam.length_scale(),
        Domain::RealLine => grid.x_min,
    });
    let hi = x_max.unwrap_or(grid.x_max);
    if !(lo < hi) || points < 2 {
        return Err(QesError::InvalidParameter(format!("need x_min < x_max and ≥ 2 points, got [{lo}, {hi}], {points}")));
    }
    let mut rows = Vec::with_capacity(points);
    for i in 0..points {
        let x = lo + (hi - lo) * i as f64 / (points - 1) as f64;
        rows.push((x, eval_wavefunction(&spec, x)?, eval_potential(&fam, x)?));
    }
    let csv = (format == Format::Csv).then(|| {
        let mut s = String::from("x,re_psi,im_psi,v_re,v_im\n");
        for (x, p, v) in &rows {
            let _ = writeln!(s, "{x:e},{:e},{:e},{:e},{:e}", p.re, p.im, v.re, v.im);
        }
        s
    });
    let samples: Vec<Value> = rows
        .iter()
        .map(|(x, p, v)| json!({ "x": x, "re_psi": p.re, "im_psi": p.im, "v_re": v.re, "v_im": v.im }))
        .collect();
    let energy = family_energy(&fam, Complex64::new(lambda, 0.0)).re;
    let results = json!({
        "lambda": lambda,
        "energy": energy,
        "level": level,
        "rj_coefficients": spec.rj_coefficients,
        "samples": samples,
    });
    Ok(Report { command: "wavefunction", family: Some(fam), results, diagnostics: json!({ "normalized": normalize }), csv })
}

fn transform_check(model: &ModelArgs, samples: usize) -> Result<Report> {
    let fam = model.family()?;
    let p = *fam.poschl_teller_params().ok_or_else(|| {
        QesError::InvalidParameter("transform-check needs a Pöschl–Teller family".into())
    })?;
    let length = 1.0 / p.alpha();
    let n = samples.max(2);
    let half = transform_general_shift(&p, 0.5, 0.0)?;
    let scarf = transform_general_shift(&p, 0.5, scarf_shift(&p))?;
    let gen_fam = PotentialFamily::GeneralizedPT(p);
    let scarf_fam = PotentialFamily::ScarfPT(p);
    let mut table = Vec::with_capacity(n);
    let mut worst: [f64; 5] = [0.0; 5];
    for i in 0..n {
        let x = length * (0.2 + 2.8 * i as f64 / (n - 1) as f64);
        let quarter = 0.25 * eval_potential(&PotentialFamily::PoschlTeller(p), x / 2.0)?.re;
        let gen = eval_potential(&gen_fam, x)?.re;
        let s = eval_potential(&scarf_fam, x)?;
        let row = [
            (gen - generalized_pt_closed_form(&p, x, true)?).abs(),
            (generalized_pt_closed_form(&p, x, false)? - quarter).abs(),
            (s - scarf_closed_form(&p, x)).norm(),
            (half.eval(x)? - gen).norm() + (scarf.eval(x)? - s).norm(),
            (eval_potential(&scarf_fam, -x)? - s.conj()).norm(),
        ];
        for (w, r) in worst.iter_mut().zip(row) {
            *w = w.max(r);
        }
        table.push(json!({
            "x": x,
            "gen_vs_closed_form": row[0],
            "printed_gen_tail_vs_quarter": row[1],
            "scarf_vs_closed_form": row[2],
            "general_shift_vs_maps": row[3],
            "scarf_pt_symmetry": row[4],
        }));
    }
    let diagnostics = json!({
        "max_gen_vs_closed_form": worst[0],
        "max_printed_gen_tail_vs_quarter": worst[1],
        "max_scarf_vs_closed_form": worst[2],
        "max_general_shift_vs_maps": worst[3],
        "max_scarf_pt_symmetry": worst[4],
        "note": "the half-coordinate and Scarf images are quarter-scaled, V(x) = V_pt(x/2 + ib)/4, E' = E/4",
    });
    Ok(Report { command: "transform-check", family: Some(fam), results: json!({ "rows": table }), diagnostics, csv: None })
}

fn verify(model: &ModelArgs, mode: VerifyMode, states: usize, points: Option<usize>, tolerance: f64) -> Result<Report> {
    let fam = model.family()?;
    let (results, diagnostics) = match mode {
        VerifyMode::Fd => {
            let mut grid = GridConfig::default_for(&fam).with_precision(model.precision);
            if let Some(n) = points {
                grid.n_points = n;
            }
            let report = fd_spectrum(&fam, &grid, states)?;
            let qes = lambda_spectrum_roots(&fam, Precision::Double).ok();
            (to_value(&report), json!({ "qes_energies": qes.map(|s| s.energies) }))
        }
        VerifyMode::Residual => {
            let sol = lambda_spectrum_roots(&fam, model.precision)?;
            let xs = default_samples(&fam, points.unwrap_or(40));
            let mut reports = Vec::new();
            for &lambda in &sol.lambda_roots {
                let spec = EigenfunctionSpec::new(fam, lambda)?;
                reports.push(residual_check_state(&spec, &xs, tolerance)?);
            }
            let worst = reports.iter().fold(0.0f64, |m, r| m.max(r.max_residual()));
            (json!({ "lambda_roots": sol.lambda_roots, "reports": to_value(&reports) }), json!({ "max_scaled_residual": worst }))
        }
        VerifyMode::Limit => {
            let alphas = [0.2, 0.1, 0.05];
            let report = match &fam {
                PotentialFamily::Sextic(s) => {
                    let xs: Vec<f64> = (0..18).map(|i| 0.3 + 0.1 * i as f64).collect();
                    sextic_limit_convergence(s.a, s.q, s.l, s.twoj, &alphas, &xs)?
                }
                PotentialFamily::PTAnharmonic(t) => {
                    let xs: Vec<f64> = (0..21).map(|i| -1.0 + 0.1 * i as f64).collect();
                    ptanh_limit_convergence(t, &alphas, &xs)?
                }
                _ => {
                    return Err(QesError::InvalidParameter(
                        "limit mode needs the sextic or pt-anharmonic family as target".into(),
                    ))
                }
            };
            (to_value(&report), json!({ "alphas": alphas }))
        }
    };
    Ok(Report { command: "verify", family: Some(fam), results, diagnostics, csv: None })
}
