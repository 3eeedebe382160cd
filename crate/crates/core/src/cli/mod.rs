//! Command-line driver behind the `fieldrot` binary.
//!
//! Settings are resolved as flag > `--config` file > built-in default. The
//! JSON sidecar written next to every CSV holds the fully resolved settings
//! under `config`, so passing it back through `--config` reproduces the run.
//!
//! Exit codes: 0 success, 2 validation error, 3 numerical failure.

pub mod figures;
pub mod output;
pub mod specs;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::dynamics::{gate_error_exact, ErrorReport, RotationSpec};
use crate::ensemble::{
    uniform_theta_grid, worst_case_scan_on_states, EnsembleMethod, EnsembleRun, Squeezing,
};
use crate::formulas::{
    avg_error, avg_r_opt, cat_error, cat_r_opt, delta_opt, minimize_scalar, two_atom_error_rd,
    two_atom_r_opt, CatErrorParams, DeltaKind,
};
use crate::perturbation::perturbative_error;
use crate::quantum::CatKind;
use figures::{joint_minimum_of, DELTA_BRACKET, R_BRACKET};
use output::{write_json, Outputs, Sidecar, Table, Value};
use specs::{build_state, parse_field, parse_state, FieldSpec};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
pub const DEFAULT_SEED: u64 = 1;
pub const DEFAULT_POINTS: usize = 121;
pub const DEFAULT_TOL: f64 = 1e-10;
pub const DEFAULT_OUT_DIR: &str = "out";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum MethodArg {
    Exact,
    Perturbative,
    Both,
}

impl From<MethodArg> for EnsembleMethod {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Exact => EnsembleMethod::Exact,
            MethodArg::Perturbative => EnsembleMethod::Perturbative,
            MethodArg::Both => EnsembleMethod::Both,
        }
    }
}

/// Every tunable setting. All optional so that flags and config files can
/// be layered.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize, Args)]
#[serde(default, deny_unknown_fields)]
pub struct Settings {
    /// Output directory (figure, ensemble, sweep) or JSON file (error).
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    /// Seed of the ChaCha8 sample streams.
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_atoms: Option<usize>,
    /// Coherent amplitude (real); exclusive with --alpha-sq.
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    /// Mean photon number alpha^2; exclusive with --alpha.
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha_sq: Option<f64>,
    /// Squeezing parameter (r > 0 squeezes the amplitude quadrature).
    #[arg(long, global = true, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<f64>,
    /// Target rotation angle about x.
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta: Option<f64>,
    /// Angle offset from stretching the interaction time.
    #[arg(long, global = true, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    #[arg(long, global = true, value_enum)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub method: Option<MethodArg>,
    /// Number of Haar samples.
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    /// Fock-space truncation.
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_max: Option<usize>,
    /// Propagator tolerance.
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    /// Atomic state: cat-x:N, cat-z:N, haar:seed=S:n=N, excited, ground or file:PATH.
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub state: Option<String>,
    /// Field: coherent:alpha=A or squeezed:alpha=A:r=R (optional :n_max=M).
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
    /// Number of points of the theta grid on [0, pi].
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub points: Option<usize>,
    /// Ensemble only: use the angle-dependent average-optimal squeezing.
    #[arg(long, global = true, num_args = 0..=1, default_missing_value = "true")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub optimal_squeezing: Option<bool>,
}

macro_rules! layer {
    ($hi:expr, $lo:expr; $($f:ident),*) => {
        Settings { $($f: $hi.$f.clone().or_else(|| $lo.$f.clone())),* }
    };
}

impl Settings {
    /// `self` wins over `fallback` field by field.
    pub fn over(&self, fallback: &Settings) -> Settings {
        layer!(self, fallback; out, seed, n_atoms, alpha, alpha_sq, r, theta, delta, method,
               samples, n_max, tol, state, field, points, optimal_squeezing)
    }

    /// Loads a config file; a sidecar (with a top-level `config` object)
    /// is accepted as well.
    pub fn load(path: &Path) -> Result<Settings, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))?;
        let mut value: serde_json::Value = serde_json::from_str(&text)
            .map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))?;
        if let Some(inner) = value.get_mut("config").map(serde_json::Value::take) {
            value = inner;
        }
        serde_json::from_value(value).map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))
    }

    fn alpha_or(&self, default_sq: f64) -> Result<f64, CliError> {
        let alpha = match (self.alpha, self.alpha_sq) {
            (Some(_), Some(_)) => return Err(CliError::Validation("give only one of --alpha and --alpha-sq".into())),
            (Some(a), None) => a,
            (None, Some(a2)) => {
                if !(a2 > 0.0) {
                    return Err(CliError::Validation(format!("--alpha-sq must be positive, got {a2}")));
                }
                a2.sqrt()
            }
            (None, None) => default_sq.sqrt(),
        };
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(CliError::Validation(format!("--alpha must be positive and finite, got {alpha}")));
        }
        Ok(alpha)
    }

    fn grid(&self) -> Result<Vec<f64>, CliError> {
        let points = self.points.unwrap_or(DEFAULT_POINTS);
        if points < 2 {
            return Err(CliError::Validation(format!("--points must be at least 2, got {points}")));
        }
        Ok(uniform_theta_grid(points))
    }
}

#[derive(Debug, Parser)]
#[command(name = "fieldrot", version, about = "Rotation errors of atoms driven by a quantized field")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// JSON config file (or a previously written sidecar).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(flatten)]
    pub settings: Settings,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write the data behind figure 1-8 as CSV plus a JSON sidecar.
    Figure { id: u8 },
    /// Gate error of one state and field, printed as JSON.
    Error,
    /// Haar-ensemble errors over a theta grid.
    Ensemble,
    /// Closed-form versus numerically minimized squeezing and offsets.
    Sweep,
}

#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    Validation(String),
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Validation(m) => write!(f, "invalid input: {m}"),
            CliError::Numerical(m) => write!(f, "numerical failure: {m}"),
        }
    }
}

impl From<crate::Error> for CliError {
    fn from(e: crate::Error) -> Self {
        use crate::Error::*;
        match e {
            Truncation { .. } | NonConvergence(_) | BadBracket { .. } => CliError::Numerical(e.to_string()),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

fn io_err(e: std::io::Error) -> CliError {
    CliError::Validation(format!("cannot write output: {e}"))
}

/// Parses `args` (including the program name), runs the command and
/// returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(stdout) => {
            if !stdout.is_empty() {
                use std::io::Write;
                // a closed pipe (e.g. `| head`) is not a failure of the run
                let _ = writeln!(std::io::stdout(), "{stdout}");
            }
            0
        }
        Err(e) => {
            eprintln!("fieldrot: {e}");
            e.exit_code()
        }
    }
}

/// Runs a parsed command and returns what goes to stdout.
pub fn execute(cli: &Cli) -> Result<String, CliError> {
    let file = match &cli.config {
        Some(p) => Settings::load(p)?,
        None => Settings::default(),
    };
    let s = cli.settings.over(&file);
    match cli.command {
        Command::Figure { id } => figure(id, &s),
        Command::Error => error(&s),
        Command::Ensemble => ensemble(&s),
        Command::Sweep => sweep(&s),
    }
}

fn out_dir(s: &Settings) -> PathBuf {
    s.out.clone().unwrap_or_else(|| PathBuf::from(DEFAULT_OUT_DIR))
}

fn write_outputs(
    command: &str,
    stem: &str,
    outputs: &Outputs,
    resolved: &Settings,
    notes: Vec<String>,
) -> Result<String, CliError> {
    let dir = out_dir(resolved);
    let paths = outputs.write(&dir, stem).map_err(io_err)?;
    let sidecar = Sidecar {
        command,
        version: VERSION,
        seed: resolved.seed.unwrap_or(DEFAULT_SEED),
        config: resolved,
        outputs: paths
            .iter()
            .map(|p| p.file_name().unwrap().to_string_lossy().into_owned())
            .collect(),
        columns: outputs
            .tables
            .iter()
            .map(|(name, t)| (name.clone(), t.headers.clone()))
            .collect(),
        notes,
    };
    let json = dir.join(format!("{stem}.json"));
    write_json(&json, &sidecar).map_err(io_err)?;
    let mut lines: Vec<String> = paths.iter().map(|p| p.display().to_string()).collect();
    lines.push(json.display().to_string());
    Ok(lines.join("\n"))
}

/// Names of settings that were given but have no effect on `used`.
fn ignored(s: &Settings, used: &[&str]) -> Vec<String> {
    let value = serde_json::to_value(s).expect("settings serialize");
    value
        .as_object()
        .into_iter()
        .flat_map(|m| m.keys())
        .filter(|k| !used.contains(&k.as_str()) && k.as_str() != "out")
        .map(|k| format!("setting `{k}` is not used by this command"))
        .collect()
}

fn figure(id: u8, s: &Settings) -> Result<String, CliError> {
    let grid = s.grid()?;
    let mut resolved = Settings {
        out: Some(out_dir(s)),
        points: Some(grid.len()),
        ..Settings::default()
    };
    let mut used = vec!["points"];
    let outputs = match id {
        1 => {
            let n = s.n_atoms.unwrap_or(4);
            let alpha = s.alpha_or(100.0)?;
            if n < 2 {
                return Err(CliError::Validation(format!("figure 1 needs at least 2 atoms, got {n}")));
            }
            resolved.n_atoms = Some(n);
            resolved.alpha = Some(alpha);
            used.extend(["n_atoms", "alpha", "alpha_sq"]);
            figures::figure1(n, alpha, &grid)?
        }
        2 => figures::figure2(&grid)?,
        3 => figures::figure3(&grid)?,
        4 => figures::figure4(&grid)?,
        5 => figures::figure5(&grid)?,
        6 | 7 => {
            let (n0, a0) = figures::ensemble_defaults(id);
            let n = s.n_atoms.unwrap_or(n0);
            let alpha = s.alpha_or(a0)?;
            let samples = s.samples.unwrap_or(crate::ensemble::SELF_CHECK_MIN_SAMPLES);
            let seed = s.seed.unwrap_or(DEFAULT_SEED);
            let method = s.method.unwrap_or(MethodArg::Exact);
            resolved.n_atoms = Some(n);
            resolved.alpha = Some(alpha);
            resolved.samples = Some(samples);
            resolved.seed = Some(seed);
            resolved.method = Some(method);
            resolved.n_max = s.n_max;
            used.extend(["n_atoms", "alpha", "alpha_sq", "samples", "seed", "method", "n_max"]);
            let base = figures::ensemble_base(n, alpha, grid, samples, seed, method.into(), s.n_max);
            eprintln!(
                "figure {id}: {samples} Haar samples x {} angles, N = {n}, alpha^2 = {:.4}, method {method:?}",
                base.theta_grid.len(),
                alpha * alpha
            );
            figures::ensemble_figure(&base)?.0
        }
        8 => {
            let alpha = s.alpha_or(20.0)?;
            resolved.alpha = Some(alpha);
            used.extend(["alpha", "alpha_sq"]);
            figures::figure8(alpha, &grid)?
        }
        _ => return Err(CliError::Validation(format!("unknown figure {id} (expected 1-8)"))),
    };
    let notes = ignored(s, &used);
    for n in &notes {
        eprintln!("fieldrot: warning: {n}");
    }
    write_outputs("figure", &format!("figure{id}"), &outputs, &resolved, notes)
}

/// Parameters echoed with an `error` result.
#[derive(Debug, Serialize)]
struct ErrorOutput<'a> {
    version: &'a str,
    parameters: &'a Settings,
    n_atoms: usize,
    field_mean_photons: f64,
    n_max: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    exact: Option<ErrorReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    perturbative: Option<ErrorReport>,
}

fn resolve_field(s: &Settings) -> Result<FieldSpec, CliError> {
    match &s.field {
        Some(text) => {
            if s.alpha.is_some() || s.alpha_sq.is_some() || s.r.is_some() {
                return Err(CliError::Validation(
                    "--field cannot be combined with --alpha, --alpha-sq or --r".into(),
                ));
            }
            let mut f = parse_field(text).map_err(|e| CliError::Validation(e.to_string()))?;
            if let Some(n) = s.n_max {
                f.n_max = Some(n);
            }
            Ok(f)
        }
        None => {
            if s.alpha.is_none() && s.alpha_sq.is_none() {
                return Err(CliError::Validation("give the field via --field, --alpha or --alpha-sq".into()));
            }
            Ok(FieldSpec {
                alpha: s.alpha_or(1.0)?,
                r: s.r.unwrap_or(0.0),
                n_max: s.n_max,
            })
        }
    }
}

fn error(s: &Settings) -> Result<String, CliError> {
    let state_text = s
        .state
        .as_deref()
        .ok_or_else(|| CliError::Validation("missing --state".into()))?;
    let spec = parse_state(state_text).map_err(|e| CliError::Validation(e.to_string()))?;
    let psi = build_state(&spec, s.n_atoms.unwrap_or(1)).map_err(CliError::Validation)?;
    if let Some(n) = s.n_atoms {
        if n != psi.n_atoms() {
            return Err(CliError::Validation(format!(
                "--n-atoms {n} does not match the {} atoms of `{state_text}`",
                psi.n_atoms()
            )));
        }
    }
    let field_spec = resolve_field(s)?;
    let field = field_spec.build()?;
    let theta = s
        .theta
        .ok_or_else(|| CliError::Validation("missing --theta".into()))?;
    let rot = RotationSpec::new(psi.n_atoms(), field_spec.alpha, field_spec.r, theta).with_delta(s.delta.unwrap_or(0.0));
    rot.validate()?;
    let method = s.method.unwrap_or(MethodArg::Exact);
    let tol = s.tol.unwrap_or(DEFAULT_TOL);
    if !(tol > 0.0 && tol < 1.0) {
        return Err(CliError::Validation(format!("--tol must lie in (0, 1), got {tol}")));
    }
    let exact = match method {
        MethodArg::Exact | MethodArg::Both => Some(gate_error_exact(&psi, &field, &rot, tol)?),
        MethodArg::Perturbative => None,
    };
    let perturbative = match method {
        MethodArg::Perturbative | MethodArg::Both => Some(perturbative_error(&psi, &field, &rot)?),
        MethodArg::Exact => None,
    };
    let resolved = Settings {
        state: Some(state_text.to_string()),
        alpha: Some(field_spec.alpha),
        r: Some(field_spec.r),
        n_max: Some(field.n_max()),
        theta: Some(theta),
        delta: Some(rot.delta),
        method: Some(method),
        tol: Some(tol),
        out: s.out.clone(),
        ..Settings::default()
    };
    let report = ErrorOutput {
        version: VERSION,
        parameters: &resolved,
        n_atoms: psi.n_atoms(),
        field_mean_photons: field.mean_photon_number(),
        n_max: field.n_max(),
        exact,
        perturbative,
    };
    let text = serde_json::to_string_pretty(&report).expect("report serializes");
    if let Some(path) = &s.out {
        if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
            std::fs::create_dir_all(parent).map_err(io_err)?;
        }
        std::fs::write(path, format!("{text}\n")).map_err(io_err)?;
    }
    Ok(text)
}

fn ensemble(s: &Settings) -> Result<String, CliError> {
    let n = s.n_atoms.unwrap_or(3);
    let alpha = s.alpha_or(60.0)?;
    let samples = s.samples.unwrap_or(crate::ensemble::SELF_CHECK_MIN_SAMPLES);
    let seed = s.seed.unwrap_or(DEFAULT_SEED);
    let method = s.method.unwrap_or(MethodArg::Exact);
    let optimal = s.optimal_squeezing.unwrap_or(false);
    if optimal && s.r.is_some() {
        return Err(CliError::Validation("give only one of --r and --optimal-squeezing".into()));
    }
    let r = s.r.unwrap_or(0.0);
    let cfg = EnsembleRun {
        n_atoms: n,
        alpha,
        squeezing: if optimal { Squeezing::AverageOptimal } else { Squeezing::Fixed(r) },
        theta_grid: s.grid()?,
        n_samples: samples,
        seed,
        method: method.into(),
        n_max: s.n_max,
    };
    cfg.validate()?;
    eprintln!(
        "ensemble: {samples} Haar samples x {} angles, N = {n}, alpha^2 = {:.4}, method {method:?}",
        cfg.theta_grid.len(),
        alpha * alpha
    );
    let states = cfg.draw_states()?;
    let res = crate::ensemble::run_on_states(&cfg, &states)?;
    let worst = worst_case_scan_on_states(&cfg, &states)?;
    let mut outputs = Outputs::default();
    outputs.add("summary", figures::ensemble_summary(&res));
    outputs.add("samples", figures::ensemble_samples(&res));
    let mut w = Table::new([
        "theta",
        "sample",
        "error",
        "x_cat_fidelity",
        "x_cat_error",
        "fraction_above_x_cat",
    ]);
    for c in &worst {
        w.push(vec![
            c.theta.into(),
            Value::from(c.sample_index),
            c.error.into(),
            c.x_cat_fidelity.into(),
            c.x_cat_error.into(),
            c.fraction_above_x_cat.into(),
        ]);
    }
    outputs.add("worst", w);
    let resolved = Settings {
        out: Some(out_dir(s)),
        seed: Some(seed),
        n_atoms: Some(n),
        alpha: Some(alpha),
        r: (!optimal).then_some(r),
        method: Some(method),
        samples: Some(samples),
        n_max: Some(res.provenance.n_max),
        points: Some(cfg.theta_grid.len()),
        optimal_squeezing: Some(optimal),
        ..Settings::default()
    };
    let mut notes = ignored(s, &[
        "seed", "n_atoms", "alpha", "alpha_sq", "r", "method", "samples", "n_max", "points", "optimal_squeezing",
    ]);
    notes.push(format!(
        "rng {}; {}; samples shared across theta",
        res.provenance.rng, res.provenance.stream_rule
    ));
    if let Some(ok) = res.self_check {
        notes.push(format!("perturbative mean within 3 standard errors of the closed-form average: {ok}"));
    }
    write_outputs("ensemble", "ensemble", &outputs, &resolved, notes)
}

fn sweep(s: &Settings) -> Result<String, CliError> {
    let n = s.n_atoms.unwrap_or(4);
    let alpha = s.alpha_or(100.0)?;
    let tol = s.tol.unwrap_or(1e-8);
    if n < 2 {
        return Err(CliError::Validation(format!("sweep needs at least 2 atoms, got {n}")));
    }
    if !(tol > 0.0 && tol < 1.0) {
        return Err(CliError::Validation(format!("--tol must lie in (0, 1), got {tol}")));
    }
    let nbar = alpha * alpha;
    let grid = s.grid()?;
    let mut t = Table::new([
        "theta",
        "r_opt_x",
        "r_opt_x_numeric",
        "r_opt_z",
        "r_opt_z_numeric",
        "r_opt_avg",
        "r_opt_avg_numeric",
        "delta_opt",
        "delta_opt_numeric",
        "joint_r_numeric",
        "joint_delta_numeric",
        "joint_error",
    ]);
    // Offsets of the z-cat (two-atom cat for N = 2) at zero squeezing.
    let z_err = |r: f64, theta: f64, delta: f64| -> f64 {
        let res = if n == 2 {
            two_atom_error_rd(alpha, theta, r, delta)
        } else {
            cat_error(&CatErrorParams::new(CatKind::Z, n, alpha, theta, r).with_delta(delta))
        };
        res.unwrap_or(f64::NAN)
    };
    let kind = if n == 2 { DeltaKind::TwoAtom } else { DeltaKind::ZCat };
    for &theta in grid.iter().filter(|&&t| t > 0.0) {
        let num_r = |kind: CatKind| -> Result<f64, CliError> {
            Ok(minimize_scalar(
                |r| cat_error(&CatErrorParams::new(kind, n, alpha, theta, r)).unwrap_or(f64::NAN),
                R_BRACKET,
                tol,
            )?
            .argmin)
        };
        let cat_r = |kind| -> Result<f64, CliError> {
            Ok(if n == 2 { two_atom_r_opt(theta)? } else { cat_r_opt(kind, n, theta)? })
        };
        let avg_num = minimize_scalar(|r| avg_error(n, alpha, theta, r).unwrap_or(f64::NAN), R_BRACKET, tol)?;
        let delta_num = minimize_scalar(|d| z_err(0.0, theta, d), DELTA_BRACKET, tol)?;
        let joint = joint_minimum_of(|r, d| z_err(r, theta, d))?;
        t.push(vec![
            theta.into(),
            cat_r(CatKind::X)?.into(),
            num_r(CatKind::X)?.into(),
            cat_r(CatKind::Z)?.into(),
            num_r(CatKind::Z)?.into(),
            avg_r_opt(theta)?.into(),
            avg_num.argmin.into(),
            delta_opt(kind, n, theta, nbar)?.into(),
            delta_num.argmin.into(),
            joint.1.into(),
            joint.0.into(),
            joint.2.into(),
        ]);
    }
    let mut outputs = Outputs::default();
    outputs.add("", t);
    let resolved = Settings {
        out: Some(out_dir(s)),
        n_atoms: Some(n),
        alpha: Some(alpha),
        tol: Some(tol),
        points: Some(grid.len()),
        ..Settings::default()
    };
    let notes = ignored(s, &["n_atoms", "alpha", "alpha_sq", "tol", "points"]);
    write_outputs("sweep", "sweep", &outputs, &resolved, notes)
}
