// SPDX-License-Identifier: MIT OR Apache-2.0

//! Command-line front end: argument parsing, dispatch to the library and deterministic
//! CSV/JSON serialization.

use std::io::Write;
use std::path::PathBuf;

use angmom::critical::{self, FixedPointLabel, WilliamsonKind};
use angmom::invariants::{self, WeightedPolygon};
use angmom::quantum::{self, JLevel, QuantumParams};
use angmom::SystemParams;
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

/// Largest number of entries accepted in a `k` or real list.
pub const MAX_LIST_LEN: usize = 100_000;

/// Process exit status for each failure class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorCode {
    /// Bad flags or parameters outside a precondition.
    Validation,
    /// A numerical procedure did not converge.
    NonConvergence,
    /// The parameter regime or level parity is not supported.
    Unsupported,
    /// Writing the output failed.
    Io,
}

impl ErrorCode {
    /// Exit status.
    pub fn exit_status(self) -> i32 {
        match self {
            Self::Validation => 2,
            Self::NonConvergence => 3,
            Self::Unsupported => 4,
            Self::Io => 1,
        }
    }

    /// Machine-readable name printed on stderr.
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Validation => "validation",
            Self::NonConvergence => "non_convergence",
            Self::Unsupported => "unsupported",
            Self::Io => "io",
        }
    }
}

/// Failure of a CLI run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    /// Failure class.
    pub code: ErrorCode,
    /// Single-line message.
    pub message: String,
}

impl CliError {
    fn validation(message: impl Into<String>) -> Self {
        Self { code: ErrorCode::Validation, message: message.into() }
    }

    /// The single stderr line `error[<code>]: <message>`.
    pub fn line(&self) -> String {
        format!("error[{}]: {}", self.code.as_str(), self.message.replace('\n', " "))
    }
}

impl From<angmom::Error> for CliError {
    fn from(e: angmom::Error) -> Self {
        use angmom::Error as E;
        let code = match e {
            E::NonConvergence(_) => ErrorCode::NonConvergence,
            E::Unsupported(_) | E::Parity(_) => ErrorCode::Unsupported,
            E::InvalidParams(_)
            | E::OffSphere(_)
            | E::ChartDomain(_)
            | E::OutOfDomain(_)
            | E::NonFinite(_)
            | E::Admissibility(_) => ErrorCode::Validation,
        };
        Self { code, message: e.to_string() }
    }
}

/// Parses a finite real written as a decimal or as a fraction `p/q`.
pub fn parse_real(s: &str) -> Result<f64, String> {
    let s = s.trim();
    let value = match s.split_once('/') {
        Some((p, q)) => {
            let p: f64 = p.trim().parse().map_err(|_| format!("invalid numerator in {s:?}"))?;
            let q: f64 = q.trim().parse().map_err(|_| format!("invalid denominator in {s:?}"))?;
            if q == 0.0 {
                return Err(format!("zero denominator in {s:?}"));
            }
            p / q
        }
        None => s.parse().map_err(|_| format!("invalid number {s:?}"))?,
    };
    if !value.is_finite() {
        return Err(format!("non-finite number {s:?}"));
    }
    Ok(value)
}

fn push_checked<T>(out: &mut Vec<T>, v: T) -> Result<(), String> {
    if out.len() >= MAX_LIST_LEN {
        return Err(format!("list longer than {MAX_LIST_LEN} entries"));
    }
    out.push(v);
    Ok(())
}

/// Parses a comma-separated list of positive integers and inclusive ranges `start:stop:step`.
pub fn parse_k_list(s: &str) -> Result<Vec<u64>, String> {
    let mut out = Vec::new();
    for item in s.split(',') {
        let item = item.trim();
        let int = |x: &str| x.trim().parse::<u64>().map_err(|_| format!("invalid integer {x:?}"));
        let parts: Vec<&str> = item.split(':').collect();
        match parts.as_slice() {
            [k] => push_checked(&mut out, int(k)?)?,
            [a, b, step] => {
                let (a, b, step) = (int(a)?, int(b)?, int(step)?);
                if step == 0 || b < a {
                    return Err(format!("empty range {item:?}"));
                }
                let mut k = a;
                while k <= b {
                    push_checked(&mut out, k)?;
                    k = match k.checked_add(step) {
                        Some(next) => next,
                        None => break,
                    };
                }
            }
            _ => return Err(format!("invalid list item {item:?}")),
        }
    }
    if out.contains(&0) {
        return Err("k must be positive".into());
    }
    Ok(out)
}

/// Parses a comma-separated list of reals and inclusive ranges `start:stop:step`.
pub fn parse_real_list(s: &str) -> Result<Vec<f64>, String> {
    let mut out = Vec::new();
    for item in s.split(',') {
        let item = item.trim();
        let parts: Vec<&str> = item.split(':').collect();
        match parts.as_slice() {
            [x] => push_checked(&mut out, parse_real(x)?)?,
            [a, b, step] => {
                let (a, b, step) = (parse_real(a)?, parse_real(b)?, parse_real(step)?);
                let count = (b - a) / step;
                if !(step > 0.0 && count >= -1e-9 && count.is_finite()) {
                    return Err(format!("empty range {item:?}"));
                }
                let n = (count + 1e-9).floor();
                if n >= MAX_LIST_LEN as f64 {
                    return Err(format!("list longer than {MAX_LIST_LEN} entries"));
                }
                for i in 0..=(n as usize) {
                    push_checked(&mut out, a + i as f64 * step)?;
                }
            }
            _ => return Err(format!("invalid list item {item:?}")),
        }
    }
    Ok(out)
}

/// A parsed `k` list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KList(pub Vec<u64>);

/// A parsed real list.
#[derive(Debug, Clone, PartialEq)]
pub struct RealList(pub Vec<f64>);

fn k_list_arg(s: &str) -> Result<KList, String> {
    parse_k_list(s).map(KList)
}

fn real_list_arg(s: &str) -> Result<RealList, String> {
    parse_real_list(s).map(RealList)
}

/// Command line.
#[derive(Debug, Parser)]
#[command(name = "angmom", version, about = "Coupled angular momenta on S2 x S2: classification, invariants and spectra")]
pub struct Cli {
    /// Worker threads for parallel sections (0 uses all cores).
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Subcommand.
    #[command(subcommand)]
    pub command: Command,
}

/// Serialization format.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// Comma-separated values with a header row.
    Csv,
    /// JSON document.
    Json,
}

/// Eigenvalue of the quantized `J` used by the sweeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Level {
    /// `λ = R₁ − R₂`.
    FocusFocus,
    /// `λ = 0`.
    Zero,
}

impl From<Level> for JLevel {
    fn from(l: Level) -> Self {
        match l {
            Level::FocusFocus => JLevel::FocusFocus,
            Level::Zero => JLevel::Zero,
        }
    }
}

/// `R₁`, `R₂`, `t`.
#[derive(Debug, Clone, Args)]
pub struct SystemArgs {
    /// Radius of the first sphere.
    #[arg(long, value_parser = parse_real)]
    pub r1: f64,
    /// Radius of the second sphere.
    #[arg(long, value_parser = parse_real)]
    pub r2: f64,
    /// Coupling parameter in [0, 1].
    #[arg(long, value_parser = parse_real)]
    pub t: f64,
}

impl SystemArgs {
    fn params(&self) -> Result<SystemParams, CliError> {
        Ok(SystemParams::new(self.r1, self.r2, self.t)?)
    }
}

/// Subcommands.
#[derive(Debug, Subcommand)]
pub enum Command {
    /// Williamson types of the four fixed points and the thresholds t-/t+.
    Classify(SystemArgs),
    /// Closed polyline tracing the boundary of the image of the momentum map.
    Boundary {
        /// System parameters.
        #[command(flatten)]
        system: SystemArgs,
        /// Samples per boundary arc.
        #[arg(long, default_value_t = 64)]
        samples: usize,
    },
    /// Height, Taylor coefficients and polygons at t = 1/2.
    Invariants(SystemArgs),
    /// Joint spectrum of the quantized pair for each k.
    Spectrum {
        /// System parameters.
        #[command(flatten)]
        system: SystemArgs,
        /// Semiclassical integers: `k1,k2,...` or `start:stop:step`.
        #[arg(long, value_parser = k_list_arg)]
        k: KList,
    },
    /// Scaled minimal spectral gap on one J-level against the gap-law prediction.
    GapSweep {
        /// System parameters.
        #[command(flatten)]
        system: SystemArgs,
        /// Semiclassical integers: `k1,k2,...` or `start:stop:step`.
        #[arg(long, value_parser = k_list_arg)]
        k: KList,
        /// J-level.
        #[arg(long, value_enum, default_value_t = Level::FocusFocus)]
        level: Level,
    },
    /// Weyl-law height estimate against the closed-form height over a list of R2.
    WeylSweep {
        /// Radius of the first sphere.
        #[arg(long, value_parser = parse_real)]
        r1: f64,
        /// Radii of the second sphere: `a,b,...` or `start:stop:step`.
        #[arg(long = "r2", value_parser = real_list_arg)]
        r2_list: RealList,
        /// Coupling parameter.
        #[arg(long, value_parser = parse_real, default_value = "0.5")]
        t: f64,
        /// Semiclassical integer.
        #[arg(long)]
        k: u64,
        /// J-level.
        #[arg(long, value_enum, default_value_t = Level::FocusFocus)]
        level: Level,
    },
}

fn csv_float(x: f64) -> String {
    format!("{x:.16e}")
}

fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut s = header.join(",");
    s.push('\n');
    for r in rows {
        s.push_str(&r.join(","));
        s.push('\n');
    }
    s
}

fn to_json<T: Serialize>(v: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(v)
        .map_err(|e| CliError { code: ErrorCode::Io, message: e.to_string() })?;
    s.push('\n');
    Ok(s)
}

/// Fixed point entry of the classify report.
#[derive(Debug, Serialize)]
pub struct FixedPointReport {
    /// `m0` .. `m3`.
    pub label: String,
    /// `(J, H)` at the point.
    pub value: [f64; 2],
    /// Williamson type.
    pub kind: &'static str,
    /// Pencil coefficients of the regular witness element.
    pub witness: Option<[f64; 2]>,
    /// True when decided by the discriminant sign.
    pub analytic: bool,
    /// Eigenvalues `[re, im]` of the witness element.
    pub eigenvalues: Vec<[f64; 2]>,
}

/// Threshold with its exact expression.
#[derive(Debug, Serialize)]
pub struct Threshold {
    /// Expression in the input radii.
    pub closed_form: String,
    /// Decimal value.
    pub value: f64,
}

/// The classify report.
#[derive(Debug, Serialize)]
pub struct ClassifyReport {
    /// `R₁`.
    pub r1: f64,
    /// `R₂`.
    pub r2: f64,
    /// `t`.
    pub t: f64,
    /// `t⁻`.
    pub t_minus: Threshold,
    /// `t⁺`.
    pub t_plus: Threshold,
    /// `toric`, `toric_type`, `semitoric_focus_focus` or `degenerate`.
    pub regime: &'static str,
    /// The four fixed points.
    pub fixed_points: Vec<FixedPointReport>,
}

/// Builds the classify report.
pub fn classify_report(params: &SystemParams) -> ClassifyReport {
    let (r1, r2, t) = (params.r1(), params.r2(), params.t());
    let (tm, tp) = critical::critical_t_range(params);
    let fixed_points: Vec<FixedPointReport> = critical::fixed_points(params)
        .iter()
        .map(|rec| {
            let v = critical::williamson_classify(rec, params);
            FixedPointReport {
                label: rec.label.to_string(),
                value: [rec.value.0, rec.value.1],
                kind: v.kind.as_str(),
                witness: v.witness_combo.map(|(a, b)| [a, b]),
                analytic: v.analytic,
                eigenvalues: v.eigenvalues.iter().map(|z| [z.re, z.im]).collect(),
            }
        })
        .collect();
    let m0 = critical::williamson_classify(&critical::fixed_point(FixedPointLabel::M0, params), params).kind;
    let regime = match m0 {
        WilliamsonKind::FocusFocus => "semitoric_focus_focus",
        WilliamsonKind::Degenerate => "degenerate",
        WilliamsonKind::EllipticElliptic if t == 0.0 => "toric",
        WilliamsonKind::EllipticElliptic => "toric_type",
    };
    let form = |sign: char| format!("{r2}/({}{sign}sqrt({}))", 2.0 * r2 + r1, 4.0 * r1 * r2);
    ClassifyReport {
        r1,
        r2,
        t,
        t_minus: Threshold { closed_form: form('+'), value: tm },
        t_plus: Threshold { closed_form: form('-'), value: tp },
        regime,
        fixed_points,
    }
}

/// Polygon entry of the invariants report; coordinates are exact rationals `p/q`.
#[derive(Debug, Serialize)]
pub struct PolygonReport {
    /// Clockwise vertices `[x, y]`.
    pub vertices: Vec<[String; 2]>,
    /// Abscissa of the cut.
    pub cut_abscissa: String,
    /// Cut direction.
    pub eps: i8,
    /// Twisting index relative to the first polygon.
    pub twist_offset: i64,
}

impl From<&WeightedPolygon> for PolygonReport {
    fn from(p: &WeightedPolygon) -> Self {
        Self {
            vertices: p.vertices.iter().map(|(x, y)| [x.to_string(), y.to_string()]).collect(),
            cut_abscissa: p.cut_abscissa.to_string(),
            eps: p.eps,
            twist_offset: p.twist_offset,
        }
    }
}

/// The invariants report.
#[derive(Debug, Serialize)]
pub struct InvariantsReport {
    /// `R₁`.
    pub r1: f64,
    /// `R₂`.
    pub r2: f64,
    /// `t`.
    pub t: f64,
    /// Number of focus-focus fixed points.
    pub focus_focus_count: usize,
    /// Height, closed form.
    pub height_closed: f64,
    /// Height, quadrature.
    pub height_quadrature: f64,
    /// `a₁` in `[0, 2π)`.
    pub a1: f64,
    /// `a₂`.
    pub a2: f64,
    /// True unless `(R₁, R₂) = (1, 5/2)`.
    pub experimental: bool,
    /// `Δ₁` and `Δ₂`.
    pub polygons: Vec<PolygonReport>,
}

/// Builds the invariants report.
pub fn invariants_report(params: &SystemParams) -> Result<InvariantsReport, CliError> {
    params.require_half()?;
    let focus_focus_count = critical::fixed_points(params)
        .iter()
        .filter(|rec| critical::williamson_classify(rec, params).kind == WilliamsonKind::FocusFocus)
        .count();
    let h = invariants::height(params)?;
    let taylor = invariants::taylor_coefficients(params)?;
    let polygons = invariants::polygons(params)?;
    Ok(InvariantsReport {
        r1: params.r1(),
        r2: params.r2(),
        t: params.t(),
        focus_focus_count,
        height_closed: h.closed_form,
        height_quadrature: h.quadrature,
        a1: taylor.a1,
        a2: taylor.a2,
        experimental: taylor.experimental,
        polygons: polygons.iter().map(PolygonReport::from).collect(),
    })
}

#[derive(Serialize)]
struct BoundaryRow {
    j: f64,
    h: f64,
}

#[derive(Serialize)]
struct SpectrumRow {
    k: u64,
    j: u64,
    lambda_j: f64,
    lambda_h: f64,
}

/// Row of the gap sweep.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct GapRow {
    /// Semiclassical integer.
    pub k: u64,
    /// `k · min gap`.
    pub min_gap_scaled: f64,
    /// Gap-law prediction.
    pub prediction: f64,
}

/// Row of the Weyl sweep.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct WeylRow {
    /// `R₂`.
    pub r2: f64,
    /// Weyl-law height estimate.
    pub weyl_estimate: f64,
    /// Closed-form height.
    pub h_closed: f64,
}

/// Gap sweep rows in the order of `ks`.
pub fn gap_sweep(params: &SystemParams, ks: &[u64], level: JLevel) -> Result<Vec<GapRow>, CliError> {
    let frame = invariants::eliasson_frame(params)?;
    let a2 = invariants::taylor_a2(params)?;
    ks.par_iter()
        .map(|&k| {
            let qp = QuantumParams::new(*params, k)?;
            Ok(GapRow {
                k,
                min_gap_scaled: quantum::min_gap_kernel(&qp, level)?,
                prediction: quantum::gap_law_prediction(k, a2, &frame),
            })
        })
        .collect()
}

/// Weyl sweep rows in the order of `r2s`.
pub fn weyl_sweep(r1: f64, r2s: &[f64], t: f64, k: u64, level: JLevel) -> Result<Vec<WeylRow>, CliError> {
    r2s.par_iter()
        .map(|&r2| {
            let base = SystemParams::new(r1, r2, t)?;
            let qp = QuantumParams::new(base, k)?;
            Ok(WeylRow {
                r2,
                weyl_estimate: quantum::weyl_height(&qp, level)?,
                h_closed: invariants::height_closed_form(&base)?,
            })
        })
        .collect()
}

fn tabular<T: Serialize>(
    format: Format,
    header: &[&str],
    rows: &[T],
    csv_row: impl Fn(&T) -> Vec<String>,
) -> Result<String, CliError> {
    match format {
        Format::Csv => Ok(table(header, &rows.iter().map(csv_row).collect::<Vec<_>>())),
        Format::Json => to_json(&rows),
    }
}

/// Runs a parsed command and returns the rendered output.
pub fn render(cli: &Cli) -> Result<String, CliError> {
    let json_only = |name: &str| match cli.format {
        Some(Format::Csv) => Err(CliError::validation(format!("{name} supports --format json only"))),
        _ => Ok(()),
    };
    let format = cli.format.unwrap_or(Format::Csv);
    match &cli.command {
        Command::Classify(sys) => {
            json_only("classify")?;
            to_json(&classify_report(&sys.params()?))
        }
        Command::Invariants(sys) => {
            json_only("invariants")?;
            to_json(&invariants_report(&sys.params()?)?)
        }
        Command::Boundary { system, samples } => {
            let curve = critical::boundary_curve(&system.params()?, *samples)?;
            let rows: Vec<BoundaryRow> = curve.into_iter().map(|(j, h)| BoundaryRow { j, h }).collect();
            tabular(format, &["J", "H"], &rows, |r| vec![csv_float(r.j), csv_float(r.h)])
        }
        Command::Spectrum { system, k } => {
            let params = system.params()?;
            let mut rows = Vec::new();
            for &k in &k.0 {
                let spectrum = quantum::joint_spectrum(&QuantumParams::new(params, k)?)?;
                rows.extend(spectrum.points.iter().zip(&spectrum.block_of_point).map(|(&(lj, lh), &j)| SpectrumRow {
                    k,
                    j,
                    lambda_j: lj,
                    lambda_h: lh,
                }));
            }
            tabular(format, &["k", "j", "lambda_j", "lambda_h"], &rows, |r| {
                vec![r.k.to_string(), r.j.to_string(), csv_float(r.lambda_j), csv_float(r.lambda_h)]
            })
        }
        Command::GapSweep { system, k, level } => {
            let rows = gap_sweep(&system.params()?, &k.0, (*level).into())?;
            tabular(format, &["k", "min_gap_scaled", "prediction"], &rows, |r| {
                vec![r.k.to_string(), csv_float(r.min_gap_scaled), csv_float(r.prediction)]
            })
        }
        Command::WeylSweep { r1, r2_list, t, k, level } => {
            let rows = weyl_sweep(*r1, &r2_list.0, *t, *k, (*level).into())?;
            tabular(format, &["r2", "weyl_estimate", "h_closed"], &rows, |r| {
                vec![csv_float(r.r2), csv_float(r.weyl_estimate), csv_float(r.h_closed)]
            })
        }
    }
}

/// Parses `argv`, runs the command and writes the output.
///
/// Returns the process exit status; help and version requests print to standard output.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = write!(stdout, "{e}");
            return 0;
        }
        Err(e) => {
            let rendered = e.to_string();
            let first = rendered.lines().next().unwrap_or("invalid arguments");
            let msg = first.strip_prefix("error: ").unwrap_or(first);
            let _ = writeln!(stderr, "{}", CliError::validation(msg).line());
            return ErrorCode::Validation.exit_status();
        }
    };
    match execute(&cli, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "{}", e.line());
            e.code.exit_status()
        }
    }
}

fn execute(cli: &Cli, stdout: &mut dyn Write) -> Result<(), CliError> {
    let output = if cli.threads > 0 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build()
            .map_err(|e| CliError::validation(format!("thread pool: {e}")))?;
        pool.install(|| render(cli))?
    } else {
        render(cli)?
    };
    let io = |e: std::io::Error| CliError { code: ErrorCode::Io, message: e.to_string() };
    match &cli.out {
        Some(path) => std::fs::write(path, output).map_err(io),
        None => stdout.write_all(output.as_bytes()).map_err(io),
    }
}
