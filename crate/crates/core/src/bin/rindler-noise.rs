use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use rindler_noise::concurrence::{closed_form_concurrence, wootters_concurrence, xstate_concurrence, Method};
use rindler_noise::sweep::{
    emit_csv, emit_svg_lineplot, esd_boundary, max_delta_by_series, write_csv, EsdOutcome, EsdQuery, PlotColumn,
    SeriesKey,
};
use rindler_noise::validation::{self, CLOSED_FORM_TOL};
use rindler_noise::{
    acceleration_to_r, apply_channel, build_x_state, figure_preset, run_sweep, unruh_transform, AccelerationParam,
    Application, ChannelKind, ChannelSpec, Error, FigureName, Grid, PhysicalAcceleration, StatePreset, Strictness,
    SweepAxis, SweepRow, SweepSpec,
};

#[derive(Parser)]
#[command(
    name = "rindler-noise",
    version,
    about = "Entanglement of accelerated X-states under correlated noise"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate closed form and oracle over a (mu, p, r) grid.
    Sweep(SweepArgs),
    /// Run one of the named sweep presets (fig1..fig6).
    Figure(FigureArgs),
    /// Concurrence at a single parameter point.
    Concurrence(PointArgs),
    /// Locate the sudden-death boundary along one parameter.
    Esd(EsdArgs),
    /// Run the acceptance suite.
    Validate,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Svg,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Modes {
    Single,
    Double,
    Both,
}

impl Modes {
    fn list(self) -> Vec<Application> {
        match self {
            Self::Single => vec![Application::SingleCorrelatedUse],
            Self::Double => vec![Application::DoubleStreamed],
            Self::Both => Application::ALL.to_vec(),
        }
    }
}

#[derive(Args)]
struct Convention {
    /// Reject unphysical (non-positive) initial states.
    #[arg(long, conflicts_with = "paper_convention")]
    strict: bool,
    /// Accept the presets as given, positive or not (default).
    #[arg(long)]
    paper_convention: bool,
}

impl Convention {
    fn strictness(&self) -> Strictness {
        if self.strict {
            Strictness::Strict
        } else {
            Strictness::PaperConvention
        }
    }
}

#[derive(Args)]
struct OutputArgs {
    /// Output path; the extension is replaced by `.csv` / `.svg`. CSV goes
    /// to stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[arg(long, value_enum, default_value = "single")]
    application: Modes,
    /// Exit with status 2 if any |closed - oracle| exceeds 1e-9.
    #[arg(long)]
    fail_on_delta: bool,
    #[command(flatten)]
    convention: Convention,
}

#[derive(Args)]
struct SweepArgs {
    /// Channels: ad, dep, bf (comma separated).
    #[arg(long, value_delimiter = ',', default_values = ["ad", "dep", "bf"])]
    channel: Vec<ChannelKind>,
    /// bell, werner, general or custom:c1,c2,c3 (repeatable).
    #[arg(long, default_value = "bell")]
    state: Vec<StatePreset>,
    /// Value or start:stop:count.
    #[arg(long, default_value = "0:1:101")]
    mu: Grid,
    #[arg(long, default_value = "0.3")]
    p: Grid,
    /// Accepts pi/4 style values.
    #[arg(long, default_value = "0")]
    r: Grid,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct FigureArgs {
    name: FigureName,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct PointArgs {
    #[arg(long, default_value = "dep")]
    channel: ChannelKind,
    #[arg(long, default_value = "bell")]
    state: StatePreset,
    #[arg(long, default_value_t = 0.0)]
    p: f64,
    #[arg(long, default_value_t = 0.0)]
    mu: f64,
    /// Accepts pi/4 style values.
    #[arg(long, conflicts_with = "accel", value_parser = angle)]
    r: Option<f64>,
    /// Proper acceleration in m/s^2; needs --omega.
    #[arg(long, requires = "omega")]
    accel: Option<f64>,
    /// Mode frequency in rad/s.
    #[arg(long, requires = "accel")]
    omega: Option<f64>,
    /// wootters, xform or closed; all three when omitted.
    #[arg(long)]
    method: Option<Method>,
    #[arg(long, value_enum, default_value = "single")]
    application: Modes,
    #[command(flatten)]
    convention: Convention,
}

#[derive(Args)]
struct EsdArgs {
    #[arg(long, default_value = "dep")]
    channel: ChannelKind,
    #[arg(long, default_value = "bell")]
    state: StatePreset,
    #[arg(long, default_value = "p")]
    scan: SweepAxis,
    #[arg(long, value_parser = angle)]
    from: Option<f64>,
    #[arg(long, value_parser = angle)]
    to: Option<f64>,
    #[arg(long, default_value_t = 0.0)]
    mu: f64,
    #[arg(long, default_value_t = 0.0)]
    p: f64,
    #[arg(long, default_value = "0", value_parser = angle)]
    r: f64,
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    #[arg(long, value_enum, default_value = "single")]
    application: Modes,
}

/// Why the process stops early.
enum Failure {
    BadArgs(String),
    Validation(String),
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Io { .. } => Self::Runtime(e.to_string()),
            Error::ClosedFormDomainError { .. } | Error::NotPSD { .. } | Error::NotHermitian { .. } => {
                Self::Runtime(e.to_string())
            }
            _ => Self::BadArgs(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Self::Runtime(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(3)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match cli.command {
        Command::Sweep(args) => sweep(args),
        Command::Figure(args) => figure(args),
        Command::Concurrence(args) => point(args),
        Command::Esd(args) => esd(args),
        Command::Validate => validate(),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::BadArgs(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::Validation(msg)) => {
            eprintln!("validation failed: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}

fn sweep(args: SweepArgs) -> Result<(), Failure> {
    let spec = SweepSpec {
        channels: args.channel,
        states: args.state,
        application: Application::SingleCorrelatedUse,
        mu: args.mu,
        p: args.p,
        r: args.r,
    };
    run_and_emit(spec, &args.output)
}

fn figure(args: FigureArgs) -> Result<(), Failure> {
    run_and_emit(figure_preset(args.name), &args.output)
}

fn run_and_emit(mut spec: SweepSpec, out: &OutputArgs) -> Result<(), Failure> {
    if out.convention.strictness() == Strictness::Strict {
        for s in &spec.states {
            build_x_state(&s.coeffs, Strictness::Strict)?;
        }
    }
    let modes = out.application.list();
    if modes.len() > 1 && out.out.is_none() {
        return Err(Failure::BadArgs("--application both needs --out".into()));
    }
    if out.format != Format::Csv && out.out.is_none() {
        return Err(Failure::BadArgs("SVG output needs --out".into()));
    }
    let mut breach = Vec::new();
    for &mode in &modes {
        spec.application = mode;
        let rows = run_sweep(&spec)?;
        for (kind, state, d) in max_delta_by_series(&rows) {
            eprintln!("{mode} {kind} {state}: max delta {d:.3e}");
            if d > CLOSED_FORM_TOL {
                breach.push(format!("{mode} {kind} {state} ({d:.3e})"));
            }
        }
        let suffix = if modes.len() > 1 {
            format!("-{mode}")
        } else {
            String::new()
        };
        emit(&rows, &spec, out, &suffix)?;
    }
    if !breach.is_empty() {
        let msg = format!("closed form deviates from oracle beyond 1e-9: {}", breach.join(", "));
        if out.fail_on_delta {
            return Err(Failure::Validation(msg));
        }
        eprintln!("warning: {msg}");
    }
    Ok(())
}

fn emit(rows: &[SweepRow], spec: &SweepSpec, out: &OutputArgs, suffix: &str) -> Result<(), Failure> {
    let Some(base) = &out.out else {
        let stdout = io::stdout();
        write_csv(rows, stdout.lock())?;
        return Ok(());
    };
    if matches!(out.format, Format::Csv | Format::Both) {
        emit_csv(rows, &with_ext(base, suffix, "csv"))?;
    }
    if matches!(out.format, Format::Svg | Format::Both) {
        let (x, series) = plot_layout(spec)?;
        emit_svg_lineplot(rows, x, &series, PlotColumn::Oracle, &with_ext(base, suffix, "svg"))?;
    }
    Ok(())
}

fn with_ext(base: &Path, suffix: &str, ext: &str) -> PathBuf {
    let stem = base
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    base.with_file_name(format!("{stem}{suffix}.{ext}"))
}

/// Most r values drawn as separate curves; more than this is a surface.
const MAX_R_CURVES: usize = 9;

/// x axis is the first scanned axis other than r; r, if also scanned on a
/// short grid, becomes the curve family.
fn plot_layout(spec: &SweepSpec) -> Result<(SweepAxis, Vec<SeriesKey>), Failure> {
    let scanned = spec.scanned_axes();
    let mut series = vec![SeriesKey::Channel, SeriesKey::State];
    let x = match scanned.as_slice() {
        [] => SweepAxis::P,
        [a] => *a,
        [a, SweepAxis::R] if spec.r.count <= MAX_R_CURVES => {
            series.push(SeriesKey::R);
            *a
        }
        _ => {
            return Err(Failure::BadArgs(
                "line plots need a single scanned axis (plus optionally r); use --format csv for surfaces".into(),
            ))
        }
    };
    Ok((x, series))
}

fn point(args: PointArgs) -> Result<(), Failure> {
    let r = match (args.r, args.accel, args.omega) {
        (_, Some(a), Some(w)) => acceleration_to_r(&PhysicalAcceleration::new(a, w))?,
        (r, _, _) => AccelerationParam::new(r.unwrap_or(0.0))?,
    };
    let state = args.state;
    build_x_state(&state.coeffs, args.convention.strictness())?;
    let methods = match args.method {
        Some(m) => vec![m],
        None => vec![Method::Wootters, Method::XShortcut, Method::ClosedForm],
    };
    let stdout = io::stdout();
    let mut w = stdout.lock();
    writeln!(w, "r = {}", r.r())?;
    for mode in args.application.list() {
        let spec = ChannelSpec::new(args.channel, args.p, args.mu, mode)?;
        let rho = apply_channel(&unruh_transform(&state.coeffs, r)?, &spec)?;
        for &m in &methods {
            let value = match m {
                Method::Wootters => wootters_concurrence(&rho).map(|c| c.value),
                Method::XShortcut => xstate_concurrence(&rho).map(|c| c.value),
                Method::ClosedForm => closed_form_concurrence(
                    args.channel,
                    &state.coeffs,
                    r.r(),
                    args.p,
                    args.mu,
                    state.magnitudes_mode,
                )
                .map(|c| c.value),
            };
            let label = match m {
                Method::Wootters => "wootters",
                Method::XShortcut => "xform",
                Method::ClosedForm => "closed",
            };
            match value {
                Ok(v) => writeln!(w, "{mode} {label} {v:.12}")?,
                Err(e) => writeln!(w, "{mode} {label} error: {e}")?,
            }
        }
    }
    Ok(())
}

fn esd(args: EsdArgs) -> Result<(), Failure> {
    let (lo, hi) = match args.scan {
        SweepAxis::R => (0.0, std::f64::consts::FRAC_PI_4),
        _ => (0.0, 1.0),
    };
    for mode in args.application.list() {
        let q = EsdQuery {
            channel: args.channel,
            state: args.state,
            application: mode,
            scan: args.scan,
            from: args.from.unwrap_or(lo),
            to: args.to.unwrap_or(hi),
            mu: args.mu,
            p: args.p,
            r: args.r,
        };
        let text = match esd_boundary(&q, args.tol)? {
            EsdOutcome::Boundary(b) => format!("boundary {} = {b:.12}", args.scan.label()),
            EsdOutcome::NoBoundary => "no boundary".into(),
            EsdOutcome::DeadAtStart => "dead at start".into(),
            EsdOutcome::Brackets(bs) => {
                let parts: Vec<String> = bs.iter().map(|(a, b)| format!("[{a:.6}, {b:.6}]")).collect();
                format!("brackets {}", parts.join(" "))
            }
        };
        println!("{mode} {text}");
    }
    Ok(())
}

fn validate() -> Result<(), Failure> {
    let reports = validation::run_all()?;
    for r in &reports {
        println!("{r}");
    }
    let failed: Vec<String> = reports.iter().filter(|r| !r.passed).map(|r| r.id.to_string()).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Validation(format!("criteria {} failed", failed.join(", "))))
    }
}

fn angle(s: &str) -> Result<f64, String> {
    rindler_noise::sweep::parse_angle(s).ok_or_else(|| format!("`{s}` is not a number or pi/N"))
}
