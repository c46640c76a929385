//! Command-line front end.
//!
//! Units: ħ = c = k_B = 1. Energies are in units of `--omega`, temperatures
//! in units of `omega / k_B`.
//!
//! Exit codes: `0` success, `1` verification or runtime failure, `2` invalid
//! configuration (including violations of the flux-reflection constraint).

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::io::{fmt_sci, write_file};
use crate::spectrum::{check_constraint, enumerate, DegeneracyPolicy, ModelParams, Sector};
use crate::thermo::{log_space, sweep, temperature_series, E0Mode, SweepAxes, ThermoModel};
use crate::verify::{run_verify, VerifyOptions};

pub const OUT_DIR_ENV: &str = "DUNKL_PAULI_OUT_DIR";
const DEFAULT_OUT_DIR: &str = "dunkl-pauli-output";

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_INVALID_CONFIG: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "dunkl-pauli",
    version,
    about = "Dunkl-Pauli oscillator in an Aharonov-Bohm flux"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Print the resolved configuration as JSON and exit without running.
    #[arg(long, global = true)]
    pub dump_config: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Tabulate the admissible spectrum below a cutoff.
    Spectrum(SpectrumArgs),
    /// Closed-form thermodynamics of one parameter set over a temperature grid.
    Thermo(ThermoArgs),
    /// Thermodynamics over nu x theta x T grids of constrained parameters.
    Sweep(SweepArgs),
    /// Run every verification suite and write the reports.
    Verify(VerifyArgs),
    /// Write the data behind each figure family as CSV.
    Figures(FiguresArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum E0ModeArg {
    Paper,
    Enumerated,
}

impl From<E0ModeArg> for E0Mode {
    fn from(m: E0ModeArg) -> Self {
        match m {
            E0ModeArg::Paper => E0Mode::Paper,
            E0ModeArg::Enumerated => E0Mode::Enumerated,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PolicyArg {
    Primary,
    Both,
}

fn parse_sector(s: &str) -> std::result::Result<Sector, String> {
    match s.trim() {
        "+1" | "1" | "even" => Ok(Sector::Even),
        "-1" | "odd" => Ok(Sector::Odd),
        other => Err(format!("sector must be +1 or -1, got {other:?}")),
    }
}

#[derive(Args, Debug, Clone)]
pub struct ModelArgs {
    /// Reflection sector epsilon.
    #[arg(long, value_parser = parse_sector, default_value = "+1", allow_hyphen_values = true)]
    sector: Sector,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    nu1: f64,
    /// Defaults to `-epsilon * nu1`, which satisfies the flux constraint.
    #[arg(long, allow_hyphen_values = true)]
    nu2: Option<f64>,
    /// Aharonov-Bohm flux.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    theta: f64,
    #[arg(long, default_value_t = 1.0)]
    omega: f64,
    #[arg(long, default_value_t = 1.0)]
    mass: f64,
}

impl ModelArgs {
    fn params(&self) -> Result<ModelParams> {
        let nu2 = self.nu2.unwrap_or(-self.sector.epsilon() * self.nu1);
        ModelParams::new(
            self.nu1,
            nu2,
            self.sector,
            self.theta,
            self.mass,
            self.omega,
        )
    }
}

#[derive(Args, Debug, Clone)]
pub struct TemperatureArgs {
    #[arg(long, default_value_t = 1e-2)]
    tmin: f64,
    #[arg(long, default_value_t = 1e3)]
    tmax: f64,
    /// Number of log-spaced temperatures, endpoints included.
    #[arg(long, default_value_t = 121)]
    tsteps: usize,
}

impl TemperatureArgs {
    fn grid(&self) -> Result<Vec<f64>> {
        log_space(self.tmin, self.tmax, self.tsteps)
    }
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Output file; stdout when neither this nor --out-dir is given.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Directory for the default output file name.
    #[arg(long, env = OUT_DIR_ENV)]
    out_dir: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
#[command(allow_negative_numbers = true)]
pub struct SpectrumArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Energy cutoff in units of omega.
    #[arg(long, default_value_t = 20.0)]
    cutoff: f64,
    #[arg(long, value_enum, default_value_t = PolicyArg::Primary)]
    policy: PolicyArg,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug, Clone)]
#[command(allow_negative_numbers = true)]
pub struct ThermoArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[command(flatten)]
    temps: TemperatureArgs,
    #[arg(long, value_enum, default_value_t = E0ModeArg::Enumerated)]
    e0_mode: E0ModeArg,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug, Clone)]
#[command(allow_negative_numbers = true)]
pub struct SweepArgs {
    #[arg(long, value_parser = parse_sector, default_value = "+1", allow_hyphen_values = true)]
    sector: Sector,
    /// Comma-separated, strictly increasing.
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        default_value = "0"
    )]
    nus: Vec<f64>,
    /// Comma-separated, strictly increasing.
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        default_value = "-0.4,0,0.5,1"
    )]
    thetas: Vec<f64>,
    #[arg(long, default_value_t = 1.0)]
    omega: f64,
    #[arg(long, default_value_t = 1.0)]
    mass: f64,
    #[command(flatten)]
    temps: TemperatureArgs,
    #[arg(long, value_enum, default_value_t = E0ModeArg::Enumerated)]
    e0_mode: E0ModeArg,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    /// Report directory.
    #[arg(long, env = OUT_DIR_ENV)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = VerifyOptions::default().seed)]
    seed: u64,
    /// Shift applied to the analytic radial energy (exercises the failure path).
    #[arg(long, hide = true, default_value_t = 0.0, allow_hyphen_values = true)]
    inject_energy_offset: f64,
}

#[derive(Args, Debug, Clone)]
#[command(allow_negative_numbers = true)]
pub struct FiguresArgs {
    /// Output directory.
    #[arg(long, env = OUT_DIR_ENV)]
    out: Option<PathBuf>,
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        default_value = "-0.4,0,0.5,1"
    )]
    thetas: Vec<f64>,
    /// Odd-sector nu values.
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        default_value = "0,0.25,0.5,1"
    )]
    nus: Vec<f64>,
    #[command(flatten)]
    temps: TemperatureArgs,
    #[arg(long, value_enum, default_value_t = E0ModeArg::Paper)]
    e0_mode: E0ModeArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SubcommandKind {
    Spectrum,
    Thermo,
    Sweep,
    Verify,
    Figures,
}

/// Fully resolved run description; what `--dump-config` prints.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub subcommand: SubcommandKind,
    pub params: ModelParams,
    pub temperatures: Vec<f64>,
    pub thetas: Vec<f64>,
    pub nus: Vec<f64>,
    pub cutoff: f64,
    pub policy: DegeneracyPolicy,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub e0_mode: E0Mode,
    pub seed: u64,
    #[serde(default)]
    pub energy_offset: f64,
}

impl RunConfig {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Config(format!("config JSON: {e}")))
    }

    fn base(subcommand: SubcommandKind, params: ModelParams) -> Self {
        Self {
            subcommand,
            params,
            temperatures: Vec::new(),
            thetas: vec![params.theta],
            nus: vec![params.nu1],
            cutoff: 20.0,
            policy: DegeneracyPolicy::Primary,
            out: None,
            format: Format::Csv,
            e0_mode: E0Mode::Paper,
            seed: VerifyOptions::default().seed,
            energy_offset: 0.0,
        }
    }
}

fn default_params(sector: Sector, omega: f64, mass: f64) -> Result<ModelParams> {
    ModelParams::new(0.0, 0.0, sector, 0.0, mass, omega)
}

fn file_target(output: &OutputArgs, default_name: &str) -> Option<PathBuf> {
    output
        .out
        .clone()
        .or_else(|| output.out_dir.as_ref().map(|d| d.join(default_name)))
}

fn extension(format: Format) -> &'static str {
    match format {
        Format::Csv => "csv",
        Format::Json => "json",
    }
}

impl Command {
    /// Resolves arguments into a validated [`RunConfig`].
    pub fn resolve(&self) -> Result<RunConfig> {
        let cfg = match self {
            Command::Spectrum(a) => {
                let mut c = RunConfig::base(SubcommandKind::Spectrum, a.model.params()?);
                c.cutoff = a.cutoff;
                c.policy = match a.policy {
                    PolicyArg::Primary => DegeneracyPolicy::Primary,
                    PolicyArg::Both => DegeneracyPolicy::BothBranches,
                };
                c.format = a.output.format;
                c.out = file_target(&a.output, &format!("spectrum.{}", extension(c.format)));
                c
            }
            Command::Thermo(a) => {
                let mut c = RunConfig::base(SubcommandKind::Thermo, a.model.params()?);
                c.temperatures = a.temps.grid()?;
                c.e0_mode = a.e0_mode.into();
                c.format = a.output.format;
                c.out = file_target(&a.output, &format!("thermo.{}", extension(c.format)));
                c
            }
            Command::Sweep(a) => {
                let mut c = RunConfig::base(
                    SubcommandKind::Sweep,
                    default_params(a.sector, a.omega, a.mass)?,
                );
                c.temperatures = a.temps.grid()?;
                c.thetas = a.thetas.clone();
                c.nus = a.nus.clone();
                c.e0_mode = a.e0_mode.into();
                c.format = a.output.format;
                c.out = file_target(&a.output, &format!("sweep.{}", extension(c.format)));
                c
            }
            Command::Verify(a) => {
                let mut c = RunConfig::base(
                    SubcommandKind::Verify,
                    default_params(Sector::Even, 1.0, 1.0)?,
                );
                c.out = Some(
                    a.out
                        .clone()
                        .unwrap_or_else(|| PathBuf::from(DEFAULT_OUT_DIR)),
                );
                c.seed = a.seed;
                c.energy_offset = a.inject_energy_offset;
                c
            }
            Command::Figures(a) => {
                let mut c = RunConfig::base(
                    SubcommandKind::Figures,
                    default_params(Sector::Even, 1.0, 1.0)?,
                );
                c.temperatures = a.temps.grid()?;
                c.thetas = a.thetas.clone();
                c.nus = a.nus.clone();
                c.e0_mode = a.e0_mode.into();
                c.out = Some(
                    a.out
                        .clone()
                        .unwrap_or_else(|| PathBuf::from(DEFAULT_OUT_DIR)),
                );
                c
            }
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        self.params.validate()?;
        match self.subcommand {
            SubcommandKind::Spectrum | SubcommandKind::Thermo => {
                let check = check_constraint(&self.params);
                if !check.satisfied {
                    return Err(Error::ConstraintViolation {
                        nu1: self.params.nu1,
                        nu2: self.params.nu2,
                        epsilon: self.params.sector.sign(),
                        theta: self.params.theta,
                        residual: check.residual,
                    });
                }
            }
            _ => {}
        }
        if matches!(self.subcommand, SubcommandKind::Spectrum) && !(self.cutoff > 0.0) {
            return Err(Error::Config(format!(
                "cutoff {} must be positive",
                self.cutoff
            )));
        }
        if matches!(
            self.subcommand,
            SubcommandKind::Thermo | SubcommandKind::Sweep | SubcommandKind::Figures
        ) && self.temperatures.is_empty()
        {
            return Err(Error::Config("temperature grid is empty".into()));
        }
        if matches!(
            self.subcommand,
            SubcommandKind::Sweep | SubcommandKind::Figures
        ) {
            if self.thetas.is_empty() || self.nus.is_empty() {
                return Err(Error::Config("theta and nu grids must be non-empty".into()));
            }
        }
        Ok(())
    }
}

/// What a run produced, for the caller to report.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub exit_code: i32,
    pub summary: String,
}

fn emit(out: Option<&Path>, contents: &str) -> Result<String> {
    match out {
        Some(path) => {
            write_file(path, contents)?;
            Ok(format!("wrote {}", path.display()))
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(contents.as_bytes())
                .map_err(|e| Error::Io(format!("stdout: {e}")))?;
            Ok(String::new())
        }
    }
}

pub fn run(cfg: &RunConfig) -> Result<Outcome> {
    cfg.validate()?;
    let ok = |summary: String| Outcome {
        exit_code: EXIT_OK,
        summary,
    };
    match cfg.subcommand {
        SubcommandKind::Spectrum => {
            let table = enumerate(&cfg.params, cfg.cutoff * cfg.params.omega, cfg.policy)?;
            let body = match cfg.format {
                Format::Csv => table.to_csv(cfg.params.omega),
                Format::Json => {
                    serde_json::to_string_pretty(&table).expect("table serializes") + "\n"
                }
            };
            Ok(ok(emit(cfg.out.as_deref(), &body)?))
        }
        SubcommandKind::Thermo => {
            let r = temperature_series(cfg.params, cfg.temperatures.clone(), cfg.e0_mode)?;
            let body = match cfg.format {
                Format::Csv => r.to_csv(),
                Format::Json => r.to_json() + "\n",
            };
            Ok(ok(emit(cfg.out.as_deref(), &body)?))
        }
        SubcommandKind::Sweep => {
            let axes = SweepAxes {
                sector: cfg.params.sector,
                temperatures: cfg.temperatures.clone(),
                thetas: cfg.thetas.clone(),
                nus: cfg.nus.clone(),
            };
            let r = sweep(axes, cfg.e0_mode, cfg.params.mass, cfg.params.omega)?;
            let body = match cfg.format {
                Format::Csv => r.to_csv(),
                Format::Json => r.to_json() + "\n",
            };
            Ok(ok(emit(cfg.out.as_deref(), &body)?))
        }
        SubcommandKind::Verify => {
            let dir = cfg
                .out
                .clone()
                .unwrap_or_else(|| PathBuf::from(DEFAULT_OUT_DIR));
            let report = run_verify(&VerifyOptions {
                energy_offset: cfg.energy_offset,
                seed: cfg.seed,
            })?;
            report.write_all(&dir)?;
            let mut summary = format!("verification reports in {}", dir.display());
            for f in report.failures() {
                summary.push_str(&format!(
                    "\nFAIL {}/{}: {:e} > {:e}",
                    f.suite, f.check, f.value, f.tolerance
                ));
            }
            Ok(Outcome {
                exit_code: if report.passed() {
                    EXIT_OK
                } else {
                    EXIT_VERIFY_FAILED
                },
                summary,
            })
        }
        SubcommandKind::Figures => {
            let dir = cfg
                .out
                .clone()
                .unwrap_or_else(|| PathBuf::from(DEFAULT_OUT_DIR));
            let files = write_figures(&dir, &cfg.temperatures, &cfg.thetas, &cfg.nus, cfg.e0_mode)?;
            Ok(ok(format!(
                "wrote {} figure files to {}",
                files.len(),
                dir.display()
            )))
        }
    }
}

/// One curve of a figure family: label and model.
struct Curve {
    label: String,
    model: ThermoModel,
}

fn curve(sector: Sector, nu: f64, theta: f64, e0_mode: E0Mode, label: String) -> Result<Curve> {
    let params = ModelParams::constrained(sector, nu, theta)?;
    Ok(Curve {
        label,
        model: ThermoModel::new(params, e0_mode)?,
    })
}

fn even_curves(quantity: &str, thetas: &[f64], e0_mode: E0Mode) -> Result<Vec<Curve>> {
    thetas
        .iter()
        .map(|&th| {
            curve(
                Sector::Even,
                0.0,
                th,
                e0_mode,
                format!("{quantity}[eps=+1;theta={th}]"),
            )
        })
        .collect()
}

fn odd_curves(quantity: &str, nus: &[f64], thetas: &[f64], e0_mode: E0Mode) -> Result<Vec<Curve>> {
    let mut out = Vec::new();
    for &nu in nus {
        for &th in thetas {
            out.push(curve(
                Sector::Odd,
                nu,
                th,
                e0_mode,
                format!("{quantity}[eps=-1;nu={nu};theta={th}]"),
            )?);
        }
    }
    Ok(out)
}

fn family_csv(
    temperatures: &[f64],
    curves: &[Curve],
    value: impl Fn(&ThermoModel, f64) -> f64,
) -> String {
    let mut s = String::from("T");
    for c in curves {
        s.push(',');
        s.push_str(&c.label);
    }
    s.push('\n');
    for &t in temperatures {
        s.push_str(&fmt_sci(t));
        for c in curves {
            s.push(',');
            s.push_str(&fmt_sci(value(&c.model, t)));
        }
        s.push('\n');
    }
    s
}

/// File names written by `figures`, in order.
pub const FIGURE_FILES: [&str; 5] = [
    "z_even.csv",
    "z_odd.csv",
    "internal_energy.csv",
    "entropy.csv",
    "heat_capacity.csv",
];

/// Writes one wide CSV per figure family. Each file has a `T` column
/// (units of omega) followed by one column per curve, labelled
/// `Q[eps=+1;theta=θ]` or `Q[eps=-1;nu=ν;theta=θ]`:
///
/// * `z_even.csv`: `Z`, `ε = +1`, over `thetas`
/// * `z_odd.csv`: `Z`, `ε = -1`, over `nus × thetas`
/// * `internal_energy.csv`: `U/ω` for both sectors
/// * `entropy.csv`: `S` for both sectors
/// * `heat_capacity.csv`: `C_V` for both sectors
pub fn write_figures(
    dir: &Path,
    temperatures: &[f64],
    thetas: &[f64],
    nus: &[f64],
    e0_mode: E0Mode,
) -> Result<Vec<PathBuf>> {
    let even_z = even_curves("Z", thetas, e0_mode)?;
    let odd_z = odd_curves("Z", nus, thetas, e0_mode)?;
    let both = |q: &str| -> Result<Vec<Curve>> {
        let mut v = even_curves(q, thetas, e0_mode)?;
        v.extend(odd_curves(q, nus, thetas, e0_mode)?);
        Ok(v)
    };
    let z = |m: &ThermoModel, t: f64| m.partition(1.0 / (t * m.params.omega));
    let u =
        |m: &ThermoModel, t: f64| m.internal_energy(1.0 / (t * m.params.omega)) / m.params.omega;
    let s = |m: &ThermoModel, t: f64| m.entropy(1.0 / (t * m.params.omega));
    let c = |m: &ThermoModel, t: f64| m.heat_capacity(1.0 / (t * m.params.omega));
    let contents = [
        family_csv(temperatures, &even_z, z),
        family_csv(temperatures, &odd_z, z),
        family_csv(temperatures, &both("U")?, u),
        family_csv(temperatures, &both("S")?, s),
        family_csv(temperatures, &both("C_V")?, c),
    ];
    let mut written = Vec::new();
    for (name, body) in FIGURE_FILES.iter().zip(contents) {
        let path = dir.join(name);
        write_file(&path, &body)?;
        written.push(path);
    }
    Ok(written)
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::Config(_)
        | Error::ConstraintViolation { .. }
        | Error::Domain { .. }
        | Error::Inadmissible(_)
        | Error::EmptySpectrum { .. } => EXIT_INVALID_CONFIG,
        Error::CutoffTooSmall { .. } | Error::Convergence(_) | Error::Io(_) => EXIT_VERIFY_FAILED,
    }
}

/// Parses `args`, runs, and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INVALID_CONFIG
            } else {
                EXIT_OK
            };
            let _ = e.print();
            return code;
        }
    };
    let cfg = match cli.command.resolve() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code_for(&e);
        }
    };
    if cli.dump_config {
        let _ = writeln!(std::io::stdout(), "{}", cfg.to_json());
        return EXIT_OK;
    }
    match run(&cfg) {
        Ok(outcome) => {
            if !outcome.summary.is_empty() {
                eprintln!("{}", outcome.summary);
            }
            outcome.exit_code
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}
