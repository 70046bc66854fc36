//! `pathloss` — batch front end for the path loss toolkit.
//!
//! Subcommands: `eval` (one-shot model evaluation), `synth` (deterministic
//! sample generation), `fit` (closed-form FI/ABG/CI fitting), `validate`
//! (measured-vs-model comparison reports) and `plot-data` (scatter and
//! model-line series export).
//!
//! Exit codes: 0 success, 1 domain/validation error, 2 usage error.
//! Every subcommand prints its fully resolved configuration to stderr;
//! re-running with that configuration reproduces the output byte for byte.
//! The only environment variable honored is `PATHLOSS_SEED`, a default-seed
//! override surfaced in the printed configuration.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use pathloss::fit::{fit_abg, fit_ci, fit_fi, FitError};
use pathloss::io::{self, load_csv_path, partition, BandSet, SampleSet};
use pathloss::models::{
    self, AbgParams, CiParams, Condition, DomainMode, FiParams, NlosOption, ThreeGppInhSpec,
};
use pathloss::report::{
    self, abg_validation, fi_validation, render_report, PlotModel, ReportFormat, SigmaPolicy,
    ThreeGppSource, ValidationPolicy,
};
use pathloss::synth::{
    generate_samples, DistanceGrid, ShadowFading, Spacing, SynthConfig, SynthModel,
};

const SEED_ENV_VAR: &str = "PATHLOSS_SEED";

#[derive(Parser)]
#[command(
    name = "pathloss",
    version,
    about = "Indoor-hotspot path loss modeling and validation toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a path loss model at one (distance, frequency) point
    Eval(EvalArgs),
    /// Generate synthetic samples and write them as CSV
    Synth(SynthArgs),
    /// Fit a model family to samples loaded from CSV
    Fit(FitArgs),
    /// Compare measured fits against the TR 38.901 InH model
    Validate(ValidateArgs),
    /// Export measured scatter and model-line plot series
    PlotData(PlotDataArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModelKind {
    #[value(name = "fspl-1m")]
    Fspl1m,
    Fi,
    Abg,
    Ci,
    #[value(name = "3gpp-inh-los")]
    InhLos,
    #[value(name = "3gpp-inh-nlos")]
    InhNlos,
}

impl ModelKind {
    fn flag_name(self) -> &'static str {
        match self {
            ModelKind::Fspl1m => "fspl-1m",
            ModelKind::Fi => "fi",
            ModelKind::Abg => "abg",
            ModelKind::Ci => "ci",
            ModelKind::InhLos => "3gpp-inh-los",
            ModelKind::InhNlos => "3gpp-inh-nlos",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CliCondition {
    Los,
    Nlos,
}

impl From<CliCondition> for Condition {
    fn from(c: CliCondition) -> Condition {
        match c {
            CliCondition::Los => Condition::Los,
            CliCondition::Nlos => Condition::Nlos,
        }
    }
}

/// Model parameter flags shared by `eval` and `synth`.
#[derive(Debug, clap::Args)]
struct ModelParamArgs {
    /// FI intercept in dB
    #[arg(long)]
    intercept: Option<f64>,
    /// FI/ABG distance exponent
    #[arg(long)]
    exponent: Option<f64>,
    /// ABG offset in dB
    #[arg(long)]
    offset: Option<f64>,
    /// ABG frequency exponent
    #[arg(long = "freq-exponent")]
    freq_exponent: Option<f64>,
    /// CI path loss exponent
    #[arg(long)]
    ple: Option<f64>,
    /// NLOS option (1 or 2)
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
    option: Option<u8>,
    /// Disable the NLOS LOS-floor (max) term
    #[arg(long = "no-floor")]
    no_floor: bool,
}

#[derive(clap::Args)]
struct EvalArgs {
    #[arg(long, value_enum)]
    model: ModelKind,
    /// 3D TX-RX distance in meters
    #[arg(short = 'd', long = "distance")]
    distance: Option<f64>,
    /// Center frequency in GHz
    #[arg(short = 'f', long = "frequency")]
    frequency: Option<f64>,
    #[command(flatten)]
    params: ModelParamArgs,
    /// Evaluate outside the strict model domain (warn instead of erroring)
    #[arg(long)]
    permissive: bool,
}

#[derive(clap::Args)]
struct SynthArgs {
    #[arg(long, value_enum)]
    model: ModelKind,
    #[command(flatten)]
    params: ModelParamArgs,
    /// Condition label for fi/abg/ci sources
    #[arg(long, value_enum)]
    condition: Option<CliCondition>,
    /// Frequencies in GHz (comma separated or repeated)
    #[arg(short = 'f', long = "freq", value_delimiter = ',', required = true)]
    frequencies: Vec<f64>,
    /// Distance grid as spacing:dmin:dmax:count
    #[arg(long, default_value = "log:1:100:100")]
    grid: String,
    /// Shadow fading: off or gaussian:<sigma dB>
    #[arg(long, default_value = "off")]
    sf: String,
    /// RNG seed (default: $PATHLOSS_SEED or 0)
    #[arg(long)]
    seed: Option<u64>,
    /// Samples per grid point
    #[arg(long, default_value_t = 1)]
    replicates: usize,
    /// Shorthand: override the grid point count
    #[arg(short = 'n', long = "samples")]
    samples: Option<usize>,
    /// Output CSV path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    permissive: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FitModelKind {
    Fi,
    Abg,
    Ci,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GroupDim {
    Condition,
    Frequency,
}

#[derive(clap::Args)]
struct FitArgs {
    /// Input CSV path
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, value_enum)]
    model: FitModelKind,
    /// Group before fitting: condition and/or frequency
    #[arg(long = "group-by", value_enum, value_delimiter = ',')]
    group_by: Vec<GroupDim>,
    /// Keep only band member frequencies: 7-24, 0.5-100, or a custom list
    #[arg(long)]
    band: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ValidateMode {
    Fi,
    Abg,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Markdown,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SideKind {
    /// Fit synthetic samples generated from the InH equations
    Synthetic,
    /// Read the InH coefficients directly
    Direct,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SigmaKind {
    /// Report the nominal 3 / 8.03 / 8.29 dB figures for noiseless fits
    Nominal,
    /// Always report the synthetic-side fit residual
    Fitted,
}

#[derive(clap::Args)]
struct ValidateArgs {
    /// Input CSV path
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, value_enum)]
    mode: ValidateMode,
    /// Band for abg mode (or an optional frequency filter for fi mode)
    #[arg(long)]
    band: Option<String>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Model side: synthetic fit (fi default) or direct read (abg default)
    #[arg(long = "threegpp-side", value_enum)]
    threegpp_side: Option<SideKind>,
    /// Model-side sigma handling for synthetic fits
    #[arg(long = "threegpp-sigma", value_enum, default_value = "nominal")]
    threegpp_sigma: SigmaKind,
    /// LOS synthesis grid as spacing:dmin:dmax:count
    #[arg(long, default_value = "log:1:100:100")]
    grid: String,
    /// NLOS synthesis grid (d >= 4 m keeps the LOS floor out of the fit)
    #[arg(long = "nlos-grid", default_value = "log:4:100:100")]
    nlos_grid: String,
    /// Shadow fading for synthetic fits: off or gaussian:<sigma dB>
    #[arg(long, default_value = "off")]
    sf: String,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = 1)]
    replicates: usize,
    #[arg(long = "no-floor")]
    no_floor: bool,
    /// Output path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(clap::Args)]
struct PlotDataArgs {
    /// Input CSV path
    #[arg(long = "in")]
    input: PathBuf,
    /// Frequency in GHz for model lines and fit filtering
    #[arg(short = 'f', long = "frequency")]
    frequency: f64,
    /// Model lines: fit-fi, fit-ci, fit-abg, 3gpp-los, 3gpp-nlos-opt1, 3gpp-nlos-opt2
    #[arg(long, value_delimiter = ',', required = true)]
    models: Vec<String>,
    /// Line-series grid as spacing:dmin:dmax:count
    #[arg(long, default_value = "log:1:100:100")]
    grid: String,
    /// Output directory for series CSVs and bundle.json
    #[arg(long)]
    out: PathBuf,
}

enum CliError {
    Usage(String),
    Run(Box<dyn std::error::Error>),
}

macro_rules! impl_run_error {
    ($($t:ty),* $(,)?) => {
        $(impl From<$t> for CliError {
            fn from(e: $t) -> CliError {
                CliError::Run(Box::new(e))
            }
        })*
    };
}

impl_run_error!(
    models::ModelError,
    FitError,
    pathloss::synth::SynthError,
    io::LoadError,
    report::ReportError,
    std::io::Error,
    serde_json::Error,
);

fn usage(message: impl Into<String>) -> CliError {
    CliError::Usage(message.into())
}

fn main() {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Eval(args) => cmd_eval(args),
        Command::Synth(args) => cmd_synth(args),
        Command::Fit(args) => cmd_fit(args),
        Command::Validate(args) => cmd_validate(args),
        Command::PlotData(args) => cmd_plot_data(args),
    };
    match result {
        Ok(()) => {}
        Err(CliError::Usage(message)) => {
            eprintln!("usage error: {message}");
            std::process::exit(2);
        }
        Err(CliError::Run(err)) => {
            eprintln!("error: {err}");
            std::process::exit(1);
        }
    }
}

fn parse_grid(text: &str) -> Result<DistanceGrid, CliError> {
    let parts: Vec<&str> = text.split(':').collect();
    let err = || usage(format!("grid must be spacing:dmin:dmax:count, got '{text}'"));
    if parts.len() != 4 {
        return Err(err());
    }
    let spacing = match parts[0] {
        "log" => Spacing::Log,
        "linear" => Spacing::Linear,
        _ => return Err(err()),
    };
    let d_min: f64 = parts[1].parse().map_err(|_| err())?;
    let d_max: f64 = parts[2].parse().map_err(|_| err())?;
    let count: usize = parts[3].parse().map_err(|_| err())?;
    Ok(DistanceGrid::new(d_min, d_max, count, spacing))
}

fn grid_flag(grid: &DistanceGrid) -> String {
    format!(
        "{}:{}:{}:{}",
        grid.spacing, grid.d_min_m, grid.d_max_m, grid.count
    )
}

fn parse_sf(text: &str) -> Result<ShadowFading, CliError> {
    if text == "off" {
        return Ok(ShadowFading::Off);
    }
    if let Some(sigma) = text.strip_prefix("gaussian:") {
        let sigma_db: f64 = sigma
            .parse()
            .map_err(|_| usage(format!("bad shadow fading sigma '{sigma}'")))?;
        return Ok(ShadowFading::Gaussian { sigma_db });
    }
    Err(usage(format!(
        "shadow fading must be 'off' or 'gaussian:<sigma>', got '{text}'"
    )))
}

fn sf_flag(sf: &ShadowFading) -> String {
    match sf {
        ShadowFading::Off => "off".to_string(),
        ShadowFading::Gaussian { sigma_db } => format!("gaussian:{sigma_db}"),
    }
}

/// Resolves the seed from the flag, then `PATHLOSS_SEED`, then 0.
/// Returns the seed and a provenance note for the configuration line.
fn resolve_seed(flag: Option<u64>) -> Result<(u64, &'static str), CliError> {
    if let Some(seed) = flag {
        return Ok((seed, "flag"));
    }
    match std::env::var(SEED_ENV_VAR) {
        Ok(text) => {
            let seed = text
                .parse::<u64>()
                .map_err(|_| usage(format!("{SEED_ENV_VAR} must be a u64, got '{text}'")))?;
            Ok((seed, "env"))
        }
        Err(_) => Ok((0, "default")),
    }
}

fn domain_mode(permissive: bool) -> DomainMode {
    if permissive {
        DomainMode::Permissive
    } else {
        DomainMode::Strict
    }
}

fn require<T: Copy>(value: Option<T>, flag: &str, model: &str) -> Result<T, CliError> {
    value.ok_or_else(|| usage(format!("--model {model} requires --{flag}")))
}

fn nlos_option(params: &ModelParamArgs) -> Result<NlosOption, CliError> {
    match require(params.option, "option", "3gpp-inh-nlos")? {
        1 => Ok(NlosOption::Option1),
        _ => Ok(NlosOption::Option2),
    }
}

/// Builds the generation/evaluation model from the CLI flags, plus the
/// resolved flag string for the configuration line.
fn build_model(
    kind: ModelKind,
    params: &ModelParamArgs,
    condition: Option<CliCondition>,
) -> Result<(SynthModel, String), CliError> {
    let name = kind.flag_name();
    let labeled = |default: Condition| condition.map(Condition::from).unwrap_or(default);
    match kind {
        ModelKind::Fspl1m => Err(usage("fspl-1m cannot generate samples; use eval")),
        ModelKind::Fi => {
            let p = FiParams::new(
                require(params.intercept, "intercept", name)?,
                require(params.exponent, "exponent", name)?,
                0.0,
            );
            Ok((
                SynthModel::Fi {
                    params: p,
                    condition: labeled(Condition::Los),
                },
                format!(
                    "--intercept {} --exponent {}",
                    p.intercept_db, p.distance_exponent
                ),
            ))
        }
        ModelKind::Abg => {
            let p = AbgParams::new(
                require(params.exponent, "exponent", name)?,
                require(params.offset, "offset", name)?,
                require(params.freq_exponent, "freq-exponent", name)?,
                0.0,
            );
            Ok((
                SynthModel::Abg {
                    params: p,
                    condition: labeled(Condition::Los),
                },
                format!(
                    "--exponent {} --offset {} --freq-exponent {}",
                    p.distance_exponent, p.offset_db, p.frequency_exponent
                ),
            ))
        }
        ModelKind::Ci => {
            let p = CiParams::new(require(params.ple, "ple", name)?, 0.0);
            Ok((
                SynthModel::Ci {
                    params: p,
                    condition: labeled(Condition::Los),
                },
                format!("--ple {}", p.path_loss_exponent),
            ))
        }
        ModelKind::InhLos => Ok((
            SynthModel::ThreeGpp(ThreeGppInhSpec::los()),
            String::new(),
        )),
        ModelKind::InhNlos => {
            let option = nlos_option(params)?;
            Ok((
                SynthModel::ThreeGpp(ThreeGppInhSpec::nlos(option, !params.no_floor)),
                format!(
                    "--option {} {}",
                    if option == NlosOption::Option1 { 1 } else { 2 },
                    if params.no_floor { "--no-floor" } else { "--floor" }
                ),
            ))
        }
    }
}

fn cmd_eval(args: EvalArgs) -> Result<(), CliError> {
    let mode = domain_mode(args.permissive);
    let name = args.model.flag_name();
    let frequency = || require(args.frequency, "frequency", name);
    let distance = || require(args.distance, "distance", name);

    let (value, warning, param_flags) = match args.model {
        ModelKind::Fspl1m => (models::fspl_at_1m(frequency()?)?, None, String::new()),
        ModelKind::InhLos => {
            let e = models::inh_los_path_loss(distance()?, frequency()?, mode)?;
            (e.path_loss_db, e.domain_warning, String::new())
        }
        ModelKind::InhNlos => {
            let option = nlos_option(&args.params)?;
            let e = models::inh_nlos_path_loss(
                distance()?,
                frequency()?,
                option,
                !args.params.no_floor,
                mode,
            )?;
            let flags = format!(
                "--option {} {}",
                if option == NlosOption::Option1 { 1 } else { 2 },
                if args.params.no_floor { "--no-floor" } else { "--floor" }
            );
            (e.path_loss_db, e.domain_warning, flags)
        }
        ModelKind::Fi | ModelKind::Abg | ModelKind::Ci => {
            let (model, flags) = build_model(args.model, &args.params, None)?;
            let f = match args.model {
                ModelKind::Fi => args.frequency.unwrap_or(1.0),
                _ => frequency()?,
            };
            (model.mean_path_loss(distance()?, f, mode)?, None, flags)
        }
    };

    let mut line = format!("config: eval --model {name}");
    if let Some(d) = args.distance {
        line.push_str(&format!(" -d {d}"));
    }
    if let Some(f) = args.frequency {
        line.push_str(&format!(" -f {f}"));
    }
    if !param_flags.is_empty() {
        line.push_str(&format!(" {param_flags}"));
    }
    line.push_str(if args.permissive { " --permissive" } else { " --strict" });
    eprintln!("{line}");
    if let Some(w) = warning {
        eprintln!("warning: {w}");
    }
    println!("{value:.3}");
    Ok(())
}

fn cmd_synth(args: SynthArgs) -> Result<(), CliError> {
    let (model, param_flags) = build_model(args.model, &args.params, args.condition)?;
    let mut grid = parse_grid(&args.grid)?;
    if let Some(n) = args.samples {
        grid.count = n;
    }
    let shadow_fading = parse_sf(&args.sf)?;
    let (seed, seed_source) = resolve_seed(args.seed)?;
    let config = SynthConfig {
        model,
        frequencies_ghz: args.frequencies.clone(),
        grid,
        shadow_fading,
        seed,
        replicates_per_distance: args.replicates,
        domain_mode: domain_mode(args.permissive),
    };

    let freq_list = args
        .frequencies
        .iter()
        .map(f64::to_string)
        .collect::<Vec<_>>()
        .join(",");
    let params_part = if param_flags.is_empty() {
        String::new()
    } else {
        format!(" {param_flags}")
    };
    let mut line = format!(
        "config: synth --model {}{params_part} -f {freq_list} --grid {} --sf {} --seed {seed} --replicates {}",
        args.model.flag_name(),
        grid_flag(&grid),
        sf_flag(&shadow_fading),
        args.replicates,
    );
    if let Some(c) = args.condition {
        line.push_str(&format!(
            " --condition {}",
            Condition::from(c).to_string().to_lowercase()
        ));
    }
    if args.permissive {
        line.push_str(" --permissive");
    }
    if let Some(out) = &args.out {
        line.push_str(&format!(" --out {}", out.display()));
    }
    if seed_source == "env" {
        line.push_str(&format!(" (seed from {SEED_ENV_VAR})"));
    }
    eprintln!("{line}");

    let samples = generate_samples(&config)?;
    let mut buf = Vec::new();
    io::write_csv(&samples, &mut buf, &config.metadata_comments())?;
    match &args.out {
        Some(path) => fs::write(path, buf)?,
        None => std::io::stdout().write_all(&buf)?,
    }
    Ok(())
}

fn load_input(path: &Path, band: Option<&str>) -> Result<(SampleSet, Option<BandSet>), CliError> {
    let set = load_csv_path(path)?;
    for d in &set.diagnostics {
        eprintln!("warning: {}:{} rejected: {}", path.display(), d.line, d.message);
    }
    let band = band.map(BandSet::parse).transpose()?;
    Ok((set, band))
}

fn cmd_fit(args: FitArgs) -> Result<(), CliError> {
    let (set, band) = load_input(&args.input, args.band.as_deref())?;
    let by_condition = args.group_by.contains(&GroupDim::Condition);
    let by_frequency = args.group_by.contains(&GroupDim::Frequency);

    let model_name = match args.model {
        FitModelKind::Fi => "fi",
        FitModelKind::Abg => "abg",
        FitModelKind::Ci => "ci",
    };
    let mut line = format!(
        "config: fit --in {} --model {model_name}",
        args.input.display()
    );
    if !args.group_by.is_empty() {
        let dims: Vec<&str> = args
            .group_by
            .iter()
            .map(|d| match d {
                GroupDim::Condition => "condition",
                GroupDim::Frequency => "frequency",
            })
            .collect();
        line.push_str(&format!(" --group-by {}", dims.join(",")));
    }
    if let Some(b) = &band {
        line.push_str(&format!(" --band {}", b.name));
    }
    eprintln!("{line}");

    let groups = partition(&set, by_condition, by_frequency, band.as_ref());
    for w in &groups.warnings {
        eprintln!("warning: {w}");
    }

    let mut entries = Vec::new();
    let mut failures = Vec::new();
    for (key, samples) in &groups.groups {
        let group = key.to_string();
        let fitted = match args.model {
            FitModelKind::Fi => fit_fi(samples).map(|(p, d)| (serde_json::to_value(p), d)),
            FitModelKind::Abg => fit_abg(samples).map(|(p, d)| (serde_json::to_value(p), d)),
            FitModelKind::Ci => fit_ci(samples).map(|(p, d)| (serde_json::to_value(p), d)),
        };
        match fitted {
            Ok((params, diagnostics)) => entries.push(serde_json::json!({
                "group": group,
                "params": params?,
                "diagnostics": diagnostics,
            })),
            Err(err) => {
                failures.push(format!("group '{group}': {err}"));
                entries.push(serde_json::json!({
                    "group": group,
                    "error": err.to_string(),
                }));
            }
        }
    }
    println!("{}", serde_json::to_string_pretty(&entries)?);
    if let Some(first) = failures.first() {
        return Err(CliError::Run(first.clone().into()));
    }
    Ok(())
}

fn cmd_validate(args: ValidateArgs) -> Result<(), CliError> {
    let (set, band) = load_input(&args.input, args.band.as_deref())?;
    let source = match args.threegpp_side {
        Some(SideKind::Synthetic) => ThreeGppSource::FitOfSynthetic,
        Some(SideKind::Direct) => ThreeGppSource::DirectCoefficientRead,
        // the per-frequency tables are reproduced by synthetic fits, the
        // band tables by the raw coefficients
        None => match args.mode {
            ValidateMode::Fi => ThreeGppSource::FitOfSynthetic,
            ValidateMode::Abg => ThreeGppSource::DirectCoefficientRead,
        },
    };
    let (seed, seed_source) = resolve_seed(args.seed)?;
    let policy = ValidationPolicy {
        source,
        los_grid: parse_grid(&args.grid)?,
        nlos_grid: parse_grid(&args.nlos_grid)?,
        shadow_fading: parse_sf(&args.sf)?,
        seed,
        replicates_per_distance: args.replicates,
        apply_los_floor: !args.no_floor,
        sigma_policy: match args.threegpp_sigma {
            SigmaKind::Nominal => SigmaPolicy::NominalWhenNoiseless,
            SigmaKind::Fitted => SigmaPolicy::AlwaysFitted,
        },
    };

    let mode_name = match args.mode {
        ValidateMode::Fi => "fi",
        ValidateMode::Abg => "abg",
    };
    let format_name = match args.format {
        Format::Json => "json",
        Format::Csv => "csv",
        Format::Markdown => "markdown",
    };
    let mut line = format!(
        "config: validate --in {} --mode {mode_name} --format {format_name} --threegpp-side {} --threegpp-sigma {} --grid {} --nlos-grid {} --sf {} --seed {seed} --replicates {}{}",
        args.input.display(),
        match source {
            ThreeGppSource::FitOfSynthetic => "synthetic",
            ThreeGppSource::DirectCoefficientRead => "direct",
        },
        match args.threegpp_sigma {
            SigmaKind::Nominal => "nominal",
            SigmaKind::Fitted => "fitted",
        },
        grid_flag(&policy.los_grid),
        grid_flag(&policy.nlos_grid),
        sf_flag(&policy.shadow_fading),
        args.replicates,
        if args.no_floor { " --no-floor" } else { "" },
    );
    if let Some(b) = &band {
        line.push_str(&format!(" --band {}", b.name));
    }
    if let Some(out) = &args.out {
        line.push_str(&format!(" --out {}", out.display()));
    }
    if seed_source == "env" {
        line.push_str(&format!(" (seed from {SEED_ENV_VAR})"));
    }
    eprintln!("{line}");

    let rows = match args.mode {
        ValidateMode::Fi => {
            let filtered = match &band {
                Some(band) => {
                    let p = partition(&set, false, false, Some(band));
                    for w in &p.warnings {
                        eprintln!("warning: {w}");
                    }
                    SampleSet::from_samples(
                        p.groups.into_iter().flat_map(|(_, g)| g).collect(),
                        &set.provenance,
                    )
                }
                None => set,
            };
            fi_validation(&filtered, &policy)?
        }
        ValidateMode::Abg => {
            let band = band.ok_or_else(|| usage("--mode abg requires --band"))?;
            abg_validation(&set, &band, &policy)?
        }
    };

    let format = match args.format {
        Format::Json => ReportFormat::Json,
        Format::Csv => ReportFormat::Csv,
        Format::Markdown => ReportFormat::Markdown,
    };
    let document = render_report(&rows, format)?;
    match &args.out {
        Some(path) => fs::write(path, document)?,
        None => print!("{document}"),
    }
    Ok(())
}

fn cmd_plot_data(args: PlotDataArgs) -> Result<(), CliError> {
    let grid = parse_grid(&args.grid)?;
    let (set, _) = load_input(&args.input, None)?;
    let f = args.frequency;

    // samples at the target frequency, for the single-frequency fits
    let at_frequency: Vec<_> = set
        .samples
        .iter()
        .filter(|s| (s.frequency_ghz - f).abs() <= io::FREQUENCY_MATCH_TOLERANCE_GHZ)
        .cloned()
        .collect();
    let per_condition = |condition: Condition| -> Vec<_> {
        at_frequency
            .iter()
            .filter(|s| s.condition == condition)
            .cloned()
            .collect()
    };

    let mut models = Vec::new();
    for name in &args.models {
        match name.as_str() {
            "3gpp-los" => models.push(PlotModel {
                name: "3gpp-los".to_string(),
                model: SynthModel::ThreeGpp(ThreeGppInhSpec::los()),
                frequency_ghz: f,
            }),
            "3gpp-nlos-opt1" | "3gpp-nlos-opt2" => {
                let option = if name.ends_with('1') {
                    NlosOption::Option1
                } else {
                    NlosOption::Option2
                };
                models.push(PlotModel {
                    name: name.clone(),
                    model: SynthModel::ThreeGpp(ThreeGppInhSpec::nlos(option, true)),
                    frequency_ghz: f,
                });
            }
            "fit-fi" | "fit-ci" => {
                for condition in [Condition::Los, Condition::Nlos] {
                    let samples = per_condition(condition);
                    if samples.is_empty() {
                        continue;
                    }
                    let label = condition.to_string().to_lowercase();
                    let model = if name == "fit-fi" {
                        let (p, _) = fit_fi(&samples)?;
                        SynthModel::Fi {
                            params: p,
                            condition,
                        }
                    } else {
                        let (p, _) = fit_ci(&samples)?;
                        SynthModel::Ci {
                            params: p,
                            condition,
                        }
                    };
                    models.push(PlotModel {
                        name: format!("{name}-{label}"),
                        model,
                        frequency_ghz: f,
                    });
                }
            }
            "fit-abg" => {
                for condition in [Condition::Los, Condition::Nlos] {
                    let samples: Vec<_> = set
                        .samples
                        .iter()
                        .filter(|s| s.condition == condition)
                        .cloned()
                        .collect();
                    if samples.is_empty() {
                        continue;
                    }
                    let (p, _) = fit_abg(&samples)?;
                    models.push(PlotModel {
                        name: format!("fit-abg-{}", condition.to_string().to_lowercase()),
                        model: SynthModel::Abg {
                            params: p,
                            condition,
                        },
                        frequency_ghz: f,
                    });
                }
            }
            other => {
                return Err(usage(format!(
                    "unknown model '{other}' (expected fit-fi, fit-ci, fit-abg, 3gpp-los, 3gpp-nlos-opt1, 3gpp-nlos-opt2)"
                )))
            }
        }
    }

    eprintln!(
        "config: plot-data --in {} -f {f} --models {} --grid {} --out {}",
        args.input.display(),
        args.models.join(","),
        grid_flag(&grid),
        args.out.display()
    );

    let measured = SampleSet::from_samples(at_frequency, &set.provenance);
    let bundle = report::emit_plot_data(&measured, &models, &grid)?;
    fs::create_dir_all(&args.out)?;
    for series in &bundle.series {
        fs::write(args.out.join(format!("{}.csv", series.name)), series.to_csv())?;
    }
    fs::write(args.out.join("bundle.json"), bundle.to_json()?)?;
    println!("wrote {} series to {}", bundle.series.len(), args.out.display());
    Ok(())
}
