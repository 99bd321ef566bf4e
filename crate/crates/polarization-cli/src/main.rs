//! `polarize` — polarization analysis from the command line.
//!
//! Subcommands cover the whole pipeline: `attach` and `aggregate` turn a
//! chamber of individually positioned members into a weighted society,
//! `compute` scores a society (or, for one-dimensional data, the
//! comparison indices), `grid`, `limit` and `search` run the numerical
//! experiments, `validate` explains why a file is rejected and `table1`
//! prints the bundled reference table.
//!
//! Exit codes: 0 success, 1 domain or validation error, 2 I/O or parse
//! error, 3 usage error. Diagnostics go to the error stream; successful
//! runs write only to the chosen output. Seeded commands default to seed
//! 42 so casual runs are reproducible.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, IsTerminal, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use polarization::comparative::{esteban_ray, reynal_querol, DiscreteDistribution1D, ErParams};
use polarization::dataio::{
    self, DataError, DatasetKind, DatasetSchema, MetricSelection, ReportFormat, ReportOptions,
};
use polarization::experiments::{
    continuum_limit_estimate, convergence_series_with_cap, extremal_search_chebyshev,
    DEFAULT_GRID_CAP,
};
use polarization::grouping::{aggregate, attach_independents, AttachmentConfig, Chamber};
use polarization::society::validate_society;
use polarization::{polarization_report, Metric, Society};

const DEFAULT_SEED: u64 = 42;

#[derive(Parser)]
#[command(
    name = "polarize",
    version,
    about = "Polarization indices, legislature pipelines and grid experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute index values for a society file
    Compute(ComputeArgs),
    /// Attach independent members to unions by the nearest-neighborhood rule
    Attach(AttachArgs),
    /// Collapse a chamber into a weighted society
    Aggregate(AggregateArgs),
    /// Tabulate the "equal" grid distribution over a resolution range
    Grid(GridArgs),
    /// Monte Carlo estimate of the value the grid series converges to
    Limit(LimitArgs),
    /// Hill-climbing search for extremal Chebyshev configurations
    Search(SearchArgs),
    /// Check a society file against the validation rules
    Validate(ValidateArgs),
    /// Print the bundled per-year reference table with an ordering check
    Table1,
}

#[derive(Args)]
struct ComputeArgs {
    /// Society CSV (name,weight,x1,...,xm)
    #[arg(long)]
    input: PathBuf,
    /// Write here instead of standard output
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
    /// Which index family to compute
    #[arg(long, value_enum, default_value_t = IndexArg::P)]
    index: IndexArg,
    /// Restrict the report to one metric
    #[arg(long, value_enum, default_value_t = MetricChoiceArg::All)]
    metric: MetricChoiceArg,
    /// Include the modified (2/n-scaled) family in the report
    #[arg(long)]
    modified: bool,
    /// Treat a Chebyshev value above 1 as an error
    #[arg(long)]
    strict_bounds: bool,
    /// Min-max rescale coordinates into the unit cube before computing
    #[arg(long)]
    rescale: bool,
    /// Polarization sensitivity for the comparison indices
    #[arg(long)]
    alpha: Option<f64>,
    /// Scale constant for the comparison indices
    #[arg(long)]
    k: Option<f64>,
}

#[derive(Args)]
struct AttachArgs {
    /// Chamber CSV (id,x1,...,xm,group)
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    output: Option<PathBuf>,
    /// Nearest affiliated neighbors to consider
    #[arg(long, default_value_t = 3)]
    neighbors: usize,
    /// Neighbors from one union required to attach
    #[arg(long, default_value_t = 2)]
    quorum: usize,
    /// Vicinity radius (unbounded when omitted)
    #[arg(long)]
    radius: Option<f64>,
    #[arg(long, value_enum, default_value_t = MetricArg::Euclidean)]
    metric: MetricArg,
}

#[derive(Args)]
struct AggregateArgs {
    /// Chamber CSV (id,x1,...,xm,group)
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    output: Option<PathBuf>,
    /// Fail on leftover independents instead of clustering them
    #[arg(long)]
    no_residual: bool,
}

#[derive(Args)]
struct GridArgs {
    /// Space dimensionality m
    #[arg(long)]
    dim: usize,
    #[arg(long)]
    l_min: u32,
    #[arg(long)]
    l_max: u32,
    /// Cap on the number of groups a grid may materialize
    #[arg(long, default_value_t = DEFAULT_GRID_CAP)]
    cap: u64,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct LimitArgs {
    /// Space dimensionality m
    #[arg(long)]
    dim: usize,
    #[arg(long, value_enum)]
    metric: MetricArg,
    #[arg(long, default_value_t = 1_000_000)]
    samples: u64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SearchArgs {
    /// Space dimensionality m
    #[arg(long)]
    dim: usize,
    /// Hill-climbing proposals per start point
    #[arg(long, default_value_t = 2000)]
    iterations: u64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ValidateArgs {
    /// Society CSV (name,weight,x1,...,xm)
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value_t = polarization::DEFAULT_WEIGHT_TOL)]
    weight_tol: f64,
    #[arg(long, default_value_t = polarization::DEFAULT_COORD_TOL)]
    coord_tol: f64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MetricArg {
    Euclidean,
    Manhattan,
    Chebyshev,
}

impl From<MetricArg> for Metric {
    fn from(arg: MetricArg) -> Metric {
        match arg {
            MetricArg::Euclidean => Metric::Euclidean,
            MetricArg::Manhattan => Metric::Manhattan,
            MetricArg::Chebyshev => Metric::Chebyshev,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MetricChoiceArg {
    Euclidean,
    Manhattan,
    Chebyshev,
    All,
}

impl From<MetricChoiceArg> for MetricSelection {
    fn from(arg: MetricChoiceArg) -> MetricSelection {
        match arg {
            MetricChoiceArg::All => MetricSelection::All,
            MetricChoiceArg::Euclidean => MetricSelection::One(Metric::Euclidean),
            MetricChoiceArg::Manhattan => MetricSelection::One(Metric::Manhattan),
            MetricChoiceArg::Chebyshev => MetricSelection::One(Metric::Chebyshev),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

impl From<FormatArg> for ReportFormat {
    fn from(arg: FormatArg) -> ReportFormat {
        match arg {
            FormatArg::Json => ReportFormat::Json,
            FormatArg::Csv => ReportFormat::Csv,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum IndexArg {
    /// The multidimensional polarization index
    P,
    /// Esteban-Ray index over a one-dimensional society
    EstebanRay,
    /// Reynal-Querol index over a one-dimensional society
    ReynalQuerol,
}

struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn domain(message: impl Into<String>) -> Self {
        CliError {
            code: 1,
            message: message.into(),
        }
    }

    fn io(message: impl Into<String>) -> Self {
        CliError {
            code: 2,
            message: message.into(),
        }
    }

    fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: 3,
            message: message.into(),
        }
    }
}

impl From<polarization::Error> for CliError {
    fn from(err: polarization::Error) -> Self {
        CliError::domain(err.to_string())
    }
}

impl From<DataError> for CliError {
    fn from(err: DataError) -> Self {
        match err {
            DataError::Io(e) => CliError::io(e.to_string()),
            DataError::Parse { .. } => CliError::io(err.to_string()),
            DataError::Domain(e) => e.into(),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // help/version requests are not usage errors
            let code = if err.use_stderr() { 3 } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("{}{}", error_prefix(), err.message);
            ExitCode::from(err.code)
        }
    }
}

fn error_prefix() -> &'static str {
    let colored = std::env::var_os("NO_COLOR").is_none() && io::stderr().is_terminal();
    if colored {
        "\x1b[31merror:\x1b[0m "
    } else {
        "error: "
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Compute(args) => compute(args),
        Command::Attach(args) => attach(args),
        Command::Aggregate(args) => aggregate_cmd(args),
        Command::Grid(args) => grid(args),
        Command::Limit(args) => limit(args),
        Command::Search(args) => search(args),
        Command::Validate(args) => validate(args),
        Command::Table1 => table1(),
    }
}

fn read_input(path: &Path) -> Result<Vec<u8>, CliError> {
    fs::read(path).map_err(|e| CliError::io(format!("{}: {e}", path.display())))
}

fn write_output(output: Option<&Path>, bytes: &[u8]) -> Result<(), CliError> {
    match output {
        Some(path) => {
            fs::write(path, bytes).map_err(|e| CliError::io(format!("{}: {e}", path.display())))
        }
        None => io::stdout()
            .write_all(bytes)
            .map_err(|e| CliError::io(e.to_string())),
    }
}

/// Recovers the dataset schema from the file's header line.
fn infer_schema(bytes: &[u8], kind: DatasetKind) -> Result<DatasetSchema, CliError> {
    let text = std::str::from_utf8(bytes)
        .map_err(|_| CliError::io("input is not valid UTF-8".to_string()))?;
    let header_line = text.lines().next().unwrap_or("");
    let fields: Vec<&str> = header_line.split(',').map(str::trim).collect();
    DatasetSchema::from_header(kind, &fields).map_err(CliError::from)
}

fn load_society(path: &Path, rescale: bool) -> Result<Society, CliError> {
    let bytes = read_input(path)?;
    let schema = infer_schema(&bytes, DatasetKind::Society)?;
    if rescale {
        let society = dataio::parse_society(bytes.as_slice(), &schema)?.rescaled_to_unit_cube();
        let violations = society.validate();
        if !violations.is_empty() {
            return Err(polarization::Error::InvalidSociety(violations).into());
        }
        Ok(society)
    } else {
        Ok(dataio::read_society(bytes.as_slice(), &schema)?)
    }
}

fn load_chamber(path: &Path) -> Result<Chamber, CliError> {
    let bytes = read_input(path)?;
    let schema = infer_schema(&bytes, DatasetKind::Chamber)?;
    Ok(dataio::read_chamber(bytes.as_slice(), &schema)?)
}

fn compute(args: ComputeArgs) -> Result<(), CliError> {
    let society = load_society(&args.input, args.rescale)?;
    let rendered = match args.index {
        IndexArg::P => {
            if args.alpha.is_some() || args.k.is_some() {
                return Err(CliError::usage(
                    "--alpha and --k apply only to --index esteban-ray / reynal-querol",
                ));
            }
            let report = polarization_report(&society)?;
            if args.strict_bounds && report.values.chebyshev > 1.0 {
                return Err(CliError::domain(format!(
                    "chebyshev index {} exceeds 1 (strict bounds)",
                    report.values.chebyshev
                )));
            }
            let options = ReportOptions {
                metrics: args.metric.into(),
                include_modified: args.modified,
            };
            let mut buffer = Vec::new();
            dataio::write_report_with(&mut buffer, &report, args.format.into(), &options)?;
            buffer
        }
        IndexArg::EstebanRay | IndexArg::ReynalQuerol => {
            if args.metric != MetricChoiceArg::All || args.modified || args.strict_bounds {
                return Err(CliError::usage(
                    "--metric, --modified and --strict-bounds apply only to --index p",
                ));
            }
            comparative_index(&society, args.index, args.alpha, args.k, args.format)?
        }
    };
    write_output(args.output.as_deref(), &rendered)
}

#[derive(Serialize)]
struct ComparativeDoc {
    index: &'static str,
    alpha: f64,
    k: f64,
    n: usize,
    value: f64,
}

fn comparative_index(
    society: &Society,
    index: IndexArg,
    alpha: Option<f64>,
    k: Option<f64>,
    format: FormatArg,
) -> Result<Vec<u8>, CliError> {
    if society.dim != 1 {
        return Err(CliError::domain(format!(
            "comparison indices are one-dimensional, input has dim {}",
            society.dim
        )));
    }
    let shares: Vec<f64> = society.groups.iter().map(|g| g.weight).collect();
    let doc = match index {
        IndexArg::EstebanRay => {
            let params = ErParams::new(alpha.unwrap_or(1.0), k.unwrap_or(1.0))?;
            let levels: Vec<f64> = society
                .groups
                .iter()
                .map(|g| g.position.coords()[0])
                .collect();
            let dist = DiscreteDistribution1D::new(shares, levels)?;
            ComparativeDoc {
                index: "esteban_ray",
                alpha: params.alpha(),
                k: params.k(),
                n: society.groups.len(),
                value: esteban_ray(&dist, &params),
            }
        }
        IndexArg::ReynalQuerol => {
            let default = ErParams::reynal_querol_default();
            let params = ErParams::new(
                alpha.unwrap_or(default.alpha()),
                k.unwrap_or(default.k()),
            )?;
            ComparativeDoc {
                index: "reynal_querol",
                alpha: params.alpha(),
                k: params.k(),
                n: society.groups.len(),
                value: reynal_querol(&shares, &params)?,
            }
        }
        IndexArg::P => unreachable!("handled by the caller"),
    };
    let mut buffer = Vec::new();
    match format {
        FormatArg::Json => {
            serde_json::to_writer(&mut buffer, &doc).map_err(|e| CliError::io(e.to_string()))?;
            buffer.push(b'\n');
        }
        FormatArg::Csv => {
            let mut text = String::from("index,alpha,k,n,value\n");
            let _ = writeln!(
                text,
                "{},{},{},{},{:.6}",
                doc.index, doc.alpha, doc.k, doc.n, doc.value
            );
            buffer = text.into_bytes();
        }
    }
    Ok(buffer)
}

fn attach(args: AttachArgs) -> Result<(), CliError> {
    let chamber = load_chamber(&args.input)?;
    let config =
        AttachmentConfig::new(args.neighbors, args.quorum, args.radius, args.metric.into())?;
    let attached = attach_independents(&chamber, &config);
    let mut buffer = Vec::new();
    dataio::write_chamber(&mut buffer, &attached)?;
    write_output(args.output.as_deref(), &buffer)
}

fn aggregate_cmd(args: AggregateArgs) -> Result<(), CliError> {
    let chamber = load_chamber(&args.input)?;
    let society = aggregate(&chamber, !args.no_residual)?;
    let mut buffer = Vec::new();
    dataio::write_society(&mut buffer, &society)?;
    write_output(args.output.as_deref(), &buffer)
}

fn grid(args: GridArgs) -> Result<(), CliError> {
    let rows = convergence_series_with_cap(args.dim, args.l_min, args.l_max, args.cap)?;
    let mut buffer = Vec::new();
    dataio::write_series(&mut buffer, &rows)?;
    write_output(args.output.as_deref(), &buffer)
}

#[derive(Serialize)]
struct LimitDoc {
    dim: usize,
    metric: Metric,
    samples: u64,
    seed: u64,
    value: f64,
    std_error: f64,
}

fn limit(args: LimitArgs) -> Result<(), CliError> {
    let metric: Metric = args.metric.into();
    let estimate = continuum_limit_estimate(args.dim, metric, args.samples, args.seed);
    let doc = LimitDoc {
        dim: args.dim,
        metric,
        samples: estimate.samples,
        seed: estimate.seed,
        value: estimate.value,
        std_error: estimate.std_error,
    };
    let mut buffer = serde_json::to_vec(&doc).map_err(|e| CliError::io(e.to_string()))?;
    buffer.push(b'\n');
    write_output(args.output.as_deref(), &buffer)
}

#[derive(Serialize)]
struct SearchDoc {
    dim: usize,
    iterations: u64,
    seed: u64,
    value: f64,
    society: Society,
}

fn search(args: SearchArgs) -> Result<(), CliError> {
    if args.dim == 0 {
        return Err(CliError::domain("dimensionality must be at least 1"));
    }
    let (society, value) = extremal_search_chebyshev(args.dim, args.iterations, args.seed);
    let doc = SearchDoc {
        dim: args.dim,
        iterations: args.iterations,
        seed: args.seed,
        value,
        society,
    };
    let mut buffer = serde_json::to_vec(&doc).map_err(|e| CliError::io(e.to_string()))?;
    buffer.push(b'\n');
    write_output(args.output.as_deref(), &buffer)
}

fn validate(args: ValidateArgs) -> Result<(), CliError> {
    let bytes = read_input(&args.input)?;
    let schema = infer_schema(&bytes, DatasetKind::Society)?;
    let society = dataio::parse_society(bytes.as_slice(), &schema)?;
    let violations = validate_society(&society, args.weight_tol, args.coord_tol);
    if !violations.is_empty() {
        let mut message = format!("{} validation violation(s)", violations.len());
        for v in &violations {
            let _ = write!(message, "\n  {v}");
        }
        return Err(CliError::domain(message));
    }
    let mut out = String::from("ok\n");
    for label in society.zero_weight_groups() {
        let _ = writeln!(out, "warning: group '{label}' has zero weight");
    }
    write_output(None, out.as_bytes())
}

fn table1() -> Result<(), CliError> {
    let table = dataio::load_reference_table();
    let mut out = String::from("year,c1,c2,p_euc,p_man,p_cheb\n");
    let mut ordered = true;
    for row in &table {
        let c = row.center.coords();
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            row.year, c[0], c[1], row.p_euc, row.p_man, row.p_cheb
        );
        ordered &= row.p_cheb >= row.p_euc && row.p_euc >= row.p_man;
    }
    let _ = writeln!(
        out,
        "ordering check (p_cheb >= p_euc >= p_man): {}",
        if ordered { "PASS" } else { "FAIL" }
    );
    write_output(None, out.as_bytes())?;
    if !ordered {
        return Err(CliError::domain("reference table violates the metric ordering"));
    }
    Ok(())
}
