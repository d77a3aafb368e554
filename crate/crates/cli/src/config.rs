//! Command-line parsing into a validated [`RunConfig`].

use std::ffi::OsString;
use std::fmt;
use std::ops::RangeInclusive;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use zeta_workbench::constants::{SequenceTag, StieltjesRoute, ZetaDerivRoute, STRUCTURE_CHECKS};
use zeta_workbench::identities::catalog_ids;
use zeta_workbench::PrecisionConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Human,
    Json,
    Csv,
}

/// Which checks a verification run covers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Suite {
    /// The selector as given, used as the report's suite name.
    pub name: String,
    /// Catalog ids and structure-check ids, in the order given.
    pub ids: Vec<String>,
}

impl Suite {
    /// `all`, `catalog`, `structure`, or a comma-separated list of ids.
    /// Unknown ids are rejected here, before anything is computed.
    pub fn parse(selector: &str) -> Result<Suite, String> {
        let catalog: Vec<String> = catalog_ids().into_iter().map(String::from).collect();
        let structure: Vec<String> = STRUCTURE_CHECKS.iter().map(|s| s.to_string()).collect();
        let mut ids = Vec::new();
        for part in selector.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            match part {
                "all" => {
                    ids.extend(catalog.iter().cloned());
                    ids.extend(structure.iter().cloned());
                }
                "catalog" => ids.extend(catalog.iter().cloned()),
                "structure" => ids.extend(structure.iter().cloned()),
                id if catalog.iter().any(|c| c == id) || structure.iter().any(|c| c == id) => ids.push(id.to_string()),
                id => return Err(format!("unknown check id `{id}`")),
            }
        }
        if ids.is_empty() {
            return Err("empty suite".into());
        }
        let mut seen = std::collections::HashSet::new();
        ids.retain(|id| seen.insert(id.clone()));
        Ok(Suite {
            name: selector.to_string(),
            ids,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RouteChoice {
    /// The sequence's reference route.
    Default,
    One(String),
    /// Every formula route (the oracle excluded).
    All,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComputeRequest {
    pub tag: SequenceTag,
    pub indices: RangeInclusive<usize>,
    pub route: RouteChoice,
}

impl ComputeRequest {
    /// Route ids to tabulate, `None` meaning the sequence default.
    pub fn routes(&self) -> Vec<Option<String>> {
        match &self.route {
            RouteChoice::Default => vec![None],
            RouteChoice::One(r) => vec![Some(r.clone())],
            RouteChoice::All => match self.tag {
                SequenceTag::Stieltjes => StieltjesRoute::ALL
                    .iter()
                    .filter(|r| **r != StieltjesRoute::Oracle)
                    .map(|r| Some(r.id().to_string()))
                    .collect(),
                SequenceTag::ZetaDeriv0 => ZetaDerivRoute::FORMULAS.iter().map(|r| Some(r.id().to_string())).collect(),
                _ => vec![None],
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Command {
    Compute(ComputeRequest),
    Verify(Suite),
    /// Like verify, but the exit status only reflects whether the report
    /// was produced.
    Report(Suite),
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Command::Compute(_) => "compute",
            Command::Verify(_) => "verify",
            Command::Report(_) => "report",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub tol: f64,
    pub precision: PrecisionConfig,
    pub output: OutputFormat,
    pub parallelism: usize,
    pub timeout: Duration,
    /// Report elapsed times; off makes reports byte-reproducible.
    pub timing: bool,
}

impl RunConfig {
    pub fn new(command: Command) -> RunConfig {
        let output = match command {
            Command::Report(_) => OutputFormat::Json,
            _ => OutputFormat::Human,
        };
        RunConfig {
            command,
            tol: DEFAULT_TOL,
            precision: PrecisionConfig::default(),
            output,
            parallelism: default_parallelism(),
            timeout: Duration::from_secs(DEFAULT_TIMEOUT_S),
            timing: true,
        }
    }

    pub fn validate(&self) -> Result<(), String> {
        self.precision.validate().map_err(|e| e.to_string())?;
        let floor = self.precision.min_tol();
        if !(self.tol.is_finite() && self.tol >= floor) {
            return Err(format!(
                "--tol must be at least {floor:e} at {} digits, got {:e}",
                self.precision.working_digits, self.tol
            ));
        }
        if self.parallelism == 0 {
            return Err("--parallelism must be positive".into());
        }
        if self.timeout.is_zero() {
            return Err("--timeout-s must be positive".into());
        }
        Ok(())
    }
}

pub const DEFAULT_TOL: f64 = 1e-8;
pub const DEFAULT_TIMEOUT_S: u64 = 120;

fn default_parallelism() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

#[derive(Debug, Parser)]
#[command(name = "zwb", version, about = "Zeta-derivative and Stieltjes-constant workbench")]
struct Cli {
    /// Working precision in significant decimal digits.
    #[arg(long, global = true, env = "ZETA_DIGITS")]
    digits: Option<u32>,
    #[arg(long, global = true, value_enum)]
    output: Option<OutputFormat>,
    /// Worker threads for verification.
    #[arg(long, global = true)]
    parallelism: Option<usize>,
    /// Per-check time limit; a check that runs over becomes a failed row.
    #[arg(long = "timeout-s", global = true)]
    timeout_s: Option<f64>,
    /// Report elapsed_ms as 0 so that repeated runs are byte-identical.
    #[arg(long, global = true)]
    no_timing: bool,
    #[command(subcommand)]
    command: Sub,
}

#[derive(Debug, Subcommand)]
enum Sub {
    /// Tabulate a constant sequence: stieltjes (γ), eta, sigma, lehmer_b, d_n, zeta_deriv0.
    Compute {
        quantity: String,
        /// Index or inclusive range, e.g. 3 or 0..5.
        #[arg(long, default_value = "0..5")]
        n: String,
        /// Route id, or `all` for every formula route (γ and ζ⁽ⁿ⁾(0) only).
        #[arg(long)]
        route: Option<String>,
    },
    /// Evaluate identities and structure checks; exit 1 if any fails.
    Verify(SuiteArgs),
    /// Write the verification report (JSON by default) whatever the outcome.
    Report(SuiteArgs),
}

#[derive(Debug, clap::Args)]
struct SuiteArgs {
    /// `all`, `catalog`, `structure`, or comma-separated check ids.
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
}

/// Inclusive index range: `N`, `A..B` or `A..=B`.
pub fn parse_indices(s: &str) -> Result<RangeInclusive<usize>, String> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("bad index `{t}` in --n {s}"));
    let range = match s.split_once("..") {
        None => {
            let n = num(s)?;
            n..=n
        }
        Some((a, b)) => num(a)?..=num(b.strip_prefix('=').unwrap_or(b))?,
    };
    if range.is_empty() {
        return Err(format!("empty index range {s}"));
    }
    Ok(range)
}

/// What parsing produced: a configuration, or text (help, version) to print
/// and exit successfully.
#[derive(Debug)]
pub enum Parsed {
    Run(RunConfig),
    Print(String),
}

/// Parses arguments (program name first). `Err` carries a usage message.
pub fn parse_args<I, T>(args: I) -> Result<Parsed, String>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Ok(Parsed::Print(e.to_string())),
                _ => Err(e.to_string()),
            };
        }
    };
    let (command, tol) = match cli.command {
        Sub::Compute { quantity, n, route } => {
            let tag: SequenceTag = quantity.parse().map_err(|_| format!("unknown sequence `{quantity}`"))?;
            let route = match route.as_deref() {
                None => RouteChoice::Default,
                Some("all") => RouteChoice::All,
                Some(r) => RouteChoice::One(r.to_string()),
            };
            let req = ComputeRequest {
                tag,
                indices: parse_indices(&n)?,
                route,
            };
            (Command::Compute(req), DEFAULT_TOL)
        }
        Sub::Verify(a) => (Command::Verify(Suite::parse(&a.suite)?), a.tol),
        Sub::Report(a) => (Command::Report(Suite::parse(&a.suite)?), a.tol),
    };
    let mut cfg = RunConfig::new(command);
    cfg.tol = tol;
    if let Some(d) = cli.digits {
        cfg.precision = PrecisionConfig {
            working_digits: d,
            ..cfg.precision
        };
    }
    if let Some(o) = cli.output {
        cfg.output = o;
    }
    if let Some(p) = cli.parallelism {
        cfg.parallelism = p;
    }
    if let Some(t) = cli.timeout_s {
        if !(t.is_finite() && t > 0.0) {
            return Err(format!("--timeout-s must be positive, got {t}"));
        }
        cfg.timeout = Duration::from_secs_f64(t);
    }
    cfg.timing = !cli.no_timing;
    cfg.validate()?;
    Ok(Parsed::Run(cfg))
}
