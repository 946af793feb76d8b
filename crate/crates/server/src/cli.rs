//! Command-line dispatch. [`run`] takes the arguments and output streams so
//! tests can drive it in-process.
//!
//! Exit codes: 0 success, 1 a property check found a violation, 2 invalid
//! input, 3 I/O failure.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use ndagg::format;
use ndagg::mcgdm::{problem_from_csv, DecisionProblem, Edit};
use ndagg::ndim_agg::NDimAggregationSpec;
use ndagg::sampling::{DEFAULT_SAMPLES, DEFAULT_SEED};
use serde_json::Value;

use crate::api::{self, ServiceConfig, DEFAULT_PORT};
use crate::compute::{self, to_value, CheckSuite, ClassifyReport, Failure, Outcome};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "ndagg", version, about = "Aggregation and group decision making on n-dimensional intervals")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json, global = true)]
    pub format: OutputFormat,
    /// Seed for every sampled check.
    #[arg(long, env = "NDAGG_SEED", default_value_t = DEFAULT_SEED, global = true)]
    pub seed: u64,
    /// Samples per sampled law.
    #[arg(long, default_value_t = DEFAULT_SAMPLES, global = true)]
    pub samples: usize,
    /// Write the report here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Table,
}

/// Where a decision problem comes from. `--csv` files are assembled into a
/// cube (expert labels from the file stems); the remaining flags override
/// the corresponding fields.
#[derive(Debug, Args)]
pub struct ProblemInput {
    #[arg(long)]
    pub problem: Option<PathBuf>,
    /// One expert matrix per file, in expert order.
    #[arg(long = "csv")]
    pub csv: Vec<PathBuf>,
    /// Comma-separated criterion weights.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub weights: Option<Vec<f64>>,
    /// Order spec file.
    #[arg(long)]
    pub order: Option<PathBuf>,
    /// Aggregator spec file.
    #[arg(long)]
    pub aggregator: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Scores and ranking.
    Rank(ProblemInput),
    /// Scores only.
    Score(ProblemInput),
    /// The collective matrix.
    Collective(ProblemInput),
    /// Full validation of a problem.
    Validate(ProblemInput),
    /// Ranking diff after edits such as `expert=2,alt=4,crit=3,value=0.1`.
    Sensitivity {
        #[command(flatten)]
        input: ProblemInput,
        #[arg(long = "edit", required = true)]
        edits: Vec<String>,
    },
    /// Admissibility and compatibility with the semi-vector operations.
    CheckOrder {
        #[arg(long)]
        order: PathBuf,
    },
    /// Semifield and semi-vector laws on `L_n`, plus SV8/SV9 for an order.
    CheckAxioms {
        #[arg(long, default_value_t = 3)]
        dim: usize,
        #[arg(long)]
        order: Option<PathBuf>,
    },
    /// Classification of an n-dimensional aggregation under an order.
    Classify {
        #[arg(long = "agg")]
        aggregator: PathBuf,
        #[arg(long)]
        order: PathBuf,
        /// Number of arguments, required for `lift` without weights.
        #[arg(long)]
        arity: Option<usize>,
    },
    /// Run the HTTP service on 127.0.0.1.
    Serve {
        #[arg(long, env = "NDAGG_PORT", default_value_t = DEFAULT_PORT)]
        port: u16,
        #[arg(long, env = "NDAGG_DATA_DIR", default_value = "ndagg-data")]
        data_dir: PathBuf,
        /// Browser origin allowed to call the service; `*` for any.
        #[arg(long = "allow-origin", env = "NDAGG_ALLOW_ORIGINS", value_delimiter = ',')]
        allow_origins: Vec<String>,
    },
}

fn read_text(path: &Path) -> Outcome<String> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn read_json(path: &Path) -> Outcome<Value> {
    let text = read_text(path)?;
    serde_json::from_str(&text)
        .map_err(|e| Failure::Core(ndagg::Error::validation(path.display().to_string(), e.to_string())))
}

fn load_problem(input: &ProblemInput) -> Outcome<DecisionProblem> {
    let mut problem = match (&input.problem, input.csv.is_empty()) {
        (Some(path), true) => compute::parse_problem(read_json(path)?)?,
        (problem_path, false) => {
            let files = input
                .csv
                .iter()
                .map(|p| {
                    let label = p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
                    Ok((label, read_text(p)?))
                })
                .collect::<Outcome<Vec<_>>>()?;
            let mut assembled = problem_from_csv(&files)?;
            if let Some(path) = problem_path {
                let base = compute::parse_problem(read_json(path)?)?;
                assembled.weights = base.weights;
                assembled.order = base.order;
                assembled.aggregator = base.aggregator;
            }
            assembled
        }
        (None, true) => {
            return Err(Failure::Core(ndagg::Error::validation("problem", "pass --problem or at least one --csv")));
        }
    };
    if let Some(w) = &input.weights {
        problem.weights = Some(w.clone());
    }
    if let Some(path) = &input.order {
        problem.order = Some(read_json(path)?);
    }
    if let Some(path) = &input.aggregator {
        problem.aggregator = Some(read_json(path)?);
    }
    compute::guard_size(&problem)?;
    Ok(problem)
}

fn json_text(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("values serialize") + "\n"
}

fn suite_table(suite: &CheckSuite) -> String {
    format!("{}\nseed {}, {} samples per law\n\n{}", suite.subject, suite.seed, suite.samples, format::reports(&suite.reports))
}

fn classify_table(report: &ClassifyReport) -> String {
    let c = &report.classification;
    let rows = [
        &c.boundary,
        &c.monotone,
        &c.conjunctive,
        &c.disjunctive,
        &c.average,
        &c.idempotent,
        &c.strict,
        &c.internal,
        &c.symmetric,
    ];
    let mut out = format!("{} under {}\n\n", c.function, to_value(&c.order));
    out.push_str(&format::reports(&rows.into_iter().cloned().collect::<Vec<_>>()));
    out.push_str(&format!("\nmixed: {}\n", c.mixed));
    out.push_str(&format!("idempotent iff average: {}\n", report.idempotent_iff_average.biconditional.holds));
    out
}

/// A rendered report and whether its checks all held.
struct Rendered {
    text: String,
    holds: bool,
}

fn execute(cli: &Cli) -> Outcome<Rendered> {
    let table = cli.format == OutputFormat::Table;
    let done = |text: String| Ok(Rendered { text, holds: true });
    match &cli.command {
        Command::Rank(input) => {
            let problem = load_problem(input)?;
            let report = compute::rank(&problem)?;
            done(if table { format::rank_report(&report) } else { json_text(&to_value(&report)) })
        }
        Command::Score(input) => {
            let problem = load_problem(input)?;
            if table {
                let report = compute::rank(&problem)?;
                let rows: Vec<Vec<String>> =
                    report.scores.iter().map(|s| vec![s.alternative.clone(), format::interval(&s.score)]).collect();
                done(format::table(&["alternative".into(), "score".into()], &rows))
            } else {
                done(json_text(&compute::score(&problem)?))
            }
        }
        Command::Collective(input) => {
            let problem = load_problem(input)?;
            let entries = compute::collective(&problem)?;
            if table {
                let matrix = ndagg::mcgdm::CollectiveMatrix { entries };
                done(format::collective_table(&matrix, &problem.alternatives, &problem.criteria))
            } else {
                done(json_text(&to_value(&entries)))
            }
        }
        Command::Validate(input) => {
            let problem = load_problem(input)?;
            let v = compute::validate(&problem)?;
            done(if table {
                format!(
                    "valid: {} alternatives, {} criteria, {} experts\nfingerprint {}\n",
                    v["alternatives"], v["criteria"], v["experts"], v["fingerprint"].as_str().unwrap_or_default()
                )
            } else {
                json_text(&v)
            })
        }
        Command::Sensitivity { input, edits } => {
            let problem = load_problem(input)?;
            let edits = edits.iter().map(|e| Edit::parse(e)).collect::<ndagg::Result<Vec<_>>>()?;
            let report = compute::sensitivity(&problem, &edits)?;
            done(if table { format::sensitivity(&report) } else { json_text(&to_value(&report)) })
        }
        Command::CheckOrder { order } => {
            let order = compute::parse_order(read_json(order)?)?;
            let suite = compute::check_order(&order, cli.seed, cli.samples)?;
            Ok(Rendered {
                holds: suite.holds,
                text: if table { suite_table(&suite) } else { json_text(&to_value(&suite)) },
            })
        }
        Command::CheckAxioms { dim, order } => {
            let order = order.as_deref().map(|p| compute::parse_order(read_json(p)?)).transpose()?;
            let suite = compute::check_axioms(*dim, order, cli.seed, cli.samples)?;
            Ok(Rendered {
                holds: suite.holds,
                text: if table { suite_table(&suite) } else { json_text(&to_value(&suite)) },
            })
        }
        Command::Classify { aggregator, order, arity } => {
            let spec: NDimAggregationSpec = serde_json::from_value(read_json(aggregator)?)
                .map_err(|e| Failure::Core(ndagg::Error::validation("aggregator", e.to_string())))?;
            let order = compute::parse_order(read_json(order)?)?;
            let report = compute::classify(&spec, &order, *arity, cli.seed, cli.samples)?;
            done(if table { classify_table(&report) } else { json_text(&to_value(&report)) })
        }
        Command::Serve { .. } => unreachable!("serve is dispatched before execute"),
    }
}

fn serve(port: u16, data_dir: PathBuf, allow_origins: Vec<String>, err: &mut dyn Write) -> i32 {
    let mut config = ServiceConfig {
        data_dir,
        ..ServiceConfig::default()
    };
    if !allow_origins.is_empty() {
        config.allowed_origins = allow_origins;
    }
    let runtime = match tokio::runtime::Runtime::new() {
        Ok(rt) => rt,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_IO;
        }
    };
    match runtime.block_on(api::serve(port, config)) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_IO
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(rendered.as_bytes()) } else { out.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    if let Command::Serve { port, data_dir, allow_origins } = cli.command {
        return serve(port, data_dir, allow_origins, err);
    }
    match execute(&cli) {
        Ok(rendered) => {
            let written = match &cli.output {
                Some(path) => std::fs::write(path, &rendered.text),
                None => out.write_all(rendered.text.as_bytes()),
            };
            if let Err(e) = written {
                let _ = writeln!(err, "error: {e}");
                return EXIT_IO;
            }
            if rendered.holds {
                EXIT_OK
            } else {
                EXIT_VIOLATION
            }
        }
        Err(failure) => {
            let _ = writeln!(err, "error: {failure}");
            match failure {
                Failure::Core(_) => EXIT_INVALID,
                Failure::NotFound(_) | Failure::Io(_) => EXIT_IO,
            }
        }
    }
}
