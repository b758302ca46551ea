//! Command-line front end. [`run`] takes the full argument vector and
//! returns the exit code with both output streams, so the binary and the
//! tests drive exactly the same code.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Map, Value};

use walklab_core::family::{Check, FamilyRegistry, VerifyBounds};
use walklab_core::graphs::{build_family, parse_edge_list, Coord, FamilySpec, Graph};
use walklab_core::oeis::{b_file, Sequence};
use walklab_core::oracle::{CounterRegistry, Query, DEFAULT_DP_LIMIT};
use walklab_core::series::{
    diff, diff_to_csv, expand_rational, f_numerator_verbatim, recover_numerator, to_csv,
    two_cycle_gf, MIN_RECOVERY_DEGREE,
};
use walklab_core::Error;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CommandResult {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CommandResult {
    fn ok(stdout: String) -> Self {
        Self {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn domain_error(e: impl std::fmt::Display) -> Self {
        Self {
            code: 1,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "walklab",
    version,
    about = "Exact counts of random walk labelings"
)]
struct Cli {
    /// Suppress progress messages on stderr.
    #[arg(long, global = true)]
    quiet: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Count labelings of one family member from its formula.
    Count(CountArgs),
    /// Count labelings of a graph read from an edge list.
    Oracle(OracleArgs),
    /// Compare formulas with each other and with the oracle; prints a JSON report.
    Verify(VerifyArgs),
    /// Expand the two-cycle generating function, or recover its numerator.
    Series(SeriesArgs),
    /// Write a b-file ("index value" per line, index from 1).
    Oeis(OeisArgs),
}

#[derive(Debug, Args)]
struct CountArgs {
    /// Print a JSON record instead of the bare count.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    family: CountFamily,
}

#[derive(Debug, Subcommand)]
enum CountFamily {
    /// Perfect m-ary tree of height h.
    Tree {
        #[arg(long)]
        h: u64,
        #[arg(long)]
        m: u64,
    },
    /// m paths of n vertices joined through their k-th vertices.
    Comb {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u64,
    },
    /// C_2 x C_n.
    Torus {
        #[arg(long)]
        n: u64,
    },
    /// Three paths joined at both ends.
    Twocycles {
        #[arg(long)]
        a1: u64,
        #[arg(long)]
        a2: u64,
        #[arg(long)]
        a3: u64,
    },
}

impl CountFamily {
    fn name_and_params(&self) -> (&'static str, Vec<u64>) {
        match *self {
            CountFamily::Tree { h, m } => ("tree", vec![h, m]),
            CountFamily::Comb { m, n, k } => ("comb", vec![m, n, k]),
            CountFamily::Torus { n } => ("torus", vec![n]),
            CountFamily::Twocycles { a1, a2, a3 } => ("twocycles", vec![a1, a2, a3]),
        }
    }
}

#[derive(Debug, Args)]
struct OracleArgs {
    /// Edge list: vertex count on the first line, then one "u v" per line.
    #[arg(long, required_unless_present = "family", conflicts_with = "family")]
    input: Option<PathBuf>,

    /// Build a family member instead, e.g. "comb:m=2,n=3,k=2"; enables coordinates
    /// such as "(1,2)", "depth:1:2", "left-junction".
    #[arg(long)]
    family: Option<String>,

    #[arg(long, default_value = "dp")]
    alg: String,

    /// Count only labelings starting at this vertex.
    #[arg(long, conflicts_with = "completions")]
    from: Option<String>,

    /// Count completions of this labeled set: indices separated by commas,
    /// or coordinates separated by semicolons.
    #[arg(long)]
    completions: Option<String>,

    /// Require the first vertex to be labeled before the second ("u,v").
    #[arg(long)]
    before: Option<String>,

    /// Largest graph the subset DP accepts.
    #[arg(long, default_value_t = DEFAULT_DP_LIMIT)]
    dp_limit: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyChoice {
    Tree,
    Comb,
    Torus,
    Twocycles,
    All,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    family: FamilyChoice,

    #[arg(long)]
    max_vertices: Option<usize>,

    #[arg(long)]
    max_detail_vertices: Option<usize>,

    #[arg(long)]
    max_height: Option<u64>,

    #[arg(long)]
    max_arity: Option<u64>,

    #[arg(long)]
    max_n: Option<u64>,

    /// List only failing checks in the report.
    #[arg(long)]
    failures_only: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
}

#[derive(Debug, Args)]
struct SeriesArgs {
    /// Total degree bound.
    #[arg(long)]
    degree: Option<u32>,

    #[arg(long, value_enum, default_value = "csv")]
    format: TableFormat,

    /// Print the numerator recovered from direct counts instead of the expansion.
    #[arg(long, conflicts_with = "diff")]
    recover: bool,

    /// Print the coefficients where the verbatim transcription of the
    /// numerator differs from the recovered one.
    #[arg(long)]
    diff: bool,
}

#[derive(Debug, Args)]
struct OeisArgs {
    /// tree-root or comb-row
    sequence: String,

    #[arg(long)]
    count: usize,
}

/// Runs one invocation. `argv[0]` is the program name.
pub fn run<I, S>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                CommandResult {
                    code: 2,
                    stdout: String::new(),
                    stderr: rendered,
                }
            } else {
                CommandResult::ok(rendered)
            };
        }
    };
    let quiet = cli.quiet;
    let outcome = match cli.command {
        Command::Count(args) => count(args),
        Command::Oracle(args) => oracle(args),
        Command::Verify(args) => return verify(args, quiet),
        Command::Series(args) => series(args),
        Command::Oeis(args) => oeis(args),
    };
    match outcome {
        Ok(stdout) => CommandResult::ok(stdout),
        Err(CliError::Usage(msg)) => CommandResult {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
        Err(CliError::Domain(e)) => CommandResult::domain_error(e),
    }
}

enum CliError {
    Usage(String),
    Domain(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Domain(e.to_string())
    }
}

type CliResult = std::result::Result<String, CliError>;

fn count(args: CountArgs) -> CliResult {
    let registry = FamilyRegistry::default();
    let (name, params) = args.family.name_and_params();
    let family = registry.get(name)?;
    family.spec(&params)?;
    let value = family.count(&params)?;
    if !args.json {
        return Ok(format!("{value}\n"));
    }
    let mut named = Map::new();
    for (k, v) in family.param_names().iter().zip(&params) {
        named.insert(k.to_string(), json!(v));
    }
    let record = json!({
        "family": name,
        "params": Value::Object(named),
        "count": value.to_string(),
    });
    Ok(format!("{record}\n"))
}

fn parse_vertex(g: &Graph, text: &str) -> std::result::Result<usize, CliError> {
    let coord: Coord = text.parse()?;
    Ok(g.vertex_at(coord)?)
}

fn parse_vertex_list(g: &Graph, spec: &str) -> std::result::Result<Vec<usize>, CliError> {
    let parts: Vec<&str> = if spec.contains(';') || spec.contains('(') {
        spec.split(';').collect()
    } else {
        spec.split([',', ' ']).collect()
    };
    parts
        .into_iter()
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| parse_vertex(g, p))
        .collect()
}

fn oracle(args: OracleArgs) -> CliResult {
    let g = match (&args.input, &args.family) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Domain(format!("cannot read {}: {e}", path.display())))?;
            parse_edge_list(&text)?
        }
        (None, Some(spec)) => build_family(spec.parse::<FamilySpec>()?)?,
        (None, None) => unreachable!("clap requires --input or --family"),
    };
    let registry = CounterRegistry::with_dp_limit(args.dp_limit);
    let counter = registry.get(&args.alg)?;
    let mut query = match (&args.from, &args.completions) {
        (Some(v), _) => Query::from(parse_vertex(&g, v)?),
        (None, Some(spec)) => Query::completions(parse_vertex_list(&g, spec)?),
        (None, None) => Query::all(),
    };
    if let Some(pair) = &args.before {
        let vs = parse_vertex_list(&g, pair)?;
        let [u, v] = vs[..] else {
            return Err(CliError::Usage(format!(
                "--before needs two vertices, got `{pair}`"
            )));
        };
        query = query.with_before(u, v);
    }
    Ok(format!("{}\n", counter.count(&g, &query)?))
}

#[derive(Serialize)]
struct FamilySummary {
    family: &'static str,
    checks: usize,
    failed: usize,
}

#[derive(Serialize)]
struct VerifyReport<'a> {
    passed: bool,
    bounds: VerifyBounds,
    families: Vec<FamilySummary>,
    checks: Vec<&'a Check>,
}

fn verify(args: VerifyArgs, quiet: bool) -> CommandResult {
    let defaults = VerifyBounds::default();
    let bounds = VerifyBounds {
        max_vertices: args.max_vertices.unwrap_or(defaults.max_vertices),
        max_detail_vertices: args
            .max_detail_vertices
            .unwrap_or(defaults.max_detail_vertices),
        max_height: args.max_height.unwrap_or(defaults.max_height),
        max_arity: args.max_arity.unwrap_or(defaults.max_arity),
        max_n: args.max_n.unwrap_or(defaults.max_n),
    };
    let registry = FamilyRegistry::default();
    let names: Vec<&'static str> = match args.family {
        FamilyChoice::All => registry.names().collect(),
        FamilyChoice::Tree => vec!["tree"],
        FamilyChoice::Comb => vec!["comb"],
        FamilyChoice::Torus => vec!["torus"],
        FamilyChoice::Twocycles => vec!["twocycles"],
    };
    let mut stderr = String::new();
    let mut all = Vec::new();
    let mut families = Vec::new();
    for name in names {
        let family = match registry.get(name) {
            Ok(f) => f,
            Err(e) => return CommandResult::domain_error(e),
        };
        let checks = match family.verify(&bounds) {
            Ok(c) => c,
            Err(e) => return CommandResult::domain_error(e),
        };
        let failed = checks.iter().filter(|c| !c.passed).count();
        if !quiet {
            let _ = writeln!(stderr, "{name}: {} checks, {failed} failed", checks.len());
        }
        families.push(FamilySummary {
            family: name,
            checks: checks.len(),
            failed,
        });
        all.extend(checks);
    }
    let passed = all.iter().all(|c| c.passed);
    let report = VerifyReport {
        passed,
        bounds,
        families,
        checks: all
            .iter()
            .filter(|c| !args.failures_only || !c.passed)
            .collect(),
    };
    let body = serde_json::to_string_pretty(&report).expect("report serializes");
    CommandResult {
        code: if passed { 0 } else { 1 },
        stdout: body + "\n",
        stderr,
    }
}

fn series(args: SeriesArgs) -> CliResult {
    if args.recover || args.diff {
        let d = args.degree.unwrap_or(MIN_RECOVERY_DEGREE);
        let recovered = recover_numerator(d)?;
        if args.recover {
            return Ok(format!("{recovered}\n"));
        }
        return Ok(diff_to_csv(
            &diff(&f_numerator_verbatim(), &recovered),
            "verbatim",
            "recovered",
        ));
    }
    let d = args
        .degree
        .ok_or_else(|| CliError::Usage("series needs --degree".into()))?;
    let expansion = expand_rational(&two_cycle_gf(), d)?;
    Ok(match args.format {
        TableFormat::Csv => to_csv(&expansion),
        TableFormat::Json => {
            let rows: Vec<Value> = expansion
                .terms()
                .into_iter()
                .map(|(e, c)| json!({"a1": e[0], "a2": e[1], "a3": e[2], "coefficient": c.to_string()}))
                .collect();
            format!("{}\n", Value::Array(rows))
        }
    })
}

fn oeis(args: OeisArgs) -> CliResult {
    let seq: Sequence = args
        .sequence
        .parse()
        .map_err(|e: Error| CliError::Usage(e.to_string()))?;
    Ok(b_file(&seq.terms(args.count)?))
}
