//! `rsdkit` command-line tool. Every invocation prints one JSON envelope on
//! stdout; exit code 0 means ok, 1 a domain error, 2 a usage or parse error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use rsdkit::constructions::{
    arithmetic_progression, base_power, delta_set_with_bounds, extend, lemma1_weak_hypothesis,
    theorem1_witness, verify_lemma, BasePowerParams, ConstructionRecipe, LemmaId, RecipeKind,
    SearchBounds,
};
use rsdkit::enumeration::{
    count_classes_with_budget, profile_enumeration, search_delta_with_budget, EnumParams,
    EnumerationReport, Predicate, DEFAULT_BUDGET, DEFAULT_SEARCH_BUDGET,
    DEFAULT_SEARCH_MAX_DIAMETER, DEFAULT_SEARCH_MAX_K,
};
use rsdkit::{analyze, parse_set, AnalysisReport, Error, IntSet};
use serde::Serialize;
use serde_json::{json, Value};

const BUDGET_ENV: &str = "RSDKIT_BUDGET";

#[derive(Parser, Serialize)]
#[command(
    name = "rsdkit",
    version,
    about = "Sumset and difference-set analysis for integer sets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Serialize)]
#[serde(rename_all = "snake_case")]
enum Command {
    /// Sizes of A+A, A∔A and A−A.
    Analyze(AnalyzeArgs),
    /// Build a verified set.
    #[command(subcommand)]
    Construct(Construct),
    /// Count affine classes of k-sets of diameter at most n.
    Enumerate(EnumerateArgs),
    /// Smallest-diameter set with Δ = −x.
    Search(SearchArgs),
    /// Seeded random checks of a construction identity.
    Verify(VerifyArgs),
    /// Enumeration throughput at 1, 2 and all threads.
    Profile(ProfileArgs),
}

#[derive(Clone, Copy, ValueEnum, Serialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Serialize)]
struct AnalyzeArgs {
    /// Set literal such as `0,2,3` or `{0,2,3}`.
    #[arg(
        long,
        conflicts_with = "set_file",
        required_unless_present = "set_file",
        allow_hyphen_values = true
    )]
    set: Option<String>,
    /// One literal per line; `#` starts a comment.
    #[arg(long)]
    set_file: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Subcommand, Serialize)]
#[serde(rename_all = "snake_case")]
enum Construct {
    /// {start + i·step : 0 ≤ i < k}.
    Ap {
        #[arg(long)]
        k: u32,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
        start: i64,
        #[arg(long, default_value_t = 1)]
        step: i64,
    },
    /// A ∪ {b} for b > 2·max(A).
    Extend {
        #[arg(long, allow_hyphen_values = true)]
        set: String,
        #[arg(long, allow_hyphen_values = true)]
        b: i64,
    },
    /// Base-m digit set with n digits from A.
    Power {
        #[arg(long, allow_hyphen_values = true)]
        set: String,
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
        #[arg(long)]
        n: u32,
    },
    /// A set with Δ = −x.
    Delta {
        #[arg(long, allow_hyphen_values = true)]
        x: i64,
        #[arg(long, default_value_t = DEFAULT_SEARCH_MAX_DIAMETER)]
        max_diameter: u32,
        #[arg(long, default_value_t = DEFAULT_SEARCH_MAX_K)]
        max_k: u32,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long, default_value_t = 0)]
        threads: u32,
    },
    /// RSD sets of size |A|ⁿ + 1 from an RSD seed.
    Theorem1 {
        #[arg(long, allow_hyphen_values = true)]
        set: String,
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 3)]
        count: usize,
    },
    /// Recompute a set from a recipe emitted earlier.
    Replay {
        /// Recipe JSON.
        #[arg(
            long,
            conflicts_with = "recipe_file",
            required_unless_present = "recipe_file"
        )]
        recipe: Option<String>,
        #[arg(long)]
        recipe_file: Option<PathBuf>,
    },
}

#[derive(Args, Serialize)]
struct EnumerateArgs {
    #[arg(long)]
    k: u32,
    #[arg(long)]
    n: u32,
    /// sd, rsd, all or delta=<x>.
    #[arg(long, default_value = "rsd", allow_hyphen_values = true)]
    predicate: String,
    /// Include the canonical representatives.
    #[arg(long)]
    list: bool,
    /// 0 means all cores.
    #[arg(long, default_value_t = 0)]
    threads: u32,
    #[arg(long, default_value_t = 64)]
    shards: u32,
    /// Candidate sets; defaults to RSDKIT_BUDGET or 2e9.
    #[arg(long)]
    budget: Option<u64>,
    /// Also write representatives to this file, one per line.
    #[arg(long, requires = "list")]
    witness_out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args, Serialize)]
struct SearchArgs {
    #[arg(long, allow_hyphen_values = true)]
    x: i64,
    #[arg(long, default_value_t = DEFAULT_SEARCH_MAX_DIAMETER)]
    max_diameter: u32,
    #[arg(long, default_value_t = DEFAULT_SEARCH_MAX_K)]
    max_k: u32,
    /// Search nodes to visit.
    #[arg(long, default_value_t = DEFAULT_SEARCH_BUDGET)]
    budget: u64,
    #[arg(long, default_value_t = 0)]
    threads: u32,
}

#[derive(Args, Serialize)]
struct VerifyArgs {
    /// lemma1, lemma3, ap_identity or theorem2.
    #[arg(long)]
    lemma: String,
    #[arg(long, default_value_t = 100)]
    trials: u64,
    #[arg(long)]
    seed: u64,
    /// For lemma1, also sample b under the weaker hypothesis.
    #[arg(long)]
    diagnostic: bool,
    #[arg(long, default_value_t = 0)]
    threads: u32,
}

#[derive(Args, Serialize)]
struct ProfileArgs {
    #[arg(long)]
    k: u32,
    #[arg(long)]
    n: u32,
    #[arg(long, default_value = "rsd", allow_hyphen_values = true)]
    predicate: String,
    #[arg(long, default_value_t = 64)]
    shards: u32,
}

#[derive(Serialize)]
#[serde(rename_all = "snake_case")]
enum Status {
    Ok,
    Error,
}

#[derive(Serialize)]
struct OutputEnvelope {
    command: String,
    inputs: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    result: Option<Value>,
    status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    error_detail: Option<String>,
}

struct Failure {
    code: u8,
    detail: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::MalformedElement { .. } | Error::DuplicateElement { .. } | Error::Recipe(_) => 2,
            _ => 1,
        };
        Failure {
            code,
            detail: e.to_string(),
        }
    }
}

fn usage(detail: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        detail: detail.into(),
    }
}

fn domain(detail: impl Into<String>) -> Failure {
    Failure {
        code: 1,
        detail: detail.into(),
    }
}

/// Command output: JSON, or CSV text when `--format csv` was requested.
enum Output {
    Json(Value),
    Csv(String),
}

type Outcome = Result<Output, Failure>;

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports always serialize")
}

fn read_file(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

fn parse_predicate(s: &str) -> Result<Predicate, Failure> {
    s.parse().map_err(usage)
}

fn constructed(set: &IntSet, recipe: &ConstructionRecipe) -> Outcome {
    Ok(Output::Json(json!({
        "set": set.to_literal(),
        "analysis": to_value(&analyze(set)?),
        "recipe": to_value(recipe),
    })))
}

fn run_analyze(args: &AnalyzeArgs) -> Outcome {
    let (sets, batch) = match (&args.set, &args.set_file) {
        (Some(literal), _) => (vec![parse_set(literal)?], false),
        (None, Some(path)) => (rsdkit::setcore::parse_set_lines(&read_file(path)?)?, true),
        (None, None) => return Err(usage("one of --set or --set-file is required")),
    };
    let reports = sets
        .iter()
        .map(analyze)
        .collect::<Result<Vec<AnalysisReport>, Error>>()?;
    Ok(match args.format {
        Format::Csv => {
            let mut text = String::from(AnalysisReport::CSV_HEADER);
            for r in &reports {
                text.push('\n');
                text.push_str(&r.csv_row());
            }
            Output::Csv(text)
        }
        Format::Json if batch => Output::Json(to_value(&reports)),
        Format::Json => Output::Json(to_value(&reports[0])),
    })
}

fn run_construct(c: &Construct) -> Outcome {
    match c {
        Construct::Ap { k, start, step } => {
            let set = arithmetic_progression(*k, *start, *step)?;
            constructed(
                &set,
                &ConstructionRecipe::new(RecipeKind::Ap, vec![*k as i64, *start, *step], vec![]),
            )
        }
        Construct::Extend { set, b } => {
            let a = parse_set(set)?;
            let out = extend(&a, *b)?;
            constructed(
                &out,
                &ConstructionRecipe::new(
                    RecipeKind::Extension,
                    vec![*b],
                    vec![ConstructionRecipe::literal(&a)],
                ),
            )
        }
        Construct::Power { set, m, n } => {
            let a = parse_set(set)?;
            let out = base_power(&BasePowerParams::new(a.clone(), *m, *n)?)?;
            constructed(
                &out,
                &ConstructionRecipe::new(
                    RecipeKind::BasePower,
                    vec![*m, *n as i64],
                    vec![ConstructionRecipe::literal(&a)],
                ),
            )
        }
        Construct::Delta {
            x,
            max_diameter,
            max_k,
            budget,
            threads,
        } => {
            let bounds = SearchBounds {
                max_diameter: *max_diameter,
                max_k: *max_k,
                budget: budget.unwrap_or(DEFAULT_SEARCH_BUDGET),
                threads: *threads,
            };
            let (set, recipe) = delta_set_with_bounds(*x, &bounds)?;
            constructed(&set, &recipe)
        }
        Construct::Theorem1 { set, m, n, count } => {
            let report = theorem1_witness(&parse_set(set)?, *m, *n, *count)?;
            Ok(Output::Json(to_value(&report)))
        }
        Construct::Replay {
            recipe,
            recipe_file,
        } => {
            let text = match (recipe, recipe_file) {
                (Some(t), _) => t.clone(),
                (None, Some(path)) => read_file(path)?,
                (None, None) => return Err(usage("one of --recipe or --recipe-file is required")),
            };
            let recipe = ConstructionRecipe::from_json(&text)?;
            constructed(&recipe.replay()?, &recipe)
        }
    }
}

fn enumeration_budget(flag: Option<u64>) -> Result<u64, Failure> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var(BUDGET_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| {
            usage(format!(
                "{BUDGET_ENV} must be a nonnegative integer, got {v:?}"
            ))
        }),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

fn run_enumerate(args: &EnumerateArgs) -> Outcome {
    let mut params = EnumParams::new(args.k, args.n, parse_predicate(&args.predicate)?);
    params.list_witnesses = args.list;
    params.thread_count = args.threads;
    params.shard_count = args.shards;
    let report = count_classes_with_budget(&params, enumeration_budget(args.budget)?)?;
    eprintln!(
        "enumerate: {} matching of {} classes in {:.3}s",
        report.matching_classes,
        report.classes_examined,
        report.elapsed.as_secs_f64()
    );
    if let (Some(path), Some(witnesses)) = (&args.witness_out, &report.witnesses) {
        let text: String = witnesses
            .iter()
            .map(|s| format!("{}\n", s.to_literal()))
            .collect();
        std::fs::write(path, text)
            .map_err(|e| domain(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(match args.format {
        Format::Csv => Output::Csv(format!(
            "{}\n{}",
            EnumerationReport::CSV_HEADER,
            report.csv_row()
        )),
        Format::Json => Output::Json(to_value(&report)),
    })
}

fn run_search(args: &SearchArgs) -> Outcome {
    let start = std::time::Instant::now();
    let found = search_delta_with_budget(
        args.x,
        args.max_diameter,
        args.max_k,
        args.budget,
        args.threads,
    )?;
    let elapsed = start.elapsed().as_secs_f64();
    Ok(Output::Json(match found {
        Some(set) => json!({
            "found": true,
            "set": set.to_literal(),
            "analysis": to_value(&analyze(&set)?),
            "elapsed": elapsed,
        }),
        None => json!({
            "found": false,
            "exhausted": {"max_diameter": args.max_diameter, "max_k": args.max_k},
            "elapsed": elapsed,
        }),
    }))
}

fn run_verify(args: &VerifyArgs) -> Outcome {
    let lemma: LemmaId = args.lemma.parse().map_err(usage)?;
    let (report, diagnostic) = rsdkit::enumeration::with_pool(args.threads, || {
        let report = verify_lemma(lemma, args.trials, args.seed);
        let diagnostic = (args.diagnostic && lemma == LemmaId::Lemma1)
            .then(|| lemma1_weak_hypothesis(args.trials, args.seed));
        (report, diagnostic)
    })?;
    let report = report?;
    if !report.passed {
        let cx = serde_json::to_string(&report.first_counterexample).expect("serializable");
        return Err(domain(format!("identity failed; counterexample: {cx}")));
    }
    let mut value = to_value(&report);
    if let Some(d) = diagnostic {
        value["weak_hypothesis"] = to_value(&d);
    }
    Ok(Output::Json(value))
}

fn run_profile(args: &ProfileArgs) -> Outcome {
    let mut params = EnumParams::new(args.k, args.n, parse_predicate(&args.predicate)?);
    params.shard_count = args.shards;
    Ok(Output::Json(to_value(&profile_enumeration(&params)?)))
}

fn command_name(c: &Command) -> String {
    match c {
        Command::Analyze(_) => "analyze".into(),
        Command::Construct(sub) => format!(
            "construct {}",
            match sub {
                Construct::Ap { .. } => "ap",
                Construct::Extend { .. } => "extend",
                Construct::Power { .. } => "power",
                Construct::Delta { .. } => "delta",
                Construct::Theorem1 { .. } => "theorem1",
                Construct::Replay { .. } => "replay",
            }
        ),
        Command::Enumerate(_) => "enumerate".into(),
        Command::Search(_) => "search".into(),
        Command::Verify(_) => "verify".into(),
        Command::Profile(_) => "profile".into(),
    }
}

fn emit(envelope: &OutputEnvelope) {
    println!(
        "{}",
        serde_json::to_string_pretty(envelope).expect("envelopes always serialize")
    );
}

fn main() -> ExitCode {
    let raw: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&raw) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            emit(&OutputEnvelope {
                command: raw.get(1).cloned().unwrap_or_default(),
                inputs: json!({ "argv": &raw[1..] }),
                result: None,
                status: Status::Error,
                error_detail: Some(e.render().to_string().trim().to_string()),
            });
            return ExitCode::from(2);
        }
    };
    let inputs = match &cli.command {
        Command::Analyze(a) => to_value(a),
        Command::Construct(c) => to_value(c),
        Command::Enumerate(a) => to_value(a),
        Command::Search(a) => to_value(a),
        Command::Verify(a) => to_value(a),
        Command::Profile(a) => to_value(a),
    };
    let outcome = match &cli.command {
        Command::Analyze(a) => run_analyze(a),
        Command::Construct(c) => run_construct(c),
        Command::Enumerate(a) => run_enumerate(a),
        Command::Search(a) => run_search(a),
        Command::Verify(a) => run_verify(a),
        Command::Profile(a) => run_profile(a),
    };
    let command = command_name(&cli.command);
    match outcome {
        Ok(Output::Csv(text)) => {
            println!("{text}");
            ExitCode::SUCCESS
        }
        Ok(Output::Json(result)) => {
            emit(&OutputEnvelope {
                command,
                inputs,
                result: Some(result),
                status: Status::Ok,
                error_detail: None,
            });
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.detail);
            emit(&OutputEnvelope {
                command,
                inputs,
                result: None,
                status: Status::Error,
                error_detail: Some(f.detail),
            });
            ExitCode::from(f.code)
        }
    }
}
