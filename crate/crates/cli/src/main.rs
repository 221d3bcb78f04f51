use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use levelng::analysis::{analyze, Input, Options, OrderChoice};
use levelng::corpus::{self, error_code, ItemStatus};
use levelng::groebner::Limits;
use levelng::harness::{run_harness, HarnessConfig};
use levelng::Error;

/// Levelness, nearly Gorenstein and Cohen-Macaulay tests for graded rings over Q.
///
/// Exit codes: 0 success, 1 malformed input or undefined invariant,
/// 2 resource bound exceeded, 3 internal inconsistency.
#[derive(Parser)]
#[command(name = "levelng", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one ring.
    Analyze(AnalyzeArgs),
    /// Run the built-in corpus and compare with the expected facts.
    Corpus(CorpusArgs),
    /// Random numerical curves checked against the structure theorems.
    Harness(HarnessArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderArg {
    Degrevlex,
    Lex,
}

#[derive(Args)]
struct Common {
    /// Monomial order for all Groebner computations.
    #[arg(long, value_enum, default_value = "degrevlex")]
    order: OrderArg,
    /// Degree bound of the semigroup hole search [default: 3 × largest coordinate].
    #[arg(long, value_name = "N")]
    degree_bound: Option<i64>,
    /// Largest k tried when looking for m^k inside the trace.
    #[arg(long, value_name = "N", default_value_t = 6)]
    kmax: usize,
    /// Cap on critical pairs per Groebner or syzygy computation.
    #[arg(long, value_name = "N")]
    max_pairs: Option<u64>,
    /// Cap on the degree of S-pairs.
    #[arg(long, value_name = "N")]
    max_degree: Option<i64>,
    /// Print JSON instead of text.
    #[arg(long)]
    json: bool,
}

impl Common {
    fn options(&self) -> Options {
        let mut limits = Limits::default();
        if let Some(p) = self.max_pairs {
            limits.max_pairs = p;
        }
        if let Some(d) = self.max_degree {
            limits.max_degree = d;
        }
        Options {
            order: match self.order {
                OrderArg::Degrevlex => OrderChoice::Degrevlex,
                OrderArg::Lex => OrderChoice::Lex,
            },
            hole_bound: self.degree_bound,
            k_max: self.kmax,
            limits,
        }
    }
}

#[derive(Args)]
struct AnalyzeArgs {
    /// JSON input file (semigroup, numerical_curve, ideal or complex).
    #[arg(long, value_name = "FILE", conflicts_with = "numerical_curve")]
    input: Option<PathBuf>,
    /// Exponents a_i of k[s·t^a_1, ..., s·t^a_k], comma separated.
    #[arg(long, value_name = "A,B,...", value_delimiter = ',', num_args = 1..)]
    numerical_curve: Option<Vec<i64>>,
    /// Omit timings so that output is reproducible byte for byte.
    #[arg(long)]
    no_timings: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct CorpusArgs {
    /// Only items whose id contains this string.
    #[arg(long)]
    filter: Option<String>,
    /// Include items marked slow.
    #[arg(long)]
    include_slow: bool,
    /// Worker threads.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Read the corpus from this file instead of the built-in one.
    #[arg(long, value_name = "FILE")]
    corpus_file: Option<PathBuf>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct HarnessArgs {
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Distinct curves to analyze.
    #[arg(long, default_value_t = 300)]
    instances: usize,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[command(flatten)]
    common: Common,
}

fn fail(e: &Error) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(error_code(e) as u8)
}

fn run_analyze(a: AnalyzeArgs) -> ExitCode {
    let input = match (&a.input, &a.numerical_curve) {
        (Some(path), _) => {
            let text = match std::fs::read_to_string(path) {
                Ok(t) => t,
                Err(e) => return fail(&Error::Input(format!("{}: {e}", path.display()))),
            };
            match Input::from_json(&text) {
                Ok(i) => i,
                Err(e) => return fail(&e),
            }
        }
        (None, Some(exps)) => Input::NumericalCurve {
            exponents: exps.clone(),
        },
        (None, None) => {
            return fail(&Error::Input(
                "pass --input FILE or --numerical-curve".into(),
            ))
        }
    };
    match analyze(&input, &a.common.options()) {
        Ok(r) => {
            let r = if a.no_timings { r.without_timings() } else { r };
            if a.common.json {
                println!("{}", r.to_json());
            } else {
                print!("{r}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => fail(&e),
    }
}

fn run_corpus(a: CorpusArgs) -> ExitCode {
    let items = match &a.corpus_file {
        None => corpus::builtin(),
        Some(p) => match std::fs::read_to_string(p)
            .map_err(|e| Error::Input(e.to_string()))
            .and_then(|t| corpus::parse_corpus(&t))
        {
            Ok(i) => i,
            Err(e) => return fail(&e),
        },
    };
    let items = corpus::select(items, a.filter.as_deref(), a.include_slow);
    let results = corpus::run_corpus(&items, &a.common.options(), a.jobs);
    if a.common.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&results).expect("serializable")
        );
    } else {
        print!("{}", corpus::render_table(&results));
    }
    let worst = results
        .iter()
        .filter(|r| !r.ok())
        .map(|r| match r.status {
            ItemStatus::Mismatch => 1,
            _ => r.error_code.unwrap_or(1),
        })
        .max();
    match worst {
        None => ExitCode::SUCCESS,
        Some(c) => ExitCode::from(c as u8),
    }
}

fn run_harness_cmd(a: HarnessArgs) -> ExitCode {
    let cfg = HarnessConfig {
        seed: a.seed,
        instances: a.instances,
        jobs: a.jobs,
        ..HarnessConfig::default()
    };
    let s = run_harness(&cfg, &a.common.options());
    if a.common.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&s).expect("serializable")
        );
    } else {
        println!(
            "seed {}: {} curves, {} Cohen-Macaulay, {} nearly Gorenstein",
            s.seed, s.instances, s.cohen_macaulay, s.nearly_gorenstein
        );
        println!(
            "engine comparisons {}, violations {}, inconsistencies {}, skipped {}",
            s.engine_comparisons,
            s.violations.len(),
            s.inconsistencies.len(),
            s.skipped.len()
        );
        for v in s
            .violations
            .iter()
            .chain(&s.inconsistencies)
            .chain(&s.skipped)
        {
            println!("  {:?}: {}: {}", v.exponents, v.check, v.detail);
        }
    }
    if !s.inconsistencies.is_empty() {
        ExitCode::from(3)
    } else if !s.violations.is_empty() {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match cli.command {
        Command::Analyze(a) => run_analyze(a),
        Command::Corpus(a) => run_corpus(a),
        Command::Harness(a) => run_harness_cmd(a),
    }
}
