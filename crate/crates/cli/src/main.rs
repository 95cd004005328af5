use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Args, Parser, Subcommand, ValueEnum};
use fuzzysum::extract::Selection;
use fuzzysum::preprocess::TitleSource;
use fuzzysum::rouge::{MultiReference, RougeConfig};
use fuzzysum::runner::{
    parse_methods, parse_weights, run_evaluate, run_features, run_summarize, ConfigFile, RunConfig, RunError,
    RunOutcome, EXIT_FATAL,
};

#[derive(Parser)]
#[command(
    name = "fuzzysum",
    version,
    about = "Extractive summarization with sentence features and fuzzy scoring"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write summaries (and JSON sidecars) for every document of a corpus.
    Summarize(SummarizeArgs),
    /// Score summaries against reference summaries with ROUGE-1.
    Evaluate(EvaluateArgs),
    /// Export the per-sentence feature matrix as CSV.
    Features(FeaturesArgs),
}

#[derive(Args)]
struct CorpusArgs {
    /// Directory of `.txt` documents (or a single file); repeatable.
    #[arg(long = "input", short = 'i')]
    inputs: Vec<PathBuf>,
    /// TOML configuration file; command-line flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Stopword list, one word per line.
    #[arg(long)]
    stopwords: Option<PathBuf>,
    /// Worker threads.
    #[arg(long)]
    workers: Option<usize>,
    /// Treat the first line as body text; the title feature is then 0.
    #[arg(long, conflicts_with = "title")]
    no_title: bool,
    /// Use this title for every document instead of the first line.
    #[arg(long)]
    title: Option<String>,
    /// Remove SGML/HTML tags before processing.
    #[arg(long)]
    strip_tags: bool,
}

#[derive(Args)]
struct SummarizeArgs {
    #[command(flatten)]
    corpus: CorpusArgs,
    /// gsm, fuzzy, baseline, all, or a comma-separated list.
    #[arg(long, short = 'm')]
    method: Option<String>,
    /// Fraction of sentences to extract.
    #[arg(long, conflicts_with = "budget_words")]
    rate: Option<f64>,
    /// Extract by rank until this many words are used.
    #[arg(long)]
    budget_words: Option<usize>,
    /// Fuzzy rule file (the built-in rule base otherwise).
    #[arg(long)]
    rules: Option<PathBuf>,
    /// Eight comma-separated feature weights for the GSM score.
    #[arg(long, value_delimiter = ',')]
    weights: Option<Vec<f64>>,
    /// Words in the lead baseline.
    #[arg(long)]
    baseline_words: Option<usize>,
    #[arg(long, short = 'o')]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum MultiRefArg {
    Max,
    Average,
}

#[derive(Args)]
struct EvaluateArgs {
    /// Directory of `<doc_id>.<method>.sum.txt` files.
    #[arg(long)]
    summaries: PathBuf,
    /// Directory with one sub-directory of reference `.txt` files per doc_id.
    #[arg(long)]
    refs: PathBuf,
    #[arg(long, short = 'o')]
    out: PathBuf,
    /// Porter-stem tokens before matching.
    #[arg(long)]
    rouge_stem: bool,
    /// How several references for one document are combined.
    #[arg(long, value_enum, default_value = "max")]
    multi_reference: MultiRefArg,
}

#[derive(Args)]
struct FeaturesArgs {
    #[command(flatten)]
    corpus: CorpusArgs,
    /// Output CSV file.
    #[arg(long, short = 'o')]
    out: PathBuf,
}

fn base_config(args: &CorpusArgs) -> Result<RunConfig> {
    let mut config = RunConfig::default();
    if let Some(path) = &args.config {
        ConfigFile::load(path)?.apply(&mut config)?;
    }
    if !args.inputs.is_empty() {
        config.inputs = args.inputs.clone();
    }
    if let Some(p) = &args.stopwords {
        config.stopword_file = Some(p.clone());
    }
    if let Some(w) = args.workers {
        config.workers = w;
    }
    if args.no_title {
        config.title = TitleSource::None;
    }
    if let Some(t) = &args.title {
        config.title = TitleSource::Explicit(t.clone());
    }
    if args.strip_tags {
        config.strip_tags = true;
    }
    if config.inputs.is_empty() {
        return Err(RunError::Config("no input given (use --input)".into()).into());
    }
    Ok(config)
}

fn summarize_config(args: &SummarizeArgs) -> Result<RunConfig> {
    let mut config = base_config(&args.corpus)?;
    if let Some(m) = &args.method {
        config.methods = parse_methods(m)?;
    }
    if let Some(r) = args.rate {
        config.selection = Selection::Rate(r);
    }
    if let Some(b) = args.budget_words {
        config.selection = Selection::BudgetWords(b);
    }
    if let Some(p) = &args.rules {
        config.rule_file = Some(p.clone());
    }
    if let Some(w) = &args.weights {
        config.weights = Some(parse_weights(w)?);
    }
    if let Some(b) = args.baseline_words {
        config.baseline_words = b;
    }
    if let Some(o) = &args.out {
        config.out_dir = o.clone();
    }
    Ok(config)
}

fn report(outcome: &RunOutcome) -> ExitCode {
    for f in &outcome.failures {
        eprintln!("error: {}: {}", f.doc_id, f.message);
    }
    eprintln!(
        "{} processed, {} failed, {} files written",
        outcome.processed,
        outcome.failures.len(),
        outcome.written.len()
    );
    ExitCode::from(outcome.exit_code() as u8)
}

fn run(cli: Cli) -> Result<RunOutcome> {
    let outcome = match cli.command {
        Command::Summarize(args) => run_summarize(&summarize_config(&args)?)?,
        Command::Features(args) => run_features(&base_config(&args.corpus)?, &args.out)?,
        Command::Evaluate(args) => {
            let rouge = RougeConfig {
                stem: args.rouge_stem,
                multi_reference: match args.multi_reference {
                    MultiRefArg::Max => MultiReference::Max,
                    MultiRefArg::Average => MultiReference::Average,
                },
            };
            run_evaluate(&args.summaries, &args.refs, &args.out, &rouge)?
        }
    };
    Ok(outcome)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_FATAL as u8)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(outcome) => report(&outcome),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_FATAL as u8)
        }
    }
}
