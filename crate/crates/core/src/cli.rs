//! The `bugsift` command line: `index`, `locate`, `evaluate`, `sweep`.
//!
//! Exit status is 0 on success, 1 when an evaluation finds nothing (every
//! metric zero) and 2 on usage or input errors. Every flag can also be set
//! through a `BUGSIFT_`-prefixed environment variable.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use crate::corpus::{extract_methods, load_corpus, save_corpus, Corpus, LanguageProfile};
use crate::error::{Error, Result};
use crate::eval::{evaluate, load_gold_set, EvalReport};
use crate::index::{build_index, load_index, save_index, Index};
use crate::manifest::{millis, unix_now, PhaseTimings, RunManifest};
use crate::pipeline::{locate, prepare_queries, sweep};
use crate::preprocess::FilterLists;
use crate::query::{load_bug_reports, sweep_weights, GrandMode};
use crate::sifter::{read_results, write_results, SiftMode};
use crate::variants::{load_config_file, resolve_config, ConfigOverrides, PipelineConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NOTHING_FOUND: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "bugsift",
    version,
    about = "Method-level bug localization with boosted queries and code sifting"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Extract methods from a source tree (or load a corpus file) and build the index
    Index(IndexArgs),
    /// Rank methods for every bug report
    Locate(LocateArgs),
    /// Score a results file against a gold set
    Evaluate(EvaluateArgs),
    /// Evaluate every boost-weight triple on a grid
    Sweep(SweepArgs),
}

#[derive(Debug, Args)]
pub struct ListArgs {
    /// Stop-word list, one term per line
    #[arg(long, env = "BUGSIFT_STOPWORDS")]
    pub stopwords: Option<PathBuf>,
    /// Language keyword list, one term per line
    #[arg(long, env = "BUGSIFT_KEYWORDS")]
    pub keywords: Option<PathBuf>,
}

impl ListArgs {
    fn load(&self) -> Result<FilterLists> {
        FilterLists::from_files(self.stopwords.as_deref(), self.keywords.as_deref())
    }
}

#[derive(Debug, Args)]
pub struct ConfigArgs {
    /// TOML file overriding preset fields
    #[arg(long, env = "BUGSIFT_CONFIG")]
    pub config: Option<PathBuf>,
    /// boostnsift, boostnsift10, bns_qb, bns_cs or plain_bm25
    #[arg(long, env = "BUGSIFT_PRESET")]
    pub preset: Option<String>,
    /// Title weight
    #[arg(long, env = "BUGSIFT_ALPHA")]
    pub alpha: Option<f64>,
    /// Description weight
    #[arg(long, env = "BUGSIFT_BETA")]
    pub beta: Option<f64>,
    /// Comments weight
    #[arg(long, env = "BUGSIFT_GAMMA")]
    pub gamma: Option<f64>,
    /// BM25 term-frequency saturation
    #[arg(long = "k", env = "BUGSIFT_K")]
    pub k: Option<f64>,
    /// BM25 length normalization
    #[arg(long = "b", env = "BUGSIFT_B")]
    pub b: Option<f64>,
    /// filter, diff or off
    #[arg(long, env = "BUGSIFT_SIFT_MODE")]
    pub sift_mode: Option<SiftMode>,
    /// mean or sum
    #[arg(long, env = "BUGSIFT_GRAND_MODE")]
    pub grand_mode: Option<GrandMode>,
    /// Keep only this fraction of each ranked list
    #[arg(long, env = "BUGSIFT_TOP_FRACTION")]
    pub top_fraction: Option<f64>,
}

impl ConfigArgs {
    fn resolve(&self) -> Result<PipelineConfig> {
        let file = self.config.as_deref().map(load_config_file).transpose()?;
        let flags = ConfigOverrides {
            preset: self.preset.clone(),
            alpha: self.alpha,
            beta: self.beta,
            gamma: self.gamma,
            k: self.k,
            b: self.b,
            sift_mode: self.sift_mode,
            grand_mode: self.grand_mode,
            top_fraction: self.top_fraction,
        };
        resolve_config(file.as_ref(), &flags)
    }
}

#[derive(Debug, Args)]
pub struct IndexArgs {
    /// Source directory, single source file, or corpus `.jsonl`
    pub source: PathBuf,
    #[arg(long, env = "BUGSIFT_OUT", default_value = "out")]
    pub out: PathBuf,
    #[arg(long, env = "BUGSIFT_LANGUAGE", default_value = "java")]
    pub language: String,
    #[command(flatten)]
    pub lists: ListArgs,
}

#[derive(Debug, Args)]
pub struct LocateArgs {
    /// Output directory of `index`, an `index.json`, or a corpus `.jsonl`
    #[arg(long, env = "BUGSIFT_INDEX")]
    pub index: PathBuf,
    /// Bug reports, one JSON object per line
    #[arg(long, env = "BUGSIFT_BUGS")]
    pub bugs: PathBuf,
    /// Also evaluate against this gold set
    #[arg(long, env = "BUGSIFT_GOLD")]
    pub gold: Option<PathBuf>,
    #[arg(
        long,
        env = "BUGSIFT_TOP_N",
        value_delimiter = ',',
        default_value = "1,5,10,20"
    )]
    pub top_n: Vec<usize>,
    #[arg(long, env = "BUGSIFT_OUT", default_value = "out")]
    pub out: PathBuf,
    #[command(flatten)]
    pub config: ConfigArgs,
    #[command(flatten)]
    pub lists: ListArgs,
}

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    /// Results file written by `locate`
    #[arg(long, env = "BUGSIFT_RESULTS")]
    pub results: PathBuf,
    #[arg(long, env = "BUGSIFT_GOLD")]
    pub gold: PathBuf,
    #[arg(
        long,
        env = "BUGSIFT_TOP_N",
        value_delimiter = ',',
        default_value = "1,5,10,20"
    )]
    pub top_n: Vec<usize>,
    /// Where to write `report.json`; defaults to the results file's directory
    #[arg(long, env = "BUGSIFT_OUT")]
    pub out: Option<PathBuf>,
    /// Row label in the printed table
    #[arg(long, default_value = "run")]
    pub label: String,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, env = "BUGSIFT_INDEX")]
    pub index: PathBuf,
    #[arg(long, env = "BUGSIFT_BUGS")]
    pub bugs: PathBuf,
    #[arg(long, env = "BUGSIFT_GOLD")]
    pub gold: PathBuf,
    #[arg(long, default_value_t = 0.5)]
    pub lo: f64,
    #[arg(long, default_value_t = 4.0)]
    pub hi: f64,
    #[arg(long, default_value_t = 0.1)]
    pub step: f64,
    #[arg(long, env = "BUGSIFT_OUT", default_value = "out")]
    pub out: PathBuf,
    #[command(flatten)]
    pub config: ConfigArgs,
    #[command(flatten)]
    pub lists: ListArgs,
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let outcome = match &cli.command {
        Command::Index(a) => cmd_index(a),
        Command::Locate(a) => cmd_locate(a),
        Command::Evaluate(a) => cmd_evaluate(a),
        Command::Sweep(a) => cmd_sweep(a),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

fn ensure_exists(path: &Path) -> Result<()> {
    if path.exists() {
        Ok(())
    } else {
        Err(Error::io(
            path,
            std::io::Error::new(std::io::ErrorKind::NotFound, "no such file or directory"),
        ))
    }
}

fn create_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))
}

fn is_jsonl(path: &Path) -> bool {
    path.is_file() && path.extension().is_some_and(|e| e == "jsonl")
}

pub fn cmd_index(args: &IndexArgs) -> Result<i32> {
    ensure_exists(&args.source)?;
    let lists = args.lists.load()?;
    let corpus = if is_jsonl(&args.source) {
        load_corpus(&args.source)?
    } else {
        let profile = LanguageProfile::by_name(&args.language)
            .ok_or_else(|| Error::param(format!("unsupported language `{}`", args.language)))?;
        let extraction = extract_methods(&args.source, &profile)?;
        for d in &extraction.diagnostics {
            eprintln!("warning: {d}");
        }
        extraction.corpus
    };
    let index = build_index(&corpus, &lists);
    let hash = corpus.content_hash();
    create_dir(&args.out)?;
    let corpus_path = args.out.join("corpus.jsonl");
    let index_path = args.out.join("index.json");
    save_corpus(&corpus, &corpus_path)?;
    save_index(&index, &hash, &index_path)?;
    println!("{} methods indexed", index.doc_count());
    println!("vocabulary: {} terms", index.vocabulary_size());
    println!("average method length: {:.3} terms", index.avg_len());
    println!("corpus hash: {hash}");
    println!(
        "wrote {} and {}",
        corpus_path.display(),
        index_path.display()
    );
    Ok(EXIT_OK)
}

/// Loads a persisted index, or builds one from a corpus file.
fn open_index(path: &Path, lists: &FilterLists) -> Result<(Index, String, PathBuf)> {
    ensure_exists(path)?;
    let from_corpus = |p: &Path| -> Result<(Index, String, PathBuf)> {
        let corpus: Corpus = load_corpus(p)?;
        Ok((
            build_index(&corpus, lists),
            corpus.content_hash(),
            p.to_path_buf(),
        ))
    };
    if path.is_dir() {
        let index_file = path.join("index.json");
        if index_file.is_file() {
            let (index, hash) = load_index(&index_file)?;
            return Ok((index, hash, index_file));
        }
        let corpus_file = path.join("corpus.jsonl");
        ensure_exists(&corpus_file)?;
        return from_corpus(&corpus_file);
    }
    if is_jsonl(path) {
        return from_corpus(path);
    }
    let (index, hash) = load_index(path)?;
    Ok((index, hash, path.to_path_buf()))
}

fn write_report(report: &EvalReport, path: &Path) -> Result<()> {
    let text = serde_json::to_string_pretty(report).expect("report serializes");
    fs::write(path, text + "\n").map_err(|e| Error::io(path, e))
}

fn exit_for(report: &EvalReport) -> i32 {
    if report.is_all_zero() {
        EXIT_NOTHING_FOUND
    } else {
        EXIT_OK
    }
}

pub fn cmd_locate(args: &LocateArgs) -> Result<i32> {
    let config = args.config.resolve()?;
    let lists = args.lists.load()?;
    let gold = args.gold.as_deref().map(load_gold_set).transpose()?;
    ensure_exists(&args.bugs)?;
    create_dir(&args.out)?;

    let start = Instant::now();
    let (index, corpus_hash, index_file) = open_index(&args.index, &lists)?;
    let index_ms = millis(start.elapsed());

    let query_start = Instant::now();
    let bugs = load_bug_reports(&args.bugs)?;
    let loc = locate(&index, &bugs, &lists, &config)?;
    let sift_ms = millis(loc.sift_time);
    let query_ms = millis(query_start.elapsed()) - sift_ms;
    for s in &loc.skipped {
        eprintln!("warning: skipping bug `{}`: {}", s.bug_id, s.reason);
    }

    let eval_start = Instant::now();
    let results_path = args.out.join("results.tsv");
    write_results(&loc.results, &results_path)?;
    let mut code = EXIT_OK;
    let report = match &gold {
        Some(g) => Some(evaluate(&loc.results, g, &args.top_n)?),
        None => None,
    };
    if let Some(r) = &report {
        write_report(r, &args.out.join("report.json"))?;
        code = exit_for(r);
    }
    let eval_ms = millis(eval_start.elapsed());
    let total_ms = millis(start.elapsed());

    let manifest = RunManifest {
        config,
        corpus_hash,
        index_file,
        bug_file: args.bugs.clone(),
        gold_file: args.gold.clone(),
        stopword_file: args.lists.stopwords.clone(),
        keyword_file: args.lists.keywords.clone(),
        timestamp: unix_now(),
        timings: PhaseTimings {
            index_ms,
            query_ms,
            sift_ms,
            eval_ms,
            total_ms,
        },
    };
    manifest.write(&args.out.join("manifest.json"))?;

    println!(
        "located {} of {} bugs ({} skipped)",
        loc.results.len(),
        bugs.len(),
        loc.skipped.len()
    );
    println!("wrote {}", results_path.display());
    if let Some(r) = &report {
        print!(
            "{}",
            r.to_table(args.config.preset.as_deref().unwrap_or("run"))
        );
    }
    Ok(code)
}

pub fn cmd_evaluate(args: &EvaluateArgs) -> Result<i32> {
    ensure_exists(&args.results)?;
    let gold = load_gold_set(&args.gold)?;
    let results = read_results(&args.results)?;
    let report = evaluate(&results, &gold, &args.top_n)?;
    let out_dir = match &args.out {
        Some(d) => d.clone(),
        None => args
            .results
            .parent()
            .map(Path::to_path_buf)
            .unwrap_or_else(|| PathBuf::from(".")),
    };
    create_dir(&out_dir)?;
    write_report(&report, &out_dir.join("report.json"))?;
    print!("{}", report.to_table(&args.label));
    Ok(exit_for(&report))
}

pub fn cmd_sweep(args: &SweepArgs) -> Result<i32> {
    let gold = load_gold_set(&args.gold)?;
    let base = args.config.resolve()?;
    let lists = args.lists.load()?;
    let grid = sweep_weights(args.lo, args.hi, args.step)?;
    let (index, _, _) = open_index(&args.index, &lists)?;
    let bugs = load_bug_reports(&args.bugs)?;
    let fields = prepare_queries(&bugs, &lists);
    let report = sweep(&index, &fields, &gold, &base, &grid)?;

    create_dir(&args.out)?;
    let path = args.out.join("sweep.tsv");
    fs::write(&path, report.to_tsv()).map_err(|e| Error::io(&path, e))?;
    println!("{} weight triples evaluated", report.rows.len());
    let show = |title: &str, rows: &[crate::pipeline::SweepRow]| {
        println!("{title}");
        println!(
            "  {:>5} {:>5} {:>5} {:>7} {:>7}",
            "alpha", "beta", "gamma", "MRR", "MAP"
        );
        for r in rows {
            let w = r.weights;
            println!(
                "  {:>5.1} {:>5.1} {:>5.1} {:>7.3} {:>7.3}",
                w.alpha, w.beta, w.gamma, r.mrr, r.map
            );
        }
    };
    show("best:", report.best(3));
    show("worst:", report.worst(3));
    println!("wrote {}", path.display());
    Ok(EXIT_OK)
}
