//! The `rightfront` command line: validate a corpus, print corpus
//! statistics, or inspect the frontier of one document prefix.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use log::info;
use rightfront::report::{verdict_records, write_histogram_csv, write_verdicts_csv, write_verdicts_json};
use rightfront::validator::prefix_graph_with;
use rightfront::{
    corpus_stats, parse_corpus, replay_corpus, right_frontier_union, CorpusStats, Document,
    OpenConstituentGate, ReplayOptions, StructuralPolicy,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATIONS: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "rightfront",
    version,
    about = "Check discourse annotations against the right frontier constraint"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Replay every document and report one verdict per annotated relation.
    Validate {
        /// Corpus file, one JSON document per line.
        corpus: PathBuf,
        #[arg(long, value_enum, default_value_t = VerdictFormat::Csv)]
        format: VerdictFormat,
        /// Also write verdicts.csv, verdicts.json and summary.json here.
        #[arg(long)]
        out_dir: Option<PathBuf>,
        #[command(flatten)]
        replay: ReplayFlags,
    },
    /// Print corpus statistics as JSON.
    Stats {
        /// Corpus file, one JSON document per line.
        corpus: PathBuf,
        /// Also write stats.json and distance_histogram.csv here.
        #[arg(long)]
        out_dir: Option<PathBuf>,
        #[command(flatten)]
        replay: ReplayFlags,
    },
    /// Print the frontier of a document after its first N EDUs.
    Frontier {
        /// Corpus file, one JSON document per line.
        corpus: PathBuf,
        /// Id of the document to inspect.
        doc_id: String,
        /// Number of EDUs in the prefix (1-based).
        #[arg(long)]
        at: usize,
        #[arg(long)]
        no_normalize: bool,
        #[arg(long, value_enum, default_value_t = FrontierFormat::Text)]
        format: FrontierFormat,
    },
}

#[derive(Debug, Args)]
struct ReplayFlags {
    /// Check against the graphs as annotated, without inferring structure.
    #[arg(long)]
    no_normalize: bool,
    /// Count Parallel and Contrast decisions as compliant instead of leaving them out.
    #[arg(long)]
    include_structural: bool,
    /// Let coordinating relations attach to open constituents too.
    #[arg(long)]
    coordinating_open_constituents: bool,
}

impl ReplayFlags {
    fn options(&self) -> ReplayOptions {
        ReplayOptions {
            normalize: !self.no_normalize,
            gate: if self.coordinating_open_constituents {
                OpenConstituentGate::AllNonStructural
            } else {
                OpenConstituentGate::SubordinatingOnly
            },
        }
    }

    fn policy(&self) -> StructuralPolicy {
        if self.include_structural {
            StructuralPolicy::CountAsCompliant
        } else {
            StructuralPolicy::Exclude
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum VerdictFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FrontierFormat {
    Text,
    Json,
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(message) => {
            let _ = writeln!(err, "error: {message}");
            EXIT_INPUT
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, String> {
    match command {
        Command::Validate {
            corpus,
            format,
            out_dir,
            replay,
        } => validate(&corpus, format, out_dir.as_deref(), &replay, out, err),
        Command::Stats {
            corpus,
            out_dir,
            replay,
        } => stats(&corpus, out_dir.as_deref(), &replay, out),
        Command::Frontier {
            corpus,
            doc_id,
            at,
            no_normalize,
            format,
        } => frontier(&corpus, &doc_id, at, !no_normalize, format, out),
    }
}

fn load(path: &Path) -> Result<Vec<Document>, String> {
    let docs = parse_corpus(path).map_err(|e| e.to_string())?;
    info!("read {} documents from {}", docs.len(), path.display());
    Ok(docs)
}

fn io_error(e: io::Error) -> String {
    format!("write failed: {e}")
}

fn create_file(dir: &Path, name: &str) -> Result<fs::File, String> {
    let path = dir.join(name);
    fs::File::create(&path).map_err(|e| format!("cannot create `{}`: {e}", path.display()))
}

fn prepare_dir(dir: &Path) -> Result<(), String> {
    fs::create_dir_all(dir).map_err(|e| format!("cannot create `{}`: {e}", dir.display()))
}

fn fraction(x: Option<f64>) -> String {
    x.map_or_else(|| "n/a".to_string(), |v| format!("{v:.4}"))
}

fn summary_line(s: &CorpusStats) -> String {
    format!(
        "documents={} decisions={} scored={} compliant={} violations={} disconnected={} exempt={} rfc_edu={} rfc_r={}",
        s.documents,
        s.decisions,
        s.scored,
        s.compliant,
        s.violations,
        s.disconnected_violations,
        s.exempt,
        fraction(s.rfc_edu),
        fraction(s.rfc_r),
    )
}

fn validate(
    corpus: &Path,
    format: VerdictFormat,
    out_dir: Option<&Path>,
    flags: &ReplayFlags,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, String> {
    let docs = load(corpus)?;
    let reports = replay_corpus(&docs, &flags.options()).map_err(|e| e.to_string())?;
    let records = verdict_records(&reports);
    match format {
        VerdictFormat::Csv => write_verdicts_csv(&mut *out, &records),
        VerdictFormat::Json => write_verdicts_json(&mut *out, &records),
    }
    .map_err(io_error)?;

    let summary = corpus_stats(&reports, flags.policy()).map_err(|e| e.to_string())?;
    if let Some(dir) = out_dir {
        prepare_dir(dir)?;
        write_verdicts_csv(create_file(dir, "verdicts.csv")?, &records).map_err(io_error)?;
        write_verdicts_json(create_file(dir, "verdicts.json")?, &records).map_err(io_error)?;
        write_json(create_file(dir, "summary.json")?, &summary)?;
    }
    writeln!(err, "{}", summary_line(&summary)).map_err(io_error)?;

    let violations: usize = reports.iter().map(|r| r.violations()).sum();
    Ok(if violations > 0 { EXIT_VIOLATIONS } else { EXIT_OK })
}

fn write_json(mut w: impl Write, value: &impl serde::Serialize) -> Result<(), String> {
    serde_json::to_writer_pretty(&mut w, value).map_err(|e| e.to_string())?;
    writeln!(w).map_err(io_error)
}

fn stats(
    corpus: &Path,
    out_dir: Option<&Path>,
    flags: &ReplayFlags,
    out: &mut dyn Write,
) -> Result<i32, String> {
    let docs = load(corpus)?;
    let reports = replay_corpus(&docs, &flags.options()).map_err(|e| e.to_string())?;
    let stats = corpus_stats(&reports, flags.policy()).map_err(|e| e.to_string())?;
    write_json(&mut *out, &stats)?;
    if let Some(dir) = out_dir {
        prepare_dir(dir)?;
        write_json(create_file(dir, "stats.json")?, &stats)?;
        write_histogram_csv(
            create_file(dir, "distance_histogram.csv")?,
            &stats.distance_histogram,
        )
        .map_err(io_error)?;
    }
    Ok(EXIT_OK)
}

fn frontier(
    corpus: &Path,
    doc_id: &str,
    at: usize,
    normalized: bool,
    format: FrontierFormat,
    out: &mut dyn Write,
) -> Result<i32, String> {
    let docs = load(corpus)?;
    let doc = docs
        .iter()
        .find(|d| d.id() == doc_id)
        .ok_or_else(|| format!("unknown document `{doc_id}`"))?;
    let g = prefix_graph_with(doc, at, normalized).map_err(|e| e.to_string())?;
    let set = right_frontier_union(&g);
    match format {
        FrontierFormat::Text => {
            for e in set.iter() {
                writeln!(out, "{}\t{}", e.label, e.provenance).map_err(io_error)?;
            }
        }
        FrontierFormat::Json => write_json(&mut *out, &set)?,
    }
    Ok(EXIT_OK)
}
