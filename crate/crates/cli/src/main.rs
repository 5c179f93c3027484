//! `srtrace`: classify Stanley-Reisner rings of simplicial complexes.
//!
//! All commands print a single JSON document on stdout (diagnostics go to
//! stderr). Exit codes: 0 success, 1 sweep violations, 2 input/config
//! errors, 3 predicate errors (e.g. the void complex).

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use sha2::{Digest, Sha256};

use srtrace_core::field::FieldSpec;
use srtrace_core::report::{classify_complex, to_canonical_json, ClassifyOptions, SCHEMA_VERSION};
use srtrace_core::sweep::{run_sweep, SweepConfig};
use srtrace_core::{corpus, homology, io as facet_io, Error as CoreError, SimplicialComplex};

#[derive(Parser)]
#[command(
    name = "srtrace",
    version,
    about = "Gorenstein-type classification of Stanley-Reisner rings, with a brute-force trace oracle"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a complex: all ring predicates, canonical-module generator
    /// data, and the trace class, per field
    Classify(ClassifyArgs),
    /// Reduced Betti numbers of a complex, per field
    Homology(HomologyArgs),
    /// Exhaustively validate the classification on every labeled complex up
    /// to a vertex bound
    Sweep(SweepArgs),
    /// Inspect the built-in corpus
    Corpus(CorpusArgs),
}

#[derive(Args)]
struct InputArgs {
    /// Facet file: header `n <count>`, then one facet per line
    #[arg(long, conflicts_with = "corpus")]
    input: Option<PathBuf>,
    /// Named corpus entry (see `srtrace corpus list`)
    #[arg(long)]
    corpus: Option<String>,
}

impl InputArgs {
    fn load(&self) -> anyhow::Result<(String, SimplicialComplex)> {
        match (&self.input, &self.corpus) {
            (Some(path), None) => {
                let text = fs::read_to_string(path)
                    .with_context(|| format!("reading {}", path.display()))?;
                let k = facet_io::parse_facet_file(&text)?;
                Ok((path.display().to_string(), k))
            }
            (None, Some(name)) => Ok((name.clone(), corpus::resolve(name)?)),
            _ => bail!("exactly one of --input or --corpus is required"),
        }
    }
}

#[derive(Args)]
struct FieldArgs {
    /// Coefficient field, repeatable: `q` or `gf:P` (default: q, gf:2, gf:3)
    #[arg(long = "field")]
    fields: Vec<String>,
}

impl FieldArgs {
    fn parse(&self) -> anyhow::Result<Vec<FieldSpec>> {
        if self.fields.is_empty() {
            return Ok(vec![
                FieldSpec::Rationals,
                FieldSpec::prime_field(2)?,
                FieldSpec::prime_field(3)?,
            ]);
        }
        Ok(self
            .fields
            .iter()
            .map(|s| s.parse::<FieldSpec>())
            .collect::<srtrace_core::Result<_>>()?)
    }
}

#[derive(Args)]
struct ClassifyArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    fields: FieldArgs,
    /// Run the brute-force trace oracle and cross-check the classifier
    #[arg(long)]
    oracle: bool,
    /// Verify punctured-Gorensteinness over all faces, not only vertex links
    #[arg(long)]
    debug_all_faces: bool,
    /// Write the JSON report to this file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Reuse byte-identical reports across runs
    #[arg(long)]
    cache_dir: Option<PathBuf>,
}

#[derive(Args)]
struct HomologyArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    fields: FieldArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    /// Ground-set size to enumerate (refused above 6)
    #[arg(long, default_value_t = 4)]
    max_n: usize,
    #[command(flatten)]
    fields: FieldArgs,
    /// Skip the trace-oracle cross-checks (predicate invariants only)
    #[arg(long)]
    skip_oracle: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CorpusArgs {
    #[command(subcommand)]
    action: CorpusAction,
}

#[derive(Subcommand)]
enum CorpusAction {
    /// List the names `--corpus` accepts
    List,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn exit_code_for(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<CoreError>() {
        Some(
            CoreError::Parse { .. }
            | CoreError::BadFieldSpec(_)
            | CoreError::UnknownCorpus(_)
            | CoreError::VertexOutOfRange { .. }
            | CoreError::TooManyVertices(_)
            | CoreError::NotPrime(_)
            | CoreError::PrimeTooLarge(_)
            | CoreError::EnumerationCap { .. },
        ) => 2,
        Some(_) => 3,
        None => 2,
    }
}

fn emit(json: &str, out: &Option<PathBuf>) -> anyhow::Result<()> {
    match out {
        Some(path) => {
            fs::write(path, json).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{json}"),
    }
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Classify(args) => cmd_classify(args),
        Command::Homology(args) => cmd_homology(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Corpus(args) => match args.action {
            CorpusAction::List => {
                let doc = serde_json::json!({
                    "schema": SCHEMA_VERSION,
                    "corpus": corpus::corpus_names(),
                });
                println!("{}", serde_json::to_string_pretty(&doc)?);
                Ok(ExitCode::SUCCESS)
            }
        },
    }
}

fn cmd_classify(args: ClassifyArgs) -> anyhow::Result<ExitCode> {
    let (id, k) = args.input.load()?;
    let fields = args.fields.parse()?;
    let opts = ClassifyOptions {
        oracle: args.oracle,
        debug_all_faces: args.debug_all_faces,
        ..Default::default()
    };

    let cache_key = args.cache_dir.as_ref().map(|dir| {
        let mut hasher = Sha256::new();
        hasher.update(format!(
            "schema={SCHEMA_VERSION};version={};complex={};fields={:?};oracle={};debug={}",
            env!("CARGO_PKG_VERSION"),
            k.canonical_encoding(),
            fields.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
            args.oracle,
            args.debug_all_faces,
        ));
        let digest = hasher.finalize();
        let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
        dir.join(format!("{hex}.json"))
    });

    if let Some(path) = &cache_key {
        if let Ok(cached) = fs::read_to_string(path) {
            eprintln!("cache hit: {}", path.display());
            emit(&cached, &args.out)?;
            return Ok(ExitCode::SUCCESS);
        }
    }

    let started = Instant::now();
    let report = classify_complex(&k, &id, &fields, &opts)?;
    let json = to_canonical_json(&report);
    eprintln!("classified {} in {:?}", id, started.elapsed());

    if let Some(path) = &cache_key {
        if let Some(dir) = path.parent() {
            fs::create_dir_all(dir)?;
        }
        fs::write(path, &json)?;
    }
    emit(&json, &args.out)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_homology(args: HomologyArgs) -> anyhow::Result<ExitCode> {
    let (id, k) = args.input.load()?;
    let fields = args.fields.parse()?;
    let mut tables = Vec::new();
    for field in fields {
        let betti = homology::reduced_betti(&k, field)?;
        tables.push(serde_json::json!({
            "field": field.to_string(),
            "start_dim": -1,
            "reduced_betti": betti.dims(),
        }));
    }
    let doc = serde_json::json!({
        "schema": SCHEMA_VERSION,
        "complex": { "id": id, "encoding": k.canonical_encoding(), "dim": k.dim(), "f_vector": k.f_vector()? },
        "tables": tables,
    });
    let mut json = serde_json::to_string_pretty(&doc)?;
    json.push('\n');
    emit(&json, &args.out)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_sweep(args: SweepArgs) -> anyhow::Result<ExitCode> {
    let mut config = SweepConfig::new(args.max_n);
    config.fields = args.fields.parse()?;
    config.oracle = !args.skip_oracle;
    let started = Instant::now();
    let summary = run_sweep(&config)?;
    eprintln!(
        "swept {} complexes ({} oracle runs) in {:?}",
        summary.total_complexes,
        summary.oracle_runs,
        started.elapsed()
    );
    let json = to_canonical_json(&summary);
    emit(&json, &args.out)?;
    if summary.violations.is_empty() {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("{} violations", summary.violations.len());
        Ok(ExitCode::from(1))
    }
}
