use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use kbcat::enrich::PresetName;
use kbcat::kbindex::{parse_dump, Index};
use kbcat_cli::experiment::{describe, parse_metrics_tsv, preview_enrichment, Stage, METRICS_FILE};
use kbcat_cli::{emit_improvement_table, load_config, run_experiment, CliError};

#[derive(Parser)]
#[command(name = "kbcat", version, about = "Knowledge-base enriched text categorization experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment and write its run directory.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Replace the configured preset (baseline, A1..A5).
        #[arg(long)]
        preset: Option<String>,
        #[arg(long)]
        seed: Option<u64>,
        /// Replace the configured output directory.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Knowledge-base index operations.
    Index {
        #[command(subcommand)]
        command: IndexCommand,
    },
    /// Enrichment inspection.
    Enrich {
        #[command(subcommand)]
        command: EnrichCommand,
    },
    /// Improvement table over finished run directories. The first run named
    /// `baseline` (or else the first run) is the reference.
    Report {
        #[arg(required = true)]
        runs: Vec<PathBuf>,
    },
}

#[derive(Subcommand)]
enum IndexCommand {
    /// Index a knowledge-record dump and save it.
    Build {
        #[arg(long)]
        dump: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Subcommand)]
enum EnrichCommand {
    /// Show what the configured preset appends to one document.
    Preview {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        doc_id: String,
    },
}

fn stage<T>(stage: Stage, r: kbcat::Result<T>) -> Result<T, CliError> {
    r.map_err(|source| CliError::Stage { stage, source })
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Run { config, preset, seed, out } => {
            let mut cfg = load_config(&config)?;
            if let Some(p) = preset {
                let name: PresetName = p.parse().map_err(|e: kbcat::Error| CliError::Config(e.to_string()))?;
                cfg.set_preset(name)?;
            }
            if let Some(s) = seed {
                cfg.set_seed(s);
            }
            if let Some(o) = out {
                cfg.out = std::path::absolute(&o).map_err(|e| CliError::Io { path: o, source: e })?;
            }
            log::info!("running {}", describe(&cfg));
            let res = run_experiment(&cfg)?;
            println!("{}\tmicro_f1={:.6}\tmacro_f1={:.6}", res.run.name, res.run.micro_f, res.run.macro_f);
            println!("results in {}", res.dir.display());
        }
        Command::Index {
            command: IndexCommand::Build { dump, out },
        } => {
            let text = std::fs::read_to_string(&dump).map_err(|e| CliError::Io {
                path: dump.clone(),
                source: e,
            })?;
            let index = stage(Stage::LoadIndex, parse_dump(&text).and_then(Index::build))?;
            stage(Stage::Write, index.save(&out))?;
            println!("indexed {} records into {}", index.len(), out.display());
        }
        Command::Enrich {
            command: EnrichCommand::Preview { config, doc_id },
        } => {
            let cfg = load_config(&config)?;
            let p = preview_enrichment(&cfg, &doc_id)?;
            println!("document\t{}", p.original.join(" "));
            println!("titles\t{}", p.titles.join(" | "));
            println!("categories\t{}", p.categories.join(" | "));
            println!("linked\t{}", p.linked_concepts.join(" | "));
            println!("appended\t{}", p.appended.join(" "));
        }
        Command::Report { runs } => {
            let mut summaries = Vec::new();
            for dir in &runs {
                let path = dir.join(METRICS_FILE);
                let text = std::fs::read_to_string(&path).map_err(|e| CliError::Io { path, source: e })?;
                summaries.extend(parse_metrics_tsv(&text)?);
            }
            if summaries.is_empty() {
                return Err(CliError::Config("no runs found in the given directories".into()));
            }
            let at = summaries.iter().position(|s| s.name == "baseline").unwrap_or(0);
            let baseline = summaries.remove(at);
            print!("{}", emit_improvement_table(&baseline, &summaries));
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
