//! Running a configured experiment and writing its run directory.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use kbcat::corpus::SplitHint;
use kbcat::enrich::{apply_preset, Preset};
use kbcat::eval::{evaluate_split, format_improvement, paired_t_test, relative_improvement, run_cv, MetricReport};
use kbcat::kbindex::{parse_dump, Index};
use kbcat::learn::{write_model, LabelMode};
use kbcat::pipeline::{fit, prepare_corpus, PipelineConfig, PreparedCorpus};
use kbcat::textproc::{Gazetteer, NounLexicon, Resources, StopList, TaggedDocument};
use log::info;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::config::{EvalMode, ExperimentConfig};
use crate::dataset::{load_corpus, LoadedCorpus};
use crate::CliError;

pub const METRICS_FILE: &str = "metrics.tsv";
pub const IMPROVEMENT_FILE: &str = "improvement.tsv";
pub const MANIFEST_FILE: &str = "manifest.json";
pub const MODELS_DIR: &str = "models";

/// Pipeline stage, named in errors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    LoadCorpus,
    LoadResources,
    LoadIndex,
    Prepare,
    Evaluate,
    DumpModels,
    Write,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stage::LoadCorpus => "loading corpus",
            Stage::LoadResources => "loading resources",
            Stage::LoadIndex => "loading knowledge base",
            Stage::Prepare => "preparing documents",
            Stage::Evaluate => "training and evaluating",
            Stage::DumpModels => "dumping models",
            Stage::Write => "writing results",
        })
    }
}

fn at<T>(stage: Stage, r: kbcat::Result<T>) -> Result<T, CliError> {
    r.map_err(|source| CliError::Stage { stage, source })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StageTiming {
    pub stage: String,
    pub seconds: f64,
}

/// Provenance record written next to the results.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub version: String,
    /// Effective configuration in config-file syntax.
    pub config: String,
    pub seed: u64,
    /// SHA-256 of every input, keyed by config key.
    pub inputs: BTreeMap<String, String>,
    /// SHA-256 of every result file, keyed by file name.
    pub outputs: BTreeMap<String, String>,
    pub timings: Vec<StageTiming>,
}

/// Scores of one configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    /// Preset name.
    pub name: String,
    /// `(scope, report)`: one per fold, or a single `test` scope for a split
    /// run.
    pub scopes: Vec<(String, MetricReport<f64>)>,
    pub micro_f: f64,
    pub macro_f: f64,
}

impl RunResult {
    pub fn fold_micro(&self) -> Vec<f64> {
        self.scopes
            .iter()
            .filter(|(s, _)| s.starts_with("fold"))
            .map(|(_, r)| r.micro_f)
            .collect()
    }

    pub fn fold_macro(&self) -> Vec<f64> {
        self.scopes
            .iter()
            .filter(|(s, _)| s.starts_with("fold"))
            .map(|(_, r)| r.macro_f)
            .collect()
    }
}

#[derive(Debug, Clone)]
pub struct ExperimentOutput {
    pub run: RunResult,
    pub baseline: Option<RunResult>,
    pub manifest: RunManifest,
    pub dir: PathBuf,
}

struct Timer(Vec<StageTiming>);

impl Timer {
    fn time<T>(&mut self, stage: Stage, f: impl FnOnce() -> Result<T, CliError>) -> Result<T, CliError> {
        let start = Instant::now();
        info!("{stage}");
        let out = f()?;
        self.0.push(StageTiming {
            stage: stage.to_string(),
            seconds: start.elapsed().as_secs_f64(),
        });
        Ok(out)
    }
}

/// Stop list, tagger and noun lexicon named by the config.
pub fn load_resources(cfg: &ExperimentConfig) -> kbcat::Result<Resources> {
    let stoplist = match &cfg.stoplist {
        Some(p) => StopList::load(p)?,
        None => StopList::smart(),
    };
    Ok(Resources {
        stoplist: Some(stoplist),
        tagger: cfg.gazetteer.as_deref().map(Gazetteer::load).transpose()?.map(|g| Arc::new(g) as _),
        nouns: cfg.lexicon.as_deref().map(NounLexicon::load).transpose()?.map(|n| Arc::new(n) as _),
    })
}

/// A saved index directory, or a dump file indexed on the fly.
pub fn load_index(path: &Path) -> kbcat::Result<Index> {
    if path.is_dir() {
        return Index::load(path);
    }
    let text = std::fs::read_to_string(path).map_err(|e| kbcat::Error::Io {
        path: path.to_path_buf(),
        source: e,
    })?;
    Index::build(parse_dump(&text)?)
}

fn pipeline_config(cfg: &ExperimentConfig, preset: &Preset) -> PipelineConfig {
    PipelineConfig {
        preset: preset.clone(),
        svm: cfg.svm.clone(),
        label_mode: cfg.label_mode,
    }
}

fn evaluate(cfg: &ExperimentConfig, preset: &Preset, prepared: &PreparedCorpus, categories: &[String]) -> kbcat::Result<RunResult> {
    let pcfg = pipeline_config(cfg, preset);
    let name = preset.name.to_string();
    match cfg.eval {
        EvalMode::Cv => {
            let out = run_cv::<f64>(prepared, categories, &pcfg, cfg.cv_k, cfg.seed)?;
            Ok(RunResult {
                name,
                scopes: out.folds.iter().map(|f| (format!("fold{}", f.fold), f.report.clone())).collect(),
                micro_f: out.micro_f.mean,
                macro_f: out.macro_f.mean,
            })
        }
        EvalMode::Split => {
            let out = evaluate_split::<f64>(prepared, categories, &pcfg)?;
            Ok(RunResult {
                name,
                micro_f: out.report.micro_f,
                macro_f: out.report.macro_f,
                scopes: vec![("test".to_string(), out.report)],
            })
        }
    }
}

fn f6(v: f64) -> String {
    format!("{v:.6}")
}

fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len().max(1) as f64
}

/// Per-scope micro rows (category `*`) and per-category rows, then a `mean`
/// row for cross-validated runs.
pub fn metrics_tsv(runs: &[&RunResult]) -> String {
    let mut s = String::from("run\tscope\tcategory\tprecision\trecall\tf1\tmacro_f1\n");
    for run in runs {
        for (scope, r) in &run.scopes {
            let _ = writeln!(
                s,
                "{}\t{scope}\t*\t{}\t{}\t{}\t{}",
                run.name,
                f6(r.micro_precision),
                f6(r.micro_recall),
                f6(r.micro_f),
                f6(r.macro_f)
            );
            for c in &r.per_category {
                let _ = writeln!(
                    s,
                    "{}\t{scope}\t{}\t{}\t{}\t{}\t-",
                    run.name,
                    c.category,
                    f6(c.precision),
                    f6(c.recall),
                    f6(c.f)
                );
            }
        }
        if run.scopes.len() > 1 {
            let col = |f: fn(&MetricReport<f64>) -> f64| f6(mean(&run.scopes.iter().map(|(_, r)| f(r)).collect::<Vec<_>>()));
            let _ = writeln!(
                s,
                "{}\tmean\t*\t{}\t{}\t{}\t{}",
                run.name,
                col(|r| r.micro_precision),
                col(|r| r.micro_recall),
                f6(run.micro_f),
                f6(run.macro_f)
            );
        }
    }
    s
}

/// Summary of one run for the improvement table.
#[derive(Debug, Clone, PartialEq)]
pub struct Summary {
    pub name: String,
    pub micro_f: f64,
    pub macro_f: f64,
    /// Per-fold scores; empty for a split run.
    pub fold_micro: Vec<f64>,
    pub fold_macro: Vec<f64>,
}

impl From<&RunResult> for Summary {
    fn from(r: &RunResult) -> Self {
        Summary {
            name: r.name.clone(),
            micro_f: r.micro_f,
            macro_f: r.macro_f,
            fold_micro: r.fold_micro(),
            fold_macro: r.fold_macro(),
        }
    }
}

fn change(baseline: f64, value: f64) -> String {
    relative_improvement(baseline, value).map_or_else(|_| "n/a".to_string(), format_improvement)
}

fn p_value(baseline: &[f64], run: &[f64]) -> String {
    if baseline.len() < 2 || baseline.len() != run.len() {
        return "-".to_string();
    }
    paired_t_test(run, baseline).map_or_else(|_| "-".to_string(), |t| format!("{:.4}", t.p_two_tailed))
}

/// Baseline row, then one row per run with the signed relative change of
/// micro and macro F and, for cross-validated runs, the paired t-test p-value
/// over folds.
pub fn emit_improvement_table(baseline: &Summary, runs: &[Summary]) -> String {
    let mut s = String::from("run\tmicro_f1\tmacro_f1\tmicro_change\tmacro_change\tmicro_p\tmacro_p\n");
    let _ = writeln!(
        s,
        "{}\t{}\t{}\t-\t-\t-\t-",
        baseline.name,
        f6(baseline.micro_f),
        f6(baseline.macro_f)
    );
    for r in runs {
        let _ = writeln!(
            s,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}",
            r.name,
            f6(r.micro_f),
            f6(r.macro_f),
            change(baseline.micro_f, r.micro_f),
            change(baseline.macro_f, r.macro_f),
            p_value(&baseline.fold_micro, &r.fold_micro),
            p_value(&baseline.fold_macro, &r.fold_macro)
        );
    }
    s
}

/// Summaries read back from a `metrics.tsv`, in file order.
pub fn parse_metrics_tsv(text: &str) -> Result<Vec<Summary>, CliError> {
    let mut out: Vec<Summary> = Vec::new();
    for (n, line) in text.lines().enumerate().skip(1) {
        let cols: Vec<&str> = line.split('\t').collect();
        if cols.len() != 7 {
            return Err(CliError::Config(format!("metrics line {}: expected 7 columns", n + 1)));
        }
        if cols[2] != "*" {
            continue;
        }
        let num = |s: &str| {
            s.parse::<f64>()
                .map_err(|_| CliError::Config(format!("metrics line {}: bad number {s:?}", n + 1)))
        };
        let (micro, macro_) = (num(cols[5])?, num(cols[6])?);
        if out.last().is_none_or(|s| s.name != cols[0]) {
            out.push(Summary {
                name: cols[0].to_string(),
                micro_f: 0.0,
                macro_f: 0.0,
                fold_micro: Vec::new(),
                fold_macro: Vec::new(),
            });
        }
        let cur = out.last_mut().expect("pushed above");
        if cols[1].starts_with("fold") {
            cur.fold_micro.push(micro);
            cur.fold_macro.push(macro_);
        }
        if cols[1] == "mean" || cols[1] == "test" || cols[1].starts_with("fold") {
            cur.micro_f = micro;
            cur.macro_f = macro_;
        }
    }
    Ok(out)
}

fn sha256_file(path: &Path, hasher: &mut Sha256) -> std::io::Result<()> {
    let mut f = std::fs::File::open(path)?;
    std::io::copy(&mut f, hasher)?;
    Ok(())
}

/// SHA-256 of a file, or of a directory tree: every file's relative path
/// and contents in sorted order.
pub fn checksum(path: &Path) -> std::io::Result<String> {
    let mut hasher = Sha256::new();
    if path.is_dir() {
        let mut files = Vec::new();
        let mut stack = vec![path.to_path_buf()];
        while let Some(dir) = stack.pop() {
            for entry in std::fs::read_dir(&dir)? {
                let p = entry?.path();
                if p.is_dir() {
                    stack.push(p);
                } else {
                    files.push(p);
                }
            }
        }
        files.sort();
        for f in files {
            let rel = f.strip_prefix(path).unwrap_or(&f);
            hasher.update(rel.to_string_lossy().as_bytes());
            hasher.update([0]);
            sha256_file(&f, &mut hasher)?;
        }
    } else {
        sha256_file(path, &mut hasher)?;
    }
    Ok(hex::encode(hasher.finalize()))
}

fn file_name_for(category: &str) -> String {
    category
        .chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || c == '-' || c == '.' {
                c
            } else {
                '_'
            }
        })
        .collect()
}

/// Fits on the training side (every document under cross-validation) and
/// writes the vocabulary and one model per category.
fn dump_models(cfg: &ExperimentConfig, prepared: &PreparedCorpus, categories: &[String], dir: &Path) -> kbcat::Result<()> {
    let train: Vec<&TaggedDocument> = prepared
        .raw
        .iter()
        .zip(&prepared.docs)
        .filter(|(r, _)| cfg.eval == EvalMode::Cv || r.split_hint == SplitHint::Train)
        .map(|(_, d)| d)
        .collect();
    let clf = fit::<f64>(&train, categories, &cfg.svm)?;
    let io = |p: &Path, e| kbcat::Error::Io {
        path: p.to_path_buf(),
        source: e,
    };
    std::fs::create_dir_all(dir).map_err(|e| io(dir, e))?;
    clf.vocabulary.save_tsv(&dir.join("vocabulary.tsv"))?;
    for (cat, model) in clf.models.categories.iter().zip(&clf.models.models) {
        let p = dir.join(format!("{}.model", file_name_for(cat)));
        std::fs::write(&p, write_model(model)).map_err(|e| io(&p, e))?;
    }
    Ok(())
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Stage {
        stage: Stage::Write,
        source: kbcat::Error::Io {
            path: path.to_path_buf(),
            source: e,
        },
    })
}

/// Runs the configured preset (and the baseline when asked) and writes the
/// run directory `cfg.out`.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentOutput, CliError> {
    cfg.validate()?;
    let mut timer = Timer(Vec::new());
    let LoadedCorpus { docs, categories } =
        timer.time(Stage::LoadCorpus, || at(Stage::LoadCorpus, load_corpus(cfg.dataset, &cfg.corpus)))?;
    if docs.is_empty() || categories.is_empty() {
        return Err(CliError::Stage {
            stage: Stage::LoadCorpus,
            source: kbcat::Error::InvalidInput(format!("{} holds no labelled documents", cfg.corpus.display())),
        });
    }
    info!("{} documents, {} categories", docs.len(), categories.len());
    let resources = timer.time(Stage::LoadResources, || at(Stage::LoadResources, load_resources(cfg)))?;
    let index = match (&cfg.kb, cfg.preset.is_enriching()) {
        (Some(kb), true) => Some(timer.time(Stage::LoadIndex, || at(Stage::LoadIndex, load_index(kb)))?),
        _ => None,
    };

    let mut presets = vec![cfg.preset.clone()];
    if cfg.compare_baseline && cfg.preset != Preset::baseline() {
        presets.insert(0, Preset::baseline());
    }
    let mut results = Vec::new();
    let mut prepared_main = None;
    for preset in &presets {
        let prepared = timer.time(Stage::Prepare, || {
            at(Stage::Prepare, prepare_corpus(docs.clone(), preset, index.as_ref(), &resources))
        })?;
        results.push(timer.time(Stage::Evaluate, || {
            at(Stage::Evaluate, evaluate(cfg, preset, &prepared, &categories))
        })?);
        prepared_main = Some(prepared);
    }
    let run = results.pop().expect("at least one preset");
    let baseline = results.pop().or_else(|| cfg.compare_baseline.then(|| run.clone()));

    let dir = cfg.out.clone();
    std::fs::create_dir_all(&dir).map_err(|e| CliError::io(&dir, e))?;
    if cfg.dump_models {
        let prepared = prepared_main.as_ref().expect("prepared above");
        let models = dir.join(MODELS_DIR);
        timer.time(Stage::DumpModels, || {
            at(Stage::DumpModels, dump_models(cfg, prepared, &categories, &models))
        })?;
    }

    let mut outputs = BTreeMap::new();
    let all: Vec<&RunResult> = baseline.iter().filter(|b| b.name != run.name).chain([&run]).collect();
    let metrics = metrics_tsv(&all);
    write(&dir.join(METRICS_FILE), &metrics)?;
    outputs.insert(METRICS_FILE.to_string(), hex::encode(Sha256::digest(metrics.as_bytes())));
    if let Some(b) = &baseline {
        let table = emit_improvement_table(&b.into(), &[(&run).into()]);
        write(&dir.join(IMPROVEMENT_FILE), &table)?;
        outputs.insert(IMPROVEMENT_FILE.to_string(), hex::encode(Sha256::digest(table.as_bytes())));
    }

    let mut inputs = BTreeMap::new();
    for (key, p) in [
        ("corpus", Some(&cfg.corpus)),
        ("kb", cfg.kb.as_ref()),
        ("stoplist", cfg.stoplist.as_ref()),
        ("gazetteer", cfg.gazetteer.as_ref()),
        ("lexicon", cfg.lexicon.as_ref()),
    ] {
        if let Some(p) = p {
            inputs.insert(key.to_string(), checksum(p).map_err(|e| CliError::io(p, e))?);
        }
    }
    let manifest = RunManifest {
        version: env!("CARGO_PKG_VERSION").to_string(),
        config: cfg.snapshot(),
        seed: cfg.seed,
        inputs,
        outputs,
        timings: timer.0,
    };
    let json = serde_json::to_string_pretty(&manifest).map_err(|e| CliError::Stage {
        stage: Stage::Write,
        source: e.into(),
    })?;
    write(&dir.join(MANIFEST_FILE), &json)?;
    Ok(ExperimentOutput {
        run,
        baseline,
        manifest,
        dir,
    })
}

/// What enrichment does to one document.
#[derive(Debug, Clone)]
pub struct Preview {
    pub original: Vec<String>,
    pub titles: Vec<String>,
    pub categories: Vec<String>,
    pub linked_concepts: Vec<String>,
    pub appended: Vec<String>,
}

pub fn preview_enrichment(cfg: &ExperimentConfig, doc_id: &str) -> Result<Preview, CliError> {
    let LoadedCorpus { docs, .. } = at(Stage::LoadCorpus, load_corpus(cfg.dataset, &cfg.corpus))?;
    let raw = docs.iter().find(|d| d.id == doc_id).ok_or_else(|| CliError::Stage {
        stage: Stage::LoadCorpus,
        source: kbcat::Error::InvalidInput(format!("no document with id {doc_id:?}")),
    })?;
    let resources = at(Stage::LoadResources, load_resources(cfg))?;
    let index = match &cfg.kb {
        Some(kb) => at(Stage::LoadIndex, load_index(kb))?,
        None => at(Stage::LoadIndex, Index::build(Vec::new()))?,
    };
    let base = at(
        Stage::Prepare,
        kbcat::textproc::represent(raw, cfg.preset.representation, &resources),
    )?;
    let gathered = at(Stage::Prepare, cfg.preset.gather(&base, &index))?;
    let enriched = at(Stage::Prepare, apply_preset(raw, &cfg.preset, &index, &resources))?;
    Ok(Preview {
        original: base.surfaces().map(str::to_string).collect(),
        titles: gathered.titles,
        categories: gathered.categories,
        linked_concepts: gathered.linked_concepts,
        appended: enriched.tokens[base.tokens.len()..]
            .iter()
            .map(|(t, _)| t.surface.clone())
            .collect(),
    })
}

/// Label mode in effect, for display.
pub fn describe(cfg: &ExperimentConfig) -> String {
    let mode = match cfg.label_mode {
        LabelMode::MultiLabel => "multi-label",
        LabelMode::SingleLabel => "single-label",
    };
    format!("{} on {} ({}, {mode})", cfg.preset.name, cfg.dataset, cfg.eval.as_str())
}
