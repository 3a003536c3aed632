//! Flat `key = value` experiment configuration.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use kbcat::enrich::{Preset, PresetName, Strategy};
use kbcat::learn::{LabelMode, TrainConfig};
use kbcat::textproc::Representation;

use crate::CliError;

/// Every key a config file may set.
pub const KEYS: &[&str] = &[
    "dataset",
    "corpus",
    "kb",
    "stoplist",
    "gazetteer",
    "lexicon",
    "preset",
    "representation",
    "strategies",
    "k",
    "min_rank",
    "include_linked",
    "e4",
    "e5",
    "title_term",
    "svm_c",
    "svm_tolerance",
    "svm_max_epochs",
    "seed",
    "eval",
    "cv_k",
    "label_mode",
    "out",
    "dump_models",
    "compare_baseline",
];

/// Keys that refine the preset; any of them turns a named preset into a
/// custom one when they change its definition.
const PRESET_KEYS: &[&str] = &[
    "representation",
    "strategies",
    "k",
    "min_rank",
    "include_linked",
    "e4",
    "e5",
    "title_term",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dataset {
    /// Reuters-21578, ModApte, ten most frequent categories.
    Reuters10,
    /// Reuters-21578, ModApte, categories with a training and a test document.
    Reuters90,
    /// 20-Newsgroups directory tree.
    News20,
    /// Tab-separated `id, labels, split, text` file.
    Custom,
}

impl Dataset {
    pub fn as_str(self) -> &'static str {
        match self {
            Dataset::Reuters10 => "reuters10",
            Dataset::Reuters90 => "reuters90",
            Dataset::News20 => "news20",
            Dataset::Custom => "custom",
        }
    }
}

impl FromStr for Dataset {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "reuters10" => Ok(Dataset::Reuters10),
            "reuters90" => Ok(Dataset::Reuters90),
            "news20" => Ok(Dataset::News20),
            "custom" => Ok(Dataset::Custom),
            _ => Err(format!("unknown dataset {s:?} (expected reuters10, reuters90, news20 or custom)")),
        }
    }
}

impl fmt::Display for Dataset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalMode {
    /// Stratified k-fold cross-validation.
    Cv,
    /// The corpus' own train/test split.
    Split,
}

impl EvalMode {
    pub fn as_str(self) -> &'static str {
        match self {
            EvalMode::Cv => "cv",
            EvalMode::Split => "split",
        }
    }
}

impl FromStr for EvalMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "cv" => Ok(EvalMode::Cv),
            "split" => Ok(EvalMode::Split),
            _ => Err(format!("unknown eval mode {s:?} (expected cv or split)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub dataset: Dataset,
    pub corpus: PathBuf,
    /// Dump file or saved index directory.
    pub kb: Option<PathBuf>,
    /// Defaults to the bundled SMART list.
    pub stoplist: Option<PathBuf>,
    pub gazetteer: Option<PathBuf>,
    pub lexicon: Option<PathBuf>,
    pub preset: Preset,
    /// `svm.seed` always equals `seed`.
    pub svm: TrainConfig,
    pub seed: u64,
    pub eval: EvalMode,
    pub cv_k: usize,
    pub label_mode: LabelMode,
    pub out: PathBuf,
    pub dump_models: bool,
    pub compare_baseline: bool,
}

fn bad(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

fn parse_value<T: FromStr>(key: &str, value: &str) -> Result<T, CliError>
where
    T::Err: fmt::Display,
{
    value.parse().map_err(|e| bad(format!("{key}: cannot parse {value:?}: {e}")))
}

fn parse_bool(key: &str, value: &str) -> Result<bool, CliError> {
    match value {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        _ => Err(bad(format!("{key}: expected true or false, got {value:?}"))),
    }
}

fn parse_strategies(value: &str) -> Result<BTreeSet<Strategy>, CliError> {
    if value == "none" || value.is_empty() {
        return Ok(BTreeSet::new());
    }
    value
        .split(',')
        .map(|s| s.parse::<Strategy>().map_err(|e| bad(format!("strategies: {e}"))))
        .collect()
}

/// Splits the text into key/value pairs, rejecting unknown and repeated keys.
fn parse_pairs(text: &str) -> Result<BTreeMap<String, String>, CliError> {
    let mut pairs = BTreeMap::new();
    let mut unknown = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.split_once('#').map_or(line, |(before, _)| before).trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| bad(format!("line {}: expected key = value, got {line:?}", n + 1)))?;
        let key = key.trim();
        if !KEYS.contains(&key) {
            unknown.push(key.to_string());
            continue;
        }
        if pairs.insert(key.to_string(), value.trim().to_string()).is_some() {
            return Err(bad(format!("line {}: key {key:?} set twice", n + 1)));
        }
    }
    if !unknown.is_empty() {
        return Err(bad(format!("unknown keys: {}", unknown.join(", "))));
    }
    Ok(pairs)
}

fn resolve(base: &Path, value: &str) -> Result<PathBuf, CliError> {
    std::path::absolute(base.join(value)).map_err(|e| bad(format!("cannot resolve path {value:?}: {e}")))
}

impl ExperimentConfig {
    /// Parses config text; relative paths are taken against `base`.
    pub fn parse(text: &str, base: &Path) -> Result<Self, CliError> {
        let pairs = parse_pairs(text)?;
        let get = |k: &str| pairs.get(k).map(String::as_str);
        let required = |k: &str| get(k).ok_or_else(|| bad(format!("missing required key {k:?}")));
        let path = |k: &str| get(k).map(|v| resolve(base, v)).transpose();

        let dataset: Dataset = parse_value("dataset", required("dataset")?)?;
        let corpus = resolve(base, required("corpus")?)?;
        let out = resolve(base, required("out")?)?;

        let preset = resolve_preset(&pairs)?;
        let seed: u64 = get("seed").map(|v| parse_value("seed", v)).transpose()?.unwrap_or(42);
        let defaults = TrainConfig::default();
        let svm = TrainConfig {
            c: get("svm_c").map(|v| parse_value("svm_c", v)).transpose()?.unwrap_or(defaults.c),
            tolerance: get("svm_tolerance")
                .map(|v| parse_value("svm_tolerance", v))
                .transpose()?
                .unwrap_or(defaults.tolerance),
            max_epochs: get("svm_max_epochs")
                .map(|v| parse_value("svm_max_epochs", v))
                .transpose()?
                .unwrap_or(defaults.max_epochs),
            seed,
        };
        svm.validate().map_err(|e| bad(e.to_string()))?;

        let eval = match get("eval") {
            Some(v) => parse_value("eval", v)?,
            None if matches!(dataset, Dataset::Reuters10 | Dataset::Reuters90) => EvalMode::Split,
            None => EvalMode::Cv,
        };
        let label_mode = match get("label_mode") {
            Some(v) => parse_value("label_mode", v)?,
            None if dataset == Dataset::News20 => LabelMode::SingleLabel,
            None => LabelMode::MultiLabel,
        };
        let cv_k: usize = get("cv_k").map(|v| parse_value("cv_k", v)).transpose()?.unwrap_or(4);
        if cv_k < 2 {
            return Err(bad(format!("cv_k must be at least 2, got {cv_k}")));
        }

        let cfg = ExperimentConfig {
            dataset,
            corpus,
            kb: path("kb")?,
            stoplist: path("stoplist")?,
            gazetteer: path("gazetteer")?,
            lexicon: path("lexicon")?,
            preset,
            svm,
            seed,
            eval,
            cv_k,
            label_mode,
            out,
            dump_models: get("dump_models")
                .map(|v| parse_bool("dump_models", v))
                .transpose()?
                .unwrap_or(false),
            compare_baseline: get("compare_baseline")
                .map(|v| parse_bool("compare_baseline", v))
                .transpose()?
                .unwrap_or(false),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Checks that every input exists and that the preset's resources are
    /// configured.
    pub fn validate(&self) -> Result<(), CliError> {
        let inputs = [
            ("corpus", Some(&self.corpus)),
            ("kb", self.kb.as_ref()),
            ("stoplist", self.stoplist.as_ref()),
            ("gazetteer", self.gazetteer.as_ref()),
            ("lexicon", self.lexicon.as_ref()),
        ];
        for (key, p) in inputs {
            if let Some(p) = p {
                if !p.exists() {
                    return Err(bad(format!("{key}: {} does not exist", p.display())));
                }
            }
        }
        if self.preset.is_enriching() && self.kb.is_none() {
            return Err(bad(format!("preset {} enriches documents and needs key \"kb\"", self.preset.name)));
        }
        let rep = self.preset.representation;
        if rep.is_tagged() && self.gazetteer.is_none() {
            return Err(bad(format!("representation {rep} needs key \"gazetteer\"")));
        }
        if matches!(rep, Representation::T3 | Representation::T4) && self.lexicon.is_none() {
            return Err(bad(format!("representation {rep} needs key \"lexicon\"")));
        }
        if self.preset.strategies.iter().any(|s| *s != Strategy::E3) && rep.is_tagged() {
            return Err(bad(format!("strategies E1 and E2 need an untagged representation, got {rep}")));
        }
        Ok(())
    }

    /// Replaces the preset with a named one, as the `--preset` flag does.
    pub fn set_preset(&mut self, name: PresetName) -> Result<(), CliError> {
        self.preset = Preset::by_name(name).map_err(|e| bad(e.to_string()))?;
        self.validate()
    }

    pub fn set_seed(&mut self, seed: u64) {
        self.seed = seed;
        self.svm.seed = seed;
    }

    /// Every key with its effective value. Parsing the result gives back an
    /// equal config.
    pub fn snapshot(&self) -> String {
        let mut s = String::new();
        let mut put = |k: &str, v: &dyn fmt::Display| {
            let _ = writeln!(s, "{k} = {v}");
        };
        let p = &self.preset;
        put("dataset", &self.dataset);
        put("corpus", &self.corpus.display());
        for (k, v) in [
            ("kb", &self.kb),
            ("stoplist", &self.stoplist),
            ("gazetteer", &self.gazetteer),
            ("lexicon", &self.lexicon),
        ] {
            if let Some(v) = v {
                put(k, &v.display());
            }
        }
        put("preset", &p.name);
        put("representation", &p.representation);
        let strategies: Vec<String> = p.strategies.iter().map(ToString::to_string).collect();
        put(
            "strategies",
            &if strategies.is_empty() {
                "none".to_string()
            } else {
                strategies.join(",")
            },
        );
        put("k", &p.k);
        put("min_rank", &p.e2.min_rank);
        put("include_linked", &p.include_linked);
        put("e4", &p.e4);
        put("e5", &p.e5);
        if let Some(t) = &p.e2.title_term {
            put("title_term", t);
        }
        put("svm_c", &self.svm.c);
        put("svm_tolerance", &self.svm.tolerance);
        put("svm_max_epochs", &self.svm.max_epochs);
        put("seed", &self.seed);
        put("eval", &self.eval.as_str());
        put("cv_k", &self.cv_k);
        put("label_mode", &self.label_mode);
        put("out", &self.out.display());
        put("dump_models", &self.dump_models);
        put("compare_baseline", &self.compare_baseline);
        s
    }

    /// The same experiment with the unenriched T1 preset.
    pub fn baseline(&self) -> Self {
        ExperimentConfig {
            preset: Preset::baseline(),
            ..self.clone()
        }
    }
}

/// Starts from the named preset (baseline when absent) and applies the
/// refining keys. The name becomes `custom` when they change anything.
fn resolve_preset(pairs: &BTreeMap<String, String>) -> Result<Preset, CliError> {
    let name: PresetName = match pairs.get("preset") {
        Some(v) => v.parse().map_err(|e: kbcat::Error| bad(e.to_string()))?,
        None => PresetName::Baseline,
    };
    let base = match name {
        PresetName::Custom => Preset {
            name: PresetName::Custom,
            ..Preset::baseline()
        },
        n => Preset::by_name(n).map_err(|e| bad(e.to_string()))?,
    };
    let mut p = base.clone();
    for key in PRESET_KEYS {
        let Some(v) = pairs.get(*key) else { continue };
        match *key {
            "representation" => p.representation = parse_value(key, v)?,
            "strategies" => p.strategies = parse_strategies(v)?,
            "k" => p.k = parse_value(key, v)?,
            "min_rank" => p.e2.min_rank = parse_value(key, v)?,
            "include_linked" => p.include_linked = parse_bool(key, v)?,
            "e4" => p.e4 = parse_bool(key, v)?,
            "e5" => p.e5 = parse_bool(key, v)?,
            "title_term" => p.e2.title_term = Some(v.clone()),
            _ => unreachable!("{key} listed in PRESET_KEYS"),
        }
    }
    if p != base {
        p.name = PresetName::Custom;
    }
    if p.is_enriching() && p.k == 0 {
        return Err(bad("k must be at least 1 when strategies are set"));
    }
    Ok(p)
}

/// Reads and parses a config file; relative paths are taken against the
/// file's directory.
pub fn load_config(path: &Path) -> Result<ExperimentConfig, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let base = path.parent().unwrap_or(Path::new("."));
    ExperimentConfig::parse(&text, base)
}
