use crate::corpus::{make_folds, SplitHint};
use crate::features::Vocabulary;
use crate::pipeline::{evaluate, fit, PipelineConfig, PreparedCorpus};
use crate::textproc::TaggedDocument;
use crate::{Error, Result, Scalar};

use super::MetricReport;

/// Sample mean and standard deviation (`n − 1` denominator).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanSd {
    pub mean: f64,
    pub sd: f64,
}

impl MeanSd {
    pub fn of(values: &[f64]) -> Self {
        let n = values.len();
        if n == 0 {
            return MeanSd { mean: 0.0, sd: 0.0 };
        }
        let mean = values.iter().sum::<f64>() / n as f64;
        let sd = if n < 2 {
            0.0
        } else {
            (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64).sqrt()
        };
        MeanSd { mean, sd }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FoldReport {
    pub fold: usize,
    pub train_size: usize,
    pub test_size: usize,
    pub report: MetricReport<f64>,
    /// Categories without positive training examples in this fold.
    pub skipped: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CvOutcome {
    pub folds: Vec<FoldReport>,
    pub micro_precision: MeanSd,
    pub micro_recall: MeanSd,
    pub micro_f: MeanSd,
    pub macro_f: MeanSd,
}

impl CvOutcome {
    fn summarise(folds: Vec<FoldReport>) -> Self {
        let col = |f: fn(&MetricReport<f64>) -> f64| MeanSd::of(&folds.iter().map(|r| f(&r.report)).collect::<Vec<_>>());
        CvOutcome {
            micro_precision: col(|r| r.micro_precision),
            micro_recall: col(|r| r.micro_recall),
            micro_f: col(|r| r.micro_f),
            macro_f: col(|r| r.macro_f),
            folds,
        }
    }
}

fn train_and_score<F: Scalar>(
    fold: usize,
    train: &[&TaggedDocument],
    test: &[&TaggedDocument],
    categories: &[String],
    cfg: &PipelineConfig,
    hook: &mut dyn FnMut(usize, &[&str], &Vocabulary),
) -> Result<FoldReport> {
    let clf = fit::<F>(train, categories, &cfg.svm)?;
    let ids: Vec<&str> = train.iter().map(|d| d.id.as_str()).collect();
    hook(fold, &ids, &clf.vocabulary);
    let ct = evaluate(&clf, test, categories, cfg.label_mode)?;
    Ok(FoldReport {
        fold,
        train_size: train.len(),
        test_size: test.len(),
        report: MetricReport::from_table(&ct),
        skipped: clf.models.skipped.clone(),
    })
}

/// Stratified k-fold cross-validation over the whole prepared corpus.
pub fn run_cv<F: Scalar>(corpus: &PreparedCorpus, categories: &[String], cfg: &PipelineConfig, k: usize, seed: u64) -> Result<CvOutcome> {
    run_cv_with_hook::<F>(corpus, categories, cfg, k, seed, &mut |_, _, _| {})
}

/// As [`run_cv`]; `hook(fold, ids, vocabulary)` sees each fold's fitted
/// vocabulary and the ids of the documents it was fitted on.
pub fn run_cv_with_hook<F: Scalar>(
    corpus: &PreparedCorpus,
    categories: &[String],
    cfg: &PipelineConfig,
    k: usize,
    seed: u64,
    hook: &mut dyn FnMut(usize, &[&str], &Vocabulary),
) -> Result<CvOutcome> {
    let folds = make_folds(&corpus.raw, k, seed)?;
    let mut reports = Vec::with_capacity(k);
    for fold in 0..k {
        let (mut train, mut test) = (Vec::new(), Vec::new());
        for d in &corpus.docs {
            if folds.fold_of(&d.id) == Some(fold) {
                test.push(d);
            } else {
                train.push(d);
            }
        }
        let report =
            train_and_score::<F>(fold, &train, &test, categories, cfg, hook).map_err(|e| Error::Fold { fold, source: Box::new(e) })?;
        reports.push(report);
    }
    Ok(CvOutcome::summarise(reports))
}

/// Train on documents marked `Train`, test on those marked `Test`; the rest
/// are ignored.
pub fn evaluate_split<F: Scalar>(corpus: &PreparedCorpus, categories: &[String], cfg: &PipelineConfig) -> Result<FoldReport> {
    let (mut train, mut test) = (Vec::new(), Vec::new());
    for (raw, d) in corpus.raw.iter().zip(&corpus.docs) {
        match raw.split_hint {
            SplitHint::Train => train.push(d),
            SplitHint::Test => test.push(d),
            SplitHint::Unsplit => {}
        }
    }
    if train.is_empty() || test.is_empty() {
        return Err(Error::InvalidInput(format!(
            "fixed split needs train and test documents ({} train, {} test)",
            train.len(),
            test.len()
        )));
    }
    train_and_score::<F>(0, &train, &test, categories, cfg, &mut |_, _, _| {})
}
