//! Glue between the stages: enrich every document once, then fit a
//! vocabulary and one-vs-rest SVMs on a training subset and label the rest.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::corpus::RawDocument;
use crate::enrich::{apply_preset, Preset};
use crate::eval::{accumulate, ContingencyTable};
use crate::features::{fit_vocabulary_iter, vectorize, SparseVector, Vocabulary};
use crate::kbindex::Index;
use crate::learn::{train_one_vs_rest, LabelMode, OneVsRest, TrainConfig};
use crate::textproc::{Resources, TaggedDocument};
use crate::{Error, Result, Scalar};

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineConfig {
    pub preset: Preset,
    pub svm: TrainConfig,
    pub label_mode: LabelMode,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            preset: Preset::baseline(),
            svm: TrainConfig::default(),
            label_mode: LabelMode::MultiLabel,
        }
    }
}

/// Raw documents alongside their represented and enriched forms.
#[derive(Debug, Clone)]
pub struct PreparedCorpus {
    pub raw: Vec<RawDocument>,
    pub docs: Vec<TaggedDocument>,
}

/// Represents and enriches every document. Enrichment reads only the
/// knowledge base, so doing it once before any split leaks nothing between
/// folds.
pub fn prepare_corpus(raw: Vec<RawDocument>, preset: &Preset, index: Option<&Index>, resources: &Resources) -> Result<PreparedCorpus> {
    let empty;
    let index = match index {
        Some(i) => i,
        None if preset.is_enriching() => return Err(Error::Config(format!("preset {} needs a knowledge-base index", preset.name))),
        None => {
            empty = Index::build(Vec::new())?;
            &empty
        }
    };
    let docs = raw
        .par_iter()
        .map(|d| apply_preset(d, preset, index, resources).map_err(|e| Error::InvalidInput(format!("preparing document {}: {e}", d.id))))
        .collect::<Result<Vec<_>>>()?;
    Ok(PreparedCorpus { raw, docs })
}

#[derive(Debug, Clone)]
pub struct Classifier<F> {
    pub vocabulary: Vocabulary,
    pub models: OneVsRest<F>,
}

impl<F: Scalar> Classifier<F> {
    pub fn vectorize(&self, doc: &TaggedDocument) -> SparseVector<F> {
        vectorize(doc, &self.vocabulary)
    }

    pub fn predict(&self, doc: &TaggedDocument, mode: LabelMode) -> BTreeSet<String> {
        self.models.predict(&self.vectorize(doc), mode)
    }
}

/// Fits the vocabulary and models on `train` only.
pub fn fit<F: Scalar>(train: &[&TaggedDocument], categories: &[String], svm: &TrainConfig) -> Result<Classifier<F>> {
    let vocabulary = fit_vocabulary_iter(train.iter().copied())?;
    let x: Vec<SparseVector<F>> = train.par_iter().map(|d| vectorize(d, &vocabulary)).collect();
    let labels: Vec<BTreeSet<String>> = train.iter().map(|d| d.labels.clone()).collect();
    let models = train_one_vs_rest(&x, &labels, categories, svm)?;
    Ok(Classifier { vocabulary, models })
}

/// Contingency counts of `clf` on `test`.
pub fn evaluate<F: Scalar>(
    clf: &Classifier<F>,
    test: &[&TaggedDocument],
    categories: &[String],
    mode: LabelMode,
) -> Result<ContingencyTable> {
    let pred: Vec<BTreeSet<String>> = test.par_iter().map(|d| clf.predict(d, mode)).collect();
    let gold: Vec<BTreeSet<String>> = test.iter().map(|d| d.labels.clone()).collect();
    accumulate(&gold, &pred, categories)
}
