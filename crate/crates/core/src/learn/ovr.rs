use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use log::warn;
use rayon::prelude::*;

use super::{train_binary_svm, LinearModel, TrainConfig};
use crate::features::SparseVector;
use crate::{Error, Result, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LabelMode {
    /// Every category with a positive decision value.
    MultiLabel,
    /// The single highest-scoring category.
    SingleLabel,
}

impl fmt::Display for LabelMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LabelMode::MultiLabel => "multi",
            LabelMode::SingleLabel => "single",
        })
    }
}

impl FromStr for LabelMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "multi" | "multi-label" | "MultiLabel" => Ok(LabelMode::MultiLabel),
            "single" | "single-label" | "SingleLabel" => Ok(LabelMode::SingleLabel),
            _ => Err(Error::Config(format!("unknown label mode {s:?} (expected multi or single)"))),
        }
    }
}

/// One binary model per category, in category order.
#[derive(Debug, Clone, PartialEq)]
pub struct OneVsRest<F> {
    pub categories: Vec<String>,
    pub models: Vec<LinearModel<F>>,
    /// Categories left out for lack of positive training examples.
    pub skipped: Vec<String>,
}

/// Trains the binary problems in parallel; the result does not depend on
/// scheduling.
pub fn train_one_vs_rest<F: Scalar>(
    x: &[SparseVector<F>],
    labelsets: &[BTreeSet<String>],
    categories: &[String],
    cfg: &TrainConfig,
) -> Result<OneVsRest<F>> {
    if x.len() != labelsets.len() {
        return Err(Error::InvalidInput(format!(
            "{} vectors but {} label sets",
            x.len(),
            labelsets.len()
        )));
    }
    let trained: Vec<Result<Option<LinearModel<F>>>> = categories
        .par_iter()
        .map(|cat| {
            let y: Vec<i8> = labelsets.iter().map(|l| if l.contains(cat) { 1 } else { -1 }).collect();
            if !y.contains(&1) {
                warn!("category {cat:?} has no positive training examples; skipped");
                return Ok(None);
            }
            train_binary_svm(x, &y, cfg).map(Some)
        })
        .collect();
    let mut out = OneVsRest {
        categories: Vec::new(),
        models: Vec::new(),
        skipped: Vec::new(),
    };
    for (cat, r) in categories.iter().zip(trained) {
        match r? {
            Some(m) => {
                out.categories.push(cat.clone());
                out.models.push(m);
            }
            None => out.skipped.push(cat.clone()),
        }
    }
    Ok(out)
}

impl<F: Scalar> OneVsRest<F> {
    pub fn is_empty(&self) -> bool {
        self.models.is_empty()
    }

    pub fn decision_values(&self, x: &SparseVector<F>) -> Vec<F> {
        self.models.iter().map(|m| m.decision(x)).collect()
    }

    pub fn predict(&self, x: &SparseVector<F>, mode: LabelMode) -> BTreeSet<String> {
        Self::select(&self.categories, &self.decision_values(x), mode)
    }

    /// Applies the label rule to precomputed decision values.
    pub fn select(categories: &[String], values: &[F], mode: LabelMode) -> BTreeSet<String> {
        match mode {
            LabelMode::MultiLabel => categories
                .iter()
                .zip(values)
                .filter(|(_, &v)| v > F::zero())
                .map(|(c, _)| c.clone())
                .collect(),
            LabelMode::SingleLabel => {
                let mut best: Option<(usize, F)> = None;
                for (i, &v) in values.iter().enumerate() {
                    if best.is_none_or(|(_, b)| v > b) {
                        best = Some((i, v));
                    }
                }
                best.map(|(i, _)| categories[i].clone()).into_iter().collect()
            }
        }
    }
}
