use std::collections::BTreeSet;

use crate::scalar::MetricScalar;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CategoryCounts {
    pub tp: u64,
    pub fp: u64,
    pub fn_: u64,
    pub tn: u64,
}

impl CategoryCounts {
    pub fn total(&self) -> u64 {
        self.tp + self.fp + self.fn_ + self.tn
    }

    pub fn precision<M: MetricScalar>(&self) -> M {
        ratio(self.tp, self.tp + self.fp)
    }

    pub fn recall<M: MetricScalar>(&self) -> M {
        ratio(self.tp, self.tp + self.fn_)
    }

    pub fn f<M: MetricScalar>(&self) -> M {
        harmonic(self.precision(), self.recall())
    }
}

/// `num / den` with 0/0 taken as 0.
fn ratio<M: MetricScalar>(num: u64, den: u64) -> M {
    if den == 0 {
        M::zero()
    } else {
        M::from_count(num) / M::from_count(den)
    }
}

fn harmonic<M: MetricScalar>(p: M, r: M) -> M {
    let s = p + r;
    if s == M::zero() {
        M::zero()
    } else {
        (p * r + p * r) / s
    }
}

/// Per-category document decisions.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ContingencyTable {
    pub categories: Vec<String>,
    pub counts: Vec<CategoryCounts>,
    pub documents: u64,
}

impl ContingencyTable {
    pub fn get(&self, category: &str) -> Option<&CategoryCounts> {
        self.categories.iter().position(|c| c == category).map(|i| &self.counts[i])
    }

    /// Sums of tp, fp and fn over all categories.
    pub fn pooled(&self) -> CategoryCounts {
        self.counts.iter().fold(CategoryCounts::default(), |a, c| CategoryCounts {
            tp: a.tp + c.tp,
            fp: a.fp + c.fp,
            fn_: a.fn_ + c.fn_,
            tn: a.tn + c.tn,
        })
    }
}

pub fn accumulate(gold: &[BTreeSet<String>], pred: &[BTreeSet<String>], categories: &[String]) -> Result<ContingencyTable> {
    if gold.len() != pred.len() {
        return Err(Error::InvalidInput(format!(
            "{} gold label sets but {} predictions",
            gold.len(),
            pred.len()
        )));
    }
    let known: BTreeSet<&str> = categories.iter().map(String::as_str).collect();
    for label in gold.iter().chain(pred).flatten() {
        if !known.contains(label.as_str()) {
            return Err(Error::InvalidInput(format!(
                "label {label:?} is not among the evaluated categories"
            )));
        }
    }
    let counts = categories
        .iter()
        .map(|c| {
            let mut k = CategoryCounts::default();
            for (g, p) in gold.iter().zip(pred) {
                match (g.contains(c), p.contains(c)) {
                    (true, true) => k.tp += 1,
                    (false, true) => k.fp += 1,
                    (true, false) => k.fn_ += 1,
                    (false, false) => k.tn += 1,
                }
            }
            k
        })
        .collect();
    Ok(ContingencyTable {
        categories: categories.to_vec(),
        counts,
        documents: gold.len() as u64,
    })
}

pub fn micro_precision_recall<M: MetricScalar>(ct: &ContingencyTable) -> (M, M) {
    let p = ct.pooled();
    (p.precision(), p.recall())
}

/// F over pooled counts.
pub fn micro_f<M: MetricScalar>(ct: &ContingencyTable) -> M {
    ct.pooled().f()
}

/// Mean of per-category F; zero for an empty table.
pub fn macro_f<M: MetricScalar>(ct: &ContingencyTable) -> M {
    if ct.counts.is_empty() {
        return M::zero();
    }
    let sum = ct.counts.iter().fold(M::zero(), |a, c| a + c.f::<M>());
    sum / M::from_count(ct.counts.len() as u64)
}

#[derive(Debug, Clone, PartialEq)]
pub struct CategoryMetrics<M> {
    pub category: String,
    pub precision: M,
    pub recall: M,
    pub f: M,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MetricReport<M> {
    pub micro_precision: M,
    pub micro_recall: M,
    pub micro_f: M,
    pub macro_f: M,
    pub per_category: Vec<CategoryMetrics<M>>,
}

impl<M: MetricScalar> MetricReport<M> {
    pub fn from_table(ct: &ContingencyTable) -> Self {
        let (p, r) = micro_precision_recall(ct);
        MetricReport {
            micro_precision: p,
            micro_recall: r,
            micro_f: micro_f(ct),
            macro_f: macro_f(ct),
            per_category: ct
                .categories
                .iter()
                .zip(&ct.counts)
                .map(|(c, k)| CategoryMetrics {
                    category: c.clone(),
                    precision: k.precision(),
                    recall: k.recall(),
                    f: k.f(),
                })
                .collect(),
        }
    }
}
