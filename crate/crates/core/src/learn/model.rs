use std::fmt::Write as _;

use crate::features::SparseVector;
use crate::{Error, Result, Scalar};

#[derive(Debug, Clone, PartialEq)]
pub struct LinearModel<F> {
    pub weights: Vec<F>,
    pub bias: F,
}

impl<F: Scalar> LinearModel<F> {
    pub fn zero(dim: usize, bias: F) -> Self {
        LinearModel {
            weights: vec![F::zero(); dim],
            bias,
        }
    }

    /// `w·x + b`.
    pub fn decision(&self, x: &SparseVector<F>) -> F {
        x.dot(&self.weights) + self.bias
    }
}

/// Header `bias<TAB>value`, then one `featureIndex<TAB>weight` line per
/// dimension.
pub fn write_model<F: Scalar>(model: &LinearModel<F>) -> String {
    let mut out = format!("bias\t{}\n", model.bias);
    for (i, w) in model.weights.iter().enumerate() {
        let _ = writeln!(out, "{i}\t{w}");
    }
    out
}

pub fn parse_model<F: Scalar>(text: &str) -> Result<LinearModel<F>> {
    let bad = |line: usize, what: &str| Error::InvalidInput(format!("model dump line {line}: {what}"));
    let mut lines = text.lines().enumerate();
    let bias = match lines.next() {
        Some((_, l)) => match l.split_once('\t') {
            Some(("bias", v)) => v.parse::<F>().map_err(|_| bad(1, "unparsable bias"))?,
            _ => return Err(bad(1, "expected bias header")),
        },
        None => return Err(bad(1, "empty dump")),
    };
    let mut weights = Vec::new();
    for (n, l) in lines {
        if l.is_empty() {
            continue;
        }
        let (i, w) = l.split_once('\t').ok_or_else(|| bad(n + 1, "expected index<TAB>weight"))?;
        let i: usize = i.parse().map_err(|_| bad(n + 1, "bad index"))?;
        if i != weights.len() {
            return Err(bad(n + 1, "indices must be dense and increasing"));
        }
        weights.push(w.parse::<F>().map_err(|_| bad(n + 1, "bad weight"))?);
    }
    Ok(LinearModel { weights, bias })
}
