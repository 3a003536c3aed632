use std::collections::BTreeMap;

use log::warn;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::RawDocument;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoldAssignment {
    pub k: usize,
    pub assignment: BTreeMap<String, usize>,
}

impl FoldAssignment {
    pub fn fold_of(&self, id: &str) -> Option<usize> {
        self.assignment.get(id).copied()
    }

    pub fn fold_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.k];
        for &f in self.assignment.values() {
            sizes[f] += 1;
        }
        sizes
    }
}

/// Stratified fold assignment.
///
/// Documents are grouped by their smallest label; each group is sorted by id,
/// shuffled with a generator seeded once from `seed`, and dealt round-robin.
/// The dealing position carries over between groups so overall fold sizes
/// also stay within one of each other.
pub fn make_folds(docs: &[RawDocument], k: usize, seed: u64) -> Result<FoldAssignment> {
    if k < 2 {
        return Err(Error::InvalidInput(format!("fold count must be at least 2, got {k}")));
    }
    let mut strata: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
    for doc in docs {
        let key = doc
            .stratum()
            .ok_or_else(|| Error::InvalidInput(format!("document {} has no label", doc.id)))?;
        strata.entry(key).or_default().push(doc.id.as_str());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut assignment = BTreeMap::new();
    let mut next = 0usize;
    for (label, mut ids) in strata {
        if ids.len() < k {
            warn!("stratum {label:?} has {} documents for {k} folds", ids.len());
        }
        ids.sort_unstable();
        ids.shuffle(&mut rng);
        for id in ids {
            if assignment.insert(id.to_string(), next).is_some() {
                return Err(Error::InvalidInput(format!("duplicate document id {id}")));
            }
            next = (next + 1) % k;
        }
    }
    Ok(FoldAssignment { k, assignment })
}
