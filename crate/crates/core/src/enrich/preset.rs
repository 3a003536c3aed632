use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use super::filters::{clean_e5, filter_e4};
use super::strategies::{enrich_e1, enrich_e2, enrich_e3, E2Options, EnrichmentOutput};
use crate::corpus::RawDocument;
use crate::kbindex::Index;
use crate::textproc::{represent, EntityTag, Representation, Resources, TaggedDocument, Token};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Strategy {
    E1,
    E2,
    E3,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::E1 => "E1",
            Strategy::E2 => "E2",
            Strategy::E3 => "E3",
        })
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "E1" => Ok(Strategy::E1),
            "E2" => Ok(Strategy::E2),
            "E3" => Ok(Strategy::E3),
            _ => Err(Error::Config(format!("unknown strategy {s:?} (expected E1, E2 or E3)"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PresetName {
    Baseline,
    A1,
    A2,
    A3,
    A4,
    A5,
    Custom,
}

impl PresetName {
    pub const NAMED: [PresetName; 6] = [
        PresetName::Baseline,
        PresetName::A1,
        PresetName::A2,
        PresetName::A3,
        PresetName::A4,
        PresetName::A5,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            PresetName::Baseline => "baseline",
            PresetName::A1 => "A1",
            PresetName::A2 => "A2",
            PresetName::A3 => "A3",
            PresetName::A4 => "A4",
            PresetName::A5 => "A5",
            PresetName::Custom => "custom",
        }
    }
}

impl fmt::Display for PresetName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PresetName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "baseline" | "Baseline" => Ok(PresetName::Baseline),
            "A1" | "a1" => Ok(PresetName::A1),
            "A2" | "a2" => Ok(PresetName::A2),
            "A3" | "a3" => Ok(PresetName::A3),
            "A4" | "a4" => Ok(PresetName::A4),
            "A5" | "a5" => Ok(PresetName::A5),
            "custom" => Ok(PresetName::Custom),
            _ => Err(Error::Config(format!("unknown preset {s:?} (expected A1..A5 or baseline)"))),
        }
    }
}

/// A representation plus an enrichment recipe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Preset {
    pub name: PresetName,
    pub representation: Representation,
    pub strategies: BTreeSet<Strategy>,
    pub e4: bool,
    pub e5: bool,
    pub k: usize,
    pub include_linked: bool,
    pub e2: E2Options,
}

impl Preset {
    fn named(name: PresetName, strategies: &[Strategy], k: usize, include_linked: bool) -> Self {
        Preset {
            name,
            representation: Representation::T1,
            strategies: strategies.iter().copied().collect(),
            e4: true,
            e5: true,
            k,
            include_linked,
            e2: E2Options::default(),
        }
    }

    /// T1 without enrichment.
    pub fn baseline() -> Self {
        Self::named(PresetName::Baseline, &[], 0, false)
    }

    pub fn a1() -> Self {
        Self::named(PresetName::A1, &[Strategy::E1], 5, false)
    }

    pub fn a2() -> Self {
        Self::named(PresetName::A2, &[Strategy::E1], 20, false)
    }

    pub fn a3() -> Self {
        Self::named(PresetName::A3, &[Strategy::E2], 5, true)
    }

    pub fn a4() -> Self {
        Self::named(PresetName::A4, &[Strategy::E2], 20, true)
    }

    pub fn a5() -> Self {
        Self::named(PresetName::A5, &[Strategy::E1, Strategy::E2], 20, true)
    }

    pub fn by_name(name: PresetName) -> Result<Self> {
        Ok(match name {
            PresetName::Baseline => Self::baseline(),
            PresetName::A1 => Self::a1(),
            PresetName::A2 => Self::a2(),
            PresetName::A3 => Self::a3(),
            PresetName::A4 => Self::a4(),
            PresetName::A5 => Self::a5(),
            PresetName::Custom => return Err(Error::Config("custom preset has no fixed definition".into())),
        })
    }

    pub fn is_enriching(&self) -> bool {
        !self.strategies.is_empty()
    }

    /// Runs the strategies in E1, E2, E3 order and concatenates their output.
    pub fn gather(&self, doc: &TaggedDocument, index: &Index) -> Result<EnrichmentOutput> {
        let mut out = EnrichmentOutput::default();
        for s in &self.strategies {
            let part = match s {
                Strategy::E1 => enrich_e1(doc, index, self.k)?,
                Strategy::E2 => enrich_e2(doc, index, self.k, &self.e2)?,
                Strategy::E3 => enrich_e3(doc, index, self.k, &self.e2)?,
            };
            out.extend(part);
        }
        if !self.include_linked {
            out.linked_concepts.clear();
        }
        Ok(out)
    }

    /// Applies E4 and E5 as configured to the gathered terms. E4 runs again
    /// after cleaning so every surviving term passes it.
    pub fn filter_terms(&self, out: EnrichmentOutput, resources: &Resources) -> Result<Vec<String>> {
        let mut terms: Vec<String> = out.titles.into_iter().chain(out.categories).chain(out.linked_concepts).collect();
        if self.e4 {
            terms.retain(|t| filter_e4(t));
        }
        if self.e5 {
            terms = clean_e5(&terms, resources.stoplist()?);
            if self.e4 {
                terms.retain(|t| filter_e4(t));
            }
        }
        Ok(terms)
    }
}

/// Represents `doc` and appends the preset's filtered knowledge terms after
/// the original tokens.
pub fn apply_preset(doc: &RawDocument, preset: &Preset, index: &Index, resources: &Resources) -> Result<TaggedDocument> {
    let mut tagged = represent(doc, preset.representation, resources)?;
    if !preset.is_enriching() {
        return Ok(tagged);
    }
    let out = preset.gather(&tagged, index)?;
    let terms = preset.filter_terms(out, resources)?;
    let first = tagged.tokens.last().map_or(0, |(t, _)| t.position + 1);
    for (pos, term) in (first..).zip(terms) {
        tagged.tokens.push((Token::knowledge(term, pos), EntityTag::None));
    }
    Ok(tagged)
}
