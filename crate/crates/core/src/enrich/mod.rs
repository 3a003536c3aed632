//! Document enrichment from the knowledge base.
//!
//! Three retrieval strategies (E1 content match, E2 fielded query with a
//! page-rank floor, E3 E2 plus entity types) produce titles, categories and
//! linked concepts; E4 filters and E5 cleans them before they are appended
//! to the document. Presets A1..A5 fix the combinations used in experiments.

mod filters;
mod preset;
mod strategies;

pub use filters::{clean_e5, clean_term, filter_e4};
pub use preset::{apply_preset, Preset, PresetName, Strategy};
pub use strategies::{build_e2_query, enrich_e1, enrich_e2, enrich_e3, E2Options, EnrichmentOutput};
