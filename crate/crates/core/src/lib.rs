//! Knowledge-base enriched text categorization.
//!
//! The crate is organised along the flow of an experiment:
//!
//! * [`corpus`] loads Reuters-21578 SGML and 20-Newsgroups trees, selects
//!   category subsets and assigns stratified folds.
//! * [`textproc`] tokenizes, removes stop words, stems, tags entities and
//!   builds the T1..T4 document representations.
//! * [`kbindex`] holds the knowledge-record model, a fielded inverted index,
//!   the query language and classic TF-IDF scoring.
//! * [`enrich`] appends knowledge-base titles, categories and linked concepts
//!   to documents (strategies E1..E5, presets A1..A5).
//! * [`features`] fits a vocabulary and produces L2-normalised TF-IDF vectors.
//! * [`learn`] trains linear SVMs and predicts one-vs-rest label sets.
//! * [`eval`] computes contingency tables, micro/macro F, relative
//!   improvement, paired t-tests and runs cross-validation.
//!
//! The numeric parts are generic over the scalar type (see [`scalar`]); the
//! aliases below pin the common choices.

pub mod corpus;
pub mod enrich;
pub mod error;
pub mod eval;
pub mod features;
pub mod kbindex;
pub mod learn;
pub mod pipeline;
pub mod scalar;
pub mod textproc;

pub use error::{Error, Result};
pub use scalar::Scalar;

/// Exact rational scalar used for metric oracles.
pub type Rational = num_rational::Ratio<i64>;

/// Sparse TF-IDF vector in double precision.
pub type Vector = features::SparseVector<f64>;
/// Sparse TF-IDF vector in single precision.
pub type Vector32 = features::SparseVector<f32>;
pub type Model = learn::LinearModel<f64>;
pub type Model32 = learn::LinearModel<f32>;
pub type Models = learn::OneVsRest<f64>;
pub type Report = eval::MetricReport<f64>;
/// Metric report in exact arithmetic.
pub type ExactReport = eval::MetricReport<Rational>;
