//! Evaluation: contingency counts, micro/macro F, relative improvement,
//! paired t-tests and cross-validation.

mod cv;
mod metrics;
mod stats;

pub use cv::{evaluate_split, run_cv, run_cv_with_hook, CvOutcome, FoldReport, MeanSd};
pub use metrics::{accumulate, macro_f, micro_f, micro_precision_recall, CategoryCounts, CategoryMetrics, ContingencyTable, MetricReport};
pub use stats::{format_improvement, paired_t_test, relative_improvement, student_t_cdf, TTestResult};
