//! Linear SVM training and one-vs-rest prediction.

mod model;
mod ovr;
mod svm;

pub use model::{parse_model, write_model, LinearModel};
pub use ovr::{train_one_vs_rest, LabelMode, OneVsRest};
pub use svm::{primal_objective, train_binary_svm, train_binary_svm_traced, SolverTrace, TrainConfig};
