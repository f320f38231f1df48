//! Nested recurrences of Hofstadter's Q type: generation, symbolic prefixes,
//! the R/S/T auxiliary system and the structure predictor for `<0; 1, ..., N>`.

pub mod engine;
pub mod formats;
pub mod predictor;
pub mod profile;
pub mod quasilinear;
pub mod rst;
mod ser;
pub mod symbolic;
pub mod tail;
pub mod term;
pub mod tree;

pub use num_bigint::BigInt;

pub use engine::{evaluate, EngineError, GeneratedSequence, InitialCondition, SequenceStatus};
pub use predictor::{
    is_exceptional, predict, predict_sequence, verify_against_bruteforce, PredictError, Prediction,
    PredictionReport, Truncation,
};
pub use profile::{abc_profile, congruence_check, JIndex, ProfileError, StructureProfile};
pub use quasilinear::{detect_quasilinear, detect_quasilinear_min_len, ResidueLine, Segment};
pub use rst::{qc_pattern_check, qt_pattern_check, rst_compute, Hypotheses, RstState};
pub use symbolic::{specialize, symbolic_extend, Affine, Convention, NConstraint, SymbolicPrefix};
pub use term::{IntegerMode, Term};
pub use tree::{behavior_tree, BehaviorTreeNode, NodeKind};
