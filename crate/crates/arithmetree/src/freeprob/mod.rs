//! Noncrossing-partition evaluation of multilinear bimodule maps, the
//! composition operad they generate, and moment/cumulant calculus.

pub mod formal;
pub mod matrix;
pub mod moments;
pub mod operad;

pub use formal::{
    generator_word, FormalApp, FormalB, FormalM, FormalSlot, FormalSystem, FreeFamily,
};
pub use matrix::{MatrixAlgebra, ProductFamily, RatMatrix, ReversedProductFamily};
pub use moments::{
    cumulant, cumulant_at, cumulants_from_moments, free_joint_moments, freeness_report,
    moments_from_cumulants, parse_freeness_spec, word_slots, FreenessReport, GeneratorSpec,
    MomentFamily, MomentTable, ScaledWord, WordSystem, DEFAULT_BOUND,
};
pub use operad::{
    compose, composition_chain, evaluate_partition, fold_chain, operad_laws_check, Family,
    LawReport, LawViolation, LinearSystem, OpElem, OperadSystem, SampleWords,
};
