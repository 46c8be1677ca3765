//! Exact arithmetic of planar rooted binary trees.
//!
//! Trees are coded by integer vectors compatible with the Tamari order,
//! which makes the tree-level arithmetic (grove addition, the dendriform
//! split, the multiplication by substitution) a matter of coordinate
//! manipulation. A bijection with noncrossing partitions links the same
//! combinatorics to moment/cumulant calculus in free probability; the
//! [`freeprob`] module evaluates partition-indexed multilinear maps over a
//! bimodule and checks the attendant composition laws.
//!
//! Everything is exact: integers are arbitrary precision where they can
//! grow, scalars are rationals, and no floating point appears anywhere.

pub mod dendriform;
pub mod error;
pub mod freeprob;
pub mod grove;
pub mod name;
pub mod ncp;
pub mod sampling;
pub mod selftest;
pub mod tamari;
pub mod tree;

pub use error::{Error, Result};
pub use grove::Grove;
pub use name::{
    dagger, enumerate_names, is_name, name_of, split_name, tree_of, vee, CandidateVec, Name,
};
pub use ncp::NCPartition;
pub use tree::{exp_of, graft_trees, ParenMonomial, Tree};

#[cfg(test)]
mod tests {
    // Every value type is immutable after construction and freely shared
    // between threads.
    #[test]
    fn value_types_are_send_and_sync() {
        fn check<T: Send + Sync>() {}
        check::<crate::Tree>();
        check::<crate::Name>();
        check::<crate::CandidateVec>();
        check::<crate::Grove>();
        check::<crate::NCPartition>();
        check::<crate::dendriform::GroveDecomposition>();
        check::<crate::freeprob::MomentTable>();
        check::<crate::freeprob::FreenessReport>();
        check::<crate::freeprob::OpElem>();
    }
}
