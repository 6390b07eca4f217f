//! Weihrauch problems and extended predicates, seen through containers.

mod extended;
mod poset;
mod problem;

pub use extended::{
    ext_reduce_failure, ext_reduce_search, ext_reduce_verify, hat_of, phi_of, witness_from_phi_hat, witness_identity,
    witness_into_phi_hat, wlem, ExtReductionWitness, ExtendedPredicate, FamilyEntry, PredicateData, WitnessData,
};
pub use poset::{degree_poset, DegreePoset, PairOutcome, Reducibility};
pub use problem::{c_of, reduce, reduction_from_morphism, w_of, FiniteProblem, ProblemData, ProblemReduction, ReductionData};
