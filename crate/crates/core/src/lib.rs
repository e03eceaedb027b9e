//! Partial information decomposition over finite discrete joint distributions.
//!
//! The crate is `no_std` (it needs `alloc`). It provides:
//!
//! * [`distribution`]: joint pmfs, channels and the Shannon quantities.
//! * [`sources`] and [`lattice`]: source collections, their normalization,
//!   the conditional-independence partitions and the redundancy lattice.
//! * [`ci`]: the conditional-independence union information `I_cup^CI`
//!   and its synergy `S^CI`.
//! * [`classic`]: baseline measures (WMS, Williams–Beer `I_min`, ΔI,
//!   maximum-entropy fitting and the dependency-based synergy).
//! * [`degradation`]: Blackwell-order machinery, `I_cap^d` and `I_cup^d`
//!   (equivalently `I_cup^VK`), built on the dense simplex in [`lp`].
//! * [`corpus`]: the canonical example distributions.
//! * [`axioms`]: a seeded randomized check of the union-information axioms.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod axioms;
pub mod ci;
pub mod classic;
pub mod corpus;
pub mod degradation;
pub mod distribution;
mod error;
pub mod lattice;
pub mod lp;
mod math;
pub mod sources;
#[cfg(test)]
mod strategies;

pub use axioms::{run_axiom_suite, AxiomReport, PropertyTally};
pub use ci::{
    build_q, ci_bivariate_decomposition, ci_synergy, ci_union_details, ci_union_information,
    conditionally_independent, CiUnionDetails, PidResult,
};
pub use classic::{
    delta_i_synergy, dep_synergy, iep_bivariate_from_redundancy, imin_redundancy, maxent_ipf,
    specific_information, wb_pid, wms_synergy, DepSynergy, WbDecomposition,
};
pub use corpus::{canonical, CorpusEntry, CorpusName};
pub use degradation::{
    degradation_leq, degradation_redundancy, s_d, vk_union_information, DegradationWitness,
    OptimizationReport, OptimizerConfig,
};
pub use distribution::{
    channel_from, conditional_entropy, conditional_mutual_information, entropy, kl_divergence,
    marginalize, mutual_information, Channel, JointDistribution, VariableSet,
};
pub use error::{PidError, Result};
pub use lattice::{redundancy_lattice, LatticeNode, RedundancyLattice};
pub use sources::{
    enumerate_ci_partitions, is_deterministic, normalize_sources, CiPartition, Source,
    SourceCollection,
};

/// Values within this distance below zero are treated as floating-point noise
/// and clamped to zero; anything more negative is an internal error.
pub const NEGATIVE_TOLERANCE: f64 = 1e-9;

/// Absolute tolerance on the total mass of a distribution.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-9;
