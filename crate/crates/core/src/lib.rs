//! Finite relations, bi-relations, finite topologies and mixture sets, with
//! exact checkers and exhaustive census drivers for the continuity and
//! semi-transitivity results relating them.

// Carriers are never empty; index loops mirror the set-builder definitions.
#![allow(clippy::len_without_is_empty, clippy::needless_range_loop)]

pub mod birelation;
pub mod error;
pub mod harness;
pub mod io;
pub mod mixture;
pub mod pcontinuity;
pub mod rational;
pub mod relation;
pub mod subset;
pub mod topology;

pub use birelation::{
    enumerate_birelations, BiCondition, BiRelation, SemiTransitivity, SemiTransitivityViolation,
};
pub use error::{Error, Result};
pub use harness::{
    CensusConfig, CensusReport, FixtureOutcome, Hypothesis, Mode, NecessityOutcome,
    NecessityWitness, RandomizedBounds, Sampling, TopologyVerdict, Violation,
};
pub use mixture::{
    ConvexMixture, FixtureReport, FixtureSpec, Grid, MixturePoint, MixtureStructure, PointRelation,
    SectionRole, Verdict,
};
pub use pcontinuity::{canonical_witness, is_p_continuous, PContinuity, Witness, WitnessFamily};
pub use rational::Rational;
pub use relation::{
    enumerate_relations, Carrier, Direction, FinRelation, PropertyRecord, DEFAULT_ENUMERATION_BOUND,
};
pub use subset::Subset;
pub use topology::{
    enumerate_topologies, is_continuous, tau_of, FinTopology, SpecializationPreorder,
};
