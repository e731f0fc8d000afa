//! Preference-aggregation toolkit for completely defined paired-comparison
//! profiles: direct Borda-family scores, implicit-form scoring procedures
//! solved numerically, executable social-choice axiom checkers with a
//! randomized falsification harness, exact Kemeny medians, and a constructive
//! strictly monotone extension of bounded functions on Paretian sets.
//!
//! All numeric code is generic over the scalar type through [`Real`];
//! `f64` aliases for the common types live at the crate root.

use std::fmt;

pub mod dominance;
pub mod generate;
pub mod harness;
pub mod io;
pub mod majorize;
mod matching;
pub mod paretian;
pub mod procedure;
pub mod profile;
pub mod ranking;
pub mod scores;
pub mod solvers;
pub mod triples;

/// Scalar type the toolkit computes with: `f32` or `f64`.
pub trait Real: num_traits::Float + fmt::Debug + fmt::Display + 'static {}

impl<T: num_traits::Float + fmt::Debug + fmt::Display + 'static> Real for T {}

pub use dominance::{permuted_dominance, DominanceOrder};
pub use generate::{GeneratorConfig, ProfileMode};
pub use harness::{fuzz_axiom, Axiom, FuzzReport, FuzzViolation};
pub use majorize::{
    check_self_consistency, majorizes, performance_multiset, MajorizationWitness,
    PerformanceMultiset, ViolationReport,
};
pub use paretian::{CubeExtension, MonotoneExtension, ParetianError, ParetianSet};
pub use procedure::{Procedure, ProcedureError};
pub use profile::{LobbyWeights, PositionalWeights, Profile, ProfileError, ScoreVector};
pub use ranking::{
    choice_from_scores, closeness_to_unanimity_choice, distance_to_unanimity, inversion_distance,
    kemeny_median, ranking_from_scores, ChoiceSet, KemenyResult, RankError, Ranking,
};
pub use solvers::{
    grs_closed_form, residual, solve, ImplicitKind, ImplicitProcedureSpec, SolveError, SolveReport,
    SolverConfig,
};
pub use triples::{implicit_form_witness, triples_paretian_check, ComparisonTriples};

/// Default tolerance used for score comparisons, ranking derivation, and
/// axiom checks.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

pub type Profile64 = Profile<f64>;
pub type Scores64 = ScoreVector<f64>;
pub type ParetianSet64 = ParetianSet<f64>;
pub type SolveReport64 = SolveReport<f64>;
