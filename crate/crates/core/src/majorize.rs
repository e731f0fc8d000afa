//! Performance multisets, the majorization relation between them, and the
//! self-consistency checker built on both.
//!
//! Alternative `i` majorizes `j` when the multiset of `i`'s comparison
//! results `(outcome, opponent score)` can be matched one-to-one onto `j`'s
//! with componentwise dominance. Self-consistency demands that the scores
//! respect every such instance, within and across profiles.

use crate::matching::perfect_matching;
use crate::procedure::{Procedure, ProcedureError};
use crate::profile::{Profile, ScoreVector};
use crate::Real;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MajorizeError {
    #[error("performance multisets have different cardinalities ({a} vs {b})")]
    CardinalityMismatch { a: usize, b: usize },
}

/// The multiset of `(comparison outcome, opponent score)` pairs of one
/// alternative: `m(n-1)` entries covering every opponent and individual.
#[derive(Debug, Clone, PartialEq)]
pub struct PerformanceMultiset<F> {
    pub pairs: Vec<(F, F)>,
}

impl<F: Real> PerformanceMultiset<F> {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    fn sorted(&self) -> Vec<(F, F)> {
        let mut v = self.pairs.clone();
        v.sort_by(|a, b| {
            a.0.partial_cmp(&b.0)
                .unwrap()
                .then(a.1.partial_cmp(&b.1).unwrap())
        });
        v
    }

    /// Multiset equality (order-insensitive, exact on components).
    pub fn same_multiset(&self, other: &Self) -> bool {
        self.len() == other.len() && self.sorted() == other.sorted()
    }
}

/// A verified dominance matching between two performance multisets:
/// `pairing[u]` is the index in the second multiset matched to entry `u` of
/// the first, with componentwise dominance on every matched pair. `strict`
/// holds exactly when the multisets differ, which is equivalent to some
/// matched pair being strictly dominated (see `strictness` notes below).
#[derive(Debug, Clone, PartialEq)]
pub struct MajorizationWitness {
    pub pairing: Vec<usize>,
    pub strict: bool,
}

/// Performance multiset of alternative `i`: `{(a_ik^p, s_k) | k != i, p}`.
pub fn performance_multiset<F: Real>(
    profile: &Profile<F>,
    scores: &ScoreVector<F>,
    i: usize,
) -> PerformanceMultiset<F> {
    let n = profile.alternatives();
    let mut pairs = Vec::with_capacity(profile.individuals() * (n - 1));
    for k in 0..n {
        if k == i {
            continue;
        }
        for p in 0..profile.individuals() {
            pairs.push((profile.outcome(p, i, k), scores.scores[k]));
        }
    }
    PerformanceMultiset { pairs }
}

/// Decides majorization of `u` over `v` by maximum bipartite matching on the
/// dominance graph (edge where outcome and opponent score both dominate).
///
/// Strictness: a witness is strict iff the multisets are not equal. When
/// they are equal, componentwise sums force every dominance matching to pair
/// equal elements; when they differ, an all-equal matching is impossible, so
/// every dominance matching contains a strictly dominated pair. Both facts
/// are re-verified against brute force in the tests.
pub fn majorizes<F: Real>(
    u: &PerformanceMultiset<F>,
    v: &PerformanceMultiset<F>,
) -> Result<Option<MajorizationWitness>, MajorizeError> {
    if u.len() != v.len() {
        return Err(MajorizeError::CardinalityMismatch {
            a: u.len(),
            b: v.len(),
        });
    }
    let dominates = |a: usize, b: usize| {
        let (oa, sa) = u.pairs[a];
        let (ob, sb) = v.pairs[b];
        oa >= ob && sa >= sb
    };
    Ok(
        perfect_matching(u.len(), dominates).map(|pairing| MajorizationWitness {
            pairing,
            strict: !u.same_multiset(v),
        }),
    )
}

/// One observed violation of self-consistency, with everything needed to
/// replay it: both profiles, the offending ordered pair, the witness, and
/// the scores the procedure assigned.
#[derive(Debug, Clone, PartialEq)]
pub struct ViolationReport<F> {
    pub profile_a: Profile<F>,
    pub profile_b: Profile<F>,
    pub i: usize,
    pub j: usize,
    pub strict: bool,
    pub witness: MajorizationWitness,
    pub scores_a: ScoreVector<F>,
    pub scores_b: ScoreVector<F>,
}

/// Checks self-consistency of a procedure across an ordered pair of
/// profiles (pass the same profile twice for the within-profile case): for
/// every ordered `(i, j)`, majorization must imply `s_i >= s'_j` within the
/// tolerance, strictly when the majorization is strict.
pub fn check_self_consistency<F: Real>(
    procedure: &dyn Procedure<F>,
    profile_a: &Profile<F>,
    profile_b: &Profile<F>,
) -> Result<Vec<ViolationReport<F>>, ProcedureError> {
    let scores_a = procedure.evaluate(profile_a)?;
    let scores_b = procedure.evaluate(profile_b)?;
    let tol = scores_a.tolerance;
    let n = profile_a.alternatives();
    let mut violations = Vec::new();
    for i in 0..n {
        let u = performance_multiset(profile_a, &scores_a, i);
        for j in 0..profile_b.alternatives() {
            let v = performance_multiset(profile_b, &scores_b, j);
            let witness = match majorizes(&u, &v) {
                Ok(Some(w)) => w,
                Ok(None) => continue,
                Err(MajorizeError::CardinalityMismatch { .. }) => continue,
            };
            let (si, sj) = (scores_a.scores[i], scores_b.scores[j]);
            let ok = if witness.strict {
                si > sj + tol
            } else {
                si >= sj - tol
            };
            if !ok {
                violations.push(ViolationReport {
                    profile_a: profile_a.clone(),
                    profile_b: profile_b.clone(),
                    i,
                    j,
                    strict: witness.strict,
                    witness,
                    scores_a: scores_a.clone(),
                    scores_b: scores_b.clone(),
                });
            }
        }
    }
    Ok(violations)
}
