//! Scoring data viewed as comparison triples: for an alternative `i` the
//! multiset `{(a_ij^p, s_j, -s_i)}` over opponents and individuals, flattened
//! to a vector of length `t = 3m(n-1)` after a canonical lexicographic sort
//! of the triples. For a self-consistent procedure the collected vectors form
//! a Paretian set, and the monotone extension of the zero function over them
//! realizes the procedure's implicit form at desk scale.

use crate::paretian::{MonotoneExtension, ParetianError, ParetianSet};
use crate::procedure::{Procedure, ProcedureError};
use crate::profile::{Profile, ProfileError, ScoreVector};
use crate::Real;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

/// The comparison-triple multiset of one alternative in one profile.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonTriples<F> {
    triples: Vec<[F; 3]>,
}

impl<F: Real> ComparisonTriples<F> {
    pub fn from_profile(profile: &Profile<F>, scores: &ScoreVector<F>, i: usize) -> Self {
        let n = profile.alternatives();
        let mut triples = Vec::with_capacity(profile.individuals() * (n - 1));
        for j in 0..n {
            if j == i {
                continue;
            }
            for p in 0..profile.individuals() {
                triples.push([
                    profile.outcome(p, i, j),
                    scores.scores[j],
                    -scores.scores[i],
                ]);
            }
        }
        ComparisonTriples { triples }
    }

    pub fn from_raw(triples: Vec<[F; 3]>) -> Self {
        ComparisonTriples { triples }
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    /// Canonical vector encoding: triples sorted lexicographically, then
    /// flattened. Two encodings are equal iff the multisets are equal.
    pub fn canonical_vector(&self) -> Vec<F> {
        let mut sorted = self.triples.clone();
        sorted.sort_by(|a, b| {
            a.iter()
                .zip(b.iter())
                .map(|(x, y)| x.partial_cmp(y).unwrap())
                .find(|o| !o.is_eq())
                .unwrap_or(std::cmp::Ordering::Equal)
        });
        sorted.into_iter().flatten().collect()
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum TriplesError {
    #[error("profiles must share dimensions; profile {index} has (n={n}, m={m})")]
    MixedDimensions { index: usize, n: usize, m: usize },
    #[error(transparent)]
    Procedure(#[from] ProcedureError),
}

impl From<ProfileError> for TriplesError {
    fn from(e: ProfileError) -> Self {
        TriplesError::Procedure(ProcedureError::Profile(e))
    }
}

/// Collects the canonical triple vectors of every alternative in every
/// profile, merging exact duplicates (symmetric profiles produce them).
pub fn collect_triple_vectors<F: Real>(
    procedure: &dyn Procedure<F>,
    profiles: &[Profile<F>],
) -> Result<Vec<Vec<F>>, TriplesError> {
    let (n, m) = match profiles.first() {
        Some(p) => (p.alternatives(), p.individuals()),
        None => return Ok(Vec::new()),
    };
    let mut vectors: Vec<Vec<F>> = Vec::new();
    for (index, profile) in profiles.iter().enumerate() {
        if profile.alternatives() != n || profile.individuals() != m {
            return Err(TriplesError::MixedDimensions {
                index,
                n: profile.alternatives(),
                m: profile.individuals(),
            });
        }
        let scores = procedure.evaluate(profile)?;
        for i in 0..n {
            vectors.push(ComparisonTriples::from_profile(profile, &scores, i).canonical_vector());
        }
    }
    vectors.sort_by(|a, b| {
        a.iter()
            .zip(b.iter())
            .map(|(x, y)| x.partial_cmp(y).unwrap())
            .find(|o| !o.is_eq())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    vectors.dedup();
    Ok(vectors)
}

/// Result of checking the Paretian property of collected triple vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct ParetianCheckReport<F> {
    pub vectors_checked: usize,
    /// `None` when the property holds; otherwise one offending ordered pair.
    pub offending_pair: Option<(Vec<F>, Vec<F>)>,
}

impl<F> ParetianCheckReport<F> {
    pub fn holds(&self) -> bool {
        self.offending_pair.is_none()
    }
}

/// Verifies pairwise that the triple vectors a procedure induces over the
/// sampled profiles form a Paretian set. Self-consistent procedures pass;
/// e.g. the constant-zero control yields a dominated pair and fails.
pub fn triples_paretian_check<F: Real>(
    procedure: &dyn Procedure<F>,
    profiles: &[Profile<F>],
) -> Result<ParetianCheckReport<F>, TriplesError> {
    let vectors = collect_triple_vectors(procedure, profiles)?;
    let values = vec![F::zero(); vectors.len()];
    match ParetianSet::new(vectors.clone(), values) {
        Ok(_) => Ok(ParetianCheckReport {
            vectors_checked: vectors.len(),
            offending_pair: None,
        }),
        Err(ParetianError::NotParetian { i, j }) => Ok(ParetianCheckReport {
            vectors_checked: vectors.len(),
            offending_pair: Some((vectors[i].clone(), vectors[j].clone())),
        }),
        Err(ParetianError::Empty) => Ok(ParetianCheckReport {
            vectors_checked: 0,
            offending_pair: None,
        }),
        Err(e) => panic!("unexpected Paretian construction error: {e}"),
    }
}

/// The implicit-form function `g` realized constructively: the monotone
/// extension of the zero function over the collected triple vectors,
/// evaluated at the canonical encoding so that permuting triples cannot
/// change the value.
pub struct ImplicitFormWitness<F> {
    extension: MonotoneExtension<F>,
    data: Vec<Vec<F>>,
    triple_count: usize,
}

impl<F: Real> ImplicitFormWitness<F> {
    /// `g` at a triple multiset.
    pub fn g(&self, triples: &ComparisonTriples<F>) -> F {
        assert_eq!(triples.len(), self.triple_count, "triple count mismatch");
        self.extension.evaluate(&triples.canonical_vector())
    }

    /// `g` at an already-canonical vector (no re-sorting); the raw monotone
    /// extension on vectors. Coordinate bumps probe its strict monotonicity.
    pub fn g_at_vector(&self, vector: &[F]) -> F {
        self.extension.evaluate(vector)
    }

    pub fn data(&self) -> &[Vec<F>] {
        &self.data
    }
}

/// Summary of the constructive implicit-form replay.
#[derive(Debug, Clone, PartialEq)]
pub struct WitnessReport<F> {
    pub points: usize,
    /// Maximum `|g|` over the collected vectors; zero by the restriction
    /// property of the extension.
    pub max_abs_g_on_data: F,
    pub monotone_probes: usize,
    pub monotone_failures: usize,
    pub permutation_checks: usize,
    pub permutation_failures: usize,
}

impl<F> WitnessReport<F> {
    pub fn passed(&self) -> bool
    where
        F: Real,
    {
        self.max_abs_g_on_data == F::zero()
            && self.monotone_failures == 0
            && self.permutation_failures == 0
    }
}

/// Builds the implicit-form witness for a procedure over sampled profiles
/// and exercises it: `g` must vanish on the collected data, strictly
/// increase under coordinate bumps, and be invariant to permuting triples.
///
/// Monotonicity probes bump one coordinate of a canonical data vector and
/// compare `g` directly at the bumped vector; bumps that would reorder the
/// canonical sort are skipped and resampled, since the construction is only
/// built from sorted representatives.
pub fn implicit_form_witness<F: Real>(
    procedure: &dyn Procedure<F>,
    profiles: &[Profile<F>],
    probes: usize,
    seed: u64,
) -> Result<(ImplicitFormWitness<F>, WitnessReport<F>), TriplesError> {
    let vectors = collect_triple_vectors(procedure, profiles)?;
    let values = vec![F::zero(); vectors.len()];
    let set = match ParetianSet::new(vectors.clone(), values) {
        Ok(set) => set,
        Err(ParetianError::NotParetian { i, j }) => {
            return Err(TriplesError::Procedure(ProcedureError::External(format!(
                "triple vectors are not Paretian (pair {i}, {j}): the procedure has no implicit form on this data"
            ))))
        }
        Err(e) => {
            return Err(TriplesError::Procedure(ProcedureError::External(format!(
                "cannot build extension: {e}"
            ))))
        }
    };
    let triple_count = set.dimension() / 3;
    let witness = ImplicitFormWitness {
        extension: MonotoneExtension::new(&set),
        data: vectors,
        triple_count,
    };

    let max_abs_g_on_data = witness
        .data
        .iter()
        .map(|v| witness.g_at_vector(v).abs())
        .fold(F::zero(), F::max);

    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let dim = set.dimension();
    let mut monotone_failures = 0usize;
    let mut done = 0usize;
    while done < probes {
        let base = &witness.data[rng.gen_range(0..witness.data.len())];
        let coord = rng.gen_range(0..dim);
        let delta = match rng.gen_range(0u8..3) {
            0 => 1e-6,
            1 => 1e-2,
            _ => 1.0,
        };
        let mut bumped = base.clone();
        bumped[coord] = bumped[coord] + F::from(delta).unwrap();
        if !is_canonically_sorted(&bumped) {
            continue; // reordering bump; resample
        }
        if !(witness.g_at_vector(&bumped) > witness.g_at_vector(base)) {
            monotone_failures += 1;
        }
        done += 1;
    }

    let mut permutation_failures = 0usize;
    let permutation_checks = witness.data.len().min(64);
    for v in witness.data.iter().take(permutation_checks) {
        let mut triples: Vec<[F; 3]> = v.chunks(3).map(|c| [c[0], c[1], c[2]]).collect();
        // rotate whole triples: a nontrivial permutation when len > 1
        let shift = 1.min(triples.len().saturating_sub(1));
        triples.rotate_left(shift);
        let permuted = ComparisonTriples::from_raw(triples);
        if witness.g(&permuted) != witness.g_at_vector(v) {
            permutation_failures += 1;
        }
    }

    let report = WitnessReport {
        points: witness.data.len(),
        max_abs_g_on_data,
        monotone_probes: probes,
        monotone_failures,
        permutation_checks,
        permutation_failures,
    };
    Ok((witness, report))
}

fn is_canonically_sorted<F: Real>(vector: &[F]) -> bool {
    let triples: Vec<&[F]> = vector.chunks(3).collect();
    triples.windows(2).all(|w| {
        w[0].iter()
            .zip(w[1].iter())
            .map(|(a, b)| a.partial_cmp(b).unwrap())
            .find(|o| !o.is_eq())
            .map_or(true, |o| o.is_lt())
    })
}
