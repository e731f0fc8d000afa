//! Direct (closed-form) scoring procedures: the Borda family, point scores,
//! lobby size scores, their convex combinations, and Copeland scores.

use crate::profile::{LobbyWeights, PositionalWeights, Profile, ProfileError, ScoreVector};
use crate::Real;

/// Extended Borda scores: `s_i = sum over j != i, p of (a_ij^p - a_ji^p)`.
/// Always sums to zero over the alternatives.
pub fn extended_borda<F: Real>(profile: &Profile<F>) -> ScoreVector<F> {
    let n = profile.alternatives();
    let scores = (0..n)
        .map(|i| profile.total_wins(i) - profile.total_losses(i))
        .collect();
    ScoreVector::new(scores)
}

/// Down-sided Borda scores: `s_i = sum over j != i, p of a_ij^p`.
pub fn down_sided_borda<F: Real>(profile: &Profile<F>) -> ScoreVector<F> {
    let n = profile.alternatives();
    ScoreVector::new((0..n).map(|i| profile.total_wins(i)).collect())
}

/// Up-sided Borda scores: `s_i = sum over j != i, p of (-a_ji^p)`.
pub fn up_sided_borda<F: Real>(profile: &Profile<F>) -> ScoreVector<F> {
    let n = profile.alternatives();
    ScoreVector::new((0..n).map(|i| -profile.total_losses(i)).collect())
}

/// Factored Borda scores on weak orders given as rank vectors: each
/// individual contributes the number of strata strictly below the
/// alternative (the length of the longest strict descending chain).
///
/// On approval-style two-strata orders these equal the numbers of supporting
/// individuals; on linear orders they equal the down-sided Borda scores.
pub fn factored_borda<F: Real>(
    n: usize,
    ranks: &[Vec<u32>],
) -> Result<ScoreVector<F>, ProfileError> {
    let mut scores = vec![F::zero(); n];
    for (p, rv) in ranks.iter().enumerate() {
        if rv.len() != n {
            return Err(ProfileError::MalformedRanks { p });
        }
        let mut levels: Vec<u32> = rv.clone();
        levels.sort_unstable();
        levels.dedup();
        for i in 0..n {
            // strata strictly below i = distinct rank values greater than rv[i]
            let below = levels.iter().filter(|&&r| r > rv[i]).count();
            scores[i] = scores[i] + F::from(below).unwrap();
        }
    }
    Ok(ScoreVector::new(scores))
}

/// Point scores on a profile of linear orders: individual `p` awards
/// alternative `i` the weight at its defeat count, `w(|{j : a_ij^p = 1}|)`.
pub fn point_scores<F: Real>(
    profile: &Profile<F>,
    weights: &PositionalWeights<F>,
) -> Result<ScoreVector<F>, ProfileError> {
    if weights.len() != profile.alternatives() {
        return Err(ProfileError::InvalidWeights(format!(
            "positional: need {} entries, got {}",
            profile.alternatives(),
            weights.len()
        )));
    }
    profile.as_linear_orders()?;
    let n = profile.alternatives();
    let scores = (0..n)
        .map(|i| {
            (0..profile.individuals()).fold(F::zero(), |acc, p| {
                acc + weights.at(profile.defeat_count(p, i))
            })
        })
        .collect();
    Ok(ScoreVector::new(scores))
}

/// Lobby size scores: `s_i = sum over j != i of w(sum over p of a_ij^p)`,
/// with the weight function interpolated linearly at non-integer aggregate
/// support.
pub fn lobby_size_scores<F: Real>(
    profile: &Profile<F>,
    weights: &LobbyWeights<F>,
) -> Result<ScoreVector<F>, ProfileError> {
    if weights.len() != profile.individuals() + 1 {
        return Err(ProfileError::InvalidWeights(format!(
            "lobby: need {} entries, got {}",
            profile.individuals() + 1,
            weights.len()
        )));
    }
    let n = profile.alternatives();
    let scores = (0..n)
        .map(|i| {
            (0..n).filter(|&j| j != i).fold(F::zero(), |acc, j| {
                acc + weights.at(profile.aggregate(i, j))
            })
        })
        .collect();
    Ok(ScoreVector::new(scores))
}

/// Convex combination `nu * point + (1 - nu) * lobby`. The point-score
/// preconditions are only required when `nu > 0`.
pub fn convex_combination_scores<F: Real>(
    profile: &Profile<F>,
    point_weights: &PositionalWeights<F>,
    lobby_weights: &LobbyWeights<F>,
    nu: F,
) -> Result<ScoreVector<F>, ProfileError> {
    if nu < F::zero() || nu > F::one() {
        return Err(ProfileError::InvalidWeights(format!(
            "convex combination parameter {nu} outside [0, 1]"
        )));
    }
    let lobby = lobby_size_scores(profile, lobby_weights)?;
    if nu == F::zero() {
        return Ok(lobby);
    }
    let point = point_scores(profile, point_weights)?;
    let scores = point
        .scores
        .iter()
        .zip(&lobby.scores)
        .map(|(&p, &l)| nu * p + (F::one() - nu) * l)
        .collect();
    Ok(ScoreVector::new(scores))
}

/// Copeland scores of a single relation: the extended Borda scores of an
/// `m = 1` profile.
pub fn copeland_scores<F: Real>(profile: &Profile<F>) -> Result<ScoreVector<F>, ProfileError> {
    if profile.individuals() != 1 {
        return Err(ProfileError::NotSingleRelation {
            m: profile.individuals(),
        });
    }
    Ok(extended_borda(profile))
}
