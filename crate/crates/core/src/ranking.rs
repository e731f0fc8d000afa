//! Rankings and choices derived from scores, the inversion-distance choice
//! (closeness to unanimity), and the exact Kemeny median.

use crate::profile::{Profile, ProfileError, ScoreVector};
use crate::Real;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RankError {
    #[error("{n} alternatives exceed the exhaustive-search cap {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error(transparent)]
    Profile(#[from] ProfileError),
}

/// A weak order over alternatives as descending strata (ties merged).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ranking {
    strata: Vec<Vec<usize>>,
}

impl Ranking {
    pub fn strata(&self) -> &[Vec<usize>] {
        &self.strata
    }

    pub fn top(&self) -> &[usize] {
        &self.strata[0]
    }
}

/// The alternatives with the highest score: the top stratum of the ranking.
pub type ChoiceSet = Vec<usize>;

/// Sorts alternatives by descending score and merges ties, where a tie is an
/// adjacent gap within the score vector's tolerance. Clustering by adjacent
/// gaps makes stratum membership a genuine (transitive) equivalence even
/// though the pairwise tolerance predicate is not transitive.
pub fn ranking_from_scores<F: Real>(scores: &ScoreVector<F>) -> Ranking {
    let mut idx: Vec<usize> = (0..scores.len()).collect();
    idx.sort_by(|&a, &b| scores.scores[b].partial_cmp(&scores.scores[a]).unwrap());
    let mut strata: Vec<Vec<usize>> = Vec::new();
    for i in idx {
        match strata.last_mut() {
            Some(stratum)
                if scores.scores[*stratum.last().unwrap()] - scores.scores[i]
                    <= scores.tolerance =>
            {
                stratum.push(i);
            }
            _ => strata.push(vec![i]),
        }
    }
    for stratum in &mut strata {
        stratum.sort_unstable();
    }
    Ranking { strata }
}

pub fn choice_from_scores<F: Real>(scores: &ScoreVector<F>) -> ChoiceSet {
    ranking_from_scores(scores).top().to_vec()
}

/// Total inversion distance between one linear order and every individual
/// order of a crisp profile: the number of unordered pairs ranked oppositely,
/// summed over individuals.
pub fn inversion_distance<F: Real>(
    order: &[usize],
    profile: &Profile<F>,
) -> Result<u64, RankError> {
    let orders = profile.as_linear_orders()?;
    let n = profile.alternatives();
    let mut pos = vec![0usize; n];
    for (k, &i) in order.iter().enumerate() {
        pos[i] = k;
    }
    let mut total = 0u64;
    for ind in &orders {
        for a in 0..n {
            for b in (a + 1)..n {
                // ind[a] precedes ind[b]; discordant if `order` says otherwise
                if pos[ind[a]] > pos[ind[b]] {
                    total += 1;
                }
            }
        }
    }
    Ok(total)
}

/// Inversion distance from the profile to the nearest profile in which `i`
/// is unanimously top: lifting `i` by adjacent swaps costs exactly its
/// position in each individual order.
pub fn distance_to_unanimity<F: Real>(profile: &Profile<F>, i: usize) -> Result<u64, RankError> {
    let orders = profile.as_linear_orders()?;
    Ok(orders
        .iter()
        .map(|o| o.iter().position(|&x| x == i).unwrap() as u64)
        .sum())
}

/// The alternatives minimizing the inversion distance to unanimous support.
/// Coincides with the Borda choice on profiles of linear orders.
pub fn closeness_to_unanimity_choice<F: Real>(
    profile: &Profile<F>,
) -> Result<ChoiceSet, RankError> {
    let n = profile.alternatives();
    let distances = (0..n)
        .map(|i| distance_to_unanimity(profile, i))
        .collect::<Result<Vec<_>, _>>()?;
    let best = *distances.iter().min().unwrap();
    Ok((0..n).filter(|&i| distances[i] == best).collect())
}

/// All Kemeny medians of a profile and their common distance.
#[derive(Debug, Clone, PartialEq)]
pub struct KemenyResult<F> {
    pub medians: Vec<Vec<usize>>,
    pub distance: F,
}

/// Exhaustively searches all `n!` linear orders for those minimizing
/// `sum over p, ordered (i, j) of |r_ij - a_ij^p|`, the total absolute
/// pairwise disagreement with the profile. Every tied optimum is returned.
///
/// Distances count ordered pairs, i.e. both `(i, j)` and `(j, i)`, which
/// doubles the unordered count uniformly.
pub fn kemeny_median<F: Real>(
    profile: &Profile<F>,
    n_cap: usize,
) -> Result<KemenyResult<F>, RankError> {
    let n = profile.alternatives();
    if n > n_cap {
        return Err(RankError::TooLarge { n, cap: n_cap });
    }
    // cost[i][j]: distance contribution of ranking i above j, over both
    // ordered pairs and all individuals
    let m = profile.individuals();
    let mut cost = vec![vec![F::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let mut c = F::zero();
            for p in 0..m {
                c = c
                    + (F::one() - profile.outcome(p, i, j)).abs()
                    + profile.outcome(p, j, i).abs();
            }
            cost[i][j] = c;
        }
    }
    let mut best: Option<(F, Vec<Vec<usize>>)> = None;
    let mut order: Vec<usize> = (0..n).collect();
    visit_permutations(&mut order, 0, &mut |perm| {
        let mut d = F::zero();
        for a in 0..n {
            for b in (a + 1)..n {
                d = d + cost[perm[a]][perm[b]];
            }
        }
        match &mut best {
            None => best = Some((d, vec![perm.to_vec()])),
            Some((bd, meds)) => {
                if d < *bd {
                    *bd = d;
                    *meds = vec![perm.to_vec()];
                } else if d == *bd {
                    meds.push(perm.to_vec());
                }
            }
        }
    });
    let (distance, mut medians) = best.expect("n >= 2");
    medians.sort();
    Ok(KemenyResult { medians, distance })
}

fn visit_permutations(items: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        visit_permutations(items, k + 1, visit);
        items.swap(k, i);
    }
}
