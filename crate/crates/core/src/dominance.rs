//! Partial ordering of permuted dominance: `i` dominates `j` when some
//! permutation of individuals and per-individual permutations of opponents
//! make every comparison outcome of `i` at least that of `j`. Not induced by
//! any single score vector; it is the intersection of all point orderings.

use crate::matching::perfect_matching;
use crate::profile::Profile;
use crate::Real;

/// The reflexive, transitive dominance relation over alternatives.
/// `ge[i][j]` holds when `i` dominates `j`; mutual dominance means the two
/// are equivalent, so the quotient by equivalence is a partial order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominanceOrder {
    ge: Vec<Vec<bool>>,
}

impl DominanceOrder {
    pub fn dominates(&self, i: usize, j: usize) -> bool {
        self.ge[i][j]
    }

    pub fn strictly_dominates(&self, i: usize, j: usize) -> bool {
        self.ge[i][j] && !self.ge[j][i]
    }

    pub fn equivalent(&self, i: usize, j: usize) -> bool {
        self.ge[i][j] && self.ge[j][i]
    }

    pub fn incomparable(&self, i: usize, j: usize) -> bool {
        !self.ge[i][j] && !self.ge[j][i]
    }
}

/// Sorted-descending comparison rows of every alternative for every
/// individual; row dominance between sorted vectors is exactly the existence
/// of an opponent permutation (rearrangement argument, re-verified by brute
/// force in the tests).
fn sorted_rows<F: Real>(profile: &Profile<F>) -> Vec<Vec<Vec<F>>> {
    (0..profile.alternatives())
        .map(|i| {
            (0..profile.individuals())
                .map(|p| {
                    let mut row = profile.opponent_row(p, i);
                    row.sort_by(|a, b| b.partial_cmp(a).unwrap());
                    row
                })
                .collect()
        })
        .collect()
}

fn row_dominates<F: Real>(a: &[F], b: &[F]) -> bool {
    a.iter().zip(b).all(|(x, y)| x >= y)
}

/// Computes the permuted-dominance relation of a profile.
pub fn permuted_dominance<F: Real>(profile: &Profile<F>) -> DominanceOrder {
    let n = profile.alternatives();
    let m = profile.individuals();
    let rows = sorted_rows(profile);
    let mut ge = vec![vec![false; n]; n];
    for (i, item) in ge.iter_mut().enumerate() {
        for (j, slot) in item.iter_mut().enumerate() {
            // individual-level matching: p (of i) may cover q (of j) when
            // i's sorted row for p dominates j's sorted row for q
            *slot = perfect_matching(m, |p, q| row_dominates(&rows[i][p], &rows[j][q])).is_some();
        }
    }
    DominanceOrder { ge }
}
