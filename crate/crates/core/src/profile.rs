//! Paired-comparison profiles and the weight/score vector types the scoring
//! procedures operate on.
//!
//! A profile holds one complete n×n comparison matrix per individual. Entry
//! `(i, j)` is the outcome alternative `i` obtained against `j`: `1` for a
//! strict win, `0` for a strict loss, `1/2` for equivalence, and anything in
//! `[0, 1]` for graded outcomes. Off-diagonal entries are complementary
//! (`a[i][j] + a[j][i] = 1`, checked exactly) and the diagonal is zero.

use crate::Real;
use thiserror::Error;

/// Errors raised by profile validation and the profile constructors.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ProfileError {
    #[error("profile needs n >= 2 alternatives and m >= 1 individuals, got n={n}, m={m}")]
    InvalidDimensions { n: usize, m: usize },
    #[error("matrix {p} is not {n}x{n}")]
    MalformedMatrix { p: usize, n: usize },
    #[error("complementarity violated at individual {p}, pair ({i}, {j}): entries do not sum to 1 exactly")]
    ComplementarityViolation { p: usize, i: usize, j: usize },
    #[error("nonzero diagonal at individual {p}, alternative {i}")]
    NonzeroDiagonal { p: usize, i: usize },
    #[error("entry out of [0, 1] at individual {p}, pair ({i}, {j})")]
    OutOfRange { p: usize, i: usize, j: usize },
    #[error("order {p} is not a permutation of 0..n")]
    MalformedOrder { p: usize },
    #[error("rank vector {p} does not have length n")]
    MalformedRanks { p: usize },
    #[error("ballot {p} names alternative {element} outside 0..{n}")]
    ElementOutOfRange { p: usize, element: usize, n: usize },
    #[error("profiles have different alternative counts ({a} vs {b})")]
    DimensionMismatch { a: usize, b: usize },
    #[error("matrix {p} is not derived from a linear order")]
    NotLinearOrderProfile { p: usize },
    #[error("operation requires a single relation (m = 1), got m = {m}")]
    NotSingleRelation { m: usize },
    #[error("weight vector invalid: {0}")]
    InvalidWeights(String),
}

/// A profile of `m` individual paired-comparison matrices over `n`
/// alternatives. Immutable once constructed; both complementary entries are
/// stored so no arithmetic can drift them apart.
#[derive(Debug, Clone, PartialEq)]
pub struct Profile<F> {
    n: usize,
    m: usize,
    matrices: Vec<Vec<F>>, // one row-major n*n matrix per individual
}

impl<F: Real> Profile<F> {
    /// Validates raw matrices and wraps them in a `Profile`.
    ///
    /// Complementarity is an exact check: `a[i][j] + a[j][i]` must equal `1`
    /// with no tolerance. Constructors in this module always store both
    /// entries of a pair explicitly, which keeps the check exact.
    pub fn validate(n: usize, matrices: Vec<Vec<F>>) -> Result<Self, ProfileError> {
        let m = matrices.len();
        if n < 2 || m < 1 {
            return Err(ProfileError::InvalidDimensions { n, m });
        }
        let one = F::one();
        let zero = F::zero();
        for (p, mat) in matrices.iter().enumerate() {
            if mat.len() != n * n {
                return Err(ProfileError::MalformedMatrix { p, n });
            }
            for i in 0..n {
                if mat[i * n + i] != zero {
                    return Err(ProfileError::NonzeroDiagonal { p, i });
                }
                for j in (i + 1)..n {
                    let a = mat[i * n + j];
                    let b = mat[j * n + i];
                    if a < zero || a > one {
                        return Err(ProfileError::OutOfRange { p, i, j });
                    }
                    if b < zero || b > one {
                        return Err(ProfileError::OutOfRange { p, i: j, j: i });
                    }
                    if a + b != one {
                        return Err(ProfileError::ComplementarityViolation { p, i, j });
                    }
                }
            }
        }
        Ok(Profile { n, m, matrices })
    }

    /// Validates nested `[m][n][n]` matrices (the JSON layout).
    pub fn validate_nested(n: usize, matrices: Vec<Vec<Vec<F>>>) -> Result<Self, ProfileError> {
        let flat = matrices
            .into_iter()
            .enumerate()
            .map(|(p, mat)| {
                if mat.len() != n || mat.iter().any(|row| row.len() != n) {
                    return Err(ProfileError::MalformedMatrix { p, n });
                }
                Ok(mat.into_iter().flatten().collect())
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::validate(n, flat)
    }

    /// Builds a crisp profile from `m` linear orders, each a permutation of
    /// `0..n` listed from most to least preferred.
    pub fn from_linear_orders(n: usize, orders: &[Vec<usize>]) -> Result<Self, ProfileError> {
        let mut matrices = Vec::with_capacity(orders.len());
        for (p, order) in orders.iter().enumerate() {
            let mut seen = vec![false; n];
            if order.len() != n {
                return Err(ProfileError::MalformedOrder { p });
            }
            for &x in order {
                if x >= n || seen[x] {
                    return Err(ProfileError::MalformedOrder { p });
                }
                seen[x] = true;
            }
            let mut mat = vec![F::zero(); n * n];
            for (pos, &i) in order.iter().enumerate() {
                for &j in &order[pos + 1..] {
                    mat[i * n + j] = F::one();
                }
            }
            matrices.push(mat);
        }
        Self::validate(n, matrices)
    }

    /// Builds a profile from `m` rank vectors; `ranks[p][i]` is the rank of
    /// alternative `i` for individual `p` (smaller is better, equal ranks are
    /// ties). Ties map to `1/2`–`1/2`, strict preferences to `1`–`0`.
    pub fn from_weak_orders(n: usize, ranks: &[Vec<u32>]) -> Result<Self, ProfileError> {
        let half = F::from(0.5).unwrap();
        let mut matrices = Vec::with_capacity(ranks.len());
        for (p, rv) in ranks.iter().enumerate() {
            if rv.len() != n {
                return Err(ProfileError::MalformedRanks { p });
            }
            let mut mat = vec![F::zero(); n * n];
            for i in 0..n {
                for j in 0..n {
                    if i == j {
                        continue;
                    }
                    mat[i * n + j] = match rv[i].cmp(&rv[j]) {
                        std::cmp::Ordering::Less => F::one(),
                        std::cmp::Ordering::Equal => half,
                        std::cmp::Ordering::Greater => F::zero(),
                    };
                }
            }
            matrices.push(mat);
        }
        Self::validate(n, matrices)
    }

    /// Builds a profile from approval ballots: each ballot is the set of
    /// approved alternatives, yielding a two-strata weak order. Empty and
    /// full ballots degenerate to the all-tied relation.
    pub fn from_approval_ballots(n: usize, ballots: &[Vec<usize>]) -> Result<Self, ProfileError> {
        let mut ranks = Vec::with_capacity(ballots.len());
        for (p, ballot) in ballots.iter().enumerate() {
            let mut rv = vec![2u32; n];
            for &x in ballot {
                if x >= n {
                    return Err(ProfileError::ElementOutOfRange { p, element: x, n });
                }
                rv[x] = 1;
            }
            ranks.push(rv);
        }
        Self::from_weak_orders(n, &ranks)
    }

    /// Concatenates two profiles over the same alternatives into the combined
    /// profile with `m_a + m_b` individuals.
    pub fn concat(&self, other: &Self) -> Result<Self, ProfileError> {
        if self.n != other.n {
            return Err(ProfileError::DimensionMismatch {
                a: self.n,
                b: other.n,
            });
        }
        let mut matrices = self.matrices.clone();
        matrices.extend(other.matrices.iter().cloned());
        Ok(Profile {
            n: self.n,
            m: self.m + other.m,
            matrices,
        })
    }

    pub fn alternatives(&self) -> usize {
        self.n
    }

    pub fn individuals(&self) -> usize {
        self.m
    }

    /// Comparison outcome of `i` against `j` for individual `p`.
    #[inline]
    pub fn outcome(&self, p: usize, i: usize, j: usize) -> F {
        self.matrices[p][i * self.n + j]
    }

    /// Aggregate support for `i` against `j`: `sum over p of outcome(p, i, j)`.
    pub fn aggregate(&self, i: usize, j: usize) -> F {
        self.matrices
            .iter()
            .fold(F::zero(), |acc, mat| acc + mat[i * self.n + j])
    }

    /// Total wins of `i`: `sum over j != i, p of outcome(p, i, j)`.
    pub fn total_wins(&self, i: usize) -> F {
        (0..self.n)
            .filter(|&j| j != i)
            .fold(F::zero(), |acc, j| acc + self.aggregate(i, j))
    }

    /// Total losses of `i`: `sum over j != i, p of outcome(p, j, i)`.
    pub fn total_losses(&self, i: usize) -> F {
        (0..self.n)
            .filter(|&j| j != i)
            .fold(F::zero(), |acc, j| acc + self.aggregate(j, i))
    }

    /// The profile with alternatives relabeled: new alternative `i` is old
    /// `perm[i]`.
    pub fn permute_alternatives(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n);
        let n = self.n;
        let matrices = self
            .matrices
            .iter()
            .map(|mat| {
                let mut out = vec![F::zero(); n * n];
                for i in 0..n {
                    for j in 0..n {
                        out[i * n + j] = mat[perm[i] * n + perm[j]];
                    }
                }
                out
            })
            .collect();
        Profile {
            n,
            m: self.m,
            matrices,
        }
    }

    /// The profile with individuals reordered: new individual `p` is old
    /// `perm[p]`.
    pub fn permute_individuals(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.m);
        Profile {
            n: self.n,
            m: self.m,
            matrices: perm.iter().map(|&p| self.matrices[p].clone()).collect(),
        }
    }

    /// A copy with one outcome bumped upward: `outcome(p, i, j) += delta`,
    /// complement adjusted. Panics if the bumped entry would leave `[0, 1]`.
    pub fn bump_outcome(&self, p: usize, i: usize, j: usize, delta: F) -> Self {
        assert!(i != j && delta >= F::zero());
        let mut matrices = self.matrices.clone();
        let a = matrices[p][i * self.n + j] + delta;
        assert!(a <= F::one(), "bumped outcome leaves [0, 1]");
        matrices[p][i * self.n + j] = a;
        matrices[p][j * self.n + i] = F::one() - a;
        Profile {
            n: self.n,
            m: self.m,
            matrices,
        }
    }

    /// Recovers the linear order (most preferred first) behind each matrix,
    /// or fails with `NotLinearOrderProfile` naming the first offending
    /// individual. A matrix qualifies when it is 0/1-valued and its defeat
    /// counts are a permutation of `0..n` (transitive completeness).
    pub fn as_linear_orders(&self) -> Result<Vec<Vec<usize>>, ProfileError> {
        let n = self.n;
        let mut orders = Vec::with_capacity(self.m);
        for p in 0..self.m {
            let mut defeats = vec![0usize; n];
            for i in 0..n {
                for j in 0..n {
                    if i == j {
                        continue;
                    }
                    let a = self.outcome(p, i, j);
                    if a == F::one() {
                        defeats[i] += 1;
                    } else if a != F::zero() {
                        return Err(ProfileError::NotLinearOrderProfile { p });
                    }
                }
            }
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by(|&a, &b| defeats[b].cmp(&defeats[a]));
            // distinct defeat counts <=> the tournament is a linear order
            for (pos, &i) in order.iter().enumerate() {
                if defeats[i] != n - 1 - pos {
                    return Err(ProfileError::NotLinearOrderProfile { p });
                }
            }
            orders.push(order);
        }
        Ok(orders)
    }

    /// Per-individual defeat counts `|{j : outcome(p, i, j) = 1}|`, valid for
    /// crisp matrices.
    pub(crate) fn defeat_count(&self, p: usize, i: usize) -> usize {
        (0..self.n)
            .filter(|&j| j != i && self.outcome(p, i, j) == F::one())
            .count()
    }

    /// Row of comparison outcomes of `i` against its opponents (j != i) for
    /// individual `p`, in opponent index order.
    pub fn opponent_row(&self, p: usize, i: usize) -> Vec<F> {
        (0..self.n)
            .filter(|&j| j != i)
            .map(|j| self.outcome(p, i, j))
            .collect()
    }
}

/// A real score per alternative plus the tolerance mediating comparisons.
///
/// Pairwise predicates (`gt`, `approx_eq`) compare with the tolerance and are
/// not globally transitive; the transitive equivalence used for rankings and
/// choices is the adjacent-gap clustering in
/// [`ranking_from_scores`](crate::ranking::ranking_from_scores).
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreVector<F> {
    pub scores: Vec<F>,
    pub tolerance: F,
}

impl<F: Real> ScoreVector<F> {
    pub fn new(scores: Vec<F>) -> Self {
        let tolerance = F::from(crate::DEFAULT_TOLERANCE).unwrap();
        ScoreVector { scores, tolerance }
    }

    pub fn with_tolerance(scores: Vec<F>, tolerance: F) -> Self {
        ScoreVector { scores, tolerance }
    }

    pub fn len(&self) -> usize {
        self.scores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }

    /// `scores[i] > scores[j]` by more than the tolerance.
    pub fn gt(&self, i: usize, j: usize) -> bool {
        self.scores[i] > self.scores[j] + self.tolerance
    }

    /// `scores[i]` and `scores[j]` within the tolerance of each other.
    pub fn approx_eq(&self, i: usize, j: usize) -> bool {
        (self.scores[i] - self.scores[j]).abs() <= self.tolerance
    }

    /// Entrywise sum; panics on length mismatch.
    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.len(), other.len());
        ScoreVector {
            scores: self
                .scores
                .iter()
                .zip(&other.scores)
                .map(|(&a, &b)| a + b)
                .collect(),
            tolerance: self.tolerance,
        }
    }

    /// Scores relabeled so entry `i` refers to old alternative `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        ScoreVector {
            scores: perm.iter().map(|&i| self.scores[i]).collect(),
            tolerance: self.tolerance,
        }
    }

    pub fn max_abs_diff(&self, other: &Self) -> F {
        self.scores
            .iter()
            .zip(&other.scores)
            .map(|(&a, &b)| (a - b).abs())
            .fold(F::zero(), F::max)
    }
}

/// Points awarded per count of defeated opponents (index `0..n`), required
/// non-negative and non-decreasing in that index.
#[derive(Debug, Clone, PartialEq)]
pub struct PositionalWeights<F>(Vec<F>);

impl<F: Real> PositionalWeights<F> {
    pub fn new(points: Vec<F>) -> Result<Self, ProfileError> {
        validate_weights(&points, "positional")?;
        Ok(PositionalWeights(points))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn at(&self, defeated: usize) -> F {
        self.0[defeated]
    }
}

/// Partial scores per supporting-coalition size (index `0..=m`), required
/// non-negative and non-decreasing. Non-integer aggregate support (valued
/// outcomes) is mapped by linear interpolation between adjacent indices.
#[derive(Debug, Clone, PartialEq)]
pub struct LobbyWeights<F>(Vec<F>);

impl<F: Real> LobbyWeights<F> {
    pub fn new(weights: Vec<F>) -> Result<Self, ProfileError> {
        validate_weights(&weights, "lobby")?;
        Ok(LobbyWeights(weights))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Weight at aggregate support `t in [0, m]`, interpolated linearly.
    pub fn at(&self, t: F) -> F {
        let top = self.0.len() - 1;
        let floor = t.floor();
        let k = num_traits::cast::<F, usize>(floor).unwrap_or(0).min(top);
        if k == top {
            return self.0[top];
        }
        let frac = t - floor;
        self.0[k] * (F::one() - frac) + self.0[k + 1] * frac
    }
}

fn validate_weights<F: Real>(w: &[F], what: &str) -> Result<(), ProfileError> {
    if w.is_empty() {
        return Err(ProfileError::InvalidWeights(format!("{what}: empty")));
    }
    if w[0] < F::zero() {
        return Err(ProfileError::InvalidWeights(format!(
            "{what}: negative entry"
        )));
    }
    for k in 1..w.len() {
        if w[k] < w[k - 1] {
            return Err(ProfileError::InvalidWeights(format!(
                "{what}: decreasing at index {k}"
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn flat(rows: &[&[f64]]) -> Vec<f64> {
        rows.iter().flat_map(|r| r.iter().copied()).collect()
    }

    #[test]
    fn validate_rejects_broken_complementarity() {
        let err = Profile::validate(2, vec![flat(&[&[0.0, 0.6], &[0.3, 0.0]])]).unwrap_err();
        assert_eq!(
            err,
            ProfileError::ComplementarityViolation { p: 0, i: 0, j: 1 }
        );
    }

    #[test]
    fn validate_accepts_complementary_pair() {
        let p = Profile::validate(2, vec![flat(&[&[0.0, 0.6], &[0.4, 0.0]])]).unwrap();
        assert_eq!(p.alternatives(), 2);
        assert_eq!(p.outcome(0, 0, 1), 0.6);
        assert_eq!(p.outcome(0, 1, 0), 0.4);
    }

    #[test]
    fn validate_rejects_nonzero_diagonal() {
        let err = Profile::validate(2, vec![flat(&[&[0.1, 0.6], &[0.4, 0.0]])]).unwrap_err();
        assert_eq!(err, ProfileError::NonzeroDiagonal { p: 0, i: 0 });
    }

    #[test]
    fn validate_rejects_out_of_range() {
        let err = Profile::validate(2, vec![flat(&[&[0.0, 1.5], &[-0.5, 0.0]])]).unwrap_err();
        assert_eq!(err, ProfileError::OutOfRange { p: 0, i: 0, j: 1 });
    }

    #[test]
    fn linear_order_outcomes() {
        let p = Profile::<f64>::from_linear_orders(3, &[vec![0, 1, 2]]).unwrap();
        assert_eq!(p.outcome(0, 0, 1), 1.0);
        assert_eq!(p.outcome(0, 0, 2), 1.0);
        assert_eq!(p.outcome(0, 1, 2), 1.0);
        assert_eq!(p.outcome(0, 1, 0), 0.0);
        assert_eq!(p.outcome(0, 2, 0), 0.0);
        assert_eq!(p.outcome(0, 2, 1), 0.0);
    }

    #[test]
    fn opposed_linear_orders() {
        let p = Profile::<f64>::from_linear_orders(2, &[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(p.outcome(0, 0, 1), 1.0);
        assert_eq!(p.outcome(1, 0, 1), 0.0);
    }

    #[test]
    fn duplicate_in_order_is_malformed() {
        let err = Profile::<f64>::from_linear_orders(3, &[vec![0, 0, 2]]).unwrap_err();
        assert_eq!(err, ProfileError::MalformedOrder { p: 0 });
    }

    #[test]
    fn weak_order_tie_rule() {
        let p = Profile::<f64>::from_weak_orders(3, &[vec![1, 1, 2]]).unwrap();
        assert_eq!(p.outcome(0, 0, 1), 0.5);
        assert_eq!(p.outcome(0, 1, 0), 0.5);
        assert_eq!(p.outcome(0, 0, 2), 1.0);
        assert_eq!(p.outcome(0, 1, 2), 1.0);
    }

    #[test]
    fn all_tied_ranks() {
        let p = Profile::<f64>::from_weak_orders(3, &[vec![1, 1, 1]]).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    assert_eq!(p.outcome(0, i, j), 0.5);
                }
            }
        }
    }

    #[test]
    fn short_rank_vector_is_malformed() {
        let err = Profile::<f64>::from_weak_orders(3, &[vec![1, 2]]).unwrap_err();
        assert_eq!(err, ProfileError::MalformedRanks { p: 0 });
    }

    #[test]
    fn approval_ballot_is_two_strata() {
        let p = Profile::<f64>::from_approval_ballots(3, &[vec![0, 1]]).unwrap();
        let q = Profile::<f64>::from_weak_orders(3, &[vec![1, 1, 2]]).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn empty_ballot_is_all_tied() {
        let p = Profile::<f64>::from_approval_ballots(3, &[vec![]]).unwrap();
        assert_eq!(p.outcome(0, 0, 1), 0.5);
        assert_eq!(p.outcome(0, 1, 2), 0.5);
    }

    #[test]
    fn ballot_element_out_of_range() {
        let err = Profile::<f64>::from_approval_ballots(3, &[vec![3]]).unwrap_err();
        assert_eq!(
            err,
            ProfileError::ElementOutOfRange {
                p: 0,
                element: 3,
                n: 3
            }
        );
    }

    #[test]
    fn concat_adds_individuals() {
        let a = Profile::<f64>::from_linear_orders(2, &[vec![0, 1]]).unwrap();
        let b = Profile::<f64>::from_linear_orders(2, &[vec![1, 0], vec![0, 1]]).unwrap();
        let c = a.concat(&b).unwrap();
        assert_eq!(c.individuals(), 3);
        assert_eq!(c.outcome(0, 0, 1), 1.0);
        assert_eq!(c.outcome(1, 0, 1), 0.0);
    }

    #[test]
    fn concat_dimension_mismatch() {
        let a = Profile::<f64>::from_linear_orders(2, &[vec![0, 1]]).unwrap();
        let b = Profile::<f64>::from_linear_orders(3, &[vec![0, 1, 2]]).unwrap();
        assert_eq!(
            a.concat(&b).unwrap_err(),
            ProfileError::DimensionMismatch { a: 2, b: 3 }
        );
    }

    #[test]
    fn as_linear_orders_roundtrip() {
        let orders = vec![vec![2, 0, 1], vec![1, 2, 0]];
        let p = Profile::<f64>::from_linear_orders(3, &orders).unwrap();
        assert_eq!(p.as_linear_orders().unwrap(), orders);
    }

    #[test]
    fn as_linear_orders_rejects_ties_and_cycles() {
        let tied = Profile::<f64>::from_weak_orders(3, &[vec![1, 1, 2]]).unwrap();
        assert_eq!(
            tied.as_linear_orders().unwrap_err(),
            ProfileError::NotLinearOrderProfile { p: 0 }
        );
        // 3-cycle tournament: crisp but not transitive
        let mut mat = vec![0.0; 9];
        mat[1] = 1.0; // 0 beats 1
        mat[5] = 1.0; // 1 beats 2
        mat[6] = 1.0; // 2 beats 0
        mat[3] = 0.0;
        mat[7] = 0.0;
        mat[2] = 0.0;
        let cycle = Profile::validate(3, vec![mat]).unwrap();
        assert_eq!(
            cycle.as_linear_orders().unwrap_err(),
            ProfileError::NotLinearOrderProfile { p: 0 }
        );
    }

    #[test]
    fn lobby_weights_interpolate() {
        let w = LobbyWeights::new(vec![0.0, 1.0, 4.0]).unwrap();
        assert_eq!(w.at(0.0), 0.0);
        assert_eq!(w.at(1.0), 1.0);
        assert_eq!(w.at(2.0), 4.0);
        assert_eq!(w.at(1.5), 2.5);
        assert_eq!(w.at(0.25), 0.25);
    }

    #[test]
    fn weights_must_be_nondecreasing_nonnegative() {
        assert!(PositionalWeights::new(vec![0.0, 2.0, 1.0]).is_err());
        assert!(PositionalWeights::new(vec![-1.0, 0.0]).is_err());
        assert!(LobbyWeights::new(vec![1.0, 0.5]).is_err());
        assert!(PositionalWeights::new(vec![0.0, 1.0, 2.0]).is_ok());
    }

    #[test]
    fn score_vector_comparisons() {
        let s = ScoreVector::new(vec![1.0, 1.0 + 1e-12, 0.0]);
        assert!(s.approx_eq(0, 1));
        assert!(!s.gt(1, 0));
        assert!(s.gt(0, 2));
    }

    mod fuzzed_constructors {
        use super::*;
        use proptest::prelude::*;

        fn assert_valid(p: &Profile<f64>) {
            let n = p.alternatives();
            for q in 0..p.individuals() {
                for i in 0..n {
                    assert_eq!(p.outcome(q, i, i), 0.0);
                    for j in (i + 1)..n {
                        assert_eq!(p.outcome(q, i, j) + p.outcome(q, j, i), 1.0);
                    }
                }
            }
        }

        proptest! {
            #[test]
            fn weak_orders_always_valid(
                ranks in proptest::collection::vec(
                    proptest::collection::vec(1u32..=5, 4),
                    1..5,
                )
            ) {
                let p = Profile::<f64>::from_weak_orders(4, &ranks).unwrap();
                assert_valid(&p);
            }

            #[test]
            fn approval_ballots_always_valid(
                ballots in proptest::collection::vec(
                    proptest::collection::vec(0usize..4, 0..5),
                    1..5,
                )
            ) {
                let p = Profile::<f64>::from_approval_ballots(4, &ballots).unwrap();
                assert_valid(&p);
            }
        }
    }
}
