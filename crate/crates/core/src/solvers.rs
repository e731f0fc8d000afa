//! Implicit-form scoring procedures: each procedure defines the scores as
//! the solution of `n` equations whose rows sum a per-comparison term
//! `h(a_ij^p, s_j, s_i)` over opponents and individuals. Linear kinds are
//! solved by a pivoting direct method, the nonlinear kinds by damped
//! fixed-point iteration, Zermelo by the classical minorize–maximize update.

use crate::profile::{Profile, ScoreVector};
use crate::scores::extended_borda;
use crate::Real;
use thiserror::Error;

/// The implicit systems supported by [`solve`] and [`residual`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ImplicitKind {
    /// `sum (a_ij^p - s_i/(s_i+s_j)) = 0`; `s_i > 0`, `sum s_i = 1`.
    Zermelo,
    /// `sum a_ij^p (eps*s_j + 1 - s_i/(m(n-1))) = 0`; `eps > 0`, `s_i > 0`.
    Katz,
    /// `sum (mn(a_ij^p - a_ji^p) + s_j - s_i) = 0`; `sum s_i = 0`.
    LeastSquares,
    /// `sum (a_ij^p s_j - a_ji^p s_i) = 0`; `s_i > 0`, normalized to sum 1.
    DanielsLinear,
    /// `sum (a_ij^p s_j/s_i - a_ji^p s_i/s_j) = 0`; `s_i > 0`, normalized.
    DanielsRatio,
    /// `sum (a_ij^p s_j(1-s_i) - a_ji^p s_i(1-s_j)) = 0`; `0 < s_i < 1`,
    /// pinned to `sum s_i = 1` (the raw system has a one-parameter family).
    Cowden,
    /// `sum (gamma(a_ij^p - a_ji^p) - (s_i - s_j)) - s_i/eps = 0` with
    /// `gamma = 1/eps + mn`; equals the extended Borda scores on complete
    /// profiles.
    GeneralizedRowSum,
}

impl ImplicitKind {
    pub const ALL: [ImplicitKind; 7] = [
        ImplicitKind::Zermelo,
        ImplicitKind::Katz,
        ImplicitKind::LeastSquares,
        ImplicitKind::DanielsLinear,
        ImplicitKind::DanielsRatio,
        ImplicitKind::Cowden,
        ImplicitKind::GeneralizedRowSum,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            ImplicitKind::Zermelo => "zermelo",
            ImplicitKind::Katz => "katz",
            ImplicitKind::LeastSquares => "lsq",
            ImplicitKind::DanielsLinear => "daniels-lin",
            ImplicitKind::DanielsRatio => "daniels-ratio",
            ImplicitKind::Cowden => "cowden",
            ImplicitKind::GeneralizedRowSum => "grs",
        }
    }

    fn needs_epsilon(&self) -> bool {
        matches!(self, ImplicitKind::Katz | ImplicitKind::GeneralizedRowSum)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolveError {
    #[error("{kind:?} requires a positive epsilon parameter")]
    InvalidEpsilon { kind: ImplicitKind },
    #[error("iteration cap hit after {iterations} iterations (residual {residual})")]
    NotConverged { iterations: usize, residual: f64 },
    #[error("linear system is singular")]
    SingularSystem,
    #[error(
        "Ford condition violated: some group of alternatives has no wins against its complement"
    )]
    FordConditionViolated,
    #[error("scores left the positivity domain of {kind:?}")]
    PositivityLost { kind: ImplicitKind },
    #[error("score vector violates the domain of {kind:?} at alternative {index}")]
    DomainViolation { kind: ImplicitKind, index: usize },
    #[error("score vector has length {got}, profile has {expected} alternatives")]
    ScoreLengthMismatch { expected: usize, got: usize },
}

/// One of the implicit systems together with its parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImplicitProcedureSpec<F> {
    pub kind: ImplicitKind,
    epsilon: Option<F>,
}

impl<F: Real> ImplicitProcedureSpec<F> {
    pub fn new(kind: ImplicitKind) -> Result<Self, SolveError> {
        if kind.needs_epsilon() {
            return Err(SolveError::InvalidEpsilon { kind });
        }
        Ok(ImplicitProcedureSpec {
            kind,
            epsilon: None,
        })
    }

    pub fn with_epsilon(kind: ImplicitKind, epsilon: F) -> Result<Self, SolveError> {
        if !kind.needs_epsilon() || !(epsilon > F::zero()) {
            return Err(SolveError::InvalidEpsilon { kind });
        }
        Ok(ImplicitProcedureSpec {
            kind,
            epsilon: Some(epsilon),
        })
    }

    pub fn zermelo() -> Self {
        Self::new(ImplicitKind::Zermelo).unwrap()
    }

    pub fn katz(epsilon: F) -> Result<Self, SolveError> {
        Self::with_epsilon(ImplicitKind::Katz, epsilon)
    }

    pub fn least_squares() -> Self {
        Self::new(ImplicitKind::LeastSquares).unwrap()
    }

    pub fn daniels_linear() -> Self {
        Self::new(ImplicitKind::DanielsLinear).unwrap()
    }

    pub fn daniels_ratio() -> Self {
        Self::new(ImplicitKind::DanielsRatio).unwrap()
    }

    pub fn cowden() -> Self {
        Self::new(ImplicitKind::Cowden).unwrap()
    }

    pub fn generalized_row_sum(epsilon: F) -> Result<Self, SolveError> {
        Self::with_epsilon(ImplicitKind::GeneralizedRowSum, epsilon)
    }

    pub fn epsilon(&self) -> Option<F> {
        self.epsilon
    }

    /// `gamma = 1/eps + m*n`, recomputed per profile.
    pub fn gamma(&self, n: usize, m: usize) -> Option<F> {
        self.epsilon
            .map(|eps| eps.recip() + F::from(m * n).unwrap())
    }

    /// The per-comparison term `h(a, s_j, s_i)` of this system's rows, using
    /// complementarity (`a_ji = 1 - a`). Every row of the system is the sum
    /// of `h` over the `m(n-1)` comparisons of one alternative. `h` does not
    /// decrease in `a` or `s_j` and does not increase in `s_i`.
    pub fn per_comparison_term(&self, a: F, s_j: F, s_i: F, n: usize, m: usize) -> F {
        let one = F::one();
        let pairs = F::from(m * (n - 1)).unwrap();
        match self.kind {
            ImplicitKind::Zermelo => a - s_i / (s_i + s_j),
            ImplicitKind::Katz => {
                let eps = self.epsilon.unwrap();
                a * (eps * s_j + one - s_i / pairs)
            }
            ImplicitKind::LeastSquares => F::from(m * n).unwrap() * (a - (one - a)) + s_j - s_i,
            ImplicitKind::DanielsLinear => a * s_j - (one - a) * s_i,
            ImplicitKind::DanielsRatio => a * s_j / s_i - (one - a) * s_i / s_j,
            ImplicitKind::Cowden => a * s_j * (one - s_i) - (one - a) * s_i * (one - s_j),
            ImplicitKind::GeneralizedRowSum => {
                let eps = self.epsilon.unwrap();
                let gamma = self.gamma(n, m).unwrap();
                gamma * (a - (one - a)) - (s_i - s_j) - s_i / (eps * pairs)
            }
        }
    }

    fn check_domain(&self, scores: &[F]) -> Result<(), SolveError> {
        let needs_positive = matches!(
            self.kind,
            ImplicitKind::Zermelo
                | ImplicitKind::DanielsLinear
                | ImplicitKind::DanielsRatio
                | ImplicitKind::Cowden
        );
        if needs_positive {
            for (index, &s) in scores.iter().enumerate() {
                if !(s > F::zero()) {
                    return Err(SolveError::DomainViolation {
                        kind: self.kind,
                        index,
                    });
                }
                if self.kind == ImplicitKind::Cowden && !(s < F::one()) {
                    return Err(SolveError::DomainViolation {
                        kind: self.kind,
                        index,
                    });
                }
            }
        }
        Ok(())
    }
}

/// Numerical controls for [`solve`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig<F> {
    pub residual_tolerance: F,
    pub max_iterations: usize,
    /// Largest absolute coordinate change between iterates below which a
    /// fixed-point iteration is considered stagnant.
    pub step_tolerance: F,
}

impl<F: Real> Default for SolverConfig<F> {
    fn default() -> Self {
        SolverConfig {
            residual_tolerance: F::from(1e-10).unwrap(),
            max_iterations: 10_000,
            step_tolerance: F::from(1e-14).unwrap(),
        }
    }
}

/// Outcome of a successful solve. `converged` implies the reported
/// `max_abs_residual` is at or below the configured tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport<F> {
    pub scores: ScoreVector<F>,
    pub iterations: usize,
    pub max_abs_residual: F,
    pub converged: bool,
}

/// Evaluates the left-hand sides of the system at the given scores.
pub fn residual<F: Real>(
    spec: &ImplicitProcedureSpec<F>,
    profile: &Profile<F>,
    scores: &ScoreVector<F>,
) -> Result<Vec<F>, SolveError> {
    let n = profile.alternatives();
    let m = profile.individuals();
    if scores.len() != n {
        return Err(SolveError::ScoreLengthMismatch {
            expected: n,
            got: scores.len(),
        });
    }
    spec.check_domain(&scores.scores)?;
    let s = &scores.scores;
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut acc = F::zero();
        for j in 0..n {
            if j == i {
                continue;
            }
            for p in 0..m {
                acc = acc + spec.per_comparison_term(profile.outcome(p, i, j), s[j], s[i], n, m);
            }
        }
        out.push(acc);
    }
    Ok(out)
}

fn max_abs<F: Real>(v: &[F]) -> F {
    v.iter().fold(F::zero(), |acc, &x| acc.max(x.abs()))
}

/// Solves the implicit system for the profile's scores.
pub fn solve<F: Real>(
    spec: &ImplicitProcedureSpec<F>,
    profile: &Profile<F>,
    cfg: &SolverConfig<F>,
) -> Result<SolveReport<F>, SolveError> {
    match spec.kind {
        ImplicitKind::Zermelo => solve_zermelo(spec, profile, cfg),
        ImplicitKind::Katz => solve_katz(spec, profile, cfg),
        ImplicitKind::LeastSquares => solve_least_squares(spec, profile, cfg),
        ImplicitKind::GeneralizedRowSum => solve_grs(spec, profile, cfg),
        ImplicitKind::DanielsLinear | ImplicitKind::DanielsRatio | ImplicitKind::Cowden => {
            solve_damped_fixed_point(spec, profile, cfg)
        }
    }
}

/// Generalized row sums specialized to complete profiles: they coincide with
/// the extended Borda scores for every `eps > 0`, which makes this an
/// independent oracle for `solve(GeneralizedRowSum)` and
/// `solve(LeastSquares)`.
pub fn grs_closed_form<F: Real>(profile: &Profile<F>, epsilon: F) -> ScoreVector<F> {
    debug_assert!(epsilon > F::zero());
    let _ = epsilon; // the closed form on complete data does not depend on it
    extended_borda(profile)
}

/// Whether the digraph with an edge `i -> j` for every positive aggregate
/// win `sum_p a_ij^p > 0` is strongly connected. Equivalent to the Ford
/// condition: every bipartition of the alternatives has positive aggregate
/// wins across it in both directions.
pub fn ford_condition_holds<F: Real>(profile: &Profile<F>) -> bool {
    let n = profile.alternatives();
    let edge = |i: usize, j: usize| profile.aggregate(i, j) > F::zero();
    reaches_all(n, edge) && reaches_all(n, |i, j| edge(j, i))
}

fn reaches_all(n: usize, edge: impl Fn(usize, usize) -> bool) -> bool {
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for j in 0..n {
            if !seen[j] && edge(i, j) {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

fn finish<F: Real>(
    spec: &ImplicitProcedureSpec<F>,
    profile: &Profile<F>,
    cfg: &SolverConfig<F>,
    mut scores: Vec<F>,
    iterations: usize,
) -> Result<SolveReport<F>, SolveError> {
    for s in &mut scores {
        if *s == F::zero() {
            *s = F::zero(); // drop negative-zero artifacts of elimination
        }
    }
    let scores = ScoreVector::new(scores);
    let res = residual(spec, profile, &scores)?;
    let max_res = max_abs(&res);
    if max_res <= cfg.residual_tolerance {
        Ok(SolveReport {
            scores,
            iterations,
            max_abs_residual: max_res,
            converged: true,
        })
    } else {
        Err(SolveError::NotConverged {
            iterations,
            residual: max_res.to_f64().unwrap_or(f64::NAN),
        })
    }
}

fn solve_zermelo<F: Real>(
    spec: &ImplicitProcedureSpec<F>,
    profile: &Profile<F>,
    cfg: &SolverConfig<F>,
) -> Result<SolveReport<F>, SolveError> {
    if !ford_condition_holds(profile) {
        return Err(SolveError::FordConditionViolated);
    }
    let n = profile.alternatives();
    let m = F::from(profile.individuals()).unwrap();
    let wins: Vec<F> = (0..n).map(|i| profile.total_wins(i)).collect();
    let mut s = vec![F::one() / F::from(n).unwrap(); n];
    for iter in 1..=cfg.max_iterations {
        // minorize-maximize update, then renormalize to sum 1
        let mut next: Vec<F> = (0..n)
            .map(|i| {
                let denom = (0..n)
                    .filter(|&j| j != i)
                    .fold(F::zero(), |acc, j| acc + m / (s[i] + s[j]));
                wins[i] / denom
            })
            .collect();
        let total = next.iter().fold(F::zero(), |a, &b| a + b);
        for x in &mut next {
            *x = *x / total;
        }
        let step = s
            .iter()
            .zip(&next)
            .map(|(&a, &b)| (a - b).abs())
            .fold(F::zero(), F::max);
        s = next;
        let sv = ScoreVector::new(s.clone());
        let res = residual(spec, profile, &sv)?;
        if max_abs(&res) <= cfg.residual_tolerance || step <= cfg.step_tolerance {
            return finish(spec, profile, cfg, s, iter);
        }
    }
    finish(spec, profile, cfg, s, cfg.max_iterations)
}

/// Damped fixed-point iteration `s <- normalize((s + T(s)) / 2)` for the
/// Daniels and Cowden systems. The undamped maps oscillate with period two
/// on two-alternative profiles; averaging keeps their fixed points and
/// restores convergence.
fn solve_damped_fixed_point<F: Real>(
    spec: &ImplicitProcedureSpec<F>,
    profile: &Profile<F>,
    cfg: &SolverConfig<F>,
) -> Result<SolveReport<F>, SolveError> {
    if spec.kind == ImplicitKind::DanielsLinear && !ford_condition_holds(profile) {
        return Err(SolveError::FordConditionViolated);
    }
    let n = profile.alternatives();
    let agg: Vec<Vec<F>> = (0..n)
        .map(|i| (0..n).map(|j| profile.aggregate(i, j)).collect())
        .collect();
    let half = F::from(0.5).unwrap();
    let mut s = vec![F::one() / F::from(n).unwrap(); n];
    for iter in 1..=cfg.max_iterations {
        let mapped: Vec<F> = match spec.kind {
            ImplicitKind::DanielsLinear => (0..n)
                .map(|i| {
                    let num = (0..n).fold(F::zero(), |acc, j| acc + agg[i][j] * s[j]);
                    let losses = (0..n).fold(F::zero(), |acc, j| acc + agg[j][i]);
                    num / losses
                })
                .collect(),
            ImplicitKind::DanielsRatio => (0..n)
                .map(|i| {
                    let num = (0..n).fold(F::zero(), |acc, j| acc + agg[i][j] * s[j]);
                    let den = (0..n)
                        .filter(|&j| j != i)
                        .fold(F::zero(), |acc, j| acc + agg[j][i] / s[j]);
                    (num / den).sqrt()
                })
                .collect(),
            ImplicitKind::Cowden => (0..n)
                .map(|i| {
                    let x = (0..n).fold(F::zero(), |acc, j| acc + agg[i][j] * s[j]);
                    let y = (0..n)
                        .filter(|&j| j != i)
                        .fold(F::zero(), |acc, j| acc + agg[j][i] * (F::one() - s[j]));
                    x / (x + y)
                })
                .collect(),
            _ => unreachable!(),
        };
        if mapped.iter().any(|x| !x.is_finite() || *x <= F::zero()) {
            return Err(SolveError::PositivityLost { kind: spec.kind });
        }
        let mut next: Vec<F> = s
            .iter()
            .zip(&mapped)
            .map(|(&a, &b)| half * (a + b))
            .collect();
        let total = next.iter().fold(F::zero(), |a, &b| a + b);
        for x in &mut next {
            *x = *x / total;
        }
        let step = s
            .iter()
            .zip(&next)
            .map(|(&a, &b)| (a - b).abs())
            .fold(F::zero(), F::max);
        s = next;
        let sv = ScoreVector::new(s.clone());
        let res = residual(spec, profile, &sv)?;
        if max_abs(&res) <= cfg.residual_tolerance || step <= cfg.step_tolerance {
            return finish(spec, profile, cfg, s, iter);
        }
    }
    finish(spec, profile, cfg, s, cfg.max_iterations)
}

fn solve_katz<F: Real>(
    spec: &ImplicitProcedureSpec<F>,
    profile: &Profile<F>,
    cfg: &SolverConfig<F>,
) -> Result<SolveReport<F>, SolveError> {
    let n = profile.alternatives();
    let eps = spec.epsilon().unwrap();
    let pairs = F::from(profile.individuals() * (n - 1)).unwrap();
    let mut a = vec![vec![F::zero(); n]; n];
    let mut b = vec![F::zero(); n];
    for i in 0..n {
        let w = profile.total_wins(i);
        a[i][i] = -w / pairs;
        for j in 0..n {
            if j != i {
                a[i][j] = eps * profile.aggregate(i, j);
            }
        }
        b[i] = -w;
    }
    let s = linear_solve(a, b)?;
    if s.iter().any(|&x| !(x > F::zero())) {
        return Err(SolveError::PositivityLost { kind: spec.kind });
    }
    finish(spec, profile, cfg, s, 1)
}

fn solve_least_squares<F: Real>(
    spec: &ImplicitProcedureSpec<F>,
    profile: &Profile<F>,
    cfg: &SolverConfig<F>,
) -> Result<SolveReport<F>, SolveError> {
    let n = profile.alternatives();
    let m = F::from(profile.individuals()).unwrap();
    let mn = m * F::from(n).unwrap();
    // The raw system has rank n-1 with null space along the all-ones vector;
    // adding m*J pins its solution to the sum-zero representative.
    let mut a = vec![vec![m + m; n]; n];
    let mut b = vec![F::zero(); n];
    for i in 0..n {
        a[i][i] = -m * F::from(n - 2).unwrap();
        let net = (0..n).filter(|&j| j != i).fold(F::zero(), |acc, j| {
            acc + (profile.aggregate(i, j) - profile.aggregate(j, i))
        });
        b[i] = -mn * net;
    }
    let s = linear_solve(a, b)?;
    finish(spec, profile, cfg, s, 1)
}

fn solve_grs<F: Real>(
    spec: &ImplicitProcedureSpec<F>,
    profile: &Profile<F>,
    cfg: &SolverConfig<F>,
) -> Result<SolveReport<F>, SolveError> {
    let n = profile.alternatives();
    let m = F::from(profile.individuals()).unwrap();
    let eps = spec.epsilon().unwrap();
    let gamma = spec.gamma(n, profile.individuals()).unwrap();
    let mut a = vec![vec![m; n]; n];
    let mut b = vec![F::zero(); n];
    for i in 0..n {
        a[i][i] = -(m * F::from(n - 1).unwrap() + eps.recip());
        let net = (0..n).filter(|&j| j != i).fold(F::zero(), |acc, j| {
            acc + (profile.aggregate(i, j) - profile.aggregate(j, i))
        });
        b[i] = -gamma * net;
    }
    let s = linear_solve(a, b)?;
    finish(spec, profile, cfg, s, 1)
}

/// Gaussian elimination with partial pivoting. A pivot below `1e-12` of the
/// matrix scale raises `SingularSystem`.
fn linear_solve<F: Real>(mut a: Vec<Vec<F>>, mut b: Vec<F>) -> Result<Vec<F>, SolveError> {
    let n = b.len();
    let scale = a
        .iter()
        .flat_map(|row| row.iter())
        .fold(F::zero(), |acc, &x| acc.max(x.abs()));
    let floor = F::from(1e-12).unwrap() * scale;
    for col in 0..n {
        let pivot_row = (col..n)
            .max_by(|&r, &q| {
                a[r][col]
                    .abs()
                    .partial_cmp(&a[q][col].abs())
                    .expect("finite pivot")
            })
            .unwrap();
        if a[pivot_row][col].abs() <= floor {
            return Err(SolveError::SingularSystem);
        }
        a.swap(col, pivot_row);
        b.swap(col, pivot_row);
        for row in (col + 1)..n {
            let f = a[row][col] / a[col][col];
            if f == F::zero() {
                continue;
            }
            for k in col..n {
                let upd = a[col][k];
                a[row][k] = a[row][k] - f * upd;
            }
            b[row] = b[row] - f * b[col];
        }
    }
    let mut x = vec![F::zero(); n];
    for row in (0..n).rev() {
        let mut acc = b[row];
        for k in (row + 1)..n {
            acc = acc - a[row][k] * x[k];
        }
        x[row] = acc / a[row][row];
    }
    Ok(x)
}
