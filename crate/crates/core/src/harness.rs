//! Randomized falsification harness: throws seeded random profiles at a
//! scoring procedure and hunts for counterexamples to an axiom. Trials are
//! independent, deterministic given the seed, and reported in trial order.

use crate::generate::{random_permutation, sample_balanced_profile, GeneratorConfig};
use crate::majorize::check_self_consistency;
use crate::procedure::{Procedure, ProcedureError};
use crate::profile::Profile;
use crate::ranking::ranking_from_scores;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// The axioms the harness can attack.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    SelfConsistency,
    Reinforcement,
    Cancellation,
    Faithfulness,
    Neutrality,
    Anonymity,
    Monotonicity,
}

impl Axiom {
    pub const ALL: [Axiom; 7] = [
        Axiom::SelfConsistency,
        Axiom::Reinforcement,
        Axiom::Cancellation,
        Axiom::Faithfulness,
        Axiom::Neutrality,
        Axiom::Anonymity,
        Axiom::Monotonicity,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Axiom::SelfConsistency => "self-consistency",
            Axiom::Reinforcement => "reinforcement",
            Axiom::Cancellation => "cancellation",
            Axiom::Faithfulness => "faithfulness",
            Axiom::Neutrality => "neutrality",
            Axiom::Anonymity => "anonymity",
            Axiom::Monotonicity => "monotonicity",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HarnessError {
    #[error("axiom {axiom:?} is not applicable to procedure {procedure}: {reason}")]
    UnsupportedAxiomForProcedure {
        axiom: Axiom,
        procedure: String,
        reason: String,
    },
    #[error(transparent)]
    Procedure(#[from] ProcedureError),
}

/// A counterexample found by the harness, with the inputs that replay it.
#[derive(Debug, Clone)]
pub struct FuzzViolation {
    pub trial: usize,
    pub axiom: Axiom,
    pub detail: String,
    pub profiles: Vec<Profile<f64>>,
}

/// Outcome of a fuzzing run.
#[derive(Debug, Clone)]
pub struct FuzzReport {
    pub axiom: Axiom,
    pub procedure: String,
    pub trials: usize,
    pub seed: u64,
    pub violations: Vec<FuzzViolation>,
}

impl FuzzReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Runs `trials` seeded random trials of one axiom against one procedure.
///
/// Solver errors on generated inputs (e.g. a fixed-point kind hitting a
/// degenerate profile) abort the run; use an interior-mode generator for
/// procedures with positivity domains.
pub fn fuzz_axiom(
    procedure: &dyn Procedure<f64>,
    axiom: Axiom,
    trials: usize,
    config: &GeneratorConfig,
) -> Result<FuzzReport, HarnessError> {
    assert!(trials >= 1);
    if axiom == Axiom::Faithfulness && !procedure.defined_on_crisp() {
        return Err(HarnessError::UnsupportedAxiomForProcedure {
            axiom,
            procedure: procedure.name().to_string(),
            reason: "procedure is undefined on crisp single-individual profiles".into(),
        });
    }
    let mut rng = config.rng();
    let mut violations = Vec::new();
    for trial in 0..trials {
        let n = rng.gen_range(config.n_min..=config.n_max);
        let m = rng.gen_range(config.m_min..=config.m_max);
        match axiom {
            Axiom::SelfConsistency => {
                let a = crate::generate::sample_profile(&mut rng, n, m, config.mode);
                let b = crate::generate::sample_profile(&mut rng, n, m, config.mode);
                for v in check_self_consistency(procedure, &a, &b)? {
                    violations.push(FuzzViolation {
                        trial,
                        axiom,
                        detail: format!(
                            "{} majorization of alternative {} over {} not respected: {} vs {}",
                            if v.strict { "strict" } else { "weak" },
                            v.i,
                            v.j,
                            v.scores_a.scores[v.i],
                            v.scores_b.scores[v.j],
                        ),
                        profiles: vec![a.clone(), b.clone()],
                    });
                }
            }
            Axiom::Reinforcement => {
                let a = crate::generate::sample_profile(&mut rng, n, m, config.mode);
                let m2 = rng.gen_range(config.m_min..=config.m_max);
                let b = crate::generate::sample_profile(&mut rng, n, m2, config.mode);
                let combined = a.concat(&b).expect("same n");
                let sa = procedure.evaluate(&a)?;
                let sb = procedure.evaluate(&b)?;
                let sc = procedure.evaluate(&combined)?;
                let want = sa.add(&sb);
                let diff = sc.max_abs_diff(&want);
                if diff > sc.tolerance {
                    violations.push(FuzzViolation {
                        trial,
                        axiom,
                        detail: format!("combined-profile scores differ from sum by {diff}"),
                        profiles: vec![a, b],
                    });
                }
            }
            Axiom::Cancellation => {
                let p = sample_balanced_profile(&mut rng, n, m);
                let s = procedure.evaluate(&p)?;
                let max = s.scores.iter().cloned().fold(f64::MIN, f64::max);
                let min = s.scores.iter().cloned().fold(f64::MAX, f64::min);
                if max - min > s.tolerance {
                    violations.push(FuzzViolation {
                        trial,
                        axiom,
                        detail: format!(
                            "balanced profile not scored socially equivalent (spread {})",
                            max - min
                        ),
                        profiles: vec![p],
                    });
                }
            }
            Axiom::Faithfulness => {
                let order = random_permutation(&mut rng, n);
                let p = Profile::from_linear_orders(n, std::slice::from_ref(&order))
                    .expect("valid order");
                let s = procedure.evaluate(&p)?;
                let ranking = ranking_from_scores(&s);
                let expected: Vec<Vec<usize>> = order.iter().map(|&i| vec![i]).collect();
                if ranking.strata() != expected.as_slice() {
                    violations.push(FuzzViolation {
                        trial,
                        axiom,
                        detail: format!(
                            "single individual's order {order:?} not reproduced: {:?}",
                            ranking.strata()
                        ),
                        profiles: vec![p],
                    });
                }
            }
            Axiom::Neutrality => {
                let p = crate::generate::sample_profile(&mut rng, n, m, config.mode);
                let perm = random_permutation(&mut rng, n);
                let s = procedure.evaluate(&p)?;
                let sp = procedure.evaluate(&p.permute_alternatives(&perm))?;
                let diff = sp.max_abs_diff(&s.permuted(&perm));
                if diff > s.tolerance {
                    violations.push(FuzzViolation {
                        trial,
                        axiom,
                        detail: format!("alternative relabeling moved scores by {diff}"),
                        profiles: vec![p],
                    });
                }
            }
            Axiom::Anonymity => {
                let p = crate::generate::sample_profile(&mut rng, n, m, config.mode);
                let perm = random_permutation(&mut rng, m);
                let s = procedure.evaluate(&p)?;
                let sp = procedure.evaluate(&p.permute_individuals(&perm))?;
                let diff = sp.max_abs_diff(&s);
                if diff > s.tolerance {
                    violations.push(FuzzViolation {
                        trial,
                        axiom,
                        detail: format!("individual relabeling moved scores by {diff}"),
                        profiles: vec![p],
                    });
                }
            }
            Axiom::Monotonicity => {
                let p = crate::generate::sample_profile(&mut rng, n, m, config.mode);
                let i = rng.gen_range(0..n);
                let j = (i + rng.gen_range(1..n)) % n;
                let (p_ind, headroom) = {
                    let p_ind = rng.gen_range(0..m);
                    (p_ind, 1.0 - p.outcome(p_ind, i, j))
                };
                if headroom <= 0.0 {
                    continue;
                }
                let delta = headroom * rng.gen_range(0.1..1.0);
                let bumped = p.bump_outcome(p_ind, i, j, delta);
                let before = procedure.evaluate(&p)?;
                let after = procedure.evaluate(&bumped)?;
                let tol = before.tolerance;
                let mut broken = Vec::new();
                if after.scores[i] < before.scores[i] - tol {
                    broken.push(format!(
                        "score of {} dropped {} -> {}",
                        i, before.scores[i], after.scores[i]
                    ));
                }
                for k in 0..n {
                    if k != i && before.gt(i, k) && after.gt(k, i) {
                        broken.push(format!("alternative {k} overtook {i}"));
                    }
                }
                if !broken.is_empty() {
                    violations.push(FuzzViolation {
                        trial,
                        axiom,
                        detail: broken.join("; "),
                        profiles: vec![p, bumped],
                    });
                }
            }
        }
    }
    Ok(FuzzReport {
        axiom,
        procedure: procedure.name().to_string(),
        trials,
        seed: config.seed,
        violations,
    })
}
