//! The scoring-procedure abstraction the axiom checkers drive: anything that
//! deterministically maps a profile to a score vector, whether a direct
//! score, an implicit-system solve, or an external program.

use crate::profile::{Profile, ProfileError, ScoreVector};
use crate::scores;
use crate::solvers::{self, ImplicitProcedureSpec, SolveError, SolverConfig};
use crate::Real;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ProcedureError {
    #[error(transparent)]
    Profile(#[from] ProfileError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error("unknown method {0}")]
    UnknownMethod(String),
    #[error("external procedure failed: {0}")]
    External(String),
}

/// A deterministic scoring procedure. Evaluations must be pure: the axiom
/// harness may replay them and may run trials concurrently.
pub trait Procedure<F> {
    fn name(&self) -> &str;

    fn evaluate(&self, profile: &Profile<F>) -> Result<ScoreVector<F>, ProcedureError>;

    /// Whether the procedure is defined on crisp (0/1-valued) profiles;
    /// the fixed-point kinds are not, since crisp profiles break the Ford
    /// condition or make their linear systems singular.
    fn defined_on_crisp(&self) -> bool {
        true
    }
}

/// The built-in procedures, including the two deliberately broken controls
/// the falsification harness is validated against.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BuiltinProcedure<F> {
    ExtendedBorda,
    DownSidedBorda,
    UpSidedBorda,
    Implicit(ImplicitProcedureSpec<F>),
    /// Control: scores identically zero (violates self-consistency).
    ConstantZero,
    /// Control: negated extended Borda (violates monotonicity).
    NegatedBorda,
}

impl<F: Real> BuiltinProcedure<F> {
    /// Looks a procedure up by its CLI name.
    pub fn by_name(name: &str, epsilon: Option<F>) -> Result<Self, ProcedureError> {
        use crate::solvers::ImplicitKind;
        let eps = |kind: ImplicitKind| epsilon.ok_or(SolveError::InvalidEpsilon { kind });
        Ok(match name {
            "borda" => BuiltinProcedure::ExtendedBorda,
            "borda-down" => BuiltinProcedure::DownSidedBorda,
            "borda-up" => BuiltinProcedure::UpSidedBorda,
            "const-zero" => BuiltinProcedure::ConstantZero,
            "neg-borda" => BuiltinProcedure::NegatedBorda,
            "zermelo" => BuiltinProcedure::Implicit(ImplicitProcedureSpec::zermelo()),
            "lsq" => BuiltinProcedure::Implicit(ImplicitProcedureSpec::least_squares()),
            "daniels-lin" => BuiltinProcedure::Implicit(ImplicitProcedureSpec::daniels_linear()),
            "daniels-ratio" => BuiltinProcedure::Implicit(ImplicitProcedureSpec::daniels_ratio()),
            "cowden" => BuiltinProcedure::Implicit(ImplicitProcedureSpec::cowden()),
            "katz" => {
                BuiltinProcedure::Implicit(ImplicitProcedureSpec::katz(eps(ImplicitKind::Katz)?)?)
            }
            "grs" => BuiltinProcedure::Implicit(ImplicitProcedureSpec::generalized_row_sum(eps(
                ImplicitKind::GeneralizedRowSum,
            )?)?),
            other => return Err(ProcedureError::UnknownMethod(other.to_string())),
        })
    }
}

impl<F: Real> Procedure<F> for BuiltinProcedure<F> {
    fn name(&self) -> &str {
        match self {
            BuiltinProcedure::ExtendedBorda => "borda",
            BuiltinProcedure::DownSidedBorda => "borda-down",
            BuiltinProcedure::UpSidedBorda => "borda-up",
            BuiltinProcedure::Implicit(spec) => spec.kind.name(),
            BuiltinProcedure::ConstantZero => "const-zero",
            BuiltinProcedure::NegatedBorda => "neg-borda",
        }
    }

    fn evaluate(&self, profile: &Profile<F>) -> Result<ScoreVector<F>, ProcedureError> {
        Ok(match self {
            BuiltinProcedure::ExtendedBorda => scores::extended_borda(profile),
            BuiltinProcedure::DownSidedBorda => scores::down_sided_borda(profile),
            BuiltinProcedure::UpSidedBorda => scores::up_sided_borda(profile),
            BuiltinProcedure::Implicit(spec) => {
                solvers::solve(spec, profile, &SolverConfig::default())?.scores
            }
            BuiltinProcedure::ConstantZero => {
                ScoreVector::new(vec![F::zero(); profile.alternatives()])
            }
            BuiltinProcedure::NegatedBorda => {
                let mut s = scores::extended_borda(profile);
                for x in &mut s.scores {
                    *x = -*x;
                }
                s
            }
        })
    }

    fn defined_on_crisp(&self) -> bool {
        match self {
            BuiltinProcedure::Implicit(spec) => matches!(
                spec.kind,
                crate::solvers::ImplicitKind::LeastSquares
                    | crate::solvers::ImplicitKind::GeneralizedRowSum
            ),
            _ => true,
        }
    }
}
