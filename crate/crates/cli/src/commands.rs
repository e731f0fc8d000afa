use std::fs;
use std::hash::{Hash, Hasher};
use std::io::Read;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, ValueEnum};
use ranklab_core::io::{
    paretian_set_from_json, profile_from_csv_texts, profile_from_json, profile_to_json,
    scores_from_json, IoError,
};
use ranklab_core::procedure::BuiltinProcedure;
use ranklab_core::profile::{LobbyWeights, PositionalWeights};
use ranklab_core::scores::{convex_combination_scores, lobby_size_scores, point_scores};
use ranklab_core::solvers::{ImplicitKind, ImplicitProcedureSpec, SolveError};
use ranklab_core::{
    choice_from_scores, closeness_to_unanimity_choice, fuzz_axiom, kemeny_median,
    ranking_from_scores, Axiom, GeneratorConfig, MonotoneExtension, Procedure, ProcedureError,
    Profile, ProfileError, ProfileMode, RankError, ScoreVector,
};
use serde::Serialize;
use serde_json::json;

use crate::external::ExternalProcedure;

pub struct CliError {
    pub exit_code: i32,
    pub code: String,
    pub message: String,
}

impl CliError {
    fn new(exit_code: i32, code: &str, message: impl ToString) -> Self {
        CliError {
            exit_code,
            code: code.to_string(),
            message: message.to_string(),
        }
    }

    pub fn to_json(&self) -> String {
        json!({"error": {"code": self.code, "message": self.message}}).to_string()
    }
}

fn profile_error_code(e: &ProfileError) -> &'static str {
    match e {
        ProfileError::InvalidDimensions { .. } => "INVALID_DIMENSIONS",
        ProfileError::MalformedMatrix { .. } => "MALFORMED_MATRIX",
        ProfileError::ComplementarityViolation { .. } => "COMPLEMENTARITY_VIOLATION",
        ProfileError::NonzeroDiagonal { .. } => "NONZERO_DIAGONAL",
        ProfileError::OutOfRange { .. } => "OUT_OF_RANGE",
        ProfileError::MalformedOrder { .. } => "MALFORMED_ORDER",
        ProfileError::MalformedRanks { .. } => "MALFORMED_RANKS",
        ProfileError::ElementOutOfRange { .. } => "ELEMENT_OUT_OF_RANGE",
        ProfileError::DimensionMismatch { .. } => "DIMENSION_MISMATCH",
        ProfileError::NotLinearOrderProfile { .. } => "NOT_LINEAR_ORDER_PROFILE",
        ProfileError::NotSingleRelation { .. } => "NOT_SINGLE_RELATION",
        ProfileError::InvalidWeights(_) => "INVALID_WEIGHTS",
    }
}

fn solve_error(e: SolveError) -> CliError {
    let (code, exit) = match &e {
        SolveError::InvalidEpsilon { .. } => ("INVALID_EPSILON", 2),
        SolveError::NotConverged { .. } => ("NOT_CONVERGED", 3),
        SolveError::SingularSystem => ("SINGULAR_SYSTEM", 3),
        SolveError::FordConditionViolated => ("FORD_CONDITION", 3),
        SolveError::PositivityLost { .. } => ("POSITIVITY_LOST", 3),
        SolveError::DomainViolation { .. } => ("DOMAIN_VIOLATION", 3),
        SolveError::ScoreLengthMismatch { .. } => ("SCORE_LENGTH_MISMATCH", 2),
    };
    CliError::new(exit, code, e)
}

fn procedure_error(e: ProcedureError) -> CliError {
    match e {
        ProcedureError::Profile(p) => CliError::new(2, profile_error_code(&p), p),
        ProcedureError::Solve(s) => solve_error(s),
        ProcedureError::UnknownMethod(m) => {
            CliError::new(2, "UNKNOWN_METHOD", format!("unknown method {m}"))
        }
        ProcedureError::External(msg) => CliError::new(4, "EXTERNAL_PROTOCOL", msg),
    }
}

fn io_error(e: IoError) -> CliError {
    match e {
        IoError::Profile(p) => CliError::new(2, profile_error_code(&p), p),
        other => CliError::new(2, "MALFORMED_INPUT", other),
    }
}

fn read_error(e: std::io::Error, path: &str) -> CliError {
    CliError::new(2, "IO", format!("{path}: {e}"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Interior,
    Crisp,
    WeakOrder,
    LinearOrder,
}

impl From<Mode> for ProfileMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Interior => ProfileMode::Interior,
            Mode::Crisp => ProfileMode::Crisp,
            Mode::WeakOrder => ProfileMode::WeakOrder,
            Mode::LinearOrder => ProfileMode::LinearOrder,
        }
    }
}

/// Shared profile-input flags: a JSON profile (file or stdin) or one CSV
/// matrix file per individual.
#[derive(Debug, Args)]
pub struct InputArgs {
    /// Input file(s); omit to read JSON from stdin. With --format csv, pass
    /// one matrix file per individual.
    #[arg(long = "input")]
    pub inputs: Vec<PathBuf>,
    /// Input/output format.
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

impl InputArgs {
    fn read_profile(&self) -> Result<Profile<f64>, CliError> {
        match self.format {
            Format::Json => {
                let text = match self.inputs.len() {
                    0 => {
                        let mut buf = String::new();
                        std::io::stdin()
                            .read_to_string(&mut buf)
                            .map_err(|e| read_error(e, "<stdin>"))?;
                        buf
                    }
                    1 => fs::read_to_string(&self.inputs[0])
                        .map_err(|e| read_error(e, &self.inputs[0].display().to_string()))?,
                    _ => {
                        return Err(CliError::new(
                            2,
                            "MALFORMED_INPUT",
                            "JSON input takes exactly one file",
                        ))
                    }
                };
                profile_from_json(&text).map_err(io_error)
            }
            Format::Csv => {
                if self.inputs.is_empty() {
                    return Err(CliError::new(
                        2,
                        "MALFORMED_INPUT",
                        "CSV input needs at least one matrix file",
                    ));
                }
                let texts = self
                    .inputs
                    .iter()
                    .map(|p| {
                        fs::read_to_string(p).map_err(|e| read_error(e, &p.display().to_string()))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                profile_from_csv_texts(&texts).map_err(io_error)
            }
        }
    }
}

fn tolerance(flag: Option<f64>) -> f64 {
    flag.or_else(|| {
        std::env::var("RANKLAB_TOL")
            .ok()
            .and_then(|v| v.parse().ok())
    })
    .unwrap_or(ranklab_core::DEFAULT_TOLERANCE)
}

fn write_output(out: &Option<PathBuf>, text: &str) -> Result<(), CliError> {
    match out {
        None => {
            println!("{text}");
            Ok(())
        }
        Some(path) => fs::write(path, format!("{text}\n"))
            .map_err(|e| read_error(e, &path.display().to_string())),
    }
}

fn load_weights_file(path: &PathBuf) -> Result<Vec<f64>, CliError> {
    let text = fs::read_to_string(path).map_err(|e| read_error(e, &path.display().to_string()))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::new(2, "MALFORMED_INPUT", format!("{}: {e}", path.display())))
}

#[derive(Debug, Args)]
pub struct MethodArgs {
    /// borda, borda-down, borda-up, point, lobby, convex, grs, zermelo,
    /// katz, lsq, daniels-lin, daniels-ratio, cowden, const-zero, neg-borda
    #[arg(long)]
    pub method: String,
    /// Parameter for katz and grs.
    #[arg(long)]
    pub eps: Option<f64>,
    /// Convex-combination weight on the point scores.
    #[arg(long)]
    pub nu: Option<f64>,
    /// JSON array of n positional weights (point, convex).
    #[arg(long)]
    pub points: Option<PathBuf>,
    /// JSON array of m+1 lobby weights (lobby, convex).
    #[arg(long)]
    pub lobby: Option<PathBuf>,
}

impl MethodArgs {
    fn evaluate(&self, profile: &Profile<f64>) -> Result<ScoreVector<f64>, CliError> {
        let positional = |path: &Option<PathBuf>| -> Result<PositionalWeights<f64>, CliError> {
            let path = path.as_ref().ok_or_else(|| {
                CliError::new(
                    2,
                    "MISSING_WEIGHTS",
                    "--points FILE required for this method",
                )
            })?;
            PositionalWeights::new(load_weights_file(path)?)
                .map_err(|e| CliError::new(2, profile_error_code(&e), e))
        };
        let lobby = |path: &Option<PathBuf>| -> Result<LobbyWeights<f64>, CliError> {
            let path = path.as_ref().ok_or_else(|| {
                CliError::new(
                    2,
                    "MISSING_WEIGHTS",
                    "--lobby FILE required for this method",
                )
            })?;
            LobbyWeights::new(load_weights_file(path)?)
                .map_err(|e| CliError::new(2, profile_error_code(&e), e))
        };
        match self.method.as_str() {
            "point" => point_scores(profile, &positional(&self.points)?)
                .map_err(|e| CliError::new(2, profile_error_code(&e), e)),
            "lobby" => lobby_size_scores(profile, &lobby(&self.lobby)?)
                .map_err(|e| CliError::new(2, profile_error_code(&e), e)),
            "convex" => {
                let nu = self.nu.ok_or_else(|| {
                    CliError::new(2, "MISSING_PARAMETER", "--nu required for convex")
                })?;
                convex_combination_scores(
                    profile,
                    &positional(&self.points)?,
                    &lobby(&self.lobby)?,
                    nu,
                )
                .map_err(|e| CliError::new(2, profile_error_code(&e), e))
            }
            name => BuiltinProcedure::by_name(name, self.eps)
                .map_err(procedure_error)?
                .evaluate(profile)
                .map_err(procedure_error),
        }
    }
}

#[derive(Debug, Args)]
pub struct ScoreArgs {
    #[command(flatten)]
    pub method: MethodArgs,
    #[command(flatten)]
    pub input: InputArgs,
    /// Comparison tolerance carried with the scores (default 1e-9, or
    /// RANKLAB_TOL).
    #[arg(long)]
    pub tol: Option<f64>,
    /// Write to a file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn score(args: ScoreArgs) -> Result<(), CliError> {
    let profile = args.input.read_profile()?;
    let mut scores = args.method.evaluate(&profile)?;
    scores.tolerance = tolerance(args.tol);
    let text = match args.input.format {
        Format::Json => json!({"scores": scores.scores}).to_string(),
        Format::Csv => scores
            .scores
            .iter()
            .map(|v| format!("{v}"))
            .collect::<Vec<_>>()
            .join(","),
    };
    write_output(&args.out, &text)
}

fn implicit_spec(method: &str, eps: Option<f64>) -> Result<ImplicitProcedureSpec<f64>, CliError> {
    let kind = match method {
        "zermelo" => ImplicitKind::Zermelo,
        "katz" => ImplicitKind::Katz,
        "lsq" => ImplicitKind::LeastSquares,
        "daniels-lin" => ImplicitKind::DanielsLinear,
        "daniels-ratio" => ImplicitKind::DanielsRatio,
        "cowden" => ImplicitKind::Cowden,
        "grs" => ImplicitKind::GeneralizedRowSum,
        other => {
            return Err(CliError::new(
                2,
                "UNKNOWN_METHOD",
                format!("{other} is not an implicit-form method"),
            ))
        }
    };
    match (kind, eps) {
        (ImplicitKind::Katz, Some(e)) => ImplicitProcedureSpec::katz(e).map_err(solve_error),
        (ImplicitKind::GeneralizedRowSum, Some(e)) => {
            ImplicitProcedureSpec::generalized_row_sum(e).map_err(solve_error)
        }
        (ImplicitKind::Katz | ImplicitKind::GeneralizedRowSum, None) => Err(CliError::new(
            2,
            "INVALID_EPSILON",
            format!("{method} requires --eps"),
        )),
        (k, _) => ImplicitProcedureSpec::new(k).map_err(solve_error),
    }
}

#[derive(Debug, Args)]
pub struct ResidualArgs {
    /// One of the implicit-form methods.
    #[arg(long)]
    pub method: String,
    #[arg(long)]
    pub eps: Option<f64>,
    /// JSON {"scores":[...]} to evaluate at.
    #[arg(long)]
    pub scores: PathBuf,
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn residual(args: ResidualArgs) -> Result<(), CliError> {
    let profile = args.input.read_profile()?;
    let spec = implicit_spec(&args.method, args.eps)?;
    let text = fs::read_to_string(&args.scores)
        .map_err(|e| read_error(e, &args.scores.display().to_string()))?;
    let scores = scores_from_json(&text).map_err(io_error)?;
    let residuals =
        ranklab_core::solvers::residual(&spec, &profile, &scores).map_err(solve_error)?;
    let max_abs = residuals.iter().fold(0.0f64, |a, r| a.max(r.abs()));
    write_output(
        &args.out,
        &json!({"residuals": residuals, "max_abs": max_abs}).to_string(),
    )
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, default_value_t = 2)]
    pub n_min: usize,
    #[arg(long, default_value_t = 4)]
    pub n_max: usize,
    #[arg(long, default_value_t = 1)]
    pub m_min: usize,
    #[arg(long, default_value_t = 3)]
    pub m_max: usize,
    #[arg(long, value_enum, default_value = "interior")]
    pub mode: Mode,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

impl GenArgs {
    fn config(&self) -> GeneratorConfig {
        GeneratorConfig::new(
            (self.n_min, self.n_max),
            (self.m_min, self.m_max),
            self.mode.into(),
            self.seed,
        )
    }
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    /// self-consistency, reinforcement, cancellation, faithfulness,
    /// neutrality, anonymity, monotonicity
    #[arg(long)]
    pub axiom: String,
    /// Built-in method to check.
    #[arg(long)]
    pub method: Option<String>,
    #[arg(long)]
    pub eps: Option<f64>,
    /// External procedure: a shell command reading profile JSON on stdin and
    /// writing {"scores":[...]} on stdout.
    #[arg(long)]
    pub exec: Option<String>,
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    #[command(flatten)]
    pub gen: GenArgs,
    /// Write the full run report to a file.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Serialize)]
struct RunReport {
    command: String,
    config: serde_json::Value,
    config_hash: String,
    procedure: String,
    axiom: String,
    trials: usize,
    seed: u64,
    passed: bool,
    violations: Vec<serde_json::Value>,
    elapsed_ms: u128,
}

fn parse_axiom(name: &str) -> Result<Axiom, CliError> {
    Axiom::ALL
        .into_iter()
        .find(|a| a.name() == name)
        .ok_or_else(|| CliError::new(2, "UNKNOWN_AXIOM", format!("unknown axiom {name}")))
}

pub fn check(args: CheckArgs) -> Result<(), CliError> {
    let axiom = parse_axiom(&args.axiom)?;
    let config = args.gen.config();
    let procedure: Box<dyn Procedure<f64>> = match (&args.exec, &args.method) {
        (Some(cmd), None) => Box::new(ExternalProcedure::new(cmd.clone())),
        (None, Some(name)) => {
            Box::new(BuiltinProcedure::by_name(name, args.eps).map_err(procedure_error)?)
        }
        _ => {
            return Err(CliError::new(
                2,
                "MALFORMED_INPUT",
                "pass exactly one of --method or --exec",
            ))
        }
    };
    let started = Instant::now();
    let report = fuzz_axiom(procedure.as_ref(), axiom, args.trials, &config).map_err(|e| {
        use ranklab_core::harness::HarnessError;
        match e {
            HarnessError::UnsupportedAxiomForProcedure { .. } => {
                CliError::new(2, "UNSUPPORTED_AXIOM", e)
            }
            HarnessError::Procedure(p) => procedure_error(p),
        }
    })?;
    let violations: Vec<serde_json::Value> = report
        .violations
        .iter()
        .map(|v| {
            json!({
                "trial": v.trial,
                "detail": v.detail,
                "profiles": v.profiles.iter().map(|p| {
                    serde_json::from_str::<serde_json::Value>(&profile_to_json(p)).unwrap()
                }).collect::<Vec<_>>(),
            })
        })
        .collect();
    let config_json = serde_json::to_value(&config)
        .map_err(|e| CliError::new(2, "MALFORMED_INPUT", e.to_string()))?;
    let mut hasher = std::collections::hash_map::DefaultHasher::new();
    config_json.to_string().hash(&mut hasher);
    args.axiom.hash(&mut hasher);
    report.procedure.hash(&mut hasher);
    let run = RunReport {
        command: std::env::args().collect::<Vec<_>>().join(" "),
        config: config_json,
        config_hash: format!("{:016x}", hasher.finish()),
        procedure: report.procedure.clone(),
        axiom: args.axiom.clone(),
        trials: report.trials,
        seed: report.seed,
        passed: report.passed(),
        violations,
        elapsed_ms: started.elapsed().as_millis(),
    };
    let text = serde_json::to_string_pretty(&run).expect("report serializes");
    match &args.out {
        Some(path) => {
            fs::write(path, &text).map_err(|e| read_error(e, &path.display().to_string()))?
        }
        None => println!("{text}"),
    }
    if run.passed {
        Ok(())
    } else {
        if args.out.is_some() {
            eprintln!(
                "{} violations found in {} trials; report written",
                run.violations.len(),
                run.trials
            );
        }
        Err(CliError::new(
            1,
            "VIOLATIONS_FOUND",
            format!(
                "{} violations in {} trials",
                run.violations.len(),
                run.trials
            ),
        ))
    }
}

#[derive(Debug, Args)]
pub struct KemenyArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Exhaustive-search cap on the number of alternatives.
    #[arg(long, default_value_t = 8)]
    pub cap: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn kemeny(args: KemenyArgs) -> Result<(), CliError> {
    let profile = args.input.read_profile()?;
    let result = kemeny_median(&profile, args.cap).map_err(|e| match e {
        RankError::TooLarge { .. } => CliError::new(2, "TOO_LARGE", e),
        RankError::Profile(p) => CliError::new(2, profile_error_code(&p), p),
    })?;
    write_output(
        &args.out,
        &json!({"medians": result.medians, "distance": result.distance}).to_string(),
    )
}

#[derive(Debug, Args)]
pub struct ChoiceArgs {
    #[command(flatten)]
    pub method: MethodArgs,
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn choice(args: ChoiceArgs) -> Result<(), CliError> {
    let profile = args.input.read_profile()?;
    let chosen = if args.method.method == "unanimity" {
        closeness_to_unanimity_choice(&profile).map_err(|e| match e {
            RankError::Profile(p) => CliError::new(2, profile_error_code(&p), p),
            other => CliError::new(2, "TOO_LARGE", other),
        })?
    } else {
        let mut scores = args.method.evaluate(&profile)?;
        scores.tolerance = tolerance(args.tol);
        choice_from_scores(&scores)
    };
    write_output(&args.out, &json!({"choice": chosen}).to_string())
}

#[derive(Debug, Args)]
pub struct ExtendArgs {
    /// Paretian set JSON {"k":..,"points":[[..]],"values":[..]}.
    #[arg(long)]
    pub set: PathBuf,
    /// Query points: JSON array of k-vectors.
    #[arg(long)]
    pub queries: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn extend(args: ExtendArgs) -> Result<(), CliError> {
    let set_text = fs::read_to_string(&args.set)
        .map_err(|e| read_error(e, &args.set.display().to_string()))?;
    let set = paretian_set_from_json(&set_text).map_err(io_error)?;
    let queries_text = fs::read_to_string(&args.queries)
        .map_err(|e| read_error(e, &args.queries.display().to_string()))?;
    let queries: Vec<Vec<f64>> = serde_json::from_str(&queries_text)
        .map_err(|e| CliError::new(2, "MALFORMED_INPUT", e.to_string()))?;
    if queries.iter().any(|q| q.len() != set.dimension()) {
        return Err(CliError::new(
            2,
            "MALFORMED_INPUT",
            "query dimension does not match the set",
        ));
    }
    let extension = MonotoneExtension::new(&set);
    let values: Vec<f64> = queries.iter().map(|q| extension.evaluate(q)).collect();
    write_output(&args.out, &json!({"values": values}).to_string())
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[command(flatten)]
    pub gen: GenArgs,
    /// How many profiles to emit (one JSON object per line).
    #[arg(long, default_value_t = 1)]
    pub count: usize,
}

pub fn generate(args: GenerateArgs) -> Result<(), CliError> {
    let config = args.gen.config();
    for profile in config.stream().take(args.count) {
        println!("{}", profile_to_json(&profile));
    }
    Ok(())
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[arg(long)]
    pub method_a: String,
    #[arg(long)]
    pub eps_a: Option<f64>,
    #[arg(long)]
    pub method_b: String,
    #[arg(long)]
    pub eps_b: Option<f64>,
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn compare(args: CompareArgs) -> Result<(), CliError> {
    let profile = args.input.read_profile()?;
    let tol = tolerance(args.tol);
    let eval = |name: &str, eps: Option<f64>| -> Result<ScoreVector<f64>, CliError> {
        let mut s = BuiltinProcedure::by_name(name, eps)
            .map_err(procedure_error)?
            .evaluate(&profile)
            .map_err(procedure_error)?;
        s.tolerance = tol;
        Ok(s)
    };
    let a = eval(&args.method_a, args.eps_a)?;
    let b = eval(&args.method_b, args.eps_b)?;
    let rankings_agree = ranking_from_scores(&a).strata() == ranking_from_scores(&b).strata();
    write_output(
        &args.out,
        &json!({
            "method_a": args.method_a,
            "scores_a": a.scores,
            "method_b": args.method_b,
            "scores_b": b.scores,
            "max_abs_diff": a.max_abs_diff(&b),
            "rankings_agree": rankings_agree,
        })
        .to_string(),
    )
}
