//! File formats: profile JSON (`{"n":..,"m":..,"matrices":[[[..]]]}`),
//! per-matrix CSV, score JSON (`{"scores":[..]}`), and the Paretian-set JSON
//! the `extend` command consumes. JSON numbers round-trip bit-exactly
//! (shortest representation that parses back to the same float).

use crate::paretian::{ParetianError, ParetianSet};
use crate::profile::{Profile, ProfileError, ScoreVector};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("declared {field} = {declared} does not match the data ({actual})")]
    DeclarationMismatch {
        field: &'static str,
        declared: usize,
        actual: usize,
    },
    #[error("CSV line {line}: {reason}")]
    Csv { line: usize, reason: String },
    #[error(transparent)]
    Profile(#[from] ProfileError),
    #[error(transparent)]
    Paretian(#[from] ParetianError),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProfileJson {
    pub n: usize,
    pub m: usize,
    pub matrices: Vec<Vec<Vec<f64>>>,
}

impl From<&Profile<f64>> for ProfileJson {
    fn from(p: &Profile<f64>) -> Self {
        let n = p.alternatives();
        ProfileJson {
            n,
            m: p.individuals(),
            matrices: (0..p.individuals())
                .map(|q| {
                    (0..n)
                        .map(|i| (0..n).map(|j| p.outcome(q, i, j)).collect())
                        .collect()
                })
                .collect(),
        }
    }
}

pub fn profile_to_json(p: &Profile<f64>) -> String {
    serde_json::to_string(&ProfileJson::from(p)).expect("profile serializes")
}

pub fn profile_from_json(text: &str) -> Result<Profile<f64>, IoError> {
    let raw: ProfileJson = serde_json::from_str(text)?;
    if raw.matrices.len() != raw.m {
        return Err(IoError::DeclarationMismatch {
            field: "m",
            declared: raw.m,
            actual: raw.matrices.len(),
        });
    }
    Ok(Profile::validate_nested(raw.n, raw.matrices)?)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScoresJson {
    pub scores: Vec<f64>,
}

pub fn scores_to_json(s: &ScoreVector<f64>) -> String {
    serde_json::to_string(&ScoresJson {
        scores: s.scores.clone(),
    })
    .expect("scores serialize")
}

pub fn scores_from_json(text: &str) -> Result<ScoreVector<f64>, IoError> {
    let raw: ScoresJson = serde_json::from_str(text)?;
    Ok(ScoreVector::new(raw.scores))
}

/// One matrix per CSV text: `n` lines of `n` comma-separated numbers.
pub fn matrix_to_csv(p: &Profile<f64>, individual: usize) -> String {
    let n = p.alternatives();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| format!("{}", p.outcome(individual, i, j)))
                .collect::<Vec<_>>()
                .join(",")
        })
        .collect::<Vec<_>>()
        .join("\n")
}

pub fn matrix_from_csv(text: &str) -> Result<Vec<Vec<f64>>, IoError> {
    let mut rows = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let row = line
            .split(',')
            .map(|cell| {
                cell.trim().parse::<f64>().map_err(|e| IoError::Csv {
                    line: idx + 1,
                    reason: format!("bad number {cell:?}: {e}"),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    Ok(rows)
}

/// Assembles a profile from one CSV text per individual.
pub fn profile_from_csv_texts(texts: &[String]) -> Result<Profile<f64>, IoError> {
    let matrices = texts
        .iter()
        .map(|t| matrix_from_csv(t))
        .collect::<Result<Vec<_>, _>>()?;
    let n = matrices.first().map_or(0, |m| m.len());
    Ok(Profile::validate_nested(n, matrices)?)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ParetianSetJson {
    pub k: usize,
    pub points: Vec<Vec<f64>>,
    pub values: Vec<f64>,
}

pub fn paretian_set_from_json(text: &str) -> Result<ParetianSet<f64>, IoError> {
    let raw: ParetianSetJson = serde_json::from_str(text)?;
    if raw.points.iter().any(|p| p.len() != raw.k) {
        return Err(IoError::DeclarationMismatch {
            field: "k",
            declared: raw.k,
            actual: raw.points.iter().map(|p| p.len()).max().unwrap_or(0),
        });
    }
    Ok(ParetianSet::new(raw.points, raw.values)?)
}
