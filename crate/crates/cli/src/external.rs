//! External scoring procedures: a shell command that reads profile JSON on
//! standard input and writes `{"scores":[...]}` on standard output. Keeps
//! checked procedures language-agnostic.

use std::io::Write;
use std::process::{Command, Stdio};

use ranklab_core::io::{profile_to_json, scores_from_json};
use ranklab_core::{Procedure, ProcedureError, Profile, ScoreVector};

pub struct ExternalProcedure {
    command: String,
}

impl ExternalProcedure {
    pub fn new(command: String) -> Self {
        ExternalProcedure { command }
    }
}

impl Procedure<f64> for ExternalProcedure {
    fn name(&self) -> &str {
        &self.command
    }

    fn evaluate(&self, profile: &Profile<f64>) -> Result<ScoreVector<f64>, ProcedureError> {
        let mut child = Command::new("sh")
            .arg("-c")
            .arg(&self.command)
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .stderr(Stdio::piped())
            .spawn()
            .map_err(|e| ProcedureError::External(format!("spawn failed: {e}")))?;
        child
            .stdin
            .take()
            .expect("stdin piped")
            .write_all(profile_to_json(profile).as_bytes())
            .map_err(|e| ProcedureError::External(format!("write to stdin failed: {e}")))?;
        let output = child
            .wait_with_output()
            .map_err(|e| ProcedureError::External(format!("wait failed: {e}")))?;
        if !output.status.success() {
            return Err(ProcedureError::External(format!(
                "exit status {}: {}",
                output.status,
                String::from_utf8_lossy(&output.stderr).trim()
            )));
        }
        let stdout = String::from_utf8_lossy(&output.stdout);
        let scores = scores_from_json(stdout.trim())
            .map_err(|e| ProcedureError::External(format!("malformed output: {e}")))?;
        if scores.len() != profile.alternatives() {
            return Err(ProcedureError::External(format!(
                "expected {} scores, got {}",
                profile.alternatives(),
                scores.len()
            )));
        }
        Ok(scores)
    }

    fn defined_on_crisp(&self) -> bool {
        true
    }
}
