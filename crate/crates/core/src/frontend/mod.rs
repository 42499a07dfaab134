//! Input format, report serializers and the analysis driver used by the CLI.

mod dot;
mod json;
mod parse;

pub use dot::emit_dot;
pub use json::{emit_report, report_json};
pub use parse::{parse_input, InputError, Options, ProblemSpec};

use crate::morse::{analyze, MorseError, MorsificationReport};
use crate::oracle::{cross_check, numeric_snake, OracleError, OracleResult};
use crate::puiseux::PuiseuxError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    InjectivityFailure,
    /// Two independent computations disagree.
    Inconsistent,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::InjectivityFailure => 2,
            Status::Inconsistent => 4,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Analysis {
    pub report: MorsificationReport,
    /// Present when requested and there are at least two real roots.
    pub oracle: Option<Result<OracleResult, OracleError>>,
}

impl Analysis {
    pub fn oracle_result(&self) -> Option<&OracleResult> {
        self.oracle.as_ref().and_then(|o| o.as_ref().ok())
    }

    /// Disagreements between paths that must agree when injectivity holds.
    pub fn inconsistencies(&self) -> Vec<String> {
        let mut out = Vec::new();
        let Some(snake) = &self.report.snake else { return out };
        match &self.report.theorem_b {
            Some(tb) if !tb.isomorphic => {
                out.push(format!("integrated tree and discriminant tree differ: {}", tb.mismatches.join("; ")))
            }
            None => out.push("discriminant tree unavailable".into()),
            _ => {}
        }
        match &self.oracle {
            Some(Ok(o)) if !cross_check(snake, o) => {
                out.push(format!("oracle snake {} differs from tree snake {snake}", o.snake))
            }
            Some(Err(e)) => out.push(format!("oracle failed: {e}")),
            _ => {}
        }
        out
    }

    pub fn status(&self) -> Status {
        if !self.inconsistencies().is_empty() {
            Status::Inconsistent
        } else if self.report.injectivity.passes() {
            Status::Ok
        } else {
            Status::InjectivityFailure
        }
    }
}

pub fn run_analysis(spec: &ProblemSpec) -> Result<Analysis, MorseError> {
    let report = analyze(&spec.roots, &spec.unit)?;
    let oracle = (spec.options.oracle && spec.roots.n_real() >= 2).then(|| numeric_snake(&report.primitive, &spec.roots));
    Ok(Analysis { report, oracle })
}

/// 3 for bad input, 4 for internal disagreements.
pub fn error_exit_code(e: &MorseError) -> i32 {
    match e {
        MorseError::Root(_)
        | MorseError::Tree(_)
        | MorseError::TooFewRealRoots
        | MorseError::Puiseux(PuiseuxError::UnitVanishes | PuiseuxError::NonRealProduct(_)) => 3,
        _ => 4,
    }
}
