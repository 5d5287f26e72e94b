//! Verification reports: an ordered list of check records, rendered either as
//! JSON or as a text table.

use std::fmt::Write as _;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::linalg::mat::{vec_max_diff, Mat};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub id: String,
    pub anchor: String,
    pub status: Status,
    pub max_residual: f64,
    pub tolerance: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<String>,
    pub wall_time_ms: f64,
}

/// Result of evaluating a single identity.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub residual: f64,
    pub passed: bool,
    pub witness: Option<String>,
}

impl Outcome {
    pub fn pass() -> Self {
        Outcome { residual: 0.0, passed: true, witness: None }
    }

    pub fn fail(witness: impl Into<String>) -> Self {
        Outcome { residual: f64::MAX, passed: false, witness: Some(witness.into()) }
    }

    pub fn from_bool(ok: bool, witness: impl FnOnce() -> String) -> Self {
        if ok {
            Outcome::pass()
        } else {
            Outcome::fail(witness())
        }
    }

    /// Passes iff `residual <= tol`; exact checks use `tol = 0` and residuals
    /// that are positive whenever the difference is nonzero.
    pub fn within(residual: f64, tol: f64, witness: Option<String>) -> Self {
        let passed = residual <= tol;
        Outcome { residual, passed, witness: if passed { None } else { witness } }
    }

    /// A passing outcome that still carries a note (e.g. a computed determinant).
    pub fn pass_with(note: impl Into<String>) -> Self {
        Outcome { residual: 0.0, passed: true, witness: Some(note.into()) }
    }

    pub fn with_witness(mut self, w: impl Into<String>) -> Self {
        if !self.passed {
            self.witness = Some(w.into());
        }
        self
    }

    /// Combines outcomes, keeping the worst residual and the first witness.
    pub fn merge(self, other: Outcome) -> Outcome {
        let passed = self.passed && other.passed;
        let witness = if !self.passed { self.witness } else { other.witness };
        Outcome { residual: self.residual.max(other.residual), passed, witness }
    }

    pub fn all(items: impl IntoIterator<Item = Outcome>) -> Outcome {
        items.into_iter().fold(Outcome::pass(), Outcome::merge)
    }
}

/// Entrywise comparison of two matrices.
pub fn compare_mats<S: Scalar>(lhs: &Mat<S>, rhs: &Mat<S>, tol: f64) -> Outcome {
    let (r, at) = lhs.max_diff(rhs);
    let scale = if S::EXACT { 1.0 } else { 1.0f64.max(lhs.max_abs()).max(rhs.max_abs()) };
    Outcome::within(r / scale, tol, at.map(|(i, j)| format!("entry ({i}, {j})")))
}

pub fn compare_vecs<S: Scalar>(lhs: &[S], rhs: &[S], tol: f64, witness: impl FnOnce() -> String) -> Outcome {
    let r = vec_max_diff(lhs, rhs);
    let scale = if S::EXACT {
        1.0
    } else {
        lhs.iter().chain(rhs).map(Scalar::magnitude).fold(1.0, f64::max)
    };
    let r = r / scale;
    if r <= tol {
        Outcome::within(r, tol, None)
    } else {
        Outcome::within(r, tol, Some(witness()))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub model: String,
    pub checks: Vec<CheckRecord>,
}

impl Report {
    pub fn new(model: impl Into<String>) -> Self {
        Report { model: model.into(), checks: Vec::new() }
    }

    /// Runs a check and records it; returns whether it passed.
    pub fn run(&mut self, id: &str, anchor: &str, tol: f64, f: impl FnOnce() -> Outcome) -> bool {
        let start = Instant::now();
        let out = f();
        let ms = start.elapsed().as_secs_f64() * 1e3;
        self.checks.push(CheckRecord {
            id: id.to_string(),
            anchor: anchor.to_string(),
            status: if out.passed { Status::Pass } else { Status::Fail },
            max_residual: out.residual,
            tolerance: tol,
            witness: out.witness,
            wall_time_ms: ms,
        });
        out.passed
    }

    /// Runs a check whose statement needs a hypothesis. When `unmet` names a
    /// failed hypothesis the identity is still evaluated, but recorded as
    /// skipped with the outcome in the note.
    pub fn run_assuming(&mut self, id: &str, anchor: &str, tol: f64, unmet: Option<String>, f: impl FnOnce() -> Outcome) -> bool {
        let Some(why) = unmet else { return self.run(id, anchor, tol, f) };
        let start = Instant::now();
        let out = f();
        let note = match &out.witness {
            _ if out.passed => format!("{why}; the identity holds anyway"),
            Some(w) => format!("{why}; the identity fails at {w}"),
            None => format!("{why}; the identity fails"),
        };
        self.checks.push(CheckRecord {
            id: id.to_string(),
            anchor: anchor.to_string(),
            status: Status::Skipped,
            max_residual: if out.residual.is_finite() { out.residual } else { f64::MAX },
            tolerance: tol,
            witness: Some(note),
            wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
        });
        true
    }

    pub fn skip(&mut self, id: &str, anchor: &str, reason: &str) {
        self.checks.push(CheckRecord {
            id: id.to_string(),
            anchor: anchor.to_string(),
            status: Status::Skipped,
            max_residual: 0.0,
            tolerance: 0.0,
            witness: Some(reason.to_string()),
            wall_time_ms: 0.0,
        });
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    /// Same checks with `prefix.` prepended to every id.
    pub fn prefixed(mut self, prefix: &str) -> Report {
        for c in &mut self.checks {
            c.id = format!("{prefix}.{}", c.id);
        }
        self
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn get(&self, id: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    /// Copy with wall times zeroed, for determinism comparisons.
    pub fn without_timings(&self) -> Report {
        let mut r = self.clone();
        for c in &mut r.checks {
            c.wall_time_ms = 0.0;
        }
        r
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn render_text(&self) -> String {
        let w = self.checks.iter().map(|c| c.id.len()).max().unwrap_or(5).max(5);
        let mut s = String::new();
        let _ = writeln!(s, "model: {}", self.model);
        let _ = writeln!(s, "{:<w$}  {:<7}  {:>10}  {:>8}  {:>9}", "check", "status", "residual", "tol", "ms");
        for c in &self.checks {
            let status = match c.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Skipped => "skipped",
            };
            let _ = write!(s, "{:<w$}  {:<7}  {:>10.2e}  {:>8.0e}  {:>9.2}", c.id, status, c.max_residual, c.tolerance, c.wall_time_ms);
            if let Some(wit) = &c.witness {
                let _ = write!(s, "  [{wit}]");
            }
            s.push('\n');
        }
        let _ = writeln!(
            s,
            "{} passed, {} failed, {} skipped",
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Skipped)
        );
        s
    }
}
