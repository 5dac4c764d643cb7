//! Machine-readable run reports.
//!
//! Everything except `wall_time_secs` is a pure function of the run flags,
//! so two runs with the same flags serialize to identical bytes. Wall time is
//! only recorded on request.

use std::fmt::Write as _;

use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    /// Exact identity, scored by relative residual.
    Identity,
    /// Loewner inequality, scored by the normalized minimum eigenvalue of the
    /// gap matrix.
    Inequality,
    /// Operator path against the eigenvalue-wise scalar oracle, scored by
    /// relative error.
    CrossPath,
}

impl CheckKind {
    /// Larger scores are worse for residuals, smaller for margins.
    fn worse(self, a: f64, b: f64) -> bool {
        match self {
            CheckKind::Identity | CheckKind::CrossPath => a > b || (a.is_nan() && !b.is_nan()),
            CheckKind::Inequality => a < b || (a.is_nan() && !b.is_nan()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckTally {
    pub name: String,
    pub kind: CheckKind,
    pub passed: u64,
    pub failed: u64,
    /// Largest residual or smallest margin seen.
    pub worst: Option<f64>,
}

/// Where a failing instance came from; together with the report seed this
/// regenerates it exactly.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Finding {
    pub check: String,
    pub seed: u64,
    pub dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trial: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub edge_case: Option<String>,
    pub lambda: f64,
    pub value: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    /// Operands in matrix-file format.
    pub operands: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub schema: u32,
    pub suite: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scope: Option<String>,
    pub seed: u64,
    pub dims: Vec<usize>,
    pub lambda_grid: Vec<f64>,
    pub trials: usize,
    pub rel_residual_tol: f64,
    pub psd_slack: f64,
    pub checks: Vec<CheckTally>,
    pub worst_residual: Option<f64>,
    pub worst_gap_margin: Option<f64>,
    /// Instance attaining `worst_gap_margin`, whether or not it failed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub worst_gap_instance: Option<Finding>,
    pub findings: Vec<Finding>,
    pub findings_omitted: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_secs: Option<f64>,
}

/// One scored check evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub check: &'static str,
    pub kind: CheckKind,
    /// `None` when the computation itself failed.
    pub value: Option<f64>,
    pub pass: bool,
    pub error: Option<String>,
}

/// Single-owner aggregation of outcomes fed in canonical order.
#[derive(Debug)]
pub struct ReportBuilder {
    report: RunReport,
    max_findings: usize,
    worst_gap: Option<(f64, Finding)>,
}

impl ReportBuilder {
    pub fn new(report: RunReport, max_findings: usize) -> Self {
        Self {
            report,
            max_findings,
            worst_gap: None,
        }
    }

    /// Records an outcome; `locate` builds its finding only when needed.
    pub fn record(&mut self, outcome: &Outcome, locate: impl FnOnce() -> Finding) {
        self.record_inner(outcome, locate, true);
    }

    /// Like [`record`](Self::record) but never counts toward the worst gap.
    pub fn record_untracked(&mut self, outcome: &Outcome, locate: impl FnOnce() -> Finding) {
        self.record_inner(outcome, locate, false);
    }

    fn record_inner(&mut self, outcome: &Outcome, locate: impl FnOnce() -> Finding, track: bool) {
        let tally = match self
            .report
            .checks
            .iter_mut()
            .find(|t| t.name == outcome.check)
        {
            Some(t) => t,
            None => {
                self.report.checks.push(CheckTally {
                    name: outcome.check.to_string(),
                    kind: outcome.kind,
                    passed: 0,
                    failed: 0,
                    worst: None,
                });
                self.report.checks.last_mut().expect("just pushed")
            }
        };
        if outcome.pass {
            tally.passed += 1;
        } else {
            tally.failed += 1;
        }
        let score = outcome.value.unwrap_or(f64::NAN);
        if tally.worst.is_none_or(|w| outcome.kind.worse(score, w)) {
            tally.worst = Some(score);
        }

        let gap_is_worst = track
            && outcome.kind == CheckKind::Inequality
            && self
                .worst_gap
                .as_ref()
                .is_none_or(|(w, _)| outcome.kind.worse(score, *w));
        if outcome.pass && !gap_is_worst {
            return;
        }
        let finding = locate();
        if gap_is_worst {
            self.worst_gap = Some((score, finding.clone()));
        }
        if !outcome.pass {
            if self.report.findings.len() < self.max_findings {
                self.report.findings.push(finding);
            } else {
                self.report.findings_omitted += 1;
            }
        }
    }

    pub fn finish(mut self) -> RunReport {
        self.report.worst_residual = self
            .report
            .checks
            .iter()
            .filter(|t| t.kind != CheckKind::Inequality)
            .filter_map(|t| t.worst)
            .reduce(|a, b| {
                if CheckKind::Identity.worse(b, a) {
                    b
                } else {
                    a
                }
            });
        self.report.worst_gap_margin = self.worst_gap.as_ref().map(|(w, _)| *w);
        self.report.worst_gap_instance = self.worst_gap.map(|(_, f)| f);
        self.report
    }
}

impl RunReport {
    pub fn empty(suite: impl Into<String>, seed: u64) -> Self {
        Self {
            schema: SCHEMA_VERSION,
            suite: suite.into(),
            scope: None,
            seed,
            dims: Vec::new(),
            lambda_grid: Vec::new(),
            trials: 0,
            rel_residual_tol: 0.0,
            psd_slack: 0.0,
            checks: Vec::new(),
            worst_residual: None,
            worst_gap_margin: None,
            worst_gap_instance: None,
            findings: Vec::new(),
            findings_omitted: 0,
            wall_time_secs: None,
        }
    }

    pub fn failures(&self) -> u64 {
        self.checks.iter().map(|t| t.failed).sum()
    }

    pub fn evaluations(&self) -> u64 {
        self.checks.iter().map(|t| t.passed + t.failed).sum()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "suite {} (seed {})", self.suite, self.seed);
        if let Some(scope) = &self.scope {
            let _ = writeln!(out, "note: {scope}");
        }
        let lambdas = match self.lambda_grid.len() {
            0 => "random".to_string(),
            n => n.to_string(),
        };
        let _ = writeln!(
            out,
            "dims {:?}, trials {}, lambdas {lambdas}",
            self.dims, self.trials
        );
        let width = self
            .checks
            .iter()
            .map(|t| t.name.len())
            .max()
            .unwrap_or(5)
            .max(5);
        let _ = writeln!(
            out,
            "{:<width$}  {:>9}  {:>7}  worst",
            "check", "passed", "failed"
        );
        for t in &self.checks {
            let worst = t.worst.map_or("-".to_string(), |w| format!("{w:.3e}"));
            let _ = writeln!(
                out,
                "{:<width$}  {:>9}  {:>7}  {worst}",
                t.name, t.passed, t.failed
            );
        }
        if let Some(w) = self.worst_residual {
            let _ = writeln!(out, "worst residual {w:.3e}");
        }
        if let Some(w) = self.worst_gap_margin {
            let _ = writeln!(out, "worst gap margin {w:.3e}");
        }
        if let Some(f) = &self.worst_gap_instance {
            let _ = writeln!(out, "  at {}", describe(f));
        }
        for f in &self.findings {
            let _ = writeln!(out, "FAIL {}", describe(f));
        }
        if self.findings_omitted > 0 {
            let _ = writeln!(
                out,
                "... {} more failures not listed",
                self.findings_omitted
            );
        }
        if let Some(t) = self.wall_time_secs {
            let _ = writeln!(out, "wall time {t:.2}s");
        }
        let _ = writeln!(
            out,
            "{} evaluations, {} failures",
            self.evaluations(),
            self.failures()
        );
        out
    }
}

fn describe(f: &Finding) -> String {
    let mut s = format!("{} seed={} dim={}", f.check, f.seed, f.dim);
    if let Some(t) = f.trial {
        let _ = write!(s, " trial={t}");
    }
    if let Some(e) = &f.edge_case {
        let _ = write!(s, " edge={e}");
    }
    let _ = write!(s, " lambda={}", f.lambda);
    match (&f.error, f.value) {
        (Some(e), _) => {
            let _ = write!(s, " error: {e}");
        }
        (None, Some(v)) => {
            let _ = write!(s, " value={v:e}");
        }
        (None, None) => {}
    }
    s
}
