//! Deterministic reports. Every integer is written as a decimal string and
//! keys appear in declaration order, so equal jobs give equal bytes.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use super::job::{format_matrix, JobSpec};
use crate::defect::IdentityCheck;
use crate::error::Error;
use crate::lecycles::{CheckRecord, CoordinateFrame, LeNumbers, Provenance};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    Refused,
    InputError,
}

/// The job as it was understood, echoed back.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JobEcho {
    pub mode: String,
    pub vars: String,
    pub f: Option<String>,
    #[serde(rename = "X")]
    pub x: Vec<String>,
    pub seed: String,
    pub budget: String,
    pub frame: Option<String>,
    pub method: Option<String>,
    pub alpha: Option<String>,
    pub strata: Option<String>,
}

impl From<&JobSpec> for JobEcho {
    fn from(job: &JobSpec) -> Self {
        JobEcho {
            mode: job.mode.to_string(),
            vars: job.vars.clone(),
            f: job.f.clone(),
            x: job.x.clone(),
            seed: job.seed.to_string(),
            budget: job.budget.to_string(),
            frame: job.frame.clone(),
            method: job.method.clone(),
            alpha: job.alpha.map(|a| a.to_string()),
            strata: job.strata.clone(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Payload {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<BTreeMap<String, String>>,
    #[serde(rename = "D", skip_serializing_if = "Option::is_none")]
    pub defect: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chi_phi_0: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chi_milnor_fibre: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub euler_obstruction: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub holds: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub method: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<String>,
}

impl Payload {
    pub(crate) fn numbers(lambda: &LeNumbers) -> Self {
        Payload {
            s: Some(lambda.s.to_string()),
            lambda: Some(
                lambda
                    .lambda
                    .iter()
                    .map(|(k, v)| (k.to_string(), v.to_string()))
                    .collect(),
            ),
            ..Payload::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ErrorReport {
    pub kind: String,
    pub message: String,
    pub log: Vec<String>,
}

impl From<&Error> for ErrorReport {
    fn from(e: &Error) -> Self {
        let log = match e {
            Error::BudgetExhausted { log, .. } => log.clone(),
            _ => Vec::new(),
        };
        ErrorReport {
            kind: error_kind(e).into(),
            message: e.to_string(),
            log,
        }
    }
}

pub fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Parse(_) => "parse",
        Error::Frame(_) => "frame",
        Error::FrameMismatch => "frame_mismatch",
        Error::IndexOutOfRange { .. } => "index_out_of_range",
        Error::SingularMatrix => "singular_matrix",
        Error::MatrixShape { .. } => "matrix_shape",
        Error::NotZeroDimensional => "not_zero_dimensional",
        Error::NotIsolatedAtOrigin { .. } => "not_isolated_at_origin",
        Error::NonIsolatedCriticalLocus => "non_isolated_critical_locus",
        Error::ConstantFunction => "constant_function",
        Error::NotIsolatedSingularity { .. } => "not_isolated_singularity",
        Error::Improper { .. } => "improper",
        Error::BudgetExhausted { .. } => "budget_exhausted",
        Error::NotCompleteIntersection { .. } => "not_complete_intersection",
        Error::Conormal(_) => "conormal",
        Error::NoStabilization { .. } => "no_stabilization",
        Error::Oracle(_) => "oracle",
        Error::InvalidJob(_) => "invalid_job",
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FrameReport {
    pub variables: Vec<String>,
    /// row `k` gives `z_(k+1)` in the input variables
    pub matrix: Vec<Vec<String>>,
    /// the matrix in `--frame` syntax
    pub spec: String,
    pub provenance: String,
    pub attempts: String,
    pub seed: Option<String>,
}

impl From<&CoordinateFrame> for FrameReport {
    fn from(cf: &CoordinateFrame) -> Self {
        let rows = cf.change.matrix();
        FrameReport {
            variables: cf.frame.names().to_vec(),
            matrix: rows
                .iter()
                .map(|r| r.iter().map(|e| e.to_string()).collect())
                .collect(),
            spec: format_matrix(rows),
            provenance: match cf.provenance {
                Provenance::UserGiven => "user_given".into(),
                Provenance::AutoGenericized { .. } => "auto_genericized".into(),
            },
            attempts: cf.attempts().to_string(),
            seed: cf.seed.map(|s| s.to_string()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckLine {
    pub k: String,
    pub kind: String,
    pub value: String,
    pub bound: String,
    pub passed: bool,
    pub note: String,
}

impl From<&CheckRecord> for CheckLine {
    fn from(c: &CheckRecord) -> Self {
        CheckLine {
            k: c.k.to_string(),
            kind: c.kind.to_string(),
            value: c.value.to_string(),
            bound: c.bound.to_string(),
            passed: c.passed,
            note: c.note.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Timing {
    pub elapsed_ms: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JsonReport {
    pub schema_version: String,
    pub job: Option<JobEcho>,
    pub status: Status,
    pub result: Option<Payload>,
    pub error: Option<ErrorReport>,
    pub frame: Option<FrameReport>,
    pub properness: Vec<CheckLine>,
    pub identities: Vec<IdentityCheck>,
    /// wall-clock time; null unless requested, to keep reports reproducible
    pub timing: Option<Timing>,
}

impl JsonReport {
    pub(crate) fn empty(job: Option<&JobSpec>) -> Self {
        JsonReport {
            schema_version: SCHEMA_VERSION.into(),
            job: job.map(JobEcho::from),
            status: Status::Ok,
            result: None,
            error: None,
            frame: None,
            properness: Vec::new(),
            identities: Vec::new(),
            timing: None,
        }
    }

    pub(crate) fn failed(job: Option<&JobSpec>, e: &Error) -> Self {
        let mut r = JsonReport::empty(job);
        r.set_error(e);
        r
    }

    pub(crate) fn set_error(&mut self, e: &Error) {
        self.status = if e.is_refusal() {
            Status::Refused
        } else {
            Status::InputError
        };
        self.result = None;
        self.error = Some(e.into());
    }

    /// 0 on success, 2 on a mathematical refusal, 1 on bad input.
    pub fn exit_code(&self) -> u8 {
        match self.status {
            Status::Ok => 0,
            Status::InputError => 1,
            Status::Refused => 2,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(job) = &self.job {
            let _ = writeln!(out, "mode: {}", job.mode);
            if let Some(f) = &job.f {
                let _ = writeln!(out, "f: {f}");
            }
            if !job.x.is_empty() {
                let _ = writeln!(out, "X: V({})", job.x.join(", "));
            }
        }
        let status = match self.status {
            Status::Ok => "ok",
            Status::Refused => "refused",
            Status::InputError => "input error",
        };
        let _ = writeln!(out, "status: {status}");
        if let Some(e) = &self.error {
            let _ = writeln!(out, "error: {}", e.message);
            for line in &e.log {
                let _ = writeln!(out, "  {line}");
            }
        }
        if let Some(p) = &self.result {
            let scalar = [
                ("mu", &p.mu),
                ("s", &p.s),
                ("D", &p.defect),
                ("chi_phi_0", &p.chi_phi_0),
                ("d", &p.d),
                ("chi_milnor_fibre", &p.chi_milnor_fibre),
                ("euler_obstruction", &p.euler_obstruction),
                ("value", &p.value),
                ("method", &p.method),
                ("certificate", &p.certificate),
            ];
            if let Some(lambda) = &p.lambda {
                let parts: Vec<String> = lambda
                    .iter()
                    .map(|(k, v)| format!("lambda^{k} = {v}"))
                    .collect();
                let _ = writeln!(
                    out,
                    "{}",
                    if parts.is_empty() {
                        "lambda: none".into()
                    } else {
                        parts.join(", ")
                    }
                );
            }
            for (name, v) in scalar {
                if let Some(v) = v {
                    let _ = writeln!(out, "{name}: {v}");
                }
            }
            if let Some(h) = p.holds {
                let _ = writeln!(out, "holds: {h}");
            }
        }
        if let Some(fr) = &self.frame {
            let _ = writeln!(
                out,
                "frame: [{}] ({}, {} attempts)",
                fr.spec, fr.provenance, fr.attempts
            );
        }
        for c in &self.properness {
            let mark = if c.passed { "pass" } else { "FAIL" };
            let rel = if c.kind == "polar_difference" {
                "="
            } else {
                "<="
            };
            let note = if c.note.is_empty() {
                String::new()
            } else {
                format!(" ({})", c.note)
            };
            let _ = writeln!(
                out,
                "  k={} {}: {} {rel} {} {mark}{note}",
                c.k, c.kind, c.value, c.bound
            );
        }
        for i in &self.identities {
            let _ = writeln!(
                out,
                "identity {}: {} ({})",
                i.name,
                if i.passed { "holds" } else { "FAILS" },
                i.detail
            );
        }
        if let Some(t) = &self.timing {
            let _ = writeln!(out, "elapsed: {} ms", t.elapsed_ms);
        }
        out
    }
}
