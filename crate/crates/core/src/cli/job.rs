//! Job specifications and their parsing into engine inputs.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use crate::conormal::VarietyGerm;
use crate::defect::StratumDatum;
use crate::error::{Error, Result};
use crate::lecycles::{CoordinateFrame, FrameChoice};
use crate::oracle::OracleMethod;
use crate::polyparse::{parse_polynomial, LinearChange, Polynomial, Rational, VariableFrame};

pub const DEFAULT_BUDGET: usize = 25;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum JobMode {
    Milnor,
    Le,
    Levogel,
    Defect,
    EulerCheck,
    Oracle,
}

impl fmt::Display for JobMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            JobMode::Milnor => "milnor",
            JobMode::Le => "le",
            JobMode::Levogel => "levogel",
            JobMode::Defect => "defect",
            JobMode::EulerCheck => "euler-check",
            JobMode::Oracle => "oracle",
        })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Text,
}

fn default_budget() -> usize {
    DEFAULT_BUDGET
}

/// One unit of work, as given on the command line or as one line of a
/// batch file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub mode: JobMode,
    /// comma-separated variable names, e.g. `"x,y,z"`
    #[serde(default)]
    pub vars: String,
    #[serde(default)]
    pub f: Option<String>,
    /// defining equations of `X`; empty means the ambient space
    #[serde(rename = "X", default)]
    pub x: Vec<String>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_budget")]
    pub budget: usize,
    /// user coordinates, rows separated by `;`, entries by `,`
    #[serde(default)]
    pub frame: Option<String>,
    #[serde(default)]
    pub method: Option<String>,
    #[serde(default)]
    pub alpha: Option<i64>,
    /// `label:chi:eu` triples separated by `;`
    #[serde(default)]
    pub strata: Option<String>,
    #[serde(default)]
    pub format: Format,
    #[serde(default)]
    pub timing: bool,
}

impl JobSpec {
    pub fn new(mode: JobMode, vars: &str) -> Self {
        JobSpec {
            mode,
            vars: vars.into(),
            f: None,
            x: Vec::new(),
            seed: 0,
            budget: DEFAULT_BUDGET,
            frame: None,
            method: None,
            alpha: None,
            strata: None,
            format: Format::Json,
            timing: false,
        }
    }

    pub fn with_f(mut self, f: &str) -> Self {
        self.f = Some(f.into());
        self
    }

    pub fn with_x(mut self, x: &[&str]) -> Self {
        self.x = x.iter().map(|s| s.to_string()).collect();
        self
    }

    pub(crate) fn variables(&self) -> Result<Arc<VariableFrame>> {
        if self.vars.trim().is_empty() {
            return Err(Error::InvalidJob(format!(
                "mode {} needs --vars",
                self.mode
            )));
        }
        VariableFrame::parse_list(&self.vars)
    }

    pub(crate) fn function(&self, frame: &Arc<VariableFrame>) -> Result<Polynomial> {
        let text = self
            .f
            .as_deref()
            .ok_or_else(|| Error::InvalidJob(format!("mode {} needs --f", self.mode)))?;
        Ok(parse_polynomial(text, frame)?)
    }

    pub(crate) fn equations(&self, frame: &Arc<VariableFrame>) -> Result<Vec<Polynomial>> {
        self.x
            .iter()
            .filter(|s| !s.trim().is_empty())
            .map(|s| Ok(parse_polynomial(s, frame)?))
            .collect()
    }

    pub(crate) fn germ(&self, frame: &Arc<VariableFrame>) -> Result<VarietyGerm> {
        let gens = self.equations(frame)?;
        if gens.is_empty() {
            Ok(VarietyGerm::ambient(frame))
        } else {
            VarietyGerm::new(frame, gens)
        }
    }

    pub(crate) fn frame_choice(&self, frame: &Arc<VariableFrame>) -> Result<FrameChoice> {
        match &self.frame {
            None => Ok(FrameChoice::search(self.seed, self.budget)),
            Some(text) => {
                let change = LinearChange::new(frame, parse_matrix(text)?)?;
                Ok(FrameChoice::Given(CoordinateFrame::user(change)))
            }
        }
    }

    pub(crate) fn oracle_method(&self) -> Result<OracleMethod> {
        let text = self
            .method
            .as_deref()
            .ok_or_else(|| Error::InvalidJob("mode oracle needs --method".into()))?;
        match text.replace('-', "_").as_str() {
            "macaulay" => Ok(OracleMethod::Macaulay),
            "thom_sebastiani" => Ok(OracleMethod::ThomSebastiani),
            "homogeneous_fibre" => Ok(OracleMethod::HomogeneousFibre),
            "monomial_count" => Ok(OracleMethod::MonomialCount),
            other => Err(Error::InvalidJob(format!(
                "unknown oracle method {other:?}"
            ))),
        }
    }

    pub(crate) fn stratum_data(&self) -> Result<Vec<StratumDatum>> {
        match &self.strata {
            None => Ok(Vec::new()),
            Some(text) => parse_strata(text),
        }
    }
}

/// Splits `"p;q"` into its non-empty parts.
pub fn split_equations(text: &str) -> Vec<String> {
    text.split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(String::from)
        .collect()
}

/// `"a,b;c,d"` with exact rational entries such as `-3` or `2/5`.
pub fn parse_matrix(text: &str) -> Result<Vec<Vec<Rational>>> {
    text.split(';')
        .map(|row| {
            row.split(',')
                .map(|e| {
                    Rational::from_str(e.trim())
                        .map_err(|_| Error::InvalidJob(format!("bad matrix entry {:?}", e.trim())))
                })
                .collect()
        })
        .collect()
}

/// Inverse of [`parse_matrix`].
pub fn format_matrix(rows: &[Vec<Rational>]) -> String {
    rows.iter()
        .map(|r| {
            r.iter()
                .map(|e| e.to_string())
                .collect::<Vec<_>>()
                .join(",")
        })
        .collect::<Vec<_>>()
        .join(";")
}

pub fn parse_strata(text: &str) -> Result<Vec<StratumDatum>> {
    split_equations(text)
        .iter()
        .map(|item| {
            let parts: Vec<&str> = item.split(':').map(str::trim).collect();
            let bad = || Error::InvalidJob(format!("stratum {item:?} is not label:chi:eu"));
            if parts.len() != 3 {
                return Err(bad());
            }
            Ok(StratumDatum {
                label: parts[0].into(),
                chi_slice: parts[1].parse().map_err(|_| bad())?,
                eu_value: parts[2].parse().map_err(|_| bad())?,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrices_round_trip() {
        let m = parse_matrix("1, -2/4 ; 0,3").unwrap();
        assert_eq!(format_matrix(&m), "1,-1/2;0,3");
        assert_eq!(parse_matrix(&format_matrix(&m)).unwrap(), m);
        assert!(parse_matrix("1,x").is_err());
    }

    #[test]
    fn strata_and_equations() {
        let s = parse_strata("a:1:2; b:-1:1").unwrap();
        assert_eq!(
            (s[1].label.as_str(), s[1].chi_slice, s[1].eu_value),
            ("b", -1, 1)
        );
        assert!(parse_strata("a:1").is_err());
        assert_eq!(split_equations("x*y; ;z"), vec!["x*y", "z"]);
    }

    #[test]
    fn job_lines_take_defaults() {
        let job: JobSpec = serde_json::from_str(r#"{"mode":"euler-check","alpha":2}"#).unwrap();
        assert_eq!(
            (job.seed, job.budget, job.format),
            (0, DEFAULT_BUDGET, Format::Json)
        );
        assert!(serde_json::from_str::<JobSpec>(r#"{"mode":"le","bogus":1}"#).is_err());
    }
}
