//! Command-line front end: one job from flags, or a batch of JSON job lines.

mod job;
mod report;

use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use clap::Parser;

pub use job::{
    format_matrix, parse_matrix, parse_strata, split_equations, Format, JobMode, JobSpec,
    DEFAULT_BUDGET,
};
pub use report::{
    error_kind, CheckLine, ErrorReport, FrameReport, JobEcho, JsonReport, Payload, Status, Timing,
    SCHEMA_VERSION,
};

use crate::defect::{
    check_euler_condition, defect_affine, defect_levogel, milnor_number, DefectReport,
};
use crate::error::{Error, Result};
use crate::oracle::{
    chi_homogeneous_plane, chi_thom_sebastiani, milnor_via_macaulay, monomial_colength,
    OracleMethod, DEFAULT_DEGREE_BOUND,
};

#[derive(Debug, Parser)]
#[command(
    name = "lecalc",
    version,
    about = "Exact Le numbers, Le-Vogel numbers and defects of polynomial germs"
)]
pub struct Args {
    /// what to compute
    #[arg(value_enum, required_unless_present = "jobs")]
    pub mode: Option<JobMode>,
    /// comma-separated variables, e.g. x,y,z
    #[arg(long, default_value = "")]
    pub vars: String,
    /// the function germ
    #[arg(long, allow_hyphen_values = true)]
    pub f: Option<String>,
    /// equations of X separated by ';'
    #[arg(long = "X", allow_hyphen_values = true)]
    pub x: Option<String>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// number of coordinate frames to try
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// user coordinates "a,b;c,d" (rows give z_1, z_2, ...)
    #[arg(long, allow_hyphen_values = true)]
    pub frame: Option<String>,
    /// oracle: macaulay, thom_sebastiani, homogeneous_fibre, monomial_count
    #[arg(long)]
    pub method: Option<String>,
    /// value of the constructible function at 0 (euler-check)
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<i64>,
    /// stratum data "label:chi:eu;..." (euler-check)
    #[arg(long, allow_hyphen_values = true)]
    pub strata: Option<String>,
    /// file with one JSON job per line
    #[arg(long)]
    pub jobs: Option<PathBuf>,
    /// include wall-clock time in reports
    #[arg(long)]
    pub timing: bool,
}

impl Args {
    pub fn job(&self) -> Option<JobSpec> {
        let mode = self.mode?;
        Some(JobSpec {
            mode,
            vars: self.vars.clone(),
            f: self.f.clone(),
            x: self.x.as_deref().map(split_equations).unwrap_or_default(),
            seed: self.seed,
            budget: self.budget,
            frame: self.frame.clone(),
            method: self.method.clone(),
            alpha: self.alpha,
            strata: self.strata.clone(),
            format: self.format,
            timing: self.timing,
        })
    }
}

fn defect_payload(report: &DefectReport) -> report::Payload {
    let mut p = Payload::numbers(&report.lambda);
    p.defect = Some(report.defect.to_string());
    p.chi_phi_0 = Some(report.chi_phi_0.to_string());
    p
}

fn fill_defect(out: &mut JsonReport, report: &DefectReport, p: Payload) {
    out.frame = Some((&report.lambda.frame).into());
    out.properness = report.chain.log.iter().map(CheckLine::from).collect();
    out.identities = report.identities.clone();
    out.result = Some(p);
}

fn dispatch(job: &JobSpec, out: &mut JsonReport) -> Result<()> {
    match job.mode {
        JobMode::Milnor => {
            let frame = job.variables()?;
            let mu = milnor_number(&job.function(&frame)?)?;
            out.result = Some(Payload {
                mu: Some(mu.to_string()),
                ..Payload::default()
            });
        }
        JobMode::Le => {
            let frame = job.variables()?;
            let f = job.function(&frame)?;
            let report = defect_affine(&f, &job.frame_choice(&frame)?)?;
            fill_defect(out, &report, defect_payload(&report));
        }
        JobMode::Levogel => {
            let frame = job.variables()?;
            let (x, f) = (job.germ(&frame)?, job.function(&frame)?);
            let report = defect_levogel(&x, &f, &job.frame_choice(&frame)?)?;
            let mut p = defect_payload(&report);
            p.d = Some(report.d.to_string());
            fill_defect(out, &report, p);
        }
        JobMode::Defect => {
            let frame = job.variables()?;
            let f = job.function(&frame)?;
            let choice = job.frame_choice(&frame)?;
            if job.equations(&frame)?.is_empty() && !f.is_constant() {
                let report = defect_affine(&f, &choice)?;
                let mut p = defect_payload(&report);
                p.chi_milnor_fibre = Some((1 - report.defect).to_string());
                fill_defect(out, &report, p);
            } else {
                let report = defect_levogel(&job.germ(&frame)?, &f, &choice)?;
                let mut p = defect_payload(&report);
                p.d = Some(report.d.to_string());
                if report.lambda.s <= 0 {
                    p.euler_obstruction = Some(report.defect.to_string());
                }
                fill_defect(out, &report, p);
            }
        }
        JobMode::EulerCheck => {
            let alpha = job
                .alpha
                .ok_or_else(|| Error::InvalidJob("mode euler-check needs --alpha".into()))?;
            let value = check_euler_condition(alpha, &job.stratum_data()?);
            out.result = Some(Payload {
                value: Some(value.to_string()),
                holds: Some(value == 0),
                ..Payload::default()
            });
        }
        JobMode::Oracle => {
            let method = job.oracle_method()?;
            let frame = job.variables()?;
            let result = match method {
                OracleMethod::Macaulay => {
                    milnor_via_macaulay(&job.function(&frame)?, DEFAULT_DEGREE_BOUND)?
                }
                OracleMethod::ThomSebastiani => chi_thom_sebastiani(&job.function(&frame)?)?,
                OracleMethod::HomogeneousFibre => chi_homogeneous_plane(&job.function(&frame)?)?,
                OracleMethod::MonomialCount => monomial_colength(&job.equations(&frame)?)?,
            };
            let method = serde_json::to_value(result.method).expect("method serializes");
            out.result = Some(Payload {
                value: Some(result.value.to_string()),
                method: method.as_str().map(String::from),
                certificate: Some(result.certificate),
                ..Payload::default()
            });
        }
    }
    Ok(())
}

/// Runs one job to a report. Never panics outward: internal failures are
/// reported as input errors.
pub fn run(job: &JobSpec) -> JsonReport {
    let start = Instant::now();
    let mut out = JsonReport::empty(Some(job));
    match catch_unwind(AssertUnwindSafe(|| dispatch(job, &mut out))) {
        Ok(Ok(())) => {}
        Ok(Err(e)) => out.set_error(&e),
        Err(_) => out.set_error(&Error::InvalidJob(
            "internal failure while evaluating the job".into(),
        )),
    }
    if job.timing {
        out.timing = Some(Timing {
            elapsed_ms: start.elapsed().as_millis().to_string(),
        });
    }
    out
}

/// Runs a batch of JSON job lines, in parallel, reporting in input order.
/// Blank lines are skipped; unparseable lines give input-error reports.
pub fn run_batch(text: &str) -> Vec<JsonReport> {
    let lines: Vec<&str> = text.lines().filter(|l| !l.trim().is_empty()).collect();
    let slots: Vec<Mutex<Option<JsonReport>>> = lines.iter().map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    let workers = std::thread::available_parallelism()
        .map_or(1, |n| n.get())
        .min(lines.len().max(1));
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= lines.len() {
                    break;
                }
                let report = match serde_json::from_str::<JobSpec>(lines[i]) {
                    Ok(job) => run(&job),
                    Err(e) => {
                        JsonReport::failed(None, &Error::InvalidJob(format!("line {}: {e}", i + 1)))
                    }
                };
                *slots[i].lock().expect("slot lock") = Some(report);
            });
        }
    });
    slots
        .into_iter()
        .map(|s| s.into_inner().expect("slot lock").expect("every job ran"))
        .collect()
}

/// Batch exit code: any input error gives 1, else any refusal gives 2.
pub fn batch_exit_code(reports: &[JsonReport]) -> u8 {
    let codes: Vec<u8> = reports.iter().map(JsonReport::exit_code).collect();
    if codes.contains(&1) {
        1
    } else if codes.contains(&2) {
        2
    } else {
        0
    }
}

pub fn main() -> ExitCode {
    let args = Args::parse();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    if let Some(path) = &args.jobs {
        let text = match std::fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) => {
                eprintln!("lecalc: cannot read {}: {e}", path.display());
                return ExitCode::from(1);
            }
        };
        let reports = run_batch(&text);
        for r in &reports {
            let _ = writeln!(out, "{}", r.to_json_line());
        }
        return ExitCode::from(batch_exit_code(&reports));
    }
    let job = args.job().expect("clap requires a mode without --jobs");
    let report = run(&job);
    let _ = match job.format {
        Format::Json => writeln!(out, "{}", report.to_json()),
        Format::Text => write!(out, "{}", report.to_text()),
    };
    ExitCode::from(report.exit_code())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn milnor_report() {
        let r = run(&JobSpec::new(JobMode::Milnor, "x,y").with_f("x^3+y^2"));
        assert_eq!(r.exit_code(), 0);
        assert_eq!(r.result.unwrap().mu.as_deref(), Some("2"));
        let r = run(&JobSpec::new(JobMode::Milnor, "x,y").with_f("x*y^2"));
        assert_eq!(r.exit_code(), 2);
        assert_eq!(
            r.error.unwrap().message,
            "non-isolated critical locus; use mode=le"
        );
    }

    #[test]
    fn le_report() {
        let r = run(&JobSpec::new(JobMode::Le, "x,y").with_f("x*y^2"));
        let p = r.result.clone().unwrap();
        assert_eq!(p.s.as_deref(), Some("1"));
        assert_eq!(p.defect.as_deref(), Some("1"));
        assert_eq!(p.chi_phi_0.as_deref(), Some("-1"));
        let lambda = p.lambda.unwrap();
        assert_eq!((lambda["0"].as_str(), lambda["1"].as_str()), ("2", "1"));
        assert!(r.to_json().contains("\"schema_version\": \"1\""));
        assert!(r.to_text().contains("lambda^0 = 2, lambda^1 = 1"));
    }

    #[test]
    fn input_errors_and_refusals() {
        assert_eq!(
            run(&JobSpec::new(JobMode::Le, "x,y").with_f("x+")).exit_code(),
            1
        );
        assert_eq!(run(&JobSpec::new(JobMode::Le, "x,y")).exit_code(), 1);
        let mut j = JobSpec::new(JobMode::Le, "x,y").with_f("x*y^2");
        j.frame = Some("1,1;1,1".into());
        assert_eq!(run(&j).exit_code(), 1);
        j.frame = Some("0,1;1,0".into());
        assert_eq!(run(&j).exit_code(), 2);
    }

    #[test]
    fn euler_check_and_oracle() {
        let mut j = JobSpec::new(JobMode::EulerCheck, "");
        j.alpha = Some(2);
        j.strata = Some("a:1:1;b:1:1".into());
        assert_eq!(run(&j).result.unwrap().holds, Some(true));
        let mut j = JobSpec::new(JobMode::Oracle, "x,y").with_f("x^3+y^4");
        j.method = Some("macaulay".into());
        let p = run(&j).result.unwrap();
        assert_eq!(
            (p.value.as_deref(), p.method.as_deref()),
            (Some("6"), Some("macaulay"))
        );
    }

    #[test]
    fn batches_keep_order() {
        let text = "{\"mode\":\"milnor\",\"vars\":\"x,y\",\"f\":\"x^2+y^2\"}\n\nnot json\n\
                    {\"mode\":\"milnor\",\"vars\":\"x,y\",\"f\":\"x*y^2\"}\n";
        let reports = run_batch(text);
        let codes: Vec<u8> = reports.iter().map(JsonReport::exit_code).collect();
        assert_eq!(codes, vec![0, 1, 2]);
        assert_eq!(batch_exit_code(&reports), 1);
    }
}
