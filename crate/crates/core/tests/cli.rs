use std::process::Command;

use lecalc::cli::{run, JobMode, JobSpec};
use serde_json::Value;

fn lecalc(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_lecalc"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
    )
}

#[test]
fn exit_codes() {
    let (code, out) = lecalc(&["milnor", "--vars", "x,y", "--f", "x^3+y^2"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["result"]["mu"], "2");

    let (code, out) = lecalc(&["milnor", "--vars", "x,y", "--f", "x*y^2"]);
    assert_eq!(code, 2);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(
        v["error"]["message"],
        "non-isolated critical locus; use mode=le"
    );

    let (code, _) = lecalc(&["le", "--vars", "x,y", "--f", "x*(y"]);
    assert_eq!(code, 1);
    let (code, _) = lecalc(&["levogel", "--vars", "x,y,z", "--X", "x*y;x*z", "--f", "x"]);
    assert_eq!(code, 1);
}

#[test]
fn le_example_matches() {
    let (code, out) = lecalc(&["le", "--vars", "x,y", "--f", "x*y^2"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    let r = &v["result"];
    assert_eq!(
        (r["s"].as_str(), r["D"].as_str(), r["chi_phi_0"].as_str()),
        (Some("1"), Some("1"), Some("-1"))
    );
    assert_eq!(r["lambda"]["0"], "2");
    assert_eq!(r["lambda"]["1"], "1");
    assert_eq!(v["timing"], Value::Null);
}

#[test]
fn output_is_byte_identical_across_processes() {
    let args = [
        "levogel", "--vars", "x,y", "--X", "x*y", "--f", "0", "--seed", "4",
    ];
    let (a, b) = (lecalc(&args), lecalc(&args));
    assert_eq!(a, b);
    assert!(!a.1.contains("elapsed_ms"));
    let (_, timed) = lecalc(&["milnor", "--vars", "x,y", "--f", "x^2+y^2", "--timing"]);
    assert!(timed.contains("elapsed_ms"));
}

#[test]
fn printed_frame_reproduces_numbers() {
    for (x, f) in [(None, "x^2+y^2*z"), (Some("x*y"), "0")] {
        let mut job = match x {
            None => JobSpec::new(JobMode::Le, "x,y,z").with_f(f),
            Some(eq) => JobSpec::new(JobMode::Levogel, "x,y")
                .with_f(f)
                .with_x(&[eq]),
        };
        let first = run(&job);
        assert_eq!(first.exit_code(), 0);
        let frame = first.frame.clone().unwrap();
        assert_eq!(frame.provenance, "auto_genericized");
        job.frame = Some(frame.spec.clone());
        let again = run(&job);
        assert_eq!(again.frame.as_ref().unwrap().provenance, "user_given");
        assert_eq!(again.result, first.result);
    }
}

#[test]
fn batch_mode_reports_each_line() {
    let dir = std::env::temp_dir().join(format!("lecalc-batch-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("jobs.jsonl");
    std::fs::write(
        &path,
        "{\"mode\":\"milnor\",\"vars\":\"x,y\",\"f\":\"x^4+y^5\"}\n\
         {\"mode\":\"defect\",\"vars\":\"x,y\",\"X\":[\"x^2-y^3\"],\"f\":\"0\"}\n\
         {\"mode\":\"oracle\",\"vars\":\"x,y\",\"method\":\"monomial_count\",\"X\":[\"x^2\",\"y^3\"]}\n",
    )
    .unwrap();
    let (code, out) = lecalc(&["--jobs", path.to_str().unwrap()]);
    std::fs::remove_dir_all(&dir).ok();
    assert_eq!(code, 0);
    let lines: Vec<Value> = out
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 3);
    assert_eq!(lines[0]["result"]["mu"], "12");
    assert_eq!(lines[1]["result"]["D"], "2");
    assert_eq!(lines[2]["result"]["value"], "6");
}
