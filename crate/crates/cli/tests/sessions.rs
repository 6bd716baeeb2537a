use std::process::Command;

use fibercone::run::{Report, EXIT_FAIL, EXIT_HYPOTHESES, EXIT_INPUT, EXIT_PASS};
use fibercone::{catalog_session, run_session, Session};
use fibercone_core::catalog;

fn session(name: &str, cmds: &[&str]) -> String {
    catalog_session(catalog::entry(name).unwrap(), cmds)
}

fn run(text: &str) -> (Report, String) {
    let s = Session::parse(text).unwrap();
    let mut out = Vec::new();
    let r = run_session(&s, &mut out).unwrap();
    (r, String::from_utf8(out).unwrap())
}

fn rows<'a>(tsv: &'a str, head: &str) -> Vec<Vec<&'a str>> {
    tsv.lines().filter(|l| l.starts_with(head)).map(|l| l.split('\t').collect()).collect()
}

#[test]
fn regular_verify_all_passes() {
    let (r, tsv) = run(&session("regular", &["verify all"]));
    assert_eq!(r.exit_code, EXIT_PASS);
    let checks = rows(&tsv, "check\t");
    assert!(checks.len() >= 10);
    assert!(checks.iter().all(|c| c[2] == "pass"), "{}", tsv);
}

#[test]
fn outside_instance_is_minimal() {
    let (r, tsv) = run(&session("outside", &["classify I1 I2 X"]));
    assert_eq!(r.exit_code, EXIT_PASS);
    assert_eq!(rows(&tsv, "classify"), vec![vec!["classify", "delta", "0", "label", "minimal"]]);
}

#[test]
fn hilbert_table_and_g_vector() {
    let (_, tsv) = run(&session("regular", &["hilbert I1 I2 window=8"]));
    let table: Vec<(i64, i64)> = tsv
        .lines()
        .filter_map(|l| {
            let mut it = l.split('\t');
            Some((it.next()?.parse().ok()?, it.next()?.parse().ok()?))
        })
        .collect();
    assert_eq!(table.len(), 9);
    for (n, v) in table {
        assert_eq!(v, (n + 1) * (n + 2) / 2);
    }
    assert!(tsv.contains("g\t1,0,0\tbasis\tC(n+d-j,d-j)"));
}

#[test]
fn homology_table() {
    let (_, tsv) = run(&session("regular", &["homology X I1 I2 C1 0..6"]));
    let lines: Vec<&str> = tsv.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(lines[0], "n\th0\th1\th2");
    assert_eq!(lines[1], "0\t1\t2\t1");
    assert_eq!(lines[2], "1\t1\t0\t1");
    for l in &lines[3..] {
        assert!(l.ends_with("\t1\t0\t0"), "{}", l);
    }
    assert_eq!(lines.len(), 8);
}

#[test]
fn fundamental_on_regular() {
    let (r, tsv) = run(&session("regular", &["verify fundamental"]));
    assert_eq!(r.exit_code, EXIT_PASS);
    assert_eq!(rows(&tsv, "check"), vec![vec!["check", "fundamental", "pass"]]);
}

#[test]
fn minimal_series_needs_containment() {
    let (r, tsv) = run(&session("outside", &["verify series-mm"]));
    assert_eq!(r.exit_code, EXIT_HYPOTHESES);
    assert!(tsv.contains("check\tseries-mm\thypotheses_not_met"));
    let check = &r.commands[0].checks[0];
    assert!(check.notes.iter().any(|n| n.contains("6 + 2t")));
    let (r, _) = run(&session("mm", &["verify series-mm"]));
    assert_eq!(r.exit_code, EXIT_PASS);
}

#[test]
fn failing_check_exits_two() {
    let (r, _) = run(&session("regular", &["verify outside-reduction"]));
    assert_eq!(r.exit_code, EXIT_FAIL);
}

#[test]
fn round_trip_reruns_identically() {
    let text = session("mm", &["set window=5 seed=7 trials=4", "reduce I2 in I1 as Y", "op J = I1 ∩ I2", "length J", "verify coefficients Y I1 I2", "depth F X I1 I2"]);
    let parsed = Session::parse(&text).unwrap();
    let regenerated = parsed.to_string();
    let (a, ta) = run(&text);
    let (b, tb) = run(&regenerated);
    let body = |t: &str| t.lines().filter(|l| !l.starts_with("# line")).map(String::from).collect::<Vec<_>>();
    assert_eq!(body(&ta), body(&tb));
    let strip = |r: &Report| r.commands.iter().map(|c| (c.command.clone(), c.rows.clone(), c.checks.clone())).collect::<Vec<_>>();
    assert_eq!(strip(&a), strip(&b));
    assert_eq!(a.commands[0].reduction.as_ref().unwrap().seed, 7);
}

#[test]
fn replay_is_bit_identical() {
    let text = session("amm", &["set seed=11", "reduce I2 in I1 as Y", "verify all"]);
    let (a, _) = run(&text);
    let (b, _) = run(&text);
    assert_eq!(serde_json::to_vec(&a).unwrap(), serde_json::to_vec(&b).unwrap());
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_fibercone"))
}

#[test]
fn binary_writes_report_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("regular.fc");
    std::fs::write(&path, session("regular", &["verify min-mult"])).unwrap();
    let report = dir.path().join("report.json");
    let out = bin().arg("run").arg(&path).arg("--report").arg(&report).output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_PASS));
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(json["commands"][0]["checks"][0]["id"], "min-mult");
    assert_eq!(json["commands"][0]["checks"][0]["verdict"], "pass");
    assert_eq!(json["header"]["seed"], 0);

    let bad = dir.path().join("bad.fc");
    std::fs::write(&bad, "ring vars=x,y\nideal I = x, y\nlength K\n").unwrap();
    let out = bin().arg("run").arg(&bad).output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_INPUT));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));

    let out = bin().args(["catalog", "amm", "-c", "verify mm-amm"]).output().unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("verify mm-amm"));
    let out = bin().arg("check").arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("ring p=32003 vars=x,y"));
}
