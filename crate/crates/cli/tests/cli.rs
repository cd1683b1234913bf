use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use higgs_betti::format::parse_records;
use higgs_betti_core::specialization::{complex_betti, real_betti};
use higgs_betti_core::ENGINE_VERSION;

fn run(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_higgs-betti"))
        .args(args)
        .env("HIGGS_BETTI_CACHE", cache)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn compute_prints_the_expanded_polynomial() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(
        dir.path(),
        &[
            "compute", "--g", "2", "--b", "2", "--r", "2", "--d", "1", "--field", "real",
        ],
    );
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        "g=2 b=2 r=2 d=1 field=real pipeline=generic: 4*t^10 - 20*t^9 + 52*t^8 - 76*t^7 + 56*t^6 - 16*t^5\n"
    );
    let o = run(dir.path(), &["compute", "--g", "1", "--b", "0", "--r", "1", "--d", "0"]);
    assert!(o.status.success());
    assert!(stdout(&o).ends_with(": t^2 - t\n"));
}

#[test]
fn invalid_inputs_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["compute", "--g", "2", "--b", "3", "--r", "2", "--d", "1"][..],
        &["compute", "--g", "2", "--b", "1", "--r", "2", "--d", "4"],
        &["compute", "--g", "2", "--r", "2"],
        &["compute", "--g", "0", "--b", "0", "--r", "1"],
        &[
            "compute",
            "--g",
            "2",
            "--b",
            "0",
            "--r",
            "3",
            "--pipeline",
            "closed-form",
        ],
        &["table", "--g", "x", "--r", "1"],
        &["frobnicate"],
    ] {
        let o = run(dir.path(), args);
        assert_eq!(
            o.status.code(),
            Some(2),
            "{args:?}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
    }
    let o = run(dir.path(), &["compute", "--g", "2", "--b", "3", "--r", "2", "--d", "1"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("b must not exceed g"));
}

#[test]
fn table_json_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["table", "--g", "2..3", "--r", "2", "--format", "json"]);
    assert!(o.status.success());
    let recs = parse_records(&stdout(&o)).unwrap();
    assert_eq!(recs.len(), 7);
    for rec in &recs {
        let b = rec.params.b.unwrap();
        assert_eq!(rec.polynomial().unwrap(), real_betti(rec.params.g, b, 2).unwrap().poly);
        assert_eq!(rec.engine_version, ENGINE_VERSION);
        let again: higgs_betti::record::OutputRecord =
            serde_json::from_str(&serde_json::to_string(rec).unwrap()).unwrap();
        assert_eq!(&again, rec);
    }
    let o = run(
        dir.path(),
        &[
            "table", "--g", "2", "--r", "1..2", "--field", "complex", "--format", "json",
        ],
    );
    let recs = parse_records(&stdout(&o)).unwrap();
    assert_eq!(recs.len(), 2);
    assert_eq!(recs[1].polynomial().unwrap(), complex_betti(2, 2).unwrap().poly);
    assert_eq!(recs[1].params.b, None);
}

#[test]
fn empty_table() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["table", "--g", "3..2", "--r", "1", "--format", "json"]);
    assert!(o.status.success());
    assert_eq!(parse_records(&stdout(&o)).unwrap(), vec![]);
}

#[test]
fn table_cells_fail_independently() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(
        dir.path(),
        &["table", "--g", "1", "--r", "1..2", "--d", "2", "--format", "json"],
    );
    assert_eq!(o.status.code(), Some(2));
    let recs = parse_records(&stdout(&o)).unwrap();
    assert_eq!(recs.len(), 2, "rank one cells survive");
    assert!(recs.iter().all(|r| r.params.r == 1));
}

#[test]
fn cache_does_not_change_output() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["table", "--g", "1..2", "--r", "1..3", "--format", "csv", "--no-timing"];
    let cold = run(dir.path(), &args);
    let warm = run(dir.path(), &args);
    let mut uncached = args.to_vec();
    uncached.push("--no-cache");
    let off = run(dir.path(), &uncached);
    assert!(cold.status.success());
    assert_eq!(cold.stdout, warm.stdout);
    assert_eq!(cold.stdout, off.stdout);
    // Two genera, three ranks.
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 6);
}

#[test]
fn cache_list_and_clear() {
    let dir = tempfile::tempdir().unwrap();
    run(dir.path(), &["compute", "--g", "2", "--b", "0", "--r", "2"]);
    let list = stdout(&run(dir.path(), &["cache", "list"]));
    assert!(list.contains("g=2 r=1"));
    assert!(list.contains("g=2 r=2"));
    assert_eq!(stdout(&run(dir.path(), &["cache", "clear"])), "removed 2 entries\n");
    assert_eq!(stdout(&run(dir.path(), &["cache", "list"])).lines().count(), 1);
}

#[test]
fn stale_and_truncated_entries_are_recomputed() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["compute", "--g", "2", "--b", "1", "--r", "2"];
    let fresh = stdout(&run(dir.path(), &args));
    let entry = dir.path().join("a_g2_r2.txt");
    let text = fs::read_to_string(&entry).unwrap();
    fs::write(&entry, text.replace(ENGINE_VERSION, "0.0.0-old")).unwrap();
    assert!(stdout(&run(dir.path(), &["cache", "list"])).contains("(stale)"));
    assert_eq!(stdout(&run(dir.path(), &args)), fresh);
    assert!(fs::read_to_string(&entry).unwrap().contains(ENGINE_VERSION));
    fs::write(&entry, "g: 2\n").unwrap();
    let o = run(dir.path(), &args);
    assert!(o.status.success());
    assert_eq!(stdout(&o), fresh);
}

#[test]
fn verify_detects_a_corrupted_entry() {
    let dir = tempfile::tempdir().unwrap();
    run(dir.path(), &["compute", "--g", "2", "--b", "0", "--r", "2"]);
    let ok = run(
        dir.path(),
        &["verify", "--max-g", "1", "--max-r", "1", "--recompute-cache"],
    );
    assert!(ok.status.success());
    let entry = dir.path().join("a_g2_r2.txt");
    let text = fs::read_to_string(&entry).unwrap();
    let (header, body) = text.split_once("\n\n").unwrap();
    // Change one coefficient; the entry still parses.
    let corrupted = body.replacen("1/1*", "7/1*", 1);
    assert_ne!(corrupted, body);
    fs::write(&entry, format!("{header}\n\n{corrupted}")).unwrap();
    let bad = run(
        dir.path(),
        &[
            "verify",
            "--max-g",
            "1",
            "--max-r",
            "1",
            "--recompute-cache",
            "--format",
            "json",
        ],
    );
    assert_eq!(bad.status.code(), Some(3));
    let reports: Vec<higgs_betti::format::ReportRecord> = serde_json::from_str(&stdout(&bad)).unwrap();
    let failed: Vec<_> = reports.iter().filter(|r| !r.passed()).collect();
    assert_eq!(failed.len(), 1);
    assert_eq!(failed[0].check, "cache-entry");
    assert_eq!((failed[0].params.g, failed[0].params.r), (2, Some(2)));
    assert!(failed[0].witness.as_ref().unwrap().left.starts_with("7/1*"));
}

#[test]
fn verify_smoke_run() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["verify", "--max-r", "1"]);
    assert!(o.status.success());
    assert!(stdout(&o).ends_with("54 checks, 0 failed\n"));
}

#[test]
fn latex_uses_the_factored_form() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(
        dir.path(),
        &["compute", "--g", "3", "--b", "1", "--r", "1", "--format", "latex"],
    );
    assert_eq!(stdout(&o), "$-2t^{3}(1-t)^{3}$\n");
    let o = run(dir.path(), &["table", "--g", "1", "--r", "1", "--format", "latex"]);
    assert!(stdout(&o).contains("1 & 1 & 1 & $-2t(1-t)$ \\\\"));
}
