use std::sync::Arc;

use dgcyc_core::cache::{Cache, Table};
use dgcyc_core::check::{CheckReport, DimCell};
use dgcyc_core::complex::Window;
use dgcyc_core::examples::free_x;
use dgcyc_core::report::{emit_report, Format, Report};
use dgcyc_core::theorems::check_cc_to_clambda;

fn sample() -> Report {
    let mut r = Report::new("k<x>", "objects: pt\nx: pt->pt deg=0 wt=1\n");
    r.add_check(check_cc_to_clambda(&Arc::new(free_x()), &Window::new((-1, 3), (0, 2))));
    r
}

#[test]
fn empty_report_is_valid_json() {
    let r = Report::new("empty", "");
    let v: serde_json::Value = serde_json::from_str(&emit_report(&r, Format::Json)).unwrap();
    assert_eq!(v["checks"], serde_json::json!([]));
    assert_eq!(v["all_passed"], serde_json::json!(true));
    assert!(v.get("timings_ms").is_none());
    assert_eq!(emit_report(&r, Format::Csv).lines().count(), 1);
}

#[test]
fn deterministic_in_every_format() {
    for f in [Format::Json, Format::Markdown, Format::Csv] {
        assert_eq!(emit_report(&sample(), f), emit_report(&sample(), f));
    }
}

#[test]
fn csv_rows_are_rectangular() {
    let text = emit_report(&sample(), Format::Csv);
    let width = text.lines().next().unwrap().split(',').count();
    for line in text.lines() {
        assert_eq!(line.split(',').count(), width, "{line}");
    }
}

#[test]
fn gs_grading_relabels() {
    let mut r = Report::new("x", "");
    r.add_dims([DimCell { complex: "F^1X".into(), w: 1, d: 2, n: None, r: Some(1), dim: 1 }]);
    let r = r.with_gs_grading();
    assert_eq!(r.homology[0].pq, Some((2, 1)));
    assert!(emit_report(&r, Format::Markdown).contains("(2,1)"));
}

#[test]
fn failures_set_exit_code() {
    let mut r = Report::new("x", "");
    let mut c = CheckReport::new("bad");
    c.fail("witness".into());
    r.add_check(c);
    assert_eq!(r.exit_code(), 1);
    assert_eq!(r.failures, vec!["bad: witness".to_string()]);
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cache = Cache::new(dir.path());
    let t: Table = [((0, 1), 1), ((1, 2), 3)].into_iter().collect();
    assert!(cache.get("k").is_none());
    cache.put("k", "CC(k<x>)", &t).unwrap();
    assert_eq!(cache.get("k"), Some(("CC(k<x>)".to_string(), t)));
    let leftovers = std::fs::read_dir(dir.path()).unwrap().filter(|e| {
        e.as_ref().unwrap().file_name().to_string_lossy().contains("tmp")
    });
    assert_eq!(leftovers.count(), 0);
}
