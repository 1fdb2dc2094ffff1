//! The twelve acceptance criteria, each at zero tolerance. Prints one line
//! per criterion and fails if any criterion fails.

mod common;

use std::io::Write;
use std::sync::Arc;
use std::time::Instant;

use dgcyc_core::check::CheckReport;
use dgcyc_core::complex::{homology, Cone, Window};
use dgcyc_core::examples::{dual_numbers, dual_resolution, free_x, unit};
use dgcyc_core::hochschild::HochschildComplex;
use dgcyc_core::natural::NatComplex;
use dgcyc_core::report::{emit_report, Format, Report};
use dgcyc_core::theorems::*;

fn k() -> Pres {
    Arc::new(unit())
}
fn f() -> Pres {
    Arc::new(free_x())
}
fn q() -> Pres {
    Arc::new(dual_resolution())
}
fn d() -> Pres {
    Arc::new(dual_numbers())
}

fn group(name: &str, parts: impl IntoIterator<Item = CheckReport>) -> CheckReport {
    let mut r = CheckReport::new(name);
    for p in parts {
        r.push(p);
    }
    r
}

fn c1() -> CheckReport {
    let w = Window::new((-8, 8), (0, 4));
    group("structural identities", [k(), f(), q(), d()].iter().map(|p| check_structural(p, 3, &w)))
}

fn c2() -> CheckReport {
    let w = Window::new((-2, 8), (0, 3));
    group("homotopy hb+bh = id - tau", [f(), q()].iter().map(|p| check_homotopy(p, (1, 3), &w)))
}

fn c3() -> CheckReport {
    let w = Window::new((-2, 8), (0, 3));
    let mut r = CheckReport::new("pi: X^(n) -> scX^(n) quasi-iso");
    for p in [f(), q()] {
        for n in 2..=3 {
            r.push(check_pi_qiso(&p, n, &w));
        }
    }
    r
}

fn c4() -> CheckReport {
    let w = Window::new((-2, 6), (0, 3));
    group("master diagram", [f(), q()].iter().map(|p| check_master_diagram(p, 3, &w)))
}

fn c5() -> CheckReport {
    let w = Window::new((-1, 7), (0, 3));
    group("cone isomorphism", [k(), f()].iter().map(|p| check_cone_iso(p, &w)))
}

/// Engine homology of `cone[k𝒪 → F_♮]` against the necklace count.
fn free_natural_oracle(w: &Window) -> CheckReport {
    let mut r = CheckReport::new("oracle: H(cone[kO -> F_nat])").with_window(w);
    let p = f();
    let cone = Cone::new(
        Arc::new(NatComplex::new(Arc::new(p.unit_of()))),
        Arc::new(NatComplex::new(p.clone())),
        dgcyc_core::complex::key_inclusion(),
    );
    match homology(&cone, w) {
        Ok(t) => {
            for ((d, wt), dim) in t {
                let expected = common::free_reduced_natural_dim(1, d, wt);
                r.count(1);
                if dim != expected {
                    r.fail(format!("(d={d}, w={wt}): engine {dim}, oracle {expected}"));
                }
            }
        }
        Err(e) => r.fail(e.to_string()),
    }
    r
}

fn c6() -> CheckReport {
    let w = Window::new((-2, 8), (0, 4));
    let mut r = group("Feigin-Tsygan", [f(), q()].iter().map(|p| check_feigin_tsygan(p, &w)));
    r.push(free_natural_oracle(&w));
    r
}

fn c7() -> CheckReport {
    let w = Window::new((-2, 8), (0, 4));
    group("CC -> C^lambda quasi-iso", [f(), d()].iter().map(|p| check_cc_to_clambda(p, &w)))
}

fn c8() -> CheckReport {
    let w = Window::new((-8, 8), (0, 3));
    let (q, d, f) = (q(), d(), f());
    let mut r = CheckReport::new("F^r scX^tot vs CN[-2r]");
    for rr in 1..=2 {
        r.push(check_hodge_theorem(&q, Some(&d), rr, &w));
        r.push(check_hodge_theorem(&f, Some(&f), rr, &w));
    }
    r
}

fn c9() -> CheckReport {
    let w = Window::new((-8, 8), (0, 3));
    check_periodic(&q(), Some(&d()), &w)
}

fn c10() -> CheckReport {
    let w = Window::new((-8, 8), (0, 3));
    check_sbi(&f(), &w)
}

fn c11() -> CheckReport {
    let w = Window::new((-1, 7), (0, 6));
    let mut r = CheckReport::new("C^H(F) against the closed form and brute force").with_window(&w);
    let hh = HochschildComplex::new(f(), true);
    match homology(&hh, &w) {
        Ok(t) => {
            for ((n, wt), dim) in t {
                let closed = common::free_hochschild_closed(n, wt);
                let brute = if n >= 0 { common::free_hochschild_dim(n as usize, wt as usize) } else { 0 };
                r.count(1);
                if dim != closed || dim != brute {
                    r.fail(format!("(d={n}, w={wt}): engine {dim}, closed form {closed}, brute force {brute}"));
                }
            }
        }
        Err(e) => r.fail(e.to_string()),
    }
    r
}

fn suite() -> Vec<(u32, &'static str, CheckReport, f64)> {
    let criteria: [(u32, &str, fn() -> CheckReport); 11] = [
        (1, "structural identities", c1),
        (2, "homotopy proposition", c2),
        (3, "pi quasi-isomorphism", c3),
        (4, "master diagram", c4),
        (5, "cone isomorphism", c5),
        (6, "Feigin-Tsygan", c6),
        (7, "CC -> C^lambda", c7),
        (8, "Hodge filtration vs CN", c8),
        (9, "reduced periodic comparison", c9),
        (10, "SBI ladders", c10),
        (11, "free-algebra oracle", c11),
    ];
    criteria
        .iter()
        .map(|&(i, name, run)| {
            let t = Instant::now();
            let r = run();
            (i, name, r, t.elapsed().as_secs_f64())
        })
        .collect()
}

fn json_of(results: &[(u32, &str, CheckReport, f64)]) -> String {
    let mut report = Report::new("acceptance suite", "K F Q D");
    for (_, _, r, _) in results {
        report.add_check(r.clone());
    }
    emit_report(&report, Format::Json)
}

fn line(out: &mut impl Write, i: u32, name: &str, r: &CheckReport, secs: f64) {
    let verdict = if r.passed() { "PASS" } else { "FAIL" };
    let _ = writeln!(out, "criterion {i:>2} [{verdict}] {name} ({} checked, {secs:.1}s)", count(r));
    for f in r.failures().iter().take(6) {
        let _ = writeln!(out, "    {f}");
    }
}

fn count(r: &CheckReport) -> usize {
    r.checked + r.sub.iter().map(count).sum::<usize>()
}

#[test]
fn acceptance() {
    let mut out = std::io::stdout();
    let first = suite();
    let mut all = true;
    for (i, name, r, secs) in &first {
        line(&mut out, *i, name, r, *secs);
        all &= r.passed();
    }
    let t = Instant::now();
    let a = json_of(&first);
    let b = json_of(&suite());
    let same = a == b;
    let _ = writeln!(
        out,
        "criterion 12 [{}] determinism ({} bytes of JSON, {:.1}s)",
        if same { "PASS" } else { "FAIL" },
        a.len(),
        t.elapsed().as_secs_f64()
    );
    all &= same;
    assert!(all, "some acceptance criteria failed");
}
