use std::sync::Arc;

use dgcyc_core::check::CheckReport;
use dgcyc_core::complex::Window;
use dgcyc_core::examples::{dual_numbers, dual_resolution, free_x, unit};
use dgcyc_core::theorems::*;
use dgcyc_core::DgPresentation;

fn arc(p: DgPresentation) -> Pres {
    Arc::new(p)
}

fn assert_pass(r: &CheckReport) {
    assert!(r.passed(), "{}: {:#?}", r.name, r.failures());
}

#[test]
fn structural_on_all_examples() {
    let w = Window::new((-3, 5), (0, 3));
    for p in [unit(), free_x(), dual_resolution(), dual_numbers()] {
        assert_pass(&check_structural(&arc(p), 2, &w));
    }
}

#[test]
fn homotopy_and_pi() {
    let w = Window::new((-1, 5), (0, 4));
    for p in [free_x(), dual_resolution()] {
        let p = arc(p);
        assert_pass(&check_homotopy(&p, (1, 3), &w));
        for n in 1..=3 {
            assert_pass(&check_pi_qiso(&p, n, &w));
        }
    }
}

#[test]
fn master_diagram() {
    let w = Window::new((-1, 4), (0, 3));
    for p in [unit(), free_x(), dual_resolution()] {
        assert_pass(&check_master_diagram(&arc(p), 3, &w));
    }
    let r = check_master_diagram(&arc(dual_numbers()), 3, &w);
    assert_pass(&r);
}

#[test]
fn cone_iso() {
    let w = Window::new((-1, 4), (0, 3));
    for p in [unit(), free_x(), dual_resolution()] {
        assert_pass(&check_cone_iso(&arc(p), &w));
    }
}

#[test]
fn feigin_tsygan_and_cc() {
    let w = Window::new((-1, 5), (0, 3));
    for p in [unit(), free_x(), dual_resolution()] {
        let p = arc(p);
        assert_pass(&check_feigin_tsygan(&p, &w));
        assert_pass(&check_cc_to_clambda(&p, &w));
    }
    assert!(check_feigin_tsygan(&arc(dual_numbers()), &w).is_skipped());
}

#[test]
fn hodge_and_periodic() {
    let w = Window::new((-5, 5), (0, 3));
    let q = arc(dual_resolution());
    for r in 1..=2 {
        assert_pass(&check_hodge_theorem(&q, None, r, &w));
    }
    assert!(check_hodge_theorem(&q, None, 0, &w).is_skipped());
    assert_pass(&check_periodic(&q, None, &w));
    assert_pass(&check_hodge_theorem(&arc(free_x()), None, 1, &w));
}

#[test]
fn sbi() {
    let w = Window::new((-5, 5), (0, 3));
    for p in [free_x(), dual_resolution()] {
        assert_pass(&check_sbi(&arc(p), &w));
    }
}
