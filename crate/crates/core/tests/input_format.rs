use dgcyc_core::error::Error;
use dgcyc_core::examples::{dual_numbers, dual_resolution, unit};
use dgcyc_core::input::{parse_input, serialize};

const Q: &str = "name: k<x,y;dy=x^2>
objects: pt
x: pt->pt deg=0 wt=1
y: pt->pt deg=1 wt=2 d=x*x   # the relation
";

#[test]
fn dual_resolution_matches_hand_built() {
    assert_eq!(parse_input(Q).unwrap(), dual_resolution());
}

#[test]
fn unit_document() {
    let p = parse_input("name: kO\nobjects: pt\ncofibrant: true\n").unwrap();
    assert_eq!(p, unit());
}

#[test]
fn round_trips() {
    let mut fd = dual_numbers();
    fd.cofibrant_asserted = false;
    let two = "name: two\nobjects: a b\nkind: semifree\ncofibrant: true\n\
f: a->b deg=0 wt=1\ng: b->a deg=0 wt=1\nk: a->a deg=0 wt=2\nh: a->a deg=1 wt=2 d=-1/2*g*f + 3*k\n";
    for p in [dual_resolution(), unit(), fd, parse_input(two).unwrap()] {
        let text = serialize(&p);
        assert_eq!(parse_input(&text).unwrap(), p, "{text}");
    }
}

fn parse_err(text: &str) -> (usize, usize) {
    match parse_input(text) {
        Err(Error::Parse { line, column, .. }) => (line, column),
        other => panic!("expected a parse error, got {other:?}"),
    }
}

#[test]
fn positioned_errors() {
    assert_eq!(parse_err("objects: pt\nx: pt->pt deg=0 wt=1\ny: pt->pt deg=1 wt=2 d=x*z\n"), (3, 25));
    assert_eq!(parse_err("objects: pt\nx: pt->qq deg=0 wt=1\n").0, 2);
    assert_eq!(parse_err("objects: pt\nx pt->pt\n"), (2, 1));
    assert_eq!(parse_err("x: pt->pt deg=0 wt=1\n"), (1, 1));
}

#[test]
fn validation_errors() {
    let r = parse_input("objects: pt\nx: pt->pt deg=0 wt=0\n");
    assert!(matches!(r, Err(Error::Validation(_))), "{r:?}");
}
