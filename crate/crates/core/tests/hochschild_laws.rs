use std::sync::Arc;

use dgcyc_core::complex::{apply_diff, check_mixed, check_square_zero, Complex, Mixed, Window};
use dgcyc_core::examples;
use dgcyc_core::hochschild::{ConnesComplex, HochschildComplex};
use dgcyc_core::DgPresentation;

fn inputs() -> Vec<DgPresentation> {
    vec![examples::unit(), examples::free_x(), examples::dual_resolution(), examples::dual_numbers()]
}

#[test]
fn mixed_laws_both_variants() {
    for p in inputs() {
        let p = Arc::new(p);
        for normalized in [true, false] {
            let hh = HochschildComplex::new(p.clone(), normalized);
            let r = check_mixed(&hh, &Window::new((0, 6), (0, 3)));
            assert!(r.passed(), "{}: {:?}", hh.name(), r.failures);
        }
    }
}

#[test]
fn b_descends_to_connes() {
    for p in inputs() {
        let p = Arc::new(p);
        let cl = ConnesComplex::new(p.clone());
        for w in 0..=3 {
            for d in 0..=5 {
                for c in cl.hh.basis(d, w) {
                    let mut x = dgcyc_core::Lin::single(c.clone());
                    x.sub_lin(&cl.hh.t(&c));
                    let img = cl.project(&apply_diff(&*cl.hh, &x));
                    assert!(img.is_zero(), "{}: b(1-t) on {}", p.name, cl.hh.label(&c));
                }
            }
        }
        assert!(check_square_zero(&cl, &Window::new((0, 6), (0, 3))).passed());
    }
}

#[test]
fn unnormalized_connes_lands_in_image_of_one_minus_t() {
    let p = Arc::new(examples::dual_resolution());
    let cl = ConnesComplex::new(p);
    for w in 0..=3 {
        for d in 0..=4 {
            for c in cl.hh.basis(d, w) {
                assert!(cl.project(&cl.hh.connes(&c)).is_zero());
            }
        }
    }
}

#[test]
fn free_algebra_hochschild_homology() {
    let hh = HochschildComplex::new(Arc::new(examples::free_x()), true);
    let h = dgcyc_core::complex::homology(&hh, &Window::new((-1, 4), (0, 4))).unwrap();
    for ((d, w), dim) in h {
        let expect = if w == 0 { usize::from(d == 0) } else { usize::from(d == 0 || d == 1) };
        assert_eq!(dim, expect, "(d={d}, w={w})");
    }
}

#[test]
fn cc_to_connes_quasi_iso() {
    use dgcyc_core::complex::{check_quasi_iso, map_fn, TotKey};
    use dgcyc_core::hochschild::{cyclic_cc, HChain};
    for p in [examples::free_x(), examples::dual_numbers()] {
        let p = Arc::new(p);
        let cl = Arc::new(ConnesComplex::new(p.clone()));
        let cl2 = cl.clone();
        let f = map_fn(move |k: &TotKey<HChain>| if k.p == 0 { cl2.class(&k.k) } else { dgcyc_core::Lin::zero() });
        let r = check_quasi_iso("CC->C^lambda", cyclic_cc(p.clone()), cl, f, &Window::new((-1, 5), (0, 3)));
        assert!(r.passed(), "{}: {:?}", p.name, r.failures);
    }
}
