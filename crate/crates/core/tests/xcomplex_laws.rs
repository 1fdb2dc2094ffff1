use std::sync::Arc;

use dgcyc_core::complex::{apply_diff, check_chain_map, check_on_basis, check_square_zero, map_fn, Complex, Window};
use dgcyc_core::examples;
use dgcyc_core::hochschild::HochschildComplex;
use dgcyc_core::lin::Lin;
use dgcyc_core::linalg::rat;
use dgcyc_core::xcomplex::{XComplex, XCore};
use dgcyc_core::DgPresentation;

fn inputs() -> Vec<DgPresentation> {
    vec![examples::unit(), examples::free_x(), examples::dual_resolution()]
}

fn win() -> Window {
    Window::new((-1, 6), (0, 3))
}

#[test]
fn square_zero_and_mixed() {
    for p in inputs() {
        let core = XCore::new(Arc::new(p)).unwrap();
        for n in 0..=3 {
            for c in [XComplex::x(core.clone(), n), XComplex::scx(core.clone(), n)] {
                let r = check_square_zero(&c, &win());
                assert!(r.passed(), "{}: {:?}", c.name(), r.failures);
                let cc = c.clone();
                let r = check_on_basis("B", &c, &win(), |k| {
                    let bk = if cc.coinvariant { cc.core.b_scx(k) } else { cc.core.b_x(k) };
                    let bb = bk.map_linear(|t| if cc.coinvariant { cc.core.b_scx(t) } else { cc.core.b_x(t) });
                    let next = if cc.coinvariant { XComplex::scx(cc.core.clone(), n + 1) } else { XComplex::x(cc.core.clone(), n + 1) };
                    let mut s = apply_diff(&next, &bk);
                    s.add_lin(&apply_diff(&cc, &cc.diff(k)).map_linear(|_| Lin::zero()));
                    let mut s2 = cc.diff(k).map_linear(|t| if cc.coinvariant { cc.core.b_scx(t) } else { cc.core.b_x(t) });
                    s2.add_lin(&s);
                    (!bb.is_zero() || !s2.is_zero()).then(|| format!("{}", cc.label(k)))
                });
                assert!(r.passed(), "{}: {:?}", c.name(), r.failures);
            }
        }
    }
}

#[test]
fn homotopy_and_tau() {
    for p in inputs() {
        let core = XCore::new(Arc::new(p)).unwrap();
        for n in 1..=3 {
            let c = XComplex::x(core.clone(), n);
            let r = check_on_basis("hb+bh=id-tau", &c, &win(), |k| {
                let mut lhs = c.diff(k).map_linear(|t| core.h(t));
                lhs.add_lin(&core.h(k).map_linear(|t| c.diff(t)));
                let mut rhs = Lin::single(k.clone());
                rhs.sub_lin(&core.tau(k));
                let mut tn = Lin::single(k.clone());
                for _ in 0..n {
                    tn = core.tau_lin(&tn);
                }
                (lhs != rhs || tn != Lin::single(k.clone())).then(|| format!("{}: {} vs {}", c.label(k), core.tc.element_label(&lhs), core.tc.element_label(&rhs)))
            });
            assert!(r.passed(), "{}: {:?}", c.name(), r.failures);
        }
    }
}

#[test]
fn pi_intertwines_b() {
    for p in inputs() {
        let core = XCore::new(Arc::new(p)).unwrap();
        for n in 0..=3 {
            let c = XComplex::x(core.clone(), n);
            let r = check_on_basis("pi B = (n+1) B pi", &c, &win(), |k| {
                let lhs = core.b_x(k).map_linear(|t| core.pi(t));
                let rhs = core.pi(k).map_linear(|t| core.b_scx(t)).scaled(&rat(n as i64 + 1));
                (lhs != rhs).then(|| c.label(k))
            });
            assert!(r.passed(), "{:?}", r.failures);
            let cc = core.clone();
            let f = map_fn(move |k| cc.pi(k));
            assert!(check_chain_map("pi", &c, &XComplex::scx(core.clone(), n), &f, 0, &win()).passed());
            if n >= 1 {
                let cc = core.clone();
                let f = map_fn(move |k| cc.pi_nat(k));
                let r = check_chain_map("pi_nat", &c, &XComplex::x(core.clone(), 1), &f, 0, &win());
                assert!(r.passed(), "{:?}", r.failures);
                let r = check_on_basis("pi_nat B = B pi_nat", &c, &win(), |k| {
                    let lhs = core.b_x(k).map_linear(|t| core.pi_nat(t));
                    let rhs = core.pi_nat(k).map_linear(|t| core.b_on_x(t));
                    (lhs != rhs).then(|| format!("{}: {} vs {}", c.label(k), core.tc.element_label(&lhs), core.tc.element_label(&rhs)))
                });
                assert!(r.passed(), "n={n} {:?}", r.failures);
            }
        }
    }
}

#[test]
fn ch_to_x_chain_map() {
    for p in inputs() {
        let p = Arc::new(p);
        let core = XCore::new(p.clone()).unwrap();
        for normalized in [true, false] {
            let hh = HochschildComplex::new(p.clone(), normalized);
            let cc = core.clone();
            let f = map_fn(move |k| cc.ch_to_x(k));
            let r = check_chain_map("CH->X", &hh, &XComplex::x(core.clone(), 1), &f, 0, &Window::new((-1, 5), (0, 3)));
            assert!(r.passed(), "{}: {:?}", p.name, r.failures);
        }
    }
}
