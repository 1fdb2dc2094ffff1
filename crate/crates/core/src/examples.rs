//! The curated presentations used throughout the tests and the CLI.

use std::collections::BTreeMap;

use crate::dgcat::{DgPresentation, FiniteDimData, GeneratorDecl, Letter, ObjectSet, Word};
use crate::lin::Lin;

fn point() -> ObjectSet {
    ObjectSet::new(vec!["pt".to_string()]).expect("one object")
}

fn gen(name: &str, degree: i64, weight: u32) -> GeneratorDecl {
    GeneratorDecl { name: name.into(), src: 0, tgt: 0, degree, weight, adjoined: false }
}

fn word(letters: &[u32]) -> Word {
    Word { letters: letters.iter().map(|&i| Letter::Gen(i)).collect(), tgt: 0, src: 0 }
}

/// `k𝒪` on a single object.
pub fn unit() -> DgPresentation {
    DgPresentation::unit(point())
}

/// `k⟨x⟩` with `x` in degree 0, weight 1.
pub fn free_x() -> DgPresentation {
    let mut p = DgPresentation::semi_free("k<x>", point(), vec![gen("x", 0, 1)], vec![Lin::zero()]);
    p.cofibrant_asserted = false;
    p
}

/// `k⟨x, y; dy = x²⟩`, the semi-free resolution of the dual numbers.
pub fn dual_resolution() -> DgPresentation {
    DgPresentation::semi_free(
        "k<x,y;dy=x^2>",
        point(),
        vec![gen("x", 0, 1), gen("y", 1, 2)],
        vec![Lin::zero(), Lin::single(word(&[0, 0]))],
    )
}

/// The dual numbers `k[ε]/ε²` with `ε` in degree 0, weight 1.
pub fn dual_numbers() -> DgPresentation {
    DgPresentation::finite_dim(
        "k[e]/e^2",
        point(),
        FiniteDimData { basis: vec![gen("e", 0, 1)], products: BTreeMap::new(), differential: vec![Lin::zero()] },
    )
}
