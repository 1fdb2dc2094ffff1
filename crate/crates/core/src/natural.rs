//! Hom complexes `A(x, y)` and the naturalization `A_♮` as complexes.

use std::sync::Arc;

use crate::complex::Complex;
use crate::dgcat::{DgPresentation, NaturalizedSpace, ObjId, Word};
use crate::lin::Lin;

/// The complex `A(x, y)` of morphisms `x → y`.
#[derive(Clone)]
pub struct HomComplex {
    pub pres: Arc<DgPresentation>,
    pub src: ObjId,
    pub tgt: ObjId,
}

impl Complex for HomComplex {
    type Key = Word;
    fn name(&self) -> String {
        format!("{}({},{})", self.pres.name, self.pres.objects.name(self.src), self.pres.objects.name(self.tgt))
    }
    fn basis(&self, d: i64, w: u32) -> Vec<Word> {
        if d < 0 {
            return Vec::new();
        }
        self.pres.enumerate_basis(self.src, self.tgt, d, w)
    }
    fn diff(&self, k: &Word) -> Lin<Word> {
        self.pres.differential_word(k)
    }
    fn degree(&self, k: &Word) -> i64 {
        self.pres.word_degree(k)
    }
    fn weight(&self, k: &Word) -> u32 {
        self.pres.word_weight(k)
    }
    fn label(&self, k: &Word) -> String {
        self.pres.word_label(k)
    }
}

/// `A_♮` with the induced differential; keys are class representatives.
#[derive(Clone)]
pub struct NatComplex {
    pub space: Arc<NaturalizedSpace>,
}

impl NatComplex {
    pub fn new(pres: Arc<DgPresentation>) -> Self {
        NatComplex { space: Arc::new(NaturalizedSpace::new(pres)) }
    }

    pub fn pres(&self) -> &DgPresentation {
        self.space.presentation()
    }

    pub fn project(&self, w: &Word) -> Lin<Word> {
        self.space.project_word(w)
    }
}

impl Complex for NatComplex {
    type Key = Word;
    fn name(&self) -> String {
        format!("{}_nat", self.pres().name)
    }
    fn basis(&self, d: i64, w: u32) -> Vec<Word> {
        if d < 0 {
            return Vec::new();
        }
        self.space.basis(d, w)
    }
    fn diff(&self, k: &Word) -> Lin<Word> {
        self.space.differential(k)
    }
    fn degree(&self, k: &Word) -> i64 {
        self.pres().word_degree(k)
    }
    fn weight(&self, k: &Word) -> u32 {
        self.pres().word_weight(k)
    }
    fn label(&self, k: &Word) -> String {
        format!("[{}]", self.pres().word_label(k))
    }
}

/// `⊕_{x,y} A(x, y)`: all morphisms of the presentation.
#[derive(Clone)]
pub struct AllHoms {
    pub pres: Arc<DgPresentation>,
}

impl Complex for AllHoms {
    type Key = Word;
    fn name(&self) -> String {
        self.pres.name.clone()
    }
    fn basis(&self, d: i64, w: u32) -> Vec<Word> {
        let mut out = Vec::new();
        if d < 0 {
            return out;
        }
        for x in self.pres.objects.ids() {
            for y in self.pres.objects.ids() {
                out.extend(self.pres.enumerate_basis(x, y, d, w));
            }
        }
        out.sort();
        out
    }
    fn diff(&self, k: &Word) -> Lin<Word> {
        self.pres.differential_word(k)
    }
    fn degree(&self, k: &Word) -> i64 {
        self.pres.word_degree(k)
    }
    fn weight(&self, k: &Word) -> u32 {
        self.pres.word_weight(k)
    }
    fn label(&self, k: &Word) -> String {
        self.pres.word_label(k)
    }
}
