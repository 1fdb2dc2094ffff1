//! The bimodule layer of a semi-free presentation: `Ω¹(A)`, the free
//! bimodule on `{E_x}`, the map `α`, the short resolution `S(A)`, the bar
//! columns `R_n(A)` and the tensor category `T_A(S(A))` with its derivation
//! `sD̃`.
//!
//! `T_A(S(A))` is the free graded category on the letters `Gen(g)`, `SD(g)`
//! and `E(x)`, so its elements are combinations of [`Word`]s. The letter
//! `SD(g)` stands for `sDg`; in `Ω¹(A)` the same letter stands for `Dg`
//! (degree `|g|`). The differential is
//! `d(sDg) = g·E_x − E_y·g − sD̃(dg)` for `g: x → y`, i.e. the cone
//! convention `d(sω) = −s(dω) + α(ω)`.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::complex::Complex;
use crate::dgcat::{apply_derivation, enumerate_words, DgPresentation, Letter, LetterInfo, ObjId, Word, WordTable};
use crate::error::{Error, Result};
use crate::lin::{koszul, Lin};
use crate::linalg::{rank, Rational};
use crate::complex::key_matrix;

#[derive(Clone)]
pub struct TensorCategory {
    pub pres: Arc<DgPresentation>,
    alphabet: Vec<LetterInfo>,
}

impl TensorCategory {
    pub fn new(pres: Arc<DgPresentation>) -> Result<Self> {
        if !pres.is_semi_free() {
            return Err(Error::NotSemiFree);
        }
        let mut alphabet = Vec::new();
        let n = pres.letters_decl().len() as u32;
        for i in 0..n {
            alphabet.push(pres.letter_info(Letter::Gen(i)));
        }
        for i in 0..n {
            alphabet.push(pres.letter_info(Letter::SD(i)));
        }
        for x in pres.objects.ids() {
            alphabet.push(pres.letter_info(Letter::E(x)));
        }
        Ok(TensorCategory { pres, alphabet })
    }

    pub fn alphabet(&self) -> &[LetterInfo] {
        &self.alphabet
    }

    pub fn degree(&self, w: &Word) -> i64 {
        self.pres.word_degree(w)
    }

    pub fn weight(&self, w: &Word) -> u32 {
        self.pres.word_weight(w)
    }

    pub fn label(&self, w: &Word) -> String {
        self.pres.word_label(w)
    }

    pub fn element_label(&self, x: &Lin<Word>) -> String {
        self.pres.element_label(x)
    }

    fn letter_word(&self, l: Letter) -> Word {
        self.pres.letter(l)
    }

    /// `g·E_x − E_y·g` for `g: x → y` (the image of `Dg` under `α`).
    pub fn alpha_letter(&self, g: u32) -> Lin<Word> {
        let info = self.pres.letter_info(Letter::Gen(g));
        let mut out = Lin::zero();
        out.add_signed(Word { letters: vec![Letter::Gen(g), Letter::E(info.src)], tgt: info.tgt, src: info.src }, 1);
        out.add_signed(Word { letters: vec![Letter::E(info.tgt), Letter::Gen(g)], tgt: info.tgt, src: info.src }, -1);
        out
    }

    fn d_letter(&self, l: Letter) -> Lin<Word> {
        match l {
            Letter::Gen(_) => self.pres.differential_word(&self.letter_word(l)),
            Letter::SD(g) => {
                let mut out = self.alpha_letter(g);
                let dg = self.pres.differential_word(&self.letter_word(Letter::Gen(g)));
                out.sub_lin(&self.sd_elem(&dg));
                out
            }
            Letter::E(_) => Lin::zero(),
        }
    }

    /// The intrinsic differential of `T_A(S(A))`.
    pub fn d(&self, w: &Word) -> Lin<Word> {
        apply_derivation(&self.pres, w, 1, |l| self.d_letter(l))
    }

    pub fn d_elem(&self, x: &Lin<Word>) -> Lin<Word> {
        x.map_linear(|w| self.d(w))
    }

    /// The degree `+1` derivation `sD̃`: `g ↦ sDg`, `sDg ↦ 0`, `E_x ↦ 0`.
    pub fn sd(&self, w: &Word) -> Lin<Word> {
        apply_derivation(&self.pres, w, 1, |l| match l {
            Letter::Gen(g) => Lin::single(self.letter_word(Letter::SD(g))),
            _ => Lin::zero(),
        })
    }

    pub fn sd_elem(&self, x: &Lin<Word>) -> Lin<Word> {
        x.map_linear(|w| self.sd(w))
    }

    /// `ξ·E_x − E_y·ξ` for `ξ: x → y`.
    pub fn commutator_e(&self, w: &Word) -> Lin<Word> {
        let mut right = w.letters.clone();
        right.push(Letter::E(w.src));
        let mut left = vec![Letter::E(w.tgt)];
        left.extend_from_slice(&w.letters);
        let mut out = Lin::zero();
        out.add_signed(Word { letters: right, tgt: w.tgt, src: w.src }, 1);
        out.add_signed(Word { letters: left, tgt: w.tgt, src: w.src }, -1);
        out
    }

    /// `(sD̃∘d + d∘sD̃)(ξ)`, checked against `ξ·E − E·ξ`.
    pub fn sd_commutator(&self, x: &Lin<Word>) -> Result<Lin<Word>> {
        let mut lhs = self.sd_elem(&self.d_elem(x));
        lhs.add_lin(&self.d_elem(&self.sd_elem(x)));
        let rhs = x.map_linear(|w| self.commutator_e(w));
        if lhs != rhs {
            return Err(Error::IdentityViolated(format!(
                "[sD,d]({}) = {} but [ξ,E] = {}",
                self.element_label(x),
                self.element_label(&lhs),
                self.element_label(&rhs)
            )));
        }
        Ok(lhs)
    }

    /// Words `x → y` of `T_A(S(A))` in bidegree `(d, w)` with `n` bimodule
    /// letters (`SD` or `E`).
    pub fn enumerate(&self, x: ObjId, y: ObjId, d: i64, w: u32, n: u32) -> Vec<Word> {
        enumerate_words(&self.alphabet, y, Some(x), d, w, Some(n), false)
    }

    /// Closed words at `x` with `n ≥ 1` bimodule letters whose first letter
    /// is a bimodule letter.
    pub fn enumerate_s_first(&self, x: ObjId, d: i64, w: u32, n: u32) -> Vec<Word> {
        enumerate_words(&self.alphabet, x, Some(x), d, w, Some(n), true)
    }

    /// The resolution map `π_S: S(A) → A`: `E_x ↦ 1_x`, `sDf ↦ 0`, on words
    /// with exactly one bimodule letter.
    pub fn pi_s(&self, w: &Word) -> Lin<Word> {
        if w.letters.iter().any(|l| matches!(l, Letter::SD(_))) {
            return Lin::zero();
        }
        let letters: Vec<Letter> = w.letters.iter().copied().filter(|l| matches!(l, Letter::Gen(_))).collect();
        Lin::single(Word { letters, tgt: w.tgt, src: w.src })
    }

    // -- Ω¹(A) -------------------------------------------------------------

    /// Basis of `Ω¹(A)(x, y)` in bidegree `(d, w)`: words `f·Dg·h`.
    pub fn omega1_basis(&self, x: ObjId, y: ObjId, d: i64, w: u32) -> Vec<Word> {
        // Dg has degree |g|, one less than the letter SD(g).
        let alpha: Vec<LetterInfo> = self.alphabet.iter().copied().filter(|l| !matches!(l.letter, Letter::E(_))).collect();
        enumerate_words(&alpha, y, Some(x), d + 1, w, Some(1), false)
    }

    /// The universal derivation `D: A → Ω¹(A)`, `D(fg) = f·Dg + Df·g`.
    pub fn omega_d(&self, f: &Lin<Word>) -> Lin<Word> {
        f.map_linear(|w| {
            apply_derivation(&self.pres, w, 0, |l| match l {
                Letter::Gen(g) => Lin::single(self.letter_word(Letter::SD(g))),
                _ => Lin::zero(),
            })
        })
    }

    /// `α: Ω¹(A) → A ⊗_𝒪 A`, `f·Dg·h ↦ f·(g·E − E·g)·h`.
    pub fn alpha(&self, omega: &Lin<Word>) -> Lin<Word> {
        omega.map_linear(|w| {
            apply_derivation(&self.pres, w, 0, |l| match l {
                Letter::SD(g) => self.alpha_letter(g),
                _ => Lin::zero(),
            })
        })
    }

    // -- bar columns R_n(A) ------------------------------------------------

    /// Basis of `R_n(A)(x, y) = A ⊗_𝒪 … ⊗_𝒪 A` (`n + 2` factors).
    pub fn bar_basis(table: &WordTable, n: usize, x: ObjId, y: ObjId, d: i64, w: u32) -> Vec<Vec<Word>> {
        let mut out = Vec::new();
        let mut stack = Vec::new();
        bar_dfs(table, n + 2, y, x, d, w as i64, &mut stack, &mut out);
        out.sort();
        out
    }
}

#[allow(clippy::too_many_arguments)]
fn bar_dfs(
    table: &WordTable,
    len: usize,
    current: ObjId,
    x: ObjId,
    d: i64,
    w: i64,
    stack: &mut Vec<Word>,
    out: &mut Vec<Vec<Word>>,
) {
    if stack.len() == len {
        if d == 0 && w == 0 && current == x {
            out.push(stack.clone());
        }
        return;
    }
    for (word, wd, ww) in table.with_tgt(current) {
        if *wd > d || (*ww as i64) > w {
            continue;
        }
        stack.push(word.clone());
        bar_dfs(table, len, word.src, x, d - wd, w - *ww as i64, stack, out);
        stack.pop();
    }
}

/// The `i`-th face map of the bar construction, multiplying factors `i, i+1`.
pub fn bar_face(pres: &DgPresentation, chain: &[Word], i: usize) -> Lin<Vec<Word>> {
    let prod = pres.mul_words(&chain[i], &chain[i + 1]).expect("composable chain");
    prod.map_linear(|p| {
        let mut v = Vec::with_capacity(chain.len() - 1);
        v.extend_from_slice(&chain[..i]);
        v.push(p.clone());
        v.extend_from_slice(&chain[i + 2..]);
        Lin::single(v)
    })
}

/// The simplicial differential `Σ (−1)^i d_i` on `R_n`.
pub fn bar_differential(pres: &DgPresentation, chain: &[Word]) -> Lin<Vec<Word>> {
    let mut out = Lin::zero();
    for i in 0..chain.len() - 1 {
        out.add_scaled(&bar_face(pres, chain, i), &Rational::from_integer(koszul(i as i64).into()));
    }
    out
}

/// The augmentation `m: R_0 → A`, `f ⊗ g ↦ f·g`.
pub fn augmentation(pres: &DgPresentation, chain: &[Word]) -> Lin<Word> {
    pres.mul_words(&chain[0], &chain[1]).expect("composable chain")
}

/// `dim Ω¹(A)(x, y)` in bidegree `(d, w)`, computed as `coker(R_2 → R_1)`.
/// Works for both kinds of presentation.
pub fn omega1_dim_via_bar(pres: &DgPresentation, x: ObjId, y: ObjId, d: i64, w: u32) -> Result<usize> {
    let table = WordTable::new(pres, w);
    let r1 = TensorCategory::bar_basis(&table, 1, x, y, d, w);
    let r2 = TensorCategory::bar_basis(&table, 2, x, y, d, w);
    let idx: BTreeMap<Vec<Word>, usize> = r1.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
    let m = key_matrix(&r2, &idx, |c| bar_differential(pres, c))?;
    Ok(r1.len() - rank(&m))
}

/// The hom complex `S(A)(x, y)` of the short resolution: words with exactly
/// one bimodule letter.
#[derive(Clone)]
pub struct ShortResolution {
    pub tc: TensorCategory,
    pub src: ObjId,
    pub tgt: ObjId,
}

impl Complex for ShortResolution {
    type Key = Word;
    fn name(&self) -> String {
        format!("S({})", self.tc.pres.name)
    }
    fn basis(&self, d: i64, w: u32) -> Vec<Word> {
        if d < 0 {
            return Vec::new();
        }
        self.tc.enumerate(self.src, self.tgt, d, w, 1)
    }
    fn diff(&self, k: &Word) -> Lin<Word> {
        self.tc.d(k)
    }
    fn degree(&self, k: &Word) -> i64 {
        self.tc.degree(k)
    }
    fn weight(&self, k: &Word) -> u32 {
        self.tc.weight(k)
    }
    fn label(&self, k: &Word) -> String {
        self.tc.label(k)
    }
}

/// Words `x → y` of `T_A(S(A))` with exactly `n` bimodule letters, over all
/// pairs of objects.
#[derive(Clone)]
pub struct TensorPiece {
    pub tc: TensorCategory,
    pub n: u32,
}

impl Complex for TensorPiece {
    type Key = Word;
    fn name(&self) -> String {
        format!("T^({})({})", self.n, self.tc.pres.name)
    }
    fn basis(&self, d: i64, w: u32) -> Vec<Word> {
        let mut out = Vec::new();
        if d < 0 {
            return out;
        }
        for x in self.tc.pres.objects.ids() {
            for y in self.tc.pres.objects.ids() {
                out.extend(self.tc.enumerate(x, y, d, w, self.n));
            }
        }
        out.sort();
        out
    }
    fn diff(&self, k: &Word) -> Lin<Word> {
        self.tc.d(k)
    }
    fn degree(&self, k: &Word) -> i64 {
        self.tc.degree(k)
    }
    fn weight(&self, k: &Word) -> u32 {
        self.tc.weight(k)
    }
    fn label(&self, k: &Word) -> String {
        self.tc.label(k)
    }
}
