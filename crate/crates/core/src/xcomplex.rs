//! The complexes `X^(n)(A) = (S(A)^{⊗_A n})_♮` and their coinvariants
//! `𝒳^(n)(A)`, the operators between them, and the Hodge-graded mixed
//! complex `(𝒳^•, b, B)` whose product total is `𝒳^tot`.
//!
//! A key of `X^(n)` for `n ≥ 1` is the closed word `m_1 a_1 … m_n a_n`
//! starting with a bimodule letter; the first bimodule letter of a word is
//! its first tensor factor. A key of `𝒳^(n)` is the least rotation among
//! cuts just before a bimodule letter. For `n = 0` both are cyclic words.

use std::sync::Arc;

use crate::bimodule::TensorCategory;
use crate::complex::{Complex, HodgeGraded};
use crate::dgcat::{canonical_rotation, DgPresentation, Letter, Word};
use crate::error::{Error, Result};
use crate::hochschild::HChain;
use crate::lin::Lin;

fn is_s(l: &Letter) -> bool {
    !matches!(l, Letter::Gen(_))
}

pub struct XCore {
    pub tc: TensorCategory,
}

impl XCore {
    pub fn new(pres: Arc<DgPresentation>) -> Result<Arc<Self>> {
        if !pres.is_semi_free() {
            return Err(Error::Unsupported(format!(
                "X-complexes need a semi-free presentation; {} is finite-dimensional",
                pres.name
            )));
        }
        Ok(Arc::new(XCore { tc: TensorCategory::new(pres)? }))
    }

    pub fn pres(&self) -> &DgPresentation {
        &self.tc.pres
    }

    pub fn hodge(&self, w: &Word) -> u32 {
        w.count_s_letters() as u32
    }

    fn degrees(&self, w: &Word) -> Vec<i64> {
        w.letters.iter().map(|&l| self.pres().letter_degree(l)).collect()
    }

    fn rotate_at(&self, w: &Word, k: usize) -> (Word, i64) {
        let (letters, sign, _) = canonical_rotation(&w.letters, &self.degrees(w), |i| i == k).expect("single cut");
        let tgt = self.pres().letter_info(letters[0]).tgt;
        (Word { letters, tgt, src: tgt }, sign)
    }

    /// Representative in `X^(n)`: cut before the first bimodule letter.
    pub fn x_canonical(&self, w: &Word) -> Option<(Word, i64)> {
        match w.letters.iter().position(is_s) {
            None => self.pres().cyclic_canonical(w, false),
            Some(k) => Some(self.rotate_at(w, k)),
        }
    }

    /// Representative in `𝒳^(n)`, or `None` when the class vanishes.
    pub fn scx_canonical(&self, w: &Word) -> Option<(Word, i64)> {
        self.pres().cyclic_canonical(w, true)
    }

    pub fn x_project(&self, x: &Lin<Word>) -> Lin<Word> {
        x.map_linear(|w| match self.x_canonical(w) {
            Some((c, s)) => Lin::signed(c, s),
            None => Lin::zero(),
        })
    }

    pub fn scx_project(&self, x: &Lin<Word>) -> Lin<Word> {
        x.map_linear(|w| match self.scx_canonical(w) {
            Some((c, s)) => Lin::signed(c, s),
            None => Lin::zero(),
        })
    }

    fn closed_words(&self, n: u32, d: i64, w: u32) -> Vec<Word> {
        let mut out = Vec::new();
        if d < 0 {
            return out;
        }
        for x in self.pres().objects.ids() {
            if n == 0 {
                out.extend(self.tc.enumerate(x, x, d, w, 0));
            } else {
                out.extend(self.tc.enumerate_s_first(x, d, w, n));
            }
        }
        out.sort();
        out
    }

    pub fn x_basis(&self, n: u32, d: i64, w: u32) -> Vec<Word> {
        let words = self.closed_words(n, d, w);
        if n > 0 {
            return words;
        }
        words.into_iter().filter(|k| matches!(self.x_canonical(k), Some((c, _)) if &c == k)).collect()
    }

    pub fn scx_basis(&self, n: u32, d: i64, w: u32) -> Vec<Word> {
        self.closed_words(n, d, w)
            .into_iter()
            .filter(|k| matches!(self.scx_canonical(k), Some((c, _)) if &c == k))
            .collect()
    }

    pub fn x_diff(&self, w: &Word) -> Lin<Word> {
        self.x_project(&self.tc.d(w))
    }

    pub fn scx_diff(&self, w: &Word) -> Lin<Word> {
        self.scx_project(&self.tc.d(w))
    }

    /// The split `b = b0 + b1` by the change in the number of `E` letters.
    pub fn split_diff(&self, w: &Word, scx: bool) -> (Lin<Word>, Lin<Word>) {
        let e = w.count_e_letters();
        let full = if scx { self.scx_diff(w) } else { self.x_diff(w) };
        let b0 = full.filter(|k| k.count_e_letters() == e);
        let b1 = full.filter(|k| k.count_e_letters() == e + 1);
        (b0, b1)
    }

    /// The rotation `τ` on `X^(n)`: moves the last block `m_n a_n` to the front.
    pub fn tau(&self, w: &Word) -> Lin<Word> {
        match w.letters.iter().rposition(is_s) {
            None | Some(0) => Lin::single(w.clone()),
            Some(k) => {
                let (r, s) = self.rotate_at(w, k);
                Lin::signed(r, s)
            }
        }
    }

    pub fn tau_lin(&self, x: &Lin<Word>) -> Lin<Word> {
        x.map_linear(|w| self.tau(w))
    }

    /// `ρ = Σ_{k<n} τ^k`, from a representative in `𝒳^(n)` to `X^(n)`.
    pub fn rho(&self, w: &Word) -> Lin<Word> {
        let n = self.hodge(w).max(1);
        let mut out = Lin::zero();
        let mut cur = self.x_project(&Lin::single(w.clone()));
        for _ in 0..n {
            out.add_lin(&cur);
            cur = self.tau_lin(&cur);
        }
        out
    }

    /// The projection `π: X^(n) → 𝒳^(n)`.
    pub fn pi(&self, w: &Word) -> Lin<Word> {
        self.scx_project(&Lin::single(w.clone()))
    }

    /// `B: 𝒳^(n) → 𝒳^(n+1)` induced by `sD̃`.
    pub fn b_scx(&self, w: &Word) -> Lin<Word> {
        self.scx_project(&self.tc.sd(w))
    }

    /// `B = ρ∘B∘π: X^(n) → X^(n+1)`.
    pub fn b_x(&self, w: &Word) -> Lin<Word> {
        self.pi(w).map_linear(|k| self.b_scx(k)).map_linear(|k| self.rho(k))
    }

    /// `π_♮: X^(n) → X`: kills words with `sD` beyond the first factor and
    /// replaces the remaining `E` letters by identities.
    pub fn pi_nat(&self, w: &Word) -> Lin<Word> {
        let Some(first) = w.letters.iter().position(is_s) else {
            return Lin::single(w.clone());
        };
        let mut letters = Vec::with_capacity(w.letters.len());
        for (i, l) in w.letters.iter().enumerate() {
            match l {
                Letter::SD(_) if i > first => return Lin::zero(),
                Letter::E(_) if i > first => {}
                _ => letters.push(*l),
            }
        }
        Lin::single(Word { letters, tgt: w.tgt, src: w.src })
    }

    /// The homotopy `h` with `hb + bh = id − τ` on `X^(n)`: zero unless the
    /// last factor is some `E_x`, and `ξ_x·E_x ↦ sD̃(ξ_x)` otherwise.
    pub fn h(&self, w: &Word) -> Lin<Word> {
        let Some(k) = w.letters.iter().rposition(is_s) else {
            return Lin::zero();
        };
        let Letter::E(x) = w.letters[k] else {
            return Lin::zero();
        };
        // w = P·E_x·a_n ~ (−1)^{|P E_x||a_n|} a_n·P·E_x
        let degs = self.degrees(w);
        let head: i64 = degs[..=k].iter().sum();
        let tail: i64 = degs[k + 1..].iter().sum();
        let mut letters = Vec::with_capacity(w.letters.len() - 1);
        letters.extend_from_slice(&w.letters[k + 1..]);
        letters.extend_from_slice(&w.letters[..k]);
        let xi = Word { letters, tgt: x, src: x };
        let sign = crate::lin::koszul(head * tail);
        self.x_project(&self.tc.sd(&xi)).scaled(&crate::linalg::rat(sign))
    }

    /// `C^H → X`: `a0 ↦ E·a0`, `a0[a1] ↦ a0·sD̃(a1)`, longer chains `↦ 0`.
    pub fn ch_to_x(&self, c: &HChain) -> Lin<Word> {
        match c.0.len() {
            1 => {
                let a0 = &c.0[0];
                let mut letters = vec![Letter::E(a0.tgt)];
                letters.extend_from_slice(&a0.letters);
                self.x_project(&Lin::single(Word { letters, tgt: a0.tgt, src: a0.src }))
            }
            2 => {
                let (a0, a1) = (&c.0[0], &c.0[1]);
                let sd = self.tc.sd(a1).map_linear(|v| Lin::single(a0.concat(v).expect("composable chain")));
                self.x_project(&sd)
            }
            _ => Lin::zero(),
        }
    }

    /// `X → A_♮`: `E·a ↦ [a]`, `sDf·a ↦ 0`.
    pub fn x_to_nat(&self, w: &Word) -> Lin<Word> {
        match w.letters.first() {
            Some(Letter::E(_)) => {
                let rest = Word { letters: w.letters[1..].to_vec(), tgt: w.tgt, src: w.src };
                self.x_project(&Lin::single(rest))
            }
            _ => Lin::zero(),
        }
    }

    /// `B̄: A_♮ → X`, `f ↦ sDf`.
    pub fn bbar(&self, w: &Word) -> Lin<Word> {
        self.x_project(&self.tc.sd(w))
    }

    /// `B = B̄ ∘ (X ↠ A_♮)` on `X`.
    pub fn b_on_x(&self, w: &Word) -> Lin<Word> {
        self.x_to_nat(w).map_linear(|k| self.bbar(k))
    }

    pub fn label(&self, w: &Word) -> String {
        self.pres().word_label(w)
    }

    /// Upper bound on `n` for a key of weight `w` with `|k| − 2n = d`.
    pub fn max_hodge(&self, d: i64, w: u32) -> u32 {
        let top = self.pres().max_degree_at_weight(w) + w as i64 - d;
        if top < 0 {
            0
        } else {
            (top / 2) as u32
        }
    }
}

/// `X^(n)(A)` (or `𝒳^(n)(A)` with `coinvariant`) as a complex.
#[derive(Clone)]
pub struct XComplex {
    pub core: Arc<XCore>,
    pub n: u32,
    pub coinvariant: bool,
}

impl XComplex {
    pub fn x(core: Arc<XCore>, n: u32) -> Self {
        XComplex { core, n, coinvariant: false }
    }

    pub fn scx(core: Arc<XCore>, n: u32) -> Self {
        XComplex { core, n, coinvariant: true }
    }
}

impl Complex for XComplex {
    type Key = Word;

    fn name(&self) -> String {
        let tag = if self.coinvariant { "scX" } else { "X" };
        format!("{tag}^({})({})", self.n, self.core.pres().name)
    }

    fn basis(&self, d: i64, w: u32) -> Vec<Word> {
        if self.coinvariant {
            self.core.scx_basis(self.n, d, w)
        } else {
            self.core.x_basis(self.n, d, w)
        }
    }

    fn diff(&self, k: &Word) -> Lin<Word> {
        if self.coinvariant {
            self.core.scx_diff(k)
        } else {
            self.core.x_diff(k)
        }
    }

    fn degree(&self, k: &Word) -> i64 {
        self.core.tc.degree(k)
    }

    fn weight(&self, k: &Word) -> u32 {
        self.core.tc.weight(k)
    }

    fn label(&self, k: &Word) -> String {
        self.core.label(k)
    }
}

/// The Hodge-graded mixed complex `(𝒳^•, b, B)`, or `(X^•, b, B)` when
/// `coinvariant` is false.
#[derive(Clone)]
pub struct XMixed {
    pub core: Arc<XCore>,
    pub coinvariant: bool,
}

impl HodgeGraded for XMixed {
    type Key = Word;

    fn name(&self) -> String {
        let tag = if self.coinvariant { "scX" } else { "X" };
        format!("{tag}^*({})", self.core.pres().name)
    }

    fn basis_n(&self, n: u32, d: i64, w: u32) -> Vec<Word> {
        if self.coinvariant {
            self.core.scx_basis(n, d, w)
        } else {
            self.core.x_basis(n, d, w)
        }
    }

    fn diff(&self, k: &Word) -> Lin<Word> {
        if self.coinvariant {
            self.core.scx_diff(k)
        } else {
            self.core.x_diff(k)
        }
    }

    fn connes(&self, k: &Word) -> Lin<Word> {
        if self.coinvariant {
            self.core.b_scx(k)
        } else {
            self.core.b_x(k)
        }
    }

    fn hodge(&self, k: &Word) -> u32 {
        self.core.hodge(k)
    }

    fn degree(&self, k: &Word) -> i64 {
        self.core.tc.degree(k)
    }

    fn weight(&self, k: &Word) -> u32 {
        self.core.tc.weight(k)
    }

    fn label(&self, k: &Word) -> String {
        self.core.label(k)
    }

    fn max_hodge(&self, d: i64, w: u32) -> u32 {
        self.core.max_hodge(d, w)
    }
}
