//! Presentations of small dg categories over ℚ with a fixed object set.
//!
//! Two kinds are supported. A semi-free presentation lists generating
//! morphisms with a differential; its morphism spaces have the composable
//! generator words as basis. A finite-dimensional presentation lists a basis
//! of the non-identity morphisms together with structure constants.
//!
//! Every morphism carries a homological degree and an Adams weight. All
//! generators have weight ≥ 1 (except the adjoined `t_x`), so each
//! `(degree, weight)` piece of every construction in this crate is finite.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::check::CheckReport;
use crate::error::{Error, Result};
use crate::lin::{koszul, Lin};
use crate::linalg::{QuotientSpace, Rational};

pub type ObjId = u32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObjectSet {
    names: Vec<String>,
}

impl ObjectSet {
    pub fn new(names: Vec<String>) -> Result<Self> {
        if names.is_empty() {
            return Err(Error::Validation("object set is empty".into()));
        }
        let uniq: BTreeSet<&String> = names.iter().collect();
        if uniq.len() != names.len() {
            return Err(Error::Validation("duplicate object names".into()));
        }
        Ok(ObjectSet { names })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, x: ObjId) -> &str {
        &self.names[x as usize]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn find(&self, name: &str) -> Option<ObjId> {
        self.names.iter().position(|n| n == name).map(|i| i as ObjId)
    }

    pub fn ids(&self) -> impl Iterator<Item = ObjId> {
        0..self.names.len() as ObjId
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorDecl {
    pub name: String,
    pub src: ObjId,
    pub tgt: ObjId,
    pub degree: i64,
    pub weight: u32,
    /// Set only for the `t_x` generators added by [`DgPresentation::adjoin_t`].
    pub adjoined: bool,
}

/// A letter of a generator word.
///
/// `Gen` refers to a generator (semi-free) or basis element (finite-dim).
/// `SD` and `E` only occur in the tensor category of the short resolution,
/// where `SD(i)` is the shifted differential `sDg_i` and `E(x)` the free
/// bimodule generator at `x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    Gen(u32),
    SD(u32),
    E(ObjId),
}

/// A composable word `l_1 · l_2 · … · l_k`, read as composition, so
/// `src(l_i) = tgt(l_{i+1})`. The empty word is the identity of `tgt = src`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    pub letters: Vec<Letter>,
    pub tgt: ObjId,
    pub src: ObjId,
}

impl Word {
    pub fn identity(x: ObjId) -> Word {
        Word { letters: Vec::new(), tgt: x, src: x }
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_closed(&self) -> bool {
        self.tgt == self.src
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Concatenation `self · other`, or `None` if not composable.
    pub fn concat(&self, other: &Word) -> Option<Word> {
        if self.src != other.tgt {
            return None;
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Some(Word { letters, tgt: self.tgt, src: other.src })
    }

    pub fn count_s_letters(&self) -> usize {
        self.letters.iter().filter(|l| !matches!(l, Letter::Gen(_))).count()
    }

    pub fn count_e_letters(&self) -> usize {
        self.letters.iter().filter(|l| matches!(l, Letter::E(_))).count()
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.letters
            .len()
            .cmp(&other.letters.len())
            .then_with(|| self.letters.cmp(&other.letters))
            .then_with(|| self.tgt.cmp(&other.tgt))
            .then_with(|| self.src.cmp(&other.src))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// A morphism: a rational combination of words sharing source and target.
pub type MorElement = Lin<Word>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteDimData {
    /// Non-identity basis elements; `Letter::Gen(i)` refers to entry `i`.
    pub basis: Vec<GeneratorDecl>,
    /// Products `b_i · b_j` (defined when `src(b_i) = tgt(b_j)`); absent means 0.
    pub products: BTreeMap<(u32, u32), Lin<u32>>,
    pub differential: Vec<Lin<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PresentationKind {
    SemiFree { generators: Vec<GeneratorDecl>, differential: Vec<MorElement> },
    FiniteDim(FiniteDimData),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DgPresentation {
    pub name: String,
    pub objects: ObjectSet,
    pub kind: PresentationKind,
    pub cofibrant_asserted: bool,
}

/// Source, target, degree and weight of a letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LetterInfo {
    pub letter: Letter,
    pub src: ObjId,
    pub tgt: ObjId,
    pub degree: i64,
    pub weight: u32,
}

impl LetterInfo {
    pub fn is_s(&self) -> bool {
        !matches!(self.letter, Letter::Gen(_))
    }
}

impl DgPresentation {
    /// `k𝒪`: the given objects and no generators.
    pub fn unit(objects: ObjectSet) -> Self {
        DgPresentation {
            name: "kO".into(),
            objects,
            kind: PresentationKind::SemiFree { generators: Vec::new(), differential: Vec::new() },
            cofibrant_asserted: true,
        }
    }

    pub fn semi_free(
        name: &str,
        objects: ObjectSet,
        generators: Vec<GeneratorDecl>,
        differential: Vec<MorElement>,
    ) -> Self {
        DgPresentation {
            name: name.into(),
            objects,
            kind: PresentationKind::SemiFree { generators, differential },
            cofibrant_asserted: false,
        }
    }

    pub fn finite_dim(name: &str, objects: ObjectSet, data: FiniteDimData) -> Self {
        DgPresentation {
            name: name.into(),
            objects,
            kind: PresentationKind::FiniteDim(data),
            cofibrant_asserted: false,
        }
    }

    /// The presentation `k𝒪` over the same objects.
    pub fn unit_of(&self) -> DgPresentation {
        DgPresentation::unit(self.objects.clone())
    }

    pub fn is_semi_free(&self) -> bool {
        matches!(self.kind, PresentationKind::SemiFree { .. })
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    /// Generators (semi-free) or non-identity basis elements (finite-dim).
    pub fn letters_decl(&self) -> &[GeneratorDecl] {
        match &self.kind {
            PresentationKind::SemiFree { generators, .. } => generators,
            PresentationKind::FiniteDim(d) => &d.basis,
        }
    }

    pub fn generator(&self, i: u32) -> &GeneratorDecl {
        &self.letters_decl()[i as usize]
    }

    pub fn find_generator(&self, name: &str) -> Option<u32> {
        self.letters_decl().iter().position(|g| g.name == name).map(|i| i as u32)
    }

    pub fn letter_info(&self, l: Letter) -> LetterInfo {
        match l {
            Letter::Gen(i) => {
                let g = self.generator(i);
                LetterInfo { letter: l, src: g.src, tgt: g.tgt, degree: g.degree, weight: g.weight }
            }
            Letter::SD(i) => {
                let g = self.generator(i);
                LetterInfo { letter: l, src: g.src, tgt: g.tgt, degree: g.degree + 1, weight: g.weight }
            }
            Letter::E(x) => LetterInfo { letter: l, src: x, tgt: x, degree: 0, weight: 0 },
        }
    }

    pub fn letter_degree(&self, l: Letter) -> i64 {
        self.letter_info(l).degree
    }

    pub fn word_degree(&self, w: &Word) -> i64 {
        w.letters.iter().map(|&l| self.letter_degree(l)).sum()
    }

    pub fn word_weight(&self, w: &Word) -> u32 {
        w.letters.iter().map(|&l| self.letter_info(l).weight).sum()
    }

    pub fn letter(&self, l: Letter) -> Word {
        let info = self.letter_info(l);
        Word { letters: vec![l], tgt: info.tgt, src: info.src }
    }

    pub fn word_label(&self, w: &Word) -> String {
        if w.letters.is_empty() {
            return format!("1_{}", self.objects.name(w.tgt));
        }
        w.letters
            .iter()
            .map(|l| match *l {
                Letter::Gen(i) => self.generator(i).name.clone(),
                Letter::SD(i) => format!("sD{}", self.generator(i).name),
                Letter::E(x) => format!("E_{}", self.objects.name(x)),
            })
            .collect::<Vec<_>>()
            .join("·")
    }

    pub fn element_label(&self, f: &MorElement) -> String {
        if f.is_zero() {
            return "0".into();
        }
        f.iter()
            .map(|(w, c)| format!("({})·{}", c, self.word_label(w)))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Product of two basis words, `a · b`.
    pub fn mul_words(&self, a: &Word, b: &Word) -> Result<Lin<Word>> {
        if a.src != b.tgt {
            return Err(Error::ObjectMismatch(format!(
                "{} · {}",
                self.word_label(a),
                self.word_label(b)
            )));
        }
        match &self.kind {
            PresentationKind::SemiFree { .. } => Ok(Lin::single(a.concat(b).expect("checked"))),
            PresentationKind::FiniteDim(data) => {
                if a.is_identity() {
                    return Ok(Lin::single(b.clone()));
                }
                if b.is_identity() {
                    return Ok(Lin::single(a.clone()));
                }
                if a.letters.len() > 1 || b.letters.len() > 1 {
                    return Err(Error::Validation("finite-dim basis words have length 1".into()));
                }
                let (Letter::Gen(i), Letter::Gen(j)) = (a.letters[0], b.letters[0]) else {
                    return Err(Error::Validation("finite-dim words use basis letters".into()));
                };
                Ok(match data.products.get(&(i, j)) {
                    Some(l) => l.map_linear(|&k| Lin::single(self.letter(Letter::Gen(k)))),
                    None => Lin::zero(),
                })
            }
        }
    }

    /// Bilinear composition `f ∘ g` (written `f · g`).
    pub fn compose(&self, f: &MorElement, g: &MorElement) -> Result<MorElement> {
        let mut out = Lin::zero();
        for (a, ca) in f.iter() {
            for (b, cb) in g.iter() {
                out.add_scaled(&self.mul_words(a, b)?, &(ca * cb));
            }
        }
        Ok(out)
    }

    fn generator_differential(&self, i: u32) -> Lin<Word> {
        match &self.kind {
            PresentationKind::SemiFree { differential, .. } => differential[i as usize].clone(),
            PresentationKind::FiniteDim(data) => {
                data.differential[i as usize].map_linear(|&k| Lin::single(self.letter(Letter::Gen(k))))
            }
        }
    }

    /// The differential on a basis word, extended by the graded Leibniz rule.
    pub fn differential_word(&self, w: &Word) -> Lin<Word> {
        match &self.kind {
            PresentationKind::SemiFree { .. } => apply_derivation(self, w, 1, |l| match l {
                Letter::Gen(i) => self.generator_differential(i),
                _ => Lin::zero(),
            }),
            PresentationKind::FiniteDim(_) => match w.letters.as_slice() {
                [] => Lin::zero(),
                [Letter::Gen(i)] => self.generator_differential(*i),
                _ => Lin::zero(),
            },
        }
    }

    pub fn differential(&self, f: &MorElement) -> MorElement {
        f.map_linear(|w| self.differential_word(w))
    }

    fn gen_alphabet(&self) -> Vec<LetterInfo> {
        (0..self.letters_decl().len() as u32).map(|i| self.letter_info(Letter::Gen(i))).collect()
    }

    /// The ordered basis of `A(x, y)` (morphisms `x → y`) in bidegree `(d, w)`.
    pub fn enumerate_basis(&self, x: ObjId, y: ObjId, d: i64, w: u32) -> Vec<Word> {
        match &self.kind {
            PresentationKind::SemiFree { .. } => {
                enumerate_words(&self.gen_alphabet(), y, Some(x), d, w, None, false)
            }
            PresentationKind::FiniteDim(data) => {
                let mut out = Vec::new();
                if x == y && d == 0 && w == 0 {
                    out.push(Word::identity(x));
                }
                for (i, b) in data.basis.iter().enumerate() {
                    if b.src == x && b.tgt == y && b.degree == d && b.weight == w {
                        out.push(self.letter(Letter::Gen(i as u32)));
                    }
                }
                out
            }
        }
    }

    /// All basis morphisms (any objects, any degree) of weight ≤ `max_weight`.
    pub fn basis_up_to_weight(&self, max_weight: u32) -> Vec<Word> {
        let mut out: Vec<Word> = self.objects.ids().map(Word::identity).collect();
        match &self.kind {
            PresentationKind::SemiFree { .. } => {
                let alpha = self.gen_alphabet();
                let max_deg = self.max_degree_at_weight(max_weight);
                for y in self.objects.ids() {
                    for w in 1..=max_weight {
                        for d in 0..=max_deg {
                            out.extend(enumerate_words(&alpha, y, None, d, w, None, false));
                        }
                    }
                }
            }
            PresentationKind::FiniteDim(data) => {
                for (i, b) in data.basis.iter().enumerate() {
                    if b.weight <= max_weight {
                        out.push(self.letter(Letter::Gen(i as u32)));
                    }
                }
            }
        }
        out.sort();
        out
    }

    /// Upper bound on the degree of any basis morphism of weight `w`.
    pub fn max_degree_at_weight(&self, w: u32) -> i64 {
        let ratio = self
            .letters_decl()
            .iter()
            .filter(|g| g.weight > 0)
            .map(|g| (g.degree.max(0) as f64) / (g.weight as f64))
            .fold(0.0, f64::max);
        (ratio * w as f64).floor() as i64
    }

    /// Whether each generator's differential only uses earlier generators.
    pub fn is_triangular(&self) -> bool {
        match &self.kind {
            PresentationKind::SemiFree { differential, .. } => differential.iter().enumerate().all(|(i, dg)| {
                dg.keys().all(|w| {
                    w.letters.iter().all(|l| matches!(l, Letter::Gen(j) if (*j as usize) < i))
                })
            }),
            PresentationKind::FiniteDim(_) => false,
        }
    }

    /// Cofibrancy as used by the theorem checks: a triangular semi-free
    /// presentation, or an explicit user assertion.
    pub fn is_cofibrant(&self) -> bool {
        self.is_triangular() || self.cofibrant_asserted
    }

    /// Whether cofibrancy rests only on the user's assertion.
    pub fn cofibrancy_unverified(&self) -> bool {
        self.cofibrant_asserted && !self.is_triangular()
    }

    /// `A⟨t_𝒪⟩`: adjoins `t_x: x → x` of degree 1, weight 0, with `d t_x = 1_x`.
    pub fn adjoin_t(&self) -> Result<DgPresentation> {
        let PresentationKind::SemiFree { generators, differential } = &self.kind else {
            return Err(Error::NotSemiFree);
        };
        let mut generators = generators.clone();
        let mut differential = differential.clone();
        for x in self.objects.ids() {
            generators.push(GeneratorDecl {
                name: format!("t_{}", self.objects.name(x)),
                src: x,
                tgt: x,
                degree: 1,
                weight: 0,
                adjoined: true,
            });
            differential.push(Lin::single(Word::identity(x)));
        }
        Ok(DgPresentation {
            name: format!("{}<t>", self.name),
            objects: self.objects.clone(),
            kind: PresentationKind::SemiFree { generators, differential },
            cofibrant_asserted: self.cofibrant_asserted,
        })
    }

    pub fn t_letter(&self, x: ObjId) -> Option<Letter> {
        self.letters_decl()
            .iter()
            .position(|g| g.adjoined && g.src == x)
            .map(|i| Letter::Gen(i as u32))
    }

    /// Checks gradings, weight-connectivity, `d² = 0` and (for finite-dim
    /// presentations) associativity and the Leibniz rule.
    pub fn validate(&self) -> CheckReport {
        let mut report = CheckReport::new("validate_presentation");
        let decls = self.letters_decl();
        for g in decls {
            if g.src as usize >= self.num_objects() || g.tgt as usize >= self.num_objects() {
                report.fail(format!("{}: unknown object", g.name));
                continue;
            }
            if g.adjoined {
                if g.degree != 1 || g.weight != 0 || g.src != g.tgt {
                    report.fail(format!("{}: adjoined t must be an endomorphism of degree 1, weight 0", g.name));
                }
                continue;
            }
            if g.degree < 0 {
                report.fail(format!("{}: negative degree {}", g.name, g.degree));
            }
            if g.weight == 0 {
                report.fail(format!("{}: weight 0 (only identities may have weight 0)", g.name));
            }
        }
        let names: BTreeSet<&str> = decls.iter().map(|g| g.name.as_str()).collect();
        if names.len() != decls.len() {
            report.fail("duplicate generator names".to_string());
        }
        if !report.passed() {
            return report;
        }
        match &self.kind {
            PresentationKind::SemiFree { differential, generators } => {
                if differential.len() != generators.len() {
                    report.fail("differential table has wrong length".to_string());
                    return report;
                }
                for (i, g) in generators.iter().enumerate() {
                    self.check_graded_value(&mut report, &g.name, g, &differential[i]);
                }
                if !report.passed() {
                    return report;
                }
                for (i, g) in generators.iter().enumerate() {
                    let dd = self.differential(&differential[i]);
                    if !dd.is_zero() {
                        report.fail(format!("d²({}) = {} ≠ 0", g.name, self.element_label(&dd)));
                    }
                }
                if self.is_triangular() {
                    report.note("triangular: accepted as cofibrant");
                }
            }
            PresentationKind::FiniteDim(data) => self.validate_finite_dim(&mut report, data),
        }
        report
    }

    fn check_graded_value(&self, report: &mut CheckReport, name: &str, g: &GeneratorDecl, value: &MorElement) {
        for w in value.keys() {
            if w.src != g.src || w.tgt != g.tgt {
                report.fail(format!("d({name}) term {} has wrong source/target", self.word_label(w)));
            } else if self.word_degree(w) != g.degree - 1 {
                report.fail(format!("d({name}) term {} does not lower degree by 1", self.word_label(w)));
            } else if self.word_weight(w) != g.weight {
                report.fail(format!("d({name}) term {} does not preserve weight", self.word_label(w)));
            }
        }
    }

    fn validate_finite_dim(&self, report: &mut CheckReport, data: &FiniteDimData) {
        let n = data.basis.len() as u32;
        if data.differential.len() != data.basis.len() {
            report.fail("differential table has wrong length".to_string());
            return;
        }
        for (&(i, j), prod) in &data.products {
            let (a, b) = (&data.basis[i as usize], &data.basis[j as usize]);
            if a.src != b.tgt {
                report.fail(format!("product {}·{} of non-composable elements", a.name, b.name));
                continue;
            }
            for &k in prod.keys() {
                let c = &data.basis[k as usize];
                if c.src != b.src || c.tgt != a.tgt || c.degree != a.degree + b.degree || c.weight != a.weight + b.weight {
                    report.fail(format!("product {}·{} has ill-graded term {}", a.name, b.name, c.name));
                }
            }
        }
        for i in 0..n {
            let g = &data.basis[i as usize];
            let dg = self.generator_differential(i);
            self.check_graded_value(report, &g.name, g, &dg);
        }
        if !report.passed() {
            return;
        }
        let elems: Vec<Word> = (0..n).map(|i| self.letter(Letter::Gen(i))).collect();
        for a in &elems {
            let dd = self.differential(&self.differential_word(a));
            if !dd.is_zero() {
                report.fail(format!("d²({}) ≠ 0", self.word_label(a)));
            }
        }
        for a in &elems {
            for b in &elems {
                if a.src != b.tgt {
                    continue;
                }
                let ab = self.mul_words(a, b).expect("composable");
                let lhs = self.differential(&ab);
                let mut rhs = self.compose(&self.differential_word(a), &Lin::single(b.clone())).expect("composable");
                let sign = koszul(self.word_degree(a));
                rhs.add_scaled(
                    &self.compose(&Lin::single(a.clone()), &self.differential_word(b)).expect("composable"),
                    &Rational::from_integer(sign.into()),
                );
                if lhs != rhs {
                    report.fail(format!("Leibniz fails on {}·{}", self.word_label(a), self.word_label(b)));
                }
                for c in &elems {
                    if b.src != c.tgt {
                        continue;
                    }
                    let left = self.compose(&ab, &Lin::single(c.clone())).expect("composable");
                    let bc = self.mul_words(b, c).expect("composable");
                    let right = self.compose(&Lin::single(a.clone()), &bc).expect("composable");
                    if left != right {
                        report.fail(format!(
                            "associativity fails on ({}·{})·{}",
                            self.word_label(a),
                            self.word_label(b),
                            self.word_label(c)
                        ));
                    }
                }
            }
        }
    }
}

/// All basis morphisms of weight ≤ a bound, indexed by target object.
#[derive(Clone, Debug)]
pub struct WordTable {
    pub entries: Vec<(Word, i64, u32)>,
    by_tgt: BTreeMap<ObjId, Vec<usize>>,
}

impl WordTable {
    pub fn new(pres: &DgPresentation, max_weight: u32) -> Self {
        let entries: Vec<(Word, i64, u32)> = pres
            .basis_up_to_weight(max_weight)
            .into_iter()
            .map(|w| {
                let (d, wt) = (pres.word_degree(&w), pres.word_weight(&w));
                (w, d, wt)
            })
            .collect();
        let mut by_tgt: BTreeMap<ObjId, Vec<usize>> = BTreeMap::new();
        for (i, (w, _, _)) in entries.iter().enumerate() {
            by_tgt.entry(w.tgt).or_default().push(i);
        }
        WordTable { entries, by_tgt }
    }

    /// Entries with the given target, in basis order.
    pub fn with_tgt(&self, y: ObjId) -> impl Iterator<Item = &(Word, i64, u32)> {
        self.by_tgt.get(&y).into_iter().flatten().map(move |&i| &self.entries[i])
    }

    pub fn iter(&self) -> impl Iterator<Item = &(Word, i64, u32)> {
        self.entries.iter()
    }
}

/// Applies the graded derivation of parity `parity` determined by its values
/// on letters: `δ(l_1…l_k) = Σ (−1)^{parity·|l_1…l_{i−1}|} l_1…δ(l_i)…l_k`.
pub fn apply_derivation(
    pres: &DgPresentation,
    w: &Word,
    parity: i64,
    mut on_letter: impl FnMut(Letter) -> Lin<Word>,
) -> Lin<Word> {
    let mut out = Lin::zero();
    let mut prefix_deg = 0i64;
    for (i, &l) in w.letters.iter().enumerate() {
        let img = on_letter(l);
        if !img.is_zero() {
            let sign = Rational::from_integer(koszul(parity * prefix_deg).into());
            for (v, c) in img.iter() {
                let mut letters = Vec::with_capacity(w.letters.len() + v.letters.len());
                letters.extend_from_slice(&w.letters[..i]);
                letters.extend_from_slice(&v.letters);
                letters.extend_from_slice(&w.letters[i + 1..]);
                out.add_term(Word { letters, tgt: w.tgt, src: w.src }, c * &sign);
            }
        }
        prefix_deg += pres.letter_degree(l);
    }
    out
}

/// Enumerates composable words over `alphabet` from `src` to `tgt` (any
/// source when `src` is `None`) with exact degree and weight. A given
/// `s_count` fixes the number of non-`Gen` letters. With `first_s`,
/// only words whose first letter is a non-`Gen` letter are produced.
pub fn enumerate_words(
    alphabet: &[LetterInfo],
    tgt: ObjId,
    src: Option<ObjId>,
    degree: i64,
    weight: u32,
    s_count: Option<u32>,
    first_s: bool,
) -> Vec<Word> {
    let mut out = Vec::new();
    let mut stack = Vec::new();
    let s_budget = s_count.map(|n| n as i64);
    dfs_words(alphabet, tgt, tgt, src, degree, weight as i64, s_budget, first_s, &mut stack, &mut out);
    out.sort();
    out
}

#[allow(clippy::too_many_arguments)]
fn dfs_words(
    alphabet: &[LetterInfo],
    word_tgt: ObjId,
    current: ObjId,
    src: Option<ObjId>,
    deg_rem: i64,
    wt_rem: i64,
    s_rem: Option<i64>,
    first_s: bool,
    stack: &mut Vec<Letter>,
    out: &mut Vec<Word>,
) {
    if deg_rem == 0 && wt_rem == 0 && s_rem.map_or(true, |s| s == 0) && src.map_or(true, |x| x == current) {
        let ok_first = !first_s || stack.first().is_some_and(|l| !matches!(l, Letter::Gen(_)));
        if ok_first || (stack.is_empty() && !first_s) {
            out.push(Word { letters: stack.clone(), tgt: word_tgt, src: current });
        }
    }
    for info in alphabet {
        if info.tgt != current {
            continue;
        }
        if stack.is_empty() && first_s && !info.is_s() {
            continue;
        }
        let nd = deg_rem - info.degree;
        let nw = wt_rem - info.weight as i64;
        if nd < 0 || nw < 0 {
            continue;
        }
        let ns = match s_rem {
            Some(s) => {
                let s2 = if info.is_s() { s - 1 } else { s };
                if s2 < 0 {
                    continue;
                }
                Some(s2)
            }
            None => None,
        };
        if info.degree == 0 && info.weight == 0 && ns.is_none() {
            // Would not terminate; presentations never contain such letters.
            continue;
        }
        stack.push(info.letter);
        dfs_words(alphabet, word_tgt, info.src, src, nd, nw, ns, first_s, stack, out);
        stack.pop();
    }
}

/// Lexicographically least rotation among the allowed cut positions, with
/// the Koszul sign of the rotation. Rotating by `k` sends `p·s ↦ (−1)^{|p||s|} s·p`
/// with `p = items[..k]`. Returns `None` when the class vanishes (two
/// rotations give the same sequence with opposite signs).
pub fn canonical_rotation<T: Ord + Clone>(
    items: &[T],
    degrees: &[i64],
    allowed: impl Fn(usize) -> bool,
) -> Option<(Vec<T>, i64, usize)> {
    let n = items.len();
    if n == 0 {
        return Some((Vec::new(), 1, 0));
    }
    let total: i64 = degrees.iter().sum();
    let mut best: Option<(Vec<T>, i64, usize)> = None;
    let mut prefix = 0i64;
    let mut vanishes = false;
    for k in 0..n {
        if k > 0 {
            prefix += degrees[k - 1];
        }
        if !allowed(k) {
            continue;
        }
        let sign = koszul(prefix * (total - prefix));
        let mut rot = Vec::with_capacity(n);
        rot.extend_from_slice(&items[k..]);
        rot.extend_from_slice(&items[..k]);
        match &best {
            None => best = Some((rot, sign, k)),
            Some((b, bs, _)) => match rot.cmp(b) {
                std::cmp::Ordering::Less => {
                    vanishes = false;
                    best = Some((rot, sign, k));
                }
                std::cmp::Ordering::Equal => {
                    if sign != *bs {
                        vanishes = true;
                    }
                }
                std::cmp::Ordering::Greater => {}
            },
        }
    }
    if vanishes {
        None
    } else {
        best
    }
}

impl DgPresentation {
    /// Rotation class of a closed word with all cuts allowed (cyclic words);
    /// `s_start` restricts cuts to positions just before a non-`Gen` letter.
    pub fn cyclic_canonical(&self, w: &Word, s_start: bool) -> Option<(Word, i64)> {
        debug_assert!(w.is_closed());
        if w.letters.is_empty() {
            return Some((w.clone(), 1));
        }
        let degs: Vec<i64> = w.letters.iter().map(|&l| self.letter_degree(l)).collect();
        let has_s = w.letters.iter().any(|l| !matches!(l, Letter::Gen(_)));
        let restrict = s_start && has_s;
        let (letters, sign, _) =
            canonical_rotation(&w.letters, &degs, |k| !restrict || !matches!(w.letters[k], Letter::Gen(_)))?;
        let first = self.letter_info(letters[0]);
        Some((Word { letters, tgt: first.tgt, src: first.tgt }, sign))
    }
}

/// The naturalization `A_♮ = ⊕_x A(x,x) / (graded commutators)`.
///
/// For semi-free presentations the basis is the set of nonvanishing cyclic
/// words; for finite-dimensional ones the quotient is computed by exact
/// elimination per `(degree, weight)` and cached.
pub struct NaturalizedSpace {
    pres: Arc<DgPresentation>,
    cache: Mutex<BTreeMap<(i64, u32), Arc<FdQuotient>>>,
}

struct FdQuotient {
    ambient: Vec<Word>,
    index: BTreeMap<Word, usize>,
    quotient: QuotientSpace,
}

impl NaturalizedSpace {
    pub fn new(pres: Arc<DgPresentation>) -> Self {
        NaturalizedSpace { pres, cache: Mutex::new(BTreeMap::new()) }
    }

    pub fn presentation(&self) -> &Arc<DgPresentation> {
        &self.pres
    }

    fn loops(&self, d: i64, w: u32) -> Vec<Word> {
        let mut v = Vec::new();
        for x in self.pres.objects.ids() {
            v.extend(self.pres.enumerate_basis(x, x, d, w));
        }
        v.sort();
        v
    }

    fn fd_quotient(&self, d: i64, w: u32) -> Arc<FdQuotient> {
        if let Some(q) = self.cache.lock().expect("cache").get(&(d, w)) {
            return q.clone();
        }
        let ambient = self.loops(d, w);
        let index: BTreeMap<Word, usize> = ambient.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        // Relations a·b − (−1)^{|a||b|} b·a with a: y → x, b: x → y.
        let elems = self.pres.basis_up_to_weight(w);
        let mut relations = Vec::new();
        for a in &elems {
            for b in &elems {
                if a.src != b.tgt || b.src != a.tgt {
                    continue;
                }
                let (da, db) = (self.pres.word_degree(a), self.pres.word_degree(b));
                if da + db != d || self.pres.word_weight(a) + self.pres.word_weight(b) != w {
                    continue;
                }
                let mut rel = self.pres.mul_words(a, b).expect("composable");
                rel.add_scaled(
                    &self.pres.mul_words(b, a).expect("composable"),
                    &Rational::from_integer((-koszul(da * db)).into()),
                );
                relations.push(rel.iter().map(|(k, c)| (index[k], c.clone())).collect::<Vec<_>>());
            }
        }
        let quotient = QuotientSpace::new(ambient.len(), &relations);
        let q = Arc::new(FdQuotient { ambient, index, quotient });
        self.cache.lock().expect("cache").entry((d, w)).or_insert(q).clone()
    }

    /// Class representatives of `A_♮` in bidegree `(d, w)`.
    pub fn basis(&self, d: i64, w: u32) -> Vec<Word> {
        if self.pres.is_semi_free() {
            self.loops(d, w)
                .into_iter()
                .filter(|word| matches!(self.pres.cyclic_canonical(word, false), Some((c, _)) if &c == word))
                .collect()
        } else {
            let q = self.fd_quotient(d, w);
            q.quotient.representatives().iter().map(|&i| q.ambient[i].clone()).collect()
        }
    }

    /// The quotient map on a closed basis word.
    pub fn project_word(&self, word: &Word) -> Lin<Word> {
        if !word.is_closed() {
            return Lin::zero();
        }
        if self.pres.is_semi_free() {
            match self.pres.cyclic_canonical(word, false) {
                Some((c, s)) => Lin::signed(c, s),
                None => Lin::zero(),
            }
        } else {
            let d = self.pres.word_degree(word);
            let w = self.pres.word_weight(word);
            let q = self.fd_quotient(d, w);
            let reps = q.quotient.representatives();
            q.quotient
                .project_basis(q.index[word])
                .into_iter()
                .map(|(k, c)| (q.ambient[reps[k]].clone(), c))
                .collect()
        }
    }

    pub fn project(&self, f: &MorElement) -> Lin<Word> {
        f.map_linear(|w| self.project_word(w))
    }

    /// The induced differential on a class representative.
    pub fn differential(&self, rep: &Word) -> Lin<Word> {
        self.project(&self.pres.differential_word(rep))
    }
}

impl fmt::Display for DgPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)
    }
}
