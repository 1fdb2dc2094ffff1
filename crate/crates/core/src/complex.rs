//! Chain complexes given by a basis per `(degree, weight)` and a differential
//! on basis keys, together with cones, totals of mixed complexes, restriction
//! to sub/quotient complexes, materialization to sparse matrices, and the
//! generic key-level checks.

use std::collections::BTreeMap;
use std::fmt::Debug;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::check::{CheckReport, DimCell};
use crate::error::{Error, Result};
use crate::lin::{koszul, Lin};
use crate::linalg::{homology_dim, induced_rank, Rational, SparseMatrix};

/// A rectangular window of degrees and weights (both inclusive).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Window {
    pub degrees: (i64, i64),
    pub weights: (u32, u32),
}

impl Window {
    pub fn new(degrees: (i64, i64), weights: (u32, u32)) -> Self {
        Window { degrees, weights }
    }

    pub fn cells(&self) -> Vec<(i64, u32)> {
        let mut v = Vec::new();
        for w in self.weights.0..=self.weights.1 {
            for d in self.degrees.0..=self.degrees.1 {
                v.push((d, w));
            }
        }
        v
    }

    /// Degrees where homology is computable from pieces inside the window.
    pub fn interior_degrees(&self) -> Result<std::ops::RangeInclusive<i64>> {
        let (lo, hi) = self.degrees;
        if hi - lo < 2 {
            return Err(Error::WindowTooSmall(format!(
                "degrees {lo}..{hi} have no interior degree"
            )));
        }
        Ok(lo + 1..=hi - 1)
    }

    pub fn interior_cells(&self) -> Result<Vec<(i64, u32)>> {
        let ds = self.interior_degrees()?;
        let mut v = Vec::new();
        for w in self.weights.0..=self.weights.1 {
            for d in ds.clone() {
                v.push((d, w));
            }
        }
        Ok(v)
    }

    pub fn shifted(&self, by: i64) -> Window {
        Window { degrees: (self.degrees.0 + by, self.degrees.1 + by), weights: self.weights }
    }
}

/// A chain complex of finite-dimensional `(degree, weight)` pieces, each
/// with an ordered basis of keys. The differential lowers degree by one and
/// preserves weight.
pub trait Complex: Send + Sync {
    type Key: Ord + Clone + Send + Sync + Debug;

    fn name(&self) -> String;
    fn basis(&self, d: i64, w: u32) -> Vec<Self::Key>;
    fn diff(&self, k: &Self::Key) -> Lin<Self::Key>;
    fn degree(&self, k: &Self::Key) -> i64;
    fn weight(&self, k: &Self::Key) -> u32;
    fn label(&self, k: &Self::Key) -> String {
        format!("{k:?}")
    }
}

/// A mixed complex: a second operator `B` of degree `+1` with `B² = 0` and
/// `Bb + bB = 0`.
pub trait Mixed: Complex {
    fn connes(&self, k: &Self::Key) -> Lin<Self::Key>;
    /// Inclusive range containing the degrees of all keys of weight `w`.
    fn degree_range(&self, w: u32) -> (i64, i64);
}

pub type MapFn<K1, K2> = Arc<dyn Fn(&K1) -> Lin<K2> + Send + Sync>;

pub fn map_fn<K1, K2: Ord>(f: impl Fn(&K1) -> Lin<K2> + Send + Sync + 'static) -> MapFn<K1, K2> {
    Arc::new(f)
}

pub fn apply_map<K1: Ord + Clone, K2: Ord + Clone>(f: &MapFn<K1, K2>, x: &Lin<K1>) -> Lin<K2> {
    x.map_linear(|k| f(k))
}

pub fn apply_diff<C: Complex>(c: &C, x: &Lin<C::Key>) -> Lin<C::Key> {
    x.map_linear(|k| c.diff(k))
}

impl<C: Complex> Complex for Arc<C> {
    type Key = C::Key;
    fn name(&self) -> String {
        (**self).name()
    }
    fn basis(&self, d: i64, w: u32) -> Vec<Self::Key> {
        (**self).basis(d, w)
    }
    fn diff(&self, k: &Self::Key) -> Lin<Self::Key> {
        (**self).diff(k)
    }
    fn degree(&self, k: &Self::Key) -> i64 {
        (**self).degree(k)
    }
    fn weight(&self, k: &Self::Key) -> u32 {
        (**self).weight(k)
    }
    fn label(&self, k: &Self::Key) -> String {
        (**self).label(k)
    }
}

impl<C: Mixed> Mixed for Arc<C> {
    fn connes(&self, k: &Self::Key) -> Lin<Self::Key> {
        (**self).connes(k)
    }
    fn degree_range(&self, w: u32) -> (i64, i64) {
        (**self).degree_range(w)
    }
}

// ---------------------------------------------------------------------------
// Cones

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ConeKey<T, S> {
    Tgt(T),
    Src(S),
}

/// `cone(f) = T ⊕ S[1]` with `d(y, c) = (dy + f(c), −dc)`.
pub struct Cone<S: Complex, T: Complex> {
    pub src: S,
    pub tgt: T,
    pub f: MapFn<S::Key, T::Key>,
    pub label: String,
}

impl<S: Complex, T: Complex> Cone<S, T> {
    pub fn new(src: S, tgt: T, f: MapFn<S::Key, T::Key>) -> Self {
        let label = format!("cone[{} -> {}]", src.name(), tgt.name());
        Cone { src, tgt, f, label }
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.label = name.into();
        self
    }
}

impl<S: Complex, T: Complex> Complex for Cone<S, T> {
    type Key = ConeKey<T::Key, S::Key>;

    fn name(&self) -> String {
        self.label.clone()
    }

    fn basis(&self, d: i64, w: u32) -> Vec<Self::Key> {
        let mut v: Vec<Self::Key> = self.tgt.basis(d, w).into_iter().map(ConeKey::Tgt).collect();
        v.extend(self.src.basis(d - 1, w).into_iter().map(ConeKey::Src));
        v
    }

    fn diff(&self, k: &Self::Key) -> Lin<Self::Key> {
        match k {
            ConeKey::Tgt(y) => self.tgt.diff(y).map_linear(|t| Lin::single(ConeKey::Tgt(t.clone()))),
            ConeKey::Src(c) => {
                let mut out = (self.f)(c).map_linear(|t| Lin::single(ConeKey::Tgt(t.clone())));
                out.sub_lin(&self.src.diff(c).map_linear(|s| Lin::single(ConeKey::Src(s.clone()))));
                out
            }
        }
    }

    fn degree(&self, k: &Self::Key) -> i64 {
        match k {
            ConeKey::Tgt(y) => self.tgt.degree(y),
            ConeKey::Src(c) => self.src.degree(c) + 1,
        }
    }

    fn weight(&self, k: &Self::Key) -> u32 {
        match k {
            ConeKey::Tgt(y) => self.tgt.weight(y),
            ConeKey::Src(c) => self.src.weight(c),
        }
    }

    fn label(&self, k: &Self::Key) -> String {
        match k {
            ConeKey::Tgt(y) => self.tgt.label(y),
            ConeKey::Src(c) => format!("s({})", self.src.label(c)),
        }
    }
}

/// The map of cones induced by a commuting square
/// `(φ_src, φ_tgt): (f: S → T) ⇒ (f': S' → T')`.
pub fn cone_map<TK, SK, TK2, SK2>(
    phi_src: MapFn<SK, SK2>,
    phi_tgt: MapFn<TK, TK2>,
) -> MapFn<ConeKey<TK, SK>, ConeKey<TK2, SK2>>
where
    TK: Ord + Clone + 'static,
    SK: Ord + Clone + 'static,
    TK2: Ord + Clone + Send + Sync + 'static,
    SK2: Ord + Clone + Send + Sync + 'static,
{
    Arc::new(move |k: &ConeKey<TK, SK>| match k {
        ConeKey::Tgt(y) => phi_tgt(y).map_linear(|t| Lin::single(ConeKey::Tgt(t.clone()))),
        ConeKey::Src(c) => phi_src(c).map_linear(|s| Lin::single(ConeKey::Src(s.clone()))),
    })
}

/// The inclusion of a complex into another whose keys contain its keys
/// (used for the unit inclusion `k𝒪 → A`).
pub fn key_inclusion<K: Ord + Clone + Send + Sync + 'static>() -> MapFn<K, K> {
    Arc::new(|k: &K| Lin::single(k.clone()))
}

// ---------------------------------------------------------------------------
// Restriction to a sub- or quotient complex

/// The keys satisfying `keep`, with the differential truncated to them.
/// This is a subcomplex when the kept span is `d`-stable and a quotient
/// complex when the discarded span is `d`-stable.
pub struct Restrict<C: Complex> {
    pub inner: C,
    pub keep: Arc<dyn Fn(&C::Key) -> bool + Send + Sync>,
    pub label: String,
}

impl<C: Complex> Restrict<C> {
    pub fn new(inner: C, label: impl Into<String>, keep: impl Fn(&C::Key) -> bool + Send + Sync + 'static) -> Self {
        Restrict { inner, keep: Arc::new(keep), label: label.into() }
    }
}

impl<C: Complex> Complex for Restrict<C> {
    type Key = C::Key;
    fn name(&self) -> String {
        self.label.clone()
    }
    fn basis(&self, d: i64, w: u32) -> Vec<Self::Key> {
        self.inner.basis(d, w).into_iter().filter(|k| (self.keep)(k)).collect()
    }
    fn diff(&self, k: &Self::Key) -> Lin<Self::Key> {
        self.inner.diff(k).filter(|k| (self.keep)(k))
    }
    fn degree(&self, k: &Self::Key) -> i64 {
        self.inner.degree(k)
    }
    fn weight(&self, k: &Self::Key) -> u32 {
        self.inner.weight(k)
    }
    fn label(&self, k: &Self::Key) -> String {
        self.inner.label(k)
    }
}

// ---------------------------------------------------------------------------
// Totals of mixed complexes with a degree −2 variable u

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TotKey<K> {
    pub p: i64,
    pub k: K,
}

/// `⊕/∏_p M·u^p` over `p_min ≤ p ≤ p_max`, `d = b + uB`, `|k·u^p| = |k| − 2p`.
/// Per `(d, w)` only finitely many `p` contribute, so sum and product agree.
pub struct Total<M: Mixed> {
    pub inner: M,
    pub p_min: Option<i64>,
    pub p_max: Option<i64>,
    pub label: String,
}

impl<M: Mixed> Total<M> {
    pub fn new(inner: M, p_min: Option<i64>, p_max: Option<i64>, label: impl Into<String>) -> Self {
        Total { inner, p_min, p_max, label: label.into() }
    }

    fn p_ok(&self, p: i64) -> bool {
        self.p_min.map_or(true, |m| p >= m) && self.p_max.map_or(true, |m| p <= m)
    }
}

impl<M: Mixed> Complex for Total<M> {
    type Key = TotKey<M::Key>;

    fn name(&self) -> String {
        self.label.clone()
    }

    fn basis(&self, d: i64, w: u32) -> Vec<Self::Key> {
        let (lo, hi) = self.inner.degree_range(w);
        let mut p_lo = (lo - d).div_euclid(2) + if (lo - d).rem_euclid(2) == 0 { 0 } else { 1 };
        let mut p_hi = (hi - d).div_euclid(2);
        if let Some(m) = self.p_min {
            p_lo = p_lo.max(m);
        }
        if let Some(m) = self.p_max {
            p_hi = p_hi.min(m);
        }
        let mut out = Vec::new();
        for p in p_lo..=p_hi {
            if !self.p_ok(p) {
                continue;
            }
            for k in self.inner.basis(d + 2 * p, w) {
                out.push(TotKey { p, k });
            }
        }
        out
    }

    fn diff(&self, key: &Self::Key) -> Lin<Self::Key> {
        let p = key.p;
        let mut out = self.inner.diff(&key.k).map_linear(|k| Lin::single(TotKey { p, k: k.clone() }));
        if self.p_ok(p + 1) {
            out.add_lin(&self.inner.connes(&key.k).map_linear(|k| Lin::single(TotKey { p: p + 1, k: k.clone() })));
        }
        out
    }

    fn degree(&self, k: &Self::Key) -> i64 {
        self.inner.degree(&k.k) - 2 * k.p
    }

    fn weight(&self, k: &Self::Key) -> u32 {
        self.inner.weight(&k.k)
    }

    fn label(&self, k: &Self::Key) -> String {
        format!("{}·u^{}", self.inner.label(&k.k), k.p)
    }
}

/// An ℕ-graded mixed complex `(C^(n), b, B)`: `b` preserves `n`, `B` raises
/// it by one. The pieces `C^(n)` are only enumerated one `n` at a time, since
/// `⊕_n C^(n)` need not be finite in a fixed bidegree.
pub trait HodgeGraded: Send + Sync {
    type Key: Ord + Clone + Send + Sync + Debug;

    fn name(&self) -> String;
    /// Keys of Hodge count `n`, degree `d`, weight `w`.
    fn basis_n(&self, n: u32, d: i64, w: u32) -> Vec<Self::Key>;
    fn diff(&self, k: &Self::Key) -> Lin<Self::Key>;
    fn connes(&self, k: &Self::Key) -> Lin<Self::Key>;
    fn hodge(&self, k: &Self::Key) -> u32;
    fn degree(&self, k: &Self::Key) -> i64;
    fn weight(&self, k: &Self::Key) -> u32;
    fn label(&self, k: &Self::Key) -> String {
        format!("{k:?}")
    }
    /// Upper bound on `n` for keys of weight `w` with `|k| − 2n = d`.
    fn max_hodge(&self, d: i64, w: u32) -> u32;
}

/// `∏_{n ≥ r} C^(n)·u^n` with `d = b + uB`; `|k·u^n| = |k| − 2n`.
pub struct HodgeTotal<M: HodgeGraded> {
    pub inner: M,
    pub r: u32,
    pub label: String,
}

impl<M: HodgeGraded> HodgeTotal<M> {
    pub fn new(inner: M, r: u32, label: impl Into<String>) -> Self {
        HodgeTotal { inner, r, label: label.into() }
    }
}

impl<M: HodgeGraded> Complex for HodgeTotal<M> {
    type Key = M::Key;

    fn name(&self) -> String {
        self.label.clone()
    }

    fn basis(&self, d: i64, w: u32) -> Vec<Self::Key> {
        let mut out = Vec::new();
        let top = self.inner.max_hodge(d, w);
        for n in self.r..=top {
            out.extend(self.inner.basis_n(n, d + 2 * n as i64, w));
        }
        out
    }

    fn diff(&self, k: &Self::Key) -> Lin<Self::Key> {
        let mut out = self.inner.diff(k);
        out.add_lin(&self.inner.connes(k));
        out
    }

    fn degree(&self, k: &Self::Key) -> i64 {
        self.inner.degree(k) - 2 * self.inner.hodge(k) as i64
    }

    fn weight(&self, k: &Self::Key) -> u32 {
        self.inner.weight(k)
    }

    fn label(&self, k: &Self::Key) -> String {
        format!("{}·u^{}", self.inner.label(k), self.inner.hodge(k))
    }
}

// ---------------------------------------------------------------------------
// Materialization

/// A complex restricted to a window, with its differentials as sparse
/// matrices. `diffs[(d, w)]` maps piece `(d, w)` to piece `(d − 1, w)` and is
/// stored for `d_lo < d ≤ d_hi`.
#[derive(Clone, Debug)]
pub struct BigradedComplex {
    pub name: String,
    pub window: Window,
    pub dims: BTreeMap<(i64, u32), usize>,
    pub diffs: BTreeMap<(i64, u32), SparseMatrix>,
}

impl BigradedComplex {
    pub fn dim(&self, d: i64, w: u32) -> usize {
        self.dims.get(&(d, w)).copied().unwrap_or(0)
    }

    /// Homology dimension at an interior degree of the window.
    pub fn homology(&self, d: i64, w: u32) -> Result<usize> {
        let (lo, hi) = self.window.degrees;
        if d <= lo || d >= hi {
            return Err(Error::WindowTooSmall(format!("degree {d} is not interior to {lo}..{hi}")));
        }
        let d_in = &self.diffs[&(d + 1, w)];
        let d_out = &self.diffs[&(d, w)];
        homology_dim(d_in, d_out)
    }

    pub fn homology_table(&self) -> Result<BTreeMap<(i64, u32), usize>> {
        let cells = self.window.interior_cells()?;
        let dims: Vec<((i64, u32), Result<usize>)> =
            cells.par_iter().map(|&(d, w)| ((d, w), self.homology(d, w))).collect();
        let mut out = BTreeMap::new();
        for (c, r) in dims {
            out.insert(c, r?);
        }
        Ok(out)
    }

    /// Checks `d ∘ d = 0` on the stored matrices.
    pub fn check_square_zero(&self) -> Result<()> {
        let (lo, hi) = self.window.degrees;
        for w in self.window.weights.0..=self.window.weights.1 {
            for d in lo + 2..=hi {
                let p = self.diffs[&(d - 1, w)].mul(&self.diffs[&(d, w)])?;
                if !p.is_zero() {
                    return Err(Error::CompositionNotZero);
                }
            }
        }
        Ok(())
    }
}

fn index_of<K: Ord + Clone>(keys: &[K]) -> BTreeMap<K, usize> {
    keys.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect()
}

/// Matrix of a linear map on keys, from the basis `src` into the basis `tgt`.
/// Terms outside `tgt` are reported as an error.
pub fn key_matrix<K1, K2>(
    src: &[K1],
    tgt: &BTreeMap<K2, usize>,
    f: impl Fn(&K1) -> Lin<K2> + Sync,
) -> Result<SparseMatrix>
where
    K1: Sync,
    K2: Ord + Clone + Debug + Sync,
{
    let cols: Vec<Result<Vec<(usize, Rational)>>> = src
        .par_iter()
        .map(|k| {
            let img = f(k);
            let mut col = Vec::with_capacity(img.len());
            for (t, c) in img.iter() {
                match tgt.get(t) {
                    Some(&i) => col.push((i, c.clone())),
                    None => {
                        return Err(Error::DimensionMismatch(format!("image term {t:?} outside target basis")))
                    }
                }
            }
            col.sort_by_key(|e| e.0);
            Ok(col)
        })
        .collect();
    let cols: Result<Vec<_>> = cols.into_iter().collect();
    SparseMatrix::from_columns(tgt.len(), cols?)
}

fn bases<C: Complex>(c: &C, cells: &[(i64, u32)]) -> BTreeMap<(i64, u32), Vec<C::Key>> {
    cells.par_iter().map(|&(d, w)| ((d, w), c.basis(d, w))).collect::<Vec<_>>().into_iter().collect()
}

pub fn materialize<C: Complex>(c: &C, window: &Window) -> Result<BigradedComplex> {
    let cells = window.cells();
    let bases = bases(c, &cells);
    let mut diffs = BTreeMap::new();
    let jobs: Vec<(i64, u32)> = cells.iter().copied().filter(|&(d, _)| d > window.degrees.0).collect();
    let mats: Vec<((i64, u32), Result<SparseMatrix>)> = jobs
        .par_iter()
        .map(|&(d, w)| {
            let idx = index_of(&bases[&(d - 1, w)]);
            ((d, w), key_matrix(&bases[&(d, w)], &idx, |k| c.diff(k)))
        })
        .collect();
    for (cell, m) in mats {
        diffs.insert(cell, m?);
    }
    Ok(BigradedComplex {
        name: c.name(),
        window: window.clone(),
        dims: bases.iter().map(|(k, v)| (*k, v.len())).collect(),
        diffs,
    })
}

/// Homology dimensions at the interior cells of the window.
pub fn homology<C: Complex>(c: &C, window: &Window) -> Result<BTreeMap<(i64, u32), usize>> {
    window.interior_degrees()?;
    materialize(c, window)?.homology_table()
}

pub fn dim_cells(complex: &str, table: &BTreeMap<(i64, u32), usize>, n: Option<u32>, r: Option<u32>) -> Vec<DimCell> {
    table
        .iter()
        .map(|(&(d, w), &dim)| DimCell { complex: complex.to_string(), w, d, n, r, dim })
        .collect()
}

// ---------------------------------------------------------------------------
// Key-level checks

/// Runs `check` on every basis key of every cell; failures become witnesses.
pub fn check_on_basis<C: Complex>(
    name: &str,
    c: &C,
    window: &Window,
    check: impl Fn(&C::Key) -> Option<String> + Sync,
) -> CheckReport {
    let mut report = CheckReport::new(name).with_window(window);
    let cells = window.cells();
    let results: Vec<(usize, Vec<String>)> = cells
        .par_iter()
        .map(|&(d, w)| {
            let keys = c.basis(d, w);
            let fails: Vec<String> = keys.iter().filter_map(&check).collect();
            (keys.len(), fails)
        })
        .collect();
    for (n, fails) in results {
        report.count(n);
        for f in fails {
            report.fail(f);
        }
    }
    report
}

pub fn check_square_zero<C: Complex>(c: &C, window: &Window) -> CheckReport {
    check_on_basis(&format!("d^2=0 on {}", c.name()), c, window, |k| {
        let dd = apply_diff(c, &c.diff(k));
        (!dd.is_zero()).then(|| format!("d²({}) ≠ 0", c.label(k)))
    })
}

/// Checks grading of the differential: every term of `d(k)` lies in `(|k| − 1, wt k)`.
pub fn check_grading<C: Complex>(c: &C, window: &Window) -> CheckReport {
    check_on_basis(&format!("grading of d on {}", c.name()), c, window, |k| {
        let (dk, wk) = (c.degree(k), c.weight(k));
        c.diff(k)
            .keys()
            .find(|t| c.degree(t) != dk - 1 || c.weight(t) != wk)
            .map(|t| format!("d({}) has term {} of wrong bidegree", c.label(k), c.label(t)))
    })
}

/// Checks `f ∘ d = (−1)^shift d ∘ f` for a map of degree `shift`.
pub fn check_chain_map<S: Complex, T: Complex>(
    name: &str,
    src: &S,
    tgt: &T,
    f: &MapFn<S::Key, T::Key>,
    shift: i64,
    window: &Window,
) -> CheckReport {
    let sign = Rational::from_integer(koszul(shift).into());
    check_on_basis(name, src, window, |k| {
        let lhs = apply_map(f, &src.diff(k));
        let rhs = apply_diff(tgt, &f(k)).scaled(&sign);
        if lhs != rhs {
            return Some(format!("{}: f(d x) ≠ ±d(f x)", src.label(k)));
        }
        let fk = f(k);
        let bad = fk
            .keys()
            .find(|t| tgt.degree(t) != src.degree(k) + shift || tgt.weight(t) != src.weight(k))
            .map(|t| format!("{} ↦ term {} of wrong bidegree", src.label(k), tgt.label(t)));
        bad
    })
}

/// Checks `lhs(k) = rhs(k)` on all basis keys.
pub fn check_equal_maps<S: Complex, K2: Ord + Clone>(
    name: &str,
    src: &S,
    window: &Window,
    lhs: impl Fn(&S::Key) -> Lin<K2> + Sync,
    rhs: impl Fn(&S::Key) -> Lin<K2> + Sync,
) -> CheckReport {
    check_on_basis(name, src, window, |k| (lhs(k) != rhs(k)).then(|| format!("fails on {}", src.label(k))))
}

/// Mixed-complex laws `B² = 0` and `Bb + bB = 0`.
pub fn check_mixed<M: Mixed>(m: &M, window: &Window) -> CheckReport {
    let mut r = CheckReport::new(format!("mixed laws on {}", m.name())).with_window(window);
    r.push(check_on_basis("B^2=0", m, window, |k| {
        let bb = m.connes(k).map_linear(|t| m.connes(t));
        (!bb.is_zero()).then(|| format!("B²({}) ≠ 0", m.label(k)))
    }));
    r.push(check_on_basis("Bb+bB=0", m, window, |k| {
        let mut s = m.diff(k).map_linear(|t| m.connes(t));
        s.add_lin(&m.connes(k).map_linear(|t| m.diff(t)));
        (!s.is_zero()).then(|| format!("(Bb+bB)({}) ≠ 0", m.label(k)))
    }));
    r.push(check_on_basis("deg B = +1", m, window, |k| {
        m.connes(k)
            .keys()
            .find(|t| m.degree(t) != m.degree(k) + 1 || m.weight(t) != m.weight(k))
            .map(|t| format!("B({}) has term {} of wrong bidegree", m.label(k), m.label(t)))
    }));
    r
}

/// Whether `f` is a quasi-isomorphism on the window: its cone is acyclic at
/// every interior cell. Source and target homology tables are recorded.
pub fn check_quasi_iso<S, T>(name: &str, src: S, tgt: T, f: MapFn<S::Key, T::Key>, window: &Window) -> CheckReport
where
    S: Complex,
    T: Complex,
{
    let mut report = CheckReport::new(name).with_window(window);
    if let Err(e) = window.interior_degrees() {
        report.fail(e.to_string());
        return report;
    }
    report.push(check_chain_map("chain map", &src, &tgt, &f, 0, window));
    let (src_name, tgt_name) = (src.name(), tgt.name());
    let hs = homology(&src, window);
    let ht = homology(&tgt, window);
    let cone = Cone::new(src, tgt, f);
    let hc = homology(&cone, window);
    match (hs, ht, hc) {
        (Ok(hs), Ok(ht), Ok(hc)) => {
            for (&(d, w), &dim) in &hc {
                if dim != 0 {
                    report.fail(format!("cone homology at (d={d}, w={w}) has dim {dim}"));
                }
            }
            for (cell, a) in &hs {
                let b = ht[cell];
                if *a != b && report.passed() {
                    report.fail(format!("homology dims differ at {:?}: {} vs {}", cell, a, b));
                }
            }
            report.dims.extend(dim_cells(&src_name, &hs, None, None));
            report.dims.extend(dim_cells(&tgt_name, &ht, None, None));
        }
        (a, b, c) => {
            for e in [a.err(), b.err(), c.err()].into_iter().flatten() {
                report.fail(e.to_string());
            }
        }
    }
    report
}

/// Checks that a complex has zero homology at every interior cell.
pub fn check_acyclic<C: Complex>(name: &str, c: &C, window: &Window) -> CheckReport {
    let mut report = CheckReport::new(name).with_window(window);
    match homology(c, window) {
        Ok(h) => {
            for (&(d, w), &dim) in &h {
                if dim != 0 {
                    report.fail(format!("homology at (d={d}, w={w}) has dim {dim}"));
                }
            }
            report.dims.extend(dim_cells(&c.name(), &h, None, None));
        }
        Err(e) => report.fail(e.to_string()),
    }
    report
}

/// Rank of the map induced on homology at degree `d` by a degree-`shift`
/// map `f: S → T` (cycles of `S_d` to `H_{d+shift}(T)`).
pub fn induced_map_rank<S: Complex, T: Complex>(
    src: &S,
    tgt: &T,
    f: &MapFn<S::Key, T::Key>,
    shift: i64,
    d: i64,
    w: u32,
) -> Result<usize> {
    let s_d = src.basis(d, w);
    let s_dm = src.basis(d - 1, w);
    let e = d + shift;
    let t_e = tgt.basis(e, w);
    let t_ep = tgt.basis(e + 1, w);
    let c_out = key_matrix(&s_d, &index_of(&s_dm), |k| src.diff(k))?;
    let idx_e = index_of(&t_e);
    let fm = key_matrix(&s_d, &idx_e, |k| f(k))?;
    let d_in = key_matrix(&t_ep, &idx_e, |k| tgt.diff(k))?;
    induced_rank(&c_out, &fm, &d_in)
}
