//! Hochschild chains `a0[a1|…|an]`, the mixed complex `(C^H, b, B)` in its
//! normalized and unnormalized forms, the Connes complex `C^λ` and the
//! cyclic totals `CC`, `CN`, `CP`.
//!
//! Entries compose left to right: `src(a_i) = tgt(a_{i+1})` and
//! `src(a_n) = tgt(a_0)`. The degree of a chain is `|a0| + Σ_{i≥1}(|a_i| + 1)`.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use crate::complex::{Complex, Mixed, Total};
use crate::dgcat::{canonical_rotation, DgPresentation, ObjId, Word};
use crate::lin::{koszul, Lin};
use crate::linalg::Rational;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HChain(pub Vec<Word>);

impl HChain {
    pub fn columns(&self) -> usize {
        self.0.len() - 1
    }
}

fn sgn(e: i64) -> Rational {
    Rational::from_integer(koszul(e).into())
}

type Table = Arc<BTreeMap<ObjId, Vec<(Word, i64, u32)>>>;

/// Words of weight ≤ `w` and degree ≤ `d`, grouped by target.
fn bounded_words(pres: &DgPresentation, w: u32, d: i64) -> Table {
    let mut by_tgt: BTreeMap<ObjId, Vec<(Word, i64, u32)>> = BTreeMap::new();
    for y in pres.objects.ids() {
        let list = by_tgt.entry(y).or_default();
        for x in pres.objects.ids() {
            for wt in 0..=w {
                for deg in 0..=d {
                    for word in pres.enumerate_basis(x, y, deg, wt) {
                        list.push((word, deg, wt));
                    }
                }
            }
        }
        list.sort();
    }
    Arc::new(by_tgt)
}

/// The Hochschild complex of a presentation. With `normalized`, entries
/// `a_1, …, a_n` are never identities.
pub struct HochschildComplex {
    pub pres: Arc<DgPresentation>,
    pub normalized: bool,
    tables: Mutex<BTreeMap<(u32, i64), Table>>,
}

impl HochschildComplex {
    pub fn new(pres: Arc<DgPresentation>, normalized: bool) -> Self {
        HochschildComplex { pres, normalized, tables: Mutex::new(BTreeMap::new()) }
    }

    fn table(&self, w: u32, d: i64) -> Table {
        let mut cache = self.tables.lock().expect("table cache");
        cache.entry((w, d)).or_insert_with(|| bounded_words(&self.pres, w, d)).clone()
    }

    fn deg(&self, a: &Word) -> i64 {
        self.pres.word_degree(a)
    }

    /// Chains with exactly `n` columns in bidegree `(d, w)`.
    pub fn basis_n(&self, n: usize, d: i64, w: u32) -> Vec<HChain> {
        let budget = d - n as i64;
        if budget < 0 {
            return Vec::new();
        }
        let table = self.table(w, budget);
        let mut out = Vec::new();
        for y in self.pres.objects.ids() {
            let mut stack = Vec::new();
            self.dfs(&table, n + 1, y, y, budget, w as i64, &mut stack, &mut out);
        }
        out.sort();
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn dfs(
        &self,
        table: &Table,
        len: usize,
        start: ObjId,
        current: ObjId,
        d: i64,
        w: i64,
        stack: &mut Vec<Word>,
        out: &mut Vec<HChain>,
    ) {
        if stack.len() == len {
            if d == 0 && w == 0 && current == start {
                out.push(HChain(stack.clone()));
            }
            return;
        }
        let Some(list) = table.get(&current) else { return };
        for (word, wd, ww) in list {
            if *wd > d || (*ww as i64) > w {
                continue;
            }
            if self.normalized && !stack.is_empty() && word.is_identity() {
                continue;
            }
            stack.push(word.clone());
            self.dfs(table, len, start, word.src, d - wd, w - *ww as i64, stack, out);
            stack.pop();
        }
    }

    fn keep(&self, c: &HChain) -> bool {
        !self.normalized || c.0[1..].iter().all(|a| !a.is_identity())
    }

    fn push(&self, out: &mut Lin<HChain>, chain: HChain, c: Rational) {
        if self.keep(&chain) {
            out.add_term(chain, c);
        }
    }

    /// `b1`: the internal differential, applied entrywise.
    pub fn b1(&self, c: &HChain) -> Lin<HChain> {
        let a = &c.0;
        let mut out = Lin::zero();
        let mut eps = 0i64;
        for i in 0..a.len() {
            let s = if i == 0 { sgn(0) } else { -sgn(eps) };
            for (v, coef) in self.pres.differential_word(&a[i]).iter() {
                let mut ch = a.clone();
                ch[i] = v.clone();
                self.push(&mut out, HChain(ch), coef * &s);
            }
            eps += self.deg(&a[i]) + if i == 0 { 0 } else { 1 };
        }
        out
    }

    /// `b2`: the alternating sum of adjacent products, including the
    /// wrap-around product `a_n·a_0`.
    pub fn b2(&self, c: &HChain) -> Lin<HChain> {
        let a = &c.0;
        let n = a.len() - 1;
        let mut out = Lin::zero();
        if n == 0 {
            return out;
        }
        // eps[i] = |a0| + Σ_{1≤j≤i}(|a_j| + 1)
        let mut eps = vec![self.deg(&a[0])];
        for i in 1..=n {
            eps.push(eps[i - 1] + self.deg(&a[i]) + 1);
        }
        for i in 0..n {
            let s = if i == 0 { sgn(eps[0]) } else { sgn(eps[i]) };
            let prod = self.pres.mul_words(&a[i], &a[i + 1]).expect("composable chain");
            for (v, coef) in prod.iter() {
                let mut ch = Vec::with_capacity(n);
                ch.extend_from_slice(&a[..i]);
                ch.push(v.clone());
                ch.extend_from_slice(&a[i + 2..]);
                self.push(&mut out, HChain(ch), coef * &s);
            }
        }
        let s = -sgn((self.deg(&a[n]) + 1) * eps[n - 1]);
        let prod = self.pres.mul_words(&a[n], &a[0]).expect("composable chain");
        for (v, coef) in prod.iter() {
            let mut ch = Vec::with_capacity(n);
            ch.push(v.clone());
            ch.extend_from_slice(&a[1..n]);
            self.push(&mut out, HChain(ch), coef * &s);
        }
        out
    }

    /// The cyclic operator `t(a0, …, an) = ± (an, a0, …, a_{n−1})`, with the
    /// Koszul sign for entries of degree `|a_i| + 1`.
    pub fn t(&self, c: &HChain) -> Lin<HChain> {
        let a = &c.0;
        let n = a.len() - 1;
        if n == 0 {
            return Lin::single(c.clone());
        }
        let q: i64 = a[..n].iter().map(|x| self.deg(x) + 1).sum();
        let mut ch = Vec::with_capacity(n + 1);
        ch.push(a[n].clone());
        ch.extend_from_slice(&a[..n]);
        Lin::signed(HChain(ch), koszul((self.deg(&a[n]) + 1) * q))
    }

    fn t_lin(&self, x: &Lin<HChain>) -> Lin<HChain> {
        x.map_linear(|c| self.t(c))
    }

    /// `N = Σ_k t^k`.
    pub fn norm(&self, c: &HChain) -> Lin<HChain> {
        let mut out = Lin::zero();
        let mut cur = Lin::single(c.clone());
        for _ in 0..c.0.len() {
            out.add_lin(&cur);
            cur = self.t_lin(&cur);
        }
        out
    }

    /// `s(a0, …, an) = (1, a0, …, an)`.
    pub fn s(&self, c: &HChain) -> HChain {
        let mut ch = Vec::with_capacity(c.0.len() + 1);
        ch.push(Word::identity(c.0[0].tgt));
        ch.extend_from_slice(&c.0);
        HChain(ch)
    }

    fn unnormalized_connes(&self, c: &HChain) -> Lin<HChain> {
        let sn = self.norm(c).map_linear(|k| Lin::single(self.s(k)));
        let mut out = sn.clone();
        out.sub_lin(&self.t_lin(&sn));
        out
    }

    pub fn chain_label(pres: &DgPresentation, c: &HChain) -> String {
        let head = pres.word_label(&c.0[0]);
        if c.0.len() == 1 {
            return head;
        }
        let rest: Vec<String> = c.0[1..].iter().map(|a| pres.word_label(a)).collect();
        format!("{}[{}]", head, rest.join("|"))
    }
}

impl Complex for HochschildComplex {
    type Key = HChain;

    fn name(&self) -> String {
        let tag = if self.normalized { "" } else { "unnormalized " };
        format!("{tag}C^H({})", self.pres.name)
    }

    fn basis(&self, d: i64, w: u32) -> Vec<HChain> {
        let mut out = Vec::new();
        if d < 0 {
            return out;
        }
        for n in 0..=d as usize {
            if self.normalized && n as u32 > w {
                break;
            }
            out.extend(self.basis_n(n, d, w));
        }
        out
    }

    fn diff(&self, c: &HChain) -> Lin<HChain> {
        let mut out = self.b1(c);
        out.add_lin(&self.b2(c));
        out
    }

    fn degree(&self, c: &HChain) -> i64 {
        c.0.iter().map(|a| self.deg(a)).sum::<i64>() + c.columns() as i64
    }

    fn weight(&self, c: &HChain) -> u32 {
        c.0.iter().map(|a| self.pres.word_weight(a)).sum()
    }

    fn label(&self, c: &HChain) -> String {
        Self::chain_label(&self.pres, c)
    }
}

impl Mixed for HochschildComplex {
    fn connes(&self, c: &HChain) -> Lin<HChain> {
        if self.normalized {
            let mut out = Lin::zero();
            for (k, coef) in self.norm(c).iter() {
                self.push(&mut out, self.s(k), coef.clone());
            }
            out
        } else {
            self.unnormalized_connes(c)
        }
    }

    fn degree_range(&self, w: u32) -> (i64, i64) {
        if self.normalized {
            (0, self.pres.max_degree_at_weight(w) + w as i64)
        } else {
            (0, i64::MAX / 8)
        }
    }
}

/// The Connes complex `C^λ = coker(1 − t)` on unnormalized chains. Keys are
/// canonical rotations; a class is zero when some rotation fixes the chain
/// with sign `−1`.
pub struct ConnesComplex {
    pub hh: Arc<HochschildComplex>,
}

impl ConnesComplex {
    pub fn new(pres: Arc<DgPresentation>) -> Self {
        ConnesComplex { hh: Arc::new(HochschildComplex::new(pres, false)) }
    }

    pub fn pres(&self) -> &DgPresentation {
        &self.hh.pres
    }

    /// The class of a chain: `± canonical rotation`, or zero.
    pub fn class(&self, c: &HChain) -> Lin<HChain> {
        let degs: Vec<i64> = c.0.iter().map(|a| self.hh.deg(a) + 1).collect();
        match canonical_rotation(&c.0, &degs, |_| true) {
            Some((rot, sign, _)) => Lin::signed(HChain(rot), sign),
            None => Lin::zero(),
        }
    }

    pub fn project(&self, x: &Lin<HChain>) -> Lin<HChain> {
        x.map_linear(|c| self.class(c))
    }

    fn is_canonical(&self, c: &HChain) -> bool {
        let cl = self.class(c);
        cl.len() == 1 && cl.keys().next() == Some(c)
    }
}

impl Complex for ConnesComplex {
    type Key = HChain;

    fn name(&self) -> String {
        format!("C^lambda({})", self.pres().name)
    }

    fn basis(&self, d: i64, w: u32) -> Vec<HChain> {
        self.hh.basis(d, w).into_iter().filter(|c| self.is_canonical(c)).collect()
    }

    fn diff(&self, c: &HChain) -> Lin<HChain> {
        self.project(&self.hh.diff(c))
    }

    fn degree(&self, c: &HChain) -> i64 {
        self.hh.degree(c)
    }

    fn weight(&self, c: &HChain) -> u32 {
        self.hh.weight(c)
    }

    fn label(&self, c: &HChain) -> String {
        format!("<{}>", self.hh.label(c))
    }
}

/// `CC = ⊕_{p≤0} C^H·u^p` on unnormalized chains.
pub fn cyclic_cc(pres: Arc<DgPresentation>) -> Total<Arc<HochschildComplex>> {
    let name = format!("CC({})", pres.name);
    Total::new(Arc::new(HochschildComplex::new(pres, false)), None, Some(0), name)
}

/// `CC = ⊕_{p≤0} C^H·u^p` on normalized chains.
pub fn cyclic_cc_normalized(pres: Arc<DgPresentation>) -> Total<Arc<HochschildComplex>> {
    let name = format!("CC({})", pres.name);
    Total::new(Arc::new(HochschildComplex::new(pres, true)), None, Some(0), name)
}

/// `CN = ∏_{p≥0} C^H·u^p`.
pub fn negative_cn(pres: Arc<DgPresentation>) -> Total<Arc<HochschildComplex>> {
    let name = format!("CN({})", pres.name);
    Total::new(Arc::new(HochschildComplex::new(pres, true)), Some(0), None, name)
}

/// `F^r CP = ∏_{p≥r} C^H·u^p`, so `F^0 CP = CN`.
pub fn periodic_filtered(pres: Arc<DgPresentation>, r: i64) -> Total<Arc<HochschildComplex>> {
    let name = format!("F^{r}CP({})", pres.name);
    Total::new(Arc::new(HochschildComplex::new(pres, true)), Some(r), None, name)
}

/// `CP = ∏_{p∈ℤ} C^H·u^p`.
pub fn periodic_cp(pres: Arc<DgPresentation>) -> Total<Arc<HochschildComplex>> {
    let name = format!("CP({})", pres.name);
    Total::new(Arc::new(HochschildComplex::new(pres, true)), None, None, name)
}
