//! Exact sparse linear algebra over ℚ.
//!
//! Matrices are stored column-major: column `j` is the image of the `j`-th
//! source basis vector, written in the target basis. Ranks use Markowitz
//! pivoting on a row-wise working copy, which keeps fill-in low on the very
//! sparse ±1 matrices produced by bar-type differentials.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// A sparse vector: sorted `(index, value)` pairs with nonzero values.
pub type SparseVec = Vec<(usize, Rational)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    columns: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, columns: vec![Vec::new(); cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.columns[i].push((i, Rational::one()));
        }
        m
    }

    /// Builds a matrix from columns; zero entries are dropped, duplicates summed.
    pub fn from_columns(rows: usize, columns: Vec<Vec<(usize, Rational)>>) -> Result<Self> {
        let cols = columns.len();
        let mut out = Vec::with_capacity(cols);
        for col in columns {
            let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
            for (r, v) in col {
                if r >= rows {
                    return Err(Error::DimensionMismatch(format!(
                        "row index {r} out of range for {rows} rows"
                    )));
                }
                *acc.entry(r).or_insert_with(Rational::zero) += v;
            }
            out.push(acc.into_iter().filter(|(_, v)| !v.is_zero()).collect());
        }
        Ok(SparseMatrix { rows, cols, columns: out })
    }

    /// Dense row-major constructor, used mostly by tests.
    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut columns = vec![Vec::new(); ncols];
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if v != 0 {
                    columns[j].push((i, rat(v)));
                }
            }
        }
        SparseMatrix { rows: nrows, cols: ncols, columns }
    }

    pub fn from_dense_rational(rows: usize, cols: usize, data: &[Vec<Rational>]) -> Self {
        let mut columns = vec![Vec::new(); cols];
        for (i, row) in data.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    columns[j].push((i, v.clone()));
                }
            }
        }
        SparseMatrix { rows, cols, columns }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> &SparseVec {
        &self.columns[j]
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(|c| c.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_empty())
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        self.columns[j]
            .iter()
            .find(|(r, _)| *r == i)
            .map(|(_, v)| v.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut columns = vec![Vec::new(); self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, v) in col {
                columns[*i].push((j, v.clone()));
            }
        }
        SparseMatrix { rows: self.cols, cols: self.rows, columns }
    }

    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            if v[j].is_zero() {
                continue;
            }
            for (i, a) in col {
                out[*i] += a * &v[j];
            }
        }
        out
    }

    /// `self · other`.
    pub fn mul(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut columns = Vec::with_capacity(other.cols);
        for col in &other.columns {
            let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
            for (k, b) in col {
                for (i, a) in &self.columns[*k] {
                    *acc.entry(*i).or_insert_with(Rational::zero) += a * b;
                }
            }
            columns.push(acc.into_iter().filter(|(_, v)| !v.is_zero()).collect());
        }
        Ok(SparseMatrix { rows: self.rows, cols: other.cols, columns })
    }

    pub fn add(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        self.lin_comb(other, &Rational::one())
    }

    pub fn sub(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        self.lin_comb(other, &-Rational::one())
    }

    fn lin_comb(&self, other: &SparseMatrix, c: &Rational) -> Result<SparseMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "cannot add {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let columns = self
            .columns
            .iter()
            .zip(&other.columns)
            .map(|(a, b)| {
                let mut acc: BTreeMap<usize, Rational> = a.iter().cloned().collect();
                for (i, v) in b {
                    *acc.entry(*i).or_insert_with(Rational::zero) += v * c;
                }
                acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
            })
            .collect();
        Ok(SparseMatrix { rows: self.rows, cols: self.cols, columns })
    }

    pub fn scale(&self, c: &Rational) -> SparseMatrix {
        if c.is_zero() {
            return Self::zeros(self.rows, self.cols);
        }
        SparseMatrix {
            rows: self.rows,
            cols: self.cols,
            columns: self
                .columns
                .iter()
                .map(|col| col.iter().map(|(i, v)| (*i, v * c)).collect())
                .collect(),
        }
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hcat(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch("hcat with different row counts".into()));
        }
        let mut columns = self.columns.clone();
        columns.extend(other.columns.iter().cloned());
        Ok(SparseMatrix { rows: self.rows, cols: self.cols + other.cols, columns })
    }

    /// Selects the given columns.
    pub fn select_columns(&self, idx: &[usize]) -> SparseMatrix {
        SparseMatrix {
            rows: self.rows,
            cols: idx.len(),
            columns: idx.iter().map(|&j| self.columns[j].clone()).collect(),
        }
    }

    pub fn from_vectors(rows: usize, vecs: &[Vec<Rational>]) -> SparseMatrix {
        SparseMatrix {
            rows,
            cols: vecs.len(),
            columns: vecs
                .iter()
                .map(|v| {
                    v.iter()
                        .enumerate()
                        .filter(|(_, x)| !x.is_zero())
                        .map(|(i, x)| (i, x.clone()))
                        .collect()
                })
                .collect(),
        }
    }
}

/// Rank over ℚ by Markowitz-pivoted elimination.
pub fn rank(m: &SparseMatrix) -> usize {
    rank_with_order(m, false)
}

/// Same elimination with columns visited in reverse; used to check that the
/// result does not depend on pivot order.
pub fn rank_reversed(m: &SparseMatrix) -> usize {
    rank_with_order(m, true)
}

fn rank_with_order(m: &SparseMatrix, reversed: bool) -> usize {
    if m.rows == 0 || m.cols == 0 {
        return 0;
    }
    // Work on the orientation with fewer rows to eliminate.
    let work = if m.rows > m.cols { m.transpose() } else { m.clone() };
    let nrows = work.rows;
    let ncols = work.cols;
    let mut rows: Vec<BTreeMap<usize, Rational>> = vec![BTreeMap::new(); nrows];
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); ncols];
    for (j, col) in work.columns.iter().enumerate() {
        let jj = if reversed { ncols - 1 - j } else { j };
        for (i, v) in col {
            rows[*i].insert(jj, v.clone());
            col_rows[jj].insert(*i);
        }
    }
    let mut alive_rows: BTreeSet<usize> = (0..nrows).filter(|&i| !rows[i].is_empty()).collect();
    let mut rank = 0;
    loop {
        // Markowitz: minimize (r_i - 1)(c_j - 1) over a candidate set
        // consisting of the sparsest columns.
        let mut best: Option<(usize, usize, usize)> = None; // (cost, row, col)
        let mut cols_by_count: Vec<(usize, usize)> = col_rows
            .iter()
            .enumerate()
            .filter(|(_, s)| !s.is_empty())
            .map(|(j, s)| (s.len(), j))
            .collect();
        if cols_by_count.is_empty() {
            break;
        }
        cols_by_count.sort_unstable();
        for &(cnt, j) in cols_by_count.iter().take(4) {
            for &i in &col_rows[j] {
                let cost = (rows[i].len() - 1) * (cnt - 1);
                if best.map_or(true, |(c, bi, bj)| (cost, i, j) < (c, bi, bj)) {
                    best = Some((cost, i, j));
                }
            }
        }
        let (_, pr, pc) = best.expect("nonempty column has a row");
        let pivot_row = std::mem::take(&mut rows[pr]);
        alive_rows.remove(&pr);
        for (c, _) in &pivot_row {
            col_rows[*c].remove(&pr);
        }
        let pivot_val = pivot_row[&pc].clone();
        let targets: Vec<usize> = col_rows[pc].iter().copied().collect();
        for r in targets {
            let factor = &rows[r][&pc] / &pivot_val;
            for (c, v) in &pivot_row {
                let delta = v * &factor;
                let entry = rows[r].entry(*c).or_insert_with(Rational::zero);
                *entry -= delta;
                if entry.is_zero() {
                    rows[r].remove(c);
                    col_rows[*c].remove(&r);
                } else {
                    col_rows[*c].insert(r);
                }
            }
            if rows[r].is_empty() {
                alive_rows.remove(&r);
            }
        }
        rank += 1;
    }
    rank
}

/// Reduced row echelon form of the row-vectors `rows` (each of length `n`),
/// returning `(pivot_columns, reduced_rows)`. Pivots are chosen in the given
/// column priority order.
fn rref(mut rows: Vec<BTreeMap<usize, Rational>>, order: &[usize]) -> (Vec<usize>, Vec<BTreeMap<usize, Rational>>) {
    let mut pivots: Vec<usize> = Vec::new();
    let mut reduced: Vec<BTreeMap<usize, Rational>> = Vec::new();
    for &c in order {
        let Some(pos) = rows.iter().position(|r| r.contains_key(&c)) else {
            continue;
        };
        let mut prow = rows.swap_remove(pos);
        let inv = Rational::one() / &prow[&c];
        for v in prow.values_mut() {
            *v *= &inv;
        }
        let eliminate = |r: &mut BTreeMap<usize, Rational>| {
            if let Some(f) = r.get(&c).cloned() {
                for (k, v) in &prow {
                    let e = r.entry(*k).or_insert_with(Rational::zero);
                    *e -= v * &f;
                    if e.is_zero() {
                        r.remove(k);
                    }
                }
            }
        };
        for r in rows.iter_mut() {
            eliminate(r);
        }
        for r in reduced.iter_mut() {
            eliminate(r);
        }
        rows.retain(|r| !r.is_empty());
        pivots.push(c);
        reduced.push(prow);
    }
    (pivots, reduced)
}

fn matrix_rows(m: &SparseMatrix) -> Vec<BTreeMap<usize, Rational>> {
    let mut rows = vec![BTreeMap::new(); m.rows];
    for (j, col) in m.columns.iter().enumerate() {
        for (i, v) in col {
            rows[*i].insert(j, v.clone());
        }
    }
    rows.into_iter().filter(|r: &BTreeMap<usize, Rational>| !r.is_empty()).collect()
}

/// A basis of the right kernel `{v : m·v = 0}`, one vector per free column.
pub fn kernel_basis(m: &SparseMatrix) -> Vec<Vec<Rational>> {
    let order: Vec<usize> = (0..m.cols).collect();
    let (pivots, reduced) = rref(matrix_rows(m), &order);
    let pivot_set: BTreeSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in (0..m.cols).filter(|c| !pivot_set.contains(c)) {
        let mut v = vec![Rational::zero(); m.cols];
        v[free] = Rational::one();
        for (p, row) in pivots.iter().zip(&reduced) {
            if let Some(a) = row.get(&free) {
                v[*p] = -a.clone();
            }
        }
        basis.push(v);
    }
    basis
}

/// `dim ker(d_out) − rank(d_in)` for a three-term piece `· → V → ·`.
pub fn homology_dim(d_in: &SparseMatrix, d_out: &SparseMatrix) -> Result<usize> {
    if d_in.rows != d_out.cols {
        return Err(Error::DimensionMismatch(format!(
            "d_in maps into dimension {} but d_out leaves dimension {}",
            d_in.rows, d_out.cols
        )));
    }
    if !d_out.mul(d_in)?.is_zero() {
        return Err(Error::CompositionNotZero);
    }
    Ok(d_out.cols - rank(d_out) - rank(d_in))
}

/// Rank of the map induced on homology by `f: C → D` at one degree.
///
/// `c_out` is the differential leaving `C_d`, `d_in` the differential
/// entering `D_{d'}`, and `f` the component `C_d → D_{d'}`.
pub fn induced_rank(c_out: &SparseMatrix, f: &SparseMatrix, d_in: &SparseMatrix) -> Result<usize> {
    let cycles = kernel_basis(c_out);
    let fz: Vec<Vec<Rational>> = cycles.iter().map(|z| f.apply(z)).collect();
    let fz = SparseMatrix::from_vectors(f.rows(), &fz);
    let joined = fz.hcat(d_in)?;
    Ok(rank(&joined) - rank(d_in))
}

/// A quotient `V / span(relations)` with a canonical complement basis.
///
/// Coordinates are taken in a fixed priority order so that pivots land on the
/// largest-indexed basis vectors; the surviving (non-pivot) vectors are the
/// smallest ones and serve as class representatives.
#[derive(Clone, Debug)]
pub struct QuotientSpace {
    dim: usize,
    pivots: Vec<usize>,
    reduced: Vec<BTreeMap<usize, Rational>>,
    reps: Vec<usize>,
    rep_index: BTreeMap<usize, usize>,
}

impl QuotientSpace {
    pub fn new(dim: usize, relations: &[Vec<(usize, Rational)>]) -> Self {
        let rows: Vec<BTreeMap<usize, Rational>> = relations
            .iter()
            .map(|r| {
                let mut m = BTreeMap::new();
                for (i, v) in r {
                    let e = m.entry(*i).or_insert_with(Rational::zero);
                    *e += v.clone();
                }
                m.retain(|_, v: &mut Rational| !v.is_zero());
                m
            })
            .filter(|m| !m.is_empty())
            .collect();
        let order: Vec<usize> = (0..dim).rev().collect();
        let (pivots, reduced) = rref(rows, &order);
        let pivot_set: BTreeSet<usize> = pivots.iter().copied().collect();
        let reps: Vec<usize> = (0..dim).filter(|i| !pivot_set.contains(i)).collect();
        let rep_index = reps.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        QuotientSpace { dim, pivots, reduced, reps, rep_index }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    /// Ambient indices of the class representatives.
    pub fn representatives(&self) -> &[usize] {
        &self.reps
    }

    /// Coordinates of the class of ambient basis vector `i` in the
    /// representative basis.
    pub fn project_basis(&self, i: usize) -> Vec<(usize, Rational)> {
        if let Some(&k) = self.rep_index.get(&i) {
            return vec![(k, Rational::one())];
        }
        let pos = self.pivots.iter().position(|&p| p == i).expect("pivot");
        // pivot row: e_i + Σ a_j e_j ≡ 0, so e_i ≡ −Σ a_j e_j over non-pivots.
        self.reduced[pos]
            .iter()
            .filter(|(j, _)| **j != i)
            .map(|(j, a)| (self.rep_index[j], -a.clone()))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&SparseMatrix::zeros(0, 0)), 0);
        assert_eq!(rank(&SparseMatrix::identity(2)), 2);
        assert_eq!(rank(&SparseMatrix::from_dense(&[vec![1, 2], vec![2, 4]])), 1);
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&SparseMatrix::identity(3)).is_empty());
        assert_eq!(kernel_basis(&SparseMatrix::zeros(2, 3)).len(), 3);
        let k = kernel_basis(&SparseMatrix::from_dense(&[vec![1, 1]]));
        assert_eq!(k.len(), 1);
        assert_eq!(k[0][0], -k[0][1].clone());
        assert!(!k[0][0].is_zero());
    }

    #[test]
    fn homology_examples() {
        let z_in = SparseMatrix::zeros(2, 0);
        let z_out = SparseMatrix::zeros(0, 2);
        assert_eq!(homology_dim(&z_in, &z_out).unwrap(), 2);
        assert_eq!(homology_dim(&SparseMatrix::identity(2), &SparseMatrix::zeros(0, 2)).unwrap(), 0);
        // ℚ → ℚ³ → ℚ: d_in = e1, d_out = (0,1,0) kills e1 and e3 ⇒ ker 2, im 1.
        let d_in = SparseMatrix::from_dense(&[vec![1], vec![0], vec![0]]);
        let d_out = SparseMatrix::from_dense(&[vec![0, 1, 0]]);
        assert_eq!(homology_dim(&d_in, &d_out).unwrap(), 1);
    }

    #[test]
    fn homology_errors() {
        let d_in = SparseMatrix::identity(2);
        let d_out = SparseMatrix::identity(2);
        assert!(matches!(homology_dim(&d_in, &d_out), Err(Error::CompositionNotZero)));
        let bad = SparseMatrix::zeros(1, 3);
        assert!(matches!(homology_dim(&d_in, &bad), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn quotient_projects_relations_to_zero() {
        // V = ℚ³, relation e2 − e0, e1 + e2.
        let q = QuotientSpace::new(3, &[vec![(2, rat(1)), (0, rat(-1))], vec![(1, rat(1)), (2, rat(1))]]);
        assert_eq!(q.representatives(), &[0]);
        assert_eq!(q.project_basis(2), vec![(0, rat(1))]);
        assert_eq!(q.project_basis(1), vec![(0, rat(-1))]);
    }

    fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
            prop::collection::vec(prop::collection::vec(-2i64..3, c), r)
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(rows in small_matrix()) {
            let m = SparseMatrix::from_dense(&rows);
            let k = kernel_basis(&m);
            prop_assert_eq!(rank(&m) + k.len(), m.cols());
            for v in &k {
                prop_assert!(m.apply(v).iter().all(|x| x.is_zero()));
            }
            prop_assert_eq!(rank(&m), rank_reversed(&m));
            prop_assert_eq!(rank(&m), rank(&m.transpose()));
        }

        #[test]
        fn homology_invariant_under_base_change(
            a in prop::collection::vec(-2i64..3, 3),
            seed in prop::collection::vec(-3i64..4, 9),
        ) {
            // d_in: ℚ → ℚ³ spanned by a, d_out: ℚ³ → ℚ annihilating a.
            let d_in = SparseMatrix::from_dense(&[vec![a[0]], vec![a[1]], vec![a[2]]]);
            let perp = [a[1], -a[0], 0];
            let d_out = SparseMatrix::from_dense(&[perp.to_vec()]);
            let h = homology_dim(&d_in, &d_out).unwrap();
            // Unipotent change of basis P = I + strictly-lower(seed); P⁻¹ exact.
            let mut p = vec![vec![0i64; 3]; 3];
            for i in 0..3 {
                for j in 0..3 {
                    p[i][j] = if i == j { 1 } else if i > j { seed[3 * i + j] } else { 0 };
                }
            }
            let pm = SparseMatrix::from_dense(&p);
            let pinv = {
                // Solve column by column via kernel of [P | -e_k].
                let mut cols = Vec::new();
                for k in 0..3 {
                    let mut aug = p.clone();
                    for (i, row) in aug.iter_mut().enumerate() {
                        row.push(if i == k { -1 } else { 0 });
                    }
                    let ker = kernel_basis(&SparseMatrix::from_dense(&aug));
                    let v = &ker[0];
                    let scale = v[3].clone();
                    cols.push((0..3).map(|i| &v[i] / &scale).collect::<Vec<_>>());
                }
                SparseMatrix::from_vectors(3, &cols)
            };
            let d_in2 = pm.mul(&d_in).unwrap().scale(&rat(2));
            let d_out2 = d_out.mul(&pinv).unwrap().scale(&rat(-3));
            prop_assert_eq!(homology_dim(&d_in2, &d_out2).unwrap(), h);
        }
    }
}
