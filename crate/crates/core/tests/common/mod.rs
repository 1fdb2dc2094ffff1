//! Brute-force oracles that share no code with the engine.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

type Q = BigRational;

/// Rank by dense Gaussian elimination over Q.
pub fn dense_rank(mut rows: Vec<Vec<Q>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else { continue };
        rows.swap(rank, p);
        let pivot = rows[rank][c].clone();
        for r in 0..rows.len() {
            if r != rank && !rows[r][c].is_zero() {
                let f = rows[r][c].clone() / &pivot;
                for k in c..ncols {
                    let v = rows[rank][k].clone() * &f;
                    rows[r][k] -= v;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Normalized Hochschild chains of `k⟨x⟩` (x in degree 0, weight 1) of
/// length `n + 1` and weight `w`: exponent vectors `(k0, k1, …, kn)` with
/// `k0 ≥ 0`, `ki ≥ 1`.
fn free_chains(n: usize, w: usize) -> Vec<Vec<usize>> {
    fn go(left: usize, slots: usize, first: bool, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if slots == 0 {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let lo = if first { 0 } else { 1 };
        for k in lo..=left {
            cur.push(k);
            go(left - k, slots - 1, false, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(w, n + 1, true, &mut Vec::new(), &mut out);
    out
}

/// The Hochschild boundary on `k⟨x⟩`. With every entry in degree 0 the
/// faces carry the plain signs `(−1)^i`.
fn free_b(c: &[usize]) -> BTreeMap<Vec<usize>, i64> {
    let n = c.len() - 1;
    let mut out = BTreeMap::new();
    for i in 0..n {
        let mut f = c.to_vec();
        let merged = f[i] + f[i + 1];
        f[i] = merged;
        f.remove(i + 1);
        *out.entry(f).or_insert(0) += if i % 2 == 0 { 1 } else { -1 };
    }
    let mut f = c.to_vec();
    let last = f.pop().unwrap();
    f[0] += last;
    *out.entry(f).or_insert(0) += if n % 2 == 0 { 1 } else { -1 };
    out.retain(|_, v| *v != 0);
    out
}

fn free_b_rank(n: usize, w: usize) -> usize {
    if n == 0 {
        return 0;
    }
    let src = free_chains(n, w);
    let tgt: BTreeMap<Vec<usize>, usize> = free_chains(n - 1, w).into_iter().enumerate().map(|(i, c)| (c, i)).collect();
    let rows = src
        .iter()
        .map(|c| {
            let mut row = vec![Q::zero(); tgt.len()];
            for (k, v) in free_b(c) {
                row[tgt[&k]] = Q::from_integer(BigInt::from(v));
            }
            row
        })
        .collect();
    dense_rank(rows)
}

/// `dim HH_n(k⟨x⟩)` in weight `w`, by brute force.
pub fn free_hochschild_dim(n: usize, w: usize) -> usize {
    free_chains(n, w).len() - free_b_rank(n, w) - free_b_rank(n + 1, w)
}

/// The closed form: `HH_0` and `HH_1` are one-dimensional in each weight
/// `w ≥ 1` (spanned by `x^w` and `x^{w-1}[x]`); `HH_0 = k` at weight 0.
pub fn free_hochschild_closed(n: i64, w: u32) -> usize {
    match (n, w) {
        (0, 0) => 1,
        (0 | 1, w) if w >= 1 => 1,
        _ => 0,
    }
}

/// Cyclic words of length `w` over degree-0 letters `0..alphabet`, with
/// the rotation sign trivially `+1`: the number of necklaces.
pub fn necklaces(alphabet: usize, w: usize) -> usize {
    if w == 0 {
        return 1;
    }
    let mut seen = BTreeSet::new();
    let total = alphabet.pow(w as u32);
    for mut code in 0..total {
        let mut word = Vec::with_capacity(w);
        for _ in 0..w {
            word.push(code % alphabet);
            code /= alphabet;
        }
        let canon = (0..w).map(|r| [&word[r..], &word[..r]].concat()).min().unwrap();
        seen.insert(canon);
    }
    seen.len()
}

/// `H(cone[k𝒪 → A_♮])` for a free algebra on degree-0 generators with zero
/// differential on one object: `A_♮` is concentrated in degree 0, and the
/// cone over the unit cancels weight 0.
pub fn free_reduced_natural_dim(alphabet: usize, d: i64, w: u32) -> usize {
    if d == 0 && w >= 1 {
        necklaces(alphabet, w as usize)
    } else {
        0
    }
}
