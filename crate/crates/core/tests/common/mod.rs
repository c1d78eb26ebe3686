#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use num_traits::{One, Zero};
use quiverpi::{MultilinearPoly, Path, PathSet, Permutation, Quiver, Rational, TransitiveRelation};

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn example1() -> (Quiver, PathSet) {
    let q = Quiver::with_names(2, [("α", 1, 2)]).unwrap();
    let pi = PathSet::new(&q, [Path::Trivial(1), q.path(&[0]).unwrap()]).unwrap();
    (q, pi)
}

pub fn example2() -> Quiver {
    Quiver::with_names(3, [("γ", 1, 1), ("α1", 1, 2), ("β", 2, 2), ("α2", 3, 2), ("δ", 3, 3)]).unwrap()
}

/// The generators `e1, e2, γ, α1, β, α2` of Example 3.
pub fn example3_pi(q: &Quiver) -> PathSet {
    let a = |name: &str| q.path(&[q.arrow_by_name(name).unwrap()]).unwrap();
    PathSet::new(q, [Path::Trivial(1), Path::Trivial(2), a("γ"), a("α1"), a("β"), a("α2")]).unwrap()
}

pub fn two_loops() -> Quiver {
    Quiver::with_names(1, [("p", 1, 1), ("q", 1, 1)]).unwrap()
}

/// Five small quivers covering loops, cycles, parallel arrows and a
/// non-PI vertex.
pub fn fixture_quivers() -> Vec<Quiver> {
    vec![
        example1().0,
        example2(),
        Quiver::cycle(2).unwrap(),
        Quiver::new(3, &[(1, 2), (1, 2), (2, 3), (3, 1)]).unwrap(),
        two_loops(),
    ]
}

/// Every transitive relation on `n` vertices, by brute force over all
/// subsets of pairs.
pub fn all_transitive_relations(n: usize) -> Vec<TransitiveRelation> {
    let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|i| (1..=n).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    for mask in 0u32..(1 << pairs.len()) {
        let chosen: Vec<(usize, usize)> =
            pairs.iter().enumerate().filter(|(k, _)| mask & (1 << k) != 0).map(|(_, p)| *p).collect();
        if let Ok(rel) = TransitiveRelation::from_pairs(n, chosen) {
            out.push(rel);
        }
    }
    out
}

/// Dense `n×n` matrix product.
pub fn matmul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = a.len();
    let mut c = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                c[i][j] += &a[i][k] * &b[k][j];
            }
        }
    }
    c
}

pub fn unit_matrix(n: usize, i: usize, j: usize) -> Vec<Vec<Rational>> {
    let mut m = vec![vec![Rational::zero(); n]; n];
    m[i - 1][j - 1] = Rational::one();
    m
}

/// `f(xs)` by multiplying dense matrices in every monomial order.
pub fn dense_evaluate(f: &MultilinearPoly, xs: &[Vec<Vec<Rational>>]) -> Vec<Vec<Rational>> {
    let n = xs[0].len();
    let mut out = vec![vec![Rational::zero(); n]; n];
    for (sigma, c) in f.terms() {
        let imgs = sigma.images();
        let mut acc = xs[imgs[0] - 1].clone();
        for &i in &imgs[1..] {
            acc = matmul(&acc, &xs[i - 1]);
        }
        for r in 0..n {
            for s in 0..n {
                out[r][s] += c * &acc[r][s];
            }
        }
    }
    out
}

/// Reduced row echelon form by textbook rational Gauss-Jordan.
pub fn dense_rref(mut rows: Vec<Vec<Rational>>, ncols: usize) -> Vec<Vec<Rational>> {
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&k| !rows[k][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot = rows[r].clone();
        for (k, row) in rows.iter_mut().enumerate() {
            if k != r && !row[c].is_zero() {
                let factor = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x -= &factor * y;
                }
            }
        }
        r += 1;
    }
    rows.truncate(r);
    rows
}

/// Kernel of `rows` as a dense reduced echelon basis.
pub fn dense_kernel(rows: Vec<Vec<Rational>>, ncols: usize) -> Vec<Vec<Rational>> {
    let r = dense_rref(rows, ncols);
    let pivots: Vec<usize> = r.iter().map(|row| row.iter().position(|x| !x.is_zero()).unwrap()).collect();
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rational::zero(); ncols];
        v[free] = Rational::one();
        for (row, &p) in r.iter().zip(&pivots) {
            v[p] = -row[free].clone();
        }
        basis.push(v);
    }
    dense_rref(basis, ncols)
}

/// The identity space of `rel` in degree `m`, computed from scratch: one
/// row per (unit tuple, matrix entry), no deduplication, dense elimination.
pub fn dense_identity_space(rel: &TransitiveRelation, m: usize) -> Vec<Vec<Rational>> {
    let n = rel.vertex_count();
    let units = rel.pairs();
    let perms: Vec<Permutation> = Permutation::all(m).collect();
    let ncols = perms.len();
    if units.is_empty() {
        return dense_rref((0..ncols).map(|k| basis_vector(ncols, k)).collect(), ncols);
    }
    let mut rows = Vec::new();
    let mut digits = vec![0usize; m];
    loop {
        let mats: Vec<_> = digits.iter().map(|&d| int_unit_matrix(n, units[d].0, units[d].1)).collect();
        let products: Vec<_> = perms
            .iter()
            .map(|s| {
                let imgs = s.images();
                imgs[1..].iter().fold(mats[imgs[0] - 1].clone(), |acc, &i| int_matmul(&acc, &mats[i - 1]))
            })
            .collect();
        for r in 0..n {
            for s in 0..n {
                let row: Vec<i64> = products.iter().map(|p| p[r][s]).collect();
                if row.iter().any(|&x| x != 0) {
                    rows.push(row.into_iter().map(int).collect::<Vec<_>>());
                }
            }
        }
        let mut k = m;
        let done = loop {
            if k == 0 {
                break true;
            }
            k -= 1;
            digits[k] += 1;
            if digits[k] < units.len() {
                break false;
            }
            digits[k] = 0;
        };
        if done {
            break;
        }
    }
    dense_kernel(rows, ncols)
}

fn int_unit_matrix(n: usize, i: usize, j: usize) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0; n]; n];
    m[i - 1][j - 1] = 1;
    m
}

fn int_matmul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

pub fn basis_vector(n: usize, k: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[k] = Rational::one();
    v
}

pub fn to_dense_rows(polys: &[MultilinearPoly]) -> Vec<Vec<Rational>> {
    polys.iter().map(|f| f.to_dense()).collect()
}

/// Simple oriented cycles as sets of arrow ids.
pub fn simple_cycles(n: usize, arrows: &[(usize, usize)]) -> Vec<(BTreeSet<usize>, BTreeSet<usize>)> {
    let mut found: HashSet<BTreeSet<usize>> = HashSet::new();
    let mut out = Vec::new();
    fn dfs(
        start: usize,
        at: usize,
        arrows: &[(usize, usize)],
        used_vertices: &mut Vec<usize>,
        used_arrows: &mut Vec<usize>,
        found: &mut HashSet<BTreeSet<usize>>,
        out: &mut Vec<(BTreeSet<usize>, BTreeSet<usize>)>,
    ) {
        for (id, &(s, t)) in arrows.iter().enumerate() {
            if s != at {
                continue;
            }
            used_arrows.push(id);
            if t == start {
                let key: BTreeSet<usize> = used_arrows.iter().copied().collect();
                if found.insert(key.clone()) {
                    out.push((key, used_vertices.iter().copied().collect()));
                }
            } else if !used_vertices.contains(&t) {
                used_vertices.push(t);
                dfs(start, t, arrows, used_vertices, used_arrows, found, out);
                used_vertices.pop();
            }
            used_arrows.pop();
        }
    }
    for v in 1..=n {
        dfs(v, v, arrows, &mut vec![v], &mut Vec::new(), &mut found, &mut out);
    }
    out
}

fn multisets(slots: usize, k: usize, from: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if cur.len() == k {
        out.push(cur.clone());
        return;
    }
    for s in from..slots {
        cur.push(s);
        multisets(slots, k, s, cur, out);
        cur.pop();
    }
}

/// Every multiset of `k` arrows on `n` vertices, as (source, target) lists.
pub fn all_arrow_multisets(n: usize, k: usize) -> Vec<Vec<(usize, usize)>> {
    let slots: Vec<(usize, usize)> = (1..=n).flat_map(|i| (1..=n).map(move |j| (i, j))).collect();
    let mut all = Vec::new();
    multisets(slots.len(), k, 0, &mut Vec::new(), &mut all);
    all.into_iter().map(|c| c.iter().map(|&s| slots[s]).collect()).collect()
}

/// The oracle form of the PI test: no vertex lies on two distinct simple
/// cycles. Returns the offending vertices.
pub fn vertices_on_two_cycles(n: usize, arrows: &[(usize, usize)]) -> Vec<usize> {
    let cycles = simple_cycles(n, arrows);
    (1..=n).filter(|v| cycles.iter().filter(|(_, vs)| vs.contains(v)).count() >= 2).collect()
}
