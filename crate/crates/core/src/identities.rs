//! Multilinear identity spaces of incidence algebras and multilinear slices
//! of T-ideals.
//!
//! A multilinear `f` is an identity of an algebra spanned by matrix units
//! iff it vanishes on every tuple of units. On a unit tuple each ordered
//! product is a single unit or zero, so `f(u_1, ..., u_m)` has coefficient
//! `Σ_{σ ∈ S} λ_σ` at `e_{ij}`, where `S` is the set of orderings whose
//! product is `e_{ij}`. Each such sector gives one 0/1 constraint row; the
//! identity space is the kernel of all of them.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::error::{usage, Error, Result};
use crate::incidence::{IncidenceElement, TransitiveRelation};
use crate::linalg::{kernel, rref, Row};
use crate::perm::{factorial, rank_of};
use crate::poly::MultilinearPoly;
use crate::subspace::{to_sparse, IdentitySubspace};
use crate::Rational;

/// Size limits; exceeding them is an explicit error, never a truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_degree: usize,
    pub max_tuples: u64,
}

impl Budget {
    pub const IDENTITY_SPACE: Budget = Budget { max_degree: 7, max_tuples: 50_000_000 };
    pub const TIDEAL: Budget = Budget { max_degree: 6, max_tuples: u64::MAX };
}

/// `Id(A) ∩ P_m` for the incidence algebra on `rel`.
pub fn identity_space(rel: &TransitiveRelation, m: usize) -> Result<IdentitySubspace> {
    identity_space_with_budget(rel, m, Budget::IDENTITY_SPACE)
}

pub fn identity_space_with_budget(rel: &TransitiveRelation, m: usize, budget: Budget) -> Result<IdentitySubspace> {
    let rows = unit_constraint_rows(rel, m, budget)?;
    Ok(IdentitySubspace::from_rref(m, kernel(&rows, factorial(m))))
}

/// Distinct sector rows over all unit tuples of `rel`, each a sorted list of
/// permutation ranks.
pub fn unit_constraint_rows(rel: &TransitiveRelation, m: usize, budget: Budget) -> Result<Vec<Row>> {
    if m == 0 {
        return usage("degree must be at least 1");
    }
    let units: Vec<(u8, u8)> = rel.pairs().into_iter().map(|(i, j)| (i as u8, j as u8)).collect();
    let tuples = (units.len() as u64).checked_pow(m as u32).unwrap_or(u64::MAX);
    if m > budget.max_degree || tuples > budget.max_tuples {
        return Err(Error::Resource(format!(
            "identity space at degree {m}: {}! = {} coordinates and {tuples} unit tuples exceed the budget \
             (degree <= {}, tuples <= {})",
            m,
            factorial(m),
            budget.max_degree,
            budget.max_tuples
        )));
    }
    if units.is_empty() {
        return Ok(Vec::new());
    }
    let fact: Vec<u32> = (0..=m).map(|k| factorial(k) as u32).collect();
    let u = units.len();
    // Split on the first coordinate so independent chunks can run in parallel.
    let rows: HashSet<Vec<u32>> = (0..u)
        .into_par_iter()
        .fold(HashSet::new, |mut acc, first| {
            let mut digits = vec![0usize; m];
            digits[0] = first;
            let mut tuple = vec![units[first]; m];
            let mut sectors = SectorCollector::new(m);
            loop {
                for (t, &d) in tuple.iter_mut().zip(&digits) {
                    *t = units[d];
                }
                sectors.collect(&tuple, &fact);
                for row in sectors.drain() {
                    acc.insert(row);
                }
                // Odometer over coordinates 1..m.
                let mut k = m;
                loop {
                    k -= 1;
                    if k == 0 {
                        return acc;
                    }
                    digits[k] += 1;
                    if digits[k] < u {
                        break;
                    }
                    digits[k] = 0;
                }
            }
        })
        .reduce(HashSet::new, |mut a, b| {
            if a.len() < b.len() {
                return b.into_iter().chain(a).collect();
            }
            a.extend(b);
            a
        });
    let mut rows: Vec<Vec<u32>> = rows.into_iter().collect();
    rows.sort_unstable();
    Ok(rows.into_iter().map(Row::Indicator).collect())
}

/// Groups the orderings of one unit tuple by the unit their product equals.
struct SectorCollector {
    m: usize,
    /// Keyed by (source, target) of the product.
    buckets: Vec<((u8, u8), Vec<u32>)>,
}

impl SectorCollector {
    fn new(m: usize) -> Self {
        Self { m, buckets: Vec::new() }
    }

    fn collect(&mut self, tuple: &[(u8, u8)], fact: &[u32]) {
        for start in 0..self.m {
            let (s, t) = tuple[start];
            let rank = start as u32 * fact[self.m - 1];
            self.extend(tuple, fact, 1 << start, s, t, rank, 1);
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn extend(&mut self, tuple: &[(u8, u8)], fact: &[u32], used: u32, s: u8, t: u8, rank: u32, depth: usize) {
        let m = self.m;
        if depth == m {
            match self.buckets.iter_mut().find(|(key, _)| *key == (s, t)) {
                Some((_, ranks)) => ranks.push(rank),
                None => self.buckets.push(((s, t), vec![rank])),
            }
            return;
        }
        for v in 0..m {
            if used & (1 << v) != 0 || tuple[v].0 != t {
                continue;
            }
            let smaller_unused = v as u32 - (used & ((1 << v) - 1)).count_ones();
            let r = rank + smaller_unused * fact[m - 1 - depth];
            self.extend(tuple, fact, used | (1 << v), s, tuple[v].1, r, depth + 1);
        }
    }

    /// Rows in increasing rank order; depth-first search already emits ranks
    /// in lexicographic order.
    fn drain(&mut self) -> impl Iterator<Item = Vec<u32>> + '_ {
        self.buckets.drain(..).map(|(_, ranks)| ranks)
    }
}

/// Evaluates `f` on the units `(e_{i_1 j_1}, ..., e_{i_m j_m})`.
pub fn evaluate_on_units(f: &MultilinearPoly, units: &[(usize, usize)], n: usize) -> Result<IncidenceElement> {
    if units.len() != f.degree() {
        return usage(format!("{} units for a degree-{} polynomial", units.len(), f.degree()));
    }
    let mut out = IncidenceElement::zero(n);
    for (sigma, c) in f.terms() {
        let mut acc: Option<(usize, usize)> = None;
        let mut alive = true;
        for k in 1..=f.degree() {
            let (i, j) = units[sigma.apply(k) - 1];
            acc = match acc {
                None => Some((i, j)),
                Some((s, t)) if t == i => Some((s, j)),
                Some(_) => {
                    alive = false;
                    break;
                }
            };
        }
        if alive {
            let (s, t) = acc.expect("degree >= 1");
            out.add_scaled(&IncidenceElement::unit(n, s, t), c);
        }
    }
    Ok(out)
}

/// A tuple of matrix units together with the value of `f` on it.
pub type UnitWitness = (Vec<(usize, usize)>, IncidenceElement);

/// First unit tuple (in lexicographic order of unit indices) on which `f`
/// does not vanish, with the nonzero value.
pub fn nonvanishing_unit_tuple(
    rel: &TransitiveRelation,
    f: &MultilinearPoly,
) -> Result<Option<UnitWitness>> {
    let units = rel.pairs();
    let m = f.degree();
    if units.is_empty() {
        return Ok(None);
    }
    let mut digits = vec![0usize; m];
    loop {
        let tuple: Vec<(usize, usize)> = digits.iter().map(|&d| units[d]).collect();
        let value = evaluate_on_units(f, &tuple, rel.vertex_count())?;
        if !value.is_zero() {
            return Ok(Some((tuple, value)));
        }
        let mut k = m;
        loop {
            if k == 0 {
                return Ok(None);
            }
            k -= 1;
            digits[k] += 1;
            if digits[k] < units.len() {
                break;
            }
            digits[k] = 0;
        }
    }
}

/// The degree-`m` multilinear component of the T-ideal generated by
/// `generators`.
///
/// Spanned by all `a · g(u_1, ..., u_k) · b` with `a`, `b` possibly empty
/// monomials, each `u_t` a nonempty monomial, and the variables of
/// `a, u_1, ..., u_k, b` being `x_1..x_m` once each.
pub fn tideal_component(generators: &[MultilinearPoly], m: usize) -> Result<IdentitySubspace> {
    tideal_component_with_budget(generators, m, Budget::TIDEAL)
}

pub fn tideal_component_with_budget(
    generators: &[MultilinearPoly],
    m: usize,
    budget: Budget,
) -> Result<IdentitySubspace> {
    if m == 0 {
        return usage("degree must be at least 1");
    }
    if m > budget.max_degree {
        return Err(Error::Resource(format!(
            "T-ideal component at degree {m}: {m}! = {} coordinates exceed the budget (degree <= {})",
            factorial(m),
            budget.max_degree
        )));
    }
    let mut rows: HashSet<Row> = HashSet::new();
    for g in generators {
        let k = g.degree();
        if k > m {
            return usage(format!("generator of degree {k} exceeds target degree {m}"));
        }
        if g.is_zero() {
            continue;
        }
        let g_int = match Row::from_rational(&to_sparse(g)) {
            Row::Integer(e) => e,
            Row::Indicator(_) => unreachable!("from_rational yields integer rows"),
        };
        let g_words: Vec<(Vec<u8>, num_bigint::BigInt)> = g_int
            .into_iter()
            .map(|(r, c)| {
                let sigma = crate::perm::Permutation::unrank(k, r as usize).expect("valid rank");
                (sigma.zero_based().to_vec(), c)
            })
            .collect();
        let mut word: Vec<u8> = (0..m as u8).collect();
        loop {
            for split in compositions(m, k) {
                let row = substitute(&word, &split, &g_words);
                if !row.is_empty() {
                    rows.insert(Row::Integer(row));
                }
            }
            if !next_word(&mut word) {
                break;
            }
        }
    }
    let rows: Vec<Row> = rows.into_iter().collect();
    Ok(IdentitySubspace::from_rref(m, rref(&rows, factorial(m))))
}

/// Lengths `(|a|, |u_1|, ..., |u_k|, |b|)` summing to `m` with every `u_t`
/// nonempty.
fn compositions(m: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(remaining: usize, parts_left: usize, k: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts_left == 0 {
            if remaining == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        let idx = prefix.len();
        let min = if idx >= 1 && idx <= k { 1 } else { 0 };
        for len in min..=remaining {
            prefix.push(len);
            go(remaining - len, parts_left - 1, k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(m, k + 2, k, &mut Vec::new(), &mut out);
    out
}

fn substitute(word: &[u8], split: &[usize], g_words: &[(Vec<u8>, num_bigint::BigInt)]) -> Vec<(u32, num_bigint::BigInt)> {
    let k = split.len() - 2;
    let mut offsets = Vec::with_capacity(split.len() + 1);
    let mut acc = 0;
    for &len in split {
        offsets.push(acc);
        acc += len;
    }
    let block = |t: usize| &word[offsets[t]..offsets[t] + split[t]];
    let mut out: Vec<(u32, num_bigint::BigInt)> = Vec::with_capacity(g_words.len());
    let mut buf = Vec::with_capacity(word.len());
    for (sigma, c) in g_words {
        buf.clear();
        buf.extend_from_slice(block(0));
        for &s in sigma {
            buf.extend_from_slice(block(1 + s as usize));
        }
        buf.extend_from_slice(block(k + 1));
        out.push((rank_of(&buf) as u32, c.clone()));
    }
    out.sort_by_key(|(r, _)| *r);
    // Distinct orderings of the blocks give distinct monomials, so no
    // coefficients merge.
    debug_assert!(out.windows(2).all(|w| w[0].0 != w[1].0));
    out
}

fn next_word(v: &mut [u8]) -> bool {
    let Some(i) = v.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = v.iter().rposition(|&x| x > v[i]).unwrap();
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

/// Sum of `λ_σ` over each sector of a unit tuple, keyed by the product unit.
pub fn unit_sector_sums(f: &MultilinearPoly, units: &[(usize, usize)]) -> Vec<((usize, usize), Rational)> {
    let mut out: Vec<((usize, usize), Rational)> = Vec::new();
    for (sigma, c) in f.terms() {
        let mut acc: Option<(usize, usize)> = None;
        let mut alive = true;
        for k in 1..=f.degree() {
            let (i, j) = units[sigma.apply(k) - 1];
            acc = match acc {
                None => Some((i, j)),
                Some((s, t)) if t == i => Some((s, j)),
                Some(_) => {
                    alive = false;
                    break;
                }
            };
        }
        if let (true, Some(key)) = (alive, acc) {
            match out.iter_mut().find(|(k, _)| *k == key) {
                Some((_, sum)) => *sum += c,
                None => out.push((key, c.clone())),
            }
        }
    }
    out.sort_by_key(|(k, _)| *k);
    out
}

/// `true` iff every sector sum of `f` vanishes on every unit tuple of `rel`.
pub fn all_unit_sector_sums_vanish(rel: &TransitiveRelation, f: &MultilinearPoly) -> Result<bool> {
    Ok(nonvanishing_unit_tuple(rel, f)?.is_none())
}
