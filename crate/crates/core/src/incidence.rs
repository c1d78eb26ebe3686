//! Transitive relations on `1..=n`, the incidence algebras they span, and the
//! map `φ_Q : FQ -> M_n(F)` sending a path to the matrix unit of its
//! endpoints.
//!
//! A relation here is only required to be transitive. It need not be
//! reflexive (`e1, α` on `1 -> 2` gives no `(2,2)`) or antisymmetric (an
//! oriented cycle gives the full relation).

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{usage, Error, Result};
use crate::quiver::{PathAlgebraElement, PathSet, Quiver, Vertex};
use crate::Rational;

/// A transitive relation on `1..=n`, stored as a boolean matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TransitiveRelation {
    n: usize,
    related: Vec<bool>,
}

impl TransitiveRelation {
    pub fn empty(n: usize) -> Self {
        Self { n, related: vec![false; n * n] }
    }

    pub fn full(n: usize) -> Self {
        Self { n, related: vec![true; n * n] }
    }

    /// Accepts `pairs` only if they already form a transitive relation.
    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self> {
        let rel = Self::raw(n, pairs)?;
        if let Some((i, j, k)) = rel.transitivity_violation() {
            return usage(format!("not transitive: ({i},{j}) and ({j},{k}) present but ({i},{k}) missing"));
        }
        Ok(rel)
    }

    /// The least transitive relation containing `pairs` (Warshall).
    pub fn closure_of(n: usize, pairs: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self> {
        let mut rel = Self::raw(n, pairs)?;
        for k in 0..n {
            for i in 0..n {
                if !rel.related[i * n + k] {
                    continue;
                }
                for j in 0..n {
                    if rel.related[k * n + j] {
                        rel.related[i * n + j] = true;
                    }
                }
            }
        }
        Ok(rel)
    }

    fn raw(n: usize, pairs: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self> {
        let mut rel = Self::empty(n);
        for (i, j) in pairs {
            if i == 0 || j == 0 || i > n || j > n {
                return usage(format!("pair ({i},{j}) outside 1..={n}"));
            }
            rel.related[(i - 1) * n + (j - 1)] = true;
        }
        Ok(rel)
    }

    /// `i < j` iff some product of members of `pi` runs from `i` to `j`.
    ///
    /// Endpoint pairs compose exactly when paths do, so the transitive
    /// closure of the generators' endpoints needs no length bound.
    pub fn from_pi(q: &Quiver, pi: &PathSet) -> Self {
        Self::closure_of(q.vertex_count(), pi.paths().iter().map(|p| (p.source(), p.target())))
            .expect("paths of a validated quiver have in-range endpoints")
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn contains(&self, i: Vertex, j: Vertex) -> bool {
        i >= 1 && j >= 1 && i <= self.n && j <= self.n && self.related[(i - 1) * self.n + (j - 1)]
    }

    /// Pairs in row-major order.
    pub fn pairs(&self) -> Vec<(Vertex, Vertex)> {
        let n = self.n;
        (0..n * n).filter(|&k| self.related[k]).map(|k| (k / n + 1, k % n + 1)).collect()
    }

    pub fn len(&self) -> usize {
        self.related.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.n == other.n && self.related.iter().zip(&other.related).all(|(&a, &b)| !a || b)
    }

    fn transitivity_violation(&self) -> Option<(Vertex, Vertex, Vertex)> {
        for (i, j) in self.pairs() {
            for k in 1..=self.n {
                if self.contains(j, k) && !self.contains(i, k) {
                    return Some((i, j, k));
                }
            }
        }
        None
    }

    /// Relabels vertex `v` as `perm[v - 1]` (1-based images).
    pub fn relabel(&self, perm: &[Vertex]) -> Result<Self> {
        if perm.len() != self.n {
            return usage("relabeling must have one image per vertex");
        }
        let mut seen = vec![false; self.n];
        for &v in perm {
            if v == 0 || v > self.n || std::mem::replace(&mut seen[v - 1], true) {
                return usage("relabeling is not a bijection");
            }
        }
        Self::raw(self.n, self.pairs().into_iter().map(|(i, j)| (perm[i - 1], perm[j - 1])))
    }

    /// Lexicographically smallest adjacency matrix over all relabelings.
    /// Exponential in `n`; intended for `n <= 8`.
    pub fn canonical_form(&self) -> Vec<bool> {
        let mut perm: Vec<usize> = (1..=self.n).collect();
        let mut best = self.related.clone();
        loop {
            let candidate = self.relabel(&perm).expect("valid permutation").related;
            if candidate < best {
                best = candidate;
            }
            if !next_permutation(&mut perm) {
                break;
            }
        }
        best
    }

    /// Rows of `*` (related) and `.` (not related).
    pub fn render(&self) -> String {
        let mut out = String::new();
        for i in 0..self.n {
            for j in 0..self.n {
                out.push(if self.related[i * self.n + j] { '*' } else { '.' });
            }
            out.push('\n');
        }
        out
    }

    /// Parses the `render` format back.
    pub fn parse(text: &str) -> Result<Self> {
        let rows: Vec<&str> = text.lines().map(str::trim).filter(|l| !l.is_empty()).collect();
        let n = rows.len();
        let mut pairs = Vec::new();
        for (i, row) in rows.iter().enumerate() {
            if row.chars().count() != n {
                return usage(format!("pattern row {} has length {}, expected {n}", i + 1, row.chars().count()));
            }
            for (j, c) in row.chars().enumerate() {
                match c {
                    '*' => pairs.push((i + 1, j + 1)),
                    '.' => {}
                    other => return usage(format!("unexpected pattern character {other:?}")),
                }
            }
        }
        Self::from_pairs(n, pairs)
    }
}

pub(crate) fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = v.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = v.iter().rposition(|&x| x > v[i]).unwrap();
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

/// An element of an incidence algebra: exact entries on a sparse support.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceElement {
    n: usize,
    entries: BTreeMap<(Vertex, Vertex), Rational>,
}

impl IncidenceElement {
    pub fn zero(n: usize) -> Self {
        Self { n, entries: BTreeMap::new() }
    }

    /// The matrix unit `e_{ij}`.
    pub fn unit(n: usize, i: Vertex, j: Vertex) -> Self {
        Self::from_terms(n, [((i, j), Rational::from_integer(1.into()))])
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = ((Vertex, Vertex), Rational)>) -> Self {
        let mut out = Self::zero(n);
        for (ij, c) in terms {
            out.add_entry(ij, c);
        }
        out
    }

    fn add_entry(&mut self, ij: (Vertex, Vertex), c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.entries.entry(ij).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.entries.remove(&ij);
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &Rational) {
        for (&ij, a) in &other.entries {
            self.add_entry(ij, a * c);
        }
    }

    pub fn entry(&self, i: Vertex, j: Vertex) -> Rational {
        self.entries.get(&(i, j)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(Vertex, Vertex), &Rational)> {
        self.entries.iter()
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_supported_on(&self, rel: &TransitiveRelation) -> bool {
        self.n == rel.n && self.entries.keys().all(|&(i, j)| rel.contains(i, j))
    }

    /// Plain matrix product, no support checks.
    pub fn matmul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.n);
        for (&(i, k), a) in &self.entries {
            for (&(k2, j), b) in other.entries.range((k, 0)..=(k, usize::MAX)) {
                debug_assert_eq!(k, k2);
                out.add_entry((i, j), a * b);
            }
        }
        out
    }
}

/// `A_π`: the span of the matrix units on a transitive relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceAlgebra {
    rel: TransitiveRelation,
}

impl IncidenceAlgebra {
    pub fn new(rel: TransitiveRelation) -> Self {
        Self { rel }
    }

    pub fn relation(&self) -> &TransitiveRelation {
        &self.rel
    }

    /// Matrix units of the pattern, in row-major order.
    pub fn units(&self) -> Vec<IncidenceElement> {
        let n = self.rel.n;
        self.rel.pairs().into_iter().map(|(i, j)| IncidenceElement::unit(n, i, j)).collect()
    }

    pub fn check(&self, x: &IncidenceElement) -> Result<()> {
        if !x.is_supported_on(&self.rel) {
            return usage("element is not supported on the pattern");
        }
        Ok(())
    }

    /// Exact product; a result outside the pattern means the pattern was not
    /// transitive and is reported as an invariant failure.
    pub fn multiply(&self, x: &IncidenceElement, y: &IncidenceElement) -> Result<IncidenceElement> {
        self.check(x)?;
        self.check(y)?;
        let out = x.matmul(y);
        if !out.is_supported_on(&self.rel) {
            return Err(Error::Invariant("product left the pattern; relation is not transitive".into()));
        }
        Ok(out)
    }
}

/// `φ_Q`: linear extension of `p ↦ e_{s(p) t(p)}`.
pub fn phi(q: &Quiver, x: &PathAlgebraElement) -> IncidenceElement {
    IncidenceElement::from_terms(
        q.vertex_count(),
        x.terms().map(|(p, c)| ((p.source(), p.target()), c.clone())),
    )
}

/// A chain `v_1 < v_2 < ... < v_k` of distinct vertices with the self-related
/// flag of each vertex.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Chain {
    pub vertices: Vec<Vertex>,
    pub self_related: Vec<bool>,
    pub maximal: bool,
}

impl Chain {
    /// Block word in the `T_1`/`T_0` notation: `T1` for a self-related
    /// vertex, `T0` otherwise.
    pub fn block_word(&self) -> String {
        self.self_related.iter().map(|&s| if s { "T1" } else { "T0" }).collect()
    }

    /// The induced relation on the chain, renumbered `1..=k` in chain order.
    pub fn pattern(&self) -> TransitiveRelation {
        let k = self.vertices.len();
        let mut pairs = Vec::new();
        for a in 0..k {
            if self.self_related[a] {
                pairs.push((a + 1, a + 1));
            }
            for b in a + 1..k {
                pairs.push((a + 1, b + 1));
            }
        }
        TransitiveRelation::from_pairs(k, pairs).expect("chain relations are transitive")
    }
}

impl std::fmt::Display for Chain {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .vertices
            .iter()
            .zip(&self.self_related)
            .map(|(v, &s)| if s { format!("{v}<{v}") } else { v.to_string() })
            .collect();
        write!(f, "{}", parts.join("<"))
    }
}

/// All maximal chains of a relation that is acyclic on distinct vertices.
///
/// Only vertices that occur in some pair take part. Chains are listed in
/// lexicographic order of their vertex sequences.
pub fn maximal_chains(rel: &TransitiveRelation) -> Result<Vec<Chain>> {
    let n = rel.n;
    for i in 1..=n {
        for j in i + 1..=n {
            if rel.contains(i, j) && rel.contains(j, i) {
                return Err(Error::NotChainDecomposable(i, j));
            }
        }
    }
    let active: Vec<Vertex> = (1..=n)
        .filter(|&v| (1..=n).any(|w| rel.contains(v, w) || rel.contains(w, v)))
        .collect();
    let less = |a: Vertex, b: Vertex| a != b && rel.contains(a, b);
    let covers = |a: Vertex, b: Vertex| less(a, b) && !active.iter().any(|&c| less(a, c) && less(c, b));
    let minimal: Vec<Vertex> = active.iter().copied().filter(|&v| !active.iter().any(|&w| less(w, v))).collect();

    let mut chains = Vec::new();
    let mut stack: Vec<Vec<Vertex>> = minimal.into_iter().map(|v| vec![v]).collect();
    while let Some(prefix) = stack.pop() {
        let last = *prefix.last().unwrap();
        let next: Vec<Vertex> = active.iter().copied().filter(|&w| covers(last, w)).collect();
        if next.is_empty() {
            chains.push(Chain {
                self_related: prefix.iter().map(|&v| rel.contains(v, v)).collect(),
                vertices: prefix,
                maximal: true,
            });
        } else {
            for w in next {
                let mut extended = prefix.clone();
                extended.push(w);
                stack.push(extended);
            }
        }
    }
    chains.sort();
    Ok(chains)
}
