//! Quivers, paths, path sets and the path algebra `FQ`.
//!
//! Vertices are numbered `1..=n`. Arrows are identified by their dense index
//! `0..a`. A [`Path`] is either the trivial path `e_i` or a nonempty
//! composable arrow sequence; the product of two paths is their concatenation
//! when the first ends where the second starts and zero otherwise. Zero is
//! represented as `None` by [`Quiver::compose`], never as a trivial path.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use num_traits::{One, Zero};
use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;

use crate::error::{usage, Result};
use crate::Rational;

pub type Vertex = usize;
pub type ArrowId = usize;

/// Default truncation bound for closure enumeration.
pub const DEFAULT_MAX_LEN: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub source: Vertex,
    pub target: Vertex,
    pub name: String,
}

/// A finite quiver. Parallel arrows and loops are allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Quiver {
    n: usize,
    arrows: Vec<Arrow>,
}

impl Quiver {
    /// Builds a quiver with auto-named arrows `a0, a1, ...`.
    pub fn new(n: usize, arrows: &[(Vertex, Vertex)]) -> Result<Self> {
        let named = arrows
            .iter()
            .enumerate()
            .map(|(id, &(s, t))| (format!("a{id}"), s, t))
            .collect::<Vec<_>>();
        Self::with_names(n, named)
    }

    pub fn with_names<S: Into<String>>(
        n: usize,
        arrows: impl IntoIterator<Item = (S, Vertex, Vertex)>,
    ) -> Result<Self> {
        if n == 0 {
            return usage("a quiver needs at least one vertex");
        }
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for (id, (name, source, target)) in arrows.into_iter().enumerate() {
            let name = name.into();
            for v in [source, target] {
                if v == 0 || v > n {
                    return usage(format!("arrow {id} ({name}) uses vertex {v} outside 1..={n}"));
                }
            }
            if !seen.insert(name.clone()) {
                return usage(format!("duplicate arrow name {name:?}"));
            }
            out.push(Arrow { source, target, name });
        }
        Ok(Self { n, arrows: out })
    }

    /// The oriented cycle `C_n`: arrows `i -> i+1` and `n -> 1`.
    pub fn cycle(n: usize) -> Result<Self> {
        let arrows = (1..=n).map(|i| (i, i % n + 1)).collect::<Vec<_>>();
        Self::new(n, &arrows)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, id: ArrowId) -> &Arrow {
        &self.arrows[id]
    }

    pub fn arrow_by_name(&self, name: &str) -> Option<ArrowId> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        1..=self.n
    }

    pub fn trivial(&self, v: Vertex) -> Result<Path> {
        self.check_vertex(v)?;
        Ok(Path::Trivial(v))
    }

    pub fn arrow_path(&self, id: ArrowId) -> Result<Path> {
        self.path(&[id])
    }

    /// Builds a path from arrow ids in composition order.
    pub fn path(&self, arrows: &[ArrowId]) -> Result<Path> {
        let Some(&first) = arrows.first() else {
            return usage("a nontrivial path needs at least one arrow");
        };
        for (step, w) in arrows.windows(2).enumerate() {
            for &id in w {
                self.check_arrow(id)?;
            }
            if self.arrows[w[0]].target != self.arrows[w[1]].source {
                return usage(format!("non-composable at step {}", step + 2));
            }
        }
        self.check_arrow(first)?;
        Ok(Path::Arrows {
            source: self.arrows[first].source,
            target: self.arrows[*arrows.last().unwrap()].target,
            arrows: arrows.to_vec(),
        })
    }

    /// Checks that `p` is a well-formed path of this quiver.
    pub fn validate(&self, p: &Path) -> Result<()> {
        match p {
            Path::Trivial(v) => self.check_vertex(*v),
            Path::Arrows { arrows, source, target } => {
                let rebuilt = self.path(arrows)?;
                if rebuilt.source() != *source || rebuilt.target() != *target {
                    return usage("path endpoints do not match this quiver");
                }
                Ok(())
            }
        }
    }

    fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v == 0 || v > self.n {
            return usage(format!("vertex {v} outside 1..={}", self.n));
        }
        Ok(())
    }

    fn check_arrow(&self, id: ArrowId) -> Result<()> {
        if id >= self.arrows.len() {
            return usage(format!("arrow id {id} not in this quiver"));
        }
        Ok(())
    }

    /// Product of two paths; `Ok(None)` is the zero of `FQ`.
    pub fn compose(&self, p: &Path, q: &Path) -> Result<Option<Path>> {
        self.validate(p)?;
        self.validate(q)?;
        Ok(compose_unchecked(p, q))
    }

    pub fn one(&self) -> PathAlgebraElement {
        PathAlgebraElement::from_terms(self.vertices().map(|v| (Path::Trivial(v), Rational::one())))
    }

    /// Bilinear extension of [`Quiver::compose`].
    pub fn multiply(&self, x: &PathAlgebraElement, y: &PathAlgebraElement) -> Result<PathAlgebraElement> {
        for p in x.terms.keys().chain(y.terms.keys()) {
            self.validate(p)?;
        }
        Ok(multiply_unchecked(x, y))
    }

    /// Human label: `e3` or arrow names separated by spaces.
    pub fn label(&self, p: &Path) -> String {
        match p {
            Path::Trivial(v) => format!("e{v}"),
            Path::Arrows { arrows, .. } => arrows
                .iter()
                .map(|&a| self.arrows[a].name.as_str())
                .collect::<Vec<_>>()
                .join(" "),
        }
    }

    /// Every path of length at most `max_len`, in canonical order.
    pub fn all_paths(&self, max_len: usize) -> Vec<Path> {
        let mut out: Vec<Path> = self.vertices().map(Path::Trivial).collect();
        let mut layer: Vec<Path> = Vec::new();
        for len in 1..=max_len {
            let next: Vec<Path> = if len == 1 {
                (0..self.arrows.len()).map(|a| self.path(&[a]).unwrap()).collect()
            } else {
                layer
                    .iter()
                    .flat_map(|p| {
                        self.arrows
                            .iter()
                            .enumerate()
                            .filter(move |(_, a)| a.source == p.target())
                            .map(move |(id, _)| p.extend_unchecked(id, self))
                    })
                    .collect()
            };
            out.extend(next.iter().cloned());
            layer = next;
        }
        out.sort();
        out
    }

    /// `π̃` truncated at `max_len`: every path of length at most `max_len`
    /// that is a product of one or more members of `pi`.
    pub fn closure_paths(&self, pi: &PathSet, max_len: usize) -> Vec<Path> {
        let generators: Vec<&Path> = pi.paths().iter().filter(|p| p.len() <= max_len).collect();
        let mut seen: BTreeSet<Path> = generators.iter().map(|p| (*p).clone()).collect();
        let mut frontier: Vec<Path> = seen.iter().cloned().collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for c in &frontier {
                for g in &generators {
                    if c.len() + g.len() > max_len {
                        continue;
                    }
                    if let Some(prod) = compose_unchecked(c, g) {
                        if seen.insert(prod.clone()) {
                            next.push(prod);
                        }
                    }
                }
            }
            frontier = next;
        }
        seen.into_iter().collect()
    }

    /// Closure paths from `i` to `j`.
    pub fn paths_between(&self, pi: &PathSet, i: Vertex, j: Vertex, max_len: usize) -> Result<Vec<Path>> {
        self.check_vertex(i)?;
        self.check_vertex(j)?;
        Ok(self
            .closure_paths(pi, max_len)
            .into_iter()
            .filter(|p| p.source() == i && p.target() == j)
            .collect())
    }

    /// Decides whether `FQ` is PI: every strongly connected component must be
    /// a single loop-free vertex or one simple oriented cycle.
    pub fn pi_status(&self) -> PiStatus {
        let mut g = DiGraph::<(), ()>::new();
        let nodes: Vec<_> = (0..self.n).map(|_| g.add_node(())).collect();
        for a in &self.arrows {
            g.add_edge(nodes[a.source - 1], nodes[a.target - 1], ());
        }
        let mut component = vec![0usize; self.n];
        for (c, scc) in tarjan_scc(&g).into_iter().enumerate() {
            for node in scc {
                component[node.index()] = c;
            }
        }
        // Inside a strongly connected component, a vertex with two outgoing
        // internal arrows lies on two distinct cycles; if every internal
        // out-degree is at most one the component is a single cycle.
        let mut internal_out = vec![0usize; self.n];
        for a in &self.arrows {
            if component[a.source - 1] == component[a.target - 1] {
                internal_out[a.source - 1] += 1;
            }
        }
        let witness = internal_out.iter().position(|&d| d >= 2).map(|i| i + 1);
        PiStatus { is_pi: witness.is_none(), witness }
    }

    pub fn is_pi(&self) -> bool {
        self.pi_status().is_pi
    }

    /// Canonical one-line-per-item text used for hashing.
    pub fn canonical_text(&self) -> String {
        let mut s = format!("vertices {}\n", self.n);
        for a in &self.arrows {
            s.push_str(&format!("arrow {} {} {}\n", a.name, a.source, a.target));
        }
        s
    }
}

/// Result of the PI-quiver test. On failure `witness` is a vertex lying on two
/// distinct oriented cycles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PiStatus {
    pub is_pi: bool,
    pub witness: Option<Vertex>,
}

/// A path in a quiver: the trivial path `e_i`, or composable arrows.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Path {
    Trivial(Vertex),
    Arrows {
        arrows: Vec<ArrowId>,
        source: Vertex,
        target: Vertex,
    },
}

impl Path {
    pub fn source(&self) -> Vertex {
        match self {
            Path::Trivial(v) => *v,
            Path::Arrows { source, .. } => *source,
        }
    }

    pub fn target(&self) -> Vertex {
        match self {
            Path::Trivial(v) => *v,
            Path::Arrows { target, .. } => *target,
        }
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        match self {
            Path::Trivial(_) => 0,
            Path::Arrows { arrows, .. } => arrows.len(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        matches!(self, Path::Trivial(_))
    }

    pub fn arrow_ids(&self) -> &[ArrowId] {
        match self {
            Path::Trivial(_) => &[],
            Path::Arrows { arrows, .. } => arrows,
        }
    }

    fn extend_unchecked(&self, arrow: ArrowId, q: &Quiver) -> Path {
        let mut arrows = self.arrow_ids().to_vec();
        arrows.push(arrow);
        Path::Arrows { arrows, source: self.source(), target: q.arrows[arrow].target }
    }
}

impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| match (self, other) {
            (Path::Trivial(a), Path::Trivial(b)) => a.cmp(b),
            _ => self.arrow_ids().cmp(other.arrow_ids()),
        })
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Path::Trivial(v) => write!(f, "e{v}"),
            Path::Arrows { arrows, .. } => {
                let ids: Vec<String> = arrows.iter().map(|a| format!("a{a}")).collect();
                write!(f, "{}", ids.join("."))
            }
        }
    }
}

/// Concatenation without validating the inputs against a quiver.
pub(crate) fn compose_unchecked(p: &Path, q: &Path) -> Option<Path> {
    if p.target() != q.source() {
        return None;
    }
    Some(match (p, q) {
        (Path::Trivial(_), _) => q.clone(),
        (_, Path::Trivial(_)) => p.clone(),
        (Path::Arrows { arrows: a, source, .. }, Path::Arrows { arrows: b, target, .. }) => {
            let mut arrows = Vec::with_capacity(a.len() + b.len());
            arrows.extend_from_slice(a);
            arrows.extend_from_slice(b);
            Path::Arrows { arrows, source: *source, target: *target }
        }
    })
}

pub(crate) fn multiply_unchecked(x: &PathAlgebraElement, y: &PathAlgebraElement) -> PathAlgebraElement {
    let mut out = PathAlgebraElement::zero();
    for (p, a) in &x.terms {
        for (q, b) in &y.terms {
            if let Some(pq) = compose_unchecked(p, q) {
                out.add_term(pq, a * b);
            }
        }
    }
    out
}

/// The generating set `π`: distinct paths of one quiver.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PathSet {
    paths: Vec<Path>,
}

impl PathSet {
    pub fn new(q: &Quiver, paths: impl IntoIterator<Item = Path>) -> Result<Self> {
        let mut out: Vec<Path> = Vec::new();
        for p in paths {
            q.validate(&p)?;
            if out.contains(&p) {
                return usage(format!("path {} listed twice", q.label(&p)));
            }
            out.push(p);
        }
        Ok(Self { paths: out })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// Every arrow of `q`.
    pub fn arrows(q: &Quiver) -> Self {
        Self { paths: (0..q.arrows().len()).map(|a| q.path(&[a]).unwrap()).collect() }
    }

    /// Arrows plus trivial paths; generates every path of `q`.
    pub fn all(q: &Quiver) -> Self {
        let mut paths: Vec<Path> = q.vertices().map(Path::Trivial).collect();
        paths.extend(Self::arrows(q).paths);
        Self { paths }
    }

    pub fn paths(&self) -> &[Path] {
        &self.paths
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn max_len(&self) -> usize {
        self.paths.iter().map(Path::len).max().unwrap_or(0)
    }
}

/// An element of `FQ`: a finite combination of paths with exact coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PathAlgebraElement {
    terms: BTreeMap<Path, Rational>,
}

impl PathAlgebraElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_path(p: Path) -> Self {
        Self::from_terms([(p, Rational::one())])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Path, Rational)>) -> Self {
        let mut out = Self::zero();
        for (p, c) in terms {
            out.add_term(p, c);
        }
        out
    }

    pub fn add_term(&mut self, p: Path, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(p) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &Rational) {
        for (p, a) in &other.terms {
            self.add_term(p.clone(), a * c);
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_terms(self.terms.iter().map(|(p, a)| (p.clone(), a * c)))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, p: &Path) -> Rational {
        self.terms.get(p).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Path, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

impl std::ops::Add for &PathAlgebraElement {
    type Output = PathAlgebraElement;
    fn add(self, rhs: Self) -> PathAlgebraElement {
        let mut out = self.clone();
        out.add_scaled(rhs, &Rational::one());
        out
    }
}

impl From<Path> for PathAlgebraElement {
    fn from(p: Path) -> Self {
        Self::from_path(p)
    }
}
