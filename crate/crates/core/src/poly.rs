//! Multilinear polynomials `f = Σ_σ λ_σ x_{σ(1)} ... x_{σ(m)}` in the free
//! associative algebra, stored sparsely by permutation rank.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{usage, Result};
use crate::perm::{factorial, rank_of, Permutation, MAX_DEGREE};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultilinearPoly {
    degree: usize,
    terms: BTreeMap<usize, Rational>,
}

impl MultilinearPoly {
    pub fn zero(degree: usize) -> Self {
        Self { degree, terms: BTreeMap::new() }
    }

    /// The monomial `x_{w_1} ... x_{w_m}` for a 1-based word `w`.
    pub fn monomial(word: &[usize]) -> Result<Self> {
        let p = Permutation::from_images(word)?;
        Ok(Self::from_ranks(word.len(), [(p.rank(), Rational::one())]))
    }

    pub fn from_terms(degree: usize, terms: impl IntoIterator<Item = (Permutation, Rational)>) -> Result<Self> {
        let mut out = Self::zero(degree);
        for (p, c) in terms {
            if p.degree() != degree {
                return usage(format!("term of degree {} in a degree-{degree} polynomial", p.degree()));
            }
            out.add_at(p.rank(), c);
        }
        Ok(out)
    }

    pub(crate) fn from_ranks(degree: usize, terms: impl IntoIterator<Item = (usize, Rational)>) -> Self {
        let mut out = Self::zero(degree);
        for (r, c) in terms {
            out.add_at(r, c);
        }
        out
    }

    fn add_at(&mut self, rank: usize, c: Rational) {
        debug_assert!(rank < factorial(self.degree));
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(rank).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&rank);
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, sigma: &Permutation) -> Rational {
        self.coefficient_at(sigma.rank())
    }

    pub fn coefficient_at(&self, rank: usize) -> Rational {
        self.terms.get(&rank).cloned().unwrap_or_else(Rational::zero)
    }

    /// Terms in lexicographic order of their monomials.
    pub fn terms(&self) -> impl Iterator<Item = (Permutation, &Rational)> + '_ {
        self.terms
            .iter()
            .map(move |(&r, c)| (Permutation::unrank(self.degree, r).expect("stored ranks are valid"), c))
    }

    pub(crate) fn rank_terms(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.terms.iter().map(|(&r, c)| (r, c))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_degree(other)?;
        let mut out = self.clone();
        for (&r, c) in &other.terms {
            out.add_at(r, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_ranks(self.degree, self.terms.iter().map(|(&r, a)| (r, a * c)))
    }

    fn check_degree(&self, other: &Self) -> Result<()> {
        if self.degree != other.degree {
            return usage(format!("degree mismatch: {} vs {}", self.degree, other.degree));
        }
        Ok(())
    }

    /// Substitutes `x_i ↦ x_{τ(i)}`.
    pub fn permute_variables(&self, tau: &Permutation) -> Result<Self> {
        if tau.degree() != self.degree {
            return usage(format!("permutation of degree {} applied to degree {}", tau.degree(), self.degree));
        }
        let t = tau.zero_based();
        let mut out = Self::zero(self.degree);
        for (sigma, c) in self.terms() {
            let word: Vec<u8> = sigma.zero_based().iter().map(|&v| t[v as usize]).collect();
            out.add_at(rank_of(&word), c.clone());
        }
        Ok(out)
    }

    /// Dense coefficient vector indexed by rank.
    pub fn to_dense(&self) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); factorial(self.degree)];
        for (&r, c) in &self.terms {
            v[r] = c.clone();
        }
        v
    }
}

impl fmt::Display for MultilinearPoly {
    /// Writes the term syntax `+1 x1 x2 -1 x2 x1`; zero prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (sigma, c) in self.terms() {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            let sign = if c.is_negative() { '-' } else { '+' };
            write!(f, "{sign}{}", c.abs())?;
            for v in sigma.images() {
                write!(f, " x{v}")?;
            }
        }
        Ok(())
    }
}

/// A multilinear polynomial in an explicit set of variables, used to build
/// products of disjoint-variable factors such as `[x1,x2][x3,x4]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factor {
    vars: BTreeSet<usize>,
    terms: Vec<(Vec<usize>, Rational)>,
}

impl Factor {
    pub fn var(a: usize) -> Result<Self> {
        Self::standard(&[a])
    }

    /// `[x_a, x_b] = x_a x_b - x_b x_a`.
    pub fn commutator(a: usize, b: usize) -> Result<Self> {
        if a == b {
            return usage(format!("commutator [x{a},x{b}] repeats a variable"));
        }
        Self::standard(&[a, b])
    }

    /// The standard polynomial on the listed variables, in their given order.
    pub fn standard(vars: &[usize]) -> Result<Self> {
        let set: BTreeSet<usize> = vars.iter().copied().collect();
        if set.len() != vars.len() || set.contains(&0) {
            return usage(format!("variables {vars:?} must be distinct and positive"));
        }
        let k = vars.len();
        let terms = Permutation::all(k)
            .map(|p| {
                let word = p.images().iter().map(|&i| vars[i - 1]).collect();
                (word, Rational::from_integer(p.sign().into()))
            })
            .collect();
        Ok(Self { vars: set, terms })
    }

    /// Wraps an existing multilinear polynomial on `x_1..x_k`.
    pub fn from_poly(f: &MultilinearPoly) -> Self {
        Self {
            vars: (1..=f.degree()).collect(),
            terms: f.terms().map(|(p, c)| (p.images(), c.clone())).collect(),
        }
    }

    /// Product of factors in disjoint variables.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if let Some(v) = self.vars.intersection(&other.vars).next() {
            return usage(format!("variable x{v} appears in two factors"));
        }
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                terms.push((w, c1 * c2));
            }
        }
        Ok(Self { vars: self.vars.union(&other.vars).copied().collect(), terms })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self { vars: self.vars.clone(), terms: self.terms.iter().map(|(w, a)| (w.clone(), a * c)).collect() }
    }

    /// Sum of two factors over the same variable set.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.vars != other.vars {
            return usage("summands must use the same variables");
        }
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Ok(Self { vars: self.vars.clone(), terms })
    }

    /// Converts to a polynomial of degree `m`; the variables must be exactly
    /// `x_1..x_m`.
    pub fn into_poly(self) -> Result<MultilinearPoly> {
        let m = self.vars.len();
        if m > MAX_DEGREE {
            return usage(format!("degree {m} exceeds {MAX_DEGREE}"));
        }
        if self.vars.iter().copied().ne(1..=m) {
            return usage(format!(
                "variables {:?} do not cover x1..x{m} exactly once",
                self.vars.iter().collect::<Vec<_>>()
            ));
        }
        let mut out = MultilinearPoly::zero(m);
        for (word, c) in self.terms {
            out.add_at(Permutation::from_images(&word)?.rank(), c);
        }
        Ok(out)
    }
}

/// Product of disjoint-variable factors covering `x_1..x_m`, e.g.
/// `product(&[comm(1,2), comm(3,4)])`.
pub fn product(factors: &[Factor]) -> Result<MultilinearPoly> {
    let Some((first, rest)) = factors.split_first() else {
        return usage("empty product");
    };
    let mut acc = first.clone();
    for f in rest {
        acc = acc.mul(f)?;
    }
    acc.into_poly()
}

/// `[x_a, x_b]` as a degree-2 polynomial when `{a, b} = {1, 2}`.
pub fn commutator(a: usize, b: usize) -> Result<MultilinearPoly> {
    Factor::commutator(a, b)?.into_poly()
}

/// `s_k = Σ_σ sign(σ) x_{σ(1)} ... x_{σ(k)}`.
pub fn standard_poly(k: usize) -> Result<MultilinearPoly> {
    if k == 0 {
        return usage("standard polynomial needs k >= 1");
    }
    Factor::standard(&(1..=k).collect::<Vec<_>>())?.into_poly()
}
