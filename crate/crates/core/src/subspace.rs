//! Subspaces of the multilinear space `P_m`, kept as exact reduced
//! row-echelon bases in lexicographic monomial order.

use std::fmt;

use crate::error::{usage, Result};
use crate::linalg::{kernel, rref, Row, Rref, SparseVec};
use crate::perm::factorial;
use crate::poly::MultilinearPoly;
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IdentitySubspace {
    degree: usize,
    basis: Rref,
}

/// Outcome of comparing two subspaces, with a separating element when they
/// differ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Comparison {
    Equal,
    /// Left is strictly inside right; `witness` lies in right only.
    Subset { witness: MultilinearPoly },
    /// Right is strictly inside left; `witness` lies in left only.
    Superset { witness: MultilinearPoly },
    Incomparable { left_only: MultilinearPoly, right_only: MultilinearPoly },
}

impl Comparison {
    pub fn label(&self) -> &'static str {
        match self {
            Comparison::Equal => "equal",
            Comparison::Subset { .. } => "left ⊂ right",
            Comparison::Superset { .. } => "right ⊂ left",
            Comparison::Incomparable { .. } => "incomparable",
        }
    }
}

impl IdentitySubspace {
    pub(crate) fn from_rref(degree: usize, basis: Rref) -> Self {
        debug_assert_eq!(basis.ncols(), factorial(degree));
        Self { degree, basis }
    }

    /// All of `P_m`.
    pub fn full(degree: usize) -> Self {
        Self::from_rref(degree, Rref::full(factorial(degree)))
    }

    pub fn zero(degree: usize) -> Self {
        Self::from_rref(degree, Rref::zero(factorial(degree)))
    }

    /// The span of `polys`, all of degree `degree`.
    pub fn span(degree: usize, polys: &[MultilinearPoly]) -> Result<Self> {
        let mut rows = Vec::with_capacity(polys.len());
        for f in polys {
            if f.degree() != degree {
                return usage(format!("polynomial of degree {} in a degree-{degree} span", f.degree()));
            }
            rows.push(Row::from_rational(&to_sparse(f)));
        }
        Ok(Self::from_rref(degree, rref(&rows, factorial(degree))))
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dimension(&self) -> usize {
        self.basis.rank()
    }

    /// Reduced echelon basis; each element has leading coefficient 1.
    pub fn basis(&self) -> Vec<MultilinearPoly> {
        self.basis
            .rows()
            .iter()
            .map(|r| MultilinearPoly::from_ranks(self.degree, r.iter().map(|(j, c)| (*j as usize, c.clone()))))
            .collect()
    }

    pub fn contains(&self, f: &MultilinearPoly) -> Result<bool> {
        if f.degree() != self.degree {
            return usage(format!("degree mismatch: {} vs {}", f.degree(), self.degree));
        }
        Ok(self.basis.contains(&to_sparse(f)))
    }

    fn first_outside(&self, other: &Self) -> Option<MultilinearPoly> {
        self.basis().into_iter().find(|f| !other.basis.contains(&to_sparse(f)))
    }

    pub fn is_subspace_of(&self, other: &Self) -> Result<bool> {
        check_same_degree(self, other)?;
        Ok(self.first_outside(other).is_none())
    }

    pub fn compare(&self, other: &Self) -> Result<Comparison> {
        check_same_degree(self, other)?;
        Ok(match (self.first_outside(other), other.first_outside(self)) {
            (None, None) => Comparison::Equal,
            (None, Some(witness)) => Comparison::Subset { witness },
            (Some(witness), None) => Comparison::Superset { witness },
            (Some(left_only), Some(right_only)) => Comparison::Incomparable { left_only, right_only },
        })
    }

    /// `U ∩ V = (U^⊥ + V^⊥)^⊥`.
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        check_same_degree(self, other)?;
        let mut rows: Vec<Row> = Vec::new();
        for side in [self, other] {
            rows.extend(side.basis.complement().rows().iter().map(|r| Row::from_rational(r)));
        }
        Ok(Self::from_rref(self.degree, kernel(&rows, factorial(self.degree))))
    }
}

fn check_same_degree(a: &IdentitySubspace, b: &IdentitySubspace) -> Result<()> {
    if a.degree != b.degree {
        return usage(format!("degree mismatch: {} vs {}", a.degree, b.degree));
    }
    Ok(())
}

pub(crate) fn to_sparse(f: &MultilinearPoly) -> SparseVec {
    f.rank_terms().map(|(r, c)| (r as u32, c.clone())).collect::<Vec<(u32, Rational)>>()
}

impl fmt::Display for IdentitySubspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "degree {} dimension {}", self.degree, self.dimension())?;
        for (k, b) in self.basis().iter().enumerate() {
            writeln!(f, "  [{}] {b}", k + 1)?;
        }
        Ok(())
    }
}
