//! A common interface for the two algebra carriers, so multilinear
//! polynomials can be evaluated in `FQ` and in incidence algebras alike.

use crate::error::{usage, Result};
use crate::incidence::{IncidenceAlgebra, IncidenceElement};
use crate::poly::MultilinearPoly;
use crate::quiver::{multiply_unchecked, PathAlgebraElement, Quiver};
use crate::Rational;

pub trait Algebra {
    type Element: Clone + PartialEq + std::fmt::Debug;

    fn zero(&self) -> Self::Element;
    fn is_zero(&self, x: &Self::Element) -> bool;
    /// Rejects elements that do not belong to this algebra.
    fn check(&self, x: &Self::Element) -> Result<()>;
    fn mul(&self, x: &Self::Element, y: &Self::Element) -> Result<Self::Element>;
    fn add_scaled(&self, acc: &mut Self::Element, x: &Self::Element, c: &Rational);
}

impl Algebra for Quiver {
    type Element = PathAlgebraElement;

    fn zero(&self) -> PathAlgebraElement {
        PathAlgebraElement::zero()
    }

    fn is_zero(&self, x: &PathAlgebraElement) -> bool {
        x.is_zero()
    }

    fn check(&self, x: &PathAlgebraElement) -> Result<()> {
        x.terms().try_for_each(|(p, _)| self.validate(p))
    }

    fn mul(&self, x: &PathAlgebraElement, y: &PathAlgebraElement) -> Result<PathAlgebraElement> {
        Ok(multiply_unchecked(x, y))
    }

    fn add_scaled(&self, acc: &mut PathAlgebraElement, x: &PathAlgebraElement, c: &Rational) {
        acc.add_scaled(x, c);
    }
}

impl Algebra for IncidenceAlgebra {
    type Element = IncidenceElement;

    fn zero(&self) -> IncidenceElement {
        IncidenceElement::zero(self.relation().vertex_count())
    }

    fn is_zero(&self, x: &IncidenceElement) -> bool {
        x.is_zero()
    }

    fn check(&self, x: &IncidenceElement) -> Result<()> {
        IncidenceAlgebra::check(self, x)
    }

    fn mul(&self, x: &IncidenceElement, y: &IncidenceElement) -> Result<IncidenceElement> {
        self.multiply(x, y)
    }

    fn add_scaled(&self, acc: &mut IncidenceElement, x: &IncidenceElement, c: &Rational) {
        acc.add_scaled(x, c);
    }
}

/// `f(x_1, ..., x_m) = Σ_σ λ_σ x_{σ(1)} ... x_{σ(m)}`, computed exactly.
pub fn evaluate<A: Algebra>(alg: &A, f: &MultilinearPoly, xs: &[A::Element]) -> Result<A::Element> {
    if xs.len() != f.degree() {
        return usage(format!("{} arguments for a degree-{} polynomial", xs.len(), f.degree()));
    }
    for x in xs {
        alg.check(x)?;
    }
    let mut out = alg.zero();
    for (sigma, c) in f.terms() {
        let mut images = sigma.images().into_iter();
        let mut acc = xs[images.next().expect("degree >= 1") - 1].clone();
        for i in images {
            if alg.is_zero(&acc) {
                break;
            }
            acc = alg.mul(&acc, &xs[i - 1])?;
        }
        alg.add_scaled(&mut out, &acc, c);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::incidence::TransitiveRelation;
    use crate::poly::{commutator, product, standard_poly, Factor};
    use crate::quiver::Path;

    #[test]
    fn evaluates_in_incidence_algebra() {
        let alg = IncidenceAlgebra::new(TransitiveRelation::from_pairs(2, [(1, 1), (1, 2)]).unwrap());
        let e11 = IncidenceElement::unit(2, 1, 1);
        let e12 = IncidenceElement::unit(2, 1, 2);
        let c = commutator(1, 2).unwrap();
        assert_eq!(evaluate(&alg, &c, &[e11.clone(), e12.clone()]).unwrap(), e12);
        let f = product(&[Factor::commutator(1, 2).unwrap(), Factor::var(3).unwrap()]).unwrap();
        assert!(evaluate(&alg, &f, &[e11, e12.clone(), e12]).unwrap().is_zero());
        assert!(evaluate(&alg, &c, &[IncidenceElement::unit(2, 2, 1), IncidenceElement::unit(2, 1, 1)]).is_err());
    }

    #[test]
    fn evaluates_in_path_algebra() {
        let q = Quiver::cycle(2).unwrap();
        let s2 = standard_poly(2).unwrap();
        for p in q.all_paths(3) {
            let x = PathAlgebraElement::from_path(p);
            assert!(evaluate(&q, &s2, &[x.clone(), x]).unwrap().is_zero());
        }
        let a = PathAlgebraElement::from_path(q.path(&[0]).unwrap());
        let b = PathAlgebraElement::from_path(q.path(&[1]).unwrap());
        let v = evaluate(&q, &s2, &[a, b]).unwrap();
        assert_eq!(v.len(), 2);
        assert!(evaluate(&q, &s2, &[PathAlgebraElement::from_path(Path::Trivial(9)), q.one()]).is_err());
    }
}
