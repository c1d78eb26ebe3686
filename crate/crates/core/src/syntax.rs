//! Text syntax for multilinear polynomials.
//!
//! ```text
//! poly    := "0" "/" INT | sum | product
//! sum     := term { term }            first sign optional, later ones required
//! term    := [ "+" | "-" ] [ coeff ] var { var }
//! coeff   := INT [ "/" INT ]
//! var     := "x" INT
//! product := factor { "*" factor }
//! factor  := "comm(" INT "," INT ")"
//!          | "x(" INT ")"
//!          | "std(" INT ")"                s_k on x1..xk
//!          | "std(" INT "," INT { "," INT } ")"   s on the listed variables
//! ```
//!
//! Whitespace is free between tokens. `0/m` is the zero polynomial of degree
//! `m`. The factors of a product must use disjoint variables that together
//! cover `x1..xm` exactly once.

use std::fmt;

use num_bigint::BigInt;

use crate::perm::Permutation;
use crate::poly::{product, Factor, MultilinearPoly};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyntaxError {
    /// 1-based character column.
    pub column: usize,
    pub message: String,
}

impl fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "column {}: {}", self.column, self.message)
    }
}

impl std::error::Error for SyntaxError {}

type PResult<T> = Result<T, SyntaxError>;

pub fn parse_poly(text: &str) -> PResult<MultilinearPoly> {
    let mut p = Parser { chars: text.chars().collect(), pos: 0 };
    p.skip_ws();
    let poly = if p.peek_word("comm(") || p.peek_word("std(") || p.peek_word("x(") {
        p.product()?
    } else if p.peek_word("0/") {
        p.pos += 2;
        let m = p.int()?;
        MultilinearPoly::zero(usize::try_from(&m).map_err(|_| p.err("degree too large"))?)
    } else {
        p.sum()?
    };
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.err(format!("unexpected {:?}", p.chars[p.pos])));
    }
    Ok(poly)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn err(&self, message: impl Into<String>) -> SyntaxError {
        SyntaxError { column: self.pos + 1, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn peek_word(&self, w: &str) -> bool {
        let n = w.chars().count();
        self.chars.len() >= self.pos + n && self.chars[self.pos..self.pos + n].iter().copied().eq(w.chars())
    }

    fn expect(&mut self, c: char) -> PResult<()> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected {c:?}")))
        }
    }

    fn int(&mut self) -> PResult<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        Ok(s.parse().expect("digits parse"))
    }

    fn small(&mut self) -> PResult<usize> {
        let start = self.pos;
        let v = self.int()?;
        usize::try_from(&v).ok().filter(|&v| v > 0 && v <= 64).ok_or(SyntaxError {
            column: start + 1,
            message: format!("variable index {v} out of range"),
        })
    }

    fn sum(&mut self) -> PResult<MultilinearPoly> {
        let mut terms: Vec<(Vec<usize>, Rational, usize)> = Vec::new();
        loop {
            self.skip_ws();
            if self.pos >= self.chars.len() {
                break;
            }
            let col = self.pos;
            let negative = match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    false
                }
                Some('-') => {
                    self.pos += 1;
                    true
                }
                _ if terms.is_empty() => false,
                _ => return Err(self.err("expected '+' or '-' before the next term")),
            };
            self.skip_ws();
            let mut coeff = Rational::from_integer(1.into());
            if self.peek().is_some_and(|c| c.is_ascii_digit()) {
                let num = self.int()?;
                let mut den = BigInt::from(1);
                if self.peek() == Some('/') {
                    self.pos += 1;
                    den = self.int()?;
                    if den == BigInt::from(0) {
                        return Err(self.err("zero denominator"));
                    }
                }
                coeff = Rational::new(num, den);
            }
            if negative {
                coeff = -coeff;
            }
            let mut word = Vec::new();
            loop {
                self.skip_ws();
                if self.peek() == Some('x') {
                    self.pos += 1;
                    word.push(self.small()?);
                } else {
                    break;
                }
            }
            if word.is_empty() {
                return Err(self.err("expected a variable such as x1"));
            }
            terms.push((word, coeff, col));
        }
        let Some(m) = terms.first().map(|t| t.0.len()) else {
            return Err(self.err("empty polynomial"));
        };
        let mut parsed = Vec::with_capacity(terms.len());
        for (word, c, col) in terms {
            if word.len() != m {
                return Err(SyntaxError { column: col + 1, message: format!("term has degree {}, expected {m}", word.len()) });
            }
            let sigma = Permutation::from_images(&word).map_err(|_| SyntaxError {
                column: col + 1,
                message: format!("term {word:?} is not multilinear in x1..x{m}"),
            })?;
            parsed.push((sigma, c));
        }
        MultilinearPoly::from_terms(m, parsed).map_err(|e| self.err(e.to_string()))
    }

    fn product(&mut self) -> PResult<MultilinearPoly> {
        let start = self.pos;
        let mut factors = vec![self.factor()?];
        loop {
            self.skip_ws();
            if self.peek() == Some('*') {
                self.pos += 1;
                self.skip_ws();
                factors.push(self.factor()?);
            } else {
                break;
            }
        }
        product(&factors).map_err(|e| SyntaxError { column: start + 1, message: e.to_string() })
    }

    fn factor(&mut self) -> PResult<Factor> {
        let start = self.pos;
        let wrap = |e: crate::Error| SyntaxError { column: start + 1, message: e.to_string() };
        if self.peek_word("comm(") {
            self.pos += 5;
            let a = self.small()?;
            self.expect(',')?;
            let b = self.small()?;
            self.expect(')')?;
            Factor::commutator(a, b).map_err(wrap)
        } else if self.peek_word("x(") {
            self.pos += 2;
            let a = self.small()?;
            self.expect(')')?;
            Factor::var(a).map_err(wrap)
        } else if self.peek_word("std(") {
            self.pos += 4;
            let mut args = vec![self.small()?];
            loop {
                self.skip_ws();
                if self.peek() == Some(',') {
                    self.pos += 1;
                    args.push(self.small()?);
                } else {
                    break;
                }
            }
            self.expect(')')?;
            if args.len() == 1 {
                Factor::standard(&(1..=args[0]).collect::<Vec<_>>()).map_err(wrap)
            } else {
                Factor::standard(&args).map_err(wrap)
            }
        } else {
            Err(self.err("expected comm(..), x(..) or std(..)"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{commutator, standard_poly};

    #[test]
    fn parses_term_lists() {
        let f = parse_poly("+1 x1 x2 x3 -1 x2 x1 x3").unwrap();
        assert_eq!(f.to_string(), "+1 x1 x2 x3 -1 x2 x1 x3");
        let g = parse_poly("x1 x2 - x2 x1").unwrap();
        assert_eq!(g, commutator(1, 2).unwrap());
        let h = parse_poly("+3/2 x2 x1 -1/2 x2 x1").unwrap();
        assert_eq!(h.to_string(), "+1 x2 x1");
    }

    #[test]
    fn parses_constructors() {
        let f = parse_poly("comm(1,2)*x(3)").unwrap();
        assert_eq!(f, parse_poly("+1 x1 x2 x3 -1 x2 x1 x3").unwrap());
        assert_eq!(parse_poly("std(4)").unwrap(), standard_poly(4).unwrap());
        assert_eq!(parse_poly(" comm(1, 2) * comm(3,4) ").unwrap().len(), 4);
        assert_eq!(parse_poly("std(2,1)").unwrap(), commutator(2, 1).unwrap());
        assert!(parse_poly("0/3").unwrap().is_zero());
    }

    #[test]
    fn display_round_trips() {
        for src in ["comm(1,3)*x(2)", "std(4)", "x(2)*comm(1,3)*x(4)"] {
            let f = parse_poly(src).unwrap();
            assert_eq!(parse_poly(&f.to_string()).unwrap(), f);
        }
    }

    #[test]
    fn reports_columns() {
        let e = parse_poly("+1 x1 x2 x1").unwrap_err();
        assert_eq!(e.column, 1);
        let e = parse_poly("+1 x1 x2 -1 x2").unwrap_err();
        assert_eq!(e.column, 10);
        let e = parse_poly("comm(1,2)*x(2)").unwrap_err();
        assert!(e.message.contains("x2"), "{e}");
        let e = parse_poly("x1 x2 x2 x1").unwrap_err();
        assert_eq!(e.column, 1);
        let e = parse_poly("comm(1,2) +").unwrap_err();
        assert_eq!(e.column, 11);
    }
}
