//! Permutations of `1..=m` with lexicographic ranking.
//!
//! A permutation `σ` doubles as the multilinear monomial
//! `x_{σ(1)} x_{σ(2)} ... x_{σ(m)}`; its lexicographic rank is that
//! monomial's coordinate in `P_m`.

use std::fmt;

use crate::error::{usage, Result};

/// Largest degree whose factorial fits the `u32` rank space comfortably.
pub const MAX_DEGREE: usize = 12;

pub fn factorial(m: usize) -> usize {
    (1..=m).product()
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    /// 0-based images: `image[i] = σ(i + 1) - 1`.
    image: Vec<u8>,
}

impl Permutation {
    pub fn identity(m: usize) -> Self {
        Self { image: (0..m as u8).collect() }
    }

    /// From 1-based images `σ(1), ..., σ(m)`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let m = images.len();
        if m > MAX_DEGREE {
            return usage(format!("degree {m} exceeds {MAX_DEGREE}"));
        }
        let mut seen = vec![false; m];
        for &v in images {
            if v == 0 || v > m || std::mem::replace(&mut seen[v - 1], true) {
                return usage(format!("{images:?} is not a permutation of 1..={m}"));
            }
        }
        Ok(Self { image: images.iter().map(|&v| (v - 1) as u8).collect() })
    }

    pub fn degree(&self) -> usize {
        self.image.len()
    }

    /// `σ(i)` for 1-based `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.image[i - 1] as usize + 1
    }

    pub fn images(&self) -> Vec<usize> {
        self.image.iter().map(|&v| v as usize + 1).collect()
    }

    pub(crate) fn zero_based(&self) -> &[u8] {
        &self.image
    }

    /// Lexicographic rank in `0..m!`.
    pub fn rank(&self) -> usize {
        rank_of(&self.image)
    }

    pub fn unrank(m: usize, mut rank: usize) -> Result<Self> {
        if m > MAX_DEGREE {
            return usage(format!("degree {m} exceeds {MAX_DEGREE}"));
        }
        if rank >= factorial(m) {
            return usage(format!("rank {rank} out of range for degree {m}"));
        }
        let mut pool: Vec<u8> = (0..m as u8).collect();
        let mut image = Vec::with_capacity(m);
        for k in (0..m).rev() {
            let f = factorial(k);
            image.push(pool.remove(rank / f));
            rank %= f;
        }
        Ok(Self { image })
    }

    /// `self ∘ other`, i.e. `i ↦ self(other(i))`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Self { image: other.image.iter().map(|&i| self.image[i as usize]).collect() }
    }

    pub fn inverse(&self) -> Self {
        let mut image = vec![0u8; self.degree()];
        for (i, &v) in self.image.iter().enumerate() {
            image[v as usize] = i as u8;
        }
        Self { image }
    }

    /// `+1` for even permutations, `-1` for odd ones.
    pub fn sign(&self) -> i32 {
        let inversions = (0..self.degree())
            .flat_map(|i| (i + 1..self.degree()).map(move |j| (i, j)))
            .filter(|&(i, j)| self.image[i] > self.image[j])
            .count();
        if inversions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// All of `S_m` in lexicographic (= rank) order.
    pub fn all(m: usize) -> impl Iterator<Item = Permutation> {
        (0..factorial(m)).map(move |r| Self::unrank(m, r).expect("rank in range"))
    }
}

/// Lexicographic rank of a 0-based word that is a permutation of `0..m`.
pub(crate) fn rank_of(word: &[u8]) -> usize {
    let m = word.len();
    let mut used: u32 = 0;
    let mut rank = 0;
    for (k, &v) in word.iter().enumerate() {
        let smaller_unused = (v as u32) - (used & ((1u32 << v) - 1)).count_ones();
        rank += smaller_unused as usize * factorial(m - 1 - k);
        used |= 1 << v;
    }
    rank
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images().iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}
