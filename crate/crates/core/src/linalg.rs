//! Exact reduced row-echelon forms over `Q`.
//!
//! Elimination runs modulo word-sized primes; the reduced form is lifted to
//! `Q` by CRT and rational reconstruction, then certified exactly: every
//! input row must lie in the span of the lifted rows. Since the rank modulo a
//! prime never exceeds the rank over `Q`, a certified lift is the unique
//! reduced echelon form of the input. If no prime certifies, elimination
//! falls back to exact rational arithmetic.
//!
//! Rows are stored sparsely and, during elimination, only the coordinates at
//! non-pivot columns are touched: a fully reduced basis is zero at every
//! other pivot column, so reducing a new row needs one pass over its own
//! support and the current free columns.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::Rational;

/// Sparse vector: strictly increasing columns, no zero entries.
pub type SparseVec = Vec<(u32, Rational)>;

/// An input row with integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Row {
    /// Coefficient 1 at each listed column (strictly increasing).
    Indicator(Vec<u32>),
    Integer(Vec<(u32, BigInt)>),
}

impl Row {
    /// Scales a rational vector to a primitive integer row.
    pub fn from_rational(v: &[(u32, Rational)]) -> Row {
        let lcm = v.iter().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
        let mut ints: Vec<(u32, BigInt)> = v.iter().map(|(j, c)| (*j, c.numer() * (&lcm / c.denom()))).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, (_, c)| acc.gcd(c));
        if !g.is_zero() && !g.is_one() {
            for (_, c) in &mut ints {
                *c /= &g;
            }
        }
        Row::Integer(ints)
    }

    fn columns(&self) -> Vec<u32> {
        match self {
            Row::Indicator(c) => c.clone(),
            Row::Integer(e) => e.iter().map(|(c, _)| *c).collect(),
        }
    }

    fn mod_entries(&self, p: u64) -> Vec<(u32, u64)> {
        match self {
            Row::Indicator(c) => c.iter().map(|&j| (j, 1)).collect(),
            Row::Integer(e) => e
                .iter()
                .map(|(j, v)| {
                    let r = v.mod_floor(&BigInt::from(p));
                    (*j, r.to_u64().unwrap())
                })
                .filter(|&(_, v)| v != 0)
                .collect(),
        }
    }

    fn exact_entries(&self) -> Vec<(u32, BigInt)> {
        match self {
            Row::Indicator(c) => c.iter().map(|&j| (j, BigInt::one())).collect(),
            Row::Integer(e) => e.clone(),
        }
    }

    fn map_columns(&self, f: impl Fn(u32) -> u32) -> Row {
        match self {
            Row::Indicator(c) => {
                let mut c: Vec<u32> = c.iter().map(|&j| f(j)).collect();
                c.sort_unstable();
                Row::Indicator(c)
            }
            Row::Integer(e) => {
                let mut e: Vec<(u32, BigInt)> = e.iter().map(|(j, v)| (f(*j), v.clone())).collect();
                e.sort_by_key(|(j, _)| *j);
                Row::Integer(e)
            }
        }
    }
}

/// A reduced row-echelon basis of a subspace of `Q^ncols`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Rref {
    ncols: usize,
    rows: Vec<SparseVec>,
}

impl Rref {
    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn zero(ncols: usize) -> Self {
        Self { ncols, rows: Vec::new() }
    }

    pub fn full(ncols: usize) -> Self {
        Self { ncols, rows: (0..ncols as u32).map(|j| vec![(j, Rational::one())]).collect() }
    }

    pub fn pivots(&self) -> Vec<u32> {
        self.rows.iter().map(|r| r[0].0).collect()
    }

    /// Remainder of `v` after eliminating every pivot column.
    pub fn reduce(&self, v: &[(u32, Rational)]) -> SparseVec {
        let mut acc: std::collections::BTreeMap<u32, Rational> = v.iter().cloned().collect();
        for row in &self.rows {
            let lead = row[0].0;
            let Some(c) = acc.get(&lead).cloned() else { continue };
            for (j, a) in row {
                let e = acc.entry(*j).or_insert_with(Rational::zero);
                *e -= &c * a;
                if e.is_zero() {
                    acc.remove(j);
                }
            }
        }
        acc.into_iter().collect()
    }

    pub fn contains(&self, v: &[(u32, Rational)]) -> bool {
        self.reduce(v).is_empty()
    }

    /// Reduced echelon basis of the orthogonal complement `{x : r·x = 0}`.
    pub fn complement(&self) -> Rref {
        kernel(&self.rows.iter().map(|r| Row::from_rational(r)).collect::<Vec<_>>(), self.ncols)
    }
}

/// Reduced row-echelon basis of the span of `rows`.
pub fn rref(rows: &[Row], ncols: usize) -> Rref {
    let (pivots, entries) = certified_echelon(&dedup(rows), ncols);
    let rows = pivots
        .iter()
        .zip(entries)
        .map(|(&p, free_entries)| {
            let mut v = vec![(p, Rational::one())];
            v.extend(free_entries);
            v
        })
        .collect();
    Rref { ncols, rows }
}

/// Reduced row-echelon basis of the kernel `{x : r·x = 0 for every row r}`.
///
/// Columns are eliminated in reverse order, which makes the natural kernel
/// basis (one vector per free column) already reduced in forward order.
pub fn kernel(rows: &[Row], ncols: usize) -> Rref {
    if ncols == 0 {
        return Rref::zero(0);
    }
    let flip = |j: u32| ncols as u32 - 1 - j;
    let flipped: Vec<Row> = dedup(rows).iter().map(|r| r.map_columns(flip)).collect();
    let (pivots, entries) = certified_echelon(&flipped, ncols);
    let is_pivot = {
        let mut v = vec![false; ncols];
        for &p in &pivots {
            v[p as usize] = true;
        }
        v
    };
    // Vector for free column f: x_f = 1, x_p = -R_p[f].
    let mut by_free: std::collections::BTreeMap<u32, Vec<(u32, Rational)>> = (0..ncols as u32)
        .filter(|&j| !is_pivot[j as usize])
        .map(|f| (f, vec![(flip(f), Rational::one())]))
        .collect();
    for (&p, free_entries) in pivots.iter().zip(&entries) {
        for (f, a) in free_entries {
            by_free.get_mut(f).expect("entries only at free columns").push((flip(p), -a));
        }
    }
    let mut out: Vec<SparseVec> = by_free
        .into_values()
        .map(|mut v| {
            v.sort_by_key(|(j, _)| *j);
            v
        })
        .collect();
    out.sort_by_key(|v| v[0].0);
    Rref { ncols, rows: out }
}

fn dedup(rows: &[Row]) -> Vec<Row> {
    let mut seen = HashSet::with_capacity(rows.len());
    rows.iter().filter(|r| !r.columns().is_empty() && seen.insert(*r)).cloned().collect()
}

/// Pivot columns plus, per pivot, the row's entries at the final free
/// columns.
type Echelon = (Vec<u32>, Vec<Vec<(u32, Rational)>>);

const PRIME_ATTEMPTS: usize = 12;

fn certified_echelon(rows: &[Row], ncols: usize) -> Echelon {
    let mut best: Option<ModLift> = None;
    for p in primes_below(1 << 31).take(PRIME_ATTEMPTS) {
        let mut ech = ModEchelon::new(p, ncols);
        for r in rows {
            ech.insert(&r.mod_entries(p));
            if ech.free.is_empty() {
                break;
            }
        }
        let (pivots, residues) = ech.finish();
        match &mut best {
            Some(lift) if lift.pivots == pivots => lift.absorb(p, &residues),
            Some(lift) if !structure_better(&pivots, &lift.pivots) => continue,
            _ => best = Some(ModLift::new(p, pivots, residues)),
        }
        let lift = best.as_ref().unwrap();
        if let Some(candidate) = lift.reconstruct() {
            if certify(rows, &lift.pivots, &candidate) {
                return (lift.pivots.clone(), candidate);
            }
        }
    }
    exact_echelon(rows, ncols)
}

/// Over `Q` the pivots are maximal in rank and lexicographically first; a
/// bad prime can only lose rank or push pivots right.
fn structure_better(a: &[u32], b: &[u32]) -> bool {
    a.len() > b.len() || (a.len() == b.len() && a < b)
}

struct ModLift {
    modulus: BigInt,
    pivots: Vec<u32>,
    residues: Vec<Vec<(u32, BigInt)>>,
}

impl ModLift {
    fn new(p: u64, pivots: Vec<u32>, residues: Vec<Vec<(u32, u64)>>) -> Self {
        let residues = residues
            .into_iter()
            .map(|r| r.into_iter().map(|(j, v)| (j, BigInt::from(v))).collect())
            .collect();
        Self { modulus: BigInt::from(p), pivots, residues }
    }

    /// Chinese remaindering with one more prime of identical structure.
    fn absorb(&mut self, p: u64, residues: &[Vec<(u32, u64)>]) {
        let pb = BigInt::from(p);
        let m_inv = mod_inverse(&(&self.modulus % &pb), &pb);
        for (mine, theirs) in self.residues.iter_mut().zip(residues) {
            // Both sides list the same free columns, possibly with zeros
            // omitted on either side.
            let mut merged = Vec::new();
            let (mut a, mut b) = (mine.iter().peekable(), theirs.iter().peekable());
            loop {
                let (j, x, y) = match (a.peek(), b.peek()) {
                    (None, None) => break,
                    (Some((ja, _)), Some((jb, _))) if ja == jb => {
                        let (ja, xa) = a.next().unwrap();
                        let (_, yb) = b.next().unwrap();
                        (*ja, xa.clone(), BigInt::from(*yb))
                    }
                    (Some((ja, _)), Some((jb, _))) if ja > jb => {
                        let (jb, yb) = b.next().unwrap();
                        (*jb, BigInt::zero(), BigInt::from(*yb))
                    }
                    (Some(_), _) => {
                        let (ja, xa) = a.next().unwrap();
                        (*ja, xa.clone(), BigInt::zero())
                    }
                    (None, Some(_)) => {
                        let (jb, yb) = b.next().unwrap();
                        (*jb, BigInt::zero(), BigInt::from(*yb))
                    }
                };
                let t = ((y - &x) * &m_inv).mod_floor(&pb);
                let v = x + &self.modulus * t;
                if !v.is_zero() {
                    merged.push((j, v));
                }
            }
            *mine = merged;
        }
        self.modulus *= pb;
    }

    fn reconstruct(&self) -> Option<Vec<Vec<(u32, Rational)>>> {
        let bound = (&self.modulus / 2u32).sqrt();
        self.residues
            .iter()
            .map(|r| r.iter().map(|(j, v)| Some((*j, rational_reconstruction(v, &self.modulus, &bound)?))).collect())
            .collect()
    }
}

/// Finds `n/d ≡ a (mod m)` with `|n|, d <= bound`, if one exists.
pub(crate) fn rational_reconstruction(a: &BigInt, m: &BigInt, bound: &BigInt) -> Option<Rational> {
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while &r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        r0 = std::mem::replace(&mut r1, r2);
        let t2 = &t0 - &q * &t1;
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > *bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(Rational::new(r1, t1))
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

/// Exact check that every row lies in the span of the candidate basis: at
/// each free column, the row's entry must equal the combination of basis
/// rows selected by its pivot entries.
fn certify(rows: &[Row], pivots: &[u32], entries: &[Vec<(u32, Rational)>]) -> bool {
    let ncols = pivots.iter().copied().chain(entries.iter().flatten().map(|(j, _)| *j)).max().map_or(0, |m| m + 1);
    let mut pivot_index = vec![u32::MAX; ncols as usize];
    for (k, &p) in pivots.iter().enumerate() {
        pivot_index[p as usize] = k as u32;
    }
    let ints = IntegerBasis::new(entries);
    let mut scratch: std::collections::HashMap<u32, BigInt> = std::collections::HashMap::new();
    rows.iter().all(|row| {
        let exact = row.exact_entries();
        if exact.iter().any(|(j, _)| *j >= ncols) {
            // A column beyond every pivot and free entry can only be free
            // with a nonzero row entry there.
            return false;
        }
        if let Some(ok) = ints.as_ref().and_then(|b| b.check(&exact, &pivot_index)) {
            return ok;
        }
        scratch.clear();
        let den = ints_common_denominator(entries);
        for (j, v) in &exact {
            let k = pivot_index[*j as usize];
            if k == u32::MAX {
                *scratch.entry(*j).or_default() += v * &den;
            } else {
                for (f, a) in &entries[k as usize] {
                    let scaled = a * Rational::from_integer(den.clone());
                    *scratch.entry(*f).or_default() -= v * scaled.to_integer();
                }
            }
        }
        scratch.values().all(Zero::is_zero)
    })
}

fn ints_common_denominator(entries: &[Vec<(u32, Rational)>]) -> BigInt {
    entries.iter().flatten().fold(BigInt::one(), |acc, (_, a)| acc.lcm(a.denom()))
}

/// The candidate basis scaled to a common denominator, when everything fits
/// in `i64`; certification then runs in checked `i128` arithmetic.
struct IntegerBasis {
    den: i64,
    rows: Vec<Vec<(u32, i64)>>,
}

impl IntegerBasis {
    fn new(entries: &[Vec<(u32, Rational)>]) -> Option<Self> {
        let den = ints_common_denominator(entries).to_i64()?;
        let rows = entries
            .iter()
            .map(|r| {
                r.iter()
                    .map(|(j, a)| Some((*j, (a.numer() * (BigInt::from(den) / a.denom())).to_i64()?)))
                    .collect::<Option<Vec<_>>>()
            })
            .collect::<Option<Vec<_>>>()?;
        Some(Self { den, rows })
    }

    /// `None` when an intermediate value leaves the machine range.
    fn check(&self, row: &[(u32, BigInt)], pivot_index: &[u32]) -> Option<bool> {
        let mut acc: Vec<(u32, i128)> = Vec::new();
        let mut add = |j: u32, v: i128| -> Option<()> {
            match acc.iter_mut().find(|(c, _)| *c == j) {
                Some((_, x)) => *x = x.checked_add(v)?,
                None => acc.push((j, v)),
            }
            Some(())
        };
        for (j, v) in row {
            let v = v.to_i64()? as i128;
            let k = pivot_index[*j as usize];
            if k == u32::MAX {
                add(*j, v.checked_mul(self.den as i128)?)?;
            } else {
                for &(f, a) in &self.rows[k as usize] {
                    add(f, -(v.checked_mul(a as i128)?))?;
                }
            }
        }
        Some(acc.iter().all(|&(_, x)| x == 0))
    }
}

/// Incremental reduced echelon form modulo a prime `p < 2^31`.
struct ModEchelon {
    p: u64,
    /// Row index for pivot columns, `u32::MAX` otherwise.
    pivot_row: Vec<u32>,
    pivots: Vec<u32>,
    rows: Vec<Vec<u64>>,
    /// Non-pivot columns, increasing.
    free: Vec<u32>,
    scratch: Vec<u64>,
}

impl ModEchelon {
    fn new(p: u64, ncols: usize) -> Self {
        Self {
            p,
            pivot_row: vec![u32::MAX; ncols],
            pivots: Vec::new(),
            rows: Vec::new(),
            free: (0..ncols as u32).collect(),
            scratch: vec![0; ncols],
        }
    }

    fn insert(&mut self, row: &[(u32, u64)]) -> bool {
        let p = self.p;
        for &(j, v) in row {
            let k = self.pivot_row[j as usize];
            if k == u32::MAX {
                let s = &mut self.scratch[j as usize];
                *s = (*s + v) % p;
            } else {
                let basis = &self.rows[k as usize];
                for &f in &self.free {
                    let b = basis[f as usize];
                    if b != 0 {
                        let s = &mut self.scratch[f as usize];
                        *s = (*s + p - v * b % p) % p;
                    }
                }
            }
        }
        let lead = self.free.iter().position(|&f| self.scratch[f as usize] != 0);
        let Some(lead_pos) = lead else {
            return false;
        };
        let c0 = self.free[lead_pos];
        let inv = pow_mod(self.scratch[c0 as usize], p - 2, p);
        let mut new_row = vec![0u64; self.scratch.len()];
        for &f in &self.free[lead_pos..] {
            let s = self.scratch[f as usize];
            if s != 0 {
                new_row[f as usize] = s * inv % p;
            }
        }
        for &f in &self.free {
            self.scratch[f as usize] = 0;
        }
        self.free.remove(lead_pos);
        for basis in &mut self.rows {
            let c = basis[c0 as usize];
            if c == 0 {
                continue;
            }
            basis[c0 as usize] = 0;
            for &f in &self.free {
                let b = new_row[f as usize];
                if b != 0 {
                    let x = &mut basis[f as usize];
                    *x = (*x + p - c * b % p) % p;
                }
            }
        }
        self.pivot_row[c0 as usize] = self.rows.len() as u32;
        self.pivots.push(c0);
        self.rows.push(new_row);
        true
    }

    /// Pivots in increasing order with each row's nonzero free entries.
    fn finish(self) -> (Vec<u32>, Vec<Vec<(u32, u64)>>) {
        let mut order: Vec<usize> = (0..self.pivots.len()).collect();
        order.sort_by_key(|&k| self.pivots[k]);
        let pivots = order.iter().map(|&k| self.pivots[k]).collect();
        let entries = order
            .iter()
            .map(|&k| {
                self.free
                    .iter()
                    .filter(|&&f| self.rows[k][f as usize] != 0)
                    .map(|&f| (f, self.rows[k][f as usize]))
                    .collect()
            })
            .collect();
        (pivots, entries)
    }
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(small) {
            return n == small;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = {
            let (mut r, mut b, mut e) = (1u64, a, d);
            while e > 0 {
                if e & 1 == 1 {
                    r = mul(r, b);
                }
                b = mul(b, b);
                e >>= 1;
            }
            r
        };
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes below `bound`, descending.
fn primes_below(bound: u64) -> impl Iterator<Item = u64> {
    (2..bound).rev().filter(|&n| is_prime(n))
}

/// Exact rational elimination with the same free-column bookkeeping.
fn exact_echelon(rows: &[Row], ncols: usize) -> Echelon {
    let mut pivot_row = vec![usize::MAX; ncols];
    let mut pivots: Vec<u32> = Vec::new();
    let mut basis: Vec<Vec<Rational>> = Vec::new();
    let mut free: Vec<u32> = (0..ncols as u32).collect();
    for row in rows {
        let mut v = vec![Rational::zero(); ncols];
        for (j, c) in row.exact_entries() {
            let k = pivot_row[j as usize];
            let c = Rational::from_integer(c);
            if k == usize::MAX {
                v[j as usize] += c;
            } else {
                for &f in &free {
                    let b = &basis[k][f as usize];
                    if !b.is_zero() {
                        v[f as usize] -= &c * b;
                    }
                }
            }
        }
        let Some(lead_pos) = free.iter().position(|&f| !v[f as usize].is_zero()) else {
            continue;
        };
        let c0 = free.remove(lead_pos);
        let inv = v[c0 as usize].recip();
        let mut new_row = vec![Rational::zero(); ncols];
        new_row[c0 as usize] = Rational::one();
        for &f in &free {
            if !v[f as usize].is_zero() {
                new_row[f as usize] = &v[f as usize] * &inv;
            }
        }
        for b in &mut basis {
            let c = std::mem::take(&mut b[c0 as usize]);
            if c.is_zero() {
                continue;
            }
            for &f in &free {
                if !new_row[f as usize].is_zero() {
                    let d = &c * &new_row[f as usize];
                    b[f as usize] -= d;
                }
            }
        }
        pivot_row[c0 as usize] = basis.len();
        pivots.push(c0);
        basis.push(new_row);
        if free.is_empty() {
            break;
        }
    }
    let mut order: Vec<usize> = (0..pivots.len()).collect();
    order.sort_by_key(|&k| pivots[k]);
    let entries = order
        .iter()
        .map(|&k| {
            free.iter()
                .filter(|&&f| !basis[k][f as usize].is_zero())
                .map(|&f| (f, basis[k][f as usize].clone()))
                .collect()
        })
        .collect();
    (order.iter().map(|&k| pivots[k]).collect(), entries)
}

#[cfg(test)]
pub(crate) fn exact_rref_for_tests(rows: &[Row], ncols: usize) -> Rref {
    let (pivots, entries) = exact_echelon(rows, ncols);
    let rows = pivots
        .iter()
        .zip(entries)
        .map(|(&p, e)| {
            let mut v = vec![(p, Rational::one())];
            v.extend(e);
            v
        })
        .collect();
    Rref { ncols, rows }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn int_row(v: &[i64]) -> Row {
        Row::Integer(
            v.iter()
                .enumerate()
                .filter(|(_, &x)| x != 0)
                .map(|(j, &x)| (j as u32, BigInt::from(x)))
                .collect(),
        )
    }

    #[test]
    fn small_rref() {
        let rows = [int_row(&[2, 4, 6]), int_row(&[1, 1, 1])];
        let r = rref(&rows, 3);
        assert_eq!(r.rows(), &[vec![(0, q(1, 1)), (2, q(-1, 1))], vec![(1, q(1, 1)), (2, q(2, 1))]]);
    }

    #[test]
    fn small_kernel() {
        // x0 + x1 + x2 = 0 has kernel basis in reduced form (1,0,-1), (0,1,-1).
        let k = kernel(&[Row::Indicator(vec![0, 1, 2])], 3);
        assert_eq!(k.rows(), &[vec![(0, q(1, 1)), (2, q(-1, 1))], vec![(1, q(1, 1)), (2, q(-1, 1))]]);
        assert_eq!(kernel(&[], 2), Rref::full(2));
    }

    #[test]
    fn large_entries_need_several_primes() {
        // The reduced form has entries far above a single prime's
        // reconstruction bound.
        let big = BigInt::parse_bytes(b"123456789012345678901234567", 10).unwrap();
        let rows = [
            Row::Integer(vec![(0, big.clone()), (1, BigInt::from(7))]),
            Row::Integer(vec![(0, BigInt::from(3)), (2, big.clone())]),
        ];
        let fast = rref(&rows, 3);
        assert_eq!(fast, exact_rref_for_tests(&rows, 3));
    }

    #[test]
    fn reconstruction() {
        let m = BigInt::from(1_000_003u64);
        let bound = (&m / 2u32).sqrt();
        let a = (BigInt::from(2) * mod_inverse(&BigInt::from(3), &m)).mod_floor(&m);
        assert_eq!(rational_reconstruction(&a, &m, &bound), Some(q(2, 3)));
        let neg = (-BigInt::from(5)).mod_floor(&m);
        assert_eq!(rational_reconstruction(&neg, &m, &bound), Some(q(-5, 1)));
    }

    #[test]
    fn primes() {
        let ps: Vec<u64> = primes_below(1 << 31).take(3).collect();
        assert_eq!(ps, vec![2147483647, 2147483629, 2147483587]);
        assert!(!is_prime(2147483649));
    }

    proptest! {
        #[test]
        fn modular_matches_exact(
            rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 6), 0..8)
        ) {
            let rows: Vec<Row> = rows.iter().map(|r| int_row(r)).collect();
            prop_assert_eq!(rref(&rows, 6), exact_rref_for_tests(&rows, 6));
            let k = kernel(&rows, 6);
            prop_assert_eq!(k.rank() + rref(&rows, 6).rank(), 6);
            for kv in k.rows() {
                for r in &rows {
                    let dot: Rational = r.exact_entries().iter()
                        .map(|(j, c)| kv.iter().find(|(f, _)| f == j).map_or(Rational::zero(), |(_, a)| a * Rational::from_integer(c.clone())))
                        .sum();
                    prop_assert!(dot.is_zero());
                }
            }
        }
    }
}
