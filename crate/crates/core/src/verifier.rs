//! Desk-scale verification that identities of `A_π` vanish on `FQ_π`.
//!
//! For a tuple `β = (p_1, ..., p_m)` of paths, every ordering `σ` with a
//! nonzero product `p_{σ(1)} ... p_{σ(m)}` lands in the sector of its
//! endpoints `(i, j)`. On a PI quiver all products in one sector are the same
//! path, so `f(β)` is the sum over sectors of `(Σ λ_σ)` times that path, and
//! each sector sum must vanish when `f` is an identity of `A_π`.
//!
//! Everything here is checked up to an explicit path-length bound; cyclic
//! quivers have infinitely many path tuples.

use std::collections::BTreeMap;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{usage, Error, Result};
use crate::identities::{identity_space, nonvanishing_unit_tuple};
use crate::incidence::TransitiveRelation;
use crate::perm::{factorial, Permutation};
use crate::poly::MultilinearPoly;
use crate::quiver::{Path, PathSet, Quiver, Vertex};
use crate::Rational;

/// Exhaustive enumeration up to this many tuples; seeded sampling above.
pub const TUPLE_BUDGET: u64 = 1_000_000;
pub const REPORT_SCHEMA: u32 = 1;

/// `β = (p_1, ..., p_m)`, paths of one quiver.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathTuple {
    paths: Vec<Path>,
}

impl PathTuple {
    pub fn new(q: &Quiver, paths: Vec<Path>) -> Result<Self> {
        for p in &paths {
            q.validate(p)?;
        }
        Ok(Self { paths })
    }

    pub fn paths(&self) -> &[Path] {
        &self.paths
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }
}

/// Orderings of `β` with a nonzero product, grouped by the product path.
/// Classes are sorted by path; ranks within a class increase.
fn product_classes(paths: &[&Path]) -> Vec<(Path, Vec<u32>)> {
    let m = paths.len();
    let fact: Vec<u32> = (0..=m).map(|k| factorial(k) as u32).collect();
    let mut classes: BTreeMap<Path, Vec<u32>> = BTreeMap::new();
    let mut arrows = Vec::new();
    #[allow(clippy::too_many_arguments)]
    fn go(
        paths: &[&Path],
        fact: &[u32],
        used: u32,
        source: Vertex,
        target: Vertex,
        rank: u32,
        depth: usize,
        arrows: &mut Vec<usize>,
        classes: &mut BTreeMap<Path, Vec<u32>>,
    ) {
        let m = paths.len();
        if depth == m {
            let product = if arrows.is_empty() {
                Path::Trivial(source)
            } else {
                Path::Arrows { arrows: arrows.clone(), source, target }
            };
            classes.entry(product).or_default().push(rank);
            return;
        }
        for v in 0..m {
            if used & (1 << v) != 0 || (depth > 0 && paths[v].source() != target) {
                continue;
            }
            let smaller_unused = v as u32 - (used & ((1 << v) - 1)).count_ones();
            let r = rank + smaller_unused * fact[m - 1 - depth];
            let before = arrows.len();
            arrows.extend_from_slice(paths[v].arrow_ids());
            let s = if depth == 0 { paths[v].source() } else { source };
            go(paths, fact, used | (1 << v), s, paths[v].target(), r, depth + 1, arrows, classes);
            arrows.truncate(before);
        }
    }
    go(paths, &fact, 0, 0, 0, 0, 0, &mut arrows, &mut classes);
    classes.into_iter().collect()
}

/// One sector `(S_β)_{i,j}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sector {
    pub source: Vertex,
    pub target: Vertex,
    /// Permutation ranks with a nonzero product from `source` to `target`.
    pub ranks: Vec<usize>,
    /// Distinct product paths; a single entry when products are unique.
    pub products: Vec<Path>,
    /// `Σ_{σ in sector} λ_σ`.
    pub sum: Rational,
}

impl Sector {
    /// The common product `p^β_{i,j}`, if the sector has one.
    pub fn common_product(&self) -> Option<&Path> {
        match self.products.as_slice() {
            [p] => Some(p),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SectorReport {
    pub sectors: Vec<Sector>,
}

impl SectorReport {
    pub fn all_sums_vanish(&self) -> bool {
        self.sectors.iter().all(|s| s.sum.is_zero())
    }

    pub fn products_unique(&self) -> bool {
        self.sectors.iter().all(|s| s.products.len() == 1)
    }
}

/// Splits the orderings of `β` into endpoint sectors with their sums.
pub fn sector_decompose(f: &MultilinearPoly, beta: &PathTuple) -> Result<SectorReport> {
    if beta.len() != f.degree() {
        return usage(format!("tuple of length {} for a degree-{} polynomial", beta.len(), f.degree()));
    }
    let refs: Vec<&Path> = beta.paths.iter().collect();
    let mut sectors: BTreeMap<(Vertex, Vertex), Sector> = BTreeMap::new();
    for (path, ranks) in product_classes(&refs) {
        let key = (path.source(), path.target());
        let sector = sectors.entry(key).or_insert_with(|| Sector {
            source: key.0,
            target: key.1,
            ranks: Vec::new(),
            products: Vec::new(),
            sum: Rational::zero(),
        });
        for &r in &ranks {
            sector.sum += f.coefficient_at(r as usize);
        }
        sector.ranks.extend(ranks.iter().map(|&r| r as usize));
        sector.products.push(path);
    }
    let sectors = sectors
        .into_values()
        .map(|mut s| {
            s.ranks.sort_unstable();
            s
        })
        .collect();
    Ok(SectorReport { sectors })
}

/// Two orderings in one sector with different products.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniqueProductViolation {
    pub source: Vertex,
    pub target: Vertex,
    pub sigma: Permutation,
    pub sigma_prime: Permutation,
    pub products: (Path, Path),
}

/// Checks that each sector of `β` has a single product path. Only
/// meaningful on PI quivers; a non-PI quiver is a usage error.
pub fn verify_unique_products(q: &Quiver, beta: &PathTuple) -> Result<Option<UniqueProductViolation>> {
    let status = q.pi_status();
    if !status.is_pi {
        let v = status.witness.expect("non-PI quivers have a witness");
        return usage(format!(
            "quiver is not PI: vertex {v} lies on two distinct oriented cycles, whose products \
             in either order share endpoints ({v},{v}) but differ"
        ));
    }
    Ok(first_violation(beta))
}

fn first_violation(beta: &PathTuple) -> Option<UniqueProductViolation> {
    let refs: Vec<&Path> = beta.paths.iter().collect();
    let m = beta.len();
    let classes = product_classes(&refs);
    for (a, (pa, ra)) in classes.iter().enumerate() {
        for (pb, rb) in &classes[a + 1..] {
            if (pa.source(), pa.target()) == (pb.source(), pb.target()) {
                return Some(UniqueProductViolation {
                    source: pa.source(),
                    target: pa.target(),
                    sigma: Permutation::unrank(m, ra[0] as usize).ok()?,
                    sigma_prime: Permutation::unrank(m, rb[0] as usize).ok()?,
                    products: (pa.clone(), pb.clone()),
                });
            }
        }
    }
    None
}

/// A path tuple on which a polynomial does not vanish in `FQ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    /// Index of the failing polynomial among those checked.
    pub poly: usize,
    pub tuple: Vec<String>,
    /// Path whose coefficient in `f(β)` is nonzero, and that coefficient.
    pub path: String,
    pub coefficient: String,
}

/// Outcome of scanning path tuples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathScan {
    pub total_tuples: u128,
    pub checked_tuples: u64,
    pub sampled: bool,
    pub bound: usize,
    pub closure_size: usize,
    /// Nonzero product classes seen, summed over tuples.
    pub nonzero_sectors: u64,
    pub counterexample: Option<Counterexample>,
    pub unique_product_violations: u64,
    pub first_violation: Option<(Vec<String>, UniqueProductViolation)>,
}

impl PathScan {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none() && self.unique_product_violations == 0
    }
}

/// Options for path scans.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanOptions {
    pub max_len: usize,
    pub seed: u64,
    pub tuple_budget: u64,
    /// Count sectors with several distinct products (used on PI quivers).
    pub check_unique_products: bool,
}

impl ScanOptions {
    pub fn new(max_len: usize, seed: u64) -> Self {
        Self { max_len, seed, tuple_budget: TUPLE_BUDGET, check_unique_products: true }
    }
}

/// Evaluates every polynomial in `polys` (all of degree `m`) on each tuple of
/// closure paths, exhaustively or by seeded sampling above the budget.
pub fn scan_path_tuples(
    q: &Quiver,
    closure: &[Path],
    polys: &[MultilinearPoly],
    m: usize,
    opts: ScanOptions,
) -> Result<PathScan> {
    if let Some(f) = polys.iter().find(|f| f.degree() != m) {
        return usage(format!("polynomial of degree {} in a degree-{m} scan", f.degree()));
    }
    if m == 0 {
        return usage("degree must be at least 1");
    }
    let c = closure.len();
    let total = (c as u128).pow(m as u32);
    let sampled = total > opts.tuple_budget as u128;
    let mut scan = PathScan {
        total_tuples: total,
        checked_tuples: 0,
        sampled,
        bound: opts.max_len,
        closure_size: c,
        nonzero_sectors: 0,
        counterexample: None,
        unique_product_violations: 0,
        first_violation: None,
    };
    if c == 0 {
        return Ok(scan);
    }
    let label_tuple = |idx: &[usize]| idx.iter().map(|&i| q.label(&closure[i])).collect::<Vec<_>>();
    let visit = |idx: &[usize], scan: &mut PathScan| -> bool {
        scan.checked_tuples += 1;
        let refs: Vec<&Path> = idx.iter().map(|&i| &closure[i]).collect();
        let classes = product_classes(&refs);
        scan.nonzero_sectors += classes.len() as u64;
        if opts.check_unique_products {
            let tuple = PathTuple { paths: refs.iter().map(|p| (*p).clone()).collect() };
            if let Some(v) = first_violation(&tuple) {
                scan.unique_product_violations += 1;
                scan.first_violation.get_or_insert_with(|| (label_tuple(idx), v));
            }
        }
        for (k, f) in polys.iter().enumerate() {
            for (path, ranks) in &classes {
                let sum: Rational = ranks.iter().map(|&r| f.coefficient_at(r as usize)).sum();
                if !sum.is_zero() {
                    scan.counterexample = Some(Counterexample {
                        poly: k,
                        tuple: label_tuple(idx),
                        path: q.label(path),
                        coefficient: sum.to_string(),
                    });
                    return false;
                }
            }
        }
        true
    };
    let mut idx = vec![0usize; m];
    if sampled {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        for _ in 0..opts.tuple_budget {
            for slot in idx.iter_mut() {
                *slot = rng.random_range(0..c);
            }
            if !visit(&idx, &mut scan) {
                break;
            }
        }
    } else {
        'outer: loop {
            if !visit(&idx, &mut scan) {
                break;
            }
            let mut k = m;
            loop {
                if k == 0 {
                    break 'outer;
                }
                k -= 1;
                idx[k] += 1;
                if idx[k] < c {
                    break;
                }
                idx[k] = 0;
            }
        }
    }
    Ok(scan)
}

/// Result of [`verify_identity_on_paths`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathVerification {
    pub pi_quiver: bool,
    pub scan: PathScan,
}

/// Checks that an identity of `A_π` vanishes on all closure-path tuples of
/// length at most `max_len`. Rejects `f` up front if it is not an identity
/// of `A_π`.
pub fn verify_identity_on_paths(
    f: &MultilinearPoly,
    q: &Quiver,
    pi: &PathSet,
    opts: ScanOptions,
) -> Result<PathVerification> {
    let rel = TransitiveRelation::from_pi(q, pi);
    if !identity_space(&rel, f.degree())?.contains(f)? {
        let (tuple, value) = nonvanishing_unit_tuple(&rel, f)?
            .ok_or_else(|| Error::Invariant("kernel rejects f but no unit tuple does".into()))?;
        let units: Vec<String> = tuple.iter().map(|(i, j)| format!("e{i},{j}")).collect();
        let entries: Vec<String> = value.entries().map(|((i, j), c)| format!("{c}·e{i},{j}")).collect();
        return Err(Error::Precondition(format!(
            "not an identity of A_π: f({}) = {}",
            units.join(", "),
            entries.join(" + ")
        )));
    }
    let pi_quiver = q.is_pi();
    let closure = q.closure_paths(pi, opts.max_len);
    let scan = scan_path_tuples(
        q,
        &closure,
        std::slice::from_ref(f),
        f.degree(),
        ScanOptions { check_unique_products: pi_quiver && opts.check_unique_products, ..opts },
    )?;
    Ok(PathVerification { pi_quiver, scan })
}

/// Per-degree section of a [`TheoremReport`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeReport {
    pub m: usize,
    pub dimension: usize,
    pub basis: Vec<String>,
    pub total_tuples: String,
    pub checked_tuples: u64,
    pub sampled: bool,
    pub nonzero_sectors: u64,
    pub sector_spot_checks: u64,
    pub sector_sum_failures: u64,
    pub unique_product_violations: u64,
    pub counterexample: Option<Counterexample>,
    pub verdict: String,
}

/// Machine-readable record of a theorem check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub schema: u32,
    pub quiver_hash: String,
    pub vertices: usize,
    pub pi: Vec<String>,
    pub pattern: Vec<String>,
    pub pi_quiver: bool,
    pub pi_witness: Option<usize>,
    pub bound: usize,
    pub seed: u64,
    pub closure_size: usize,
    pub notes: Vec<String>,
    pub degrees: Vec<DegreeReport>,
    pub verdict: String,
}

impl TheoremReport {
    pub fn passed(&self) -> bool {
        self.verdict == "pass"
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }

    /// Fixed-width summary table.
    pub fn summary(&self) -> String {
        let mut s = format!(
            "quiver {}  PI: {}  bound: {}  closure paths: {}\n",
            &self.quiver_hash[..12],
            if self.pi_quiver { "yes" } else { "no" },
            self.bound,
            self.closure_size
        );
        for line in &self.pattern {
            s.push_str(&format!("  {line}\n"));
        }
        for note in &self.notes {
            s.push_str(&format!("note: {note}\n"));
        }
        s.push_str(" m  dim  tuples checked  sampled  sectors  spot  verdict\n");
        for d in &self.degrees {
            s.push_str(&format!(
                "{:>2} {:>4} {:>15} {:>8} {:>8} {:>5}  {}\n",
                d.m,
                d.dimension,
                d.checked_tuples,
                if d.sampled { "yes" } else { "no" },
                d.nonzero_sectors,
                d.sector_spot_checks,
                d.verdict
            ));
        }
        s.push_str(&format!("verdict: {}\n", self.verdict));
        s
    }
}

pub fn quiver_hash(q: &Quiver) -> String {
    hex::encode(Sha256::digest(q.canonical_text().as_bytes()))
}

/// Number of tuples per degree re-examined through [`sector_decompose`].
const SPOT_CHECKS: usize = 64;

/// Options for [`theorem_report`]; `fault` perturbs each basis element
/// before the path checks, for exercising the failure path.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReportOptions {
    pub m_max: usize,
    pub max_len: usize,
    pub seed: u64,
    pub tuple_budget: u64,
    pub fault: bool,
}

impl ReportOptions {
    pub fn new(m_max: usize, max_len: usize) -> Self {
        Self { m_max, max_len, seed: 0, tuple_budget: TUPLE_BUDGET, fault: false }
    }
}

/// For each degree up to `m_max`: the identity space of `A_π`, a scan of
/// every basis element over closure-path tuples, and sector spot checks.
pub fn theorem_report(q: &Quiver, pi: &PathSet, opts: ReportOptions) -> Result<TheoremReport> {
    let rel = TransitiveRelation::from_pi(q, pi);
    let status = q.pi_status();
    let closure = q.closure_paths(pi, opts.max_len);
    let mut notes = Vec::new();
    if rel.is_empty() {
        notes.push("A_π = 0: every polynomial is an identity; path checks are vacuous".to_string());
    }
    if !status.is_pi {
        notes.push(format!(
            "quiver is not PI (vertex {} lies on two oriented cycles); the equality is not expected",
            status.witness.unwrap_or(0)
        ));
    }
    if closure.iter().any(|p| p.len() == opts.max_len) || closure.is_empty() && !pi.is_empty() {
        notes.push(format!("closure truncated at path length {}", opts.max_len));
    }
    let mut degrees = Vec::new();
    for m in 1..=opts.m_max {
        let space = identity_space(&rel, m)?;
        let mut basis = space.basis();
        if opts.fault {
            for f in &mut basis {
                let bump = MultilinearPoly::from_ranks(m, [(factorial(m) - 1, Rational::from_integer(1.into()))]);
                *f = f.add(&bump)?;
            }
        }
        let scan_opts = ScanOptions {
            max_len: opts.max_len,
            seed: opts.seed,
            tuple_budget: opts.tuple_budget,
            check_unique_products: status.is_pi,
        };
        let scan = scan_path_tuples(q, &closure, &basis, m, scan_opts)?;
        let (spot, failures) = spot_check_sectors(q, &closure, &basis, m, opts.seed)?;
        let passed = scan.passed() && failures == 0;
        degrees.push(DegreeReport {
            m,
            dimension: space.dimension(),
            basis: basis.iter().map(ToString::to_string).collect(),
            total_tuples: scan.total_tuples.to_string(),
            checked_tuples: scan.checked_tuples,
            sampled: scan.sampled,
            nonzero_sectors: scan.nonzero_sectors,
            sector_spot_checks: spot,
            sector_sum_failures: failures,
            unique_product_violations: scan.unique_product_violations,
            counterexample: scan.counterexample,
            verdict: if passed { "pass" } else { "fail" }.to_string(),
        });
    }
    let verdict = if degrees.iter().all(|d| d.verdict == "pass") { "pass" } else { "fail" };
    Ok(TheoremReport {
        schema: REPORT_SCHEMA,
        quiver_hash: quiver_hash(q),
        vertices: q.vertex_count(),
        pi: pi.paths().iter().map(|p| q.label(p)).collect(),
        pattern: rel.render().lines().map(str::to_string).collect(),
        pi_quiver: status.is_pi,
        pi_witness: status.witness,
        bound: opts.max_len,
        seed: opts.seed,
        closure_size: closure.len(),
        notes,
        degrees,
        verdict: verdict.to_string(),
    })
}

/// Runs [`sector_decompose`] on a seeded sample of tuples with nonzero
/// products and counts sectors whose sum does not vanish. Returns
/// `(sectors examined, failures)`.
fn spot_check_sectors(
    q: &Quiver,
    closure: &[Path],
    basis: &[MultilinearPoly],
    m: usize,
    seed: u64,
) -> Result<(u64, u64)> {
    if closure.is_empty() || basis.is_empty() {
        return Ok((0, 0));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (m as u64).rotate_left(32));
    let (mut examined, mut failures, mut found) = (0u64, 0u64, 0usize);
    for _ in 0..SPOT_CHECKS * 64 {
        if found == SPOT_CHECKS {
            break;
        }
        let paths: Vec<Path> = (0..m).map(|_| closure[rng.random_range(0..closure.len())].clone()).collect();
        let beta = PathTuple::new(q, paths)?;
        let mut any = false;
        for f in basis {
            let report = sector_decompose(f, &beta)?;
            any |= !report.sectors.is_empty();
            examined += report.sectors.len() as u64;
            failures += report.sectors.iter().filter(|s| !s.sum.is_zero()).count() as u64;
        }
        if any {
            found += 1;
        }
    }
    Ok((examined, failures))
}
