//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::path::{Path as FsPath, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use quiverpi::{
    identity_space, maximal_chains, nonvanishing_unit_tuple, parse_poly, phi, standard_poly, tideal_component,
    IncidenceElement, MultilinearPoly, PathAlgebraElement, Permutation, Quiver, TransitiveRelation,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check, Duration);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

struct Run {
    code: Option<i32>,
    stdout: String,
}

fn quiverpi(args: &[&str]) -> Run {
    let o = Command::new(env!("CARGO_BIN_EXE_quiverpi")).args(args).output().expect("binary runs");
    Run { code: o.status.code(), stdout: String::from_utf8_lossy(&o.stdout).into_owned() }
}

fn p(path: &FsPath) -> &str {
    path.to_str().unwrap()
}

fn expect_exit(args: &[&str], code: i32) -> Result<Run, String> {
    let r = quiverpi(args);
    ensure(r.code == Some(code), || format!("`quiverpi {}` exited {:?}, expected {code}\n{}", args.join(" "), r.code, r.stdout))?;
    Ok(r)
}

fn criterion_1() -> Check {
    let doc = fixture("example1.quiver");
    let r = expect_exit(&["pattern", p(&doc)], 0)?;
    ensure(r.stdout == "**\n..\n", || format!("pattern printed {:?}", r.stdout))?;
    for m in ["3", "4", "5"] {
        let r = expect_exit(&["compare", p(&doc), "--degree", m, "--gen", "f"], 0)?;
        ensure(r.stdout.lines().nth(2) == Some("equal"), || r.stdout.clone())?;
    }
    Ok(())
}

fn criterion_2() -> Check {
    let doc = fixture("example2.quiver");
    let r = expect_exit(&["pattern", p(&doc)], 0)?;
    ensure(r.stdout == "**.\n.*.\n.**\n", || format!("pattern printed {:?}", r.stdout))?;
    for m in ["4", "5"] {
        expect_exit(&["compare", p(&doc), "--degree", m, "--gen", "g"], 0)?;
        let r = expect_exit(&["compare", p(&doc), "--degree", m, "--chains"], 0)?;
        ensure(r.stdout.contains("chains 1<1<2<2, 3<3<2<2"), || r.stdout.clone())?;
    }
    Ok(())
}

fn criterion_3() -> Check {
    let doc = fixture("example2.quiver");
    let r = expect_exit(&["pattern", p(&doc), "--pi", "restricted"], 0)?;
    ensure(r.stdout == "**.\n.*.\n.*.\n", || format!("pattern printed {:?}", r.stdout))?;
    for m in ["4", "5"] {
        expect_exit(&["compare", p(&doc), "--pi", "restricted", "--degree", m, "--with-pi", "pi"], 0)?;
    }
    Ok(())
}

fn int_unit(n: usize, (i, j): (usize, usize)) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0; n]; n];
    m[i - 1][j - 1] = 1;
    m
}

fn int_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

/// `s_k` evaluated on dense integer matrices by summing every signed
/// ordered product.
fn dense_standard(mats: &[Vec<Vec<i64>>]) -> Vec<Vec<i64>> {
    let n = mats[0].len();
    let mut out = vec![vec![0i64; n]; n];
    for sigma in Permutation::all(mats.len()) {
        let imgs = sigma.images();
        let prod = imgs[1..].iter().fold(mats[imgs[0] - 1].clone(), |acc, &i| int_mul(&acc, &mats[i - 1]));
        for r in 0..n {
            for c in 0..n {
                out[r][c] += i64::from(sigma.sign()) * prod[r][c];
            }
        }
    }
    out
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut with: Vec<Vec<usize>> = subsets(n - 1, k - 1).into_iter().map(|mut s| {
        s.push(n - 1);
        s
    }).collect();
    with.extend(subsets(n - 1, k));
    with
}

/// Brute force: does `s_k` vanish on all `k`-tuples of matrix units of
/// `M_n`? `s_k` is multilinear and alternating, so tuples with a repeated
/// unit give zero and reordering a tuple only flips the sign; for `k > 4`
/// it suffices to run over `k`-subsets of units. For `k <= 4` every tuple
/// is tried.
fn oracle_standard_vanishes(n: usize, k: usize) -> bool {
    let units: Vec<(usize, usize)> = (1..=n).flat_map(|i| (1..=n).map(move |j| (i, j))).collect();
    let zero = vec![vec![0i64; n]; n];
    if k <= 4 {
        let mut digits = vec![0usize; k];
        loop {
            let mats: Vec<_> = digits.iter().map(|&d| int_unit(n, units[d])).collect();
            if dense_standard(&mats) != zero {
                return false;
            }
            let Some(pos) = (0..k).rev().find(|&i| digits[i] + 1 < units.len()) else { return true };
            digits[pos] += 1;
            digits[pos + 1..].iter_mut().for_each(|d| *d = 0);
        }
    }
    subsets(units.len(), k).iter().all(|s| {
        let mats: Vec<_> = s.iter().map(|&u| int_unit(n, units[u])).collect();
        dense_standard(&mats) == zero
    })
}

fn criterion_4() -> Check {
    for (n, k, expected) in [(2, 4, true), (2, 3, false), (3, 6, true), (3, 5, false)] {
        let oracle = oracle_standard_vanishes(n, k);
        ensure(oracle == expected, || format!("brute force says s_{k} in Id(M_{n}) is {oracle}"))?;
        let kernel = identity_space(&TransitiveRelation::full(n), k)
            .and_then(|s| s.contains(&standard_poly(k)?))
            .map_err(|e| e.to_string())?;
        ensure(kernel == oracle, || format!("kernel says s_{k} in Id(M_{n}) is {kernel}, brute force {oracle}"))?;
    }
    Ok(())
}

fn criterion_5() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let cases = [("example1.quiver", "6"), ("example2.quiver", "4"), ("c2.quiver", "6"), ("c3.quiver", "6")];
    for (name, max_len) in cases {
        let json = dir.path().join(format!("{name}.json"));
        let doc = fixture(name);
        expect_exit(&["report", p(&doc), "--m-max", "4", "--max-len", max_len, "--json", p(&json)], 0)?;
        let text = std::fs::read_to_string(&json).map_err(|e| e.to_string())?;
        let report: serde_json::Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
        ensure(report["verdict"] == "pass" && report["pi_quiver"] == true, || format!("{name}: {text}"))?;
        for d in report["degrees"].as_array().unwrap() {
            let clean = d["counterexample"].is_null()
                && d["unique_product_violations"] == 0
                && d["sector_sum_failures"] == 0
                && d["verdict"] == "pass";
            ensure(clean, || format!("{name} m={}: {d}", d["m"]))?;
        }
        expect_exit(&["check-report", p(&json), "--doc", p(&doc)], 0)?;
    }
    Ok(())
}

fn random_relation(rng: &mut ChaCha8Rng, n: usize, density: f64) -> TransitiveRelation {
    let pairs: Vec<(usize, usize)> =
        (1..=n).flat_map(|i| (1..=n).map(move |j| (i, j))).filter(|_| rng.random_bool(density)).collect();
    TransitiveRelation::closure_of(n, pairs).unwrap()
}

fn criterion_6() -> Check {
    for q in common::fixture_quivers() {
        let paths = q.all_paths(4);
        for a in &paths {
            for b in paths.iter().filter(|b| a.len() + b.len() <= 4) {
                let lhs = match q.compose(a, b).unwrap() {
                    Some(ab) => phi(&q, &PathAlgebraElement::from_path(ab)),
                    None => IncidenceElement::zero(q.vertex_count()),
                };
                let rhs = phi(&q, &PathAlgebraElement::from_path(a.clone()))
                    .matmul(&phi(&q, &PathAlgebraElement::from_path(b.clone())));
                ensure(lhs == rhs, || format!("φ({a}·{b}) ≠ φ({a})φ({b})"))?;
            }
        }
    }

    for n in 1..=3 {
        for rel in common::all_transitive_relations(n) {
            for m in 1..=4 {
                let space = identity_space(&rel, m).map_err(|e| e.to_string())?;
                let dense = common::dense_identity_space(&rel, m);
                ensure(common::to_dense_rows(&space.basis()) == dense, || {
                    format!("dense oracle disagrees at m={m} on\n{}", rel.render())
                })?;
                for f in space.basis() {
                    for tau in Permutation::all(m) {
                        let moved = f.permute_variables(&tau).unwrap();
                        ensure(space.contains(&moved).unwrap(), || format!("{f} moved by {tau:?} left the space"))?;
                    }
                }
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(50);
    for _ in 0..50 {
        let n = rng.random_range(2..=4);
        let small = random_relation(&mut rng, n, 0.3);
        let extra = random_relation(&mut rng, n, 0.2);
        let big = TransitiveRelation::closure_of(n, small.pairs().into_iter().chain(extra.pairs())).unwrap();
        let m = rng.random_range(2..=4);
        let inside = identity_space(&big, m).unwrap().is_subspace_of(&identity_space(&small, m).unwrap()).unwrap();
        ensure(inside, || format!("monotonicity fails at m={m}:\n{}vs\n{}", small.render(), big.render()))?;
    }

    let mut quivers = 0;
    for n in 1..=4 {
        for k in 0..=5 {
            for arrows in common::all_arrow_multisets(n, k) {
                let status = Quiver::new(n, &arrows).unwrap().pi_status();
                let offending = common::vertices_on_two_cycles(n, &arrows);
                ensure(status.is_pi == offending.is_empty(), || format!("PI test disagrees on {arrows:?}"))?;
                ensure(status.witness.is_none_or(|w| offending.contains(&w)), || format!("bad witness on {arrows:?}"))?;
                quivers += 1;
            }
        }
    }
    ensure(quivers > 20_000, || format!("only {quivers} quivers enumerated"))
}

fn criterion_7() -> Check {
    let doc = fixture("example1.quiver");
    let r = expect_exit(&["verify", p(&doc), "--poly", "c"], 1)?;
    ensure(r.stdout.contains("f(e1,1, e1,2)"), || r.stdout.clone())?;
    let rel = TransitiveRelation::from_pairs(2, [(1, 1), (1, 2)]).unwrap();
    let c: MultilinearPoly = parse_poly("comm(1,2)").unwrap();
    let witness = nonvanishing_unit_tuple(&rel, &c).unwrap().map(|(t, _)| t);
    ensure(witness == Some(vec![(1, 1), (1, 2)]), || format!("witness {witness:?}"))?;

    let r = expect_exit(&["check-pi", p(&fixture("two_loops.quiver"))], 1)?;
    ensure(r.stdout.starts_with("PI: no (vertex 1"), || r.stdout.clone())?;
    ensure(maximal_chains(&TransitiveRelation::full(2)).is_err(), || "full pattern decomposed".into())?;
    ensure(tideal_component(&[c], 2).map(|s| s.dimension()) == Ok(1), || "tideal of [x1,x2]".into())
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("Example 1 reproduction", criterion_1, Duration::from_secs(5)),
        ("Example 2 reproduction", criterion_2, Duration::from_secs(60)),
        ("Example 3 reproduction", criterion_3, Duration::from_secs(60)),
        ("standard polynomials on M_2 and M_3", criterion_4, Duration::from_secs(120)),
        ("theorem verification suite", criterion_5, Duration::from_secs(600)),
        ("property suites", criterion_6, Duration::from_secs(300)),
        ("negative controls", criterion_7, Duration::from_secs(1)),
    ];
    let mut failed = 0;
    for (k, (name, check, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let took = start.elapsed();
        let result = result.and_then(|()| {
            ensure(took <= *budget, || format!("took {:.2} s, budget {} s", took.as_secs_f64(), budget.as_secs()))
        });
        match result {
            Ok(()) => println!("criterion {} PASS  {name} ({:.2} s)", k + 1, took.as_secs_f64()),
            Err(why) => {
                failed += 1;
                println!("criterion {} FAIL  {name} ({:.2} s): {why}", k + 1, took.as_secs_f64());
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
