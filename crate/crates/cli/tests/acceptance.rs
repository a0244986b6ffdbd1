//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
//!
//! Every comparison is exact (integer and group-ring equality); there are no
//! floating-point tolerances anywhere in the suite.

use std::collections::BTreeSet;
use std::process::{Command, ExitCode};
use std::time::Instant;

use lkb_core::basis::{enumerate_basis, BasisTuple};
use lkb_core::braid::{BraidWord, Generators};
use lkb_core::counterexample::cx_certificate;
use lkb_core::group::NilpotencyClass;
use lkb_core::ring::{RingElement, RingMorphism};
use lkb_core::tower::{check_tower, TowerLayer};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 0x4c4b_4232;

const THETA_STRANDS: std::ops::RangeInclusive<usize> = 3..=8;
const LAYER_STRANDS: std::ops::RangeInclusive<usize> = 3..=6;
const LAYER_RANGE: std::ops::RangeInclusive<usize> = 2..=5;

const RANK_K2_MAX_N: usize = 12;
const RANK_MAX_K: u32 = 4;
const RANK_MAX_N: usize = 10;

const CLASS_RANGE: std::ops::RangeInclusive<usize> = 2..=8;
const SQUARE_RANGE: std::ops::RangeInclusive<usize> = 3..=6;
const SQUARE_MAX_N: usize = 6;
const SQUARE_WORDS: usize = 50;
const SQUARE_WORD_LEN: usize = 10;

const INVERSE_MAX_N: usize = 8;

const EQ_MAX_N: usize = 5;
const EQ_MAX_LEN: usize = 12;
const UNEQUAL_PAIRS: usize = 200;
const REWRITE_PAIRS: usize = 100;

const CX_RMAX: usize = 16;

const DETERMINISM_RUNS: usize = 3;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn random_word(rng: &mut ChaCha8Rng, n: usize, max_len: usize) -> Vec<i32> {
    let len = rng.gen_range(0..=max_len);
    (0..len)
        .map(|_| {
            let i = rng.gen_range(1..n as i32);
            if rng.gen_bool(0.5) { i } else { -i }
        })
        .collect()
}

fn word(n: usize, letters: Vec<i32>) -> BraidWord {
    BraidWord::new(n, letters).expect("letters in range")
}

fn criterion_1() -> Check {
    for n in THETA_STRANDS {
        let report = Generators::theta(n).and_then(|g| g.verify_relations()).map_err(err)?;
        ensure(report.all_hold(), || format!("theta n={n}: {:?}", report.failures().collect::<Vec<_>>()))?;
    }
    for r in LAYER_RANGE {
        let layer = TowerLayer::new(r).map_err(err)?;
        for n in LAYER_STRANDS {
            let report = layer.generators(n).and_then(|g| g.verify_relations()).map_err(err)?;
            ensure(report.all_hold(), || format!("layer {r} n={n}: {:?}", report.failures().collect::<Vec<_>>()))?;
        }
    }
    Ok(format!("theta n={THETA_STRANDS:?}, layers r={LAYER_RANGE:?} x n={LAYER_STRANDS:?}"))
}

/// Every `(n-1)`-tuple over `0..=k` with sum `k`, by odometer.
fn brute_force_tuples(n: usize, k: u32) -> BTreeSet<Vec<u32>> {
    let slots = n - 1;
    let mut out = BTreeSet::new();
    let mut digits = vec![0u32; slots];
    loop {
        if digits.iter().sum::<u32>() == k {
            out.insert(digits.clone());
        }
        let mut p = 0;
        loop {
            if p == slots {
                return out;
            }
            if digits[p] < k {
                digits[p] += 1;
                break;
            }
            digits[p] = 0;
            p += 1;
        }
    }
}

fn pascal(n: usize, k: usize) -> u64 {
    let mut row = vec![1u64];
    for _ in 0..n {
        let mut next = vec![1u64; row.len() + 1];
        for j in 1..row.len() {
            next[j] = row[j - 1] + row[j];
        }
        row = next;
    }
    row.get(k).copied().unwrap_or(0)
}

fn check_rank(n: usize, k: u32) -> Result<(), String> {
    let basis = enumerate_basis(n, k).map_err(err)?;
    let listed: BTreeSet<Vec<u32>> = basis.iter().map(|t| t.entries().to_vec()).collect();
    ensure(listed.len() == basis.len(), || format!("n={n} k={k}: repeated tuples"))?;
    ensure(listed == brute_force_tuples(n, k), || format!("n={n} k={k}: tuple set differs from brute force"))?;
    let expected = pascal(n + k as usize - 2, k as usize);
    ensure(basis.len() as u64 == expected, || format!("n={n} k={k}: {} != C(n+k-2,k) = {expected}", basis.len()))
}

fn criterion_2() -> Check {
    for n in 2..=RANK_K2_MAX_N {
        check_rank(n, 2)?;
        ensure(enumerate_basis(n, 2).map_err(err)?.len() as u64 == pascal(n, 2), || format!("n={n}: != C(n,2)"))?;
    }
    for n in 2..=RANK_MAX_N {
        for k in 0..=RANK_MAX_K {
            check_rank(n, k)?;
        }
    }
    Ok(format!("k=2 up to n={RANK_K2_MAX_N}; k<={RANK_MAX_K} up to n={RANK_MAX_N}; brute-force and Pascal oracles"))
}

fn unit_key(n: usize, a: usize, b: usize) -> BasisTuple {
    let mut e = vec![0u32; n - 1];
    e[a - 1] += 1;
    e[b - 1] += 1;
    BasisTuple::new(&e)
}

fn criterion_3() -> Check {
    let layer = TowerLayer::new(2).map_err(err)?;
    let g = layer.group().clone();
    let q = RingElement::monomial(&g, 1, g.normalize(&[1, 0], 0).map_err(err)?);
    ensure(q == RingElement::monomial(&g, 1, g.normalize(&[0, 1], 0).map_err(err)?), || "q1 != q2 at layer 2".into())?;
    let one = RingElement::one(&g);
    let zero = RingElement::zero(&g);
    let burau = [[one.clone(), zero.clone(), zero.clone()], [one.clone(), -&q, q.clone()], [zero.clone(), zero.clone(), one.clone()]];
    let mut blocks = 0;
    for n in LAYER_STRANDS {
        let gens = layer.generators(n).map_err(err)?;
        let mut monomials = BTreeSet::new();
        for i in 1..n {
            for (_, _, e) in gens.sigma(i).entries() {
                monomials.extend(e.terms().map(|(m, _)| m.clone()));
            }
        }
        for a in &monomials {
            for b in &monomials {
                ensure(g.mul(a, b) == g.mul(b, a), || format!("n={n}: {a:?} and {b:?} do not commute"))?;
            }
        }
        let report = gens.verify_relations().map_err(err)?;
        ensure(report.all_hold(), || format!("layer 2 n={n}: relations fail"))?;
        for i in 2..n - 1 {
            let m = gens.sigma(i);
            for p in (1..n).filter(|p| !(i - 1..=i + 1).contains(p)) {
                let keys: Vec<BasisTuple> = (i - 1..=i + 1).map(|j| unit_key(n, p, j)).collect();
                for (r, row) in keys.iter().zip(&burau) {
                    for (c, x) in keys.iter().zip(row) {
                        ensure(m.entry(r, c) == *x, || format!("n={n} i={i} p={p}: entry ({r},{c}) = {:?}", m.entry(r, c)))?;
                    }
                }
                for (r, c, _) in m.entries() {
                    ensure(!keys.contains(c) || keys.contains(r), || format!("n={n} i={i}: column {c} leaves its block at row {r}"))?;
                }
                blocks += 1;
            }
        }
    }
    Ok(format!("n={LAYER_STRANDS:?}: commuting entries, relations, {blocks} Burau blocks"))
}

fn criterion_4() -> Check {
    for r in CLASS_RANGE {
        let layer = TowerLayer::new(r).map_err(err)?;
        let g = layer.group();
        let class = g.nilpotency_class(r + 8);
        ensure(class == NilpotencyClass::Exactly(r - 1), || format!("r={r}: class {class:?}"))?;
        ensure(g.is_trivial_layer(&g.lcs_layer(r)), || format!("r={r}: Γ_r not trivial"))?;
        ensure(!g.is_trivial_layer(&g.lcs_layer(r - 1)), || format!("r={r}: Γ_(r-1) trivial"))?;
    }
    let rmax = *SQUARE_RANGE.end();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 4);
    let mut words = 0;
    for n in 3..=SQUARE_MAX_N {
        let report = check_tower(n, rmax).map_err(err)?;
        ensure(report.passed(), || format!("n={n}: {report:?}"))?;
        let theta = Generators::theta(n).map_err(err)?;
        for r in SQUARE_RANGE {
            let upper = TowerLayer::new(r).map_err(err)?;
            let lower = TowerLayer::new(r - 1).map_err(err)?;
            let step = RingMorphism::new(upper.step_down().ok_or("missing step")?.clone());
            let (up, low) = (theta.map(&upper.ring_from_theta()).map_err(err)?, theta.map(&lower.ring_from_theta()).map_err(err)?);
            for _ in 0..SQUARE_WORDS {
                let w = word(n, random_word(&mut rng, n, SQUARE_WORD_LEN));
                let reduced = up.word_matrix(&w).and_then(|m| m.map(&step)).map_err(err)?;
                ensure(reduced == low.word_matrix(&w).map_err(err)?, || format!("n={n} r={r} word {w}"))?;
                words += 1;
            }
        }
    }
    Ok(format!("classes r={CLASS_RANGE:?}; squares r={SQUARE_RANGE:?}, n<={SQUARE_MAX_N}, {words} random words"))
}

fn criterion_5() -> Check {
    let mut count = 0;
    for n in 3..=INVERSE_MAX_N {
        let g = Generators::theta(n).map_err(err)?;
        for i in 1..n {
            let (a, b) = (g.sigma(i), g.sigma_inverse(i));
            ensure(a.mul(b).map_err(err)?.is_identity(), || format!("n={n} i={i}: σσ⁻¹ != I"))?;
            ensure(b.mul(a).map_err(err)?.is_identity(), || format!("n={n} i={i}: σ⁻¹σ != I"))?;
            count += 1;
        }
    }
    Ok(format!("{count} generators, n<={INVERSE_MAX_N}"))
}

/// Underlying permutation and exponent sum of a word.
fn perm_and_exponent(n: usize, letters: &[i32]) -> (Vec<usize>, i64) {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut sum = 0i64;
    for &l in letters {
        let i = l.unsigned_abs() as usize;
        perm.swap(i - 1, i);
        sum += l.signum() as i64;
    }
    (perm, sum)
}

/// One relation-preserving edit, or `None` when the chosen move does not apply.
fn rewrite_once(rng: &mut ChaCha8Rng, n: usize, w: &[i32]) -> Option<Vec<i32>> {
    let mut out = w.to_vec();
    match rng.gen_range(0..4) {
        0 => {
            let i = rng.gen_range(1..n as i32);
            let l = if rng.gen_bool(0.5) { i } else { -i };
            let p = rng.gen_range(0..=w.len());
            out.splice(p..p, [l, -l]);
        }
        1 => {
            let spots: Vec<usize> = (0..w.len().saturating_sub(1)).filter(|&p| w[p] == -w[p + 1]).collect();
            let p = *spots.get(rng.gen_range(0..spots.len().max(1)))?;
            out.drain(p..p + 2);
        }
        2 => {
            let spots: Vec<usize> = (0..w.len().saturating_sub(2))
                .filter(|&p| {
                    let (a, b, c) = (w[p], w[p + 1], w[p + 2]);
                    a == c && a.signum() == b.signum() && (a.abs() - b.abs()).abs() == 1
                })
                .collect();
            let p = *spots.get(rng.gen_range(0..spots.len().max(1)))?;
            let (a, b) = (w[p], w[p + 1]);
            out[p..p + 3].copy_from_slice(&[b, a, b]);
        }
        _ => {
            let spots: Vec<usize> =
                (0..w.len().saturating_sub(1)).filter(|&p| (w[p].abs() - w[p + 1].abs()).abs() >= 2).collect();
            let p = *spots.get(rng.gen_range(0..spots.len().max(1)))?;
            out.swap(p, p + 1);
        }
    }
    (out.len() <= EQ_MAX_LEN).then_some(out)
}

fn criterion_6() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 6);
    let generators: Vec<Generators> = (3..=EQ_MAX_N).map(|n| Generators::theta(n).expect("n >= 3")).collect();
    let equal = |n: usize, a: &[i32], b: &[i32]| -> Result<bool, String> {
        let g = &generators[n - 3];
        Ok(g.word_matrix(&word(n, a.to_vec())).map_err(err)? == g.word_matrix(&word(n, b.to_vec())).map_err(err)?)
    };

    let mut unequal = 0;
    while unequal < UNEQUAL_PAIRS {
        let n = rng.gen_range(3..=EQ_MAX_N);
        let (a, b) = (random_word(&mut rng, n, EQ_MAX_LEN), random_word(&mut rng, n, EQ_MAX_LEN));
        if perm_and_exponent(n, &a) == perm_and_exponent(n, &b) {
            continue;
        }
        ensure(!equal(n, &a, &b)?, || format!("n={n}: {a:?} and {b:?} separated by the oracle but reported equal"))?;
        unequal += 1;
    }

    let mut rewritten = 0;
    let mut moves = 0;
    while rewritten < REWRITE_PAIRS {
        let n = rng.gen_range(3..=EQ_MAX_N);
        let a = random_word(&mut rng, n, EQ_MAX_LEN - 2);
        let mut b = a.clone();
        for _ in 0..rng.gen_range(1..=8) {
            if let Some(next) = rewrite_once(&mut rng, n, &b) {
                b = next;
                moves += 1;
            }
        }
        if a == b {
            continue;
        }
        ensure(perm_and_exponent(n, &a) == perm_and_exponent(n, &b), || format!("rewrite changed invariants: {a:?} -> {b:?}"))?;
        ensure(equal(n, &a, &b)?, || format!("n={n}: rewrite {a:?} -> {b:?} reported unequal"))?;
        rewritten += 1;
    }
    Ok(format!("{UNEQUAL_PAIRS} separated pairs unequal, {REWRITE_PAIRS} rewritten pairs equal ({moves} moves), n<={EQ_MAX_N}, len<={EQ_MAX_LEN}"))
}

fn criterion_7() -> Check {
    let report = cx_certificate(CX_RMAX).map_err(err)?;
    ensure(report.all_compatible(), || format!("{report:?}"))?;
    ensure(report.support_sizes() == (2..=CX_RMAX).collect::<Vec<_>>(), || format!("{:?}", report.support_sizes()))?;
    ensure(report.strictly_increasing(), || "sizes not strictly increasing".into())?;
    Ok(format!("r=2..={CX_RMAX}: compatible, sizes {:?}", report.support_sizes()))
}

fn criterion_8() -> Check {
    let invocations: &[&[&str]] = &[
        &["gen", "--n", "5", "--i", "2"],
        &["gen", "--n", "4", "--i", "3", "--ring", "layer:4", "--format", "latex"],
        &["word", "--n", "4", "1 -2 3 2 -1"],
        &["word", "--n", "3", "2 2 -1", "--ring", "layer:2", "--format", "latex"],
        &["verify", "--n", "5"],
        &["verify", "--n", "4", "--ring", "layer:3"],
        &["eq", "--n", "3", "1 2 1", "2 1 2"],
        &["eq", "--n", "4", "1 3", "2"],
        &["rank", "--n", "6", "--k", "3"],
        &["tower-check", "--n", "4", "--rmax", "5"],
        &["lcs", "--preset", "zxz", "--depth", "5"],
        &["lcs", "--preset", "theta", "--depth", "3"],
        &["lcs", "--preset", "layer:4", "--depth", "5"],
        &["counterexample", "--rmax", "8"],
        &["gen", "--n", "4", "--i", "7"],
    ];
    for args in invocations {
        let mut runs = Vec::with_capacity(DETERMINISM_RUNS);
        for _ in 0..DETERMINISM_RUNS {
            let out = Command::new(env!("CARGO_BIN_EXE_lkb")).args(*args).output().map_err(err)?;
            runs.push((out.status.code(), out.stdout, out.stderr));
        }
        ensure(runs.windows(2).all(|w| w[0] == w[1]), || format!("{args:?}: output differs between runs"))?;
    }
    Ok(format!("{} invocations x {DETERMINISM_RUNS} runs byte-identical", invocations.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("braid relations", criterion_1),
        ("rank", criterion_2),
        ("classical recovery", criterion_3),
        ("tower", criterion_4),
        ("inverses", criterion_5),
        ("equality oracle", criterion_6),
        ("counterexample", criterion_7),
        ("determinism", criterion_8),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {} PASS {name}: {detail} [{secs:.2}s]", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} FAIL {name}: {why} [{secs:.2}s]", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
