//! One line per acceptance criterion; exits nonzero if any criterion fails.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use fibercone_core::catalog::{self, Instance};
use fibercone_core::hilbert::{binomial_identity_sweep, colength};
use fibercone_core::reduction::{default_probe_bound, is_reduction};
use fibercone_core::verifier::{
    self, Analysis, AnalysisOptions, CheckResult, DepthTarget, Label, Verdict,
};
use fibercone_core::{Ideal, Monomial, PolyRing, Polynomial, PrimeField};
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

type Outcome = Result<(), String>;

const SUITE: [&str; 5] = ["regular", "outside", "mm", "amm", "neither"];

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn inst(name: &str) -> Instance {
    catalog::load(name).unwrap()
}

fn analysis(name: &str, window: Option<i64>) -> Analysis {
    Analysis::from_instance(&inst(name), &AnalysisOptions { window, ..AnalysisOptions::default() }).unwrap()
}

fn passes(r: &CheckResult, name: &str) -> Outcome {
    ensure(r.verdict == Verdict::Pass, || match r.first_failure() {
        Some(w) => format!("{} on {}: {} (n={:?}) {} {} {}", r.id, name, w.label, w.n, w.lhs, w.relation.symbol(), w.rhs),
        None => format!("{} on {}: {}", r.id, name, r.verdict.tag()),
    })
}

fn outside_reproduction() -> Outcome {
    let e = inst("outside");
    let pair = e.pair().map_err(|e| e.to_string())?;
    let x = e.sequence().map_err(|e| e.to_string())?;
    let probe = default_probe_bound(&e.i2).unwrap();
    ensure(is_reduction(&x, &e.i2, probe).unwrap().is_some(), || "(x) is not a reduction".into())?;
    let top = e.i1.product(&e.i2).unwrap();
    let low = e.i1.product(&x.ideal().unwrap()).unwrap();
    ensure(top.contains(&low).unwrap() && low.contains(&top).unwrap(), || "I1 I2 != I1 (x)".into())?;
    passes(&verifier::outside_regression(&pair, &x).unwrap(), "outside")
}

fn noninjective_reproduction() -> Outcome {
    let e = inst("noninjective");
    let r = verifier::noninjective_regression(&e.pair().unwrap(), &e.sequence().unwrap()).unwrap();
    passes(&r, "noninjective")
}

fn homology_cross_check() -> Outcome {
    for name in SUITE {
        let a = analysis(name, Some(8));
        let r = verifier::check_homology(&a, -2, 8).unwrap();
        ensure(!r.witness.is_empty(), || format!("no clauses on {}", name))?;
        passes(&r, name)?;
    }
    Ok(())
}

fn fundamental_lemma() -> Outcome {
    for name in SUITE {
        let a = analysis(name, Some(8));
        let r = verifier::check_fundamental_lemma(&a).unwrap();
        passes(&r, name)?;
        let rows: BTreeSet<i64> = r.witness.iter().filter_map(|w| w.n).collect();
        ensure(rows == (1..=8).collect(), || format!("window on {} is {:?}", name, rows))?;
    }
    let a = analysis("regular", Some(8));
    let r = verifier::check_fundamental_lemma(&a).unwrap();
    let classical: Vec<_> = r.witness.iter().filter(|w| w.label.starts_with("I1 = R")).collect();
    ensure(classical.len() == 16, || "classical rows missing".into())?;
    ensure(classical.iter().all(|w| w.lhs == 0 && w.rhs == 0), || "classical rows are not 0 = 0 in the regular case".into())
}

fn coefficient_suite() -> Outcome {
    for name in SUITE {
        let a = analysis(name, None);
        ensure(a.g_plain()[0] == a.e0(), || format!("g0 != e0 on {}", name))?;
        let r = verifier::check_coefficients(&a).unwrap();
        passes(&r, name)?;
        let d = a.dim();
        for i in 1..=d {
            let tag = format!("g{} = sum", i);
            let n = r.witness.iter().filter(|w| w.required && w.label.starts_with(&tag)).count();
            ensure(n >= 2, || format!("missing formulas for g{} on {}", i, name))?;
        }
        for i in 0..d {
            let n = r.witness.iter().filter(|w| w.required && w.label.starts_with(&format!("f{} ", i))).count();
            ensure(n >= 3, || format!("missing formulas for f{} on {}", i, name))?;
        }
    }
    Ok(())
}

fn bounds_with_equality() -> Outcome {
    let mut f0_exercised = false;
    for name in SUITE {
        let a = analysis(name, None);
        let results = verifier::check_bounds_and_depth(&a).unwrap();
        let get = |id: &str| results.iter().find(|r| r.id == id).unwrap();
        if a.inside_i1() {
            passes(get("g1-bounds"), name)?;
            let f0 = get("f0-bounds");
            if f0.verdict != Verdict::HypothesesNotMet {
                passes(f0, name)?;
                f0_exercised = true;
            }
        } else {
            ensure(get("g1-bounds").verdict == Verdict::HypothesesNotMet, || format!("g1-bounds not gated on {}", name))?;
        }
    }
    ensure(f0_exercised, || "no instance met the f0 hypotheses".into())?;
    let a = analysis("mm", None);
    ensure(a.classify().unwrap().label == Label::Minimal, || "mm is not minimal".into())?;
    let g1 = verifier::check_bounds_and_depth(&a).unwrap().into_iter().find(|r| r.id == "g1-bounds").unwrap();
    let lower = &g1.witness[0];
    ensure(lower.lhs == lower.rhs, || format!("lower bound not attained: {} vs {}", lower.lhs, lower.rhs))?;
    let depth = a.depth(DepthTarget::Relative).unwrap().estimated_depth;
    ensure(depth == a.dim(), || format!("depth G_I1(I2) = {}", depth))
}

fn series_closed_forms() -> Outcome {
    let a = analysis("mm", None);
    let r = verifier::check_series(&a, Some(Label::Minimal)).unwrap();
    passes(&r, "mm")?;
    let pointwise = r.witness.iter().filter(|w| w.required && w.label == "H(1,n) = coefficient of closed series").count();
    ensure(pointwise == 11, || format!("{} series terms", pointwise))?;
    let a = analysis("amm", None);
    let r = verifier::check_series(&a, Some(Label::AlmostMinimal)).unwrap();
    passes(&r, "amm")?;
    let s = a.red.s_value as usize;
    let num = &a.h1.series(0).reduced();
    ensure(num.exponent as usize == a.dim() + 1 && num.numerator.get(s + 1) == Some(&1), || format!("series {}", num))?;
    binomial_identity_sweep(6, 6, 20).map(|_| ()).map_err(|(s, d, n)| format!("binomial identity fails at s={} d={} n={}", s, d, n))
}

fn structural_suites() -> Outcome {
    let mut depth_lemma_used = false;
    for name in SUITE {
        let a = analysis(name, None);
        passes(&verifier::check_structure(&a).unwrap(), name)?;
        if a.inside_i1() {
            let dl = verifier::check_bounds_and_depth(&a).unwrap().into_iter().find(|r| r.id == "depth-lemma").unwrap();
            passes(&dl, name)?;
            depth_lemma_used |= dl.witness.iter().any(|w| w.required);
        }
    }
    ensure(depth_lemma_used, || "no instance with differing window depths".into())
}

// Dense linear algebra over F_p, independent of the library's elimination.
fn dense_rank(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = modpow(rows[rank][c], p - 2, p);
        for v in rows[rank].iter_mut() {
            *v = *v * inv % p;
        }
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[c] != 0 {
                let f = row[c];
                for (v, q) in row.iter_mut().zip(&pivot) {
                    *v = (*v + p - f * q % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn modpow(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

fn exps_of_degree(nvars: usize, deg: u32) -> Vec<Vec<u32>> {
    if nvars == 1 {
        return vec![vec![deg]];
    }
    (0..=deg)
        .rev()
        .flat_map(|a| exps_of_degree(nvars - 1, deg - a).into_iter().map(move |mut t| {
            t.insert(0, a);
            t
        }))
        .collect()
}

/// `dim_k (R/I)` for homogeneous `I` as `Σ_t (#monomials of degree t - rank I_t)`, for `t ≤ top`.
fn dense_colength(gens: &[Polynomial], nvars: usize, top: u32, p: u64) -> usize {
    let mut total = 0;
    for t in 0..=top {
        let basis = exps_of_degree(nvars, t);
        let index: BTreeMap<Vec<u32>, usize> = basis.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        let mut rows = Vec::new();
        for g in gens {
            let dg = g.degree();
            if dg > t {
                continue;
            }
            for m in exps_of_degree(nvars, t - dg) {
                let mut row = vec![0u64; basis.len()];
                for (mono, c) in g.terms() {
                    let e: Vec<u32> = (0..nvars).map(|i| mono.exp(i) + m[i]).collect();
                    row[index[&e]] = (row[index[&e]] + *c as u64) % p;
                }
                rows.push(row);
            }
        }
        total += basis.len() - dense_rank(rows, p);
    }
    total
}

fn random_monomial_ideal(rng: &mut ChaCha8Rng) -> Vec<[u32; 3]> {
    let mut gens = Vec::new();
    for i in 0..3 {
        let mut e = [0; 3];
        e[i] = 1 + (rng.next_u32() % 7);
        gens.push(e);
    }
    for _ in 0..(rng.next_u32() % 5) {
        gens.push([rng.next_u32() % 5, rng.next_u32() % 5, rng.next_u32() % 5]);
    }
    gens.retain(|e| e.iter().sum::<u32>() > 0);
    gens
}

fn divides(a: &[u32; 3], b: &[u32; 3]) -> bool {
    (0..3).all(|i| a[i] <= b[i])
}

/// Standard monomials of an m-primary monomial ideal.
fn standard_set(gens: &[[u32; 3]]) -> BTreeSet<[u32; 3]> {
    let bound = 32;
    let mut out = BTreeSet::new();
    for a in 0..bound {
        for b in 0..bound {
            for c in 0..bound {
                let m = [a, b, c];
                if !gens.iter().any(|g| divides(g, &m)) {
                    out.insert(m);
                }
            }
        }
    }
    out
}

fn to_ideal(ring: &std::sync::Arc<PolyRing>, gens: &[[u32; 3]]) -> Ideal {
    let polys = gens.iter().map(|e| Polynomial::monomial(ring, Monomial::from_exponents(e).unwrap())).collect();
    Ideal::new(ring, polys).unwrap()
}

fn core_standard_set(i: &Ideal) -> BTreeSet<[u32; 3]> {
    i.standard_monomials().unwrap().iter().map(|m| [m.exp(0), m.exp(1), m.exp(2)]).collect()
}

fn linear_image(ring: &std::sync::Arc<PolyRing>, gens: &[[u32; 3]], forms: &[Polynomial; 3]) -> Vec<Polynomial> {
    gens.iter()
        .map(|e| {
            let mut f = Polynomial::one(ring);
            for i in 0..3 {
                f = f.mul(&forms[i].pow(e[i]).unwrap()).unwrap();
            }
            f
        })
        .collect()
}

fn oracle_equivalence() -> Outcome {
    let field = PrimeField::default();
    let p = field.modulus() as u64;
    let ring = PolyRing::new(&["x", "y", "z"], field).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut checked = 0;
    while checked < 50 {
        let gens = random_monomial_ideal(&mut rng);
        let truth = standard_set(&gens).len();
        if truth > 200 {
            continue;
        }
        let top: u32 = (0..3).map(|i| gens.iter().filter(|g| g.iter().enumerate().all(|(j, &v)| j == i || v == 0)).map(|g| g[i]).min().unwrap()).sum();
        let ideal = to_ideal(&ring, &gens);
        let dense = dense_colength(ideal.generators(), 3, top, p);
        let forms: [Polynomial; 3] = std::array::from_fn(|_| {
            let mut f = Polynomial::zero(&ring);
            for v in 0..3 {
                f = f.add(&Polynomial::var(&ring, v).scale((rng.next_u64() % p) as u32)).unwrap();
            }
            f
        });
        let image = Ideal::new(&ring, linear_image(&ring, &gens, &forms)).unwrap();
        let dense_image = dense_colength(image.generators(), 3, top, p);
        let core = colength(&ideal).map_err(|e| e.to_string())?;
        ensure(core == dense && dense == truth, || format!("colength {} vs dense {} vs count {} for {:?}", core, dense, truth, gens))?;
        let core_image = colength(&image).map_err(|e| e.to_string())?;
        ensure(core_image == dense_image && dense_image == truth, || format!("image colength {} vs dense {} for {:?}", core_image, dense_image, gens))?;
        checked += 1;
    }
    let mut pairs = 0;
    while pairs < 50 {
        let a = random_monomial_ideal(&mut rng);
        let b = random_monomial_ideal(&mut rng);
        if standard_set(&a).len() > 200 || standard_set(&b).len() > 200 {
            continue;
        }
        let mut cap = Vec::new();
        for g in &a {
            for h in &b {
                cap.push([g[0].max(h[0]), g[1].max(h[1]), g[2].max(h[2])]);
            }
        }
        // (A : B) = ∩_h (A : h), and (A : h) is generated by g / gcd(g, h).
        let mut colon_members = BTreeSet::new();
        for m in standard_set(&[[32, 0, 0], [0, 32, 0], [0, 0, 32]]) {
            let in_colon = b.iter().all(|h| {
                let prod = [m[0] + h[0], m[1] + h[1], m[2] + h[2]];
                a.iter().any(|g| divides(g, &prod))
            });
            if !in_colon {
                colon_members.insert(m);
            }
        }
        let ia = to_ideal(&ring, &a);
        let ib = to_ideal(&ring, &b);
        let core_cap = core_standard_set(&ia.intersect(&ib).map_err(|e| e.to_string())?);
        ensure(core_cap == standard_set(&cap), || format!("intersection differs for {:?} and {:?}", a, b))?;
        let colon = ia.colon(&ib).map_err(|e| e.to_string())?;
        let core_colon: BTreeSet<[u32; 3]> = if colon.is_unit() { BTreeSet::new() } else { core_standard_set(&colon) };
        ensure(core_colon == colon_members, || format!("colon differs for {:?} and {:?}", a, b))?;
        pairs += 1;
    }
    Ok(())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("reduction with (x) outside I1 reproduced", outside_reproduction),
        ("non-injective surjection reproduced", noninjective_reproduction),
        ("homology lengths match closed forms", homology_cross_check),
        ("fundamental lemma identities", fundamental_lemma),
        ("coefficient formulas", coefficient_suite),
        ("g1 and f0 bounds with equality cases", bounds_with_equality),
        ("Hilbert series closed forms", series_closed_forms),
        ("structural suites", structural_suites),
        ("oracle equivalence", oracle_equivalence),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = f();
        let secs = start.elapsed().as_secs_f64();
        match out {
            Ok(()) => println!("criterion {}: PASS  {} ({:.2}s)", i + 1, name, secs),
            Err(e) => {
                failed += 1;
                println!("criterion {}: FAIL  {} ({:.2}s): {}", i + 1, name, secs, e);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
