//! Acceptance suite: one line per criterion, non-zero exit if any fails.
//!
//! Runs without the libtest harness so the summary lines are always printed.

mod common;

use std::collections::{BTreeMap, HashMap};
use std::panic::{self, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use common::{p, random_generator, random_poly, random_triangular, random_v3_spec, ring, seeded};
use ga_quotients::groebner::{buchberger, krull_dimension, Ideal, SubalgebraOracle, TermOrder};
use ga_quotients::lnd::Derivation;
use ga_quotients::pipeline::{
    boundary_analysis, build_family, build_family_unchecked, check_affine_space, check_freeness, check_invariance,
    check_smooth, check_stability, invariant_presentation, run_battery, Dims, Family, FamilySpec, PipelineError,
};
use ga_quotients::lnd::kernel_linear;
use ga_quotients::poly::{Polynomial, Scalar};
use ga_quotients::Caps;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::Rng;

const GAQ: &str = env!("CARGO_BIN_EXE_gaq");

fn data(name: &str) -> String {
    format!("{}/examples/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn caps() -> Caps {
    Caps::default()
}

// ---------------------------------------------------------------------------
// criterion 1: independent oracle for the degree <= 2 invariants of V^3

fn exponents_up_to(n: usize, d: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![0; n]];
    for _ in 0..d {
        let mut next = out.clone();
        for e in &out {
            for i in 0..n {
                let mut f = e.clone();
                f[i] += 1;
                next.push(f);
            }
        }
        next.sort();
        next.dedup();
        out = next;
    }
    out
}

/// Rank by plain Gaussian elimination over the rationals.
fn rank(mut rows: Vec<Vec<Scalar>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(piv) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, piv);
        let lead = rows[r][c].clone();
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let factor = &rows[i][c] / &lead;
                let pivot_row = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot_row) {
                    *x -= &factor * y;
                }
            }
        }
        r += 1;
    }
    r
}

/// The derivation matrix on monomials of degree <= 2, written directly on
/// exponent vectors: `D(w^e) = Σ e_i w^(e - e_i + e_{i-1})` over the even
/// coordinates `i` (0-based 1, 3, 5).
fn oracle_matrix(cols: &[Vec<u32>]) -> Vec<Vec<Scalar>> {
    let mut rows: BTreeMap<Vec<u32>, Vec<Scalar>> = BTreeMap::new();
    for (c, e) in cols.iter().enumerate() {
        for i in [1usize, 3, 5] {
            if e[i] == 0 {
                continue;
            }
            let mut out = e.clone();
            out[i] -= 1;
            out[i - 1] += 1;
            let row = rows.entry(out).or_insert_with(|| vec![Scalar::zero(); cols.len()]);
            row[c] += Scalar::from_integer(e[i].into());
        }
    }
    rows.into_values().collect()
}

fn coefficient_vector(f: &Polynomial, cols: &[Vec<u32>]) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); cols.len()];
    for (m, c) in f.terms() {
        let k = cols.iter().position(|e| e.as_slice() == m.exponents()).expect("degree <= 2");
        v[k] = c.clone();
    }
    v
}

fn criterion_1() -> Result<String, String> {
    let cols = exponents_up_to(6, 2);
    assert_eq!(cols.len(), 28);
    let a = oracle_matrix(&cols);
    let nullity = cols.len() - rank(a.clone());
    assert_eq!(nullity, 13, "oracle nullity (constants included)");

    let out = Command::new(GAQ)
        .args(["kernel", "--derivation", &data("v3.derivation"), "--max-degree", "2"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let r = ring(&["w1", "w2", "w3", "w4", "w5", "w6"]);
    let gens: Vec<Polynomial> = String::from_utf8(out.stdout)
        .unwrap()
        .lines()
        .map(|l| p(l, &r))
        .collect();

    // every output solves the oracle system
    for g in &gens {
        let v = coefficient_vector(g, &cols);
        for row in &a {
            let dot: Scalar = row.iter().zip(&v).map(|(x, y)| x * y).sum();
            assert!(dot.is_zero(), "{g} is not invariant");
        }
    }
    // products of degree <= 2 span the whole oracle solution space
    let mut span = vec![coefficient_vector(&Polynomial::one(&r), &cols)];
    for (i, g) in gens.iter().enumerate() {
        span.push(coefficient_vector(g, &cols));
        for h in &gens[i..] {
            if g.total_degree().unwrap() + h.total_degree().unwrap() <= 2 {
                span.push(coefficient_vector(&(g * h), &cols));
            }
        }
    }
    assert_eq!(rank(span), nullity, "generated degree <= 2 invariants");

    let six: Vec<Polynomial> = ["w1", "w3", "w5", "w1*w4 - w2*w3", "w1*w6 - w2*w5", "w3*w6 - w4*w5"]
        .iter()
        .map(|t| p(t, &r))
        .collect();
    let ours = SubalgebraOracle::new(&r, &gens, &caps()).unwrap();
    let theirs = SubalgebraOracle::new(&r, &six, &caps()).unwrap();
    assert!(six.iter().all(|g| ours.contains(g).unwrap()));
    assert!(gens.iter().all(|g| theirs.contains(g).unwrap()));
    Ok(format!("{} generators, oracle nullity {nullity}", gens.len()))
}

// ---------------------------------------------------------------------------

fn criterion_2() -> Result<String, String> {
    let spec = FamilySpec::parse(Family::V3, "s", 0).unwrap();
    let report = run_battery(&spec, &caps()).unwrap();
    assert!(report.pass);
    assert_eq!(report.dims, Dims { x: 5, quotient: 4, ybar: 7, b: 5 });
    assert_eq!(report.boundary_codim, 2);
    assert_eq!(report.m, Some(1));
    let k = report.k0_ranks.unwrap();
    assert_eq!((k.rank_z, k.rank_closure, k.rank_quotient), (1, 2, 1));

    let art = build_family(&spec).unwrap();
    let kernel = kernel_linear(&art.w_derivation, 2, &caps()).unwrap();
    let pres = invariant_presentation(&art, &kernel, &caps()).unwrap();
    assert_eq!(pres.tags.len(), 5);
    assert_eq!(pres.relations.len(), 1);
    let rel = &pres.relations[0];
    assert_eq!(rel.total_degree(), Some(2));
    assert_eq!(rel.variables().len(), 5);

    // substitute the lifts, then reduce modulo X two ways
    let lifts: HashMap<String, Polynomial> =
        pres.tags.names().iter().cloned().zip(pres.lifts.iter().cloned()).collect();
    let value = rel.substitute(&art.w_ring, &lifts).unwrap();
    let gb = buchberger(&art.x_ideal, TermOrder::Grevlex, &caps()).unwrap();
    assert!(gb.normal_form(&value).unwrap().is_zero());
    let on_x: HashMap<String, Polynomial> =
        [("w1".to_string(), p("1 + w3*w6 - w4*w5", &art.w_ring))].into();
    assert!(value.substitute_some(&art.w_ring, &on_x).unwrap().is_zero());
    assert_eq!(report.presentation.unwrap().relations, vec![rel.to_string()]);
    Ok(format!("relation {rel} = 0"))
}

fn criterion_3() -> Result<String, String> {
    let spec = FamilySpec::parse(Family::V3, "(1+s)*(1+2*s)*(1+3*s) - 1", 0).unwrap();
    let report = run_battery(&spec, &caps()).unwrap();
    assert!(report.pass);
    assert_eq!(report.m, Some(3));
    let k = report.k0_ranks.unwrap();
    assert_eq!((k.rank_z, k.rank_closure, k.rank_quotient), (3, 4, 1));
    Ok("m = 3, ranks (3, 4, 1)".into())
}

fn criterion_4() -> Result<String, String> {
    let out = Command::new(GAQ)
        .args(["verify", "--family", "v3", "--f", "(1+s)^2 - 1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert!(out.stdout.is_empty(), "no battery output expected");
    assert!(String::from_utf8_lossy(&out.stderr).contains("repeated root"));
    assert!(matches!(
        FamilySpec::parse(Family::V3, "(1+s)^2 - 1", 0),
        Err(PipelineError::RepeatedRoots(_))
    ));

    let f = p("(1+s)^2 - 1", &Family::V3.argument_ring());
    let forced = build_family_unchecked(&FamilySpec::new_unchecked(Family::V3, f, 0).unwrap()).unwrap();
    assert!(!check_smooth(&forced.b_ideal, &caps()).unwrap());
    Ok("exit 3; forced boundarySmooth = false".into())
}

fn criterion_5() -> Result<String, String> {
    let spec = FamilySpec::parse(Family::V4, "a", 0).unwrap();
    let art = build_family(&spec).unwrap();
    assert!(check_invariance(&art).unwrap());
    assert!(check_affine_space(&art).unwrap());
    assert_eq!(art.w_ring.len() - 1, 7);
    assert_eq!(art.nonstable_ideal().unwrap(), Ideal::parse(&art.w_ring, &["w1", "w3", "w5", "w7"]).unwrap());
    assert!(check_stability(&art, &caps()).unwrap());
    assert!(check_freeness(&art, &caps()).unwrap());
    assert!(check_smooth(&art.ybar_ideal, &caps()).unwrap());
    assert!(check_smooth(&art.b_ideal, &caps()).unwrap());
    assert_eq!(boundary_analysis(&art, &caps()).unwrap(), (2, None));

    let report = run_battery(&spec, &caps()).unwrap();
    assert!(report.pass);
    assert_eq!(report.dims.x, 7);
    assert!(report.m.is_none() && report.k0_ranks.is_none());
    Ok("X = A^7, codim 2, m absent".into())
}

fn criterion_6() -> Result<String, String> {
    let spec = FamilySpec::parse(Family::V3, "s", 2).unwrap();
    let report = run_battery(&spec, &caps()).unwrap();
    assert!(report.pass);
    assert_eq!(report.dims, Dims { x: 7, quotient: 6, ybar: 9, b: 7 });
    let k = report.k0_ranks.unwrap();
    assert_eq!((k.rank_z, k.rank_closure, k.rank_quotient), (1, 2, 1));
    Ok("dims (7, 6, 9, 7)".into())
}

// ---------------------------------------------------------------------------
// criterion 7: randomized property suites

const CASES: usize = 1000;

fn ring_axioms() {
    let mut rng = seeded(7001);
    let r = ring(&["x", "y", "z"]);
    for _ in 0..CASES {
        let (f, g, h) = (
            random_poly(&mut rng, &r, 4, 3),
            random_poly(&mut rng, &r, 4, 3),
            random_poly(&mut rng, &r, 4, 3),
        );
        assert_eq!(&f + &g, &g + &f);
        assert_eq!(&f * &g, &g * &f);
        assert_eq!(&(&f + &g) + &h, &f + &(&g + &h));
        assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        assert_eq!(&f * &Polynomial::one(&r), f);
        assert!((&f - &f.clone()).is_zero());
        assert_eq!(&f + &-&f, Polynomial::zero(&r));
    }
}

fn leibniz_partial() {
    let mut rng = seeded(7002);
    let r = ring(&["x", "y", "z"]);
    for _ in 0..CASES {
        let (f, g) = (random_poly(&mut rng, &r, 4, 3), random_poly(&mut rng, &r, 4, 3));
        let x = r.name(rng.gen_range(0..3));
        let lhs = (&f * &g).partial(x).unwrap();
        let rhs = &(&f * &g.partial(x).unwrap()) + &(&g * &f.partial(x).unwrap());
        assert_eq!(lhs, rhs);
    }
}

fn leibniz_apply() {
    let mut rng = seeded(7003);
    let r = ring(&["x", "y", "z"]);
    for _ in 0..CASES {
        let images: Vec<(String, Polynomial)> = r
            .names()
            .iter()
            .map(|n| (n.clone(), random_poly(&mut rng, &r, 3, 2)))
            .collect();
        let d = Derivation::new(&r, images).unwrap();
        let (f, g) = (random_poly(&mut rng, &r, 4, 3), random_poly(&mut rng, &r, 4, 3));
        let lhs = d.apply(&(&f * &g)).unwrap();
        let rhs = &(&f * &d.apply(&g).unwrap()) + &(&g * &d.apply(&f).unwrap());
        assert_eq!(lhs, rhs);
    }
}

fn exp_homomorphism() {
    let mut rng = seeded(7004);
    let r = ring(&["x", "y", "z"]);
    for _ in 0..CASES {
        let d = random_triangular(&mut rng, &r);
        let (f, g) = (random_poly(&mut rng, &r, 3, 2), random_poly(&mut rng, &r, 3, 2));
        let e = |h: &Polynomial| d.exp_action_with(h, "t").unwrap();
        assert_eq!(e(&(&f * &g)), &e(&f) * &e(&g));
        assert_eq!(e(&(&f + &g)), &e(&f) + &e(&g));
    }
}

fn exp_group_law() {
    let mut rng = seeded(7005);
    let r = ring(&["x", "y", "z"]);
    let both = r.extended(&["t", "t2"]).unwrap();
    for _ in 0..CASES {
        let d = random_triangular(&mut rng, &r);
        let inner: HashMap<String, Polynomial> = r
            .names()
            .iter()
            .map(|n| {
                let x = Polynomial::var(&r, n).unwrap();
                (n.clone(), d.exp_action_with(&x, "t2").unwrap().embed(&both).unwrap())
            })
            .collect();
        let shift: HashMap<String, Polynomial> = [("t".to_string(), p("t + t2", &both))].into();
        for n in r.names() {
            let outer = d.exp_action_with(&Polynomial::var(&r, n).unwrap(), "t").unwrap();
            let composed = outer.substitute_some(&both, &inner).unwrap();
            let direct = outer.substitute_some(&both, &shift).unwrap();
            assert_eq!(composed, direct, "group law for {n}");
        }
    }
}

fn random_ideal(rng: &mut rand_chacha::ChaCha8Rng, r: &ga_quotients::poly::Ring) -> Vec<Polynomial> {
    let k = rng.gen_range(1..=3);
    (0..k).map(|_| random_generator(rng, r)).collect()
}

fn gb_round_trips() {
    let mut rng = seeded(7006);
    let r = ring(&["x", "y", "z"]);
    for case in 0..CASES {
        let gens = random_ideal(&mut rng, &r);
        let order = if case % 4 == 0 { TermOrder::Lex } else { TermOrder::Grevlex };
        let gb = buchberger(&Ideal::new(&r, gens.clone()).unwrap(), order, &caps()).unwrap();
        for g in &gens {
            assert!(gb.normal_form(g).unwrap().is_zero());
        }
        let combo = gens
            .iter()
            .fold(Polynomial::zero(&r), |acc, g| &acc + &(g * &random_poly(&mut rng, &r, 2, 1)));
        assert!(gb.contains(&combo).unwrap());
        let mut shuffled = gens.clone();
        shuffled.shuffle(&mut rng);
        let again = buchberger(&Ideal::new(&r, shuffled).unwrap(), order, &caps()).unwrap();
        assert_eq!(gb.basis(), again.basis());
    }
}

fn normal_form_idempotent() {
    let mut rng = seeded(7007);
    let r = ring(&["x", "y", "z"]);
    for _ in 0..CASES {
        let gb = buchberger(&Ideal::new(&r, random_ideal(&mut rng, &r)).unwrap(), TermOrder::Grevlex, &caps()).unwrap();
        let f = random_poly(&mut rng, &r, 5, 3);
        let nf = gb.normal_form(&f).unwrap();
        assert_eq!(gb.normal_form(&nf).unwrap(), nf);
        assert!(gb.contains(&(&f - &nf)).unwrap());
    }
}

fn hypersurface_dimension_law() {
    let mut rng = seeded(7008);
    for _ in 0..CASES {
        let trivial = rng.gen_range(0..=2);
        let art = build_family(&random_v3_spec(&mut rng, 4, trivial)).unwrap();
        assert_eq!(krull_dimension(&art.ybar_ideal, &caps()).unwrap(), art.ambient_ring.len() - 1);
        assert_eq!(krull_dimension(&art.x_ideal, &caps()).unwrap(), art.w_ring.len() - 1);
    }
}

fn criterion_7() -> Result<String, String> {
    let suites: [(&str, fn()); 8] = [
        ("ring axioms", ring_axioms),
        ("Leibniz (partial)", leibniz_partial),
        ("Leibniz (apply)", leibniz_apply),
        ("exp homomorphism", exp_homomorphism),
        ("exp group law", exp_group_law),
        ("GB round trips", gb_round_trips),
        ("normal form idempotence", normal_form_idempotent),
        ("hypersurface dimension law", hypersurface_dimension_law),
    ];
    let mut timings = Vec::new();
    for (name, suite) in suites {
        let start = Instant::now();
        panic::catch_unwind(suite).map_err(|e| format!("{name}: {}", panic_message(&e)))?;
        timings.push(format!("{name} {:.1}s", start.elapsed().as_secs_f64()));
    }
    Ok(format!("{} suites x {CASES} cases ({})", suites.len(), timings.join(", ")))
}

fn criterion_8() -> Result<String, String> {
    let mut rng = seeded(8000);
    for _ in 0..20 {
        let spec = random_v3_spec(&mut rng, 4, 0);
        let art = build_family(&spec).unwrap();
        assert!(check_stability(&art, &caps()).unwrap(), "stability for f = {}", spec.f);
        assert!(check_freeness(&art, &caps()).unwrap(), "freeness for f = {}", spec.f);
    }
    let f = p("s - 1", &Family::V3.argument_ring());
    let bad = build_family_unchecked(&FamilySpec::new_unchecked(Family::V3, f, 0).unwrap()).unwrap();
    assert!(!check_stability(&bad, &caps()).unwrap());
    Ok("20 random specs stable and free; f = s - 1 unstable".into())
}

// ---------------------------------------------------------------------------

fn panic_message(e: &Box<dyn std::any::Any + Send>) -> String {
    e.downcast_ref::<String>()
        .cloned()
        .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
        .unwrap_or_else(|| "panic".into())
}

type Criterion = fn() -> Result<String, String>;

fn main() {
    let criteria: [(u32, &str, u64, Criterion); 8] = [
        (1, "kernel reproduction", 30, criterion_1),
        (2, "identity instance", 60, criterion_2),
        (3, "m = deg f", 60, criterion_3),
        (4, "rejection path", 10, criterion_4),
        (5, "moduli family", 120, criterion_5),
        (6, "trivial summands", 120, criterion_6),
        (7, "property suites", 600, criterion_7),
        (8, "stability and freeness", 300, criterion_8),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (n, name, limit, run) in criteria {
        let start = Instant::now();
        let outcome = match panic::catch_unwind(AssertUnwindSafe(run)) {
            Ok(r) => r,
            Err(e) => Err(panic_message(&e)),
        };
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > Duration::from_secs(limit) => {
                Err(format!("{detail}; took {:.1}s, limit {limit}s", elapsed.as_secs_f64()))
            }
            other => other,
        };
        match outcome {
            Ok(detail) => println!("criterion {n} ({name}): PASS in {:.2}s - {detail}", elapsed.as_secs_f64()),
            Err(why) => {
                failed += 1;
                println!("criterion {n} ({name}): FAIL in {:.2}s - {why}", elapsed.as_secs_f64());
            }
        }
    }
    let _ = panic::take_hook();
    if failed > 0 {
        println!("{failed} of 8 criteria failed");
        std::process::exit(1);
    }
    println!("all 8 criteria passed");
}
