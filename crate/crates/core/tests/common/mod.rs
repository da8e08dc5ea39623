#![allow(dead_code)]

use ga_quotients::lnd::Derivation;
use ga_quotients::pipeline::{Family, FamilySpec};
use ga_quotients::poly::{ratio, Monomial, Polynomial, Ring, Scalar, VarSet};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn seeded(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

pub fn ring(names: &[&str]) -> Ring {
    VarSet::new(names.iter().copied()).unwrap()
}

pub fn p(text: &str, r: &Ring) -> Polynomial {
    Polynomial::parse(text, r).unwrap()
}

pub fn small_scalar(rng: &mut ChaCha8Rng) -> Scalar {
    let den = if rng.gen_bool(0.2) { rng.gen_range(2..4) } else { 1 };
    ratio(rng.gen_range(-3..=3), den)
}

/// Random polynomial in the variables `vars` (indices into `r`) with at most
/// `terms` terms of total degree at most `deg`.
pub fn random_poly_in(rng: &mut ChaCha8Rng, r: &Ring, vars: &[usize], terms: usize, deg: u32) -> Polynomial {
    let mut out = Polynomial::zero(r);
    for _ in 0..rng.gen_range(0..=terms) {
        let mut e = vec![0u32; r.len()];
        let mut budget = rng.gen_range(0..=deg);
        while budget > 0 && !vars.is_empty() {
            let v = vars[rng.gen_range(0..vars.len())];
            e[v] += 1;
            budget -= 1;
        }
        out = &out + &Polynomial::monomial(r, Monomial::from_exponents(e), small_scalar(rng));
    }
    out
}

pub fn random_poly(rng: &mut ChaCha8Rng, r: &Ring, terms: usize, deg: u32) -> Polynomial {
    let all: Vec<usize> = (0..r.len()).collect();
    random_poly_in(rng, r, &all, terms, deg)
}

/// Triangular derivation: `D(x_i)` only involves `x_1, ..., x_{i-1}`, hence
/// locally nilpotent.
pub fn random_triangular(rng: &mut ChaCha8Rng, r: &Ring) -> Derivation {
    let images: Vec<(String, Polynomial)> = (0..r.len())
        .map(|i| {
            let lower: Vec<usize> = (0..i).collect();
            let img = if i == 0 {
                Polynomial::constant(r, small_scalar(rng))
            } else {
                random_poly_in(rng, r, &lower, 3, 2)
            };
            (r.name(i).to_string(), img)
        })
        .collect();
    Derivation::new(r, images).unwrap()
}

/// Valid v3 spec with `deg f <= max_deg`: `f(0) = 0`, `f` nonconstant and
/// `f + 1` squarefree (resampled until it is).
pub fn random_v3_spec(rng: &mut ChaCha8Rng, max_deg: u32, trivial: usize) -> FamilySpec {
    let r = Family::V3.argument_ring();
    loop {
        let deg = rng.gen_range(1..=max_deg);
        let mut f = Polynomial::zero(&r);
        for k in 1..=deg {
            let c = if k == deg {
                loop {
                    let c = small_scalar(rng);
                    if c != ratio(0, 1) {
                        break c;
                    }
                }
            } else {
                small_scalar(rng)
            };
            f = &f + &Polynomial::monomial(&r, Monomial::from_exponents(vec![k]), c);
        }
        if let Ok(spec) = FamilySpec::new(Family::V3, f, trivial) {
            return spec;
        }
    }
}

/// Ideal generator with 2 to 4 nonconstant terms of degree 1 to 3 and,
/// occasionally, a constant term. Mostly vanishes at the origin, so the
/// ideals it builds are rarely the unit ideal.
pub fn random_generator(rng: &mut ChaCha8Rng, r: &Ring) -> Polynomial {
    loop {
        let mut g = Polynomial::zero(r);
        for _ in 0..rng.gen_range(2..=4) {
            let mut e = vec![0u32; r.len()];
            for _ in 0..rng.gen_range(1..=3) {
                e[rng.gen_range(0..r.len())] += 1;
            }
            g = &g + &Polynomial::monomial(r, Monomial::from_exponents(e), small_scalar(rng));
        }
        if rng.gen_bool(0.25) {
            g = &g + &Polynomial::constant(r, small_scalar(rng));
        }
        if !g.is_zero() && !g.is_constant() {
            return g;
        }
    }
}
