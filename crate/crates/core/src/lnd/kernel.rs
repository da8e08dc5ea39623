//! Kernels of locally nilpotent derivations.
//!
//! [`kernel_linear`] solves `D(f) = 0` on the finite-dimensional space of
//! polynomials of bounded degree. [`kernel_saturation`] starts from the
//! Dixmier images of a local slice and adjoins quotients `h` with `a*h` in
//! the current subalgebra until nothing new appears.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::linalg::{nullspace, rref};
use super::{Derivation, LndError};
use crate::config::Caps;
use crate::groebner::{eliminate, Ideal, SubalgebraOracle};
use crate::poly::{Monomial, Polynomial, Scalar};

/// Monomials of total degree exactly `d` in `n` variables.
fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    fn go(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() + 1 == n {
            prefix.push(d);
            out.push(Monomial::from_exponents(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e);
            go(n, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Monomial::from_exponents(Vec::new()));
        }
        return out;
    }
    go(n, d, &mut Vec::with_capacity(n), &mut out);
    out
}

fn binomial(n: usize, k: usize) -> Option<usize> {
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc.checked_mul(n - i)? / (i + 1);
    }
    Some(acc)
}

/// Sorted by degree, then by descending leading monomial.
fn sort_generators(gens: &mut [Polynomial]) {
    gens.sort_by(|a, b| {
        let lm = |p: &Polynomial| p.leading_term().map(|(m, _)| m.clone());
        a.total_degree()
            .cmp(&b.total_degree())
            .then_with(|| lm(b).cmp(&lm(a)))
    });
}

/// Drops every element lying in the subalgebra generated by the elements
/// kept before it.
fn minimize(candidates: Vec<Polynomial>, caps: &Caps) -> Result<Vec<Polynomial>, LndError> {
    let Some(first) = candidates.first() else {
        return Ok(Vec::new());
    };
    let ring = first.ring().clone();
    let mut kept: Vec<Polynomial> = Vec::new();
    let mut oracle = SubalgebraOracle::new(&ring, &kept, caps)?;
    for c in candidates {
        if oracle.contains(&c)? {
            continue;
        }
        kept.push(c);
        oracle = SubalgebraOracle::new(&ring, &kept, caps)?;
    }
    Ok(kept)
}

/// Minimal generating set of the invariants of degree at most `max_degree`.
///
/// The solution space of `D(f) = 0` is computed exactly, put in reduced
/// echelon form with monomials in descending graded reverse lexicographic
/// order, made primitive, and pruned of elements generated by earlier ones.
/// Constants are omitted.
pub fn kernel_linear(d: &Derivation, max_degree: u32, caps: &Caps) -> Result<Vec<Polynomial>, LndError> {
    let ring = d.ring().clone();
    let n = ring.len();
    let dim = binomial(n + max_degree as usize, n.min(max_degree as usize))
        .map(|c| c.saturating_sub(1))
        .unwrap_or(usize::MAX);
    if dim > caps.max_kernel_dim {
        return Err(LndError::ResourceCap(format!(
            "{dim} monomials of degree 1..={max_degree} exceed max kernel dimension {}",
            caps.max_kernel_dim
        )));
    }

    let mut columns: Vec<Monomial> = (1..=max_degree)
        .flat_map(|k| monomials_of_degree(n, k))
        .collect();
    columns.sort_by(|a, b| b.cmp(a));

    let mut row_of: BTreeMap<Monomial, usize> = BTreeMap::new();
    let mut entries: Vec<(usize, usize, Scalar)> = Vec::new();
    for (col, m) in columns.iter().enumerate() {
        let image = d.apply(&Polynomial::monomial(&ring, m.clone(), Scalar::one()))?;
        for (om, c) in image.terms() {
            let next = row_of.len();
            let row = *row_of.entry(om.clone()).or_insert(next);
            entries.push((row, col, c.clone()));
        }
    }
    let mut matrix = vec![vec![Scalar::zero(); columns.len()]; row_of.len()];
    for (r, c, v) in entries {
        matrix[r][c] = v;
    }

    let (basis, _) = rref(&nullspace(&matrix, columns.len()), columns.len());
    let mut solutions: Vec<Polynomial> = basis
        .iter()
        .map(|v| {
            Polynomial::from_terms(
                &ring,
                columns.iter().cloned().zip(v.iter().cloned()).filter(|(_, c)| !c.is_zero()),
            )
            .primitive()
        })
        .collect();
    sort_generators(&mut solutions);
    minimize(solutions, caps)
}

/// A local slice: a variable `s` whose image `a = D(s)` is itself invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SliceData {
    pub variable: String,
    pub a: Polynomial,
}

impl SliceData {
    pub fn new(d: &Derivation, variable: &str) -> Result<Self, LndError> {
        let a = d.image(variable)?.clone();
        if a.is_zero() {
            return Err(LndError::InvalidSlice(format!("D({variable}) = 0")));
        }
        if !d.apply(&a)?.is_zero() {
            return Err(LndError::InvalidSlice(format!("D(D({variable})) != 0")));
        }
        Ok(SliceData {
            variable: variable.to_string(),
            a,
        })
    }

    /// First variable in ring order that is a local slice.
    pub fn find(d: &Derivation) -> Result<Self, LndError> {
        d.ring()
            .names()
            .iter()
            .find_map(|v| SliceData::new(d, v).ok())
            .ok_or_else(|| LndError::InvalidSlice("no variable is a local slice".into()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SaturationKernel {
    pub generators: Vec<Polynomial>,
    /// Adjunction rounds actually run.
    pub rounds: usize,
    /// False when the loop was skipped (`max_rounds = 0`).
    pub stabilized: bool,
}

/// `a^N * Σ (-1)^i D^i(x) s^i / (i! a^i)`, with `N` the last nonvanishing
/// iterate, made primitive.
fn cleared_dixmier(d: &Derivation, x: &Polynomial, slice: &SliceData) -> Result<Polynomial, LndError> {
    let ring = d.ring();
    let s = Polynomial::var(ring, &slice.variable)?;
    let mut iterates = vec![x.clone()];
    loop {
        let next = d.apply(iterates.last().expect("nonempty"))?;
        if next.is_zero() {
            break;
        }
        if iterates.len() > 64 {
            return Err(LndError::NotLocallyNilpotent(format!("iterates of {x} do not vanish")));
        }
        iterates.push(next);
    }
    let top = iterates.len() - 1;
    let mut out = Polynomial::zero(ring);
    let mut factorial = BigInt::one();
    for (i, di) in iterates.iter().enumerate() {
        if i > 0 {
            factorial *= i;
        }
        let sign = if i % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        let coeff = Scalar::new(sign, factorial.clone());
        let term = &(di * &s.pow(i as u32)) * &slice.a.pow((top - i) as u32);
        out = &out + &term.scale(&coeff);
    }
    Ok(out.primitive())
}

/// Kernel generators by the local slice method.
///
/// Starting from `a` and the cleared Dixmier images of the variables, each
/// round eliminates the original variables from `(y_i - g_i, a)` to find the
/// polynomials `P` with `P(g) ≡ 0 mod a`, and adjoins every quotient
/// `P(g)/a` not already generated. A round adding nothing ends the loop;
/// exhausting `max_rounds` first is [`LndError::RoundCap`].
pub fn kernel_saturation(
    d: &Derivation,
    slice: &SliceData,
    max_rounds: usize,
    caps: &Caps,
) -> Result<SaturationKernel, LndError> {
    let check = SliceData::new(d, &slice.variable)?;
    if check.a != slice.a {
        return Err(LndError::InvalidSlice(format!(
            "a = {} but D({}) = {}",
            slice.a, slice.variable, check.a
        )));
    }
    let ring = d.ring().clone();

    let mut candidates = vec![slice.a.primitive()];
    for i in 0..ring.len() {
        let g = cleared_dixmier(d, &Polynomial::var_index(&ring, i), slice)?;
        if !g.is_zero() && !g.is_constant() {
            candidates.push(g);
        }
    }
    sort_generators(&mut candidates);
    let mut gens = minimize(candidates, caps)?;
    if max_rounds == 0 {
        return Ok(SaturationKernel {
            generators: gens,
            rounds: 0,
            stabilized: false,
        });
    }

    let n = ring.len();
    for round in 1..=max_rounds {
        let oracle = SubalgebraOracle::new(&ring, &gens, caps)?;
        let tag_ring = oracle.tag_ring().clone();
        let big = ring.extended(tag_ring.names())?;
        let mut relations = gens
            .iter()
            .enumerate()
            .map(|(k, g)| Ok(&Polynomial::var(&big, tag_ring.name(k))? - &g.embed(&big)?))
            .collect::<Result<Vec<_>, LndError>>()?;
        relations.push(slice.a.embed(&big)?);
        let modulo_a = eliminate(&Ideal::new(&big, relations)?, n, caps)?;

        let assignment: HashMap<String, Polynomial> = tag_ring
            .names()
            .iter()
            .cloned()
            .zip(gens.iter().cloned())
            .collect();
        let mut fresh: Vec<Polynomial> = Vec::new();
        for p in modulo_a.generators() {
            let value = p.embed(&tag_ring)?.substitute(&ring, &assignment)?;
            if value.is_zero() {
                continue;
            }
            let h = value.div_exact(&slice.a)?.primitive();
            if h.is_constant() || oracle.contains(&h)? {
                continue;
            }
            if !fresh.iter().any(|f| f == &h) {
                fresh.push(h);
            }
        }
        if fresh.is_empty() {
            return Ok(SaturationKernel {
                generators: gens,
                rounds: round,
                stabilized: true,
            });
        }
        let mut all = gens;
        all.extend(fresh);
        sort_generators(&mut all);
        gens = minimize(all, caps)?;
    }
    Err(LndError::RoundCap {
        rounds: max_rounds,
        partial: gens,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{Ring, VarSet};

    fn p(t: &str, r: &Ring) -> Polynomial {
        Polynomial::parse(t, r).unwrap()
    }

    fn equivalent(a: &[Polynomial], b: &[Polynomial]) -> bool {
        let caps = Caps::default();
        let ring = a[0].ring().clone();
        let oa = SubalgebraOracle::new(&ring, a, &caps).unwrap();
        let ob = SubalgebraOracle::new(&ring, b, &caps).unwrap();
        a.iter().all(|x| ob.contains(x).unwrap()) && b.iter().all(|x| oa.contains(x).unwrap())
    }

    fn six(r: &Ring) -> Vec<Polynomial> {
        ["w1", "w3", "w5", "w1*w4 - w2*w3", "w1*w6 - w2*w5", "w3*w6 - w4*w5"]
            .iter()
            .map(|t| p(t, r))
            .collect()
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials_of_degree(6, 2).len(), 21);
        assert_eq!(monomials_of_degree(3, 0).len(), 1);
        assert_eq!(binomial(8, 2), Some(28));
    }

    #[test]
    fn linear_kernel_of_three_copies() {
        let d = Derivation::lower_triangular(3, 0).unwrap();
        let r = d.ring().clone();
        let gens = kernel_linear(&d, 2, &Caps::default()).unwrap();
        assert_eq!(gens.len(), 6);
        assert_eq!(&gens[..3], &[p("w1", &r), p("w3", &r), p("w5", &r)]);
        for g in &gens {
            assert!(d.apply(g).unwrap().is_zero());
        }
        assert!(equivalent(&gens, &six(&r)));
    }

    #[test]
    fn linear_kernel_small_cases() {
        let d = Derivation::lower_triangular(1, 0).unwrap();
        let r = d.ring().clone();
        assert_eq!(kernel_linear(&d, 2, &Caps::default()).unwrap(), vec![p("w1", &r)]);

        let r = VarSet::new(["x", "y", "z"]).unwrap();
        let gens = kernel_linear(&Derivation::zero(&r), 1, &Caps::default()).unwrap();
        assert_eq!(gens, vec![p("x", &r), p("y", &r), p("z", &r)]);
    }

    #[test]
    fn linear_kernel_cap() {
        let d = Derivation::lower_triangular(3, 0).unwrap();
        let caps = Caps {
            max_kernel_dim: 26,
            ..Caps::default()
        };
        assert!(matches!(kernel_linear(&d, 2, &caps), Err(LndError::ResourceCap(_))));
    }

    #[test]
    fn slices() {
        let d = Derivation::lower_triangular(3, 0).unwrap();
        let s = SliceData::find(&d).unwrap();
        assert_eq!(s.variable, "w2");
        assert_eq!(s.a, p("w1", d.ring()));
        assert!(matches!(SliceData::new(&d, "w1"), Err(LndError::InvalidSlice(_))));
        let r = VarSet::new(["x"]).unwrap();
        let scaling = Derivation::new(&r, [("x", p("x", &r))]).unwrap();
        assert!(SliceData::find(&scaling).is_err());
    }

    #[test]
    fn saturation_reaches_determinant() {
        let d = Derivation::lower_triangular(3, 0).unwrap();
        let r = d.ring().clone();
        let slice = SliceData::new(&d, "w2").unwrap();
        let out = kernel_saturation(&d, &slice, 8, &Caps::default()).unwrap();
        assert!(out.stabilized);
        for g in &out.generators {
            assert!(d.apply(g).unwrap().is_zero());
        }
        assert!(equivalent(&out.generators, &six(&r)));
    }

    #[test]
    fn saturation_zero_rounds_and_one_copy() {
        let d = Derivation::lower_triangular(3, 0).unwrap();
        let r = d.ring().clone();
        let slice = SliceData::new(&d, "w2").unwrap();
        let out = kernel_saturation(&d, &slice, 0, &Caps::default()).unwrap();
        assert!(!out.stabilized);
        assert_eq!(
            out.generators,
            ["w1", "w3", "w5", "w1*w4 - w2*w3", "w1*w6 - w2*w5"]
                .iter()
                .map(|t| p(t, &r))
                .collect::<Vec<_>>()
        );

        let d1 = Derivation::lower_triangular(1, 0).unwrap();
        let s1 = SliceData::new(&d1, "w2").unwrap();
        let out = kernel_saturation(&d1, &s1, 4, &Caps::default()).unwrap();
        assert_eq!(out.generators, vec![p("w1", d1.ring())]);
    }

    #[test]
    fn saturation_round_cap() {
        let d = Derivation::lower_triangular(3, 0).unwrap();
        let slice = SliceData::new(&d, "w2").unwrap();
        // one round adds the determinant; confirming stability needs a second
        match kernel_saturation(&d, &slice, 1, &Caps::default()) {
            Err(LndError::RoundCap { rounds: 1, partial }) => assert_eq!(partial.len(), 6),
            other => panic!("{other:?}"),
        }
    }
}
