use std::sync::Arc;

use super::{buchberger, GroebnerBasis, GroebnerError, Ideal, TermOrder};
use crate::config::Caps;
use crate::poly::{PolyError, Polynomial, Ring, VarSet};

/// True iff `f` lies in `ideal`.
pub fn ideal_membership(f: &Polynomial, ideal: &Ideal, caps: &Caps) -> Result<bool, GroebnerError> {
    buchberger(ideal, TermOrder::Grevlex, caps)?.contains(f)
}

/// True iff the reduced basis is `[1]`, i.e. the zero set is empty over the
/// algebraic closure.
pub fn is_unit_ideal(ideal: &Ideal, caps: &Caps) -> Result<bool, GroebnerError> {
    Ok(buchberger(ideal, TermOrder::Grevlex, caps)?.is_unit())
}

/// Generators of `ideal ∩ k[x_{k+1}, ...]`, returned in the ring of the
/// remaining variables.
pub fn eliminate(ideal: &Ideal, first_k: usize, caps: &Caps) -> Result<Ideal, GroebnerError> {
    let ring = ideal.ring();
    if first_k > ring.len() {
        return Err(GroebnerError::EliminationRange {
            k: first_k,
            n: ring.len(),
        });
    }
    let sub = VarSet::new(ring.names()[first_k..].iter().cloned())?;
    let gb = buchberger(ideal, TermOrder::Block(first_k), caps)?;
    eliminated_part(&gb, first_k, &sub)
}

fn eliminated_part(gb: &GroebnerBasis, first_k: usize, sub: &Ring) -> Result<Ideal, GroebnerError> {
    let kept = gb
        .basis()
        .iter()
        .filter(|g| (0..first_k).all(|i| !g.involves(i)))
        .map(|g| g.embed(sub))
        .collect::<Result<Vec<_>, PolyError>>()?;
    if kept.is_empty() {
        return Ok(Ideal::zero(sub));
    }
    Ideal::new(sub, kept)
}

/// Saturation `I : f^∞`, computed by adjoining a tag variable `y`, the
/// generator `1 - y*f`, and eliminating `y`.
pub fn saturate(ideal: &Ideal, f: &Polynomial, caps: &Caps) -> Result<Ideal, GroebnerError> {
    if f.is_zero() {
        return Err(PolyError::ZeroPolynomial.into());
    }
    let ring = ideal.ring();
    let tag = ring.fresh_name("y");
    let big = ring.prepended(&[tag.as_str()])?;
    let y = Polynomial::var(&big, &tag)?;
    let mut gens = ideal
        .generators()
        .iter()
        .map(|g| g.embed(&big))
        .collect::<Result<Vec<_>, _>>()?;
    gens.push(&Polynomial::one(&big) - &(&y * &f.embed(&big)?));
    let out = eliminate(&Ideal::new(&big, gens)?, 1, caps)?;
    let gens = out
        .generators()
        .iter()
        .map(|g| g.embed(ring))
        .collect::<Result<Vec<_>, _>>()?;
    Ideal::new(ring, gens)
}

/// Dimension of the zero set: the largest set of variables containing the
/// support of no leading monomial of a Groebner basis.
pub fn krull_dimension(ideal: &Ideal, caps: &Caps) -> Result<usize, GroebnerError> {
    let gb = buchberger(ideal, TermOrder::Grevlex, caps)?;
    if gb.is_unit() {
        return Err(GroebnerError::UnitIdeal);
    }
    let n = ideal.ring().len();
    let mut supports: Vec<Vec<usize>> = gb
        .leading_monomials()
        .iter()
        .map(|m| m.support().collect())
        .collect();
    supports.sort_by_key(Vec::len);
    // drop supports that contain a smaller one
    let mut minimal: Vec<Vec<usize>> = Vec::new();
    for s in supports {
        if !minimal.iter().any(|t| t.iter().all(|v| s.contains(v))) {
            minimal.push(s);
        }
    }
    let mut chosen = vec![false; n];
    let mut best = n;
    min_hitting_set(&minimal, &mut chosen, 0, &mut best);
    Ok(n - best)
}

fn min_hitting_set(sets: &[Vec<usize>], chosen: &mut [bool], count: usize, best: &mut usize) {
    if count >= *best {
        return;
    }
    let unhit = sets.iter().find(|s| s.iter().all(|&v| !chosen[v]));
    match unhit {
        None => *best = count,
        Some(s) => {
            for &v in s {
                chosen[v] = true;
                min_hitting_set(sets, chosen, count + 1, best);
                chosen[v] = false;
            }
        }
    }
}

/// Outcome of a subalgebra membership test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubalgebraMembership {
    pub member: bool,
    /// Polynomial in the tag variables `y1, y2, ...` (one per generator)
    /// evaluating to the tested element; present iff `member`.
    pub witness: Option<Polynomial>,
}

/// Answers repeated membership queries for one subalgebra `k[g1, ..., gm]`.
///
/// Builds the ideal `(y_i - g_i)` in the ring `original ++ tags` under the
/// block order eliminating the original variables; `f` is in the subalgebra
/// iff its normal form involves only tags.
#[derive(Debug, Clone)]
pub struct SubalgebraOracle {
    ring: Ring,
    tag_ring: Ring,
    big: Ring,
    gb: Option<GroebnerBasis>,
}

impl SubalgebraOracle {
    pub fn new(ring: &Ring, gens: &[Polynomial], caps: &Caps) -> Result<Self, GroebnerError> {
        let mut tags: Vec<String> = Vec::with_capacity(gens.len());
        for k in 1..=gens.len() {
            let mut name = format!("y{k}");
            while ring.index_of(&name).is_some() {
                name = format!("{name}_");
            }
            tags.push(name);
        }
        let tag_ring = VarSet::new(tags.iter().cloned())?;
        let big = ring.extended(&tags)?;
        let gb = if gens.is_empty() {
            None
        } else {
            let relations = gens
                .iter()
                .zip(&tags)
                .map(|(g, t)| Ok(&Polynomial::var(&big, t)? - &g.embed(&big)?))
                .collect::<Result<Vec<_>, GroebnerError>>()?;
            Some(buchberger(
                &Ideal::new(&big, relations)?,
                TermOrder::Block(ring.len()),
                caps,
            )?)
        };
        Ok(SubalgebraOracle {
            ring: ring.clone(),
            tag_ring,
            big,
            gb,
        })
    }

    pub fn tag_ring(&self) -> &Ring {
        &self.tag_ring
    }

    pub fn membership(&self, f: &Polynomial) -> Result<SubalgebraMembership, GroebnerError> {
        if **f.ring() != *self.ring {
            return Err(crate::poly::ring_mismatch(f.ring(), &self.ring).into());
        }
        let nf = match &self.gb {
            Some(gb) => gb.normal_form(&f.embed(&self.big)?)?,
            None => f.embed(&self.big)?,
        };
        let n = self.ring.len();
        if (0..n).any(|i| nf.involves(i)) {
            return Ok(SubalgebraMembership {
                member: false,
                witness: None,
            });
        }
        Ok(SubalgebraMembership {
            member: true,
            witness: Some(nf.embed(&self.tag_ring)?),
        })
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool, GroebnerError> {
        Ok(self.membership(f)?.member)
    }
}

/// Is `f` in the subalgebra generated by `gens`? All share `f`'s ring.
pub fn subalgebra_membership(
    f: &Polynomial,
    gens: &[Polynomial],
    caps: &Caps,
) -> Result<SubalgebraMembership, GroebnerError> {
    let ring = Arc::clone(f.ring());
    SubalgebraOracle::new(&ring, gens, caps)?.membership(f)
}
