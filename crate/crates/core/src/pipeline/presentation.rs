//! Presenting the invariant ring of `X` by generators and relations.

use std::collections::HashMap;

use super::{affine_parametrization, ConstructionArtifacts, Family, PipelineError};
use crate::config::Caps;
use crate::groebner::{buchberger, eliminate, Ideal, SubalgebraOracle, TermOrder};
use crate::poly::{Polynomial, Ring, VarSet};

/// Generators of `k[X]^Ga` and the ideal of relations among them.
#[derive(Debug, Clone)]
pub struct Presentation {
    /// Invariants of `W` the generators restrict from.
    pub lifts: Vec<Polynomial>,
    /// Restrictions to `X`, in the coordinates of `X` (everything but `w1`).
    pub generators: Vec<Polynomial>,
    /// One tag per generator: `y1, y2, ...`.
    pub tags: Ring,
    /// Relations among the generators, in the tag ring.
    pub relations: Vec<Polynomial>,
}

impl Presentation {
    pub fn relation_ideal(&self) -> Ideal {
        if self.relations.is_empty() {
            return Ideal::zero(&self.tags);
        }
        Ideal::new(&self.tags, self.relations.clone()).expect("relations live in the tag ring")
    }
}

/// Restricts `kernel_gens` (invariants of `W`) to `X` along `w1 = 1 + f(q1)`,
/// discards generators lying in the subalgebra of the remaining ones, and
/// eliminates the coordinates from `(y_i - g_i)` to get the relations.
pub fn invariant_presentation(
    art: &ConstructionArtifacts,
    kernel_gens: &[Polynomial],
    caps: &Caps,
) -> Result<Presentation, PipelineError> {
    if art.spec.family != Family::V3 {
        return Err(PipelineError::UnsupportedFamily("invariant presentation".into()));
    }
    let g = affine_parametrization(art)?;
    let coords = g.ring().clone();
    let graph: HashMap<String, Polynomial> = [("w1".to_string(), g)].into();

    let mut lifts: Vec<Polynomial> = Vec::new();
    let mut restricted: Vec<Polynomial> = Vec::new();
    for k in kernel_gens {
        let r = k.embed(&art.w_ring)?.substitute_some(&coords, &graph)?;
        if r.is_constant() || restricted.contains(&r) {
            continue;
        }
        lifts.push(k.embed(&art.w_ring)?);
        restricted.push(r);
    }

    let mut i = 0;
    while i < restricted.len() {
        let others: Vec<Polynomial> = restricted
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, p)| p.clone())
            .collect();
        if SubalgebraOracle::new(&coords, &others, caps)?.contains(&restricted[i])? {
            restricted.remove(i);
            lifts.remove(i);
        } else {
            i += 1;
        }
    }

    let tags = VarSet::new((1..=restricted.len()).map(|k| format!("y{k}")))?;
    let big = coords.extended(tags.names())?;
    let graph_ideal = restricted
        .iter()
        .zip(tags.names())
        .map(|(r, t)| Ok(&Polynomial::var(&big, t)? - &r.embed(&big)?))
        .collect::<Result<Vec<_>, PipelineError>>()?;
    let relations: Vec<Polynomial> = if graph_ideal.is_empty() {
        Vec::new()
    } else {
        eliminate(&Ideal::new(&big, graph_ideal)?, coords.len(), caps)?
            .generators()
            .iter()
            .filter(|p| !p.is_zero())
            .map(|p| p.embed(&tags).map(|p| p.primitive()))
            .collect::<Result<_, _>>()?
    };
    Ok(Presentation {
        lifts,
        generators: restricted,
        tags,
        relations,
    })
}

/// Each relation, evaluated at the lifted generators, lies in the ideal of `X`.
pub fn verify_presentation(
    art: &ConstructionArtifacts,
    pres: &Presentation,
    caps: &Caps,
) -> Result<bool, PipelineError> {
    let gb = buchberger(&art.x_ideal, TermOrder::Grevlex, caps)?;
    let assignment: HashMap<String, Polynomial> = pres
        .tags
        .names()
        .iter()
        .cloned()
        .zip(pres.lifts.iter().cloned())
        .collect();
    for rel in &pres.relations {
        let value = rel.substitute(&art.w_ring, &assignment)?;
        if !gb.contains(&value)? {
            return Ok(false);
        }
    }
    Ok(true)
}
