//! The two families of additive-group quotients of affine space.
//!
//! For `W = V^⊕r ⊕ k^t` with the lower triangular action on each copy of
//! `V = k^2`, the hypersurface `X = {w1 = 1 + f(q)}` in `W` is an affine
//! space on which the action is free, and `Y ⊂ V × W` cut out by
//! `u*w2 - v*w1 = 1 + f(q)` compactifies it with boundary `B = Y ∩ {u = v = 0}`.
//! Here `q` is `q1 = w3*w6 - w4*w5` (family v3) or the three minors
//! `q1, q2 = w3*w8 - w4*w7, q3 = w5*w8 - w6*w7` (family v4).
//!
//! Every check reduces to an exact Groebner computation.

mod presentation;
mod report;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::config::Caps;
use crate::groebner::{is_unit_ideal, krull_dimension, GroebnerError, Ideal};
use crate::lnd::{Derivation, LndError};
use crate::poly::{is_squarefree, PolyError, Polynomial, Ring, Scalar, VarSet};

pub use presentation::{invariant_presentation, verify_presentation, Presentation};
pub use report::{run_battery, Checks, Dims, PresentationReport, ReportDocument, VerificationReport};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PipelineError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Lnd(#[from] LndError),
    #[error("f + 1 = {0} has a repeated root")]
    RepeatedRoots(String),
    #[error("f must vanish at the origin, but f(0) = {0}")]
    NonzeroConstant(String),
    #[error("f is constant, so the boundary is empty")]
    ConstantF,
    #[error("not a hypersurface: {0}")]
    NotHypersurface(String),
    #[error("{0} is not supported for this family")]
    UnsupportedFamily(String),
    #[error("the boundary is empty")]
    EmptyBoundary,
}

impl PipelineError {
    /// Errors rejecting the input spec itself, as opposed to failures of a
    /// computation on a valid spec.
    pub fn is_rejection(&self) -> bool {
        matches!(
            self,
            PipelineError::RepeatedRoots(_) | PipelineError::NonzeroConstant(_) | PipelineError::ConstantF
        )
    }

    pub fn is_cap(&self) -> bool {
        match self {
            PipelineError::Groebner(GroebnerError::ResourceCap(_)) => true,
            PipelineError::Lnd(e) => e.is_cap(),
            _ => false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    V3,
    V4,
}

impl Family {
    /// Copies of `V` in `W`.
    pub fn copies(self) -> usize {
        match self {
            Family::V3 => 3,
            Family::V4 => 4,
        }
    }

    /// Variable names of `f`.
    pub fn arguments(self) -> &'static [&'static str] {
        match self {
            Family::V3 => &["s"],
            Family::V4 => &["a", "b", "c"],
        }
    }

    pub fn argument_ring(self) -> Ring {
        VarSet::new(self.arguments().iter().copied()).expect("fixed names")
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::V3 => "v3",
            Family::V4 => "v4",
        })
    }
}

impl FromStr for Family {
    type Err = PipelineError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "v3" => Ok(Family::V3),
            "v4" => Ok(Family::V4),
            _ => Err(PipelineError::UnsupportedFamily(format!("family `{s}`"))),
        }
    }
}

/// A member of one of the two families, given by `f` and the number of
/// trivial summands of `W`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilySpec {
    pub family: Family,
    pub f: Polynomial,
    pub trivial: usize,
}

impl FamilySpec {
    /// Validated spec: `f(0) = 0`, `f` nonconstant, and for v3 `f + 1`
    /// squarefree.
    pub fn new(family: Family, f: Polynomial, trivial: usize) -> Result<Self, PipelineError> {
        let spec = FamilySpec::new_unchecked(family, f, trivial)?;
        spec.validate()?;
        Ok(spec)
    }

    /// Parses `f` over the family's argument variables and validates.
    pub fn parse(family: Family, f: &str, trivial: usize) -> Result<Self, PipelineError> {
        let f = Polynomial::parse(f, &family.argument_ring())?;
        FamilySpec::new(family, f, trivial)
    }

    /// Skips validation; only the ring of `f` is checked. Lets tests push
    /// invalid instances through the individual checks.
    pub fn new_unchecked(family: Family, f: Polynomial, trivial: usize) -> Result<Self, PipelineError> {
        let f = f.embed(&family.argument_ring())?;
        Ok(FamilySpec { family, f, trivial })
    }

    pub fn validate(&self) -> Result<(), PipelineError> {
        let c = self.f.constant_term();
        if !c.is_zero() {
            return Err(PipelineError::NonzeroConstant(c.to_string()));
        }
        if self.f.is_constant() {
            return Err(PipelineError::ConstantF);
        }
        if self.family == Family::V3 {
            let shifted = &self.f + &Polynomial::one(self.f.ring());
            if !is_squarefree(&shifted)? {
                return Err(PipelineError::RepeatedRoots(shifted.to_string()));
            }
        }
        Ok(())
    }

    /// `f + 1` is squarefree; always true for v4, where it is not required.
    pub fn squarefree(&self) -> Result<bool, PipelineError> {
        match self.family {
            Family::V3 => {
                let shifted = &self.f + &Polynomial::one(self.f.ring());
                if shifted.is_constant() {
                    return Ok(true);
                }
                Ok(is_squarefree(&shifted)?)
            }
            Family::V4 => Ok(true),
        }
    }
}

/// Rings, derivations and ideals of one family member. Fields are public so
/// that degenerate variants can be assembled by hand.
#[derive(Debug, Clone)]
pub struct ConstructionArtifacts {
    pub spec: FamilySpec,
    /// `w1, ..., w2r, e1, ..., et`.
    pub w_ring: Ring,
    /// `u, v` followed by the variables of `w_ring`.
    pub ambient_ring: Ring,
    pub w_derivation: Derivation,
    /// `w_derivation` extended by `D(u) = 0`, `D(v) = u`.
    pub derivation: Derivation,
    pub x_ideal: Ideal,
    pub ybar_ideal: Ideal,
    pub b_ideal: Ideal,
    /// The minors `q_i`, in `w_ring`.
    pub quad_invariants: Vec<Polynomial>,
    /// Variables spanning the non-stable locus (`w1, w3, ...`).
    pub nonstable: Vec<String>,
}

impl ConstructionArtifacts {
    pub fn x_equation(&self) -> &Polynomial {
        &self.x_ideal.generators()[0]
    }

    pub fn ybar_equation(&self) -> &Polynomial {
        &self.ybar_ideal.generators()[0]
    }

    pub fn nonstable_ideal(&self) -> Result<Ideal, PipelineError> {
        let gens = self
            .nonstable
            .iter()
            .map(|n| Polynomial::var(&self.w_ring, n))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Ideal::new(&self.w_ring, gens)?)
    }
}

fn minor(ring: &Ring, i: usize, j: usize) -> Result<Polynomial, PolyError> {
    // determinant of the columns (w_{2i-1}, w_{2i}) and (w_{2j-1}, w_{2j})
    let w = |k: usize| Polynomial::var(ring, &format!("w{k}"));
    Ok(&(&w(2 * i - 1)? * &w(2 * j)?) - &(&w(2 * i)? * &w(2 * j - 1)?))
}

pub fn build_family(spec: &FamilySpec) -> Result<ConstructionArtifacts, PipelineError> {
    spec.validate()?;
    build_family_unchecked(spec)
}

/// [`build_family`] without validating the spec.
pub fn build_family_unchecked(spec: &FamilySpec) -> Result<ConstructionArtifacts, PipelineError> {
    let copies = spec.family.copies();
    let w_derivation = Derivation::lower_triangular(copies, spec.trivial)?;
    let w_ring = w_derivation.ring().clone();
    let ambient_ring = w_ring.prepended(&["u", "v"])?;

    let quad_invariants = match spec.family {
        Family::V3 => vec![minor(&w_ring, 2, 3)?],
        Family::V4 => vec![minor(&w_ring, 2, 3)?, minor(&w_ring, 2, 4)?, minor(&w_ring, 3, 4)?],
    };
    let assignment: HashMap<String, Polynomial> = spec
        .family
        .arguments()
        .iter()
        .map(|a| a.to_string())
        .zip(quad_invariants.iter().cloned())
        .collect();
    let f_of_q = spec.f.substitute(&w_ring, &assignment)?;
    let one = Polynomial::one(&w_ring);
    let w1 = Polynomial::var(&w_ring, "w1")?;
    let x_eq = &(&w1 - &one) - &f_of_q;

    let amb = |name: &str| Polynomial::var(&ambient_ring, name);
    let (u, v) = (amb("u")?, amb("v")?);
    let ybar_eq = &(&(&u * &amb("w2")?) - &(&v * &amb("w1")?)) - &(&one + &f_of_q).embed(&ambient_ring)?;

    let mut images = vec![("v".to_string(), u.clone())];
    for name in w_ring.names() {
        images.push((name.clone(), w_derivation.image(name)?.embed(&ambient_ring)?));
    }
    let derivation = Derivation::new(&ambient_ring, images)?;

    let x_ideal = Ideal::principal(x_eq);
    let ybar_ideal = Ideal::principal(ybar_eq);
    let b_ideal = ybar_ideal.with_generators(&[u, v])?;
    Ok(ConstructionArtifacts {
        spec: spec.clone(),
        w_ring,
        ambient_ring,
        w_derivation,
        derivation,
        x_ideal,
        ybar_ideal,
        b_ideal,
        quad_invariants,
        nonstable: (1..=copies).map(|i| format!("w{}", 2 * i - 1)).collect(),
    })
}

/// The ideal is principal with generator `c*x - g`, `c` a nonzero constant
/// and `g` free of `x`; then its zero set is the graph of `g / c`.
pub fn is_graph_over(ideal: &Ideal, x: &str) -> Result<bool, PipelineError> {
    let idx = ideal.ring().require(x)?;
    let [p] = ideal.generators() else {
        return Ok(false);
    };
    Ok(p.degree_in(idx) == 1 && p.partial_index(idx).is_constant())
}

/// `X` is the graph of a function of the coordinates other than `w1`, hence
/// an affine space.
pub fn check_affine_space(art: &ConstructionArtifacts) -> Result<bool, PipelineError> {
    is_graph_over(&art.x_ideal, "w1")
}

/// `g` with `X = {w1 = g}`, written in the remaining coordinates.
pub fn affine_parametrization(art: &ConstructionArtifacts) -> Result<Polynomial, PipelineError> {
    if !check_affine_space(art)? {
        return Err(PipelineError::NotHypersurface("X is not a graph over w1".into()));
    }
    let p = art.x_equation();
    let idx = art.w_ring.require("w1")?;
    let c = p.partial_index(idx).as_constant().expect("checked");
    let w1 = Polynomial::var(&art.w_ring, "w1")?;
    let g = &w1 - &p.scale(&(Scalar::one() / c));
    let rest = VarSet::new(art.w_ring.names().iter().filter(|n| *n != "w1").cloned())?;
    Ok(g.embed(&rest)?)
}

/// The equation of `X` and every `q_i` are killed by the derivation.
pub fn check_invariance(art: &ConstructionArtifacts) -> Result<bool, PipelineError> {
    let d = &art.w_derivation;
    if !d.is_invariant(art.x_equation())? {
        return Ok(false);
    }
    for q in &art.quad_invariants {
        if !d.is_invariant(q)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `X` misses the non-stable locus `{w1 = w3 = ... = 0}`.
pub fn check_stability(art: &ConstructionArtifacts, caps: &Caps) -> Result<bool, PipelineError> {
    let ideal = art.x_ideal.sum(&art.nonstable_ideal()?)?;
    Ok(is_unit_ideal(&ideal, caps)?)
}

/// The fundamental vector field has no zero on `X`. In characteristic zero
/// stabilizers of a unipotent group are connected, so this certifies that
/// every stabilizer is trivial.
pub fn check_freeness(art: &ConstructionArtifacts, caps: &Caps) -> Result<bool, PipelineError> {
    let ideal = art.x_ideal.sum(&art.w_derivation.fixed_point_ideal())?;
    Ok(is_unit_ideal(&ideal, caps)?)
}

fn coordinate_cut(p: &Polynomial) -> Option<usize> {
    let vars = p.variables();
    match (vars.as_slice(), p.num_terms(), p.total_degree()) {
        ([i], 1, Some(1)) => Some(*i),
        _ => None,
    }
}

/// Jacobian criterion for a hypersurface inside a coordinate subspace.
///
/// Generators that are multiples of a single variable cut out a coordinate
/// subspace; those variables are set to zero in the rest. Exactly one
/// equation must remain, and the scheme is smooth iff the equation and its
/// partials in the surviving variables have no common zero.
pub fn check_smooth(ideal: &Ideal, caps: &Caps) -> Result<bool, PipelineError> {
    let ring = ideal.ring();
    let cuts: Vec<usize> = ideal.generators().iter().filter_map(coordinate_cut).collect();
    let zero: HashMap<String, Polynomial> = cuts
        .iter()
        .map(|&i| (ring.name(i).to_string(), Polynomial::zero(ring)))
        .collect();
    let mut equations = Vec::new();
    for g in ideal.generators() {
        if coordinate_cut(g).is_some() {
            continue;
        }
        let h = g.substitute_some(ring, &zero)?;
        if !h.is_zero() {
            equations.push(h);
        }
    }
    let [eq] = equations.as_slice() else {
        return Err(PipelineError::NotHypersurface(format!(
            "{} equations remain after removing coordinate cuts",
            equations.len()
        )));
    };
    let mut gens = vec![eq.clone()];
    for i in 0..ring.len() {
        if !cuts.contains(&i) {
            gens.push(eq.partial_index(i));
        }
    }
    Ok(is_unit_ideal(&Ideal::new(ring, gens)?, caps)?)
}

fn dimension(ideal: &Ideal, caps: &Caps) -> Result<usize, PipelineError> {
    match krull_dimension(ideal, caps) {
        Err(GroebnerError::UnitIdeal) => Err(PipelineError::EmptyBoundary),
        other => Ok(other?),
    }
}

/// Codimension of `B` in `Y`, and for v3 the number of components of `B`.
///
/// For v3, `B ≅ A^2 × {f(q1) + 1 = 0}`; as `f + 1` has `deg f` distinct roots
/// over the algebraic closure and each level set of `q1` is irreducible,
/// `B` has exactly `deg f` components.
pub fn boundary_analysis(art: &ConstructionArtifacts, caps: &Caps) -> Result<(usize, Option<usize>), PipelineError> {
    let dy = dimension(&art.ybar_ideal, caps)?;
    let db = dimension(&art.b_ideal, caps)?;
    let m = match art.spec.family {
        Family::V3 => Some(art.spec.f.total_degree().unwrap_or(0) as usize),
        Family::V4 => None,
    };
    Ok((dy - db, m))
}

/// Ranks in the split short exact sequence `0 → K0(Z) → K0(closure) → Z → 0`,
/// where `Z` has `m` components, each contributing one copy of `Z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct KTheoryRanks {
    #[serde(skip)]
    pub m: usize,
    #[serde(rename = "Z")]
    pub rank_z: usize,
    #[serde(rename = "closure")]
    pub rank_closure: usize,
    #[serde(rename = "quotient")]
    pub rank_quotient: usize,
}

pub fn k_theory_ranks(m: usize) -> Result<KTheoryRanks, PipelineError> {
    if m == 0 {
        return Err(PipelineError::EmptyBoundary);
    }
    Ok(KTheoryRanks {
        m,
        rank_z: m,
        rank_closure: m + 1,
        rank_quotient: 1,
    })
}
