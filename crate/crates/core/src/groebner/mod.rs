//! Groebner bases and the ideal-theoretic decision procedures built on them.
//!
//! Every geometric question asked elsewhere in the crate is reduced to one of
//! the operations here: unit-ideal tests (emptiness over the algebraic
//! closure), membership, elimination, saturation, Krull dimension and
//! subalgebra membership.

mod buchberger;
mod ops;
mod sorted;

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_traits::One;

use crate::poly::{grevlex_cmp, Monomial, PolyError, Polynomial, Ring};
use sorted::SortedPoly;

pub use buchberger::buchberger;
pub use ops::{
    eliminate, ideal_membership, is_unit_ideal, krull_dimension, saturate,
    subalgebra_membership, SubalgebraMembership, SubalgebraOracle,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroebnerError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),
    #[error("an ideal needs at least one generator")]
    EmptyIdeal,
    #[error("the ideal is the unit ideal")]
    UnitIdeal,
    #[error("invalid term order `{0}` (expected grevlex, lex or elim:K)")]
    InvalidOrder(String),
    #[error("cannot eliminate {k} of {n} variables")]
    EliminationRange { k: usize, n: usize },
}

/// Monomial order used by a Groebner basis computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TermOrder {
    Grevlex,
    Lex,
    /// Eliminates the first `k` variables: the first block dominates, with
    /// graded reverse lexicographic order inside each block.
    Block(usize),
}

impl TermOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (ea, eb) = (a.exponents(), b.exponents());
        match *self {
            TermOrder::Grevlex => grevlex_cmp(ea, eb),
            TermOrder::Lex => ea.cmp(eb),
            TermOrder::Block(k) => {
                let k = k.min(ea.len());
                grevlex_cmp(&ea[..k], &eb[..k]).then_with(|| grevlex_cmp(&ea[k..], &eb[k..]))
            }
        }
    }
}

impl fmt::Display for TermOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TermOrder::Grevlex => write!(f, "grevlex"),
            TermOrder::Lex => write!(f, "lex"),
            TermOrder::Block(k) => write!(f, "elim:{k}"),
        }
    }
}

impl FromStr for TermOrder {
    type Err = GroebnerError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "grevlex" => Ok(TermOrder::Grevlex),
            "lex" => Ok(TermOrder::Lex),
            _ => s
                .strip_prefix("elim:")
                .and_then(|k| k.parse().ok())
                .map(TermOrder::Block)
                .ok_or_else(|| GroebnerError::InvalidOrder(s.to_string())),
        }
    }
}

/// Finitely generated ideal of a polynomial ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ideal {
    ring: Ring,
    generators: Vec<Polynomial>,
}

impl Ideal {
    /// Zero generators are dropped unless nothing else is left.
    pub fn new(ring: &Ring, generators: Vec<Polynomial>) -> Result<Ideal, GroebnerError> {
        if generators.is_empty() {
            return Err(GroebnerError::EmptyIdeal);
        }
        for g in &generators {
            if **g.ring() != **ring {
                return Err(crate::poly::ring_mismatch(g.ring(), ring).into());
            }
        }
        let mut kept: Vec<Polynomial> = generators
            .into_iter()
            .filter(|g| !g.is_zero())
            .map(|g| if std::sync::Arc::ptr_eq(g.ring(), ring) { g } else { g.embed(ring).expect("same names") })
            .collect();
        if kept.is_empty() {
            kept.push(Polynomial::zero(ring));
        }
        Ok(Ideal {
            ring: ring.clone(),
            generators: kept,
        })
    }

    pub fn zero(ring: &Ring) -> Ideal {
        Ideal {
            ring: ring.clone(),
            generators: vec![Polynomial::zero(ring)],
        }
    }

    pub fn principal(p: Polynomial) -> Ideal {
        let ring = p.ring().clone();
        Ideal::new(&ring, vec![p]).expect("one generator in its own ring")
    }

    /// Parses each text as a generator in `ring`.
    pub fn parse<S: AsRef<str>>(ring: &Ring, texts: &[S]) -> Result<Ideal, GroebnerError> {
        let gens = texts
            .iter()
            .map(|t| Polynomial::parse(t.as_ref(), ring))
            .collect::<Result<Vec<_>, _>>()?;
        Ideal::new(ring, gens)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.iter().all(Polynomial::is_zero)
    }

    /// Ideal generated by both generator lists.
    pub fn sum(&self, other: &Ideal) -> Result<Ideal, GroebnerError> {
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    pub fn with_generators(&self, extra: &[Polynomial]) -> Result<Ideal, GroebnerError> {
        let mut gens = self.generators.clone();
        gens.extend(extra.iter().cloned());
        Ideal::new(&self.ring, gens)
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Reduced Groebner basis of [`GroebnerBasis::source`] under
/// [`GroebnerBasis::order`]. Elements are monic and sorted by ascending
/// leading monomial; the zero ideal has an empty basis.
#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    order: TermOrder,
    basis: Vec<Polynomial>,
    source: Ideal,
    sorted: Vec<SortedPoly>,
}

impl GroebnerBasis {
    pub fn order(&self) -> TermOrder {
        self.order
    }

    pub fn basis(&self) -> &[Polynomial] {
        &self.basis
    }

    pub fn source(&self) -> &Ideal {
        &self.source
    }

    pub fn ring(&self) -> &Ring {
        self.source.ring()
    }

    pub fn is_unit(&self) -> bool {
        self.sorted.len() == 1 && self.sorted[0].is_constant()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.sorted.iter().map(|g| g.lm().clone()).collect()
    }

    /// Remainder of `f` modulo the basis; zero iff `f` lies in the ideal.
    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial, GroebnerError> {
        if **f.ring() != **self.ring() {
            return Err(crate::poly::ring_mismatch(f.ring(), self.ring()).into());
        }
        let sp = SortedPoly::from_poly(f, self.order);
        Ok(sp.reduce(self.sorted.iter(), self.order).to_poly(self.ring()))
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool, GroebnerError> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// Checks that every S-polynomial of basis pairs reduces to zero.
    pub fn s_pairs_reduce_to_zero(&self) -> bool {
        for i in 0..self.sorted.len() {
            for j in (i + 1)..self.sorted.len() {
                let s = self.sorted[i].s_polynomial(&self.sorted[j], self.order);
                if !s.reduce(self.sorted.iter(), self.order).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Checks monic leading coefficients and that no term of any element is
    /// divisible by the leading monomial of another.
    pub fn is_reduced(&self) -> bool {
        self.sorted.iter().enumerate().all(|(i, g)| {
            g.lc().is_one()
                && self.sorted.iter().enumerate().all(|(j, h)| {
                    i == j || g.terms.iter().all(|(m, _)| !h.lm().divides(m))
                })
        })
    }
}

/// Free-function form of [`GroebnerBasis::normal_form`].
pub fn normal_form(f: &Polynomial, g: &GroebnerBasis) -> Result<Polynomial, GroebnerError> {
    g.normal_form(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_parsing() {
        assert_eq!("grevlex".parse::<TermOrder>().unwrap(), TermOrder::Grevlex);
        assert_eq!("lex".parse::<TermOrder>().unwrap(), TermOrder::Lex);
        assert_eq!("elim:2".parse::<TermOrder>().unwrap(), TermOrder::Block(2));
        assert!("elim:x".parse::<TermOrder>().is_err());
        assert_eq!(TermOrder::Block(3).to_string(), "elim:3");
    }

    #[test]
    fn block_order_eliminates_first_block() {
        let m = |e: &[u32]| Monomial::from_exponents(e.to_vec());
        let ord = TermOrder::Block(1);
        // any power of t beats anything free of t
        assert_eq!(ord.cmp(&m(&[1, 0, 0]), &m(&[0, 5, 5])), Ordering::Greater);
        assert_eq!(ord.cmp(&m(&[0, 2, 0]), &m(&[0, 0, 1])), Ordering::Greater);
        assert_eq!(TermOrder::Lex.cmp(&m(&[0, 1]), &m(&[0, 0])), Ordering::Greater);
    }

    #[test]
    fn ideal_drops_zero_generators() {
        let r = crate::poly::VarSet::new(["x"]).unwrap();
        let i = Ideal::parse(&r, &["0", "x", "0"]).unwrap();
        assert_eq!(i.generators().len(), 1);
        let z = Ideal::parse(&r, &["0"]).unwrap();
        assert!(z.is_zero());
        assert_eq!(Ideal::new(&r, vec![]), Err(GroebnerError::EmptyIdeal));
    }
}
