//! Exact sparse multivariate polynomials over the rationals.
//!
//! A [`Polynomial`] lives in a ring described by a [`VarSet`], an ordered list
//! of distinct variable names shared behind an `Arc`. Terms are kept in a
//! `BTreeMap` keyed by [`Monomial`], whose order is graded reverse
//! lexicographic, so equality and printing are canonical.

mod monomial;
mod parse;
mod univariate;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub use monomial::Monomial;
pub(crate) use monomial::grevlex_cmp;
pub use parse::{identifiers_in, parse_polynomial};
pub use univariate::{gcd_univariate, is_squarefree};

/// Exact rational coefficient. `BigRational` keeps values in lowest terms
/// with a positive denominator.
pub type Scalar = num_rational::BigRational;

/// Shared handle to a variable list.
pub type Ring = Arc<VarSet>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("invalid variable name `{0}`")]
    InvalidVariableName(String),
    #[error("ring mismatch: {left} vs {right}")]
    RingMismatch { left: String, right: String },
    #[error("no assignment for variable `{0}`")]
    MissingAssignment(String),
    #[error("not a univariate polynomial: {0}")]
    NotUnivariate(String),
    #[error("zero polynomial where a nonzero one is required")]
    ZeroPolynomial,
    #[error("exact division failed: {0}")]
    NotDivisible(String),
}

pub(crate) fn ring_mismatch(a: &VarSet, b: &VarSet) -> PolyError {
    PolyError::RingMismatch {
        left: a.to_string(),
        right: b.to_string(),
    }
}

pub fn scalar(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Scalar {
    Scalar::new(BigInt::from(n), BigInt::from(d))
}

/// Ordered list of distinct variable names.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VarSet {
    names: Vec<String>,
}

pub(crate) fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl VarSet {
    pub fn new<I, S>(names: I) -> Result<Ring, PolyError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut out: Vec<String> = Vec::new();
        for name in names {
            let name = name.into();
            if !is_identifier(&name) {
                return Err(PolyError::InvalidVariableName(name));
            }
            if out.contains(&name) {
                return Err(PolyError::DuplicateVariable(name));
            }
            out.push(name);
        }
        Ok(Arc::new(VarSet { names: out }))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn require(&self, name: &str) -> Result<usize, PolyError> {
        self.index_of(name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))
    }

    /// `base` if unused, otherwise `base_1`, `base_2`, ...
    pub fn fresh_name(&self, base: &str) -> String {
        if self.index_of(base).is_none() {
            return base.to_string();
        }
        (1..)
            .map(|i| format!("{base}_{i}"))
            .find(|n| self.index_of(n).is_none())
            .expect("infinite supply of names")
    }

    /// New ring with `extra` appended after the existing variables.
    pub fn extended<S: AsRef<str>>(&self, extra: &[S]) -> Result<Ring, PolyError> {
        VarSet::new(
            self.names
                .iter()
                .cloned()
                .chain(extra.iter().map(|s| s.as_ref().to_string())),
        )
    }

    /// New ring with `extra` placed before the existing variables.
    pub fn prepended<S: AsRef<str>>(&self, extra: &[S]) -> Result<Ring, PolyError> {
        VarSet::new(
            extra
                .iter()
                .map(|s| s.as_ref().to_string())
                .chain(self.names.iter().cloned()),
        )
    }
}

impl fmt::Display for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.names.join(", "))
    }
}

/// Sparse polynomial with exact rational coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    ring: Ring,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Polynomial {
    pub fn zero(ring: &Ring) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, Scalar::one())
    }

    pub fn constant(ring: &Ring, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(ring.len()), c);
        }
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn var(ring: &Ring, name: &str) -> Result<Self, PolyError> {
        let i = ring.require(name)?;
        Ok(Self::var_index(ring, i))
    }

    pub fn var_index(ring: &Ring, index: usize) -> Self {
        Self::monomial(ring, Monomial::var(ring.len(), index), Scalar::one())
    }

    pub fn monomial(ring: &Ring, m: Monomial, c: Scalar) -> Self {
        debug_assert_eq!(m.nvars(), ring.len());
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Builds a polynomial from terms, summing repeated monomials.
    pub fn from_terms<I>(ring: &Ring, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Scalar)>,
    {
        let mut map: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), ring.len());
            accumulate(&mut map, m, c);
        }
        Polynomial {
            ring: ring.clone(),
            terms: map,
        }
    }

    pub fn parse(text: &str, ring: &Ring) -> Result<Self, PolyError> {
        parse_polynomial(text, ring)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// Terms in descending graded reverse lexicographic order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> + '_ {
        self.terms.iter().rev()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// Value of a constant polynomial.
    pub fn as_constant(&self) -> Option<Scalar> {
        if self.is_constant() {
            Some(self.constant_term())
        } else {
            None
        }
    }

    pub fn constant_term(&self) -> Scalar {
        self.terms
            .get(&Monomial::one(self.ring.len()))
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Leading term in graded reverse lexicographic order.
    pub fn leading_term(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    /// Indices of the variables that occur.
    pub fn variables(&self) -> Vec<usize> {
        let mut seen = vec![false; self.ring.len()];
        for m in self.terms.keys() {
            for i in m.support() {
                seen[i] = true;
            }
        }
        seen.iter()
            .enumerate()
            .filter(|(_, &s)| s)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn variable_names(&self) -> Vec<&str> {
        self.variables()
            .into_iter()
            .map(|i| self.ring.name(i))
            .collect()
    }

    pub fn involves(&self, index: usize) -> bool {
        self.terms.keys().any(|m| m.exponent(index) > 0)
    }

    pub fn degree_in(&self, index: usize) -> u32 {
        self.terms
            .keys()
            .map(|m| m.exponent(index))
            .max()
            .unwrap_or(0)
    }

    fn same_ring(&self, other: &Polynomial) -> Result<(), PolyError> {
        if Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring {
            Ok(())
        } else {
            Err(ring_mismatch(&self.ring, &other.ring))
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.same_ring(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            accumulate(&mut terms, m.clone(), c.clone());
        }
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms,
        })
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.same_ring(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            accumulate(&mut terms, m.clone(), -c.clone());
        }
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms,
        })
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.same_ring(other)?;
        let mut terms = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                accumulate(&mut terms, ma.mul(mb), ca * cb);
            }
        }
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms,
        })
    }

    pub fn pow(&self, mut n: u32) -> Polynomial {
        let mut result = Polynomial::one(&self.ring);
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v * c))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(t, v)| (t.mul(m), v * c))
                .collect(),
        }
    }

    /// Scaled so the leading coefficient is 1. Zero stays zero.
    pub fn monic(&self) -> Polynomial {
        match self.leading_term() {
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
            None => self.clone(),
        }
    }

    /// Scaled to coprime integer coefficients whose leading coefficient,
    /// in lexicographic order of exponent vectors, is positive.
    pub fn primitive(&self) -> Polynomial {
        use num_integer::Integer;
        if self.is_zero() {
            return self.clone();
        }
        let den = self
            .terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let cleared = self.scale(&Scalar::from_integer(den));
        let content = cleared
            .terms
            .values()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c.numer()));
        let lex_lead_negative = cleared
            .terms
            .iter()
            .max_by(|a, b| a.0.exponents().cmp(b.0.exponents()))
            .map(|(_, c)| c.is_negative())
            .unwrap_or(false);
        let mut factor = Scalar::new(BigInt::one(), content);
        if lex_lead_negative {
            factor = -factor;
        }
        cleared.scale(&factor)
    }

    /// Image of `self` in `target`, matching variables by name.
    pub fn embed(&self, target: &Ring) -> Result<Polynomial, PolyError> {
        if Arc::ptr_eq(&self.ring, target) || *self.ring == **target {
            return Ok(Polynomial {
                ring: target.clone(),
                terms: self.terms.clone(),
            });
        }
        let mut map = Vec::with_capacity(self.ring.len());
        for name in self.ring.names() {
            map.push(target.index_of(name));
        }
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut e = vec![0u32; target.len()];
            for i in m.support() {
                match map[i] {
                    Some(j) => e[j] = m.exponent(i),
                    None => {
                        return Err(PolyError::UnknownVariable(self.ring.name(i).to_string()))
                    }
                }
            }
            terms.insert(Monomial::from_exponents(e), c.clone());
        }
        Ok(Polynomial {
            ring: target.clone(),
            terms,
        })
    }

    /// Ring homomorphism image. Every variable occurring in `self` must be
    /// assigned, and all images must live in `target`.
    pub fn substitute(
        &self,
        target: &Ring,
        assignment: &HashMap<String, Polynomial>,
    ) -> Result<Polynomial, PolyError> {
        self.substitute_impl(target, assignment, false)
    }

    /// Like [`Polynomial::substitute`], but unassigned variables map to the
    /// variable of the same name in `target`.
    pub fn substitute_some(
        &self,
        target: &Ring,
        assignment: &HashMap<String, Polynomial>,
    ) -> Result<Polynomial, PolyError> {
        self.substitute_impl(target, assignment, true)
    }

    fn substitute_impl(
        &self,
        target: &Ring,
        assignment: &HashMap<String, Polynomial>,
        identity_default: bool,
    ) -> Result<Polynomial, PolyError> {
        for img in assignment.values() {
            if **img.ring() != **target {
                return Err(ring_mismatch(img.ring(), target));
            }
        }
        let mut images: Vec<Option<Polynomial>> = vec![None; self.ring.len()];
        for i in self.variables() {
            let name = self.ring.name(i);
            images[i] = match assignment.get(name) {
                Some(p) => Some(p.clone()),
                None if identity_default => Some(Polynomial::var(target, name)?),
                None => return Err(PolyError::MissingAssignment(name.to_string())),
            };
        }
        // powers[i][k] = images[i]^(k+1)
        let mut powers: Vec<Vec<Polynomial>> = vec![Vec::new(); self.ring.len()];
        let mut result = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(target, c.clone());
            for i in m.support() {
                let e = m.exponent(i) as usize;
                let base = images[i].as_ref().expect("assigned above");
                while powers[i].len() < e {
                    let next = match powers[i].last() {
                        Some(p) => p * base,
                        None => base.clone(),
                    };
                    powers[i].push(next);
                }
                term = &term * &powers[i][e - 1];
            }
            result = &result + &term;
        }
        Ok(result)
    }

    pub fn partial(&self, name: &str) -> Result<Polynomial, PolyError> {
        let i = self.ring.require(name)?;
        Ok(self.partial_index(i))
    }

    pub fn partial_index(&self, index: usize) -> Polynomial {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exponent(index);
            if let Some(lower) = m.without_one(index) {
                accumulate(&mut terms, lower, c * scalar(e as i64));
            }
        }
        Polynomial {
            ring: self.ring.clone(),
            terms,
        }
    }

    pub fn evaluate(&self, point: &HashMap<String, Scalar>) -> Result<Scalar, PolyError> {
        let mut values: Vec<Option<&Scalar>> = vec![None; self.ring.len()];
        for i in self.variables() {
            let name = self.ring.name(i);
            values[i] = Some(
                point
                    .get(name)
                    .ok_or_else(|| PolyError::MissingAssignment(name.to_string()))?,
            );
        }
        let mut total = Scalar::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for i in m.support() {
                let v = values[i].expect("assigned above");
                t *= num_traits::pow(v.clone(), m.exponent(i) as usize);
            }
            total += t;
        }
        Ok(total)
    }

    /// Exact quotient `self / divisor`, failing if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Polynomial) -> Result<Polynomial, PolyError> {
        self.same_ring(divisor)?;
        let (lm, lc) = match divisor.leading_term() {
            Some((m, c)) => (m.clone(), c.clone()),
            None => return Err(PolyError::ZeroPolynomial),
        };
        let mut rem = self.clone();
        let mut quotient = Polynomial::zero(&self.ring);
        while let Some((m, c)) = rem.leading_term() {
            let q = match lm.quotient_of(m) {
                Some(q) => q,
                None => {
                    return Err(PolyError::NotDivisible(format!(
                        "{self} by {divisor}"
                    )))
                }
            };
            let coeff = c / &lc;
            rem = &rem - &divisor.mul_monomial(&q, &coeff);
            accumulate(&mut quotient.terms, q, coeff);
        }
        Ok(quotient)
    }
}

pub(crate) fn accumulate(map: &mut BTreeMap<Monomial, Scalar>, m: Monomial, c: Scalar) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match map.entry(m) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

/// Matrix of partial derivatives, entry `(i, j)` = d ps\[i\] / d xs\[j\].
pub fn jacobian(ps: &[Polynomial], xs: &[&str]) -> Result<Vec<Vec<Polynomial>>, PolyError> {
    ps.iter()
        .map(|p| xs.iter().map(|x| p.partial(x)).collect())
        .collect()
}

fn fmt_scalar(c: &Scalar) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if m.is_one() || !abs.is_one() {
                factors.push(fmt_scalar(&abs));
            }
            for i in m.support() {
                let e = m.exponent(i);
                if e == 1 {
                    factors.push(self.ring.name(i).to_string());
                } else {
                    factors.push(format!("{}^{}", self.ring.name(i), e));
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self} in {})", self.ring)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $imp:ident) => {
        impl $trait<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            /// Panics if the operands live in different rings.
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$imp(rhs).expect("polynomial ring mismatch")
            }
        }
        impl $trait<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}
