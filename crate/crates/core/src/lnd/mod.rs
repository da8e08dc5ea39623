//! Locally nilpotent derivations: the infinitesimal form of an additive
//! group action on affine space.
//!
//! A [`Derivation`] is stored by the images of the ring variables and
//! extended to all polynomials by linearity and the Leibniz rule. The group
//! action itself is recovered with [`Derivation::exp_action`].

mod kernel;
mod linalg;

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::One;

use crate::groebner::{GroebnerError, Ideal};
use crate::poly::{PolyError, Polynomial, Ring, Scalar, VarSet};

pub use kernel::{kernel_linear, kernel_saturation, SaturationKernel, SliceData};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LndError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error("nilpotency unknown: some iterate is still nonzero after {0} steps")]
    IterationCap(usize),
    #[error("derivation is not locally nilpotent: {0}")]
    NotLocallyNilpotent(String),
    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),
    #[error("kernel generation did not stabilize within {rounds} rounds")]
    RoundCap {
        rounds: usize,
        partial: Vec<Polynomial>,
    },
    #[error("invalid slice: {0}")]
    InvalidSlice(String),
    #[error("variable `{0}` given more than one image")]
    DuplicateImage(String),
    #[error("the lower triangular action needs at least one copy of V")]
    NoCopies,
}

impl LndError {
    /// True for failures caused by a configured resource limit.
    pub fn is_cap(&self) -> bool {
        matches!(
            self,
            LndError::ResourceCap(_)
                | LndError::RoundCap { .. }
                | LndError::IterationCap(_)
                | LndError::Groebner(GroebnerError::ResourceCap(_))
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    ring: Ring,
    images: Vec<Polynomial>,
}

impl Derivation {
    /// Variables not listed map to zero.
    pub fn new<I, S>(ring: &Ring, images: I) -> Result<Self, LndError>
    where
        I: IntoIterator<Item = (S, Polynomial)>,
        S: AsRef<str>,
    {
        let mut out = vec![Polynomial::zero(ring); ring.len()];
        let mut seen = vec![false; ring.len()];
        for (name, img) in images {
            let i = ring.require(name.as_ref())?;
            if seen[i] {
                return Err(LndError::DuplicateImage(name.as_ref().to_string()));
            }
            if **img.ring() != **ring {
                return Err(PolyError::RingMismatch {
                    left: img.ring().to_string(),
                    right: ring.to_string(),
                }
                .into());
            }
            seen[i] = true;
            out[i] = img.embed(ring)?;
        }
        Ok(Derivation {
            ring: ring.clone(),
            images: out,
        })
    }

    pub fn zero(ring: &Ring) -> Self {
        Derivation {
            ring: ring.clone(),
            images: vec![Polynomial::zero(ring); ring.len()],
        }
    }

    /// Infinitesimal generator of lower triangular unipotent matrices acting
    /// on `W = V^copies ⊕ k^trivial`.
    ///
    /// The ring is `w1, ..., w{2r}, e1, ..., e{trivial}`. Differentiating
    /// `(x, y) ↦ (x, t*x + y)` at `t = 0` gives `D(w{2i-1}) = 0` and
    /// `D(w{2i}) = w{2i-1}`; the trivial summands are fixed.
    pub fn lower_triangular(copies: usize, trivial: usize) -> Result<Self, LndError> {
        if copies == 0 {
            return Err(LndError::NoCopies);
        }
        let names: Vec<String> = (1..=2 * copies)
            .map(|i| format!("w{i}"))
            .chain((1..=trivial).map(|i| format!("e{i}")))
            .collect();
        let ring = VarSet::new(names)?;
        let images = (1..=copies)
            .map(|i| {
                let img = Polynomial::var(&ring, &format!("w{}", 2 * i - 1))?;
                Ok((format!("w{}", 2 * i), img))
            })
            .collect::<Result<Vec<_>, PolyError>>()?;
        Derivation::new(&ring, images)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn image(&self, name: &str) -> Result<&Polynomial, LndError> {
        Ok(&self.images[self.ring.require(name)?])
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(Polynomial::is_zero)
    }

    /// Leibniz extension: `D(f) = Σ ∂f/∂x · D(x)`.
    pub fn apply(&self, f: &Polynomial) -> Result<Polynomial, LndError> {
        if **f.ring() != *self.ring {
            return Err(PolyError::RingMismatch {
                left: f.ring().to_string(),
                right: self.ring.to_string(),
            }
            .into());
        }
        let f = f.embed(&self.ring)?;
        let mut out = Polynomial::zero(&self.ring);
        for (i, img) in self.images.iter().enumerate() {
            if img.is_zero() || !f.involves(i) {
                continue;
            }
            out = &out + &(&f.partial_index(i) * img);
        }
        Ok(out)
    }

    /// Smallest `k` with `D^k(x) = 0` for every variable `x`.
    pub fn nilpotency_index(&self, max_iter: usize) -> Result<usize, LndError> {
        let mut worst = 1;
        for i in 0..self.ring.len() {
            let mut cur = Polynomial::var_index(&self.ring, i);
            let mut k = 0;
            while !cur.is_zero() {
                if k == max_iter {
                    return Err(LndError::IterationCap(max_iter));
                }
                cur = self.apply(&cur)?;
                k += 1;
            }
            worst = worst.max(k);
        }
        Ok(worst)
    }

    /// `Ok(true)` when every variable is killed by an iterate of order at
    /// most `max_iter`; [`LndError::IterationCap`] means "unknown".
    pub fn is_locally_nilpotent(&self, max_iter: usize) -> Result<bool, LndError> {
        self.nilpotency_index(max_iter).map(|_| true)
    }

    /// The group action `exp(t D)(f) = Σ t^i D^i(f) / i!`, as a polynomial in
    /// the ring extended by a fresh parameter (named `t` when available).
    pub fn exp_action(&self, f: &Polynomial) -> Result<Polynomial, LndError> {
        let name = self.ring.fresh_name("t");
        self.exp_action_with(f, &name)
    }

    /// Same as [`Derivation::exp_action`] with an explicit parameter name,
    /// which must not already be a ring variable.
    pub fn exp_action_with(&self, f: &Polynomial, param: &str) -> Result<Polynomial, LndError> {
        const NILPOTENCY_PROBE: usize = 64;
        let index = self
            .nilpotency_index(NILPOTENCY_PROBE)
            .map_err(|_| LndError::NotLocallyNilpotent(format!("no iterate up to {NILPOTENCY_PROBE} vanishes")))?;
        let big = self.ring.extended(&[param])?;
        let t = Polynomial::var(&big, param)?;
        let bound = f.total_degree().unwrap_or(0) as usize * (index - 1) + 1;
        let mut out = Polynomial::zero(&big);
        let mut cur = f.embed(&self.ring)?;
        let mut factorial = BigInt::one();
        let mut i = 0usize;
        while !cur.is_zero() {
            if i > bound {
                return Err(LndError::NotLocallyNilpotent(format!("series for {f} does not terminate")));
            }
            if i > 0 {
                factorial *= i;
            }
            let coeff = Scalar::new(BigInt::one(), factorial.clone());
            out = &out + &(&t.pow(i as u32) * &cur.embed(&big)?.scale(&coeff));
            cur = self.apply(&cur)?;
            i += 1;
        }
        Ok(out)
    }

    pub fn is_invariant(&self, f: &Polynomial) -> Result<bool, LndError> {
        Ok(self.apply(f)?.is_zero())
    }

    /// Ideal of the zeros of the fundamental vector field, generated by the
    /// images of all variables.
    pub fn fixed_point_ideal(&self) -> Ideal {
        Ideal::new(&self.ring, self.images.clone()).expect("images share the ring")
    }

    /// Restriction to `sub`, whose variables must carry images inside `sub`.
    pub fn restrict(&self, sub: &Ring) -> Result<Derivation, LndError> {
        let images = sub
            .names()
            .iter()
            .map(|n| Ok((n.clone(), self.image(n)?.embed(sub)?)))
            .collect::<Result<Vec<_>, LndError>>()?;
        Derivation::new(sub, images)
    }

    /// Images keyed by variable name; handy for printing.
    pub fn image_map(&self) -> HashMap<String, Polynomial> {
        self.ring
            .names()
            .iter()
            .cloned()
            .zip(self.images.iter().cloned())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(t: &str, r: &Ring) -> Polynomial {
        Polynomial::parse(t, r).unwrap()
    }

    #[test]
    fn lower_triangular_images() {
        let d = Derivation::lower_triangular(3, 0).unwrap();
        let r = d.ring().clone();
        assert_eq!(d.image("w2").unwrap(), &p("w1", &r));
        assert_eq!(d.image("w4").unwrap(), &p("w3", &r));
        assert_eq!(d.image("w6").unwrap(), &p("w5", &r));
        for odd in ["w1", "w3", "w5"] {
            assert!(d.image(odd).unwrap().is_zero());
        }

        let d = Derivation::lower_triangular(1, 2).unwrap();
        assert_eq!(d.ring().names(), &["w1", "w2", "e1", "e2"]);
        let nonzero: Vec<&str> = d
            .ring()
            .names()
            .iter()
            .filter(|n| !d.image(n).unwrap().is_zero())
            .map(String::as_str)
            .collect();
        assert_eq!(nonzero, vec!["w2"]);

        let d = Derivation::lower_triangular(4, 0).unwrap();
        assert_eq!(d.image("w8").unwrap(), &p("w7", d.ring()));
        assert_eq!(Derivation::lower_triangular(0, 1), Err(LndError::NoCopies));
    }

    #[test]
    fn apply_examples() {
        let d = Derivation::lower_triangular(3, 0).unwrap();
        let r = d.ring().clone();
        assert!(d.apply(&p("w3*w6 - w4*w5", &r)).unwrap().is_zero());
        assert_eq!(d.apply(&p("w2", &r)).unwrap(), p("w1", &r));
        assert!(d.apply(&p("17/5", &r)).unwrap().is_zero());
        let other = VarSet::new(["x"]).unwrap();
        assert!(matches!(
            d.apply(&p("x", &other)),
            Err(LndError::Poly(PolyError::RingMismatch { .. }))
        ));
    }

    #[test]
    fn nilpotency() {
        let d = Derivation::lower_triangular(3, 0).unwrap();
        assert_eq!(d.nilpotency_index(10).unwrap(), 2);
        assert!(d.is_locally_nilpotent(2).unwrap());

        let r = VarSet::new(["x"]).unwrap();
        let scaling = Derivation::new(&r, [("x", p("x", &r))]).unwrap();
        for cap in [1, 5, 40] {
            assert_eq!(scaling.is_locally_nilpotent(cap), Err(LndError::IterationCap(cap)));
        }
        assert_eq!(Derivation::zero(&r).nilpotency_index(1).unwrap(), 1);
    }

    #[test]
    fn exponential_examples() {
        let d = Derivation::lower_triangular(3, 0).unwrap();
        let r = d.ring().clone();
        let big = r.extended(&["t"]).unwrap();
        assert_eq!(d.exp_action(&p("w2", &r)).unwrap(), p("w2 + t*w1", &big));
        assert_eq!(d.exp_action(&p("w1", &r)).unwrap(), p("w1", &big));
        assert_eq!(
            d.exp_action(&p("w2^2", &r)).unwrap(),
            p("w2^2 + 2*t*w1*w2 + t^2*w1^2", &big)
        );

        let x = VarSet::new(["x"]).unwrap();
        let scaling = Derivation::new(&x, [("x", p("x", &x))]).unwrap();
        assert!(matches!(
            scaling.exp_action(&p("x", &x)),
            Err(LndError::NotLocallyNilpotent(_))
        ));
    }

    #[test]
    fn exp_uses_fresh_parameter() {
        let r = VarSet::new(["t", "x"]).unwrap();
        let d = Derivation::new(&r, [("x", p("t", &r))]).unwrap();
        let out = d.exp_action(&p("x", &r)).unwrap();
        assert_eq!(out.ring().names(), &["t", "x", "t_1"]);
        assert_eq!(out, p("x + t_1*t", out.ring()));
    }

    #[test]
    fn invariance_examples() {
        let d = Derivation::lower_triangular(3, 0).unwrap();
        let r = d.ring().clone();
        assert!(d.is_invariant(&p("w1 - 1 - (w3*w6 - w4*w5)", &r)).unwrap());
        assert!(!d.is_invariant(&p("w2", &r)).unwrap());
        assert!(d.is_invariant(&p("w1^3*w5 - 2*w3 + w1*w3*w5", &r)).unwrap());
    }

    #[test]
    fn fixed_points() {
        let d = Derivation::lower_triangular(3, 0).unwrap();
        let r = d.ring().clone();
        assert_eq!(
            d.fixed_point_ideal(),
            Ideal::parse(&r, &["w1", "w3", "w5"]).unwrap()
        );
        assert!(Derivation::zero(&r).fixed_point_ideal().is_zero());
        let d4 = Derivation::lower_triangular(4, 0).unwrap();
        assert_eq!(
            d4.fixed_point_ideal(),
            Ideal::parse(d4.ring(), &["w1", "w3", "w5", "w7"]).unwrap()
        );
    }

    #[test]
    fn duplicate_images_rejected() {
        let r = VarSet::new(["x", "y"]).unwrap();
        assert_eq!(
            Derivation::new(&r, [("y", p("x", &r)), ("y", p("1", &r))]),
            Err(LndError::DuplicateImage("y".into()))
        );
    }
}
