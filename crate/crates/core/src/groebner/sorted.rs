//! Term lists sorted by an arbitrary [`TermOrder`], used inside the engine.

use std::cmp::Ordering;

use num_traits::{One, Zero};

use super::TermOrder;
use crate::poly::{Monomial, Polynomial, Ring, Scalar};

/// Terms in ascending order, so the leading term is last.
#[derive(Clone, Debug)]
pub(crate) struct SortedPoly {
    pub(crate) terms: Vec<(Monomial, Scalar)>,
}

impl SortedPoly {
    pub(crate) fn from_poly(p: &Polynomial, order: TermOrder) -> Self {
        let mut terms: Vec<(Monomial, Scalar)> =
            p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        terms.sort_by(|a, b| order.cmp(&a.0, &b.0));
        SortedPoly { terms }
    }

    pub(crate) fn to_poly(&self, ring: &Ring) -> Polynomial {
        Polynomial::from_terms(ring, self.terms.iter().cloned())
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn lm(&self) -> &Monomial {
        &self.terms.last().expect("nonzero polynomial").0
    }

    pub(crate) fn lc(&self) -> &Scalar {
        &self.terms.last().expect("nonzero polynomial").1
    }

    pub(crate) fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.lm().is_one()
    }

    pub(crate) fn make_monic(&mut self) {
        if self.is_zero() || self.lc().is_one() {
            return;
        }
        let inv = self.lc().recip();
        for (_, c) in self.terms.iter_mut() {
            *c *= &inv;
        }
    }

    /// `self - coeff * m * g`.
    pub(crate) fn sub_mul(
        &self,
        g: &SortedPoly,
        m: &Monomial,
        coeff: &Scalar,
        order: TermOrder,
    ) -> SortedPoly {
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = g
            .terms
            .iter()
            .map(|(t, c)| (t.mul(m), -(c * coeff)))
            .peekable();
        loop {
            let step = match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Less,
                (None, Some(_)) => Ordering::Greater,
                (Some(x), Some(y)) => order.cmp(&x.0, &y.0),
            };
            match step {
                Ordering::Less => out.push(a.next().expect("peeked").clone()),
                Ordering::Greater => out.push(b.next().expect("peeked")),
                Ordering::Equal => {
                    let (t, c1) = a.next().expect("peeked");
                    let (_, c2) = b.next().expect("peeked");
                    let c = c1 + c2;
                    if !c.is_zero() {
                        out.push((t.clone(), c));
                    }
                }
            }
        }
        SortedPoly { terms: out }
    }

    /// Full reduction modulo `basis` (all divisors assumed nonzero).
    pub(crate) fn reduce<'a, I>(&self, basis: I, order: TermOrder) -> SortedPoly
    where
        I: IntoIterator<Item = &'a SortedPoly> + Clone,
    {
        let mut work = self.clone();
        let mut rem: Vec<(Monomial, Scalar)> = Vec::new();
        while let Some((m, c)) = work.terms.last() {
            let divisor = basis.clone().into_iter().find(|g| g.lm().divides(m));
            match divisor {
                Some(g) => {
                    let q = g.lm().quotient_of(m).expect("divides");
                    let coeff = c / g.lc();
                    work = work.sub_mul(g, &q, &coeff, order);
                }
                None => rem.push(work.terms.pop().expect("nonempty")),
            }
        }
        rem.reverse();
        SortedPoly { terms: rem }
    }

    pub(crate) fn s_polynomial(&self, other: &SortedPoly, order: TermOrder) -> SortedPoly {
        let lcm = self.lm().lcm(other.lm());
        let ma = self.lm().quotient_of(&lcm).expect("lcm");
        let mb = other.lm().quotient_of(&lcm).expect("lcm");
        let ca = self.lc().recip();
        let cb = other.lc().recip();
        let left = SortedPoly { terms: Vec::new() }.sub_mul(self, &ma, &(-ca), order);
        left.sub_mul(other, &mb, &cb, order)
    }
}
