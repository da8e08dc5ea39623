//! Buchberger's algorithm with the Gebauer-Moeller pair update (which
//! subsumes the coprime-leading-monomial and chain criteria) and the normal
//! selection strategy: the pair with the smallest lcm is processed first,
//! ties broken by pair indices so runs are reproducible.

use std::cmp::Ordering;

use super::sorted::SortedPoly;
use super::{GroebnerBasis, GroebnerError, Ideal, TermOrder};
use crate::config::Caps;
use crate::poly::{Monomial, Polynomial};

#[derive(Debug, Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

struct State {
    order: TermOrder,
    polys: Vec<SortedPoly>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
}

impl State {
    fn active_polys(&self) -> impl Iterator<Item = &SortedPoly> + Clone {
        self.polys
            .iter()
            .zip(self.active.iter())
            .filter(|(_, &a)| a)
            .map(|(p, _)| p)
    }

    fn update(&mut self, h: SortedPoly) {
        let hi = self.polys.len();
        let hlm = h.lm().clone();
        self.polys.push(h);
        self.active.push(true);

        let mut candidates: Vec<Pair> = (0..hi)
            .filter(|&g| self.active[g])
            .map(|g| Pair {
                i: g,
                j: hi,
                lcm: hlm.lcm(self.polys[g].lm()),
            })
            .collect();
        let mut kept: Vec<Pair> = Vec::new();
        while !candidates.is_empty() {
            let p = candidates.remove(0);
            let coprime = hlm.is_coprime(self.polys[p.i].lm());
            let dominated = candidates
                .iter()
                .chain(kept.iter())
                .any(|q| q.lcm.divides(&p.lcm));
            if coprime || !dominated {
                kept.push(p);
            }
        }
        kept.retain(|p| !hlm.is_coprime(self.polys[p.i].lm()));

        let polys = &self.polys;
        self.pairs.retain(|p| {
            !hlm.divides(&p.lcm)
                || hlm.lcm(polys[p.i].lm()) == p.lcm
                || hlm.lcm(polys[p.j].lm()) == p.lcm
        });
        self.pairs.extend(kept);

        for g in 0..hi {
            if self.active[g] && hlm.divides(self.polys[g].lm()) {
                self.active[g] = false;
            }
        }
    }

    fn select(&mut self) -> Option<Pair> {
        let order = self.order;
        let best = self
            .pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                order
                    .cmp(&a.lcm, &b.lcm)
                    .then(a.j.cmp(&b.j))
                    .then(a.i.cmp(&b.i))
            })
            .map(|(k, _)| k)?;
        Some(self.pairs.swap_remove(best))
    }
}

fn degree_cap(what: &str, degree: u32, caps: &Caps) -> GroebnerError {
    GroebnerError::ResourceCap(format!(
        "{what} of total degree {degree} exceeds max degree {}",
        caps.max_degree
    ))
}

/// Reduced Groebner basis of `ideal` under `order`.
pub fn buchberger(ideal: &Ideal, order: TermOrder, caps: &Caps) -> Result<GroebnerBasis, GroebnerError> {
    let ring = ideal.ring().clone();
    let unit = |ideal: &Ideal| GroebnerBasis {
        order,
        basis: vec![Polynomial::one(ideal.ring())],
        source: ideal.clone(),
        sorted: vec![SortedPoly::from_poly(&Polynomial::one(ideal.ring()), order)],
    };

    let mut state = State {
        order,
        polys: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
    };
    for g in ideal.generators() {
        if g.is_zero() {
            continue;
        }
        let h = SortedPoly::from_poly(g, order).reduce(state.active_polys(), order);
        if h.is_zero() {
            continue;
        }
        let mut h = h;
        h.make_monic();
        if h.is_constant() {
            return Ok(unit(ideal));
        }
        if h.lm().degree() > caps.max_degree {
            return Err(degree_cap("generator", h.lm().degree(), caps));
        }
        state.update(h);
    }

    let mut processed = 0usize;
    while let Some(pair) = state.select() {
        processed += 1;
        if processed > caps.max_pairs {
            return Err(GroebnerError::ResourceCap(format!(
                "more than {} S-pairs",
                caps.max_pairs
            )));
        }
        if pair.lcm.degree() > caps.max_degree {
            return Err(degree_cap("S-pair lcm", pair.lcm.degree(), caps));
        }
        let s = state.polys[pair.i].s_polynomial(&state.polys[pair.j], order);
        let mut h = s.reduce(state.active_polys(), order);
        if h.is_zero() {
            continue;
        }
        h.make_monic();
        if h.is_constant() {
            return Ok(unit(ideal));
        }
        if h.lm().degree() > caps.max_degree {
            return Err(degree_cap("basis element", h.lm().degree(), caps));
        }
        state.update(h);
    }

    // the active set is already minimal; reduce tails against the others
    let minimal: Vec<SortedPoly> = state.active_polys().cloned().collect();
    let mut reduced: Vec<SortedPoly> = Vec::with_capacity(minimal.len());
    for (k, g) in minimal.iter().enumerate() {
        let others = minimal
            .iter()
            .enumerate()
            .filter(move |(l, _)| *l != k)
            .map(|(_, p)| p);
        let lead = g.terms.last().expect("nonzero").clone();
        let tail = SortedPoly {
            terms: g.terms[..g.terms.len() - 1].to_vec(),
        }
        .reduce(others, order);
        let mut terms = tail.terms;
        terms.push(lead);
        let mut r = SortedPoly { terms };
        r.make_monic();
        reduced.push(r);
    }
    reduced.sort_by(|a, b| order.cmp(a.lm(), b.lm()).then(Ordering::Equal));

    Ok(GroebnerBasis {
        order,
        basis: reduced.iter().map(|g| g.to_poly(&ring)).collect(),
        source: ideal.clone(),
        sorted: reduced,
    })
}
