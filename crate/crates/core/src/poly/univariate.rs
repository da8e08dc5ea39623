use num_traits::{One, Zero};

use super::{ring_mismatch, Monomial, PolyError, Polynomial, Scalar};

/// Dense coefficients, index = power. Trailing zeros trimmed.
fn to_dense(p: &Polynomial, var: Option<usize>) -> Vec<Scalar> {
    let deg = var.map(|v| p.degree_in(v)).unwrap_or(0) as usize;
    let mut out = vec![Scalar::zero(); deg + 1];
    for (m, c) in p.terms() {
        let e = var.map(|v| m.exponent(v)).unwrap_or(0) as usize;
        out[e] += c;
    }
    trim(&mut out);
    out
}

fn trim(v: &mut Vec<Scalar>) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

fn from_dense(coeffs: &[Scalar], like: &Polynomial, var: Option<usize>) -> Polynomial {
    let n = like.ring().len();
    Polynomial::from_terms(
        like.ring(),
        coeffs.iter().enumerate().map(|(k, c)| {
            let mut e = vec![0u32; n];
            if let Some(v) = var {
                e[v] = k as u32;
            }
            (Monomial::from_exponents(e), c.clone())
        }),
    )
}

/// Remainder of `a` modulo `b` (b nonzero).
fn rem(mut a: Vec<Scalar>, b: &[Scalar]) -> Vec<Scalar> {
    let lb = b.last().expect("nonzero divisor").clone();
    while a.len() >= b.len() && !a.is_empty() {
        let shift = a.len() - b.len();
        let factor = a.last().expect("nonempty") / &lb;
        for (i, c) in b.iter().enumerate() {
            a[shift + i] -= &factor * c;
        }
        a.pop();
        trim(&mut a);
    }
    a
}

fn common_variable(p: &Polynomial, q: &Polynomial) -> Result<Option<usize>, PolyError> {
    let mut vars = p.variables();
    for v in q.variables() {
        if !vars.contains(&v) {
            vars.push(v);
        }
    }
    match vars.len() {
        0 => Ok(None),
        1 => Ok(Some(vars[0])),
        _ => Err(PolyError::NotUnivariate(format!("{p} / {q}"))),
    }
}

/// Monic greatest common divisor of two univariate polynomials in a shared
/// variable. `gcd(p, 0)` is `p` made monic; `gcd(0, 0)` is zero.
pub fn gcd_univariate(p: &Polynomial, q: &Polynomial) -> Result<Polynomial, PolyError> {
    if **p.ring() != **q.ring() {
        return Err(ring_mismatch(p.ring(), q.ring()));
    }
    let var = common_variable(p, q)?;
    let mut a = to_dense(p, var);
    let mut b = to_dense(q, var);
    while !b.is_empty() {
        let r = rem(a, &b);
        a = b;
        b = r;
    }
    if let Some(lead) = a.last().cloned() {
        for c in a.iter_mut() {
            *c /= &lead;
        }
    }
    Ok(from_dense(&a, p, var))
}

/// True iff `p` has no repeated roots over the algebraic closure, i.e.
/// `gcd(p, p')` is constant.
pub fn is_squarefree(p: &Polynomial) -> Result<bool, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let vars = p.variables();
    let var = match vars.len() {
        0 => return Ok(true),
        1 => vars[0],
        _ => return Err(PolyError::NotUnivariate(p.to_string())),
    };
    let g = gcd_univariate(p, &p.partial_index(var))?;
    Ok(g.as_constant().is_some_and(|c| c.is_one()))
}
