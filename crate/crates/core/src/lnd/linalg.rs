//! Exact fraction-free Gauss-Jordan elimination.
//!
//! Rows are scaled to integers, eliminated with integer cross-multiplication
//! and kept primitive (content divided out) to bound coefficient growth. The
//! pivot in each column is the first eligible row, so results are
//! deterministic. The final reduced row echelon form is unique.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::poly::Scalar;

fn to_integer_row(row: &[Scalar]) -> Vec<BigInt> {
    let den = row.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    row.iter()
        .map(|c| (c * Scalar::from_integer(den.clone())).to_integer())
        .collect()
}

fn make_primitive(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() || g.is_one() {
        return;
    }
    for c in row.iter_mut() {
        *c = &*c / &g;
    }
}

/// Reduced row echelon form of `rows` (each of length `ncols`), zero rows
/// dropped, together with the pivot column of each remaining row.
pub(crate) fn rref(rows: &[Vec<Scalar>], ncols: usize) -> (Vec<Vec<Scalar>>, Vec<usize>) {
    let mut m: Vec<Vec<BigInt>> = rows.iter().map(|r| to_integer_row(r)).collect();
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..ncols {
        let Some(found) = (next..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(next, found);
        let pivot_row = m[next].clone();
        let p = pivot_row[col].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == next || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, y) in row.iter_mut().zip(pivot_row.iter()) {
                *x = &*x * &p - &factor * y;
            }
            make_primitive(row);
        }
        pivots.push(col);
        next += 1;
        if next == m.len() {
            break;
        }
    }
    m.truncate(next);
    let out = m
        .into_iter()
        .zip(pivots.iter())
        .map(|(row, &pc)| {
            let p = row[pc].clone();
            row.into_iter().map(|x| Scalar::new(x, p.clone())).collect()
        })
        .collect();
    (out, pivots)
}

/// Basis of `{x : A x = 0}`, one vector per free column, with entry 1 at that
/// column and 0 at the other free columns.
pub(crate) fn nullspace(rows: &[Vec<Scalar>], ncols: usize) -> Vec<Vec<Scalar>> {
    let (r, pivots) = rref(rows, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Scalar::zero(); ncols];
            v[f] = Scalar::one();
            for (row, &pc) in r.iter().zip(pivots.iter()) {
                v[pc] = -row[f].clone();
            }
            v
        })
        .collect()
}
