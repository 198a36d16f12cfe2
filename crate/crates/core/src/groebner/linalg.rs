//! Exact rank by fraction-free elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::polyarith::Rational;

fn primitive_row(row: &[Rational]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for c in row {
        lcm = lcm.lcm(c.denom());
    }
    let mut out: Vec<BigInt> = row.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
    normalize(&mut out);
    out
}

fn normalize(row: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for c in row.iter() {
        if !c.is_zero() {
            g = g.gcd(c);
            if g.is_one() {
                return;
            }
        }
    }
    if g > BigInt::one() {
        for c in row.iter_mut() {
            *c /= &g;
        }
    }
}

/// Rank over the rationals of the given rows (all of equal length).
///
/// Rows are scaled to primitive integer vectors and eliminated without
/// division; each updated row is divided by its content. Pivots are chosen
/// by smallest bit size in the current column.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .filter(|r| r.iter().any(|c| !c.is_zero()))
        .map(|r| primitive_row(r))
        .collect();
    let ncols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..ncols {
        if r == m.len() {
            break;
        }
        let pivot = (r..m.len())
            .filter(|&i| !m[i][col].is_zero())
            .min_by_key(|&i| m[i][col].bits());
        let Some(p) = pivot else { continue };
        m.swap(r, p);
        let (head, tail) = m.split_at_mut(r + 1);
        let prow = &head[r];
        for row in tail.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let g = prow[col].gcd(&row[col]);
            let a = &prow[col] / &g;
            let b = &row[col] / &g;
            for j in col..ncols {
                let v = &a * &row[j] - &b * &prow[j];
                row[j] = v;
            }
            normalize(row);
        }
        r += 1;
    }
    r
}

/// Rank of an integer matrix; a convenience wrapper for tests and callers
/// with small entries.
pub fn rank_i64(rows: &[Vec<i64>]) -> usize {
    let rows: Vec<Vec<Rational>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect())
        .collect();
    rank(&rows)
}
