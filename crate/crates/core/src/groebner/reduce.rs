//! Multivariate division by a list of monic polynomials.

use std::cmp::Ordering;

use num_traits::Zero;

use crate::polyarith::{Monomial, Polynomial, Rational, RingRef, Term};

/// Leading monomial plus a support bitmask for fast divisibility rejection.
#[derive(Clone, Debug)]
pub(crate) struct Divisor {
    pub(crate) lm: Monomial,
    mask: u64,
}

impl Divisor {
    pub(crate) fn new(lm: &Monomial) -> Self {
        Divisor {
            lm: lm.clone(),
            mask: support_mask(lm),
        }
    }

    #[inline]
    pub(crate) fn divides(&self, m: &Monomial, m_mask: u64) -> bool {
        self.mask & !m_mask == 0 && self.lm.divides(m)
    }
}

pub(crate) fn support_mask(m: &Monomial) -> u64 {
    m.support().fold(0u64, |acc, v| acc | (1u64 << (v % 64)))
}

/// `a - c * shift * g`, assuming the leading terms cancel exactly.
fn sub_scaled(ring: &RingRef, a: &[Term], g: &[Term], c: &Rational, shift: &Monomial) -> Vec<Term> {
    let mut out = Vec::with_capacity(a.len() + g.len());
    let mut i = 1;
    let mut j = 1;
    while i < a.len() && j < g.len() {
        let gm = g[j].monomial.mul(shift);
        match ring.cmp(&a[i].monomial, &gm) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push(Term {
                    coeff: -(c * &g[j].coeff),
                    monomial: gm,
                });
                j += 1;
            }
            Ordering::Equal => {
                let v = &a[i].coeff - c * &g[j].coeff;
                if !v.is_zero() {
                    out.push(Term { coeff: v, monomial: gm });
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend(a[i..].iter().cloned());
    for t in &g[j..] {
        out.push(Term {
            coeff: -(c * &t.coeff),
            monomial: t.monomial.mul(shift),
        });
    }
    out
}

/// Reduces `p` by the monic polynomials `basis` (with matching `divisors`).
///
/// With `full = false` only the leading term is reduced (top reduction).
pub(crate) fn reduce(p: &Polynomial, basis: &[&Polynomial], divisors: &[&Divisor], full: bool) -> Polynomial {
    let ring = p.ring().clone();
    let mut work: Vec<Term> = p.terms().to_vec();
    let mut start = 0usize;
    let mut rem: Vec<Term> = Vec::new();
    while start < work.len() {
        let lt = &work[start];
        let mask = support_mask(&lt.monomial);
        let hit = divisors.iter().position(|d| d.divides(&lt.monomial, mask));
        match hit {
            Some(k) => {
                let g = basis[k];
                let shift = lt.monomial.div(&divisors[k].lm).expect("divisible");
                let c = lt.coeff.clone();
                work = sub_scaled(&ring, &work[start..], g.terms(), &c, &shift);
                start = 0;
            }
            None => {
                if !full {
                    rem.extend(work.drain(start..));
                    break;
                }
                rem.push(work[start].clone());
                start += 1;
            }
        }
    }
    Polynomial::from_sorted_terms(&ring, rem)
}
