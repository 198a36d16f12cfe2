//! Hilbert series of weighted-graded quotient rings.

mod series;

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::groebner::{buchberger, GroebnerBasis, Ideal, QuotientPresentation};
use crate::polyarith::{Polynomial, RingRef};

pub use series::{format_tpoly, one_minus, tpoly_add, tpoly_mul, HilbertSeries, TPoly};

/// The monomial ideal of leading terms of a reduced basis.
pub fn leading_term_ideal(gb: &GroebnerBasis) -> Ideal {
    let ring = gb.ring();
    let gens = gb.leading_monomials().map(|m| Polynomial::monomial(ring, m.clone())).collect();
    Ideal::new(ring, gens).expect("monomials are homogeneous")
}

pub fn hilbert_series(p: &QuotientPresentation) -> HilbertSeries {
    hilbert_series_of_basis(&buchberger(p.relations()))
}

/// Hilbert series of `ring / ideal(gb)`, read off the leading-term ideal.
pub fn hilbert_series_of_basis(gb: &GroebnerBasis) -> HilbertSeries {
    let ring = gb.ring();
    let gens: Vec<Vec<u16>> = gb.leading_monomials().map(|m| m.exponents().to_vec()).collect();
    let num = monomial_ideal_numerator(ring, gens);
    HilbertSeries::new(num, ring.weights())
}

pub fn series_coefficients(h: &HilbertSeries, n: usize) -> Vec<BigInt> {
    h.coefficients(n)
}

pub fn series_equal(a: &HilbertSeries, b: &HilbertSeries) -> bool {
    a.series_equal(b)
}

/// Numerator `K(t)` with `H(ring / I) = K(t) / prod (1 - t^w)` for the
/// monomial ideal `I` generated by exponent vectors `gens`.
pub fn monomial_ideal_numerator(ring: &RingRef, gens: Vec<Vec<u16>>) -> TPoly {
    let weights = ring.weights();
    let mut memo = HashMap::new();
    numerator_rec(&weights, minimalize(gens), &mut memo)
}

fn degree(weights: &[u32], m: &[u16]) -> u32 {
    m.iter().zip(weights).map(|(&e, &w)| u32::from(e) * w).sum()
}

fn divides(a: &[u16], b: &[u16]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Removes redundant generators; the result is sorted so it can serve as a
/// memo key.
fn minimalize(mut gens: Vec<Vec<u16>>) -> Vec<Vec<u16>> {
    gens.sort_by_key(|g| (g.iter().map(|&e| u32::from(e)).sum::<u32>(), g.clone()));
    gens.dedup();
    let mut out: Vec<Vec<u16>> = Vec::with_capacity(gens.len());
    for g in gens {
        if !out.iter().any(|h| divides(h, &g)) {
            out.push(g);
        }
    }
    out.sort();
    out
}

fn numerator_rec(weights: &[u32], gens: Vec<Vec<u16>>, memo: &mut HashMap<Vec<Vec<u16>>, TPoly>) -> TPoly {
    if gens.is_empty() {
        return vec![BigInt::one()];
    }
    if gens.iter().any(|g| g.iter().all(|&e| e == 0)) {
        return Vec::new();
    }
    if let Some(hit) = memo.get(&gens) {
        return hit.clone();
    }
    let nvars = weights.len();
    let counts: Vec<usize> = (0..nvars).map(|v| gens.iter().filter(|g| g[v] > 0).count()).collect();
    let result = match (0..nvars).filter(|&v| counts[v] >= 2).max_by_key(|&v| (counts[v], std::cmp::Reverse(v))) {
        // Pairwise coprime generators form a regular sequence.
        None => gens
            .iter()
            .fold(vec![BigInt::one()], |acc, g| tpoly_mul(&acc, &one_minus(degree(weights, g)))),
        Some(v) => {
            let e = gens.iter().filter(|g| g[v] > 0).map(|g| g[v]).min().expect("count >= 2");
            let mut pivot = vec![0u16; nvars];
            pivot[v] = e;
            // K(I) = K(I + (p)) + t^deg(p) K(I : p)
            let mut plus = gens.clone();
            plus.push(pivot.clone());
            let colon: Vec<Vec<u16>> = gens
                .iter()
                .map(|g| g.iter().zip(&pivot).map(|(a, b)| a.saturating_sub(*b)).collect())
                .collect();
            let k_plus = numerator_rec(weights, minimalize(plus), memo);
            let k_colon = numerator_rec(weights, minimalize(colon), memo);
            let shift = degree(weights, &pivot) as usize;
            let mut shifted = vec![BigInt::zero(); shift];
            shifted.extend(k_colon);
            tpoly_add(&k_plus, &shifted)
        }
    };
    memo.insert(gens, result.clone());
    result
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyarith::{parse_poly, PolyRing};

    fn presentation(vars: &[(&str, u32)], rels: &[&str]) -> QuotientPresentation {
        let r = PolyRing::weighted(vars).unwrap();
        let gens = rels.iter().map(|s| parse_poly(s, &r).unwrap()).collect();
        QuotientPresentation::new(Ideal::new(&r, gens).unwrap(), "test")
    }

    #[test]
    fn free_polynomial_ring() {
        let h = hilbert_series(&presentation(&[("x", 1)], &[]));
        assert!(h.series_equal(&HilbertSeries::from_i64(&[1], &[1])));
    }

    #[test]
    fn leading_term_ideals() {
        let p = presentation(&[("x", 1), ("y", 1)], &["x"]);
        let lt = leading_term_ideal(&buchberger(p.relations()));
        assert_eq!(lt.generators(), &[parse_poly("x", p.ring()).unwrap()]);

        let q = presentation(
            &[("b", 1), ("q1", 1), ("q2", 1), ("q3", 1), ("l1", 1), ("l2", 1), ("l3", 1)],
            &["q1*l1", "q2*l2", "q3*l3"],
        );
        let lt = leading_term_ideal(&buchberger(q.relations()));
        let mut got: Vec<String> = lt.generators().iter().map(|g| g.to_string()).collect();
        got.sort();
        assert_eq!(got, vec!["q1*l1", "q2*l2", "q3*l3"]);
    }

    #[test]
    fn koszul_plane_leading_terms_under_lex() {
        use crate::polyarith::{MonomialOrder, VariableSpec};
        let r = PolyRing::new(
            vec![VariableSpec::new("s2", 2), VariableSpec::new("s1", 1)],
            MonomialOrder::Lex,
        )
        .unwrap();
        let gens = ["s2 - s1^2", "s1^3"].iter().map(|s| parse_poly(s, &r).unwrap()).collect();
        let gb = buchberger(&Ideal::new(&r, gens).unwrap());
        let lt = leading_term_ideal(&gb);
        let got: Vec<String> = lt.generators().iter().map(|g| g.to_string()).collect();
        assert_eq!(got, vec!["s1^3", "s2"]);
    }

    #[test]
    fn degree_two_conjecture_ring_at_n1() {
        // G_2 = A G_1 = (b^2(2b-t), 2b^2 - b t + 2k, 2b + t)
        let p = presentation(
            &[("b", 1), ("t", 1), ("k", 2)],
            &["b^2*(2*b-t)", "2*b^2 - b*t + 2*k", "2*b + t"],
        );
        let h = hilbert_series(&p);
        assert_eq!(h.numerator_text(), "1 + t + t^2");
        assert!(h.denominator_weights().is_empty());
    }

    #[test]
    fn non_coprime_monomial_ideal() {
        // k[x,y]/(x^2, xy): dims 1,2,1,1,1,...  = (1 + t - t^2)/(1-t)
        let p = presentation(&[("x", 1), ("y", 1)], &["x^2", "x*y"]);
        let h = hilbert_series(&p);
        assert_eq!(h.coefficients_i64(5), vec![1, 2, 1, 1, 1, 1]);
    }

    #[test]
    fn unit_ideal_has_zero_series() {
        let p = presentation(&[("x", 1)], &["1"]);
        assert_eq!(hilbert_series(&p).coefficients_i64(3), vec![0, 0, 0, 0]);
    }
}
