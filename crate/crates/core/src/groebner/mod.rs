//! Gröbner bases of homogeneous ideals: normal forms, membership and
//! equality of ideals, graded standard monomials, and graded ranks of ring
//! map images.

mod buchberger;
mod ideal;
pub mod linalg;
mod reduce;

use std::collections::HashMap;

use thiserror::Error;

use crate::polyarith::{Monomial, PolyError, PolyRing, Polynomial, Rational, RingMap};

pub use buchberger::{buchberger, buchberger_truncated, GroebnerBasis};
pub use ideal::{Ideal, QuotientPresentation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroebnerError {
    #[error("operands belong to different rings")]
    RingMismatch,
    #[error("generator `{0}` is not homogeneous")]
    NotHomogeneous(String),
    #[error("text is not a reduced Gröbner basis")]
    NotReduced,
    #[error("degree {degree} is above the basis degree bound {bound}")]
    BeyondDegreeBound { degree: u32, bound: u32 },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Remainder of `p` modulo `gb`.
pub fn normal_form(p: &Polynomial, gb: &GroebnerBasis) -> Result<Polynomial, GroebnerError> {
    gb.normal_form(p)
}

pub fn ideal_membership(p: &Polynomial, ideal: &Ideal) -> Result<bool, GroebnerError> {
    if !PolyRing::same(p.ring(), ideal.ring()) {
        return Err(GroebnerError::RingMismatch);
    }
    if p.is_zero() {
        return Ok(true);
    }
    buchberger(ideal).contains(p)
}

/// `i ⊆ j`.
pub fn ideal_contains(j: &Ideal, i: &Ideal) -> Result<bool, GroebnerError> {
    if !PolyRing::same(i.ring(), j.ring()) {
        return Err(GroebnerError::RingMismatch);
    }
    let gb = buchberger(j);
    for g in i.generators() {
        if !gb.contains(g)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn ideal_equal(i: &Ideal, j: &Ideal) -> Result<bool, GroebnerError> {
    if !PolyRing::same(i.ring(), j.ring()) {
        return Err(GroebnerError::RingMismatch);
    }
    Ok(buchberger(i) == buchberger(j))
}

pub fn standard_monomials(gb: &GroebnerBasis, degree: u32) -> Vec<Monomial> {
    gb.standard_monomials(degree)
}

/// Coordinates of normal forms in the basis `basis` (all terms of each
/// polynomial must be among `basis`).
pub fn coordinate_rows(polys: &[Polynomial], basis: &[Monomial]) -> Vec<Vec<Rational>> {
    let index: HashMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
    polys
        .iter()
        .map(|p| {
            let mut row = vec![Rational::default(); basis.len()];
            for t in p.terms() {
                let k = *index.get(&t.monomial).expect("term outside the coordinate basis");
                row[k] = t.coeff.clone();
            }
            row
        })
        .collect()
}

/// Dimension of the degree-`degree` piece of the image of
/// `source / source_gb -> target / target_gb` induced by `map`.
///
/// The image is spanned by the images of the source standard monomials,
/// which requires the map to send the source ideal into the target ideal.
pub fn graded_image_rank(
    map: &RingMap,
    source_gb: &GroebnerBasis,
    target_gb: &GroebnerBasis,
    degree: u32,
) -> Result<usize, GroebnerError> {
    if !PolyRing::same(map.source(), source_gb.ring()) || !PolyRing::same(map.target(), target_gb.ring()) {
        return Err(GroebnerError::RingMismatch);
    }
    for gb in [source_gb, target_gb] {
        if let Some(bound) = gb.degree_bound().filter(|&b| degree > b) {
            return Err(GroebnerError::BeyondDegreeBound { degree, bound });
        }
    }
    let sources = source_gb.standard_monomials(degree);
    let targets = target_gb.standard_monomials(degree);
    if sources.is_empty() || targets.is_empty() {
        return Ok(0);
    }
    let images = sources
        .into_iter()
        .map(|m| {
            let p = Polynomial::monomial(map.source(), m);
            map.apply_reduced(&p, |x| target_gb.reduce(&x))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(linalg::rank(&coordinate_rows(&images, &targets)))
}
