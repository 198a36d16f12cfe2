use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::ring::{Monomial, PolyRing, RingRef};
use super::{PolyError, Rational};

/// A single coefficient-monomial pair.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub coeff: Rational,
    pub monomial: Monomial,
}

/// Sparse polynomial with rational coefficients.
///
/// Terms are kept strictly descending in the ring's term order with no zero
/// coefficients, so structural equality is mathematical equality.
#[derive(Clone, Debug)]
pub struct Polynomial {
    ring: RingRef,
    terms: Vec<Term>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        PolyRing::same(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Polynomial {
    pub fn zero(ring: &RingRef) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(ring: &RingRef) -> Self {
        Self::constant(ring, Rational::one())
    }

    pub fn constant(ring: &RingRef, c: Rational) -> Self {
        Self::term(ring, c, ring.one_monomial())
    }

    pub fn from_int(ring: &RingRef, c: i64) -> Self {
        Self::constant(ring, Rational::from_integer(BigInt::from(c)))
    }

    pub fn term(ring: &RingRef, coeff: Rational, monomial: Monomial) -> Self {
        let terms = if coeff.is_zero() {
            Vec::new()
        } else {
            vec![Term { coeff, monomial }]
        };
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn monomial(ring: &RingRef, monomial: Monomial) -> Self {
        Self::term(ring, Rational::one(), monomial)
    }

    /// The generator with index `var`.
    pub fn var(ring: &RingRef, var: usize) -> Self {
        Self::monomial(ring, ring.var_monomial(var, 1))
    }

    pub fn var_named(ring: &RingRef, name: &str) -> Result<Self, PolyError> {
        ring.var_index(name)
            .map(|i| Self::var(ring, i))
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))
    }

    /// Builds a canonical polynomial from arbitrary (possibly repeated, zero) terms.
    pub fn from_terms(ring: &RingRef, terms: impl IntoIterator<Item = (Rational, Monomial)>) -> Self {
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (c, m) in terms {
            debug_assert_eq!(m.exponents().len(), ring.nvars());
            *acc.entry(m).or_insert_with(Rational::zero) += c;
        }
        Self::from_map(ring, acc)
    }

    fn from_map(ring: &RingRef, acc: HashMap<Monomial, Rational>) -> Self {
        let mut terms: Vec<Term> = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(monomial, coeff)| Term { coeff, monomial })
            .collect();
        terms.sort_by(|a, b| ring.cmp(&b.monomial, &a.monomial));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Wraps terms already sorted strictly descending with nonzero coefficients.
    pub(crate) fn from_sorted_terms(ring: &RingRef, terms: Vec<Term>) -> Self {
        debug_assert!(terms.iter().all(|t| !t.coeff.is_zero()));
        debug_assert!(terms
            .windows(2)
            .all(|w| ring.cmp(&w[0].monomial, &w[1].monomial) == Ordering::Greater));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.monomial.is_one())
    }

    pub fn leading_term(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.monomial)
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.terms.first().map(|t| &t.coeff)
    }

    pub fn coeff_of(&self, m: &Monomial) -> Rational {
        self.terms
            .binary_search_by(|t| self.ring.cmp(m, &t.monomial))
            .map(|i| self.terms[i].coeff.clone())
            .unwrap_or_else(|_| Rational::zero())
    }

    /// Maximal weighted degree over the terms; `None` for the zero polynomial.
    pub fn weighted_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.monomial.degree()).max()
    }

    /// Zero counts as homogeneous.
    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some(first) => self.terms.iter().all(|t| t.monomial.degree() == first.monomial.degree()),
        }
    }

    /// The common degree of a nonzero homogeneous polynomial.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        if self.is_zero() || !self.is_homogeneous() {
            None
        } else {
            self.weighted_degree()
        }
    }

    /// The component of exact weighted degree `degree`.
    pub fn homogeneous_part(&self, degree: u32) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().filter(|t| t.monomial.degree() == degree).cloned().collect(),
        }
    }

    fn check_ring(&self, other: &Polynomial) -> Result<(), PolyError> {
        if PolyRing::same(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(PolyError::RingMismatch)
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_ring(other)?;
        Ok(self.merge(other, &Rational::one(), None))
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_ring(other)?;
        Ok(self.merge(other, &-Rational::one(), None))
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(&self.ring));
        }
        if other.len() == 1 {
            let t = &other.terms[0];
            return Ok(self.mul_term(&t.coeff, &t.monomial));
        }
        if self.len() == 1 {
            let t = &self.terms[0];
            return Ok(other.mul_term(&t.coeff, &t.monomial));
        }
        let mut acc: HashMap<Monomial, Rational> = HashMap::with_capacity(self.len() * other.len());
        for a in &self.terms {
            for b in &other.terms {
                let m = a.monomial.mul(&b.monomial);
                let c = &a.coeff * &b.coeff;
                match acc.get_mut(&m) {
                    Some(v) => *v += c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Ok(Self::from_map(&self.ring, acc))
    }

    /// `self + scale * (monomial * other)`, the workhorse of reduction.
    pub(crate) fn merge(&self, other: &Polynomial, scale: &Rational, shift: Option<&Monomial>) -> Polynomial {
        let ring = &self.ring;
        let mut out = Vec::with_capacity(self.len() + other.len());
        let mut i = 0;
        let mut j = 0;
        let shifted = |t: &Term| -> Term {
            Term {
                coeff: &t.coeff * scale,
                monomial: match shift {
                    Some(m) => t.monomial.mul(m),
                    None => t.monomial.clone(),
                },
            }
        };
        while i < self.terms.len() && j < other.terms.len() {
            let b = shifted(&other.terms[j]);
            match ring.cmp(&self.terms[i].monomial, &b.monomial) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(b);
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &self.terms[i].coeff + &b.coeff;
                    if !c.is_zero() {
                        out.push(Term {
                            coeff: c,
                            monomial: b.monomial,
                        });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(other.terms[j..].iter().map(shifted));
        Polynomial {
            ring: ring.clone(),
            terms: out,
        }
    }

    pub fn mul_term(&self, coeff: &Rational, monomial: &Monomial) -> Polynomial {
        if coeff.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: &t.coeff * coeff,
                    monomial: t.monomial.mul(monomial),
                })
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        self.mul_term(c, &self.ring.one_monomial())
    }

    pub fn pow(&self, mut exp: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one(&self.ring);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Divides by the leading coefficient. Zero stays zero.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coeff() {
            None => self.clone(),
            Some(c) if c.is_one() => self.clone(),
            Some(c) => self.scale(&c.recip()),
        }
    }

    /// Keeps only the terms satisfying `keep`.
    pub fn filter_terms(&self, mut keep: impl FnMut(&Monomial) -> bool) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().filter(|t| keep(&t.monomial)).cloned().collect(),
        }
    }

    /// Scales to an integer polynomial with coprime coefficients and positive
    /// leading coefficient. Returns the scaled polynomial.
    pub fn primitive_part(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let mut lcm = BigInt::one();
        for t in &self.terms {
            lcm = num_integer::Integer::lcm(&lcm, t.coeff.denom());
        }
        let mut g = BigInt::zero();
        for t in &self.terms {
            let v = t.coeff.numer() * (&lcm / t.coeff.denom());
            g = num_integer::Integer::gcd(&g, &v);
        }
        if self.terms[0].coeff.is_negative() {
            g = -g;
        }
        self.scale(&Rational::new(lcm, g))
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("polynomials from different rings")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("polynomials from different rings")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("polynomials from different rings")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: -&t.coeff,
                    monomial: t.monomial.clone(),
                })
                .collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: Polynomial) -> Polynomial {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: &Polynomial) -> Polynomial {
                (&self).$f(rhs)
            }
        }
        impl $tr<Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: Polynomial) -> Polynomial {
                self.$f(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl fmt::Display for Polynomial {
    /// Terms in descending ring order, e.g. `3/2*b^2*q1 - l1*q1 + 4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            let neg = t.coeff.is_negative();
            let abs = t.coeff.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || t.monomial.is_one() {
                factors.push(abs.to_string());
            }
            for (v, &e) in t.monomial.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.ring.var_name(v).to_string()),
                    _ => factors.push(format!("{}^{}", self.ring.var_name(v), e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyarith::parse_poly;

    fn ring() -> RingRef {
        PolyRing::weighted(&[("b", 1), ("q", 2), ("r1", 1), ("r2", 1)]).unwrap()
    }

    #[test]
    fn additive_inverse_cancels() {
        let r = ring();
        let b = Polynomial::var(&r, 0);
        assert!((&b + &-&b).is_zero());
        let p = parse_poly("b^2 + 4*q", &r).unwrap();
        let q = parse_poly("-b^2", &r).unwrap();
        assert_eq!(&p + &q, parse_poly("4*q", &r).unwrap());
    }

    #[test]
    fn base_relation_as_a_sum() {
        let r = ring();
        let sum = parse_poly("q*r1", &r).unwrap() + parse_poly("q*r2", &r).unwrap() + parse_poly("-4*q*b", &r).unwrap();
        assert_eq!(sum, parse_poly("q*(r1+r2-4*b)", &r).unwrap());
        assert_eq!(sum.homogeneous_degree(), Some(3));
    }

    #[test]
    fn distributivity_example() {
        let r = PolyRing::weighted(&[("b", 1), ("t", 1)]).unwrap();
        let p = parse_poly("2*b - t", &r).unwrap() * parse_poly("b", &r).unwrap();
        assert_eq!(p, parse_poly("2*b^2 - b*t", &r).unwrap());
        assert_eq!(&p * &Polynomial::one(&r), p);
    }

    #[test]
    fn degree_of_zero_is_undefined() {
        let r = ring();
        assert_eq!(Polynomial::zero(&r).weighted_degree(), None);
        assert_eq!(Polynomial::var(&r, 0).weighted_degree(), Some(1));
        let s = PolyRing::weighted(&[("sigma3", 3)]).unwrap();
        assert_eq!(Polynomial::var(&s, 0).weighted_degree(), Some(3));
    }

    #[test]
    fn inhomogeneous_has_max_degree() {
        let r = ring();
        let p = parse_poly("q + b + 1", &r).unwrap();
        assert_eq!(p.weighted_degree(), Some(2));
        assert!(!p.is_homogeneous());
        assert_eq!(p.homogeneous_degree(), None);
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let a = Polynomial::var(&ring(), 0);
        let other = PolyRing::weighted(&[("x", 1)]).unwrap();
        let b = Polynomial::var(&other, 0);
        assert_eq!(a.checked_add(&b), Err(PolyError::RingMismatch));
        assert_eq!(a.checked_mul(&b), Err(PolyError::RingMismatch));
    }

    #[test]
    fn primitive_part_clears_denominators() {
        let r = ring();
        let p = parse_poly("-3/2*b + 3/4*r1", &r).unwrap();
        assert_eq!(p.primitive_part(), parse_poly("2*b - r1", &r).unwrap());
    }
}
