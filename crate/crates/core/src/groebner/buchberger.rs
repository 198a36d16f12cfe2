use std::cmp::Ordering;
use std::fmt;

use crate::polyarith::{parse_poly, Monomial, PolyRing, Polynomial, RingRef};

use super::ideal::Ideal;
use super::reduce::{reduce, Divisor};
use super::GroebnerError;

/// Reduced Gröbner basis of a homogeneous ideal.
///
/// Elements are monic, inter-reduced, and sorted ascending by leading
/// monomial, so two bases of the same ideal compare equal.
///
/// A basis built by [`buchberger_truncated`] carries a degree bound and is
/// only valid (normal forms, standard monomials) up to that degree.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ideal: Ideal,
    elements: Vec<Polynomial>,
    divisors: Vec<Divisor>,
    degree_bound: Option<u32>,
}

impl PartialEq for GroebnerBasis {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements && self.degree_bound == other.degree_bound
    }
}

impl GroebnerBasis {
    pub fn ring(&self) -> &RingRef {
        self.ideal.ring()
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    /// `None` for a complete basis.
    pub fn degree_bound(&self) -> Option<u32> {
        self.degree_bound
    }

    /// True when results in degree `degree` are exact.
    pub fn valid_in_degree(&self, degree: u32) -> bool {
        self.degree_bound.is_none_or(|b| degree <= b)
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn leading_monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.divisors.iter().map(|d| &d.lm)
    }

    /// True when the ideal is the whole ring.
    pub fn is_unit(&self) -> bool {
        self.elements.iter().any(|g| g.is_constant())
    }

    /// Remainder of `p` on division by the basis.
    pub fn normal_form(&self, p: &Polynomial) -> Result<Polynomial, GroebnerError> {
        if !PolyRing::same(p.ring(), self.ring()) {
            return Err(GroebnerError::RingMismatch);
        }
        Ok(self.reduce(p))
    }

    /// Same as [`normal_form`](Self::normal_form) for callers that already
    /// know the ring matches.
    pub fn reduce(&self, p: &Polynomial) -> Polynomial {
        let basis: Vec<&Polynomial> = self.elements.iter().collect();
        let divisors: Vec<&Divisor> = self.divisors.iter().collect();
        reduce(p, &basis, &divisors, true)
    }

    pub fn contains(&self, p: &Polynomial) -> Result<bool, GroebnerError> {
        Ok(self.normal_form(p)?.is_zero())
    }

    pub fn is_standard(&self, m: &Monomial) -> bool {
        !self.divisors.iter().any(|d| d.lm.divides(m))
    }

    /// Monomials of exact weighted degree `degree` outside the leading-term ideal,
    /// descending in the term order.
    pub fn standard_monomials(&self, degree: u32) -> Vec<Monomial> {
        self.ring()
            .monomials_of_degree(degree)
            .into_iter()
            .filter(|m| self.is_standard(m))
            .collect()
    }

    /// Parses one polynomial per non-empty line and recomputes the reduced
    /// basis. Errors unless the text already was that reduced basis.
    pub fn parse(text: &str, ring: &RingRef) -> Result<GroebnerBasis, GroebnerError> {
        let elems = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(|l| parse_poly(l, ring))
            .collect::<Result<Vec<_>, _>>()?;
        let gb = buchberger(&Ideal::new(ring, elems.clone())?);
        if gb.elements != elems {
            return Err(GroebnerError::NotReduced);
        }
        Ok(gb)
    }
}

impl fmt::Display for GroebnerBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for g in &self.elements {
            writeln!(f, "{g}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

struct State<'r> {
    ring: &'r RingRef,
    degree_bound: Option<u32>,
    polys: Vec<Polynomial>,
    divisors: Vec<Divisor>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
}

impl State<'_> {
    fn active_refs(&self) -> (Vec<&Polynomial>, Vec<&Divisor>) {
        let mut b = Vec::new();
        let mut d = Vec::new();
        for k in 0..self.polys.len() {
            if self.active[k] {
                b.push(&self.polys[k]);
                d.push(&self.divisors[k]);
            }
        }
        (b, d)
    }

    /// Gebauer–Möller update: inserts `h` and prunes pairs with the product
    /// and chain criteria.
    fn insert(&mut self, h: Polynomial) {
        let ring = self.ring;
        let hlm = h.leading_monomial().expect("nonzero").clone();
        let new_idx = self.polys.len();

        let candidates: Vec<Pair> = (0..self.polys.len())
            .filter(|&k| self.active[k])
            .map(|k| Pair {
                i: k,
                j: new_idx,
                lcm: ring.lcm(&self.divisors[k].lm, &hlm),
            })
            .collect();

        // Chain criterion among the new pairs: drop (g, h) when another new pair's
        // lcm properly divides it, keeping coprime pairs for the product test.
        let mut kept: Vec<Pair> = Vec::new();
        for (a, p) in candidates.iter().enumerate() {
            let coprime = self.divisors[p.i].lm.is_coprime(&hlm);
            if coprime {
                kept.push(p.clone());
                continue;
            }
            let dominated = candidates.iter().enumerate().any(|(b, q)| {
                if a == b || !q.lcm.divides(&p.lcm) {
                    return false;
                }
                // Equal lcms: keep the first occurrence only, preferring coprime ones.
                if q.lcm == p.lcm {
                    let q_coprime = self.divisors[q.i].lm.is_coprime(&hlm);
                    q_coprime || b < a
                } else {
                    true
                }
            });
            if !dominated {
                kept.push(p.clone());
            }
        }
        // Product criterion; pairs above the degree bound are never needed.
        let bound = self.degree_bound;
        let mut fresh: Vec<Pair> = kept
            .into_iter()
            .filter(|p| !self.divisors[p.i].lm.is_coprime(&hlm))
            .filter(|p| bound.is_none_or(|b| p.lcm.degree() <= b))
            .collect();

        // Old pairs made redundant by h.
        self.pairs.retain(|p| {
            if !hlm.divides(&p.lcm) {
                return true;
            }
            let li = ring.lcm(&self.divisors[p.i].lm, &hlm);
            let lj = ring.lcm(&self.divisors[p.j].lm, &hlm);
            li == p.lcm || lj == p.lcm
        });
        self.pairs.append(&mut fresh);

        for k in 0..self.polys.len() {
            if self.active[k] && hlm.divides(&self.divisors[k].lm) {
                self.active[k] = false;
            }
        }
        self.divisors.push(Divisor::new(&hlm));
        self.polys.push(h);
        self.active.push(true);
    }

    fn pop_pair(&mut self) -> Option<Pair> {
        let ring = self.ring;
        let best = (0..self.pairs.len()).min_by(|&a, &b| {
            let (p, q) = (&self.pairs[a], &self.pairs[b]);
            ring.cmp(&p.lcm, &q.lcm).then((p.i, p.j).cmp(&(q.i, q.j)))
        })?;
        Some(self.pairs.swap_remove(best))
    }

    fn s_polynomial(&self, p: &Pair) -> Polynomial {
        let (f, g) = (&self.polys[p.i], &self.polys[p.j]);
        let uf = p.lcm.div(&self.divisors[p.i].lm).expect("lcm");
        let ug = p.lcm.div(&self.divisors[p.j].lm).expect("lcm");
        let one = num_traits::One::one();
        f.mul_term(&one, &uf) - g.mul_term(&one, &ug)
    }
}

/// Reduced Gröbner basis by Buchberger's algorithm with the normal selection
/// strategy (smallest lcm first) and the Gebauer–Möller criteria.
pub fn buchberger(ideal: &Ideal) -> GroebnerBasis {
    run(ideal, None)
}

/// The part of the reduced Gröbner basis in degrees `<= max_degree`.
///
/// For a homogeneous ideal, S-pairs of degree above the bound never
/// contribute below it, so normal forms and standard monomials of degree
/// `<= max_degree` agree with those of the full basis.
pub fn buchberger_truncated(ideal: &Ideal, max_degree: u32) -> GroebnerBasis {
    run(ideal, Some(max_degree))
}

fn run(ideal: &Ideal, degree_bound: Option<u32>) -> GroebnerBasis {
    let ring = ideal.ring();
    let mut state = State {
        ring,
        degree_bound,
        polys: Vec::new(),
        divisors: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
    };

    let mut inputs: Vec<Polynomial> = ideal
        .generators()
        .iter()
        .filter(|g| degree_bound.is_none_or(|b| g.weighted_degree().is_some_and(|d| d <= b)))
        .map(Polynomial::monic)
        .collect();
    inputs.sort_by(|a, b| {
        ring.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap())
            .then_with(|| a.to_string().cmp(&b.to_string()))
    });
    for f in inputs {
        let (basis, divs) = state.active_refs();
        let h = reduce(&f, &basis, &divs, true);
        if !h.is_zero() {
            state.insert(h.monic());
        }
    }

    while let Some(pair) = state.pop_pair() {
        let s = state.s_polynomial(&pair);
        let (basis, divs) = state.active_refs();
        let h = reduce(&s, &basis, &divs, true);
        if !h.is_zero() {
            state.insert(h.monic());
        }
    }

    let mut minimal: Vec<Polynomial> = (0..state.polys.len())
        .filter(|&k| state.active[k])
        .map(|k| state.polys[k].clone())
        .collect();
    minimal.sort_by(|a, b| ring.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));

    let divisors: Vec<Divisor> = minimal
        .iter()
        .map(|g| Divisor::new(g.leading_monomial().unwrap()))
        .collect();
    let mut elements = Vec::with_capacity(minimal.len());
    for (k, g) in minimal.iter().enumerate() {
        let others: Vec<&Polynomial> = minimal.iter().enumerate().filter(|(x, _)| *x != k).map(|(_, p)| p).collect();
        let odivs: Vec<&Divisor> = divisors.iter().enumerate().filter(|(x, _)| *x != k).map(|(_, d)| d).collect();
        let lead = Polynomial::from_terms(ring, std::iter::once((g.terms()[0].coeff.clone(), g.terms()[0].monomial.clone())));
        let tail = g - &lead;
        let reduced = &lead + &reduce(&tail, &others, &odivs, true);
        elements.push(reduced.monic());
    }
    debug_assert!(elements
        .windows(2)
        .all(|w| ring.cmp(w[0].leading_monomial().unwrap(), w[1].leading_monomial().unwrap()) == Ordering::Less));

    GroebnerBasis {
        ideal: ideal.clone(),
        elements,
        divisors,
        degree_bound,
    }
}
