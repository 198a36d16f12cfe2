use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use smallvec::SmallVec;

use super::PolyError;

/// Term order used to sort polynomial terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    /// Total weighted degree first, ties broken reverse-lexicographically
    /// on the declared variable order.
    WeightedDegRevLex,
    /// Pure lexicographic on the declared variable order.
    Lex,
}

/// A named generator together with its grading weight.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VariableSpec {
    name: String,
    weight: u32,
}

impl VariableSpec {
    pub fn new(name: impl Into<String>, weight: u32) -> Self {
        VariableSpec {
            name: name.into(),
            weight,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }
}

/// A weighted polynomial ring over the rationals.
///
/// The variable order is fixed at construction; exponent vectors are
/// indexed by it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    vars: Vec<VariableSpec>,
    order: MonomialOrder,
}

pub type RingRef = Arc<PolyRing>;

impl PolyRing {
    pub fn new(vars: Vec<VariableSpec>, order: MonomialOrder) -> Result<RingRef, PolyError> {
        for (i, v) in vars.iter().enumerate() {
            if v.weight == 0 {
                return Err(PolyError::InvalidVariable(format!(
                    "variable `{}` has weight 0",
                    v.name
                )));
            }
            if !is_identifier(&v.name) {
                return Err(PolyError::InvalidVariable(format!(
                    "`{}` is not an identifier",
                    v.name
                )));
            }
            if vars[..i].iter().any(|w| w.name == v.name) {
                return Err(PolyError::InvalidVariable(format!(
                    "duplicate variable `{}`",
                    v.name
                )));
            }
        }
        Ok(Arc::new(PolyRing { vars, order }))
    }

    /// Shorthand for a weighted-degrevlex ring from `(name, weight)` pairs.
    pub fn weighted(vars: &[(&str, u32)]) -> Result<RingRef, PolyError> {
        Self::new(
            vars.iter().map(|&(n, w)| VariableSpec::new(n, w)).collect(),
            MonomialOrder::WeightedDegRevLex,
        )
    }

    pub fn variables(&self) -> &[VariableSpec] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn weight(&self, var: usize) -> u32 {
        self.vars[var].weight
    }

    pub fn weights(&self) -> Vec<u32> {
        self.vars.iter().map(|v| v.weight).collect()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v.name == name)
    }

    pub fn var_name(&self, var: usize) -> &str {
        &self.vars[var].name
    }

    /// Builds a monomial from an exponent vector, caching its weighted degree.
    pub fn monomial(&self, exps: &[u16]) -> Monomial {
        assert_eq!(exps.len(), self.nvars(), "exponent vector length");
        Monomial {
            degree: self.degree_of(exps),
            exps: SmallVec::from_slice(exps),
        }
    }

    pub fn one_monomial(&self) -> Monomial {
        Monomial {
            degree: 0,
            exps: SmallVec::from_elem(0, self.nvars()),
        }
    }

    pub fn var_monomial(&self, var: usize, exp: u16) -> Monomial {
        let mut exps: SmallVec<[u16; 8]> = SmallVec::from_elem(0, self.nvars());
        exps[var] = exp;
        Monomial {
            degree: self.weight(var) * u32::from(exp),
            exps,
        }
    }

    fn degree_of(&self, exps: &[u16]) -> u32 {
        exps.iter()
            .zip(&self.vars)
            .map(|(&e, v)| u32::from(e) * v.weight)
            .sum()
    }

    /// Compares two monomials in this ring's term order.
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self.order {
            MonomialOrder::WeightedDegRevLex => a.degree.cmp(&b.degree).then_with(|| {
                for (x, y) in a.exps.iter().zip(&b.exps).rev() {
                    if x != y {
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }),
            MonomialOrder::Lex => a.exps.cmp(&b.exps),
        }
    }

    pub fn lcm(&self, a: &Monomial, b: &Monomial) -> Monomial {
        let exps: SmallVec<[u16; 8]> = a.exps.iter().zip(&b.exps).map(|(x, y)| *x.max(y)).collect();
        Monomial {
            degree: self.degree_of(&exps),
            exps,
        }
    }

    /// All monomials of exact weighted degree `degree`, in descending term order.
    pub fn monomials_of_degree(&self, degree: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut exps = vec![0u16; self.nvars()];
        self.enumerate(0, degree, &mut exps, &mut out);
        out.sort_by(|a, b| self.cmp(b, a));
        out
    }

    fn enumerate(&self, var: usize, remaining: u32, exps: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if var == self.nvars() {
            if remaining == 0 {
                out.push(self.monomial(exps));
            }
            return;
        }
        let w = self.weight(var);
        let mut e = 0u32;
        while e * w <= remaining {
            exps[var] = e as u16;
            self.enumerate(var + 1, remaining - e * w, exps, out);
            e += 1;
        }
        exps[var] = 0;
    }

    pub(crate) fn same(a: &RingRef, b: &RingRef) -> bool {
        Arc::ptr_eq(a, b) || **a == **b
    }
}

impl fmt::Display for PolyRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QQ[")?;
        for (i, v) in self.vars.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}:{}", v.name, v.weight)?;
        }
        write!(f, "]")
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// A power product, stored as an exponent vector with its cached weighted degree.
///
/// Monomials only make sense relative to the ring that created them.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    degree: u32,
    exps: SmallVec<[u16; 8]>,
}

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    pub fn exponent(&self, var: usize) -> u16 {
        self.exps[var]
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0 && self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            degree: self.degree + other.degree,
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `self / other`, or `None` when `other` does not divide `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        Some(Monomial {
            degree: self.degree - other.degree,
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i)
    }
}
