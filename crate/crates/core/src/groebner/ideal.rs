use std::fmt;

use crate::polyarith::{PolyRing, Polynomial, RingRef};

use super::GroebnerError;

/// A homogeneous ideal given by generators.
#[derive(Clone, Debug)]
pub struct Ideal {
    ring: RingRef,
    generators: Vec<Polynomial>,
}

impl Ideal {
    /// Zero generators are dropped; inhomogeneous ones are rejected.
    pub fn new(ring: &RingRef, generators: Vec<Polynomial>) -> Result<Self, GroebnerError> {
        let mut gens = Vec::with_capacity(generators.len());
        for g in generators {
            if !PolyRing::same(g.ring(), ring) {
                return Err(GroebnerError::RingMismatch);
            }
            if g.is_zero() {
                continue;
            }
            if !g.is_homogeneous() {
                return Err(GroebnerError::NotHomogeneous(g.to_string()));
            }
            gens.push(g);
        }
        Ok(Ideal {
            ring: ring.clone(),
            generators: gens,
        })
    }

    pub fn zero(ring: &RingRef) -> Self {
        Ideal {
            ring: ring.clone(),
            generators: Vec::new(),
        }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// `self + (extra)`.
    pub fn extended(&self, extra: impl IntoIterator<Item = Polynomial>) -> Result<Ideal, GroebnerError> {
        let mut gens = self.generators.clone();
        gens.extend(extra);
        Ideal::new(&self.ring, gens)
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

/// A graded quotient ring `ring / relations` with a provenance label.
#[derive(Clone, Debug)]
pub struct QuotientPresentation {
    relations: Ideal,
    label: String,
}

impl QuotientPresentation {
    pub fn new(relations: Ideal, label: impl Into<String>) -> Self {
        QuotientPresentation {
            relations,
            label: label.into(),
        }
    }

    pub fn ring(&self) -> &RingRef {
        self.relations.ring()
    }

    pub fn relations(&self) -> &Ideal {
        &self.relations
    }

    pub fn label(&self) -> &str {
        &self.label
    }
}

impl fmt::Display for QuotientPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# {}", self.label)?;
        writeln!(f, "ring: {}", self.ring())?;
        writeln!(f, "relations:")?;
        for g in self.relations.generators() {
            writeln!(f, "  {g}")?;
        }
        Ok(())
    }
}
