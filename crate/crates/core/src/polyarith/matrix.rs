use std::fmt;

use super::poly::Polynomial;
use super::ring::{PolyRing, RingRef};
use super::PolyError;

/// Dense rectangular matrix of polynomials over one ring, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    ring: RingRef,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn zeros(ring: &RingRef, rows: usize, cols: usize) -> Self {
        PolyMatrix {
            ring: ring.clone(),
            rows,
            cols,
            entries: vec![Polynomial::zero(ring); rows * cols],
        }
    }

    pub fn identity(ring: &RingRef, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, Polynomial::one(ring));
        }
        m
    }

    pub fn from_rows(ring: &RingRef, rows: Vec<Vec<Polynomial>>) -> Result<Self, PolyError> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if nrows == 0 || ncols == 0 {
            return Err(PolyError::Shape("matrix must be non-empty".into()));
        }
        let mut entries = Vec::with_capacity(nrows * ncols);
        for row in rows {
            if row.len() != ncols {
                return Err(PolyError::Shape("ragged rows".into()));
            }
            for p in row {
                if !PolyRing::same(p.ring(), ring) {
                    return Err(PolyError::RingMismatch);
                }
                entries.push(p);
            }
        }
        Ok(PolyMatrix {
            ring: ring.clone(),
            rows: nrows,
            cols: ncols,
            entries,
        })
    }

    pub fn column_vector(ring: &RingRef, entries: Vec<Polynomial>) -> Result<Self, PolyError> {
        Self::from_rows(ring, entries.into_iter().map(|p| vec![p]).collect())
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Polynomial) {
        assert!(PolyRing::same(p.ring(), &self.ring), "entry from a different ring");
        self.entries[i * self.cols + j] = p;
    }

    pub fn entries(&self) -> &[Polynomial] {
        &self.entries
    }

    pub fn column(&self, j: usize) -> PolyMatrix {
        PolyMatrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: 1,
            entries: (0..self.rows).map(|i| self.get(i, j).clone()).collect(),
        }
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut out = Self::zeros(&self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn trace(&self) -> Result<Polynomial, PolyError> {
        if self.rows != self.cols {
            return Err(PolyError::Shape("trace of a non-square matrix".into()));
        }
        Ok((0..self.rows).fold(Polynomial::zero(&self.ring), |acc, i| &acc + self.get(i, i)))
    }

    /// Applies `f` to every entry. `f` must stay in `ring`.
    pub fn map_entries(&self, ring: &RingRef, mut f: impl FnMut(&Polynomial) -> Polynomial) -> PolyMatrix {
        PolyMatrix {
            ring: ring.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(&mut f).collect(),
        }
    }

    fn check_same(&self, other: &PolyMatrix) -> Result<(), PolyError> {
        if !PolyRing::same(&self.ring, &other.ring) {
            return Err(PolyError::RingMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &PolyMatrix) -> Result<PolyMatrix, PolyError> {
        self.check_same(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(PolyError::Shape(format!(
                "cannot add {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(PolyMatrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &PolyMatrix) -> Result<PolyMatrix, PolyError> {
        self.add(&other.map_entries(&other.ring, |p| -p))
    }

    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix, PolyError> {
        self.mul_reduced(other, |p| p)
    }

    /// Product with every output entry passed through `reduce` (e.g. a normal form).
    pub fn mul_reduced(
        &self,
        other: &PolyMatrix,
        reduce: impl Fn(Polynomial) -> Polynomial,
    ) -> Result<PolyMatrix, PolyError> {
        self.check_same(other)?;
        if self.cols != other.rows {
            return Err(PolyError::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(&self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Polynomial::zero(&self.ring);
                for k in 0..self.cols {
                    let (a, b) = (self.get(i, k), other.get(k, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                out.set(i, j, reduce(acc));
            }
        }
        Ok(out)
    }

    /// `self^n` by repeated squaring; `self^0` is the identity.
    pub fn pow(&self, n: u32) -> Result<PolyMatrix, PolyError> {
        if self.rows != self.cols {
            return Err(PolyError::Shape("power of a non-square matrix".into()));
        }
        let mut acc = Self::identity(&self.ring, self.rows);
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}
