//! Rings, matrices, recursions and verifications for the stable-map spaces
//! `M_{0,0}(P^n, d)` with `d = 1, 2, 3` and `n` finite or infinite.
//!
//! Each degree has a chart ring (the "T-ring") with base relations and
//! moving relations `R_{n+1} = E^n R_1`, and for `d = 2, 3` a ring of
//! cohomology generators with moving relations `G_{n+1} = A^n G_1`. The
//! checks in [`checks`] compare the two sides degree by degree.

mod checks;
mod chern;
mod presentations;
mod report;

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::groebner::GroebnerError;
use crate::polyarith::PolyError;

pub use checks::{
    check_intertwiner, check_intertwiner_with, check_symmetry, graded_injectivity, ideal_is_stable,
    invariant_check_d2, pn_koszul_check, symmetric_preimage_d2, verify_conjecture_d3,
    verify_conjecture_d3_observed, verify_conjecture_d3_with, whitney_check_d1,
};
pub use chern::{
    chern_class, chern_class_closed_form, chern_in_generators, chern_matrix, characteristic_coefficients,
    generator_chern_formula, trace_square_closed_form,
};
pub use presentations::{
    base_ideal, conjecture_ring, conjecture_ring_with, first_column, fixed_generator_relations, generator_map,
    generator_ring, invariant_map_d2, invariant_ring_d2, matrix_a, matrix_e, matrix_h, moving_generator_relations,
    moving_relations, pn_koszul, reference_series, t_ring, t_ring_vars, vector_g1, SymmetryAction,
};
pub use report::{DegreeRow, Report, Value};

/// Degree `d` of the stable maps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DegreeCase {
    One,
    Two,
    Three,
}

impl DegreeCase {
    pub fn new(d: u32) -> Result<Self, StableMapsError> {
        match d {
            1 => Ok(DegreeCase::One),
            2 => Ok(DegreeCase::Two),
            3 => Ok(DegreeCase::Three),
            _ => Err(StableMapsError::OutOfRange(format!("d must be 1, 2 or 3, got {d}"))),
        }
    }

    pub fn value(self) -> u32 {
        match self {
            DegreeCase::One => 1,
            DegreeCase::Two => 2,
            DegreeCase::Three => 3,
        }
    }
}

impl fmt::Display for DegreeCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

impl Serialize for DegreeCase {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u32(self.value())
    }
}

/// Dimension `n` of the target projective space; `Infinity` keeps only the
/// base relations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TargetDim {
    Finite(u32),
    Infinity,
}

impl TargetDim {
    pub fn finite(self) -> Option<u32> {
        match self {
            TargetDim::Finite(n) => Some(n),
            TargetDim::Infinity => None,
        }
    }
}

impl fmt::Display for TargetDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TargetDim::Finite(n) => write!(f, "{n}"),
            TargetDim::Infinity => f.write_str("inf"),
        }
    }
}

impl FromStr for TargetDim {
    type Err = StableMapsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "inf" | "infinity" => Ok(TargetDim::Infinity),
            _ => match s.parse::<u32>() {
                Ok(n) if n >= 1 => Ok(TargetDim::Finite(n)),
                _ => Err(StableMapsError::OutOfRange(format!(
                    "n must be a positive integer or `inf`, got `{s}`"
                ))),
            },
        }
    }
}

impl Serialize for TargetDim {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            TargetDim::Finite(n) => s.serialize_u32(*n),
            TargetDim::Infinity => s.serialize_str("inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StableMapsError {
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
}

impl From<PolyError> for StableMapsError {
    fn from(e: PolyError) -> Self {
        StableMapsError::Groebner(GroebnerError::Poly(e))
    }
}

impl StableMapsError {
    pub(crate) fn unsupported(msg: &str) -> Self {
        StableMapsError::Unsupported(msg.to_string())
    }
}

/// Coordinate names of the `eta_ij` symbols on the d=3 chart:
/// `eta_12 = q1`, `eta_13 = -q1`, `eta_21 = -q2`, `eta_23 = q2`,
/// `eta_31 = q3`, `eta_32 = -q3`. Indexed `[i][j]`, zero-based; the
/// diagonal is unused.
pub const ETA_D3: [[&str; 3]; 3] = [["0", "q1", "-q1"], ["-q2", "0", "q2"], ["q3", "-q3", "0"]];
