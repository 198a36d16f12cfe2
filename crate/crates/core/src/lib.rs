//! Exact computer algebra for graded-ring presentations of the cohomology of
//! the stable-map spaces `M_{0,0}(P^n, d)`, `d = 1, 2, 3`.
//!
//! The crate is layered bottom-up:
//!
//! * [`polyarith`]: weighted sparse polynomials over the rationals,
//!   polynomial matrices and graded ring maps;
//! * [`groebner`]: reduced Gröbner bases of homogeneous ideals, normal
//!   forms, ideal membership and graded image ranks;
//! * [`hilbert`]: Hilbert series of graded quotients;
//! * [`stablemaps`]: the concrete rings, matrices, recursions and
//!   verifications for each degree `d`.

pub mod groebner;
pub mod hilbert;
pub mod polyarith;
pub mod stablemaps;
