//! The concrete rings, matrices and presentations for `d = 1, 2, 3`.

use num_bigint::BigInt;

use crate::groebner::{Ideal, QuotientPresentation};
use crate::hilbert::{one_minus, tpoly_add, tpoly_mul, HilbertSeries, TPoly};
use crate::polyarith::{parse_poly, PolyMatrix, PolyRing, Polynomial, RingMap, RingRef};

use super::{DegreeCase, StableMapsError, TargetDim};

pub(crate) fn poly(ring: &RingRef, text: &str) -> Polynomial {
    parse_poly(text, ring).unwrap_or_else(|e| panic!("built-in polynomial `{text}`: {e}"))
}

fn matrix(ring: &RingRef, rows: &[&[&str]]) -> PolyMatrix {
    let rows = rows.iter().map(|r| r.iter().map(|s| poly(ring, s)).collect()).collect();
    PolyMatrix::from_rows(ring, rows).expect("rectangular built-in matrix")
}

fn column(ring: &RingRef, entries: &[&str]) -> PolyMatrix {
    PolyMatrix::column_vector(ring, entries.iter().map(|s| poly(ring, s)).collect()).expect("column")
}

/// Ring of coordinates on the affine chart: `QQ[b2:2, r2:1]` (d=1),
/// `QQ[b:1, q:2, r1:1, r2:1]` (d=2), `QQ[b, q1, q2, q3, l1, l2, l3]` all of
/// weight 1 (d=3).
pub fn t_ring_vars(d: DegreeCase) -> RingRef {
    let vars: &[(&str, u32)] = match d {
        DegreeCase::One => &[("b2", 2), ("r2", 1)],
        DegreeCase::Two => &[("b", 1), ("q", 2), ("r1", 1), ("r2", 1)],
        DegreeCase::Three => &[("b", 1), ("q1", 1), ("q2", 1), ("q3", 1), ("l1", 1), ("l2", 1), ("l3", 1)],
    };
    PolyRing::weighted(vars).expect("valid variables")
}

/// Ring of the cohomology generators: `QQ[b, t, k:2]` (d=2) and
/// `QQ[b, sigma1, rho:2, sigma2:2, tau:2, sigma3:3]` (d=3).
pub fn generator_ring(d: DegreeCase) -> Result<RingRef, StableMapsError> {
    let vars: &[(&str, u32)] = match d {
        DegreeCase::One => return Err(StableMapsError::unsupported("no generator ring for d=1")),
        DegreeCase::Two => &[("b", 1), ("t", 1), ("k", 2)],
        DegreeCase::Three => &[("b", 1), ("sigma1", 1), ("rho", 2), ("sigma2", 2), ("tau", 2), ("sigma3", 3)],
    };
    Ok(PolyRing::weighted(vars).expect("valid variables"))
}

/// `QQ[b:1, t:1, k:2, q:2]`, the polynomial invariants of the d=2 chart ring.
pub fn invariant_ring_d2() -> RingRef {
    PolyRing::weighted(&[("b", 1), ("t", 1), ("k", 2), ("q", 2)]).expect("valid variables")
}

/// Relations valid for every `n`: `(q1*l1, q2*l2, q3*l3)` for d=3,
/// `q*(r1 + r2 - 4*b)` for d=2, none for d=1.
pub fn base_ideal(d: DegreeCase) -> Ideal {
    let r = t_ring_vars(d);
    let gens: &[&str] = match d {
        DegreeCase::One => &[],
        DegreeCase::Two => &["q*(r1 + r2 - 4*b)"],
        DegreeCase::Three => &["q1*l1", "q2*l2", "q3*l3"],
    };
    Ideal::new(&r, gens.iter().map(|g| poly(&r, g)).collect()).expect("homogeneous")
}

/// The matrix of the vector field on the chart coordinates.
pub fn matrix_e(d: DegreeCase) -> PolyMatrix {
    let r = t_ring_vars(d);
    match d {
        DegreeCase::One => matrix(&r, &[&["0", "b2"], &["1", "r2"]]),
        DegreeCase::Two => matrix(&r, &[&["b", "2*q", "2*q"], &["1", "r1 - b", "0"], &["1", "0", "r2 - b"]]),
        DegreeCase::Three => matrix(
            &r,
            &[
                &["b", "q1*(q1 - 5*(q2 + q3))", "q2*(q2 - 5*(q1 + q3))", "q3*(q3 - 5*(q1 + q2))"],
                &["1", "l1 + b + 3*(q3 - q2)", "-q2", "q3"],
                &["1", "q1", "l2 + b + 3*(q1 - q3)", "-q3"],
                &["1", "-q1", "q2", "l3 + b + 3*(q2 - q1)"],
            ],
        ),
    }
}

/// Seed column `R_1`.
pub fn first_column(d: DegreeCase) -> PolyMatrix {
    let r = t_ring_vars(d);
    match d {
        DegreeCase::One => column(&r, &["0", "1"]),
        DegreeCase::Two => column(&r, &["b", "1", "1"]),
        DegreeCase::Three => column(&r, &["b", "1", "1", "1"]),
    }
}

/// `R_{n+1} = E^n R_1`.
pub fn moving_relations(d: DegreeCase, n: u32) -> PolyMatrix {
    let e = matrix_e(d);
    let mut v = first_column(d);
    for _ in 0..n {
        v = e.mul(&v).expect("conformable");
    }
    v
}

fn column_entries(m: &PolyMatrix) -> Vec<Polynomial> {
    m.entries().to_vec()
}

/// The chart ring: base relations plus `R_{n+1}` for finite `n`.
pub fn t_ring(d: DegreeCase, n: TargetDim) -> Result<QuotientPresentation, StableMapsError> {
    let base = base_ideal(d);
    match n {
        TargetDim::Infinity if d == DegreeCase::One => {
            Err(StableMapsError::unsupported("d=1 has no presentation for n=inf"))
        }
        TargetDim::Infinity => Ok(QuotientPresentation::new(base, format!("chart ring, d={d}, n=inf"))),
        TargetDim::Finite(n) => {
            let ideal = base.extended(column_entries(&moving_relations(d, n)))?;
            Ok(QuotientPresentation::new(ideal, format!("chart ring, d={d}, n={n}")))
        }
    }
}

/// Recursion matrix `A` over the generator ring.
pub fn matrix_a(d: DegreeCase) -> Result<PolyMatrix, StableMapsError> {
    let r = generator_ring(d)?;
    Ok(match d {
        DegreeCase::Two => matrix(&r, &[&["b", "0", "0"], &["1", "0", "k"], &["0", "1", "t"]]),
        _ => matrix(
            &r,
            &[
                &["b + sigma1", "0", "9*rho + 1/4*(sigma2 - sigma1^2) + 3*tau", "0", "sigma3"],
                &["0", "b + 1/2*sigma1", "4*rho + 1/2*tau", "rho", "-1/2*sigma1*rho"],
                &["1", "0", "b", "0", "0"],
                &["0", "1", "0", "b", "0"],
                &["0", "0", "1", "1", "b"],
            ],
        ),
    })
}

/// Seed column `G_1` over the generator ring.
pub fn vector_g1(d: DegreeCase) -> Result<PolyMatrix, StableMapsError> {
    let r = generator_ring(d)?;
    Ok(match d {
        DegreeCase::Two => column(&r, &["b*(2*b - t)", "2*b - t", "2"]),
        _ => column(
            &r,
            &["b*sigma1 + 18*rho + 1/2*(sigma2 + sigma1^2) + 6*tau", "9*rho + tau", "2*b + sigma1", "b", "3"],
        ),
    })
}

/// `G_{n+1} = A^n G_1`; `n = 0` gives `G_1`.
pub fn moving_generator_relations(d: DegreeCase, n: u32) -> Result<PolyMatrix, StableMapsError> {
    let a = matrix_a(d)?;
    let mut v = vector_g1(d)?;
    for _ in 0..n {
        v = a.mul(&v)?;
    }
    Ok(v)
}

/// Relations among the d=3 generators that hold for every `n`:
/// `tau^2 - rho*sigma2`, `tau*sigma3`, `rho*sigma3`.
pub fn fixed_generator_relations(d: DegreeCase) -> Result<Ideal, StableMapsError> {
    let r = generator_ring(d)?;
    let gens: &[&str] = match d {
        DegreeCase::Three => &["tau^2 - rho*sigma2", "tau*sigma3", "rho*sigma3"],
        _ => &[],
    };
    Ok(Ideal::new(&r, gens.iter().map(|g| poly(&r, g)).collect())?)
}

/// The generator ring modulo the fixed relations and, for finite `n`, the
/// entries of `G_{n+1}`.
pub fn conjecture_ring(d: DegreeCase, n: TargetDim) -> Result<QuotientPresentation, StableMapsError> {
    let fixed = fixed_generator_relations(d)?;
    match n {
        TargetDim::Infinity => Ok(QuotientPresentation::new(fixed, format!("generator ring, d={d}, n=inf"))),
        TargetDim::Finite(n) => conjecture_ring_with(d, n, n),
    }
}

/// Like [`conjecture_ring`], with `G_{power+1}` in place of `G_{n+1}`.
/// Used to build deliberately wrong presentations.
pub fn conjecture_ring_with(d: DegreeCase, n: u32, power: u32) -> Result<QuotientPresentation, StableMapsError> {
    let fixed = fixed_generator_relations(d)?;
    let ideal = fixed.extended(column_entries(&moving_generator_relations(d, power)?))?;
    let label = if n == power {
        format!("generator ring, d={d}, n={n}")
    } else {
        format!("generator ring, d={d}, n={n}, using A^{power} G_1")
    };
    Ok(QuotientPresentation::new(ideal, label))
}

/// Intertwiner `H` over the chart ring, with `A H = H E` and `H R_1 = G_1`
/// modulo the base relations.
pub fn matrix_h(d: DegreeCase) -> Result<PolyMatrix, StableMapsError> {
    let r = t_ring_vars(d);
    match d {
        DegreeCase::One => Err(StableMapsError::unsupported("no intertwiner for d=1")),
        DegreeCase::Two => Ok(matrix(
            &r,
            &[&["4*b - r1 - r2", "0", "0"], &["2", "b - r2", "b - r1"], &["0", "1", "1"]],
        )),
        DegreeCase::Three => {
            let rho = "(q1^2 + q2^2 + q3^2 - 2*(q1*q2 + q1*q3 + q2*q3))";
            let theta = ["(q3 - q2)", "(q1 - q3)", "(q2 - q1)"];
            let lambda = ["(l3 - l2)", "(l1 - l3)", "(l2 - l1)"];
            let mut rows = vec![vec![poly(&r, "l1 + l2 + l3")], vec![poly(&r, "0")], vec![poly(&r, "2")]];
            rows.push(vec![poly(&r, "1")]);
            rows.push(vec![poly(&r, "0")]);
            for i in 0..3 {
                let (l, q, th, la) = (format!("l{}", i + 1), format!("q{}", i + 1), theta[i], lambda[i]);
                rows[0].push(poly(&r, &format!("6*{rho} + {l}^2 - {q}*{la} + 5*{l}*{th}")));
                rows[1].push(poly(&r, &format!("3*{rho} + {l}*{th}")));
                rows[2].push(poly(&r, &format!("{l} + 2*{th}")));
                rows[3].push(poly(&r, th));
                rows[4].push(poly(&r, "1"));
            }
            Ok(PolyMatrix::from_rows(&r, rows)?)
        }
    }
}

/// Images of the generators in the chart ring.
pub fn generator_map(d: DegreeCase) -> Result<RingMap, StableMapsError> {
    let src = generator_ring(d)?;
    let tgt = t_ring_vars(d);
    let images: &[&str] = match d {
        DegreeCase::Two => &["b", "r1 + r2 - 2*b", "4*q - (b - r1)*(b - r2)"],
        _ => &[
            "b",
            "l1 + l2 + l3",
            "q1^2 + q2^2 + q3^2 - 2*(q1*q2 + q1*q3 + q2*q3)",
            "l1^2 + l2^2 + l3^2 - 2*(l1*l2 + l1*l3 + l2*l3)",
            "l1*(q3 - q2) + l2*(q1 - q3) + l3*(q2 - q1)",
            "l1*l2*l3",
        ],
    };
    Ok(RingMap::new(&src, &tgt, images.iter().map(|s| poly(&tgt, s)).collect())?)
}

/// `QQ[b, t, k, q] -> QQ[b, q, r1, r2]`, onto the `S_2`-invariants.
pub fn invariant_map_d2() -> RingMap {
    let src = invariant_ring_d2();
    let tgt = t_ring_vars(DegreeCase::Two);
    let images = ["b", "r1 + r2 - 2*b", "4*q - (b - r1)*(b - r2)", "q"];
    RingMap::new(&src, &tgt, images.iter().map(|s| poly(&tgt, s)).collect()).expect("graded")
}

/// The symmetric group acting on the chart ring by signed variable
/// permutations, given by a generating set.
#[derive(Clone, Debug)]
pub struct SymmetryAction {
    d: DegreeCase,
    generators: Vec<(String, RingMap)>,
}

impl SymmetryAction {
    pub fn new(d: DegreeCase) -> Result<Self, StableMapsError> {
        let r = t_ring_vars(d);
        let mk = |images: Vec<String>| {
            RingMap::new(&r, &r, images.iter().map(|s| poly(&r, s)).collect()).expect("graded permutation")
        };
        let generators = match d {
            DegreeCase::One => return Err(StableMapsError::unsupported("trivial symmetry for d=1")),
            DegreeCase::Two => vec![("(12)".to_string(), mk(["b", "q", "r2", "r1"].map(String::from).to_vec()))],
            DegreeCase::Three => {
                // sigma(b) = b, sigma(q_i) = sign(sigma) q_sigma(i), sigma(l_i) = l_sigma(i)
                let perm = |p: [usize; 3], sign: i32| {
                    let mut imgs = vec!["b".to_string()];
                    let s = if sign < 0 { "-" } else { "" };
                    imgs.extend(p.iter().map(|&j| format!("{s}q{}", j + 1)));
                    imgs.extend(p.iter().map(|&j| format!("l{}", j + 1)));
                    mk(imgs)
                };
                vec![
                    ("(12)".to_string(), perm([1, 0, 2], -1)),
                    ("(123)".to_string(), perm([1, 2, 0], 1)),
                ]
            }
        };
        Ok(SymmetryAction { d, generators })
    }

    pub fn degree_case(&self) -> DegreeCase {
        self.d
    }

    pub fn generators(&self) -> &[(String, RingMap)] {
        &self.generators
    }
}

/// Known Hilbert series of the cohomology rings.
pub fn reference_series(d: DegreeCase, n: TargetDim) -> Result<HilbertSeries, StableMapsError> {
    let ipoly = |c: &[i64]| -> TPoly { c.iter().map(|&x| BigInt::from(x)).collect() };
    let shift = |p: TPoly, k: u32| -> TPoly {
        let mut v = vec![BigInt::from(0); k as usize];
        v.extend(p);
        v
    };
    let base = ipoly(&[1, 1, 2, 2, 2]);
    match (d, n) {
        (DegreeCase::Three, TargetDim::Infinity) => Ok(HilbertSeries::new(base, vec![1, 2, 2, 3])),
        (DegreeCase::Three, TargetDim::Finite(n)) => {
            let bracket = tpoly_add(
                &tpoly_add(&shift(ipoly(&[2, 2, 2, 1, 1]), 2 * n + 3), &shift(ipoly(&[-1, -3, -4, -4, -3, -1]), n + 1)),
                &base,
            );
            let num = tpoly_mul(&tpoly_mul(&one_minus(n), &one_minus(n + 1)), &bracket);
            Ok(HilbertSeries::new(num, vec![1, 2, 2, 3]))
        }
        (DegreeCase::Two, TargetDim::Infinity) => Ok(HilbertSeries::new(ipoly(&[1]), vec![1, 1, 2])),
        (DegreeCase::Two, TargetDim::Finite(n)) => {
            Ok(HilbertSeries::complete_intersection(&[n, n + 1, n + 2], &[1, 1, 2]))
        }
        (DegreeCase::One, TargetDim::Finite(n)) => Ok(HilbertSeries::complete_intersection(&[n, n + 1], &[1, 2])),
        (DegreeCase::One, TargetDim::Infinity) => Err(StableMapsError::unsupported("no reference series for d=1, n=inf")),
    }
}

/// `QQ[s1, ..., sn] / (-s1*sn, s2 - s1^2, s3 - s1*s2, ..., sn - s1*s(n-1))`
/// with `s_k` of weight `k`, which eliminates down to `QQ[s1]/(s1^(n+1))`.
pub fn pn_koszul(n: u32) -> Result<QuotientPresentation, StableMapsError> {
    if n == 0 {
        return Err(StableMapsError::OutOfRange("n must be at least 1".into()));
    }
    let names: Vec<String> = (1..=n).map(|k| format!("s{k}")).collect();
    let vars: Vec<(&str, u32)> = names.iter().zip(1..).map(|(s, k)| (s.as_str(), k)).collect();
    let r = PolyRing::weighted(&vars)?;
    let mut gens = vec![poly(&r, &format!("-s1*s{n}"))];
    for k in 2..=n {
        gens.push(poly(&r, &format!("s{k} - s1*s{}", k - 1)));
    }
    Ok(QuotientPresentation::new(Ideal::new(&r, gens)?, format!("projective space koszul ring, n={n}")))
}
