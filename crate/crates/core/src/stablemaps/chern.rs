//! Chern classes of the bundles `E_m` from the matrix of the lifted vector
//! field, by characteristic-polynomial coefficients.

use crate::groebner::{buchberger, GroebnerBasis, Ideal};
use crate::polyarith::{rat, PolyError, PolyMatrix, Polynomial, Rational, RingRef};

use super::presentations::{generator_map, generator_ring, poly, t_ring, t_ring_vars};
use super::{DegreeCase, Report, StableMapsError, TargetDim, ETA_D3};

fn r(n: i64) -> Rational {
    rat(n, 1)
}

/// Sum of `coefficient * polynomial` pairs.
fn lin(ring: &RingRef, parts: &[(Rational, &Polynomial)]) -> Polynomial {
    parts
        .iter()
        .fold(Polynomial::zero(ring), |acc, (c, p)| &acc + &p.scale(c))
}

struct D3Symbols {
    ring: RingRef,
    eta: Vec<Vec<Polynomial>>,
}

impl D3Symbols {
    fn new() -> Self {
        let ring = t_ring_vars(DegreeCase::Three);
        let eta = ETA_D3
            .iter()
            .map(|row| row.iter().map(|s| poly(&ring, s)).collect())
            .collect();
        D3Symbols { ring, eta }
    }

    fn others(i: usize) -> impl Iterator<Item = usize> {
        (0..3).filter(move |&j| j != i)
    }

    /// `eta_i^(2) = -prod_{j != i} eta_ij`
    fn eta2(&self, i: usize) -> Polynomial {
        let p = Self::others(i).fold(Polynomial::one(&self.ring), |acc, j| &acc * &self.eta[i][j]);
        -p
    }

    /// `theta_i^(mu) = sum_{j != i} eta_ij^(mu-1) eta_ji`
    fn theta(&self, i: usize, mu: u32) -> Polynomial {
        Self::others(i).fold(Polynomial::zero(&self.ring), |acc, j| {
            &acc + &(&self.eta[i][j].pow(mu - 1) * &self.eta[j][i])
        })
    }
}

fn add_to(m: &mut PolyMatrix, i: usize, j: usize, p: &Polynomial) {
    let v = m.get(i, j) + p;
    m.set(i, j, v);
}

/// Matrix `M_m` of the lifted vector field on `E_m`, of size `d*m + 1`.
///
/// The basis is `(1, f_1, .., f_d, f_1^2, .., f_d^m)` (for d=1:
/// `(1, s, .., s^m)`) and column `j` holds the coordinates of the image of
/// the `j`-th basis vector.
pub fn chern_matrix(d: DegreeCase, m: u32) -> Result<PolyMatrix, StableMapsError> {
    if m == 0 {
        return Err(StableMapsError::OutOfRange("m must be at least 1".into()));
    }
    let ring = t_ring_vars(d);
    let dd = d.value() as usize;
    let size = dd * m as usize + 1;
    let idx = |i: usize, mu: u32| if mu == 0 { 0 } else { 1 + dd * (mu as usize - 1) + i };
    let mi = i64::from(m);
    let c = |k: i64| Polynomial::from_int(&ring, k);
    let mut out = PolyMatrix::zeros(&ring, size, size);
    match d {
        DegreeCase::One => {
            let (b2, r2) = (poly(&ring, "b2"), poly(&ring, "r2"));
            for mu in 0..=m {
                let k = i64::from(mu);
                if mu > 0 {
                    add_to(&mut out, idx(0, mu - 1), idx(0, mu), &b2.scale(&r(k)));
                    add_to(&mut out, idx(0, mu), idx(0, mu), &r2.scale(&r(k)));
                }
                if mu < m {
                    add_to(&mut out, idx(0, mu + 1), idx(0, mu), &c(mi - k));
                }
            }
        }
        DegreeCase::Two => {
            let (b, q) = (poly(&ring, "b"), poly(&ring, "q"));
            let rr = [poly(&ring, "r1"), poly(&ring, "r2")];
            add_to(&mut out, 0, 0, &b.scale(&r(mi)));
            for i in 0..2 {
                add_to(&mut out, idx(i, 1), 0, &c(mi));
                for mu in 1..=m {
                    let k = i64::from(mu);
                    let col = idx(i, mu);
                    add_to(&mut out, idx(i, mu - 1), col, &q.scale(&r(k + mi)));
                    add_to(&mut out, col, col, &lin(&ring, &[(r(mi - 2 * k), &b), (r(k), &rr[i])]));
                    if mu < m {
                        add_to(&mut out, idx(i, mu + 1), col, &c(mi - k));
                    }
                }
            }
        }
        DegreeCase::Three => {
            let s = D3Symbols::new();
            let b = poly(&ring, "b");
            let l = [poly(&ring, "l1"), poly(&ring, "l2"), poly(&ring, "l3")];
            add_to(&mut out, 0, 0, &b.scale(&r(mi)));
            for i in 0..3 {
                add_to(&mut out, idx(i, 1), 0, &c(mi));
                let (eta2, th1, th2) = (s.eta2(i), s.theta(i, 1), s.theta(i, 2));
                // mu = 1
                let col = idx(i, 1);
                add_to(&mut out, 0, col, &lin(&ring, &[(r(3 * mi + 2), &th2), (r(1), &eta2)]));
                for j in D3Symbols::others(i) {
                    add_to(&mut out, idx(j, 1), col, &s.eta[i][j].scale(&r(mi)));
                }
                add_to(&mut out, col, col, &lin(&ring, &[(r(1), &l[i]), (r(mi), &b), (r(mi + 2), &th1)]));
                if m >= 2 {
                    add_to(&mut out, idx(i, 2), col, &c(mi - 1));
                }
                for mu in 2..=m {
                    let k = i64::from(mu);
                    let col = idx(i, mu);
                    add_to(&mut out, 0, col, &s.theta(i, mu + 1).scale(&r(3 * mi)));
                    for j in D3Symbols::others(i) {
                        add_to(&mut out, idx(j, 1), col, &s.eta[i][j].pow(mu).scale(&r(mi)));
                    }
                    for alpha in 1..mu.saturating_sub(1) {
                        add_to(&mut out, idx(i, alpha), col, &s.theta(i, mu - alpha + 1).scale(&r(4 * mi)));
                    }
                    add_to(
                        &mut out,
                        idx(i, mu - 1),
                        col,
                        &lin(&ring, &[(r(2 * k + 4 * mi), &th2), (r(k), &eta2)]),
                    );
                    add_to(&mut out, col, col, &lin(&ring, &[(r(k), &l[i]), (r(mi), &b), (r(mi + 2 * k), &th1)]));
                    if mu < m {
                        add_to(&mut out, idx(i, mu + 1), col, &c(mi - k));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Leading coefficients `[1, a_1, .., a_upto]` of `det(t I - M)`, computed
/// division-free by Berkowitz's method with every product passed through
/// `reduce`.
///
/// Coefficient `k` only depends on the first `k + 1` entries of each
/// Toeplitz factor, so the computation is truncated at `upto`.
pub fn characteristic_coefficients(
    m: &PolyMatrix,
    upto: usize,
    reduce: impl Fn(Polynomial) -> Polynomial,
) -> Result<Vec<Polynomial>, PolyError> {
    let n = m.rows();
    if n != m.cols() {
        return Err(PolyError::Shape("characteristic polynomial of a non-square matrix".into()));
    }
    let ring = m.ring().clone();
    let upto = upto.min(n);
    if n == 0 {
        return Ok(vec![Polynomial::one(&ring)]);
    }
    let mut v = vec![Polynomial::one(&ring), reduce(-m.get(n - 1, n - 1))];
    v.truncate(upto + 1);
    for i in (0..n - 1).rev() {
        let k = n - i - 1;
        let len = (k + 2).min(upto + 1);
        // Toeplitz column: 1, -a, -R C, -R A1 C, -R A1^2 C, ...
        let mut t = vec![Polynomial::one(&ring), reduce(-m.get(i, i))];
        let mut w: Vec<Polynomial> = (i + 1..n).map(|r| m.get(r, i).clone()).collect();
        while t.len() < len {
            let mut rc = Polynomial::zero(&ring);
            for (c, wc) in (i + 1..n).zip(&w) {
                if !wc.is_zero() && !m.get(i, c).is_zero() {
                    rc = &rc + &(m.get(i, c) * wc);
                }
            }
            t.push(reduce(-rc));
            if t.len() < len {
                w = (i + 1..n)
                    .map(|r| {
                        let mut acc = Polynomial::zero(&ring);
                        for (c, wc) in (i + 1..n).zip(&w) {
                            if !wc.is_zero() && !m.get(r, c).is_zero() {
                                acc = &acc + &(m.get(r, c) * wc);
                            }
                        }
                        reduce(acc)
                    })
                    .collect();
            }
        }
        let mut next = Vec::with_capacity(len);
        for row in 0..len {
            let mut acc = Polynomial::zero(&ring);
            for (s, vs) in v.iter().enumerate().take(row + 1) {
                let tv = &t[row - s];
                if !tv.is_zero() && !vs.is_zero() {
                    acc = &acc + &(tv * vs);
                }
            }
            next.push(reduce(acc));
        }
        v = next;
    }
    Ok(v)
}

fn reduction_basis(d: DegreeCase, n: TargetDim) -> Result<GroebnerBasis, StableMapsError> {
    match (d, n) {
        (DegreeCase::One, TargetDim::Infinity) => Ok(buchberger(&Ideal::zero(&t_ring_vars(d)))),
        _ => Ok(buchberger(t_ring(d, n)?.relations())),
    }
}

/// `c_p(E_m)` in normal form modulo the chart-ring relations for `n`
/// (only the base relations for `n = inf`).
pub fn chern_class(d: DegreeCase, m: u32, p: u32, n: TargetDim) -> Result<Polynomial, StableMapsError> {
    let gb = reduction_basis(d, n)?;
    chern_class_mod(d, m, p, &gb)
}

pub(crate) fn chern_class_mod(d: DegreeCase, m: u32, p: u32, gb: &GroebnerBasis) -> Result<Polynomial, StableMapsError> {
    let mat = chern_matrix(d, m)?;
    let size = mat.rows() as u32;
    if p == 0 || p > size {
        return Err(StableMapsError::OutOfRange(format!("p must be in 1..={size}, got {p}")));
    }
    let coeffs = characteristic_coefficients(&mat, p as usize, |x| gb.reduce(&x))?;
    let a = &coeffs[p as usize];
    Ok(if p.is_multiple_of(2) { a.clone() } else { -a })
}

/// `tr(M_m^2)` as a closed formula in the chart ring.
pub fn trace_square_closed_form(d: DegreeCase, m: u32) -> Result<Polynomial, StableMapsError> {
    if m == 0 {
        return Err(StableMapsError::OutOfRange("m must be at least 1".into()));
    }
    let ring = t_ring_vars(d);
    let m = i64::from(m);
    let p = |s: &str| poly(&ring, s);
    Ok(match d {
        DegreeCase::One => lin(
            &ring,
            &[(rat(m * (m + 1) * (2 * m + 1), 6), &p("r2^2")), (rat(m * (m + 1) * (m + 2), 3), &p("b2"))],
        ),
        DegreeCase::Two => lin(
            &ring,
            &[
                (rat(m * (2 * m * m + 3 * m + 4), 3), &p("b^2")),
                (rat(-m * (m + 1) * (m + 2), 3), &p("b*(r1 + r2)")),
                (rat(m * (m + 1) * (2 * m + 1), 6), &p("8*q + r1^2 + r2^2")),
            ],
        ),
        DegreeCase::Three => lin(
            &ring,
            &[
                (r(m * m * (3 * m + 1)), &p("b^2")),
                (r(m * m * (m + 1)), &p("b*(l1 + l2 + l3)")),
                (rat(m * (m + 1) * (2 * m + 1), 6), &p("l1^2 + l2^2 + l3^2")),
                (r(m * (3 * m + 1) * (3 * m + 2)), &p("q1^2 + q2^2 + q3^2 - 2*(q1*q2 + q1*q3 + q2*q3)")),
                (rat(m * (m + 1) * (7 * m + 2), 3), &p("l1*(q3 - q2) + l2*(q1 - q3) + l3*(q2 - q1)")),
            ],
        ),
    })
}

/// Closed formula for `c_p(E_m)`, `p` in `{1, 2}`, in the chart ring.
pub fn chern_class_closed_form(d: DegreeCase, m: u32, p: u32) -> Result<Polynomial, StableMapsError> {
    if m == 0 {
        return Err(StableMapsError::OutOfRange("m must be at least 1".into()));
    }
    let ring = t_ring_vars(d);
    let mi = i64::from(m);
    let pp = |s: &str| poly(&ring, s);
    let c1 = match d {
        DegreeCase::One => pp("r2").scale(&rat(mi * (mi + 1), 2)),
        DegreeCase::Two => lin(&ring, &[(r(-mi), &pp("b")), (rat(mi * (mi + 1), 2), &pp("r1 + r2"))]),
        DegreeCase::Three => lin(
            &ring,
            &[(r(mi * (3 * mi + 1)), &pp("b")), (rat(mi * (mi + 1), 2), &pp("l1 + l2 + l3"))],
        ),
    };
    match p {
        1 => Ok(c1),
        2 => Ok((&(&c1 * &c1) - &trace_square_closed_form(d, m)?).scale(&rat(1, 2))),
        _ => Err(StableMapsError::OutOfRange(format!("closed formulas exist for p = 1, 2, got {p}"))),
    }
}

/// `c_p(E_m)`, `p` in `{1, 2}`, written in the cohomology generators.
pub fn generator_chern_formula(d: DegreeCase, m: u32, p: u32) -> Result<Polynomial, StableMapsError> {
    let ring = generator_ring(d)?;
    if m == 0 {
        return Err(StableMapsError::OutOfRange("m must be at least 1".into()));
    }
    let m = i64::from(m);
    let g = |s: &str| poly(&ring, s);
    match (d, p) {
        (DegreeCase::Two, 1) => Ok(lin(&ring, &[(r(m * m), &g("b")), (rat(m * (m + 1), 2), &g("t"))])),
        (DegreeCase::Two, 2) => {
            let c1 = generator_chern_formula(d, m as u32, 1)?;
            let tr = lin(
                &ring,
                &[
                    (rat(m * (2 * m * m + 3 * m + 4), 3), &g("b^2")),
                    (rat(-m * (m + 1) * (m + 2), 3), &g("b*(t + 2*b)")),
                    (rat(m * (m + 1) * (2 * m + 1), 6), &g("t^2 + 2*b*t + 2*b^2 + 2*k")),
                ],
            );
            Ok((&(&c1 * &c1) - &tr).scale(&rat(1, 2)))
        }
        (DegreeCase::Three, 1) => Ok(lin(&ring, &[(r(m * (3 * m + 1)), &g("b")), (rat(m * (m + 1), 2), &g("sigma1"))])),
        (DegreeCase::Three, 2) => Ok(lin(
            &ring,
            &[
                (rat(3 * m * m * m * (3 * m + 1), 2), &g("b^2")),
                (rat(3 * m * m * m * (m + 1), 2), &g("b*sigma1")),
                (rat(m * (m + 1) * (3 * m * m + m - 1), 24), &g("sigma1^2")),
                (rat(-m * (3 * m + 1) * (3 * m + 2), 2), &g("rho")),
                (rat(-m * (m + 1) * (2 * m + 1), 24), &g("sigma2")),
                (rat(-m * (m + 1) * (7 * m + 2), 6), &g("tau")),
            ],
        )),
        _ => Err(StableMapsError::OutOfRange(format!("generator formulas exist for p = 1, 2, got {p}"))),
    }
}

/// Compares the generator-ring formula for `c_p(E_m)`, pushed into the chart
/// ring, with the class computed from the matrix, modulo the base relations.
pub fn chern_in_generators(d: DegreeCase, m: u32, p: u32) -> Result<Report, StableMapsError> {
    let gb = reduction_basis(d, TargetDim::Infinity)?;
    let formula = generator_chern_formula(d, m, p)?;
    let image = gb.reduce(&generator_map(d)?.apply(&formula)?);
    let class = chern_class_mod(d, m, p, &gb)?;
    let mut report = Report::new("chern-in-generators", d, Some(TargetDim::Infinity))
        .param("m", m)
        .param("p", p)
        .param("formula", formula.to_string());
    let diff = &image - &class;
    if !diff.is_zero() {
        report.fail(format!("formula image minus class: {diff}"));
    }
    Ok(report)
}
