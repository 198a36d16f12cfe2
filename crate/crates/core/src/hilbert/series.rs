use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

/// Integer polynomial in `t`, coefficient `i` at index `i`, no trailing zeros.
pub type TPoly = Vec<BigInt>;

fn trim(p: &mut TPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub fn tpoly_mul(a: &[BigInt], b: &[BigInt]) -> TPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

pub fn tpoly_add(a: &[BigInt], b: &[BigInt]) -> TPoly {
    let mut out: TPoly = (0..a.len().max(b.len()))
        .map(|i| a.get(i).cloned().unwrap_or_default() + b.get(i).cloned().unwrap_or_default())
        .collect();
    trim(&mut out);
    out
}

/// `1 - t^w`.
pub fn one_minus(w: u32) -> TPoly {
    let mut p = vec![BigInt::zero(); w as usize + 1];
    p[0] = BigInt::one();
    p[w as usize] = -BigInt::one();
    p
}

/// `p / (1 - t^w)` when the division is exact.
fn div_one_minus(p: &[BigInt], w: u32) -> Option<TPoly> {
    let w = w as usize;
    if p.is_empty() {
        return Some(Vec::new());
    }
    if p.len() <= w {
        return None;
    }
    let qlen = p.len() - w;
    let mut q = vec![BigInt::zero(); qlen];
    for i in 0..qlen {
        q[i] = if i >= w { &p[i] + &q[i - w] } else { p[i].clone() };
    }
    // Remainder terms must vanish.
    for i in qlen..p.len() {
        let back = if i >= w && i - w < qlen { q[i - w].clone() } else { BigInt::zero() };
        if p[i] != -back {
            return None;
        }
    }
    Some(q)
}

/// Rational function `numerator(t) / prod (1 - t^w)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertSeries {
    #[serde(serialize_with = "ser_tpoly")]
    numerator: TPoly,
    denominator_weights: Vec<u32>,
}

fn ser_tpoly<S: serde::Serializer>(p: &TPoly, s: S) -> Result<S::Ok, S::Error> {
    let strs: Vec<String> = p.iter().map(|c| c.to_string()).collect();
    strs.serialize(s)
}

impl HilbertSeries {
    /// Builds the canonical form: factors `1 - t^w` shared by numerator and
    /// denominator are cancelled, trying larger `w` first.
    pub fn new(numerator: TPoly, mut weights: Vec<u32>) -> Self {
        assert!(weights.iter().all(|&w| w > 0), "denominator weights must be positive");
        let mut num = numerator;
        trim(&mut num);
        if num.is_empty() {
            return HilbertSeries {
                numerator: num,
                denominator_weights: Vec::new(),
            };
        }
        weights.sort_unstable();
        let mut distinct = weights.clone();
        distinct.dedup();
        for &w in distinct.iter().rev() {
            while let Some(pos) = weights.iter().position(|&x| x == w) {
                match div_one_minus(&num, w) {
                    Some(q) => {
                        num = q;
                        weights.remove(pos);
                    }
                    None => break,
                }
            }
        }
        HilbertSeries {
            numerator: num,
            denominator_weights: weights,
        }
    }

    /// Uncancelled form, as written.
    pub fn raw(numerator: TPoly, mut weights: Vec<u32>) -> Self {
        let mut num = numerator;
        trim(&mut num);
        weights.sort_unstable();
        HilbertSeries {
            numerator: num,
            denominator_weights: weights,
        }
    }

    pub fn from_i64(numerator: &[i64], weights: &[u32]) -> Self {
        Self::new(numerator.iter().map(|&c| BigInt::from(c)).collect(), weights.to_vec())
    }

    /// Product of the given factors `1 - t^d` over the given denominator.
    pub fn complete_intersection(relation_degrees: &[u32], weights: &[u32]) -> Self {
        let num = relation_degrees
            .iter()
            .fold(vec![BigInt::one()], |acc, &d| tpoly_mul(&acc, &one_minus(d)));
        Self::new(num, weights.to_vec())
    }

    pub fn numerator(&self) -> &[BigInt] {
        &self.numerator
    }

    pub fn denominator_weights(&self) -> &[u32] {
        &self.denominator_weights
    }

    pub fn denominator(&self) -> TPoly {
        self.denominator_weights
            .iter()
            .fold(vec![BigInt::one()], |acc, &w| tpoly_mul(&acc, &one_minus(w)))
    }

    /// Power-series coefficients in degrees `0..=n`.
    pub fn coefficients(&self, n: usize) -> Vec<BigInt> {
        let mut out: Vec<BigInt> = (0..=n).map(|i| self.numerator.get(i).cloned().unwrap_or_default()).collect();
        // Multiply by 1/(1 - t^w) = 1 + t^w + t^{2w} + ... one factor at a time.
        for &w in &self.denominator_weights {
            let w = w as usize;
            for i in w..=n {
                let prev = out[i - w].clone();
                out[i] += prev;
            }
        }
        out
    }

    pub fn coefficients_i64(&self, n: usize) -> Vec<i64> {
        self.coefficients(n)
            .into_iter()
            .map(|c| c.to_i64().expect("coefficient fits in i64"))
            .collect()
    }

    /// Sum of all coefficients, when the series is a polynomial.
    pub fn total_dimension(&self) -> Option<BigInt> {
        if self.denominator_weights.is_empty() {
            Some(self.numerator.iter().sum())
        } else {
            None
        }
    }

    /// Equality as rational functions.
    pub fn series_equal(&self, other: &HilbertSeries) -> bool {
        tpoly_mul(&self.numerator, &other.denominator()) == tpoly_mul(&other.numerator, &self.denominator())
    }

    /// Numerator in the polynomial text grammar, ascending powers of `t`.
    pub fn numerator_text(&self) -> String {
        format_tpoly(&self.numerator)
    }
}

/// `1 + t + 2*t^2`, ascending; `0` for the zero polynomial.
pub fn format_tpoly(p: &[BigInt]) -> String {
    let mut s = String::new();
    for (i, c) in p.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let abs = c.abs();
        if s.is_empty() {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        let mono = match i {
            0 => String::new(),
            1 => "t".to_string(),
            _ => format!("t^{i}"),
        };
        if mono.is_empty() {
            s.push_str(&abs.to_string());
        } else if abs.is_one() {
            s.push_str(&mono);
        } else {
            s.push_str(&format!("{abs}*{mono}"));
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

impl fmt::Display for HilbertSeries {
    /// `num(t) / prod_{w in [..]} (1-t^w)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ws: Vec<String> = self.denominator_weights.iter().map(u32::to_string).collect();
        write!(f, "({}) / prod_{{w in [{}]}} (1-t^w)", self.numerator_text(), ws.join(", "))
    }
}
