use std::collections::HashMap;

use super::poly::Polynomial;
use super::ring::{PolyRing, RingRef};
use super::{PolyError, PolyMatrix};

/// Graded substitution homomorphism `source -> target`.
#[derive(Clone, Debug)]
pub struct RingMap {
    source: RingRef,
    target: RingRef,
    images: Vec<Polynomial>,
}

impl RingMap {
    /// Validates that each image lives in `target` and is homogeneous of the
    /// source variable's weight (zero is accepted).
    pub fn new(source: &RingRef, target: &RingRef, images: Vec<Polynomial>) -> Result<Self, PolyError> {
        if images.len() != source.nvars() {
            return Err(PolyError::Shape(format!(
                "ring map needs {} images, got {}",
                source.nvars(),
                images.len()
            )));
        }
        for (v, img) in images.iter().enumerate() {
            if !PolyRing::same(img.ring(), target) {
                return Err(PolyError::RingMismatch);
            }
            if !img.is_zero() && img.homogeneous_degree() != Some(source.weight(v)) {
                return Err(PolyError::NotGraded(format!(
                    "image of `{}` is `{}`, expected homogeneous of degree {}",
                    source.var_name(v),
                    img,
                    source.weight(v)
                )));
            }
        }
        Ok(RingMap {
            source: source.clone(),
            target: target.clone(),
            images,
        })
    }

    pub fn source(&self) -> &RingRef {
        &self.source
    }

    pub fn target(&self) -> &RingRef {
        &self.target
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    pub fn apply(&self, p: &Polynomial) -> Result<Polynomial, PolyError> {
        self.apply_reduced(p, |x| x)
    }

    /// Applies the map, passing intermediate products through `reduce`.
    ///
    /// `reduce` must be a ring homomorphism onto representatives (a normal
    /// form modulo an ideal); the result is then the reduced image.
    pub fn apply_reduced(
        &self,
        p: &Polynomial,
        reduce: impl Fn(Polynomial) -> Polynomial,
    ) -> Result<Polynomial, PolyError> {
        if !PolyRing::same(p.ring(), &self.source) {
            return Err(PolyError::RingMismatch);
        }
        let mut powers: HashMap<(usize, u16), Polynomial> = HashMap::new();
        let mut acc = Polynomial::zero(&self.target);
        for t in p.terms() {
            let mut img = Polynomial::constant(&self.target, t.coeff.clone());
            for (v, &e) in t.monomial.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let pw = powers
                    .entry((v, e))
                    .or_insert_with(|| reduce(self.images[v].pow(u32::from(e))))
                    .clone();
                img = reduce(&img * &pw);
            }
            acc = &acc + &img;
        }
        Ok(reduce(acc))
    }

    pub fn apply_matrix(&self, m: &PolyMatrix) -> Result<PolyMatrix, PolyError> {
        if !PolyRing::same(m.ring(), &self.source) {
            return Err(PolyError::RingMismatch);
        }
        let mut out = PolyMatrix::zeros(&self.target, m.rows(), m.cols());
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                out.set(i, j, self.apply(m.get(i, j))?);
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyarith::parse_poly;

    #[test]
    fn sigma1_goes_to_sum_of_ls() {
        let src = PolyRing::weighted(&[("sigma1", 1)]).unwrap();
        let tgt = PolyRing::weighted(&[("l1", 1), ("l2", 1), ("l3", 1)]).unwrap();
        let m = RingMap::new(&src, &tgt, vec![parse_poly("l1+l2+l3", &tgt).unwrap()]).unwrap();
        assert_eq!(
            m.apply(&parse_poly("sigma1", &src).unwrap()).unwrap(),
            parse_poly("l1+l2+l3", &tgt).unwrap()
        );
        assert_eq!(
            m.apply(&Polynomial::one(&src)).unwrap(),
            Polynomial::one(&tgt)
        );
    }

    #[test]
    fn degree_two_k_image() {
        let src = PolyRing::weighted(&[("b", 1), ("t", 1), ("k", 2)]).unwrap();
        let tgt = PolyRing::weighted(&[("b", 1), ("q", 2), ("r1", 1), ("r2", 1)]).unwrap();
        let images = ["b", "r1 + r2 - 2*b", "4*q - (b - r1)*(b - r2)"]
            .iter()
            .map(|s| parse_poly(s, &tgt).unwrap())
            .collect();
        let m = RingMap::new(&src, &tgt, images).unwrap();
        assert_eq!(
            m.apply(&parse_poly("k", &src).unwrap()).unwrap(),
            parse_poly("4*q - b^2 + b*r1 + b*r2 - r1*r2", &tgt).unwrap()
        );
    }

    #[test]
    fn ungraded_images_rejected() {
        let src = PolyRing::weighted(&[("k", 2)]).unwrap();
        let tgt = PolyRing::weighted(&[("x", 1)]).unwrap();
        let err = RingMap::new(&src, &tgt, vec![parse_poly("x", &tgt).unwrap()]).unwrap_err();
        assert!(matches!(err, PolyError::NotGraded(_)));
        assert!(RingMap::new(&src, &tgt, vec![]).is_err());
    }
}
