use proptest::prelude::*;
use stablemaps::groebner::{buchberger, buchberger_truncated, standard_monomials};
use stablemaps::polyarith::{parse_poly, rat, PolyMatrix, Polynomial, RingRef};
use stablemaps::stablemaps::{
    base_ideal, check_intertwiner, chern_class, chern_matrix, conjecture_ring, generator_ring,
    moving_generator_relations, moving_relations, t_ring, t_ring_vars, DegreeCase, SymmetryAction, TargetDim,
    ETA_D3,
};

fn sorted_degrees(m: &PolyMatrix) -> Vec<u32> {
    let mut out: Vec<u32> = m
        .entries()
        .iter()
        .map(|e| e.homogeneous_degree().expect("homogeneous entry"))
        .collect();
    out.sort();
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn moving_relations_are_homogeneous_of_known_degrees(n in 1u32..=8) {
        let mut want = vec![n, n + 1];
        prop_assert_eq!(sorted_degrees(&moving_relations(DegreeCase::One, n)), want.clone());
        want = vec![n, n, n + 1];
        prop_assert_eq!(sorted_degrees(&moving_relations(DegreeCase::Two, n)), want.clone());
        want = vec![n, n, n, n + 1];
        prop_assert_eq!(sorted_degrees(&moving_relations(DegreeCase::Three, n)), want);
        let g2 = moving_generator_relations(DegreeCase::Two, n).unwrap();
        prop_assert_eq!(sorted_degrees(&g2), vec![n, n + 1, n + 2]);
        let g3 = moving_generator_relations(DegreeCase::Three, n).unwrap();
        prop_assert_eq!(sorted_degrees(&g3), vec![n, n + 1, n + 1, n + 2, n + 2]);
    }
}

/// Standard monomial counts of `a` and `b` agree in every degree up to `top`.
fn same_dims_below(a: &stablemaps::groebner::Ideal, b: &stablemaps::groebner::Ideal, top: u32) -> bool {
    let ga = buchberger_truncated(a, top);
    let gb = buchberger_truncated(b, top);
    (0..=top).all(|d| standard_monomials(&ga, d).len() == standard_monomials(&gb, d).len())
}

#[test]
fn finite_rings_agree_with_the_limit_below_n() {
    for d in [DegreeCase::Two, DegreeCase::Three] {
        let inf = t_ring(d, TargetDim::Infinity).unwrap();
        let ginf = conjecture_ring(d, TargetDim::Infinity).unwrap();
        for n in 2..=6 {
            let fin = t_ring(d, TargetDim::Finite(n)).unwrap();
            assert!(same_dims_below(fin.relations(), inf.relations(), n - 1), "t-ring d={d} n={n}");
            let gfin = conjecture_ring(d, TargetDim::Finite(n)).unwrap();
            assert!(same_dims_below(gfin.relations(), ginf.relations(), n - 1), "generators d={d} n={n}");
            // Degree n sees the new relations.
            assert!(!same_dims_below(fin.relations(), inf.relations(), n), "t-ring d={d} n={n}");
        }
    }
}

#[test]
fn intertwiner_holds_for_n_up_to_eight() {
    for d in [DegreeCase::Two, DegreeCase::Three] {
        for n in 1..=8 {
            let r = check_intertwiner(d, n).unwrap();
            assert!(r.ok, "d={d} n={n}: {r}");
        }
    }
}

#[test]
fn chern_classes_are_symmetric_modulo_the_base_ideal() {
    for d in [DegreeCase::Two, DegreeCase::Three] {
        let base = buchberger(&base_ideal(d));
        let action = SymmetryAction::new(d).unwrap();
        for m in 1..=2 {
            for p in 1..=d.value() * m + 1 {
                let c = chern_class(d, m, p, TargetDim::Infinity).unwrap();
                for (name, g) in action.generators() {
                    let moved = g.apply(&c).unwrap();
                    assert!(base.contains(&(&moved - &c)).unwrap(), "d={d} m={m} p={p} {name}");
                }
            }
        }
    }
}

/// Linear combination of `1` (index 0) and powers `f_i^mu` (index
/// `1 + 3(mu-1) + i`), with powers up to `top`.
struct Combo {
    ring: RingRef,
    top: u32,
    coeffs: Vec<Polynomial>,
}

impl Combo {
    fn new(ring: &RingRef, top: u32) -> Self {
        Combo { ring: ring.clone(), top, coeffs: vec![Polynomial::zero(ring); 1 + 3 * top as usize] }
    }

    fn slot(&self, i: usize, mu: u32) -> usize {
        assert!(mu <= self.top);
        if mu == 0 {
            0
        } else {
            1 + 3 * (mu as usize - 1) + i
        }
    }

    fn add(&mut self, i: usize, mu: u32, c: &Polynomial) {
        let k = self.slot(i, mu);
        self.coeffs[k] = &self.coeffs[k] + c;
    }

    /// Adds `c * f_i^alpha * f_j` for `j != i`, expanding with
    /// `f_i^a f_j = eta_ji f_i^a + eta_ij f_i^(a-1) f_j + 3 eta_ij eta_ji f_i^(a-1)`.
    fn add_product(&mut self, i: usize, alpha: u32, j: usize, c: &Polynomial) {
        if alpha == 0 {
            self.add(j, 1, c);
            return;
        }
        let (eij, eji) = (eta(&self.ring, i, j), eta(&self.ring, j, i));
        self.add(i, alpha, &(c * &eji));
        self.add_product(i, alpha - 1, j, &(c * &eij));
        let k = &(&eij * &eji) * c;
        self.add(i, alpha - 1, &k.scale(&rat(3, 1)));
    }
}

fn eta(r: &RingRef, i: usize, j: usize) -> Polynomial {
    parse_poly(ETA_D3[i][j], r).unwrap()
}

fn others(i: usize) -> impl Iterator<Item = usize> {
    (0..3).filter(move |&j| j != i)
}

/// The degree-3 Chern matrix assembled from the action of the vector field
/// on `1` and on the powers `f_i^mu`.
fn lemma_chern_matrix(m: u32) -> PolyMatrix {
    let r = t_ring_vars(DegreeCase::Three);
    let v = |s: &str| parse_poly(s, &r).unwrap();
    let c = |k: u32| Polynomial::from_int(&r, k as i64);
    let size = 1 + 3 * m as usize;
    let mut out = PolyMatrix::zeros(&r, size, size);
    let b = v("b");

    let mut one = Combo::new(&r, m + 1);
    one.add(0, 0, &(&c(m) * &b));
    for j in 0..3 {
        one.add(j, 1, &c(m));
    }
    for (row, coeff) in one.coeffs.iter().enumerate().take(size) {
        out.set(row, 0, coeff.clone());
    }

    for i in 0..3 {
        let theta = |mu: u32| -> Polynomial {
            others(i).fold(Polynomial::zero(&r), |acc, j| &acc + &(&eta(&r, i, j).pow(mu - 1) * &eta(&r, j, i)))
        };
        let eta2 = -others(i).fold(Polynomial::one(&r), |acc, j| &acc * &eta(&r, i, j));
        let l = v(&format!("l{}", i + 1));
        for mu in 1..=m {
            let mut img = Combo::new(&r, m + 1);
            img.add(i, mu, &(&(&c(m) * &b) + &(&c(mu) * &l)));
            // mu f_i^(mu-1) (2 theta2 + eta2 + 2 theta1 f_i - f_i^2)
            img.add(i, mu - 1, &(&c(mu) * &(&theta(2).scale(&rat(2, 1)) + &eta2)));
            img.add(i, mu, &(&c(2 * mu) * &theta(1)));
            img.add(i, mu + 1, &(-&c(mu)));
            img.add(i, mu + 1, &c(m));
            for j in others(i) {
                img.add_product(i, mu, j, &c(m));
            }
            let col = 1 + 3 * (mu as usize - 1) + i;
            assert!(img.coeffs[size..].iter().all(Polynomial::is_zero), "f^(m+1) survives");
            for (row, coeff) in img.coeffs.iter().enumerate().take(size) {
                out.set(row, col, coeff.clone());
            }
        }
    }
    out
}

#[test]
fn degree_three_chern_matrix_matches_the_vector_field_action() {
    for m in 1..=4 {
        assert_eq!(chern_matrix(DegreeCase::Three, m).unwrap(), lemma_chern_matrix(m), "m={m}");
    }
}

#[test]
fn generator_relations_are_homogeneous_in_the_generator_ring() {
    let g = generator_ring(DegreeCase::Three).unwrap();
    for n in 1..=4 {
        let rels = moving_generator_relations(DegreeCase::Three, n).unwrap();
        assert!(rels.entries().iter().all(|e| e.ring() == &g && e.is_homogeneous()));
    }
}
