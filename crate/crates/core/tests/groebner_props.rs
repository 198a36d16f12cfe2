use proptest::prelude::*;
use stablemaps::groebner::{
    buchberger, buchberger_truncated, coordinate_rows, graded_image_rank, ideal_contains, ideal_equal, linalg,
    normal_form, standard_monomials, GroebnerError, Ideal,
};
use stablemaps::polyarith::{rat, PolyRing, Polynomial, RingMap, RingRef};
use stablemaps::stablemaps::{base_ideal, generator_map, t_ring, t_ring_vars, DegreeCase, TargetDim};

fn ring() -> RingRef {
    PolyRing::weighted(&[("x", 1), ("y", 1), ("z", 1)]).unwrap()
}

fn homogeneous_poly(degree: u32) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((-3i64..=3, any::<prop::sample::Index>()), 1..=4).prop_map(move |raw| {
        let r = ring();
        let basis = r.monomials_of_degree(degree);
        Polynomial::from_terms(&r, raw.iter().map(|(c, i)| (rat(*c, 1), i.get(&basis).clone())))
    })
}

fn generators() -> impl Strategy<Value = Vec<Polynomial>> {
    prop::collection::vec((1u32..=3).prop_flat_map(homogeneous_poly), 1..=3)
        .prop_map(|gs| gs.into_iter().filter(|g| !g.is_zero()).collect())
}

fn ideal(gens: Vec<Polynomial>) -> Ideal {
    if gens.is_empty() {
        Ideal::zero(&ring())
    } else {
        Ideal::new(&ring(), gens).unwrap()
    }
}

/// Dimension of the degree-`d` piece of the quotient by spanning the ideal's
/// degree-`d` slice with monomial multiples of the generators.
fn brute_force_dim(gens: &[Polynomial], d: u32) -> usize {
    let r = ring();
    let basis = r.monomials_of_degree(d);
    let mut span = Vec::new();
    for g in gens {
        let gd = g.weighted_degree().unwrap();
        if gd > d {
            continue;
        }
        for m in r.monomials_of_degree(d - gd) {
            span.push(g.mul_term(&rat(1, 1), &m));
        }
    }
    basis.len() - linalg::rank(&coordinate_rows(&span, &basis))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn reduced_basis_ignores_generator_order(gens in generators(), seed in any::<u64>()) {
        let first = buchberger(&ideal(gens.clone()));
        prop_assert_eq!(&buchberger(&ideal(gens.clone())), &first);
        let mut permuted = gens;
        let mut state = seed;
        for i in (1..permuted.len()).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            permuted.swap(i, (state >> 33) as usize % (i + 1));
        }
        // Rescaling generators must not matter either.
        let scaled: Vec<Polynomial> = permuted.iter().zip(1..).map(|(g, k)| g.scale(&rat(k, 3))).collect();
        prop_assert_eq!(&buchberger(&ideal(scaled)), &first);
    }

    #[test]
    fn standard_monomials_match_linear_algebra(gens in generators()) {
        let gb = buchberger(&ideal(gens.clone()));
        for d in 0..=5 {
            prop_assert_eq!(standard_monomials(&gb, d).len(), brute_force_dim(&gens, d), "degree {}", d);
        }
    }

    #[test]
    fn normal_form_is_idempotent_and_graded(gens in generators(), p in (0u32..=4).prop_flat_map(homogeneous_poly)) {
        let gb = buchberger(&ideal(gens));
        let nf = normal_form(&p, &gb).unwrap();
        prop_assert_eq!(normal_form(&nf, &gb).unwrap(), nf.clone());
        if !nf.is_zero() {
            prop_assert!(nf.is_homogeneous());
            prop_assert_eq!(nf.weighted_degree(), p.weighted_degree());
        }
        // The remainder differs from p by an ideal element.
        prop_assert!(gb.contains(&(&p - &nf)).unwrap());
    }

    #[test]
    fn ideal_equality_is_an_equivalence(a in generators(), b in generators(), c in generators()) {
        let (i, j, k) = (ideal(a), ideal(b), ideal(c));
        prop_assert!(ideal_equal(&i, &i).unwrap());
        let ij = ideal_equal(&i, &j).unwrap();
        prop_assert_eq!(ij, ideal_equal(&j, &i).unwrap());
        if ij && ideal_equal(&j, &k).unwrap() {
            prop_assert!(ideal_equal(&i, &k).unwrap());
        }
        let both = ideal_contains(&i, &j).unwrap() && ideal_contains(&j, &i).unwrap();
        prop_assert_eq!(both, ij);
    }

    #[test]
    fn combinations_of_generators_give_the_same_ideal(
        (g0, g1) in (1u32..=3).prop_flat_map(|d| (homogeneous_poly(d), homogeneous_poly(d))),
        rest in generators(),
        k in -3i64..=3,
    ) {
        let shifted = &g1 + &g0.scale(&rat(k, 1));
        prop_assume!(!g0.is_zero() && !g1.is_zero() && !shifted.is_zero());
        let mut gens = vec![g0.clone(), g1];
        gens.extend(rest.iter().cloned());
        let mut other = vec![g0, shifted];
        other.extend(rest);
        prop_assert!(ideal_equal(&ideal(gens), &ideal(other)).unwrap());
    }

    #[test]
    fn truncated_basis_agrees_below_its_bound(gens in generators(), bound in 1u32..=4) {
        let full = buchberger(&ideal(gens.clone()));
        let part = buchberger_truncated(&ideal(gens), bound);
        prop_assert_eq!(part.degree_bound(), Some(bound));
        for d in 0..=bound {
            prop_assert_eq!(standard_monomials(&part, d), standard_monomials(&full, d));
        }
    }
}

#[test]
fn ideal_equality_examples() {
    let r = ring();
    let p = |s: &str| stablemaps::polyarith::parse_poly(s, &r).unwrap();
    assert!(ideal_equal(&ideal(vec![p("x"), p("y")]), &ideal(vec![p("y"), p("x")])).unwrap());
    assert!(!ideal_equal(&ideal(vec![p("x^2")]), &ideal(vec![p("x")])).unwrap());
}

#[test]
fn truncated_chart_ring_basis_matches_the_full_one() {
    let d = DegreeCase::Three;
    let rel = t_ring(d, TargetDim::Finite(2)).unwrap();
    let full = buchberger(rel.relations());
    let part = buchberger_truncated(rel.relations(), 4);
    for p in 0..=4 {
        assert_eq!(standard_monomials(&part, p), standard_monomials(&full, p), "degree {p}");
    }
    assert!(part.elements().len() < full.elements().len());
}

#[test]
fn image_rank_refuses_degrees_above_the_bound() {
    let d = DegreeCase::Three;
    let map = generator_map(d).unwrap();
    let source = buchberger(&Ideal::zero(map.source()));
    let target = buchberger_truncated(&base_ideal(d), 3);
    // No generator relation lives below degree 4, so the map is injective here.
    assert_eq!(graded_image_rank(&map, &source, &target, 3).unwrap(), 11);
    assert!(matches!(
        graded_image_rank(&map, &source, &target, 4),
        Err(GroebnerError::BeyondDegreeBound { degree: 4, bound: 3 })
    ));
}

#[test]
fn degree_two_invariant_map_rank_in_degree_two() {
    let t = t_ring_vars(DegreeCase::Two);
    let s = PolyRing::weighted(&[("b", 1), ("t", 1), ("k", 2)]).unwrap();
    let p = |r: &RingRef, x: &str| stablemaps::polyarith::parse_poly(x, r).unwrap();
    let map = RingMap::new(&s, &t, vec![p(&t, "b"), p(&t, "r1 + r2 - 2*b"), p(&t, "4*q - (b - r1)*(b - r2)")]).unwrap();
    let target = buchberger(&Ideal::new(&t, vec![p(&t, "q*(r1 + r2 - 4*b)")]).unwrap());
    let source = buchberger(&Ideal::zero(&s));
    let ranks: Vec<usize> = (0..=2).map(|d| graded_image_rank(&map, &source, &target, d).unwrap()).collect();
    assert_eq!(ranks, [1, 2, 4]);
}
