//! Verifications comparing the chart rings with the generator presentations.

use num_traits::ToPrimitive;

use crate::groebner::{buchberger, buchberger_truncated, coordinate_rows, graded_image_rank, linalg, GroebnerBasis, Ideal};
use crate::hilbert::{hilbert_series, hilbert_series_of_basis, HilbertSeries};
use crate::polyarith::{rat, PolyMatrix, Polynomial, RingMap};

use super::presentations::{
    base_ideal, conjecture_ring, conjecture_ring_with, first_column, generator_map, generator_ring, invariant_map_d2,
    invariant_ring_d2, matrix_a, matrix_e, matrix_h, moving_generator_relations, moving_relations, pn_koszul, poly,
    reference_series, t_ring, t_ring_vars, vector_g1, SymmetryAction,
};
use super::{DegreeCase, DegreeRow, Report, StableMapsError, TargetDim};

fn coefficient(h: &HilbertSeries, p: u32) -> i64 {
    h.coefficients(p as usize)[p as usize]
        .to_i64()
        .expect("dimension fits in i64")
}

/// Entrywise differences that do not reduce to zero.
fn nonzero_entries(label: &str, a: &PolyMatrix, b: &PolyMatrix, gb: &GroebnerBasis) -> Vec<String> {
    let mut out = Vec::new();
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            let diff = gb.reduce(&(a.get(i, j) - b.get(i, j)));
            if !diff.is_zero() {
                out.push(format!("{label} entry ({i},{j}) differs by {diff}"));
            }
        }
    }
    out
}

/// Checks, modulo the base relations, that `A H = H E`, `H R_1 = G_1` and
/// `H R_{n+1} = G_{n+1}` (with `A`, `G` pushed into the chart ring).
pub fn check_intertwiner(d: DegreeCase, n: u32) -> Result<Report, StableMapsError> {
    check_intertwiner_with(d, n, &matrix_h(d)?)
}

/// [`check_intertwiner`] with a caller-supplied `H`.
pub fn check_intertwiner_with(d: DegreeCase, n: u32, h: &PolyMatrix) -> Result<Report, StableMapsError> {
    if n == 0 {
        return Err(StableMapsError::OutOfRange("n must be at least 1".into()));
    }
    let gb = buchberger(&base_ideal(d));
    let map = generator_map(d)?;
    let reduce = |p: Polynomial| gb.reduce(&p);
    let mut report = Report::new("intertwiner", d, Some(TargetDim::Finite(n)));

    let a = map.apply_matrix(&matrix_a(d)?)?;
    let e = matrix_e(d);
    let ah = a.mul_reduced(h, reduce)?;
    let he = h.mul_reduced(&e, reduce)?;
    let part1 = nonzero_entries("AH - HE", &ah, &he, &gb);
    report.set_part("AH=HE", part1.is_empty());

    let hr1 = h.mul_reduced(&first_column(d), reduce)?;
    let g1 = map.apply_matrix(&vector_g1(d)?)?;
    let part2 = nonzero_entries("HR_1 - G_1", &hr1, &g1, &gb);
    report.set_part("HR_1=G_1", part2.is_empty());

    let mut r = first_column(d);
    for _ in 0..n {
        r = e.mul_reduced(&r, reduce)?;
    }
    let hr = h.mul_reduced(&r, reduce)?;
    let g = moving_generator_relations(d, n)?;
    let g_img = PolyMatrix::column_vector(
        map.target(),
        g.entries()
            .iter()
            .map(|p| map.apply_reduced(p, reduce))
            .collect::<Result<Vec<_>, _>>()?,
    )?;
    let part3 = nonzero_entries("HR_{n+1} - G_{n+1}", &hr, &g_img, &gb);
    report.set_part("HR_{n+1}=G_{n+1}", part3.is_empty());

    for msg in part1.into_iter().chain(part2).chain(part3) {
        report.fail(msg);
    }
    Ok(report)
}

/// True when every generator of `ideal`, transformed by every generator of
/// the action, lies in `ideal`.
pub fn ideal_is_stable(ideal: &Ideal, action: &SymmetryAction) -> Result<bool, StableMapsError> {
    Ok(stability_failures(ideal, action)?.is_empty())
}

fn stability_failures(ideal: &Ideal, action: &SymmetryAction) -> Result<Vec<String>, StableMapsError> {
    let gb = buchberger(ideal);
    let mut out = Vec::new();
    for (name, g) in action.generators() {
        for f in ideal.generators() {
            let img = g.apply(f)?;
            if !gb.contains(&img)? {
                out.push(format!("{name} maps {f} outside the ideal"));
            }
        }
    }
    Ok(out)
}

/// The relations of the chart ring are stable under the symmetric group.
pub fn check_symmetry(d: DegreeCase, n: TargetDim) -> Result<Report, StableMapsError> {
    let action = SymmetryAction::new(d)?;
    let pres = t_ring(d, n)?;
    let mut report = Report::new("symmetry", d, Some(n));
    for msg in stability_failures(pres.relations(), &action)? {
        report.fail(msg);
    }
    Ok(report)
}

/// Degree by degree, the rank of the generator map on the generator
/// presentation against the dimension of that presentation. Also compares
/// those dimensions with the reference series when one is known.
pub fn graded_injectivity(d: DegreeCase, n: TargetDim, max_degree: u32) -> Result<Report, StableMapsError> {
    let source = conjecture_ring(d, n)?;
    let source_gb = buchberger(source.relations());
    let source_series = hilbert_series_of_basis(&source_gb);
    let target_gb = buchberger_truncated(t_ring(d, n)?.relations(), max_degree);
    let map = generator_map(d)?;
    let reference = reference_series(d, n).ok();
    let mut report = Report::new("injectivity", d, Some(n)).param("maxDegree", max_degree);
    for p in 0..=max_degree {
        let dim = coefficient(&source_series, p);
        if let Some(h) = &reference {
            report.push_row(DegreeRow::new(p, Some("source dim"), coefficient(h, p), dim));
        }
        let rank = graded_image_rank(&map, &source_gb, &target_gb, p)?;
        report.push_row(DegreeRow::new(p, Some("image rank"), dim, rank));
    }
    Ok(report)
}

/// Both computational conjectures for the d=3 presentation at finite `n`:
/// the Hilbert series of the generator presentation, and the dimensions of
/// the image of the generator ring in the chart ring for degrees `<= n+2`.
pub fn verify_conjecture_d3(n: u32) -> Result<Report, StableMapsError> {
    verify_conjecture_d3_with(n, n, n + 2)
}

/// [`verify_conjecture_d3`] using `G_{power+1}` in the presentation and
/// reporting image dimensions up to `max_degree`. Degrees above `n + 2` are
/// reported but not asserted.
pub fn verify_conjecture_d3_with(n: u32, power: u32, max_degree: u32) -> Result<Report, StableMapsError> {
    verify_conjecture_d3_observed(n, power, max_degree, &mut |_| {})
}

/// [`verify_conjecture_d3_with`], calling `on_row` as each image dimension
/// is computed.
pub fn verify_conjecture_d3_observed(
    n: u32,
    power: u32,
    max_degree: u32,
    on_row: &mut dyn FnMut(&DegreeRow),
) -> Result<Report, StableMapsError> {
    if n == 0 {
        return Err(StableMapsError::OutOfRange("n must be at least 1".into()));
    }
    let d = DegreeCase::Three;
    let tn = TargetDim::Finite(n);
    let reference = reference_series(d, tn)?;
    let mut report = Report::new("conjecture-d3", d, Some(tn)).param("maxDegree", max_degree);
    if power != n {
        report = report.param("power", power);
    }

    let series = hilbert_series(&conjecture_ring_with(d, n, power)?);
    let series_ok = series.series_equal(&reference);
    let top = (reference.numerator().len() as u32).max(series.numerator().len() as u32);
    let (want, got) = (reference.coefficients(top as usize), series.coefficients(top as usize));
    for p in 0..=top {
        let (w, g) = (want[p as usize].to_i64().expect("fits"), got[p as usize].to_i64().expect("fits"));
        report.push_row(DegreeRow::new(p, Some("series"), w, g));
    }
    if !series_ok {
        report.fail(format!("series {series} differs from {reference}"));
    }
    report.set_part("series", series_ok);

    let source_gb = buchberger(conjecture_ring(d, TargetDim::Infinity)?.relations());
    let target_gb = buchberger_truncated(t_ring(d, tn)?.relations(), max_degree);
    let map = generator_map(d)?;
    let mut dims_ok = true;
    for p in 0..=max_degree {
        let rank = graded_image_rank(&map, &source_gb, &target_gb, p)?;
        let want = coefficient(&reference, p);
        if p <= n + 2 {
            let row = DegreeRow::new(p, Some("image dim"), want, rank);
            dims_ok &= row.matches();
            on_row(&row);
            report.push_row(row);
        } else {
            let row = DegreeRow::new(p, Some("image dim (not asserted)"), want, rank);
            on_row(&row);
            report.per_degree.push(row);
        }
    }
    report.set_part("imageDims", dims_ok);
    Ok(report)
}

/// With `c_t(E_1) = 1 + r2 t - b2 t^2`, the coefficients of `t^n` and
/// `t^{n+1}` in `1 / c_t(E_1)` generate the same ideal as `R_{n+1}`.
pub fn whitney_check_d1(n: u32) -> Result<Report, StableMapsError> {
    if n == 0 {
        return Err(StableMapsError::OutOfRange("n must be at least 1".into()));
    }
    let d = DegreeCase::One;
    let ring = t_ring_vars(d);
    let (b2, r2) = (poly(&ring, "b2"), poly(&ring, "r2"));
    // a_k + r2 a_{k-1} - b2 a_{k-2} = 0
    let mut a = vec![Polynomial::one(&ring), -&r2];
    while a.len() <= n as usize + 1 {
        let k = a.len();
        let next = &(&b2 * &a[k - 2]) - &(&r2 * &a[k - 1]);
        a.push(next);
    }
    let inverse = Ideal::new(&ring, vec![a[n as usize].clone(), a[n as usize + 1].clone()])?;
    let moving = Ideal::new(&ring, moving_relations(d, n).entries().to_vec())?;
    let (gi, gm) = (buchberger(&inverse), buchberger(&moving));
    let mut report = Report::new("whitney-d1", d, Some(TargetDim::Finite(n)))
        .param("inverseCoefficients", format!("{}; {}", a[n as usize], a[n as usize + 1]));
    if gi != gm {
        report.fail(format!(
            "bases differ: [{}] vs [{}]",
            gi.to_string().trim_end().replace('\n', ", "),
            gm.to_string().trim_end().replace('\n', ", ")
        ));
    }
    Ok(report)
}

/// Writes an `S_2`-symmetric polynomial in `b, q, r1, r2` as a polynomial in
/// `b, t, k, q` using `r1 + r2 = t + 2b` and `r1 r2 = 4q + b^2 + b t - k`.
pub fn symmetric_preimage_d2(p: &Polynomial) -> Result<Polynomial, StableMapsError> {
    let tring = t_ring_vars(DegreeCase::Two);
    let inv = invariant_ring_d2();
    let (ir1, ir2) = (2, 3);
    let e1 = poly(&tring, "r1 + r2");
    let e2 = poly(&tring, "r1*r2");
    let e1_inv = poly(&inv, "t + 2*b");
    let e2_inv = poly(&inv, "4*q + b^2 + b*t - k");
    let mut rest = p.clone();
    let mut out = Polynomial::zero(&inv);
    while let Some(term) = rest
        .terms()
        .iter()
        .max_by_key(|t| (t.monomial.exponent(ir1), t.monomial.exponent(ir2)))
        .cloned()
    {
        let (a, c) = (term.monomial.exponent(ir1), term.monomial.exponent(ir2));
        if a < c {
            return Err(StableMapsError::Unsupported(format!("{p} is not symmetric in r1, r2")));
        }
        let mut coeff_exps = term.monomial.exponents().to_vec();
        coeff_exps[ir1] = 0;
        coeff_exps[ir2] = 0;
        let (eb, eq) = (coeff_exps[0], coeff_exps[1]);
        let shape = &e1.pow(u32::from(a - c)) * &e2.pow(u32::from(c));
        let coeff = Polynomial::term(&tring, term.coeff.clone(), tring.monomial(&coeff_exps));
        rest = &rest - &(&coeff * &shape);
        let inv_coeff = Polynomial::term(&inv, term.coeff.clone(), inv.monomial(&[eb, 0, 0, eq]));
        out = &out + &(&inv_coeff * &(&e1_inv.pow(u32::from(a - c)) * &e2_inv.pow(u32::from(c))));
    }
    Ok(out)
}

/// The `S_2`-invariants of the d=2 chart ring against the presentation
/// `QQ[b, t, k, q] / (q(2b - t), x_{n+1}, v_{n+1}, w_{n+1})`, where `x` is
/// the first entry of `R_{n+1}` and `v, w` the last two of `G_{n+1}`.
pub fn invariant_check_d2(n: u32, max_degree: u32) -> Result<Report, StableMapsError> {
    if n == 0 {
        return Err(StableMapsError::OutOfRange("n must be at least 1".into()));
    }
    let d = DegreeCase::Two;
    let tgb = buchberger(t_ring(d, TargetDim::Finite(n))?.relations());
    let map = invariant_map_d2();
    let swap = SymmetryAction::new(d)?.generators()[0].1.clone();
    let mut report = Report::new("invariants-d2", d, Some(TargetDim::Finite(n))).param("maxDegree", max_degree);

    let mut fixed_ok = true;
    for img in map.images() {
        let moved = swap.apply(img)?;
        if !tgb.reduce(&(&moved - img)).is_zero() {
            fixed_ok = false;
            report.fail(format!("{img} is not fixed by the swap"));
        }
    }
    report.set_part("generatorsFixed", fixed_ok);

    let inv = invariant_ring_d2();
    let x_t = moving_relations(d, n).get(0, 0).clone();
    let x = symmetric_preimage_d2(&x_t)?;
    let g = moving_generator_relations(d, n)?;
    let include = RingMap::new(&generator_ring(d)?, &inv, vec![poly(&inv, "b"), poly(&inv, "t"), poly(&inv, "k")])?;
    let relations = vec![
        poly(&inv, "q*(2*b - t)"),
        x.clone(),
        include.apply(g.get(1, 0))?,
        include.apply(g.get(2, 0))?,
    ];
    let mut rel_ok = map.apply(&x)? == x_t;
    if !rel_ok {
        report.fail(format!("preimage {x} does not map back to {x_t}"));
    }
    for rel in &relations {
        let img = map.apply(rel)?;
        if !tgb.contains(&img)? {
            rel_ok = false;
            report.fail(format!("relation {rel} does not vanish in the chart ring"));
        }
    }
    report.set_part("relationsVanish", rel_ok);

    let series = hilbert_series(&crate::groebner::QuotientPresentation::new(
        Ideal::new(&inv, relations)?,
        "invariant presentation",
    ));
    let half = rat(1, 2);
    let mut dims_ok = true;
    for p in 0..=max_degree {
        let basis = tgb.standard_monomials(p);
        let averaged: Vec<Polynomial> = basis
            .iter()
            .map(|m| {
                let mp = Polynomial::monomial(tgb.ring(), m.clone());
                let sum = &mp + &swap.apply(&mp).expect("same ring");
                tgb.reduce(&sum.scale(&half))
            })
            .collect::<Vec<_>>();
        let rank = linalg::rank(&coordinate_rows(&averaged, &basis));
        let want = coefficient(&series, p);
        dims_ok &= i64::try_from(rank).ok() == Some(want);
        report.push_row(DegreeRow::new(p, Some("invariant dim"), want, rank));
    }
    report.set_part("dims", dims_ok);
    Ok(report)
}

/// Graded dimensions of the projective-space presentation are `1` in degrees
/// `0..=n` and `0` in degrees `n+1..=n+3`.
pub fn pn_koszul_check(n: u32) -> Result<Report, StableMapsError> {
    let h = hilbert_series(&pn_koszul(n)?);
    let expected = HilbertSeries::complete_intersection(&[n + 1], &[1]);
    let mut report = Report::new("pn-koszul", None, Some(TargetDim::Finite(n)));
    for p in 0..=n + 3 {
        report.push_row(DegreeRow::new(p, Some("dim"), i64::from(p <= n), coefficient(&h, p)));
    }
    report.set_part("series", h.series_equal(&expected));
    Ok(report)
}
