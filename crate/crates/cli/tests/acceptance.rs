//! Acceptance suite. Runs every criterion in sequence, prints one line per
//! criterion and exits non-zero if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use stablemaps::groebner::{buchberger, standard_monomials, Ideal, QuotientPresentation};
use stablemaps::hilbert::{hilbert_series, HilbertSeries};
use stablemaps::polyarith::{parse_poly, rat};
use stablemaps::stablemaps::{
    base_ideal, check_intertwiner, check_intertwiner_with, check_symmetry, chern_class, chern_class_closed_form,
    chern_in_generators, conjecture_ring, conjecture_ring_with, generator_map, generator_ring, graded_injectivity,
    ideal_is_stable, invariant_check_d2, matrix_h, moving_generator_relations, moving_relations, pn_koszul,
    reference_series, t_ring, t_ring_vars, verify_conjecture_d3, verify_conjecture_d3_with, whitney_check_d1,
    DegreeCase, Report, SymmetryAction, TargetDim,
};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn passed(r: &Report) -> Outcome {
    ensure(r.ok, || r.to_string())
}

fn within(start: Instant, limit: Duration) -> Outcome {
    let took = start.elapsed();
    ensure(took < limit, || format!("took {took:.2?}, limit {limit:?}"))
}

fn dims(p: &QuotientPresentation, upto: usize) -> Vec<i64> {
    hilbert_series(p).coefficients_i64(upto)
}

/// First `len` coefficients of `num / prod (1 - t^w)`.
fn expand(num: &[i64], weights: &[usize], len: usize) -> Vec<i64> {
    let mut c: Vec<i64> = (0..len).map(|i| num.get(i).copied().unwrap_or(0)).collect();
    for &w in weights {
        for i in w..len {
            c[i] += c[i - w];
        }
    }
    c
}

fn mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn one_minus(w: usize) -> Vec<i64> {
    let mut p = vec![0; w + 1];
    p[0] = 1;
    p[w] = -1;
    p
}

fn rows_of<'a>(r: &'a Report, quantity: &'a str) -> impl Iterator<Item = String> + 'a {
    r.per_degree
        .iter()
        .filter(move |row| row.quantity.as_deref() == Some(quantity))
        .map(|row| row.actual.to_string())
}

fn projective_space() -> Outcome {
    let start = Instant::now();
    for n in 1..=8u32 {
        let mut want = vec![1; n as usize + 1];
        want.extend([0, 0, 0]);
        let got = dims(&pn_koszul(n).map_err(|e| e.to_string())?, n as usize + 3);
        ensure(got == want, || format!("n={n}: {got:?}"))?;
    }
    within(start, Duration::from_secs(1))
}

fn grassmannian() -> Outcome {
    let start = Instant::now();
    for n in 1..=6usize {
        // Partitions inside a 2 x (n-1) box, counted by size.
        let mut want = vec![0i64; 2 * n - 1];
        for a in 0..n {
            for b in 0..=a {
                want[a + b] += 1;
            }
        }
        let h = hilbert_series(&t_ring(DegreeCase::One, TargetDim::Finite(n as u32)).unwrap());
        let got = h.coefficients_i64(2 * n - 2);
        ensure(got == want, || format!("n={n}: {got:?} vs {want:?}"))?;
        let total = h.total_dimension().unwrap();
        ensure(total == (n * (n + 1) / 2).into(), || format!("n={n}: total {total}"))?;
        passed(&whitney_check_d1(n as u32).unwrap())?;
    }
    within(start, Duration::from_secs(5))
}

fn degree_two_finite() -> Outcome {
    let start = Instant::now();
    for n in 1..=6usize {
        let num = mul(&mul(&one_minus(n), &one_minus(n + 1)), &one_minus(n + 2));
        let want = expand(&num, &[1, 1, 2], 3 * n + 4);
        let h = hilbert_series(&conjecture_ring(DegreeCase::Two, TargetDim::Finite(n as u32)).unwrap());
        ensure(h.coefficients_i64(3 * n + 3) == want, || format!("n={n}: {h}"))?;
        let reference = reference_series(DegreeCase::Two, TargetDim::Finite(n as u32)).unwrap();
        ensure(h.series_equal(&reference), || format!("n={n}: {h} vs {reference}"))?;
        passed(&check_intertwiner(DegreeCase::Two, n as u32).unwrap())?;
    }
    for n in 1..=4 {
        passed(&graded_injectivity(DegreeCase::Two, TargetDim::Finite(n), n + 2).unwrap())?;
    }
    within(start, Duration::from_secs(30))
}

fn degree_two_infinite() -> Outcome {
    let r = graded_injectivity(DegreeCase::Two, TargetDim::Infinity, 6).unwrap();
    passed(&r)?;
    let source: Vec<String> = rows_of(&r, "source dim").collect();
    ensure(source == ["1", "2", "4", "6", "9", "12", "16"], || format!("{source:?}"))?;
    for n in 1..=3 {
        passed(&invariant_check_d2(n, n + 3).unwrap())?;
    }
    Ok(())
}

fn degree_three_infinite() -> Outcome {
    let start = Instant::now();
    let g = generator_ring(DegreeCase::Three).unwrap();
    let map = generator_map(DegreeCase::Three).unwrap();
    let base = buchberger(&base_ideal(DegreeCase::Three));
    for rel in ["tau^2 - rho*sigma2", "tau*sigma3", "rho*sigma3"] {
        let image = map.apply(&parse_poly(rel, &g).unwrap()).unwrap();
        ensure(base.contains(&image).unwrap(), || format!("{rel} maps outside the base ideal"))?;
    }
    let r = graded_injectivity(DegreeCase::Three, TargetDim::Infinity, 8).unwrap();
    passed(&r)?;
    let limit_series = expand(&[1, 1, 2, 2, 2], &[1, 2, 2, 3], 9);
    let source: Vec<String> = rows_of(&r, "source dim").collect();
    let want: Vec<String> = limit_series.iter().map(i64::to_string).collect();
    ensure(source == want, || format!("{source:?}"))?;
    ensure(limit_series[..3] == [1, 2, 6], || format!("{limit_series:?}"))?;
    let h = hilbert_series(&conjecture_ring(DegreeCase::Three, TargetDim::Infinity).unwrap());
    let exact = HilbertSeries::from_i64(&[1, 1, 2, 2, 2], &[1, 2, 2, 3]);
    ensure(h == exact && h.series_equal(&exact), || format!("{h}"))?;
    within(start, Duration::from_secs(60))
}

fn degree_three_conjecture() -> Outcome {
    let start = Instant::now();
    for n in 1..=5 {
        let r = verify_conjecture_d3(n).unwrap();
        ensure(r.part("series") == Some(true), || format!("n={n}: series\n{r}"))?;
        ensure(r.part("imageDims") == Some(true), || format!("n={n}: image dims\n{r}"))?;
        passed(&r)?;
        if n == 1 {
            let series: Vec<String> = rows_of(&r, "series").take(6).collect();
            ensure(series == ["1", "1", "2", "1", "1", "0"], || format!("{series:?}"))?;
        }
        println!("    n={n} ok after {:.1?}", start.elapsed());
    }
    let total = hilbert_series(&conjecture_ring(DegreeCase::Three, TargetDim::Finite(1)).unwrap()).total_dimension();
    ensure(total == Some(6.into()), || format!("total {total:?}"))?;
    within(start, Duration::from_secs(30 * 60))
}

fn chern_identities() -> Outcome {
    for d in [DegreeCase::One, DegreeCase::Two, DegreeCase::Three] {
        // d=1 has no limit ring; a large finite n leaves degrees <= 2 untouched.
        let n = if d == DegreeCase::One { TargetDim::Finite(8) } else { TargetDim::Infinity };
        let gb = buchberger(t_ring(d, n).unwrap().relations());
        for m in 1..=3 {
            for p in 1..=2 {
                let class = chern_class(d, m, p, n).unwrap();
                let formula = gb.reduce(&chern_class_closed_form(d, m, p).unwrap());
                ensure(class == formula, || format!("d={d} m={m} p={p}: {class} vs {formula}"))?;
            }
        }
    }
    for d in [DegreeCase::Two, DegreeCase::Three] {
        for m in 1..=3 {
            for p in 1..=2 {
                passed(&chern_in_generators(d, m, p).unwrap())?;
            }
        }
    }
    Ok(())
}

fn sorted_degrees(entries: &[stablemaps::polyarith::Polynomial]) -> Option<Vec<u32>> {
    let mut out = entries.iter().map(|e| e.homogeneous_degree()).collect::<Option<Vec<u32>>>()?;
    out.sort();
    Some(out)
}

fn structural_invariants() -> Outcome {
    for n in 1..=8u32 {
        let cases = [
            (sorted_degrees(moving_relations(DegreeCase::One, n).entries()), vec![n, n + 1]),
            (sorted_degrees(moving_relations(DegreeCase::Two, n).entries()), vec![n, n, n + 1]),
            (sorted_degrees(moving_relations(DegreeCase::Three, n).entries()), vec![n, n, n, n + 1]),
            (
                sorted_degrees(moving_generator_relations(DegreeCase::Two, n).unwrap().entries()),
                vec![n, n + 1, n + 2],
            ),
            (
                sorted_degrees(moving_generator_relations(DegreeCase::Three, n).unwrap().entries()),
                vec![n, n + 1, n + 1, n + 2, n + 2],
            ),
        ];
        for (got, want) in cases {
            ensure(got.as_ref() == Some(&want), || format!("n={n}: {got:?} vs {want:?}"))?;
        }
    }
    for n in 1..=6 {
        passed(&check_symmetry(DegreeCase::Two, TargetDim::Finite(n)).unwrap())?;
    }
    for n in [TargetDim::Finite(1), TargetDim::Finite(2), TargetDim::Infinity] {
        passed(&check_symmetry(DegreeCase::Three, n).unwrap())?;
    }
    passed(&check_symmetry(DegreeCase::Two, TargetDim::Infinity).unwrap())?;

    for d in [DegreeCase::Two, DegreeCase::Three] {
        let mut h = matrix_h(d).unwrap();
        let flipped = -h.get(1, 1).clone();
        h.set(1, 1, flipped);
        let r = check_intertwiner_with(d, 1, &h).unwrap();
        ensure(!r.ok, || format!("d={d}: perturbed H accepted"))?;
    }
    let t = t_ring_vars(DegreeCase::Three);
    let p = |s: &str| parse_poly(s, &t).unwrap();
    let perturbed = Ideal::new(&t, vec![p("q1*l2"), p("q2*l2"), p("q3*l3")]).unwrap();
    let action = SymmetryAction::new(DegreeCase::Three).unwrap();
    ensure(!ideal_is_stable(&perturbed, &action).unwrap(), || "perturbed ideal accepted".into())?;
    let wrong_power = verify_conjecture_d3_with(2, 1, 4).unwrap();
    ensure(!wrong_power.ok, || "A^(n-1) accepted".into())?;
    let wrong_ring = conjecture_ring_with(DegreeCase::Three, 2, 1).unwrap();
    let reference = reference_series(DegreeCase::Three, TargetDim::Finite(2)).unwrap();
    ensure(!hilbert_series(&wrong_ring).series_equal(&reference), || "A^(n-1) series matched".into())
}

fn engine_properties() -> Outcome {
    let mut state = 0x2545_f491_4f6c_dd1du64;
    let mut next = move |bound: usize| {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        (state >> 33) as usize % bound
    };
    let pool = [
        conjecture_ring(DegreeCase::Three, TargetDim::Finite(2)).unwrap(),
        t_ring(DegreeCase::Two, TargetDim::Finite(3)).unwrap(),
        t_ring(DegreeCase::Three, TargetDim::Finite(1)).unwrap(),
        conjecture_ring(DegreeCase::Two, TargetDim::Finite(4)).unwrap(),
    ];
    let reference: Vec<_> = pool.iter().map(|p| buchberger(p.relations())).collect();
    for case in 0..100 {
        let k = case % pool.len();
        let mut gens = pool[k].relations().generators().to_vec();
        for i in (1..gens.len()).rev() {
            gens.swap(i, next(i + 1));
        }
        let gens = gens.iter().map(|g| g.scale(&rat(next(5) as i64 + 1, 2))).collect();
        let gb = buchberger(&Ideal::new(pool[k].ring(), gens).unwrap());
        ensure(gb == reference[k], || format!("case {case}: {}", pool[k].label()))?;
    }

    let mut presentations = Vec::new();
    for n in 1..=6 {
        presentations.push(t_ring(DegreeCase::One, TargetDim::Finite(n)).unwrap());
        presentations.push(conjecture_ring(DegreeCase::Two, TargetDim::Finite(n)).unwrap());
    }
    for n in 1..=3 {
        presentations.push(t_ring(DegreeCase::Two, TargetDim::Finite(n)).unwrap());
        presentations.push(conjecture_ring(DegreeCase::Three, TargetDim::Finite(n)).unwrap());
    }
    for n in 1..=2 {
        presentations.push(t_ring(DegreeCase::Three, TargetDim::Finite(n)).unwrap());
    }
    for d in [DegreeCase::Two, DegreeCase::Three] {
        presentations.push(t_ring(d, TargetDim::Infinity).unwrap());
        presentations.push(conjecture_ring(d, TargetDim::Infinity).unwrap());
    }
    for n in 1..=8 {
        presentations.push(pn_koszul(n).unwrap());
    }
    for p in &presentations {
        let gb = buchberger(p.relations());
        let counts: Vec<i64> = (0..=8).map(|d| standard_monomials(&gb, d).len() as i64).collect();
        ensure(dims(p, 8) == counts, || format!("{}: {counts:?}", p.label()))?;
    }

    let runs: &[&[&str]] = &[
        &["present", "--d", "3", "--n", "2", "--which", "conjecture"],
        &["hilbert", "--d", "3", "--n", "inf"],
        &["--json", "chern", "--d", "3", "--m", "2", "--p", "2"],
        &["--json", "verify", "conjecture-d3", "--n", "1,2"],
        &["verify", "intertwiner", "--d", "2", "--n", "4"],
    ];
    for args in runs {
        let run = || Command::new(env!("CARGO_BIN_EXE_stablemaps")).args(*args).output().unwrap();
        let (a, b) = (run(), run());
        ensure(a.status.success(), || format!("{args:?} failed"))?;
        ensure(a.stdout == b.stdout && !a.stdout.is_empty(), || format!("{args:?} differs between runs"))?;
    }
    Ok(())
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("projective space smoke test", projective_space),
        ("d=1 Grassmannian", grassmannian),
        ("d=2 finite n", degree_two_finite),
        ("d=2 infinite n", degree_two_infinite),
        ("d=3 infinite n", degree_three_infinite),
        ("d=3 conjecture for n<=5", degree_three_conjecture),
        ("Chern class identities", chern_identities),
        ("structural invariants and negative controls", structural_invariants),
        ("engine properties", engine_properties),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            Err(e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let took = start.elapsed();
        match outcome {
            Ok(()) => println!("criterion {}: PASS  {name} ({took:.2?})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name} ({took:.2?})\n    {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
