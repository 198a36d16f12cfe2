use std::io::Write;
use std::process::ExitCode;
use std::sync::Mutex;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value as Json};
use stablemaps::groebner::QuotientPresentation;
use stablemaps::hilbert::{hilbert_series, HilbertSeries};
use stablemaps::stablemaps::{
    chern_class, chern_class_closed_form, check_intertwiner, check_symmetry, conjecture_ring, graded_injectivity,
    invariant_check_d2, pn_koszul, pn_koszul_check, reference_series, t_ring, verify_conjecture_d3_observed,
    whitney_check_d1, DegreeCase, Report, TargetDim,
};

/// Largest `n` run by `verify conjecture-d3` without `--extended`.
const CONJECTURE_D3_DEFAULT_MAX_N: u32 = 5;

#[derive(Parser)]
#[command(name = "stablemaps", version, about = "Cohomology presentations of spaces of stable maps to projective space")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Render variable names with Unicode symbols in text output.
    #[arg(long, global = true)]
    pretty: bool,
    /// Number of verification cases to run in parallel.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    jobs: u32,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a presentation: variables with weights and relations.
    Present(RingArgs),
    /// Print the Hilbert series of a presentation.
    Hilbert(SeriesArgs),
    /// Print the graded dimensions of a presentation.
    Betti(SeriesArgs),
    /// Print a Chern class of the bundle E_m on the chart ring.
    Chern(ChernArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Print the projective-space presentation and its graded dimensions.
    PnKoszul(PnArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Which {
    /// The chart ring with base and moving relations.
    TRing,
    /// The ring of cohomology generators with its relations.
    Conjecture,
}

#[derive(Args)]
struct RingArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=3))]
    d: u32,
    /// Target dimension: a positive integer or `inf`.
    #[arg(long, value_parser = parse_target)]
    n: TargetDim,
    /// Defaults to the chart ring.
    #[arg(long, value_enum)]
    which: Option<Which>,
}

#[derive(Args)]
struct SeriesArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=3))]
    d: u32,
    #[arg(long, value_parser = parse_target)]
    n: TargetDim,
    /// Defaults to the generator ring for d = 2, 3 and the chart ring for d = 1.
    #[arg(long, value_enum)]
    which: Option<Which>,
    /// Highest degree of the coefficient list.
    #[arg(long)]
    upto: Option<u32>,
}

#[derive(Args)]
struct ChernArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=3))]
    d: u32,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    m: u32,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    p: u32,
    /// Reduce modulo the chart ring at this `n` (default `inf`).
    #[arg(long, value_parser = parse_target)]
    n: Option<TargetDim>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    ConjectureD3,
    Intertwiner,
    Symmetry,
    WhitneyD1,
    Injectivity,
    InvariantsD2,
    PnKoszul,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    suite: Suite,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=3))]
    d: Option<u32>,
    /// One or more target dimensions, comma separated; each is a case.
    #[arg(long, value_parser = parse_target, value_delimiter = ',', required = true)]
    n: Vec<TargetDim>,
    #[arg(long = "max-degree")]
    max_degree: Option<u32>,
    /// Allow conjecture-d3 beyond n = 5 (long runs).
    #[arg(long)]
    extended: bool,
}

#[derive(Args)]
struct PnArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    n: u32,
}

fn parse_target(s: &str) -> Result<TargetDim, String> {
    s.parse().map_err(|e| format!("{e}"))
}

/// Output sink that applies `--pretty` to text and collects JSON.
struct Out {
    json: bool,
    pretty: bool,
    text: String,
    json_value: Option<Json>,
}

impl Out {
    fn line(&mut self, s: impl AsRef<str>) {
        let s = s.as_ref();
        if self.pretty {
            self.text.push_str(&prettify(s));
        } else {
            self.text.push_str(s);
        }
        self.text.push('\n');
    }

    fn emit(self) -> Result<()> {
        let mut stdout = std::io::stdout().lock();
        if self.json {
            let v = self.json_value.ok_or_else(|| anyhow!("no JSON output"))?;
            writeln!(stdout, "{}", serde_json::to_string_pretty(&v)?)?;
        } else {
            stdout.write_all(self.text.as_bytes())?;
        }
        Ok(())
    }
}

/// Replaces ASCII variable names by their Unicode symbols.
fn prettify(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            let split = word.find(|ch: char| ch.is_ascii_digit()).unwrap_or(word.len());
            let (stem, digits) = word.split_at(split);
            let symbol = match stem {
                "l" if !digits.is_empty() => "ℓ",
                "sigma" => "σ",
                "rho" => "ρ",
                "tau" => "τ",
                "eta" => "η",
                "theta" => "θ",
                "lambda" => "λ",
                _ => "",
            };
            if symbol.is_empty() || !digits.chars().all(|ch| ch.is_ascii_digit()) {
                out.push_str(&word);
            } else {
                out.push_str(symbol);
                out.push_str(digits);
            }
        } else {
            out.push(c);
            i += 1;
        }
    }
    out
}

fn presentation(d: DegreeCase, n: TargetDim, which: Which) -> Result<QuotientPresentation> {
    Ok(match which {
        Which::TRing => t_ring(d, n)?,
        Which::Conjecture => conjecture_ring(d, n)?,
    })
}

fn presentation_json(p: &QuotientPresentation) -> Json {
    let vars: Vec<Json> = p
        .ring()
        .variables()
        .iter()
        .map(|v| json!({"name": v.name(), "weight": v.weight()}))
        .collect();
    let rels: Vec<String> = p.relations().generators().iter().map(ToString::to_string).collect();
    json!({"label": p.label(), "variables": vars, "relations": rels})
}

fn series_json(h: &HilbertSeries) -> Json {
    json!({
        "numerator": h.numerator_text(),
        "denominatorWeights": h.denominator_weights(),
        "text": h.to_string(),
    })
}

fn cmd_present(args: &RingArgs, out: &mut Out) -> Result<bool> {
    let d = DegreeCase::new(args.d)?;
    let p = presentation(d, args.n, args.which.unwrap_or(Which::TRing))?;
    out.line(p.to_string().trim_end());
    finish(out, presentation_json(&p), true)
}

fn default_series_ring(d: DegreeCase) -> Which {
    match d {
        DegreeCase::One => Which::TRing,
        _ => Which::Conjecture,
    }
}

fn cmd_series(args: &SeriesArgs, betti: bool, out: &mut Out) -> Result<bool> {
    let d = DegreeCase::new(args.d)?;
    let which = args.which.unwrap_or(default_series_ring(d));
    let pres = presentation(d, args.n, which)?;
    let h = hilbert_series(&pres);
    // The chart ring only carries the cohomology series for d = 1.
    let reference = match (which, d) {
        (Which::Conjecture, _) | (Which::TRing, DegreeCase::One) => reference_series(d, args.n).ok(),
        _ => None,
    };
    let upto = args.upto.or_else(|| {
        betti.then(|| match h.total_dimension() {
            Some(_) => h.numerator().len().saturating_sub(1) as u32,
            None => 10,
        })
    });
    let agrees = reference.as_ref().map(|r| h.series_equal(r));

    let mut json = json!({"label": pres.label(), "series": series_json(&h)});
    if !betti {
        out.line(format!("# {}", pres.label()));
        out.line(format!("series: {h}"));
        out.line(format!("numerator: {}", h.numerator_text()));
        if let Some(total) = h.total_dimension() {
            out.line(format!("total dimension: {total}"));
            json["totalDimension"] = json!(total.to_string());
        }
    }
    if let Some(upto) = upto {
        let coeffs = h.coefficients(upto as usize);
        let list: Vec<String> = coeffs.iter().map(ToString::to_string).collect();
        if betti {
            out.line(format!("[{}]", list.join(",")));
        } else {
            out.line(format!("coefficients: [{}]", list.join(",")));
        }
        json["coefficients"] = json!(coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>());
    }
    if let (Some(r), Some(ok)) = (&reference, agrees) {
        if !betti || !ok {
            out.line(format!("reference: {r} ({})", if ok { "agrees" } else { "DISAGREES" }));
        }
        json["reference"] = series_json(r);
        json["agreesWithReference"] = json!(ok);
    }
    finish(out, json, agrees.unwrap_or(true))
}

fn cmd_chern(args: &ChernArgs, out: &mut Out) -> Result<bool> {
    let d = DegreeCase::new(args.d)?;
    let n = args.n.unwrap_or(TargetDim::Infinity);
    let c = chern_class(d, args.m, args.p, n)?;
    out.line(c.to_string());
    let mut json = json!({"d": d, "m": args.m, "p": args.p, "n": n, "class": c.to_string()});
    let mut ok = true;
    if args.p <= 2 && n == TargetDim::Infinity {
        let closed = chern_class_closed_form(d, args.m, args.p)?;
        ok = closed == c;
        out.line(format!(
            "closed formula: {closed} ({})",
            if ok { "matches" } else { "DIFFERS" }
        ));
        json["closedFormula"] = json!(closed.to_string());
        json["matchesClosedFormula"] = json!(ok);
    }
    finish(out, json, ok)
}

fn cmd_pn_koszul(args: &PnArgs, out: &mut Out) -> Result<bool> {
    let pres = pn_koszul(args.n)?;
    out.line(pres.to_string().trim_end());
    let h = hilbert_series(&pres);
    out.line(format!("series: {h}"));
    let dims = h.coefficients((args.n + 3) as usize);
    let list: Vec<String> = dims.iter().map(ToString::to_string).collect();
    out.line(format!("dims: [{}]", list.join(",")));
    let report = pn_koszul_check(args.n)?;
    out.line(format!("check: {}", if report.ok { "PASS" } else { "FAIL" }));
    let mut json = presentation_json(&pres);
    json["series"] = series_json(&h);
    json["dims"] = json!(list);
    json["ok"] = json!(report.ok);
    finish(out, json, report.ok)
}

fn finish(out: &mut Out, json: Json, ok: bool) -> Result<bool> {
    out.json_value = Some(json);
    Ok(ok)
}

fn require_d(args: &VerifyArgs, allowed: &[u32]) -> Result<DegreeCase> {
    let d = args.d.with_context(|| format!("this suite needs --d (one of {allowed:?})"))?;
    if !allowed.contains(&d) {
        bail!("this suite supports --d in {allowed:?}, got {d}");
    }
    Ok(DegreeCase::new(d)?)
}

fn require_finite(n: TargetDim, suite: &str) -> Result<u32> {
    n.finite().with_context(|| format!("{suite} needs a finite --n"))
}

/// One verification case, validated before anything runs.
struct Case {
    key: String,
    run: Box<dyn Fn() -> Result<Report> + Send + Sync>,
}

fn plan(args: &VerifyArgs) -> Result<Vec<Case>> {
    let mut cases = Vec::new();
    for &n in &args.n {
        let max_degree = args.max_degree;
        let case: Case = match args.suite {
            Suite::ConjectureD3 => {
                if args.d.is_some_and(|d| d != 3) {
                    bail!("conjecture-d3 is defined for d = 3 only");
                }
                let n = require_finite(n, "conjecture-d3")?;
                if n > CONJECTURE_D3_DEFAULT_MAX_N && !args.extended {
                    bail!("conjecture-d3 with n > {CONJECTURE_D3_DEFAULT_MAX_N} is a long run; pass --extended");
                }
                let top = max_degree.unwrap_or(n + 2);
                Case {
                    key: format!("conjecture-d3 n={n}"),
                    run: Box::new(move || {
                        let key = format!("conjecture-d3 n={n}");
                        let mut progress = |row: &stablemaps::stablemaps::DegreeRow| {
                            eprintln!(
                                "[{key}] degree {} {}: {}",
                                row.degree,
                                row.quantity.as_deref().unwrap_or(""),
                                row.actual
                            );
                        };
                        Ok(verify_conjecture_d3_observed(n, n, top, &mut progress)?)
                    }),
                }
            }
            Suite::Intertwiner => {
                let d = require_d(args, &[2, 3])?;
                let n = require_finite(n, "intertwiner")?;
                Case {
                    key: format!("intertwiner d={d} n={n}"),
                    run: Box::new(move || Ok(check_intertwiner(d, n)?)),
                }
            }
            Suite::Symmetry => {
                let d = require_d(args, &[2, 3])?;
                Case {
                    key: format!("symmetry d={d} n={n}"),
                    run: Box::new(move || Ok(check_symmetry(d, n)?)),
                }
            }
            Suite::WhitneyD1 => {
                let n = require_finite(n, "whitney-d1")?;
                Case {
                    key: format!("whitney-d1 n={n}"),
                    run: Box::new(move || Ok(whitney_check_d1(n)?)),
                }
            }
            Suite::Injectivity => {
                let d = require_d(args, &[2, 3])?;
                let top = match (max_degree, n) {
                    (Some(m), _) => m,
                    (None, TargetDim::Finite(n)) => n + 2,
                    (None, TargetDim::Infinity) => bail!("injectivity with n = inf needs --max-degree"),
                };
                Case {
                    key: format!("injectivity d={d} n={n}"),
                    run: Box::new(move || Ok(graded_injectivity(d, n, top)?)),
                }
            }
            Suite::InvariantsD2 => {
                if args.d.is_some_and(|d| d != 2) {
                    bail!("invariants-d2 is defined for d = 2 only");
                }
                let n = require_finite(n, "invariants-d2")?;
                let top = max_degree.unwrap_or(n + 3);
                Case {
                    key: format!("invariants-d2 n={n}"),
                    run: Box::new(move || Ok(invariant_check_d2(n, top)?)),
                }
            }
            Suite::PnKoszul => {
                let n = require_finite(n, "pn-koszul")?;
                Case {
                    key: format!("pn-koszul n={n}"),
                    run: Box::new(move || Ok(pn_koszul_check(n)?)),
                }
            }
        };
        cases.push(case);
    }
    Ok(cases)
}

fn run_cases(cases: &[Case], jobs: usize) -> Vec<Result<Report>> {
    let results: Vec<Mutex<Option<Result<Report>>>> = cases.iter().map(|_| Mutex::new(None)).collect();
    let next = Mutex::new(0usize);
    std::thread::scope(|scope| {
        for _ in 0..jobs.min(cases.len()).max(1) {
            scope.spawn(|| loop {
                let i = {
                    let mut guard = next.lock().expect("queue lock");
                    let i = *guard;
                    *guard += 1;
                    i
                };
                let Some(case) = cases.get(i) else { break };
                eprintln!("[{}] running", case.key);
                let start = Instant::now();
                let result = (case.run)();
                let status = match &result {
                    Ok(r) if r.ok => "pass",
                    Ok(_) => "FAIL",
                    Err(_) => "error",
                };
                eprintln!("[{}] {status} in {:.2?}", case.key, start.elapsed());
                *results[i].lock().expect("result lock") = Some(result);
            });
        }
    });
    results
        .into_iter()
        .map(|m| m.into_inner().expect("result lock").expect("every case ran"))
        .collect()
}

fn cmd_verify(args: &VerifyArgs, jobs: u32, out: &mut Out) -> Result<bool> {
    let cases = plan(args)?;
    let results = run_cases(&cases, jobs as usize);
    let mut reports = Vec::new();
    for (case, result) in cases.iter().zip(results) {
        reports.push(result.with_context(|| format!("{} failed to run", case.key))?);
    }
    let mut all_ok = true;
    for r in &reports {
        out.line(r.to_string().trim_end());
        all_ok &= r.ok;
    }
    if let Some(first) = reports.iter().find(|r| !r.ok) {
        let why = first.witness.as_deref().unwrap_or("check failed");
        eprintln!("first failing check: {} ({why})", first.check);
    }
    let json = if reports.len() == 1 {
        serde_json::to_value(&reports[0])?
    } else {
        serde_json::to_value(&reports)?
    };
    finish(out, json, all_ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = Out {
        json: cli.json,
        pretty: cli.pretty,
        text: String::new(),
        json_value: None,
    };
    let result = match &cli.command {
        Command::Present(a) => cmd_present(a, &mut out),
        Command::Hilbert(a) => cmd_series(a, false, &mut out),
        Command::Betti(a) => cmd_series(a, true, &mut out),
        Command::Chern(a) => cmd_chern(a, &mut out),
        Command::Verify(a) => cmd_verify(a, cli.jobs, &mut out),
        Command::PnKoszul(a) => cmd_pn_koszul(a, &mut out),
    };
    match result {
        Ok(ok) => {
            if let Err(e) = out.emit() {
                eprintln!("error: {e:#}");
                return ExitCode::from(2);
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
