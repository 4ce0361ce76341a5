//! Acceptance run: one line per criterion, nonzero exit if any fails.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use serde::Deserialize;

use qcharfn::analysis::analyze;
use qcharfn::catalog::{self, ChannelName, Params};
use qcharfn::charfunc::char_function;
use qcharfn::degradability::{dilation_from_angles, verify_verdict, VerdictKind};
use qcharfn::grassmann::{delta_pair, integrate_pair, Generator, GrassmannElement, Monomial};
use qcharfn::green::{detect_gaussian, gaussian_equivalent, green_from_canonical, GreenFunction};
use qcharfn::qubit::{QubitChannel, ROUND_TRIP_TOL};
use qcharfn::sampling::{self, random_angles, random_canonical, random_element, random_gaussian, random_linear, random_mixed_family, random_state};
use qcharfn::suite::{closed_form_char, oracle_residual, GAUSSIAN_THRESHOLD};

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn params(pairs: &[(&str, f64)]) -> Params {
    pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

fn calibration() -> Outcome {
    let mut rng = sampling::rng(1);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let rho = random_state(&mut rng);
        worst = worst.max(char_function(&rho).body().max_abs_diff(&closed_form_char(&rho)));
    }
    outcome(worst <= 1e-14, format!("1000 states, max coefficient error {worst:.2e} (tol 1e-14)"))
}

#[derive(Deserialize)]
struct GoldenFile {
    schema_version: u32,
    monomials: Vec<String>,
    channels: BTreeMap<String, Vec<GoldenRow>>,
}

#[derive(Deserialize)]
struct GoldenRow {
    params: Params,
    coefficients: Vec<[f64; 2]>,
}

fn golden_green() -> Outcome {
    let file: GoldenFile =
        serde_json::from_str(include_str!("../data/golden_green.json")).expect("golden table parses");
    assert_eq!(file.schema_version, 1);
    let labels: Vec<String> = Monomial::all().map(Monomial::label).collect();
    if file.monomials != labels {
        return outcome(false, "monomial order of the golden table differs from the crate's");
    }
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for name in ChannelName::ALL {
        let rows = &file.channels[name.as_str()];
        if rows.len() < 20 {
            return outcome(false, format!("{name}: only {} samples", rows.len()));
        }
        for row in rows {
            let g = green_from_canonical(&catalog::canonical(name, &row.params).unwrap()).unwrap();
            for (m, c) in Monomial::all().zip(&row.coefficients) {
                worst = worst.max((g.body.coefficient(m) - Complex64::new(c[0], c[1])).norm());
            }
            count += 1;
        }
    }
    outcome(worst <= 1e-12, format!("{count} tables, max coefficient error {worst:.2e} (tol 1e-12)"))
}

fn oracle_equivalence() -> Outcome {
    let mut rng = sampling::rng(3);
    let (mut worst, mut non_gaussian, mut with_t12): (f64, usize, usize) = (0.0, 0, 0);
    for k in 0..1000 {
        let p = if k % 4 == 3 { random_gaussian(&mut rng) } else { random_canonical(&mut rng) };
        let g = green_from_canonical(&p).unwrap();
        non_gaussian += usize::from(detect_gaussian(&g).is_none());
        with_t12 += usize::from(p.t[0] != 0.0 && p.t[1] != 0.0);
        worst = worst.max(oracle_residual(&QubitChannel::canonical(p), &random_state(&mut rng)));
    }
    outcome(
        worst <= 1e-12 && non_gaussian > 0 && with_t12 > 0,
        format!("1000 channels ({non_gaussian} non-Gaussian, {with_t12} with t1,t2 ≠ 0), max residual {worst:.2e} (tol 1e-12)"),
    )
}

fn gaussianity() -> Outcome {
    let mut rng = sampling::rng(4);
    let (mut disagreements, mut gaussian) = (0, 0);
    for _ in 0..1000 {
        let p = random_mixed_family(&mut rng);
        let detected = detect_gaussian(&green_from_canonical(&p).unwrap()).is_some();
        let closed = p.t[0].abs() <= GAUSSIAN_THRESHOLD
            && p.t[1].abs() <= GAUSSIAN_THRESHOLD
            && (p.lambda[2] - p.lambda[0] * p.lambda[1]).abs() <= GAUSSIAN_THRESHOLD;
        gaussian += usize::from(closed);
        disagreements += usize::from(detected != closed);
    }
    outcome(
        disagreements == 0 && gaussian > 0 && gaussian < 1000,
        format!("1000 channels ({gaussian} Gaussian), {disagreements} disagreements"),
    )
}

fn dilation_soundness() -> Outcome {
    let mut rng = sampling::rng(5);
    let (mut worst, mut purity_errors, mut unitarity): (f64, usize, f64) = (0.0, 0, 0.0);
    for _ in 0..200 {
        let ap = random_angles(&mut rng);
        // the Gaussian channel as read off its angle-form Green function
        let g = GreenFunction { body: ap.green_body(), provenance: None };
        let target = detect_gaussian(&g).and_then(|gp| gp.canonical()).expect("angle form is Gaussian");
        let d = dilation_from_angles(&ap);
        unitarity = unitarity.max(d.unitarity_defect());
        worst = worst.max((d.system_channel().ptm() - target.ptm()).abs().max());
        let pure = (d.env_purity() - 1.0).abs() <= ROUND_TRIP_TOL;
        purity_errors += usize::from(pure != (ap.q == 0.0 || ap.q == 1.0));
    }
    outcome(
        worst <= 1e-10 && purity_errors == 0 && unitarity <= 1e-12,
        format!("200 dilations, max ptm error {worst:.2e} (tol 1e-10), unitarity defect {unitarity:.1e}, {purity_errors} purity mismatches"),
    )
}

fn degradability() -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    let mut expect = |name: ChannelName, p: Params, allowed: &[VerdictKind], needs_note: bool| {
        let report = analyze(name, &p).expect("catalog channel analyzes");
        let g = report.gaussian.as_ref().expect("Gaussian catalog channel");
        let v = g.verdict.as_ref().expect("verdict present");
        let ch = QubitChannel::canonical(report.canonical());
        let comp = &g.dilation.as_ref().unwrap().complementary;
        checked += 1;
        if !allowed.contains(&v.kind) {
            failures.push(format!("{name} {p:?}: {:?}", v.kind));
        }
        if !verify_verdict(v, &ch, comp) {
            failures.push(format!("{name} {p:?}: witness does not re-verify"));
        }
        if needs_note && !report.notes.iter().any(|n| n.contains("null quantum capacity")) {
            failures.push(format!("{name} {p:?}: null-capacity note missing"));
        }
    };
    let wd = [VerdictKind::WeaklyDegradable];
    for k in 0..=20 {
        let s = k as f64 / 20.0;
        expect(ChannelName::BitFlip, params(&[("s", s)]), &wd, false);
        expect(ChannelName::BitPhaseFlip, params(&[("s", s)]), &wd, false);
    }
    for n in [0.55, 0.75, 0.9] {
        expect(ChannelName::AmplitudeDamping, params(&[("n", n)]), &wd, false);
    }
    for n in [0.1, 0.25, 0.45] {
        expect(ChannelName::AmplitudeDamping, params(&[("n", n)]), &[VerdictKind::AntiDegradable], false);
    }
    for s in [0.2, 0.5, 0.8] {
        for n in [0.5, 0.55, 0.75, 0.9] {
            expect(ChannelName::GeneralizedAmplitudeDamping, params(&[("n", n), ("s", s)]), &wd, false);
        }
        for n in [0.1, 0.25, 0.45] {
            expect(
                ChannelName::GeneralizedAmplitudeDamping,
                params(&[("n", n), ("s", s)]),
                &[VerdictKind::AntiDegradable, VerdictKind::NeitherCertified],
                true,
            );
        }
    }
    outcome(
        failures.is_empty(),
        if failures.is_empty() {
            format!("{checked} channels certified as claimed, all witnesses re-verified")
        } else {
            failures.join("; ")
        },
    )
}

fn phase_flip_equivalence() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut problems = Vec::new();
    for k in 0..20 {
        let s = (k as f64 + 0.5) / 20.0;
        let pf = catalog::build(ChannelName::PhaseFlip, &params(&[("s", s)])).unwrap();
        let bf = catalog::canonical(ChannelName::BitFlip, &params(&[("s", s)])).unwrap();
        match gaussian_equivalent(&pf).unwrap() {
            Some((_, eq)) => worst = worst.max(eq.canonical_params().unwrap().max_abs_diff(&bf)),
            None => problems.push(format!("phase_flip({s}) has no equivalent")),
        }
    }
    for k in 0..20 {
        let s = 0.05 + 0.9 * (k as f64 + 0.5) / 20.0;
        let dep = catalog::build(ChannelName::Depolarizing, &params(&[("s", s)])).unwrap();
        if gaussian_equivalent(&dep).unwrap().is_some() {
            problems.push(format!("depolarizing({s:.3}) has an equivalent"));
        }
    }
    let ok = problems.is_empty() && worst <= 1e-12;
    outcome(
        ok,
        if problems.is_empty() {
            format!("20 phase flips map to bit_flip(s) (max error {worst:.1e}); 20 depolarizing channels have none")
        } else {
            problems.join("; ")
        },
    )
}

fn gen(g: Generator) -> GrassmannElement {
    GrassmannElement::generator(g)
}

/// Restricts an element to the `ξ` pair.
fn xi_only(x: &GrassmannElement) -> GrassmannElement {
    let mut out = GrassmannElement::zero();
    for m in Monomial::all().filter(|m| !m.contains(Generator::Zeta) && !m.contains(Generator::ZetaStar)) {
        out.set_coefficient(m, x.coefficient(m));
    }
    out
}

fn sift(f_xi: &GrassmannElement) -> GrassmannElement {
    let delta = delta_pair(&(gen(Generator::Zeta) - gen(Generator::Xi))).unwrap();
    integrate_pair(&(f_xi.relabel_xi_to_zeta() * delta))
}

fn algebra_laws() -> Outcome {
    let mut failures = Vec::new();
    let basis: Vec<GrassmannElement> = Monomial::all().map(|m| GrassmannElement::term(Complex64::new(1.0, 0.0), m)).collect();

    // exhaustive finite cases
    for a in Generator::ALL {
        if !(gen(a) * gen(a)).approx_eq(&GrassmannElement::zero(), 0.0) {
            failures.push(format!("{a:?}² ≠ 0"));
        }
        for b in Generator::ALL {
            if gen(a) * gen(b) != -(gen(b) * gen(a)) {
                failures.push(format!("{a:?}{b:?} does not anticommute"));
            }
        }
    }
    for x in &basis {
        for y in &basis {
            for z in &basis {
                if (*x * *y) * *z != *x * (*y * *z) {
                    failures.push("associativity fails on monomials".to_string());
                }
            }
        }
    }
    for m in Monomial::all().filter(|m| !m.contains(Generator::Zeta) && !m.contains(Generator::ZetaStar)) {
        let f = GrassmannElement::term(Complex64::new(1.0, 0.0), m);
        if !sift(&f).approx_eq(&f, 0.0) {
            failures.push(format!("sifting fails on {}", m.label()));
        }
    }

    // 1000 random cases
    let mut rng = sampling::rng(8);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let (x, y, z) = (random_element(&mut rng), random_element(&mut rng), random_element(&mut rng));
        worst = worst.max(((x * y) * z).max_abs_diff(&(x * (y * z))));
        let (u, v) = (random_linear(&mut rng), random_linear(&mut rng));
        worst = worst.max((u * v).max_abs_diff(&-(v * u)));
        worst = worst.max((u * u).max_abs_diff(&GrassmannElement::zero()));
        let f = xi_only(&x);
        worst = worst.max(sift(&f).max_abs_diff(&f));
    }
    if worst > 1e-12 {
        failures.push(format!("random cases deviate by {worst:.2e}"));
    }
    outcome(
        failures.is_empty(),
        if failures.is_empty() {
            format!("exhaustive monomial cases and 1000 random cases hold (max deviation {worst:.1e})")
        } else {
            failures.join("; ")
        },
    )
}

/// Name, check, runtime budget.
type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("calibration", calibration, Some(Duration::from_secs(1))),
        ("golden Green functions", golden_green, Some(Duration::from_secs(5))),
        ("master oracle equivalence", oracle_equivalence, Some(Duration::from_secs(30))),
        ("Gaussianity criterion", gaussianity, None),
        ("dilation soundness", dilation_soundness, None),
        ("degradability reproduction", degradability, Some(Duration::from_secs(10))),
        ("phase-flip equivalence", phase_flip_equivalence, None),
        ("algebra laws", algebra_laws, None),
    ];
    let mut all_passed = true;
    for (i, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut result = run();
        let elapsed = start.elapsed();
        if let Some(limit) = budget {
            if elapsed > *limit {
                result.passed = false;
                result.detail.push_str(&format!("; exceeded {limit:?}"));
            }
        }
        all_passed &= result.passed;
        println!(
            "criterion {} {:<28} {} [{:.3}s] {}",
            i + 1,
            name,
            if result.passed { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            result.detail
        );
    }
    if all_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
