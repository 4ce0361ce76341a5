use qcharfn::analysis::{analyze, render_text, verdict_matches_claim};
use qcharfn::catalog::{self, claimed_verdict, ChannelName, Params};
use qcharfn::charfunc::{char_function, state_from_char};
use qcharfn::green::{apply_green, green_from_canonical};
use qcharfn::qubit::{apply_channel, CanonicalParams};
use qcharfn::sampling::{self, random_state};

fn params(name: ChannelName, x: f64, y: f64) -> Params {
    let names = name.param_names();
    names.iter().zip([x, y]).map(|(k, v)| (k.to_string(), v)).collect()
}

fn grid() -> impl Iterator<Item = f64> {
    (1..40).map(|k| k as f64 / 40.0)
}

#[test]
fn catalog_channels_agree_with_dense_action() {
    let mut rng = sampling::rng(11);
    for name in ChannelName::ALL {
        for x in grid() {
            let p = params(name, x, 1.0 - x);
            let ch = catalog::build(name, &p).unwrap();
            let g = green_from_canonical(&ch.canonical_params().unwrap()).unwrap();
            for _ in 0..4 {
                let rho = random_state(&mut rng);
                let out = state_from_char(&apply_green(&g, &char_function(&rho)).unwrap()).unwrap();
                let dense = apply_channel(&ch, &rho).unwrap();
                assert!(out.max_abs_diff(&dense) < 1e-12, "{name} {p:?}");
            }
        }
    }
}

#[test]
fn verdicts_match_claims_across_ranges() {
    let mut checked = 0;
    for name in ChannelName::ALL {
        for x in grid() {
            for y in [0.2, 0.5, 0.8, 1.0] {
                let p = params(name, x, y);
                let Some(claim) = claimed_verdict(name, &p).unwrap() else { continue };
                let report = analyze(name, &p).unwrap();
                let verdict = report.verdict().expect("claimed channels get a verdict");
                assert!(verdict_matches_claim(verdict.kind, claim), "{name} {p:?}: {:?} vs {claim:?}", verdict.kind);
                checked += 1;
            }
        }
    }
    assert!(checked > 300);
}

#[test]
fn phase_flip_is_handled_through_its_equivalent() {
    for s in grid() {
        let report = analyze(ChannelName::PhaseFlip, &params(ChannelName::PhaseFlip, s, 0.0)).unwrap();
        assert!(!report.is_gaussian);
        let eq = report.equivalent.as_ref().expect("relabeled Gaussian form");
        assert_eq!(eq.identified.as_ref().map(|n| n.name.as_str()), Some("bit_flip"));
    }
}

#[test]
fn depolarizing_has_no_gaussian_form() {
    let report = analyze(ChannelName::Depolarizing, &params(ChannelName::Depolarizing, 0.5, 0.0)).unwrap();
    assert!(!report.is_gaussian);
    assert!(report.equivalent.is_none());
    assert!(report.notes.iter().any(|n| n.contains("not Gaussian")));
}

#[test]
fn green_pretty_print_is_stable() {
    let cases = [
        (ChannelName::BitFlip, 0.75, 0.0, "ζζ* + 0.25·ζξ - 0.75·ζξ* + 0.75·ζ*ξ - 0.25·ζ*ξ* + 0.5·ξξ*"),
        (ChannelName::PhaseFlip, 0.3, 0.0, "ζζ* + 0.4·ζξ* - 0.4·ζ*ξ + ξξ*"),
        (ChannelName::BitPhaseFlip, 0.25, 0.0, "ζζ* - 0.75·ζξ - 0.25·ζξ* + 0.25·ζ*ξ + 0.75·ζ*ξ* - 0.5·ξξ*"),
        (ChannelName::Depolarizing, 0.5, 0.0, "ζζ* - 0.5·ζξ* + 0.5·ζ*ξ + 0.5·ξξ*"),
        (ChannelName::AmplitudeDamping, 0.64, 0.0, "ζζ* - 0.8·ζξ* + 0.8·ζ*ξ + 0.64·ξξ* + 0.18·ζζ*ξξ*"),
        (
            ChannelName::GeneralizedAmplitudeDamping,
            0.64,
            0.25,
            "ζζ* - 0.8·ζξ* + 0.8·ζ*ξ + 0.64·ξξ* - 0.09·ζζ*ξξ*",
        ),
    ];
    for (name, x, y, expected) in cases {
        let g = green_from_canonical(&catalog::canonical(name, &params(name, x, y)).unwrap()).unwrap();
        assert_eq!(g.to_string(), expected, "{name}");
    }
}

#[test]
fn complex_coefficients_print_in_parentheses() {
    let g = green_from_canonical(&CanonicalParams::new([0.1, -0.2, 0.15], [0.5, 0.4, 0.3])).unwrap();
    let s = g.to_string();
    assert!(s.ends_with("(0.05+0.1i)·ζζ*ξ + (-0.05+0.1i)·ζζ*ξ*"), "{s}");
}

#[test]
fn text_report_names_channel_and_verdict() {
    let text = render_text(&analyze(ChannelName::AmplitudeDamping, &params(ChannelName::AmplitudeDamping, 0.75, 0.0)).unwrap());
    assert!(text.starts_with("channel: amplitude_damping (n=0.75)"));
    assert!(text.contains("verdict: WeaklyDegradable"));
}
