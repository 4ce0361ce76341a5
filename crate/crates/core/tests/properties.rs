use num_complex::Complex64;
use proptest::prelude::*;

use qcharfn::catalog::{self, ChannelName};
use qcharfn::charfunc::{char_function, state_from_char};
use qcharfn::degradability::{
    certify, classify_by_angles, dilation_from_angles, verify_verdict, weakly_complementary, PredictedKind,
    VerdictKind,
};
use qcharfn::grassmann::{delta_pair, integrate_pair, Generator, GrassmannElement, Monomial};
use qcharfn::green::{angles_from_gaussian, apply_green, detect_gaussian, green_from_canonical};
use qcharfn::qubit::{apply_channel, compose, is_cptp, ptm_from_kraus, QubitChannel};
use qcharfn::sampling::{self, random_angles, random_canonical, random_gaussian, random_state};
use qcharfn::spec::{parse_channel_spec, ChannelSpec};

fn complex() -> impl Strategy<Value = Complex64> {
    (-1.0..1.0f64, -1.0..1.0f64).prop_map(|(re, im)| Complex64::new(re, im))
}

fn element() -> impl Strategy<Value = GrassmannElement> {
    prop::array::uniform16(complex()).prop_map(GrassmannElement::from_coefficients)
}

fn linear() -> impl Strategy<Value = GrassmannElement> {
    prop::array::uniform4(complex()).prop_map(|c| {
        Generator::ALL
            .into_iter()
            .zip(c)
            .map(|(g, z)| GrassmannElement::generator(g).scale(z))
            .fold(GrassmannElement::zero(), |a, b| a + b)
    })
}

fn xi_part(x: GrassmannElement) -> GrassmannElement {
    let mut out = GrassmannElement::zero();
    for m in Monomial::all().filter(|m| !m.contains(Generator::Zeta) && !m.contains(Generator::ZetaStar)) {
        out.set_coefficient(m, x.coefficient(m));
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn product_is_associative(x in element(), y in element(), z in element()) {
        prop_assert!(((x * y) * z).max_abs_diff(&(x * (y * z))) < 1e-12);
    }

    #[test]
    fn product_distributes(x in element(), y in element(), z in element()) {
        prop_assert!((x * (y + z)).max_abs_diff(&(x * y + x * z)) < 1e-12);
    }

    #[test]
    fn odd_linear_elements_anticommute_and_square_to_zero(u in linear(), v in linear()) {
        prop_assert!((u * v).max_abs_diff(&-(v * u)) < 1e-14);
        prop_assert!((u * u).max_abs_diff(&GrassmannElement::zero()) < 1e-14);
    }

    #[test]
    fn even_part_is_central(x in element(), y in element()) {
        let e = x.even_part();
        prop_assert!((e * y).max_abs_diff(&(y * e)) < 1e-12);
    }

    #[test]
    fn grade_involution_is_multiplicative(x in element(), y in element()) {
        prop_assert!((x * y).grade_involution().max_abs_diff(&(x.grade_involution() * y.grade_involution())) < 1e-12);
    }

    #[test]
    fn delta_sifts(x in element()) {
        let f = xi_part(x);
        let delta = delta_pair(&(GrassmannElement::generator(Generator::Zeta) - GrassmannElement::generator(Generator::Xi))).unwrap();
        prop_assert!(integrate_pair(&(f.relabel_xi_to_zeta() * delta)).max_abs_diff(&f) < 1e-14);
    }

    #[test]
    fn char_function_round_trip(seed in any::<u64>()) {
        let rho = random_state(&mut sampling::rng(seed));
        let back = state_from_char(&char_function(&rho)).unwrap();
        prop_assert!(back.max_abs_diff(&rho) < 1e-15);
    }

    #[test]
    fn green_matches_dense_oracle(seed in any::<u64>()) {
        let mut rng = sampling::rng(seed);
        let p = random_canonical(&mut rng);
        let rho = random_state(&mut rng);
        let g = green_from_canonical(&p).unwrap();
        let out = state_from_char(&apply_green(&g, &char_function(&rho)).unwrap()).unwrap();
        let dense = apply_channel(&QubitChannel::canonical(p), &rho).unwrap();
        prop_assert!(out.max_abs_diff(&dense) < 1e-12);
    }

    #[test]
    fn composition_is_associative(seed in any::<u64>()) {
        let mut rng = sampling::rng(seed);
        let [a, b, c] = [0; 3].map(|_| QubitChannel::canonical(random_canonical(&mut rng)));
        let left = compose(&compose(&a, &b), &c);
        let right = compose(&a, &compose(&b, &c));
        prop_assert!((left.ptm() - right.ptm()).abs().max() < 1e-14);
    }

    #[test]
    fn green_composition_matches_ptm_product(seed in any::<u64>()) {
        let mut rng = sampling::rng(seed);
        let (p1, p2) = (random_canonical(&mut rng), random_canonical(&mut rng));
        let rho = random_state(&mut rng);
        let chi = apply_green(&green_from_canonical(&p2).unwrap(),
            &apply_green(&green_from_canonical(&p1).unwrap(), &char_function(&rho)).unwrap()).unwrap();
        let composed = compose(&QubitChannel::canonical(p2), &QubitChannel::canonical(p1));
        let dense = apply_channel(&composed, &rho).unwrap();
        prop_assert!(chi.max_abs_diff(&char_function(&dense)) < 1e-12);
    }

    #[test]
    fn gaussian_detection_matches_closed_condition(seed in any::<u64>()) {
        let p = sampling::random_mixed_family(&mut sampling::rng(seed));
        let closed = p.t[0].abs() <= 1e-10 && p.t[1].abs() <= 1e-10 && (p.lambda[2] - p.lambda[0] * p.lambda[1]).abs() <= 1e-10;
        prop_assert_eq!(detect_gaussian(&green_from_canonical(&p).unwrap()).is_some(), closed);
    }

    #[test]
    fn angles_round_trip_through_dilation(seed in any::<u64>()) {
        let p = random_gaussian(&mut sampling::rng(seed));
        let gp = detect_gaussian(&green_from_canonical(&p).unwrap()).unwrap();
        let ap = angles_from_gaussian(&gp).unwrap();
        prop_assert!(ap.q >= 0.5 && ap.q <= 1.0);
        prop_assert!(ap.theta >= 0.0 && ap.theta <= std::f64::consts::FRAC_PI_2 + 1e-15);
        let rebuilt = dilation_from_angles(&ap).system_channel();
        prop_assert!((rebuilt.ptm() - p.ptm()).abs().max() < 1e-10);
    }

    #[test]
    fn certificates_reverify(seed in any::<u64>()) {
        let d = dilation_from_angles(&random_angles(&mut sampling::rng(seed)));
        let (ch, comp) = (d.system_channel(), weakly_complementary(&d));
        let v = certify(&ch, &comp);
        prop_assert!(verify_verdict(&v, &ch, &comp));
        if let Some(w) = &v.witness {
            prop_assert!(is_cptp(w).min_eigenvalue >= -1e-9);
        }
    }

    #[test]
    fn prediction_agrees_with_certificate_for_pure_environments(seed in any::<u64>()) {
        let mut rng = sampling::rng(seed);
        let mut ap = random_angles(&mut rng);
        ap.q = if seed % 2 == 0 { 0.0 } else { 1.0 };
        let pred = classify_by_angles(&ap);
        prop_assume!(pred.ratio.is_some_and(|r| r.abs() >= 0.05));
        let d = dilation_from_angles(&ap);
        let v = certify(&d.system_channel(), &weakly_complementary(&d));
        let expected = match pred.kind {
            PredictedKind::WeaklyDegradable => VerdictKind::WeaklyDegradable,
            _ => VerdictKind::AntiDegradable,
        };
        prop_assert_eq!(v.kind, expected);
    }

    #[test]
    fn canonical_spec_round_trips(seed in any::<u64>()) {
        let p = random_canonical(&mut sampling::rng(seed));
        let json = serde_json::to_string(&ChannelSpec::canonical(&p).to_document()).unwrap();
        let back = parse_channel_spec(&json).unwrap().to_channel().unwrap().canonical_params().unwrap();
        prop_assert!(back.max_abs_diff(&p) < 1e-12);
    }

    #[test]
    fn kraus_and_canonical_forms_agree(x in 0.0..=1.0f64, y in 0.0..=1.0f64) {
        for name in ChannelName::ALL {
            let params = if name == ChannelName::GeneralizedAmplitudeDamping {
                [("n".to_string(), x), ("s".to_string(), y)].into()
            } else {
                [(name.param_names()[0].to_string(), x)].into()
            };
            let from_kraus = ptm_from_kraus(&catalog::kraus(name, &params).unwrap()).unwrap();
            let stated = catalog::canonical(name, &params).unwrap().ptm();
            prop_assert!((from_kraus - stated).abs().max() < 1e-14);
        }
    }
}
