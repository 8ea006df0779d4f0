use proptest::prelude::*;
use raman_nc::distributions::*;
use raman_nc::ModeId::*;

fn normalized(d: &CountDistribution) -> bool {
    let s = d.total();
    d.mass.iter().all(|&m| m >= 0.0) && s + d.tail_bound >= 1.0 - 1e-12 && s <= 1.0 + 1e-12
}

#[test]
fn joint_sv_examples() {
    let d = joint_number_sv(0.1, 40).unwrap();
    assert!((d.p2(0, 0) - 1.0 / 1.1).abs() < 1e-12);
    assert_eq!(d.p2(1, 0), 0.0);
    assert_eq!(d.mass_where(|a, b| a != b), 0.0);
    let tiny = joint_number_sv(1e-9, 5).unwrap();
    assert!((tiny.p2(0, 0) - 1.0).abs() < 1e-8);
    assert!(joint_number_sv(0.0, 5).is_err());
    assert!(normalized(&d));
}

#[test]
fn joint_lv_examples() {
    let d = joint_number_lv(0.11, -0.01, 40).unwrap();
    assert!((d.p2(0, 0) - 1.0 / 1.11).abs() < 1e-12);
    assert_eq!(d.mass_where(|nl, nv| nl > nv), 0.0);
    assert!(normalized(&d));
    let flat = joint_number_lv(0.11, -1e-14, 40).unwrap();
    assert!(flat.mass_where(|nl, _| nl == 0) > 1.0 - 1e-12);
    assert!(joint_number_lv(0.11, 0.01, 10).is_err());
    assert!(joint_number_lv(0.11, -0.11, 10).is_err());
}

#[test]
fn quasi_sv_examples() {
    let spec = QuasiDistributionSpec::sv_spontaneous(0.1, 0.7).unwrap();
    assert!((spec.b_eff - 0.25).abs() < 1e-15);
    assert!((spec.k_eff + 0.0475).abs() < 1e-12);
    let v = quasi_intensity_sv(0.0, 0.0, &spec).unwrap();
    let expect = 1.0 / (std::f64::consts::PI * 0.25 * 0.0475f64.sqrt());
    assert!((v - expect).abs() < 1e-9 && v > 0.0);
    let mut min = f64::INFINITY;
    for a in 0..61 {
        for b in 0..61 {
            min = min.min(quasi_intensity_sv(a as f64 * 0.05, b as f64 * 0.05, &spec).unwrap());
        }
    }
    assert!(min < 0.0);
    let regular = QuasiDistributionSpec::sv_spontaneous(0.1, 0.0).unwrap();
    assert!(!regular.oscillatory);
    assert!(quasi_intensity_sv(0.0, 0.0, &regular).is_err());
}

#[test]
fn quasi_lv_examples() {
    let (bl, bv) = (0.01, 0.11);
    let v = quasi_intensity_lv(0.0, 0.0, bl, bv).unwrap();
    let expect = 1.0 / (std::f64::consts::PI * (bl * bv).sqrt()) / bl.sqrt();
    assert!((v - expect).abs() < 1e-9 * expect);
    let mut min = f64::INFINITY;
    for a in 0..61 {
        for b in 0..61 {
            min = min.min(quasi_intensity_lv(a as f64 * 0.05, b as f64 * 0.05, bl, bv).unwrap());
        }
    }
    assert!(min < 0.0);
    // along W_L = 0 the sine argument is -W_V sqrt(B_L/B_V)/sqrt(B_L): lobes alternate in sign
    let a = 1.0 / bv.sqrt();
    let lobe = |k: f64| quasi_intensity_lv(0.0, (k + 0.5) * std::f64::consts::PI / a, bl, bv).unwrap();
    assert!(lobe(0.0) > 0.0 && lobe(1.0) < 0.0 && lobe(2.0) > 0.0);
    assert!(quasi_intensity_lv(0.0, 0.0, 0.0, 0.1).is_err());
}

#[test]
fn threshold_examples() {
    let exact = threshold_ordering((S, V), 0.1, 0.1, -0.1).unwrap();
    assert!((exact - (1.2 - 0.44f64.sqrt())).abs() < 1e-12);
    assert!((exact - 0.5367).abs() < 1e-4);
    let simple = threshold_ordering_sv_simplified(0.1).unwrap();
    assert!((simple - 0.5675).abs() < 1e-4);
    assert!((threshold_ordering_lv_simplified(0.1, 0.1, 10.0, 1.0).unwrap() - 0.9).abs() < 1e-9);
    assert!((threshold_ordering((L, V), 0.2, 0.3, 0.0).unwrap() - 1.0).abs() < 1e-15);
    assert!(threshold_ordering((S, V), 0.1, 0.1, 0.5).is_err());
    assert!(threshold_ordering((S, S), 0.1, 0.1, -0.1).is_err());
}

#[test]
fn fano_examples() {
    assert!((conditional_fano_l(0.01, 0.11).unwrap() - 0.9090909).abs() < 1e-6);
    assert_eq!(conditional_fano_l(0.0, 0.11).unwrap(), 1.0);
    assert!(conditional_fano_l(0.2, 0.11).is_err());
    assert!((conditional_fano_v(1, 0.01, 0.11).unwrap() - 0.1816).abs() < 1e-4);
    let r = 1.11 / 1.01;
    assert!((conditional_fano_v(0, 0.01, 0.11).unwrap() - r).abs() < 1e-12);
    let below = (1..=10).all(|n| conditional_fano_v(n, 0.01, 0.11).unwrap() < 1.0);
    assert!(below);
}

#[test]
fn conditional_examples() {
    let d = conditional_number(Conditioning::LGivenV, 0, 0.01, 0.11, 10).unwrap();
    assert_eq!(d.mass, vec![1.0]);
    let d = conditional_number(Conditioning::LGivenV, 5, 0.01, 0.11, 10).unwrap();
    assert!((d.total() - 1.0).abs() < 1e-14);
    let d = conditional_number(Conditioning::VGivenL, 0, 0.01, 0.11, 60).unwrap();
    assert!((d.p(0) - 1.01 / 1.11).abs() < 1e-12);
    assert!(normalized(&d));
    assert!(conditional_number(Conditioning::VGivenL, 0, 0.2, 0.11, 10).is_err());
}

#[test]
fn difference_poisson_r_examples() {
    let d = difference_number(0.01, 0.11, 40).unwrap();
    assert!((d.distribution.p(0) - 1.0 / 1.1).abs() < 1e-12);
    assert!((d.variance - 0.11).abs() < 1e-12);
    let near = difference_number(0.1, 0.1 + 1e-12, 5).unwrap();
    assert!((near.distribution.p(0) - 1.0).abs() < 1e-11);
    assert!(difference_number(0.11, 0.11, 5).is_err());

    let p = poisson_reference(0.01, 0.11, 30).unwrap();
    assert!((p.p(0) - (-0.12f64).exp()).abs() < 1e-15);
    let (m, v) = p.mean_variance();
    assert!((m / v - 1.0).abs() < 1e-10);
    let z = poisson_reference(0.0, 0.0, 5).unwrap();
    assert_eq!(z.p(0), 1.0);
    assert!(poisson_reference(-0.1, 0.0, 5).is_err());

    assert!((subshot_r(0.01, 0.11).unwrap() - 0.8333333).abs() < 1e-6);
    assert_eq!(subshot_r(0.0, 0.11).unwrap(), 1.0);
    assert_eq!(subshot_r(0.1, 0.1).unwrap(), 0.0);
    assert!(subshot_r(0.0, 0.0).is_err());
}

#[test]
fn default_cutoff_reaches_tail_target() {
    let b: f64 = 0.11;
    let n = default_n_max(b / (1.0 + b));
    let d = joint_number_lv(b, -0.01, n).unwrap();
    assert!(d.tail_bound < 1e-12);
    assert!((d.total() - 1.0).abs() < 1e-11);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn every_distribution_is_normalized(bl in 1e-4..0.5f64, extra in 1e-4..1.0f64, n_max in 0usize..60, given in 0usize..8) {
        let bv = bl + extra;
        let k = -bl;
        prop_assert!(normalized(&joint_number_sv(bv, n_max).unwrap()));
        prop_assert!(normalized(&joint_number_lv(bv, k, n_max).unwrap()));
        prop_assert!(normalized(&conditional_number(Conditioning::LGivenV, given, bl, bv, n_max).unwrap()));
        prop_assert!(normalized(&conditional_number(Conditioning::VGivenL, given, bl, bv, n_max).unwrap()));
        prop_assert!(normalized(&difference_number(bl, bv, n_max).unwrap().distribution));
        prop_assert!(normalized(&poisson_reference(bl, bv, n_max).unwrap()));
    }

    #[test]
    fn joint_lv_structure(bl in 1e-3..0.5f64, extra in 1e-3..1.0f64) {
        let bv = bl + extra;
        let n = 80;
        let joint = joint_number_lv(bv, -bl, n).unwrap();
        prop_assert_eq!(joint.mass_where(|a, b| a > b), 0.0);
        let diff = difference_number(bl, bv, n).unwrap().distribution;
        for nv in 0..30usize {
            let marginal: f64 = (0..=nv).map(|nl| joint.p2(nl, nv)).sum();
            let geo = bv.powi(nv as i32) / (1.0 + bv).powi(nv as i32 + 1);
            prop_assert!((marginal - geo).abs() < 1e-12);
            let cond = conditional_number(Conditioning::LGivenV, nv, bl, bv, n).unwrap();
            for nl in 0..=nv {
                prop_assert!((joint.p2(nl, nv) - geo * cond.p(nl)).abs() < 1e-12);
            }
        }
        for m in 0..20usize {
            let pushed: f64 = (0..=n - m).map(|nl| joint.p2(nl, nl + m)).sum();
            prop_assert!((pushed - diff.p(m)).abs() < 1e-12, "{} {} {}", m, pushed, diff.p(m));
        }
    }

    #[test]
    fn conditional_fano_consistency(bl in 1e-4..0.5f64, extra in 1e-4..1.0f64, nv in 1usize..40) {
        let bv = bl + extra;
        let f = conditional_fano_l(bl, bv).unwrap();
        prop_assert!(f < 1.0);
        let d = conditional_number(Conditioning::LGivenV, nv, bl, bv, 0).unwrap();
        let (m, v) = d.mean_variance();
        prop_assert!((v / m - f).abs() < 1e-10);
    }

    #[test]
    fn conditional_fano_v_is_ratio_of_moments(bl in 1e-3..0.3f64, extra in 1e-3..0.5f64, nl in 0usize..6) {
        let bv = bl + extra;
        let d = conditional_number(Conditioning::VGivenL, nl, bl, bv, 400).unwrap();
        let (m, v) = d.mean_variance();
        prop_assert!((v / m - conditional_fano_v(nl, bl, bv).unwrap()).abs() < 1e-8);
    }

    #[test]
    fn quasi_sv_symmetric(a in 0.0..3.0f64, b in 0.0..3.0f64, s in 0.3..0.95f64, bs in 0.05..0.3f64) {
        let spec = QuasiDistributionSpec::sv_spontaneous(bs, s).unwrap();
        prop_assume!(spec.oscillatory);
        let x = quasi_intensity_sv(a, b, &spec).unwrap();
        let y = quasi_intensity_sv(b, a, &spec).unwrap();
        prop_assert!((x - y).abs() <= 1e-12 * (1.0 + x.abs()));
    }
}
