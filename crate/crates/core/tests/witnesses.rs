mod common;

use common::*;
use proptest::prelude::*;
use raman_nc::catalog::{self, catalog, closed_form_printed, closed_form_witness, Limit, Regime, Status, Target};
use raman_nc::model::*;
use raman_nc::witnesses::*;
use raman_nc::{ModeId::*, ModePair};
use std::f64::consts::PI;

fn fig1() -> ScenarioParams {
    ScenarioParams::coherent(1.0, 0.9, 0.1, [10.0, 9.0, 1.0, 0.01])
}

fn value(s: &ScenarioParams, id: &str) -> f64 {
    general_witness(s, id.parse().unwrap()).unwrap().value
}

#[test]
fn zero_coefficients_sit_on_thresholds() {
    let s = ScenarioParams::coherent(1.0, 0.9, 0.0, [1.0, 2.0, 0.5, 0.3]);
    let (k, amp) = model_for(&s).unwrap();
    assert_eq!(lambda_single(&k, L).value, 1.0);
    assert_eq!(lambda_pair(&k, S, A).unwrap().value, 1.0);
    assert_eq!(entanglement_k(&k, S, V, Sign::Plus).unwrap().value, 0.0);
    assert_eq!(subshot_c(&k, L, V).unwrap().value, 0.0);
    assert_eq!(sum_diff_variance(&k, &amp, S, V, Sign::Minus).unwrap().value, 0.0);
    assert_eq!(e_pair(&k, S, V).unwrap().value, 0.0);
    assert!(!lambda_single(&k, L).nonclassical);
}

#[test]
fn same_mode_pairs_are_rejected() {
    let (k, amp) = model_for(&fig1()).unwrap();
    assert!(lambda_pair(&k, S, S).is_err());
    assert!(entanglement_k(&k, V, V, Sign::Minus).is_err());
    assert!(subshot_c(&k, L, L).is_err());
    assert!(sum_diff_variance(&k, &amp, A, A, Sign::Plus).is_err());
    assert!(e_pair(&k, A, A).is_err());
}

#[test]
fn coherent_examples() {
    let s = fig1();
    assert!((value(&s, "lambda_L") - 0.8542).abs() < 1e-12);
    assert!((value(&s, "Kp_SV") + 1.0).abs() < 1e-12);
    assert!((value(&s, "Km_SV") + 1.0).abs() < 1e-12);
    assert!((value(&s, "Kp_LV") + 0.0081).abs() < 1e-12);
    assert!((value(&s, "E_SV") + 1.0).abs() < 1e-12);

    let mut s1 = fig1();
    s1.chi = 1.0;
    assert!((value(&s1, "lambda_SA") - 1.0).abs() < 1e-12);
    let mut s2 = ScenarioParams::coherent(1.0, 1.2, 0.1, [10.0, 0.0, 0.0, 0.0]);
    let v = general_witness(&s2, "lambda_SA".parse().unwrap()).unwrap();
    assert!((v.value - 0.8).abs() < 1e-12 && v.nonclassical);
    s2.chi = 1.0;
    for t in [0.01, 0.05, 0.3] {
        s2.t = t;
        assert!((value(&s2, "lambda_SA") - 1.0).abs() < 1e-12);
    }

    let sp = ScenarioParams::coherent(1.0, 0.9, 0.1, [10.0, 0.0, 0.0, 0.0]);
    assert!((value(&sp, "Wm_SV") + 2.0).abs() < 1e-12);

    let mut f2 = fig1();
    f2.set_theta1(PI / 6.0);
    f2.set_theta2(PI / 6.0);
    assert!((value(&f2, "Wp_LA") + 16.2).abs() < 1e-9);
}

#[test]
fn chaotic_examples() {
    let coh = ScenarioParams::coherent(1.0, 0.9, 0.1, [10.0, 0.0, 0.0, 0.0]);
    let cha = ScenarioParams::chaotic(1.0, 0.9, 0.1, [10.0, 0.0, 0.0, 0.0], 2.0);
    assert!((value(&cha, "Kp_SV") - 3.0 * value(&coh, "Kp_SV")).abs() < 1e-12);

    let c1 = ScenarioParams::chaotic(1.0, 0.9, 0.1, [10.0, 0.0, 0.0, 0.0], 1.0);
    assert!((value(&c1, "C_AV") + 0.62).abs() < 1e-12);
    // B_A B_V with the anomalous AV coefficient absent
    assert!((value(&c1, "E_AV") - 0.81).abs() < 1e-12);
    let (k, _) = model_for(&c1).unwrap();
    assert!(e_pair_caption(&k, A, V).unwrap().abs() < 1e-12);

    let mut r = rng(11);
    for _ in 0..100 {
        let s = random_chaotic(&mut r);
        let cf = closed_form_witness(&s, "chaotic:lambda_L").unwrap();
        assert!(close(value(&s, "lambda_L"), cf, 1e-10));
    }
}

#[test]
fn closed_form_examples() {
    let s = ScenarioParams::coherent(1.0, 0.9, 0.1, [10.0, 0.0, 0.0, 0.0]);
    assert!((closed_form_witness(&s, "coherent:Kp_SV").unwrap() + 1.0).abs() < 1e-12);
    let mut b = s.clone();
    b.chi = 1.0;
    assert_eq!(closed_form_witness(&b, "coherent:lambda_SA").unwrap(), 1.0);
    let c = ScenarioParams::chaotic(1.0, 0.9, 0.1, [10.0, 0.0, 0.0, 0.0], 0.0);
    let a = closed_form_witness(&c, "chaotic:lambda_SA").unwrap();
    assert!((a - closed_form_witness(&s, "coherent:lambda_SA").unwrap()).abs() < 1e-15);
    assert!((a - (1.0 + 0.01 * 100.0 * 0.1)).abs() < 1e-12);
    assert!(closed_form_witness(&s, "coherent:nope").is_err());
}

#[test]
fn identity_c_equals_twice_k_coherent() {
    let mut r = rng(5);
    for _ in 0..1000 {
        let s = random_coherent(&mut r);
        for pair in ["LV", "SV"] {
            let c = value(&s, &format!("C_{pair}"));
            let kp = value(&s, &format!("Kp_{pair}"));
            let km = value(&s, &format!("Km_{pair}"));
            assert!(close(c, 2.0 * kp, 1e-10) && close(c, 2.0 * km, 1e-10), "{pair}: {c} {kp} {km}");
        }
        for p in ModePair::ALL {
            let kp = value(&s, &format!("Kp_{p}"));
            let km = value(&s, &format!("Km_{p}"));
            assert!(close(kp, km, 1e-10), "{p}");
        }
    }
}

#[test]
fn lambda_pair_is_symmetric() {
    let mut r = rng(6);
    for _ in 0..100 {
        let s = random_coherent(&mut r);
        let (k, _) = model_for(&s).unwrap();
        for p in ModePair::ALL {
            let (i, j) = p.modes();
            assert_eq!(lambda_pair(&k, i, j).unwrap().value, lambda_pair(&k, j, i).unwrap().value);
        }
    }
}

fn in_regime(e: &catalog::CatalogEntry, r: &mut impl rand::Rng) -> ScenarioParams {
    let mut s = match e.phonon {
        PhononInput::Coherent => random_coherent(r),
        PhononInput::Thermal => random_chaotic(r),
    };
    e.regime.project(&mut s);
    s
}

#[test]
fn exact_catalog_entries_match_general_path() {
    let mut r = rng(7);
    for e in catalog().iter().filter(|e| e.status == Status::Exact) {
        for _ in 0..300 {
            let s = in_regime(e, &mut r);
            let cf = closed_form_witness(&s, e.id).unwrap();
            let g = e.general(&s).unwrap();
            assert!(close(g, cf, 1e-10), "{}: general {g} closed {cf}", e.id);
        }
    }
}

#[test]
fn printed_errata_really_disagree() {
    let mut r = rng(8);
    for e in catalog().iter().filter(|e| e.is_erratum()) {
        let mut worst = 0.0f64;
        for _ in 0..50 {
            let mut s = in_regime(e, &mut r);
            s.t = 0.05;
            s.magnitude[2] = s.magnitude[2].max(0.5) + 0.3;
            if e.phonon == PhononInput::Thermal {
                s.mean_phonon = s.mean_phonon.max(0.5);
            }
            let printed = closed_form_printed(&s, e.id).unwrap();
            let good = closed_form_witness(&s, e.id).unwrap();
            worst = worst.max((printed - good).abs() / (1.0 + good.abs()));
        }
        assert!(worst > 1e-6, "{} printed form agrees after all", e.id);
    }
}

fn threshold(t: Target) -> f64 {
    match t {
        Target::Witness(id) => id.kind.threshold(),
        _ => 0.0,
    }
}

#[test]
fn approximate_entries_hold_at_leading_order() {
    let mut r = rng(9);
    for e in catalog() {
        let Status::Approximate(limit) = e.status else { continue };
        for _ in 0..50 {
            let mut s = in_regime(e, &mut r);
            s.magnitude = s.magnitude.map(|m| m.max(0.2));
            if e.phonon == PhononInput::Thermal {
                s.magnitude[3] = 0.0;
                s.mean_phonon = s.mean_phonon.max(0.2);
            }
            match limit {
                Limit::ShortTime => s.t = 1e-6 / s.g,
                Limit::StrongPump => s.magnitude[0] = 1e6,
            }
            let thr = threshold(e.target);
            let g = e.general(&s).unwrap() - thr;
            let cf = closed_form_witness(&s, e.id).unwrap() - thr;
            assert!((g / cf - 1.0).abs() < 1e-3, "{}: ratio {}", e.id, g / cf);
        }
    }
}

#[test]
fn sign_structure_of_lambda_sa() {
    let base = fig1();
    for it in 1..=100 {
        for ip in 0..100 {
            let mut s = base.clone();
            s.t = 0.001 * it as f64;
            let p = 1.0 + (ip as f64 - 50.0) * 0.01;
            s.chi = p;
            let v = value(&s, "lambda_SA") - 1.0;
            if p > 1.0 {
                assert!(v < 0.0);
            } else if p < 1.0 {
                assert!(v > 0.0);
            } else {
                assert!(v.abs() <= 1e-12);
            }
        }
    }
}

#[test]
fn summary_examples() {
    use raman_nc::scenario::find_preset;
    let fig = find_preset("fig1-coherent").unwrap();
    let table = witness_summary(&fig.scenario, &fig.grid).unwrap();
    for pair in [ModePair::LV, ModePair::SV] {
        for kind in [WitnessKind::EPair, WitnessKind::CSubshot, WitnessKind::KPlus, WitnessKind::KMinus] {
            assert_eq!(table.row(pair).class(kind), Some(SignClass::AlwaysNegative), "{pair} {kind:?}");
        }
    }
    assert_eq!(table.row(ModePair::AV).class(WitnessKind::LambdaPair), Some(SignClass::Classical));

    let zero = SummaryGrid { t: vec![0.0], ..fig.grid.clone() };
    let table = witness_summary(&fig.scenario, &zero).unwrap();
    assert!(table.rows.iter().all(|r| r.cells.iter().all(|c| c.1 == SignClass::NonConclusive)));

    let sp = find_preset("spontaneous").unwrap();
    let table = witness_summary(&sp.scenario, &sp.grid).unwrap();
    assert_eq!(table.row(ModePair::LV).class(WitnessKind::KPlus), Some(SignClass::NonConclusive));
    assert_eq!(table.row(ModePair::LV).class(WitnessKind::KMinus), Some(SignClass::NonConclusive));

    let empty = SummaryGrid::default();
    assert!(witness_summary(&fig.scenario, &empty).is_err());
}

#[test]
fn witness_ids_round_trip() {
    for id in WitnessId::all() {
        assert_eq!(id.to_string().parse::<WitnessId>().unwrap(), id);
    }
    assert_eq!("K+_VS".parse::<WitnessId>().unwrap().to_string(), "Kp_SV");
    assert!("Q_SV".parse::<WitnessId>().is_err());
    assert!("lambda_SS".parse::<WitnessId>().is_err());
}

fn rotate(s: &ScenarioParams, which: usize, c: f64) -> ScenarioParams {
    let mut o = s.clone();
    match which {
        0 => {
            o.phase[0] += c;
            o.phase[1] += c;
            o.phase[2] += c;
        }
        _ => {
            o.phase[1] += c;
            o.phase[2] -= c;
            o.phase[3] -= c;
        }
    }
    o
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn nonclassical_flag_matches_threshold(seed in any::<u64>()) {
        let mut r = rng(seed);
        let s = random_coherent(&mut r);
        for id in WitnessId::all() {
            let v = general_witness(&s, id).unwrap();
            prop_assert_eq!(v.nonclassical, v.value < v.threshold);
        }
    }

    #[test]
    fn conserved_charge_rotations_leave_witnesses_unchanged(seed in any::<u64>(), c in -3.0..3.0f64, which in 0usize..2, thermal: bool) {
        let mut r = rng(seed);
        let s = if thermal { random_chaotic(&mut r) } else { random_coherent(&mut r) };
        let o = rotate(&s, which, c);
        let (k1, a1) = model_for(&s).unwrap();
        let (k2, a2) = model_for(&o).unwrap();
        for j in raman_nc::ModeId::ALL {
            prop_assert!(close(k1.c(j).norm(), k2.c(j).norm(), 1e-12));
            prop_assert!(close(normal_variance(&k1, &a1, j), normal_variance(&k2, &a2, j), 1e-10));
        }
        for p in ModePair::ALL {
            prop_assert!(close(k1.d(p).norm(), k2.d(p).norm(), 1e-12));
            prop_assert!(close(k1.dbar(p).norm(), k2.dbar(p).norm(), 1e-12));
        }
        for id in WitnessId::all().into_iter().filter(|id| id.kind != WitnessKind::LambdaPair) {
            let (x, y) = (evaluate(id, &k1, &a1).value, evaluate(id, &k2, &a2).value);
            prop_assert!(close(x, y, 1e-10), "{} {} {}", id, x, y);
        }
    }

    #[test]
    fn chaotic_ls_plus_and_as_variances_not_both_negative(seed in any::<u64>()) {
        let mut r = rng(seed);
        let s = random_chaotic(&mut r);
        let ls = value(&s, "Wp_LS");
        let asp = value(&s, "Wp_SA");
        let asm = value(&s, "Wm_SA");
        prop_assert!(!(ls < 0.0 && (asp < 0.0 || asm < 0.0)), "{} {} {}", ls, asp, asm);
    }
}

#[test]
fn regime_projection_holds() {
    let mut r = rng(10);
    for e in catalog() {
        let s = in_regime(e, &mut r);
        assert!(e.regime.holds(&s) || e.regime == Regime::Any, "{}", e.id);
    }
}
