mod common;

use common::*;
use num_complex::Complex64 as C64;
use proptest::prelude::*;
use raman_nc::model::*;
use raman_nc::{ModeId::*, ModePair};

fn fig1() -> ScenarioParams {
    ScenarioParams::coherent(1.0, 0.9, 0.1, [10.0, 9.0, 1.0, 0.01])
}

#[test]
fn coherent_example_values() {
    let k = coherent_coefficients(&fig1(), Picture::Interaction).unwrap();
    assert!((k.b(S) - 1.0).abs() < 1e-12);
    assert_eq!(k.b(A), 0.0);
    assert!((k.b(L) - 0.0081).abs() < 1e-12);
    assert!((k.b(V) - 1.0081).abs() < 1e-12);
}

#[test]
fn coherent_rejects_thermal_and_negative() {
    let s = ScenarioParams::chaotic(1.0, 0.9, 0.1, [1.0; 4], 0.5);
    assert!(coherent_coefficients(&s, Picture::Interaction).is_err());
    let mut s = fig1();
    s.magnitude[1] = -1.0;
    assert!(coherent_coefficients(&s, Picture::Interaction).is_err());
    let s = ScenarioParams::chaotic(1.0, 0.9, 0.1, [1.0; 4], -0.5);
    assert!(chaotic_coefficients(&s, Picture::Interaction).is_err());
}

#[test]
fn chaotic_example_values() {
    let s = ScenarioParams::chaotic(1.0, 0.9, 0.1, [10.0, 0.0, 0.0, 0.0], 2.0);
    let k = chaotic_coefficients(&s, Picture::Interaction).unwrap();
    assert!((k.b(S) - 3.0).abs() < 1e-12);
    assert!((k.dbar(ModePair::AV).norm() - 1.8).abs() < 1e-12);
    let s0 = ScenarioParams::chaotic(1.0, 0.9, 0.1, [3.0, 1.0, 2.0, 0.0], 0.0);
    assert_eq!(chaotic_coefficients(&s0, Picture::Interaction).unwrap().b(A), 0.0);
}

#[test]
fn normal_variance_examples() {
    let zero = ScenarioParams::coherent(1.0, 0.9, 0.0, [1.0, 2.0, 3.0, 0.5]);
    let k = coherent_coefficients(&zero, Picture::Interaction).unwrap();
    let amp = MeanAmplitudes::new(&zero, Picture::Interaction);
    for j in raman_nc::ModeId::ALL {
        assert_eq!(normal_variance(&k, &amp, j), 0.0);
    }

    // chaotic S: 2 tau^2 I_L I_S (n+1) = 2 * 0.01 * 100 * 81 = 162
    let s = ScenarioParams::chaotic(1.0, 0.9, 0.1, [10.0, 9.0, 0.0, 0.0], 0.0);
    let k = chaotic_coefficients(&s, Picture::Interaction).unwrap();
    let amp = MeanAmplitudes::new(&s, Picture::Interaction);
    assert!((normal_variance(&k, &amp, S) - 162.0).abs() < 1e-9);

    let mut s = ScenarioParams::chaotic(1.0, 0.9, 1e-7, [10.0, 9.0, 1.0, 0.0], 1.5);
    s.phase = [0.3, 1.1, 2.0, 0.0];
    let k = chaotic_coefficients(&s, Picture::Interaction).unwrap();
    let amp = MeanAmplitudes::new(&s, Picture::Interaction);
    assert!((normal_variance(&k, &amp, V) / 2.25 - 1.0).abs() < 1e-6);
}

#[test]
fn cross_variance_examples() {
    let s = ScenarioParams::coherent(1.0, 0.9, 0.2, [0.0; 4]);
    let k = coherent_coefficients(&s, Picture::Interaction).unwrap();
    let amp = MeanAmplitudes::new(&s, Picture::Interaction);
    assert_eq!(cross_variance(&k, &amp, L, V).unwrap(), 0.0);
    assert!(cross_variance(&k, &amp, S, S).is_err());

    let mut s = ScenarioParams::chaotic(1.0, 0.9, 0.1, [10.0, 9.0, 1.0, 0.0], 1.0);
    s.phase = [0.4, 1.3, 2.1, 0.0];
    let k = chaotic_coefficients(&s, Picture::Interaction).unwrap();
    let amp = MeanAmplitudes::new(&s, Picture::Interaction);
    let (tau, p) = (0.1, 0.9);
    let expect = -tau * tau * p * 100.0 * 1.0 * 9.0 * (s.theta2() - s.theta1()).cos() * 3.0;
    assert!((cross_variance(&k, &amp, S, A).unwrap() - expect).abs() < 1e-9);
}

#[test]
fn zero_time_identity() {
    let mut r = rng(1);
    for _ in 0..200 {
        let mut s = random_coherent(&mut r);
        s.t = 0.0;
        let k = coherent_coefficients(&s, Picture::Lab).unwrap();
        for j in raman_nc::ModeId::ALL {
            assert_eq!(k.b(j), 0.0);
            assert_eq!(k.c(j), C64::default());
        }
        for p in ModePair::ALL {
            assert_eq!(k.d(p), C64::default());
            assert_eq!(k.dbar(p), C64::default());
        }
        let mut c = random_chaotic(&mut r);
        c.t = 0.0;
        let k = chaotic_coefficients(&c, Picture::Interaction).unwrap();
        assert_eq!(k.b(V), c.mean_phonon);
        for j in [L, S, A] {
            assert_eq!(k.b(j), 0.0);
        }
        for p in ModePair::ALL {
            assert_eq!(k.d(p), C64::default());
            assert_eq!(k.dbar(p), C64::default());
        }
    }
}

#[test]
fn reduction_chaotic_to_coherent() {
    let mut r = rng(2);
    for _ in 0..200 {
        let mut s = random_coherent(&mut r);
        s.magnitude[3] = 0.0;
        let coh = coherent_coefficients(&s, Picture::Interaction).unwrap();
        let mut c = s.clone();
        c.phonon = raman_nc::PhononInput::Thermal;
        let cha = chaotic_coefficients(&c, Picture::Interaction).unwrap();
        for j in [L, S, A] {
            assert!((coh.b(j) - cha.b(j)).abs() < 1e-12);
        }
        for j in [L, V] {
            assert!((coh.c(j) - cha.c(j)).norm() < 1e-12);
        }
        for p in [ModePair::LS, ModePair::LA, ModePair::SA, ModePair::SV, ModePair::LV] {
            assert!((coh.d(p) - cha.d(p)).norm() < 1e-12, "{p}");
        }
        // the normal LS coefficient agrees as well
        assert!((coh.dbar(ModePair::LS) - cha.dbar(ModePair::LS)).norm() < 1e-12);
    }
}

#[test]
fn lab_and_interaction_moduli_agree() {
    let mut r = rng(3);
    for _ in 0..200 {
        let s = random_coherent(&mut r);
        let a = coherent_coefficients(&s, Picture::Interaction).unwrap();
        let b = coherent_coefficients(&s, Picture::Lab).unwrap();
        for j in raman_nc::ModeId::ALL {
            assert_eq!(a.b(j), b.b(j));
            assert!((a.c(j).norm() - b.c(j).norm()).abs() < 1e-12);
        }
        for p in ModePair::ALL {
            assert!((a.d(p).norm() - b.d(p).norm()).abs() < 1e-12);
            assert!((a.dbar(p).norm() - b.dbar(p).norm()).abs() < 1e-12);
        }
        let lab = b.d(ModePair::SV);
        let w = s.omega[1] + s.omega[3];
        assert!((lab - a.d(ModePair::SV) * C64::new(0.0, -w * s.t).exp()).norm() < 1e-12);
    }
}

#[test]
fn quadratic_scaling_and_linear_leading_terms() {
    let mut r = rng(4);
    for _ in 0..100 {
        let mut s = random_coherent(&mut r);
        s.t = 0.1;
        let k1 = coherent_coefficients(&s, Picture::Interaction).unwrap();
        let k2 = k1.at_time(0.2);
        for j in raman_nc::ModeId::ALL {
            assert!((k2.b(j) - 4.0 * k1.b(j)).abs() < 1e-12);
            assert!((k2.c(j) - k1.c(j) * 4.0).norm() < 1e-12);
        }
        for p in [ModePair::LS, ModePair::LA, ModePair::SA, ModePair::AV] {
            assert!((k2.d(p) - k1.d(p) * 4.0).norm() < 1e-12);
        }
        // D_SV, D_LV grow linearly as t -> 0
        let (h1, h2) = (k1.at_time(1e-7), k1.at_time(2e-7));
        for (p, lead) in [(ModePair::SV, s.g * s.magnitude[0]), (ModePair::LV, s.chi * s.magnitude[2])] {
            if lead > 1e-3 {
                let slope = (h2.d(p).norm().ln() - h1.d(p).norm().ln()) / 2f64.ln();
                assert!((slope - 1.0).abs() < 1e-4, "{p} slope {slope}");
            }
        }
    }
}

proptest! {
    #[test]
    fn b_nonnegative(g in 0.1..2.0f64, chi in 0.0..2.0f64, t in 0.0..0.5f64,
                     m in prop::array::uniform4(0.0..3.0f64), n in 0.0..3.0f64) {
        let s = ScenarioParams::chaotic(g, chi, t, m, n);
        let k = chaotic_coefficients(&s, Picture::Interaction).unwrap();
        for j in raman_nc::ModeId::ALL { prop_assert!(k.b(j) >= 0.0); }
        let mut c = ScenarioParams::coherent(g, chi, t, m);
        c.phase = [0.3, 1.0, -2.0, 0.5];
        let k = coherent_coefficients(&c, Picture::Interaction).unwrap();
        for j in raman_nc::ModeId::ALL { prop_assert!(k.b(j) >= 0.0); }
    }
}
