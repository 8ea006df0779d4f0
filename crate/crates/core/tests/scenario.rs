use proptest::prelude::*;
use raman_nc::scenario::*;
use raman_nc::{ModelError, PhononInput, ScenarioParams};
use std::f64::consts::PI;

#[test]
fn fig_presets_encode_their_parameters() {
    let f1 = find_preset("fig1-coherent").unwrap().scenario;
    assert_eq!(f1.magnitude, [10.0, 9.0, 1.0, 0.01]);
    assert_eq!(f1.phase[0], f1.phase[2]);
    assert_eq!(f1.p().unwrap(), 0.9);
    for name in ["fig2-coherent", "fig3-coherent"] {
        let s = find_preset(name).unwrap().scenario;
        assert_eq!(s.magnitude, f1.magnitude);
        assert!((s.theta1() - PI / 6.0).abs() < 1e-15);
        assert_eq!(s.p().unwrap(), 0.9);
    }
    assert!((find_preset("fig3-coherent").unwrap().scenario.theta2() - PI / 6.0).abs() < 1e-15);
    assert!(matches!(find_preset("nope"), Err(ModelError::Unknown { .. })));
}

#[test]
fn parse_rejects_unknown_keys_and_complex_couplings() {
    assert!(matches!(parse_scenario("g = 1\nfoo = 2\n"), Err(ModelError::Unknown { .. })));
    assert!(parse_scenario("chi = 0.5+0.1i\n").is_err());
    assert!(parse_scenario("g 1\n").is_err());
    let s = parse_scenario("# comment\ng = 2\np = 0.5\nphi_A = pi/6\nmean_phonon = 1.5\n").unwrap();
    assert_eq!(s.chi, 1.0);
    assert_eq!(s.phase[2], PI / 6.0);
    assert_eq!(s.phonon, PhononInput::Thermal);
}

#[test]
fn presets_round_trip() {
    for p in builtin_presets() {
        assert_eq!(parse_scenario(&write_scenario(&p.scenario)).unwrap(), p.scenario, "{}", p.name);
    }
}

proptest! {
    #[test]
    fn written_scenarios_parse_back(g in 0.0..5.0f64, chi in 0.0..5.0f64, t in 0.0..1.0f64,
                                    m in prop::array::uniform4(0.0..20.0f64),
                                    ph in prop::array::uniform4(-7.0..7.0f64),
                                    w in prop::array::uniform4(-3.0..3.0f64),
                                    n in 0.0..4.0f64, thermal: bool) {
        let s = ScenarioParams {
            g, chi, t, magnitude: m, phase: ph, omega: w,
            mean_phonon: if thermal { n } else { 0.0 },
            phonon: if thermal { PhononInput::Thermal } else { PhononInput::Coherent },
        };
        prop_assert_eq!(parse_scenario(&write_scenario(&s)).unwrap(), s);
    }
}
