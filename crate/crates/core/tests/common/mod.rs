#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use raman_nc::ScenarioParams;
use std::f64::consts::TAU;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_coherent(r: &mut impl Rng) -> ScenarioParams {
    ScenarioParams {
        g: r.gen_range(0.5..2.0),
        chi: r.gen_range(0.0..2.0),
        t: r.gen_range(0.0..0.3),
        magnitude: [0; 4].map(|_| r.gen_range(0.0..3.0)),
        phase: [0; 4].map(|_| r.gen_range(0.0..TAU)),
        omega: [0; 4].map(|_| r.gen_range(0.0..3.0)),
        ..Default::default()
    }
}

pub fn random_chaotic(r: &mut impl Rng) -> ScenarioParams {
    let mut s = random_coherent(r);
    s.magnitude[3] = 0.0;
    s.mean_phonon = r.gen_range(0.0..3.0);
    s.phonon = raman_nc::PhononInput::Thermal;
    s
}

pub fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * (1.0 + b.abs()).max(1e-14 / rel)
}
