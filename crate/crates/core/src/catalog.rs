//! Scenario-specific closed forms of the criteria.
//!
//! Each entry carries the formula as printed in the literature and, where
//! that formula disagrees with the second-order model, a corrected form.
//! [`closed_form_witness`] evaluates the authoritative form (the corrected
//! one if present); [`closed_form_printed`] evaluates the printed one.

use crate::error::{ModelError, Result};
use crate::model::{
    cross_variance_series, normal_variance_series, ModeId, ModePair, PhononInput, ScenarioParams,
};
use crate::witnesses::{model_for, witness_series, WitnessId};
use serde::Serialize;

/// Scalar inputs shared by every closed form.
#[derive(Clone, Copy, Debug)]
pub struct Vars {
    pub tau: f64,
    pub p: f64,
    pub n: f64,
    /// |xi_L|, |xi_S|, |xi_A|, |xi_V|
    pub r: [f64; 4],
    pub phi: [f64; 4],
    pub th1: f64,
    pub th2: f64,
}

impl Vars {
    pub fn new(s: &ScenarioParams) -> Result<Self> {
        Ok(Vars {
            tau: s.tau()?,
            p: s.p()?,
            n: if s.is_thermal() { s.mean_phonon } else { 0.0 },
            r: s.magnitude,
            phi: s.phase,
            th1: s.theta1(),
            th2: s.theta2(),
        })
    }

    fn i(&self, j: usize) -> f64 {
        self.r[j] * self.r[j]
    }
}

/// Quantity a closed form describes.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum Target {
    Witness(WitnessId),
    NormalVariance(ModeId),
    CrossVariance(ModePair),
}

/// Limit in which an "≈" form becomes the leading behaviour.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Limit {
    /// tau -> 0
    ShortTime,
    /// |xi_L| -> infinity
    StrongPump,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    Exact,
    Approximate(Limit),
}

/// Parameter restriction under which a form holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Regime {
    Any,
    /// phi_S = phi_L
    PhaseSL,
    /// phi_V = -phi_S
    PhaseVS,
    /// phi_A = phi_L
    PhaseAL,
    /// I_A > 0 (leading |D_LV| term nonzero)
    AntiStokesSeeded,
    /// I_L > 0
    Pumped,
    /// I_S = I_A = I_V = 0
    Spontaneous,
    /// mean_phonon > 0
    ThermalOccupied,
}

impl Regime {
    /// Move a scenario into the regime.
    pub fn project(self, s: &mut ScenarioParams) {
        match self {
            Regime::Any => {}
            Regime::PhaseSL => s.phase[1] = s.phase[0],
            Regime::PhaseVS => s.phase[3] = -s.phase[1],
            Regime::PhaseAL => s.phase[2] = s.phase[0],
            Regime::AntiStokesSeeded => {
                if s.magnitude[2] == 0.0 {
                    s.magnitude[2] = 1.0
                }
            }
            Regime::Pumped => {
                if s.magnitude[0] == 0.0 {
                    s.magnitude[0] = 1.0
                }
            }
            Regime::Spontaneous => {
                s.magnitude[1] = 0.0;
                s.magnitude[2] = 0.0;
                s.magnitude[3] = 0.0;
            }
            Regime::ThermalOccupied => {
                if s.mean_phonon == 0.0 {
                    s.mean_phonon = 1.0
                }
            }
        }
    }

    pub fn holds(self, s: &ScenarioParams) -> bool {
        let same = |a: f64, b: f64| {
            let d = (a - b).rem_euclid(std::f64::consts::TAU);
            d < 1e-12 || std::f64::consts::TAU - d < 1e-12
        };
        match self {
            Regime::Any => true,
            Regime::PhaseSL => same(s.phase[1], s.phase[0]),
            Regime::PhaseVS => same(s.phase[3], -s.phase[1]),
            Regime::PhaseAL => same(s.phase[2], s.phase[0]),
            Regime::AntiStokesSeeded => s.magnitude[2] > 0.0,
            Regime::Pumped => s.magnitude[0] > 0.0,
            Regime::Spontaneous => s.magnitude[1..].iter().all(|&m| m == 0.0),
            Regime::ThermalOccupied => s.mean_phonon > 0.0,
        }
    }
}

type Form = fn(&Vars) -> f64;

#[derive(Clone, Copy, Debug)]
pub struct CatalogEntry {
    pub id: &'static str,
    pub phonon: PhononInput,
    pub target: Target,
    pub status: Status,
    pub regime: Regime,
    pub printed: Form,
    /// Present when the printed form disagrees with the model.
    pub corrected: Option<Form>,
    pub note: &'static str,
}

impl CatalogEntry {
    pub fn is_erratum(&self) -> bool {
        self.corrected.is_some()
    }

    pub fn authoritative(&self, v: &Vars) -> f64 {
        (self.corrected.unwrap_or(self.printed))(v)
    }

    /// Value of the target from the general second-order model.
    pub fn general(&self, s: &ScenarioParams) -> Result<f64> {
        general_target(self.target, s)
    }
}

/// General-path value of a catalog target.
pub fn general_target(target: Target, s: &ScenarioParams) -> Result<f64> {
    let (k, amp) = model_for(s)?;
    Ok(match target {
        Target::Witness(id) => witness_series(id, &k, &amp).eval(k.t),
        Target::NormalVariance(j) => normal_variance_series(&k, &amp, j).eval(k.t),
        Target::CrossVariance(p) => cross_variance_series(&k, &amp, p).eval(k.t),
    })
}

fn w(s: &str) -> Target {
    Target::Witness(s.parse().expect("catalog witness id"))
}

const COH: PhononInput = PhononInput::Coherent;
const CHA: PhononInput = PhononInput::Thermal;

macro_rules! entry {
    ($id:expr, $ph:expr, $target:expr, $status:expr, $regime:expr, $printed:expr) => {
        CatalogEntry {
            id: $id,
            phonon: $ph,
            target: $target,
            status: $status,
            regime: $regime,
            printed: $printed,
            corrected: None,
            note: "",
        }
    };
    ($id:expr, $ph:expr, $target:expr, $status:expr, $regime:expr, $printed:expr, $corrected:expr, $note:expr) => {
        CatalogEntry {
            id: $id,
            phonon: $ph,
            target: $target,
            status: $status,
            regime: $regime,
            printed: $printed,
            corrected: Some($corrected),
            note: $note,
        }
    };
}

// Sum/difference variances of the coherent case.
fn coh_w(v: &Vars, pair: ModePair, s: f64) -> f64 {
    let (t, p) = (v.tau, v.p);
    let [rl, rs, ra, rv] = v.r;
    let (il, is, ia, iv) = (v.i(0), v.i(1), v.i(2), v.i(3));
    let (d, e) = ((v.th2 - v.th1).cos(), (v.th1 + v.th2).cos());
    let t2 = t * t;
    let plus = s > 0.0;
    match pair {
        ModePair::AV => {
            if plus {
                2.0 * t2 * iv * (il - p * rs * ra * e)
            } else {
                2.0 * t2 * iv * (il + 2.0 * p * p * ia - p * rs * ra * e)
            }
        }
        ModePair::SA => 2.0 * t2 * il * (is - s * p * rs * ra * d),
        ModePair::LA => {
            if plus {
                -2.0 * p * t2 * il * rs * ra * d
            } else {
                2.0 * p * t2 * il * (2.0 * p * ia - rs * ra * d)
            }
        }
        ModePair::LS => {
            if plus {
                2.0 * p * t2 * il * ra * (p * ra + rs * d)
            } else {
                2.0 * t2 * il * (p * p * ia + 2.0 * is - 3.0 * p * rs * ra * d)
            }
        }
        ModePair::LV => {
            if plus {
                2.0 * p * p * t2 * (3.0 * il * ia + 3.0 * ia * iv + ia - il * iv)
                    + 2.0 * p * t2 * rs * ra * (il * d + iv * e)
                    + 4.0 * p * t * ra * rl * rv * v.th1.cos()
            } else {
                -2.0 * p * p * t2 * (il * ia + ia * iv + ia - il * iv) + 4.0 * t2 * il * iv
                    - 6.0 * p * t2 * rs * ra * (il * d + iv * e)
                    - 4.0 * p * t * ra * rl * rv * v.th1.cos()
            }
        }
        ModePair::SV => {
            if plus {
                2.0 * t2 * (3.0 * il * is + 3.0 * il * iv + p * p * ia * iv + il - is * iv)
                    + 2.0 * p * t2 * rs * ra * (2.0 * il * d - 3.0 * iv * e)
                    + 4.0 * t * rl * rs * rv * v.th2.cos()
            } else {
                -2.0 * t2 * (il * is + il * iv - p * p * ia * iv + il - is * iv)
                    - 2.0 * p * t2 * rs * ra * (2.0 * il * d - iv * e)
                    - 4.0 * t * rl * rs * rv * v.th2.cos()
            }
        }
    }
}

// Corrected LV / SV sum/difference variances: the O(tau) term carries -sin.
fn coh_w_fixed(v: &Vars, pair: ModePair, s: f64) -> f64 {
    let (t, p) = (v.tau, v.p);
    let [rl, rs, ra, rv] = v.r;
    match pair {
        ModePair::LV => {
            let c = 4.0 * p * t * ra * rl * rv;
            coh_w(v, pair, s) - s * c * v.th1.cos() - s * c * v.th1.sin()
        }
        ModePair::SV => {
            let c = 4.0 * t * rl * rs * rv;
            coh_w(v, pair, s) - s * c * v.th2.cos() - s * c * v.th2.sin()
        }
        _ => coh_w(v, pair, s),
    }
}

// Chaotic sum/difference variances.
fn cha_w(v: &Vars, pair: ModePair, s: f64) -> f64 {
    let (t, p, n) = (v.tau, v.p, v.n);
    let [_, rs, ra, _] = v.r;
    let (il, is, ia) = (v.i(0), v.i(1), v.i(2));
    let d = (v.th2 - v.th1).cos();
    let t2 = t * t;
    let n2 = 2.0 * n + 1.0;
    match pair {
        ModePair::SA => {
            2.0 * p * p * t2 * il * ia * n + 2.0 * t2 * il * is * (n + 1.0) - s * 2.0 * t2 * p * il * ra * rs * d * n2
        }
        ModePair::LS => {
            2.0 * p * p * t2 * ia * il * (n + 1.0) + 2.0 * t2 * il * is * n2 * (1.0 - s)
                - 2.0 * p * t2 * il * rs * ra * d * (n2 - s * 2.0 * (n + 1.0))
        }
        ModePair::LA => {
            2.0 * p * p * t2 * ia * il * (n2 - s * (n + 1.0)) + 2.0 * t2 * is * il * n
                - 2.0 * p * t2 * ra * rs * il * d * (n2 - s * 2.0 * n)
        }
        _ => f64::NAN,
    }
}

fn cha_w_la_fixed(v: &Vars, s: f64) -> f64 {
    let (t, p, n) = (v.tau, v.p, v.n);
    let [_, rs, ra, _] = v.r;
    let (il, is, ia) = (v.i(0), v.i(1), v.i(2));
    let d = (v.th2 - v.th1).cos();
    let t2 = t * t;
    let n2 = 2.0 * n + 1.0;
    2.0 * p * p * t2 * ia * il * n2 * (1.0 - s) + 2.0 * t2 * is * il * n - 2.0 * p * t2 * ra * rs * il * d * (n2 - s * 2.0 * n)
}

fn entries() -> Vec<CatalogEntry> {
    use Limit::*;
    use Regime::*;
    use Status::*;
    const E: Status = Exact;
    vec![
        // coherent input
        entry!("coherent:Kp_LV", COH, w("Kp_LV"), E, Any, |v| -v.p * v.p * v.tau * v.tau * v.i(2)),
        entry!("coherent:Km_LV", COH, w("Km_LV"), E, Any, |v| -v.p * v.p * v.tau * v.tau * v.i(2)),
        entry!("coherent:Kp_SV", COH, w("Kp_SV"), E, Any, |v| -v.tau * v.tau * v.i(0)),
        entry!("coherent:Km_SV", COH, w("Km_SV"), E, Any, |v| -v.tau * v.tau * v.i(0)),
        entry!("coherent:lambda_L", COH, w("lambda_L"), E, Any, |v| {
            1.0 + 2.0 * v.p * v.tau * v.tau * v.r[2] * (v.p * v.r[2] - v.r[1])
        }),
        entry!(
            "coherent:lambda_LA",
            COH,
            w("lambda_LA"),
            E,
            PhaseSL,
            |v| 1.0 + v.p * v.p * v.tau * v.tau * v.r[2] * (v.r[2] - (v.r[0] + v.r[1])),
            |v| 1.0 + v.p * v.tau * v.tau * v.r[2] * (v.p * v.r[2] - v.r[1] - v.p * v.r[0]),
            "printed form attaches p to |xi_S|"
        ),
        entry!("coherent:lambda_SA", COH, w("lambda_SA"), E, Any, |v| 1.0 + v.i(0) * v.tau * v.tau * (1.0 - v.p)),
        entry!("coherent:lambda_AV", COH, w("lambda_AV"), E, PhaseVS, |v| {
            let p = v.p;
            1.0 + v.tau * v.tau * (v.i(0) + p * p * v.i(2) - p * p * v.r[2] * v.r[3] - p * v.r[1] * v.r[2])
        }),
        entry!(
            "coherent:lambda_LV",
            COH,
            w("lambda_LV"),
            E,
            AntiStokesSeeded,
            |v| {
                let (t, p) = (v.tau, v.p);
                let [_, rs, ra, _] = v.r;
                let root = (p * p * t * t * v.i(2) + (1.0 + p * p).powi(2) / 4.0 * t.powi(4) * v.i(0) * v.i(3)).sqrt();
                1.0 + 2.0 * p * p * t * t * v.i(2) + t * t * v.i(0) - 2.0 * root - 2.0 * p * t * t * rs * ra
            },
            |v| {
                let (t, p) = (v.tau, v.p);
                let [rl, _, ra, rv] = v.r;
                1.0 + 2.0 * p * p * t * t * v.i(2) + t * t * v.i(0) - 2.0 * p * t * ra
                    - (1.0 + p * p) * t * t * rl * rv * v.th1.sin()
            },
            "printed root form is not the second-order expansion"
        ),
        entry!(
            "coherent:lambda_LV~",
            COH,
            w("lambda_LV"),
            Approximate(ShortTime),
            AntiStokesSeeded,
            |v| {
                let (t, p) = (v.tau, v.p);
                1.0 + 2.0 * p * p * t * t * v.i(2) + t * t * v.i(0) - 2.0 * p * t * v.i(2) - 2.0 * p * t * t * v.r[1] * v.r[2]
            },
            |v| {
                let (t, p) = (v.tau, v.p);
                1.0 + 2.0 * p * p * t * t * v.i(2) + t * t * v.i(0) - 2.0 * p * t * v.r[2] - 2.0 * p * t * t * v.r[1] * v.r[2]
            },
            "linear term is 2 p tau |xi_A|, printed with I_A"
        ),
        entry!(
            "coherent:lambda_LS",
            COH,
            w("lambda_LS"),
            E,
            PhaseAL,
            |v| {
                let [rl, rs, ra, _] = v.r;
                1.0 + v.tau * v.tau
                    * (v.p * v.p * v.i(2) + v.i(0) - rl * rs - v.p * rs * ra + v.p * rl * ra * (v.phi[0] - v.phi[2]).cos())
            },
            |v| {
                let [rl, rs, ra, _] = v.r;
                1.0 + v.tau * v.tau
                    * (v.p * v.p * v.i(2) + v.i(0) - rl * rs - v.p * rs * ra
                        + 2.0 * v.p * rl * ra * (v.phi[0] - v.phi[2]).cos())
            },
            "normal LS coefficient enters without the 1/2"
        ),
        entry!("coherent:lambda_LS~", COH, w("lambda_LS"), Approximate(StrongPump), Any, |v| 1.0
            + v.tau * v.tau * v.i(0)),
        entry!(
            "coherent:lambda_SV",
            COH,
            w("lambda_SV"),
            E,
            Pumped,
            |v| {
                let (t, p) = (v.tau, v.p);
                let [_, rs, ra, rv] = v.r;
                let inner = 0.5 * t * t * rs * rv + p * t * t * ra * rv;
                1.0 + 2.0 * t * t * v.i(0) + p * p * t * t * v.i(2) - 2.0 * (t * t * v.i(0) + inner * inner).sqrt()
                    + p * t * t * rs * ra
            },
            |v| {
                let (t, p) = (v.tau, v.p);
                let [rl, rs, ra, rv] = v.r;
                1.0 + 2.0 * t * t * v.i(0) + p * p * t * t * v.i(2) - 2.0 * t * rl
                    + t * t
                        * (p * rs * ra * (v.phi[2] - v.phi[1] - v.phi[0]).sin() - rs * rv * v.th2.sin()
                            + 2.0 * p * ra * rv * v.th1.sin())
            },
            "printed root form is not the second-order expansion"
        ),
        entry!("coherent:lambda_SV~", COH, w("lambda_SV"), Approximate(ShortTime), Pumped, |v| {
            let (t, p) = (v.tau, v.p);
            1.0 + 2.0 * t * t * v.i(0) + p * p * t * t * v.i(2) - 2.0 * t * v.r[0] + p * t * t * v.r[1] * v.r[2]
        }),
        entry!("coherent:C_LV", COH, w("C_LV"), E, Any, |v| -2.0 * v.p * v.p * v.tau * v.tau * v.i(2)),
        entry!(
            "coherent:C_SV",
            COH,
            w("C_SV"),
            E,
            Any,
            |v| -2.0 * v.tau * v.tau * v.i(2),
            |v| -2.0 * v.tau * v.tau * v.i(0),
            "printed with I_A; 2 (K_SV) forces I_L"
        ),
        entry!("coherent:Wp_AV", COH, w("Wp_AV"), E, Any, |v| coh_w(v, ModePair::AV, 1.0)),
        entry!("coherent:Wm_AV", COH, w("Wm_AV"), E, Any, |v| coh_w(v, ModePair::AV, -1.0)),
        entry!("coherent:Wp_SA", COH, w("Wp_SA"), E, Any, |v| coh_w(v, ModePair::SA, 1.0)),
        entry!("coherent:Wm_SA", COH, w("Wm_SA"), E, Any, |v| coh_w(v, ModePair::SA, -1.0)),
        entry!("coherent:Wp_LA", COH, w("Wp_LA"), E, Any, |v| coh_w(v, ModePair::LA, 1.0)),
        entry!("coherent:Wm_LA", COH, w("Wm_LA"), E, Any, |v| coh_w(v, ModePair::LA, -1.0)),
        entry!("coherent:Wp_LS", COH, w("Wp_LS"), E, Any, |v| coh_w(v, ModePair::LS, 1.0)),
        entry!("coherent:Wm_LS", COH, w("Wm_LS"), E, Any, |v| coh_w(v, ModePair::LS, -1.0)),
        entry!(
            "coherent:Wp_LV",
            COH,
            w("Wp_LV"),
            E,
            Any,
            |v| coh_w(v, ModePair::LV, 1.0),
            |v| coh_w_fixed(v, ModePair::LV, 1.0),
            "linear term is -sin(theta1), printed cos(theta1)"
        ),
        entry!(
            "coherent:Wm_LV",
            COH,
            w("Wm_LV"),
            E,
            Any,
            |v| coh_w(v, ModePair::LV, -1.0),
            |v| coh_w_fixed(v, ModePair::LV, -1.0),
            "linear term is +sin(theta1), printed -cos(theta1)"
        ),
        entry!(
            "coherent:Wp_SV",
            COH,
            w("Wp_SV"),
            E,
            Any,
            |v| coh_w(v, ModePair::SV, 1.0),
            |v| coh_w_fixed(v, ModePair::SV, 1.0),
            "linear term is -sin(theta2), printed cos(theta2)"
        ),
        entry!(
            "coherent:Wm_SV",
            COH,
            w("Wm_SV"),
            E,
            Any,
            |v| coh_w(v, ModePair::SV, -1.0),
            |v| coh_w_fixed(v, ModePair::SV, -1.0),
            "linear term is +sin(theta2), printed -cos(theta2)"
        ),
        entry!("coherent:Wm_SV_spontaneous", COH, w("Wm_SV"), E, Spontaneous, |v| -2.0 * v.tau * v.tau * v.i(0)),
        // thermal phonon
        entry!("chaotic:var_L", CHA, Target::NormalVariance(ModeId::L), E, Any, |v| {
            let (t, p, n) = (v.tau, v.p, v.n);
            let d = (v.th2 - v.th1).cos();
            2.0 * p * p * t * t * v.i(2) * v.i(0) * (n + 1.0) + 2.0 * t * t * v.i(1) * v.i(0) * n
                - 2.0 * p * t * t * v.r[2] * v.r[1] * v.i(0) * (2.0 * n + 1.0) * d
        }),
        entry!("chaotic:var_S", CHA, Target::NormalVariance(ModeId::S), E, Any, |v| {
            2.0 * v.tau * v.tau * v.i(0) * v.i(1) * (v.n + 1.0)
        }),
        entry!("chaotic:var_A", CHA, Target::NormalVariance(ModeId::A), E, Any, |v| {
            2.0 * v.p * v.p * v.tau * v.tau * v.i(0) * v.i(2) * v.n
        }),
        entry!("chaotic:var_V~", CHA, Target::NormalVariance(ModeId::V), Approximate(ShortTime), ThermalOccupied, |v| {
            v.n * v.n
        }),
        entry!("chaotic:cov_LA", CHA, Target::CrossVariance(ModePair::LA), E, Any, |v| {
            let (t, p, n) = (v.tau, v.p, v.n);
            let d = (v.th2 - v.th1).cos();
            -t * t * p * p * v.i(0) * v.i(2) * (2.0 * n + 1.0) + 2.0 * p * t * t * v.i(0) * v.r[1] * v.r[2] * n * d
        }),
        entry!("chaotic:cov_LS", CHA, Target::CrossVariance(ModePair::LS), E, Any, |v| {
            let (t, p, n) = (v.tau, v.p, v.n);
            let d = (v.th2 - v.th1).cos();
            -t * t * v.i(0) * v.i(1) * (2.0 * n + 1.0) + 2.0 * p * t * t * v.i(0) * v.r[1] * v.r[2] * (n + 1.0) * d
        }),
        entry!("chaotic:cov_SA", CHA, Target::CrossVariance(ModePair::SA), E, Any, |v| {
            let d = (v.th2 - v.th1).cos();
            -v.tau * v.tau * v.p * v.i(0) * v.r[2] * v.r[1] * d * (2.0 * v.n + 1.0)
        }),
        entry!("chaotic:Kp_SV", CHA, w("Kp_SV"), E, Any, |v| -v.tau * v.tau * v.i(0) * (v.n + 1.0)),
        entry!("chaotic:Km_SV", CHA, w("Km_SV"), E, Any, |v| -v.tau * v.tau * v.i(0) * (v.n + 1.0)),
        entry!(
            "chaotic:Kp_LV",
            CHA,
            w("Kp_LV"),
            E,
            Any,
            |v| {
                let (t, p, n) = (v.tau, v.p, v.n);
                -p * p * t * t * v.i(2) * (n + 1.0) - 2.0 * p * t * t * v.r[2] * v.r[1] * n * (3.0 * n + 2.0)
            },
            |v| {
                let (t, p, n) = (v.tau, v.p, v.n);
                -p * p * t * t * v.i(2) * (n + 1.0) + p * t * t * v.r[2] * v.r[1] * n * (4.0 * n + 3.0)
            },
            "cross term is +p tau^2 |xi_A||xi_S| n(4n+3)"
        ),
        entry!(
            "chaotic:Km_LV",
            CHA,
            w("Km_LV"),
            E,
            Any,
            |v| {
                let (t, p, n) = (v.tau, v.p, v.n);
                -p * p * t * t * v.i(2) * (n + 1.0) + 2.0 * p * t * t * v.r[2] * v.r[1] * n * (3.0 * n + 2.0)
            },
            |v| {
                let (t, p, n) = (v.tau, v.p, v.n);
                -p * p * t * t * v.i(2) * (n + 1.0) - p * t * t * v.r[2] * v.r[1] * n * (4.0 * n + 3.0)
            },
            "cross term is -p tau^2 |xi_A||xi_S| n(4n+3)"
        ),
        entry!("chaotic:lambda_L", CHA, w("lambda_L"), E, Any, |v| {
            let (t, p, n) = (v.tau, v.p, v.n);
            1.0 + 2.0 * t * t * (p * p * v.i(2) * (n + 1.0) + v.i(1) * n - p * v.r[2] * v.r[1] * (2.0 * n + 1.0))
        }),
        entry!("chaotic:lambda_LA~", CHA, w("lambda_LA"), Approximate(StrongPump), ThermalOccupied, |v| {
            let (t, p, n) = (v.tau, v.p, v.n);
            1.0 + p * p * t * t * v.r[0] * (v.r[0] * n - v.r[2] * (2.0 * n + 1.0))
        }),
        entry!("chaotic:lambda_LS~", CHA, w("lambda_LS"), Approximate(StrongPump), Any, |v| {
            let (t, n) = (v.tau, v.n);
            1.0 + t * t * v.r[0] * (v.r[0] * (n + 1.0) - v.r[1] * (2.0 * n + 1.0))
        }),
        entry!("chaotic:lambda_SA", CHA, w("lambda_SA"), E, Any, |v| {
            let (p, n) = (v.p, v.n);
            1.0 + v.tau * v.tau * v.i(0) * (1.0 - p) * (n + 1.0 - p * n)
        }),
        entry!("chaotic:C_AV", CHA, w("C_AV"), E, Any, |v| v.n * v.n * (1.0 - 2.0 * v.p * v.p * v.tau * v.tau * v.i(0))),
        entry!("chaotic:C_LV", CHA, w("C_LV"), E, Any, |v| {
            let (t, p, n) = (v.tau, v.p, v.n);
            n * n - 2.0 * p * p * t * t * v.i(2) * (n + 1.0).powi(2) - 2.0 * t * t * v.i(1) * n * n
        }),
        entry!("chaotic:C_SV", CHA, w("C_SV"), E, Any, |v| {
            v.n * v.n - 2.0 * v.tau * v.tau * v.i(0) * (v.n + 1.0).powi(2)
        }),
        entry!("chaotic:Wp_SA", CHA, w("Wp_SA"), E, Any, |v| cha_w(v, ModePair::SA, 1.0)),
        entry!("chaotic:Wm_SA", CHA, w("Wm_SA"), E, Any, |v| cha_w(v, ModePair::SA, -1.0)),
        entry!("chaotic:Wp_LS", CHA, w("Wp_LS"), E, Any, |v| cha_w(v, ModePair::LS, 1.0)),
        entry!("chaotic:Wm_LS", CHA, w("Wm_LS"), E, Any, |v| cha_w(v, ModePair::LS, -1.0)),
        entry!(
            "chaotic:Wp_LA",
            CHA,
            w("Wp_LA"),
            E,
            Any,
            |v| cha_w(v, ModePair::LA, 1.0),
            |v| cha_w_la_fixed(v, 1.0),
            "first bracket is (2n+1)(1-1)"
        ),
        entry!(
            "chaotic:Wm_LA",
            CHA,
            w("Wm_LA"),
            E,
            Any,
            |v| cha_w(v, ModePair::LA, -1.0),
            |v| cha_w_la_fixed(v, -1.0),
            "first bracket is (2n+1)(1+1)"
        ),
    ]
}

/// Every cataloged closed form.
pub fn catalog() -> &'static [CatalogEntry] {
    use std::sync::OnceLock;
    static CATALOG: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    CATALOG.get_or_init(entries)
}

pub fn lookup(id: &str) -> Result<&'static CatalogEntry> {
    catalog().iter().find(|e| e.id == id).ok_or_else(|| ModelError::Unknown {
        name: id.into(),
        valid: catalog().iter().map(|e| e.id).collect::<Vec<_>>().join(", "),
    })
}

/// Authoritative closed form of a catalog entry at a scenario.
pub fn closed_form_witness(scenario: &ScenarioParams, id: &str) -> Result<f64> {
    let e = lookup(id)?;
    Ok(e.authoritative(&Vars::new(scenario)?))
}

/// The formula exactly as printed, errata included.
pub fn closed_form_printed(scenario: &ScenarioParams, id: &str) -> Result<f64> {
    let e = lookup(id)?;
    Ok((e.printed)(&Vars::new(scenario)?))
}
