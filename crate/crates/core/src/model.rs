//! Scenario parameters, Gaussian characteristic-function coefficients and
//! normally ordered intensity variances.

use crate::error::{domain, ModelError, Result};
use crate::series::{CSeries, RSeries};
use num_complex::Complex64 as C64;
use serde::Serialize;
use std::fmt;
use std::str::FromStr;

/// Field modes in the fixed order (L, S, A, V).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ModeId {
    L,
    S,
    A,
    V,
}

impl ModeId {
    pub const ALL: [ModeId; 4] = [ModeId::L, ModeId::S, ModeId::A, ModeId::V];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn label(self) -> &'static str {
        match self {
            ModeId::L => "L",
            ModeId::S => "S",
            ModeId::A => "A",
            ModeId::V => "V",
        }
    }
}

impl fmt::Display for ModeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for ModeId {
    type Err = ModelError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "L" => Ok(ModeId::L),
            "S" => Ok(ModeId::S),
            "A" => Ok(ModeId::A),
            "V" => Ok(ModeId::V),
            _ => Err(ModelError::Unknown { name: s.into(), valid: "L, S, A, V".into() }),
        }
    }
}

/// Unordered mode pair, stored with the first mode earlier in (L, S, A, V).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ModePair {
    LS,
    LA,
    LV,
    SA,
    SV,
    AV,
}

impl ModePair {
    pub const ALL: [ModePair; 6] =
        [ModePair::LS, ModePair::LA, ModePair::LV, ModePair::SA, ModePair::SV, ModePair::AV];

    pub fn new(i: ModeId, j: ModeId) -> Result<Self> {
        use ModeId::*;
        let (a, b) = if i <= j { (i, j) } else { (j, i) };
        Ok(match (a, b) {
            (L, S) => ModePair::LS,
            (L, A) => ModePair::LA,
            (L, V) => ModePair::LV,
            (S, A) => ModePair::SA,
            (S, V) => ModePair::SV,
            (A, V) => ModePair::AV,
            _ => return domain(format!("pair needs two distinct modes, got ({i},{j})")),
        })
    }

    pub fn modes(self) -> (ModeId, ModeId) {
        use ModeId::*;
        match self {
            ModePair::LS => (L, S),
            ModePair::LA => (L, A),
            ModePair::LV => (L, V),
            ModePair::SA => (S, A),
            ModePair::SV => (S, V),
            ModePair::AV => (A, V),
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn label(self) -> &'static str {
        match self {
            ModePair::LS => "LS",
            ModePair::LA => "LA",
            ModePair::LV => "LV",
            ModePair::SA => "SA",
            ModePair::SV => "SV",
            ModePair::AV => "AV",
        }
    }
}

impl fmt::Display for ModePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for ModePair {
    type Err = ModelError;
    fn from_str(s: &str) -> Result<Self> {
        let mut it = s.chars();
        let (Some(a), Some(b), None) = (it.next(), it.next(), it.next()) else {
            return Err(ModelError::Unknown { name: s.into(), valid: "LS, LA, LV, SA, SV, AV".into() });
        };
        ModePair::new(a.to_string().parse()?, b.to_string().parse()?)
    }
}

/// Input state of the phonon mode.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PhononInput {
    Coherent,
    /// Thermal (chaotic) phonon with mean occupation `mean_phonon`.
    Thermal,
}

/// Physical parameters of one scattering scenario (hbar = 1).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScenarioParams {
    pub g: f64,
    pub chi: f64,
    pub t: f64,
    /// |xi_j| in (L, S, A, V) order.
    pub magnitude: [f64; 4],
    /// phi_j in (L, S, A, V) order.
    pub phase: [f64; 4],
    pub mean_phonon: f64,
    pub phonon: PhononInput,
    /// Mode frequencies, used only by lab-picture phases and the Fock oracle.
    pub omega: [f64; 4],
}

impl Default for ScenarioParams {
    fn default() -> Self {
        ScenarioParams {
            g: 1.0,
            chi: 0.0,
            t: 0.0,
            magnitude: [0.0; 4],
            phase: [0.0; 4],
            mean_phonon: 0.0,
            phonon: PhononInput::Coherent,
            omega: [0.0; 4],
        }
    }
}

impl ScenarioParams {
    /// Coherent scenario from magnitudes with all phases zero.
    pub fn coherent(g: f64, chi: f64, t: f64, magnitude: [f64; 4]) -> Self {
        ScenarioParams { g, chi, t, magnitude, ..Default::default() }
    }

    /// Thermal-phonon scenario; the phonon amplitude is ignored.
    pub fn chaotic(g: f64, chi: f64, t: f64, magnitude: [f64; 4], mean_phonon: f64) -> Self {
        ScenarioParams { g, chi, t, magnitude, mean_phonon, phonon: PhononInput::Thermal, ..Default::default() }
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.g, self.chi, self.t, self.mean_phonon]
            .iter()
            .chain(&self.magnitude)
            .chain(&self.phase)
            .chain(&self.omega)
            .all(|x| x.is_finite());
        if !finite {
            return domain("non-finite scenario parameter");
        }
        if self.g < 0.0 || self.chi < 0.0 {
            return domain("couplings g, chi must be real and >= 0");
        }
        if self.t < 0.0 {
            return domain("interaction time must be >= 0");
        }
        if self.magnitude.iter().any(|&m| m < 0.0) {
            return domain("amplitude magnitudes must be >= 0");
        }
        if self.mean_phonon < 0.0 {
            return domain("mean phonon number must be >= 0");
        }
        if self.phonon == PhononInput::Coherent && self.mean_phonon != 0.0 {
            return domain("mean_phonon > 0 requires a thermal phonon; use chaotic_coefficients");
        }
        Ok(())
    }

    pub fn xi(&self, j: ModeId) -> C64 {
        C64::from_polar(self.magnitude[j.index()], self.phase[j.index()])
    }

    pub fn intensity(&self, j: ModeId) -> f64 {
        let m = self.magnitude[j.index()];
        m * m
    }

    pub fn tau(&self) -> Result<f64> {
        if self.g > 0.0 {
            Ok(self.g * self.t)
        } else {
            domain("tau = g t needs g > 0")
        }
    }

    pub fn p(&self) -> Result<f64> {
        if self.g > 0.0 {
            Ok(self.chi / self.g)
        } else {
            domain("p = chi/g needs g > 0")
        }
    }

    /// theta2 = phi_L - phi_V - phi_S.
    pub fn theta2(&self) -> f64 {
        self.phase[0] - self.phase[3] - self.phase[1]
    }

    /// theta1 = phi_A - phi_L - phi_V.
    pub fn theta1(&self) -> f64 {
        self.phase[2] - self.phase[0] - self.phase[3]
    }

    pub fn is_thermal(&self) -> bool {
        self.phonon == PhononInput::Thermal
    }

    /// Set theta1 by moving phi_A, keeping phi_L and phi_V.
    pub fn set_theta1(&mut self, theta1: f64) {
        self.phase[2] = theta1 + self.phase[0] + self.phase[3];
    }

    /// Set theta2 by moving phi_S, keeping phi_L and phi_V.
    pub fn set_theta2(&mut self, theta2: f64) {
        self.phase[1] = self.phase[0] - self.phase[3] - theta2;
    }
}

/// Whether lab-frame oscillations exp(-i w t) are kept or compensated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Picture {
    Interaction,
    Lab,
}

/// Full coefficient set {B_j, C_j, D_jk, D̄_jk} as second-order series in t.
///
/// `B_j = <Δa†Δa>`, `C_j = <Δa²>`, `D_jk = <Δa_j Δa_k>`, `D̄_jk = -<Δa_j† Δa_k>`.
/// Series are stored in the interaction picture; value accessors apply the
/// lab phase factors when `picture` is `Lab`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GaussianCoefficients {
    pub picture: Picture,
    pub t: f64,
    pub omega: [f64; 4],
    pub b: [RSeries; 4],
    pub c: [CSeries; 4],
    pub d: [CSeries; 6],
    pub dbar: [CSeries; 6],
}

impl GaussianCoefficients {
    fn zero(params: &ScenarioParams, picture: Picture) -> Self {
        GaussianCoefficients {
            picture,
            t: params.t,
            omega: params.omega,
            b: [RSeries::ZERO; 4],
            c: [CSeries::ZERO; 4],
            d: [CSeries::ZERO; 6],
            dbar: [CSeries::ZERO; 6],
        }
    }

    fn lab_phase(&self, w: f64) -> C64 {
        match self.picture {
            Picture::Interaction => C64::new(1.0, 0.0),
            Picture::Lab => C64::new(0.0, -w * self.t).exp(),
        }
    }

    pub fn b(&self, j: ModeId) -> f64 {
        self.b[j.index()].eval(self.t)
    }

    pub fn c(&self, j: ModeId) -> C64 {
        let w = 2.0 * self.omega[j.index()];
        self.c[j.index()].eval(self.t) * self.lab_phase(w)
    }

    pub fn d(&self, pair: ModePair) -> C64 {
        let (i, j) = pair.modes();
        let w = self.omega[i.index()] + self.omega[j.index()];
        self.d[pair.index()].eval(self.t) * self.lab_phase(w)
    }

    pub fn dbar(&self, pair: ModePair) -> C64 {
        let (i, j) = pair.modes();
        let w = self.omega[j.index()] - self.omega[i.index()];
        self.dbar[pair.index()].eval(self.t) * self.lab_phase(w)
    }

    pub fn b_series(&self, j: ModeId) -> RSeries {
        self.b[j.index()]
    }

    pub fn c_series(&self, j: ModeId) -> CSeries {
        self.c[j.index()]
    }

    pub fn d_series(&self, pair: ModePair) -> CSeries {
        self.d[pair.index()]
    }

    pub fn dbar_series(&self, pair: ModePair) -> CSeries {
        self.dbar[pair.index()]
    }

    /// Same coefficients evaluated at another time.
    pub fn at_time(&self, t: f64) -> Self {
        GaussianCoefficients { t, ..self.clone() }
    }
}

fn q(z: C64) -> CSeries {
    CSeries::quadratic(z)
}

fn lin(z: C64) -> CSeries {
    CSeries::linear(z)
}

const I: C64 = C64 { re: 0.0, im: 1.0 };

/// Coefficients for coherent input in every mode.
pub fn coherent_coefficients(params: &ScenarioParams, picture: Picture) -> Result<GaussianCoefficients> {
    params.validate()?;
    if params.is_thermal() {
        return domain("thermal phonon scenario; use chaotic_coefficients");
    }
    let (g, x) = (params.g, params.chi);
    let [l, s, a, v] = ModeId::ALL.map(|m| params.xi(m));
    let (il, ia) = (params.intensity(ModeId::L), params.intensity(ModeId::A));

    let mut k = GaussianCoefficients::zero(params, picture);
    k.b = [
        RSeries::quadratic(x * x * ia),
        RSeries::quadratic(g * g * il),
        RSeries::ZERO,
        RSeries::quadratic(g * g * il + x * x * ia),
    ];
    k.c[0] = q(-g * x * s * a);
    k.c[3] = q(-g * x * s.conj() * a);
    k.d[ModePair::LS.index()] = q(-0.5 * g * g * l * s);
    k.d[ModePair::LA.index()] = q(-0.5 * x * x * l * a);
    k.d[ModePair::LV.index()] = lin(I * x * a) + q(-0.5 * (g * g + x * x) * l * v);
    k.d[ModePair::SA.index()] = q(-0.5 * g * x * l * l);
    k.d[ModePair::SV.index()] = lin(I * g * l) + q(-0.5 * g * g * s * v - g * x * a * v.conj());
    k.d[ModePair::AV.index()] = q(-0.5 * x * x * a * v);
    k.dbar[ModePair::LS.index()] = q(-g * x * l * a.conj());
    Ok(k)
}

/// Coefficients for a thermal phonon with mean occupation `mean_phonon`.
pub fn chaotic_coefficients(params: &ScenarioParams, picture: Picture) -> Result<GaussianCoefficients> {
    let mut p = params.clone();
    p.phonon = PhononInput::Thermal;
    p.validate()?;
    let (g, x, n) = (p.g, p.chi, p.mean_phonon);
    let [l, s, a, _] = ModeId::ALL.map(|m| p.xi(m));
    let [il, is, ia, _] = ModeId::ALL.map(|m| p.intensity(m));

    let mut k = GaussianCoefficients::zero(&p, picture);
    k.b = [
        RSeries::quadratic(x * x * ia * (n + 1.0) + g * g * is * n),
        RSeries::quadratic(g * g * il * (n + 1.0)),
        RSeries::quadratic(x * x * il * n),
        RSeries::constant(n),
    ];
    let n2 = 2.0 * n + 1.0;
    k.c[0] = q(-g * x * a * s * n2);
    k.c[3] = q(-g * x * s.conj() * a);
    k.d[ModePair::LS.index()] = q(-0.5 * g * g * l * s * n2);
    k.d[ModePair::LA.index()] = q(-0.5 * x * x * l * a * n2);
    k.d[ModePair::SA.index()] = q(-0.5 * g * x * l * l * n2);
    k.d[ModePair::SV.index()] = lin(I * g * l * (n + 1.0));
    k.d[ModePair::LV.index()] = lin(I * x * a * (n + 1.0));
    k.dbar[ModePair::LS.index()] = q(-g * x * a.conj() * l * (n + 1.0));
    k.dbar[ModePair::LA.index()] = q(-g * x * s.conj() * l * n);
    k.dbar[ModePair::LV.index()] = lin(I * g * s.conj() * n);
    k.dbar[ModePair::AV.index()] = lin(I * x * l.conj() * n);
    Ok(k)
}

/// Coherent or chaotic coefficients according to the phonon input.
pub fn coefficients(params: &ScenarioParams, picture: Picture) -> Result<GaussianCoefficients> {
    if params.is_thermal() {
        chaotic_coefficients(params, picture)
    } else {
        coherent_coefficients(params, picture)
    }
}

/// Mean amplitudes xi_j(t) to first order in t (interaction picture).
///
/// For a thermal phonon the Gaussian average sets xi_V = 0.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MeanAmplitudes {
    pub picture: Picture,
    pub t: f64,
    pub omega: [f64; 4],
    pub xi: [CSeries; 4],
}

impl MeanAmplitudes {
    pub fn new(params: &ScenarioParams, picture: Picture) -> Self {
        let (g, x) = (params.g, params.chi);
        let [l, s, a, mut v] = ModeId::ALL.map(|m| params.xi(m));
        if params.is_thermal() {
            v = C64::default();
        }
        let c = CSeries::constant;
        MeanAmplitudes {
            picture,
            t: params.t,
            omega: params.omega,
            xi: [
                c(l) + lin(I * g * s * v + I * x * v.conj() * a),
                c(s) + lin(I * g * l * v.conj()),
                c(a) + lin(I * x * l * v),
                c(v) + lin(I * g * l * s.conj() + I * x * l.conj() * a),
            ],
        }
    }

    pub fn series(&self, j: ModeId) -> CSeries {
        self.xi[j.index()]
    }

    pub fn value(&self, j: ModeId) -> C64 {
        let z = self.xi[j.index()].eval(self.t);
        match self.picture {
            Picture::Interaction => z,
            Picture::Lab => z * C64::new(0.0, -self.omega[j.index()] * self.t).exp(),
        }
    }
}

/// `<(ΔW_j)²>_N = B² + |C|² + 2B|ξ|² + (C ξ*² + c.c.)` as a truncated series.
pub fn normal_variance_series(k: &GaussianCoefficients, amp: &MeanAmplitudes, j: ModeId) -> RSeries {
    let (b, c, x) = (k.b_series(j), k.c_series(j), amp.series(j));
    let x2 = x.conj() * x.conj();
    b * b + c.norm_sqr() + b * x.norm_sqr() * 2.0 + (c * x2).re() * 2.0
}

/// `<ΔW_i ΔW_j>_N = |D|² + |D̄|² + (D ξ_i* ξ_j* - D̄ ξ_i ξ_j* + c.c.)`.
pub fn cross_variance_series(k: &GaussianCoefficients, amp: &MeanAmplitudes, pair: ModePair) -> RSeries {
    let (i, j) = pair.modes();
    let (d, db) = (k.d_series(pair), k.dbar_series(pair));
    let (xi, xj) = (amp.series(i), amp.series(j));
    let z = d * xi.conj() * xj.conj() - db * xi * xj.conj();
    d.norm_sqr() + db.norm_sqr() + z.re() * 2.0
}

pub fn normal_variance(k: &GaussianCoefficients, amp: &MeanAmplitudes, j: ModeId) -> f64 {
    normal_variance_series(k, amp, j).eval(k.t)
}

pub fn cross_variance(k: &GaussianCoefficients, amp: &MeanAmplitudes, i: ModeId, j: ModeId) -> Result<f64> {
    let pair = ModePair::new(i, j)?;
    Ok(cross_variance_series(k, amp, pair).eval(k.t))
}
