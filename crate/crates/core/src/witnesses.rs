//! Nonclassicality criteria evaluated from the Gaussian coefficients.
//!
//! All criteria are computed on the truncated series of the coefficients, so
//! the moduli inside them are expanded consistently to second order in `t`.

use crate::error::{domain, ModelError, Result};
use crate::model::{
    coefficients, cross_variance_series, normal_variance_series, GaussianCoefficients, MeanAmplitudes, ModeId,
    ModePair, Picture, ScenarioParams,
};
use crate::series::RSeries;
use rayon::prelude::*;
use serde::Serialize;
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn factor(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum WitnessKind {
    LambdaSingle,
    LambdaPair,
    KPlus,
    KMinus,
    CSubshot,
    WPlus,
    WMinus,
    EPair,
}

impl WitnessKind {
    pub fn threshold(self) -> f64 {
        match self {
            WitnessKind::LambdaSingle | WitnessKind::LambdaPair => 1.0,
            _ => 0.0,
        }
    }

    fn prefix(self) -> &'static str {
        match self {
            WitnessKind::LambdaSingle | WitnessKind::LambdaPair => "lambda",
            WitnessKind::KPlus => "Kp",
            WitnessKind::KMinus => "Km",
            WitnessKind::CSubshot => "C",
            WitnessKind::WPlus => "Wp",
            WitnessKind::WMinus => "Wm",
            WitnessKind::EPair => "E",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Modes {
    One(ModeId),
    Two(ModePair),
}

/// Witness identifier such as `lambda_L`, `lambda_SA`, `Kp_SV`, `C_LV`, `Wm_SV`, `E_LV`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct WitnessId {
    pub kind: WitnessKind,
    pub modes: Modes,
}

impl WitnessId {
    pub fn single(j: ModeId) -> Self {
        WitnessId { kind: WitnessKind::LambdaSingle, modes: Modes::One(j) }
    }

    pub fn pair(kind: WitnessKind, pair: ModePair) -> Self {
        WitnessId { kind, modes: Modes::Two(pair) }
    }

    /// Every single-mode and pair witness.
    pub fn all() -> Vec<WitnessId> {
        use WitnessKind::*;
        let mut v: Vec<_> = ModeId::ALL.iter().map(|&j| WitnessId::single(j)).collect();
        for kind in [LambdaPair, KPlus, KMinus, CSubshot, WPlus, WMinus, EPair] {
            v.extend(ModePair::ALL.iter().map(|&p| WitnessId::pair(kind, p)));
        }
        v
    }
}

impl fmt::Display for WitnessId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.modes {
            Modes::One(j) => write!(f, "{}_{}", self.kind.prefix(), j),
            Modes::Two(p) => write!(f, "{}_{}", self.kind.prefix(), p),
        }
    }
}

impl FromStr for WitnessId {
    type Err = ModelError;
    fn from_str(s: &str) -> Result<Self> {
        use WitnessKind::*;
        let unknown = || ModelError::Unknown {
            name: s.into(),
            valid: "lambda_<mode>, lambda_<pair>, Kp_<pair>, Km_<pair>, C_<pair>, Wp_<pair>, Wm_<pair>, E_<pair>".into(),
        };
        let (head, modes) = s.split_once('_').ok_or_else(unknown)?;
        if head == "lambda" && modes.len() == 1 {
            return Ok(WitnessId::single(modes.parse().map_err(|_| unknown())?));
        }
        let kind = match head {
            "lambda" => LambdaPair,
            "Kp" | "K+" => KPlus,
            "Km" | "K-" => KMinus,
            "C" => CSubshot,
            "Wp" | "W+" => WPlus,
            "Wm" | "W-" => WMinus,
            "E" => EPair,
            _ => return Err(unknown()),
        };
        Ok(WitnessId::pair(kind, modes.parse().map_err(|_| unknown())?))
    }
}

/// A witness scalar with its classical threshold.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct WitnessValue {
    pub id: WitnessId,
    pub value: f64,
    pub threshold: f64,
    pub nonclassical: bool,
}

impl WitnessValue {
    fn new(id: WitnessId, value: f64) -> Self {
        let threshold = id.kind.threshold();
        WitnessValue { id, value, threshold, nonclassical: value < threshold }
    }
}

fn lambda_single_series(k: &GaussianCoefficients, j: ModeId) -> RSeries {
    (k.b_series(j) - k.c_series(j).abs()) * 2.0 + 1.0
}

fn lambda_pair_series(k: &GaussianCoefficients, pair: ModePair) -> RSeries {
    let (i, j) = pair.modes();
    let inner = k.c_series(i) + k.c_series(j) + k.d_series(pair) * 2.0;
    k.b_series(i) + k.b_series(j) - k.dbar_series(pair).re() * 2.0 - inner.abs() + 1.0
}

fn k_series(k: &GaussianCoefficients, pair: ModePair, sign: Sign) -> RSeries {
    let (i, j) = pair.modes();
    let s = sign.factor();
    let bi = k.b_series(i) + k.c_series(i).abs() * s;
    let bj = k.b_series(j) + k.c_series(j).abs() * s;
    let d = k.d_series(pair).abs() - k.dbar_series(pair).abs() * s;
    bi * bj - d * d
}

fn c_series(k: &GaussianCoefficients, pair: ModePair) -> RSeries {
    let (i, j) = pair.modes();
    let (bi, bj) = (k.b_series(i), k.b_series(j));
    bi * bi + bj * bj + k.c_series(i).norm_sqr() + k.c_series(j).norm_sqr()
        - k.d_series(pair).norm_sqr() * 2.0
        - k.dbar_series(pair).norm_sqr() * 2.0
}

fn e_series(k: &GaussianCoefficients, pair: ModePair) -> RSeries {
    let (i, j) = pair.modes();
    k.b_series(i) * k.b_series(j) - k.d_series(pair).norm_sqr()
}

fn e_caption_series(k: &GaussianCoefficients, pair: ModePair) -> RSeries {
    let (i, j) = pair.modes();
    k.b_series(i) * k.b_series(j) - k.dbar_series(pair).norm_sqr()
}

fn w_series(k: &GaussianCoefficients, amp: &MeanAmplitudes, pair: ModePair, sign: Sign) -> RSeries {
    let (i, j) = pair.modes();
    normal_variance_series(k, amp, i)
        + normal_variance_series(k, amp, j)
        + cross_variance_series(k, amp, pair) * (2.0 * sign.factor())
}

/// Second-order series of any witness.
pub fn witness_series(id: WitnessId, k: &GaussianCoefficients, amp: &MeanAmplitudes) -> RSeries {
    use WitnessKind::*;
    match (id.kind, id.modes) {
        (_, Modes::One(j)) => lambda_single_series(k, j),
        (LambdaPair, Modes::Two(p)) => lambda_pair_series(k, p),
        (KPlus, Modes::Two(p)) => k_series(k, p, Sign::Plus),
        (KMinus, Modes::Two(p)) => k_series(k, p, Sign::Minus),
        (CSubshot, Modes::Two(p)) => c_series(k, p),
        (WPlus, Modes::Two(p)) => w_series(k, amp, p, Sign::Plus),
        (WMinus, Modes::Two(p)) => w_series(k, amp, p, Sign::Minus),
        (EPair, Modes::Two(p)) => e_series(k, p),
        (LambdaSingle, Modes::Two(p)) => lambda_pair_series(k, p),
    }
}

/// Evaluate a witness at the coefficient set's time.
pub fn evaluate(id: WitnessId, k: &GaussianCoefficients, amp: &MeanAmplitudes) -> WitnessValue {
    WitnessValue::new(id, witness_series(id, k, amp).eval(k.t))
}

/// Single-mode principal squeezing `1 + 2(B_j - |C_j|)`.
pub fn lambda_single(k: &GaussianCoefficients, j: ModeId) -> WitnessValue {
    WitnessValue::new(WitnessId::single(j), lambda_single_series(k, j).eval(k.t))
}

/// Compound-mode squeezing `1 + B_i + B_j - 2 Re D̄_ij - |C_i + C_j + 2 D_ij|`.
pub fn lambda_pair(k: &GaussianCoefficients, i: ModeId, j: ModeId) -> Result<WitnessValue> {
    let p = ModePair::new(i, j)?;
    Ok(WitnessValue::new(WitnessId::pair(WitnessKind::LambdaPair, p), lambda_pair_series(k, p).eval(k.t)))
}

/// `(B_i ± |C_i|)(B_j ± |C_j|) - (|D_ij| ∓ |D̄_ij|)²`.
pub fn entanglement_k(k: &GaussianCoefficients, i: ModeId, j: ModeId, sign: Sign) -> Result<WitnessValue> {
    let p = ModePair::new(i, j)?;
    let kind = if sign == Sign::Plus { WitnessKind::KPlus } else { WitnessKind::KMinus };
    Ok(WitnessValue::new(WitnessId::pair(kind, p), k_series(k, p, sign).eval(k.t)))
}

/// `B_i² + B_j² + |C_i|² + |C_j|² - 2|D_ij|² - 2|D̄_ij|²`.
pub fn subshot_c(k: &GaussianCoefficients, i: ModeId, j: ModeId) -> Result<WitnessValue> {
    let p = ModePair::new(i, j)?;
    Ok(WitnessValue::new(WitnessId::pair(WitnessKind::CSubshot, p), c_series(k, p).eval(k.t)))
}

/// `<(ΔW_i)²>_N + <(ΔW_j)²>_N ± 2 <ΔW_i ΔW_j>_N`.
pub fn sum_diff_variance(
    k: &GaussianCoefficients,
    amp: &MeanAmplitudes,
    i: ModeId,
    j: ModeId,
    sign: Sign,
) -> Result<WitnessValue> {
    let p = ModePair::new(i, j)?;
    let kind = if sign == Sign::Plus { WitnessKind::WPlus } else { WitnessKind::WMinus };
    Ok(WitnessValue::new(WitnessId::pair(kind, p), w_series(k, amp, p, sign).eval(k.t)))
}

/// `B_i B_j - |D_ij|²`.
pub fn e_pair(k: &GaussianCoefficients, i: ModeId, j: ModeId) -> Result<WitnessValue> {
    let p = ModePair::new(i, j)?;
    Ok(WitnessValue::new(WitnessId::pair(WitnessKind::EPair, p), e_series(k, p).eval(k.t)))
}

/// Variant `B_i B_j - |D̄_ij|²` built on the normal cross coefficient.
pub fn e_pair_caption(k: &GaussianCoefficients, i: ModeId, j: ModeId) -> Result<f64> {
    let p = ModePair::new(i, j)?;
    Ok(e_caption_series(k, p).eval(k.t))
}

/// Coefficients plus amplitudes for a scenario, interaction picture.
pub fn model_for(params: &ScenarioParams) -> Result<(GaussianCoefficients, MeanAmplitudes)> {
    let k = coefficients(params, Picture::Interaction)?;
    Ok((k, MeanAmplitudes::new(params, Picture::Interaction)))
}

/// Witness value straight from scenario parameters.
pub fn general_witness(params: &ScenarioParams, id: WitnessId) -> Result<WitnessValue> {
    let (k, amp) = model_for(params)?;
    Ok(evaluate(id, &k, &amp))
}

/// Sign class of one witness family over a grid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SignClass {
    AlwaysNegative,
    NegativeRegion,
    Classical,
    NonConclusive,
}

impl SignClass {
    pub fn label(self) -> &'static str {
        match self {
            SignClass::AlwaysNegative => "always -ve",
            SignClass::NegativeRegion => "-ve region",
            SignClass::Classical => ">= threshold",
            SignClass::NonConclusive => "non-conclusive",
        }
    }

    /// Classify `value - threshold` samples; `|d| <= tol` counts as zero.
    pub fn classify(deviations: &[f64], tol: f64) -> SignClass {
        let neg = deviations.iter().filter(|&&d| d < -tol).count();
        if deviations.iter().all(|d| d.abs() <= tol) {
            SignClass::NonConclusive
        } else if neg == deviations.len() {
            SignClass::AlwaysNegative
        } else if neg > 0 {
            SignClass::NegativeRegion
        } else {
            SignClass::Classical
        }
    }
}

/// Grid of times, coupling ratios and mismatch phases for sign summaries.
/// Empty `p`/`theta` lists keep the scenario's own value.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct SummaryGrid {
    pub t: Vec<f64>,
    pub p: Vec<f64>,
    pub theta1: Vec<f64>,
    pub theta2: Vec<f64>,
}

impl SummaryGrid {
    pub fn points(&self, base: &ScenarioParams) -> Vec<ScenarioParams> {
        let keep = |v: &Vec<f64>| if v.is_empty() { vec![f64::NAN] } else { v.clone() };
        let mut out = Vec::new();
        for &t in &self.t {
            for &p in &keep(&self.p) {
                for &th1 in &keep(&self.theta1) {
                    for &th2 in &keep(&self.theta2) {
                        let mut s = base.clone();
                        s.t = t;
                        if !p.is_nan() {
                            s.chi = p * s.g;
                        }
                        if !th1.is_nan() {
                            s.set_theta1(th1);
                        }
                        if !th2.is_nan() {
                            s.set_theta2(th2);
                        }
                        out.push(s);
                    }
                }
            }
        }
        out
    }
}

/// Witness families reported in a sign table.
pub const SUMMARY_FAMILIES: [WitnessKind; 7] = [
    WitnessKind::LambdaPair,
    WitnessKind::KPlus,
    WitnessKind::KMinus,
    WitnessKind::CSubshot,
    WitnessKind::EPair,
    WitnessKind::WPlus,
    WitnessKind::WMinus,
];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SignRow {
    pub pair: ModePair,
    pub cells: Vec<(WitnessKind, SignClass)>,
}

impl SignRow {
    pub fn class(&self, kind: WitnessKind) -> Option<SignClass> {
        self.cells.iter().find(|c| c.0 == kind).map(|c| c.1)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SignTable {
    pub rows: Vec<SignRow>,
}

impl SignTable {
    pub fn row(&self, pair: ModePair) -> &SignRow {
        &self.rows[pair.index()]
    }
}

/// Sign classification of every pair witness over a grid.
pub fn witness_summary(scenario: &ScenarioParams, grid: &SummaryGrid) -> Result<SignTable> {
    let points = grid.points(scenario);
    if points.is_empty() {
        return domain("empty summary grid");
    }
    let values: Vec<Vec<f64>> = points
        .par_iter()
        .map(|s| {
            let (k, amp) = model_for(s)?;
            let mut v = Vec::with_capacity(42);
            for pair in ModePair::ALL {
                for kind in SUMMARY_FAMILIES {
                    let id = WitnessId::pair(kind, pair);
                    v.push(witness_series(id, &k, &amp).eval(k.t) - kind.threshold());
                }
            }
            Ok(v)
        })
        .collect::<Result<_>>()?;
    let scale = values.iter().flatten().fold(1.0f64, |m, d| m.max(d.abs()));
    let tol = 1e-12 * scale;
    let nf = SUMMARY_FAMILIES.len();
    let rows = ModePair::ALL
        .iter()
        .enumerate()
        .map(|(pi, &pair)| SignRow {
            pair,
            cells: SUMMARY_FAMILIES
                .iter()
                .enumerate()
                .map(|(fi, &kind)| {
                    let d: Vec<f64> = values.iter().map(|v| v[pi * nf + fi]).collect();
                    (kind, SignClass::classify(&d, tol))
                })
                .collect(),
        })
        .collect();
    Ok(SignTable { rows })
}
