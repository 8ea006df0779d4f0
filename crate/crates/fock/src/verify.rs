//! Oracle versus second-order model over a list of times.

use crate::evolve::{evolve_ensemble, EvolutionReport, EvolveOptions};
use crate::moments::{extract_moments, OracleCoefficients};
use crate::state::{prepare_initial, Cutoffs, PrepareOptions};
use crate::{OracleError, Result};
use num_complex::Complex64 as C64;
use raman_nc::model::{cross_variance_series, normal_variance_series};
use raman_nc::witnesses::{model_for, witness_series};
use raman_nc::{GaussianCoefficients, MeanAmplitudes, ModeId, ModePair, ScenarioParams, WitnessId};
use rayon::prelude::*;
use serde::Serialize;
use std::fmt;
use std::str::FromStr;

/// Largest coherent amplitude the oracle accepts.
pub const DESK_MAGNITUDE: f64 = 2.5;

/// A quantity compared between oracle and model.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleTarget {
    Witness(WitnessId),
    B(ModeId),
    C(ModeId),
    D(ModePair),
    Dbar(ModePair),
    Var(ModeId),
    Cov(ModePair),
}

impl fmt::Display for OracleTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleTarget::Witness(w) => write!(f, "{w}"),
            OracleTarget::B(j) => write!(f, "B_{j}"),
            OracleTarget::C(j) => write!(f, "C_{j}"),
            OracleTarget::D(p) => write!(f, "D_{p}"),
            OracleTarget::Dbar(p) => write!(f, "Dbar_{p}"),
            OracleTarget::Var(j) => write!(f, "var_{j}"),
            OracleTarget::Cov(p) => write!(f, "cov_{p}"),
        }
    }
}

impl FromStr for OracleTarget {
    type Err = OracleError;
    fn from_str(s: &str) -> Result<Self> {
        let bad = |e: raman_nc::ModelError| OracleError::Model(e);
        if let Some((head, rest)) = s.split_once('_') {
            let t = match head {
                "B" => Some(OracleTarget::B(rest.parse().map_err(bad)?)),
                "C" if rest.len() == 1 => Some(OracleTarget::C(rest.parse().map_err(bad)?)),
                "D" => Some(OracleTarget::D(rest.parse().map_err(bad)?)),
                "Dbar" => Some(OracleTarget::Dbar(rest.parse().map_err(bad)?)),
                "var" => Some(OracleTarget::Var(rest.parse().map_err(bad)?)),
                "cov" => Some(OracleTarget::Cov(rest.parse().map_err(bad)?)),
                _ => None,
            };
            if let Some(t) = t {
                return Ok(t);
            }
        }
        s.parse::<WitnessId>().map(OracleTarget::Witness).map_err(|_| {
            OracleError::Model(raman_nc::ModelError::Unknown {
                name: s.into(),
                valid: "witness ids, B_<mode>, C_<mode>, D_<pair>, Dbar_<pair>, var_<mode>, cov_<pair>".into(),
            })
        })
    }
}

/// Model and oracle values of one target. Complex targets are compared by
/// the modulus of their difference; `value` fields then hold moduli.
fn compare(target: OracleTarget, o: &OracleCoefficients, k: &GaussianCoefficients, amp: &MeanAmplitudes) -> (f64, f64, f64) {
    let t = o.t;
    let cplx = |a: C64, b: C64| (a.norm(), b.norm(), (a - b).norm());
    let real = |a: f64, b: f64| (a, b, (a - b).abs());
    match target {
        OracleTarget::Witness(w) => real(o.witness(w), witness_series(w, k, amp).eval(t)),
        OracleTarget::B(j) => real(o.b[j.index()], k.b_series(j).eval(t)),
        OracleTarget::C(j) => cplx(o.c[j.index()], k.c_series(j).eval(t)),
        OracleTarget::D(p) => cplx(o.d[p.index()], k.d_series(p).eval(t)),
        OracleTarget::Dbar(p) => cplx(o.dbar[p.index()], k.dbar_series(p).eval(t)),
        OracleTarget::Var(j) => real(o.normal_variance[j.index()], normal_variance_series(k, amp, j).eval(t)),
        OracleTarget::Cov(p) => real(o.cross_variance[p.index()], cross_variance_series(k, amp, p).eval(t)),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvergencePoint {
    pub t: f64,
    pub oracle: f64,
    pub model: f64,
    pub abs_error: f64,
    /// `None` when the model value vanishes.
    pub rel_error: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvergenceReport {
    pub target: String,
    pub points: Vec<ConvergencePoint>,
    /// Least-squares slope of `ln |error|` against `ln t`.
    pub slope: Option<f64>,
    /// Largest sampled `t` up to which every relative error is at most 10%.
    pub validity_radius: Option<f64>,
}

/// Oracle state at one time, shared by all targets.
#[derive(Clone, Debug, Serialize)]
pub struct OracleRun {
    pub t: f64,
    pub coefficients: OracleCoefficients,
    pub evolution: EvolutionReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyOutput {
    pub cutoffs: Cutoffs,
    pub runs: Vec<OracleRun>,
    pub reports: Vec<ConvergenceReport>,
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub prepare: PrepareOptions,
    pub evolve: EvolveOptions,
    /// Tail tolerance for automatic cutoffs.
    pub cutoff_tol: f64,
    pub cutoffs: Option<Cutoffs>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            prepare: PrepareOptions { tol: 1e-14, thermal_components: None },
            evolve: EvolveOptions::default(),
            cutoff_tol: 1e-15,
            cutoffs: None,
        }
    }
}

fn slope(points: &[ConvergencePoint]) -> Option<f64> {
    let xy: Vec<(f64, f64)> =
        points.iter().filter(|p| p.abs_error > 0.0 && p.t > 0.0).map(|p| (p.t.ln(), p.abs_error.ln())).collect();
    if xy.len() < 2 {
        return None;
    }
    let n = xy.len() as f64;
    let mx = xy.iter().map(|p| p.0).sum::<f64>() / n;
    let my = xy.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = xy.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    Some(xy.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<f64>() / sxx)
}

fn validity_radius(points: &[ConvergencePoint]) -> Option<f64> {
    let mut sorted: Vec<_> = points.iter().collect();
    sorted.sort_by(|a, b| a.t.total_cmp(&b.t));
    let mut best = None;
    for p in sorted {
        match p.rel_error {
            Some(r) if r <= 0.1 => best = Some(p.t),
            Some(_) => break,
            None => {}
        }
    }
    best
}

/// Check oracle preconditions: desk-scale amplitudes and positive times.
pub fn check_desk(params: &ScenarioParams, t_list: &[f64]) -> Result<()> {
    params.validate()?;
    if let Some(m) = params.magnitude.iter().find(|m| **m > DESK_MAGNITUDE) {
        return Err(OracleError::Precondition(format!("amplitude {m} above desk scale {DESK_MAGNITUDE}")));
    }
    if let Some(t) = t_list.iter().find(|t| !(t.is_finite() && **t > 0.0)) {
        return Err(OracleError::Precondition(format!("oracle times must be > 0, got {t}")));
    }
    Ok(())
}

/// Run the oracle at each time (concurrently) and compare every target.
pub fn verify_targets(
    params: &ScenarioParams,
    targets: &[OracleTarget],
    t_list: &[f64],
    opts: &VerifyOptions,
) -> Result<VerifyOutput> {
    check_desk(params, t_list)?;
    let t_max = t_list.iter().cloned().fold(0.0, f64::max);
    let cutoffs = match opts.cutoffs {
        Some(c) => c,
        None => Cutoffs::auto(params, t_max, opts.cutoff_tol)?,
    };
    let initial = prepare_initial(params, cutoffs, opts.prepare)?;
    let runs: Vec<OracleRun> = t_list
        .par_iter()
        .map(|&t| {
            let (ens, evolution) = evolve_ensemble(&initial, params, t, &opts.evolve)?;
            let coefficients = extract_moments(&ens, t, params.omega).coefficients();
            Ok(OracleRun { t, coefficients, evolution })
        })
        .collect::<Result<_>>()?;
    let reports = targets
        .iter()
        .map(|&target| {
            let points: Vec<ConvergencePoint> = runs
                .iter()
                .map(|run| {
                    let mut s = params.clone();
                    s.t = run.t;
                    let (k, amp) = model_for(&s)?;
                    let (oracle, model, abs_error) = compare(target, &run.coefficients, &k, &amp);
                    let rel_error = if model.abs() > 1e-300 { Some(abs_error / model.abs()) } else { None };
                    Ok(ConvergencePoint { t: run.t, oracle, model, abs_error, rel_error })
                })
                .collect::<Result<_>>()?;
            Ok(ConvergenceReport { target: target.to_string(), slope: slope(&points), validity_radius: validity_radius(&points), points })
        })
        .collect::<Result<_>>()?;
    Ok(VerifyOutput { cutoffs, runs, reports })
}

/// Convergence report of one witness.
pub fn verify_short_time(params: &ScenarioParams, witness: WitnessId, t_list: &[f64]) -> Result<ConvergenceReport> {
    let out = verify_targets(params, &[OracleTarget::Witness(witness)], t_list, &VerifyOptions::default())?;
    Ok(out.reports.into_iter().next().expect("one target"))
}
