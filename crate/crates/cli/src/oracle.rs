//! The `oracle` subcommand.

use crate::args::{Format, OracleArgs};
use crate::output::{csv_row, json, num};
use crate::source::resolve;
use crate::{CliError, Result};
use raman_nc::scenario::parse_real;
use raman_nc::{ModePair, ScenarioParams};
use raman_nc_fock::verify::{check_desk, verify_targets, VerifyOptions};
use raman_nc_fock::*;
use serde::Serialize;

#[derive(Serialize)]
struct Counting {
    pair: String,
    t: f64,
    fluctuations: bool,
    n_max: usize,
    off_diagonal: f64,
    first_above_second: f64,
    tail_bound: f64,
    mass: Vec<Vec<f64>>,
}

#[derive(Serialize)]
pub struct OracleJson {
    preset: String,
    scenario: ScenarioParams,
    t: Vec<f64>,
    targets: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    cutoffs: Option<Cutoffs>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    runs: Vec<verify::OracleRun>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    reports: Vec<ConvergenceReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    counting: Option<Counting>,
}

fn counting(p: &ScenarioParams, pair: ModePair, t: f64, a: &OracleArgs) -> Result<Counting> {
    let c = Cutoffs::auto(p, t, a.cutoff_tol)?;
    let e = prepare_initial(p, c, PrepareOptions { tol: 1e-14, thermal_components: None })?;
    let (e, _) = evolve_ensemble(&e, p, t, &EvolveOptions::default())?;
    let d = joint_counting(&e, pair, a.n_max, a.fluctuations)?;
    let raman_nc::distributions::Support::TwoD { n1_max, n2_max } = d.support else { unreachable!() };
    Ok(Counting {
        pair: pair.to_string(),
        t,
        fluctuations: a.fluctuations,
        n_max: a.n_max,
        off_diagonal: d.mass_where(|x, y| x != y),
        first_above_second: d.mass_where(|x, y| x > y),
        tail_bound: d.tail_bound,
        mass: (0..=n1_max).map(|x| (0..=n2_max).map(|y| d.p2(x, y)).collect()).collect(),
    })
}

pub fn report(a: &OracleArgs) -> Result<OracleJson> {
    let src = resolve(&a.source)?;
    let t: Vec<f64> = a.t.iter().map(|s| parse_real(s)).collect::<raman_nc::Result<_>>()?;
    check_desk(&src.scenario, &t)?;
    let names: Vec<String> = a.targets.iter().map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect();
    let targets: Vec<OracleTarget> = names.iter().map(|s| s.parse()).collect::<raman_nc_fock::Result<_>>()?;
    let mut out = OracleJson {
        preset: src.name.clone(),
        scenario: src.scenario.clone(),
        t: t.clone(),
        targets: names,
        cutoffs: None,
        runs: Vec::new(),
        reports: Vec::new(),
        counting: None,
    };
    if !targets.is_empty() {
        let opts = VerifyOptions { cutoff_tol: a.cutoff_tol, ..VerifyOptions::default() };
        let v = verify_targets(&src.scenario, &targets, &t, &opts)?;
        out.cutoffs = Some(v.cutoffs);
        out.runs = v.runs;
        out.reports = v.reports;
    }
    if let Some(pair) = &a.counting {
        let pair: ModePair = pair.parse()?;
        let t_max = t.iter().cloned().fold(0.0, f64::max);
        out.counting = Some(counting(&src.scenario, pair, t_max, a)?);
    }
    Ok(out)
}

pub fn run(a: &OracleArgs, format: Format) -> Result<String> {
    let r = report(a)?;
    Ok(match format {
        Format::Json => json(&r),
        Format::Csv => {
            if r.counting.is_some() && r.reports.is_empty() {
                return Err(CliError::Usage("counting output is JSON only; use --format json".into()));
            }
            let mut s = csv_row(&["target", "t", "oracle", "model", "abs_error", "rel_error", "slope"]);
            for rep in &r.reports {
                let slope = rep.slope.map(num).unwrap_or_default();
                for p in &rep.points {
                    let rel = p.rel_error.map(num).unwrap_or_default();
                    s += &csv_row(&[rep.target.clone(), num(p.t), num(p.oracle), num(p.model), num(p.abs_error), rel, slope.clone()]);
                }
            }
            s
        }
    })
}
