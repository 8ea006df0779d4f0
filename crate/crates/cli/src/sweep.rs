//! Witness sweeps over up to two axes.

use crate::args::{Format, WitnessArgs};
use crate::output::{csv_row, finite, json, linspace, num};
use crate::source::{resolve, set_keys};
use crate::{CliError, Result};
use raman_nc::catalog::closed_form_witness;
use raman_nc::distributions::{threshold_ordering, QuasiDistributionSpec};
use raman_nc::model::{cross_variance_series, normal_variance_series};
use raman_nc::scenario::parse_real;
use raman_nc::witnesses::{model_for, witness_series, WitnessKind};
use raman_nc::{ModeId, ModelError, ModePair, PhononInput, ScenarioParams, WitnessId};
use rayon::prelude::*;
use serde::Serialize;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum AxisName {
    Tau,
    P,
    Theta1,
    Theta2,
    MeanPhonon,
    S,
}

impl AxisName {
    fn label(self) -> &'static str {
        match self {
            AxisName::Tau => "tau",
            AxisName::P => "p",
            AxisName::Theta1 => "theta1",
            AxisName::Theta2 => "theta2",
            AxisName::MeanPhonon => "mean_phonon",
            AxisName::S => "s",
        }
    }

    /// Scenario keys that must not be fixed while this axis is swept.
    fn keys(self) -> &'static [&'static str] {
        match self {
            AxisName::Tau => &["t"],
            AxisName::P => &["p", "chi"],
            AxisName::Theta1 => &["phi_A"],
            AxisName::Theta2 => &["phi_S"],
            AxisName::MeanPhonon => &["mean_phonon"],
            AxisName::S => &[],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Axis {
    pub name: AxisName,
    pub values: Vec<f64>,
}

/// `name=min:max:count`.
pub fn parse_axis(spec: &str) -> Result<Axis> {
    let (name, range) = spec.split_once('=').ok_or_else(|| CliError::Usage(format!("axis `{spec}`: expected name=min:max:count")))?;
    let name = match name.trim() {
        "tau" => AxisName::Tau,
        "p" => AxisName::P,
        "theta1" => AxisName::Theta1,
        "theta2" => AxisName::Theta2,
        "mean_phonon" => AxisName::MeanPhonon,
        "s" => AxisName::S,
        other => {
            return Err(CliError::Usage(format!("unknown axis `{other}`; valid: tau, p, theta1, theta2, mean_phonon, s")))
        }
    };
    Ok(Axis { name, values: linspace(range)? })
}

/// A sweep column.
#[derive(Clone, Debug, PartialEq)]
pub enum Target {
    Witness(WitnessId),
    B(ModeId),
    Var(ModeId),
    Cov(ModePair),
    /// Exact threshold ordering from B_i, B_j and K_ij = E_ij.
    Threshold(ModePair),
    /// s-shifted K_SV.
    ShiftedK,
    ClosedForm(String),
}

const VALID_TARGETS: &str =
    "witness ids (lambda_L, lambda_SA, Kp_SV, Km_SV, C_SV, Wp_SV, Wm_SV, E_SV, ...), B_<mode>, var_<mode>, cov_<pair>, s_th_<pair>, Ks_SV, closed:<catalog id>";

impl FromStr for Target {
    type Err = CliError;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let unknown = || CliError::Model(ModelError::Unknown { name: s.into(), valid: VALID_TARGETS.into() });
        if let Some(id) = s.strip_prefix("closed:") {
            raman_nc::catalog::lookup(id)?;
            return Ok(Target::ClosedForm(id.into()));
        }
        if s == "Ks_SV" {
            return Ok(Target::ShiftedK);
        }
        if let Some(p) = s.strip_prefix("s_th_") {
            return p.parse().map(Target::Threshold).map_err(|_| unknown());
        }
        if let Some(m) = s.strip_prefix("B_") {
            return m.parse().map(Target::B).map_err(|_| unknown());
        }
        if let Some(m) = s.strip_prefix("var_") {
            return m.parse().map(Target::Var).map_err(|_| unknown());
        }
        if let Some(p) = s.strip_prefix("cov_") {
            return p.parse().map(Target::Cov).map_err(|_| unknown());
        }
        s.parse().map(Target::Witness).map_err(|_| unknown())
    }
}

impl Target {
    fn is_lambda(&self) -> bool {
        match self {
            Target::Witness(w) => matches!(w.kind, WitnessKind::LambdaSingle | WitnessKind::LambdaPair),
            Target::ClosedForm(id) => id.contains(":lambda_"),
            _ => false,
        }
    }

    pub fn eval(&self, scenario: &ScenarioParams, s: f64) -> Result<f64> {
        let (k, amp) = model_for(scenario)?;
        let t = k.t;
        Ok(match self {
            Target::Witness(w) => witness_series(*w, &k, &amp).eval(t),
            Target::B(j) => k.b_series(*j).eval(t),
            Target::Var(j) => normal_variance_series(&k, &amp, *j).eval(t),
            Target::Cov(p) => cross_variance_series(&k, &amp, *p).eval(t),
            Target::Threshold(p) => {
                let (i, j) = p.modes();
                let e = witness_series(WitnessId::pair(WitnessKind::EPair, *p), &k, &amp).eval(t);
                threshold_ordering((i, j), k.b_series(i).eval(t), k.b_series(j).eval(t), e)?
            }
            Target::ShiftedK => {
                let e = witness_series(WitnessId::pair(WitnessKind::EPair, ModePair::SV), &k, &amp).eval(t);
                QuasiDistributionSpec::sv(k.b_series(ModeId::S).eval(t), e, s)?.k_eff
            }
            Target::ClosedForm(id) => closed_form_witness(scenario, id)?,
        })
    }
}

fn apply(axis: AxisName, v: f64, sc: &mut ScenarioParams, s: &mut f64) -> Result<()> {
    match axis {
        AxisName::Tau => {
            if !(sc.g > 0.0) {
                return Err(ModelError::Domain("tau axis needs g > 0".into()).into());
            }
            sc.t = v / sc.g;
        }
        AxisName::P => sc.chi = v * sc.g,
        AxisName::Theta1 => sc.set_theta1(v),
        AxisName::Theta2 => sc.set_theta2(v),
        AxisName::MeanPhonon => {
            if sc.phonon != PhononInput::Thermal {
                return Err(ModelError::Domain("mean_phonon axis needs a thermal phonon (phonon = thermal)".into()).into());
            }
            sc.mean_phonon = v;
        }
        AxisName::S => *s = v,
    }
    Ok(())
}

#[derive(Serialize)]
struct SweepJson<'a> {
    preset: &'a str,
    scenario: &'a ScenarioParams,
    axes: &'a [Axis],
    targets: &'a [String],
    minus_one: bool,
    rows: Vec<Vec<f64>>,
}

/// Rows in axis-1-major order: axis values followed by target values.
pub fn evaluate(
    base: &ScenarioParams,
    axes: &[Axis],
    targets: &[Target],
    s: f64,
    minus_one: bool,
) -> Result<Vec<Vec<f64>>> {
    let mut points: Vec<Vec<f64>> = vec![Vec::new()];
    for axis in axes {
        points = points.iter().flat_map(|p| axis.values.iter().map(move |v| [p.clone(), vec![*v]].concat())).collect();
    }
    points
        .par_iter()
        .map(|coords| {
            let mut sc = base.clone();
            let mut s = s;
            for (axis, &v) in axes.iter().zip(coords) {
                apply(axis.name, v, &mut sc, &mut s)?;
            }
            sc.validate()?;
            let mut row = coords.clone();
            for t in targets {
                let mut v = t.eval(&sc, s)?;
                if minus_one && t.is_lambda() {
                    v -= 1.0;
                }
                row.push(v);
            }
            Ok(row)
        })
        .collect()
}

pub fn run(a: &WitnessArgs, format: Format, minus_one: bool) -> Result<String> {
    let src = resolve(&a.source)?;
    if a.axes.len() > 2 {
        return Err(CliError::Usage("at most two --axis flags".into()));
    }
    let axes: Vec<Axis> = a.axes.iter().map(|s| parse_axis(s)).collect::<Result<_>>()?;
    if axes.len() == 2 && axes[0].name == axes[1].name {
        return Err(CliError::Usage("the two axes must differ".into()));
    }
    let fixed = set_keys(&a.source);
    for axis in &axes {
        if let Some(k) = axis.name.keys().iter().find(|k| fixed.iter().any(|f| f == *k)) {
            return Err(CliError::Usage(format!("axis {} is swept but `{k}` is also fixed by --set", axis.name.label())));
        }
    }
    let names: Vec<String> = a.targets.iter().map(|t| t.trim().to_string()).collect();
    let targets: Vec<Target> = names.iter().map(|t| t.parse()).collect::<Result<_>>()?;
    let s = parse_real(&a.s)?;
    let rows = evaluate(&src.scenario, &axes, &targets, s, minus_one)?;
    for row in &rows {
        for (i, v) in row.iter().enumerate() {
            let label = if i < axes.len() { axes[i].name.label() } else { names[i - axes.len()].as_str() };
            finite(label, *v)?;
        }
    }
    Ok(match format {
        Format::Csv => {
            let header: Vec<String> =
                axes.iter().map(|a| a.name.label().to_string()).chain(names.iter().cloned()).collect();
            let mut out = csv_row(&header);
            for row in &rows {
                out += &csv_row(&row.iter().map(|v| num(*v)).collect::<Vec<_>>());
            }
            out
        }
        Format::Json => json(&SweepJson {
            preset: &src.name,
            scenario: &src.scenario,
            axes: &axes,
            targets: &names,
            minus_one,
            rows,
        }),
    })
}

