//! Flat `key = value` scenario files and built-in presets.

use crate::error::{ModelError, Result};
use crate::model::{ModeId, PhononInput, ScenarioParams};
use crate::witnesses::SummaryGrid;
use std::f64::consts::PI;
use std::fmt::Write;

const KEYS: [&str; 18] = [
    "g", "chi", "t", "xi_L", "xi_S", "xi_A", "xi_V", "phi_L", "phi_S", "phi_A", "phi_V", "omega_L", "omega_S",
    "omega_A", "omega_V", "mean_phonon", "phonon", "p",
];

fn perr(msg: impl Into<String>) -> ModelError {
    ModelError::Parse(msg.into())
}

/// Parse a real number, accepting `pi` literals such as `pi/6`, `-2*pi/3`, `2pi`.
pub fn parse_real(text: &str) -> Result<f64> {
    let s = text.trim();
    if s.is_empty() {
        return Err(perr("empty number"));
    }
    if s.contains(['i', 'j']) && !s.contains("pi") {
        return Err(perr(format!("`{s}`: complex values are not supported")));
    }
    if let Ok(x) = s.parse::<f64>() {
        return Ok(x);
    }
    let (sign, body) = match s.strip_prefix('-') {
        Some(rest) => (-1.0, rest),
        None => (1.0, s.strip_prefix('+').unwrap_or(s)),
    };
    let (num, den) = match body.split_once('/') {
        Some((a, b)) => (a, Some(b)),
        None => (body, None),
    };
    let mut value = 1.0;
    for factor in num.split('*') {
        let f = factor.trim();
        value *= if f == "pi" {
            PI
        } else if let Some(k) = f.strip_suffix("pi") {
            k.trim().parse::<f64>().map_err(|_| perr(format!("bad number `{s}`")))? * PI
        } else {
            f.parse::<f64>().map_err(|_| perr(format!("bad number `{s}`")))?
        };
    }
    if let Some(d) = den {
        let d: f64 = d.trim().parse().map_err(|_| perr(format!("bad denominator in `{s}`")))?;
        value /= d;
    }
    Ok(sign * value)
}

fn mode_suffix(key: &str, prefix: &str) -> Option<usize> {
    let m = key.strip_prefix(prefix)?;
    m.parse::<ModeId>().ok().map(|m| m.index())
}

/// Apply one `key = value` assignment.
pub fn apply_assignment(s: &mut ScenarioParams, key: &str, value: &str) -> Result<()> {
    let key = key.trim();
    let value = value.trim();
    if key == "phonon" {
        s.phonon = match value {
            "coherent" => PhononInput::Coherent,
            "thermal" | "chaotic" => PhononInput::Thermal,
            _ => return Err(perr(format!("phonon must be coherent or thermal, got `{value}`"))),
        };
        return Ok(());
    }
    let x = parse_real(value)?;
    match key {
        "g" => s.g = x,
        "chi" => s.chi = x,
        "t" => s.t = x,
        "p" => s.chi = x * s.g,
        "mean_phonon" => s.mean_phonon = x,
        _ => {
            if let Some(j) = mode_suffix(key, "xi_") {
                s.magnitude[j] = x;
            } else if let Some(j) = mode_suffix(key, "phi_") {
                s.phase[j] = x;
            } else if let Some(j) = mode_suffix(key, "omega_") {
                s.omega[j] = x;
            } else {
                return Err(ModelError::Unknown { name: key.into(), valid: KEYS.join(", ") });
            }
        }
    }
    Ok(())
}

/// Parse scenario text. Missing keys keep their defaults; `mean_phonon > 0`
/// without an explicit `phonon` key selects a thermal phonon.
pub fn parse_scenario(text: &str) -> Result<ScenarioParams> {
    let mut s = ScenarioParams::default();
    let mut phonon_given = false;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| perr(format!("line {}: expected key = value", lineno + 1)))?;
        phonon_given |= k.trim() == "phonon";
        apply_assignment(&mut s, k, v).map_err(|e| match e {
            ModelError::Parse(m) => perr(format!("line {}: {m}", lineno + 1)),
            other => other,
        })?;
    }
    if !phonon_given && s.mean_phonon > 0.0 {
        s.phonon = PhononInput::Thermal;
    }
    s.validate()?;
    Ok(s)
}

/// Serialize a scenario; floats use the shortest round-trip representation.
pub fn write_scenario(s: &ScenarioParams) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "g = {}", s.g);
    let _ = writeln!(out, "chi = {}", s.chi);
    let _ = writeln!(out, "t = {}", s.t);
    for m in ModeId::ALL {
        let _ = writeln!(out, "xi_{m} = {}", s.magnitude[m.index()]);
    }
    for m in ModeId::ALL {
        let _ = writeln!(out, "phi_{m} = {}", s.phase[m.index()]);
    }
    for m in ModeId::ALL {
        let _ = writeln!(out, "omega_{m} = {}", s.omega[m.index()]);
    }
    let _ = writeln!(out, "mean_phonon = {}", s.mean_phonon);
    let ph = match s.phonon {
        PhononInput::Coherent => "coherent",
        PhononInput::Thermal => "thermal",
    };
    let _ = writeln!(out, "phonon = {ph}");
    out
}

/// Named scenario with the grid used for its sign summary.
#[derive(Clone, Debug)]
pub struct Preset {
    pub name: &'static str,
    pub description: &'static str,
    pub scenario: ScenarioParams,
    pub grid: SummaryGrid,
}

/// Grid used by the built-in presets.
pub fn summary_grid() -> SummaryGrid {
    SummaryGrid {
        t: (1..=10).map(|k| 0.01 * k as f64).collect(),
        p: vec![0.5, 0.9, 1.0, 1.2, 1.5],
        theta1: (0..4).map(|k| k as f64 * PI / 2.0).collect(),
        theta2: (0..6).map(|k| k as f64 * PI / 3.0).collect(),
    }
}

fn desk_omega() -> [f64; 4] {
    // resonant: omega_L = omega_S + omega_V, omega_A = omega_L + omega_V
    [2.0, 1.5, 2.5, 0.5]
}

pub fn builtin_presets() -> Vec<Preset> {
    let fig1 = ScenarioParams::coherent(1.0, 0.9, 0.1, [10.0, 9.0, 1.0, 0.01]);
    let mut fig2 = fig1.clone();
    fig2.set_theta1(PI / 6.0);
    let mut fig3 = fig2.clone();
    fig3.set_theta2(PI / 6.0);
    let desk = ScenarioParams { omega: desk_omega(), ..ScenarioParams::coherent(1.0, 0.9, 0.05, [2.0, 1.0, 0.5, 0.0]) };
    let desk_sp = ScenarioParams { omega: desk_omega(), ..ScenarioParams::coherent(1.0, 0.9, 0.1, [2.0, 0.0, 0.0, 0.0]) };
    let desk_part = ScenarioParams { omega: desk_omega(), ..ScenarioParams::coherent(1.0, 1.0, 0.1, [2.0, 0.0, 1.0, 0.0]) };
    let grid = summary_grid();
    vec![
        Preset { name: "fig1-coherent", description: "coherent input, |xi|=(10,9,1,0.01), phi_L=phi_A, p=0.9, gt=0.1", scenario: fig1, grid: grid.clone() },
        Preset { name: "fig2-coherent", description: "fig1-coherent with theta1=pi/6", scenario: fig2, grid: grid.clone() },
        Preset { name: "fig3-coherent", description: "fig1-coherent with theta1=theta2=pi/6", scenario: fig3, grid: grid.clone() },
        Preset {
            name: "chaotic-default",
            description: "thermal phonon <n_V>=1, |xi|=(10,9,1), p=0.9, gt=0.1",
            scenario: ScenarioParams::chaotic(1.0, 0.9, 0.1, [10.0, 9.0, 1.0, 0.0], 1.0),
            grid: grid.clone(),
        },
        Preset {
            name: "spontaneous",
            description: "pump only, |xi_L|=10, p=0.9, gt=0.1",
            scenario: ScenarioParams::coherent(1.0, 0.9, 0.1, [10.0, 0.0, 0.0, 0.0]),
            grid: grid.clone(),
        },
        Preset {
            name: "partial-spontaneous",
            description: "pump and anti-Stokes seeded, |xi_L|=10, |xi_A|=1, p=0.9, gt=0.1",
            scenario: ScenarioParams::coherent(1.0, 0.9, 0.1, [10.0, 0.0, 1.0, 0.0]),
            grid: grid.clone(),
        },
        Preset { name: "desk", description: "oracle scale: |xi|=(2,1,0.5,0), p=0.9, resonant frequencies", scenario: desk, grid: grid.clone() },
        Preset { name: "desk-spontaneous", description: "oracle scale, pump only |xi_L|=2, p=0.9, gt=0.1", scenario: desk_sp, grid: grid.clone() },
        Preset { name: "desk-partial", description: "oracle scale, |xi_L|=2, |xi_A|=1, p=1, gt=0.1", scenario: desk_part, grid },
    ]
}

pub fn find_preset(name: &str) -> Result<Preset> {
    builtin_presets().into_iter().find(|p| p.name == name).ok_or_else(|| ModelError::Unknown {
        name: name.into(),
        valid: builtin_presets().iter().map(|p| p.name).collect::<Vec<_>>().join(", "),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pi_literals() {
        assert_eq!(parse_real("pi/6").unwrap(), PI / 6.0);
        assert_eq!(parse_real("-pi/3").unwrap(), -PI / 3.0);
        assert_eq!(parse_real("2*pi/3").unwrap(), 2.0 * PI / 3.0);
        assert_eq!(parse_real("2pi").unwrap(), 2.0 * PI);
        assert_eq!(parse_real("0.25").unwrap(), 0.25);
        assert!(parse_real("1+2i").is_err());
        assert!(parse_real("pie").is_err());
    }
}
