//! Resolving presets, scenario files and `--set` overrides.

use crate::args::{Format, ScenarioArgs};
use crate::output::{csv_row, json};
use crate::{CliError, Result};
use raman_nc::scenario::{apply_assignment, builtin_presets, parse_scenario, summary_grid, write_scenario};
use raman_nc::witnesses::SummaryGrid;
use raman_nc::{ModelError, ScenarioParams};
use serde::Serialize;
use std::path::{Path, PathBuf};

pub const PRESET_DIR_VAR: &str = "RAMAN_NC_PRESET_DIR";

#[derive(Clone, Debug, Serialize)]
pub struct Resolved {
    pub name: String,
    pub scenario: ScenarioParams,
    #[serde(skip)]
    pub grid: SummaryGrid,
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn preset_dir() -> Option<PathBuf> {
    std::env::var_os(PRESET_DIR_VAR).map(PathBuf::from)
}

fn user_presets() -> Result<Vec<String>> {
    let Some(dir) = preset_dir() else { return Ok(Vec::new()) };
    let entries = std::fs::read_dir(&dir).map_err(|source| CliError::Io { path: dir.display().to_string(), source })?;
    let mut names: Vec<String> = entries
        .filter_map(|e| e.ok())
        .filter_map(|e| e.file_name().to_str().and_then(|n| n.strip_suffix(".scenario")).map(String::from))
        .collect();
    names.sort();
    Ok(names)
}

/// Look a preset up in RAMAN_NC_PRESET_DIR first, then among the built-ins.
pub fn find(name: &str) -> Result<Resolved> {
    if let Some(dir) = preset_dir() {
        let path = dir.join(format!("{name}.scenario"));
        if path.is_file() {
            let scenario = parse_scenario(&read(&path)?)?;
            return Ok(Resolved { name: name.into(), scenario, grid: summary_grid() });
        }
    }
    match builtin_presets().into_iter().find(|p| p.name == name) {
        Some(p) => Ok(Resolved { name: name.into(), scenario: p.scenario, grid: p.grid }),
        None => {
            let mut valid: Vec<String> = builtin_presets().iter().map(|p| p.name.to_string()).collect();
            valid.extend(user_presets()?);
            Err(ModelError::Unknown { name: name.into(), valid: valid.join(", ") }.into())
        }
    }
}

/// Base scenario plus overrides, validated.
pub fn resolve(args: &ScenarioArgs) -> Result<Resolved> {
    let mut r = if let Some(name) = &args.preset {
        find(name)?
    } else if let Some(path) = &args.scenario {
        Resolved { name: path.display().to_string(), scenario: parse_scenario(&read(path)?)?, grid: summary_grid() }
    } else {
        Resolved { name: "default".into(), scenario: ScenarioParams::default(), grid: summary_grid() }
    };
    for kv in &args.set {
        let (k, v) = kv.split_once('=').ok_or_else(|| CliError::Usage(format!("--set expects KEY=VALUE, got `{kv}`")))?;
        apply_assignment(&mut r.scenario, k, v)?;
    }
    r.scenario.validate()?;
    Ok(r)
}

/// Keys fixed by `--set`.
pub fn set_keys(args: &ScenarioArgs) -> Vec<String> {
    args.set.iter().filter_map(|kv| kv.split_once('=')).map(|(k, _)| k.trim().to_string()).collect()
}

pub fn list_presets(format: Format) -> Result<String> {
    let mut rows: Vec<(String, String)> =
        builtin_presets().iter().map(|p| (p.name.to_string(), p.description.to_string())).collect();
    for name in user_presets()? {
        rows.retain(|r| r.0 != name);
        rows.push((name, "user preset".into()));
    }
    Ok(match format {
        Format::Csv => {
            let mut s = csv_row(&["name", "description"]);
            for (n, d) in &rows {
                s += &csv_row(&[n.as_str(), &format!("\"{d}\"")]);
            }
            s
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Row<'a> {
                name: &'a str,
                description: &'a str,
            }
            json(&rows.iter().map(|(n, d)| Row { name: n, description: d }).collect::<Vec<_>>())
        }
    })
}

pub fn show_preset(name: &str) -> Result<String> {
    Ok(write_scenario(&find(name)?.scenario))
}
