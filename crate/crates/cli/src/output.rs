use crate::{CliError, Result};
use std::io::Write;
use std::path::Path;

/// Fixed float format: 17 significant digits, scientific notation.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn finite(name: &str, x: f64) -> Result<f64> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(CliError::Model(raman_nc::ModelError::Domain(format!("{name} evaluated to {x}"))))
    }
}

pub fn csv_row<S: AsRef<str>>(cells: &[S]) -> String {
    let mut s = cells.iter().map(|c| c.as_ref()).collect::<Vec<_>>().join(",");
    s.push('\n');
    s
}

pub fn json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable output");
    s.push('\n');
    s
}

pub fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    let io = |p: &Path, source| CliError::Io { path: p.display().to_string(), source };
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| io(p, e)),
        None => std::io::stdout().lock().write_all(text.as_bytes()).map_err(|e| io(Path::new("<stdout>"), e)),
    }
}

/// `min:max:count` with `count >= 2`, evenly spaced and inclusive.
pub fn linspace(spec: &str) -> Result<Vec<f64>> {
    let bad = || CliError::Usage(format!("expected min:max:count, got `{spec}`"));
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(bad());
    }
    let lo = raman_nc::scenario::parse_real(parts[0]).map_err(|_| bad())?;
    let hi = raman_nc::scenario::parse_real(parts[1]).map_err(|_| bad())?;
    let n: usize = parts[2].trim().parse().map_err(|_| bad())?;
    if n < 2 {
        return Err(CliError::Usage(format!("grid count must be >= 2 in `{spec}`")));
    }
    Ok((0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect())
}
