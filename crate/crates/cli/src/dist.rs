//! The `dist` subcommand.

use crate::args::{DistArgs, Format};
use crate::output::{csv_row, finite, json, linspace, num};
use crate::{CliError, Result};
use raman_nc::distributions::*;
use raman_nc::{ModeId, ModePair};
use serde::Serialize;

pub const NAMES: &str = "p_sv, p_lv, quasi_sv, quasi_lv, fano_L, fano_V, cond_L_given_V, cond_V_given_L, diff, poisson, subshot_R, s_th, s_th_sv, s_th_lv, s_shift";

fn need(x: Option<f64>, flag: &str, name: &str) -> Result<f64> {
    x.ok_or_else(|| CliError::Usage(format!("{name} needs --{flag}")))
}

/// Tabular result of one distribution command.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Table {
    pub name: String,
    /// Parameters and derived constants, in a fixed order.
    pub metadata: Vec<(String, f64)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    fn new(name: &str, columns: &[&str]) -> Self {
        Table { name: name.into(), metadata: Vec::new(), columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    fn meta(mut self, key: &str, v: f64) -> Self {
        self.metadata.push((key.into(), v));
        self
    }

    fn scalar(name: &str, pairs: &[(&str, f64)]) -> Self {
        let mut t = Table::new(name, &["quantity", "value"]);
        t.metadata = pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect();
        t
    }
}

fn lattice_2d(name: &str, d: &CountDistribution, cols: [&str; 2]) -> Table {
    let mut t = Table::new(name, &[cols[0], cols[1], "p"]);
    if let Support::TwoD { n1_max, n2_max } = d.support {
        for a in 0..=n1_max {
            for b in 0..=n2_max {
                t.rows.push(vec![a as f64, b as f64, d.p2(a, b)]);
            }
        }
    }
    t.meta("total", d.total()).meta("tail_bound", d.tail_bound)
}

fn lattice_1d(name: &str, d: &CountDistribution, col: &str) -> Table {
    let mut t = Table::new(name, &[col, "p"]);
    t.rows = d.mass.iter().enumerate().map(|(n, p)| vec![n as f64, *p]).collect();
    t.meta("total", d.total()).meta("tail_bound", d.tail_bound)
}

fn n_max_or(a: &DistArgs, ratio: f64) -> usize {
    a.n_max.unwrap_or_else(|| default_n_max(ratio).max(1))
}

fn range(spec: &str) -> Result<(usize, usize)> {
    let bad = || CliError::Usage(format!("expected a:b, got `{spec}`"));
    let (a, b) = spec.split_once(':').ok_or_else(bad)?;
    let (a, b): (usize, usize) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

fn quasi_grid(name: &str, cols: [&str; 2], grid: &[f64], f: impl Fn(f64, f64) -> raman_nc::Result<f64>) -> Result<Table> {
    let mut t = Table::new(name, &[cols[0], cols[1], "value"]);
    let mut min = f64::INFINITY;
    for &x in grid {
        for &y in grid {
            let v = f(x, y)?;
            min = min.min(v);
            t.rows.push(vec![x, y, v]);
        }
    }
    Ok(t.meta("grid_min", grid[0]).meta("grid_max", grid[grid.len() - 1]).meta("grid_count", grid.len() as f64).meta("minimum", min))
}

/// Evaluate a named distribution command.
pub fn compute(a: &DistArgs) -> Result<Table> {
    let n = a.name.as_str();
    let t = match n {
        "p_sv" => {
            let b = need(a.b_s, "B_S", n)?;
            let d = joint_number_sv(b, n_max_or(a, b / (1.0 + b)))?;
            lattice_2d(n, &d, ["n_S", "n_V"]).meta("B_S", b)
        }
        "p_lv" => {
            let (bv, k) = (need(a.b_v, "B_V", n)?, need(a.k_lv, "K_LV", n)?);
            let d = joint_number_lv(bv, k, n_max_or(a, bv / (1.0 + bv)))?;
            lattice_2d(n, &d, ["n_L", "n_V"]).meta("B_V", bv).meta("K_LV", k)
        }
        "quasi_sv" => {
            let b = need(a.b_s, "B_S", n)?;
            let s = need(a.s, "s", n)?;
            let k = a.k_sv.unwrap_or(-b);
            let spec = QuasiDistributionSpec::sv(b, k, s)?;
            let grid = linspace(&a.grid)?;
            quasi_grid(n, ["W_S", "W_V"], &grid, |x, y| quasi_intensity_sv(x, y, &spec))?
                .meta("B_S", b)
                .meta("K_SV", k)
                .meta("s", s)
                .meta("B_eff", spec.b_eff)
                .meta("K_eff", spec.k_eff)
        }
        "quasi_lv" => {
            let (bl, bv) = (need(a.b_l, "B_L", n)?, need(a.b_v, "B_V", n)?);
            let grid = linspace(&a.grid)?;
            quasi_grid(n, ["W_L", "W_V"], &grid, |x, y| quasi_intensity_lv(x, y, bl, bv))?.meta("B_L", bl).meta("B_V", bv)
        }
        "fano_L" => {
            let (bl, bv) = (need(a.b_l, "B_L", n)?, need(a.b_v, "B_V", n)?);
            Table::scalar(n, &[("B_L", bl), ("B_V", bv), ("F_L_C", conditional_fano_l(bl, bv)?)])
        }
        "fano_V" => {
            let (bl, bv) = (need(a.b_l, "B_L", n)?, need(a.b_v, "B_V", n)?);
            let (lo, hi) = range(&a.n_l)?;
            let mut t = Table::new(n, &["n_L", "F_V_C"]).meta("B_L", bl).meta("B_V", bv);
            for nl in lo..=hi {
                t.rows.push(vec![nl as f64, conditional_fano_v(nl, bl, bv)?]);
            }
            t
        }
        "cond_L_given_V" | "cond_V_given_L" => {
            let (bl, bv) = (need(a.b_l, "B_L", n)?, need(a.b_v, "B_V", n)?);
            let given = a.given.ok_or_else(|| CliError::Usage(format!("{n} needs --given")))?;
            let (dir, col) =
                if n == "cond_L_given_V" { (Conditioning::LGivenV, "n_L") } else { (Conditioning::VGivenL, "n_V") };
            let q = ((bv - bl) / (1.0 + bv)).clamp(0.0, 0.999);
            let d = conditional_number(dir, given, bl, bv, a.n_max.unwrap_or(given + default_n_max(q).max(1)))?;
            lattice_1d(n, &d, col).meta("B_L", bl).meta("B_V", bv).meta("given", given as f64)
        }
        "diff" => {
            let (bl, bv) = (need(a.b_l, "B_L", n)?, need(a.b_v, "B_V", n)?);
            let dd = bv - bl;
            let r = difference_number(bl, bv, n_max_or(a, (dd / (1.0 + dd)).clamp(0.0, 0.999)))?;
            lattice_1d(n, &r.distribution, "n").meta("B_L", bl).meta("B_V", bv).meta("variance", r.variance)
        }
        "poisson" => {
            let (bl, bv) = (need(a.b_l, "B_L", n)?, need(a.b_v, "B_V", n)?);
            let nm = a.n_max.unwrap_or(((bl + bv) * 10.0).ceil() as usize + 30);
            lattice_1d(n, &poisson_reference(bl, bv, nm)?, "n").meta("B_L", bl).meta("B_V", bv)
        }
        "subshot_R" => {
            let (bl, bv) = (need(a.b_l, "B_L", n)?, need(a.b_v, "B_V", n)?);
            Table::scalar(n, &[("B_L", bl), ("B_V", bv), ("R", subshot_r(bl, bv)?)])
        }
        "s_th" => {
            let pair: ModePair = a
                .pair
                .as_deref()
                .ok_or_else(|| CliError::Usage("s_th needs --pair".into()))?
                .parse()?;
            let (bi, bj, k) = (need(a.b_i, "B_i", n)?, need(a.b_j, "B_j", n)?, need(a.k, "K", n)?);
            let (i, j) = pair.modes();
            Table::scalar(n, &[("B_i", bi), ("B_j", bj), ("K", k), ("s_th", threshold_ordering((i, j), bi, bj, k)?)])
        }
        "s_th_sv" => {
            let b = need(a.b_s, "B_S", n)?;
            let exact = threshold_ordering((ModeId::S, ModeId::V), b, b, -b)?;
            Table::scalar(
                n,
                &[("B_S", b), ("s_th_simplified", threshold_ordering_sv_simplified(b)?), ("s_th_exact", exact)],
            )
        }
        "s_th_lv" => {
            let (gt, ct) = (need(a.gt, "gt", n)?, need(a.chit, "chit", n)?);
            let (il, ia) = (need(a.i_l, "I_L", n)?, need(a.i_a, "I_A", n)?);
            Table::scalar(
                n,
                &[("gt", gt), ("chit", ct), ("I_L", il), ("I_A", ia), ("s_th", threshold_ordering_lv_simplified(gt, ct, il, ia)?)],
            )
        }
        "s_shift" => {
            let (b, s) = (need(a.b_s, "B_S", n)?, need(a.s, "s", n)?);
            let k = a.k_sv.unwrap_or(-b);
            let spec = QuasiDistributionSpec::sv(b, k, s)?;
            Table::scalar(n, &[("B_S", b), ("K_SV", k), ("s", s), ("B_Ss", spec.b_eff), ("K_SVs", spec.k_eff)])
        }
        _ => {
            return Err(raman_nc::ModelError::Unknown { name: n.into(), valid: NAMES.into() }.into());
        }
    };
    for (k, v) in &t.metadata {
        finite(k, *v)?;
    }
    for row in &t.rows {
        for v in row {
            finite(n, *v)?;
        }
    }
    Ok(t)
}

pub fn render(t: &Table, format: Format) -> String {
    match format {
        Format::Csv => {
            let mut out = csv_row(&t.columns);
            if t.rows.is_empty() {
                for (k, v) in &t.metadata {
                    out += &csv_row(&[k.clone(), num(*v)]);
                }
            } else {
                for row in &t.rows {
                    out += &csv_row(&row.iter().map(|v| num(*v)).collect::<Vec<_>>());
                }
            }
            out
        }
        Format::Json => json(t),
    }
}

pub fn run(a: &DistArgs, format: Format) -> Result<String> {
    Ok(render(&compute(a)?, format))
}
