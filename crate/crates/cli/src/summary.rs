//! The `summary` subcommand.

use crate::args::{Format, SummaryArgs};
use crate::output::{csv_row, json, linspace};
use crate::source::resolve;
use crate::Result;
use raman_nc::witnesses::{witness_summary, SignTable, SUMMARY_FAMILIES};
use raman_nc::{WitnessId, ModePair};
use serde::Serialize;

fn family_label(kind: raman_nc::WitnessKind) -> String {
    // family prefix of the witness id, e.g. `Kp` from `Kp_SV`
    WitnessId::pair(kind, ModePair::LS).to_string().trim_end_matches("_LS").to_string()
}

pub fn table(a: &SummaryArgs) -> Result<(String, SignTable)> {
    let src = resolve(&a.source)?;
    let mut grid = src.grid.clone();
    if let Some(t) = &a.t {
        grid.t = linspace(t)?;
    }
    Ok((src.name, witness_summary(&src.scenario, &grid)?))
}

#[derive(Serialize)]
struct Row {
    pair: String,
    cells: Vec<(String, &'static str)>,
}

pub fn run(a: &SummaryArgs, format: Format) -> Result<String> {
    let (name, t) = table(a)?;
    Ok(match format {
        Format::Csv => {
            let header: Vec<String> = std::iter::once("pair".to_string()).chain(SUMMARY_FAMILIES.iter().map(|k| family_label(*k))).collect();
            let mut out = csv_row(&header);
            for row in &t.rows {
                let cells: Vec<String> =
                    std::iter::once(row.pair.to_string()).chain(row.cells.iter().map(|c| c.1.label().to_string())).collect();
                out += &csv_row(&cells);
            }
            out
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Out {
                preset: String,
                rows: Vec<Row>,
            }
            let rows = t
                .rows
                .iter()
                .map(|r| Row { pair: r.pair.to_string(), cells: r.cells.iter().map(|c| (family_label(c.0), c.1.label())).collect() })
                .collect();
            json(&Out { preset: name, rows })
        }
    })
}
