//! Built-in settings for the adjacent-function and threshold-sweep figures.

use crate::error::Result;
use crate::links::Link;
use crate::models::{CumulativeModel, Model};
use crate::numeric::fmt_sig;
use crate::ordinality::ThetaGrid;
use crate::report::{flatness_csv, sweep_csv, trace_table, CsvTable};
use crate::strength::{
    collapse_categories, flatness_diagnostic, sweep_threshold, trace_g, DefiningFunction, FlatnessTable, Population,
    QuadratureConfig, SweepTable, DEFAULT_FLATNESS_THRESHOLD,
};

pub const SEPARATED: [f64; 3] = [-2.0, 0.0, 2.0];
pub const NEAR_TIED: [f64; 3] = [-2.0, -0.05, 0.05];
/// Threshold dropped from the near-tied model, fusing categories 1 and 2.
pub const COLLAPSE_AT: usize = 2;

pub const SWEEP_FIXED: f64 = -1.0;
pub const SWEEP_RANGE: (f64, f64) = (-1.0, 5.0);
/// Step 0.05, so 0.5 and 5 are sweep points.
pub const SWEEP_STEPS: usize = 121;

/// One panel: adjacent functions of a cumulative logistic model.
#[derive(Debug, Clone, PartialEq)]
pub struct Panel {
    pub name: &'static str,
    pub model: CumulativeModel,
    pub table: CsvTable,
    pub flatness: FlatnessTable,
}

fn panel(name: &'static str, model: CumulativeModel, grid: &ThetaGrid) -> Result<Panel> {
    let m: Model = model.clone().into();
    let traces = (1..=m.k())
        .map(|r| trace_g(&m, DefiningFunction::Adjacent, r, grid))
        .collect::<Result<Vec<_>>>()?;
    let thresholds: Vec<String> = model.thresholds().iter().map(|d| fmt_sig(*d)).collect();
    let table = trace_table(&traces)?
        .with_metadata(format!("panel={name}"))
        .with_metadata(format!("model=cumulative logistic thresholds=({})", thresholds.join(", ")));
    let flatness = flatness_diagnostic(&m, grid, DEFAULT_FLATNESS_THRESHOLD)?;
    Ok(Panel {
        name,
        model,
        table,
        flatness,
    })
}

/// Separated thresholds, near-tied thresholds, and the near-tied model after
/// fusing its flat comparison.
pub fn adjacent_panels(grid: &ThetaGrid) -> Result<[Panel; 3]> {
    let separated = CumulativeModel::new(SEPARATED.to_vec(), Link::Logistic)?;
    let tied = CumulativeModel::new(NEAR_TIED.to_vec(), Link::Logistic)?;
    let collapsed = collapse_categories(&tied.clone().into(), COLLAPSE_AT)?;
    Ok([
        panel("separated", separated, grid)?,
        panel("near-tied", tied, grid)?,
        panel("collapsed", collapsed, grid)?,
    ])
}

pub fn flatness_tables(panels: &[Panel]) -> Vec<CsvTable> {
    panels
        .iter()
        .map(|p| flatness_csv(&p.flatness).with_metadata(format!("panel={}", p.name)))
        .collect()
}

/// Split strengths with `δ_1 = −1` fixed and `δ_2` swept over `[−1, 5]`.
pub fn threshold_sweep(quad: &QuadratureConfig) -> Result<(SweepTable, CsvTable)> {
    let template = CumulativeModel::new(vec![SWEEP_FIXED, 0.0], Link::Logistic)?;
    let pop = Population::standard();
    let sweep = sweep_threshold(&template, 2, SWEEP_RANGE, SWEEP_STEPS, &pop, quad)?;
    let table = sweep_csv(&sweep)
        .with_metadata(format!(
            "model=cumulative logistic delta_1={} delta_2 in [{}, {}] steps={}",
            fmt_sig(SWEEP_FIXED),
            fmt_sig(SWEEP_RANGE.0),
            fmt_sig(SWEEP_RANGE.1),
            SWEEP_STEPS
        ))
        .with_metadata("population=normal mean=0 sd=1")
        .with_metadata(format!(
            "quadrature={} nodes={} trapezoid_points={} range_sd={}",
            quad.method.name(),
            quad.nodes,
            quad.trapezoid_points,
            fmt_sig(quad.range_sd)
        ));
    Ok((sweep, table))
}
