//! CSV tables with `#` metadata lines, simple SVG line plots and the
//! concept-by-family overview table.

use std::fmt::Write as _;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::links::Link;
use crate::models::{AdjacentModel, CumulativeModel, Family, Model, SequentialModel};
use crate::numeric::fmt_sig;
use crate::ordering::OrderingRecord;
use crate::ordinality::{verify_hierarchy, ThetaGrid};
use crate::strength::{FlatnessTable, FunctionTrace, StrengthValue, SweepTable};

/// Numeric table; `None` cells are written empty.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CsvTable {
    pub metadata: Vec<String>,
    pub header: Vec<String>,
    pub rows: Vec<Vec<Option<f64>>>,
}

impl CsvTable {
    pub fn new(header: Vec<String>) -> Self {
        CsvTable {
            metadata: Vec::new(),
            header,
            rows: Vec::new(),
        }
    }

    pub fn with_metadata(mut self, line: impl Into<String>) -> Self {
        self.metadata.push(line.into());
        self
    }

    pub fn push(&mut self, row: Vec<Option<f64>>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    /// Column by header name.
    pub fn column(&self, name: &str) -> Option<Vec<Option<f64>>> {
        let j = self.header.iter().position(|h| h == name)?;
        Some(self.rows.iter().map(|r| r[j]).collect())
    }

    /// Every value rounded to the 12 significant digits used on output.
    pub fn rounded(&self) -> CsvTable {
        let mut t = self.clone();
        for row in &mut t.rows {
            for v in row.iter_mut().flatten() {
                *v = fmt_sig(*v).parse().expect("formatted float parses");
            }
        }
        t
    }

    pub fn write_to(&self, mut out: impl Write) -> Result<()> {
        for line in &self.metadata {
            writeln!(out, "# {line}")?;
        }
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row.iter().map(|v| v.map(fmt_sig).unwrap_or_default()))?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_to(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("csv output is utf-8")
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut metadata = Vec::new();
        let mut body = String::new();
        for line in text.lines() {
            match line.strip_prefix('#') {
                Some(meta) => metadata.push(meta.strip_prefix(' ').unwrap_or(meta).to_string()),
                None => {
                    body.push_str(line);
                    body.push('\n');
                }
            }
        }
        let mut reader = csv::Reader::from_reader(body.as_bytes());
        let header = reader.headers()?.iter().map(str::to_string).collect();
        let mut rows = Vec::new();
        for record in reader.records() {
            let record = record?;
            let row = record
                .iter()
                .map(|cell| {
                    if cell.is_empty() {
                        Ok(None)
                    } else {
                        cell.parse::<f64>()
                            .map(Some)
                            .map_err(|e| Error::Io(format!("bad csv cell `{cell}`: {e}")))
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        Ok(CsvTable { metadata, header, rows })
    }
}

/// `theta, g_<r>...` for traces sampled on the same grid.
pub fn trace_table(traces: &[FunctionTrace]) -> Result<CsvTable> {
    let Some(first) = traces.first() else {
        return Err(Error::InvalidParameter("no traces to tabulate".into()));
    };
    if traces.iter().any(|t| t.points.len() != first.points.len()) {
        return Err(Error::InvalidGrid("traces use different grids".into()));
    }
    let mut header = vec!["theta".to_string()];
    header.extend(traces.iter().map(|t| format!("g_{}", t.r)));
    let mut table = CsvTable::new(header)
        .with_metadata(format!("function={}", first.function));
    for (i, &(theta, _)) in first.points.iter().enumerate() {
        let mut row = vec![Some(theta)];
        row.extend(traces.iter().map(|t| Some(t.points[i].1)));
        table.push(row);
    }
    Ok(table)
}

/// `r, m, cross_check`.
pub fn strength_table(values: &[StrengthValue]) -> CsvTable {
    let mut table = CsvTable::new(vec!["r".into(), "m".into(), "cross_check".into()]);
    if let Some(v) = values.first() {
        table = table
            .with_metadata(format!("function={}", v.function))
            .with_metadata(format!("method={}", v.method.name()));
    }
    for v in values {
        table.push(vec![Some(v.r as f64), Some(v.m), Some(v.cross_check)]);
    }
    table
}

/// `delta, degenerate, m_1..m_k, check_1..check_k`; degenerate rows leave
/// the strength cells empty.
pub fn sweep_csv(sweep: &SweepTable) -> CsvTable {
    let mut header = vec!["delta".to_string(), "degenerate".to_string()];
    header.extend((1..=sweep.k).map(|r| format!("m_{r}")));
    header.extend((1..=sweep.k).map(|r| format!("check_{r}")));
    let mut table = CsvTable::new(header).with_metadata(format!("varied threshold={}", sweep.index));
    for row in &sweep.rows {
        let mut cells = vec![Some(row.delta), Some(if row.is_degenerate() { 1.0 } else { 0.0 })];
        match &row.strengths {
            Some(s) => {
                cells.extend(s.iter().map(|v| Some(v.m)));
                cells.extend(s.iter().map(|v| Some(v.cross_check)));
            }
            None => cells.extend(std::iter::repeat_n(None, 2 * sweep.k)),
        }
        table.push(cells);
    }
    table
}

/// `r, min, max, range, flagged`.
pub fn flatness_csv(flat: &FlatnessTable) -> CsvTable {
    let header = ["r", "min", "max", "range", "flagged"].map(String::from).to_vec();
    let mut table = CsvTable::new(header).with_metadata(format!("flatness threshold={}", fmt_sig(flat.threshold)));
    for row in &flat.rows {
        table.push(vec![
            Some(row.r as f64),
            Some(row.min),
            Some(row.max),
            Some(row.range),
            Some(if row.flagged { 1.0 } else { 0.0 }),
        ]);
    }
    table
}

/// `item, step, midpoint, rank`.
pub fn ordering_csv(record: &OrderingRecord) -> CsvTable {
    let header = ["item", "step", "midpoint", "rank"].map(String::from).to_vec();
    let mut table = CsvTable::new(header)
        .with_metadata(format!("step r={}", record.r))
        .with_metadata(format!("midpoint theta={}", fmt_sig(record.midpoint_theta)))
        .with_metadata(format!("invariant={}", record.invariant));
    for c in &record.crossings {
        table = table.with_metadata(format!(
            "crossing items={},{} theta={}",
            c.first,
            c.second,
            fmt_sig(c.theta)
        ));
    }
    for row in &record.rows {
        table.push(vec![
            Some(row.item as f64),
            row.step,
            Some(row.midpoint),
            Some(row.rank as f64),
        ]);
    }
    table
}

/// One named line of an SVG plot.
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
}

const SVG_WIDTH: f64 = 800.0;
const SVG_HEIGHT: f64 = 600.0;
const MARGIN: f64 = 60.0;
const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

/// Line plot with one polyline per series in an 800×600 viewport.
pub fn svg_plot(title: &str, x_label: &str, y_label: &str, series: &[Series]) -> String {
    let all = series.iter().flat_map(|s| s.points.iter()).filter(|p| p.0.is_finite() && p.1.is_finite());
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in all {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    if !(x0 < x1) {
        x0 -= 0.5;
        x1 += 0.5;
    }
    if !(y0 < y1) {
        y0 -= 0.5;
        y1 += 0.5;
    }
    let sx = |x: f64| MARGIN + (x - x0) / (x1 - x0) * (SVG_WIDTH - 2.0 * MARGIN);
    let sy = |y: f64| SVG_HEIGHT - MARGIN - (y - y0) / (y1 - y0) * (SVG_HEIGHT - 2.0 * MARGIN);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="800" height="600" viewBox="0 0 800 600">"#
    );
    let _ = writeln!(s, r#"<rect width="800" height="600" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="400" y="30" text-anchor="middle" font-family="sans-serif" font-size="18">{}</text>"#,
        escape(title)
    );
    let _ = writeln!(
        s,
        r#"<path d="M{m} {m} V{b} H{r}" fill="none" stroke="black"/>"#,
        m = MARGIN,
        b = SVG_HEIGHT - MARGIN,
        r = SVG_WIDTH - MARGIN
    );
    for (v, anchor) in [(x0, "start"), (x1, "end")] {
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{}" text-anchor="{anchor}" font-family="sans-serif" font-size="12">{}</text>"#,
            sx(v),
            SVG_HEIGHT - MARGIN + 18.0,
            fmt_sig(v)
        );
    }
    for v in [y0, y1] {
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{:.2}" text-anchor="end" font-family="sans-serif" font-size="12">{}</text>"#,
            MARGIN - 6.0,
            sy(v) + 4.0,
            fmt_sig(v)
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="400" y="{}" text-anchor="middle" font-family="sans-serif" font-size="14">{}</text>"#,
        SVG_HEIGHT - 15.0,
        escape(x_label)
    );
    let _ = writeln!(
        s,
        r#"<text x="18" y="300" text-anchor="middle" font-family="sans-serif" font-size="14" transform="rotate(-90 18 300)">{}</text>"#,
        escape(y_label)
    );
    for (i, line) in series.iter().enumerate() {
        let colour = PALETTE[i % PALETTE.len()];
        let pts: Vec<String> = line
            .points
            .iter()
            .filter(|p| p.0.is_finite() && p.1.is_finite())
            .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
            .collect();
        let _ = writeln!(
            s,
            r#"<polyline fill="none" stroke="{colour}" stroke-width="2" points="{}"/>"#,
            pts.join(" ")
        );
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" font-family="sans-serif" font-size="12" fill="{colour}">{}</text>"#,
            SVG_WIDTH - MARGIN - 100.0,
            MARGIN + 16.0 * (i as f64 + 1.0),
            escape(&line.label)
        );
    }
    s.push_str("</svg>\n");
    s
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// One row of the family-by-concept overview.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConceptRow {
    pub family: Family,
    pub spec: String,
    pub paired: bool,
    pub conditional: bool,
    pub split: bool,
}

/// The overview recomputed by running the checks on generic members of the
/// three classical families (asymmetric link, unstructured parameters).
pub fn concept_table(grid: &ThetaGrid) -> Result<Vec<ConceptRow>> {
    let link = Link::GumbelMin;
    let models: [Model; 3] = [
        AdjacentModel::new(vec![0.8, -1.2, 0.4], link)?.into(),
        SequentialModel::new(vec![0.8, -1.2, 0.4], link)?.into(),
        CumulativeModel::new(vec![-1.2, 0.4, 0.8], link)?.into(),
    ];
    models.iter().map(|m| concept_row(m, grid)).collect()
}

pub fn concept_row(model: &Model, grid: &ThetaGrid) -> Result<ConceptRow> {
    let h = verify_hierarchy(model, grid)?;
    Ok(ConceptRow {
        family: model.family(),
        spec: serde_json::to_string(&crate::spec::ModelSpec::from(model))?,
        paired: h.paired,
        conditional: h.conditional,
        split: h.split,
    })
}

/// Plain-text rendering with `Yes` where a family member is ordinal.
pub fn render_concept_table(rows: &[ConceptRow]) -> String {
    let yes = |b: bool| if b { "Yes" } else { "-" };
    let mut s = format!("{:<12} {:>8} {:>12} {:>8}\n", "family", "paired", "conditional", "split");
    for row in rows {
        let _ = writeln!(
            s,
            "{:<12} {:>8} {:>12} {:>8}",
            row.family.name(),
            yes(row.paired),
            yes(row.conditional),
            yes(row.split)
        );
    }
    s
}
