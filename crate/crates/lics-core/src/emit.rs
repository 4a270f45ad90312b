//! Table container with deterministic CSV emission and simple SVG plots.
//!
//! CSV layout: `#`-prefixed metadata lines (tool version, scheme, the full
//! parameter block), one header row with unit-annotated column names, then
//! data rows. Floats are written in shortest round-trip form so identical
//! runs produce byte-identical files and `parse_csv(emit_csv(t)) == t`.
//! Failed grid points (resonant poles) appear as empty cells.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{LicsError, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub meta: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Option<f64>>>,
}

impl Table {
    pub fn new(columns: Vec<String>) -> Self {
        Table {
            meta: Vec::new(),
            columns,
            rows: Vec::new(),
        }
    }

    pub fn with_meta(mut self, key: &str, value: impl ToString) -> Self {
        self.meta.push((key.to_string(), value.to_string()));
        self
    }

    pub fn push_meta(&mut self, key: &str, value: impl ToString) {
        self.meta.push((key.to_string(), value.to_string()));
    }

    pub fn push_row(&mut self, row: Vec<Option<f64>>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.columns
            .iter()
            .position(|c| c == name || c.split('[').next() == Some(name))
    }

    /// Finite values of one column.
    pub fn column_values(&self, idx: usize) -> Vec<f64> {
        self.rows.iter().filter_map(|r| r[idx]).collect()
    }

    /// Grid maximum of a column: `(row index, value)`.
    pub fn column_max(&self, idx: usize) -> Option<(usize, f64)> {
        self.rows
            .iter()
            .enumerate()
            .filter_map(|(i, r)| r[idx].map(|v| (i, v)))
            .max_by(|a, b| a.1.total_cmp(&b.1))
    }
}

pub fn format_csv(table: &Table) -> String {
    let mut out = String::new();
    for (k, v) in &table.meta {
        let _ = writeln!(out, "# {k} = {v}");
    }
    let _ = writeln!(out, "{}", table.columns.join(","));
    for row in &table.rows {
        let mut first = true;
        for cell in row {
            if !first {
                out.push(',');
            }
            first = false;
            if let Some(v) = cell {
                let _ = write!(out, "{v}");
            }
        }
        out.push('\n');
    }
    out
}

pub fn emit_csv(table: &Table, path: &Path) -> Result<()> {
    fs::write(path, format_csv(table))?;
    Ok(())
}

pub fn parse_csv(text: &str) -> Result<Table> {
    let mut meta = Vec::new();
    let mut columns: Option<Vec<String>> = None;
    let mut rows = Vec::new();
    for line in text.lines() {
        if let Some(rest) = line.strip_prefix('#') {
            if let Some((k, v)) = rest.split_once('=') {
                meta.push((k.trim().to_string(), v.trim().to_string()));
            }
            continue;
        }
        if line.is_empty() {
            continue;
        }
        match &columns {
            None => columns = Some(line.split(',').map(|s| s.to_string()).collect()),
            Some(cols) => {
                let cells: Vec<Option<f64>> = line
                    .split(',')
                    .map(|s| {
                        if s.is_empty() {
                            Ok(None)
                        } else {
                            s.parse::<f64>()
                                .map(Some)
                                .map_err(|e| LicsError::Csv(format!("bad cell `{s}`: {e}")))
                        }
                    })
                    .collect::<Result<_>>()?;
                if cells.len() != cols.len() {
                    return Err(LicsError::Csv(format!(
                        "row has {} cells, header has {}",
                        cells.len(),
                        cols.len()
                    )));
                }
                rows.push(cells);
            }
        }
    }
    let columns = columns.ok_or_else(|| LicsError::Csv("missing header row".into()))?;
    Ok(Table {
        meta,
        columns,
        rows,
    })
}

const PLOT_W: f64 = 760.0;
const PLOT_H: f64 = 520.0;
const MARGIN_L: f64 = 72.0;
const MARGIN_B: f64 = 52.0;
const MARGIN_T: f64 = 22.0;
const MARGIN_R: f64 = 22.0;

const LINE_COLORS: [&str; 6] = [
    "#1f6fb2", "#c33d32", "#3a9b4e", "#8056a3", "#b07d20", "#3b3b3b",
];

/// Line plot of one or more columns against the first axis column.
pub fn emit_line_plot(table: &Table, x_col: usize, y_cols: &[usize], path: &Path) -> Result<()> {
    let xs = table.column_values(x_col);
    if xs.is_empty() {
        return Err(LicsError::InvalidSweep("empty table, nothing to plot".into()));
    }
    let (xmin, xmax) = bounds(&xs);
    let mut ymin = f64::INFINITY;
    let mut ymax = f64::NEG_INFINITY;
    for &c in y_cols {
        for v in table.column_values(c) {
            ymin = ymin.min(v);
            ymax = ymax.max(v);
        }
    }
    if !ymin.is_finite() {
        return Err(LicsError::InvalidSweep("no finite values to plot".into()));
    }
    if ymin == ymax {
        ymin -= 0.5;
        ymax += 0.5;
    }

    let mut svg = svg_header();
    axes(&mut svg, xmin, xmax, ymin, ymax, &table.columns[x_col], &plot_label(table, y_cols));
    for (ci, &c) in y_cols.iter().enumerate() {
        let color = LINE_COLORS[ci % LINE_COLORS.len()];
        let mut d = String::new();
        let mut pen_down = false;
        for row in &table.rows {
            match (row[x_col], row[c]) {
                (Some(x), Some(y)) => {
                    let (px, py) = to_px(x, y, xmin, xmax, ymin, ymax);
                    let _ = write!(d, "{}{px:.2},{py:.2} ", if pen_down { "L" } else { "M" });
                    pen_down = true;
                }
                _ => pen_down = false, // gap row
            }
        }
        let _ = writeln!(
            svg,
            r##"<path d="{}" fill="none" stroke="{color}" stroke-width="1.6"/>"##,
            d.trim_end()
        );
        let _ = writeln!(
            svg,
            r##"<text x="{}" y="{}" fill="{color}" font-size="12">{}</text>"##,
            PLOT_W - MARGIN_R - 150.0,
            MARGIN_T + 16.0 * (ci + 1) as f64,
            xml_escape(&table.columns[c])
        );
    }
    svg.push_str("</svg>\n");
    fs::write(path, svg)?;
    Ok(())
}

/// Heatmap of `z_col` over the 2-D grid spanned by `x_col` (inner axis) and
/// `y_col` (outer axis); rows must be axis-major as `run_sweep` emits them.
pub fn emit_heatmap(
    table: &Table,
    x_col: usize,
    y_col: usize,
    z_col: usize,
    path: &Path,
) -> Result<()> {
    let mut xs: Vec<f64> = Vec::new();
    let mut ys: Vec<f64> = Vec::new();
    for row in &table.rows {
        if let (Some(x), Some(y)) = (row[x_col], row[y_col]) {
            if !xs.contains(&x) {
                xs.push(x);
            }
            if !ys.contains(&y) {
                ys.push(y);
            }
        }
    }
    if xs.is_empty() || ys.is_empty() {
        return Err(LicsError::InvalidSweep("empty grid, nothing to plot".into()));
    }
    let zs = table.column_values(z_col);
    let (zmin, zmax) = bounds(&zs);
    let (xmin, xmax) = bounds(&xs);
    let (ymin, ymax) = bounds(&ys);
    let cell_w = (PLOT_W - MARGIN_L - MARGIN_R) / xs.len() as f64;
    let cell_h = (PLOT_H - MARGIN_T - MARGIN_B) / ys.len() as f64;

    let mut svg = svg_header();
    axes(
        &mut svg,
        xmin,
        xmax,
        ymin,
        ymax,
        &table.columns[x_col],
        &table.columns[y_col],
    );
    for row in &table.rows {
        if let (Some(x), Some(y), Some(z)) = (row[x_col], row[y_col], row[z_col]) {
            let xi = xs.iter().position(|&v| v == x).unwrap() as f64;
            let yi = ys.iter().position(|&v| v == y).unwrap() as f64;
            let px = MARGIN_L + xi * cell_w;
            let py = PLOT_H - MARGIN_B - (yi + 1.0) * cell_h;
            let t = if zmax > zmin { (z - zmin) / (zmax - zmin) } else { 0.5 };
            let _ = writeln!(
                svg,
                r##"<rect x="{px:.2}" y="{py:.2}" width="{:.2}" height="{:.2}" fill="{}"/>"##,
                cell_w + 0.35,
                cell_h + 0.35,
                colormap(t)
            );
        }
    }
    let _ = writeln!(
        svg,
        r##"<text x="{}" y="{}" font-size="12">{}: {} .. {}</text>"##,
        MARGIN_L,
        MARGIN_T - 6.0,
        xml_escape(&table.columns[z_col]),
        fmt_tick(zmin),
        fmt_tick(zmax)
    );
    svg.push_str("</svg>\n");
    fs::write(path, svg)?;
    Ok(())
}

fn bounds(v: &[f64]) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for &x in v {
        lo = lo.min(x);
        hi = hi.max(x);
    }
    if lo == hi {
        (lo - 0.5, hi + 0.5)
    } else {
        (lo, hi)
    }
}

fn to_px(x: f64, y: f64, xmin: f64, xmax: f64, ymin: f64, ymax: f64) -> (f64, f64) {
    let px = MARGIN_L + (x - xmin) / (xmax - xmin) * (PLOT_W - MARGIN_L - MARGIN_R);
    let py = PLOT_H - MARGIN_B - (y - ymin) / (ymax - ymin) * (PLOT_H - MARGIN_T - MARGIN_B);
    (px, py)
}

fn svg_header() -> String {
    format!(
        r##"<svg xmlns="http://www.w3.org/2000/svg" width="{PLOT_W}" height="{PLOT_H}" viewBox="0 0 {PLOT_W} {PLOT_H}" font-family="sans-serif">
<rect width="{PLOT_W}" height="{PLOT_H}" fill="white"/>
"##
    )
}

fn axes(svg: &mut String, xmin: f64, xmax: f64, ymin: f64, ymax: f64, xname: &str, yname: &str) {
    let _ = writeln!(
        svg,
        r##"<rect x="{MARGIN_L}" y="{MARGIN_T}" width="{}" height="{}" fill="none" stroke="#444"/>"##,
        PLOT_W - MARGIN_L - MARGIN_R,
        PLOT_H - MARGIN_T - MARGIN_B
    );
    for i in 0..=4 {
        let f = i as f64 / 4.0;
        let xv = xmin + f * (xmax - xmin);
        let yv = ymin + f * (ymax - ymin);
        let (px, _) = to_px(xv, ymin, xmin, xmax, ymin, ymax);
        let (_, py) = to_px(xmin, yv, xmin, xmax, ymin, ymax);
        let _ = writeln!(
            svg,
            r##"<text x="{px:.1}" y="{}" font-size="11" text-anchor="middle">{}</text>"##,
            PLOT_H - MARGIN_B + 16.0,
            fmt_tick(xv)
        );
        let _ = writeln!(
            svg,
            r##"<text x="{}" y="{py:.1}" font-size="11" text-anchor="end">{}</text>"##,
            MARGIN_L - 6.0,
            fmt_tick(yv)
        );
    }
    let _ = writeln!(
        svg,
        r##"<text x="{}" y="{}" font-size="13" text-anchor="middle">{}</text>"##,
        (MARGIN_L + PLOT_W - MARGIN_R) / 2.0,
        PLOT_H - 12.0,
        xml_escape(xname)
    );
    let _ = writeln!(
        svg,
        r##"<text x="16" y="{}" font-size="13" text-anchor="middle" transform="rotate(-90 16 {})">{}</text>"##,
        (MARGIN_T + PLOT_H - MARGIN_B) / 2.0,
        (MARGIN_T + PLOT_H - MARGIN_B) / 2.0,
        xml_escape(yname)
    );
}

fn plot_label(table: &Table, y_cols: &[usize]) -> String {
    if y_cols.len() == 1 {
        table.columns[y_cols[0]].clone()
    } else {
        String::new()
    }
}

fn fmt_tick(v: f64) -> String {
    if v == 0.0 {
        "0".to_string()
    } else if v.abs() >= 1e4 || v.abs() < 1e-3 {
        format!("{v:.2e}")
    } else {
        let s = format!("{v:.4}");
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    }
}

/// Blue-white-red diverging map on [0, 1].
fn colormap(t: f64) -> String {
    let t = t.clamp(0.0, 1.0);
    let (r, g, b) = if t < 0.5 {
        let u = t / 0.5;
        (
            (34.0 + u * (245.0 - 34.0)) as u8,
            (67.0 + u * (245.0 - 67.0)) as u8,
            (145.0 + u * (245.0 - 145.0)) as u8,
        )
    } else {
        let u = (t - 0.5) / 0.5;
        (
            (245.0 - u * (245.0 - 178.0)) as u8,
            (245.0 - u * (245.0 - 36.0)) as u8,
            (245.0 - u * (245.0 - 44.0)) as u8,
        )
    };
    format!("#{r:02x}{g:02x}{b:02x}")
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
