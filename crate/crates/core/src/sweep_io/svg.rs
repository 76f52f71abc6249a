use std::fmt::{self, Write as _};
use std::fs;
use std::path::Path;
use std::str::FromStr;

use super::{check_emittable, SweepError, SweepRow};

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 600.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 30.0;
const TOP: f64 = 30.0;
const BOTTOM: f64 = 60.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Column {
    T1,
    T2,
    R1,
    R2,
    Sum,
    TQm,
    RQm,
    R1Prime,
    R2Prime,
}

impl Column {
    pub fn label(self) -> &'static str {
        match self {
            Column::T1 => "T1",
            Column::T2 => "T2",
            Column::R1 => "R1",
            Column::R2 => "R2",
            Column::Sum => "sum",
            Column::TQm => "T_QM",
            Column::RQm => "R_QM",
            Column::R1Prime => "R1_prime",
            Column::R2Prime => "R2_prime",
        }
    }

    /// Spin up red, spin down blue.
    pub fn color(self) -> &'static str {
        match self {
            Column::T1 | Column::R1 | Column::R1Prime => "red",
            Column::T2 | Column::R2 | Column::R2Prime => "blue",
            Column::TQm | Column::RQm => "gray",
            Column::Sum => "black",
        }
    }

    /// Dashed for reflection, solid for transmission.
    fn dashed(self) -> bool {
        matches!(
            self,
            Column::R1 | Column::R2 | Column::RQm | Column::R1Prime | Column::R2Prime
        )
    }

    fn value(self, row: &SweepRow) -> Option<f64> {
        match (self, row) {
            (Column::T1, SweepRow::Propagating(r)) => Some(r.t1),
            (Column::T2, SweepRow::Propagating(r)) => Some(r.t2),
            (Column::R1, SweepRow::Propagating(r)) => Some(r.r1),
            (Column::R2, SweepRow::Propagating(r)) => Some(r.r2),
            (Column::TQm, SweepRow::Propagating(r)) => Some(r.t_qm),
            (Column::RQm, SweepRow::Propagating(r)) => Some(r.r_qm),
            (Column::R1Prime, SweepRow::Evanescent(r)) => Some(r.r1_prime),
            (Column::R2Prime, SweepRow::Evanescent(r)) => Some(r.r2_prime),
            (Column::Sum, r) => Some(r.sum()),
            _ => None,
        }
    }

    pub fn defaults(propagating: bool) -> Vec<Column> {
        if propagating {
            vec![Column::T1, Column::T2, Column::R1, Column::R2]
        } else {
            vec![Column::R1Prime, Column::R2Prime]
        }
    }
}

impl fmt::Display for Column {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Column {
    type Err = SweepError;

    fn from_str(s: &str) -> Result<Self, SweepError> {
        let all = [
            Column::T1,
            Column::T2,
            Column::R1,
            Column::R2,
            Column::Sum,
            Column::TQm,
            Column::RQm,
            Column::R1Prime,
            Column::R2Prime,
        ];
        all.into_iter()
            .find(|c| c.label().eq_ignore_ascii_case(s))
            .ok_or_else(|| SweepError::MissingColumn(s.to_string()))
    }
}

/// Line chart of `columns` against `E/V0` on a fixed 800x600 canvas, with
/// y from 0 to 1. The x axis is logarithmic when the range spans more
/// than a decade.
pub fn to_svg_string(rows: &[SweepRow], columns: &[Column]) -> Result<String, SweepError> {
    let propagating = check_emittable(rows)?;
    let columns = if columns.is_empty() {
        Column::defaults(propagating)
    } else {
        columns.to_vec()
    };
    for c in &columns {
        if c.value(&rows[0]).is_none() {
            return Err(SweepError::MissingColumn(c.label().to_string()));
        }
    }
    let xmin = rows[0].e_over_v0();
    let xmax = rows[rows.len() - 1].e_over_v0();
    let log_x = xmax / xmin > 10.0;
    let tx = |x: f64| if log_x { x.ln() } else { x };
    let (a, b) = (tx(xmin), tx(xmax));
    let span = if b > a { b - a } else { 1.0 };
    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let px = |x: f64| LEFT + (tx(x) - a) / span * plot_w;
    let py = |y: f64| TOP + (1.0 - y) * plot_h;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="800" height="600" viewBox="0 0 800 600">"#
    );
    let _ = writeln!(s, r#"<rect width="800" height="600" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<rect x="{LEFT}" y="{TOP}" width="{plot_w}" height="{plot_h}" fill="none" stroke="black"/>"#
    );
    for k in 0..=4 {
        let y = k as f64 / 4.0;
        let _ = writeln!(
            s,
            r#"<text x="{:.1}" y="{:.1}" font-size="12" text-anchor="end">{y:.2}</text>"#,
            LEFT - 6.0,
            py(y) + 4.0
        );
    }
    for (x, anchor) in [(xmin, "start"), (xmax, "end")] {
        let _ = writeln!(
            s,
            r#"<text x="{:.1}" y="{:.1}" font-size="12" text-anchor="{anchor}">{x}</text>"#,
            px(x),
            HEIGHT - BOTTOM + 18.0
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.1}" y="{:.1}" font-size="14" text-anchor="middle">E/V0{}</text>"#,
        LEFT + plot_w / 2.0,
        HEIGHT - 15.0,
        if log_x { " (log)" } else { "" }
    );
    for (i, c) in columns.iter().enumerate() {
        let pts: Vec<String> = rows
            .iter()
            .filter_map(|r| c.value(r).map(|v| format!("{:.2},{:.2}", px(r.e_over_v0()), py(v))))
            .collect();
        let dash = if c.dashed() {
            r#" stroke-dasharray="6,4""#
        } else {
            ""
        };
        let _ = writeln!(
            s,
            r#"<polyline data-column="{}" fill="none" stroke="{}" stroke-width="1.5"{dash} points="{}"/>"#,
            c.label(),
            c.color(),
            pts.join(" ")
        );
        let ly = TOP + 18.0 + 18.0 * i as f64;
        let lx = WIDTH - RIGHT - 110.0;
        let _ = writeln!(
            s,
            r#"<line x1="{lx:.1}" y1="{ly:.1}" x2="{:.1}" y2="{ly:.1}" stroke="{}"{dash}/><text x="{:.1}" y="{:.1}" font-size="12">{}</text>"#,
            lx + 30.0,
            c.color(),
            lx + 36.0,
            ly + 4.0,
            c.label()
        );
    }
    s.push_str("</svg>\n");
    Ok(s)
}

pub fn emit_svg(rows: &[SweepRow], path: &Path, columns: &[Column]) -> Result<(), SweepError> {
    let svg = to_svg_string(rows, columns)?;
    fs::write(path, svg).map_err(|source| SweepError::Io {
        path: path.to_path_buf(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sweep_io::{run_sweep, Regime, Spacing, SweepSpec};

    #[test]
    fn two_colored_polylines() {
        let spec = SweepSpec::electron(100.0, 1.001, 10.0, 50, Spacing::Log, Regime::Propagating);
        let rows = run_sweep(&spec).unwrap().rows;
        let svg = to_svg_string(&rows, &[Column::T1, Column::T2]).unwrap();
        assert_eq!(svg.matches("<polyline").count(), 2);
        assert!(svg.contains(r#"data-column="T1" fill="none" stroke="red""#));
        assert!(svg.contains(r#"data-column="T2" fill="none" stroke="blue""#));
        assert!(svg.contains(r#"viewBox="0 0 800 600""#));
        assert!(!svg.contains("href"));
    }

    #[test]
    fn wrong_regime_column_is_rejected() {
        let spec = SweepSpec::electron(100.0, 0.1, 0.9, 5, Spacing::Linear, Regime::Evanescent);
        let rows = run_sweep(&spec).unwrap().rows;
        assert!(to_svg_string(&rows, &[Column::T1]).is_err());
        assert!("r1_PRIME".parse::<Column>().is_ok());
    }
}
