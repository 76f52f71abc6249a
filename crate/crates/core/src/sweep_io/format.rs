use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use super::{check_emittable, EvanescentRow, PropagatingRow, SweepError, SweepRow};

pub const PROPAGATING_HEADER: &str = "E_eV,E_over_V0,T1,T2,R1,R2,sum,T_QM,R_QM";
pub const EVANESCENT_HEADER: &str = "E_eV,E_over_V0,R1_prime,R2_prime,sum";

const PROPAGATING_KEYS: [&str; 9] =
    ["e_ev", "e_over_v0", "t1", "t2", "r1", "r2", "sum", "t_qm", "r_qm"];
const EVANESCENT_KEYS: [&str; 5] = ["e_ev", "e_over_v0", "r1_prime", "r2_prime", "sum"];

/// 17 significant digits, enough for an exact `f64` round trip.
pub fn format_number(x: f64) -> String {
    format!("{x:.16e}")
}

fn values(row: &SweepRow) -> Vec<f64> {
    match *row {
        SweepRow::Propagating(r) => {
            vec![r.e_ev, r.e_over_v0, r.t1, r.t2, r.r1, r.r2, r.sum, r.t_qm, r.r_qm]
        }
        SweepRow::Evanescent(r) => vec![r.e_ev, r.e_over_v0, r.r1_prime, r.r2_prime, r.sum],
    }
}

pub fn to_csv_string(rows: &[SweepRow]) -> Result<String, SweepError> {
    let propagating = check_emittable(rows)?;
    let mut out = String::new();
    out.push_str(if propagating {
        PROPAGATING_HEADER
    } else {
        EVANESCENT_HEADER
    });
    out.push('\n');
    for row in rows {
        let line: Vec<String> = values(row).into_iter().map(format_number).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    Ok(out)
}

pub fn to_json_string(rows: &[SweepRow]) -> Result<String, SweepError> {
    let propagating = check_emittable(rows)?;
    let keys: &[&str] = if propagating {
        &PROPAGATING_KEYS
    } else {
        &EVANESCENT_KEYS
    };
    let mut out = String::from("[\n");
    for (i, row) in rows.iter().enumerate() {
        out.push_str("  {");
        for (j, (k, v)) in keys.iter().zip(values(row)).enumerate() {
            if j > 0 {
                out.push_str(", ");
            }
            let _ = write!(out, "\"{k}\": {}", format_number(v));
        }
        out.push('}');
        if i + 1 < rows.len() {
            out.push(',');
        }
        out.push('\n');
    }
    out.push_str("]\n");
    Ok(out)
}

fn write_file(path: &Path, contents: &str) -> Result<(), SweepError> {
    fs::write(path, contents).map_err(|source| SweepError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Writes the CSV only after every row has been checked.
pub fn emit_csv(rows: &[SweepRow], path: &Path) -> Result<(), SweepError> {
    write_file(path, &to_csv_string(rows)?)
}

pub fn emit_json(rows: &[SweepRow], path: &Path) -> Result<(), SweepError> {
    write_file(path, &to_json_string(rows)?)
}

pub fn parse_csv(text: &str) -> Result<Vec<SweepRow>, SweepError> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or(SweepError::Empty)?;
    let propagating = match header {
        PROPAGATING_HEADER => true,
        EVANESCENT_HEADER => false,
        other => {
            return Err(SweepError::Parse {
                line: 1,
                message: format!("unrecognised header {other:?}"),
            })
        }
    };
    let width = if propagating { 9 } else { 5 };
    let mut rows = Vec::new();
    for (idx, line) in lines {
        if line.is_empty() {
            continue;
        }
        let parse_err = |message: String| SweepError::Parse {
            line: idx + 1,
            message,
        };
        let v: Vec<f64> = line
            .split(',')
            .map(|f| f.parse::<f64>().map_err(|e| parse_err(format!("{f:?}: {e}"))))
            .collect::<Result<_, _>>()?;
        if v.len() != width {
            return Err(parse_err(format!("expected {width} fields, found {}", v.len())));
        }
        rows.push(if propagating {
            SweepRow::Propagating(PropagatingRow {
                e_ev: v[0],
                e_over_v0: v[1],
                t1: v[2],
                t2: v[3],
                r1: v[4],
                r2: v[5],
                sum: v[6],
                t_qm: v[7],
                r_qm: v[8],
            })
        } else {
            SweepRow::Evanescent(EvanescentRow {
                e_ev: v[0],
                e_over_v0: v[1],
                r1_prime: v[2],
                r2_prime: v[3],
                sum: v[4],
            })
        });
    }
    Ok(rows)
}

pub fn read_csv(path: &Path) -> Result<Vec<SweepRow>, SweepError> {
    let text = fs::read_to_string(path).map_err(|source| SweepError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_csv(&text)
}
