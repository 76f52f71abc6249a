//! Writes the CSV and SVG data behind the three coefficient figures.
//!
//!     cargo run --release --example figure_sweeps -- [out_dir]

use std::path::PathBuf;

use spinstep::sweep_io::{emit_csv, emit_svg, figure_specs, run_sweep, Column};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(|| "figures".into());
    std::fs::create_dir_all(&dir)?;
    for (name, spec) in figure_specs() {
        let out = run_sweep(&spec)?;
        let csv = dir.join(format!("{name}.csv"));
        emit_csv(&out.rows, &csv)?;
        let propagating = out.rows[0].is_propagating();
        let panels: Vec<(&str, Vec<Column>)> = if propagating {
            vec![("t", vec![Column::T1, Column::T2]), ("r", vec![Column::R1, Column::R2])]
        } else {
            vec![("r", vec![Column::R1Prime, Column::R2Prime])]
        };
        for (tag, cols) in panels {
            emit_svg(&out.rows, &dir.join(format!("{name}_{tag}.svg")), &cols)?;
        }
        println!("{:<16} {:>4} rows -> {}", name, out.rows.len(), csv.display());
    }
    Ok(())
}
