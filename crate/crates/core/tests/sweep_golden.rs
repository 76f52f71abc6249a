use std::path::PathBuf;

use spinstep::sweep_io::{figure_specs, parse_csv, run_sweep, to_csv_string};

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{name}.csv"))
}

#[test]
fn figure_grids_match_golden_bytes() {
    for (name, spec) in figure_specs() {
        let fresh = to_csv_string(&run_sweep(&spec).unwrap().rows).unwrap();
        let frozen = std::fs::read_to_string(golden(name)).unwrap();
        assert!(fresh == frozen, "{name} differs from its golden file");
    }
}

#[test]
fn golden_files_parse_and_keep_the_sum_rule() {
    for (name, spec) in figure_specs() {
        let rows = parse_csv(&std::fs::read_to_string(golden(name)).unwrap()).unwrap();
        assert_eq!(rows.len(), spec.points);
        assert!(rows.iter().all(|r| (r.sum() - 1.0).abs() <= 1e-12));
    }
}

#[test]
fn sweeps_are_deterministic_under_parallel_evaluation() {
    let (_, spec) = figure_specs().remove(0);
    let a = to_csv_string(&run_sweep(&spec).unwrap().rows).unwrap();
    for _ in 0..3 {
        assert_eq!(a, to_csv_string(&run_sweep(&spec).unwrap().rows).unwrap());
    }
}
