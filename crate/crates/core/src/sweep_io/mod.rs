//! Energy sweeps of the step coefficients and their CSV, JSON and SVG
//! encodings.

mod format;
mod svg;

use std::fmt;
use std::io;
use std::path::PathBuf;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::eigensystem::{Spin, ELECTRON_MASS_EV};
use crate::scattering::{
    coefficients, qm_reference, solve_amplitudes_linear, ScatteringCoefficients, ScatteringError,
    StepProblem, THRESHOLD_EPS, UNITARITY_TOL,
};

pub use format::{
    emit_csv, emit_json, format_number, parse_csv, read_csv, to_csv_string, to_json_string, EVANESCENT_HEADER,
    PROPAGATING_HEADER,
};
pub use svg::{emit_svg, to_svg_string, Column};

#[derive(Debug, Error)]
pub enum SweepError {
    #[error("invalid sweep: {0}")]
    InvalidSpec(String),
    #[error(transparent)]
    Scattering(#[from] ScatteringError),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("row at E = {energy} eV sums to {sum}, refusing to emit")]
    InvariantViolation { energy: f64, sum: f64 },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("nothing to emit")]
    Empty,
    #[error("rows mix propagating and evanescent regimes")]
    MixedRegimes,
    #[error("column {0} is not present in these rows")]
    MissingColumn(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    Linear,
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    Propagating,
    Evanescent,
    Auto,
}

macro_rules! keyword_enum {
    ($t:ty, $what:literal, $($name:literal => $v:expr),+) => {
        impl FromStr for $t {
            type Err = SweepError;
            fn from_str(s: &str) -> Result<Self, SweepError> {
                match s.to_ascii_lowercase().as_str() {
                    $($name => Ok($v),)+
                    other => Err(SweepError::InvalidSpec(format!(concat!("unknown ", $what, " {:?}"), other))),
                }
            }
        }
        impl fmt::Display for $t {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                $(if *self == $v { return f.write_str($name); })+
                unreachable!()
            }
        }
    };
}

keyword_enum!(Spacing, "spacing", "linear" => Spacing::Linear, "log" => Spacing::Log);
keyword_enum!(Regime, "regime",
    "propagating" => Regime::Propagating,
    "evanescent" => Regime::Evanescent,
    "auto" => Regime::Auto);

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepSpec {
    pub v0: f64,
    pub mass: f64,
    pub e_over_v0_min: f64,
    pub e_over_v0_max: f64,
    pub points: usize,
    pub spacing: Spacing,
    pub regime: Regime,
}

impl SweepSpec {
    /// Electron sweep over `[min, max]` in units of `V0`.
    pub fn electron(v0: f64, min: f64, max: f64, points: usize, spacing: Spacing, regime: Regime) -> Self {
        Self {
            v0,
            mass: ELECTRON_MASS_EV,
            e_over_v0_min: min,
            e_over_v0_max: max,
            points,
            spacing,
            regime,
        }
    }

    pub fn validate(&self) -> Result<(), SweepError> {
        let bad = |m: String| Err(SweepError::InvalidSpec(m));
        if !(self.v0.is_finite() && self.v0 > 0.0) {
            return bad(format!("v0 must be positive, got {}", self.v0));
        }
        if !(self.mass.is_finite() && self.mass > 0.0) {
            return bad(format!("mass must be positive, got {}", self.mass));
        }
        let (lo, hi) = (self.e_over_v0_min, self.e_over_v0_max);
        if !(lo.is_finite() && hi.is_finite() && lo > 0.0 && lo < hi) {
            return bad(format!("need 0 < from < to, got {lo} and {hi}"));
        }
        if self.points < 2 {
            return bad(format!("need at least 2 points, got {}", self.points));
        }
        match self.regime {
            Regime::Propagating if lo <= 1.0 => bad(format!("propagating sweep needs from > 1, got {lo}")),
            Regime::Evanescent if hi >= 1.0 => bad(format!("evanescent sweep needs to < 1, got {hi}")),
            _ => Ok(()),
        }
    }

    /// Grid of `E/V0` values, strictly increasing.
    pub fn ratios(&self) -> Vec<f64> {
        let n = self.points;
        let (lo, hi) = (self.e_over_v0_min, self.e_over_v0_max);
        (0..n)
            .map(|k| {
                if k == n - 1 {
                    return hi;
                }
                let t = k as f64 / (n - 1) as f64;
                match self.spacing {
                    Spacing::Linear => lo + t * (hi - lo),
                    Spacing::Log => (lo.ln() + t * (hi.ln() - lo.ln())).exp(),
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PropagatingRow {
    pub e_ev: f64,
    pub e_over_v0: f64,
    pub t1: f64,
    pub t2: f64,
    pub r1: f64,
    pub r2: f64,
    pub sum: f64,
    pub t_qm: f64,
    pub r_qm: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EvanescentRow {
    pub e_ev: f64,
    pub e_over_v0: f64,
    pub r1_prime: f64,
    pub r2_prime: f64,
    pub sum: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(untagged)]
pub enum SweepRow {
    Propagating(PropagatingRow),
    Evanescent(EvanescentRow),
}

impl SweepRow {
    pub fn energy(&self) -> f64 {
        match self {
            SweepRow::Propagating(r) => r.e_ev,
            SweepRow::Evanescent(r) => r.e_ev,
        }
    }

    pub fn e_over_v0(&self) -> f64 {
        match self {
            SweepRow::Propagating(r) => r.e_over_v0,
            SweepRow::Evanescent(r) => r.e_over_v0,
        }
    }

    pub fn sum(&self) -> f64 {
        match self {
            SweepRow::Propagating(r) => r.sum,
            SweepRow::Evanescent(r) => r.sum,
        }
    }

    pub fn is_propagating(&self) -> bool {
        matches!(self, SweepRow::Propagating(_))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepOutput {
    pub rows: Vec<SweepRow>,
    /// Grid points inside `|E/V0 - 1| <= 1e-9`.
    pub skipped_threshold: usize,
}

impl SweepOutput {
    pub fn propagating(&self) -> Vec<SweepRow> {
        self.rows.iter().copied().filter(SweepRow::is_propagating).collect()
    }

    pub fn evanescent(&self) -> Vec<SweepRow> {
        self.rows.iter().copied().filter(|r| !r.is_propagating()).collect()
    }
}

/// Coefficients for one energy, via the linear solve.
pub fn evaluate_point(energy: f64, v0: f64, mass: f64) -> Result<SweepRow, ScatteringError> {
    let p = StepProblem::new(energy, v0, mass, Spin::Up)?;
    let amps = solve_amplitudes_linear(&p)?;
    let c = coefficients(&p, &amps)?;
    let e_over_v0 = energy / v0;
    Ok(match c {
        ScatteringCoefficients::Propagating { t1, t2, r1, r2 } => {
            let qm = qm_reference(energy, v0)?;
            SweepRow::Propagating(PropagatingRow {
                e_ev: energy,
                e_over_v0,
                t1,
                t2,
                r1,
                r2,
                sum: (t1 + t2) + (r1 + r2),
                t_qm: qm.t_qm,
                r_qm: qm.r_qm,
            })
        }
        ScatteringCoefficients::Evanescent { r1_prime, r2_prime } => {
            SweepRow::Evanescent(EvanescentRow {
                e_ev: energy,
                e_over_v0,
                r1_prime,
                r2_prime,
                sum: r1_prime + r2_prime,
            })
        }
    })
}

/// Evaluates the grid in parallel; rows come back in grid order.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepOutput, SweepError> {
    spec.validate()?;
    let results: Vec<Result<Option<SweepRow>, ScatteringError>> = spec
        .ratios()
        .into_par_iter()
        .map(|ratio| {
            if (ratio - 1.0).abs() <= THRESHOLD_EPS {
                return Ok(None);
            }
            evaluate_point(ratio * spec.v0, spec.v0, spec.mass).map(Some)
        })
        .collect();
    let mut rows = Vec::with_capacity(results.len());
    let mut skipped = 0;
    for r in results {
        match r {
            Ok(Some(row)) => rows.push(row),
            Ok(None) | Err(ScatteringError::ThresholdDegeneracy { .. }) => skipped += 1,
            Err(e) => return Err(e.into()),
        }
    }
    if rows.is_empty() {
        return Err(ScatteringError::ThresholdDegeneracy {
            energy: spec.v0,
            v0: spec.v0,
        }
        .into());
    }
    Ok(SweepOutput {
        rows,
        skipped_threshold: skipped,
    })
}

/// Grids behind the three published figures: spin-resolved coefficients
/// above a 100 eV step, above 100 keV and 1 MeV steps, and reflection
/// below a 5 MeV step, wide enough in E to pass through E = m.
pub fn figure_specs() -> Vec<(&'static str, SweepSpec)> {
    vec![
        ("fig2_v0_100ev", SweepSpec::electron(100.0, 1.001, 10.0, 500, Spacing::Log, Regime::Propagating)),
        ("fig3_v0_100kev", SweepSpec::electron(1.0e5, 1.001, 3.0, 200, Spacing::Log, Regime::Propagating)),
        ("fig3_v0_1mev", SweepSpec::electron(1.0e6, 1.001, 3.0, 200, Spacing::Log, Regime::Propagating)),
        ("fig4_v0_5mev", SweepSpec::electron(5.0e6, 0.001, 0.999, 200, Spacing::Log, Regime::Evanescent)),
    ]
}

/// Refuses rows that break the sum rule, mixed regimes, or empty input.
pub(crate) fn check_emittable(rows: &[SweepRow]) -> Result<bool, SweepError> {
    let first = rows.first().ok_or(SweepError::Empty)?;
    let propagating = first.is_propagating();
    for r in rows {
        if r.is_propagating() != propagating {
            return Err(SweepError::MixedRegimes);
        }
        if !((r.sum() - 1.0).abs() <= UNITARITY_TOL) {
            return Err(SweepError::InvariantViolation {
                energy: r.energy(),
                sum: r.sum(),
            });
        }
    }
    Ok(propagating)
}
