//! The `spinstep` command line. [`run`] does all the work so the binary is
//! a one-liner and tests can drive it in-process.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::algebra::{
    eta, verify_eta_algebra, verify_eta_matrix, verify_gamma_identities, AlgebraReport, Complex,
    EtaRepresentation, IDENTITY_TOL,
};
use crate::eigensystem::{verify_eigensystem, Spin, ELECTRON_MASS_EV};
use crate::scattering::{analyze, Analysis, ScatteringError, StepProblem};
use crate::sweep_io::{
    emit_csv, emit_json, emit_svg, format_number, run_sweep, Column, Regime, Spacing, SweepError,
    SweepRow, SweepSpec,
};
use crate::threed::{squared_operator_check, verify_threed, Momentum3};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

/// Energies at which `verify` runs the eigensystem checks.
const VERIFY_ENERGIES: [f64; 4] = [1.0, 1.0e3, 1.0e6, 1.0e7];
const EIGEN_TOL: f64 = 1e-10;

/// Parses `"100"`, `"100ev"`, `"100keV"`, `"1MeV"` into eV.
pub fn parse_energy(s: &str) -> Result<f64, String> {
    let t = s.trim();
    let lower = t.to_ascii_lowercase();
    let (num, scale) = if let Some(n) = lower.strip_suffix("kev") {
        (n, 1e3)
    } else if let Some(n) = lower.strip_suffix("mev") {
        (n, 1e6)
    } else if let Some(n) = lower.strip_suffix("ev") {
        (n, 1.0)
    } else {
        (lower.as_str(), 1.0)
    };
    let v: f64 = num
        .trim()
        .parse()
        .map_err(|_| format!("cannot read {s:?} as an energy (number with optional ev, kev or mev)"))?;
    if !v.is_finite() {
        return Err(format!("energy {s:?} is not finite"));
    }
    Ok(v * scale)
}

#[derive(Debug, Parser)]
#[command(name = "spinstep", version, about = "Spin-resolved step scattering for the nilpotent first-order equation")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RepArg {
    Rep1,
    Rep2,
}

impl From<RepArg> for EtaRepresentation {
    fn from(r: RepArg) -> Self {
        match r {
            RepArg::Rep1 => EtaRepresentation::Rep1,
            RepArg::Rep2 => EtaRepresentation::Rep2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SpinArg {
    Up,
    Down,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Json,
    Csv,
    Svg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SpacingArg {
    Linear,
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RegimeArg {
    Propagating,
    Evanescent,
    Auto,
}

#[derive(Debug, clap::Args)]
pub struct PointArgs {
    /// Incident energy (eV, or with kev / mev suffix)
    #[arg(long = "e", value_parser = parse_energy)]
    pub energy: f64,
    /// Step height
    #[arg(long, value_parser = parse_energy)]
    pub v0: f64,
    #[arg(long, value_parser = parse_energy, default_value_t = ELECTRON_MASS_EV)]
    pub mass: f64,
    #[arg(long, value_enum, default_value_t = SpinArg::Up)]
    pub spin: SpinArg,
    /// Human-readable table instead of JSON
    #[arg(long)]
    pub pretty: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the algebra, eigensystem and 3D identity suites
    Verify {
        #[arg(long, value_enum, default_value_t = RepArg::Rep1)]
        rep: RepArg,
        #[arg(long)]
        pretty: bool,
        /// Adds this to eta[0][1] before checking (test hook)
        #[arg(long, hide = true, allow_negative_numbers = true)]
        perturb_eta: Option<f64>,
    },
    /// Coefficients and currents at one energy
    Coefficients(PointArgs),
    /// Current densities at one energy
    Currents(PointArgs),
    /// Coefficients over an energy grid, written to a file
    Sweep {
        #[arg(long, value_parser = parse_energy)]
        v0: f64,
        #[arg(long, value_parser = parse_energy, default_value_t = ELECTRON_MASS_EV)]
        mass: f64,
        /// Lowest E/V0
        #[arg(long)]
        from: f64,
        /// Highest E/V0
        #[arg(long)]
        to: f64,
        #[arg(long)]
        points: usize,
        #[arg(long, value_enum, default_value_t = SpacingArg::Log)]
        spacing: SpacingArg,
        #[arg(long, value_enum, default_value_t = RegimeArg::Auto)]
        regime: RegimeArg,
        #[arg(long)]
        out: PathBuf,
        /// Defaults to the extension of --out
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
        /// Columns to plot in SVG output, comma separated
        #[arg(long, value_delimiter = ',')]
        columns: Vec<String>,
        #[arg(long)]
        pretty: bool,
    },
    /// Check the mu matrices and 3D continuity identities
    ThreedCheck {
        #[arg(long, value_enum, default_value_t = RepArg::Rep1)]
        rep: RepArg,
        #[arg(long)]
        pretty: bool,
    },
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    match cli.command {
        Command::Verify {
            rep,
            pretty,
            perturb_eta,
        } => cmd_verify(rep.into(), perturb_eta, pretty, out),
        Command::Coefficients(a) => cmd_point(&a, false, out, err),
        Command::Currents(a) => cmd_point(&a, true, out, err),
        Command::Sweep {
            v0,
            mass,
            from,
            to,
            points,
            spacing,
            regime,
            out: path,
            format,
            columns,
            pretty,
        } => {
            let spec = SweepSpec {
                v0,
                mass,
                e_over_v0_min: from,
                e_over_v0_max: to,
                points,
                spacing: match spacing {
                    SpacingArg::Linear => Spacing::Linear,
                    SpacingArg::Log => Spacing::Log,
                },
                regime: match regime {
                    RegimeArg::Propagating => Regime::Propagating,
                    RegimeArg::Evanescent => Regime::Evanescent,
                    RegimeArg::Auto => Regime::Auto,
                },
            };
            cmd_sweep(&spec, &path, format, &columns, pretty, out, err)
        }
        Command::ThreedCheck { rep, pretty } => cmd_threed(rep.into(), pretty, out),
    }
}

/// The full verification report for `verify`.
pub fn verification_report(rep: EtaRepresentation, perturb_eta: Option<f64>) -> AlgebraReport {
    let mut report = match perturb_eta {
        Some(delta) => {
            let mut e = eta(rep);
            e[(0, 1)] += Complex::new(delta, 0.0);
            verify_eta_matrix(&e, IDENTITY_TOL)
        }
        None => verify_eta_algebra(rep, IDENTITY_TOL),
    }
    .scoped("algebra");
    if rep == EtaRepresentation::Rep1 {
        report.extend(verify_gamma_identities(IDENTITY_TOL).scoped("gamma"));
    }
    for e in VERIFY_ENERGIES {
        report.extend(
            verify_eigensystem(e, ELECTRON_MASS_EV, rep, EIGEN_TOL).scoped(&format!("eigensystem E={e:e} eV")),
        );
    }
    report.extend(verify_threed(rep).scoped("threed"));
    report
}

fn print_report(report: &AlgebraReport, pretty: bool, out: &mut dyn Write) -> i32 {
    let text = if pretty {
        let mut s = String::new();
        for c in report.checks() {
            let _ = writeln!(
                s,
                "{}  {:>10.3e}  {}",
                if c.pass { "PASS" } else { "FAIL" },
                c.max_deviation,
                c.check_name
            );
        }
        let _ = writeln!(
            s,
            "{} of {} checks passed",
            report.checks().iter().filter(|c| c.pass).count(),
            report.len()
        );
        s
    } else {
        serde_json::to_string_pretty(report).expect("report serializes") + "\n"
    };
    let _ = out.write_all(text.as_bytes());
    if report.passed() {
        EXIT_OK
    } else {
        EXIT_VERIFY_FAILED
    }
}

fn cmd_verify(rep: EtaRepresentation, perturb: Option<f64>, pretty: bool, out: &mut dyn Write) -> i32 {
    print_report(&verification_report(rep, perturb), pretty, out)
}

fn cmd_threed(rep: EtaRepresentation, pretty: bool, out: &mut dyn Write) -> i32 {
    let mut report = verify_threed(rep);
    let sample = Momentum3::along([1.0, 2.0, 2.0], 1.0).expect("finite");
    report.extend(squared_operator_check(&sample, 1.0, 1.0, rep).scoped("squared"));
    print_report(&report, pretty, out)
}

/// Ordered `(key, value)` pairs for `coefficients` / `currents` output.
pub fn point_fields(a: &Analysis, currents_only: bool) -> Vec<(&'static str, f64)> {
    let mut f = vec![
        ("energy_ev", a.problem.energy()),
        ("v0_ev", a.problem.v0()),
        ("mass_ev", a.problem.mass()),
    ];
    if !currents_only {
        f.extend(a.coefficients.values());
        if let Some(q) = a.qm {
            f.push(("t_qm", q.t_qm));
            f.push(("r_qm", q.r_qm));
        }
    }
    let j = a.currents;
    f.extend([
        ("j_inc", j.j_inc),
        ("j_refl_up", j.j_refl_up),
        ("j_refl_down", j.j_refl_down),
        ("j_trans_up", j.j_trans_up),
        ("j_trans_down", j.j_trans_down),
    ]);
    if currents_only {
        f.push(("conservation_ratio", j.conservation_ratio()));
        f.push((
            "printed_form_deviation",
            j.max_relative_difference(&a.printed_currents),
        ));
    }
    f
}

fn cmd_point(a: &PointArgs, currents_only: bool, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let spin = match a.spin {
        SpinArg::Up => Spin::Up,
        SpinArg::Down => Spin::Down,
    };
    let analysis = match StepProblem::new(a.energy, a.v0, a.mass, spin).and_then(|p| analyze(&p)) {
        Ok(x) => x,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return match e {
                ScatteringError::ThresholdDegeneracy { .. }
                | ScatteringError::MassPole { .. }
                | ScatteringError::Eigen(_) => EXIT_USAGE,
                _ => EXIT_VERIFY_FAILED,
            };
        }
    };
    let fields = point_fields(&analysis, currents_only);
    let branch = analysis.problem.branch().to_string();
    let spin = format!("{}", analysis.problem.incident_spin());
    let text = if a.pretty {
        let mut s = format!("branch         {branch}\nincident_spin  {spin}\n");
        for (k, v) in &fields {
            let _ = writeln!(s, "{k:<22} {v:.12}");
        }
        s
    } else {
        let mut s = format!("{{\"branch\": \"{branch}\", \"incident_spin\": \"{spin}\"");
        for (k, v) in &fields {
            let _ = write!(s, ", \"{k}\": {}", format_number(*v));
        }
        s.push_str("}\n");
        s
    };
    let _ = out.write_all(text.as_bytes());
    EXIT_OK
}

fn format_of(path: &Path, explicit: Option<FormatArg>) -> Option<FormatArg> {
    explicit.or_else(|| {
        match path.extension()?.to_str()?.to_ascii_lowercase().as_str() {
            "csv" => Some(FormatArg::Csv),
            "json" => Some(FormatArg::Json),
            "svg" => Some(FormatArg::Svg),
            _ => None,
        }
    })
}

/// `fig.csv` -> `fig_propagating.csv`
fn suffixed(path: &Path, tag: &str) -> PathBuf {
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("sweep");
    let name = match path.extension().and_then(|e| e.to_str()) {
        Some(ext) => format!("{stem}_{tag}.{ext}"),
        None => format!("{stem}_{tag}"),
    };
    path.with_file_name(name)
}

fn sweep_exit(e: &SweepError) -> i32 {
    match e {
        SweepError::Io { .. } => EXIT_IO,
        SweepError::InvariantViolation { .. } => EXIT_VERIFY_FAILED,
        _ => EXIT_USAGE,
    }
}

fn cmd_sweep(
    spec: &SweepSpec,
    path: &Path,
    format: Option<FormatArg>,
    columns: &[String],
    pretty: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let Some(format) = format_of(path, format) else {
        let _ = writeln!(
            err,
            "error: cannot infer format from {}; pass --format json|csv|svg",
            path.display()
        );
        return EXIT_USAGE;
    };
    let columns: Vec<Column> = match columns.iter().map(|c| c.parse()).collect() {
        Ok(c) => c,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let result = match run_sweep(spec) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return sweep_exit(&e);
        }
    };
    let groups: Vec<(PathBuf, Vec<SweepRow>)> = {
        let (prop, evan) = (result.propagating(), result.evanescent());
        match (prop.is_empty(), evan.is_empty()) {
            (false, false) => vec![
                (suffixed(path, "evanescent"), evan),
                (suffixed(path, "propagating"), prop),
            ],
            (false, true) => vec![(path.to_path_buf(), prop)],
            _ => vec![(path.to_path_buf(), evan)],
        }
    };
    let mut written = Vec::new();
    for (file, rows) in &groups {
        let r = match format {
            FormatArg::Csv => emit_csv(rows, file),
            FormatArg::Json => emit_json(rows, file),
            FormatArg::Svg => emit_svg(rows, file, &columns),
        };
        if let Err(e) = r {
            let _ = writeln!(err, "error: {e}");
            return sweep_exit(&e);
        }
        written.push((file.display().to_string(), rows.len()));
    }
    let text = if pretty {
        let mut s = String::new();
        for (f, n) in &written {
            let _ = writeln!(s, "wrote {n} rows to {f}");
        }
        let _ = writeln!(s, "skipped {} threshold points", result.skipped_threshold);
        s
    } else {
        let files: Vec<String> = written
            .iter()
            .map(|(f, n)| format!("{{\"path\": {}, \"rows\": {n}}}", serde_json::Value::from(f.as_str())))
            .collect();
        format!(
            "{{\"rows\": {}, \"skipped_threshold\": {}, \"files\": [{}]}}\n",
            result.rows.len(),
            result.skipped_threshold,
            files.join(", ")
        )
    };
    let _ = out.write_all(text.as_bytes());
    EXIT_OK
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut o = Vec::new();
        let mut e = Vec::new();
        let code = run(std::iter::once("spinstep").chain(args.iter().copied()), &mut o, &mut e);
        (code, String::from_utf8(o).unwrap(), String::from_utf8(e).unwrap())
    }

    #[test]
    fn energy_suffixes() {
        assert_eq!(parse_energy("100").unwrap(), 100.0);
        assert_eq!(parse_energy("100eV").unwrap(), 100.0);
        assert_eq!(parse_energy("100KeV").unwrap(), 1.0e5);
        assert_eq!(parse_energy("1MEV").unwrap(), 1.0e6);
        assert_eq!(parse_energy("1e6").unwrap(), 1.0e6);
        assert!(parse_energy("10 volts").is_err());
        assert!(parse_energy("inf").is_err());
    }

    #[test]
    fn unknown_flag_is_usage_error() {
        assert_eq!(call(&["verify", "--bogus"]).0, EXIT_USAGE);
    }

    #[test]
    fn verify_both_reps() {
        assert_eq!(call(&["verify", "--rep", "rep1"]).0, EXIT_OK);
        assert_eq!(call(&["verify", "--rep", "rep2"]).0, EXIT_OK);
        assert_eq!(call(&["verify", "--perturb-eta", "1e-6"]).0, EXIT_VERIFY_FAILED);
    }

    #[test]
    fn threshold_is_exit_two() {
        let (code, _, err) = call(&["coefficients", "--e", "100", "--v0", "100"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("threshold degeneracy"));
    }

    #[test]
    fn suffixed_paths() {
        assert_eq!(
            suffixed(Path::new("/tmp/fig.csv"), "evanescent"),
            PathBuf::from("/tmp/fig_evanescent.csv")
        );
    }
}
