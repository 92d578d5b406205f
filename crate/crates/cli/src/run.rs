use crate::dataset::{parse_coefficients, parse_csv, parse_dataset, Format};
use crate::error::{CliError, CliResult};
use crate::report::*;
use chebcert::{
    cut_condition_check_with, descent_direction, extract_extremal_sets, extremal_tolerance,
    fit_minimax_with, uniform_error, verify_extremal_sets, verify_necessary_condition_with,
    BasisSpec, Coefficients, Dataset, LpOptions, ReductionOptions, SignedPointSet, Verdict,
};
use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    Fit,
    Verify,
    Reduce,
    Cuts,
    Demo,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Fit => "fit",
            Command::Verify => "verify",
            Command::Reduce => "reduce",
            Command::Cuts => "cuts",
            Command::Demo => "demo",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum BasisKind {
    #[default]
    Monomial,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub data: Option<PathBuf>,
    pub format: Option<Format>,
    pub basis: BasisKind,
    /// Checked against the data when given.
    pub dimension: Option<usize>,
    pub degree: Option<u32>,
    pub coefficients: Option<PathBuf>,
    /// Relative tolerance for extremal detection.
    pub tol_extremal: f64,
    /// LP feasibility tolerance.
    pub tol_lp: f64,
    pub node_budget: usize,
    pub single_branch: bool,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        Self {
            command,
            data: None,
            format: None,
            basis: BasisKind::Monomial,
            dimension: None,
            degree: None,
            coefficients: None,
            tol_extremal: 1e-7,
            tol_lp: 1e-9,
            node_budget: 10_000,
            single_branch: false,
            out: None,
        }
    }

    pub fn validate(&self) -> CliResult<()> {
        let usage = |m: &str| Err(CliError::Usage(m.into()));
        if !(self.tol_extremal > 0.0 && self.tol_extremal.is_finite()) {
            return usage("--tol-extremal must be positive");
        }
        if !(self.tol_lp > 0.0 && self.tol_lp.is_finite()) {
            return usage("--tol-lp must be positive");
        }
        if self.node_budget == 0 {
            return usage("--budget must be at least 1");
        }
        if self.command == Command::Demo {
            return Ok(());
        }
        if self.data.is_none() {
            return usage("--data is required");
        }
        match self.degree {
            None => usage("--degree is required"),
            Some(m) if m < 2 && self.command == Command::Cuts => {
                usage("cut conditions need --degree 2 or higher")
            }
            _ => Ok(()),
        }
    }

    fn lp(&self) -> LpOptions<f64> {
        LpOptions { feasibility_tol: self.tol_lp, ..LpOptions::default() }
    }
}

/// Which analyses to run on one model.
#[derive(Debug, Clone, Copy)]
struct Analyses {
    reduction: bool,
    cuts: bool,
}

impl Analyses {
    fn for_command(c: Command) -> Self {
        Self { reduction: c == Command::Reduce, cuts: c == Command::Cuts }
    }
}

fn ms(start: Instant) -> Option<f64> {
    Some(start.elapsed().as_secs_f64() * 1e3)
}

fn analyze(
    config: &RunConfig,
    command: Command,
    basis: &BasisSpec<f64>,
    degree: u32,
    data: &Dataset<f64>,
    coefficients: Option<Vec<f64>>,
    analyses: Analyses,
) -> CliResult<VerificationReport> {
    let lp = config.lp();
    let mut timings = Timings::default();
    let mut notes = Vec::new();
    let fitted = coefficients.is_none();
    let coefficients = match coefficients {
        Some(c) => {
            if c.len() != basis.size() {
                return Err(CliError::Usage(format!(
                    "expected {} coefficients for terms [{}], found {}",
                    basis.size(),
                    basis.names().join(", "),
                    c.len()
                )));
            }
            Coefficients(c)
        }
        None => {
            let start = Instant::now();
            let fit = fit_minimax_with(basis, data, &lp)?;
            timings.fit_ms = ms(start);
            fit.coefficients
        }
    };
    let error = uniform_error(basis, &coefficients, data)?;
    let tolerance = extremal_tolerance(error, config.tol_extremal);
    let point = |k: usize| data.point(k).to_vec();

    let mut report = VerificationReport {
        schema: SCHEMA_VERSION,
        command: command.name(),
        name: None,
        basis: BasisReport {
            kind: "monomial",
            dimension: basis.dimension(),
            degree,
            terms: basis.names(),
        },
        fit: FitReport { coefficients: coefficients.0.clone(), error, fitted },
        extremal: None,
        verdicts: Verdicts::default(),
        certificate: None,
        witness: None,
        reduction: None,
        cuts: None,
        notes: Vec::new(),
        timings: Timings::default(),
        exit_code: 0,
    };

    if error <= tolerance {
        notes.push("the model interpolates the data; zero error is the global minimum".into());
        report.verdicts.sufficient_condition = Some(Sufficient::Optimal);
        report.notes = notes;
        report.timings = timings;
        return Ok(report);
    }

    let start = Instant::now();
    let ext = extract_extremal_sets(basis, &coefficients, data, tolerance)?;
    let verdict = verify_extremal_sets(basis, data, &ext, &lp)?;
    match &verdict {
        Verdict::Optimal(cert) => {
            report.verdicts.sufficient_condition = Some(Sufficient::Optimal);
            report.certificate = Some(CertificateReport::new(cert, point));
        }
        Verdict::NotOptimal(w) => {
            report.verdicts.sufficient_condition = Some(Sufficient::NotOptimal);
            let descent = match descent_direction(basis, &coefficients, data, w) {
                Ok(d) => Some(d),
                Err(e) => {
                    notes.push(format!("no descent step confirmed: {e}"));
                    None
                }
            };
            report.witness = Some(WitnessReport::new(w, descent.as_ref()));
        }
    }
    timings.verify_ms = ms(start);
    report.extremal = Some(ExtremalReport {
        tolerance,
        positive: ext.positive.iter().map(|&k| PointRef { index: k, x: point(k) }).collect(),
        negative: ext.negative.iter().map(|&k| PointRef { index: k, x: point(k) }).collect(),
    });

    if analyses.reduction || analyses.cuts {
        let set = SignedPointSet::from_extremal(data, &ext, degree)?;
        if analyses.reduction {
            let start = Instant::now();
            let opts = ReductionOptions {
                node_budget: config.node_budget,
                single_branch: config.single_branch,
                lp,
            };
            let trace = verify_necessary_condition_with(&set, &opts)?;
            timings.reduction_ms = ms(start);
            let r = ReductionReport::from(&trace);
            report.verdicts.necessary_reduction = Some(r.verdict);
            report.reduction = Some(r);
        }
        if analyses.cuts {
            let start = Instant::now();
            let cuts = cut_condition_check_with(&set, &lp)?;
            timings.cuts_ms = ms(start);
            let c = CutsReport::from(&cuts);
            report.verdicts.cut_condition = Some(c.verdict);
            report.cuts = Some(c);
        }
    }
    if !report.verdicts.consistent() {
        notes.push("verdicts disagree: an optimal model failed a necessary test".into());
    }
    report.notes = notes;
    report.timings = timings;
    report.exit_code = report.verdicts.exit_code();
    Ok(report)
}

/// Built-in reproduction cases. Signed point sets are encoded as data with
/// `f = +1` on the positive side and `f = −1` on the negative side, checked
/// against the zero model.
pub struct DemoCase {
    pub name: &'static str,
    pub csv: &'static str,
    pub degree: u32,
    pub zero_model: bool,
}

pub const DEMO_CASES: [DemoCase; 3] = [
    DemoCase {
        name: "uneven four-point example, linear fit",
        csv: include_str!("../fixtures/uneven.csv"),
        degree: 1,
        zero_model: false,
    },
    DemoCase {
        name: "six-point quadratic sign pattern",
        csv: include_str!("../fixtures/six_point_quadratic.csv"),
        degree: 2,
        zero_model: true,
    },
    DemoCase {
        name: "sign pattern passing every line cut but not optimal",
        csv: include_str!("../fixtures/cut_gap.csv"),
        degree: 2,
        zero_model: true,
    },
];

#[derive(Debug, Clone, PartialEq)]
pub enum RunReport {
    Single(VerificationReport),
    Demo(DemoReport),
}

impl RunReport {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunReport::Single(r) => r.exit_code,
            RunReport::Demo(d) => d.exit_code,
        }
    }

    pub fn to_json(&self) -> String {
        match self {
            RunReport::Single(r) => serde_json::to_string_pretty(r),
            RunReport::Demo(d) => serde_json::to_string_pretty(d),
        }
        .expect("reports contain only finite numbers and strings")
    }

    pub fn summary(&self) -> String {
        match self {
            RunReport::Single(r) => summarize(r),
            RunReport::Demo(d) => {
                let mut s = String::new();
                for case in &d.cases {
                    let _ = writeln!(s, "== {}", case.name.as_deref().unwrap_or(""));
                    s.push_str(&summarize(case));
                }
                s
            }
        }
    }
}

fn verdict_text<T: serde::Serialize>(v: &Option<T>) -> String {
    match v {
        Some(v) => serde_json::to_value(v)
            .ok()
            .and_then(|j| j.as_str().map(str::to_owned))
            .unwrap_or_default(),
        None => "not run".into(),
    }
}

fn summarize(r: &VerificationReport) -> String {
    let mut s = String::new();
    let source = if r.fit.fitted { "fitted" } else { "given" };
    let _ = writeln!(
        s,
        "basis: monomial, dimension {}, degree {} ({} terms)",
        r.basis.dimension,
        r.basis.degree,
        r.basis.terms.len()
    );
    let _ = writeln!(s, "coefficients ({source}): {:?}", r.fit.coefficients);
    let _ = writeln!(s, "uniform error: {}", r.fit.error);
    if let Some(e) = &r.extremal {
        let idx = |v: &[PointRef]| v.iter().map(|p| p.index).collect::<Vec<_>>();
        let _ = writeln!(s, "extremal points: E+ {:?}, E- {:?}", idx(&e.positive), idx(&e.negative));
    }
    let _ = write!(s, "sufficient condition: {}", verdict_text(&r.verdicts.sufficient_condition));
    if let Some(c) = &r.certificate {
        let _ = write!(s, " (certificate on {} points)", c.support_size);
    }
    if let Some(w) = &r.witness {
        let _ = write!(s, " (separation margin {:.3e})", w.margin);
    }
    s.push('\n');
    if r.verdicts.necessary_reduction.is_some() {
        let nodes = r.reduction.as_ref().map_or(0, |t| t.nodes.len());
        let _ = writeln!(
            s,
            "necessary reduction: {} ({nodes} node{})",
            verdict_text(&r.verdicts.necessary_reduction),
            if nodes == 1 { "" } else { "s" }
        );
    }
    if let Some(c) = &r.cuts {
        let feasible = c.checks.iter().filter(|c| c.feasible).count();
        let _ = writeln!(
            s,
            "cut condition: {} ({feasible} of {} cuts feasible)",
            verdict_text(&r.verdicts.cut_condition),
            c.checks.len()
        );
    }
    for n in &r.notes {
        let _ = writeln!(s, "note: {n}");
    }
    s
}

fn run_demo(config: &RunConfig) -> CliResult<DemoReport> {
    let analyses = Analyses { reduction: true, cuts: true };
    let mut cases = Vec::new();
    for case in &DEMO_CASES {
        let data = parse_csv(case.csv)?;
        let basis = BasisSpec::monomial(data.dimension(), case.degree)?;
        let coeffs = case.zero_model.then(|| vec![0.0; basis.size()]);
        let a = Analyses { cuts: analyses.cuts && case.degree >= 2, ..analyses };
        let mut r = analyze(config, Command::Demo, &basis, case.degree, &data, coeffs, a)?;
        r.name = Some(case.name.to_string());
        cases.push(r);
    }
    Ok(DemoReport { schema: SCHEMA_VERSION, command: "demo", cases, exit_code: 0 })
}

pub fn run(config: &RunConfig) -> CliResult<RunReport> {
    config.validate()?;
    if config.command == Command::Demo {
        return Ok(RunReport::Demo(run_demo(config)?));
    }
    let path = config.data.as_ref().expect("validated");
    let data = parse_dataset(path, config.format)?;
    if let Some(d) = config.dimension {
        if d != data.dimension() {
            return Err(CliError::Usage(format!(
                "dimension mismatch: --dim is {d} but {} has {} coordinates per point",
                path.display(),
                data.dimension()
            )));
        }
    }
    let degree = config.degree.expect("validated");
    let basis = BasisSpec::monomial(data.dimension(), degree)?;
    let coefficients = config.coefficients.as_deref().map(parse_coefficients).transpose()?;
    let report = analyze(
        config,
        config.command,
        &basis,
        degree,
        &data,
        coefficients,
        Analyses::for_command(config.command),
    )?;
    Ok(RunReport::Single(report))
}

/// Runs the command, writes the report if requested and returns the exit
/// code together with the human-readable summary.
pub fn execute(config: &RunConfig) -> CliResult<(i32, String)> {
    let report = run(config)?;
    if let Some(out) = &config.out {
        std::fs::write(out, report.to_json() + "\n")
            .map_err(|e| CliError::Output(format!("{}: {e}", out.display())))?;
    }
    let mut summary = report.summary();
    let _ = writeln!(summary, "exit code: {}", report.exit_code());
    Ok((report.exit_code(), summary))
}
