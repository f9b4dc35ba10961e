//! The `eigenkit` command line: parses a task, runs it on a worker pool and
//! prints one report. Exit codes: 0 all checks pass, 1 some check fails, 2
//! usage or parse error.

mod args;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write as _;
use std::time::Instant;

use clap::Parser;
use serde::{Deserialize, Serialize};

pub use args::{Cli, CombiCommand, Command, Common, ConeCommand, ExampleKind, Format, NRange, S7Params, SphereCommand, TorusCommand};

use crate::arith::{BigInt, ExactMatrix};
use crate::combi::{
    build_matrix, dimensions, printed_examples, verify_derivative_cases, verify_det, verify_gen_polys, verify_kernel,
    verify_printed_example, verify_recurrences, verify_reduction_steps, verify_surjectivity, GenKind, MatrixFamily,
};
use crate::error::{Error, Result};
use crate::poly::{make_example, MultiPoly, SphereExample};
use crate::report::{Check, VerificationReport};
use crate::suite;
use crate::torus::{norm_shell, smallest_nonzero_shell, spectrum_up_to, Lattice, Torus, TrigPoly};
use crate::verify::{
    check_cone_correspondence, check_cone_lemma, check_eigenfunction, check_l2_family, check_l2_powers, exponent_tuples,
    harmonic_polynomials, isotropic_polynomials, verify_cone_parameters, FlatTorus, Sphere,
};

pub const SEED_ENV: &str = "EIGENKIT_SEED";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// The machine-readable result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub task: String,
    pub status: Status,
    pub items: Vec<Check>,
    pub ms: u64,
}

impl Report {
    pub fn from_checks(task: impl Into<String>, items: Vec<Check>, ms: u64) -> Self {
        let status = if items.is_empty() {
            Status::Skipped
        } else if items.iter().all(|c| c.pass) {
            Status::Pass
        } else {
            Status::Fail
        };
        Self { task: task.into(), status, items, ms }
    }

    pub fn exit_code(&self) -> i32 {
        i32::from(self.status == Status::Fail)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let status = match self.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Skipped => "skipped",
        };
        let failed = self.items.iter().filter(|c| !c.pass).count();
        let _ = writeln!(out, "{}: {status} ({} checks, {failed} failed, {} ms)", self.task, self.items.len(), self.ms);
        for c in &self.items {
            let _ = writeln!(out, "  [{}] {} expected={} computed={}", if c.pass { "ok" } else { "FAIL" }, c.id, c.expected, c.computed);
        }
        out
    }
}

/// Seed precedence: `EIGENKIT_SEED`, then `--seed`, then the default.
pub fn resolve_seed(flag: Option<u64>, env: Option<&str>) -> Result<u64> {
    match env {
        Some(text) => text.trim().parse().map_err(|_| Error::Usage(format!("{SEED_ENV}={text:?} is not a u64"))),
        None => Ok(flag.unwrap_or(suite::DEFAULT_SEED)),
    }
}

/// Output of a task: the checks plus optional extra text (matrices) for the
/// text format.
struct Outcome {
    report: VerificationReport,
    text: String,
}

impl From<VerificationReport> for Outcome {
    fn from(report: VerificationReport) -> Self {
        Self { report, text: String::new() }
    }
}

fn sweep<F>(name: String, range: &NRange, f: F) -> Result<VerificationReport>
where
    F: Fn(usize) -> Result<VerificationReport> + Sync + Send,
{
    use rayon::prelude::*;
    let parts: Vec<VerificationReport> = range.0.clone().into_par_iter().map(f).collect::<Result<_>>()?;
    let mut out = VerificationReport::new(name);
    for r in parts {
        out.checks.extend(r.checks);
    }
    Ok(out)
}

fn format_matrix(m: &ExactMatrix<BigInt>, transpose: bool) -> String {
    let m = if transpose { m.transpose() } else { m.clone() };
    let cells: Vec<Vec<String>> = m.to_rows().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect();
    let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
    cells
        .iter()
        .map(|r| {
            let row: Vec<String> = r.iter().map(|c| format!("{c:>width$}")).collect();
            format!("  [{}]\n", row.join(" "))
        })
        .collect()
}

fn sphere_example(kind: ExampleKind, n: usize, params: &S7Params) -> SphereExample {
    match kind {
        ExampleKind::Coordinates => SphereExample::Coordinates(n),
        ExampleKind::S7 => SphereExample::S7 { a: params.a.clone(), b: params.b.clone(), c: params.c.clone(), d: params.d.clone() },
    }
}

fn example_label(ex: &SphereExample) -> String {
    match ex {
        SphereExample::Coordinates(n) => format!("coordinates({n})"),
        SphereExample::S7 { a, b, c, d } => format!("s7({a},{b},{c},{d})"),
    }
}

fn single_n(range: &NRange) -> Result<usize> {
    if range.0.start() == range.0.end() {
        Ok(*range.0.start())
    } else {
        Err(Error::Usage("this task takes a single --n".into()))
    }
}

fn combi(cmd: &CombiCommand) -> Result<(String, Outcome)> {
    match cmd {
        CombiCommand::Det { family, n, transpose, examples } => {
            if *family == MatrixFamily::BRect {
                return Err(Error::Usage("determinants are defined for the square families A and B".into()));
            }
            let mut report = sweep(format!("det {family}"), n, |k| verify_det(*family, k))?;
            if *examples {
                for ex in printed_examples().iter().filter(|e| e.family == *family) {
                    report.checks.extend(verify_printed_example(ex)?.checks);
                }
            }
            let mut text = String::new();
            for k in n.0.clone() {
                if dimensions(*family, k)?.0 <= 8 {
                    let _ = writeln!(text, "{family}({k}){}:", if *transpose { " transposed" } else { "" });
                    text.push_str(&format_matrix(&build_matrix(*family, k)?, *transpose));
                }
            }
            Ok(("combi-det".into(), Outcome { report, text }))
        }
        CombiCommand::Kernel { n } => Ok(("combi-kernel".into(), sweep("kernel".into(), n, verify_kernel)?.into())),
        CombiCommand::Polys { n } => {
            let report = sweep("generating polynomials".into(), n, |k| {
                let mut r = verify_gen_polys(k)?;
                r.checks.extend(verify_derivative_cases(GenKind::Alpha, k)?.checks);
                if k % 2 == 0 {
                    r.checks.extend(verify_derivative_cases(GenKind::Beta, k)?.checks);
                    r.checks.extend(verify_surjectivity(GenKind::Beta, k)?.checks);
                }
                if k >= 2 {
                    r.checks.extend(verify_surjectivity(GenKind::Alpha, k)?.checks);
                }
                Ok(r)
            })?;
            Ok(("combi-polys".into(), report.into()))
        }
        CombiCommand::Recur { n } => {
            let report = sweep("recurrences".into(), n, |k| {
                let mut r = verify_recurrences(k)?;
                r.checks.extend(verify_reduction_steps(k)?.checks);
                Ok(r)
            })?;
            Ok(("combi-recur".into(), report.into()))
        }
    }
}

fn sphere(cmd: &SphereCommand, seed: u64) -> Result<(String, Outcome)> {
    let _ = seed;
    match cmd {
        SphereCommand::Verify { example, n, max_degree, params } => {
            let powers = max_degree.unwrap_or(match example {
                ExampleKind::Coordinates => 4,
                ExampleKind::S7 => 2,
            });
            // s7 has no size parameter
            let sizes = if *example == ExampleKind::S7 { NRange(1..=1) } else { n.clone() };
            let report = sweep("sphere examples".into(), &sizes, |k| {
                let ex = sphere_example(*example, k, params);
                let mut out = VerificationReport::new("");
                out.absorb(&example_label(&ex), suite::sphere_example_report(&ex, powers)?);
                Ok(out)
            })?;
            Ok(("sphere-verify".into(), report.into()))
        }
        SphereCommand::L2 { example, n, max_degree, params } => {
            let ex = sphere_example(*example, single_n(n)?, params);
            let family = make_example(&ex)?;
            let s = Sphere::new(family[0].dim())?;
            let mut report = VerificationReport::new("sphere L2");
            report.absorb("powers", check_l2_powers(&s, &family[0], *max_degree)?);
            report.absorb("family", check_l2_family(&s, &family, &exponent_tuples(family.len(), *max_degree))?);
            Ok(("sphere-l2".into(), report.into()))
        }
    }
}

fn torus(cmd: &TorusCommand, seed: u64) -> Result<(String, Outcome)> {
    match cmd {
        TorusCommand::Classify { basis, q } => {
            let q = match q {
                Some(q) => q.clone(),
                None => smallest_nonzero_shell(basis)?,
            };
            let report = suite::classification_report(basis, &q, seed, crate::torus::DEFAULT_SAMPLES)?;
            Ok(("torus-classify".into(), report.into()))
        }
        TorusCommand::Spectrum { basis, q } => Ok(("torus-spectrum".into(), spectrum(basis, q)?.into())),
    }
}

/// Each realized `-qΠ` with its multiplicity, and every generator of every
/// listed shell checked as a `(-qΠ, -qΠ)`-eigenfunction.
fn spectrum(basis: &Lattice, bound: &crate::arith::BigRational) -> Result<VerificationReport> {
    let torus = FlatTorus(Torus::new(basis.clone())?);
    let mut report = VerificationReport::new("spectrum");
    for value in spectrum_up_to(basis, bound)? {
        let eigen = crate::arith::PiScalar::pi2_multiple(-value.q.clone());
        let shell = norm_shell(torus.0.dual(), &value.q);
        let all_eigen = shell.iter().try_fold(true, |acc, k| {
            let r = check_eigenfunction(&torus, &TrigPoly::character(&torus.0, k))?;
            Ok::<_, Error>(acc && r.is_eigen && r.lambda == eigen && r.mu == eigen)
        })?;
        report.push(Check::new(
            format!("q={}", value.q),
            format!("eigenvalue {eigen}, generators are ({eigen}, {eigen})-eigenfunctions"),
            format!("multiplicity {}", value.multiplicity),
            all_eigen && shell.len() == value.multiplicity,
        ));
    }
    Ok(report)
}

fn cone(cmd: &ConeCommand, seed: u64) -> Result<(String, Outcome)> {
    let ConeCommand::Check { n, max_degree, lambda, mu, m } = cmd;
    let report = match (lambda, mu, m) {
        (Some(l), Some(u), Some(m)) => verify_cone_parameters(l, u, *m),
        (None, None, None) => cone_sweep(seed, n, *max_degree)?,
        _ => return Err(Error::Usage("--lambda, --mu and --m go together".into())),
    };
    Ok(("cone-check".into(), report.into()))
}

/// Cone lemma on seeded harmonic polynomials and the correspondence on
/// seeded isotropic powers, in every ambient dimension of `n`.
fn cone_sweep(seed: u64, n: &NRange, max_degree: u32) -> Result<VerificationReport> {
    use rayon::prelude::*;
    if *n.0.start() < 2 {
        return Err(Error::Usage("cone check needs ambient dimension >= 2".into()));
    }
    let within = |p: &MultiPoly| n.0.contains(&p.dim()) && !p.is_zero();
    let harmonic: Vec<MultiPoly> = harmonic_polynomials(seed, *n.0.end(), max_degree, 2).into_iter().filter(within).collect();
    let isotropic: Vec<MultiPoly> = isotropic_polynomials(seed, *n.0.end(), max_degree, 1).into_iter().filter(within).collect();
    let lemma: Vec<VerificationReport> = harmonic.par_iter().map(check_cone_lemma).collect::<Result<_>>()?;
    let corr: Vec<VerificationReport> = isotropic.par_iter().map(check_cone_correspondence).collect::<Result<_>>()?;
    let mut report = VerificationReport::new("cone");
    for (i, r) in lemma.into_iter().enumerate() {
        report.absorb(&format!("lemma/{i}"), r);
    }
    for (i, r) in corr.into_iter().enumerate() {
        report.absorb(&format!("correspondence/{i}"), r);
    }
    Ok(report)
}

fn full_suite(criterion: Option<usize>, seed: u64) -> Result<(String, Outcome)> {
    let ks: Vec<usize> = match criterion {
        Some(k) => vec![k],
        None => (1..=suite::CRITERIA.len()).collect(),
    };
    let mut report = VerificationReport::new("full suite");
    let mut text = String::new();
    for k in ks {
        let r = suite::run_criterion(k, seed)?;
        let _ = writeln!(text, "criterion {k:>2} {:<40} {}", suite::CRITERIA[k - 1], if r.passed() { "PASS" } else { "FAIL" });
        report.absorb(&format!("c{k}"), r);
    }
    Ok(("full-suite".into(), Outcome { report, text }))
}

fn execute(cli: &Cli, seed: u64) -> Result<(String, Outcome)> {
    match &cli.command {
        Command::Combi(c) => combi(c),
        Command::Sphere(c) => sphere(c, seed),
        Command::Torus(c) => torus(c, seed),
        Command::Cone(c) => cone(c, seed),
        Command::FullSuite { criterion } => full_suite(*criterion, seed),
    }
}

/// Runs one invocation, writing the report to `out` and diagnostics to
/// `err`. Returns the exit code.
pub fn run_with<I, T>(argv: I, env_seed: Option<&str>, out: &mut impl std::io::Write, err: &mut impl std::io::Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    let seed = match resolve_seed(cli.common.seed, env_seed) {
        Ok(s) => s,
        Err(e) => {
            let _ = writeln!(err, "eigenkit: {e}");
            return 2;
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.common.jobs).build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "eigenkit: cannot start workers: {e}");
            return 2;
        }
    };
    let start = Instant::now();
    let result = pool.install(|| execute(&cli, seed));
    let ms = u64::try_from(start.elapsed().as_millis()).unwrap_or(u64::MAX);
    match result {
        Ok((task, outcome)) => {
            let report = Report::from_checks(task, outcome.report.checks, ms);
            let _ = match cli.common.format {
                Format::Json => writeln!(out, "{}", report.to_json()),
                Format::Text => write!(out, "{}{}", outcome.text, report.to_text()),
            };
            report.exit_code()
        }
        Err(e) => {
            let _ = writeln!(err, "eigenkit: {e}");
            2
        }
    }
}

/// Entry point used by the binary.
pub fn run() -> i32 {
    let env = std::env::var(SEED_ENV).ok();
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let code = run_with(std::env::args_os(), env.as_deref(), &mut stdout.lock(), &mut stderr.lock());
    let _ = std::io::stdout().flush();
    code
}
