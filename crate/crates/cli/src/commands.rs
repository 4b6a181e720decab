use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use numrad_core::bounds::{self, BoundKind, BoundsReport, CATALOG};
use numrad_core::matrix::{min_modulus, op_norm};
use numrad_core::ortho::{self, default_ortho_tol, OrthoVerdict};
use numrad_core::range::{self, default_radius_tol, real_radius, SWEEP_GRID};
use numrad_core::{BlockPartition, CMatrix, Field};
use serde::Serialize;

use crate::document::{parse_partition, MatrixDocument};
use crate::error::{CliError, CliResult};
use crate::format::{complex, flag, num};
use crate::scenarios::{self, describe_verdict, Status};

#[derive(Debug, Parser)]
#[command(name = "numrad", version, about = "Numerical radius, orthogonality and block bounds for small dense matrices")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Relation {
    /// numerical-radius orthogonality
    W,
    /// Birkhoff-James orthogonality for the operator norm
    B,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Characterization,
    Definitional,
    Both,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Numerical radius with maximizing angle and witness vector
    Radius {
        file: PathBuf,
        #[arg(long)]
        tol: Option<f64>,
        /// angles in the coarse sweep (even, at least 8)
        #[arg(long, default_value_t = SWEEP_GRID)]
        grid: usize,
        #[arg(long)]
        json: bool,
    },
    /// Crawford number: distance from 0 to the numerical range
    Crawford {
        file: PathBuf,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, default_value_t = SWEEP_GRID)]
        grid: usize,
    },
    /// Minimum modulus (smallest singular value)
    Minmod { file: PathBuf },
    /// Samples of the numerical range boundary as CSV
    Boundary {
        file: PathBuf,
        #[arg(long, default_value_t = 360)]
        samples: usize,
        /// output path; stdout when absent
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Decide orthogonality of T to A
    Ortho {
        t: PathBuf,
        a: PathBuf,
        #[arg(long, value_enum, default_value_t = Relation::W)]
        relation: Relation,
        /// defaults to characterization for w and definitional for b
        #[arg(long, value_enum)]
        method: Option<Method>,
        #[arg(long)]
        tol: Option<f64>,
        /// initial certification angles for the characterization
        #[arg(long, default_value_t = ortho::CERT_GRID)]
        grid: usize,
        #[arg(long)]
        json: bool,
    },
    /// Lower and upper bounds for the numerical radius
    Bounds {
        file: PathBuf,
        /// block sizes such as 2,1; overrides the file's partition
        #[arg(long)]
        partition: Option<String>,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, conflicts_with = "csv")]
        json: bool,
        /// write one catalog-ordered CSV row; `-` for stdout
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Reproduce a built-in scenario
    Repro {
        /// remark-2-3, remark-3-7, example-3-10 or norm-cases
        scenario: String,
        #[arg(long)]
        json: bool,
    },
}

/// Rendered stdout plus the exit code to report.
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self { stdout, code: 0 }
    }
}

/// Caps internal parallelism. The core is sequential, so any valid value
/// behaves like 1; invalid values are still rejected.
pub fn check_thread_env() -> CliResult<()> {
    match std::env::var("NUMRAD_THREADS") {
        Ok(v) if !v.trim().is_empty() => v
            .trim()
            .parse::<usize>()
            .map(|_| ())
            .map_err(|_| CliError::Usage(format!("NUMRAD_THREADS must be a nonnegative integer, got '{v}'"))),
        _ => Ok(()),
    }
}

fn load(path: &Path) -> CliResult<(CMatrix, Option<BlockPartition>)> {
    let doc = MatrixDocument::read(path)?;
    let m = doc.to_matrix()?;
    let p = doc.partition()?;
    Ok((m, p))
}

fn check_tol(tol: Option<f64>) -> CliResult<Option<f64>> {
    match tol {
        Some(t) if !(t.is_finite() && t >= 0.0) => Err(CliError::Usage(format!("--tol must be a nonnegative number, got {t}"))),
        other => Ok(other),
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types always serialize");
    s.push('\n');
    s
}

pub fn run(cli: Cli) -> CliResult<Outcome> {
    check_thread_env()?;
    match cli.command {
        Command::Radius { file, tol, grid, json } => radius(&file, check_tol(tol)?, grid, json),
        Command::Crawford { file, tol, grid } => {
            let (t, _) = load(&file)?;
            let tol = check_tol(tol)?.unwrap_or_else(|| default_radius_tol(&t));
            Ok(Outcome::ok(format!("{}\n", num(range::crawford_on_grid(&t, tol, grid)?))))
        }
        Command::Minmod { file } => {
            let (t, _) = load(&file)?;
            Ok(Outcome::ok(format!("{}\n", num(min_modulus(&t)?))))
        }
        Command::Boundary { file, samples, csv } => boundary(&file, samples, csv.as_deref()),
        Command::Ortho {
            t,
            a,
            relation,
            method,
            tol,
            grid,
            json,
        } => orthogonality(&t, &a, relation, method, check_tol(tol)?, grid, json),
        Command::Bounds {
            file,
            partition,
            tol,
            json,
            csv,
        } => bounds_cmd(&file, partition.as_deref(), check_tol(tol)?, json, csv.as_deref()),
        Command::Repro { scenario, json } => repro(&scenario, json),
    }
}

#[derive(Serialize)]
struct RadiusJson {
    value: f64,
    theta_star: f64,
    witness: Vec<[f64; 2]>,
    residual: f64,
}

fn radius(file: &Path, tol: Option<f64>, grid: usize, json: bool) -> CliResult<Outcome> {
    let (t, _) = load(file)?;
    let tol = tol.unwrap_or_else(|| default_radius_tol(&t));
    let cert = range::radius_on_grid(&t, tol, grid)?;
    if json {
        return Ok(Outcome::ok(to_json(&RadiusJson {
            value: cert.value,
            theta_star: cert.theta_star,
            witness: cert.witness.iter().map(|z| [z.re, z.im]).collect(),
            residual: cert.residual,
        })));
    }
    let mut out = String::new();
    writeln!(out, "w          {}", num(cert.value)).unwrap();
    writeln!(out, "theta_star {}", num(cert.theta_star)).unwrap();
    writeln!(out, "residual   {}", num(cert.residual)).unwrap();
    writeln!(out, "witness").unwrap();
    for z in &cert.witness {
        writeln!(out, "  {}", complex(*z)).unwrap();
    }
    Ok(Outcome::ok(out))
}

fn boundary(file: &Path, samples: usize, csv: Option<&Path>) -> CliResult<Outcome> {
    let (t, _) = load(file)?;
    if samples < 3 {
        return Err(CliError::Usage("--samples must be at least 3".into()));
    }
    let pts = range::range_boundary(&t, samples)?;
    let mut body = String::from("theta,re,im\n");
    for (theta, z) in pts {
        writeln!(body, "{},{},{}", num(theta), num(z.re), num(z.im)).unwrap();
    }
    match csv {
        Some(path) => {
            std::fs::write(path, &body).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            Ok(Outcome::ok(format!("wrote {samples} points to {}\n", path.display())))
        }
        None => Ok(Outcome::ok(body)),
    }
}

#[derive(Serialize)]
struct WitnessJson {
    theta: f64,
    phi: f64,
    vector: Vec<[f64; 2]>,
    t_form: [f64; 2],
    a_form: [f64; 2],
}

#[derive(Serialize)]
struct VerdictJson {
    relation: &'static str,
    method: &'static str,
    orthogonal: bool,
    margin: f64,
    marginal: bool,
    counterexample: Option<CounterexampleJson>,
    witnesses: Vec<WitnessJson>,
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum CounterexampleJson {
    Angle { theta: f64, margin: f64 },
    Lambda { lambda: [f64; 2], margin: f64 },
}

fn method_name(m: ortho::OrthoMethod) -> &'static str {
    match m {
        ortho::OrthoMethod::Characterization => "characterization",
        ortho::OrthoMethod::Definitional => "definitional",
    }
}

fn verdict_json(relation: Relation, v: &OrthoVerdict) -> VerdictJson {
    VerdictJson {
        relation: if relation == Relation::W { "w" } else { "b" },
        method: method_name(v.method),
        orthogonal: v.orthogonal,
        margin: v.margin,
        marginal: v.marginal,
        counterexample: v.counterexample.map(|c| match c {
            ortho::Counterexample::Angle { theta, margin } => CounterexampleJson::Angle { theta, margin },
            ortho::Counterexample::Lambda { lambda, margin } => CounterexampleJson::Lambda {
                lambda: [lambda.re, lambda.im],
                margin,
            },
        }),
        witnesses: v
            .witnesses
            .iter()
            .map(|w| WitnessJson {
                theta: w.theta,
                phi: w.phi,
                vector: w.vector.iter().map(|z| [z.re, z.im]).collect(),
                t_form: [w.t_form.re, w.t_form.im],
                a_form: [w.a_form.re, w.a_form.im],
            })
            .collect(),
    }
}

/// Witnesses printed in text mode; JSON carries all of them.
const SHOWN_WITNESSES: usize = 4;

fn render_verdict(out: &mut String, v: &OrthoVerdict) {
    writeln!(out, "method      {}", method_name(v.method)).unwrap();
    writeln!(out, "verdict     {}", describe_verdict(v)).unwrap();
    writeln!(out, "margin      {}", num(v.margin)).unwrap();
    if !v.witnesses.is_empty() {
        let step = (v.witnesses.len() / SHOWN_WITNESSES).max(1);
        writeln!(out, "witnesses   {} (showing every {step})", v.witnesses.len()).unwrap();
        for w in v.witnesses.iter().step_by(step).take(SHOWN_WITNESSES) {
            writeln!(
                out,
                "  theta {}  phi {}  <Tx,x> {}  <Ax,x> {}",
                num(w.theta),
                num(w.phi),
                complex(w.t_form),
                complex(w.a_form)
            )
            .unwrap();
        }
    }
}

fn orthogonality(
    t_path: &Path,
    a_path: &Path,
    relation: Relation,
    method: Option<Method>,
    tol: Option<f64>,
    grid: usize,
    json: bool,
) -> CliResult<Outcome> {
    let (t, _) = load(t_path)?;
    let (a, _) = load(a_path)?;
    if t.field() != a.field() {
        return Err(CliError::Invalid("T and A must both be real or both be complex".into()));
    }
    if t.shape() != a.shape() {
        return Err(CliError::Invalid(format!("T is {:?} but A is {:?}", t.shape(), a.shape())));
    }
    let real = t.field() == Field::Real;
    let method = method.unwrap_or(match relation {
        Relation::W => Method::Characterization,
        Relation::B => Method::Definitional,
    });
    let mut verdicts = Vec::new();
    match relation {
        Relation::B => {
            if method != Method::Definitional {
                return Err(CliError::Usage("--relation b only supports --method definitional".into()));
            }
            let tol = tol.unwrap_or(default_ortho_tol(op_norm(&t)?));
            verdicts.push(ortho::ortho_b(&t, &a, tol)?);
        }
        Relation::W => {
            let w = if real { real_radius(&t)?.w } else { range::numerical_radius(&t)? };
            let tol = tol.unwrap_or(default_ortho_tol(w));
            if matches!(method, Method::Characterization | Method::Both) {
                verdicts.push(if real {
                    ortho::ortho_w_real(&t, &a, tol)?
                } else {
                    ortho::ortho_w_on_grid(&t, &a, tol, grid)?
                });
            }
            if matches!(method, Method::Definitional | Method::Both) {
                verdicts.push(ortho::ortho_w_definitional(&t, &a, tol)?);
            }
        }
    }
    if json {
        let body: Vec<VerdictJson> = verdicts.iter().map(|v| verdict_json(relation, v)).collect();
        return Ok(Outcome::ok(to_json(&body)));
    }
    let mut out = String::new();
    let rel = if relation == Relation::W { "w" } else { "B" };
    writeln!(out, "relation    T perp_{rel} A over {}", if real { "R" } else { "C" }).unwrap();
    for v in &verdicts {
        render_verdict(&mut out, v);
    }
    if verdicts.len() == 2 {
        writeln!(out, "consistent  {}", flag(verdicts[0].orthogonal == verdicts[1].orthogonal)).unwrap();
    }
    Ok(Outcome::ok(out))
}

#[derive(Serialize)]
struct BoundsJson<'a> {
    reference_w: f64,
    report_tol: f64,
    partition: Option<&'a [usize]>,
    best_lower: &'a str,
    entries: Vec<BoundJson<'a>>,
}

#[derive(Serialize)]
struct BoundJson<'a> {
    id: &'a str,
    value: f64,
    kind: &'a str,
    valid: bool,
    source: &'a str,
}

fn kind_name(k: BoundKind) -> &'static str {
    match k {
        BoundKind::Lower => "lower",
        BoundKind::Upper => "upper",
    }
}

fn bounds_cmd(file: &Path, partition: Option<&str>, tol: Option<f64>, json: bool, csv: Option<&Path>) -> CliResult<Outcome> {
    let (t, embedded) = load(file)?;
    t.require_square()?;
    let p = match partition {
        Some(spec) => parse_partition(spec)?,
        None => embedded.unwrap_or_else(|| BlockPartition::scalar(t.rows())),
    };
    p.check(&t)?;
    let w = range::numerical_radius(&t)?;
    let rep = bounds::report(&t, Some(&p), tol.unwrap_or(bounds::default_report_tol(w)))?;
    if json {
        return Ok(Outcome::ok(to_json(&BoundsJson {
            reference_w: rep.reference_w,
            report_tol: rep.report_tol,
            partition: rep.partition.as_ref().map(|p| p.sizes()),
            best_lower: rep.best_lower,
            entries: rep
                .entries
                .iter()
                .map(|e| BoundJson {
                    id: e.id,
                    value: e.value,
                    kind: kind_name(e.kind),
                    valid: e.valid,
                    source: e.source,
                })
                .collect(),
        })));
    }
    if let Some(path) = csv {
        let body = bounds_csv(&rep);
        if path == Path::new("-") {
            return Ok(Outcome::ok(body));
        }
        std::fs::write(path, &body).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        return Ok(Outcome::ok(format!("wrote bounds to {}\n", path.display())));
    }
    let mut out = String::new();
    writeln!(out, "reference w  {}", num(rep.reference_w)).unwrap();
    let sizes: Vec<String> = p.sizes().iter().map(|s| s.to_string()).collect();
    writeln!(out, "partition    {}", sizes.join(",")).unwrap();
    writeln!(out, "{:<15} {:<20} {:<6} {:<6}", "name", "value", "kind", "valid").unwrap();
    for e in &rep.entries {
        let best = if e.id == rep.best_lower { "  <- best lower" } else { "" };
        writeln!(out, "{:<15} {:<20} {:<6} {:<6}{best}", e.id, num(e.value), kind_name(e.kind), flag(e.valid)).unwrap();
    }
    Ok(Outcome::ok(out))
}

/// One header and one data row with every catalog id as a column; bounds
/// that do not apply leave their cell empty.
fn bounds_csv(rep: &BoundsReport) -> String {
    let mut header = vec!["reference_w".to_string()];
    let mut row = vec![num(rep.reference_w)];
    for id in CATALOG {
        header.push(id.to_string());
        row.push(rep.get(id).map(|e| num(e.value)).unwrap_or_default());
    }
    header.push("best_lower".into());
    row.push(rep.best_lower.to_string());
    format!("{}\n{}\n", header.join(","), row.join(","))
}

fn repro(id: &str, json: bool) -> CliResult<Outcome> {
    let r = scenarios::run(id)?;
    let code = if r.failed() { 1 } else { 0 };
    if json {
        return Ok(Outcome { stdout: to_json(&r), code });
    }
    let mut out = String::new();
    writeln!(out, "scenario {}", r.scenario_id).unwrap();
    for c in &r.checks {
        writeln!(out, "{:<12} {}", c.status.label(), c.description).unwrap();
        writeln!(out, "             expected {}  computed {}", c.expected, c.computed).unwrap();
    }
    let count = |s: Status| r.checks.iter().filter(|c| c.status == s).count();
    writeln!(
        out,
        "{} pass, {} fail, {} discrepancy",
        count(Status::Pass),
        count(Status::Fail),
        count(Status::Discrepancy)
    )
    .unwrap();
    Ok(Outcome { stdout: out, code })
}
