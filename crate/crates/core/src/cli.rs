//! Command-line front end. Every subcommand reads and writes the JSON
//! instance format: a drawing with a `certificate` key.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::bounds::{audit_against_bounds, evaluate_bounds, table_csv, verified_hypotheses, Audit, Hypothesis};
use crate::certify::{
    check_bipartite_inequality, check_claw_cover, check_independent, check_optimal, check_planar_pairing,
    AuditReport, Certificate,
};
use crate::error::{Error, Result};
use crate::export::{export, Format};
use crate::families::{generate, ConstructionResult, Family, FamilySpec};
use crate::graph_core::{DrawingJson, MultiGraph};
use crate::solver::{max_d_independent_set, parse_edge_list, Budget};
use crate::transforms::{augment_with_dual, insert_h3_at_pairing, insert_k2x_at_pairing, remove_claw_cover};

pub const FIXTURES_ENV: &str = "ONEP_FIXTURES";

/// A drawing together with its certificate, as stored on disk.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<FamilySpec>,
    #[serde(flatten)]
    pub drawing: DrawingJson,
    pub certificate: Certificate,
}

impl Instance {
    pub fn from_result(r: &ConstructionResult, family: Option<FamilySpec>) -> Self {
        Instance { family, drawing: r.drawing.to_json(), certificate: r.certificate.clone() }
    }

    pub fn to_result(&self) -> Result<ConstructionResult> {
        Ok(ConstructionResult::from_parts(self.drawing.build()?, self.certificate.clone()))
    }
}

#[derive(Parser, Debug)]
#[command(name = "onep", version, about = "Constructions, certificates and exact checks for d-independent sets in 1-planar graphs")]
pub struct Cli {
    /// Worker threads for the solver (default: available parallelism).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Op {
    H3,
    K2x,
    ClawDelete,
    Dualize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Check {
    All,
    Independent,
    Pairing,
    Claw,
    Bipartite,
    Optimal,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a family instance.
    Generate {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        s: Option<usize>,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        level: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// Apply a transformation to an instance.
    Transform {
        #[arg(long)]
        op: Op,
        #[arg(long)]
        x: Option<usize>,
        #[arg(short)]
        i: PathBuf,
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// Audit the certificate of an instance.
    Verify {
        #[arg(short)]
        i: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "all")]
        checks: Vec<Check>,
    },
    /// Evaluate the closed-form bounds.
    Bounds {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',')]
        hyp: Vec<Hypothesis>,
    },
    /// Compute a maximum d-independent set of a JSON instance or edge list.
    Solve {
        #[arg(long)]
        d: Option<usize>,
        #[arg(short)]
        i: PathBuf,
        #[arg(long, default_value_t = 100_000_000)]
        budget_nodes: u64,
        #[arg(long, default_value_t = 60.0)]
        budget_secs: f64,
    },
    /// Certificate checks plus the bound verdict.
    Audit {
        #[arg(short)]
        i: PathBuf,
    },
    /// Coefficient rows of a summary table as CSV.
    Table {
        #[arg(long)]
        which: u8,
    },
    /// Render an instance as DOT or GraphML.
    Export {
        #[arg(short)]
        i: PathBuf,
        #[arg(long)]
        format: Format,
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// Write the standard fixture set.
    Fixtures {
        /// Target directory (default: $ONEP_FIXTURES or `fixtures`).
        #[arg(short)]
        o: Option<PathBuf>,
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub passed: bool,
    pub checks: Vec<AuditReport>,
    pub violations: Vec<(String, String)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AuditOutput {
    pub verify: VerifyReport,
    /// Absent when the certificate fails and exceeds the bound.
    pub bounds: Option<Audit>,
}

pub fn fixture_dir() -> PathBuf {
    std::env::var_os(FIXTURES_ENV).map(PathBuf::from).unwrap_or_else(|| PathBuf::from("fixtures"))
}

/// Relative paths that do not exist are looked up in the fixture directory.
fn resolve(p: &Path) -> PathBuf {
    if p.is_relative() && !p.exists() {
        let alt = fixture_dir().join(p);
        if alt.exists() {
            return alt;
        }
    }
    p.to_path_buf()
}

pub fn read_instance(p: &Path) -> Result<Instance> {
    Ok(serde_json::from_str(&fs::read_to_string(resolve(p))?)?)
}

pub fn to_json<T: Serialize>(v: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(p) => Ok(fs::write(p, text)?),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn verify(inst: &Instance, checks: &[Check]) -> Result<VerifyReport> {
    let dr = inst.drawing.build()?;
    let c = &inst.certificate;
    let g = dr.graph();
    let all = checks.contains(&Check::All);
    let want = |k: Check| checks.contains(&k);
    let mut reports = Vec::new();
    if all || want(Check::Independent) {
        reports.push(check_independent(g, c));
    }
    if (all && c.pairing.is_some()) || want(Check::Pairing) {
        reports.push(check_planar_pairing(&dr, c));
    }
    if (all && c.claw_cover.is_some()) || want(Check::Claw) {
        reports.push(check_claw_cover(g, c));
    }
    if (all && bipartite_applies(g, c)) || want(Check::Bipartite) {
        reports.push(check_bipartite_inequality(g, c)?.0);
    }
    if want(Check::Optimal) {
        reports.push(check_optimal(&dr));
    }
    let violations = reports
        .iter()
        .flat_map(|r| r.witnesses.iter().map(|w| (r.check.clone(), w.clone())))
        .collect();
    Ok(VerifyReport { passed: reports.iter().all(|r| r.passed), checks: reports, violations })
}

fn bipartite_applies(g: &MultiGraph, c: &Certificate) -> bool {
    let deg = g.degree_vec();
    g.is_simple() && c.d >= 3 && !c.set.is_empty() && c.set.iter().all(|&v| v < deg.len() && deg[v] >= 3)
}

/// The fixture set shipped with the repository, by file name.
pub fn standard_fixtures() -> Vec<(String, FamilySpec)> {
    use Family::*;
    let mut out = vec![("h3.json".to_string(), FamilySpec::new(H3))];
    for (f, s) in [(G3, 5), (G4, 1), (G4, 3), (G5, 1), (S3, 1), (S6, 2), (S7, 3), (S13, 3), (S18, 3), (M6, 2)] {
        out.push((format!("{f:?}_s{s}.json").to_lowercase(), FamilySpec::new(f).s(s)));
    }
    out.push(("m7_l0.json".into(), FamilySpec::new(M7).level(0)));
    out.push(("mindeg7_k0.json".into(), FamilySpec::new(MinDeg7).k(0)));
    out.push(("k2m_6.json".into(), FamilySpec::new(QQuad).d(2).m(6)));
    out.push(("o4_m6.json".into(), FamilySpec::new(OOptimal).d(4).m(6)));
    out.push(("qhat3_s1.json".into(), FamilySpec::new(QHat).d(3).s(1)));
    out.push(("gd6_s1.json".into(), FamilySpec::new(Gd).d(6).s(1)));
    out.push(("table1_d13_s3.json".into(), FamilySpec::new(Table1).d(13).s(3)));
    out
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::BoundViolated { .. } => 3,
        Error::UnsupportedParams(_)
        | Error::DomainError(_)
        | Error::LimitExceeded { .. }
        | Error::Parse(_)
        | Error::Json(_)
        | Error::Io(_) => 2,
        _ => 1,
    }
}

fn execute(cli: Cli) -> Result<i32> {
    let threads = cli
        .threads
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    match cli.command {
        Command::Generate { family, s, d, level, k, m, o } => {
            let spec = FamilySpec { family: Some(family), s, d, level, k_target: k, m };
            let r = generate(&spec)?;
            emit(&o, &to_json(&Instance::from_result(&r, Some(spec)))?)?;
        }
        Command::Transform { op, x, i, o } => {
            let inst = read_instance(&i)?;
            let base = inst.to_result()?;
            let r = match op {
                Op::H3 => insert_h3_at_pairing(&base)?,
                Op::K2x => {
                    let x = x.ok_or_else(|| Error::UnsupportedParams("k2x needs --x".into()))?;
                    insert_k2x_at_pairing(&base, x)?
                }
                Op::ClawDelete => remove_claw_cover(&base)?,
                Op::Dualize => augment_with_dual(&base)?,
            };
            emit(&o, &to_json(&Instance::from_result(&r, None))?)?;
        }
        Command::Verify { i, checks } => {
            let rep = verify(&read_instance(&i)?, &checks)?;
            print!("{}", to_json(&rep)?);
            return Ok(if rep.passed { 0 } else { 1 });
        }
        Command::Bounds { d, n, hyp } => {
            print!("{}", to_json(&evaluate_bounds(d, n, &hyp)?)?);
        }
        Command::Solve { d, i, budget_nodes, budget_secs } => {
            let text = fs::read_to_string(resolve(&i))?;
            let mut budget = Budget {
                nodes: budget_nodes,
                time: Duration::from_secs_f64(budget_secs.max(0.0)),
                threads,
                cap: None,
            };
            let (g, d) = if text.trim_start().starts_with('{') {
                let inst: Instance = serde_json::from_str(&text)?;
                let r = inst.to_result()?;
                let d = d.unwrap_or(inst.certificate.d);
                let hyps = verified_hypotheses(&r);
                if let Some(b) = evaluate_bounds(d.max(1), r.drawing.vertex_count(), &hyps).ok().and_then(|b| b.best) {
                    budget.cap = Some(b.floor().to_integer().max(0) as usize);
                }
                (r.drawing.graph().clone(), d)
            } else {
                let d = d.ok_or_else(|| Error::UnsupportedParams("edge lists need --d".into()))?;
                (parse_edge_list(&text)?, d)
            };
            print!("{}", to_json(&max_d_independent_set(&g, d, budget))?);
        }
        Command::Audit { i } => {
            let inst = read_instance(&i)?;
            let rep = verify(&inst, &[Check::All])?;
            let passed = rep.passed;
            let bounds = match audit_against_bounds(&inst.to_result()?) {
                Ok(a) => Some(a),
                Err(Error::BoundViolated { .. }) if !passed => None,
                Err(e) => return Err(e),
            };
            print!("{}", to_json(&AuditOutput { verify: rep, bounds })?);
            return Ok(if passed { 0 } else { 1 });
        }
        Command::Table { which } => print!("{}", table_csv(which)?),
        Command::Export { i, format, o } => {
            let inst = read_instance(&i)?;
            emit(&o, &export(&inst.drawing.build()?, &inst.certificate.set, format))?;
        }
        Command::Fixtures { o } => {
            let dir = o.unwrap_or_else(fixture_dir);
            fs::create_dir_all(&dir)?;
            for (file, spec) in standard_fixtures() {
                let r = generate(&spec)?;
                fs::write(dir.join(&file), to_json(&Instance::from_result(&r, Some(spec)))?)?;
            }
        }
    }
    Ok(0)
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn instance_round_trip() {
        let r = generate(&FamilySpec::new(Family::G4).s(1)).unwrap();
        let inst = Instance::from_result(&r, None);
        let text = to_json(&inst).unwrap();
        let back: Instance = serde_json::from_str(&text).unwrap();
        assert_eq!(back, inst);
        assert_eq!(to_json(&back).unwrap(), text);
        assert!(text.contains("\"certificate\""));
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run(["onep", "bounds", "--d", "x"]), 2);
        assert_eq!(run(["onep", "table", "--which", "9"]), 2);
        assert_eq!(run(["onep", "bounds", "--d", "3", "--n", "2"]), 2);
    }

    #[test]
    fn bound_violation_maps_to_three() {
        let e = Error::BoundViolated { size: 9, bound: "8".into() };
        assert_eq!(exit_code(&e), 3);
        assert_eq!(exit_code(&Error::NoPairing), 1);
    }

    #[test]
    fn verify_all_on_s13() {
        let r = generate(&FamilySpec::new(Family::S13).s(3)).unwrap();
        let rep = verify(&Instance::from_result(&r, None), &[Check::All]).unwrap();
        assert!(rep.passed, "{:?}", rep.violations);
        assert_eq!(rep.checks.len(), 4);
    }
}
