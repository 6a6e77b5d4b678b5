//! Command-line front end.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::builder::random_diagram;
use crate::certificate::CrossingChangeCertificate;
use crate::diagram::{Diagram, KnotFile};
use crate::engine::{Certificate, Fact, KnowledgeBase, DEFAULT_BOUND};
use crate::error::{Error, Result};
use crate::families::{generate, Clasp, FamilySpec};
use crate::invariants::{alexander_polynomial, signature, InvariantReport};
use crate::moves::DEFAULT_R3_BUDGET;
use crate::regression;
use crate::seifert::{seifert_circles, SeifertMatrix};
use crate::tower::CassonTower;

pub const DEFAULT_SEED: u64 = 0x5eed_c0de;
pub const SEED_ENV: &str = "CONCORDANCE_LAB_SEED";

#[derive(Debug, Parser)]
#[command(
    name = "concordance-lab",
    version,
    about = "Knot concordance invariants, Casson towers and filtration deduction"
)]
pub struct Cli {
    /// Output format
    #[arg(long, value_enum, global = true, default_value_t = Format::Human)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Seifert matrix, Alexander polynomial, signatures, Arf, Fox-Milnor
    Invariants {
        #[arg(long)]
        knot: PathBuf,
        /// Use this Seifert matrix instead of the one computed from the diagram
        #[arg(long)]
        seifert: Option<PathBuf>,
        /// Levine-Tristram sample points, as rationals q in (0, 1)
        #[arg(long, value_delimiter = ',')]
        lt: Vec<String>,
    },
    /// Write a family member's diagram and Seifert matrix
    Generate {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long, allow_hyphen_values = true)]
        n: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        clasp: Option<String>,
        /// Companion name recorded for Whitehead doubles
        #[arg(long)]
        companion: Option<String>,
        /// Pretzel parameters p,q,r
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        params: Vec<i64>,
        /// Atlas knot name
        #[arg(long)]
        name: Option<String>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Casson tower utilities
    Tower {
        #[command(subcommand)]
        action: TowerAction,
    },
    /// Membership verdicts for one knot across the filtration lattice
    Deduce {
        #[arg(long)]
        knot: PathBuf,
        /// Extra facts: a JSON list of {knot, set, polarity, justification}
        #[arg(long)]
        facts: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_BOUND, value_parser = clap::value_parser!(u32).range(2..))]
        bound: u32,
        /// Print derivation chains
        #[arg(long)]
        trace: bool,
        /// Also use the open conjectures; affected verdicts are marked
        #[arg(long)]
        conjectures: bool,
    },
    /// Run the worked-example regression table
    Regression,
    /// Randomized consistency checks on generated diagrams
    Selftest {
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 100)]
        count: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Twist,
    WhiteheadDouble,
    Pretzel,
    Atlas,
}

#[derive(Debug, Subcommand)]
pub enum TowerAction {
    /// Convert a Casson tower to the grope it contains
    Convert {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Blow up the base kinks and report the positivity certificate
    Certify {
        #[arg(long = "in")]
        input: PathBuf,
    },
}

/// Seifert matrix on disk, optionally named.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixFile {
    #[serde(default)]
    pub name: String,
    pub genus: usize,
    pub rows: Vec<Vec<i64>>,
}

/// A knot read from disk: a diagram file or a bare Seifert matrix file.
pub struct LoadedKnot {
    pub name: String,
    pub diagram: Option<Diagram>,
    pub matrix: SeifertMatrix,
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

pub fn load_knot(path: &Path) -> Result<LoadedKnot> {
    parse_knot(&fs::read_to_string(path)?, &path.display().to_string())
}

/// Parse a diagram file or a matrix file; `fallback` names an unnamed matrix.
pub fn parse_knot(text: &str, fallback: &str) -> Result<LoadedKnot> {
    let v: serde_json::Value = serde_json::from_str(text)?;
    if v.get("pd").is_some() {
        let k: KnotFile = serde_json::from_value(v)?;
        let d = k.diagram()?;
        let matrix = SeifertMatrix::from_diagram(&d)?;
        Ok(LoadedKnot { name: k.name, diagram: Some(d), matrix })
    } else {
        let m: MatrixFile = serde_json::from_value(v)?;
        let name = if m.name.is_empty() { fallback.to_string() } else { m.name };
        Ok(LoadedKnot { name, diagram: None, matrix: SeifertMatrix::from_record(m.genus, m.rows)? })
    }
}

/// Feed everything computable about `k` into `kb`: crossing-change
/// certificates of either sign (at most two switches) and the classical
/// obstructions.
pub fn register_knot(kb: &mut KnowledgeBase, k: &LoadedKnot) -> Result<()> {
    if let Some(d) = &k.diagram {
        if d.crossing_count() == 0 {
            kb.register_slice(&k.name, "crossingless diagram")?;
        }
        for s in [1, -1] {
            if let Some(c) = CrossingChangeCertificate::search_signed(d, Some(s), 2, DEFAULT_R3_BUDGET) {
                kb.register_certificate(&k.name, &Certificate::CrossingChange { certificate: c })?;
            }
        }
    }
    kb.register_invariants(&k.name, &k.matrix)?;
    Ok(())
}

fn parse_q(s: &str) -> Result<BigRational> {
    let bad = || Error::Usage(format!("cannot parse {s:?} as a rational"));
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let (a, b): (i64, i64) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
            if b == 0 {
                return Err(bad());
            }
            Ok(BigRational::new(a.into(), b.into()))
        }
        None => {
            if let Ok(a) = s.parse::<i64>() {
                return Ok(BigRational::from_integer(a.into()));
            }
            let x: f64 = s.parse().map_err(|_| bad())?;
            BigRational::from_float(x).ok_or_else(bad)
        }
    }
}

fn emit<T: Serialize>(format: Format, value: &T, human: impl FnOnce() -> String) -> Result<String> {
    Ok(match format {
        Format::Human => human(),
        Format::Json => serde_json::to_string_pretty(value)? + "\n",
    })
}

/// Output text and exit status of one invocation.
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, code: 0 }
    }
}

pub fn seed_from_env(flag: Option<u64>) -> u64 {
    flag.or_else(|| std::env::var(SEED_ENV).ok().and_then(|s| s.parse().ok())).unwrap_or(DEFAULT_SEED)
}

pub fn run(cli: Cli) -> Result<Outcome> {
    let fmt = cli.format;
    match cli.command {
        Command::Invariants { knot, seifert, lt } => {
            let k = load_knot(&knot)?;
            let matrix = match seifert {
                Some(p) => {
                    let m: MatrixFile = read_json(&p)?;
                    SeifertMatrix::from_record(m.genus, m.rows)?
                }
                None => k.matrix.clone(),
            };
            let qs = lt.iter().map(|s| parse_q(s)).collect::<Result<Vec<_>>>()?;
            let mut r = InvariantReport::compute(&k.name, &matrix, &qs)?;
            if let Some(d) = &k.diagram {
                r.crossings = Some(d.crossing_count());
                r.writhe = Some(d.writhe());
                r.seifert_circles = Some(seifert_circles(d).len());
            }
            Ok(Outcome::ok(emit(fmt, &r, || r.render())?))
        }
        Command::Generate { family, n, clasp, companion, params, name, out } => {
            let need_n = || n.ok_or_else(|| Error::Usage("--n is required for this family".into()));
            let need_clasp = || -> Result<Clasp> {
                clasp.as_deref().ok_or_else(|| Error::Usage("--clasp is required for this family".into()))?.parse()
            };
            let spec = match family {
                FamilyArg::Twist => FamilySpec::Twist { n: need_n()?, clasp: need_clasp()? },
                FamilyArg::WhiteheadDouble => FamilySpec::WhiteheadDouble {
                    n: need_n()?,
                    clasp: need_clasp()?,
                    companion: companion.unwrap_or_else(|| "K".into()),
                },
                FamilyArg::Pretzel => match params[..] {
                    [p, q, r] => FamilySpec::Pretzel { p, q, r },
                    _ => return Err(Error::Usage("--params needs exactly three integers p,q,r".into())),
                },
                FamilyArg::Atlas => {
                    FamilySpec::Atlas { name: name.ok_or_else(|| Error::Usage("--name is required for atlas".into()))? }
                }
            };
            let g = generate(&spec)?;
            let knot_name = spec.name();
            let mfile = MatrixFile { name: knot_name.clone(), genus: g.matrix.genus, rows: g.matrix.rows.clone() };
            let mut written = vec![];
            match &g.diagram {
                Some(d) => {
                    fs::write(&out, serde_json::to_string_pretty(&KnotFile::new(&knot_name, d))? + "\n")?;
                    written.push(out.clone());
                    let mpath = out.with_extension("seifert.json");
                    fs::write(&mpath, serde_json::to_string_pretty(&mfile)? + "\n")?;
                    written.push(mpath);
                }
                None => {
                    fs::write(&out, serde_json::to_string_pretty(&mfile)? + "\n")?;
                    written.push(out.clone());
                }
            }
            let files: Vec<String> = written.iter().map(|p| p.display().to_string()).collect();
            let summary = serde_json::json!({ "knot": knot_name, "spec": spec, "files": files });
            Ok(Outcome::ok(emit(fmt, &summary, || files.iter().map(|f| format!("wrote {f}\n")).collect::<String>())?))
        }
        Command::Tower { action } => match action {
            TowerAction::Convert { input } => {
                let t: CassonTower = read_json(&input)?;
                let g = t.to_grope()?;
                Ok(Outcome::ok(emit(fmt, &g, || {
                    let mut s = String::from("stage  surfaces  genera\n");
                    for k in 1..=g.height() {
                        let genera: Vec<String> = g.stage(k).iter().map(|x| x.genus.to_string()).collect();
                        s.push_str(&format!("{k:>5}  {:>8}  {}\n", genera.len(), genera.join(" ")));
                    }
                    s
                })?))
            }
            TowerAction::Certify { input } => {
                let t: CassonTower = read_json(&input)?;
                let c = t.blow_up_certificate()?;
                Ok(Outcome::ok(emit(fmt, &c, || {
                    let target = if c.sign == Clasp::Plus { "P" } else { "N" };
                    format!(
                        "sign {}\nblow-ups {}\ngenerator genera {:?}\nmember of {target}_{}\n",
                        c.sign, c.b2, c.generator_genera, c.asserted_level
                    )
                })?))
            }
        },
        Command::Deduce { knot, facts, bound, trace, conjectures } => {
            let k = load_knot(&knot)?;
            let mut kb = KnowledgeBase::new(bound, conjectures);
            register_knot(&mut kb, &k)?;
            if let Some(p) = facts {
                let list: Vec<Fact> = read_json(&p)?;
                for f in list {
                    kb.add_fact(f)?;
                }
            }
            let d = kb.deduce(&k.name)?;
            Ok(Outcome::ok(emit(fmt, &d, || d.render(trace))?))
        }
        Command::Regression => {
            let checks = regression::checks();
            let code = if checks.iter().all(|c| c.passed) { 0 } else { 1 };
            Ok(Outcome { stdout: emit(fmt, &checks, || regression::render(&checks))?, code })
        }
        Command::Selftest { seed, count } => {
            let seed = seed_from_env(seed);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut failures = vec![];
            for i in 0..count {
                let d = random_diagram(&mut rng, 10);
                if let Err(e) = selftest_one(&d) {
                    failures.push(format!("case {i}: {e} (pd {:?})", d.pd_i64()));
                }
            }
            let summary = serde_json::json!({ "seed": seed, "count": count, "failures": failures });
            let code = if failures.is_empty() { 0 } else { 1 };
            let stdout = emit(fmt, &summary, || {
                let mut s = format!("seed {seed}: {} of {count} diagrams consistent\n", count - failures.len());
                for f in &failures {
                    s.push_str(&format!("  {f}\n"));
                }
                s
            })?;
            Ok(Outcome { stdout, code })
        }
    }
}

fn selftest_one(d: &Diagram) -> std::result::Result<(), String> {
    let v = SeifertMatrix::from_diagram(d).map_err(|e| e.to_string())?;
    let delta = alexander_polynomial(&v);
    if !delta.is_symmetric() || delta.at_one() != 1.into() {
        return Err(format!("Alexander polynomial {delta} is not normalized"));
    }
    let (sig, _) = signature(&v);
    if sig % 2 != 0 {
        return Err(format!("odd signature {sig}"));
    }
    let m = SeifertMatrix::from_diagram(&d.mirror()).map_err(|e| e.to_string())?;
    if signature(&m).0 != -sig {
        return Err("mirror does not negate the signature".into());
    }
    Ok(())
}

/// Parse arguments and run; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(cli) {
        Ok(o) => {
            print!("{}", o.stdout);
            o.code
        }
        Err(e @ Error::Engine(crate::error::EngineError::Contradiction { .. })) => {
            eprintln!("error: {e}");
            2
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}
