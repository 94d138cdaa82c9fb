//! Command-line front end.
//!
//! Results go to stdout (or `--output`); failures print a JSON object
//! `{"error": kind, "message": text}` on stderr. Exit codes: 0 success,
//! 1 validation or domain error, 2 usage error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::cohomology::{
    cocycle_space_limited, cohomologous, quandle_homology_limited, Cochain, CochainJson, CoefficientGroup,
    CohomologyError, DEFAULT_BASIS_LIMIT,
};
use crate::coloring::{brute_force_colorings_limited, count_colorings, enumerate_colorings, ColoringError};
use crate::diagram::{parse_any, parse_gauss, parse_pd, Diagram, DiagramError};
use crate::fuzz::{fuzz_invariance, FuzzConfig, DEFAULT_SEED};
use crate::invariants::{
    curve_to_csv, partition_function, state_sum, symmetric_function, temperature_grid, weight_multiset,
    InvariantError, SymmetricKind,
};
use crate::moves::{apply_move, MoveError, MoveSpec};
use crate::quandle::{
    conjugation_quandle, dihedral_quandle, trivial_quandle, FiniteQuandle, GroupViolation, QuandleError, QuandleJson,
};

#[derive(Debug, Parser)]
#[command(name = "knotq", version, about = "Quandle cocycle invariants of knot and link diagrams")]
struct Cli {
    /// Worker threads for coloring and weight evaluation (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Write the result to this file instead of stdout.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check or construct quandles.
    #[command(subcommand)]
    Quandle(QuandleCmd),
    /// Cocycles, homology and cohomology classes.
    #[command(subcommand)]
    Cohomology(CohomologyCmd),
    /// Parse and inspect diagrams.
    #[command(subcommand)]
    Diagram(DiagramCmd),
    /// Count or list colorings.
    Color(ColorArgs),
    /// State-sums, weight multisets, Z(T) and symmetric functions.
    #[command(subcommand)]
    Invariant(InvariantCmd),
    /// Apply or fuzz Reidemeister moves.
    #[command(subcommand)]
    Moves(MovesCmd),
}

#[derive(Debug, Subcommand)]
enum QuandleCmd {
    Verify { file: PathBuf },
    #[command(subcommand)]
    Make(MakeCmd),
}

#[derive(Debug, Subcommand)]
enum MakeCmd {
    Dihedral { n: usize },
    Trivial { n: usize },
    /// Conjugation quandle `a ▷ b = b^-e a b^e` of a group given by its table.
    Conj { group: PathBuf, exp: usize },
}

#[derive(Debug, Subcommand)]
enum CohomologyCmd {
    Cocycles {
        #[arg(long, value_parser = clap::value_parser!(u8).range(2..=3))]
        arity: u8,
        /// `q` for rationals or `zM` for the integers mod M.
        #[arg(long)]
        coeff: String,
        quandle: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BASIS_LIMIT)]
        limit: usize,
    },
    Homology {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..))]
        arity: u8,
        quandle: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BASIS_LIMIT)]
        limit: usize,
    },
    Cohomologous { quandle: PathBuf, c1: PathBuf, c2: PathBuf },
}

#[derive(Debug, Subcommand)]
enum DiagramCmd {
    Validate {
        #[arg(long, conflicts_with = "gauss")]
        pd: bool,
        #[arg(long)]
        gauss: bool,
        file: PathBuf,
    },
    Info { file: PathBuf },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ColorMode {
    Count,
    List,
}

#[derive(Debug, Args)]
struct ColorArgs {
    mode: ColorMode,
    diagram: PathBuf,
    quandle: PathBuf,
    /// Use the exhaustive brute-force enumerator.
    #[arg(long)]
    oracle: bool,
    #[arg(long, default_value_t = crate::coloring::DEFAULT_BRUTE_FORCE_LIMIT)]
    oracle_limit: u128,
}

#[derive(Debug, Args)]
struct InvariantInputs {
    diagram: PathBuf,
    quandle: PathBuf,
    cocycle: PathBuf,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SymKind {
    Power,
    Elementary,
}

#[derive(Debug, Subcommand)]
enum InvariantCmd {
    StateSum(InvariantInputs),
    Multiset(InvariantInputs),
    Zt {
        #[command(flatten)]
        inputs: InvariantInputs,
        #[arg(long)]
        tmin: f64,
        #[arg(long)]
        tmax: f64,
        #[arg(long)]
        steps: usize,
        /// Space temperatures geometrically.
        #[arg(long)]
        log: bool,
        #[arg(long, default_value_t = 1.0)]
        k: f64,
    },
    Symfun {
        #[command(flatten)]
        inputs: InvariantInputs,
        #[arg(long)]
        kind: SymKind,
        #[arg(long)]
        order: usize,
    },
}

#[derive(Debug, Subcommand)]
enum MovesCmd {
    Apply {
        diagram: PathBuf,
        movespec: PathBuf,
    },
    Fuzz {
        diagram: PathBuf,
        quandle: PathBuf,
        cocycle: PathBuf,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 6)]
        depth: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Debug)]
enum CliError {
    Io(PathBuf, String),
    Json(PathBuf, String),
    Quandle(QuandleError),
    Cohomology(CohomologyError),
    Diagram(DiagramError),
    Coloring(ColoringError),
    Invariant(InvariantError),
    Move(MoveError),
    Threads(String),
    FuzzFailed(Value),
}

macro_rules! from_error {
    ($($variant:ident($ty:ty)),*) => {
        $(impl From<$ty> for CliError {
            fn from(e: $ty) -> Self {
                CliError::$variant(e)
            }
        })*
    };
}

from_error!(
    Quandle(QuandleError),
    Cohomology(CohomologyError),
    Diagram(DiagramError),
    Coloring(ColoringError),
    Invariant(InvariantError),
    Move(MoveError)
);

/// Variant name of an error's `Debug` form, e.g. `NotIdempotent`.
fn kind_of(debug: &str) -> String {
    debug.split(|c: char| !c.is_alphanumeric()).next().unwrap_or("Error").to_string()
}

fn quandle_witness(e: &QuandleError) -> Option<Value> {
    match e {
        QuandleError::NotIdempotent(a) | QuandleError::ColumnNotBijective(a) => Some(json!([a])),
        QuandleError::NotSelfDistributive(a, b, c) => Some(json!([a, b, c])),
        QuandleError::NotAGroup(GroupViolation::NoInverse(a)) => Some(json!([a])),
        QuandleError::NotAGroup(GroupViolation::NotAssociative(a, b, c)) => Some(json!([a, b, c])),
        _ => None,
    }
}

impl CliError {
    fn to_json(&self) -> Value {
        let (kind, message, witness) = match self {
            CliError::Io(p, m) => ("IoError".to_string(), format!("{}: {m}", p.display()), None),
            CliError::Json(p, m) => ("ParseError".to_string(), format!("{}: {m}", p.display()), None),
            CliError::Quandle(e) => (kind_of(&format!("{e:?}")), e.to_string(), quandle_witness(e)),
            CliError::Cohomology(e) => (kind_of(&format!("{e:?}")), e.to_string(), None),
            CliError::Diagram(e) => (kind_of(&format!("{e:?}")), e.to_string(), None),
            CliError::Coloring(e) => (kind_of(&format!("{e:?}")), e.to_string(), None),
            CliError::Invariant(InvariantError::NotACocycle(t)) => {
                ("NotACocycle".to_string(), InvariantError::NotACocycle(t.clone()).to_string(), Some(json!(t)))
            }
            CliError::Invariant(e) => (kind_of(&format!("{e:?}")), e.to_string(), None),
            CliError::Move(e) => (kind_of(&format!("{e:?}")), e.to_string(), None),
            CliError::Threads(m) => ("ThreadPool".to_string(), m.clone(), None),
            CliError::FuzzFailed(report) => return json!({ "error": "FuzzFailed", "report": report }),
        };
        let mut v = json!({ "error": kind, "message": message });
        if let Some(w) = witness {
            v["witness"] = w;
        }
        v
    }
}

type CliResult<T> = Result<T, CliError>;

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(path.to_path_buf(), e.to_string()))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> CliResult<T> {
    serde_json::from_str(&read(path)?).map_err(|e| CliError::Json(path.to_path_buf(), e.to_string()))
}

fn load_quandle(path: &Path) -> CliResult<FiniteQuandle> {
    Ok(FiniteQuandle::from_json(read_json::<QuandleJson>(path)?)?)
}

fn load_cochain(path: &Path, q: &FiniteQuandle) -> CliResult<Cochain> {
    Ok(Cochain::from_json(&read_json::<CochainJson>(path)?, q.order())?)
}

fn load_diagram(path: &Path) -> CliResult<Diagram> {
    Ok(parse_any(&read(path)?)?)
}

/// Group table file: either a bare array of rows or an object with `table`.
fn load_group(path: &Path) -> CliResult<Vec<Vec<usize>>> {
    let v: Value = read_json(path)?;
    let table = if v.is_object() { v["table"].clone() } else { v };
    serde_json::from_value(table).map_err(|e| CliError::Json(path.to_path_buf(), e.to_string()))
}

fn pretty(v: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON output");
    s.push('\n');
    s
}

fn diagram_info(d: &Diagram) -> Value {
    let arcs: Vec<Value> = d.arcs().iter().map(|a| json!({ "id": a.id, "edges": a.edges })).collect();
    let faces: Vec<Value> = d.faces().iter().map(|f| json!(f.sides)).collect();
    json!({
        "crossings": d.crossing_count(),
        "edges": d.edge_count(),
        "components": d.components().len(),
        "arcs": arcs,
        "signs": d.signs(),
        "writhe": d.writhe(),
        "faces": faces,
        "presentation": d.fundamental_presentation(),
        "pd": d.to_json(),
        "gauss": d.to_gauss(),
    })
}

fn dispatch(command: Command) -> CliResult<String> {
    match command {
        Command::Quandle(QuandleCmd::Verify { file }) => {
            let q = load_quandle(&file)?;
            Ok(pretty(&json!({ "valid": true, "name": q.name(), "order": q.order() })))
        }
        Command::Quandle(QuandleCmd::Make(kind)) => {
            let q = match kind {
                MakeCmd::Dihedral { n } => {
                    if n == 0 {
                        return Err(QuandleError::Empty.into());
                    }
                    dihedral_quandle(n)
                }
                MakeCmd::Trivial { n } => {
                    if n == 0 {
                        return Err(QuandleError::Empty.into());
                    }
                    trivial_quandle(n)
                }
                MakeCmd::Conj { group, exp } => conjugation_quandle(&load_group(&group)?, exp)?,
            };
            Ok(pretty(&q.to_json()))
        }
        Command::Cohomology(CohomologyCmd::Cocycles { arity, coeff, quandle, limit }) => {
            let q = load_quandle(&quandle)?;
            let coeff = CoefficientGroup::parse(&coeff)?;
            let basis = cocycle_space_limited(&q, arity as usize, coeff, limit)?;
            let out: Vec<CochainJson> = basis.iter().map(Cochain::to_json).collect();
            Ok(pretty(&out))
        }
        Command::Cohomology(CohomologyCmd::Homology { arity, quandle, limit }) => {
            let q = load_quandle(&quandle)?;
            Ok(pretty(&quandle_homology_limited(&q, arity as usize, limit)?.to_json()))
        }
        Command::Cohomology(CohomologyCmd::Cohomologous { quandle, c1, c2 }) => {
            let q = load_quandle(&quandle)?;
            let (a, b) = (load_cochain(&c1, &q)?, load_cochain(&c2, &q)?);
            let r = cohomologous(&q, &a, &b)?;
            let witness = r.witness.as_ref().map(Cochain::to_json);
            Ok(pretty(&json!({ "cohomologous": r.equivalent, "witness": witness })))
        }
        Command::Diagram(DiagramCmd::Validate { pd, gauss, file }) => {
            let text = read(&file)?;
            let d = if gauss {
                parse_gauss(&text)?
            } else if pd {
                parse_pd(&text)?
            } else {
                parse_any(&text)?
            };
            Ok(pretty(&json!({
                "valid": true,
                "crossings": d.crossing_count(),
                "components": d.components().len(),
                "arcs": d.arc_count(),
            })))
        }
        Command::Diagram(DiagramCmd::Info { file }) => Ok(pretty(&diagram_info(&load_diagram(&file)?))),
        Command::Color(args) => {
            let d = load_diagram(&args.diagram)?;
            let q = load_quandle(&args.quandle)?;
            let colorings = if args.oracle {
                Some(brute_force_colorings_limited(&d, &q, args.oracle_limit)?)
            } else {
                None
            };
            match args.mode {
                ColorMode::Count => {
                    let n = match colorings {
                        Some(c) => c.len() as u64,
                        None => count_colorings(&d, &q),
                    };
                    Ok(format!("{n}\n"))
                }
                ColorMode::List => {
                    let all = colorings.unwrap_or_else(|| enumerate_colorings(&d, &q));
                    let mut out = String::new();
                    for c in all {
                        out.push_str(&serde_json::to_string(&c).expect("JSON output"));
                        out.push('\n');
                    }
                    Ok(out)
                }
            }
        }
        Command::Invariant(cmd) => invariant(cmd),
        Command::Moves(MovesCmd::Apply { diagram, movespec }) => {
            let d = load_diagram(&diagram)?;
            let spec: MoveSpec = read_json(&movespec)?;
            let out = apply_move(&d, &spec)?;
            Ok(pretty(&json!({
                "diagram": out.diagram.to_json(),
                "inverse": out.inverse,
                "correspondence": {
                    "edge_source": out.correspondence.edge_source,
                    "arc_map": out.correspondence.arc_map,
                },
            })))
        }
        Command::Moves(MovesCmd::Fuzz { diagram, quandle, cocycle, trials, depth, seed }) => {
            let d = load_diagram(&diagram)?;
            let q = load_quandle(&quandle)?;
            let phi = load_cochain(&cocycle, &q)?;
            let report = fuzz_invariance(&d, &q, &phi, &FuzzConfig { trials, depth, seed })?;
            if report.passed() {
                Ok(pretty(&report.to_json()))
            } else {
                Err(CliError::FuzzFailed(report.to_json()))
            }
        }
    }
}

fn invariant(cmd: InvariantCmd) -> CliResult<String> {
    let load = |i: &InvariantInputs| -> CliResult<(Diagram, FiniteQuandle, Cochain)> {
        let d = load_diagram(&i.diagram)?;
        let q = load_quandle(&i.quandle)?;
        let phi = load_cochain(&i.cocycle, &q)?;
        Ok((d, q, phi))
    };
    match cmd {
        InvariantCmd::StateSum(i) => {
            let (d, q, phi) = load(&i)?;
            Ok(pretty(&state_sum(&d, &q, &phi)?.to_json()))
        }
        InvariantCmd::Multiset(i) => {
            let (d, q, phi) = load(&i)?;
            Ok(pretty(&weight_multiset(&d, &q, &phi)?.multiset_json()))
        }
        InvariantCmd::Zt { inputs, tmin, tmax, steps, log, k } => {
            let grid = temperature_grid(tmin, tmax, steps, log)?;
            let (d, q, phi) = load(&inputs)?;
            let ss = state_sum(&d, &q, &phi)?;
            Ok(curve_to_csv(&partition_function(&ss, &grid, k)?))
        }
        InvariantCmd::Symfun { inputs, kind, order } => {
            let (d, q, phi) = load(&inputs)?;
            let ss = state_sum(&d, &q, &phi)?;
            let kind = match kind {
                SymKind::Power => SymmetricKind::Power,
                SymKind::Elementary => SymmetricKind::Elementary,
            };
            Ok(pretty(&symmetric_function(&ss, kind, order)?.to_json()))
        }
    }
}

fn execute(cli: Cli) -> CliResult<String> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(CliError::Threads("--threads must be at least 1".into()));
        }
        builder = builder.num_threads(n);
    }
    let pool = builder.build().map_err(|e| CliError::Threads(e.to_string()))?;
    pool.install(|| dispatch(cli.command))
}

/// Runs the command line, writing to the given streams; returns the exit code.
pub fn run_with(argv: impl IntoIterator<Item = OsString>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let output = cli.output.clone();
    match execute(cli) {
        Ok(text) => {
            let written = match output {
                Some(path) => std::fs::write(&path, text).map_err(|e| CliError::Io(path, e.to_string())),
                None => out.write_all(text.as_bytes()).map_err(|e| CliError::Io("<stdout>".into(), e.to_string())),
            };
            match written {
                Ok(()) => 0,
                Err(e) => {
                    let _ = writeln!(err, "{}", e.to_json());
                    1
                }
            }
        }
        Err(e) => {
            let _ = writeln!(err, "{}", e.to_json());
            1
        }
    }
}

pub fn run(argv: impl IntoIterator<Item = OsString>) -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}
