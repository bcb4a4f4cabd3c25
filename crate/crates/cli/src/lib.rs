//! Command-line surface of `infopat`. `run_cli` does all the work so that
//! tests can drive it without spawning a process.

use std::ffi::OsString;
use std::fmt::Display;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};

use infopat_core::analysis::{check_feasible, is_essential};
use infopat_core::design::{
    bisect_feedback, design_condition_a_sparsest, design_condition_b_sparsest,
    design_feasible_essential, enumerate_essential_family, split_cycle, DesignError, SplitVariant,
};
use infopat_core::graph::Digraph;
use infopat_core::io::{
    essentiality_value, feasibility_value, load_pattern, load_system, pattern_to_string, to_dot,
    IoError, Report,
};
use infopat_core::system::{
    build_closed_loop_digraph, build_state_digraph, InformationPattern, ModelError,
    StructuralPattern, StructuralSystem,
};
use infopat_core::validation::{
    cross_validate, enumerate_feasible, essential_bruteforce, solve_decomposition_via_patterns,
    sparsest_bruteforce, Criterion, NumericError, ValidationError, DEFAULT_DECOMPOSITION_CAP,
    DEFAULT_ENUMERATION_CAP, DEFAULT_TOLERANCE, DEFAULT_TRIALS,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_FILE: i32 = 3;
pub const EXIT_CAP: i32 = 4;
pub const EXIT_INVALID: i32 = 5;
pub const EXIT_INTERNAL: i32 = 70;

#[derive(Parser, Debug)]
#[command(
    name = "infopat",
    version,
    about = "Structural fixed-mode analysis of information patterns"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct SystemArgs {
    /// System document (TOML)
    #[arg(long)]
    system: PathBuf,
    /// Pattern document; defaults to `k_nonzeros` in the system document
    #[arg(long)]
    pattern: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct PlantArgs {
    /// System document (TOML); B and C must be identities
    #[arg(long)]
    system: PathBuf,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Feasibility verdict with witnesses for both conditions
    Check(SystemArgs),
    /// Essentiality verdict with per-entry evidence
    Essential(SystemArgs),
    /// Sparsest pattern meeting the component condition
    DesignA(PlantArgs),
    /// Sparsest pattern meeting the cycle-cover condition
    DesignB(PlantArgs),
    /// Essential feasible pattern from both designs
    Design(PlantArgs),
    /// Rewrite a pattern by bisection or cycle splitting
    Transform {
        #[command(subcommand)]
        kind: TransformKind,
    },
    /// Essential patterns reachable from an essential seed
    Enumerate {
        #[command(flatten)]
        io: SystemArgs,
        #[arg(long, default_value_t = 1)]
        depth: usize,
    },
    /// Exhaustive reference computations
    Oracle {
        #[command(subcommand)]
        kind: OracleKind,
    },
    /// Compare the structural verdict with a seeded numeric estimate
    Validate {
        #[command(flatten)]
        io: SystemArgs,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tol: f64,
    },
    /// Graphviz rendering of the closed-loop (or open-loop) digraph
    Export {
        #[command(flatten)]
        io: SystemArgs,
        /// Render the system without feedback
        #[arg(long)]
        open_loop: bool,
        /// Write here instead of standard output
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum TransformKind {
    /// Replace link (i, j) by (i', j) and (i, j')
    Bisect {
        #[command(flatten)]
        io: SystemArgs,
        /// Link to remove, as `input,output`
        #[arg(long, value_parser = parse_pair)]
        entry: (usize, usize),
        /// `i',j'` sharing a component of the state digraph
        #[arg(long, value_parser = parse_pair)]
        target: (usize, usize),
    },
    /// Split the feedback cycle through the listed states after position `at`
    Split {
        #[command(flatten)]
        io: SystemArgs,
        /// States along the cycle, e.g. `1,2,3,4`
        #[arg(long, value_delimiter = ',', required = true, value_parser = parse_index)]
        cycle: Vec<usize>,
        #[arg(long)]
        at: usize,
        /// Add (i_{l+1}, i_l) instead of (i_{l+1}, i_k)
        #[arg(long)]
        as_stated: bool,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CriterionArg {
    Feasible,
    ConditionA,
    ConditionB,
}

impl From<CriterionArg> for Criterion {
    fn from(c: CriterionArg) -> Self {
        match c {
            CriterionArg::Feasible => Criterion::Feasible,
            CriterionArg::ConditionA => Criterion::ConditionA,
            CriterionArg::ConditionB => Criterion::ConditionB,
        }
    }
}

#[derive(Subcommand, Debug)]
enum OracleKind {
    /// Smallest patterns meeting a criterion
    Sparsest {
        #[arg(long)]
        system: PathBuf,
        #[arg(long, value_enum, default_value = "feasible")]
        criterion: CriterionArg,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        max_enum: usize,
    },
    /// All minimal feasible patterns
    Essential {
        #[arg(long)]
        system: PathBuf,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        max_enum: usize,
    },
    /// Every feasible sub-pattern of a bound (default: all entries)
    Feasible {
        #[arg(long)]
        system: PathBuf,
        #[arg(long)]
        pattern: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        max_enum: usize,
    },
    /// Two-block source-to-sink partition of a DAG
    Decompose {
        /// DAG document: `vertices = n`, `arcs = [[from, to], ...]`
        #[arg(long)]
        dag: PathBuf,
        #[arg(long, default_value_t = DEFAULT_DECOMPOSITION_CAP)]
        max_enum: usize,
    },
}

fn parse_index(s: &str) -> Result<usize, String> {
    match s.trim().parse::<usize>() {
        Ok(0) => Err("indices are 1-based".into()),
        Ok(v) => Ok(v - 1),
        Err(e) => Err(e.to_string()),
    }
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected `row,col`, got `{s}`"))?;
    Ok((parse_index(a)?, parse_index(b)?))
}

/// Error message plus the exit code it maps to.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn new(code: i32, message: impl Display) -> Self {
        Self {
            code,
            message: message.to_string(),
        }
    }
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        let code = match e {
            IoError::Model(_) => EXIT_INVALID,
            _ => EXIT_FILE,
        };
        Failure::new(code, e)
    }
}

impl From<ModelError> for Failure {
    fn from(e: ModelError) -> Self {
        Failure::new(EXIT_INVALID, e)
    }
}

impl From<DesignError> for Failure {
    fn from(e: DesignError) -> Self {
        let code = match e {
            DesignError::Internal(_) => EXIT_INTERNAL,
            _ => EXIT_INVALID,
        };
        Failure::new(code, e)
    }
}

impl From<ValidationError> for Failure {
    fn from(e: ValidationError) -> Self {
        let code = match e {
            ValidationError::CapExceeded { .. } => EXIT_CAP,
            _ => EXIT_INVALID,
        };
        Failure::new(code, e)
    }
}

impl From<NumericError> for Failure {
    fn from(e: NumericError) -> Self {
        let code = match e {
            NumericError::EigenFailure => EXIT_INTERNAL,
            _ => EXIT_INVALID,
        };
        Failure::new(code, e)
    }
}

fn load_with_pattern(args: &SystemArgs) -> Result<(StructuralSystem, InformationPattern), Failure> {
    let (sys, embedded) = load_system(&args.system)?;
    let k = match &args.pattern {
        Some(path) => load_pattern(path)?,
        None => embedded.ok_or_else(|| {
            Failure::new(
                EXIT_INVALID,
                "no pattern: pass --pattern or add k_nonzeros to the system document",
            )
        })?,
    };
    sys.check_pattern(&k)?;
    Ok((sys, k))
}

fn load_plant(path: &Path) -> Result<StructuralPattern, Failure> {
    let (sys, _) = load_system(path)?;
    if !sys.has_identity_io() {
        return Err(DesignError::RequiresIdentityIo.into());
    }
    Ok(sys.a().clone())
}

fn entries(k: &InformationPattern) -> Vec<[usize; 2]> {
    k.one_based()
}

fn patterns_value(list: &[InformationPattern]) -> Vec<Vec<[usize; 2]>> {
    list.iter().map(entries).collect()
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DagDocument {
    vertices: usize,
    #[serde(default)]
    arcs: Vec<[usize; 2]>,
}

fn load_dag(path: &Path) -> Result<Digraph, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::new(EXIT_FILE, format!("{}: {e}", path.display())))?;
    let doc: DagDocument = toml::from_str(&text)
        .map_err(|e| Failure::new(EXIT_FILE, format!("malformed document: {e}")))?;
    let mut arcs = Vec::with_capacity(doc.arcs.len());
    for [from, to] in doc.arcs {
        if from == 0 || to == 0 || from > doc.vertices || to > doc.vertices {
            return Err(Failure::new(
                EXIT_FILE,
                format!("arc [{from}, {to}] outside 1..={}", doc.vertices),
            ));
        }
        arcs.push((from - 1, to - 1));
    }
    Digraph::new(doc.vertices, arcs).map_err(|e| Failure::new(EXIT_INVALID, e))
}

fn report(command: &str, result: Value) -> String {
    Report::new(command, result).to_json()
}

fn execute(cli: Cli) -> Result<String, Failure> {
    match cli.command {
        Command::Check(io) => {
            let (sys, k) = load_with_pattern(&io)?;
            let closed = build_closed_loop_digraph(&sys, &k)?;
            let mut v = feasibility_value(&closed, &check_feasible(&sys, &k)?);
            v["pattern"] = json!(entries(&k));
            Ok(report("check", v))
        }
        Command::Essential(io) => {
            let (sys, k) = load_with_pattern(&io)?;
            let mut v = essentiality_value(&is_essential(&sys, &k)?);
            v["pattern"] = json!(entries(&k));
            Ok(report("essential", v))
        }
        Command::DesignA(p) => Ok(pattern_to_string(&design_condition_a_sparsest(
            &load_plant(&p.system)?,
        )?)),
        Command::DesignB(p) => Ok(pattern_to_string(&design_condition_b_sparsest(
            &load_plant(&p.system)?,
        )?)),
        Command::Design(p) => Ok(pattern_to_string(&design_feasible_essential(&load_plant(
            &p.system,
        )?)?)),
        Command::Transform { kind } => match kind {
            TransformKind::Bisect { io, entry, target } => {
                let (sys, k) = load_with_pattern(&io)?;
                Ok(pattern_to_string(&bisect_feedback(
                    &sys, &k, entry, target,
                )?))
            }
            TransformKind::Split {
                io,
                cycle,
                at,
                as_stated,
            } => {
                let (sys, k) = load_with_pattern(&io)?;
                let variant = if as_stated {
                    SplitVariant::Literal
                } else {
                    SplitVariant::CycleClosing
                };
                Ok(pattern_to_string(&split_cycle(
                    &sys, &k, &cycle, at, variant,
                )?))
            }
        },
        Command::Enumerate { io, depth } => {
            let (sys, k) = load_with_pattern(&io)?;
            let family = enumerate_essential_family(&sys, &k, depth)?;
            Ok(report(
                "enumerate",
                json!({ "depth": depth, "seed": entries(&k), "patterns": patterns_value(&family) }),
            ))
        }
        Command::Oracle { kind } => match kind {
            OracleKind::Sparsest {
                system,
                criterion,
                max_enum,
            } => {
                let (sys, _) = load_system(&system)?;
                let found = sparsest_bruteforce(&sys, criterion.into(), max_enum)?;
                Ok(report(
                    "oracle sparsest",
                    json!({
                        "criterion": Criterion::from(criterion),
                        "count": found.as_ref().map(|s| s.count),
                        "patterns": found.map(|s| patterns_value(&s.patterns)).unwrap_or_default(),
                    }),
                ))
            }
            OracleKind::Essential { system, max_enum } => {
                let (sys, _) = load_system(&system)?;
                let found = essential_bruteforce(&sys, max_enum)?;
                Ok(report(
                    "oracle essential",
                    json!({ "patterns": patterns_value(&found) }),
                ))
            }
            OracleKind::Feasible {
                system,
                pattern,
                max_enum,
            } => {
                let (sys, _) = load_system(&system)?;
                let bound = match pattern {
                    Some(path) => load_pattern(path)?,
                    None => StructuralPattern::full(sys.p(), sys.m()).into(),
                };
                let found = enumerate_feasible(&sys, &bound, max_enum)?;
                Ok(report(
                    "oracle feasible",
                    json!({ "bound": entries(&bound), "patterns": patterns_value(&found) }),
                ))
            }
            OracleKind::Decompose { dag, max_enum } => {
                let g = load_dag(&dag)?;
                let found = solve_decomposition_via_patterns(&g, max_enum)?;
                let one = |v: &[usize]| v.iter().map(|x| x + 1).collect::<Vec<_>>();
                let v = match found {
                    Some(s) => json!({
                        "exists": true,
                        "gamma1": one(&s.partition.gamma1),
                        "gamma2": one(&s.partition.gamma2),
                        "pattern": entries(&s.pattern),
                    }),
                    None => json!({ "exists": false }),
                };
                Ok(report("oracle decompose", v))
            }
        },
        Command::Validate {
            io,
            seed,
            trials,
            tol,
        } => {
            let (sys, k) = load_with_pattern(&io)?;
            let cv = cross_validate(&sys, &k, trials, tol, seed)?;
            let mut v = serde_json::to_value(&cv).expect("report values serialize");
            v["pattern"] = json!(entries(&k));
            Ok(report("validate", v))
        }
        Command::Export {
            io,
            open_loop,
            output,
        } => {
            let dot = if open_loop {
                let (sys, _) = load_system(&io.system)?;
                to_dot(&build_state_digraph(&sys))
            } else {
                let (sys, k) = load_with_pattern(&io)?;
                to_dot(&build_closed_loop_digraph(&sys, &k)?)
            };
            match output {
                Some(path) => {
                    std::fs::write(&path, dot)
                        .map_err(|e| Failure::new(EXIT_FILE, format!("{}: {e}", path.display())))?;
                    Ok(String::new())
                }
                None => Ok(dot),
            }
        }
    }
}

/// Parses `argv` (program name first), runs the command, and returns the
/// process exit code. Results go to `out`, diagnostics to `err`.
pub fn run_cli<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(cli) {
        Ok(text) => match out.write_all(text.as_bytes()) {
            Ok(()) => EXIT_OK,
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                EXIT_FILE
            }
        },
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
