//! Command-line front end.
//!
//! Exit codes: 0 yes / valid, 1 bound exhausted, 2 proved no / invalid
//! witness, 3 usage or format error, 4 I/O error.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::correspondence::{solve_gpcp_bounded, solve_pcp_bounded, SearchOutcome, SolverLimits};
use crate::error::Error;
use crate::format::{emit_instance, emit_manifest, emit_witness, parse_instance, parse_manifest, parse_witness};
use crate::manifest::Instance;
use crate::reductions::{access_chain_to_gpcp, claus_pipeline, gpcp_chain_to_pcp, strip_stage};
use crate::rewriting::{bounded_reachability, mu_embed, normalize_to_ck, ReachabilityLimits, ReachabilityOutcome};
use crate::witnesses::{check_witness, translate_backward, translate_forward, Witness};

pub const EXIT_YES: i32 = 0;
pub const EXIT_EXHAUSTED: i32 = 1;
pub const EXIT_NO: i32 = 2;
pub const EXIT_USAGE: i32 = 3;
pub const EXIT_IO: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "thue-pcp", version, about = "Semi-Thue accessibility and Post correspondence toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Search for a witness within the given bounds.
    Solve {
        file: PathBuf,
        /// Words or configurations expanded.
        #[arg(long, default_value_t = 10_000)]
        max_steps: usize,
        /// Longest intermediate word (accessibility) or solution
        /// (correspondence), in letters.
        #[arg(long, default_value_t = 256)]
        max_len: usize,
        /// Stored configurations for the correspondence solver.
        #[arg(long, default_value_t = 1_000_000)]
        max_states: usize,
        /// Longest unmatched suffix kept by the correspondence solver.
        #[arg(long, default_value_t = 4096)]
        max_overhang: usize,
    },
    /// Reduce an instance and print the result.
    Reduce {
        file: PathBuf,
        #[arg(long, value_enum)]
        to: Target,
        /// Where to write the reduction manifest.
        #[arg(long)]
        manifest: Option<PathBuf>,
    },
    /// Apply one normalization stage.
    Normalize {
        file: PathBuf,
        #[arg(long, value_enum)]
        stage: Option<NormalStage>,
    },
    /// Check a witness against an instance.
    Check { instance: PathBuf, witness: PathBuf },
    /// Move a witness along a reduction chain.
    Translate {
        witness: PathBuf,
        #[arg(long)]
        manifest: PathBuf,
        #[arg(long, value_enum)]
        direction: Direction,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Target {
    Gpcp,
    Pcp,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum NormalStage {
    EpsFree,
    Ck,
    Strip,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Direction {
    Forward,
    Backward,
}

/// A failed command: exit code plus message for standard error.
struct Failure(i32, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(EXIT_USAGE, e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure(EXIT_IO, format!("{}: {e}", path.display())))
}

fn load_instance(path: &Path) -> Result<Instance, Failure> {
    parse_instance(&read(path)?).map_err(|e| Failure(EXIT_USAGE, format!("{}: {e}", path.display())))
}

fn load_witness(path: &Path) -> Result<Witness, Failure> {
    parse_witness(&read(path)?).map_err(|e| Failure(EXIT_USAGE, format!("{}: {e}", path.display())))
}

fn warn_duplicates(instance: &Instance) {
    if let Instance::Access(a) = instance {
        for (i, j) in a.system.duplicate_rules() {
            eprintln!("warning: rules {i} and {j} are identical");
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_YES };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli.command) {
        Ok(code) => code,
        Err(Failure(code, message)) => {
            eprintln!("error: {message}");
            code
        }
    }
}

fn execute(command: Command) -> Result<i32, Failure> {
    match command {
        Command::Solve {
            file,
            max_steps,
            max_len,
            max_states,
            max_overhang,
        } => {
            let limits = SolverLimits {
                max_overhang,
                max_states,
                max_len,
                max_expanded: max_steps,
            };
            solve(&file, limits)
        }
        Command::Reduce { file, to, manifest } => reduce(&file, to, manifest.as_deref()),
        Command::Normalize { file, stage } => normalize(&file, stage),
        Command::Check { instance, witness } => {
            let instance = load_instance(&instance)?;
            let witness = load_witness(&witness)?;
            match check_witness(&instance, &witness) {
                Ok(()) => {
                    print!("{}", emit_witness(&witness));
                    eprintln!("valid");
                    Ok(EXIT_YES)
                }
                Err(e) => Err(Failure(EXIT_NO, format!("invalid witness: {e}"))),
            }
        }
        Command::Translate {
            witness,
            manifest,
            direction,
        } => {
            let manifest = parse_manifest(&read(&manifest)?)
                .map_err(|e| Failure(EXIT_USAGE, format!("{}: {e}", manifest.display())))?;
            let witness = load_witness(&witness)?;
            let translated = match direction {
                Direction::Forward => translate_forward(&manifest, &witness),
                Direction::Backward => translate_backward(&manifest, &witness),
            };
            match translated {
                Ok(bundle) => {
                    print!("{}", emit_witness(&bundle.witness));
                    Ok(EXIT_YES)
                }
                Err(e @ (Error::Manifest(_) | Error::Parse { .. })) => Err(e.into()),
                Err(e) => Err(Failure(EXIT_NO, format!("translation failed: {e}"))),
            }
        }
    }
}

fn solve(file: &Path, limits: SolverLimits) -> Result<i32, Failure> {
    let instance = load_instance(file)?;
    warn_duplicates(&instance);
    let exhausted = || {
        eprintln!("bound exhausted");
        Ok(EXIT_EXHAUSTED)
    };
    let outcome = match &instance {
        Instance::Access(a) => {
            let limits = ReachabilityLimits {
                max_word_len: limits.max_len,
                max_expanded: limits.max_expanded,
                max_steps: limits.max_expanded,
            };
            return match bounded_reachability(a, limits) {
                ReachabilityOutcome::Reached(trace) => {
                    print!("{}", emit_witness(&Witness::Trace(trace)));
                    Ok(EXIT_YES)
                }
                ReachabilityOutcome::BoundExhausted => exhausted(),
                ReachabilityOutcome::ProvedUnreachable => {
                    eprintln!("target is not reachable");
                    Ok(EXIT_NO)
                }
            };
        }
        Instance::Pcp(p) => solve_pcp_bounded(p, limits),
        Instance::Gpcp(g) => match solve_gpcp_bounded(g, limits) {
            Ok(outcome) => outcome,
            Err(Error::MismatchedStart) => {
                eprintln!("no solution: {}", Error::MismatchedStart);
                return Ok(EXIT_NO);
            }
            Err(e) => return Err(e.into()),
        },
    };
    match outcome {
        SearchOutcome::Found(w) => {
            print!("{}", emit_witness(&Witness::Word(w)));
            Ok(EXIT_YES)
        }
        SearchOutcome::BoundExhausted => exhausted(),
        SearchOutcome::ProvedNoSolution => {
            eprintln!("no solution");
            Ok(EXIT_NO)
        }
    }
}

fn reduce(file: &Path, to: Target, manifest_path: Option<&Path>) -> Result<i32, Failure> {
    let instance = load_instance(file)?;
    warn_duplicates(&instance);
    let (out, manifest) = match (&instance, to) {
        (Instance::Access(a), Target::Gpcp) => {
            let (g, m) = access_chain_to_gpcp(a)?;
            (Instance::Gpcp(g), m)
        }
        (Instance::Access(a), Target::Pcp) => {
            let (p, m) = claus_pipeline(a)?;
            (Instance::Pcp(p), m)
        }
        (Instance::Gpcp(g), Target::Pcp) => {
            let (p, m) = gpcp_chain_to_pcp(g, None)?;
            (Instance::Pcp(p), m)
        }
        (other, _) => {
            return Err(Failure(
                EXIT_USAGE,
                format!("cannot reduce a {} instance to {to:?}", other.kind()),
            ))
        }
    };
    if let Some(path) = manifest_path {
        fs::write(path, emit_manifest(&manifest))
            .map_err(|e| Failure(EXIT_IO, format!("{}: {e}", path.display())))?;
    }
    print!("{}", emit_instance(&out));
    Ok(EXIT_YES)
}

fn normalize(file: &Path, stage: Option<NormalStage>) -> Result<i32, Failure> {
    let instance = load_instance(file)?;
    warn_duplicates(&instance);
    let stage = stage.unwrap_or(match instance {
        Instance::Access(_) => NormalStage::Ck,
        _ => NormalStage::Strip,
    });
    let out = match (&instance, stage) {
        (Instance::Access(a), NormalStage::EpsFree) => Instance::Access(mu_embed(a)?.0),
        (Instance::Access(a), NormalStage::Ck) => Instance::Access(normalize_to_ck(a)?.0),
        (Instance::Gpcp(g), NormalStage::Strip) => Instance::Gpcp(strip_stage(g).0),
        (other, stage) => {
            return Err(Failure(
                EXIT_USAGE,
                format!("stage {stage:?} does not apply to a {} instance", other.kind()),
            ))
        }
    };
    print!("{}", emit_instance(&out));
    Ok(EXIT_YES)
}
