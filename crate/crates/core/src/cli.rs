//! The `gausslink` command line.
//!
//! Exit codes: 0 success, 1 a verification claim failed, 2 usage error,
//! 3 unreadable or malformed input.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::codec::{parse, report_json, serialize};
use crate::diagram::GaussDiagram;
use crate::families::{Family, FamilySpec};
use crate::invariants::report;
use crate::moves::{apply, enumerate_sites, EnumerateOptions, MoveClass, MoveSite};
use crate::par::Execution;
use crate::search::{min_negative_omega2, SearchLimits};
use crate::verify::{run_suite, Claim, VerifySuiteConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "gausslink",
    version,
    about = "Linking invariants and Reidemeister moves on Gauss diagrams"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the invariant report of a two-component diagram.
    Compute {
        /// Gauss code file, or - for stdin.
        input: String,
    },
    /// Print the Gauss code of a family member: `torus N`, `dn N`, `l M N`.
    Generate {
        family: Family,
        /// `n` for torus, torus-prime and dn; `m n` for l and k.
        #[arg(num_args = 1..=2, required = true)]
        params: Vec<usize>,
    },
    /// List or apply move sites.
    Moves {
        #[command(subcommand)]
        action: MovesCommand,
    },
    /// Run the randomized claim checks; one JSON verdict per line.
    Verify(VerifyArgs),
    /// Fewest negative inter-component Ω2 moves from one diagram to another.
    Search(SearchArgs),
}

#[derive(Subcommand, Debug)]
pub enum MovesCommand {
    List {
        input: String,
        /// Cap on crossings after a crossing-increasing move.
        #[arg(long, default_value_t = 12)]
        max_crossings: usize,
        /// Only show these classes (omega1+, omega1-, omega2+, omega2-, omega3).
        #[arg(long, value_delimiter = ',', value_parser = parse_class)]
        classes: Vec<MoveClass>,
    },
    Apply {
        input: String,
        /// Site index as printed by `moves list`.
        #[arg(long)]
        index: usize,
        #[arg(long, default_value_t = 12)]
        max_crossings: usize,
    },
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: u64,
    #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_crossings: u64,
    /// Comma-separated subset of s-invariance, t-behavior, relators, table2,
    /// brackets, codec.
    #[arg(long, value_delimiter = ',')]
    pub claims: Vec<Claim>,
    /// Move classes to exercise.
    #[arg(long, value_delimiter = ',', value_parser = parse_class)]
    pub kinds: Vec<MoveClass>,
    #[arg(long)]
    pub sequential: bool,
}

#[derive(Args, Debug)]
pub struct SearchArgs {
    #[arg(long)]
    pub from: String,
    #[arg(long)]
    pub to: String,
    #[arg(long, default_value_t = 12)]
    pub max_crossings: usize,
    #[arg(long, default_value_t = 1_000_000)]
    pub max_states: usize,
    #[arg(long)]
    pub sequential: bool,
}

fn parse_class(s: &str) -> Result<MoveClass, String> {
    MoveClass::parse(s).ok_or_else(|| format!("unknown move class {s:?}"))
}

fn exec(sequential: bool) -> Execution {
    if sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    }
}

/// A failed command: exit code and message for stderr.
struct Failure(i32, String);

type Outcome = Result<i32, Failure>;

fn read_input(path: &str) -> Result<String, Failure> {
    let text = if path == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure(EXIT_INPUT, format!("reading stdin: {e}")))?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| Failure(EXIT_INPUT, format!("reading {path}: {e}")))?
    };
    Ok(text)
}

fn load(path: &str) -> Result<GaussDiagram, Failure> {
    let text = read_input(path)?;
    parse(text.trim_end()).map_err(|e| Failure(EXIT_INPUT, format!("{path}: {e}")))
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("value serializes")
}

#[derive(Serialize)]
struct ListedSite<'a> {
    index: usize,
    #[serde(rename = "move")]
    description: String,
    site: &'a MoveSite,
}

fn run_command(cmd: Command, out: &mut dyn Write) -> Outcome {
    let mut say = |s: String| writeln!(out, "{s}").map_err(|e| Failure(EXIT_USAGE, e.to_string()));
    match cmd {
        Command::Compute { input } => {
            let g = load(&input)?;
            let r = report(&g).map_err(|e| Failure(EXIT_INPUT, e.to_string()))?;
            say(report_json(&r))?;
        }
        Command::Generate { family, params } => {
            let spec = match (family.is_single(), params.as_slice()) {
                (true, &[n]) => FamilySpec::single(family, n),
                (false, &[m, n]) => FamilySpec { family, m, n },
                (true, _) => {
                    return Err(Failure(
                        EXIT_USAGE,
                        format!("{family} takes one parameter n"),
                    ))
                }
                (false, _) => {
                    return Err(Failure(
                        EXIT_USAGE,
                        format!("{family} takes two parameters m n"),
                    ))
                }
            };
            let g = spec
                .generate()
                .map_err(|e| Failure(EXIT_USAGE, e.to_string()))?;
            say(serialize(&g))?;
        }
        Command::Moves { action } => match action {
            MovesCommand::List {
                input,
                max_crossings,
                classes,
            } => {
                let g = load(&input)?;
                let sites = enumerate_sites(&g, &EnumerateOptions::all(Some(max_crossings)));
                let listed: Vec<ListedSite> = sites
                    .iter()
                    .enumerate()
                    .filter(|(_, s)| classes.is_empty() || classes.contains(&s.class()))
                    .map(|(index, site)| ListedSite {
                        index,
                        description: site.describe(),
                        site,
                    })
                    .collect();
                say(json(&listed))?;
            }
            MovesCommand::Apply {
                input,
                index,
                max_crossings,
            } => {
                let g = load(&input)?;
                let sites = enumerate_sites(&g, &EnumerateOptions::all(Some(max_crossings)));
                let site = sites.get(index).ok_or_else(|| {
                    Failure(
                        EXIT_USAGE,
                        format!("site index {index} out of range ({} sites)", sites.len()),
                    )
                })?;
                let h = apply(&g, site).map_err(|e| Failure(EXIT_INPUT, e.to_string()))?;
                say(serialize(&h))?;
            }
        },
        Command::Verify(a) => {
            let cfg = VerifySuiteConfig {
                seed: a.seed,
                trials: a.trials as usize,
                max_crossings: a.max_crossings as usize,
                kinds: if a.kinds.is_empty() {
                    MoveClass::ALL.into_iter().collect()
                } else {
                    a.kinds.into_iter().collect()
                },
                exec: exec(a.sequential),
            };
            let claims = if a.claims.is_empty() {
                Claim::ALL.to_vec()
            } else {
                a.claims
            };
            let verdicts = run_suite(&cfg, &claims);
            for v in &verdicts {
                say(json(v))?;
            }
            if verdicts.iter().any(|v| !v.pass) {
                return Ok(EXIT_VERIFY_FAILED);
            }
        }
        Command::Search(a) => {
            let from = load(&a.from)?;
            let to = load(&a.to)?;
            let limits = SearchLimits {
                max_crossings: a.max_crossings,
                max_states: a.max_states,
                exec: exec(a.sequential),
            };
            say(json(&min_negative_omega2(&from, &to, limits)))?;
        }
    }
    Ok(EXIT_OK)
}

/// Parses `args` (program name first) and runs the command, writing
/// results to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    match run_command(cli.command, out) {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}
