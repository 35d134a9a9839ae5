//! Command-line front end. `run` is the whole program minus process exit,
//! so tests can drive it with in-memory streams.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::complex::f_h_vectors;
use crate::constructions::{named_by_str, parse_sizes, phi_matroid, theta_matroid};
use crate::error::{Error, Result};
use crate::linalg::{AnyMatrix, FieldTag};
use crate::matroid::io::{from_json, graph_from_edge_list, to_json};
use crate::matroid::Matroid;
use crate::nbc::{
    decomposition_check, lsop, matroid_hash, nbc_check, search_orderings, CheckOptions, Policy, SearchOptions, Shard,
};
use crate::ordering::{Ordering, StandardOrdering, StandardOrderings};
use crate::poly::{BasisPath, MonomialOrder};
use crate::signing::fundamental_matrices;
use crate::verify::{run_criterion, VerifyOptions};

/// Environment variable read for the default worker count.
pub const WORKERS_ENV: &str = "MATROIDLAB_WORKERS";

#[derive(Parser, Debug)]
#[command(name = "matroidlab", version, about = "NBC bases of broken circuit complexes of regular matroids")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Size, rank and counts of a matroid.
    Info(InputArgs),
    /// f- and h-vector of the broken circuit complex.
    Hvector {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        ordering: Option<String>,
    },
    /// The l.s.o.p. of a standard ordering.
    Lsop {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        ordering: Option<String>,
        #[arg(long, default_value = "gf2")]
        field: FieldTag,
        /// Print the fundamental circuit and cocircuit matrices instead.
        #[arg(long)]
        matrices: bool,
    },
    /// NBC basis checks and searches.
    #[command(subcommand)]
    Nbc(NbcCommand),
    /// Generate fixtures as matroid JSON.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Reproduction suite.
    #[command(subcommand)]
    Verify(VerifyCommand),
}

#[derive(Args, Debug)]
struct InputArgs {
    /// Matroid JSON, matrix text or edge list; stdin when absent.
    #[arg(long, short)]
    input: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum NbcCommand {
    /// Decide whether L(M) is a basis for one standard ordering.
    Check {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        ordering: Option<String>,
        #[arg(long, default_value = "gf2")]
        field: FieldTag,
        /// Term order of the Gröbner path.
        #[arg(long, default_value = "grlex")]
        order: MonomialOrder,
        #[arg(long, default_value = "both")]
        path: BasisPath,
        /// Skip the l.s.o.p. validation.
        #[arg(long)]
        no_validate: bool,
        #[arg(long)]
        timing: bool,
    },
    /// Check the deletion/contraction split of L(M).
    Split {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        ordering: Option<String>,
    },
    /// Search standard orderings for an NBC basis.
    Search {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value = "gf2")]
        field: FieldTag,
        #[arg(long, default_value = "exhaustive")]
        policy: Policy,
        /// Worker threads; defaults to MATROIDLAB_WORKERS, then the core count.
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long, default_value = "0/1")]
        shard: Shard,
        /// Checkpoint file to continue from (and keep writing).
        #[arg(long, value_name = "STATE")]
        resume: Option<PathBuf>,
        /// Checkpoint file to write without reading it first.
        #[arg(long, value_name = "STATE", conflicts_with = "resume")]
        checkpoint: Option<PathBuf>,
        /// Stop after this many orderings.
        #[arg(long)]
        limit: Option<u64>,
        #[arg(long)]
        timing: bool,
    },
}

#[derive(Subcommand, Debug)]
enum GenCommand {
    /// Single-basepoint parallel connection of circuits, e.g. `3,3,4`.
    Theta {
        sizes: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Chain parallel connection of circuits.
    Phi {
        sizes: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// R10, DualK33, K33 or K4.
    Named {
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum VerifyCommand {
    /// Run the acceptance criteria.
    Paper {
        /// Comma-separated criterion numbers; all when absent.
        #[arg(long)]
        only: Option<String>,
        #[arg(long, default_value_t = 10_000)]
        r10_sample: u64,
        #[arg(long, default_value_t = 1)]
        r10_seed: u64,
        /// Also run every R10 ordering (long).
        #[arg(long)]
        r10_exhaustive: bool,
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// Emit JSON instead of one line per criterion.
        #[arg(long)]
        json: bool,
    },
}

/// What a command produced: the text to print and the exit code.
struct Output {
    text: String,
    code: i32,
}

fn json<T: Serialize>(v: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

/// Reads a matroid and its embedded ordering, if any.
fn load(input: &InputArgs, stdin: &mut dyn Read) -> Result<(Matroid, Option<Vec<String>>)> {
    let text = match &input.input {
        Some(p) => std::fs::read_to_string(p).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?,
        None => {
            let mut s = String::new();
            stdin.read_to_string(&mut s)?;
            s
        }
    };
    parse_matroid(&text)
}

/// JSON document, matrix text (`rows cols field` header) or edge list.
pub fn parse_matroid(text: &str) -> Result<(Matroid, Option<Vec<String>>)> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        return from_json(trimmed);
    }
    let first = trimmed.lines().find(|l| !l.trim().is_empty() && !l.trim().starts_with('#'));
    let header = first.map(|l| l.split_whitespace().collect::<Vec<_>>()).unwrap_or_default();
    if header.len() == 3 && header[0].parse::<usize>().is_ok() && header[2].parse::<FieldTag>().is_ok() {
        let m: AnyMatrix = trimmed.parse()?;
        return Ok((Matroid::from_matrix(m)?, None));
    }
    Ok((graph_from_edge_list(text)?, None))
}

/// The explicit ordering, else the embedded one, else the first standard ordering.
fn pick_ordering(m: &Matroid, flag: Option<&str>, embedded: Option<Vec<String>>) -> Result<StandardOrdering> {
    match (flag, embedded) {
        (Some(s), _) => StandardOrdering::new(m, Ordering::parse(m, s)?),
        (None, Some(labels)) => StandardOrdering::from_labels(m, &labels),
        (None, None) => StandardOrderings::new(m)?.decode(0),
    }
}

fn workers(flag: Option<usize>) -> usize {
    flag.or_else(|| std::env::var(WORKERS_ENV).ok().and_then(|s| s.parse().ok()))
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
        .max(1)
}

#[derive(Serialize)]
struct Info {
    labels: Vec<String>,
    n: usize,
    rank: usize,
    bases: usize,
    circuits: usize,
    cocircuits: usize,
    components: usize,
    standard_orderings: u64,
    hash: String,
}

fn write_out(text: &str, out: &Option<PathBuf>) -> Result<String> {
    match out {
        Some(p) => {
            std::fs::write(p, text)?;
            Ok(String::new())
        }
        None => Ok(text.to_string()),
    }
}

fn execute(cli: Cli, stdin: &mut dyn Read) -> Result<Output> {
    let ok = |text: String| Ok(Output { text, code: 0 });
    match cli.command {
        Command::Info(input) => {
            let (m, _) = load(&input, stdin)?;
            ok(json(&Info {
                labels: m.labels().to_vec(),
                n: m.n(),
                rank: m.rank(),
                bases: m.bases()?.len(),
                circuits: m.circuits()?.len(),
                cocircuits: m.cocircuits()?.len(),
                components: m.connected_components()?.len(),
                standard_orderings: StandardOrderings::new(&m)?.count(),
                hash: matroid_hash(&m),
            })?)
        }
        Command::Hvector { input, ordering } => {
            let (m, embedded) = load(&input, stdin)?;
            let ord = match (ordering, embedded) {
                (Some(s), _) => Ordering::parse(&m, &s)?,
                (None, Some(l)) => Ordering::from_labels(&m, &l)?,
                (None, None) => Ordering::identity(m.n()),
            };
            ok(json(&f_h_vectors(&m, &ord)?)?)
        }
        Command::Lsop {
            input,
            ordering,
            field,
            matrices,
        } => {
            let (m, embedded) = load(&input, stdin)?;
            let so = pick_ordering(&m, ordering.as_deref(), embedded)?;
            if matrices {
                let (c, cc) = fundamental_matrices(&m, &so, field)?;
                ok(format!("{}{}", c.to_matrix(&m)?, cc.to_matrix(&m)?))
            } else {
                ok(json(&lsop(&m, &so, field)?)?)
            }
        }
        Command::Nbc(NbcCommand::Check {
            input,
            ordering,
            field,
            order,
            path,
            no_validate,
            timing,
        }) => {
            let (m, embedded) = load(&input, stdin)?;
            let so = pick_ordering(&m, ordering.as_deref(), embedded)?;
            let opts = CheckOptions {
                path,
                order,
                validate_theta: !no_validate,
                timing,
            };
            let r = nbc_check(&m, &so, field, &opts)?;
            Ok(Output {
                code: if r.is_basis() { 0 } else { 1 },
                text: json(&r)?,
            })
        }
        Command::Nbc(NbcCommand::Split { input, ordering }) => {
            let (m, embedded) = load(&input, stdin)?;
            let so = pick_ordering(&m, ordering.as_deref(), embedded)?;
            let r = decomposition_check(&m, &so)?;
            Ok(Output {
                code: if r.holds { 0 } else { 1 },
                text: json(&r)?,
            })
        }
        Command::Nbc(NbcCommand::Search {
            input,
            field,
            policy,
            workers: w,
            shard,
            resume,
            checkpoint,
            limit,
            timing,
        }) => {
            let (m, _) = load(&input, stdin)?;
            let opts = SearchOptions {
                workers: workers(w),
                shard,
                resume: resume.is_some(),
                checkpoint: resume.or(checkpoint),
                limit,
                timing,
            };
            let r = search_orderings(&m, field, policy, &opts)?;
            Ok(Output {
                code: if r.tallies.basis > 0 { 0 } else { 1 },
                text: json(&r)?,
            })
        }
        Command::Gen(g) => {
            let (m, so, out) = match g {
                GenCommand::Theta { sizes, out } => {
                    let (m, so) = theta_matroid(&parse_sizes(&sizes)?)?;
                    (m, Some(so), out)
                }
                GenCommand::Phi { sizes, out } => {
                    let (m, so) = phi_matroid(&parse_sizes(&sizes)?)?;
                    (m, Some(so), out)
                }
                GenCommand::Named { name, out } => {
                    let (m, so) = named_by_str(&name)?;
                    (m, so, out)
                }
            };
            let labels: Option<Vec<String>> =
                so.map(|so| so.ordering().labels(&m).into_iter().map(String::from).collect());
            ok(write_out(&(to_json(&m, labels.as_deref()) + "\n"), &out)?)
        }
        Command::Verify(VerifyCommand::Paper {
            only,
            r10_sample,
            r10_seed,
            r10_exhaustive,
            workers: w,
            checkpoint,
            json: as_json,
        }) => {
            let ids: Vec<u8> = match only {
                Some(s) => s
                    .split(',')
                    .map(|x| match x.trim().parse::<u8>() {
                        Ok(i @ 1..=9) => Ok(i),
                        _ => Err(Error::Parse(format!("bad criterion `{x}`"))),
                    })
                    .collect::<Result<_>>()?,
                None => (1..=9).collect(),
            };
            let opts = VerifyOptions {
                r10_sample,
                r10_seed,
                r10_exhaustive,
                workers: workers(w),
                checkpoint,
                ..VerifyOptions::default()
            };
            let outcomes: Vec<_> = ids.iter().map(|&i| run_criterion(i, &opts)).collect();
            let code = if outcomes.iter().all(|o| o.pass) { 0 } else { 1 };
            let text = if as_json {
                json(&outcomes)?
            } else {
                outcomes
                    .iter()
                    .map(|o| {
                        format!(
                            "criterion {}: {} ({}) {}\n",
                            o.id,
                            if o.pass { "PASS" } else { "FAIL" },
                            o.title,
                            o.detail
                        )
                    })
                    .collect()
            };
            Ok(Output { text, code })
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code: 0 success or basis found, 1 no basis or failed check, 2 error.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                stdout.write_all(text.as_bytes())
            } else {
                stderr.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(cli, stdin) {
        Ok(out) => {
            if stdout.write_all(out.text.as_bytes()).is_err() {
                return 2;
            }
            out.code
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            2
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str], stdin: &str) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut argv = vec!["matroidlab"];
        argv.extend_from_slice(args);
        let code = run(argv, &mut stdin.as_bytes(), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn gen_pipes_into_check() {
        let (code, doc, _) = run_str(&["gen", "theta", "2,3"], "");
        assert_eq!(code, 0);
        let (code, report, _) = run_str(&["nbc", "check"], &doc);
        assert_eq!(code, 0, "{report}");
        assert!(report.contains("\"verdict\": \"basis\""));
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run_str(&["frobnicate"], "").0, 2);
        assert_eq!(run_str(&["gen", "named", "Fano"], "").0, 2);
        assert_eq!(run_str(&["nbc", "search", "--policy", "sometimes"], "").0, 2);
        assert_eq!(run_str(&["--help"], "").0, 0);
    }

    #[test]
    fn input_formats() {
        let (m, _) = parse_matroid("2 3 gf2\n1 0 1\n0 1 1\n").unwrap();
        assert_eq!((m.n(), m.rank()), (3, 2));
        let (g, _) = parse_matroid("a b\nb c\nc a\n").unwrap();
        assert!(g.same_bases(&m).unwrap());
    }
}
