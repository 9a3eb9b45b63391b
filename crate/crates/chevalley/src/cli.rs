//! Argument parsing and dispatch. Reports go to stdout (or `--out`) as
//! pretty JSON; diagnostics go to stderr.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::commands;
use crate::error::{CliError, Result};
use crate::format::{group, parse_finite_ring, parse_type, word_from_json, WordJson};
use crate::verify::{self, VerifyOptions, DEFAULT_SEED};

#[derive(Debug, Parser)]
#[command(name = "chevalley", version, about = "Exact computations in Chevalley groups over small rings")]
pub struct Cli {
    /// Seed of the single random generator used by every subcommand.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub rng_seed: u64,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Progress on stderr.
    #[arg(short, long, global = true)]
    pub verbose: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Roots, Cartan matrix and Weyl group data.
    Roots {
        #[arg(long = "type")]
        ty: String,
    },
    /// Structure constants and commutator coefficients.
    Table {
        #[arg(long = "type")]
        ty: String,
    },
    /// Evaluate a word to its adjoint matrix.
    Eval(WordArgs),
    /// Gauss decomposition of a word's value over a prime field.
    Decompose {
        #[command(flatten)]
        word: WordArgs,
        /// `ubw` (u ∈ U, b ∈ B⁻) or `uminus-bw`.
        #[arg(long, default_value = "ubw")]
        orientation: String,
    },
    /// Certified root unipotent in the normal closure of a word's value.
    Extract(WordArgs),
    /// Generic-element construction for simply connected type A.
    GenericCheck {
        #[arg(long = "type", default_value = "A2")]
        ty: String,
        /// Weyl element as comma-separated simple reflections, from 1; empty for e.
        #[arg(long, default_value = "")]
        w: String,
        /// Root coordinates, e.g. `1,0`.
        #[arg(long)]
        alpha: String,
        /// Simple roots of the Levi factor; defaults to the support of alpha.
        #[arg(long)]
        levi: Option<String>,
        #[arg(long, default_value_t = 20)]
        points: usize,
    },
    /// Level of the normal closure of the given seeds.
    Level(SeedArgs),
    /// Sandwich E(R,a) ≤ H ≤ C(R,a) for H the normal closure of the seeds.
    Sandwich(SeedArgs),
    /// The acceptance suite.
    VerifyAll {
        #[arg(long)]
        quick: bool,
        /// Run only these criteria.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
        /// Include wall-clock timings in the report.
        #[arg(long)]
        timings: bool,
    },
}

#[derive(Debug, clap::Args)]
pub struct WordArgs {
    #[arg(long = "type")]
    pub ty: String,
    /// `gf:P`, `mod:N` or a ring JSON object.
    #[arg(long)]
    pub ring: String,
    /// Word JSON: a file path, or the JSON text itself.
    #[arg(long = "in")]
    pub input: String,
}

#[derive(Debug, clap::Args)]
pub struct SeedArgs {
    #[arg(long = "type")]
    pub ty: String,
    #[arg(long)]
    pub ring: String,
    /// Seed word (file or inline JSON); repeatable.
    #[arg(long = "seed", required = true)]
    pub seeds: Vec<String>,
}

fn read_json_arg(s: &str) -> Result<String> {
    let t = s.trim_start();
    if t.starts_with('[') || t.starts_with('{') {
        Ok(s.to_string())
    } else {
        fs::read_to_string(s).map_err(|e| CliError::Usage(format!("cannot read {s}: {e}")))
    }
}

fn parse_word(g: &chevalley_core::Chevalley<chevalley_core::Zmod>, s: &str) -> Result<chevalley_core::GroupWord<u32>> {
    let w: WordJson = serde_json::from_str(&read_json_arg(s)?)?;
    word_from_json(g, &w)
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| p.parse().map_err(|_| CliError::Usage(format!("bad {what} `{s}`"))))
        .collect()
}

/// What a subcommand produced: the report and whether every check passed.
pub struct Outcome {
    pub report: serde_json::Value,
    pub ok: bool,
}

fn done<T: Serialize>(r: &T, ok: bool) -> Result<Outcome> {
    Ok(Outcome { report: serde_json::to_value(r)?, ok })
}

pub fn execute(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Roots { ty } => done(&commands::roots(parse_type(ty)?)?, true),
        Command::Table { ty } => done(&commands::table(parse_type(ty)?)?, true),
        Command::Eval(a) => {
            let g = group(parse_type(&a.ty)?, parse_finite_ring(&a.ring)?)?;
            done(&commands::eval(&g, &parse_word(&g, &a.input)?)?, true)
        }
        Command::Decompose { word, orientation } => {
            let g = group(parse_type(&word.ty)?, parse_finite_ring(&word.ring)?)?;
            let o = commands::parse_orientation(orientation)?;
            let rep = commands::decompose(&g, &parse_word(&g, &word.input)?, o)?;
            let ok = rep.round_trip;
            done(&rep, ok)
        }
        Command::Extract(a) => {
            let g = group(parse_type(&a.ty)?, parse_finite_ring(&a.ring)?)?;
            let rep = commands::extract(&g, &parse_word(&g, &a.input)?)?;
            let ok = rep.certificate_checked;
            done(&rep, ok)
        }
        Command::GenericCheck { ty, w, alpha, levi, points } => {
            let ty = parse_type(ty)?;
            let w: Vec<usize> = parse_list(w, "Weyl word")?;
            let alpha: Vec<i32> = parse_list(alpha, "root")?;
            let levi = levi.as_deref().map(|l| parse_list::<usize>(l, "Levi set")).transpose()?;
            let mut rng = ChaCha8Rng::seed_from_u64(cli.rng_seed);
            let rep = commands::generic_check(ty, &w, &alpha, levi.as_deref(), *points, &mut rng)?;
            let ok = rep.passed;
            done(&rep, ok)
        }
        Command::Level(a) => {
            let g = group(parse_type(&a.ty)?, parse_finite_ring(&a.ring)?)?;
            let seeds = a.seeds.iter().map(|s| parse_word(&g, s)).collect::<Result<Vec<_>>>()?;
            let rep = commands::level(&g, &seeds)?;
            let ok = rep.root_independent;
            done(&rep, ok)
        }
        Command::Sandwich(a) => {
            let g = group(parse_type(&a.ty)?, parse_finite_ring(&a.ring)?)?;
            let seeds = a.seeds.iter().map(|s| parse_word(&g, s)).collect::<Result<Vec<_>>>()?;
            let rep = commands::sandwich(&g, &seeds)?;
            let ok = rep.holds;
            done(&rep, ok)
        }
        Command::VerifyAll { quick, only, timings } => {
            let opts = VerifyOptions { seed: cli.rng_seed, quick: *quick };
            let mut outcomes = if only.is_empty() {
                verify::run_all(&opts)
            } else {
                let mut v = Vec::new();
                for &id in only {
                    v.push(verify::run_one(id, &opts).ok_or_else(|| CliError::Usage(format!("no criterion {id}")))?);
                }
                v
            };
            for o in &mut outcomes {
                if cli.verbose {
                    eprintln!("{}", o.line());
                }
                if !timings {
                    o.elapsed_ms = None;
                }
            }
            let ok = outcomes.iter().all(|o| o.passed);
            let failed: Vec<u8> = outcomes.iter().filter(|o| !o.passed).map(|o| o.id).collect();
            let report = serde_json::json!({
                "seed": cli.rng_seed,
                "quick": quick,
                "passed": ok,
                "failed": failed,
                "criteria": outcomes,
            });
            Ok(Outcome { report, ok })
        }
    }
}

/// Parses, runs and writes; returns the process exit code.
pub fn main_with_args(args: impl IntoIterator<Item = std::ffi::OsString>) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    eprintln!("rng seed: {}", cli.rng_seed);
    match execute(&cli) {
        Ok(out) => {
            let text = serde_json::to_string_pretty(&out.report).expect("serializable") + "\n";
            let written = match &cli.out {
                Some(p) => fs::write(p, &text),
                None => std::io::stdout().write_all(text.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return 2;
            }
            if out.ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            if e.exit_code() == 1 {
                let report = serde_json::json!({ "passed": false, "failures": [e.to_string()] });
                println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
            }
            e.exit_code()
        }
    }
}
