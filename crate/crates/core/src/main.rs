use std::path::Path;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use serde::Serialize;

use artin_mcg::artin::normal_form;
use artin_mcg::harness::{self, Family, Parity};
use artin_mcg::surface::surface_of;
use artin_mcg::{CurveGraph, Error, GraphSpec, PositiveWord};

#[derive(Parser)]
#[command(name = "artin-mcg", version, about = "Artin relations between products of Dehn twists")]
struct Cli {
    /// Emit JSON instead of a text table.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verdict check.
    Check {
        #[command(subcommand)]
        check: Check,
    },
    /// Topological type of the neighbourhood of a tree of curves.
    Surface {
        /// `A4`, `D5`, `I2(3)`, inline JSON, or a path to a JSON file.
        #[arg(long)]
        graph: String,
    },
    /// Left-greedy normal form of a positive word.
    Nf {
        #[arg(long)]
        graph: String,
        /// Space-separated 1-based generator indices, e.g. "1 2 1".
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
}

#[derive(Subcommand)]
enum Check {
    /// Chain a_0..a_k, x = a_0, y = a_1..a_k; period 2k+4.
    Even {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        nmax: Option<usize>,
        /// Run k = 1, where the predicted period is known to fail.
        #[arg(long)]
        allow_degenerate: bool,
    },
    /// Chain a_1..a_k b_1..b_k, x = a_1..a_k, y = b_1..b_k; period 2k+1.
    Odd {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        nmax: Option<usize>,
    },
    /// Dihedral folding of A_{k-1} (period k) or D_k (period 2k-2).
    Fold {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        nmax: Option<usize>,
    },
    /// Even chain with y permuted by every sigma in S_k.
    Conjecture {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        nmax: Option<usize>,
        /// Allow k outside 2..=4.
        #[arg(long)]
        allow_unverified: bool,
    },
    /// (a^3 b)^r = (b a^3)^r in A2 for r = 1, 2, 3.
    Corollary,
    /// Alternating relations against their reduced equations.
    Claims {
        #[arg(long)]
        parity: Parity,
        #[arg(long)]
        k: usize,
    },
}

fn load_spec(text: &str) -> artin_mcg::Result<GraphSpec> {
    let path = Path::new(text);
    if !text.trim_start().starts_with('{') && path.is_file() {
        let content = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{text}: {e}")))?;
        return content.parse();
    }
    text.parse()
}

#[derive(Serialize)]
struct SurfaceOutput {
    graph: String,
    genus: u32,
    boundary: u32,
    chi: i64,
}

#[derive(Serialize)]
struct NfOutput {
    graph: String,
    word: String,
    normal_form: String,
    factors: Vec<Vec<usize>>,
    length: usize,
}

/// Text and JSON forms of a finished report, with its verdict.
struct Outcome {
    text: String,
    json: serde_json::Value,
    passed: bool,
}

fn outcome<T: Serialize>(report: &T, text: String, passed: bool) -> artin_mcg::Result<Outcome> {
    let json = serde_json::to_value(report).map_err(|e| Error::Parse(e.to_string()))?;
    Ok(Outcome { text, json, passed })
}

fn run(command: Command) -> artin_mcg::Result<Outcome> {
    match command {
        Command::Check { check } => match check {
            Check::Even { k, nmax, allow_degenerate } => {
                let t = harness::check_even_chain(k, nmax, allow_degenerate)?;
                outcome(&t, t.render(), t.passed())
            }
            Check::Odd { k, nmax } => {
                let t = harness::check_odd_chain(k, nmax)?;
                outcome(&t, t.render(), t.passed())
            }
            Check::Fold { family, k, nmax } => {
                let r = harness::check_fold(family, k, nmax)?;
                outcome(&r, r.render(), r.passed())
            }
            Check::Conjecture { k, nmax, allow_unverified } => {
                let r = harness::check_conjecture(k, nmax, allow_unverified)?;
                outcome(&r, r.render(), r.passed())
            }
            Check::Corollary => {
                let r = harness::check_corollary()?;
                outcome(&r, r.render(), r.passed())
            }
            Check::Claims { parity, k } => {
                let r = harness::check_claims(parity, k, None)?;
                outcome(&r, r.render(), r.passed())
            }
        },
        Command::Surface { graph } => {
            let g = load_spec(&graph)?.build()?;
            let s = surface_of(&CurveGraph::from_coxeter(&g)?)?;
            let out = SurfaceOutput { graph: g.to_string(), genus: s.genus, boundary: s.boundary, chi: s.chi };
            outcome(&out, format!("{}: {s}\n", g), true)
        }
        Command::Nf { graph, word } => {
            let g = Arc::new(load_spec(&graph)?.build()?);
            let w = PositiveWord::parse(&g, &word)?;
            let nf = normal_form(&w)?;
            let out = NfOutput {
                graph: g.to_string(),
                word: w.to_string(),
                normal_form: nf.to_string(),
                factors: nf.factor_words(),
                length: w.len(),
            };
            outcome(&out, format!("{nf}\n"), true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&out.json).expect("JSON value serializes"));
            } else {
                print!("{}", out.text);
            }
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
