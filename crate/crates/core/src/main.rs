use std::io::{Read, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use qpcollapse::collapse::analyze;
use qpcollapse::ehrhart::ehrhart_report;
use qpcollapse::error::Error;
use qpcollapse::fano::{validate_fano, FanoPolygon};
use qpcollapse::format::{parse_polygon, to_json};
use qpcollapse::geometry::Polygon;
use qpcollapse::markov::{markov_triples, verify_markov};
use qpcollapse::mutation::{mutate, mutation_graph, mutation_neighbors, MutationData, Neighbor};

const EXIT_MALFORMED: u8 = 1;
const EXIT_NOT_FANO: u8 = 2;
const EXIT_BAD_MUTATION: u8 = 3;
const EXIT_INTERNAL: u8 = 4;

/// Ehrhart quasi-polynomials, mutations and quasi-period collapse for Fano
/// polygons. Polygon files hold `{"vertices": [["p/q", "r/s"], ...]}`; use
/// `-` to read standard input.
#[derive(Parser, Debug)]
#[command(name = "qpcollapse", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Predict and measure the quasi-period and denominator of the dual.
    Analyze { file: String },
    /// Print the dual polygon.
    Dual { file: String },
    /// Ehrhart quasi-polynomial and first terms of the series of a polygon.
    Ehrhart {
        file: String,
        /// Number of series terms after the constant one.
        #[arg(long, default_value_t = 10)]
        terms: u64,
        /// Use the dual of the (Fano) input instead of the input itself.
        #[arg(long)]
        dual: bool,
    },
    /// Mutate with covector `w`, factor `conv{0, m f}`.
    Mutate {
        file: String,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_pair)]
        w: [i64; 2],
        #[arg(long, allow_hyphen_values = true, value_parser = parse_pair)]
        f: [i64; 2],
        #[arg(long)]
        m: u64,
        /// Print the exact convex hull instead of the normal form.
        #[arg(long)]
        raw: bool,
    },
    /// All one-step mutations along edges, in normal form.
    Neighbors { file: String },
    /// Breadth-first mutation graph up to the given depth.
    Graph {
        file: String,
        #[arg(long, default_value_t = 2)]
        depth: usize,
    },
    /// Markov triples with largest entry at most `max`, with their reports.
    Markov {
        #[arg(long, default_value_t = 30)]
        max: u64,
    },
}

fn parse_pair(s: &str) -> Result<[i64; 2], String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected a,b but got {s:?}"))?;
    let parse = |t: &str| t.trim().parse::<i64>().map_err(|e| format!("{t:?}: {e}"));
    Ok([parse(a)?, parse(b)?])
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, e: impl std::fmt::Display) -> Self {
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn read_input(file: &str) -> Result<String, Failure> {
    let mut text = String::new();
    let res = if file == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(file).map(|t| text = t)
    };
    res.map_err(|e| Failure::new(EXIT_MALFORMED, format!("{file}: {e}")))?;
    Ok(text)
}

fn load_polygon(file: &str) -> Result<Polygon, Failure> {
    parse_polygon(&read_input(file)?).map_err(|e| Failure::new(EXIT_MALFORMED, e))
}

fn load_fano(file: &str) -> Result<FanoPolygon, Failure> {
    validate_fano(load_polygon(file)?).map_err(|e| Failure::new(EXIT_NOT_FANO, format!("not a Fano polygon: {e}")))
}

fn internal(e: impl Into<Error>) -> Failure {
    Failure::new(EXIT_INTERNAL, e.into())
}

fn run(cli: Cli) -> Result<String, Failure> {
    Ok(match cli.command {
        Command::Analyze { file } => to_json(&analyze(&load_fano(&file)?).map_err(internal)?),
        Command::Dual { file } => to_json(&load_fano(&file)?.dual()),
        Command::Ehrhart { file, terms, dual } => {
            let polygon = if dual {
                load_fano(&file)?.dual()
            } else {
                load_polygon(&file)?
            };
            to_json(&ehrhart_report(&polygon, terms).map_err(internal)?)
        }
        Command::Mutate { file, w, f, m, raw } => {
            let polygon = load_fano(&file)?;
            let bad = |e| Failure::new(EXIT_BAD_MUTATION, format!("invalid mutation data: {e}"));
            let data = MutationData::new(w, f, m).map_err(bad)?;
            let mutant = mutate(&polygon, &data).map_err(bad)?;
            to_json(&if raw { mutant } else { mutant.normal_form() })
        }
        Command::Neighbors { file } => {
            let neighbors: Vec<Neighbor> = mutation_neighbors(&load_fano(&file)?)
                .into_iter()
                .map(|(data, polygon)| Neighbor { data, polygon })
                .collect();
            to_json(&neighbors)
        }
        Command::Graph { file, depth } => to_json(&mutation_graph(&load_fano(&file)?, depth)),
        Command::Markov { max } => {
            let reports = markov_triples(max)
                .iter()
                .map(verify_markov)
                .collect::<Result<Vec<_>, _>>()
                .map_err(internal)?;
            to_json(&reports)
        }
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_MALFORMED)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(out) => {
            // A closed pipe downstream is not our failure.
            let _ = writeln!(std::io::stdout().lock(), "{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
