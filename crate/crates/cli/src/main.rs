use std::fs;
use std::process::ExitCode;

use braidco::algebra::FreeWord;
use braidco::braid::parse_braid;
use braidco::cocycles::{magnus_cocycle, pl_cocycle, reduce_reps, Rep};
use braidco::groupoid::{validate_q, Evaluator, GroupoidWord, DEFAULT_STEP_LIMIT};
use braidco::io::{
    classed_matrix_to_json, int_matrix_to_json, monomial_to_json, parse_classed_matrix, parse_config, parse_int_matrix,
    parse_json, ring_matrix_to_json, string_matrix_to_json,
};
use braidco::monodromy::{act_on_n, cover, theorem_b_s, validate_n, IntersectionMatrix, ParityClass, Rho};
use braidco::reconstruct::{forward_q, reconstruct_n};
use braidco::selftest::run_selftest;
use braidco::{Error, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "braidco", version, about = "Braid cocycles, monodromy characters and intersection matrices")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum RepArg {
    Burau,
    Tym,
    TymFramed,
    Gassner,
    Linking,
}

impl From<RepArg> for Rep {
    fn from(r: RepArg) -> Rep {
        match r {
            RepArg::Burau => Rep::Burau,
            RepArg::Tym => Rep::Tym,
            RepArg::TymFramed => Rep::TymFramed,
            RepArg::Gassner => Rep::Gassner,
            RepArg::Linking => Rep::Linking,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Monomial cocycle of a framed braid word, e.g. "s2 e1' s3^2".
    PlCocycle {
        #[arg(long)]
        m: usize,
        word: String,
    },
    /// Magnus cocycle (Fox derivatives) of a braid word.
    Magnus {
        #[arg(long)]
        m: usize,
        word: String,
    },
    /// Laurent reductions of the cocycles.
    Rep {
        kind: RepArg,
        #[arg(long)]
        m: usize,
        word: String,
    },
    /// Transition matrix S(σ, N) and the transformed matrix σ*N.
    Act {
        #[arg(long)]
        n_class: i64,
        /// JSON file with the intersection matrix.
        #[arg(long)]
        matrix: String,
        word: String,
    },
    /// Character value N ρ_N(g) at a free-group word such as "g1 g2'".
    Character {
        #[arg(long)]
        n_class: i64,
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        g: String,
    },
    /// Evaluates the character of straight-line data on a groupoid word.
    Chi {
        #[arg(long)]
        config: String,
        #[arg(long)]
        q: String,
        /// Comma separated index:exponent pairs, e.g. "1:0,3:2,2:-1".
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        #[arg(long, default_value_t = DEFAULT_STEP_LIMIT)]
        max_steps: u64,
    },
    /// Straight-line data of an intersection matrix over a fan.
    Forward {
        #[arg(long)]
        config: String,
        #[arg(long)]
        matrix: String,
    },
    /// Intersection matrix recovered from straight-line data over a fan.
    Reconstruct {
        #[arg(long)]
        config: String,
        #[arg(long)]
        q: String,
    },
    /// The three-sheeted torus cover: six character values and their identities.
    CoverExample,
    /// Randomized consistency checks at small sizes.
    Selftest {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        rounds: usize,
    },
}

fn read(path: &str) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Parse(format!("cannot read {path}: {e}")))
}

fn parity(k: i64) -> Result<ParityClass> {
    if !(0..4).contains(&k) {
        return Err(Error::Parse(format!("--n-class must be 0..3, got {k}")));
    }
    Ok(ParityClass::new(k))
}

/// Reads a matrix file: a bare array of rows or `{"n_class": k, "matrix": ...}`.
fn read_n(path: &str, p: ParityClass) -> Result<IntersectionMatrix> {
    let text = read(path)?;
    let v = parse_json(&text)?;
    let m = if v.is_array() {
        parse_int_matrix(&v)?
    } else {
        if v.get("n_class").is_some() {
            let (q, _) = parse_classed_matrix(&text)?;
            if q != p {
                return Err(Error::Invalid(format!("file has n_class {q}, command line says {p}")));
            }
        }
        parse_int_matrix(v.get("matrix").ok_or_else(|| Error::Parse(format!("{path}: missing field matrix")))?)?
    };
    validate_n(p, m)
}

fn text_rows(v: &Value) -> Option<String> {
    let rows = v.as_array()?;
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            r.as_array()
                .map(|r| r.iter().map(|x| x.as_str().map(str::to_string).unwrap_or_else(|| x.to_string())).collect())
                .unwrap_or_default()
        })
        .collect();
    let width = cells.iter().flatten().map(|c| c.len()).max().unwrap_or(0);
    Some(
        cells
            .iter()
            .map(|r| r.iter().map(|c| format!("{c:>width$}")).collect::<Vec<_>>().join("  "))
            .collect::<Vec<_>>()
            .join("\n"),
    )
}

fn render(v: &Value, format: Format) -> String {
    match format {
        Format::Json => v.to_string(),
        Format::Text => match v {
            Value::Object(map) => map
                .iter()
                .map(|(k, x)| match text_rows(x).filter(|_| x.as_array().is_some_and(|a| a.iter().all(Value::is_array))) {
                    Some(t) => format!("{k}:\n{t}"),
                    None => format!("{k}: {}", x.as_str().map(str::to_string).unwrap_or_else(|| x.to_string())),
                })
                .collect::<Vec<_>>()
                .join("\n"),
            _ => text_rows(v).unwrap_or_else(|| v.to_string()),
        },
    }
}

/// Runs a command; the flag is false when a self check failed.
fn run(cmd: Command) -> Result<(Value, bool)> {
    let out = match cmd {
        Command::PlCocycle { m, word } => monomial_to_json(&pl_cocycle(&parse_braid(&word, m)?)?),
        Command::Magnus { m, word } => ring_matrix_to_json(&magnus_cocycle(&parse_braid(&word, m)?)?),
        Command::Rep { kind, m, word } => {
            string_matrix_to_json(&reduce_reps(&parse_braid(&word, m)?, kind.into())?.string_rows())
        }
        Command::Act { n_class, matrix, word } => {
            let n = read_n(&matrix, parity(n_class)?)?;
            let sigma = parse_braid(&word, n.size())?;
            let s = theorem_b_s(&sigma, &n)?;
            let moved = act_on_n(&sigma, &n)?;
            json!({ "S": int_matrix_to_json(&s), "action": classed_matrix_to_json(moved.parity(), moved.matrix()) })
        }
        Command::Character { n_class, matrix, g } => {
            let n = read_n(&matrix, parity(n_class)?)?;
            int_matrix_to_json(&Rho::new(&n).character(&FreeWord::parse(&g)?)?)
        }
        Command::Chi { config, q, word, max_steps } => {
            let cfg = parse_config(&read(&config)?)?.admissible()?;
            let (p, qm) = parse_classed_matrix(&read(&q)?)?;
            if p != cfg.parity() {
                return Err(Error::Invalid("Q and configuration have different n_class".into()));
            }
            let q = validate_q(&cfg, qm)?;
            let w = GroupoidWord::parse(&word)?;
            let mut ev = Evaluator::new(&cfg, &q).with_step_limit(max_steps);
            let v = ev.eval(&w)?;
            json!({ "value": v.to_string(), "steps": ev.steps() })
        }
        Command::Forward { config, matrix } => {
            let fan = parse_config(&read(&config)?)?.fan()?;
            let n = read_n(&matrix, fan.parity())?;
            let q = forward_q(&fan, &n)?;
            let mut v = classed_matrix_to_json(q.parity(), q.matrix());
            v["order"] = json!(fan.order().iter().map(|i| i + 1).collect::<Vec<_>>());
            v
        }
        Command::Reconstruct { config, q } => {
            let fan = parse_config(&read(&config)?)?.fan()?;
            let (p, qm) = parse_classed_matrix(&read(&q)?)?;
            if p != fan.parity() {
                return Err(Error::Invalid("Q and configuration have different n_class".into()));
            }
            let q = validate_q(fan.config(), qm)?;
            let n = reconstruct_n(&fan, &q)?;
            let mut v = classed_matrix_to_json(n.parity(), n.matrix());
            v["order"] = json!(fan.order().iter().map(|i| i + 1).collect::<Vec<_>>());
            v
        }
        Command::CoverExample => {
            let mut values = serde_json::Map::new();
            for (name, a) in cover::table() {
                values.insert(name.to_string(), int_matrix_to_json(&a));
            }
            let checks = cover::checks();
            let ok = checks.iter().all(|c| c.1);
            let checks: serde_json::Map<String, Value> = checks.into_iter().map(|(k, b)| (k, json!(b))).collect();
            return Ok((json!({ "values": values, "checks": checks }), ok));
        }
        Command::Selftest { seed, rounds } => {
            let checks = run_selftest(seed, rounds)?;
            let ok = checks.iter().all(|c| c.1);
            let checks: serde_json::Map<String, Value> = checks.into_iter().map(|(k, b)| (k, json!(b))).collect();
            return Ok((Value::Object(checks), ok));
        }
    };
    Ok((out, true))
}

fn print_value(v: &Value, format: Format) {
    match (format, v.get("values")) {
        (Format::Text, Some(Value::Object(values))) => {
            for (k, x) in values {
                println!("N({k}):\n{}", render(x, format));
            }
            if let Some(c) = v.get("checks") {
                println!("{}", render(c, format));
            }
        }
        _ => println!("{}", render(v, format)),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok((v, ok)) => {
            print_value(&v, cli.format);
            if ok {
                ExitCode::SUCCESS
            } else {
                eprintln!("error: self check failed");
                ExitCode::from(2)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_internal() { 2 } else { 1 })
        }
    }
}
