//! qwhit: evaluate q-Whittaker functions and characters, and run the
//! verification suites from the command line.
//!
//! Exit codes are a stable contract: 0 when everything passed, 1 when a
//! verification check failed or errored, 2 for usage and configuration
//! problems.

mod report;
mod suites;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use qwhittaker::characters::char_gz;
use qwhittaker::lattice::window;
use qwhittaker::whittaker::{psi_direct, psi_tilde};

use report::{emit, OutputFormat};
use suites::{run_suite, Suite, VerifyConfig};

#[derive(Parser)]
#[command(
    name = "qwhit",
    version,
    about = "q-deformed Whittaker functions: values, characters, verification suites"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Whittaker function values
    Whittaker {
        #[command(subcommand)]
        cmd: EvalCmd,
    },
    /// q -> 0 character values
    Char {
        #[command(subcommand)]
        cmd: EvalCmd,
    },
    /// Run a verification suite; exits 0 only if every check passes
    Verify(VerifyArgs),
}

#[derive(Subcommand)]
enum EvalCmd {
    /// Evaluate at one point, or sweep the window when no point is given
    Eval(EvalArgs),
}

#[derive(Args)]
struct EvalArgs {
    /// Number of lattice coordinates
    #[arg(short = 'n', long = "rank")]
    rank: usize,

    /// Comma-separated lattice point, e.g. -p 0,1
    #[arg(short = 'p', long = "point")]
    point: Option<String>,

    /// Per-coordinate sweep window a..b
    #[arg(long, default_value = "-1..3", allow_hyphen_values = true)]
    window: String,

    #[arg(long, value_enum, default_value = "json")]
    format: OutputFormat,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite to run
    #[arg(value_enum)]
    suite: Option<Suite>,

    /// Suite to run (flag form of the positional argument)
    #[arg(long = "suite", value_enum, conflicts_with = "suite")]
    suite_flag: Option<Suite>,

    /// Rank; each suite has its own default
    #[arg(short = 'n', long = "rank")]
    rank: Option<usize>,

    /// Per-coordinate lattice window a..b for swept suites
    #[arg(long, allow_hyphen_values = true)]
    window: Option<String>,

    /// Largest part for the sorted-grid suites
    #[arg(long)]
    max_part: Option<i64>,

    /// Truncation degree for the Cauchy and Macdonald families
    #[arg(long)]
    degree_bound: Option<i64>,

    /// Numeric q for the degeneration suite, strictly inside (0, 1)
    #[arg(short = 'q', long = "q-value", default_value_t = 0.5)]
    q_value: f64,

    /// Comma-separated strictly increasing k list for the degeneration suite
    #[arg(short = 'k', long = "k-list", default_value = "4,8,12")]
    k_list: String,

    /// Seed for the sampled intertwining and adjointness grids
    #[arg(long, default_value_t = 0)]
    seed: u64,

    #[arg(long, value_enum, default_value = "json")]
    format: OutputFormat,
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            2
        }
    };
    std::process::exit(code);
}

fn run(cli: Cli) -> Result<i32, String> {
    match cli.cmd {
        Cmd::Whittaker { cmd: EvalCmd::Eval(args) } => eval_cmd(&args, false),
        Cmd::Char { cmd: EvalCmd::Eval(args) } => eval_cmd(&args, true),
        Cmd::Verify(args) => verify_cmd(args),
    }
}

fn rank_cap() -> Result<usize, String> {
    match std::env::var("QWHIT_MAX_RANK") {
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(v) if v >= 1 => Ok(v),
            _ => Err(format!("QWHIT_MAX_RANK must be a positive integer, got {s:?}")),
        },
        Err(_) => Ok(4),
    }
}

fn check_rank(n: usize, cap: usize) -> Result<(), String> {
    if n == 0 {
        return Err("rank must be at least 1".into());
    }
    if n > cap {
        return Err(format!(
            "rank {n} exceeds the configured maximum {cap} (set QWHIT_MAX_RANK to raise it)"
        ));
    }
    Ok(())
}

fn parse_point(s: &str, n: usize) -> Result<Vec<i64>, String> {
    let p: Result<Vec<i64>, _> = s.split(',').map(|t| t.trim().parse::<i64>()).collect();
    let p = p.map_err(|_| format!("point must be comma-separated integers, got {s:?}"))?;
    if p.len() != n {
        return Err(format!("point has {} coordinates, rank is {n}", p.len()));
    }
    Ok(p)
}

fn parse_window(s: &str) -> Result<(i64, i64), String> {
    let bad = || format!("window must look like a..b with a <= b, got {s:?}");
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let lo: i64 = a.trim().parse().map_err(|_| bad())?;
    let hi: i64 = b.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

fn parse_k_list(s: &str) -> Result<Vec<i64>, String> {
    let k: Result<Vec<i64>, _> = s.split(',').map(|t| t.trim().parse::<i64>()).collect();
    k.map_err(|_| format!("k list must be comma-separated integers, got {s:?}"))
}

// ---------------- eval commands ----------------

fn eval_cmd(args: &EvalArgs, char_mode: bool) -> Result<i32, String> {
    let cap = rank_cap()?;
    check_rank(args.rank, cap)?;
    let n = args.rank;
    let points = match &args.point {
        Some(s) => vec![parse_point(s, n)?],
        None => {
            let (lo, hi) = parse_window(&args.window)?;
            window(n, lo, hi)
        }
    };
    let single = args.point.is_some();

    match args.format {
        OutputFormat::Json => {
            let objs: Vec<Value> = points.iter().map(|p| eval_json(n, p, char_mode)).collect();
            let doc = if single {
                objs.into_iter().next().expect("one point")
            } else {
                Value::Array(objs)
            };
            println!("{}", serde_json::to_string_pretty(&doc).expect("serialize"));
        }
        OutputFormat::Csv => {
            if char_mode {
                println!("rank,p,char");
            } else {
                println!("rank,p,psi,psi_tilde");
            }
            for p in &points {
                let pt = csv_quote(&join_i64(p));
                if char_mode {
                    println!("{n},{pt},{}", csv_quote(&char_gz(p).to_string()));
                } else {
                    println!(
                        "{n},{pt},{},{}",
                        csv_quote(&psi_direct(p).to_string()),
                        csv_quote(&psi_tilde(p).to_string())
                    );
                }
            }
        }
        OutputFormat::Pretty => {
            for p in &points {
                if char_mode {
                    println!("chi({}) = {}", join_i64(p), char_gz(p));
                } else {
                    println!("Psi({}) = {}", join_i64(p), psi_direct(p));
                    println!("Psi~({}) = {}", join_i64(p), psi_tilde(p));
                }
            }
        }
    }
    Ok(0)
}

fn eval_json(n: usize, p: &[i64], char_mode: bool) -> Value {
    if char_mode {
        json!({"rank": n, "p": p, "char": char_gz(p).to_json()})
    } else {
        json!({
            "rank": n,
            "p": p,
            "psi": psi_direct(p).to_json(),
            "psi_tilde": psi_tilde(p).to_json(),
        })
    }
}

fn join_i64(p: &[i64]) -> String {
    p.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

fn csv_quote(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

// ---------------- verify ----------------

fn verify_cmd(args: VerifyArgs) -> Result<i32, String> {
    let suite = args
        .suite
        .or(args.suite_flag)
        .ok_or("a suite is required: qwhit verify <suite> (or --suite <suite>)")?;
    let cap = rank_cap()?;
    if let Some(n) = args.rank {
        check_rank(n, cap)?;
    }
    let cfg = VerifyConfig {
        rank: args.rank,
        cap,
        window: args.window.as_deref().map(parse_window).transpose()?,
        max_part: args.max_part,
        degree_bound: args.degree_bound,
        q_value: args.q_value,
        k_list: parse_k_list(&args.k_list)?,
        seed: args.seed,
    };
    let reports = run_suite(suite, &cfg)?;
    Ok(emit(&reports, args.format))
}
