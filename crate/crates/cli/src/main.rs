use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use fns_core::connection::{parse_metric_document, schouten_with_metric_defect};
use fns_core::cotangent::{graded_poisson_1, h_map, hamiltonian, horizontal_representative, pullback, Membership};
use fns_core::calculus::{exterior_d, fn_bracket, schouten};
use fns_core::verifier::{self, emit_report, parse_field, CaseConfig, Env, Format, Report};
use fns_core::{rat, Chart};

#[derive(Parser)]
#[command(name = "fns", version, about = "Exact graded tensor calculus on polynomial charts")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an expression and print its canonical form.
    Eval {
        expr: String,
        /// File of `name = expr` bindings.
        #[arg(long)]
        env: Option<PathBuf>,
        /// Base dimension; inferred from the largest coordinate index if absent.
        #[arg(long)]
        chart: Option<usize>,
        /// Metric document; sets the chart and the connection used by nabla, dg, dgp, Dop, LN, NB.
        #[arg(long)]
        metric: Option<PathBuf>,
    },
    /// Run one identity suite, or `all`.
    Verify(VerifyArgs),
    #[command(subcommand)]
    Demo(Demo),
    /// List the suite catalog.
    List,
}

#[derive(Args)]
struct VerifyArgs {
    suite: String,
    #[arg(long, default_value_t = 3)]
    dim: usize,
    #[arg(long, default_value_t = 2)]
    deg: u32,
    #[arg(long, default_value_t = 2)]
    form: usize,
    #[arg(long, default_value_t = 2)]
    sym: usize,
    #[arg(long, default_value_t = 25)]
    cases: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Write the JSON report(s) here.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Only print the summary line of each suite.
    #[arg(long, short)]
    quiet: bool,
}

#[derive(Subcommand)]
enum Demo {
    /// The bracket of two cotangent lifts that leaves the image of h.
    Counterexample,
    /// Killing defect D S = ½[g̲,S] of a symmetric tensor.
    Killing {
        #[arg(long)]
        metric: PathBuf,
        #[arg(long)]
        tensor: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Eval { expr, env, chart, metric } => eval(&expr, env, chart, metric),
        Command::Verify(args) => verify(args),
        Command::Demo(Demo::Counterexample) => counterexample(),
        Command::Demo(Demo::Killing { metric, tensor }) => killing(&metric, &tensor),
        Command::List => {
            for (id, statement) in verifier::catalog() {
                println!("{id:<18} {statement}");
            }
            Ok(true)
        }
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// Largest index `n` in tokens like `x3`, `dp2`, `v1`.
fn infer_dim(texts: &[&str]) -> usize {
    let mut best = 1;
    for text in texts {
        let chars: Vec<char> = text.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            if chars[i].is_ascii_alphabetic() {
                while i < chars.len() && chars[i].is_ascii_alphabetic() {
                    i += 1;
                }
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                if let Ok(n) = chars[start..i].iter().collect::<String>().parse::<usize>() {
                    best = best.max(n);
                }
            } else {
                i += 1;
            }
        }
    }
    best
}

fn eval(expr: &str, env_file: Option<PathBuf>, chart: Option<usize>, metric: Option<PathBuf>) -> Result<bool> {
    let bindings = match &env_file {
        Some(p) => fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?,
        None => String::new(),
    };
    let mut env = match metric {
        Some(p) => {
            let doc = fs::read_to_string(&p).with_context(|| format!("reading {}", p.display()))?;
            Env::with_connection(parse_metric_document(&doc)?)
        }
        None => {
            let dim = chart.unwrap_or_else(|| infer_dim(&[expr, &bindings]));
            if dim == 0 {
                bail!("chart dimension must be positive");
            }
            Env::new(&Chart::euclidean(dim))
        }
    };
    env.load_bindings(&bindings)?;
    println!("{}", env.eval_str(expr)?);
    Ok(true)
}

fn verify(args: VerifyArgs) -> Result<bool> {
    let cfg = CaseConfig {
        dim: args.dim,
        deg: args.deg,
        form: args.form,
        sym: args.sym,
        cases: args.cases,
        seed: args.seed,
    };
    let reports: Vec<Report> = if args.suite.eq_ignore_ascii_case("all") {
        verifier::run_all(&cfg)?
    } else {
        vec![verifier::run_identity_suite(&args.suite, &cfg)?]
    };
    for r in &reports {
        let text = emit_report(r, Format::Text);
        if args.quiet {
            print!("{}", text.lines().next().unwrap_or_default());
            println!();
        } else {
            print!("{text}");
        }
    }
    let failed: Vec<&str> = reports.iter().filter(|r| !r.passed).map(|r| r.suite.as_str()).collect();
    if reports.len() > 1 {
        println!(
            "{} of {} suites met their expectation{}",
            reports.len() - failed.len(),
            reports.len(),
            if failed.is_empty() { String::new() } else { format!("; failing: {}", failed.join(", ")) }
        );
    }
    if let Some(path) = args.json {
        let doc = if reports.len() == 1 {
            serde_json::to_string_pretty(&reports[0])?
        } else {
            serde_json::to_string_pretty(&reports)?
        };
        fs::write(&path, doc).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(failed.is_empty())
}

fn counterexample() -> Result<bool> {
    let base = Chart::euclidean(2);
    let cot = Chart::cotangent(&base);
    let a = parse_field(&base, "dx1 | v1")?;
    let b = parse_field(&base, "v1.v2")?;
    println!("A = {a}");
    println!("B = {b}");
    let (pa, pb) = (pullback(&cot, &a)?, pullback(&cot, &b)?);
    println!("π*A = {pa}");
    println!("π*B = {pb}");
    let chi = graded_poisson_1(&pa, &pb)?;
    let dchi = exterior_d(&chi)?;
    println!("{{π*A, π*B}}¹ = {chi}");
    println!("d{{π*A, π*B}}¹ = {dchi}");
    let lhs = fn_bracket(&h_map(&cot, &a)?, &h_map(&cot, &b)?)?;
    let agrees = lhs == hamiltonian(&chi)?;
    println!("[hA, hB] = {lhs}");
    println!("[hA, hB] = H{{π*A, π*B}}¹: {agrees}");
    let membership = horizontal_representative(&chi, a.sym_degree() + b.sym_degree() - 1)?;
    let obstructed = match &membership {
        Membership::Image(rep) => {
            println!("in the image of h, representative {rep}");
            false
        }
        Membership::Obstructed(o) => {
            println!("candidate (1/l) i_I dχ = {}", o.candidate);
            println!("obstruction: {:?}", o.kind);
            println!("[hA, hB] is not in the image of h");
            true
        }
    };
    let expected = chi == parse_field(&cot, "p2 * dp1")? && dchi == parse_field(&cot, "-dp1^dp2")?;
    Ok(agrees && obstructed && expected)
}

fn killing(metric: &PathBuf, tensor: &str) -> Result<bool> {
    let doc = fs::read_to_string(metric).with_context(|| format!("reading {}", metric.display()))?;
    let conn = parse_metric_document(&doc)?;
    let chart = conn.chart().clone();
    let s = parse_field(&chart, tensor)?;
    if s.form_degree() != 0 {
        bail!("the tensor must be a symmetric multivector field (form degree 0)");
    }
    let g = conn.metric().context("the metric document has no metric")?;
    let defect = schouten_with_metric_defect(&conn, &s)?;
    let half = schouten(&g.contravariant_field(), &s)?.scale(&rat(1, 2));
    println!("S = {s}");
    println!("D S = {defect}");
    println!("D S = ½[g̲, S]: {}", defect == half);
    println!("{}", if defect.is_zero() { "S is a Killing tensor" } else { "S is not a Killing tensor" });
    Ok(defect == half)
}
