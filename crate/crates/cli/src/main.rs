//! `sbmotive`: motivic decompositions from the command line.

use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use sbmotive::expr::{eval_str, Mode};
use sbmotive::motives::{decompose_with, poincare_grassmannian, DecomposeOptions};
use sbmotive::verify::{run_all, run_case, summary, CaseOutcome};
use sbmotive::{GeometrySpec, GrassRing, ProdRing};

/// Largest algebra degree handled without `--force`.
const MAX_DEGREE: u64 = 32;
/// Largest Grassmannian basis handled without `--force`.
const MAX_BASIS: u64 = 200_000;

const EXIT_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_REFUSED: u8 = 3;

#[derive(Parser)]
#[command(
    name = "sbmotive",
    version,
    about = "Motivic decompositions of generalized Severi-Brauer varieties"
)]
struct Cli {
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true, env = "MOTIVE_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct SpecArgs {
    /// The prime p.
    #[arg(long)]
    p: u32,
    /// deg D = p^n.
    #[arg(long)]
    n: u32,
    /// Y = X(p^m, D).
    #[arg(long)]
    m: u32,
}

#[derive(Subcommand)]
enum Command {
    /// Multiplicities of M(X)(k) in M(Y) and the residual Poincaré polynomial.
    Decompose {
        #[command(flatten)]
        spec: SpecArgs,
        /// Highest shift computed directly (default: ceil(D/2), rest by duality).
        #[arg(long)]
        kmax: Option<u32>,
        #[arg(long)]
        json: bool,
        /// Ignore the resource bound.
        #[arg(long)]
        force: bool,
    },
    /// Evaluate an expression in Ch(G) or Ch(P^d x G).
    Eval {
        #[arg(long, requires_all = ["n", "m"], conflicts_with = "grassmann")]
        p: Option<u32>,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        m: Option<u32>,
        /// Evaluate in Ch(G(k, n)) over F_p.
        #[arg(long, num_args = 3, value_names = ["K", "N", "P"])]
        grassmann: Option<Vec<u32>>,
        #[arg(long)]
        force: bool,
        expression: String,
    },
    /// Run the worked-example corpus.
    Verify {
        #[arg(long)]
        case: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Print the Gaussian binomial [n choose k]_t.
    Poincare {
        k: u32,
        n: u32,
        #[arg(long)]
        json: bool,
    },
}

struct Failure(u8, String);

impl From<sbmotive::Error> for Failure {
    fn from(e: sbmotive::Error) -> Self {
        Failure(EXIT_USAGE, e.to_string())
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k.min(n.saturating_sub(k))).fold(1u64, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

fn check_bound(k: u64, n: u64, force: bool) -> Result<(), Failure> {
    if force {
        return Ok(());
    }
    if n > MAX_DEGREE {
        return Err(Failure(
            EXIT_REFUSED,
            format!("refusing degree {n} > {MAX_DEGREE}; pass --force to override"),
        ));
    }
    let basis = binomial(n, k);
    if basis > MAX_BASIS {
        return Err(Failure(
            EXIT_REFUSED,
            format!("refusing G({k}, {n}): {basis} Schubert classes > {MAX_BASIS}; pass --force to override"),
        ));
    }
    Ok(())
}

fn spec_checked(p: u32, n: u32, m: u32, force: bool) -> Result<GeometrySpec, Failure> {
    let pn = (p as u64).checked_pow(n).unwrap_or(u64::MAX);
    if m < n && sbmotive::gflin::is_prime(p) {
        let pm = (p as u64).pow(m);
        check_bound(pm, pn, force)?;
    }
    Ok(GeometrySpec::new(p, n, m)?)
}

fn decompose(spec: SpecArgs, kmax: Option<u32>, json: bool, force: bool) -> Result<(), Failure> {
    let spec = spec_checked(spec.p, spec.n, spec.m, force)?;
    let start = Instant::now();
    let opts = DecomposeOptions {
        k_max: kmax,
        ..Default::default()
    };
    let rep = decompose_with(&spec, opts)?;
    let elapsed = start.elapsed().as_millis() as u64;
    if json {
        println!(
            "{}",
            serde_json::to_string(&rep.to_json(elapsed)).expect("report serializes")
        );
        return Ok(());
    }
    let a: Vec<String> = rep.multiplicities.iter().map(u32::to_string).collect();
    let d = rep.diagnostics;
    println!(
        "X(1,D) x X({}^{},D), deg D = {}^{}: dim X = {}, dim Y = {}, shifts 0..={}",
        spec.p,
        spec.m,
        spec.p,
        spec.n,
        spec.dim_x(),
        spec.dim_y(),
        spec.shift_range()
    );
    println!("multiplicities: {}", a.join(" "));
    println!("residual: {}", rep.residual);
    println!("residual rank: {}", rep.residual.eval_one());
    println!("computed directly: 0..={}", rep.computed_half);
    println!(
        "diagnostics: nonnegative={} palindromic={} unit_ends={} duality={}",
        d.residual_nonnegative, d.residual_palindromic, d.residual_unit_ends, d.duality_consistent
    );
    Ok(())
}

fn eval(
    spec: Option<(u32, u32, u32)>,
    grassmann: Option<Vec<u32>>,
    force: bool,
    expression: &str,
) -> Result<(), Failure> {
    let mode = match (spec, grassmann) {
        (_, Some(g)) => {
            let (k, n, p) = (g[0], g[1], g[2]);
            check_bound(k as u64, n as u64, force)?;
            Mode::Grassmann(GrassRing::grassmannian(k, n, p)?)
        }
        (Some((p, n, m)), None) => Mode::Product(ProdRing::new(spec_checked(p, n, m, force)?)),
        (None, None) => {
            return Err(Failure(
                EXIT_USAGE,
                "eval needs --p --n --m or --grassmann K N P".into(),
            ))
        }
    };
    println!("{}", eval_str(expression, &mode)?);
    Ok(())
}

fn print_outcome(o: &CaseOutcome) {
    println!(
        "{} {} ({} ms) [{}] {}",
        if o.passed { "PASS" } else { "FAIL" },
        o.id,
        o.elapsed_ms,
        o.source,
        o.detail
    );
}

fn verify(case: Option<String>, json: bool) -> Result<(), Failure> {
    let outcomes = match case {
        Some(id) => vec![run_case(&id)?],
        None => run_all(),
    };
    let counts = summary(&outcomes);
    if json {
        let doc = serde_json::json!({ "cases": outcomes, "summary": counts });
        println!(
            "{}",
            serde_json::to_string(&doc).expect("outcomes serialize")
        );
    } else {
        outcomes.iter().for_each(print_outcome);
        println!("{} passed, {} failed", counts["passed"], counts["failed"]);
    }
    if counts["failed"] > 0 {
        return Err(Failure(EXIT_FAILED, String::new()));
    }
    Ok(())
}

fn poincare(k: u32, n: u32, json: bool) -> Result<(), Failure> {
    if k > n {
        return Err(Failure(
            EXIT_USAGE,
            format!("need k <= n, got k = {k}, n = {n}"),
        ));
    }
    let poly = poincare_grassmannian(k, n)?;
    if json {
        println!(
            "{}",
            serde_json::to_string(&poly).expect("polynomial serializes")
        );
    } else {
        println!("{poly}");
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    if let Some(t) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| Failure(EXIT_USAGE, format!("cannot start {t} threads: {e}")))?;
    }
    match cli.command {
        Command::Decompose {
            spec,
            kmax,
            json,
            force,
        } => decompose(spec, kmax, json, force),
        Command::Eval {
            p,
            n,
            m,
            grassmann,
            force,
            expression,
        } => {
            let spec = p.map(|p| (p, n.unwrap_or(0), m.unwrap_or(0)));
            eval(spec, grassmann, force, &expression)
        }
        Command::Verify { case, json } => verify(case, json),
        Command::Poincare { k, n, json } => poincare(k, n, json),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure(code, msg)) => {
            if !msg.is_empty() {
                eprintln!("error: {msg}");
            }
            ExitCode::from(code)
        }
    }
}
