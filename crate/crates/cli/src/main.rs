use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use simulroot::fixtures::{reproduce, COMPARED_DIGITS};
use simulroot::ingest::{
    parse_expression, parse_problem, parse_trace_json, render_theorem_report, render_trace, TraceFormat,
    TABLE_DECIMALS,
};
use simulroot::solver::{
    canonical_angles, empirical_order_above, precision_floor, solve, EstimateVector, Method,
    MultiplicityProfile, SolveConfig, StopReason,
};
use simulroot::theory::{check_theorem1, check_theorem2, check_theorem3, max_separation, min_separation};
use simulroot::{Family, PrecisionConfig, Real};

const EXIT_OK: u8 = 0;
const EXIT_USAGE: u8 = 1;
const EXIT_NOT_CONVERGED: u8 = 2;
const EXIT_CHECK_FAILED: u8 = 3;

#[derive(Parser)]
#[command(name = "simulroot", version, about = "Simultaneous roots of algebraic, trigonometric and exponential polynomials")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the iteration and print the trace.
    Solve(SolveArgs),
    /// Check the convergence-theorem hypotheses for given constants.
    Verify(VerifyArgs),
    /// Estimate the convergence order from a JSON trace.
    Order(OrderArgs),
    /// Rerun a built-in example and diff it against its published table.
    Reproduce(ReproduceArgs),
}

#[derive(Args)]
struct SolveArgs {
    /// Problem file (JSON).
    #[arg(long, conflicts_with_all = ["expr", "init", "mults"])]
    input: Option<PathBuf>,
    /// Factored expression, e.g. "(x+2)^2*(x-1)".
    #[arg(long, requires = "init")]
    expr: Option<String>,
    /// Initial estimates, comma-separated.
    #[arg(long, allow_hyphen_values = true)]
    init: Option<String>,
    /// Multiplicities, comma-separated (default: the expression's powers).
    #[arg(long)]
    mults: Option<String>,
    #[arg(long)]
    digits: Option<u32>,
    #[arg(long)]
    max_iters: Option<usize>,
    #[arg(long, default_value = "table")]
    format: String,
    #[arg(long)]
    method: Option<String>,
    /// Decimals per entry in table output.
    #[arg(long, default_value_t = TABLE_DECIMALS)]
    decimals: usize,
    /// Report trigonometric roots in [-pi, pi).
    #[arg(long)]
    canonical_angles: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    theorem: u8,
    /// True roots, comma-separated; gives d (and the maximum separation).
    #[arg(long, allow_hyphen_values = true)]
    roots: Option<String>,
    #[arg(long)]
    d: Option<String>,
    #[arg(long)]
    max_sep: Option<String>,
    #[arg(long)]
    mults: String,
    #[arg(long)]
    c: String,
    #[arg(long)]
    q: String,
    #[arg(long)]
    xi: Option<String>,
    #[arg(long)]
    digits: Option<u32>,
    #[arg(long, default_value = "table")]
    format: String,
}

#[derive(Args)]
struct OrderArgs {
    /// Trace written by `solve --format json`.
    #[arg(long)]
    input: PathBuf,
    #[arg(long, allow_hyphen_values = true)]
    true_roots: String,
}

#[derive(Args)]
struct ReproduceArgs {
    #[arg(long)]
    table: u8,
    #[arg(long)]
    digits: Option<u32>,
}

/// A failure with its exit status.
struct Failure {
    code: u8,
    message: String,
}

fn usage(message: impl std::fmt::Display) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.to_string(),
    }
}

type Outcome = Result<(String, u8), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { EXIT_OK });
        }
    };
    let result = match cli.command {
        Command::Solve(a) => cmd_solve(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Order(a) => cmd_order(a),
        Command::Reproduce(a) => cmd_reproduce(a),
    };
    match result {
        Ok((out, code)) => {
            print!("{out}");
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

/// `--digits`, else `SIMULROOT_DIGITS`, else the default.
fn fallback_digits() -> Result<u32, Failure> {
    match std::env::var("SIMULROOT_DIGITS") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| usage(format!("SIMULROOT_DIGITS={v:?} is not an integer"))),
        Err(_) => Ok(PrecisionConfig::DEFAULT_DIGITS),
    }
}

fn precision(flag: Option<u32>) -> Result<PrecisionConfig, Failure> {
    let digits = match flag {
        Some(d) => d,
        None => fallback_digits()?,
    };
    PrecisionConfig::with_digits(digits).map_err(usage)
}

fn csv_reals(text: &str, what: &str, cfg: &PrecisionConfig) -> Result<Vec<Real>, Failure> {
    text.split(',')
        .map(|s| Real::parse(s.trim(), *cfg).map_err(|e| usage(format!("--{what}: {e}"))))
        .collect()
}

fn csv_mults(text: &str) -> Result<Vec<u32>, Failure> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<u32>()
                .map_err(|_| usage(format!("--mults: {s:?} is not a positive integer")))
        })
        .collect()
}

fn real(text: &str, what: &str, cfg: &PrecisionConfig) -> Result<Real, Failure> {
    Real::parse(text.trim(), *cfg).map_err(|e| usage(format!("--{what}: {e}")))
}

fn cmd_solve(a: SolveArgs) -> Outcome {
    let format: TraceFormat = a.format.parse().map_err(usage)?;
    let (poly, profile, init, mut cfg, fixed_run, roots) = if let Some(path) = &a.input {
        let bytes = std::fs::read(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
        let fallback = fallback_digits()?;
        let spec = parse_problem::<Real>(&bytes, a.digits, fallback).map_err(usage)?;
        let roots = spec.known_roots().map(|r| r.to_vec());
        (
            spec.polynomial(),
            spec.profile.clone(),
            spec.init.clone(),
            spec.config.clone(),
            spec.max_iters_set,
            roots,
        )
    } else {
        let expr = a.expr.as_deref().ok_or_else(|| usage("give --input FILE or --expr STR --init CSV"))?;
        let init_text = a.init.as_deref().ok_or_else(|| usage("--expr needs --init"))?;
        let prec = precision(a.digits)?;
        let f = parse_expression::<Real>(expr, &prec).map_err(|e| usage(format!("--expr: {e}")))?;
        let mults = match &a.mults {
            Some(m) => {
                let m = csv_mults(m)?;
                if m.len() != f.mults().len() {
                    return Err(usage(format!(
                        "--mults has {} entries but the expression has {} roots",
                        m.len(),
                        f.mults().len()
                    )));
                }
                m
            }
            None => f.mults().to_vec(),
        };
        let profile = MultiplicityProfile::for_degree(f.family(), mults, f.degree())
            .map_err(|e| usage(format!("--mults: {e}")))?;
        let init = csv_reals(init_text, "init", &prec)?;
        if init.len() != profile.len() {
            return Err(usage(format!(
                "--init has {} estimates for {} roots",
                init.len(),
                profile.len()
            )));
        }
        let init = EstimateVector::initial(init);
        if let Some((i, j)) = init.collision() {
            return Err(usage(format!("--init: estimates x{i} and x{j} coincide")));
        }
        let cfg = SolveConfig::default_for(&Real::from_i64_with(1, prec));
        let roots = Some(f.roots().to_vec());
        (f.into(), profile, init, cfg, false, roots)
    };
    let mut fixed_run = fixed_run;
    if let Some(n) = a.max_iters {
        if n == 0 {
            return Err(usage("--max-iters must be at least 1"));
        }
        cfg.max_iters = n;
        fixed_run = true;
    }
    if let Some(m) = &a.method {
        cfg.method = m.parse::<Method>().map_err(usage)?;
    }
    let mut report = solve(&poly, &profile, init, &cfg).map_err(usage)?;
    if let Some(roots) = &roots {
        report.trace.attach_true_roots(roots).map_err(usage)?;
    }
    if a.canonical_angles && report.family == Family::Trigonometric {
        for s in report.trace.snapshots.iter_mut() {
            s.x = canonical_angles(&s.x);
        }
    }
    let out = render_trace(&report, format, a.decimals);
    // An explicit iteration count asks for exactly that many steps, so
    // running out of them is not a failure.
    let code = match report.stop_reason {
        StopReason::Tolerance => EXIT_OK,
        StopReason::MaxIters if fixed_run => EXIT_OK,
        StopReason::MaxIters => {
            eprintln!("not converged after {} iterations", cfg.max_iters);
            EXIT_NOT_CONVERGED
        }
        StopReason::StepFailure => {
            if let Some(e) = &report.failure {
                eprintln!("iteration stopped: {e}");
            }
            EXIT_NOT_CONVERGED
        }
    };
    Ok((out, code))
}

fn cmd_verify(a: VerifyArgs) -> Outcome {
    let format: TraceFormat = a.format.parse().map_err(usage)?;
    if format == TraceFormat::Csv {
        return Err(usage("verify prints table or json"));
    }
    let prec = precision(a.digits)?;
    let mults = csv_mults(&a.mults)?;
    if mults.is_empty() || mults.contains(&0) {
        return Err(usage("--mults: multiplicities must be positive"));
    }
    let total: u32 = mults.iter().sum();
    let family = match a.theorem {
        1 => Family::Algebraic,
        2 => Family::Trigonometric,
        3 => Family::Exponential,
        t => return Err(usage(format!("--theorem {t}: choose 1, 2 or 3"))),
    };
    let n = family
        .degree_for_total(total)
        .ok_or_else(|| usage(format!("--mults: total {total} must be even for theorem {}", a.theorem)))?;
    let c = real(&a.c, "c", &prec)?;
    let q = real(&a.q, "q", &prec)?;
    let (d, max_sep) = match (&a.roots, &a.d) {
        (Some(r), None) => {
            let roots = csv_reals(r, "roots", &prec)?;
            if roots.len() != mults.len() {
                return Err(usage(format!(
                    "--roots has {} entries, --mults has {}",
                    roots.len(),
                    mults.len()
                )));
            }
            let d = min_separation(&roots).map_err(usage)?;
            if d.is_zero() {
                return Err(usage("--roots: roots must be distinct"));
            }
            (d, Some(max_separation(&roots).map_err(usage)?))
        }
        (None, Some(d)) => {
            let max_sep = a.max_sep.as_deref().map(|m| real(m, "max-sep", &prec)).transpose()?;
            (real(d, "d", &prec)?, max_sep)
        }
        (Some(_), Some(_)) => return Err(usage("give --roots or --d, not both")),
        (None, None) => return Err(usage("missing --roots (or --d)")),
    };
    let report = match a.theorem {
        1 => check_theorem1(n, &mults, &d, &c, &q),
        2 => {
            let xi = a.xi.as_deref().ok_or_else(|| usage("theorem 2 needs --xi"))?;
            let xi = real(xi, "xi", &prec)?;
            let max_sep = max_sep.ok_or_else(|| usage("theorem 2 needs --roots or --max-sep"))?;
            check_theorem2(n, &mults, &d, &max_sep, &c, &q, &xi)
        }
        _ => check_theorem3(n, &mults, &d, &c, &q),
    };
    let code = if report.overall_pass { EXIT_OK } else { EXIT_CHECK_FAILED };
    Ok((render_theorem_report(&report, format), code))
}

fn cmd_order(a: OrderArgs) -> Outcome {
    let text = std::fs::read_to_string(&a.input).map_err(|e| usage(format!("{}: {e}", a.input.display())))?;
    let doc = parse_trace_json(&text).map_err(usage)?;
    let mut trace = doc.to_trace::<Real>().map_err(usage)?;
    let roots = csv_reals(&a.true_roots, "true-roots", &doc.precision)?;
    trace.attach_true_roots(&roots).map_err(usage)?;
    let floor = precision_floor(&Real::from_i64_with(1, doc.precision));
    let errors = trace.errors.clone().expect("attached above");
    let mut out = String::new();
    let _ = writeln!(out, "precision floor: {}", floor.to_string_digits(3));
    let describe = |label: String, series: Vec<Real>, out: &mut String| -> bool {
        match empirical_order_above(&series, &floor) {
            Ok(est) => {
                let [a, b, c] = est.triple;
                let _ = writeln!(
                    out,
                    "{label}: order {} (k = {a}, {b}, {c}; errors {}, {}, {})",
                    est.order.to_fixed_string(2),
                    series[a].to_string_digits(6),
                    series[b].to_string_digits(6),
                    series[c].to_string_digits(6),
                );
                true
            }
            Err(e) => {
                let _ = writeln!(out, "{label}: {e}");
                false
            }
        }
    };
    for i in 0..roots.len() {
        let series: Vec<Real> = errors.iter().map(|row| row[i].clone()).collect();
        describe(format!("x{}", i + 1), series, &mut out);
    }
    let max_norm = trace.max_errors().expect("attached above");
    let ok = describe("max-norm".to_string(), max_norm, &mut out);
    if ok {
        Ok((out, EXIT_OK))
    } else {
        print!("{out}");
        Err(Failure {
            code: EXIT_NOT_CONVERGED,
            message: "insufficient data for an order estimate".to_string(),
        })
    }
}

fn cmd_reproduce(a: ReproduceArgs) -> Outcome {
    if let Some(d) = a.digits {
        PrecisionConfig::with_digits(d).map_err(usage)?;
    }
    let rep = reproduce::<Real>(a.table, a.digits).map_err(|e| match e {
        simulroot::fixtures::FixtureError::UnknownTable(_) => usage(e),
        other => Failure {
            code: EXIT_CHECK_FAILED,
            message: other.to_string(),
        },
    })?;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "table {}: {} entries, first {} significant digits compared",
        rep.table,
        rep.entries.len(),
        COMPARED_DIGITS
    );
    for e in &rep.entries {
        let _ = writeln!(
            out,
            "  {} k={} x{}  printed {:<24} computed {}  diff {}",
            if e.within { "ok  " } else { "FAIL" },
            e.k,
            e.index,
            e.printed,
            e.computed.to_fixed_string(20),
            e.discrepancy.to_string_digits(3)
        );
    }
    let _ = writeln!(
        out,
        "max discrepancy: {} (tolerance {})",
        rep.max_discrepancy.to_string_digits(3),
        rep.entry_tolerance.to_string_digits(3)
    );
    let _ = writeln!(
        out,
        "final vector error: {} (tolerance {})",
        rep.final_error.to_string_digits(3),
        rep.final_tolerance.to_string_digits(3)
    );
    let pass = rep.pass();
    let _ = writeln!(out, "result: {}", if pass { "pass" } else { "fail" });
    Ok((out, if pass { EXIT_OK } else { EXIT_CHECK_FAILED }))
}
