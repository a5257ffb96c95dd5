mod args;
mod json;
mod weight;

use std::fmt::Write as _;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::error::ErrorKind;
use clap::Parser;
use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use kostant_core::altset::{self, BruteForceOptions};
use kostant_core::multiplicity::{self, MultOptions};
use kostant_core::verify::{self, Budget, Status, Suite, VerificationReport};
use kostant_core::{partition, weyl, Backend, EpsVector, Error, QPoly, RankContext};

use args::{
    AltsetArgs, BenchArgs, Cli, Command, Format, Method, MultArgs, PartitionArgs, SuiteSelection, VerifyArgs,
};

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }

    fn core(flag: &str, e: Error) -> Self {
        match e {
            Error::ResourceLimit { .. } => Self {
                code: 3,
                message: format!("{e} (raise with --max-n)"),
            },
            Error::RankCeiling { .. } => Self {
                code: 3,
                message: format!("--max-rank: {e}"),
            },
            other => Self::usage(format!("{flag}: {other}")),
        }
    }
}

/// One command's output, rendered either as JSON or as a table.
struct Response {
    command: &'static str,
    rank: usize,
    inputs: Value,
    result: Value,
    terms_evaluated: Option<u64>,
    backend: Option<&'static str>,
    table: String,
    exit: u8,
}

impl Response {
    fn to_json(&self) -> String {
        let mut obj = Map::new();
        obj.insert("command".into(), json!(self.command));
        obj.insert("rank".into(), json!(self.rank));
        obj.insert("inputs".into(), self.inputs.clone());
        obj.insert("result".into(), self.result.clone());
        obj.insert("terms_evaluated".into(), json!(self.terms_evaluated));
        obj.insert("backend".into(), json!(self.backend));
        obj.insert("version".into(), json!(VERSION));
        let mut s = serde_json::to_string_pretty(&Value::Object(obj)).expect("serializable");
        s.push('\n');
        s
    }
}

fn main() -> ExitCode {
    let argv = args::fold_weight_flags(std::env::args().collect());
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => match e.kind() {
            ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            _ => {
                let rendered = e.to_string();
                let line = rendered.lines().next().unwrap_or("error: invalid arguments");
                eprintln!("{line}");
                return ExitCode::from(2);
            }
        },
    };
    if cli.threads > 0 {
        // Only fails if a global pool already exists, which cannot happen here.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global();
    }
    match run(&cli) {
        Ok(resp) => {
            match cli.format {
                Format::Json => print!("{}", resp.to_json()),
                Format::Table => print!("{}", resp.table),
            }
            ExitCode::from(resp.exit)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> Result<Response, Failure> {
    match &cli.command {
        Command::Mult(a) => mult(a, cli.max_n, false),
        Command::Qmult(a) => mult(a, cli.max_n, true),
        Command::Altset(a) => altset(a, cli.max_n),
        Command::Partition(a) => partition(a),
        Command::Verify(a) => verify(a),
        Command::Bench(a) => bench(a, cli.max_n),
    }
}

fn context(rank: usize) -> Result<RankContext, Failure> {
    RankContext::new(rank).map_err(|e| Failure::usage(format!("--rank: {e}")))
}

fn weight_json(ctx: &RankContext, w: &EpsVector) -> Value {
    let fund = ctx.fundamental_coeffs(w).expect("length checked on input");
    json!({ "eps": w.coords(), "fund": fund })
}

fn weight_label(ctx: &RankContext, w: &EpsVector) -> String {
    let fund = ctx.fundamental_coeffs(w).expect("length checked on input");
    let fund: Vec<String> = fund.iter().map(i64::to_string).collect();
    format!("{w}  [ϖ: {}]", fund.join(","))
}

fn dominant_lambda(ctx: &RankContext, text: &str) -> Result<EpsVector, Failure> {
    let lambda = weight::parse("--lambda", text, ctx)?;
    if !lambda.is_dominant() {
        return Err(Failure::usage(format!(
            "--lambda: highest weight {lambda} is not dominant"
        )));
    }
    Ok(lambda)
}

/// Aligned `key  value` lines.
fn key_values(title: &str, rows: &[(&str, String)]) -> String {
    let width = rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
    let mut out = format!("{title}\n");
    for (k, v) in rows {
        let pad = width - k.chars().count();
        let _ = writeln!(out, "  {k}{}  {v}", " ".repeat(pad));
    }
    out
}

fn mult(a: &MultArgs, max_n: usize, q: bool) -> Result<Response, Failure> {
    let ctx = context(a.rank)?;
    let lambda = dominant_lambda(&ctx, &a.lambda)?;
    let mu = weight::parse("--mu", &a.mu, &ctx)?;
    let backend: Backend = a.backend.into();
    let opts = MultOptions { max_n };
    let (result, shown, terms) = if q {
        let r = multiplicity::mult_q_with(&ctx, &lambda, &mu, backend, opts)
            .map_err(|e| Failure::core("--backend", e))?;
        (json::poly(&r.value), r.value.to_string(), r.terms_evaluated)
    } else {
        let r = multiplicity::mult_with(&ctx, &lambda, &mu, backend, opts)
            .map_err(|e| Failure::core("--backend", e))?;
        (json::integer(&r.value), r.value.to_string(), r.terms_evaluated)
    };
    let symbol = if q { "m_q(λ, μ)" } else { "m(λ, μ)" };
    let table = key_values(
        &format!("{symbol} for sl({})", ctx.n()),
        &[
            ("λ", weight_label(&ctx, &lambda)),
            ("μ", weight_label(&ctx, &mu)),
            ("value", shown),
            ("backend", backend.as_str().to_string()),
            ("terms evaluated", terms.to_string()),
        ],
    );
    Ok(Response {
        command: if q { "qmult" } else { "mult" },
        rank: ctx.rank(),
        inputs: json!({ "lambda": weight_json(&ctx, &lambda), "mu": weight_json(&ctx, &mu) }),
        result,
        terms_evaluated: Some(terms),
        backend: Some(backend.as_str()),
        table,
        exit: 0,
    })
}

fn altset(a: &AltsetArgs, max_n: usize) -> Result<Response, Failure> {
    let ctx = context(a.rank)?;
    let lambda = dominant_lambda(&ctx, &a.lambda)?;
    let mu = weight::parse("--mu", &a.mu, &ctx)?;
    let (set, terms, method) = match a.method {
        Method::Brute => {
            if !mu.is_dominant() {
                return Err(Failure::usage(format!("--mu: weight {mu} is not dominant")));
            }
            let opts = BruteForceOptions {
                max_n,
                audit: a.audit,
            };
            let set = altset::altset_bruteforce_with(&ctx, &lambda, &mu, opts)
                .map_err(|e| Failure::core("--mu", e))?;
            (set, weyl::factorial(ctx.n()), "brute")
        }
        Method::Closed => {
            if &lambda != ctx.highest_root() {
                return Err(Failure::usage(format!(
                    "--method: the closed form needs --lambda --highest-root, got {lambda}"
                )));
            }
            let set = if mu.is_zero() {
                altset::altset_closed_zero(&ctx)
            } else {
                if !mu.is_dominant() {
                    return Err(Failure::usage(format!("--mu: weight {mu} is not dominant")));
                }
                altset::altset_closed_nonzero(&ctx, &mu).map_err(|e| Failure::core("--mu", e))?
            };
            (set, 0, "closed")
        }
    };

    let mut table = format!(
        "A(λ, μ) for sl({}): {} element{} ({method})\n  λ  {}\n  μ  {}\n",
        ctx.n(),
        set.len(),
        if set.len() == 1 { "" } else { "s" },
        weight_label(&ctx, &lambda),
        weight_label(&ctx, &mu),
    );
    if !set.is_empty() {
        let perms: Vec<String> = set.elements.iter().map(|e| e.permutation.to_string()).collect();
        let w = perms.iter().map(String::len).max().unwrap_or(1).max(1);
        let _ = writeln!(table, "  {:<w$}  ℓ  sign  σ(λ+ρ)-(μ+ρ)", "σ");
        for (e, p) in set.elements.iter().zip(&perms) {
            let _ = writeln!(table, "  {p:<w$}  {}  {:+}    {}", e.length, e.sign, e.translate);
        }
    }
    let level_counts = set.level_counts();
    let _ = writeln!(table, "  by length: {level_counts:?}");

    let elements = serde_json::to_value(&set.elements).expect("serializable");
    Ok(Response {
        command: "altset",
        rank: ctx.rank(),
        inputs: json!({
            "lambda": weight_json(&ctx, &lambda),
            "mu": weight_json(&ctx, &mu),
            "method": method,
            "audit": a.audit,
        }),
        result: json!({ "size": set.len(), "level_counts": level_counts, "elements": elements }),
        terms_evaluated: Some(terms),
        backend: Some(method),
        table,
        exit: 0,
    })
}

fn partition(a: &PartitionArgs) -> Result<Response, Failure> {
    let ctx = context(a.rank)?;
    let target = weight::parse("--target", &a.target, &ctx)?;
    let count = partition::kostant(&ctx, &target).map_err(|e| Failure::core("--target", e))?;
    let q: QPoly = partition::kostant_q(&ctx, &target).map_err(|e| Failure::core("--target", e))?;
    let positive = target.sum() == 0
        && partition::is_positive(&ctx, &target).map_err(|e| Failure::core("--target", e))?;
    let count = BigInt::from(count);
    let table = key_values(
        &format!("℘(ξ) for sl({})", ctx.n()),
        &[
            ("ξ", weight_label(&ctx, &target)),
            ("℘", count.to_string()),
            ("℘_q", q.to_string()),
            ("℘ > 0", positive.to_string()),
        ],
    );
    Ok(Response {
        command: "partition",
        rank: ctx.rank(),
        inputs: json!({ "target": weight_json(&ctx, &target) }),
        result: json!({ "count": json::integer(&count), "q": json::poly(&q), "positive": positive }),
        terms_evaluated: None,
        backend: None,
        table,
        exit: 0,
    })
}

fn verify(a: &VerifyArgs) -> Result<Response, Failure> {
    let suites: Vec<Suite> = match &a.suite {
        SuiteSelection::All => Suite::ALL.to_vec(),
        SuiteSelection::One(s) => vec![*s],
    };
    if a.min_rank == 0 {
        return Err(Failure::usage("--min-rank: ranks start at 1"));
    }
    let all = a.suite == SuiteSelection::All;
    let deadline = a.budget_secs.map(Duration::from_secs);
    let started = Instant::now();
    let mut reports: Vec<VerificationReport> = Vec::new();
    for suite in suites {
        let ceiling = suite.max_rank();
        let hi = match a.max_rank {
            Some(m) if all => m.min(ceiling),
            Some(m) => m,
            None => ceiling,
        };
        if a.min_rank > hi {
            if all {
                continue;
            }
            return Err(Failure::usage(format!(
                "--min-rank: {} exceeds --max-rank {hi}",
                a.min_rank
            )));
        }
        let budget = Budget {
            max_wall: deadline.map(|d| d.saturating_sub(started.elapsed())),
        };
        let report =
            verify::run_suite(suite, a.min_rank..=hi, budget).map_err(|e| Failure::core("--suite", e))?;
        reports.push(if a.no_timings {
            report.without_timings()
        } else {
            report
        });
    }

    let failed = reports.iter().any(|r| r.status == Status::Fail);
    let complete = reports.iter().all(|r| r.complete);
    let status = if failed { "fail" } else { "pass" };
    let exit = match (failed, complete) {
        (true, _) => 1,
        (false, false) => 3,
        (false, true) => 0,
    };

    let mut table = String::new();
    for r in &reports {
        let _ = writeln!(
            table,
            "{}  ranks {}..={}  {}{}",
            r.suite,
            r.rank_range.0,
            r.rank_range.1,
            if r.status == Status::Pass { "pass" } else { "FAIL" },
            if r.complete {
                ""
            } else {
                "  (incomplete: budget exhausted)"
            }
        );
        for rec in &r.ranks {
            let _ = writeln!(
                table,
                "  r={:<3} {:?}  {} µs",
                rec.rank,
                rec.observed,
                rec.elapsed.as_micros()
            );
        }
        for c in &r.counterexamples {
            let _ = writeln!(
                table,
                "  counterexample r={} {}: expected {}, got {}",
                c.rank, c.witness, c.expected, c.actual
            );
        }
    }
    let _ = writeln!(
        table,
        "overall: {status}{}",
        if complete { "" } else { " (incomplete)" }
    );

    let rank = reports.iter().map(|r| r.rank_range.1).max().unwrap_or(0);
    Ok(Response {
        command: "verify",
        rank,
        inputs: json!({
            "suite": match &a.suite { SuiteSelection::All => "all".to_string(), SuiteSelection::One(s) => s.to_string() },
            "min_rank": a.min_rank,
            "max_rank": a.max_rank,
            "budget_secs": a.budget_secs,
        }),
        result: json!({
            "status": status,
            "complete": complete,
            "reports": serde_json::to_value(&reports).expect("serializable"),
        }),
        terms_evaluated: None,
        backend: None,
        table,
        exit,
    })
}

fn bench(a: &BenchArgs, max_n: usize) -> Result<Response, Failure> {
    if a.min_rank == 0 || a.min_rank > a.max_rank {
        return Err(Failure::usage(format!(
            "--min-rank: expected 1 <= {} <= --max-rank {}",
            a.min_rank, a.max_rank
        )));
    }
    if a.max_rank + 1 > max_n {
        return Err(Failure::core(
            "--max-rank",
            Error::ResourceLimit {
                n: a.max_rank + 1,
                ceiling: max_n,
            },
        ));
    }
    let rows = verify::bench_pruning(a.min_rank..=a.max_rank).map_err(|e| Failure::core("--max-rank", e))?;
    let all_equal = rows.iter().all(|r| r.values_equal);
    let mut table = String::from("rank  full terms  pruned terms  full µs  pruned µs  equal\n");
    for r in &rows {
        let _ = writeln!(
            table,
            "{:>4}  {:>10}  {:>12}  {:>7}  {:>9}  {}",
            r.rank,
            r.full_terms,
            r.alt_terms,
            r.full_time.as_micros(),
            r.pruned_time.as_micros(),
            r.values_equal
        );
    }
    Ok(Response {
        command: "bench",
        rank: a.max_rank,
        inputs: json!({ "min_rank": a.min_rank, "max_rank": a.max_rank }),
        result: json!({ "rows": serde_json::to_value(&rows).expect("serializable"), "values_equal": all_equal }),
        terms_evaluated: Some(rows.iter().map(|r| r.full_terms + r.alt_terms).sum()),
        backend: None,
        table,
        exit: if all_equal { 0 } else { 1 },
    })
}
