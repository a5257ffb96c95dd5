use clap::{Args, Parser, Subcommand, ValueEnum};

use kostant_core::verify::Suite;

/// Flags that take a weight specification.
pub const WEIGHT_FLAGS: [&str; 3] = ["--lambda", "--mu", "--target"];

#[derive(Debug, Parser)]
#[command(
    name = "kostant",
    version,
    about = "Exact weight multiplicities, alternation sets and partition functions for sl(r+1)",
    after_help = "Weights: `--lambda --fund 1,0,1`, `--lambda --eps 1,0,0,-1`, \
                  `--lambda --highest-root`, `--mu --zero`. A bare list is read as \
                  fundamental-weight coefficients."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,

    /// Worker threads for permutation enumeration (0 = one per core).
    #[arg(long, global = true, env = "KOSTANT_THREADS", default_value_t = 0)]
    pub threads: usize,

    /// Largest n = r+1 for which S_n is enumerated.
    #[arg(long, global = true, default_value_t = kostant_core::DEFAULT_MAX_N)]
    pub max_n: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Weight multiplicity m(λ, μ).
    Mult(MultArgs),
    /// q-analog m_q(λ, μ).
    Qmult(MultArgs),
    /// Weyl alternation set A(λ, μ).
    Altset(AltsetArgs),
    /// Kostant partition function ℘(ξ) and its q-analog.
    Partition(PartitionArgs),
    /// Run verification suites.
    Verify(VerifyArgs),
    /// Compare the full Weyl sum with the pruned sum for m_q(α̃, 0).
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
pub struct MultArgs {
    #[arg(long)]
    pub rank: usize,
    /// Highest weight (dominant).
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: String,
    #[arg(long, allow_hyphen_values = true)]
    pub mu: String,
    #[arg(long, value_enum, default_value_t = BackendArg::Pruned)]
    pub backend: BackendArg,
}

#[derive(Debug, Args)]
pub struct AltsetArgs {
    #[arg(long)]
    pub rank: usize,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: String,
    #[arg(long, allow_hyphen_values = true)]
    pub mu: String,
    #[arg(long, value_enum, default_value_t = Method::Brute)]
    pub method: Method,
    /// Cross-check every permutation against the partition function.
    #[arg(long)]
    pub audit: bool,
}

#[derive(Debug, Args)]
pub struct PartitionArgs {
    #[arg(long)]
    pub rank: usize,
    #[arg(long, allow_hyphen_values = true)]
    pub target: String,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Suite name, or `all`.
    #[arg(long, default_value = "all", value_parser = parse_suites)]
    pub suite: SuiteSelection,
    #[arg(long, default_value_t = 1)]
    pub min_rank: usize,
    /// Defaults to each suite's ceiling; `all` clamps to each ceiling.
    #[arg(long)]
    pub max_rank: Option<usize>,
    /// Wall-clock budget in seconds, checked before each rank.
    #[arg(long)]
    pub budget_secs: Option<u64>,
    /// Report zero for every per-rank elapsed time.
    #[arg(long)]
    pub no_timings: bool,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, default_value_t = 1)]
    pub min_rank: usize,
    #[arg(long, default_value_t = 7)]
    pub max_rank: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BackendArg {
    Full,
    Pruned,
    Closed,
}

impl From<BackendArg> for kostant_core::Backend {
    fn from(b: BackendArg) -> Self {
        match b {
            BackendArg::Full => Self::FullSum,
            BackendArg::Pruned => Self::PositivityPruned,
            BackendArg::Closed => Self::ClosedForm,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Brute,
    Closed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SuiteSelection {
    All,
    One(Suite),
}

fn parse_suites(s: &str) -> Result<SuiteSelection, String> {
    if s == "all" {
        return Ok(SuiteSelection::All);
    }
    s.parse().map(SuiteSelection::One).map_err(|_| {
        let names: Vec<_> = Suite::ALL.iter().map(|s| s.name()).collect();
        format!("expected `all` or one of {}", names.join(", "))
    })
}

/// Folds `--lambda --fund 1,2` into `--lambda=fund:1,2`, and likewise for
/// `--eps`, `--highest-root` and `--zero`, so each weight reaches clap as a
/// single value.
pub fn fold_weight_flags(argv: Vec<String>) -> Vec<String> {
    let mut out = Vec::with_capacity(argv.len());
    let mut it = argv.into_iter().peekable();
    while let Some(arg) = it.next() {
        if !WEIGHT_FLAGS.contains(&arg.as_str()) {
            out.push(arg);
            continue;
        }
        match it.peek().map(String::as_str) {
            Some("--fund") | Some("--eps") => {
                let style = it.next().unwrap();
                let list = it.next().unwrap_or_default();
                out.push(format!("{arg}={}:{list}", style.trim_start_matches("--")));
            }
            Some("--highest-root") | Some("--zero") => {
                let style = it.next().unwrap();
                out.push(format!("{arg}={}", style.trim_start_matches("--")));
            }
            _ => out.push(arg),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn argv(s: &str) -> Vec<String> {
        s.split_whitespace().map(String::from).collect()
    }

    #[test]
    fn folds_every_weight_style() {
        let folded = fold_weight_flags(argv(
            "kostant mult --rank 3 --lambda --fund 1,0,1 --mu --eps -1,1,0,0 --backend full",
        ));
        assert_eq!(
            folded,
            argv("kostant mult --rank 3 --lambda=fund:1,0,1 --mu=eps:-1,1,0,0 --backend full")
        );
        let folded = fold_weight_flags(argv("kostant qmult --lambda --highest-root --mu --zero"));
        assert_eq!(folded, argv("kostant qmult --lambda=highest-root --mu=zero"));
    }

    #[test]
    fn leaves_bare_values_alone() {
        let a = argv("kostant partition --rank 2 --target 1,1");
        assert_eq!(fold_weight_flags(a.clone()), a);
    }

    #[test]
    fn parses_folded_arguments() {
        let cli = Cli::try_parse_from(fold_weight_flags(argv(
            "kostant mult --rank 5 --lambda --highest-root --mu --zero --backend pruned",
        )))
        .unwrap();
        match cli.command {
            Command::Mult(m) => {
                assert_eq!(m.rank, 5);
                assert_eq!(m.lambda, "highest-root");
                assert_eq!(m.mu, "zero");
                assert_eq!(m.backend, BackendArg::Pruned);
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
