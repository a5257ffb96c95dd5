//! Rank-by-rank comparison of the closed forms for the highest root against
//! brute-force enumeration.
//!
//! Each suite pits a value obtained by enumerating the Weyl group or
//! evaluating the partition-function DP against an expression from
//! [`closed`]. All counterexamples are collected; a suite never stops at the
//! first failure. Reports are deterministic apart from the recorded timings.

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::altset::{self, AltSet};
use crate::closed;
use crate::error::{Error, Result};
use crate::multiplicity::{self, Backend};
use crate::partition;
use crate::qpoly::QPoly;
use crate::rootsys::{EpsVector, RankContext};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Fibonacci,
    LevelCounts,
    ClosedPartition,
    Exponents,
    WilfIdentity,
    NonzeroWeights,
    AdjointTable,
    PositivityCriterion,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Fibonacci,
        Suite::LevelCounts,
        Suite::ClosedPartition,
        Suite::Exponents,
        Suite::WilfIdentity,
        Suite::NonzeroWeights,
        Suite::AdjointTable,
        Suite::PositivityCriterion,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Fibonacci => "fibonacci",
            Suite::LevelCounts => "level_counts",
            Suite::ClosedPartition => "closed_partition",
            Suite::Exponents => "exponents",
            Suite::WilfIdentity => "wilf_identity",
            Suite::NonzeroWeights => "nonzero_weights",
            Suite::AdjointTable => "adjoint_table",
            Suite::PositivityCriterion => "positivity_criterion",
        }
    }

    /// Largest rank the suite accepts.
    pub fn max_rank(self) -> usize {
        match self {
            Suite::Fibonacci | Suite::LevelCounts | Suite::ClosedPartition | Suite::Exponents => 9,
            Suite::WilfIdentity => 200,
            Suite::NonzeroWeights => 6,
            Suite::AdjointTable => 5,
            Suite::PositivityCriterion => 4,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown suite `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
}

/// A reproducible failure: the rank, the offending permutation or weight, and both sides.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub rank: usize,
    pub witness: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankRecord {
    pub rank: usize,
    /// Suite-specific summary of what was computed at this rank (see [`run_suite`]).
    pub observed: Vec<u64>,
    #[serde(rename = "elapsed_us", serialize_with = "micros")]
    pub elapsed: Duration,
}

fn micros<S: Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_u64(d.as_micros() as u64)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub suite: Suite,
    pub rank_range: (usize, usize),
    pub status: Status,
    /// `false` when the budget ran out before every rank was checked.
    pub complete: bool,
    pub counterexamples: Vec<Counterexample>,
    pub ranks: Vec<RankRecord>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass && self.complete
    }

    /// The report with timings zeroed, for comparisons across runs.
    pub fn without_timings(&self) -> Self {
        let mut out = self.clone();
        out.ranks.iter_mut().for_each(|r| r.elapsed = Duration::ZERO);
        out
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Budget {
    /// Wall-clock limit checked before each rank starts.
    pub max_wall: Option<Duration>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Self::default()
    }
}

struct Collector {
    rank: usize,
    found: Vec<Counterexample>,
}

impl Collector {
    fn new(rank: usize) -> Self {
        Self {
            rank,
            found: Vec::new(),
        }
    }

    fn check<T: PartialEq + fmt::Display>(&mut self, witness: impl fmt::Display, expected: T, actual: T) {
        if expected != actual {
            self.found.push(Counterexample {
                rank: self.rank,
                witness: witness.to_string(),
                expected: expected.to_string(),
                actual: actual.to_string(),
            });
        }
    }
}

/// Runs `suite` for every rank in `ranks`.
///
/// `observed` per rank holds:
/// - `fibonacci`: `[|A(α̃,0)|]`
/// - `level_counts`: element counts by length `0, 1, …`
/// - `closed_partition`: `[number of permutations checked]`
/// - `exponents`: the exponents carried by `m_q(α̃,0)`
/// - `wilf_identity`: `[degree, value at q = 1]` of the alternating sum
/// - `nonzero_weights`: `[weights scanned, weights with a nonempty set]`
/// - `adjoint_table`: `[points scanned, nonzero points with multiplicity 1]`
/// - `positivity_criterion`: `[vectors scanned, vectors with ℘ > 0]`
pub fn run_suite(suite: Suite, ranks: RangeInclusive<usize>, budget: Budget) -> Result<VerificationReport> {
    let (lo, hi) = (*ranks.start(), *ranks.end());
    if lo == 0 {
        return Err(Error::InvalidRank(0));
    }
    if lo > hi {
        return Err(Error::InvalidInput(format!("empty rank range {lo}..={hi}")));
    }
    if hi > suite.max_rank() {
        return Err(Error::RankCeiling {
            rank: hi,
            ceiling: suite.max_rank(),
        });
    }
    let start = Instant::now();
    let mut complete = true;
    let mut counterexamples = Vec::new();
    let mut records = Vec::new();
    for r in lo..=hi {
        if budget.max_wall.is_some_and(|limit| start.elapsed() > limit) {
            complete = false;
            break;
        }
        let t0 = Instant::now();
        let ctx = RankContext::new(r)?;
        let mut col = Collector::new(r);
        let observed = match suite {
            Suite::Fibonacci => fibonacci(&ctx, &mut col)?,
            Suite::LevelCounts => level_counts(&ctx, &mut col)?,
            Suite::ClosedPartition => closed_partition(&ctx, &mut col)?,
            Suite::Exponents => exponents(&ctx, &mut col)?,
            Suite::WilfIdentity => wilf_identity(r, &mut col),
            Suite::NonzeroWeights => nonzero_weights(&ctx, &mut col)?,
            Suite::AdjointTable => adjoint_table(&ctx, &mut col)?,
            Suite::PositivityCriterion => positivity_criterion(&ctx, &mut col)?,
        };
        counterexamples.extend(col.found);
        records.push(RankRecord {
            rank: r,
            observed,
            elapsed: t0.elapsed(),
        });
    }
    let status = if counterexamples.is_empty() {
        Status::Pass
    } else {
        Status::Fail
    };
    Ok(VerificationReport {
        suite,
        rank_range: (lo, hi),
        status,
        complete,
        counterexamples,
        ranks: records,
    })
}

fn zero_weight_set(ctx: &RankContext) -> Result<AltSet> {
    altset::altset_bruteforce(ctx, ctx.highest_root(), &ctx.zero())
}

fn fibonacci(ctx: &RankContext, col: &mut Collector) -> Result<Vec<u64>> {
    let set = zero_weight_set(ctx)?;
    col.check(
        "|A(α̃,0)|",
        closed::fibonacci(ctx.rank()),
        BigUint::from(set.len()),
    );
    Ok(vec![set.len() as u64])
}

fn level_counts(ctx: &RankContext, col: &mut Collector) -> Result<Vec<u64>> {
    let set = zero_weight_set(ctx)?;
    let counts = set.level_counts();
    for k in 0..=ctx.rank() {
        let got = counts.get(k).copied().unwrap_or(0);
        col.check(
            format!("length {k}"),
            closed::level_count(ctx.rank(), k),
            BigUint::from(got),
        );
    }
    col.check(
        "max length",
        closed::max_length(ctx.rank()),
        counts.len().saturating_sub(1),
    );
    Ok(counts.into_iter().map(|c| c as u64).collect())
}

fn closed_partition(ctx: &RankContext, col: &mut Collector) -> Result<Vec<u64>> {
    let set = zero_weight_set(ctx)?;
    for e in &set.elements {
        let witness = format!("σ = {}, ξ = {}", e.permutation, e.translate);
        let poly = partition::kostant_q(ctx, &e.translate)?;
        let count = partition::kostant(ctx, &e.translate)?;
        match (
            closed::translate_q(ctx.rank(), e.length),
            closed::translate_count(ctx.rank(), e.length),
        ) {
            (Some(want_q), Some(want)) => {
                col.check(&witness, want_q, poly);
                col.check(&witness, want, count);
            }
            _ => col.check(
                &witness,
                "length <= ⌊(r-1)/2⌋".to_string(),
                format!("length {}", e.length),
            ),
        }
    }
    Ok(vec![set.len() as u64])
}

fn exponents(ctx: &RankContext, col: &mut Collector) -> Result<Vec<u64>> {
    let a = ctx.highest_root();
    let zero = ctx.zero();
    let mq = multiplicity::mult_q(ctx, a, &zero, Backend::FullSum)?.value;
    let m = multiplicity::mult(ctx, a, &zero, Backend::FullSum)?.value;
    col.check("m_q(α̃,0)", closed::exponent_poly(ctx.rank()), mq.clone());
    col.check("m(α̃,0)", BigInt::from(ctx.rank()), m);
    Ok(mq.support().into_iter().map(|e| e as u64).collect())
}

fn wilf_identity(r: usize, col: &mut Collector) -> Vec<u64> {
    let lhs = closed::alternating_sum(r);
    col.check("alternating sum", closed::exponent_poly(r), lhs.clone());
    col.check(
        format!("general form at m = {}", r - 1),
        closed::geometric_quotient(r - 1),
        closed::wilf_sum(r - 1),
    );
    col.check(
        "F_r(1)",
        BigInt::from(closed::fibonacci(r)),
        closed::fibonacci_t_analog(r).eval_at_one(),
    );
    let value = lhs.eval_at_one();
    vec![
        lhs.degree().unwrap_or(0) as u64,
        u64::try_from(value).unwrap_or(u64::MAX),
    ]
}

/// Every coefficient vector in `[lo, hi]^len`, first coordinate fastest.
fn box_points(len: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut cur = vec![lo; len];
    loop {
        out.push(cur.clone());
        let mut k = 0;
        while k < len && cur[k] == hi {
            cur[k] = lo;
            k += 1;
        }
        if k == len {
            return out;
        }
        cur[k] += 1;
    }
}

fn nonzero_weights(ctx: &RankContext, col: &mut Collector) -> Result<Vec<u64>> {
    let a = ctx.highest_root();
    let mus: Vec<EpsVector> = box_points(ctx.rank(), 0, 3)
        .into_iter()
        .filter(|c| c.iter().any(|&x| x != 0))
        .map(|c| ctx.from_fundamental_coeffs(&c))
        .collect::<Result<_>>()?;
    let results: Vec<(EpsVector, AltSet, AltSet)> = mus
        .into_par_iter()
        .map(|mu| {
            let brute = altset::altset_bruteforce(ctx, a, &mu)?;
            let closed = altset::altset_closed_nonzero(ctx, &mu)?;
            Ok((mu, brute, closed))
        })
        .collect::<Result<_>>()?;
    let mut nonempty = 0;
    for (mu, brute, closed) in &results {
        if !brute.is_empty() {
            nonempty += 1;
        }
        col.check(
            format!("μ = {mu}"),
            PermList(closed.permutations()),
            PermList(brute.permutations()),
        );
    }
    Ok(vec![results.len() as u64, nonempty])
}

struct PermList(Vec<crate::weyl::Permutation>);

impl PartialEq for PermList {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

impl fmt::Display for PermList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

fn adjoint_table(ctx: &RankContext, col: &mut Collector) -> Result<Vec<u64>> {
    let a = ctx.highest_root();
    let r = ctx.rank() as u64;
    let points = box_points(ctx.n(), -2, 2);
    let results: Vec<(EpsVector, BigInt, u64)> = points
        .into_par_iter()
        .map(|c| {
            let mu = EpsVector::new(c);
            let full = multiplicity::mult(ctx, a, &mu, Backend::FullSum)?.value;
            let closed = multiplicity::adjoint_multiplicity(ctx, &mu)?;
            Ok((mu, full, closed))
        })
        .collect::<Result<_>>()?;
    let mut ones = 0;
    for (mu, full, closed) in &results {
        // table entry read directly off the coordinates
        let expected = if mu.is_zero() {
            r
        } else if ctx.is_root(mu) {
            1
        } else {
            0
        };
        if !mu.is_zero() && full == &BigInt::from(1) {
            ones += 1;
        }
        col.check(
            format!("μ = {mu} (full sum)"),
            BigInt::from(expected),
            full.clone(),
        );
        col.check(format!("μ = {mu} (closed form)"), expected, *closed);
    }
    let n = ctx.n() as u64;
    col.check("roots with multiplicity 1", n * (n - 1), ones);
    Ok(vec![results.len() as u64, ones])
}

fn positivity_criterion(ctx: &RankContext, col: &mut Collector) -> Result<Vec<u64>> {
    let mut scanned = 0;
    let mut positive = 0;
    for c in box_points(ctx.n(), -4, 4) {
        let xi = EpsVector::new(c);
        if xi.sum() != 0 {
            continue;
        }
        scanned += 1;
        let count = partition::kostant(ctx, &xi)?;
        let poly: QPoly = partition::kostant_q(ctx, &xi)?;
        let fast = partition::is_positive(ctx, &xi)?;
        if !count.is_zero() {
            positive += 1;
        }
        col.check(format!("ξ = {xi} (℘ > 0)"), !count.is_zero(), fast);
        col.check(
            format!("ξ = {xi} (℘_q at 1)"),
            BigInt::from(count),
            poly.eval_at_one(),
        );
    }
    Ok(vec![scanned, positive])
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BenchRow {
    pub rank: usize,
    pub full_terms: u64,
    pub alt_terms: u64,
    #[serde(rename = "full_time_us", serialize_with = "micros")]
    pub full_time: Duration,
    #[serde(rename = "pruned_time_us", serialize_with = "micros")]
    pub pruned_time: Duration,
    pub values_equal: bool,
    #[serde(skip)]
    pub value: QPoly,
}

/// Times `m_q(α̃,0)` with the full Weyl sum and with positivity pruning.
pub fn bench_pruning(ranks: RangeInclusive<usize>) -> Result<Vec<BenchRow>> {
    ranks
        .map(|r| {
            let ctx = RankContext::new(r)?;
            let a = ctx.highest_root();
            let zero = ctx.zero();
            let t0 = Instant::now();
            let full = multiplicity::mult_q(&ctx, a, &zero, Backend::FullSum)?;
            let full_time = t0.elapsed();
            let t1 = Instant::now();
            let pruned = multiplicity::mult_q(&ctx, a, &zero, Backend::PositivityPruned)?;
            let pruned_time = t1.elapsed();
            Ok(BenchRow {
                rank: r,
                full_terms: full.terms_evaluated,
                alt_terms: pruned.terms_evaluated,
                full_time,
                pruned_time,
                values_equal: full.value == pruned.value,
                value: full.value,
            })
        })
        .collect()
}
