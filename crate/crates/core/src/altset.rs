//! Weyl alternation sets `A(λ, μ) = {σ ∈ W : ℘(σ(λ+ρ) - (μ+ρ)) > 0}`.
//!
//! These are exactly the permutations that contribute to Kostant's
//! multiplicity formula. [`altset_bruteforce`] filters all of `S_n`; the
//! `closed_*` constructors build the sets for the highest root directly.

use num_traits::Zero;
use serde::Serialize;

use crate::closed;
use crate::error::{Error, Result};
use crate::partition;
use crate::rootsys::{EpsVector, RankContext};
use crate::weyl::{self, Permutation};
use crate::DEFAULT_MAX_N;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AltSetElement {
    pub permutation: Permutation,
    pub length: usize,
    pub sign: i32,
    /// `σ(λ+ρ) - (μ+ρ)`.
    pub translate: EpsVector,
}

impl AltSetElement {
    fn new(permutation: Permutation, translate: EpsVector) -> Self {
        Self {
            length: permutation.length(),
            sign: permutation.sign(),
            permutation,
            translate,
        }
    }
}

/// A computed alternation set with elements in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AltSet {
    pub ctx: RankContext,
    pub lambda: EpsVector,
    pub mu: EpsVector,
    pub elements: Vec<AltSetElement>,
}

impl AltSet {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn permutations(&self) -> Vec<Permutation> {
        self.elements.iter().map(|e| e.permutation.clone()).collect()
    }

    pub fn contains(&self, sigma: &Permutation) -> bool {
        self.elements.iter().any(|e| &e.permutation == sigma)
    }

    /// Element counts indexed by length.
    pub fn level_counts(&self) -> Vec<usize> {
        let top = self.elements.iter().map(|e| e.length).max();
        let mut counts = vec![0; top.map_or(0, |t| t + 1)];
        for e in &self.elements {
            counts[e.length] += 1;
        }
        counts
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BruteForceOptions {
    /// Largest `n` for which `S_n` is enumerated.
    pub max_n: usize,
    /// Also evaluate `℘` on every permutation and fail if it disagrees with
    /// the partial-sum membership test.
    pub audit: bool,
}

impl Default for BruteForceOptions {
    fn default() -> Self {
        Self {
            max_n: DEFAULT_MAX_N,
            audit: false,
        }
    }
}

/// `σ(λ+ρ) - (μ+ρ)` computed coordinatewise: entry `i` is
/// `(λ+ρ)_{σ^{-1}(i)} - (μ+ρ)_i`.
pub fn translate(
    ctx: &RankContext,
    sigma: &Permutation,
    lambda: &EpsVector,
    mu: &EpsVector,
) -> Result<EpsVector> {
    ctx.check_len(lambda)?;
    ctx.check_len(mu)?;
    let shifted = lambda + ctx.rho();
    let moved = sigma.act(&shifted)?;
    Ok(&(&moved - mu) - ctx.rho())
}

/// `α̃ + ρ` as `(a_1, …, a_n)` with `a_1 = n`, `a_n = -1` and `a_j = n - j` otherwise.
pub fn relabel(ctx: &RankContext) -> Vec<i64> {
    let n = ctx.n() as i64;
    (1..=n)
        .map(|j| match j {
            1 => n,
            _ if j == n => -1,
            _ => n - j,
        })
        .collect()
}

/// `σ(α̃+ρ) - ρ = (a_{σ^{-1}(1)} - n + 1, a_{σ^{-1}(2)} - n + 2, …, a_{σ^{-1}(n)})`.
pub fn zero_weight_translate(ctx: &RankContext, sigma: &Permutation) -> EpsVector {
    let a = relabel(ctx);
    let inv = sigma.inverse();
    let n = ctx.n() as i64;
    EpsVector::new(
        (1..=ctx.n())
            .map(|i| a[inv.image(i) - 1] - n + i as i64)
            .collect(),
    )
}

fn check_dominant(ctx: &RankContext, name: &str, w: &EpsVector) -> Result<()> {
    ctx.check_len(w)?;
    if !w.is_dominant() {
        return Err(Error::InvalidWeight(format!(
            "{name} = {w} is not dominant (coordinates must be weakly decreasing)"
        )));
    }
    Ok(())
}

pub fn altset_bruteforce(ctx: &RankContext, lambda: &EpsVector, mu: &EpsVector) -> Result<AltSet> {
    altset_bruteforce_with(ctx, lambda, mu, BruteForceOptions::default())
}

/// Filters all of `S_n` through the partial-sum positivity test.
pub fn altset_bruteforce_with(
    ctx: &RankContext,
    lambda: &EpsVector,
    mu: &EpsVector,
    opts: BruteForceOptions,
) -> Result<AltSet> {
    check_dominant(ctx, "λ", lambda)?;
    check_dominant(ctx, "μ", mu)?;
    altset_bruteforce_unchecked(ctx, lambda, mu, opts)
}

/// [`altset_bruteforce_with`] without the dominance checks, for experiments
/// with non-dominant pairs.
pub fn altset_bruteforce_unchecked(
    ctx: &RankContext,
    lambda: &EpsVector,
    mu: &EpsVector,
    opts: BruteForceOptions,
) -> Result<AltSet> {
    ctx.check_len(lambda)?;
    ctx.check_len(mu)?;
    if ctx.n() > opts.max_n {
        return Err(Error::ResourceLimit {
            n: ctx.n(),
            ceiling: opts.max_n,
        });
    }
    let shifted = lambda + ctx.rho();
    let base = mu + ctx.rho();
    let blocks = weyl::par_map_blocks(ctx.n(), |block| -> Result<Vec<AltSetElement>> {
        let mut found = Vec::new();
        let mut coords = vec![0i64; ctx.n()];
        for sigma in block {
            for (k, &img) in sigma.zero_based().iter().enumerate() {
                coords[img] = shifted.coords()[k];
            }
            coords.iter_mut().zip(base.coords()).for_each(|(c, b)| *c -= b);
            let member = partition::partial_sums_nonnegative(&coords);
            let t = EpsVector::new(coords.clone());
            if opts.audit {
                let full = !partition::kostant(ctx, &t)?.is_zero();
                if full != member {
                    return Err(Error::Audit(format!(
                        "σ = {sigma}: partial-sum test says {member}, ℘({t}) > 0 is {full}"
                    )));
                }
            }
            if member {
                found.push(AltSetElement::new(sigma, t));
            }
        }
        Ok(found)
    });
    let mut elements = Vec::new();
    for b in blocks {
        elements.extend(b?);
    }
    Ok(AltSet {
        ctx: ctx.clone(),
        lambda: lambda.clone(),
        mu: mu.clone(),
        elements,
    })
}

/// Index sets `{i_1 < ⋯ < i_k} ⊆ {2, …, r-1}` with no two consecutive,
/// ordered by size and then by bitmask value.
pub fn commuting_index_sets(rank: usize) -> Vec<Vec<usize>> {
    // bit b stands for index b + 2
    let width = rank.saturating_sub(2);
    assert!(width < 64, "rank too large for bitmask enumeration");
    let mut masks: Vec<u64> = (0..1u64 << width).filter(|m| m & (m >> 1) == 0).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    masks
        .into_iter()
        .map(|m| (0..width).filter(|b| m >> b & 1 == 1).map(|b| b + 2).collect())
        .collect()
}

/// `A(α̃, 0)` built as products of commuting simple reflections `s_i`,
/// `2 <= i <= r-1`, without evaluating the partition function.
pub fn altset_closed_zero(ctx: &RankContext) -> AltSet {
    let alpha = ctx.highest_root();
    let mut elements: Vec<AltSetElement> = commuting_index_sets(ctx.rank())
        .iter()
        .map(|indices| {
            let sigma = weyl::product_of_simple_reflections(ctx, indices).expect("indices lie in 2..=r-1");
            // σ(α̃+ρ) - ρ = α̃ - Σ α_{i_j}
            let t = indices
                .iter()
                .fold(alpha.clone(), |acc, &i| &acc - &ctx.simple_roots()[i - 1]);
            AltSetElement::new(sigma, t)
        })
        .collect();
    elements.sort_by(|a, b| a.permutation.cmp(&b.permutation));
    AltSet {
        ctx: ctx.clone(),
        lambda: alpha.clone(),
        mu: ctx.zero(),
        elements,
    }
}

/// `A(α̃, μ)` for dominant `μ != 0`: `{1}` when `μ = α̃`, empty otherwise.
pub fn altset_closed_nonzero(ctx: &RankContext, mu: &EpsVector) -> Result<AltSet> {
    check_dominant(ctx, "μ", mu)?;
    if mu.is_zero() {
        return Err(Error::InvalidInput(
            "μ = 0 is handled by the zero-weight alternation set".into(),
        ));
    }
    let elements = if mu == ctx.highest_root() {
        vec![AltSetElement::new(Permutation::identity(ctx.n()), ctx.zero())]
    } else {
        Vec::new()
    };
    Ok(AltSet {
        ctx: ctx.clone(),
        lambda: ctx.highest_root().clone(),
        mu: mu.clone(),
        elements,
    })
}

/// Largest length in `A(α̃, 0)`.
pub fn max_length(ctx: &RankContext) -> usize {
    closed::max_length(ctx.rank())
}

/// `σ(1) = 1`, `σ(n) = n` and `|σ(i) - i| <= 1` for all `i`.
pub fn fixes_ends_near_identity(sigma: &Permutation) -> bool {
    let n = sigma.degree();
    sigma.image(1) == 1 && sigma.image(n) == n && sigma.max_displacement() <= 1
}
