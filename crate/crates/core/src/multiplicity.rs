//! Kostant's weight multiplicity formula and Lusztig's q-analog.
//!
//! `m(λ, μ) = Σ_{σ ∈ W} ε(σ) ℘(σ(λ+ρ) - (μ+ρ))`, with `m_q` defined the same
//! way from `℘_q`. Three backends are available: the full Weyl sum, the sum
//! restricted to permutations passing the partial-sum positivity test, and
//! (for `λ = α̃`) the closed form for the adjoint representation.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::Serialize;

use crate::closed;
use crate::error::{Error, Result};
use crate::partition::{self, LocalMemo, Tally};
use crate::qpoly::QPoly;
use crate::rootsys::{EpsVector, RankContext};
use crate::weyl::{self, Permutation};
use crate::DEFAULT_MAX_N;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Backend {
    FullSum,
    PositivityPruned,
    ClosedForm,
}

impl Backend {
    pub fn as_str(self) -> &'static str {
        match self {
            Backend::FullSum => "full_sum",
            Backend::PositivityPruned => "positivity_pruned",
            Backend::ClosedForm => "closed_form",
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Backend {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" | "full_sum" => Ok(Backend::FullSum),
            "pruned" | "positivity_pruned" => Ok(Backend::PositivityPruned),
            "closed" | "closed_form" => Ok(Backend::ClosedForm),
            other => Err(Error::InvalidInput(format!("unknown backend `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityResult<T> {
    pub value: T,
    /// Number of permutations whose partition function was evaluated.
    pub terms_evaluated: u64,
    pub backend: Backend,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MultOptions {
    /// Largest `n` for which the Weyl sum is attempted.
    pub max_n: usize,
}

impl Default for MultOptions {
    fn default() -> Self {
        Self { max_n: DEFAULT_MAX_N }
    }
}

/// Signed accumulation of tallies.
trait Signed: Tally {
    type Acc: Send + Clone;
    fn acc_zero() -> Self::Acc;
    fn acc_add(acc: &mut Self::Acc, value: &Self, sign: i32);
    fn acc_merge(acc: &mut Self::Acc, other: &Self::Acc);
}

impl Signed for num_bigint::BigUint {
    type Acc = BigInt;

    fn acc_zero() -> BigInt {
        BigInt::default()
    }

    fn acc_add(acc: &mut BigInt, value: &Self, sign: i32) {
        let v = BigInt::from(value.clone());
        if sign > 0 {
            *acc += v;
        } else {
            *acc -= v;
        }
    }

    fn acc_merge(acc: &mut BigInt, other: &BigInt) {
        *acc += other;
    }
}

impl Signed for QPoly {
    type Acc = QPoly;

    fn acc_zero() -> QPoly {
        QPoly::zero()
    }

    fn acc_add(acc: &mut QPoly, value: &Self, sign: i32) {
        if sign > 0 {
            *acc += value;
        } else {
            *acc -= value;
        }
    }

    fn acc_merge(acc: &mut QPoly, other: &QPoly) {
        *acc += other;
    }
}

fn weyl_sum<T: Signed>(
    ctx: &RankContext,
    lambda: &EpsVector,
    mu: &EpsVector,
    pruned: bool,
    opts: MultOptions,
) -> Result<(T::Acc, u64)> {
    check_inputs(ctx, lambda, mu)?;
    if ctx.n() > opts.max_n {
        return Err(Error::ResourceLimit {
            n: ctx.n(),
            ceiling: opts.max_n,
        });
    }
    let shifted = lambda + ctx.rho();
    let base = mu + ctx.rho();
    let parts = weyl::par_map_blocks(ctx.n(), |block| -> Result<(T::Acc, u64)> {
        let mut memo = LocalMemo::<T>::default();
        let mut acc = T::acc_zero();
        let mut touched = 0u64;
        let mut coords = vec![0i64; ctx.n()];
        for sigma in block {
            for (k, &img) in sigma.zero_based().iter().enumerate() {
                coords[img] = shifted.coords()[k];
            }
            coords.iter_mut().zip(base.coords()).for_each(|(c, b)| *c -= b);
            if pruned && !partition::partial_sums_nonnegative(&coords) {
                continue;
            }
            touched += 1;
            let value: T = partition::count_with(ctx, &EpsVector::new(coords.clone()), &mut memo)?;
            if !value.vanishes() {
                T::acc_add(&mut acc, &value, sigma.sign());
            }
        }
        Ok((acc, touched))
    });
    let mut total = T::acc_zero();
    let mut touched = 0;
    for p in parts {
        let (acc, t) = p?;
        T::acc_merge(&mut total, &acc);
        touched += t;
    }
    Ok((total, touched))
}

fn check_inputs(ctx: &RankContext, lambda: &EpsVector, mu: &EpsVector) -> Result<()> {
    ctx.check_len(lambda)?;
    ctx.check_len(mu)?;
    if !lambda.is_dominant() {
        return Err(Error::InvalidWeight(format!(
            "λ = {lambda} is not dominant (coordinates must be weakly decreasing)"
        )));
    }
    Ok(())
}

fn require_highest_root(ctx: &RankContext, lambda: &EpsVector) -> Result<()> {
    if lambda != ctx.highest_root() {
        return Err(Error::InvalidInput(format!(
            "the closed-form backend only covers λ = α̃ = {}, got {lambda}",
            ctx.highest_root()
        )));
    }
    Ok(())
}

pub fn mult(
    ctx: &RankContext,
    lambda: &EpsVector,
    mu: &EpsVector,
    backend: Backend,
) -> Result<MultiplicityResult<BigInt>> {
    mult_with(ctx, lambda, mu, backend, MultOptions::default())
}

/// `m(λ, μ)`. `μ` need not be dominant.
pub fn mult_with(
    ctx: &RankContext,
    lambda: &EpsVector,
    mu: &EpsVector,
    backend: Backend,
    opts: MultOptions,
) -> Result<MultiplicityResult<BigInt>> {
    let (value, terms_evaluated) = match backend {
        Backend::FullSum => weyl_sum::<num_bigint::BigUint>(ctx, lambda, mu, false, opts)?,
        Backend::PositivityPruned => weyl_sum::<num_bigint::BigUint>(ctx, lambda, mu, true, opts)?,
        Backend::ClosedForm => {
            check_inputs(ctx, lambda, mu)?;
            require_highest_root(ctx, lambda)?;
            (BigInt::from(adjoint_multiplicity(ctx, mu)?), 0)
        }
    };
    Ok(MultiplicityResult {
        value,
        terms_evaluated,
        backend,
    })
}

pub fn mult_q(
    ctx: &RankContext,
    lambda: &EpsVector,
    mu: &EpsVector,
    backend: Backend,
) -> Result<MultiplicityResult<QPoly>> {
    mult_q_with(ctx, lambda, mu, backend, MultOptions::default())
}

/// `m_q(λ, μ)`.
///
/// The closed-form backend first moves `μ` to the dominant chamber; the Weyl
/// sums take `μ` as given.
pub fn mult_q_with(
    ctx: &RankContext,
    lambda: &EpsVector,
    mu: &EpsVector,
    backend: Backend,
    opts: MultOptions,
) -> Result<MultiplicityResult<QPoly>> {
    let (value, terms_evaluated) = match backend {
        Backend::FullSum => weyl_sum::<QPoly>(ctx, lambda, mu, false, opts)?,
        Backend::PositivityPruned => weyl_sum::<QPoly>(ctx, lambda, mu, true, opts)?,
        Backend::ClosedForm => {
            check_inputs(ctx, lambda, mu)?;
            require_highest_root(ctx, lambda)?;
            let value = match classify_adjoint(ctx, mu) {
                AdjointClass::Zero => closed::exponent_poly(ctx.rank()),
                AdjointClass::Root => QPoly::one(),
                AdjointClass::Other => QPoly::zero(),
            };
            (value, 0)
        }
    };
    Ok(MultiplicityResult {
        value,
        terms_evaluated,
        backend,
    })
}

/// The weakly decreasing rearrangement of `μ` and a permutation `w` with
/// `w(μ)` equal to it. Ties keep their original relative order, which makes
/// `w` unique.
pub fn dominant_conjugate(ctx: &RankContext, mu: &EpsVector) -> Result<(EpsVector, Permutation)> {
    ctx.check_len(mu)?;
    let mut order: Vec<usize> = (0..ctx.n()).collect();
    order.sort_by_key(|&k| std::cmp::Reverse(mu.coords()[k]));
    let mut images = vec![0usize; ctx.n()];
    for (pos, &k) in order.iter().enumerate() {
        images[k] = pos + 1;
    }
    let sorted = EpsVector::new(order.iter().map(|&k| mu.coords()[k]).collect());
    Ok((sorted, Permutation::new(images)?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum AdjointClass {
    Zero,
    Root,
    Other,
}

fn classify_adjoint(ctx: &RankContext, mu: &EpsVector) -> AdjointClass {
    if mu.sum() != 0 {
        return AdjointClass::Other;
    }
    let (dominant, _) = dominant_conjugate(ctx, mu).expect("length checked by caller");
    if dominant.is_zero() {
        AdjointClass::Zero
    } else if &dominant == ctx.highest_root() {
        AdjointClass::Root
    } else {
        AdjointClass::Other
    }
}

/// `m(α̃, μ)` without a Weyl sum: `r` at `μ = 0`, `1` on the roots, `0` otherwise.
pub fn adjoint_multiplicity(ctx: &RankContext, mu: &EpsVector) -> Result<u64> {
    ctx.check_len(mu)?;
    Ok(match classify_adjoint(ctx, mu) {
        AdjointClass::Zero => ctx.rank() as u64,
        AdjointClass::Root => 1,
        AdjointClass::Other => 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::seq::IteratorRandom;
    use rand::SeedableRng;

    fn ctx(r: usize) -> RankContext {
        RankContext::new(r).unwrap()
    }

    const ALL: [Backend; 3] = [Backend::FullSum, Backend::PositivityPruned, Backend::ClosedForm];

    #[test]
    fn zero_weight_multiplicity_is_rank() {
        for r in 1..=7 {
            let c = ctx(r);
            for b in ALL {
                let res = mult(&c, c.highest_root(), &c.zero(), b).unwrap();
                assert_eq!(res.value, BigInt::from(r), "r = {r}, {b}");
            }
            let pruned = mult(&c, c.highest_root(), &c.zero(), Backend::PositivityPruned).unwrap();
            assert_eq!(
                pruned.terms_evaluated,
                u64::try_from(closed::fibonacci(r)).unwrap()
            );
            let full = mult(&c, c.highest_root(), &c.zero(), Backend::FullSum).unwrap();
            assert_eq!(full.terms_evaluated, weyl::factorial(r + 1));
        }
    }

    #[test]
    fn highest_weight_examples() {
        for r in 1..=4 {
            let c = ctx(r);
            let a = c.highest_root();
            for b in ALL {
                assert_eq!(mult(&c, a, a, b).unwrap().value, BigInt::from(1));
                assert_eq!(mult(&c, a, &a.scale(2), b).unwrap().value, BigInt::from(0));
                assert_eq!(mult_q(&c, a, a, b).unwrap().value, QPoly::one());
            }
        }
    }

    #[test]
    fn q_multiplicity_gives_exponents() {
        for r in 1..=6 {
            let c = ctx(r);
            for b in ALL {
                let res = mult_q(&c, c.highest_root(), &c.zero(), b).unwrap();
                assert_eq!(res.value, closed::exponent_poly(r));
                assert_eq!(res.value.support(), (1..=r).collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn dominant_conjugate_examples() {
        let c = ctx(2);
        let (d, w) = dominant_conjugate(&c, &c.zero()).unwrap();
        assert_eq!(d, c.zero());
        assert!(w.is_identity());
        let mu = EpsVector::new(vec![-1, 0, 1]);
        let (d, w) = dominant_conjugate(&c, &mu).unwrap();
        assert_eq!(&d, c.highest_root());
        assert_eq!(w.act(&mu).unwrap(), d);
        for r in 1..=5 {
            let c = ctx(r);
            for i in 1..=c.n() {
                for j in 1..=c.n() {
                    if i != j {
                        let beta = c.root(i, j).unwrap();
                        let (d, w) = dominant_conjugate(&c, &beta).unwrap();
                        assert_eq!(&d, c.highest_root());
                        assert_eq!(w.act(&beta).unwrap(), d);
                    }
                }
            }
        }
        // ties broken by original position
        let (_, w) = dominant_conjugate(&ctx(3), &EpsVector::new(vec![0, 1, 0, -1])).unwrap();
        assert_eq!(w.images(), vec![2, 1, 3, 4]);
    }

    #[test]
    fn adjoint_examples() {
        let c = ctx(3);
        assert_eq!(adjoint_multiplicity(&c, &c.zero()), Ok(3));
        assert_eq!(adjoint_multiplicity(&c, &c.root(2, 4).unwrap()), Ok(1));
        let varpi1 = EpsVector::new(vec![1, 0, 0, 0]);
        assert_eq!(adjoint_multiplicity(&c, &varpi1), Ok(0));
        assert_eq!(
            mult(&c, c.highest_root(), &varpi1, Backend::FullSum)
                .unwrap()
                .value,
            BigInt::from(0)
        );
        assert!(adjoint_multiplicity(&c, &EpsVector::new(vec![0, 0])).is_err());
    }

    #[test]
    fn errors() {
        let c = ctx(3);
        let not_dominant = EpsVector::new(vec![0, 1, 0, -1]);
        assert!(matches!(
            mult(&c, &not_dominant, &c.zero(), Backend::FullSum),
            Err(Error::InvalidWeight(_))
        ));
        let lambda = EpsVector::new(vec![2, 0, -1, -1]);
        assert!(matches!(
            mult(&c, &lambda, &c.zero(), Backend::ClosedForm),
            Err(Error::InvalidInput(_))
        ));
        let opts = MultOptions { max_n: 3 };
        assert_eq!(
            mult_with(&c, c.highest_root(), &c.zero(), Backend::FullSum, opts),
            Err(Error::ResourceLimit { n: 4, ceiling: 3 })
        );
        assert_eq!("pruned".parse::<Backend>(), Ok(Backend::PositivityPruned));
        assert!("fast".parse::<Backend>().is_err());
    }

    #[test]
    fn other_highest_weights_agree_across_backends() {
        for r in 1..=3 {
            let c = ctx(r);
            let lambdas = [vec![1; r], vec![2; r], {
                let mut v = vec![0; r];
                v[0] = 3;
                v
            }];
            for coeffs in lambdas {
                let lambda = c.from_fundamental_coeffs(&coeffs).unwrap();
                let mut mu_coords = vec![-2i64; c.n()];
                loop {
                    let mu = EpsVector::new(mu_coords.clone());
                    let full = mult(&c, &lambda, &mu, Backend::FullSum).unwrap().value;
                    let pruned = mult(&c, &lambda, &mu, Backend::PositivityPruned).unwrap().value;
                    assert_eq!(full, pruned);
                    let q = mult_q(&c, &lambda, &mu, Backend::PositivityPruned).unwrap().value;
                    assert_eq!(q.eval_at_one(), full);
                    let mut k = 0;
                    while k < c.n() && mu_coords[k] == 2 {
                        mu_coords[k] = -2;
                        k += 1;
                    }
                    if k == c.n() {
                        break;
                    }
                    mu_coords[k] += 1;
                }
            }
        }
    }

    #[test]
    fn dimension_of_sl3_rep_with_highest_weight_2varpi1() {
        // L(2ϖ_1) of sl_3 is Sym^2 C^3: six weights of multiplicity one.
        let c = ctx(2);
        let lambda = c.from_fundamental_coeffs(&[2, 0]).unwrap();
        let mut total = BigInt::from(0);
        for a in -3i64..=3 {
            for b in -3i64..=3 {
                for d in -3i64..=3 {
                    let mu = EpsVector::new(vec![a, b, d]);
                    if mu.sum() != lambda.sum() {
                        continue;
                    }
                    total += mult(&c, &lambda, &mu, Backend::PositivityPruned).unwrap().value;
                }
            }
        }
        assert_eq!(total, BigInt::from(6));
    }

    #[test]
    fn skipped_permutations_contribute_nothing() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for r in 2..=6 {
            let c = ctx(r);
            let mus = [
                c.zero(),
                c.highest_root().clone(),
                EpsVector::new({
                    let mut v = vec![0; c.n()];
                    v[0] = 2;
                    v[1] = -1;
                    v[c.n() - 1] = -1;
                    v
                }),
            ];
            for mu in &mus {
                let skipped = weyl::enumerate(&c).filter(|s| {
                    let t = crate::altset::translate(&c, s, c.highest_root(), mu).unwrap();
                    !partition::is_positive(&c, &t).unwrap()
                });
                for sigma in skipped.choose_multiple(&mut rng, 200) {
                    let t = crate::altset::translate(&c, &sigma, c.highest_root(), mu).unwrap();
                    assert!(
                        num_traits::Zero::is_zero(&partition::kostant(&c, &t).unwrap()),
                        "{sigma}"
                    );
                }
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn weyl_invariance(
            (r, coords) in (1usize..=4).prop_flat_map(|r| (Just(r), prop::collection::vec(-2i64..=2, r)))
        ) {
            let c = ctx(r);
            let mut mu = coords.clone();
            mu.push(-coords.iter().sum::<i64>());
            let mu = EpsVector::new(mu);
            let (dominant, _) = dominant_conjugate(&c, &mu).unwrap();
            let a = c.highest_root();
            let lambda = c.from_fundamental_coeffs(&vec![1; r]).unwrap();
            for l in [a, &lambda] {
                if l.sum() != 0 { continue; }
                let m1 = mult(&c, l, &mu, Backend::FullSum).unwrap().value;
                let m2 = mult(&c, l, &dominant, Backend::FullSum).unwrap().value;
                prop_assert_eq!(m1, m2);
            }
            prop_assert_eq!(
                mult(&c, a, &mu, Backend::FullSum).unwrap().value,
                BigInt::from(adjoint_multiplicity(&c, &mu).unwrap())
            );
        }
    }
}
