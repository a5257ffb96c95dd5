//! Kostant's partition function and its q-analog.
//!
//! The count runs over the positive roots in lexicographic `(i, j)` order.
//! Once every root `ε_i - ε_j` with first index `i` has been assigned a
//! coefficient, coordinate `i` of the residual can never change again, so it
//! must be exhausted exactly; while inside that block, each coefficient is
//! bounded by the current `i`-th partial sum of the residual (which equals its
//! `i`-th coordinate, the earlier ones being zero already).

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::Result;
use crate::qpoly::QPoly;
use crate::rootsys::{EpsVector, RankContext};

/// A value accumulated over root decompositions: a plain count, or a
/// polynomial recording the number of roots used.
pub trait Tally: Clone + Send + Sync {
    fn nothing() -> Self;
    fn single() -> Self;
    fn vanishes(&self) -> bool;
    fn accumulate(&mut self, other: &Self);
    /// Account for `parts` additional roots.
    fn with_parts(&self, parts: u64) -> Self;
}

impl Tally for BigUint {
    fn nothing() -> Self {
        Zero::zero()
    }

    fn single() -> Self {
        One::one()
    }

    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }

    fn accumulate(&mut self, other: &Self) {
        *self += other;
    }

    fn with_parts(&self, _parts: u64) -> Self {
        self.clone()
    }
}

impl Tally for QPoly {
    fn nothing() -> Self {
        QPoly::zero()
    }

    fn single() -> Self {
        QPoly::one()
    }

    fn vanishes(&self) -> bool {
        QPoly::is_zero(self)
    }

    fn accumulate(&mut self, other: &Self) {
        *self += other;
    }

    fn with_parts(&self, parts: u64) -> Self {
        self.shift(parts as usize)
    }
}

type Key = (usize, Vec<i64>);

/// Memo table for the partition DP, keyed on `(root index, residual)`.
pub trait Memo<T> {
    fn lookup(&self, key: &Key) -> Option<T>;
    fn store(&mut self, key: Key, value: T);
}

/// A private, single-owner memo table.
#[derive(Debug)]
pub struct LocalMemo<T>(HashMap<Key, T>);

impl<T> Default for LocalMemo<T> {
    fn default() -> Self {
        Self(HashMap::new())
    }
}

impl<T> LocalMemo<T> {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl<T: Clone> Memo<T> for LocalMemo<T> {
    fn lookup(&self, key: &Key) -> Option<T> {
        self.0.get(key).cloned()
    }

    fn store(&mut self, key: Key, value: T) {
        self.0.insert(key, value);
    }
}

/// A memo table shared between threads. Duplicate computation under
/// contention is allowed; every writer stores the same value.
#[derive(Debug)]
pub struct SharedMemo<T>(Arc<RwLock<HashMap<Key, T>>>);

impl<T> Clone for SharedMemo<T> {
    fn clone(&self) -> Self {
        Self(Arc::clone(&self.0))
    }
}

impl<T> Default for SharedMemo<T> {
    fn default() -> Self {
        Self(Arc::new(RwLock::new(HashMap::new())))
    }
}

impl<T> SharedMemo<T> {
    pub fn len(&self) -> usize {
        self.0.read().expect("memo lock poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl<T: Clone> Memo<T> for SharedMemo<T> {
    fn lookup(&self, key: &Key) -> Option<T> {
        self.0.read().expect("memo lock poisoned").get(key).cloned()
    }

    fn store(&mut self, key: Key, value: T) {
        self.0
            .write()
            .expect("memo lock poisoned")
            .entry(key)
            .or_insert(value);
    }
}

/// Sums `T` over all nonnegative integer combinations of positive roots equal to `target`.
pub fn count_with<T: Tally>(ctx: &RankContext, target: &EpsVector, memo: &mut impl Memo<T>) -> Result<T> {
    ctx.check_len(target)?;
    if target.sum() != 0 {
        return Ok(T::nothing());
    }
    if ctx.n() == 1 {
        return Ok(T::single());
    }
    let mut residual = target.coords().to_vec();
    Ok(descend(ctx.root_pairs(), 0, &mut residual, memo))
}

fn descend<T: Tally>(
    roots: &[(usize, usize)],
    k: usize,
    residual: &mut Vec<i64>,
    memo: &mut impl Memo<T>,
) -> T {
    let Some(&(i, j)) = roots.get(k) else {
        return if residual.iter().all(|&c| c == 0) {
            T::single()
        } else {
            T::nothing()
        };
    };
    let budget = residual[i];
    if budget < 0 {
        return T::nothing();
    }
    let key = (k, residual[i..].to_vec());
    if let Some(hit) = memo.lookup(&key) {
        return hit;
    }
    let last_in_block = j + 1 == residual.len();
    let choices = if last_in_block {
        budget..=budget
    } else {
        0..=budget
    };
    let mut total = T::nothing();
    for c in choices {
        residual[i] -= c;
        residual[j] += c;
        let sub = descend(roots, k + 1, residual, memo);
        residual[i] += c;
        residual[j] -= c;
        if !sub.vanishes() {
            total.accumulate(&sub.with_parts(c as u64));
        }
    }
    memo.store(key, total.clone());
    total
}

/// `℘(ξ)`: the number of ways to write `ξ` as a nonnegative integral sum of
/// positive roots. Zero whenever the coordinates do not sum to zero.
pub fn kostant(ctx: &RankContext, target: &EpsVector) -> Result<BigUint> {
    count_with(ctx, target, &mut LocalMemo::default())
}

/// `℘_q(ξ)`: the coefficient of `q^j` counts expressions using exactly `j` roots.
pub fn kostant_q(ctx: &RankContext, target: &EpsVector) -> Result<QPoly> {
    count_with(ctx, target, &mut LocalMemo::default())
}

/// `℘(ξ) > 0`, decided by the partial sums `(ϖ_i, ξ) = ξ_1 + ⋯ + ξ_i`
/// alone: all must be nonnegative and the full sum zero.
pub fn is_positive(ctx: &RankContext, target: &EpsVector) -> Result<bool> {
    ctx.check_len(target)?;
    Ok(partial_sums_nonnegative(target.coords()))
}

pub(crate) fn partial_sums_nonnegative(coords: &[i64]) -> bool {
    let mut acc = 0i64;
    for &c in coords {
        acc += c;
        if acc < 0 {
            return false;
        }
    }
    acc == 0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use proptest::prelude::*;

    fn v(c: &[i64]) -> EpsVector {
        EpsVector::new(c.to_vec())
    }

    /// Brute force over coefficient vectors with total at most the height.
    fn brute(ctx: &RankContext, target: &EpsVector) -> Vec<u64> {
        let n = ctx.n() as i64;
        let height: i64 = target
            .coords()
            .iter()
            .enumerate()
            .map(|(i, c)| (n - 1 - i as i64) * c)
            .sum();
        let mut by_parts = vec![0u64; height.max(0) as usize + 1];
        if height < 0 {
            return by_parts;
        }
        let roots = ctx.positive_roots();
        let mut coeffs = vec![0i64; roots.len()];
        fn rec(
            idx: usize,
            left: i64,
            coeffs: &mut Vec<i64>,
            roots: &[EpsVector],
            target: &EpsVector,
            out: &mut Vec<u64>,
        ) {
            if idx == roots.len() {
                let mut sum = vec![0i64; target.len()];
                for (c, r) in coeffs.iter().zip(roots) {
                    for (s, x) in sum.iter_mut().zip(r.coords()) {
                        *s += c * x;
                    }
                }
                if sum == target.coords() {
                    out[coeffs.iter().sum::<i64>() as usize] += 1;
                }
                return;
            }
            for c in 0..=left {
                coeffs[idx] = c;
                rec(idx + 1, left - c, coeffs, roots, target, out);
            }
            coeffs[idx] = 0;
        }
        rec(0, height, &mut coeffs, roots, target, &mut by_parts);
        by_parts
    }

    #[test]
    fn basic_values() {
        for r in 1..=6 {
            let ctx = RankContext::new(r).unwrap();
            assert_eq!(kostant(&ctx, &ctx.zero()).unwrap(), BigUint::from(1u8));
            assert_eq!(kostant(&ctx, &ctx.simple_roots()[0]).unwrap(), BigUint::from(1u8));
            assert_eq!(kostant_q(&ctx, &ctx.zero()).unwrap(), QPoly::one());
        }
        let ctx = RankContext::new(2).unwrap();
        assert_eq!(kostant(&ctx, &v(&[1, 0, -1])).unwrap(), BigUint::from(2u8));
        assert_eq!(brute(&ctx, &v(&[1, 0, -1])), vec![0, 1, 1]);
    }

    #[test]
    fn highest_root_closed_form() {
        for r in 1..=8 {
            let ctx = RankContext::new(r).unwrap();
            let a = ctx.highest_root();
            assert_eq!(kostant(&ctx, a).unwrap(), BigUint::from(1u8) << (r - 1));
            assert_eq!(kostant_q(&ctx, a).unwrap(), QPoly::binom_expand(r - 1).shift(1));
        }
    }

    #[test]
    fn off_slice_is_zero_and_length_checked() {
        let ctx = RankContext::new(3).unwrap();
        assert!(Zero::is_zero(&kostant(&ctx, &v(&[1, 0, 0, 0])).unwrap()));
        assert!(kostant_q(&ctx, &v(&[2, 1, 1, 1])).unwrap() == QPoly::zero());
        assert!(matches!(kostant(&ctx, &v(&[1, -1])), Err(Error::InvalidInput(_))));
        assert!(matches!(
            is_positive(&ctx, &v(&[1, -1])),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn positivity_examples() {
        let ctx = RankContext::new(2).unwrap();
        assert!(is_positive(&ctx, &v(&[1, 0, -1])).unwrap());
        assert!(!is_positive(&ctx, &v(&[-1, 1, 0])).unwrap());
        assert!(!is_positive(&ctx, &v(&[1, 0, 0])).unwrap());
    }

    #[test]
    fn matches_brute_force_on_small_grid() {
        for r in 1..=3 {
            let ctx = RankContext::new(r).unwrap();
            let n = ctx.n();
            let mut checked = 0;
            let mut coords = vec![-3i64; n];
            loop {
                let t = EpsVector::new(coords.clone());
                if t.sum() == 0 {
                    let want = brute(&ctx, &t);
                    let got = kostant_q(&ctx, &t).unwrap();
                    let want_poly = QPoly::from_coeffs(want.iter().copied());
                    assert_eq!(got, want_poly, "{t}");
                    assert_eq!(
                        kostant(&ctx, &t).unwrap(),
                        BigUint::from(want.iter().sum::<u64>())
                    );
                    assert_eq!(is_positive(&ctx, &t).unwrap(), got != QPoly::zero(), "{t}");
                    checked += 1;
                }
                let mut k = 0;
                while k < n && coords[k] == 3 {
                    coords[k] = -3;
                    k += 1;
                }
                if k == n {
                    break;
                }
                coords[k] += 1;
            }
            assert!(checked > 0);
        }
    }

    #[test]
    fn shared_memo_gives_identical_values() {
        let ctx = RankContext::new(4).unwrap();
        let mut shared = SharedMemo::<QPoly>::default();
        let targets = [v(&[2, 0, 1, -1, -2]), v(&[1, 1, 0, -1, -1]), v(&[1, 0, 0, 0, -1])];
        for t in &targets {
            assert_eq!(
                count_with(&ctx, t, &mut shared).unwrap(),
                kostant_q(&ctx, t).unwrap()
            );
        }
        assert!(!shared.is_empty());
        // second pass is served from the memo
        for t in &targets {
            assert_eq!(
                count_with(&ctx, t, &mut shared).unwrap(),
                kostant_q(&ctx, t).unwrap()
            );
        }
    }

    proptest! {
        #[test]
        fn q_analog_specializes(
            (r, coords) in (1usize..6).prop_flat_map(|r| (Just(r), prop::collection::vec(-3i64..4, r)))
        ) {
            let ctx = RankContext::new(r).unwrap();
            let mut c = coords.clone();
            c.push(-coords.iter().sum::<i64>());
            let t = EpsVector::new(c);
            let poly = kostant_q(&ctx, &t).unwrap();
            let count = kostant(&ctx, &t).unwrap();
            prop_assert!(poly.has_nonnegative_coeffs());
            prop_assert_eq!(poly.eval_at_one(), num_bigint::BigInt::from(count.clone()));
            prop_assert_eq!(is_positive(&ctx, &t).unwrap(), !Zero::is_zero(&count));
        }
    }
}
