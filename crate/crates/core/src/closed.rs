//! Closed-form expressions attached to the highest root of `sl_{r+1}`.
//!
//! Nothing here enumerates the Weyl group or evaluates a partition function;
//! these are the formulas the brute-force routines are compared against.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::qpoly::QPoly;

/// `F_m` with `F_1 = F_2 = 1` (and `F_0 = 0`).
pub fn fibonacci(m: usize) -> BigUint {
    let (mut a, mut b) = (BigUint::zero(), BigUint::one());
    for _ in 0..m {
        let next = &a + &b;
        a = std::mem::replace(&mut b, next);
    }
    a
}

/// `C(n, k)`, zero when `k > n` or `n < 0`.
pub fn binomial(n: i64, k: i64) -> BigUint {
    if n < 0 || k < 0 || k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k) as u64;
    let n = n as u64;
    (0..k).fold(BigUint::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// Number of length-`k` elements in the alternation set of `(α̃, 0)`: `C(r-1-k, k)`.
pub fn level_count(rank: usize, k: usize) -> BigUint {
    binomial(rank as i64 - 1 - k as i64, k as i64)
}

/// `⌊(r-1)/2⌋`.
pub fn max_length(rank: usize) -> usize {
    rank.saturating_sub(1) / 2
}

/// `q^{1+ℓ}(1+q)^{r-1-2ℓ}`, or `None` when `2ℓ > r-1`.
pub fn translate_q(rank: usize, length: usize) -> Option<QPoly> {
    let power = (rank - 1).checked_sub(2 * length)?;
    Some(QPoly::binom_expand(power).shift(1 + length))
}

/// `2^{r-1-2ℓ}`, or `None` when `2ℓ > r-1`.
pub fn translate_count(rank: usize, length: usize) -> Option<BigUint> {
    let power = (rank - 1).checked_sub(2 * length)?;
    Some(BigUint::one() << power)
}

/// `q + q^2 + ⋯ + q^r`.
pub fn exponent_poly(rank: usize) -> QPoly {
    QPoly::geometric(1, rank)
}

/// `Σ_k (-1)^k C(r-1-k, k) q^{1+k} (1+q)^{r-1-2k}` for `0 <= k <= ⌊(r-1)/2⌋`.
pub fn alternating_sum(rank: usize) -> QPoly {
    (0..=max_length(rank))
        .map(|k| {
            let c = BigInt::from(level_count(rank, k));
            let c = if k % 2 == 0 { c } else { -c };
            translate_q(rank, k).expect("k within range").scalar_mul(&c)
        })
        .sum()
}

/// `Σ_{k <= m/2} (-1)^k C(m-k, k) q^k (1+q)^{m-2k}`.
pub fn wilf_sum(m: usize) -> QPoly {
    (0..=m / 2)
        .map(|k| {
            let c = BigInt::from(binomial((m - k) as i64, k as i64));
            let c = if k % 2 == 0 { c } else { -c };
            QPoly::binom_expand(m - 2 * k).shift(k).scalar_mul(&c)
        })
        .sum()
}

/// `(1 - q^{m+1}) / (1 - q) = 1 + q + ⋯ + q^m`.
pub fn geometric_quotient(m: usize) -> QPoly {
    QPoly::geometric(0, m)
}

/// `F_r(t) = Σ_k C(r-1-k, k) t^k`, with `F_r(1) = F_r`.
pub fn fibonacci_t_analog(rank: usize) -> QPoly {
    QPoly::from_coeffs((0..=max_length(rank)).map(|k| BigInt::from(level_count(rank, k))))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fibonacci_values() {
        let want = [0u32, 1, 1, 2, 3, 5, 8, 13, 21, 34];
        for (m, w) in want.iter().enumerate() {
            assert_eq!(fibonacci(m), BigUint::from(*w));
        }
        assert_eq!(fibonacci(90), BigUint::from(2880067194370816120u64));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigUint::from(10u8));
        assert_eq!(binomial(3, 4), BigUint::zero());
        assert_eq!(binomial(-1, 0), BigUint::zero());
        assert_eq!(level_count(6, 2), BigUint::from(3u8));
        assert_eq!(level_count(6, 1), BigUint::from(4u8));
        assert_eq!(level_count(6, 3), BigUint::zero());
    }

    #[test]
    fn max_lengths() {
        assert_eq!(max_length(1), 0);
        assert_eq!(max_length(5), 2);
        assert_eq!(max_length(8), 3);
    }

    #[test]
    fn translate_forms() {
        assert_eq!(translate_q(3, 0), Some(QPoly::from_coeffs([0, 1, 2, 1])));
        assert_eq!(translate_q(3, 1), Some(QPoly::monomial(1, 2)));
        assert_eq!(translate_q(3, 2), None);
        assert_eq!(translate_count(5, 0), Some(BigUint::from(16u8)));
        assert_eq!(translate_count(5, 2), Some(BigUint::one()));
    }

    #[test]
    fn small_alternating_sums() {
        // r = 3: q(1+q)^2 - q^2 = q + q^2 + q^3
        assert_eq!(alternating_sum(3), exponent_poly(3));
        assert_eq!(alternating_sum(1), QPoly::monomial(1, 1));
    }

    #[test]
    fn t_analog_at_one() {
        for r in 1..=60 {
            assert_eq!(
                fibonacci_t_analog(r).eval_at_one(),
                BigInt::from(fibonacci(r)),
                "r = {r}"
            );
        }
    }
}
