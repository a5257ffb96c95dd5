//! Type A root-system data in ε-coordinates.
//!
//! A vector of `h*` for `sl_n` is stored as the integer tuple of its
//! pairings with `ε_1, …, ε_n`. Roots and root-lattice weights have
//! coordinate sum zero. `ρ` is kept as `(n-1, …, 1, 0)`; it only ever enters
//! through differences `σ(λ+ρ) - (μ+ρ)`, in which the offset cancels.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::Serialize;

use crate::error::{Error, Result};

/// An integer vector in ε-coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct EpsVector(Vec<i64>);

impl EpsVector {
    pub fn new(coords: Vec<i64>) -> Self {
        Self(coords)
    }

    pub fn zero(n: usize) -> Self {
        Self(vec![0; n])
    }

    /// The basis vector `ε_k` (1-indexed).
    pub fn basis(n: usize, k: usize) -> Self {
        let mut v = vec![0; n];
        v[k - 1] = 1;
        Self(v)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<i64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Weakly decreasing coordinates, i.e. nonnegative fundamental coefficients.
    pub fn is_dominant(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1])
    }

    /// Running sums `ξ_1, ξ_1 + ξ_2, …` over all `n` coordinates.
    pub fn partial_sums(&self) -> Vec<i64> {
        self.0
            .iter()
            .scan(0i64, |acc, &c| {
                *acc += c;
                Some(*acc)
            })
            .collect()
    }

    pub fn scale(&self, k: i64) -> Self {
        Self(self.0.iter().map(|c| c * k).collect())
    }
}

impl From<Vec<i64>> for EpsVector {
    fn from(v: Vec<i64>) -> Self {
        Self(v)
    }
}

impl fmt::Display for EpsVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Add for &EpsVector {
    type Output = EpsVector;

    fn add(self, rhs: &EpsVector) -> EpsVector {
        assert_eq!(self.len(), rhs.len(), "dimension mismatch");
        EpsVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &EpsVector {
    type Output = EpsVector;

    fn sub(self, rhs: &EpsVector) -> EpsVector {
        assert_eq!(self.len(), rhs.len(), "dimension mismatch");
        EpsVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &EpsVector {
    type Output = EpsVector;

    fn neg(self) -> EpsVector {
        EpsVector(self.0.iter().map(|c| -c).collect())
    }
}

/// Root-system constants for `sl_{r+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankContext {
    rank: usize,
    n: usize,
    positive_roots: Vec<EpsVector>,
    root_pairs: Vec<(usize, usize)>,
    simple_roots: Vec<EpsVector>,
    rho: EpsVector,
    highest_root: EpsVector,
}

impl RankContext {
    pub fn new(rank: usize) -> Result<Self> {
        if rank == 0 {
            return Err(Error::InvalidRank(rank));
        }
        let n = rank + 1;
        let root_pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let positive_roots = root_pairs.iter().map(|&(i, j)| root_vector(n, i, j)).collect();
        let simple_roots = (0..rank).map(|i| root_vector(n, i, i + 1)).collect();
        let rho = EpsVector((0..n).rev().map(|c| c as i64).collect());
        let highest_root = root_vector(n, 0, n - 1);
        Ok(Self {
            rank,
            n,
            positive_roots,
            root_pairs,
            simple_roots,
            rho,
            highest_root,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `ε_i - ε_j` for `i < j`, ordered lexicographically by `(i, j)`.
    pub fn positive_roots(&self) -> &[EpsVector] {
        &self.positive_roots
    }

    /// Zero-based `(i, j)` for each entry of [`positive_roots`](Self::positive_roots).
    pub fn root_pairs(&self) -> &[(usize, usize)] {
        &self.root_pairs
    }

    pub fn simple_roots(&self) -> &[EpsVector] {
        &self.simple_roots
    }

    /// `(n-1, n-2, …, 1, 0)`.
    pub fn rho(&self) -> &EpsVector {
        &self.rho
    }

    /// `ε_1 - ε_n`.
    pub fn highest_root(&self) -> &EpsVector {
        &self.highest_root
    }

    pub fn zero(&self) -> EpsVector {
        EpsVector::zero(self.n)
    }

    /// The root `ε_i - ε_j` with 1-indexed `i != j`.
    pub fn root(&self, i: usize, j: usize) -> Result<EpsVector> {
        for idx in [i, j] {
            if idx == 0 || idx > self.n {
                return Err(Error::InvalidIndex {
                    index: idx,
                    max: self.n,
                });
            }
        }
        if i == j {
            return Err(Error::InvalidInput(format!("ε_{i} - ε_{j} is not a root")));
        }
        Ok(root_vector(self.n, i - 1, j - 1))
    }

    pub fn check_len(&self, v: &EpsVector) -> Result<()> {
        if v.len() != self.n {
            return Err(Error::InvalidInput(format!(
                "expected {} ε-coordinates for rank {}, got {}",
                self.n,
                self.rank,
                v.len()
            )));
        }
        Ok(())
    }

    /// Validates a root-lattice weight: `n` coordinates summing to zero.
    pub fn weight(&self, coords: Vec<i64>) -> Result<EpsVector> {
        let v = EpsVector(coords);
        self.check_len(&v)?;
        if v.sum() != 0 {
            return Err(Error::InvalidWeight(format!(
                "{v} has coordinate sum {}, expected 0",
                v.sum()
            )));
        }
        Ok(v)
    }

    /// `(ϖ_i, ξ) = ξ_1 + ⋯ + ξ_i` for a trace-zero `ξ`.
    pub fn fundamental_pairing(&self, i: usize, xi: &EpsVector) -> Result<i64> {
        if i == 0 || i > self.rank {
            return Err(Error::InvalidIndex {
                index: i,
                max: self.rank,
            });
        }
        self.check_len(xi)?;
        if xi.sum() != 0 {
            return Err(Error::InvalidWeight(format!(
                "pairing with ϖ_{i} needs coordinate sum 0, {xi} sums to {}",
                xi.sum()
            )));
        }
        Ok(xi.coords()[..i].iter().sum())
    }

    /// `Σ a_i ϖ_i` in ε-coordinates.
    ///
    /// When `Σ i·a_i` is divisible by `n` the weight lies in the root lattice
    /// and the result has coordinate sum zero. Otherwise the sum-zero
    /// representative is fractional; the integral representative whose
    /// coordinate sum lies in `1..n` is returned instead, and everything
    /// downstream treats it as off the root lattice (partition function 0).
    pub fn from_fundamental_coeffs(&self, coeffs: &[i64]) -> Result<EpsVector> {
        if coeffs.len() != self.rank {
            return Err(Error::InvalidInput(format!(
                "expected {} fundamental coefficients for rank {}, got {}",
                self.rank,
                self.rank,
                coeffs.len()
            )));
        }
        // ϖ_i = ε_1 + ⋯ + ε_i, so coordinate j collects a_j + ⋯ + a_r.
        let mut coords = vec![0i64; self.n];
        for j in (0..self.rank).rev() {
            coords[j] = coords[j + 1] + coeffs[j];
        }
        let shift = coords.iter().sum::<i64>().div_euclid(self.n as i64);
        coords.iter_mut().for_each(|c| *c -= shift);
        Ok(EpsVector(coords))
    }

    /// Inverse of [`from_fundamental_coeffs`](Self::from_fundamental_coeffs):
    /// `a_i = ξ_i - ξ_{i+1}`, the pairing with the coroot of `α_i`.
    pub fn fundamental_coeffs(&self, xi: &EpsVector) -> Result<Vec<i64>> {
        self.check_len(xi)?;
        Ok(xi.coords().windows(2).map(|w| w[0] - w[1]).collect())
    }

    /// Whether `xi` is `±(ε_i - ε_j)` for some `i != j`.
    pub fn is_root(&self, xi: &EpsVector) -> bool {
        if xi.len() != self.n {
            return false;
        }
        let mut plus = 0;
        let mut minus = 0;
        for &c in xi.coords() {
            match c {
                0 => {}
                1 => plus += 1,
                -1 => minus += 1,
                _ => return false,
            }
        }
        plus == 1 && minus == 1
    }
}

fn root_vector(n: usize, i: usize, j: usize) -> EpsVector {
    let mut v = vec![0; n];
    v[i] = 1;
    v[j] = -1;
    EpsVector(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rank_one() {
        let ctx = RankContext::new(1).unwrap();
        assert_eq!(ctx.positive_roots(), &[EpsVector::new(vec![1, -1])]);
        assert_eq!(ctx.rho(), &EpsVector::new(vec![1, 0]));
        assert_eq!(ctx.highest_root(), &EpsVector::new(vec![1, -1]));
    }

    #[test]
    fn rank_two_roots_in_lex_order() {
        let ctx = RankContext::new(2).unwrap();
        let want: Vec<EpsVector> = [[1, -1, 0], [1, 0, -1], [0, 1, -1]]
            .iter()
            .map(|c| EpsVector::new(c.to_vec()))
            .collect();
        assert_eq!(ctx.positive_roots(), want.as_slice());
        assert_eq!(ctx.highest_root().coords(), &[1, 0, -1]);
    }

    #[test]
    fn highest_root_plus_rho_rank_four() {
        let ctx = RankContext::new(4).unwrap();
        assert_eq!((ctx.highest_root() + ctx.rho()).coords(), &[5, 3, 2, 1, -1]);
    }

    #[test]
    fn zero_rank_rejected() {
        assert_eq!(RankContext::new(0), Err(Error::InvalidRank(0)));
    }

    #[test]
    fn structural_invariants() {
        for r in 1..=9 {
            let ctx = RankContext::new(r).unwrap();
            let n = r + 1;
            assert_eq!(ctx.positive_roots().len(), n * (n - 1) / 2);
            assert_eq!(ctx.simple_roots().len(), r);
            let simple_sum = ctx.simple_roots().iter().fold(ctx.zero(), |acc, a| &acc + a);
            assert_eq!(&simple_sum, ctx.highest_root());
            for beta in ctx.positive_roots() {
                assert_eq!(beta.sum(), 0);
                assert_eq!(beta.coords().iter().filter(|&&c| c == 1).count(), 1);
                assert_eq!(beta.coords().iter().filter(|&&c| c == -1).count(), 1);
                let pairings: Vec<i64> = (1..=r)
                    .map(|i| ctx.fundamental_pairing(i, beta).unwrap())
                    .collect();
                assert!(pairings.iter().all(|&p| p == 0 || p == 1));
                assert!(pairings.contains(&1));
            }
            // (ϖ_i, Σ Φ+) = i(n - i)
            let total = ctx.positive_roots().iter().fold(ctx.zero(), |acc, b| &acc + b);
            for i in 1..=r {
                assert_eq!(ctx.fundamental_pairing(i, &total).unwrap(), (i * (n - i)) as i64);
            }
        }
    }

    #[test]
    fn pairing_examples() {
        let ctx2 = RankContext::new(2).unwrap();
        assert_eq!(ctx2.fundamental_pairing(1, ctx2.highest_root()), Ok(1));
        assert_eq!(ctx2.fundamental_pairing(2, &ctx2.simple_roots()[0]), Ok(0));
        let ctx4 = RankContext::new(4).unwrap();
        assert_eq!(ctx4.fundamental_pairing(2, ctx4.highest_root()), Ok(1));
    }

    #[test]
    fn pairing_errors() {
        let ctx = RankContext::new(2).unwrap();
        let a = ctx.highest_root().clone();
        assert_eq!(
            ctx.fundamental_pairing(0, &a),
            Err(Error::InvalidIndex { index: 0, max: 2 })
        );
        assert_eq!(
            ctx.fundamental_pairing(3, &a),
            Err(Error::InvalidIndex { index: 3, max: 2 })
        );
        assert!(matches!(
            ctx.fundamental_pairing(1, &EpsVector::new(vec![1, 0, 0])),
            Err(Error::InvalidWeight(_))
        ));
        assert!(matches!(
            ctx.fundamental_pairing(1, &EpsVector::new(vec![1, -1])),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn fundamental_coefficient_examples() {
        let ctx2 = RankContext::new(2).unwrap();
        assert_eq!(
            ctx2.from_fundamental_coeffs(&[1, 1]).unwrap().coords(),
            &[1, 0, -1]
        );
        assert_eq!(
            ctx2.from_fundamental_coeffs(&[0, 0]).unwrap().coords(),
            &[0, 0, 0]
        );
        let ctx1 = RankContext::new(1).unwrap();
        assert_eq!(ctx1.from_fundamental_coeffs(&[2]).unwrap().coords(), &[1, -1]);
        assert!(matches!(
            ctx2.from_fundamental_coeffs(&[1]),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn weights_off_root_lattice_keep_a_nonzero_sum() {
        let ctx = RankContext::new(3).unwrap();
        // ϖ_1 + ϖ_2 in sl_4: Σ i a_i = 3
        let w = ctx.from_fundamental_coeffs(&[1, 1, 0]).unwrap();
        assert_eq!(w.coords(), &[2, 1, 0, 0]);
        assert_eq!(ctx.fundamental_coeffs(&w).unwrap(), vec![1, 1, 0]);
        // 2ϖ_1 + ϖ_2 lies in the root lattice
        let w = ctx.from_fundamental_coeffs(&[2, 1, 0]).unwrap();
        assert_eq!(w.coords(), &[2, 0, -1, -1]);
    }

    #[test]
    fn weight_constructor_checks_sum() {
        let ctx = RankContext::new(2).unwrap();
        assert!(ctx.weight(vec![1, 0, -1]).is_ok());
        assert!(matches!(ctx.weight(vec![1, 0, 0]), Err(Error::InvalidWeight(_))));
        assert!(matches!(ctx.weight(vec![1, -1]), Err(Error::InvalidInput(_))));
    }

    proptest! {
        #[test]
        fn fundamental_coeffs_round_trip(
            (r, coeffs) in (1usize..8).prop_flat_map(|r| (Just(r), prop::collection::vec(-20i64..20, r)))
        ) {
            let ctx = RankContext::new(r).unwrap();
            let w = ctx.from_fundamental_coeffs(&coeffs).unwrap();
            prop_assert_eq!(ctx.fundamental_coeffs(&w).unwrap(), coeffs.clone());
            let s: i64 = coeffs.iter().enumerate().map(|(i, a)| (i as i64 + 1) * a).sum();
            prop_assert_eq!(w.sum() == 0, s % (r as i64 + 1) == 0);
            prop_assert!((0..=r as i64).contains(&w.sum()));
        }
    }
}
