//! The Weyl group of `sl_n` as the symmetric group `S_n`.
//!
//! Permutations use one-line notation with 1-indexed semantics at the API
//! boundary (`image(i) = σ(i)`), stored zero-based. `σ` acts on ε-coordinates
//! by `σ(ε_k) = ε_{σ(k)}`, so coordinate `i` of `σ(ξ)` is `ξ_{σ^{-1}(i)}`.

use std::fmt;
use std::ops::Range;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rootsys::{EpsVector, RankContext};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// Builds a permutation from 1-indexed one-line notation.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        let mut zero_based = Vec::with_capacity(n);
        for &v in &images {
            if v == 0 || v > n || seen[v - 1] {
                return Err(Error::InvalidInput(format!(
                    "{images:?} is not a permutation of 1..={n}"
                )));
            }
            seen[v - 1] = true;
            zero_based.push(v - 1);
        }
        Ok(Self { images: zero_based })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            images: (0..n).collect(),
        }
    }

    /// The neighboring transposition `(i i+1)`, 1-indexed.
    pub fn simple_reflection(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i >= n {
            return Err(Error::InvalidIndex {
                index: i,
                max: n.saturating_sub(1),
            });
        }
        let mut p = Self::identity(n);
        p.images.swap(i - 1, i);
        Ok(p)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// `σ(i)` for 1-indexed `i`.
    pub fn image(&self, i: usize) -> usize {
        self.images[i - 1] + 1
    }

    /// One-line notation, 1-indexed.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|v| v + 1).collect()
    }

    pub(crate) fn zero_based(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// `self ∘ other`, i.e. `(στ)(i) = σ(τ(i))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Permutation {
            images: other.images.iter().map(|&t| self.images[t]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.degree()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v] = i;
        }
        Permutation { images: inv }
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let p = &self.images;
        (0..p.len())
            .map(|i| p[i + 1..].iter().filter(|&&v| v < p[i]).count())
            .sum()
    }

    /// `(-1)^length`.
    pub fn sign(&self) -> i32 {
        if self.length().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Largest `|σ(i) - i|`.
    pub fn max_displacement(&self) -> usize {
        self.images
            .iter()
            .enumerate()
            .map(|(i, &v)| i.abs_diff(v))
            .max()
            .unwrap_or(0)
    }

    pub fn is_involution(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| self.images[v] == i)
    }

    /// Indices `i` (1-indexed) with `σ(i) = i + 1` and `σ(i + 1) = i`.
    pub fn swapped_neighbors(&self) -> Vec<usize> {
        (0..self.degree().saturating_sub(1))
            .filter(|&i| self.images[i] == i + 1 && self.images[i + 1] == i)
            .map(|i| i + 1)
            .collect()
    }

    /// `σ(ξ)`: coordinate `i` of the result is `ξ_{σ^{-1}(i)}`.
    pub fn act(&self, xi: &EpsVector) -> Result<EpsVector> {
        if xi.len() != self.degree() {
            return Err(Error::InvalidInput(format!(
                "permutation of degree {} cannot act on {} coordinates",
                self.degree(),
                xi.len()
            )));
        }
        let mut out = vec![0i64; xi.len()];
        for (k, &c) in xi.coords().iter().enumerate() {
            out[self.images[k]] = c;
        }
        Ok(EpsVector::new(out))
    }

    /// Position of this permutation in lexicographic order of one-line notation.
    pub fn lex_rank(&self) -> u64 {
        let n = self.degree();
        let mut rank = 0u64;
        for i in 0..n {
            let smaller_later = self.images[i + 1..]
                .iter()
                .filter(|&&v| v < self.images[i])
                .count() as u64;
            rank += smaller_later * factorial(n - 1 - i);
        }
        rank
    }

    /// The permutation at lexicographic position `rank` in `S_n`.
    pub fn unrank(n: usize, mut rank: u64) -> Result<Self> {
        let total = checked_factorial(n).ok_or(Error::ResourceLimit {
            n,
            ceiling: MAX_UNRANK_N,
        })?;
        if rank >= total {
            return Err(Error::InvalidInput(format!(
                "rank {rank} out of range for S_{n} (order {total})"
            )));
        }
        let mut pool: Vec<usize> = (0..n).collect();
        let mut images = Vec::with_capacity(n);
        for i in 0..n {
            let f = factorial(n - 1 - i);
            let idx = (rank / f) as usize;
            rank %= f;
            images.push(pool.remove(idx));
        }
        Ok(Self { images })
    }

    /// Steps to the lexicographic successor; returns `false` at the last permutation.
    pub fn advance(&mut self) -> bool {
        let p = &mut self.images;
        let n = p.len();
        if n < 2 {
            return false;
        }
        let mut i = n - 1;
        while i > 0 && p[i - 1] >= p[i] {
            i -= 1;
        }
        if i == 0 {
            return false;
        }
        let mut j = n - 1;
        while p[j] <= p[i - 1] {
            j -= 1;
        }
        p.swap(i - 1, j);
        p[i..].reverse();
        true
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.images.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", v + 1)?;
        }
        write!(f, "]")
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.images().serialize(s)
    }
}

/// Largest degree whose order fits in a `u64`.
pub const MAX_UNRANK_N: usize = 20;

pub fn checked_factorial(n: usize) -> Option<u64> {
    (1..=n as u64).try_fold(1u64, |acc, k| acc.checked_mul(k))
}

pub fn factorial(n: usize) -> u64 {
    checked_factorial(n).expect("factorial overflows u64")
}

/// Iterates a contiguous block of `S_n` in lexicographic order.
#[derive(Clone, Debug)]
pub struct Permutations {
    next: Option<Permutation>,
    remaining: u64,
}

impl Iterator for Permutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.remaining == 0 {
            return None;
        }
        let current = self.next.take()?;
        self.remaining -= 1;
        if self.remaining > 0 {
            let mut succ = current.clone();
            if succ.advance() {
                self.next = Some(succ);
            }
        }
        Some(current)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let r = self.remaining as usize;
        (r, Some(r))
    }
}

/// All of `S_n` in lexicographic order.
pub fn enumerate(ctx: &RankContext) -> Permutations {
    all_permutations(ctx.n())
}

pub fn all_permutations(n: usize) -> Permutations {
    Permutations {
        next: Some(Permutation::identity(n)),
        remaining: factorial(n),
    }
}

/// The permutations with lexicographic ranks in `range`.
pub fn permutations_in_range(n: usize, range: Range<u64>) -> Result<Permutations> {
    if range.start >= range.end {
        return Ok(Permutations {
            next: None,
            remaining: 0,
        });
    }
    let first = Permutation::unrank(n, range.start)?;
    if range.end > factorial(n) {
        return Err(Error::InvalidInput(format!(
            "range end {} exceeds |S_{n}| = {}",
            range.end,
            factorial(n)
        )));
    }
    Ok(Permutations {
        next: Some(first),
        remaining: range.end - range.start,
    })
}

/// Splits `0..total` into at most `chunks` contiguous, disjoint, nonempty ranges.
pub fn chunk_ranges(total: u64, chunks: usize) -> Vec<Range<u64>> {
    let chunks = (chunks.max(1) as u64).min(total.max(1));
    let base = total / chunks;
    let extra = total % chunks;
    let mut out = Vec::with_capacity(chunks as usize);
    let mut start = 0;
    for c in 0..chunks {
        let len = base + u64::from(c < extra);
        if len > 0 {
            out.push(start..start + len);
        }
        start += len;
    }
    out
}

/// Maps `f` over disjoint lexicographic blocks of `S_n` in parallel.
///
/// Results come back in block order, so any associative combination of them
/// is independent of the number of worker threads.
pub fn par_map_blocks<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(Permutations) -> T + Sync + Send,
{
    let total = factorial(n);
    let chunks = if total < 5040 {
        1
    } else {
        rayon::current_num_threads() * 8
    };
    chunk_ranges(total, chunks)
        .into_par_iter()
        .map(|range| f(permutations_in_range(n, range).expect("range within S_n")))
        .collect()
}

/// `s_{i_1} s_{i_2} ⋯ s_{i_k}` composed left to right as functions.
pub fn product_of_simple_reflections(ctx: &RankContext, indices: &[usize]) -> Result<Permutation> {
    let n = ctx.n();
    indices.iter().try_fold(Permutation::identity(n), |acc, &i| {
        if i == 0 || i > ctx.rank() {
            return Err(Error::InvalidIndex {
                index: i,
                max: ctx.rank(),
            });
        }
        Ok(acc.compose(&Permutation::simple_reflection(n, i)?))
    })
}
