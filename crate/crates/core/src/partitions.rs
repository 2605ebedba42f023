//! Integer partitions: enumeration, counting, ranking and the class-theoretic
//! quantities attached to a cycle type.
//!
//! The canonical order on partitions of `n` is descending lexicographic on the
//! part sequence, so `(n)` has rank 0 and `(1,…,1)` has rank `pₙ − 1`. Both
//! axes of a character table use this order.

use std::fmt;
use std::sync::{Arc, RwLock};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::limits::Limits;

/// A weakly decreasing sequence of positive integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::invalid(format!("partition {parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::invalid(format!(
                "partition {parts:?} is not weakly decreasing"
            )));
        }
        Ok(Partition { parts })
    }

    /// Sorts `parts` decreasingly and drops zeros.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub(crate) fn from_sorted_unchecked(parts: Vec<u32>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        debug_assert!(parts.iter().all(|&p| p > 0));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// The one-row partition `(n)`; empty for `n = 0`.
    pub fn row(n: usize) -> Self {
        if n == 0 {
            Self::empty()
        } else {
            Partition { parts: vec![n as u32] }
        }
    }

    /// The one-column partition `(1,…,1)`, the cycle type of the identity.
    pub fn column(n: usize) -> Self {
        Partition { parts: vec![1; n] }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.iter().map(|&p| p as usize).sum()
    }

    /// Number of parts ℓ.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Largest part λ₁, or 0 for the empty partition.
    pub fn largest_part(&self) -> u32 {
        self.parts.first().copied().unwrap_or(0)
    }

    /// Multiplicity of each part size: `(size, count)` with sizes decreasing.
    pub fn multiplicities(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((size, count)) if *size == p => *count += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// Dash-joined parts, e.g. `3-1-1`. Used as a table axis label.
    pub fn label(&self) -> String {
        self.parts
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join("-")
    }

    /// Parses either a dash-joined or comma-joined part list, optionally
    /// parenthesised.
    pub fn parse(s: &str) -> Result<Self> {
        let trimmed = s.trim().trim_start_matches('(').trim_end_matches(')').trim();
        if trimmed.is_empty() {
            return Ok(Self::empty());
        }
        let parts = trimmed
            .split(['-', ','])
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad partition part {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }

    /// Transposed Young diagram.
    pub fn conjugate(&self) -> Partition {
        let width = self.largest_part() as usize;
        let mut cols = vec![0u32; width];
        for &p in &self.parts {
            for c in cols.iter_mut().take(p as usize) {
                *c += 1;
            }
        }
        Partition { parts: cols }
    }

    /// Parity of `n − ℓ`, the sign of any permutation with this cycle type.
    pub fn sign(&self) -> i32 {
        if (self.n() - self.len()).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Position of a partition of `n` in the canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PartitionIndex {
    pub n: usize,
    pub rank: BigUint,
}

/// Iterator over the partitions of `n` in canonical (descending lex) order.
pub struct PartitionIter {
    current: Option<Vec<u32>>,
}

impl PartitionIter {
    pub fn new(n: usize) -> Self {
        PartitionIter {
            current: Some(if n == 0 { Vec::new() } else { vec![n as u32] }),
        }
    }
}

impl Iterator for PartitionIter {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let cur = self.current.take()?;
        // Successor: find the last part > 1, decrement it, and refill the tail
        // greedily with parts no larger than the decremented value.
        let mut next = cur.clone();
        let mut ones = 0u32;
        while let Some(&1) = next.last() {
            next.pop();
            ones += 1;
        }
        if let Some(last) = next.pop() {
            let k = last - 1;
            let mut rem = ones + last;
            while rem > 0 {
                let take = rem.min(k);
                next.push(take);
                rem -= take;
            }
            self.current = Some(next);
        }
        Some(Partition::from_sorted_unchecked(cur))
    }
}

/// All partitions of `n`, in canonical order, subject to the enumeration cap.
pub fn enumerate_partitions(n: usize, limits: &Limits) -> Result<Vec<Partition>> {
    limits.check_partitions(n, &partition_count(n))?;
    Ok(PartitionIter::new(n).collect())
}

/// pₙ via Euler's pentagonal-number recurrence.
pub fn partition_count(n: usize) -> BigUint {
    let mut p: Vec<BigInt> = Vec::with_capacity(n + 1);
    p.push(BigInt::one());
    for m in 1..=n {
        let mut acc = BigInt::zero();
        for k in 1.. {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > m {
                break;
            }
            let g2 = k * (3 * k + 1) / 2;
            let term = if g2 <= m { &p[m - g1] + &p[m - g2] } else { p[m - g1].clone() };
            if k % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        p.push(acc);
    }
    p[n].to_biguint().expect("partition counts are nonnegative")
}

/// Table of `P(m, k)`, the number of partitions of `m` with every part `≤ k`,
/// for `0 ≤ k ≤ m ≤ max_n`.
#[derive(Debug)]
pub struct BoundedCounts {
    max_n: usize,
    rows: Vec<Vec<BigUint>>,
}

impl BoundedCounts {
    pub fn build(max_n: usize) -> Self {
        let mut rows: Vec<Vec<BigUint>> = Vec::with_capacity(max_n + 1);
        for m in 0..=max_n {
            let mut row = Vec::with_capacity(m + 1);
            row.push(if m == 0 { BigUint::one() } else { BigUint::zero() });
            for k in 1..=m {
                // P(m,k) = P(m,k-1) + P(m-k,k)
                let with_k = {
                    let r = &rows[m - k];
                    r[k.min(m - k)].clone()
                };
                let v = &row[k - 1] + with_k;
                row.push(v);
            }
            rows.push(row);
        }
        BoundedCounts { max_n, rows }
    }

    pub fn max_n(&self) -> usize {
        self.max_n
    }

    pub fn get(&self, m: usize, k: usize) -> &BigUint {
        &self.rows[m][k.min(m)]
    }

    pub fn total(&self, m: usize) -> &BigUint {
        self.get(m, m)
    }

    /// Partitions of `m` whose largest part is exactly `b` (`1 ≤ b ≤ m`).
    fn with_first_part(&self, m: usize, b: usize) -> &BigUint {
        self.get(m - b, b)
    }
}

static COUNTS: RwLock<Option<Arc<BoundedCounts>>> = RwLock::new(None);

/// Shared count table covering at least `n`. Readers see either an older
/// complete table or a newer complete one, never a partial one.
pub fn bounded_counts(n: usize) -> Arc<BoundedCounts> {
    if let Some(t) = COUNTS.read().expect("count cache poisoned").as_ref() {
        if t.max_n >= n {
            return Arc::clone(t);
        }
    }
    let mut guard = COUNTS.write().expect("count cache poisoned");
    if let Some(t) = guard.as_ref() {
        if t.max_n >= n {
            return Arc::clone(t);
        }
    }
    let target = guard.as_ref().map_or(n, |t| n.max(2 * t.max_n)).max(16);
    let table = Arc::new(BoundedCounts::build(target));
    *guard = Some(Arc::clone(&table));
    table
}

/// pₙ via the bounded-largest-part dynamic program.
pub fn partition_count_bounded_dp(n: usize) -> BigUint {
    bounded_counts(n).total(n).clone()
}

pub fn rank(lambda: &Partition) -> PartitionIndex {
    let n = lambda.n();
    let counts = bounded_counts(n);
    let mut r = BigUint::zero();
    let mut remaining = n;
    let mut bound = n;
    for &part in lambda.parts() {
        let a = part as usize;
        // Partitions of `remaining` with first part in (a, bound] precede λ.
        r += counts.get(remaining, bound);
        r -= counts.get(remaining, a);
        remaining -= a;
        bound = a;
    }
    PartitionIndex { n, rank: r }
}

pub fn unrank(idx: &PartitionIndex) -> Result<Partition> {
    let n = idx.n;
    let counts = bounded_counts(n);
    if &idx.rank >= counts.total(n) {
        return Err(Error::invalid(format!(
            "rank {} out of bounds for partitions of {n} (p_{n} = {})",
            idx.rank,
            counts.total(n)
        )));
    }
    let mut r = idx.rank.clone();
    let mut parts = Vec::new();
    let mut remaining = n;
    let mut bound = n;
    while remaining > 0 {
        let mut b = bound.min(remaining);
        loop {
            let c = counts.with_first_part(remaining, b);
            if &r < c {
                break;
            }
            r -= c;
            b -= 1;
        }
        parts.push(b as u32);
        remaining -= b;
        bound = b;
    }
    Ok(Partition::from_sorted_unchecked(parts))
}

pub fn factorial(n: usize) -> BigUint {
    (2..=n as u64).fold(BigUint::one(), |acc, k| acc * k)
}

/// Order z_λ = ∏ iᵐⁱ·mᵢ! of the centralizer of a permutation of cycle type λ.
pub fn centralizer_order(lambda: &Partition) -> BigUint {
    let mut z = BigUint::one();
    for (size, count) in lambda.multiplicities() {
        z *= BigUint::from(size).pow(count);
        z *= factorial(count as usize);
    }
    z
}

/// Number of permutations of cycle type λ, n!/z_λ.
pub fn class_size(lambda: &Partition) -> Result<BigUint> {
    let z = centralizer_order(lambda);
    let (q, r) = factorial(lambda.n()).div_rem(&z);
    if !r.is_zero() {
        return Err(Error::Internal(format!(
            "{}! is not divisible by z_{lambda} = {z}",
            lambda.n()
        )));
    }
    Ok(q)
}
