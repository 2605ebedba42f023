//! Irreducible characters of the symmetric group via the Murnaghan–Nakayama
//! rule.
//!
//! A shape is handled through its beta-set (first-column hook lengths):
//! removing a border strip of size `k` is moving one bead from position `b`
//! to the empty position `b − k`, and the strip height equals the number of
//! beads jumped over.

use std::cell::RefCell;
use std::collections::HashMap;

use dashmap::DashMap;
use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::partitions::{self, factorial, Partition};

/// Border strips of size `k` removable from `shape`, as `(height, remainder)`,
/// scanned by the strip's top row ascending.
pub fn border_strips(shape: &[u32], k: u32) -> Vec<(u32, Vec<u32>)> {
    let len = shape.len();
    let beta: Vec<u32> = shape
        .iter()
        .enumerate()
        .map(|(i, &p)| p + (len - 1 - i) as u32)
        .collect();
    let mut out = Vec::new();
    for (i, &b) in beta.iter().enumerate() {
        if b < k {
            continue;
        }
        let target = b - k;
        // beta is strictly decreasing; beads below row i lie at indices > i.
        let mut height = 0u32;
        let mut occupied = false;
        for &other in &beta[i + 1..] {
            if other > target {
                height += 1;
            } else {
                occupied = other == target;
                break;
            }
        }
        if occupied {
            continue;
        }
        let mut next_beta = beta.clone();
        next_beta.remove(i);
        let pos = i + height as usize;
        next_beta.insert(pos, target);
        let mut parts: Vec<u32> = next_beta
            .iter()
            .enumerate()
            .map(|(j, &bj)| bj - (len - 1 - j) as u32)
            .collect();
        while parts.last() == Some(&0) {
            parts.pop();
        }
        out.push((height, parts));
    }
    out
}

trait MnMemo {
    fn lookup(&self, shape: &[u32], suffix: &[u32]) -> Option<BigInt>;
    fn store(&self, shape: &[u32], suffix: &[u32], value: &BigInt);
}

/// Per-evaluation cache: within one evaluation the suffix is determined by
/// its length.
struct LocalMemo(RefCell<HashMap<(Vec<u32>, usize), BigInt>>);

impl MnMemo for LocalMemo {
    fn lookup(&self, shape: &[u32], suffix: &[u32]) -> Option<BigInt> {
        self.0.borrow().get(&(shape.to_vec(), suffix.len())).cloned()
    }

    fn store(&self, shape: &[u32], suffix: &[u32], value: &BigInt) {
        self.0
            .borrow_mut()
            .insert((shape.to_vec(), suffix.len()), value.clone());
    }
}

/// Cache shared by the workers of one table build. Entries are pure results,
/// so a racing second insert writes the same value.
#[derive(Default)]
struct SharedMemo(DashMap<(Vec<u32>, Vec<u32>), BigInt>);

impl MnMemo for SharedMemo {
    fn lookup(&self, shape: &[u32], suffix: &[u32]) -> Option<BigInt> {
        self.0
            .get(&(shape.to_vec(), suffix.to_vec()))
            .map(|v| v.value().clone())
    }

    fn store(&self, shape: &[u32], suffix: &[u32], value: &BigInt) {
        self.0
            .entry((shape.to_vec(), suffix.to_vec()))
            .or_insert_with(|| value.clone());
    }
}

fn mn_rec<M: MnMemo>(shape: &[u32], suffix: &[u32], memo: &M) -> BigInt {
    let Some((&k, rest)) = suffix.split_first() else {
        return if shape.is_empty() { BigInt::one() } else { BigInt::zero() };
    };
    if rest.is_empty() {
        // A single strip must be the whole shape, i.e. a hook.
        return match border_strips(shape, k).into_iter().find(|(_, r)| r.is_empty()) {
            Some((h, _)) => sign_of_height(h),
            None => BigInt::zero(),
        };
    }
    if let Some(v) = memo.lookup(shape, suffix) {
        return v;
    }
    let mut total = BigInt::zero();
    for (height, remainder) in border_strips(shape, k) {
        let sub = mn_rec(&remainder, rest, memo);
        if sub.is_zero() {
            continue;
        }
        if height % 2 == 0 {
            total += sub;
        } else {
            total -= sub;
        }
    }
    memo.store(shape, suffix, &total);
    total
}

fn sign_of_height(h: u32) -> BigInt {
    if h.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// χ^λ(μ), the value of the irreducible character λ on the class of cycle
/// type μ.
pub fn mn_value(lambda: &Partition, mu: &Partition) -> Result<BigInt> {
    if lambda.n() != mu.n() {
        return Err(Error::invalid(format!(
            "character {lambda} (n = {}) and class {mu} (n = {}) have different sizes",
            lambda.n(),
            mu.n()
        )));
    }
    let memo = LocalMemo(RefCell::new(HashMap::new()));
    Ok(mn_rec(lambda.parts(), mu.parts(), &memo))
}

/// Hook lengths of the Young diagram, row by row.
pub fn hook_lengths(lambda: &Partition) -> Vec<Vec<u32>> {
    let conj = lambda.conjugate();
    lambda
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &row)| {
            (0..row as usize)
                .map(|j| (row - j as u32) + (conj.parts()[j] - i as u32) - 1)
                .collect()
        })
        .collect()
}

/// Degree of χ^λ by the hook length formula.
pub fn dimension(lambda: &Partition) -> Result<BigUint> {
    let hooks = hook_lengths(lambda)
        .into_iter()
        .flatten()
        .fold(BigUint::one(), |acc, h| acc * h);
    let (q, r) = factorial(lambda.n()).div_rem(&hooks);
    if !r.is_zero() {
        return Err(Error::Internal(format!(
            "{}! is not divisible by the hook product {hooks} of {lambda}",
            lambda.n()
        )));
    }
    Ok(q)
}

/// Full character table of 𝔖ₙ; rows are characters and columns classes, both
/// in canonical partition order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterTable {
    n: usize,
    partitions: Vec<Partition>,
    values: Vec<Vec<BigInt>>,
}

impl CharacterTable {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Shared axis: labels of both rows and columns.
    pub fn partitions(&self) -> &[Partition] {
        &self.partitions
    }

    pub fn size(&self) -> usize {
        self.partitions.len()
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.values
    }

    pub fn value(&self, character: usize, class: usize) -> &BigInt {
        &self.values[character][class]
    }

    pub fn column(&self, class: usize) -> impl Iterator<Item = &BigInt> + '_ {
        self.values.iter().map(move |row| &row[class])
    }

    /// Number of characters vanishing on each class.
    pub fn zeros_per_class(&self) -> Vec<usize> {
        (0..self.size())
            .map(|j| self.column(j).filter(|v| v.is_zero()).count())
            .collect()
    }

    /// CSV with a header of dash-joined class labels; each row starts with its
    /// character label.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("character");
        for mu in &self.partitions {
            out.push(',');
            out.push_str(&mu.label());
        }
        out.push('\n');
        for (lambda, row) in self.partitions.iter().zip(&self.values) {
            out.push_str(&lambda.label());
            for v in row {
                out.push(',');
                out.push_str(&v.to_string());
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> TableJson {
        let labels: Vec<String> = self.partitions.iter().map(Partition::label).collect();
        TableJson {
            n: self.n,
            characters: labels.clone(),
            classes: labels,
            values: self
                .values
                .iter()
                .map(|row| row.iter().map(|v| v.to_string()).collect())
                .collect(),
        }
    }
}

/// JSON export: axis labels plus decimal-string entries.
#[derive(Clone, Debug, Serialize)]
pub struct TableJson {
    pub n: usize,
    pub characters: Vec<String>,
    pub classes: Vec<String>,
    pub values: Vec<Vec<String>>,
}

/// Builds the table column by column on the current rayon pool.
pub fn character_table(n: usize, limits: &Limits) -> Result<CharacterTable> {
    if n == 0 {
        return Err(Error::invalid("character tables are built for n >= 1"));
    }
    limits.check_table(n, &partitions::partition_count(n))?;
    let partitions: Vec<Partition> = partitions::PartitionIter::new(n).collect();
    let memo = SharedMemo::default();
    let columns: Vec<Vec<BigInt>> = partitions
        .par_iter()
        .map(|mu| {
            partitions
                .iter()
                .map(|lambda| mn_rec(lambda.parts(), mu.parts(), &memo))
                .collect()
        })
        .collect();
    let k = partitions.len();
    let values = (0..k)
        .map(|i| columns.iter().map(|col| col[i].clone()).collect())
        .collect();
    Ok(CharacterTable { n, partitions, values })
}

/// Sign of a nonzero value as -1/0/+1.
pub fn signum(v: &BigInt) -> i8 {
    match v.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}
