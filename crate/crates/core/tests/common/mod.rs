//! Test-only oracles that share no code path with the library routines they
//! check: brute force over permutations, Young's rule with Kostka numbers for
//! character tables, tableau counting, and numerical quadrature.

#![allow(dead_code)]

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use symchar::Partition;

/// Partitions of `n` in descending lexicographic order, by plain recursion.
pub fn partitions_desc(n: u32) -> Vec<Vec<u32>> {
    fn go(n: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for first in (1..=n.min(max)).rev() {
            prefix.push(first);
            go(n - first, first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// All permutations of `0..n` (one-line notation).
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(current: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if current.len() == used.len() {
            out.push(current.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                current.push(i);
                go(current, used, out);
                current.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

pub fn cycle_lengths(perm: &[usize]) -> Vec<u32> {
    let mut seen = vec![false; perm.len()];
    let mut lens = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = perm[x];
            len += 1;
        }
        lens.push(len);
    }
    lens.sort_unstable_by(|a, b| b.cmp(a));
    lens
}

pub fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&i| a[i]).collect()
}

/// A permutation with the given cycle type.
pub fn representative(cycle_type: &[u32]) -> Vec<usize> {
    let n: usize = cycle_type.iter().map(|&c| c as usize).sum();
    let mut perm = vec![0; n];
    let mut start = 0;
    for &c in cycle_type {
        let c = c as usize;
        for i in 0..c {
            perm[start + i] = start + (i + 1) % c;
        }
        start += c;
    }
    perm
}

/// Number of permutations commuting with a representative of `cycle_type`.
pub fn brute_centralizer(cycle_type: &[u32]) -> usize {
    let g = representative(cycle_type);
    permutations(g.len())
        .iter()
        .filter(|h| compose(&g, h) == compose(h, &g))
        .count()
}

/// Permutation character of the Young subgroup 𝔖_ν on the class μ: the
/// number of ways to send each cycle of μ into a row of ν so that row i
/// receives exactly ν_i points.
pub fn young_permutation_character(nu: &[u32], mu: &[u32]) -> BigInt {
    fn go(cycles: &[u32], capacity: &mut Vec<u32>, memo: &mut HashMap<(usize, Vec<u32>), BigInt>) -> BigInt {
        let Some((&c, rest)) = cycles.split_first() else {
            return if capacity.iter().all(|&x| x == 0) { BigInt::one() } else { BigInt::zero() };
        };
        let key = (cycles.len(), capacity.clone());
        if let Some(v) = memo.get(&key) {
            return v.clone();
        }
        let mut total = BigInt::zero();
        for row in 0..capacity.len() {
            if capacity[row] >= c {
                capacity[row] -= c;
                total += go(rest, capacity, memo);
                capacity[row] += c;
            }
        }
        memo.insert(key, total.clone());
        total
    }
    go(mu, &mut nu.to_vec(), &mut HashMap::new())
}

/// Kostka number: semistandard tableaux of shape λ and content ν, counted as
/// chains of horizontal strips.
pub fn kostka(lambda: &[u32], nu: &[u32]) -> BigInt {
    fn horizontal_strips(outer: &[u32], size: u32) -> Vec<Vec<u32>> {
        // Inner shapes κ ⊆ outer with outer/κ a horizontal strip of `size`
        // cells: outer[i+1] ≤ κ[i] ≤ outer[i].
        fn go(outer: &[u32], i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if i == outer.len() {
                if left == 0 {
                    let mut k = cur.clone();
                    while k.last() == Some(&0) {
                        k.pop();
                    }
                    out.push(k);
                }
                return;
            }
            let lo = outer.get(i + 1).copied().unwrap_or(0);
            for k in lo..=outer[i] {
                let removed = outer[i] - k;
                if removed <= left {
                    cur.push(k);
                    go(outer, i + 1, left - removed, cur, out);
                    cur.pop();
                }
            }
        }
        let mut out = Vec::new();
        go(outer, 0, size, &mut Vec::new(), &mut out);
        out
    }
    fn count(shape: &[u32], content: &[u32]) -> BigInt {
        let Some((&last, init)) = content.split_last() else {
            return if shape.is_empty() { BigInt::one() } else { BigInt::zero() };
        };
        horizontal_strips(shape, last)
            .iter()
            .map(|inner| count(inner, init))
            .sum()
    }
    count(lambda, nu)
}

/// Character table from Young's rule: π^ν = Σ_λ K_{λν} χ^λ, solved by forward
/// substitution in descending lexicographic order. Rows are characters.
pub fn young_rule_table(n: u32) -> Vec<Vec<BigInt>> {
    let parts = partitions_desc(n);
    let k = parts.len();
    let mut chi: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); k]; k];
    for (v, nu) in parts.iter().enumerate() {
        for (j, mu) in parts.iter().enumerate() {
            let mut value = young_permutation_character(nu, mu);
            for (l, lambda) in parts.iter().enumerate().take(v) {
                let kk = kostka(lambda, nu);
                if !kk.is_zero() {
                    value -= kk * &chi[l][j];
                }
            }
            chi[v][j] = value;
        }
    }
    chi
}

/// Standard Young tableaux of a shape, by removing the cell holding n.
pub fn count_syt(shape: &[u32]) -> BigInt {
    fn go(shape: &mut Vec<u32>, memo: &mut HashMap<Vec<u32>, BigInt>) -> BigInt {
        if shape.is_empty() {
            return BigInt::one();
        }
        if let Some(v) = memo.get(shape.as_slice()) {
            return v.clone();
        }
        let key = shape.clone();
        let mut total = BigInt::zero();
        for i in 0..shape.len() {
            let is_corner = i + 1 == shape.len() || shape[i + 1] < shape[i];
            if is_corner {
                shape[i] -= 1;
                let popped = shape[i] == 0;
                if popped {
                    shape.pop();
                }
                total += go(shape, memo);
                if popped {
                    shape.push(0);
                }
                shape[i] += 1;
            }
        }
        memo.insert(key, total.clone());
        total
    }
    go(&mut shape.to_vec(), &mut HashMap::new())
}

/// Pₙ from a table given as rows over classes in canonical order, with class
/// weights counted by enumerating all permutations.
pub fn brute_pzero(n: u32, table: &[Vec<BigInt>]) -> BigRational {
    let parts = partitions_desc(n);
    let mut class_counts = vec![0u64; parts.len()];
    let perms = permutations(n as usize);
    for perm in &perms {
        let ct = cycle_lengths(perm);
        let idx = parts.iter().position(|p| *p == ct).unwrap();
        class_counts[idx] += 1;
    }
    let mut zero_weight = 0u64;
    for (j, &count) in class_counts.iter().enumerate() {
        let zeros = table.iter().filter(|row| row[j].is_zero()).count() as u64;
        zero_weight += zeros * count;
    }
    BigRational::new(
        BigInt::from(zero_weight),
        BigInt::from(perms.len() as u64 * parts.len() as u64),
    )
}

/// Adaptive Simpson quadrature.
pub fn integrate(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson(f: &dyn Fn(f64) -> f64, a: f64, fa: f64, b: f64, fb: f64) -> (f64, f64, f64) {
        let m = 0.5 * (a + b);
        let fm = f(m);
        (m, fm, (b - a) / 6.0 * (fa + 4.0 * fm + fb))
    }
    #[allow(clippy::too_many_arguments)]
    fn refine(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        fa: f64,
        b: f64,
        fb: f64,
        m: f64,
        fm: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let (lm, flm, left) = simpson(f, a, fa, m, fm);
        let (rm, frm, right) = simpson(f, m, fm, b, fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        refine(f, a, fa, m, fm, lm, flm, left, tol / 2.0, depth - 1)
            + refine(f, m, fm, b, fb, rm, frm, right, tol / 2.0, depth - 1)
    }
    let (fa, fb) = (f(a), f(b));
    let (m, fm, whole) = simpson(f, a, fa, b, fb);
    refine(f, a, fa, b, fb, m, fm, whole, tol, 50)
}

/// π^{-1/2}∫_{−∞}^x e^{−t²}dt by quadrature from 0.
pub fn limit_cdf_by_quadrature(x: f64) -> f64 {
    let half = integrate(&|t: f64| (-t * t).exp(), 0.0, x.abs(), 1e-15)
        / std::f64::consts::PI.sqrt();
    if x >= 0.0 {
        0.5 + half
    } else {
        0.5 - half
    }
}

pub fn part(parts: &[u32]) -> Partition {
    Partition::new(parts.to_vec()).unwrap()
}
