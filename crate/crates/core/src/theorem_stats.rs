//! Vanishing probability of random character values: exact values from full
//! tables, the class-set lower bound, Monte Carlo estimates, and the cycle
//! statistics of random permutations that feed the bound.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::characters::{self, CharacterTable};
use crate::error::{Error, Result};
use crate::exact::{self, from_uints};
use crate::limits::Limits;
use crate::partitions::{self, centralizer_order, partition_count, Partition};
use crate::sampling::{self, SampleSummary};

/// The additive term f(n) in the largest-part threshold.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum FMode {
    /// f(n) = ln n.
    Log,
    /// f(n) = c for every n.
    Constant(f64),
}

impl FMode {
    pub fn eval(&self, n: usize) -> f64 {
        match *self {
            FMode::Log => (n as f64).ln(),
            FMode::Constant(c) => c,
        }
    }
}

/// Largest-part cutoff `λ₁ ≥ C·√n·(ln n + f(n))` defining the class set Ω.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct OmegaSpec {
    pub c: f64,
    pub f_mode: FMode,
    /// Use `λ₁ > threshold` instead of `≥`.
    pub strict: bool,
}

impl Default for OmegaSpec {
    fn default() -> Self {
        OmegaSpec {
            c: default_c(),
            f_mode: FMode::Log,
            strict: false,
        }
    }
}

/// √6/(2π), the natural scale of the largest part of a random partition.
pub fn default_c() -> f64 {
    6f64.sqrt() / (2.0 * std::f64::consts::PI)
}

impl OmegaSpec {
    pub fn new(c: f64, f_mode: FMode, strict: bool) -> Result<Self> {
        let spec = OmegaSpec { c, f_mode, strict };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.c.is_finite() && self.c > 0.0) {
            return Err(Error::invalid(format!("C must be positive and finite, got {}", self.c)));
        }
        if let FMode::Constant(v) = self.f_mode {
            if !v.is_finite() {
                return Err(Error::invalid(format!("f must be finite, got {v}")));
            }
        }
        Ok(())
    }

    /// Real-valued threshold C·√n·(ln n + f(n)).
    pub fn threshold(&self, n: usize) -> f64 {
        let nf = n as f64;
        self.c * nf.sqrt() * (nf.ln() + self.f_mode.eval(n))
    }

    /// Smallest integer largest part admitted into Ω for partitions of `n`.
    pub fn min_largest_part(&self, n: usize) -> Result<BigInt> {
        self.validate()?;
        smallest_integer_meeting(self.threshold(n), self.strict)
    }
}

/// Smallest integer `k` with `k ≥ t` (or `k > t` when strict), decided in
/// exact arithmetic on the binary value of `t`.
pub fn smallest_integer_meeting(t: f64, strict: bool) -> Result<BigInt> {
    let exact = BigRational::from_float(t)
        .ok_or_else(|| Error::invalid(format!("threshold {t} is not finite")))?;
    Ok(if strict {
        exact.floor().to_integer() + 1
    } else {
        exact.ceil().to_integer()
    })
}

/// Partitions of `n` whose largest part clears the threshold.
pub fn omega_set(n: usize, spec: &OmegaSpec, limits: &Limits) -> Result<Vec<Partition>> {
    if n < 2 {
        return Err(Error::invalid("the largest-part threshold needs n >= 2"));
    }
    let cutoff = spec.min_largest_part(n)?;
    let all = partitions::enumerate_partitions(n, limits)?;
    Ok(all
        .into_iter()
        .filter(|p| BigInt::from(p.largest_part()) >= cutoff)
        .collect())
}

/// Σ_{λ∈Ω} 1/z_λ: the probability that a uniform element of 𝔖ₙ has cycle type
/// in Ω.
pub fn q_of_omega(n: usize, omega: &[Partition]) -> Result<BigRational> {
    let mut q = BigRational::zero();
    for lambda in omega {
        if lambda.n() != n {
            return Err(Error::invalid(format!("{lambda} is not a partition of {n}")));
        }
        q += from_uints(&BigUint::one(), &centralizer_order(lambda));
    }
    Ok(q)
}

/// Pₙ from a full table: (1/pₙ)·Σ_μ #{λ : χ^λ(μ) = 0}/z_μ.
pub fn pzero_from_table(table: &CharacterTable) -> BigRational {
    let mut sum = BigRational::zero();
    for (mu, zeros) in table.partitions().iter().zip(table.zeros_per_class()) {
        if zeros > 0 {
            sum += from_uints(&BigUint::from(zeros), &centralizer_order(mu));
        }
    }
    sum / BigRational::from_integer(BigInt::from(table.size()))
}

/// Exact probability that χ(g) = 0 for uniform χ and uniform g in 𝔖ₙ.
pub fn exact_pzero(n: usize, limits: &Limits) -> Result<BigRational> {
    let table = characters::character_table(n, limits)?;
    Ok(pzero_from_table(&table))
}

/// Exact lower bound on Pₙ from a class set Ω, with Pₙ itself when computed.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub n: usize,
    #[serde(with = "exact::int_string")]
    pub p_n: BigUint,
    #[serde(with = "exact::int_string")]
    pub omega_count: BigUint,
    #[serde(with = "exact::ratio_json")]
    pub q_n: BigRational,
    #[serde(with = "exact::ratio_json")]
    pub r_n: BigRational,
    #[serde(with = "exact::ratio_json")]
    pub lower_bound: BigRational,
    #[serde(with = "exact::opt_ratio_json")]
    pub exact_p: Option<BigRational>,
}

impl BoundReport {
    /// `1 ≥ Pₙ ≥ Qₙ − |Ω|/pₙ`, or `None` when Pₙ was not computed.
    pub fn inequality_holds(&self) -> Option<bool> {
        self.exact_p
            .as_ref()
            .map(|p| p <= &BigRational::one() && p >= &self.lower_bound)
    }
}

fn assemble_bound(n: usize, spec: &OmegaSpec, limits: &Limits) -> Result<BoundReport> {
    let omega = omega_set(n, spec, limits)?;
    let p_n = partition_count(n);
    let q_n = q_of_omega(n, &omega)?;
    let omega_count = BigUint::from(omega.len());
    let r_n = from_uints(&omega_count, &p_n);
    Ok(BoundReport {
        n,
        lower_bound: &q_n - &r_n,
        p_n,
        omega_count,
        q_n,
        r_n,
        exact_p: None,
    })
}

/// Builds the bound report; with `compute_exact` also computes Pₙ from the
/// full table and checks the inequality exactly.
pub fn lemma_bound(
    n: usize,
    spec: &OmegaSpec,
    compute_exact: bool,
    limits: &Limits,
) -> Result<BoundReport> {
    let mut report = assemble_bound(n, spec, limits)?;
    if compute_exact {
        let table = characters::character_table(n, limits)?;
        attach_exact(&mut report, &table)?;
    }
    Ok(report)
}

/// As [`lemma_bound`] with an already-built table.
pub fn lemma_bound_with_table(table: &CharacterTable, spec: &OmegaSpec) -> Result<BoundReport> {
    let mut report = assemble_bound(table.n(), spec, &Limits::unbounded())?;
    attach_exact(&mut report, table)?;
    Ok(report)
}

fn attach_exact(report: &mut BoundReport, table: &CharacterTable) -> Result<()> {
    report.exact_p = Some(pzero_from_table(table));
    if report.inequality_holds() != Some(true) {
        return Err(Error::Internal(format!(
            "1 >= P_n >= Q_n - |Omega|/p_n fails at n = {}",
            report.n
        )));
    }
    Ok(())
}

/// Monte Carlo estimate of Pₙ: λ uniform over partitions, μ the cycle type of
/// a uniform permutation.
pub fn montecarlo_pzero(n: usize, samples: u64, seed: u64) -> Result<SampleSummary> {
    if samples == 0 {
        return Err(Error::invalid("at least one sample is required"));
    }
    if n == 0 {
        return Err(Error::invalid("n must be at least 1"));
    }
    let zeros = sampling::par_count(samples, seed, |rng| {
        let lambda = sampling::uniform_partition(n, rng);
        let mu = sampling::random_cycle_type(n, rng);
        characters::mn_value(&lambda, &mu)
            .expect("sampled partitions have equal size")
            .is_zero()
    });
    let mut summary = SampleSummary::proportion(zeros, samples, seed)?;
    summary.extra.insert("n".into(), n as f64);
    Ok(summary)
}

/// Limit distribution function π^{-1/2}∫_{−∞}^x e^{−t²}dt = (1 + erf x)/2.
pub fn limit_cdf(x: f64) -> f64 {
    use libm::erfc;
    if x >= 0.0 {
        1.0 - 0.5 * erfc(x)
    } else {
        0.5 * erfc(-x)
    }
}

/// Limit probability of `α < value < β`.
pub fn limit_mass(alpha: f64, beta: f64) -> Result<f64> {
    if alpha.is_nan() || beta.is_nan() || alpha >= beta {
        return Err(Error::invalid(format!("need alpha < beta, got ({alpha}, {beta})")));
    }
    Ok(limit_cdf(beta) - limit_cdf(alpha))
}

/// Kolmogorov–Smirnov statistic sup|F_emp − F| of a sample against `cdf`.
pub fn ks_distance(values: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.total_cmp(b));
    let len = sorted.len() as f64;
    sorted
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            let above = (i + 1) as f64 / len - f;
            let below = f - i as f64 / len;
            above.max(below)
        })
        .fold(0.0, f64::max)
}

/// Normalised cycle counts (m − ln n)/√(2 ln n) of random permutations.
#[derive(Clone, Debug, Serialize)]
pub struct GoncharovSample {
    pub n: usize,
    pub sample_count: u64,
    pub seed: u64,
    pub normalized_values: Vec<f64>,
    pub ks_distance: f64,
    pub mean_cycles: f64,
}

pub fn goncharov_experiment(n: usize, samples: u64, seed: u64) -> Result<GoncharovSample> {
    if n < 2 {
        return Err(Error::invalid("n must be at least 2"));
    }
    if samples == 0 {
        return Err(Error::invalid("at least one sample is required"));
    }
    let log_n = (n as f64).ln();
    let scale = (2.0 * log_n).sqrt();
    let counts = sampling::par_samples(samples, seed, |rng| sampling::random_cycle_count(n, rng));
    let mean_cycles = counts.iter().sum::<usize>() as f64 / samples as f64;
    let normalized_values: Vec<f64> = counts
        .iter()
        .map(|&m| (m as f64 - log_n) / scale)
        .collect();
    let ks_distance = ks_distance(&normalized_values, limit_cdf);
    Ok(GoncharovSample {
        n,
        sample_count: samples,
        seed,
        normalized_values,
        ks_distance,
        mean_cycles,
    })
}

/// Smallest cycle length counted as long: the least integer ≥ n/(2 ln n).
pub fn long_cycle_cutoff(n: usize) -> Result<u64> {
    if n < 3 {
        return Err(Error::invalid("the long-cycle threshold needs n >= 3"));
    }
    let t = n as f64 / (2.0 * (n as f64).ln());
    let k = smallest_integer_meeting(t, false)?;
    Ok(k.to_u64().expect("cutoff below n"))
}

/// Empirical probability that a random permutation has a cycle of length
/// at least n/(2 ln n).
pub fn long_cycle_frequency(n: usize, samples: u64, seed: u64) -> Result<SampleSummary> {
    let cutoff = long_cycle_cutoff(n)?;
    if samples == 0 {
        return Err(Error::invalid("at least one sample is required"));
    }
    let hits = sampling::par_count(samples, seed, |rng| {
        sampling::random_cycle_type(n, rng).largest_part() as u64 >= cutoff
    });
    let mut summary = SampleSummary::proportion(hits, samples, seed)?;
    summary.extra.insert("cutoff".into(), cutoff as f64);
    Ok(summary)
}

/// Exact long-cycle probability as Σ 1/z_μ over qualifying cycle types.
pub fn long_cycle_exact(n: usize, limits: &Limits) -> Result<BigRational> {
    let cutoff = long_cycle_cutoff(n)?;
    let long: Vec<Partition> = partitions::enumerate_partitions(n, limits)?
        .into_iter()
        .filter(|p| p.largest_part() as u64 >= cutoff)
        .collect();
    q_of_omega(n, &long)
}

/// Exact Pₙ for each requested n.
pub fn pzero_series(ns: &[usize], limits: &Limits) -> Result<Vec<(usize, BigRational)>> {
    ns.iter().map(|&n| Ok((n, exact_pzero(n, limits)?))).collect()
}
