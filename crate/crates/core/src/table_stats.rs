//! Entry statistics of whole character tables: how many entries vanish when a
//! (character, class) pair is chosen uniformly, and the balance of signs.

use num_rational::BigRational;
use serde::Serialize;

use crate::characters::{self, signum, CharacterTable};
use crate::error::{Error, Result};
use crate::exact::{self, ratio};
use crate::limits::Limits;
use crate::theorem_stats::pzero_from_table;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TableStats {
    pub n: usize,
    pub p_n: u64,
    pub zero_entries: u64,
    pub positive_entries: u64,
    pub negative_entries: u64,
    /// zeros / pₙ², uniform over table entries.
    #[serde(with = "exact::ratio_json")]
    pub zero_density: BigRational,
    /// positives / negatives; `None` when the table has no negative entry.
    #[serde(with = "exact::opt_ratio_json")]
    pub sign_ratio: Option<BigRational>,
    /// Pₙ under uniform characters and uniform group elements, for contrast.
    #[serde(with = "exact::ratio_json")]
    pub class_weighted_pzero: BigRational,
}

impl TableStats {
    pub fn total_entries(&self) -> u64 {
        self.p_n * self.p_n
    }

    pub fn sign_ratio_string(&self) -> String {
        self.sign_ratio
            .as_ref()
            .map_or_else(|| "undefined".to_string(), exact::fraction_string)
    }

    pub fn distance_to_inverse_e(&self) -> f64 {
        (exact::to_f64(&self.zero_density) - (-1f64).exp()).abs()
    }

    pub fn distance_to_one_third(&self) -> f64 {
        exact::to_f64(&(&self.zero_density - ratio(1, 3))).abs()
    }
}

pub fn stats_from_table(table: &CharacterTable) -> TableStats {
    let (mut zeros, mut positives, mut negatives) = (0u64, 0u64, 0u64);
    for row in table.rows() {
        for v in row {
            match signum(v) {
                0 => zeros += 1,
                1 => positives += 1,
                _ => negatives += 1,
            }
        }
    }
    let k = table.size() as u64;
    TableStats {
        n: table.n(),
        p_n: k,
        zero_entries: zeros,
        positive_entries: positives,
        negative_entries: negatives,
        zero_density: ratio(zeros, k * k),
        sign_ratio: (negatives > 0).then(|| ratio(positives, negatives)),
        class_weighted_pzero: pzero_from_table(table),
    }
}

pub fn table_stats(n: usize, limits: &Limits) -> Result<TableStats> {
    let table = characters::character_table(n, limits)?;
    Ok(stats_from_table(&table))
}

/// Statistics for every n in `n_min..=n_max`; empty when `n_min > n_max`.
pub fn stats_series(n_min: usize, n_max: usize, limits: &Limits) -> Result<Vec<TableStats>> {
    if n_min > n_max {
        return Ok(Vec::new());
    }
    if n_min == 0 {
        return Err(Error::invalid("table statistics start at n = 1"));
    }
    // Fail on the largest table before spending time on the small ones.
    limits.check_table(n_max, &crate::partitions::partition_count(n_max))?;
    (n_min..=n_max).map(|n| table_stats(n, limits)).collect()
}

pub const SERIES_CSV_HEADER: &str = "n,p_n,zeros,positives,negatives,zero_density,zero_density_exact,sign_ratio,dist_inv_e,dist_one_third,class_weighted_pzero";

pub fn series_csv(series: &[TableStats]) -> String {
    let mut out = String::from(SERIES_CSV_HEADER);
    out.push('\n');
    for s in series {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{:.10},{:.10},{}\n",
            s.n,
            s.p_n,
            s.zero_entries,
            s.positive_entries,
            s.negative_entries,
            exact::to_fixed(&s.zero_density, 10),
            exact::fraction_string(&s.zero_density),
            s.sign_ratio_string(),
            s.distance_to_inverse_e(),
            s.distance_to_one_third(),
            exact::fraction_string(&s.class_weighted_pzero),
        ));
    }
    out
}
