//! Resource caps guarding full enumerations and table builds.

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};

/// Environment variable overriding [`Limits::DEFAULT_MAX_PARTITIONS`].
pub const CAP_ENV_VAR: &str = "SYMCHAR_CAP";

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Limits {
    /// Largest pₙ for which a full list of partitions may be materialised.
    pub max_partitions: u64,
    /// Largest pₙ² for which a full character table may be built.
    pub max_table_entries: u64,
}

impl Limits {
    pub const DEFAULT_MAX_PARTITIONS: u64 = 10_000_000;
    pub const DEFAULT_MAX_TABLE_ENTRIES: u64 = 10_000_000;

    pub fn unbounded() -> Self {
        Limits {
            max_partitions: u64::MAX,
            max_table_entries: u64::MAX,
        }
    }

    /// Defaults, with the partition cap taken from `SYMCHAR_CAP` when set.
    pub fn from_env() -> Self {
        let mut limits = Limits::default();
        if let Some(cap) = std::env::var(CAP_ENV_VAR)
            .ok()
            .and_then(|v| v.trim().parse::<u64>().ok())
        {
            limits.max_partitions = cap;
        }
        limits
    }

    pub fn check_partitions(&self, n: usize, count: &BigUint) -> Result<()> {
        match count.to_u64() {
            Some(c) if c <= self.max_partitions => Ok(()),
            _ => Err(Error::CapExceeded {
                what: format!("enumerating the partitions of {n}"),
                required: format!("p_{n} = {count}"),
                cap: self.max_partitions.to_string(),
            }),
        }
    }

    pub fn check_table(&self, n: usize, count: &BigUint) -> Result<()> {
        self.check_partitions(n, count)?;
        let entries = count * count;
        match entries.to_u64() {
            Some(e) if e <= self.max_table_entries => Ok(()),
            _ => Err(Error::CapExceeded {
                what: format!("the character table of S_{n}"),
                required: format!("p_{n}^2 = {entries} entries"),
                cap: self.max_table_entries.to_string(),
            }),
        }
    }
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_partitions: Self::DEFAULT_MAX_PARTITIONS,
            max_table_entries: Self::DEFAULT_MAX_TABLE_ENTRIES,
        }
    }
}
