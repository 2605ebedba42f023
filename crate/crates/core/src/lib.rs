//! Exact character theory of the symmetric groups and experiments on how often
//! a random character value vanishes.
//!
//! * [`partitions`]: enumeration, counting, ranking, centralizer orders.
//! * [`characters`]: Murnaghan–Nakayama values, dimensions, full tables.
//! * [`theorem_stats`]: exact and sampled vanishing probability, the
//!   class-set lower bound and cycle statistics of random permutations.
//! * [`table_stats`]: zero density and sign balance of whole tables.
//! * [`generic_group`]: the class-set bound for groups loaded from JSON.
//! * [`sampling`]: seeded partition and cycle-type samplers.
//! * [`cli`]: the `symchar` command line.

pub mod characters;
pub mod cli;
pub mod error;
pub mod exact;
pub mod generic_group;
pub mod limits;
pub mod partitions;
pub mod sampling;
pub mod table_stats;
pub mod theorem_stats;

pub use error::{Error, Result};
pub use limits::Limits;
pub use partitions::Partition;
