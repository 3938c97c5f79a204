//! Exact Kronecker, Littlewood–Richardson and plethysm coefficients, and
//! stability analysis of their stretched sequences.
//!
//! All arithmetic is exact. Character values come from a memoized
//! Murnaghan–Nakayama recursion; every coefficient family also has an
//! independent brute-force route used for cross-checking.

pub mod characters;
pub mod coefficients;
mod engine;
pub mod error;
pub mod partitions;
pub mod stability;
pub mod symfunc;

pub use engine::{Engine, EngineConfig, DEFAULT_PLETHYSM_CAP, DEFAULT_RANK_CAP, FULL_TABLE_MAX_RANK};
pub use error::{Error, Result};
pub use partitions::{Partition, PartitionTriple};
