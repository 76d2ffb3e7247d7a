//! Exact combinatorics of principal blocks: partitions and symbols, their
//! cores and cocores, character degrees, the explicit witness characters in
//! both principal blocks of degree prime to `{2, p}`, and brute-force scans
//! over symmetric groups.

pub mod arith;
pub mod blocks;
pub mod conjectures;
pub mod error;
pub mod partitions;
pub mod selftest;
pub mod symbols;
pub mod witnesses;

pub use error::{Error, Result};
