//! Enumeration and analysis of permutations avoiding a consecutive pattern.

pub mod analytic;
pub mod asymptotics;
pub mod cluster;
pub mod combinat;
pub mod dp;
pub mod error;
pub mod perm;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
