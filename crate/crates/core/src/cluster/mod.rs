//! Cluster numbers from explicit recurrences, signed cluster sums and the
//! Goulden-Jackson inversion to avoider counts.
//!
//! A k-cluster here is a permutation together with a marked set of k
//! occurrences that cover it and chain with successive overlaps; this is the
//! count the inversion formula needs.

mod gj;
mod recurrences;
mod table;

pub use gj::{b_map, functional_equation_residual, gj_invert, verify_functional_equation};
pub use recurrences::{
    clusters_14523, clusters_15243, clusters_15243_with, clusters_general, clusters_onem,
    clusters_tree, OverlapFamily, Shift15243,
};
pub use table::{ClusterTable, SignedClusterSeries};
