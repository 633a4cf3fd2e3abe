//! Permutations, patterns, occurrence scanning, exhaustive oracles and the
//! registry of c-Wilf classes.

mod brute;
mod classes;
mod pattern;
mod scan;

pub use brute::{
    brute_cluster_row, brute_clusters, brute_count, brute_count_capped, ClusterCounting,
    DEFAULT_BRUTE_CAP,
};
pub use classes::{class_patterns, classes_containing, duplicate_listings, ClassId};
pub use pattern::{standardize, Pattern, Permutation, Symmetry};
pub use scan::{consecutive_starts, occurrences, Occurrences, ScanMode};

/// Shorthand used in tests and tables.
pub fn symmetry(pat: &Pattern, which: Symmetry) -> Pattern {
    pat.apply(which)
}
