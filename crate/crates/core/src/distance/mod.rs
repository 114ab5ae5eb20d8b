//! Exhaustive ground truth: minimum distance and weight distribution of
//! linear codes, and exact `A(n, d)` for tiny `n`.

mod clique;
mod enumerate;

pub use clique::{exact_a_search, DEFAULT_MAX_LENGTH};
pub use enumerate::{
    distance_report, min_distance, weight_distribution, Budget, DistanceReport, GeneratorMatrix,
    WeightDistribution,
};
