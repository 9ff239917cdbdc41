//! Landscape feature groups and their assembly into one feature vector
//! per evaluated sample.

pub mod catalog;
pub mod gradient;
pub mod graph;
pub mod nds;
pub mod pca;
pub mod pipeline;
pub mod stats;

use crate::dominance::non_dominated_sort;
use crate::sampling::EvaluatedSample;
use crate::scalar::Real;

/// One fully computed feature vector, keyed by its grid cell.
#[derive(Clone, Debug, PartialEq)]
pub struct FeatureVector<R> {
    pub problem_id: String,
    pub dim: usize,
    pub m: usize,
    pub sample_size: usize,
    pub seed: u64,
    /// Values in the exact order of [`catalog::feature_ids`] for `m`.
    pub values: Vec<R>,
}

/// Concatenation of all five feature groups plus the meta columns.
pub fn compute_all_features<R: Real>(sample: &EvaluatedSample<R>) -> FeatureVector<R> {
    let layers = non_dominated_sort(&sample.y);
    let l1 = layers.layer(0).to_vec();
    let mut values = nds::compute_nds_features(sample, &layers);
    values.extend(stats::compute_stats_features(sample, &l1));
    values.extend(pca::compute_pca_features(sample, &l1));
    values.extend(graph::compute_graph_features(sample, &l1));
    values.extend(gradient::compute_gradient_features(sample, &l1));
    values.push(R::from_usize_(sample.dim()));
    values.push(R::from_usize_(sample.len()));
    let ids = catalog::feature_ids(sample.n_objectives());
    assert_eq!(values.len(), ids.len(), "feature vector length mismatch");
    for (v, id) in values.iter().zip(&ids) {
        assert!(v.is_finite(), "non-finite feature {id}");
    }
    FeatureVector {
        problem_id: sample.problem_id.clone(),
        dim: sample.dim(),
        m: sample.n_objectives(),
        sample_size: sample.len(),
        seed: sample.seed,
        values,
    }
}
