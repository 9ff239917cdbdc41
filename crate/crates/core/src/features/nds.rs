//! Non-dominated-sorting feature group: layer counts, per-layer hypervolume
//! and Solow-Polasky diversity, and polynomial-fit R^2 of the layer
//! hypervolume decay.

use crate::dominance::{non_dominated_sort, LayerPartition};
use crate::indicators::{hv, poly_r2, solow_polasky, RefPoint};
use crate::sampling::EvaluatedSample;
use crate::scalar::Real;

pub const HV_REF_VALUE: f64 = 1.1;
pub const SP_THETA: f64 = 1.0;
const TRACKED_LAYERS: usize = 5;

pub fn feature_names() -> Vec<String> {
    let mut names = vec![
        "nds.no_non_dom_points".to_string(),
        "nds.max_rank".to_string(),
        "nds.avg_points_per_layer".to_string(),
    ];
    for i in 1..=TRACKED_LAYERS {
        names.push(format!("nds.hv_dom_layer_{i}"));
    }
    for i in 1..=TRACKED_LAYERS {
        names.push(format!("nds.sp_dom_layer_{i}"));
    }
    for p in 1..=4 {
        names.push(format!("nds.r{p}"));
    }
    names
}

/// Compute the group for one sample, reusing an already computed layer
/// partition of the scaled objectives.
pub fn compute_nds_features<R: Real>(
    sample: &EvaluatedSample<R>,
    layers: &LayerPartition,
) -> Vec<R> {
    let n = sample.len();
    let h = layers.height();
    let reference = RefPoint::uniform(sample.n_objectives(), HV_REF_VALUE);
    let theta = R::from_f(SP_THETA);
    let layer_hv: Vec<R> = layers
        .layers()
        .iter()
        .map(|l| hv(&sample.y.select_rows(l), &reference).expect("2 or 3 objectives"))
        .collect();
    let mut out = Vec::with_capacity(17);
    out.push(R::from_usize_(layers.layer(0).len()));
    out.push(R::from_usize_(h));
    out.push(R::from_usize_(n) / R::from_usize_(h));
    for i in 0..TRACKED_LAYERS {
        out.push(layer_hv.get(i).copied().unwrap_or_else(R::zero));
    }
    for i in 0..TRACKED_LAYERS {
        if i < h {
            out.push(solow_polasky(&sample.x.select_rows(layers.layer(i)), theta));
        } else {
            out.push(R::zero());
        }
    }
    for p in 1..=4 {
        out.push(poly_r2(&layer_hv, p));
    }
    out
}

/// Convenience entry point that sorts the sample itself.
pub fn compute_from_sample<R: Real>(sample: &EvaluatedSample<R>) -> Vec<R> {
    let layers = non_dominated_sort(&sample.y);
    compute_nds_features(sample, &layers)
}
