//! Multi-objective gradient features: absolute per-variable slopes along the
//! edges of the objective-space MST over the first layer, averaged across
//! objectives.

use crate::features::graph::{build_mst, SpaceTag};
use crate::sampling::EvaluatedSample;
use crate::scalar::Real;
use crate::stats::population_std;

const EPS_DENOM: f64 = 1e-12;

pub fn feature_names() -> Vec<String> {
    ["min", "max", "avg", "std"]
        .iter()
        .map(|s| format!("grad.mo_gradient_{s}"))
        .collect()
}

/// Elementwise min/max/avg/std of the averaged slope vector; all zero when
/// the layer has fewer than two points.
pub fn compute_gradient_features<R: Real>(sample: &EvaluatedSample<R>, l1: &[usize]) -> Vec<R> {
    if l1.len() <= 1 {
        return vec![R::zero(); 4];
    }
    let x = sample.x.select_rows(l1);
    let y = sample.y.select_rows(l1);
    let d = x.n_cols();
    let m = y.n_cols();
    let mst = build_mst(&y, SpaceTag::Objective);
    let eps = R::from_f(EPS_DENOM);
    // edge-major, variable-minor; averaged across objectives elementwise
    let mut averaged = Vec::with_capacity(d * mst.edges.len());
    for &(i, j) in &mst.edges {
        for p in 0..d {
            let dx = (x.get(i, p) - x.get(j, p)).abs();
            let mut sum = R::zero();
            if dx >= eps {
                for k in 0..m {
                    sum = sum + (y.get(i, k) - y.get(j, k)).abs() / dx;
                }
            }
            averaged.push(sum / R::from_usize_(m));
        }
    }
    let mut min = averaged[0];
    let mut max = averaged[0];
    let mut sum = R::zero();
    for &v in &averaged {
        if v < min {
            min = v;
        }
        if v > max {
            max = v;
        }
        sum = sum + v;
    }
    vec![
        min,
        max,
        sum / R::from_usize_(averaged.len()),
        population_std(&averaged),
    ]
}
