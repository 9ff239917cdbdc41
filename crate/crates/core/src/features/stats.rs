//! Descriptive statistics of the non-dominated objective vectors.

use crate::sampling::EvaluatedSample;
use crate::scalar::Real;
use crate::stats::{pearson, sample_std, spearman};

pub fn feature_names(m: usize) -> Vec<String> {
    let mut names = Vec::new();
    for k in 1..=m {
        for stat in ["min", "max", "avg", "std"] {
            names.push(format!("stats.{stat}_{k}"));
        }
    }
    if m == 2 {
        names.push("stats.obj_std_diff".to_string());
        names.push("stats.corr_obj".to_string());
        names.push("stats.spearman_corr_obj".to_string());
    }
    names
}

/// Descriptive statistics over the scaled objective rows of `l1`.
///
/// A single-point layer (and, equivalently, a layer of identical vectors)
/// fixes both correlations to 1 and the standard deviations to 0.
pub fn compute_stats_features<R: Real>(sample: &EvaluatedSample<R>, l1: &[usize]) -> Vec<R> {
    assert!(!l1.is_empty());
    let m = sample.n_objectives();
    let y = sample.y.select_rows(l1);
    let cols: Vec<Vec<R>> = (0..m).map(|k| y.col(k)).collect();
    let mut out = Vec::new();
    let mut stds = Vec::with_capacity(m);
    for col in &cols {
        let mut min = col[0];
        let mut max = col[0];
        let mut sum = R::zero();
        for &v in col {
            if v < min {
                min = v;
            }
            if v > max {
                max = v;
            }
            sum = sum + v;
        }
        let std = sample_std(col);
        stds.push(std);
        out.extend([min, max, sum / R::from_usize_(col.len()), std]);
    }
    if m == 2 {
        out.push((stds[0] - stds[1]).abs());
        out.push(pearson(&cols[0], &cols[1]).unwrap_or_else(R::one));
        out.push(spearman(&cols[0], &cols[1]).unwrap_or_else(R::one));
    }
    out
}
