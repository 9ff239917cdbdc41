//! Feature-stability and cross-correlation analyses plus a PCA embedding of
//! the feature table for external plotting.

use crate::error::{Error, Result};
use crate::features::pipeline::FeatureTable;
use crate::linalg::jacobi_eigen;
use crate::matrix::Matrix;
use crate::scalar::Real;
use crate::stats::pearson;
use std::collections::BTreeMap;

/// Stability of one (problem, dim, sample size) group: mean pairwise Pearson
/// correlation of its per-seed feature vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct StabilityRow<R> {
    pub problem_id: String,
    pub dim: usize,
    pub sample_size: usize,
    pub n_seeds: usize,
    pub mean_correlation: R,
    /// Pairs whose correlation was undefined (a constant vector) and skipped.
    pub skipped_pairs: usize,
}

/// Pairwise Pearson correlation between two seed vectors over the feature
/// positions in `keep`. Identical vectors correlate perfectly; a constant
/// vector leaves the correlation undefined.
fn pair_correlation<R: Real>(a: &[R], b: &[R], keep: &[usize]) -> Option<R> {
    if a == b {
        return Some(R::one());
    }
    let va: Vec<R> = keep.iter().map(|&i| a[i]).collect();
    let vb: Vec<R> = keep.iter().map(|&i| b[i]).collect();
    pearson(&va, &vb)
}

/// Per-group feature stability across seeds. Feature columns that are
/// constant within a group carry no sampling signal and are excluded from
/// that group's correlations. Groups with fewer than two seeds are skipped.
pub fn stability<R: Real>(
    table: &FeatureTable<R>,
    feature_subset: Option<&[String]>,
) -> Vec<StabilityRow<R>> {
    let columns = subset_indices(table, feature_subset);
    let mut groups: BTreeMap<(String, usize, usize), Vec<&Vec<R>>> = BTreeMap::new();
    for (key, values) in &table.rows {
        groups
            .entry((key.problem_id.clone(), key.dim, key.sample_size))
            .or_default()
            .push(values);
    }
    let mut rows = Vec::new();
    for ((problem_id, dim, sample_size), vectors) in groups {
        let n_seeds = vectors.len();
        if n_seeds < 2 {
            continue;
        }
        // zero-variance guard: drop columns constant across the group
        let keep: Vec<usize> = columns
            .iter()
            .copied()
            .filter(|&c| vectors.iter().any(|v| v[c] != vectors[0][c]))
            .collect();
        let mut sum = R::zero();
        let mut used = 0usize;
        let mut skipped = 0usize;
        for i in 0..n_seeds {
            for j in i + 1..n_seeds {
                match pair_correlation(vectors[i], vectors[j], &keep) {
                    Some(r) => {
                        sum = sum + r;
                        used += 1;
                    }
                    None => skipped += 1,
                }
            }
        }
        let mean = if used > 0 {
            sum / R::from_usize_(used)
        } else {
            R::zero()
        };
        rows.push(StabilityRow {
            problem_id,
            dim,
            sample_size,
            n_seeds,
            mean_correlation: mean,
            skipped_pairs: skipped,
        });
    }
    rows
}

/// Absolute pairwise Pearson correlation between feature columns.
#[derive(Clone, Debug)]
pub struct CorrelationMatrix<R> {
    /// Names of the non-constant columns that entered the matrix.
    pub columns: Vec<String>,
    /// Names of constant columns, excluded as undefined.
    pub excluded: Vec<String>,
    pub matrix: Matrix<R>,
    pub mean_abs_off_diagonal: R,
}

fn subset_indices<R: Real>(table: &FeatureTable<R>, subset: Option<&[String]>) -> Vec<usize> {
    match subset {
        None => (0..table.columns.len()).collect(),
        Some(names) => names
            .iter()
            .filter_map(|n| table.columns.iter().position(|c| c == n))
            .collect(),
    }
}

/// Feature cross-correlation over all table rows; constant columns are
/// reported as excluded rather than entering the mean.
pub fn feature_correlation<R: Real>(
    table: &FeatureTable<R>,
    subset: Option<&[String]>,
) -> Result<CorrelationMatrix<R>> {
    if table.rows.len() < 3 {
        return Err(Error::InvalidInput(format!(
            "feature correlation needs at least 3 rows, got {}",
            table.rows.len()
        )));
    }
    let candidate = subset_indices(table, subset);
    let mut kept = Vec::new();
    let mut excluded = Vec::new();
    for &c in &candidate {
        let col: Vec<R> = table.rows.iter().map(|(_, v)| v[c]).collect();
        if col.iter().any(|&v| v != col[0]) {
            kept.push(c);
        } else {
            excluded.push(table.columns[c].clone());
        }
    }
    let k = kept.len();
    let mut matrix = Matrix::zeros(k, k);
    let mut sum = R::zero();
    let mut pairs = 0usize;
    let cols: Vec<Vec<R>> = kept
        .iter()
        .map(|&c| table.rows.iter().map(|(_, v)| v[c]).collect())
        .collect();
    for i in 0..k {
        matrix.set(i, i, R::one());
        for j in i + 1..k {
            let r = pearson(&cols[i], &cols[j]).map_or(R::zero(), |v| v.abs());
            matrix.set(i, j, r);
            matrix.set(j, i, r);
            sum = sum + r;
            pairs += 1;
        }
    }
    let mean = if pairs > 0 {
        sum / R::from_usize_(pairs)
    } else {
        R::zero()
    };
    Ok(CorrelationMatrix {
        columns: kept.iter().map(|&c| table.columns[c].clone()).collect(),
        excluded,
        matrix,
        mean_abs_off_diagonal: mean,
    })
}

/// First two principal-component scores of the z-scored feature table.
pub fn embed_2d<R: Real>(table: &FeatureTable<R>, subset: Option<&[String]>) -> Result<Matrix<R>> {
    if table.rows.len() < 3 {
        return Err(Error::InvalidInput(format!(
            "embedding needs at least 3 rows, got {}",
            table.rows.len()
        )));
    }
    let candidate = subset_indices(table, subset);
    let n = table.rows.len();
    // z-score non-constant columns
    let mut z_cols: Vec<Vec<R>> = Vec::new();
    for &c in &candidate {
        let col: Vec<R> = table.rows.iter().map(|(_, v)| v[c]).collect();
        let mean = crate::stats::mean(&col);
        let std = crate::stats::sample_std(&col);
        if std > R::zero() {
            z_cols.push(col.into_iter().map(|v| (v - mean) / std).collect());
        }
    }
    let p = z_cols.len();
    if p < 2 {
        return Err(Error::DegenerateEmbedding);
    }
    let denom = R::from_usize_(n - 1);
    let mut cov = Matrix::zeros(p, p);
    for a in 0..p {
        for b in a..p {
            let mut s = R::zero();
            for i in 0..n {
                s = s + z_cols[a][i] * z_cols[b][i];
            }
            let v = s / denom;
            cov.set(a, b, v);
            cov.set(b, a, v);
        }
    }
    let (_, vectors) = jacobi_eigen(&cov);
    let mut scores = Matrix::zeros(n, 2);
    for i in 0..n {
        for pc in 0..2 {
            let mut s = R::zero();
            for (a, col) in z_cols.iter().enumerate() {
                s = s + col[i] * vectors.get(a, pc);
            }
            scores.set(i, pc, s);
        }
    }
    Ok(scores)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::features::pipeline::RowKey;
    use rand::RngExt;

    fn table_with(
        rows: Vec<(&str, usize, usize, u64, Vec<f64>)>,
        n_cols: usize,
    ) -> FeatureTable<f64> {
        FeatureTable {
            m: 2,
            columns: (0..n_cols).map(|i| format!("f{i}")).collect(),
            rows: rows
                .into_iter()
                .map(|(pid, dim, size, seed, values)| {
                    (
                        RowKey {
                            problem_id: pid.into(),
                            dim,
                            m: 2,
                            sample_size: size,
                            seed,
                        },
                        values,
                    )
                })
                .collect(),
        }
    }

    #[test]
    fn identical_vectors_are_perfectly_stable() {
        let v = vec![0.3, 0.8, 0.1, 0.9];
        let rows = (0..20)
            .map(|s| ("p", 2, 100, s as u64, v.clone()))
            .collect();
        let report = stability(&table_with(rows, 4), None);
        assert_eq!(report.len(), 1);
        assert_eq!(report[0].mean_correlation, 1.0);
        assert_eq!(report[0].n_seeds, 20);
    }

    #[test]
    fn independent_noise_has_near_zero_stability() {
        let mut rng = crate::rng::keyed_rng(&["stability-noise"]);
        let rows: Vec<(&str, usize, usize, u64, Vec<f64>)> = (0..20)
            .map(|s| {
                let v: Vec<f64> = (0..200).map(|_| rng.random::<f64>()).collect();
                ("p", 2, 100, s as u64, v)
            })
            .collect();
        let report = stability(&table_with(rows, 200), None);
        assert!(
            report[0].mean_correlation.abs() < 0.1,
            "mean {}",
            report[0].mean_correlation
        );
    }

    #[test]
    fn groups_with_one_seed_are_skipped() {
        let rows = vec![
            ("p", 2, 100, 0, vec![1.0, 2.0]),
            ("q", 2, 100, 0, vec![1.0, 2.0]),
        ];
        assert!(stability(&table_with(rows, 2), None).is_empty());
    }

    #[test]
    fn stability_invariant_under_common_affine_rescaling() {
        let mut rng = crate::rng::keyed_rng(&["stability-affine"]);
        let base: Vec<Vec<f64>> = (0..6)
            .map(|_| (0..30).map(|_| rng.random::<f64>()).collect())
            .collect();
        let rows_a: Vec<(&str, usize, usize, u64, Vec<f64>)> = base
            .iter()
            .enumerate()
            .map(|(s, v)| ("p", 2, 100, s as u64, v.clone()))
            .collect();
        let rows_b: Vec<(&str, usize, usize, u64, Vec<f64>)> = base
            .iter()
            .enumerate()
            .map(|(s, v)| {
                (
                    "p",
                    2,
                    100,
                    s as u64,
                    v.iter().map(|x| 3.0 * x + 7.0).collect(),
                )
            })
            .collect();
        let a = stability(&table_with(rows_a, 30), None);
        let b = stability(&table_with(rows_b, 30), None);
        assert!((a[0].mean_correlation - b[0].mean_correlation).abs() < 1e-9);
    }

    #[test]
    fn constant_vector_pairs_are_skipped_and_counted() {
        let rows = vec![
            ("p", 2, 100, 0, vec![0.5, 0.5, 0.5]),
            ("p", 2, 100, 1, vec![0.1, 0.9, 0.4]),
            ("p", 2, 100, 2, vec![0.2, 0.8, 0.5]),
        ];
        let report = stability(&table_with(rows, 3), None);
        // pairs (0,1) and (0,2) have a constant side, only (1,2) counts
        assert_eq!(report[0].skipped_pairs, 2);
    }

    #[test]
    fn correlation_identical_and_negated_columns() {
        let mut rng = crate::rng::keyed_rng(&["corr-cols"]);
        let rows: Vec<(&str, usize, usize, u64, Vec<f64>)> = (0..10)
            .map(|s| {
                let x: f64 = rng.random();
                let y: f64 = rng.random();
                ("p", 2, 100, s as u64, vec![x, x, -x, y])
            })
            .collect();
        let corr = feature_correlation(&table_with(rows, 4), None).unwrap();
        let idx = |n: &str| corr.columns.iter().position(|c| c == n).unwrap();
        let m = &corr.matrix;
        assert!((m.get(idx("f0"), idx("f1")) - 1.0).abs() < 1e-12);
        assert!((m.get(idx("f0"), idx("f2")) - 1.0).abs() < 1e-12);
        assert!(m.get(idx("f0"), idx("f3")) < 1.0);
        // symmetric with unit diagonal
        for i in 0..corr.columns.len() {
            assert_eq!(m.get(i, i), 1.0);
            for j in 0..corr.columns.len() {
                assert_eq!(m.get(i, j), m.get(j, i));
            }
        }
    }

    #[test]
    fn correlation_excludes_constant_columns() {
        let rows: Vec<(&str, usize, usize, u64, Vec<f64>)> = (0..5)
            .map(|s| ("p", 2, 100, s as u64, vec![s as f64, 1.0]))
            .collect();
        let corr = feature_correlation(&table_with(rows, 2), None).unwrap();
        assert_eq!(corr.excluded, vec!["f1".to_string()]);
        assert_eq!(corr.columns, vec!["f0".to_string()]);
    }

    #[test]
    fn embedding_of_rank_one_table_collapses_second_axis() {
        let rows: Vec<(&str, usize, usize, u64, Vec<f64>)> = (0..8)
            .map(|s| {
                let t = s as f64;
                ("p", 2, 100, s as u64, vec![t, 2.0 * t, -t])
            })
            .collect();
        let scores = embed_2d(&table_with(rows, 3), None).unwrap();
        for i in 0..scores.n_rows() {
            assert!(scores.get(i, 1).abs() < 1e-9);
        }
    }

    #[test]
    fn embedding_preserves_cluster_separation() {
        let mut rng = crate::rng::keyed_rng(&["embed-clusters"]);
        let mut rows = Vec::new();
        for s in 0..30u64 {
            let centre = if s < 15 { 0.0 } else { 10.0 };
            let v: Vec<f64> = (0..6).map(|_| centre + rng.random::<f64>()).collect();
            rows.push(("p", 2usize, 100usize, s, v));
        }
        let table = table_with(rows, 6);
        let scores = embed_2d(&table, None).unwrap();
        // silhouette-style check: clusters separated along the embedding
        let (a, b): (Vec<f64>, Vec<f64>) = (
            (0..15).map(|i| scores.get(i, 0)).collect(),
            (15..30).map(|i| scores.get(i, 0)).collect(),
        );
        let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
        let spread = |v: &[f64], m: f64| v.iter().map(|x| (x - m).abs()).fold(0.0, f64::max);
        let (ma, mb) = (mean(&a), mean(&b));
        assert!((ma - mb).abs() > spread(&a, ma) + spread(&b, mb));
    }

    #[test]
    fn embedding_rejects_identical_rows() {
        let rows: Vec<(&str, usize, usize, u64, Vec<f64>)> = (0..5)
            .map(|s| ("p", 2, 100, s as u64, vec![1.0, 2.0, 3.0]))
            .collect();
        assert!(matches!(
            embed_2d(&table_with(rows, 3), None),
            Err(Error::DegenerateEmbedding)
        ));
    }
}
