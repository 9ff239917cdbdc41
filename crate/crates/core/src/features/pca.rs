//! PCA feature group: explained-variance extremes of the first layer in
//! decision space, objective space, and the concatenated design.

use crate::linalg::jacobi_eigen;
use crate::matrix::Matrix;
use crate::sampling::EvaluatedSample;
use crate::scalar::Real;

pub fn feature_names() -> Vec<String> {
    let mut names = Vec::new();
    for design in ["x", "y", "x_y"] {
        for stat in ["min", "max", "avg"] {
            names.push(format!("pca.{stat}_pc_{design}"));
        }
    }
    names
}

/// Explained-variance ratios of a design's covariance eigenvalues.
/// Degenerate designs (one row or zero total variance) report the uniform
/// ratio 1/ncols for min, max and avg alike.
pub fn explained_variance_ratios<R: Real>(design: &Matrix<R>) -> Vec<R> {
    let n = design.n_rows();
    let p = design.n_cols();
    let uniform = vec![R::one() / R::from_usize_(p); p];
    if n < 2 {
        return uniform;
    }
    let means: Vec<R> = (0..p)
        .map(|j| {
            let mut s = R::zero();
            for i in 0..n {
                s = s + design.get(i, j);
            }
            s / R::from_usize_(n)
        })
        .collect();
    let denom = R::from_usize_(n - 1);
    let mut cov = Matrix::zeros(p, p);
    for a in 0..p {
        for b in a..p {
            let mut s = R::zero();
            for i in 0..n {
                s = s + (design.get(i, a) - means[a]) * (design.get(i, b) - means[b]);
            }
            let v = s / denom;
            cov.set(a, b, v);
            cov.set(b, a, v);
        }
    }
    let (eigenvalues, _) = jacobi_eigen(&cov);
    let clipped: Vec<R> = eigenvalues.iter().map(|&v| v.max(R::zero())).collect();
    let total = clipped.iter().fold(R::zero(), |acc, &v| acc + v);
    if total <= R::zero() {
        return uniform;
    }
    clipped.iter().map(|&v| v / total).collect()
}

fn min_max_avg<R: Real>(ratios: &[R]) -> [R; 3] {
    let mut min = ratios[0];
    let mut max = ratios[0];
    let mut sum = R::zero();
    for &v in ratios {
        if v < min {
            min = v;
        }
        if v > max {
            max = v;
        }
        sum = sum + v;
    }
    [min, max, sum / R::from_usize_(ratios.len())]
}

/// The nine PCA features over the three designs X, Y and X concat Y.
pub fn compute_pca_features<R: Real>(sample: &EvaluatedSample<R>, l1: &[usize]) -> Vec<R> {
    assert!(!l1.is_empty());
    let x = sample.x.select_rows(l1);
    let y = sample.y.select_rows(l1);
    let xy = x.hcat(&y);
    let mut out = Vec::with_capacity(9);
    for design in [&x, &y, &xy] {
        out.extend(min_max_avg(&explained_variance_ratios(design)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_from(x_rows: &[Vec<f64>], y_rows: &[Vec<f64>]) -> EvaluatedSample<f64> {
        EvaluatedSample {
            problem_id: "test".into(),
            seed: 0,
            x: Matrix::from_rows(x_rows),
            y: Matrix::from_rows(y_rows),
            x_raw: Matrix::from_rows(x_rows),
            y_raw: Matrix::from_rows(y_rows),
            y_min: vec![0.0; y_rows[0].len()],
            y_max: vec![1.0; y_rows[0].len()],
            box_lower: vec![0.0; x_rows[0].len()],
            box_upper: vec![1.0; x_rows[0].len()],
        }
    }

    #[test]
    fn collinear_objectives_are_rank_one() {
        // objective rows on an exact line with spread
        let x = vec![vec![0.1, 0.5], vec![0.4, 0.5], vec![0.9, 0.5]];
        let y = vec![vec![0.0, 0.0], vec![0.25, 0.5], vec![0.5, 1.0]];
        let v = compute_pca_features(&sample_from(&x, &y), &[0, 1, 2]);
        let names = feature_names();
        let get = |id: &str| v[names.iter().position(|n| n == id).unwrap()];
        assert!((get("pca.max_pc_y") - 1.0).abs() < 1e-10);
        assert!(get("pca.min_pc_y").abs() < 1e-10);
    }

    #[test]
    fn exactly_isotropic_design() {
        // sample covariance of these four points is a multiple of identity
        let x = vec![
            vec![1.0, 0.0],
            vec![-1.0, 0.0],
            vec![0.0, 1.0],
            vec![0.0, -1.0],
        ];
        let y = vec![vec![0.0, 0.0]; 4];
        let s = sample_from(&x, &y);
        let ratios = explained_variance_ratios(&s.x);
        assert!((ratios[0] - 0.5).abs() < 1e-12);
        assert!((ratios[1] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn avg_is_reciprocal_column_count() {
        let mut rng = crate::rng::keyed_rng(&["pca-avg"]);
        use rand::RngExt;
        let x: Vec<Vec<f64>> = (0..15)
            .map(|_| (0..4).map(|_| rng.random::<f64>()).collect())
            .collect();
        let y: Vec<Vec<f64>> = (0..15)
            .map(|_| (0..2).map(|_| rng.random::<f64>()).collect())
            .collect();
        let s = sample_from(&x, &y);
        let v = compute_pca_features(&s, &(0..15).collect::<Vec<_>>());
        let names = feature_names();
        let get = |id: &str| v[names.iter().position(|n| n == id).unwrap()];
        assert!((get("pca.avg_pc_x") - 0.25).abs() < 1e-12);
        assert!((get("pca.avg_pc_y") - 0.5).abs() < 1e-12);
        assert!((get("pca.avg_pc_x_y") - 1.0 / 6.0).abs() < 1e-12);
    }

    #[test]
    fn degenerate_designs_report_uniform_ratios() {
        // one row
        let s1 = sample_from(&[vec![0.3, 0.4]], &[vec![0.0, 0.0]]);
        let v1 = compute_pca_features(&s1, &[0]);
        assert_eq!(&v1[0..3], &[0.5, 0.5, 0.5]);
        // identical rows (zero variance)
        let s2 = sample_from(
            &[vec![0.3, 0.4], vec![0.3, 0.4]],
            &[vec![0.1, 0.1], vec![0.1, 0.1]],
        );
        let v2 = compute_pca_features(&s2, &[0, 1]);
        assert_eq!(&v2[0..3], &[0.5, 0.5, 0.5]);
    }

    #[test]
    fn ratios_sum_to_one() {
        let mut rng = crate::rng::keyed_rng(&["pca-sum"]);
        use rand::RngExt;
        let x: Vec<Vec<f64>> = (0..20)
            .map(|_| (0..5).map(|_| rng.random::<f64>()).collect())
            .collect();
        let m = Matrix::from_rows(&x);
        let ratios = explained_variance_ratios(&m);
        let total: f64 = ratios.iter().sum();
        assert!((total - 1.0).abs() < 1e-9);
        for w in ratios.windows(2) {
            assert!(w[0] >= w[1]); // descending eigenvalue order
        }
    }
}
