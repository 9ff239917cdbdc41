//! Latin hypercube sampling and the scaled evaluated sample.

use crate::error::Result;
use crate::matrix::Matrix;
use crate::problems::ProblemSpec;
use crate::rng::{keyed_rng, shuffled_indices};
use crate::scalar::Real;
use rand::RngExt;

/// A sample of the decision space together with its objective images,
/// in both raw and scaled coordinates. Rows are index-aligned.
#[derive(Clone, Debug, PartialEq)]
pub struct EvaluatedSample<R> {
    pub problem_id: String,
    pub seed: u64,
    /// Decision points scaled into the unit box.
    pub x: Matrix<R>,
    /// Objectives min-max scaled per column into [0,1].
    pub y: Matrix<R>,
    pub x_raw: Matrix<R>,
    pub y_raw: Matrix<R>,
    pub y_min: Vec<R>,
    pub y_max: Vec<R>,
    pub box_lower: Vec<R>,
    pub box_upper: Vec<R>,
}

impl<R: Real> EvaluatedSample<R> {
    pub fn len(&self) -> usize {
        self.x.n_rows()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn dim(&self) -> usize {
        self.x.n_cols()
    }

    pub fn n_objectives(&self) -> usize {
        self.y.n_cols()
    }
}

/// Latin hypercube sample of `n` points in the unit box: every dimension
/// places exactly one point in each of the `n` equal-width strata.
/// Points are uniform within their stratum.
pub fn lhs<R: Real>(n: usize, dim: usize, seed: u64) -> Matrix<R> {
    assert!(n >= 1 && dim >= 1);
    let mut rng = keyed_rng(&["lhs", &n.to_string(), &dim.to_string(), &seed.to_string()]);
    let mut out = Matrix::zeros(n, dim);
    let nf = n as f64;
    for j in 0..dim {
        let strata = shuffled_indices(n, &mut rng);
        for i in 0..n {
            let u: f64 = rng.random();
            out.set(i, j, R::from_f((strata[i] as f64 + u) / nf));
        }
    }
    out
}

/// Draw, evaluate and scale a sample for one problem instance.
///
/// The generator is keyed by (problem id, n, seed), so outputs do not depend
/// on the order in which samples are produced.
pub fn draw_sample<R: Real>(
    spec: &ProblemSpec<R>,
    n: usize,
    seed: u64,
) -> Result<EvaluatedSample<R>> {
    let unit = lhs_for(spec, n, seed);
    let d = spec.dim;
    let m = spec.n_objectives;
    let mut x_raw = Matrix::zeros(n, d);
    for i in 0..n {
        for j in 0..d {
            let w = spec.upper[j] - spec.lower[j];
            x_raw.set(i, j, spec.lower[j] + unit.get(i, j) * w);
        }
    }
    let mut y_raw = Matrix::zeros(n, m);
    for i in 0..n {
        let y = spec.evaluate(x_raw.row(i))?;
        for k in 0..m {
            y_raw.set(i, k, y[k]);
        }
    }
    let mut y_min = vec![R::infinity(); m];
    let mut y_max = vec![R::neg_infinity(); m];
    for i in 0..n {
        for k in 0..m {
            let v = y_raw.get(i, k);
            if v < y_min[k] {
                y_min[k] = v;
            }
            if v > y_max[k] {
                y_max[k] = v;
            }
        }
    }
    let mut y = Matrix::zeros(n, m);
    for k in 0..m {
        let range = y_max[k] - y_min[k];
        if range > R::zero() {
            for i in 0..n {
                y.set(i, k, (y_raw.get(i, k) - y_min[k]) / range);
            }
        }
        // constant column stays all-zero
    }
    Ok(EvaluatedSample {
        problem_id: spec.id.clone(),
        seed,
        x: unit,
        y,
        x_raw,
        y_raw,
        y_min,
        y_max,
        box_lower: spec.lower.clone(),
        box_upper: spec.upper.clone(),
    })
}

fn lhs_for<R: Real>(spec: &ProblemSpec<R>, n: usize, seed: u64) -> Matrix<R> {
    let mut rng = keyed_rng(&["sample", &spec.id, &n.to_string(), &seed.to_string()]);
    let mut out = Matrix::zeros(n, spec.dim);
    let nf = n as f64;
    for j in 0..spec.dim {
        let strata = shuffled_indices(n, &mut rng);
        for i in 0..n {
            let u: f64 = rng.random();
            out.set(i, j, R::from_f((strata[i] as f64 + u) / nf));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::{ProblemSpec, ZdtVariant};
    use proptest::prelude::*;

    fn stratum_histogram(column: &[f64]) -> Vec<usize> {
        let n = column.len();
        let mut hist = vec![0usize; n];
        for &v in column {
            let s = ((v * n as f64).floor() as usize).min(n - 1);
            hist[s] += 1;
        }
        hist
    }

    #[test]
    fn lhs_single_point() {
        let m: Matrix<f64> = lhs(1, 3, 0);
        for j in 0..3 {
            let v = m.get(0, j);
            assert!((0.0..1.0).contains(&v));
        }
    }

    #[test]
    fn lhs_stratification_four_by_two() {
        let m: Matrix<f64> = lhs(4, 2, 5);
        for j in 0..2 {
            assert_eq!(stratum_histogram(&m.col(j)), vec![1, 1, 1, 1]);
        }
    }

    #[test]
    fn lhs_deterministic() {
        let a: Matrix<f64> = lhs(16, 4, 123);
        let b: Matrix<f64> = lhs(16, 4, 123);
        assert_eq!(a, b);
    }

    #[test]
    fn sample_scaling_hits_zero_and_one() {
        let spec: ProblemSpec<f64> = ProblemSpec::zdt(ZdtVariant::Zdt1, 3);
        let s = draw_sample(&spec, 100, 1).unwrap();
        for k in 0..2 {
            let col = s.y.col(k);
            let min = col.iter().cloned().fold(f64::INFINITY, f64::min);
            let max = col.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            assert_eq!(min, 0.0);
            assert_eq!(max, 1.0);
        }
    }

    #[test]
    fn sample_draws_are_deterministic() {
        let spec: ProblemSpec<f64> = ProblemSpec::zdt(ZdtVariant::Zdt1, 2);
        let a = draw_sample(&spec, 500, 7).unwrap();
        let b = draw_sample(&spec, 500, 7).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn scaling_round_trip() {
        let spec: ProblemSpec<f64> = ProblemSpec::zdt(ZdtVariant::Zdt4, 4);
        let s = draw_sample(&spec, 64, 3).unwrap();
        for i in 0..s.len() {
            for k in 0..s.n_objectives() {
                let rebuilt = s.y_min[k] + s.y.get(i, k) * (s.y_max[k] - s.y_min[k]);
                let raw = s.y_raw.get(i, k);
                let tol = 1e-12 * raw.abs().max(1.0);
                assert!((rebuilt - raw).abs() <= tol);
            }
        }
    }

    #[test]
    fn constant_objective_scales_to_zeros() {
        // a one-point sample makes every objective column constant
        let spec: ProblemSpec<f64> = ProblemSpec::zdt(ZdtVariant::Zdt1, 2);
        let s = draw_sample(&spec, 1, 0).unwrap();
        assert_eq!(s.y.row(0), &[0.0, 0.0]);
    }

    proptest! {
        #[test]
        fn lhs_stratification_holds(n in 1usize..40, dim in 1usize..6, seed in 0u64..500) {
            let m: Matrix<f64> = lhs(n, dim, seed);
            for j in 0..dim {
                let hist = stratum_histogram(&m.col(j));
                prop_assert!(hist.iter().all(|&c| c == 1));
            }
        }
    }
}
