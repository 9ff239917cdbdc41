//! Variation operators: simulated binary crossover and polynomial mutation,
//! both box-clamped.

use crate::scalar::Real;
use rand::RngExt;
use rand_chacha::ChaCha8Rng;

pub fn uniform_point<R: Real>(lower: &[R], upper: &[R], rng: &mut ChaCha8Rng) -> Vec<R> {
    lower
        .iter()
        .zip(upper)
        .map(|(&lo, &hi)| lo + R::from_f(rng.random::<f64>()) * (hi - lo))
        .collect()
}

fn clamp<R: Real>(v: R, lo: R, hi: R) -> R {
    v.max(lo).min(hi)
}

/// Simulated binary crossover; applies per-variable with probability 0.5
/// once the pair is selected for crossover at all (probability `prob`).
pub fn sbx_pair<R: Real>(
    a: &[R],
    b: &[R],
    lower: &[R],
    upper: &[R],
    eta: R,
    prob: f64,
    rng: &mut ChaCha8Rng,
) -> (Vec<R>, Vec<R>) {
    let mut c1 = a.to_vec();
    let mut c2 = b.to_vec();
    if rng.random::<f64>() > prob {
        return (c1, c2);
    }
    let half = R::from_f(0.5);
    let exponent = R::one() / (eta + R::one());
    for j in 0..a.len() {
        if rng.random::<f64>() > 0.5 {
            continue;
        }
        let u = R::from_f(rng.random::<f64>());
        let beta = if u <= half {
            (R::from_f(2.0) * u).powf(exponent)
        } else {
            (R::one() / (R::from_f(2.0) * (R::one() - u))).powf(exponent)
        };
        let x1 = a[j];
        let x2 = b[j];
        c1[j] = clamp(
            half * ((R::one() + beta) * x1 + (R::one() - beta) * x2),
            lower[j],
            upper[j],
        );
        c2[j] = clamp(
            half * ((R::one() - beta) * x1 + (R::one() + beta) * x2),
            lower[j],
            upper[j],
        );
    }
    (c1, c2)
}

/// Bounded polynomial mutation, applied per variable with probability `prob`.
pub fn polynomial_mutation<R: Real>(
    x: &mut [R],
    lower: &[R],
    upper: &[R],
    eta: R,
    prob: f64,
    rng: &mut ChaCha8Rng,
) {
    let exponent = R::one() / (eta + R::one());
    for j in 0..x.len() {
        if rng.random::<f64>() > prob {
            continue;
        }
        let span = upper[j] - lower[j];
        if span <= R::zero() {
            continue;
        }
        let d1 = (x[j] - lower[j]) / span;
        let d2 = (upper[j] - x[j]) / span;
        let u = R::from_f(rng.random::<f64>());
        let half = R::from_f(0.5);
        let two = R::from_f(2.0);
        let delta = if u < half {
            let base = two * u + (R::one() - two * u) * (R::one() - d1).powf(eta + R::one());
            base.powf(exponent) - R::one()
        } else {
            let base =
                two * (R::one() - u) + two * (u - half) * (R::one() - d2).powf(eta + R::one());
            R::one() - base.powf(exponent)
        };
        x[j] = clamp(x[j] + delta * span, lower[j], upper[j]);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::keyed_rng;

    #[test]
    fn children_stay_in_box() {
        let mut rng = keyed_rng(&["sbx-box"]);
        let lower = vec![0.0, -5.0];
        let upper = vec![1.0, 5.0];
        for _ in 0..200 {
            let a = uniform_point(&lower, &upper, &mut rng);
            let b = uniform_point(&lower, &upper, &mut rng);
            let (mut c1, c2) = sbx_pair(&a, &b, &lower, &upper, 15.0, 0.9, &mut rng);
            polynomial_mutation(&mut c1, &lower, &upper, 20.0, 0.5, &mut rng);
            for c in [&c1, &c2] {
                for j in 0..2 {
                    assert!(c[j] >= lower[j] && c[j] <= upper[j]);
                }
            }
        }
    }

    #[test]
    fn operators_are_deterministic_per_seed() {
        let run = || {
            let mut rng = keyed_rng(&["op-det"]);
            let a = vec![0.2, 0.4];
            let b = vec![0.9, 0.1];
            let lower = vec![0.0, 0.0];
            let upper = vec![1.0, 1.0];
            let (mut c1, _) = sbx_pair(&a, &b, &lower, &upper, 15.0, 0.9, &mut rng);
            polynomial_mutation(&mut c1, &lower, &upper, 20.0, 1.0, &mut rng);
            c1
        };
        assert_eq!(run(), run());
    }
}
