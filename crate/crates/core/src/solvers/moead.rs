//! MOEA/D with Tchebycheff decomposition, uniform weight vectors and
//! neighborhood mating/replacement.

use super::operators::{polynomial_mutation, sbx_pair, uniform_point};
use super::{Population, SolverConfig, SolverCtx};
use crate::scalar::Real;
use rand::RngExt;
use rand_chacha::ChaCha8Rng;

/// Largest simplex-lattice size not exceeding `mu` weight vectors for m=3.
pub fn moead_lattice_mu(mu: usize) -> usize {
    let mut h = 1usize;
    while (h + 2) * (h + 1) / 2 <= mu {
        h += 1;
    }
    h -= 1;
    (h + 2) * (h + 1) / 2
}

/// Uniform weight vectors: a line sweep for two objectives, the simplex
/// lattice for three. For m=3 the count is the lattice size closest below
/// the requested population size.
pub fn moead_weights(mu: usize, m: usize) -> Vec<Vec<f64>> {
    assert!(matches!(m, 2 | 3));
    match m {
        2 => {
            assert!(mu >= 2);
            (0..mu)
                .map(|i| {
                    let w = i as f64 / (mu - 1) as f64;
                    vec![w, 1.0 - w]
                })
                .collect()
        }
        _ => {
            let mut h = 1usize;
            while (h + 2) * (h + 1) / 2 <= mu {
                h += 1;
            }
            h -= 1;
            assert!(h >= 1, "population too small for a 3-objective lattice");
            let mut weights = Vec::new();
            for a in 0..=h {
                for b in 0..=(h - a) {
                    let c = h - a - b;
                    weights.push(vec![
                        a as f64 / h as f64,
                        b as f64 / h as f64,
                        c as f64 / h as f64,
                    ]);
                }
            }
            weights
        }
    }
}

fn tchebycheff<R: Real>(y: &[R], weight: &[R], ideal: &[R]) -> R {
    let floor = R::from_f(1e-6);
    let mut worst = R::neg_infinity();
    for k in 0..y.len() {
        let v = weight[k].max(floor) * (y[k] - ideal[k]).abs();
        if v > worst {
            worst = v;
        }
    }
    worst
}

pub(super) fn run<R: Real>(
    ctx: &mut SolverCtx<'_, R>,
    config: &SolverConfig<R>,
    mu: usize,
    rng: &mut ChaCha8Rng,
) -> Population<R> {
    let spec = ctx.spec;
    let m = spec.n_objectives;
    let weights: Vec<Vec<R>> = moead_weights(mu, m)
        .into_iter()
        .map(|w| w.into_iter().map(R::from_f).collect())
        .collect();
    let mu = weights.len();
    let t = config.moead_neighbors.min(mu);
    // neighborhoods: T nearest weight vectors, self included
    let neighborhoods: Vec<Vec<usize>> = (0..mu)
        .map(|i| {
            let mut order: Vec<usize> = (0..mu).collect();
            order.sort_by(|&a, &b| {
                let da = crate::matrix::euclidean(&weights[i], &weights[a]);
                let db = crate::matrix::euclidean(&weights[i], &weights[b]);
                da.partial_cmp(&db).unwrap().then(a.cmp(&b))
            });
            order.truncate(t);
            order
        })
        .collect();
    let mut xs: Vec<Vec<R>> = (0..mu)
        .map(|_| uniform_point(&spec.lower, &spec.upper, rng))
        .collect();
    let mut ys: Vec<Vec<R>> = xs.iter().map(|x| ctx.eval(x)).collect();
    let mut ideal: Vec<R> = match &config.moead_ideal {
        Some(z) => z.clone(),
        None => (0..m)
            .map(|k| ys.iter().map(|y| y[k]).fold(R::infinity(), R::min))
            .collect(),
    };
    let adaptive_ideal = config.moead_ideal.is_none();
    ctx.observe(&ys);
    let pm_prob = config.pm_prob.unwrap_or(1.0 / spec.dim as f64);
    'outer: loop {
        for i in 0..mu {
            if ctx.evals_left() == 0 {
                break 'outer;
            }
            let b = &neighborhoods[i];
            let pa = b[rng.random_range(0..b.len())];
            let pb = {
                let cand = b[rng.random_range(0..b.len())];
                if cand == pa {
                    b[(b.iter().position(|&v| v == cand).unwrap() + 1) % b.len()]
                } else {
                    cand
                }
            };
            let (mut child, _) = sbx_pair(
                &xs[pa],
                &xs[pb],
                &spec.lower,
                &spec.upper,
                config.sbx_eta,
                config.sbx_prob,
                rng,
            );
            polynomial_mutation(
                &mut child,
                &spec.lower,
                &spec.upper,
                config.pm_eta,
                pm_prob,
                rng,
            );
            let child_y = ctx.eval(&child);
            if adaptive_ideal {
                for k in 0..m {
                    if child_y[k] < ideal[k] {
                        ideal[k] = child_y[k];
                    }
                }
            }
            for &j in b {
                let incumbent = tchebycheff(&ys[j], &weights[j], &ideal);
                let challenger = tchebycheff(&child_y, &weights[j], &ideal);
                if challenger <= incumbent {
                    xs[j] = child.clone();
                    ys[j] = child_y.clone();
                }
            }
        }
        ctx.observe(&ys);
        if ctx.evals_left() == 0 {
            break;
        }
    }
    Population { xs, ys }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bi_objective_weights_sweep_the_line() {
        let w = moead_weights(5, 2);
        assert_eq!(w.len(), 5);
        assert_eq!(w[0], vec![0.0, 1.0]);
        assert_eq!(w[4], vec![1.0, 0.0]);
        for row in &w {
            assert!((row.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn tri_objective_lattice_sizes() {
        assert_eq!(moead_lattice_mu(105), 105); // H = 13
        assert_eq!(moead_weights(105, 3).len(), 105);
        assert_eq!(moead_lattice_mu(100), 91); // H = 11
        for row in moead_weights(105, 3) {
            assert!((row.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        }
    }
}
