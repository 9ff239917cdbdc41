//! Steady-state (mu+1) SMS-EMOA: the point of least exact hypervolume
//! contribution in the worst non-domination layer is discarded each step.

use super::operators::{polynomial_mutation, sbx_pair, uniform_point};
use super::{Population, SolverConfig, SolverCtx};
use crate::dominance::non_dominated_sort;
use crate::indicators::{hv, RefPoint};
use crate::matrix::Matrix;
use crate::scalar::Real;
use rand::RngExt;
use rand_chacha::ChaCha8Rng;

/// Exact hypervolume contributions of the given rows w.r.t. `reference`.
fn contributions<R: Real>(ys: &[Vec<R>], members: &[usize], reference: &RefPoint<R>) -> Vec<R> {
    let rows: Vec<Vec<R>> = members.iter().map(|&i| ys[i].clone()).collect();
    let full = hv(&Matrix::from_rows(&rows), reference).expect("2 or 3 objectives");
    (0..members.len())
        .map(|drop| {
            let rest: Vec<Vec<R>> = rows
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != drop)
                .map(|(_, r)| r.clone())
                .collect();
            full - hv(&Matrix::from_rows(&rest), reference).expect("2 or 3 objectives")
        })
        .collect()
}

pub(super) fn run<R: Real>(
    ctx: &mut SolverCtx<'_, R>,
    config: &SolverConfig<R>,
    mu: usize,
    rng: &mut ChaCha8Rng,
) -> Population<R> {
    let spec = ctx.spec;
    let m = spec.n_objectives;
    let mut xs: Vec<Vec<R>> = (0..mu)
        .map(|_| uniform_point(&spec.lower, &spec.upper, rng))
        .collect();
    let mut ys: Vec<Vec<R>> = xs.iter().map(|x| ctx.eval(x)).collect();
    ctx.observe(&ys);
    let pm_prob = config.pm_prob.unwrap_or(1.0 / spec.dim as f64);
    while ctx.evals_left() >= 1 {
        let pa = rng.random_range(0..mu);
        let pb = {
            let b = rng.random_range(0..mu);
            if b == pa {
                (b + 1) % mu
            } else {
                b
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
        xs.push(child);
        ys.push(child_y);
        let layers = non_dominated_sort(&Matrix::from_rows(&ys));
        let worst = layers.layer(layers.height() - 1);
        let removed = if worst.len() == 1 {
            worst[0]
        } else {
            let reference = match &config.hv_ref {
                Some(r) => RefPoint(r.clone()),
                None => {
                    // dynamic fallback: worst-layer maxima plus unit offset
                    let r: Vec<R> = (0..m)
                        .map(|k| {
                            worst
                                .iter()
                                .map(|&i| ys[i][k])
                                .fold(R::neg_infinity(), R::max)
                                + R::one()
                        })
                        .collect();
                    RefPoint(r)
                }
            };
            let contrib = contributions(&ys, worst, &reference);
            let pos = (0..worst.len())
                .min_by(|&a, &b| contrib[a].partial_cmp(&contrib[b]).unwrap().then(a.cmp(&b)))
                .unwrap();
            worst[pos]
        };
        xs.remove(removed);
        ys.remove(removed);
        ctx.observe(&ys);
    }
    Population { xs, ys }
}
