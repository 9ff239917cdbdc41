//! Generational (mu+mu) NSGA-II with binary tournament on rank and
//! crowding distance.

use super::operators::{polynomial_mutation, sbx_pair, uniform_point};
use super::{Population, SolverConfig, SolverCtx};
use crate::dominance::non_dominated_sort;
use crate::scalar::Real;
use rand::RngExt;
use rand_chacha::ChaCha8Rng;

pub(super) fn crowding_distance<R: Real>(ys: &[Vec<R>], front: &[usize]) -> Vec<R> {
    let m = ys[0].len();
    let k = front.len();
    let mut dist = vec![R::zero(); k];
    if k <= 2 {
        return vec![R::infinity(); k];
    }
    for obj in 0..m {
        let mut order: Vec<usize> = (0..k).collect();
        order.sort_by(|&a, &b| {
            ys[front[a]][obj]
                .partial_cmp(&ys[front[b]][obj])
                .unwrap()
                .then(a.cmp(&b))
        });
        let lo = ys[front[order[0]]][obj];
        let hi = ys[front[order[k - 1]]][obj];
        dist[order[0]] = R::infinity();
        dist[order[k - 1]] = R::infinity();
        if hi > lo {
            for w in 1..k - 1 {
                let gap = ys[front[order[w + 1]]][obj] - ys[front[order[w - 1]]][obj];
                dist[order[w]] = dist[order[w]] + gap / (hi - lo);
            }
        }
    }
    dist
}

struct Ranked<R> {
    rank: Vec<usize>,
    crowding: Vec<R>,
}

fn rank_population<R: Real>(ys: &[Vec<R>]) -> Ranked<R> {
    let layers = non_dominated_sort(&crate::matrix::Matrix::from_rows(ys));
    let rank = layers.rank_of();
    let mut crowding = vec![R::zero(); ys.len()];
    for front in layers.layers() {
        for (pos, &i) in front.iter().enumerate() {
            crowding[i] = crowding_distance(ys, front)[pos];
        }
    }
    Ranked { rank, crowding }
}

fn tournament<R: Real>(ranked: &Ranked<R>, n: usize, rng: &mut ChaCha8Rng) -> usize {
    let a = rng.random_range(0..n);
    let b = rng.random_range(0..n);
    if ranked.rank[a] < ranked.rank[b] {
        a
    } else if ranked.rank[b] < ranked.rank[a] {
        b
    } else if ranked.crowding[a] > ranked.crowding[b] {
        a
    } else if ranked.crowding[b] > ranked.crowding[a] {
        b
    } else {
        a.min(b)
    }
}

/// Environmental selection: whole fronts, the split front by crowding.
fn survival<R: Real>(ys: &[Vec<R>], mu: usize) -> Vec<usize> {
    let layers = non_dominated_sort(&crate::matrix::Matrix::from_rows(ys));
    let mut chosen = Vec::with_capacity(mu);
    for front in layers.layers() {
        if chosen.len() + front.len() <= mu {
            chosen.extend_from_slice(front);
            if chosen.len() == mu {
                break;
            }
        } else {
            let crowding = crowding_distance(ys, front);
            let mut order: Vec<usize> = (0..front.len()).collect();
            order.sort_by(|&a, &b| {
                crowding[b]
                    .partial_cmp(&crowding[a])
                    .unwrap()
                    .then(front[a].cmp(&front[b]))
            });
            for &pos in order.iter().take(mu - chosen.len()) {
                chosen.push(front[pos]);
            }
            break;
        }
    }
    chosen
}

pub(super) fn run<R: Real>(
    ctx: &mut SolverCtx<'_, R>,
    config: &SolverConfig<R>,
    mu: usize,
    rng: &mut ChaCha8Rng,
) -> Population<R> {
    let spec = ctx.spec;
    let mut xs: Vec<Vec<R>> = (0..mu)
        .map(|_| uniform_point(&spec.lower, &spec.upper, rng))
        .collect();
    let mut ys: Vec<Vec<R>> = xs.iter().map(|x| ctx.eval(x)).collect();
    ctx.observe(&ys);
    let pm_prob = config.pm_prob.unwrap_or(1.0 / spec.dim as f64);
    while ctx.evals_left() >= mu {
        let ranked = rank_population(&ys);
        let parents: Vec<usize> = (0..mu).map(|_| tournament(&ranked, mu, rng)).collect();
        let mut off_x = Vec::with_capacity(mu);
        for pair in parents.chunks(2) {
            let (pa, pb) = (pair[0], *pair.last().unwrap());
            let (mut c1, mut c2) = sbx_pair(
                &xs[pa],
                &xs[pb],
                &spec.lower,
                &spec.upper,
                config.sbx_eta,
                config.sbx_prob,
                rng,
            );
            polynomial_mutation(
                &mut c1,
                &spec.lower,
                &spec.upper,
                config.pm_eta,
                pm_prob,
                rng,
            );
            off_x.push(c1);
            if off_x.len() < mu {
                polynomial_mutation(
                    &mut c2,
                    &spec.lower,
                    &spec.upper,
                    config.pm_eta,
                    pm_prob,
                    rng,
                );
                off_x.push(c2);
            }
        }
        let off_y: Vec<Vec<R>> = off_x.iter().map(|x| ctx.eval(x)).collect();
        xs.extend(off_x);
        ys.extend(off_y);
        let keep = survival(&ys, mu);
        xs = keep.iter().map(|&i| xs[i].clone()).collect();
        ys = keep.iter().map(|&i| ys[i].clone()).collect();
        ctx.observe(&ys);
    }
    Population { xs, ys }
}
