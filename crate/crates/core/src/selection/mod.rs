//! Performance data for algorithm selection: normalized hypervolume per run,
//! instance labels, the relative-improvement measure, and rank contingency
//! tables.

mod selector;

pub use selector::{
    assemble_dataset, evaluate_selector, knn_predict, macro_f1, train_selector, Dataset,
    SelectionReport, SelectorModel, TrainParams,
};

use crate::dominance::nd_filter;
use crate::error::{Error, Result};
use crate::indicators::{hv, RefPoint};
use crate::matrix::Matrix;
use crate::scalar::Real;
use crate::solvers::{SolverId, SolverRun};
use std::collections::BTreeMap;

/// Normalized hypervolume of one solver run on one instance.
#[derive(Clone, Debug, PartialEq)]
pub struct PerformanceRecord<R> {
    pub problem_id: String,
    pub dim: usize,
    pub sample_size: usize,
    pub solver: SolverId,
    pub seed: u64,
    pub hvn: R,
}

/// Per-instance label: the solver with the highest mean HVN.
#[derive(Clone, Debug, PartialEq)]
pub struct InstanceLabel<R> {
    pub problem_id: String,
    pub dim: usize,
    pub sample_size: usize,
    pub best: SolverId,
    /// Mean HVN per solver, in [`SolverId::ALL`] order.
    pub mean_hvn: Vec<R>,
}

/// Reference point over the pooled non-dominated points of all runs:
/// per-objective maximum scaled by 1.1 (0.9 when the maximum is negative,
/// so the reference stays weakly dominated).
pub fn reference_point<R: Real>(runs: &[SolverRun<R>]) -> RefPoint<R> {
    assert!(!runs.is_empty());
    let pooled = pooled_non_dominated(runs);
    let m = pooled.n_cols();
    let r = (0..m)
        .map(|k| {
            let max = pooled.col(k).into_iter().fold(R::neg_infinity(), R::max);
            if max >= R::zero() {
                max * R::from_f(1.1)
            } else {
                max * R::from_f(0.9)
            }
        })
        .collect();
    RefPoint(r)
}

fn pooled_non_dominated<R: Real>(runs: &[SolverRun<R>]) -> Matrix<R> {
    let rows: Vec<Vec<R>> = runs
        .iter()
        .flat_map(|run| run.y.rows_iter().map(<[R]>::to_vec))
        .collect();
    let all = Matrix::from_rows(&rows);
    let nd = nd_filter(&all);
    all.select_rows(&nd)
}

/// Normalized hypervolume: run HV over reference HV, clipped into [0,1].
pub fn hvn<R: Real>(run: &SolverRun<R>, reference: &RefPoint<R>, reference_hv: R) -> Result<R> {
    if !(reference_hv > R::zero()) {
        return Err(Error::DegenerateReference(run.problem_id.clone()));
    }
    let value = hv(&run.y, reference)? / reference_hv;
    Ok(value.min(R::one()).max(R::zero()))
}

/// Relative improvement of a selection policy against the single best
/// solver, 1 at the virtual best, 0 at SBS parity; an empty gap counts 0.
pub fn relative_improvement<R: Real>(selected_hvn: R, sbs_hvn: R, vbs_hvn: R) -> R {
    debug_assert!(vbs_hvn >= sbs_hvn);
    let gap = vbs_hvn - sbs_hvn;
    if gap == R::zero() {
        R::zero()
    } else {
        (selected_hvn - sbs_hvn) / gap
    }
}

/// Build performance records for one instance from its complete run set,
/// replicated per feature sample size. Returns the number of rows whose raw
/// HVN exceeded 1 before clipping (floating-point spill).
pub fn build_performance<R: Real>(
    runs: &[SolverRun<R>],
    sample_sizes: &[usize],
    records: &mut Vec<PerformanceRecord<R>>,
) -> Result<usize> {
    assert!(!runs.is_empty());
    let reference = reference_point(runs);
    let pooled = pooled_non_dominated(runs);
    let reference_hv = hv(&pooled, &reference)?;
    let mut clipped = 0usize;
    for run in runs {
        if !(reference_hv > R::zero()) {
            return Err(Error::DegenerateReference(run.problem_id.clone()));
        }
        let raw = hv(&run.y, &reference)? / reference_hv;
        if raw > R::one() {
            clipped += 1;
        }
        let value = raw.min(R::one()).max(R::zero());
        for &size in sample_sizes {
            records.push(PerformanceRecord {
                problem_id: run.problem_id.clone(),
                dim: run.dim,
                sample_size: size,
                solver: run.solver,
                seed: run.seed,
                hvn: value,
            });
        }
    }
    Ok(clipped)
}

/// Mean HVN per solver and the argmax label per (problem, dim, sample size).
/// Ties break by the fixed solver order.
pub fn build_labels<R: Real>(records: &[PerformanceRecord<R>]) -> Vec<InstanceLabel<R>> {
    let mut groups: BTreeMap<(String, usize, usize), BTreeMap<SolverId, Vec<R>>> = BTreeMap::new();
    for r in records {
        groups
            .entry((r.problem_id.clone(), r.dim, r.sample_size))
            .or_default()
            .entry(r.solver)
            .or_default()
            .push(r.hvn);
    }
    groups
        .into_iter()
        .map(|((problem_id, dim, sample_size), by_solver)| {
            let mean_hvn: Vec<R> = SolverId::ALL
                .iter()
                .map(|s| {
                    by_solver.get(s).map_or(R::zero(), |v| {
                        let mut sum = R::zero();
                        for &x in v {
                            sum = sum + x;
                        }
                        sum / R::from_usize_(v.len())
                    })
                })
                .collect();
            let best = SolverId::ALL
                .into_iter()
                .enumerate()
                .max_by(|(i, _), (j, _)| {
                    mean_hvn[*i]
                        .partial_cmp(&mean_hvn[*j])
                        .unwrap()
                        .then(j.cmp(i))
                })
                .map(|(_, s)| s)
                .unwrap();
            InstanceLabel {
                problem_id,
                dim,
                sample_size,
                best,
                mean_hvn,
            }
        })
        .collect()
}

/// One row of the per-family rank contingency table.
#[derive(Clone, Debug, PartialEq)]
pub struct RankRow<R> {
    pub family: String,
    pub solver: SolverId,
    pub rank: R,
    pub count: usize,
}

pub fn family_of(problem_id: &str) -> &str {
    problem_id.split('-').next().unwrap_or(problem_id)
}

/// Rank solvers per (instance, seed) by HVN, averaging tied ranks, and
/// aggregate the counts per benchmark family.
pub fn rank_contingency<R: Real>(records: &[PerformanceRecord<R>]) -> Result<Vec<RankRow<R>>> {
    // collapse sample-size replication
    let mut groups: BTreeMap<(String, usize, u64), BTreeMap<SolverId, R>> = BTreeMap::new();
    for r in records {
        groups
            .entry((r.problem_id.clone(), r.dim, r.seed))
            .or_default()
            .insert(r.solver, r.hvn);
    }
    let mut counts: BTreeMap<(String, SolverId, String), (R, usize)> = BTreeMap::new();
    for ((problem_id, _dim, seed), by_solver) in &groups {
        for solver in SolverId::ALL {
            if !by_solver.contains_key(&solver) {
                return Err(Error::IncompleteData {
                    instance: problem_id.clone(),
                    solver: solver.name().to_string(),
                    seed: *seed,
                });
            }
        }
        // rank by hvn descending: negate and use ascending average ranks
        let values: Vec<R> = SolverId::ALL.iter().map(|s| -by_solver[s]).collect();
        let ranks = crate::stats::average_ranks(&values);
        let family = family_of(problem_id).to_string();
        for (i, solver) in SolverId::ALL.into_iter().enumerate() {
            let key = (family.clone(), solver, format!("{}", ranks[i].to_f()));
            let entry = counts.entry(key).or_insert((ranks[i], 0));
            entry.1 += 1;
        }
    }
    Ok(counts
        .into_iter()
        .map(|((family, solver, _), (rank, count))| RankRow {
            family,
            solver,
            rank,
            count,
        })
        .collect())
}
