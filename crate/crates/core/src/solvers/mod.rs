//! Desk-scale evolutionary solvers: NSGA-II, SMS-EMOA and MOEA/D, all
//! deterministic per (solver, problem, seed) under an evaluation budget.

mod moead;
mod nsga2;
mod operators;
mod smsemoa;

pub use moead::{moead_lattice_mu, moead_weights};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::problems::ProblemSpec;
use crate::rng::keyed_rng;
use crate::scalar::Real;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SolverId {
    Nsga2,
    SmsEmoa,
    Moead,
}

impl SolverId {
    /// Fixed order used everywhere ties between solvers must break.
    pub const ALL: [SolverId; 3] = [SolverId::Nsga2, SolverId::SmsEmoa, SolverId::Moead];

    pub fn name(self) -> &'static str {
        match self {
            SolverId::Nsga2 => "nsga2",
            SolverId::SmsEmoa => "smsemoa",
            SolverId::Moead => "moead",
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|s| s.name() == name)
    }
}

/// Hyperparameters; the defaults match common implementations of the three
/// algorithms and are recorded in every run manifest.
#[derive(Clone, Debug, PartialEq)]
pub struct SolverConfig<R> {
    /// Population size; `None` resolves to 100 (m=2) or 105 (m=3).
    pub mu: Option<usize>,
    pub sbx_eta: R,
    pub sbx_prob: f64,
    pub pm_eta: R,
    /// Per-variable mutation probability; `None` resolves to 1/d.
    pub pm_prob: Option<f64>,
    pub moead_neighbors: usize,
    /// Fixed reference point for SMS-EMOA contributions. `None` falls back
    /// to per-step worst-layer maxima plus 1; a fixed point makes the
    /// per-step hypervolume non-regression externally checkable.
    pub hv_ref: Option<Vec<R>>,
    /// Fixed ideal point for MOEA/D. `None` keeps the adaptive ideal; a
    /// fixed point makes per-subproblem Tchebycheff values non-increasing.
    pub moead_ideal: Option<Vec<R>>,
}

impl<R: Real> Default for SolverConfig<R> {
    fn default() -> Self {
        SolverConfig {
            mu: None,
            sbx_eta: R::from_f(15.0),
            sbx_prob: 0.9,
            pm_eta: R::from_f(20.0),
            pm_prob: None,
            moead_neighbors: 20,
            hv_ref: None,
            moead_ideal: None,
        }
    }
}

impl<R: Real> SolverConfig<R> {
    pub fn resolve_mu(&self, m: usize) -> usize {
        self.mu.unwrap_or(if m == 3 { 105 } else { 100 })
    }
}

/// Default evaluation budgets per (m, d) combination.
pub const BUDGET_TABLE: [((usize, usize), usize); 8] = [
    ((2, 2), 3_000),
    ((2, 5), 8_000),
    ((2, 10), 15_000),
    ((2, 20), 20_000),
    ((3, 2), 7_000),
    ((3, 5), 25_000),
    ((3, 10), 50_000),
    ((3, 20), 100_000),
];

pub fn default_budget(m: usize, d: usize) -> Result<usize> {
    BUDGET_TABLE
        .iter()
        .find(|((bm, bd), _)| *bm == m && *bd == d)
        .map(|&(_, evals)| evals)
        .ok_or(Error::NoDefaultBudget { m, d })
}

pub(crate) struct Population<R> {
    pub xs: Vec<Vec<R>>,
    pub ys: Vec<Vec<R>>,
}

/// Shared run state: evaluation accounting and the observer hook.
pub(crate) struct SolverCtx<'a, R: Real> {
    pub spec: &'a ProblemSpec<R>,
    budget: usize,
    evals: usize,
    observer: &'a mut dyn FnMut(&[Vec<R>]),
}

impl<'a, R: Real> SolverCtx<'a, R> {
    fn eval(&mut self, x: &[R]) -> Vec<R> {
        debug_assert!(self.evals < self.budget, "evaluation budget exceeded");
        self.evals += 1;
        self.spec
            .evaluate(x)
            .expect("solver generated an out-of-box point")
    }

    fn evals_left(&self) -> usize {
        self.budget - self.evals
    }

    fn observe(&mut self, ys: &[Vec<R>]) {
        (self.observer)(ys);
    }
}

/// Completed run: final population with raw objective values.
#[derive(Clone, Debug, PartialEq)]
pub struct SolverRun<R> {
    pub solver: SolverId,
    pub problem_id: String,
    pub dim: usize,
    pub m: usize,
    pub seed: u64,
    pub budget: usize,
    pub eval_count: usize,
    pub x: Matrix<R>,
    pub y: Matrix<R>,
}

pub fn run_solver<R: Real>(
    solver: SolverId,
    spec: &ProblemSpec<R>,
    budget: usize,
    seed: u64,
    config: &SolverConfig<R>,
) -> Result<SolverRun<R>> {
    run_solver_observed(solver, spec, budget, seed, config, &mut |_| {})
}

/// Like [`run_solver`], invoking `observer` with the raw objective rows of
/// the population after initialization and after every survival step.
pub fn run_solver_observed<R: Real>(
    solver: SolverId,
    spec: &ProblemSpec<R>,
    budget: usize,
    seed: u64,
    config: &SolverConfig<R>,
    observer: &mut dyn FnMut(&[Vec<R>]),
) -> Result<SolverRun<R>> {
    let mu = match solver {
        SolverId::Moead if spec.n_objectives == 3 => moead_lattice_mu(config.resolve_mu(3)),
        _ => config.resolve_mu(spec.n_objectives),
    };
    if budget < mu || mu < 2 {
        return Err(Error::BudgetTooSmall { budget, mu });
    }
    let mut rng = keyed_rng(&["solver", solver.name(), &spec.id, &seed.to_string()]);
    let mut ctx = SolverCtx {
        spec,
        budget,
        evals: 0,
        observer,
    };
    let population = match solver {
        SolverId::Nsga2 => nsga2::run(&mut ctx, config, mu, &mut rng),
        SolverId::SmsEmoa => smsemoa::run(&mut ctx, config, mu, &mut rng),
        SolverId::Moead => moead::run(&mut ctx, config, mu, &mut rng),
    };
    let eval_count = ctx.evals;
    debug_assert!(eval_count <= budget);
    Ok(SolverRun {
        solver,
        problem_id: spec.id.clone(),
        dim: spec.dim,
        m: spec.n_objectives,
        seed,
        budget,
        eval_count,
        x: Matrix::from_rows(&population.xs),
        y: Matrix::from_rows(&population.ys),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dominance::dominates;
    use crate::indicators::{hv, RefPoint};
    use crate::problems::{ProblemSpec, ZdtVariant};

    fn zdt1(d: usize) -> ProblemSpec<f64> {
        ProblemSpec::zdt(ZdtVariant::Zdt1, d)
    }

    #[test]
    fn budget_equal_to_mu_returns_initial_population() {
        let spec = zdt1(3);
        let config = SolverConfig {
            mu: Some(10),
            ..SolverConfig::default()
        };
        for solver in SolverId::ALL {
            let run = run_solver(solver, &spec, 10, 4, &config).unwrap();
            assert_eq!(run.eval_count, 10);
            assert_eq!(run.y.n_rows(), 10);
        }
    }

    #[test]
    fn budget_below_mu_is_rejected() {
        let spec = zdt1(3);
        let config = SolverConfig {
            mu: Some(10),
            ..SolverConfig::default()
        };
        assert!(matches!(
            run_solver(SolverId::Nsga2, &spec, 9, 0, &config),
            Err(Error::BudgetTooSmall { .. })
        ));
    }

    #[test]
    fn runs_are_deterministic() {
        let spec = zdt1(4);
        let config = SolverConfig {
            mu: Some(16),
            ..SolverConfig::default()
        };
        for solver in SolverId::ALL {
            let a = run_solver(solver, &spec, 200, 11, &config).unwrap();
            let b = run_solver(solver, &spec, 200, 11, &config).unwrap();
            assert_eq!(a, b, "{}", solver.name());
        }
    }

    #[test]
    fn populations_stay_in_box_and_respect_budget() {
        let spec: ProblemSpec<f64> = ProblemSpec::zdt(ZdtVariant::Zdt4, 3);
        let config = SolverConfig {
            mu: Some(12),
            ..SolverConfig::default()
        };
        for solver in SolverId::ALL {
            let run = run_solver(solver, &spec, 150, 2, &config).unwrap();
            assert!(run.eval_count <= 150);
            for row in run.x.rows_iter() {
                for j in 0..spec.dim {
                    assert!(row[j] >= spec.lower[j] && row[j] <= spec.upper[j]);
                }
            }
        }
    }

    #[test]
    fn default_budget_table() {
        assert_eq!(default_budget(2, 5).unwrap(), 8_000);
        assert_eq!(default_budget(3, 20).unwrap(), 100_000);
        assert!(matches!(
            default_budget(2, 7),
            Err(Error::NoDefaultBudget { .. })
        ));
    }

    #[test]
    fn tri_objective_runs_complete_on_all_solvers() {
        let spec: ProblemSpec<f64> = ProblemSpec::dtlz(crate::problems::DtlzVariant::Dtlz2, 3, 4);
        let config = SolverConfig {
            mu: Some(12),
            ..SolverConfig::default()
        };
        for solver in SolverId::ALL {
            let a = run_solver(solver, &spec, 300, 5, &config).unwrap();
            let b = run_solver(solver, &spec, 300, 5, &config).unwrap();
            assert_eq!(a, b, "{}", solver.name());
            assert_eq!(a.m, 3);
            assert!(a.eval_count <= 300);
            // MOEA/D snaps mu to the simplex lattice below the request
            if solver == SolverId::Moead {
                assert_eq!(a.y.n_rows(), moead_lattice_mu(12));
            } else {
                assert_eq!(a.y.n_rows(), 12);
            }
            for row in a.x.rows_iter() {
                assert!(row.iter().all(|&v| (0.0..=1.0).contains(&v)));
            }
        }
    }

    #[test]
    fn sms_emoa_hv_non_regression_with_fixed_reference() {
        let spec = zdt1(3);
        let reference = RefPoint(vec![11.0, 11.0]);
        let config = SolverConfig {
            mu: Some(20),
            hv_ref: Some(reference.0.clone()),
            ..SolverConfig::default()
        };
        let mut last = f64::NEG_INFINITY;
        let mut steps = 0usize;
        run_solver_observed(SolverId::SmsEmoa, &spec, 600, 3, &config, &mut |ys| {
            let value = hv(&Matrix::from_rows(ys), &reference).unwrap();
            assert!(value >= last - 1e-9, "HV regressed: {value} < {last}");
            last = value;
            steps += 1;
        })
        .unwrap();
        assert_eq!(steps, 600 - 20 + 1);
    }

    #[test]
    fn nsga2_front_never_dominated_by_previous_front() {
        let spec = zdt1(4);
        let config = SolverConfig {
            mu: Some(16),
            ..SolverConfig::default()
        };
        let mut previous_front: Vec<Vec<f64>> = Vec::new();
        run_solver_observed(SolverId::Nsga2, &spec, 480, 5, &config, &mut |ys| {
            let mat = Matrix::from_rows(ys);
            let front: Vec<Vec<f64>> = crate::dominance::nd_filter(&mat)
                .into_iter()
                .map(|i| ys[i].clone())
                .collect();
            for p in &front {
                for q in &previous_front {
                    assert!(!dominates(q, p), "new front point dominated by old front");
                }
            }
            previous_front = front;
        })
        .unwrap();
    }

    #[test]
    fn moead_tchebycheff_non_increasing_with_fixed_ideal() {
        let spec = zdt1(3);
        let mu = 12;
        let config = SolverConfig {
            mu: Some(mu),
            moead_ideal: Some(vec![0.0, 0.0]),
            ..SolverConfig::default()
        };
        let weights = moead_weights(mu, 2);
        let mut best: Vec<f64> = vec![f64::INFINITY; mu];
        run_solver_observed(SolverId::Moead, &spec, 480, 7, &config, &mut |ys| {
            for (j, y) in ys.iter().enumerate() {
                let g = (0..2)
                    .map(|k| weights[j][k].max(1e-6) * (y[k] - 0.0).abs())
                    .fold(f64::NEG_INFINITY, f64::max);
                assert!(
                    g <= best[j] + 1e-12,
                    "subproblem {j} worsened: {g} > {}",
                    best[j]
                );
                best[j] = g;
            }
        })
        .unwrap();
    }
}
