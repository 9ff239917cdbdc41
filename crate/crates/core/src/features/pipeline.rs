//! Feature grid: one feature vector per (problem, sample size, seed) cell,
//! resumable and deterministic under any degree of parallelism.

use crate::error::{Error, Result};
use crate::features::{catalog, compute_all_features, FeatureVector};
use crate::problems::ProblemSpec;
use crate::sampling::draw_sample;
use crate::scalar::Real;
use rayon::prelude::*;
use std::collections::BTreeSet;

/// Grid cell key; the table is sorted by this.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RowKey {
    pub problem_id: String,
    pub dim: usize,
    pub m: usize,
    pub sample_size: usize,
    pub seed: u64,
}

/// A homogeneous feature table: all rows share one objective count and the
/// same catalog-ordered columns.
#[derive(Clone, Debug, PartialEq)]
pub struct FeatureTable<R> {
    pub m: usize,
    pub columns: Vec<String>,
    pub rows: Vec<(RowKey, Vec<R>)>,
}

impl<R: Real> FeatureTable<R> {
    pub fn empty(m: usize) -> Self {
        FeatureTable {
            m,
            columns: catalog::feature_ids(m),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, fv: FeatureVector<R>) {
        debug_assert_eq!(fv.m, self.m);
        self.rows.push((
            RowKey {
                problem_id: fv.problem_id,
                dim: fv.dim,
                m: fv.m,
                sample_size: fv.sample_size,
                seed: fv.seed,
            },
            fv.values,
        ));
    }

    pub fn sort_rows(&mut self) {
        self.rows.sort_by(|a, b| a.0.cmp(&b.0));
    }

    pub fn column_index(&self, id: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == id)
    }
}

/// Compute every missing (spec, size, seed) cell and return the merged
/// table sorted by key. Existing rows are kept untouched, which makes the
/// operation idempotent. The suite must be homogeneous in objective count.
pub fn run_grid<R: Real>(
    suite: &[ProblemSpec<R>],
    sizes: &[usize],
    seeds: &[u64],
    existing: Option<&FeatureTable<R>>,
) -> Result<FeatureTable<R>> {
    assert!(
        !suite.is_empty() && !sizes.is_empty() && !seeds.is_empty(),
        "empty grid inputs"
    );
    let mut ms: Vec<usize> = suite.iter().map(|s| s.n_objectives).collect();
    ms.sort_unstable();
    ms.dedup();
    if ms.len() != 1 {
        return Err(Error::MixedObjectiveCounts(ms));
    }
    let m = ms[0];
    let mut table = match existing {
        Some(t) => {
            if t.m != m || t.columns != catalog::feature_ids(m) {
                return Err(Error::schema(
                    "feature table",
                    "existing table columns do not match the catalog",
                ));
            }
            t.clone()
        }
        None => FeatureTable::empty(m),
    };
    let have: BTreeSet<RowKey> = table.rows.iter().map(|(k, _)| k.clone()).collect();
    let mut cells = Vec::new();
    for spec in suite {
        for &size in sizes {
            for &seed in seeds {
                let key = RowKey {
                    problem_id: spec.id.clone(),
                    dim: spec.dim,
                    m,
                    sample_size: size,
                    seed,
                };
                if !have.contains(&key) {
                    cells.push((spec, size, seed));
                }
            }
        }
    }
    let computed: Result<Vec<FeatureVector<R>>> = cells
        .par_iter()
        .map(|&(spec, size, seed)| {
            let sample = draw_sample(spec, size, seed)?;
            Ok(compute_all_features(&sample))
        })
        .collect();
    for fv in computed? {
        table.push(fv);
    }
    table.sort_rows();
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::{ProblemSpec, ZdtVariant};

    fn small_suite() -> Vec<ProblemSpec<f64>> {
        vec![
            ProblemSpec::zdt(ZdtVariant::Zdt1, 2),
            ProblemSpec::zdt(ZdtVariant::Zdt2, 2),
        ]
    }

    #[test]
    fn cartesian_cell_count() {
        let t = run_grid(&small_suite(), &[10, 20], &[0, 1, 2], None).unwrap();
        assert_eq!(t.rows.len(), 12);
    }

    #[test]
    fn rerun_is_idempotent() {
        let first = run_grid(&small_suite(), &[10, 20], &[0, 1], None).unwrap();
        // drop some rows and recompute: identical final table
        let mut partial = first.clone();
        partial.rows.retain(|(k, _)| k.seed != 1);
        let resumed = run_grid(&small_suite(), &[10, 20], &[0, 1], Some(&partial)).unwrap();
        assert_eq!(resumed, first);
        let again = run_grid(&small_suite(), &[10, 20], &[0, 1], Some(&first)).unwrap();
        assert_eq!(again, first);
    }

    #[test]
    fn rows_are_sorted_and_columns_stable() {
        let t = run_grid(&small_suite(), &[20, 10], &[1, 0], None).unwrap();
        for w in t.rows.windows(2) {
            assert!(w[0].0 < w[1].0);
        }
        assert_eq!(t.columns, catalog::feature_ids(2));
        for (_, values) in &t.rows {
            assert_eq!(values.len(), t.columns.len());
        }
    }

    #[test]
    fn mixed_objective_counts_rejected() {
        let suite = vec![
            ProblemSpec::<f64>::zdt(ZdtVariant::Zdt1, 2),
            ProblemSpec::<f64>::dtlz(crate::problems::DtlzVariant::Dtlz2, 3, 5),
        ];
        assert!(matches!(
            run_grid(&suite, &[10], &[0], None),
            Err(Error::MixedObjectiveCounts(_))
        ));
    }

    #[test]
    fn grid_identical_across_thread_counts() {
        let suite = small_suite();
        let single = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap();
        let quad = rayon::ThreadPoolBuilder::new()
            .num_threads(4)
            .build()
            .unwrap();
        let a = single
            .install(|| run_grid(&suite, &[15], &[0, 1, 2], None))
            .unwrap();
        let b = quad
            .install(|| run_grid(&suite, &[15], &[0, 1, 2], None))
            .unwrap();
        assert_eq!(a, b);
    }
}
