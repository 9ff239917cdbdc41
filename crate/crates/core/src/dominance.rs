//! Pareto dominance, non-dominated filtering and non-dominated sorting.

use crate::matrix::Matrix;
use crate::scalar::Real;

/// Partition of row indices into non-domination layers L1..Lh.
///
/// Layers are disjoint, cover all rows, contain mutually non-dominated
/// points, and every point of layer i>1 is dominated by a point of layer i-1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayerPartition {
    layers: Vec<Vec<usize>>,
}

impl LayerPartition {
    pub fn layers(&self) -> &[Vec<usize>] {
        &self.layers
    }

    pub fn layer(&self, i: usize) -> &[usize] {
        &self.layers[i]
    }

    /// Number of layers h.
    pub fn height(&self) -> usize {
        self.layers.len()
    }

    pub fn n_points(&self) -> usize {
        self.layers.iter().map(Vec::len).sum()
    }

    /// Layer index (0-based) per row.
    pub fn rank_of(&self) -> Vec<usize> {
        let mut ranks = vec![0usize; self.n_points()];
        for (li, layer) in self.layers.iter().enumerate() {
            for &i in layer {
                ranks[i] = li;
            }
        }
        ranks
    }

    /// Debug export: one `index,layer` row per point, layers 1-based.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("index,layer\n");
        for (i, rank) in self.rank_of().iter().enumerate() {
            out.push_str(&format!("{},{}\n", i, rank + 1));
        }
        out
    }
}

/// True iff `a` dominates `b`: a <= b componentwise and a < b somewhere.
pub fn dominates<R: Real>(a: &[R], b: &[R]) -> bool {
    assert_eq!(a.len(), b.len(), "objective vectors must have equal length");
    let mut strict = false;
    for (&x, &y) in a.iter().zip(b) {
        if x > y {
            return false;
        }
        if x < y {
            strict = true;
        }
    }
    strict
}

/// Indices of rows not dominated by any other row, ascending.
/// Duplicates of a non-dominated vector are all retained.
pub fn nd_filter<R: Real>(objectives: &Matrix<R>) -> Vec<usize> {
    let n = objectives.n_rows();
    let mut keep = Vec::new();
    'outer: for i in 0..n {
        for j in 0..n {
            if j != i && dominates(objectives.row(j), objectives.row(i)) {
                continue 'outer;
            }
        }
        keep.push(i);
    }
    keep
}

/// Fast non-dominated sorting with precomputed domination counts.
pub fn non_dominated_sort<R: Real>(objectives: &Matrix<R>) -> LayerPartition {
    let n = objectives.n_rows();
    assert!(n >= 1, "non_dominated_sort needs at least one point");
    let mut dominated_by: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut count = vec![0usize; n];
    for i in 0..n {
        for j in i + 1..n {
            if dominates(objectives.row(i), objectives.row(j)) {
                dominated_by[i].push(j);
                count[j] += 1;
            } else if dominates(objectives.row(j), objectives.row(i)) {
                dominated_by[j].push(i);
                count[i] += 1;
            }
        }
    }
    let mut current: Vec<usize> = (0..n).filter(|&i| count[i] == 0).collect();
    let mut layers = Vec::new();
    while !current.is_empty() {
        let mut next = Vec::new();
        for &p in &current {
            for &q in &dominated_by[p] {
                count[q] -= 1;
                if count[q] == 0 {
                    next.push(q);
                }
            }
        }
        next.sort_unstable();
        layers.push(std::mem::replace(&mut current, next));
    }
    LayerPartition { layers }
}
