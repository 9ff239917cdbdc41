//! Multiple-peaks component functions in the style of the MPM2 generator.
//!
//! A component is a set of peaks in the unit box. Its single-objective value
//! at `x` is `1 - max_p height_p / (1 + (dist(x, c_p)/radius_p)^shape_p)`,
//! clipped to [0,1]. The `funnel` topology reassigns the random heights so
//! that they decrease with distance from the strongest peak.

use crate::matrix::{euclidean, Matrix};
use crate::rng::keyed_rng;
use crate::scalar::Real;
use rand::RngExt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Topology {
    Random,
    Funnel,
}

impl Topology {
    pub fn name(self) -> &'static str {
        match self {
            Topology::Random => "random",
            Topology::Funnel => "funnel",
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        match name {
            "random" => Some(Topology::Random),
            "funnel" => Some(Topology::Funnel),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PeakSet<R> {
    pub centers: Matrix<R>,
    pub heights: Vec<R>,
    pub shapes: Vec<R>,
    pub radii: Vec<R>,
    pub topology: Topology,
}

/// Deterministically generate one component function.
pub fn mpm2_component<R: Real>(
    peaks: usize,
    topology: Topology,
    seed: u64,
    dim: usize,
) -> PeakSet<R> {
    assert!(peaks >= 1, "a component needs at least one peak");
    let mut rng = keyed_rng(&[
        "mpm2",
        &peaks.to_string(),
        topology.name(),
        &seed.to_string(),
        &dim.to_string(),
    ]);
    let mut centers = Matrix::zeros(peaks, dim);
    for i in 0..peaks {
        for j in 0..dim {
            centers.set(i, j, R::from_f(rng.random::<f64>()));
        }
    }
    let mut heights: Vec<R> = (0..peaks)
        .map(|_| R::from_f(0.5 + 0.5 * rng.random::<f64>()))
        .collect();
    let shapes: Vec<R> = (0..peaks)
        .map(|_| R::from_f(1.5 + 1.0 * rng.random::<f64>()))
        .collect();
    // two-regime basin radii: a handful of box-scale attraction basins plus
    // peak-spacing-scale local dimples, so dense peak sets stay rugged with
    // coherent large-scale structure instead of blurring into one bump
    let spacing = (peaks as f64).powf(-1.0 / dim as f64);
    let diag = (dim as f64).sqrt();
    let broad_share = (3.0 / peaks as f64).min(1.0);
    let radii: Vec<R> = (0..peaks)
        .map(|_| {
            let select: f64 = rng.random();
            let u: f64 = rng.random();
            if select < broad_share {
                R::from_f((0.15 + 0.25 * u) * diag)
            } else {
                R::from_f((0.5 + u) * 0.3 * spacing)
            }
        })
        .collect();
    if topology == Topology::Funnel {
        // strongest peak becomes the funnel centre; heights re-sorted so they
        // decrease with distance from it
        let global = (0..peaks)
            .max_by(|&a, &b| heights[a].partial_cmp(&heights[b]).unwrap().then(b.cmp(&a)))
            .unwrap();
        let mut by_distance: Vec<usize> = (0..peaks).collect();
        by_distance.sort_by(|&a, &b| {
            let da = euclidean(centers.row(a), centers.row(global));
            let db = euclidean(centers.row(b), centers.row(global));
            da.partial_cmp(&db).unwrap().then(a.cmp(&b))
        });
        let mut sorted = heights.clone();
        sorted.sort_by(|a, b| b.partial_cmp(a).unwrap());
        let mut reassigned = vec![R::zero(); peaks];
        for (rank, &peak) in by_distance.iter().enumerate() {
            reassigned[peak] = sorted[rank];
        }
        heights = reassigned;
    }
    PeakSet {
        centers,
        heights,
        shapes,
        radii,
        topology,
    }
}

impl<R: Real> PeakSet<R> {
    pub fn n_peaks(&self) -> usize {
        self.heights.len()
    }

    /// Component objective value in [0,1]; 0 at the strongest peak summit
    /// only when its height is 1.
    pub fn value(&self, x: &[R]) -> R {
        let mut best = R::zero();
        for p in 0..self.n_peaks() {
            let dist = euclidean(x, self.centers.row(p));
            let v = self.heights[p] / (R::one() + (dist / self.radii[p]).powf(self.shapes[p]));
            if v > best {
                best = v;
            }
        }
        (R::one() - best).max(R::zero()).min(R::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_peak_minimum_at_centre() {
        let ps: PeakSet<f64> = mpm2_component(1, Topology::Random, 3, 2);
        let at_centre = ps.value(ps.centers.row(0));
        assert!((at_centre - (1.0 - ps.heights[0])).abs() < 1e-15);
        // any other point is worse (single radially decaying peak)
        assert!(ps.value(&[0.0, 0.0]) >= at_centre);
        assert!(ps.value(&[1.0, 1.0]) >= at_centre);
    }

    #[test]
    fn funnel_heights_sorted_by_distance_to_best() {
        let ps: PeakSet<f64> = mpm2_component(4, Topology::Funnel, 11, 3);
        let global = (0..4)
            .max_by(|&a, &b| ps.heights[a].partial_cmp(&ps.heights[b]).unwrap())
            .unwrap();
        let mut order: Vec<usize> = (0..4).collect();
        order.sort_by(|&a, &b| {
            euclidean(ps.centers.row(a), ps.centers.row(global))
                .partial_cmp(&euclidean(ps.centers.row(b), ps.centers.row(global)))
                .unwrap()
        });
        for w in order.windows(2) {
            assert!(ps.heights[w[0]] >= ps.heights[w[1]]);
        }
    }

    #[test]
    fn generation_is_deterministic() {
        let a: PeakSet<f64> = mpm2_component(8, Topology::Funnel, 42, 5);
        let b: PeakSet<f64> = mpm2_component(8, Topology::Funnel, 42, 5);
        assert_eq!(a, b);
    }

    #[test]
    fn values_stay_in_unit_interval() {
        let ps: PeakSet<f64> = mpm2_component(16, Topology::Random, 7, 3);
        let mut rng = crate::rng::keyed_rng(&["mpm2-range-check"]);
        use rand::RngExt;
        for _ in 0..10_000 {
            let x: Vec<f64> = (0..3).map(|_| rng.random::<f64>()).collect();
            let v = ps.value(&x);
            assert!((0.0..=1.0).contains(&v));
        }
    }
}
