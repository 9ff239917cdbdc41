//! Multi-objective problem abstraction and benchmark suite generation.

mod dtlz;
mod mpm2;
mod zdt;

pub use dtlz::DtlzVariant;
pub use mpm2::{mpm2_component, PeakSet, Topology};
pub use zdt::ZdtVariant;

use crate::error::{Error, Result};

use crate::rng::key_u64;
use crate::scalar::Real;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Zdt,
    Dtlz,
    Mpm2,
    Bisphere,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Zdt => "zdt",
            Family::Dtlz => "dtlz",
            Family::Mpm2 => "mpm2",
            Family::Bisphere => "bisphere",
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        match name {
            "zdt" => Some(Family::Zdt),
            "dtlz" => Some(Family::Dtlz),
            "mpm2" => Some(Family::Mpm2),
            "bisphere" => Some(Family::Bisphere),
            _ => None,
        }
    }
}

/// Family-specific evaluation payload.
#[derive(Clone, Debug, PartialEq)]
pub enum ProblemKind<R> {
    Zdt(ZdtVariant),
    Dtlz(DtlzVariant),
    /// One component per objective plus the generator inputs that produced it.
    Mpm2 {
        components: Vec<PeakSet<R>>,
        peaks: Vec<usize>,
        topology: Topology,
        seed: u64,
    },
    /// Control problem: squared distances to two sphere centres.
    Bisphere {
        centers: [Vec<R>; 2],
    },
}

/// A fully specified box-constrained problem instance.
#[derive(Clone, Debug, PartialEq)]
pub struct ProblemSpec<R> {
    pub id: String,
    pub family: Family,
    pub dim: usize,
    pub n_objectives: usize,
    pub lower: Vec<R>,
    pub upper: Vec<R>,
    pub kind: ProblemKind<R>,
}

impl<R: Real> ProblemSpec<R> {
    pub fn zdt(variant: ZdtVariant, dim: usize) -> Self {
        assert!(dim >= 2);
        let (lower, upper) = variant.bounds(dim);
        ProblemSpec {
            id: format!("{}-d{}", variant.name(), dim),
            family: Family::Zdt,
            dim,
            n_objectives: 2,
            lower,
            upper,
            kind: ProblemKind::Zdt(variant),
        }
    }

    pub fn dtlz(variant: DtlzVariant, m: usize, dim: usize) -> Self {
        assert!(matches!(m, 2 | 3), "DTLZ supports 2 or 3 objectives");
        assert!(dim >= m, "DTLZ needs d >= m");
        ProblemSpec {
            id: format!("{}-m{}-d{}", variant.name(), m, dim),
            family: Family::Dtlz,
            dim,
            n_objectives: m,
            lower: vec![R::zero(); dim],
            upper: vec![R::one(); dim],
            kind: ProblemKind::Dtlz(variant),
        }
    }

    /// One objective per entry of `peaks`; topology is instance-wide.
    pub fn mpm2(peaks: &[usize], topology: Topology, dim: usize, seed: u64) -> Self {
        assert!(
            (2..=3).contains(&peaks.len()),
            "MPM2 combines 2 or 3 components"
        );
        let components = peaks
            .iter()
            .enumerate()
            .map(|(k, &p)| {
                let combo = peaks
                    .iter()
                    .map(usize::to_string)
                    .collect::<Vec<_>>()
                    .join("-");
                let comp_seed = key_u64(&[
                    "mpm2-instance",
                    &seed.to_string(),
                    topology.name(),
                    &combo,
                    &k.to_string(),
                ]);
                mpm2_component(p, topology, comp_seed, dim)
            })
            .collect();
        let peaks_id = peaks
            .iter()
            .map(usize::to_string)
            .collect::<Vec<_>>()
            .join("x");
        ProblemSpec {
            id: format!("mpm2-p{}-{}-d{}-s{}", peaks_id, topology.name(), dim, seed),
            family: Family::Mpm2,
            dim,
            n_objectives: peaks.len(),
            lower: vec![R::zero(); dim],
            upper: vec![R::one(); dim],
            kind: ProblemKind::Mpm2 {
                components,
                peaks: peaks.to_vec(),
                topology,
                seed,
            },
        }
    }

    /// Bi-sphere control problem with centres at the box corners 0 and 1.
    /// Not part of the benchmark suite; the id carries a `control` marker.
    pub fn bisphere(dim: usize) -> Self {
        assert!(dim >= 2);
        ProblemSpec {
            id: format!("bisphere-d{}-control", dim),
            family: Family::Bisphere,
            dim,
            n_objectives: 2,
            lower: vec![R::zero(); dim],
            upper: vec![R::one(); dim],
            kind: ProblemKind::Bisphere {
                centers: [vec![R::zero(); dim], vec![R::one(); dim]],
            },
        }
    }

    /// Evaluate the objective vector at `x`; pure and deterministic.
    pub fn evaluate(&self, x: &[R]) -> Result<Vec<R>> {
        assert_eq!(x.len(), self.dim, "decision vector length mismatch");
        for i in 0..self.dim {
            if !(x[i] >= self.lower[i] && x[i] <= self.upper[i]) {
                return Err(Error::OutOfBox {
                    index: i,
                    value: x[i].to_f(),
                    lower: self.lower[i].to_f(),
                    upper: self.upper[i].to_f(),
                });
            }
        }
        Ok(match &self.kind {
            ProblemKind::Zdt(v) => v.evaluate(x),
            ProblemKind::Dtlz(v) => v.evaluate(x, self.n_objectives),
            ProblemKind::Mpm2 { components, .. } => components.iter().map(|c| c.value(x)).collect(),
            ProblemKind::Bisphere { centers } => centers
                .iter()
                .map(|c| {
                    let mut s = R::zero();
                    for (&a, &b) in x.iter().zip(c) {
                        let d = a - b;
                        s = s + d * d;
                    }
                    s
                })
                .collect(),
        })
    }

    /// Family-specific parameters for the JSON catalog.
    pub fn params(&self) -> BTreeMap<String, serde_json::Value> {
        let mut map = BTreeMap::new();
        match &self.kind {
            ProblemKind::Zdt(v) => {
                map.insert("variant".into(), v.name().into());
            }
            ProblemKind::Dtlz(v) => {
                map.insert("variant".into(), v.name().into());
            }
            ProblemKind::Mpm2 {
                peaks,
                topology,
                seed,
                ..
            } => {
                map.insert("peaks".into(), peaks.clone().into());
                map.insert("topology".into(), topology.name().into());
                map.insert("seed".into(), (*seed).into());
            }
            ProblemKind::Bisphere { .. } => {
                map.insert("centers".into(), "box corners 0 and 1".into());
            }
        }
        map
    }
}

/// Portable description of a problem instance; carries enough to rebuild it.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ProblemCatalogEntry {
    pub id: String,
    pub family: Family,
    pub d: usize,
    pub m: usize,
    pub box_lower: Vec<f64>,
    pub box_upper: Vec<f64>,
    pub params: BTreeMap<String, serde_json::Value>,
}

impl ProblemCatalogEntry {
    pub fn from_spec<R: Real>(spec: &ProblemSpec<R>) -> Self {
        ProblemCatalogEntry {
            id: spec.id.clone(),
            family: spec.family,
            d: spec.dim,
            m: spec.n_objectives,
            box_lower: spec.lower.iter().map(|v| v.to_f()).collect(),
            box_upper: spec.upper.iter().map(|v| v.to_f()).collect(),
            params: spec.params(),
        }
    }

    pub fn to_spec<R: Real>(&self) -> Result<ProblemSpec<R>> {
        let bad = |detail: &str| Error::schema("problem catalog", detail.to_string());
        let spec = match self.family {
            Family::Zdt => {
                let name = self
                    .params
                    .get("variant")
                    .and_then(|v| v.as_str())
                    .ok_or_else(|| bad("zdt variant missing"))?;
                let variant = ZdtVariant::parse(name).ok_or_else(|| bad("unknown zdt variant"))?;
                ProblemSpec::zdt(variant, self.d)
            }
            Family::Dtlz => {
                let name = self
                    .params
                    .get("variant")
                    .and_then(|v| v.as_str())
                    .ok_or_else(|| bad("dtlz variant missing"))?;
                let variant =
                    DtlzVariant::parse(name).ok_or_else(|| bad("unknown dtlz variant"))?;
                ProblemSpec::dtlz(variant, self.m, self.d)
            }
            Family::Mpm2 => {
                let peaks: Vec<usize> = self
                    .params
                    .get("peaks")
                    .and_then(|v| v.as_array())
                    .ok_or_else(|| bad("mpm2 peaks missing"))?
                    .iter()
                    .map(|v| {
                        v.as_u64()
                            .map(|u| u as usize)
                            .ok_or_else(|| bad("mpm2 peaks not integers"))
                    })
                    .collect::<Result<_>>()?;
                let topology = self
                    .params
                    .get("topology")
                    .and_then(|v| v.as_str())
                    .and_then(Topology::parse)
                    .ok_or_else(|| bad("mpm2 topology missing"))?;
                let seed = self
                    .params
                    .get("seed")
                    .and_then(|v| v.as_u64())
                    .ok_or_else(|| bad("mpm2 seed missing"))?;
                ProblemSpec::mpm2(&peaks, topology, self.d, seed)
            }
            Family::Bisphere => ProblemSpec::bisphere(self.d),
        };
        if spec.id != self.id {
            return Err(bad(&format!(
                "rebuilt id `{}` differs from `{}`",
                spec.id, self.id
            )));
        }
        Ok(spec)
    }
}

/// Peak counts per objective for the MPM2 sub-suite.
fn mpm2_peak_range(m: usize) -> Vec<usize> {
    let max_exp = if m == 2 { 7 } else { 5 };
    (0..=max_exp).map(|k| 1usize << k).collect()
}

/// All multisets of size `m` over `values` (non-decreasing order).
fn multisets(values: &[usize], m: usize) -> Vec<Vec<usize>> {
    fn rec(
        values: &[usize],
        m: usize,
        start: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for i in start..values.len() {
            cur.push(values[i]);
            rec(values, m, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(values, m, 0, &mut Vec::new(), &mut out);
    out
}

/// Deterministic benchmark instance list.
///
/// ZDT contributes functions 1, 2, 3, 4 and 6 (bi-objective only); DTLZ all
/// seven functions for each requested objective count with d >= m; MPM2 all
/// distinct unordered peak-count combinations crossed with both topologies.
pub fn build_suite<R: Real>(
    dims: &[usize],
    objectives: &[usize],
    families: &[Family],
    mpm2_seed: u64,
) -> Vec<ProblemSpec<R>> {
    let mut dims: Vec<usize> = dims.to_vec();
    dims.sort_unstable();
    dims.dedup();
    let mut objectives: Vec<usize> = objectives.to_vec();
    objectives.sort_unstable();
    objectives.dedup();
    let mut suite = Vec::new();
    for &family in &[Family::Zdt, Family::Dtlz, Family::Mpm2, Family::Bisphere] {
        if !families.contains(&family) {
            continue;
        }
        for &m in &objectives {
            if !matches!(m, 2 | 3) {
                continue;
            }
            for &d in &dims {
                match family {
                    Family::Zdt => {
                        if m == 2 && d >= 2 {
                            for variant in ZdtVariant::ALL {
                                suite.push(ProblemSpec::zdt(variant, d));
                            }
                        }
                    }
                    Family::Dtlz => {
                        if d >= m {
                            for variant in DtlzVariant::ALL {
                                suite.push(ProblemSpec::dtlz(variant, m, d));
                            }
                        }
                    }
                    Family::Mpm2 => {
                        if d >= 2 {
                            for topology in [Topology::Random, Topology::Funnel] {
                                for combo in multisets(&mpm2_peak_range(m), m) {
                                    suite.push(ProblemSpec::mpm2(&combo, topology, d, mpm2_seed));
                                }
                            }
                        }
                    }
                    Family::Bisphere => {
                        if m == 2 && d >= 2 {
                            suite.push(ProblemSpec::bisphere(d));
                        }
                    }
                }
            }
        }
    }
    suite
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dominance::dominates;

    #[test]
    fn evaluate_zdt1_hand_value() {
        let spec: ProblemSpec<f64> = ProblemSpec::zdt(ZdtVariant::Zdt1, 5);
        let y = spec.evaluate(&[0.5, 0.0, 0.0, 0.0, 0.0]).unwrap();
        assert!((y[0] - 0.5).abs() < 1e-15);
        assert!((y[1] - 0.292893).abs() < 1e-6);
    }

    #[test]
    fn evaluate_dtlz2_hand_value() {
        let spec: ProblemSpec<f64> = ProblemSpec::dtlz(DtlzVariant::Dtlz2, 3, 3);
        let y = spec.evaluate(&[0.5, 0.5, 0.5]).unwrap();
        assert!((y[0] - 0.5).abs() < 1e-12);
        assert!((y[1] - 0.5).abs() < 1e-12);
        assert!((y[2] - 0.707107).abs() < 1e-6);
    }

    #[test]
    fn evaluate_bisphere_hand_value() {
        let spec: ProblemSpec<f64> = ProblemSpec::bisphere(2);
        let y = spec.evaluate(&[0.0, 0.0]).unwrap();
        assert_eq!(y, vec![0.0, 2.0]);
    }

    #[test]
    fn evaluate_rejects_out_of_box_naming_coordinate() {
        let spec: ProblemSpec<f64> = ProblemSpec::zdt(ZdtVariant::Zdt1, 3);
        let err = spec.evaluate(&[0.5, 1.5, 0.0]).unwrap_err();
        match err {
            Error::OutOfBox { index, .. } => assert_eq!(index, 1),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn evaluate_is_deterministic() {
        let spec: ProblemSpec<f64> = ProblemSpec::mpm2(&[4, 16], Topology::Funnel, 3, 9);
        let x = [0.2, 0.8, 0.5];
        let a = spec.evaluate(&x).unwrap();
        let b = spec.evaluate(&x).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn suite_counts_zdt() {
        let suite: Vec<ProblemSpec<f64>> = build_suite(&[2, 5, 10, 20], &[2], &[Family::Zdt], 1);
        assert_eq!(suite.len(), 20);
    }

    #[test]
    fn suite_counts_dtlz_tri() {
        let suite: Vec<ProblemSpec<f64>> = build_suite(&[5], &[3], &[Family::Dtlz], 1);
        assert_eq!(suite.len(), 7);
    }

    #[test]
    fn suite_empty_families() {
        let suite: Vec<ProblemSpec<f64>> = build_suite(&[2], &[2], &[], 1);
        assert!(suite.is_empty());
    }

    #[test]
    fn suite_counts_mpm2() {
        // 36 unordered peak pairs x 2 topologies
        let suite: Vec<ProblemSpec<f64>> = build_suite(&[2], &[2], &[Family::Mpm2], 1);
        assert_eq!(suite.len(), 72);
        // 56 unordered peak triples x 2 topologies
        let suite3: Vec<ProblemSpec<f64>> = build_suite(&[5], &[3], &[Family::Mpm2], 1);
        assert_eq!(suite3.len(), 112);
    }

    #[test]
    fn suite_is_deterministic_and_ids_unique() {
        let a: Vec<ProblemSpec<f64>> = build_suite(
            &[2, 5],
            &[2, 3],
            &[Family::Zdt, Family::Dtlz, Family::Mpm2],
            1,
        );
        let b: Vec<ProblemSpec<f64>> = build_suite(
            &[2, 5],
            &[2, 3],
            &[Family::Zdt, Family::Dtlz, Family::Mpm2],
            1,
        );
        assert_eq!(a.len(), b.len());
        let mut ids: Vec<&str> = a.iter().map(|s| s.id.as_str()).collect();
        let n = ids.len();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), n);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x, y);
        }
    }

    #[test]
    fn catalog_round_trip() {
        let suite: Vec<ProblemSpec<f64>> =
            build_suite(&[2, 5], &[2], &[Family::Zdt, Family::Mpm2], 3);
        for spec in &suite {
            let entry = ProblemCatalogEntry::from_spec(spec);
            let back: ProblemSpec<f64> = entry.to_spec().unwrap();
            assert_eq!(&back, spec);
        }
    }

    #[test]
    fn bisphere_segment_is_pareto_set() {
        let spec: ProblemSpec<f64> = ProblemSpec::bisphere(2);
        // points on the diagonal segment are dominated by no grid point
        let grid: Vec<Vec<f64>> = (0..=10)
            .flat_map(|i| (0..=10).map(move |j| vec![i as f64 / 10.0, j as f64 / 10.0]))
            .collect();
        let grid_y: Vec<Vec<f64>> = grid.iter().map(|x| spec.evaluate(x).unwrap()).collect();
        for t in [0.0, 0.25, 0.5, 0.75, 1.0] {
            let y = spec.evaluate(&[t, t]).unwrap();
            assert!(grid_y.iter().all(|g| !dominates(g, &y)));
        }
        // an off-segment point is dominated by its projection
        let off = spec.evaluate(&[0.8, 0.2]).unwrap();
        let proj = spec.evaluate(&[0.5, 0.5]).unwrap();
        assert!(dominates(&proj, &off));
    }
}
