//! Quality indicators: exact hypervolume for 2 and 3 objectives,
//! Solow-Polasky diversity, and polynomial-fit R^2.

use crate::error::{Error, Result};
use crate::linalg::{cholesky_solve, least_squares};
use crate::matrix::{euclidean, Matrix};
use crate::scalar::Real;

/// Hypervolume reference point.
#[derive(Clone, Debug, PartialEq)]
pub struct RefPoint<R>(pub Vec<R>);

impl<R: Real> RefPoint<R> {
    pub fn uniform(m: usize, value: f64) -> Self {
        RefPoint(vec![R::from_f(value); m])
    }
}

/// Lebesgue measure of the union of boxes [y, ref] over points that weakly
/// dominate the reference point. Points outside contribute nothing.
pub fn hv<R: Real>(points: &Matrix<R>, reference: &RefPoint<R>) -> Result<R> {
    let m = reference.0.len();
    if !matches!(m, 2 | 3) {
        return Err(Error::UnsupportedObjectiveCount(m));
    }
    if points.n_rows() > 0 {
        assert_eq!(points.n_cols(), m, "point dimension must match reference");
    }
    let inside: Vec<&[R]> = points
        .rows_iter()
        .filter(|p| p.iter().zip(&reference.0).all(|(&a, &b)| a <= b))
        .collect();
    if inside.is_empty() {
        return Ok(R::zero());
    }
    Ok(match m {
        2 => hv2(&inside, &reference.0),
        _ => hv3(&inside, &reference.0),
    })
}

/// 2-D sort-and-sweep over the skyline.
fn hv2<R: Real>(points: &[&[R]], r: &[R]) -> R {
    let mut pts: Vec<(R, R)> = points.iter().map(|p| (p[0], p[1])).collect();
    pts.sort_by(|a, b| {
        a.0.partial_cmp(&b.0)
            .unwrap()
            .then(a.1.partial_cmp(&b.1).unwrap())
    });
    let mut total = R::zero();
    let mut best_f2 = r[1];
    for &(f1, f2) in &pts {
        if f2 < best_f2 {
            total = total + (r[0] - f1) * (best_f2 - f2);
            best_f2 = f2;
        }
    }
    total
}

/// 3-D slicing over the third objective into 2-D sweeps.
fn hv3<R: Real>(points: &[&[R]], r: &[R]) -> R {
    let mut zs: Vec<R> = points.iter().map(|p| p[2]).collect();
    zs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    zs.dedup();
    let mut total = R::zero();
    for (k, &z) in zs.iter().enumerate() {
        let z_next = if k + 1 < zs.len() { zs[k + 1] } else { r[2] };
        let slab = z_next - z;
        if slab <= R::zero() {
            continue;
        }
        let active: Vec<&[R]> = points.iter().filter(|p| p[2] <= z).copied().collect();
        total = total + hv2(&active, r) * slab;
    }
    total
}

/// Solow-Polasky diversity 1^T C^{-1} 1 with C_ij = exp(-theta d_ij); value
/// clipped into [1, k]. Near-singular matrices are ridge-regularized.
pub fn solow_polasky<R: Real>(points: &Matrix<R>, theta: R) -> R {
    let k = points.n_rows();
    assert!(k >= 1, "solow_polasky needs at least one point");
    assert!(theta > R::zero());
    if k == 1 {
        return R::one();
    }
    let mut c = Matrix::zeros(k, k);
    for i in 0..k {
        c.set(i, i, R::one());
        for j in i + 1..k {
            let v = (-theta * euclidean(points.row(i), points.row(j))).exp();
            c.set(i, j, v);
            c.set(j, i, v);
        }
    }
    let ones = vec![R::one(); k];
    let mut ridge = R::zero();
    loop {
        let solved = {
            if ridge > R::zero() {
                let mut cr = c.clone();
                for i in 0..k {
                    cr.set(i, i, R::one() + ridge);
                }
                cholesky_solve(&cr, &ones)
            } else {
                cholesky_solve(&c, &ones)
            }
        };
        if let Some(x) = solved {
            let mut s = R::zero();
            for v in x {
                s = s + v;
            }
            return s.max(R::one()).min(R::from_usize_(k));
        }
        ridge = if ridge == R::zero() {
            R::from_f(1e-10)
        } else {
            ridge * R::from_f(10.0)
        };
        if ridge > R::from_f(1e-4) {
            // duplicate-degenerate beyond repair: no measurable diversity
            return R::one();
        }
    }
}

/// R^2 of a least-squares polynomial fit of `values` against index 1..h.
///
/// Degenerate rules: a constant target or an interpolating model (h <= p+1)
/// returns exactly 1. Values below 0 are possible and not clipped.
pub fn poly_r2<R: Real>(values: &[R], degree: usize) -> R {
    assert!((1..=4).contains(&degree), "degree must be in 1..=4");
    let h = values.len();
    assert!(h >= 1);
    if h <= degree + 1 {
        return R::one();
    }
    let mean = {
        let mut s = R::zero();
        for &v in values {
            s = s + v;
        }
        s / R::from_usize_(h)
    };
    let mut ss_tot = R::zero();
    for &v in values {
        let d = v - mean;
        ss_tot = ss_tot + d * d;
    }
    if ss_tot == R::zero() {
        return R::one();
    }
    // design on x mapped affinely into [-1, 1] for conditioning
    let mut design = Matrix::zeros(h, degree + 1);
    for i in 0..h {
        let t = if h == 1 {
            R::zero()
        } else {
            R::from_f(2.0 * i as f64 / (h - 1) as f64 - 1.0)
        };
        let mut pow = R::one();
        for j in 0..=degree {
            design.set(i, j, pow);
            pow = pow * t;
        }
    }
    let coef = least_squares(&design, values);
    let mut ss_res = R::zero();
    for i in 0..h {
        let mut fit = R::zero();
        for j in 0..=degree {
            fit = fit + design.get(i, j) * coef[j];
        }
        let d = values[i] - fit;
        ss_res = ss_res + d * d;
    }
    R::one() - ss_res / ss_tot
}
