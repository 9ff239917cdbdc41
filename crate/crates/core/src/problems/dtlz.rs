//! The DTLZ scalable test functions 1-7 for 2 or 3 objectives.

use crate::scalar::Real;
use std::f64::consts::PI;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DtlzVariant {
    Dtlz1,
    Dtlz2,
    Dtlz3,
    Dtlz4,
    Dtlz5,
    Dtlz6,
    Dtlz7,
}

impl DtlzVariant {
    pub const ALL: [DtlzVariant; 7] = [
        DtlzVariant::Dtlz1,
        DtlzVariant::Dtlz2,
        DtlzVariant::Dtlz3,
        DtlzVariant::Dtlz4,
        DtlzVariant::Dtlz5,
        DtlzVariant::Dtlz6,
        DtlzVariant::Dtlz7,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DtlzVariant::Dtlz1 => "dtlz1",
            DtlzVariant::Dtlz2 => "dtlz2",
            DtlzVariant::Dtlz3 => "dtlz3",
            DtlzVariant::Dtlz4 => "dtlz4",
            DtlzVariant::Dtlz5 => "dtlz5",
            DtlzVariant::Dtlz6 => "dtlz6",
            DtlzVariant::Dtlz7 => "dtlz7",
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|v| v.name() == name)
    }

    pub fn evaluate<R: Real>(self, x: &[R], m: usize) -> Vec<R> {
        debug_assert!(x.len() >= m, "DTLZ needs d >= m");
        let tail = &x[m - 1..]; // k = d - m + 1 distance variables
        match self {
            DtlzVariant::Dtlz1 => {
                let g = g_rastrigin(tail);
                let scale = (R::one() + g) * R::from_f(0.5);
                linear_front(x, m, scale)
            }
            DtlzVariant::Dtlz2 => {
                let g = g_sphere(tail);
                spherical_front(&angles_plain(x, m), m, R::one() + g)
            }
            DtlzVariant::Dtlz3 => {
                let g = g_rastrigin(tail);
                spherical_front(&angles_plain(x, m), m, R::one() + g)
            }
            DtlzVariant::Dtlz4 => {
                let g = g_sphere(tail);
                let alpha = R::from_f(100.0);
                let theta: Vec<R> = x[..m - 1].iter().map(|&v| v.powf(alpha)).collect();
                spherical_front(&theta, m, R::one() + g)
            }
            DtlzVariant::Dtlz5 => {
                let g = g_sphere(tail);
                spherical_front(&angles_bent(x, m, g), m, R::one() + g)
            }
            DtlzVariant::Dtlz6 => {
                let mut g = R::zero();
                for &v in tail {
                    g = g + v.powf(R::from_f(0.1));
                }
                spherical_front(&angles_bent(x, m, g), m, R::one() + g)
            }
            DtlzVariant::Dtlz7 => {
                let k = R::from_usize_(tail.len());
                let mut g = R::zero();
                for &v in tail {
                    g = g + v;
                }
                g = R::one() + R::from_f(9.0) * g / k;
                let mut f: Vec<R> = x[..m - 1].to_vec();
                let mut h = R::from_usize_(m);
                for &fi in &f {
                    let ratio = fi / (R::one() + g);
                    h = h - ratio * (R::one() + (R::from_f(3.0 * PI) * fi).sin());
                }
                f.push((R::one() + g) * h);
                f
            }
        }
    }
}

fn g_sphere<R: Real>(tail: &[R]) -> R {
    let half = R::from_f(0.5);
    let mut g = R::zero();
    for &v in tail {
        let d = v - half;
        g = g + d * d;
    }
    g
}

fn g_rastrigin<R: Real>(tail: &[R]) -> R {
    let half = R::from_f(0.5);
    let mut g = R::from_usize_(tail.len());
    for &v in tail {
        let d = v - half;
        g = g + d * d - (R::from_f(20.0 * PI) * d).cos();
    }
    R::from_f(100.0) * g
}

fn angles_plain<R: Real>(x: &[R], m: usize) -> Vec<R> {
    x[..m - 1].to_vec()
}

/// DTLZ5/6 angle bend: first position variable kept, the rest squeezed
/// toward the degenerate curve as g shrinks.
fn angles_bent<R: Real>(x: &[R], m: usize, g: R) -> Vec<R> {
    let two = R::from_f(2.0);
    let mut theta = Vec::with_capacity(m - 1);
    for (i, &v) in x[..m - 1].iter().enumerate() {
        if i == 0 {
            theta.push(v);
        } else {
            theta.push((R::one() + two * g * v) / (two * (R::one() + g)));
        }
    }
    theta
}

/// f_i products of cosines with one sine, on angles scaled by pi/2.
fn spherical_front<R: Real>(theta: &[R], m: usize, scale: R) -> Vec<R> {
    let half_pi = R::from_f(PI / 2.0);
    let mut f = vec![scale; m];
    for i in 0..m {
        // f_i = scale * prod_{j < m-1-i} cos(theta_j) * (sin(theta_{m-1-i}) if i > 0)
        let n_cos = m - 1 - i;
        for &t in &theta[..n_cos] {
            f[i] = f[i] * (t * half_pi).cos();
        }
        if i > 0 {
            f[i] = f[i] * (theta[n_cos] * half_pi).sin();
        }
    }
    f
}

/// DTLZ1 linear front: products of raw position variables.
fn linear_front<R: Real>(x: &[R], m: usize, scale: R) -> Vec<R> {
    let mut f = vec![scale; m];
    for i in 0..m {
        let n_prod = m - 1 - i;
        for &v in &x[..n_prod] {
            f[i] = f[i] * v;
        }
        if i > 0 {
            f[i] = f[i] * (R::one() - x[n_prod]);
        }
    }
    f
}
