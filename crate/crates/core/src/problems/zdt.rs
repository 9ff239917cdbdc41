//! The ZDT two-objective test functions 1, 2, 3, 4 and 6.

use crate::scalar::Real;
use std::f64::consts::PI;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ZdtVariant {
    Zdt1,
    Zdt2,
    Zdt3,
    Zdt4,
    Zdt6,
}

impl ZdtVariant {
    pub const ALL: [ZdtVariant; 5] = [
        ZdtVariant::Zdt1,
        ZdtVariant::Zdt2,
        ZdtVariant::Zdt3,
        ZdtVariant::Zdt4,
        ZdtVariant::Zdt6,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ZdtVariant::Zdt1 => "zdt1",
            ZdtVariant::Zdt2 => "zdt2",
            ZdtVariant::Zdt3 => "zdt3",
            ZdtVariant::Zdt4 => "zdt4",
            ZdtVariant::Zdt6 => "zdt6",
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|v| v.name() == name)
    }

    /// Decision box; ZDT4 uses [-5,5] for all but the first variable.
    pub fn bounds<R: Real>(self, dim: usize) -> (Vec<R>, Vec<R>) {
        match self {
            ZdtVariant::Zdt4 => {
                let mut lower = vec![R::from_f(-5.0); dim];
                let mut upper = vec![R::from_f(5.0); dim];
                lower[0] = R::zero();
                upper[0] = R::one();
                (lower, upper)
            }
            _ => (vec![R::zero(); dim], vec![R::one(); dim]),
        }
    }

    pub fn evaluate<R: Real>(self, x: &[R]) -> Vec<R> {
        let d = R::from_usize_(x.len());
        let tail_sum = {
            let mut s = R::zero();
            for &xi in &x[1..] {
                s = s + xi;
            }
            s
        };
        match self {
            ZdtVariant::Zdt1 => {
                let f1 = x[0];
                let g = R::one() + R::from_f(9.0) * tail_sum / (d - R::one());
                let f2 = g * (R::one() - (f1 / g).sqrt());
                vec![f1, f2]
            }
            ZdtVariant::Zdt2 => {
                let f1 = x[0];
                let g = R::one() + R::from_f(9.0) * tail_sum / (d - R::one());
                let r = f1 / g;
                let f2 = g * (R::one() - r * r);
                vec![f1, f2]
            }
            ZdtVariant::Zdt3 => {
                let f1 = x[0];
                let g = R::one() + R::from_f(9.0) * tail_sum / (d - R::one());
                let r = f1 / g;
                let f2 = g * (R::one() - r.sqrt() - r * (R::from_f(10.0 * PI) * f1).sin());
                vec![f1, f2]
            }
            ZdtVariant::Zdt4 => {
                let f1 = x[0];
                let mut g = R::one() + R::from_f(10.0) * (d - R::one());
                for &xi in &x[1..] {
                    g = g + xi * xi - R::from_f(10.0) * (R::from_f(4.0 * PI) * xi).cos();
                }
                let f2 = g * (R::one() - (f1 / g).sqrt());
                vec![f1, f2]
            }
            ZdtVariant::Zdt6 => {
                let f1 = R::one()
                    - (R::from_f(-4.0) * x[0]).exp() * (R::from_f(6.0 * PI) * x[0]).sin().powi(6);
                let g =
                    R::one() + R::from_f(9.0) * (tail_sum / (d - R::one())).powf(R::from_f(0.25));
                let r = f1 / g;
                let f2 = g * (R::one() - r * r);
                vec![f1, f2]
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zdt1_hand_value() {
        // d=5, x=(0.5,0,0,0,0): g=1, f2 = 1 - sqrt(0.5)
        let y = ZdtVariant::Zdt1.evaluate(&[0.5f64, 0.0, 0.0, 0.0, 0.0]);
        assert!((y[0] - 0.5).abs() < 1e-15);
        assert!((y[1] - (1.0 - 0.5f64.sqrt())).abs() < 1e-12);
    }

    #[test]
    fn zdt1_front_property() {
        // x2..xd = 0 implies f2 = 1 - sqrt(f1) exactly
        for &f1 in &[0.0f64, 0.1, 0.25, 0.7, 1.0] {
            let y = ZdtVariant::Zdt1.evaluate(&[f1, 0.0, 0.0]);
            assert!((y[1] - (1.0 - f1.sqrt())).abs() < 1e-12);
        }
        // raising any tail coordinate is dominated by its projection
        let on = ZdtVariant::Zdt1.evaluate(&[0.3f64, 0.0, 0.0]);
        let off = ZdtVariant::Zdt1.evaluate(&[0.3f64, 0.4, 0.0]);
        assert!(crate::dominance::dominates(&on, &off));
    }

    #[test]
    fn zdt4_bounds() {
        let (lo, hi) = ZdtVariant::Zdt4.bounds::<f64>(3);
        assert_eq!(lo, vec![0.0, -5.0, -5.0]);
        assert_eq!(hi, vec![1.0, 5.0, 5.0]);
    }
}
