//! Landscape features, benchmark problems, evolutionary solvers and
//! algorithm selection for box-constrained continuous multi-objective
//! optimisation.
//!
//! All numeric kernels are generic over the scalar type via [`scalar::Real`];
//! the aliases below fix the common f64 instantiation.

pub mod analysis;
pub mod dominance;
pub mod error;
pub mod features;
pub mod indicators;
pub mod io;
pub mod linalg;
pub mod matrix;
pub mod problems;
pub mod rng;
pub mod sampling;
pub mod scalar;
pub mod selection;
pub mod solvers;
pub mod stats;

pub use error::{Error, Result};
pub use scalar::Real;

/// f64 instantiations of the core types.
pub type Matrix64 = matrix::Matrix<f64>;
pub type ProblemSpec64 = problems::ProblemSpec<f64>;
pub type Sample64 = sampling::EvaluatedSample<f64>;
pub type RefPoint64 = indicators::RefPoint<f64>;
pub type FeatureVector64 = features::FeatureVector<f64>;
pub type FeatureTable64 = features::pipeline::FeatureTable<f64>;
pub type SolverRun64 = solvers::SolverRun<f64>;
pub type SolverConfig64 = solvers::SolverConfig<f64>;
pub type SelectorModel64 = selection::SelectorModel<f64>;
