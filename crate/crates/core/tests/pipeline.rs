//! Cross-module pipeline checks that exercise problems, sampling, features
//! and solvers together.

use mo_landscape::features::catalog::feature_ids;
use mo_landscape::features::pipeline::run_grid;
use mo_landscape::indicators::{hv, RefPoint};
use mo_landscape::io;
use mo_landscape::matrix::Matrix;
use mo_landscape::problems::{ProblemSpec, Topology, ZdtVariant};
use mo_landscape::sampling::draw_sample;
use mo_landscape::solvers::{run_solver, SolverConfig, SolverId};

#[test]
fn bisphere_layer_decay_is_near_linear() {
    let spec: ProblemSpec<f64> = ProblemSpec::bisphere(2);
    let sample = draw_sample(&spec, 500, 1).unwrap();
    let fv = mo_landscape::features::compute_all_features(&sample);
    let ids = feature_ids(2);
    let get = |name: &str| fv.values[ids.iter().position(|n| n == name).unwrap()];
    assert!(get("nds.r1") >= 0.9, "r1 = {}", get("nds.r1"));
    assert!(
        get("nds.r4") - get("nds.r1") < 0.05,
        "gap = {}",
        get("nds.r4") - get("nds.r1")
    );
}

#[test]
fn sample_files_are_identical_across_runs() {
    let spec: ProblemSpec<f64> = ProblemSpec::zdt(ZdtVariant::Zdt1, 2);
    let dir = std::env::temp_dir().join(format!("mola-pipeline-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let a = dir.join("a.csv");
    let b = dir.join("b.csv");
    io::write_sample(&draw_sample(&spec, 500, 7).unwrap(), &a).unwrap();
    io::write_sample(&draw_sample(&spec, 500, 7).unwrap(), &b).unwrap();
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn nsga2_reaches_analytic_front_on_zdt1() {
    let front: Vec<Vec<f64>> = (0..=1000)
        .map(|i| {
            let f1 = i as f64 / 1000.0;
            vec![f1, 1.0 - f1.sqrt()]
        })
        .collect();
    let reference = RefPoint(vec![1.1, 1.1]);
    let ref_hv = hv(&Matrix::from_rows(&front), &reference).unwrap();
    let spec: ProblemSpec<f64> = ProblemSpec::zdt(ZdtVariant::Zdt1, 5);
    let run = run_solver(SolverId::Nsga2, &spec, 8000, 0, &SolverConfig::default()).unwrap();
    let hvn = hv(&run.y, &reference).unwrap() / ref_hv;
    assert!(hvn >= 0.9, "hvn = {hvn}");
}

#[test]
fn grid_covers_mixed_suite_per_objective_count() {
    let m2: Vec<ProblemSpec<f64>> = vec![
        ProblemSpec::zdt(ZdtVariant::Zdt1, 2),
        ProblemSpec::mpm2(&[2, 4], Topology::Funnel, 2, 1),
    ];
    let table = run_grid(&m2, &[20, 40], &[0, 1, 2], None).unwrap();
    assert_eq!(table.rows.len(), 12);
    assert_eq!(table.columns.len(), feature_ids(2).len());
    // every row fully finite
    for (key, values) in &table.rows {
        assert!(values.iter().all(|v| v.is_finite()), "{key:?}");
    }
}

#[test]
fn grid_handles_tri_objective_problems() {
    let suite: Vec<ProblemSpec<f64>> = vec![
        mo_landscape::problems::ProblemSpec::dtlz(mo_landscape::problems::DtlzVariant::Dtlz7, 3, 5),
        ProblemSpec::mpm2(&[2, 4, 8], Topology::Random, 3, 1),
    ];
    let table = run_grid(&suite, &[60], &[0, 1], None).unwrap();
    assert_eq!(table.m, 3);
    assert_eq!(table.rows.len(), 4);
    assert_eq!(table.columns.len(), feature_ids(3).len());
    for (key, values) in &table.rows {
        assert!(values.iter().all(|v| v.is_finite()), "{key:?}");
    }
}
