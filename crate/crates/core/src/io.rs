//! File formats: plain CSV tables with JSON sidecar manifests. All writers
//! are byte-deterministic; floats are printed in shortest round-trip form.

use crate::error::{Error, Result};
use crate::features::catalog;
use crate::features::pipeline::{FeatureTable, RowKey};
use crate::matrix::Matrix;
use crate::sampling::EvaluatedSample;
use crate::scalar::Real;
use crate::selection::{InstanceLabel, PerformanceRecord, RankRow, SelectorModel};
use crate::solvers::{SolverId, SolverRun};
use serde::{Deserialize, Serialize};
use std::fs;
use std::io::Write as _;
use std::path::Path;

pub const SCHEMA_VERSION: u32 = 1;

fn fmt<R: Real>(v: R) -> String {
    format!("{}", v.to_f())
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent).map_err(|e| Error::io(parent.display().to_string(), e))?;
        }
    }
    let mut f = fs::File::create(path).map_err(|e| Error::io(path.display().to_string(), e))?;
    f.write_all(contents.as_bytes())
        .map_err(|e| Error::io(path.display().to_string(), e))
}

fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(path.display().to_string(), e))
}

fn parse_f64(path: &Path, field: &str, raw: &str) -> Result<f64> {
    raw.parse::<f64>().map_err(|_| {
        Error::schema(
            path.display().to_string(),
            format!("bad number in {field}: `{raw}`"),
        )
    })
}

fn parse_usize(path: &Path, field: &str, raw: &str) -> Result<usize> {
    raw.parse::<usize>().map_err(|_| {
        Error::schema(
            path.display().to_string(),
            format!("bad integer in {field}: `{raw}`"),
        )
    })
}

fn parse_u64(path: &Path, field: &str, raw: &str) -> Result<u64> {
    raw.parse::<u64>().map_err(|_| {
        Error::schema(
            path.display().to_string(),
            format!("bad integer in {field}: `{raw}`"),
        )
    })
}

/// Sidecar path: `foo.csv` -> `foo.manifest.json`.
pub fn manifest_path(csv_path: &Path) -> std::path::PathBuf {
    csv_path.with_extension("manifest.json")
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SampleManifest {
    pub schema_version: u32,
    pub problem_id: String,
    pub n: usize,
    pub d: usize,
    pub m: usize,
    pub seed: u64,
    pub y_min: Vec<f64>,
    pub y_max: Vec<f64>,
    pub box_lower: Vec<f64>,
    pub box_upper: Vec<f64>,
}

/// Sample CSV (`x1..xd,y1..ym`, scaled values) plus its manifest.
pub fn write_sample<R: Real>(sample: &EvaluatedSample<R>, csv_path: &Path) -> Result<()> {
    let d = sample.dim();
    let m = sample.n_objectives();
    let mut out = String::new();
    let header: Vec<String> = (1..=d)
        .map(|j| format!("x{j}"))
        .chain((1..=m).map(|k| format!("y{k}")))
        .collect();
    out.push_str(&header.join(","));
    out.push('\n');
    for i in 0..sample.len() {
        let row: Vec<String> = sample
            .x
            .row(i)
            .iter()
            .map(|&v| fmt(v))
            .chain(sample.y.row(i).iter().map(|&v| fmt(v)))
            .collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    write_file(csv_path, &out)?;
    let manifest = SampleManifest {
        schema_version: SCHEMA_VERSION,
        problem_id: sample.problem_id.clone(),
        n: sample.len(),
        d,
        m,
        seed: sample.seed,
        y_min: sample.y_min.iter().map(|&v| v.to_f()).collect(),
        y_max: sample.y_max.iter().map(|&v| v.to_f()).collect(),
        box_lower: sample.box_lower.iter().map(|&v| v.to_f()).collect(),
        box_upper: sample.box_upper.iter().map(|&v| v.to_f()).collect(),
    };
    write_json(&manifest_path(csv_path), &manifest)
}

/// Rebuild an evaluated sample from its CSV and manifest; raw coordinates
/// are reconstructed from the scaling anchors.
pub fn read_sample<R: Real>(csv_path: &Path) -> Result<EvaluatedSample<R>> {
    let manifest: SampleManifest = read_json(&manifest_path(csv_path))?;
    let text = read_file(csv_path)?;
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::schema(csv_path.display().to_string(), "empty file"))?;
    let expected: Vec<String> = (1..=manifest.d)
        .map(|j| format!("x{j}"))
        .chain((1..=manifest.m).map(|k| format!("y{k}")))
        .collect();
    if header != expected.join(",") {
        return Err(Error::schema(
            csv_path.display().to_string(),
            "unexpected sample header",
        ));
    }
    let mut x_rows = Vec::new();
    let mut y_rows = Vec::new();
    for line in lines {
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != manifest.d + manifest.m {
            return Err(Error::schema(
                csv_path.display().to_string(),
                "wrong column count",
            ));
        }
        let mut x = Vec::with_capacity(manifest.d);
        for f in &fields[..manifest.d] {
            x.push(R::from_f(parse_f64(csv_path, "x", f)?));
        }
        let mut y = Vec::with_capacity(manifest.m);
        for f in &fields[manifest.d..] {
            y.push(R::from_f(parse_f64(csv_path, "y", f)?));
        }
        x_rows.push(x);
        y_rows.push(y);
    }
    if x_rows.len() != manifest.n {
        return Err(Error::schema(
            csv_path.display().to_string(),
            "row count differs from manifest",
        ));
    }
    let x = Matrix::from_rows(&x_rows);
    let y = Matrix::from_rows(&y_rows);
    let box_lower: Vec<R> = manifest.box_lower.iter().map(|&v| R::from_f(v)).collect();
    let box_upper: Vec<R> = manifest.box_upper.iter().map(|&v| R::from_f(v)).collect();
    let y_min: Vec<R> = manifest.y_min.iter().map(|&v| R::from_f(v)).collect();
    let y_max: Vec<R> = manifest.y_max.iter().map(|&v| R::from_f(v)).collect();
    let mut x_raw = Matrix::zeros(x.n_rows(), manifest.d);
    for i in 0..x.n_rows() {
        for j in 0..manifest.d {
            x_raw.set(
                i,
                j,
                box_lower[j] + x.get(i, j) * (box_upper[j] - box_lower[j]),
            );
        }
    }
    let mut y_raw = Matrix::zeros(y.n_rows(), manifest.m);
    for i in 0..y.n_rows() {
        for k in 0..manifest.m {
            y_raw.set(i, k, y_min[k] + y.get(i, k) * (y_max[k] - y_min[k]));
        }
    }
    Ok(EvaluatedSample {
        problem_id: manifest.problem_id,
        seed: manifest.seed,
        x,
        y,
        x_raw,
        y_raw,
        y_min,
        y_max,
        box_lower,
        box_upper,
    })
}

#[derive(Debug, Serialize, Deserialize)]
pub struct FeatureTableManifest {
    pub schema_version: u32,
    pub catalog_version: String,
    pub m: usize,
    pub n_rows: usize,
    pub sp_theta: f64,
    pub hv_reference: f64,
}

pub fn write_feature_table<R: Real>(table: &FeatureTable<R>, csv_path: &Path) -> Result<()> {
    let mut out = String::new();
    out.push_str("problem_id,dim,m,sample_size,seed,");
    out.push_str(&table.columns.join(","));
    out.push('\n');
    for (key, values) in &table.rows {
        out.push_str(&format!(
            "{},{},{},{},{}",
            key.problem_id, key.dim, key.m, key.sample_size, key.seed
        ));
        for &v in values {
            out.push(',');
            out.push_str(&fmt(v));
        }
        out.push('\n');
    }
    write_file(csv_path, &out)?;
    let manifest = FeatureTableManifest {
        schema_version: SCHEMA_VERSION,
        catalog_version: catalog::CATALOG_VERSION.to_string(),
        m: table.m,
        n_rows: table.rows.len(),
        sp_theta: crate::features::nds::SP_THETA,
        hv_reference: crate::features::nds::HV_REF_VALUE,
    };
    write_json(&manifest_path(csv_path), &manifest)
}

pub fn read_feature_table<R: Real>(csv_path: &Path) -> Result<FeatureTable<R>> {
    let text = read_file(csv_path)?;
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::schema(csv_path.display().to_string(), "empty file"))?;
    let cols: Vec<&str> = header.split(',').collect();
    if cols.len() < 6 || cols[..5] != ["problem_id", "dim", "m", "sample_size", "seed"] {
        return Err(Error::schema(
            csv_path.display().to_string(),
            "unexpected feature table header",
        ));
    }
    let columns: Vec<String> = cols[5..].iter().map(|s| s.to_string()).collect();
    let mut rows = Vec::new();
    let mut m_seen = None;
    for line in lines {
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 5 + columns.len() {
            return Err(Error::schema(
                csv_path.display().to_string(),
                "wrong column count",
            ));
        }
        let key = RowKey {
            problem_id: fields[0].to_string(),
            dim: parse_usize(csv_path, "dim", fields[1])?,
            m: parse_usize(csv_path, "m", fields[2])?,
            sample_size: parse_usize(csv_path, "sample_size", fields[3])?,
            seed: parse_u64(csv_path, "seed", fields[4])?,
        };
        m_seen.get_or_insert(key.m);
        if m_seen != Some(key.m) {
            return Err(Error::MixedObjectiveCounts(vec![m_seen.unwrap(), key.m]));
        }
        let mut values = Vec::with_capacity(columns.len());
        for f in &fields[5..] {
            values.push(R::from_f(parse_f64(csv_path, "feature", f)?));
        }
        rows.push((key, values));
    }
    let m = m_seen.ok_or_else(|| Error::schema(csv_path.display().to_string(), "no data rows"))?;
    Ok(FeatureTable { m, columns, rows })
}

#[derive(Debug, Serialize, Deserialize)]
pub struct RunManifest {
    pub schema_version: u32,
    pub solver: SolverId,
    pub problem_id: String,
    pub dim: usize,
    pub m: usize,
    pub seed: u64,
    pub budget: usize,
    pub eval_count: usize,
    pub hyperparameters: RunHyperparameters,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct RunHyperparameters {
    pub mu: usize,
    pub sbx_eta: f64,
    pub sbx_prob: f64,
    pub pm_eta: f64,
    pub pm_prob: f64,
    pub moead_neighbors: usize,
}

/// Final population CSV (`x1..xd,y1..ym`, raw values) plus manifest.
pub fn write_run<R: Real>(
    run: &SolverRun<R>,
    hyper: RunHyperparameters,
    csv_path: &Path,
) -> Result<()> {
    let mut out = String::new();
    let header: Vec<String> = (1..=run.dim)
        .map(|j| format!("x{j}"))
        .chain((1..=run.m).map(|k| format!("y{k}")))
        .collect();
    out.push_str(&header.join(","));
    out.push('\n');
    for i in 0..run.x.n_rows() {
        let row: Vec<String> = run
            .x
            .row(i)
            .iter()
            .map(|&v| fmt(v))
            .chain(run.y.row(i).iter().map(|&v| fmt(v)))
            .collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    write_file(csv_path, &out)?;
    let manifest = RunManifest {
        schema_version: SCHEMA_VERSION,
        solver: run.solver,
        problem_id: run.problem_id.clone(),
        dim: run.dim,
        m: run.m,
        seed: run.seed,
        budget: run.budget,
        eval_count: run.eval_count,
        hyperparameters: hyper,
    };
    write_json(&manifest_path(csv_path), &manifest)
}

/// Load one run from its CSV and manifest.
pub fn read_run<R: Real>(csv_path: &Path) -> Result<SolverRun<R>> {
    let manifest: RunManifest = read_json(&manifest_path(csv_path))?;
    let text = read_file(csv_path)?;
    let mut x_rows = Vec::new();
    let mut y_rows = Vec::new();
    for line in text.lines().skip(1) {
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != manifest.dim + manifest.m {
            return Err(Error::schema(
                csv_path.display().to_string(),
                "wrong column count",
            ));
        }
        let mut x = Vec::with_capacity(manifest.dim);
        for f in &fields[..manifest.dim] {
            x.push(R::from_f(parse_f64(csv_path, "x", f)?));
        }
        let mut y = Vec::with_capacity(manifest.m);
        for f in &fields[manifest.dim..] {
            y.push(R::from_f(parse_f64(csv_path, "y", f)?));
        }
        x_rows.push(x);
        y_rows.push(y);
    }
    Ok(SolverRun {
        solver: manifest.solver,
        problem_id: manifest.problem_id,
        dim: manifest.dim,
        m: manifest.m,
        seed: manifest.seed,
        budget: manifest.budget,
        eval_count: manifest.eval_count,
        x: Matrix::from_rows(&x_rows),
        y: Matrix::from_rows(&y_rows),
    })
}

pub fn write_performance<R: Real>(records: &[PerformanceRecord<R>], path: &Path) -> Result<()> {
    let mut out = String::from("problem_id,dim,sample_size,solver,seed,hvn\n");
    for r in records {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.problem_id,
            r.dim,
            r.sample_size,
            r.solver.name(),
            r.seed,
            fmt(r.hvn)
        ));
    }
    write_file(path, &out)
}

pub fn read_performance<R: Real>(path: &Path) -> Result<Vec<PerformanceRecord<R>>> {
    let text = read_file(path)?;
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::schema(path.display().to_string(), "empty file"))?;
    if header != "problem_id,dim,sample_size,solver,seed,hvn" {
        return Err(Error::schema(
            path.display().to_string(),
            "unexpected performance header",
        ));
    }
    let mut records = Vec::new();
    for line in lines {
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 6 {
            return Err(Error::schema(
                path.display().to_string(),
                "wrong column count",
            ));
        }
        let solver = SolverId::parse(fields[3]).ok_or_else(|| {
            Error::schema(
                path.display().to_string(),
                format!("unknown solver `{}`", fields[3]),
            )
        })?;
        records.push(PerformanceRecord {
            problem_id: fields[0].to_string(),
            dim: parse_usize(path, "dim", fields[1])?,
            sample_size: parse_usize(path, "sample_size", fields[2])?,
            solver,
            seed: parse_u64(path, "seed", fields[4])?,
            hvn: R::from_f(parse_f64(path, "hvn", fields[5])?),
        });
    }
    Ok(records)
}

pub fn write_labels<R: Real>(labels: &[InstanceLabel<R>], path: &Path) -> Result<()> {
    let mut out = String::from("problem_id,dim,sample_size,best_solver");
    for s in SolverId::ALL {
        out.push_str(&format!(",mean_hvn_{}", s.name()));
    }
    out.push('\n');
    for l in labels {
        out.push_str(&format!(
            "{},{},{},{}",
            l.problem_id,
            l.dim,
            l.sample_size,
            l.best.name()
        ));
        for &v in &l.mean_hvn {
            out.push(',');
            out.push_str(&fmt(v));
        }
        out.push('\n');
    }
    write_file(path, &out)
}

pub fn read_labels<R: Real>(path: &Path) -> Result<Vec<InstanceLabel<R>>> {
    let text = read_file(path)?;
    let mut lines = text.lines();
    let expected = {
        let mut h = String::from("problem_id,dim,sample_size,best_solver");
        for s in SolverId::ALL {
            h.push_str(&format!(",mean_hvn_{}", s.name()));
        }
        h
    };
    let header = lines
        .next()
        .ok_or_else(|| Error::schema(path.display().to_string(), "empty file"))?;
    if header != expected {
        return Err(Error::schema(
            path.display().to_string(),
            "unexpected labels header",
        ));
    }
    let mut labels = Vec::new();
    for line in lines {
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 4 + SolverId::ALL.len() {
            return Err(Error::schema(
                path.display().to_string(),
                "wrong column count",
            ));
        }
        let best = SolverId::parse(fields[3]).ok_or_else(|| {
            Error::schema(
                path.display().to_string(),
                format!("unknown solver `{}`", fields[3]),
            )
        })?;
        let mut mean_hvn = Vec::with_capacity(SolverId::ALL.len());
        for f in &fields[4..] {
            mean_hvn.push(R::from_f(parse_f64(path, "mean_hvn", f)?));
        }
        labels.push(InstanceLabel {
            problem_id: fields[0].to_string(),
            dim: parse_usize(path, "dim", fields[1])?,
            sample_size: parse_usize(path, "sample_size", fields[2])?,
            best,
            mean_hvn,
        });
    }
    Ok(labels)
}

pub fn write_rank_rows<R: Real>(rows: &[RankRow<R>], path: &Path) -> Result<()> {
    let mut out = String::from("family,solver,rank,count\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{}\n",
            r.family,
            r.solver.name(),
            fmt(r.rank),
            r.count
        ));
    }
    write_file(path, &out)
}

pub fn write_stability<R: Real>(
    rows: &[crate::analysis::StabilityRow<R>],
    path: &Path,
) -> Result<()> {
    let mut out =
        String::from("problem_id,dim,sample_size,n_seeds,mean_correlation,skipped_pairs\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.problem_id,
            r.dim,
            r.sample_size,
            r.n_seeds,
            fmt(r.mean_correlation),
            r.skipped_pairs
        ));
    }
    write_file(path, &out)
}

pub fn write_correlation<R: Real>(
    corr: &crate::analysis::CorrelationMatrix<R>,
    path: &Path,
) -> Result<()> {
    let mut out = String::from("feature");
    for c in &corr.columns {
        out.push(',');
        out.push_str(c);
    }
    out.push('\n');
    for (i, c) in corr.columns.iter().enumerate() {
        out.push_str(c);
        for j in 0..corr.columns.len() {
            out.push(',');
            out.push_str(&fmt(corr.matrix.get(i, j)));
        }
        out.push('\n');
    }
    write_file(path, &out)
}

pub fn write_embedding<R: Real>(keys: &[RowKey], scores: &Matrix<R>, path: &Path) -> Result<()> {
    assert_eq!(keys.len(), scores.n_rows());
    let mut out = String::from("problem_id,dim,m,sample_size,seed,e1,e2\n");
    for (i, key) in keys.iter().enumerate() {
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            key.problem_id,
            key.dim,
            key.m,
            key.sample_size,
            key.seed,
            fmt(scores.get(i, 0)),
            fmt(scores.get(i, 1))
        ));
    }
    write_file(path, &out)
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| Error::schema(path.display().to_string(), e.to_string()))?;
    text.push('\n');
    write_file(path, &text)
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = read_file(path)?;
    serde_json::from_str(&text)
        .map_err(|e| Error::schema(path.display().to_string(), e.to_string()))
}

/// Model JSON round-trip helpers with a schema-version envelope.
#[derive(Debug, Serialize, Deserialize)]
pub struct ModelFile<R> {
    pub schema_version: u32,
    pub classifier: String,
    pub model: SelectorModel<R>,
}

pub fn write_model<R: Real + Serialize>(model: &SelectorModel<R>, path: &Path) -> Result<()> {
    write_json(
        path,
        &ModelFile {
            schema_version: SCHEMA_VERSION,
            classifier: "knn".to_string(),
            model: model.clone(),
        },
    )
}

pub fn read_model<R: Real + for<'de> Deserialize<'de>>(path: &Path) -> Result<SelectorModel<R>> {
    let file: ModelFile<R> = read_json(path)?;
    Ok(file.model)
}
