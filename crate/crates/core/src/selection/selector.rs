//! k-NN selector with sequential forward-floating feature selection under
//! cross-validated macro-F1.

use super::InstanceLabel;
use crate::error::{Error, Result};
use crate::features::pipeline::FeatureTable;
use crate::rng::{keyed_rng, shuffled_indices};
use crate::scalar::Real;
use crate::solvers::SolverId;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Feature rows joined with their instance labels.
#[derive(Clone, Debug)]
pub struct Dataset<R> {
    pub feature_names: Vec<String>,
    pub rows: Vec<Vec<R>>,
    pub labels: Vec<SolverId>,
    /// Mean HVN per solver for each row, [`SolverId::ALL`] order.
    pub mean_hvn: Vec<Vec<R>>,
    pub families: Vec<String>,
}

impl<R: Real> Dataset<R> {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

/// Join a feature table with instance labels on (problem, dim, sample size).
/// Rows without a label are dropped; the count of dropped rows is returned.
pub fn assemble_dataset<R: Real>(
    features: &FeatureTable<R>,
    labels: &[InstanceLabel<R>],
) -> (Dataset<R>, usize) {
    let mut rows = Vec::new();
    let mut row_labels = Vec::new();
    let mut mean_hvn = Vec::new();
    let mut families = Vec::new();
    let mut dropped = 0usize;
    for (key, values) in &features.rows {
        let found = labels.iter().find(|l| {
            l.problem_id == key.problem_id && l.dim == key.dim && l.sample_size == key.sample_size
        });
        match found {
            Some(label) => {
                rows.push(values.clone());
                row_labels.push(label.best);
                mean_hvn.push(label.mean_hvn.clone());
                families.push(super::family_of(&key.problem_id).to_string());
            }
            None => dropped += 1,
        }
    }
    (
        Dataset {
            feature_names: features.columns.clone(),
            rows,
            labels: row_labels,
            mean_hvn,
            families,
        },
        dropped,
    )
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TrainParams {
    pub split_seed: u64,
    pub k: usize,
    pub cv_folds: usize,
    pub max_features: usize,
    pub improvement_epsilon: f64,
}

impl Default for TrainParams {
    fn default() -> Self {
        TrainParams {
            split_seed: 0,
            k: 5,
            cv_folds: 3,
            max_features: 40,
            improvement_epsilon: 1e-6,
        }
    }
}

/// Trained k-NN selector over a z-scored feature subset.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SelectorModel<R> {
    pub k: usize,
    pub selected_features: Vec<String>,
    /// (mean, std) per selected feature, fitted on the training split.
    pub normalization: Vec<(R, R)>,
    /// Training rows in z-scored selected-feature space.
    pub train_rows: Vec<Vec<R>>,
    pub train_labels: Vec<SolverId>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FamilyReport<R> {
    pub family: String,
    pub n_test: usize,
    pub f1_macro: R,
    pub ri: R,
    pub sbs: SolverId,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SelectionReport<R> {
    pub f1_macro: R,
    pub ri: R,
    pub sbs: SolverId,
    pub n_train: usize,
    pub n_test: usize,
    pub imputed_values: usize,
    pub selected_features: Vec<String>,
    pub families: Vec<FamilyReport<R>>,
}

/// Majority vote over the `k` nearest training rows; distance ties prefer
/// the earlier row, vote ties the fixed solver order.
pub fn knn_predict<R: Real>(
    train_rows: &[Vec<R>],
    train_labels: &[SolverId],
    query: &[R],
    k: usize,
    dims: &[usize],
) -> SolverId {
    debug_assert!(!train_rows.is_empty());
    let mut distances: Vec<(R, usize)> = train_rows
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut s = R::zero();
            for &d in dims {
                let diff = row[d] - query[d];
                s = s + diff * diff;
            }
            (s, i)
        })
        .collect();
    distances.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap().then(a.1.cmp(&b.1)));
    let mut votes = [0usize; 3];
    for &(_, i) in distances.iter().take(k.min(distances.len())) {
        votes[train_labels[i] as usize] += 1;
    }
    SolverId::ALL
        .into_iter()
        .enumerate()
        .max_by(|(i, _), (j, _)| votes[*i].cmp(&votes[*j]).then(j.cmp(i)))
        .map(|(_, s)| s)
        .unwrap()
}

/// Macro-averaged F1 over the classes present in the true labels.
pub fn macro_f1<R: Real>(truth: &[SolverId], predicted: &[SolverId]) -> R {
    assert_eq!(truth.len(), predicted.len());
    let mut classes: Vec<SolverId> = truth.to_vec();
    classes.sort_unstable();
    classes.dedup();
    let mut total = R::zero();
    for class in &classes {
        let mut tp = 0usize;
        let mut fp = 0usize;
        let mut fn_ = 0usize;
        for (t, p) in truth.iter().zip(predicted) {
            match (t == class, p == class) {
                (true, true) => tp += 1,
                (false, true) => fp += 1,
                (true, false) => fn_ += 1,
                _ => {}
            }
        }
        let f1 = if tp == 0 {
            R::zero()
        } else {
            let precision = R::from_usize_(tp) / R::from_usize_(tp + fp);
            let recall = R::from_usize_(tp) / R::from_usize_(tp + fn_);
            R::from_f(2.0) * precision * recall / (precision + recall)
        };
        total = total + f1;
    }
    total / R::from_usize_(classes.len())
}

struct Split {
    train: Vec<usize>,
    test: Vec<usize>,
}

fn split_rows(n: usize, split_seed: u64) -> Split {
    let mut rng = keyed_rng(&["selector-split", &split_seed.to_string()]);
    let order = shuffled_indices(n, &mut rng);
    let n_test = (n as f64 * 0.2).round() as usize;
    let n_test = n_test.clamp(1, n - 1);
    Split {
        test: order[..n_test].to_vec(),
        train: order[n_test..].to_vec(),
    }
}

/// Cross-validated macro-F1 of a candidate feature subset on the training
/// rows (already z-scored).
fn cv_score<R: Real>(
    rows: &[Vec<R>],
    labels: &[SolverId],
    dims: &[usize],
    folds: &[Vec<usize>],
    k: usize,
) -> R {
    let mut total = R::zero();
    for fold in folds {
        let holdout: &[usize] = fold;
        let train_idx: Vec<usize> = (0..rows.len()).filter(|i| !holdout.contains(i)).collect();
        let train_rows: Vec<Vec<R>> = train_idx.iter().map(|&i| rows[i].clone()).collect();
        let train_labels: Vec<SolverId> = train_idx.iter().map(|&i| labels[i]).collect();
        let truth: Vec<SolverId> = holdout.iter().map(|&i| labels[i]).collect();
        let predicted: Vec<SolverId> = holdout
            .iter()
            .map(|&i| knn_predict(&train_rows, &train_labels, &rows[i], k, dims))
            .collect();
        total = total + macro_f1(&truth, &predicted);
    }
    total / R::from_usize_(folds.len())
}

/// Sequential forward-floating selection: forward additions that improve the
/// cross-validated macro-F1 by more than epsilon, each followed by backward
/// eliminations that do not decrease it.
fn sffs<R: Real>(
    rows: &[Vec<R>],
    labels: &[SolverId],
    candidates: &[usize],
    folds: &[Vec<usize>],
    params: &TrainParams,
) -> (Vec<usize>, R) {
    let eps = R::from_f(params.improvement_epsilon);
    let mut selected: Vec<usize> = Vec::new();
    let mut score = R::neg_infinity();
    loop {
        if selected.len() >= params.max_features {
            break;
        }
        let free: Vec<usize> = candidates
            .iter()
            .copied()
            .filter(|c| !selected.contains(c))
            .collect();
        if free.is_empty() {
            break;
        }
        let scored: Vec<(usize, R)> = free
            .par_iter()
            .map(|&c| {
                let mut dims = selected.clone();
                dims.push(c);
                (c, cv_score(rows, labels, &dims, folds, params.k))
            })
            .collect();
        let (best_feature, best_score) = scored
            .into_iter()
            .max_by(|a, b| a.1.partial_cmp(&b.1).unwrap().then(b.0.cmp(&a.0)))
            .unwrap();
        if selected.is_empty() {
            if !(best_score > R::neg_infinity()) {
                break;
            }
        } else if !(best_score > score + eps) {
            break;
        }
        selected.push(best_feature);
        score = best_score;
        // conditional backward eliminations, never touching the newest pick
        while selected.len() >= 2 {
            let newest = *selected.last().unwrap();
            let removable: Vec<usize> = selected.iter().copied().filter(|&f| f != newest).collect();
            let scored: Vec<(usize, R)> = removable
                .par_iter()
                .map(|&f| {
                    let dims: Vec<usize> = selected.iter().copied().filter(|&g| g != f).collect();
                    (f, cv_score(rows, labels, &dims, folds, params.k))
                })
                .collect();
            let (drop_feature, drop_score) = scored
                .into_iter()
                .max_by(|a, b| a.1.partial_cmp(&b.1).unwrap().then(b.0.cmp(&a.0)))
                .unwrap();
            if drop_score >= score {
                selected.retain(|&f| f != drop_feature);
                score = drop_score;
            } else {
                break;
            }
        }
    }
    (selected, score)
}

fn z_stats<R: Real>(rows: &[Vec<R>], idx: &[usize], col: usize) -> (R, R) {
    let n = idx.len();
    let mut sum = R::zero();
    for &i in idx {
        sum = sum + rows[i][col];
    }
    let mean = sum / R::from_usize_(n);
    let mut var = R::zero();
    for &i in idx {
        let d = rows[i][col] - mean;
        var = var + d * d;
    }
    let std = if n > 1 {
        (var / R::from_usize_(n - 1)).sqrt()
    } else {
        R::zero()
    };
    (mean, std)
}

/// Train the selector: 80/20 split, z-scoring fitted on the training split,
/// SFFS under cross-validation, and the evaluation report on the held-out
/// rows.
pub fn train_selector<R: Real>(
    dataset: &Dataset<R>,
    params: &TrainParams,
) -> Result<(SelectorModel<R>, SelectionReport<R>)> {
    let n = dataset.len();
    if n < 3 * params.cv_folds {
        return Err(Error::InvalidInput(format!(
            "need at least {} labeled rows for {}-fold selection, got {n}",
            3 * params.cv_folds,
            params.cv_folds
        )));
    }
    let split = split_rows(n, params.split_seed);
    let mut train_classes: Vec<SolverId> = split.train.iter().map(|&i| dataset.labels[i]).collect();
    train_classes.sort_unstable();
    train_classes.dedup();
    if train_classes.len() < 2 {
        return Err(Error::DegenerateLabels(train_classes[0].name().to_string()));
    }
    // z-scoring stats per feature on the train split; constants dropped
    let n_features = dataset.feature_names.len();
    let mut stats: Vec<(R, R)> = Vec::with_capacity(n_features);
    let mut candidates = Vec::new();
    for col in 0..n_features {
        let (mean, std) = z_stats(&dataset.rows, &split.train, col);
        stats.push((mean, std));
        if std > R::zero() {
            candidates.push(col);
        }
    }
    let mut imputed = 0usize;
    let mut z_rows: Vec<Vec<R>> = Vec::with_capacity(n);
    for row in &dataset.rows {
        let z: Vec<R> = (0..n_features)
            .map(|col| {
                let (mean, std) = stats[col];
                let v = if std > R::zero() {
                    (row[col] - mean) / std
                } else {
                    R::zero()
                };
                if v.is_finite() {
                    v
                } else {
                    imputed += 1;
                    R::zero()
                }
            })
            .collect();
        z_rows.push(z);
    }
    let train_rows: Vec<Vec<R>> = split.train.iter().map(|&i| z_rows[i].clone()).collect();
    let train_labels: Vec<SolverId> = split.train.iter().map(|&i| dataset.labels[i]).collect();
    // deterministic cross-validation folds over the training rows
    let folds: Vec<Vec<usize>> = {
        let mut rng = keyed_rng(&["selector-folds", &params.split_seed.to_string()]);
        let order = shuffled_indices(train_rows.len(), &mut rng);
        (0..params.cv_folds)
            .map(|f| {
                order
                    .iter()
                    .copied()
                    .skip(f)
                    .step_by(params.cv_folds)
                    .collect()
            })
            .collect()
    };
    let (selected_idx, _cv) = sffs(&train_rows, &train_labels, &candidates, &folds, params);
    let selected_idx = if selected_idx.is_empty() {
        vec![candidates[0]]
    } else {
        selected_idx
    };
    let model = SelectorModel {
        k: params.k,
        selected_features: selected_idx
            .iter()
            .map(|&i| dataset.feature_names[i].clone())
            .collect(),
        normalization: selected_idx.iter().map(|&i| stats[i]).collect(),
        train_rows: train_rows
            .iter()
            .map(|row| selected_idx.iter().map(|&i| row[i]).collect())
            .collect(),
        train_labels: train_labels.clone(),
    };
    let report = report_on(
        dataset,
        &z_rows,
        &selected_idx,
        &split,
        &train_labels,
        params.k,
        imputed,
        model.selected_features.clone(),
    );
    Ok((model, report))
}

/// Apply a trained model to a feature table joined with labels; returns the
/// report over all joined rows.
pub fn evaluate_selector<R: Real>(
    model: &SelectorModel<R>,
    dataset: &Dataset<R>,
) -> Result<SelectionReport<R>> {
    let idx: Vec<usize> = model
        .selected_features
        .iter()
        .map(|name| {
            dataset
                .feature_names
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| Error::schema("feature table", format!("missing feature `{name}`")))
        })
        .collect::<Result<_>>()?;
    let predictions: Vec<SolverId> = dataset
        .rows
        .iter()
        .map(|row| {
            let z: Vec<R> = idx
                .iter()
                .zip(&model.normalization)
                .map(|(&i, &(mean, std))| {
                    let v = if std > R::zero() {
                        (row[i] - mean) / std
                    } else {
                        R::zero()
                    };
                    if v.is_finite() {
                        v
                    } else {
                        R::zero()
                    }
                })
                .collect();
            let dims: Vec<usize> = (0..z.len()).collect();
            knn_predict(&model.train_rows, &model.train_labels, &z, model.k, &dims)
        })
        .collect();
    let all: Vec<usize> = (0..dataset.len()).collect();
    let sbs = sbs_of(dataset, &all);
    let truth: Vec<SolverId> = dataset.labels.clone();
    Ok(SelectionReport {
        f1_macro: macro_f1(&truth, &predictions),
        ri: ri_of(dataset, &all, &predictions, sbs),
        sbs,
        n_train: model.train_rows.len(),
        n_test: dataset.len(),
        imputed_values: 0,
        selected_features: model.selected_features.clone(),
        families: family_reports(dataset, &all, &predictions, sbs),
    })
}

/// Single best solver over the given rows: highest mean HVN, fixed-order
/// tie-break.
fn sbs_of<R: Real>(dataset: &Dataset<R>, rows: &[usize]) -> SolverId {
    let mut means = [R::zero(); 3];
    for (s, mean) in means.iter_mut().enumerate() {
        let mut sum = R::zero();
        for &i in rows {
            sum = sum + dataset.mean_hvn[i][s];
        }
        *mean = sum / R::from_usize_(rows.len().max(1));
    }
    SolverId::ALL
        .into_iter()
        .enumerate()
        .max_by(|(i, _), (j, _)| means[*i].partial_cmp(&means[*j]).unwrap().then(j.cmp(i)))
        .map(|(_, s)| s)
        .unwrap()
}

/// Aggregate RI of a prediction vector over the given rows against the
/// provided SBS: mean selected HVN versus mean SBS and mean VBS HVN.
fn ri_of<R: Real>(
    dataset: &Dataset<R>,
    rows: &[usize],
    predictions: &[SolverId],
    sbs: SolverId,
) -> R {
    if rows.is_empty() {
        return R::zero();
    }
    let mut sel = R::zero();
    let mut sbs_sum = R::zero();
    let mut vbs = R::zero();
    for (pos, &i) in rows.iter().enumerate() {
        sel = sel + dataset.mean_hvn[i][predictions[pos] as usize];
        sbs_sum = sbs_sum + dataset.mean_hvn[i][sbs as usize];
        vbs = vbs + dataset.mean_hvn[i][dataset.labels[i] as usize];
    }
    let n = R::from_usize_(rows.len());
    super::relative_improvement(sel / n, sbs_sum / n, vbs / n)
}

#[allow(clippy::too_many_arguments)]
fn report_on<R: Real>(
    dataset: &Dataset<R>,
    z_rows: &[Vec<R>],
    selected_idx: &[usize],
    split: &Split,
    train_labels: &[SolverId],
    k: usize,
    imputed: usize,
    selected_features: Vec<String>,
) -> SelectionReport<R> {
    let train_rows: Vec<Vec<R>> = split.train.iter().map(|&i| z_rows[i].clone()).collect();
    let predictions: Vec<SolverId> = split
        .test
        .iter()
        .map(|&i| knn_predict(&train_rows, train_labels, &z_rows[i], k, selected_idx))
        .collect();
    let truth: Vec<SolverId> = split.test.iter().map(|&i| dataset.labels[i]).collect();
    let sbs = sbs_of(dataset, &split.train);
    SelectionReport {
        f1_macro: macro_f1(&truth, &predictions),
        ri: ri_of(dataset, &split.test, &predictions, sbs),
        sbs,
        n_train: split.train.len(),
        n_test: split.test.len(),
        imputed_values: imputed,
        selected_features,
        families: family_reports(dataset, &split.test, &predictions, sbs),
    }
}

fn family_reports<R: Real>(
    dataset: &Dataset<R>,
    rows: &[usize],
    predictions: &[SolverId],
    global_sbs: SolverId,
) -> Vec<FamilyReport<R>> {
    let mut families: Vec<String> = rows.iter().map(|&i| dataset.families[i].clone()).collect();
    families.sort();
    families.dedup();
    families
        .into_iter()
        .map(|family| {
            let members: Vec<usize> = (0..rows.len())
                .filter(|&pos| dataset.families[rows[pos]] == family)
                .collect();
            let row_idx: Vec<usize> = members.iter().map(|&pos| rows[pos]).collect();
            let preds: Vec<SolverId> = members.iter().map(|&pos| predictions[pos]).collect();
            let truth: Vec<SolverId> = row_idx.iter().map(|&i| dataset.labels[i]).collect();
            let sbs = if row_idx.is_empty() {
                global_sbs
            } else {
                sbs_of(dataset, &row_idx)
            };
            FamilyReport {
                family,
                n_test: row_idx.len(),
                f1_macro: macro_f1(&truth, &preds),
                ri: ri_of(dataset, &row_idx, &preds, sbs),
                sbs,
            }
        })
        .collect()
}
