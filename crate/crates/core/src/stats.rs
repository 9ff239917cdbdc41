//! Small statistics helpers shared by the feature groups and analyses.

use crate::scalar::Real;

pub fn mean<R: Real>(v: &[R]) -> R {
    if v.is_empty() {
        return R::zero();
    }
    let mut s = R::zero();
    for &x in v {
        s = s + x;
    }
    s / R::from_usize_(v.len())
}

/// Sample standard deviation (denominator n-1); 0 for fewer than 2 values.
pub fn sample_std<R: Real>(v: &[R]) -> R {
    if v.len() < 2 {
        return R::zero();
    }
    let m = mean(v);
    let mut s = R::zero();
    for &x in v {
        let d = x - m;
        s = s + d * d;
    }
    (s / R::from_usize_(v.len() - 1)).sqrt()
}

/// Population standard deviation (denominator n); 0 for empty input.
pub fn population_std<R: Real>(v: &[R]) -> R {
    if v.is_empty() {
        return R::zero();
    }
    let m = mean(v);
    let mut s = R::zero();
    for &x in v {
        let d = x - m;
        s = s + d * d;
    }
    (s / R::from_usize_(v.len())).sqrt()
}

/// Pearson correlation; `None` when either side has zero variance.
pub fn pearson<R: Real>(a: &[R], b: &[R]) -> Option<R> {
    assert_eq!(a.len(), b.len(), "pearson inputs must have equal length");
    let n = a.len();
    if n < 2 {
        return None;
    }
    let (ma, mb) = (mean(a), mean(b));
    let mut sab = R::zero();
    let mut saa = R::zero();
    let mut sbb = R::zero();
    for i in 0..n {
        let da = a[i] - ma;
        let db = b[i] - mb;
        sab = sab + da * db;
        saa = saa + da * da;
        sbb = sbb + db * db;
    }
    if saa <= R::zero() || sbb <= R::zero() {
        return None;
    }
    Some(sab / (saa.sqrt() * sbb.sqrt()))
}

/// Ranks with ties resolved to average ranks (1-based).
pub fn average_ranks<R: Real>(v: &[R]) -> Vec<R> {
    let n = v.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| v[i].partial_cmp(&v[j]).unwrap().then(i.cmp(&j)));
    let mut ranks = vec![R::zero(); n];
    let mut i = 0;
    while i < n {
        let mut j = i;
        while j + 1 < n && v[order[j + 1]] == v[order[i]] {
            j += 1;
        }
        // ranks i+1 ..= j+1 averaged
        let avg = R::from_f((i + j + 2) as f64 / 2.0);
        for &k in &order[i..=j] {
            ranks[k] = avg;
        }
        i = j + 1;
    }
    ranks
}

/// Spearman rank correlation (Pearson on average ranks).
pub fn spearman<R: Real>(a: &[R], b: &[R]) -> Option<R> {
    pearson(&average_ranks(a), &average_ranks(b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pearson_hand_case() {
        // objectives {(0,0),(1,2),(2,1)}: Pearson 0.5
        let r = pearson(&[0.0f64, 1.0, 2.0], &[0.0, 2.0, 1.0]).unwrap();
        assert!((r - 0.5).abs() < 1e-12);
    }

    #[test]
    fn spearman_equals_pearson_on_ranks() {
        let a = [0.3, 1.5, 0.9, 2.0, 2.0];
        let b = [1.0, 0.1, 0.5, 0.2, 0.9];
        let s = spearman(&a, &b).unwrap();
        let p = pearson(&average_ranks(&a), &average_ranks(&b)).unwrap();
        assert_eq!(s, p);
    }

    #[test]
    fn ranks_average_ties() {
        let r = average_ranks(&[0.9, 0.9, 0.7]);
        assert_eq!(r, vec![2.5, 2.5, 1.0]);
    }

    #[test]
    fn zero_variance_is_none() {
        assert!(pearson(&[1.0, 1.0, 1.0], &[0.0, 1.0, 2.0]).is_none());
    }
}
