//! Dense linear algebra kernels sized for this crate's workloads
//! (correlation matrices up to ~1000x1000, covariances up to ~25x25).

use crate::matrix::Matrix;
use crate::scalar::Real;

/// Solve `A x = b` for symmetric positive definite `A` via Cholesky.
/// Returns `None` when a pivot is non-positive or non-finite.
pub fn cholesky_solve<R: Real>(a: &Matrix<R>, b: &[R]) -> Option<Vec<R>> {
    let n = a.n_rows();
    assert_eq!(a.n_cols(), n);
    assert_eq!(b.len(), n);
    // lower-triangular factor, row-major
    let mut l = vec![R::zero(); n * n];
    for i in 0..n {
        for j in 0..=i {
            let mut s = a.get(i, j);
            for k in 0..j {
                s = s - l[i * n + k] * l[j * n + k];
            }
            if i == j {
                if !(s > R::zero()) || !s.is_finite() {
                    return None;
                }
                l[i * n + i] = s.sqrt();
            } else {
                l[i * n + j] = s / l[j * n + j];
            }
        }
    }
    // forward substitution L y = b
    let mut y = vec![R::zero(); n];
    for i in 0..n {
        let mut s = b[i];
        for k in 0..i {
            s = s - l[i * n + k] * y[k];
        }
        y[i] = s / l[i * n + i];
    }
    // back substitution L^T x = y
    let mut x = vec![R::zero(); n];
    for i in (0..n).rev() {
        let mut s = y[i];
        for k in i + 1..n {
            s = s - l[k * n + i] * x[k];
        }
        x[i] = s / l[i * n + i];
    }
    Some(x)
}

/// Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.
/// Returns eigenvalues in descending order with matching eigenvectors
/// (columns of the returned matrix). Eigenvector signs are normalized so
/// the entry of largest magnitude is positive.
pub fn jacobi_eigen<R: Real>(a: &Matrix<R>) -> (Vec<R>, Matrix<R>) {
    let n = a.n_rows();
    assert_eq!(a.n_cols(), n);
    let mut m: Vec<R> = (0..n)
        .flat_map(|i| (0..n).map(move |j| a.get(i, j)))
        .collect();
    let mut v = vec![R::zero(); n * n];
    for i in 0..n {
        v[i * n + i] = R::one();
    }
    let eps = R::from_f(1e-14);
    for _sweep in 0..100 {
        let mut off = R::zero();
        for i in 0..n {
            for j in i + 1..n {
                off = off + m[i * n + j] * m[i * n + j];
            }
        }
        if off.sqrt() <= eps {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[p * n + q];
                if apq == R::zero() {
                    continue;
                }
                let app = m[p * n + p];
                let aqq = m[q * n + q];
                let theta = (aqq - app) / (R::from_f(2.0) * apq);
                let t = {
                    let sign = if theta < R::zero() {
                        -R::one()
                    } else {
                        R::one()
                    };
                    sign / (theta.abs() + (theta * theta + R::one()).sqrt())
                };
                let c = R::one() / (t * t + R::one()).sqrt();
                let s = t * c;
                for k in 0..n {
                    let mkp = m[k * n + p];
                    let mkq = m[k * n + q];
                    m[k * n + p] = c * mkp - s * mkq;
                    m[k * n + q] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let mpk = m[p * n + k];
                    let mqk = m[q * n + k];
                    m[p * n + k] = c * mpk - s * mqk;
                    m[q * n + k] = s * mpk + c * mqk;
                }
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    let mut pairs: Vec<(R, usize)> = (0..n).map(|i| (m[i * n + i], i)).collect();
    pairs.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap().then(a.1.cmp(&b.1)));
    let values: Vec<R> = pairs.iter().map(|&(val, _)| val).collect();
    let mut vectors = Matrix::zeros(n, n);
    for (new_col, &(_, old_col)) in pairs.iter().enumerate() {
        // sign convention: largest-magnitude entry positive
        let mut best = R::zero();
        for k in 0..n {
            if v[k * n + old_col].abs() > best.abs() {
                best = v[k * n + old_col];
            }
        }
        let flip = if best < R::zero() {
            -R::one()
        } else {
            R::one()
        };
        for k in 0..n {
            vectors.set(k, new_col, flip * v[k * n + old_col]);
        }
    }
    (values, vectors)
}

/// Least squares solution of `design * x = y` via Householder QR.
/// `design` must have at least as many rows as columns.
pub fn least_squares<R: Real>(design: &Matrix<R>, y: &[R]) -> Vec<R> {
    let n = design.n_rows();
    let p = design.n_cols();
    assert!(n >= p, "least squares needs n >= p");
    assert_eq!(y.len(), n);
    let mut a: Vec<R> = (0..n)
        .flat_map(|i| (0..p).map(move |j| design.get(i, j)))
        .collect();
    let mut b: Vec<R> = y.to_vec();
    for k in 0..p {
        // Householder vector for column k
        let mut norm = R::zero();
        for i in k..n {
            norm = norm + a[i * p + k] * a[i * p + k];
        }
        let norm = norm.sqrt();
        if norm == R::zero() {
            continue;
        }
        let alpha = if a[k * p + k] > R::zero() {
            -norm
        } else {
            norm
        };
        let mut v = vec![R::zero(); n];
        for i in k..n {
            v[i] = a[i * p + k];
        }
        v[k] = v[k] - alpha;
        let mut vtv = R::zero();
        for i in k..n {
            vtv = vtv + v[i] * v[i];
        }
        if vtv == R::zero() {
            continue;
        }
        for j in k..p {
            let mut dot = R::zero();
            for i in k..n {
                dot = dot + v[i] * a[i * p + j];
            }
            let f = R::from_f(2.0) * dot / vtv;
            for i in k..n {
                a[i * p + j] = a[i * p + j] - f * v[i];
            }
        }
        let mut dot = R::zero();
        for i in k..n {
            dot = dot + v[i] * b[i];
        }
        let f = R::from_f(2.0) * dot / vtv;
        for i in k..n {
            b[i] = b[i] - f * v[i];
        }
    }
    // back substitution on the upper-triangular system
    let mut x = vec![R::zero(); p];
    for i in (0..p).rev() {
        let mut s = b[i];
        for j in i + 1..p {
            s = s - a[i * p + j] * x[j];
        }
        let d = a[i * p + i];
        x[i] = if d == R::zero() { R::zero() } else { s / d };
    }
    x
}
