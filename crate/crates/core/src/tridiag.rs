//! Symmetric tridiagonal eigenvalues by Sturm-sequence bisection, plus
//! inverse iteration for eigenvectors.
//!
//! A matrix is described by its diagonal `d[0..n]` and the squares of its
//! off-diagonal `e2[0..n-1]`; a nonsymmetric tridiagonal matrix with
//! positive products `lower[i]*upper[i]` is similar to the symmetric one with
//! `e2[i] = lower[i]*upper[i]`, so only those products are needed.

use crate::scalar::Real;

/// Number of eigenvalues strictly below `x`.
pub fn sturm_count<T: Real>(d: &[T], e2: &[T], x: &T) -> usize {
    let tiny = T::epsilon() * T::epsilon();
    let mut count = 0;
    let mut pivot = T::one();
    for i in 0..d.len() {
        let mut next = d[i].clone() - x.clone();
        if i > 0 {
            next = next - e2[i - 1].clone() / pivot.clone();
        }
        if next.is_zero() {
            next = -tiny.clone();
        }
        if next < T::zero() {
            count += 1;
        }
        pivot = next;
    }
    count
}

/// Gershgorin interval containing the whole spectrum.
fn gershgorin<T: Real>(d: &[T], e2: &[T]) -> (T, T) {
    let n = d.len();
    let mut lo = d[0].clone();
    let mut hi = d[0].clone();
    for i in 0..n {
        let mut radius = T::zero();
        if i > 0 {
            radius = radius + e2[i - 1].sqrt();
        }
        if i + 1 < n {
            radius = radius + e2[i].sqrt();
        }
        let a = d[i].clone() - radius.clone();
        let b = d[i].clone() + radius;
        if a < lo {
            lo = a;
        }
        if b > hi {
            hi = b;
        }
    }
    let pad = (hi.clone() - lo.clone()).abs() * T::epsilon() * T::from_i64(4) + T::epsilon();
    (lo - pad.clone(), hi + pad)
}

/// The k-th smallest eigenvalue (0-based).
pub fn kth_eigenvalue<T: Real>(d: &[T], e2: &[T], k: usize) -> T {
    let (mut lo, mut hi) = gershgorin(d, e2);
    let two = T::from_i64(2);
    for _ in 0..2000 {
        let mid = (lo.clone() + hi.clone()) / two.clone();
        if mid <= lo || mid >= hi {
            break;
        }
        let scale = if lo.abs() > hi.abs() { lo.abs() } else { hi.abs() };
        if hi.clone() - lo.clone() <= T::epsilon() * (scale + T::epsilon()) * two.clone() {
            break;
        }
        if sturm_count(d, e2, &mid) > k {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    (lo + hi) / two
}

/// The `count` smallest eigenvalues in ascending order.
pub fn lowest_eigenvalues<T: Real>(d: &[T], e2: &[T], count: usize) -> Vec<T> {
    let count = count.min(d.len());
    (0..count).map(|k| kth_eigenvalue(d, e2, k)).collect()
}

/// Eigenvector of the symmetric tridiagonal matrix (diagonal `d`,
/// off-diagonal `e`) for an eigenvalue estimate, by inverse iteration.
pub fn inverse_iteration(d: &[f64], e: &[f64], lambda: f64) -> Vec<f64> {
    let n = d.len();
    let scale = d.iter().fold(1.0f64, |m, x| m.max(x.abs()));
    let shift = lambda + scale * 1e-13;
    let shifted: Vec<f64> = d.iter().map(|x| x - shift).collect();
    let mut v = vec![1.0; n];
    for _ in 0..3 {
        v = solve_tridiagonal(e, &shifted, e, &v);
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        v.iter_mut().for_each(|x| *x /= norm);
    }
    // fix the sign so the first significant entry is positive
    if let Some(first) = v.iter().find(|x| x.abs() > 1e-8) {
        if *first < 0.0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
    }
    v
}

/// Gaussian elimination with partial pivoting for a general tridiagonal
/// system with sub-diagonal `dl`, diagonal `d`, super-diagonal `du`.
pub fn solve_tridiagonal(dl: &[f64], d: &[f64], du: &[f64], rhs: &[f64]) -> Vec<f64> {
    let n = d.len();
    if n == 1 {
        return vec![rhs[0] / nonzero(d[0])];
    }
    // rows stored as (main, upper, upper2) after elimination
    let mut diag = d.to_vec();
    let mut up1 = du.to_vec();
    up1.push(0.0);
    let mut up2 = vec![0.0; n];
    let mut low = dl.to_vec();
    let mut b = rhs.to_vec();
    for i in 0..n - 1 {
        if low[i].abs() > diag[i].abs() {
            // swap rows i and i+1
            std::mem::swap(&mut diag[i], &mut low[i]);
            std::mem::swap(&mut diag[i + 1], &mut up1[i]);
            std::mem::swap(&mut up1[i + 1], &mut up2[i]);
            b.swap(i, i + 1);
            // `low[i]` now holds the old diagonal of row i
        }
        let pivot = nonzero(diag[i]);
        let factor = low[i] / pivot;
        diag[i + 1] -= factor * up1[i];
        up1[i + 1] -= factor * up2[i];
        b[i + 1] -= factor * b[i];
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let mut acc = b[i];
        if i + 1 < n {
            acc -= up1[i] * x[i + 1];
        }
        if i + 2 < n {
            acc -= up2[i] * x[i + 2];
        }
        x[i] = acc / nonzero(diag[i]);
    }
    x
}

fn nonzero(x: f64) -> f64 {
    if x == 0.0 {
        f64::MIN_POSITIVE.sqrt()
    } else {
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Extended;
    use nalgebra::DMatrix;

    fn laplacian(n: usize) -> (Vec<f64>, Vec<f64>) {
        (vec![2.0; n], vec![1.0; n - 1])
    }

    #[test]
    fn discrete_laplacian_spectrum() {
        // eigenvalues 2 - 2cos(kπ/(n+1))
        let n = 50;
        let (d, e2) = laplacian(n);
        let eig = lowest_eigenvalues(&d, &e2, 5);
        for (k, lam) in eig.iter().enumerate() {
            let exact = 2.0 - 2.0 * ((k + 1) as f64 * std::f64::consts::PI / (n + 1) as f64).cos();
            assert!((lam - exact).abs() < 1e-13, "{k}: {lam} vs {exact}");
        }
    }

    #[test]
    fn agrees_with_dense_solver() {
        let d = [1.0, -3.0, 4.5, 0.25, 2.0];
        let e = [0.5, 1.5, -2.0, 0.75];
        let e2: Vec<f64> = e.iter().map(|x| x * x).collect();
        let mut m = DMatrix::<f64>::zeros(5, 5);
        for i in 0..5 {
            m[(i, i)] = d[i];
        }
        for i in 0..4 {
            m[(i, i + 1)] = e[i];
            m[(i + 1, i)] = e[i];
        }
        let mut dense: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
        dense.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let ours = lowest_eigenvalues(&d, &e2, 5);
        for (a, b) in ours.iter().zip(&dense) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn extended_bisection_resolves_beyond_double() {
        let d: Vec<Extended> = [2, 2, 2].iter().map(|&x| Extended::from_i64(x)).collect();
        let e2: Vec<Extended> = [1, 1].iter().map(|&x| Extended::from_i64(x)).collect();
        // eigenvalues 2 - sqrt2, 2, 2 + sqrt2
        let lam = kth_eigenvalue(&d, &e2, 0);
        let exact = Extended::from_i64(2) - Extended::from_i64(2).sqrt();
        assert!((lam - exact).abs() < Extended::from_f64(1e-50));
    }

    #[test]
    fn inverse_iteration_recovers_ground_mode() {
        let n = 40;
        let d = vec![2.0; n];
        let e = vec![-1.0; n - 1];
        let e2 = vec![1.0; n - 1];
        let lam = kth_eigenvalue(&d, &e2, 0);
        let v = inverse_iteration(&d, &e, lam);
        let norm = ((n + 1) as f64 / 2.0).sqrt();
        for (i, x) in v.iter().enumerate() {
            let exact = ((i + 1) as f64 * std::f64::consts::PI / (n + 1) as f64).sin() / norm;
            assert!((x - exact).abs() < 1e-9);
        }
    }

    #[test]
    fn pivoting_solver_handles_zero_diagonal() {
        // [[0,1,0],[1,0,1],[0,1,0]] x = b has a singular pattern; use a regular one
        let dl = [1.0, 2.0];
        let d = [0.0, 3.0, 1.0];
        let du = [1.0, 1.0];
        let x_true = [1.0, -2.0, 0.5];
        let b = [
            d[0] * x_true[0] + du[0] * x_true[1],
            dl[0] * x_true[0] + d[1] * x_true[1] + du[1] * x_true[2],
            dl[1] * x_true[1] + d[2] * x_true[2],
        ];
        let x = solve_tridiagonal(&dl, &d, &du, &b);
        for (a, b) in x.iter().zip(&x_true) {
            assert!((a - b).abs() < 1e-13);
        }
    }
}
