//! Polynomial roots from companion-matrix eigenvalues, polished by Newton.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::polynomials::horner_with_derivative;
use crate::scalar::Real;

/// All complex roots of a polynomial given by ascending coefficients.
/// The polynomial is made monic internally.
pub fn companion_roots(coeffs: &[f64]) -> Vec<Complex64> {
    let mut c = coeffs.to_vec();
    while c.len() > 1 && *c.last().unwrap() == 0.0 {
        c.pop();
    }
    let n = c.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    let lead = c[n];
    if n == 1 {
        return vec![Complex64::new(-c[0] / lead, 0.0)];
    }
    // Frobenius companion: ones on the subdiagonal, -c_k/lead in the last column.
    let mut m = DMatrix::<f64>::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = 1.0;
    }
    for i in 0..n {
        m[(i, n - 1)] = -c[i] / lead;
    }
    m.complex_eigenvalues().iter().copied().collect()
}

/// Newton iteration on a real root, in the scalar type of the coefficients.
/// Stops when the step no longer shrinks or after `max_iter` steps.
pub fn newton_polish<T: Real>(coeffs: &[T], start: T, max_iter: usize) -> T {
    let mut x = start;
    let mut last_step: Option<T> = None;
    for _ in 0..max_iter {
        let (p, dp) = horner_with_derivative(coeffs, x.clone());
        if dp.is_zero() || p.is_zero() {
            break;
        }
        let step = p / dp;
        let size = step.abs();
        if let Some(prev) = &last_step {
            // divergence or stagnation: keep the current iterate
            if size >= *prev {
                break;
            }
        }
        x = x - step;
        if size <= T::epsilon() * (T::one() + x.abs()) {
            break;
        }
        last_step = Some(size);
    }
    x
}
