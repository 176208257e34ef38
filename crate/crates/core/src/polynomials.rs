//! Energy polynomials P_m of the three QES families.
//!
//! Every family is generated from a monic recurrence
//!
//! ```text
//! P_{n+1}(x) = (x - c_n) P_n(x) - d_n P_{n-1}(x) - e_n P_{n-2}(x),   P_0 = 1
//! ```
//!
//! obtained by substituting the polynomial factor of the eigenfunction into
//! the Schrödinger equation and rescaling each step to a unit leading
//! coefficient. With N = 2j:
//!
//! | family        | c_n                | d_n                          | e_n                                   |
//! |---------------|--------------------|------------------------------|---------------------------------------|
//! | Pöschl–Teller | n(B+4j-n+1)        | qA² n(N-n+1)(n+L+½)          | 0                                     |
//! | sextic        | n b                | qa² n(N-n+1)(n+L+½)          | 0                                     |
//! | PT-anharmonic | -2b(n-j)           | 4ℓ qa² n(N-n+1)              | 4(qa²)² n(n-1)(N-n+1)(N-n+2)          |
//!
//! The roots of the critical polynomial P_{2j+1} are the admissible values
//! of the spectral variable (λ for Pöschl–Teller, ε otherwise).

use serde::{Deserialize, Serialize};

use crate::error::{QesError, Result};
use crate::params::{PTAnharmonicParams, PoschlTellerParams, SexticParams, TwoJ};
use crate::scalar::{Extended, Precision, Real};

/// A polynomial in the spectral variable, coefficients in ascending powers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnergyPolynomial {
    pub degree: usize,
    pub coefficients: Vec<f64>,
    pub monic: bool,
}

impl EnergyPolynomial {
    /// Builds a polynomial, trimming trailing zeros so that `degree` indexes
    /// the last nonzero coefficient.
    pub fn new(mut coefficients: Vec<f64>) -> Self {
        while coefficients.len() > 1 && coefficients.last() == Some(&0.0) {
            coefficients.pop();
        }
        if coefficients.is_empty() {
            coefficients.push(0.0);
        }
        let degree = coefficients.len() - 1;
        let monic = coefficients[degree] == 1.0;
        Self { degree, coefficients, monic }
    }

    pub fn eval(&self, x: f64) -> f64 {
        eval_polynomial(self, x)
    }

    pub fn leading(&self) -> f64 {
        self.coefficients[self.degree]
    }
}

/// Horner evaluation.
pub fn eval_polynomial(p: &EnergyPolynomial, x: f64) -> f64 {
    horner(&p.coefficients, x)
}

pub(crate) fn horner<T: Real>(coeffs: &[T], x: T) -> T {
    let mut acc = T::zero();
    for c in coeffs.iter().rev() {
        acc = acc * x.clone() + c.clone();
    }
    acc
}

/// Value and first derivative by Horner's scheme.
pub(crate) fn horner_with_derivative<T: Real>(coeffs: &[T], x: T) -> (T, T) {
    let mut p = T::zero();
    let mut dp = T::zero();
    for c in coeffs.iter().rev() {
        dp = dp * x.clone() + p.clone();
        p = p * x.clone() + c.clone();
    }
    (p, dp)
}

/// Tabulated coefficients of a monic recurrence, indexed by n = 0..=2j.
#[derive(Debug, Clone)]
pub struct Recurrence<T> {
    pub diag: Vec<T>,
    pub sub1: Vec<T>,
    pub sub2: Vec<T>,
}

impl<T: Real> Recurrence<T> {
    fn len(&self) -> usize {
        self.diag.len()
    }

    /// Coefficient lists of P_0..=P_upto.
    pub fn polynomials(&self, upto: usize) -> Vec<Vec<T>> {
        let mut out: Vec<Vec<T>> = vec![vec![T::one()]];
        for n in 0..upto {
            // (x - c_n) P_n
            let pn = &out[n];
            let mut next = vec![T::zero(); pn.len() + 1];
            for (k, c) in pn.iter().enumerate() {
                next[k + 1] = next[k + 1].clone() + c.clone();
                next[k] = next[k].clone() - self.diag[n].clone() * c.clone();
            }
            if n >= 1 && !self.sub1[n].is_zero() {
                for (k, c) in out[n - 1].iter().enumerate() {
                    next[k] = next[k].clone() - self.sub1[n].clone() * c.clone();
                }
            }
            if n >= 2 && !self.sub2[n].is_zero() {
                for (k, c) in out[n - 2].iter().enumerate() {
                    next[k] = next[k].clone() - self.sub2[n].clone() * c.clone();
                }
            }
            out.push(next);
        }
        out
    }

    /// Values P_0(x)..=P_{2j+1}(x) evaluated directly through the recurrence.
    pub fn values(&self, x: T) -> Vec<T> {
        let mut out = vec![T::one()];
        for n in 0..self.len() {
            let mut v = (x.clone() - self.diag[n].clone()) * out[n].clone();
            if n >= 1 {
                v = v - self.sub1[n].clone() * out[n - 1].clone();
            }
            if n >= 2 {
                v = v - self.sub2[n].clone() * out[n - 2].clone();
            }
            out.push(v);
        }
        out
    }
}

fn check_upto(twoj: TwoJ, upto: usize, qa2: f64) -> Result<()> {
    let max = twoj.levels();
    if upto > max {
        return Err(QesError::OutOfRange { index: upto, max });
    }
    if upto > 1 && qa2 == 0.0 {
        return Err(QesError::DegenerateParameters(
            "q·a² = 0: the exactly solvable case has no QES recurrence".into(),
        ));
    }
    Ok(())
}

/// n(2j-n+1)(n+L+½), common to the Pöschl–Teller and sextic off-diagonals.
fn radial_weight<T: Real>(n: usize, twoj: TwoJ, l: f64) -> T {
    let nn = n as i64;
    let tail = twoj.get() as i64 - nn + 1;
    T::from_i64(nn * tail) * (T::from_i64(nn) + T::from_f64(l) + T::one() / T::from_i64(2))
}

pub fn pt_recurrence<T: Real>(params: &PoschlTellerParams) -> Recurrence<T> {
    let twoj = params.twoj();
    let b = params.b_in::<T>();
    let qa2 = T::from_f64(params.q()) * T::from_f64(params.a()) * T::from_f64(params.a());
    let size = twoj.levels();
    let mut diag = Vec::with_capacity(size);
    let mut sub1 = Vec::with_capacity(size);
    for n in 0..size {
        let nn = n as i64;
        // n(B + 4j - n + 1)
        let shift = b.clone() + T::from_i64(2 * twoj.get() as i64 - nn + 1);
        diag.push(T::from_i64(nn) * shift);
        sub1.push(qa2.clone() * radial_weight::<T>(n, twoj, params.l()));
    }
    Recurrence { diag, sub1, sub2: vec![T::zero(); size] }
}

pub fn sextic_recurrence<T: Real>(params: &SexticParams) -> Recurrence<T> {
    let twoj = params.twoj;
    let qa2 = T::from_f64(params.q) * T::from_f64(params.a) * T::from_f64(params.a);
    let size = twoj.levels();
    let mut diag = Vec::with_capacity(size);
    let mut sub1 = Vec::with_capacity(size);
    for n in 0..size {
        diag.push(T::from_i64(n as i64) * T::from_f64(params.b));
        sub1.push(qa2.clone() * radial_weight::<T>(n, twoj, params.l));
    }
    Recurrence { diag, sub1, sub2: vec![T::zero(); size] }
}

pub fn ptanh_recurrence<T: Real>(params: &PTAnharmonicParams) -> Recurrence<T> {
    let twoj = params.twoj.get() as i64;
    let qa2 = T::from_f64(params.q) * T::from_f64(params.a) * T::from_f64(params.a);
    let size = params.twoj.levels();
    let mut diag = Vec::with_capacity(size);
    let mut sub1 = Vec::with_capacity(size);
    let mut sub2 = Vec::with_capacity(size);
    for n in 0..size {
        let nn = n as i64;
        // -2b(n - j) = b(2j - 2n)
        diag.push(T::from_f64(params.b) * T::from_i64(twoj - 2 * nn));
        sub1.push(
            T::from_i64(4 * nn * (twoj - nn + 1)) * T::from_f64(params.ell) * qa2.clone(),
        );
        sub2.push(
            T::from_i64(4 * nn * (nn - 1) * (twoj - nn + 1) * (twoj - nn + 2))
                * qa2.clone()
                * qa2.clone(),
        );
    }
    Recurrence { diag, sub1, sub2 }
}

fn to_energy_polynomials<T: Real>(polys: Vec<Vec<T>>) -> Vec<EnergyPolynomial> {
    polys
        .into_iter()
        .map(|p| {
            let coefficients: Vec<f64> = p.iter().map(Real::to_f64).collect();
            let degree = coefficients.len() - 1;
            EnergyPolynomial { degree, coefficients, monic: true }
        })
        .collect()
}

fn generate<F>(precision: Precision, f64_route: F, ext_route: impl FnOnce() -> Vec<Vec<Extended>>) -> Vec<EnergyPolynomial>
where
    F: FnOnce() -> Vec<Vec<f64>>,
{
    match precision {
        Precision::Double => to_energy_polynomials(f64_route()),
        Precision::Extended => to_energy_polynomials(ext_route()),
    }
}

/// Monic Pöschl–Teller polynomials P_0(λ)..=P_upto(λ).
pub fn generate_pt_polynomials(
    params: &PoschlTellerParams,
    upto: usize,
    precision: Precision,
) -> Result<Vec<EnergyPolynomial>> {
    check_upto(params.twoj(), upto, params.qa2())?;
    Ok(generate(
        precision,
        || pt_recurrence::<f64>(params).polynomials(upto),
        || pt_recurrence::<Extended>(params).polynomials(upto),
    ))
}

/// Monic sextic-oscillator polynomials P_0(ε)..=P_upto(ε).
pub fn generate_sextic_polynomials(
    params: &SexticParams,
    upto: usize,
    precision: Precision,
) -> Result<Vec<EnergyPolynomial>> {
    check_upto(params.twoj, upto, params.qa2())?;
    Ok(generate(
        precision,
        || sextic_recurrence::<f64>(params).polynomials(upto),
        || sextic_recurrence::<Extended>(params).polynomials(upto),
    ))
}

/// Monic PT-anharmonic polynomials P_0(ε)..=P_upto(ε). The imaginary units
/// of the raw four-term recurrence cancel under monic rescaling, so the
/// coefficients are real.
pub fn generate_ptanh_polynomials(
    params: &PTAnharmonicParams,
    upto: usize,
    precision: Precision,
) -> Result<Vec<EnergyPolynomial>> {
    check_upto(params.twoj, upto, params.qa2())?;
    Ok(generate(
        precision,
        || ptanh_recurrence::<f64>(params).polynomials(upto),
        || ptanh_recurrence::<Extended>(params).polynomials(upto),
    ))
}

/// Tridiagonal-matrix entries (γ_m, μ_m, β_m) of the Pöschl–Teller system.
pub fn recurrence_coefficients(params: &PoschlTellerParams, m: usize) -> Result<(f64, f64, f64)> {
    let max = params.twoj().get() as usize;
    if m > max {
        return Err(QesError::OutOfRange { index: m, max });
    }
    let mf = m as f64;
    let gamma = 2.0 * mf * (2.0 * params.l() + 2.0 * mf + 1.0);
    let mu = 4.0 * mf * params.qa2();
    let beta = 4.0 * mf * (params.b() + 2.0 * params.twoj().get() as f64 - mf + 1.0);
    Ok((gamma, mu, beta))
}

/// Scale factors s_m relating the monic P_m to the un-normalized solution of
///
/// ```text
/// 2(2j-m) qA² R_{m+1} + m(2L+2m+1) R_{m-1} - 2(λ - m(B+4j-m+1)) R_m = 0,  R_0 = 1
/// ```
///
/// i.e. R_m = s_m P_m with s_{m+1} = s_m / ((2j-m) qA²). The same relation is
/// the m-th row of the tridiagonal system divided by two.
pub fn pt_raw_scales(params: &PoschlTellerParams) -> Vec<f64> {
    let twoj = params.twoj().get() as usize;
    let mut s = vec![1.0];
    for m in 0..twoj {
        let prev = s[m];
        s.push(prev / ((twoj - m) as f64 * params.qa2()));
    }
    s
}

/// Same for the sextic family, whose raw relation reads
/// `2(2j-m) qa² R_{m+1} - 2(ε - bm) R_m + m(2L+2m+1) R_{m-1} = 0`.
pub fn sextic_raw_scales(params: &SexticParams) -> Vec<f64> {
    let twoj = params.twoj.get() as usize;
    let mut s = vec![1.0];
    for m in 0..twoj {
        let prev = s[m];
        s.push(prev / ((twoj - m) as f64 * params.qa2()));
    }
    s
}
