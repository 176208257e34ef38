//! Closed-form eigenfunctions ψ(x) = prefactor(x)·ℜ_j(u(x)).

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{QesError, Result};
use crate::params::{PTAnharmonicParams, PoschlTellerParams, SexticParams};
use crate::polynomials::{pt_recurrence, sextic_recurrence};
use crate::potentials::{Domain, PotentialFamily};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigenfunctionSpec {
    pub family: PotentialFamily,
    /// λ for the hyperbolic families, ε for the two oscillators.
    pub lambda: f64,
    /// Index m of the energy map; every root uses m = 0.
    pub level_index: usize,
    /// a_0..a_{2j}, scaled so that a_0 = 1 whenever it is nonzero.
    pub rj_coefficients: Vec<Complex64>,
}

impl EigenfunctionSpec {
    pub fn new(family: PotentialFamily, lambda: f64) -> Result<Self> {
        let rj_coefficients = match &family {
            PotentialFamily::PoschlTeller(p)
            | PotentialFamily::GeneralizedPT(p)
            | PotentialFamily::ScarfPT(p) => rj_coefficients_pt(p, lambda)?,
            PotentialFamily::Sextic(p) => rj_coefficients_sextic(p, lambda)?,
            PotentialFamily::PTAnharmonic(p) => rj_coefficients_ptanh(p, lambda),
        }
        .into_iter()
        .collect();
        Ok(Self { family, lambda, level_index: 0, rj_coefficients })
    }

    /// Same state with every coefficient multiplied by `c`.
    pub fn scaled(&self, c: Complex64) -> Self {
        let mut out = self.clone();
        out.rj_coefficients.iter_mut().for_each(|a| *a *= c);
        out
    }
}

/// τ_m = 2^m / (m! Π_{i<m}(2L+2i+3)), the factor turning the monic P_m into
/// the series coefficient. It equals (4qA²)^m(2j)!(2L+1)!(L+m)!/[2m!(2j-m)!(2L+1+2m)!]
/// divided by the raw-to-monic scale and by L!/2, so a_0 = 1.
fn series_weights(l: f64, count: usize) -> Result<Vec<f64>> {
    // (2L+1)! and (L+m)! are Gamma functions; the literal expression is
    // undefined when 2L+1 is a negative integer.
    let s = 2.0 * l + 1.0;
    if s < 0.0 && s.fract() == 0.0 {
        return Err(QesError::GammaPole { arg: s });
    }
    let mut w = Vec::with_capacity(count);
    let mut acc = 1.0;
    for m in 0..count {
        w.push(acc);
        let denom = (m as f64 + 1.0) * (2.0 * l + 2.0 * m as f64 + 3.0);
        if denom == 0.0 {
            return Err(QesError::GammaPole { arg: 2.0 * l + 2.0 * m as f64 + 3.0 });
        }
        acc *= 2.0 / denom;
    }
    Ok(w)
}

fn to_complex(v: Vec<f64>) -> Vec<Complex64> {
    v.into_iter().map(|x| Complex64::new(x, 0.0)).collect()
}

/// Coefficients of ℜ_j(z) = Σ a_m z^m for the Pöschl–Teller families,
/// evaluated at any λ (off-shell values are allowed).
pub fn rj_coefficients_pt(params: &PoschlTellerParams, lambda: f64) -> Result<Vec<Complex64>> {
    let n = params.twoj().levels();
    let w = series_weights(params.l(), n)?;
    let p = pt_recurrence::<f64>(params).values(lambda);
    Ok(to_complex((0..n).map(|m| w[m] * p[m]).collect()))
}

/// Coefficients of ℜ_j(u), u = x², for the sextic oscillator. The series
/// runs in -x², so the signs alternate relative to the Pöschl–Teller case.
pub fn rj_coefficients_sextic(params: &SexticParams, epsilon: f64) -> Result<Vec<Complex64>> {
    let n = params.twoj.levels();
    let w = series_weights(params.l, n)?;
    let p = sextic_recurrence::<f64>(params).values(epsilon);
    let sign = |m: usize| if m.is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok(to_complex((0..n).map(|m| sign(m) * w[m] * p[m]).collect()))
}

/// Coefficients r_0..r_{2j} of the polynomial factor of the PT-anharmonic
/// eigenfunction, solved downward from r_{2j} = 1 through
/// `(k+2)(k+1)r_{k+2} - 2iℓ(k+1)r_{k+1} + (ε - 2b(k-j))r_k + 2iqa²(2j-k+1)r_{k-1} = 0`.
pub fn rj_coefficients_ptanh(params: &PTAnharmonicParams, epsilon: f64) -> Vec<Complex64> {
    let twoj = params.twoj.get() as usize;
    let qa2 = params.qa2();
    let i = Complex64::i();
    let mut r = vec![Complex64::new(0.0, 0.0); twoj + 3];
    r[twoj] = Complex64::new(1.0, 0.0);
    if qa2 != 0.0 {
        for k in (1..=twoj).rev() {
            let kf = k as f64;
            let head = r[k + 2] * ((kf + 2.0) * (kf + 1.0)) - i * (2.0 * params.ell * (kf + 1.0)) * r[k + 1]
                + r[k] * (epsilon - 2.0 * params.b * (kf - params.j()));
            let weight = i * (2.0 * qa2 * (twoj as f64 - kf + 1.0));
            r[k - 1] = -head / weight;
        }
    }
    r.truncate(twoj + 1);
    if r[0].norm() > 1e-300 {
        let r0 = r[0];
        r.iter_mut().for_each(|c| *c /= r0);
    }
    r
}

/// |residual| of the lowest equation in the downward PT-anharmonic solve,
/// which vanishes exactly at the roots of the critical polynomial.
pub fn ptanh_quantization_residual(params: &PTAnharmonicParams, epsilon: f64) -> f64 {
    let r = rj_coefficients_ptanh(params, epsilon);
    let at = |k: usize| r.get(k).copied().unwrap_or_default();
    let head = at(2) * 2.0 - Complex64::i() * (2.0 * params.ell) * at(1)
        + at(0) * (epsilon + 2.0 * params.b * params.j());
    head.norm()
}

fn horner_c(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c)
}

/// log ψ as (ln|ψ|, arg ψ). Useful where the exponential prefactors
/// overflow a double.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LogPsi {
    pub log_abs: f64,
    pub phase: f64,
}

impl LogPsi {
    pub fn to_complex(self) -> Complex64 {
        Complex64::from_polar(self.log_abs.exp(), self.phase)
    }
}

/// The Pöschl–Teller state at complex argument y = αz in log form.
fn pt_log(p: &PoschlTellerParams, coeffs: &[Complex64], y: Complex64) -> Complex64 {
    let qa2 = p.qa2();
    let cosh_pow = qa2 - p.b() - p.l() - 2.0 * p.twoj().get() as f64 - 2.0;
    let s = y.sinh();
    let r = horner_c(coeffs, -(s * s));
    y.cosh().ln() * cosh_pow + s.ln() * (1.0 + p.l()) - (y * 2.0).cosh() * (qa2 / 4.0) + r.ln()
}

fn check_domain(fam: &PotentialFamily, x: f64) -> Result<()> {
    if !x.is_finite() {
        return Err(QesError::InvalidParameter(format!("x must be finite, got {x}")));
    }
    if fam.domain() == Domain::PositiveHalfLine && x < 0.0 {
        return Err(QesError::Domain { x, domain: Domain::PositiveHalfLine.describe() });
    }
    Ok(())
}

fn origin_value(fam: &PotentialFamily) -> Result<Complex64> {
    let l = match fam {
        PotentialFamily::Sextic(p) => p.l,
        other => other.poschl_teller_params().map(|p| p.l()).unwrap_or(0.0),
    };
    if 1.0 + l > 0.0 {
        Ok(Complex64::new(0.0, 0.0))
    } else {
        Err(QesError::Singularity { x: 0.0 })
    }
}

/// ln ψ(x) in complex form, principal branches throughout. On the Scarf line
/// the branch is continuous: Re cosh > 0 and Im sinh > 0 there.
fn log_psi(spec: &EigenfunctionSpec, x: f64) -> Complex64 {
    let c = &spec.rj_coefficients;
    match &spec.family {
        PotentialFamily::PoschlTeller(p) => pt_log(p, c, Complex64::new(p.alpha() * x, 0.0)),
        PotentialFamily::GeneralizedPT(p) => pt_log(p, c, Complex64::new(p.alpha() * x / 2.0, 0.0)),
        PotentialFamily::ScarfPT(p) => {
            pt_log(p, c, Complex64::new(p.alpha() * x / 2.0, std::f64::consts::FRAC_PI_4))
        }
        PotentialFamily::Sextic(p) => {
            let x2 = x * x;
            let r = horner_c(c, Complex64::new(x2, 0.0));
            Complex64::new((1.0 + p.l) * x.ln() - p.b * x2 / 2.0 - p.qa2() * x2 * x2 / 4.0, 0.0) + r.ln()
        }
        PotentialFamily::PTAnharmonic(p) => {
            let r = horner_c(c, Complex64::new(x, 0.0));
            let phase = -p.ell * x - p.qa2() * x * x * x / 3.0;
            Complex64::new(-p.b * x * x / 2.0, phase) + r.ln()
        }
    }
}

pub fn eval_wavefunction(spec: &EigenfunctionSpec, x: f64) -> Result<Complex64> {
    check_domain(&spec.family, x)?;
    if x == 0.0 && spec.family.domain() == Domain::PositiveHalfLine {
        return origin_value(&spec.family);
    }
    let lp = log_psi(spec, x);
    if lp.re == f64::NEG_INFINITY {
        // node of ℜ_j
        return Ok(Complex64::new(0.0, 0.0));
    }
    Ok(lp.exp())
}

pub fn eval_wavefunction_log(spec: &EigenfunctionSpec, x: f64) -> Result<LogPsi> {
    check_domain(&spec.family, x)?;
    if x == 0.0 && spec.family.domain() == Domain::PositiveHalfLine {
        origin_value(&spec.family)?;
        return Ok(LogPsi { log_abs: f64::NEG_INFINITY, phase: 0.0 });
    }
    let lp = log_psi(spec, x);
    Ok(LogPsi { log_abs: lp.re, phase: lp.im })
}

/// Uniform integration grid with an even number of intervals (Simpson).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IntegrationGrid {
    pub x_min: f64,
    pub x_max: f64,
    pub intervals: usize,
}

impl IntegrationGrid {
    pub fn new(x_min: f64, x_max: f64, intervals: usize) -> Result<Self> {
        if !(x_min < x_max) || !x_min.is_finite() || !x_max.is_finite() {
            return Err(QesError::InvalidParameter(format!("bad interval [{x_min}, {x_max}]")));
        }
        if intervals < 2 {
            return Err(QesError::InvalidParameter("need at least two intervals".into()));
        }
        Ok(Self { x_min, x_max, intervals: intervals + intervals % 2 })
    }

    fn step(&self) -> f64 {
        (self.x_max - self.x_min) / self.intervals as f64
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        let h = self.step();
        (0..=self.intervals).map(move |i| self.x_min + h * i as f64)
    }
}

/// Endpoint decay requirement for numerical normalization.
pub const DECAY_RATIO: f64 = 1e-8;

/// ∫|f|² over the grid by Simpson's rule, after checking that |f| has
/// decayed at both ends.
pub fn norm_squared<F>(f: F, grid: &IntegrationGrid) -> Result<f64>
where
    F: Fn(f64) -> Result<Complex64>,
{
    let values: Vec<f64> = grid.points().map(|x| f(x).map(|v| v.norm_sqr())).collect::<Result<_>>()?;
    let peak = values.iter().fold(0.0f64, |m, v| m.max(*v));
    if !(peak > 0.0) || !peak.is_finite() {
        return Err(QesError::Numerical("wavefunction vanishes or overflows on the grid".into()));
    }
    let ends = values[0].max(*values.last().unwrap()).sqrt();
    let ratio = ends / peak.sqrt();
    if ratio >= DECAY_RATIO {
        return Err(QesError::NonNormalizable { ratio });
    }
    let h = grid.step();
    let n = grid.intervals;
    let mut sum = values[0] + values[n];
    for (i, v) in values.iter().enumerate().take(n).skip(1) {
        sum += if i % 2 == 1 { 4.0 * v } else { 2.0 * v };
    }
    Ok(sum * h / 3.0)
}

/// N = ∫|ψ|² on the grid, so ψ/√N has unit norm. Complex families use the
/// modulus norm.
pub fn normalize_numerically(spec: &EigenfunctionSpec, grid: &IntegrationGrid) -> Result<f64> {
    norm_squared(|x| eval_wavefunction(spec, x), grid)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::TwoJ;

    fn harmonic_ground() -> EigenfunctionSpec {
        let s = SexticParams::new(0.0, 1.0, 1.0, 0.0, TwoJ(0)).unwrap();
        EigenfunctionSpec::new(PotentialFamily::Sextic(s), 0.0).unwrap()
    }

    #[test]
    fn gaussian_norm() {
        let grid = IntegrationGrid::new(0.0, 12.0, 4000).unwrap();
        let n = normalize_numerically(&harmonic_ground(), &grid).unwrap();
        assert!((n - std::f64::consts::PI.sqrt() / 4.0).abs() < 1e-10);
    }

    #[test]
    fn scaling_law_for_norm() {
        let grid = IntegrationGrid::new(0.0, 12.0, 4000).unwrap();
        let base = normalize_numerically(&harmonic_ground(), &grid).unwrap();
        let scaled = harmonic_ground().scaled(Complex64::new(3.0, 0.0));
        let n = normalize_numerically(&scaled, &grid).unwrap();
        assert!((n - 9.0 * base).abs() < 1e-10);
    }

    #[test]
    fn non_decaying_rejected() {
        let grid = IntegrationGrid::new(0.0, 2.0, 100).unwrap();
        assert!(matches!(
            normalize_numerically(&harmonic_ground(), &grid),
            Err(QesError::NonNormalizable { .. })
        ));
    }

    #[test]
    fn sextic_ground_state_shape() {
        let s = SexticParams::new(0.0, 1.3, 1.0, 0.4, TwoJ(0)).unwrap();
        let spec = EigenfunctionSpec::new(PotentialFamily::Sextic(s), 0.0).unwrap();
        assert_eq!(eval_wavefunction(&spec, 0.0).unwrap(), Complex64::new(0.0, 0.0));
        for x in [0.2, 1.0, 2.5] {
            let v = eval_wavefunction(&spec, x).unwrap();
            let exact = x * (-1.3 * x * x / 2.0 - 0.4 * x.powi(4) / 4.0).exp();
            assert!((v.re - exact).abs() < 1e-14 * exact.max(1e-300) + 1e-300);
            assert!(v.re > 0.0 && v.im == 0.0);
        }
    }

    #[test]
    fn a0_is_one_and_q_zero_annihilates() {
        let p = PoschlTellerParams::new(0.5, 3.0, 0.0, 1.0, TwoJ(0)).unwrap();
        assert_eq!(rj_coefficients_pt(&p, 0.0).unwrap(), vec![Complex64::new(1.0, 0.0)]);
    }

    #[test]
    fn gamma_pole_for_negative_integer_argument() {
        let p = PoschlTellerParams::new(-1.0, 3.0, 0.2, 1.0, TwoJ(1)).unwrap();
        assert!(matches!(rj_coefficients_pt(&p, 0.3), Err(QesError::GammaPole { .. })));
        let p = PoschlTellerParams::new(-1.5, 3.0, 0.2, 1.0, TwoJ(1)).unwrap();
        assert!(matches!(rj_coefficients_pt(&p, 0.3), Err(QesError::GammaPole { .. })));
    }

    #[test]
    fn log_form_matches_direct() {
        let p = PoschlTellerParams::new(0.8, 2.5, 0.3, 1.1, TwoJ(1)).unwrap();
        let spec = EigenfunctionSpec::new(PotentialFamily::ScarfPT(p), 0.4).unwrap();
        for x in [-2.0, 0.0, 1.3] {
            let a = eval_wavefunction(&spec, x).unwrap();
            let b = eval_wavefunction_log(&spec, x).unwrap().to_complex();
            assert!((a - b).norm() <= 1e-12 * a.norm());
        }
    }

    #[test]
    fn domain_checked() {
        assert!(matches!(
            eval_wavefunction(&harmonic_ground(), -1.0),
            Err(QesError::Domain { .. })
        ));
    }
}
