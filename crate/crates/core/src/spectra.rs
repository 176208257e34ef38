//! Algebraic spectra: roots of the critical polynomial P_{2j+1}, the
//! equivalent tridiagonal eigenproblem, and the maps from spectral
//! parameter to energy.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{QesError, Result};
use crate::params::PoschlTellerParams;
use crate::params::{PTAnharmonicParams, SexticParams};
use crate::polynomials::{horner, ptanh_recurrence, pt_recurrence, sextic_recurrence, Recurrence};
use crate::potentials::{FamilyTag, PotentialFamily};
use crate::roots::{companion_roots, newton_polish};
use crate::scalar::{Extended, Precision, Real};
use crate::tridiag::lowest_eigenvalues;

/// A companion root counts as real when |Im z| ≤ this times (1 + |z|).
pub const REAL_ROOT_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpectralMethod {
    PolynomialRoots,
    Tridiagonal,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralSolution {
    pub family: FamilyTag,
    pub method: SpectralMethod,
    pub precision: Precision,
    /// Real spectral parameters (λ for the hyperbolic families, ε otherwise),
    /// ascending.
    pub lambda_roots: Vec<f64>,
    /// Energies matching `lambda_roots` one to one.
    pub energies: Vec<f64>,
    /// |P_{2j+1}| at each real root, evaluated in the working precision.
    pub residuals: Vec<f64>,
    /// Roots with a significant imaginary part, kept apart.
    pub complex_roots: Vec<Complex64>,
    pub complex_energies: Vec<Complex64>,
}

/// E = [-(L-A+2m+1)² + (L-A+B+4j+2)(2L+4m+3) + 4λ]α².
pub fn energy_poschl_teller(lambda: f64, params: &PoschlTellerParams, m: usize) -> f64 {
    let (l, a, b) = (params.l(), params.a(), params.b());
    let j4 = 2.0 * params.twoj().get() as f64;
    let mm = m as f64;
    let shift = l - a + 2.0 * mm + 1.0;
    let al2 = params.alpha() * params.alpha();
    (-shift * shift + (l - a + b + j4 + 2.0) * (2.0 * l + 4.0 * mm + 3.0) + 4.0 * lambda) * al2
}

/// Energy of the half-coordinate and Scarf images. Both operators are a
/// quarter of the Pöschl–Teller one, so E' = E/4.
pub fn energy_generalized(e_pt: f64) -> f64 {
    0.25 * e_pt
}

/// E = 4ε + (2L+3)b for the sextic oscillator.
pub fn energy_sextic(epsilon: f64, params: &SexticParams) -> f64 {
    4.0 * epsilon + (2.0 * params.l + 3.0) * params.b
}

/// E = ε + b(1+2j) + ℓ² for the PT-anharmonic oscillator.
pub fn energy_pt_anharmonic(epsilon: f64, params: &PTAnharmonicParams) -> f64 {
    epsilon + params.b * (1.0 + params.twoj.get() as f64) + params.ell * params.ell
}

/// Energy for a spectral parameter of the given family; complex input maps
/// linearly since every energy map is affine with real slope.
pub fn family_energy(fam: &PotentialFamily, root: Complex64) -> Complex64 {
    let (offset, slope) = match fam {
        PotentialFamily::PoschlTeller(p) => {
            let e0 = energy_poschl_teller(0.0, p, 0);
            (e0, 4.0 * p.alpha() * p.alpha())
        }
        PotentialFamily::GeneralizedPT(p) | PotentialFamily::ScarfPT(p) => {
            let e0 = energy_generalized(energy_poschl_teller(0.0, p, 0));
            (e0, p.alpha() * p.alpha())
        }
        PotentialFamily::Sextic(p) => (energy_sextic(0.0, p), 4.0),
        PotentialFamily::PTAnharmonic(p) => (energy_pt_anharmonic(0.0, p), 1.0),
    };
    Complex64::new(offset + slope * root.re, slope * root.im)
}

/// Closed-form levels of the q = 0 Pöschl–Teller potential: λ_n = -n(L-A+n+1),
/// E_n = -α²(L-A+2n+1)², for every n with L-A+2n+1 < 0.
pub fn exactly_solvable_levels(params: &PoschlTellerParams) -> Result<Vec<(f64, f64)>> {
    if params.q() != 0.0 {
        return Err(QesError::InvalidParameter(format!(
            "closed-form levels need q = 0, got {}",
            params.q()
        )));
    }
    let (l, a) = (params.l(), params.a());
    let al2 = params.alpha() * params.alpha();
    let mut out = Vec::new();
    let mut n = 0usize;
    loop {
        let nn = n as f64;
        let kappa = l - a + 2.0 * nn + 1.0;
        if kappa >= 0.0 {
            break;
        }
        out.push((-nn * (l - a + nn + 1.0), -al2 * kappa * kappa));
        n += 1;
    }
    Ok(out)
}

fn recurrence_for<T: Real>(fam: &PotentialFamily) -> Recurrence<T> {
    match fam {
        PotentialFamily::PoschlTeller(p)
        | PotentialFamily::GeneralizedPT(p)
        | PotentialFamily::ScarfPT(p) => pt_recurrence(p),
        PotentialFamily::Sextic(p) => sextic_recurrence(p),
        PotentialFamily::PTAnharmonic(p) => ptanh_recurrence(p),
    }
}

fn qa2_of(fam: &PotentialFamily) -> f64 {
    match fam {
        PotentialFamily::PoschlTeller(p)
        | PotentialFamily::GeneralizedPT(p)
        | PotentialFamily::ScarfPT(p) => p.qa2(),
        PotentialFamily::Sextic(p) => p.qa2(),
        PotentialFamily::PTAnharmonic(p) => p.qa2(),
    }
}

fn check_nondegenerate(fam: &PotentialFamily) -> Result<()> {
    if fam.twoj().get() > 0 && qa2_of(fam) == 0.0 {
        return Err(QesError::DegenerateParameters(
            "q·a² = 0 with j > 0: the exactly solvable limit has no critical polynomial".into(),
        ));
    }
    Ok(())
}

/// Ascending coefficients of the monic critical polynomial P_{2j+1}.
pub fn critical_polynomial<T: Real>(fam: &PotentialFamily) -> Result<Vec<T>> {
    check_nondegenerate(fam)?;
    let levels = fam.twoj().levels();
    let mut polys = recurrence_for::<T>(fam).polynomials(levels);
    Ok(polys.pop().expect("at least P_0"))
}

/// |P_{2j+1}(x)| through the three-term evaluation, in the working precision.
fn critical_residual<T: Real>(fam: &PotentialFamily, x: f64) -> f64 {
    recurrence_for::<T>(fam)
        .values(T::from_f64(x))
        .last()
        .expect("non-empty")
        .abs()
        .to_f64()
}

fn assemble(
    fam: &PotentialFamily,
    method: SpectralMethod,
    precision: Precision,
    mut real: Vec<(f64, f64)>,
    complex: Vec<Complex64>,
) -> SpectralSolution {
    real.sort_by(|a, b| a.0.total_cmp(&b.0));
    let lambda_roots: Vec<f64> = real.iter().map(|r| r.0).collect();
    let residuals = real.iter().map(|r| r.1).collect();
    let energies = lambda_roots
        .iter()
        .map(|&x| family_energy(fam, Complex64::new(x, 0.0)).re)
        .collect();
    let complex_energies = complex.iter().map(|&z| family_energy(fam, z)).collect();
    SpectralSolution {
        family: fam.tag(),
        method,
        precision,
        lambda_roots,
        energies,
        residuals,
        complex_roots: complex,
        complex_energies,
    }
}

fn is_real_root(z: Complex64) -> bool {
    z.im.abs() <= REAL_ROOT_TOLERANCE * (1.0 + z.norm())
}

/// Real roots paired with their residuals, plus the quarantined complex roots.
type PolishedRoots = (Vec<(f64, f64)>, Vec<Complex64>);

fn polished_roots<T: Real>(fam: &PotentialFamily) -> Result<PolishedRoots> {
    let coeffs = critical_polynomial::<T>(fam)?;
    let as_f64: Vec<f64> = coeffs.iter().map(Real::to_f64).collect();
    if as_f64.iter().any(|c| !c.is_finite()) {
        return Err(QesError::Numerical("critical polynomial overflowed".into()));
    }
    let mut real = Vec::new();
    let mut complex = Vec::new();
    for z in companion_roots(&as_f64) {
        if is_real_root(z) {
            let x = newton_polish(&coeffs, T::from_f64(z.re), 100);
            let residual = horner(&coeffs, x.clone()).abs().to_f64();
            real.push((x.to_f64(), residual));
        } else {
            complex.push(z);
        }
    }
    complex.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    Ok((real, complex))
}

/// Spectral parameters as roots of the critical polynomial. Roots are found
/// from the companion matrix in double precision and polished by Newton in
/// the requested precision.
pub fn lambda_spectrum_roots(fam: &PotentialFamily, precision: Precision) -> Result<SpectralSolution> {
    let (real, complex) = match precision {
        Precision::Double => polished_roots::<f64>(fam)?,
        Precision::Extended => polished_roots::<Extended>(fam)?,
    };
    Ok(assemble(fam, SpectralMethod::PolynomialRoots, precision, real, complex))
}

/// Diagonal and off-diagonal products of the tridiagonal matrix whose
/// eigenvalues are 4λ: diagonal β_m, sub-diagonal γ_{m+1}, super-diagonal μ_{2j-m}.
fn tridiagonal_entries<T: Real>(p: &PoschlTellerParams) -> (Vec<T>, Vec<T>) {
    let twoj = p.twoj().get() as i64;
    let b = p.b_in::<T>();
    let qa2 = T::from_f64(p.q()) * T::from_f64(p.a()) * T::from_f64(p.a());
    let l2 = T::from_f64(2.0 * p.l());
    let d = (0..=twoj)
        .map(|m| T::from_i64(4 * m) * (b.clone() + T::from_i64(2 * twoj - m + 1)))
        .collect();
    let products = (0..twoj)
        .map(|m| {
            let gamma = T::from_i64(2 * (m + 1)) * (l2.clone() + T::from_i64(2 * m + 3));
            let mu = T::from_i64(4 * (twoj - m)) * qa2.clone();
            gamma * mu
        })
        .collect();
    (d, products)
}

fn sturm_route<T: Real>(fam: &PotentialFamily, p: &PoschlTellerParams) -> Option<Vec<(f64, f64)>> {
    let (d, products) = tridiagonal_entries::<T>(p);
    if products.iter().any(|x| *x <= T::zero()) {
        return None;
    }
    let four = T::from_i64(4);
    let eig = lowest_eigenvalues(&d, &products, d.len());
    Some(
        eig.into_iter()
            .map(|e| {
                let lambda = (e / four.clone()).to_f64();
                (lambda, critical_residual::<T>(fam, lambda))
            })
            .collect(),
    )
}

/// Dense nonsymmetric fallback when some off-diagonal product is not positive.
fn dense_route(fam: &PotentialFamily, p: &PoschlTellerParams) -> (Vec<(f64, f64)>, Vec<Complex64>) {
    let n = p.twoj().levels();
    let twoj = p.twoj().get() as f64;
    let mut m = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        let mf = i as f64;
        m[(i, i)] = 4.0 * mf * (p.b() + 2.0 * twoj - mf + 1.0);
        if i + 1 < n {
            m[(i + 1, i)] = 2.0 * (mf + 1.0) * (2.0 * p.l() + 2.0 * mf + 3.0);
            m[(i, i + 1)] = 4.0 * (twoj - mf) * p.qa2();
        }
    }
    let mut real = Vec::new();
    let mut complex = Vec::new();
    for z in m.complex_eigenvalues().iter() {
        let z = z / 4.0;
        if is_real_root(z) {
            real.push((z.re, critical_residual::<f64>(fam, z.re)));
        } else {
            complex.push(z);
        }
    }
    (real, complex)
}

/// Spectral parameters λ as a quarter of the eigenvalues of the tridiagonal
/// matrix. Only the three hyperbolic families have this form.
pub fn lambda_spectrum_tridiagonal(fam: &PotentialFamily, precision: Precision) -> Result<SpectralSolution> {
    let p = fam.poschl_teller_params().ok_or_else(|| {
        QesError::InvalidParameter(format!(
            "tridiagonal route is defined for the Pöschl–Teller families, not {}",
            fam.tag().name()
        ))
    })?;
    check_nondegenerate(fam)?;
    let symmetric = match precision {
        Precision::Double => sturm_route::<f64>(fam, p),
        Precision::Extended => sturm_route::<Extended>(fam, p),
    };
    let (real, complex) = match symmetric {
        Some(real) => (real, Vec::new()),
        None => dense_route(fam, p),
    };
    Ok(assemble(fam, SpectralMethod::Tridiagonal, precision, real, complex))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::TwoJ;

    fn pt(l: f64, a: f64, q: f64, alpha: f64, twoj: u32) -> PoschlTellerParams {
        PoschlTellerParams::new(l, a, q, alpha, TwoJ(twoj)).unwrap()
    }

    #[test]
    fn j_zero_single_root_is_zero() {
        let fam = PotentialFamily::PoschlTeller(pt(1.0, 3.0, 0.2, 1.0, 0));
        let s = lambda_spectrum_roots(&fam, Precision::Double).unwrap();
        assert_eq!(s.lambda_roots, vec![0.0]);
    }

    #[test]
    fn j_half_quadratic_roots() {
        // P_2 = λ² - (B+2)λ - Q(L+3/2)
        let p = pt(0.5, 2.0, 0.3, 1.0, 1);
        let (b, q) = (p.b(), p.qa2());
        let disc = ((b + 2.0).powi(2) + 4.0 * q * 2.0).sqrt();
        let exact = [0.5 * (b + 2.0 - disc), 0.5 * (b + 2.0 + disc)];
        let fam = PotentialFamily::PoschlTeller(p);
        let s = lambda_spectrum_roots(&fam, Precision::Double).unwrap();
        for (r, e) in s.lambda_roots.iter().zip(exact) {
            assert!((r - e).abs() < 1e-12);
        }
    }

    #[test]
    fn routes_agree() {
        let fam = PotentialFamily::PoschlTeller(pt(1.2, 3.5, 0.7, 0.8, 4));
        let a = lambda_spectrum_roots(&fam, Precision::Double).unwrap();
        let b = lambda_spectrum_tridiagonal(&fam, Precision::Double).unwrap();
        assert_eq!(a.lambda_roots.len(), 5);
        for (x, y) in a.lambda_roots.iter().zip(&b.lambda_roots) {
            assert!((x - y).abs() < 1e-8 * (1.0 + x.abs()), "{x} vs {y}");
        }
    }

    #[test]
    fn extended_residuals_are_tiny() {
        let fam = PotentialFamily::PoschlTeller(pt(0.3, 2.0, 0.5, 1.0, 6));
        let s = lambda_spectrum_roots(&fam, Precision::Extended).unwrap();
        assert_eq!(s.lambda_roots.len(), 7);
        let scale = s.lambda_roots.iter().fold(1.0f64, |m, x| m.max(x.abs()));
        for r in &s.residuals {
            assert!(*r <= 1e-30 * scale.powi(7), "{r}");
        }
    }

    #[test]
    fn degenerate_q_zero() {
        let fam = PotentialFamily::PoschlTeller(pt(1.0, 8.0, 0.0, 1.0, 2));
        assert!(matches!(
            lambda_spectrum_roots(&fam, Precision::Double),
            Err(QesError::DegenerateParameters(_))
        ));
    }

    #[test]
    fn closed_form_levels() {
        let p = pt(1.0, 8.0, 0.0, 1.0, 0);
        let levels = exactly_solvable_levels(&p).unwrap();
        // L-A+2n+1 = -6, -4, -2
        let e: Vec<f64> = levels.iter().map(|x| x.1).collect();
        assert_eq!(e, vec![-36.0, -16.0, -4.0]);
        for (lambda, energy) in levels {
            assert!((energy_poschl_teller(lambda, &p, 0) - energy).abs() < 1e-12);
        }
    }

    #[test]
    fn sextic_harmonic_energy() {
        let s = SexticParams::new(0.0, 1.0, 1.0, 0.0, TwoJ(0)).unwrap();
        let sol = lambda_spectrum_roots(&PotentialFamily::Sextic(s), Precision::Double).unwrap();
        assert_eq!(sol.energies, vec![3.0]);
    }

    #[test]
    fn tridiagonal_rejects_other_families() {
        let s = SexticParams::new(0.0, 1.0, 1.0, 0.1, TwoJ(1)).unwrap();
        assert!(lambda_spectrum_tridiagonal(&PotentialFamily::Sextic(s), Precision::Double).is_err());
    }
}
