//! The five potential families and the maps between them.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{QesError, Result};
use crate::params::{PTAnharmonicParams, PoschlTellerParams, SexticParams, TwoJ};

/// Distance from a pole (in units of the natural length) below which
/// evaluation refuses to return a number.
pub const SINGULARITY_GUARD: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyTag {
    PoschlTeller,
    #[serde(rename = "generalized-pt")]
    GeneralizedPT,
    #[serde(rename = "scarf-pt")]
    ScarfPT,
    Sextic,
    #[serde(rename = "pt-anharmonic")]
    PTAnharmonic,
}

impl FamilyTag {
    pub fn name(self) -> &'static str {
        match self {
            FamilyTag::PoschlTeller => "poschl-teller",
            FamilyTag::GeneralizedPT => "generalized-pt",
            FamilyTag::ScarfPT => "scarf-pt",
            FamilyTag::Sextic => "sextic",
            FamilyTag::PTAnharmonic => "pt-anharmonic",
        }
    }
}

impl std::str::FromStr for FamilyTag {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Ok(match s {
            "poschl-teller" | "pt" => FamilyTag::PoschlTeller,
            "generalized-pt" | "generalized" => FamilyTag::GeneralizedPT,
            "scarf-pt" | "scarf" => FamilyTag::ScarfPT,
            "sextic" => FamilyTag::Sextic,
            "pt-anharmonic" | "ptanh" => FamilyTag::PTAnharmonic,
            other => return Err(format!("unknown family '{other}'")),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Domain {
    /// x in (0, ∞), singular or Dirichlet at the origin.
    PositiveHalfLine,
    /// x in (-∞, ∞).
    RealLine,
}

impl Domain {
    pub fn describe(self) -> &'static str {
        match self {
            Domain::PositiveHalfLine => "(0, inf)",
            Domain::RealLine => "(-inf, inf)",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "family", content = "params", rename_all = "kebab-case")]
pub enum PotentialFamily {
    PoschlTeller(PoschlTellerParams),
    #[serde(rename = "generalized-pt")]
    GeneralizedPT(PoschlTellerParams),
    #[serde(rename = "scarf-pt")]
    ScarfPT(PoschlTellerParams),
    Sextic(SexticParams),
    #[serde(rename = "pt-anharmonic")]
    PTAnharmonic(PTAnharmonicParams),
}

impl PotentialFamily {
    pub fn tag(&self) -> FamilyTag {
        match self {
            PotentialFamily::PoschlTeller(_) => FamilyTag::PoschlTeller,
            PotentialFamily::GeneralizedPT(_) => FamilyTag::GeneralizedPT,
            PotentialFamily::ScarfPT(_) => FamilyTag::ScarfPT,
            PotentialFamily::Sextic(_) => FamilyTag::Sextic,
            PotentialFamily::PTAnharmonic(_) => FamilyTag::PTAnharmonic,
        }
    }

    pub fn domain(&self) -> Domain {
        match self {
            PotentialFamily::ScarfPT(_) | PotentialFamily::PTAnharmonic(_) => Domain::RealLine,
            _ => Domain::PositiveHalfLine,
        }
    }

    /// True when V(x) is real on the real domain.
    pub fn is_real(&self) -> bool {
        match self {
            PotentialFamily::ScarfPT(_) => false,
            PotentialFamily::PTAnharmonic(p) => {
                // both odd-power terms vanish
                p.qa2() == 0.0 && p.b * p.ell == 0.0
            }
            _ => true,
        }
    }

    pub fn twoj(&self) -> TwoJ {
        match self {
            PotentialFamily::PoschlTeller(p)
            | PotentialFamily::GeneralizedPT(p)
            | PotentialFamily::ScarfPT(p) => p.twoj(),
            PotentialFamily::Sextic(p) => p.twoj,
            PotentialFamily::PTAnharmonic(p) => p.twoj,
        }
    }

    /// The Pöschl–Teller record behind the three hyperbolic families.
    pub fn poschl_teller_params(&self) -> Option<&PoschlTellerParams> {
        match self {
            PotentialFamily::PoschlTeller(p)
            | PotentialFamily::GeneralizedPT(p)
            | PotentialFamily::ScarfPT(p) => Some(p),
            _ => None,
        }
    }

    /// Natural length scale, used to size grids and guard bands.
    pub fn length_scale(&self) -> f64 {
        match self {
            PotentialFamily::PoschlTeller(p) => 1.0 / p.alpha(),
            PotentialFamily::GeneralizedPT(p) | PotentialFamily::ScarfPT(p) => 2.0 / p.alpha(),
            PotentialFamily::Sextic(p) => 1.0 / p.b.abs().max(p.qa2().abs().sqrt()).max(1e-3).sqrt(),
            PotentialFamily::PTAnharmonic(p) => 1.0 / p.b.abs().max(1e-3).sqrt(),
        }
    }
}

fn check_half_line(x: f64, scale: f64) -> Result<()> {
    if (x * scale).abs() < SINGULARITY_GUARD {
        return Err(QesError::Singularity { x });
    }
    if x < 0.0 {
        return Err(QesError::Domain { x, domain: Domain::PositiveHalfLine.describe() });
    }
    Ok(())
}

/// Real-argument Pöschl–Teller potential
/// `L(L+1)α²csch²αx - A(A+1)α²sech²αx + q(2BA²sinh²αx + qA⁴sinh⁴αx)α²tanh²αx`.
fn pt_real(p: &PoschlTellerParams, x: f64) -> f64 {
    let y = p.alpha() * x;
    let (s, c) = (y.sinh(), y.cosh());
    let al2 = p.alpha() * p.alpha();
    let (l, a, q, b) = (p.l(), p.a(), p.q(), p.b());
    let s2 = s * s;
    let t2 = (s / c) * (s / c);
    l * (l + 1.0) * al2 / s2 - a * (a + 1.0) * al2 / (c * c)
        + q * (2.0 * b * a * a * s2 + q * a.powi(4) * s2 * s2) * al2 * t2
}

fn pt_complex(p: &PoschlTellerParams, z: Complex64) -> Complex64 {
    let y = z * p.alpha();
    let (s, c) = (y.sinh(), y.cosh());
    let al2 = p.alpha() * p.alpha();
    let (l, a, q, b) = (p.l(), p.a(), p.q(), p.b());
    let s2 = s * s;
    let t = s / c;
    let t2 = t * t;
    s2.inv() * (l * (l + 1.0) * al2) - (c * c).inv() * (a * (a + 1.0) * al2)
        + (s2 * (2.0 * b * a * a) + s2 * s2 * (q * a.powi(4))) * t2 * (q * al2)
}

/// Pöschl–Teller potential continued to complex argument.
pub fn analytic_continuation_pt(params: &PoschlTellerParams, z: Complex64) -> Result<Complex64> {
    if z.im == 0.0 {
        if (params.alpha() * z.re).abs() < SINGULARITY_GUARD {
            return Err(QesError::Pole { re: z.re, im: z.im });
        }
        return Ok(Complex64::new(pt_real(params, z.re), 0.0));
    }
    let y = z * params.alpha();
    if y.sinh().norm() < SINGULARITY_GUARD || y.cosh().norm() < SINGULARITY_GUARD {
        return Err(QesError::Pole { re: z.re, im: z.im });
    }
    Ok(pt_complex(params, z))
}

/// Shift that carries the Pöschl–Teller coordinate onto the Scarf line.
pub fn scarf_shift(params: &PoschlTellerParams) -> f64 {
    std::f64::consts::PI / (4.0 * params.alpha())
}

/// V(x) for any family. Real families return a zero imaginary part.
pub fn eval_potential(fam: &PotentialFamily, x: f64) -> Result<Complex64> {
    if !x.is_finite() {
        return Err(QesError::InvalidParameter(format!("x must be finite, got {x}")));
    }
    match fam {
        PotentialFamily::PoschlTeller(p) => {
            check_half_line(x, p.alpha())?;
            Ok(Complex64::new(pt_real(p, x), 0.0))
        }
        PotentialFamily::GeneralizedPT(p) => {
            check_half_line(x, p.alpha() / 2.0)?;
            Ok(Complex64::new(0.25 * pt_real(p, 0.5 * x), 0.0))
        }
        PotentialFamily::ScarfPT(p) => {
            let z = Complex64::new(0.5 * x, scarf_shift(p));
            Ok(analytic_continuation_pt(p, z)? * 0.25)
        }
        PotentialFamily::Sextic(p) => {
            let centrifugal = p.l * (p.l + 1.0);
            if centrifugal != 0.0 {
                check_half_line(x, 1.0)?;
            } else if x < 0.0 {
                return Err(QesError::Domain { x, domain: Domain::PositiveHalfLine.describe() });
            }
            let qa2 = p.qa2();
            let x2 = x * x;
            let mut v = (p.b * p.b - sextic_k(p.l, p.twoj) * qa2) * x2
                + 2.0 * p.b * qa2 * x2 * x2
                + qa2 * qa2 * x2 * x2 * x2;
            if centrifugal != 0.0 {
                v += centrifugal / x2;
            }
            Ok(Complex64::new(v, 0.0))
        }
        PotentialFamily::PTAnharmonic(p) => Ok(ptanh_potential(p, x)),
    }
}

/// 2L + 8j + 5.
pub(crate) fn sextic_k(l: f64, twoj: TwoJ) -> f64 {
    2.0 * l + 4.0 * twoj.get() as f64 + 5.0
}

fn ptanh_potential(p: &PTAnharmonicParams, x: f64) -> Complex64 {
    let qa2 = p.qa2();
    let j2 = 1.0 + p.twoj.get() as f64;
    let x2 = x * x;
    let re = (p.b * p.b - 2.0 * p.ell * qa2) * x2 - qa2 * qa2 * x2 * x2;
    let im = 2.0 * (p.b * p.ell - j2 * qa2) * x + 2.0 * qa2 * p.b * x2 * x;
    Complex64::new(re, im)
}

/// The half-coordinate image of the Pöschl–Teller potential.
pub fn transform_half_coordinate(params: &PoschlTellerParams) -> PotentialFamily {
    PotentialFamily::GeneralizedPT(*params)
}

/// The complex-shift image of the Pöschl–Teller potential (PT-symmetric Scarf).
pub fn transform_scarf(params: &PoschlTellerParams) -> PotentialFamily {
    PotentialFamily::ScarfPT(*params)
}

/// Pöschl–Teller potential seen through x → a·x + i·b. The Schrödinger
/// operator picks up a factor a², so the evaluator returns
/// `a²·V_pt(a·x + i·b)` and energies scale the same way.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShiftedPotential {
    pub params: PoschlTellerParams,
    pub a_scale: f64,
    pub b_shift: f64,
}

impl ShiftedPotential {
    pub fn eval(&self, x: f64) -> Result<Complex64> {
        let z = Complex64::new(self.a_scale * x, self.b_shift);
        Ok(analytic_continuation_pt(&self.params, z)? * (self.a_scale * self.a_scale))
    }

    pub fn energy(&self, e_pt: f64) -> f64 {
        self.a_scale * self.a_scale * e_pt
    }

    /// Largest |V(-x) - conj V(x)| over the samples.
    pub fn pt_symmetry_defect(&self, samples: &[f64]) -> Result<f64> {
        let mut worst: f64 = 0.0;
        for &x in samples {
            let d = (self.eval(-x)? - self.eval(x)?.conj()).norm();
            worst = worst.max(d);
        }
        Ok(worst)
    }
}

pub fn transform_general_shift(
    params: &PoschlTellerParams,
    a_scale: f64,
    b_shift: f64,
) -> Result<ShiftedPotential> {
    if a_scale == 0.0 || !a_scale.is_finite() || !b_shift.is_finite() {
        return Err(QesError::InvalidParameter(format!(
            "shift needs finite a ≠ 0 and finite b, got a={a_scale}, b={b_shift}"
        )));
    }
    Ok(ShiftedPotential { params: *params, a_scale, b_shift })
}

/// Closed hyperbolic form of the half-coordinate potential,
/// `α²/2[(L(L+1)+A(A+1))csch²αx + (L-A)(L+A+1)coth αx csch αx]` plus the
/// q-dependent tail at αx/2. With `quarter_tail` the tail carries the ¼ of the
/// operator rescaling and the whole expression equals ¼V_pt(x/2); without it
/// the tail is the printed one.
pub fn generalized_pt_closed_form(params: &PoschlTellerParams, x: f64, quarter_tail: bool) -> Result<f64> {
    check_half_line(x, params.alpha())?;
    let (l, a, q, b) = (params.l(), params.a(), params.q(), params.b());
    let al2 = params.alpha() * params.alpha();
    let y = params.alpha() * x;
    let csch = 1.0 / y.sinh();
    let head = 0.5 * al2 * ((l * (l + 1.0) + a * (a + 1.0)) * csch * csch
        + (l - a) * (l + a + 1.0) * y.cosh() * csch * csch);
    let h = y / 2.0;
    let s2 = h.sinh().powi(2);
    let tail = q * (2.0 * b * a * a * s2 + q * a.powi(4) * s2 * s2) * al2 * h.tanh().powi(2);
    Ok(head + if quarter_tail { 0.25 * tail } else { tail })
}

/// Closed form of the Scarf potential,
/// `-α²/2[(L(L+1)+A(A+1))sech²αx + i(L-A)(L+A+1)tanh αx sech αx]`
/// `+ α²/4(2qBA²sinh²w + q²A⁴sinh⁴w)tanh²w` with w = αx/2 + iπ/4.
pub fn scarf_closed_form(params: &PoschlTellerParams, x: f64) -> Complex64 {
    let (l, a, q, b) = (params.l(), params.a(), params.q(), params.b());
    let al2 = params.alpha() * params.alpha();
    let y = params.alpha() * x;
    let sech = 1.0 / y.cosh();
    let head = Complex64::new(
        (l * (l + 1.0) + a * (a + 1.0)) * sech * sech,
        (l - a) * (l + a + 1.0) * y.tanh() * sech,
    ) * (-0.5 * al2);
    let w = Complex64::new(y / 2.0, std::f64::consts::FRAC_PI_4);
    let s2 = w.sinh() * w.sinh();
    let t = w.tanh();
    let tail = (s2 * (2.0 * q * b * a * a) + s2 * s2 * (q * q * a.powi(4))) * t * t * (0.25 * al2);
    head + tail
}

/// Sextic record reached by B = b/α², A = a/α² at the given α.
pub fn sextic_limit_params(params: &PoschlTellerParams) -> SexticParams {
    let al2 = params.alpha() * params.alpha();
    SexticParams {
        l: params.l(),
        b: params.b() * al2,
        a: params.a() * al2,
        q: params.q(),
        twoj: params.twoj(),
    }
}

/// λ = (ε - m b)/α² solved for ε.
pub fn sextic_epsilon_from_lambda(lambda: f64, params: &PoschlTellerParams, m: usize) -> f64 {
    let al2 = params.alpha() * params.alpha();
    lambda * al2 + m as f64 * params.b() * al2
}

/// The α → 0 endpoint for a sequence holding a = Aα² fixed: the QES
/// constraint forces b = a·sqrt(1 + (2L+8j+5) q).
pub fn sextic_limit_target(a: f64, q: f64, l: f64, twoj: TwoJ) -> Result<SexticParams> {
    let k = sextic_k(l, twoj);
    let inner = 1.0 + k * q;
    if inner < 0.0 {
        return Err(QesError::NegativeRadicand { radicand: inner });
    }
    SexticParams::new(l, a * inner.sqrt(), a, q, twoj)
}

/// Pöschl–Teller record with A = a/α² and the given (L, q, j).
pub fn poschl_teller_for_sextic(a: f64, q: f64, l: f64, twoj: TwoJ, alpha: f64) -> Result<PoschlTellerParams> {
    PoschlTellerParams::new(l, a / (alpha * alpha), q, alpha, twoj)
}

/// Monomial coefficients (c2, c4, c6) of the sextic potential.
pub fn sextic_coefficients(p: &SexticParams) -> (f64, f64, f64) {
    let qa2 = p.qa2();
    (p.b * p.b - sextic_k(p.l, p.twoj) * qa2, 2.0 * p.b * qa2, qa2 * qa2)
}

/// Tolerance on the consistency relation b² - (2L+8j+5)qa² = c2.
pub const SEXTIC_FIT_TOLERANCE: f64 = 1e-6;

/// Inverts the monomial coefficients for fixed (L, j). The returned record
/// carries a = 1 and q = qa².
pub fn sextic_from_coefficients(c2: f64, c4: f64, c6: f64, l: f64, twoj: TwoJ) -> Result<SexticParams> {
    if !(c6 > 0.0) {
        return Err(QesError::InvalidParameter(format!("x^6 coefficient must be > 0, got {c6}")));
    }
    let qa2 = c6.sqrt();
    let b = c4 / (2.0 * qa2);
    let residual = b * b - sextic_k(l, twoj) * qa2 - c2;
    if residual.abs() > SEXTIC_FIT_TOLERANCE {
        return Err(QesError::InconsistentCoefficients { residual });
    }
    SexticParams::new(l, b, 1.0, qa2, twoj)
}

/// Solves the consistency relation for the centrifugal index L at fixed j.
pub fn fit_sextic_centrifugal(c2: f64, c4: f64, c6: f64, twoj: TwoJ) -> Result<SexticParams> {
    if !(c6 > 0.0) {
        return Err(QesError::InvalidParameter(format!("x^6 coefficient must be > 0, got {c6}")));
    }
    let qa2 = c6.sqrt();
    let b = c4 / (2.0 * qa2);
    let k = (b * b - c2) / qa2;
    let l = 0.5 * (k - 4.0 * twoj.get() as f64 - 5.0);
    sextic_from_coefficients(c2, c4, c6, l, twoj)
}

/// All fits with 2j ≤ `max_twoj` whose ground factor x^{1+L} is square
/// integrable at the origin (L > -1/2).
pub fn scan_sextic_fits(c2: f64, c4: f64, c6: f64, max_twoj: u32) -> Vec<SexticParams> {
    (0..=max_twoj)
        .filter_map(|t| fit_sextic_centrifugal(c2, c4, c6, TwoJ(t)).ok())
        .filter(|p| p.l > -0.5)
        .collect()
}

const SQRT17: f64 = 4.123_105_625_617_661;

/// Pöschl–Teller-side parameters whose α → 0 limit is meant to produce a
/// given PT-anharmonic oscillator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PtAnharmonicSource {
    pub alpha: f64,
    /// Substituted (A, L, q) before the q → q/A², L → quadratic replacement.
    pub a: f64,
    pub l: f64,
    pub q: f64,
    /// Parameters after the replacement, fed to the Scarf potential.
    pub l_eff: f64,
    pub q_eff: f64,
}

impl PtAnharmonicSource {
    pub fn lambda(&self, epsilon: f64, target: &PTAnharmonicParams) -> f64 {
        let al = self.alpha;
        let j = target.j();
        (epsilon + 2.0 * j * target.b) / (al * al) + 4.0 * j * target.qa2() / al.powi(3)
    }

    pub fn effective_params(&self, twoj: TwoJ) -> Result<PoschlTellerParams> {
        PoschlTellerParams::new(self.l_eff, self.a, self.q_eff, self.alpha, twoj)
    }
}

pub fn ptanh_source_params(target: &PTAnharmonicParams, alpha: f64) -> Result<PtAnharmonicSource> {
    let qa2 = target.qa2();
    if qa2 == 0.0 {
        return Err(QesError::DegenerateParameters("q·a² = 0 in the PT-anharmonic map".into()));
    }
    if !(alpha > 0.0) {
        return Err(QesError::InvalidParameter(format!("alpha must be > 0, got {alpha}")));
    }
    let b = target.b;
    let a = SQRT17 * qa2 / alpha.powi(3) + 7.0 / SQRT17 * b / (alpha * alpha);
    let l = 0.5 * (3.0 - SQRT17 + (1.0 - 7.0 / SQRT17) * alpha * b / qa2);
    let q = 4.0 * qa2 / alpha.powi(3)
        - (1.0 + 7.0 / SQRT17) / 17.0 * (2.0 * b * b + 17.0 * target.ell * qa2) / (qa2 * alpha);
    let j = target.j();
    let q_eff = q / (a * a);
    let l_eff = (q * l * l + (2.0 + 4.0 * a) * l - (20.0 - 32.0 * j)) / 8.0;
    Ok(PtAnharmonicSource { alpha, a, l, q, l_eff, q_eff })
}

/// Inverse of the substitution: reads (L, A, q, α, j) as the substituted
/// Pöschl–Teller values and recovers (b, qa², ℓ). Returns a = 1, q = qa².
pub fn ptanh_limit_params(params: &PoschlTellerParams) -> Result<PTAnharmonicParams> {
    let al = params.alpha();
    let ratio = (2.0 * params.l() - 3.0 + SQRT17) / ((1.0 - 7.0 / SQRT17) * al);
    let denom = SQRT17 / al.powi(3) + 7.0 * ratio / (SQRT17 * al * al);
    if denom == 0.0 {
        return Err(QesError::DegenerateParameters("cannot recover qa² from A".into()));
    }
    let qa2 = params.a() / denom;
    if qa2 == 0.0 {
        return Err(QesError::DegenerateParameters("recovered q·a² = 0".into()));
    }
    let b = ratio * qa2;
    let c = (1.0 + 7.0 / SQRT17) / 17.0;
    let ell = ((4.0 * qa2 / al.powi(3) - params.q()) * qa2 * al / c - 2.0 * b * b) / (17.0 * qa2);
    PTAnharmonicParams::new(b, 1.0, qa2, ell, params.twoj())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(l: f64, a: f64, q: f64, alpha: f64, twoj: u32) -> PoschlTellerParams {
        PoschlTellerParams::new(l, a, q, alpha, TwoJ(twoj)).unwrap()
    }

    #[test]
    fn sextic_harmonic_case() {
        let s = SexticParams::new(0.0, 1.0, 1.0, 0.0, TwoJ(0)).unwrap();
        let v = eval_potential(&PotentialFamily::Sextic(s), 2.0).unwrap();
        assert_eq!(v, Complex64::new(4.0, 0.0));
    }

    #[test]
    fn q_zero_pt_is_two_term() {
        let p = pt(2.0, 2.0, 0.0, 1.3, 2);
        let x = 0.8;
        let v = eval_potential(&PotentialFamily::PoschlTeller(p), x).unwrap().re;
        let y = 1.3 * x;
        let al2 = 1.3 * 1.3;
        let expected = 6.0 * al2 / y.sinh().powi(2) - 6.0 * al2 / y.cosh().powi(2);
        assert_eq!(v, expected);
    }

    #[test]
    fn singular_and_domain_errors() {
        let fam = PotentialFamily::PoschlTeller(pt(1.0, 2.0, 0.1, 1.0, 1));
        assert!(matches!(eval_potential(&fam, 0.0), Err(QesError::Singularity { .. })));
        assert!(matches!(eval_potential(&fam, -1.0), Err(QesError::Domain { .. })));
        let gen = PotentialFamily::GeneralizedPT(pt(1.0, 2.0, 0.1, 1.0, 1));
        assert!(matches!(eval_potential(&gen, 1e-10), Err(QesError::Singularity { .. })));
        // Scarf and the complex quartic live on the whole line
        let scarf = PotentialFamily::ScarfPT(pt(1.0, 2.0, 0.1, 1.0, 1));
        assert!(eval_potential(&scarf, 0.0).is_ok());
    }

    #[test]
    fn continuation_on_real_axis_is_exact() {
        let p = pt(0.7, 3.0, 0.4, 0.9, 2);
        for x in [0.1, 0.5, 1.7, 3.0] {
            let a = analytic_continuation_pt(&p, Complex64::new(x, 0.0)).unwrap();
            let b = eval_potential(&PotentialFamily::PoschlTeller(p), x).unwrap();
            assert_eq!(a, b);
        }
        assert!(matches!(
            analytic_continuation_pt(&p, Complex64::new(0.0, std::f64::consts::PI / 0.9)),
            Err(QesError::Pole { .. })
        ));
    }

    #[test]
    fn half_coordinate_laurent_ratio() {
        // near the origin ¼V_pt(x/2) ~ ¼·L(L+1)α²·4/(α²x²) = L(L+1)/x², the same
        // leading term as V_pt(x) itself: the csch² coefficient ratio is 4 before
        // the ¼ operator rescaling.
        let p = pt(1.5, 2.0, 0.3, 1.0, 1);
        let x = 1e-4;
        let gen = eval_potential(&transform_half_coordinate(&p), x).unwrap().re;
        let orig = eval_potential(&PotentialFamily::PoschlTeller(p), x).unwrap().re;
        assert!((4.0 * gen / orig - 4.0).abs() < 1e-6);
        let unscaled = pt_real(&p, x / 2.0);
        assert!((unscaled / orig - 4.0).abs() < 1e-6);
    }

    #[test]
    fn general_shift_identity_and_scarf() {
        let p = pt(0.6, 2.5, 0.2, 1.1, 2);
        let id = transform_general_shift(&p, 1.0, 0.0).unwrap();
        let scarf = transform_general_shift(&p, 0.5, scarf_shift(&p)).unwrap();
        let gen = transform_general_shift(&p, 0.5, 0.0).unwrap();
        for x in [0.3, 1.0, 2.2] {
            let v = eval_potential(&PotentialFamily::PoschlTeller(p), x).unwrap();
            assert_eq!(id.eval(x).unwrap(), v);
            let s = eval_potential(&transform_scarf(&p), x).unwrap();
            assert!((scarf.eval(x).unwrap() - s).norm() <= 1e-12 * (1.0 + s.norm()));
            let g = eval_potential(&transform_half_coordinate(&p), x).unwrap();
            assert!((gen.eval(x).unwrap() - g).norm() <= 1e-12 * (1.0 + g.norm()));
        }
        assert!(transform_general_shift(&p, 0.0, 1.0).is_err());
    }

    #[test]
    fn closed_forms_match_transforms() {
        let p = pt(0.6, 2.5, 0.2, 1.1, 2);
        for x in [0.3, 1.0, 2.2] {
            let g = eval_potential(&transform_half_coordinate(&p), x).unwrap().re;
            let c = generalized_pt_closed_form(&p, x, true).unwrap();
            assert!((g - c).abs() <= 1e-12 * (1.0 + g.abs()));
            let s = eval_potential(&transform_scarf(&p), x).unwrap();
            assert!((s - scarf_closed_form(&p, x)).norm() <= 1e-12 * (1.0 + s.norm()));
        }
        // the printed tail differs once q ≠ 0
        let printed = generalized_pt_closed_form(&p, 1.0, false).unwrap();
        assert!((printed - generalized_pt_closed_form(&p, 1.0, true).unwrap()).abs() > 1e-3);
    }

    #[test]
    fn ptanh_potential_terms() {
        let p = PTAnharmonicParams::new(1.0, 1.0, 0.0, 0.0, TwoJ(0)).unwrap();
        let v = eval_potential(&PotentialFamily::PTAnharmonic(p), 1.5).unwrap();
        assert_eq!(v, Complex64::new(2.25, 0.0));
        assert!(PotentialFamily::PTAnharmonic(p).is_real());
    }

    #[test]
    fn sextic_fit_rejects_bad_input() {
        assert!(matches!(
            sextic_from_coefficients(1.0, 0.0, 0.0, 0.0, TwoJ(0)),
            Err(QesError::InvalidParameter(_))
        ));
        assert!(matches!(
            sextic_from_coefficients(5.0, 1.0, 1.0, 0.0, TwoJ(0)),
            Err(QesError::InconsistentCoefficients { .. })
        ));
    }

    #[test]
    fn ptanh_map_round_trips() {
        let target = PTAnharmonicParams::new(0.8, 1.0, 0.6, 0.3, TwoJ(1)).unwrap();
        let alpha = 0.3;
        let src = ptanh_source_params(&target, alpha).unwrap();
        let p = PoschlTellerParams::new(src.l, src.a, src.q, alpha, TwoJ(1)).unwrap();
        let back = ptanh_limit_params(&p).unwrap();
        assert!((back.b - target.b).abs() < 1e-9);
        assert!((back.qa2() - target.qa2()).abs() < 1e-9);
        assert!((back.ell - target.ell).abs() < 1e-8);
    }
}
