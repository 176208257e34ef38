//! Parameter records shared by the polynomial, spectral and potential modules.

use serde::{Deserialize, Serialize};

use crate::error::{QesError, Result};
use crate::scalar::Real;

/// Twice the QES index j. Storing 2j keeps half-integers exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TwoJ(pub u32);

impl TwoJ {
    pub fn j(self) -> f64 {
        self.0 as f64 / 2.0
    }

    /// Number of algebraic levels, 2j+1.
    pub fn levels(self) -> usize {
        self.0 as usize + 1
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

fn require_finite(name: &str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(QesError::InvalidParameter(format!("{name} must be finite, got {v}")))
    }
}

/// Parameters of the QES Pöschl–Teller family and the two families obtained
/// from it by a coordinate change. `B` is derived and cannot be set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PoschlTellerParams {
    #[serde(rename = "L")]
    l: f64,
    #[serde(rename = "A")]
    a: f64,
    q: f64,
    alpha: f64,
    twoj: TwoJ,
    #[serde(rename = "B")]
    b: f64,
}

impl PoschlTellerParams {
    pub fn new(l: f64, a: f64, q: f64, alpha: f64, twoj: TwoJ) -> Result<Self> {
        for (name, v) in [("L", l), ("A", a), ("q", q), ("alpha", alpha)] {
            require_finite(name, v)?;
        }
        if alpha <= 0.0 {
            return Err(QesError::InvalidParameter(format!("alpha must be > 0, got {alpha}")));
        }
        let radicand = Self::radicand_of(l, a, q, twoj);
        if radicand < 0.0 {
            return Err(QesError::NegativeRadicand { radicand });
        }
        let k = 2.0 * l + 4.0 * twoj.get() as f64 + 5.0;
        let b = -0.5 * (k - radicand.sqrt());
        Ok(Self { l, a, q, alpha, twoj, b })
    }

    fn radicand_of(l: f64, a: f64, q: f64, twoj: TwoJ) -> f64 {
        let k = 2.0 * l + 4.0 * twoj.get() as f64 + 5.0;
        1.0 + 4.0 * a * (a + 1.0 + k * q * a)
    }

    pub fn l(&self) -> f64 {
        self.l
    }
    pub fn a(&self) -> f64 {
        self.a
    }
    pub fn q(&self) -> f64 {
        self.q
    }
    pub fn alpha(&self) -> f64 {
        self.alpha
    }
    pub fn twoj(&self) -> TwoJ {
        self.twoj
    }
    pub fn j(&self) -> f64 {
        self.twoj.j()
    }
    /// The QES constraint value of B.
    pub fn b(&self) -> f64 {
        self.b
    }
    /// The product qA² that drives the deformation.
    pub fn qa2(&self) -> f64 {
        self.q * self.a * self.a
    }

    /// B recomputed in the requested scalar type.
    pub fn b_in<T: Real>(&self) -> T {
        let k = T::from_f64(2.0 * self.l) + T::from_i64(4 * self.twoj.get() as i64 + 5);
        let a = T::from_f64(self.a);
        let inner = a.clone() + T::one() + k.clone() * T::from_f64(self.q) * a.clone();
        let radicand = T::one() + T::from_i64(4) * a * inner;
        -(k - radicand.sqrt()) / T::from_i64(2)
    }

    pub fn with_alpha(&self, alpha: f64) -> Result<Self> {
        Self::new(self.l, self.a, self.q, alpha, self.twoj)
    }
}

/// Parameters of the radial sextic oscillator. Only the product `q·a²`
/// enters the potential, the recurrence and the eigenfunctions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SexticParams {
    #[serde(rename = "L")]
    pub l: f64,
    pub b: f64,
    pub a: f64,
    pub q: f64,
    pub twoj: TwoJ,
}

impl SexticParams {
    pub fn new(l: f64, b: f64, a: f64, q: f64, twoj: TwoJ) -> Result<Self> {
        for (name, v) in [("L", l), ("b", b), ("a", a), ("q", q)] {
            require_finite(name, v)?;
        }
        Ok(Self { l, b, a, q, twoj })
    }

    pub fn qa2(&self) -> f64 {
        self.q * self.a * self.a
    }

    pub fn j(&self) -> f64 {
        self.twoj.j()
    }
}

/// Parameters of the PT-symmetric anharmonic (complex quartic) oscillator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PTAnharmonicParams {
    pub b: f64,
    pub a: f64,
    pub q: f64,
    pub ell: f64,
    pub twoj: TwoJ,
}

impl PTAnharmonicParams {
    pub fn new(b: f64, a: f64, q: f64, ell: f64, twoj: TwoJ) -> Result<Self> {
        for (name, v) in [("b", b), ("a", a), ("q", q), ("ell", ell)] {
            require_finite(name, v)?;
        }
        Ok(Self { b, a, q, ell, twoj })
    }

    pub fn qa2(&self) -> f64 {
        self.q * self.a * self.a
    }

    pub fn j(&self) -> f64 {
        self.twoj.j()
    }
}
