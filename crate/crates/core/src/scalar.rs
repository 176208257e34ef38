//! Scalar abstraction so the recurrences, root polishing and Sturm bisection
//! can run either in `f64` or in software extended precision.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;
use serde::{Deserialize, Serialize};

/// Working precision selectable per call.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Precision {
    #[default]
    Double,
    Extended,
}

impl std::str::FromStr for Precision {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "double" => Ok(Precision::Double),
            "extended" => Ok(Precision::Extended),
            other => Err(format!("unknown precision '{other}' (expected double|extended)")),
        }
    }
}

pub trait Real:
    Clone
    + Debug
    + PartialOrd
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_f64(x: f64) -> Self;
    fn from_i64(n: i64) -> Self;
    fn to_f64(&self) -> f64;
    fn sqrt(&self) -> Self;
    fn abs(&self) -> Self;
    /// Unit roundoff of the representation.
    fn epsilon() -> Self;

    fn zero() -> Self {
        Self::from_i64(0)
    }
    fn one() -> Self {
        Self::from_i64(1)
    }
    fn is_zero(&self) -> bool {
        *self == Self::zero()
    }
}

impl Real for f64 {
    fn from_f64(x: f64) -> Self {
        x
    }
    fn from_i64(n: i64) -> Self {
        n as f64
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn sqrt(&self) -> Self {
        f64::sqrt(*self)
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn epsilon() -> Self {
        f64::EPSILON
    }
}

/// Binary digits carried by [`Extended`] (about 57 decimal digits).
pub const EXTENDED_BITS: usize = 192;

type Big = FBig<HalfEven, 2>;

/// Software floating point with [`EXTENDED_BITS`] bits of mantissa.
#[derive(Clone, Debug, PartialEq, PartialOrd)]
pub struct Extended(Big);

impl Extended {
    fn wrap(x: Big) -> Self {
        Extended(x.with_precision(EXTENDED_BITS).value())
    }
}

macro_rules! extended_binop {
    ($tr:ident, $method:ident, $op:tt) => {
        impl $tr for Extended {
            type Output = Extended;
            fn $method(self, rhs: Extended) -> Extended {
                Extended::wrap(self.0 $op rhs.0)
            }
        }
    };
}

extended_binop!(Add, add, +);
extended_binop!(Sub, sub, -);
extended_binop!(Mul, mul, *);
extended_binop!(Div, div, /);

impl Neg for Extended {
    type Output = Extended;
    fn neg(self) -> Extended {
        Extended(-self.0)
    }
}

impl Real for Extended {
    fn from_f64(x: f64) -> Self {
        assert!(x.is_finite(), "non-finite value {x} cannot enter extended precision");
        Extended::wrap(Big::try_from(x).expect("finite f64 converts exactly"))
    }
    fn from_i64(n: i64) -> Self {
        Extended::wrap(Big::from(n))
    }
    fn to_f64(&self) -> f64 {
        self.0.to_f64().value()
    }
    fn sqrt(&self) -> Self {
        Extended::wrap(self.0.sqrt())
    }
    fn abs(&self) -> Self {
        if self.0 < Big::ZERO {
            -self.clone()
        } else {
            self.clone()
        }
    }
    fn epsilon() -> Self {
        Extended::wrap(Big::from_parts(1.into(), -(EXTENDED_BITS as isize)))
    }
}
