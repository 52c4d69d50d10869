//! Scalar abstractions.
//!
//! Operators are generic over a [`Scalar`] ring with conjugation. Integer
//! scalars make the 0/1 generator relations exactly checkable, rationals keep
//! Cesàro weights exact, and complex floats carry the numerical parts
//! (eigenvectors, wandering subspaces, gauge unitaries).

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex;
use num_rational::Ratio;
use num_traits::{Float, FromPrimitive, Num, One, Zero};

/// A ring with an involution, enough to assemble and compare operators.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn conj(&self) -> Self;

    /// Modulus as `f64`, used for tolerances and residual reports.
    fn magnitude(&self) -> f64;

    fn from_i64(n: i64) -> Self;
}

/// Scalars with exact or floating division.
pub trait FieldScalar: Scalar + Div<Output = Self> {
    fn ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num) / Self::from_i64(den)
    }
}

impl Scalar for i64 {
    fn conj(&self) -> Self {
        *self
    }
    fn magnitude(&self) -> f64 {
        self.unsigned_abs() as f64
    }
    fn from_i64(n: i64) -> Self {
        n
    }
}

macro_rules! float_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            fn conj(&self) -> Self {
                *self
            }
            fn magnitude(&self) -> f64 {
                self.abs() as f64
            }
            fn from_i64(n: i64) -> Self {
                n as $t
            }
        }
        impl FieldScalar for $t {}
    };
}

float_scalar!(f32);
float_scalar!(f64);

impl Scalar for Ratio<i64> {
    fn conj(&self) -> Self {
        *self
    }
    fn magnitude(&self) -> f64 {
        (*self.numer() as f64 / *self.denom() as f64).abs()
    }
    fn from_i64(n: i64) -> Self {
        Ratio::from_integer(n)
    }
}

impl FieldScalar for Ratio<i64> {}

impl<T> Scalar for Complex<T>
where
    T: Scalar + Num,
{
    fn conj(&self) -> Self {
        Complex::new(self.re.clone(), -self.im.clone())
    }
    fn magnitude(&self) -> f64 {
        self.re.magnitude().hypot(self.im.magnitude())
    }
    fn from_i64(n: i64) -> Self {
        Complex::new(T::from_i64(n), T::zero())
    }
}

impl<T> FieldScalar for Complex<T> where T: FieldScalar + Num {}

/// Real floating types usable for the numerical modules.
pub trait Real: Float + FromPrimitive + Scalar + FieldScalar + Default {
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal fits the float type")
    }
}

impl Real for f32 {}
impl Real for f64 {}
