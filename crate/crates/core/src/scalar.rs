//! The scalar abstraction shared by every matrix in the crate.
//!
//! Module actions, braidings and tangle evaluations are written once over
//! [`Scalar`] and run either on plain complex numbers (`Complex<f32>`,
//! `Complex<f64>`) or on ε-jets ([`crate::Jet`]), which is how limits and
//! derivatives in a deformation parameter are computed.

use std::fmt::Debug;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use num_complex::{Complex, Complex64};
use num_traits::{Float, FromPrimitive, NumAssign, One, ToPrimitive, Zero};

pub trait Scalar:
    Copy
    + Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + AddAssign
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_c64(z: Complex64) -> Self;

    fn from_f64(x: f64) -> Self {
        Self::from_c64(Complex64::new(x, 0.0))
    }

    fn exp(self) -> Self;

    /// Size used for residual checks. For jets this is the largest
    /// coefficient modulus.
    fn magnitude(&self) -> f64;

    /// Value at the base point: the number itself, or the ε⁰ coefficient of
    /// a jet. `None` when a jet has a pole.
    fn base_value(&self) -> Option<Complex64>;

    /// Short human-readable form used in labels.
    fn describe(&self) -> String {
        match self.base_value() {
            Some(z) => fmt_complex(z),
            None => "<pole>".to_string(),
        }
    }

    fn scale_f64(self, x: f64) -> Self {
        self * Self::from_f64(x)
    }

    fn powi(self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc * self;
        }
        acc
    }
}

impl<T> Scalar for Complex<T>
where
    T: Float + NumAssign + FromPrimitive + ToPrimitive + Debug + Send + Sync + 'static,
{
    fn from_c64(z: Complex64) -> Self {
        Complex::new(
            T::from_f64(z.re).unwrap_or_else(T::nan),
            T::from_f64(z.im).unwrap_or_else(T::nan),
        )
    }

    fn exp(self) -> Self {
        Complex::exp(self)
    }

    fn magnitude(&self) -> f64 {
        self.norm().to_f64().unwrap_or(f64::NAN)
    }

    fn base_value(&self) -> Option<Complex64> {
        Some(Complex64::new(self.re.to_f64()?, self.im.to_f64()?))
    }
}

/// `re`, or `re+imi` / `re-imi` when the imaginary part is nonzero.
pub fn fmt_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else if z.im < 0.0 {
        format!("{}{}i", z.re, z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}

/// `i` as a scalar.
pub fn imag_unit<S: Scalar>() -> S {
    S::from_c64(Complex64::i())
}
