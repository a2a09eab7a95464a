//! Truncated Laurent series in a small parameter ε.
//!
//! A [`Jet`] stores `ε^val · Σ_{n<J} c_n ε^n`. Leading coefficients that are
//! negligible relative to the largest coefficient are stripped after every
//! addition, so a cancellation raises the valuation instead of leaving a
//! spurious pole behind. Each such cancellation costs one coefficient of
//! trustworthy precision (the tail is padded with zero).
//!
//! Plain constants carry order 0 and adopt the order of whatever jet they
//! meet, so `Jet::from_c64` never has to know the working order.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use num_complex::{Complex, Complex64};
use num_traits::{Float, FromPrimitive, One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub const MAX_JET_ORDER: usize = 12;
pub const DEFAULT_JET_ORDER: usize = 6;

/// Relative threshold below which a leading coefficient counts as zero.
pub const JET_ZERO_TOL: f64 = 1e-9;

/// A sum coefficient smaller than this fraction of its two inputs is
/// rounding residue and is stored as an exact zero.
pub const JET_CANCEL_TOL: f64 = 1e-10;

#[derive(Clone, Copy, PartialEq)]
pub struct Jet<T> {
    val: i32,
    /// Number of significant coefficients; 0 marks an exact constant.
    order: u8,
    c: [Complex<T>; MAX_JET_ORDER],
}

pub type Jet64 = Jet<f64>;

impl<T: Float> Jet<T> {
    fn blank(val: i32, order: usize) -> Self {
        Jet {
            val,
            order: order as u8,
            c: [Complex::new(T::zero(), T::zero()); MAX_JET_ORDER],
        }
    }

    pub fn constant(z: Complex<T>) -> Self {
        let mut j = Self::blank(0, 0);
        j.c[0] = z;
        j
    }

    /// The jet of ε itself at the given order.
    pub fn variable(order: usize) -> Self {
        assert!((1..=MAX_JET_ORDER).contains(&order), "jet order out of range");
        let mut j = Self::blank(1, order);
        j.c[0] = Complex::new(T::one(), T::zero());
        j
    }

    /// `ε^val · Σ coeffs[n] ε^n`, truncated to `order` coefficients.
    pub fn from_coeffs(val: i32, coeffs: &[Complex<T>], order: usize) -> Self {
        assert!((1..=MAX_JET_ORDER).contains(&order), "jet order out of range");
        let mut j = Self::blank(val, order);
        for (dst, src) in j.c.iter_mut().zip(coeffs.iter().take(order)) {
            *dst = *src;
        }
        j.normalize();
        j
    }

    pub fn valuation(&self) -> i32 {
        self.val
    }

    /// Working order J; `None` for exact constants.
    pub fn order(&self) -> Option<usize> {
        (self.order > 0).then_some(self.order as usize)
    }

    fn width(&self) -> usize {
        self.order.max(1) as usize
    }

    pub fn coeffs(&self) -> &[Complex<T>] {
        &self.c[..self.width()]
    }

    pub fn is_exact(&self) -> bool {
        self.order == 0
    }

    fn is_zero_jet(&self) -> bool {
        self.coeffs().iter().all(|z| z.re.is_zero() && z.im.is_zero())
    }

    fn nan(order: usize) -> Self {
        let mut j = Self::blank(0, order);
        for z in j.c.iter_mut() {
            *z = Complex::new(T::nan(), T::nan());
        }
        j
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs().iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    fn normalize(&mut self) {
        let w = self.width();
        let scale = self.c[..w].iter().map(|z| z.norm()).fold(T::zero(), T::max);
        if scale.is_nan() {
            return;
        }
        if scale.is_zero() {
            self.val = 0;
            return;
        }
        let thresh = scale * T::from(JET_ZERO_TOL).unwrap();
        let lead = self.c[..w].iter().position(|z| z.norm() > thresh).unwrap_or(0);
        if lead > 0 {
            for n in 0..w {
                self.c[n] = if n + lead < w {
                    self.c[n + lead]
                } else {
                    Complex::new(T::zero(), T::zero())
                };
            }
            self.val += lead as i32;
        }
    }

    fn common_order(a: &Self, b: &Self) -> usize {
        match (a.order, b.order) {
            (0, o) | (o, 0) => o as usize,
            (x, y) => x.min(y) as usize,
        }
    }

    /// Coefficient of ε^m (absolute exponent).
    fn at(&self, m: i32) -> Complex<T> {
        let n = m - self.val;
        if n < 0 || n as usize >= self.width() {
            Complex::new(T::zero(), T::zero())
        } else {
            self.c[n as usize]
        }
    }

    fn add_impl(a: &Self, b: &Self, sign: T) -> Self {
        if a.is_exact() && b.is_exact() {
            return Self::constant(a.c[0] + b.c[0] * sign);
        }
        let order = Self::common_order(a, b);
        let val = match (a.is_zero_jet(), b.is_zero_jet()) {
            (true, false) => b.val,
            (false, true) => a.val,
            _ => a.val.min(b.val),
        };
        let cancel = T::from(JET_CANCEL_TOL).unwrap();
        let mut out = Self::blank(val, order);
        for n in 0..order {
            let m = val + n as i32;
            let (x, y) = (a.at(m), b.at(m) * sign);
            let z = x + y;
            out.c[n] = if z.norm() <= cancel * (x.norm() + y.norm()) {
                Complex::new(T::zero(), T::zero())
            } else {
                z
            };
        }
        out.normalize();
        out
    }

    fn mul_impl(a: &Self, b: &Self) -> Self {
        if a.is_exact() && b.is_exact() {
            return Self::constant(a.c[0] * b.c[0]);
        }
        let order = Self::common_order(a, b);
        let mut out = Self::blank(a.val + b.val, order);
        let (wa, wb) = (a.width().min(order), b.width().min(order));
        for i in 0..wa {
            if a.c[i].re.is_zero() && a.c[i].im.is_zero() {
                continue;
            }
            for j in 0..wb.min(order - i) {
                out.c[i + j] = out.c[i + j] + a.c[i] * b.c[j];
            }
        }
        if out.is_zero_jet() {
            out.val = 0;
        }
        out
    }

    fn div_impl(a: &Self, b: &Self) -> Self {
        if a.is_exact() && b.is_exact() {
            return Self::constant(a.c[0] / b.c[0]);
        }
        let order = Self::common_order(a, b);
        if b.is_zero_jet() {
            return Self::nan(order);
        }
        if a.is_zero_jet() {
            return Self::blank(0, order);
        }
        let mut out = Self::blank(a.val - b.val, order);
        let wb = b.width();
        let b0 = b.c[0];
        for n in 0..order {
            let mut acc = if n < a.width() {
                a.c[n]
            } else {
                Complex::new(T::zero(), T::zero())
            };
            for k in 1..=n.min(wb - 1) {
                acc = acc - b.c[k] * out.c[n - k];
            }
            out.c[n] = acc / b0;
        }
        out
    }

    /// exp of the jet; a pole in the exponent yields a NaN jet.
    pub fn exp_jet(&self) -> Self {
        if self.is_exact() {
            return Self::constant(self.c[0].exp());
        }
        let order = self.order as usize;
        if self.val < 0 {
            return Self::nan(order);
        }
        if self.is_zero_jet() {
            let mut one = Self::blank(0, order);
            one.c[0] = Complex::new(T::one(), T::zero());
            return one;
        }
        // dense coefficients g[n] of ε^n, n < order
        let mut g = [Complex::new(T::zero(), T::zero()); MAX_JET_ORDER];
        for (n, slot) in g.iter_mut().enumerate().take(order) {
            *slot = self.at(n as i32);
        }
        let mut f = Self::blank(0, order);
        f.c[0] = g[0].exp();
        for n in 1..order {
            let mut acc = Complex::new(T::zero(), T::zero());
            for k in 1..=n {
                acc = acc + g[k] * f.c[n - k] * T::from(k).unwrap();
            }
            f.c[n] = acc / T::from(n).unwrap();
        }
        f
    }
}

impl<T: Float> Add for Jet<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::add_impl(&self, &rhs, T::one())
    }
}

impl<T: Float> AddAssign for Jet<T> {
    fn add_assign(&mut self, rhs: Self) {
        *self = Self::add_impl(self, &rhs, T::one());
    }
}

impl<T: Float> Sub for Jet<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::add_impl(&self, &rhs, -T::one())
    }
}

impl<T: Float> Mul for Jet<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self::mul_impl(&self, &rhs)
    }
}

impl<T: Float> Div for Jet<T> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        Self::div_impl(&self, &rhs)
    }
}

impl<T: Float> Neg for Jet<T> {
    type Output = Self;
    fn neg(mut self) -> Self {
        for z in self.c.iter_mut() {
            *z = -*z;
        }
        self
    }
}

impl<T: Float> Zero for Jet<T> {
    fn zero() -> Self {
        Self::constant(Complex::new(T::zero(), T::zero()))
    }
    fn is_zero(&self) -> bool {
        self.is_zero_jet()
    }
}

impl<T: Float> One for Jet<T> {
    fn one() -> Self {
        Self::constant(Complex::new(T::one(), T::zero()))
    }
}

impl<T: Float + fmt::Display> fmt::Debug for Jet<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ε^{}·[", self.val)?;
        for (n, z) in self.coeffs().iter().enumerate() {
            if n > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}{:+}i", z.re, z.im)?;
        }
        write!(f, "]")
    }
}

impl<T> Scalar for Jet<T>
where
    T: Float + FromPrimitive + ToPrimitive + fmt::Display + Send + Sync + 'static,
{
    fn from_c64(z: Complex64) -> Self {
        Self::constant(Complex::new(
            T::from_f64(z.re).unwrap_or_else(T::nan),
            T::from_f64(z.im).unwrap_or_else(T::nan),
        ))
    }

    fn exp(self) -> Self {
        self.exp_jet()
    }

    fn magnitude(&self) -> f64 {
        self.coeffs()
            .iter()
            .map(|z| z.norm().to_f64().unwrap_or(f64::NAN))
            .fold(0.0, f64::max)
    }

    fn base_value(&self) -> Option<Complex64> {
        jet_limit(&self.to_f64()).ok()
    }

    fn describe(&self) -> String {
        match self.base_value() {
            Some(z) if self.is_exact() => crate::scalar::fmt_complex(z),
            Some(z) => format!("{}+ε", crate::scalar::fmt_complex(z)),
            None => "<pole>".to_string(),
        }
    }
}

impl<T: Float + ToPrimitive> Jet<T> {
    pub fn to_f64(&self) -> Jet64 {
        let mut out = Jet64 {
            val: self.val,
            order: self.order,
            c: [Complex64::new(0.0, 0.0); MAX_JET_ORDER],
        };
        for (dst, src) in out.c.iter_mut().zip(self.c.iter()) {
            *dst = Complex64::new(
                src.re.to_f64().unwrap_or(f64::NAN),
                src.im.to_f64().unwrap_or(f64::NAN),
            );
        }
        out
    }
}

/// Value of the jet at ε = 0.
pub fn jet_limit(j: &Jet64) -> Result<Complex64> {
    if !j.is_finite() {
        return Err(Error::Pole { valuation: i32::MIN });
    }
    if j.is_zero_jet() {
        return Ok(Complex64::new(0.0, 0.0));
    }
    match j.val {
        v if v < 0 => Err(Error::Pole { valuation: v }),
        0 => Ok(j.c[0]),
        _ => Ok(Complex64::new(0.0, 0.0)),
    }
}

/// n-th derivative at ε = 0, i.e. `n!` times the ε^n coefficient.
pub fn jet_derivative(j: &Jet64, n: usize) -> Result<Complex64> {
    let order = j.order().unwrap_or(MAX_JET_ORDER);
    if n >= order {
        return Err(Error::Order { n, order });
    }
    if !j.is_finite() {
        return Err(Error::Pole { valuation: i32::MIN });
    }
    if j.is_zero_jet() {
        return Ok(Complex64::new(0.0, 0.0));
    }
    if j.val < 0 {
        return Err(Error::Pole { valuation: j.val });
    }
    let fact: f64 = (1..=n).map(|k| k as f64).product();
    Ok(j.at(n as i32) * fact)
}

/// Evaluate the truncated series at a numeric ε.
pub fn jet_eval(j: &Jet64, eps: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    let mut p = Complex64::powi(&eps, j.val);
    for z in j.coeffs() {
        acc += z * p;
        p *= eps;
    }
    acc
}
