//! Root-of-unity arithmetic: `q = exp(iπ/r)`, quantum brackets, integers and
//! factorials, all generic over [`Scalar`] so they accept jets.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::jet::{Jet64, DEFAULT_JET_ORDER, MAX_JET_ORDER};
use crate::scalar::Scalar;

pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QContext {
    pub r: u32,
    pub q: Complex64,
    pub tol: f64,
    pub jet_order: usize,
}

impl QContext {
    pub fn new(r: u32) -> Result<Self> {
        Self::with_options(r, DEFAULT_TOL, DEFAULT_JET_ORDER)
    }

    pub fn with_options(r: u32, tol: f64, jet_order: usize) -> Result<Self> {
        if r < 2 {
            return Err(Error::Range(format!("r = {r} must be at least 2")));
        }
        if !(tol > 0.0) {
            return Err(Error::Range(format!("tol = {tol} must be positive")));
        }
        if !(3..=MAX_JET_ORDER).contains(&jet_order) {
            return Err(Error::Range(format!(
                "jet order {jet_order} must lie in 3..={MAX_JET_ORDER}"
            )));
        }
        Ok(QContext {
            r,
            q: Complex64::from_polar(1.0, PI / r as f64),
            tol,
            jet_order,
        })
    }

    pub fn rf(&self) -> f64 {
        self.r as f64
    }

    pub fn ri(&self) -> i64 {
        self.r as i64
    }

    /// The deformation parameter ε as a jet of the working order.
    pub fn eps(&self) -> Jet64 {
        Jet64::variable(self.jet_order)
    }
}

/// `q^x = exp(iπx/r)`.
pub fn qpow<S: Scalar>(ctx: &QContext, x: S) -> S {
    (x * S::from_c64(Complex64::new(0.0, PI / ctx.rf()))).exp()
}

/// `{x} = q^x − q^{−x} = 2i·sin(πx/r)`.
pub fn qbracket<S: Scalar>(ctx: &QContext, x: S) -> S {
    qpow(ctx, x) - qpow(ctx, -x)
}

/// `[x] = {x}/{1}`.
pub fn qint<S: Scalar>(ctx: &QContext, x: S) -> S {
    qbracket(ctx, x) / S::from_c64(qbracket(ctx, Complex64::new(1.0, 0.0)))
}

/// `[n]! = [n]⋯[1]`, with `[0]! = 1`.
pub fn qfact<S: Scalar>(ctx: &QContext, n: u32) -> S {
    (1..=n).fold(S::one(), |acc, k| acc * qint(ctx, S::from_f64(k as f64)))
}

/// `{n}! = {n}⋯{1}`.
pub fn qbracket_fact<S: Scalar>(ctx: &QContext, n: u32) -> S {
    (1..=n).fold(S::one(), |acc, k| acc * qbracket(ctx, S::from_f64(k as f64)))
}

pub fn cq(ctx: &QContext, x: f64) -> Complex64 {
    qpow(ctx, Complex64::new(x, 0.0))
}

pub fn cbr(ctx: &QContext, x: f64) -> Complex64 {
    qbracket(ctx, Complex64::new(x, 0.0))
}

pub fn cint(ctx: &QContext, x: f64) -> Complex64 {
    qint(ctx, Complex64::new(x, 0.0))
}

/// `Σ_{j=0}^{i} q^{2j}`: the sum whose vanishing allows a self-extension.
/// Zero for `i = r−1`, nonzero for `i < r−1`.
pub fn geometric_obstruction(ctx: &QContext, i: u32) -> Complex64 {
    (0..=i).map(|j| cq(ctx, 2.0 * j as f64)).sum()
}

pub fn sign(n: i64) -> f64 {
    if n.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet::{jet_derivative, jet_limit};
    use approx::assert_relative_eq;
    use num_traits::One;

    #[test]
    fn powers_of_q() {
        let ctx = QContext::new(2).unwrap();
        let z = cq(&ctx, 0.5);
        assert_relative_eq!(z.re, (PI / 4.0).cos(), epsilon = 1e-15);
        assert_relative_eq!(z.im, (PI / 4.0).sin(), epsilon = 1e-15);
        let ctx3 = QContext::new(3).unwrap();
        assert!((cq(&ctx3, 3.0) + 1.0).norm() < 1e-15);
        assert!((cq(&ctx3, 6.0) - 1.0).norm() < 1e-15);
    }

    #[test]
    fn brackets() {
        let ctx = QContext::new(2).unwrap();
        assert!((cbr(&ctx, 1.0) - Complex64::new(0.0, 2.0)).norm() < 1e-15);
        for r in 2..8 {
            let ctx = QContext::new(r).unwrap();
            assert!(cbr(&ctx, r as f64).norm() < 1e-14);
            assert!(cint(&ctx, r as f64).norm() < 1e-14);
        }
        let ctx3 = QContext::new(3).unwrap();
        // [2] = sin(2π/3)/sin(π/3) = 1
        assert_relative_eq!(cint(&ctx3, 2.0).re, 1.0, epsilon = 1e-14);
        let f2: Complex64 = qfact(&ctx3, 2);
        assert_relative_eq!(f2.re, 1.0, epsilon = 1e-14);
        let f0: Complex64 = qfact(&ctx3, 0);
        assert_eq!(f0, Complex64::new(1.0, 0.0));
    }

    #[test]
    fn q_to_eps_has_derivative_i_pi_over_r() {
        let ctx = QContext::new(5).unwrap();
        let x = qpow(&ctx, ctx.eps());
        let d = jet_derivative(&x, 1).unwrap();
        assert_relative_eq!(d.re, 0.0, epsilon = 1e-15);
        assert_relative_eq!(d.im, PI / 5.0, epsilon = 1e-15);
    }

    #[test]
    fn bracket_quotient_limit() {
        // {ε}/{rε} → 1/r; compare with the numeric quotient at ε = 1e-6
        let ctx = QContext::new(4).unwrap();
        let e = ctx.eps();
        let quo = qbracket(&ctx, e) / qbracket(&ctx, e * Jet64::from_f64(4.0));
        let lim = jet_limit(&quo).unwrap();
        let h = Complex64::new(1e-6, 0.0);
        let numeric = qbracket(&ctx, h) / qbracket(&ctx, h * 4.0);
        assert!((lim - numeric).norm() < 1e-10);
        assert_relative_eq!(lim.re, 0.25, epsilon = 1e-12);
    }

    #[test]
    fn bracket_derivative_against_finite_difference() {
        let ctx = QContext::new(3).unwrap();
        let d = jet_derivative(&qbracket(&ctx, ctx.eps()), 1).unwrap();
        let h = 1e-6;
        let fd = (cbr(&ctx, h) - cbr(&ctx, -h)) / (2.0 * h);
        assert!((d - fd).norm() < 1e-8);
        assert!((d - Complex64::new(0.0, 2.0 * PI / 3.0)).norm() < 1e-14);
    }

    #[test]
    fn inverse_bracket_is_a_pole() {
        let ctx = QContext::new(3).unwrap();
        let inv = Jet64::one() / qbracket(&ctx, ctx.eps());
        assert!(matches!(jet_limit(&inv), Err(Error::Pole { .. })));
    }

    #[test]
    fn obstruction_sum() {
        for r in 2..=8 {
            let ctx = QContext::new(r).unwrap();
            assert!(geometric_obstruction(&ctx, r - 1).norm() < 1e-12);
            for i in 0..r - 1 {
                assert!(geometric_obstruction(&ctx, i).norm() > 1e-3);
            }
        }
    }
}
