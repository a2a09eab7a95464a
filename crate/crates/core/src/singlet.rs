//! The singlet vertex algebra side: regularized asymptotic dimensions, their
//! regimes, the formal Verlinde products of irreducible characters, and the
//! dictionary to quantum group modules.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;

use crate::deform::{log_tangle_invariant_with, LogOptions};
use crate::error::{Error, Result};
use crate::qnum::{sign, QContext};
use crate::ribbon::{modified_trace, Ribbon};
use crate::scalar::fmt_complex;
use crate::tangle::{hopf, Preset, TangleExpr};
use crate::{Label, C64};

/// Labels of irreducible singlet modules.
///
/// `Atypical { t, s }` is `M_{t,s}`; the vacuum is `M_{1,1}`. The index `s`
/// is normally in `1..r`, but products can produce `s = r`, which is kept
/// and reported through [`FusionVector::out_of_range`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SingletLabel {
    Fock(C64),
    Atypical { t: i64, s: u32 },
}

impl SingletLabel {
    pub const VACUUM: SingletLabel = SingletLabel::Atypical { t: 1, s: 1 };

    fn same(&self, other: &Self) -> bool {
        match (self, other) {
            (SingletLabel::Fock(a), SingletLabel::Fock(b)) => (a - b).norm() < 1e-12,
            (a, b) => a == b,
        }
    }

    /// Whether the label lies in the documented parameter range for `r`.
    pub fn in_range(&self, r: u32) -> bool {
        match self {
            SingletLabel::Fock(_) => true,
            SingletLabel::Atypical { s, .. } => (1..r).contains(s),
        }
    }

    /// Deterministic sort key: Fock before atypical, then by parameters.
    fn key(&self) -> (u8, f64, f64, i64, u32) {
        match *self {
            SingletLabel::Fock(z) => (0, z.re, z.im, 0, 0),
            SingletLabel::Atypical { t, s } => (1, 0.0, 0.0, t, s),
        }
    }
}

impl fmt::Display for SingletLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SingletLabel::Fock(z) => write!(f, "F({})", fmt_complex(*z)),
            SingletLabel::Atypical { t, s } => write!(f, "M({t},{s})"),
        }
    }
}

/// `α_+ = √(2r)`.
pub fn alpha_plus(ctx: &QContext) -> f64 {
    (2.0 * ctx.rf()).sqrt()
}

/// `α_− = −√(2/r)`.
pub fn alpha_minus(ctx: &QContext) -> f64 {
    -(2.0 / ctx.rf()).sqrt()
}

pub fn alpha_zero(ctx: &QContext) -> f64 {
    alpha_plus(ctx) + alpha_minus(ctx)
}

/// `α_{t,s} = ((1−t)/2)α_+ + ((1−s)/2)α_−`.
pub fn alpha_ts(ctx: &QContext, t: i64, s: i64) -> f64 {
    0.5 * (1 - t) as f64 * alpha_plus(ctx) + 0.5 * (1 - s) as f64 * alpha_minus(ctx)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    Continuous,
    /// `k ∈ ℤ`, `m ∈ 0..2r`.
    Strip { k: i64, m: u32 },
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Regime::Continuous => write!(f, "continuous"),
            Regime::Strip { k, m } => write!(f, "strip({k},{m})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Regularization {
    pub eps: C64,
    pub b: f64,
    pub regime: Regime,
}

/// `B_ε^r = −min{ |m/√(2r) − Im ε| : m ∈ ℤ ∖ rℤ }`.
pub fn regime_bound(ctx: &QContext, eps: C64) -> f64 {
    let s = alpha_plus(ctx);
    let x = eps.im * s;
    let base = x.floor() as i64;
    let r = ctx.ri();
    let mut best = f64::INFINITY;
    for m in base - r - 1..=base + r + 1 {
        if m.rem_euclid(r) != 0 {
            best = best.min((m as f64 / s - eps.im).abs());
        }
    }
    -best
}

/// Strip indices `(k, m)` with `m ∈ 0..2r` such that `S(k0, m0) = S(k, m)`.
pub fn reduce_strip(r: u32, k: i64, m: i64) -> (i64, u32) {
    let n = 2 * r as i64 * k + m;
    (n.div_euclid(2 * r as i64), n.rem_euclid(2 * r as i64) as u32)
}

pub fn regime_of(ctx: &QContext, eps: C64) -> Result<Regularization> {
    let b = regime_bound(ctx, eps);
    let tol = ctx.tol * 1f64.max(eps.norm());
    if (eps.re - b).abs() <= tol {
        return Err(Error::Boundary(format!(
            "{} (Re ε equals B = {b})",
            fmt_complex(eps)
        )));
    }
    if eps.re > b {
        return Ok(Regularization {
            eps,
            b,
            regime: Regime::Continuous,
        });
    }
    // walls sit where 4r·Im(ε)/√(2r) is an odd integer
    let r = ctx.rf();
    let y = 4.0 * r * eps.im / alpha_plus(ctx);
    let odd = 2.0 * ((y - 1.0) / 2.0).round() + 1.0;
    if (y - odd).abs() <= ctx.tol * 1f64.max(y.abs()) {
        return Err(Error::Boundary(format!("{} (strip wall)", fmt_complex(eps))));
    }
    let n = (y / 2.0).round() as i64;
    let (k, m) = reduce_strip(ctx.r, 0, n);
    Ok(Regularization {
        eps,
        b,
        regime: Regime::Strip { k, m },
    })
}

/// `q_ε^x = e^{−πεx}`.
pub fn q_eps(eps: C64, x: C64) -> C64 {
    (-PI * eps * x).exp()
}

fn sin_ratio(eps: C64, n: f64, am: f64) -> C64 {
    let i = Complex64::i();
    (PI * n * am * eps * i).sin() / (PI * am * eps * i).sin()
}

/// Regularized asymptotic dimension `qdim[X^ε]`.
pub fn qdim_reg(ctx: &QContext, x: &SingletLabel, eps: C64) -> Result<C64> {
    let reg = regime_of(ctx, eps)?;
    Ok(qdim_in(ctx, x, &reg))
}

pub fn qdim_in(ctx: &QContext, x: &SingletLabel, reg: &Regularization) -> C64 {
    let eps = reg.eps;
    let (ap, am, a0) = (alpha_plus(ctx), alpha_minus(ctx), alpha_zero(ctx));
    match (reg.regime, *x) {
        (Regime::Continuous, SingletLabel::Fock(l)) => {
            let i = Complex64::i();
            q_eps(eps, 2.0 * l - a0) * (-PI * ap * eps * i).sin() / (PI * am * eps * i).sin()
        }
        (Regime::Continuous, SingletLabel::Atypical { t, s }) => {
            q_eps(eps, C64::new(-((t - 1) as f64) * ap, 0.0)) * sin_ratio(eps, s as f64, am)
        }
        (Regime::Strip { .. }, SingletLabel::Fock(_)) => C64::new(0.0, 0.0),
        (Regime::Strip { m, .. }, SingletLabel::Atypical { t, s }) => {
            let r = ctx.ri();
            let (m, s) = (m as i64, s as i64);
            let v = if m != 0 && m != r {
                sign(m * (t - 1)) * (PI * (m * s) as f64 / ctx.rf()).sin()
                    / (PI * m as f64 / ctx.rf()).sin()
            } else {
                sign((m + 1) * (t - 1) + (m / r) * (s - 1)) * (PI * s as f64 / ctx.rf()).sin()
                    / (PI / ctx.rf()).sin()
            };
            C64::new(v, 0.0)
        }
    }
}

/// A finitely supported integer combination of singlet labels.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FusionVector {
    terms: Vec<(SingletLabel, i64)>,
}

impl FusionVector {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(x: SingletLabel) -> Self {
        let mut v = Self::new();
        v.add(x, 1);
        v
    }

    pub fn add(&mut self, x: SingletLabel, n: i64) {
        if let Some(slot) = self.terms.iter_mut().find(|(y, _)| y.same(&x)) {
            slot.1 += n;
        } else {
            self.terms.push((x, n));
        }
        self.terms.retain(|(_, n)| *n != 0);
        self.terms
            .sort_by(|a, b| a.0.key().partial_cmp(&b.0.key()).unwrap_or(std::cmp::Ordering::Equal));
    }

    pub fn terms(&self) -> &[(SingletLabel, i64)] {
        &self.terms
    }

    pub fn multiplicity(&self, x: &SingletLabel) -> i64 {
        self.terms.iter().find(|(y, _)| y.same(x)).map_or(0, |t| t.1)
    }

    /// Equality up to the label tolerance.
    pub fn same(&self, other: &Self) -> bool {
        self.terms.len() == other.terms.len()
            && self.terms.iter().all(|(x, n)| other.multiplicity(x) == *n)
    }

    /// Labels outside the documented ranges.
    pub fn out_of_range(&self, r: u32) -> Vec<SingletLabel> {
        self.terms.iter().map(|t| t.0).filter(|x| !x.in_range(r)).collect()
    }

    pub fn qdim(&self, ctx: &QContext, reg: &Regularization) -> C64 {
        self.terms
            .iter()
            .map(|(x, n)| qdim_in(ctx, x, reg) * *n as f64)
            .sum()
    }
}

impl fmt::Display for FusionVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (x, m)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            if *m != 1 {
                write!(f, "{m} ")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

fn fuse_atypical(r: i64, (t, s): (i64, i64), (u, v): (i64, i64), out: &mut FusionVector) {
    let at = |t: i64, s: i64| SingletLabel::Atypical { t, s: s as u32 };
    let parity = |l: i64| (l + s + v).rem_euclid(2) == 1;
    for l in ((s - v).abs() + 1)..=(s + v - 1).min(r) {
        if parity(l) {
            out.add(at(t + u - 1, l), 1);
        }
    }
    for l in (r + 1)..=(s + v - 1) {
        if parity(l) {
            out.add(at(t + u - 2, l - r), 1);
            out.add(at(t + u - 1, 2 * r - l), 1);
            out.add(at(t + u, l - r), 1);
        }
    }
}

/// Verlinde product of two irreducible characters, as a formal sum.
pub fn fuse(ctx: &QContext, x: &SingletLabel, y: &SingletLabel) -> FusionVector {
    let r = ctx.ri();
    let am = alpha_minus(ctx);
    let mut out = FusionVector::new();
    match (*x, *y) {
        (SingletLabel::Fock(l), SingletLabel::Fock(m)) => {
            for n in 0..r {
                out.add(SingletLabel::Fock(l + m + n as f64 * am), 1);
            }
        }
        (SingletLabel::Atypical { t, s }, SingletLabel::Fock(mu))
        | (SingletLabel::Fock(mu), SingletLabel::Atypical { t, s }) => {
            let s = s as i64;
            let mut l = -s + 2;
            while l <= s {
                out.add(SingletLabel::Fock(mu + alpha_ts(ctx, t, l)), 1);
                l += 2;
            }
        }
        (SingletLabel::Atypical { t, s }, SingletLabel::Atypical { t: u, s: v }) => {
            fuse_atypical(r, (t, s as i64), (u, v as i64), &mut out);
        }
    }
    out
}

/// `φ` on simple quantum group labels.
pub fn phi(ctx: &QContext, x: &Label) -> Result<SingletLabel> {
    match x {
        Label::Typical(a) => {
            let r = ctx.rf();
            let near_int = (a.im.abs() < ctx.tol) && (a.re - a.re.round()).abs() < ctx.tol;
            if near_int && (a.re.round() as i64).rem_euclid(ctx.ri()) != 0 {
                return Err(Error::Domain(format!(
                    "V({}) is not simple: its weight is an integer outside rZ",
                    fmt_complex(*a)
                )));
            }
            Ok(SingletLabel::Fock((a + r - 1.0) / alpha_plus(ctx)))
        }
        Label::Simple { i, k } => Ok(SingletLabel::Atypical { t: 1 - k, s: i + 1 }),
        other => Err(Error::Domain(format!("{other} has no simple singlet image"))),
    }
}

/// `φ` extended additively over direct sums.
pub fn phi_sum(ctx: &QContext, x: &Label) -> Result<FusionVector> {
    match x {
        Label::Sum(parts) => {
            let mut v = FusionVector::new();
            for p in parts {
                for (y, n) in phi_sum(ctx, p)?.terms() {
                    v.add(*y, *n);
                }
            }
            Ok(v)
        }
        other => Ok(FusionVector::single(phi(ctx, other)?)),
    }
}

pub fn phi_inverse(ctx: &QContext, x: &SingletLabel) -> Result<Label> {
    match *x {
        SingletLabel::Fock(l) => {
            let a = l * alpha_plus(ctx) - ctx.rf() + 1.0;
            let back = Label::Typical(a);
            phi(ctx, &back).map(|_| back)
        }
        SingletLabel::Atypical { t, s } if (1..ctx.r).contains(&s) => {
            Ok(Label::Simple { i: s - 1, k: 1 - t })
        }
        other => Err(Error::Domain(format!("{other} has no quantum group preimage"))),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonReport {
    pub regime: Regime,
    pub lhs: C64,
    pub rhs: C64,
    /// `|lhs − rhs| / max(1, |lhs|, |rhs|)`
    pub diff: f64,
}

/// Compares `qdim[φ(X)^ε]` with the matching ratio of modified traces.
///
/// In the continuous regime `color` must be `V_α` with `α = √(2r)·i·ε`; in
/// the strip regime it must be `P_j ⊗ ℂ_{kr}` with ε in `S(k, j+1+r(k+1))`.
pub fn compare_hopf_qdim(ribbon: &Ribbon, x: &Label, color: &Label, eps: C64) -> Result<ComparisonReport> {
    let ctx = &ribbon.ctx;
    let reg = regime_of(ctx, eps).map_err(|e| Error::Regime(e.to_string()))?;
    let lhs = phi_sum(ctx, x)?.qdim(ctx, &reg);
    let rhs = match (reg.regime, color) {
        (Regime::Continuous, Label::Typical(a)) => {
            let want = Complex64::i() * alpha_plus(ctx) * eps;
            if (a - want).norm() > ctx.tol * 1f64.max(want.norm()) {
                return Err(Error::Regime(format!(
                    "continuous comparison needs alpha = sqrt(2r) i eps = {}",
                    fmt_complex(want)
                )));
            }
            let num = modified_trace(ctx, color, &hopf(ribbon, x, color)?.matrix)?;
            let unit = Label::Simple { i: 0, k: 0 };
            let den = modified_trace(ctx, color, &hopf(ribbon, &unit, color)?.matrix)?;
            num / den
        }
        (Regime::Strip { k: sk, m: sm }, Label::Projective { i: j, k }) => {
            let want = reduce_strip(ctx.r, *k, (*j as i64) + 1 + ctx.ri() * (k + 1));
            if want != (sk, sm) {
                return Err(Error::Regime(format!(
                    "eps lies in strip ({sk},{sm}) but P({j},{k}) needs strip ({},{})",
                    want.0, want.1
                )));
            }
            // Φ∘x = a·x since x² = 0, so the ratio of traces is a_X / a_unit
            let a_of = |z: &Label| -> Result<C64> {
                let t = TangleExpr::preset(color.clone(), &Preset::Hopf(z.clone()))?;
                Ok(log_tangle_invariant_with(ribbon, &t, LogOptions::SCALARS)?.a)
            };
            a_of(x)? / a_of(&Label::Simple { i: 0, k: 0 })?
        }
        (regime, c) => {
            return Err(Error::Regime(format!("color {c} does not fit the {regime} regime")));
        }
    };
    Ok(ComparisonReport {
        regime: reg.regime,
        lhs,
        rhs,
        diff: (lhs - rhs).norm() / 1f64.max(lhs.norm()).max(rhs.norm()),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerlindeReport {
    pub product: FusionVector,
    pub lhs: C64,
    pub rhs: C64,
    pub diff: f64,
}

/// `|qdim(X × Y) − qdim(X)·qdim(Y)|` in the continuous regime.
pub fn verlinde_hom_check(ctx: &QContext, x: &SingletLabel, y: &SingletLabel, eps: C64) -> Result<VerlindeReport> {
    let reg = regime_of(ctx, eps)?;
    if reg.regime != Regime::Continuous {
        return Err(Error::Regime(format!(
            "{} is not in the continuous regime",
            fmt_complex(eps)
        )));
    }
    let product = fuse(ctx, x, y);
    let lhs = product.qdim(ctx, &reg);
    let rhs = qdim_in(ctx, x, &reg) * qdim_in(ctx, y, &reg);
    Ok(VerlindeReport {
        product,
        lhs,
        rhs,
        diff: (lhs - rhs).norm() / 1f64.max(rhs.norm()),
    })
}
