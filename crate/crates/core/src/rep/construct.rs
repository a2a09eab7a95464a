use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::qnum::{qint, qpow, sign, QContext};
use crate::scalar::Scalar;

use super::label::ModuleLabel;
use super::module::{direct_sum, dual, tensor, Coproduct, WeightModule};

/// Sign in the action `F·w^S_{−i} = ±[1+i][ε]·w^L_{−i−2}` of the deformable
/// family. Only one choice satisfies the defining relations; see
/// [`surviving_f_sign`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FSign {
    Plus,
    Minus,
}

impl FSign {
    pub fn value(self) -> f64 {
        match self {
            FSign::Plus => 1.0,
            FSign::Minus => -1.0,
        }
    }
}

fn check_i(ctx: &QContext, i: u32) -> Result<()> {
    if i + 2 > ctx.r {
        Err(Error::Range(format!("i = {i} must lie in 0..={}", ctx.r - 2)))
    } else {
        Ok(())
    }
}

pub fn make_module<S: Scalar>(ctx: &QContext, label: &ModuleLabel<S>) -> Result<WeightModule<S>> {
    use ModuleLabel::*;
    match label {
        Typical(a) => Ok(typical(ctx, *a)),
        Simple { i, k } => simple(ctx, *i, *k),
        OneDim(k) => Ok(one_dim(ctx, *k)),
        Projective { i, k } => projective(ctx, *i, *k),
        SelfExt(l) => Ok(self_ext(ctx, *l)),
        DeformX { i, l, eps } => make_deformable(ctx, *i, *l, *eps),
        Tensor(a, b) => Ok(tensor(&make_module(ctx, a)?, &make_module(ctx, b)?)),
        Sum(parts) => {
            let mods = parts
                .iter()
                .map(|p| make_module(ctx, p))
                .collect::<Result<Vec<_>>>()?;
            Ok(direct_sum(&mods.iter().collect::<Vec<_>>()))
        }
        Dual(a) => Ok(dual(&make_module(ctx, a)?, Coproduct::Standard)),
    }
}

fn qp<S: Scalar>(ctx: &QContext) -> impl Fn(S) -> S + '_ {
    move |x| qpow(ctx, x)
}

fn qi<S: Scalar>(ctx: &QContext, x: S) -> S {
    qint(ctx, x)
}

fn sf<S: Scalar>(x: f64) -> S {
    S::from_f64(x)
}

/// V_α: weights α+r−1−2k, `E v_k = [k][k−α] v_{k−1}`, `F v_k = v_{k+1}`.
pub fn typical<S: Scalar>(ctx: &QContext, alpha: S) -> WeightModule<S> {
    let r = ctx.r as usize;
    let weights = (0..r)
        .map(|k| alpha + sf((r as f64) - 1.0 - 2.0 * k as f64))
        .collect();
    let mut e = Matrix::zeros(r, r);
    let mut f = Matrix::zeros(r, r);
    for k in 1..r {
        let kf: S = sf(k as f64);
        e[(k - 1, k)] = qi(ctx, kf) * qi(ctx, kf - alpha);
        f[(k, k - 1)] = S::one();
    }
    WeightModule::diagonal(ModuleLabel::Typical(alpha), weights, e, f, qp(ctx))
}

/// S_i ⊗ ℂ_{kr}: weights i+kr−2j and `E v_j = (−1)^k [j][i+1−j] v_{j−1}`.
pub fn simple<S: Scalar>(ctx: &QContext, i: u32, k: i64) -> Result<WeightModule<S>> {
    check_i(ctx, i)?;
    let n = i as usize + 1;
    let base = i as f64 + (k * ctx.ri()) as f64;
    let weights = (0..n).map(|j| sf(base - 2.0 * j as f64)).collect();
    let mut e = Matrix::zeros(n, n);
    let mut f = Matrix::zeros(n, n);
    for j in 1..n {
        let c = Complex64::from(sign(k)) * crate::qnum::cint(ctx, j as f64)
            * crate::qnum::cint(ctx, (i as usize + 1 - j) as f64);
        e[(j - 1, j)] = S::from_c64(c);
        f[(j, j - 1)] = S::one();
    }
    Ok(WeightModule::diagonal(
        ModuleLabel::Simple { i, k },
        weights,
        e,
        f,
        qp(ctx),
    ))
}

/// ℂ_{kr}: H = kr, K = (−1)^k, E = F = 0.
pub fn one_dim<S: Scalar>(ctx: &QContext, k: i64) -> WeightModule<S> {
    WeightModule::diagonal(
        ModuleLabel::OneDim(k),
        vec![sf((k * ctx.ri()) as f64)],
        Matrix::zeros(1, 1),
        Matrix::zeros(1, 1),
        qp(ctx),
    )
}

/// P_i ⊗ ℂ_{kr}, realised as the deformable family at ε = 0.
pub fn projective<S: Scalar>(ctx: &QContext, i: u32, k: i64) -> Result<WeightModule<S>> {
    Ok(make_deformable(ctx, i, k, S::zero())?.relabel(ModuleLabel::Projective { i, k }))
}

/// β_i for the self-extension with top weight μ: the λ-derivative of the
/// E coefficient `[i][μ+1−i]`.
pub fn self_ext_beta<S: Scalar>(ctx: &QContext, mu: S, i: usize) -> S {
    let pref = S::from_c64(Complex64::new(0.0, PI / ctx.rf()) / crate::qnum::cbr(ctx, 1.0));
    let mut acc = S::zero();
    for j in 1..=i {
        let s: S = sf(2.0 * (j as f64 - 1.0));
        acc += qpow(ctx, mu - s) + qpow(ctx, s - mu);
    }
    pref * acc
}

/// The non-split self-extension of V_λ. Basis: v⁰_0..v⁰_{r−1}, v¹_0..v¹_{r−1};
/// the v¹ span is a submodule isomorphic to V_λ.
pub fn self_ext<S: Scalar>(ctx: &QContext, lambda: S) -> WeightModule<S> {
    let r = ctx.r as usize;
    let n = 2 * r;
    let mu = lambda + sf(ctx.rf() - 1.0);
    let ipr = S::from_c64(Complex64::new(0.0, PI / ctx.rf()));
    let mut weights = Vec::with_capacity(n);
    for _ in 0..2 {
        for i in 0..r {
            weights.push(mu - sf(2.0 * i as f64));
        }
    }
    let mut e = Matrix::zeros(n, n);
    let mut f = Matrix::zeros(n, n);
    let mut h = Matrix::zeros(n, n);
    let mut k = Matrix::zeros(n, n);
    let mut kinv = Matrix::zeros(n, n);
    for i in 0..r {
        let w = weights[i];
        let (qw, qmw) = (qpow(ctx, w), qpow(ctx, -w));
        for b in 0..2 {
            h[(b * r + i, b * r + i)] = w;
            k[(b * r + i, b * r + i)] = qw;
            kinv[(b * r + i, b * r + i)] = qmw;
        }
        h[(r + i, i)] = S::one();
        k[(r + i, i)] = ipr * qw;
        kinv[(r + i, i)] = -(ipr * qmw);
        if i + 1 < r {
            f[(i + 1, i)] = S::one();
            f[(r + i + 1, r + i)] = S::one();
        }
        if i > 0 {
            let fi: S = sf(i as f64);
            let c = qi(ctx, fi) * qi(ctx, mu + S::one() - fi);
            e[(i - 1, i)] = c;
            e[(r + i - 1, r + i)] = c;
            e[(r + i - 1, i)] = self_ext_beta(ctx, mu, i);
        }
    }
    WeightModule {
        label: ModuleLabel::SelfExt(lambda),
        e,
        f,
        k,
        kinv,
        h,
        weights,
    }
}

/// Positions of the four blocks of the deformable family inside its basis.
///
/// Blocks appear in the order L, H, S, R. Within each block the basis runs
/// by increasing H-weight, so the subscript-index `k` of the defining
/// formulas is reversed for the L, H and S blocks.
#[derive(Debug, Clone, Copy)]
pub struct DeformBasis {
    pub r: usize,
    pub i: usize,
}

impl DeformBasis {
    pub fn new(r: u32, i: u32) -> Self {
        DeformBasis {
            r: r as usize,
            i: i as usize,
        }
    }

    pub fn n_side(&self) -> usize {
        self.r - self.i - 1
    }

    pub fn dim(&self) -> usize {
        2 * self.r
    }

    /// Index of `w^L_{−i−2−2k}`, `k ∈ 0..r−1−i`.
    pub fn l(&self, k: usize) -> usize {
        self.n_side() - 1 - k
    }

    /// Index of `w^H_{i−2k}`, `k ∈ 0..=i`.
    pub fn h(&self, k: usize) -> usize {
        self.n_side() + self.i - k
    }

    /// Index of `w^S_{i−2k}`.
    pub fn s(&self, k: usize) -> usize {
        self.n_side() + 2 * self.i + 1 - k
    }

    /// Index of `w^R_{i+2+2k}`.
    pub fn rr(&self, k: usize) -> usize {
        self.n_side() + 2 * self.i + 2 + k
    }

    /// Subscript (weight without the ℓr+ε shift) of every basis vector.
    pub fn subscripts(&self) -> Vec<i64> {
        let (r, i) = (self.r as i64, self.i as i64);
        let mut out = Vec::with_capacity(self.dim());
        out.extend((0..r - i - 1).rev().map(|k| -i - 2 - 2 * k));
        for _ in 0..2 {
            out.extend((0..=i).rev().map(|k| i - 2 * k));
        }
        out.extend((0..r - i - 1).map(|k| i + 2 + 2 * k));
        out
    }
}

/// X_ε(i, ℓ) with the sign of `F·w^S_{−i}` that satisfies the relations.
pub fn make_deformable<S: Scalar>(ctx: &QContext, i: u32, l: i64, eps: S) -> Result<WeightModule<S>> {
    deformable_with_sign(ctx, i, l, eps, FSign::Minus)
}

pub fn deformable_with_sign<S: Scalar>(
    ctx: &QContext,
    i: u32,
    l: i64,
    eps: S,
    fsign: FSign,
) -> Result<WeightModule<S>> {
    check_i(ctx, i)?;
    let b = DeformBasis::new(ctx.r, i);
    let n = b.dim();
    let iu = i as usize;
    let nr = b.n_side();
    let sgn: S = sf(sign(l));
    let one_i: S = sf(1.0 + i as f64);
    let bb = qi(ctx, one_i) * qi(ctx, eps);
    let two: S = sf(2.0);
    let weights: Vec<S> = b
        .subscripts()
        .iter()
        .map(|s| sf::<S>((s + l * ctx.ri()) as f64) + eps)
        .collect();

    let mut e = Matrix::zeros(n, n);
    let mut f = Matrix::zeros(n, n);

    // L block
    for k in 0..nr {
        if k + 1 < nr {
            f[(b.l(k + 1), b.l(k))] = S::one();
        }
        if k == 0 {
            e[(b.h(iu), b.l(0))] = two * sgn * bb;
            e[(b.s(iu), b.l(0))] = sgn;
        } else {
            let kf: S = sf(k as f64);
            e[(b.l(k - 1), b.l(k))] = -sgn * qi(ctx, one_i + kf) * qi(ctx, kf - eps);
        }
    }
    // H and S blocks
    for k in 0..=iu {
        if k < iu {
            f[(b.h(k + 1), b.h(k))] = S::one();
            f[(b.s(k + 1), b.s(k))] = S::one();
        } else if nr > 0 {
            f[(b.l(0), b.h(iu))] = S::one();
            f[(b.l(0), b.s(iu))] = sf::<S>(fsign.value()) * bb;
        }
        let kf: S = sf(k as f64);
        let ik: S = sf((iu - k) as f64 + 1.0);
        if k == 0 {
            if nr > 0 {
                e[(b.rr(0), b.h(0))] = sgn;
                e[(b.rr(0), b.s(0))] = -two * sgn * bb;
            }
        } else {
            let ch = two * qi(ctx, ik + eps) * qi(ctx, kf) - qi(ctx, ik) * qi(ctx, kf - eps);
            e[(b.h(k - 1), b.h(k))] = sgn * ch;
            e[(b.s(k - 1), b.h(k))] = sgn;
            let cs = two * qi(ctx, ik) * qi(ctx, kf - eps) - qi(ctx, ik + eps) * qi(ctx, kf);
            e[(b.s(k - 1), b.s(k))] = sgn * cs;
            e[(b.h(k - 1), b.s(k))] = -two * sgn * bb * bb;
        }
    }
    // R block
    for k in 0..nr {
        if k + 1 < nr {
            e[(b.rr(k + 1), b.rr(k))] = sgn;
        }
        if k == 0 {
            f[(b.s(0), b.rr(0))] = S::one();
            f[(b.h(0), b.rr(0))] = bb;
        } else {
            let kf: S = sf(k as f64);
            f[(b.rr(k - 1), b.rr(k))] = -(qi(ctx, one_i + kf) * qi(ctx, kf + eps));
        }
    }
    Ok(WeightModule::diagonal(
        ModuleLabel::DeformX { i, l, eps },
        weights,
        e,
        f,
        qp(ctx),
    ))
}
