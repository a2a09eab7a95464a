//! Colored (1,1)-tangles: syntax, evaluation, and invariants.

mod ast;
mod eval;
mod parse;

use std::sync::Arc;

pub use ast::{color_token, Preset, Side, Sign, Slice, Strand, StrandColor, TangleExpr};
pub use eval::{eval_columns, eval_matrix};
pub use parse::{parse_color, parse_tangle};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::qnum::QContext;
use crate::rep::{make_module, projective_nilpotent, DeformBasis, LinearMap, WeightModule};
use crate::ribbon::{modified_trace, Ribbon};
use crate::scalar::Scalar;
use crate::{Label, C64};

/// The endomorphism a (1,1)-tangle induces on its open color.
pub fn eval_tangle(ribbon: &Ribbon, t: &TangleExpr) -> Result<LinearMap<C64>> {
    let open = Arc::new(make_module::<C64>(&ribbon.ctx, &t.open_color)?);
    let m = eval_matrix(ribbon, t, open.clone())?;
    LinearMap::new(open.clone(), open, m)
}

/// The scalar by which `t` acts on a simple open module, read off the
/// highest-weight vector.
pub fn open_scalar<S: Scalar>(
    ribbon: &Ribbon,
    t: &TangleExpr,
    open: Arc<WeightModule<S>>,
) -> Result<S> {
    Ok(eval_columns(ribbon, t, open, &[0])?[(0, 0)])
}

/// `F'(L) = t_{V_λ}(T_λ)`, with the open color set to `V_λ`.
pub fn renormalized_invariant(ribbon: &Ribbon, t: &TangleExpr, lambda: C64) -> Result<C64> {
    let mut t = t.clone();
    t.open_color = Label::Typical(lambda);
    let f = eval_tangle(ribbon, &t)?;
    modified_trace(&ribbon.ctx, &t.open_color, &f.matrix)
}

/// The open Hopf link `Φ_{closed, open}`.
pub fn hopf(ribbon: &Ribbon, closed: &Label, open: &Label) -> Result<LinearMap<C64>> {
    let t = TangleExpr::preset(open.clone(), &Preset::Hopf(closed.clone()))?;
    eval_tangle(ribbon, &t)
}

/// Coefficients of an endomorphism of `P_i ⊗ ℂ_{kr}` in the basis (Id, x).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EndoDecomp {
    pub a: C64,
    pub b: C64,
    /// Relative size of `f − a·Id − b·x`.
    pub residual: f64,
}

pub fn decompose_endo(ctx: &QContext, f: &Matrix<C64>, i: u32, k: i64) -> Result<EndoDecomp> {
    let x = projective_nilpotent(ctx, i, k)?;
    let p = x.source.clone();
    if f.rows() != p.dim() || f.cols() != p.dim() {
        return Err(Error::Shape(format!(
            "{}x{} matrix is not an endomorphism of {}",
            f.rows(),
            f.cols(),
            p.label
        )));
    }
    let fm = LinearMap::new(p.clone(), p.clone(), f.clone())?;
    let res = fm.intertwining_residual();
    if res > ctx.tol.sqrt() {
        return Err(Error::NotEndomorphism(res));
    }
    let b = DeformBasis::new(ctx.r, i);
    let (h0, s0) = (b.h(0), b.s(0));
    let a = f[(h0, h0)];
    let bb = f[(s0, h0)];
    let recon = Matrix::identity(p.dim()).scale(a).add(&x.matrix.scale(bb));
    let residual = f.sub(&recon).max_abs() / 1f64.max(f.max_abs());
    Ok(EndoDecomp { a, b: bb, residual })
}
