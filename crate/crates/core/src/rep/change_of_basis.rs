use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::qnum::{cint, QContext};
use crate::C64;

use super::construct::{make_deformable, typical, DeformBasis};
use super::module::{direct_sum, LinearMap};

/// Highest weights `(1+i−r+ℓr, −1−i+r+ℓr)` of the two typical summands of
/// the deformable family, before the ε shift.
pub fn summand_weights(r: u32, i: u32, l: i64) -> (f64, f64) {
    let (r, i) = (r as f64, i as f64);
    let lr = l as f64 * r;
    (1.0 + i - r + lr, -1.0 - i + r + lr)
}

/// The isomorphism `V_{L+ε} ⊕ V_{R+ε} → X_ε(i, ℓ)` for ε ≠ 0.
pub fn deformable_change_of_basis(
    ctx: &QContext,
    i: u32,
    l: i64,
    eps: C64,
) -> Result<LinearMap<C64>> {
    let x_mod = make_deformable(ctx, i, l, eps)?;
    let (lw, rw) = summand_weights(ctx.r, i, l);
    let sum = direct_sum(&[
        &typical(ctx, Complex64::from(lw) + eps),
        &typical(ctx, Complex64::from(rw) + eps),
    ]);

    let b = DeformBasis::new(ctx.r, i);
    let r = ctx.r as usize;
    let iu = i as usize;
    let bb = cint(ctx, 1.0 + i as f64) * crate::qnum::qint(ctx, eps);
    if bb.norm() < ctx.tol.sqrt() {
        return Err(Error::Singular(bb.norm()));
    }
    let y = |k: usize| r + k;
    // columns: coordinates of each w in the x ⊕ y basis
    let mut cols = Matrix::<C64>::zeros(2 * r, 2 * r);
    for k in 0..=iu {
        cols[(k, b.h(k))] = Complex64::from(2.0);
        cols[(y(r - 1 - iu + k), b.h(k))] = -1.0 / (2.0 * bb);
        cols[(k, b.s(k))] = -2.0 * bb;
        cols[(y(r - 1 - iu + k), b.s(k))] = Complex64::from(1.0);
    }
    let mut prod = Complex64::from(1.0);
    for k in 0..b.n_side() {
        cols[(1 + iu + k, b.l(k))] = Complex64::from(2.0);
        prod *= cint(ctx, (1 + iu + k) as f64) * crate::qnum::qint(ctx, -eps - k as f64);
        cols[(y(r - 2 - iu - k), b.rr(k))] = -prod / (2.0 * bb);
    }
    let inv = cols
        .inverse()
        .ok_or_else(|| Error::Singular(bb.norm()))?;
    LinearMap::new(Arc::new(sum), Arc::new(x_mod), inv)
}
