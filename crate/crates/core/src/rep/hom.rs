use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{gram_schmidt, nullspace};
use crate::matrix::Matrix;
use crate::qnum::QContext;
use crate::C64;

use super::construct::{projective, DeformBasis};
use super::module::{LinearMap, WeightModule};

/// Basis of the intertwiners `M → N`, orthonormal for the Frobenius product.
///
/// The solution space of `X·ρ_M(g) = ρ_N(g)·X` for g ∈ {E, F, H, K} is found
/// by SVD, brought to reduced echelon form over the row-major entries of X
/// and then orthonormalized in that order.
pub fn hom_space(
    ctx: &QContext,
    m: &Arc<WeightModule<C64>>,
    n: &Arc<WeightModule<C64>>,
) -> Vec<LinearMap<C64>> {
    let (dm, dn) = (m.dim(), n.dim());
    let nvar = dm * dn;
    let gens = [(&m.e, &n.e), (&m.f, &n.f), (&m.h, &n.h), (&m.k, &n.k)];
    let mut sys = Matrix::zeros(gens.len() * nvar, nvar);
    for (g, (gm, gn)) in gens.iter().enumerate() {
        for a in 0..dn {
            for c in 0..dm {
                let row = g * nvar + a * dm + c;
                for b in 0..dm {
                    let v = gm[(b, c)];
                    if v != Complex64::new(0.0, 0.0) {
                        sys[(row, a * dm + b)] += v;
                    }
                }
                for d in 0..dn {
                    let v = gn[(a, d)];
                    if v != Complex64::new(0.0, 0.0) {
                        sys[(row, d * dm + c)] -= v;
                    }
                }
            }
        }
    }
    let basis = gram_schmidt(&nullspace(&sys, ctx.tol));
    basis
        .into_iter()
        .map(|v| LinearMap {
            source: m.clone(),
            target: n.clone(),
            matrix: Matrix::from_row_major(dn, dm, v),
        })
        .collect()
}

/// The nilpotent endomorphism of `P_i ⊗ ℂ_{kr}` sending `w^H_i` to `w^S_i`,
/// extracted from the computed endomorphism space.
pub fn projective_nilpotent(ctx: &QContext, i: u32, k: i64) -> Result<LinearMap<C64>> {
    let p = Arc::new(projective::<C64>(ctx, i, k)?);
    let end = hom_space(ctx, &p, &p);
    if end.len() != 2 {
        return Err(Error::Basis(end.len()));
    }
    let b = DeformBasis::new(ctx.r, i);
    let (h0, s0) = (b.h(0), b.s(0));
    let (m0, m1) = (&end[0].matrix, &end[1].matrix);
    // solve c0·m0 + c1·m1 with entry (H0,H0) = 0 and (S0,H0) = 1
    let (a11, a12, a21, a22) = (m0[(h0, h0)], m1[(h0, h0)], m0[(s0, h0)], m1[(s0, h0)]);
    let det = a11 * a22 - a12 * a21;
    if det.norm() < ctx.tol {
        return Err(Error::Basis(end.len()));
    }
    let c0 = -a12 / det;
    let c1 = a11 / det;
    let x = m0.scale(c0).add(&m1.scale(c1));
    LinearMap::new(p.clone(), p, x)
}
