use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::qnum::{cq, qbracket, sign, QContext};
use crate::rep::{summand_weights, ModuleLabel};
use crate::scalar::Scalar;

/// `d(V_α) = (−1)^{r−1} r {α}/{rα}`, continued to α ∈ rℤ by its limit.
pub fn typical_dim<S: Scalar>(ctx: &QContext, alpha: S) -> Result<S> {
    let r = ctx.rf();
    let den = qbracket(ctx, alpha * S::from_f64(r));
    let pref = S::from_f64(sign(ctx.ri() - 1) * r);
    if den.magnitude() > ctx.tol {
        return Ok(pref * qbracket(ctx, alpha) / den);
    }
    let a = alpha
        .base_value()
        .ok_or_else(|| Error::NotProjective(format!("V({alpha:?})")))?;
    let n = a.re.round();
    if (a - n).norm() > ctx.tol.sqrt() || (n as i64).rem_euclid(ctx.ri()) != 0 {
        return Err(Error::NotProjective(format!(
            "V({}) with integral weight outside rℤ",
            crate::scalar::fmt_complex(a)
        )));
    }
    // {α}/{rα} → cos(πn/r) / (r cos(πn)) as α → n ∈ rℤ
    let val = sign(ctx.ri() - 1) * (std::f64::consts::PI * n / r).cos() * sign(n as i64);
    Ok(S::from_f64(val))
}

/// `d(P_i ⊗ ℂ_{kr}) = (−1)^{k(r−1)+i+1}(q^{i+1}+q^{−i−1})`.
pub fn projective_dim(ctx: &QContext, i: u32, k: i64) -> Complex64 {
    let e = k * (ctx.ri() - 1) + i as i64 + 1;
    let x = i as f64 + 1.0;
    sign(e) * (cq(ctx, x) + cq(ctx, -x))
}

pub fn modified_dim<S: Scalar>(ctx: &QContext, label: &ModuleLabel<S>) -> Result<S> {
    use ModuleLabel::*;
    match label {
        Typical(a) => typical_dim(ctx, *a),
        Projective { i, k } => Ok(S::from_c64(projective_dim(ctx, *i, *k))),
        DeformX { i, l, eps } if eps.magnitude() <= ctx.tol => {
            Ok(S::from_c64(projective_dim(ctx, *i, *l)))
        }
        DeformX { i, l, eps } => {
            let (a, b) = summand_weights(ctx.r, *i, *l);
            Ok(typical_dim(ctx, S::from_f64(a) + *eps)? + typical_dim(ctx, S::from_f64(b) + *eps)?)
        }
        Sum(parts) => parts
            .iter()
            .try_fold(S::zero(), |acc, p| Ok(acc + modified_dim(ctx, p)?)),
        other => Err(Error::NotProjective(other.to_string())),
    }
}

/// Scalar `c` with `f = c·Id`, or the relative deviation from scalarity.
pub(crate) fn scalar_of<S: Scalar>(f: &Matrix<S>) -> (S, f64) {
    let c = f[(0, 0)];
    let dev = f.sub(&Matrix::identity(f.rows()).scale(c)).max_abs();
    (c, dev / 1f64.max(c.magnitude()))
}

/// Modified trace of an endomorphism of a simple projective module or of a
/// direct sum of typical modules.
pub fn modified_trace<S: Scalar>(
    ctx: &QContext,
    label: &ModuleLabel<S>,
    f: &Matrix<S>,
) -> Result<S> {
    use ModuleLabel::*;
    match label {
        Typical(a) => {
            let (c, dev) = scalar_of(f);
            if dev > ctx.tol {
                return Err(Error::NonScalar(dev));
            }
            Ok(typical_dim(ctx, *a)? * c)
        }
        Sum(parts) => {
            let r = ctx.r as usize;
            if parts.iter().any(|p| !matches!(p, Typical(_))) {
                return Err(Error::NotProjective(label.to_string()));
            }
            if f.rows() != r * parts.len() || f.cols() != f.rows() {
                return Err(Error::Shape(format!(
                    "{}x{} endomorphism of {label}",
                    f.rows(),
                    f.cols()
                )));
            }
            let mut acc = S::zero();
            for (n, p) in parts.iter().enumerate() {
                let block = Matrix::from_fn(r, r, |i, j| f[(n * r + i, n * r + j)]);
                acc += modified_trace(ctx, p, &block)?;
            }
            Ok(acc)
        }
        Projective { .. } | DeformX { .. } => Err(Error::Domain(format!(
            "{label} is not semisimple; its trace is obtained as a deformation limit"
        ))),
        other => Err(Error::NotProjective(other.to_string())),
    }
}
