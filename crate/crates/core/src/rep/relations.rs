use std::f64::consts::PI;

use num_complex::Complex64;

use crate::matrix::Matrix;
use crate::qnum::{cbr, cq, qpow, QContext};
use crate::scalar::Scalar;

use super::module::WeightModule;

#[derive(Debug, Clone, PartialEq)]
pub struct RelationReport {
    pub max_residual: f64,
    /// Names of the relations whose residual exceeds the context tolerance.
    pub failed: Vec<String>,
    pub residuals: Vec<(String, f64)>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.failed.is_empty()
    }
}

/// Checks the defining relations of the algebra on `m`.
///
/// Residuals are measured relative to the largest generator entry. For
/// jet-valued modules the magnitude of a jet is its largest coefficient,
/// so every order is checked at once.
pub fn verify_relations<S: Scalar>(ctx: &QContext, m: &WeightModule<S>) -> RelationReport {
    let n = m.dim();
    let id = Matrix::<S>::identity(n);
    let scale = [&m.e, &m.f, &m.k, &m.kinv, &m.h]
        .iter()
        .map(|x| x.max_abs())
        .fold(1.0, f64::max);
    let q2 = S::from_c64(cq(ctx, 2.0));
    let qm2 = S::from_c64(cq(ctx, -2.0));
    let two = S::from_f64(2.0);
    let inv_br1 = S::from_c64(Complex64::new(1.0, 0.0) / cbr(ctx, 1.0));
    let r = ctx.r;

    let mut residuals = Vec::new();
    let mut push = |name: &str, x: Matrix<S>| {
        residuals.push((name.to_string(), x.max_abs() / scale));
    };

    push("KK^-1=1", m.k.matmul(&m.kinv).sub(&id));
    push("K^-1K=1", m.kinv.matmul(&m.k).sub(&id));
    push("KE=q^2EK", m.k.matmul(&m.e).sub(&m.e.matmul(&m.k).scale(q2)));
    push("KF=q^-2FK", m.k.matmul(&m.f).sub(&m.f.matmul(&m.k).scale(qm2)));
    push("HK=KH", m.h.commutator(&m.k));
    push("[H,E]=2E", m.h.commutator(&m.e).sub(&m.e.scale(two)));
    push("[H,F]=-2F", m.h.commutator(&m.f).add(&m.f.scale(two)));
    push(
        "[E,F]",
        m.e.commutator(&m.f).sub(&m.k.sub(&m.kinv).scale(inv_br1)),
    );
    push("E^r=0", m.e.pow(r));
    push("F^r=0", m.f.pow(r));

    // q^H = K, with H = D + N split into its diagonal and nilpotent parts.
    let d = Matrix::diagonal(&m.h.diag());
    let nil = m.h.sub(&d);
    let ipr = S::from_c64(Complex64::new(0.0, PI / ctx.rf()));
    let qd = Matrix::diagonal(&m.h.diag().iter().map(|w| qpow(ctx, *w)).collect::<Vec<_>>());
    let expected = qd.matmul(&id.add(&nil.scale(ipr)));
    let mut qh = m.k.sub(&expected);
    if nil.max_abs() > 0.0 {
        // the closed form above needs N² = 0 and [D, N] = 0
        qh = Matrix::block_diag(&[&qh, &nil.matmul(&nil), &d.commutator(&nil)]);
    }
    push("q^H=K", qh);

    let max_residual = residuals.iter().map(|(_, x)| *x).fold(0.0, f64::max);
    let failed = residuals
        .iter()
        .filter(|(_, x)| !(*x <= ctx.tol))
        .map(|(s, _)| s.clone())
        .collect();
    RelationReport {
        max_residual,
        failed,
        residuals,
    }
}
