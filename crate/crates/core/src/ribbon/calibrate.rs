use crate::error::{Error, Result};
use crate::qnum::{qbracket, qpow, QContext};
use crate::rep::{typical, Coproduct};
use crate::tangle::hopf;
use crate::{Label, C64};

use super::trace::scalar_of;
use super::{Ribbon, RibbonConfig};

/// Candidate conventions in the order they are tried. The first entry of
/// each pair multiplies `r−1` to give the pivot exponent.
pub const CALIBRATION_ORDER: [(i64, Coproduct); 4] = [
    (1, Coproduct::Standard),
    (-1, Coproduct::Standard),
    (1, Coproduct::Opposite),
    (-1, Coproduct::Opposite),
];

#[derive(Debug, Clone, PartialEq)]
pub struct CalibrationAttempt {
    pub pivot_exponent: i64,
    pub coproduct: Coproduct,
    /// Largest relative deviation from the closed forms.
    pub max_rel_error: f64,
    /// Largest violation of `ev'` being a module map.
    pub ev_prime_residual: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CalibrationReport {
    pub attempts: Vec<CalibrationAttempt>,
    pub chosen: Option<RibbonConfig>,
}

/// Closed form of the open Hopf link `Φ_{Z, V_β}` as a multiple of the identity.
pub fn hopf_closed_form(ctx: &QContext, closed: &Label, beta: C64) -> Result<C64> {
    let r = ctx.rf();
    let ratio = |n: f64| qbracket(ctx, beta * n) / qbracket(ctx, beta);
    match closed {
        Label::Typical(a) => Ok(ratio(r) * qpow(ctx, *a * beta)),
        Label::Simple { i, k } => Ok(ratio(*i as f64 + 1.0) * qpow(ctx, beta * (*k as f64 * r))),
        Label::Projective { i, k } => {
            let m = r - 1.0 - *i as f64;
            Ok(ratio(r)
                * qpow(ctx, beta * (*k as f64 * r))
                * (qpow(ctx, beta * m) + qpow(ctx, -beta * m)))
        }
        other => Err(Error::Domain(format!("no closed Hopf form for {other}"))),
    }
}

/// Relative deviation of the engine's `Φ_{Z, V_β}` from its closed form.
pub fn hopf_deviation(ribbon: &Ribbon, closed: &Label, beta: C64) -> Result<f64> {
    let phi = hopf(ribbon, closed, &Label::Typical(beta))?;
    let (c, dev) = scalar_of(&phi.matrix);
    let expect = hopf_closed_form(&ribbon.ctx, closed, beta)?;
    let d = ((c - expect).norm() / 1f64.max(expect.norm())).max(dev);
    Ok(if d.is_nan() { f64::INFINITY } else { d })
}

/// How far `ev'_M` is from commuting with E, F, K on `M ⊗ M*`.
fn ev_prime_residual(ribbon: &Ribbon, alpha: C64) -> f64 {
    let m = typical(&ribbon.ctx, alpha);
    let md = ribbon.dual(&m);
    let mm = ribbon.tensor(&m, &md);
    let d = m.dim();
    let mut row = vec![C64::new(0.0, 0.0); d * d];
    for (i, z) in ribbon.ev_prime_sparse(&m) {
        row[i] = z;
    }
    let apply = |g: &crate::Matrix<C64>, counit: C64| {
        (0..d * d)
            .map(|j| {
                let s: C64 = (0..d * d).map(|i| row[i] * g[(i, j)]).sum();
                (s - counit * row[j]).norm()
            })
            .fold(0.0, f64::max)
    };
    let zero = C64::new(0.0, 0.0);
    let one = C64::new(1.0, 0.0);
    apply(&mm.e, zero).max(apply(&mm.f, zero)).max(apply(&mm.k, one))
}

fn attempt(ctx: &QContext, config: RibbonConfig) -> Result<CalibrationAttempt> {
    let ribbon = Ribbon::with_config(*ctx, config);
    let betas = [C64::new(0.37, 0.0), C64::new(-1.213, 0.29)];
    let mut closed = vec![Label::Typical(C64::new(0.61, 0.0)), Label::Typical(C64::new(2.3, -0.4))];
    for i in 0..ctx.r - 1 {
        for k in -1..=1 {
            closed.push(Label::Simple { i, k });
            closed.push(Label::Projective { i, k });
        }
    }
    let mut worst = 0f64;
    for b in betas {
        for z in &closed {
            worst = worst.max(hopf_deviation(&ribbon, z, b)?);
        }
    }
    let evp = ev_prime_residual(&ribbon, C64::new(0.43, 0.0));
    let passed = worst < ctx.tol && evp < ctx.tol;
    Ok(CalibrationAttempt {
        pivot_exponent: config.pivot_exponent,
        coproduct: config.coproduct,
        max_rel_error: worst,
        ev_prime_residual: evp,
        passed,
    })
}

/// Tries the candidate conventions in [`CALIBRATION_ORDER`] and returns the
/// first that reproduces the closed Hopf forms.
pub fn calibrate(ctx: &QContext) -> (Result<Ribbon>, CalibrationReport) {
    let mut report = CalibrationReport {
        attempts: Vec::new(),
        chosen: None,
    };
    for (s, cop) in CALIBRATION_ORDER {
        let config = RibbonConfig {
            pivot_exponent: s * (ctx.ri() - 1),
            coproduct: cop,
            calibrated: false,
        };
        let a = match attempt(ctx, config) {
            Ok(a) => a,
            Err(e) => return (Err(e), report),
        };
        let ok = a.passed;
        report.attempts.push(a);
        if ok {
            let config = RibbonConfig {
                calibrated: true,
                ..config
            };
            report.chosen = Some(config);
            let ribbon = Ribbon {
                ctx: *ctx,
                config,
                strict: true,
            };
            return (Ok(ribbon), report);
        }
    }
    let summary = report
        .attempts
        .iter()
        .map(|a| format!("K^{} {:?}: {:.3e}", a.pivot_exponent, a.coproduct, a.max_rel_error))
        .collect::<Vec<_>>()
        .join("; ");
    (Err(Error::CalibrationFailed(summary)), report)
}
