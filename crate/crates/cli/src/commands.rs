use num_complex::Complex64;
use rayon::prelude::*;
use serde_json::Value;
use unrolled_sl2::deform::{dim_limit_check, log_hopf_with, log_tangle_invariant_with, LogOptions};
use unrolled_sl2::rep::{make_module, verify_relations, RelationReport};
use unrolled_sl2::ribbon::{calibrate, hopf_closed_form, hopf_deviation, modified_trace, Ribbon};
use unrolled_sl2::scalar::fmt_complex;
use unrolled_sl2::singlet::{
    alpha_plus, compare_hopf_qdim, fuse, phi_sum, qdim_in, reduce_strip, regime_of, verlinde_hom_check, Regime,
};
use unrolled_sl2::tangle::{decompose_endo, eval_tangle, hopf, parse_tangle};
use unrolled_sl2::{Error, Jet64, Label, Matrix, QContext, Scalar, C64};

use crate::literal::{parse_complex, parse_module_label, parse_singlet};
use crate::output::{cnum, num, text, Obj, Report, Table};
use crate::{Cli, Command, Global, SweepKind};

pub struct Failure {
    pub code: u8,
    pub message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Mismatch { .. }
            | Error::CrossCheck { .. }
            | Error::CalibrationFailed(_)
            | Error::Pole { .. }
            | Error::NonScalar(_)
            | Error::NotEndomorphism(_)
            | Error::Basis(_)
            | Error::Singular(_) => 1,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type Outcome = Result<Report, Failure>;

pub fn run(cli: &Cli) -> Outcome {
    let g = &cli.global;
    let ctx = context(g, g.r)?;
    match &cli.command {
        Command::Repcheck { label, jet, dump } => repcheck(&ctx, label, *jet, *dump),
        Command::Hopf { closed, open } => hopf_cmd(&ctx, closed, open),
        Command::Loghopf { z, j, l } => loghopf(&ctx, z, *j, *l),
        Command::Tangle { expr } => tangle(&ctx, expr),
        Command::Qdim { label, eps } => qdim(&ctx, label, eps),
        Command::Fusion { x, y, eps } => fusion(&ctx, x, y, eps.as_deref()),
        Command::Compare { x, eps, color } => compare(&ctx, x, eps, color.as_deref()),
        Command::Sweep { kind, r_range } => sweep(g, *kind, r_range),
        Command::Calibrate => calibrate_cmd(&ctx),
    }
}

fn context(g: &Global, r: u32) -> Result<QContext, Failure> {
    QContext::with_options(r, g.tol, g.jet_order).map_err(|e| usage(e.to_string()))
}

fn ribbon(ctx: &QContext) -> Result<Ribbon, Failure> {
    Ok(Ribbon::calibrated(ctx)?)
}

fn label_arg(text: &str) -> Result<Label, Failure> {
    parse_module_label(text).map_err(|e| usage(format!("`{text}`: {e}")))
}

fn complex_arg(text: &str) -> Result<C64, Failure> {
    parse_complex(text).map_err(usage)
}

fn rel(a: C64, b: C64) -> f64 {
    (a - b).norm() / 1f64.max(a.norm()).max(b.norm())
}

/// The common value of the diagonal when `m` is a multiple of the identity.
fn scalar_part(m: &Matrix<C64>) -> (C64, f64) {
    let c = m[(0, 0)];
    let dev = m.sub(&Matrix::identity(m.rows()).scale(c)).max_abs();
    (c, dev / 1f64.max(c.norm()))
}

fn matrix_json(m: &Matrix<C64>) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array((0..m.cols()).map(|j| cnum(m[(i, j)])).collect()))
            .collect(),
    )
}

fn relations_json(rep: &RelationReport) -> Obj {
    let mut res = Obj::new();
    for (name, x) in &rep.residuals {
        res.put(name, num(*x));
    }
    Obj::new()
        .set("max_residual", num(rep.max_residual))
        .set("failed", rep.failed.clone())
        .set("residuals", res)
}

/// Replaces every continuous parameter `p` of the label by the jet `p + ε`.
fn jet_label(ctx: &QContext, label: &Label) -> Result<unrolled_sl2::rep::ModuleLabel<Jet64>, Failure> {
    use unrolled_sl2::rep::ModuleLabel as L;
    let lift = |z: C64| Jet64::from_c64(z) + ctx.eps();
    Ok(match label {
        Label::Typical(a) => L::Typical(lift(*a)),
        Label::SelfExt(a) => L::SelfExt(lift(*a)),
        Label::DeformX { i, l, eps } => L::DeformX {
            i: *i,
            l: *l,
            eps: lift(*eps),
        },
        other => L::lift(other),
    })
}

fn repcheck(ctx: &QContext, label: &str, jet: bool, dump: bool) -> Outcome {
    let parsed = label_arg(label)?;
    let mut report = Report::new("repcheck", Some(ctx.r));
    report.body.put("label", parsed.to_string());
    report.body.put("jet", jet);
    let (rel_report, dim) = if jet {
        let m = make_module::<Jet64>(ctx, &jet_label(ctx, &parsed)?)?;
        (verify_relations(ctx, &m), m.dim())
    } else {
        let m = make_module::<C64>(ctx, &parsed)?;
        if dump {
            let weights: Vec<Value> = m.weights.iter().map(|w| cnum(*w)).collect();
            report.body.put(
                "module",
                Obj::new()
                    .set("label", m.label.to_string())
                    .set("r", ctx.r)
                    .set("dim", m.dim())
                    .set("weights", weights)
                    .set("E", matrix_json(&m.e))
                    .set("F", matrix_json(&m.f))
                    .set("K", matrix_json(&m.k))
                    .set("H", matrix_json(&m.h)),
            );
        }
        (verify_relations(ctx, &m), m.dim())
    };
    report.body.put("dim", dim);
    report.ok = rel_report.passed();
    report.body.put("relations", relations_json(&rel_report));
    report.table = Some(Table {
        headers: vec!["relation", "residual", "passed"],
        rows: rel_report
            .residuals
            .iter()
            .map(|(n, x)| vec![n.clone(), text(*x), (*x <= ctx.tol).to_string()])
            .collect(),
    });
    Ok(report)
}

fn hopf_cmd(ctx: &QContext, closed: &str, open: &str) -> Outcome {
    let (zc, zo) = (label_arg(closed)?, label_arg(open)?);
    let rb = ribbon(ctx)?;
    let phi = hopf(&rb, &zc, &zo)?;
    let mut report = Report::new("hopf", Some(ctx.r));
    report.body.put("closed", zc.to_string());
    report.body.put("open", zo.to_string());
    report.body.put("dim", phi.matrix.rows());
    let (c, dev) = scalar_part(&phi.matrix);
    report.body.put("scalar_deviation", num(dev));
    match &zo {
        Label::Typical(beta) => {
            report.body.put("scalar", cnum(c));
            if let Ok(expect) = hopf_closed_form(ctx, &zc, *beta) {
                let diff = rel(c, expect).max(dev);
                report.body.put("closed_form", cnum(expect));
                report.body.put("diff", num(diff));
                report.ok = diff <= ctx.tol;
            }
        }
        Label::Projective { i, k } => {
            let d = decompose_endo(ctx, &phi.matrix, *i, *k)?;
            report.body.put("a", cnum(d.a));
            report.body.put("b", cnum(d.b));
            report.body.put("residual", num(d.residual));
            report.ok = d.residual <= ctx.tol.sqrt();
        }
        _ if dev <= ctx.tol => report.body.put("scalar", cnum(c)),
        _ => {}
    }
    Ok(report)
}

fn loghopf(ctx: &QContext, z: &str, j: u32, l: i64) -> Outcome {
    let zl = label_arg(z)?;
    let rb = ribbon(ctx)?;
    let rep = log_hopf_with(&rb, &zl, j, l, LogOptions::ALL)?;
    let mut report = Report::new("loghopf", Some(ctx.r));
    let pair = |p: (C64, C64)| Obj::new().set("a", cnum(p.0)).set("b", cnum(p.1));
    report.body.put("Z", zl.to_string());
    report.body.put("j", j);
    report.body.put("l", l);
    report.body.put("a", cnum(rep.machinery.a));
    report.body.put("b", cnum(rep.machinery.b));
    report.body.put("b_by_derivative", cnum(rep.result.b_by_derivative));
    report.body.put("trace", cnum(rep.result.trace));
    report.body.put("closed_form", pair(rep.closed_form));
    report.body.put("printed_form", pair(rep.printed_form));
    report.body.put("printed_form_agrees", rep.printed_form_agrees);
    if let Some(d) = rep.result.direct_endo {
        report.body.put("direct", pair((d.a, d.b)));
    }
    Ok(report)
}

fn tangle(ctx: &QContext, expr: &str) -> Outcome {
    let t = parse_tangle(expr).map_err(|e| usage(e.to_string()))?;
    let rb = ribbon(ctx)?;
    let mut report = Report::new("tangle", Some(ctx.r));
    report.body.put("open", t.open_color.to_string());
    report.body.put("slices", t.slices.len());
    match &t.open_color {
        Label::Projective { .. } => {
            let res = log_tangle_invariant_with(&rb, &t, LogOptions::SCALARS)?;
            report.body.put("trace", cnum(res.trace));
            report.body.put("a", cnum(res.a));
            report.body.put("a_left", cnum(res.a_left));
            report.body.put("a_right", cnum(res.a_right));
            report.body.put("b", cnum(res.b));
            report.body.put("b_by_derivative", cnum(res.b_by_derivative));
            report.body.put("cross_check_residual", num(res.residual_cross_check));
        }
        open => {
            let f = eval_tangle(&rb, &t)?;
            let (c, dev) = scalar_part(&f.matrix);
            report.body.put("dim", f.matrix.rows());
            report.body.put("scalar_deviation", num(dev));
            if dev <= ctx.tol {
                report.body.put("scalar", cnum(c));
            }
            if let Label::Typical(_) = open {
                report.body.put("invariant", cnum(modified_trace(ctx, open, &f.matrix)?));
            }
            if f.matrix.rows() <= 16 {
                report.body.put("matrix", matrix_json(&f.matrix));
            }
        }
    }
    Ok(report)
}

fn qdim(ctx: &QContext, label: &str, eps: &str) -> Outcome {
    let x = parse_singlet(label).map_err(usage)?;
    let e = complex_arg(eps)?;
    let reg = regime_of(ctx, e)?;
    let q = qdim_in(ctx, &x, &reg);
    let mut report = Report::new("qdim", Some(ctx.r));
    report.body.put("label", x.to_string());
    report.body.put("eps", cnum(e));
    report.body.put("regime", reg.regime.to_string());
    report.body.put("bound", num(reg.b));
    report.body.put("in_range", x.in_range(ctx.r));
    report.body.put("qdim", cnum(q));
    report.table = Some(Table {
        headers: vec!["label", "eps", "regime", "qdim_re", "qdim_im"],
        rows: vec![vec![
            x.to_string(),
            fmt_complex(e),
            reg.regime.to_string(),
            text(q.re),
            text(q.im),
        ]],
    });
    Ok(report)
}

fn fusion(ctx: &QContext, x: &str, y: &str, eps: Option<&str>) -> Outcome {
    let (a, b) = (parse_singlet(x).map_err(usage)?, parse_singlet(y).map_err(usage)?);
    let product = fuse(ctx, &a, &b);
    let mut report = Report::new("fusion", Some(ctx.r));
    report.body.put("x", a.to_string());
    report.body.put("y", b.to_string());
    let terms: Vec<Value> = product
        .terms()
        .iter()
        .map(|(l, n)| Obj::new().set("label", l.to_string()).set("multiplicity", *n).into())
        .collect();
    report.body.put("product", terms);
    let out: Vec<String> = product.out_of_range(ctx.r).iter().map(|l| l.to_string()).collect();
    report.body.put("out_of_range", out);
    if let Some(eps) = eps {
        let e = complex_arg(eps)?;
        let v = verlinde_hom_check(ctx, &a, &b, e)?;
        report.body.put("eps", cnum(e));
        report.body.put("qdim_product", cnum(v.lhs));
        report.body.put("qdim_x_times_qdim_y", cnum(v.rhs));
        report.body.put("diff", num(v.diff));
        report.ok = v.diff <= ctx.tol;
    }
    report.table = Some(Table {
        headers: vec!["label", "multiplicity"],
        rows: product
            .terms()
            .iter()
            .map(|(l, n)| vec![l.to_string(), n.to_string()])
            .collect(),
    });
    Ok(report)
}

/// The open color whose Hopf trace matches `qdim` at `eps`.
fn default_color(ctx: &QContext, eps: C64) -> Result<Label, Failure> {
    match regime_of(ctx, eps)?.regime {
        Regime::Continuous => Ok(Label::Typical(Complex64::i() * alpha_plus(ctx) * eps)),
        Regime::Strip { k, m } => {
            for kk in k - 2..=k + 2 {
                for j in 0..ctx.r - 1 {
                    if reduce_strip(ctx.r, kk, j as i64 + 1 + ctx.ri() * (kk + 1)) == (k, m) {
                        return Ok(Label::Projective { i: j, k: kk });
                    }
                }
            }
            Err(usage(format!(
                "no projective color P(j,k) matches strip ({k},{m}); pass --color"
            )))
        }
    }
}

fn compare(ctx: &QContext, x: &str, eps: &str, color: Option<&str>) -> Outcome {
    let xl = label_arg(x)?;
    let e = complex_arg(eps)?;
    let color = match color {
        Some(c) => label_arg(c)?,
        None => default_color(ctx, e)?,
    };
    let rb = ribbon(ctx)?;
    let rep = compare_hopf_qdim(&rb, &xl, &color, e)?;
    let image: Vec<String> = phi_sum(ctx, &xl)?
        .terms()
        .iter()
        .map(|(l, n)| format!("{n}*{l}"))
        .collect();
    let mut report = Report::new("compare", Some(ctx.r));
    report.body.put("x", xl.to_string());
    report.body.put("image", image);
    report.body.put("eps", cnum(e));
    report.body.put("color", color.to_string());
    report.body.put("regime", rep.regime.to_string());
    report.body.put("qdim", cnum(rep.lhs));
    report.body.put("trace_ratio", cnum(rep.rhs));
    report.body.put("diff", num(rep.diff));
    report.ok = rep.diff <= ctx.tol;
    Ok(report)
}

fn calibrate_cmd(ctx: &QContext) -> Outcome {
    let (result, cal) = calibrate(ctx);
    let mut report = Report::new("calibrate", Some(ctx.r));
    let attempts: Vec<Value> = cal
        .attempts
        .iter()
        .map(|a| {
            Obj::new()
                .set("pivot_exponent", a.pivot_exponent)
                .set("coproduct", format!("{:?}", a.coproduct))
                .set("max_rel_error", num(a.max_rel_error))
                .set("ev_prime_residual", num(a.ev_prime_residual))
                .set("passed", a.passed)
                .into()
        })
        .collect();
    report.body.put("attempts", attempts);
    match (&result, cal.chosen) {
        (Ok(_), Some(c)) => {
            report.body.put(
                "chosen",
                Obj::new()
                    .set("pivot", format!("K^{}", c.pivot_exponent))
                    .set("pivot_exponent", c.pivot_exponent)
                    .set("coproduct", format!("{:?}", c.coproduct)),
            );
        }
        _ => {
            report.body.put("chosen", Value::Null);
            report.ok = false;
        }
    }
    if let Err(e) = result {
        report.body.put("error", e.to_string());
    }
    report.table = Some(Table {
        headers: vec!["pivot_exponent", "coproduct", "max_rel_error", "ev_prime_residual", "passed"],
        rows: cal
            .attempts
            .iter()
            .map(|a| {
                vec![
                    a.pivot_exponent.to_string(),
                    format!("{:?}", a.coproduct),
                    text(a.max_rel_error),
                    text(a.ev_prime_residual),
                    a.passed.to_string(),
                ]
            })
            .collect(),
    });
    Ok(report)
}

fn parse_range(text: &str) -> Result<(u32, u32), Failure> {
    let bad = || usage(format!("`{text}` is not a range like 2..5"));
    let (lo, hi) = match text.split_once("..") {
        Some((a, b)) => {
            let b = b.strip_prefix('=').unwrap_or(b);
            (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?)
        }
        None => {
            let v = text.trim().parse().map_err(|_| bad())?;
            (v, v)
        }
    };
    if lo < 2 || hi < lo {
        return Err(usage(format!("range {lo}..{hi} must satisfy 2 <= lo <= hi")));
    }
    Ok((lo, hi))
}

struct Row {
    r: u32,
    item: String,
    value: f64,
    ok: bool,
}

/// One unit of sweep work.
enum Point {
    Module(Label),
    Dim { i: u32, l: i64 },
    Hopf { closed: Label, beta: C64 },
    LogHopf { z: Label, j: u32, l: i64 },
}

fn sweep_grid(kind: SweepKind, r: u32) -> Vec<(u32, Point)> {
    let v = |a: f64, b: f64| Label::Typical(C64::new(a, b));
    let atypical = |k_range: std::ops::RangeInclusive<i64>| {
        let mut out = Vec::new();
        for k in k_range {
            for i in 0..r - 1 {
                out.push(Label::Simple { i, k });
                out.push(Label::Projective { i, k });
            }
        }
        out
    };
    let points: Vec<Point> = match kind {
        SweepKind::Relations => {
            let mut out = vec![v(0.37, 0.0), v(-1.21, 0.4), Label::SelfExt(C64::new(0.29, 0.0))];
            for k in -2..=2 {
                out.push(Label::OneDim(k));
                for i in 0..r - 1 {
                    out.push(Label::Simple { i, k });
                    out.push(Label::Projective { i, k });
                    out.push(Label::DeformX {
                        i,
                        l: k,
                        eps: C64::new(0.3, 0.0),
                    });
                }
            }
            out.into_iter().map(Point::Module).collect()
        }
        SweepKind::Dims => (0..r - 1)
            .flat_map(|i| (-2..=2).map(move |l| Point::Dim { i, l }))
            .collect(),
        SweepKind::Hopf => {
            let mut closed = vec![v(0.61, 0.0)];
            closed.extend(atypical(-1..=1));
            [C64::new(0.37, 0.0), C64::new(-1.213, 0.29)]
                .into_iter()
                .flat_map(|beta| {
                    closed.iter().map(move |z| Point::Hopf {
                        closed: z.clone(),
                        beta,
                    })
                })
                .collect()
        }
        SweepKind::Loghopf => {
            let mut zs = vec![v(0.37, 0.11)];
            zs.extend(atypical(-1..=1));
            let mut out = Vec::new();
            for j in 0..r - 1 {
                for l in -1..=1 {
                    out.extend(zs.iter().map(|z| Point::LogHopf { z: z.clone(), j, l }));
                }
            }
            out
        }
    };
    points.into_iter().map(|p| (r, p)).collect()
}

fn sweep_point(g: &Global, (r, point): (u32, Point)) -> Row {
    let ctx = match context(g, r) {
        Ok(c) => c,
        Err(e) => {
            return Row {
                r,
                item: e.message,
                value: f64::INFINITY,
                ok: false,
            }
        }
    };
    let (item, tol, value) = match point {
        Point::Module(label) => (
            label.to_string(),
            ctx.tol,
            make_module::<C64>(&ctx, &label).map(|m| verify_relations(&ctx, &m).max_residual),
        ),
        Point::Dim { i, l } => (format!("d(X({i},{l}))"), 1e-8, dim_limit_check(&ctx, i, l).map(|d| d.diff)),
        Point::Hopf { closed, beta } => (
            format!("{closed} around V({})", fmt_complex(beta)),
            ctx.tol,
            Ribbon::calibrated(&ctx).and_then(|rb| hopf_deviation(&rb, &closed, beta)),
        ),
        Point::LogHopf { z, j, l } => (
            format!("{z} around P({j},{l})"),
            1e-8,
            Ribbon::calibrated(&ctx)
                .and_then(|rb| log_hopf_with(&rb, &z, j, l, LogOptions::SCALARS))
                .map(|rep| {
                    rel(rep.machinery.a, rep.closed_form.0).max(rel(rep.machinery.b, rep.closed_form.1))
                }),
        ),
    };
    match value {
        Ok(x) => Row {
            r,
            item,
            value: x,
            ok: x <= tol,
        },
        Err(e) => Row {
            r,
            item: format!("{item}: {e}"),
            value: f64::INFINITY,
            ok: false,
        },
    }
}

fn sweep(g: &Global, kind: SweepKind, range: &str) -> Outcome {
    let (lo, hi) = parse_range(range)?;
    let grid: Vec<_> = (lo..=hi).flat_map(|r| sweep_grid(kind, r)).collect();
    // indexed parallel iterators collect in grid order
    let rows: Vec<Row> = grid.into_par_iter().map(|p| sweep_point(g, p)).collect();
    let mut report = Report::new("sweep", None);
    report.body.put("kind", format!("{kind:?}").to_lowercase());
    report.body.put("r_range", vec![lo, hi]);
    report.body.put("points", rows.len());
    report.body.put("failures", rows.iter().filter(|x| !x.ok).count());
    report.body.put(
        "max_value",
        num(rows.iter().map(|x| x.value).fold(0.0, f64::max)),
    );
    let json_rows: Vec<Value> = rows
        .iter()
        .map(|x| {
            Obj::new()
                .set("r", x.r)
                .set("item", x.item.clone())
                .set("value", num(x.value))
                .set("ok", x.ok)
                .into()
        })
        .collect();
    report.body.put("rows", json_rows);
    report.ok = rows.iter().all(|x| x.ok);
    report.table = Some(Table {
        headers: vec!["r", "item", "value", "ok"],
        rows: rows
            .iter()
            .map(|x| vec![x.r.to_string(), x.item.clone(), text(x.value), x.ok.to_string()])
            .collect(),
    });
    Ok(report)
}
