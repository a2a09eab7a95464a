//! Acceptance criteria 1 to 9, run sequentially so that each runtime bound
//! is measured without interference. One line is printed per criterion.

use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use unrolled_sl2::deform::{log_hopf_with, log_tangle_invariant_with, LogOptions};
use unrolled_sl2::qnum::{cq, geometric_obstruction, sign};
use unrolled_sl2::rep::*;
use unrolled_sl2::ribbon::{hopf_deviation, Ribbon};
use unrolled_sl2::singlet::*;
use unrolled_sl2::tangle::{color_token, parse_tangle};
use unrolled_sl2::{jet_limit, Jet64, Label, Matrix, QContext, Scalar, C64};

struct Outcome {
    worst: f64,
    bound: f64,
    note: String,
}

impl Outcome {
    fn new(worst: f64, bound: f64) -> Self {
        Outcome {
            worst,
            bound,
            note: String::new(),
        }
    }

    fn note(mut self, s: impl Into<String>) -> Self {
        self.note = s.into();
        self
    }
}

fn ctx(r: u32) -> QContext {
    QContext::new(r).unwrap()
}

fn ribbon(r: u32) -> Ribbon {
    Ribbon::calibrated(&ctx(r)).unwrap()
}

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Deterministic generic weights, away from the integers.
fn generic_weights(n: usize, seed: u64) -> Vec<C64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let whole = rng.gen_range(-3i32..3) as f64;
            c(whole + rng.gen_range(0.07..0.93), rng.gen_range(-0.4..0.4))
        })
        .collect()
}

fn rel(a: C64, b: C64) -> f64 {
    (a - b).norm() / 1f64.max(a.norm()).max(b.norm())
}

fn criterion_1() -> Outcome {
    let mut worst = 0f64;
    let mut count = 0;
    let mut check = |name: String, rep: RelationReport| {
        assert!(rep.passed(), "{name}: {rep:?}");
        worst = worst.max(rep.max_residual);
        count += 1;
    };
    for r in 2..=6 {
        let cx = ctx(r);
        for a in generic_weights(20, u64::from(r)) {
            check(format!("V({a})"), verify_relations(&cx, &typical(&cx, a)));
            check(format!("E({a})"), verify_relations(&cx, &self_ext(&cx, a)));
            let jet = typical(&cx, Jet64::from_c64(a) + cx.eps());
            check(format!("V({a}+eps)"), verify_relations(&cx, &jet));
        }
        for k in -2..=2 {
            check(format!("C({k})"), verify_relations(&cx, &one_dim::<C64>(&cx, k)));
            for i in 0..r - 1 {
                check(format!("S({i},{k})"), verify_relations(&cx, &simple::<C64>(&cx, i, k).unwrap()));
                check(format!("P({i},{k})"), verify_relations(&cx, &projective::<C64>(&cx, i, k).unwrap()));
                for e in [0.3, -0.45] {
                    let m = make_deformable(&cx, i, k, c(e, 0.0)).unwrap();
                    check(format!("X({i},{k},{e})"), verify_relations(&cx, &m));
                }
                let m = make_deformable(&cx, i, k, cx.eps()).unwrap();
                check(format!("X({i},{k},eps)"), verify_relations(&cx, &m));
            }
        }
    }
    Outcome::new(worst, 1e-9).note(format!("{count} modules"))
}

fn criterion_2() -> Outcome {
    let mut worst = 0f64;
    let mut nil = 0f64;
    for r in 2..=6 {
        let cx = ctx(r);
        for i in 0..r - 1 {
            for l in -2..=2 {
                for e in [0.3, -0.3, 0.45, -0.45] {
                    let a = deformable_change_of_basis(&cx, i, l, c(e, 0.0)).unwrap();
                    worst = worst.max(a.intertwining_residual());
                }
                let x0 = Arc::new(make_deformable(&cx, i, l, c(0.0, 0.0)).unwrap());
                let end = hom_space(&cx, &x0, &x0);
                assert_eq!(end.len(), 2, "r={r} i={i} l={l}");
                // the traceless part of the endomorphism space is spanned by x
                let n = x0.dim();
                let id = Matrix::<C64>::identity(n);
                let x = end
                    .iter()
                    .map(|f| {
                        let tr: C64 = f.matrix.diag().iter().sum();
                        f.matrix.sub(&id.scale(tr / n as f64))
                    })
                    .max_by(|a, b| a.max_abs().total_cmp(&b.max_abs()))
                    .unwrap();
                assert!(x.max_abs() > 1e-3, "r={r} i={i} l={l}: no nilpotent part");
                nil = nil.max(x.matmul(&x).max_abs() / x.max_abs().powi(2));
            }
        }
    }
    Outcome::new(worst.max(nil), 1e-9).note(format!("intertwiner {worst:.1e}, x^2 {nil:.1e}"))
}

fn criterion_3() -> Outcome {
    let mut worst = 0f64;
    for r in 2..=6 {
        let cx = ctx(r);
        for i in 0..r - 1 {
            for l in -2..=2 {
                let (lw, rw) = summand_weights(r, i, l);
                let d = unrolled_sl2::ribbon::typical_dim(&cx, Jet64::from_f64(lw) + cx.eps()).unwrap()
                    + unrolled_sl2::ribbon::typical_dim(&cx, Jet64::from_f64(rw) + cx.eps()).unwrap();
                let lim = jet_limit(&d).unwrap();
                let x = f64::from(i + 1);
                let expect = sign(l * (r as i64 - 1) + i as i64 + 1) * (cq(&cx, x) + cq(&cx, -x));
                worst = worst.max((lim - expect).norm());
            }
        }
    }
    Outcome::new(worst, 1e-8)
}

fn criterion_4() -> Outcome {
    let mut worst = 0f64;
    let mut count = 0;
    for r in 2..=6 {
        let rb = ribbon(r);
        let alphas = generic_weights(20, 100 + u64::from(r));
        let betas = generic_weights(20, 200 + u64::from(r));
        for (a, b) in alphas.iter().zip(&betas) {
            let mut closed = vec![Label::Typical(*a)];
            for i in 0..r - 1 {
                for k in -1..=1 {
                    closed.push(Label::Simple { i, k });
                    closed.push(Label::Projective { i, k });
                }
            }
            for z in &closed {
                worst = worst.max(hopf_deviation(&rb, z, *b).unwrap());
                count += 1;
            }
        }
    }
    Outcome::new(worst, 1e-9).note(format!("{count} links"))
}

fn criterion_5() -> Outcome {
    let mut worst = 0f64;
    let mut count = 0;
    for r in 2..=5 {
        let rb = ribbon(r);
        let mut zs: Vec<Label> = generic_weights(3, 300 + u64::from(r))
            .into_iter()
            .map(Label::Typical)
            .collect();
        for i in 0..r - 1 {
            for k in -2..=2 {
                zs.push(Label::Simple { i, k });
                zs.push(Label::Projective { i, k });
            }
        }
        for j in 0..r - 1 {
            for l in -2..=2 {
                for z in &zs {
                    let rep = log_hopf_with(&rb, z, j, l, LogOptions::SCALARS)
                        .unwrap_or_else(|e| panic!("r={r} Z={z} j={j} l={l}: {e}"));
                    let (a, b) = rep.closed_form;
                    worst = worst.max(rel(a, rep.machinery.a)).max(rel(b, rep.machinery.b));
                    count += 1;
                }
            }
        }
    }
    Outcome::new(worst, 1e-8).note(format!("{count} links"))
}

/// A random (1,1)-tangle: open `P(i,l)`, one closed pair, a braid word on
/// three strands with at most six crossings, closed by `evL`/`evR`.
fn random_tangle(rng: &mut ChaCha8Rng, r: u32) -> String {
    let i = rng.gen_range(0..r - 1);
    let l = rng.gen_range(-1..=1);
    let closed = match rng.gen_range(0..4) {
        0 => Label::Simple {
            i: rng.gen_range(0..r - 1),
            k: rng.gen_range(-1..=1),
        },
        1 => Label::Projective {
            i: rng.gen_range(0..r - 1),
            k: rng.gen_range(-1..=1),
        },
        2 => Label::OneDim(rng.gen_range(-1..=1)),
        _ => Label::Typical(c(rng.gen_range(0.07..0.93) + rng.gen_range(-2..2) as f64, 0.0)),
    };
    loop {
        // 0 = open, 1 = closed, 2 = its dual
        let mut word = [0u8, 1, 2];
        let n = rng.gen_range(1..=6);
        let mut slices = Vec::new();
        for _ in 0..n {
            let pos = rng.gen_range(1..=2usize);
            let s = if rng.gen_bool(0.5) { '+' } else { '-' };
            word.swap(pos - 1, pos);
            slices.push(format!("br{s} {pos}"));
        }
        let close = match word {
            [0, 1, 2] => "evR 2",
            [1, 2, 0] => "evR 1",
            [0, 2, 1] => "evL 2",
            [2, 1, 0] => "evL 1",
            _ => continue,
        };
        return format!(
            "open P({i},{l}) | insert 2 {}; {}; {close}",
            color_token(&closed),
            slices.join("; ")
        );
    }
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (mut worst_a, mut worst_b) = (0f64, 0f64);
    let mut nonzero = 0;
    for n in 0..50 {
        let r = 2 + n % 4;
        let rb = ribbon(r);
        let text = random_tangle(&mut rng, r);
        let t = parse_tangle(&text).unwrap_or_else(|e| panic!("{text}: {e}"));
        let res = log_tangle_invariant_with(&rb, &t, LogOptions::SCALARS)
            .unwrap_or_else(|e| panic!("r={r} {text}: {e}"));
        worst_a = worst_a.max(rel(res.a_left, res.a_right));
        worst_b = worst_b.max(rel(res.b, res.b_by_derivative));
        if res.b.norm() > 1e-6 {
            nonzero += 1;
        }
    }
    let pass_b = worst_b < 1e-7;
    Outcome::new(if pass_b { worst_a } else { f64::INFINITY }, 1e-8).note(format!(
        "a {worst_a:.1e}, b {worst_b:.1e}, {nonzero}/50 with b != 0"
    ))
}

fn criterion_7() -> Outcome {
    let mut worst = 0f64;
    let mut count = 0;
    for r in 2..=6 {
        let cx = ctx(r);
        let rb = Ribbon::calibrated(&cx).unwrap();
        let mut xs: Vec<Label> = generic_weights(20, 700 + u64::from(r))
            .into_iter()
            .map(Label::Typical)
            .collect();
        for i in 0..r - 1 {
            for k in -1..=1 {
                xs.push(Label::Simple { i, k });
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(70 + u64::from(r));
        let mut n_cont = 0;
        while n_cont < 20 {
            let e = c(rng.gen_range(0.05..1.0), rng.gen_range(-1.0..1.0));
            if regime_of(&cx, e).map(|g| g.regime) != Ok(Regime::Continuous) {
                continue;
            }
            n_cont += 1;
            let color = Label::Typical(C64::i() * alpha_plus(&cx) * e);
            for x in &xs {
                worst = worst.max(compare_hopf_qdim(&rb, x, &color, e).unwrap().diff);
                count += 1;
            }
        }
        for j in 0..r - 1 {
            for k in -1..=1 {
                let total = 2 * cx.ri() * k + j as i64 + 1 + cx.ri() * (k + 1);
                for delta in [-0.35, 0.0, 0.35] {
                    let im = (total as f64 + delta) / alpha_plus(&cx);
                    let e = c(regime_bound(&cx, c(0.0, im)) - 0.3, im);
                    let color = Label::Projective { i: j, k };
                    for x in xs.iter().skip(15) {
                        worst = worst.max(compare_hopf_qdim(&rb, x, &color, e).unwrap().diff);
                        count += 1;
                    }
                }
            }
        }
    }
    Outcome::new(worst, 1e-9).note(format!("{count} comparisons"))
}

fn criterion_8() -> Outcome {
    let mut worst = 0f64;
    for r in 2..=4 {
        let cx = ctx(r);
        let mut labels: Vec<SingletLabel> = generic_weights(10, 800 + u64::from(r))
            .into_iter()
            .map(SingletLabel::Fock)
            .collect();
        for t in -2..=2 {
            for s in 1..r {
                labels.push(SingletLabel::Atypical { t, s });
            }
        }
        let e = c(0.37, 0.11);
        for x in &labels {
            for y in &labels {
                worst = worst.max(verlinde_hom_check(&cx, x, y, e).unwrap().diff);
            }
        }
    }

    let cx = ctx(2);
    let m = |t, s| SingletLabel::Atypical { t, s };
    let f = SingletLabel::Fock;
    let mut exact = true;
    for (l, mu) in generic_weights(4, 88).chunks(2).map(|p| (p[0], p[1])) {
        let mut e5 = FusionVector::new();
        e5.add(f(l + mu), 1);
        e5.add(f(l + mu + alpha_minus(&cx)), 1);
        exact &= fuse(&cx, &f(l), &f(mu)).same(&e5);
        for t in -2..=2 {
            exact &= fuse(&cx, &m(t, 1), &f(mu)).same(&FusionVector::single(f(mu + alpha_ts(&cx, t, 1))));
        }
    }
    for t in -2..=2 {
        for u in -2..=2 {
            exact &= fuse(&cx, &m(t, 1), &m(u, 1)).same(&FusionVector::single(m(t + u - 1, 1)));
            exact &= fuse(&cx, &m(t, 2), &m(u, 1)).same(&FusionVector::single(m(t + u - 1, 2)));
            let mut e9 = FusionVector::new();
            e9.add(m(t + u - 1, 1), 2);
            e9.add(m(t + u - 2, 1), 1);
            e9.add(m(t + u, 1), 1);
            exact &= fuse(&cx, &m(t, 2), &m(u, 2)).same(&e9);
        }
    }
    Outcome::new(if exact { worst } else { f64::INFINITY }, 1e-9)
        .note(format!("r=2 fusion rules exact: {exact}"))
}

fn criterion_9() -> Outcome {
    let mut worst_beta = 0f64;
    let mut worst_block = 0f64;
    let mut obstruction_ok = true;
    for r in 2..=8 {
        let cx = ctx(r);
        let ru = r as usize;
        for lam in generic_weights(5, 900 + u64::from(r)) {
            let mu = lam + (r as f64 - 1.0);
            worst_beta = worst_beta.max(self_ext_beta(&cx, mu, ru).norm());
            let s = self_ext(&cx, lam);
            assert!(verify_relations(&cx, &s).passed(), "r={r} E({lam})");
            let v = typical(&cx, lam);
            for (g, gv) in [(&s.e, &v.e), (&s.f, &v.f), (&s.k, &v.k), (&s.h, &v.h)] {
                let block = |r0: usize, c0: usize| Matrix::from_fn(ru, ru, |a, b| g[(r0 + a, c0 + b)]);
                // the second copy is a submodule: nothing maps out of it
                worst_block = worst_block.max(block(0, ru).max_abs());
                // submodule and quotient both act as V_λ
                worst_block = worst_block.max(block(ru, ru).sub(gv).max_abs());
                worst_block = worst_block.max(block(0, 0).sub(gv).max_abs());
            }
            // non-split: some generator has a nonzero extension block
            let ext = [&s.e, &s.h]
                .map(|g| Matrix::from_fn(ru, ru, |a, b| g[(ru + a, b)]).max_abs())
                .into_iter()
                .fold(0.0, f64::max);
            assert!(ext > 1e-6);
        }
        for i in 0..r - 1 {
            obstruction_ok &= geometric_obstruction(&cx, i).norm() > 1e-6;
        }
        obstruction_ok &= geometric_obstruction(&cx, r - 1).norm() < 1e-12;
    }
    let worst = if obstruction_ok { worst_beta.max(worst_block) } else { f64::INFINITY };
    Outcome::new(worst, 1e-12).note(format!(
        "beta_r {worst_beta:.1e}, blocks {worst_block:.1e}, sums nonzero: {obstruction_ok}"
    ))
}

/// Number, name, runtime bound in seconds, check.
type Criterion = (u32, &'static str, u64, fn() -> Outcome);

#[test]
fn acceptance() {
    let criteria: [Criterion; 9] = [
        (1, "relation suite", 30, criterion_1),
        (2, "deformable decomposition", 30, criterion_2),
        (3, "modified dimension limit", 5, criterion_3),
        (4, "Hopf calibration", 60, criterion_4),
        (5, "logarithmic Hopf links", 60, criterion_5),
        (6, "random tangle cross-check", 120, criterion_6),
        (7, "qdim vs trace ratio", 30, criterion_7),
        (8, "Verlinde homomorphism", 30, criterion_8),
        (9, "self-extension", 10, criterion_9),
    ];
    let mut failed = Vec::new();
    for (n, name, secs, run) in criteria {
        let start = Instant::now();
        let out = run();
        let took = start.elapsed();
        let ok = out.worst < out.bound && took < Duration::from_secs(secs);
        println!(
            "criterion {n} [{}] {name}: worst {:.2e} < {:.0e}, {:.2}s < {secs}s{}",
            if ok { "PASS" } else { "FAIL" },
            out.worst,
            out.bound,
            took.as_secs_f64(),
            if out.note.is_empty() { String::new() } else { format!(" ({})", out.note) }
        );
        if !ok {
            failed.push(n);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
