use unrolled_sl2::ribbon::Ribbon;
use unrolled_sl2::singlet::*;
use unrolled_sl2::{Error, Label, QContext, C64};

fn ctx(r: u32) -> QContext {
    QContext::new(r).unwrap()
}

fn m(t: i64, s: u32) -> SingletLabel {
    SingletLabel::Atypical { t, s }
}

/// A point in the middle region of `S(k, j+1+r(k+1))`, left of `B`.
fn strip_eps(c: &QContext, j: u32, k: i64, delta: f64) -> C64 {
    let total = 2 * c.ri() * k + j as i64 + 1 + c.ri() * (k + 1);
    let im = (total as f64 + delta) / alpha_plus(c);
    let b = regime_bound(c, C64::new(0.0, im));
    C64::new(b - 0.2, im)
}

#[test]
fn regime_examples() {
    let c = ctx(2);
    assert_eq!(regime_of(&c, C64::new(0.3, 0.0)).unwrap().regime, Regime::Continuous);
    let reg = regime_of(&c, C64::new(-0.6, 0.0)).unwrap();
    assert!((reg.b + 0.5).abs() < 1e-12);
    assert_eq!(reg.regime, Regime::Strip { k: 0, m: 0 });
    let wall = C64::new(-3.0, alpha_plus(&c) * 1.0 / 8.0);
    assert!(matches!(regime_of(&c, wall), Err(Error::Boundary(_))));
    let q = qdim_reg(&c, &m(2, 1), C64::new(-0.6, 0.0)).unwrap();
    assert!((q + 1.0).norm() < 1e-12);
}

#[test]
fn regime_locally_constant() {
    for r in 2..=5 {
        let c = ctx(r);
        for j in 0..r - 1 {
            for k in -1..=1 {
                let e = strip_eps(&c, j, k, 0.21);
                let a = regime_of(&c, e).unwrap().regime;
                let b = regime_of(&c, e + C64::new(1e-6, -1e-6)).unwrap().regime;
                assert_eq!(a, b);
                assert!(matches!(a, Regime::Strip { .. }));
            }
        }
    }
}

#[test]
fn vacuum_has_unit_dimension() {
    for r in 2..=5 {
        for e in [C64::new(0.3, 0.1), C64::new(-2.0, 0.2), C64::new(1.1, -0.7)] {
            let q = qdim_reg(&ctx(r), &SingletLabel::VACUUM, e).unwrap();
            assert!((q - 1.0).norm() < 1e-12, "r={r} eps={e}: {q}");
        }
    }
}

#[test]
fn verlinde_multiplicative() {
    for r in 2..=4 {
        let c = ctx(r);
        let mut labels: Vec<SingletLabel> = (0..10)
            .map(|n| SingletLabel::Fock(C64::new(0.13 + 0.29 * n as f64, 0.05 * n as f64 - 0.2)))
            .collect();
        for t in -2..=2 {
            for s in 1..r {
                labels.push(m(t, s));
            }
        }
        let e = C64::new(0.37, 0.11);
        for x in &labels {
            for y in &labels {
                let rep = verlinde_hom_check(&c, x, y, e).unwrap();
                assert!(rep.diff < 1e-9, "r={r} {x} x {y}: {rep:?}");
            }
        }
    }
}

#[test]
fn r2_fusion_equations() {
    let c = ctx(2);
    let am = alpha_minus(&c);
    let (l, mu) = (C64::new(0.31, 0.0), C64::new(-0.77, 0.2));
    let f = SingletLabel::Fock;

    let mut e5 = FusionVector::new();
    e5.add(f(l + mu), 1);
    e5.add(f(l + mu + am), 1);
    assert!(fuse(&c, &f(l), &f(mu)).same(&e5));

    for t in -2..=2 {
        let e6 = FusionVector::single(f(mu + alpha_ts(&c, t, 1)));
        assert!(fuse(&c, &m(t, 1), &f(mu)).same(&e6));
        for u in -2..=2 {
            assert!(fuse(&c, &m(t, 1), &m(u, 1)).same(&FusionVector::single(m(t + u - 1, 1))));
            assert!(fuse(&c, &m(t, 2), &m(u, 1)).same(&FusionVector::single(m(t + u - 1, 2))));
            let mut e9 = FusionVector::new();
            e9.add(m(t + u - 1, 1), 2);
            e9.add(m(t + u - 2, 1), 1);
            e9.add(m(t + u, 1), 1);
            let got = fuse(&c, &m(t, 2), &m(u, 2));
            assert!(got.same(&e9), "{got} vs {e9}");
        }
    }
}

#[test]
fn phi_round_trip() {
    for r in 2..=6u32 {
        let c = ctx(r);
        for i in 0..r - 1 {
            for k in -3..=3 {
                let x = Label::Simple { i, k };
                assert_eq!(phi_inverse(&c, &phi(&c, &x).unwrap()).unwrap(), x);
            }
        }
        for n in 0..20 {
            let a = C64::new(0.17 + 0.61 * n as f64, 0.3 - 0.07 * n as f64);
            let back = phi_inverse(&c, &phi(&c, &Label::Typical(a)).unwrap()).unwrap();
            match back {
                Label::Typical(b) => assert!((a - b).norm() < 1e-12),
                other => panic!("{other}"),
            }
        }
    }
    let c = ctx(3);
    assert_eq!(phi(&c, &Label::Simple { i: 0, k: 0 }).unwrap(), SingletLabel::VACUUM);
    assert!(matches!(phi(&c, &Label::Projective { i: 0, k: 0 }), Err(Error::Domain(_))));
}

#[test]
fn comparison_both_regimes() {
    for r in 2..=4 {
        let c = ctx(r);
        let rb = Ribbon::calibrated(&c).unwrap();
        let mut xs = vec![Label::Typical(C64::new(0.43, 0.0)), Label::Typical(C64::new(-1.7, 0.3))];
        for i in 0..r - 1 {
            for k in -1..=1 {
                xs.push(Label::Simple { i, k });
            }
        }
        for e in [C64::new(0.21, 0.13), C64::new(0.05, -0.4)] {
            let color = Label::Typical(C64::new(0.0, 1.0) * alpha_plus(&c) * e);
            for x in &xs {
                let rep = compare_hopf_qdim(&rb, x, &color, e).unwrap();
                assert!(rep.diff < 1e-9, "r={r} {x} eps={e}: {rep:?}");
            }
        }
        for j in 0..r - 1 {
            for k in -1..=1 {
                let e = strip_eps(&c, j, k, 0.3);
                let color = Label::Projective { i: j, k };
                for x in &xs {
                    let rep = compare_hopf_qdim(&rb, x, &color, e).unwrap();
                    assert!(rep.diff < 1e-9, "r={r} j={j} k={k} {x}: {rep:?}");
                }
            }
        }
    }
}
