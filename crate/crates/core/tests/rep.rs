use std::sync::Arc;

use unrolled_sl2::qnum::{cq, geometric_obstruction};
use unrolled_sl2::rep::*;
use unrolled_sl2::{jet_limit, QContext, C64};

fn c(x: f64) -> C64 {
    C64::new(x, 0.0)
}

#[test]
fn typical_weights_and_relations() {
    let ctx = QContext::new(3).unwrap();
    let m = typical(&ctx, c(0.37));
    assert_eq!(m.dim(), 3);
    let w: Vec<f64> = m.weights.iter().map(|z| z.re).collect();
    assert!((w[0] - 2.37).abs() < 1e-15 && (w[1] - 0.37).abs() < 1e-15);
    assert!(verify_relations(&ctx, &m).passed());
}

#[test]
fn every_constructor_passes_for_small_r() {
    for r in 2..=6 {
        let ctx = QContext::new(r).unwrap();
        for i in 0..r - 1 {
            for k in -2..=2 {
                for m in [
                    simple::<C64>(&ctx, i, k).unwrap(),
                    projective::<C64>(&ctx, i, k).unwrap(),
                    make_deformable(&ctx, i, k, c(0.3)).unwrap(),
                    one_dim(&ctx, k),
                ] {
                    let rep = verify_relations(&ctx, &m);
                    assert!(rep.passed(), "r={r} {}: {:?}", m.label, rep);
                }
                let j = make_deformable(&ctx, i, k, ctx.eps()).unwrap();
                let rep = verify_relations(&ctx, &j);
                assert!(rep.passed(), "r={r} jet X({i},{k}): {:?}", rep);
            }
        }
        let s = self_ext(&ctx, c(0.41));
        let rep = verify_relations(&ctx, &s);
        assert!(rep.passed(), "r={r} selfext {:?}", rep);
    }
}

#[test]
fn f_sign_selection_keeps_minus() {
    for r in 2..=6 {
        let ctx = QContext::new(r).unwrap();
        let sel = surviving_f_sign(&ctx);
        assert_eq!(sel.chosen, FSign::Minus, "r={r} {:?}", sel);
        assert!(sel.minus_residual < 1e-12);
    }
}

#[test]
fn self_ext_beta_r_vanishes() {
    let ctx = QContext::new(2).unwrap();
    let b = self_ext_beta(&ctx, c(0.3 + 1.0), 2);
    assert!(b.norm() < 1e-12);
    assert!(geometric_obstruction(&ctx, 1).norm() < 1e-12);
    let _ = cq(&ctx, 1.0);
}

#[test]
fn change_of_basis_intertwines() {
    for (r, i, l, e) in [(2, 0, 0, 0.3), (3, 1, 1, -0.45), (5, 3, -1, -0.4), (6, 2, 2, 0.45)] {
        let ctx = QContext::new(r).unwrap();
        let a = deformable_change_of_basis(&ctx, i, l, c(e)).unwrap();
        assert!(a.intertwining_residual() < 1e-9, "{r} {i} {l} {e}: {}", a.intertwining_residual());
    }
    let ctx = QContext::new(2).unwrap();
    assert!(deformable_change_of_basis(&ctx, 0, 0, c(1e-8)).is_err());
}

#[test]
fn endomorphisms_of_projective() {
    for r in 2..=5 {
        let ctx = QContext::new(r).unwrap();
        for i in 0..r - 1 {
            let x = projective_nilpotent(&ctx, i, 1).unwrap();
            assert!(x.matrix.matmul(&x.matrix).max_abs() < 1e-9);
            assert!(x.intertwining_residual() < 1e-9);
        }
        let v = Arc::new(typical(&ctx, c(0.37)));
        assert_eq!(hom_space(&ctx, &v, &v).len(), 1);
        let w = Arc::new(typical(&ctx, c(0.81)));
        assert_eq!(hom_space(&ctx, &v, &w).len(), 0);
    }
}

#[test]
fn jet_deformable_limit_matches_projective() {
    let ctx = QContext::new(4).unwrap();
    let j = make_deformable(&ctx, 1, -1, ctx.eps()).unwrap();
    let p = projective::<C64>(&ctx, 1, -1).unwrap();
    for (a, b) in [(&j.e, &p.e), (&j.f, &p.f), (&j.k, &p.k), (&j.h, &p.h)] {
        for s in 0..p.dim() {
            for t in 0..p.dim() {
                assert!((jet_limit(&a[(t, s)]).unwrap() - b[(t, s)]).norm() < 1e-12);
            }
        }
    }
}
