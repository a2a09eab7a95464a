use std::sync::Arc;

use unrolled_sl2::rep::*;
use unrolled_sl2::ribbon::*;
use unrolled_sl2::tangle::*;
use unrolled_sl2::{Label, Matrix, QContext, C64};

fn c(x: f64) -> C64 {
    C64::new(x, 0.0)
}

#[test]
fn calibration_selects_inverse_pivot() {
    for r in 2..=6 {
        let ctx = QContext::new(r).unwrap();
        let (rib, rep) = calibrate(&ctx);
        println!("r={r} {:?}", rep.attempts);
        let rib = rib.unwrap();
        assert_eq!(rib.config.pivot_exponent, 1 - r as i64);
        assert_eq!(rib.config.coproduct, Coproduct::Standard);
    }
}

#[test]
fn braid_inverse_and_twist_inverse() {
    let ctx = QContext::new(3).unwrap();
    let rib = Ribbon::calibrated(&ctx).unwrap();
    let m = typical(&ctx, c(0.37));
    let n = projective::<C64>(&ctx, 1, -1).unwrap();
    let b = rib.braiding_sparse(&m, &n).unwrap();
    let bi = rib.braiding_inverse_sparse(&m, &n).unwrap();
    let dense = |s: &unrolled_sl2::matrix::SparseCols<C64>| {
        let mut x = Matrix::zeros(s.rows, s.cols.len());
        for (j, col) in s.cols.iter().enumerate() {
            for (i, z) in col {
                x[(*i, j)] = *z;
            }
        }
        x
    };
    let prod = dense(&bi).matmul(&dense(&b));
    assert!(prod.sub(&Matrix::identity(prod.rows())).max_abs() < 1e-12);
    for mm in [&m, &n] {
        let t = rib.twist_matrix(mm).unwrap();
        let ti = rib.twist_inverse_matrix(mm).unwrap();
        assert!(t.matmul(&ti).sub(&Matrix::identity(mm.dim())).max_abs() < 1e-10);
        let tl = LinearMap::new(Arc::new(mm.clone()), Arc::new(mm.clone()), t).unwrap();
        assert!(tl.intertwining_residual() < 1e-10);
    }
    let unit = simple::<C64>(&ctx, 0, 0).unwrap();
    assert!(rib.twist_matrix(&unit).unwrap().sub(&Matrix::identity(1)).max_abs() < 1e-14);
}

#[test]
fn braiding_is_natural() {
    let ctx = QContext::new(4).unwrap();
    let rib = Ribbon::calibrated(&ctx).unwrap();
    let m = Arc::new(typical(&ctx, c(0.37)));
    let n = Arc::new(simple::<C64>(&ctx, 2, 1).unwrap());
    let b = rib.braiding(&m, &n).unwrap();
    assert!(b.intertwining_residual() < 1e-10);
}

#[test]
fn modified_dims() {
    let ctx2 = QContext::new(2).unwrap();
    let d = modified_dim(&ctx2, &Label::Typical(c(0.5))).unwrap();
    assert!((d - c(-2f64.sqrt())).norm() < 1e-14);
    let ctx3 = QContext::new(3).unwrap();
    let d = modified_dim(&ctx3, &Label::Projective { i: 0, k: 0 }).unwrap();
    assert!((d - c(-1.0)).norm() < 1e-14);
    let d0 = modified_dim(&ctx3, &Label::Typical(c(0.0))).unwrap();
    assert!((d0 - c(1.0)).norm() < 1e-14);
    assert!(modified_dim(&ctx3, &Label::Typical(c(1.0))).is_err());
    assert!(modified_dim(&ctx3, &Label::Simple { i: 0, k: 0 }).is_err());
}

#[test]
fn hopf_matches_closed_forms() {
    let ctx = QContext::new(3).unwrap();
    let rib = Ribbon::calibrated(&ctx).unwrap();
    for z in [Label::Typical(c(0.3)), Label::Simple { i: 1, k: 1 }, Label::Projective { i: 0, k: -1 }] {
        assert!(hopf_deviation(&rib, &z, c(0.77)).unwrap() < 1e-10);
    }
    let t = parse_tangle("open V(0.5) | coevR; br+ 1; br+ 1; evR").unwrap();
    let phi = eval_tangle(&rib, &t).unwrap();
    let expect = hopf_closed_form(&ctx, &Label::Typical(c(0.5)), c(0.5)).unwrap();
    assert!((phi.matrix[(0, 0)] - expect).norm() < 1e-10);
}
