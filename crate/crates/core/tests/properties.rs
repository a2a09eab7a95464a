use std::sync::Arc;

use proptest::prelude::*;
use unrolled_sl2::qnum::{cbr, cint, cq};
use unrolled_sl2::rep::{projective, simple, tensor, typical, WeightModule};
use unrolled_sl2::ribbon::Ribbon;
use unrolled_sl2::tangle::{eval_tangle, parse_tangle};
use unrolled_sl2::{Matrix, QContext, C64};

fn config() -> ProptestConfig {
    ProptestConfig {
        cases: 24,
        ..ProptestConfig::default()
    }
}

fn dense(s: &unrolled_sl2::matrix::SparseCols<C64>) -> Matrix<C64> {
    let mut x = Matrix::zeros(s.rows, s.cols.len());
    for (j, col) in s.cols.iter().enumerate() {
        for (i, z) in col {
            x[(*i, j)] = *z;
        }
    }
    x
}

fn braid(rb: &Ribbon, m: &WeightModule<C64>, n: &WeightModule<C64>) -> Matrix<C64> {
    dense(&rb.braiding_sparse(m, n).unwrap())
}

fn id(n: usize) -> Matrix<C64> {
    Matrix::identity(n)
}

fn rel_diff(a: &Matrix<C64>, b: &Matrix<C64>) -> f64 {
    a.sub(b).max_abs() / 1f64.max(a.max_abs())
}

/// Three small modules at r = 3 built from the sampled parameters.
fn triple(ctx: &QContext, a: f64, b: f64, pick: usize) -> [WeightModule<C64>; 3] {
    let va = typical(ctx, C64::new(a, 0.0));
    let vb = typical(ctx, C64::new(b, 0.1));
    let third = match pick % 3 {
        0 => simple::<C64>(ctx, 1, -1).unwrap(),
        1 => projective::<C64>(ctx, 0, 1).unwrap(),
        _ => typical(ctx, C64::new(a - b, 0.0)),
    };
    [va, vb, third]
}

fn generic() -> impl Strategy<Value = f64> {
    // keep clear of the integers, where typical modules stop being simple
    (-3i32..3, 0.05f64..0.95).prop_map(|(n, f)| n as f64 + f)
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn bracket_addition(r in 2u32..8, x in -5.0f64..5.0, y in -5.0f64..5.0) {
        let ctx = QContext::new(r).unwrap();
        let lhs = cbr(&ctx, x + y);
        let rhs = cbr(&ctx, x) * cq(&ctx, y) + cq(&ctx, -x) * cbr(&ctx, y);
        prop_assert!((lhs - rhs).norm() < 1e-12);
    }

    #[test]
    fn bracket_periodicity(r in 2u32..8, x in -5.0f64..5.0) {
        let ctx = QContext::new(r).unwrap();
        let rf = r as f64;
        prop_assert!((cbr(&ctx, x + rf) + cbr(&ctx, x)).norm() < 1e-12);
        prop_assert!((cbr(&ctx, x + 2.0 * rf) - cbr(&ctx, x)).norm() < 1e-12);
        prop_assert!((cint(&ctx, -x) + cint(&ctx, x)).norm() < 1e-12);
    }

    #[test]
    fn bracket_exchange(r in 2u32..8, i in 0.0f64..6.0, k in -4.0f64..4.0, e in -2.0f64..2.0) {
        let ctx = QContext::new(r).unwrap();
        let lhs = cint(&ctx, k) * cint(&ctx, 1.0 + i - k + e) - cint(&ctx, 1.0 + i - k) * cint(&ctx, k - e);
        let rhs = cint(&ctx, 1.0 + i) * cint(&ctx, e);
        prop_assert!((lhs - rhs).norm() < 1e-10 * 1f64.max(rhs.norm()));
    }

    #[test]
    fn yang_baxter(a in generic(), b in generic(), pick in 0usize..3) {
        let ctx = QContext::new(3).unwrap();
        let rb = Ribbon::calibrated(&ctx).unwrap();
        let [u, v, w] = triple(&ctx, a, b, pick);
        let (du, dv, dw) = (u.dim(), v.dim(), w.dim());
        let lhs = braid(&rb, &v, &w).kron(&id(du))
            .matmul(&id(dv).kron(&braid(&rb, &u, &w)))
            .matmul(&braid(&rb, &u, &v).kron(&id(dw)));
        let rhs = id(dw).kron(&braid(&rb, &u, &v))
            .matmul(&braid(&rb, &u, &w).kron(&id(dv)))
            .matmul(&id(du).kron(&braid(&rb, &v, &w)));
        prop_assert!(rel_diff(&lhs, &rhs) < 1e-9, "{}", rel_diff(&lhs, &rhs));
    }

    #[test]
    fn twist_is_compatible_with_braiding(a in generic(), b in generic(), pick in 0usize..3) {
        let ctx = QContext::new(3).unwrap();
        let rb = Ribbon::calibrated(&ctx).unwrap();
        let [m, _, n] = triple(&ctx, a, b, pick);
        let mn = tensor(&m, &n);
        let lhs = rb.twist_matrix(&mn).unwrap();
        let rhs = braid(&rb, &n, &m)
            .matmul(&braid(&rb, &m, &n))
            .matmul(&rb.twist_matrix(&m).unwrap().kron(&rb.twist_matrix(&n).unwrap()));
        prop_assert!(rel_diff(&lhs, &rhs) < 1e-9, "{}", rel_diff(&lhs, &rhs));
    }

    #[test]
    fn reidemeister_two(a in generic(), pick in 0usize..3) {
        let ctx = QContext::new(3).unwrap();
        let rb = Ribbon::calibrated(&ctx).unwrap();
        let closed = ["S(1,0)", "P(0,-1)", "V(0.53)"][pick];
        let open = format!("open V({a})");
        let with = parse_tangle(&format!("{open} | insert 2 {closed}; br+ 1; br- 1; evR 2")).unwrap();
        let without = parse_tangle(&format!("{open} | insert 2 {closed}; evR 2")).unwrap();
        let x = eval_tangle(&rb, &with).unwrap().matrix;
        let y = eval_tangle(&rb, &without).unwrap().matrix;
        prop_assert!(rel_diff(&x, &y) < 1e-9);
    }

    #[test]
    fn reidemeister_three_in_a_tangle(a in generic(), pick in 0usize..3, form in 0usize..3) {
        let ctx = QContext::new(3).unwrap();
        let rb = Ribbon::calibrated(&ctx).unwrap();
        let closed = ["S(1,0)", "P(0,-1)", "V(0.53)"][pick];
        let (w1, w2) = [
            ("br+ 1; br+ 2; br+ 1", "br+ 2; br+ 1; br+ 2"),
            ("br- 1; br- 2; br- 1", "br- 2; br- 1; br- 2"),
            ("br+ 1; br+ 2; br- 1", "br- 2; br+ 1; br+ 2"),
        ][form];
        // strands O C C*; each word reverses them, then C* C closes on the left
        let pre = format!("open V({a}) | insert 2 {closed};");
        let lhs = parse_tangle(&format!("{pre} {w1}; evL 1")).unwrap();
        let rhs = parse_tangle(&format!("{pre} {w2}; evL 1")).unwrap();
        let x = eval_tangle(&rb, &lhs).unwrap().matrix;
        let y = eval_tangle(&rb, &rhs).unwrap().matrix;
        if pick == 0 {
            // projective and typical loops have vanishing quantum trace when unlinked
            prop_assert!(x.max_abs() > 1e-6);
        }
        prop_assert!(rel_diff(&x, &y) < 1e-9, "{}", rel_diff(&x, &y));
    }
}

#[test]
fn braiding_is_invertible_on_tensor_products() {
    let ctx = QContext::new(4).unwrap();
    let rb = Ribbon::calibrated(&ctx).unwrap();
    let m = Arc::new(typical(&ctx, C64::new(0.31, 0.2)));
    let n = Arc::new(projective::<C64>(&ctx, 1, 0).unwrap());
    let b = braid(&rb, &m, &n);
    let bi = dense(&rb.braiding_inverse_sparse(&m, &n).unwrap());
    assert!(rel_diff(&bi.matmul(&b), &id(m.dim() * n.dim())) < 1e-10);
    assert!(rb.braiding(&m, &n).unwrap().intertwining_residual() < 1e-10);
}
