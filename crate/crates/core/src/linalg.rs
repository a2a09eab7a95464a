//! Numerical linear algebra on complex matrices, backed by nalgebra.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::matrix::Matrix;

/// Basis of the null space of `a`, one vector per row.
///
/// Singular values below `rel_tol · σ_max` count as zero. The basis is
/// returned in reduced row echelon form (pivot entries equal to one), which
/// makes it independent of the gauge chosen by the SVD.
pub fn nullspace(a: &Matrix<Complex64>, rel_tol: f64) -> Vec<Vec<Complex64>> {
    let ncols = a.cols();
    if ncols == 0 {
        return Vec::new();
    }
    // pad with zero rows so the SVD returns a full set of right vectors
    let nrows = a.rows().max(ncols);
    let mut m = DMatrix::<Complex64>::zeros(nrows, ncols);
    for i in 0..a.rows() {
        for j in 0..ncols {
            m[(i, j)] = a[(i, j)];
        }
    }
    let svd = m.svd(false, true);
    let vt = svd.v_t.expect("right singular vectors requested");
    let smax = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let cutoff = rel_tol * smax;
    let mut basis: Vec<Vec<Complex64>> = svd
        .singular_values
        .iter()
        .enumerate()
        .filter(|(_, s)| smax == 0.0 || **s <= cutoff)
        .map(|(n, _)| (0..ncols).map(|j| vt[(n, j)].conj()).collect())
        .collect();
    rref(&mut basis, rel_tol.max(1e-12));
    basis
}

/// In-place reduced row echelon form with partial pivoting, scanning columns
/// left to right. Rows that become negligible are dropped.
pub fn rref(rows: &mut Vec<Vec<Complex64>>, tol: f64) {
    let n = rows.len();
    if n == 0 {
        return;
    }
    let ncols = rows[0].len();
    let scale = rows
        .iter()
        .flat_map(|r| r.iter().map(|z| z.norm()))
        .fold(0.0, f64::max);
    let mut lead = 0;
    for col in 0..ncols {
        if lead == n {
            break;
        }
        let (best, bval) = (lead..n)
            .map(|i| (i, rows[i][col].norm()))
            .fold((lead, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if bval <= tol * scale {
            continue;
        }
        rows.swap(lead, best);
        let p = rows[lead][col];
        for z in rows[lead].iter_mut() {
            *z /= p;
        }
        rows[lead][col] = Complex64::new(1.0, 0.0);
        for i in 0..n {
            if i != lead {
                let c = rows[i][col];
                if c.norm() == 0.0 {
                    continue;
                }
                for j in 0..ncols {
                    let v = rows[lead][j];
                    rows[i][j] -= c * v;
                }
                rows[i][col] = Complex64::new(0.0, 0.0);
            }
        }
        lead += 1;
    }
    rows.truncate(lead);
}

/// Modified Gram-Schmidt, preserving order.
pub fn gram_schmidt(rows: &[Vec<Complex64>]) -> Vec<Vec<Complex64>> {
    let mut out: Vec<Vec<Complex64>> = Vec::with_capacity(rows.len());
    for v in rows {
        let mut w = v.clone();
        for u in &out {
            let dot: Complex64 = u.iter().zip(&w).map(|(a, b)| a.conj() * b).sum();
            for (x, y) in w.iter_mut().zip(u) {
                *x -= dot * y;
            }
        }
        let norm = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 0.0 {
            for x in w.iter_mut() {
                *x /= norm;
            }
            out.push(w);
        }
    }
    out
}

/// Spectral condition number.
pub fn condition_number(a: &Matrix<Complex64>) -> f64 {
    let s = a.to_nalgebra().singular_values();
    let max = s.iter().cloned().fold(0.0, f64::max);
    let min = s.iter().cloned().fold(f64::INFINITY, f64::min);
    max / min
}

/// Least-squares coefficients `c` minimizing `|Σ c_n basis_n − target|`.
pub fn solve_least_squares(
    basis: &[&Matrix<Complex64>],
    target: &Matrix<Complex64>,
) -> Vec<Complex64> {
    let len = target.as_slice().len();
    let a = DMatrix::from_fn(len, basis.len(), |i, j| basis[j].as_slice()[i]);
    let b = DMatrix::from_fn(len, 1, |i, _| target.as_slice()[i]);
    let svd = a.svd(true, true);
    let x = svd.solve(&b, 1e-14).expect("SVD with both factors");
    x.iter().copied().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn nullspace_of_rank_one() {
        let a = Matrix::from_row_major(2, 3, vec![c(1.0), c(2.0), c(3.0), c(2.0), c(4.0), c(6.0)]);
        let ns = nullspace(&a, 1e-10);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            let r: Complex64 = v.iter().zip([1.0, 2.0, 3.0]).map(|(z, w)| z * w).sum();
            assert!(r.norm() < 1e-12);
        }
        // echelon form puts the first pivot in column 0
        assert!((ns[0][0] - 1.0).norm() < 1e-12);
    }

    #[test]
    fn gram_schmidt_orthonormal() {
        let v = vec![vec![c(1.0), c(1.0)], vec![c(1.0), c(0.0)]];
        let u = gram_schmidt(&v);
        let dot: Complex64 = u[0].iter().zip(&u[1]).map(|(a, b)| a.conj() * b).sum();
        assert!(dot.norm() < 1e-15);
    }
}
