//! A vector in a tensor product of several modules, transformed by local
//! operators acting on one or two adjacent factors.

use crate::matrix::SparseCols;
use crate::scalar::Scalar;

#[derive(Debug, Clone)]
pub struct State<S> {
    pub dims: Vec<usize>,
    pub data: Vec<S>,
}

impl<S: Scalar> State<S> {
    /// Basis vector `idx` of a single factor of dimension `dim`.
    pub fn basis(dim: usize, idx: usize) -> Self {
        let mut data = vec![S::zero(); dim];
        data[idx] = S::one();
        State {
            dims: vec![dim],
            data,
        }
    }

    pub fn from_vec(dims: Vec<usize>, data: Vec<S>) -> Self {
        assert_eq!(dims.iter().product::<usize>(), data.len());
        State { dims, data }
    }

    fn outer_inner(&self, p: usize, width: usize) -> (usize, usize) {
        let outer = self.dims[..p].iter().product();
        let inner = self.dims[p + width..].iter().product();
        (outer, inner)
    }

    /// Applies `op` to the block of `width` factors starting at 0-based `p`,
    /// replacing them by factors of dimensions `new`.
    pub fn apply(&mut self, p: usize, width: usize, op: &SparseCols<S>, new: &[usize]) {
        let mid: usize = self.dims[p..p + width].iter().product();
        let new_mid: usize = new.iter().product();
        assert_eq!(op.cols.len(), mid, "operator source dimension");
        assert_eq!(op.rows, new_mid, "operator target dimension");
        let (outer, inner) = self.outer_inner(p, width);
        let mut out = vec![S::zero(); outer * new_mid * inner];
        for a in 0..outer {
            for m in 0..mid {
                let col = &op.cols[m];
                if col.is_empty() {
                    continue;
                }
                let src = (a * mid + m) * inner;
                for b in 0..inner {
                    let v = self.data[src + b];
                    if v.is_zero() {
                        continue;
                    }
                    for (row, c) in col {
                        out[(a * new_mid + row) * inner + b] += v * *c;
                    }
                }
            }
        }
        self.dims.splice(p..p + width, new.iter().copied());
        self.data = out;
    }

    /// Inserts two factors at position `p` carrying the vector `vec`
    /// (given sparsely over the `da·db` product basis).
    pub fn insert_pair(&mut self, p: usize, vec: &[(usize, S)], da: usize, db: usize) {
        let (outer, inner) = self.outer_inner(p, 0);
        let mid = da * db;
        let mut out = vec![S::zero(); outer * mid * inner];
        for a in 0..outer {
            for b in 0..inner {
                let v = self.data[a * inner + b];
                if v.is_zero() {
                    continue;
                }
                for (m, c) in vec {
                    out[(a * mid + m) * inner + b] = v * *c;
                }
            }
        }
        self.dims.splice(p..p, [da, db]);
        self.data = out;
    }

    /// Contracts factors `p, p+1` against the covector `covec`.
    pub fn contract_pair(&mut self, p: usize, covec: &[(usize, S)]) {
        let (outer, inner) = self.outer_inner(p, 2);
        let mid = self.dims[p] * self.dims[p + 1];
        let mut out = vec![S::zero(); outer * inner];
        for a in 0..outer {
            for (m, c) in covec {
                let src = (a * mid + m) * inner;
                for b in 0..inner {
                    let v = self.data[src + b];
                    if !v.is_zero() {
                        out[a * inner + b] += v * *c;
                    }
                }
            }
        }
        self.dims.drain(p..p + 2);
        self.data = out;
    }
}
