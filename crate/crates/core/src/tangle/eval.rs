use std::collections::HashMap;
use std::sync::Arc;

use crate::error::Result;
use crate::matrix::{Matrix, SparseCols};
use crate::rep::{make_module, ModuleLabel, WeightModule};
use crate::ribbon::Ribbon;
use crate::scalar::Scalar;
use crate::strands::State;

use super::ast::{Side, Sign, Slice, TangleExpr};

/// Index into the color table plus orientation.
type Key = (usize, bool);

/// Modules and local operators, built on first use.
struct Cache<'a, S: Scalar> {
    ribbon: &'a Ribbon,
    colors: Vec<Arc<WeightModule<S>>>,
    duals: Vec<Option<Arc<WeightModule<S>>>>,
    /// Closed colors; color `n + 1` is `closed[n]`.
    closed: Vec<crate::Label>,
    braids: HashMap<(Key, Key, Sign), Arc<SparseCols<S>>>,
    twists: HashMap<(Key, Sign), Arc<SparseCols<S>>>,
}

impl<'a, S: Scalar> Cache<'a, S> {
    fn new(ribbon: &'a Ribbon, open: Arc<WeightModule<S>>) -> Self {
        Cache {
            ribbon,
            colors: vec![open],
            duals: vec![None],
            closed: Vec::new(),
            braids: HashMap::new(),
            twists: HashMap::new(),
        }
    }

    fn color_index(&mut self, label: &crate::Label) -> Result<usize> {
        if let Some(n) = self.closed.iter().position(|l| l == label) {
            return Ok(n + 1);
        }
        let m = make_module(&self.ribbon.ctx, &ModuleLabel::<S>::lift(label))?;
        self.colors.push(Arc::new(m));
        self.duals.push(None);
        self.closed.push(label.clone());
        Ok(self.colors.len() - 1)
    }

    fn module(&mut self, key: Key) -> Arc<WeightModule<S>> {
        let (c, dual) = key;
        if !dual {
            return self.colors[c].clone();
        }
        if self.duals[c].is_none() {
            self.duals[c] = Some(Arc::new(self.ribbon.dual(&self.colors[c])));
        }
        self.duals[c].clone().unwrap()
    }

    fn braid(&mut self, a: Key, b: Key, sign: Sign) -> Result<Arc<SparseCols<S>>> {
        if let Some(op) = self.braids.get(&(a, b, sign)) {
            return Ok(op.clone());
        }
        let (ma, mb) = (self.module(a), self.module(b));
        let op = Arc::new(match sign {
            Sign::Pos => self.ribbon.braiding_sparse(&ma, &mb)?,
            Sign::Neg => self.ribbon.braiding_inverse_sparse(&mb, &ma)?,
        });
        self.braids.insert((a, b, sign), op.clone());
        Ok(op)
    }

    fn twist(&mut self, a: Key, sign: Sign) -> Result<Arc<SparseCols<S>>> {
        if let Some(op) = self.twists.get(&(a, sign)) {
            return Ok(op.clone());
        }
        let m = self.module(a);
        let t = match sign {
            Sign::Pos => self.ribbon.twist_matrix(&m)?,
            Sign::Neg => self.ribbon.twist_inverse_matrix(&m)?,
        };
        let op = Arc::new(t.to_sparse());
        self.twists.insert((a, sign), op.clone());
        Ok(op)
    }
}

/// Columns `columns` of the endomorphism of `open` defined by `t`, with the
/// open color of `t` replaced by `open`.
pub fn eval_columns<S: Scalar>(
    ribbon: &Ribbon,
    t: &TangleExpr,
    open: Arc<WeightModule<S>>,
    columns: &[usize],
) -> Result<Matrix<S>> {
    let d = open.dim();
    let mut cache = Cache::new(ribbon, open);
    // resolve colors once, so every column reuses the same operators
    let mut keys: Vec<Option<usize>> = Vec::with_capacity(t.slices.len());
    for s in &t.slices {
        keys.push(match s {
            Slice::InsertColor { color, .. } => Some(cache.color_index(color)?),
            _ => None,
        });
    }
    let mut out = Matrix::zeros(d, columns.len());
    for (j, &col) in columns.iter().enumerate() {
        let mut st = State::basis(d, col);
        let mut word: Vec<Key> = vec![(0, false)];
        for (s, key) in t.slices.iter().zip(&keys) {
            match s {
                Slice::Braid { pos, sign } => {
                    let p = pos - 1;
                    let (a, b) = (word[p], word[p + 1]);
                    let op = cache.braid(a, b, *sign)?;
                    let dims = [st.dims[p + 1], st.dims[p]];
                    st.apply(p, 2, &op, &dims);
                    word.swap(p, p + 1);
                }
                Slice::Twist { pos, sign } => {
                    let p = pos - 1;
                    let op = cache.twist(word[p], *sign)?;
                    let dims = [st.dims[p]];
                    st.apply(p, 1, &op, &dims);
                }
                Slice::Ev { pos, side } => {
                    let p = pos - 1;
                    let (c, _) = word[p];
                    let m = cache.module((c, false));
                    let covec = match side {
                        Side::R => ribbon.ev_prime_sparse(&m),
                        Side::L => ribbon.ev_sparse(&m),
                    };
                    st.contract_pair(p, &covec);
                    word.drain(p..p + 2);
                }
                Slice::Coev { pos, side } => {
                    let p = pos - 1;
                    let m = cache.module((0, false));
                    let dm = m.dim();
                    let (vec, pair) = match side {
                        Side::R => (ribbon.coev_sparse(&m), [(0, false), (0, true)]),
                        Side::L => (ribbon.coev_prime_sparse(&m), [(0, true), (0, false)]),
                    };
                    st.insert_pair(p, &vec, dm, dm);
                    word.splice(p..p, pair);
                }
                Slice::InsertColor { pos, .. } => {
                    let p = pos - 1;
                    let c = key.expect("color resolved above");
                    let m = cache.module((c, false));
                    let dm = m.dim();
                    st.insert_pair(p, &ribbon.coev_sparse(&m), dm, dm);
                    word.splice(p..p, [(c, false), (c, true)]);
                }
            }
        }
        debug_assert_eq!(st.dims, vec![d]);
        for (i, z) in st.data.iter().enumerate() {
            out[(i, j)] = *z;
        }
    }
    Ok(out)
}

/// The full endomorphism matrix for the given open module.
pub fn eval_matrix<S: Scalar>(
    ribbon: &Ribbon,
    t: &TangleExpr,
    open: Arc<WeightModule<S>>,
) -> Result<Matrix<S>> {
    let cols: Vec<usize> = (0..open.dim()).collect();
    eval_columns(ribbon, t, open, &cols)
}
