use std::sync::Arc;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

use super::label::ModuleLabel;

/// A finite-dimensional module given by the matrices of its generators.
///
/// Matrices act on column vectors: `e[(t, s)]` is the coefficient of basis
/// vector `t` in `E·v_s`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightModule<S> {
    pub label: ModuleLabel<S>,
    pub e: Matrix<S>,
    pub f: Matrix<S>,
    pub k: Matrix<S>,
    pub kinv: Matrix<S>,
    pub h: Matrix<S>,
    /// Generalized H-eigenvalue of each basis vector.
    pub weights: Vec<S>,
}

/// Which of the two comultiplications builds tensor products.
///
/// `Standard`: Δ(E)=E⊗K+1⊗E, Δ(F)=F⊗1+K⁻¹⊗F.
/// `Opposite`: Δ(E)=E⊗1+K⊗E, Δ(F)=F⊗K⁻¹+1⊗F.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Coproduct {
    Standard,
    Opposite,
}

impl<S: Scalar> WeightModule<S> {
    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    /// True when H is diagonal in the stored basis.
    pub fn is_semisimple(&self) -> bool {
        self.h.is_diagonal()
    }

    pub fn relabel(mut self, label: ModuleLabel<S>) -> Self {
        self.label = label;
        self
    }

    /// Builds a module whose H and K are diagonal with the given weights.
    pub(crate) fn diagonal(
        label: ModuleLabel<S>,
        weights: Vec<S>,
        e: Matrix<S>,
        f: Matrix<S>,
        qpow: impl Fn(S) -> S,
    ) -> Self {
        let k = Matrix::diagonal(&weights.iter().map(|w| qpow(*w)).collect::<Vec<_>>());
        let kinv = Matrix::diagonal(&weights.iter().map(|w| qpow(-*w)).collect::<Vec<_>>());
        let h = Matrix::diagonal(&weights);
        WeightModule {
            label,
            e,
            f,
            k,
            kinv,
            h,
            weights,
        }
    }
}

/// M ⊗ N under the standard comultiplication.
pub fn tensor<S: Scalar>(m: &WeightModule<S>, n: &WeightModule<S>) -> WeightModule<S> {
    tensor_with(m, n, Coproduct::Standard)
}

pub fn tensor_with<S: Scalar>(
    m: &WeightModule<S>,
    n: &WeightModule<S>,
    cop: Coproduct,
) -> WeightModule<S> {
    let im = Matrix::identity(m.dim());
    let in_ = Matrix::identity(n.dim());
    let (e, f) = match cop {
        Coproduct::Standard => (
            m.e.kron(&n.k).add(&im.kron(&n.e)),
            m.f.kron(&in_).add(&m.kinv.kron(&n.f)),
        ),
        Coproduct::Opposite => (
            m.e.kron(&in_).add(&m.k.kron(&n.e)),
            m.f.kron(&n.kinv).add(&im.kron(&n.f)),
        ),
    };
    let weights = m
        .weights
        .iter()
        .flat_map(|a| n.weights.iter().map(move |b| *a + *b))
        .collect();
    WeightModule {
        label: ModuleLabel::tensor(m.label.clone(), n.label.clone()),
        e,
        f,
        k: m.k.kron(&n.k),
        kinv: m.kinv.kron(&n.kinv),
        h: m.h.kron(&in_).add(&im.kron(&n.h)),
        weights,
    }
}

/// The dual module, acting through the antipode on the dual basis.
pub fn dual<S: Scalar>(m: &WeightModule<S>, cop: Coproduct) -> WeightModule<S> {
    // Standard: S(E)=−EK⁻¹, S(F)=−KF. Opposite: S(E)=−K⁻¹E, S(F)=−FK.
    let (se, sf) = match cop {
        Coproduct::Standard => (m.e.matmul(&m.kinv), m.k.matmul(&m.f)),
        Coproduct::Opposite => (m.kinv.matmul(&m.e), m.f.matmul(&m.k)),
    };
    let neg = |x: S| -x;
    WeightModule {
        label: ModuleLabel::dual(m.label.clone()),
        e: se.transpose().map(neg),
        f: sf.transpose().map(neg),
        k: m.kinv.transpose(),
        kinv: m.k.transpose(),
        h: m.h.transpose().map(neg),
        weights: m.weights.iter().map(|w| -*w).collect(),
    }
}

pub fn direct_sum<S: Scalar>(parts: &[&WeightModule<S>]) -> WeightModule<S> {
    let pick = |g: fn(&WeightModule<S>) -> &Matrix<S>| {
        Matrix::block_diag(&parts.iter().map(|m| g(m)).collect::<Vec<_>>())
    };
    WeightModule {
        label: ModuleLabel::Sum(parts.iter().map(|m| m.label.clone()).collect()),
        e: pick(|m| &m.e),
        f: pick(|m| &m.f),
        k: pick(|m| &m.k),
        kinv: pick(|m| &m.kinv),
        h: pick(|m| &m.h),
        weights: parts.iter().flat_map(|m| m.weights.iter().copied()).collect(),
    }
}

/// A matrix together with the modules it maps between.
#[derive(Debug, Clone)]
pub struct LinearMap<S> {
    pub source: Arc<WeightModule<S>>,
    pub target: Arc<WeightModule<S>>,
    pub matrix: Matrix<S>,
}

impl<S: Scalar> LinearMap<S> {
    pub fn new(
        source: Arc<WeightModule<S>>,
        target: Arc<WeightModule<S>>,
        matrix: Matrix<S>,
    ) -> Result<Self> {
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::Shape(format!(
                "{}x{} matrix cannot map {} (dim {}) to {} (dim {})",
                matrix.rows(),
                matrix.cols(),
                source.label,
                source.dim(),
                target.label,
                target.dim()
            )));
        }
        Ok(LinearMap {
            source,
            target,
            matrix,
        })
    }

    pub fn identity(m: Arc<WeightModule<S>>) -> Self {
        let matrix = Matrix::identity(m.dim());
        LinearMap {
            source: m.clone(),
            target: m,
            matrix,
        }
    }

    /// Largest relative violation of `A·ρ_src(g) = ρ_tgt(g)·A` over g ∈ {E,F,H,K}.
    pub fn intertwining_residual(&self) -> f64 {
        let (s, t) = (&*self.source, &*self.target);
        let a = &self.matrix;
        let scale = 1f64.max(a.max_abs());
        [(&s.e, &t.e), (&s.f, &t.f), (&s.h, &t.h), (&s.k, &t.k)]
            .iter()
            .map(|(gs, gt)| {
                let g_scale = 1f64.max(gs.max_abs()).max(gt.max_abs());
                a.matmul(gs).sub(&gt.matmul(a)).max_abs() / (scale * g_scale)
            })
            .fold(0.0, f64::max)
    }
}
