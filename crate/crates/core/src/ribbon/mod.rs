//! Braiding, duality, twist and the modified trace.

mod calibrate;
mod trace;

use std::sync::Arc;

use num_complex::Complex64;

pub use calibrate::{
    calibrate, hopf_closed_form, hopf_deviation, CalibrationAttempt, CalibrationReport, CALIBRATION_ORDER,
};
pub use trace::{modified_dim, modified_trace, projective_dim, typical_dim};

use crate::error::{Error, Result};
use crate::matrix::{Matrix, SparseCols};
use crate::qnum::{cbr, cq, qbracket_fact, qpow, QContext};
use crate::rep::{dual, simple, tensor_with, Coproduct, LinearMap, WeightModule};
use crate::scalar::Scalar;
use crate::strands::State;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RibbonConfig {
    /// The pivotal element is `K^pivot_exponent`.
    pub pivot_exponent: i64,
    pub coproduct: Coproduct,
    pub calibrated: bool,
}

impl RibbonConfig {
    pub fn initial(ctx: &QContext) -> Self {
        RibbonConfig {
            pivot_exponent: ctx.ri() - 1,
            coproduct: Coproduct::Standard,
            calibrated: false,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Ribbon {
    pub ctx: QContext,
    pub config: RibbonConfig,
    /// Refuse to braid before calibration.
    pub strict: bool,
}

/// The duality and twist morphisms of one module.
#[derive(Debug, Clone)]
pub struct StructureMaps<S> {
    pub twist: LinearMap<S>,
    /// `M* ⊗ M → 1`
    pub ev: LinearMap<S>,
    /// `1 → M ⊗ M*`
    pub coev: LinearMap<S>,
    /// `M ⊗ M* → 1`, through the pivotal element
    pub ev_prime: LinearMap<S>,
    /// `1 → M* ⊗ M`
    pub coev_prime: LinearMap<S>,
}

impl Ribbon {
    /// A ribbon structure with the given conventions and no calibration.
    pub fn with_config(ctx: QContext, config: RibbonConfig) -> Self {
        Ribbon {
            ctx,
            config,
            strict: false,
        }
    }

    /// Runs the calibration suite and returns the first passing structure.
    pub fn calibrated(ctx: &QContext) -> Result<Self> {
        calibrate(ctx).0
    }

    fn require(&self) -> Result<()> {
        if self.strict && !self.config.calibrated {
            Err(Error::Calibration)
        } else {
            Ok(())
        }
    }

    pub fn tensor<S: Scalar>(&self, m: &WeightModule<S>, n: &WeightModule<S>) -> WeightModule<S> {
        tensor_with(m, n, self.config.coproduct)
    }

    pub fn dual<S: Scalar>(&self, m: &WeightModule<S>) -> WeightModule<S> {
        dual(m, self.config.coproduct)
    }

    fn check_weight_module<S: Scalar>(m: &WeightModule<S>) -> Result<()> {
        if m.is_semisimple() {
            Ok(())
        } else {
            Err(Error::NotWeightModule(m.label.to_string()))
        }
    }

    /// `Σ_n c_n X^n ⊗ Y^n` with (X, Y) = (E, F), or (F, E) for the opposite
    /// coproduct, as a column-sparse operator on `M ⊗ N`.
    fn quasi_r<S: Scalar>(
        &self,
        m: &WeightModule<S>,
        n: &WeightModule<S>,
        inverse: bool,
    ) -> SparseCols<S> {
        let ctx = &self.ctx;
        let (dm, dn) = (m.dim(), n.dim());
        let (x, y) = match self.config.coproduct {
            Coproduct::Standard => (&m.e, &n.f),
            Coproduct::Opposite => (&m.f, &n.e),
        };
        let mut cols: Vec<Vec<(usize, S)>> = vec![Vec::new(); dm * dn];
        let mut xp = Matrix::<S>::identity(dm);
        let mut yp = Matrix::<S>::identity(dn);
        let b1 = cbr(ctx, 1.0);
        for p in 0..ctx.r {
            if p > 0 {
                xp = xp.matmul(x);
                yp = yp.matmul(y);
            }
            let pf = p as f64;
            let fact: Complex64 = qbracket_fact(ctx, p);
            let mut c = b1.powu(2 * p) / fact;
            if inverse {
                c *= cq(ctx, -pf * (pf - 1.0) / 2.0) * if p % 2 == 0 { 1.0 } else { -1.0 };
            } else {
                c *= cq(ctx, pf * (pf - 1.0) / 2.0);
            }
            let c = S::from_c64(c);
            let (xs, ys) = (xp.to_sparse(), yp.to_sparse());
            for a in 0..dm {
                for b in 0..dn {
                    let col = &mut cols[a * dn + b];
                    for (a2, u) in &xs.cols[a] {
                        for (b2, v) in &ys.cols[b] {
                            let z = c * *u * *v;
                            let idx = a2 * dn + b2;
                            match col.iter_mut().find(|(i, _)| *i == idx) {
                                Some(slot) => slot.1 += z,
                                None => col.push((idx, z)),
                            }
                        }
                    }
                }
            }
        }
        SparseCols {
            rows: dm * dn,
            cols,
        }
    }

    /// The braiding `c_{M,N}: M ⊗ N → N ⊗ M` as a column-sparse operator.
    pub fn braiding_sparse<S: Scalar>(
        &self,
        m: &WeightModule<S>,
        n: &WeightModule<S>,
    ) -> Result<SparseCols<S>> {
        self.require()?;
        Self::check_weight_module(m)?;
        Self::check_weight_module(n)?;
        let (dm, dn) = (m.dim(), n.dim());
        let theta = self.quasi_r(m, n, false);
        let half = S::from_f64(0.5);
        let cols = theta
            .cols
            .iter()
            .map(|col| {
                col.iter()
                    .map(|(idx, z)| {
                        let (a, b) = (idx / dn, idx % dn);
                        let d = qpow(&self.ctx, m.weights[a] * n.weights[b] * half);
                        (b * dm + a, *z * d)
                    })
                    .collect()
            })
            .collect();
        Ok(SparseCols {
            rows: dm * dn,
            cols,
        })
    }

    /// `c_{M,N}⁻¹: N ⊗ M → M ⊗ N`.
    pub fn braiding_inverse_sparse<S: Scalar>(
        &self,
        m: &WeightModule<S>,
        n: &WeightModule<S>,
    ) -> Result<SparseCols<S>> {
        self.require()?;
        Self::check_weight_module(m)?;
        Self::check_weight_module(n)?;
        let (dm, dn) = (m.dim(), n.dim());
        let theta_inv = self.quasi_r(m, n, true);
        let half = S::from_f64(-0.5);
        let mut cols = vec![Vec::new(); dm * dn];
        for a in 0..dm {
            for b in 0..dn {
                let d = qpow(&self.ctx, m.weights[a] * n.weights[b] * half);
                cols[b * dm + a] = theta_inv.cols[a * dn + b]
                    .iter()
                    .map(|(idx, z)| (*idx, *z * d))
                    .collect();
            }
        }
        Ok(SparseCols {
            rows: dm * dn,
            cols,
        })
    }

    pub fn braiding<S: Scalar>(
        &self,
        m: &Arc<WeightModule<S>>,
        n: &Arc<WeightModule<S>>,
    ) -> Result<LinearMap<S>> {
        let sp = self.braiding_sparse(m, n)?;
        let mut mat = Matrix::zeros(sp.rows, sp.cols.len());
        for (j, col) in sp.cols.iter().enumerate() {
            for (i, z) in col {
                mat[(*i, j)] = *z;
            }
        }
        LinearMap::new(
            Arc::new(self.tensor(m, n)),
            Arc::new(self.tensor(n, m)),
            mat,
        )
    }

    /// The pivotal element `K^p` acting on `m`.
    pub fn pivot<S: Scalar>(&self, m: &WeightModule<S>) -> Matrix<S> {
        let p = self.config.pivot_exponent;
        if p >= 0 {
            m.k.pow(p as u32)
        } else {
            m.kinv.pow((-p) as u32)
        }
    }

    pub fn pivot_inverse<S: Scalar>(&self, m: &WeightModule<S>) -> Matrix<S> {
        let p = self.config.pivot_exponent;
        if p >= 0 {
            m.kinv.pow(p as u32)
        } else {
            m.k.pow((-p) as u32)
        }
    }

    /// `ev: M* ⊗ M → 1`, `f ⊗ v ↦ f(v)`.
    pub fn ev_sparse<S: Scalar>(&self, m: &WeightModule<S>) -> Vec<(usize, S)> {
        let d = m.dim();
        (0..d).map(|a| (a * d + a, S::one())).collect()
    }

    /// `coev: 1 → M ⊗ M*`, `1 ↦ Σ v_a ⊗ v^a`.
    pub fn coev_sparse<S: Scalar>(&self, m: &WeightModule<S>) -> Vec<(usize, S)> {
        self.ev_sparse(m)
    }

    /// `ev': M ⊗ M* → 1`, `v ⊗ f ↦ f(g·v)`.
    pub fn ev_prime_sparse<S: Scalar>(&self, m: &WeightModule<S>) -> Vec<(usize, S)> {
        let d = m.dim();
        let g = self.pivot(m);
        let mut out = Vec::new();
        for a in 0..d {
            for b in 0..d {
                let z = g[(b, a)];
                if !z.is_zero() {
                    out.push((a * d + b, z));
                }
            }
        }
        out
    }

    /// `coev': 1 → M* ⊗ M`, `1 ↦ Σ v^a ⊗ g⁻¹·v_a`.
    pub fn coev_prime_sparse<S: Scalar>(&self, m: &WeightModule<S>) -> Vec<(usize, S)> {
        let d = m.dim();
        let gi = self.pivot_inverse(m);
        let mut out = Vec::new();
        for a in 0..d {
            for b in 0..d {
                let z = gi[(b, a)];
                if !z.is_zero() {
                    out.push((a * d + b, z));
                }
            }
        }
        out
    }

    /// `θ_M = (Id ⊗ ev')(c_{M,M} ⊗ Id)(Id ⊗ coev)`.
    pub fn twist_matrix<S: Scalar>(&self, m: &WeightModule<S>) -> Result<Matrix<S>> {
        self.right_partial_trace_of_braid(m, false)
    }

    /// `θ_M⁻¹`, the same closure applied to the inverse braiding.
    pub fn twist_inverse_matrix<S: Scalar>(&self, m: &WeightModule<S>) -> Result<Matrix<S>> {
        self.right_partial_trace_of_braid(m, true)
    }

    fn right_partial_trace_of_braid<S: Scalar>(
        &self,
        m: &WeightModule<S>,
        inverse: bool,
    ) -> Result<Matrix<S>> {
        let d = m.dim();
        let braid = if inverse {
            self.braiding_inverse_sparse(m, m)?
        } else {
            self.braiding_sparse(m, m)?
        };
        let coev = self.coev_sparse(m);
        let evp = self.ev_prime_sparse(m);
        let mut out = Matrix::zeros(d, d);
        for c in 0..d {
            let mut st = State::basis(d, c);
            st.insert_pair(1, &coev, d, d);
            st.apply(0, 2, &braid, &[d, d]);
            st.contract_pair(1, &evp);
            for (row, z) in st.data.iter().enumerate() {
                out[(row, c)] = *z;
            }
        }
        Ok(out)
    }

    pub fn structure_maps<S: Scalar>(&self, m: &Arc<WeightModule<S>>) -> Result<StructureMaps<S>> {
        self.require()?;
        let d = m.dim();
        let unit = Arc::new(simple::<S>(&self.ctx, 0, 0)?);
        let md = Arc::new(self.dual(m));
        let m_md = Arc::new(self.tensor(m, &md));
        let md_m = Arc::new(self.tensor(&md, m));
        let row = |v: Vec<(usize, S)>| {
            let mut x = Matrix::zeros(1, d * d);
            for (i, z) in v {
                x[(0, i)] = z;
            }
            x
        };
        let col = |v: Vec<(usize, S)>| row(v).transpose();
        Ok(StructureMaps {
            twist: LinearMap::new(m.clone(), m.clone(), self.twist_matrix(m)?)?,
            ev: LinearMap::new(md_m.clone(), unit.clone(), row(self.ev_sparse(m)))?,
            coev: LinearMap::new(unit.clone(), m_md.clone(), col(self.coev_sparse(m)))?,
            ev_prime: LinearMap::new(m_md, unit.clone(), row(self.ev_prime_sparse(m)))?,
            coev_prime: LinearMap::new(unit, md_m, col(self.coev_prime_sparse(m)))?,
        })
    }
}
