//! Explicit matrix modules over the unrolled restricted quantum group.

mod change_of_basis;
mod construct;
mod hom;
mod label;
mod module;
mod relations;

pub use change_of_basis::{deformable_change_of_basis, summand_weights};
pub use construct::{
    deformable_with_sign, make_deformable, make_module, one_dim, projective, self_ext,
    self_ext_beta, simple, typical, DeformBasis, FSign,
};
pub use hom::{hom_space, projective_nilpotent};
pub use label::ModuleLabel;
pub use module::{direct_sum, dual, tensor, tensor_with, Coproduct, LinearMap, WeightModule};
pub use relations::{verify_relations, RelationReport};

use crate::qnum::QContext;
use crate::C64;

/// Outcome of testing both candidate signs of `F·w^S_{−i}`.
#[derive(Debug, Clone)]
pub struct FSignSelection {
    pub chosen: FSign,
    pub plus_residual: f64,
    pub minus_residual: f64,
}

/// Builds the deformable family with both signs at a generic ε and keeps
/// the one whose relation residual is below tolerance.
pub fn surviving_f_sign(ctx: &QContext) -> FSignSelection {
    let eps = C64::new(0.2137, 0.0);
    let worst = |s: FSign| {
        (0..ctx.r - 1)
            .map(|i| {
                let m = deformable_with_sign(ctx, i, 0, eps, s).expect("i in range");
                verify_relations(ctx, &m).max_residual
            })
            .fold(0.0, f64::max)
    };
    let plus_residual = worst(FSign::Plus);
    let minus_residual = worst(FSign::Minus);
    let chosen = if minus_residual <= plus_residual {
        FSign::Minus
    } else {
        FSign::Plus
    };
    FSignSelection {
        chosen,
        plus_residual,
        minus_residual,
    }
}
