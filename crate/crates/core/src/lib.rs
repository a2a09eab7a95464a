//! Matrix representations of the unrolled restricted quantum group of sl2 at
//! `q = exp(iπ/r)`, their ribbon structure, renormalized and logarithmic
//! tangle invariants, and the matching data on the singlet vertex algebra side.
//!
//! Everything below the tangle layer is generic over [`Scalar`], so the same
//! code runs on complex numbers and on ε-jets. The aliases at the crate root
//! fix the common instantiations.

pub mod deform;
pub mod error;
pub mod jet;
pub mod linalg;
pub mod matrix;
pub mod qnum;
pub mod rep;
pub mod ribbon;
pub mod scalar;
pub mod singlet;
pub mod strands;
pub mod tangle;

pub use error::{Error, Result};
pub use jet::{jet_derivative, jet_eval, jet_limit, Jet, Jet64};
pub use matrix::Matrix;
pub use qnum::QContext;
pub use scalar::Scalar;

pub type C64 = num_complex::Complex64;
pub type Module = rep::WeightModule<C64>;
pub type JetModule = rep::WeightModule<Jet64>;
pub type Label = rep::ModuleLabel<C64>;
