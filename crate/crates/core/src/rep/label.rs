use std::fmt;

use num_complex::Complex64;

use crate::scalar::Scalar;

/// Structured name of a module.
///
/// `Dual` is only produced internally, when strands of a tangle are
/// oriented downwards.
#[derive(Debug, Clone, PartialEq)]
pub enum ModuleLabel<S> {
    Typical(S),
    Simple { i: u32, k: i64 },
    OneDim(i64),
    Projective { i: u32, k: i64 },
    SelfExt(S),
    DeformX { i: u32, l: i64, eps: S },
    Tensor(Box<ModuleLabel<S>>, Box<ModuleLabel<S>>),
    Sum(Vec<ModuleLabel<S>>),
    Dual(Box<ModuleLabel<S>>),
}

impl<S: Scalar> ModuleLabel<S> {
    pub fn tensor(a: Self, b: Self) -> Self {
        ModuleLabel::Tensor(Box::new(a), Box::new(b))
    }

    pub fn dual(a: Self) -> Self {
        ModuleLabel::Dual(Box::new(a))
    }

    /// Converts every scalar parameter.
    pub fn map_scalar<T: Scalar>(&self, f: &impl Fn(S) -> T) -> ModuleLabel<T> {
        use ModuleLabel::*;
        match self {
            Typical(a) => Typical(f(*a)),
            Simple { i, k } => Simple { i: *i, k: *k },
            OneDim(k) => OneDim(*k),
            Projective { i, k } => Projective { i: *i, k: *k },
            SelfExt(l) => SelfExt(f(*l)),
            DeformX { i, l, eps } => DeformX {
                i: *i,
                l: *l,
                eps: f(*eps),
            },
            Tensor(a, b) => Tensor(Box::new(a.map_scalar(f)), Box::new(b.map_scalar(f))),
            Sum(v) => Sum(v.iter().map(|x| x.map_scalar(f)).collect()),
            Dual(a) => Dual(Box::new(a.map_scalar(f))),
        }
    }

    /// Promotes a numeric label to any scalar type.
    pub fn lift(label: &ModuleLabel<Complex64>) -> Self {
        label.map_scalar(&|z| S::from_c64(z))
    }
}

impl<S: Scalar> fmt::Display for ModuleLabel<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use ModuleLabel::*;
        match self {
            Typical(a) => write!(f, "V({})", a.describe()),
            Simple { i, k } => write!(f, "S({i},{k})"),
            OneDim(k) => write!(f, "C({k})"),
            Projective { i, k } => write!(f, "P({i},{k})"),
            SelfExt(l) => write!(f, "E({})", l.describe()),
            DeformX { i, l, eps } => write!(f, "X({i},{l},{})", eps.describe()),
            Tensor(a, b) => write!(f, "({a} x {b})"),
            Sum(v) => {
                write!(f, "(")?;
                for (n, x) in v.iter().enumerate() {
                    if n > 0 {
                        write!(f, " + ")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
            Dual(a) => write!(f, "{a}*"),
        }
    }
}
