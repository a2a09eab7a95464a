use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::fmt_complex;
use crate::Label;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn symbol(self) -> char {
        match self {
            Sign::Pos => '+',
            Sign::Neg => '-',
        }
    }
}

/// Which duality a cap or cup uses.
///
/// `R`: the pair reads `(X, X*)` and uses `coev`/`ev'`.
/// `L`: the pair reads `(X*, X)` and uses `coev'`/`ev`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    L,
    R,
}

/// One elementary piece of a tangle. Positions are 1-based.
#[derive(Debug, Clone, PartialEq)]
pub enum Slice {
    Braid { pos: usize, sign: Sign },
    Twist { pos: usize, sign: Sign },
    Ev { pos: usize, side: Side },
    /// Creates a pair of strands carrying the open color.
    Coev { pos: usize, side: Side },
    /// Creates a `(C, C*)` pair of the given closed color.
    InsertColor { pos: usize, color: Label },
}

/// Named tangles with a fixed expansion into slices.
#[derive(Debug, Clone, PartialEq)]
pub enum Preset {
    /// The closed color encircles the open strand once.
    Hopf(Label),
    /// The closed color winds `n` times around the open strand.
    PowerHopf(i64, Label),
    /// The open strand with one full twist.
    TwistLoop(Sign),
}

impl Preset {
    pub fn expand(&self) -> Vec<Slice> {
        match self {
            Preset::Hopf(c) => Preset::PowerHopf(1, c.clone()).expand(),
            Preset::PowerHopf(n, c) => {
                let sign = if *n >= 0 { Sign::Pos } else { Sign::Neg };
                let mut v = vec![Slice::InsertColor {
                    pos: 2,
                    color: c.clone(),
                }];
                v.extend((0..2 * n.unsigned_abs()).map(|_| Slice::Braid { pos: 1, sign }));
                v.push(Slice::Ev {
                    pos: 2,
                    side: Side::R,
                });
                v
            }
            Preset::TwistLoop(s) => vec![Slice::Twist { pos: 1, sign: *s }],
        }
    }
}

/// A colored (1,1)-tangle in normal form: presets expanded, positions explicit.
#[derive(Debug, Clone, PartialEq)]
pub struct TangleExpr {
    pub open_color: Label,
    pub slices: Vec<Slice>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum StrandColor {
    Open,
    Fixed(Label),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Strand {
    pub color: StrandColor,
    pub dual: bool,
}

impl fmt::Display for Strand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.color {
            StrandColor::Open => write!(f, "open")?,
            StrandColor::Fixed(l) => write!(f, "{l}")?,
        }
        if self.dual {
            write!(f, "*")?;
        }
        Ok(())
    }
}

impl TangleExpr {
    pub fn new(open_color: Label, slices: Vec<Slice>) -> Result<Self> {
        let t = TangleExpr { open_color, slices };
        t.check().map_err(|(slice, message)| Error::TypeMismatch {
            slice,
            offset: 0,
            message,
        })?;
        Ok(t)
    }

    pub fn preset(open_color: Label, p: &Preset) -> Result<Self> {
        Self::new(open_color, p.expand())
    }

    /// Replays the strand word; on failure returns the offending slice index.
    pub fn check(&self) -> std::result::Result<(), (usize, String)> {
        let mut word = vec![Strand {
            color: StrandColor::Open,
            dual: false,
        }];
        for (n, s) in self.slices.iter().enumerate() {
            step(&mut word, s).map_err(|m| (n, m))?;
        }
        if word.len() != 1 || word[0].color != StrandColor::Open || word[0].dual {
            let w: Vec<String> = word.iter().map(|s| s.to_string()).collect();
            return Err((
                self.slices.len(),
                format!("tangle ends on [{}] instead of the open strand", w.join(", ")),
            ));
        }
        Ok(())
    }
}

/// Applies one slice to a strand word.
pub fn step(word: &mut Vec<Strand>, s: &Slice) -> std::result::Result<(), String> {
    let n = word.len();
    let pair = |c: StrandColor, first_dual: bool| {
        [
            Strand {
                color: c.clone(),
                dual: first_dual,
            },
            Strand {
                color: c,
                dual: !first_dual,
            },
        ]
    };
    match s {
        Slice::Braid { pos, .. } => {
            if *pos < 1 || pos + 1 > n {
                return Err(format!("no strands {pos},{} in a word of {n}", pos + 1));
            }
            word.swap(pos - 1, *pos);
        }
        Slice::Twist { pos, .. } => {
            if *pos < 1 || *pos > n {
                return Err(format!("no strand {pos} in a word of {n}"));
            }
        }
        Slice::Ev { pos, side } => {
            if *pos < 1 || pos + 1 > n {
                return Err(format!("no strands {pos},{} in a word of {n}", pos + 1));
            }
            let (a, b) = (&word[pos - 1], &word[*pos]);
            let want_first_dual = *side == Side::L;
            if a.color != b.color || a.dual != want_first_dual || b.dual == want_first_dual {
                return Err(format!(
                    "ev{} needs a pair ({}) but found ({a}, {b})",
                    if want_first_dual { 'L' } else { 'R' },
                    if want_first_dual { "X*, X" } else { "X, X*" }
                ));
            }
            word.drain(pos - 1..=*pos);
        }
        Slice::Coev { pos, side } => {
            if *pos < 1 || *pos > n + 1 {
                return Err(format!("cannot insert at {pos} in a word of {n}"));
            }
            let p = pair(StrandColor::Open, *side == Side::L);
            word.splice(pos - 1..pos - 1, p);
        }
        Slice::InsertColor { pos, color } => {
            if *pos < 1 || *pos > n + 1 {
                return Err(format!("cannot insert at {pos} in a word of {n}"));
            }
            let p = pair(StrandColor::Fixed(color.clone()), false);
            word.splice(pos - 1..pos - 1, p);
        }
    }
    Ok(())
}

/// Grammar token for a color.
pub fn color_token(l: &Label) -> String {
    match l {
        Label::Typical(a) => format!("V({})", fmt_complex(*a)),
        Label::Simple { i, k } => format!("S({i},{k})"),
        Label::Projective { i, k } => format!("P({i},{k})"),
        Label::OneDim(k) => format!("C({k})"),
        Label::DeformX { i, l, eps } => format!("X({i},{l},{})", fmt_complex(*eps)),
        other => other.to_string(),
    }
}

impl fmt::Display for TangleExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "open {} |", color_token(&self.open_color))?;
        for (n, s) in self.slices.iter().enumerate() {
            if n > 0 {
                write!(f, ";")?;
            }
            match s {
                Slice::Braid { pos, sign } => write!(f, " br{} {pos}", sign.symbol())?,
                Slice::Twist { pos, sign } => write!(f, " tw{} {pos}", sign.symbol())?,
                Slice::Ev { pos, side } => write!(f, " ev{side:?} {pos}")?,
                Slice::Coev { pos, side } => write!(f, " coev{side:?} {pos}")?,
                Slice::InsertColor { pos, color } => {
                    write!(f, " insert {pos} {}", color_token(color))?
                }
            }
        }
        Ok(())
    }
}
