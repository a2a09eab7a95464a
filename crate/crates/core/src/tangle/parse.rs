use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::Label;

use super::ast::{step, Preset, Side, Sign, Slice, Strand, StrandColor, TangleExpr};

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

type PResult<T> = std::result::Result<T, Error>;

impl<'a> Cursor<'a> {
    fn err<T>(&self, at: usize, msg: impl Into<String>) -> PResult<T> {
        Err(Error::Syntax {
            offset: at,
            message: msg.into(),
        })
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let t = self.rest();
        self.pos += t.len() - t.trim_start().len();
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos == self.src.len()
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn expect(&mut self, tok: &str) -> PResult<()> {
        self.skip_ws();
        if self.rest().starts_with(tok) {
            self.pos += tok.len();
            Ok(())
        } else {
            self.err(self.pos, format!("expected `{tok}`"))
        }
    }

    fn word(&mut self) -> (usize, &'a str) {
        self.skip_ws();
        let start = self.pos;
        let len = self
            .rest()
            .find(|c: char| !c.is_ascii_alphabetic())
            .unwrap_or(self.rest().len());
        self.pos += len;
        (start, &self.src[start..start + len])
    }

    fn number_text(&mut self, float: bool) -> (usize, &'a str) {
        self.skip_ws();
        let start = self.pos;
        let bytes = self.src.as_bytes();
        let mut i = start;
        let mut prev = b' ';
        while i < bytes.len() {
            let c = bytes[i];
            let ok = c.is_ascii_digit()
                || ((c == b'+' || c == b'-') && (i == start || (float && (prev == b'e' || prev == b'E'))))
                || (float && (c == b'.' || c == b'e' || c == b'E'));
            if !ok {
                break;
            }
            prev = c;
            i += 1;
        }
        self.pos = i;
        (start, &self.src[start..i])
    }

    fn int(&mut self) -> PResult<i64> {
        let (at, t) = self.number_text(false);
        t.parse::<i64>()
            .or_else(|_| self.err(at, format!("expected an integer, found `{t}`")))
    }

    fn uint(&mut self) -> PResult<u32> {
        self.skip_ws();
        let at = self.pos;
        let v = self.int()?;
        u32::try_from(v).or_else(|_| self.err(at, format!("index {v} must be non-negative")))
    }

    fn float(&mut self) -> PResult<f64> {
        let (at, t) = self.number_text(true);
        t.parse::<f64>()
            .or_else(|_| self.err(at, format!("expected a number, found `{t}`")))
    }

    fn sign(&mut self) -> PResult<Sign> {
        self.skip_ws();
        match self.rest().chars().next() {
            Some('+') => {
                self.pos += 1;
                Ok(Sign::Pos)
            }
            Some('-') => {
                self.pos += 1;
                Ok(Sign::Neg)
            }
            _ => self.err(self.pos, "expected `+` or `-`"),
        }
    }

    fn color(&mut self) -> PResult<Label> {
        self.skip_ws();
        let at = self.pos;
        let head = self.rest().chars().next();
        let label = match head {
            Some('V') => {
                self.expect("V(")?;
                let a = self.float()?;
                Label::Typical(Complex64::new(a, 0.0))
            }
            Some('S') => {
                self.expect("S(")?;
                let i = self.uint()?;
                self.expect(",")?;
                let k = self.int()?;
                Label::Simple { i, k }
            }
            Some('P') => {
                self.expect("P(")?;
                let i = self.uint()?;
                self.expect(",")?;
                let k = self.int()?;
                Label::Projective { i, k }
            }
            Some('C') => {
                self.expect("C(")?;
                Label::OneDim(self.int()?)
            }
            Some('X') => {
                self.expect("X(")?;
                let i = self.uint()?;
                self.expect(",")?;
                let l = self.int()?;
                self.expect(",")?;
                let e = self.float()?;
                Label::DeformX {
                    i,
                    l,
                    eps: Complex64::new(e, 0.0),
                }
            }
            _ => return self.err(at, "expected a color V(..), S(..), P(..), C(..) or X(..)"),
        };
        self.expect(")")?;
        Ok(label)
    }

    fn opt_uint(&mut self) -> PResult<Option<usize>> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => Ok(Some(self.uint()? as usize)),
            _ => Ok(None),
        }
    }
}

/// A slice before default positions are filled in.
enum RawSlice {
    Braid(usize, Sign),
    Twist(usize, Sign),
    Ev(Option<usize>, Side),
    Coev(Option<usize>, Side),
    Insert(usize, Label),
}

fn slice(c: &mut Cursor) -> PResult<RawSlice> {
    let (at, w) = c.word();
    let side = |s: &str| if s.ends_with('L') { Side::L } else { Side::R };
    Ok(match w {
        "br" | "tw" => {
            let s = c.sign_glued()?;
            let p = c.uint()? as usize;
            if w == "br" {
                RawSlice::Braid(p, s)
            } else {
                RawSlice::Twist(p, s)
            }
        }
        "evL" | "evR" => RawSlice::Ev(c.opt_uint()?, side(w)),
        "coevL" | "coevR" => RawSlice::Coev(c.opt_uint()?, side(w)),
        "insert" => {
            let p = c.uint()? as usize;
            RawSlice::Insert(p, c.color()?)
        }
        "" => return c.err(at, "expected a slice"),
        other => return c.err(at, format!("unknown slice `{other}`")),
    })
}

impl<'a> Cursor<'a> {
    /// A sign written directly after a keyword, as in `br+`.
    fn sign_glued(&mut self) -> PResult<Sign> {
        match self.rest().chars().next() {
            Some('+') | Some('-') => self.sign(),
            _ => self.err(self.pos, "expected `+` or `-` directly after the keyword"),
        }
    }
}

/// Parses the tangle grammar into normal form.
pub fn parse_tangle(text: &str) -> Result<TangleExpr> {
    let mut c = Cursor { src: text, pos: 0 };
    let (at, w) = c.word();
    if w != "open" {
        return c.err(at, "expected `open`");
    }
    let open_color = c.color()?;
    c.expect("|")?;

    let save = c.pos;
    let (at, w) = c.word();
    let preset = match w {
        "hopf" => Some(Preset::Hopf(c.color()?)),
        "powerhopf" => {
            let n = c.int()?;
            Some(Preset::PowerHopf(n, c.color()?))
        }
        "twistloop" => Some(Preset::TwistLoop(c.sign()?)),
        _ => {
            c.pos = save;
            None
        }
    };
    if let Some(p) = preset {
        if !c.at_end() {
            return c.err(c.pos, "unexpected input after preset");
        }
        let t = TangleExpr {
            open_color,
            slices: p.expand(),
        };
        return t.check().map(|_| t).map_err(|(slice, message)| Error::TypeMismatch {
            slice,
            offset: at,
            message,
        });
    }

    let mut raw = Vec::new();
    if !c.at_end() {
        loop {
            c.skip_ws();
            let start = c.pos;
            raw.push((start, slice(&mut c)?));
            if c.at_end() {
                break;
            }
            c.expect(";")?;
        }
    }

    // fill default positions while replaying the strand word
    let mut word = vec![Strand {
        color: StrandColor::Open,
        dual: false,
    }];
    let mut slices = Vec::with_capacity(raw.len());
    for (n, (offset, r)) in raw.into_iter().enumerate() {
        let len = word.len();
        let s = match r {
            RawSlice::Braid(pos, sign) => Slice::Braid { pos, sign },
            RawSlice::Twist(pos, sign) => Slice::Twist { pos, sign },
            RawSlice::Ev(pos, side) => Slice::Ev {
                pos: pos.unwrap_or(len.saturating_sub(1)),
                side,
            },
            RawSlice::Coev(pos, side) => Slice::Coev {
                pos: pos.unwrap_or(len + 1),
                side,
            },
            RawSlice::Insert(pos, color) => Slice::InsertColor { pos, color },
        };
        step(&mut word, &s).map_err(|message| Error::TypeMismatch {
            slice: n,
            offset,
            message,
        })?;
        slices.push(s);
    }
    let t = TangleExpr { open_color, slices };
    t.check().map_err(|(slice, message)| Error::TypeMismatch {
        slice,
        offset: text.len(),
        message,
    })?;
    Ok(t)
}

/// Parses a single color token such as `P(1,0)` or `V(0.37)`.
pub fn parse_color(text: &str) -> Result<Label> {
    let mut c = Cursor { src: text, pos: 0 };
    let label = c.color()?;
    if !c.at_end() {
        return c.err(c.pos, "unexpected input after color");
    }
    Ok(label)
}
