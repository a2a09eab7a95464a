//! Literals accepted on the command line beyond the tangle color grammar.

use num_complex::Complex64;
use unrolled_sl2::singlet::SingletLabel;
use unrolled_sl2::tangle::parse_color;
use unrolled_sl2::{Label, Result as CoreResult};

/// Parses `a`, `bi`, `a+bi` or `a-bi`.
pub fn parse_complex(text: &str) -> Result<Complex64, String> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || format!("`{text}` is not a complex literal of the form a+bi");
    if s.is_empty() {
        return Err(bad());
    }
    let Some(body) = s.strip_suffix('i') else {
        return s.parse::<f64>().map(|x| Complex64::new(x, 0.0)).map_err(|_| bad());
    };
    // split at the last sign that is not part of an exponent
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&n| (bytes[n] == b'+' || bytes[n] == b'-') && !matches!(bytes[n - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(n) => (&body[..n], &body[n..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        t => t.parse::<f64>().map_err(|_| bad())?,
    };
    let re = re.parse::<f64>().map_err(|_| bad())?;
    Ok(Complex64::new(re, im))
}

/// `M(t,s)` or `F(λ)` with a complex λ.
pub fn parse_singlet(text: &str) -> Result<SingletLabel, String> {
    let s = text.trim();
    let inner = |p: &str| {
        s.strip_prefix(p)
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| format!("`{text}` is not a singlet label M(t,s) or F(lambda)"))
    };
    if s.starts_with("M(") {
        let body = inner("M(")?;
        let (t, sv) = body
            .split_once(',')
            .ok_or_else(|| format!("`{text}`: expected M(t,s)"))?;
        let t = t.trim().parse::<i64>().map_err(|e| format!("`{text}`: {e}"))?;
        let sv = sv.trim().parse::<u32>().map_err(|e| format!("`{text}`: {e}"))?;
        if sv == 0 {
            return Err(format!("`{text}`: s must be at least 1"));
        }
        Ok(SingletLabel::Atypical { t, s: sv })
    } else if s.starts_with("F(") {
        Ok(SingletLabel::Fock(parse_complex(inner("F(")?)?))
    } else {
        Err(format!("`{text}` is not a singlet label M(t,s) or F(lambda)"))
    }
}

/// A tangle-grammar color, plus `E(λ)` for the self-extension module and
/// `V(a+bi)` for a typical module with complex weight.
pub fn parse_module_label(text: &str) -> CoreResult<Label> {
    let t = text.trim();
    let complex_arg = |head: &str| {
        t.strip_prefix(head)
            .and_then(|b| b.strip_suffix(')'))
            .and_then(|b| parse_complex(b).ok())
    };
    if let Some(z) = complex_arg("E(") {
        return Ok(Label::SelfExt(z));
    }
    parse_color(t).or_else(|e| complex_arg("V(").map(Label::Typical).ok_or(e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_forms() {
        assert_eq!(parse_complex("0.3").unwrap(), Complex64::new(0.3, 0.0));
        assert_eq!(parse_complex("-0.6+0.0i").unwrap(), Complex64::new(-0.6, 0.0));
        assert_eq!(parse_complex("1e-3-2.5e+1i").unwrap(), Complex64::new(1e-3, -25.0));
        assert_eq!(parse_complex("-i").unwrap(), Complex64::new(0.0, -1.0));
        assert_eq!(parse_complex("2i").unwrap(), Complex64::new(0.0, 2.0));
        assert!(parse_complex("x+1i").is_err());
    }

    #[test]
    fn singlet_forms() {
        assert_eq!(parse_singlet("M(2,1)").unwrap(), SingletLabel::Atypical { t: 2, s: 1 });
        assert_eq!(
            parse_singlet("F(0.5-1i)").unwrap(),
            SingletLabel::Fock(Complex64::new(0.5, -1.0))
        );
        assert!(parse_singlet("M(1,0)").is_err());
    }

    #[test]
    fn module_labels() {
        assert_eq!(
            parse_module_label("V(0.5-2i)").unwrap(),
            Label::Typical(Complex64::new(0.5, -2.0))
        );
        assert_eq!(
            parse_module_label("E(0.25)").unwrap(),
            Label::SelfExt(Complex64::new(0.25, 0.0))
        );
        assert_eq!(parse_module_label("S(1,-1)").unwrap(), Label::Simple { i: 1, k: -1 });
        assert!(parse_module_label("Q(1)").is_err());
    }
}
