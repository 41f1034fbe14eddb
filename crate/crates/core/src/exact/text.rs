//! Sparse text form of rational polynomials: `c*t^k` terms joined by
//! ` + ` / ` - `, highest degree first, e.g. `t^6 - 20*t^3 - 8` or
//! `-3456/7*z + 1`. Unit coefficients are omitted and the exponent `1` is
//! dropped. The printer output parses back to the same polynomial and
//! reprints byte for byte.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{ExactRational, RatPoly};
use crate::error::{Error, Result};

pub fn format_poly(p: &RatPoly, var: &str) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono = match k {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{k}"),
        };
        if k == 0 {
            out.push_str(&mag.to_string());
        } else if mag.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{mag}*{mono}"));
        }
    }
    out
}

pub fn parse_rational(s: &str) -> Result<ExactRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational literal {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(ExactRational::new(n, d))
        }
        None => Ok(ExactRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Parse the sparse form. Any single identifier is accepted as the
/// variable, but all terms must use the same one; `*` between coefficient
/// and variable is optional. Repeated exponents are summed.
pub fn parse_poly(s: &str) -> Result<RatPoly> {
    let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if text.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut current = String::new();
    let mut negative = false;
    for (i, ch) in text.char_indices() {
        if (ch == '+' || ch == '-') && i > 0 && !text[..i].ends_with('^') {
            terms.push((negative, std::mem::take(&mut current)));
            negative = ch == '-';
        } else if (ch == '+' || ch == '-') && i == 0 {
            negative = ch == '-';
        } else {
            current.push(ch);
        }
    }
    terms.push((negative, current));

    let mut var: Option<String> = None;
    let mut coeffs: Vec<ExactRational> = Vec::new();
    for (neg, body) in terms {
        if body.is_empty() {
            return Err(Error::Parse(format!("empty term in {s:?}")));
        }
        let split = body
            .find(|c: char| c.is_ascii_alphabetic() || c == '_')
            .unwrap_or(body.len());
        let (coeff_text, mono_text) = body.split_at(split);
        let coeff_text = coeff_text.strip_suffix('*').unwrap_or(coeff_text);
        let mut coeff = if coeff_text.is_empty() {
            ExactRational::one()
        } else {
            parse_rational(coeff_text)?
        };
        if neg {
            coeff = -coeff;
        }
        let k = if mono_text.is_empty() {
            0
        } else {
            let (name, exp) = match mono_text.split_once('^') {
                Some((n, e)) => (
                    n,
                    e.parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad exponent in {mono_text:?}")))?,
                ),
                None => (mono_text, 1),
            };
            if !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return Err(Error::Parse(format!("bad variable {name:?}")));
            }
            match &var {
                Some(v) if v != name => {
                    return Err(Error::Parse(format!("mixed variables {v:?} and {name:?}")))
                }
                _ => var = Some(name.to_string()),
            }
            exp
        };
        if coeffs.len() <= k {
            coeffs.resize(k + 1, ExactRational::zero());
        }
        coeffs[k] += coeff;
    }
    Ok(RatPoly::from_coeffs(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn canonical_examples_reprint() {
        for s in [
            "t^6 - 20*t^3 - 8",
            "-28*z^3 + 20736*z^2 - 143327232*z + 330225942528",
            "-3456/7*t + 1",
            "t",
            "-t^2",
            "0",
            "5/3",
        ] {
            let var = if s.contains('z') { "z" } else { "t" };
            assert_eq!(format_poly(&parse_poly(s).unwrap(), var), s);
        }
    }

    #[test]
    fn lenient_input() {
        let p = parse_poly("2 t^2+ 3*t -t + 1/2").unwrap();
        assert_eq!(p.coeffs(), &[rat(1, 2), rat(2, 1), rat(2, 1)]);
        assert!(parse_poly("x + y").is_err());
        assert!(parse_poly("1/0").is_err());
        assert!(parse_poly("").is_err());
    }
}
