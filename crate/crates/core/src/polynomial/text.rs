//! Text grammar: a signed sum of terms `c*x^k`, `c*x`, `x^k`, `x`, `c`.
//! Whitespace is ignored on input; output is written highest degree first.

use crate::error::{Error, Result};
use crate::field::Field;

use super::Poly;

pub(super) fn parse<F: Field>(text: &str, field: &F) -> Result<Poly<F>> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let malformed = || Error::MalformedLiteral(text.to_string());
    if s.is_empty() {
        return Err(malformed());
    }

    let mut terms = Vec::new();
    let mut start = 0;
    for (i, b) in s.bytes().enumerate() {
        if i > start && (b == b'+' || b == b'-') {
            terms.push(&s[start..i]);
            start = i;
        }
    }
    terms.push(&s[start..]);

    let mut coeffs: Vec<F::Elem> = Vec::new();
    for term in terms {
        let (negative, body) = match term.as_bytes()[0] {
            b'-' => (true, &term[1..]),
            b'+' => (false, &term[1..]),
            _ => (false, term),
        };
        if body.is_empty() || body.starts_with(['+', '-']) {
            return Err(malformed());
        }
        let (coeff_text, mono) = match body.find('x') {
            None => (Some(body), None),
            Some(pos) => {
                let mono = &body[pos..];
                let coeff = if pos == 0 {
                    None
                } else {
                    Some(body[..pos].strip_suffix('*').ok_or_else(malformed)?)
                };
                (coeff, Some(mono))
            }
        };
        let mut c = match coeff_text {
            None => field.one(),
            Some("") => return Err(malformed()),
            Some(t) => field.parse_elem(t)?,
        };
        if negative {
            c = field.neg(&c);
        }
        let k = match mono {
            None => 0,
            Some("x") => 1,
            Some(m) => {
                let exp = m.strip_prefix("x^").ok_or_else(malformed)?;
                if exp.is_empty() || !exp.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(malformed());
                }
                exp.parse::<usize>().map_err(|_| malformed())?
            }
        };
        if coeffs.len() <= k {
            coeffs.resize(k + 1, field.zero());
        }
        coeffs[k] = field.add(&coeffs[k], &c);
    }
    Ok(Poly::new(field, coeffs))
}

pub(super) fn format<F: Field>(p: &Poly<F>) -> String {
    let k = p.field();
    let mut out = String::new();
    for (deg, c) in p.coeffs().iter().enumerate().rev() {
        if k.is_zero(c) {
            continue;
        }
        let negative = k.is_negative(c);
        let abs = if negative { k.neg(c) } else { c.clone() };
        match (out.is_empty(), negative) {
            (true, true) => out.push('-'),
            (true, false) => {}
            (false, true) => out.push_str(" - "),
            (false, false) => out.push_str(" + "),
        }
        let mono = match deg {
            0 => String::new(),
            1 => "x".to_string(),
            d => format!("x^{d}"),
        };
        if deg == 0 {
            out.push_str(&k.format_elem(&abs));
        } else if k.is_one(&abs) {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{}*{}", k.format_elem(&abs), mono));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
