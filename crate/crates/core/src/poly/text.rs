//! Canonical text form: terms in decreasing graded-lex order, variables
//! printed `a_i_j`, coefficient first, e.g. `a_1_1^2 - 3*a_1_2*a_2_1 + 5`.

use std::fmt;

use super::monomial::{Monomial, VarId};
use super::sparse::SparsePoly;
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

pub(crate) fn write_poly(p: &SparsePoly, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let field = p.field();
    if p.is_zero() {
        return write!(f, "0");
    }
    for (k, (m, c)) in p.terms().iter().enumerate() {
        let (negative, mag) = match c {
            Scalar::Q(q) if q.signum() < 0 => (true, Scalar::Q(q.neg())),
            _ => (false, c.clone()),
        };
        if k == 0 {
            if negative {
                write!(f, "-")?;
            }
        } else if negative {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        let one = field.is_one(&mag);
        if m.is_one() {
            write!(f, "{}", field.format(&mag))?;
        } else if one {
            write!(f, "{m}")?;
        } else {
            write!(f, "{}*{m}", field.format(&mag))?;
        }
    }
    Ok(())
}

pub(crate) fn parse_poly(field: Field, s: &str) -> Result<SparsePoly> {
    let err = |msg: &str| Error::Parse(format!("{msg} in `{s}`"));
    let mut terms: Vec<(Monomial, Scalar)> = Vec::new();
    let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
    if chars.is_empty() {
        return Err(err("empty polynomial"));
    }
    let mut i = 0;
    while i < chars.len() {
        let mut negative = false;
        while i < chars.len() && (chars[i] == '+' || chars[i] == '-') {
            if chars[i] == '-' {
                negative = !negative;
            }
            i += 1;
        }
        let start = i;
        while i < chars.len() && chars[i] != '+' && chars[i] != '-' {
            i += 1;
        }
        let body: String = chars[start..i].iter().collect();
        if body.is_empty() {
            return Err(err("dangling sign"));
        }
        let mut coeff = field.one();
        let mut pairs = Vec::new();
        for factor in body.split('*') {
            if let Some(rest) = factor.strip_prefix("a_") {
                let (var, exp) = match rest.split_once('^') {
                    Some((v, e)) => (v, e.parse::<u16>().map_err(|_| err("bad exponent"))?),
                    None => (rest, 1),
                };
                let (r, c) = var.split_once('_').ok_or_else(|| err("bad variable"))?;
                let r: usize = r.parse().map_err(|_| err("bad row"))?;
                let c: usize = c.parse().map_err(|_| err("bad column"))?;
                if r == 0 || r > 255 || c > 255 {
                    return Err(err("variable index out of range"));
                }
                pairs.push((VarId::new(r, c), exp));
            } else {
                coeff = field.mul(&coeff, &field.parse_scalar(factor)?);
            }
        }
        if negative {
            coeff = field.neg(&coeff);
        }
        terms.push((Monomial::from_pairs(pairs), coeff));
    }
    Ok(SparsePoly::from_terms(field, terms))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prints_canonically() {
        let f = Field::Rational;
        let p = SparsePoly::parse(f, "5 - 3*a_1_2*a_2_1 + a_1_1^2").unwrap();
        assert_eq!(p.to_string(), "a_1_1^2 - 3*a_1_2*a_2_1 + 5");
        assert_eq!(SparsePoly::parse(f, &p.to_string()).unwrap(), p);
        let z = SparsePoly::parse(f, "a_1_1 - a_1_1").unwrap();
        assert_eq!(z.to_string(), "0");
    }

    #[test]
    fn binary_field_coefficients() {
        let f = Field::binary(10).unwrap();
        let p = SparsePoly::parse(f, "#3f*a_1_1 + a_2_2 + #1").unwrap();
        assert_eq!(SparsePoly::parse(f, &p.to_string()).unwrap(), p);
    }
}
