//! Perfect-square tests for polynomials.

use std::collections::BTreeMap;

use super::monomial::Monomial;
use super::sparse::SparsePoly;
use crate::field::Scalar;

/// Exact square root of `p` over its coefficient field, if one exists.
///
/// In odd characteristic (and characteristic 0) terms of the root are peeled
/// off in decreasing term order: the leading term of `p - s^2` must be
/// `2 * lt(s_0) * t` for the next root term `t`. In characteristic 2 a
/// polynomial is a square iff every exponent is even and every coefficient is
/// a square in k.
pub fn sqrt(p: &SparsePoly) -> Option<SparsePoly> {
    let f = p.field();
    if p.is_zero() {
        return Some(p.clone());
    }
    if f.characteristic() == 2 {
        let mut terms = Vec::with_capacity(p.len());
        for (m, c) in p.terms() {
            terms.push((m.sqrt()?, f.sqrt(c)?));
        }
        return Some(SparsePoly::from_terms(f, terms));
    }
    let (lm, lc) = p.leading_term()?.clone();
    let m0 = lm.sqrt()?;
    let c0 = f.sqrt(&lc)?;
    let two_c0_inv = f.inv(&f.mul(&f.from_i64(2), &c0))?;
    let mut root: Vec<(Monomial, Scalar)> = vec![(m0.clone(), c0.clone())];
    let mut rem: BTreeMap<Monomial, Scalar> = p.terms().iter().cloned().collect();
    subtract(&mut rem, f, &m0.mul(&m0), &f.mul(&c0, &c0));
    while let Some((m, c)) = rem.last_key_value() {
        let tm = m.div(&m0)?;
        if tm >= root.last().unwrap().0 {
            return None;
        }
        let tc = f.mul(c, &two_c0_inv);
        // rem -= 2*s*t + t^2 with s the root so far
        let two_tc = f.mul(&f.from_i64(2), &tc);
        for (sm, sc) in &root {
            subtract(&mut rem, f, &sm.mul(&tm), &f.mul(sc, &two_tc));
        }
        subtract(&mut rem, f, &tm.mul(&tm), &f.mul(&tc, &tc));
        root.push((tm, tc));
    }
    Some(SparsePoly::from_sorted_unchecked(f, root))
}

fn subtract(rem: &mut BTreeMap<Monomial, Scalar>, f: crate::field::Field, m: &Monomial, c: &Scalar) {
    match rem.get_mut(m) {
        Some(e) => {
            let v = f.sub(e, c);
            if f.is_zero(&v) {
                rem.remove(m);
            } else {
                *e = v;
            }
        }
        None => {
            if !f.is_zero(c) {
                rem.insert(m.clone(), f.neg(c));
            }
        }
    }
}

/// Whether `p = lambda * s^2` for a scalar `lambda` and polynomial `s`; on
/// success returns the class representative of `lambda` in k^x/(k^x)^2.
pub fn square_class_of(p: &SparsePoly) -> Option<Scalar> {
    let f = p.field();
    if p.is_zero() {
        return None;
    }
    let lc = p.leading_coeff();
    sqrt(&p.monic()).map(|_| f.square_class(&lc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    #[test]
    fn recovers_roots() {
        for f in [Field::Rational, Field::Prime(7)] {
            let s = SparsePoly::parse(f, "a_1_1 + 2*a_1_2*a_2_3 - a_3_3 + 1").unwrap();
            let sq = s.mul(&s);
            let r = sqrt(&sq).unwrap();
            assert!(r == s || r == s.neg());
            assert!(sqrt(&sq.add(&SparsePoly::var(f, crate::poly::VarId::new(1, 1)))).is_none());
        }
    }

    #[test]
    fn characteristic_two() {
        let f = Field::binary(10).unwrap();
        let s = SparsePoly::parse(f, "#5*a_1_1 + a_1_2*a_2_3 + #3").unwrap();
        assert!(sqrt(&s.mul(&s)).is_some());
        assert!(sqrt(&s).is_none());
    }

    #[test]
    fn scalar_classes() {
        let s = SparsePoly::parse(Field::Rational, "a_1_1 - a_1_2").unwrap();
        let five_sq = s.mul(&s).scale(&Field::Rational.from_i64(5));
        assert_eq!(square_class_of(&five_sq), Some(Field::Rational.from_i64(5)));
        assert_eq!(square_class_of(&s), None);
    }
}
