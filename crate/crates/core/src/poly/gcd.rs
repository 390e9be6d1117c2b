//! Multivariate GCD by primitive polynomial remainder sequences with
//! recursive content computation.

use super::monomial::{Monomial, VarId};
use super::sparse::SparsePoly;

/// Monic greatest common divisor. `gcd(0, b)` is `b` made monic.
pub fn gcd(a: &SparsePoly, b: &SparsePoly) -> SparsePoly {
    let f = a.field();
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return SparsePoly::one(f);
    }
    if a.len() == 1 && b.len() == 1 {
        let (ma, mb) = (&a.terms()[0].0, &b.terms()[0].0);
        let common = Monomial::from_pairs(
            ma.pairs().iter().map(|&(v, e)| (v, e.min(mb.exponent(v)))),
        );
        return SparsePoly::monomial(f, common, f.one());
    }
    if a.exact_div(b).is_ok() {
        return b.monic();
    }
    if b.exact_div(a).is_ok() {
        return a.monic();
    }
    let va = a.vars();
    let vb = b.vars();
    let x = *va.union(&vb).next().expect("non-constant");
    match (va.contains(&x), vb.contains(&x)) {
        (true, false) => gcd(&content(a, x), b),
        (false, true) => gcd(a, &content(b, x)),
        _ => {
            let ca = content(a, x);
            let cb = content(b, x);
            let pa = a.exact_div(&ca).expect("content divides");
            let pb = b.exact_div(&cb).expect("content divides");
            let c = gcd(&ca, &cb);
            let g = primitive_prs(pa, pb, x);
            c.mul(&g).monic()
        }
    }
}

/// GCD of the coefficients of `p` viewed as a polynomial in `x`.
pub fn content(p: &SparsePoly, x: VarId) -> SparsePoly {
    let mut coeffs: Vec<SparsePoly> = p.coefficients_in(x).into_iter().filter(|c| !c.is_zero()).collect();
    coeffs.sort_by_key(|c| c.len());
    let mut g = SparsePoly::zero(p.field());
    for c in coeffs {
        g = gcd(&g, &c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn primitive_part(p: &SparsePoly, x: VarId) -> SparsePoly {
    let c = content(p, x);
    p.exact_div(&c).expect("content divides")
}

/// Pseudo-remainder of `a` by `b` in `x` (deg_x b > 0).
fn prem(a: &SparsePoly, b: &SparsePoly, x: VarId) -> SparsePoly {
    let f = a.field();
    let db = b.degree_in(x);
    let bc = b.coefficients_in(x);
    let lb = bc[db as usize].clone();
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(x) >= db {
        let dr = r.degree_in(x);
        let lr = r.coefficients_in(x)[dr as usize].clone();
        let shift = Monomial::from_pairs([(x, dr - db)]);
        r = r.mul(&lb).sub(&b.mul(&lr).mul_term(&shift, &f.one()));
    }
    r
}

fn primitive_prs(a: SparsePoly, b: SparsePoly, x: VarId) -> SparsePoly {
    let (mut a, mut b) = if a.degree_in(x) >= b.degree_in(x) { (a, b) } else { (b, a) };
    loop {
        if b.is_zero() {
            return primitive_part(&a, x).monic();
        }
        if b.degree_in(x) == 0 {
            return SparsePoly::one(a.field());
        }
        let r = prem(&a, &b, x);
        a = b;
        b = if r.is_zero() { r } else { primitive_part(&r, x) };
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn p(s: &str) -> SparsePoly {
        SparsePoly::parse(Field::Rational, s).unwrap()
    }

    #[test]
    fn common_factor_recovered() {
        let g = p("a_1_1*a_2_2 - a_1_2*a_2_1");
        let q = p("a_1_1 + a_1_3 + 1");
        let r = p("a_2_3^2 - a_1_1");
        let got = gcd(&g.mul(&q), &g.mul(&r));
        assert_eq!(got, g.monic());
    }

    #[test]
    fn gcd_with_zero_is_monic_input() {
        let f = p("3*a_1_1 + 6");
        assert_eq!(gcd(&f, &SparsePoly::zero(Field::Rational)), p("a_1_1 + 2"));
    }

    #[test]
    fn coprime_inputs() {
        assert!(gcd(&p("a_1_1^2 + a_1_2"), &p("a_1_1 + a_1_2^2")).is_one());
        assert!(gcd(&p("a_1_1^2 - a_1_2^2"), &p("a_1_1 + a_1_2")).monic() == p("a_1_1 + a_1_2"));
    }
}
