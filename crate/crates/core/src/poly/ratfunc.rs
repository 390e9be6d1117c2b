//! Reduced fractions in K = k(a_{i,j}) with a factored denominator.
//!
//! Denominators that arise in degree computations are products of powers of
//! brackets and variables, all of which are known to be irreducible. Keeping
//! them factored makes addition a matter of merging factor lists and makes
//! cancellation a sequence of trial divisions rather than GCDs. Factors of
//! unknown factorization (from inverting an arbitrary numerator) are kept as
//! composite factors and cancelled by GCD.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rustc_hash::FxHashMap;

use super::gcd::gcd;
use super::monomial::{Monomial, VarId};
use super::sparse::SparsePoly;
use super::sqrt::sqrt;
use crate::domain::{Domain, ZeroTest};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

/// A monic, non-constant denominator factor.
#[derive(Clone, Debug)]
pub struct Factor {
    poly: Arc<SparsePoly>,
    prime: bool,
}

impl Factor {
    /// A factor known to be irreducible. `p` is made monic.
    pub fn irreducible(p: SparsePoly) -> Factor {
        assert!(!p.is_constant(), "constant factor");
        Factor { poly: Arc::new(p.monic()), prime: true }
    }

    fn composite(p: SparsePoly) -> Factor {
        Factor { poly: Arc::new(p.monic()), prime: false }
    }

    pub fn poly(&self) -> &SparsePoly {
        &self.poly
    }

    pub fn is_irreducible(&self) -> bool {
        self.prime
    }
}

impl PartialEq for Factor {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.poly, &other.poly) || self.poly == other.poly
    }
}

impl Eq for Factor {}

impl PartialOrd for Factor {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Factor {
    fn cmp(&self, other: &Self) -> Ordering {
        if Arc::ptr_eq(&self.poly, &other.poly) {
            return Ordering::Equal;
        }
        self.poly.cmp(&other.poly)
    }
}

/// `num / prod(f^e)` with no irreducible denominator factor dividing `num`.
#[derive(Clone, Debug)]
pub struct RatFunc {
    num: SparsePoly,
    den: Vec<(Factor, u32)>,
}

impl RatFunc {
    pub fn zero(field: Field) -> RatFunc {
        RatFunc { num: SparsePoly::zero(field), den: Vec::new() }
    }

    pub fn one(field: Field) -> RatFunc {
        RatFunc { num: SparsePoly::one(field), den: Vec::new() }
    }

    pub fn constant(field: Field, c: Scalar) -> RatFunc {
        RatFunc::from_poly(SparsePoly::constant(field, c))
    }

    pub fn var(field: Field, v: VarId) -> RatFunc {
        RatFunc::from_poly(SparsePoly::var(field, v))
    }

    pub fn from_poly(p: SparsePoly) -> RatFunc {
        RatFunc { num: p, den: Vec::new() }
    }

    /// `1 / f` for an irreducible `f`.
    pub fn inverse_of_irreducible(f: &Factor) -> RatFunc {
        let field = f.poly().field();
        RatFunc { num: SparsePoly::one(field), den: vec![(f.clone(), 1)] }
    }

    /// `num / den` for arbitrary polynomials.
    pub fn new(num: SparsePoly, den: SparsePoly) -> Result<RatFunc> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let inv = RatFunc::from_poly(den).inv()?;
        Ok(RatFunc::from_poly(num).mul(&inv))
    }

    /// `num / prod(f^e)`, reduced.
    pub fn from_factored(num: SparsePoly, den: Vec<(Factor, u32)>) -> RatFunc {
        let mut r = RatFunc { num, den: normalize_factors(den) };
        r.cancel();
        r
    }

    pub fn field(&self) -> Field {
        self.num.field()
    }

    pub fn numer(&self) -> &SparsePoly {
        &self.num
    }

    pub fn den_factors(&self) -> &[(Factor, u32)] {
        &self.den
    }

    /// The expanded (monic) denominator.
    pub fn denom(&self) -> SparsePoly {
        let mut acc = SparsePoly::one(self.field());
        for (f, e) in &self.den {
            acc = acc.mul(&f.poly().pow(*e));
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty()
    }

    pub fn as_scalar(&self) -> Option<Scalar> {
        if self.den.is_empty() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn vars(&self) -> BTreeSet<VarId> {
        let mut out = self.num.vars();
        for (f, _) in &self.den {
            out.extend(f.poly().vars());
        }
        out
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn scale(&self, s: &Scalar) -> RatFunc {
        if self.field().is_zero(s) {
            return RatFunc::zero(self.field());
        }
        RatFunc { num: self.num.scale(s), den: self.den.clone() }
    }

    pub fn try_mul(&self, other: &RatFunc) -> Result<RatFunc> {
        if self.field() != other.field() {
            return Err(Error::FieldMismatch);
        }
        Ok(self.mul(other))
    }

    pub fn try_add(&self, other: &RatFunc) -> Result<RatFunc> {
        if self.field() != other.field() {
            return Err(Error::FieldMismatch);
        }
        Ok(self.add(other))
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        if self.is_zero() || other.is_zero() {
            return RatFunc::zero(self.field());
        }
        // cancellation can only happen across the two fractions
        let mut a = RatFunc { num: self.num.clone(), den: other.den.clone() };
        a.cancel();
        let mut b = RatFunc { num: other.num.clone(), den: self.den.clone() };
        b.cancel();
        let mut den = a.den;
        den.extend(b.den);
        RatFunc { num: a.num.mul(&b.num), den: normalize_factors(den) }
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            let mut r = RatFunc { num: self.num.add(&other.num), den: self.den.clone() };
            r.cancel();
            return r;
        }
        let lcm = merge_factors(&self.den, &other.den, u32::max);
        let num = self
            .num
            .mul(&cofactor(&lcm, &self.den))
            .add(&other.num.mul(&cofactor(&lcm, &other.den)));
        let mut r = RatFunc { num, den: lcm };
        r.cancel();
        r
    }

    pub fn sub(&self, other: &RatFunc) -> RatFunc {
        self.add(&other.neg())
    }

    pub fn inv(&self) -> Result<RatFunc> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let field = self.field();
        let lc = self.num.leading_coeff();
        let mut den = Vec::new();
        let (content, rest) = split_monomial_content(&self.num.monic());
        for &(v, e) in content.pairs() {
            den.push((Factor::irreducible(SparsePoly::var(field, v)), e as u32));
        }
        if !rest.is_constant() {
            den.push((Factor::composite(rest), 1));
        }
        let num = self.denom().scale(&field.inv(&lc).expect("nonzero"));
        Ok(RatFunc { num, den: normalize_factors(den) })
    }

    pub fn div(&self, other: &RatFunc) -> Result<RatFunc> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, e: i32) -> Result<RatFunc> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let k = e.unsigned_abs();
        let den = base.den.iter().map(|(f, m)| (f.clone(), m * k)).collect();
        Ok(RatFunc { num: base.num.pow(k), den })
    }

    /// Valuation at the irreducible polynomial `p`: the exponent of `p` in
    /// the numerator minus its exponent in the denominator.
    pub fn ord_at(&self, p: &SparsePoly) -> Result<i64> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if p.is_constant() {
            return Ok(0);
        }
        let p = p.monic();
        let mut ord = self.num.divide_out(&p).0 as i64;
        for (f, e) in &self.den {
            let k = if f.prime {
                u32::from(*f.poly == p)
            } else {
                f.poly().divide_out(&p).0
            };
            ord -= (k * e) as i64;
        }
        Ok(ord)
    }

    /// Decides whether `self = lambda * s^2` with `lambda` in k and `s` in K.
    /// Returns the class of `lambda` in k^x/(k^x)^2 on success.
    pub fn square_class_mod_scalars(&self) -> Result<Option<Scalar>> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let field = self.field();
        let mut rest = self.num.clone();
        for (f, e) in &self.den {
            if e % 2 == 1 {
                if f.prime {
                    return Ok(None);
                }
                rest = rest.mul(f.poly());
            }
        }
        let lc = rest.leading_coeff();
        Ok(sqrt(&rest.monic()).map(|_| field.square_class(&lc)))
    }

    /// Image under the homomorphism sending each variable `v` to `value(v)`.
    /// Fails with [`Error::DenominatorVanishes`] if a denominator factor maps to 0.
    pub fn eval_in<D: Domain>(&self, dom: &D, value: &mut impl FnMut(VarId) -> D::Elem) -> Result<D::Elem> {
        let mut cache: FxHashMap<VarId, D::Elem> = FxHashMap::default();
        let mut lookup = |v: VarId| cache.entry(v).or_insert_with(|| value(v)).clone();
        let num = eval_poly(&self.num, dom, &mut lookup);
        let mut den = dom.one();
        for (f, e) in &self.den {
            let fv = eval_poly(f.poly(), dom, &mut lookup);
            if dom.zero_test(&fv) == ZeroTest::Zero {
                return Err(Error::DenominatorVanishes);
            }
            den = dom.mul(&den, &dom.pow(&fv, *e));
        }
        Ok(dom.mul(&num, &dom.inv(&den)?))
    }

    /// `self * prod(common)` as a polynomial; `common` must be a multiple of
    /// the denominator.
    pub fn numerator_over(&self, common: &[(Factor, u32)]) -> SparsePoly {
        debug_assert!(self.den.iter().all(|(f, e)| common.iter().any(|(g, k)| g == f && k >= e)));
        if common.is_empty() {
            return self.num.clone();
        }
        self.num.mul(&cofactor(common, &self.den))
    }

    fn cancel(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        let mut work: Vec<(Factor, u32)> = std::mem::take(&mut self.den);
        let mut done = Vec::with_capacity(work.len());
        while let Some((f, mut e)) = work.pop() {
            if f.prime {
                while e > 0 && divides(f.poly(), &self.num) {
                    match self.num.exact_div(f.poly()) {
                        Ok(q) => {
                            self.num = q;
                            e -= 1;
                        }
                        Err(_) => break,
                    }
                }
                if e > 0 {
                    done.push((f, e));
                }
            } else {
                let g = gcd(&self.num, f.poly());
                if g.is_constant() {
                    done.push((f, e));
                    continue;
                }
                self.num = self.num.exact_div(&g).expect("gcd divides");
                let rest = f.poly().exact_div(&g).expect("gcd divides");
                if e > 1 {
                    work.push((f, e - 1));
                }
                if !rest.is_constant() {
                    work.push((Factor::composite(rest), 1));
                }
            }
        }
        self.den = normalize_factors(done);
    }
}

/// Evaluates a polynomial in a domain, term by term.
pub fn eval_poly<D: Domain>(p: &SparsePoly, dom: &D, value: &mut impl FnMut(VarId) -> D::Elem) -> D::Elem {
    let mut acc = dom.zero();
    for (m, c) in p.terms() {
        let mut t = dom.from_scalar(c);
        for &(v, e) in m.pairs() {
            t = dom.mul(&t, &dom.pow(&value(v), e as u32));
        }
        acc = dom.add(&acc, &t);
    }
    acc
}

fn normalize_factors(mut den: Vec<(Factor, u32)>) -> Vec<(Factor, u32)> {
    den.retain(|(_, e)| *e > 0);
    refine_composites(&mut den);
    den.sort_by(|a, b| a.0.cmp(&b.0));
    let mut out: Vec<(Factor, u32)> = Vec::with_capacity(den.len());
    for (f, e) in den {
        match out.last_mut() {
            Some(last) if last.0 == f => {
                last.1 += e;
                last.0.prime &= f.prime;
            }
            _ => out.push((f, e)),
        }
    }
    out
}

/// Splits known prime factors out of composite ones.
fn refine_composites(den: &mut Vec<(Factor, u32)>) {
    if den.iter().all(|(f, _)| f.prime) {
        return;
    }
    let primes: Vec<Factor> = den.iter().filter(|(f, _)| f.prime).map(|(f, _)| f.clone()).collect();
    let mut extra: Vec<(Factor, u32)> = Vec::new();
    for (f, e) in den.iter_mut() {
        if f.prime {
            continue;
        }
        let mut rest = f.poly().clone();
        for p in &primes {
            while p.poly().total_degree() <= rest.total_degree() {
                match rest.exact_div(p.poly()) {
                    Ok(q) => {
                        rest = q;
                        extra.push((p.clone(), *e));
                    }
                    Err(_) => break,
                }
            }
        }
        if rest.total_degree() < f.poly().total_degree() {
            *f = Factor::composite(rest);
            if f.poly().is_constant() {
                *e = 0;
            }
        }
    }
    den.retain(|(_, e)| *e > 0);
    den.extend(extra);
}

/// Least common multiple of two sorted factor lists.
pub fn lcm_factors(a: &[(Factor, u32)], b: &[(Factor, u32)]) -> Vec<(Factor, u32)> {
    merge_factors(a, b, u32::max)
}

fn merge_factors(a: &[(Factor, u32)], b: &[(Factor, u32)], pick: fn(u32, u32) -> u32) -> Vec<(Factor, u32)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ord = match (a.get(i), b.get(j)) {
            (Some(x), Some(y)) => x.0.cmp(&y.0),
            (Some(_), None) => Ordering::Less,
            _ => Ordering::Greater,
        };
        match ord {
            Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Greater => {
                out.push(b[j].clone());
                j += 1;
            }
            Ordering::Equal => {
                out.push((a[i].0.clone(), pick(a[i].1, b[j].1)));
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// `lcm / part` expanded, where `part` is a sub-multiset of `lcm`.
fn cofactor(lcm: &[(Factor, u32)], part: &[(Factor, u32)]) -> SparsePoly {
    let field = lcm.first().map(|f| f.0.poly().field()).expect("nonempty");
    let mut acc = SparsePoly::one(field);
    for (f, e) in lcm {
        let have = part.iter().find(|g| g.0 == *f).map_or(0, |g| g.1);
        if *e > have {
            acc = acc.mul(&f.poly().pow(e - have));
        }
    }
    acc
}

fn split_monomial_content(p: &SparsePoly) -> (Monomial, SparsePoly) {
    let mut common: Option<Monomial> = None;
    for (m, _) in p.terms() {
        common = Some(match common {
            None => m.clone(),
            Some(c) => Monomial::from_pairs(c.pairs().iter().map(|&(v, e)| (v, e.min(m.exponent(v))))),
        });
    }
    let common = common.unwrap_or_default();
    if common.is_one() {
        return (common, p.clone());
    }
    let rest = p.exact_div(&SparsePoly::monomial(p.field(), common.clone(), p.field().one())).expect("content divides");
    (common, rest)
}

/// Cheap necessary condition for `p | num`: `num` must vanish at a random
/// point of the hypersurface p = 0. Only variables occurring linearly in `p`
/// are solved for; otherwise the test is skipped.
fn divides(p: &SparsePoly, num: &SparsePoly) -> bool {
    let field = p.field();
    let ef = field.evaluation_field();
    let Some(&x) = p.vars().iter().find(|&&v| p.degree_in(v) == 1) else {
        return true;
    };
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ p.len() as u64);
    let mut values: FxHashMap<VarId, Scalar> = FxHashMap::default();
    let coeffs = p.coefficients_in(x);
    let reduce_eval = |q: &SparsePoly, values: &mut FxHashMap<VarId, Scalar>, rng: &mut ChaCha8Rng| -> Option<Scalar> {
        let mut acc = ef.zero();
        for (m, c) in q.terms() {
            let mut t = field.reduce(c)?;
            for &(v, e) in m.pairs() {
                let xv = values.entry(v).or_insert_with(|| ef.random(rng)).clone();
                t = ef.mul(&t, &ef.pow(&xv, e as u64));
            }
            acc = ef.add(&acc, &t);
        }
        Some(acc)
    };
    let (Some(b), Some(a)) = (reduce_eval(&coeffs[0], &mut values, &mut rng), reduce_eval(&coeffs[1], &mut values, &mut rng))
    else {
        return true;
    };
    let Some(root) = ef.div(&ef.neg(&b), &a) else {
        return true;
    };
    values.insert(x, root);
    match reduce_eval(num, &mut values, &mut rng) {
        Some(v) => ef.is_zero(&v),
        None => true,
    }
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        if self.field() != other.field() {
            return false;
        }
        let all_prime = |r: &RatFunc| r.den.iter().all(|f| f.0.prime);
        if all_prime(self) && all_prime(other) {
            return self.den == other.den && self.num == other.num;
        }
        let lcm = merge_factors(&self.den, &other.den, u32::max);
        if lcm.is_empty() {
            return self.num == other.num;
        }
        self.num.mul(&cofactor(&lcm, &self.den)) == other.num.mul(&cofactor(&lcm, &other.den))
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        write!(f, "({})/(", self.num)?;
        for (k, (fac, e)) in self.den.iter().rev().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            write!(f, "({})", fac.poly())?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> SparsePoly {
        SparsePoly::parse(Field::Rational, s).unwrap()
    }

    fn prime(s: &str) -> Factor {
        Factor::irreducible(p(s))
    }

    #[test]
    fn sum_of_reciprocals() {
        let x = RatFunc::inverse_of_irreducible(&prime("a_1_1"));
        let y = RatFunc::inverse_of_irreducible(&prime("a_1_2"));
        let s = x.add(&y);
        assert_eq!(s.numer(), &p("a_1_1 + a_1_2"));
        assert_eq!(s.denom(), p("a_1_1*a_1_2"));
        assert_eq!(s.to_string(), "(a_1_1 + a_1_2)/((a_1_1)*(a_1_2))");
    }

    #[test]
    fn cancellation_on_multiply() {
        let f = prime("a_1_1*a_2_2 - a_1_2*a_2_1");
        let inv = RatFunc::inverse_of_irreducible(&f);
        let cube = RatFunc::from_poly(f.poly().pow(3));
        let r = cube.mul(&inv);
        assert!(r.is_polynomial());
        assert_eq!(r.numer(), &f.poly().pow(2));
        assert_eq!(r.ord_at(f.poly()).unwrap(), 2);
        assert_eq!(inv.ord_at(f.poly()).unwrap(), -1);
        assert_eq!(RatFunc::one(Field::Rational).ord_at(f.poly()).unwrap(), 0);
    }

    #[test]
    fn general_fractions_reduce() {
        let a = RatFunc::new(p("a_1_1^2 - a_1_2^2"), p("2*a_1_1 + 2*a_1_2")).unwrap();
        assert_eq!(a, RatFunc::from_poly(p("1/2*a_1_1 - 1/2*a_1_2")));
        assert!(a.sub(&RatFunc::from_poly(p("1/2*a_1_1 - 1/2*a_1_2"))).is_zero());
        let b = RatFunc::new(p("a_1_1"), p("a_1_1 + a_2_2")).unwrap();
        let back = b.inv().unwrap().inv().unwrap();
        assert_eq!(back, b);
        assert!(matches!(RatFunc::new(p("1"), p("0")), Err(Error::DivisionByZero)));
    }

    #[test]
    fn squares_mod_scalars() {
        let s = RatFunc::new(p("a_1_1 + a_1_2"), p("a_1_3")).unwrap();
        let five = s.mul(&s).scale(&Field::Rational.from_i64(5));
        assert_eq!(five.square_class_mod_scalars().unwrap(), Some(Field::Rational.from_i64(5)));
        let f = RatFunc::from_poly(p("a_1_1*a_2_2 - a_1_2*a_2_1"));
        assert_eq!(f.square_class_mod_scalars().unwrap(), None);
        assert_eq!(f.mul(&s).mul(&s).square_class_mod_scalars().unwrap(), None);
    }

    #[test]
    fn homomorphic_image() {
        let r = RatFunc::new(p("a_1_1 + 1"), p("a_1_2")).unwrap();
        let dom = crate::domain::Numeric(Field::Rational);
        let v = r
            .eval_in(&dom, &mut |v| Field::Rational.from_i64(v.col() as i64 + 1))
            .unwrap();
        assert_eq!(v, Field::Rational.parse_scalar("1").unwrap());
        let err = r.eval_in(&dom, &mut |v| Field::Rational.from_i64(v.col() as i64 - 2));
        assert!(matches!(err, Err(Error::DenominatorVanishes)));
    }
}
