use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rustc_hash::FxHashMap;

use super::monomial::{Monomial, VarId};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

/// Sparse multivariate polynomial over a [`Field`], terms sorted by
/// decreasing graded-lex order, no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparsePoly {
    field: Field,
    terms: Vec<(Monomial, Scalar)>,
}

impl SparsePoly {
    pub fn zero(field: Field) -> SparsePoly {
        SparsePoly { field, terms: Vec::new() }
    }

    pub fn one(field: Field) -> SparsePoly {
        SparsePoly::constant(field, field.one())
    }

    pub fn constant(field: Field, c: Scalar) -> SparsePoly {
        SparsePoly::monomial(field, Monomial::one(), c)
    }

    pub fn from_i64(field: Field, c: i64) -> SparsePoly {
        SparsePoly::constant(field, field.from_i64(c))
    }

    pub fn var(field: Field, v: VarId) -> SparsePoly {
        SparsePoly::monomial(field, Monomial::var(v), field.one())
    }

    pub fn monomial(field: Field, m: Monomial, c: Scalar) -> SparsePoly {
        if field.is_zero(&c) {
            return SparsePoly::zero(field);
        }
        SparsePoly { field, terms: vec![(m, c)] }
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Scalar)>>(field: Field, terms: I) -> SparsePoly {
        let mut acc: FxHashMap<Monomial, Scalar> = FxHashMap::default();
        for (m, c) in terms {
            match acc.get_mut(&m) {
                Some(e) => *e = field.add(e, &c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        SparsePoly::from_map(field, acc)
    }

    fn from_map(field: Field, acc: FxHashMap<Monomial, Scalar>) -> SparsePoly {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !field.is_zero(c)).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        SparsePoly { field, terms }
    }

    /// Takes terms already sorted in decreasing order with nonzero coefficients.
    pub(crate) fn from_sorted_unchecked(field: Field, terms: Vec<(Monomial, Scalar)>) -> SparsePoly {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        SparsePoly { field, terms }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn terms(&self) -> &[(Monomial, Scalar)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.field.is_one(&self.terms[0].1)
    }

    /// The constant coefficient when the polynomial is constant.
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.as_slice() {
            [] => Some(self.field.zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn leading_term(&self) -> Option<&(Monomial, Scalar)> {
        self.terms.first()
    }

    pub fn leading_coeff(&self) -> Scalar {
        self.terms.first().map(|t| t.1.clone()).unwrap_or_else(|| self.field.zero())
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.first().map(|t| t.0.degree()).unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let d = self.total_degree();
        self.terms.iter().all(|t| t.0.degree() == d)
    }

    pub fn vars(&self) -> BTreeSet<VarId> {
        self.terms
            .iter()
            .flat_map(|t| t.0.pairs().iter().map(|p| p.0))
            .collect()
    }

    pub fn degree_in(&self, v: VarId) -> u16 {
        self.terms.iter().map(|t| t.0.exponent(v)).max().unwrap_or(0)
    }

    fn check_field(&self, other: &SparsePoly) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn try_add(&self, other: &SparsePoly) -> Result<SparsePoly> {
        self.check_field(other)?;
        Ok(self.merge(other, false))
    }

    pub fn try_sub(&self, other: &SparsePoly) -> Result<SparsePoly> {
        self.check_field(other)?;
        Ok(self.merge(other, true))
    }

    pub fn try_mul(&self, other: &SparsePoly) -> Result<SparsePoly> {
        self.check_field(other)?;
        Ok(self.mul(other))
    }

    pub fn add(&self, other: &SparsePoly) -> SparsePoly {
        debug_assert_eq!(self.field, other.field);
        self.merge(other, false)
    }

    pub fn sub(&self, other: &SparsePoly) -> SparsePoly {
        debug_assert_eq!(self.field, other.field);
        self.merge(other, true)
    }

    fn merge(&self, other: &SparsePoly, negate: bool) -> SparsePoly {
        let f = self.field;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (a, b) = (&self.terms, &other.terms);
        let (mut i, mut j) = (0, 0);
        let conv = |c: &Scalar| if negate { f.neg(c) } else { c.clone() };
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push((b[j].0.clone(), conv(&b[j].1)));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate { f.sub(&a[i].1, &b[j].1) } else { f.add(&a[i].1, &b[j].1) };
                    if !f.is_zero(&c) {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|t| (t.0.clone(), conv(&t.1))));
        SparsePoly { field: f, terms: out }
    }

    pub fn neg(&self) -> SparsePoly {
        let f = self.field;
        SparsePoly { field: f, terms: self.terms.iter().map(|(m, c)| (m.clone(), f.neg(c))).collect() }
    }

    pub fn scale(&self, s: &Scalar) -> SparsePoly {
        let f = self.field;
        if f.is_zero(s) {
            return SparsePoly::zero(f);
        }
        if f.is_one(s) {
            return self.clone();
        }
        SparsePoly { field: f, terms: self.terms.iter().map(|(m, c)| (m.clone(), f.mul(c, s))).collect() }
    }

    /// Multiplies by a single term; order is preserved.
    pub fn mul_term(&self, m: &Monomial, s: &Scalar) -> SparsePoly {
        let f = self.field;
        if f.is_zero(s) {
            return SparsePoly::zero(f);
        }
        SparsePoly {
            field: f,
            terms: self.terms.iter().map(|(t, c)| (t.mul(m), f.mul(c, s))).collect(),
        }
    }

    pub fn mul(&self, other: &SparsePoly) -> SparsePoly {
        debug_assert_eq!(self.field, other.field);
        let f = self.field;
        if self.is_zero() || other.is_zero() {
            return SparsePoly::zero(f);
        }
        let (small, large) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        if small.len() == 1 {
            return large.mul_term(&small.terms[0].0, &small.terms[0].1);
        }
        let mut acc: FxHashMap<Monomial, Scalar> =
            FxHashMap::with_capacity_and_hasher((small.len() * large.len() / 2 + 1).min(1 << 16), Default::default());
        for (ma, ca) in &small.terms {
            for (mb, cb) in &large.terms {
                let m = ma.mul(mb);
                let c = f.mul(ca, cb);
                match acc.get_mut(&m) {
                    Some(e) => *e = f.add(e, &c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        SparsePoly::from_map(f, acc)
    }

    pub fn pow(&self, k: u32) -> SparsePoly {
        let mut acc = SparsePoly::one(self.field);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Divides by the leading coefficient. Zero stays zero.
    pub fn monic(&self) -> SparsePoly {
        match self.terms.first() {
            None => self.clone(),
            Some((_, lc)) => {
                let inv = self.field.inv(lc).expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    /// Exact quotient `self / b`; fails with [`Error::NotDivisible`] when the
    /// remainder is nonzero and [`Error::DivisionByZero`] when `b = 0`.
    pub fn exact_div(&self, b: &SparsePoly) -> Result<SparsePoly> {
        self.check_field(b)?;
        let f = self.field;
        let (lm_b, lc_b) = b.terms.first().ok_or(Error::DivisionByZero)?.clone();
        if self.is_zero() {
            return Ok(SparsePoly::zero(f));
        }
        if b.len() == 1 {
            let inv = f.inv(&lc_b).expect("nonzero");
            let mut out = Vec::with_capacity(self.len());
            for (m, c) in &self.terms {
                out.push((m.div(&lm_b).ok_or(Error::NotDivisible)?, f.mul(c, &inv)));
            }
            return Ok(SparsePoly { field: f, terms: out });
        }
        if self.total_degree() < b.total_degree() || !lm_b.divides(&self.terms[0].0) {
            return Err(Error::NotDivisible);
        }
        // smallest term of the quotient must be last(self) / last(b)
        let (last_a, last_b) = (&self.terms.last().unwrap().0, &b.terms.last().unwrap().0);
        if !last_b.divides(last_a) {
            return Err(Error::NotDivisible);
        }
        let inv = f.inv(&lc_b).expect("nonzero");
        let mut rem: BTreeMap<Monomial, Scalar> = self.terms.iter().cloned().collect();
        let mut quot = Vec::new();
        let tail = &b.terms[1..];
        while let Some((lm, lc)) = rem.pop_last() {
            let qm = lm.div(&lm_b).ok_or(Error::NotDivisible)?;
            let qc = f.mul(&lc, &inv);
            for (m, c) in tail {
                let prod = m.mul(&qm);
                let delta = f.mul(c, &qc);
                match rem.entry(prod) {
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        let v = f.sub(e.get(), &delta);
                        if f.is_zero(&v) {
                            e.remove();
                        } else {
                            *e.get_mut() = v;
                        }
                    }
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(f.neg(&delta));
                    }
                }
            }
            quot.push((qm, qc));
            if let Some((m, _)) = rem.last_key_value() {
                if m.degree() < lm_b.degree() {
                    return Err(Error::NotDivisible);
                }
            }
        }
        Ok(SparsePoly { field: f, terms: quot })
    }

    /// Largest `m` with `p^m | self`, together with `self / p^m`. `self` must be nonzero.
    pub fn divide_out(&self, p: &SparsePoly) -> (u32, SparsePoly) {
        let mut cur = self.clone();
        let mut m = 0;
        if p.is_constant() {
            return (0, cur);
        }
        while let Ok(q) = cur.exact_div(p) {
            cur = q;
            m += 1;
        }
        (m, cur)
    }

    /// Coefficients with respect to `v`: index k holds the coefficient of v^k.
    pub fn coefficients_in(&self, v: VarId) -> Vec<SparsePoly> {
        let deg = self.degree_in(v) as usize;
        let mut parts: Vec<Vec<(Monomial, Scalar)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            let (e, rest) = m.split_off(v);
            parts[e as usize].push((rest, c.clone()));
        }
        parts
            .into_iter()
            .map(|t| {
                // removing one variable keeps graded-lex order only within a fixed exponent of v
                let mut p = SparsePoly { field: self.field, terms: t };
                p.terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
                p
            })
            .collect()
    }

    /// Inverse of [`SparsePoly::coefficients_in`].
    pub fn from_coefficients_in(field: Field, v: VarId, coeffs: &[SparsePoly]) -> SparsePoly {
        let mut acc = SparsePoly::zero(field);
        for (k, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let m = if k == 0 { Monomial::one() } else { Monomial::from_pairs([(v, k as u16)]) };
            acc = acc.add(&c.mul_term(&m, &field.one()));
        }
        acc
    }

    /// Substitutes scalar values for some variables.
    pub fn substitute_scalars(&self, values: &BTreeMap<VarId, Scalar>) -> SparsePoly {
        let f = self.field;
        let mut out = Vec::with_capacity(self.len());
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut rest = Vec::new();
            for &(v, e) in m.pairs() {
                match values.get(&v) {
                    Some(s) => coeff = f.mul(&coeff, &f.pow(s, e as u64)),
                    None => rest.push((v, e)),
                }
            }
            out.push((Monomial::from_pairs(rest), coeff));
        }
        SparsePoly::from_terms(f, out)
    }

    /// Evaluates at a point given by a scalar function of the variables.
    pub fn eval_scalar<F: FnMut(VarId) -> Scalar>(&self, mut value: F) -> Scalar {
        let f = self.field;
        let mut cache: FxHashMap<VarId, Scalar> = FxHashMap::default();
        let mut acc = f.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in m.pairs() {
                let x = cache.entry(v).or_insert_with(|| value(v)).clone();
                t = f.mul(&t, &f.pow(&x, e as u64));
            }
            acc = f.add(&acc, &t);
        }
        acc
    }

    /// Parses the canonical text form written by `Display`.
    pub fn parse(field: Field, s: &str) -> Result<SparsePoly> {
        super::text::parse_poly(field, s)
    }
}

impl PartialOrd for SparsePoly {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SparsePoly {
    /// Total order used only for canonical sorting of factor lists.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        for (a, b) in self.terms.iter().zip(other.terms.iter()) {
            match a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)) {
                std::cmp::Ordering::Equal => continue,
                o => return o,
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        super::text::write_poly(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(i: usize, j: usize) -> SparsePoly {
        SparsePoly::var(Field::Rational, VarId::new(i, j))
    }

    #[test]
    fn difference_of_squares() {
        let x = a(1, 1);
        let y = a(1, 2);
        let lhs = x.add(&y).mul(&x.sub(&y));
        let rhs = x.mul(&x).sub(&y.mul(&y));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn frobenius_in_characteristic_two() {
        let f = Field::Prime(2);
        let x = SparsePoly::var(f, VarId::new(1, 1));
        let y = SparsePoly::var(f, VarId::new(1, 2));
        let s = x.add(&y);
        assert_eq!(s.mul(&s), x.mul(&x).add(&y.mul(&y)));
    }

    #[test]
    fn exact_division() {
        let p = a(1, 1).mul(&a(2, 2)).sub(&a(1, 2).mul(&a(2, 1)));
        let cube = p.pow(3);
        assert_eq!(cube.exact_div(&p).unwrap(), p.pow(2));
        let shifted = p.add(&SparsePoly::one(Field::Rational));
        assert!(matches!(shifted.exact_div(&p), Err(Error::NotDivisible)));
        assert!(matches!(p.exact_div(&SparsePoly::zero(Field::Rational)), Err(Error::DivisionByZero)));
        assert_eq!(p.pow(3).mul(&a(1, 3)).divide_out(&p).0, 3);
    }

    #[test]
    fn field_mismatch() {
        let x = a(1, 1);
        let y = SparsePoly::var(Field::Prime(5), VarId::new(1, 1));
        assert!(matches!(x.try_add(&y), Err(Error::FieldMismatch)));
    }

    #[test]
    fn coefficient_split_round_trip() {
        let p = a(1, 1).pow(2).mul(&a(2, 1)).add(&a(1, 1).mul(&a(1, 2))).add(&a(2, 2));
        let v = VarId::new(1, 1);
        let cs = p.coefficients_in(v);
        assert_eq!(cs.len(), 3);
        assert_eq!(SparsePoly::from_coefficients_in(Field::Rational, v, &cs), p);
    }
}
