//! Truncated Laurent series k((t)) with precision tracking.
//!
//! Used to compute the t-adic valuation of a rational function restricted to
//! a curve through a point of a hypersurface. Every value records how many
//! coefficients are known; cancellation that consumes all known coefficients
//! yields an inexact zero, and dividing by one reports
//! [`Error::PrecisionExhausted`] so the caller can retry with more terms.

use crate::domain::{Domain, ZeroTest};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    /// Exponent of the first stored coefficient; for an inexact zero, the
    /// absolute precision.
    val: i64,
    /// Nonempty coefficients start with a nonzero one.
    coeffs: Vec<Scalar>,
    /// Exact values are polynomials in t, known completely.
    exact: bool,
}

impl Series {
    /// t-adic valuation, `None` for zero (exact or not).
    pub fn valuation(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.val)
        }
    }

    pub fn leading_coeff(&self) -> Option<&Scalar> {
        self.coeffs.first()
    }

    fn absolute_precision(&self) -> Option<i64> {
        if self.exact {
            None
        } else {
            Some(self.val + self.coeffs.len() as i64)
        }
    }

    fn exact_zero() -> Series {
        Series { val: 0, coeffs: Vec::new(), exact: true }
    }
}

/// k((t)) keeping at most `precision` coefficients per value.
#[derive(Clone, Copy, Debug)]
pub struct LaurentSeries {
    pub field: Field,
    pub precision: usize,
}

impl LaurentSeries {
    pub fn new(field: Field, precision: usize) -> LaurentSeries {
        LaurentSeries { field, precision: precision.max(2) }
    }

    /// The polynomial `c0 + c1 t + ...`, exactly.
    pub fn polynomial(&self, coeffs: &[Scalar]) -> Series {
        self.normalize(0, coeffs.to_vec(), true, None)
    }

    /// Strips leading zeros and truncates to the working precision.
    fn normalize(&self, val: i64, mut coeffs: Vec<Scalar>, mut exact: bool, abs: Option<i64>) -> Series {
        let f = self.field;
        if let Some(a) = abs {
            let keep = (a - val).max(0) as usize;
            coeffs.truncate(keep);
        }
        let lead = coeffs.iter().position(|c| !f.is_zero(c));
        let Some(lead) = lead else {
            return if exact {
                Series::exact_zero()
            } else {
                Series { val: abs.unwrap_or(val + coeffs.len() as i64), coeffs: Vec::new(), exact: false }
            };
        };
        coeffs.drain(..lead);
        let val = val + lead as i64;
        if exact {
            while coeffs.last().is_some_and(|c| f.is_zero(c)) {
                coeffs.pop();
            }
        }
        if coeffs.len() > self.precision {
            coeffs.truncate(self.precision);
            exact = false;
        }
        Series { val, coeffs, exact }
    }

    fn relative_precision(&self, a: &Series) -> usize {
        if a.exact {
            self.precision
        } else {
            a.coeffs.len()
        }
    }
}

impl Domain for LaurentSeries {
    type Elem = Series;

    fn field(&self) -> Field {
        self.field
    }

    fn zero(&self) -> Series {
        Series::exact_zero()
    }

    fn one(&self) -> Series {
        self.polynomial(&[self.field.one()])
    }

    fn from_scalar(&self, s: &Scalar) -> Series {
        self.polynomial(std::slice::from_ref(s))
    }

    fn add(&self, a: &Series, b: &Series) -> Series {
        if a.exact && a.coeffs.is_empty() {
            return b.clone();
        }
        if b.exact && b.coeffs.is_empty() {
            return a.clone();
        }
        let f = self.field;
        let abs = match (a.absolute_precision(), b.absolute_precision()) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, y) => x.or(y),
        };
        let lo = a.val.min(b.val);
        let hi = [a.val + a.coeffs.len() as i64, b.val + b.coeffs.len() as i64]
            .into_iter()
            .max()
            .unwrap();
        let hi = abs.map_or(hi, |x| x.min(hi));
        let mut coeffs = vec![f.zero(); (hi - lo).max(0) as usize];
        for s in [a, b] {
            for (k, c) in s.coeffs.iter().enumerate() {
                let idx = s.val + k as i64 - lo;
                if idx >= 0 && (idx as usize) < coeffs.len() {
                    coeffs[idx as usize] = f.add(&coeffs[idx as usize], c);
                }
            }
        }
        self.normalize(lo, coeffs, abs.is_none(), abs)
    }

    fn neg(&self, a: &Series) -> Series {
        Series { val: a.val, coeffs: a.coeffs.iter().map(|c| self.field.neg(c)).collect(), exact: a.exact }
    }

    fn mul(&self, a: &Series, b: &Series) -> Series {
        let f = self.field;
        if (a.exact && a.coeffs.is_empty()) || (b.exact && b.coeffs.is_empty()) {
            return Series::exact_zero();
        }
        if a.coeffs.is_empty() || b.coeffs.is_empty() {
            // an inexact zero times anything: only a lower bound on the valuation survives
            return Series { val: a.val + b.val, coeffs: Vec::new(), exact: false };
        }
        let exact = a.exact && b.exact;
        let len = if exact {
            a.coeffs.len() + b.coeffs.len() - 1
        } else {
            self.relative_precision(a).min(self.relative_precision(b))
        };
        let mut coeffs = vec![f.zero(); len];
        for (i, x) in a.coeffs.iter().enumerate().take(len) {
            for (j, y) in b.coeffs.iter().enumerate().take(len - i) {
                coeffs[i + j] = f.add(&coeffs[i + j], &f.mul(x, y));
            }
        }
        let val = a.val + b.val;
        let abs = if exact { None } else { Some(val + len as i64) };
        self.normalize(val, coeffs, exact, abs)
    }

    fn inv(&self, a: &Series) -> Result<Series> {
        let f = self.field;
        if a.coeffs.is_empty() {
            return Err(if a.exact { Error::DivisionByZero } else { Error::PrecisionExhausted });
        }
        if a.exact && a.coeffs.len() == 1 {
            let c = f.inv(&a.coeffs[0]).expect("nonzero");
            return Ok(Series { val: -a.val, coeffs: vec![c], exact: true });
        }
        let len = self.relative_precision(a);
        let c0 = f.inv(&a.coeffs[0]).expect("nonzero");
        let mut out: Vec<Scalar> = Vec::with_capacity(len);
        out.push(c0.clone());
        for k in 1..len {
            let mut s = f.zero();
            for j in 1..=k.min(a.coeffs.len() - 1) {
                s = f.add(&s, &f.mul(&a.coeffs[j], &out[k - j]));
            }
            out.push(f.neg(&f.mul(&s, &c0)));
        }
        let val = -a.val;
        Ok(self.normalize(val, out, false, Some(val + len as i64)))
    }

    fn size_hint(&self, a: &Series) -> i64 {
        a.val
    }

    fn zero_test(&self, a: &Series) -> ZeroTest {
        match (a.coeffs.is_empty(), a.exact) {
            (false, _) => ZeroTest::NonZero,
            (true, true) => ZeroTest::Zero,
            (true, false) => ZeroTest::Unknown,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> Scalar {
        Field::Rational.from_i64(v)
    }

    #[test]
    fn valuation_of_quotient() {
        let dom = LaurentSeries::new(Field::Rational, 8);
        // (t + t^2) / t^3 = t^-2 + t^-1
        let num = dom.polynomial(&[q(0), q(1), q(1)]);
        let den = dom.polynomial(&[q(0), q(0), q(0), q(1)]);
        let r = dom.div(&num, &den).unwrap();
        assert_eq!(r.valuation(), Some(-2));
    }

    #[test]
    fn geometric_series_inverse() {
        let dom = LaurentSeries::new(Field::Rational, 6);
        let one_minus_t = dom.polynomial(&[q(1), q(-1)]);
        let inv = dom.inv(&one_minus_t).unwrap();
        assert_eq!(inv.coeffs, vec![q(1); 6]);
        let back = dom.mul(&inv, &one_minus_t);
        assert_eq!(back.valuation(), Some(0));
        // 1 + O(t^6)
        assert_eq!(back.coeffs[0], q(1));
        assert_eq!(back.coeffs.len(), 6);
        assert!(back.coeffs[1..].iter().all(|c| *c == q(0)));
    }

    #[test]
    fn cancellation_exhausts_precision() {
        let dom = LaurentSeries::new(Field::Rational, 3);
        let one_minus_t = dom.polynomial(&[q(1), q(-1)]);
        let inv = dom.inv(&one_minus_t).unwrap();
        // 1/(1-t) - (1 + t + t^2) = O(t^3)
        let diff = dom.sub(&inv, &dom.polynomial(&[q(1), q(1), q(1)]));
        assert_eq!(dom.zero_test(&diff), ZeroTest::Unknown);
        assert!(matches!(dom.inv(&diff), Err(Error::PrecisionExhausted)));
        assert!(matches!(dom.inv(&dom.zero()), Err(Error::DivisionByZero)));
    }
}
