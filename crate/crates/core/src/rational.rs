//! Rational numbers with an `i64` fast path.
//!
//! Polynomial coefficients in this crate are almost always tiny integers, so
//! values are kept as `Ratio<i64>` until an operation overflows, at which point
//! they are promoted to `BigRational`. Values that fit are always demoted back,
//! which keeps equality and hashing structural.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Q {
    Small(Ratio<i64>),
    Big(BigRational),
}

impl Q {
    pub fn zero() -> Q {
        Q::Small(Ratio::zero())
    }

    pub fn one() -> Q {
        Q::Small(Ratio::one())
    }

    pub fn from_i64(v: i64) -> Q {
        Q::Small(Ratio::from_integer(v))
    }

    pub fn from_big(v: BigRational) -> Q {
        let fits = v.numer().to_i64().zip(v.denom().to_i64());
        match fits {
            Some((n, d)) if n != i64::MIN && d != i64::MIN => Q::Small(Ratio::new_raw(n, d)),
            _ => Q::Big(v),
        }
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Q::Small(r) => BigRational::new_raw(BigInt::from(*r.numer()), BigInt::from(*r.denom())),
            Q::Big(b) => b.clone(),
        }
    }

    /// Image in F_p, or `None` when p divides the denominator.
    pub fn mod_p(&self, p: u64) -> Option<u64> {
        let (n, d) = match self {
            Q::Small(r) => (
                r.numer().rem_euclid(p as i64) as u64,
                r.denom().rem_euclid(p as i64) as u64,
            ),
            Q::Big(b) => {
                let m = BigInt::from(p);
                let n = b.numer().mod_floor(&m).to_u64().expect("reduced");
                let d = b.denom().mod_floor(&m).to_u64().expect("reduced");
                (n, d)
            }
        };
        if d == 0 {
            return None;
        }
        Some((n as u128 * pow_mod(d, p - 2, p) as u128 % p as u128) as u64)
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Q::Small(r) => r.is_zero(),
            Q::Big(b) => b.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Q::Small(r) => r.is_one(),
            Q::Big(b) => b.is_one(),
        }
    }

    pub fn is_integer(&self) -> bool {
        match self {
            Q::Small(r) => r.is_integer(),
            Q::Big(b) => b.is_integer(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match self {
            Q::Small(r) => BigInt::from(*r.numer()),
            Q::Big(b) => b.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match self {
            Q::Small(r) => BigInt::from(*r.denom()),
            Q::Big(b) => b.denom().clone(),
        }
    }

    pub fn signum(&self) -> i32 {
        match self {
            Q::Small(r) => r.numer().signum() as i32,
            Q::Big(b) => {
                if b.is_positive() {
                    1
                } else if b.is_negative() {
                    -1
                } else {
                    0
                }
            }
        }
    }

    pub fn add(&self, other: &Q) -> Q {
        if let (Q::Small(a), Q::Small(b)) = (self, other) {
            if let Some(r) = a.checked_add(b) {
                return Q::Small(r);
            }
        }
        Q::from_big(self.to_big() + other.to_big())
    }

    pub fn sub(&self, other: &Q) -> Q {
        if let (Q::Small(a), Q::Small(b)) = (self, other) {
            if let Some(r) = a.checked_sub(b) {
                return Q::Small(r);
            }
        }
        Q::from_big(self.to_big() - other.to_big())
    }

    pub fn mul(&self, other: &Q) -> Q {
        if let (Q::Small(a), Q::Small(b)) = (self, other) {
            if let Some(r) = a.checked_mul(b) {
                return Q::Small(r);
            }
        }
        Q::from_big(self.to_big() * other.to_big())
    }

    pub fn neg(&self) -> Q {
        match self {
            Q::Small(r) if *r.numer() != i64::MIN => Q::Small(-*r),
            _ => Q::from_big(-self.to_big()),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Q> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Q::Small(r) if *r.numer() != i64::MIN => Q::Small(r.recip()),
            _ => Q::from_big(self.to_big().recip()),
        })
    }

    /// Exact square root, if one exists in Q.
    pub fn sqrt(&self) -> Option<Q> {
        if self.signum() < 0 {
            return None;
        }
        let n = self.numer();
        let d = self.denom();
        let sn = n.sqrt();
        let sd = d.sqrt();
        if &sn * &sn == n && &sd * &sd == d {
            Some(Q::from_big(BigRational::new(sn, sd)))
        } else {
            None
        }
    }

    /// Canonical representative of the class of `self` in Q^x / (Q^x)^2:
    /// the signed squarefree kernel of numerator times denominator.
    ///
    /// Trial division is bounded, so for huge values with large repeated prime
    /// factors the representative may not be fully reduced.
    pub fn square_class(&self) -> Q {
        let sign = self.signum();
        let mut m = (self.numer() * self.denom()).abs();
        let mut kernel = BigInt::one();
        let mut p = BigInt::from(2u32);
        let limit = BigInt::from(100_000u32);
        while &p * &p <= m && p < limit {
            let mut e = 0u32;
            loop {
                let (q, r) = m.div_rem(&p);
                if !r.is_zero() {
                    break;
                }
                m = q;
                e += 1;
            }
            if e % 2 == 1 {
                kernel *= &p;
            }
            p += 1u32;
        }
        if m > BigInt::one() {
            let s = m.sqrt();
            if &s * &s != m {
                kernel *= m;
            }
        }
        if sign < 0 {
            kernel = -kernel;
        }
        Q::from_big(BigRational::from_integer(kernel))
    }

    pub fn parse(s: &str) -> Option<Q> {
        let s = s.trim();
        if let Some((n, d)) = s.split_once('/') {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Q::from_big(BigRational::new(n, d)))
        } else {
            let n: BigInt = s.parse().ok()?;
            Some(Q::from_big(BigRational::from_integer(n)))
        }
    }
}

impl PartialOrd for Q {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Q {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Q::Small(a), Q::Small(b)) => a.cmp(b),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl fmt::Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Q::Small(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Q::Big(b) => {
                if b.is_integer() {
                    write!(f, "{}", b.numer())
                } else {
                    write!(f, "{}/{}", b.numer(), b.denom())
                }
            }
        }
    }
}

fn pow_mod(b: u64, mut e: u64, p: u64) -> u64 {
    let (mut r, mut b, p) = (1u128, b as u128 % p as u128, p as u128);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overflow_promotes_and_demotes() {
        let big = Q::from_i64(i64::MAX);
        let sq = big.mul(&big);
        assert!(matches!(sq, Q::Big(_)));
        let back = Q::from_big(sq.to_big() / (big.to_big() * big.to_big()));
        assert_eq!(back, Q::one());
    }

    #[test]
    fn square_class_kernel() {
        assert_eq!(Q::parse("12").unwrap().square_class(), Q::from_i64(3));
        assert_eq!(Q::parse("-8/9").unwrap().square_class(), Q::from_i64(-2));
        assert_eq!(Q::parse("25/4").unwrap().square_class(), Q::one());
        assert_eq!(Q::parse("9/4").unwrap().sqrt(), Q::parse("3/2"));
        assert_eq!(Q::parse("2").unwrap().sqrt(), None);
    }

    #[test]
    fn reduction_mod_p() {
        assert_eq!(Q::parse("1/2").unwrap().mod_p(7), Some(4));
        assert_eq!(Q::parse("-3").unwrap().mod_p(7), Some(4));
        assert_eq!(Q::parse("5/7").unwrap().mod_p(7), None);
    }
}
