//! Coefficient fields: Q, prime fields F_p, and binary extension fields GF(2^e).

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Q;

/// Irreducible modulus t^10 + t^3 + 1 for GF(1024).
pub const GF1024_MODULUS: u64 = (1 << 10) | (1 << 3) | 1;

/// Prime 2^31 - 1 used for random evaluation of rational data.
pub const EVALUATION_PRIME: u64 = 2_147_483_647;

/// Range used when drawing random rationals.
const RATIONAL_SAMPLE_BOUND: i64 = 1000;

/// A coefficient field k.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    Rational,
    Prime(u64),
    /// GF(2^degree) as F_2[t] / (modulus); bit i of an element is the coefficient of t^i.
    Binary { degree: u32, modulus: u64 },
}

/// An element of some [`Field`]. The field itself is not stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Q(Q),
    M(u64),
}

impl Field {
    pub fn prime(p: u64) -> Result<Field> {
        if !(2..(1u64 << 62)).contains(&p) || !is_prime_u64(p) {
            return Err(Error::InvalidField(format!("{p} is not a supported prime")));
        }
        Ok(Field::Prime(p))
    }

    /// GF(2^degree). Degree 10 uses t^10 + t^3 + 1; other degrees use the
    /// lexicographically smallest irreducible polynomial.
    pub fn binary(degree: u32) -> Result<Field> {
        if !(1..=32).contains(&degree) {
            return Err(Error::InvalidField(format!("GF(2^{degree}) is not supported")));
        }
        let modulus = if degree == 10 {
            GF1024_MODULUS
        } else {
            (1u64..)
                .step_by(2)
                .map(|c| (1u64 << degree) | c)
                .find(|&f| gf2_poly_irreducible(f))
                .expect("irreducible polynomials exist in every degree")
        };
        Ok(Field::Binary { degree, modulus })
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => *p,
            Field::Binary { .. } => 2,
        }
    }

    /// Number of elements, `None` for Q (or when it overflows u64).
    pub fn order(&self) -> Option<u64> {
        match self {
            Field::Rational => None,
            Field::Prime(p) => Some(*p),
            Field::Binary { degree, .. } => 1u64.checked_shl(*degree),
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Rational => Scalar::Q(Q::zero()),
            _ => Scalar::M(0),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            Field::Rational => Scalar::Q(Q::one()),
            _ => Scalar::M(1),
        }
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Q(Q::from_i64(v)),
            Field::Prime(p) => Scalar::M(v.rem_euclid(*p as i64) as u64),
            Field::Binary { .. } => Scalar::M((v.rem_euclid(2)) as u64),
        }
    }

    /// Image of a (possibly huge) non-negative integer given as u128.
    pub fn from_u128(&self, v: u128) -> Scalar {
        match self {
            Field::Rational => Scalar::Q(Q::from_big(num_rational::BigRational::from_integer(
                num_bigint::BigInt::from(v),
            ))),
            Field::Prime(p) => Scalar::M((v % (*p as u128)) as u64),
            Field::Binary { .. } => Scalar::M((v % 2) as u64),
        }
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Q(q) => q.is_zero(),
            Scalar::M(m) => *m == 0,
        }
    }

    pub fn is_one(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Q(q) => q.is_one(),
            Scalar::M(m) => *m == 1,
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Rational, Scalar::Q(x), Scalar::Q(y)) => Scalar::Q(x.add(y)),
            (Field::Prime(p), Scalar::M(x), Scalar::M(y)) => Scalar::M(((*x as u128 + *y as u128) % *p as u128) as u64),
            (Field::Binary { .. }, Scalar::M(x), Scalar::M(y)) => Scalar::M(x ^ y),
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (Field::Rational, Scalar::Q(x)) => Scalar::Q(x.neg()),
            (Field::Prime(p), Scalar::M(x)) => Scalar::M(if *x == 0 { 0 } else { p - x }),
            (Field::Binary { .. }, Scalar::M(x)) => Scalar::M(*x),
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Rational, Scalar::Q(x), Scalar::Q(y)) => Scalar::Q(x.sub(y)),
            _ => self.add(a, &self.neg(b)),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Rational, Scalar::Q(x), Scalar::Q(y)) => Scalar::Q(x.mul(y)),
            (Field::Prime(p), Scalar::M(x), Scalar::M(y)) => Scalar::M(((*x as u128 * *y as u128) % *p as u128) as u64),
            (Field::Binary { modulus, .. }, Scalar::M(x), Scalar::M(y)) => Scalar::M(gf2_mulmod(*x, *y, *modulus)),
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    pub fn pow(&self, a: &Scalar, mut e: u64) -> Scalar {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        if self.is_zero(a) {
            return None;
        }
        match (self, a) {
            (Field::Rational, Scalar::Q(x)) => x.inv().map(Scalar::Q),
            (Field::Prime(p), _) => Some(self.pow(a, p - 2)),
            (Field::Binary { degree, .. }, _) => Some(self.pow(a, (1u64 << degree) - 2)),
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Option<Scalar> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    /// Uniformly random element (rationals: integers in a fixed symmetric range).
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        match self {
            Field::Rational => Scalar::Q(Q::from_i64(rng.gen_range(-RATIONAL_SAMPLE_BOUND..=RATIONAL_SAMPLE_BOUND))),
            Field::Prime(p) => Scalar::M(rng.gen_range(0..*p)),
            Field::Binary { degree, .. } => Scalar::M(rng.gen_range(0..(1u64 << degree))),
        }
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        loop {
            let s = self.random(rng);
            if !self.is_zero(&s) {
                return s;
            }
        }
    }

    /// A square root of `a` in k, if one exists.
    pub fn sqrt(&self, a: &Scalar) -> Option<Scalar> {
        if self.is_zero(a) {
            return Some(a.clone());
        }
        match (self, a) {
            (Field::Rational, Scalar::Q(x)) => x.sqrt().map(Scalar::Q),
            (Field::Prime(2), _) => Some(a.clone()),
            (Field::Prime(p), Scalar::M(x)) => tonelli_shanks(*x, *p).map(Scalar::M),
            // Frobenius is bijective: sqrt(a) = a^(2^(e-1)).
            (Field::Binary { degree, .. }, _) => {
                let mut r = a.clone();
                for _ in 0..degree - 1 {
                    r = self.mul(&r, &r);
                }
                Some(r)
            }
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    pub fn is_square(&self, a: &Scalar) -> bool {
        self.sqrt(a).is_some()
    }

    /// Canonical representative of the class of a nonzero `a` in k^x / (k^x)^2.
    pub fn square_class(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (Field::Rational, Scalar::Q(x)) => Scalar::Q(x.square_class()),
            (Field::Prime(p), _) => {
                if *p == 2 || self.is_square(a) {
                    self.one()
                } else {
                    // smallest quadratic non-residue
                    (2..*p).map(Scalar::M).find(|s| !self.is_square(s)).expect("non-residue exists")
                }
            }
            (Field::Binary { .. }, _) => self.one(),
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    /// A field in which elements of `self` can be cheaply reduced for random
    /// evaluation: F_(2^31-1) for Q, the field itself otherwise.
    pub fn evaluation_field(&self) -> Field {
        match self {
            Field::Rational => Field::Prime(EVALUATION_PRIME),
            f => *f,
        }
    }

    /// Image of `a` in [`Field::evaluation_field`], `None` if a denominator vanishes.
    pub fn reduce(&self, a: &Scalar) -> Option<Scalar> {
        match a {
            Scalar::Q(q) => q.mod_p(EVALUATION_PRIME).map(Scalar::M),
            Scalar::M(_) => Some(a.clone()),
        }
    }

    pub fn format(&self, a: &Scalar) -> String {
        match (self, a) {
            (_, Scalar::Q(q)) => q.to_string(),
            (Field::Binary { .. }, Scalar::M(m)) => format!("#{m:x}"),
            (_, Scalar::M(m)) => m.to_string(),
        }
    }

    pub fn parse_scalar(&self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        let bad = || Error::Parse(format!("invalid scalar `{s}` for {self}"));
        match self {
            Field::Rational => Q::parse(s).map(Scalar::Q).ok_or_else(bad),
            Field::Prime(p) => {
                let (neg, digits) = match s.strip_prefix('-') {
                    Some(rest) => (true, rest),
                    None => (false, s),
                };
                let v: u64 = digits.parse().map_err(|_| bad())?;
                let v = Scalar::M(v % p);
                Ok(if neg { self.neg(&v) } else { v })
            }
            Field::Binary { degree, .. } => {
                let v = if let Some(hex) = s.strip_prefix('#') {
                    u64::from_str_radix(hex, 16).map_err(|_| bad())?
                } else {
                    let v: i64 = s.parse().map_err(|_| bad())?;
                    v.rem_euclid(2) as u64
                };
                if v >> degree != 0 {
                    return Err(bad());
                }
                Ok(Scalar::M(v))
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "0"),
            Field::Prime(p) => write!(f, "{p}"),
            Field::Binary { degree, .. } => write!(f, "2^{degree}"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    /// Accepts `0` (Q), a prime `p`, or `2^e`.
    fn from_str(s: &str) -> Result<Field> {
        let s = s.trim();
        if let Some(e) = s.strip_prefix("2^") {
            let e: u32 = e.parse().map_err(|_| Error::InvalidField(s.to_string()))?;
            return Field::binary(e);
        }
        let p: u64 = s.parse().map_err(|_| Error::InvalidField(s.to_string()))?;
        if p == 0 {
            Ok(Field::Rational)
        } else {
            Field::prime(p)
        }
    }
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut a: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, a);
            }
            a = mulmod(a, a);
            e >>= 1;
        }
        r
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn tonelli_shanks(a: u64, p: u64) -> Option<u64> {
    let f = Field::Prime(p);
    let sa = Scalar::M(a);
    if f.pow(&sa, (p - 1) / 2) != f.one() {
        return None;
    }
    let mut q = p - 1;
    let mut s = 0;
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let z = (2..p).map(Scalar::M).find(|z| f.pow(z, (p - 1) / 2) != f.one())?;
    let mut m = s;
    let mut c = f.pow(&z, q);
    let mut t = f.pow(&sa, q);
    let mut r = f.pow(&sa, q.div_ceil(2));
    while t != f.one() {
        let mut i = 0;
        let mut t2 = t.clone();
        while t2 != f.one() {
            t2 = f.mul(&t2, &t2);
            i += 1;
        }
        let b = f.pow(&c, 1u64 << (m - i - 1));
        m = i;
        c = f.mul(&b, &b);
        t = f.mul(&t, &c);
        r = f.mul(&r, &b);
    }
    match r {
        Scalar::M(v) => Some(v),
        Scalar::Q(_) => None,
    }
}

fn clmul(a: u64, b: u64) -> u128 {
    let mut r = 0u128;
    let mut b = b;
    let mut shift = 0;
    while b != 0 {
        if b & 1 == 1 {
            r ^= (a as u128) << shift;
        }
        b >>= 1;
        shift += 1;
    }
    r
}

fn gf2_reduce(mut x: u128, modulus: u64) -> u64 {
    let deg = 63 - modulus.leading_zeros();
    while x >> deg != 0 {
        let top = 127 - x.leading_zeros();
        x ^= (modulus as u128) << (top - deg);
    }
    x as u64
}

fn gf2_mulmod(a: u64, b: u64, modulus: u64) -> u64 {
    gf2_reduce(clmul(a, b), modulus)
}

fn gf2_gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let db = 63 - b.leading_zeros();
        while a != 0 && 63 - a.leading_zeros() >= db {
            a ^= b << (63 - a.leading_zeros() - db);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a
}

/// Rabin's irreducibility test for a binary polynomial of degree <= 32.
fn gf2_poly_irreducible(f: u64) -> bool {
    let e = 63 - f.leading_zeros();
    if e == 0 {
        return false;
    }
    // x^(2^i) mod f
    let frob = |i: u32| {
        let mut x = gf2_reduce(2, f);
        for _ in 0..i {
            x = gf2_mulmod(x, x, f);
        }
        x
    };
    if frob(e) != gf2_reduce(2, f) {
        return false;
    }
    let mut m = e;
    let mut r = 2;
    while r <= m {
        if m % r == 0 {
            while m % r == 0 {
                m /= r;
            }
            let g = gf2_gcd(f, frob(e / r) ^ 2);
            if g != 1 {
                return false;
            }
        }
        r += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn parses_field_specs() {
        assert_eq!("0".parse::<Field>().unwrap(), Field::Rational);
        assert_eq!("7".parse::<Field>().unwrap(), Field::Prime(7));
        assert_eq!(
            "2^10".parse::<Field>().unwrap(),
            Field::Binary { degree: 10, modulus: GF1024_MODULUS }
        );
        assert!("6".parse::<Field>().is_err());
        assert!("2^40".parse::<Field>().is_err());
    }

    #[test]
    fn gf1024_modulus_is_irreducible() {
        assert!(gf2_poly_irreducible(GF1024_MODULUS));
        assert!(!gf2_poly_irreducible((1 << 10) | 1));
        // x^2 + x + 1 is the only irreducible quadratic
        assert_eq!(Field::binary(2).unwrap(), Field::Binary { degree: 2, modulus: 0b111 });
    }

    #[test]
    fn every_nonzero_element_inverts() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for f in [Field::Prime(2_147_483_647), Field::binary(10).unwrap(), Field::Rational, Field::Prime(3)] {
            for _ in 0..50 {
                let a = f.random_nonzero(&mut rng);
                let ai = f.inv(&a).unwrap();
                assert!(f.is_one(&f.mul(&a, &ai)), "{f}: {a:?}");
            }
        }
    }

    #[test]
    fn square_roots() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        for f in [Field::Prime(2_147_483_647), Field::Prime(13), Field::binary(10).unwrap()] {
            for _ in 0..30 {
                let a = f.random(&mut rng);
                let sq = f.mul(&a, &a);
                let r = f.sqrt(&sq).unwrap();
                assert_eq!(f.mul(&r, &r), sq);
            }
        }
        let f13 = Field::Prime(13);
        assert_eq!(f13.square_class(&Scalar::M(2)), Scalar::M(2));
        assert_eq!(f13.square_class(&Scalar::M(4)), Scalar::M(1));
    }

    #[test]
    fn scalar_text_round_trip() {
        let f = Field::binary(10).unwrap();
        let s = Scalar::M(0x2a5);
        assert_eq!(f.parse_scalar(&f.format(&s)).unwrap(), s);
        let q = Field::Rational;
        let s = q.parse_scalar("-3/7").unwrap();
        assert_eq!(q.format(&s), "-3/7");
    }
}
