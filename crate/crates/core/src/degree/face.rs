use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::complex::SimplicialComplex;

/// A monomial x_{j_1}^{b_1} ... x_{j_s}^{b_s} in the vertex variables,
/// stored as (vertex, exponent) pairs sorted by vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FaceMonomial {
    exps: SmallVec<[(usize, u32); 6]>,
}

impl FaceMonomial {
    pub fn one() -> FaceMonomial {
        FaceMonomial::default()
    }

    pub fn var(v: usize) -> FaceMonomial {
        FaceMonomial { exps: SmallVec::from_slice(&[(v, 1)]) }
    }

    pub fn from_pairs<I: IntoIterator<Item = (usize, u32)>>(pairs: I) -> FaceMonomial {
        let mut m = FaceMonomial::one();
        for (v, e) in pairs {
            m = m.mul(&FaceMonomial { exps: SmallVec::from_slice(&[(v, e)]) });
        }
        m.exps.retain(|p| p.1 > 0);
        m
    }

    /// The squarefree monomial x_G.
    pub fn squarefree(g: &[usize]) -> FaceMonomial {
        FaceMonomial::from_pairs(g.iter().map(|&v| (v, 1)))
    }

    pub fn pairs(&self) -> &[(usize, u32)] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|p| p.1).sum()
    }

    pub fn exponent(&self, v: usize) -> u32 {
        self.exps.iter().find(|p| p.0 == v).map_or(0, |p| p.1)
    }

    pub fn support(&self) -> Vec<usize> {
        self.exps.iter().map(|p| p.0).collect()
    }

    pub fn is_squarefree(&self) -> bool {
        self.exps.iter().all(|p| p.1 == 1)
    }

    /// Whether the monomial is nonzero in the face ring.
    pub fn is_nonzero_in(&self, c: &SimplicialComplex) -> bool {
        c.is_face(&self.support())
    }

    pub fn mul(&self, other: &FaceMonomial) -> FaceMonomial {
        let mut out: SmallVec<[(usize, u32); 6]> = SmallVec::with_capacity(self.exps.len() + other.exps.len());
        let (a, b) = (&self.exps, &other.exps);
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i]);
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                out.push(b[j]);
                j += 1;
            } else {
                out.push((a[i].0, a[i].1 + b[j].1));
                i += 1;
                j += 1;
            }
        }
        FaceMonomial { exps: out }
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &FaceMonomial) -> Option<FaceMonomial> {
        let mut out = self.exps.clone();
        for &(v, e) in &other.exps {
            let slot = out.iter_mut().find(|p| p.0 == v)?;
            if slot.1 < e {
                return None;
            }
            slot.1 -= e;
        }
        out.retain(|p| p.1 > 0);
        Some(FaceMonomial { exps: out })
    }

    /// `self * x_v / x_j`; `x_j` must divide `self`.
    pub fn exchange(&self, j: usize, v: usize) -> FaceMonomial {
        self.div(&FaceMonomial::var(j)).expect("x_j divides").mul(&FaceMonomial::var(v))
    }

    /// Number of ways to reach this monomial as a product of `degree` linear
    /// factors: degree! / prod(b_i!).
    pub fn multinomial(&self) -> u128 {
        let mut acc: u128 = 1;
        let mut total = 0u32;
        for &(_, e) in &self.exps {
            for k in 1..=e {
                total += 1;
                // acc * total / k stays integral: it is a product of binomials
                acc = acc * total as u128 / k as u128;
            }
        }
        acc
    }
}

impl fmt::Display for FaceMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exps.is_empty() {
            return write!(f, "1");
        }
        for (k, (v, e)) in self.exps.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            write!(f, "x{v}")?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for FaceMonomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for FaceMonomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl std::str::FromStr for FaceMonomial {
    type Err = crate::error::Error;

    /// Parses `x1^2*x3` (and `1`).
    fn from_str(s: &str) -> crate::error::Result<FaceMonomial> {
        let bad = || crate::error::Error::Parse(format!("invalid monomial `{s}`"));
        let s = s.trim();
        if s == "1" {
            return Ok(FaceMonomial::one());
        }
        let mut pairs = Vec::new();
        for part in s.split('*') {
            let body = part.trim().strip_prefix('x').ok_or_else(bad)?;
            let (v, e) = match body.split_once('^') {
                Some((v, e)) => (v, e.parse::<u32>().map_err(|_| bad())?),
                None => (body, 1),
            };
            let v: usize = v.parse().map_err(|_| bad())?;
            if v == 0 {
                return Err(bad());
            }
            pairs.push((v, e));
        }
        Ok(FaceMonomial::from_pairs(pairs))
    }
}

/// All monomials of degree `q` in the vertex variables whose support is a
/// face, in lexicographic order of exponent pairs.
pub fn face_monomials(c: &SimplicialComplex, q: u32) -> Vec<FaceMonomial> {
    let mut out = Vec::new();
    let verts: Vec<usize> = (1..=c.n()).collect();
    let mut cur: Vec<(usize, u32)> = Vec::new();
    fn rec(
        c: &SimplicialComplex,
        verts: &[usize],
        start: usize,
        left: u32,
        cur: &mut Vec<(usize, u32)>,
        out: &mut Vec<FaceMonomial>,
    ) {
        if left == 0 {
            out.push(FaceMonomial::from_pairs(cur.iter().copied()));
            return;
        }
        for i in start..verts.len() {
            let v = verts[i];
            let mut support: Vec<usize> = cur.iter().map(|p| p.0).collect();
            support.push(v);
            if !c.is_face(&support) {
                continue;
            }
            for e in (1..=left).rev() {
                cur.push((v, e));
                rec(c, verts, i + 1, left - e, cur, out);
                cur.pop();
            }
        }
    }
    rec(c, &verts, 0, q, &mut cur, &mut out);
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let m: FaceMonomial = "x1^2*x3".parse().unwrap();
        assert_eq!(m.degree(), 3);
        assert_eq!(m.support(), vec![1, 3]);
        assert_eq!(m.exchange(1, 4).to_string(), "x1*x3*x4");
        assert_eq!(m.div(&FaceMonomial::var(2)), None);
        assert_eq!(m.multinomial(), 3);
        assert_eq!("x1*x2*x3*x4".parse::<FaceMonomial>().unwrap().multinomial(), 24);
        assert_eq!(FaceMonomial::one().to_string(), "1");
    }

    #[test]
    fn enumeration() {
        let sigma = SimplicialComplex::boundary_simplex(1).unwrap().suspension().unwrap();
        assert_eq!(face_monomials(&sigma, 0), vec![FaceMonomial::one()]);
        let q2 = face_monomials(&sigma, 2);
        // 4 squares and the 4 edges of the square
        assert_eq!(q2.len(), 8);
        assert!(!q2.contains(&"x1*x2".parse().unwrap()));
        let b = SimplicialComplex::boundary_simplex(3).unwrap();
        let top = face_monomials(&b, 3);
        for f in b.facets() {
            assert!(top.contains(&FaceMonomial::squarefree(f)));
        }
    }
}
