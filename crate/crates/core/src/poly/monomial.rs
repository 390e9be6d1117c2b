use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

/// Indeterminate a_{row,col}: row in 1..=d, col in 0..=n. Column 0 holds the
/// auxiliary variables a_{i,0} that appear only in the Karu–Xiao formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VarId(u16);

impl VarId {
    pub fn new(row: usize, col: usize) -> VarId {
        assert!((1..256).contains(&row) && col < 256, "variable a_{row}_{col} out of range");
        VarId(((row as u16) << 8) | col as u16)
    }

    pub fn row(self) -> usize {
        (self.0 >> 8) as usize
    }

    pub fn col(self) -> usize {
        (self.0 & 0xff) as usize
    }

    /// Auxiliary column-0 variable.
    pub fn is_extended(self) -> bool {
        self.col() == 0
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a_{}_{}", self.row(), self.col())
    }
}

/// A power product of [`VarId`]s, stored sparsely as (variable, exponent)
/// pairs sorted by variable. Ordered by graded lexicographic order with
/// a_{1,0} > a_{1,1} > ... > a_{2,0} > ...
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: SmallVec<[(VarId, u16); 6]>,
    degree: u32,
}

impl Monomial {
    pub fn one() -> Monomial {
        Monomial::default()
    }

    pub fn var(v: VarId) -> Monomial {
        Monomial::from_pairs([(v, 1)])
    }

    pub fn from_pairs<I: IntoIterator<Item = (VarId, u16)>>(pairs: I) -> Monomial {
        let mut exps: SmallVec<[(VarId, u16); 6]> = pairs.into_iter().filter(|p| p.1 > 0).collect();
        exps.sort_by_key(|p| p.0);
        let mut merged: SmallVec<[(VarId, u16); 6]> = SmallVec::new();
        for (v, e) in exps {
            match merged.last_mut() {
                Some(last) if last.0 == v => last.1 += e,
                _ => merged.push((v, e)),
            }
        }
        let degree = merged.iter().map(|p| p.1 as u32).sum();
        Monomial { exps: merged, degree }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn pairs(&self) -> &[(VarId, u16)] {
        &self.exps
    }

    pub fn exponent(&self, v: VarId) -> u16 {
        self.exps
            .binary_search_by_key(&v, |p| p.0)
            .map(|i| self.exps[i].1)
            .unwrap_or(0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = SmallVec::with_capacity(self.exps.len() + other.exps.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.exps, &other.exps);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    exps.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    exps.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    exps.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        exps.extend_from_slice(&a[i..]);
        exps.extend_from_slice(&b[j..]);
        Monomial { exps, degree: self.degree + other.degree }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        if self.degree > other.degree {
            return false;
        }
        self.exps.iter().all(|&(v, e)| other.exponent(v) >= e)
    }

    /// `self / other`, or `None` when `other` does not divide `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if other.degree > self.degree {
            return None;
        }
        let mut exps = SmallVec::with_capacity(self.exps.len());
        let mut j = 0;
        let b = &other.exps;
        for &(v, e) in &self.exps {
            if j < b.len() && b[j].0 < v {
                return None;
            }
            if j < b.len() && b[j].0 == v {
                if b[j].1 > e {
                    return None;
                }
                if e > b[j].1 {
                    exps.push((v, e - b[j].1));
                }
                j += 1;
            } else {
                exps.push((v, e));
            }
        }
        if j < b.len() {
            return None;
        }
        Some(Monomial { exps, degree: self.degree - other.degree })
    }

    pub fn pow(&self, k: u16) -> Monomial {
        Monomial {
            exps: self.exps.iter().map(|&(v, e)| (v, e * k)).collect(),
            degree: self.degree * k as u32,
        }
    }

    /// Square root when every exponent is even.
    pub fn sqrt(&self) -> Option<Monomial> {
        if self.exps.iter().any(|p| p.1 % 2 == 1) {
            return None;
        }
        Some(Monomial {
            exps: self.exps.iter().map(|&(v, e)| (v, e / 2)).collect(),
            degree: self.degree / 2,
        })
    }

    /// Drops `v`, returning its exponent and the remaining monomial.
    pub fn split_off(&self, v: VarId) -> (u16, Monomial) {
        let e = self.exponent(v);
        if e == 0 {
            return (0, self.clone());
        }
        let exps: SmallVec<_> = self.exps.iter().copied().filter(|p| p.0 != v).collect();
        (e, Monomial { exps, degree: self.degree - e as u32 })
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree.cmp(&other.degree) {
            Ordering::Equal => {}
            o => return o,
        }
        for (a, b) in self.exps.iter().zip(other.exps.iter()) {
            if a.0 != b.0 {
                // the smaller variable id is the larger variable
                return if a.0 < b.0 { Ordering::Greater } else { Ordering::Less };
            }
            if a.1 != b.1 {
                return a.1.cmp(&b.1);
            }
        }
        self.exps.len().cmp(&other.exps.len())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exps.is_empty() {
            return write!(f, "1");
        }
        for (k, (v, e)) in self.exps.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            write!(f, "{v}")?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(i: usize, j: usize) -> VarId {
        VarId::new(i, j)
    }

    #[test]
    fn graded_lex_order() {
        let x = Monomial::var(a(1, 1));
        let y = Monomial::var(a(1, 2));
        let z = Monomial::var(a(2, 1));
        assert!(x > y && y > z);
        assert!(z.mul(&z) > x);
        assert!(x.mul(&z) > y.mul(&y));
        assert!(x.mul(&y) < x.mul(&x));
    }

    #[test]
    fn division() {
        let m = Monomial::from_pairs([(a(1, 1), 2), (a(2, 3), 1)]);
        let d = Monomial::var(a(1, 1));
        assert_eq!(m.div(&d).unwrap(), Monomial::from_pairs([(a(1, 1), 1), (a(2, 3), 1)]));
        assert!(m.div(&Monomial::var(a(1, 2))).is_none());
        assert!(d.divides(&m));
        assert_eq!(m.div(&m).unwrap(), Monomial::one());
    }
}
