//! Plücker brackets [F] = det(a_{i, j_m}).

use std::fmt;
use std::sync::Arc;

use super::monomial::{Monomial, VarId};
use super::sparse::SparsePoly;
use crate::field::Field;

/// The maximal minor of the generic d x (n+1) matrix (a_{i,j}) on the
/// columns `cols` (sorted, column 0 allowed).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bracket {
    cols: Vec<usize>,
    poly: Arc<SparsePoly>,
}

impl Bracket {
    pub fn new(field: Field, cols: &[usize]) -> Bracket {
        let mut sorted = cols.to_vec();
        sorted.sort_unstable();
        assert!(sorted.windows(2).all(|w| w[0] < w[1]), "repeated column in bracket");
        let poly = permutation_expansion(field, &sorted);
        Bracket { cols: sorted, poly: Arc::new(poly) }
    }

    pub fn cols(&self) -> &[usize] {
        &self.cols
    }

    pub fn poly(&self) -> &SparsePoly {
        &self.poly
    }
}

impl fmt::Display for Bracket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cols: Vec<String> = self.cols.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", cols.join(","))
    }
}

/// Leibniz expansion: sum over permutations s of sgn(s) prod_i a_{i, cols[s(i)]}.
pub fn permutation_expansion(field: Field, cols: &[usize]) -> SparsePoly {
    let d = cols.len();
    let mut perm: Vec<usize> = (0..d).collect();
    let mut terms = Vec::new();
    loop {
        let sign = if inversions(&perm) % 2 == 0 { 1 } else { -1 };
        let mono = Monomial::from_pairs((0..d).map(|i| (VarId::new(i + 1, cols[perm[i]]), 1)));
        terms.push((mono, field.from_i64(sign)));
        if !next_permutation(&mut perm) {
            break;
        }
    }
    SparsePoly::from_terms(field, terms)
}

/// Determinant of a square matrix of polynomials by cofactor expansion
/// along the first row.
pub fn laplace_det(m: &[Vec<SparsePoly>]) -> SparsePoly {
    let d = m.len();
    let field = m[0][0].field();
    if d == 1 {
        return m[0][0].clone();
    }
    let mut acc = SparsePoly::zero(field);
    for c in 0..d {
        if m[0][c].is_zero() {
            continue;
        }
        let minor: Vec<Vec<SparsePoly>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(k, _)| k != c).map(|(_, x)| x.clone()).collect())
            .collect();
        let t = m[0][c].mul(&laplace_det(&minor));
        acc = if c % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
    }
    acc
}

/// Determinant of the generic matrix on `cols`, via [`laplace_det`].
pub fn laplace_expansion(field: Field, cols: &[usize]) -> SparsePoly {
    let m: Vec<Vec<SparsePoly>> = (0..cols.len())
        .map(|i| cols.iter().map(|&c| SparsePoly::var(field, VarId::new(i + 1, c))).collect())
        .collect();
    laplace_det(&m)
}

pub(crate) fn inversions(p: &[usize]) -> usize {
    let mut n = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                n += 1;
            }
        }
    }
    n
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::gcd::gcd;

    #[test]
    fn expansions_agree() {
        for f in [Field::Rational, Field::Prime(5), Field::binary(3).unwrap()] {
            for cols in [vec![1], vec![0, 2], vec![1, 3, 4], vec![0, 1, 5, 7]] {
                assert_eq!(permutation_expansion(f, &cols), laplace_expansion(f, &cols));
            }
        }
    }

    #[test]
    fn two_by_two() {
        let b = Bracket::new(Field::Rational, &[2, 1]);
        assert_eq!(b.cols(), &[1, 2]);
        assert_eq!(b.poly().to_string(), "a_1_1*a_2_2 - a_1_2*a_2_1");
        assert_eq!(b.to_string(), "[1,2]");
    }

    #[test]
    fn distinct_brackets_are_coprime() {
        let f = Field::Rational;
        let subsets: Vec<Vec<usize>> =
            (1..=4).flat_map(|i| (i + 1..=4).map(move |j| vec![i, j])).collect();
        for a in &subsets {
            for b in &subsets {
                if a != b {
                    let g = gcd(Bracket::new(f, a).poly(), Bracket::new(f, b).poly());
                    assert!(g.is_one(), "{a:?} {b:?}");
                }
            }
        }
    }
}
