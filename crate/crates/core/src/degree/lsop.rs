use serde::Serialize;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::det_ratfunc;
use crate::poly::bracket::{laplace_det, permutation_expansion};
use crate::poly::{Factor, RatFunc, SparsePoly, VarId};

/// The coefficient matrix (mu_{i,j}) of d linear forms mu_i = sum_j mu_{i,j} x_j.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Lsop {
    /// mu_{i,j} = a_{i,j}.
    Generic { d: usize, n: usize },
    /// The generic system with mu_{1,j} = 0 for j in `subset`.
    Punctured { d: usize, n: usize, subset: Vec<usize> },
    /// Constant coefficients in k, `rows[i][j-1]` = mu_{i+1,j}.
    Scalars {
        d: usize,
        n: usize,
        #[serde(skip)]
        rows: Vec<Vec<Scalar>>,
    },
}

/// A bracket value as unit * prod(f^e), or zero.
#[derive(Clone, Debug)]
pub struct FactoredBracket {
    pub unit: Scalar,
    pub factors: Vec<(Factor, u32)>,
}

impl FactoredBracket {
    pub fn value(&self, field: Field) -> RatFunc {
        let mut p = SparsePoly::constant(field, self.unit.clone());
        for (f, e) in &self.factors {
            p = p.mul(&f.poly().pow(*e));
        }
        RatFunc::from_poly(p)
    }

    pub fn inverse(&self, field: Field) -> RatFunc {
        let u = field.inv(&self.unit).expect("nonzero unit");
        RatFunc::from_factored(SparsePoly::constant(field, u), self.factors.clone())
    }
}

impl Lsop {
    pub fn generic(d: usize, n: usize) -> Lsop {
        Lsop::Generic { d, n }
    }

    /// theta_F: row 1 vanishes on the columns in `f`. Requires `f` to be a
    /// size-d subset that is not a facet.
    pub fn punctured(c: &SimplicialComplex, f: &[usize]) -> Result<Lsop> {
        let mut f = f.to_vec();
        f.sort_unstable();
        let d = c.d();
        if f.len() != d || f.windows(2).any(|w| w[0] == w[1]) || f.iter().any(|&v| v == 0 || v > c.n()) {
            return Err(Error::InvalidDimension(f.len()));
        }
        if c.is_facet(&f) {
            return Err(Error::PuncturedAtFacet { expected: d, got: f });
        }
        Ok(Lsop::Punctured { d, n: c.n(), subset: f })
    }

    pub fn from_scalars(rows: Vec<Vec<Scalar>>) -> Result<Lsop> {
        let d = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        if d == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::NonSquare { rows: d, cols: n });
        }
        Ok(Lsop::Scalars { d, n, rows })
    }

    pub fn d(&self) -> usize {
        match self {
            Lsop::Generic { d, .. } | Lsop::Punctured { d, .. } | Lsop::Scalars { d, .. } => *d,
        }
    }

    pub fn n(&self) -> usize {
        match self {
            Lsop::Generic { n, .. } | Lsop::Punctured { n, .. } | Lsop::Scalars { n, .. } => *n,
        }
    }

    pub fn is_generic(&self) -> bool {
        matches!(self, Lsop::Generic { .. })
    }

    /// Whether mu_{i,j} is the indeterminate a_{i,j} (as opposed to 0 or a constant).
    pub fn is_variable(&self, i: usize, j: usize) -> bool {
        match self {
            Lsop::Generic { .. } => true,
            Lsop::Punctured { subset, .. } => !(i == 1 && subset.contains(&j)),
            Lsop::Scalars { .. } => false,
        }
    }

    /// mu_{i,j} as a polynomial (1-based indices; column 0 is the auxiliary
    /// column, always the indeterminate a_{i,0}).
    pub fn entry(&self, field: Field, i: usize, j: usize) -> SparsePoly {
        if j == 0 || self.is_variable(i, j) {
            return SparsePoly::var(field, VarId::new(i, j));
        }
        match self {
            Lsop::Scalars { rows, .. } => SparsePoly::constant(field, rows[i - 1][j - 1].clone()),
            _ => SparsePoly::zero(field),
        }
    }

    /// The bracket ev_mu([cols]) in factored form, `None` when it vanishes.
    ///
    /// Rows or columns with a single nonzero entry are peeled off; the
    /// remaining core of a generic or punctured matrix is a generic minor or
    /// a linear form in row 1 with coprime generic-minor coefficients, hence
    /// irreducible.
    pub fn bracket_factored(&self, field: Field, cols: &[usize]) -> Option<FactoredBracket> {
        let d = self.d();
        debug_assert_eq!(cols.len(), d);
        if let Lsop::Scalars { .. } = self {
            let m: Vec<Vec<RatFunc>> = (1..=d)
                .map(|i| cols.iter().map(|&j| RatFunc::from_poly(self.entry(field, i, j))).collect())
                .collect();
            let det = det_ratfunc(&m).expect("square");
            let p = det.numer();
            if p.is_zero() {
                return None;
            }
            let unit = p.leading_coeff();
            let factors = if p.is_constant() { Vec::new() } else { vec![(Factor::irreducible(p.clone()), 1)] };
            return Some(FactoredBracket { unit, factors });
        }
        let mut rows: Vec<usize> = (1..=d).collect();
        let mut cs: Vec<usize> = cols.to_vec();
        let mut unit = field.one();
        let mut factors: Vec<(Factor, u32)> = Vec::new();
        loop {
            if rows.is_empty() {
                break;
            }
            let nz = |i: usize, j: usize| j == 0 || self.is_variable(i, j);
            // a row with at most one nonzero entry
            let mut peeled = false;
            for (ri, &i) in rows.iter().enumerate() {
                let hits: Vec<usize> = (0..cs.len()).filter(|&k| nz(i, cs[k])).collect();
                if hits.is_empty() {
                    return None;
                }
                if hits.len() == 1 {
                    let ci = hits[0];
                    if (ri + ci) % 2 == 1 {
                        unit = field.neg(&unit);
                    }
                    factors.push((Factor::irreducible(SparsePoly::var(field, VarId::new(i, cs[ci]))), 1));
                    rows.remove(ri);
                    cs.remove(ci);
                    peeled = true;
                    break;
                }
            }
            if peeled {
                continue;
            }
            for (ci, &j) in cs.iter().enumerate() {
                let hits: Vec<usize> = (0..rows.len()).filter(|&k| nz(rows[k], j)).collect();
                if hits.is_empty() {
                    return None;
                }
                if hits.len() == 1 {
                    let ri = hits[0];
                    if (ri + ci) % 2 == 1 {
                        unit = field.neg(&unit);
                    }
                    factors.push((Factor::irreducible(SparsePoly::var(field, VarId::new(rows[ri], j))), 1));
                    rows.remove(ri);
                    cs.remove(ci);
                    peeled = true;
                    break;
                }
            }
            if !peeled {
                break;
            }
        }
        if !rows.is_empty() {
            let core = if rows.iter().zip(1..).all(|(&r, k)| r == k) && cs.iter().all(|&j| self.is_variable(1, j) || j == 0) {
                permutation_expansion(field, &cs)
            } else {
                let m: Vec<Vec<SparsePoly>> =
                    rows.iter().map(|&i| cs.iter().map(|&j| self.entry(field, i, j)).collect()).collect();
                laplace_det(&m)
            };
            if core.is_zero() {
                return None;
            }
            unit = field.mul(&unit, &core.leading_coeff());
            factors.push((Factor::irreducible(core), 1));
        }
        Some(FactoredBracket { unit, factors })
    }

    /// ev_mu([cols]) as an element of K.
    pub fn bracket(&self, field: Field, cols: &[usize]) -> RatFunc {
        self.bracket_factored(field, cols).map_or_else(|| RatFunc::zero(field), |b| b.value(field))
    }

    /// Stanley's criterion: ev_mu([F]) != 0 for every facet F.
    pub fn is_lsop(&self, c: &SimplicialComplex, field: Field) -> bool {
        self.d() == c.d() && self.n() >= c.n() && self.first_degenerate_facet(c, field).is_none()
    }

    pub fn first_degenerate_facet(&self, c: &SimplicialComplex, field: Field) -> Option<Vec<usize>> {
        c.facets().iter().find(|f| self.bracket_factored(field, f).is_none()).cloned()
    }

    pub fn check(&self, c: &SimplicialComplex, field: Field) -> Result<()> {
        if self.d() != c.d() || self.n() < c.n() {
            return Err(Error::NonSquare { rows: self.d(), cols: self.n() });
        }
        match self.first_degenerate_facet(c, field) {
            Some(f) => Err(Error::NotLsop(f)),
            None => Ok(()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sigma2() -> SimplicialComplex {
        SimplicialComplex::boundary_simplex(1).unwrap().suspension().unwrap()
    }

    #[test]
    fn generic_brackets_are_determinants() {
        let f = Field::Rational;
        let l = Lsop::generic(3, 5);
        let b = l.bracket_factored(f, &[1, 3, 4]).unwrap();
        assert_eq!(b.factors.len(), 1);
        assert_eq!(b.value(f), RatFunc::from_poly(permutation_expansion(f, &[1, 3, 4])));
        assert_eq!(b.inverse(f).mul(&b.value(f)), RatFunc::one(f));
    }

    #[test]
    fn punctured_brackets_factor() {
        let f = Field::Rational;
        let c = sigma2();
        let l = Lsop::punctured(&c, &[1, 2]).unwrap();
        assert!(l.bracket_factored(f, &[1, 2]).is_none());
        // det [[0, a13], [a21, a23]] = -a13 a21
        let b = l.bracket_factored(f, &[1, 3]).unwrap();
        assert_eq!(b.value(f).numer().to_string(), "-a_1_3*a_2_1");
        assert_eq!(b.factors.len(), 2);
        let full = l.bracket_factored(f, &[3, 4]).unwrap();
        assert_eq!(full.value(f), RatFunc::from_poly(permutation_expansion(f, &[3, 4])));
        assert!(l.is_lsop(&c, f));
        assert!(matches!(Lsop::punctured(&c, &[1, 3]), Err(Error::PuncturedAtFacet { .. })));
        assert!(Lsop::punctured(&c, &[3, 4]).unwrap().is_lsop(&c, f));
    }

    #[test]
    fn punctured_core_with_auxiliary_column() {
        let f = Field::Rational;
        let c = SimplicialComplex::boundary_simplex(2).unwrap().suspension().unwrap();
        let l = Lsop::punctured(&c, &[1, 2, 3]).unwrap();
        for cols in [vec![0, 1, 4], vec![0, 2, 3], vec![1, 4, 5], vec![0, 4, 5]] {
            let m: Vec<Vec<SparsePoly>> =
                (1..=3).map(|i| cols.iter().map(|&j| l.entry(f, i, j)).collect()).collect();
            assert_eq!(l.bracket(f, &cols), RatFunc::from_poly(laplace_det(&m)), "{cols:?}");
        }
    }

    #[test]
    fn zero_row_is_not_a_system() {
        let f = Field::Rational;
        let c = sigma2();
        let z = f.zero();
        let o = f.one();
        let rows = vec![vec![z.clone(); 4], vec![o.clone(), o.clone(), z.clone(), o]];
        let l = Lsop::from_scalars(rows).unwrap();
        assert!(!l.is_lsop(&c, f));
        assert!(Lsop::generic(2, 4).is_lsop(&c, f));
    }
}
