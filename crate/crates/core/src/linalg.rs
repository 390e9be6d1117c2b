//! Rank, echelon forms and determinants over fields, domains and polynomial rings.

use crate::domain::{Domain, ZeroTest};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::poly::{lcm_factors, Factor, RatFunc, SparsePoly};

/// Incremental row echelon form over a field. Rows are offered one at a
/// time and kept when independent of the rows kept so far.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Field,
    /// Reduced rows, each with its pivot column; pivots increase.
    rows: Vec<(usize, Vec<Scalar>)>,
}

impl Echelon {
    pub fn new(field: Field) -> Echelon {
        Echelon { field, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        let mut p: Vec<usize> = self.rows.iter().map(|r| r.0).collect();
        p.sort_unstable();
        p
    }

    /// Reduces `row` against the kept rows; keeps it and returns `true` if a
    /// nonzero remainder is left.
    pub fn insert(&mut self, mut row: Vec<Scalar>) -> bool {
        let f = self.field;
        for (p, r) in &self.rows {
            if !f.is_zero(&row[*p]) {
                let c = row[*p].clone();
                for (x, y) in row.iter_mut().zip(r) {
                    if !f.is_zero(y) {
                        *x = f.sub(x, &f.mul(&c, y));
                    }
                }
            }
        }
        let Some(p) = row.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&row[p]).expect("nonzero pivot");
        for x in row.iter_mut() {
            *x = f.mul(x, &inv);
        }
        // keep previously stored rows reduced at the new pivot
        for (_, r) in self.rows.iter_mut() {
            if !f.is_zero(&r[p]) {
                let c = r[p].clone();
                for (x, y) in r.iter_mut().zip(&row) {
                    *x = f.sub(x, &f.mul(&c, y));
                }
            }
        }
        self.rows.push((p, row));
        true
    }
}

pub fn rank(field: Field, rows: Vec<Vec<Scalar>>) -> usize {
    let mut e = Echelon::new(field);
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

/// Indices of a maximal set of linearly independent rows, chosen greedily
/// in order.
pub fn independent_rows(field: Field, rows: &[Vec<Scalar>]) -> (Vec<usize>, Vec<usize>) {
    let mut e = Echelon::new(field);
    let mut picked = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        if e.insert(r.clone()) {
            picked.push(i);
        }
    }
    (picked, e.pivot_columns())
}

fn check_square<T>(m: &[Vec<T>]) -> Result<()> {
    if let Some(r) = m.iter().find(|r| r.len() != m.len()) {
        return Err(Error::NonSquare { rows: m.len(), cols: r.len() });
    }
    Ok(())
}

/// Determinant by Gaussian elimination in a domain. Pivots are chosen among
/// entries known to be nonzero, preferring the smallest [`Domain::size_hint`].
pub fn det_in<D: Domain>(dom: &D, m: &[Vec<D::Elem>]) -> Result<D::Elem> {
    check_square(m)?;
    let n = m.len();
    let mut a: Vec<Vec<D::Elem>> = m.to_vec();
    let mut det = dom.one();
    for k in 0..n {
        let mut best: Option<(usize, i64)> = None;
        let mut unknown = false;
        for (i, row) in a.iter().enumerate().skip(k) {
            match dom.zero_test(&row[k]) {
                ZeroTest::NonZero => {
                    let s = dom.size_hint(&row[k]);
                    if best.is_none_or(|b| s < b.1) {
                        best = Some((i, s));
                    }
                }
                ZeroTest::Unknown => unknown = true,
                ZeroTest::Zero => {}
            }
        }
        let Some((p, _)) = best else {
            return if unknown { Err(Error::PrecisionExhausted) } else { Ok(dom.zero()) };
        };
        if p != k {
            a.swap(p, k);
            det = dom.neg(&det);
        }
        let inv = dom.inv(&a[k][k])?;
        det = dom.mul(&det, &a[k][k]);
        for i in k + 1..n {
            if dom.zero_test(&a[i][k]) == ZeroTest::Zero {
                continue;
            }
            let c = dom.mul(&a[i][k], &inv);
            for j in k + 1..n {
                let t = dom.mul(&c, &a[k][j]);
                a[i][j] = dom.sub(&a[i][j], &t);
            }
        }
    }
    Ok(det)
}

/// Fraction-free (Bareiss) determinant over a polynomial ring.
pub fn bareiss_det(m: &[Vec<SparsePoly>]) -> Result<SparsePoly> {
    check_square(m)?;
    let n = m.len();
    if n == 0 {
        return Err(Error::NonSquare { rows: 0, cols: 0 });
    }
    let field = m[0][0].field();
    let mut a: Vec<Vec<SparsePoly>> = m.to_vec();
    let mut prev = SparsePoly::one(field);
    let mut negate = false;
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return Ok(SparsePoly::zero(field));
            };
            a.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = a[k][k].mul(&a[i][j]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = t.exact_div(&prev).expect("Bareiss quotient is exact");
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if negate { d.neg() } else { d })
}

/// Exact determinant over K: each row is brought to a common denominator,
/// the polynomial determinant is taken fraction-free, and the row
/// denominators are divided back out.
pub fn det_ratfunc(m: &[Vec<RatFunc>]) -> Result<RatFunc> {
    det_ratfunc_within(m, usize::MAX)
}

/// Term products allowed in one exact determinant before giving up.
pub const DET_WORK_BUDGET: usize = 50_000_000;

/// [`det_ratfunc`], refusing with [`Error::Budget`] when the product of the
/// largest numerator in each row (over the row's common denominator)
/// exceeds `work`.
pub fn det_ratfunc_within(m: &[Vec<RatFunc>], work: usize) -> Result<RatFunc> {
    check_square(m)?;
    if m.is_empty() {
        return Err(Error::NonSquare { rows: 0, cols: 0 });
    }
    let mut polys = Vec::with_capacity(m.len());
    let mut den: Vec<(Factor, u32)> = Vec::new();
    for row in m {
        let common = row.iter().fold(Vec::new(), |acc, x| lcm_factors(&acc, x.den_factors()));
        polys.push(row.iter().map(|x| x.numerator_over(&common)).collect::<Vec<_>>());
        den.extend(common);
    }
    let estimate = polys
        .iter()
        .map(|row| row.iter().map(SparsePoly::len).max().unwrap_or(0).max(1))
        .fold(1usize, |acc, k| acc.saturating_mul(k));
    if estimate > work {
        return Err(Error::Budget(estimate));
    }
    let d = bareiss_det(&polys)?;
    Ok(RatFunc::from_factored(d, den))
}

/// A basis of the left kernel {c : sum_i c_i m[i][j] = 0 for all j} of an
/// r x s matrix over a domain, from the reduced echelon form of its transpose.
pub fn left_kernel_in<D: Domain>(dom: &D, m: &[Vec<D::Elem>]) -> Result<Vec<Vec<D::Elem>>> {
    let r = m.len();
    let s = m.first().map_or(0, Vec::len);
    let mut a: Vec<Vec<D::Elem>> = (0..s).map(|j| (0..r).map(|i| m[i][j].clone()).collect()).collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut row = 0;
    for col in 0..r {
        if row == a.len() {
            break;
        }
        let mut unknown = false;
        let mut found = None;
        for (i, x) in a.iter().enumerate().skip(row) {
            match dom.zero_test(&x[col]) {
                ZeroTest::NonZero => {
                    found = Some(i);
                    break;
                }
                ZeroTest::Unknown => unknown = true,
                ZeroTest::Zero => {}
            }
        }
        let Some(p) = found else {
            if unknown {
                return Err(Error::PrecisionExhausted);
            }
            continue;
        };
        a.swap(row, p);
        let inv = dom.inv(&a[row][col])?;
        a[row] = a[row].iter().map(|x| dom.mul(x, &inv)).collect();
        for i in 0..a.len() {
            if i != row && !dom.is_zero(&a[i][col]) {
                let c = a[i][col].clone();
                for j in 0..r {
                    let t = dom.mul(&c, &a[row][j]);
                    a[i][j] = dom.sub(&a[i][j], &t);
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    Ok((0..r)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![dom.zero(); r];
            v[free] = dom.one();
            for (k, &pc) in pivots.iter().enumerate() {
                v[pc] = dom.neg(&a[k][free]);
            }
            v
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::{Numeric, Symbolic};
    use crate::poly::VarId;

    fn q(v: i64) -> Scalar {
        Field::Rational.from_i64(v)
    }

    #[test]
    fn left_kernel() {
        let dom = Numeric(Field::Rational);
        let m = vec![vec![q(1), q(2)], vec![q(2), q(4)], vec![q(0), q(1)]];
        let k = left_kernel_in(&dom, &m).unwrap();
        assert_eq!(k, vec![vec![q(-2), q(1), q(0)]]);
    }

    #[test]
    fn rank_and_pivots() {
        let rows = vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)], vec![q(0), q(1), q(1)]];
        let (picked, pivots) = independent_rows(Field::Rational, &rows);
        assert_eq!(picked, vec![0, 2]);
        assert_eq!(pivots, vec![0, 1]);
        assert_eq!(rank(Field::Prime(2), vec![vec![Scalar::M(1), Scalar::M(1)], vec![Scalar::M(1), Scalar::M(1)]]), 1);
    }

    #[test]
    fn determinants_agree() {
        let f = Field::Rational;
        let m: Vec<Vec<Scalar>> = vec![vec![q(2), q(0), q(1)], vec![q(1), q(3), q(2)], vec![q(1), q(1), q(2)]];
        assert_eq!(det_in(&Numeric(f), &m).unwrap(), q(6));
        let x = |i, j| SparsePoly::var(f, VarId::new(i, j));
        let pm = vec![vec![x(1, 1), x(1, 2)], vec![x(2, 1), x(2, 2)]];
        assert_eq!(bareiss_det(&pm).unwrap().to_string(), "a_1_1*a_2_2 - a_1_2*a_2_1");
        let rm: Vec<Vec<RatFunc>> = pm.iter().map(|r| r.iter().map(|p| RatFunc::from_poly(p.clone())).collect()).collect();
        assert_eq!(det_in(&Symbolic(f), &rm).unwrap(), det_ratfunc(&rm).unwrap());
        let id = vec![vec![RatFunc::one(f), RatFunc::zero(f)], vec![RatFunc::zero(f), RatFunc::one(f)]];
        assert_eq!(det_ratfunc(&id).unwrap(), RatFunc::one(f));
    }

    #[test]
    fn fractional_entries() {
        let f = Field::Rational;
        let x = RatFunc::var(f, VarId::new(1, 1));
        let y = RatFunc::var(f, VarId::new(1, 2));
        let m = vec![vec![x.inv().unwrap(), RatFunc::zero(f)], vec![RatFunc::one(f), y.inv().unwrap()]];
        let d = det_ratfunc(&m).unwrap();
        assert_eq!(d, x.mul(&y).inv().unwrap());
        assert!(matches!(det_ratfunc(&[vec![x.clone(), y.clone()]]), Err(Error::NonSquare { .. })));
    }
}
