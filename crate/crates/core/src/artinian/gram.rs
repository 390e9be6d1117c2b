use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::basis::{select_basis, BasisOptions};
use super::reduction::{Reduction, MAX_DRAWS};
use crate::complex::subsets;
use crate::degree::{DegreeMap, FaceMonomial, Specializer, Target};
use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::linalg::{det_in, det_ratfunc_within, left_kernel_in, DET_WORK_BUDGET};
use crate::poly::RatFunc;

/// The Hodge-Riemann matrix deg(l^(d-2q) y_i y_j) on the given monomials.
pub fn gram_in<D: Domain>(map: &DegreeMap<D>, q: usize, basis: &[FaceMonomial]) -> Result<Vec<Vec<D::Elem>>> {
    let d = map.complex().d();
    if 2 * q > d {
        return Err(Error::InvalidDimension(q));
    }
    let r = (d - 2 * q) as u32;
    let p = basis.len();
    let pairs: Vec<(usize, usize)> = (0..p).flat_map(|i| (i..p).map(move |j| (i, j))).collect();
    let vals: Vec<D::Elem> = pairs
        .par_iter()
        .map(|&(i, j)| map.power_times(r, &basis[i].mul(&basis[j])))
        .collect::<Result<_>>()?;
    let mut m = vec![vec![map.domain().zero(); p]; p];
    for (&(i, j), v) in pairs.iter().zip(vals) {
        m[j][i] = v.clone();
        m[i][j] = v;
    }
    Ok(m)
}

/// D_q, the determinant of the Hodge-Riemann matrix on a basis.
pub struct GramDeterminant {
    pub q: usize,
    pub basis: Vec<FaceMonomial>,
}

impl Target for GramDeterminant {
    fn eval<D: Domain + Clone + Send + 'static>(&self, map: &DegreeMap<D>) -> Result<D::Elem> {
        if self.basis.is_empty() {
            return Ok(map.domain().one());
        }
        det_in(map.domain(), &gram_in(map, self.q, &self.basis)?)
    }
}

/// The determinant of the Hodge-Riemann form restricted to the primitive
/// part {y in span(basis) : deg(l^(d-2q+1) y z) = 0 for z in `lower`}.
pub struct PrimitiveDeterminant {
    pub q: usize,
    pub basis: Vec<FaceMonomial>,
    pub lower: Vec<FaceMonomial>,
}

impl Target for PrimitiveDeterminant {
    fn eval<D: Domain + Clone + Send + 'static>(&self, map: &DegreeMap<D>) -> Result<D::Elem> {
        let dom = map.domain();
        let d = map.complex().d();
        let r = (d + 1 - 2 * self.q) as u32;
        let cross = self
            .basis
            .iter()
            .map(|y| self.lower.iter().map(|z| map.power_times(r, &y.mul(z))).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let kernel = if self.lower.is_empty() {
            (0..self.basis.len())
                .map(|i| (0..self.basis.len()).map(|j| if i == j { dom.one() } else { dom.zero() }).collect())
                .collect()
        } else {
            left_kernel_in(dom, &cross)?
        };
        if kernel.is_empty() {
            return Ok(dom.one());
        }
        let g = gram_in(map, self.q, &self.basis)?;
        let gk: Vec<Vec<D::Elem>> = g
            .iter()
            .map(|row| {
                kernel
                    .iter()
                    .map(|k| row.iter().zip(k).fold(dom.zero(), |acc, (a, b)| dom.add(&acc, &dom.mul(a, b))))
                    .collect()
            })
            .collect();
        let restricted: Vec<Vec<D::Elem>> = kernel
            .iter()
            .map(|ki| {
                (0..kernel.len())
                    .map(|j| ki.iter().zip(&gk).fold(dom.zero(), |acc, (a, row)| dom.add(&acc, &dom.mul(a, &row[j]))))
                    .collect()
            })
            .collect();
        det_in(dom, &restricted)
    }
}

/// The Gram matrix and D_q exactly over K.
pub fn hr_gram_exact(r: &Reduction, q: usize, basis: &[FaceMonomial]) -> Result<(Vec<Vec<RatFunc>>, RatFunc)> {
    let map = r.symbolic()?;
    let m = gram_in(&map, q, basis)?;
    let det = if m.is_empty() { RatFunc::one(r.field()) } else { det_ratfunc_within(&m, DET_WORK_BUDGET)? };
    Ok((m, det))
}

/// ord_[S] of an exact value at every size-d subset S (generic systems only,
/// where every bracket is irreducible).
pub fn exact_ord_profile(r: &Reduction, value: &RatFunc) -> Result<BTreeMap<Vec<usize>, i64>> {
    if !r.lsop().is_generic() {
        return Err(Error::Unsupported("valuations at brackets of the generic system".into()));
    }
    let c = r.complex();
    let all = subsets(&(1..=c.n()).collect::<Vec<_>>(), c.d());
    all.into_par_iter()
        .map(|s| {
            let b = r.lsop().bracket(r.field(), &s);
            let ord = value.ord_at(b.numer())?;
            Ok((s, ord))
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct GramReport {
    pub q: usize,
    pub basis: Vec<FaceMonomial>,
    /// Entries as canonical strings; present for exact reports.
    pub matrix: Option<Vec<Vec<String>>>,
    pub determinant: Option<String>,
    /// ord_[S](D_q) keyed by the subset written as "1,2,3".
    pub ord_profile: BTreeMap<String, i64>,
    /// The class of D_q / prod_facets [F] in k^x/(k^x)^2 when that quotient is
    /// a square times a scalar.
    pub square_class: Option<String>,
    pub method: &'static str,
}

pub fn subset_key(s: &[usize]) -> String {
    s.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

/// Gram matrix, D_q and its valuations on `basis` (or a selected basis).
/// With `exact` unset the matrix is skipped and valuations are read off
/// along curves; valuations are only reported for the generic system.
pub fn gram_report(r: &Reduction, q: usize, basis: Option<Vec<FaceMonomial>>, exact: bool) -> Result<GramReport> {
    let basis = match basis {
        Some(b) => b,
        None => select_basis(r, q, &BasisOptions::default())?.monomials,
    };
    let field = r.field();
    if !exact {
        let ord_profile = if r.lsop().is_generic() {
            let t = GramDeterminant { q, basis: basis.clone() };
            let p = Specializer::new(field, r.seed()).ord_profile(r.complex(), r.orientation(), &t)?;
            p.iter().map(|(s, v)| (subset_key(s), *v)).collect()
        } else {
            BTreeMap::new()
        };
        return Ok(GramReport { q, basis, matrix: None, determinant: None, ord_profile, square_class: None, method: "specialized" });
    }
    let (m, det) = hr_gram_exact(r, q, &basis)?;
    let ord_profile = if r.lsop().is_generic() && !det.is_zero() {
        exact_ord_profile(r, &det)?.iter().map(|(s, v)| (subset_key(s), *v)).collect()
    } else {
        BTreeMap::new()
    };
    let mut square_class = None;
    if !det.is_zero() {
        let mut quotient = det.clone();
        for g in r.complex().facets() {
            let b = r.lsop().bracket_factored(field, g).ok_or_else(|| Error::NotLsop(g.clone()))?;
            quotient = quotient.mul(&b.inverse(field));
        }
        square_class = quotient.square_class_mod_scalars()?.map(|c| field.format(&c));
    }
    Ok(GramReport {
        q,
        basis,
        matrix: Some(m.iter().map(|row| row.iter().map(|e| e.to_string()).collect()).collect()),
        determinant: Some(det.to_string()),
        ord_profile,
        square_class,
        method: "exact",
    })
}

/// Outcome of testing multiplication by l^(d-2q) on Hbar^q.
#[derive(Clone, Debug, Serialize)]
pub struct LefschetzOutcome {
    pub q: usize,
    pub holds: bool,
    pub dimension: usize,
    /// Draws at which the Gram determinant was evaluated.
    pub draws: Vec<u64>,
}

/// Whether l^(d-2q): Hbar^q -> Hbar^(d-q) is an isomorphism, i.e. whether
/// D_q != 0. A nonzero value at one admissible point is conclusive; for
/// indeterminate coefficients a zero is confirmed at further draws.
pub fn lefschetz_check(r: &Reduction, q: usize) -> Result<LefschetzOutcome> {
    let basis = select_basis(r, q, &BasisOptions::default())?;
    let target = GramDeterminant { q, basis: basis.monomials.clone() };
    let tries = if r.is_concrete() { 1 } else { 3 };
    let mut draws = Vec::new();
    for k in 0..MAX_DRAWS {
        let map = match r.numeric_at(k) {
            Ok(m) => m,
            Err(Error::NotLsop(_)) => continue,
            Err(e) => return Err(e),
        };
        draws.push(k);
        let det = target.eval(&map)?;
        if !map.domain().is_zero(&det) {
            return Ok(LefschetzOutcome { q, holds: true, dimension: basis.monomials.len(), draws });
        }
        if draws.len() == tries {
            break;
        }
    }
    Ok(LefschetzOutcome { q, holds: false, dimension: basis.monomials.len(), draws })
}

/// Whether `y` is nonzero in Hbar and whether y^2 vanishes there, decided
/// exactly by pairing against every monomial of complementary degree.
#[derive(Clone, Debug, Serialize)]
pub struct AnisotropyWitness {
    pub element: FaceMonomial,
    pub nonzero: bool,
    pub square_vanishes: bool,
}

pub fn anisotropy_witness(r: &Reduction, y: &FaceMonomial) -> Result<AnisotropyWitness> {
    let map = r.symbolic()?;
    let d = r.d() as u32;
    let q = y.degree();
    if 2 * q > d {
        return Err(Error::InvalidDimension(q as usize));
    }
    let pairs_nonzero = |m: &FaceMonomial| -> Result<bool> {
        for z in crate::degree::face_monomials(r.complex(), d - m.degree()) {
            if !map.reduce(&m.mul(&z))?.is_zero() {
                return Ok(true);
            }
        }
        Ok(false)
    };
    let square = y.mul(y);
    Ok(AnisotropyWitness { element: y.clone(), nonzero: pairs_nonzero(y)?, square_vanishes: !pairs_nonzero(&square)? })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::SimplicialComplex;
    use crate::degree::Lsop;
    use crate::field::Field;

    fn mono(s: &str) -> FaceMonomial {
        s.parse().unwrap()
    }

    fn square() -> SimplicialComplex {
        SimplicialComplex::boundary_simplex(1).unwrap().suspension().unwrap()
    }

    fn facet_product(r: &Reduction) -> RatFunc {
        let f = r.field();
        r.complex().facets().iter().fold(RatFunc::one(f), |acc, g| acc.mul(&r.lsop().bracket(f, g)))
    }

    #[test]
    fn middle_degree_of_the_square() {
        let f = Field::Rational;
        let r = Reduction::generic(&square(), f, 1).unwrap();
        let (m, det) = hr_gram_exact(&r, 1, &[mono("x3"), mono("x4")]).unwrap();
        assert_eq!(m[0][1], m[1][0]);
        assert!(m[0][1].is_zero());
        let ratio = det.div(&facet_product(&r)).unwrap();
        assert_eq!(ratio.square_class_mod_scalars().unwrap(), Some(f.square_class(&f.from_i64(-1))));
        let profile = exact_ord_profile(&r, &det).unwrap();
        for (s, ord) in profile {
            assert_eq!(ord.rem_euclid(2), i64::from(r.complex().is_facet(&s)), "{s:?}");
        }
    }

    #[test]
    fn punctured_square_is_not_anisotropic() {
        let f = Field::Rational;
        let c = square();
        let r = Reduction::new(&c, Lsop::punctured(&c, &[1, 2]).unwrap(), f, 1).unwrap();
        let w = anisotropy_witness(&r, &mono("x3")).unwrap();
        assert!(w.nonzero && w.square_vanishes);
        let generic = Reduction::generic(&c, f, 1).unwrap();
        let w = anisotropy_witness(&generic, &mono("x3")).unwrap();
        assert!(w.nonzero && !w.square_vanishes);
    }

    #[test]
    fn lefschetz_in_low_degrees() {
        let f = Field::Rational;
        for c in [SimplicialComplex::octahedron(), SimplicialComplex::boundary_simplex(4).unwrap()] {
            let r = Reduction::generic(&c, f, 2).unwrap();
            for q in 0..=c.d() / 2 {
                let out = lefschetz_check(&r, q).unwrap();
                assert!(out.holds, "q = {q}");
            }
        }
    }
}
