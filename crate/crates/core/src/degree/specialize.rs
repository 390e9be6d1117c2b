//! Valuations ord_[S] of quantities derived from the generic degree map,
//! computed without expanding them symbolically.
//!
//! For a size-d subset S, pick a random point alpha on the hypersurface
//! [S] = 0 and a random direction beta, and evaluate the quantity over k((t))
//! along alpha + t beta. When [S] vanishes to order one along the curve and
//! alpha avoids every other irreducible factor, ord_t equals ord_[S]. Each
//! valuation is taken from independent curves until two agree.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::map::DegreeMap;
use crate::complex::{subsets, Orientation, SimplicialComplex};
use crate::domain::{Domain, Numeric};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::det_in;
use crate::series::LaurentSeries;

/// A quantity computed from a degree map in any domain.
pub trait Target: Sync {
    fn eval<D: Domain + Clone + Send + 'static>(&self, map: &DegreeMap<D>) -> Result<D::Elem>;
}

/// deg(l^d) for l = x_1 + ... + x_n.
pub struct PowerDegree;

impl Target for PowerDegree {
    fn eval<D: Domain + Clone + Send + 'static>(&self, map: &DegreeMap<D>) -> Result<D::Elem> {
        map.power_times(map.complex().d() as u32, &super::FaceMonomial::one())
    }
}

/// The field in which curves are drawn: F_p with p = 2^31 - 1 for Q, and
/// GF(2^30) (which contains GF(2^10)) in characteristic 2.
pub fn specialization_field(field: Field) -> Field {
    match field {
        Field::Binary { degree, .. } if 30 % degree == 0 => Field::binary(30).expect("supported degree"),
        f => f.evaluation_field(),
    }
}

#[derive(Clone, Debug)]
pub struct Specializer {
    pub field: Field,
    pub seed: u64,
    pub precision: usize,
    pub max_precision: usize,
    pub max_trials: usize,
}

impl Specializer {
    pub fn new(field: Field, seed: u64) -> Specializer {
        Specializer { field: specialization_field(field), seed, precision: 8, max_precision: 128, max_trials: 6 }
    }

    fn rng_for(&self, subset: &[usize], trial: usize) -> ChaCha8Rng {
        let mut h = self.seed ^ 0x9e37_79b9_7f4a_7c15;
        for &v in subset.iter().chain(std::iter::once(&trial)) {
            h = (h ^ v as u64).wrapping_mul(0x100_0000_01b3).rotate_left(17);
        }
        ChaCha8Rng::seed_from_u64(h)
    }

    /// ord_[S] of the target, for a size-d subset S of the vertices.
    pub fn ord_at<T: Target>(&self, c: &SimplicialComplex, o: &Orientation, target: &T, subset: &[usize]) -> Result<i64> {
        let mut seen: Vec<i64> = Vec::new();
        for trial in 0..self.max_trials {
            let mut rng = self.rng_for(subset, trial);
            let Some((alpha, beta)) = self.curve(c, subset, &mut rng) else { continue };
            let v = match self.ord_along(c, o, target, &alpha, &beta) {
                Ok(v) => v,
                Err(Error::NotLsop(_)) | Err(Error::DivisionByZero) => continue,
                Err(e) => return Err(e),
            };
            if seen.contains(&v) {
                return Ok(v);
            }
            seen.push(v);
        }
        Err(Error::Unsupported(format!("a stable valuation at {subset:?} (saw {seen:?})")))
    }

    /// ord_[S] for every size-d subset S, keyed by S.
    pub fn ord_profile<T: Target>(
        &self,
        c: &SimplicialComplex,
        o: &Orientation,
        target: &T,
    ) -> Result<BTreeMap<Vec<usize>, i64>> {
        let all = subsets(&(1..=c.n()).collect::<Vec<_>>(), c.d());
        let ords: Vec<i64> = all.par_iter().map(|s| self.ord_at(c, o, target, s)).collect::<Result<_>>()?;
        Ok(all.into_iter().zip(ords).collect())
    }

    /// A point alpha with [S](alpha) = 0 and a direction beta along which
    /// [S] has a simple zero. Entries are indexed [row][column], column 0
    /// included.
    fn curve(&self, c: &SimplicialComplex, subset: &[usize], rng: &mut ChaCha8Rng) -> Option<(Vec<Vec<Scalar>>, Vec<Vec<Scalar>>)> {
        let f = self.field;
        let (d, n) = (c.d(), c.n());
        let mut alpha = random_point(f, d, n, rng);
        let beta = random_point(f, d, n, rng);
        let minor = |m: &Vec<Vec<Scalar>>| -> Scalar {
            let rows: Vec<Vec<Scalar>> = m.iter().map(|r| subset.iter().map(|&j| r[j].clone()).collect()).collect();
            det_in(&Numeric(f), &rows).expect("square")
        };
        // [S] is affine-linear in the (1, s_1) entry
        let s1 = subset[0];
        alpha[0][s1] = f.zero();
        let r0 = minor(&alpha);
        alpha[0][s1] = f.one();
        let slope = f.sub(&minor(&alpha), &r0);
        if f.is_zero(&slope) {
            return None;
        }
        alpha[0][s1] = f.neg(&f.div(&r0, &slope).expect("nonzero"));
        debug_assert!(f.is_zero(&minor(&alpha)));
        // the t-coefficient of [S](alpha + t beta) is the derivative along beta
        let dom = LaurentSeries::new(f, 4);
        let rows: Vec<Vec<_>> = (0..d)
            .map(|i| subset.iter().map(|&j| dom.polynomial(&[alpha[i][j].clone(), beta[i][j].clone()])).collect())
            .collect();
        let along = det_in(&dom, &rows).ok()?;
        (along.valuation() == Some(1)).then_some((alpha, beta))
    }

    fn ord_along<T: Target>(
        &self,
        c: &SimplicialComplex,
        o: &Orientation,
        target: &T,
        alpha: &[Vec<Scalar>],
        beta: &[Vec<Scalar>],
    ) -> Result<i64> {
        let mut precision = self.precision;
        loop {
            let dom = LaurentSeries::new(self.field, precision);
            let entries: Vec<Vec<_>> = alpha
                .iter()
                .zip(beta)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| dom.polynomial(&[x.clone(), y.clone()])).collect())
                .collect();
            let result = DegreeMap::at_point(c, o, dom, entries).and_then(|map| target.eval(&map));
            match result {
                Ok(v) => match v.valuation() {
                    Some(k) => return Ok(k),
                    None if dom.is_zero(&v) => return Err(Error::Unsupported("valuation of zero".into())),
                    None => {}
                },
                Err(Error::PrecisionExhausted) => {}
                Err(e) => return Err(e),
            }
            precision *= 2;
            if precision > self.max_precision {
                return Err(Error::PrecisionExhausted);
            }
        }
    }
}

/// A random point of k^(d x (n+1)) in the specialization field.
pub fn random_point<R: Rng>(field: Field, d: usize, n: usize, rng: &mut R) -> Vec<Vec<Scalar>> {
    (0..d).map(|_| (0..=n).map(|_| field.random(rng)).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::orient;
    use crate::degree::Lsop;
    use crate::domain::Symbolic;

    #[test]
    fn specialized_valuations_match_exact_ones() {
        let f = Field::Rational;
        for c in [
            SimplicialComplex::boundary_simplex(1).unwrap().suspension().unwrap(),
            SimplicialComplex::boundary_simplex(3).unwrap(),
        ] {
            let o = orient(&c, f).unwrap();
            let lsop = Lsop::generic(c.d(), c.n());
            let exact = PowerDegree.eval(&DegreeMap::symbolic(&c, &o, &lsop, Symbolic(f)).unwrap()).unwrap();
            let profile = Specializer::new(f, 3).ord_profile(&c, &o, &PowerDegree).unwrap();
            for (s, ord) in profile {
                let want = exact.ord_at(lsop.bracket(f, &s).numer()).unwrap();
                assert_eq!(ord, want, "{s:?}");
                assert_eq!(ord, if c.is_facet(&s) { -1 } else { 0 });
            }
        }
    }
}
