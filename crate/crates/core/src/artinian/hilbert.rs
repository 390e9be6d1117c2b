use serde::Serialize;

use super::basis::pairing_rank;
use super::reduction::Reduction;
use crate::complex::{binomial, topology_report, SimplicialComplex};
use crate::degree::{face_monomials, FaceMonomial};
use crate::error::Result;
use crate::field::{Field, Scalar};
use crate::linalg::rank;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertReport {
    /// dim H^q for q = 0..=d.
    pub h: Vec<usize>,
    /// dim of the Gorenstein quotient in each degree.
    pub hbar: Vec<usize>,
    pub h_vector: Vec<i64>,
    pub reduced_betti: Vec<usize>,
    pub is_homology_manifold: bool,
    /// The dimensions forced on homology manifolds by the h-vector and the
    /// Betti numbers.
    pub prediction: Vec<i64>,
    /// Index of the random draw the numbers were computed at.
    pub draw: u64,
}

impl HilbertReport {
    pub fn matches_prediction(&self) -> bool {
        self.hbar.iter().zip(&self.prediction).all(|(&a, &b)| a as i64 == b)
    }
}

/// dim Hbar^q = h_q + C(d, q) sum_{p<q} (-1)^(q-p) beta_p for q < d, and 1 for q = d.
pub fn gorenstein_prediction(h_vector: &[i64], betti: &[usize]) -> Vec<i64> {
    let d = h_vector.len() - 1;
    (0..=d)
        .map(|q| {
            if q == d {
                return 1;
            }
            let alt: i64 = (0..q).map(|p| if (q - p) % 2 == 0 { 1 } else { -1 } * betti[p] as i64).sum();
            h_vector[q] + binomial(d, q) as i64 * alt
        })
        .collect()
}

/// Rank of multiplication by the rows of `point` from degree q-1 to degree q.
pub fn multiplication_rank(c: &SimplicialComplex, field: Field, point: &[Vec<Scalar>], q: u32) -> usize {
    if q == 0 {
        return 0;
    }
    let target = face_monomials(c, q);
    let rows: Vec<Vec<Scalar>> = face_monomials(c, q - 1)
        .iter()
        .flat_map(|m| {
            let target = &target;
            point.iter().map(move |mu| {
                let mut r = vec![field.zero(); target.len()];
                for (v, coeff) in mu.iter().enumerate().skip(1) {
                    if let Ok(k) = target.binary_search(&m.mul(&FaceMonomial::var(v))) {
                        r[k] = field.add(&r[k], coeff);
                    }
                }
                r
            })
        })
        .collect();
    rank(field, rows)
}

pub fn hilbert_report(r: &Reduction) -> Result<HilbertReport> {
    let c = r.complex();
    let d = c.d();
    let (map, draw) = r.numeric()?;
    let point = r.point(draw)?;
    let f = r.point_field();
    let h: Vec<usize> = (0..=d as u32)
        .map(|q| face_monomials(c, q).len() - multiplication_rank(c, f, &point, q))
        .collect();
    let hbar = (0..=d).map(|q| pairing_rank(&map, q)).collect::<Result<Vec<_>>>()?;
    let topo = topology_report(c, r.field())?;
    let h_vector = c.h_vector()?;
    let prediction = gorenstein_prediction(&h_vector, &topo.reduced_betti);
    Ok(HilbertReport {
        h,
        hbar,
        h_vector,
        reduced_betti: topo.reduced_betti,
        is_homology_manifold: topo.is_homology_manifold,
        prediction,
        draw,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prediction_on_the_projective_plane() {
        // f = (6, 15, 10), beta = (0, 1, 1) mod 2
        assert_eq!(gorenstein_prediction(&[1, 3, 6, 0], &[0, 1, 1]), vec![1, 3, 3, 1]);
    }

    #[test]
    fn spheres_have_h_vector_dimensions() {
        for c in [
            SimplicialComplex::boundary_simplex(3).unwrap(),
            SimplicialComplex::octahedron(),
            SimplicialComplex::cycle(5).unwrap(),
        ] {
            let r = Reduction::generic(&c, Field::Rational, 1).unwrap();
            let rep = hilbert_report(&r).unwrap();
            let h: Vec<i64> = rep.h.iter().map(|&x| x as i64).collect();
            assert_eq!(h, rep.h_vector);
            assert_eq!(rep.h, rep.hbar);
            assert!(rep.matches_prediction());
        }
    }
}
