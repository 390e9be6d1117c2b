use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::reduction::Reduction;
use crate::degree::{face_monomials, DegreeMap, FaceMonomial};
use crate::domain::{Domain, Numeric};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linalg::{independent_rows, rank};

/// The matrix deg(y_i z_j) for y_i of degree q and z_j of degree d - q, both
/// running over `face_monomials`.
pub fn pairing_matrix<D: Domain>(map: &DegreeMap<D>, q: usize) -> Result<(Vec<FaceMonomial>, Vec<FaceMonomial>, Vec<Vec<D::Elem>>)> {
    let c = map.complex();
    let d = c.d();
    let ys = face_monomials(c, q as u32);
    let zs = face_monomials(c, (d - q) as u32);
    let m = ys
        .iter()
        .map(|y| zs.iter().map(|z| map.reduce(&y.mul(z))).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok((ys, zs, m))
}

/// dim Hbar^q, as the rank of the pairing matrix.
pub fn pairing_rank(map: &DegreeMap<Numeric>, q: usize) -> Result<usize> {
    let (_, _, m) = pairing_matrix(map, q)?;
    Ok(rank(map.domain().0, m))
}

/// Monomials whose images form a basis of Hbar^q, with the partner
/// monomials of degree d - q indexing a nonsingular minor of the pairing.
///
/// The minor is nonzero at a point where every facet bracket is nonzero;
/// evaluation there is a ring homomorphism, so the minor is nonzero over K.
#[derive(Clone, Debug, Serialize)]
pub struct GradedBasis {
    pub q: usize,
    pub monomials: Vec<FaceMonomial>,
    pub partners: Vec<FaceMonomial>,
    /// The minor at the certifying point.
    pub certificate: String,
    pub draw: u64,
}

#[derive(Clone, Debug, Default)]
pub struct BasisOptions {
    /// Only use monomials whose support avoids this facet.
    pub disjoint_from: Option<Vec<usize>>,
    /// Consider candidate monomials in a random order.
    pub shuffle: Option<u64>,
}

pub fn select_basis(r: &Reduction, q: usize, opts: &BasisOptions) -> Result<GradedBasis> {
    let c = r.complex();
    if let Some(f) = &opts.disjoint_from {
        if !c.is_facet(f) {
            return Err(Error::NotAFacet(f.clone()));
        }
    }
    let (map, draw) = r.numeric()?;
    let field = map.domain().0;
    let (mut ys, zs, m) = pairing_matrix(&map, q)?;
    let full_rank = rank(field, m.clone());
    let mut order: Vec<usize> = (0..ys.len()).collect();
    match opts.shuffle {
        Some(seed) => order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed)),
        None => order.sort_by_cached_key(|&i| {
            let support = ys[i].support();
            let star = c.facets().iter().filter(|f| support.iter().all(|v| f.binary_search(v).is_ok())).count();
            (support.len(), star)
        }),
    }
    if let Some(f) = &opts.disjoint_from {
        order.retain(|&i| ys[i].support().iter().all(|v| f.binary_search(v).is_err()));
    }
    let rows: Vec<Vec<Scalar>> = order.iter().map(|&i| m[i].clone()).collect();
    let (picked, pivots) = independent_rows(field, &rows);
    if picked.len() != full_rank {
        return Err(Error::Unsupported(format!("a basis of degree {q} avoiding the given facet")));
    }
    let minor: Vec<Vec<Scalar>> = picked.iter().map(|&i| pivots.iter().map(|&j| rows[i][j].clone()).collect()).collect();
    let det = crate::linalg::det_in(map.domain(), &minor)?;
    debug_assert!(!field.is_zero(&det));
    let mut idx: Vec<usize> = picked.iter().map(|&i| order[i]).collect();
    idx.sort_unstable();
    let mut cols = pivots;
    cols.sort_unstable();
    let monomials = idx.iter().map(|&i| std::mem::take(&mut ys[i])).collect();
    let partners = cols.iter().map(|&j| zs[j].clone()).collect();
    Ok(GradedBasis { q, monomials, partners, certificate: field.format(&det), draw })
}

/// Whether the images of `monomials` form a basis of Hbar^q (rank checked at
/// an admissible point, so a positive answer is exact).
pub fn verify_basis(r: &Reduction, q: usize, monomials: &[FaceMonomial]) -> Result<bool> {
    let (map, _) = r.numeric()?;
    let field = map.domain().0;
    let zs = face_monomials(r.complex(), (r.d() - q) as u32);
    let rows = monomials
        .iter()
        .map(|y| zs.iter().map(|z| map.reduce(&y.mul(z))).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(rank(field, rows) == monomials.len() && monomials.len() == pairing_rank(&map, q)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::SimplicialComplex;
    use crate::field::Field;

    fn mono(s: &str) -> FaceMonomial {
        s.parse().unwrap()
    }

    #[test]
    fn simplex_boundary_uses_a_power_of_one_vertex() {
        let c = SimplicialComplex::boundary_simplex(4).unwrap();
        let r = Reduction::generic(&c, Field::Rational, 5).unwrap();
        for q in 0..=2 {
            let b = select_basis(&r, q, &BasisOptions::default()).unwrap();
            assert_eq!(b.monomials, vec![FaceMonomial::from_pairs([(1, q as u32)])]);
        }
    }

    #[test]
    fn suspension_vertices_span_degree_one() {
        let c = SimplicialComplex::boundary_simplex(2).unwrap().suspension().unwrap();
        let r = Reduction::generic(&c, Field::Rational, 5).unwrap();
        let (map, _) = r.numeric().unwrap();
        assert_eq!(pairing_rank(&map, 1).unwrap(), 2);
        assert_eq!(pairing_rank(&map, 3).unwrap(), 1);
        assert!(verify_basis(&r, 1, &[mono("x4"), mono("x5")]).unwrap());
        assert!(!verify_basis(&r, 1, &[mono("x4")]).unwrap());
        let b = select_basis(&r, 1, &BasisOptions::default()).unwrap();
        assert!(verify_basis(&r, 1, &b.monomials).unwrap());
    }

    #[test]
    fn bases_avoiding_a_facet() {
        let c = SimplicialComplex::octahedron();
        let r = Reduction::generic(&c, Field::Rational, 5).unwrap();
        let opts = BasisOptions { disjoint_from: Some(vec![1, 3, 5]), shuffle: None };
        let b = select_basis(&r, 1, &opts).unwrap();
        assert_eq!(b.monomials, vec![mono("x2"), mono("x4"), mono("x6")]);
        let bad = BasisOptions { disjoint_from: Some(vec![1, 2, 3]), shuffle: None };
        assert!(matches!(select_basis(&r, 1, &bad), Err(Error::NotAFacet(_))));
    }
}
