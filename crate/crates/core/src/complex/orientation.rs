use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::topology::is_pseudomanifold;
use super::SimplicialComplex;
use crate::error::{Error, Result};
use crate::field::Field;

/// A sign for each facet, indexed like [`SimplicialComplex::facets`].
///
/// Removing the m-th smallest vertex (m = 1, ..., d) of a facet F with sign
/// e_F induces the sign e_F (-1)^(m-1) on the ridge; the two facets through a
/// ridge must induce opposite signs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Orientation {
    signs: Vec<i8>,
    char2: bool,
}

impl Orientation {
    /// Signs given directly, without any compatibility check.
    pub fn from_signs(signs: Vec<i8>, char2: bool) -> Orientation {
        assert!(signs.iter().all(|s| *s == 1 || *s == -1), "signs must be +1 or -1");
        Orientation { signs, char2 }
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn sign(&self, facet_index: usize) -> i8 {
        self.signs[facet_index]
    }

    pub fn is_char2(&self) -> bool {
        self.char2
    }

    /// The opposite orientation.
    pub fn flipped(&self) -> Orientation {
        Orientation { signs: self.signs.iter().map(|s| -s).collect(), char2: self.char2 }
    }

    /// The same signs with one facet's sign reversed.
    pub fn with_flipped_facet(&self, facet_index: usize) -> Orientation {
        let mut o = self.clone();
        o.signs[facet_index] = -o.signs[facet_index];
        o
    }

    /// Whether every ridge lying in exactly two facets receives opposite
    /// induced signs (always true in characteristic 2).
    pub fn is_compatible(&self, c: &SimplicialComplex) -> bool {
        if self.char2 {
            return true;
        }
        let facets = c.facets();
        c.ridge_map().iter().all(|(ridge, fs)| {
            if fs.len() != 2 {
                return true;
            }
            let induced = |k: usize| -> i8 {
                let m = removed_position(&facets[k], ridge);
                self.signs[k] * if m % 2 == 0 { 1 } else { -1 }
            };
            induced(fs[0]) == -induced(fs[1])
        })
    }
}

/// 0-based position of the vertex of `facet` missing from `ridge`.
fn removed_position(facet: &[usize], ridge: &[usize]) -> usize {
    facet.iter().position(|v| ridge.binary_search(v).is_err()).expect("ridge is a facet minus one vertex")
}

/// Propagates signs from the lexicographically first facet across ridges.
/// The seed gets +1, except for S^0 where the facet {1} gets -1 so that
/// deg(x_1 + x_2) = 1/a_12 - 1/a_11. Characteristic 2 gives all +1.
pub fn orient(c: &SimplicialComplex, field: Field) -> Result<Orientation> {
    if !is_pseudomanifold(c) {
        return Err(Error::NotPseudomanifold("needs a pure, strongly connected complex with two facets per ridge".into()));
    }
    let m = c.facets().len();
    if field.characteristic() == 2 {
        return Ok(Orientation { signs: vec![1; m], char2: true });
    }
    let facets = c.facets();
    let ridges = c.ridge_map();
    let mut signs = vec![0i8; m];
    signs[0] = if c.d() == 1 { -1 } else { 1 };
    let mut queue = VecDeque::from([0usize]);
    while let Some(k) = queue.pop_front() {
        let f = &facets[k];
        for i in 0..f.len() {
            let mut r = f.clone();
            r.remove(i);
            let induced = signs[k] * if i % 2 == 0 { 1 } else { -1 };
            for &other in &ridges[&r] {
                if other == k {
                    continue;
                }
                let j = removed_position(&facets[other], &r);
                let want = -induced * if j % 2 == 0 { 1 } else { -1 };
                if signs[other] == 0 {
                    signs[other] = want;
                    queue.push_back(other);
                } else if signs[other] != want {
                    return Err(Error::NonOrientable);
                }
            }
        }
    }
    Ok(Orientation { signs, char2: false })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_points() {
        let s0 = SimplicialComplex::boundary_simplex(1).unwrap();
        let o = orient(&s0, Field::Rational).unwrap();
        assert_eq!(o.signs(), &[-1, 1]);
        assert!(o.is_compatible(&s0));
    }

    #[test]
    fn triangle_boundary() {
        let c = SimplicialComplex::boundary_simplex(2).unwrap();
        let o = orient(&c, Field::Rational).unwrap();
        // facets 12, 13, 23
        assert_eq!(o.signs(), &[1, -1, 1]);
        assert!(o.is_compatible(&c));
        assert!(o.flipped().is_compatible(&c));
        assert!(!o.with_flipped_facet(1).is_compatible(&c));
    }

    #[test]
    fn projective_plane_is_not_orientable() {
        let rp2 = SimplicialComplex::rp2_six_vertex();
        assert!(matches!(orient(&rp2, Field::Rational), Err(Error::NonOrientable)));
        assert!(matches!(orient(&rp2, Field::Prime(3)), Err(Error::NonOrientable)));
        let o = orient(&rp2, Field::binary(10).unwrap()).unwrap();
        assert!(o.signs().iter().all(|&s| s == 1));
    }

    #[test]
    fn spheres_are_orientable() {
        for c in [
            SimplicialComplex::octahedron(),
            SimplicialComplex::boundary_simplex(4).unwrap(),
            SimplicialComplex::stacked_sphere(3, 2).unwrap(),
        ] {
            assert!(orient(&c, Field::Rational).unwrap().is_compatible(&c));
        }
    }
}
