use serde::{Deserialize, Serialize};

use super::SimplicialComplex;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::rank;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TopologyReport {
    pub connected: bool,
    /// Reduced Betti numbers beta_0, ..., beta_{d-1}.
    pub reduced_betti: Vec<usize>,
    pub is_homology_manifold: bool,
    pub is_homology_sphere: bool,
    pub is_pseudomanifold: bool,
}

/// Homology only depends on the characteristic; Betti numbers over GF(2^e)
/// are computed over F_2.
fn prime_field(field: Field) -> Field {
    match field {
        Field::Binary { .. } => Field::Prime(2),
        f => f,
    }
}

/// Reduced Betti numbers beta_{-1}, beta_0, ..., beta_{d-1} over a field,
/// from ranks of the simplicial boundary maps (including the augmentation).
/// The complex {∅} has beta_{-1} = 1.
fn reduced_betti_from(c: &SimplicialComplex, field: Field) -> Vec<usize> {
    let f = prime_field(field);
    let d = c.d();
    let faces: Vec<Vec<Vec<usize>>> = (0..=d).map(|k| c.faces(k)).collect();
    // ranks[k] = rank of boundary from faces of size k to faces of size k-1
    let mut ranks = vec![0usize; d + 2];
    for k in 1..=d {
        let lower = &faces[k - 1];
        let rows: Vec<Vec<crate::field::Scalar>> = faces[k]
            .iter()
            .map(|s| {
                let mut row = vec![f.zero(); lower.len()];
                for i in 0..s.len() {
                    let mut t = s.clone();
                    t.remove(i);
                    let j = lower.binary_search(&t).expect("boundary face present");
                    row[j] = f.from_i64(if i % 2 == 0 { 1 } else { -1 });
                }
                row
            })
            .collect();
        ranks[k] = rank(f, rows);
    }
    (0..=d).map(|k| faces[k].len() - ranks[k] - ranks[k + 1]).collect()
}

/// Reduced Betti numbers beta_0, ..., beta_{d-1}.
pub fn reduced_betti(c: &SimplicialComplex, field: Field) -> Vec<usize> {
    reduced_betti_from(c, field)[1..].to_vec()
}

fn is_homology_sphere_of(c: &SimplicialComplex, field: Field) -> bool {
    let b = reduced_betti_from(c, field);
    let top = b.len() - 1;
    b.iter().enumerate().all(|(i, &x)| x == usize::from(i == top))
}

fn strongly_connected(c: &SimplicialComplex) -> bool {
    let m = c.facets().len();
    let mut adj = vec![Vec::new(); m];
    for fs in c.ridge_map().values() {
        for &a in fs {
            for &b in fs {
                if a != b {
                    adj[a].push(b);
                }
            }
        }
    }
    let mut seen = vec![false; m];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(x) = stack.pop() {
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Pure, every ridge in exactly two facets, and the facet-ridge graph connected.
pub fn is_pseudomanifold(c: &SimplicialComplex) -> bool {
    c.is_pure() && c.ridge_map().values().all(|fs| fs.len() == 2) && strongly_connected(c)
}

fn is_connected(c: &SimplicialComplex) -> bool {
    let verts = c.vertices();
    if verts.is_empty() {
        return false;
    }
    let mut parent: Vec<usize> = (0..=c.n()).collect();
    fn find(p: &mut Vec<usize>, x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for f in c.facets() {
        for w in f.windows(2) {
            let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            parent[a] = b;
        }
    }
    let root = find(&mut parent, verts[0]);
    verts.iter().all(|&v| find(&mut parent, v) == root)
}

pub fn topology_report(c: &SimplicialComplex, field: Field) -> Result<TopologyReport> {
    if !c.is_pure() {
        return Err(Error::NotPure);
    }
    let reduced_betti = reduced_betti(c, field);
    let d = c.d();
    let mut manifold = true;
    'outer: for k in 1..d {
        for g in c.faces(k) {
            if !is_homology_sphere_of(&c.link(&g)?, field) {
                manifold = false;
                break 'outer;
            }
        }
    }
    let sphere = manifold && reduced_betti.iter().enumerate().all(|(i, &b)| b == usize::from(i + 1 == d));
    Ok(TopologyReport {
        connected: is_connected(c),
        reduced_betti,
        is_homology_manifold: manifold,
        is_homology_sphere: sphere,
        is_pseudomanifold: is_pseudomanifold(c),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spheres() {
        for d in 1..=4 {
            let c = SimplicialComplex::boundary_simplex(d).unwrap();
            let t = topology_report(&c, Field::Rational).unwrap();
            assert!(t.is_homology_sphere, "d = {d}");
            let mut beta = vec![0; d];
            beta[d - 1] = 1;
            assert_eq!(t.reduced_betti, beta);
        }
        let oct = topology_report(&SimplicialComplex::octahedron(), Field::Prime(3)).unwrap();
        assert!(oct.is_homology_sphere && oct.connected && oct.is_pseudomanifold);
    }

    #[test]
    fn projective_plane() {
        let rp2 = SimplicialComplex::rp2_six_vertex();
        let gf = Field::binary(10).unwrap();
        let t2 = topology_report(&rp2, gf).unwrap();
        assert_eq!(t2.reduced_betti, vec![0, 1, 1]);
        assert!(t2.is_homology_manifold && !t2.is_homology_sphere);
        let t0 = topology_report(&rp2, Field::Rational).unwrap();
        assert_eq!(t0.reduced_betti, vec![0, 0, 0]);
        let susp = rp2.suspension().unwrap();
        let s2 = topology_report(&susp, gf).unwrap();
        assert!(s2.is_pseudomanifold && !s2.is_homology_manifold);
        assert!(!topology_report(&susp, Field::Rational).unwrap().is_homology_manifold);
    }
}
