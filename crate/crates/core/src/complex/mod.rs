//! Finite simplicial complexes on the vertex set {1, ..., n}.

mod orientation;
mod topology;

use std::collections::BTreeSet;
use std::sync::OnceLock;

use rustc_hash::{FxHashMap, FxHashSet};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use orientation::{orient, Orientation};
pub use topology::{reduced_betti, topology_report, TopologyReport};

/// A simplicial complex given by its facets. Facets are strictly increasing
/// vertex tuples, sorted, with none contained in another.
#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    n: usize,
    facets: Vec<Vec<usize>>,
    pure: bool,
    faces: OnceLock<Vec<FxHashSet<Vec<usize>>>>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.facets == other.facets
    }
}

impl Eq for SimplicialComplex {}

/// JSON form `{"n": .., "facets": [[..], ..]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComplexSpec {
    pub n: usize,
    pub facets: Vec<Vec<usize>>,
}

impl SimplicialComplex {
    /// Canonicalizes a facet list: sorts, deduplicates and keeps only
    /// inclusion-maximal faces.
    pub fn from_facets(n: usize, facets: &[Vec<usize>]) -> Result<SimplicialComplex> {
        if facets.is_empty() {
            return Err(Error::EmptyFacetList);
        }
        let mut sets: Vec<Vec<usize>> = Vec::with_capacity(facets.len());
        for f in facets {
            if f.is_empty() {
                return Err(Error::EmptyFacet);
            }
            if let Some(&v) = f.iter().find(|&&v| v == 0 || v > n) {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            let s: BTreeSet<usize> = f.iter().copied().collect();
            sets.push(s.into_iter().collect());
        }
        Ok(SimplicialComplex::from_sorted(n, sets))
    }

    /// Builds from sorted vertex tuples without range checks. A single empty
    /// facet gives the complex {∅}.
    fn from_sorted(n: usize, mut sets: Vec<Vec<usize>>) -> SimplicialComplex {
        sets.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        sets.dedup();
        let mut kept: Vec<Vec<usize>> = Vec::with_capacity(sets.len());
        for s in sets {
            if !kept.iter().any(|k| is_subset(&s, k)) {
                kept.push(s);
            }
        }
        kept.sort();
        let pure = kept.iter().all(|f| f.len() == kept[0].len());
        SimplicialComplex { n, facets: kept, pure, faces: OnceLock::new() }
    }

    pub fn from_spec(spec: &ComplexSpec) -> Result<SimplicialComplex> {
        SimplicialComplex::from_facets(spec.n, &spec.facets)
    }

    pub fn to_spec(&self) -> ComplexSpec {
        ComplexSpec { n: self.n, facets: self.facets.clone() }
    }

    /// Number of vertex labels (some labels may be unused).
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    pub fn is_pure(&self) -> bool {
        self.pure
    }

    /// Facet size d (the Krull dimension of the face ring); the largest facet
    /// size for non-pure complexes.
    pub fn d(&self) -> usize {
        self.facets.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Geometric dimension d - 1.
    pub fn dim(&self) -> isize {
        self.d() as isize - 1
    }

    /// Vertices that occur in some facet.
    pub fn vertices(&self) -> Vec<usize> {
        let s: BTreeSet<usize> = self.facets.iter().flatten().copied().collect();
        s.into_iter().collect()
    }

    fn face_table(&self) -> &Vec<FxHashSet<Vec<usize>>> {
        self.faces.get_or_init(|| {
            let mut table = vec![FxHashSet::default(); self.d() + 1];
            for f in &self.facets {
                for mask in 0u32..(1 << f.len()) {
                    let s: Vec<usize> = (0..f.len()).filter(|&i| mask & (1 << i) != 0).map(|i| f[i]).collect();
                    table[s.len()].insert(s);
                }
            }
            table
        })
    }

    /// Whether the sorted tuple `g` is a face.
    pub fn is_face(&self, g: &[usize]) -> bool {
        self.face_table().get(g.len()).is_some_and(|t| t.contains(g))
    }

    pub fn is_facet(&self, g: &[usize]) -> bool {
        self.facets.binary_search_by(|f| f.as_slice().cmp(g)).is_ok()
    }

    pub fn facet_index(&self, g: &[usize]) -> Option<usize> {
        self.facets.binary_search_by(|f| f.as_slice().cmp(g)).ok()
    }

    /// All faces with `k` vertices, sorted.
    pub fn faces(&self, k: usize) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> =
            self.face_table().get(k).map(|t| t.iter().cloned().collect()).unwrap_or_default();
        out.sort();
        out
    }

    /// f-vector (f_{-1}, f_0, ..., f_{d-1}): entry i counts faces with i vertices.
    pub fn f_vector(&self) -> Vec<usize> {
        self.face_table().iter().map(|t| t.len()).collect()
    }

    /// h-vector of a pure complex: h_k = sum_i (-1)^(k-i) C(d-i, k-i) f_{i-1}.
    pub fn h_vector(&self) -> Result<Vec<i64>> {
        if !self.pure {
            return Err(Error::NotPure);
        }
        let f = self.f_vector();
        let d = self.d();
        Ok((0..=d)
            .map(|k| {
                (0..=k)
                    .map(|i| {
                        let sign = if (k - i) % 2 == 0 { 1 } else { -1 };
                        sign * binomial(d - i, k - i) as i64 * f[i] as i64
                    })
                    .sum()
            })
            .collect())
    }

    pub fn f_h_vectors(&self) -> Result<(Vec<usize>, Vec<i64>)> {
        Ok((self.f_vector(), self.h_vector()?))
    }

    /// Map from each ridge (face of size d-1) to the facets containing it.
    pub fn ridge_map(&self) -> FxHashMap<Vec<usize>, Vec<usize>> {
        let mut map: FxHashMap<Vec<usize>, Vec<usize>> = FxHashMap::default();
        for (k, f) in self.facets.iter().enumerate() {
            for i in 0..f.len() {
                let mut r = f.clone();
                r.remove(i);
                map.entry(r).or_default().push(k);
            }
        }
        map
    }

    /// The boundary of the simplex on d+1 vertices (a (d-1)-sphere).
    pub fn boundary_simplex(d: usize) -> Result<SimplicialComplex> {
        if d < 1 {
            return Err(Error::InvalidDimension(d));
        }
        let facets: Vec<Vec<usize>> =
            (1..=d + 1).rev().map(|skip| (1..=d + 1).filter(|&v| v != skip).collect()).collect();
        SimplicialComplex::from_facets(d + 1, &facets)
    }

    /// Join with the vertices of `b` relabelled by `+ a.n`.
    pub fn join(a: &SimplicialComplex, b: &SimplicialComplex) -> Result<SimplicialComplex> {
        if !a.pure || !b.pure {
            return Err(Error::NotPure);
        }
        let mut facets = Vec::with_capacity(a.facets.len() * b.facets.len());
        for fa in &a.facets {
            for fb in &b.facets {
                let mut f = fa.clone();
                f.extend(fb.iter().map(|v| v + a.n));
                facets.push(f);
            }
        }
        Ok(SimplicialComplex::from_sorted(a.n + b.n, facets))
    }

    /// Join with S^0, adding the two cone points n+1 and n+2.
    pub fn suspension(&self) -> Result<SimplicialComplex> {
        SimplicialComplex::join(self, &SimplicialComplex::boundary_simplex(1)?)
    }

    /// Replaces facet `f` by the cone from a new vertex n+1 over its boundary.
    pub fn stellar_subdivide(&self, f: &[usize]) -> Result<SimplicialComplex> {
        let mut f = f.to_vec();
        f.sort_unstable();
        let Some(idx) = self.facet_index(&f) else {
            return Err(Error::NotAFacet(f));
        };
        let v = self.n + 1;
        let mut facets = self.facets.clone();
        facets.remove(idx);
        for skip in 0..f.len() {
            let mut g = f.clone();
            g.remove(skip);
            g.push(v);
            facets.push(g);
        }
        Ok(SimplicialComplex::from_sorted(v, facets))
    }

    /// Link of a face, on the same vertex labels. The link of a facet is {∅}.
    pub fn link(&self, g: &[usize]) -> Result<SimplicialComplex> {
        let g = sorted(g);
        if !self.is_face(&g) {
            return Err(Error::NotAFace(g));
        }
        let facets: Vec<Vec<usize>> = self
            .facets
            .iter()
            .filter(|f| is_subset(&g, f))
            .map(|f| f.iter().copied().filter(|v| g.binary_search(v).is_err()).collect())
            .collect();
        Ok(SimplicialComplex::from_sorted(self.n, facets))
    }

    /// Closed star: all facets containing `g`, with their faces.
    pub fn closed_star(&self, g: &[usize]) -> Result<SimplicialComplex> {
        let g = sorted(g);
        if !self.is_face(&g) {
            return Err(Error::NotAFace(g));
        }
        let facets: Vec<Vec<usize>> = self.facets.iter().filter(|f| is_subset(&g, f)).cloned().collect();
        Ok(SimplicialComplex::from_sorted(self.n, facets))
    }

    /// Minimal 6-vertex triangulation of the real projective plane.
    pub fn rp2_six_vertex() -> SimplicialComplex {
        let facets = [
            [1, 2, 3],
            [1, 3, 4],
            [1, 4, 5],
            [1, 5, 6],
            [1, 2, 6],
            [2, 3, 5],
            [2, 4, 5],
            [2, 4, 6],
            [3, 4, 6],
            [3, 5, 6],
        ];
        SimplicialComplex::from_sorted(6, facets.iter().map(|f| f.to_vec()).collect())
    }

    /// Boundary of the octahedron, S^0 * S^0 * S^0: antipodal pairs {1,2}, {3,4}, {5,6}.
    pub fn octahedron() -> SimplicialComplex {
        let s0 = SimplicialComplex::boundary_simplex(1).expect("d = 1");
        let square = SimplicialComplex::join(&s0, &s0).expect("pure");
        SimplicialComplex::join(&square, &s0).expect("pure")
    }

    /// Iterated stellar subdivision of the boundary of the d-simplex: each
    /// step subdivides the lexicographically last facet containing the newest vertex.
    pub fn stacked_sphere(d: usize, steps: usize) -> Result<SimplicialComplex> {
        let mut c = SimplicialComplex::boundary_simplex(d)?;
        for _ in 0..steps {
            let newest = c.n;
            let f = c
                .facets
                .iter()
                .filter(|f| f.contains(&newest))
                .next_back()
                .expect("newest vertex lies in a facet")
                .clone();
            c = c.stellar_subdivide(&f)?;
        }
        Ok(c)
    }

    /// Cycle graph on `m` vertices (a triangulated circle).
    pub fn cycle(m: usize) -> Result<SimplicialComplex> {
        if m < 3 {
            return Err(Error::InvalidDimension(m));
        }
        let facets: Vec<Vec<usize>> = (1..=m).map(|i| vec![i, i % m + 1]).collect();
        SimplicialComplex::from_facets(m, &facets)
    }
}

pub(crate) fn is_subset(a: &[usize], b: &[usize]) -> bool {
    let mut j = 0;
    for &x in a {
        while j < b.len() && b[j] < x {
            j += 1;
        }
        if j == b.len() || b[j] != x {
            return false;
        }
        j += 1;
    }
    true
}

fn sorted(g: &[usize]) -> Vec<usize> {
    let mut g = g.to_vec();
    g.sort_unstable();
    g.dedup();
    g
}

pub(crate) fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

/// All `k`-subsets of `items` in lexicographic order.
pub fn subsets(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            if items.len() - i < k - cur.len() {
                break;
            }
            cur.push(items[i]);
            rec(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(items, k, 0, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonicalization() {
        let c = SimplicialComplex::from_facets(4, &[vec![3, 2, 1], vec![1, 2]]).unwrap();
        assert_eq!(c.facets(), &[vec![1, 2, 3]]);
        assert!(c.is_pure());
        let t = SimplicialComplex::from_facets(3, &[vec![1, 2], vec![1, 3], vec![2, 3]]).unwrap();
        assert!(t.is_pure());
        assert_eq!(t.dim(), 1);
        assert!(matches!(
            SimplicialComplex::from_facets(3, &[vec![1, 4]]),
            Err(Error::VertexOutOfRange { vertex: 4, n: 3 })
        ));
        assert!(matches!(SimplicialComplex::from_facets(3, &[]), Err(Error::EmptyFacetList)));
    }

    #[test]
    fn joins_and_suspensions() {
        let s0 = SimplicialComplex::boundary_simplex(1).unwrap();
        assert_eq!(s0.facets(), &[vec![1], vec![2]]);
        let square = SimplicialComplex::join(&s0, &s0).unwrap();
        assert_eq!(square.facets(), &[vec![1, 3], vec![1, 4], vec![2, 3], vec![2, 4]]);
        let oct = SimplicialComplex::octahedron();
        assert_eq!(oct.facets().len(), 8);
        let sigma = SimplicialComplex::boundary_simplex(1).unwrap().suspension().unwrap();
        assert_eq!(sigma.facets(), square.facets());
    }

    #[test]
    fn subdivision_counts() {
        let b = SimplicialComplex::boundary_simplex(4).unwrap();
        let s = b.stellar_subdivide(&[1, 2, 3, 4]).unwrap();
        assert_eq!(s.facets().len(), 5 + 3);
        assert_eq!(s.n(), 6);
        let oct = SimplicialComplex::octahedron();
        assert_eq!(oct.stellar_subdivide(&[1, 3, 5]).unwrap().facets().len(), 10);
        assert!(matches!(oct.stellar_subdivide(&[1, 2, 3]), Err(Error::NotAFacet(_))));
    }

    #[test]
    fn links_and_stars() {
        let oct = SimplicialComplex::octahedron();
        let lk = oct.link(&[1]).unwrap();
        assert_eq!(lk.facets(), &[vec![3, 5], vec![3, 6], vec![4, 5], vec![4, 6]]);
        assert_eq!(oct.link(&[1, 3]).unwrap().facets(), &[vec![5], vec![6]]);
        assert_eq!(oct.closed_star(&[]).unwrap(), oct);
        assert!(oct.link(&[1, 2]).is_err());
    }

    #[test]
    fn h_vectors() {
        assert_eq!(SimplicialComplex::boundary_simplex(3).unwrap().h_vector().unwrap(), vec![1, 1, 1, 1]);
        assert_eq!(SimplicialComplex::octahedron().h_vector().unwrap(), vec![1, 3, 3, 1]);
        let sigma3 = SimplicialComplex::boundary_simplex(2).unwrap().suspension().unwrap();
        assert_eq!(sigma3.f_vector(), vec![1, 5, 9, 6]);
        assert_eq!(sigma3.h_vector().unwrap(), vec![1, 2, 2, 1]);
    }

    #[test]
    fn subset_enumeration() {
        assert_eq!(subsets(&[1, 2, 3, 4], 2).len(), 6);
        assert_eq!(subsets(&[1, 2, 3], 0), vec![Vec::<usize>::new()]);
    }
}
