use std::collections::VecDeque;
use std::sync::{Mutex, OnceLock};

use rayon::prelude::*;
use rustc_hash::FxHashMap;

use super::face::{face_monomials, FaceMonomial};
use super::lsop::Lsop;
use crate::complex::{Orientation, SimplicialComplex};
use crate::domain::{Domain, Symbolic, ZeroTest};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::det_in;
use crate::poly::bracket::inversions;
use crate::poly::RatFunc;

type BracketFn<E> = Box<dyn Fn(&[usize]) -> Result<Option<(E, E)>> + Send + Sync>;

/// The degree map H^d -> K of an artinian reduction, evaluated in a domain.
///
/// Brackets, their inverses and the degrees of individual monomials are
/// memoized; all methods take `&self` and may be called from several threads.
pub struct DegreeMap<D: Domain> {
    complex: SimplicialComplex,
    orientation: Orientation,
    dom: D,
    bracket_fn: BracketFn<D::Elem>,
    brackets: Mutex<FxHashMap<Vec<usize>, Option<(D::Elem, D::Elem)>>>,
    memo: Mutex<FxHashMap<FaceMonomial, D::Elem>>,
    top: OnceLock<Vec<FaceMonomial>>,
    facet_order: Vec<usize>,
}

impl DegreeMap<Symbolic> {
    /// The degree map of `lsop` over K = k(a_{i,j}).
    pub fn symbolic(c: &SimplicialComplex, o: &Orientation, lsop: &Lsop, dom: Symbolic) -> Result<Self> {
        lsop.check(c, dom.0)?;
        let field = dom.0;
        let lsop = lsop.clone();
        let f: BracketFn<RatFunc> = Box::new(move |cols| Ok(lsop.bracket_factored(field, cols).map(|b| (b.value(field), b.inverse(field)))));
        Ok(DegreeMap::with_brackets(c, o, dom, f))
    }
}

impl<D: Domain + Clone + Send + 'static> DegreeMap<D> {
    /// The degree map at a point: `entries[i - 1][j]` is mu_{i,j}, with column
    /// 0 holding the auxiliary column. Fails when some facet bracket vanishes.
    pub fn at_point(c: &SimplicialComplex, o: &Orientation, dom: D, entries: Vec<Vec<D::Elem>>) -> Result<Self> {
        let d = c.d();
        if entries.len() != d || entries.iter().any(|r| r.len() != c.n() + 1) {
            return Err(Error::NonSquare { rows: entries.len(), cols: entries.first().map_or(0, Vec::len) });
        }
        let inner = dom.clone();
        let f: BracketFn<D::Elem> = Box::new(move |cols| {
            let m: Vec<Vec<D::Elem>> = entries.iter().map(|r| cols.iter().map(|&j| r[j].clone()).collect()).collect();
            let v = leibniz_det(&inner, &m)?;
            match inner.zero_test(&v) {
                ZeroTest::Zero => Ok(None),
                ZeroTest::NonZero => {
                    let inv = inner.inv(&v)?;
                    Ok(Some((v, inv)))
                }
                ZeroTest::Unknown => Err(Error::PrecisionExhausted),
            }
        });
        let map = DegreeMap::with_brackets(c, o, dom, f);
        for facet in c.facets() {
            if map.bracket(facet)?.is_none() {
                return Err(Error::NotLsop(facet.clone()));
            }
        }
        Ok(map)
    }
}

impl<D: Domain> DegreeMap<D> {
    fn with_brackets(c: &SimplicialComplex, o: &Orientation, dom: D, bracket_fn: BracketFn<D::Elem>) -> Self {
        DegreeMap {
            complex: c.clone(),
            orientation: o.clone(),
            dom,
            bracket_fn,
            brackets: Mutex::new(FxHashMap::default()),
            memo: Mutex::new(FxHashMap::default()),
            top: OnceLock::new(),
            facet_order: ridge_order(c),
        }
    }

    pub fn domain(&self) -> &D {
        &self.dom
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn orientation(&self) -> &Orientation {
        &self.orientation
    }

    /// `[cols]` and its inverse for sorted `cols`, `None` when it vanishes.
    pub fn bracket(&self, cols: &[usize]) -> Result<Option<(D::Elem, D::Elem)>> {
        if let Some(v) = self.brackets.lock().unwrap().get(cols) {
            return Ok(v.clone());
        }
        let v = (self.bracket_fn)(cols)?;
        self.brackets.lock().unwrap().insert(cols.to_vec(), v.clone());
        Ok(v)
    }

    fn epsilon(&self, facet_index: usize) -> D::Elem {
        self.dom.from_i64(self.orientation.sign(facet_index) as i64)
    }

    fn check_degree(&self, m: &FaceMonomial) -> Result<()> {
        let d = self.complex.d();
        if m.degree() as usize != d {
            return Err(Error::Inhomogeneous(d));
        }
        Ok(())
    }

    /// deg(m) by Cramer rewriting: a squarefree facet monomial x_F has degree
    /// e_F/[F]; otherwise a repeated variable x_j is traded for monomials of
    /// strictly larger support.
    pub fn reduce(&self, m: &FaceMonomial) -> Result<D::Elem> {
        self.check_degree(m)?;
        self.reduce_rec(m)
    }

    fn reduce_rec(&self, m: &FaceMonomial) -> Result<D::Elem> {
        let c = &self.complex;
        let support = m.support();
        if !c.is_face(&support) {
            return Ok(self.dom.zero());
        }
        if let Some(v) = self.memo.lock().unwrap().get(m) {
            return Ok(v.clone());
        }
        let value = if m.is_squarefree() {
            let k = c.facet_index(&support).expect("a face of size d is a facet");
            let (_, inv) = self.bracket(&support)?.expect("facet brackets are nonzero");
            self.dom.mul(&self.epsilon(k), &inv)
        } else {
            let j = m.pairs().iter().find(|p| p.1 > 1).expect("not squarefree").0;
            let facet = c
                .facets()
                .iter()
                .find(|f| support.iter().all(|v| f.binary_search(v).is_ok()))
                .expect("faces lie in facets");
            let (_, inv) = self.bracket(facet)?.expect("facet brackets are nonzero");
            let pos = facet.binary_search(&j).unwrap();
            let mut acc = self.dom.zero();
            for v in 1..=c.n() {
                if facet.binary_search(&v).is_ok() {
                    continue;
                }
                let next = m.exchange(j, v);
                if !c.is_face(&next.support()) {
                    continue;
                }
                let mut seq = facet.clone();
                seq[pos] = v;
                let odd = inversions(&seq) % 2 == 1;
                seq.sort_unstable();
                let Some((b, _)) = self.bracket(&seq)? else { continue };
                let term = self.dom.mul(&b, &self.reduce_rec(&next)?);
                acc = if odd { self.dom.add(&acc, &term) } else { self.dom.sub(&acc, &term) };
            }
            self.dom.mul(&acc, &inv)
        };
        self.memo.lock().unwrap().insert(m.clone(), value.clone());
        Ok(value)
    }

    /// deg(m) as a sum over the facets F containing the support of m of
    /// e_F prod_k X_{F,k}^(b_k - 1) / [F], where X_{F,k} = (-1)^k [F + 0 - j_k]
    /// involves the auxiliary column. Facets are visited in ridge-adjacent
    /// order so that poles cancel early.
    pub fn kx(&self, m: &FaceMonomial) -> Result<D::Elem> {
        self.check_degree(m)?;
        let c = &self.complex;
        let support = m.support();
        let mut acc = self.dom.zero();
        for &k in &self.facet_order {
            let facet = &c.facets()[k];
            if !support.iter().all(|v| facet.binary_search(v).is_ok()) {
                continue;
            }
            let (_, inv) = self.bracket(facet)?.expect("facet brackets are nonzero");
            let mut term = self.dom.mul(&self.epsilon(k), &inv);
            for (idx, &j) in facet.iter().enumerate() {
                let mut cols = facet.clone();
                cols.remove(idx);
                cols.insert(0, 0);
                let (x, x_inv) = self.bracket(&cols)?.ok_or(Error::DivisionByZero)?;
                let x = if idx % 2 == 0 { self.dom.neg(&x) } else { x };
                let x_inv = if idx % 2 == 0 { self.dom.neg(&x_inv) } else { x_inv };
                match m.exponent(j) {
                    0 => term = self.dom.mul(&term, &x_inv),
                    b => term = self.dom.mul(&term, &self.dom.pow(&x, b - 1)),
                }
            }
            acc = self.dom.add(&acc, &term);
        }
        Ok(acc)
    }

    /// deg of a k-linear combination of degree-d monomials.
    pub fn poly(&self, g: &[(Scalar, FaceMonomial)]) -> Result<D::Elem> {
        for (_, m) in g {
            self.check_degree(m)?;
        }
        let terms: Vec<D::Elem> = g
            .par_iter()
            .map(|(s, m)| Ok(self.dom.scale(&self.reduce(m)?, s)))
            .collect::<Result<_>>()?;
        Ok(terms.iter().fold(self.dom.zero(), |a, t| self.dom.add(&a, t)))
    }

    /// All degree-d monomials with face support.
    pub fn top_monomials(&self) -> &[FaceMonomial] {
        self.top.get_or_init(|| face_monomials(&self.complex, self.complex.d() as u32))
    }

    /// Fills the memo table for every degree-d monomial in parallel.
    pub fn precompute(&self) -> Result<()> {
        self.top_monomials().par_iter().try_for_each(|m| self.reduce(m).map(|_| ()))
    }

    /// deg(l^r * y) for l = x_1 + ... + x_n, where r + deg(y) = d.
    pub fn power_times(&self, r: u32, y: &FaceMonomial) -> Result<D::Elem> {
        let d = self.complex.d() as u32;
        if r + y.degree() != d {
            return Err(Error::Inhomogeneous(d as usize));
        }
        let mut acc = self.dom.zero();
        for m in self.top_monomials() {
            let Some(u) = m.div(y) else { continue };
            let coeff = self.dom.field().from_u128(u.multinomial());
            acc = self.dom.add(&acc, &self.dom.scale(&self.reduce(m)?, &coeff));
        }
        Ok(acc)
    }
}

/// Facet indices in breadth-first order through shared ridges.
fn ridge_order(c: &SimplicialComplex) -> Vec<usize> {
    let m = c.facets().len();
    let mut adj = vec![Vec::new(); m];
    for fs in c.ridge_map().values() {
        for &a in fs {
            adj[a].extend(fs.iter().copied().filter(|&b| b != a));
        }
    }
    let mut seen = vec![false; m];
    let mut order = Vec::with_capacity(m);
    for start in 0..m {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(k) = queue.pop_front() {
            order.push(k);
            for &b in &adj[k] {
                if !seen[b] {
                    seen[b] = true;
                    queue.push_back(b);
                }
            }
        }
    }
    order
}

/// Determinant by permutation expansion (no divisions, so exact in every
/// domain); elimination beyond 5x5.
fn leibniz_det<D: Domain>(dom: &D, m: &[Vec<D::Elem>]) -> Result<D::Elem> {
    let n = m.len();
    if n > 5 {
        return det_in(dom, m);
    }
    let mut perm: Vec<usize> = (0..n).collect();
    let mut acc = dom.zero();
    loop {
        let mut term = dom.one();
        for (i, &j) in perm.iter().enumerate() {
            term = dom.mul(&term, &m[i][j]);
        }
        acc = if inversions(&perm) % 2 == 0 { dom.add(&acc, &term) } else { dom.sub(&acc, &term) };
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Ok(acc)
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

fn symbolic_map(c: &SimplicialComplex, o: &Orientation, lsop: &Lsop, field: Field) -> Result<DegreeMap<Symbolic>> {
    DegreeMap::symbolic(c, o, lsop, Symbolic(field))
}

/// deg(m) in K by Cramer rewriting.
pub fn degree_reduce(c: &SimplicialComplex, o: &Orientation, lsop: &Lsop, field: Field, m: &FaceMonomial) -> Result<RatFunc> {
    symbolic_map(c, o, lsop, field)?.reduce(m)
}

/// deg(m) in K by the facet-sum formula; the auxiliary variables must cancel.
pub fn degree_kx(c: &SimplicialComplex, o: &Orientation, lsop: &Lsop, field: Field, m: &FaceMonomial) -> Result<RatFunc> {
    let r = symbolic_map(c, o, lsop, field)?.kx(m)?;
    if r.vars().iter().any(|v| v.is_extended()) {
        return Err(Error::ExtendedResidue);
    }
    Ok(r)
}

/// deg of a k-linear combination of degree-d monomials.
pub fn degree_poly(
    c: &SimplicialComplex,
    o: &Orientation,
    lsop: &Lsop,
    field: Field,
    g: &[(Scalar, FaceMonomial)],
) -> Result<RatFunc> {
    symbolic_map(c, o, lsop, field)?.poly(g)
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::complex::orient;
    use crate::domain::Numeric;
    use crate::poly::{SparsePoly, VarId};

    fn sigma(d: usize) -> SimplicialComplex {
        SimplicialComplex::boundary_simplex(d - 1).unwrap().suspension().unwrap()
    }

    fn mono(s: &str) -> FaceMonomial {
        s.parse().unwrap()
    }

    #[test]
    fn two_points_linear_form() {
        let f = Field::Rational;
        let c = SimplicialComplex::boundary_simplex(1).unwrap();
        let o = orient(&c, f).unwrap();
        let l = Lsop::generic(1, 2);
        let one = f.one();
        let deg = degree_poly(&c, &o, &l, f, &[(one.clone(), mono("x1")), (one, mono("x2"))]).unwrap();
        let a11 = SparsePoly::var(f, VarId::new(1, 1));
        let a12 = SparsePoly::var(f, VarId::new(1, 2));
        let want = RatFunc::new(a11.sub(&a12), a11.mul(&a12)).unwrap();
        assert_eq!(deg, want);
    }

    #[test]
    fn facet_monomials_are_normalized() {
        let f = Field::Rational;
        let c = sigma(2);
        let o = orient(&c, f).unwrap();
        let l = Lsop::generic(2, 4);
        for (k, facet) in c.facets().iter().enumerate() {
            let deg = degree_kx(&c, &o, &l, f, &FaceMonomial::squarefree(facet)).unwrap();
            let want = l.bracket(f, facet).inv().unwrap().scale(&f.from_i64(o.sign(k) as i64));
            assert_eq!(deg, want);
        }
    }

    #[test]
    fn both_methods_agree_on_the_square() {
        let f = Field::Rational;
        let c = sigma(2);
        let o = orient(&c, f).unwrap();
        let map = DegreeMap::symbolic(&c, &o, &Lsop::generic(2, 4), Symbolic(f)).unwrap();
        for m in map.top_monomials() {
            let kx = map.kx(m).unwrap();
            assert!(kx.vars().iter().all(|v| !v.is_extended()), "{m}");
            assert_eq!(kx, map.reduce(m).unwrap(), "{m}");
        }
        assert!(map.reduce(&mono("x1*x2")).unwrap().is_zero());
    }

    #[test]
    fn power_of_a_vertex_on_the_simplex_boundary() {
        // deg(x_1^d) = +-[V-1]^d / prod_m [V-m]
        let f = Field::Rational;
        for d in 2..=3 {
            let c = SimplicialComplex::boundary_simplex(d).unwrap();
            let o = orient(&c, f).unwrap();
            let l = Lsop::generic(d, d + 1);
            let deg = degree_reduce(&c, &o, &l, f, &FaceMonomial::from_pairs([(1, d as u32)])).unwrap();
            let without = |m: usize| -> Vec<usize> { (1..=d + 1).filter(|&v| v != m).collect() };
            let mut want = l.bracket(f, &without(1)).pow(d as i32).unwrap();
            for m in 1..=d + 1 {
                want = want.div(&l.bracket(f, &without(m))).unwrap();
            }
            assert!(deg == want || deg == want.neg(), "d = {d}: {deg}");
        }
    }

    #[test]
    fn orientation_flip_negates() {
        let f = Field::Rational;
        let c = SimplicialComplex::boundary_simplex(2).unwrap();
        let o = orient(&c, f).unwrap();
        let l = Lsop::generic(2, 3);
        for m in face_monomials(&c, 2) {
            let a = degree_reduce(&c, &o, &l, f, &m).unwrap();
            let b = degree_reduce(&c, &o.flipped(), &l, f, &m).unwrap();
            assert_eq!(a, b.neg());
        }
    }

    #[test]
    fn degree_is_local() {
        let f = Field::Rational;
        let c = SimplicialComplex::stacked_sphere(2, 1).unwrap();
        let o = orient(&c, f).unwrap();
        let map = DegreeMap::symbolic(&c, &o, &Lsop::generic(2, c.n()), Symbolic(f)).unwrap();
        for m in map.top_monomials() {
            let star = c.closed_star(&m.support()).unwrap().vertices();
            let deg = map.reduce(m).unwrap();
            assert!(deg.vars().iter().all(|v| star.contains(&v.col())), "{m}: {deg}");
        }
    }

    #[test]
    fn inhomogeneous_input_is_rejected() {
        let f = Field::Rational;
        let c = sigma(2);
        let o = orient(&c, f).unwrap();
        let err = degree_reduce(&c, &o, &Lsop::generic(2, 4), f, &mono("x1"));
        assert!(matches!(err, Err(Error::Inhomogeneous(2))));
    }

    /// Kernel of a matrix over a field, by reduced row echelon form.
    fn kernel(field: Field, mut rows: Vec<Vec<Scalar>>, ncols: usize) -> Vec<Vec<Scalar>> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..ncols {
            let Some(p) = (r..rows.len()).find(|&i| !field.is_zero(&rows[i][col])) else { continue };
            rows.swap(r, p);
            let inv = field.inv(&rows[r][col]).unwrap();
            rows[r] = rows[r].iter().map(|x| field.mul(x, &inv)).collect();
            for i in 0..rows.len() {
                if i != r && !field.is_zero(&rows[i][col]) {
                    let c = rows[i][col].clone();
                    rows[i] = (0..ncols).map(|j| field.sub(&rows[i][j], &field.mul(&c, &rows[r][j]))).collect();
                }
            }
            pivots.push(col);
            r += 1;
        }
        let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![field.zero(); ncols];
                v[fc] = field.one();
                for (k, &pc) in pivots.iter().enumerate() {
                    v[pc] = field.neg(&rows[k][fc]);
                }
                v
            })
            .collect()
    }

    /// The degree map at a random point, as the functional killing the
    /// image of multiplication by the system of parameters.
    #[test]
    fn numeric_degree_kills_the_parameter_ideal() {
        let f = Field::Prime(1_000_003);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for c in [SimplicialComplex::octahedron(), sigma(3), SimplicialComplex::stacked_sphere(3, 1).unwrap()] {
            let (d, n) = (c.d(), c.n());
            let o = orient(&c, f).unwrap();
            let entries: Vec<Vec<Scalar>> = (0..d).map(|_| (0..=n).map(|_| f.random(&mut rng)).collect()).collect();
            let map = DegreeMap::at_point(&c, &o, Numeric(f), entries.clone()).unwrap();
            let top = map.top_monomials().to_vec();
            let lower = face_monomials(&c, d as u32 - 1);
            let mut rows = Vec::new();
            for m in &lower {
                for row in &entries {
                    let mut r = vec![f.zero(); top.len()];
                    for v in 1..=n {
                        let prod = m.mul(&FaceMonomial::var(v));
                        if let Ok(k) = top.binary_search(&prod) {
                            r[k] = f.add(&r[k], &row[v]);
                        }
                    }
                    rows.push(r);
                }
            }
            let ker = kernel(f, rows, top.len());
            assert_eq!(ker.len(), 1);
            let k0 = top.binary_search(&FaceMonomial::squarefree(&c.facets()[0])).unwrap();
            let scale = f.div(&map.reduce(&top[k0]).unwrap(), &ker[0][k0]).unwrap();
            for (k, m) in top.iter().enumerate() {
                assert_eq!(map.reduce(m).unwrap(), f.mul(&scale, &ker[0][k]), "{m}");
                assert_eq!(map.kx(m).unwrap(), map.reduce(m).unwrap(), "{m}");
            }
        }
    }
}
