use hodgeform::complex::orient;
use hodgeform::degree::{DegreeMap, Lsop};
use hodgeform::domain::Symbolic;
use hodgeform::{Field, SimplicialComplex};

fn check_dual(c: &SimplicialComplex) {
    let f = Field::Rational;
    let o = orient(c, f).unwrap();
    let map = DegreeMap::symbolic(c, &o, &Lsop::generic(c.d(), c.n()), Symbolic(f)).unwrap();
    for m in map.top_monomials() {
        let kx = map.kx(m).unwrap();
        let red = map.reduce(m).unwrap();
        assert!(kx.vars().iter().all(|v| !v.is_extended()), "{m}");
        assert_eq!(kx, red, "{m}");
    }
}

#[test]
fn dual_methods_on_the_three_dimensional_suspension() {
    check_dual(&SimplicialComplex::boundary_simplex(2).unwrap().suspension().unwrap());
}

#[test]
fn dual_methods_on_the_octahedron() {
    check_dual(&SimplicialComplex::octahedron());
}
