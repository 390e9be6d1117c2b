use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use hodgeform::artinian::{hilbert_report, Reduction};
use hodgeform::complex::orient;
use hodgeform::degree::{random_point, DegreeMap, FaceMonomial, PowerDegree, Target};
use hodgeform::domain::Numeric;
use hodgeform::poly::Monomial;
use hodgeform::verify::{check_degree_normalization, check_ord_profile, fixture, Expectation, ProfileTarget};
use hodgeform::{Field, RatFunc, SimplicialComplex, SparsePoly, VarId};

const P: u64 = 1_000_003;

fn fields() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::prime(P).unwrap()), Just(Field::prime(7).unwrap()), Just(Field::binary(10).unwrap())]
}

/// A small polynomial in a_(1,1..3), a_(2,1..3) with integer coefficients.
fn poly(field: Field) -> impl Strategy<Value = SparsePoly> {
    let term = ((1usize..=2, 1usize..=3, 0u16..3), (1usize..=2, 1usize..=3, 0u16..3), -5i64..=5);
    prop::collection::vec(term, 1..5).prop_map(move |terms| {
        SparsePoly::from_terms(
            field,
            terms.into_iter().map(|((r1, c1, e1), (r2, c2, e2), k)| {
                (Monomial::from_pairs([(VarId::new(r1, c1), e1), (VarId::new(r2, c2), e2)]), field.from_i64(k))
            }),
        )
    })
}

fn nonzero_poly(field: Field) -> impl Strategy<Value = SparsePoly> {
    poly(field).prop_filter("nonzero", |p| !p.is_zero())
}

fn spheres() -> impl Strategy<Value = &'static str> {
    prop_oneof![Just("sigma:2"), Just("sigma:3"), Just("octahedron"), Just("simplex_boundary:3"), Just("pentagon")]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(f in fields(), a in any::<i64>(), b in any::<i64>(), c in any::<i64>()) {
        let (a, b, c) = (f.from_i64(a), f.from_i64(b), f.from_i64(c));
        prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
        prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
        if !f.is_zero(&a) {
            prop_assert!(f.is_one(&f.mul(&a, &f.inv(&a).unwrap())));
        }
        prop_assert_eq!(f.parse_scalar(&f.format(&a)).unwrap(), a);
    }

    #[test]
    fn squares_are_squares(f in fields(), a in any::<i64>()) {
        let a = f.from_i64(a);
        let s = f.mul(&a, &a);
        prop_assert!(f.is_square(&s));
        if let Some(r) = f.sqrt(&s) {
            prop_assert_eq!(f.mul(&r, &r), s);
        }
    }

    #[test]
    fn ratfunc_division_inverts_multiplication(a in poly(Field::prime(P).unwrap()), b in nonzero_poly(Field::prime(P).unwrap())) {
        let (a, b) = (RatFunc::from_poly(a), RatFunc::from_poly(b));
        prop_assert_eq!(a.mul(&b).div(&b).unwrap(), a.clone());
        prop_assert!(a.add(&b).sub(&b).sub(&a).is_zero());
    }

    #[test]
    fn valuation_is_additive(a in nonzero_poly(Field::Rational), b in nonzero_poly(Field::Rational), k in 0i32..3) {
        let f = Field::Rational;
        let p = SparsePoly::var(f, VarId::new(1, 1)).sub(&SparsePoly::var(f, VarId::new(2, 2)));
        let (a, b) = (RatFunc::from_poly(a), RatFunc::from_poly(b));
        let pk = RatFunc::from_poly(p.clone()).pow(k).unwrap();
        let ab = a.mul(&b).mul(&pk);
        prop_assert_eq!(ab.ord_at(&p).unwrap(), a.ord_at(&p).unwrap() + b.ord_at(&p).unwrap() + k as i64);
    }

    #[test]
    fn squares_have_trivial_class(a in nonzero_poly(Field::Rational), c in 1i64..6) {
        let f = Field::Rational;
        let a = RatFunc::from_poly(a);
        let s = a.mul(&a).scale(&f.from_i64(c * c));
        prop_assert_eq!(s.square_class_mod_scalars().unwrap().map(|k| f.square_class(&k)), Some(f.square_class(&f.one())));
    }

    #[test]
    fn face_monomials_round_trip(pairs in prop::collection::btree_map(1usize..9, 1u32..4, 1..4)) {
        let m = FaceMonomial::from_pairs(pairs.clone());
        let parsed: FaceMonomial = m.to_string().parse().unwrap();
        prop_assert_eq!(&parsed, &m);
        let y = FaceMonomial::from_pairs(pairs.into_iter().take(1));
        prop_assert_eq!(m.div(&y).unwrap().mul(&y), m);
    }

    #[test]
    fn flipping_a_facet_twice_is_the_identity(name in spheres(), k in 0usize..8) {
        let c = fixture(name).unwrap().complex;
        let o = orient(&c, Field::Rational).unwrap();
        let k = k % c.facets().len();
        prop_assert!(o.is_compatible(&c));
        prop_assert!(o.flipped().is_compatible(&c));
        prop_assert!(!o.with_flipped_facet(k).is_compatible(&c));
        let back = o.with_flipped_facet(k).with_flipped_facet(k);
        prop_assert_eq!(back.signs(), o.signs());
    }

    #[test]
    fn degree_methods_agree_at_points(name in spheres(), seed in any::<u64>()) {
        let f = Field::prime(P).unwrap();
        let c = fixture(name).unwrap().complex;
        let o = orient(&c, f).unwrap();
        let point = random_point(f, c.d(), c.n(), &mut ChaCha8Rng::seed_from_u64(seed));
        let Ok(map) = DegreeMap::at_point(&c, &o, Numeric(f), point.clone()) else { return Ok(()) };
        for m in map.top_monomials() {
            prop_assert_eq!(map.reduce(m).unwrap(), map.kx(m).unwrap());
        }
        let flipped = DegreeMap::at_point(&c, &o.flipped(), Numeric(f), point).unwrap();
        let top = PowerDegree.eval(&map).unwrap();
        prop_assert!(!f.is_zero(&top));
        prop_assert_eq!(PowerDegree.eval(&flipped).unwrap(), f.neg(&top));
    }

    #[test]
    fn stacked_spheres_satisfy_dehn_sommerville(d in 2usize..5, steps in 0usize..4) {
        let c = SimplicialComplex::stacked_sphere(d, steps).unwrap();
        let h = c.h_vector().unwrap();
        let mut rev = h.clone();
        rev.reverse();
        prop_assert_eq!(&h, &rev);
        let r = Reduction::generic(&c, Field::prime(P).unwrap(), 1).unwrap();
        let report = hilbert_report(&r).unwrap();
        prop_assert_eq!(report.hbar.iter().map(|&x| x as i64).collect::<Vec<_>>(), h);
    }
}

#[test]
fn checks_are_deterministic() {
    let run = || {
        let a = check_degree_normalization(&fixture("sigma:3").unwrap(), Field::Rational, 5).unwrap();
        let b = check_ord_profile(
            &fixture("octahedron").unwrap(),
            Field::Rational,
            5,
            ProfileTarget::Gram { q: 1 },
            Expectation::Parity { facet: 1, other: 0 },
            false,
        )
        .unwrap();
        [a, b]
            .into_iter()
            .map(|mut o| {
                o.runtime_ms = 0;
                serde_json::to_string(&o).unwrap()
            })
            .collect::<Vec<_>>()
    };
    assert_eq!(run(), run());
}
