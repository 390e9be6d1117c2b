//! Closed forms for the degree map on the boundary of a simplex, on S^0 and
//! on the suspension of the boundary of a simplex, and the q-independence of
//! D_q on stacked spheres.

use serde_json::json;

use super::fixtures::{fixture, Fixture};
use super::properties::square_at_points;
use super::{decide, falsified, run_check, verified, within_budget, CheckOutcome, Recorder, Verdict, Witness};
use crate::artinian::{exact_ord_profile, select_basis, BasisOptions, GramDeterminant, Reduction};
use crate::degree::{DegreeMap, FaceMonomial, PowerDegree, Specializer, Target};
use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::RatFunc;

/// Which of `value = formula` and `value = -formula` holds, as +1 or -1.
fn sign_against(value: &RatFunc, formula: &RatFunc) -> Option<i8> {
    if value.sub(formula).is_zero() {
        Some(1)
    } else if value.add(formula).is_zero() {
        Some(-1)
    } else {
        None
    }
}

fn inverse_bracket(r: &Reduction, cols: &[usize]) -> Result<RatFunc> {
    let f = r.field();
    Ok(r.lsop().bracket_factored(f, cols).ok_or_else(|| Error::NotLsop(cols.to_vec()))?.inverse(f))
}

fn without(items: &[usize], x: usize) -> Vec<usize> {
    items.iter().copied().filter(|&v| v != x).collect()
}

/// Reproduces the closed forms attached to a fixture. Accepts
/// `simplex_boundary:d`, `sigma:d`, `s0` and `stacked:d:steps`.
pub fn check_fixture_formulas(name: &str, field: Field, seed: u64) -> Result<CheckOutcome> {
    let fx = fixture(name)?;
    let kind = name.split(':').next().unwrap_or_default();
    if !matches!(kind, "simplex_boundary" | "sigma" | "s0" | "stacked") {
        return Err(Error::UnknownFixture(name.to_string()));
    }
    run_check("fixture_formulas", name, |rec| match kind {
        "simplex_boundary" => simplex_boundary(rec, &fx, field, seed),
        "sigma" => sigma(rec, &fx, field, seed),
        "s0" => s0(rec, &fx, field, seed),
        _ => stacked(rec, &fx, field, seed),
    })
}

/// deg(l^(d-2q) x_1^(2q)) = e A^(d-2q) [V-1]^(2q) / prod_m [V-m] with
/// A = sum_m (-1)^(m-1) [V-m].
fn simplex_boundary(rec: &mut Recorder, fx: &Fixture, field: Field, seed: u64) -> Result<Verdict> {
    let r = fx.generic(field, seed)?;
    let d = r.d();
    if d < 2 {
        return Err(Error::InvalidDimension(d));
    }
    let map = r.symbolic()?;
    let all: Vec<usize> = (1..=d + 1).collect();
    let b = |m: usize| r.lsop().bracket(field, &without(&all, m));
    let mut a = RatFunc::zero(field);
    let mut den = RatFunc::one(field);
    for m in 1..=d + 1 {
        a = if m % 2 == 1 { a.add(&b(m)) } else { a.sub(&b(m)) };
        den = den.mul(&inverse_bracket(&r, &without(&all, m))?);
    }
    let mut signs = Vec::new();
    for q in 0..=d / 2 {
        let value = map.power_times((d - 2 * q) as u32, &FaceMonomial::from_pairs([(1, 2 * q as u32)]))?;
        within_budget(value.numer().len())?;
        let formula = a.pow((d - 2 * q) as i32)?.mul(&b(1).pow(2 * q as i32)?).mul(&den);
        match sign_against(&value, &formula) {
            Some(s) => signs.push(s),
            None => return falsified(Witness::note(format!("deg(l^{} x1^{}) differs from the closed form", d - 2 * q, 2 * q))),
        }
    }
    rec.put("epsilon", &signs);
    decide(signs.windows(2).all(|w| w[0] == w[1]), || Witness::note(format!("sign varies with q: {signs:?}")))
}

/// deg(l) = 1/a_12 - 1/a_11 with the sign convention on S^0.
fn s0(rec: &mut Recorder, fx: &Fixture, field: Field, seed: u64) -> Result<Verdict> {
    let r = fx.generic(field, seed)?;
    let value = PowerDegree.eval(&r.symbolic()?)?;
    let formula = inverse_bracket(&r, &[2])?.sub(&inverse_bracket(&r, &[1])?);
    rec.put("deg_l", value.to_string());
    decide(value == formula, || Witness::note(format!("deg(l) = {value}")))
}

/// For F = {1..d} and v in {d+1, d+2}:
/// deg(l^(d-j) x_v^j) = +-e A_v^(d-j) [F]^(j-1) / prod_m [F + v - m], with
/// opposite signs for the two suspension vertices; and deg(l^d) has
/// valuation 0 at every size-d non-face.
fn sigma(rec: &mut Recorder, fx: &Fixture, field: Field, seed: u64) -> Result<Verdict> {
    let r = fx.generic(field, seed)?;
    let d = r.d();
    let map = r.symbolic()?;
    let f: Vec<usize> = (1..=d).collect();
    let bf = r.lsop().bracket(field, &f);
    let mut eps = Vec::new();
    for v in [d + 1, d + 2] {
        let mut a = bf.clone();
        let mut den = RatFunc::one(field);
        for m in 1..=d {
            let mut s = without(&f, m);
            s.push(v);
            let b = r.lsop().bracket(field, &s);
            a = if (d + 1 + m) % 2 == 0 { a.add(&b) } else { a.sub(&b) };
            den = den.mul(&inverse_bracket(&r, &s)?);
        }
        let mut row = Vec::new();
        for j in 1..=d {
            let value = map.power_times((d - j) as u32, &FaceMonomial::from_pairs([(v, j as u32)]))?;
            let formula = a.pow((d - j) as i32)?.mul(&bf.pow(j as i32 - 1)?).mul(&den);
            match sign_against(&value, &formula) {
                Some(s) => row.push(s),
                None => return falsified(Witness::note(format!("deg(l^{} x{v}^{j}) differs from the closed form", d - j))),
            }
        }
        eps.push(row);
    }
    rec.put("signs", json!({ "x_d+1": eps[0], "x_d+2": eps[1] }));
    let uniform = |row: &[i8]| row.iter().all(|&s| s == row[0]);
    if !(uniform(&eps[0]) && uniform(&eps[1]) && eps[0][0] == -eps[1][0]) {
        return falsified(Witness::note(format!("signs are not e and -e: {eps:?}")));
    }
    let top = PowerDegree.eval(&map)?;
    let profile = exact_ord_profile(&r, &top)?;
    if let Some((s, v)) = profile.iter().find(|(s, v)| !r.complex().is_face(s) && **v != 0) {
        return falsified(Witness::at(s, *v, "deg(l^d) has nonzero valuation at a non-face"));
    }
    rec.put("nonface_valuations", "0");
    verified()
}

/// D_q / D_1 is a square for every 1 < q <= d/2 (checked at random points),
/// and D_1 has odd valuation exactly at the facets (read off along curves).
fn stacked(rec: &mut Recorder, fx: &Fixture, field: Field, seed: u64) -> Result<Verdict> {
    let r = fx.generic(field, seed)?;
    let d = r.d();
    let b1 = select_basis(&r, 1, &BasisOptions::default())?.monomials;
    let mut classes = Vec::new();
    for q in 2..=d / 2 {
        let bq = select_basis(&r, q, &BasisOptions::default())?.monomials;
        let ratio = Quotient(GramDeterminant { q, basis: bq }, GramDeterminant { q: 1, basis: b1.clone() });
        let bad = square_at_points(&r, &ratio, seed, 24)?;
        classes.push(json!({ "q": q, "square": bad.is_none() }));
        if let Some(k) = bad {
            return falsified(Witness::note(format!("D_{q}/D_1 is not a square at sample point {k}")));
        }
    }
    rec.put("d_q_over_d_1", classes);
    let g1 = GramDeterminant { q: 1, basis: b1 };
    let profile = Specializer::new(field, seed).ord_profile(r.complex(), r.orientation(), &g1)?;
    let odd = |s: &Vec<usize>, v: i64| (v.rem_euclid(2) == 1) != r.complex().is_facet(s);
    if let Some((s, v)) = profile.iter().find(|(s, v)| odd(s, **v)) {
        return falsified(Witness::at(s, *v, "D_1 valuation has the wrong parity"));
    }
    rec.put("d_1_parity", "odd exactly at facets");
    verified()
}

/// a / b for two targets.
pub(crate) struct Quotient<A, B>(pub A, pub B);

impl<A: Target, B: Target> Target for Quotient<A, B> {
    fn eval<D: Domain + Clone + Send + 'static>(&self, map: &DegreeMap<D>) -> Result<D::Elem> {
        map.domain().div(&self.0.eval(map)?, &self.1.eval(map)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms_hold() {
        for name in ["simplex_boundary:2", "simplex_boundary:3", "s0", "sigma:2", "sigma:3", "stacked:3:1"] {
            let o = check_fixture_formulas(name, Field::Rational, 1).unwrap();
            assert!(o.is_verified(), "{name}: {o:?}");
        }
    }

    #[test]
    fn unknown_fixture_is_an_error() {
        assert!(matches!(check_fixture_formulas("octahedron", Field::Rational, 1), Err(Error::UnknownFixture(_))));
    }
}
