use crate::artinian::Reduction;
use crate::complex::{orient, Orientation, SimplicialComplex};
use crate::degree::Lsop;
use crate::error::{Error, Result};
use crate::field::Field;

/// A named complex, optionally with orientation signs that replace the
/// ones found by [`orient`].
#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub complex: SimplicialComplex,
    pub signs: Option<Vec<i8>>,
}

impl Fixture {
    pub fn orientation(&self, field: Field) -> Result<Orientation> {
        match &self.signs {
            Some(s) => Ok(Orientation::from_signs(s.clone(), field.characteristic() == 2)),
            None => orient(&self.complex, field),
        }
    }

    pub fn reduction(&self, lsop: Lsop, field: Field, seed: u64) -> Result<Reduction> {
        Reduction::with_orientation(&self.complex, self.orientation(field)?, lsop, field, seed)
    }

    pub fn generic(&self, field: Field, seed: u64) -> Result<Reduction> {
        let c = &self.complex;
        self.reduction(Lsop::generic(c.d(), c.n()), field, seed)
    }
}

/// Names accepted by [`fixture`], with their parameters spelled out.
pub fn fixture_names() -> Vec<&'static str> {
    vec![
        "simplex_boundary:<d>",
        "sigma:<d>",
        "s0",
        "octahedron",
        "stacked:<d>:<steps>",
        "cycle:<m>",
        "pentagon",
        "rp2",
        "rp2_suspension",
        "corrupted_octahedron",
    ]
}

fn arg(name: &str, parts: &[&str], i: usize) -> Result<usize> {
    parts.get(i).and_then(|p| p.parse().ok()).ok_or_else(|| Error::UnknownFixture(name.to_string()))
}

/// Builds a fixture from its name, e.g. `sigma:3` or `stacked:3:2`.
pub fn fixture(name: &str) -> Result<Fixture> {
    let parts: Vec<&str> = name.trim().split(':').collect();
    let exact = |n: usize| if parts.len() == n { Ok(()) } else { Err(Error::UnknownFixture(name.to_string())) };
    let complex = match parts[0] {
        "simplex_boundary" => {
            exact(2)?;
            SimplicialComplex::boundary_simplex(arg(name, &parts, 1)?)?
        }
        "sigma" => {
            exact(2)?;
            let d = arg(name, &parts, 1)?;
            if d < 2 {
                return Err(Error::InvalidDimension(d));
            }
            SimplicialComplex::boundary_simplex(d - 1)?.suspension()?
        }
        "s0" => {
            exact(1)?;
            SimplicialComplex::boundary_simplex(1)?
        }
        "octahedron" => {
            exact(1)?;
            SimplicialComplex::octahedron()
        }
        "stacked" => {
            exact(3)?;
            SimplicialComplex::stacked_sphere(arg(name, &parts, 1)?, arg(name, &parts, 2)?)?
        }
        "cycle" => {
            exact(2)?;
            SimplicialComplex::cycle(arg(name, &parts, 1)?)?
        }
        "pentagon" => {
            exact(1)?;
            SimplicialComplex::cycle(5)?
        }
        "rp2" => {
            exact(1)?;
            SimplicialComplex::rp2_six_vertex()
        }
        "rp2_suspension" => {
            exact(1)?;
            SimplicialComplex::rp2_six_vertex().suspension()?
        }
        "corrupted_octahedron" => {
            exact(1)?;
            let c = SimplicialComplex::octahedron();
            let signs = orient(&c, Field::Rational)?.with_flipped_facet(0).signs().to_vec();
            return Ok(Fixture { name: name.to_string(), complex: c, signs: Some(signs) });
        }
        _ => return Err(Error::UnknownFixture(name.to_string())),
    };
    Ok(Fixture { name: name.to_string(), complex, signs: None })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_parse() {
        assert_eq!(fixture("sigma:3").unwrap().complex.facets().len(), 6);
        assert_eq!(fixture("stacked:3:2").unwrap().complex.n(), 6);
        assert_eq!(fixture("pentagon").unwrap().complex, fixture("cycle:5").unwrap().complex);
        assert_eq!(fixture("rp2_suspension").unwrap().complex.d(), 4);
        for bad in ["sigma", "sigma:x", "torus", "octahedron:2"] {
            assert!(matches!(fixture(bad), Err(Error::UnknownFixture(_))), "{bad}");
        }
    }

    #[test]
    fn corrupted_octahedron_is_incompatible() {
        let f = fixture("corrupted_octahedron").unwrap();
        assert!(!f.orientation(Field::Rational).unwrap().is_compatible(&f.complex));
        assert!(fixture("octahedron").unwrap().orientation(Field::Rational).unwrap().is_compatible(&f.complex));
    }
}
