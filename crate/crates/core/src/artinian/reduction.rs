use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::complex::{orient, Orientation, SimplicialComplex};
use crate::degree::{specialization_field, DegreeMap, Lsop};
use crate::domain::{Numeric, Symbolic};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

/// Draws tried before a random point is declared unusable.
pub const MAX_DRAWS: u64 = 8;

/// An artinian reduction K[c]/(mu): a complex, an orientation, a system of
/// parameters and the coefficient field, plus the seed for random points.
#[derive(Clone, Debug)]
pub struct Reduction {
    complex: SimplicialComplex,
    orientation: Orientation,
    lsop: Lsop,
    field: Field,
    seed: u64,
}

impl Reduction {
    pub fn new(c: &SimplicialComplex, lsop: Lsop, field: Field, seed: u64) -> Result<Reduction> {
        let o = orient(c, field)?;
        Reduction::with_orientation(c, o, lsop, field, seed)
    }

    pub fn generic(c: &SimplicialComplex, field: Field, seed: u64) -> Result<Reduction> {
        Reduction::new(c, Lsop::generic(c.d(), c.n()), field, seed)
    }

    pub fn with_orientation(c: &SimplicialComplex, o: Orientation, lsop: Lsop, field: Field, seed: u64) -> Result<Reduction> {
        if o.signs().len() != c.facets().len() {
            return Err(Error::InvalidDimension(o.signs().len()));
        }
        lsop.check(c, field)?;
        Ok(Reduction { complex: c.clone(), orientation: o, lsop, field, seed })
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn orientation(&self) -> &Orientation {
        &self.orientation
    }

    pub fn lsop(&self) -> &Lsop {
        &self.lsop
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn d(&self) -> usize {
        self.complex.d()
    }

    /// The field random points live in. Given scalar coefficients are kept
    /// (reduced mod p over Q); indeterminates may be drawn from an extension.
    pub fn point_field(&self) -> Field {
        match self.lsop {
            Lsop::Scalars { .. } => self.field.evaluation_field(),
            _ => specialization_field(self.field),
        }
    }

    /// Coefficients mu_{i,j} (column 0 included) with every indeterminate
    /// replaced by a random value; draw `k` of the seeded sequence.
    pub fn point(&self, k: u64) -> Result<Vec<Vec<Scalar>>> {
        let f = self.point_field();
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed.wrapping_mul(0x2545_f491_4f6c_dd1d).wrapping_add(k));
        let (d, n) = (self.lsop.d(), self.complex.n());
        let mut out = Vec::with_capacity(d);
        for i in 1..=d {
            let mut row = Vec::with_capacity(n + 1);
            for j in 0..=n {
                let v = if j == 0 || self.lsop.is_variable(i, j) {
                    f.random(&mut rng)
                } else {
                    match &self.lsop {
                        Lsop::Scalars { rows, .. } => self.field.reduce(&rows[i - 1][j - 1]).ok_or(Error::DenominatorVanishes)?,
                        _ => f.zero(),
                    }
                };
                row.push(v);
            }
            out.push(row);
        }
        Ok(out)
    }

    /// The degree map at draw `k`.
    pub fn numeric_at(&self, k: u64) -> Result<DegreeMap<Numeric>> {
        DegreeMap::at_point(&self.complex, &self.orientation, Numeric(self.point_field()), self.point(k)?)
    }

    /// The degree map at the first draw where every facet bracket survives.
    pub fn numeric(&self) -> Result<(DegreeMap<Numeric>, u64)> {
        let mut last = Error::Unsupported("no draws".into());
        for k in 0..MAX_DRAWS {
            match self.numeric_at(k) {
                Ok(m) => return Ok((m, k)),
                Err(e @ Error::NotLsop(_)) => last = e,
                Err(e) => return Err(e),
            }
        }
        Err(last)
    }

    pub fn symbolic(&self) -> Result<DegreeMap<Symbolic>> {
        DegreeMap::symbolic(&self.complex, &self.orientation, &self.lsop, Symbolic(self.field))
    }

    /// Whether coefficients are given scalars, so that numeric answers are exact.
    pub fn is_concrete(&self) -> bool {
        matches!(self.lsop, Lsop::Scalars { .. }) && self.field.characteristic() != 0
    }
}
