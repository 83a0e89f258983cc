use crate::error::Result;
use crate::rings::{residue_ring, Elem, Ring};

/// Generators of a prime ideal, trusted to be prime, with the residue domain `A/p`.
#[derive(Clone, Debug)]
pub struct PrimeIdeal {
    ring: Ring,
    generators: Vec<Elem>,
    residue: Ring,
}

impl PrimeIdeal {
    pub fn new(ring: &Ring, generators: Vec<Elem>) -> Result<PrimeIdeal> {
        let residue = residue_ring(ring, &generators)?;
        Ok(PrimeIdeal {
            ring: ring.clone(),
            generators,
            residue,
        })
    }

    pub fn parse<S: AsRef<str>>(ring: &Ring, gens: &[S]) -> Result<PrimeIdeal> {
        let elems = gens
            .iter()
            .map(|g| ring.parse(g.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        PrimeIdeal::new(ring, elems)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    /// `A/p`; its fraction field is `k(p)`.
    pub fn residue(&self) -> &Ring {
        &self.residue
    }

    /// `dim A - dim A/p`, which is the height for the rings of the tower.
    pub fn height(&self) -> i64 {
        self.ring.krull_dimension() - self.residue.krull_dimension()
    }

    pub fn format(&self) -> String {
        let gens: Vec<String> = self
            .generators
            .iter()
            .filter(|g| !self.ring.is_zero(g))
            .map(|g| self.ring.format(g))
            .collect();
        if gens.is_empty() {
            "(0)".into()
        } else {
            format!("({})", gens.join(", "))
        }
    }

    pub fn same_as(&self, other: &PrimeIdeal) -> bool {
        self.ring == other.ring && self.residue == other.residue
    }
}

/// ℤ at (5), ℚ[x] at (x), ℚ[x,y] at (x) and at (x,y), ℚ[x]/(x²) at (x).
pub fn golden_instances() -> Vec<PrimeIdeal> {
    let z = Ring::integers();
    let qx = Ring::polynomial(0, &["x"]).expect("valid ring");
    let qxy = Ring::polynomial(0, &["x", "y"]).expect("valid ring");
    let dual = qx.quotient(&["x^2"]).expect("valid ring");
    [
        (z, vec!["5"]),
        (qx, vec!["x"]),
        (qxy.clone(), vec!["x"]),
        (qxy, vec!["x", "y"]),
        (dual, vec!["x"]),
    ]
    .into_iter()
    .map(|(r, g)| PrimeIdeal::parse(&r, &g).expect("golden primes parse"))
    .collect()
}
