//! Cohomology modules of free complexes and their invariants.

use std::collections::BTreeMap;

use serde::Serialize;

use super::complex::FreeComplex;
use crate::error::Result;
use crate::grobner::module::{self as gm, rref, ModulePresentation, PresentationStrings};
use crate::rings::principal;
use crate::rings::{Elem, Matrix, PrincipalKind, Ring};

/// Invariants of one nonzero cohomology module.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ModuleInvariants {
    /// Over a field.
    Vector { dim: usize },
    /// Over a principal ring: `R^free_rank ⊕ ⊕ R/(t)`.
    Principal {
        free_rank: usize,
        torsion: Vec<String>,
    },
    /// Everything else: a minimised presentation and its numerical shadow.
    General {
        presentation: PresentationStrings,
        krull_dim: i64,
        /// Length over the coefficient field, if finite.
        k_dim: Option<u64>,
        annihilator: Vec<String>,
    },
}

impl ModuleInvariants {
    /// Dimension over the residue field when the module is a vector space.
    pub fn vector_dim(&self) -> Option<usize> {
        match self {
            ModuleInvariants::Vector { dim } => Some(*dim),
            _ => None,
        }
    }
}

/// Nonzero cohomology, keyed by degree.
#[derive(Clone, Debug, Serialize)]
pub struct Homology {
    pub degrees: BTreeMap<i64, ModuleInvariants>,
    #[serde(skip)]
    pub presentations: BTreeMap<i64, ModulePresentation>,
}

impl Homology {
    pub fn is_zero(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn get(&self, n: i64) -> Option<&ModuleInvariants> {
        self.degrees.get(&n)
    }

    /// Sum of vector-space dimensions; `None` unless every module is a vector space.
    pub fn total_dim(&self) -> Option<usize> {
        self.degrees.values().map(|m| m.vector_dim()).sum()
    }
}

fn field_rank(ring: &Ring, m: &Matrix) -> usize {
    if m.rows == 0 || m.cols == 0 {
        return 0;
    }
    rref(ring, m).1.len()
}

/// Cheap unit test used for presentation pruning: nonzero constants and
/// genuine units of rings without Gröbner cost.
fn obvious_unit(ring: &Ring, e: &Elem) -> bool {
    match e {
        Elem::Poly(p) => !p.is_zero() && p.is_constant(),
        _ => ring.is_unit(e),
    }
}

/// Removes generators killed by a unit relation, then redundant relations.
pub fn minimise(ring: &Ring, p: &ModulePresentation) -> Result<ModulePresentation> {
    let mut rel = p.relations.clone();
    loop {
        let mut pivot = None;
        'search: for j in 0..rel.cols {
            for i in 0..rel.rows {
                if obvious_unit(ring, rel.get(i, j)) {
                    pivot = Some((i, j));
                    break 'search;
                }
            }
        }
        let Some((i, j)) = pivot else { break };
        let inv = ring.inverse(rel.get(i, j)).expect("unit pivot");
        let pc = rel.col(j);
        for k in 0..rel.cols {
            if k == j || ring.is_zero(rel.get(i, k)) {
                continue;
            }
            let c = ring.mul(rel.get(i, k), &inv);
            for (r, p) in pc.iter().enumerate() {
                let v = ring.sub(rel.get(r, k), &ring.mul(&c, p));
                rel.set(r, k, v);
            }
        }
        let rows: Vec<usize> = (0..rel.rows).filter(|&r| r != i).collect();
        let cols: Vec<usize> = (0..rel.cols).filter(|&k| k != j).collect();
        rel = rel.select_rows(&rows).select_cols(&cols);
    }
    let rel = gm::prune_generators(ring, &rel)?;
    Ok(ModulePresentation::new(rel.rows, rel))
}

/// Presentation of `H^n(X) = ker d^n / im d^{n-1}`, or `None` when it vanishes.
pub fn homology_module(x: &FreeComplex, n: i64) -> Result<Option<ModulePresentation>> {
    let ring = &x.ring;
    let rank = x.rank(n);
    if rank == 0 {
        return Ok(None);
    }
    let dn = x.d(n);
    let cycles = if dn.rows == 0 {
        Matrix::identity(ring, rank)
    } else {
        gm::kernel(ring, &dn)?
    };
    if cycles.cols == 0 {
        return Ok(None);
    }
    let bounds = x.d(n - 1);
    if gm::span_contains(ring, &bounds, &cycles)? {
        return Ok(None);
    }
    let cycles = gm::prune_generators(ring, &cycles)?;
    let p = gm::present_submodule(ring, &bounds, &cycles)?;
    Ok(Some(minimise(ring, &p)?))
}

fn principal_homology(
    x: &FreeComplex,
    n: i64,
) -> Result<Option<(ModuleInvariants, ModulePresentation)>> {
    let ring = &x.ring;
    let rank = x.rank(n);
    if rank == 0 {
        return Ok(None);
    }
    let rn = principal::rank(ring, &x.d(n))?;
    let s = principal::smith(ring, &x.d(n - 1))?;
    let free = rank - rn - s.rank;
    let torsion: Vec<Elem> = s.diag.into_iter().filter(|d| !ring.is_unit(d)).collect();
    if free == 0 && torsion.is_empty() {
        return Ok(None);
    }
    let k = torsion.len();
    let mut rel = Matrix::zero(ring, k + free, k);
    for (i, t) in torsion.iter().enumerate() {
        rel.set(i, i, t.clone());
    }
    let inv = ModuleInvariants::Principal {
        free_rank: free,
        torsion: torsion.iter().map(|t| ring.format(t)).collect(),
    };
    Ok(Some((inv, ModulePresentation::new(k + free, rel))))
}

/// Cohomology of `x` in every degree of its support.
pub fn homology(x: &FreeComplex) -> Result<Homology> {
    let ring = &x.ring;
    let mut degrees = BTreeMap::new();
    let mut presentations = BTreeMap::new();
    for n in x.degrees() {
        match ring.principal_kind() {
            Some(PrincipalKind::Field) => {
                let dim = x.rank(n) - field_rank(ring, &x.d(n)) - field_rank(ring, &x.d(n - 1));
                if dim > 0 {
                    degrees.insert(n, ModuleInvariants::Vector { dim });
                    presentations.insert(n, ModulePresentation::free(ring, dim));
                }
            }
            Some(_) => {
                if let Some((inv, p)) = principal_homology(x, n)? {
                    degrees.insert(n, inv);
                    presentations.insert(n, p);
                }
            }
            None => {
                if let Some(p) = homology_module(x, n)? {
                    let ann = gm::annihilator(ring, &p)?;
                    let inv = ModuleInvariants::General {
                        presentation: p.to_strings(ring),
                        krull_dim: gm::ideal_quotient_dimension(ring, &ann)?,
                        k_dim: gm::k_dimension(ring, &p),
                        annihilator: ann.iter().map(|a| ring.format(a)).collect(),
                    };
                    degrees.insert(n, inv);
                    presentations.insert(n, p);
                }
            }
        }
    }
    Ok(Homology {
        degrees,
        presentations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::complex::koszul;

    #[test]
    fn integers_multiplication_by_six() {
        let z = Ring::integers();
        let x = FreeComplex::two_term(&z, -1, Matrix::from_rows(vec![vec![z.from_i64(6)]], 1));
        let h = homology(&x).unwrap();
        assert_eq!(h.degrees.len(), 1);
        assert_eq!(
            h.get(0),
            Some(&ModuleInvariants::Principal {
                free_rank: 0,
                torsion: vec!["6".into()]
            })
        );
    }

    #[test]
    fn koszul_on_regular_sequence_is_a_resolution() {
        let a = Ring::polynomial(0, &["x", "y"]).unwrap();
        let e: Vec<Elem> = ["x", "y"].iter().map(|s| a.parse(s).unwrap()).collect();
        let h = homology(&koszul(&a, &e)).unwrap();
        assert_eq!(h.degrees.keys().copied().collect::<Vec<_>>(), vec![0]);
        let ModuleInvariants::General {
            k_dim, krull_dim, ..
        } = h.get(0).unwrap()
        else {
            panic!("expected general invariants");
        };
        assert_eq!((*k_dim, *krull_dim), (Some(1), 0));
    }

    #[test]
    fn koszul_on_zero_divisor_has_higher_homology() {
        let a = Ring::polynomial(0, &["x", "y"])
            .unwrap()
            .quotient(&["x*y"])
            .unwrap();
        let e = vec![a.parse("x").unwrap()];
        let h = homology(&koszul(&a, &e)).unwrap();
        // H^{-1} = ann(x) = (y), H^0 = A/(x)
        assert_eq!(h.degrees.keys().copied().collect::<Vec<_>>(), vec![-1, 0]);
        let ModuleInvariants::General { annihilator, .. } = h.get(-1).unwrap() else {
            panic!()
        };
        assert_eq!(annihilator, &vec!["x".to_string()]);
    }

    #[test]
    fn field_dimensions() {
        let q = Ring::rationals();
        let m = Matrix::from_rows(
            vec![
                vec![q.from_i64(1), q.from_i64(2)],
                vec![q.from_i64(2), q.from_i64(4)],
            ],
            2,
        );
        let h = homology(&FreeComplex::two_term(&q, 0, m)).unwrap();
        assert_eq!(h.get(0).and_then(|m| m.vector_dim()), Some(1));
        assert_eq!(h.get(1).and_then(|m| m.vector_dim()), Some(1));
    }
}
