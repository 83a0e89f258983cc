//! Cohomology of `Hom(pM, A) ⊗ Hom(pN, A)` over a hypersurface, for truncated
//! projective resolutions `pM`, `pN`.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::complexes::{homology_module, FreeComplex};
use crate::error::{Error, Result};
use crate::grobner::module::{k_dimension, standard_monomials};
use crate::grobner::ModulePresentation;
use crate::resolutions::{resolve, Carrier, Periodicity};
use crate::rings::field::BaseField;
use crate::rings::{generic_rank, Elem, Matrix, RegularityClass, Ring};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KProjReport {
    pub cutoff: usize,
    /// Length over the coefficient field of `H^i`, for `0 <= i <= cutoff`.
    pub ranks: BTreeMap<i64, u64>,
    /// Repeating syzygies of `M`, when found.
    pub periodicity: Option<Periodicity>,
    /// The resolution of `M` terminated, so the table is bounded.
    pub m_resolution_finite: bool,
    pub n_resolution_finite: bool,
}

fn dual_resolution(
    ring: &Ring,
    m: &ModulePresentation,
    length: i64,
) -> Result<(FreeComplex, bool, Option<Periodicity>)> {
    let r = resolve(&Carrier::module(ring, m.clone(), 0), length)?;
    Ok((
        r.resolution.hom(&FreeComplex::unit(ring))?,
        r.complete,
        r.periodicity,
    ))
}

/// A finite-dimensional ring as an algebra over its coefficient field.
struct Linear {
    field: Ring,
    basis: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
}

impl Linear {
    fn new(ring: &Ring) -> Option<Linear> {
        let basis = standard_monomials(ring)?;
        let ctx = ring.poly_ctx()?;
        let field = match ctx.field {
            BaseField::Rationals => Ring::rationals(),
            BaseField::Prime(p) => Ring::prime_field(p).ok()?,
        };
        let index = basis
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, e)| (e, i))
            .collect();
        Some(Linear {
            field,
            basis,
            index,
        })
    }

    /// `m` with each entry replaced by its multiplication matrix on the basis.
    fn expand(&self, ring: &Ring, m: &Matrix) -> Result<Matrix> {
        let ctx = ring
            .poly_ctx()
            .expect("finite-dimensional rings are polynomial quotients");
        let e = self.basis.len();
        let mut out = Matrix::zero(&self.field, m.rows * e, m.cols * e);
        let one = ctx.field.one();
        for i in 0..m.rows {
            for j in 0..m.cols {
                let Some(a) = ring.lift(m.get(i, j)) else {
                    continue;
                };
                if a.is_zero() {
                    continue;
                }
                for (t, b) in self.basis.iter().enumerate() {
                    let prod = ring.from_poly(&ctx.mul_term(b, &one, &a))?;
                    let prod = ring.lift(&prod).expect("polynomial");
                    for term in &prod.terms {
                        let s = self.index[&term.exps];
                        let c = match ctx.field {
                            BaseField::Rationals => Elem::Rat(term.coeff.clone()),
                            BaseField::Prime(_) => Elem::Int(term.coeff.numer().clone()),
                        };
                        out.set(i * e + s, j * e + t, c);
                    }
                }
            }
        }
        Ok(out)
    }

    /// `dim_k H^n = dim X^n - rank d^n - rank d^{n-1}`.
    fn homology_dim(&self, ring: &Ring, x: &FreeComplex, n: i64) -> Result<u64> {
        let e = self.basis.len();
        let r = |m: Matrix| -> Result<usize> { generic_rank(&self.field, &self.expand(ring, &m)?) };
        Ok((x.rank(n) * e - r(x.d(n))? - r(x.d(n - 1))?) as u64)
    }
}

pub fn kproj_demo(
    ring: &Ring,
    m: &ModulePresentation,
    n: &ModulePresentation,
    cutoff: usize,
) -> Result<KProjReport> {
    if ring.regularity_class() != RegularityClass::Hypersurface {
        return Err(Error::UnsupportedRing(format!(
            "kproj_demo needs a hypersurface, got {}",
            ring.name()
        )));
    }
    // one extra step keeps the truncation artefact above degree `cutoff`
    let length = cutoff as i64 + 1;
    let (pm, m_finite, periodicity) = dual_resolution(ring, m, length)?;
    let (pn, n_finite, _) = dual_resolution(ring, n, length)?;
    let t = pm.tensor(&pn)?;
    let linear = Linear::new(ring);
    let mut ranks = BTreeMap::new();
    for i in 0..=cutoff as i64 {
        let dim = match &linear {
            Some(l) => l.homology_dim(ring, &t, i)?,
            None => match homology_module(&t, i)? {
                None => 0,
                Some(h) => k_dimension(ring, &h).ok_or_else(|| {
                    Error::Arithmetic(format!(
                        "H^{i} does not have finite length over the coefficient field"
                    ))
                })?,
            },
        };
        ranks.insert(i, dim);
    }
    Ok(KProjReport {
        cutoff,
        ranks,
        periodicity,
        m_resolution_finite: m_finite,
        n_resolution_finite: n_finite,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn residue_field(a: &Ring) -> ModulePresentation {
        ModulePresentation::cyclic(&[a.parse("x").unwrap()])
    }

    #[test]
    fn dual_numbers_give_rank_one_everywhere() {
        let a = Ring::polynomial(0, &["x"])
            .unwrap()
            .quotient(&["x^2"])
            .unwrap();
        let k = residue_field(&a);
        let r = kproj_demo(&a, &k, &k, 8).unwrap();
        assert!(r.ranks.values().all(|v| *v == 1), "{:?}", r.ranks);
        assert_eq!(r.periodicity.map(|p| p.period), Some(1));
    }

    #[test]
    fn free_modules_give_a_bounded_table() {
        let a = Ring::polynomial(0, &["x"])
            .unwrap()
            .quotient(&["x^2"])
            .unwrap();
        let free = ModulePresentation::free(&a, 1);
        let r = kproj_demo(&a, &free, &free, 6).unwrap();
        assert!(r.m_resolution_finite);
        // Hom(A, A) ⊗ Hom(A, A) = A, of length 2, in degree 0 only
        assert_eq!(r.ranks[&0], 2);
        assert!(r.ranks.iter().all(|(d, v)| *d == 0 || *v == 0));
    }

    #[test]
    fn cubic_truncation_is_nonzero_in_every_degree() {
        let a = Ring::polynomial(0, &["x"])
            .unwrap()
            .quotient(&["x^3"])
            .unwrap();
        let k = residue_field(&a);
        let r = kproj_demo(&a, &k, &k, 8).unwrap();
        assert!(r.ranks.values().all(|v| *v > 0), "{:?}", r.ranks);
    }

    #[test]
    fn linear_and_groebner_dimensions_agree() {
        let a = Ring::polynomial(0, &["x"])
            .unwrap()
            .quotient(&["x^3"])
            .unwrap();
        let lin = Linear::new(&a).unwrap();
        assert_eq!(lin.basis.len(), 3);
        let k = residue_field(&a);
        let (pm, _, _) = dual_resolution(&a, &k, 5).unwrap();
        let t = pm.tensor(&pm).unwrap();
        for i in 0..=4 {
            let groebner = homology_module(&t, i)
                .unwrap()
                .map_or(0, |h| k_dimension(&a, &h).unwrap());
            assert_eq!(lin.homology_dim(&a, &t, i).unwrap(), groebner, "degree {i}");
        }
    }

    #[test]
    fn regular_rings_are_rejected() {
        let a = Ring::polynomial(0, &["x"]).unwrap();
        assert!(kproj_demo(&a, &residue_field(&a), &residue_field(&a), 3).is_err());
    }
}
