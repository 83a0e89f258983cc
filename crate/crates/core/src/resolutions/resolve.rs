//! Free resolutions by iterated syzygies, truncated at a step cutoff.

use num_integer::Integer;
use serde::Serialize;

use super::carrier::{Carrier, Piece};
use crate::complexes::{minimise, ChainMap, FreeComplex};
use crate::error::{Error, Result};
use crate::grobner::module::{kernel, prune_generators};
use crate::grobner::ModulePresentation;
use crate::rings::{Elem, Matrix, RegularityClass, Ring};

/// The syzygy map repeats: `d_{onset + period} = d_onset`, so it repeats forever.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Periodicity {
    pub period: usize,
    pub onset: usize,
}

#[derive(Clone, Debug)]
pub enum Witness {
    /// The input piece was already a bounded free complex.
    Identity(ChainMap),
    /// `F^degree = R^generators` maps onto the module by the identity on generators.
    Augmentation { degree: i64, generators: usize },
}

#[derive(Clone, Debug)]
pub struct ResolutionResult {
    pub resolution: FreeComplex,
    /// One per carrier piece.
    pub witness: Vec<Witness>,
    pub cutoff: usize,
    /// Every piece terminated within the cutoff.
    pub complete: bool,
    /// First periodic piece, if any.
    pub periodicity: Option<Periodicity>,
    /// Degrees `>= reliable_from` agree with an untruncated resolution.
    pub reliable_from: Option<i64>,
}

/// Syzygy matrices `d_0 = relations, d_1, ...` of one module.
#[derive(Clone, Debug)]
pub(crate) struct ModuleResolution {
    pub generators: usize,
    pub maps: Vec<Matrix>,
    pub complete: bool,
    pub periodicity: Option<Periodicity>,
}

/// Scales each column so its first nonzero entry is monic (or positive over ℤ).
fn normalise_columns(ring: &Ring, m: &Matrix) -> Matrix {
    let mut out = m.clone();
    for j in 0..m.cols {
        let Some(first) = (0..m.rows).map(|i| m.get(i, j)).find(|e| !ring.is_zero(e)) else {
            continue;
        };
        let scale = match first {
            Elem::Int(v) if v.sign() == num_bigint::Sign::Minus => Some(ring.from_i64(-1)),
            Elem::Poly(p) => {
                let lead = p.lead().expect("nonzero").coeff.clone();
                let ctx = ring.poly_ctx().expect("polynomial ring");
                if num_traits::One::is_one(&lead) {
                    None
                } else {
                    let inv = ctx.field.inv(&lead).expect("field coefficient");
                    ring.from_poly(&ctx.constant(inv)).ok()
                }
            }
            Elem::Rat(r) => Some(Elem::Rat(r.recip())),
            _ => None,
        };
        if let Some(c) = scale {
            for i in 0..m.rows {
                out.set(i, j, ring.mul(&c, m.get(i, j)));
            }
        }
    }
    out
}

fn syzygy_step(ring: &Ring, m: &Matrix) -> Result<Matrix> {
    let k = kernel(ring, m)?;
    let k = prune_generators(ring, &k)?;
    Ok(normalise_columns(ring, &k))
}

pub(crate) fn resolve_module(
    ring: &Ring,
    p: &ModulePresentation,
    cutoff: usize,
) -> Result<ModuleResolution> {
    let p = minimise(ring, p)?;
    let mut cur = normalise_columns(ring, &p.relations);
    let mut maps: Vec<Matrix> = Vec::new();
    let mut complete = false;
    let mut periodicity = None;
    while maps.len() < cutoff {
        if cur.cols == 0 {
            complete = true;
            break;
        }
        if let Some(j) = maps.iter().position(|m| *m == cur) {
            periodicity = Some(Periodicity {
                period: maps.len() - j,
                onset: j,
            });
            // the syzygy step is deterministic, so the cycle continues verbatim
            let period = maps.len() - j;
            while maps.len() < cutoff {
                let next = maps[maps.len() - period].clone();
                maps.push(next);
            }
            break;
        }
        maps.push(cur.clone());
        cur = syzygy_step(ring, &cur)?;
    }
    if periodicity.is_none() && !complete && cur.cols == 0 {
        complete = true;
    }
    if periodicity.is_none() && !complete {
        if let Some(j) = maps.iter().position(|m| *m == cur) {
            periodicity = Some(Periodicity {
                period: maps.len() - j,
                onset: j,
            });
        }
    }
    Ok(ModuleResolution {
        generators: p.ambient_rank,
        maps,
        complete,
        periodicity,
    })
}

impl ModuleResolution {
    /// `F^{degree-k-1} --maps[k]--> F^{degree-k}`.
    pub fn complex(&self, ring: &Ring, degree: i64) -> Result<FreeComplex> {
        let len = self.maps.len() as i64;
        let mut ranks: Vec<usize> = self.maps.iter().rev().map(|m| m.cols).collect();
        ranks.push(self.generators);
        let diffs: Vec<Matrix> = self.maps.iter().rev().cloned().collect();
        FreeComplex::new(ring, degree - len, ranks, diffs)
    }
}

/// `dim + amplitude + 4` over regular rings, `8` otherwise.
pub fn default_cutoff(x: &Carrier) -> usize {
    match x.ring.regularity_class() {
        RegularityClass::Regular => (x.ring.krull_dimension().max(0) + x.amplitude() + 4) as usize,
        _ => 8,
    }
}

pub fn resolve(x: &Carrier, cutoff: i64) -> Result<ResolutionResult> {
    if cutoff < 0 {
        return Err(Error::Usage(format!(
            "cutoff must be nonnegative, got {cutoff}"
        )));
    }
    let cutoff = cutoff as usize;
    let ring = &x.ring;
    let mut total = FreeComplex::zero(ring);
    let mut witness = Vec::new();
    let mut complete = true;
    let mut periodicity = None;
    let mut reliable_from: Option<i64> = None;
    for piece in &x.pieces {
        match piece {
            Piece::Complex(c) => {
                total = total.direct_sum(c)?;
                witness.push(Witness::Identity(ChainMap::identity(c)));
            }
            Piece::Module {
                presentation,
                degree,
            } => {
                let r = resolve_module(ring, presentation, cutoff)?;
                let f = r.complex(ring, *degree)?;
                if !r.complete {
                    complete = false;
                    let bottom = degree - r.maps.len() as i64 + 1;
                    reliable_from = Some(reliable_from.map_or(bottom, |b| b.max(bottom)));
                }
                if periodicity.is_none() {
                    periodicity = r.periodicity;
                }
                witness.push(Witness::Augmentation {
                    degree: *degree,
                    generators: r.generators,
                });
                total = total.direct_sum(&f)?;
            }
        }
    }
    Ok(ResolutionResult {
        resolution: total,
        witness,
        cutoff,
        complete,
        periodicity,
        reliable_from,
    })
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    a.lcm(&b)
}
