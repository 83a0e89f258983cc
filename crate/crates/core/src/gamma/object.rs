//! Objects `RΓ_p(Y_p)` of the p-local p-torsion category, represented by carriers `Y`.

use serde::Serialize;

use super::prime::PrimeIdeal;
use crate::complexes::{homology, FreeComplex};
use crate::error::{Error, Result};
use crate::grobner::module::{annihilator, ideal_contains_all, ideal_saturation};
use crate::grobner::ModulePresentation;
use crate::resolutions::{
    default_cutoff, finiteness_decision, resolve, BettiDecision, BettiTable, Carrier, Piece,
};
use crate::rings::principal;
use crate::rings::Ring;

#[derive(Clone, Debug)]
pub struct GammaObject {
    pub carrier: Carrier,
    pub prime: PrimeIdeal,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Dualisability {
    Dualisable {
        total_betti: usize,
        table: BettiTable,
    },
    NotDualisable {
        period: usize,
        onset: usize,
    },
    Unknown {
        cutoff: usize,
    },
}

impl Dualisability {
    pub fn is_dualisable(&self) -> bool {
        matches!(self, Dualisability::Dualisable { .. })
    }
}

impl GammaObject {
    pub fn new(carrier: Carrier, prime: &PrimeIdeal) -> Result<GammaObject> {
        if carrier.ring != *prime.ring() {
            return Err(Error::Usage(
                "carrier and prime live over different rings".into(),
            ));
        }
        Ok(GammaObject {
            carrier,
            prime: prime.clone(),
        })
    }

    pub fn from_complex(x: FreeComplex, prime: &PrimeIdeal) -> Result<GammaObject> {
        GammaObject::new(Carrier::complex(x), prime)
    }

    pub fn ring(&self) -> &Ring {
        &self.carrier.ring
    }

    pub fn shift(&self, s: i64) -> GammaObject {
        GammaObject {
            carrier: self.carrier.shift(s),
            prime: self.prime.clone(),
        }
    }

    pub fn direct_sum(&self, other: &GammaObject) -> Result<GammaObject> {
        check_prime(self, other)?;
        GammaObject::new(self.carrier.direct_sum(&other.carrier)?, &self.prime)
    }

    pub fn default_cutoff(&self) -> usize {
        default_cutoff(&self.carrier)
    }

    pub fn betti(&self, cutoff: Option<i64>) -> Result<BettiDecision> {
        finiteness_decision(&self.carrier, &self.prime, cutoff)
    }

    /// The carrier as a bounded free complex, resolving module pieces when
    /// their resolutions terminate.
    pub fn perfect_model(&self, cutoff: Option<i64>) -> Result<Option<FreeComplex>> {
        if let Some(x) = self.carrier.as_complex() {
            return Ok(Some(x));
        }
        let c = cutoff.unwrap_or(self.default_cutoff() as i64);
        let r = resolve(&self.carrier, c)?;
        Ok(r.complete.then_some(r.resolution))
    }
}

fn check_prime(a: &GammaObject, b: &GammaObject) -> Result<()> {
    if !a.prime.same_as(&b.prime) {
        return Err(Error::Usage(format!(
            "objects at different primes {} and {}",
            a.prime.format(),
            b.prime.format()
        )));
    }
    Ok(())
}

/// `RΓ_p(A_p)`, carried by `A` in degree 0.
pub fn unit(prime: &PrimeIdeal) -> GammaObject {
    GammaObject {
        carrier: Carrier::unit(prime.ring()),
        prime: prime.clone(),
    }
}

/// Tensor of carriers; module pieces are replaced by their finite resolutions first.
pub fn gtensor(a: &GammaObject, b: &GammaObject) -> Result<GammaObject> {
    check_prime(a, b)?;
    let (Some(x), Some(y)) = (a.perfect_model(None)?, b.perfect_model(None)?) else {
        return Err(Error::NotDualisable(
            "the derived tensor of a carrier without a finite resolution is not representable"
                .into(),
        ));
    };
    GammaObject::from_complex(x.tensor(&y)?, &a.prime)
}

/// `Hom(F, A)` for a finite resolution `F` of the carrier.
pub fn sw_dual(x: &GammaObject, cutoff: Option<i64>) -> Result<GammaObject> {
    match x.betti(cutoff)? {
        BettiDecision::Finite { .. } => {}
        BettiDecision::PeriodicInfinite { period, .. } => {
            return Err(Error::NotDualisable(format!(
                "the carrier has a periodic resolution of period {period}"
            )))
        }
        BettiDecision::UnknownAtCutoff { cutoff } => {
            return Err(Error::NotDualisable(format!(
                "no finite resolution found within cutoff {cutoff}"
            )))
        }
    }
    let Some(f) = x.perfect_model(cutoff)? else {
        return Err(Error::NotDualisable(
            "finite Betti numbers but no finite global resolution within the cutoff".into(),
        ));
    };
    GammaObject::from_complex(f.hom(&FreeComplex::unit(x.ring()))?, &x.prime)
}

pub fn is_dualisable(x: &GammaObject, cutoff: Option<i64>) -> Result<Dualisability> {
    Ok(match x.betti(cutoff)? {
        BettiDecision::Finite { total, table } => Dualisability::Dualisable {
            total_betti: total,
            table,
        },
        BettiDecision::PeriodicInfinite { period, onset } => {
            Dualisability::NotDualisable { period, onset }
        }
        BettiDecision::UnknownAtCutoff { cutoff } => Dualisability::Unknown { cutoff },
    })
}

/// `s` with `X ≅ Σ^s RΓ_p(A_p)` read off a Betti table `{-s ↦ 1}`.
pub fn recognize_shifted_unit(x: &GammaObject, cutoff: Option<i64>) -> Result<Option<i64>> {
    Ok(match x.betti(cutoff)? {
        BettiDecision::Finite { table, .. } if table.len() == 1 => {
            let (d, b) = table.iter().next().unwrap();
            (*b == 1).then_some(-d)
        }
        _ => None,
    })
}

/// Homology modules of the carrier, as presentations.
fn homology_presentations(x: &Carrier) -> Result<Vec<ModulePresentation>> {
    let mut out = Vec::new();
    for p in &x.pieces {
        match p {
            Piece::Complex(c) => out.extend(homology(c)?.presentations.into_values()),
            Piece::Module { presentation, .. } => out.push(presentation.clone()),
        }
    }
    Ok(out)
}

/// Whether `H(Y)_p` has finite length in every degree.
pub fn is_compact(x: &GammaObject) -> Result<bool> {
    let ring = x.ring();
    let p = &x.prime;
    let zero_prime = p.generators().iter().all(|g| ring.is_zero(g));
    for h in homology_presentations(&x.carrier)? {
        if ring.is_field() {
            continue;
        }
        let finite = if ring.principal_kind().is_some() {
            // R^f ⊕ torsion localises to finite length iff f = 0, unless A_p is a field
            let s = principal::smith(ring, &h.relations)?;
            zero_prime || h.ambient_rank == s.rank
        } else {
            // finite length at p iff (ann H : p^inf) ⊄ p
            let ann = annihilator(ring, &h)?;
            let sat = ideal_saturation(ring, &ann, p.generators())?;
            !ideal_contains_all(ring, p.generators(), &sat)?
        };
        if !finite {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    Compact,
    DualisableNotCompact,
    NotDualisable,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassifyReport {
    pub class: Classification,
    pub dualisability: Dualisability,
    /// `H(Y)_p` has finite length.
    pub finite_length: bool,
    pub shifted_unit: Option<i64>,
}

/// Compact objects are the dualisable ones with finite-length homology.
pub fn classify(x: &GammaObject, cutoff: Option<i64>) -> Result<ClassifyReport> {
    let dualisability = is_dualisable(x, cutoff)?;
    let finite_length = is_compact(x)?;
    let shifted_unit = match &dualisability {
        Dualisability::Dualisable { table, .. } if table.len() == 1 => {
            let (d, b) = table.iter().next().unwrap();
            (*b == 1).then_some(-d)
        }
        _ => None,
    };
    let class = match (&dualisability, finite_length) {
        (Dualisability::Dualisable { .. }, true) => Classification::Compact,
        (Dualisability::Dualisable { .. }, false) => Classification::DualisableNotCompact,
        (Dualisability::NotDualisable { .. }, _) => Classification::NotDualisable,
        (Dualisability::Unknown { .. }, _) => Classification::Unknown,
    };
    Ok(ClassifyReport {
        class,
        dualisability,
        finite_length,
        shifted_unit,
    })
}
