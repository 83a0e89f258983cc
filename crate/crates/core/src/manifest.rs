//! JSON input format shared by the command line and the law runner.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gamma::{GammaObject, PrimeIdeal};
use crate::pid_model::TorsionInvariants;
use crate::resolutions::{Carrier, PieceSpec};
use crate::rings::{Ring, RingDescriptor};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum ObjectSpec {
    /// A finite sum of complexes and modules over the manifest ring.
    Carrier(Vec<PieceSpec>),
    /// A sum of indecomposables in the PID model, e.g. `["FC(2)@0", "P@1"]`.
    Invariants(TorsionInvariants),
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Params {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cutoff: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub precision: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// The constant term `c` of `x^2 - c` for `hensel`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<String>,
}

impl Params {
    pub fn is_empty(&self) -> bool {
        *self == Params::default()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ring: Option<RingDescriptor>,
    /// Generators of the prime, as strings in the ring.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prime: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub objects: BTreeMap<String, ObjectSpec>,
    #[serde(default, skip_serializing_if = "Params::is_empty")]
    pub params: Params,
}

impl Manifest {
    pub fn new(ring: &Ring, prime: Option<&PrimeIdeal>) -> Manifest {
        Manifest {
            ring: Some(ring.descriptor().clone()),
            prime: prime.map(|p| p.generators().iter().map(|g| ring.format(g)).collect()),
            ..Manifest::default()
        }
    }

    pub fn with_carrier(mut self, name: &str, x: &Carrier) -> Manifest {
        self.objects
            .insert(name.into(), ObjectSpec::Carrier(x.to_specs()));
        self
    }

    pub fn with_invariants(mut self, name: &str, x: &TorsionInvariants) -> Manifest {
        self.objects
            .insert(name.into(), ObjectSpec::Invariants(x.clone()));
        self
    }

    pub fn ring(&self) -> Result<Ring> {
        match &self.ring {
            Some(d) => Ring::new(d),
            None => Err(Error::Usage("the manifest has no ring".into())),
        }
    }

    pub fn prime_ideal(&self) -> Result<PrimeIdeal> {
        let ring = self.ring()?;
        match &self.prime {
            Some(gens) => PrimeIdeal::parse(&ring, gens),
            None => Err(Error::Usage("the manifest has no prime".into())),
        }
    }

    fn object(&self, name: &str) -> Result<&ObjectSpec> {
        self.objects
            .get(name)
            .ok_or_else(|| Error::Usage(format!("the manifest has no object \"{name}\"")))
    }

    pub fn carrier(&self, name: &str) -> Result<Carrier> {
        match self.object(name)? {
            ObjectSpec::Carrier(specs) => Carrier::from_specs(&self.ring()?, specs),
            ObjectSpec::Invariants(_) => Err(Error::Usage(format!(
                "object \"{name}\" is given by invariants, not by a carrier"
            ))),
        }
    }

    pub fn gamma_object(&self, name: &str) -> Result<GammaObject> {
        GammaObject::new(self.carrier(name)?, &self.prime_ideal()?)
    }

    pub fn invariants(&self, name: &str) -> Result<TorsionInvariants> {
        match self.object(name)? {
            ObjectSpec::Invariants(x) => Ok(x.clone()),
            ObjectSpec::Carrier(_) => Err(Error::Usage(format!(
                "object \"{name}\" is a carrier, not a list of invariants"
            ))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn carrier_manifest_round_trips() {
        let text = r#"{
            "ring": {"type": "integers"},
            "prime": ["5"],
            "objects": {
                "X": {"carrier": [{"unit": {"shift": 1}}, {"cyclic": {"ideal": ["25"]}}]},
                "T": {"invariants": ["FC(2)@0", "P@1"]}
            },
            "params": {"cutoff": 6}
        }"#;
        let m: Manifest = serde_json::from_str(text).unwrap();
        let x = m.gamma_object("X").unwrap();
        assert_eq!(x.carrier.pieces.len(), 2);
        assert_eq!(m.invariants("T").unwrap().pieces().len(), 2);
        let again = Manifest::new(&m.ring().unwrap(), Some(&m.prime_ideal().unwrap()))
            .with_carrier("X", &x.carrier);
        let back: Manifest = serde_json::from_str(&serde_json::to_string(&again).unwrap()).unwrap();
        let y = back.gamma_object("X").unwrap();
        assert_eq!(y.carrier.to_specs(), x.carrier.to_specs());
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let bad = r#"{"ring": {"type": "integers"}, "primes": ["5"]}"#;
        assert!(serde_json::from_str::<Manifest>(bad).is_err());
        let bad_piece = r#"{"objects": {"X": {"carrier": [{"unit": {"shfit": 1}}]}}}"#;
        assert!(serde_json::from_str::<Manifest>(bad_piece).is_err());
    }
}
