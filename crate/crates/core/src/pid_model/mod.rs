//! Closed-form calculus for the torsion category of a local PID.
//!
//! Complexes over a hereditary ring split as sums of shifted homology, so an
//! object is a finite multiset of shifted pieces and every functor reduces to
//! per-pair tables.

mod invariants;
mod tables;

pub use invariants::{Piece, PieceKind, TorsionInvariants};
pub use tables::{ext, rhom_inv, rhom_pieces, tensor_inv, tensor_pieces, tor};

use serde::Serialize;

use crate::complexes::FreeComplex;
use crate::error::{Error, Result};
use crate::resolutions::BettiTable;
use crate::rings::principal;
use crate::rings::ring::PrincipalKind;
use crate::rings::{Elem, Ring};

/// The stable Koszul complex `[R → R[1/p]]`, whose only homology is `H^1 = P`.
pub fn cech() -> TorsionInvariants {
    TorsionInvariants::single(1, PieceKind::Pruefer)
}

/// Local cohomology: tensor with the stable Koszul complex.
pub fn gamma_inv(x: &TorsionInvariants) -> TorsionInvariants {
    tensor_inv(&cech(), x).expect("the Pruefer row of the tensor table is total")
}

/// Derived completion: derived Hom out of the stable Koszul complex.
pub fn lambda_inv(x: &TorsionInvariants) -> TorsionInvariants {
    rhom_inv(&cech(), x).expect("the Pruefer row of the Hom table is total")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum InvClass {
    Compact,
    DualisableNotCompact,
    NotDualisable,
    NotInGamma,
}

pub fn classify_inv(x: &TorsionInvariants) -> InvClass {
    let pieces = x.pieces();
    if pieces.iter().any(Piece::is_free_type) {
        InvClass::NotInGamma
    } else if pieces
        .iter()
        .all(|p| matches!(p.kind, PieceKind::FinCyclic(_)))
    {
        InvClass::Compact
    } else {
        InvClass::DualisableNotCompact
    }
}

/// Nakayama at the top cohomological degree: `H^t(X) → H^t(k ⊗^L X) = k ⊗ H^t(X)`
/// is onto, so the check is that the target is nonzero.
pub fn bottom_nonzero_check(x: &TorsionInvariants) -> bool {
    let Some(top) = x.pieces().iter().map(|p| p.degree).max() else {
        return false;
    };
    let k = TorsionInvariants::single(0, PieceKind::FinCyclic(1));
    let at_top = TorsionInvariants::new(x.pieces().iter().copied().filter(|p| p.degree == top));
    match tensor_inv(&k, &at_top) {
        Ok(t) => t.pieces().iter().any(|p| p.degree == top),
        Err(_) => false,
    }
}

/// `β_i = dim_k H^i(k ⊗^L X)` read off the pieces.
pub fn betti_from_invariants(x: &TorsionInvariants) -> BettiTable {
    let k = TorsionInvariants::single(0, PieceKind::FinCyclic(1));
    let mut table = BettiTable::new();
    let t = tensor_inv(&k, x).expect("the residue field row of the tensor table is total");
    for p in t.pieces() {
        let n = match p.kind {
            PieceKind::FinCyclic(_) => 1,
            PieceKind::LocalFree(r) | PieceKind::AdicFree(r) => r as usize,
            PieceKind::Pruefer => unreachable!("k ⊗ P vanishes"),
        };
        *table.entry(p.degree).or_insert(0) += n;
    }
    table
}

fn valuation(ring: &Ring, t: &Elem, p: &Elem) -> u32 {
    let mut v = 0;
    let mut y = t.clone();
    loop {
        let (q, r) = principal::div_rem(ring, &y, p);
        if !ring.is_zero(&r) {
            return v;
        }
        y = q;
        v += 1;
    }
}

/// Localised homology of a complex over ℤ or `K[x]`, one piece per invariant factor.
pub fn split_invariants(x: &FreeComplex, p: &Elem) -> Result<TorsionInvariants> {
    let ring = &x.ring;
    if ring.principal_kind() != Some(PrincipalKind::Euclidean) {
        return Err(Error::UnsupportedRing(format!(
            "split_invariants needs ℤ or a univariate polynomial ring, got {}",
            ring.name()
        )));
    }
    if ring.is_zero(p) || ring.is_unit(p) {
        return Err(Error::Usage(format!(
            "{} is not a prime element",
            ring.format(p)
        )));
    }
    let mut pieces = Vec::new();
    if x.is_zero_complex() {
        return Ok(TorsionInvariants::zero());
    }
    for n in x.degrees() {
        let out = principal::rank(ring, &x.d(n))?;
        let incoming = principal::smith(ring, &x.d(n - 1))?;
        let free = x.rank(n) - out - incoming.rank;
        if free > 0 {
            pieces.push(Piece::new(n, PieceKind::LocalFree(free as u32)));
        }
        for t in incoming.diag.iter().filter(|d| !ring.is_unit(d)) {
            let s = valuation(ring, t, p);
            if s > 0 {
                pieces.push(Piece::new(n, PieceKind::FinCyclic(s)));
            }
        }
    }
    Ok(TorsionInvariants::new(pieces))
}
