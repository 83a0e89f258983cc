//! Derived tensor and derived Hom between single pieces.
//!
//! For pieces in degrees `a` and `b`: `Tor_0` sits in `a + b` and `Tor_1` in
//! `a + b - 1`; `Hom` sits in `b - a` and `Ext^1` in `b - a + 1`.

use super::invariants::{Piece, PieceKind, TorsionInvariants};
use crate::error::{Error, Result};

use PieceKind::{AdicFree as AF, FinCyclic as FC, LocalFree as LF, Pruefer as P};

/// `(Tor_0, Tor_1)` or `(Hom, Ext^1)` of two pieces, as lists of kinds.
type Entry = (Vec<PieceKind>, Vec<PieceKind>);

fn copies(k: PieceKind, n: u32) -> Vec<PieceKind> {
    (0..n).map(|_| k).collect()
}

fn unrepresentable(op: &str, a: PieceKind, b: PieceKind) -> Error {
    Error::Usage(format!(
        "{op} of {a:?} and {b:?} is not a finite sum of pieces"
    ))
}

/// `Tor_*(a, b)`.
pub fn tor(a: PieceKind, b: PieceKind) -> Result<Entry> {
    Ok(match (a, b) {
        (FC(s), FC(t)) => (vec![FC(s.min(t))], vec![FC(s.min(t))]),
        (FC(s), P) | (P, FC(s)) => (vec![], vec![FC(s)]),
        (FC(s), LF(r)) | (LF(r), FC(s)) => (copies(FC(s), r), vec![]),
        (FC(s), AF(r)) | (AF(r), FC(s)) => (copies(FC(s), r), vec![]),
        (P, P) => (vec![], vec![P]),
        (P, LF(r)) | (LF(r), P) => (copies(P, r), vec![]),
        (P, AF(r)) | (AF(r), P) => (copies(P, r), vec![]),
        (LF(r), LF(s)) => (vec![LF(r * s)], vec![]),
        (LF(r), AF(s)) | (AF(s), LF(r)) => (vec![AF(r * s)], vec![]),
        (AF(_), AF(_)) => return Err(unrepresentable("the tensor product", a, b)),
    })
}

/// `Ext^*(a, b)`.
pub fn ext(a: PieceKind, b: PieceKind) -> Result<Entry> {
    Ok(match (a, b) {
        (FC(s), FC(t)) => (vec![FC(s.min(t))], vec![FC(s.min(t))]),
        (FC(s), P) => (vec![FC(s)], vec![]),
        (FC(s), LF(r)) | (FC(s), AF(r)) => (vec![], copies(FC(s), r)),
        (P, FC(t)) => (vec![], vec![FC(t)]),
        (P, P) => (vec![AF(1)], vec![]),
        (P, LF(r)) | (P, AF(r)) => (vec![], vec![AF(r)]),
        (LF(r), FC(t)) => (copies(FC(t), r), vec![]),
        (LF(r), P) => (copies(P, r), vec![]),
        (LF(r), LF(s)) => (vec![LF(r * s)], vec![]),
        (LF(r), AF(s)) => (vec![AF(r * s)], vec![]),
        (AF(r), FC(t)) => (copies(FC(t), r), vec![]),
        (AF(r), AF(s)) => (vec![AF(r * s)], vec![]),
        (AF(_), P) | (AF(_), LF(_)) => return Err(unrepresentable("the derived Hom", a, b)),
    })
}

fn place(entry: Entry, d0: i64, d1: i64) -> Vec<Piece> {
    let mut out: Vec<Piece> = entry.0.into_iter().map(|k| Piece::new(d0, k)).collect();
    out.extend(entry.1.into_iter().map(|k| Piece::new(d1, k)));
    out
}

pub fn tensor_pieces(a: &Piece, b: &Piece) -> Result<Vec<Piece>> {
    let d = a.degree + b.degree;
    Ok(place(tor(a.kind, b.kind)?, d, d - 1))
}

pub fn rhom_pieces(a: &Piece, b: &Piece) -> Result<Vec<Piece>> {
    let d = b.degree - a.degree;
    Ok(place(ext(a.kind, b.kind)?, d, d + 1))
}

/// Bilinear extension of the tensor table.
pub fn tensor_inv(x: &TorsionInvariants, y: &TorsionInvariants) -> Result<TorsionInvariants> {
    let mut out = Vec::new();
    for a in x.pieces() {
        for b in y.pieces() {
            out.extend(tensor_pieces(a, b)?);
        }
    }
    Ok(TorsionInvariants::new(out))
}

/// Bilinear extension of the derived Hom table (finite sums in both variables).
pub fn rhom_inv(x: &TorsionInvariants, y: &TorsionInvariants) -> Result<TorsionInvariants> {
    let mut out = Vec::new();
    for a in x.pieces() {
        for b in y.pieces() {
            out.extend(rhom_pieces(a, b)?);
        }
    }
    Ok(TorsionInvariants::new(out))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inv(items: &[&str]) -> TorsionInvariants {
        TorsionInvariants::parse_list(items).unwrap()
    }

    #[test]
    fn listed_entries() {
        assert_eq!(
            tensor_inv(&inv(&["FC(2)@0"]), &inv(&["FC(3)@0"])).unwrap(),
            inv(&["FC(2)@0", "FC(2)@-1"])
        );
        assert_eq!(
            tensor_inv(&inv(&["P@0"]), &inv(&["FC(4)@0"])).unwrap(),
            inv(&["FC(4)@-1"])
        );
        assert_eq!(
            rhom_inv(&inv(&["P@0"]), &inv(&["P@0"])).unwrap(),
            inv(&["AF(1)@0"])
        );
        assert!(tensor_inv(&inv(&["AF(1)@0"]), &inv(&["AF(1)@0"])).is_err());
        assert!(rhom_inv(&inv(&["AF(1)@0"]), &inv(&["LF(1)@0"])).is_err());
        assert_eq!(
            tensor_inv(&inv(&["LF(2)@1"]), &inv(&["FC(1)@0"])).unwrap(),
            inv(&["FC(1)@1", "FC(1)@1"])
        );
    }
}
