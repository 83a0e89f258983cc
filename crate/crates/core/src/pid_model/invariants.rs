//! Objects of `D(R)` for a local PID `R` (ℤ_(p), k[x]_(x)) as finite sums of
//! shifted indecomposable modules.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An indecomposable piece. The derived order (tag, then size) is the canonical one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PieceKind {
    /// `R / p^s`.
    FinCyclic(u32),
    /// `R[1/p] / R`, the injective hull of the residue field.
    Pruefer,
    /// `R^r`.
    LocalFree(u32),
    /// `R̂^r`.
    AdicFree(u32),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Piece {
    pub degree: i64,
    pub kind: PieceKind,
}

impl Piece {
    pub fn new(degree: i64, kind: PieceKind) -> Piece {
        Piece { degree, kind }
    }

    pub fn is_free_type(&self) -> bool {
        matches!(self.kind, PieceKind::LocalFree(_) | PieceKind::AdicFree(_))
    }
}

impl fmt::Display for Piece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            PieceKind::FinCyclic(s) => write!(f, "FC({s})@{}", self.degree),
            PieceKind::Pruefer => write!(f, "P@{}", self.degree),
            PieceKind::LocalFree(r) => write!(f, "LF({r})@{}", self.degree),
            PieceKind::AdicFree(r) => write!(f, "AF({r})@{}", self.degree),
        }
    }
}

impl FromStr for Piece {
    type Err = Error;

    /// `FC(s)@d`, `P@d`, `LF(r)@d` or `AF(r)@d`.
    fn from_str(s: &str) -> Result<Piece> {
        let bad = || {
            Error::Parse(format!(
                "invalid piece \"{s}\"; expected FC(s)@d, P@d, LF(r)@d or AF(r)@d"
            ))
        };
        let (head, deg) = s.trim().split_once('@').ok_or_else(bad)?;
        let degree: i64 = deg.trim().parse().map_err(|_| bad())?;
        let head = head.trim();
        let size = |prefix: &str| -> Result<u32> {
            let inner = head
                .strip_prefix(prefix)
                .and_then(|r| r.strip_prefix('('))
                .and_then(|r| r.strip_suffix(')'))
                .ok_or_else(bad)?;
            let v: u32 = inner.trim().parse().map_err(|_| bad())?;
            if v == 0 {
                return Err(Error::Parse(format!("piece \"{s}\" needs a positive size")));
            }
            Ok(v)
        };
        let kind = if head == "P" {
            PieceKind::Pruefer
        } else if head.starts_with("FC") {
            PieceKind::FinCyclic(size("FC")?)
        } else if head.starts_with("LF") {
            PieceKind::LocalFree(size("LF")?)
        } else if head.starts_with("AF") {
            PieceKind::AdicFree(size("AF")?)
        } else {
            return Err(bad());
        };
        Ok(Piece { degree, kind })
    }
}

impl Serialize for Piece {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Piece {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Piece, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Canonical multiset: sorted, with free pieces of equal type and degree merged.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct TorsionInvariants {
    pieces: Vec<Piece>,
}

impl TorsionInvariants {
    pub fn new(pieces: impl IntoIterator<Item = Piece>) -> TorsionInvariants {
        let mut v: Vec<Piece> = pieces.into_iter().collect();
        v.sort();
        let mut out: Vec<Piece> = Vec::with_capacity(v.len());
        for p in v {
            if let Some(last) = out.last_mut() {
                if last.degree == p.degree {
                    match (&mut last.kind, p.kind) {
                        (PieceKind::LocalFree(a), PieceKind::LocalFree(b))
                        | (PieceKind::AdicFree(a), PieceKind::AdicFree(b)) => {
                            *a += b;
                            continue;
                        }
                        _ => {}
                    }
                }
            }
            out.push(p);
        }
        TorsionInvariants { pieces: out }
    }

    pub fn zero() -> TorsionInvariants {
        TorsionInvariants::default()
    }

    pub fn single(degree: i64, kind: PieceKind) -> TorsionInvariants {
        TorsionInvariants::new([Piece::new(degree, kind)])
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn is_zero(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn sum(&self, other: &TorsionInvariants) -> TorsionInvariants {
        TorsionInvariants::new(self.pieces.iter().chain(other.pieces.iter()).copied())
    }

    pub fn shift(&self, s: i64) -> TorsionInvariants {
        TorsionInvariants::new(self.pieces.iter().map(|p| Piece::new(p.degree - s, p.kind)))
    }

    /// Free pieces of rank `r` are split into `r` rank-one pieces.
    pub fn rank_one_pieces(&self) -> Vec<Piece> {
        let mut out = Vec::new();
        for p in &self.pieces {
            match p.kind {
                PieceKind::LocalFree(r) => {
                    out.extend((0..r).map(|_| Piece::new(p.degree, PieceKind::LocalFree(1))))
                }
                PieceKind::AdicFree(r) => {
                    out.extend((0..r).map(|_| Piece::new(p.degree, PieceKind::AdicFree(1))))
                }
                _ => out.push(*p),
            }
        }
        out
    }

    pub fn parse_list<S: AsRef<str>>(items: &[S]) -> Result<TorsionInvariants> {
        let pieces = items
            .iter()
            .map(|s| s.as_ref().parse())
            .collect::<Result<Vec<Piece>>>()?;
        Ok(TorsionInvariants::new(pieces))
    }
}

impl fmt::Display for TorsionInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.pieces.iter().map(|p| p.to_string()).collect();
        write!(f, "{{{}}}", items.join(", "))
    }
}

impl Serialize for TorsionInvariants {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.pieces.serialize(s)
    }
}

impl<'de> Deserialize<'de> for TorsionInvariants {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<TorsionInvariants, D::Error> {
        Ok(TorsionInvariants::new(Vec::<Piece>::deserialize(d)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_display_and_canonical_order() {
        let x =
            TorsionInvariants::parse_list(&["P@1", "LF(2)@0", "FC(3)@0", "LF(1)@0", "AF(1)@-1"])
                .unwrap();
        assert_eq!(x.to_string(), "{AF(1)@-1, FC(3)@0, LF(3)@0, P@1}");
        assert!("FC(0)@1".parse::<Piece>().is_err());
        assert!("Q@1".parse::<Piece>().is_err());
        let json = serde_json::to_string(&x).unwrap();
        let back: TorsionInvariants = serde_json::from_str(&json).unwrap();
        assert_eq!(back, x);
        assert_eq!(x.rank_one_pieces().len(), 6);
    }
}
