//! Inputs to the resolution engine: finite sums of free complexes and of
//! finitely presented modules placed in a single degree.

use serde::{Deserialize, Serialize};

use crate::complexes::{ComplexSpec, FreeComplex};
use crate::error::{Error, Result};
use crate::grobner::ModulePresentation;
use crate::rings::{Matrix, MatrixStrings, Ring};

#[derive(Clone, Debug)]
pub enum Piece {
    Complex(FreeComplex),
    /// `coker(relations)` concentrated in `degree`.
    Module {
        presentation: ModulePresentation,
        degree: i64,
    },
}

/// Manifest form of one carrier piece.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum PieceSpec {
    /// `Σ^shift A`.
    Unit {
        #[serde(default)]
        shift: i64,
    },
    Complex(ComplexSpec),
    /// `R / (ideal)` in `degree`.
    Cyclic {
        ideal: Vec<String>,
        #[serde(default)]
        degree: i64,
    },
    /// `coker(relations)`, one row per generator.
    Module {
        ambient_rank: usize,
        relations: MatrixStrings,
        #[serde(default)]
        degree: i64,
    },
}

#[derive(Clone, Debug)]
pub struct Carrier {
    pub ring: Ring,
    pub pieces: Vec<Piece>,
}

impl Carrier {
    pub fn zero(ring: &Ring) -> Carrier {
        Carrier {
            ring: ring.clone(),
            pieces: vec![],
        }
    }

    pub fn complex(x: FreeComplex) -> Carrier {
        Carrier {
            ring: x.ring.clone(),
            pieces: vec![Piece::Complex(x)],
        }
    }

    pub fn unit(ring: &Ring) -> Carrier {
        Carrier::complex(FreeComplex::unit(ring))
    }

    pub fn module(ring: &Ring, presentation: ModulePresentation, degree: i64) -> Carrier {
        Carrier {
            ring: ring.clone(),
            pieces: vec![Piece::Module {
                presentation,
                degree,
            }],
        }
    }

    /// `R / (gens)` in degree `degree`.
    pub fn cyclic(ring: &Ring, gens: &[crate::rings::Elem], degree: i64) -> Carrier {
        Carrier::module(ring, ModulePresentation::cyclic(gens), degree)
    }

    pub fn direct_sum(&self, other: &Carrier) -> Result<Carrier> {
        if self.ring != other.ring {
            return Err(Error::Usage("carriers over different rings".into()));
        }
        let mut pieces = self.pieces.clone();
        pieces.extend(other.pieces.iter().cloned());
        Ok(Carrier {
            ring: self.ring.clone(),
            pieces,
        })
    }

    /// `Σ^s`: a module in degree `d` moves to degree `d - s`.
    pub fn shift(&self, s: i64) -> Carrier {
        let pieces = self
            .pieces
            .iter()
            .map(|p| match p {
                Piece::Complex(x) => Piece::Complex(x.shift(s)),
                Piece::Module {
                    presentation,
                    degree,
                } => Piece::Module {
                    presentation: presentation.clone(),
                    degree: degree - s,
                },
            })
            .collect();
        Carrier {
            ring: self.ring.clone(),
            pieces,
        }
    }

    /// The single free complex, when every piece is a complex.
    pub fn as_complex(&self) -> Option<FreeComplex> {
        let mut acc = FreeComplex::zero(&self.ring);
        for p in &self.pieces {
            match p {
                Piece::Complex(x) => acc = acc.direct_sum(x).ok()?,
                Piece::Module { .. } => return None,
            }
        }
        Some(acc)
    }

    /// Lowest and highest degree where a term can be nonzero.
    pub fn degree_range(&self) -> Option<(i64, i64)> {
        let mut range: Option<(i64, i64)> = None;
        for p in &self.pieces {
            let (lo, hi) = match p {
                Piece::Complex(x) if x.is_zero_complex() => continue,
                Piece::Complex(x) => (x.lo(), x.hi()),
                Piece::Module {
                    presentation,
                    degree,
                } => {
                    if presentation.ambient_rank == 0 {
                        continue;
                    }
                    (*degree, *degree)
                }
            };
            range = Some(match range {
                None => (lo, hi),
                Some((a, b)) => (a.min(lo), b.max(hi)),
            });
        }
        range
    }

    pub fn amplitude(&self) -> i64 {
        self.degree_range().map(|(lo, hi)| hi - lo).unwrap_or(0)
    }

    pub fn from_specs(ring: &Ring, specs: &[PieceSpec]) -> Result<Carrier> {
        let mut pieces = Vec::new();
        for spec in specs {
            pieces.push(match spec {
                PieceSpec::Unit { shift } => Piece::Complex(FreeComplex::unit(ring).shift(*shift)),
                PieceSpec::Complex(c) => Piece::Complex(FreeComplex::from_spec(ring, c)?),
                PieceSpec::Cyclic { ideal, degree } => {
                    let gens = ideal
                        .iter()
                        .map(|g| ring.parse(g))
                        .collect::<Result<Vec<_>>>()?;
                    Piece::Module {
                        presentation: ModulePresentation::cyclic(&gens),
                        degree: *degree,
                    }
                }
                PieceSpec::Module {
                    ambient_rank,
                    relations,
                    degree,
                } => {
                    let cols = relations.0.first().map_or(0, |r| r.len());
                    let m = Matrix::parse(ring, *ambient_rank, cols, relations)?;
                    Piece::Module {
                        presentation: ModulePresentation::new(*ambient_rank, m),
                        degree: *degree,
                    }
                }
            });
        }
        Ok(Carrier {
            ring: ring.clone(),
            pieces,
        })
    }

    pub fn to_specs(&self) -> Vec<PieceSpec> {
        self.pieces
            .iter()
            .map(|p| match p {
                Piece::Complex(x) => PieceSpec::Complex(x.to_spec()),
                Piece::Module {
                    presentation,
                    degree,
                } => PieceSpec::Module {
                    ambient_rank: presentation.ambient_rank,
                    relations: presentation.relations.to_strings(&self.ring),
                    degree: *degree,
                },
            })
            .collect()
    }

    /// `Y ↦ R^g / rel` from a matrix of relations.
    pub fn from_relations(ring: &Ring, relations: Matrix, degree: i64) -> Carrier {
        Carrier::module(
            ring,
            ModulePresentation::new(relations.rows, relations),
            degree,
        )
    }
}
