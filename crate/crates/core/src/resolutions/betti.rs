//! Betti numbers `β_i = rank_{k(p)} H^i(k(p) ⊗^L X)` and the finite/infinite decision.

use std::collections::BTreeMap;

use serde::Serialize;

use super::carrier::{Carrier, Piece};
use super::resolve::{default_cutoff, lcm, resolve, resolve_module, ModuleResolution, Periodicity};
use crate::complexes::FreeComplex;
use crate::error::Result;
use crate::gamma::PrimeIdeal;
use crate::rings::{generic_rank, project, Matrix, RegularityClass};

pub type BettiTable = BTreeMap<i64, usize>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum BettiDecision {
    Finite { total: usize, table: BettiTable },
    PeriodicInfinite { period: usize, onset: usize },
    UnknownAtCutoff { cutoff: usize },
}

impl BettiDecision {
    pub fn is_finite(&self) -> bool {
        matches!(self, BettiDecision::Finite { .. })
    }

    pub fn table(&self) -> Option<&BettiTable> {
        match self {
            BettiDecision::Finite { table, .. } => Some(table),
            _ => None,
        }
    }
}

pub fn total(t: &BettiTable) -> usize {
    t.values().sum()
}

pub fn add_tables(a: &BettiTable, b: &BettiTable) -> BettiTable {
    let mut out = a.clone();
    for (d, v) in b {
        *out.entry(*d).or_insert(0) += v;
    }
    out.retain(|_, v| *v > 0);
    out
}

/// Rank over `k(p)` of the reduction of `m` modulo `p`.
fn residue_rank(p: &PrimeIdeal, m: &Matrix) -> Result<usize> {
    if m.rows == 0 || m.cols == 0 {
        return Ok(0);
    }
    let b = p.residue();
    let reduced = m.map(|e| project(p.ring(), b, e));
    generic_rank(b, &reduced)
}

/// Betti table of a bounded free complex, which is its own resolution.
pub fn betti_of_complex(f: &FreeComplex, p: &PrimeIdeal) -> Result<BettiTable> {
    let mut table = BettiTable::new();
    if f.is_zero_complex() {
        return Ok(table);
    }
    let mut ranks = BTreeMap::new();
    for n in f.lo() - 1..=f.hi() {
        ranks.insert(n, residue_rank(p, &f.d(n))?);
    }
    for n in f.degrees() {
        let b = f.rank(n) - ranks[&n] - ranks[&(n - 1)];
        if b > 0 {
            table.insert(n, b);
        }
    }
    Ok(table)
}

/// Betti numbers of `X` in the degrees a resolution truncated at `cutoff` determines.
pub fn betti_at_prime(x: &Carrier, p: &PrimeIdeal, cutoff: i64) -> Result<BettiTable> {
    let r = resolve(x, cutoff)?;
    let mut t = betti_of_complex(&r.resolution, p)?;
    if let Some(lo) = r.reliable_from {
        t.retain(|d, _| *d >= lo);
    }
    Ok(t)
}

enum PieceVerdict {
    Finite(BettiTable),
    Periodic(Periodicity),
    Unknown,
}

fn module_verdict(
    r: &ModuleResolution,
    degree: i64,
    p: &PrimeIdeal,
    regular: bool,
) -> Result<PieceVerdict> {
    let rank = |k: usize| -> Result<usize> { residue_rank(p, &r.maps[k]) };
    // β at degree - k, from maps[k-1] (outgoing) and maps[k] (incoming)
    let beta = |k: usize, out_rank: usize, out_r: usize, in_r: usize| -> (i64, usize) {
        (degree - k as i64, out_rank - out_r - in_r)
    };
    let mut table = BettiTable::new();
    let src_rank = |k: usize| -> usize {
        if k == 0 {
            r.generators
        } else {
            r.maps[k - 1].cols
        }
    };
    let push = |t: &mut BettiTable, (d, b): (i64, usize)| {
        if b > 0 {
            t.insert(d, b);
        }
    };
    if r.complete {
        let len = r.maps.len();
        let ranks: Vec<usize> = (0..len).map(rank).collect::<Result<_>>()?;
        for k in 0..=len {
            let out_r = if k == 0 { 0 } else { ranks[k - 1] };
            let in_r = if k < len { ranks[k] } else { 0 };
            push(&mut table, beta(k, src_rank(k), out_r, in_r));
        }
        return Ok(PieceVerdict::Finite(table));
    }
    if let Some(per) = r.periodicity {
        let cyc = |i: usize| -> usize {
            if i < per.onset + per.period {
                i
            } else {
                per.onset + (i - per.onset) % per.period
            }
        };
        let mut cycle_nonzero = false;
        for k in per.onset + 1..=per.onset + per.period {
            let (_, b) = beta(k, r.maps[cyc(k - 1)].cols, rank(cyc(k - 1))?, rank(cyc(k))?);
            if b > 0 {
                cycle_nonzero = true;
            }
        }
        if cycle_nonzero {
            return Ok(PieceVerdict::Periodic(per));
        }
        // the tail is acyclic after reduction, so the head is the whole table
        for k in 0..=per.onset {
            let out_r = if k == 0 { 0 } else { rank(k - 1)? };
            push(&mut table, beta(k, src_rank(k), out_r, rank(cyc(k))?));
        }
        return Ok(PieceVerdict::Finite(table));
    }
    if regular {
        // pd of the localisation is at most ht p; demand computed zeros beyond it
        let h = p.height().max(0) as usize;
        let len = r.maps.len();
        if len >= h + 2 {
            let ranks: Vec<usize> = (0..len).map(rank).collect::<Result<_>>()?;
            let mut band_zero = true;
            for k in 0..len {
                let out_r = if k == 0 { 0 } else { ranks[k - 1] };
                let (d, b) = beta(k, src_rank(k), out_r, ranks[k]);
                if k > h {
                    band_zero &= b == 0;
                } else if b > 0 {
                    table.insert(d, b);
                }
            }
            if band_zero {
                return Ok(PieceVerdict::Finite(table));
            }
        }
    }
    Ok(PieceVerdict::Unknown)
}

/// Finite when every piece has a finite Betti table, periodic when some piece
/// has a repeating syzygy cycle with nonzero Betti numbers, unknown otherwise.
pub fn finiteness_decision(
    x: &Carrier,
    p: &PrimeIdeal,
    cutoff: Option<i64>,
) -> Result<BettiDecision> {
    let cutoff = match cutoff {
        Some(c) => c,
        None => default_cutoff(x) as i64,
    };
    if cutoff < 0 {
        return Err(crate::Error::Usage(format!(
            "cutoff must be nonnegative, got {cutoff}"
        )));
    }
    let regular = x.ring.regularity_class() == RegularityClass::Regular;
    let mut table = BettiTable::new();
    let mut periodic: Option<Periodicity> = None;
    let mut unknown = false;
    for piece in &x.pieces {
        let v = match piece {
            Piece::Complex(c) => PieceVerdict::Finite(betti_of_complex(c, p)?),
            Piece::Module {
                presentation,
                degree,
            } => {
                let r = resolve_module(&x.ring, presentation, cutoff as usize)?;
                module_verdict(&r, *degree, p, regular)?
            }
        };
        match v {
            PieceVerdict::Finite(t) => table = add_tables(&table, &t),
            PieceVerdict::Periodic(per) => {
                periodic = Some(match periodic {
                    None => per,
                    Some(q) => Periodicity {
                        period: lcm(q.period, per.period),
                        onset: q.onset.max(per.onset),
                    },
                })
            }
            PieceVerdict::Unknown => unknown = true,
        }
    }
    Ok(if let Some(per) = periodic {
        BettiDecision::PeriodicInfinite {
            period: per.period,
            onset: per.onset,
        }
    } else if unknown {
        BettiDecision::UnknownAtCutoff {
            cutoff: cutoff as usize,
        }
    } else {
        BettiDecision::Finite {
            total: total(&table),
            table,
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grobner::ModulePresentation;
    use crate::rings::Ring;

    fn table(pairs: &[(i64, usize)]) -> BettiTable {
        pairs.iter().copied().collect()
    }

    #[test]
    fn line_module_at_its_prime() {
        let a = Ring::polynomial(0, &["x", "y"]).unwrap();
        let p = PrimeIdeal::parse(&a, &["x"]).unwrap();
        let m = Carrier::cyclic(&a, &[a.parse("x").unwrap()], 0);
        assert_eq!(
            betti_at_prime(&m, &p, 5).unwrap(),
            table(&[(-1, 1), (0, 1)])
        );
        assert_eq!(
            betti_at_prime(&Carrier::unit(&a), &p, 5).unwrap(),
            table(&[(0, 1)])
        );
    }

    #[test]
    fn integers_mod_25_at_5() {
        let z = Ring::integers();
        let p = PrimeIdeal::parse(&z, &["5"]).unwrap();
        let m = Carrier::cyclic(&z, &[z.from_i64(25)], 0);
        assert_eq!(
            betti_at_prime(&m, &p, 3).unwrap(),
            table(&[(-1, 1), (0, 1)])
        );
        assert_eq!(
            finiteness_decision(&m, &p, None).unwrap(),
            BettiDecision::Finite {
                total: 2,
                table: table(&[(-1, 1), (0, 1)])
            }
        );
        // prime-to-5 torsion is invisible
        let m3 = Carrier::cyclic(&z, &[z.from_i64(3)], 0);
        assert_eq!(betti_at_prime(&m3, &p, 3).unwrap(), BettiTable::new());
    }

    #[test]
    fn residue_field_of_dual_numbers_is_not_finite() {
        let a = Ring::polynomial(0, &["x"])
            .unwrap()
            .quotient(&["x^2"])
            .unwrap();
        let p = PrimeIdeal::parse(&a, &["x"]).unwrap();
        let k = Carrier::cyclic(&a, &[a.parse("x").unwrap()], 0);
        assert_eq!(
            finiteness_decision(&k, &p, Some(4)).unwrap(),
            BettiDecision::PeriodicInfinite {
                period: 1,
                onset: 0
            }
        );
        // the unit is free, hence finite
        assert_eq!(
            finiteness_decision(&Carrier::unit(&a), &p, Some(4)).unwrap(),
            BettiDecision::Finite {
                total: 1,
                table: table(&[(0, 1)])
            }
        );
    }

    #[test]
    fn acyclic_complex_has_empty_table() {
        let z = Ring::integers();
        let p = PrimeIdeal::parse(&z, &["5"]).unwrap();
        let x = FreeComplex::two_term(&z, 0, Matrix::identity(&z, 2));
        assert_eq!(
            finiteness_decision(&Carrier::complex(x), &p, None).unwrap(),
            BettiDecision::Finite {
                total: 0,
                table: BettiTable::new()
            }
        );
    }

    #[test]
    fn residue_field_of_plane_at_origin() {
        // Koszul: β_0 = 1, β_{-1} = 2, β_{-2} = 1
        let a = Ring::polynomial(0, &["x", "y"]).unwrap();
        let p = PrimeIdeal::parse(&a, &["x", "y"]).unwrap();
        let k = Carrier::module(
            &a,
            ModulePresentation::cyclic(&[a.parse("x").unwrap(), a.parse("y").unwrap()]),
            0,
        );
        let d = finiteness_decision(&k, &p, None).unwrap();
        assert_eq!(d.table(), Some(&table(&[(-2, 1), (-1, 2), (0, 1)])));
    }
}
