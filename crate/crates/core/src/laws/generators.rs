//! Seeded random objects. `size` bounds ranks and the degree window, so
//! shrinking a failing case means regenerating it at a smaller size.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::complexes::{ChainMap, FreeComplex};
use crate::error::Result;
use crate::gamma::{GammaObject, PrimeIdeal};
use crate::grobner::module::kernel;
use crate::grobner::ModulePresentation;
use crate::pid_model::{Piece, PieceKind, TorsionInvariants};
use crate::rings::{Matrix, Ring};

/// Labels of the two-term pieces `R --m--> R`.
const MULTIPLIERS: [i64; 10] = [1, -1, 2, 3, 5, 6, 10, 15, 25, 50];

fn window(size: usize) -> i64 {
    size.clamp(1, 3) as i64
}

/// An invertible matrix and its inverse, as a product of elementary matrices.
fn unimodular<R: Rng>(rng: &mut R, ring: &Ring, n: usize) -> (Matrix, Matrix) {
    let mut g = Matrix::identity(ring, n);
    let mut ginv = Matrix::identity(ring, n);
    if n < 2 {
        return (g, ginv);
    }
    for _ in 0..2 * n {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let c = rng.gen_range(-2i64..=2);
        if c == 0 {
            continue;
        }
        // g <- E g with E = 1 + c e_ij, and ginv <- ginv E^{-1}
        let mut e = Matrix::identity(ring, n);
        e.set(i, j, ring.from_i64(c));
        let mut einv = Matrix::identity(ring, n);
        einv.set(i, j, ring.from_i64(-c));
        g = e.mul(ring, &g);
        ginv = ginv.mul(ring, &einv);
    }
    (g, ginv)
}

/// A bounded free complex that is a sum of shifted units and two-term pieces
/// `R --m--> R`, conjugated degreewise by random unimodular matrices.
pub fn random_split_complex<R: Rng>(rng: &mut R, ring: &Ring, size: usize) -> Result<FreeComplex> {
    let w = window(size);
    let max_rank = size.clamp(1, 3);
    let mut ranks: BTreeMap<i64, usize> = BTreeMap::new();
    let mut x = FreeComplex::zero(ring);
    for _ in 0..rng.gen_range(1..=2 * size) {
        let d = rng.gen_range(-w..=w);
        let piece = if rng.gen_bool(0.4) || d == w {
            if ranks.get(&d).copied().unwrap_or(0) >= max_rank {
                continue;
            }
            *ranks.entry(d).or_insert(0) += 1;
            FreeComplex::free_module(ring, 1, d)
        } else {
            if ranks.get(&d).copied().unwrap_or(0) >= max_rank
                || ranks.get(&(d + 1)).copied().unwrap_or(0) >= max_rank
            {
                continue;
            }
            *ranks.entry(d).or_insert(0) += 1;
            *ranks.entry(d + 1).or_insert(0) += 1;
            let m = *MULTIPLIERS.choose(rng).unwrap();
            FreeComplex::two_term(ring, d, Matrix::from_rows(vec![vec![ring.from_i64(m)]], 1))
        };
        x = x.direct_sum(&piece)?;
    }
    conjugate(rng, &x)
}

/// `d'^n = g_{n+1} d^n g_n^{-1}` for random unimodular `g_n`.
pub fn conjugate<R: Rng>(rng: &mut R, x: &FreeComplex) -> Result<FreeComplex> {
    if x.is_zero_complex() {
        return Ok(x.clone());
    }
    let ring = &x.ring;
    let gs: BTreeMap<i64, (Matrix, Matrix)> = x
        .degrees()
        .map(|n| (n, unimodular(rng, ring, x.rank(n))))
        .collect();
    let ranks = x.degrees().map(|n| x.rank(n)).collect();
    let diffs = (x.lo()..x.hi())
        .map(|n| gs[&(n + 1)].0.mul(ring, &x.d(n)).mul(ring, &gs[&n].1))
        .collect();
    FreeComplex::new(ring, x.lo(), ranks, diffs)
}

/// A random cycle in `Hom(X, Y)^0`, decoded as a chain map.
pub fn random_chain_map<R: Rng>(
    rng: &mut R,
    x: &FreeComplex,
    y: &FreeComplex,
    max_deg: u32,
) -> Result<ChainMap> {
    let ring = &x.ring;
    let h = x.hom(y)?;
    let n0 = h.rank(0);
    if n0 == 0 {
        return ChainMap::zero(x, y);
    }
    let d0 = h.d(0);
    let cycles = if d0.rows == 0 {
        Matrix::identity(ring, n0)
    } else {
        kernel(ring, &d0)?
    };
    let mut v = vec![ring.zero(); n0];
    for j in 0..cycles.cols {
        if rng.gen_bool(0.3) {
            continue;
        }
        let c = ring.random_elem(rng, 2, max_deg);
        for (i, vi) in v.iter_mut().enumerate() {
            *vi = ring.add(vi, &ring.mul(&c, cycles.get(i, j)));
        }
    }
    let mut comps = BTreeMap::new();
    let mut offset = 0;
    for i in x.degrees() {
        let (r, c) = (y.rank(i), x.rank(i));
        if r * c == 0 {
            continue;
        }
        let mut f = Matrix::zero(ring, r, c);
        for a in 0..r {
            for b in 0..c {
                f.set(a, b, v[offset + a * c + b].clone());
            }
        }
        offset += r * c;
        comps.insert(i, f);
    }
    ChainMap::new(x, y, comps)
}

/// An object of the thick closure of the unit: shifts, finite sums and cones
/// along random maps, stopping before the total rank exceeds `4 * size`.
pub fn random_thick_complex<R: Rng>(rng: &mut R, ring: &Ring, size: usize) -> Result<FreeComplex> {
    let cap = 4 * size.max(1);
    let w = window(size);
    let mut pool = vec![FreeComplex::unit(ring)];
    for _ in 0..2 * size + 1 {
        let a = pool.choose(rng).unwrap().clone();
        let b = pool.choose(rng).unwrap().clone();
        let next = match rng.gen_range(0..3) {
            0 => a.shift(if rng.gen_bool(0.5) { 1 } else { -1 }),
            1 => a.direct_sum(&b)?,
            _ => random_chain_map(rng, &a, &b, 1)?.cone()?,
        };
        let inside = next.is_zero_complex() || (next.lo() >= -w && next.hi() <= w);
        if next.total_rank() <= cap && inside {
            pool.push(next);
        }
    }
    Ok(pool.pop().unwrap())
}

/// A module with one or two generators and a few random relations.
pub fn random_module<R: Rng>(rng: &mut R, ring: &Ring, size: usize) -> ModulePresentation {
    let gens = rng.gen_range(1..=size.clamp(1, 2));
    let nrel = rng.gen_range(0..=size.clamp(1, 3));
    let mut m = Matrix::zero(ring, gens, nrel);
    for i in 0..gens {
        for j in 0..nrel {
            m.set(i, j, ring.random_elem(rng, 3, 2));
        }
    }
    ModulePresentation::new(gens, m)
}

/// A dualisable object: a thick-closure complex or a module over a regular ring.
pub fn random_dualisable<R: Rng>(
    rng: &mut R,
    prime: &PrimeIdeal,
    size: usize,
) -> Result<GammaObject> {
    let ring = prime.ring();
    if rng.gen_bool(0.5) {
        GammaObject::from_complex(random_thick_complex(rng, ring, size)?, prime)
    } else {
        let m = random_module(rng, ring, size);
        let degree = rng.gen_range(-window(size)..=window(size));
        GammaObject::new(crate::resolutions::Carrier::module(ring, m, degree), prime)
    }
}

fn random_kind<R: Rng>(rng: &mut R, kinds: &[u8], size: usize) -> PieceKind {
    let top = size.clamp(1, 3) as u32;
    match *kinds.choose(rng).unwrap() {
        0 => PieceKind::FinCyclic(rng.gen_range(1..=top)),
        1 => PieceKind::Pruefer,
        2 => PieceKind::LocalFree(rng.gen_range(1..=top.min(2))),
        _ => PieceKind::AdicFree(rng.gen_range(1..=top.min(2))),
    }
}

fn random_sum<R: Rng>(rng: &mut R, kinds: &[u8], size: usize) -> TorsionInvariants {
    let w = window(size);
    let n = rng.gen_range(0..=2 * size);
    TorsionInvariants::new(
        (0..n).map(|_| Piece::new(rng.gen_range(-w..=w), random_kind(rng, kinds, size))),
    )
}

/// A finite sum of `FinCyclic` pieces.
pub fn random_compact_invariants<R: Rng>(rng: &mut R, size: usize) -> TorsionInvariants {
    random_sum(rng, &[0], size)
}

/// A finite sum of torsion pieces, `FinCyclic` and Prüfer.
pub fn random_dualisable_invariants<R: Rng>(rng: &mut R, size: usize) -> TorsionInvariants {
    random_sum(rng, &[0, 1], size)
}

/// A finite sum of pieces of all four types.
pub fn random_invariants<R: Rng>(rng: &mut R, size: usize) -> TorsionInvariants {
    random_sum(rng, &[0, 1, 2, 3], size)
}
