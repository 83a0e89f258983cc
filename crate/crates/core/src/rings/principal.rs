//! Smith normal form with transforms over the principal rings of the tower.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::Matrix;
use super::poly::{self, MPoly};
use super::ring::{Elem, Kind, PrincipalKind, Ring};
use crate::error::{Error, Result};

/// `u * m * v = diag(d_0, ..., d_{rank-1}, 0, ...)` with `d_i | d_{i+1}`.
#[derive(Clone, Debug)]
pub struct Smith {
    pub u: Matrix,
    pub v: Matrix,
    /// Normalised nonzero diagonal entries.
    pub diag: Vec<Elem>,
    pub rank: usize,
}

fn valuation_int(x: &BigInt, p: &BigInt, cap: u32) -> u32 {
    if x.is_zero() {
        return cap;
    }
    let mut v = 0;
    let mut y = x.clone();
    while (&y % p).is_zero() && v < cap {
        y /= p;
        v += 1;
    }
    v
}

fn low_degree(f: &MPoly) -> u32 {
    f.terms.iter().map(|t| t.exps[0]).min().unwrap_or(u32::MAX)
}

/// Size used for Euclidean pivoting: absolute value, degree or valuation.
pub(crate) fn norm(ring: &Ring, a: &Elem) -> BigInt {
    match (ring.kind(), a) {
        (Kind::Integers, Elem::Int(x)) => x.abs(),
        (Kind::Poly(_), Elem::Poly(f)) => BigInt::from(f.total_degree()),
        (Kind::PadicTrunc { p, precision, .. }, Elem::Int(x)) => {
            BigInt::from(valuation_int(x, p, *precision))
        }
        (Kind::Quotient { trunc: Some(n), .. }, Elem::Poly(f)) => {
            BigInt::from(if f.is_zero() { *n } else { low_degree(f) })
        }
        _ => BigInt::zero(),
    }
}

/// Division with remainder: `a = q*b + r` with `r = 0` or `norm(r) < norm(b)`.
pub fn div_rem(ring: &Ring, a: &Elem, b: &Elem) -> (Elem, Elem) {
    match (ring.kind(), a, b) {
        (Kind::Integers, Elem::Int(x), Elem::Int(y)) => {
            let (q, r) = x.div_rem(y);
            (Elem::Int(q), Elem::Int(r))
        }
        (Kind::Poly(ctx), Elem::Poly(f), Elem::Poly(g)) => {
            let gl = g.lead().expect("nonzero divisor").clone();
            let mut rem = f.clone();
            let mut q = MPoly::zero();
            while let Some(lt) = rem.lead().cloned() {
                if lt.exps[0] < gl.exps[0] {
                    break;
                }
                let m = poly::quotient(&lt.exps, &gl.exps);
                let c = ctx.field.div(&lt.coeff, &gl.coeff).unwrap();
                q = ctx.add(&q, &ctx.monomial(m.clone(), 0, c.clone()));
                rem = ctx.sub(&rem, &ctx.mul_term(&m, &c, g));
            }
            (Elem::Poly(q), Elem::Poly(rem))
        }
        (Kind::PadicTrunc { .. }, _, _) | (Kind::Quotient { trunc: Some(_), .. }, _, _) => {
            if norm(ring, a) < norm(ring, b) {
                return (ring.zero(), a.clone());
            }
            let (pb, ub) = split_uniformiser(ring, b);
            let (pa, ua) = split_uniformiser(ring, a);
            let shift = pa - pb;
            let pi = uniformiser(ring);
            let inv = ring.inverse(&ub).expect("unit part");
            let q = ring.mul(&ring.mul(&ring.pow(&pi, shift), &ua), &inv);
            (q, ring.zero())
        }
        _ => match ring.div_unit(a, b) {
            Some(q) => (q, ring.zero()),
            None => (ring.zero(), a.clone()),
        },
    }
}

fn uniformiser(ring: &Ring) -> Elem {
    match ring.kind() {
        Kind::PadicTrunc { p, .. } => ring.from_int(p),
        _ => ring.var(0).expect("univariate"),
    }
}

/// `a = pi^v * u` with `u` a unit (or `u = 0` when `a = 0`).
pub(crate) fn split_uniformiser(ring: &Ring, a: &Elem) -> (u32, Elem) {
    match (ring.kind(), a) {
        (Kind::PadicTrunc { p, precision, .. }, Elem::Int(x)) => {
            let v = valuation_int(x, p, *precision);
            if x.is_zero() {
                return (v, ring.zero());
            }
            (v, ring.from_int(&(x / p.pow(v))))
        }
        (
            Kind::Quotient {
                ctx,
                trunc: Some(n),
                ..
            },
            Elem::Poly(f),
        ) => {
            if f.is_zero() {
                return (*n, ring.zero());
            }
            let v = low_degree(f);
            let shifted = MPoly {
                terms: f
                    .terms
                    .iter()
                    .map(|t| poly::Term {
                        exps: vec![t.exps[0] - v],
                        ..t.clone()
                    })
                    .collect(),
            };
            (v, ring.from_poly(&ctx.from_terms(shifted.terms)).unwrap())
        }
        _ => (0, a.clone()),
    }
}

/// Unit `u` such that `u * a` is the canonical associate (positive, monic, `pi^v`, or 1).
pub(crate) fn normalising_unit(ring: &Ring, a: &Elem) -> Elem {
    if ring.is_zero(a) {
        return ring.one();
    }
    match (ring.kind(), a) {
        (Kind::Integers, Elem::Int(x)) => ring.from_i64(if x.is_negative() { -1 } else { 1 }),
        (Kind::Poly(ctx), Elem::Poly(f)) => {
            Elem::Poly(ctx.constant(ctx.field.inv(&f.lead().unwrap().coeff).unwrap()))
        }
        (Kind::PadicTrunc { .. }, _) | (Kind::Quotient { trunc: Some(_), .. }, _) => {
            let (_, u) = split_uniformiser(ring, a);
            ring.inverse(&u).expect("unit part")
        }
        _ => ring.inverse(a).unwrap_or_else(|| ring.one()),
    }
}

fn swap_rows(m: &mut Matrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    for j in 0..m.cols {
        m.data.swap(a * m.cols + j, b * m.cols + j);
    }
}

fn swap_cols(m: &mut Matrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    for i in 0..m.rows {
        m.data.swap(i * m.cols + a, i * m.cols + b);
    }
}

/// row_i -= q * row_t
fn row_axpy(ring: &Ring, m: &mut Matrix, i: usize, t: usize, q: &Elem) {
    for j in 0..m.cols {
        let x = m.get(t, j);
        if ring.is_zero(x) {
            continue;
        }
        let v = ring.sub(m.get(i, j), &ring.mul(q, x));
        m.set(i, j, v);
    }
}

/// col_j -= q * col_t
fn col_axpy(ring: &Ring, m: &mut Matrix, j: usize, t: usize, q: &Elem) {
    for i in 0..m.rows {
        let x = m.get(i, t);
        if ring.is_zero(x) {
            continue;
        }
        let v = ring.sub(m.get(i, j), &ring.mul(q, x));
        m.set(i, j, v);
    }
}

pub fn smith(ring: &Ring, m: &Matrix) -> Result<Smith> {
    let kind = ring.principal_kind().ok_or_else(|| {
        Error::UnsupportedRing(format!(
            "Smith normal form is not available over {}",
            ring.name()
        ))
    })?;
    let mut a = m.clone();
    let mut u = Matrix::identity(ring, m.rows);
    let mut v = Matrix::identity(ring, m.cols);
    let mut rank = 0;
    let steps = m.rows.min(m.cols);
    'outer: for t in 0..steps {
        loop {
            let mut best: Option<(BigInt, usize, usize)> = None;
            for i in t..a.rows {
                for j in t..a.cols {
                    let e = a.get(i, j);
                    if ring.is_zero(e) {
                        continue;
                    }
                    let n = norm(ring, e);
                    if best.as_ref().is_none_or(|(b, _, _)| n < *b) {
                        best = Some((n, i, j));
                    }
                }
            }
            let Some((_, pi, pj)) = best else {
                break 'outer;
            };
            swap_rows(&mut a, t, pi);
            swap_rows(&mut u, t, pi);
            swap_cols(&mut a, t, pj);
            swap_cols(&mut v, t, pj);
            let pivot = a.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..a.rows {
                if ring.is_zero(a.get(i, t)) {
                    continue;
                }
                let (q, r) = div_rem(ring, a.get(i, t), &pivot);
                row_axpy(ring, &mut a, i, t, &q);
                row_axpy(ring, &mut u, i, t, &q);
                if !ring.is_zero(&r) {
                    clean = false;
                }
            }
            for j in t + 1..a.cols {
                if ring.is_zero(a.get(t, j)) {
                    continue;
                }
                let (q, r) = div_rem(ring, a.get(t, j), &pivot);
                col_axpy(ring, &mut a, j, t, &q);
                col_axpy(ring, &mut v, j, t, &q);
                if !ring.is_zero(&r) {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            if kind == PrincipalKind::Euclidean {
                // enforce d_t | every remaining entry
                let mut bad_row = None;
                'scan: for i in t + 1..a.rows {
                    for j in t + 1..a.cols {
                        let (_, r) = div_rem(ring, a.get(i, j), &pivot);
                        if !ring.is_zero(&r) {
                            bad_row = Some(i);
                            break 'scan;
                        }
                    }
                }
                if let Some(i) = bad_row {
                    let minus_one = ring.from_i64(-1);
                    row_axpy(ring, &mut a, t, i, &minus_one);
                    row_axpy(ring, &mut u, t, i, &minus_one);
                    continue;
                }
            }
            break;
        }
        let unit = normalising_unit(ring, a.get(t, t));
        for j in 0..a.cols {
            let x = ring.mul(&unit, a.get(t, j));
            a.set(t, j, x);
        }
        for j in 0..u.cols {
            let x = ring.mul(&unit, u.get(t, j));
            u.set(t, j, x);
        }
        rank += 1;
    }
    let diag = (0..rank).map(|t| a.get(t, t).clone()).collect();
    Ok(Smith { u, v, diag, rank })
}

/// Canonical invariant factors of the cokernel: the non-unit diagonal entries.
pub fn invariant_factors(ring: &Ring, m: &Matrix) -> Result<Vec<Elem>> {
    let s = smith(ring, m)?;
    Ok(s.diag.into_iter().filter(|d| !ring.is_unit(d)).collect())
}

pub fn rank(ring: &Ring, m: &Matrix) -> Result<usize> {
    Ok(smith(ring, m)?.rank)
}

/// Kernel generators (as columns) over a principal ring.
///
/// Over chain rings the kernel is the one over the completed DVR the ring
/// approximates, which is what homology modulo the precision ideal needs.
pub fn kernel(ring: &Ring, m: &Matrix) -> Result<Matrix> {
    let s = smith(ring, m)?;
    let idx: Vec<usize> = (s.rank..m.cols).collect();
    Ok(s.v.select_cols(&idx))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zmat(rows: &[&[i64]]) -> Matrix {
        let z = Ring::integers();
        let cols = rows[0].len();
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| z.from_i64(v)).collect())
                .collect(),
            cols,
        )
    }

    #[test]
    fn integer_smith_with_transforms() {
        let z = Ring::integers();
        let m = zmat(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let s = smith(&z, &m).unwrap();
        let d = s.u.mul(&z, &m).mul(&z, &s.v);
        let fmt: Vec<String> = s.diag.iter().map(|e| z.format(e)).collect();
        assert_eq!(fmt, vec!["2", "6", "12"]);
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    assert!(z.is_zero(d.get(i, j)));
                } else {
                    assert_eq!(d.get(i, i), &s.diag[i]);
                }
            }
        }
    }

    #[test]
    fn kernel_columns_are_killed() {
        let z = Ring::integers();
        let m = zmat(&[&[1, 2, 3], &[2, 4, 6]]);
        let k = kernel(&z, &m).unwrap();
        assert_eq!(k.cols, 2);
        assert!(m.mul(&z, &k).is_zero(&z));
    }

    #[test]
    fn univariate_polynomial_smith() {
        let r = Ring::polynomial(0, &["x"]).unwrap();
        let e = |s: &str| r.parse(s).unwrap();
        let m = Matrix::from_rows(
            vec![vec![e("x^2 - 1"), e("0")], vec![e("0"), e("x + 1")]],
            2,
        );
        let f: Vec<String> = invariant_factors(&r, &m)
            .unwrap()
            .iter()
            .map(|d| r.format(d))
            .collect();
        assert_eq!(f, vec!["x + 1", "x^2 - 1"]);
    }
}
