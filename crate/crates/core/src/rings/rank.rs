//! Rank over the fraction field of a domain by fraction-free elimination.

use super::matrix::Matrix;
use super::ring::Ring;
use crate::error::{Error, Result};

/// Rank of `m` over `Frac(ring)`, where `ring` is trusted to be a domain.
///
/// Rows are combined as `p * row - a * pivot_row`; a product of nonzero
/// elements that comes out zero exposes a zero divisor.
pub fn generic_rank(ring: &Ring, m: &Matrix) -> Result<usize> {
    if ring.is_field() {
        return field_rank(ring, m);
    }
    let mut a = m.clone();
    let mut rank = 0;
    let mut row = 0;
    for col in 0..a.cols {
        if row == a.rows {
            break;
        }
        let Some(piv) = (row..a.rows).find(|&i| !ring.is_zero(a.get(i, col))) else {
            continue;
        };
        if piv != row {
            for j in 0..a.cols {
                a.data.swap(piv * a.cols + j, row * a.cols + j);
            }
        }
        let p = a.get(row, col).clone();
        for i in row + 1..a.rows {
            let c = a.get(i, col).clone();
            if ring.is_zero(&c) {
                continue;
            }
            for j in col..a.cols {
                let x = a.get(i, j).clone();
                let px = ring.mul(&p, &x);
                if !ring.is_zero(&x) && ring.is_zero(&px) {
                    return Err(zero_divisor(ring, &p, &x));
                }
                let v = ring.sub(&px, &ring.mul(&c, a.get(row, j)));
                a.set(i, j, v);
            }
        }
        row += 1;
        rank += 1;
    }
    Ok(rank)
}

fn zero_divisor(ring: &Ring, a: &crate::rings::Elem, b: &crate::rings::Elem) -> Error {
    Error::InconsistentPrime(format!(
        "{} * {} = 0 in {}, so the residue ring is not a domain",
        ring.format(a),
        ring.format(b),
        ring.name()
    ))
}

fn field_rank(ring: &Ring, m: &Matrix) -> Result<usize> {
    let mut a = m.clone();
    let mut rank = 0;
    for col in 0..a.cols {
        if rank == a.rows {
            break;
        }
        let Some(piv) = (rank..a.rows).find(|&i| !ring.is_zero(a.get(i, col))) else {
            continue;
        };
        for j in 0..a.cols {
            a.data.swap(piv * a.cols + j, rank * a.cols + j);
        }
        let inv = ring
            .inverse(a.get(rank, col))
            .expect("nonzero field element");
        for i in rank + 1..a.rows {
            let c = ring.mul(a.get(i, col), &inv);
            if ring.is_zero(&c) {
                continue;
            }
            for j in col..a.cols {
                let v = ring.sub(a.get(i, j), &ring.mul(&c, a.get(rank, j)));
                a.set(i, j, v);
            }
        }
        rank += 1;
    }
    Ok(rank)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::ring::residue_ring;

    #[test]
    fn ranks_over_residue_domains() {
        let a = Ring::polynomial(0, &["x", "y"]).unwrap();
        let k = residue_ring(&a, &[a.parse("x").unwrap()]).unwrap();
        let e = |s: &str| k.parse(s).unwrap();
        let m = Matrix::from_rows(vec![vec![e("y")]], 1);
        assert_eq!(generic_rank(&k, &m).unwrap(), 1);
        let m = Matrix::from_rows(vec![vec![e("y"), e("y^2")], vec![e("1"), e("y")]], 2);
        assert_eq!(generic_rank(&k, &m).unwrap(), 1);
        let f5 = Ring::prime_field(5).unwrap();
        assert_eq!(generic_rank(&f5, &Matrix::identity(&f5, 2)).unwrap(), 2);
    }

    #[test]
    fn zero_divisor_is_reported() {
        let a = Ring::polynomial(0, &["x", "y"]).unwrap();
        let bad = residue_ring(&a, &[a.parse("x*y").unwrap()]).unwrap();
        let e = |s: &str| bad.parse(s).unwrap();
        // pivot x times entry y vanishes in Q[x,y]/(xy)
        let m2 = Matrix::from_rows(vec![vec![e("x"), e("0")], vec![e("x"), e("y")]], 2);
        assert!(matches!(
            generic_rank(&bad, &m2),
            Err(Error::InconsistentPrime(_))
        ));
    }
}
