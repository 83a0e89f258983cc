//! Bounded cohomological complexes of finitely generated free modules.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rings::{Elem, Matrix, MatrixStrings, Ring};

/// `X^n = R^{ranks[n - lo]}` with `d^n: X^n -> X^{n+1}`.
#[derive(Clone, Debug)]
pub struct FreeComplex {
    pub ring: Ring,
    lo: i64,
    ranks: Vec<usize>,
    /// `diffs[k]` is `d^{lo+k}`; one fewer than `ranks`.
    diffs: Vec<Matrix>,
}

/// Manifest form: `{ "degrees": [n0, n1], "ranks": [...], "differentials": { "n": rows } }`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexSpec {
    pub degrees: [i64; 2],
    pub ranks: Vec<usize>,
    #[serde(default)]
    pub differentials: BTreeMap<String, MatrixStrings>,
}

impl FreeComplex {
    pub fn new(ring: &Ring, lo: i64, ranks: Vec<usize>, diffs: Vec<Matrix>) -> Result<FreeComplex> {
        if !ranks.is_empty() && diffs.len() + 1 != ranks.len() {
            return Err(Error::InvalidComplex(format!(
                "{} ranks need {} differentials, got {}",
                ranks.len(),
                ranks.len() - 1,
                diffs.len()
            )));
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.cols != ranks[k] || d.rows != ranks[k + 1] {
                return Err(Error::InvalidComplex(format!(
                    "d^{} must be {}x{}, got {}x{}",
                    lo + k as i64,
                    ranks[k + 1],
                    ranks[k],
                    d.rows,
                    d.cols
                )));
            }
        }
        let x = FreeComplex {
            ring: ring.clone(),
            lo,
            ranks,
            diffs,
        }
        .trimmed();
        x.check_square_zero()?;
        Ok(x)
    }

    pub fn zero(ring: &Ring) -> FreeComplex {
        FreeComplex {
            ring: ring.clone(),
            lo: 0,
            ranks: vec![],
            diffs: vec![],
        }
    }

    /// `R^rank` concentrated in `degree`.
    pub fn free_module(ring: &Ring, rank: usize, degree: i64) -> FreeComplex {
        FreeComplex::new(ring, degree, vec![rank], vec![]).expect("one-term complex")
    }

    pub fn unit(ring: &Ring) -> FreeComplex {
        FreeComplex::free_module(ring, 1, 0)
    }

    /// Two-term complex `R^cols --m--> R^rows` with the source in degree `lo`.
    pub fn two_term(ring: &Ring, lo: i64, m: Matrix) -> FreeComplex {
        FreeComplex::new(ring, lo, vec![m.cols, m.rows], vec![m]).expect("two-term complex")
    }

    pub fn from_spec(ring: &Ring, spec: &ComplexSpec) -> Result<FreeComplex> {
        let [n0, n1] = spec.degrees;
        if n1 < n0 {
            return Err(Error::InvalidComplex(format!(
                "degrees [{n0}, {n1}] are reversed"
            )));
        }
        let len = (n1 - n0 + 1) as usize;
        if spec.ranks.len() != len {
            return Err(Error::InvalidComplex(format!(
                "degrees [{n0}, {n1}] need {len} ranks, got {}",
                spec.ranks.len()
            )));
        }
        for key in spec.differentials.keys() {
            let n: i64 = key.parse().map_err(|_| {
                Error::InvalidComplex(format!("differential key \"{key}\" is not a degree"))
            })?;
            if n < n0 || n >= n1 {
                return Err(Error::InvalidComplex(format!(
                    "differential d^{n} lies outside degrees [{n0}, {n1})"
                )));
            }
        }
        let mut diffs = Vec::with_capacity(len.saturating_sub(1));
        for k in 0..len.saturating_sub(1) {
            let n = n0 + k as i64;
            let (rows, cols) = (spec.ranks[k + 1], spec.ranks[k]);
            let d = match spec.differentials.get(&n.to_string()) {
                Some(m) => Matrix::parse(ring, rows, cols, m)
                    .map_err(|e| Error::InvalidComplex(format!("d^{n}: {e}")))?,
                None => Matrix::zero(ring, rows, cols),
            };
            diffs.push(d);
        }
        FreeComplex::new(ring, n0, spec.ranks.clone(), diffs)
    }

    pub fn to_spec(&self) -> ComplexSpec {
        if self.ranks.is_empty() {
            return ComplexSpec {
                degrees: [0, 0],
                ranks: vec![0],
                differentials: BTreeMap::new(),
            };
        }
        let mut differentials = BTreeMap::new();
        for (k, d) in self.diffs.iter().enumerate() {
            if !d.is_zero(&self.ring) {
                differentials.insert((self.lo + k as i64).to_string(), d.to_strings(&self.ring));
            }
        }
        ComplexSpec {
            degrees: [self.lo, self.hi()],
            ranks: self.ranks.clone(),
            differentials,
        }
    }

    /// Drops zero modules at both ends.
    fn trimmed(mut self) -> FreeComplex {
        while self.ranks.last() == Some(&0) {
            self.ranks.pop();
            self.diffs.pop();
        }
        while self.ranks.first() == Some(&0) {
            self.ranks.remove(0);
            if !self.diffs.is_empty() {
                self.diffs.remove(0);
            }
            self.lo += 1;
        }
        if self.ranks.is_empty() {
            self.lo = 0;
            self.diffs.clear();
        }
        self
    }

    fn check_square_zero(&self) -> Result<()> {
        for k in 1..self.diffs.len() {
            let dd = self.diffs[k].mul(&self.ring, &self.diffs[k - 1]);
            if !dd.is_zero(&self.ring) {
                return Err(Error::InvalidComplex(format!(
                    "d^{} d^{} is not zero",
                    self.lo + k as i64,
                    self.lo + k as i64 - 1
                )));
            }
        }
        Ok(())
    }

    pub fn is_zero_complex(&self) -> bool {
        self.ranks.is_empty()
    }

    /// Lowest degree carrying a nonzero module (0 for the zero complex).
    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.ranks.len() as i64 - 1
    }

    /// Degrees with (possibly) nonzero terms, lowest first.
    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        if self.ranks.is_empty() {
            #[allow(clippy::reversed_empty_ranges)]
            return 1..=0;
        }
        self.lo..=self.hi()
    }

    pub fn rank(&self, n: i64) -> usize {
        if n < self.lo {
            return 0;
        }
        self.ranks.get((n - self.lo) as usize).copied().unwrap_or(0)
    }

    /// `d^n: X^n -> X^{n+1}`, a zero matrix outside the support.
    pub fn d(&self, n: i64) -> Matrix {
        if n >= self.lo {
            if let Some(d) = self.diffs.get((n - self.lo) as usize) {
                return d.clone();
            }
        }
        Matrix::zero(&self.ring, self.rank(n + 1), self.rank(n))
    }

    pub fn total_rank(&self) -> usize {
        self.ranks.iter().sum()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.degrees()
            .map(|n| if n.rem_euclid(2) == 0 { 1 } else { -1 } * self.rank(n) as i64)
            .sum()
    }

    /// Builds a complex over the same ring from per-degree ranks and a differential callback.
    pub(crate) fn build<F>(
        ring: &Ring,
        lo: i64,
        hi: i64,
        rank: impl Fn(i64) -> usize,
        diff: F,
    ) -> Result<FreeComplex>
    where
        F: Fn(i64) -> Matrix,
    {
        if hi < lo {
            return Ok(FreeComplex::zero(ring));
        }
        let ranks: Vec<usize> = (lo..=hi).map(&rank).collect();
        let diffs: Vec<Matrix> = (lo..hi).map(diff).collect();
        FreeComplex::new(ring, lo, ranks, diffs)
    }

    /// `Σ^k X`: `(Σ^k X)^n = X^{n+k}` with differential `(-1)^k d`.
    pub fn shift(&self, k: i64) -> FreeComplex {
        if self.is_zero_complex() {
            return self.clone();
        }
        let sign = if k.rem_euclid(2) == 0 { 1 } else { -1 };
        let diffs = self
            .diffs
            .iter()
            .map(|d| {
                if sign == 1 {
                    d.clone()
                } else {
                    d.neg(&self.ring)
                }
            })
            .collect();
        FreeComplex {
            ring: self.ring.clone(),
            lo: self.lo - k,
            ranks: self.ranks.clone(),
            diffs,
        }
    }

    pub fn direct_sum(&self, other: &FreeComplex) -> Result<FreeComplex> {
        same_ring(self, other)?;
        if self.is_zero_complex() {
            return Ok(other.clone());
        }
        if other.is_zero_complex() {
            return Ok(self.clone());
        }
        let lo = self.lo.min(other.lo);
        let hi = self.hi().max(other.hi());
        FreeComplex::build(
            &self.ring,
            lo,
            hi,
            |n| self.rank(n) + other.rank(n),
            |n| Matrix::direct_sum(&self.ring, &self.d(n), &other.d(n)),
        )
    }

    /// Total complex with the Koszul sign `d(x⊗y) = dx⊗y + (-1)^{|x|} x⊗dy`.
    ///
    /// Degree `n` is the sum of `X^i ⊗ Y^{n-i}` over increasing `i`.
    pub fn tensor(&self, other: &FreeComplex) -> Result<FreeComplex> {
        same_ring(self, other)?;
        let ring = &self.ring;
        if self.is_zero_complex() || other.is_zero_complex() {
            return Ok(FreeComplex::zero(ring));
        }
        let lo = self.lo + other.lo;
        let hi = self.hi() + other.hi();
        let blocks = |n: i64| -> Vec<(i64, usize)> {
            self.degrees()
                .filter(|i| self.rank(*i) * other.rank(n - i) > 0)
                .map(|i| (i, self.rank(i) * other.rank(n - i)))
                .collect()
        };
        FreeComplex::build(
            ring,
            lo,
            hi,
            |n| blocks(n).iter().map(|b| b.1).sum(),
            |n| {
                let src = blocks(n);
                let dst = blocks(n + 1);
                let rows: usize = dst.iter().map(|b| b.1).sum();
                let cols: usize = src.iter().map(|b| b.1).sum();
                let mut m = Matrix::zero(ring, rows, cols);
                let offset = |bs: &[(i64, usize)], i: i64| -> Option<usize> {
                    let mut o = 0;
                    for (d, r) in bs {
                        if *d == i {
                            return Some(o);
                        }
                        o += r;
                    }
                    None
                };
                for &(i, _) in &src {
                    let j = n - i;
                    let c0 = offset(&src, i).unwrap();
                    // dx ⊗ y lands in (i+1, j)
                    if let Some(r0) = offset(&dst, i + 1) {
                        let blk = Matrix::kronecker(
                            ring,
                            &self.d(i),
                            &Matrix::identity(ring, other.rank(j)),
                        );
                        paste(&mut m, r0, c0, &blk);
                    }
                    // (-1)^i x ⊗ dy lands in (i, j+1)
                    if let Some(r0) = offset(&dst, i) {
                        let mut blk = Matrix::kronecker(
                            ring,
                            &Matrix::identity(ring, self.rank(i)),
                            &other.d(j),
                        );
                        if i.rem_euclid(2) == 1 {
                            blk = blk.neg(ring);
                        }
                        paste(&mut m, r0, c0, &blk);
                    }
                }
                m
            },
        )
    }

    /// `Hom^n = ∏_i Hom(X^i, Y^{i+n})` with `d(f) = d_Y f - (-1)^n f d_X`.
    ///
    /// A map `f_i` is stored row-major, and blocks are ordered by increasing `i`.
    pub fn hom(&self, target: &FreeComplex) -> Result<FreeComplex> {
        same_ring(self, target)?;
        let ring = &self.ring;
        if self.is_zero_complex() || target.is_zero_complex() {
            return Ok(FreeComplex::zero(ring));
        }
        let lo = target.lo - self.hi();
        let hi = target.hi() - self.lo;
        let blocks = |n: i64| -> Vec<(i64, usize)> {
            self.degrees()
                .filter(|i| self.rank(*i) * target.rank(i + n) > 0)
                .map(|i| (i, self.rank(i) * target.rank(i + n)))
                .collect()
        };
        FreeComplex::build(
            ring,
            lo,
            hi,
            |n| blocks(n).iter().map(|b| b.1).sum(),
            |n| {
                let src = blocks(n);
                let dst = blocks(n + 1);
                let rows: usize = dst.iter().map(|b| b.1).sum();
                let cols: usize = src.iter().map(|b| b.1).sum();
                let mut m = Matrix::zero(ring, rows, cols);
                let offset = |bs: &[(i64, usize)], i: i64| -> Option<usize> {
                    let mut o = 0;
                    for (d, r) in bs {
                        if *d == i {
                            return Some(o);
                        }
                        o += r;
                    }
                    None
                };
                for &(i, _) in &src {
                    let c0 = offset(&src, i).unwrap();
                    // f_i contributes d_Y f_i to the component X^i -> Y^{i+n+1}
                    if let Some(r0) = offset(&dst, i) {
                        let blk = Matrix::kronecker(
                            ring,
                            &target.d(i + n),
                            &Matrix::identity(ring, self.rank(i)),
                        );
                        paste(&mut m, r0, c0, &blk);
                    }
                    // and -(-1)^n f_i d_X to the component X^{i-1} -> Y^{i+n}
                    if let Some(r0) = offset(&dst, i - 1) {
                        let mut blk = Matrix::kronecker(
                            ring,
                            &Matrix::identity(ring, target.rank(i + n)),
                            &self.d(i - 1).transpose(),
                        );
                        if n.rem_euclid(2) == 0 {
                            blk = blk.neg(ring);
                        }
                        paste(&mut m, r0, c0, &blk);
                    }
                }
                m
            },
        )
    }

    /// Entrywise image under a ring map into `target`.
    pub fn base_change(&self, target: &Ring, f: impl Fn(&Elem) -> Elem) -> Result<FreeComplex> {
        let diffs = self.diffs.iter().map(|d| d.map(&f)).collect();
        FreeComplex::new(target, self.lo, self.ranks.clone(), diffs)
    }
}

pub(crate) fn same_ring(a: &FreeComplex, b: &FreeComplex) -> Result<()> {
    if a.ring != b.ring {
        return Err(Error::Usage(format!(
            "complexes over different rings ({} and {})",
            a.ring.name(),
            b.ring.name()
        )));
    }
    Ok(())
}

pub(crate) fn paste(m: &mut Matrix, r0: usize, c0: usize, blk: &Matrix) {
    for i in 0..blk.rows {
        for j in 0..blk.cols {
            m.set(r0 + i, c0 + j, blk.get(i, j).clone());
        }
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Koszul complex on `elems`, concentrated in degrees `-c..=0`.
///
/// `K^{-k}` has basis the `k`-subsets `S` (lexicographic), and
/// `d(e_S) = sum_j (-1)^j a_{s_j} e_{S \ s_j}`.
pub fn koszul(ring: &Ring, elems: &[Elem]) -> FreeComplex {
    let c = elems.len();
    let basis: Vec<Vec<Vec<usize>>> = (0..=c).map(|k| subsets(c, k)).collect();
    let ranks: Vec<usize> = (0..=c).rev().map(|k| basis[k].len()).collect();
    let mut diffs = Vec::new();
    for k in (1..=c).rev() {
        let src = &basis[k];
        let dst = &basis[k - 1];
        let mut m = Matrix::zero(ring, dst.len(), src.len());
        for (col, s) in src.iter().enumerate() {
            for (j, &sj) in s.iter().enumerate() {
                let rest: Vec<usize> = s.iter().copied().filter(|&t| t != sj).collect();
                let row = dst.iter().position(|t| *t == rest).unwrap();
                let a = &elems[sj];
                let v = if j % 2 == 0 { a.clone() } else { ring.neg(a) };
                m.set(row, col, v);
            }
        }
        diffs.push(m);
    }
    FreeComplex::new(ring, -(c as i64), ranks, diffs).expect("Koszul complexes square to zero")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> Ring {
        Ring::integers()
    }

    fn mult(r: &Ring, a: i64) -> FreeComplex {
        FreeComplex::two_term(r, -1, Matrix::from_rows(vec![vec![r.from_i64(a)]], 1))
    }

    #[test]
    fn rejects_bad_differentials() {
        let r = z();
        let one = Matrix::from_rows(vec![vec![r.one()]], 1);
        assert!(FreeComplex::new(&r, 0, vec![1, 1, 1], vec![one.clone(), one.clone()]).is_err());
        assert!(FreeComplex::new(&r, 0, vec![1, 2], vec![one]).is_err());
    }

    #[test]
    fn koszul_ranks_are_binomial() {
        let a = Ring::polynomial(0, &["x", "y", "z"]).unwrap();
        let e: Vec<Elem> = ["x", "y", "z"]
            .iter()
            .map(|s| a.parse(s).unwrap())
            .collect();
        let k = koszul(&a, &e);
        assert_eq!((k.lo(), k.hi()), (-3, 0));
        assert_eq!(
            (-3..=0).map(|n| k.rank(n)).collect::<Vec<_>>(),
            vec![1, 3, 3, 1]
        );
        assert_eq!(k.euler_characteristic(), 0);
        let empty = koszul(&a, &[]);
        assert_eq!((empty.lo(), empty.hi(), empty.rank(0)), (0, 0, 1));
    }

    #[test]
    fn shift_tensor_and_hom_shapes() {
        let r = z();
        let k = mult(&r, 5);
        let s = k.shift(3);
        assert_eq!((s.lo(), s.hi()), (-4, -3));
        let t = k.tensor(&k).unwrap();
        assert_eq!((t.lo(), t.hi()), (-2, 0));
        assert_eq!(t.rank(-1), 2);
        let h = k.hom(&FreeComplex::unit(&r)).unwrap();
        assert_eq!((h.lo(), h.hi()), (0, 1));
        let u = FreeComplex::unit(&r).hom(&k).unwrap();
        assert_eq!(u.to_spec(), k.to_spec());
        let ku = k.tensor(&FreeComplex::unit(&r)).unwrap();
        assert_eq!(ku.to_spec(), k.to_spec());
    }

    #[test]
    fn spec_round_trip() {
        let a = Ring::polynomial(0, &["x", "y"]).unwrap();
        let e: Vec<Elem> = ["x", "y"].iter().map(|s| a.parse(s).unwrap()).collect();
        let k = koszul(&a, &e);
        let spec = k.to_spec();
        let json = serde_json::to_string(&spec).unwrap();
        let back: ComplexSpec = serde_json::from_str(&json).unwrap();
        let k2 = FreeComplex::from_spec(&a, &back).unwrap();
        assert_eq!(k2.to_spec(), spec);
        let bad = r#"{"degrees":[0,1],"ranks":[1,1],"differentials":{"5":[["1"]]}}"#;
        let bad: ComplexSpec = serde_json::from_str(bad).unwrap();
        assert!(FreeComplex::from_spec(&a, &bad).is_err());
    }
}
