//! Chain maps between free complexes and their mapping cones.

use std::collections::BTreeMap;

use super::complex::{paste, same_ring, FreeComplex};
use super::homology::homology;
use crate::error::{Error, Result};
use crate::rings::{Elem, Matrix};

/// `f^n: X^n -> Y^n` (matrices of shape `rank Y^n x rank X^n`) with `d f = f d`.
#[derive(Clone, Debug)]
pub struct ChainMap {
    pub source: FreeComplex,
    pub target: FreeComplex,
    comps: BTreeMap<i64, Matrix>,
}

impl ChainMap {
    /// Missing components are zero.
    pub fn new(
        source: &FreeComplex,
        target: &FreeComplex,
        comps: BTreeMap<i64, Matrix>,
    ) -> Result<ChainMap> {
        same_ring(source, target)?;
        let ring = &source.ring;
        for (n, m) in &comps {
            if m.rows != target.rank(*n) || m.cols != source.rank(*n) {
                return Err(Error::InvalidComplex(format!(
                    "chain map component in degree {n} must be {}x{}, got {}x{}",
                    target.rank(*n),
                    source.rank(*n),
                    m.rows,
                    m.cols
                )));
            }
        }
        let f = ChainMap {
            source: source.clone(),
            target: target.clone(),
            comps,
        };
        let lo = source.lo().min(target.lo()) - 1;
        let hi = source.hi().max(target.hi());
        for n in lo..=hi {
            let lhs = target.d(n).mul(ring, &f.comp(n));
            let rhs = f.comp(n + 1).mul(ring, &source.d(n));
            if !lhs.add(ring, &rhs.neg(ring)).is_zero(ring) {
                return Err(Error::InvalidComplex(format!(
                    "chain map does not commute with the differentials in degree {n}"
                )));
            }
        }
        Ok(f)
    }

    pub fn comp(&self, n: i64) -> Matrix {
        self.comps.get(&n).cloned().unwrap_or_else(|| {
            Matrix::zero(&self.source.ring, self.target.rank(n), self.source.rank(n))
        })
    }

    pub fn identity(x: &FreeComplex) -> ChainMap {
        ChainMap::scalar(x, &x.ring.one())
    }

    /// Multiplication by a ring element.
    pub fn scalar(x: &FreeComplex, c: &Elem) -> ChainMap {
        let comps = x
            .degrees()
            .map(|n| (n, Matrix::identity(&x.ring, x.rank(n)).scale(&x.ring, c)))
            .collect();
        ChainMap {
            source: x.clone(),
            target: x.clone(),
            comps,
        }
    }

    pub fn zero(x: &FreeComplex, y: &FreeComplex) -> Result<ChainMap> {
        ChainMap::new(x, y, BTreeMap::new())
    }

    /// `self ∘ g`.
    pub fn compose(&self, g: &ChainMap) -> Result<ChainMap> {
        let ring = &self.source.ring;
        let comps = g
            .source
            .degrees()
            .map(|n| (n, self.comp(n).mul(ring, &g.comp(n))))
            .collect();
        ChainMap::new(&g.source, &self.target, comps)
    }

    /// `cone(f)^n = X^{n+1} ⊕ Y^n` with `d = [[-d_X, 0], [f, d_Y]]`.
    pub fn cone(&self) -> Result<FreeComplex> {
        let (x, y) = (&self.source, &self.target);
        let ring = &x.ring;
        let (lo, hi) = match (x.is_zero_complex(), y.is_zero_complex()) {
            (true, true) => return Ok(FreeComplex::zero(ring)),
            (true, false) => (y.lo(), y.hi()),
            (false, true) => (x.lo() - 1, x.hi() - 1),
            (false, false) => ((x.lo() - 1).min(y.lo()), (x.hi() - 1).max(y.hi())),
        };
        FreeComplex::build(
            ring,
            lo,
            hi,
            |n| x.rank(n + 1) + y.rank(n),
            |n| {
                Matrix::block(
                    &x.d(n + 1).neg(ring),
                    &Matrix::zero(ring, x.rank(n + 2), y.rank(n)),
                    &self.comp(n + 1),
                    &y.d(n),
                )
            },
        )
    }

    /// `f ⊗ g: X ⊗ Y -> X' ⊗ Y'`, blockwise `f^i ⊗ g^j`.
    pub fn tensor(&self, g: &ChainMap) -> Result<ChainMap> {
        let ring = &self.source.ring;
        let source = self.source.tensor(&g.source)?;
        let target = self.target.tensor(&g.target)?;
        let mut comps = BTreeMap::new();
        for n in source.degrees() {
            let src = blocks(&self.source, |i| g.source.rank(n - i));
            let dst = blocks(&self.target, |i| g.target.rank(n - i));
            let mut m = Matrix::zero(ring, target.rank(n), source.rank(n));
            for &(i, _) in &src {
                if let (Some(r0), Some(c0)) = (offset(&dst, i), offset(&src, i)) {
                    paste(
                        &mut m,
                        r0,
                        c0,
                        &Matrix::kronecker(ring, &self.comp(i), &g.comp(n - i)),
                    );
                }
            }
            comps.insert(n, m);
        }
        ChainMap::new(&source, &target, comps)
    }

    /// `Hom(pre, post): Hom(X, Y) -> Hom(X', Y')` for `pre: X' -> X` and `post: Y -> Y'`,
    /// sending `φ` to `post ∘ φ ∘ pre`.
    pub fn hom(pre: &ChainMap, post: &ChainMap) -> Result<ChainMap> {
        let ring = &pre.source.ring;
        let source = pre.target.hom(&post.source)?;
        let target = pre.source.hom(&post.target)?;
        let mut comps = BTreeMap::new();
        for n in source.degrees() {
            let src = blocks(&pre.target, |i| post.source.rank(i + n));
            let dst = blocks(&pre.source, |i| post.target.rank(i + n));
            let mut m = Matrix::zero(ring, target.rank(n), source.rank(n));
            for &(i, _) in &src {
                if let (Some(r0), Some(c0)) = (offset(&dst, i), offset(&src, i)) {
                    // row-major vec(G Φ F) = (G ⊗ Fᵀ) vec(Φ)
                    let blk = Matrix::kronecker(ring, &post.comp(i + n), &pre.comp(i).transpose());
                    paste(&mut m, r0, c0, &blk);
                }
            }
            comps.insert(n, m);
        }
        ChainMap::new(&source, &target, comps)
    }

    /// Quasi-isomorphism test: the cone is acyclic.
    pub fn is_quasi_iso(&self) -> Result<bool> {
        Ok(homology(&self.cone()?)?.is_zero())
    }
}

/// Nonzero summands `(i, rank X^i * other(i))` of a tensor or Hom term, in increasing `i`.
fn blocks(x: &FreeComplex, other: impl Fn(i64) -> usize) -> Vec<(i64, usize)> {
    x.degrees()
        .map(|i| (i, x.rank(i) * other(i)))
        .filter(|b| b.1 > 0)
        .collect()
}

fn offset(bs: &[(i64, usize)], i: i64) -> Option<usize> {
    let mut o = 0;
    for (d, r) in bs {
        if *d == i {
            return Some(o);
        }
        o += r;
    }
    None
}
