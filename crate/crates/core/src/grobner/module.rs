//! Submodules of free modules over any ring of the tower: kernels, membership,
//! colon ideals, saturation and annihilators.
//!
//! Polynomial rings and their quotients go through module Gröbner bases on the
//! polynomial cover (a quotient `S/J` contributes the generators `J e_c`);
//! principal rings go through Smith normal form; fields through row reduction.

use serde::Serialize;

use super::buchberger::{self, groebner, syzygies};
use crate::error::{Error, Result};
use crate::rings::principal;
use crate::rings::ring::{Kind, PrincipalKind};
use crate::rings::{Elem, MPoly, Matrix, PolyCtx, Ring};

/// Cokernel of `relations: R^k -> R^ambient_rank`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModulePresentation {
    pub ambient_rank: usize,
    /// `ambient_rank` rows; each column is one relation.
    pub relations: Matrix,
}

/// A submodule of a presented module: generators in the ambient free module
/// together with a presentation of the submodule itself.
#[derive(Clone, Debug)]
pub struct Submodule {
    pub generators: Matrix,
    pub presentation: ModulePresentation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PresentationStrings {
    pub ambient_rank: usize,
    pub relations: Vec<Vec<String>>,
}

impl ModulePresentation {
    pub fn new(ambient_rank: usize, relations: Matrix) -> Self {
        assert_eq!(
            relations.rows, ambient_rank,
            "relation columns live in the ambient module"
        );
        ModulePresentation {
            ambient_rank,
            relations,
        }
    }

    pub fn free(ring: &Ring, rank: usize) -> Self {
        ModulePresentation::new(rank, Matrix::zero(ring, rank, 0))
    }

    /// `R / (gens)`.
    pub fn cyclic(gens: &[Elem]) -> Self {
        ModulePresentation::new(1, Matrix::from_rows(vec![gens.to_vec()], gens.len()))
    }

    pub fn to_strings(&self, ring: &Ring) -> PresentationStrings {
        PresentationStrings {
            ambient_rank: self.ambient_rank,
            relations: self.relations.to_strings(ring).0,
        }
    }
}

enum Engine<'a> {
    Field,
    Principal,
    Groebner(&'a PolyCtx, &'a [MPoly]),
}

fn engine(ring: &Ring) -> Result<Engine<'_>> {
    match ring.principal_kind() {
        Some(PrincipalKind::Field) => return Ok(Engine::Field),
        Some(PrincipalKind::Chain) => return Ok(Engine::Principal),
        Some(PrincipalKind::Euclidean) if matches!(ring.kind(), Kind::Integers) => {
            return Ok(Engine::Principal)
        }
        _ => {}
    }
    match ring.kind() {
        Kind::Poly(ctx) => Ok(Engine::Groebner(ctx, &[])),
        Kind::Quotient { ctx, rels, .. } => Ok(Engine::Groebner(ctx, rels)),
        _ => Err(Error::Usage(format!(
            "module computations are not supported over {}",
            ring.name()
        ))),
    }
}

fn col_vector(ctx: &PolyCtx, ring: &Ring, col: &[Elem]) -> MPoly {
    let polys: Vec<MPoly> = col
        .iter()
        .map(|e| ring.lift(e).expect("polynomial entry"))
        .collect();
    ctx.vector(&polys)
}

fn vector_col(ring: &Ring, v: &MPoly, len: usize) -> Vec<Elem> {
    (0..len)
        .map(|c| ring.from_poly(&v.component(c)).expect("polynomial ring"))
        .collect()
}

/// Columns of `A` together with `J e_c`, as vectors over the cover.
fn cover_generators(ctx: &PolyCtx, rels: &[MPoly], ring: &Ring, a: &Matrix) -> Vec<MPoly> {
    let mut gens: Vec<MPoly> = a
        .columns()
        .iter()
        .map(|c| col_vector(ctx, ring, c))
        .collect();
    for c in 0..a.rows {
        for r in rels {
            gens.push(r.clone().shift_comps(c));
        }
    }
    gens
}

/// Generators of `ker(m: R^cols -> R^rows)` as the columns of a matrix.
pub fn kernel(ring: &Ring, m: &Matrix) -> Result<Matrix> {
    if m.cols == 0 {
        return Ok(Matrix::zero(ring, 0, 0));
    }
    match engine(ring)? {
        Engine::Field => Ok(field_kernel(ring, m)),
        Engine::Principal => principal::kernel(ring, m),
        Engine::Groebner(ctx, rels) => {
            let n = m.cols;
            if m.rows == 0 {
                return Ok(Matrix::identity(ring, n));
            }
            let gens = cover_generators(ctx, rels, ring, m);
            let syz = syzygies(ctx, &gens);
            // project onto the first n coordinates, i.e. the columns of m
            let mut projected: Vec<MPoly> = Vec::new();
            for s in syz {
                let mut terms = s.terms;
                terms.retain(|t| t.comp < n);
                let v = MPoly { terms };
                let v = reduce_componentwise(ctx, rels, &v, n);
                if !v.is_zero() {
                    projected.push(v);
                }
            }
            let basis = canonical_generators(ctx, rels, &projected, n);
            let cols: Vec<Vec<Elem>> = basis.iter().map(|v| vector_col(ring, v, n)).collect();
            Ok(Matrix::from_cols(ring, n, &cols))
        }
    }
}

fn reduce_componentwise(ctx: &PolyCtx, rels: &[MPoly], v: &MPoly, n: usize) -> MPoly {
    if rels.is_empty() {
        return v.clone();
    }
    let parts: Vec<MPoly> = (0..n)
        .map(|c| buchberger::reduce(ctx, &v.component(c), rels))
        .collect();
    ctx.vector(&parts)
}

/// Reduced Gröbner basis of the submodule generated by `vs` modulo `J`,
/// with the `J e_c` part discarded.
fn canonical_generators(ctx: &PolyCtx, rels: &[MPoly], vs: &[MPoly], n: usize) -> Vec<MPoly> {
    if vs.is_empty() {
        return Vec::new();
    }
    let mut gens = vs.to_vec();
    for c in 0..n {
        for r in rels {
            gens.push(r.clone().shift_comps(c));
        }
    }
    let gb = groebner(ctx, &gens);
    gb.into_iter()
        .map(|g| reduce_componentwise(ctx, rels, &g, n))
        .filter(|g| !g.is_zero())
        .collect()
}

fn field_kernel(ring: &Ring, m: &Matrix) -> Matrix {
    let (rref, pivots) = rref(ring, m);
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    let mut cols = Vec::new();
    for &f in &free {
        let mut v = vec![ring.zero(); m.cols];
        v[f] = ring.one();
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = ring.neg(rref.get(r, f));
        }
        cols.push(v);
    }
    Matrix::from_cols(ring, m.cols, &cols)
}

/// Reduced row echelon form over a field, with the pivot columns.
pub(crate) fn rref(ring: &Ring, m: &Matrix) -> (Matrix, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..a.cols {
        if row == a.rows {
            break;
        }
        let Some(p) = (row..a.rows).find(|&i| !ring.is_zero(a.get(i, col))) else {
            continue;
        };
        for j in 0..a.cols {
            a.data.swap(p * a.cols + j, row * a.cols + j);
        }
        let inv = ring.inverse(a.get(row, col)).expect("field");
        for j in 0..a.cols {
            let v = ring.mul(&inv, a.get(row, j));
            a.set(row, j, v);
        }
        for i in 0..a.rows {
            if i == row || ring.is_zero(a.get(i, col)) {
                continue;
            }
            let c = a.get(i, col).clone();
            for j in 0..a.cols {
                let v = ring.sub(a.get(i, j), &ring.mul(&c, a.get(row, j)));
                a.set(i, j, v);
            }
        }
        pivots.push(col);
        row += 1;
    }
    (a, pivots)
}

/// Whether the column `v` lies in the span of the columns of `gens`.
pub fn contains(ring: &Ring, gens: &Matrix, v: &[Elem]) -> Result<bool> {
    assert_eq!(gens.rows, v.len());
    if v.iter().all(|e| ring.is_zero(e)) {
        return Ok(true);
    }
    if gens.cols == 0 {
        return Ok(false);
    }
    match engine(ring)? {
        Engine::Field => {
            let r0 = rref(ring, gens).1.len();
            let aug = Matrix::hcat(gens, &Matrix::from_cols(ring, v.len(), &[v.to_vec()]));
            Ok(rref(ring, &aug).1.len() == r0)
        }
        Engine::Principal => {
            let s = principal::smith(ring, gens)?;
            let ub = s.u.apply(ring, v);
            for (i, x) in ub.iter().enumerate() {
                if i < s.rank {
                    let (_, r) = principal::div_rem(ring, x, &s.diag[i]);
                    if !ring.is_zero(&r) {
                        return Ok(false);
                    }
                } else if !ring.is_zero(x) {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        Engine::Groebner(ctx, rels) => {
            let gb = groebner(ctx, &cover_generators(ctx, rels, ring, gens));
            let f = col_vector(ctx, ring, v);
            Ok(buchberger::reduce(ctx, &f, &gb).is_zero())
        }
    }
}

/// Whether every column of `a` lies in the span of the columns of `b`.
pub fn span_contains(ring: &Ring, b: &Matrix, a: &Matrix) -> Result<bool> {
    for j in 0..a.cols {
        if !contains(ring, b, &a.col(j))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Drops generators that lie in the span of the remaining ones.
pub fn prune_generators(ring: &Ring, m: &Matrix) -> Result<Matrix> {
    let mut keep: Vec<usize> = (0..m.cols)
        .filter(|&j| !m.col(j).iter().all(|e| ring.is_zero(e)))
        .collect();
    let mut j = keep.len();
    while j > 0 {
        j -= 1;
        let others: Vec<usize> = keep.iter().copied().filter(|&c| c != keep[j]).collect();
        if contains(ring, &m.select_cols(&others), &m.col(keep[j]))? {
            keep.remove(j);
        }
    }
    Ok(m.select_cols(&keep))
}

/// Presentation of the submodule of `R^m / rel` generated by the columns of `gens`.
pub fn present_submodule(ring: &Ring, rel: &Matrix, gens: &Matrix) -> Result<ModulePresentation> {
    let s = gens.cols;
    let k = kernel(ring, &Matrix::hcat(gens, rel))?;
    let rows: Vec<usize> = (0..s).collect();
    let r = k.select_rows(&rows);
    let keep: Vec<usize> = (0..r.cols)
        .filter(|&j| !r.col(j).iter().all(|e| ring.is_zero(e)))
        .collect();
    Ok(ModulePresentation::new(s, r.select_cols(&keep)))
}

/// `{ v in R^m : g v in span(sub) for every g in ideal }`, where `sub` contains `rel`.
fn module_colon(ring: &Ring, sub: &Matrix, ideal: &[Elem], m: usize) -> Result<Matrix> {
    if ideal.is_empty() {
        return Ok(Matrix::identity(ring, m));
    }
    let t = ideal.len();
    // [g_1 I | sub 0 ..; g_2 I | 0 sub ..; ...]
    let rows = t * m;
    let cols = m + t * sub.cols;
    let mut big = Matrix::zero(ring, rows, cols);
    for (k, g) in ideal.iter().enumerate() {
        for i in 0..m {
            big.set(k * m + i, i, g.clone());
            for j in 0..sub.cols {
                big.set(k * m + i, m + k * sub.cols + j, sub.get(i, j).clone());
            }
        }
    }
    let ker = kernel(ring, &big)?;
    let rows: Vec<usize> = (0..m).collect();
    Ok(ker.select_rows(&rows))
}

/// `(0 :_N I^inf)` for `N = R^m / rel`, by iterated colon until the chain stabilises.
pub fn saturation(ring: &Ring, n: &ModulePresentation, ideal: &[Elem]) -> Result<Submodule> {
    let m = n.ambient_rank;
    let rel = &n.relations;
    let mut cur = rel.clone();
    loop {
        let next = Matrix::hcat(&module_colon(ring, &cur, ideal, m)?, rel);
        if span_contains(ring, &cur, &next)? {
            break;
        }
        cur = next;
    }
    // generators modulo rel, pruned
    let gens = drop_in_span(ring, &cur, rel)?;
    let presentation = present_submodule(ring, rel, &gens)?;
    Ok(Submodule {
        generators: gens,
        presentation,
    })
}

fn drop_in_span(ring: &Ring, a: &Matrix, rel: &Matrix) -> Result<Matrix> {
    let mut keep = Vec::new();
    for j in 0..a.cols {
        if !contains(ring, rel, &a.col(j))? {
            keep.push(j);
        }
    }
    let sel = a.select_cols(&keep);
    if sel.cols <= 1 {
        return Ok(sel);
    }
    // drop generators spanned by the others together with rel
    let mut idx: Vec<usize> = (0..sel.cols).collect();
    let mut j = idx.len();
    while j > 0 {
        j -= 1;
        let others: Vec<usize> = idx.iter().copied().filter(|&c| c != idx[j]).collect();
        let span = Matrix::hcat(&sel.select_cols(&others), rel);
        if contains(ring, &span, &sel.col(idx[j]))? {
            idx.remove(j);
        }
    }
    Ok(sel.select_cols(&idx))
}

// ---- ideals ----

fn ideal_row(ring: &Ring, gens: &[Elem]) -> Matrix {
    let _ = ring;
    Matrix::from_rows(vec![gens.to_vec()], gens.len())
}

/// `I : g = { f : f g in I }`.
pub fn colon_element(ring: &Ring, ideal: &[Elem], g: &Elem) -> Result<Vec<Elem>> {
    let mut row = vec![g.clone()];
    row.extend_from_slice(ideal);
    let k = kernel(ring, &Matrix::from_rows(vec![row.clone()], row.len()))?;
    Ok(clean_ideal(ring, k.row(0)))
}

/// `I ∩ J` via the kernel of `[[1, I, 0], [1, 0, J]]`.
pub fn intersect(ring: &Ring, a: &[Elem], b: &[Elem]) -> Result<Vec<Elem>> {
    if a.is_empty() || b.is_empty() {
        return Ok(Vec::new());
    }
    let cols = 1 + a.len() + b.len();
    let mut m = Matrix::zero(ring, 2, cols);
    m.set(0, 0, ring.one());
    m.set(1, 0, ring.one());
    for (j, x) in a.iter().enumerate() {
        m.set(0, 1 + j, x.clone());
    }
    for (j, x) in b.iter().enumerate() {
        m.set(1, 1 + a.len() + j, x.clone());
    }
    let k = kernel(ring, &m)?;
    Ok(clean_ideal(ring, k.row(0)))
}

/// `I : J`.
pub fn colon(ring: &Ring, a: &[Elem], b: &[Elem]) -> Result<Vec<Elem>> {
    let mut acc: Option<Vec<Elem>> = None;
    for g in b.iter().filter(|g| !ring.is_zero(g)) {
        let c = colon_element(ring, a, g)?;
        acc = Some(match acc {
            None => c,
            Some(prev) => intersect(ring, &prev, &c)?,
        });
    }
    Ok(acc.unwrap_or_else(|| vec![ring.one()]))
}

/// `I : J^inf`.
pub fn ideal_saturation(ring: &Ring, a: &[Elem], b: &[Elem]) -> Result<Vec<Elem>> {
    let mut cur = clean_ideal(ring, a.to_vec());
    loop {
        let next = colon(ring, &cur, b)?;
        if ideal_contains_all(ring, &cur, &next)? {
            return Ok(cur);
        }
        cur = next;
    }
}

pub fn ideal_contains(ring: &Ring, ideal: &[Elem], f: &Elem) -> Result<bool> {
    contains(ring, &ideal_row(ring, ideal), std::slice::from_ref(f))
}

pub fn ideal_contains_all(ring: &Ring, ideal: &[Elem], fs: &[Elem]) -> Result<bool> {
    for f in fs {
        if !ideal_contains(ring, ideal, f)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `ann(R^m / rel) = ∩_c (rel : e_c)`.
pub fn annihilator(ring: &Ring, n: &ModulePresentation) -> Result<Vec<Elem>> {
    let m = n.ambient_rank;
    let mut acc: Option<Vec<Elem>> = None;
    for c in 0..m {
        let mut e = Matrix::zero(ring, m, 1);
        e.set(c, 0, ring.one());
        let k = kernel(ring, &Matrix::hcat(&e, &n.relations))?;
        let ideal = clean_ideal(ring, k.row(0));
        acc = Some(match acc {
            None => ideal,
            Some(prev) => intersect(ring, &prev, &ideal)?,
        });
    }
    Ok(acc.unwrap_or_else(|| vec![ring.one()]))
}

fn clean_ideal(ring: &Ring, gens: Vec<Elem>) -> Vec<Elem> {
    let mut out: Vec<Elem> = Vec::new();
    for g in gens {
        if !ring.is_zero(&g) && !out.contains(&g) {
            out.push(g);
        }
    }
    out
}

// ---- dimension data ----

/// Module Gröbner basis over the cover for `R^m / rel` (including `J e_c`).
pub(crate) fn presentation_gb(
    ring: &Ring,
    n: &ModulePresentation,
) -> Option<(PolyCtx, Vec<MPoly>)> {
    let (ctx, rels) = match ring.kind() {
        Kind::Poly(ctx) => (ctx, &[][..]),
        Kind::Quotient { ctx, rels, .. } => (ctx, rels.as_slice()),
        _ => return None,
    };
    let gens = cover_generators(ctx, rels, ring, &n.relations);
    Some((ctx.clone(), groebner(ctx, &gens)))
}

/// Leading exponents in component `c`, and per-variable bounds when the
/// quotient in that component is finite-dimensional.
fn component_leads(gb: &[MPoly], c: usize, nv: usize) -> Option<(Vec<Vec<u32>>, Vec<u32>)> {
    let leads: Vec<Vec<u32>> = gb
        .iter()
        .filter_map(|g| g.lead())
        .filter(|t| t.comp == c)
        .map(|t| t.exps.clone())
        .collect();
    // finite iff each variable has a pure power among the leading monomials
    let mut bounds = Vec::with_capacity(nv);
    for i in 0..nv {
        let b = leads
            .iter()
            .filter(|e| e.iter().enumerate().all(|(j, d)| j == i || *d == 0))
            .map(|e| e[i])
            .min()?;
        bounds.push(b);
    }
    Some((leads, bounds))
}

/// Vector-space dimension over the coefficient field, when finite.
pub fn k_dimension(ring: &Ring, n: &ModulePresentation) -> Option<u64> {
    if ring.is_field() {
        let r = rref(ring, &n.relations).1.len();
        return Some((n.ambient_rank - r) as u64);
    }
    let (ctx, gb) = presentation_gb(ring, n)?;
    let mut total = 0u64;
    for c in 0..n.ambient_rank {
        let (leads, bounds) = component_leads(&gb, c, ctx.nvars())?;
        total += standard(&leads, &bounds).len() as u64;
    }
    Some(total)
}

/// Exponents of the standard monomials of `ring`, a basis over the
/// coefficient field when the ring is finite-dimensional.
pub fn standard_monomials(ring: &Ring) -> Option<Vec<Vec<u32>>> {
    let (ctx, gb) = presentation_gb(ring, &ModulePresentation::free(ring, 1))?;
    let (leads, bounds) = component_leads(&gb, 0, ctx.nvars())?;
    Some(standard(&leads, &bounds))
}

fn standard(leads: &[Vec<u32>], bounds: &[u32]) -> Vec<Vec<u32>> {
    let n = bounds.len();
    let mut e = vec![0u32; n];
    let mut out = Vec::new();
    if bounds.contains(&0) {
        return out;
    }
    loop {
        if !leads.iter().any(|l| l.iter().zip(&e).all(|(a, b)| a <= b)) {
            out.push(e.clone());
        }
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            e[i] += 1;
            if e[i] < bounds[i] {
                break;
            }
            e[i] = 0;
            i += 1;
        }
    }
}

/// Krull dimension of the support, `dim R / ann(N)`; `-1` for the zero module.
pub fn module_dimension(ring: &Ring, n: &ModulePresentation) -> Result<i64> {
    let ann = annihilator(ring, n)?;
    ideal_quotient_dimension(ring, &ann)
}

/// `dim R / I`.
pub fn ideal_quotient_dimension(ring: &Ring, ideal: &[Elem]) -> Result<i64> {
    if ideal.iter().any(|g| ring.is_unit(g)) {
        return Ok(-1);
    }
    match ring.kind() {
        Kind::Poly(ctx) | Kind::Quotient { ctx, .. } => {
            let mut gens: Vec<MPoly> = ring.relations().to_vec();
            gens.extend(ideal.iter().map(|g| ring.lift(g).unwrap()));
            let gb = groebner(ctx, &gens);
            Ok(buchberger::ideal_dimension(ctx, &gb))
        }
        _ if ring.is_field() => Ok(0),
        _ => {
            // principal rings of dimension one
            let nonzero = ideal.iter().any(|g| !ring.is_zero(g));
            Ok(if nonzero { 0 } else { ring.krull_dimension() })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qxy() -> Ring {
        Ring::polynomial(0, &["x", "y"]).unwrap()
    }

    fn row(r: &Ring, items: &[&str]) -> Matrix {
        Matrix::from_rows(
            vec![items.iter().map(|s| r.parse(s).unwrap()).collect()],
            items.len(),
        )
    }

    #[test]
    fn koszul_syzygy() {
        let r = qxy();
        let m = row(&r, &["x", "y"]);
        let k = kernel(&r, &m).unwrap();
        assert_eq!(k.cols, 1);
        let col: Vec<String> = k.col(0).iter().map(|e| r.format(e)).collect();
        // unique up to sign; the reduced basis is monic in the leading position
        assert_eq!(col, vec!["y", "-x"]);
        assert!(m.mul(&r, &k).is_zero(&r));
    }

    #[test]
    fn kernels_in_the_small_examples() {
        let qx = Ring::polynomial(0, &["x"]).unwrap();
        assert_eq!(kernel(&qx, &row(&qx, &["x"])).unwrap().cols, 0);
        let dual = qx.quotient(&["x^2"]).unwrap();
        let k = kernel(&dual, &row(&dual, &["x"])).unwrap();
        assert_eq!(k.cols, 1);
        assert_eq!(dual.format(k.get(0, 0)), "x");
    }

    #[test]
    fn saturation_examples() {
        let z = Ring::integers();
        let n = ModulePresentation::cyclic(&[z.from_i64(12)]);
        let t = saturation(&z, &n, &[z.from_i64(2)]).unwrap();
        assert_eq!(t.generators.cols, 1);
        assert_eq!(
            z.format(t.generators.get(0, 0)).trim_start_matches('-'),
            "3"
        );
        let f = principal::invariant_factors(&z, &t.presentation.relations).unwrap();
        assert_eq!(f, vec![z.from_i64(4)]);

        let a = qxy();
        let x = a.parse("x").unwrap();
        let n = ModulePresentation::cyclic(std::slice::from_ref(&x));
        let t = saturation(&a, &n, std::slice::from_ref(&x)).unwrap();
        assert!(contains(&a, &Matrix::hcat(&t.generators, &n.relations), &[a.one()]).unwrap());
        let free = ModulePresentation::free(&a, 1);
        let t = saturation(&a, &free, &[x]).unwrap();
        assert_eq!(t.generators.cols, 0);
    }

    #[test]
    fn annihilators_and_colons() {
        let a = qxy();
        let e = |s: &str| a.parse(s).unwrap();
        let ann = annihilator(&a, &ModulePresentation::cyclic(&[e("x^2"), e("x*y")])).unwrap();
        assert!(ideal_contains(&a, &ann, &e("x*y")).unwrap());
        assert!(!ideal_contains(&a, &ann, &e("x")).unwrap());
        let c = colon(&a, &[e("x^2"), e("x*y")], &[e("x")]).unwrap();
        assert!(ideal_contains_all(&a, &c, &[e("x"), e("y")]).unwrap());
        let s = ideal_saturation(&a, &[e("x^2"), e("x*y")], &[e("x"), e("y")]).unwrap();
        assert!(ideal_contains(&a, &s, &e("x")).unwrap());
        assert!(!ideal_contains(&a, &s, &e("y")).unwrap());
    }

    #[test]
    fn dimension_data() {
        let a = qxy();
        let e = |s: &str| a.parse(s).unwrap();
        let pt = ModulePresentation::cyclic(&[e("x^2"), e("y^3")]);
        assert_eq!(k_dimension(&a, &pt), Some(6));
        assert_eq!(module_dimension(&a, &pt).unwrap(), 0);
        let line = ModulePresentation::cyclic(&[e("x")]);
        assert_eq!(k_dimension(&a, &line), None);
        assert_eq!(module_dimension(&a, &line).unwrap(), 1);
    }
}
