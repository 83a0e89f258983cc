//! Buchberger completion for ideals and submodules of free modules over a
//! polynomial ring, with optional cofactor tracking for syzygy extraction.

use std::collections::BTreeSet;

use crate::rings::poly::{self, MPoly, PolyCtx};

/// A basis element together with its expression in the original generators.
///
/// `repr` is a vector in `S^m` whose component `k` is the cofactor of input `k`.
#[derive(Clone, Debug)]
pub struct Tracked {
    pub vec: MPoly,
    pub repr: Option<MPoly>,
}

impl Tracked {
    pub fn plain(vec: MPoly) -> Self {
        Tracked { vec, repr: None }
    }
}

fn find_reducer<'a>(lt: &poly::Term, basis: &'a [Tracked]) -> Option<&'a Tracked> {
    basis.iter().find(|g| {
        let gl = g.vec.lead().expect("basis elements are nonzero");
        gl.comp == lt.comp && poly::divides(&gl.exps, &lt.exps)
    })
}

/// Full reduction of `f` by `basis`; cofactors are subtracted from `f.repr` as we go.
pub fn reduce_tracked(ctx: &PolyCtx, f: Tracked, basis: &[Tracked]) -> Tracked {
    let Tracked {
        vec: mut f,
        mut repr,
    } = f;
    let mut rem: Vec<poly::Term> = Vec::new();
    while let Some(lt) = f.lead().cloned() {
        match find_reducer(&lt, basis) {
            Some(g) => {
                let gl = g.vec.lead().unwrap();
                let m = poly::quotient(&lt.exps, &gl.exps);
                let c = ctx
                    .field
                    .div(&lt.coeff, &gl.coeff)
                    .expect("leading coefficient is nonzero");
                f = ctx.sub(&f, &ctx.mul_term(&m, &c, &g.vec));
                if let (Some(r), Some(gr)) = (repr.as_mut(), g.repr.as_ref()) {
                    *r = ctx.sub(r, &ctx.mul_term(&m, &c, gr));
                }
            }
            None => {
                rem.push(lt);
                f.terms.remove(0);
            }
        }
    }
    Tracked {
        vec: MPoly { terms: rem },
        repr,
    }
}

pub fn reduce(ctx: &PolyCtx, f: &MPoly, basis: &[MPoly]) -> MPoly {
    let tb: Vec<Tracked> = basis.iter().cloned().map(Tracked::plain).collect();
    reduce_tracked(ctx, Tracked::plain(f.clone()), &tb).vec
}

fn make_monic(ctx: &PolyCtx, t: Tracked) -> Tracked {
    let c = t.vec.lead().expect("nonzero").coeff.clone();
    let inv = ctx.field.inv(&c).expect("nonzero leading coefficient");
    Tracked {
        vec: ctx.scale(&inv, &t.vec),
        repr: t.repr.map(|r| ctx.scale(&inv, &r)),
    }
}

/// S-vector of two monic basis elements with equal leading component.
pub(crate) fn s_vector(ctx: &PolyCtx, a: &Tracked, b: &Tracked) -> Tracked {
    let (la, lb) = (a.vec.lead().unwrap(), b.vec.lead().unwrap());
    let l = poly::lcm(&la.exps, &lb.exps);
    let ma = poly::quotient(&l, &la.exps);
    let mb = poly::quotient(&l, &lb.exps);
    let ca = ctx.field.inv(&la.coeff).unwrap();
    let cb = ctx.field.inv(&lb.coeff).unwrap();
    let vec = ctx.sub(
        &ctx.mul_term(&ma, &ca, &a.vec),
        &ctx.mul_term(&mb, &cb, &b.vec),
    );
    let repr = match (&a.repr, &b.repr) {
        (Some(ra), Some(rb)) => {
            Some(ctx.sub(&ctx.mul_term(&ma, &ca, ra), &ctx.mul_term(&mb, &cb, rb)))
        }
        _ => None,
    };
    Tracked { vec, repr }
}

fn pair_key(basis: &[Tracked], i: usize, j: usize) -> (u32, usize, usize) {
    let (li, lj) = (basis[i].vec.lead().unwrap(), basis[j].vec.lead().unwrap());
    (poly::degree(&poly::lcm(&li.exps, &lj.exps)), i, j)
}

/// Reduced Gröbner basis (monic, inter-reduced) with cofactors carried along.
pub fn groebner_tracked(ctx: &PolyCtx, gens: Vec<Tracked>) -> Vec<Tracked> {
    let mut basis: Vec<Tracked> = Vec::new();
    for g in gens {
        let r = reduce_tracked(ctx, g, &basis);
        if !r.vec.is_zero() {
            basis.push(make_monic(ctx, r));
        }
    }
    let mut pending: BTreeSet<(u32, usize, usize)> = BTreeSet::new();
    let mut live: BTreeSet<(usize, usize)> = BTreeSet::new();
    for j in 0..basis.len() {
        for i in 0..j {
            if basis[i].vec.lead().unwrap().comp == basis[j].vec.lead().unwrap().comp {
                pending.insert(pair_key(&basis, i, j));
                live.insert((i, j));
            }
        }
    }
    let ideal_case = basis.iter().all(|g| g.vec.max_comp() == Some(0));
    while let Some(key) = pending.iter().next().cloned() {
        pending.remove(&key);
        let (_, i, j) = key;
        live.remove(&(i, j));
        let (li, lj) = (
            basis[i].vec.lead().unwrap().clone(),
            basis[j].vec.lead().unwrap().clone(),
        );
        // the product criterion only holds for ideals
        if ideal_case && poly::coprime(&li.exps, &lj.exps) {
            continue;
        }
        let l = poly::lcm(&li.exps, &lj.exps);
        let chain = (0..basis.len()).any(|k| {
            if k == i || k == j {
                return false;
            }
            let lk = basis[k].vec.lead().unwrap();
            lk.comp == li.comp
                && poly::divides(&lk.exps, &l)
                && !live.contains(&(i.min(k), i.max(k)))
                && !live.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let s = s_vector(ctx, &basis[i], &basis[j]);
        let r = reduce_tracked(ctx, s, &basis);
        if r.vec.is_zero() {
            continue;
        }
        let r = make_monic(ctx, r);
        let comp = r.vec.lead().unwrap().comp;
        let n = basis.len();
        basis.push(r);
        for k in 0..n {
            if basis[k].vec.lead().unwrap().comp == comp {
                pending.insert(pair_key(&basis, k, n));
                live.insert((k, n));
            }
        }
    }
    interreduce(ctx, basis)
}

fn interreduce(ctx: &PolyCtx, basis: Vec<Tracked>) -> Vec<Tracked> {
    // drop elements whose leading term is divisible by an earlier-kept one
    let mut kept: Vec<Tracked> = Vec::new();
    let mut order: Vec<usize> = (0..basis.len()).collect();
    order
        .sort_by(|&a, &b| ctx.cmp_term(basis[a].vec.lead().unwrap(), basis[b].vec.lead().unwrap()));
    for idx in order {
        let lt = basis[idx].vec.lead().unwrap();
        let redundant = kept.iter().any(|k| {
            let kl = k.vec.lead().unwrap();
            kl.comp == lt.comp && poly::divides(&kl.exps, &lt.exps)
        }) || basis.iter().enumerate().any(|(o, k)| {
            if o == idx {
                return false;
            }
            let kl = k.vec.lead().unwrap();
            kl.comp == lt.comp && poly::divides(&kl.exps, &lt.exps) && kl.exps != lt.exps
        });
        if !redundant {
            kept.push(basis[idx].clone());
        }
    }
    let mut out = Vec::with_capacity(kept.len());
    for i in 0..kept.len() {
        let others: Vec<Tracked> = kept
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, t)| t.clone())
            .collect();
        let r = reduce_tracked(ctx, kept[i].clone(), &others);
        out.push(make_monic(ctx, r));
    }
    out.sort_by(|a, b| ctx.cmp_term(b.vec.lead().unwrap(), a.vec.lead().unwrap()));
    out
}

/// Reduced Gröbner basis of the submodule (or ideal) spanned by `gens`.
pub fn groebner(ctx: &PolyCtx, gens: &[MPoly]) -> Vec<MPoly> {
    groebner_tracked(ctx, gens.iter().cloned().map(Tracked::plain).collect())
        .into_iter()
        .map(|t| t.vec)
        .collect()
}

pub fn is_unit_ideal(gb: &[MPoly]) -> bool {
    gb.iter().any(|g| g.is_constant() && !g.is_zero())
}

/// Generators of the syzygy module of `gens ⊂ S^r`, as vectors in `S^m`.
///
/// Uses Schreyer's theorem: the S-vector reductions of the tracked Gröbner
/// basis generate the syzygies of the basis, which are pulled back to the
/// input generators through the cofactor matrix.
pub fn syzygies(ctx: &PolyCtx, gens: &[MPoly]) -> Vec<MPoly> {
    let mut out: Vec<MPoly> = Vec::new();
    let tracked: Vec<Tracked> = gens
        .iter()
        .enumerate()
        .filter(|(_, g)| !g.is_zero())
        .map(|(k, g)| Tracked {
            vec: g.clone(),
            repr: Some(ctx.basis_vector(k)),
        })
        .collect();
    for (k, g) in gens.iter().enumerate() {
        if g.is_zero() {
            out.push(ctx.basis_vector(k));
        }
    }
    let gb = groebner_tracked(ctx, tracked.clone());
    for t in tracked {
        let r = reduce_tracked(ctx, t, &gb);
        debug_assert!(r.vec.is_zero());
        if let Some(rep) = r.repr {
            if !rep.is_zero() {
                out.push(rep);
            }
        }
    }
    for j in 0..gb.len() {
        for i in 0..j {
            if gb[i].vec.lead().unwrap().comp != gb[j].vec.lead().unwrap().comp {
                continue;
            }
            let s = s_vector(ctx, &gb[i], &gb[j]);
            let r = reduce_tracked(ctx, s, &gb);
            debug_assert!(r.vec.is_zero());
            if let Some(rep) = r.repr {
                if !rep.is_zero() {
                    out.push(rep);
                }
            }
        }
    }
    if out.is_empty() {
        return out;
    }
    groebner(ctx, &out)
}

/// Krull dimension of `S/I` from a Gröbner basis of `I`: the size of a largest
/// set of variables no leading monomial is supported on; `-1` for the unit ideal.
pub fn ideal_dimension(ctx: &PolyCtx, gb: &[MPoly]) -> i64 {
    if is_unit_ideal(gb) {
        return -1;
    }
    let n = ctx.nvars();
    let leads: Vec<Vec<u32>> = gb
        .iter()
        .filter_map(|g| g.lead().map(|t| t.exps.clone()))
        .collect();
    let mut best = 0i64;
    for mask in 0u32..(1u32 << n) {
        let size = mask.count_ones() as i64;
        if size <= best {
            continue;
        }
        let ok = leads.iter().all(|e| {
            e.iter()
                .enumerate()
                .any(|(i, d)| *d > 0 && mask & (1 << i) == 0)
        });
        if ok {
            best = size;
        }
    }
    best
}

/// True iff every vector in `a` reduces to zero modulo the Gröbner basis `gb`.
pub fn all_reduce_to_zero(ctx: &PolyCtx, a: &[MPoly], gb: &[MPoly]) -> bool {
    a.iter().all(|v| reduce(ctx, v, gb).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::field::BaseField;
    use crate::rings::poly::MonomialOrder;
    use crate::rings::Ring;
    use proptest::prelude::*;

    fn ctx(vars: &[&str]) -> PolyCtx {
        PolyCtx::new(
            BaseField::Rationals,
            vars.iter().map(|s| s.to_string()).collect(),
            MonomialOrder::Degrevlex,
        )
    }

    fn polys(c: &PolyCtx, items: &[&str]) -> Vec<MPoly> {
        let r = Ring::new(&crate::rings::RingDescriptor::Polynomial {
            base: Box::new(crate::rings::RingDescriptor::Rationals {}),
            vars: c.vars.clone(),
            order: c.order,
        })
        .unwrap();
        items
            .iter()
            .map(|s| r.lift(&r.parse(s).unwrap()).unwrap())
            .collect()
    }

    /// Textbook Buchberger without criteria, followed by reduction; the oracle
    /// the optimised completion is checked against.
    fn naive(c: &PolyCtx, gens: &[MPoly]) -> Vec<MPoly> {
        let mut g: Vec<MPoly> = gens
            .iter()
            .filter(|f| !f.is_zero())
            .map(|f| c.monic(f))
            .collect();
        loop {
            let mut added = false;
            let n = g.len();
            for i in 0..n {
                for j in i + 1..n {
                    let s = s_vector(
                        c,
                        &Tracked::plain(g[i].clone()),
                        &Tracked::plain(g[j].clone()),
                    )
                    .vec;
                    let r = reduce(c, &s, &g);
                    if !r.is_zero() {
                        g.push(c.monic(&r));
                        added = true;
                    }
                }
            }
            if !added {
                break;
            }
        }
        // minimalise and reduce
        let mut min: Vec<MPoly> = Vec::new();
        for (i, f) in g.iter().enumerate() {
            let lf = &f.lead().unwrap().exps;
            let dominated = g.iter().enumerate().any(|(j, h)| {
                let lh = &h.lead().unwrap().exps;
                j != i && poly::divides(lh, lf) && (lh != lf || j < i)
            });
            if !dominated {
                min.push(f.clone());
            }
        }
        let mut out: Vec<MPoly> = (0..min.len())
            .map(|i| {
                let others: Vec<MPoly> = min
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != i)
                    .map(|(_, h)| h.clone())
                    .collect();
                c.monic(&reduce(c, &min[i], &others))
            })
            .collect();
        out.sort_by(|a, b| c.cmp_term(b.lead().unwrap(), a.lead().unwrap()));
        out
    }

    #[test]
    fn golden_bases() {
        let c = ctx(&["x", "y"]);
        let fmt = |gb: &[MPoly]| gb.iter().map(|g| c.format(g)).collect::<Vec<_>>();
        assert_eq!(fmt(&groebner(&c, &polys(&c, &["x"]))), vec!["x"]);
        assert_eq!(fmt(&groebner(&c, &polys(&c, &["1"]))), vec!["1"]);
        let gens = polys(&c, &["x^2 - y", "y^2 - x"]);
        let gb = groebner(&c, &gens);
        assert_eq!(gb, naive(&c, &gens));
        assert_eq!(fmt(&gb), vec!["x^2 - y", "y^2 - x"]);
        let gens = polys(&c, &["x^2*y - 1", "x*y^2 - x"]);
        assert_eq!(groebner(&c, &gens), naive(&c, &gens));
    }

    #[test]
    fn ideal_dimension_golden_set() {
        let cases: Vec<(&[&str], &[&str], i64)> = vec![
            (&["x", "y"], &["x"], 1),
            (&["x", "y"], &["x", "y"], 0),
            (&["x", "y"], &["1"], -1),
            (&["x", "y"], &[], 2),
            (&["x", "y"], &["x*y"], 1),
            (&["x", "y"], &["x^2", "x*y"], 1),
            (&["x", "y"], &["x - y^2", "y - x^2"], 0),
            (&["x", "y", "z"], &["x*y", "y*z", "x*z"], 1),
            (&["x", "y", "z"], &["x*y*z"], 2),
            (&["x", "y"], &["x^2 + y^2 - 1"], 1),
            (&["x", "y", "z"], &["x", "y", "z"], 0),
        ];
        for (vars, gens, dim) in cases {
            let c = ctx(vars);
            let gb = groebner(&c, &polys(&c, gens));
            assert_eq!(ideal_dimension(&c, &gb), dim, "{gens:?}");
        }
    }

    #[test]
    fn module_syzygies_vanish() {
        let c = ctx(&["x", "y", "z"]);
        let g = polys(&c, &["x*y", "y*z", "x*z", "x^2 - z"]);
        let syz = syzygies(&c, &g);
        assert!(!syz.is_empty());
        for s in &syz {
            let mut acc = MPoly::zero();
            for (k, f) in g.iter().enumerate() {
                acc = c.add(&acc, &c.mul(&s.component(k), f));
            }
            assert!(acc.is_zero());
        }
    }

    fn arb_poly(c: PolyCtx) -> impl Strategy<Value = MPoly> {
        proptest::collection::vec((0u32..3, 0u32..3, -3i64..=3), 0..4).prop_map(move |ts| {
            let terms = ts
                .into_iter()
                .map(|(a, b, k)| poly::Term {
                    exps: vec![a, b],
                    comp: 0,
                    coeff: c.field.from_i64(k),
                })
                .collect();
            c.from_terms(terms)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn ideal_members_reduce_to_zero(a in arb_poly(ctx(&["x", "y"])), b in arb_poly(ctx(&["x", "y"]))) {
            let c = ctx(&["x", "y"]);
            let gens = polys(&c, &["x^2 - y", "x*y - 1"]);
            let gb = groebner(&c, &gens);
            let f = c.add(&c.mul(&a, &gens[0]), &c.mul(&b, &gens[1]));
            prop_assert!(reduce(&c, &f, &gb).is_zero());
            prop_assert_eq!(&gb, &naive(&c, &gens));
        }

        #[test]
        fn normal_form_is_idempotent(a in arb_poly(ctx(&["x", "y"]))) {
            let c = ctx(&["x", "y"]);
            let gb = groebner(&c, &polys(&c, &["x^2 - y^3", "x*y^2 + 1"]));
            let r = reduce(&c, &a, &gb);
            prop_assert_eq!(reduce(&c, &r, &gb), r);
        }
    }
}
