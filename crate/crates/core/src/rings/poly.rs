//! Sparse multivariate polynomials and free-module vectors over a coefficient field.
//!
//! A single representation serves both: every term carries a component index,
//! and a polynomial is simply a vector living entirely in component 0. Terms are
//! kept strictly descending in the position-over-term order (lower component
//! index ranks higher, ties broken by the monomial order).

use std::cmp::Ordering;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::field::{BaseField, Coeff};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum MonomialOrder {
    Lex,
    Deglex,
    #[default]
    Degrevlex,
}

impl MonomialOrder {
    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        match self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::Deglex => {
                let (da, db) = (degree(a), degree(b));
                da.cmp(&db).then_with(|| a.cmp(b))
            }
            MonomialOrder::Degrevlex => {
                let (da, db) = (degree(a), degree(b));
                da.cmp(&db).then_with(|| {
                    for i in (0..a.len()).rev() {
                        if a[i] != b[i] {
                            return b[i].cmp(&a[i]);
                        }
                    }
                    Ordering::Equal
                })
            }
        }
    }
}

pub fn degree(e: &[u32]) -> u32 {
    e.iter().sum()
}

pub fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub fn lcm(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

pub fn quotient(b: &[u32], a: &[u32]) -> Vec<u32> {
    b.iter().zip(a).map(|(x, y)| x - y).collect()
}

pub fn coprime(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub exps: Vec<u32>,
    pub comp: usize,
    pub coeff: Coeff,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct MPoly {
    pub terms: Vec<Term>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest component index that carries a term, if any.
    pub fn max_comp(&self) -> Option<usize> {
        self.terms.iter().map(|t| t.comp).max()
    }

    pub fn total_degree(&self) -> i64 {
        self.terms
            .iter()
            .map(|t| degree(&t.exps) as i64)
            .max()
            .unwrap_or(-1)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.exps.iter().all(|e| *e == 0))
    }

    /// Terms of one component, re-homed into component 0.
    pub fn component(&self, comp: usize) -> MPoly {
        MPoly {
            terms: self
                .terms
                .iter()
                .filter(|t| t.comp == comp)
                .map(|t| Term {
                    comp: 0,
                    ..t.clone()
                })
                .collect(),
        }
    }

    /// Moves every term to `comp + offset`; ordering is preserved.
    pub fn shift_comps(mut self, offset: usize) -> MPoly {
        for t in &mut self.terms {
            t.comp += offset;
        }
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyCtx {
    pub field: BaseField,
    pub vars: Vec<String>,
    pub order: MonomialOrder,
}

impl PolyCtx {
    pub fn new(field: BaseField, vars: Vec<String>, order: MonomialOrder) -> Self {
        PolyCtx { field, vars, order }
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn cmp_mono(&self, a: &[u32], b: &[u32]) -> Ordering {
        self.order.cmp(a, b)
    }

    pub fn cmp_term(&self, a: &Term, b: &Term) -> Ordering {
        b.comp
            .cmp(&a.comp)
            .then_with(|| self.order.cmp(&a.exps, &b.exps))
    }

    pub fn zero_exps(&self) -> Vec<u32> {
        vec![0; self.nvars()]
    }

    pub fn constant(&self, c: Coeff) -> MPoly {
        self.monomial(self.zero_exps(), 0, c)
    }

    pub fn one(&self) -> MPoly {
        self.constant(self.field.one())
    }

    pub fn from_i64(&self, v: i64) -> MPoly {
        self.constant(self.field.from_i64(v))
    }

    pub fn var(&self, i: usize) -> MPoly {
        let mut e = self.zero_exps();
        e[i] = 1;
        self.monomial(e, 0, self.field.one())
    }

    pub fn monomial(&self, exps: Vec<u32>, comp: usize, c: Coeff) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: vec![Term {
                exps,
                comp,
                coeff: c,
            }],
        }
    }

    /// Unit basis vector `e_comp`.
    pub fn basis_vector(&self, comp: usize) -> MPoly {
        self.monomial(self.zero_exps(), comp, self.field.one())
    }

    fn merge(&self, a: &MPoly, b: &MPoly, negate_b: bool) -> MPoly {
        let f = &self.field;
        let mut out = Vec::with_capacity(a.terms.len() + b.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < a.terms.len() && j < b.terms.len() {
            let (ta, tb) = (&a.terms[i], &b.terms[j]);
            match self.cmp_term(ta, tb) {
                Ordering::Greater => {
                    out.push(ta.clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate_b {
                        f.neg(&tb.coeff)
                    } else {
                        tb.coeff.clone()
                    };
                    out.push(Term {
                        coeff: c,
                        ..tb.clone()
                    });
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_b {
                        f.sub(&ta.coeff, &tb.coeff)
                    } else {
                        f.add(&ta.coeff, &tb.coeff)
                    };
                    if !c.is_zero() {
                        out.push(Term {
                            coeff: c,
                            ..ta.clone()
                        });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a.terms[i..].iter().cloned());
        for tb in &b.terms[j..] {
            let c = if negate_b {
                f.neg(&tb.coeff)
            } else {
                tb.coeff.clone()
            };
            out.push(Term {
                coeff: c,
                ..tb.clone()
            });
        }
        MPoly { terms: out }
    }

    pub fn add(&self, a: &MPoly, b: &MPoly) -> MPoly {
        self.merge(a, b, false)
    }

    pub fn sub(&self, a: &MPoly, b: &MPoly) -> MPoly {
        self.merge(a, b, true)
    }

    pub fn neg(&self, a: &MPoly) -> MPoly {
        MPoly {
            terms: a
                .terms
                .iter()
                .map(|t| Term {
                    coeff: self.field.neg(&t.coeff),
                    ..t.clone()
                })
                .collect(),
        }
    }

    pub fn scale(&self, c: &Coeff, a: &MPoly) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: a
                .terms
                .iter()
                .map(|t| Term {
                    coeff: self.field.mul(c, &t.coeff),
                    ..t.clone()
                })
                .collect(),
        }
    }

    /// `c * x^exps * a`; monomial multiplication preserves the term order.
    pub fn mul_term(&self, exps: &[u32], c: &Coeff, a: &MPoly) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: a
                .terms
                .iter()
                .map(|t| Term {
                    exps: t.exps.iter().zip(exps).map(|(x, y)| x + y).collect(),
                    comp: t.comp,
                    coeff: self.field.mul(c, &t.coeff),
                })
                .collect(),
        }
    }

    /// Product of a scalar polynomial `a` (component 0) with a vector `b`.
    pub fn mul(&self, a: &MPoly, b: &MPoly) -> MPoly {
        if a.is_zero() || b.is_zero() {
            return MPoly::zero();
        }
        if a.terms.len() == 1 {
            let t = &a.terms[0];
            return self.mul_term(&t.exps, &t.coeff, b);
        }
        let mut prods: Vec<Term> = Vec::with_capacity(a.terms.len() * b.terms.len());
        for ta in &a.terms {
            for tb in &b.terms {
                prods.push(Term {
                    exps: ta.exps.iter().zip(&tb.exps).map(|(x, y)| x + y).collect(),
                    comp: tb.comp,
                    coeff: self.field.mul(&ta.coeff, &tb.coeff),
                });
            }
        }
        prods.sort_by(|x, y| self.cmp_term(y, x));
        let mut out: Vec<Term> = Vec::with_capacity(prods.len());
        for t in prods {
            if let Some(last) = out.last_mut() {
                if last.comp == t.comp && last.exps == t.exps {
                    last.coeff = self.field.add(&last.coeff, &t.coeff);
                    continue;
                }
            }
            out.push(t);
        }
        out.retain(|t| !t.coeff.is_zero());
        MPoly { terms: out }
    }

    pub fn pow(&self, a: &MPoly, mut e: u32) -> MPoly {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Scales so the leading coefficient is one.
    pub fn monic(&self, a: &MPoly) -> MPoly {
        match a.lead() {
            None => MPoly::zero(),
            Some(t) => {
                let inv = self
                    .field
                    .inv(&t.coeff)
                    .expect("leading coefficient is nonzero");
                self.scale(&inv, a)
            }
        }
    }

    /// Re-sorts and combines terms; used after building polynomials term by term.
    pub fn from_terms(&self, mut terms: Vec<Term>) -> MPoly {
        terms.sort_by(|x, y| self.cmp_term(y, x));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            if let Some(last) = out.last_mut() {
                if last.comp == t.comp && last.exps == t.exps {
                    last.coeff = self.field.add(&last.coeff, &t.coeff);
                    continue;
                }
            }
            out.push(t);
        }
        out.retain(|t| !t.coeff.is_zero());
        MPoly { terms: out }
    }

    /// Vector with `polys[i]` in component `i`.
    pub fn vector(&self, polys: &[MPoly]) -> MPoly {
        let mut terms = Vec::new();
        for (i, p) in polys.iter().enumerate() {
            for t in &p.terms {
                terms.push(Term {
                    comp: i,
                    ..t.clone()
                });
            }
        }
        // POT with component-major order keeps this already sorted.
        MPoly { terms }
    }

    pub fn format_mono(&self, exps: &[u32]) -> String {
        let parts: Vec<String> = exps
            .iter()
            .enumerate()
            .filter(|(_, e)| **e > 0)
            .map(|(i, e)| {
                if *e == 1 {
                    self.vars[i].clone()
                } else {
                    format!("{}^{}", self.vars[i], e)
                }
            })
            .collect();
        parts.join("*")
    }

    /// Renders a polynomial (component 0) in the manifest syntax.
    pub fn format(&self, a: &MPoly) -> String {
        if a.is_zero() {
            return "0".to_string();
        }
        let f = &self.field;
        let mut s = String::new();
        for (k, t) in a.terms.iter().enumerate() {
            let neg = f.is_negative_display(&t.coeff);
            let abs = if neg {
                f.neg(&t.coeff)
            } else {
                t.coeff.clone()
            };
            let mono = self.format_mono(&t.exps);
            let cstr = f.format(&abs);
            let body = if mono.is_empty() {
                cstr
            } else if cstr == "1" {
                mono
            } else {
                format!("{cstr}*{mono}")
            };
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            s.push_str(&body);
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PolyCtx {
        PolyCtx::new(
            BaseField::Rationals,
            vec!["x".into(), "y".into(), "z".into()],
            MonomialOrder::Degrevlex,
        )
    }

    #[test]
    fn degrevlex_orders_as_textbook() {
        let o = MonomialOrder::Degrevlex;
        // x^2 > xy > y^2 > xz > yz > z^2 in degree two.
        let seq = [
            [2, 0, 0],
            [1, 1, 0],
            [0, 2, 0],
            [1, 0, 1],
            [0, 1, 1],
            [0, 0, 2],
        ];
        for w in seq.windows(2) {
            assert_eq!(o.cmp(&w[0], &w[1]), Ordering::Greater, "{:?}", w);
        }
        assert_eq!(
            MonomialOrder::Lex.cmp(&[1, 0, 0], &[0, 5, 5]),
            Ordering::Greater
        );
    }

    #[test]
    fn arithmetic_and_formatting() {
        let c = ctx();
        let (x, y) = (c.var(0), c.var(1));
        let s = c.add(&x, &y);
        let sq = c.mul(&s, &s);
        assert_eq!(c.format(&sq), "x^2 + 2*x*y + y^2");
        let d = c.sub(&sq, &c.mul(&x, &x));
        assert_eq!(c.format(&d), "2*x*y + y^2");
        assert_eq!(c.format(&c.neg(&c.one())), "-1");
        assert!(c.sub(&sq, &sq).is_zero());
    }
}
