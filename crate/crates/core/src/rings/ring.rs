//! The constructive ring tower: serialisable descriptors, runtime rings and
//! elements in canonical form.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::field::{is_prime_u64, BaseField};
use super::parse::{parse_expr, Expr};
use super::poly::{MPoly, MonomialOrder, PolyCtx};
use crate::error::{Error, Result};
use crate::grobner::buchberger::{self, groebner, groebner_tracked, is_unit_ideal, Tracked};

/// Serialised description of a ring in the supported tower.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum RingDescriptor {
    Rationals {},
    PrimeField {
        p: u64,
    },
    Integers {},
    Polynomial {
        base: Box<RingDescriptor>,
        vars: Vec<String>,
        #[serde(default)]
        order: MonomialOrder,
    },
    Quotient {
        base: Box<RingDescriptor>,
        relations: Vec<String>,
    },
    FractionField {
        base: Box<RingDescriptor>,
    },
    TruncatedCompletion {
        base: Box<RingDescriptor>,
        ideal: Vec<String>,
        precision: u32,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RegularityClass {
    Regular,
    Hypersurface,
    Unknown,
}

/// Which Smith-normal-form engine applies, if any.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrincipalKind {
    Field,
    /// `Z` and univariate polynomials over a field.
    Euclidean,
    /// Truncated DVRs `Z/p^N` and `k[x]/x^N`, read as approximations of the completion.
    Chain,
}

#[derive(Clone, Debug)]
pub(crate) enum Kind {
    Rationals,
    PrimeField(u64),
    Integers,
    Poly(PolyCtx),
    /// `trunc = Some(N)` marks `k[x]/x^N` standing in for `k[[x]]`.
    Quotient {
        ctx: PolyCtx,
        rels: Vec<MPoly>,
        trunc: Option<u32>,
    },
    Frac {
        ctx: PolyCtx,
        rels: Vec<MPoly>,
    },
    PadicTrunc {
        p: BigInt,
        precision: u32,
        modulus: BigInt,
    },
}

/// Element payloads. Every variant except `Frac` is kept canonical, so
/// structural equality is ring equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Elem {
    Rat(BigRational),
    /// Integers, prime-field residues in `[0, p)`, and residues mod `p^N`.
    Int(BigInt),
    Poly(MPoly),
    Frac(MPoly, MPoly),
}

struct RingData {
    desc: RingDescriptor,
    kind: Kind,
}

#[derive(Clone)]
pub struct Ring(Arc<RingData>);

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ring({})", self.name())
    }
}

impl PartialEq for Ring {
    fn eq(&self, other: &Ring) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.desc == other.0.desc
    }
}

impl Eq for Ring {}

fn field_of(desc: &RingDescriptor) -> Result<BaseField> {
    match desc {
        RingDescriptor::Rationals {} => Ok(BaseField::Rationals),
        RingDescriptor::PrimeField { p } => {
            if !is_prime_u64(*p) {
                return Err(Error::UnsupportedRing(format!("{p} is not prime")));
            }
            Ok(BaseField::Prime(*p))
        }
        _ => Err(Error::UnsupportedRing(
            "polynomial coefficients must be the rationals or a prime field".into(),
        )),
    }
}

fn field_descriptor(f: &BaseField) -> RingDescriptor {
    match f {
        BaseField::Rationals => RingDescriptor::Rationals {},
        BaseField::Prime(p) => RingDescriptor::PrimeField { p: *p },
    }
}

fn poly_descriptor(ctx: &PolyCtx) -> RingDescriptor {
    RingDescriptor::Polynomial {
        base: Box::new(field_descriptor(&ctx.field)),
        vars: ctx.vars.clone(),
        order: ctx.order,
    }
}

fn univariate_power(ctx: &PolyCtx, gb: &[MPoly]) -> Option<u32> {
    if ctx.nvars() != 1 || gb.len() != 1 || gb[0].len() != 1 {
        return None;
    }
    Some(gb[0].terms[0].exps[0])
}

impl Ring {
    fn from_parts(desc: RingDescriptor, kind: Kind) -> Ring {
        Ring(Arc::new(RingData { desc, kind }))
    }

    pub fn new(desc: &RingDescriptor) -> Result<Ring> {
        match desc {
            RingDescriptor::Rationals {} => Ok(Ring::from_parts(desc.clone(), Kind::Rationals)),
            RingDescriptor::PrimeField { p } => {
                field_of(desc)?;
                Ok(Ring::from_parts(desc.clone(), Kind::PrimeField(*p)))
            }
            RingDescriptor::Integers {} => Ok(Ring::from_parts(desc.clone(), Kind::Integers)),
            RingDescriptor::Polynomial { base, vars, order } => {
                let field = field_of(base)?;
                if vars.is_empty() {
                    return Err(Error::UnsupportedRing(
                        "polynomial ring needs variables".into(),
                    ));
                }
                for (i, v) in vars.iter().enumerate() {
                    let ok = v
                        .chars()
                        .next()
                        .is_some_and(|c| c.is_alphabetic() || c == '_')
                        && v.chars().all(|c| c.is_alphanumeric() || c == '_');
                    if !ok || vars[..i].contains(v) {
                        return Err(Error::UnsupportedRing(format!("bad variable name '{v}'")));
                    }
                }
                let ctx = PolyCtx::new(field, vars.clone(), *order);
                Ok(Ring::from_parts(desc.clone(), Kind::Poly(ctx)))
            }
            RingDescriptor::Quotient { base, relations } => {
                let cover = Ring::new(base)?;
                let Kind::Poly(_) = cover.kind() else {
                    return Err(Error::UnsupportedRing(
                        "quotients are taken of polynomial rings".into(),
                    ));
                };
                let rels = cover.parse_polys(relations)?;
                cover.quotient_by(&rels)
            }
            RingDescriptor::FractionField { base } => {
                let b = Ring::new(base)?;
                let (ctx, rels) = match b.kind() {
                    Kind::Poly(ctx) => (ctx.clone(), vec![]),
                    Kind::Quotient { ctx, rels, .. } => (ctx.clone(), rels.clone()),
                    _ => {
                        return Err(Error::UnsupportedRing(
                            "fraction fields are taken of polynomial rings or their quotients"
                                .into(),
                        ))
                    }
                };
                let d = RingDescriptor::FractionField {
                    base: Box::new(b.descriptor().clone()),
                };
                Ok(Ring::from_parts(d, Kind::Frac { ctx, rels }))
            }
            RingDescriptor::TruncatedCompletion {
                base,
                ideal,
                precision,
            } => {
                if *precision == 0 {
                    return Err(Error::UnsupportedRing(
                        "precision must be at least 1".into(),
                    ));
                }
                let b = Ring::new(base)?;
                match b.kind() {
                    Kind::Integers => {
                        let gens: Vec<BigInt> = ideal
                            .iter()
                            .map(|s| match b.parse(s)? {
                                Elem::Int(v) => Ok(v.abs()),
                                _ => unreachable!(),
                            })
                            .collect::<Result<_>>()?;
                        let p = gens.iter().fold(BigInt::zero(), |a, g| a.gcd(g));
                        let pu = p.to_u64().filter(|v| is_prime_u64(*v)).ok_or_else(|| {
                            Error::UnsupportedRing("completion of Z needs a prime ideal (p)".into())
                        })?;
                        let modulus = BigInt::from(pu).pow(*precision);
                        Ok(Ring::from_parts(
                            desc.clone(),
                            Kind::PadicTrunc {
                                p: BigInt::from(pu),
                                precision: *precision,
                                modulus,
                            },
                        ))
                    }
                    Kind::Poly(ctx) | Kind::Quotient { ctx, .. } => {
                        let gens = b.cover_or_self().parse_polys(ideal)?;
                        let mut rels: Vec<MPoly> = b.relations().to_vec();
                        rels.extend(ideal_power(ctx, &gens, *precision));
                        let gb = groebner(ctx, &rels);
                        if is_unit_ideal(&gb) {
                            return Err(Error::UnsupportedRing(
                                "completion is the zero ring".into(),
                            ));
                        }
                        let ideal_gb = groebner(ctx, &gens);
                        let trunc = if b.relations().is_empty()
                            && univariate_power(ctx, &ideal_gb) == Some(1)
                        {
                            univariate_power(ctx, &gb)
                        } else {
                            None
                        };
                        Ok(Ring::from_parts(
                            desc.clone(),
                            Kind::Quotient {
                                ctx: ctx.clone(),
                                rels: gb,
                                trunc,
                            },
                        ))
                    }
                    Kind::Rationals | Kind::PrimeField(_) => Ok(b.clone()),
                    _ => Err(Error::UnsupportedRing(
                        "truncated completion of this ring is not supported".into(),
                    )),
                }
            }
        }
    }

    pub fn rationals() -> Ring {
        Ring::from_parts(RingDescriptor::Rationals {}, Kind::Rationals)
    }

    pub fn integers() -> Ring {
        Ring::from_parts(RingDescriptor::Integers {}, Kind::Integers)
    }

    pub fn prime_field(p: u64) -> Result<Ring> {
        Ring::new(&RingDescriptor::PrimeField { p })
    }

    /// Polynomial ring over `Q` (or `F_p` for `p > 0`) in the given variables, degrevlex.
    pub fn polynomial(characteristic: u64, vars: &[&str]) -> Result<Ring> {
        let base = if characteristic == 0 {
            RingDescriptor::Rationals {}
        } else {
            RingDescriptor::PrimeField { p: characteristic }
        };
        Ring::new(&RingDescriptor::Polynomial {
            base: Box::new(base),
            vars: vars.iter().map(|s| s.to_string()).collect(),
            order: MonomialOrder::Degrevlex,
        })
    }

    /// Quotient of this polynomial ring by relations in manifest syntax.
    pub fn quotient(&self, relations: &[&str]) -> Result<Ring> {
        let rels: Vec<String> = relations.iter().map(|s| s.to_string()).collect();
        let rels = self.parse_polys(&rels)?;
        self.quotient_by(&rels)
    }

    fn quotient_by(&self, rels: &[MPoly]) -> Result<Ring> {
        let Kind::Poly(ctx) = self.kind() else {
            return Err(Error::UnsupportedRing(
                "quotients are taken of polynomial rings".into(),
            ));
        };
        let gb = groebner(ctx, rels);
        if is_unit_ideal(&gb) {
            return Err(Error::UnsupportedRing("quotient by the unit ideal".into()));
        }
        let desc = RingDescriptor::Quotient {
            base: Box::new(self.descriptor().clone()),
            relations: gb.iter().map(|g| ctx.format(g)).collect(),
        };
        Ok(Ring::from_parts(
            desc,
            Kind::Quotient {
                ctx: ctx.clone(),
                rels: gb,
                trunc: None,
            },
        ))
    }

    pub fn descriptor(&self) -> &RingDescriptor {
        &self.0.desc
    }

    pub(crate) fn kind(&self) -> &Kind {
        &self.0.kind
    }

    pub fn poly_ctx(&self) -> Option<&PolyCtx> {
        match self.kind() {
            Kind::Poly(ctx) | Kind::Quotient { ctx, .. } | Kind::Frac { ctx, .. } => Some(ctx),
            _ => None,
        }
    }

    /// Reduced Gröbner basis of the defining ideal; empty outside quotients.
    pub fn relations(&self) -> &[MPoly] {
        match self.kind() {
            Kind::Quotient { rels, .. } | Kind::Frac { rels, .. } => rels,
            _ => &[],
        }
    }

    pub fn is_quotient(&self) -> bool {
        matches!(self.kind(), Kind::Quotient { .. })
    }

    pub fn is_field(&self) -> bool {
        matches!(
            self.kind(),
            Kind::Rationals | Kind::PrimeField(_) | Kind::Frac { .. }
        )
    }

    /// The polynomial ring a quotient is taken of; the ring itself otherwise.
    pub fn cover_or_self(&self) -> Ring {
        match self.kind() {
            Kind::Quotient { ctx, .. } => {
                Ring::from_parts(poly_descriptor(ctx), Kind::Poly(ctx.clone()))
            }
            _ => self.clone(),
        }
    }

    pub fn principal_kind(&self) -> Option<PrincipalKind> {
        match self.kind() {
            Kind::Rationals | Kind::PrimeField(_) | Kind::Frac { .. } => Some(PrincipalKind::Field),
            Kind::Integers => Some(PrincipalKind::Euclidean),
            Kind::Poly(ctx) if ctx.nvars() == 1 => Some(PrincipalKind::Euclidean),
            Kind::PadicTrunc { .. } => Some(PrincipalKind::Chain),
            Kind::Quotient { trunc: Some(_), .. } => Some(PrincipalKind::Chain),
            _ => None,
        }
    }

    /// Krull dimension of the ring itself.
    pub fn krull_dimension(&self) -> i64 {
        match self.kind() {
            Kind::Rationals | Kind::PrimeField(_) | Kind::Frac { .. } => 0,
            Kind::Integers => 1,
            Kind::Poly(ctx) => ctx.nvars() as i64,
            Kind::Quotient { ctx, rels, trunc } => {
                if trunc.is_some() {
                    1
                } else {
                    buchberger::ideal_dimension(ctx, rels)
                }
            }
            Kind::PadicTrunc { .. } => 1,
        }
    }

    pub fn regularity_class(&self) -> RegularityClass {
        regularity_of(self.descriptor())
    }

    pub fn name(&self) -> String {
        describe(self.descriptor())
    }

    // ---- element construction ----

    pub fn zero(&self) -> Elem {
        match self.kind() {
            Kind::Rationals => Elem::Rat(BigRational::zero()),
            Kind::PrimeField(_) | Kind::Integers | Kind::PadicTrunc { .. } => {
                Elem::Int(BigInt::zero())
            }
            Kind::Poly(_) | Kind::Quotient { .. } => Elem::Poly(MPoly::zero()),
            Kind::Frac { ctx, .. } => Elem::Frac(MPoly::zero(), ctx.one()),
        }
    }

    pub fn one(&self) -> Elem {
        self.from_int(&BigInt::one())
    }

    pub fn from_i64(&self, v: i64) -> Elem {
        self.from_int(&BigInt::from(v))
    }

    pub fn from_int(&self, v: &BigInt) -> Elem {
        match self.kind() {
            Kind::Rationals => Elem::Rat(BigRational::from_integer(v.clone())),
            Kind::PrimeField(p) => Elem::Int(v.mod_floor(&BigInt::from(*p))),
            Kind::Integers => Elem::Int(v.clone()),
            Kind::PadicTrunc { modulus, .. } => Elem::Int(v.mod_floor(modulus)),
            Kind::Poly(ctx) => Elem::Poly(ctx.constant(ctx.field.from_int(v))),
            Kind::Quotient { ctx, rels, .. } => Elem::Poly(buchberger::reduce(
                ctx,
                &ctx.constant(ctx.field.from_int(v)),
                rels,
            )),
            Kind::Frac { ctx, .. } => Elem::Frac(ctx.constant(ctx.field.from_int(v)), ctx.one()),
        }
    }

    /// Embeds a polynomial of the cover into the ring, reducing as needed.
    pub fn from_poly(&self, f: &MPoly) -> Result<Elem> {
        match self.kind() {
            Kind::Poly(_) => Ok(Elem::Poly(f.clone())),
            Kind::Quotient { ctx, rels, .. } => Ok(Elem::Poly(buchberger::reduce(ctx, f, rels))),
            Kind::Frac { ctx, rels } => Ok(Elem::Frac(buchberger::reduce(ctx, f, rels), ctx.one())),
            _ => Err(Error::Usage(format!(
                "{} has no polynomial elements",
                self.name()
            ))),
        }
    }

    pub fn var(&self, i: usize) -> Result<Elem> {
        let ctx = self
            .poly_ctx()
            .ok_or_else(|| Error::Usage(format!("{} has no variables", self.name())))?;
        if i >= ctx.nvars() {
            return Err(Error::Usage(format!("variable index {i} out of range")));
        }
        self.from_poly(&ctx.var(i))
    }

    /// Lift of a polynomial-type element to the polynomial cover.
    pub fn lift(&self, e: &Elem) -> Option<MPoly> {
        match e {
            Elem::Poly(p) => Some(p.clone()),
            _ => None,
        }
    }

    // ---- arithmetic ----

    fn frac_norm(&self, n: MPoly, d: MPoly) -> Elem {
        let Kind::Frac { ctx, rels } = self.kind() else {
            unreachable!()
        };
        let n = buchberger::reduce(ctx, &n, rels);
        let d = buchberger::reduce(ctx, &d, rels);
        if n.is_zero() {
            return Elem::Frac(MPoly::zero(), ctx.one());
        }
        let lc = d.lead().expect("denominator is nonzero").coeff.clone();
        let inv = ctx.field.inv(&lc).unwrap();
        let (n, d) = (ctx.scale(&inv, &n), ctx.scale(&inv, &d));
        if d.is_constant() {
            return Elem::Frac(n, d);
        }
        // cancel an exact polynomial quotient when the denominator divides the numerator
        if rels.is_empty() {
            if let Some(q) = exact_div(ctx, &n, &d) {
                return Elem::Frac(q, ctx.one());
            }
        }
        Elem::Frac(n, d)
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        match (self.kind(), a, b) {
            (Kind::Rationals, Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x + y),
            (Kind::PrimeField(p), Elem::Int(x), Elem::Int(y)) => {
                Elem::Int((x + y).mod_floor(&BigInt::from(*p)))
            }
            (Kind::Integers, Elem::Int(x), Elem::Int(y)) => Elem::Int(x + y),
            (Kind::PadicTrunc { modulus, .. }, Elem::Int(x), Elem::Int(y)) => {
                Elem::Int((x + y).mod_floor(modulus))
            }
            (Kind::Poly(ctx), Elem::Poly(x), Elem::Poly(y)) => Elem::Poly(ctx.add(x, y)),
            (Kind::Quotient { ctx, .. }, Elem::Poly(x), Elem::Poly(y)) => Elem::Poly(ctx.add(x, y)),
            (Kind::Frac { ctx, .. }, Elem::Frac(an, ad), Elem::Frac(bn, bd)) => {
                if ad == bd {
                    return self.frac_norm(ctx.add(an, bn), ad.clone());
                }
                let n = ctx.add(&ctx.mul(an, bd), &ctx.mul(bn, ad));
                self.frac_norm(n, ctx.mul(ad, bd))
            }
            _ => panic!("element does not belong to {}", self.name()),
        }
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        match (self.kind(), a) {
            (Kind::Rationals, Elem::Rat(x)) => Elem::Rat(-x),
            (Kind::PrimeField(p), Elem::Int(x)) => Elem::Int((-x).mod_floor(&BigInt::from(*p))),
            (Kind::Integers, Elem::Int(x)) => Elem::Int(-x),
            (Kind::PadicTrunc { modulus, .. }, Elem::Int(x)) => Elem::Int((-x).mod_floor(modulus)),
            (Kind::Poly(ctx), Elem::Poly(x)) | (Kind::Quotient { ctx, .. }, Elem::Poly(x)) => {
                Elem::Poly(ctx.neg(x))
            }
            (Kind::Frac { ctx, .. }, Elem::Frac(n, d)) => Elem::Frac(ctx.neg(n), d.clone()),
            _ => panic!("element does not belong to {}", self.name()),
        }
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match (self.kind(), a, b) {
            (Kind::Rationals, Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x * y),
            (Kind::PrimeField(p), Elem::Int(x), Elem::Int(y)) => {
                Elem::Int((x * y).mod_floor(&BigInt::from(*p)))
            }
            (Kind::Integers, Elem::Int(x), Elem::Int(y)) => Elem::Int(x * y),
            (Kind::PadicTrunc { modulus, .. }, Elem::Int(x), Elem::Int(y)) => {
                Elem::Int((x * y).mod_floor(modulus))
            }
            (Kind::Poly(ctx), Elem::Poly(x), Elem::Poly(y)) => Elem::Poly(ctx.mul(x, y)),
            (Kind::Quotient { ctx, rels, .. }, Elem::Poly(x), Elem::Poly(y)) => {
                Elem::Poly(buchberger::reduce(ctx, &ctx.mul(x, y), rels))
            }
            (Kind::Frac { ctx, .. }, Elem::Frac(an, ad), Elem::Frac(bn, bd)) => {
                self.frac_norm(ctx.mul(an, bn), ctx.mul(ad, bd))
            }
            _ => panic!("element does not belong to {}", self.name()),
        }
    }

    pub fn pow(&self, a: &Elem, mut e: u32) -> Elem {
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

    pub fn is_zero(&self, a: &Elem) -> bool {
        match a {
            Elem::Rat(x) => x.is_zero(),
            Elem::Int(x) => x.is_zero(),
            Elem::Poly(p) => p.is_zero(),
            Elem::Frac(n, _) => n.is_zero(),
        }
    }

    pub fn is_one(&self, a: &Elem) -> bool {
        self.eq_elem(a, &self.one())
    }

    pub fn eq_elem(&self, a: &Elem, b: &Elem) -> bool {
        match (a, b) {
            (Elem::Frac(..), Elem::Frac(..)) => self.is_zero(&self.sub(a, b)),
            _ => a == b,
        }
    }

    pub fn is_unit(&self, a: &Elem) -> bool {
        match (self.kind(), a) {
            (Kind::Integers, Elem::Int(x)) => x.abs().is_one(),
            (Kind::PadicTrunc { p, .. }, Elem::Int(x)) => !(x % p).is_zero(),
            (Kind::Poly(_), Elem::Poly(x)) => !x.is_zero() && x.is_constant(),
            (Kind::Quotient { ctx, rels, .. }, Elem::Poly(x)) => {
                if x.is_zero() {
                    return false;
                }
                if x.is_constant() {
                    return true;
                }
                let mut gens = rels.clone();
                gens.push(x.clone());
                is_unit_ideal(&groebner(ctx, &gens))
            }
            _ => !self.is_zero(a),
        }
    }

    pub fn inverse(&self, a: &Elem) -> Option<Elem> {
        if !self.is_unit(a) {
            return None;
        }
        Some(match (self.kind(), a) {
            (Kind::Rationals, Elem::Rat(x)) => Elem::Rat(x.recip()),
            (Kind::PrimeField(p), Elem::Int(x)) => {
                let f = BaseField::Prime(*p);
                let inv = f.inv(&BigRational::from_integer(x.clone()))?;
                Elem::Int(inv.to_integer())
            }
            (Kind::Integers, Elem::Int(x)) => Elem::Int(x.clone()),
            (Kind::PadicTrunc { modulus, .. }, Elem::Int(x)) => Elem::Int(mod_inverse(x, modulus)?),
            (Kind::Poly(ctx), Elem::Poly(x)) => {
                let c = ctx.field.inv(&x.lead().unwrap().coeff)?;
                Elem::Poly(ctx.constant(c))
            }
            (Kind::Quotient { ctx, rels, .. }, Elem::Poly(x)) => {
                if x.is_constant() {
                    let c = ctx.field.inv(&x.lead().unwrap().coeff)?;
                    Elem::Poly(ctx.constant(c))
                } else {
                    Elem::Poly(quotient_inverse(ctx, rels, x)?)
                }
            }
            (Kind::Frac { .. }, Elem::Frac(n, d)) => self.frac_norm(d.clone(), n.clone()),
            _ => return None,
        })
    }

    /// `a / b` when `b` is a unit.
    pub fn div_unit(&self, a: &Elem, b: &Elem) -> Option<Elem> {
        self.inverse(b).map(|ib| self.mul(a, &ib))
    }

    // ---- parsing and formatting ----

    fn vars(&self) -> &[String] {
        match self.poly_ctx() {
            Some(ctx) => &ctx.vars,
            None => &[],
        }
    }

    pub fn parse(&self, s: &str) -> Result<Elem> {
        let e = parse_expr(s, self.vars())?;
        self.eval(&e).map_err(|err| match err {
            Error::Arithmetic(m) => Error::Parse(format!("{m} in \"{s}\"")),
            other => other,
        })
    }

    fn eval(&self, e: &Expr) -> Result<Elem> {
        Ok(match e {
            Expr::Int(n) => self.from_int(n),
            Expr::Var(i) => self.var(*i)?,
            Expr::Add(a, b) => self.add(&self.eval(a)?, &self.eval(b)?),
            Expr::Sub(a, b) => self.sub(&self.eval(a)?, &self.eval(b)?),
            Expr::Mul(a, b) => self.mul(&self.eval(a)?, &self.eval(b)?),
            Expr::Neg(a) => self.neg(&self.eval(a)?),
            Expr::Pow(a, k) => self.pow(&self.eval(a)?, *k),
            Expr::Div(a, b) => {
                let (x, y) = (self.eval(a)?, self.eval(b)?);
                self.div_unit(&x, &y).ok_or_else(|| {
                    Error::Arithmetic(format!("division by a non-unit in {}", self.name()))
                })?
            }
        })
    }

    /// Parses polynomial strings in the cover (no reduction).
    pub(crate) fn parse_polys(&self, items: &[String]) -> Result<Vec<MPoly>> {
        let cover = self.cover_or_self();
        items
            .iter()
            .map(|s| match cover.parse(s)? {
                Elem::Poly(p) => Ok(p),
                _ => Err(Error::Usage(format!("\"{s}\" is not a polynomial"))),
            })
            .collect()
    }

    pub fn format(&self, a: &Elem) -> String {
        match (self.kind(), a) {
            (_, Elem::Rat(x)) => BaseField::Rationals.format(x),
            (Kind::PrimeField(p), Elem::Int(x)) => {
                BaseField::Prime(*p).format(&BigRational::from_integer(x.clone()))
            }
            (_, Elem::Int(x)) => x.to_string(),
            (_, Elem::Poly(x)) => self.poly_ctx().unwrap().format(x),
            (_, Elem::Frac(n, d)) => {
                let ctx = self.poly_ctx().unwrap();
                if d.is_constant() {
                    ctx.format(n)
                } else {
                    format!("({})/({})", ctx.format(n), ctx.format(d))
                }
            }
        }
    }

    // ---- random sampling ----

    /// A small random element: coefficients in `[-bound, bound]`, total degree `<= max_deg`.
    pub fn random_elem<R: Rng>(&self, rng: &mut R, bound: i64, max_deg: u32) -> Elem {
        match self.kind() {
            Kind::Rationals => {
                let n = rng.gen_range(-bound..=bound);
                let d = rng.gen_range(1..=bound.max(1));
                Elem::Rat(BigRational::new(n.into(), d.into()))
            }
            Kind::Frac { ctx, .. } => {
                let n = random_poly(ctx, rng, bound, max_deg);
                let mut d = random_poly(ctx, rng, bound, max_deg.min(1));
                if d.is_zero() {
                    d = ctx.one();
                }
                self.frac_norm(n, d)
            }
            Kind::Poly(ctx) | Kind::Quotient { ctx, .. } => {
                let p = random_poly(ctx, rng, bound, max_deg);
                self.from_poly(&p).unwrap()
            }
            _ => self.from_i64(rng.gen_range(-bound..=bound)),
        }
    }
}

fn random_poly<R: Rng>(ctx: &PolyCtx, rng: &mut R, bound: i64, max_deg: u32) -> MPoly {
    let n = ctx.nvars();
    let nterms = rng.gen_range(0..=3);
    let mut terms = Vec::new();
    for _ in 0..nterms {
        let mut exps = vec![0u32; n];
        let mut budget = rng.gen_range(0..=max_deg);
        while budget > 0 {
            exps[rng.gen_range(0..n)] += 1;
            budget -= 1;
        }
        let c = ctx.field.from_i64(rng.gen_range(-bound..=bound));
        terms.push(super::poly::Term {
            exps,
            comp: 0,
            coeff: c,
        });
    }
    ctx.from_terms(terms)
}

/// All products of `N` generators, i.e. generators of `I^N`.
pub(crate) fn ideal_power(ctx: &PolyCtx, gens: &[MPoly], n: u32) -> Vec<MPoly> {
    let mut cur = vec![ctx.one()];
    for _ in 0..n {
        let mut next = Vec::new();
        for f in &cur {
            for g in gens {
                next.push(ctx.mul(f, g));
            }
        }
        cur = groebner(ctx, &next);
    }
    cur
}

fn exact_div(ctx: &PolyCtx, n: &MPoly, d: &MPoly) -> Option<MPoly> {
    let gb = vec![ctx.monic(d)];
    if !buchberger::reduce(ctx, n, &gb).is_zero() {
        return None;
    }
    // long division by the single divisor recovers the quotient
    let dl = d.lead()?.clone();
    let mut rem = n.clone();
    let mut q = MPoly::zero();
    while let Some(lt) = rem.lead().cloned() {
        if !super::poly::divides(&dl.exps, &lt.exps) {
            return None;
        }
        let m = super::poly::quotient(&lt.exps, &dl.exps);
        let c = ctx.field.div(&lt.coeff, &dl.coeff)?;
        q = ctx.add(&q, &ctx.monomial(m.clone(), 0, c.clone()));
        rem = ctx.sub(&rem, &ctx.mul_term(&m, &c, d));
    }
    Some(q)
}

fn mod_inverse(x: &BigInt, m: &BigInt) -> Option<BigInt> {
    let g = x.extended_gcd(m);
    if !g.gcd.is_one() {
        return None;
    }
    Some(g.x.mod_floor(m))
}

/// Inverse in `S/J` from a cofactor expression `1 = a*f + sum b_i r_i`.
fn quotient_inverse(ctx: &PolyCtx, rels: &[MPoly], f: &MPoly) -> Option<MPoly> {
    let mut gens = vec![Tracked {
        vec: f.clone(),
        repr: Some(ctx.basis_vector(0)),
    }];
    for (i, r) in rels.iter().enumerate() {
        gens.push(Tracked {
            vec: r.clone(),
            repr: Some(ctx.basis_vector(i + 1)),
        });
    }
    let gb = groebner_tracked(ctx, gens);
    let unit = gb
        .iter()
        .find(|t| t.vec.is_constant() && !t.vec.is_zero())?;
    let c = ctx.field.inv(&unit.vec.lead()?.coeff)?;
    let a = unit.repr.as_ref()?.component(0);
    Some(buchberger::reduce(ctx, &ctx.scale(&c, &a), rels))
}

fn regularity_of(desc: &RingDescriptor) -> RegularityClass {
    match desc {
        RingDescriptor::Rationals {}
        | RingDescriptor::PrimeField { .. }
        | RingDescriptor::Integers {}
        | RingDescriptor::Polynomial { .. }
        | RingDescriptor::FractionField { .. } => RegularityClass::Regular,
        RingDescriptor::TruncatedCompletion { base, .. } => match regularity_of(base) {
            RegularityClass::Regular => RegularityClass::Regular,
            _ => RegularityClass::Unknown,
        },
        RingDescriptor::Quotient { .. } => {
            let Ok(r) = Ring::new(desc) else {
                return RegularityClass::Unknown;
            };
            let rels = r.relations();
            if rels.len() != 1 || rels[0].is_zero() {
                return RegularityClass::Unknown;
            }
            // witness that f is a nonzerodivisor of the cover: (0 : f) = 0
            let ctx = r.poly_ctx().unwrap();
            if buchberger::syzygies(ctx, &rels[..1]).is_empty() {
                RegularityClass::Hypersurface
            } else {
                RegularityClass::Unknown
            }
        }
    }
}

fn describe(desc: &RingDescriptor) -> String {
    match desc {
        RingDescriptor::Rationals {} => "Q".into(),
        RingDescriptor::PrimeField { p } => format!("F{p}"),
        RingDescriptor::Integers {} => "Z".into(),
        RingDescriptor::Polynomial { base, vars, .. } => {
            format!("{}[{}]", describe(base), vars.join(","))
        }
        RingDescriptor::Quotient { base, relations } => {
            format!("{}/({})", describe(base), relations.join(", "))
        }
        RingDescriptor::FractionField { base } => format!("Frac({})", describe(base)),
        RingDescriptor::TruncatedCompletion {
            base,
            ideal,
            precision,
        } => format!(
            "{}^({}) mod precision {}",
            describe(base),
            ideal.join(","),
            precision
        ),
    }
}

/// An element together with its ring, for display and comparison.
#[derive(Clone, Debug)]
pub struct RingElement {
    pub ring: Ring,
    pub value: Elem,
}

impl PartialEq for RingElement {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.ring.eq_elem(&self.value, &other.value)
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.ring.format(&self.value))
    }
}

/// Gröbner normal form of a cover polynomial in a quotient ring.
pub fn normal_form(f: &MPoly, ring: &Ring) -> Result<RingElement> {
    match ring.kind() {
        Kind::Quotient { ctx, rels, .. } => Ok(RingElement {
            ring: ring.clone(),
            value: Elem::Poly(buchberger::reduce(ctx, f, rels)),
        }),
        _ => Err(Error::Usage(format!(
            "normal form needs a quotient ring, got {}",
            ring.name()
        ))),
    }
}

/// Parses `f` in the cover of `ring` and reduces it.
pub fn normal_form_str(f: &str, ring: &Ring) -> Result<RingElement> {
    if !ring.is_quotient() {
        return Err(Error::Usage(format!(
            "normal form needs a quotient ring, got {}",
            ring.name()
        )));
    }
    let p = ring.parse_polys(&[f.to_string()])?.remove(0);
    normal_form(&p, ring)
}

pub fn regularity_class(ring: &RingDescriptor) -> RegularityClass {
    regularity_of(ring)
}

/// The residue domain `A/p` of a prime given by generators in `A`.
///
/// Primality is trusted; the unit ideal and composite integers are rejected here,
/// other failures surface later as zero divisors.
pub fn residue_ring(ring: &Ring, gens: &[Elem]) -> Result<Ring> {
    let nonzero: Vec<&Elem> = gens.iter().filter(|g| !ring.is_zero(g)).collect();
    match ring.kind() {
        Kind::Rationals | Kind::PrimeField(_) | Kind::Frac { .. } => {
            if nonzero.is_empty() {
                Ok(ring.clone())
            } else {
                Err(Error::InconsistentPrime(
                    "a field has only the zero prime".into(),
                ))
            }
        }
        Kind::Integers | Kind::PadicTrunc { .. } => {
            let g = nonzero.iter().fold(BigInt::zero(), |acc, e| match e {
                Elem::Int(v) => acc.gcd(v),
                _ => acc,
            });
            if let Kind::PadicTrunc { p, .. } = ring.kind() {
                if g.is_zero() || !(&g % p).is_zero() && !g.is_one() {
                    return Err(Error::InconsistentPrime(
                        "the only prime of a truncated p-adic ring is (p)".into(),
                    ));
                }
                if g.is_one() {
                    return Err(Error::InconsistentPrime("unit ideal".into()));
                }
                return Ring::prime_field(p.to_u64().unwrap());
            }
            if g.is_zero() {
                return Ok(ring.clone());
            }
            match g.to_u64() {
                Some(p) if is_prime_u64(p) => Ring::prime_field(p),
                _ => Err(Error::InconsistentPrime(format!(
                    "({g}) is not a prime ideal of Z"
                ))),
            }
        }
        Kind::Poly(ctx) | Kind::Quotient { ctx, .. } => {
            let mut all: Vec<MPoly> = ring.relations().to_vec();
            for g in nonzero {
                all.push(ring.lift(g).expect("polynomial element"));
            }
            let gb = groebner(ctx, &all);
            if is_unit_ideal(&gb) {
                return Err(Error::InconsistentPrime(
                    "the ideal is the unit ideal".into(),
                ));
            }
            let cover = ring.cover_or_self();
            if gb.is_empty() {
                return Ok(cover);
            }
            cover.quotient_by(&gb)
        }
    }
}

/// Image of `e` under the canonical surjection onto `target` (a residue ring of `ring`).
pub fn project(ring: &Ring, target: &Ring, e: &Elem) -> Elem {
    match (ring.kind(), e) {
        (_, Elem::Int(v)) => target.from_int(v),
        (_, Elem::Rat(_)) => e.clone(),
        (_, Elem::Poly(p)) => target
            .from_poly(p)
            .expect("residue ring of a polynomial ring"),
        (_, Elem::Frac(..)) => e.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn qxy() -> Ring {
        Ring::polynomial(0, &["x", "y"]).unwrap()
    }

    #[test]
    fn normal_forms_in_quotients() {
        let qx = Ring::polynomial(0, &["x"]).unwrap();
        let dual = qx.quotient(&["x^2"]).unwrap();
        assert_eq!(normal_form_str("x^2", &dual).unwrap().to_string(), "0");
        assert_eq!(normal_form_str("x^3+x", &dual).unwrap().to_string(), "x");
        let r = qxy().quotient(&["x^2-y"]).unwrap();
        assert_eq!(normal_form_str("x*y", &r).unwrap().to_string(), "x*y");
        assert!(matches!(normal_form_str("x", &qx), Err(Error::Usage(_))));
    }

    #[test]
    fn regularity_classes() {
        assert_eq!(qxy().regularity_class(), RegularityClass::Regular);
        let qx = Ring::polynomial(0, &["x"]).unwrap();
        assert_eq!(
            qx.quotient(&["x^2"]).unwrap().regularity_class(),
            RegularityClass::Hypersurface
        );
        assert_eq!(
            qxy().quotient(&["x^2", "x*y"]).unwrap().regularity_class(),
            RegularityClass::Unknown
        );
        assert_eq!(
            Ring::integers().regularity_class(),
            RegularityClass::Regular
        );
    }

    #[test]
    fn quotient_units_and_inverses() {
        let qx = Ring::polynomial(0, &["x"]).unwrap();
        let r = qx.quotient(&["x^3"]).unwrap();
        let u = r.parse("1 + x").unwrap();
        let inv = r.inverse(&u).unwrap();
        assert_eq!(r.format(&inv), "x^2 - x + 1");
        assert!(!r.is_unit(&r.parse("x").unwrap()));
    }

    #[test]
    fn padic_truncation_wraps() {
        let d = RingDescriptor::TruncatedCompletion {
            base: Box::new(RingDescriptor::Integers {}),
            ideal: vec!["5".into()],
            precision: 3,
        };
        let r = Ring::new(&d).unwrap();
        let a = r.parse("124").unwrap();
        assert!(r.is_zero(&r.add(&a, &r.one())));
        assert_eq!(r.format(&r.inverse(&r.from_i64(3)).unwrap()), "42");
        assert_eq!(r.principal_kind(), Some(PrincipalKind::Chain));
    }

    #[test]
    fn descriptor_serde_round_trip() {
        let d = RingDescriptor::Quotient {
            base: Box::new(RingDescriptor::Polynomial {
                base: Box::new(RingDescriptor::Rationals {}),
                vars: vec!["x".into()],
                order: MonomialOrder::Degrevlex,
            }),
            relations: vec!["x^2".into()],
        };
        let s = serde_json::to_string(&d).unwrap();
        let back: RingDescriptor = serde_json::from_str(&s).unwrap();
        assert_eq!(back, d);
        let bad = r#"{"type":"integers","extra":1}"#;
        assert!(serde_json::from_str::<RingDescriptor>(bad).is_err());
    }

    #[test]
    fn residue_rings() {
        let z = Ring::integers();
        assert_eq!(
            residue_ring(&z, &[z.from_i64(5)]).unwrap().descriptor(),
            &RingDescriptor::PrimeField { p: 5 }
        );
        assert!(matches!(
            residue_ring(&z, &[z.from_i64(25)]),
            Err(Error::InconsistentPrime(_))
        ));
        let a = qxy();
        let k = residue_ring(&a, &[a.parse("x").unwrap()]).unwrap();
        assert_eq!(k.relations().len(), 1);
        assert!(residue_ring(&a, &[a.one()]).is_err());
    }

    fn all_rings() -> Vec<Ring> {
        let qx = Ring::polynomial(0, &["x"]).unwrap();
        let f7xy = Ring::polynomial(7, &["x", "y"]).unwrap();
        vec![
            Ring::rationals(),
            Ring::prime_field(7).unwrap(),
            Ring::integers(),
            qxy(),
            f7xy.quotient(&["x^2 - y^3"]).unwrap(),
            Ring::new(&RingDescriptor::FractionField {
                base: Box::new(qx.descriptor().clone()),
            })
            .unwrap(),
            Ring::new(&RingDescriptor::TruncatedCompletion {
                base: Box::new(RingDescriptor::Integers {}),
                ideal: vec!["3".into()],
                precision: 4,
            })
            .unwrap(),
            Ring::new(&RingDescriptor::TruncatedCompletion {
                base: Box::new(qxy().descriptor().clone()),
                ideal: vec!["x".into(), "y".into()],
                precision: 3,
            })
            .unwrap(),
        ]
    }

    #[test]
    fn ring_axioms_on_samples() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for r in all_rings() {
            for _ in 0..25 {
                let a = r.random_elem(&mut rng, 4, 2);
                let b = r.random_elem(&mut rng, 4, 2);
                let c = r.random_elem(&mut rng, 4, 2);
                let lhs = r.mul(&r.mul(&a, &b), &c);
                let rhs = r.mul(&a, &r.mul(&b, &c));
                assert!(r.eq_elem(&lhs, &rhs), "associativity in {}", r.name());
                let lhs = r.mul(&a, &r.add(&b, &c));
                let rhs = r.add(&r.mul(&a, &b), &r.mul(&a, &c));
                assert!(r.eq_elem(&lhs, &rhs), "distributivity in {}", r.name());
                assert!(r.eq_elem(&r.mul(&a, &b), &r.mul(&b, &a)));
                assert!(r.is_zero(&r.sub(&a, &a)));
                // formatted elements parse back to themselves
                let back = r.parse(&r.format(&a)).unwrap();
                assert!(r.eq_elem(&back, &a), "{} in {}", r.format(&a), r.name());
            }
        }
    }
}
