//! Power series over ℚ or 𝔽_p truncated by total degree.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rings::field::{mod_pow, BaseField, Coeff};
use crate::rings::poly::{degree, MPoly, PolyCtx, Term};

/// A series known modulo all monomials of total degree `>= precision`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    ctx: PolyCtx,
    precision: u32,
    coeffs: BTreeMap<Vec<u32>, Coeff>,
}

impl TruncatedSeries {
    pub fn zero(ctx: &PolyCtx, precision: u32) -> TruncatedSeries {
        TruncatedSeries {
            ctx: ctx.clone(),
            precision,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(ctx: &PolyCtx, c: &Coeff, precision: u32) -> TruncatedSeries {
        let mut s = TruncatedSeries::zero(ctx, precision);
        s.insert(ctx.zero_exps(), c.clone());
        s
    }

    pub fn from_poly(ctx: &PolyCtx, f: &MPoly, precision: u32) -> TruncatedSeries {
        let mut s = TruncatedSeries::zero(ctx, precision);
        for t in &f.terms {
            s.insert(t.exps.clone(), t.coeff.clone());
        }
        s
    }

    fn insert(&mut self, exps: Vec<u32>, c: Coeff) {
        if degree(&exps) >= self.precision {
            return;
        }
        let f = &self.ctx.field;
        let v = match self.coeffs.remove(&exps) {
            Some(old) => f.add(&old, &c),
            None => c,
        };
        if !v.is_zero() {
            self.coeffs.insert(exps, v);
        }
    }

    pub fn ctx(&self) -> &PolyCtx {
        &self.ctx
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn coeff(&self, exps: &[u32]) -> Coeff {
        self.coeffs.get(exps).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn constant_term(&self) -> Coeff {
        self.coeff(&self.ctx.zero_exps())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest total degree of a stored monomial.
    pub fn order(&self) -> Option<u32> {
        self.coeffs.keys().map(|e| degree(e)).min()
    }

    pub fn truncate(&self, precision: u32) -> TruncatedSeries {
        let precision = precision.min(self.precision);
        TruncatedSeries {
            ctx: self.ctx.clone(),
            precision,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(e, _)| degree(e) < precision)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    fn same_ctx(&self, other: &TruncatedSeries) -> Result<()> {
        if self.ctx != other.ctx {
            return Err(Error::Usage(
                "series over different variables or fields".into(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.same_ctx(other)?;
        let mut s = self.truncate(other.precision);
        for (e, c) in &other.coeffs {
            s.insert(e.clone(), c.clone());
        }
        Ok(s)
    }

    pub fn neg(&self) -> TruncatedSeries {
        self.scale(&self.ctx.field.from_i64(-1))
    }

    pub fn sub(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Coeff) -> TruncatedSeries {
        let mut s = TruncatedSeries::zero(&self.ctx, self.precision);
        for (e, v) in &self.coeffs {
            s.insert(e.clone(), self.ctx.field.mul(v, c));
        }
        s
    }

    pub fn mul(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.same_ctx(other)?;
        let precision = self.precision.min(other.precision);
        let mut s = TruncatedSeries::zero(&self.ctx, precision);
        let f = &self.ctx.field;
        for (ea, ca) in &self.coeffs {
            let da = degree(ea);
            for (eb, cb) in &other.coeffs {
                if da + degree(eb) >= precision {
                    continue;
                }
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                s.insert(e, f.mul(ca, cb));
            }
        }
        Ok(s)
    }

    /// Multiplication by a monomial, which raises the precision by its degree.
    pub fn mul_monomial(&self, exps: &[u32]) -> TruncatedSeries {
        let mut s = TruncatedSeries::zero(&self.ctx, self.precision + degree(exps));
        for (e, c) in &self.coeffs {
            s.insert(e.iter().zip(exps).map(|(a, b)| a + b).collect(), c.clone());
        }
        s
    }

    /// Newton iteration `h ← h (2 - s h)` from the inverse of the constant term.
    pub fn inverse(&self) -> Result<TruncatedSeries> {
        let f = &self.ctx.field;
        let c0 = f.inv(&self.constant_term()).ok_or_else(|| {
            Error::Arithmetic("series with zero constant term is not a unit".into())
        })?;
        let two = TruncatedSeries::constant(&self.ctx, &f.from_i64(2), self.precision);
        let mut h = TruncatedSeries::constant(&self.ctx, &c0, 1);
        let mut prec = 1;
        while prec < self.precision {
            prec = (2 * prec).min(self.precision);
            let h_up = TruncatedSeries {
                precision: prec,
                ..h
            };
            let sh = self.truncate(prec).mul(&h_up)?;
            h = h_up.mul(&two.truncate(prec).sub(&sh)?)?;
        }
        Ok(h)
    }

    /// Terms in increasing total degree, as a polynomial.
    pub fn to_poly(&self) -> MPoly {
        let terms = self
            .coeffs
            .iter()
            .map(|(e, c)| Term {
                exps: e.clone(),
                comp: 0,
                coeff: c.clone(),
            })
            .collect();
        self.ctx.from_terms(terms)
    }

    /// `1 + 1/2*y - 1/8*y^2 + O(y^3)`, lowest degree first.
    pub fn format(&self) -> String {
        let f = &self.ctx.field;
        let mut keys: Vec<&Vec<u32>> = self.coeffs.keys().collect();
        keys.sort_by(|a, b| {
            degree(a)
                .cmp(&degree(b))
                .then_with(|| self.ctx.cmp_mono(b, a))
        });
        let mut s = String::new();
        for (k, e) in keys.into_iter().enumerate() {
            let c = &self.coeffs[e];
            let neg = f.is_negative_display(c);
            let abs = if neg { f.neg(c) } else { c.clone() };
            let mono = self.ctx.format_mono(e);
            let cs = f.format(&abs);
            let body = match (mono.is_empty(), cs.as_str()) {
                (true, _) => cs.clone(),
                (false, "1") => mono,
                (false, _) => format!("{cs}*{mono}"),
            };
            match (k, neg) {
                (0, false) => s.push_str(&body),
                (0, true) => s.push_str(&format!("-{body}")),
                (_, false) => s.push_str(&format!(" + {body}")),
                (_, true) => s.push_str(&format!(" - {body}")),
            }
        }
        if s.is_empty() {
            s.push('0');
        }
        let big_o = if self.ctx.nvars() == 1 {
            format!("O({})", self.ctx.format_mono(&[self.precision]))
        } else {
            format!("O(deg {})", self.precision)
        };
        format!("{s} + {big_o}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesReport {
    pub series: String,
    pub precision: u32,
}

impl From<&TruncatedSeries> for SeriesReport {
    fn from(s: &TruncatedSeries) -> SeriesReport {
        SeriesReport {
            series: s.format(),
            precision: s.precision,
        }
    }
}

fn rational_sqrt(c: &BigRational) -> Option<BigRational> {
    if c.is_negative() {
        return None;
    }
    let (n, d) = (c.numer(), c.denom());
    let (rn, rd) = (n.sqrt(), d.sqrt());
    (&rn * &rn == *n && &rd * &rd == *d).then(|| BigRational::new(rn, rd))
}

/// Tonelli–Shanks; the smaller of the two roots.
fn prime_sqrt(a: u64, p: u64) -> Option<u64> {
    let (a, p128) = (a as u128 % p as u128, p as u128);
    if a == 0 {
        return Some(0);
    }
    if p == 2 {
        return Some(a as u64);
    }
    if mod_pow(a, (p128 - 1) / 2, p128) != 1 {
        return None;
    }
    let (mut q, mut s) = (p128 - 1, 0u32);
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let mut z = 2u128;
    while mod_pow(z, (p128 - 1) / 2, p128) != p128 - 1 {
        z += 1;
    }
    let (mut m, mut c, mut t, mut r) = (
        s,
        mod_pow(z, q, p128),
        mod_pow(a, q, p128),
        mod_pow(a, q.div_ceil(2), p128),
    );
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = t2 * t2 % p128;
            i += 1;
        }
        let b = mod_pow(c, 1 << (m - i - 1), p128);
        m = i;
        c = b * b % p128;
        t = t * c % p128;
        r = r * b % p128;
    }
    Some(r.min(p128 - r) as u64)
}

/// Square root of a field element, if it has one.
pub fn field_sqrt(field: &BaseField, c: &Coeff) -> Option<Coeff> {
    match field {
        BaseField::Rationals => rational_sqrt(c),
        BaseField::Prime(p) => {
            let r = field.normalize(c).ok()?;
            let a = r.numer().to_u64()?;
            prime_sqrt(a, *p).map(|v| BigRational::from_integer(BigInt::from(v)))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SqrtOutcome {
    Root(TruncatedSeries),
    /// The constant term has no square root in the coefficient field.
    NoSquareRoot {
        constant: String,
    },
}

/// `g` with `g^2 ≡ u` below total degree `n` (capped at the precision of `u`),
/// by `g ← (g + u/g)/2` with doubling precision.
pub fn series_sqrt(u: &TruncatedSeries, n: u32) -> Result<SqrtOutcome> {
    let ctx = u.ctx();
    let f = &ctx.field;
    if f.characteristic() == 2 {
        return Err(Error::Usage(
            "square roots by Newton iteration need characteristic ≠ 2".into(),
        ));
    }
    let c = u.constant_term();
    if c.is_zero() {
        return Err(Error::Arithmetic(
            "series with zero constant term is not a unit".into(),
        ));
    }
    let Some(r) = field_sqrt(f, &c) else {
        return Ok(SqrtOutcome::NoSquareRoot {
            constant: f.format(&c),
        });
    };
    let n = n.min(u.precision());
    let half = f.inv(&f.from_i64(2)).expect("characteristic is not 2");
    let mut g = TruncatedSeries::constant(ctx, &r, 1.min(n));
    let mut prec = 1;
    while prec < n {
        prec = (2 * prec).min(n);
        let g_up = TruncatedSeries {
            precision: prec,
            ..g
        };
        let quotient = u.truncate(prec).mul(&g_up.inverse()?)?;
        g = g_up.add(&quotient)?.scale(&half);
    }
    Ok(SqrtOutcome::Root(g.truncate(n)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::poly::MonomialOrder;

    fn ctx_y(field: BaseField) -> PolyCtx {
        PolyCtx::new(field, vec!["y".into()], MonomialOrder::default())
    }

    fn q(n: i64, d: i64) -> Coeff {
        BigRational::new(n.into(), d.into())
    }

    fn one_plus_y(ctx: &PolyCtx, n: u32) -> TruncatedSeries {
        TruncatedSeries::from_poly(ctx, &ctx.add(&ctx.one(), &ctx.var(0)), n)
    }

    #[test]
    fn sqrt_of_one_plus_y() {
        let ctx = ctx_y(BaseField::Rationals);
        let u = one_plus_y(&ctx, 8);
        let SqrtOutcome::Root(g) = series_sqrt(&u, 8).unwrap() else {
            panic!("1 + y has a root")
        };
        assert_eq!(g.precision(), 8);
        let expect = [q(1, 1), q(1, 2), q(-1, 8), q(1, 16), q(-5, 128)];
        for (i, c) in expect.iter().enumerate() {
            assert_eq!(&g.coeff(&[i as u32]), c, "coefficient of y^{i}");
        }
        assert_eq!(g.mul(&g).unwrap(), u);
        assert!(g
            .format()
            .starts_with("1 + 1/2*y - 1/8*y^2 + 1/16*y^3 - 5/128*y^4"));
    }

    #[test]
    fn sqrt_obstructions() {
        let ctx = ctx_y(BaseField::Rationals);
        let minus = TruncatedSeries::from_poly(&ctx, &ctx.sub(&ctx.var(0), &ctx.one()), 8);
        assert_eq!(
            series_sqrt(&minus, 8).unwrap(),
            SqrtOutcome::NoSquareRoot {
                constant: "-1".into()
            }
        );
        let y = TruncatedSeries::from_poly(&ctx, &ctx.var(0), 8);
        assert!(series_sqrt(&y, 8).is_err());
        let one = TruncatedSeries::constant(&ctx, &q(1, 1), 5);
        assert_eq!(
            series_sqrt(&one, 5).unwrap(),
            SqrtOutcome::Root(one.clone())
        );
    }

    #[test]
    fn sqrt_over_prime_field() {
        // -1 is a square mod 5
        let ctx = ctx_y(BaseField::Prime(5));
        let u = TruncatedSeries::from_poly(&ctx, &ctx.sub(&ctx.var(0), &ctx.one()), 6);
        let SqrtOutcome::Root(g) = series_sqrt(&u, 6).unwrap() else {
            panic!("-1 is a square mod 5")
        };
        assert_eq!(g.mul(&g).unwrap(), u);
        assert_eq!(
            series_sqrt(&TruncatedSeries::constant(&ctx, &q(2, 1), 3), 3).unwrap(),
            SqrtOutcome::NoSquareRoot {
                constant: "2".into()
            }
        );
        assert_eq!(prime_sqrt(2, 7), Some(3));
        assert_eq!(prime_sqrt(3, 7), None);
        assert_eq!(prime_sqrt(10, 13), Some(6));
    }

    #[test]
    fn inverse_and_truncation() {
        let ctx = ctx_y(BaseField::Rationals);
        let u = one_plus_y(&ctx, 6);
        let inv = u.inverse().unwrap();
        for i in 0..6u32 {
            assert_eq!(inv.coeff(&[i]), q(if i % 2 == 0 { 1 } else { -1 }, 1));
        }
        assert_eq!(
            u.mul(&inv).unwrap(),
            TruncatedSeries::constant(&ctx, &q(1, 1), 6)
        );
        assert_eq!(u.truncate(1).mul(&u).unwrap().precision(), 1);
    }
}
