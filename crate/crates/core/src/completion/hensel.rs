//! Factorisation of `x^2 - c(y)` in the power series ring `K[[x, y]]`.

use serde::Serialize;

use super::series::{series_sqrt, SeriesReport, SqrtOutcome, TruncatedSeries};
use crate::error::{Error, Result};
use crate::rings::poly::PolyCtx;
use crate::rings::{Elem, Ring};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Obstruction {
    /// `c` vanishes to odd order at `y = 0`.
    OddOrder { order: u32 },
    /// The unit part of `c` has a constant term with no square root in the field.
    NoSquareRoot { constant: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HenselOutcome {
    /// `x^2 - c ≡ (x - g)(x + g)` below total degree `precision`.
    Factors {
        g: TruncatedSeries,
        precision: u32,
    },
    IrreducibleOverField {
        obstruction: Obstruction,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum HenselReport {
    Factors {
        polynomial: String,
        factors: [String; 2],
        g: SeriesReport,
        precision: u32,
    },
    IrreducibleOverField {
        polynomial: String,
        obstruction: Obstruction,
    },
}

fn univariate(ring: &Ring) -> Result<&PolyCtx> {
    match ring.poly_ctx() {
        Some(ctx) if ctx.nvars() == 1 && !ring.is_quotient() => Ok(ctx),
        _ => Err(Error::Usage(format!(
            "hensel_quadratic needs c in a univariate polynomial ring, got {}",
            ring.name()
        ))),
    }
}

/// `c = y^{2k} u` with `u(0)` a nonzero square gives `g = y^k sqrt(u)`.
pub fn hensel_quadratic(ring: &Ring, c: &Elem, n: u32) -> Result<HenselOutcome> {
    let ctx = univariate(ring)?;
    if ctx.field.characteristic() == 2 {
        return Err(Error::Usage(
            "x^2 - c is a square of a linear form in characteristic 2; no Hensel step applies"
                .into(),
        ));
    }
    if n == 0 {
        return Err(Error::Usage("precision must be at least 1".into()));
    }
    let poly = ring
        .lift(c)
        .ok_or_else(|| Error::Usage("c must be a polynomial".into()))?;
    let series = TruncatedSeries::from_poly(ctx, &poly, n);
    let order = match series.order() {
        None => {
            return Ok(HenselOutcome::Factors {
                g: TruncatedSeries::zero(ctx, n),
                precision: n,
            })
        }
        Some(v) => v,
    };
    if order % 2 == 1 {
        return Ok(HenselOutcome::IrreducibleOverField {
            obstruction: Obstruction::OddOrder { order },
        });
    }
    let k = order / 2;
    // u = c / y^{2k}, known below degree n - 2k
    let mut u = TruncatedSeries::zero(ctx, n - 2 * k);
    for t in &poly.terms {
        if t.exps[0] >= 2 * k {
            let shifted = TruncatedSeries::constant(ctx, &t.coeff, n - 2 * k)
                .mul_monomial(&[t.exps[0] - 2 * k]);
            u = u.add(&shifted.truncate(n - 2 * k))?;
        }
    }
    match series_sqrt(&u, n - 2 * k)? {
        SqrtOutcome::NoSquareRoot { constant } => Ok(HenselOutcome::IrreducibleOverField {
            obstruction: Obstruction::NoSquareRoot { constant },
        }),
        // g is known below degree n - k, enough for g^2 below degree n
        SqrtOutcome::Root(s) => Ok(HenselOutcome::Factors {
            g: s.mul_monomial(&[k]),
            precision: n,
        }),
    }
}

/// Whether `g^2 ≡ c` below degree `n`, multiplying the stored terms of `g` exactly.
pub fn square_matches(ring: &Ring, c: &Elem, g: &TruncatedSeries, n: u32) -> bool {
    let (Ok(ctx), Some(cp)) = (univariate(ring), ring.lift(c)) else {
        return false;
    };
    let gp = g.to_poly();
    let diff = ctx.sub(&ctx.mul(&gp, &gp), &cp);
    TruncatedSeries::from_poly(ctx, &diff, n).is_zero()
}

impl HenselOutcome {
    pub fn report(&self, ring: &Ring, c: &Elem) -> HenselReport {
        let polynomial = format!("x^2 - ({})", ring.format(c));
        match self {
            HenselOutcome::Factors { g, precision } => {
                let body = g.truncate(g.precision()).format();
                let body = body
                    .rsplit_once(" + O(")
                    .map(|(b, _)| b.to_string())
                    .unwrap_or(body);
                HenselReport::Factors {
                    polynomial,
                    factors: [format!("x - ({body})"), format!("x + ({body})")],
                    g: SeriesReport::from(g),
                    precision: *precision,
                }
            }
            HenselOutcome::IrreducibleOverField { obstruction } => {
                HenselReport::IrreducibleOverField {
                    polynomial,
                    obstruction: obstruction.clone(),
                }
            }
        }
    }
}
