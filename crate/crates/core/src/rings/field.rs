//! Coefficient fields for polynomial rings: the rationals and prime fields.
//!
//! Prime-field residues are stored as integral `BigRational`s in `[0, p)` so
//! that polynomial code has a single coefficient type.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Coeff = BigRational;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BaseField {
    Rationals,
    Prime(u64),
}

/// Trial-division primality test; the tower only admits word-sized characteristics.
pub fn is_prime_u64(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p < 4 {
        return true;
    }
    if p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub(crate) fn mod_pow(mut base: u128, mut exp: u128, m: u128) -> u128 {
    let mut acc = 1u128 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

impl BaseField {
    pub fn characteristic(&self) -> u64 {
        match self {
            BaseField::Rationals => 0,
            BaseField::Prime(p) => *p,
        }
    }

    pub fn symbol(&self) -> String {
        match self {
            BaseField::Rationals => "Q".to_string(),
            BaseField::Prime(p) => format!("F{p}"),
        }
    }

    fn residue(p: u64, x: &BigInt) -> u64 {
        let m = BigInt::from(p);
        x.mod_floor(&m).to_u64().expect("residue fits in u64")
    }

    /// Maps an arbitrary rational into the field; fails when the denominator vanishes mod p.
    pub fn normalize(&self, x: &BigRational) -> Result<Coeff> {
        match self {
            BaseField::Rationals => Ok(x.clone()),
            BaseField::Prime(p) => {
                let num = Self::residue(*p, x.numer());
                let den = Self::residue(*p, x.denom());
                if den == 0 {
                    return Err(Error::Arithmetic(format!(
                        "denominator {} is zero in F{p}",
                        x.denom()
                    )));
                }
                let inv = mod_pow(den as u128, (*p - 2) as u128, *p as u128) as u64;
                let v = (num as u128 * inv as u128 % *p as u128) as u64;
                Ok(BigRational::from_integer(BigInt::from(v)))
            }
        }
    }

    pub fn from_i64(&self, v: i64) -> Coeff {
        self.normalize(&BigRational::from_integer(BigInt::from(v)))
            .expect("integers always map into a field")
    }

    pub fn from_int(&self, v: &BigInt) -> Coeff {
        self.normalize(&BigRational::from_integer(v.clone()))
            .expect("integers always map into a field")
    }

    pub fn zero(&self) -> Coeff {
        BigRational::zero()
    }

    pub fn one(&self) -> Coeff {
        match self {
            BaseField::Prime(1) => BigRational::zero(),
            _ => BigRational::one(),
        }
    }

    fn wrap(&self, x: BigRational) -> Coeff {
        match self {
            BaseField::Rationals => x,
            BaseField::Prime(p) => {
                BigRational::from_integer(BigInt::from(Self::residue(*p, x.numer())))
            }
        }
    }

    pub fn add(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.wrap(a + b)
    }

    pub fn sub(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.wrap(a - b)
    }

    pub fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.wrap(a * b)
    }

    pub fn neg(&self, a: &Coeff) -> Coeff {
        self.wrap(-a)
    }

    pub fn inv(&self, a: &Coeff) -> Option<Coeff> {
        if a.is_zero() {
            return None;
        }
        match self {
            BaseField::Rationals => Some(a.recip()),
            BaseField::Prime(p) => {
                let v = Self::residue(*p, a.numer()) as u128;
                Some(BigRational::from_integer(BigInt::from(mod_pow(
                    v,
                    (*p - 2) as u128,
                    *p as u128,
                ))))
            }
        }
    }

    pub fn div(&self, a: &Coeff, b: &Coeff) -> Option<Coeff> {
        self.inv(b).map(|ib| self.mul(a, &ib))
    }

    /// Coefficient rendering; prime-field residues in `(-p/2, p/2]` read better in reports.
    pub fn format(&self, a: &Coeff) -> String {
        match self {
            BaseField::Rationals => {
                if a.is_integer() {
                    a.numer().to_string()
                } else {
                    format!("{}/{}", a.numer(), a.denom())
                }
            }
            BaseField::Prime(p) => {
                let v = Self::residue(*p, a.numer()) as i128;
                let p = *p as i128;
                let s = if 2 * v > p { v - p } else { v };
                s.to_string()
            }
        }
    }

    pub fn is_negative_display(&self, a: &Coeff) -> bool {
        match self {
            BaseField::Rationals => a.is_negative(),
            BaseField::Prime(p) => {
                let v = Self::residue(*p, a.numer()) as u128;
                2 * v > *p as u128
            }
        }
    }
}
