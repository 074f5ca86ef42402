//! Coefficient fields: the rationals and prime fields GF(p), p < 2^31.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A coefficient. Which variant is valid is decided by the owning [`Field`];
/// mixing variants across fields is a logic error.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Coeff {
    Rational(BigRational),
    Modular(u32),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Prime(u32),
}

impl Field {
    pub fn prime(p: u32) -> Result<Self> {
        if p >= 1 << 31 {
            return Err(Error::InvalidRing(format!("characteristic {p} exceeds 2^31")));
        }
        if !is_prime(p) {
            return Err(Error::InvalidRing(format!("{p} is not prime")));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Coeff {
        match self {
            Field::Rational => Coeff::Rational(BigRational::zero()),
            Field::Prime(_) => Coeff::Modular(0),
        }
    }

    pub fn one(&self) -> Coeff {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Coeff {
        match self {
            Field::Rational => Coeff::Rational(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => Coeff::Modular(v.rem_euclid(*p as i64) as u32),
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Coeff {
        match self {
            Field::Rational => Coeff::Rational(BigRational::from_integer(v.clone())),
            Field::Prime(p) => {
                let r = v.mod_floor(&BigInt::from(*p));
                Coeff::Modular(r.to_u32().expect("residue fits"))
            }
        }
    }

    /// `num / den`; `None` when the denominator vanishes in this field.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Option<Coeff> {
        let n = self.from_bigint(num);
        let d = self.from_bigint(den);
        if self.is_zero(&d) {
            return None;
        }
        Some(self.mul(&n, &self.inv(&d)))
    }

    pub fn is_zero(&self, a: &Coeff) -> bool {
        match a {
            Coeff::Rational(q) => q.is_zero(),
            Coeff::Modular(v) => *v == 0,
        }
    }

    pub fn is_one(&self, a: &Coeff) -> bool {
        match a {
            Coeff::Rational(q) => q.is_one(),
            Coeff::Modular(v) => *v == 1,
        }
    }

    pub fn add(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (Field::Rational, Coeff::Rational(x), Coeff::Rational(y)) => Coeff::Rational(x + y),
            (Field::Prime(p), Coeff::Modular(x), Coeff::Modular(y)) => {
                Coeff::Modular(((*x as u64 + *y as u64) % *p as u64) as u32)
            }
            _ => panic!("coefficient does not belong to field {self}"),
        }
    }

    pub fn neg(&self, a: &Coeff) -> Coeff {
        match (self, a) {
            (Field::Rational, Coeff::Rational(x)) => Coeff::Rational(-x),
            (Field::Prime(p), Coeff::Modular(x)) => Coeff::Modular(if *x == 0 { 0 } else { p - x }),
            _ => panic!("coefficient does not belong to field {self}"),
        }
    }

    pub fn sub(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (Field::Rational, Coeff::Rational(x), Coeff::Rational(y)) => Coeff::Rational(x * y),
            (Field::Prime(p), Coeff::Modular(x), Coeff::Modular(y)) => {
                Coeff::Modular(((*x as u64 * *y as u64) % *p as u64) as u32)
            }
            _ => panic!("coefficient does not belong to field {self}"),
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self, a: &Coeff) -> Coeff {
        assert!(!self.is_zero(a), "inverse of zero");
        match (self, a) {
            (Field::Rational, Coeff::Rational(x)) => Coeff::Rational(x.recip()),
            (Field::Prime(p), Coeff::Modular(x)) => Coeff::Modular(pow_mod(*x, p - 2, *p)),
            _ => panic!("coefficient does not belong to field {self}"),
        }
    }

    pub fn div(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.mul(a, &self.inv(b))
    }

    /// Renders a coefficient; `negative` reports whether a leading minus
    /// sign belongs in front (rationals only; residues print as 0..p-1).
    pub fn render(&self, a: &Coeff) -> (bool, String) {
        match a {
            Coeff::Rational(q) => {
                let abs = q.abs();
                let s = if abs.is_integer() {
                    abs.numer().to_string()
                } else {
                    format!("{}/{}", abs.numer(), abs.denom())
                };
                (q.is_negative(), s)
            }
            Coeff::Modular(v) => (false, v.to_string()),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "QQ"),
            Field::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

fn pow_mod(base: u32, mut exp: u32, p: u32) -> u32 {
    let p = p as u64;
    let mut acc = 1u64;
    let mut b = base as u64 % p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        exp >>= 1;
    }
    acc as u32
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p as u64 {
        if (p as u64).is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}
