//! Exact base fields: the rationals and prime fields of odd characteristic.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::numtheory::{self, pow_mod};

/// The base field `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    PrimeField(u64),
}

impl FieldSpec {
    /// `F_p` for an odd prime `p`.
    pub fn prime(p: u64) -> Result<Self> {
        if p == 2 {
            return Err(Error::CharacteristicTwo);
        }
        if !numtheory::is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        Ok(FieldSpec::PrimeField(p))
    }

    pub fn modulus(&self) -> Option<u64> {
        match self {
            FieldSpec::Rationals => None,
            FieldSpec::PrimeField(p) => Some(*p),
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match *self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(n.clone())),
            FieldSpec::PrimeField(p) => Scalar::Mod {
                value: n.mod_floor(&BigInt::from(p)).to_u64().unwrap(),
                modulus: p,
            },
        }
    }

    /// The image of `num/den` in the field; fails if `den` vanishes in it.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Scalar> {
        let d = self.from_bigint(den);
        let inv = d.inv().ok_or(Error::ZeroScalar)?;
        Ok(&self.from_bigint(num) * &inv)
    }

    pub fn from_rational(&self, q: &BigRational) -> Result<Scalar> {
        self.from_ratio(q.numer(), q.denom())
    }

    /// Smallest positive quadratic non-residue (prime fields only).
    pub fn least_nonresidue(&self) -> Option<u64> {
        let p = self.modulus()?;
        (2..p).find(|&a| pow_mod(a, (p - 1) / 2, p) == p - 1)
    }

    /// Canonical representative of the square class of a nonzero scalar.
    ///
    /// Over `Q` this is the signed squarefree integer in the class; over `F_p`
    /// it is `1` or the smallest positive non-residue.
    pub fn square_class(&self, a: &Scalar) -> Result<SquareClass> {
        self.check(a)?;
        if a.is_zero() {
            return Err(Error::ZeroScalar);
        }
        let rep = match a {
            Scalar::Rational(q) => {
                let (sf, _) = numtheory::rational_square_class(q)?;
                Scalar::Rational(BigRational::from_integer(sf))
            }
            Scalar::Mod { value, modulus } => {
                let p = *modulus;
                if pow_mod(*value, (p - 1) / 2, p) == 1 {
                    self.one()
                } else {
                    self.from_i64(self.least_nonresidue().unwrap() as i64)
                }
            }
        };
        Ok(SquareClass { rep })
    }

    /// Whether a nonzero scalar is a square.
    pub fn is_square(&self, a: &Scalar) -> Result<bool> {
        Ok(self.square_class(a)?.is_trivial())
    }

    /// Confirms that `a` lives in this field.
    pub fn check(&self, a: &Scalar) -> Result<()> {
        if a.field() == *self {
            Ok(())
        } else {
            Err(Error::RingMismatch(format!("scalar {a} is not in {self}")))
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::PrimeField(p) => write!(f, "F{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    /// Accepts `Q` or `F<p>` (for example `F5`).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "Q" {
            return Ok(FieldSpec::Rationals);
        }
        let p = s
            .strip_prefix('F')
            .and_then(|d| d.parse::<u64>().ok())
            .ok_or_else(|| Error::InvalidField(format!("expected `Q` or `F<p>`, got `{s}`")))?;
        FieldSpec::prime(p)
    }
}

/// An exact field element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Mod { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::Rationals,
            Scalar::Mod { modulus, .. } => FieldSpec::PrimeField(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Mod { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Mod { value, .. } => *value == 1,
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Mod { value, modulus } => Scalar::Mod {
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    /// `self / other`; `None` when `other` is zero.
    pub fn checked_div(&self, other: &Scalar) -> Option<Scalar> {
        other.inv().map(|i| self * &i)
    }

    pub fn pow(&self, mut e: u32) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Sign for an ordered field (`None` over `F_p`).
    pub fn signum(&self) -> Option<i8> {
        match self {
            Scalar::Rational(q) if q.is_positive() => Some(1),
            Scalar::Rational(q) if q.is_negative() => Some(-1),
            Scalar::Rational(_) => Some(0),
            Scalar::Mod { .. } => None,
        }
    }

    /// The rational value, if this is an element of `Q`.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(q) => Some(q),
            Scalar::Mod { .. } => None,
        }
    }

    /// Numerator and denominator of a printable rational lift; residues are
    /// lifted to the symmetric range `(-p/2, p/2]`.
    pub(crate) fn lift(&self) -> (BigInt, BigInt) {
        match self {
            Scalar::Rational(q) => (q.numer().clone(), q.denom().clone()),
            Scalar::Mod { value, modulus } => {
                let v = if *value > modulus / 2 {
                    *value as i128 - *modulus as i128
                } else {
                    *value as i128
                };
                (BigInt::from(v), BigInt::one())
            }
        }
    }

    fn same_field(&self, other: &Scalar) {
        assert_eq!(self.field(), other.field(), "scalars from different fields");
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n, d) = self.lift();
        if d.is_one() {
            write!(f, "{n}")
        } else {
            write!(f, "{n}/{d}")
        }
    }
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.same_field(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Mod { value: a, modulus }, Scalar::Mod { value: b, .. }) => Scalar::Mod {
                value: ((*a as u128 + *b as u128) % *modulus as u128) as u64,
                modulus: *modulus,
            },
            _ => unreachable!(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Mod { value, modulus } => Scalar::Mod {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.same_field(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Mod { value: a, modulus }, Scalar::Mod { value: b, .. }) => Scalar::Mod {
                value: ((*a as u128 * *b as u128) % *modulus as u128) as u64,
                modulus: *modulus,
            },
            _ => unreachable!(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

/// An element of `k^x / (k^x)^2`, stored as its canonical representative.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SquareClass {
    rep: Scalar,
}

impl SquareClass {
    pub fn rep(&self) -> &Scalar {
        &self.rep
    }

    pub fn field(&self) -> FieldSpec {
        self.rep.field()
    }

    pub fn is_trivial(&self) -> bool {
        self.rep.is_one()
    }

    /// Product of two classes.
    pub fn mul(&self, other: &SquareClass) -> SquareClass {
        self.field().square_class(&(&self.rep * &other.rep)).unwrap()
    }

    pub fn neg(&self) -> SquareClass {
        self.field().square_class(&-&self.rep).unwrap()
    }
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rep)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> Scalar {
        Scalar::Rational(BigRational::new(n.into(), d.into()))
    }

    #[test]
    fn square_class_examples() {
        let q = FieldSpec::Rationals;
        assert_eq!(q.square_class(&q.from_i64(18)).unwrap().rep(), &q.from_i64(2));
        assert_eq!(q.square_class(&q.from_i64(1)).unwrap().rep(), &q.from_i64(1));
        assert_eq!(q.square_class(&rat(-1, 2)).unwrap().rep(), &q.from_i64(-2));
        let f5 = FieldSpec::prime(5).unwrap();
        assert!(f5.square_class(&f5.from_i64(4)).unwrap().is_trivial());
        assert_eq!(f5.square_class(&f5.from_i64(3)).unwrap().rep(), &f5.from_i64(2));
        assert_eq!(q.square_class(&q.zero()), Err(Error::ZeroScalar));
    }

    #[test]
    fn canonical_nonresidue_is_least() {
        assert_eq!(FieldSpec::prime(7).unwrap().least_nonresidue(), Some(3));
        assert_eq!(FieldSpec::prime(17).unwrap().least_nonresidue(), Some(3));
        assert_eq!(FieldSpec::prime(23).unwrap().least_nonresidue(), Some(5));
    }

    #[test]
    fn field_construction() {
        assert_eq!(FieldSpec::prime(2), Err(Error::CharacteristicTwo));
        assert!(FieldSpec::prime(9).is_err());
        assert_eq!("F7".parse::<FieldSpec>().unwrap(), FieldSpec::PrimeField(7));
        assert_eq!("Q".parse::<FieldSpec>().unwrap(), FieldSpec::Rationals);
        assert!("F4".parse::<FieldSpec>().is_err());
        assert!("R".parse::<FieldSpec>().is_err());
    }

    #[test]
    fn residue_printing_is_symmetric() {
        let f7 = FieldSpec::prime(7).unwrap();
        assert_eq!(f7.from_i64(-1).to_string(), "-1");
        assert_eq!(f7.from_i64(3).to_string(), "3");
        assert_eq!(rat(3, -6).to_string(), "-1/2");
    }

    #[test]
    fn from_ratio_rejects_vanishing_denominator() {
        let f5 = FieldSpec::prime(5).unwrap();
        assert_eq!(f5.from_ratio(&1.into(), &10.into()), Err(Error::ZeroScalar));
        assert_eq!(f5.from_ratio(&1.into(), &2.into()).unwrap(), f5.from_i64(3));
    }
}
