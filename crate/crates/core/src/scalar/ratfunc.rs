//! Elements of `Q(q)` as reduced quotients of Laurent polynomials.

use super::gcd::{gcd, normalize_unit};
use super::int::Int;
use super::laurent::LaurentPoly;
use crate::error::{Error, Result};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// `num / den` with `gcd(num, den) = 1`, the denominator having lowest
/// degree `0` and positive lowest coefficient. The representation of every
/// element is therefore unique and `==` is structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RatFunc {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: LaurentPoly, den: LaurentPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let (num, den) = if den.is_unit() {
            (num, den)
        } else {
            let g = gcd(&num, &den);
            if g.is_one() {
                (num, den)
            } else {
                (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
            }
        };
        let (den_n, unit) = normalize_unit(&den);
        let num = num.div_exact(&unit).unwrap();
        RatFunc { num, den: den_n }
    }

    pub fn zero() -> Self {
        RatFunc { num: LaurentPoly::zero(), den: LaurentPoly::one() }
    }

    pub fn one() -> Self {
        Self::from(LaurentPoly::one())
    }

    pub fn from_int(c: i64) -> Self {
        Self::from(LaurentPoly::from_int(c))
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// `Some(p)` when the value lies in `Z[q,q^-1]`.
    pub fn as_laurent(&self) -> Option<LaurentPoly> {
        if self.den.is_one() {
            Some(self.num.clone())
        } else {
            None
        }
    }

    pub fn bar(&self) -> Self {
        Self::reduced(self.num.bar(), self.den.bar())
    }

    pub fn inv(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, n: i32) -> Result<Self> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let mut r = Self::one();
        for _ in 0..n.unsigned_abs() {
            r = &r * &base;
        }
        Ok(r)
    }

    /// The `q`-adic valuation: lowest exponent of the expansion at `q = 0`.
    pub fn valuation(&self) -> Option<i32> {
        Some(self.num.low_deg()? - self.den.low_deg().unwrap())
    }

    /// Membership in `A_0`: no pole at `q = 0`.
    pub fn in_a0(&self) -> bool {
        self.valuation().is_none_or(|v| v >= 0)
    }

    /// Value at `q = 0` as a fraction `(n, d)`, if there is no pole.
    pub fn at_zero(&self) -> Option<(Int, Int)> {
        match self.valuation() {
            None => Some((Int::ZERO, Int::ONE)),
            Some(v) if v > 0 => Some((Int::ZERO, Int::ONE)),
            Some(0) => Some((self.num.low_coeff(), self.den.low_coeff())),
            _ => None,
        }
    }
}

/// Membership in `1 + q A_0`, where `A_0` is the ring of rational functions
/// regular at `q = 0`.
pub fn in_one_plus_qa0(x: &RatFunc) -> bool {
    x.valuation() == Some(0) && x.num.low_coeff() == x.den.low_coeff()
}

impl From<LaurentPoly> for RatFunc {
    fn from(p: LaurentPoly) -> Self {
        assert_eq!(p.modulus(), 0, "rational functions are over Q");
        RatFunc { num: p, den: LaurentPoly::one() }
    }
}

impl Add<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RatFunc::reduced(&self.num + &rhs.num, self.den.clone());
        }
        RatFunc::reduced(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl Mul<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        RatFunc::reduced(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
