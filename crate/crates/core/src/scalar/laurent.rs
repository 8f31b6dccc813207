//! Sparse Laurent polynomials in `q` over `Z` or `F_p`.

use super::int::Int;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

/// A Laurent polynomial `sum c_k q^k`.
///
/// Terms are sorted by degree and no stored coefficient is zero. `modulus`
/// is `0` for integer coefficients, otherwise a prime `p` with every
/// coefficient kept in `1..p`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: Vec<(i32, Int)>,
    modulus: u32,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::zero_mod(0)
    }

    pub fn zero_mod(p: u32) -> Self {
        LaurentPoly { terms: Vec::new(), modulus: p }
    }

    pub fn one() -> Self {
        Self::monomial(Int::ONE, 0)
    }

    pub fn one_mod(p: u32) -> Self {
        Self::monomial_mod(Int::ONE, 0, p)
    }

    pub fn from_int(c: i64) -> Self {
        Self::monomial(Int::from(c), 0)
    }

    pub fn monomial(c: Int, deg: i32) -> Self {
        Self::monomial_mod(c, deg, 0)
    }

    pub fn monomial_mod(c: Int, deg: i32, p: u32) -> Self {
        let c = reduce(c, p);
        if c.is_zero() {
            Self::zero_mod(p)
        } else {
            LaurentPoly { terms: vec![(deg, c)], modulus: p }
        }
    }

    /// `q^k`.
    pub fn q_pow(k: i32) -> Self {
        Self::monomial(Int::ONE, k)
    }

    /// Builds a polynomial from arbitrary `(degree, coefficient)` pairs,
    /// merging repeated degrees.
    pub fn from_terms<I: IntoIterator<Item = (i32, Int)>>(it: I) -> Self {
        Self::from_terms_mod(it, 0)
    }

    pub fn from_terms_mod<I: IntoIterator<Item = (i32, Int)>>(it: I, p: u32) -> Self {
        let mut v: Vec<(i32, Int)> = it.into_iter().collect();
        v.sort_by_key(|t| t.0);
        let mut out: Vec<(i32, Int)> = Vec::with_capacity(v.len());
        for (d, c) in v {
            match out.last_mut() {
                Some(last) if last.0 == d => last.1 += &c,
                _ => out.push((d, c)),
            }
        }
        let terms = out
            .into_iter()
            .map(|(d, c)| (d, reduce(c, p)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        LaurentPoly { terms, modulus: p }
    }

    /// Builds from a dense coefficient vector starting at degree `low`.
    pub fn from_dense(low: i32, coeffs: Vec<Int>, p: u32) -> Self {
        let terms = coeffs
            .into_iter()
            .enumerate()
            .filter_map(|(k, c)| {
                let c = reduce(c, p);
                (!c.is_zero()).then_some((low + k as i32, c))
            })
            .collect();
        LaurentPoly { terms, modulus: p }
    }

    pub fn to_dense(&self) -> (i32, Vec<Int>) {
        let Some(lo) = self.low_deg() else {
            return (0, Vec::new());
        };
        let hi = self.high_deg().unwrap();
        let mut v = vec![Int::ZERO; (hi - lo + 1) as usize];
        for (d, c) in &self.terms {
            v[(d - lo) as usize] = c.clone();
        }
        (lo, v)
    }

    pub fn terms(&self) -> &[(i32, Int)] {
        &self.terms
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Units of `Z[q,q^-1]` are `±q^k`; over `F_p` every nonzero monomial.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1
            && (self.modulus != 0 || self.terms[0].1.abs().is_one())
    }

    pub fn low_deg(&self) -> Option<i32> {
        self.terms.first().map(|t| t.0)
    }

    pub fn high_deg(&self) -> Option<i32> {
        self.terms.last().map(|t| t.0)
    }

    pub fn low_coeff(&self) -> Int {
        self.terms.first().map(|t| t.1.clone()).unwrap_or(Int::ZERO)
    }

    pub fn high_coeff(&self) -> Int {
        self.terms.last().map(|t| t.1.clone()).unwrap_or(Int::ZERO)
    }

    pub fn coeff(&self, deg: i32) -> Int {
        match self.terms.binary_search_by_key(&deg, |t| t.0) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => Int::ZERO,
        }
    }

    /// `high_deg - low_deg`, or `-1` for zero.
    pub fn span(&self) -> i32 {
        match (self.low_deg(), self.high_deg()) {
            (Some(l), Some(h)) => h - l,
            _ => -1,
        }
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i32) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(d, c)| (d + k, c.clone())).collect(),
            modulus: self.modulus,
        }
    }

    /// The bar involution `q -> q^-1`.
    pub fn bar(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().rev().map(|(d, c)| (-d, c.clone())).collect(),
            modulus: self.modulus,
        }
    }

    pub fn scale(&self, c: &Int) -> Self {
        let c = reduce(c.clone(), self.modulus);
        if c.is_zero() {
            return Self::zero_mod(self.modulus);
        }
        let p = self.modulus;
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .filter_map(|(d, x)| {
                    let y = reduce(x * &c, p);
                    (!y.is_zero()).then_some((*d, y))
                })
                .collect(),
            modulus: p,
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut r = Self::one_mod(self.modulus);
        for _ in 0..n {
            r = &r * self;
        }
        r
    }

    /// Reduction modulo a prime.
    pub fn reduce_mod(&self, p: u32) -> Self {
        assert_eq!(self.modulus, 0, "already reduced");
        Self::from_terms_mod(self.terms.iter().cloned(), p)
    }

    /// The parts of degree `> 0`, `== 0` and `< 0`.
    pub fn positive_part(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().filter(|t| t.0 > 0).cloned().collect(),
            modulus: self.modulus,
        }
    }

    /// Content (gcd of coefficients), non-negative; zero for the zero poly.
    pub fn content(&self) -> Int {
        let mut g = Int::ZERO;
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Exact division by a scalar.
    pub fn div_exact_int(&self, c: &Int) -> Option<Self> {
        if self.modulus != 0 {
            let inv = inv_mod(c.rem_euclid_u32(self.modulus), self.modulus)?;
            return Some(self.scale(&Int::from(inv as i64)));
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (d, x) in &self.terms {
            terms.push((*d, x.div_exact(c)?));
        }
        Some(LaurentPoly { terms, modulus: 0 })
    }

    /// Exact division in `Z[q,q^-1]` (or `F_p[q,q^-1]`).
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        assert_eq!(self.modulus, d.modulus, "mixed characteristic");
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(self.clone());
        }
        if d.is_monomial() {
            let (k, c) = &d.terms[0];
            return Some(self.div_exact_int(c)?.shift(-k));
        }
        let p = self.modulus;
        let (alow, mut a) = self.to_dense();
        let (dlow, b) = d.to_dense();
        if a.len() < b.len() {
            return None;
        }
        let lc = b.last().unwrap().clone();
        let lc_inv = if p != 0 { Some(Int::from(inv_mod(lc.rem_euclid_u32(p), p)? as i64)) } else { None };
        let n = a.len() - b.len() + 1;
        let mut quo = vec![Int::ZERO; n];
        for k in (0..n).rev() {
            let top = a[k + b.len() - 1].clone();
            if top.is_zero() {
                continue;
            }
            let qk = match &lc_inv {
                Some(inv) => reduce(&top * inv, p),
                None => top.div_exact(&lc)?,
            };
            for (j, bj) in b.iter().enumerate() {
                if !bj.is_zero() {
                    let t = &qk * bj;
                    a[k + j] -= &t;
                    if p != 0 {
                        a[k + j] = reduce(a[k + j].clone(), p);
                    }
                }
            }
            quo[k] = qk;
        }
        if a.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::from_dense(alow - dlow, quo, p))
    }

    /// Evaluates at `q = t` modulo a prime `m < 2^63` (requires `t` invertible
    /// mod `m` when negative degrees occur).
    pub fn eval_mod(&self, t: u64, m: u64) -> u64 {
        let tinv = if self.low_deg().is_some_and(|d| d < 0) { pow_mod(t, m - 2, m) } else { 0 };
        let mut acc: u128 = 0;
        for (d, c) in &self.terms {
            let base = if *d >= 0 { pow_mod(t, *d as u64, m) } else { pow_mod(tinv, (-d) as u64, m) };
            let cm = match c {
                Int::Small(v) => v.rem_euclid(m as i64) as u64,
                Int::Big(_) => {
                    let r = c.to_big() % num_bigint::BigInt::from(m);
                    let r = if r.sign() == num_bigint::Sign::Minus { r + m } else { r };
                    u64::try_from(r).unwrap()
                }
            };
            acc = (acc + (cm as u128) * (base as u128)) % (m as u128);
        }
        acc as u64
    }

    /// Value at `q = 0`; requires no negative powers.
    pub fn at_zero(&self) -> Option<Int> {
        match self.low_deg() {
            None => Some(Int::ZERO),
            Some(d) if d > 0 => Some(Int::ZERO),
            Some(0) => Some(self.terms[0].1.clone()),
            _ => None,
        }
    }

    /// Largest coefficient size in bits, used for pivot heuristics.
    pub fn weight(&self) -> u64 {
        self.terms.iter().map(|t| t.1.bits()).max().unwrap_or(0) + self.span().max(0) as u64 * 4
            + self.terms.len() as u64
    }
}

pub(crate) fn reduce(c: Int, p: u32) -> Int {
    if p == 0 {
        c
    } else {
        Int::Small(c.rem_euclid_u32(p) as i64)
    }
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r: u128 = 1 % m as u128;
    let mut bb = (b % m) as u128;
    while e > 0 {
        if e & 1 == 1 {
            r = r * bb % m as u128;
        }
        bb = bb * bb % m as u128;
        e >>= 1;
    }
    b = r as u64;
    b
}

pub(crate) fn inv_mod(a: u32, p: u32) -> Option<u32> {
    if a.is_multiple_of(p) {
        return None;
    }
    Some(pow_mod(a as u64, p as u64 - 2, p as u64) as u32)
}

fn merge(a: &LaurentPoly, b: &LaurentPoly, negate_b: bool) -> LaurentPoly {
    assert_eq!(a.modulus, b.modulus, "mixed characteristic");
    let p = a.modulus;
    let mut out = Vec::with_capacity(a.terms.len() + b.terms.len());
    let (mut i, mut j) = (0, 0);
    while i < a.terms.len() || j < b.terms.len() {
        let take_a = j >= b.terms.len() || (i < a.terms.len() && a.terms[i].0 < b.terms[j].0);
        let take_b = i >= a.terms.len() || (j < b.terms.len() && b.terms[j].0 < a.terms[i].0);
        if take_a {
            out.push(a.terms[i].clone());
            i += 1;
        } else if take_b {
            let c = if negate_b { reduce(-&b.terms[j].1, p) } else { b.terms[j].1.clone() };
            out.push((b.terms[j].0, c));
            j += 1;
        } else {
            let c = if negate_b { &a.terms[i].1 - &b.terms[j].1 } else { &a.terms[i].1 + &b.terms[j].1 };
            let c = reduce(c, p);
            if !c.is_zero() {
                out.push((a.terms[i].0, c));
            }
            i += 1;
            j += 1;
        }
    }
    LaurentPoly { terms: out, modulus: p }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        merge(self, rhs, false)
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        merge(self, rhs, true)
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        if rhs.is_zero() {
            return;
        }
        *self = merge(self, rhs, false);
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        if rhs.is_zero() {
            return;
        }
        *self = merge(self, rhs, true);
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        let p = self.modulus;
        LaurentPoly {
            terms: self.terms.iter().map(|(d, c)| (*d, reduce(-c, p))).collect(),
            modulus: p,
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.modulus, rhs.modulus, "mixed characteristic");
        let p = self.modulus;
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero_mod(p);
        }
        if rhs.terms.len() == 1 {
            let (k, c) = &rhs.terms[0];
            return self.scale(c).shift(*k);
        }
        if self.terms.len() == 1 {
            let (k, c) = &self.terms[0];
            return rhs.scale(c).shift(*k);
        }
        let lo = self.low_deg().unwrap() + rhs.low_deg().unwrap();
        let hi = self.high_deg().unwrap() + rhs.high_deg().unwrap();
        let mut acc = vec![Int::ZERO; (hi - lo + 1) as usize];
        for (da, ca) in &self.terms {
            for (db, cb) in &rhs.terms {
                acc[(da + db - lo) as usize].add_mul(ca, cb);
            }
        }
        LaurentPoly::from_dense(lo, acc, p)
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl fmt::Display for LaurentPoly {
    /// Increasing degree, e.g. `3*q^-2 + 1 + q^5`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (d, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let mono = match d {
                0 => String::new(),
                1 => "q".to_string(),
                _ => format!("q^{d}"),
            };
            if mono.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{a}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")?;
        if self.modulus != 0 {
            write!(f, " mod {}", self.modulus)?;
        }
        Ok(())
    }
}
