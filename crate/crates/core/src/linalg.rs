//! Exact linear algebra over `Z[q,q^-1]`, `F_p[q,q^-1]` and their fraction
//! fields, plus ranks of specialisations modulo a word-size prime.

use crate::error::{Error, Result};
use crate::scalar::{gcd, normalize_unit, pow_mod, Int, LaurentPoly, RatFunc};

pub type Mat = Vec<Vec<LaurentPoly>>;

/// A vector over `Frac(R)` stored as numerators over one denominator.
///
/// After `normalize` the numerators and denominator share no common factor
/// and the denominator is normalised as in `RatFunc`, so equal vectors have
/// equal representations.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FracVec {
    pub num: Vec<LaurentPoly>,
    pub den: LaurentPoly,
}

impl FracVec {
    pub fn zero(n: usize, p: u32) -> Self {
        FracVec { num: vec![LaurentPoly::zero_mod(p); n], den: LaurentPoly::one_mod(p) }
    }

    pub fn unit(n: usize, i: usize, p: u32) -> Self {
        let mut v = Self::zero(n, p);
        v.num[i] = LaurentPoly::one_mod(p);
        v
    }

    pub fn from_laurent(num: Vec<LaurentPoly>) -> Self {
        let p = num.first().map_or(0, |x| x.modulus());
        FracVec { num, den: LaurentPoly::one_mod(p) }.normalized()
    }

    pub fn with_den(num: Vec<LaurentPoly>, den: LaurentPoly) -> Self {
        FracVec { num, den }.normalized()
    }

    pub fn from_ratfuncs(v: &[RatFunc]) -> Self {
        let mut den = LaurentPoly::one();
        for x in v {
            den = lcm(&den, x.den());
        }
        let num = v
            .iter()
            .map(|x| x.num() * &den.div_exact(x.den()).unwrap())
            .collect();
        FracVec { num, den }.normalized()
    }

    pub fn len(&self) -> usize {
        self.num.len()
    }

    pub fn is_empty(&self) -> bool {
        self.num.is_empty()
    }

    pub fn modulus(&self) -> u32 {
        self.den.modulus()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|x| x.is_zero())
    }

    pub fn get(&self, i: usize) -> RatFunc {
        RatFunc::new(self.num[i].clone(), self.den.clone()).unwrap()
    }

    /// Entry `i` as a Laurent polynomial, if integral.
    pub fn get_laurent(&self, i: usize) -> Option<LaurentPoly> {
        self.num[i].div_exact(&self.den)
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    pub fn to_laurent(&self) -> Option<Vec<LaurentPoly>> {
        if self.is_integral() {
            Some(self.num.clone())
        } else {
            None
        }
    }

    pub fn normalized(mut self) -> Self {
        self.normalize();
        self
    }

    pub fn normalize(&mut self) {
        let p = self.modulus();
        if self.is_zero() {
            self.den = LaurentPoly::one_mod(p);
            return;
        }
        if !self.den.is_unit() {
            let mut g = self.den.clone();
            for x in &self.num {
                if x.is_zero() {
                    continue;
                }
                g = gcd(&g, x);
                if g.is_one() {
                    break;
                }
            }
            if !g.is_one() {
                self.den = self.den.div_exact(&g).unwrap();
                for x in self.num.iter_mut() {
                    *x = x.div_exact(&g).unwrap();
                }
            }
        }
        let (d, u) = normalize_unit(&self.den);
        if !u.is_one() {
            for x in self.num.iter_mut() {
                *x = x.div_exact(&u).unwrap();
            }
            self.den = d;
        }
    }

    pub fn neg(&self) -> Self {
        FracVec { num: self.num.iter().map(|x| -x).collect(), den: self.den.clone() }
    }

    pub fn bar(&self) -> Self {
        FracVec { num: self.num.iter().map(|x| x.bar()).collect(), den: self.den.bar() }.normalized()
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        FracVec {
            num: self.num.iter().map(|x| x * c.num()).collect(),
            den: &self.den * c.den(),
        }
        .normalized()
    }

    pub fn scale_laurent(&self, c: &LaurentPoly) -> Self {
        FracVec { num: self.num.iter().map(|x| x * c).collect(), den: self.den.clone() }.normalized()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut acc = Accum::new(self.len(), self.modulus());
        acc.add(&LaurentPoly::one_mod(self.modulus()), self);
        acc.add(&LaurentPoly::one_mod(self.modulus()), other);
        acc.finish()
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Dot product with a vector of scalars.
    pub fn dot(&self, w: &[LaurentPoly]) -> RatFunc {
        let mut s = LaurentPoly::zero_mod(self.modulus());
        for (a, b) in self.num.iter().zip(w) {
            if !a.is_zero() && !b.is_zero() {
                s += &(a * b);
            }
        }
        RatFunc::new(s, self.den.clone()).unwrap()
    }

    pub fn reduce_mod(&self, p: u32) -> Result<Self> {
        let den = self.den.reduce_mod(p);
        if den.is_zero() {
            return Err(Error::NotIntegral(format!("denominator vanishes mod {p}")));
        }
        Ok(FracVec { num: self.num.iter().map(|x| x.reduce_mod(p)).collect(), den }.normalized())
    }
}

pub fn lcm(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    if a.is_unit() {
        return b.clone();
    }
    if b.is_unit() || a == b {
        return a.clone();
    }
    let g = gcd(a, b);
    a * &b.div_exact(&g).unwrap()
}

/// Accumulates `sum c_k v_k` with a running common denominator.
pub struct Accum {
    num: Vec<LaurentPoly>,
    den: LaurentPoly,
}

impl Accum {
    pub fn new(n: usize, p: u32) -> Self {
        Accum { num: vec![LaurentPoly::zero_mod(p); n], den: LaurentPoly::one_mod(p) }
    }

    pub fn add(&mut self, c: &LaurentPoly, v: &FracVec) {
        if c.is_zero() || v.is_zero() {
            return;
        }
        if v.den != self.den {
            let l = lcm(&self.den, &v.den);
            let up = l.div_exact(&self.den).unwrap();
            if !up.is_one() {
                for x in self.num.iter_mut() {
                    if !x.is_zero() {
                        *x = &*x * &up;
                    }
                }
            }
            self.den = l;
        }
        let f = c * &self.den.div_exact(&v.den).unwrap();
        for (x, y) in self.num.iter_mut().zip(&v.num) {
            if !y.is_zero() {
                *x += &(&f * y);
            }
        }
    }

    /// Adds `c * v` where `c` is rational.
    pub fn add_rat(&mut self, c: &RatFunc, v: &FracVec) {
        if c.is_zero() {
            return;
        }
        if c.den().is_one() {
            self.add(c.num(), v);
        } else {
            let w = FracVec { num: v.num.clone(), den: &v.den * c.den() };
            self.add(c.num(), &w);
        }
    }

    pub fn finish(self) -> FracVec {
        FracVec { num: self.num, den: self.den }.normalized()
    }
}

/// Result of exact Gauss-Jordan elimination.
#[derive(Clone, Debug)]
pub struct Echelon {
    /// Pivot rows first, each with its pivot entry in `pivots[k]`; every
    /// other pivot column of a pivot row is zero.
    pub rows: Mat,
    pub pivots: Vec<usize>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

fn row_content(row: &[LaurentPoly]) -> Option<LaurentPoly> {
    let mut g: Option<LaurentPoly> = None;
    for x in row {
        if x.is_zero() {
            continue;
        }
        let ng = match &g {
            None => normalize_unit(x).0,
            Some(g0) => gcd(g0, x),
        };
        if ng.is_one() {
            return None;
        }
        g = Some(ng);
    }
    g
}

/// Gauss-Jordan over `R = Z[q,q^-1]` or `F_p[q,q^-1]` without fractions.
///
/// Only the first `pivot_cols` columns are used for pivots, so an augmented
/// matrix `[A | B]` can be passed. Rows are kept primitive.
pub fn gauss_jordan(mut m: Mat, pivot_cols: usize) -> Echelon {
    let nrows = m.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..pivot_cols {
        if r == nrows {
            break;
        }
        let best = (r..nrows)
            .filter(|&i| !m[i][c].is_zero())
            .min_by_key(|&i| (!m[i][c].is_unit(), m[i][c].weight(), i));
        let Some(i) = best else { continue };
        m.swap(i, r);
        let piv = m[r][c].clone();
        if piv.is_unit() && !piv.is_one() {
            let u = piv.clone();
            for x in m[r].iter_mut() {
                if !x.is_zero() {
                    *x = x.div_exact(&u).unwrap();
                }
            }
        }
        let piv = m[r][c].clone();
        let pivot_row = m[r].clone();
        for i in 0..nrows {
            if i == r || m[i][c].is_zero() {
                continue;
            }
            let e = m[i][c].clone();
            if piv.is_one() {
                for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x -= &(&e * y);
                    }
                }
            } else {
                let g = gcd(&piv, &e);
                let a = piv.div_exact(&g).unwrap();
                let b = e.div_exact(&g).unwrap();
                for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                    let ax = if x.is_zero() { LaurentPoly::zero_mod(piv.modulus()) } else { &a * &*x };
                    *x = if y.is_zero() { ax } else { &ax - &(&b * y) };
                }
                if let Some(g) = row_content(&m[i]) {
                    for x in m[i].iter_mut() {
                        if !x.is_zero() {
                            *x = x.div_exact(&g).unwrap();
                        }
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    Echelon { rows: m, pivots }
}

/// Solves `A X = B` for square nonsingular `A`; returns the columns of `X`.
pub fn solve(a: &Mat, b: &Mat) -> Result<Vec<FracVec>> {
    let n = a.len();
    let k = b.first().map_or(0, |r| r.len());
    let p = a.first().and_then(|r| r.first()).map_or(0, |x| x.modulus());
    let aug: Mat = a
        .iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().chain(rb.iter()).cloned().collect())
        .collect();
    let ech = gauss_jordan(aug, n);
    if ech.rank() < n {
        return Err(Error::Verification("singular system".into()));
    }
    let mut cols = Vec::with_capacity(k);
    for j in 0..k {
        let mut den = LaurentPoly::one_mod(p);
        for r in 0..n {
            den = lcm(&den, &normalize_unit(&ech.rows[r][ech.pivots[r]]).0);
        }
        let mut num = vec![LaurentPoly::zero_mod(p); n];
        for r in 0..n {
            let piv = &ech.rows[r][ech.pivots[r]];
            let f = den.div_exact(piv).unwrap();
            num[ech.pivots[r]] = &ech.rows[r][n + j] * &f;
        }
        cols.push(FracVec { num, den }.normalized());
    }
    Ok(cols)
}

/// Inverse of a square matrix as columns over the fraction field.
pub fn inverse(a: &Mat) -> Result<Vec<FracVec>> {
    let n = a.len();
    let p = a.first().and_then(|r| r.first()).map_or(0, |x| x.modulus());
    let id: Mat = (0..n)
        .map(|i| (0..n).map(|j| if i == j { LaurentPoly::one_mod(p) } else { LaurentPoly::zero_mod(p) }).collect())
        .collect();
    solve(a, &id)
}

/// Determinant by Bareiss elimination.
pub fn det(a: &Mat) -> LaurentPoly {
    let n = a.len();
    let p = a.first().and_then(|r| r.first()).map_or(0, |x| x.modulus());
    if n == 0 {
        return LaurentPoly::one_mod(p);
    }
    let mut m = a.clone();
    let mut prev = LaurentPoly::one_mod(p);
    let mut sign = false;
    for k in 0..n {
        let Some(i) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return LaurentPoly::zero_mod(p);
        };
        if i != k {
            m.swap(i, k);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = v.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = m[k][k].clone();
    }
    if sign {
        -prev
    } else {
        prev
    }
}

/// Rank of a matrix over `F_m` for a word-size prime `m`.
pub fn rank_mod(mut m: Vec<Vec<u64>>, modulus: u64) -> usize {
    let nrows = m.len();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..ncols {
        let Some(i) = (r..nrows).find(|&i| m[i][c] != 0) else { continue };
        m.swap(i, r);
        let inv = pow_mod(m[r][c], modulus - 2, modulus);
        for x in m[r].iter_mut() {
            *x = ((*x as u128 * inv as u128) % modulus as u128) as u64;
        }
        let pr = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c] == 0 {
                continue;
            }
            let e = row[c];
            for (x, y) in row.iter_mut().zip(&pr) {
                let t = (e as u128 * *y as u128 % modulus as u128) as u64;
                *x = (*x + modulus - t) % modulus;
            }
        }
        r += 1;
        if r == nrows {
            break;
        }
    }
    r
}

pub fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let p = a.first().and_then(|r| r.first()).map_or(0, |x| x.modulus());
    let k = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..k)
                .map(|j| {
                    let mut s = LaurentPoly::zero_mod(p);
                    for (l, x) in row.iter().enumerate() {
                        if !x.is_zero() && !b[l][j].is_zero() {
                            s += &(x * &b[l][j]);
                        }
                    }
                    s
                })
                .collect()
        })
        .collect()
}

pub fn identity(n: usize, p: u32) -> Mat {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { LaurentPoly::one_mod(p) } else { LaurentPoly::zero_mod(p) }).collect())
        .collect()
}

/// Columns (as `FracVec`) to a matrix, if all are integral.
pub fn columns_to_mat(cols: &[FracVec]) -> Option<Mat> {
    let n = cols.first().map_or(0, |c| c.len());
    let mut m = vec![Vec::with_capacity(cols.len()); n];
    for c in cols {
        let v = c.to_laurent()?;
        for (i, x) in v.into_iter().enumerate() {
            m[i].push(x);
        }
    }
    Some(m)
}

pub fn int_poly(v: &[(i32, i64)]) -> LaurentPoly {
    LaurentPoly::from_terms(v.iter().map(|&(d, c)| (d, Int::from(c))))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(k: i32) -> LaurentPoly {
        LaurentPoly::q_pow(k)
    }

    #[test]
    fn solve_matches_product() {
        let one = LaurentPoly::one();
        let a: Mat = vec![
            vec![&q(1) + &one, q(2), one.clone()],
            vec![one.clone(), &q(-1) - &one, q(3)],
            vec![q(1), one.clone(), int_poly(&[(0, 2), (1, 1)])],
        ];
        let x: Mat = vec![vec![one.clone()], vec![q(-2)], vec![&q(5) - &one]];
        let b = mat_mul(&a, &x);
        let sol = solve(&a, &b).unwrap();
        assert_eq!(sol.len(), 1);
        assert_eq!(sol[0].to_laurent().unwrap(), vec![one.clone(), q(-2), &q(5) - &one]);
        let d = det(&a);
        let inv = inverse(&a).unwrap();
        let inv_scaled: Vec<FracVec> = inv.iter().map(|c| c.scale_laurent(&d)).collect();
        let m = columns_to_mat(&inv_scaled).unwrap();
        let prod = mat_mul(&a, &m);
        for i in 0..3 {
            for j in 0..3 {
                let expect = if i == j { d.clone() } else { LaurentPoly::zero() };
                assert_eq!(prod[i][j], expect);
            }
        }
    }

    #[test]
    fn echelon_rank() {
        let one = LaurentPoly::one();
        let r0 = vec![one.clone(), q(1), q(2)];
        let r1 = vec![&q(1) + &one, &q(1) + &q(2), &q(2) + &q(3)];
        let r2 = vec![q(3), one.clone(), one.clone()];
        let e = gauss_jordan(vec![r0, r1, r2], 3);
        assert_eq!(e.rank(), 2);
        assert_eq!(rank_mod(vec![vec![1, 2], vec![2, 4]], 7), 1);
    }

    #[test]
    fn fracvec_normal_form() {
        let two = LaurentPoly::from_int(2);
        let v = FracVec::with_den(vec![two.clone(), &two * &q(1)], &two * &q(3));
        assert!(v.den.is_one());
        assert_eq!(v.num, vec![q(-3), q(-2)]);
        let w = FracVec::with_den(vec![LaurentPoly::one()], -&two);
        assert_eq!(w.den, two);
        assert_eq!(w.num[0], LaurentPoly::from_int(-1));
        assert_eq!(w.add(&w.neg()), FracVec::zero(1, 0));
    }
}
