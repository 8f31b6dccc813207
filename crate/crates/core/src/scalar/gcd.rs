//! Greatest common divisors in `Z[q,q^-1]` and `F_p[q,q^-1]`.
//!
//! Results are normalised: lowest degree `0`, lowest coefficient positive
//! (over `Z`) or equal to `1` (over `F_p`). Over `Z` the integer content is
//! included, so `gcd(2, 4q) = 2`.

use super::int::Int;
use super::laurent::{inv_mod, reduce, LaurentPoly};

/// Normalises an associate class representative as described above.
pub fn normalize_unit(a: &LaurentPoly) -> (LaurentPoly, LaurentPoly) {
    // returns (normalised a, unit u) with a = u * normalised
    let p = a.modulus();
    let Some(lo) = a.low_deg() else {
        return (a.clone(), LaurentPoly::one_mod(p));
    };
    let lc = a.low_coeff();
    if p == 0 {
        let s = if lc.is_negative() { -1 } else { 1 };
        let n = a.shift(-lo).scale(&Int::from(s as i64));
        (n, LaurentPoly::monomial(Int::from(s as i64), lo))
    } else {
        let inv = inv_mod(lc.rem_euclid_u32(p), p).unwrap();
        let n = a.shift(-lo).scale(&Int::from(inv as i64));
        (n, LaurentPoly::monomial_mod(lc, lo, p))
    }
}

pub fn gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    assert_eq!(a.modulus(), b.modulus(), "mixed characteristic");
    let p = a.modulus();
    if a.is_zero() {
        return normalize_unit(b).0;
    }
    if b.is_zero() {
        return normalize_unit(a).0;
    }
    if p == 0 {
        gcd_z(a, b)
    } else {
        gcd_fp(a, b, p)
    }
}

fn strip(a: &LaurentPoly) -> Vec<Int> {
    a.to_dense().1
}

fn trim(v: &mut Vec<Int>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn content(v: &[Int]) -> Int {
    let mut g = Int::ZERO;
    for c in v {
        if !c.is_zero() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
    }
    g
}

fn primitive(v: &mut [Int]) {
    let c = content(v);
    if !c.is_zero() && !c.is_one() {
        for x in v.iter_mut() {
            *x = x.div_exact(&c).unwrap();
        }
    }
}

fn gcd_z(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    let mut x = strip(a);
    let mut y = strip(b);
    let g_c = content(&x).gcd(&content(&y));
    if x.len() == 1 || y.len() == 1 {
        return LaurentPoly::monomial(g_c, 0);
    }
    primitive(&mut x);
    primitive(&mut y);
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while y.len() > 1 {
        let mut r = x.clone();
        let lb = y.last().unwrap().clone();
        while r.len() >= y.len() {
            let lr = r.last().unwrap().clone();
            let k = r.len() - y.len();
            for c in r.iter_mut() {
                *c = &*c * &lb;
            }
            for (j, yj) in y.iter().enumerate() {
                let t = &lr * yj;
                r[k + j] -= &t;
            }
            trim(&mut r);
            if r.is_empty() {
                break;
            }
            primitive(&mut r);
        }
        // strip trailing q-powers from the remainder: they are units here
        let lead_zero = r.iter().take_while(|c| c.is_zero()).count();
        r.drain(..lead_zero);
        x = y;
        y = r;
        if y.is_empty() {
            break;
        }
        primitive(&mut y);
    }
    let g = if y.len() == 1 { vec![Int::ONE] } else { x };
    let poly = LaurentPoly::from_dense(0, g, 0).scale(&g_c);
    normalize_unit(&poly).0
}

fn gcd_fp(a: &LaurentPoly, b: &LaurentPoly, p: u32) -> LaurentPoly {
    let mut x = strip(a);
    let mut y = strip(b);
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let inv = Int::from(inv_mod(y.last().unwrap().rem_euclid_u32(p), p).unwrap() as i64);
        let mut r = x.clone();
        while r.len() >= y.len() {
            let f = reduce(&r.last().unwrap().clone() * &inv, p);
            let k = r.len() - y.len();
            for (j, yj) in y.iter().enumerate() {
                let t = &f * yj;
                r[k + j] = reduce(&r[k + j] - &t, p);
            }
            trim(&mut r);
        }
        let lead_zero = r.iter().take_while(|c| c.is_zero()).count();
        r.drain(..lead_zero);
        x = y;
        y = r;
    }
    normalize_unit(&LaurentPoly::from_dense(0, x, p)).0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(v: &[(i32, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(v.iter().map(|&(d, c)| (d, Int::from(c))))
    }

    #[test]
    fn common_factor_recovered() {
        let f = lp(&[(0, 1), (2, 1)]);
        let a = &f * &lp(&[(-3, 2), (1, -1)]);
        let b = &f * &lp(&[(0, 3), (1, 1)]);
        assert_eq!(gcd(&a, &b), f);
        assert_eq!(gcd(&lp(&[(0, 2)]), &lp(&[(5, 4)])), lp(&[(0, 2)]));
        assert_eq!(gcd(&lp(&[(0, 1), (1, 1)]), &lp(&[(0, 1), (1, -1)])), LaurentPoly::one());
    }

    #[test]
    fn content_is_kept() {
        let a = lp(&[(0, 6), (1, 6)]);
        let b = lp(&[(0, 4), (1, 4), (2, 0)]);
        assert_eq!(gcd(&a, &b), lp(&[(0, 2), (1, 2)]));
    }

    #[test]
    fn modular_gcd() {
        let f = lp(&[(0, 1), (1, 1), (2, 1)]).reduce_mod(2);
        let a = &f * &lp(&[(0, 1), (1, 1)]).reduce_mod(2);
        let b = &f * &f;
        assert_eq!(gcd(&a, &b), f);
    }
}
