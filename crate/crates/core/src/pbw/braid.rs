//! The braid operators `T''_{i,1}` restricted to `U^-`.
//!
//! With `q_i = q^{d_i}` and `r = -a_ij`:
//!
//! * `T_i(f_i) = -K_i^{-1} E_i`
//! * `T_i(f_j) = sum_{s=0}^{r} (-1)^s q_i^s f_i^{(s)} f_j f_i^{(r-s)}`
//!
//! `T_i(x)` for `x in U^-` is evaluated in the subalgebra spanned by
//! `y K_i^a E_i^n` (`y in U^-`). When `T_i(x)` lies in `U^-` every term with
//! `(n, a) != (0, 0)` cancels; anything left over is reported as a
//! convention error.

use crate::cartan::Weight;
use crate::error::{Error, Result};
use crate::freealg::{Algebra, QuotElt};
use crate::scalar::{quantum_factorial, LaurentPoly, RatFunc};
use std::collections::BTreeMap;

type Mixed = BTreeMap<(u32, i32), QuotElt>;

fn add_into(m: &mut Mixed, key: (u32, i32), v: QuotElt) -> Result<()> {
    if v.is_zero() {
        return Ok(());
    }
    match m.remove(&key) {
        None => {
            m.insert(key, v);
        }
        Some(old) => {
            let s = old.add(&v)?;
            if !s.is_zero() {
                m.insert(key, s);
            }
        }
    }
    Ok(())
}

/// `1 / (q_i - q_i^{-1})`.
fn inv_qdiff(d: u32) -> RatFunc {
    let den = &LaurentPoly::q_pow(d as i32) - &LaurentPoly::q_pow(-(d as i32));
    RatFunc::new(LaurentPoly::one(), den).unwrap()
}

/// `E_i^n z` as `sum z' K_i^b E_i^m`.
fn e_pow_times(a: &mut Algebra, i: usize, n: u32, z: &QuotElt) -> Result<Mixed> {
    let d = a.datum().d(i);
    let aii = a.datum().pairing[i][i];
    let mut cur: Mixed = BTreeMap::new();
    cur.insert((0, 0), z.clone());
    for _ in 0..n {
        let mut next: Mixed = BTreeMap::new();
        for ((m, b), y) in &cur {
            // y E K^b E^m = q^{-b (a_i, a_i)} y K^b E^{m+1}
            add_into(&mut next, (m + 1, *b), y.scale(&RatFunc::from(LaurentPoly::q_pow((-(*b as i64) * aii) as i32))))?;
            if y.weight.0[i] > 0 {
                let c = inv_qdiff(d);
                let plus = a.derivation(i, y, -1)?.scale(&c);
                let minus = a.derivation(i, y, 1)?.scale(&c).neg();
                add_into(&mut next, (*m, b + 1), plus)?;
                add_into(&mut next, (*m, b - 1), minus)?;
            }
        }
        cur = next;
    }
    Ok(cur)
}

/// `M * z` for `z in U^-`.
fn mixed_times_f(a: &mut Algebra, i: usize, m: &Mixed, z: &QuotElt) -> Result<Mixed> {
    let mut out: Mixed = BTreeMap::new();
    for ((n, k), y) in m {
        for ((mm, b), zp) in e_pow_times(a, i, *n, z)? {
            // y K^k z' = q^{-k (a_i, wt z')} y z' K^k
            let e = -(*k as i64) * a.datum().pair_simple(i, &zp.weight);
            let prod = a.mul(y, &zp)?.scale(&RatFunc::from(LaurentPoly::q_pow(e as i32)));
            add_into(&mut out, (mm, k + b), prod)?;
        }
    }
    Ok(out)
}

/// `M * (-K_i^{-1} E_i)`.
fn mixed_times_ti_fi(a: &Algebra, i: usize, m: &Mixed) -> Result<Mixed> {
    let aii = a.datum().pairing[i][i];
    let mut out: Mixed = BTreeMap::new();
    for ((n, k), y) in m {
        let c = -LaurentPoly::q_pow((*n as i64 * aii) as i32);
        add_into(&mut out, (n + 1, k - 1), y.scale(&RatFunc::from(c)))?;
    }
    Ok(out)
}

/// `T_i(f_j)` for `j != i`.
pub fn braid_generator(a: &mut Algebra, i: usize, j: usize) -> Result<QuotElt> {
    let d = a.datum().d(i);
    let r = -a.datum().a(i, j);
    let weight = Weight::simple(j) + Weight::simple(i).scale(r as i32);
    let mut acc = a.zero(&weight)?;
    for s in 0..=r {
        let mut w = vec![i as u8; s as usize];
        w.push(j as u8);
        w.extend(std::iter::repeat_n(i as u8, (r - s) as usize));
        let x = a.word(&w)?;
        let fac = &quantum_factorial(s as u32, d) * &quantum_factorial((r - s) as u32, d);
        let mut c = LaurentPoly::q_pow((d as i64 * s) as i32);
        if s % 2 == 1 {
            c = -c;
        }
        acc = acc.add(&x.scale(&RatFunc::new(c, fac)?))?;
    }
    Ok(acc)
}

/// `T_i(x)`, required to lie in `U^-`.
pub fn braid_apply(a: &mut Algebra, i: usize, x: &QuotElt) -> Result<QuotElt> {
    let target = a.datum().reflect(i, &x.weight);
    if !target.is_nonneg() {
        return Err(Error::Convention(format!("T_{} maps weight {:?} outside U^-", i + 1, x.weight)));
    }
    let rank = a.rank();
    let mut images: Vec<Option<QuotElt>> = vec![None; rank];
    for j in 0..rank {
        if j != i {
            images[j] = Some(braid_generator(a, i, j)?);
        }
    }
    let sp = a.space(&x.weight)?;
    let mut total: Mixed = BTreeMap::new();
    for (k, u) in sp.std.iter().enumerate() {
        if x.coords.num[k].is_zero() {
            continue;
        }
        let mut m: Mixed = BTreeMap::new();
        m.insert((0, 0), a.one());
        for &l in u {
            let l = l as usize;
            m = if l == i {
                mixed_times_ti_fi(a, i, &m)?
            } else {
                mixed_times_f(a, i, &m, images[l].as_ref().unwrap())?
            };
        }
        let c = x.coords.get(k);
        for (key, y) in m {
            add_into(&mut total, key, y.scale(&c))?;
        }
    }
    let mut result = None;
    for (key, y) in total {
        if key == (0, 0) {
            result = Some(y);
        } else {
            return Err(Error::Convention(format!(
                "T_{}({:?}) has a surviving E^{} K^{} term",
                i + 1,
                x.weight,
                key.0,
                key.1
            )));
        }
    }
    match result {
        Some(y) => Ok(y),
        None => a.zero(&target),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::build_cartan;

    fn q(k: i32) -> RatFunc {
        RatFunc::from(LaurentPoly::q_pow(k))
    }

    #[test]
    fn a2_braid_relation_on_generators() {
        let mut a = Algebra::new(build_cartan("A2").unwrap());
        // T_1 T_2 (f_1) = f_2
        let f1 = a.generator(0);
        let x = braid_apply(&mut a, 1, &f1).unwrap();
        let y = braid_apply(&mut a, 0, &x).unwrap();
        assert_eq!(y, a.generator(1));
        // T_1(f_2) = f_2 f_1 - q f_1 f_2
        let t = braid_generator(&mut a, 0, 1).unwrap();
        let e = a.word(&[1, 0]).unwrap().sub(&a.word(&[0, 1]).unwrap().scale(&q(1))).unwrap();
        assert_eq!(t, e);
    }

    #[test]
    fn b2_root_vector() {
        let mut a = Algebra::new(build_cartan("B2").unwrap());
        let t = braid_generator(&mut a, 0, 1).unwrap();
        let e = a.word(&[1, 0]).unwrap().sub(&a.word(&[0, 1]).unwrap().scale(&q(2))).unwrap();
        assert_eq!(t, e);
        // T_1 T_2 T_1 (f_2) = f_2 for the word (1,2,1,2)
        let f2 = a.generator(1);
        let x = braid_apply(&mut a, 0, &f2).unwrap();
        let x = braid_apply(&mut a, 1, &x).unwrap();
        let x = braid_apply(&mut a, 0, &x).unwrap();
        assert_eq!(x, f2);
    }

    #[test]
    fn g2_longest_returns_generator() {
        let mut a = Algebra::new(build_cartan("G2").unwrap());
        // for h = (1,2,1,2,1,2), beta_6 = alpha_2 and the root vector is f_2
        let mut x = a.generator(1);
        for &i in [0usize, 1, 0, 1, 0].iter().rev() {
            x = braid_apply(&mut a, i, &x).unwrap();
        }
        assert_eq!(x, a.generator(1));
    }
}
