//! The symmetric bilinear form with `(f_i, f_i) = 1 / (1 - q_i^2)` and
//! `(x, y'y'') = (r(x), y' (x) y'')`.
//!
//! On words `(f_u, f_w) = c(gamma) g(u, w)` where `c(gamma)` is the product
//! of `(1 - q_i^2)^{-1}` over the letters and `g` is integral, computed by
//! `g(u, w'j) = sum_{u_p = j} q^{-(alpha_j, wt u_{>p})} g(u \ p, w')`.

use super::quotient::{Algebra, QuotElt};
use crate::cartan::{CartanDatum, Weight, Word};
use crate::error::Result;
use crate::linalg::Mat;
use crate::scalar::{pow_mod, LaurentPoly, RatFunc};
use std::collections::HashMap;
use std::sync::Arc;

#[derive(Default)]
pub struct FormCache {
    words: HashMap<(Word, Word), LaurentPoly>,
    gram: HashMap<Weight, Arc<Mat>>,
}

fn word_form(d: &CartanDatum, memo: &mut HashMap<(Word, Word), LaurentPoly>, u: &[u8], w: &[u8]) -> LaurentPoly {
    if u.len() != w.len() {
        return LaurentPoly::zero();
    }
    if u.is_empty() {
        return LaurentPoly::one();
    }
    if Weight::of_word(u) != Weight::of_word(w) {
        return LaurentPoly::zero();
    }
    let key = (u.to_vec(), w.to_vec());
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    let j = *w.last().unwrap();
    let wp = &w[..w.len() - 1];
    let mut acc = LaurentPoly::zero();
    let mut tail = Weight::zero();
    for p in (0..u.len()).rev() {
        if u[p] == j {
            let e = -d.pair_simple(j as usize, &tail);
            let mut rest = u[..p].to_vec();
            rest.extend_from_slice(&u[p + 1..]);
            let g = word_form(d, memo, &rest, wp);
            if !g.is_zero() {
                acc += &g.shift(e as i32);
            }
        }
        tail.0[u[p] as usize] += 1;
    }
    memo.insert(key, acc.clone());
    acc
}

/// `prod_i (1 - q_i^2)^{-gamma_i}`.
pub fn form_scalar(d: &CartanDatum, gamma: &Weight) -> RatFunc {
    let mut den = LaurentPoly::one();
    for i in 0..d.rank() {
        let f = &LaurentPoly::one() - &LaurentPoly::q_pow(2 * d.d(i) as i32);
        for _ in 0..gamma.0[i] {
            den = &den * &f;
        }
    }
    RatFunc::new(LaurentPoly::one(), den).unwrap()
}

impl Algebra {
    /// `(f_u, f_w)`.
    pub fn form_words(&mut self, u: &[u8], w: &[u8]) -> RatFunc {
        let d = self.datum().clone();
        let g = word_form(&d, &mut self.form.words, u, w);
        &RatFunc::from(g) * &form_scalar(&d, &Weight::of_word(u))
    }

    /// Integral Gram matrix `g(s, t)` of the standard words at `gamma`.
    pub fn gram_std(&mut self, gamma: &Weight) -> Result<Arc<Mat>> {
        if let Some(m) = self.form.gram.get(gamma) {
            return Ok(m.clone());
        }
        let sp = self.space(gamma)?;
        let d = self.datum().clone();
        let mut m = vec![vec![LaurentPoly::zero(); sp.dim()]; sp.dim()];
        for a in 0..sp.dim() {
            for b in a..sp.dim() {
                let v = word_form(&d, &mut self.form.words, &sp.std[a], &sp.std[b]);
                m[a][b] = v.clone();
                m[b][a] = v;
            }
        }
        let m = Arc::new(m);
        self.form.gram.insert(*gamma, m.clone());
        Ok(m)
    }

    pub fn form(&mut self, x: &QuotElt, y: &QuotElt) -> Result<RatFunc> {
        if x.weight != y.weight {
            return Ok(RatFunc::zero());
        }
        let g = self.gram_std(&x.weight)?;
        let n = g.len();
        let mut s = LaurentPoly::zero();
        for a in 0..n {
            if x.coords.num[a].is_zero() {
                continue;
            }
            let mut t = LaurentPoly::zero();
            for b in 0..n {
                if !y.coords.num[b].is_zero() && !g[a][b].is_zero() {
                    t += &(&g[a][b] * &y.coords.num[b]);
                }
            }
            s += &(&x.coords.num[a] * &t);
        }
        let den = &x.coords.den * &y.coords.den;
        let v = RatFunc::new(s, den)?;
        Ok(&v * &form_scalar(self.datum(), &x.weight))
    }
}

/// Gram matrix of all words of weight `gamma`, specialised at `q = t`
/// modulo the prime `m`, without the scalar factor.
pub fn word_gram_mod(d: &CartanDatum, words: &[Word], t: u64, m: u64) -> Vec<Vec<u64>> {
    let mut memo: HashMap<(Word, Word), u64> = HashMap::new();
    let tinv = pow_mod(t, m - 2, m);
    fn rec(
        d: &CartanDatum,
        memo: &mut HashMap<(Word, Word), u64>,
        u: &[u8],
        w: &[u8],
        t: u64,
        tinv: u64,
        m: u64,
    ) -> u64 {
        if u.is_empty() {
            return 1;
        }
        if Weight::of_word(u) != Weight::of_word(w) {
            return 0;
        }
        let key = (u.to_vec(), w.to_vec());
        if let Some(&v) = memo.get(&key) {
            return v;
        }
        let j = *w.last().unwrap();
        let wp = &w[..w.len() - 1];
        let mut acc: u128 = 0;
        let mut tail = Weight::zero();
        for p in (0..u.len()).rev() {
            if u[p] == j {
                let e = -d.pair_simple(j as usize, &tail);
                let mut rest = u[..p].to_vec();
                rest.extend_from_slice(&u[p + 1..]);
                let g = rec(d, memo, &rest, wp, t, tinv, m);
                let f = if e >= 0 { pow_mod(t, e as u64, m) } else { pow_mod(tinv, (-e) as u64, m) };
                acc = (acc + g as u128 * f as u128) % m as u128;
            }
            tail.0[u[p] as usize] += 1;
        }
        let v = acc as u64;
        memo.insert(key, v);
        v
    }
    words
        .iter()
        .map(|u| words.iter().map(|w| rec(d, &mut memo, u, w, t, tinv, m)).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::build_cartan;
    use crate::freealg::words_of_weight;
    use crate::scalar::in_one_plus_qa0;

    #[test]
    fn generator_norms() {
        let mut a = Algebra::new(build_cartan("B2").unwrap());
        let f1 = a.generator(0);
        let v = a.form(&f1, &f1).unwrap();
        assert_eq!(&v * &RatFunc::from(&LaurentPoly::one() - &LaurentPoly::q_pow(4)), RatFunc::one());
        // (f^(n), f^(n)) = prod_{s=1}^n 1/(1 - q^{2s})
        for n in 1..4u32 {
            let x = a.divided_power(1, n);
            let v = a.form(&x, &x).unwrap();
            let mut den = LaurentPoly::one();
            for s in 1..=n {
                den = &den * &(&LaurentPoly::one() - &LaurentPoly::q_pow(2 * s as i32));
            }
            assert_eq!(v, RatFunc::new(LaurentPoly::one(), den).unwrap());
            assert!(in_one_plus_qa0(&v));
        }
    }

    #[test]
    fn root_vector_orthogonality() {
        // f_12 = f_2 f_1 - q^2 f_1 f_2 is orthogonal to f_1 f_2 in B2
        let mut a = Algebra::new(build_cartan("B2").unwrap());
        let x = a.word(&[1, 0]).unwrap();
        let y = a.word(&[0, 1]).unwrap();
        let f12 = x.sub(&y.scale(&RatFunc::from(LaurentPoly::q_pow(2)))).unwrap();
        assert!(a.form(&f12, &y).unwrap().is_zero());
    }

    #[test]
    fn symmetric_on_words() {
        let d = build_cartan("G2").unwrap();
        let mut a = Algebra::new(d.clone());
        let g = Weight::from_slice(&[1, 3]);
        let ws = words_of_weight(2, &g);
        for u in &ws {
            for w in &ws {
                assert_eq!(a.form_words(u, w), a.form_words(w, u));
            }
        }
    }

    #[test]
    fn serre_relators_in_radical() {
        use crate::freealg::{serre_relator, serre_weight};
        for t in ["A2", "B2", "G2"] {
            let d = build_cartan(t).unwrap();
            let mut a = Algebra::new(d.clone());
            for (i, j) in [(0, 1), (1, 0)] {
                let s = serre_relator(&d, i, j);
                for w in words_of_weight(2, &serre_weight(&d, i, j)) {
                    let mut acc = RatFunc::zero();
                    for (u, c) in &s.terms {
                        acc = &acc + &(c * &a.form_words(u, &w));
                    }
                    assert!(acc.is_zero(), "{t} {i}{j}");
                }
            }
        }
    }
}
