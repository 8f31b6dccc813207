use super::form::FormCache;
use super::{serre_weight, FreeElt};
use crate::cartan::{CartanDatum, Weight, Word};
use crate::error::{Error, Result};
use crate::linalg::{gauss_jordan, lcm, Accum, FracVec, Mat};
use crate::scalar::{normalize_unit, quantum_binomial, quantum_factorial, LaurentPoly, RatFunc};
use std::collections::HashMap;
use std::sync::Arc;

/// Matrix of left multiplication by `f_i` from weight `gamma - alpha_i`
/// into weight `gamma`, in standard-word coordinates: `f_i * s_k` has
/// coordinates `cols[k] / den`.
#[derive(Clone, Debug)]
pub struct LeftMap {
    pub den: LaurentPoly,
    pub cols: Vec<Vec<LaurentPoly>>,
}

/// One weight space of the Serre quotient.
#[derive(Clone, Debug)]
pub struct WeightSpace {
    pub weight: Weight,
    /// Standard words, a basis of the quotient, in lexicographic order.
    pub std: Vec<Word>,
    pub index: HashMap<Word, usize>,
    pub left: Vec<Option<LeftMap>>,
}

impl WeightSpace {
    pub fn dim(&self) -> usize {
        self.std.len()
    }
}

/// A homogeneous element of `U^-`, in standard-word coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuotElt {
    pub weight: Weight,
    pub coords: FracVec,
}

impl QuotElt {
    pub fn is_zero(&self) -> bool {
        self.coords.is_zero()
    }

    pub fn bar(&self) -> QuotElt {
        QuotElt { weight: self.weight, coords: self.coords.bar() }
    }

    pub fn neg(&self) -> QuotElt {
        QuotElt { weight: self.weight, coords: self.coords.neg() }
    }

    pub fn scale(&self, c: &RatFunc) -> QuotElt {
        QuotElt { weight: self.weight, coords: self.coords.scale(c) }
    }

    pub fn add(&self, other: &QuotElt) -> Result<QuotElt> {
        if self.weight != other.weight {
            return Err(Error::WeightMismatch);
        }
        Ok(QuotElt { weight: self.weight, coords: self.coords.add(&other.coords) })
    }

    pub fn sub(&self, other: &QuotElt) -> Result<QuotElt> {
        self.add(&other.neg())
    }
}

/// `U^-` for one Cartan datum: lazily built weight spaces plus caches.
pub struct Algebra {
    datum: CartanDatum,
    spaces: HashMap<Weight, Arc<WeightSpace>>,
    pub(crate) form: FormCache,
    max_height: Option<i32>,
}

impl Algebra {
    pub fn new(datum: CartanDatum) -> Self {
        Algebra { datum, spaces: HashMap::new(), form: FormCache::default(), max_height: None }
    }

    pub fn with_max_height(mut self, h: i32) -> Self {
        self.max_height = Some(h);
        self
    }

    pub fn datum(&self) -> &CartanDatum {
        &self.datum
    }

    pub fn rank(&self) -> usize {
        self.datum.rank()
    }

    pub fn dim(&mut self, gamma: &Weight) -> Result<usize> {
        Ok(self.space(gamma)?.dim())
    }

    pub fn space(&mut self, gamma: &Weight) -> Result<Arc<WeightSpace>> {
        if let Some(s) = self.spaces.get(gamma) {
            return Ok(s.clone());
        }
        if !gamma.is_nonneg() {
            return Err(Error::InvalidInput(format!("negative weight {gamma:?}")));
        }
        if let Some(h) = self.max_height {
            if gamma.height() > h {
                return Err(Error::ResourceLimit(format!("weight {gamma:?} above height {h}")));
            }
        }
        let ws = Arc::new(self.build_space(gamma)?);
        self.spaces.insert(*gamma, ws.clone());
        Ok(ws)
    }

    fn build_space(&mut self, gamma: &Weight) -> Result<WeightSpace> {
        let n = self.rank();
        if gamma.is_zero() {
            let std = vec![Vec::new()];
            let index = std.iter().cloned().enumerate().map(|(k, w)| (w, k)).collect();
            return Ok(WeightSpace { weight: *gamma, std, index, left: vec![None; n] });
        }
        // columns: pairs (i, s) with s standard at gamma - alpha_i
        let mut lower: Vec<Option<Arc<WeightSpace>>> = Vec::with_capacity(n);
        let mut offsets = Vec::with_capacity(n);
        let mut ncols = 0;
        for i in 0..n {
            offsets.push(ncols);
            let g = *gamma - Weight::simple(i);
            if g.is_nonneg() {
                let s = self.space(&g)?;
                ncols += s.dim();
                lower.push(Some(s));
            } else {
                lower.push(None);
            }
        }
        let mut rows: Mat = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let ws = serre_weight(&self.datum, i, j);
                let base = *gamma - ws;
                if !base.is_nonneg() {
                    continue;
                }
                let base_space = self.space(&base)?;
                let nn = 1 - self.datum.a(i, j);
                for s in 0..base_space.dim() {
                    let mut acc = Accum::new(ncols, 0);
                    for k in 0..=nn {
                        let c = quantum_binomial(nn, k, self.datum.d(i))?;
                        let c = if k % 2 == 1 { -c } else { c };
                        let mut prefix = vec![i as u8; k as usize];
                        prefix.push(j as u8);
                        prefix.extend(std::iter::repeat_n(i as u8, (nn - k) as usize));
                        let first = prefix[0] as usize;
                        let v = FracVec::unit(base_space.dim(), s, 0);
                        let rest = self.apply_word(&prefix[1..], &base, v)?;
                        let mut emb = FracVec::zero(ncols, 0);
                        emb.den = rest.den.clone();
                        for (t, x) in rest.num.into_iter().enumerate() {
                            emb.num[offsets[first] + t] = x;
                        }
                        acc.add(&c, &emb);
                    }
                    let row = acc.finish();
                    if !row.is_zero() {
                        // columns are reversed so that larger words pivot first
                        rows.push(row.num.into_iter().rev().collect());
                    }
                }
            }
        }
        let ech = gauss_jordan(rows, ncols);
        let col_word = |pos: usize| -> Word {
            let c = ncols - 1 - pos;
            let i = (0..n).rev().find(|&i| lower[i].is_some() && offsets[i] <= c).unwrap();
            let mut w = vec![i as u8];
            w.extend_from_slice(&lower[i].as_ref().unwrap().std[c - offsets[i]]);
            w
        };
        let mut pivot_row = vec![None; ncols];
        for (r, &p) in ech.pivots.iter().enumerate() {
            pivot_row[p] = Some(r);
        }
        let mut std: Vec<Word> = (0..ncols).filter(|&p| pivot_row[p].is_none()).map(col_word).collect();
        std.sort();
        let index: HashMap<Word, usize> = std.iter().cloned().enumerate().map(|(k, w)| (w, k)).collect();
        let free: Vec<(usize, usize)> = (0..ncols)
            .filter(|&p| pivot_row[p].is_none())
            .map(|p| (p, index[&col_word(p)]))
            .collect();
        let d = std.len();
        let mut left = vec![None; n];
        for i in 0..n {
            let Some(low) = &lower[i] else { continue };
            let positions: Vec<usize> = (0..low.dim()).map(|s| ncols - 1 - (offsets[i] + s)).collect();
            let mut den = LaurentPoly::one();
            for &p in &positions {
                if let Some(r) = pivot_row[p] {
                    den = lcm(&den, &normalize_unit(&ech.rows[r][p]).0);
                }
            }
            let mut cols = Vec::with_capacity(low.dim());
            for &p in &positions {
                let mut v = vec![LaurentPoly::zero(); d];
                match pivot_row[p] {
                    None => v[index[&col_word(p)]] = den.clone(),
                    Some(r) => {
                        let f = den.div_exact(&ech.rows[r][p]).unwrap();
                        for &(fp, k) in &free {
                            let e = &ech.rows[r][fp];
                            if !e.is_zero() {
                                v[k] = -&(e * &f);
                            }
                        }
                    }
                }
                cols.push(v);
            }
            left[i] = Some(LeftMap { den, cols });
        }
        Ok(WeightSpace { weight: *gamma, std, index, left })
    }

    /// Applies left multiplication by the word `w` to a vector at weight
    /// `from`.
    fn apply_word(&mut self, w: &[u8], from: &Weight, mut v: FracVec) -> Result<FracVec> {
        let mut g = *from;
        for &letter in w.iter().rev() {
            g = g + Weight::simple(letter as usize);
            let sp = self.space(&g)?;
            let lm = sp.left[letter as usize].as_ref().expect("left map exists");
            let mut num = vec![LaurentPoly::zero(); sp.dim()];
            for (x, col) in v.num.iter().zip(&lm.cols) {
                if x.is_zero() {
                    continue;
                }
                for (o, c) in num.iter_mut().zip(col) {
                    if !c.is_zero() {
                        *o += &(x * c);
                    }
                }
            }
            v = FracVec::with_den(num, &v.den * &lm.den);
        }
        Ok(v)
    }

    pub fn zero(&mut self, gamma: &Weight) -> Result<QuotElt> {
        let d = self.dim(gamma)?;
        Ok(QuotElt { weight: *gamma, coords: FracVec::zero(d, 0) })
    }

    pub fn one(&mut self) -> QuotElt {
        self.word(&[]).unwrap()
    }

    pub fn generator(&mut self, i: usize) -> QuotElt {
        self.word(&[i as u8]).unwrap()
    }

    /// The image of a word.
    pub fn word(&mut self, w: &[u8]) -> Result<QuotElt> {
        let weight = Weight::of_word(w);
        let v = self.apply_word(w, &Weight::zero(), FracVec::unit(1, 0, 0))?;
        Ok(QuotElt { weight, coords: v })
    }

    /// `f_i^{(n)} = f_i^n / [n]_i!`.
    pub fn divided_power(&mut self, i: usize, n: u32) -> QuotElt {
        let w = vec![i as u8; n as usize];
        let x = self.word(&w).unwrap();
        let f = quantum_factorial(n, self.datum.d(i));
        x.scale(&RatFunc::new(LaurentPoly::one(), f).unwrap())
    }

    pub fn normal_form(&mut self, x: &FreeElt) -> Result<QuotElt> {
        let Some(weight) = x.weight()? else {
            return Err(Error::InvalidInput("the zero element has no weight; use `zero`".into()));
        };
        let d = self.dim(&weight)?;
        let mut acc = Accum::new(d, 0);
        for (w, c) in &x.terms {
            let v = self.word(w)?;
            acc.add_rat(c, &v.coords);
        }
        Ok(QuotElt { weight, coords: acc.finish() })
    }

    pub fn to_free(&mut self, x: &QuotElt) -> Result<FreeElt> {
        let sp = self.space(&x.weight)?;
        let mut out = FreeElt::zero();
        for (k, w) in sp.std.iter().enumerate() {
            out.add_term(w.clone(), &x.coords.get(k));
        }
        Ok(out)
    }

    /// Left multiplication by a word.
    pub fn word_mul(&mut self, w: &[u8], y: &QuotElt) -> Result<QuotElt> {
        let v = self.apply_word(w, &y.weight, y.coords.clone())?;
        Ok(QuotElt { weight: y.weight + Weight::of_word(w), coords: v })
    }

    pub fn mul(&mut self, x: &QuotElt, y: &QuotElt) -> Result<QuotElt> {
        let sx = self.space(&x.weight)?;
        let weight = x.weight + y.weight;
        let d = self.dim(&weight)?;
        let mut acc = Accum::new(d, 0);
        for (k, u) in sx.std.iter().enumerate() {
            if x.coords.num[k].is_zero() {
                continue;
            }
            let z = self.word_mul(u, y)?;
            let c = RatFunc::new(x.coords.num[k].clone(), x.coords.den.clone()).unwrap();
            acc.add_rat(&c, &z.coords);
        }
        Ok(QuotElt { weight, coords: acc.finish() })
    }

    pub fn mul_all(&mut self, xs: &[QuotElt]) -> Result<QuotElt> {
        let mut r = self.one();
        for x in xs.iter().rev() {
            r = self.mul(x, &r)?;
        }
        Ok(r)
    }

    pub fn pow(&mut self, x: &QuotElt, n: u32) -> Result<QuotElt> {
        let mut r = self.one();
        for _ in 0..n {
            r = self.mul(x, &r)?;
        }
        Ok(r)
    }

    /// Applies a letter-wise map on words, extended linearly.
    fn map_words(&mut self, x: &QuotElt, f: impl Fn(&[u8]) -> Word) -> Result<QuotElt> {
        let sp = self.space(&x.weight)?;
        let mut acc = Accum::new(0, 0);
        let mut weight = None;
        for (k, u) in sp.std.iter().enumerate() {
            if x.coords.num[k].is_zero() {
                continue;
            }
            let z = self.word(&f(u))?;
            if weight.is_none() {
                weight = Some(z.weight);
                acc = Accum::new(z.coords.len(), 0);
            }
            let c = RatFunc::new(x.coords.num[k].clone(), x.coords.den.clone()).unwrap();
            acc.add_rat(&c, &z.coords);
        }
        match weight {
            Some(w) => Ok(QuotElt { weight: w, coords: acc.finish() }),
            None => {
                let w = Weight::of_word(&f(&sp.std[0]));
                self.zero(&w)
            }
        }
    }

    /// The anti-automorphism fixing each `f_i`.
    pub fn star(&mut self, x: &QuotElt) -> Result<QuotElt> {
        self.map_words(x, |u| u.iter().rev().copied().collect())
    }

    /// The automorphism permuting generators by `perm`.
    pub fn permute(&mut self, x: &QuotElt, perm: &[usize]) -> Result<QuotElt> {
        self.map_words(x, |u| u.iter().map(|&i| perm[i as usize] as u8).collect())
    }

    pub fn bar(&self, x: &QuotElt) -> QuotElt {
        x.bar()
    }

    /// The derivation `r_j` (the `f_j`-component on the right of the
    /// coproduct): `r_j(f_u) = sum_{u_p = j} q^{-(alpha_j, wt u_{>p})} f_{u \ p}`.
    pub fn r_right(&mut self, j: usize, x: &QuotElt) -> Result<QuotElt> {
        self.derivation(j, x, -1)
    }

    /// Derivations `sum_{u_p = j} q^{s (alpha_j, wt u_{>p})} f_{u \ p}` for
    /// `s = +-1`.
    pub fn derivation(&mut self, j: usize, x: &QuotElt, s: i64) -> Result<QuotElt> {
        let target = x.weight - Weight::simple(j);
        if !target.is_nonneg() {
            return Err(Error::WeightMismatch);
        }
        let sp = self.space(&x.weight)?;
        let d = self.dim(&target)?;
        let mut acc = Accum::new(d, 0);
        for (k, u) in sp.std.iter().enumerate() {
            if x.coords.num[k].is_zero() {
                continue;
            }
            for p in 0..u.len() {
                if u[p] as usize != j {
                    continue;
                }
                let e = s * self.datum.pair_simple(j, &Weight::of_word(&u[p + 1..]));
                let mut w = u[..p].to_vec();
                w.extend_from_slice(&u[p + 1..]);
                let z = self.word(&w)?;
                acc.add(&(&x.coords.num[k] * &LaurentPoly::q_pow(e as i32)), &FracVec {
                    num: z.coords.num,
                    den: &z.coords.den * &x.coords.den,
                });
            }
        }
        Ok(QuotElt { weight: target, coords: acc.finish() })
    }

    /// Coordinates of `x` modulo nothing: whether all coordinates are
    /// Laurent polynomials.
    pub fn is_integral_coords(&self, x: &QuotElt) -> bool {
        x.coords.is_integral()
    }

    pub fn spaces_built(&self) -> usize {
        self.spaces.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::build_cartan;
    use crate::freealg::{serre_relator, words_of_weight};

    fn alg(t: &str) -> Algebra {
        Algebra::new(build_cartan(t).unwrap())
    }

    #[test]
    fn dimensions_match_kostant() {
        for (t, h) in [("A2", 6), ("B2", 6), ("A3", 4), ("G2", 5), ("A1xA1", 4)] {
            let mut a = alg(t);
            let d = a.datum().clone();
            for g in d.weights_up_to(h) {
                assert_eq!(a.dim(&g).unwrap() as u64, d.kostant_count(&g), "{t} {g:?}");
            }
        }
    }

    #[test]
    fn serre_relators_vanish() {
        for t in ["A2", "B2", "G2", "A3"] {
            let mut a = alg(t);
            let d = a.datum().clone();
            for i in 0..d.rank() {
                for j in 0..d.rank() {
                    if i != j {
                        let s = serre_relator(&d, i, j);
                        assert!(a.normal_form(&s).unwrap().is_zero(), "{t} {i} {j}");
                        let s2 = FreeElt::word(&[j as u8]).mul(&s).mul(&FreeElt::word(&[i as u8]));
                        assert!(a.normal_form(&s2).unwrap().is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn multiplication_is_associative() {
        let mut a = alg("B2");
        let x = a.word(&[1, 0]).unwrap();
        let y = a.word(&[1, 1, 0]).unwrap().add(&a.word(&[0, 1, 1]).unwrap()).unwrap();
        let z = a.divided_power(1, 2);
        let xy = a.mul(&x, &y).unwrap();
        let l = a.mul(&xy, &z).unwrap();
        let yz = a.mul(&y, &z).unwrap();
        let r = a.mul(&x, &yz).unwrap();
        assert_eq!(l, r);
    }

    #[test]
    fn star_is_antiautomorphism() {
        let mut a = alg("A2");
        let x = a.word(&[0, 1]).unwrap();
        let y = a.word(&[1, 0, 1]).unwrap();
        let xy = a.mul(&x, &y).unwrap();
        let lhs = a.star(&xy).unwrap();
        let sx = a.star(&x).unwrap();
        let sy = a.star(&y).unwrap();
        let rhs = a.mul(&sy, &sx).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn words_reduce_consistently() {
        let mut a = alg("A2");
        let g = Weight::from_slice(&[2, 2]);
        let d = a.dim(&g).unwrap();
        assert_eq!(d, 3);
        for w in words_of_weight(2, &g) {
            let x = a.word(&w).unwrap();
            let (u, v) = w.split_at(2);
            let xu = a.word(u).unwrap();
            let xv = a.word(v).unwrap();
            assert_eq!(a.mul(&xu, &xv).unwrap(), x);
        }
    }
}
