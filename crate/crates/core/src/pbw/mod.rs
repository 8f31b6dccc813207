//! Root vectors and PBW bases attached to reduced words of `w_0`.

mod braid;

pub use braid::{braid_apply, braid_generator};

use crate::cartan::{CartanDatum, ReducedWord, Weight, Word};
use crate::error::{Error, Result};
use crate::freealg::{Algebra, QuotElt};
use crate::linalg::{inverse, mat_mul, Accum, FracVec, Mat};
use crate::scalar::{quantum_factorial, LaurentPoly, RatFunc};
use std::collections::HashMap;
use std::sync::Arc;

/// The PBW basis of one weight space for one reduced word.
#[derive(Clone, Debug)]
pub struct PbwFrame {
    pub word: Word,
    pub weight: Weight,
    /// Labels `c` of weight `gamma` in increasing lexicographic order.
    pub labels: Vec<Vec<u32>>,
    pub label_index: HashMap<Vec<u32>, usize>,
    /// `L(c, h)` for each label.
    pub monomials: Vec<QuotElt>,
    /// Columns of the inverse of the numerator matrix of the monomials.
    inv: Vec<FracVec>,
    col_dens: Vec<LaurentPoly>,
}

impl PbwFrame {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn index_of(&self, c: &[u32]) -> Option<usize> {
        self.label_index.get(c).copied()
    }

    /// Coefficients of `x` (at this weight) in the PBW basis.
    pub fn expand(&self, x: &QuotElt) -> Result<FracVec> {
        if x.weight != self.weight {
            return Err(Error::WeightMismatch);
        }
        let n = self.dim();
        let mut acc = Accum::new(n, 0);
        for (k, c) in x.coords.num.iter().enumerate() {
            if !c.is_zero() {
                acc.add(c, &self.inv[k]);
            }
        }
        let z = acc.finish();
        let num: Vec<LaurentPoly> = z.num.iter().zip(&self.col_dens).map(|(a, b)| a * b).collect();
        Ok(FracVec::with_den(num, &z.den * &x.coords.den))
    }

    /// Expansion required to have Laurent polynomial coefficients.
    pub fn expand_integral(&self, x: &QuotElt) -> Result<Vec<LaurentPoly>> {
        self.expand(x)?.to_laurent().ok_or_else(|| {
            Error::NotIntegral(format!("PBW expansion at weight {:?} has denominators", self.weight))
        })
    }

    /// The element with the given PBW coordinates.
    pub fn combine(&self, coeffs: &FracVec) -> QuotElt {
        let d = self.monomials.first().map_or(0, |m| m.coords.len());
        let mut acc = Accum::new(d, 0);
        for (k, c) in coeffs.num.iter().enumerate() {
            if !c.is_zero() {
                acc.add(c, &self.monomials[k].coords);
            }
        }
        let v = acc.finish();
        QuotElt { weight: self.weight, coords: FracVec::with_den(v.num, &v.den * &coeffs.den) }
    }

    pub fn combine_laurent(&self, coeffs: &[LaurentPoly]) -> QuotElt {
        self.combine(&FracVec::from_laurent(coeffs.to_vec()))
    }
}

/// `U^-` together with cached root vectors and PBW frames.
pub struct Pbw {
    pub alg: Algebra,
    braid_cache: HashMap<Word, QuotElt>,
    power_cache: HashMap<(Word, u32), QuotElt>,
    suffix_cache: HashMap<(Word, Vec<u32>), QuotElt>,
    frames: HashMap<(Word, Weight), Arc<PbwFrame>>,
    words: HashMap<Word, ReducedWord>,
    pub(crate) canon_cache: HashMap<(Word, Weight), Arc<crate::canonical::CanonicalFrame>>,
}

impl Pbw {
    pub fn new(datum: CartanDatum) -> Self {
        Self::from_algebra(Algebra::new(datum))
    }

    pub fn from_algebra(alg: Algebra) -> Self {
        Pbw {
            alg,
            braid_cache: HashMap::new(),
            power_cache: HashMap::new(),
            suffix_cache: HashMap::new(),
            frames: HashMap::new(),
            words: HashMap::new(),
            canon_cache: HashMap::new(),
        }
    }

    pub fn datum(&self) -> &CartanDatum {
        self.alg.datum()
    }

    pub fn reduced_word(&mut self, h: &[u8]) -> Result<ReducedWord> {
        if let Some(r) = self.words.get(h) {
            return Ok(r.clone());
        }
        let r = self.alg.datum().reduced_word(h)?;
        self.words.insert(h.to_vec(), r.clone());
        Ok(r)
    }

    /// `T_{s_0} ... T_{s_{m-2}} (f_{s_{m-1}})` for a segment `s`.
    fn braided(&mut self, seg: &[u8]) -> Result<QuotElt> {
        if let Some(x) = self.braid_cache.get(seg) {
            return Ok(x.clone());
        }
        let x = if seg.len() == 1 {
            self.alg.generator(seg[0] as usize)
        } else {
            let inner = self.braided(&seg[1..])?;
            braid_apply(&mut self.alg, seg[0] as usize, &inner)?
        };
        self.braid_cache.insert(seg.to_vec(), x.clone());
        Ok(x)
    }

    /// The root vector `f_{beta_k}` (0-based `k`) of the word `h`.
    pub fn root_vector(&mut self, h: &[u8], k: usize) -> Result<QuotElt> {
        self.braided(&h[..=k])
    }

    /// `f_{beta_k}^{(n)}`.
    pub fn root_power(&mut self, h: &[u8], k: usize, n: u32) -> Result<QuotElt> {
        let key = (h[..=k].to_vec(), n);
        if let Some(x) = self.power_cache.get(&key) {
            return Ok(x.clone());
        }
        let f = self.root_vector(h, k)?;
        let x = self.alg.pow(&f, n)?;
        let d = self.alg.datum().d(h[k] as usize);
        let x = x.scale(&RatFunc::new(LaurentPoly::one(), quantum_factorial(n, d))?);
        self.power_cache.insert(key, x.clone());
        Ok(x)
    }

    /// The PBW monomial `L(c, h) = f_{beta_1}^{(c_1)} ... f_{beta_N}^{(c_N)}`.
    pub fn monomial(&mut self, h: &[u8], c: &[u32]) -> Result<QuotElt> {
        self.reduced_word(h)?;
        if c.len() != h.len() {
            return Err(Error::InvalidInput(format!("label of length {} for a word of length {}", c.len(), h.len())));
        }
        self.suffix_product(h, c, 0)
    }

    fn suffix_product(&mut self, h: &[u8], c: &[u32], k: usize) -> Result<QuotElt> {
        if k == c.len() {
            return Ok(self.alg.one());
        }
        let key = (h.to_vec(), c[k..].to_vec());
        if let Some(x) = self.suffix_cache.get(&key) {
            return Ok(x.clone());
        }
        let rest = self.suffix_product(h, c, k + 1)?;
        let x = if c[k] == 0 {
            rest
        } else {
            let p = self.root_power(h, k, c[k])?;
            self.alg.mul(&p, &rest)?
        };
        self.suffix_cache.insert(key, x.clone());
        Ok(x)
    }

    pub fn frame(&mut self, h: &[u8], gamma: &Weight) -> Result<Arc<PbwFrame>> {
        let key = (h.to_vec(), *gamma);
        if let Some(f) = self.frames.get(&key) {
            return Ok(f.clone());
        }
        let rw = self.reduced_word(h)?;
        let labels = rw.labels_of_weight(gamma);
        let d = self.alg.dim(gamma)?;
        if labels.len() != d {
            return Err(Error::Verification(format!(
                "{} PBW labels but dimension {d} at {gamma:?}",
                labels.len()
            )));
        }
        let mut monomials = Vec::with_capacity(d);
        for c in &labels {
            monomials.push(self.monomial(h, c)?);
        }
        let col_dens: Vec<LaurentPoly> = monomials.iter().map(|m| m.coords.den.clone()).collect();
        let mut n: Mat = vec![Vec::with_capacity(d); d];
        for m in &monomials {
            for (r, x) in m.coords.num.iter().enumerate() {
                n[r].push(x.clone());
            }
        }
        let inv = inverse(&n)?;
        let label_index = labels.iter().cloned().enumerate().map(|(k, c)| (c, k)).collect();
        let f = Arc::new(PbwFrame { word: h.to_vec(), weight: *gamma, labels, label_index, monomials, inv, col_dens });
        self.frames.insert(key, f.clone());
        Ok(f)
    }

    pub fn expand(&mut self, h: &[u8], x: &QuotElt) -> Result<FracVec> {
        let f = self.frame(h, &x.weight)?;
        f.expand(x)
    }

    /// Columns: `L(c, h)` expanded in the PBW basis of `h2`, `c` in lex order.
    pub fn transition(&mut self, h: &[u8], h2: &[u8], gamma: &Weight) -> Result<Vec<FracVec>> {
        let f = self.frame(h, gamma)?;
        let g = self.frame(h2, gamma)?;
        f.monomials.iter().map(|m| g.expand(m)).collect()
    }

    /// Integral transition matrix (rows: labels of `h2`, columns: labels of `h`).
    pub fn transition_matrix(&mut self, h: &[u8], h2: &[u8], gamma: &Weight) -> Result<Mat> {
        let cols = self.transition(h, h2, gamma)?;
        crate::linalg::columns_to_mat(&cols).ok_or_else(|| {
            Error::NotIntegral(format!("transition matrix at {gamma:?} has denominators"))
        })
    }
}

/// Checks a square matrix reduces mod `q` to a permutation matrix with
/// entries in `Z[q]`; returns the permutation (column -> row).
pub fn mod_q_permutation(m: &Mat) -> Option<Vec<usize>> {
    let n = m.len();
    let mut perm = vec![usize::MAX; n];
    let mut used = vec![false; n];
    for j in 0..n {
        for i in 0..n {
            let x = &m[i][j];
            if x.low_deg().is_some_and(|d| d < 0) {
                return None;
            }
            let c0 = x.coeff(0);
            if c0.is_zero() {
                continue;
            }
            if !c0.is_one() || perm[j] != usize::MAX || used[i] {
                return None;
            }
            perm[j] = i;
            used[i] = true;
        }
        if perm[j] == usize::MAX {
            return None;
        }
    }
    Some(perm)
}

/// `A * B == I`.
pub fn is_inverse_pair(a: &Mat, b: &Mat) -> bool {
    let p = mat_mul(a, b);
    p.iter().enumerate().all(|(i, r)| r.iter().enumerate().all(|(j, x)| if i == j { x.is_one() } else { x.is_zero() }))
}
