//! Canonical bases from PBW bases: bar matrices, the unitriangular solve,
//! label matching between reduced words and Kashiwara operators.

use crate::cartan::{Weight, Word};
use crate::error::{Error, Result};
use crate::freealg::QuotElt;
use crate::linalg::{mat_mul, Mat};
use crate::pbw::{Pbw, PbwFrame};
use crate::scalar::{in_one_plus_qa0, LaurentPoly};
use std::sync::Arc;

/// `b(c, h)` given by its coordinates in the PBW basis of `h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalElt {
    pub word: Word,
    pub label: Vec<u32>,
    pub weight: Weight,
    /// Coefficients in `Z[q]`, indexed like `PbwFrame::labels`.
    pub coeffs: Vec<LaurentPoly>,
}

/// Bar matrix and canonical basis of one weight space.
#[derive(Clone, Debug)]
pub struct CanonicalFrame {
    pub frame: Arc<PbwFrame>,
    /// `bar(L(c)) = sum_{c'} bar[c'][c] L(c')`.
    pub bar: Mat,
    /// `b(c) = sum_{c'} p[c'][c] L(c')`.
    pub p: Mat,
}

/// A matched pair `b(c, h) = sign * b(c2, h2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelMatch {
    pub from: Vec<u32>,
    pub to: Vec<u32>,
    pub sign: i32,
}

impl CanonicalFrame {
    pub fn element(&self, k: usize) -> CanonicalElt {
        CanonicalElt {
            word: self.frame.word.clone(),
            label: self.frame.labels[k].clone(),
            weight: self.frame.weight,
            coeffs: self.p.iter().map(|r| r[k].clone()).collect(),
        }
    }

    pub fn elements(&self) -> Vec<CanonicalElt> {
        (0..self.frame.dim()).map(|k| self.element(k)).collect()
    }
}

/// Solves `P = A bar(P)` with `P` unitriangular and off-diagonal entries
/// in `q Z[q]`, given a unitriangular bar matrix `A` (labels in increasing
/// order, `A[i][j] = 0` for `i < j`).
pub fn kl_solve(a: &Mat) -> Result<Mat> {
    let n = a.len();
    let mut p = vec![vec![LaurentPoly::zero(); n]; n];
    for c in 0..n {
        p[c][c] = LaurentPoly::one();
        for r in c + 1..n {
            let mut s = LaurentPoly::zero();
            for k in c..r {
                if !a[r][k].is_zero() && !p[k][c].is_zero() {
                    s += &(&a[r][k] * &p[k][c].bar());
                }
            }
            if !(&s + &s.bar()).is_zero() || !s.coeff(0).is_zero() {
                return Err(Error::Verification(format!("bar matrix is not an involution at ({r}, {c})")));
            }
            p[r][c] = s.positive_part();
        }
    }
    Ok(p)
}

pub fn is_unitriangular(a: &Mat) -> bool {
    let n = a.len();
    (0..n).all(|i| a[i][i].is_one() && (i + 1..n).all(|j| a[i][j].is_zero()))
}

impl Pbw {
    /// The matrix of the bar involution in the PBW basis of `h` at `gamma`.
    pub fn bar_matrix(&mut self, h: &[u8], gamma: &Weight) -> Result<Mat> {
        let f = self.frame(h, gamma)?;
        let mut cols = Vec::with_capacity(f.dim());
        for m in &f.monomials {
            cols.push(f.expand_integral(&m.bar())?);
        }
        let n = f.dim();
        Ok((0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect())
    }

    pub fn canonical_frame(&mut self, h: &[u8], gamma: &Weight) -> Result<Arc<CanonicalFrame>> {
        let key = (h.to_vec(), *gamma);
        if let Some(c) = self.canon_cache.get(&key) {
            return Ok(c.clone());
        }
        let frame = self.frame(h, gamma)?;
        let bar = self.bar_matrix(h, gamma)?;
        if !is_unitriangular(&bar) {
            return Err(Error::Verification(format!("bar matrix at {gamma:?} is not unitriangular")));
        }
        let p = kl_solve(&bar)?;
        let cf = Arc::new(CanonicalFrame { frame, bar, p });
        self.canon_cache.insert(key, cf.clone());
        Ok(cf)
    }

    pub fn canonical_basis(&mut self, h: &[u8], gamma: &Weight) -> Result<Vec<CanonicalElt>> {
        Ok(self.canonical_frame(h, gamma)?.elements())
    }

    pub fn canonical_element(&mut self, h: &[u8], c: &[u32]) -> Result<CanonicalElt> {
        let rw = self.reduced_word(h)?;
        let gamma = rw.weight_of(c);
        let cf = self.canonical_frame(h, &gamma)?;
        let k = cf
            .frame
            .index_of(c)
            .ok_or_else(|| Error::InvalidInput(format!("label {c:?} not found")))?;
        Ok(cf.element(k))
    }

    /// The element of `U^-` represented by a canonical element.
    pub fn canonical_value(&mut self, b: &CanonicalElt) -> Result<QuotElt> {
        let f = self.frame(&b.word, &b.weight)?;
        Ok(f.combine_laurent(&b.coeffs))
    }

    /// Matches `b(c, h)` with `±b(c2, h2)` for every label at `gamma`.
    pub fn label_transition(&mut self, h: &[u8], h2: &[u8], gamma: &Weight) -> Result<Vec<LabelMatch>> {
        let c1 = self.canonical_frame(h, gamma)?;
        let c2 = self.canonical_frame(h2, gamma)?;
        let m = self.transition_matrix(h, h2, gamma)?;
        let v = mat_mul(&m, &c1.p);
        let n = c1.frame.dim();
        let mut out = Vec::with_capacity(n);
        for j in 0..n {
            let col: Vec<&LaurentPoly> = v.iter().map(|r| &r[j]).collect();
            let mut found = None;
            for (i, x) in col.iter().enumerate() {
                if x.is_monomial() && x.low_deg() == Some(0) && x.low_coeff().abs().is_one() {
                    if found.is_some() {
                        return Err(Error::Verification(format!("ambiguous label match for {:?}", c1.frame.labels[j])));
                    }
                    found = Some((i, x.low_coeff().signum()));
                }
            }
            let Some((i, s)) = found else {
                return Err(Error::Verification(format!("no label match for {:?}", c1.frame.labels[j])));
            };
            let sign = LaurentPoly::from_int(s as i64);
            for r in 0..n {
                if *col[r] != &c2.p[r][i] * &sign {
                    return Err(Error::Verification(format!(
                        "b({:?}) is not ±b({:?}) of the second word",
                        c1.frame.labels[j], c2.frame.labels[i]
                    )));
                }
            }
            out.push(LabelMatch { from: c1.frame.labels[j].clone(), to: c2.frame.labels[i].clone(), sign: s });
        }
        Ok(out)
    }

    /// `epsilon_j(x)`: the least first coordinate over the support of `x`
    /// in the PBW basis of a reduced word starting with `j`.
    pub fn epsilon(&mut self, j: usize, x: &QuotElt) -> Result<u32> {
        let hj = self.datum().word_starting_with(j as u8);
        let f = self.frame(&hj, &x.weight)?;
        let v = f.expand(x)?;
        v.num
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, _)| f.labels[k][0])
            .min()
            .ok_or_else(|| Error::InvalidInput("epsilon of zero".into()))
    }

    /// Kashiwara's `F_j` on canonical elements, returned with the sign
    /// picked up when passing through a `j`-initial word.
    pub fn kashiwara_f(&mut self, j: usize, b: &CanonicalElt) -> Result<(i32, CanonicalElt)> {
        if b.word[0] as usize == j {
            let mut c = b.label.clone();
            c[0] += 1;
            return Ok((1, self.canonical_element(&b.word, &c)?));
        }
        let hj = self.datum().word_starting_with(j as u8);
        let there = self.label_transition(&b.word, &hj, &b.weight)?;
        let m = there.iter().find(|m| m.from == b.label).unwrap();
        let mut c = m.to.clone();
        c[0] += 1;
        let target = b.weight + Weight::simple(j);
        let back = self.label_transition(&hj, &b.word, &target)?;
        let m2 = back.iter().find(|x| x.from == c).unwrap();
        let e = self.canonical_element(&b.word, &m2.to)?;
        Ok((m.sign * m2.sign, e))
    }

    /// `bar(x) = x` and `(x, x) in 1 + q A_0`.
    pub fn signed_basis_test(&mut self, x: &QuotElt) -> Result<bool> {
        if x.bar() != *x {
            return Ok(false);
        }
        let v = self.alg.form(x, x)?;
        Ok(in_one_plus_qa0(&v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::build_cartan;

    #[test]
    fn a2_canonical_elements() {
        let mut p = Pbw::new(build_cartan("A2").unwrap());
        let h = [0u8, 1, 0];
        let b = p.canonical_element(&h, &[0, 1, 0]).unwrap();
        assert_eq!(b.coeffs, vec![LaurentPoly::one(), LaurentPoly::q_pow(1)]);
        let x = p.canonical_value(&b).unwrap();
        assert_eq!(x, p.alg.word(&[1, 0]).unwrap());
        assert!(p.signed_basis_test(&x).unwrap());
        let m = p.label_transition(&h, &[1, 0, 1], &Weight::from_slice(&[1, 1])).unwrap();
        assert_eq!(m[0].to, vec![1, 0, 1]);
        assert_eq!(m[0].sign, 1);
    }

    #[test]
    fn kashiwara_f_on_a2() {
        let mut p = Pbw::new(build_cartan("A2").unwrap());
        let h = [0u8, 1, 0];
        let b = p.canonical_element(&h, &[0, 0, 1]).unwrap();
        // F_1 f_2 = f_1 f_2 = b(1,0,1)
        let (s, e) = p.kashiwara_f(0, &b).unwrap();
        assert_eq!((s, e.label.clone()), (1, vec![1, 0, 1]));
        // F_2 f_2 = f_2^(2)
        let (_, e2) = p.kashiwara_f(1, &b).unwrap();
        assert_eq!(e2.label, vec![0, 0, 2]);
        let x = p.canonical_value(&e).unwrap();
        assert_eq!(p.epsilon(0, &x).unwrap(), 1);
    }

    #[test]
    fn canonical_bases_agree_across_words() {
        for t in ["B2", "G2", "A3"] {
            let d = build_cartan(t).unwrap();
            let ws = d.enumerate_reduced_words();
            let mut p = Pbw::new(d.clone());
            for g in d.weights_up_to(4) {
                let m = p.label_transition(&ws[0], ws.last().unwrap(), &g).unwrap();
                assert_eq!(m.len() as u64, d.kostant_count(&g));
            }
        }
    }
}
