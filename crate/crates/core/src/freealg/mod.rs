//! The free algebra on the Chevalley generators `f_i`, its quotient by the
//! quantum Serre relations, and the bilinear form.

mod form;
mod quotient;

pub use form::{form_scalar, word_gram_mod, FormCache};
pub use quotient::{Algebra, QuotElt, WeightSpace};

use crate::cartan::{CartanDatum, Weight, Word};
use crate::error::{Error, Result};
use crate::scalar::{quantum_binomial, RatFunc};
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

/// A finite `Q(q)`-combination of words in the generators.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FreeElt {
    pub terms: BTreeMap<Word, RatFunc>,
}

impl FreeElt {
    pub fn zero() -> Self {
        FreeElt::default()
    }

    pub fn word(w: &[u8]) -> Self {
        Self::term(w, RatFunc::one())
    }

    pub fn term(w: &[u8], c: RatFunc) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w.to_vec(), c);
        }
        FreeElt { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: Word, c: &RatFunc) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                let s = o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &FreeElt) -> FreeElt {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c);
        }
        out
    }

    pub fn scale(&self, c: &RatFunc) -> FreeElt {
        let mut out = FreeElt::zero();
        for (w, x) in &self.terms {
            out.add_term(w.clone(), &(x * c));
        }
        out
    }

    /// Concatenation product.
    pub fn mul(&self, other: &FreeElt) -> FreeElt {
        let mut out = FreeElt::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                let mut w = u.clone();
                w.extend_from_slice(v);
                out.add_term(w, &(a * b));
            }
        }
        out
    }

    /// The common weight of all terms; `None` for zero.
    pub fn weight(&self) -> Result<Option<Weight>> {
        let mut it = self.terms.keys().map(|w| Weight::of_word(w));
        let Some(first) = it.next() else { return Ok(None) };
        if it.any(|w| w != first) {
            return Err(Error::NotHomogeneous);
        }
        Ok(Some(first))
    }

    pub fn bar(&self) -> FreeElt {
        let mut out = FreeElt::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), &c.bar());
        }
        out
    }
}

/// The quantum Serre relator for `i != j`, multiplied by `[1-a_ij]_i!`:
/// `sum_k (-1)^k [n, k]_i f_i^k f_j f_i^{n-k}` with `n = 1 - a_ij`.
pub fn serre_relator(d: &CartanDatum, i: usize, j: usize) -> FreeElt {
    assert_ne!(i, j);
    let n = 1 - d.a(i, j);
    let mut out = FreeElt::zero();
    for k in 0..=n {
        let c = quantum_binomial(n, k, d.d(i)).unwrap();
        let c = if k % 2 == 1 { -c } else { c };
        let mut w = vec![i as u8; k as usize];
        w.push(j as u8);
        w.extend(std::iter::repeat_n(i as u8, (n - k) as usize));
        out.add_term(w, &RatFunc::from(c));
    }
    out
}

/// Weight of the Serre relator `S_ij`.
pub fn serre_weight(d: &CartanDatum, i: usize, j: usize) -> Weight {
    Weight::simple(i).scale((1 - d.a(i, j)) as i32) + Weight::simple(j)
}

/// All words of weight `gamma`, in lexicographic order.
pub fn words_of_weight(rank: usize, gamma: &Weight) -> Vec<Word> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(rank: usize, rest: &mut Weight, cur: &mut Word, out: &mut Vec<Word>) {
        if rest.is_zero() {
            out.push(cur.clone());
            return;
        }
        for i in 0..rank {
            if rest.0[i] > 0 {
                rest.0[i] -= 1;
                cur.push(i as u8);
                rec(rank, rest, cur, out);
                cur.pop();
                rest.0[i] += 1;
            }
        }
    }
    let mut g = *gamma;
    rec(rank, &mut g, &mut cur, &mut out);
    out
}
