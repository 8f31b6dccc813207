//! Folding along an admissible diagram automorphism of order `p` prime.
//!
//! The quotient `V_q` of the `sigma`-fixed part of the integral form over
//! `F_p[q, q^-1]` by the orbit sums is modelled in PBW coordinates of a
//! lifted word: a `sigma`-fixed element is determined modulo orbit sums by
//! its coordinates at the `sigma`-fixed labels, reduced mod `p`. The map
//! `Phi` sends `f_j^{(a)}` to the image of the orbit product
//! `prod_{i in j} f_i^{(a)}`.

use crate::cartan::{build_cartan, Folding, Weight, Word};
use crate::error::{Error, Result};
use crate::freealg::QuotElt;
use crate::linalg::gauss_jordan;
use crate::pbw::Pbw;
use crate::scalar::LaurentPoly;
use serde::Serialize;

/// A divided-power monomial `f_{j_1}^{(a_1)} ... f_{j_k}^{(a_k)}`.
pub type DpMonomial = Vec<(usize, u32)>;

/// All divided-power monomials of weight `gamma` with no two adjacent
/// letters equal.
pub fn divided_power_monomials(rank: usize, gamma: &Weight) -> Vec<DpMonomial> {
    fn rec(rank: usize, rest: &mut Weight, prev: Option<usize>, cur: &mut DpMonomial, out: &mut Vec<DpMonomial>) {
        if rest.is_zero() {
            out.push(cur.clone());
            return;
        }
        for j in 0..rank {
            if Some(j) == prev {
                continue;
            }
            for a in 1..=rest.0[j].max(0) as u32 {
                rest.0[j] -= a as i32;
                cur.push((j, a));
                rec(rank, rest, Some(j), cur, out);
                cur.pop();
                rest.0[j] += a as i32;
            }
        }
    }
    let mut out = Vec::new();
    rec(rank, &mut gamma.clone(), None, &mut Vec::new(), &mut out);
    out
}

/// Outcome of the folding checks at one folded weight.
#[derive(Clone, Debug, Serialize)]
pub struct FoldReport {
    pub weight: Vec<i32>,
    pub unfolded_height: i32,
    pub folded_dim: usize,
    pub fixed_labels: usize,
    pub monomials: usize,
    /// Rank over `F_p(q)` of the images of all divided-power monomials.
    pub image_rank: usize,
    /// `sigma(L(c, h)) = L(sigma(c), h)` for every label.
    pub sigma_permutes: bool,
    /// `Phi(L(c, h_folded)) = pi(L(c, h))` on every monomial.
    pub pbw_compatible: bool,
    /// `Phi(b(c, h_folded)) = pi(b(c, h))` for every label.
    pub canonical_compatible: bool,
    pub failures: Vec<String>,
}

impl FoldReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
            && self.sigma_permutes
            && self.pbw_compatible
            && self.canonical_compatible
            && self.folded_dim == self.fixed_labels
            && self.image_rank == self.folded_dim
    }
}

pub struct FoldContext {
    pub folding: Folding,
    pub p: u32,
    pub up: Pbw,
    pub down: Pbw,
}

impl FoldContext {
    /// `tag` is one of `A3`, `D4`, `A1xA1` (optionally with `:target`).
    pub fn new(tag: &str) -> Result<Self> {
        let folding = Folding::standard(tag)?;
        let p = folding.sigma.order() as u32;
        let folded = match build_cartan(&folding.folded.name) {
            Ok(d) if d.pairing == folding.folded.pairing => d,
            _ => folding.folded.clone(),
        };
        let up = Pbw::new(folding.unfolded.clone());
        let down = Pbw::new(folded);
        Ok(FoldContext { folding, p, up, down })
    }

    /// `prod_{i in j} f_i^{(a)}` in the unfolded algebra.
    pub fn tilde_f(&mut self, j: usize, a: u32) -> Result<QuotElt> {
        let parts: Vec<QuotElt> = self.folding.orbits[j].clone().into_iter().map(|i| self.up.alg.divided_power(i, a)).collect();
        self.up.alg.mul_all(&parts)
    }

    fn lift_monomial(&mut self, m: &[(usize, u32)]) -> Result<QuotElt> {
        let mut parts = Vec::with_capacity(m.len());
        for &(j, a) in m {
            parts.push(self.tilde_f(j, a)?);
        }
        self.up.alg.mul_all(&parts)
    }

    fn folded_monomial(&mut self, m: &[(usize, u32)]) -> Result<QuotElt> {
        let parts: Vec<QuotElt> = m.iter().map(|&(j, a)| self.down.alg.divided_power(j, a)).collect();
        self.down.alg.mul_all(&parts)
    }

    /// `pi(x)` for a `sigma`-fixed `x` of weight `unfold(gamma)`: its PBW
    /// coordinates in the lifted word at the fixed labels (in the order of
    /// the folded labels of `h`), mod `p`.
    pub fn pi_coords(&mut self, h: &[u8], gamma: &Weight, x: &QuotElt) -> Result<Vec<LaurentPoly>> {
        let lifted = self.folding.lift_word(h);
        let ug = self.folding.unfold_weight(gamma);
        let f = self.up.frame(&lifted, &ug)?;
        let v = f.expand_integral(x)?;
        self.pi_of_coords(h, gamma, &f.labels, &v)
    }

    fn pi_of_coords(&mut self, h: &[u8], gamma: &Weight, labels: &[Vec<u32>], v: &[LaurentPoly]) -> Result<Vec<LaurentPoly>> {
        let lifted = self.folding.lift_word(h);
        let ug = self.folding.unfold_weight(gamma);
        let f = self.up.frame(&lifted, &ug)?;
        for (k, c) in labels.iter().enumerate() {
            let s = self.folding.sigma_on_index(h, c);
            let ks = f.index_of(&s).ok_or_else(|| Error::Verification(format!("sigma label {s:?} missing")))?;
            if v[k] != v[ks] {
                return Err(Error::NotFixed);
            }
        }
        let g = self.down.frame(h, gamma)?;
        g.labels
            .iter()
            .map(|c| {
                let u = self.folding.index_unfold(h, c);
                let k = f.index_of(&u).ok_or_else(|| Error::Verification(format!("lifted label {u:?} missing")))?;
                Ok(v[k].reduce_mod(self.p))
            })
            .collect()
    }

    /// `Phi(x)` in `pi`-coordinates: the folded PBW coordinates of `x` mod `p`.
    pub fn phi_coords(&mut self, h: &[u8], x: &QuotElt) -> Result<Vec<LaurentPoly>> {
        let g = self.down.frame(h, &x.weight)?;
        Ok(g.expand_integral(x)?.iter().map(|c| c.reduce_mod(self.p)).collect())
    }

    /// Runs all checks at the folded weight `gamma` for the folded word `h`.
    pub fn verify_weight(&mut self, h: &[u8], gamma: &Weight) -> Result<FoldReport> {
        let rank = self.down.datum().rank();
        let lifted: Word = self.folding.lift_word(h);
        self.up.reduced_word(&lifted)?;
        let ug = self.folding.unfold_weight(gamma);
        let uf = self.up.frame(&lifted, &ug)?;
        let df = self.down.frame(h, gamma)?;
        let mut failures = Vec::new();

        let fixed = uf.labels.iter().filter(|c| self.folding.sigma_on_index(h, c) == **c).count();

        let perm = self.folding.sigma.perm.clone();
        let mut sigma_permutes = true;
        for (k, c) in uf.labels.iter().enumerate() {
            let s = self.folding.sigma_on_index(h, c);
            let img = self.up.alg.permute(&uf.monomials[k], &perm)?;
            let target = self.up.monomial(&lifted, &s)?;
            if img != target {
                sigma_permutes = false;
                failures.push(format!("sigma(L({c:?})) != L({s:?})"));
            }
        }

        let mons = divided_power_monomials(rank, gamma);
        let mut image: Vec<Vec<LaurentPoly>> = vec![Vec::with_capacity(mons.len()); df.dim()];
        let mut pbw_compatible = true;
        for m in &mons {
            let x = self.folded_monomial(m)?;
            let phi = self.phi_coords(h, &x)?;
            let y = self.lift_monomial(m)?;
            let pi = match self.pi_coords(h, gamma, &y) {
                Ok(v) => v,
                Err(e) => {
                    failures.push(format!("lift of {m:?}: {e}"));
                    pbw_compatible = false;
                    continue;
                }
            };
            if phi != pi {
                pbw_compatible = false;
                failures.push(format!("Phi and pi differ on {m:?}"));
            }
            for (r, c) in pi.into_iter().enumerate() {
                image[r].push(c);
            }
        }
        let image_rank = if df.dim() == 0 || image[0].is_empty() { 0 } else { gauss_jordan(image, mons.len()).rank() };

        let mut canonical_compatible = true;
        let dc = self.down.canonical_frame(h, gamma)?;
        let uc = self.up.canonical_frame(&lifted, &ug)?;
        for (k, c) in df.labels.iter().enumerate() {
            let u = self.folding.index_unfold(h, c);
            let ku = uf.index_of(&u).unwrap();
            let ucol: Vec<LaurentPoly> = uc.p.iter().map(|r| r[ku].clone()).collect();
            let pi = match self.pi_of_coords(h, gamma, &uf.labels, &ucol) {
                Ok(v) => v,
                Err(e) => {
                    canonical_compatible = false;
                    failures.push(format!("b({u:?}): {e}"));
                    continue;
                }
            };
            let phi: Vec<LaurentPoly> = dc.p.iter().map(|r| r[k].reduce_mod(self.p)).collect();
            if phi != pi {
                canonical_compatible = false;
                failures.push(format!("Phi(b({c:?})) != pi(b({u:?}))"));
            }
        }

        Ok(FoldReport {
            weight: gamma.coords(rank),
            unfolded_height: ug.height(),
            folded_dim: df.dim(),
            fixed_labels: fixed,
            monomials: mons.len(),
            image_rank,
            sigma_permutes,
            pbw_compatible,
            canonical_compatible,
            failures,
        })
    }

    /// Folded weights whose unfolding has height at most `max_height`.
    pub fn weights(&self, max_height: i32) -> Vec<Weight> {
        self.down
            .datum()
            .weights_up_to(max_height)
            .into_iter()
            .filter(|g| self.folding.unfold_weight(g).height() <= max_height)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_enumeration() {
        let m = divided_power_monomials(2, &Weight::from_slice(&[1, 1]));
        assert_eq!(m, vec![vec![(0, 1), (1, 1)], vec![(1, 1), (0, 1)]]);
        assert_eq!(divided_power_monomials(2, &Weight::from_slice(&[2, 0])), vec![vec![(0, 2)]]);
        assert_eq!(divided_power_monomials(2, &Weight::zero()), vec![Vec::<(usize, u32)>::new()]);
    }

    #[test]
    fn a3_to_b2_low_weights() {
        let mut ctx = FoldContext::new("A3").unwrap();
        assert_eq!(ctx.p, 2);
        for h in [[0u8, 1, 0, 1], [1, 0, 1, 0]] {
            for g in ctx.weights(4) {
                let r = ctx.verify_weight(&h, &g).unwrap();
                assert!(r.passed(), "{r:?}");
            }
        }
    }

    #[test]
    fn orbit_sum_vanishes_mod_p() {
        // f_1 f_1' is sigma-fixed; the orbit sum of f_1 f_2 f_1' has zero fixed part
        let mut ctx = FoldContext::new("A3").unwrap();
        let x = ctx.tilde_f(0, 1).unwrap();
        let h = [0u8, 1, 0, 1];
        let pi = ctx.pi_coords(&h, &Weight::from_slice(&[1, 0]), &x).unwrap();
        assert_eq!(pi, vec![LaurentPoly::one_mod(2)]);
        let y = ctx.up.alg.word(&[0, 1, 2]).unwrap();
        let z = ctx.up.alg.word(&[2, 1, 0]).unwrap();
        let s = y.add(&z).unwrap();
        let pi = ctx.pi_coords(&h, &Weight::from_slice(&[1, 1]), &s).unwrap();
        assert!(pi.iter().all(|c| c.is_zero()));
    }
}
