//! Weight-space dimensions, PBW transitions and canonical bases.

use super::{ensure_height, Tally, CheckReport, RANK_PRIME};
use crate::canonical::is_unitriangular;
use crate::cartan::{build_cartan, CartanDatum, Word};
use crate::error::Result;
use crate::freealg::{word_gram_mod, words_of_weight, Algebra};
use crate::linalg::{mat_mul, rank_mod, Mat};
use crate::pbw::{is_inverse_pair, mod_q_permutation, Pbw};
use crate::scalar::in_one_plus_qa0;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Dimensions of the Serre quotient against Kostant's partition function,
/// and the rank of the form on all words against the quotient dimension.
///
/// The Gram matrix of the words is specialised at a random `q = t` modulo
/// [`RANK_PRIME`]. Specialisation can only lower the rank and the radical
/// always contains the Serre ideal, so a specialised rank equal to the
/// quotient dimension certifies that the radical is exactly the ideal.
pub fn check_quotient(tag: &str, max_height: i32, seed: u64) -> Result<CheckReport> {
    ensure_height(tag, max_height)?;
    let d = build_cartan(tag)?;
    let mut a = Algebra::new(d.clone());
    let mut rng = StdRng::seed_from_u64(seed);
    let mut t = Tally::default();
    for g in d.weights_up_to(max_height) {
        let Some(dim) = t.absorb(a.dim(&g), || format!("{g:?}"))? else { continue };
        let k = d.kostant_count(&g) as usize;
        t.check(dim == k, || format!("weight {:?}: quotient dimension {dim}, Kostant count {k}", g.coords(d.rank())));
        let words = words_of_weight(d.rank(), &g);
        let q = rng.gen_range(2..RANK_PRIME - 1);
        let gram = word_gram_mod(&d, &words, q, RANK_PRIME);
        let r = rank_mod(gram, RANK_PRIME);
        let ideal = words.len() - dim;
        let radical = words.len() - r;
        t.check(radical == ideal, || {
            format!("weight {:?}: radical rank {radical}, ideal rank {ideal} ({} words)", g.coords(d.rank()), words.len())
        });
    }
    t.note(format!("form ranks specialised modulo 2^61-1 with seed {seed}"));
    Ok(t.finish("quotient", format!("{tag} height<={max_height}")))
}

fn words_for(d: &CartanDatum) -> Vec<Word> {
    if d.rank() <= 3 {
        return d.enumerate_reduced_words();
    }
    let mut ws: Vec<Word> = (0..d.rank()).map(|j| d.word_starting_with(j as u8)).collect();
    ws.sort();
    ws.dedup();
    ws
}

/// Transition matrices between PBW bases of every pair of reduced words:
/// entries in `Z[q]`, mutually inverse, permutation matrices mod `q`. Also
/// checks orthogonality of the PBW basis of the first word under the form.
pub fn check_pbw(tag: &str, max_height: i32) -> Result<CheckReport> {
    ensure_height(tag, max_height)?;
    let d = build_cartan(tag)?;
    let words = d.enumerate_reduced_words();
    let mut p = Pbw::new(d.clone());
    let mut t = Tally::default();
    let weights = d.weights_up_to(max_height);
    for g in &weights {
        let gc = g.coords(d.rank());
        for x in 0..words.len() {
            for y in x + 1..words.len() {
                let (h, h2) = (&words[x], &words[y]);
                let ctx = || format!("{h:?} -> {h2:?} at {gc:?}");
                let Some(m) = t.absorb(p.transition_matrix(h, h2, g), ctx)? else { continue };
                let Some(n) = t.absorb(p.transition_matrix(h2, h, g), ctx)? else { continue };
                t.check(is_inverse_pair(&m, &n), || format!("{} transitions are not inverse", ctx()));
                t.check(mod_q_permutation(&m).is_some(), || format!("{} is not a permutation mod q", ctx()));
                t.check(mod_q_permutation(&n).is_some(), || format!("{h2:?} -> {h:?} at {gc:?} is not a permutation mod q"));
            }
        }
        let h = &words[0];
        let Some(f) = t.absorb(p.frame(h, g), || format!("frame at {gc:?}"))? else { continue };
        for i in 0..f.dim() {
            for j in i..f.dim() {
                let v = p.alg.form(&f.monomials[i], &f.monomials[j])?;
                if i == j {
                    t.check(in_one_plus_qa0(&v), || format!("(L, L) not in 1 + qA0 for {:?}", f.labels[i]));
                } else {
                    t.check(v.is_zero(), || format!("L({:?}) and L({:?}) not orthogonal", f.labels[i], f.labels[j]));
                }
            }
        }
    }
    t.note(format!("{} reduced words", words.len()));
    Ok(t.finish("pbw", format!("{tag} height<={max_height}")))
}

fn bar_mat(m: &Mat) -> Mat {
    m.iter().map(|r| r.iter().map(|x| x.bar()).collect()).collect()
}

/// Canonical bases: unitriangular bar matrices that square to the
/// identity, the triangular solve, and the defining properties of each
/// output re-checked on the element itself.
pub fn check_canonical(tag: &str, max_height: i32) -> Result<CheckReport> {
    ensure_height(tag, max_height)?;
    let d = build_cartan(tag)?;
    let words = words_for(&d);
    let mut p = Pbw::new(d.clone());
    let mut t = Tally::default();
    for g in d.weights_up_to(max_height) {
        let gc = g.coords(d.rank());
        for (w, h) in words.iter().enumerate() {
            let Some(cf) = t.absorb(p.canonical_frame(h, &g), || format!("{h:?} at {gc:?}"))? else { continue };
            let a = &cf.bar;
            t.check(is_unitriangular(a), || format!("bar matrix of {h:?} at {gc:?} is not unitriangular"));
            let sq = mat_mul(&bar_mat(a), a);
            t.check(is_unitriangular(&sq) && sq.iter().enumerate().all(|(i, r)| r.iter().enumerate().all(|(j, x)| i == j || x.is_zero())), || {
                format!("bar matrix of {h:?} at {gc:?} is not an involution")
            });
            for k in 0..cf.frame.dim() {
                let e = cf.element(k);
                let shape = e.coeffs.iter().enumerate().all(|(r, c)| {
                    if r == k {
                        c.is_one()
                    } else {
                        c.is_zero() || (r > k && c.low_deg().is_some_and(|l| l > 0))
                    }
                });
                t.check(shape, || format!("b({:?}) of {h:?} is not unitriangular over qZ[q]", e.label));
                let x = p.canonical_value(&e)?;
                t.check(x.bar() == x, || format!("b({:?}) of {h:?} is not bar invariant", e.label));
                if w == 0 {
                    let ok = p.signed_basis_test(&x)?;
                    t.check(ok, || format!("b({:?}) fails the signed-basis test", e.label));
                }
            }
        }
    }
    t.note(format!("{} reduced words; signed-basis test on the first", words.len()));
    Ok(t.finish("canonical", format!("{tag} height<={max_height}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suites_pass() {
        for r in [
            check_quotient("B2", 4, 1).unwrap(),
            check_pbw("A2", 4).unwrap(),
            check_canonical("G2", 3).unwrap(),
            check_canonical("A1xA1", 3).unwrap(),
        ] {
            assert!(r.passed, "{r:?}");
            assert!(r.instances > 0);
        }
    }

    #[test]
    fn oversized_height_is_a_resource_limit() {
        assert!(matches!(check_pbw("D4", 9), Err(crate::Error::ResourceLimit(_))));
    }
}
