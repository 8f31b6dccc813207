//! Exhaustive grids for the piecewise-linear maps, and the folding checks.

use super::{ensure_height, CheckReport, Tally};
use crate::cartan::{build_cartan, Weight};
use crate::error::Result;
use crate::folding::FoldContext;
use crate::tropical::{
    bullet_ops, lemma315_case, lemma315_case_naive, lemma36_shift, lemma37_case, phi_a2, phi_b2, phi_b2_inv, pl_along,
    pl_chain, Side,
};

fn grid4(n: i64) -> impl Iterator<Item = [i64; 4]> {
    (0..n.pow(4)).map(move |k| [k / n.pow(3), (k / n.pow(2)) % n, (k / n) % n, k % n])
}

fn weight_of(roots: &[Weight], c: &[i64]) -> Weight {
    let mut w = Weight::zero();
    for (r, &x) in roots.iter().zip(c) {
        w = w + r.scale(x as i32);
    }
    w
}

/// `grid` sets the B2 grid `{0..grid}^4`; the A2 grid is `{0..grid+2}^3`
/// and the A3 chain grid `{0..grid-2}^4`.
pub fn check_tropical(grid: i64) -> Result<CheckReport> {
    let mut t = Tally::default();
    let n2 = grid + 3;
    let a2 = build_cartan("A2")?;
    let (ra, rb) = (a2.reduced_word(&[0, 1, 0])?, a2.reduced_word(&[1, 0, 1])?);
    for k in 0..n2.pow(3) {
        let x = [k / (n2 * n2), (k / n2) % n2, k % n2];
        let y = phi_a2(x);
        t.check(phi_a2(y) == x, || format!("phi_a2 is not an involution at {x:?}"));
        t.check(y.iter().all(|&v| v >= 0), || format!("phi_a2{x:?} leaves N^3"));
        t.check(weight_of(ra.roots(), &x) == weight_of(rb.roots(), &y), || format!("phi_a2 changes the weight at {x:?}"));
        let z = lemma36_shift(x);
        t.check(z == phi_a2([y[0] + 1, y[1], y[2]]), || format!("A2 shift at {x:?}"));
    }

    let b2 = build_cartan("B2")?;
    let (rh, rh2) = (b2.reduced_word(&[0, 1, 0, 1])?, b2.reduced_word(&[1, 0, 1, 0])?);
    let n = grid + 1;
    let mut naive_mismatch = 0u64;
    for x in grid4(n) {
        let y = phi_b2(x);
        t.check(phi_b2_inv(y) == x, || format!("phi_b2_inv(phi_b2({x:?})) != id"));
        t.check(phi_b2(phi_b2_inv(x)) == x, || format!("phi_b2(phi_b2_inv({x:?})) != id"));
        t.check(y.iter().all(|&v| v >= 0), || format!("phi_b2{x:?} leaves N^4"));
        t.check(weight_of(rh.roots(), &x) == weight_of(rh2.roots(), &y), || format!("phi_b2 changes the weight at {x:?}"));

        let o37 = bullet_ops(x, Side::H);
        match lemma37_case(x) {
            Ok(r) => {
                t.check(r.fired == 1, || format!("{} guards hold at {x:?} (h side)", r.fired));
                t.check(r.value == o37, || format!("h side case {} gives {:?}, composition {o37:?} at {x:?}", r.case, r.value));
            }
            Err(e) => t.fail(format!("h side at {x:?}: {e}")),
        }
        let o315 = bullet_ops(x, Side::HPrime);
        match lemma315_case(x) {
            Ok(r) => {
                t.check(r.fired == 1, || format!("{} guards hold at {x:?} (h' side)", r.fired));
                t.check(r.value == o315, || format!("h' side case {} gives {:?}, composition {o315:?} at {x:?}", r.case, r.value));
            }
            Err(e) => t.fail(format!("h' side at {x:?}: {e}")),
        }
        let naive_ok = matches!(lemma315_case_naive(x), Ok(r) if r.fired == 1 && r.value == o315);
        naive_mismatch += !naive_ok as u64;
    }
    t.note(format!(
        "naive h' side guards disagree with the composition at {naive_mismatch} of {} points",
        n.pow(4)
    ));

    let a3 = build_cartan("A3")?;
    let h = [0u8, 2, 1, 2, 0, 1];
    let h2 = [1u8, 0, 2, 1, 2, 0];
    let m = grid - 1;
    for x in grid4(m) {
        let [a, b, c, d] = x;
        let v = pl_chain(&a3, &h, &h2, &[a, a, b, c, c, d])?;
        let [a2_, b2_, c2_, d2_] = phi_b2(x);
        t.check(v == vec![a2_, b2_, b2_, c2_, d2_, d2_], || format!("A3 chain on {x:?} gives {v:?}"));
    }

    // path independence on A3: through every intermediate word
    let words = a3.enumerate_reduced_words();
    let rw = a3.reduced_word(&h)?;
    let mut labels = Vec::new();
    for g in a3.weights_up_to((grid - 2) as i32) {
        labels.extend(rw.labels_of_weight(&g));
    }
    for w in &words {
        let p1 = a3.braid_path(&h, w).unwrap();
        let p2 = a3.braid_path(w, &h2).unwrap();
        for c in &labels {
            let ci: Vec<i64> = c.iter().map(|&x| x as i64).collect();
            let direct = pl_chain(&a3, &h, &h2, &ci)?;
            let via = pl_along(&p2, &pl_along(&p1, &ci)?)?;
            t.check(direct == via, || format!("chain through {w:?} differs on {c:?}"));
        }
    }
    Ok(t.finish("tropical", format!("A2 {{0..{}}}^3, B2 {{0..{grid}}}^4, A3 chain {{0..{}}}^4", n2 - 1, m - 1)))
}

/// Folding checks at every folded weight whose unfolding has height at
/// most `max_height`, for both reduced words of the folded datum.
pub fn check_folding(tag: &str, max_height: i32) -> Result<CheckReport> {
    ensure_height(tag, max_height)?;
    let mut ctx = FoldContext::new(tag)?;
    let mut t = Tally::default();
    let words = ctx.down.datum().enumerate_reduced_words();
    for h in &words {
        for g in ctx.weights(max_height) {
            let Some(r) = t.absorb(ctx.verify_weight(h, &g), || format!("{h:?} at {g:?}"))? else { continue };
            t.check(r.folded_dim == r.fixed_labels, || format!("{h:?} {:?}: {} folded labels, {} fixed", r.weight, r.folded_dim, r.fixed_labels));
            t.check(r.image_rank == r.folded_dim, || format!("{h:?} {:?}: image rank {}", r.weight, r.image_rank));
            t.check(r.sigma_permutes, || format!("{h:?} {:?}: sigma does not permute the PBW basis", r.weight));
            t.check(r.pbw_compatible, || format!("{h:?} {:?}: {:?}", r.weight, r.failures));
            t.check(r.canonical_compatible, || format!("{h:?} {:?}: {:?}", r.weight, r.failures));
        }
    }
    let name = ctx.down.datum().name.clone();
    t.note(format!("coefficients in F_{}[q, q^-1]", ctx.p));
    Ok(t.finish("folding", format!("{} -> {name}, unfolded height<={max_height}", ctx.folding.unfolded.name)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_tropical_grid() {
        let r = check_tropical(4).unwrap();
        assert!(r.passed, "{r:?}");
    }

    #[test]
    fn small_folding() {
        let r = check_folding("D4", 4).unwrap();
        assert!(r.passed, "{r:?}");
    }
}
