//! `epsilon_j`, the bijections `B_{j,0} -> B_{j,a}` and the lowest terms of
//! `f_j L` in the canonical basis.

use super::{ensure_height, CheckReport, Tally};
use crate::cartan::{build_cartan, Weight};
use crate::error::Result;
use crate::linalg::Mat;
use crate::pbw::Pbw;
use crate::scalar::{in_shifted_unit, LaurentPoly};
use crate::tropical::{bullet_ops, phi_b2, phi_b2_inv, Side};

/// Coordinates of a vector in the canonical basis, given its PBW
/// coordinates and the (lower unitriangular) matrix `p` of the canonical
/// basis in the PBW basis.
fn canonical_coords(p: &Mat, v: &[LaurentPoly]) -> Vec<LaurentPoly> {
    let n = v.len();
    let mut xi: Vec<LaurentPoly> = Vec::with_capacity(n);
    for r in 0..n {
        let mut s = v[r].clone();
        for (k, x) in xi.iter().enumerate() {
            if !p[r][k].is_zero() && !x.is_zero() {
                s -= &(&p[r][k] * x);
            }
        }
        xi.push(s);
    }
    xi
}

/// On canonical elements with weights up to `max_height`:
/// * only `1` has `epsilon_j = 0` for every `j`;
/// * for `a <= 3`, `f_j^{(a)} b` agrees modulo `f_j^{a+1} U` with exactly one
///   `±b'`, giving a bijection `B_{j,0} -> B_{j,a}` that raises the first
///   label of a `j`-initial word by `a`;
/// * `kashiwara_f` applied `a` times in another word agrees with it.
pub fn check_crystal(tag: &str, max_height: i32) -> Result<CheckReport> {
    ensure_height(tag, max_height)?;
    let d = build_cartan(tag)?;
    let n = d.rank();
    let mut p = Pbw::new(d.clone());
    let mut t = Tally::default();
    let h0 = d.enumerate_reduced_words()[0].clone();
    let mut weights = vec![Weight::zero()];
    weights.extend(d.weights_up_to(max_height));

    for g in &weights {
        let cf = p.canonical_frame(&h0, g)?;
        for e in cf.elements() {
            let x = p.canonical_value(&e)?;
            let mut all_zero = true;
            for j in 0..n {
                all_zero &= p.epsilon(j, &x)? == 0;
            }
            t.check(all_zero == g.is_zero(), || format!("b({:?}) has epsilon_j = 0 for all j", e.label));
        }
    }

    for j in 0..n {
        let hj = d.word_starting_with(j as u8);
        for g in &weights {
            for a in 1..=3u32 {
                let target = *g + Weight::simple(j).scale(a as i32);
                if target.height() > max_height {
                    continue;
                }
                let src = p.canonical_frame(&hj, g)?;
                let dst = p.canonical_frame(&hj, &target)?;
                let fa = p.alg.divided_power(j, a);
                let proj = |v: &[LaurentPoly]| -> Vec<LaurentPoly> {
                    v.iter()
                        .enumerate()
                        .map(|(k, c)| if dst.frame.labels[k][0] <= a { c.clone() } else { LaurentPoly::zero() })
                        .collect()
                };
                let mut hit = vec![false; dst.frame.dim()];
                for (k, c) in src.frame.labels.iter().enumerate() {
                    if c[0] != 0 {
                        continue;
                    }
                    let b = src.element(k);
                    let x = p.canonical_value(&b)?;
                    let y = p.alg.mul(&fa, &x)?;
                    let v = dst.frame.expand_integral(&y)?;
                    let low = v.iter().enumerate().all(|(r, c)| c.is_zero() || dst.frame.labels[r][0] >= a);
                    t.check(low, || format!("f_{}^({a}) b({c:?}) has epsilon below {a}", j + 1));
                    let pv = proj(&v);
                    let neg: Vec<LaurentPoly> = pv.iter().map(|c| -c.clone()).collect();
                    let mut found = Vec::new();
                    for m in 0..dst.frame.dim() {
                        let col: Vec<LaurentPoly> = dst.p.iter().map(|r| r[m].clone()).collect();
                        let pc = proj(&col);
                        if pc == pv || pc == neg {
                            found.push(m);
                        }
                    }
                    if !t.check(found.len() == 1, || format!("f_{}^({a}) b({c:?}): {} matches", j + 1, found.len())) {
                        continue;
                    }
                    let m = found[0];
                    t.check(!hit[m], || format!("two elements map to b({:?})", dst.frame.labels[m]));
                    hit[m] = true;
                    let mut up = c.clone();
                    up[0] = a;
                    t.check(dst.frame.labels[m] == up, || format!("b({c:?}) maps to b({:?}), not b({up:?})", dst.frame.labels[m]));

                    if hj != h0 {
                        let there = p.label_transition(&hj, &h0, g)?;
                        let mt = there.iter().find(|x| x.from == *c).unwrap();
                        let mut e = p.canonical_element(&h0, &mt.to)?;
                        for _ in 0..a {
                            e = p.kashiwara_f(j, &e)?.1;
                        }
                        let back = p.label_transition(&h0, &hj, &target)?;
                        let mb = back.iter().find(|x| x.from == e.label).unwrap();
                        t.check(mb.to == up, || format!("F_{}^{a} of b({c:?}) is b({:?})", j + 1, mb.to));
                    }
                }
                let expected: Vec<bool> = dst.frame.labels.iter().map(|c| c[0] == a).collect();
                t.check(hit == expected, || format!("B_{{{},0}} -> B_{{{},{a}}} at {:?} is not onto", j + 1, j + 1, target.coords(n)));
            }
        }
    }
    Ok(t.finish("crystal", format!("{tag} height<={max_height}")))
}

/// Lowest term of the coefficient of `b° = b(c^{.+.})` in `f_j L(c, h)`
/// expanded in the canonical basis, for `f_2` on `h = (1,2,1,2)` and `f_1`
/// on `h' = (2,1,2,1)`: it must lie in `q_j^{-a'} (1 + qZ[q])` where `a'` is
/// the first label of `c` in the other word and `q_j = q^{d_j}`. With
/// `scaled = false` the exponent is `-a'` on both sides instead, which
/// cannot hold on the `h'` side when `a' > 0` since `f_1` raises the first
/// label with `[a'+1]_{q^2}`. On the `h'` side labels with `a = c`, `b = d`,
/// `a > 0` are excluded.
pub fn check_xi(max_height: i32, scaled: bool) -> Result<CheckReport> {
    check_xi_sides(max_height, &[Side::H, Side::HPrime], scaled)
}

/// [`check_xi`] on the chosen words only.
pub fn check_xi_sides(max_height: i32, sides: &[Side], scaled: bool) -> Result<CheckReport> {
    ensure_height("B2", max_height + 1)?;
    let d = build_cartan("B2")?;
    let mut p = Pbw::new(d.clone());
    let mut t = Tally::default();
    let mut excluded = 0;
    let mut excluded_holding = 0;
    for &side in sides {
        let (h, j): (&[u8], usize) = match side {
            Side::H => (&[0, 1, 0, 1], 1),
            Side::HPrime => (&[1, 0, 1, 0], 0),
        };
        let rw = p.reduced_word(h)?;
        let mut weights = vec![Weight::zero()];
        weights.extend(d.weights_up_to(max_height));
        for g in weights {
            for c in rw.labels_of_weight(&g) {
                let ci = [c[0] as i64, c[1] as i64, c[2] as i64, c[3] as i64];
                let a_prime = match side {
                    Side::H => phi_b2(ci)[0],
                    Side::HPrime => phi_b2_inv(ci)[0],
                };
                let bullet = bullet_ops(ci, side);
                let l = p.monomial(h, &c)?;
                let gen = p.alg.generator(j);
                let z = p.alg.mul(&gen, &l)?;
                let cf = p.canonical_frame(h, &z.weight)?;
                let v = cf.frame.expand_integral(&z)?;
                let xi = canonical_coords(&cf.p, &v);
                let target: Vec<u32> = bullet.iter().map(|&x| x as u32).collect();
                let k = cf.frame.index_of(&target).unwrap();
                let dj = if scaled { d.d(j) as i64 } else { 1 };
                let ok = in_shifted_unit(&xi[k], (-dj * a_prime) as i32);
                let star = side == Side::HPrime && ci[0] == ci[2] && ci[1] == ci[3] && ci[0] != 0;
                if star {
                    excluded += 1;
                    excluded_holding += ok as u32;
                    continue;
                }
                t.check(ok, || format!("{h:?} {c:?}: xi = {} not in q^{}(1 + qZ[q])", xi[k], -dj * a_prime));
            }
        }
    }
    if sides.contains(&Side::HPrime) {
        t.note(format!("{excluded} labels excluded on the (2,1,2,1) side; the claim holds for {excluded_holding} of them anyway"));
    }
    let words = match sides {
        [Side::H] => "word (1,2,1,2)",
        [Side::HPrime] => "word (2,1,2,1)",
        _ => "both words",
    };
    let form = if scaled { "q_j^-a'" } else { "q^-a'" };
    Ok(t.finish("xi", format!("B2 labels of height<={max_height}, {words}, exponent {form}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_coords_inverts_p() {
        let one = LaurentPoly::one();
        let q = LaurentPoly::q_pow(1);
        let p = vec![vec![one.clone(), LaurentPoly::zero()], vec![q.clone(), one.clone()]];
        // b_0 + 2 b_1 = L_0 + (q + 2) L_1
        let v = vec![one.clone(), &q + &LaurentPoly::from_int(2)];
        assert_eq!(canonical_coords(&p, &v), vec![one, LaurentPoly::from_int(2)]);
    }

    #[test]
    fn crystal_low_height() {
        for tag in ["A2", "B2"] {
            let r = check_crystal(tag, 4).unwrap();
            assert!(r.passed, "{r:?}");
        }
    }

    #[test]
    fn xi_low_height() {
        let r = check_xi(3, true).unwrap();
        assert!(r.passed, "{r:?}");
        // c = (0,0,0,1) on (2,1,2,1): xi = q^-2 + q^2 with a' = 1
        let r = check_xi(3, false).unwrap();
        assert!(!r.passed);
        assert!(r.failures.iter().any(|f| f.contains("[1, 0, 1, 0] [0, 0, 0, 1]")), "{r:?}");
    }
}
