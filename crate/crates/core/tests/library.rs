use proptest::prelude::*;
use qcanon::cartan::{build_cartan, Weight};
use qcanon::freealg::{Algebra, QuotElt};
use qcanon::pbw::Pbw;
use qcanon::tropical::{phi_a2, phi_b2, phi_b2_inv};

fn same(a: &QuotElt, b: &QuotElt) -> bool {
    a.sub(b).map(|d| d.is_zero()).unwrap_or(false)
}

/// The canonical elements of the given weight, as elements of the algebra.
fn canonical_values(tag: &str, word: &[u8], g: &[i32]) -> (Pbw, Vec<QuotElt>) {
    let mut p = Pbw::new(build_cartan(tag).unwrap());
    let els = p.canonical_basis(word, &Weight::from_slice(g)).unwrap();
    let vals = els.iter().map(|e| p.canonical_value(e).unwrap()).collect();
    (p, vals)
}

fn assert_same_set(got: &[QuotElt], want: &[QuotElt]) {
    assert_eq!(got.len(), want.len());
    for w in want {
        assert_eq!(got.iter().filter(|g| same(g, w)).count(), 1);
    }
}

#[test]
fn a2_monomial_canonical_elements() {
    // weight a*alpha_1 + alpha_2 in A2: {f_1^(a) f_2, f_2 f_1^(a)}
    for a in 1..=3u32 {
        for word in [&[0u8, 1, 0][..], &[1, 0, 1]] {
            let (mut p, got) = canonical_values("A2", word, &[a as i32, 1]);
            let fa = p.alg.divided_power(0, a);
            let f2 = p.alg.generator(1);
            let want = vec![p.alg.mul(&fa, &f2).unwrap(), p.alg.mul(&f2, &fa).unwrap()];
            assert_same_set(&got, &want);
        }
    }
}

#[test]
fn b2_height_two_canonical_elements() {
    // alpha_1 + alpha_2 in B2: {f_1 f_2, f_2 f_1}; 2 alpha_2: {f_2^(2)}
    let (mut p, got) = canonical_values("B2", &[0, 1, 0, 1], &[1, 1]);
    let want = vec![p.alg.word(&[0, 1]).unwrap(), p.alg.word(&[1, 0]).unwrap()];
    assert_same_set(&got, &want);
    let (mut p, got) = canonical_values("B2", &[1, 0, 1, 0], &[0, 2]);
    let want = vec![p.alg.divided_power(1, 2)];
    assert_same_set(&got, &want);
}

fn partitions(g: [i32; 2], roots: &[[i32; 2]]) -> u64 {
    if g == [0, 0] {
        return 1;
    }
    let Some((r, rest)) = roots.split_first() else { return 0 };
    let mut total = 0;
    let mut left = g;
    while left[0] >= 0 && left[1] >= 0 {
        total += partitions(left, rest);
        left = [left[0] - r[0], left[1] - r[1]];
    }
    total
}

#[test]
fn rank_two_dimensions_match_root_partitions() {
    // positive roots written out by hand, node 1 long in B2 and G2
    let cases: [(&str, &[[i32; 2]]); 3] = [
        ("A2", &[[1, 0], [0, 1], [1, 1]]),
        ("B2", &[[1, 0], [0, 1], [1, 1], [1, 2]]),
        ("G2", &[[1, 0], [0, 1], [1, 1], [1, 2], [1, 3], [2, 3]]),
    ];
    for (tag, roots) in cases {
        let mut a = Algebra::new(build_cartan(tag).unwrap());
        for x in 0..=4 {
            for y in 0..=4 {
                let g = Weight::from_slice(&[x, y]);
                assert_eq!(a.dim(&g).unwrap() as u64, partitions([x, y], roots), "{tag} {x},{y}");
            }
        }
    }
}

#[test]
fn pbw_labels_cover_kostant_counts() {
    let d = build_cartan("D4").unwrap();
    let mut p = Pbw::new(d.clone());
    let h = d.enumerate_reduced_words()[0].clone();
    let rw = p.reduced_word(&h).unwrap();
    assert_eq!(rw.len(), 12);
    for g in d.weights_up_to(3) {
        assert_eq!(rw.labels_of_weight(&g).len() as u64, d.kostant_count(&g));
    }
}

/// The A2 map read off from the tropicalised substitution
/// (x, y, z) -> (yz/(x+z), x+z, xy/(x+z)).
fn a2_oracle(x: [i64; 3]) -> [i64; 3] {
    let s = x[0].min(x[2]);
    [x[1] + x[2] - s, s, x[0] + x[1] - s]
}

proptest! {
    #[test]
    fn a2_map_matches_substitution(a in 0i64..500, b in 0i64..500, c in 0i64..500) {
        prop_assert_eq!(phi_a2([a, b, c]), a2_oracle([a, b, c]));
        prop_assert_eq!(phi_a2(phi_a2([a, b, c])), [a, b, c]);
    }

    #[test]
    fn b2_maps_are_inverse(a in 0i64..1000, b in 0i64..1000, c in 0i64..1000, d in 0i64..1000) {
        let x = [a, b, c, d];
        let y = phi_b2(x);
        prop_assert!(y.iter().all(|&v| v >= 0));
        prop_assert_eq!(phi_b2_inv(y), x);
        prop_assert_eq!(phi_b2(phi_b2_inv(x)), x);
        // weight: (1,2,1,2) roots a1, a1+a2, a1+2a2, a2 with node 1 long
        let w = |v: [i64; 4], roots: [[i64; 2]; 4]| {
            (0..2).map(|k| (0..4).map(|i| v[i] * roots[i][k]).sum::<i64>()).collect::<Vec<_>>()
        };
        prop_assert_eq!(w(x, [[1, 0], [1, 1], [1, 2], [0, 1]]), w(y, [[0, 1], [1, 2], [1, 1], [1, 0]]));
    }
}
