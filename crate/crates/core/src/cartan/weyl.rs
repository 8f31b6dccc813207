use super::{CartanDatum, Weight, Word};
use crate::error::{Error, Result};
use std::collections::{BTreeSet, HashMap, VecDeque};

/// A reduced expression of the longest Weyl group element together with
/// its convex order of positive roots.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ReducedWord {
    letters: Word,
    roots: Vec<Weight>,
}

impl ReducedWord {
    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    /// `beta_k = s_{i_1} ... s_{i_{k-1}} (alpha_{i_k})`.
    pub fn roots(&self) -> &[Weight] {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Weight of the PBW label `c`.
    pub fn weight_of(&self, c: &[u32]) -> Weight {
        let mut w = Weight::zero();
        for (k, &ck) in c.iter().enumerate() {
            w = w + self.roots[k].scale(ck as i32);
        }
        w
    }

    /// All labels `c in N^N` of weight `gamma`, in increasing
    /// lexicographic order.
    pub fn labels_of_weight(&self, gamma: &Weight) -> Vec<Vec<u32>> {
        let n = self.roots.len();
        let mut out = Vec::new();
        let mut cur = vec![0u32; n];
        fn rec(k: usize, rest: Weight, roots: &[Weight], cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if k == roots.len() {
                if rest.is_zero() {
                    out.push(cur.clone());
                }
                return;
            }
            let mut r = rest;
            let mut c = 0;
            loop {
                cur[k] = c;
                rec(k + 1, r, roots, cur, out);
                r = r - roots[k];
                if !r.is_nonneg() {
                    break;
                }
                c += 1;
            }
            cur[k] = 0;
        }
        rec(0, *gamma, &self.roots, &mut cur, &mut out);
        out.sort();
        out
    }
}

impl CartanDatum {
    /// `s_i(w) = w - <w, alpha_i^vee> alpha_i`.
    pub fn reflect(&self, i: usize, w: &Weight) -> Weight {
        let c = 2 * self.pair_simple(i, w) / self.pairing[i][i];
        let mut out = *w;
        out.0[i] -= c as i32;
        out
    }

    pub fn positive_roots(&self) -> Vec<Weight> {
        let mut seen: BTreeSet<Weight> = (0..self.rank()).map(Weight::simple).collect();
        let mut queue: VecDeque<Weight> = seen.iter().copied().collect();
        while let Some(b) = queue.pop_front() {
            for i in 0..self.rank() {
                let r = self.reflect(i, &b);
                if r.is_nonneg() && seen.insert(r) {
                    queue.push_back(r);
                }
            }
        }
        let mut v: Vec<Weight> = seen.into_iter().collect();
        v.sort_by_key(|w| (w.height(), *w));
        v
    }

    pub fn num_positive_roots(&self) -> usize {
        self.positive_roots().len()
    }

    /// Order of `s_i s_j`.
    pub fn braid_order(&self, i: usize, j: usize) -> usize {
        match self.a(i, j) * self.a(j, i) {
            0 => 2,
            1 => 3,
            2 => 4,
            3 => 6,
            _ => unreachable!("finite type"),
        }
    }

    /// Validates `h` as a reduced expression of the longest element.
    pub fn reduced_word(&self, h: &[u8]) -> Result<ReducedWord> {
        let n = self.num_positive_roots();
        if h.len() != n || h.iter().any(|&i| i as usize >= self.rank()) {
            return Err(Error::NotReduced(format!("{:?} has length {} (expected {n})", self.word_labels_lossy(h), h.len())));
        }
        let mut roots = Vec::with_capacity(n);
        for k in 0..h.len() {
            let mut b = Weight::simple(h[k] as usize);
            for m in (0..k).rev() {
                b = self.reflect(h[m] as usize, &b);
            }
            if !b.is_nonneg() || roots.contains(&b) {
                return Err(Error::NotReduced(format!("{:?}", self.word_labels_lossy(h))));
            }
            roots.push(b);
        }
        Ok(ReducedWord { letters: h.to_vec(), roots })
    }

    fn word_labels_lossy(&self, h: &[u8]) -> Vec<String> {
        h.iter()
            .map(|&i| self.labels.get(i as usize).cloned().unwrap_or_else(|| format!("#{i}")))
            .collect()
    }

    /// One reduced word of the longest element, obtained by walking a
    /// dominant regular vector to its negative.
    pub fn longest_word_seed(&self) -> Word {
        let mut v = Weight::zero();
        for b in self.positive_roots() {
            v = v + b;
        }
        let mut word = Vec::new();
        while let Some(i) = (0..self.rank()).find(|&i| self.pair_simple(i, &v) > 0) {
            v = self.reflect(i, &v);
            word.push(i as u8);
        }
        word.reverse();
        word
    }

    /// Words obtained from `h` by one braid move, with the move position.
    pub fn braid_neighbours(&self, h: &[u8]) -> Vec<(usize, Word)> {
        let mut out = Vec::new();
        for p in 0..h.len() {
            for len in [2usize, 3, 4, 6] {
                if p + len > h.len() {
                    continue;
                }
                let (i, j) = (h[p] as usize, h[p + 1] as usize);
                if i == j || self.braid_order(i, j) != len {
                    continue;
                }
                let seg = &h[p..p + len];
                if seg.iter().enumerate().all(|(k, &x)| x as usize == if k % 2 == 0 { i } else { j }) {
                    let mut w = h.to_vec();
                    for k in 0..len {
                        w[p + k] = if k % 2 == 0 { j as u8 } else { i as u8 };
                    }
                    out.push((p, w));
                }
            }
        }
        out
    }

    /// All reduced words of the longest element, sorted lexicographically.
    pub fn enumerate_reduced_words(&self) -> Vec<Word> {
        let seed = self.longest_word_seed();
        let mut seen: BTreeSet<Word> = BTreeSet::new();
        seen.insert(seed.clone());
        let mut queue = VecDeque::from([seed]);
        while let Some(h) = queue.pop_front() {
            for (_, w) in self.braid_neighbours(&h) {
                if seen.insert(w.clone()) {
                    queue.push_back(w);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// A shortest sequence of braid moves from `h` to `h2`, as the list of
    /// intermediate words including both ends.
    pub fn braid_path(&self, h: &[u8], h2: &[u8]) -> Option<Vec<Word>> {
        let mut prev: HashMap<Word, Word> = HashMap::new();
        let start = h.to_vec();
        prev.insert(start.clone(), start.clone());
        let mut queue = VecDeque::from([start.clone()]);
        while let Some(w) = queue.pop_front() {
            if w == h2 {
                let mut path = vec![w.clone()];
                let mut cur = w;
                while cur != start {
                    cur = prev[&cur].clone();
                    path.push(cur.clone());
                }
                path.reverse();
                return Some(path);
            }
            for (_, n) in self.braid_neighbours(&w) {
                if !prev.contains_key(&n) {
                    prev.insert(n.clone(), w.clone());
                    queue.push_back(n);
                }
            }
        }
        None
    }

    /// A reduced word of the longest element starting with `j`, the
    /// lexicographically smallest such.
    pub fn word_starting_with(&self, j: u8) -> Word {
        self.enumerate_reduced_words()
            .into_iter()
            .find(|w| w[0] == j)
            .expect("every simple reflection is a left descent of w0")
    }

    /// Kostant's partition function: multisets of positive roots summing to
    /// `gamma`.
    pub fn kostant_count(&self, gamma: &Weight) -> u64 {
        let roots = self.positive_roots();
        let mut memo: HashMap<(usize, Weight), u64> = HashMap::new();
        fn rec(k: usize, rest: Weight, roots: &[Weight], memo: &mut HashMap<(usize, Weight), u64>) -> u64 {
            if rest.is_zero() {
                return 1;
            }
            if k == roots.len() {
                return 0;
            }
            if let Some(&v) = memo.get(&(k, rest)) {
                return v;
            }
            let mut total = 0;
            let mut r = rest;
            loop {
                total += rec(k + 1, r, roots, memo);
                r = r - roots[k];
                if !r.is_nonneg() {
                    break;
                }
            }
            memo.insert((k, rest), total);
            total
        }
        rec(0, *gamma, &roots, &mut memo)
    }
}

#[cfg(test)]
mod tests {
    use crate::cartan::build_cartan;
    use crate::cartan::Weight;

    #[test]
    fn root_counts() {
        for (t, n) in [("A1xA1", 2), ("A2", 3), ("A3", 6), ("B2", 4), ("D4", 12), ("G2", 6)] {
            assert_eq!(build_cartan(t).unwrap().num_positive_roots(), n, "{t}");
        }
    }

    #[test]
    fn reduced_word_counts() {
        for (t, n) in [("A1xA1", 2), ("A2", 2), ("A3", 16), ("B2", 2), ("G2", 2)] {
            let d = build_cartan(t).unwrap();
            let ws = d.enumerate_reduced_words();
            assert_eq!(ws.len(), n, "{t}");
            for w in ws {
                assert!(d.reduced_word(&w).is_ok());
            }
        }
    }

    #[test]
    fn b2_convex_order() {
        let b2 = build_cartan("B2").unwrap();
        let h = b2.reduced_word(&[0, 1, 0, 1]).unwrap();
        let r: Vec<_> = h.roots().iter().map(|w| (w.0[0], w.0[1])).collect();
        assert_eq!(r, vec![(1, 0), (1, 1), (1, 2), (0, 1)]);
        assert!(b2.reduced_word(&[0, 0, 1, 1]).is_err());
        assert!(b2.reduced_word(&[0, 1, 0]).is_err());
    }

    #[test]
    fn kostant_matches_label_count() {
        let a3 = build_cartan("A3").unwrap();
        let h = a3.reduced_word(&a3.longest_word_seed()).unwrap();
        for g in a3.weights_up_to(5) {
            assert_eq!(a3.kostant_count(&g) as usize, h.labels_of_weight(&g).len());
        }
        assert_eq!(a3.kostant_count(&Weight::from_slice(&[1, 1, 1])), 4);
    }

    #[test]
    fn braid_path_connects() {
        let a3 = build_cartan("A3").unwrap();
        let ws = a3.enumerate_reduced_words();
        let p = a3.braid_path(&ws[0], ws.last().unwrap()).unwrap();
        assert_eq!(p.first(), Some(&ws[0]));
        for pair in p.windows(2) {
            assert!(a3.braid_neighbours(&pair[0]).iter().any(|(_, w)| w == &pair[1]));
        }
    }
}
