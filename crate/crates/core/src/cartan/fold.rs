use super::{CartanDatum, ReducedWord, Weight, Word};
use crate::error::{Error, Result};

/// A permutation of the simple roots preserving the pairing.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiagramAutomorphism {
    pub perm: Vec<usize>,
}

impl DiagramAutomorphism {
    pub fn new(datum: &CartanDatum, perm: Vec<usize>) -> Result<Self> {
        let n = datum.rank();
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&x| x >= n || std::mem::replace(&mut seen[x], true)) {
            return Err(Error::InvalidInput("not a permutation of the nodes".into()));
        }
        for i in 0..n {
            for j in 0..n {
                if datum.pairing[perm[i]][perm[j]] != datum.pairing[i][j] {
                    return Err(Error::InvalidInput("permutation does not preserve the pairing".into()));
                }
            }
        }
        let s = DiagramAutomorphism { perm };
        for orbit in s.orbits() {
            for &i in &orbit {
                for &j in &orbit {
                    if i != j && datum.pairing[i][j] != 0 {
                        return Err(Error::InvalidInput("automorphism is not admissible".into()));
                    }
                }
            }
        }
        Ok(s)
    }

    pub fn order(&self) -> usize {
        let mut k = 1;
        let mut cur = self.perm.clone();
        while cur.iter().enumerate().any(|(i, &x)| i != x) {
            cur = cur.iter().map(|&x| self.perm[x]).collect();
            k += 1;
        }
        k
    }

    /// Orbits, each sorted, ordered by their smallest node.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let n = self.perm.len();
        let mut done = vec![false; n];
        let mut out = Vec::new();
        for i in 0..n {
            if done[i] {
                continue;
            }
            let mut orbit = vec![i];
            done[i] = true;
            let mut j = self.perm[i];
            while j != i {
                orbit.push(j);
                done[j] = true;
                j = self.perm[j];
            }
            orbit.sort();
            out.push(orbit);
        }
        out
    }

    pub fn apply_weight(&self, w: &Weight) -> Weight {
        let mut out = Weight::zero();
        for (i, &j) in self.perm.iter().enumerate() {
            out.0[j] = w.0[i];
        }
        out
    }

    pub fn apply_word(&self, w: &[u8]) -> Word {
        w.iter().map(|&i| self.perm[i as usize] as u8).collect()
    }
}

/// A folded pair: the unfolded datum, an admissible automorphism and the
/// folded datum on the orbits.
#[derive(Clone, Debug)]
pub struct Folding {
    pub unfolded: CartanDatum,
    pub sigma: DiagramAutomorphism,
    pub folded: CartanDatum,
    pub orbits: Vec<Vec<usize>>,
    pub orbit_of: Vec<usize>,
}

/// Folds `datum` along `sigma`: the pairing of two orbits is the pairing of
/// their orbit sums.
pub fn fold_datum(datum: &CartanDatum, sigma: &DiagramAutomorphism) -> Result<Folding> {
    let orbits = sigma.orbits();
    let mut orbit_of = vec![0; datum.rank()];
    for (k, o) in orbits.iter().enumerate() {
        for &i in o {
            orbit_of[i] = k;
        }
    }
    let m = orbits.len();
    let pairing: Vec<Vec<i64>> = (0..m)
        .map(|a| {
            (0..m)
                .map(|b| orbits[a].iter().flat_map(|&i| orbits[b].iter().map(move |&j| (i, j))).map(|(i, j)| datum.pairing[i][j]).sum())
                .collect()
        })
        .collect();
    let name = match (datum.name.as_str(), m) {
        ("A3", 2) => "B2".to_string(),
        ("D4", 2) => "G2".to_string(),
        ("A1xA1", 1) => "A1".to_string(),
        (n, _) => format!("{n}/sigma"),
    };
    let labels: Vec<String> = (1..=m).map(|k| k.to_string()).collect();
    let label_refs: Vec<&str> = labels.iter().map(|s| s.as_str()).collect();
    let folded = CartanDatum::new(&name, &label_refs, pairing)?;
    Ok(Folding { unfolded: datum.clone(), sigma: sigma.clone(), folded, orbits, orbit_of })
}

impl Folding {
    /// The standard foldings `A3 -> B2` and `D4 -> G2`.
    pub fn standard(tag: &str) -> Result<Folding> {
        let (src, perm) = match tag {
            "A3" | "A3:B2" => ("A3", vec![2, 1, 0]),
            "D4" | "D4:G2" => ("D4", vec![2, 1, 3, 0]),
            "A1xA1" | "A1xA1:A1" => ("A1xA1", vec![1, 0]),
            _ => return Err(Error::UnknownType(tag.to_string())),
        };
        let d = super::build_cartan(src)?;
        let s = DiagramAutomorphism::new(&d, perm)?;
        fold_datum(&d, &s)
    }

    pub fn unfold_weight(&self, w: &Weight) -> Weight {
        let mut out = Weight::zero();
        for (k, o) in self.orbits.iter().enumerate() {
            for &i in o {
                out.0[i] = w.0[k];
            }
        }
        out
    }

    pub fn fold_weight(&self, w: &Weight) -> Result<Weight> {
        let mut out = Weight::zero();
        for (k, o) in self.orbits.iter().enumerate() {
            let v = w.0[o[0]];
            if o.iter().any(|&i| w.0[i] != v) {
                return Err(Error::NotFixed);
            }
            out.0[k] = v;
        }
        Ok(out)
    }

    /// Replaces each folded letter by its orbit. Orbits are written in
    /// increasing node order on odd occurrences of the letter and in
    /// decreasing order on even occurrences.
    pub fn lift_word(&self, h: &[u8]) -> Word {
        let mut seen = vec![0usize; self.orbits.len()];
        let mut out = Vec::new();
        for &j in h {
            let o = &self.orbits[j as usize];
            seen[j as usize] += 1;
            if seen[j as usize] % 2 == 1 {
                out.extend(o.iter().map(|&i| i as u8));
            } else {
                out.extend(o.iter().rev().map(|&i| i as u8));
            }
        }
        out
    }

    /// Block boundaries of the lifted word: `(start, len)` per folded letter.
    pub fn blocks(&self, h: &[u8]) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let mut pos = 0;
        for &j in h {
            let l = self.orbits[j as usize].len();
            out.push((pos, l));
            pos += l;
        }
        out
    }

    pub fn index_unfold(&self, h: &[u8], c: &[u32]) -> Vec<u32> {
        let mut out = Vec::new();
        for (k, &(_, l)) in self.blocks(h).iter().enumerate() {
            out.extend(std::iter::repeat_n(c[k], l));
        }
        out
    }

    pub fn index_fold(&self, h: &[u8], c: &[u32]) -> Result<Vec<u32>> {
        let mut out = Vec::new();
        for (s, l) in self.blocks(h) {
            let v = c[s];
            if c[s..s + l].iter().any(|&x| x != v) {
                return Err(Error::NotFixed);
            }
            out.push(v);
        }
        Ok(out)
    }

    /// The action of `sigma` on labels of the lifted word `lift_word(h)`.
    pub fn sigma_on_index(&self, h: &[u8], c: &[u32]) -> Vec<u32> {
        let lifted = self.lift_word(h);
        let mut out = c.to_vec();
        for (s, l) in self.blocks(h) {
            for a in s..s + l {
                let target = self.sigma.perm[lifted[a] as usize] as u8;
                let b = (s..s + l).find(|&b| lifted[b] == target).unwrap();
                out[b] = c[a];
            }
        }
        out
    }

    pub fn lift_reduced(&self, h: &ReducedWord) -> Result<ReducedWord> {
        self.unfolded.reduced_word(&self.lift_word(h.letters()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn folded_data() {
        let f = Folding::standard("A3").unwrap();
        assert_eq!(f.folded.pairing, super::super::build_cartan("B2").unwrap().pairing);
        assert_eq!(f.sigma.order(), 2);
        let g = Folding::standard("D4").unwrap();
        assert_eq!(g.folded.pairing, super::super::build_cartan("G2").unwrap().pairing);
        assert_eq!(g.sigma.order(), 3);
        assert_eq!(g.orbits, vec![vec![0, 2, 3], vec![1]]);
    }

    #[test]
    fn lifted_words() {
        let f = Folding::standard("A3").unwrap();
        assert_eq!(f.lift_word(&[0, 1, 0, 1]), vec![0, 2, 1, 2, 0, 1]);
        assert_eq!(f.lift_word(&[1, 0, 1, 0]), vec![1, 0, 2, 1, 2, 0]);
        for h in f.folded.enumerate_reduced_words() {
            assert!(f.unfolded.reduced_word(&f.lift_word(&h)).is_ok());
        }
        let g = Folding::standard("D4").unwrap();
        for h in g.folded.enumerate_reduced_words() {
            assert!(g.unfolded.reduced_word(&g.lift_word(&h)).is_ok());
        }
    }

    #[test]
    fn index_maps() {
        let f = Folding::standard("A3").unwrap();
        let h = [0u8, 1, 0, 1];
        let c = f.index_unfold(&h, &[1, 2, 3, 4]);
        assert_eq!(c, vec![1, 1, 2, 3, 3, 4]);
        assert_eq!(f.index_fold(&h, &c).unwrap(), vec![1, 2, 3, 4]);
        assert!(f.index_fold(&h, &[1, 0, 2, 3, 3, 4]).is_err());
        assert_eq!(f.sigma_on_index(&h, &[1, 0, 2, 3, 5, 4]), vec![0, 1, 2, 5, 3, 4]);
        assert!(DiagramAutomorphism::new(&f.unfolded, vec![1, 0, 2]).is_err());
    }
}
