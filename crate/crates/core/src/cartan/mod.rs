//! Cartan data, root lattices and reduced words of the longest element.

mod fold;
mod weyl;

pub use fold::{fold_datum, DiagramAutomorphism, Folding};
pub use weyl::ReducedWord;

use crate::error::{Error, Result};
use std::fmt;
use std::ops::{Add, Sub};

pub const MAX_RANK: usize = 4;

/// An element of the root lattice, `sum w[i] alpha_i`.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Weight(pub [i32; MAX_RANK]);

pub type Word = Vec<u8>;

impl Weight {
    pub fn zero() -> Self {
        Weight([0; MAX_RANK])
    }

    pub fn simple(i: usize) -> Self {
        let mut w = [0; MAX_RANK];
        w[i] = 1;
        Weight(w)
    }

    pub fn from_slice(v: &[i32]) -> Self {
        let mut w = [0; MAX_RANK];
        w[..v.len()].copy_from_slice(v);
        Weight(w)
    }

    pub fn of_word(word: &[u8]) -> Self {
        let mut w = Weight::zero();
        for &i in word {
            w.0[i as usize] += 1;
        }
        w
    }

    pub fn height(&self) -> i32 {
        self.0.iter().sum()
    }

    pub fn is_nonneg(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn scale(&self, k: i32) -> Self {
        let mut w = self.0;
        for x in w.iter_mut() {
            *x *= k;
        }
        Weight(w)
    }

    pub fn coords(&self, rank: usize) -> Vec<i32> {
        self.0[..rank].to_vec()
    }
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, o: Weight) -> Weight {
        let mut w = self.0;
        for (x, y) in w.iter_mut().zip(o.0) {
            *x += y;
        }
        Weight(w)
    }
}

impl Sub for Weight {
    type Output = Weight;
    fn sub(self, o: Weight) -> Weight {
        let mut w = self.0;
        for (x, y) in w.iter_mut().zip(o.0) {
            *x -= y;
        }
        Weight(w)
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// A symmetrisable Cartan datum given by the pairing `(alpha_i, alpha_j)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CartanDatum {
    pub name: String,
    pub labels: Vec<String>,
    pub pairing: Vec<Vec<i64>>,
}

impl CartanDatum {
    pub fn new(name: &str, labels: &[&str], pairing: Vec<Vec<i64>>) -> Result<Self> {
        let n = labels.len();
        if n == 0 || n > MAX_RANK || pairing.len() != n || pairing.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidInput(format!("bad pairing shape for rank {n}")));
        }
        for i in 0..n {
            let aii = pairing[i][i];
            if aii <= 0 || aii % 2 != 0 {
                return Err(Error::InvalidInput(format!("(a_{i}, a_{i}) = {aii} is not in 2Z>0")));
            }
            for j in 0..n {
                if pairing[i][j] != pairing[j][i] {
                    return Err(Error::InvalidInput("pairing is not symmetric".into()));
                }
                if i != j && (pairing[i][j] > 0 || (2 * pairing[i][j]) % aii != 0) {
                    return Err(Error::InvalidInput(format!("bad off-diagonal entry at ({i}, {j})")));
                }
            }
        }
        if !positive_definite(&pairing) {
            return Err(Error::InvalidInput("pairing is not positive definite".into()));
        }
        Ok(CartanDatum {
            name: name.to_string(),
            labels: labels.iter().map(|s| s.to_string()).collect(),
            pairing,
        })
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn is_simply_laced(&self) -> bool {
        (0..self.rank()).all(|i| self.pairing[i][i] == 2)
    }

    /// `d_i = (alpha_i, alpha_i) / 2`, so that `q_i = q^{d_i}`.
    pub fn d(&self, i: usize) -> u32 {
        (self.pairing[i][i] / 2) as u32
    }

    /// Cartan integer `a_ij = 2 (alpha_i, alpha_j) / (alpha_i, alpha_i)`.
    pub fn a(&self, i: usize, j: usize) -> i64 {
        2 * self.pairing[i][j] / self.pairing[i][i]
    }

    pub fn pair(&self, x: &Weight, y: &Weight) -> i64 {
        let n = self.rank();
        let mut s = 0;
        for i in 0..n {
            if x.0[i] == 0 {
                continue;
            }
            for j in 0..n {
                s += x.0[i] as i64 * y.0[j] as i64 * self.pairing[i][j];
            }
        }
        s
    }

    /// `(alpha_i, w)`.
    pub fn pair_simple(&self, i: usize, w: &Weight) -> i64 {
        (0..self.rank()).map(|j| self.pairing[i][j] * w.0[j] as i64).sum()
    }

    /// Half the squared length of a root, i.e. `d` with `q_beta = q^d`.
    pub fn root_d(&self, beta: &Weight) -> u32 {
        (self.pair(beta, beta) / 2) as u32
    }

    /// Parses `1,2,1'` style words: each token is a label or a 1-based index.
    pub fn parse_word(&self, s: &str) -> Result<Word> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Vec::new());
        }
        s.split(',').map(|t| self.parse_letter(t.trim())).collect()
    }

    pub fn parse_letter(&self, t: &str) -> Result<u8> {
        if let Some(i) = self.labels.iter().position(|l| l == t) {
            return Ok(i as u8);
        }
        match t.parse::<usize>() {
            Ok(k) if k >= 1 && k <= self.rank() => Ok((k - 1) as u8),
            _ => Err(Error::InvalidInput(format!("unknown letter {t:?} for type {}", self.name))),
        }
    }

    pub fn word_labels(&self, w: &[u8]) -> Vec<String> {
        w.iter().map(|&i| self.labels[i as usize].clone()).collect()
    }

    /// All non-negative weights of height `1..=max_height`, by height then
    /// lexicographically.
    pub fn weights_up_to(&self, max_height: i32) -> Vec<Weight> {
        let n = self.rank();
        let mut out = Vec::new();
        let mut cur = vec![0i32; n];
        fn rec(k: usize, left: i32, cur: &mut Vec<i32>, out: &mut Vec<Weight>) {
            if k == cur.len() {
                out.push(Weight::from_slice(cur));
                return;
            }
            for v in 0..=left {
                cur[k] = v;
                rec(k + 1, left - v, cur, out);
            }
            cur[k] = 0;
        }
        rec(0, max_height, &mut cur, &mut out);
        out.retain(|w| w.height() > 0);
        out.sort_by_key(|w| (w.height(), *w));
        out
    }
}

fn positive_definite(m: &[Vec<i64>]) -> bool {
    // leading principal minors via exact rational elimination on i128
    let n = m.len();
    for k in 1..=n {
        let mut a: Vec<Vec<i128>> = (0..k).map(|i| (0..k).map(|j| m[i][j] as i128).collect()).collect();
        let mut prev: i128 = 1;
        let mut det_sign_ok = true;
        for c in 0..k {
            if a[c][c] == 0 {
                det_sign_ok = false;
                break;
            }
            for i in c + 1..k {
                for j in c + 1..k {
                    a[i][j] = (a[c][c] * a[i][j] - a[i][c] * a[c][j]) / prev;
                }
            }
            prev = a[c][c];
        }
        if !det_sign_ok || prev <= 0 {
            return false;
        }
    }
    true
}

/// The supported finite types.
pub const SUPPORTED_TYPES: [&str; 7] = ["A1", "A1xA1", "A2", "A3", "B2", "D4", "G2"];

/// Builds one of the supported Cartan data. Node 1 of `B2` and `G2` is
/// long; `A3` has nodes `1, 2, 1'` along the chain; node `2` of `D4` is
/// the branch node.
pub fn build_cartan(tag: &str) -> Result<CartanDatum> {
    match tag {
        "A1" => CartanDatum::new("A1", &["1"], vec![vec![2]]),
        "A1xA1" => CartanDatum::new("A1xA1", &["1", "2"], vec![vec![2, 0], vec![0, 2]]),
        "A2" => CartanDatum::new("A2", &["1", "2"], vec![vec![2, -1], vec![-1, 2]]),
        "A3" => CartanDatum::new(
            "A3",
            &["1", "2", "1'"],
            vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]],
        ),
        "B2" => CartanDatum::new("B2", &["1", "2"], vec![vec![4, -2], vec![-2, 2]]),
        "G2" => CartanDatum::new("G2", &["1", "2"], vec![vec![6, -3], vec![-3, 2]]),
        "D4" => CartanDatum::new(
            "D4",
            &["1", "2", "3", "4"],
            vec![
                vec![2, -1, 0, 0],
                vec![-1, 2, -1, -1],
                vec![0, -1, 2, 0],
                vec![0, -1, 0, 2],
            ],
        ),
        _ => Err(Error::UnknownType(tag.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cartan_integers() {
        let b2 = build_cartan("B2").unwrap();
        assert_eq!((b2.a(0, 1), b2.a(1, 0)), (-1, -2));
        let g2 = build_cartan("G2").unwrap();
        assert_eq!((g2.a(0, 1), g2.a(1, 0)), (-1, -3));
        assert_eq!(g2.d(0), 3);
        for t in SUPPORTED_TYPES {
            assert!(build_cartan(t).is_ok());
        }
        assert!(build_cartan("E8").is_err());
    }

    #[test]
    fn validation_rejects_bad_data() {
        assert!(CartanDatum::new("x", &["1", "2"], vec![vec![2, -2], vec![-2, 2]]).is_err());
        assert!(CartanDatum::new("x", &["1"], vec![vec![3]]).is_err());
        assert!(CartanDatum::new("x", &["1", "2"], vec![vec![2, 1], vec![1, 2]]).is_err());
    }

    #[test]
    fn word_parsing() {
        let a3 = build_cartan("A3").unwrap();
        assert_eq!(a3.parse_word("1,2,1'").unwrap(), vec![0, 1, 2]);
        assert_eq!(a3.parse_word("1, 3").unwrap(), vec![0, 2]);
        assert!(a3.parse_word("4").is_err());
        assert_eq!(a3.word_labels(&[2, 1]), vec!["1'", "2"]);
    }

    #[test]
    fn weights_enumeration() {
        let a2 = build_cartan("A2").unwrap();
        let ws = a2.weights_up_to(2);
        assert_eq!(ws.len(), 5);
        assert_eq!(ws[0], Weight::from_slice(&[0, 1]));
    }
}
