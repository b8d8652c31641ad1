//! Permutations of `{1, ..., n}` in one-line notation.

use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `w[k-1] = w(k)`. Products compose as functions: `(u * v)(k) = u(v(k))`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm((1..=n).collect())
    }

    pub fn new(images: Vec<usize>) -> Result<Perm> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v < 1 || v > n || seen[v - 1] {
                return Err(Error::InvalidPermutation(images));
            }
            seen[v - 1] = true;
        }
        Ok(Perm(images))
    }

    /// The simple transposition `s_i = (i, i+1)`.
    pub fn simple(n: usize, i: usize) -> Perm {
        assert!(i >= 1 && i < n, "s{} out of range for {} strands", i, n);
        let mut p = Perm::identity(n);
        p.0.swap(i - 1, i);
        p
    }

    /// `s_{w_1} s_{w_2} ... s_{w_k}`.
    pub fn from_word(n: usize, word: &[usize]) -> Perm {
        word.iter().fold(Perm::identity(n), |acc, &i| acc.compose(&Perm::simple(n, i)))
    }

    pub fn size(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, k: usize) -> usize {
        self.0[k - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.size(), other.size());
        Perm(other.0.iter().map(|&k| self.0[k - 1]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.size()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Perm(inv)
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let w = &self.0;
        (0..w.len()).map(|i| (i + 1..w.len()).filter(|&j| w[i] > w[j]).count()).sum()
    }

    /// True when `l(s_i w) < l(w)`, i.e. `i+1` appears before `i` in one-line
    /// notation.
    pub fn has_left_descent(&self, i: usize) -> bool {
        let pos = |v: usize| self.0.iter().position(|&x| x == v).unwrap();
        pos(i + 1) < pos(i)
    }

    /// `s_i w`.
    pub fn left_mul_simple(&self, i: usize) -> Perm {
        Perm(self.0.iter().map(|&v| if v == i { i + 1 } else if v == i + 1 { i } else { v }).collect())
    }

    /// The lexicographically smallest reduced word.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut w = self.clone();
        let mut word = Vec::new();
        while let Some(i) = (1..w.size()).find(|&i| w.has_left_descent(i)) {
            word.push(i);
            w = w.left_mul_simple(i);
        }
        word
    }

    /// `u ⊗ v` acting on the first `|u|` and last `|v|` points.
    pub fn juxtapose(&self, other: &Perm) -> Perm {
        let m = self.size();
        Perm(self.0.iter().copied().chain(other.0.iter().map(|v| v + m)).collect())
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.0.iter().join(" "))
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_words_are_lex_minimal() {
        let w0 = Perm::from_word(3, &[2, 1, 2]);
        assert_eq!(w0.reduced_word(), vec![1, 2, 1]);
        assert_eq!(w0.length(), 3);
        assert_eq!(Perm::from_word(4, &[3, 1]).reduced_word(), vec![1, 3]);
        assert!(Perm::from_word(3, &[1, 1]).is_identity());
    }

    #[test]
    fn word_round_trip() {
        for word in [vec![], vec![2], vec![1, 2], vec![2, 3, 1, 2], vec![3, 2, 1]] {
            let w = Perm::from_word(4, &word);
            assert_eq!(Perm::from_word(4, &w.reduced_word()), w);
            assert_eq!(w.compose(&w.inverse()), Perm::identity(4));
        }
    }

    #[test]
    fn rejects_non_permutations() {
        assert!(Perm::new(vec![1, 1]).is_err());
        assert!(Perm::new(vec![0, 1]).is_err());
        assert!(Perm::new(vec![2, 1]).is_ok());
    }
}
