//! Braid words and their text syntax, e.g. `"s1 s2 s1'"` (prime = inverse).

use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<(usize, bool)>,
}

impl BraidWord {
    /// Letters are `(i, positive)` pairs read left to right.
    pub fn new(strands: usize, letters: Vec<(usize, bool)>) -> Result<BraidWord> {
        for &(i, _) in &letters {
            if i < 1 || i >= strands {
                return Err(Error::IndexOutOfRange { index: i, strands });
            }
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn positive(strands: usize, letters: &[usize]) -> Result<BraidWord> {
        BraidWord::new(strands, letters.iter().map(|&i| (i, true)).collect())
    }

    pub fn empty(strands: usize) -> BraidWord {
        BraidWord { strands, letters: Vec::new() }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[(usize, bool)] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &BraidWord) -> BraidWord {
        assert_eq!(self.strands, other.strands, "strand counts differ");
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        BraidWord { strands: self.strands, letters }
    }

    /// The reversed word with every letter inverted.
    pub fn inverse(&self) -> BraidWord {
        BraidWord { strands: self.strands, letters: self.letters.iter().rev().map(|&(i, s)| (i, !s)).collect() }
    }

    /// Every word of exactly `len` letters, in lexicographic order of
    /// `(index, sign)` with positive before negative.
    pub fn all_of_length(strands: usize, len: usize) -> Vec<BraidWord> {
        let alphabet: Vec<(usize, bool)> =
            (1..strands).flat_map(|i| [(i, true), (i, false)]).collect();
        let mut words = vec![Vec::new()];
        for _ in 0..len {
            words = words
                .into_iter()
                .flat_map(|w: Vec<(usize, bool)>| {
                    alphabet.iter().map(move |&l| {
                        let mut w = w.clone();
                        w.push(l);
                        w
                    })
                })
                .collect();
        }
        words.into_iter().map(|letters| BraidWord { strands, letters }).collect()
    }

    /// Parses whitespace-separated letters `s<i>` or `s<i>'`. Letters may
    /// also be written with `^-1` for the inverse.
    pub fn parse(strands: usize, text: &str) -> Result<BraidWord> {
        let mut letters = Vec::new();
        for (line_no, line) in text.lines().enumerate() {
            let mut col = 0;
            for token in line.split_inclusive(char::is_whitespace) {
                let start = col;
                col += token.chars().count();
                let tok = token.trim();
                if tok.is_empty() {
                    continue;
                }
                let err = |message: String| Error::Parse { line: line_no + 1, column: start + 1, message };
                let body = tok.strip_prefix('s').or_else(|| tok.strip_prefix('σ'));
                let Some(body) = body else {
                    return Err(err(format!("expected a letter like s1 or s1', found '{}'", tok)));
                };
                let (digits, positive) = if let Some(d) = body.strip_suffix('\'') {
                    (d, false)
                } else if let Some(d) = body.strip_suffix("^-1") {
                    (d, false)
                } else {
                    (body, true)
                };
                let i: usize = digits.parse().map_err(|_| err(format!("bad generator index in '{}'", tok)))?;
                if i < 1 || i >= strands {
                    return Err(err(format!("s{} out of range for {} strands", i, strands)));
                }
                letters.push((i, positive));
            }
        }
        Ok(BraidWord { strands, letters })
    }

    /// Parses with the strand count taken to be one more than the largest
    /// generator index (at least 1).
    pub fn parse_infer(text: &str, min_strands: usize) -> Result<BraidWord> {
        let probe = BraidWord::parse(usize::MAX, text)?;
        let strands = probe.letters.iter().map(|&(i, _)| i + 1).max().unwrap_or(1).max(min_strands);
        Ok(BraidWord { strands, letters: probe.letters })
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts = self.letters.iter().map(|&(i, s)| if s { format!("s{}", i) } else { format!("s{}'", i) });
        write!(f, "{}", parts.format(" "))
    }
}

impl fmt::Debug for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BraidWord({}: {})", self.strands, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let w = BraidWord::parse(3, "s1 s2 s1'").unwrap();
        assert_eq!(w.letters(), &[(1, true), (2, true), (1, false)]);
        assert_eq!(w.to_string(), "s1 s2 s1'");
        assert_eq!(w.inverse().to_string(), "s1 s2' s1'");
        assert!(BraidWord::parse(3, "").unwrap().is_empty());
    }

    #[test]
    fn parse_errors_locate_the_token() {
        match BraidWord::parse(3, "s1  s3") {
            Err(Error::Parse { column, .. }) => assert_eq!(column, 5),
            other => panic!("unexpected {:?}", other),
        }
        assert!(BraidWord::parse(3, "t1").is_err());
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(BraidWord::all_of_length(3, 2).len(), 16);
        assert_eq!(BraidWord::all_of_length(2, 0).len(), 1);
        assert_eq!(BraidWord::parse_infer("s3 s1", 2).unwrap().strands(), 4);
    }
}
