//! Exact sparse linear algebra over `Q`.
//!
//! [`Echelon`] keeps an incrementally built row echelon basis. Every stored
//! row may carry a second "tracked" vector recording which combination of
//! the inserted inputs produced it, which is how kernels and solutions are
//! read off.

use std::collections::{BTreeMap, HashMap};

use crate::rational::Q;

/// Sorted `(index, value)` pairs with no zero values.
pub type SparseVec = Vec<(usize, Q)>;

pub fn sparse_from_map(map: BTreeMap<usize, Q>) -> SparseVec {
    map.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

pub fn scale_sparse(v: &[(usize, Q)], c: &Q) -> SparseVec {
    if c.is_zero() {
        return Vec::new();
    }
    v.iter().map(|(i, x)| (*i, x * c)).collect()
}

/// `a + c * b`.
pub fn axpy_sparse(a: &[(usize, Q)], c: &Q, b: &[(usize, Q)]) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            let v = c * &b[j].1;
            if !v.is_zero() {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let v = &a[i].1 + &(c * &b[j].1);
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn axpy_map(acc: &mut BTreeMap<usize, Q>, c: &Q, v: &[(usize, Q)]) {
    for (j, x) in v {
        let delta = c * x;
        match acc.get_mut(j) {
            Some(slot) => {
                *slot += &delta;
                if slot.is_zero() {
                    acc.remove(j);
                }
            }
            None => {
                if !delta.is_zero() {
                    acc.insert(*j, delta);
                }
            }
        }
    }
}

#[derive(Clone, Debug)]
struct Row {
    vec: SparseVec,
    tracked: SparseVec,
}

/// An incrementally built echelon basis. Each row starts with a `1` in its
/// pivot column and has no entries to the left of it.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<Row>,
    pivots: HashMap<usize, usize>,
}

/// Result of [`Echelon::insert`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Insert {
    /// The vector was independent; its pivot column is returned.
    Pivot(usize),
    /// The vector was in the span; the returned tracked vector is the
    /// residual combination, which maps to zero.
    Dependent(SparseVec),
}

impl Echelon {
    pub fn new() -> Echelon {
        Echelon::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        let mut p: Vec<usize> = self.pivots.keys().copied().collect();
        p.sort_unstable();
        p
    }

    /// Eliminates every pivot column from `v`; returns the remainder and the
    /// tracked vector updated alongside it.
    pub fn reduce(&self, v: &[(usize, Q)], tracked: &[(usize, Q)]) -> (SparseVec, SparseVec) {
        let mut acc: BTreeMap<usize, Q> = v.iter().cloned().collect();
        let mut track: BTreeMap<usize, Q> = tracked.iter().cloned().collect();
        let mut cursor = 0;
        while let Some((k, val)) = acc.range(cursor..).next().map(|(k, v)| (*k, v.clone())) {
            if let Some(&ri) = self.pivots.get(&k) {
                let row = &self.rows[ri];
                let c = -val;
                axpy_map(&mut acc, &c, &row.vec);
                axpy_map(&mut track, &c, &row.tracked);
            }
            cursor = k + 1;
        }
        (sparse_from_map(acc), sparse_from_map(track))
    }

    pub fn contains(&self, v: &[(usize, Q)]) -> bool {
        self.reduce(v, &[]).0.is_empty()
    }

    pub fn insert(&mut self, v: &[(usize, Q)], tracked: &[(usize, Q)]) -> Insert {
        let (rem, track) = self.reduce(v, tracked);
        match rem.first() {
            None => Insert::Dependent(track),
            Some((p, lead)) => {
                let p = *p;
                let inv = lead.recip();
                self.pivots.insert(p, self.rows.len());
                self.rows.push(Row { vec: scale_sparse(&rem, &inv), tracked: scale_sparse(&track, &inv) });
                Insert::Pivot(p)
            }
        }
    }
}

/// A basis of the kernel of the linear map whose `j`-th column is
/// `columns[j]`. Kernel vectors are expressed over column indices.
pub fn kernel(columns: &[SparseVec]) -> Vec<SparseVec> {
    let mut ech = Echelon::new();
    let mut out = Vec::new();
    for (j, col) in columns.iter().enumerate() {
        if let Insert::Dependent(k) = ech.insert(col, &[(j, Q::one())]) {
            out.push(k);
        }
    }
    out
}

pub fn rank(vectors: &[SparseVec]) -> usize {
    let mut ech = Echelon::new();
    for v in vectors {
        ech.insert(v, &[]);
    }
    ech.rank()
}

/// A solution `x` of `sum_j x_j columns[j] = b`, if one exists.
pub fn solve(columns: &[SparseVec], b: &[(usize, Q)]) -> Option<SparseVec> {
    let mut ech = Echelon::new();
    for (j, col) in columns.iter().enumerate() {
        ech.insert(col, &[(j, Q::one())]);
    }
    solve_with(&ech, b)
}

/// Solves against an echelon basis built with unit tracked vectors.
pub fn solve_with(ech: &Echelon, b: &[(usize, Q)]) -> Option<SparseVec> {
    let (rem, track) = ech.reduce(b, &[]);
    rem.is_empty().then(|| scale_sparse(&track, &-Q::one()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(entries: &[(usize, i64)]) -> SparseVec {
        entries.iter().map(|(i, x)| (*i, Q::from_int(*x))).collect()
    }

    fn apply(columns: &[SparseVec], x: &[(usize, Q)]) -> SparseVec {
        let mut acc = Vec::new();
        for (j, c) in x {
            acc = axpy_sparse(&acc, c, &columns[*j]);
        }
        acc
    }

    #[test]
    fn kernel_of_rank_one_map() {
        let cols = vec![v(&[(0, 1), (1, 2)]), v(&[(0, 2), (1, 4)]), v(&[(0, -1), (1, -2)])];
        let k = kernel(&cols);
        assert_eq!(k.len(), 2);
        for x in &k {
            assert!(apply(&cols, x).is_empty());
        }
        assert_eq!(rank(&cols), 1);
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let cols = vec![v(&[(0, 1), (1, 1)]), v(&[(1, 1), (2, 1)])];
        let b = v(&[(0, 2), (1, 5), (2, 3)]);
        let x = solve(&cols, &b).unwrap();
        assert_eq!(apply(&cols, &x), b);
        assert!(solve(&cols, &v(&[(0, 1)])).is_none());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_cols() -> impl Strategy<Value = Vec<SparseVec>> {
            prop::collection::vec(prop::collection::btree_map(0usize..6, -3i64..4, 0..5), 1..7).prop_map(|cols| {
                cols.into_iter()
                    .map(|m| m.into_iter().filter(|(_, x)| *x != 0).map(|(i, x)| (i, Q::from_int(x))).collect())
                    .collect()
            })
        }

        proptest! {
            #[test]
            fn rank_nullity(cols in arb_cols()) {
                let k = kernel(&cols);
                prop_assert_eq!(k.len() + rank(&cols), cols.len());
                for x in &k {
                    prop_assert!(apply(&cols, x).is_empty());
                }
                prop_assert_eq!(rank(&k), k.len());
            }

            #[test]
            fn images_are_solvable(cols in arb_cols(), coeffs in prop::collection::vec(-2i64..3, 7)) {
                let x: SparseVec = coeffs.iter().take(cols.len()).enumerate()
                    .filter(|(_, c)| **c != 0).map(|(i, c)| (i, Q::from_int(*c))).collect();
                let b = apply(&cols, &x);
                let y = solve(&cols, &b).unwrap();
                prop_assert_eq!(apply(&cols, &y), b);
            }
        }
    }
}
