//! Homology of a complex restricted to one internal degree at a time.

use std::collections::{BTreeMap, HashMap};
use std::ops::RangeInclusive;

use serde::Serialize;

use super::Complex;
use crate::linalg::{rank, SparseVec};
use crate::morphism::monomials_of_degree;
use crate::poly::Monomial;
use crate::rational::Q;

/// `rows[t]` lists `(homological degree, dimension)` for internal degree `t`.
#[derive(Clone, Debug, Serialize)]
pub struct HomologyTable {
    pub rows: BTreeMap<i32, Vec<(i32, usize)>>,
}

impl HomologyTable {
    pub fn all_zero(&self) -> bool {
        self.rows.values().flatten().all(|(_, d)| *d == 0)
    }

    pub fn total(&self) -> usize {
        self.rows.values().flatten().map(|(_, d)| d).sum()
    }
}

/// Basis `(summand, basis vector, monomial)` of the internal-degree-`t`
/// part of a term, as a right module over the polynomial ring.
fn piece(c: &Complex, k: i32, t: i32) -> HashMap<(usize, usize, Monomial), usize> {
    let mut index = HashMap::new();
    for (si, s) in c.term(k).iter().enumerate() {
        for (b, deg) in s.obj.degrees().into_iter().enumerate() {
            for m in monomials_of_degree(c.strands(), t - deg) {
                let next = index.len();
                index.insert((si, b, m), next);
            }
        }
    }
    index
}

pub fn degreewise_homology_dims(c: &Complex, window: RangeInclusive<i32>) -> HomologyTable {
    let mut rows = BTreeMap::new();
    for t in window {
        let pieces: BTreeMap<i32, HashMap<(usize, usize, Monomial), usize>> =
            c.degrees().map(|k| (k, piece(c, k, t))).collect();
        let mut ranks: BTreeMap<i32, usize> = BTreeMap::new();
        for k in c.lo()..c.hi() {
            let d = c.diff(k).expect("differential in range");
            let (src, tgt) = (&pieces[&k], &pieces[&(k + 1)]);
            let mut by_vec: HashMap<(usize, usize), Vec<(Monomial, usize)>> = HashMap::new();
            for (&(si, b, mono), &idx) in src {
                by_vec.entry((si, b)).or_default().push((mono, idx));
            }
            let mut cols: Vec<BTreeMap<usize, Q>> = vec![BTreeMap::new(); src.len()];
            for (r, col, m) in d.blocks() {
                for (i, j, p) in m.entries() {
                    for (mono, idx) in by_vec.get(&(col, j)).map(|v| v.as_slice()).unwrap_or(&[]) {
                        let (mono, idx) = (*mono, *idx);
                        for (pm, q) in p.terms() {
                            let key = (r, i, pm.mul(mono));
                            let ti = *tgt.get(&key).expect("differential is homogeneous of degree 0");
                            *cols[idx].entry(ti).or_insert_with(Q::zero) += q;
                        }
                    }
                }
            }
            let cols: Vec<SparseVec> =
                cols.into_iter().map(|m| m.into_iter().filter(|(_, v)| !v.is_zero()).collect()).collect();
            ranks.insert(k, rank(&cols));
        }
        let dims = c
            .degrees()
            .map(|k| {
                let dim = pieces[&k].len();
                let out = ranks.get(&k).copied().unwrap_or(0);
                let inc = ranks.get(&(k - 1)).copied().unwrap_or(0);
                (k, dim - out - inc)
            })
            .collect();
        rows.insert(t, dims);
    }
    HomologyTable { rows }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bimodule::Obj;
    use crate::complex::{cone, GradedMap};
    use std::sync::Arc;

    #[test]
    fn unit_homology_counts_monomials() {
        let table = degreewise_homology_dims(&Complex::unit(2), 0..=4);
        assert_eq!(table.rows[&0], vec![(0, 1)]);
        assert_eq!(table.rows[&1], vec![(0, 0)]);
        assert_eq!(table.rows[&2], vec![(0, 2)]);
        assert_eq!(table.rows[&4], vec![(0, 3)]);
    }

    #[test]
    fn cone_of_identity_is_acyclic() {
        let c = Arc::new(Complex::single(Obj::word(2, &[1], 0), 0));
        let k = cone(&GradedMap::identity(c)).unwrap();
        assert!(degreewise_homology_dims(&k, -4..=4).all_zero());
    }
}
