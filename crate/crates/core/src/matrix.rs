//! Sparse matrices with polynomial entries, stored row by row.

use std::fmt;

use itertools::Itertools;

use crate::poly::{Monomial, Poly};
use crate::rational::Q;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyMatrix {
    nvars: usize,
    rows: usize,
    cols: usize,
    data: Vec<Vec<(usize, Poly)>>,
}

impl PolyMatrix {
    pub fn zeros(nvars: usize, rows: usize, cols: usize) -> PolyMatrix {
        PolyMatrix { nvars, rows, cols, data: vec![Vec::new(); rows] }
    }

    pub fn identity(nvars: usize, n: usize) -> PolyMatrix {
        PolyMatrix::scalar(nvars, n, &Q::one())
    }

    pub fn scalar(nvars: usize, n: usize, c: &Q) -> PolyMatrix {
        let mut m = PolyMatrix::zeros(nvars, n, n);
        if !c.is_zero() {
            for i in 0..n {
                m.data[i].push((i, Poly::constant(nvars, c.clone())));
            }
        }
        m
    }

    /// `p` times the identity.
    pub fn diagonal(n: usize, p: &Poly) -> PolyMatrix {
        let mut m = PolyMatrix::zeros(p.nvars(), n, n);
        if !p.is_zero() {
            for i in 0..n {
                m.data[i].push((i, p.clone()));
            }
        }
        m
    }

    pub fn from_rows(nvars: usize, rows: Vec<Vec<Poly>>) -> PolyMatrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = PolyMatrix::zeros(nvars, r, c);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), c, "ragged matrix");
            for (j, p) in row.into_iter().enumerate() {
                m.set(i, j, p);
            }
        }
        m
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[(usize, Poly)] {
        &self.data[r]
    }

    pub fn get(&self, r: usize, c: usize) -> Poly {
        self.data[r]
            .binary_search_by(|(j, _)| j.cmp(&c))
            .map(|i| self.data[r][i].1.clone())
            .unwrap_or_else(|_| Poly::zero(self.nvars))
    }

    pub fn set(&mut self, r: usize, c: usize, p: Poly) {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        let row = &mut self.data[r];
        match row.binary_search_by(|(j, _)| j.cmp(&c)) {
            Ok(i) if p.is_zero() => {
                row.remove(i);
            }
            Ok(i) => row[i].1 = p,
            Err(_) if p.is_zero() => {}
            Err(i) => row.insert(i, (c, p)),
        }
    }

    /// `self[r][c] += p`.
    pub fn add_at(&mut self, r: usize, c: usize, p: &Poly) {
        if p.is_zero() {
            return;
        }
        let row = &mut self.data[r];
        match row.binary_search_by(|(j, _)| j.cmp(&c)) {
            Ok(i) => {
                let s = &row[i].1 + p;
                if s.is_zero() {
                    row.remove(i);
                } else {
                    row[i].1 = s;
                }
            }
            Err(i) => row.insert(i, (c, p.clone())),
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Poly)> {
        self.data.iter().enumerate().flat_map(|(r, row)| row.iter().map(move |(c, p)| (r, *c, p)))
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.is_empty())
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && self.data.iter().enumerate().all(|(i, row)| {
                row.len() == 1 && row[0].0 == i && row[0].1.as_constant().is_some_and(|c| c.is_one())
            })
    }

    /// Returns `c` if the matrix is `c` times the identity with `c != 0`.
    pub fn as_scalar_identity(&self) -> Option<Q> {
        if self.rows != self.cols || self.rows == 0 {
            return None;
        }
        let first = self.data[0].first()?.1.as_constant()?;
        let ok = self.data.iter().enumerate().all(|(i, row)| {
            row.len() == 1 && row[0].0 == i && row[0].1.as_constant().as_ref() == Some(&first)
        });
        (ok && !first.is_zero()).then_some(first)
    }

    pub fn mul(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.cols, other.rows, "matrix shapes do not compose");
        let mut out = PolyMatrix::zeros(self.nvars, self.rows, other.cols);
        let mut acc: Vec<Vec<(Monomial, Q)>> = vec![Vec::new(); other.cols];
        let mut touched = Vec::new();
        for (r, row) in self.data.iter().enumerate() {
            for (k, a) in row {
                for (c, b) in &other.data[*k] {
                    let slot = &mut acc[*c];
                    if slot.is_empty() {
                        touched.push(*c);
                    }
                    for (ma, ca) in a.terms() {
                        for (mb, cb) in b.terms() {
                            slot.push((ma.mul(*mb), ca * cb));
                        }
                    }
                }
            }
            touched.sort_unstable();
            for c in touched.drain(..) {
                let p = Poly::collect_terms(self.nvars, &mut acc[c]);
                if !p.is_zero() {
                    out.data[r].push((c, p));
                }
            }
        }
        out
    }

    fn combine(&self, other: &PolyMatrix, negate: bool) -> PolyMatrix {
        assert!(self.rows == other.rows && self.cols == other.cols, "matrix shapes differ");
        let mut out = self.clone();
        for (r, row) in other.data.iter().enumerate() {
            for (c, p) in row {
                if negate {
                    out.add_at(r, *c, &-p);
                } else {
                    out.add_at(r, *c, p);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &PolyMatrix) -> PolyMatrix {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &PolyMatrix) -> PolyMatrix {
        self.combine(other, true)
    }

    pub fn scale(&self, c: &Q) -> PolyMatrix {
        if c.is_zero() {
            return PolyMatrix::zeros(self.nvars, self.rows, self.cols);
        }
        let data = self.data.iter().map(|row| row.iter().map(|(j, p)| (*j, p.scale(c))).collect()).collect();
        PolyMatrix { nvars: self.nvars, rows: self.rows, cols: self.cols, data }
    }

    pub fn scale_poly(&self, p: &Poly) -> PolyMatrix {
        let mut out = PolyMatrix::zeros(self.nvars, self.rows, self.cols);
        for (r, row) in self.data.iter().enumerate() {
            for (c, e) in row {
                let v = e * p;
                if !v.is_zero() {
                    out.data[r].push((*c, v));
                }
            }
        }
        out
    }

    pub fn neg(&self) -> PolyMatrix {
        self.scale(&-Q::one())
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut out = PolyMatrix::zeros(self.nvars, self.cols, self.rows);
        for (r, row) in self.data.iter().enumerate() {
            for (c, p) in row {
                out.data[*c].push((r, p.clone()));
            }
        }
        out
    }

    /// Applies `f` to every nonzero entry, producing a matrix over `nvars`
    /// variables.
    pub fn map_entries(&self, nvars: usize, f: impl Fn(&Poly) -> Poly) -> PolyMatrix {
        let mut out = PolyMatrix::zeros(nvars, self.rows, self.cols);
        for (r, row) in self.data.iter().enumerate() {
            for (c, p) in row {
                let v = f(p);
                if !v.is_zero() {
                    out.data[r].push((*c, v));
                }
            }
        }
        out
    }

    /// Kronecker product `self ⊗ other` with entry-wise polynomial product,
    /// row/column index `a * other.dim + b`.
    pub fn kron(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.nvars, other.nvars);
        let mut out = PolyMatrix::zeros(self.nvars, self.rows * other.rows, self.cols * other.cols);
        for (r, row) in self.data.iter().enumerate() {
            for s in 0..other.rows {
                let dst = &mut out.data[r * other.rows + s];
                for (b, p) in row {
                    for (c, q) in &other.data[s] {
                        dst.push((b * other.cols + c, p * q));
                    }
                }
                dst.retain(|(_, v)| !v.is_zero());
            }
        }
        out
    }

    /// Copies `block` into position `(r0, c0)`, adding to existing entries.
    pub fn add_block(&mut self, r0: usize, c0: usize, block: &PolyMatrix) {
        for (r, row) in block.data.iter().enumerate() {
            for (c, p) in row {
                self.add_at(r0 + r, c0 + c, p);
            }
        }
    }

    pub fn submatrix(&self, r0: usize, rows: usize, c0: usize, cols: usize) -> PolyMatrix {
        let mut out = PolyMatrix::zeros(self.nvars, rows, cols);
        for r in 0..rows {
            for (c, p) in &self.data[r0 + r] {
                if *c >= c0 && *c < c0 + cols {
                    out.data[r].push((c - c0, p.clone()));
                }
            }
        }
        out
    }

    /// True when every entry `(r, c)` is zero or homogeneous of degree
    /// `d + src[c] - tgt[r]`.
    pub fn is_homogeneous(&self, d: i32, src: &[i32], tgt: &[i32]) -> bool {
        self.entries().all(|(r, c, p)| p.is_homogeneous_of(d + src[c] - tgt[r]))
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|r| (0..self.cols).map(|c| self.get(r, c).to_string()).collect()).collect()
    }

    pub fn from_strings(nvars: usize, rows: &[Vec<String>]) -> crate::Result<PolyMatrix> {
        let parsed = rows
            .iter()
            .map(|row| row.iter().map(|s| Poly::parse(nvars, s)).collect::<crate::Result<Vec<_>>>())
            .collect::<crate::Result<Vec<_>>>()?;
        Ok(PolyMatrix::from_rows(nvars, parsed))
    }

    /// The monomial of the unique nonzero entry of a single-term matrix.
    pub fn single_term(&self) -> Option<(usize, usize, Monomial, Q)> {
        let mut it = self.entries();
        let (r, c, p) = it.next()?;
        if it.next().is_some() || p.len() != 1 {
            return None;
        }
        let (m, q) = p.terms()[0].clone();
        Some((r, c, m, q))
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{}]", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  [{}]", (0..self.cols).map(|c| self.get(r, c)).join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[&str]]) -> PolyMatrix {
        let rows = rows.iter().map(|r| r.iter().map(|s| Poly::parse(2, s).unwrap()).collect()).collect();
        PolyMatrix::from_rows(2, rows)
    }

    #[test]
    fn product_matches_hand_computation() {
        let a = m(&[&["x1", "1"], &["0", "x2"]]);
        let b = m(&[&["1", "0"], &["x1", "-1"]]);
        assert_eq!(a.mul(&b), m(&[&["2*x1", "-1"], &["x1*x2", "-x2"]]));
        assert!(a.sub(&a).is_zero());
        assert!(PolyMatrix::identity(2, 3).is_identity());
    }

    #[test]
    fn kron_layout() {
        let a = m(&[&["x1", "0"], &["0", "1"]]);
        let b = m(&[&["1", "x2"]]);
        let k = a.kron(&b);
        assert_eq!(k.rows(), 2);
        assert_eq!(k.cols(), 4);
        assert_eq!(k.get(0, 1), Poly::parse(2, "x1*x2").unwrap());
        assert_eq!(k.get(1, 2), Poly::one(2));
    }

    #[test]
    fn scalar_identity_detection() {
        let s = PolyMatrix::scalar(2, 3, &Q::new(-1, 2));
        assert_eq!(s.as_scalar_identity(), Some(Q::new(-1, 2)));
        assert_eq!(PolyMatrix::zeros(2, 2, 2).as_scalar_identity(), None);
    }
}
