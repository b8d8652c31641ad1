//! Homogeneous bimodule maps, exact hom-space solving and the generating
//! morphisms of the diagrammatic Hecke category.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use itertools::Itertools;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::bimodule::{tensor_k, tensor_r, Bimodule, BimoduleKind, Obj};
use crate::error::{Error, Result};
use crate::linalg::{kernel, SparseVec};
use crate::matrix::PolyMatrix;
use crate::perm::Perm;
use crate::poly::{Monomial, Poly};
use crate::rational::Q;

/// A right-module map `source -> target` of internal degree `degree`, as a
/// `target.rank() x source.rank()` matrix.
#[derive(Clone, Debug)]
pub struct BimoduleMap {
    pub source: Arc<Bimodule>,
    pub target: Arc<Bimodule>,
    pub degree: i32,
    pub matrix: PolyMatrix,
}

impl PartialEq for BimoduleMap {
    fn eq(&self, other: &BimoduleMap) -> bool {
        self.degree == other.degree
            && self.matrix == other.matrix
            && same_module(&self.source, &other.source)
            && same_module(&self.target, &other.target)
    }
}

fn same_module(a: &Arc<Bimodule>, b: &Arc<Bimodule>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl BimoduleMap {
    pub fn new(source: Arc<Bimodule>, target: Arc<Bimodule>, degree: i32, matrix: PolyMatrix) -> Result<BimoduleMap> {
        if matrix.rows() != target.rank() || matrix.cols() != source.rank() {
            return Err(Error::Shape(format!(
                "matrix is {}x{} but the map is {} -> {}",
                matrix.rows(),
                matrix.cols(),
                source.rank(),
                target.rank()
            )));
        }
        if source.strands() != target.strands() {
            return Err(Error::StrandMismatch { left: source.strands(), right: target.strands() });
        }
        Ok(BimoduleMap { source, target, degree, matrix })
    }

    pub fn identity(m: Arc<Bimodule>) -> BimoduleMap {
        let matrix = PolyMatrix::identity(m.strands(), m.rank());
        BimoduleMap { source: m.clone(), target: m, degree: 0, matrix }
    }

    pub fn zero(source: Arc<Bimodule>, target: Arc<Bimodule>, degree: i32) -> BimoduleMap {
        let matrix = PolyMatrix::zeros(source.strands(), target.rank(), source.rank());
        BimoduleMap { source, target, degree, matrix }
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// Checks homogeneity and `F L^source_j = L^target_j F` for every `j`.
    pub fn is_valid(&self) -> Result<bool> {
        if self.matrix.rows() != self.target.rank() || self.matrix.cols() != self.source.rank() {
            return Err(Error::Shape("matrix does not match source and target ranks".into()));
        }
        Ok(is_bimodule_map(&self.source, &self.target, self.degree, &self.matrix))
    }

    /// `g ∘ f` with `self = g`.
    pub fn compose(&self, f: &BimoduleMap) -> Result<BimoduleMap> {
        if !same_module(&f.target, &self.source) {
            return Err(Error::Shape("maps do not compose".into()));
        }
        Ok(BimoduleMap {
            source: f.source.clone(),
            target: self.target.clone(),
            degree: self.degree + f.degree,
            matrix: self.matrix.mul(&f.matrix),
        })
    }

    pub fn add(&self, other: &BimoduleMap) -> Result<BimoduleMap> {
        if self.degree != other.degree
            || !same_module(&self.source, &other.source)
            || !same_module(&self.target, &other.target)
        {
            return Err(Error::Shape("maps have different sources, targets or degrees".into()));
        }
        Ok(BimoduleMap { matrix: self.matrix.add(&other.matrix), ..self.clone() })
    }

    pub fn scale(&self, c: &Q) -> BimoduleMap {
        BimoduleMap { matrix: self.matrix.scale(c), ..self.clone() }
    }

    /// The same matrix viewed as a map between shifted modules.
    pub fn reshift(&self, source_shift: i32, target_shift: i32) -> BimoduleMap {
        BimoduleMap {
            source: Arc::new(self.source.shift(source_shift)),
            target: Arc::new(self.target.shift(target_shift)),
            degree: self.degree + target_shift - source_shift,
            matrix: self.matrix.clone(),
        }
    }
}

pub fn is_bimodule_map(source: &Bimodule, target: &Bimodule, degree: i32, f: &PolyMatrix) -> bool {
    if f.rows() != target.rank() || f.cols() != source.rank() {
        return false;
    }
    if !f.is_homogeneous(degree, source.degrees(), target.degrees()) {
        return false;
    }
    (1..=source.strands()).all(|j| f.mul(source.left_action(j)) == target.left_action(j).mul(f))
}

/// `is_bimodule_map` for degree-0 maps between tagged objects, memoized on
/// `(source, target, matrix)`.
pub fn is_bimodule_map_obj(source: &Obj, target: &Obj, f: &PolyMatrix) -> bool {
    type Memo = HashMap<(Obj, Obj, PolyMatrix), bool>;
    static MEMO: OnceLock<Mutex<Memo>> = OnceLock::new();
    let memo = MEMO.get_or_init(Default::default);
    let key = (source.clone(), target.clone(), f.clone());
    if let Some(&ok) = memo.lock().unwrap().get(&key) {
        return ok;
    }
    let ok = is_bimodule_map(&source.realize(), &target.realize(), 0, f);
    let mut memo = memo.lock().unwrap();
    if memo.len() > 100_000 {
        memo.clear();
    }
    memo.insert(key, ok);
    ok
}

/// A basis of the degree-`d` bimodule maps `m -> n`, found by solving the
/// intertwining equations in the coefficients of every matrix entry.
pub fn hom_basis(m: &Arc<Bimodule>, n: &Arc<Bimodule>, d: i32) -> Result<Vec<BimoduleMap>> {
    if m.strands() != n.strands() {
        return Err(Error::StrandMismatch { left: m.strands(), right: n.strands() });
    }
    Ok(hom_matrices(m, n, d)
        .into_iter()
        .map(|matrix| BimoduleMap { source: m.clone(), target: n.clone(), degree: d, matrix })
        .collect())
}

/// Monomials of graded degree `deg`, or none if `deg` is odd or negative.
pub(crate) fn monomials_of_degree(nvars: usize, deg: i32) -> Vec<Monomial> {
    if deg < 0 || deg % 2 != 0 {
        return Vec::new();
    }
    Monomial::all_of_degree(nvars, (deg / 2) as u32)
}

pub(crate) fn hom_matrices(m: &Bimodule, n: &Bimodule, d: i32) -> Vec<PolyMatrix> {
    let nv = m.strands();
    let (rm, rn) = (m.rank(), n.rank());
    let mut unknowns: Vec<(usize, usize, Monomial)> = Vec::new();
    for r in 0..rn {
        for c in 0..rm {
            let deg = d + m.degrees()[c] - n.degrees()[r];
            for mono in monomials_of_degree(nv, deg) {
                unknowns.push((r, c, mono));
            }
        }
    }
    if unknowns.is_empty() {
        return Vec::new();
    }
    let n_cols: Vec<PolyMatrix> = n.left_actions().iter().map(|l| l.transpose()).collect();
    let mut index: HashMap<(usize, usize, usize, Monomial), usize> = HashMap::new();
    let mut coord = |key: (usize, usize, usize, Monomial)| -> usize {
        let next = index.len();
        *index.entry(key).or_insert(next)
    };
    let columns: Vec<SparseVec> = unknowns
        .iter()
        .map(|&(r, c, mono)| {
            let mut acc: BTreeMap<usize, Q> = BTreeMap::new();
            let mut push = |key, q: &Q, neg: bool| {
                let e = acc.entry(coord(key)).or_insert_with(Q::zero);
                if neg {
                    *e -= q;
                } else {
                    *e += q;
                }
            };
            for (j, lm) in m.left_actions().iter().enumerate().take(nv) {
                // (F L^M_j)[r][c'] = mono * L^M_j[c][c']
                for (c2, p) in lm.row(c) {
                    for (t, q) in p.terms() {
                        push((j, r, *c2, t.mul(mono)), q, false);
                    }
                }
                // (L^N_j F)[r'][c] = L^N_j[r'][r] * mono
                for (r2, p) in n_cols[j].row(r) {
                    for (t, q) in p.terms() {
                        push((j, *r2, c, t.mul(mono)), q, true);
                    }
                }
            }
            acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
        })
        .collect();
    kernel(&columns)
        .into_iter()
        .map(|k| {
            let mut f = PolyMatrix::zeros(nv, rn, rm);
            for (u, q) in k {
                let (r, c, mono) = unknowns[u];
                f.add_at(r, c, &Poly::monomial(nv, mono, q));
            }
            f
        })
        .collect()
}

/// Degree-0 hom basis between tagged objects, memoized on the unshifted
/// objects and the relative shift.
pub fn hom_basis_obj(source: &Obj, target: &Obj) -> Arc<Vec<PolyMatrix>> {
    type Key = (Obj, Obj, i32);
    static CACHE: OnceLock<Mutex<HashMap<Key, Arc<Vec<PolyMatrix>>>>> = OnceLock::new();
    let rel = source.shift() - target.shift();
    let key = (source.base(), target.base(), rel);
    let cache = CACHE.get_or_init(Default::default);
    if let Some(v) = cache.lock().unwrap().get(&key) {
        return v.clone();
    }
    let basis = Arc::new(hom_matrices(&key.0.realize_base(), &key.1.realize_base(), rel));
    cache.lock().unwrap().entry(key).or_insert(basis).clone()
}

/// The matrix of `f ⊗_R g` given matrices `F: M -> M'` and `G: N -> N'`:
/// entry `[(r,s)][(b,c)] = (P^{N'}(F[r][b]) G)[s][c]`.
pub fn tensor_r_matrix(f: &PolyMatrix, g: &PolyMatrix, n_target: &Bimodule) -> PolyMatrix {
    let (rn_t, rn_s) = (g.rows(), g.cols());
    let mut out = PolyMatrix::zeros(f.nvars(), f.rows() * rn_t, f.cols() * rn_s);
    let g_is_id = g.is_identity();
    for (r, b, p) in f.entries() {
        let block = if g_is_id { n_target.act(p) } else { n_target.act(p).mul(g) };
        out.add_block(r * rn_t, b * rn_s, &block);
    }
    out
}

/// `id_M ⊗ G` for a module of rank `rank_m`: block diagonal.
pub fn id_tensor_matrix(rank_m: usize, g: &PolyMatrix) -> PolyMatrix {
    PolyMatrix::identity(g.nvars(), rank_m).kron(g)
}

pub fn tensor_r_maps(f: &BimoduleMap, g: &BimoduleMap) -> Result<BimoduleMap> {
    if f.source.strands() != g.source.strands() {
        return Err(Error::StrandMismatch { left: f.source.strands(), right: g.source.strands() });
    }
    Ok(BimoduleMap {
        source: Arc::new(tensor_r(&f.source, &g.source)?),
        target: Arc::new(tensor_r(&f.target, &g.target)?),
        degree: f.degree + g.degree,
        matrix: tensor_r_matrix(&f.matrix, &g.matrix, &g.target),
    })
}

/// Kronecker product with the variables of the second factor moved past
/// those of the first.
pub fn tensor_k_matrix(f: &PolyMatrix, g: &PolyMatrix, m: usize, n: usize) -> PolyMatrix {
    let total = m + n;
    f.map_entries(total, |p| p.reindex(0, total)).kron(&g.map_entries(total, |p| p.reindex(m, total)))
}

pub fn tensor_k_maps(f: &BimoduleMap, g: &BimoduleMap) -> BimoduleMap {
    let (m, n) = (f.source.strands(), g.source.strands());
    BimoduleMap {
        source: Arc::new(tensor_k(&f.source, &g.source)),
        target: Arc::new(tensor_k(&f.target, &g.target)),
        degree: f.degree + g.degree,
        matrix: tensor_k_matrix(&f.matrix, &g.matrix, m, n),
    }
}

/// The generating morphisms for one colour `i`.
#[derive(Clone, Debug)]
pub struct Generators {
    pub i: usize,
    /// `B_i -> R<-1>`, `1⊗1 ↦ 1`.
    pub dot: BimoduleMap,
    /// `R<1> -> B_i`, `1 ↦ x_i⊗1 - 1⊗x_{i+1}`.
    pub unit_dot: BimoduleMap,
    /// `B_iB_i -> B_i<1>`, `f⊗g⊗h ↦ f ∂_i(g)⊗h`.
    pub merge: BimoduleMap,
    /// `B_i<-1> -> B_iB_i`, `1⊗1 ↦ 1⊗1⊗1`.
    pub split: BimoduleMap,
}

fn unique_map(source: &Obj, target: &Obj, what: &str) -> Result<PolyMatrix> {
    let basis = hom_basis_obj(source, target);
    if basis.len() != 1 {
        return Err(Error::HomDimension { what: what.to_string(), expected: 1, found: basis.len() });
    }
    Ok(basis[0].clone())
}

/// Rescales `f` so that its entry at `(r, c)` equals `value`.
fn normalize_entry(f: &PolyMatrix, r: usize, c: usize, value: &Poly, what: &str) -> Result<PolyMatrix> {
    let entry = f.get(r, c);
    let (m, q) = value.terms().first().cloned().ok_or_else(|| Error::Verification(format!("{}: zero target", what)))?;
    let have = entry.coefficient(m);
    if have.is_zero() {
        return Err(Error::Verification(format!("{}: cannot normalize", what)));
    }
    let scaled = f.scale(&(&q / &have));
    if scaled.get(r, c) != *value {
        return Err(Error::Verification(format!("{}: normalization mismatch", what)));
    }
    Ok(scaled)
}

fn normalize_column(f: &PolyMatrix, c: usize, column: &[Poly], what: &str) -> Result<PolyMatrix> {
    let r = column.iter().position(|p| !p.is_zero()).ok_or_else(|| Error::Verification(what.to_string()))?;
    let g = normalize_entry(f, r, c, &column[r], what)?;
    if column.iter().enumerate().any(|(row, p)| g.get(row, c) != *p) {
        return Err(Error::Verification(format!("{}: column is not proportional to the expected image", what)));
    }
    Ok(g)
}

fn as_map(source: &Obj, target: &Obj, matrix: PolyMatrix) -> BimoduleMap {
    BimoduleMap { source: source.realize(), target: target.realize(), degree: 0, matrix }
}

pub fn generators(n: usize, i: usize) -> Result<Generators> {
    if i < 1 || i >= n {
        return Err(Error::IndexOutOfRange { index: i, strands: n });
    }
    let b = Obj::word(n, &[i], 0);
    let bb = Obj::word(n, &[i, i], 0);
    let one = Poly::one(n);

    let dot = unique_map(&b, &Obj::unit(n, -1), "dot")?;
    let dot = normalize_entry(&dot, 0, 0, &one, "dot")?;

    // x_i⊗1 is x_i acting on the first basis vector; 1⊗x_{i+1} is e_0 x_{i+1}
    let bmod = b.realize_base();
    let col = |p: &Poly, j: usize| -> Vec<Poly> {
        let l = bmod.left_action(j);
        vec![&l.get(0, 0) - p, l.get(1, 0)]
    };
    let unit_dot = unique_map(&Obj::unit(n, 1), &b, "unit dot")?;
    let unit_dot = normalize_column(&unit_dot, 0, &col(&Poly::var(n, i + 1), i), "unit dot")?;

    let split = unique_map(&b.shifted(-1), &bb, "split")?;
    let split = normalize_entry(&split, 0, 0, &one, "split")?;

    // ∂(α) = 2, so 1⊗α⊗1 (index 1) goes to 2·(1⊗1)
    let merge = unique_map(&bb, &b.shifted(1), "merge")?;
    let merge = normalize_entry(&merge, 0, 1, &Poly::constant(n, Q::from_int(2)), "merge")?;

    let g = Generators {
        i,
        dot: as_map(&b, &Obj::unit(n, -1), dot),
        unit_dot: as_map(&Obj::unit(n, 1), &b, unit_dot),
        merge: as_map(&bb, &b.shifted(1), merge),
        split: as_map(&b.shifted(-1), &bb, split),
    };
    if !g.merge.compose(&g.split)?.is_zero() {
        return Err(Error::Verification("merge ∘ split is not zero".into()));
    }
    let alpha = Poly::coroot(n, i);
    let dd = g.dot.compose(&g.unit_dot)?;
    if dd.matrix != PolyMatrix::diagonal(1, &alpha) {
        return Err(Error::Verification("dot ∘ unit dot is not multiplication by the coroot".into()));
    }
    Ok(g)
}

/// Generators for every colour on `n` strands.
pub fn standard_generators(n: usize) -> Result<Vec<Generators>> {
    (1..n).map(|i| generators(n, i)).collect()
}

/// The splitting `B_iB_i ≅ B_i<1> ⊕ B_i<-1>` from the decomposition
/// `g = even(g) + α odd(g)` of the middle tensor factor:
/// `p_+(f⊗g⊗h) = f odd(g)⊗h`, `p_-(f⊗g⊗h) = f even(g)⊗h`,
/// `ι_+(f⊗h) = f⊗α⊗h`, `ι_-(f⊗h) = f⊗1⊗h`.
#[derive(Clone, Debug)]
pub struct BiBiSplit {
    pub iota_plus: BimoduleMap,
    pub iota_minus: BimoduleMap,
    pub p_plus: BimoduleMap,
    pub p_minus: BimoduleMap,
}

pub fn idempotent_split_bibi(i: usize, n: usize) -> Result<BiBiSplit> {
    let g = generators(n, i)?;
    let b = Obj::word(n, &[i], 0);
    let bb = Obj::word(n, &[i, i], 0);
    let half = Q::new(1, 2);
    let p_plus = g.merge.scale(&half);
    let iota_minus = g.split.clone();
    // basis of B_iB_i is α^a⊗α^b⊗1 at index 2a+b
    let c = |v: i64| Poly::constant(n, Q::from_int(v));
    let z = || Poly::zero(n);
    let p_minus = PolyMatrix::from_rows(n, vec![vec![c(1), z(), z(), z()], vec![z(), z(), c(1), z()]]);
    let bbm = bb.realize_base();
    let alpha = Poly::coroot(n, i);
    // ι_+(1⊗1) = 1⊗α⊗1 = e_1, and ι_+(α⊗1) = α·e_1
    let e1: Vec<Poly> = (0..4).map(|r| if r == 1 { Poly::one(n) } else { Poly::zero(n) }).collect();
    let a_e1 = bbm.act(&alpha);
    let mut iota_plus = PolyMatrix::zeros(n, 4, 2);
    for (r, p) in e1.iter().enumerate() {
        iota_plus.set(r, 0, p.clone());
        iota_plus.set(r, 1, a_e1.get(r, 1));
    }
    let split = BiBiSplit {
        iota_plus: as_map(&b.shifted(1), &bb, iota_plus),
        iota_minus,
        p_plus,
        p_minus: as_map(&bb, &b.shifted(-1), p_minus),
    };
    split.verify()?;
    Ok(split)
}

impl BiBiSplit {
    pub fn verify(&self) -> Result<()> {
        for (name, f) in
            [("ι+", &self.iota_plus), ("ι-", &self.iota_minus), ("p+", &self.p_plus), ("p-", &self.p_minus)]
        {
            if !f.is_valid()? {
                return Err(Error::Verification(format!("{} is not a bimodule map", name)));
            }
        }
        let check = |ok: bool, what: &str| -> Result<()> {
            if ok {
                Ok(())
            } else {
                Err(Error::Verification(what.to_string()))
            }
        };
        check(self.p_plus.compose(&self.iota_plus)?.matrix.is_identity(), "p+ ι+ = id")?;
        check(self.p_minus.compose(&self.iota_minus)?.matrix.is_identity(), "p- ι- = id")?;
        check(self.p_plus.compose(&self.iota_minus)?.is_zero(), "p+ ι- = 0")?;
        check(self.p_minus.compose(&self.iota_plus)?.is_zero(), "p- ι+ = 0")?;
        let sum = self.iota_plus.compose(&self.p_plus)?.matrix.add(&self.iota_minus.compose(&self.p_minus)?.matrix);
        check(sum.is_identity(), "ι+ p+ + ι- p- = id")
    }
}

/// The map `R_{s_i}<1> -> B_i`, `1 ↦ x_i⊗1 - 1⊗x_i`, whose cokernel
/// complex is `F(σ_i)`.
pub fn perm_to_b(n: usize, i: usize) -> Result<BimoduleMap> {
    let src = Obj::Perm { perm: Perm::simple(n, i), shift: 1 };
    let b = Obj::word(n, &[i], 0);
    let f = unique_map(&src, &b, "R_s<1> -> B_s")?;
    let bmod = b.realize_base();
    let l = bmod.left_action(i);
    let column = vec![&l.get(0, 0) - &Poly::var(n, i), l.get(1, 0)];
    let f = normalize_column(&f, 0, &column, "R_s<1> -> B_s")?;
    Ok(as_map(&src, &b, f))
}

/// The map `B_i -> R_{s_i}<-1>`, `1⊗1 ↦ 1`.
pub fn b_to_perm(n: usize, i: usize) -> Result<BimoduleMap> {
    let tgt = Obj::Perm { perm: Perm::simple(n, i), shift: -1 };
    let b = Obj::word(n, &[i], 0);
    let f = unique_map(&b, &tgt, "B_s -> R_s<-1>")?;
    let f = normalize_entry(&f, 0, 0, &Poly::one(n), "B_s -> R_s<-1>")?;
    Ok(as_map(&b, &tgt, f))
}

fn describe(m: &Bimodule) -> String {
    match m.kind() {
        BimoduleKind::Tagged(o) => o.to_string(),
        BimoduleKind::Sum(v) => v.iter().join(" + "),
        BimoduleKind::Other => format!("rank {} bimodule", m.rank()),
    }
}

impl Serialize for BimoduleMap {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("BimoduleMap", 4)?;
        st.serialize_field("source", &describe(&self.source))?;
        st.serialize_field("target", &describe(&self.target))?;
        st.serialize_field("degree", &self.degree)?;
        st.serialize_field("matrix", &self.matrix.to_strings())?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn obj(n: usize, letters: &[usize], shift: i32) -> Arc<Bimodule> {
        Obj::word(n, letters, shift).realize()
    }

    #[test]
    fn hom_dimension_examples() {
        assert_eq!(hom_basis(&obj(2, &[], 0), &obj(2, &[], 0), 0).unwrap().len(), 1);
        assert_eq!(hom_basis(&obj(2, &[1], 0), &obj(2, &[], -1), 0).unwrap().len(), 1);
        assert_eq!(hom_basis(&obj(2, &[], 1), &obj(2, &[1], 0), 0).unwrap().len(), 1);
        // End(B_1) is free of graded rank 1 + q^2 as a left R_2-module
        assert_eq!(hom_basis(&obj(2, &[1], 0), &obj(2, &[1], 0), 2).unwrap().len(), 3);
        assert!(hom_basis(&obj(2, &[1], 0), &obj(3, &[1], 0), 0).is_err());
    }

    #[test]
    fn hom_bases_are_valid() {
        for (a, b, d) in [(vec![1], vec![1, 1], 1), (vec![1, 2], vec![2, 1], 2), (vec![1], vec![], 1)] {
            for f in hom_basis(&obj(3, &a, 0), &obj(3, &b, 0), d).unwrap() {
                assert!(f.is_valid().unwrap());
            }
        }
    }

    #[test]
    fn generator_matrices() {
        let g = generators(2, 1).unwrap();
        let alpha = Poly::coroot(2, 1);
        assert_eq!(g.dot.matrix, PolyMatrix::from_rows(2, vec![vec![Poly::one(2), alpha.clone()]]));
        let half = Q::new(1, 2);
        assert_eq!(
            g.unit_dot.matrix,
            PolyMatrix::from_rows(2, vec![vec![alpha.scale(&half)], vec![Poly::constant(2, half.clone())]])
        );
        let m_delta = g.dot.compose(&g.unit_dot).unwrap();
        assert_eq!(m_delta.matrix, PolyMatrix::diagonal(1, &alpha));
        assert!(g.merge.compose(&g.split).unwrap().is_zero());
        assert_eq!(g.split.matrix.get(0, 0), Poly::one(2));
    }

    #[test]
    fn identity_and_scaling() {
        let g = generators(2, 1).unwrap();
        let id = BimoduleMap::identity(g.dot.target.clone());
        assert_eq!(id.compose(&g.dot).unwrap(), g.dot);
        assert!(g.dot.scale(&Q::zero()).is_zero());
        assert!(g.dot.is_valid().unwrap());
        let mut bad = g.dot.clone();
        bad.matrix.set(0, 1, Poly::var(2, 1));
        assert!(!bad.is_valid().unwrap());
    }

    #[test]
    fn idempotents_on_three_strands() {
        for i in 1..3 {
            let s = idempotent_split_bibi(i, 3).unwrap();
            let lhs = s.iota_plus.target.graded_rank();
            let rhs = &s.iota_plus.source.graded_rank() + &s.iota_minus.source.graded_rank();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn tensor_maps_stay_valid() {
        let g = generators(2, 1).unwrap();
        let idb = BimoduleMap::identity(obj(2, &[1], 0));
        let f = tensor_r_maps(&g.dot, &idb).unwrap();
        assert!(f.is_valid().unwrap());
        assert_eq!(*f.target, *obj(2, &[1], -1));
        let h = tensor_r_maps(&idb, &g.dot).unwrap();
        assert!(h.is_valid().unwrap());
        // interchange law
        let left = tensor_r_maps(&g.dot, &BimoduleMap::identity(obj(2, &[], -1)))
            .unwrap()
            .compose(&tensor_r_maps(&idb, &g.dot).unwrap())
            .unwrap();
        let both = tensor_r_maps(&g.dot, &g.dot).unwrap();
        assert_eq!(left.matrix, both.matrix);
        let k = tensor_k_maps(&g.dot, &BimoduleMap::identity(obj(1, &[], 0)));
        assert!(k.is_valid().unwrap());
        let idk = tensor_k_maps(&idb, &idb);
        assert!(idk.matrix.is_identity());
    }

    #[test]
    fn permutation_generator_maps() {
        let f = perm_to_b(2, 1).unwrap();
        assert!(f.is_valid().unwrap());
        let g = generators(2, 1).unwrap();
        assert!(g.dot.compose(&f).unwrap().is_zero());
        let p = b_to_perm(2, 1).unwrap();
        assert!(p.is_valid().unwrap());
        assert!(p.compose(&g.unit_dot).unwrap().is_zero());
    }
}
