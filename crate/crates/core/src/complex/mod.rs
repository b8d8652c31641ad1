//! Bounded cochain complexes of tagged bimodules, graded maps between them,
//! tensor products with Koszul signs, and cones.
//!
//! Differentials raise homological degree by one. A summand records its
//! object tag and a label; labels concatenate under tensor products and
//! summands are sorted by label inside each degree, so `⋆` is associative
//! on the nose.

mod gauss;
mod homology;
mod homotopy;

pub use gauss::{gaussian_eliminate, split_idempotents};
pub use homology::{degreewise_homology_dims, HomologyTable};
pub use homotopy::{
    far_swap, find_homotopy_equivalence, homotopy_class_space, lattice_points, null_homotopy, ClassSpace,
    Equivalence, Method, SearchOptions, SearchResult,
};

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use itertools::Itertools;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::bimodule::Obj;
use crate::error::{Error, Result};
use crate::hecke::HeckeElement;
use crate::matrix::PolyMatrix;
use crate::morphism::{is_bimodule_map_obj, tensor_k_matrix, tensor_r_matrix};
use crate::rational::Q;

/// A factor of a mixed word: a Rouquier generator or a single `B_i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Atom {
    Crossing { i: usize, positive: bool },
    Object { i: usize },
}

impl Atom {
    pub fn letter(&self) -> usize {
        match *self {
            Atom::Crossing { i, .. } | Atom::Object { i } => i,
        }
    }

    pub fn reindexed(&self, offset: usize) -> Atom {
        match *self {
            Atom::Crossing { i, positive } => Atom::Crossing { i: i + offset, positive },
            Atom::Object { i } => Atom::Object { i: i + offset },
        }
    }

    /// Whether the term of this factor in homological degree `deg` is `B_i`
    /// (as opposed to a shifted copy of `R`).
    pub fn has_letter_in(&self, deg: i32) -> bool {
        match self {
            Atom::Crossing { .. } => deg == 0,
            Atom::Object { .. } => true,
        }
    }

    pub fn commutes_with(&self, other: &Atom) -> bool {
        self.letter().abs_diff(other.letter()) >= 2
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Crossing { i, positive: true } => write!(f, "s{}", i),
            Atom::Crossing { i, positive: false } => write!(f, "s{}'", i),
            Atom::Object { i } => write!(f, "B{}", i),
        }
    }
}

/// The mixed word a complex was built from, together with its overall
/// internal shift.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub atoms: Vec<Atom>,
    pub shift: i32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Summand {
    pub obj: Obj,
    pub label: Vec<(i32, u32)>,
}

/// A matrix of bimodule maps, keyed by `(target index, source index)`.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct BlockMap {
    rows: usize,
    cols: usize,
    blocks: BTreeMap<(usize, usize), PolyMatrix>,
}

impl BlockMap {
    pub fn new(rows: usize, cols: usize) -> BlockMap {
        BlockMap { rows, cols, blocks: BTreeMap::new() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Option<&PolyMatrix> {
        self.blocks.get(&(r, c))
    }

    pub fn blocks(&self) -> impl Iterator<Item = (usize, usize, &PolyMatrix)> {
        self.blocks.iter().map(|(&(r, c), m)| (r, c, m))
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn insert(&mut self, r: usize, c: usize, m: PolyMatrix) {
        if m.is_zero() {
            self.blocks.remove(&(r, c));
        } else {
            self.blocks.insert((r, c), m);
        }
    }

    pub fn add_at(&mut self, r: usize, c: usize, m: &PolyMatrix) {
        if m.is_zero() {
            return;
        }
        let sum = match self.blocks.get(&(r, c)) {
            Some(old) => old.add(m),
            None => m.clone(),
        };
        self.insert(r, c, sum);
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &BlockMap) -> BlockMap {
        let mut by_col: HashMap<usize, Vec<(usize, &PolyMatrix)>> = HashMap::new();
        for (&(r, m), a) in &self.blocks {
            by_col.entry(m).or_default().push((r, a));
        }
        let mut out = BlockMap::new(self.rows, other.cols);
        for (&(m, c), b) in &other.blocks {
            if let Some(list) = by_col.get(&m) {
                for (r, a) in list {
                    out.add_at(*r, c, &a.mul(b));
                }
            }
        }
        out
    }

    pub fn add(&self, other: &BlockMap) -> BlockMap {
        let mut out = self.clone();
        for (&(r, c), m) in &other.blocks {
            out.add_at(r, c, m);
        }
        out
    }

    pub fn scale(&self, q: &Q) -> BlockMap {
        let mut out = BlockMap::new(self.rows, self.cols);
        if !q.is_zero() {
            for (&(r, c), m) in &self.blocks {
                out.insert(r, c, m.scale(q));
            }
        }
        out
    }

    pub fn neg(&self) -> BlockMap {
        self.scale(&-Q::one())
    }

    fn map_matrices(&self, f: impl Fn(&PolyMatrix) -> PolyMatrix) -> BlockMap {
        let mut out = BlockMap::new(self.rows, self.cols);
        for (&(r, c), m) in &self.blocks {
            out.insert(r, c, f(m));
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Complex {
    strands: usize,
    lo: i32,
    terms: Vec<Vec<Summand>>,
    diffs: Vec<BlockMap>,
    presentation: Option<Presentation>,
}

impl Complex {
    /// `terms[k]` sits in degree `lo + k` and `diffs[k]` maps it to the next
    /// degree.
    pub fn new(strands: usize, lo: i32, terms: Vec<Vec<Summand>>, diffs: Vec<BlockMap>) -> Result<Complex> {
        if diffs.len() + 1 != terms.len() && !(terms.is_empty() && diffs.is_empty()) {
            return Err(Error::Shape(format!("{} terms need {} differentials", terms.len(), terms.len().max(1) - 1)));
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.cols != terms[k].len() || d.rows != terms[k + 1].len() {
                return Err(Error::Shape(format!("differential {} has the wrong block shape", lo + k as i32)));
            }
        }
        for s in terms.iter().flatten() {
            if s.obj.strands() != strands {
                return Err(Error::StrandMismatch { left: strands, right: s.obj.strands() });
            }
        }
        Ok(Complex { strands, lo, terms, diffs, presentation: None }.normalized())
    }

    pub fn zero(strands: usize) -> Complex {
        Complex { strands, lo: 0, terms: Vec::new(), diffs: Vec::new(), presentation: None }
    }

    /// `R` in degree zero.
    pub fn unit(strands: usize) -> Complex {
        Complex {
            strands,
            lo: 0,
            terms: vec![vec![Summand { obj: Obj::unit(strands, 0), label: Vec::new() }]],
            diffs: Vec::new(),
            presentation: Some(Presentation { atoms: Vec::new(), shift: 0 }),
        }
    }

    /// One summand in homological degree `deg`.
    pub fn single(obj: Obj, deg: i32) -> Complex {
        let label = vec![(deg, 0)];
        Complex {
            strands: obj.strands(),
            lo: deg,
            terms: vec![vec![Summand { obj, label }]],
            diffs: Vec::new(),
            presentation: None,
        }
    }

    /// The one- or two-term complex of a single atom.
    pub fn atom(strands: usize, atom: Atom) -> Result<Complex> {
        use crate::morphism::generators;
        let i = atom.letter();
        if i < 1 || i >= strands {
            return Err(Error::IndexOutOfRange { index: i, strands });
        }
        let b = Obj::word(strands, &[i], 0);
        let summand = |obj: Obj, deg: i32| vec![Summand { obj, label: vec![(deg, 0)] }];
        let (lo, terms, diffs) = match atom {
            Atom::Object { .. } => (0, vec![summand(b, 0)], Vec::new()),
            Atom::Crossing { positive: true, .. } => {
                let mut d = BlockMap::new(1, 1);
                d.insert(0, 0, generators(strands, i)?.dot.matrix);
                (0, vec![summand(b, 0), summand(Obj::unit(strands, -1), 1)], vec![d])
            }
            Atom::Crossing { positive: false, .. } => {
                let mut d = BlockMap::new(1, 1);
                d.insert(0, 0, generators(strands, i)?.unit_dot.matrix);
                (-1, vec![summand(Obj::unit(strands, 1), -1), summand(b, 0)], vec![d])
            }
        };
        Ok(Complex { strands, lo, terms, diffs, presentation: Some(Presentation { atoms: vec![atom], shift: 0 }) })
    }

    /// `F(a_1) ⋆ F(a_2) ⋆ ... ⋆ F(a_k)`; the empty word gives `R`.
    pub fn from_atoms(strands: usize, atoms: &[Atom]) -> Result<Complex> {
        let mut c = Complex::unit(strands);
        for a in atoms {
            c = tensor_r_complexes(&c, &Complex::atom(strands, *a)?)?;
        }
        Ok(c)
    }

    fn normalized(mut self) -> Complex {
        while self.terms.last().is_some_and(|t| t.is_empty()) {
            self.terms.pop();
            self.diffs.pop();
        }
        while self.terms.first().is_some_and(|t| t.is_empty()) {
            self.terms.remove(0);
            if !self.diffs.is_empty() {
                self.diffs.remove(0);
            }
            self.lo += 1;
        }
        if self.terms.is_empty() {
            self.lo = 0;
            self.diffs.clear();
        }
        self
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn lo(&self) -> i32 {
        self.lo
    }

    /// The top nonzero degree, or `lo - 1` for the zero complex.
    pub fn hi(&self) -> i32 {
        self.lo + self.terms.len() as i32 - 1
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i32> {
        self.lo..=self.hi()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn presentation(&self) -> Option<&Presentation> {
        self.presentation.as_ref()
    }

    pub fn term(&self, k: i32) -> &[Summand] {
        if k < self.lo || k > self.hi() {
            return &[];
        }
        &self.terms[(k - self.lo) as usize]
    }

    /// The differential out of degree `k`, if both ends are nonzero.
    pub fn diff(&self, k: i32) -> Option<&BlockMap> {
        if k < self.lo || k >= self.hi() {
            return None;
        }
        Some(&self.diffs[(k - self.lo) as usize])
    }

    pub fn num_summands(&self) -> usize {
        self.terms.iter().map(|t| t.len()).sum()
    }

    /// Internal grading shift `⟨j⟩` of every summand.
    pub fn shift(&self, j: i32) -> Complex {
        let mut out = self.clone();
        for s in out.terms.iter_mut().flatten() {
            s.obj = s.obj.shifted(j);
        }
        if let Some(p) = &mut out.presentation {
            p.shift += j;
        }
        out
    }

    /// Homological shift: the term of degree `k` moves to `k - j`, and the
    /// differential is multiplied by `(-1)^j`.
    pub fn hshift(&self, j: i32) -> Complex {
        let sign = if j % 2 == 0 { Q::one() } else { -Q::one() };
        Complex {
            strands: self.strands,
            lo: self.lo - j,
            terms: self.terms.clone(),
            diffs: self.diffs.iter().map(|d| d.scale(&sign)).collect(),
            presentation: None,
        }
    }

    pub fn d_squared_is_zero(&self) -> bool {
        self.diffs.windows(2).all(|w| w[1].compose(&w[0]).is_zero())
    }

    /// Every differential block is a valid degree-zero bimodule map.
    pub fn differentials_valid(&self) -> bool {
        self.diffs.iter().enumerate().all(|(k, d)| {
            d.blocks().all(|(r, c, m)| is_bimodule_map_obj(&self.terms[k][c].obj, &self.terms[k + 1][r].obj, m))
        })
    }

    pub fn verify(&self) -> Result<()> {
        if !self.d_squared_is_zero() {
            return Err(Error::Verification("d∘d is not zero".into()));
        }
        if !self.differentials_valid() {
            return Err(Error::Verification("a differential is not a degree-0 bimodule map".into()));
        }
        Ok(())
    }

    /// `sum_k (-1)^k [C_k]` in the Hecke algebra.
    pub fn euler_characteristic(&self) -> Result<HeckeElement> {
        let mut out = HeckeElement::zero(self.strands);
        for k in self.degrees() {
            for s in self.term(k) {
                let w = s.obj.as_word().ok_or(Error::NoHeckeClass)?;
                let class = HeckeElement::bs_class(w);
                out = if k % 2 == 0 { out.add(&class) } else { out.sub(&class) };
            }
        }
        Ok(out)
    }

    /// Renumbers labels as `[(degree, index)]`.
    pub(crate) fn relabeled(mut self) -> Complex {
        let lo = self.lo;
        for (k, t) in self.terms.iter_mut().enumerate() {
            for (i, s) in t.iter_mut().enumerate() {
                s.label = vec![(lo + k as i32, i as u32)];
            }
        }
        self.presentation = None;
        self
    }

    /// `1_left ⊠ C ⊠ 1_right`.
    pub fn induce(&self, left: usize, right: usize) -> Result<Complex> {
        let total = left + self.strands + right;
        let mut out = self.clone();
        out.strands = total;
        for s in out.terms.iter_mut().flatten() {
            s.obj = induce_obj(&s.obj, left, right)?;
        }
        for d in &mut out.diffs {
            *d = d.map_matrices(|m| m.map_entries(total, |p| p.reindex(left, total)));
        }
        if let Some(p) = &mut out.presentation {
            p.atoms = p.atoms.iter().map(|a| a.reindexed(left)).collect();
        }
        Ok(out)
    }
}

pub(crate) fn induce_obj(obj: &Obj, left: usize, right: usize) -> Result<Obj> {
    let l = Obj::unit(left, 0);
    let r = Obj::unit(right, 0);
    let mut o = obj.clone();
    if left > 0 {
        o = l.boxtimes(&o)?;
    }
    if right > 0 {
        o = o.boxtimes(&r)?;
    }
    Ok(o)
}

/// Position of `(p, c, q, d)`, meaning summand `c` of `C_p` tensor summand
/// `d` of `D_q`, inside the product's degree `p + q`.
pub(crate) type ProductIndex = HashMap<(i32, usize, i32, usize), usize>;

#[derive(Clone, Copy)]
enum Product {
    Internal,
    External { m: usize, n: usize },
}

impl Product {
    fn strands(self, c: &Complex) -> usize {
        match self {
            Product::Internal => c.strands,
            Product::External { m, n } => m + n,
        }
    }

    fn obj(self, a: &Obj, b: &Obj) -> Result<Obj> {
        match self {
            Product::Internal => a.star(b),
            Product::External { .. } => a.boxtimes(b),
        }
    }

    /// `F ⊗ G` where `G` maps into the object `g_target`.
    fn maps(self, f: &PolyMatrix, g: &PolyMatrix, g_target: &Obj) -> PolyMatrix {
        match self {
            Product::Internal => tensor_r_matrix(f, g, &g_target.realize_base()),
            Product::External { m, n } => tensor_k_matrix(f, g, m, n),
        }
    }

    fn id_left(self, f: &PolyMatrix, d_obj: &Obj) -> PolyMatrix {
        match self {
            Product::Internal => tensor_r_matrix(f, &PolyMatrix::identity(f.nvars(), d_obj.rank()), &d_obj.realize_base()),
            Product::External { m, n } => tensor_k_matrix(f, &PolyMatrix::identity(n, d_obj.rank()), m, n),
        }
    }

    fn id_right(self, c_obj: &Obj, g: &PolyMatrix) -> PolyMatrix {
        match self {
            Product::Internal => PolyMatrix::identity(g.nvars(), c_obj.rank()).kron(g),
            Product::External { m, n } => tensor_k_matrix(&PolyMatrix::identity(m, c_obj.rank()), g, m, n),
        }
    }
}

fn product(c: &Complex, d: &Complex, kind: Product) -> Result<(Complex, ProductIndex)> {
    let strands = kind.strands(c);
    let mut index = ProductIndex::new();
    if c.is_zero() || d.is_zero() {
        return Ok((Complex::zero(strands), index));
    }
    let lo = c.lo + d.lo;
    let hi = c.hi() + d.hi();
    let mut terms = Vec::new();
    for k in lo..=hi {
        let mut entries = Vec::new();
        for p in c.degrees() {
            let q = k - p;
            for (ci, cs) in c.term(p).iter().enumerate() {
                for (di, ds) in d.term(q).iter().enumerate() {
                    let mut label = cs.label.clone();
                    label.extend_from_slice(&ds.label);
                    entries.push((label, p, ci, q, di));
                }
            }
        }
        entries.sort_by(|a, b| a.0.cmp(&b.0));
        let mut term = Vec::with_capacity(entries.len());
        for (pos, (label, p, ci, q, di)) in entries.into_iter().enumerate() {
            index.insert((p, ci, q, di), pos);
            term.push(Summand { obj: kind.obj(&c.term(p)[ci].obj, &d.term(q)[di].obj)?, label });
        }
        terms.push(term);
    }
    let mut diffs: Vec<BlockMap> =
        (0..terms.len().saturating_sub(1)).map(|k| BlockMap::new(terms[k + 1].len(), terms[k].len())).collect();
    for (&(p, ci, q, di), &pos) in &index {
        let k = (p + q - lo) as usize;
        let c_obj = &c.term(p)[ci].obj;
        let d_obj = &d.term(q)[di].obj;
        if let Some(dc) = c.diff(p) {
            for (r, col, f) in dc.blocks() {
                if col == ci {
                    let tgt = index[&(p + 1, r, q, di)];
                    diffs[k].add_at(tgt, pos, &kind.id_left(f, d_obj));
                }
            }
        }
        if let Some(dd) = d.diff(q) {
            let sign = if p % 2 == 0 { Q::one() } else { -Q::one() };
            for (r, col, g) in dd.blocks() {
                if col == di {
                    let tgt = index[&(p, ci, q + 1, r)];
                    diffs[k].add_at(tgt, pos, &kind.id_right(c_obj, g).scale(&sign));
                }
            }
        }
    }
    let presentation = match (&c.presentation, &d.presentation) {
        (Some(a), Some(b)) => {
            let offset = match kind {
                Product::Internal => 0,
                Product::External { m, .. } => m,
            };
            let mut atoms = a.atoms.clone();
            atoms.extend(b.atoms.iter().map(|t| t.reindexed(offset)));
            Some(Presentation { atoms, shift: a.shift + b.shift })
        }
        _ => None,
    };
    let out = Complex { strands, lo, terms, diffs, presentation }.normalized();
    Ok((out, index))
}

/// `C ⋆ D = C ⊗_R D` with differential `d_C ⊗ 1 + (-1)^p 1 ⊗ d_D`.
pub fn tensor_r_complexes(c: &Complex, d: &Complex) -> Result<Complex> {
    if c.strands != d.strands {
        return Err(Error::StrandMismatch { left: c.strands, right: d.strands });
    }
    Ok(product(c, d, Product::Internal)?.0)
}

/// `C ⊠ D` over `R_{m+n}`.
pub fn tensor_k_complexes(c: &Complex, d: &Complex) -> Result<Complex> {
    Ok(product(c, d, Product::External { m: c.strands, n: d.strands })?.0)
}

/// A homogeneous map of complexes of homological degree `degree`;
/// `comps[k]` maps `source_k` to `target_{k+degree}`.
#[derive(Clone, Debug)]
pub struct GradedMap {
    source: Arc<Complex>,
    target: Arc<Complex>,
    degree: i32,
    comps: BTreeMap<i32, BlockMap>,
}

pub(crate) fn same_complex(a: &Arc<Complex>, b: &Arc<Complex>) -> bool {
    Arc::ptr_eq(a, b) || a.terms == b.terms && a.lo == b.lo && a.diffs == b.diffs
}

impl PartialEq for GradedMap {
    fn eq(&self, other: &GradedMap) -> bool {
        self.degree == other.degree
            && self.comps == other.comps
            && same_complex(&self.source, &other.source)
            && same_complex(&self.target, &other.target)
    }
}

impl GradedMap {
    pub fn zero(source: Arc<Complex>, target: Arc<Complex>, degree: i32) -> GradedMap {
        GradedMap { source, target, degree, comps: BTreeMap::new() }
    }

    pub fn identity(c: Arc<Complex>) -> GradedMap {
        let mut f = GradedMap::zero(c.clone(), c.clone(), 0);
        for k in c.degrees() {
            let mut b = BlockMap::new(c.term(k).len(), c.term(k).len());
            for (i, s) in c.term(k).iter().enumerate() {
                b.insert(i, i, PolyMatrix::identity(c.strands, s.obj.rank()));
            }
            f.set(k, b);
        }
        f
    }

    pub fn source(&self) -> &Arc<Complex> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Complex> {
        &self.target
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn comp(&self, k: i32) -> Option<&BlockMap> {
        self.comps.get(&k)
    }

    pub fn comps(&self) -> impl Iterator<Item = (i32, &BlockMap)> {
        self.comps.iter().map(|(k, b)| (*k, b))
    }

    /// An empty block map with the right shape for source degree `k`.
    pub fn empty_comp(&self, k: i32) -> BlockMap {
        BlockMap::new(self.target.term(k + self.degree).len(), self.source.term(k).len())
    }

    pub fn set(&mut self, k: i32, b: BlockMap) {
        if b.is_zero() {
            self.comps.remove(&k);
        } else {
            self.comps.insert(k, b);
        }
    }

    pub fn add_block(&mut self, k: i32, r: usize, c: usize, m: &PolyMatrix) {
        let mut b = self.comps.remove(&k).unwrap_or_else(|| self.empty_comp(k));
        b.add_at(r, c, m);
        self.set(k, b);
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    /// `self ∘ f`.
    pub fn compose(&self, f: &GradedMap) -> Result<GradedMap> {
        if !same_complex(&f.target, &self.source) {
            return Err(Error::Shape("graded maps do not compose".into()));
        }
        let mut out = GradedMap::zero(f.source.clone(), self.target.clone(), self.degree + f.degree);
        for (&k, fb) in &f.comps {
            if let Some(gb) = self.comps.get(&(k + f.degree)) {
                out.set(k, gb.compose(fb));
            }
        }
        Ok(out)
    }

    fn check_parallel(&self, other: &GradedMap) -> Result<()> {
        if self.degree != other.degree
            || !same_complex(&self.source, &other.source)
            || !same_complex(&self.target, &other.target)
        {
            return Err(Error::Shape("graded maps are not parallel".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &GradedMap) -> Result<GradedMap> {
        self.check_parallel(other)?;
        let mut out = self.clone();
        for (&k, b) in &other.comps {
            let sum = match out.comps.get(&k) {
                Some(a) => a.add(b),
                None => b.clone(),
            };
            out.set(k, sum);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &GradedMap) -> Result<GradedMap> {
        self.add(&other.neg())
    }

    pub fn scale(&self, q: &Q) -> GradedMap {
        let mut out = GradedMap::zero(self.source.clone(), self.target.clone(), self.degree);
        for (&k, b) in &self.comps {
            out.set(k, b.scale(q));
        }
        out
    }

    pub fn neg(&self) -> GradedMap {
        self.scale(&-Q::one())
    }

    /// `δh = d h - (-1)^e h d` for `h` of degree `e`.
    pub fn commutator(&self) -> GradedMap {
        let e = self.degree;
        let mut out = GradedMap::zero(self.source.clone(), self.target.clone(), e + 1);
        let sign = if e % 2 == 0 { -Q::one() } else { Q::one() };
        for (&k, b) in &self.comps {
            if let Some(dd) = self.target.diff(k + e) {
                let mut nb = out.comps.remove(&k).unwrap_or_else(|| out.empty_comp(k));
                nb = nb.add(&dd.compose(b));
                out.set(k, nb);
            }
            if let Some(dc) = self.source.diff(k - 1) {
                let mut nb = out.comps.remove(&(k - 1)).unwrap_or_else(|| out.empty_comp(k - 1));
                nb = nb.add(&b.compose(dc).scale(&sign));
                out.set(k - 1, nb);
            }
        }
        out
    }

    pub fn is_chain_map(&self) -> bool {
        self.degree == 0 && self.commutator().is_zero()
    }

    /// Every block is a valid degree-zero bimodule map between its objects.
    pub fn blocks_valid(&self) -> bool {
        self.comps.iter().all(|(&k, b)| {
            b.blocks().all(|(r, c, m)| is_bimodule_map_obj(&self.source.term(k)[c].obj, &self.target.term(k + self.degree)[r].obj, m))
        })
    }

    /// Reinterprets the map between complexes with identical terms and
    /// differentials but possibly different labels or presentations.
    pub fn retarget(&self, source: Arc<Complex>, target: Arc<Complex>) -> Result<GradedMap> {
        let same = |a: &Complex, b: &Complex| {
            a.lo == b.lo
                && a.diffs == b.diffs
                && a.terms.len() == b.terms.len()
                && a.terms.iter().zip(&b.terms).all(|(x, y)| x.iter().map(|s| &s.obj).eq(y.iter().map(|s| &s.obj)))
        };
        if !same(&self.source, &source) || !same(&self.target, &target) {
            return Err(Error::Shape("retarget needs identical complexes".into()));
        }
        Ok(GradedMap { source, target, degree: self.degree, comps: self.comps.clone() })
    }

    /// `1_left ⊠ f ⊠ 1_right`.
    pub fn induce(&self, left: usize, right: usize) -> Result<GradedMap> {
        let total = left + self.source.strands + right;
        Ok(GradedMap {
            source: Arc::new(self.source.induce(left, right)?),
            target: Arc::new(self.target.induce(left, right)?),
            degree: self.degree,
            comps: self
                .comps
                .iter()
                .map(|(&k, b)| (k, b.map_matrices(|m| m.map_entries(total, |p| p.reindex(left, total)))))
                .collect(),
        })
    }

    /// Internal shift of source and target; the matrices are unchanged.
    pub fn shift(&self, j: i32) -> GradedMap {
        GradedMap {
            source: Arc::new(self.source.shift(j)),
            target: Arc::new(self.target.shift(j)),
            degree: self.degree,
            comps: self.comps.clone(),
        }
    }
}

fn tensor_graded(f: &GradedMap, g: &GradedMap, kind: Product) -> Result<GradedMap> {
    let (src, sidx) = product(&f.source, &g.source, kind)?;
    let (tgt, tidx) = product(&f.target, &g.target, kind)?;
    let mut out = GradedMap::zero(Arc::new(src), Arc::new(tgt), f.degree + g.degree);
    for (&p, fb) in &f.comps {
        for (&q, gb) in &g.comps {
            let sign = if (g.degree * p) % 2 == 0 { Q::one() } else { -Q::one() };
            for (rf, cf, fm) in fb.blocks() {
                for (rg, cg, gm) in gb.blocks() {
                    let s = sidx[&(p, cf, q, cg)];
                    let t = tidx[&(p + f.degree, rf, q + g.degree, rg)];
                    let g_target = &g.target.term(q + g.degree)[rg].obj;
                    out.add_block(p + q, t, s, &kind.maps(fm, gm, g_target).scale(&sign));
                }
            }
        }
    }
    Ok(out)
}

/// `f ⋆ g` with `(f ⋆ g)(x ⊗ y) = (-1)^{|g||x|} f(x) ⊗ g(y)`.
pub fn tensor_r_graded(f: &GradedMap, g: &GradedMap) -> Result<GradedMap> {
    if f.source.strands != g.source.strands {
        return Err(Error::StrandMismatch { left: f.source.strands, right: g.source.strands });
    }
    tensor_graded(f, g, Product::Internal)
}

pub fn tensor_k_graded(f: &GradedMap, g: &GradedMap) -> Result<GradedMap> {
    tensor_graded(f, g, Product::External { m: f.source.strands, n: g.source.strands })
}

/// `Cone(f) = C[1] ⊕ D` with differential `[[-d_C, 0], [f, d_D]]`.
pub fn cone(f: &GradedMap) -> Result<Complex> {
    if f.degree != 0 {
        return Err(Error::Shape("cone needs a degree-0 chain map".into()));
    }
    let (c, d) = (&f.source, &f.target);
    let strands = c.strands;
    if c.is_zero() && d.is_zero() {
        return Ok(Complex::zero(strands));
    }
    let lo = if c.is_zero() { d.lo } else if d.is_zero() { c.lo - 1 } else { (c.lo - 1).min(d.lo) };
    let hi = if c.is_zero() { d.hi() } else if d.is_zero() { c.hi() - 1 } else { (c.hi() - 1).max(d.hi()) };
    let mut terms = Vec::new();
    for k in lo..=hi {
        let mut t: Vec<Summand> = c.term(k + 1).to_vec();
        t.extend(d.term(k).iter().cloned());
        terms.push(t);
    }
    let mut diffs = Vec::new();
    for k in lo..hi {
        let nc0 = c.term(k + 1).len();
        let nc1 = c.term(k + 2).len();
        let mut b = BlockMap::new(nc1 + d.term(k + 1).len(), nc0 + d.term(k).len());
        if let Some(dc) = c.diff(k + 1) {
            for (r, col, m) in dc.blocks() {
                b.insert(r, col, m.neg());
            }
        }
        if let Some(fb) = f.comp(k + 1) {
            for (r, col, m) in fb.blocks() {
                b.insert(nc1 + r, col, m.clone());
            }
        }
        if let Some(dd) = d.diff(k) {
            for (r, col, m) in dd.blocks() {
                b.insert(nc1 + r, nc0 + col, m.clone());
            }
        }
        diffs.push(b);
    }
    Ok(Complex { strands, lo, terms, diffs, presentation: None }.normalized().relabeled())
}

impl fmt::Display for Complex {
    /// `B1 @ 0 → R<-1> @ 1`; a degree with several summands is written as
    /// a direct sum.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts = self.degrees().map(|k| {
            let t = self.term(k);
            let objs = if t.is_empty() { "0".to_string() } else { t.iter().map(|s| &s.obj).join(" ⊕ ") };
            format!("{} @ {}", objs, k)
        });
        write!(f, "{}", parts.format(" → "))
    }
}

fn obj_json(o: &Obj) -> serde_json::Value {
    match o {
        Obj::Word(w) => serde_json::json!({ "word": w.letters(), "shift": w.shift(), "text": o.to_string() }),
        Obj::Perm { perm, shift } => serde_json::json!({ "perm": perm.images(), "shift": shift, "text": o.to_string() }),
    }
}

fn blocks_json(b: &BlockMap) -> Vec<serde_json::Value> {
    b.blocks()
        .map(|(r, c, m)| serde_json::json!({ "row": r, "col": c, "matrix": m.to_strings() }))
        .collect()
}

impl Serialize for Complex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<serde_json::Value> = self
            .degrees()
            .map(|k| {
                let objs: Vec<serde_json::Value> = self.term(k).iter().map(|s| obj_json(&s.obj)).collect();
                serde_json::json!({ "degree": k, "summands": objs })
            })
            .collect();
        let diffs: Vec<serde_json::Value> = (self.lo..self.hi())
            .filter_map(|k| self.diff(k).map(|d| serde_json::json!({ "from": k, "to": k + 1, "blocks": blocks_json(d) })))
            .collect();
        let mut st = s.serialize_struct("Complex", 6)?;
        st.serialize_field("schema", "soergel.complex/1")?;
        st.serialize_field("strands", &self.strands)?;
        st.serialize_field("text", &self.to_string())?;
        st.serialize_field("terms", &terms)?;
        st.serialize_field("differentials", &diffs)?;
        st.serialize_field(
            "presentation",
            &self.presentation.as_ref().map(|p| {
                serde_json::json!({
                    "atoms": p.atoms.iter().map(|a| a.to_string()).collect::<Vec<_>>(),
                    "shift": p.shift,
                })
            }),
        )?;
        st.end()
    }
}

impl Serialize for GradedMap {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let comps: Vec<serde_json::Value> = self
            .comps
            .iter()
            .map(|(k, b)| serde_json::json!({ "from": k, "to": k + self.degree, "blocks": blocks_json(b) }))
            .collect();
        let mut st = s.serialize_struct("GradedMap", 5)?;
        st.serialize_field("schema", "soergel.map/1")?;
        st.serialize_field("source", &self.source.to_string())?;
        st.serialize_field("target", &self.target.to_string())?;
        st.serialize_field("degree", &self.degree)?;
        st.serialize_field("components", &comps)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::Laurent;

    fn gen(n: usize, i: usize, positive: bool) -> Complex {
        Complex::atom(n, Atom::Crossing { i, positive }).unwrap()
    }

    #[test]
    fn generator_complexes() {
        let c = gen(2, 1, true);
        assert_eq!(c.to_string(), "B1 @ 0 → R<-1> @ 1");
        c.verify().unwrap();
        let d = gen(2, 1, false);
        assert_eq!(d.to_string(), "R<1> @ -1 → B1 @ 0");
        d.verify().unwrap();
        assert_eq!(Complex::unit(3).to_string(), "R @ 0");
    }

    #[test]
    fn unit_is_neutral() {
        let c = gen(3, 2, true);
        let r = Complex::unit(3);
        let left = tensor_r_complexes(&r, &c).unwrap();
        let right = tensor_r_complexes(&c, &r).unwrap();
        assert_eq!(left.terms, c.terms);
        assert_eq!(left.diffs, c.diffs);
        assert_eq!(right.terms, c.terms);
        assert_eq!(right.diffs, c.diffs);
    }

    #[test]
    fn product_is_associative_on_the_nose() {
        let (a, b, c) = (gen(3, 1, true), gen(3, 2, false), gen(3, 1, true));
        let ab_c = tensor_r_complexes(&tensor_r_complexes(&a, &b).unwrap(), &c).unwrap();
        let a_bc = tensor_r_complexes(&a, &tensor_r_complexes(&b, &c).unwrap()).unwrap();
        assert_eq!(ab_c, a_bc);
        ab_c.verify().unwrap();
    }

    #[test]
    fn r2_shape_and_euler() {
        let c = tensor_r_complexes(&gen(2, 1, true), &gen(2, 1, false)).unwrap();
        assert_eq!(c.to_string(), "B1<1> @ -1 → B1B1 ⊕ R @ 0 → B1<-1> @ 1");
        c.verify().unwrap();
        assert_eq!(c.euler_characteristic().unwrap(), HeckeElement::one(2));
        let e = gen(2, 1, true).euler_characteristic().unwrap();
        let b = HeckeElement::b(2, 1);
        assert_eq!(e, b.sub(&HeckeElement::scalar(2, Laurent::q_pow(-1))));
    }

    #[test]
    fn external_product_matches_reindexing() {
        let c = gen(2, 1, true);
        let r = Complex::unit(1);
        let left = tensor_k_complexes(&r, &c).unwrap();
        assert_eq!(left, gen(3, 2, true));
        let right = tensor_k_complexes(&c, &r).unwrap();
        assert_eq!(right, gen(3, 1, true));
        assert_eq!(c.induce(1, 0).unwrap(), gen(3, 2, true));
        let both = tensor_k_complexes(&c, &c).unwrap();
        both.verify().unwrap();
        let star = tensor_r_complexes(&gen(4, 1, true), &gen(4, 3, true)).unwrap();
        assert_eq!(both, star);
    }

    #[test]
    fn identity_and_commutator() {
        let c = Arc::new(tensor_r_complexes(&gen(3, 1, true), &gen(3, 2, true)).unwrap());
        let id = GradedMap::identity(c.clone());
        assert!(id.is_chain_map());
        assert!(id.blocks_valid());
        assert_eq!(id.compose(&id).unwrap(), id);
        assert!(id.sub(&id).unwrap().is_zero());
        let t = tensor_r_graded(&GradedMap::identity(Arc::new(gen(3, 1, true))), &GradedMap::identity(Arc::new(gen(3, 2, true)))).unwrap();
        assert_eq!(t.comps, id.comps);
    }

    #[test]
    fn cone_of_identity_is_well_formed() {
        let c = Arc::new(gen(2, 1, true));
        let k = cone(&GradedMap::identity(c)).unwrap();
        k.verify().unwrap();
        assert!(k.euler_characteristic().unwrap().is_zero());
        assert_eq!(k.num_summands(), 4);
    }

    #[test]
    fn shifts_and_json() {
        let c = gen(2, 1, true).shift(-1);
        assert_eq!(c.to_string(), "B1<-1> @ 0 → R<-2> @ 1");
        let v = serde_json::to_value(&c).unwrap();
        assert_eq!(v["schema"], "soergel.complex/1");
        assert_eq!(v["terms"][1]["summands"][0]["shift"], -2);
        let h = c.hshift(1);
        assert_eq!(h.lo(), -1);
        h.verify().unwrap();
    }
}
