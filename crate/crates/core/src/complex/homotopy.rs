//! Chain maps up to homotopy: exact class spaces, null-homotopies and a
//! bounded search for homotopy equivalences.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::sync::Arc;

use serde::Serialize;

use super::{same_complex, tensor_r_graded, Atom, BlockMap, Complex, GradedMap};
use crate::error::{Error, Result};
use crate::linalg::{kernel, solve, solve_with, Echelon, Insert, SparseVec};
use crate::matrix::PolyMatrix;
use crate::morphism::hom_basis_obj;
use crate::poly::Monomial;
use crate::rational::Q;

/// Homotopy-equivalence data: `g f - 1 = δh` on the source and
/// `f g - 1 = δk` on the target.
#[derive(Clone, Debug)]
pub struct Equivalence {
    pub f: GradedMap,
    pub g: GradedMap,
    pub h: GradedMap,
    pub k: GradedMap,
}

impl Equivalence {
    pub fn identity(c: Arc<Complex>) -> Equivalence {
        Equivalence {
            f: GradedMap::identity(c.clone()),
            g: GradedMap::identity(c.clone()),
            h: GradedMap::zero(c.clone(), c.clone(), -1),
            k: GradedMap::zero(c.clone(), c, -1),
        }
    }

    /// An isomorphism with inverse `g`.
    pub fn from_iso(f: GradedMap, g: GradedMap) -> Equivalence {
        let (s, t) = (f.source().clone(), f.target().clone());
        Equivalence { f, g, h: GradedMap::zero(s.clone(), s, -1), k: GradedMap::zero(t.clone(), t, -1) }
    }

    pub fn source(&self) -> &Arc<Complex> {
        self.f.source()
    }

    pub fn target(&self) -> &Arc<Complex> {
        self.f.target()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.h.is_zero() && self.k.is_zero()
    }

    /// Re-checks every defining identity with exact arithmetic.
    pub fn verify(&self) -> Result<()> {
        let fail = |what: &str| Err(Error::Verification(what.to_string()));
        if !self.f.is_chain_map() {
            return fail("f is not a chain map");
        }
        if !self.g.is_chain_map() {
            return fail("g is not a chain map");
        }
        if self.h.degree() != -1 || self.k.degree() != -1 {
            return fail("homotopies must have degree -1");
        }
        for (name, m) in [("f", &self.f), ("g", &self.g), ("h", &self.h), ("k", &self.k)] {
            if !m.blocks_valid() {
                return fail(&format!("{} has a block that is not a bimodule map", name));
            }
        }
        let gf = self.g.compose(&self.f)?.sub(&GradedMap::identity(self.source().clone()))?;
        if gf != self.h.commutator() {
            return fail("g∘f - 1 ≠ dh + hd");
        }
        let fg = self.f.compose(&self.g)?.sub(&GradedMap::identity(self.target().clone()))?;
        if fg != self.k.commutator() {
            return fail("f∘g - 1 ≠ dk + kd");
        }
        Ok(())
    }

    pub fn inverse(&self) -> Equivalence {
        Equivalence { f: self.g.clone(), g: self.f.clone(), h: self.k.clone(), k: self.h.clone() }
    }

    /// `next ∘ self`: `H = h1 + g1 h2 f1` and `K = k2 + f2 k1 g2`.
    pub fn then(&self, next: &Equivalence) -> Result<Equivalence> {
        let f = next.f.compose(&self.f)?;
        let g = self.g.compose(&next.g)?;
        let h = self.h.add(&self.g.compose(&next.h.compose(&self.f)?)?)?;
        let k = next.k.add(&next.f.compose(&self.k.compose(&next.g)?)?)?;
        Ok(Equivalence { f, g, h, k })
    }

    fn map_all(&self, op: impl Fn(&GradedMap) -> Result<GradedMap>) -> Result<Equivalence> {
        Ok(Equivalence { f: op(&self.f)?, g: op(&self.g)?, h: op(&self.h)?, k: op(&self.k)? })
    }

    /// `1_P ⋆ self`.
    pub fn star_left(&self, p: &Complex) -> Result<Equivalence> {
        let id = GradedMap::identity(Arc::new(p.clone()));
        self.map_all(|m| tensor_r_graded(&id, m))
    }

    /// `self ⋆ 1_S`.
    pub fn star_right(&self, s: &Complex) -> Result<Equivalence> {
        let id = GradedMap::identity(Arc::new(s.clone()));
        self.map_all(|m| tensor_r_graded(m, &id))
    }

    pub fn induce(&self, left: usize, right: usize) -> Result<Equivalence> {
        self.map_all(|m| m.induce(left, right))
    }

    pub fn shift(&self, j: i32) -> Equivalence {
        self.map_all(|m| Ok(m.shift(j))).expect("shifting cannot fail")
    }

    /// The same data between structurally identical complexes.
    pub fn retarget(&self, source: Arc<Complex>, target: Arc<Complex>) -> Result<Equivalence> {
        Ok(Equivalence {
            f: self.f.retarget(source.clone(), target.clone())?,
            g: self.g.retarget(target.clone(), source.clone())?,
            h: self.h.retarget(source.clone(), source)?,
            k: self.k.retarget(target.clone(), target)?,
        })
    }

    /// Number of nonzero matrix blocks in `(f, g, h, k)`.
    pub fn sizes(&self) -> [usize; 4] {
        let count = |m: &GradedMap| m.comps().map(|(_, b)| b.blocks().count()).sum();
        [count(&self.f), count(&self.g), count(&self.h), count(&self.k)]
    }
}

struct Unknown {
    k: i32,
    r: usize,
    c: usize,
    basis: Arc<Vec<PolyMatrix>>,
    b: usize,
}

/// One coordinate per basis element of every block hom space.
struct MapSpace {
    source: Arc<Complex>,
    target: Arc<Complex>,
    degree: i32,
    unknowns: Vec<Unknown>,
}

impl MapSpace {
    fn new(source: &Arc<Complex>, target: &Arc<Complex>, degree: i32) -> MapSpace {
        let mut unknowns = Vec::new();
        for k in source.degrees() {
            for (c, cs) in source.term(k).iter().enumerate() {
                for (r, ts) in target.term(k + degree).iter().enumerate() {
                    let basis = hom_basis_obj(&cs.obj, &ts.obj);
                    for b in 0..basis.len() {
                        unknowns.push(Unknown { k, r, c, basis: basis.clone(), b });
                    }
                }
            }
        }
        MapSpace { source: source.clone(), target: target.clone(), degree, unknowns }
    }

    fn len(&self) -> usize {
        self.unknowns.len()
    }

    fn unit_map(&self, j: usize) -> GradedMap {
        let u = &self.unknowns[j];
        let mut f = GradedMap::zero(self.source.clone(), self.target.clone(), self.degree);
        let mut b = f.empty_comp(u.k);
        b.insert(u.r, u.c, u.basis[u.b].clone());
        f.set(u.k, b);
        f
    }

    fn combine(&self, x: &[(usize, Q)]) -> GradedMap {
        let mut f = GradedMap::zero(self.source.clone(), self.target.clone(), self.degree);
        let mut comps: BTreeMap<i32, BlockMap> = BTreeMap::new();
        for (j, q) in x {
            let u = &self.unknowns[*j];
            comps.entry(u.k).or_insert_with(|| f.empty_comp(u.k)).add_at(u.r, u.c, &u.basis[u.b].scale(q));
        }
        for (k, b) in comps {
            f.set(k, b);
        }
        f
    }

    /// `δ` of every coordinate map.
    fn boundaries(&self) -> Vec<GradedMap> {
        (0..self.len()).map(|j| self.unit_map(j).commutator()).collect()
    }
}

/// Interns the coordinates `(tag, degree, block, entry, monomial)` of
/// matrix entries so maps can be compared as sparse vectors.
type Coordinate = (u8, i32, usize, usize, usize, usize, Monomial);

#[derive(Default)]
struct Raw {
    index: HashMap<Coordinate, usize>,
}

impl Raw {
    fn accumulate(&mut self, tag: u8, f: &GradedMap, scale: &Q, acc: &mut BTreeMap<usize, Q>) {
        for (k, b) in f.comps() {
            for (r, c, m) in b.blocks() {
                for (i, j, p) in m.entries() {
                    for (mono, q) in p.terms() {
                        let next = self.index.len();
                        let idx = *self.index.entry((tag, k, r, c, i, j, *mono)).or_insert(next);
                        let e = acc.entry(idx).or_insert_with(Q::zero);
                        *e += &(q * scale);
                    }
                }
            }
        }
    }

    fn vec(&mut self, tag: u8, f: &GradedMap) -> SparseVec {
        let mut acc = BTreeMap::new();
        self.accumulate(tag, f, &Q::one(), &mut acc);
        acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
    }

    fn vec2(&mut self, a: &GradedMap, b: &GradedMap, scale: &Q) -> SparseVec {
        let mut acc = BTreeMap::new();
        self.accumulate(0, a, scale, &mut acc);
        self.accumulate(1, b, scale, &mut acc);
        acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
    }
}

/// Degree-0 chain maps `C -> D` modulo null-homotopic ones.
#[derive(Clone, Debug)]
pub struct ClassSpace {
    pub dimension: usize,
    /// Dimension of the space of all degree-0 chain maps.
    pub chain_maps: usize,
    /// Dimension of the null-homotopic subspace.
    pub null_homotopic: usize,
    /// Chain maps whose classes form a basis.
    pub representatives: Vec<GradedMap>,
}

fn check_strands(c: &Complex, d: &Complex) -> Result<()> {
    if c.strands() != d.strands() {
        return Err(Error::StrandMismatch { left: c.strands(), right: d.strands() });
    }
    Ok(())
}

pub fn homotopy_class_space(c: &Arc<Complex>, d: &Arc<Complex>) -> Result<ClassSpace> {
    check_strands(c, d)?;
    let fs = MapSpace::new(c, d, 0);
    let mut raw = Raw::default();
    let cols: Vec<SparseVec> = fs.boundaries().iter().map(|m| raw.vec(0, m)).collect();
    let cycles: Vec<GradedMap> = kernel(&cols).iter().map(|x| fs.combine(x)).collect();
    let hs = MapSpace::new(c, d, -1);
    let mut raw = Raw::default();
    let mut ech = Echelon::new();
    for m in hs.boundaries() {
        ech.insert(&raw.vec(0, &m), &[]);
    }
    let null_homotopic = ech.rank();
    let mut representatives = Vec::new();
    for f in &cycles {
        if let Insert::Pivot(_) = ech.insert(&raw.vec(0, f), &[]) {
            representatives.push(f.clone());
        }
    }
    Ok(ClassSpace { dimension: representatives.len(), chain_maps: cycles.len(), null_homotopic, representatives })
}

/// A map `h` of degree `deg f - 1` with `δh = f`, if one exists.
pub fn null_homotopy(f: &GradedMap) -> Result<Option<GradedMap>> {
    let hs = MapSpace::new(f.source(), f.target(), f.degree() - 1);
    if f.is_zero() {
        return Ok(Some(hs.combine(&[])));
    }
    let mut raw = Raw::default();
    let cols: Vec<SparseVec> = hs.boundaries().iter().map(|m| raw.vec(0, m)).collect();
    let b = raw.vec(0, f);
    let Some(x) = solve(&cols, &b) else {
        return Ok(None);
    };
    let h = hs.combine(&x);
    if h.commutator() != *f {
        return Err(Error::Verification("null-homotopy does not reproduce the map".into()));
    }
    Ok(Some(h))
}

/// Bounds of the coefficient lattice used by the equivalence search.
#[derive(Clone, Debug, Serialize)]
pub struct SearchOptions {
    pub bound: i64,
    pub max_points: usize,
}

impl Default for SearchOptions {
    fn default() -> SearchOptions {
        SearchOptions { bound: 2, max_points: 5000 }
    }
}

impl SearchOptions {
    pub fn describe(&self) -> String {
        format!(
            "coefficients in {{-{b}..{b}}}^k minus 0, ordered by support size, then l1 norm, then lexicographically with 1 < -1 < 2 < -2 < ...; at most {} points",
            self.max_points,
            b = self.bound
        )
    }
}

fn value_key(v: i64) -> (i64, bool) {
    (v.abs(), v < 0)
}

/// Nonzero integer vectors of length `k` with entries in `[-bound, bound]`
/// in search order.
pub fn lattice_points(k: usize, opts: &SearchOptions) -> Vec<Vec<i64>> {
    let mut values: Vec<i64> = (1..=opts.bound).flat_map(|v| [v, -v]).collect();
    values.sort_by_key(|&v| value_key(v));
    let mut out = Vec::new();
    for support in 1..=k {
        let mut level = Vec::new();
        let mut positions: Vec<usize> = (0..support).collect();
        loop {
            let mut choice = vec![0usize; support];
            loop {
                let mut v = vec![0i64; k];
                for (slot, &p) in positions.iter().enumerate() {
                    v[p] = values[choice[slot]];
                }
                level.push(v);
                let Some(i) = (0..support).rev().find(|&i| choice[i] + 1 < values.len()) else {
                    break;
                };
                choice[i] += 1;
                for c in &mut choice[i + 1..] {
                    *c = 0;
                }
                if level.len() > opts.max_points {
                    break;
                }
            }
            let Some(i) = (0..support).rev().find(|&i| positions[i] < k - support + i) else {
                break;
            };
            positions[i] += 1;
            for j in i + 1..support {
                positions[j] = positions[j - 1] + 1;
            }
            if level.len() > opts.max_points {
                break;
            }
        }
        level.sort_by(|a, b| {
            let l1 = |v: &Vec<i64>| v.iter().map(|x| x.abs()).sum::<i64>();
            let key = |v: &Vec<i64>| v.iter().map(|&x| if x == 0 { (i64::MAX, false) } else { value_key(x) }).collect::<Vec<_>>();
            l1(a).cmp(&l1(b)).then_with(|| key(a).cmp(&key(b)))
        });
        out.extend(level);
        if out.len() >= opts.max_points {
            out.truncate(opts.max_points);
            break;
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub enum Method {
    Identical,
    /// A sequence of far-commutation isomorphisms, each swapping the atoms
    /// at positions `t, t+1`.
    Relabel { swaps: Vec<usize> },
    Lattice { coefficients: Vec<i64>, tried: usize },
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    pub equivalence: Option<Equivalence>,
    pub method: Option<Method>,
    pub class_dimension: Option<usize>,
    pub lattice: String,
}

impl SearchResult {
    pub fn found(&self) -> bool {
        self.equivalence.is_some()
    }
}

/// Shortest sequence of adjacent far commutations taking `from` to `to`.
pub(crate) fn far_commutation_path(from: &[Atom], to: &[Atom]) -> Option<Vec<usize>> {
    if from.len() != to.len() {
        return None;
    }
    let mut seen: HashSet<Vec<Atom>> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(from.to_vec());
    queue.push_back((from.to_vec(), Vec::new()));
    while let Some((w, path)) = queue.pop_front() {
        if w == to {
            return Some(path);
        }
        if seen.len() > 200_000 {
            return None;
        }
        for t in 0..w.len().saturating_sub(1) {
            if w[t].commutes_with(&w[t + 1]) {
                let mut v = w.clone();
                v.swap(t, t + 1);
                if seen.insert(v.clone()) {
                    let mut p = path.clone();
                    p.push(t);
                    queue.push_back((v, p));
                }
            }
        }
    }
    None
}

/// The isomorphism `F(..a b..) ≅ F(..b a..)` for far-commuting atoms at
/// positions `t, t+1`: a permutation of tensor factors with sign
/// `(-1)^{deg_a deg_b}`.
pub fn far_swap(c: &Arc<Complex>, t: usize) -> Result<Equivalence> {
    let p = c.presentation().ok_or_else(|| Error::Shape("far_swap needs a complex built from atoms".into()))?;
    if t + 1 >= p.atoms.len() || !p.atoms[t].commutes_with(&p.atoms[t + 1]) {
        return Err(Error::Shape(format!("atoms at {} and {} do not commute", t, t + 1)));
    }
    let mut atoms = p.atoms.clone();
    atoms.swap(t, t + 1);
    let n = c.strands();
    let target = Arc::new(Complex::from_atoms(n, &atoms)?.shift(p.shift));
    let mut f = GradedMap::zero(c.clone(), target.clone(), 0);
    let mut g = GradedMap::zero(target.clone(), c.clone(), 0);
    for k in c.degrees() {
        let positions: HashMap<&Vec<(i32, u32)>, usize> =
            target.term(k).iter().enumerate().map(|(i, s)| (&s.label, i)).collect();
        for (ci, s) in c.term(k).iter().enumerate() {
            let mut label = s.label.clone();
            label.swap(t, t + 1);
            let ti = *positions.get(&label).ok_or_else(|| Error::NotFound("relabeled summand".into()))?;
            let before = (0..t).filter(|&j| p.atoms[j].has_letter_in(s.label[j].0)).count();
            let total = (0..p.atoms.len()).filter(|&j| p.atoms[j].has_letter_in(s.label[j].0)).count();
            let both = p.atoms[t].has_letter_in(s.label[t].0) && p.atoms[t + 1].has_letter_in(s.label[t + 1].0);
            let sign = if (s.label[t].0 * s.label[t + 1].0) % 2 == 0 { Q::one() } else { -Q::one() };
            let rank = 1usize << total;
            let mut perm = PolyMatrix::zeros(n, rank, rank);
            for idx in 0..rank {
                let mut out = idx;
                if both {
                    let hi = 1 << (total - 1 - before);
                    let lo = hi >> 1;
                    let (bh, bl) = (idx & hi != 0, idx & lo != 0);
                    out = idx & !(hi | lo);
                    if bh {
                        out |= lo;
                    }
                    if bl {
                        out |= hi;
                    }
                }
                perm.set(out, idx, crate::poly::Poly::constant(n, sign.clone()));
            }
            f.add_block(k, ti, ci, &perm);
            g.add_block(k, ci, ti, &perm.transpose());
        }
    }
    let e = Equivalence::from_iso(f, g);
    e.verify()?;
    Ok(e)
}

fn relabel_equivalence(c: &Arc<Complex>, d: &Arc<Complex>) -> Result<Option<(Equivalence, Vec<usize>)>> {
    let (Some(pc), Some(pd)) = (c.presentation(), d.presentation()) else {
        return Ok(None);
    };
    if pc.shift != pd.shift {
        return Ok(None);
    }
    let Some(path) = far_commutation_path(&pc.atoms, &pd.atoms) else {
        return Ok(None);
    };
    let mut eq = Equivalence::identity(c.clone());
    for &t in &path {
        let step = far_swap(eq.target(), t)?;
        eq = eq.then(&step)?;
    }
    Ok(Some((eq.retarget(c.clone(), d.clone())?, path)))
}

/// Searches for a homotopy equivalence `C ≃ D`. Identical complexes and
/// far-commutation relabelings are recognised directly; otherwise chain
/// maps `f` are drawn from the class space along the documented lattice
/// and `(g, h, k)` is solved for exactly.
pub fn find_homotopy_equivalence(c: &Arc<Complex>, d: &Arc<Complex>, opts: &SearchOptions) -> Result<SearchResult> {
    check_strands(c, d)?;
    let lattice = opts.describe();
    let found = |e: Equivalence, m: Method, dim: Option<usize>| -> Result<SearchResult> {
        e.verify()?;
        Ok(SearchResult { equivalence: Some(e), method: Some(m), class_dimension: dim, lattice: lattice.clone() })
    };
    if same_complex(c, d) {
        let e = Equivalence::identity(c.clone()).retarget(c.clone(), d.clone())?;
        return found(e, Method::Identical, None);
    }
    if let Some((e, swaps)) = relabel_equivalence(c, d)? {
        return found(e, Method::Relabel { swaps }, None);
    }
    let none = |dim: Option<usize>| SearchResult { equivalence: None, method: None, class_dimension: dim, lattice: lattice.clone() };
    let forward = homotopy_class_space(c, d)?;
    if forward.dimension == 0 {
        return Ok(none(Some(0)));
    }
    let backward = homotopy_class_space(d, c)?;
    if backward.dimension == 0 {
        return Ok(none(Some(forward.dimension)));
    }
    let hs = MapSpace::new(c, c, -1);
    let ks = MapSpace::new(d, d, -1);
    let ng = backward.dimension;
    let mut raw = Raw::default();
    let mut base = Echelon::new();
    let zero_c = GradedMap::zero(c.clone(), c.clone(), 0);
    let zero_d = GradedMap::zero(d.clone(), d.clone(), 0);
    for (j, m) in hs.boundaries().iter().enumerate() {
        base.insert(&raw.vec2(m, &zero_d, &-Q::one()), &[(ng + j, Q::one())]);
    }
    for (j, m) in ks.boundaries().iter().enumerate() {
        base.insert(&raw.vec2(&zero_c, m, &-Q::one()), &[(ng + hs.len() + j, Q::one())]);
    }
    let rhs = raw.vec2(&GradedMap::identity(c.clone()), &GradedMap::identity(d.clone()), &Q::one());
    let points = lattice_points(forward.dimension, opts);
    for (tried, lambda) in points.iter().enumerate() {
        let mut f = GradedMap::zero(c.clone(), d.clone(), 0);
        for (rep, &l) in forward.representatives.iter().zip(lambda) {
            if l != 0 {
                f = f.add(&rep.scale(&Q::from_int(l)))?;
            }
        }
        let mut ech = base.clone();
        for (i, rep) in backward.representatives.iter().enumerate() {
            let col = raw.vec2(&rep.compose(&f)?, &f.compose(rep)?, &Q::one());
            ech.insert(&col, &[(i, Q::one())]);
        }
        let Some(x) = solve_with(&ech, &rhs) else {
            continue;
        };
        let mut g = GradedMap::zero(d.clone(), c.clone(), 0);
        let (mut hx, mut kx) = (Vec::new(), Vec::new());
        for (j, q) in x {
            if j < ng {
                g = g.add(&backward.representatives[j].scale(&q))?;
            } else if j < ng + hs.len() {
                hx.push((j - ng, q));
            } else {
                kx.push((j - ng - hs.len(), q));
            }
        }
        let e = Equivalence { f, g, h: hs.combine(&hx), k: ks.combine(&kx) };
        return found(e, Method::Lattice { coefficients: lambda.clone(), tried: tried + 1 }, Some(forward.dimension));
    }
    Ok(none(Some(forward.dimension)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{tensor_r_complexes, Complex};

    fn word(n: usize, letters: &[(usize, bool)]) -> Arc<Complex> {
        let atoms: Vec<Atom> = letters.iter().map(|&(i, positive)| Atom::Crossing { i, positive }).collect();
        Arc::new(Complex::from_atoms(n, &atoms).unwrap())
    }

    #[test]
    fn lattice_order() {
        let pts = lattice_points(2, &SearchOptions::default());
        assert_eq!(pts.len(), 24);
        assert_eq!(pts[0], vec![1, 0]);
        assert_eq!(pts[1], vec![-1, 0]);
        assert_eq!(pts[2], vec![0, 1]);
        assert!(pts.iter().all(|p| p.iter().any(|&x| x != 0)));
        let small = SearchOptions { bound: 1, max_points: 3 };
        assert_eq!(lattice_points(3, &small).len(), 3);
    }

    #[test]
    fn unit_classes() {
        let r = Arc::new(Complex::unit(2));
        let s = homotopy_class_space(&r, &r).unwrap();
        assert_eq!(s.dimension, 1);
        let f = word(2, &[(1, true)]);
        assert_eq!(homotopy_class_space(&f, &r).unwrap().dimension, 0);
    }

    #[test]
    fn null_homotopies() {
        let f = word(2, &[(1, true)]);
        let id = GradedMap::identity(f.clone());
        assert!(null_homotopy(&id).unwrap().is_none());
        let z = GradedMap::zero(f.clone(), f.clone(), 0);
        assert!(null_homotopy(&z).unwrap().unwrap().is_zero());
    }

    #[test]
    fn reidemeister_two_by_search() {
        let c = word(2, &[(1, true), (1, false)]);
        let r = Arc::new(Complex::unit(2));
        let res = find_homotopy_equivalence(&c, &r, &SearchOptions::default()).unwrap();
        let e = res.equivalence.expect("R2 equivalence");
        e.verify().unwrap();
        assert!(matches!(res.method, Some(Method::Lattice { .. })));
    }

    #[test]
    fn distinct_generators_are_not_equivalent() {
        let a = word(3, &[(1, true)]);
        let b = word(3, &[(2, true)]);
        let res = find_homotopy_equivalence(&a, &b, &SearchOptions::default()).unwrap();
        assert!(!res.found());
    }

    #[test]
    fn far_commutation_relabels() {
        let a = word(4, &[(1, true), (3, false)]);
        let b = word(4, &[(3, false), (1, true)]);
        let res = find_homotopy_equivalence(&a, &b, &SearchOptions::default()).unwrap();
        assert!(matches!(res.method, Some(Method::Relabel { .. })));
        let e = res.equivalence.unwrap();
        assert!(e.is_isomorphism());
        let direct = far_swap(&a, 0).unwrap();
        assert_eq!(**direct.target(), *b);
        let _ = tensor_r_complexes(&a, &b).unwrap();
    }

    #[test]
    fn composition_and_inverse_of_equivalences() {
        let c = word(2, &[(1, true), (1, false)]);
        let r = Arc::new(Complex::unit(2));
        let e = find_homotopy_equivalence(&c, &r, &SearchOptions::default()).unwrap().equivalence.unwrap();
        let back = e.inverse();
        back.verify().unwrap();
        let round = e.then(&back).unwrap();
        round.verify().unwrap();
        let lifted = e.star_left(&word(2, &[(1, true)])).unwrap();
        lifted.verify().unwrap();
        let lifted = e.star_right(&word(2, &[(1, false)])).unwrap();
        lifted.verify().unwrap();
        e.induce(1, 1).unwrap().verify().unwrap();
    }
}
