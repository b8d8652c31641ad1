//! Checks of the prebraiding axioms for cabled crossings: hexagons,
//! naturality through slides, and exactness of the cone of the canonical
//! map from the shuffle permutation bimodule.

use std::ops::RangeInclusive;
use std::sync::Arc;

use serde::Serialize;

use crate::bimodule::{BSWord, Obj};
use crate::complex::{
    cone, degreewise_homology_dims, find_homotopy_equivalence, tensor_r_complexes, tensor_r_graded, Atom, BlockMap,
    Complex, GradedMap, HomologyTable, Method, SearchOptions,
};
use crate::error::{Error, Result};
use crate::morphism::{b_to_perm, perm_to_b};
use crate::perm::Perm;
use crate::rouquier::{cabled_crossing, cabled_word, slide, Move};

/// Outcome of comparing two complexes up to homotopy.
#[derive(Clone, Debug, Serialize)]
pub struct Comparison {
    pub left: String,
    pub right: String,
    /// The two sides are equal as complexes.
    pub literal: bool,
    pub found: bool,
    pub method: Option<Method>,
    pub class_dimension: Option<usize>,
    /// Nonzero blocks in `(f, g, h, k)`.
    pub witness_sizes: Option<[usize; 4]>,
}

fn compare(left: Complex, right: Complex, opts: &SearchOptions) -> Result<Comparison> {
    let literal = left == right;
    let (l, r) = (Arc::new(left), Arc::new(right));
    let res = find_homotopy_equivalence(&l, &r, opts)?;
    Ok(Comparison {
        left: l.to_string(),
        right: r.to_string(),
        literal,
        found: res.found(),
        witness_sizes: res.equivalence.as_ref().map(|e| e.sizes()),
        method: res.method,
        class_dimension: res.class_dimension,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct HexagonReport {
    pub strands: [usize; 3],
    /// `β_{x, y⊠z}` against `(1 ⊠ β_{x,z}) ⋆ (β_{x,y} ⊠ 1)`.
    pub first: Comparison,
    /// `β_{x⊠y, z}` against `(β_{x,z} ⊠ 1) ⋆ (1 ⊠ β_{y,z})`.
    pub second: Comparison,
}

impl HexagonReport {
    pub fn passed(&self) -> bool {
        self.first.found && self.second.found
    }
}

fn boxed(c: &Complex, left: usize, right: usize) -> Result<Complex> {
    c.induce(left, right)
}

/// Both hexagons with `β = X` and decorations `x ⊠ y ⊠ z` on the source
/// side of every route.
pub fn hexagon_check(x: &BSWord, y: &BSWord, z: &BSWord, opts: &SearchOptions) -> Result<HexagonReport> {
    let (a, b, c) = (x.strands(), y.strands(), z.strands());
    let total = a + b + c;
    let deco: Vec<Atom> = x
        .boxtimes(y)
        .boxtimes(z)
        .letters()
        .iter()
        .map(|&i| Atom::Object { i })
        .collect();
    let shift = x.shift() + y.shift() + z.shift();
    let d = Complex::from_atoms(total, &deco)?.shift(shift);
    let with_deco = |c: Complex| tensor_r_complexes(&c, &d);

    let lhs1 = with_deco(cabled_crossing(a, b + c, true)?)?;
    let rhs1 = tensor_r_complexes(
        &boxed(&cabled_crossing(a, c, true)?, b, 0)?,
        &boxed(&cabled_crossing(a, b, true)?, 0, c)?,
    )?;
    let first = compare(lhs1, with_deco(rhs1)?, opts)?;

    let lhs2 = with_deco(cabled_crossing(a + b, c, true)?)?;
    let rhs2 = tensor_r_complexes(
        &boxed(&cabled_crossing(a, c, true)?, 0, b)?,
        &boxed(&cabled_crossing(b, c, true)?, a, 0)?,
    )?;
    let second = compare(lhs2, with_deco(rhs2)?, opts)?;
    Ok(HexagonReport { strands: [a, b, c], first, second })
}

#[derive(Clone, Debug, Serialize)]
pub struct NaturalityReport {
    pub m: usize,
    pub n: usize,
    pub positive: bool,
    pub source: String,
    pub target: String,
    pub moves: Vec<Move>,
    /// The slid object is `Y2 ⊠ Y1`.
    pub swapped: bool,
    pub verified: bool,
    pub witness_sizes: [usize; 4],
}

impl NaturalityReport {
    pub fn passed(&self) -> bool {
        self.swapped && self.verified
    }
}

/// Runs `slide(Y1, Y2)` and re-checks the witnesses and the slid object.
pub fn naturality_check(y1: &BSWord, y2: &BSWord, positive: bool, opts: &SearchOptions) -> Result<NaturalityReport> {
    let (m, n) = (y1.strands(), y2.strands());
    let r = slide(y1, y2, positive, opts)?;
    let verified = r.equivalence.verify().is_ok() && r.equivalence.f.is_chain_map();
    let swap = y2.boxtimes(y1);
    let objects: Vec<usize> = r.target.iter().filter(|&a| matches!(a, Atom::Object { .. })).map(|a| a.letter()).collect();
    let x = cabled_crossing(m, n, positive)?;
    let expected = tensor_r_complexes(&Complex::from_atoms(m + n, &r.target[..objects.len()])?, &x)?
        .shift(y1.shift() + y2.shift());
    let swapped = objects == swap.letters() && **r.equivalence.target() == expected;
    Ok(NaturalityReport {
        m,
        n,
        positive,
        source: r.equivalence.source().to_string(),
        target: r.equivalence.target().to_string(),
        moves: r.moves,
        swapped,
        verified,
        witness_sizes: r.equivalence.sizes(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct HlocReport {
    pub m: usize,
    pub n: usize,
    pub map: String,
    pub chain_map: bool,
    pub window: [i32; 2],
    pub homology: HomologyTable,
    pub exact: bool,
}

impl HlocReport {
    pub fn passed(&self) -> bool {
        self.chain_map && self.exact
    }
}

fn single_map(src: Complex, tgt: Complex, k: i32, m: crate::matrix::PolyMatrix) -> GradedMap {
    let (s, t) = (Arc::new(src), Arc::new(tgt));
    let mut f = GradedMap::zero(s, t, 0);
    let mut b: BlockMap = f.empty_comp(k);
    b.insert(0, 0, m);
    f.set(k, b);
    f
}

/// `R_{s_i}<1> -> F(σ_i)` or `F(σ_i^{-1}) -> R_{s_i}<-1>`.
pub fn generator_quasi_iso(n: usize, i: usize, positive: bool) -> Result<GradedMap> {
    let perm = |shift| Complex::single(Obj::Perm { perm: Perm::simple(n, i), shift }, 0);
    let f = Complex::atom(n, Atom::Crossing { i, positive })?;
    Ok(if positive {
        single_map(perm(1), f, 0, perm_to_b(n, i)?.matrix)
    } else {
        single_map(f, perm(-1), 0, b_to_perm(n, i)?.matrix)
    })
}

/// Cone of a generator quasi-isomorphism, with its homology in a window.
pub fn generator_cone_homology(n: usize, i: usize, positive: bool, window: RangeInclusive<i32>) -> Result<HlocReport> {
    let f = generator_quasi_iso(n, i, positive)?;
    report(0, 0, &f, window)
}

fn report(m: usize, n: usize, f: &GradedMap, window: RangeInclusive<i32>) -> Result<HlocReport> {
    let chain_map = f.is_chain_map() && f.blocks_valid();
    let c = cone(f)?;
    let homology = degreewise_homology_dims(&c, window.clone());
    Ok(HlocReport {
        m,
        n,
        map: format!("{} ⇒ {}", f.source(), f.target()),
        chain_map,
        window: [*window.start(), *window.end()],
        exact: homology.all_zero(),
        homology,
    })
}

/// The canonical map `R_{w_{m,n}} -> X_{m,n}`: the `⋆`-product of the
/// generator maps, shifted by `<-mn>`.
pub fn shuffle_map(m: usize, n: usize) -> Result<GradedMap> {
    let total = m + n;
    let word = cabled_word(m, n, true);
    let mut maps = word.letters().iter().map(|&(i, _)| generator_quasi_iso(total, i, true));
    let Some(first) = maps.next() else {
        return Ok(GradedMap::identity(Arc::new(Complex::unit(total))));
    };
    let mut f = first?;
    for g in maps {
        f = tensor_r_graded(&f, &g?)?;
    }
    Ok(f.shift(-((m * n) as i32)))
}

/// The cone of `R_{w_{m,n}} -> X_{m,n}` has no homology in the window.
pub fn hloc_compatibility(m: usize, n: usize, window: RangeInclusive<i32>) -> Result<HlocReport> {
    if m + n == 0 {
        return Err(Error::Shape("hloc check needs at least one strand".into()));
    }
    let f = shuffle_map(m, n)?;
    report(m, n, &f, window)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn empty(n: usize) -> BSWord {
        BSWord::empty(n, 0)
    }

    #[test]
    fn degenerate_hexagon_is_literal() {
        let r = hexagon_check(&empty(0), &empty(1), &empty(1), &SearchOptions::default()).unwrap();
        assert!(r.first.literal && r.second.literal);
        assert!(r.passed());
    }

    #[test]
    fn smallest_hexagon() {
        let r = hexagon_check(&empty(1), &empty(1), &empty(1), &SearchOptions::default()).unwrap();
        assert!(r.passed());
    }

    #[test]
    fn generator_cones_are_exact() {
        for positive in [true, false] {
            let r = generator_cone_homology(2, 1, positive, -6..=6).unwrap();
            assert!(r.chain_map);
            assert!(r.exact, "{:?}", r.homology);
        }
    }

    #[test]
    fn hloc_small() {
        let r = hloc_compatibility(1, 1, -6..=6).unwrap();
        assert!(r.passed(), "{:?}", r);
        let r = hloc_compatibility(0, 2, -4..=4).unwrap();
        assert!(r.passed());
    }

    #[test]
    fn naturality_examples() {
        let opts = SearchOptions::default();
        let b1 = BSWord::new(2, vec![1], 0).unwrap();
        assert!(naturality_check(&b1, &empty(1), true, &opts).unwrap().passed());
        assert!(naturality_check(&empty(1), &b1, true, &opts).unwrap().passed());
        let r = naturality_check(&empty(2), &empty(1), true, &opts).unwrap();
        assert!(r.passed() && r.moves.is_empty());
    }
}
