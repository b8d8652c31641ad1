//! Rouquier complexes of braid words, cabled crossings, their Coxeter
//! factorizations and the slide equivalences `X ⋆ Y ≃ swap(Y) ⋆ X`.

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;

use crate::bimodule::BSWord;
use crate::braid::BraidWord;
use crate::complex::{
    far_swap, find_homotopy_equivalence, tensor_r_complexes, Atom, Complex, Equivalence, Method, SearchOptions,
};
use crate::error::{Error, Result};

/// `F(w)`: the `⋆`-product of the generator complexes; `F(∅) = R`.
pub fn rouquier(w: &BraidWord) -> Result<Complex> {
    Complex::from_atoms(w.strands(), &crossing_atoms(w))
}

/// `F` of a word mixing crossings and single `B_i` factors.
pub fn rouquier_mixed(strands: usize, atoms: &[Atom]) -> Result<Complex> {
    Complex::from_atoms(strands, atoms)
}

pub fn crossing_atoms(w: &BraidWord) -> Vec<Atom> {
    w.letters().iter().map(|&(i, positive)| Atom::Crossing { i, positive }).collect()
}

/// The braid word of the positive or negative `(m, n)` cabled crossing.
pub fn cabled_word(m: usize, n: usize, positive: bool) -> BraidWord {
    let mut letters = Vec::new();
    if positive {
        for i in 1..=m {
            letters.extend((i..i + n).rev().map(|j| (j, true)));
        }
    } else {
        for i in (1..=n).rev() {
            letters.extend((i..i + m).map(|j| (j, false)));
        }
    }
    BraidWord::new(m + n, letters).expect("cabled crossing letters are in range")
}

/// `X_{m,n} = F(cabled word)<-mn>` or `X'_{m,n} = F(...)<mn>`.
pub fn cabled_crossing(m: usize, n: usize, positive: bool) -> Result<Complex> {
    let shift = (m * n) as i32;
    Ok(rouquier(&cabled_word(m, n, positive))?.shift(if positive { -shift } else { shift }))
}

fn star_all(strands: usize, factors: &[Complex]) -> Result<Complex> {
    factors.iter().try_fold(Complex::unit(strands), |acc, f| tensor_r_complexes(&acc, f))
}

#[derive(Clone, Debug, Serialize)]
pub struct CoxeterReport {
    pub m: usize,
    pub n: usize,
    pub positive: bool,
    /// The `⋆`-product of induced Coxeter braids equals the cabled crossing
    /// on the nose.
    pub isomorphic: bool,
    /// The other factorization is homotopy equivalent.
    pub equivalent: bool,
    pub method: Option<Method>,
}

impl CoxeterReport {
    pub fn passed(&self) -> bool {
        self.isomorphic && self.equivalent
    }
}

/// Builds both factorizations of a cabled crossing into induced Coxeter
/// braids; the first must agree exactly, the second up to homotopy.
pub fn coxeter_factorization_check(m: usize, n: usize, positive: bool, opts: &SearchOptions) -> Result<CoxeterReport> {
    let total = m + n;
    let x = Arc::new(cabled_crossing(m, n, positive)?);
    let (exact, up_to_homotopy): (Vec<Complex>, Vec<Complex>) = if m == 0 || n == 0 {
        (Vec::new(), Vec::new())
    } else if positive {
        let col = cabled_crossing(1, n, true)?;
        let row = cabled_crossing(m, 1, true)?;
        (
            (0..m).map(|j| col.induce(j, m - 1 - j)).collect::<Result<_>>()?,
            (0..n).map(|j| row.induce(n - 1 - j, j)).collect::<Result<_>>()?,
        )
    } else {
        let row = cabled_crossing(m, 1, false)?;
        let col = cabled_crossing(1, n, false)?;
        (
            (0..n).map(|j| row.induce(n - 1 - j, j)).collect::<Result<_>>()?,
            (0..m).map(|j| col.induce(j, m - 1 - j)).collect::<Result<_>>()?,
        )
    };
    let lhs = star_all(total, &exact)?;
    let isomorphic = lhs == *x;
    let rhs = Arc::new(star_all(total, &up_to_homotopy)?);
    let res = find_homotopy_equivalence(&x, &rhs, opts)?;
    Ok(CoxeterReport { m, n, positive, isomorphic, equivalent: res.found(), method: res.method })
}

/// Which of the two atomic slides on three strands.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum SlideConfig {
    /// `X_{1,2} ⋆ (1 ⊠ B_1) -> (B_1 ⊠ 1) ⋆ X_{1,2}`.
    OneTwo,
    /// `X_{2,1} ⋆ (B_1 ⊠ 1) -> (1 ⊠ B_1) ⋆ X_{2,1}`.
    TwoOne,
}

impl SlideConfig {
    /// Source and target atoms with the lower crossing index at `a`.
    fn pattern(self, a: usize, positive: bool) -> ([Atom; 3], [Atom; 3]) {
        let c = |i| Atom::Crossing { i, positive };
        let o = |i| Atom::Object { i };
        match self {
            SlideConfig::OneTwo => ([c(a + 1), c(a), o(a + 1)], [o(a), c(a + 1), c(a)]),
            SlideConfig::TwoOne => ([c(a), c(a + 1), o(a)], [o(a + 1), c(a), c(a + 1)]),
        }
    }

    fn matches(window: &[Atom]) -> Option<(SlideConfig, usize, bool)> {
        let Atom::Crossing { i, positive } = window[0] else {
            return None;
        };
        for config in [SlideConfig::OneTwo, SlideConfig::TwoOne] {
            let a = match config {
                SlideConfig::OneTwo => i.checked_sub(1)?,
                SlideConfig::TwoOne => i,
            };
            if a >= 1 && config.pattern(a, positive).0 == window {
                return Some((config, a, positive));
            }
        }
        None
    }
}

#[derive(Clone, Debug)]
pub struct AtomicSlide {
    pub config: SlideConfig,
    pub positive: bool,
    pub equivalence: Equivalence,
    pub class_dimension: Option<usize>,
    pub method: Option<Method>,
}

fn atomic_unshifted(config: SlideConfig, positive: bool, opts: &SearchOptions) -> Result<Arc<AtomicSlide>> {
    type Cache = Mutex<HashMap<(SlideConfig, bool), Arc<AtomicSlide>>>;
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(s) = cache.lock().unwrap().get(&(config, positive)) {
        return Ok(s.clone());
    }
    let (src, tgt) = config.pattern(1, positive);
    let c = Arc::new(Complex::from_atoms(3, &src)?);
    let d = Arc::new(Complex::from_atoms(3, &tgt)?);
    let res = find_homotopy_equivalence(&c, &d, opts)?;
    let Some(equivalence) = res.equivalence else {
        return Err(Error::NotFound(format!("atomic slide {:?} ({}) within {}", config, sign(positive), res.lattice)));
    };
    let s = Arc::new(AtomicSlide { config, positive, equivalence, class_dimension: res.class_dimension, method: res.method });
    Ok(cache.lock().unwrap().entry((config, positive)).or_insert(s).clone())
}

fn sign(positive: bool) -> &'static str {
    if positive {
        "+"
    } else {
        "-"
    }
}

/// The atomic slide between the shifted cabled crossing complexes, with
/// verified two-sided homotopy inverse data.
pub fn atomic_slide(config: SlideConfig, positive: bool, opts: &SearchOptions) -> Result<AtomicSlide> {
    let base = atomic_unshifted(config, positive, opts)?;
    let equivalence = base.equivalence.shift(if positive { -2 } else { 2 });
    equivalence.verify()?;
    Ok(AtomicSlide { equivalence, ..(*base).clone() })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Move {
    /// Swap the far-commuting atoms at `t, t+1`.
    FarSwap(usize),
    /// Replace the three atoms starting at `t` by an atomic slide.
    Atomic { t: usize, config: SlideConfig, a: usize },
}

fn apply(atoms: &[Atom], mv: Move, positive: bool) -> Vec<Atom> {
    let mut v = atoms.to_vec();
    match mv {
        Move::FarSwap(t) => v.swap(t, t + 1),
        Move::Atomic { t, config, a } => v[t..t + 3].copy_from_slice(&config.pattern(a, positive).1),
    }
    v
}

/// Shortest sequence of far commutations and atomic slides from `from` to
/// `to`.
fn slide_path(from: &[Atom], to: &[Atom], positive: bool) -> Option<Vec<Move>> {
    let mut seen: HashSet<Vec<Atom>> = HashSet::from([from.to_vec()]);
    let mut queue = VecDeque::from([(from.to_vec(), Vec::new())]);
    while let Some((w, path)) = queue.pop_front() {
        if w == to {
            return Some(path);
        }
        if seen.len() > 500_000 {
            return None;
        }
        let mut moves = Vec::new();
        for t in 0..w.len().saturating_sub(1) {
            if w[t].commutes_with(&w[t + 1]) {
                moves.push(Move::FarSwap(t));
            }
            if t + 3 <= w.len() {
                if let Some((config, a, p)) = SlideConfig::matches(&w[t..t + 3]) {
                    if p == positive {
                        moves.push(Move::Atomic { t, config, a });
                    }
                }
            }
        }
        for mv in moves {
            let v = apply(&w, mv, positive);
            if seen.insert(v.clone()) {
                let mut p = path.clone();
                p.push(mv);
                queue.push_back((v, p));
            }
        }
    }
    None
}

fn lifted_atomic(
    cur: &Arc<Complex>,
    t: usize,
    config: SlideConfig,
    a: usize,
    positive: bool,
    opts: &SearchOptions,
) -> Result<Equivalence> {
    let p = cur.presentation().expect("slide complexes carry their atoms");
    let n = cur.strands();
    let base = atomic_unshifted(config, positive, opts)?;
    let mid = base.equivalence.induce(a - 1, n - a - 2)?;
    let prefix = Complex::from_atoms(n, &p.atoms[..t])?;
    let suffix = Complex::from_atoms(n, &p.atoms[t + 3..])?;
    let lifted = mid.star_left(&prefix)?.star_right(&suffix)?.shift(p.shift);
    let next = apply(&p.atoms, Move::Atomic { t, config, a }, positive);
    let target = Arc::new(Complex::from_atoms(n, &next)?.shift(p.shift));
    lifted.retarget(cur.clone(), target)
}

#[derive(Clone, Debug)]
pub struct SlideResult {
    pub source: Vec<Atom>,
    pub target: Vec<Atom>,
    pub moves: Vec<Move>,
    pub equivalence: Equivalence,
}

/// `slide_{Y1,Y2} : X_{m,n} ⋆ (Y1 ⊠ Y2) -> (Y2 ⊠ Y1) ⋆ X_{m,n}` assembled from
/// atomic slides and far commutations, verified exactly.
pub fn slide(y1: &BSWord, y2: &BSWord, positive: bool, opts: &SearchOptions) -> Result<SlideResult> {
    let (m, n) = (y1.strands(), y2.strands());
    let total = m + n;
    let x = crossing_atoms(&cabled_word(m, n, positive));
    let shift = (m * n) as i32 * if positive { -1 } else { 1 } + y1.shift() + y2.shift();
    let obj = |i| Atom::Object { i };
    let mut source = x.clone();
    source.extend(y1.letters().iter().map(|&i| obj(i)));
    source.extend(y2.letters().iter().map(|&i| obj(i + m)));
    let mut target: Vec<Atom> = y2.letters().iter().map(|&i| obj(i)).collect();
    target.extend(y1.letters().iter().map(|&i| obj(i + n)));
    target.extend(x);
    let moves = slide_path(&source, &target, positive)
        .ok_or_else(|| Error::NotFound(format!("slide path from {:?} to {:?}", source, target)))?;
    let start = Arc::new(Complex::from_atoms(total, &source)?.shift(shift));
    let mut eq = Equivalence::identity(start);
    for &mv in &moves {
        let cur = eq.target().clone();
        let step = match mv {
            Move::FarSwap(t) => far_swap(&cur, t)?,
            Move::Atomic { t, config, a } => lifted_atomic(&cur, t, config, a, positive, opts)?,
        };
        eq = eq.then(&step)?;
    }
    eq.verify()?;
    Ok(SlideResult { source, target, moves, equivalence: eq })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hecke::HeckeElement;

    fn w(n: usize, text: &str) -> BraidWord {
        BraidWord::parse(n, text).unwrap()
    }

    #[test]
    fn generator_examples() {
        assert_eq!(rouquier(&BraidWord::empty(3)).unwrap().to_string(), "R @ 0");
        assert_eq!(rouquier(&w(2, "s1")).unwrap().to_string(), "B1 @ 0 → R<-1> @ 1");
        assert_eq!(rouquier(&w(2, "s1'")).unwrap().to_string(), "R<1> @ -1 → B1 @ 0");
    }

    #[test]
    fn cabled_words() {
        assert_eq!(cabled_word(1, 1, true), w(2, "s1"));
        assert_eq!(cabled_word(2, 1, true), w(3, "s1 s2"));
        assert_eq!(cabled_word(1, 2, true), w(3, "s2 s1"));
        assert_eq!(cabled_word(2, 2, true), w(4, "s2 s1 s3 s2"));
        assert_eq!(cabled_word(1, 2, false), w(3, "s2' s1'"));
        assert_eq!(cabled_word(2, 1, false), w(3, "s1' s2'"));
        assert_eq!(cabled_word(2, 1, true).inverse(), cabled_word(1, 2, false));
        assert_eq!(cabled_crossing(0, 3, true).unwrap().to_string(), "R @ 0");
        let x = cabled_crossing(1, 1, true).unwrap();
        assert_eq!(x, rouquier(&w(2, "s1")).unwrap().shift(-1));
    }

    #[test]
    fn euler_matches_braid_image() {
        let word = w(3, "s1 s2' s1");
        let e = rouquier(&word).unwrap().euler_characteristic().unwrap();
        assert_eq!(e, HeckeElement::braid_image(&word));
    }

    #[test]
    fn small_coxeter_factorizations() {
        let opts = SearchOptions::default();
        for positive in [true, false] {
            assert!(coxeter_factorization_check(1, 1, positive, &opts).unwrap().passed());
            assert!(coxeter_factorization_check(2, 1, positive, &opts).unwrap().passed());
        }
    }

    #[test]
    fn slide_paths() {
        let c = |i| Atom::Crossing { i, positive: true };
        let o = |i| Atom::Object { i };
        let path = slide_path(&[c(2), c(1), o(2)], &[o(1), c(2), c(1)], true).unwrap();
        assert_eq!(path, vec![Move::Atomic { t: 0, config: SlideConfig::OneTwo, a: 1 }]);
        let path = slide_path(&[c(3), c(2), c(1), o(3)], &[o(2), c(3), c(2), c(1)], true).unwrap();
        assert_eq!(path, vec![Move::FarSwap(2), Move::Atomic { t: 0, config: SlideConfig::OneTwo, a: 2 }]);
    }

    #[test]
    fn trivial_slide_is_identity() {
        let r = slide(&BSWord::empty(1, 0), &BSWord::empty(1, 0), true, &SearchOptions::default()).unwrap();
        assert!(r.moves.is_empty());
        assert!(r.equivalence.is_isomorphism());
    }

    #[test]
    fn atomic_slides_exist() {
        let opts = SearchOptions::default();
        for config in [SlideConfig::OneTwo, SlideConfig::TwoOne] {
            for positive in [true, false] {
                let s = atomic_slide(config, positive, &opts).unwrap();
                assert_eq!(s.class_dimension, Some(1));
                s.equivalence.verify().unwrap();
            }
        }
    }

    #[test]
    fn general_slides() {
        let opts = SearchOptions::default();
        let b1 = |n| BSWord::new(n, vec![1], 0).unwrap();
        let r = slide(&b1(2), &BSWord::empty(1, 0), true, &opts).unwrap();
        assert_eq!(r.moves.len(), 1);
        let r = slide(&BSWord::empty(1, 0), &b1(2), false, &opts).unwrap();
        assert_eq!(r.moves.len(), 1);
        let r = slide(&b1(2), &b1(2), true, &opts).unwrap();
        assert!(r.moves.len() > 2);
        r.equivalence.verify().unwrap();
    }

    #[test]
    fn braid_relation_class_space() {
        let a = Arc::new(rouquier(&w(3, "s1 s2 s1")).unwrap());
        let b = Arc::new(rouquier(&w(3, "s2 s1 s2")).unwrap());
        let s = crate::complex::homotopy_class_space(&a, &b).unwrap();
        assert_eq!((s.dimension, s.chain_maps, s.null_homotopic), (1, 2, 1));
    }
}
