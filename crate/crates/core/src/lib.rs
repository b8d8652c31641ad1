//! Exact computations in the type A Hecke category: Bott–Samelson bimodules,
//! Rouquier complexes, cabled crossings and checks of the prebraiding axioms.

pub mod bimodule;
pub mod braid;
pub mod complex;
pub mod error;
pub mod hecke;
pub mod laurent;
pub mod linalg;
pub mod matrix;
pub mod morphism;
pub mod perm;
pub mod poly;
pub mod prebraid;
pub mod rational;
pub mod rouquier;

pub use bimodule::{BSWord, Bimodule, Obj};
pub use braid::BraidWord;
pub use complex::{Complex, Equivalence, GradedMap};
pub use error::{Error, Result};
pub use hecke::HeckeElement;
pub use laurent::Laurent;
pub use matrix::PolyMatrix;
pub use morphism::BimoduleMap;
pub use perm::Perm;
pub use poly::{Monomial, Poly};
pub use rational::Q;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/polynomials.md")]
    mod polynomials {}
    #[doc = include_str!("../../../book/src/bimodules.md")]
    mod bimodules {}
    #[doc = include_str!("../../../book/src/morphisms.md")]
    mod morphisms {}
    #[doc = include_str!("../../../book/src/complexes.md")]
    mod complexes {}
    #[doc = include_str!("../../../book/src/rouquier.md")]
    mod rouquier {}
    #[doc = include_str!("../../../book/src/hecke.md")]
    mod hecke {}
    #[doc = include_str!("../../../book/src/prebraid.md")]
    mod prebraid {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
