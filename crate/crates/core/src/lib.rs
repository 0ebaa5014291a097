//! The free regular semigroup weakly generated by a set `X`.
//!
//! Elements are represented by mountains: landscapes of generators whose
//! unique peak carries the whole element. Words over `X ∪ X′ ∪ {1}` and the
//! generator tokens are normalised by [`rewrite::beta`]; the product is
//! [`model::mul`]. The [`finite`] module maps generators into a finite
//! regular semigroup given by its multiplication table.
//!
//! ```
//! use weakfree::{GenStore, GWord, rewrite::beta};
//!
//! let s = GenStore::new(["x"]).unwrap();
//! let w = GWord::parse(&s, "x x' x").unwrap();
//! assert_eq!(beta(&s, &w).unwrap().to_string(), "1 1 B(x) x 1");
//! ```
//!
//! ```
//! use weakfree::{model, GenStore, Mountain};
//!
//! let s = GenStore::new(["x", "y"]).unwrap();
//! let u = Mountain::of_text(&s, "x y").unwrap();
//! assert_eq!(model::inverses(&s, &u).unwrap(), vec![u.reverse()]);
//! assert_ne!(Mountain::of_text(&s, "y' x'").unwrap(), u.reverse());
//! ```

pub mod error;
pub mod landscape;
pub mod terms;
pub mod word;
pub mod rewrite;
pub mod model;
pub mod finite;
pub mod sample;
pub mod render;
pub mod selftest;
pub mod cli;

pub use error::{Error, ErrorClass, Result};
pub use finite::{FiniteSemigroup, SkeletonMap, Strategy};
pub use landscape::Landscape;
pub use model::{GreenRel, Mountain, Tri};
pub use terms::{Anchor, Gen, GenStore};
pub use word::{GWord, Token};
