//! Equipments of spans and of quantale-valued matrices, their list-monad lifts and Kleisli
//! equipments, and generalized multicategories built on them.
//!
//! Everything here works on finite or fiber-finite data. Infinite sets are handled by bounded
//! enumeration and every check reports whether it was exhaustive.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod error;
pub mod coverage;
pub mod verdict;
pub mod finset;
pub mod fixtures;
pub mod spaneq;
pub mod listmonad;
pub mod quantale;
pub mod kleisli;
pub mod monoids;
pub mod algebras;
pub mod staradj;
pub mod prof;
pub mod laws;

pub use error::{Error, Result};
pub use coverage::Coverage;
pub use verdict::Verdict;
pub use finset::{Elem, MapF, SetExpr};
