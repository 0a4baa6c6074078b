//! Finite sets, free-monoid sets over them, maps and pullbacks.

mod elem;
mod map;
mod pullback;
mod set;

pub use elem::{canonical_sort, Elem};
pub use map::{MapF, NativeFn, Rule, Struct};
pub use pullback::{list_decompositions, pullback, Pullback};
#[allow(unused_imports)]
pub(crate) use set::splits_exact;
pub use set::{Enumerated, FiberFiniteSet, SetExpr, WidePullback};

#[cfg(test)]
mod tests;
