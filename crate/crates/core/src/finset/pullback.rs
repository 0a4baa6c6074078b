use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;

use super::{Elem, MapF, SetExpr};
use crate::error::{Error, Result};

/// A pullback apex with its two projections.
#[derive(Clone, Debug)]
pub struct Pullback {
    pub apex: SetExpr,
    pub proj_left: MapF,
    pub proj_right: MapF,
}

/// The pullback of `f: A → C` and `g: B → C`; its elements are pairs `(a, b)` with `f(a) = g(b)`.
pub fn pullback(f: &MapF, g: &MapF) -> Result<Pullback> {
    if f.codomain != g.codomain {
        return Err(Error::CodomainMismatch(format!("{} vs {}", f.codomain, g.codomain)));
    }
    let feasible = f.domain.exactly_enumerable()
        || g.domain.exactly_enumerable()
        || (f.domain.as_fibered().is_some() && g.domain.as_fibered().is_some());
    if !feasible {
        return Err(Error::InfeasibleEnumeration(format!("neither {} nor {} has finite fibers", f.domain, g.domain)));
    }
    let apex = SetExpr::pullback(vec![f.domain.clone(), g.domain.clone()], vec![(f.clone(), g.clone())]);
    Ok(Pullback { proj_left: MapF::proj(&apex, 0), proj_right: MapF::proj(&apex, 1), apex })
}

/// All lists `[b_1..b_n]` with `g(b_i)` the i-th entry of `target`.
pub fn list_decompositions(target: &Elem, g: &MapF) -> BTreeSet<Elem> {
    let Some(entries) = target.as_nest() else { return BTreeSet::new() };
    let bound = entries.len().max(1);
    SetExpr::fm(g.domain.clone()).preimage(&MapF::map_of(g), target, bound).items.into_iter().collect()
}
