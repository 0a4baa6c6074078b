//! The equipment of spans of finite and fiber-finite sets.

mod action;
mod assoc;
mod cell;

pub use action::{act_cell, act_opscalar, act_scalar, embed, post_left, star, AdjointWitness, Side};
pub use assoc::{associator, coherence_routes, compositions, Associator, Partition};
pub use cell::{cell_equal, hcomp, whisker, CellComparison, SpanCell};

use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::finset::{Elem, Enumerated, MapF, SetExpr};

/// A span `source ← apex → target`, read as a vector `source ⇸ target`.
#[derive(Clone, PartialEq)]
pub struct Span {
    pub source: SetExpr,
    pub target: SetExpr,
    pub apex: SetExpr,
    pub left: MapF,
    pub right: MapF,
}

impl Span {
    pub fn new(left: MapF, right: MapF) -> Result<Span> {
        if left.domain != right.domain {
            return Err(Error::BoundaryMismatch(format!("legs start at {} and {}", left.domain, right.domain)));
        }
        Ok(Span {
            source: left.codomain.clone(),
            target: right.codomain.clone(),
            apex: left.domain.clone(),
            left,
            right,
        })
    }

    /// The elements over `(s, t)`.
    pub fn fiber(&self, s: &Elem, t: &Elem, bound: usize) -> Enumerated {
        self.apex.preimage(&self.legs(), &Elem::pair(s.clone(), t.clone()), bound)
    }

    /// `<left, right>` into `source × target`.
    pub fn legs(&self) -> MapF {
        MapF::pairing(
            alloc::vec![self.left.clone(), self.right.clone()],
            &SetExpr::product(alloc::vec![self.source.clone(), self.target.clone()]),
        )
    }

    /// Same span with the left leg post-composed by `f`.
    pub fn with_left(&self, f: &MapF) -> Span {
        Span { source: f.codomain.clone(), left: self.left.then(f), ..self.clone() }
    }

    /// Same span with the right leg post-composed by `g`.
    pub fn with_right(&self, g: &MapF) -> Span {
        Span { target: g.codomain.clone(), right: self.right.then(g), ..self.clone() }
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} <-{}- {} -{}-> {}", self.source, self.left, self.apex, self.right, self.target)
    }
}

impl fmt::Debug for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `i_x`: both legs the identity.
pub fn identity(x: &SetExpr) -> Span {
    Span {
        source: x.clone(),
        target: x.clone(),
        apex: x.clone(),
        left: MapF::identity(x),
        right: MapF::identity(x),
    }
}

/// The n-fold composite of a chain in path order, as a single wide pullback.
///
/// A chain of one span is returned unchanged. Use [`compose_chain`] when the chain may be empty.
pub fn compose_n(chain: &[Span]) -> Result<Span> {
    match chain {
        [] => Err(Error::ChainMismatch { position: 0, detail: "empty chain without an anchor object".into() }),
        [a] => Ok(a.clone()),
        _ => {
            for (i, w) in chain.windows(2).enumerate() {
                if w[0].target != w[1].source {
                    return Err(Error::ChainMismatch {
                        position: i + 1,
                        detail: format!("target {} vs source {}", w[0].target, w[1].source),
                    });
                }
            }
            let factors: Vec<SetExpr> = chain.iter().map(|a| a.apex.clone()).collect();
            let links = chain.windows(2).map(|w| (w[0].right.clone(), w[1].left.clone())).collect();
            let apex = SetExpr::pullback(factors, links);
            let n = chain.len();
            let left = MapF::proj(&apex, 0).then(&chain[0].left);
            let right = MapF::proj(&apex, n - 1).then(&chain[n - 1].right);
            Span::new(left, right)
        }
    }
}

/// Like [`compose_n`], with `identity(x0)` for the empty chain.
pub fn compose_chain(x0: &SetExpr, chain: &[Span]) -> Result<Span> {
    if chain.is_empty() {
        return Ok(identity(x0));
    }
    if chain[0].source != *x0 {
        return Err(Error::ChainMismatch { position: 0, detail: format!("anchor {x0} vs source {}", chain[0].source) });
    }
    compose_n(chain)
}

/// The objects `x_0, …, x_n` along a chain anchored at `x0`.
pub fn chain_objects(x0: &SetExpr, chain: &[Span]) -> Vec<SetExpr> {
    let mut v = alloc::vec![x0.clone()];
    v.extend(chain.iter().map(|a| a.target.clone()));
    v
}

/// Component `p` of an element of the flat composite of `n` spans with apex `apex`.
pub(crate) fn component(apex: &SetExpr, n: usize, p: usize) -> MapF {
    if n >= 2 {
        MapF::proj(apex, p)
    } else {
        MapF::identity(apex)
    }
}

/// The canonical map into a composite apex from its components.
pub(crate) fn tuple_into(apex: &SetExpr, mut comps: Vec<MapF>) -> MapF {
    if comps.len() == 1 {
        comps.pop().unwrap().with_codomain(apex)
    } else {
        MapF::pairing(comps, apex)
    }
}
