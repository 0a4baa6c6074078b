use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use super::{chain_objects, compose_chain, component, tuple_into, Span, SpanCell};
use crate::coverage::Coverage;
use crate::error::{Error, Result};
use crate::finset::{MapF, SetExpr};

/// An ordered splitting `total = blocks[0] + blocks[1] + …`; zero blocks stand for identities.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    pub blocks: Vec<usize>,
}

impl Partition {
    pub fn new(blocks: Vec<usize>) -> Partition {
        Partition { blocks }
    }

    pub fn total(&self) -> usize {
        self.blocks.iter().sum()
    }

    /// Start offsets of the blocks in the flat chain.
    pub fn offsets(&self) -> Vec<usize> {
        let mut o = Vec::with_capacity(self.blocks.len());
        let mut acc = 0;
        for b in &self.blocks {
            o.push(acc);
            acc += b;
        }
        o
    }

    /// Splits a chain into the blocks of this partition.
    pub fn split<'a, T>(&self, chain: &'a [T]) -> Vec<&'a [T]> {
        self.offsets().into_iter().zip(&self.blocks).map(|(o, b)| &chain[o..o + b]).collect()
    }

    pub(crate) fn check(&self, len: usize) -> Result<()> {
        if self.total() != len {
            return Err(Error::PartitionMismatch { partition: format!("{self}"), len });
        }
        Ok(())
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            write!(f, "{b}")?;
        }
        if self.blocks.is_empty() {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// All partitions of `total` into between 1 and `max_blocks` blocks, zero blocks allowed.
pub fn compositions(total: usize, max_blocks: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    for k in 1..=max_blocks {
        for p in crate::finset::splits_exact(total, k) {
            out.push(Partition::new(p));
        }
    }
    out
}

/// The associator for one partition of a chain, in both directions.
#[derive(Clone, Debug)]
pub struct Associator {
    pub nested: Span,
    pub flat: Span,
    /// nested ⇒ flat
    pub forward: SpanCell,
    /// flat ⇒ nested
    pub backward: SpanCell,
}

/// `ξ` for `partition` on `chain` (anchored at `x0`): nested composite ⇒ flat composite and back.
pub fn associator(partition: &Partition, x0: &SetExpr, chain: &[Span], bound: usize) -> Result<Associator> {
    partition.check(chain.len())?;
    let objects = chain_objects(x0, chain);
    let offsets = partition.offsets();
    let blocks: Vec<Span> = partition
        .split(chain)
        .into_iter()
        .zip(&offsets)
        .map(|(b, o)| compose_chain(&objects[*o], b))
        .collect::<Result<_>>()?;
    let nested = compose_chain(x0, &blocks)?;
    let flat = compose_chain(x0, chain)?;
    let (n, k) = (chain.len(), blocks.len());

    // nested -> flat
    let forward_map = if n == 0 {
        nested.left.with_codomain(&flat.apex)
    } else {
        let mut comps = Vec::with_capacity(n);
        for (j, &nj) in partition.blocks.iter().enumerate() {
            let outer = component(&nested.apex, k, j);
            for i in 0..nj {
                comps.push(outer.then(&component(&blocks[j].apex, nj, i)));
            }
        }
        tuple_into(&flat.apex, comps)
    };

    // flat -> nested
    let backward_map = {
        let mut comps = Vec::with_capacity(k);
        for (j, (&o, &nj)) in offsets.iter().zip(&partition.blocks).enumerate() {
            let c = if nj == 0 {
                let obj = if n == 0 {
                    MapF::identity(&flat.apex)
                } else if o < n {
                    component(&flat.apex, n, o).then(&chain[o].left)
                } else {
                    component(&flat.apex, n, n - 1).then(&chain[n - 1].right)
                };
                obj.with_codomain(&blocks[j].apex)
            } else {
                let inner: Vec<MapF> = (0..nj).map(|i| component(&flat.apex, n, o + i)).collect();
                tuple_into(&blocks[j].apex, inner)
            };
            comps.push(c);
        }
        if k == 0 {
            flat.left.with_codomain(&nested.apex)
        } else {
            tuple_into(&nested.apex, comps)
        }
    };

    let forward = SpanCell::new(&nested, &flat, forward_map, bound)?;
    let backward = SpanCell::new(&flat, &nested, backward_map, bound)?;
    Ok(Associator { nested, flat, forward, backward })
}

impl Associator {
    /// Whether both round trips are identities on the enumerated apexes.
    pub fn round_trips(&self, bound: usize) -> Result<(bool, Coverage)> {
        let mut cov = Coverage::Exact;
        for (c1, c2, span) in [(&self.forward, &self.backward, &self.nested), (&self.backward, &self.forward, &self.flat)] {
            let dom = span.apex.enumerate(bound);
            cov = cov.meet(Coverage::from_enumeration(dom.exact, bound));
            for e in &dom.items {
                if c2.apply(&c1.apply(e)?)? != *e {
                    return Ok((false, cov));
                }
            }
        }
        Ok((true, cov))
    }
}

/// The two cells from the doubly nested composite to the flat one for a partition and a
/// refinement of each of its blocks: inner associators first, or the coarse regrouping first.
pub fn coherence_routes(
    outer: &Partition,
    inner: &[Partition],
    x0: &SetExpr,
    chain: &[Span],
    bound: usize,
) -> Result<(SpanCell, SpanCell)> {
    outer.check(chain.len())?;
    if inner.len() != outer.blocks.len() {
        return Err(Error::PartitionMismatch { partition: format!("{outer}"), len: inner.len() });
    }
    let objects = chain_objects(x0, chain);
    let offsets = outer.offsets();
    let blocks = outer.split(chain);

    // route A: re-associate inside every block, then the outer partition
    let mut inner_cells = Vec::with_capacity(blocks.len());
    for ((b, o), q) in blocks.iter().zip(&offsets).zip(inner) {
        inner_cells.push(associator(q, &objects[*o], b, bound)?.forward);
    }
    let first = if inner_cells.len() == 1 { inner_cells[0].clone() } else { super::hcomp(&inner_cells)? };
    let route_a = first.vcomp(&associator(outer, x0, chain, bound)?.forward)?;

    // route B: regroup the sub-blocks as one chain, then the fine partition
    let mut fine = Vec::new();
    let mut fine_chain = Vec::new();
    let mut grouping = Vec::new();
    for ((b, o), q) in blocks.iter().zip(&offsets).zip(inner) {
        q.check(b.len())?;
        grouping.push(q.blocks.len());
        for (sub, so) in q.split(b).into_iter().zip(q.offsets()) {
            fine.push(sub.len());
            fine_chain.push(compose_chain(&objects[o + so], sub)?);
        }
    }
    let regroup = associator(&Partition::new(grouping), x0, &fine_chain, bound)?.forward;
    let route_b = regroup.vcomp(&associator(&Partition::new(fine), x0, chain, bound)?.forward)?;
    Ok((route_a, route_b))
}
