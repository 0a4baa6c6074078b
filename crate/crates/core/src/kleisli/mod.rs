//! The Kleisli equipment of the list monad on spans, and Kleisli convolution of matrices.

pub mod mat;
mod pasting;

pub use pasting::displayed_component;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::coverage::Coverage;
use crate::error::{Error, Result};
use crate::finset::{Elem, MapF, SetExpr};
use crate::listmonad::lift_span_n;
use crate::quantale::MatVector;
use crate::spaneq::{component, compose_chain, identity, tuple_into, Partition, Span, SpanCell};

/// A Kleisli vector `x ⇸ y`: a vector `x ⇸ Ty` of the host equipment.
#[derive(Clone, Debug)]
pub enum KleisliVector {
    Span(Span),
    Mat(MatVector),
}

impl KleisliVector {
    pub fn source(&self) -> &SetExpr {
        match self {
            KleisliVector::Span(a) => &a.source,
            KleisliVector::Mat(m) => &m.source,
        }
    }

    pub fn target(&self) -> Result<SetExpr> {
        let t = match self {
            KleisliVector::Span(a) => &a.target,
            KleisliVector::Mat(m) => &m.target,
        };
        t.fm_base().cloned().ok_or_else(|| Error::ChainMismatch { position: 0, detail: format!("{t} is not a list set") })
    }
}

/// `y` for a span `x ⇸ Ty`.
pub fn kl_target(a: &Span) -> Result<SetExpr> {
    KleisliVector::Span(a.clone()).target()
}

/// `x_0, …, x_n` for a Kleisli chain anchored at `x0`.
pub fn kl_objects(x0: &SetExpr, chain: &[Span]) -> Result<Vec<SetExpr>> {
    let mut v = alloc::vec![x0.clone()];
    for (i, a) in chain.iter().enumerate() {
        if a.source != v[i] {
            return Err(Error::ChainMismatch { position: i, detail: format!("source {} vs {}", a.source, v[i]) });
        }
        v.push(kl_target(a).map_err(|_| Error::ChainMismatch {
            position: i,
            detail: format!("target {} is not a list set", a.target),
        })?);
    }
    Ok(v)
}

/// `x ⇸ x → Tx`: the identity span with right leg the singleton map.
pub fn kl_identity(x: &SetExpr) -> Span {
    identity(x).with_right(&MapF::singleton(x))
}

/// `m_n ∘ P_n(a_1, Ta_2, …, T^{n-1}a_n)`; a single vector is returned unchanged.
pub fn kl_compose_n(x0: &SetExpr, chain: &[Span]) -> Result<Span> {
    let objs = kl_objects(x0, chain)?;
    match chain.len() {
        0 => Ok(kl_identity(x0)),
        1 => Ok(chain[0].clone()),
        n => {
            let lifted: Vec<Span> = chain.iter().enumerate().map(|(i, a)| lift_span_n(i, a)).collect();
            Ok(compose_chain(x0, &lifted)?.with_right(&MapF::flatten(n, &objs[n])))
        }
    }
}

/// The Kleisli lax associator for one partition.
#[derive(Clone, Debug)]
pub struct KlAssociator {
    pub flat: Span,
    pub nested: Span,
    /// flat ⇒ nested
    pub to_nested: SpanCell,
    /// nested ⇒ flat, present when `to_nested` is a bijection on the enumerated apexes.
    pub to_flat: Option<SpanCell>,
}

/// Collapses the levels contributed by the first `j` blocks to one level each, for an element
/// of `FM^depth(base)`.
fn collapse(partition: &Partition, j: usize, base: &SetExpr, depth: usize) -> MapF {
    let mut maps = Vec::new();
    let mut rest = depth;
    for (l, &nl) in partition.blocks[..j].iter().enumerate() {
        rest -= nl;
        if nl != 1 {
            maps.push(MapF::map_of_n(l, &MapF::flatten(nl, &SetExpr::fm_n(rest, base.clone()))));
        }
    }
    if maps.is_empty() {
        MapF::identity(&SetExpr::fm_n(depth, base.clone()))
    } else {
        MapF::compose(maps)
    }
}

/// The canonical reshaping of a flat composite into the nested one.
fn to_nested_map(partition: &Partition, objs: &[SetExpr], chain: &[Span], flat: &Span, blocks: &[Span], nested: &Span) -> MapF {
    let n = chain.len();
    if partition.blocks.is_empty() {
        return MapF::identity(&flat.apex).with_codomain(&nested.apex);
    }
    let mut gammas = Vec::with_capacity(blocks.len());
    for (j, (&o, &nj)) in partition.offsets().iter().zip(&partition.blocks).enumerate() {
        let target = SetExpr::fm_n(j, blocks[j].apex.clone());
        let g = if nj == 0 {
            let (m, base, depth) = if n == 0 {
                (MapF::identity(&flat.apex), objs[0].clone(), 0)
            } else if o < n {
                (component(&flat.apex, n, o).then(&MapF::map_of_n(o, &chain[o].left)), objs[o].clone(), o)
            } else {
                (component(&flat.apex, n, n - 1).then(&MapF::map_of_n(n - 1, &chain[n - 1].right)), objs[n].clone(), n)
            };
            m.then(&collapse(partition, j, &base, depth))
        } else {
            let ms: Vec<MapF> = (0..nj)
                .map(|i| {
                    let p = o + i;
                    component(&flat.apex, n, p).then(&collapse(partition, j, &chain[p].apex, p))
                })
                .collect();
            if nj == 1 {
                ms.into_iter().next().unwrap()
            } else if j == 0 {
                tuple_into(&blocks[0].apex, ms)
            } else {
                let prod = SetExpr::product(ms.iter().map(|m| m.codomain.clone()).collect());
                MapF::pairing(ms, &prod).then(&MapF::zip(j, &prod, &target))
            }
        };
        gammas.push(g.with_codomain(&target));
    }
    tuple_into(&nested.apex, gammas)
}

/// Inverts a cell by tabulating it on the enumerated source apex, if it is a bijection there.
pub fn invert_by_table(cell: &SpanCell, name: &str, bound: usize) -> Result<Option<SpanCell>> {
    let dom = cell.from.apex.enumerate(bound);
    let mut table = BTreeMap::new();
    for e in &dom.items {
        if table.insert(cell.apply(e)?, e.clone()).is_some() {
            return Ok(None);
        }
    }
    let cod = cell.to.apex.enumerate(bound);
    if cod.items.iter().any(|v| !table.contains_key(v)) {
        return Ok(None);
    }
    let table = Arc::new(table);
    let label = alloc::string::String::from(name);
    let inv = MapF::native(name, &cell.to.apex, &cell.from.apex, move |v: &Elem| {
        table.get(v).cloned().ok_or_else(|| Error::Rule { map: label.clone(), elem: format!("{v}") })
    });
    Ok(Some(SpanCell::new(&cell.to, &cell.from, inv, bound)?))
}

/// The Kleisli associator of `partition` on `chain`: flat composite ⇒ nested composite.
pub fn kl_associator(partition: &Partition, x0: &SetExpr, chain: &[Span], bound: usize) -> Result<KlAssociator> {
    let to_nested = kl_to_nested(partition, x0, chain)?;
    to_nested.recheck(bound)?;
    let to_flat = invert_by_table(&to_nested, &format!("kleisli associator {partition} inverse"), bound)?;
    Ok(KlAssociator { flat: to_nested.from.clone(), nested: to_nested.to.clone(), to_nested, to_flat })
}

/// The flat ⇒ nested half of [`kl_associator`] alone, without verification or inversion.
pub fn kl_to_nested(partition: &Partition, x0: &SetExpr, chain: &[Span]) -> Result<SpanCell> {
    partition.check(chain.len())?;
    let objs = kl_objects(x0, chain)?;
    let blocks: Vec<Span> = partition
        .split(chain)
        .into_iter()
        .zip(partition.offsets())
        .map(|(b, o)| kl_compose_n(&objs[o], b))
        .collect::<Result<_>>()?;
    let nested = kl_compose_n(x0, &blocks)?;
    let flat = kl_compose_n(x0, chain)?;
    let map = to_nested_map(partition, &objs, chain, &flat, &blocks, &nested);
    Ok(SpanCell::assemble(&flat, &nested, map, Coverage::Exact))
}

/// Kleisli composition of cells: `(β_1, L_2, L_3, …) ↦ (c_1 β_1, T c_2 L_2, T² c_3 L_3, …)`.
pub fn kl_hcomp(x0: &SetExpr, cells: &[SpanCell]) -> Result<SpanCell> {
    match cells.len() {
        0 => Ok(SpanCell::identity(&kl_identity(x0))),
        1 => Ok(cells[0].clone()),
        n => {
            let froms: Vec<Span> = cells.iter().map(|c| c.from.clone()).collect();
            let tos: Vec<Span> = cells.iter().map(|c| c.to.clone()).collect();
            let from = kl_compose_n(x0, &froms)?;
            let to = kl_compose_n(x0, &tos)?;
            let comps = cells
                .iter()
                .enumerate()
                .map(|(i, c)| component(&from.apex, n, i).then(&MapF::map_of_n(i, &c.map)))
                .collect();
            let checked = cells.iter().fold(Coverage::Exact, |acc, c| acc.meet(c.checked));
            let map = tuple_into(&to.apex, comps);
            Ok(SpanCell { from, to, map, checked })
        }
    }
}

/// Two cells from the flat composite to the doubly nested one, for `outer` and a refinement
/// `inner` of each of its blocks: the outer associator followed by the inner ones, or the fine
/// associator followed by the regrouping.
pub fn kl_coherence_routes(
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
    let objs = kl_objects(x0, chain)?;
    let blocks = outer.split(chain);
    let offsets = outer.offsets();

    let mut inner_cells = Vec::with_capacity(blocks.len());
    let mut fine = Vec::new();
    let mut fine_chain = Vec::new();
    let mut grouping = Vec::new();
    for ((b, &o), q) in blocks.iter().zip(&offsets).zip(inner) {
        inner_cells.push(kl_associator(q, &objs[o], b, bound)?.to_nested);
        grouping.push(q.blocks.len());
        for (sub, so) in q.split(b).into_iter().zip(q.offsets()) {
            fine.push(sub.len());
            fine_chain.push(kl_compose_n(&objs[o + so], sub)?);
        }
    }
    let route_a = kl_associator(outer, x0, chain, bound)?.to_nested.vcomp(&kl_hcomp(x0, &inner_cells)?)?;
    let route_b = kl_associator(&Partition::new(fine), x0, chain, bound)?
        .to_nested
        .vcomp(&kl_associator(&Partition::new(grouping), x0, &fine_chain, bound)?.to_nested)?;
    Ok((route_a, route_b))
}

#[cfg(test)]
mod tests;
