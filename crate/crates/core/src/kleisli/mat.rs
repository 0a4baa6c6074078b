//! Kleisli convolution of matrices `x ⇸ Ty` over a quantale.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::finset::{Elem, MapF, SetExpr};
use crate::quantale::{embed_map, MatCell, MatVector, Quantale, Val};
use crate::spaneq::Partition;

/// `x ⇸ Tx`: the unit exactly on `(x, [x])`.
pub fn kl_identity(q: &Arc<Quantale>, x: &SetExpr) -> MatVector {
    embed_map(q, &MapF::singleton(x))
}

fn kl_objects(x0: &SetExpr, chain: &[MatVector]) -> Result<Vec<SetExpr>> {
    let mut v = alloc::vec![x0.clone()];
    for (i, r) in chain.iter().enumerate() {
        if r.source != v[i] || *r.quantale != *chain[0].quantale {
            return Err(Error::ChainMismatch { position: i, detail: format!("{r:?} does not start at {}", v[i]) });
        }
        let y = r.target.fm_base().cloned().ok_or_else(|| Error::ChainMismatch {
            position: i,
            detail: format!("target {} is not a list set", r.target),
        })?;
        v.push(y);
    }
    Ok(v)
}

/// Lists over `x` of length at most `max_len` on which `val` is not bottom, with their values.
fn lists_below(x: &SetExpr, max_len: usize, mut val: impl FnMut(&Elem) -> Val, bottom: Val) -> Vec<(Elem, Val)> {
    SetExpr::fm(x.clone())
        .enumerate(max_len)
        .items
        .into_iter()
        .filter(|l| l.as_nest().is_some_and(|v| v.len() <= max_len))
        .filter_map(|l| {
            let v = val(&l);
            (v != bottom).then_some((l, v))
        })
        .collect()
}

/// All ways to cut `l` into `k` consecutive, possibly empty segments.
fn segmentations(l: &[Elem], k: usize) -> Vec<Vec<Elem>> {
    if k == 0 {
        return if l.is_empty() { alloc::vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for cut in 0..=l.len() {
        for mut rest in segmentations(&l[cut..], k - 1) {
            rest.insert(0, Elem::Nest(l[..cut].to_vec()));
            out.push(rest);
        }
    }
    out
}

/// `K(r_1, …, r_n)(x, ℓ)`: the join over all trees from `x` whose leaves read `ℓ`, where every
/// intermediate level is a list of total length at most `bound`.
pub fn kl_compose_n(x0: &SetExpr, chain: &[MatVector], bound: usize) -> Result<MatVector> {
    let objs = kl_objects(x0, chain)?;
    let n = chain.len();
    match n {
        0 => {
            return Err(Error::ChainMismatch { position: 0, detail: "use kl_identity for the empty composite".into() });
        }
        1 => return Ok(chain[0].clone()),
        _ => {}
    }
    let q = chain[0].quantale.clone();
    let target = SetExpr::fm(objs[n].clone());
    let chain: Vec<MatVector> = chain.to_vec();
    let objs = Arc::new(objs);
    let qq = q.clone();
    let eval = move |x: &Elem, l: &Elem| -> Val {
        let (bot, q) = (qq.bottom(), &*qq);
        let Some(leaves) = l.as_nest() else { return bot };
        // frontier: flat list at the current level ↦ accumulated value
        let mut frontier: BTreeMap<Elem, Val> =
            lists_below(&objs[1], bound, |w| chain[0].entry(x, w), bot).into_iter().collect();
        for (i, r) in chain.iter().enumerate().take(n - 1).skip(1) {
            let mut next: BTreeMap<Elem, Val> = BTreeMap::new();
            for (u, v) in &frontier {
                let us = u.as_nest().expect("frontiers are lists");
                grow(q, r, &objs[i + 1], us, bound, *v, &mut Vec::new(), &mut next);
            }
            frontier = next;
        }
        let last = &chain[n - 1];
        let mut acc = bot;
        for (u, v) in &frontier {
            let us = u.as_nest().expect("frontiers are lists");
            for segs in segmentations(leaves, us.len()) {
                let t = us.iter().zip(&segs).fold(*v, |a, (ui, s)| if a == bot { a } else { q.tensor(a, last.entry(ui, s)) });
                acc = q.join(acc, t);
            }
        }
        acc
    };
    Ok(MatVector::pred(&q, x0, &target, Some(bound), eval))
}

/// Chooses a list below each element of `us` with total length at most `budget`.
#[allow(clippy::too_many_arguments)]
fn grow(
    q: &Quantale,
    r: &MatVector,
    x: &SetExpr,
    us: &[Elem],
    budget: usize,
    val: Val,
    acc: &mut Vec<Elem>,
    out: &mut BTreeMap<Elem, Val>,
) {
    let Some((u, rest)) = us.split_first() else {
        let key = Elem::Nest(acc.clone());
        let e = out.entry(key).or_insert(q.bottom());
        *e = q.join(*e, val);
        return;
    };
    for (l, v) in lists_below(x, budget, |l| r.entry(u, l), q.bottom()) {
        let t = q.tensor(val, v);
        if t == q.bottom() {
            continue;
        }
        let items = l.as_nest().expect("lists");
        let len = acc.len();
        acc.extend_from_slice(items);
        grow(q, r, x, rest, budget - items.len(), t, acc, out);
        acc.truncate(len);
    }
}

/// The Kleisli associator over a posetal quantale: flat ≤ nested entrywise up to `bound`.
pub fn kl_associator(partition: &Partition, x0: &SetExpr, chain: &[MatVector], bound: usize) -> Result<MatCell> {
    partition.check(chain.len())?;
    let objs = kl_objects(x0, chain)?;
    let q = chain.first().map(|r| r.quantale.clone());
    let compose = |x: &SetExpr, c: &[MatVector]| -> Result<MatVector> {
        match (c.len(), &q) {
            (0, Some(q)) => Ok(kl_identity(q, x).with_bound(bound)),
            (0, None) => Err(Error::ChainMismatch { position: 0, detail: "empty chain without a quantale".into() }),
            _ => kl_compose_n(x, c, bound),
        }
    };
    let blocks: Vec<MatVector> = partition
        .split(chain)
        .into_iter()
        .zip(partition.offsets())
        .map(|(b, o)| compose(&objs[o], b))
        .collect::<Result<_>>()?;
    let flat = compose(x0, chain)?;
    let nested = if blocks.is_empty() { flat.clone() } else { kl_compose_n(x0, &blocks, bound)? };
    MatCell::new(&flat, &nested, bound)
}
