//! The four low-arity Kleisli associator components as explicit pastings of host cells.

use alloc::vec;

use super::{kl_compose_n, kl_identity, kl_target};
use crate::error::Result;
use crate::finset::{MapF, SetExpr};
use crate::listmonad::{kappa, lift_span, lift_span_n, nu_e, nu_m};
use crate::spaneq::{act_cell, associator, compose_n, hcomp, Partition, Side, Span, SpanCell};

/// `c1` then `c2`, inserting a verified structural cell with the identity apex map when the
/// boundary spans are equal only up to reassociating scalar actions.
fn glue(c1: SpanCell, c2: SpanCell, bound: usize) -> Result<SpanCell> {
    if c1.to == c2.from {
        return c1.vcomp(&c2);
    }
    let s = SpanCell::new(&c1.to, &c2.from, MapF::identity(&c1.to.apex).with_codomain(&c2.from.apex), bound)?;
    c1.vcomp(&s)?.vcomp(&c2)
}

fn structural(from: &Span, to: &Span, bound: usize) -> Result<SpanCell> {
    SpanCell::new(from, to, MapF::identity(&from.apex).with_codomain(&to.apex), bound)
}

/// The component flat ⇒ nested for the partitions `0+1`, `1+0` (chain of one) and `2+1`, `1+2`
/// (chain of three), assembled from host associators, `ν^e`, `ν^m`, `κ` and monad-law identities.
pub fn displayed_component(partition: &Partition, x0: &SetExpr, chain: &[Span], bound: usize) -> Result<Option<SpanCell>> {
    let cell = match (partition.blocks.as_slice(), chain) {
        ([0, 1], [a]) => {
            let y = kl_target(a)?;
            let nested = kl_compose_n(x0, &[kl_identity(x0), a.clone()])?;
            let ne = act_cell(&MapF::concat(&y), &nu_e(a, bound)?.forward, Side::Right)?;
            let s0 = structural(a, &ne.from, bound)?;
            let end = structural(&ne.to, &nested, bound)?;
            glue(glue(s0, ne, bound)?, end, bound)?
        }
        ([1, 0], [a]) => {
            let y = kl_target(a)?;
            let g = MapF::map_of(&MapF::singleton(&y)).then(&MapF::concat(&y));
            let nested = kl_compose_n(x0, &[a.clone(), kl_identity(&y)])?;
            let xi = associator(partition, x0, core::slice::from_ref(a), bound)?.backward;
            let s1 = act_cell(&g, &xi, Side::Right)?;
            let k0 = kappa(&y, &[], bound)?.forward;
            let s2 = act_cell(&g, &hcomp(&[SpanCell::identity(a), k0])?, Side::Right)?;
            let s0 = structural(a, &s1.from, bound)?;
            let end = structural(&s2.to, &nested, bound)?;
            glue(glue(glue(s0, s1, bound)?, s2, bound)?, end, bound)?
        }
        ([2, 1], [c, b, a]) => {
            let y = kl_target(a)?;
            let flat = kl_compose_n(x0, chain)?;
            let nested = kl_compose_n(x0, &[kl_compose_n(x0, &[c.clone(), b.clone()])?, a.clone()])?;
            let chain3 = vec![c.clone(), lift_span(b), lift_span_n(2, a)];
            let g = MapF::concat(&SetExpr::fm(y.clone())).then(&MapF::concat(&y));
            let s1 = act_cell(&g, &associator(partition, x0, &chain3, bound)?.backward, Side::Right)?;
            let inner = compose_n(&chain3[..2])?;
            let nm = nu_m(a, bound)?.forward;
            let s2 = act_cell(&MapF::concat(&y), &hcomp(&[SpanCell::identity(&inner), nm])?, Side::Right)?;
            let reshape = MapF::pairing(
                vec![MapF::proj(&s2.to.apex, 0), MapF::proj(&s2.to.apex, 1).then(&MapF::proj(&s2.to.apex.as_pullback().unwrap().factors[1], 1))],
                &nested.apex,
            );
            let s3 = SpanCell::new(&s2.to, &nested, reshape, bound)?;
            let s0 = structural(&flat, &s1.from, bound)?;
            glue(glue(glue(s0, s1, bound)?, s2, bound)?, s3, bound)?
        }
        ([1, 2], [c, b, a]) => {
            let y = kl_target(a)?;
            let w = &b.source;
            let flat = kl_compose_n(x0, chain)?;
            let nested = kl_compose_n(x0, &[c.clone(), kl_compose_n(w, &[b.clone(), a.clone()])?])?;
            let chain3 = vec![c.clone(), lift_span(b), lift_span_n(2, a)];
            let g = MapF::map_of(&MapF::concat(&y)).then(&MapF::concat(&y));
            let s1 = act_cell(&g, &associator(partition, x0, &chain3, bound)?.backward, Side::Right)?;
            let k = kappa(w, &[b.clone(), lift_span(a)], bound)?.forward;
            let s2 = act_cell(&g, &hcomp(&[SpanCell::identity(c), k])?, Side::Right)?;
            let s0 = structural(&flat, &s1.from, bound)?;
            let end = structural(&s2.to, &nested, bound)?;
            glue(glue(glue(s0, s1, bound)?, s2, bound)?, end, bound)?
        }
        _ => return Ok(None),
    };
    Ok(Some(cell))
}
