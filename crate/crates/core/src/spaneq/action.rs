use alloc::format;
use alloc::vec;

use super::{associator, compose_n, hcomp, identity, Partition, Span, SpanCell};
use crate::error::{Error, Result};
use crate::finset::{MapF, SetExpr};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// The span `dom f ⇸ cod f` with left leg the identity and right leg `f`.
pub fn embed(f: &MapF) -> Span {
    Span {
        source: f.domain.clone(),
        target: f.codomain.clone(),
        apex: f.domain.clone(),
        left: MapF::identity(&f.domain),
        right: f.clone(),
    }
}

/// The reversed embedding `cod f ⇸ dom f`: left leg `f`, right leg the identity.
pub fn star(f: &MapF) -> Span {
    Span {
        source: f.codomain.clone(),
        target: f.domain.clone(),
        apex: f.domain.clone(),
        left: f.clone(),
        right: MapF::identity(&f.domain),
    }
}

/// Scalar actions on a span `a: x ⇸ y`.
///
/// On the right, `g: y → z` post-composes the right leg (`ga`). On the left, `f: w → x` gives
/// `af`, the composite of `embed(f)` with `a`, whose apex is the pullback `w ×_x a`.
pub fn act_scalar(f: &MapF, a: &Span, side: Side) -> Result<Span> {
    match side {
        Side::Right => {
            if f.domain != a.target {
                return Err(Error::SideMismatch(format!("right: {} vs {}", f.domain, a.target)));
            }
            Ok(a.with_right(f))
        }
        Side::Left => {
            if f.codomain != a.source {
                return Err(Error::SideMismatch(format!("left: {} vs {}", f.codomain, a.source)));
            }
            let apex = SetExpr::pullback(vec![f.domain.clone(), a.apex.clone()], vec![(f.clone(), a.left.clone())]);
            Span::new(MapF::proj(&apex, 0), MapF::proj(&apex, 1).then(&a.right))
        }
    }
}

/// Scalar opactions: composition with `star(f)` on the given side.
///
/// Left: `f: x → w` and `a: x ⇸ y` give `w ⇸ y`. Right: `g: z → y` gives `x ⇸ z`.
pub fn act_opscalar(f: &MapF, a: &Span, side: Side) -> Result<Span> {
    match side {
        Side::Left => {
            if f.domain != a.source {
                return Err(Error::SideMismatch(format!("left: {} vs {}", f.domain, a.source)));
            }
            compose_n(&[star(f), a.clone()])
        }
        Side::Right => {
            if f.codomain != a.target {
                return Err(Error::SideMismatch(format!("right: {} vs {}", f.codomain, a.target)));
            }
            compose_n(&[a.clone(), star(f)])
        }
    }
}

/// Closed form of the left opaction: same apex, left leg post-composed with `f`.
pub fn post_left(f: &MapF, a: &Span) -> Result<Span> {
    if f.domain != a.source {
        return Err(Error::SideMismatch(format!("left: {} vs {}", f.domain, a.source)));
    }
    Ok(a.with_left(f))
}

/// Unit and counit exhibiting `embed(f) ⊣ star(f)`.
#[derive(Clone, Debug)]
pub struct AdjointWitness {
    /// `i_w ⇒ star(f) ∘ embed(f)`, i.e. the chain `[embed f, star f]`.
    pub unit: SpanCell,
    /// `embed(f) ∘ star(f) ⇒ i_x`, i.e. the chain `[star f, embed f]`.
    pub counit: SpanCell,
}

impl AdjointWitness {
    pub fn new(f: &MapF, bound: usize) -> Result<AdjointWitness> {
        let (j, s) = (embed(f), star(f));
        let w = &f.domain;
        let js = compose_n(&[j.clone(), s.clone()])?;
        let sj = compose_n(&[s, j])?;
        let unit = SpanCell::new(
            &identity(w),
            &js,
            MapF::pairing(vec![MapF::identity(w), MapF::identity(w)], &js.apex),
            bound,
        )?;
        let counit = SpanCell::new(&sj, &identity(&f.codomain), MapF::proj(&sj.apex, 0).then(f), bound)?;
        Ok(AdjointWitness { unit, counit })
    }

    /// The two triangle composites `embed f ⇒ embed f` and `star f ⇒ star f`.
    pub fn triangles(&self, f: &MapF, bound: usize) -> Result<(SpanCell, SpanCell)> {
        let (j, s) = (embed(f), star(f));
        let (w, x) = (&f.domain, &f.codomain);
        let unit_id = SpanCell::identity;

        // embed f ≅ [i_w, j] ⇒ [[j, s], j] ≅ [j, s, j] ≅ [j, [s, j]] ⇒ [j, i_x] ≅ embed f
        let a01 = associator(&Partition::new(vec![0, 1]), w, core::slice::from_ref(&j), bound)?;
        let a21 = associator(&Partition::new(vec![2, 1]), w, &[j.clone(), s.clone(), j.clone()], bound)?;
        let a12 = associator(&Partition::new(vec![1, 2]), w, &[j.clone(), s.clone(), j.clone()], bound)?;
        let a10 = associator(&Partition::new(vec![1, 0]), w, core::slice::from_ref(&j), bound)?;
        let t1 = SpanCell::vcomp_all(&[
            a01.backward,
            hcomp(&[self.unit.clone(), unit_id(&j)])?,
            a21.forward,
            a12.backward,
            hcomp(&[unit_id(&j), self.counit.clone()])?,
            a10.forward,
        ])?;

        // star f ≅ [s, i_w] ⇒ [s, [j, s]] ≅ [s, j, s] ≅ [[s, j], s] ⇒ [i_x, s] ≅ star f
        let b10 = associator(&Partition::new(vec![1, 0]), x, core::slice::from_ref(&s), bound)?;
        let b12 = associator(&Partition::new(vec![1, 2]), x, &[s.clone(), j.clone(), s.clone()], bound)?;
        let b21 = associator(&Partition::new(vec![2, 1]), x, &[s.clone(), j.clone(), s.clone()], bound)?;
        let b01 = associator(&Partition::new(vec![0, 1]), x, core::slice::from_ref(&s), bound)?;
        let t2 = SpanCell::vcomp_all(&[
            b10.backward,
            hcomp(&[unit_id(&s), self.unit.clone()])?,
            b12.forward,
            b21.backward,
            hcomp(&[self.counit.clone(), unit_id(&s)])?,
            b01.forward,
        ])?;
        Ok((t1, t2))
    }
}

/// A scalar acting on a cell: the same map between post-composed spans on the right,
/// and the induced map of pullbacks on the left.
pub fn act_cell(f: &MapF, cell: &SpanCell, side: Side) -> Result<SpanCell> {
    let from = act_scalar(f, &cell.from, side)?;
    let to = act_scalar(f, &cell.to, side)?;
    let map = match side {
        Side::Right => cell.map.clone(),
        Side::Left => MapF::pairing(
            vec![MapF::proj(&from.apex, 0), MapF::proj(&from.apex, 1).then(&cell.map)],
            &to.apex,
        ),
    };
    Ok(SpanCell::assemble(&from, &to, map, cell.checked))
}
