//! Pasting descriptions: trees of structural cells that evaluate to concrete span cells.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::algebras::{kappa_l0, kappa_l2, TAlgebra};
use crate::error::Result;
use crate::finset::{MapF, SetExpr};
use crate::kleisli::{kl_associator, kl_compose_n, kl_hcomp, kl_objects, kl_to_nested};
use crate::listmonad::{kappa, nu_e, nu_m, Direction};
use crate::monoids::{Monoid, TMonoid};
use crate::spaneq::{act_cell, associator, compose_chain, hcomp, whisker, cell_equal, Partition, Side, Span, SpanCell};
use crate::verdict::Verdict;

/// A tree over the structural cells of the span equipment and its list-monad lift.
#[derive(Clone, Debug)]
pub enum Pasting {
    /// `P_n`: the identity cell on the composite of a chain anchored at `x0`.
    Compose { x0: SetExpr, chain: Vec<Span> },
    /// `ξ`: nested ⇒ flat in the forward direction.
    Xi { partition: Partition, x0: SetExpr, chain: Vec<Span>, dir: Direction },
    /// The Kleisli associator, flat ⇒ nested in the forward direction.
    KlXi { partition: Partition, x0: SetExpr, chain: Vec<Span>, dir: Direction },
    KappaT { x0: SetExpr, chain: Vec<Span>, dir: Direction },
    NuM { span: Span, dir: Direction },
    NuE { span: Span, dir: Direction },
    /// `κ^L_0` on `x` when `pair` is `None`, else `κ^L_2` on the pair.
    KappaL { x0: SetExpr, pair: Option<(Span, Span)>, dir: Direction },
    /// A named structure cell: `μ`, `η` or `σ` of some monoid or algebra.
    Structure { name: String, cell: SpanCell },
    Whisker { chain: Vec<Span>, position: usize, inner: Box<Pasting> },
    /// `f` acting on the source (`Left`) or target (`Right`) leg of a pasting.
    Act { scalar: MapF, side: Side, inner: Box<Pasting> },
    HComp(Vec<Pasting>),
    /// Kleisli horizontal composition anchored at `x0`.
    KlHComp { x0: SetExpr, cells: Vec<Pasting> },
    VComp(Vec<Pasting>),
}

impl Pasting {
    pub fn mu(m: &Monoid) -> Pasting {
        Pasting::Structure { name: format!("μ_{}", m.name), cell: m.mu.clone() }
    }

    pub fn eta(m: &Monoid) -> Pasting {
        Pasting::Structure { name: format!("η_{}", m.name), cell: m.eta.clone() }
    }

    pub fn t_mu(t: &TMonoid) -> Pasting {
        Pasting::Structure { name: format!("μ_{}", t.name), cell: t.mu.clone() }
    }

    pub fn t_eta(t: &TMonoid) -> Pasting {
        Pasting::Structure { name: format!("η_{}", t.name), cell: t.eta.clone() }
    }

    pub fn sigma(a: &TAlgebra) -> Pasting {
        Pasting::Structure { name: format!("σ_{}", a.monoid.name), cell: a.sigma.clone() }
    }

    pub fn id(a: &Span) -> Pasting {
        Pasting::Compose { x0: a.source.clone(), chain: alloc::vec![a.clone()] }
    }

    /// Evaluates the tree to one cell, verifying every cell it builds at `bound`.
    pub fn evaluate(&self, bound: usize) -> Result<SpanCell> {
        let pick = |fwd: SpanCell, inv: SpanCell, dir: Direction| match dir {
            Direction::Fwd => fwd,
            Direction::Inv => inv,
        };
        Ok(match self {
            Pasting::Compose { x0, chain } => SpanCell::identity(&compose_chain(x0, chain)?),
            Pasting::Xi { partition, x0, chain, dir } => {
                let a = associator(partition, x0, chain, bound)?;
                pick(a.forward, a.backward, *dir)
            }
            Pasting::KlXi { partition, x0, chain, dir } => match dir {
                Direction::Fwd => {
                    let c = kl_to_nested(partition, x0, chain)?;
                    c.recheck(bound)?;
                    c
                }
                Direction::Inv => kl_associator(partition, x0, chain, bound)?.to_flat.ok_or_else(|| {
                    crate::Error::NotACell(format!("Kleisli associator {partition} is not invertible at bound {bound}"))
                })?,
            },
            Pasting::KappaT { x0, chain, dir } => {
                let k = kappa(x0, chain, bound)?;
                pick(k.forward, k.inverse, *dir)
            }
            Pasting::NuM { span, dir } => {
                let k = nu_m(span, bound)?;
                pick(k.forward, k.inverse, *dir)
            }
            Pasting::NuE { span, dir } => {
                let k = nu_e(span, bound)?;
                pick(k.forward, k.inverse, *dir)
            }
            Pasting::KappaL { x0, pair, dir } => {
                let k = match pair {
                    None => kappa_l0(x0, bound)?,
                    Some((a, b)) => kappa_l2(x0, a, b, bound)?,
                };
                pick(k.forward, k.inverse, *dir)
            }
            Pasting::Structure { cell, .. } => {
                cell.recheck(bound)?;
                cell.clone()
            }
            Pasting::Whisker { chain, position, inner } => whisker(chain, *position, &inner.evaluate(bound)?)?,
            Pasting::Act { scalar, side, inner } => act_cell(scalar, &inner.evaluate(bound)?, *side)?,
            Pasting::HComp(ps) => hcomp(&ps.iter().map(|p| p.evaluate(bound)).collect::<Result<Vec<_>>>()?)?,
            Pasting::KlHComp { x0, cells } => {
                kl_hcomp(x0, &cells.iter().map(|p| p.evaluate(bound)).collect::<Result<Vec<_>>>()?)?
            }
            Pasting::VComp(ps) => SpanCell::vcomp_all(&ps.iter().map(|p| p.evaluate(bound)).collect::<Result<Vec<_>>>()?)?,
        })
    }
}

fn dir_mark(d: Direction) -> &'static str {
    match d {
        Direction::Fwd => "",
        Direction::Inv => "⁻¹",
    }
}

fn list(f: &mut fmt::Formatter<'_>, sep: &str, ps: &[Pasting]) -> fmt::Result {
    write!(f, "(")?;
    for (i, p) in ps.iter().enumerate() {
        if i > 0 {
            write!(f, "{sep}")?;
        }
        write!(f, "{p}")?;
    }
    write!(f, ")")
}

impl fmt::Display for Pasting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pasting::Compose { chain, .. } => write!(f, "P_{}", chain.len()),
            Pasting::Xi { partition, dir, .. } => write!(f, "ξ[{partition}]{}", dir_mark(*dir)),
            Pasting::KlXi { partition, dir, .. } => write!(f, "ξ^T[{partition}]{}", dir_mark(*dir)),
            Pasting::KappaT { chain, dir, .. } => write!(f, "κ^T_{}{}", chain.len(), dir_mark(*dir)),
            Pasting::NuM { dir, .. } => write!(f, "ν^m{}", dir_mark(*dir)),
            Pasting::NuE { dir, .. } => write!(f, "ν^e{}", dir_mark(*dir)),
            Pasting::KappaL { pair, dir, .. } => write!(f, "κ^L_{}{}", if pair.is_some() { 2 } else { 0 }, dir_mark(*dir)),
            Pasting::Structure { name, .. } => write!(f, "{name}"),
            Pasting::Whisker { position, inner, .. } => write!(f, "whisker@{position}({inner})"),
            Pasting::Act { scalar, side, inner } => {
                let s = match side {
                    Side::Left => "left",
                    Side::Right => "right",
                };
                write!(f, "{}·{s}({inner})", scalar.describe())
            }
            Pasting::HComp(ps) => list(f, " ∘h ", ps),
            Pasting::KlHComp { cells, .. } => list(f, " ∘K ", cells),
            Pasting::VComp(ps) => list(f, " ; ", ps),
        }
    }
}

/// Evaluates both pastings and compares the resulting cells pointwise.
pub fn diagram_equal(lhs: &Pasting, rhs: &Pasting, bound: usize) -> Verdict {
    let name = format!("{lhs} = {rhs}");
    let run = || -> Result<Verdict> {
        let (l, r) = (lhs.evaluate(bound)?, rhs.evaluate(bound)?);
        if l.from != r.from || l.to != r.to {
            return Ok(Verdict::fail(&name, crate::Coverage::Exact, format!("boundaries differ: {} ⇒ {} vs {} ⇒ {}", l.from, l.to, r.from, r.to)));
        }
        let cmp = cell_equal(&l, &r, bound)?;
        Ok(match cmp.witness {
            None => Verdict::pass(&name, cmp.coverage),
            Some((e, a, b)) => Verdict::fail(&name, cmp.coverage, format!("at {e}: {a} vs {b}")),
        })
    };
    Verdict::from_result(&name, run())
}

/// The two pastings of Kleisli associators from the flat composite to the doubly nested one,
/// for `outer` and a refinement `inner` of each of its blocks.
pub fn kl_coherence_pastings(outer: &Partition, inner: &[Partition], x0: &SetExpr, chain: &[Span]) -> Result<(Pasting, Pasting)> {
    outer.check(chain.len())?;
    if inner.len() != outer.blocks.len() {
        return Err(crate::Error::PartitionMismatch { partition: format!("{outer}"), len: inner.len() });
    }
    let objs = kl_objects(x0, chain)?;
    let mut inner_cells = Vec::with_capacity(inner.len());
    let (mut fine, mut fine_chain, mut grouping) = (Vec::new(), Vec::new(), Vec::new());
    for ((b, o), q) in outer.split(chain).into_iter().zip(outer.offsets()).zip(inner) {
        q.check(b.len())?;
        inner_cells.push(Pasting::KlXi { partition: q.clone(), x0: objs[o].clone(), chain: b.to_vec(), dir: Direction::Fwd });
        grouping.push(q.blocks.len());
        for (sub, so) in q.split(b).into_iter().zip(q.offsets()) {
            fine.push(sub.len());
            fine_chain.push(kl_compose_n(&objs[o + so], sub)?);
        }
    }
    let fwd = |partition: Partition, chain: Vec<Span>| Pasting::KlXi { partition, x0: x0.clone(), chain, dir: Direction::Fwd };
    let route_a = Pasting::VComp(alloc::vec![
        fwd(outer.clone(), chain.to_vec()),
        Pasting::KlHComp { x0: x0.clone(), cells: inner_cells },
    ]);
    let route_b = Pasting::VComp(alloc::vec![fwd(Partition::new(fine), chain.to_vec()), fwd(Partition::new(grouping), fine_chain)]);
    Ok((route_a, route_b))
}
