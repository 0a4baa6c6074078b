use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::{compose_n, component, tuple_into, Span};
use crate::coverage::Coverage;
use crate::error::{Error, Result};
use crate::finset::{Elem, MapF};

/// A 2-cell between spans: a map of apexes commuting with both legs.
#[derive(Clone, Debug)]
pub struct SpanCell {
    pub from: Span,
    pub to: Span,
    pub map: MapF,
    /// How much of `from.apex` the leg-commutation check covered.
    pub checked: Coverage,
}

impl SpanCell {
    /// Builds a cell, verifying leg commutation over the apex up to `bound`.
    pub fn new(from: &Span, to: &Span, map: MapF, bound: usize) -> Result<SpanCell> {
        let checked = verify(from, to, &map, bound)?;
        Ok(SpanCell { from: from.clone(), to: to.clone(), map, checked })
    }

    /// Assembles a cell whose commutation follows from that of its parts.
    pub(crate) fn assemble(from: &Span, to: &Span, map: MapF, checked: Coverage) -> SpanCell {
        SpanCell { from: from.clone(), to: to.clone(), map, checked }
    }

    pub fn identity(a: &Span) -> SpanCell {
        SpanCell { from: a.clone(), to: a.clone(), map: MapF::identity(&a.apex), checked: Coverage::Exact }
    }

    /// Re-runs the leg-commutation check.
    pub fn recheck(&self, bound: usize) -> Result<Coverage> {
        verify(&self.from, &self.to, &self.map, bound)
    }

    /// `other ∘ self`.
    pub fn vcomp(&self, other: &SpanCell) -> Result<SpanCell> {
        if self.to != other.from {
            return Err(Error::BoundaryMismatch(format!("{} then {}", self.to, other.from)));
        }
        Ok(SpanCell::assemble(&self.from, &other.to, self.map.then(&other.map), self.checked.meet(other.checked)))
    }

    /// Vertical composite of a non-empty sequence, first cell first.
    pub fn vcomp_all(cells: &[SpanCell]) -> Result<SpanCell> {
        let mut it = cells.iter();
        let mut acc = it.next().expect("at least one cell").clone();
        for c in it {
            acc = acc.vcomp(c)?;
        }
        Ok(acc)
    }

    /// Applies the cell to an apex element.
    pub fn apply(&self, e: &Elem) -> Result<Elem> {
        self.map.apply(e)
    }
}

fn verify(from: &Span, to: &Span, map: &MapF, bound: usize) -> Result<Coverage> {
    if from.source != to.source || from.target != to.target {
        return Err(Error::BoundaryMismatch(format!("{from} vs {to}")));
    }
    let dom = from.apex.enumerate(bound);
    for e in &dom.items {
        let y = map.apply(e).map_err(|err| Error::NotACell(format!("{map} fails at {e}: {err}")))?;
        if !to.apex.contains(&y) {
            return Err(Error::NotACell(format!("{map} sends {e} to {y}, outside {}", to.apex)));
        }
        let (l0, l1) = (from.left.apply(e)?, to.left.apply(&y)?);
        if l0 != l1 {
            return Err(Error::NotACell(format!("left legs disagree at {e}: {l0} vs {l1}")));
        }
        let (r0, r1) = (from.right.apply(e)?, to.right.apply(&y)?);
        if r0 != r1 {
            return Err(Error::NotACell(format!("right legs disagree at {e}: {r0} vs {r1}")));
        }
    }
    Ok(Coverage::from_enumeration(dom.exact, bound))
}

/// `P_n` on cells: the cell between the composites of the sources and of the targets.
pub fn hcomp(cells: &[SpanCell]) -> Result<SpanCell> {
    if cells.len() == 1 {
        return Ok(cells[0].clone());
    }
    let froms: Vec<Span> = cells.iter().map(|c| c.from.clone()).collect();
    let tos: Vec<Span> = cells.iter().map(|c| c.to.clone()).collect();
    let from = compose_n(&froms)?;
    let to = compose_n(&tos)?;
    let n = cells.len();
    let comps = cells.iter().enumerate().map(|(i, c)| component(&from.apex, n, i).then(&c.map)).collect();
    let checked = cells.iter().fold(Coverage::Exact, |acc, c| acc.meet(c.checked));
    Ok(SpanCell::assemble(&from, &to, tuple_into(&to.apex, comps), checked))
}

/// `cell` at `position` of `chain`, identities elsewhere.
pub fn whisker(chain: &[Span], position: usize, cell: &SpanCell) -> Result<SpanCell> {
    let cells: Vec<SpanCell> = chain
        .iter()
        .enumerate()
        .map(|(i, a)| if i == position { cell.clone() } else { SpanCell::identity(a) })
        .collect();
    hcomp(&cells)
}

/// Outcome of a pointwise comparison of two parallel cells.
#[derive(Clone, Debug, PartialEq)]
pub struct CellComparison {
    pub equal: bool,
    /// An apex element where the cells differ, with both images.
    pub witness: Option<(Elem, String, String)>,
    pub coverage: Coverage,
}

/// Pointwise equality of parallel cells on the source apex.
pub fn cell_equal(c1: &SpanCell, c2: &SpanCell, bound: usize) -> Result<CellComparison> {
    if c1.from != c2.from || c1.to != c2.to {
        return Err(Error::BoundaryMismatch("cells are not parallel".into()));
    }
    let dom = c1.from.apex.enumerate(bound);
    let coverage = Coverage::from_enumeration(dom.exact, bound);
    for e in dom.items {
        let a = c1.map.apply(&e);
        let b = c2.map.apply(&e);
        if a != b {
            let show = |r: Result<Elem>| match r {
                Ok(v) => v.to_string(),
                Err(err) => format!("error: {err}"),
            };
            return Ok(CellComparison { equal: false, witness: Some((e, show(a), show(b))), coverage });
        }
    }
    Ok(CellComparison { equal: true, witness: None, coverage })
}
