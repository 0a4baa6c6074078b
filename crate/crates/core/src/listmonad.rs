//! The free monoid monad on sets and its lift to the span equipment.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::coverage::Coverage;
use crate::error::Result;
use crate::finset::{Elem, MapF, SetExpr};
use crate::spaneq::{act_scalar, compose_chain, Side, Span, SpanCell};
pub use crate::verdict::Verdict;

/// `m_x: T²x → Tx`.
pub fn mult(x: &SetExpr) -> MapF {
    MapF::concat(x)
}

/// `e_x: x → Tx`.
pub fn unit(x: &SetExpr) -> MapF {
    MapF::singleton(x)
}

/// `T(a) = (Ta_o, Ta^l, Ta^r)`.
pub fn lift_span(a: &Span) -> Span {
    Span {
        source: SetExpr::fm(a.source.clone()),
        target: SetExpr::fm(a.target.clone()),
        apex: SetExpr::fm(a.apex.clone()),
        left: MapF::map_of(&a.left),
        right: MapF::map_of(&a.right),
    }
}

/// `T^k(a)`.
pub fn lift_span_n(k: usize, a: &Span) -> Span {
    let mut s = a.clone();
    for _ in 0..k {
        s = lift_span(&s);
    }
    s
}

pub fn lift_cell(c: &SpanCell) -> SpanCell {
    SpanCell {
        from: lift_span(&c.from),
        to: lift_span(&c.to),
        map: MapF::map_of(&c.map),
        checked: c.checked,
    }
}

pub fn lift_cell_n(k: usize, c: &SpanCell) -> SpanCell {
    let mut s = c.clone();
    for _ in 0..k {
        s = lift_cell(&s);
    }
    s
}

/// A structural cell together with its inverse.
#[derive(Clone, Debug)]
pub struct Invertible {
    pub forward: SpanCell,
    pub inverse: SpanCell,
}

impl Invertible {
    /// Whether both round trips are identities on the enumerated apexes.
    pub fn round_trips(&self, bound: usize) -> Result<(bool, Coverage, Option<Elem>)> {
        let mut cov = Coverage::Exact;
        for (c1, c2) in [(&self.forward, &self.inverse), (&self.inverse, &self.forward)] {
            let dom = c1.from.apex.enumerate(bound);
            cov = cov.meet(Coverage::from_enumeration(dom.exact, bound));
            for e in &dom.items {
                if c2.apply(&c1.apply(e)?)? != *e {
                    return Ok((false, cov, Some(e.clone())));
                }
            }
        }
        Ok((true, cov, None))
    }
}

/// `κ: Ta_1 ⋯ Ta_n ⇒ T(a_1 ⋯ a_n)` (zip) and its inverse (unzip), built directly for every n.
pub fn kappa(x0: &SetExpr, chain: &[Span], bound: usize) -> Result<Invertible> {
    let lifted: Vec<Span> = chain.iter().map(lift_span).collect();
    let from = compose_chain(&SetExpr::fm(x0.clone()), &lifted)?;
    let to = lift_span(&compose_chain(x0, chain)?);
    let (fwd, inv) = match chain.len() {
        0 | 1 => (MapF::identity(&from.apex).with_codomain(&to.apex), MapF::identity(&to.apex).with_codomain(&from.apex)),
        n => (MapF::zip(1, &from.apex, &to.apex), MapF::unzip(1, n, &to.apex, &from.apex)),
    };
    Ok(Invertible { forward: SpanCell::new(&from, &to, fwd, bound)?, inverse: SpanCell::new(&to, &from, inv, bound)? })
}

/// `ν^m_a: m_y·T²a ⇒ Ta·m_x`, `L ↦ (T²a^l L, m L)`, with the regrouping inverse.
pub fn nu_m(a: &Span, bound: usize) -> Result<Invertible> {
    let from = lift_span_n(2, a).with_right(&mult(&a.target));
    let to = act_scalar(&mult(&a.source), &lift_span(a), Side::Left)?;
    let fwd = MapF::pairing(vec![MapF::map_of_n(2, &a.left), mult(&a.apex)], &to.apex);
    let inv = MapF::regroup(2, &to.apex, &from.apex);
    Ok(Invertible { forward: SpanCell::new(&from, &to, fwd, bound)?, inverse: SpanCell::new(&to, &from, inv, bound)? })
}

/// `ν^e_a: e_y·a ⇒ Ta·e_x`, `α ↦ (a^l α, [α])`.
pub fn nu_e(a: &Span, bound: usize) -> Result<Invertible> {
    let from = a.with_right(&unit(&a.target));
    let to = act_scalar(&unit(&a.source), &lift_span(a), Side::Left)?;
    let fwd = MapF::pairing(vec![a.left.clone(), unit(&a.apex)], &to.apex);
    let inv = MapF::proj(&to.apex, 1).then(&MapF::unsingleton(&a.apex));
    Ok(Invertible { forward: SpanCell::new(&from, &to, fwd, bound)?, inverse: SpanCell::new(&to, &from, inv, bound)? })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Fwd,
    Inv,
}

impl Invertible {
    pub fn get(&self, dir: Direction) -> &SpanCell {
        match dir {
            Direction::Fwd => &self.forward,
            Direction::Inv => &self.inverse,
        }
    }
}

pub fn kappa_cell(x0: &SetExpr, chain: &[Span], dir: Direction, bound: usize) -> Result<SpanCell> {
    Ok(kappa(x0, chain, bound)?.get(dir).clone())
}

pub fn nu_m_cell(a: &Span, dir: Direction, bound: usize) -> Result<SpanCell> {
    Ok(nu_m(a, bound)?.get(dir).clone())
}

pub fn nu_e_cell(a: &Span, dir: Direction, bound: usize) -> Result<SpanCell> {
    Ok(nu_e(a, bound)?.get(dir).clone())
}

/// `m∘e_T = id`, `m∘Te = id`, `m∘m_T = m∘Tm` on lists up to `bound`.
pub fn monad_laws(x: &SetExpr, bound: usize) -> Result<Vec<Verdict>> {
    monad_laws_with(x, &|s| mult(s), &|s| unit(s), bound)
}

/// [`monad_laws`] for the multiplication and unit given as families of components.
pub fn monad_laws_with(x: &SetExpr, mult: &dyn Fn(&SetExpr) -> MapF, unit: &dyn Fn(&SetExpr) -> MapF, bound: usize) -> Result<Vec<Verdict>> {
    let tx = SetExpr::fm(x.clone());
    let mut out = Vec::new();
    let lists = tx.enumerate(bound);
    let cov = Coverage::from_enumeration(lists.exact, bound);
    let m = mult(x);
    let left = unit(&tx).then(&m);
    let right = MapF::map_of(&unit(x)).then(&m);
    for (name, f) in [("monad left unit", &left), ("monad right unit", &right)] {
        let bad = lists.items.iter().find(|l| f.apply(l).as_ref() != Ok(*l));
        out.push(match bad {
            None => Verdict::pass(name, cov),
            Some(l) => Verdict::fail(name, cov, format!("{l}")),
        });
    }
    let t3 = SetExpr::fm_n(3, x.clone()).enumerate(bound);
    let cov3 = Coverage::from_enumeration(t3.exact, bound);
    let a = mult(&tx).then(&m);
    let b = MapF::map_of(&m).then(&m);
    let bad = t3.items.iter().find(|l| a.apply(l) != b.apply(l));
    out.push(match bad {
        None => Verdict::pass("monad associativity", cov3),
        Some(l) => Verdict::fail("monad associativity", cov3, format!("{l}")),
    });
    Ok(out)
}

/// Whether the commuting square `top: A → B`, `left: A → C`, `right: B → D`, `bottom: C → D`
/// is a pullback: the comparison `A → B ×_D C` is injective and hits every enumerated element.
pub fn square_is_pullback(name: &str, top: &MapF, left: &MapF, right: &MapF, bottom: &MapF, bound: usize) -> Verdict {
    let pb = SetExpr::pullback(vec![top.codomain.clone(), left.codomain.clone()], vec![(right.clone(), bottom.clone())]);
    let cmp = MapF::pairing(vec![top.clone(), left.clone()], &pb);
    let dom = top.domain.enumerate(bound);
    let mut cov = Coverage::from_enumeration(dom.exact, bound);
    let mut seen = alloc::collections::BTreeMap::new();
    for a in &dom.items {
        let Ok(v) = cmp.apply(a) else {
            return Verdict::fail(name, cov, format!("comparison undefined at {a}"));
        };
        if !pb.contains(&v) {
            return Verdict::fail(name, cov, format!("square does not commute at {a}"));
        }
        if let Some(prev) = seen.insert(v.clone(), a.clone()) {
            return Verdict::fail(name, cov, format!("{prev} and {a} both map to {v}"));
        }
    }
    let cod = pb.enumerate(bound);
    cov = cov.meet(Coverage::from_enumeration(cod.exact, bound));
    for v in &cod.items {
        let pre = top.domain.preimage(&cmp, v, bound);
        cov = cov.meet(Coverage::from_enumeration(pre.exact, bound));
        if pre.items.is_empty() {
            return Verdict::fail(name, cov, format!("{v} has no preimage"));
        }
    }
    Verdict::pass(name, cov)
}

/// Naturality squares of `m` and `e` at `f` are pullbacks.
pub fn cartesian_naturality(f: &MapF, bound: usize) -> Vec<Verdict> {
    let (x, y) = (&f.domain, &f.codomain);
    vec![
        square_is_pullback(
            "m naturality square is a pullback",
            &MapF::map_of_n(2, f),
            &mult(x),
            &mult(y),
            &MapF::map_of(f),
            bound,
        ),
        square_is_pullback("e naturality square is a pullback", f, &unit(x), &unit(y), &MapF::map_of(f), bound),
    ]
}

/// `T(A ×_C B) → TA ×_{TC} TB` is a bijection.
pub fn preserves_pullback(f: &MapF, g: &MapF, bound: usize) -> Result<Verdict> {
    let pb = crate::finset::pullback(f, g)?;
    let t = SetExpr::fm(pb.apex.clone());
    let target = SetExpr::pullback(
        vec![SetExpr::fm(f.domain.clone()), SetExpr::fm(g.domain.clone())],
        vec![(MapF::map_of(f), MapF::map_of(g))],
    );
    let cmp = MapF::pairing(vec![MapF::map_of(&pb.proj_left), MapF::map_of(&pb.proj_right)], &target);
    Ok(bijective("T preserves the pullback", &cmp, &t, &target, bound))
}

/// Whether `cmp: dom → cod` is injective and hits every enumerated element of `cod`.
pub fn bijective(name: &str, cmp: &MapF, dom: &SetExpr, cod: &SetExpr, bound: usize) -> Verdict {
        let d = dom.enumerate(bound);
        let c = cod.enumerate(bound);
        let mut cov = Coverage::from_enumeration(d.exact && c.exact, bound);
        let mut images = Vec::with_capacity(d.items.len());
        for e in &d.items {
            match cmp.apply(e) {
                Ok(v) => images.push(v),
                Err(err) => return Verdict::fail(name, cov, format!("{e}: {err}")),
            }
        }
        crate::finset::canonical_sort(&mut images);
        let before = images.len();
        images.dedup();
        if images.len() != before {
            return Verdict::fail(name, cov, "comparison is not injective".into());
        }
        for v in &c.items {
            let pre = dom.preimage(cmp, v, bound);
            cov = cov.meet(Coverage::from_enumeration(pre.exact, bound));
            if pre.items.is_empty() {
                return Verdict::fail(name, cov, format!("{v} has no preimage"));
            }
        }
        Verdict::pass(name, cov)
}
