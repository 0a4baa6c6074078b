//! Monoids in the span equipment (categories), monoids in its Kleisli equipment (multicategories),
//! their homomorphisms, and the lift of monoids along the list monad.

pub mod mat;
mod present;

pub use present::{
    cat_to_monoid, identity_name, monoid_to_cat, multicat_to_tmonoid, thin_hom, tmonoid_to_multicat, FiniteCategory,
    FiniteMulticat, MorDecl, MulticatTable, OpDecl,
};

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::coverage::Coverage;
use crate::error::{Error, Result};
use crate::finset::{Elem, MapF, SetExpr};
use crate::kleisli::{kl_compose_n, kl_hcomp, kl_identity, kl_to_nested};
use crate::listmonad::{kappa, lift_cell, lift_span, mult, unit};
use crate::spaneq::{associator, cell_equal, compose_n, hcomp, identity, Partition, Span, SpanCell};
use crate::verdict::{differ, pointwise, Verdict};

/// A monoid `(x, a, μ, η)` in the span equipment.
#[derive(Clone, Debug)]
pub struct Monoid {
    pub name: String,
    pub object: SetExpr,
    pub vector: Span,
    /// `a·a ⇒ a`
    pub mu: SpanCell,
    /// `i_x ⇒ a`
    pub eta: SpanCell,
}

impl Monoid {
    /// Assembles the data without checking the axioms; see [`check_monoid`].
    pub fn new(name: &str, vector: Span, mu: MapF, eta: MapF) -> Result<Monoid> {
        if vector.source != vector.target {
            return Err(Error::BoundaryMismatch(format!("a monoid needs an endo-vector, got {vector}")));
        }
        let x = vector.source.clone();
        let aa = compose_n(&[vector.clone(), vector.clone()])?;
        let mu = SpanCell::assemble(&aa, &vector, mu, Coverage::UpTo(0));
        let eta = SpanCell::assemble(&identity(&x), &vector, eta, Coverage::UpTo(0));
        Ok(Monoid { name: name.into(), object: x, vector, mu, eta })
    }

    /// `i_x` with identity multiplication and unit.
    pub fn trivial(x: &SetExpr) -> Monoid {
        let i = identity(x);
        let aa = compose_n(&[i.clone(), i.clone()]).expect("identity spans compose");
        let mu = MapF::proj(&aa.apex, 0).with_codomain(x);
        Monoid::new("trivial", i, mu, MapF::identity(x)).expect("identity span is an endo-vector")
    }
}

fn cell_verdict(name: &str, c: &SpanCell, bound: usize) -> Verdict {
    match c.recheck(bound) {
        Ok(cov) => Verdict::pass(name, cov),
        Err(e) => Verdict::from_error(name, &e),
    }
}

fn compare(name: &str, c1: Result<SpanCell>, c2: Result<SpanCell>, bound: usize) -> Verdict {
    let run = || -> Result<Verdict> {
        let cmp = cell_equal(&c1?, &c2?, bound)?;
        Ok(match cmp.witness {
            None => Verdict::pass(name, cmp.coverage),
            Some((e, l, r)) => Verdict::fail(name, cmp.coverage, format!("at {e}: {l} vs {r}")),
        })
    };
    Verdict::from_result(name, run())
}

/// The monoid axioms: both structure maps are cells, associativity against the flat triple
/// composite, and the two unit laws against the unitors.
pub fn check_monoid(m: &Monoid, bound: usize) -> Vec<Verdict> {
    let (x, a) = (&m.object, &m.vector);
    let id_a = SpanCell::identity(a);
    let mut out = vec![cell_verdict("mu is a cell", &m.mu, bound), cell_verdict("eta is a cell", &m.eta, bound)];
    let three = [a.clone(), a.clone(), a.clone()];
    let route = |p: Vec<usize>, inner: Result<SpanCell>| -> Result<SpanCell> {
        let s = associator(&Partition::new(p), x, &three, bound)?;
        SpanCell::vcomp_all(&[s.backward, inner?, m.mu.clone()])
    };
    out.push(compare(
        "monoid associativity",
        route(vec![2, 1], hcomp(&[m.mu.clone(), id_a.clone()])),
        route(vec![1, 2], hcomp(&[id_a.clone(), m.mu.clone()])),
        bound,
    ));
    for (name, p, cells) in [
        ("monoid left unit", vec![0, 1], [m.eta.clone(), id_a.clone()]),
        ("monoid right unit", vec![1, 0], [id_a.clone(), m.eta.clone()]),
    ] {
        let lhs = (|| {
            let s = associator(&Partition::new(p), x, core::slice::from_ref(a), bound)?;
            SpanCell::vcomp_all(&[s.backward, hcomp(&cells)?, m.mu.clone()])
        })();
        out.push(compare(name, lhs, Ok(id_a.clone()), bound));
    }
    out
}

/// A monoid homomorphism `(f, φ_f)`: `φ` is a cell from `a` with both legs pushed along `f` to `b`.
#[derive(Clone, Debug)]
pub struct MonoidHom {
    pub source: Monoid,
    pub target: Monoid,
    pub scalar: MapF,
    pub phi: SpanCell,
}

impl MonoidHom {
    pub fn new(source: &Monoid, target: &Monoid, scalar: MapF, phi: MapF) -> MonoidHom {
        let from = source.vector.with_left(&scalar).with_right(&scalar);
        let phi = SpanCell::assemble(&from, &target.vector, phi, Coverage::UpTo(0));
        MonoidHom { source: source.clone(), target: target.clone(), scalar, phi }
    }

    pub fn identity(m: &Monoid) -> MonoidHom {
        MonoidHom::new(m, m, MapF::identity(&m.object), MapF::identity(&m.vector.apex))
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &MonoidHom) -> MonoidHom {
        MonoidHom::new(&self.source, &other.target, self.scalar.then(&other.scalar), self.phi.map.then(&other.phi.map))
    }
}

/// `φ` is a cell, `φ∘μ_a = μ_b∘(φ·φ)`, `φ∘η_a = η_b∘f`.
pub fn check_monoid_hom(h: &MonoidHom, bound: usize) -> Vec<Verdict> {
    let (a, b) = (&h.source, &h.target);
    let aa = &a.mu.from;
    let mult_law = pointwise("hom preserves multiplication", &aa.apex, bound, |e| {
        let t = e.as_tuple().ok_or_else(|| Error::Domain { elem: format!("{e}"), set: format!("{}", aa.apex) })?;
        let lhs = h.phi.apply(&a.mu.apply(e)?)?;
        let rhs = b.mu.apply(&Elem::pair(h.phi.apply(&t[0])?, h.phi.apply(&t[1])?))?;
        Ok(differ(&lhs, &rhs))
    });
    let unit_law = pointwise("hom preserves units", &a.object, bound, |c| {
        Ok(differ(&h.phi.apply(&a.eta.apply(c)?)?, &b.eta.apply(&h.scalar.apply(c)?)?))
    });
    vec![cell_verdict("phi is a cell", &h.phi, bound), mult_law, unit_law]
}

/// Pointwise equality of the scalar and cell components of two homomorphisms with the same source.
pub fn hom_equal(name: &str, s1: (&MapF, &MapF), s2: (&MapF, &MapF), object: &SetExpr, apex: &SetExpr, bound: usize) -> Vec<Verdict> {
    vec![
        pointwise(&format!("{name}: scalars agree"), object, bound, |c| Ok(differ(&s1.0.apply(c)?, &s2.0.apply(c)?))),
        pointwise(&format!("{name}: cells agree"), apex, bound, |e| Ok(differ(&s1.1.apply(e)?, &s2.1.apply(e)?))),
    ]
}

/// A T-monoid `(x, a, μ, η)`: a monoid in the Kleisli equipment of the list monad.
#[derive(Clone, Debug)]
pub struct TMonoid {
    pub name: String,
    pub object: SetExpr,
    /// `x ⇸ Tx`
    pub vector: Span,
    /// `K(a, a) ⇒ a`
    pub mu: SpanCell,
    /// `kl_identity(x) ⇒ a`
    pub eta: SpanCell,
}

impl TMonoid {
    /// Assembles the data without checking the axioms; see [`check_tmonoid`].
    pub fn new(name: &str, vector: Span, mu: MapF, eta: MapF) -> Result<TMonoid> {
        let x = vector.source.clone();
        if vector.target != SetExpr::fm(x.clone()) {
            return Err(Error::BoundaryMismatch(format!("a T-monoid needs a vector x ⇸ Tx, got {vector}")));
        }
        let aa = kl_compose_n(&x, &[vector.clone(), vector.clone()])?;
        let mu = SpanCell::assemble(&aa, &vector, mu, Coverage::UpTo(0));
        let eta = SpanCell::assemble(&kl_identity(&x), &vector, eta, Coverage::UpTo(0));
        Ok(TMonoid { name: name.into(), object: x, vector, mu, eta })
    }

    /// The Kleisli identity with identity structure: one operation `[c] → c` per object.
    pub fn trivial(x: &SetExpr) -> TMonoid {
        let a = kl_identity(x);
        let aa = kl_compose_n(x, &[a.clone(), a.clone()]).expect("identity vectors compose");
        let mu = MapF::proj(&aa.apex, 0).with_codomain(x);
        TMonoid::new("trivial", a, mu, MapF::identity(x)).expect("Kleisli identity has the right shape")
    }
}

/// The three T-monoid axioms (associativity and two unit laws, each a Kleisli pasting), after
/// checking that `μ` and `η` are cells.
pub fn check_tmonoid(t: &TMonoid, bound: usize) -> Vec<Verdict> {
    let (x, a) = (&t.object, &t.vector);
    let id_a = SpanCell::identity(a);
    let mut out = vec![cell_verdict("mu is a cell", &t.mu, bound), cell_verdict("eta is a cell", &t.eta, bound)];
    let three = [a.clone(), a.clone(), a.clone()];
    let route = |p: Vec<usize>, cells: [SpanCell; 2]| -> Result<SpanCell> {
        let s = kl_to_nested(&Partition::new(p), x, &three)?;
        SpanCell::vcomp_all(&[s, kl_hcomp(x, &cells)?, t.mu.clone()])
    };
    out.push(compare(
        "T-monoid associativity",
        route(vec![2, 1], [t.mu.clone(), id_a.clone()]),
        route(vec![1, 2], [id_a.clone(), t.mu.clone()]),
        bound,
    ));
    for (name, p, cells) in [
        ("T-monoid left unit", vec![0, 1], [t.eta.clone(), id_a.clone()]),
        ("T-monoid right unit", vec![1, 0], [id_a.clone(), t.eta.clone()]),
    ] {
        let lhs = (|| {
            let s = kl_to_nested(&Partition::new(p), x, core::slice::from_ref(a))?;
            SpanCell::vcomp_all(&[s, kl_hcomp(x, &cells)?, t.mu.clone()])
        })();
        out.push(compare(name, lhs, Ok(id_a.clone()), bound));
    }
    out
}

/// A T-monoid homomorphism `(f, φ_f)`: `φ` goes from `a` with legs `f`, `Tf` to `b`.
#[derive(Clone, Debug)]
pub struct TMonoidHom {
    pub source: TMonoid,
    pub target: TMonoid,
    pub scalar: MapF,
    pub phi: SpanCell,
}

impl TMonoidHom {
    pub fn new(source: &TMonoid, target: &TMonoid, scalar: MapF, phi: MapF) -> TMonoidHom {
        let from = source.vector.with_left(&scalar).with_right(&MapF::map_of(&scalar));
        let phi = SpanCell::assemble(&from, &target.vector, phi, Coverage::UpTo(0));
        TMonoidHom { source: source.clone(), target: target.clone(), scalar, phi }
    }

    pub fn identity(t: &TMonoid) -> TMonoidHom {
        TMonoidHom::new(t, t, MapF::identity(&t.object), MapF::identity(&t.vector.apex))
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &TMonoidHom) -> TMonoidHom {
        TMonoidHom::new(&self.source, &other.target, self.scalar.then(&other.scalar), self.phi.map.then(&other.phi.map))
    }

    /// Images of the scalar and of the cell.
    pub fn apply(&self, object: &Elem, op: &Elem) -> Result<(Elem, Elem)> {
        Ok((self.scalar.apply(object)?, self.phi.apply(op)?))
    }
}

/// `φ` is a cell, `φ(μ(α, L)) = μ(φα, Tφ L)`, `φ(η c) = η(f c)`.
pub fn check_tmonoid_hom(h: &TMonoidHom, bound: usize) -> Vec<Verdict> {
    let (a, b) = (&h.source, &h.target);
    let aa = &a.mu.from;
    let t_phi = MapF::map_of(&h.phi.map);
    let mult_law = pointwise("hom preserves multiplication", &aa.apex, bound, |e| {
        let t = e.as_tuple().ok_or_else(|| Error::Domain { elem: format!("{e}"), set: format!("{}", aa.apex) })?;
        let lhs = h.phi.apply(&a.mu.apply(e)?)?;
        let rhs = b.mu.apply(&Elem::pair(h.phi.apply(&t[0])?, t_phi.apply(&t[1])?))?;
        Ok(differ(&lhs, &rhs))
    });
    let unit_law = pointwise("hom preserves units", &a.object, bound, |c| {
        Ok(differ(&h.phi.apply(&a.eta.apply(c)?)?, &b.eta.apply(&h.scalar.apply(c)?)?))
    });
    vec![cell_verdict("phi is a cell", &h.phi, bound), mult_law, unit_law]
}

/// The monad lifted to monoids: `(Tx, Ta, Tμ∘κ_{a,a}, Tη∘κ_x)`.
#[allow(non_snake_case)]
pub fn T_on_monoids(m: &Monoid, bound: usize) -> Result<Monoid> {
    let (x, a) = (&m.object, &m.vector);
    let k2 = kappa(x, &[a.clone(), a.clone()], bound)?.forward;
    let k0 = kappa(x, &[], bound)?.forward;
    let mu = k2.vcomp(&lift_cell(&m.mu))?;
    let eta = k0.vcomp(&lift_cell(&m.eta))?;
    let mut out = Monoid::new(&format!("T({})", m.name), lift_span(a), mu.map, eta.map)?;
    out.mu.checked = mu.checked;
    out.eta.checked = eta.checked;
    Ok(out)
}

/// The monad lifted to monoid homomorphisms: `(Tf, Tφ)`.
#[allow(non_snake_case)]
pub fn T_on_monoid_homs(h: &MonoidHom, bound: usize) -> Result<MonoidHom> {
    Ok(MonoidHom::new(
        &T_on_monoids(&h.source, bound)?,
        &T_on_monoids(&h.target, bound)?,
        MapF::map_of(&h.scalar),
        MapF::map_of(&h.phi.map),
    ))
}

/// `(m_x, ν^m_a): 𝕋𝕋(x, a) → 𝕋(x, a)`; the cell is `ν^m` followed by the projection onto `Ta`.
pub fn monoid_mult(m: &Monoid, bound: usize) -> Result<MonoidHom> {
    let t1 = T_on_monoids(m, bound)?;
    let t2 = T_on_monoids(&t1, bound)?;
    let nu = crate::listmonad::nu_m(&m.vector, bound)?.forward;
    let phi = nu.map.then(&MapF::proj(&nu.to.apex, 1));
    Ok(MonoidHom::new(&t2, &t1, mult(&m.object), phi))
}

/// `(e_x, ν^e_a): (x, a) → 𝕋(x, a)`.
pub fn monoid_unit(m: &Monoid, bound: usize) -> Result<MonoidHom> {
    let t1 = T_on_monoids(m, bound)?;
    let nu = crate::listmonad::nu_e(&m.vector, bound)?.forward;
    let phi = nu.map.then(&MapF::proj(&nu.to.apex, 1));
    Ok(MonoidHom::new(m, &t1, unit(&m.object), phi))
}

/// The components of the lifted monad are homomorphisms and satisfy the monad laws.
pub fn lifted_monad_laws(m: &Monoid, bound: usize) -> Result<Vec<Verdict>> {
    let mut out = Vec::new();
    let mu = monoid_mult(m, bound)?;
    let eta = monoid_unit(m, bound)?;
    let tm = T_on_monoids(m, bound)?;
    for (label, h) in [("m", &mu), ("e", &eta)] {
        for mut v in check_monoid_hom(h, bound) {
            v.name = format!("{label}: {}", v.name);
            out.push(v);
        }
    }
    let mu_t = monoid_mult(&tm, bound)?;
    let t_mu = T_on_monoid_homs(&mu, bound)?;
    let lhs = t_mu.then(&mu);
    let rhs = mu_t.then(&mu);
    let t3 = &lhs.source;
    out.extend(hom_equal(
        "monad associativity",
        (&lhs.scalar, &lhs.phi.map),
        (&rhs.scalar, &rhs.phi.map),
        &t3.object,
        &t3.vector.apex,
        bound,
    ));
    let id = MonoidHom::identity(&tm);
    for (name, h) in [("monad left unit", monoid_unit(&tm, bound)?.then(&mu)), ("monad right unit", T_on_monoid_homs(&eta, bound)?.then(&mu))] {
        out.extend(hom_equal(name, (&h.scalar, &h.phi.map), (&id.scalar, &id.phi.map), &tm.object, &tm.vector.apex, bound));
    }
    Ok(out)
}

#[cfg(test)]
mod tests;
