//! Modules between monoids in the span equipment, i.e. profunctors between finite categories, and
//! their composition by coequalizers.
//!
//! A module `m: x ⇸ y` from `(x, a)` to `(y, b)` has an element `μ` with ends `m^l μ ∈ x` and
//! `m^r μ ∈ y`. The right action `ma ⇒ m` reads the path `[a, m]` and sends `(α, μ)` to `α·μ`; the
//! left action `bm ⇒ m` reads the path `[m, b]` and sends `(μ, β)` to `μ·β`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use petgraph::unionfind::UnionFind;

use crate::coverage::Coverage;
use crate::error::{Error, Result};
use crate::finset::{Elem, MapF, SetExpr};
use crate::monoids::{check_monoid, Monoid, MonoidHom};
use crate::spaneq::{compose_n, Span, SpanCell};
use crate::verdict::{differ, pointwise, Verdict};

/// A module `m: x ⇸ y` with a right action of `(x, a)` and a left action of `(y, b)`.
#[derive(Clone, Debug)]
pub struct BiModule {
    pub name: String,
    /// `(y, b)`
    pub left: Monoid,
    /// `(x, a)`
    pub right: Monoid,
    pub carrier: Span,
    /// `bm ⇒ m`, on the path `[m, b]`.
    pub left_action: SpanCell,
    /// `ma ⇒ m`, on the path `[a, m]`.
    pub right_action: SpanCell,
}

fn same_monoid(p: &Monoid, q: &Monoid) -> bool {
    p.object == q.object && p.vector == q.vector
}

impl BiModule {
    /// Assembles the data without checking the axioms; see [`check_bimodule`].
    pub fn new(name: &str, left: &Monoid, right: &Monoid, carrier: Span, left_action: MapF, right_action: MapF) -> Result<BiModule> {
        if carrier.source != right.object || carrier.target != left.object {
            return Err(Error::BoundaryMismatch(format!(
                "carrier {} ⇸ {} between monoids on {} and {}",
                carrier.source, carrier.target, right.object, left.object
            )));
        }
        let mb = compose_n(&[carrier.clone(), left.vector.clone()])?;
        let am = compose_n(&[right.vector.clone(), carrier.clone()])?;
        Ok(BiModule {
            name: name.into(),
            left: left.clone(),
            right: right.clone(),
            left_action: SpanCell::assemble(&mb, &carrier, left_action, Coverage::UpTo(0)),
            right_action: SpanCell::assemble(&am, &carrier, right_action, Coverage::UpTo(0)),
            carrier,
        })
    }

    /// `(a, μ_a, μ_a)`: a monoid acting on itself from both sides.
    pub fn identity(m: &Monoid) -> BiModule {
        let mu = m.mu.map.clone();
        let a = m.vector.clone();
        BiModule::new(&format!("1_{}", m.name), m, m, a, mu.clone(), mu).expect("a monoid is a module over itself")
    }

    /// `α·μ`
    pub fn act_right(&self, alpha: &Elem, mu: &Elem) -> Result<Elem> {
        self.right_action.apply(&Elem::pair(alpha.clone(), mu.clone()))
    }

    /// `μ·β`
    pub fn act_left(&self, mu: &Elem, beta: &Elem) -> Result<Elem> {
        self.left_action.apply(&Elem::pair(mu.clone(), beta.clone()))
    }
}

fn cell_verdict(name: &str, c: &SpanCell, bound: usize) -> Verdict {
    match c.recheck(bound) {
        Ok(cov) => Verdict::pass(name, cov),
        Err(e) => Verdict::from_error(name, &e),
    }
}

fn triple(e: &Elem) -> Result<(&Elem, &Elem, &Elem)> {
    match e.as_tuple() {
        Some([p, q, r]) => Ok((p, q, r)),
        _ => Err(Error::Rule { map: "triple".into(), elem: format!("{e}") }),
    }
}

fn pair(e: &Elem) -> Result<(&Elem, &Elem)> {
    match e.as_tuple() {
        Some([p, q]) => Ok((p, q)),
        _ => Err(Error::Rule { map: "pair".into(), elem: format!("{e}") }),
    }
}

/// Both actions are cells, each is associative and unital, and they commute.
pub fn check_bimodule(m: &BiModule, bound: usize) -> Vec<Verdict> {
    let (a, b, c) = (&m.right, &m.left, &m.carrier);
    let mut out = vec![
        cell_verdict("left action is a cell", &m.left_action, bound),
        cell_verdict("right action is a cell", &m.right_action, bound),
    ];
    let run = |name: &str, chain: &[Span], law: &dyn Fn(&Elem) -> Result<Option<String>>| -> Verdict {
        match compose_n(chain) {
            Ok(s) => pointwise(name, &s.apex, bound, law),
            Err(e) => Verdict::from_error(name, &e),
        }
    };
    out.push(run("right action associativity", &[a.vector.clone(), a.vector.clone(), c.clone()], &|e| {
        let (a1, a2, mu) = triple(e)?;
        let lhs = m.act_right(a1, &m.act_right(a2, mu)?)?;
        let rhs = m.act_right(&a.mu.apply(&Elem::pair(a1.clone(), a2.clone()))?, mu)?;
        Ok(differ(&lhs, &rhs))
    }));
    out.push(pointwise("right action unit", &c.apex, bound, |mu| {
        Ok(differ(&m.act_right(&a.eta.apply(&c.left.apply(mu)?)?, mu)?, mu))
    }));
    out.push(run("left action associativity", &[c.clone(), b.vector.clone(), b.vector.clone()], &|e| {
        let (mu, b1, b2) = triple(e)?;
        let lhs = m.act_left(&m.act_left(mu, b1)?, b2)?;
        let rhs = m.act_left(mu, &b.mu.apply(&Elem::pair(b1.clone(), b2.clone()))?)?;
        Ok(differ(&lhs, &rhs))
    }));
    out.push(pointwise("left action unit", &c.apex, bound, |mu| {
        Ok(differ(&m.act_left(mu, &b.eta.apply(&c.right.apply(mu)?)?)?, mu))
    }));
    out.push(run("actions commute", &[a.vector.clone(), c.clone(), b.vector.clone()], &|e| {
        let (al, mu, be) = triple(e)?;
        Ok(differ(&m.act_left(&m.act_right(al, mu)?, be)?, &m.act_right(al, &m.act_left(mu, be)?)?))
    }));
    out
}

/// A cell `m ⇒ m'` between modules over the same monoids.
#[derive(Clone, Debug)]
pub struct ModuleMap {
    pub source: BiModule,
    pub target: BiModule,
    pub cell: SpanCell,
}

impl ModuleMap {
    pub fn new(source: &BiModule, target: &BiModule, map: MapF) -> ModuleMap {
        let cell = SpanCell::assemble(&source.carrier, &target.carrier, map, Coverage::UpTo(0));
        ModuleMap { source: source.clone(), target: target.clone(), cell }
    }
}

/// The cell condition and compatibility with both actions.
pub fn check_module_map(f: &ModuleMap, bound: usize) -> Vec<Verdict> {
    let (s, t) = (&f.source, &f.target);
    let mut out = vec![cell_verdict("module map is a cell", &f.cell, bound)];
    if !same_monoid(&s.left, &t.left) || !same_monoid(&s.right, &t.right) {
        out.push(Verdict::fail("module map monoids", Coverage::Exact, "source and target modules act by different monoids".into()));
        return out;
    }
    out.push(pointwise("compatible with the right action", &s.right_action.from.apex, bound, |e| {
        let (al, mu) = pair(e)?;
        Ok(differ(&f.cell.apply(&s.act_right(al, mu)?)?, &t.act_right(al, &f.cell.apply(mu)?)?))
    }));
    out.push(pointwise("compatible with the left action", &s.left_action.from.apex, bound, |e| {
        let (mu, be) = pair(e)?;
        Ok(differ(&f.cell.apply(&s.act_left(mu, be)?)?, &t.act_left(&f.cell.apply(mu)?, be)?))
    }));
    out
}

/// A composite module together with the quotient from the raw pullback onto it.
#[derive(Clone, Debug)]
pub struct Composite {
    pub module: BiModule,
    /// `[m, n]` before the quotient.
    pub raw: Span,
    /// Raw pair to its class representative.
    pub quotient: MapF,
    /// Raw pairs in enumeration order.
    pub raw_pairs: Vec<Elem>,
}

impl Composite {
    pub fn class_of(&self, pair: &Elem) -> Result<Elem> {
        self.quotient.apply(pair)
    }

    /// The members of each class, keyed by representative.
    pub fn classes(&self) -> BTreeMap<Elem, Vec<Elem>> {
        let mut out: BTreeMap<Elem, Vec<Elem>> = BTreeMap::new();
        for p in &self.raw_pairs {
            if let Ok(r) = self.quotient.apply(p) {
                out.entry(r).or_default().push(p.clone());
            }
        }
        out
    }
}

fn finite(s: &SetExpr, what: &str) -> Result<Vec<Elem>> {
    if !s.exactly_enumerable() {
        return Err(Error::InfeasibleEnumeration(format!("{what} {s} is not finite")));
    }
    Ok(s.enumerate(usize::MAX).items)
}

/// The composite of `m: x ⇸ y` and `n: y ⇸ z` over `(y, b)`: pairs `(μ, ν)` agreeing in `y`,
/// modulo `(μ·β, ν) ~ (μ, β·ν)`. Each class is named by its least member.
pub fn module_compose(m: &BiModule, n: &BiModule) -> Result<Composite> {
    if !same_monoid(&m.left, &n.right) {
        return Err(Error::ChainMismatch {
            position: 1,
            detail: format!("{} acts on {} by {} but {} by {}", m.name, m.carrier.target, m.left.name, n.name, n.right.name),
        });
    }
    let b = &m.left;
    let raw = compose_n(&[m.carrier.clone(), n.carrier.clone()])?;
    let pairs = finite(&raw.apex, "the pullback")?;
    let index: BTreeMap<Elem, usize> = pairs.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let mut uf = UnionFind::<usize>::new(pairs.len());
    let triples = compose_n(&[m.carrier.clone(), b.vector.clone(), n.carrier.clone()])?;
    for t in finite(&triples.apex, "the balanced triples")? {
        let (mu, be, nu) = triple(&t)?;
        let p = Elem::pair(m.act_left(mu, be)?, nu.clone());
        let q = Elem::pair(mu.clone(), n.act_right(be, nu)?);
        let (Some(&i), Some(&j)) = (index.get(&p), index.get(&q)) else {
            return Err(Error::NotACell(format!("actions leave the pullback at {t}")));
        };
        uf.union(i, j);
    }
    let mut least: BTreeMap<usize, Elem> = BTreeMap::new();
    for (i, p) in pairs.iter().enumerate() {
        let root = uf.find(i);
        match least.get(&root) {
            Some(r) if r <= p => {}
            _ => {
                least.insert(root, p.clone());
            }
        }
    }
    let graph: BTreeMap<Elem, Elem> = pairs.iter().enumerate().map(|(i, p)| (p.clone(), least[&uf.find(i)].clone())).collect();
    let apex = SetExpr::fin(least.values().cloned());
    let quotient = MapF::table(&SetExpr::fin(pairs.iter().cloned()), &apex, graph)?.with_domain(&raw.apex);
    let leg = |f: &MapF, cod: &SetExpr| -> Result<MapF> {
        MapF::table(&apex, cod, least.values().map(|r| Ok((r.clone(), f.apply(r)?))).collect::<Result<_>>()?)
    };
    let carrier = Span::new(leg(&raw.left, &raw.source)?, leg(&raw.right, &raw.target)?)?;

    let (mc, nc, q1, q2) = (m.clone(), n.clone(), quotient.clone(), quotient.clone());
    let nb = n.left.vector.clone();
    let am = compose_n(&[m.right.vector.clone(), carrier.clone()])?;
    let right_action = MapF::native("right action on a composite", &am.apex, &carrier.apex, move |e| {
        let (al, cls) = pair(e)?;
        let (mu, nu) = pair(cls)?;
        q1.apply(&Elem::pair(mc.act_right(al, mu)?, nu.clone()))
    });
    let nc_apex = compose_n(&[carrier.clone(), nb])?.apex;
    let left_action = MapF::native("left action on a composite", &nc_apex, &carrier.apex, move |e| {
        let (cls, ga) = pair(e)?;
        let (mu, nu) = pair(cls)?;
        q2.apply(&Elem::pair(mu.clone(), nc.act_left(nu, ga)?))
    });
    let module = BiModule::new(&format!("{} ⊗ {}", n.name, m.name), &n.left, &m.right, carrier, left_action, right_action)?;
    Ok(Composite { module, raw, quotient, raw_pairs: pairs })
}

/// A candidate isomorphism out of a composite, given on raw pairs.
///
/// Verdicts: the value is constant on classes, the induced map is a module map, and it is a
/// bijection onto the target carrier.
pub fn check_canonical_iso(name: &str, comp: &Composite, target: &BiModule, on_pairs: &MapF, bound: usize) -> Vec<Verdict> {
    let mut out = Vec::new();
    let mut induced = BTreeMap::new();
    let mut well = Verdict::pass(&format!("{name}: constant on classes"), Coverage::Exact);
    for (rep, members) in comp.classes() {
        let mut first: Option<Elem> = None;
        for p in members {
            match on_pairs.apply(&p) {
                Ok(v) => match &first {
                    None => first = Some(v),
                    Some(f) if *f != v && well.ok => {
                        well = Verdict::fail(&well.name, Coverage::Exact, format!("{p} ↦ {v} but its class {rep} ↦ {f}"));
                    }
                    _ => {}
                },
                Err(e) if well.ok => well = Verdict::fail(&well.name, Coverage::Exact, format!("{p}: {e}")),
                Err(_) => {}
            }
        }
        if let Some(f) = first {
            induced.insert(rep, f);
        }
    }
    out.push(well);
    let map = match MapF::table(&comp.module.carrier.apex, &target.carrier.apex, induced.clone()) {
        Ok(m) => m,
        Err(e) => {
            out.push(Verdict::from_error(&format!("{name}: induced map"), &e));
            return out;
        }
    };
    let f = ModuleMap::new(&comp.module, target, map.clone());
    out.extend(check_module_map(&f, bound).into_iter().map(|mut v| {
        v.name = format!("{name}: {}", v.name);
        v
    }));
    out.push(crate::listmonad::bijective(
        &format!("{name}: bijective"),
        &map,
        &comp.module.carrier.apex,
        &target.carrier.apex,
        bound,
    ));
    out
}

/// The module of a functor `F: (x, a) → (y, b)`: elements `(c, δ)` with `δ: d → Fc`, ends `c` and
/// `d`. `α·(c, δ) = (cod α, Fα∘δ)` and `(c, δ)·β = (c, δ∘β)`.
pub fn representable(f: &MonoidHom) -> Result<BiModule> {
    let (a, b) = (&f.source, &f.target);
    let cs = finite(&a.object, "the source objects")?;
    let ds = finite(&b.vector.apex, "the target morphisms")?;
    let mut elems = Vec::new();
    for c in &cs {
        let fc = f.scalar.apply(c)?;
        for d in &ds {
            if b.vector.left.apply(d)? == fc {
                elems.push(Elem::pair(c.clone(), d.clone()));
            }
        }
    }
    let apex = SetExpr::fin(elems.clone());
    let left = MapF::table(&apex, &a.object, elems.iter().map(|e| Ok((e.clone(), pair(e)?.0.clone()))).collect::<Result<_>>()?)?;
    let right = MapF::table(
        &apex,
        &b.object,
        elems.iter().map(|e| Ok((e.clone(), b.vector.right.apply(pair(e)?.1)?))).collect::<Result<_>>()?,
    )?;
    let carrier = Span::new(left, right)?;
    let (fa, bmu, a_left) = (f.phi.map.clone(), b.mu.map.clone(), a.vector.left.clone());
    let am = compose_n(&[a.vector.clone(), carrier.clone()])?;
    let right_action = MapF::native("functor acts by post-composition", &am.apex, &apex, move |e| {
        let (al, cd) = pair(e)?;
        let (_, de) = pair(cd)?;
        Ok(Elem::pair(a_left.apply(al)?, bmu.apply(&Elem::pair(fa.apply(al)?, de.clone()))?))
    });
    let bmu = b.mu.map.clone();
    let mb = compose_n(&[carrier.clone(), b.vector.clone()])?;
    let left_action = MapF::native("pre-composition", &mb.apex, &apex, move |e| {
        let (cd, be) = pair(e)?;
        let (c, de) = pair(cd)?;
        Ok(Elem::pair(c.clone(), bmu.apply(&Elem::pair(de.clone(), be.clone()))?))
    });
    BiModule::new(&format!("rep({} → {})", a.name, b.name), b, a, carrier, left_action, right_action)
}

/// The functor between presented categories given on objects and non-identity morphisms;
/// identities go to identities.
pub fn functor(source: &Monoid, target: &Monoid, on_objects: &[(&str, &str)], on_morphisms: &[(&str, &str)]) -> Result<MonoidHom> {
    let objects: BTreeMap<Elem, Elem> = on_objects.iter().map(|(p, q)| (Elem::atom(p), Elem::atom(q))).collect();
    let mut mors: BTreeMap<Elem, Elem> = on_morphisms.iter().map(|(p, q)| (Elem::atom(p), Elem::atom(q))).collect();
    for c in finite(&source.object, "the source objects")? {
        let fc = objects.get(&c).ok_or_else(|| Error::Presentation(format!("no image for object {c}")))?;
        mors.insert(source.eta.apply(&c)?, target.eta.apply(fc)?);
    }
    let scalar = MapF::table(&source.object, &target.object, objects)?;
    let phi = MapF::table(&source.vector.apex, &target.vector.apex, mors)?;
    Ok(MonoidHom::new(source, target, scalar, phi))
}

/// `[(c, δ), (d, ε)] ↦ (c, Gδ∘ε)`, from the composite of the modules of `F` and `G` to the module of `GF`.
pub fn representable_comparison(g: &MonoidHom, comp: &Composite, target: &BiModule) -> MapF {
    let (gphi, cmu) = (g.phi.map.clone(), g.target.mu.map.clone());
    MapF::native("representables compose", &comp.raw.apex, &target.carrier.apex, move |e| {
        let (cd, de) = pair(e)?;
        let (c, delta) = pair(cd)?;
        let (_, eps) = pair(de)?;
        Ok(Elem::pair(c.clone(), cmu.apply(&Elem::pair(gphi.apply(delta)?, eps.clone()))?))
    })
}

/// `(α, μ) ↦ α·μ` from `1_a ⊗ m` and `(μ, β) ↦ μ·β` from `m ⊗ 1_b`.
pub fn unitor_comparisons(m: &BiModule, left_unit: &Composite, right_unit: &Composite) -> (MapF, MapF) {
    let (m1, m2) = (m.clone(), m.clone());
    (
        MapF::native("act on the right", &left_unit.raw.apex, &m.carrier.apex, move |e| {
            let (al, mu) = pair(e)?;
            m1.act_right(al, mu)
        }),
        MapF::native("act on the left", &right_unit.raw.apex, &m.carrier.apex, move |e| {
            let (mu, be) = pair(e)?;
            m2.act_left(mu, be)
        }),
    )
}

/// `[[μ, ν], π] ↦ [μ, [ν, π]]` from `(m ⊗ n) ⊗ p` to `m ⊗ (n ⊗ p)`, on class representatives.
pub fn associator_comparison(left_nested: &Composite, inner_right: &Composite, right_nested: &Composite) -> MapF {
    let (qi, qo) = (inner_right.quotient.clone(), right_nested.quotient.clone());
    MapF::native("reassociate", &left_nested.raw.apex, &right_nested.module.carrier.apex, move |e| {
        let (mn, pi) = pair(e)?;
        let (mu, nu) = pair(mn)?;
        qo.apply(&Elem::pair(mu.clone(), qi.apply(&Elem::pair(nu.clone(), pi.clone()))?))
    })
}

/// Monoid axioms for every monoid in the chain, module axioms for every module and every
/// composite, unit isomorphisms at every module and the associativity isomorphism for each
/// consecutive triple.
pub fn mmod_equipment_laws(chain: &[BiModule], bound: usize) -> Vec<Verdict> {
    let mut out = Vec::new();
    let tag = |p: &str, vs: Vec<Verdict>| -> Vec<Verdict> {
        vs.into_iter()
            .map(|mut v| {
                v.name = format!("{p}: {}", v.name);
                v
            })
            .collect()
    };
    for m in chain {
        out.extend(tag(&format!("monoid {}", m.right.name), check_monoid(&m.right, bound)));
        out.extend(tag(&m.name, check_bimodule(m, bound)));
        let unit_laws = (|| -> Result<Vec<Verdict>> {
            let l = module_compose(&BiModule::identity(&m.right), m)?;
            let r = module_compose(m, &BiModule::identity(&m.left))?;
            let (fl, fr) = unitor_comparisons(m, &l, &r);
            let mut vs = check_canonical_iso(&format!("left unitor at {}", m.name), &l, m, &fl, bound);
            vs.extend(check_canonical_iso(&format!("right unitor at {}", m.name), &r, m, &fr, bound));
            Ok(vs)
        })();
        out.extend(unit_laws.unwrap_or_else(|e| vec![Verdict::from_error(&format!("unitors at {}", m.name), &e)]));
    }
    if let Some(last) = chain.last() {
        out.extend(tag(&format!("monoid {}", last.left.name), check_monoid(&last.left, bound)));
    }
    for w in chain.windows(2) {
        match module_compose(&w[0], &w[1]) {
            Ok(c) => out.extend(tag(&c.module.name, check_bimodule(&c.module, bound))),
            Err(e) => out.push(Verdict::from_error(&format!("{} ⊗ {}", w[1].name, w[0].name), &e)),
        }
    }
    for w in chain.windows(3) {
        let name = format!("associator at {}, {}, {}", w[0].name, w[1].name, w[2].name);
        let r = (|| -> Result<Vec<Verdict>> {
            let mn = module_compose(&w[0], &w[1])?;
            let left = module_compose(&mn.module, &w[2])?;
            let np = module_compose(&w[1], &w[2])?;
            let right = module_compose(&w[0], &np.module)?;
            let f = associator_comparison(&left, &np, &right);
            Ok(check_canonical_iso(&name, &left, &right.module, &f, bound))
        })();
        out.extend(r.unwrap_or_else(|e| vec![Verdict::from_error(&name, &e)]));
    }
    out
}

#[cfg(test)]
mod tests;
