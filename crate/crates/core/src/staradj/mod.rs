//! The underlying T-monoid functor 𝕂, the unit and counit of `𝕄 ⊣ 𝕂`, an enumerative check of
//! the hom-set bijection, and Cartesian naturality of transformations between list functors.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebras::{free_talgebra, TAlgebra, TAlgebraHom};
use crate::coverage::Coverage;
use crate::error::{Error, Result};
use crate::finset::{Elem, MapF, SetExpr};
use crate::kleisli::kl_compose_n;
use crate::listmonad::{mult, square_is_pullback, unit};
use crate::monoids::{check_tmonoid_hom, hom_equal, TMonoid, TMonoidHom};
use crate::spaneq::{act_opscalar, Side};
use crate::verdict::Verdict;

mod oracle;

pub use oracle::{hom_bijection_oracle, BijectionReport, DEFAULT_CAP};

fn malformed(map: &str, e: &Elem) -> Error {
    Error::Rule { map: map.into(), elem: format!("{e}") }
}

fn pair_parts<'a>(map: &str, e: &'a Elem) -> Result<(&'a Elem, &'a Elem)> {
    match e.as_tuple() {
        Some([p, q]) => Ok((p, q)),
        _ => Err(malformed(map, e)),
    }
}

/// 𝕂 on a T-algebra `(x, b, h, σ)`: the vector `h^*b`, whose operations `ℓ → y` are the
/// morphisms `h(ℓ) → y` of `b` paired with `ℓ`.
///
/// `μ((β, ℓ), [(β_i, ℓ_i)]) = (μ_b(β, σ[β_i]), concat ℓ_i)` and `η(c) = (η_b(c), [c])`.
pub fn underlying_tmonoid(a: &TAlgebra) -> Result<TMonoid> {
    let x = a.object().clone();
    let hb = act_opscalar(&a.action, a.vector(), Side::Right)?;
    let kk = kl_compose_n(&x, &[hb.clone(), hb.clone()])?;
    let (mu_b, sigma) = (a.monoid.mu.map.clone(), a.sigma.map.clone());
    let mu = MapF::native("substitution in h*b", &kk.apex, &hb.apex, move |e| {
        let (outer, inner) = pair_parts("substitution in h*b", e)?;
        let (beta, _) = pair_parts("substitution in h*b", outer)?;
        let inner = inner.as_nest().ok_or_else(|| malformed("substitution in h*b", e))?;
        let (mut betas, mut sources) = (Vec::with_capacity(inner.len()), Vec::new());
        for p in inner {
            let (bi, li) = pair_parts("substitution in h*b", p)?;
            betas.push(bi.clone());
            sources.extend_from_slice(li.as_nest().ok_or_else(|| malformed("substitution in h*b", p))?);
        }
        let s = sigma.apply(&Elem::nest(betas))?;
        Ok(Elem::pair(mu_b.apply(&Elem::pair(beta.clone(), s))?, Elem::nest(sources)))
    });
    let eta_b = a.monoid.eta.map.clone();
    let eta = MapF::native("unit of h*b", &x, &hb.apex, move |c| {
        Ok(Elem::pair(eta_b.apply(c)?, Elem::nest(vec![c.clone()])))
    });
    TMonoid::new(&format!("K({})", a.monoid.name), hb, mu, eta)
}

/// 𝕂 on `(g, φ): A → A'` between already computed `𝕂A` and `𝕂A'`.
pub fn k_on_homs_between(source: &TMonoid, target: &TMonoid, f: &TAlgebraHom) -> TMonoidHom {
    let (phi, tg) = (f.phi().clone(), MapF::map_of(f.scalar()));
    let map = MapF::native("K(φ)", &source.vector.apex, &target.vector.apex, move |e| {
        let (beta, l) = pair_parts("K(φ)", e)?;
        Ok(Elem::pair(phi.apply(beta)?, tg.apply(l)?))
    });
    TMonoidHom::new(source, target, f.scalar().clone(), map)
}

/// 𝕂 on homomorphisms: `(g, φ̃)` with `φ̃(β, ℓ) = (φβ, Tg ℓ)`.
#[allow(non_snake_case)]
pub fn K_on_homs(f: &TAlgebraHom) -> Result<TMonoidHom> {
    Ok(k_on_homs_between(&underlying_tmonoid(&f.source)?, &underlying_tmonoid(&f.target)?, f))
}

/// The unit `(e_x, φ): t → 𝕂𝕄t` given `𝕂𝕄t`; an operation `α` goes to `([α], T e(a^r α))`.
pub fn unit_into(t: &TMonoid, kmt: &TMonoid) -> TMonoidHom {
    let x = &t.object;
    let ar = t.vector.right.clone();
    let te = MapF::map_of(&unit(x));
    let map = MapF::native("unit of M ⊣ K", &t.vector.apex, &kmt.vector.apex, move |al| {
        Ok(Elem::pair(Elem::nest(vec![al.clone()]), te.apply(&ar.apply(al)?)?))
    });
    TMonoidHom::new(t, kmt, unit(x), map)
}

/// The counit `(h, φ): 𝕄𝕂A → A` given `𝕄𝕂A`; a list of operations `(β_i, ℓ_i)` goes to `σ[β_i]`.
pub fn counit_from(mka: &TAlgebra, a: &TAlgebra) -> TAlgebraHom {
    let sigma = a.sigma.map.clone();
    let map = MapF::native("counit of M ⊣ K", &mka.vector().apex, &a.vector().apex, move |l| {
        let items = l.as_nest().ok_or_else(|| malformed("counit of M ⊣ K", l))?;
        let betas = items.iter().map(|p| pair_parts("counit of M ⊣ K", p).map(|(b, _)| b.clone())).collect::<Result<_>>()?;
        sigma.apply(&Elem::nest(betas))
    });
    TAlgebraHom::new(mka, a, a.action.clone(), map)
}

/// `(e_x, φ_{e_x}): t → 𝕂𝕄t`.
pub fn adjunction_unit(t: &TMonoid, bound: usize) -> Result<TMonoidHom> {
    let kmt = underlying_tmonoid(&free_talgebra(t, bound)?)?;
    Ok(unit_into(t, &kmt))
}

/// `(h, φ_h): 𝕄𝕂A → A`.
pub fn adjunction_counit(a: &TAlgebra, bound: usize) -> Result<TAlgebraHom> {
    let mka = free_talgebra(&underlying_tmonoid(a)?, bound)?;
    Ok(counit_from(&mka, a))
}

/// `𝕄` on `(f, φ)` between already computed free algebras.
pub fn m_on_homs_between(source: &TAlgebra, target: &TAlgebra, h: &TMonoidHom) -> TAlgebraHom {
    TAlgebraHom::new(source, target, MapF::map_of(&h.scalar), MapF::map_of(&h.phi.map))
}

fn prefixed(prefix: &str, vs: Vec<Verdict>) -> impl Iterator<Item = Verdict> + '_ {
    vs.into_iter().map(move |mut v| {
        v.name = format!("{prefix}{}", v.name);
        v
    })
}

/// `(𝕂ε_A)∘(η_{𝕂A}) = 1_{𝕂A}` and `(ε_{𝕄t})∘(𝕄η_t) = 1_{𝕄t}`, together with the
/// homomorphism axioms for the unit at `t` and the counit at `A`.
pub fn check_triangles(t: &TMonoid, a: &TAlgebra, bound: usize) -> Result<Vec<Verdict>> {
    check_triangles_with(t, a, &unit_into, &counit_from, bound)
}

/// [`check_triangles`] with the unit `(t, 𝕂𝕄t) ↦ η_t` and counit `(𝕄𝕂A, A) ↦ ε_A` supplied.
pub fn check_triangles_with(
    t: &TMonoid,
    a: &TAlgebra,
    unit: &dyn Fn(&TMonoid, &TMonoid) -> TMonoidHom,
    counit: &dyn Fn(&TAlgebra, &TAlgebra) -> TAlgebraHom,
    bound: usize,
) -> Result<Vec<Verdict>> {
    let mut out = Vec::new();

    let mt = free_talgebra(t, bound)?;
    let kmt = underlying_tmonoid(&mt)?;
    let eta_t = unit(t, &kmt);
    out.extend(prefixed("unit: ", check_tmonoid_hom(&eta_t, bound)));

    let ka = underlying_tmonoid(a)?;
    let mka = free_talgebra(&ka, bound)?;
    let eps_a = counit(&mka, a);
    out.extend(prefixed("counit: ", crate::algebras::check_talgebra_hom(&eps_a, bound)));

    let kmka = underlying_tmonoid(&mka)?;
    let lhs = unit(&ka, &kmka).then(&k_on_homs_between(&kmka, &ka, &eps_a));
    out.extend(hom_equal(
        "triangle (Kε)(ηK) = 1",
        (&lhs.scalar, &lhs.phi.map),
        (&MapF::identity(&ka.object), &MapF::identity(&ka.vector.apex)),
        &ka.object,
        &ka.vector.apex,
        bound,
    ));

    let mkmt = free_talgebra(&kmt, bound)?;
    let rhs = m_on_homs_between(&mt, &mkmt, &eta_t).then(&counit(&mkmt, &mt));
    out.extend(hom_equal(
        "triangle (εM)(Mη) = 1",
        (rhs.scalar(), rhs.phi()),
        (&MapF::identity(mt.object()), &MapF::identity(&mt.vector().apex)),
        mt.object(),
        &mt.vector().apex,
        bound,
    ));
    Ok(out)
}

/// Transformations between endofunctors built from the list monad, for [`cartesian_check`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Transformation {
    /// `1 ⇒ 1`.
    Identity,
    /// `e: 1 ⇒ T`.
    Unit,
    /// `m: T² ⇒ T`.
    Mult,
    /// `x ↦ [x, x]`, natural but not Cartesian.
    Doubling,
}

impl Transformation {
    pub const ALL: [Transformation; 4] =
        [Transformation::Identity, Transformation::Unit, Transformation::Mult, Transformation::Doubling];

    pub fn name(self) -> &'static str {
        match self {
            Transformation::Identity => "identity",
            Transformation::Unit => "e",
            Transformation::Mult => "m",
            Transformation::Doubling => "doubling",
        }
    }

    fn source_depth(self) -> usize {
        match self {
            Transformation::Mult => 2,
            _ => 0,
        }
    }

    fn target_depth(self) -> usize {
        match self {
            Transformation::Identity => 0,
            _ => 1,
        }
    }

    /// The component at `x`.
    pub fn component(self, x: &SetExpr) -> MapF {
        match self {
            Transformation::Identity => MapF::identity(x),
            Transformation::Unit => unit(x),
            Transformation::Mult => mult(x),
            Transformation::Doubling => MapF::native("doubling", x, &SetExpr::fm(x.clone()), |e| {
                Ok(Elem::nest(vec![e.clone(), e.clone()]))
            }),
        }
    }
}

/// Outcome of [`cartesian_check`]: the first naturality square that is not a pullback, if any.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartesianReport {
    pub transformation: String,
    pub ok: bool,
    pub coverage: Coverage,
    /// The map whose square failed and the reason.
    pub counterexample: Option<(String, String)>,
}

/// Checks that the naturality square of `t` at every map of `battery` is a pullback.
pub fn cartesian_check(t: Transformation, battery: &[MapF], bound: usize) -> CartesianReport {
    let mut coverage = Coverage::Exact;
    for f in battery {
        let (x, y) = (&f.domain, &f.codomain);
        let v = square_is_pullback(
            &format!("{} at {f}", t.name()),
            &MapF::map_of_n(t.source_depth(), f),
            &t.component(x),
            &t.component(y),
            &MapF::map_of_n(t.target_depth(), f),
            bound,
        );
        coverage = coverage.meet(v.coverage);
        if !v.ok {
            return CartesianReport {
                transformation: t.name().into(),
                ok: false,
                coverage,
                counterexample: Some((format!("{x} -> {y}"), v.witness.unwrap_or_default())),
            };
        }
    }
    CartesianReport { transformation: t.name().into(), ok: true, coverage, counterexample: None }
}

/// Maps between small finite sets covering injective, surjective, constant and empty cases.
pub fn standard_battery() -> Vec<MapF> {
    let s = |names: &[&str]| SetExpr::atoms(names);
    let table = |d: &SetExpr, c: &SetExpr, pairs: &[(&str, &str)]| {
        let g: BTreeMap<Elem, Elem> = pairs.iter().map(|(p, q)| (Elem::atom(p), Elem::atom(q))).collect();
        MapF::table(d, c, g).expect("battery tables are total")
    };
    let (one, two, three) = (s(&["p"]), s(&["p", "q"]), s(&["p", "q", "r"]));
    vec![
        MapF::identity(&two),
        table(&two, &one, &[("p", "p"), ("q", "p")]),
        table(&one, &two, &[("p", "q")]),
        table(&three, &two, &[("p", "p"), ("q", "p"), ("r", "q")]),
        MapF::table(&SetExpr::empty(), &two, BTreeMap::new()).expect("empty map"),
    ]
}

/// The elements of a finite set, in canonical order.
pub(crate) fn finite_elems(s: &SetExpr, what: &str) -> Result<Vec<Elem>> {
    s.as_fin()
        .map(|set| set.iter().cloned().collect())
        .ok_or_else(|| Error::InfeasibleEnumeration(format!("{what} {s} is not finite")))
}

/// All maps `dom → cod` as graphs, in lexicographic order, refusing more than `cap`.
pub(crate) fn all_maps(dom: &[Elem], cod: &[Elem], cap: u128) -> Result<Vec<BTreeMap<Elem, Elem>>> {
    let count = (cod.len() as u128).checked_pow(dom.len() as u32).unwrap_or(u128::MAX);
    if count > cap {
        return Err(Error::BoundTooLargeToEnumerate { count, cap });
    }
    let mut out = vec![BTreeMap::new()];
    for d in dom {
        out = out
            .into_iter()
            .flat_map(|g| {
                cod.iter().map(move |c| {
                    let mut g = g.clone();
                    g.insert(d.clone(), c.clone());
                    g
                })
            })
            .collect();
    }
    Ok(out)
}

/// A map given by a finite graph on a slice of a possibly infinite domain.
pub(crate) fn graph_map(name: &str, domain: &SetExpr, codomain: &SetExpr, graph: BTreeMap<Elem, Elem>) -> MapF {
    let graph = Arc::new(graph);
    let label = String::from(name);
    MapF::native(name, domain, codomain, move |e| graph.get(e).cloned().ok_or_else(|| malformed(&label, e)))
}

/// Values of a homomorphism on enumerated objects and operations.
pub(crate) type Fingerprint = (Vec<Elem>, Vec<Elem>);

pub(crate) fn fingerprint(scalar: &MapF, phi: &MapF, objects: &[Elem], ops: &[Elem]) -> Result<Fingerprint> {
    Ok((
        objects.iter().map(|c| scalar.apply(c)).collect::<Result<_>>()?,
        ops.iter().map(|o| phi.apply(o)).collect::<Result<_>>()?,
    ))
}

pub(crate) fn dedup_count(fps: &[Fingerprint]) -> usize {
    fps.iter().collect::<BTreeSet<_>>().len()
}
