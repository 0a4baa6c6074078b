//! T-algebras (strict monoidal categories in the span instance), the functor 𝕃 on Kleisli
//! vectors, and the free T-algebra on a T-monoid.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::coverage::Coverage;
use crate::error::{Error, Result};
use crate::finset::{Elem, MapF, SetExpr};
use crate::kleisli::{kl_compose_n, kl_identity, KleisliVector};
use crate::listmonad::{lift_cell, lift_span, mult, unit, Invertible};
use crate::monoids::{
    cat_to_monoid, check_monoid, check_monoid_hom, monoid_to_cat, FiniteCategory, Monoid, MonoidHom, TMonoid, TMonoidHom,
    T_on_monoids,
};
use crate::spaneq::{compose_n, identity, Span, SpanCell};
use crate::verdict::{differ, pointwise, Verdict};

/// A T-algebra: a monoid `(x, b)` with an action `h: Tx → x` and a cell `σ_h` from `Tb` (legs
/// pushed along `h`) to `b`.
#[derive(Clone, Debug)]
pub struct TAlgebra {
    pub monoid: Monoid,
    pub action: MapF,
    pub sigma: SpanCell,
}

impl TAlgebra {
    /// Assembles the data without checking the axioms; see [`check_talgebra`].
    pub fn new(monoid: Monoid, action: MapF, sigma: MapF) -> TAlgebra {
        let from = lift_span(&monoid.vector).with_left(&action).with_right(&action);
        let sigma = SpanCell::assemble(&from, &monoid.vector, sigma, Coverage::UpTo(0));
        TAlgebra { monoid, action, sigma }
    }

    pub fn object(&self) -> &SetExpr {
        &self.monoid.object
    }

    pub fn vector(&self) -> &Span {
        &self.monoid.vector
    }

    /// `(h, σ_h)` as a monoid homomorphism `𝕋(x, b) → (x, b)`.
    pub fn structure_hom(&self, bound: usize) -> Result<MonoidHom> {
        Ok(MonoidHom::new(&T_on_monoids(&self.monoid, bound)?, &self.monoid, self.action.clone(), self.sigma.map.clone()))
    }
}

fn prefixed(prefix: &str, vs: Vec<Verdict>) -> impl Iterator<Item = Verdict> + '_ {
    vs.into_iter().map(move |mut v| {
        v.name = format!("{prefix}{}", v.name);
        v
    })
}

/// Monoid axioms, the algebra laws for `h`, `σ_h` as a monoid homomorphism, and the unit and
/// multiplication laws for `σ_h`.
pub fn check_talgebra(a: &TAlgebra, bound: usize) -> Vec<Verdict> {
    let x = a.object();
    let b = a.vector();
    let h = &a.action;
    let mut out = check_monoid(&a.monoid, bound);
    out.push(pointwise("action unit: h∘e = id", x, bound, |c| Ok(differ(&h.apply(&unit(x).apply(c)?)?, c))));
    let txx = SetExpr::fm_n(2, x.clone());
    out.push(pointwise("action associativity: h∘m = h∘Th", &txx, bound, |l| {
        Ok(differ(&h.apply(&mult(x).apply(l)?)?, &h.apply(&MapF::map_of(h).apply(l)?)?))
    }));
    match a.structure_hom(bound) {
        Ok(hom) => out.extend(prefixed("sigma: ", check_monoid_hom(&hom, bound))),
        Err(e) => out.push(Verdict::from_error("sigma: structure hom", &e)),
    }
    let sigma = &a.sigma;
    out.push(pointwise("sigma unit: σ[β] = β", &b.apex, bound, |e| {
        Ok(differ(&sigma.apply(&Elem::nest(vec![e.clone()]))?, e))
    }));
    let tt = SetExpr::fm_n(2, b.apex.clone());
    out.push(pointwise("sigma associativity: σ∘m = σ∘Tσ", &tt, bound, |l| {
        Ok(differ(&sigma.apply(&mult(&b.apex).apply(l)?)?, &sigma.apply(&MapF::map_of(&sigma.map).apply(l)?)?))
    }));
    out
}

/// A homomorphism of T-algebras: a monoid homomorphism commuting with the actions.
#[derive(Clone, Debug)]
pub struct TAlgebraHom {
    pub source: TAlgebra,
    pub target: TAlgebra,
    pub hom: MonoidHom,
}

impl TAlgebraHom {
    pub fn new(source: &TAlgebra, target: &TAlgebra, scalar: MapF, phi: MapF) -> TAlgebraHom {
        let hom = MonoidHom::new(&source.monoid, &target.monoid, scalar, phi);
        TAlgebraHom { source: source.clone(), target: target.clone(), hom }
    }

    pub fn identity(a: &TAlgebra) -> TAlgebraHom {
        TAlgebraHom::new(a, a, MapF::identity(a.object()), MapF::identity(&a.vector().apex))
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &TAlgebraHom) -> TAlgebraHom {
        let h = self.hom.then(&other.hom);
        TAlgebraHom { source: self.source.clone(), target: other.target.clone(), hom: h }
    }

    pub fn scalar(&self) -> &MapF {
        &self.hom.scalar
    }

    pub fn phi(&self) -> &MapF {
        &self.hom.phi.map
    }
}

/// Monoid homomorphism axioms plus `f∘h = h'∘Tf` and `φ∘σ = σ'∘Tφ`.
pub fn check_talgebra_hom(f: &TAlgebraHom, bound: usize) -> Vec<Verdict> {
    let (s, t) = (&f.source, &f.target);
    let mut out = check_monoid_hom(&f.hom, bound);
    let tx = SetExpr::fm(s.object().clone());
    out.push(pointwise("compatible with the actions", &tx, bound, |l| {
        let lhs = f.scalar().apply(&s.action.apply(l)?)?;
        let rhs = t.action.apply(&MapF::map_of(f.scalar()).apply(l)?)?;
        Ok(differ(&lhs, &rhs))
    }));
    let tb = SetExpr::fm(s.vector().apex.clone());
    out.push(pointwise("compatible with sigma", &tb, bound, |l| {
        let lhs = f.phi().apply(&s.sigma.apply(l)?)?;
        let rhs = t.sigma.apply(&MapF::map_of(f.phi()).apply(l)?)?;
        Ok(differ(&lhs, &rhs))
    }));
    out
}

/// 𝕃 on a Kleisli vector `a: x ⇸ Ty`: the composite `Tx ⇸ T²y → Ty`.
#[allow(non_snake_case)]
pub fn L_on_kleisli(a: &KleisliVector) -> Result<Span> {
    match a {
        KleisliVector::Span(a) => {
            let y = crate::kleisli::kl_target(a)?;
            Ok(lift_span(a).with_right(&mult(&y)))
        }
        KleisliVector::Mat(_) => Err(Error::NotInvertibleNuM),
    }
}

fn l_span(a: &Span) -> Result<Span> {
    L_on_kleisli(&KleisliVector::Span(a.clone()))
}

/// `κ^L_0: i_{Tx} ⇒ 𝕃(kl_identity x)`; both apexes are `Tx`.
pub fn kappa_l0(x: &SetExpr, bound: usize) -> Result<Invertible> {
    let from = identity(&SetExpr::fm(x.clone()));
    let to = l_span(&kl_identity(x))?;
    Ok(Invertible {
        forward: SpanCell::new(&from, &to, MapF::identity(&from.apex).with_codomain(&to.apex), bound)?,
        inverse: SpanCell::new(&to, &from, MapF::identity(&to.apex).with_codomain(&from.apex), bound)?,
    })
}

/// `κ^L_2: 𝕃a·𝕃b ⇒ 𝕃K(a, b)`. A pair of lists `([α_1, …, α_k], L)` goes to the list of pairs
/// `(α_i, L_i)`, where `L` is cut into pieces matching the arities of the `α_i`.
pub fn kappa_l2(x0: &SetExpr, a: &Span, b: &Span, bound: usize) -> Result<Invertible> {
    let from = compose_n(&[l_span(a)?, l_span(b)?])?;
    let to = l_span(&kl_compose_n(x0, &[a.clone(), b.clone()])?)?;
    let ar = a.right.clone();
    let fwd = MapF::native("κ^L split", &from.apex, &to.apex, move |e| {
        let bad = || Error::Rule { map: "κ^L split".into(), elem: format!("{e}") };
        let t = e.as_tuple().ok_or_else(bad)?;
        let (alphas, rest) = (t[0].as_nest().ok_or_else(bad)?, t[1].as_nest().ok_or_else(bad)?);
        let mut out = Vec::with_capacity(alphas.len());
        let mut pos = 0;
        for al in alphas {
            let k = ar.apply(al)?.as_nest().map(<[Elem]>::len).ok_or_else(bad)?;
            let chunk = rest.get(pos..pos + k).ok_or_else(bad)?;
            out.push(Elem::pair(al.clone(), Elem::nest(chunk.to_vec())));
            pos += k;
        }
        if pos != rest.len() {
            return Err(bad());
        }
        Ok(Elem::nest(out))
    });
    let inv = MapF::native("κ^L join", &to.apex, &from.apex, |e| {
        let bad = || Error::Rule { map: "κ^L join".into(), elem: format!("{e}") };
        let (mut alphas, mut rest) = (Vec::new(), Vec::new());
        for p in e.as_nest().ok_or_else(bad)? {
            let t = p.as_tuple().ok_or_else(bad)?;
            alphas.push(t[0].clone());
            rest.extend_from_slice(t[1].as_nest().ok_or_else(bad)?);
        }
        Ok(Elem::pair(Elem::nest(alphas), Elem::nest(rest)))
    });
    Ok(Invertible { forward: SpanCell::new(&from, &to, fwd, bound)?, inverse: SpanCell::new(&to, &from, inv, bound)? })
}

/// 𝕄: the free T-algebra `(Tx, 𝕃a, T μ∘κ^L, T η∘κ^L_0, m, m)`.
pub fn free_talgebra(t: &TMonoid, bound: usize) -> Result<TAlgebra> {
    let (x, a) = (&t.object, &t.vector);
    let k2 = kappa_l2(x, a, a, bound)?.forward;
    let k0 = kappa_l0(x, bound)?.forward;
    let mu = k2.map.then(&lift_cell(&t.mu).map);
    let eta = k0.map.then(&lift_cell(&t.eta).map);
    let monoid = Monoid::new(&format!("M({})", t.name), l_span(a)?, mu, eta)?;
    Ok(TAlgebra::new(monoid, mult(x), mult(&a.apex)))
}

/// 𝕄 on homomorphisms: `(Tf, Tφ)`.
#[allow(non_snake_case)]
pub fn M_on_homs(h: &TMonoidHom, bound: usize) -> Result<TAlgebraHom> {
    Ok(TAlgebraHom::new(
        &free_talgebra(&h.source, bound)?,
        &free_talgebra(&h.target, bound)?,
        MapF::map_of(&h.scalar),
        MapF::map_of(&h.phi.map),
    ))
}

/// A strict monoidal category on a finite category.
///
/// `tensor_mor` may omit pairs of identities; their tensor is the identity on the tensor of objects.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrictMonCat {
    pub category: FiniteCategory,
    pub unit: String,
    pub tensor_obj: BTreeMap<(String, String), String>,
    pub tensor_mor: BTreeMap<(String, String), String>,
}

impl StrictMonCat {
    pub fn tensor_objects(&self, a: &str, b: &str) -> Option<String> {
        self.tensor_obj.get(&(a.to_string(), b.to_string())).cloned()
    }

    pub fn tensor_morphisms(&self, f: &str, g: &str) -> Option<String> {
        if let Some(h) = self.tensor_mor.get(&(f.to_string(), g.to_string())) {
            return Some(h.clone());
        }
        let c = &self.category;
        let obj_of = |m: &str| c.identities.iter().find(|(_, i)| *i == m).map(|(o, _)| o.clone());
        let (a, b) = (obj_of(f)?, obj_of(g)?);
        c.identities.get(&self.tensor_objects(&a, &b)?).cloned()
    }

    /// The discrete strict monoidal category on `ℤ/n` under addition.
    pub fn discrete_cyclic(n: usize) -> StrictMonCat {
        let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let category = FiniteCategory::new(&format!("discrete Z/{n}"), &refs, &[], &[]);
        let tensor_obj = (0..n)
            .flat_map(|i| (0..n).map(move |j| ((i.to_string(), j.to_string()), ((i + j) % n).to_string())))
            .collect();
        StrictMonCat { category, unit: "0".into(), tensor_obj, tensor_mor: BTreeMap::new() }
    }

    /// Objects and morphisms in sorted order and identity tensors made explicit.
    pub fn normalized(&self) -> StrictMonCat {
        let mut s = self.clone();
        let mors = self.category.all_morphisms();
        for f in &mors {
            for g in &mors {
                if let Some(h) = self.tensor_morphisms(f, g) {
                    s.tensor_mor.insert((f.clone(), g.clone()), h);
                }
            }
        }
        s.category = s.category.normalized();
        s
    }
}

fn fold(
    name: &str,
    l: &Elem,
    empty: &str,
    step: &(dyn Fn(&str, &str) -> Option<String> + Send + Sync),
) -> Result<Elem> {
    let bad = || Error::Rule { map: name.into(), elem: format!("{l}") };
    let items = l.as_nest().ok_or_else(bad)?;
    let mut acc = empty.to_string();
    for (i, e) in items.iter().enumerate() {
        let s = e.as_atom().ok_or_else(bad)?;
        acc = if i == 0 { s.to_string() } else { step(&acc, s).ok_or_else(bad)? };
    }
    Ok(Elem::atom(&acc))
}

/// The T-algebra of a strict monoidal category: `h` and `σ` fold lists with the tensor.
pub fn smc_to_talgebra(s: &StrictMonCat) -> Result<TAlgebra> {
    let monoid = cat_to_monoid(&s.category)?;
    let x = monoid.object.clone();
    if !x.contains(&Elem::atom(&s.unit)) {
        return Err(Error::Presentation(format!("unit {} is not an object", s.unit)));
    }
    let id_unit = s.category.identities[&s.unit].clone();
    let (s1, s2) = (Arc::new(s.clone()), Arc::new(s.clone()));
    let unit_obj = s.unit.clone();
    let h = MapF::native("tensor of objects", &SetExpr::fm(x.clone()), &x, move |l| {
        fold("tensor of objects", l, &unit_obj, &|a, b| s1.tensor_objects(a, b))
    });
    let apex = monoid.vector.apex.clone();
    let sigma = MapF::native("tensor of morphisms", &SetExpr::fm(apex.clone()), &apex, move |l| {
        fold("tensor of morphisms", l, &id_unit, &|f, g| s2.tensor_morphisms(f, g))
    });
    Ok(TAlgebra::new(monoid, h, sigma))
}

/// Reads a strict monoidal category back from a T-algebra on finite data.
pub fn talgebra_to_smc(a: &TAlgebra) -> Result<StrictMonCat> {
    let category = monoid_to_cat(&a.monoid)?;
    let name = |e: Elem| e.as_atom().map(String::from).ok_or_else(|| Error::Presentation(format!("{e} is not named")));
    let unit = name(a.action.apply(&Elem::empty_list())?)?;
    let mut tensor_obj = BTreeMap::new();
    for p in &category.objects {
        for q in &category.objects {
            let v = a.action.apply(&Elem::nest(vec![Elem::atom(p), Elem::atom(q)]))?;
            tensor_obj.insert((p.clone(), q.clone()), name(v)?);
        }
    }
    let mut tensor_mor = BTreeMap::new();
    let mors = category.all_morphisms();
    for f in &mors {
        for g in &mors {
            let v = a.sigma.apply(&Elem::nest(vec![Elem::atom(f), Elem::atom(g)]))?;
            tensor_mor.insert((f.clone(), g.clone()), name(v)?);
        }
    }
    Ok(StrictMonCat { category, unit, tensor_obj, tensor_mor })
}

#[cfg(test)]
mod tests;
