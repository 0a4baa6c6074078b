use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::{
    all_maps, counit_from, dedup_count, fingerprint, finite_elems, graph_map, k_on_homs_between, m_on_homs_between,
    pair_parts, underlying_tmonoid, unit_into, Fingerprint,
};
use crate::algebras::{check_talgebra_hom, free_talgebra, TAlgebra, TAlgebraHom};
use crate::coverage::Coverage;
use crate::error::{Error, Result};
use crate::finset::{Elem, MapF};
use crate::listmonad::unit;
use crate::monoids::{check_tmonoid_hom, TMonoid, TMonoidHom};
use crate::verdict::Verdict;

/// Default cap on object maps and on cell candidates per object map.
pub const DEFAULT_CAP: u128 = 10_000;

/// Result of [`hom_bijection_oracle`].
#[derive(Clone, Debug)]
pub struct BijectionReport {
    /// Verified homomorphisms `t → 𝕂A`.
    pub monoid_side: usize,
    /// Verified homomorphisms `𝕄t → A`.
    pub algebra_side: usize,
    pub coverage: Coverage,
    pub verdicts: Vec<Verdict>,
}

impl BijectionReport {
    pub fn ok(&self) -> bool {
        self.verdicts.iter().all(|v| v.ok)
    }
}

fn describe(g: &BTreeMap<Elem, Elem>) -> String {
    let parts: Vec<String> = g.iter().map(|(k, v)| format!("{k}↦{v}")).collect();
    format!("{{{}}}", parts.join(", "))
}

/// Every choice of one element per slot, refusing more than `cap`.
fn choices(slots: &[Vec<Elem>], cap: u128) -> Result<Vec<Vec<Elem>>> {
    let count = slots.iter().try_fold(1u128, |acc, s| acc.checked_mul(s.len() as u128)).unwrap_or(u128::MAX);
    if count > cap {
        return Err(Error::BoundTooLargeToEnumerate { count, cap });
    }
    let mut out = vec![Vec::new()];
    for s in slots {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                s.iter().map(move |e| {
                    let mut p = prefix.clone();
                    p.push(e.clone());
                    p
                })
            })
            .collect();
    }
    Ok(out)
}

struct Side<H> {
    homs: Vec<H>,
    prints: Vec<Fingerprint>,
    labels: Vec<String>,
}

/// Enumerates both hom-sets of the adjunction independently and checks that the transposes are
/// mutually inverse bijections that agree with the closed formulas.
///
/// `t → 𝕂A`: every object map with every assignment of operations into the fibers of `𝕂A`,
/// kept when the T-monoid homomorphism axioms hold. `𝕄t → A`: the homomorphisms generated by an
/// object map `f` and an assignment `ψ_1` of operations into `b`, i.e. `h∘Tf` and `σ∘Tψ_1`,
/// kept when the T-algebra homomorphism axioms hold. Cells are tabulated on the operations of
/// weight at most `bound²`, which holds every composite the axiom checks at `bound` can produce;
/// homomorphisms are compared on the operations of weight at most `bound`.
pub fn hom_bijection_oracle(t: &TMonoid, a: &TAlgebra, bound: usize, cap: u128) -> Result<BijectionReport> {
    let xs = finite_elems(&t.object, "the T-monoid's object set")?;
    let ys = finite_elems(a.object(), "the T-algebra's object set")?;
    let ops = t.vector.apex.enumerate(bound);
    let mut coverage = Coverage::from_enumeration(ops.exact, bound);
    let ops = ops.items;
    let closed = t.vector.apex.enumerate(bound * bound).items;
    let ka = underlying_tmonoid(a)?;
    let mt = free_talgebra(t, bound)?;
    let kmt = underlying_tmonoid(&mt)?;
    let mka = free_talgebra(&ka, bound)?;
    let lists = mt.object().enumerate(bound).items;
    let list_ops = mt.vector().apex.enumerate(bound).items;
    coverage = coverage.meet(Coverage::UpTo(bound));
    let object_maps = all_maps(&xs, &ys, cap)?;
    let (al, ar) = (&t.vector.left, &t.vector.right);

    let mut mon = Side { homs: Vec::new(), prints: Vec::new(), labels: Vec::new() };
    for g in &object_maps {
        let f = MapF::table(&t.object, &ka.object, g.clone())?;
        let tf = MapF::map_of(&f);
        let slots = closed
            .iter()
            .map(|o| Ok(ka.vector.fiber(&f.apply(&al.apply(o)?)?, &tf.apply(&ar.apply(o)?)?, bound * bound).items))
            .collect::<Result<Vec<_>>>()?;
        for pick in choices(&slots, cap)? {
            let graph: BTreeMap<Elem, Elem> = closed.iter().cloned().zip(pick).collect();
            let phi = graph_map("φ", &t.vector.apex, &ka.vector.apex, graph);
            let h = TMonoidHom::new(t, &ka, f.clone(), phi);
            if check_tmonoid_hom(&h, bound).iter().all(|v| v.ok) {
                mon.prints.push(fingerprint(&h.scalar, &h.phi.map, &xs, &ops)?);
                mon.labels.push(describe(g));
                mon.homs.push(h);
            }
        }
    }

    let mut alg = Side { homs: Vec::new(), prints: Vec::new(), labels: Vec::new() };
    let b = a.vector();
    for g in &object_maps {
        let f = MapF::table(&t.object, a.object(), g.clone())?;
        let tf = MapF::map_of(&f);
        let slots = closed
            .iter()
            .map(|o| Ok(b.fiber(&f.apply(&al.apply(o)?)?, &a.action.apply(&tf.apply(&ar.apply(o)?)?)?, bound * bound).items))
            .collect::<Result<Vec<_>>>()?;
        for pick in choices(&slots, cap)? {
            let graph: BTreeMap<Elem, Elem> = closed.iter().cloned().zip(pick).collect();
            let psi1 = graph_map("ψ_1", &t.vector.apex, &b.apex, graph);
            let scalar = tf.then(&a.action).with_codomain(a.object());
            let phi = MapF::map_of(&psi1).then(&a.sigma.map).with_codomain(&b.apex);
            let h = TAlgebraHom::new(&mt, a, scalar, phi);
            if check_talgebra_hom(&h, bound).iter().all(|v| v.ok) {
                alg.prints.push(fingerprint(h.scalar(), h.phi(), &lists, &list_ops)?);
                alg.labels.push(describe(g));
                alg.homs.push(h);
            }
        }
    }

    let eps = counit_from(&mka, a);
    let eta = unit_into(t, &kmt);
    let to_alg = |h: &TMonoidHom| m_on_homs_between(&mt, &mka, h).then(&eps);
    let to_mon = |h: &TAlgebraHom| eta.then(&k_on_homs_between(&kmt, &ka, h));
    let direct_alg = |h: &TMonoidHom| -> (MapF, MapF) {
        let first = h.phi.map.then(&MapF::native("first", &ka.vector.apex, &a.vector().apex, |e| {
            pair_parts("first", e).map(|(p, _)| p.clone())
        }));
        (MapF::map_of(&h.scalar).then(&a.action), MapF::map_of(&first).then(&a.sigma.map))
    };
    let direct_mon = |h: &TAlgebraHom| -> (MapF, MapF) {
        let s = unit(&t.object).then(h.scalar());
        let (psi, ts, ar) = (h.phi().clone(), MapF::map_of(&s), ar.clone());
        let phi = MapF::native("closed-form transpose", &t.vector.apex, &ka.vector.apex, move |al| {
            Ok(Elem::pair(psi.apply(&Elem::nest(vec![al.clone()]))?, ts.apply(&ar.apply(al)?)?))
        });
        (s, phi)
    };

    let alg_set: BTreeSet<&Fingerprint> = alg.prints.iter().collect();
    let mon_set: BTreeSet<&Fingerprint> = mon.prints.iter().collect();
    let mut lands_alg = Verdict::pass("transposes of T-monoid homs are T-algebra homs", coverage);
    let mut round_mon = Verdict::pass("round trip on T-monoid homs", coverage);
    let mut formula_alg = Verdict::pass("counit transpose matches the closed formula", coverage);
    for (i, h) in mon.homs.iter().enumerate() {
        let tr = to_alg(h);
        let fp = fingerprint(tr.scalar(), tr.phi(), &lists, &list_ops)?;
        let (ds, dp) = direct_alg(h);
        if lands_alg.ok && !alg_set.contains(&fp) {
            lands_alg = Verdict::fail(&lands_alg.name, coverage, format!("object map {}", mon.labels[i]));
        }
        if formula_alg.ok && fingerprint(&ds, &dp, &lists, &list_ops)? != fp {
            formula_alg = Verdict::fail(&formula_alg.name, coverage, format!("object map {}", mon.labels[i]));
        }
        let back = to_mon(&tr);
        if round_mon.ok && fingerprint(&back.scalar, &back.phi.map, &xs, &ops)? != mon.prints[i] {
            round_mon = Verdict::fail(&round_mon.name, coverage, format!("object map {}", mon.labels[i]));
        }
    }
    let mut lands_mon = Verdict::pass("transposes of T-algebra homs are T-monoid homs", coverage);
    let mut round_alg = Verdict::pass("round trip on T-algebra homs", coverage);
    let mut formula_mon = Verdict::pass("unit transpose matches the closed formula", coverage);
    for (i, h) in alg.homs.iter().enumerate() {
        let tr = to_mon(h);
        let fp = fingerprint(&tr.scalar, &tr.phi.map, &xs, &ops)?;
        let (ds, dp) = direct_mon(h);
        if lands_mon.ok && !mon_set.contains(&fp) {
            lands_mon = Verdict::fail(&lands_mon.name, coverage, format!("generated by {}", alg.labels[i]));
        }
        if formula_mon.ok && fingerprint(&ds, &dp, &xs, &ops)? != fp {
            formula_mon = Verdict::fail(&formula_mon.name, coverage, format!("generated by {}", alg.labels[i]));
        }
        let back = to_alg(&tr);
        if round_alg.ok && fingerprint(back.scalar(), back.phi(), &lists, &list_ops)? != alg.prints[i] {
            round_alg = Verdict::fail(&round_alg.name, coverage, format!("generated by {}", alg.labels[i]));
        }
    }
    let (m, n) = (dedup_count(&mon.prints), dedup_count(&alg.prints));
    let card = if m == n {
        Verdict::pass("hom-sets have equal size", coverage)
    } else {
        Verdict::fail("hom-sets have equal size", coverage, format!("{m} T-monoid homs vs {n} T-algebra homs"))
    };
    Ok(BijectionReport {
        monoid_side: m,
        algebra_side: n,
        coverage,
        verdicts: vec![card, lands_alg, lands_mon, round_mon, round_alg, formula_alg, formula_mon],
    })
}
