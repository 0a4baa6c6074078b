//! The instance battery and law list of every suite.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use super::pasting::{diagram_equal, kl_coherence_pastings};
use super::{Mutation, Reports, SuiteConfig};
use crate::algebras::{check_talgebra, free_talgebra, smc_to_talgebra, talgebra_to_smc, StrictMonCat, TAlgebra, TAlgebraHom};
use crate::coverage::Coverage;
use crate::error::Result;
use crate::finset::{Elem, MapF, SetExpr};
use crate::fixtures::{atoms, cyclic_category, random_category, random_chain, random_kl_chain, random_relation, rng};
use crate::kleisli::{displayed_component, kl_associator, mat};
use crate::listmonad::{kappa, monad_laws_with, mult, nu_e, nu_m, unit, Invertible};
use crate::monoids::mat::{check_mat_monoid, check_mat_tmonoid, multi_preorder};
use crate::monoids::{
    cat_to_monoid, check_monoid, check_tmonoid, identity_name, lifted_monad_laws, monoid_to_cat, multicat_to_tmonoid,
    tmonoid_to_multicat, FiniteCategory, FiniteMulticat, Monoid, TMonoid,
};
use crate::prof::{
    check_bimodule, check_canonical_iso, functor, mmod_equipment_laws, module_compose, representable, representable_comparison,
    unitor_comparisons, BiModule,
};
use crate::quantale::{MatVector, Quantale};
use crate::spaneq::{associator, cell_equal, coherence_routes, compositions, Partition, Span, SpanCell};
use crate::staradj::{cartesian_check, check_triangles_with, counit_from, hom_bijection_oracle, standard_battery, unit_into, Transformation, DEFAULT_CAP};
use crate::verdict::Verdict;

/// Every outer partition of `n` into at most `outer` blocks with every refinement of its blocks
/// into at most `inner` blocks.
fn refinements(n: usize, outer: usize, inner: usize) -> Vec<(Partition, Vec<Partition>)> {
    let mut out = Vec::new();
    for p in compositions(n, outer) {
        let mut picks: Vec<Vec<Partition>> = vec![vec![]];
        for &b in &p.blocks {
            let opts = compositions(b, inner);
            picks = picks.iter().flat_map(|pre| opts.iter().map(move |q| [pre.clone(), vec![q.clone()]].concat())).collect();
        }
        out.extend(picks.into_iter().map(|q| (p.clone(), q)));
    }
    out
}

fn show_refinement(outer: &Partition, inner: &[Partition]) -> String {
    let parts: Vec<String> = inner.iter().map(|q| format!("{q}")).collect();
    format!("{outer} refined by [{}]", parts.join(", "))
}

fn cells_agree(law: &str, lhs: Result<SpanCell>, rhs: Result<SpanCell>, bound: usize) -> Verdict {
    let run = || -> Result<Verdict> {
        let cmp = cell_equal(&lhs?, &rhs?, bound)?;
        Ok(match cmp.witness {
            None => Verdict::pass(law, cmp.coverage),
            Some((e, a, b)) => Verdict::fail(law, cmp.coverage, format!("at {e}: {a} vs {b}")),
        })
    };
    Verdict::from_result(law, run())
}

fn invertible(law: &str, k: Result<Invertible>, bound: usize) -> Verdict {
    let run = || -> Result<Verdict> {
        Ok(match k?.round_trips(bound)? {
            (true, cov, _) => Verdict::pass(law, cov),
            (false, cov, w) => Verdict::fail(law, cov, format!("round trip moves {}", w.map(|e| format!("{e}")).unwrap_or_default())),
        })
    };
    Verdict::from_result(law, run())
}

fn equal_as(law: &str, ok: bool, witness: impl FnOnce() -> String) -> Verdict {
    if ok {
        Verdict::pass(law, Coverage::Exact)
    } else {
        Verdict::fail(law, Coverage::Exact, witness())
    }
}

pub(super) fn span(cfg: &SuiteConfig, out: &mut Reports) {
    let b = cfg.bound;
    let mut r = rng(cfg.seed);
    let mut chains = vec![(String::from("span/fixed chain of 3"), random_chain(&mut rng(0), 3, 2, 3))];
    for i in 0..cfg.samples {
        chains.push((format!("span/random chain {i}"), random_chain(&mut r, 1 + i % 3, 2, 3)));
    }
    for (inst, (x0, chain)) in &chains {
        for p in compositions(chain.len(), 3) {
            let law = format!("associator {p} invertible");
            let run = || -> Result<Verdict> {
                Ok(match associator(&p, x0, chain, b)?.round_trips(b)? {
                    (true, cov) => Verdict::pass(&law, cov),
                    (false, cov) => Verdict::fail(&law, cov, "a round trip is not the identity".into()),
                })
            };
            out.push(inst, Verdict::from_result(&law, run()));
        }
        for (outer, inner) in refinements(chain.len(), 2, 2) {
            let law = format!("associator coherence {}", show_refinement(&outer, &inner));
            let routes = coherence_routes(&outer, &inner, x0, chain, b);
            let (ra, rb) = match routes {
                Ok((ra, rb)) => (Ok(ra), Ok(rb)),
                Err(e) => (Err(e.clone()), Err(e)),
            };
            out.push(inst, cells_agree(&law, ra, rb, b));
        }
        out.push(inst, invertible("κ^T invertible", kappa(x0, chain, b), b));
        for (i, a) in chain.iter().enumerate() {
            out.push(inst, invertible(&format!("ν^m invertible at span {i}"), nu_m(a, b), b));
            out.push(inst, invertible(&format!("ν^e invertible at span {i}"), nu_e(a, b), b));
        }
    }
}

/// Every way to cut `l` into `k` consecutive, possibly empty pieces.
fn cuts(l: &[Elem], k: usize) -> Vec<Vec<Elem>> {
    if k == 0 {
        return if l.is_empty() { vec![vec![]] } else { vec![] };
    }
    (0..=l.len())
        .flat_map(|i| {
            cuts(&l[i..], k - 1).into_iter().map(move |mut rest| {
                rest.insert(0, Elem::nest(l[..i].to_vec()));
                rest
            })
        })
        .collect()
}

/// Relational Kleisli composite of boolean matrices, decided by search: some `w` with
/// `a(x, w)` and a cut of `ℓ` into pieces `ℓ_i` with `c(w_i, ℓ_i)`.
fn relational_convolution(a: &MatVector, c: &MatVector, x: &Elem, l: &Elem, bound: usize) -> bool {
    let bot = a.quantale.bottom();
    let y = a.target.fm_base().cloned().unwrap_or_else(SetExpr::empty);
    let Some(items) = l.as_nest() else { return false };
    SetExpr::fm(y).enumerate(bound).items.iter().any(|w| {
        a.entry(x, w) != bot && {
            let ws = w.as_nest().unwrap_or(&[]);
            cuts(items, ws.len()).iter().any(|cut| ws.iter().zip(cut).all(|(wi, li)| c.entry(wi, li) != bot))
        }
    })
}

fn mat_equal(law: &str, lhs: Result<MatVector>, rhs: &MatVector, bound: usize) -> Verdict {
    let run = || -> Result<Verdict> {
        Ok(match lhs?.equal(rhs, bound)? {
            (true, _, cov) => Verdict::pass(law, cov),
            (false, w, cov) => Verdict::fail(law, cov, format!("entry {w:?}")),
        })
    };
    Verdict::from_result(law, run())
}

pub(super) fn mat2(cfg: &SuiteConfig, out: &mut Reports) {
    let b = cfg.bound;
    let q = Arc::new(Quantale::boolean());
    let x = atoms("x", 3);
    let names = ["x0", "x1", "x2"];

    let inst = "mat2/multi-preorder on 3 elements";
    let mut mp = multi_preorder(&q, &names);
    if cfg.mutation == Some(Mutation::Reflexivity) {
        let (orig, bot) = (mp.clone(), q.bottom());
        mp = MatVector::pred(&q, &x, &SetExpr::fm(x.clone()), None, move |t, l| {
            if l.as_nest() == Some(core::slice::from_ref(t)) {
                bot
            } else {
                orig.entry(t, l)
            }
        });
    }
    out.extend_result(inst, "(T,2)-category laws", check_mat_tmonoid(&mp, b));

    let inst = "mat2/order on 3 elements";
    let rank = |e: &Elem| names.iter().position(|n| e.as_atom() == Some(n));
    let xs: Vec<Elem> = x.enumerate(1).items;
    let le = MatVector::table(
        &q,
        &x,
        &x,
        xs.iter().flat_map(|s| xs.iter().map(move |t| ((s.clone(), t.clone()), usize::from(rank(s) <= rank(t))))),
    );
    match le {
        Ok(le) => out.extend_result(inst, "preorder laws", check_mat_monoid(&le, b)),
        Err(e) => out.push(inst, Verdict::from_error("preorder laws", &e)),
    }

    let mut r = rng(cfg.seed);
    for i in 0..cfg.samples {
        let inst = format!("mat2/random relations {i}");
        let (a, c) = (random_relation(&mut r, &q, &x, &x, 2), random_relation(&mut r, &q, &x, &x, 2));
        let law = "Kleisli convolution matches the relational oracle";
        let v = match mat::kl_compose_n(&x, &[a.clone(), c.clone()], b) {
            Err(e) => Verdict::from_error(law, &e),
            Ok(k) => {
                let lists = SetExpr::fm(x.clone()).enumerate(b);
                let cov = Coverage::from_enumeration(lists.exact, b);
                let bad = xs
                    .iter()
                    .flat_map(|xe| lists.items.iter().map(move |l| (xe, l)))
                    .find(|(xe, l)| (k.entry(xe, l) != q.bottom()) != relational_convolution(&a, &c, xe, l, b));
                match bad {
                    None => Verdict::pass(law, cov),
                    Some((xe, l)) => Verdict::fail(law, cov, format!("entry ({xe}, {l})")),
                }
            }
        };
        out.push(&inst, v);
        let id = mat::kl_identity(&q, &x);
        out.push(&inst, mat_equal("Kleisli identity is a left unit", mat::kl_compose_n(&x, &[id.clone(), a.clone()], b), &a, b));
        out.push(&inst, mat_equal("Kleisli identity is a right unit", mat::kl_compose_n(&x, &[a.clone(), id], b), &a, b));
        let chain = [a.clone(), c.clone(), a.clone()];
        for p in [vec![2, 1], vec![1, 2], vec![1, 1, 1]] {
            let p = Partition::new(p);
            let law = format!("Kleisli associator {p}: flat ≤ nested");
            out.push(&inst, match mat::kl_associator(&p, &x, &chain, b) {
                Ok(cell) => Verdict::pass(&law, cell.checked),
                Err(e) => Verdict::from_error(&law, &e),
            });
        }
    }
}

/// Concatenation that reverses when an outer list of length ≥ 2 holds a non-singleton list.
fn reversing_mult(s: &SetExpr) -> MapF {
    let m = mult(s);
    MapF::native("reversing concat", &SetExpr::fm_n(2, s.clone()), &SetExpr::fm(s.clone()), move |l| {
        let flat = m.apply(l)?;
        let outer = l.as_nest().unwrap_or(&[]);
        let mixed = outer.len() >= 2 && outer.iter().any(|i| i.as_nest().is_some_and(|v| v.len() != 1));
        Ok(match (mixed, flat.as_nest()) {
            (true, Some(v)) => Elem::nest(v.iter().rev().cloned().collect()),
            _ => flat,
        })
    })
}

pub(super) fn monad(cfg: &SuiteConfig, out: &mut Reports) {
    let b = cfg.bound;
    let mutated = cfg.mutation == Some(Mutation::ReversingMult);
    let m: &dyn Fn(&SetExpr) -> MapF = if mutated { &reversing_mult } else { &mult };
    for (inst, x) in [
        ("monad/lists on no letters", SetExpr::empty()),
        ("monad/lists on one letter", atoms("p", 1)),
        ("monad/lists on two letters", atoms("p", 2)),
    ] {
        out.extend_result(inst, "monad laws", monad_laws_with(&x, m, &unit, b));
    }
    let inst = "monad/naturality squares";
    let battery = standard_battery();
    for t in [Transformation::Identity, Transformation::Unit, Transformation::Mult] {
        let rep = cartesian_check(t, &battery, b);
        let law = format!("{} is Cartesian", t.name());
        out.push(inst, match rep.counterexample {
            None => Verdict::pass(&law, rep.coverage),
            Some((at, why)) => Verdict::fail(&law, rep.coverage, format!("{at}: {why}")),
        });
    }
    let rep = cartesian_check(Transformation::Doubling, &battery, b);
    let law = "doubling is detected as not Cartesian";
    out.push(inst, if rep.ok { Verdict::fail(law, rep.coverage, "every square was a pullback".into()) } else { Verdict::pass(law, rep.coverage) });
}

/// A Kleisli span on colors `p, q` read as a multicategory signature.
fn sample_signature() -> Result<Span> {
    let x = SetExpr::atoms(&["p", "q"]);
    let ops = [("f", "p", "[p,q]"), ("g", "q", "[p]"), ("h", "p", "[]"), ("u", "q", "[q,q]"), ("v", "p", "[p]")];
    let apex = SetExpr::fin(ops.iter().map(|o| Elem::atom(o.0)));
    let l = MapF::table(&apex, &x, ops.iter().map(|o| (Elem::atom(o.0), Elem::atom(o.1))).collect())?;
    let rg: BTreeMap<Elem, Elem> = ops.iter().map(|o| (Elem::atom(o.0), Elem::parse(o.2).expect("literal lists parse"))).collect();
    let r = MapF::table(&apex, &SetExpr::fm(x.clone()), rg)?;
    Span::new(l, r)
}

fn kleisli_laws(inst: &str, x0: &SetExpr, chain: &[Span], bound: usize, out: &mut Reports) {
    for p in compositions(chain.len(), 3) {
        let law = format!("Kleisli associator {p} invertible");
        let run = || -> Result<Verdict> {
            let ka = kl_associator(&p, x0, chain, bound)?;
            Ok(match &ka.to_flat {
                None => Verdict::fail(&law, Coverage::UpTo(bound), "not a bijection on the enumerated apexes".into()),
                Some(inv) => {
                    let round = ka.to_nested.vcomp(inv)?;
                    let cmp = cell_equal(&round, &SpanCell::identity(&ka.flat), bound)?;
                    match cmp.witness {
                        None => Verdict::pass(&law, cmp.coverage),
                        Some((e, a, b)) => Verdict::fail(&law, cmp.coverage, format!("at {e}: {a} vs {b}")),
                    }
                }
            })
        };
        out.push(inst, Verdict::from_result(&law, run()));
    }
    for (outer, inner) in refinements(chain.len(), 3, 2) {
        let law = format!("Kleisli associator coherence {}", show_refinement(&outer, &inner));
        let mut v = match kl_coherence_pastings(&outer, &inner, x0, chain) {
            Ok((a, b)) => diagram_equal(&a, &b, bound),
            Err(e) => Verdict::from_error(&law, &e),
        };
        v.name = law;
        out.push(inst, v);
    }
}

pub(super) fn kleisli(cfg: &SuiteConfig, out: &mut Reports) {
    let b = cfg.bound;
    match sample_signature() {
        Err(e) => out.push("kleisli/signature", Verdict::from_error("signature", &e)),
        Ok(a) => {
            let x = a.source.clone();
            for n in 0..=3 {
                kleisli_laws(&format!("kleisli/signature chain of {n}"), &x, &vec![a.clone(); n], b, out);
            }
            let inst = "kleisli/signature displayed components";
            for (p, n) in [(vec![0, 1], 1), (vec![1, 0], 1), (vec![2, 1], 3), (vec![1, 2], 3)] {
                let p = Partition::new(p);
                let chain = vec![a.clone(); n];
                let law = format!("displayed component {p} agrees with the associator");
                let shown = displayed_component(&p, &x, &chain, b).and_then(|c| {
                    c.ok_or_else(|| crate::Error::PartitionMismatch { partition: format!("{p}"), len: n })
                });
                out.push(inst, cells_agree(&law, shown, kl_associator(&p, &x, &chain, b).map(|k| k.to_nested), b));
            }
        }
    }
    let mut r = rng(cfg.seed);
    for i in 0..cfg.samples {
        let (x0, chain) = random_kl_chain(&mut r, 1 + i % 3, 2, 2, 2);
        kleisli_laws(&format!("kleisli/random chain {i}"), &x0, &chain, b, out);
    }
}

fn arrows_category() -> FiniteCategory {
    FiniteCategory::new("a→b→c", &["a", "b", "c"], &[("f", "a", "b"), ("g", "b", "c"), ("h", "a", "c")], &[("h", "g", "f")])
}

/// `ℤ/3` with the composite `r1∘r1` redirected when `mutate` is set.
fn z3_category(mutate: bool) -> FiniteCategory {
    let mut c = cyclic_category(3);
    if mutate {
        c.comp.insert(("r1".into(), "r1".into()), "r1".into());
    }
    c
}

pub(super) fn monoid(cfg: &SuiteConfig, out: &mut Reports) {
    let b = cfg.bound;
    let mut cats = vec![
        (String::from("monoid/a→b→c"), arrows_category()),
        (String::from("monoid/Z3"), z3_category(cfg.mutation == Some(Mutation::Composition))),
    ];
    let mut r = rng(cfg.seed);
    for i in 0..cfg.samples {
        cats.push((format!("monoid/random category {i}"), random_category(&mut r, 4, 10)));
    }
    for (k, (inst, c)) in cats.iter().enumerate() {
        let m = match cat_to_monoid(c) {
            Ok(m) => m,
            Err(e) => {
                out.push(inst, Verdict::from_error("presentation", &e));
                continue;
            }
        };
        out.extend(inst, check_monoid(&m, b));
        let back = monoid_to_cat(&m).map(FiniteCategory::normalized);
        out.push(inst, match back {
            Ok(back) => equal_as("presentation round trip", back == c.clone().normalized(), || format!("{back:?}")),
            Err(e) => Verdict::from_error("presentation round trip", &e),
        });
        if k == 0 {
            out.extend_result(inst, "lifted monad laws", lifted_monad_laws(&m, b));
        }
    }
}

fn unary(c: &FiniteCategory) -> Result<TMonoid> {
    multicat_to_tmonoid(&FiniteMulticat::from_table(&c.to_multicat_table())?)
}

/// Hom counts of both presentations agree on source lists up to length `bound`.
fn same_fibers(m: &FiniteMulticat, back: &FiniteMulticat, colors: &SetExpr, bound: usize) -> Verdict {
    let law = "presentation round trip";
    let lists = SetExpr::fm(colors.clone()).enumerate(bound);
    let cov = Coverage::from_enumeration(lists.exact, bound);
    for l in &lists.items {
        for c in colors.enumerate(1).items {
            let src = l.as_nest().unwrap_or(&[]);
            let (n1, n2) = (m.hom(src, &c, bound).len(), back.hom(src, &c, bound).len());
            if n1 != n2 {
                return Verdict::fail(law, cov, format!("hom({l}, {c}): {n1} vs {n2}"));
            }
        }
    }
    Verdict::pass(law, cov)
}

pub(super) fn tmonoid(cfg: &SuiteConfig, out: &mut Reports) {
    let b = cfg.bound;
    let inst = "tmonoid/trivial on p, q";
    out.extend(inst, check_tmonoid(&TMonoid::trivial(&SetExpr::atoms(&["p", "q"])), b));

    let inst = "tmonoid/Z2 multicategory";
    let z2 = FiniteMulticat::cyclic(2);
    match multicat_to_tmonoid(&z2) {
        Err(e) => out.push(inst, Verdict::from_error("presentation", &e)),
        Ok(t) => {
            out.extend(inst, check_tmonoid(&t, b));
            out.push(inst, match tmonoid_to_multicat(&t, b) {
                Ok(back) => same_fibers(&z2, &back, &t.object, b),
                Err(e) => Verdict::from_error("presentation round trip", &e),
            });
        }
    }

    let mut cats = vec![
        (String::from("tmonoid/unary a→b→c"), arrows_category()),
        (String::from("tmonoid/unary Z3"), z3_category(cfg.mutation == Some(Mutation::MulticatComposition))),
    ];
    let mut r = rng(cfg.seed);
    for i in 0..cfg.samples {
        cats.push((format!("tmonoid/unary random category {i}"), random_category(&mut r, 4, 10)));
    }
    for (inst, c) in &cats {
        let t = match unary(c) {
            Ok(t) => t,
            Err(e) => {
                out.push(inst, Verdict::from_error("presentation", &e));
                continue;
            }
        };
        out.extend(inst, check_tmonoid(&t, b));
        let table = c.to_multicat_table().normalized();
        out.push(inst, match tmonoid_to_multicat(&t, b) {
            Ok(back) => {
                let got = back.table.map(|t| t.normalized());
                equal_as("presentation round trip", got.as_ref() == Some(&table), || format!("{got:?}"))
            }
            Err(e) => Verdict::from_error("presentation round trip", &e),
        });
    }
}

fn one_point() -> StrictMonCat {
    StrictMonCat {
        category: FiniteCategory::new("point", &["*"], &[], &[]),
        unit: "*".into(),
        tensor_obj: [(("*".into(), "*".into()), "*".into())].into_iter().collect(),
        tensor_mor: BTreeMap::new(),
    }
}

pub(super) fn algebra(cfg: &SuiteConfig, out: &mut Reports) {
    let b = cfg.bound;
    let mut z3 = StrictMonCat::discrete_cyclic(3);
    if cfg.mutation == Some(Mutation::Tensor) {
        z3.tensor_obj.insert(("1".into(), "1".into()), "0".into());
    }
    for (inst, s) in [("algebra/discrete Z2", StrictMonCat::discrete_cyclic(2)), ("algebra/discrete Z3", z3), ("algebra/point", one_point())] {
        match smc_to_talgebra(&s) {
            Err(e) => out.push(inst, Verdict::from_error("presentation", &e)),
            Ok(a) => {
                out.extend(inst, check_talgebra(&a, b));
                out.push(inst, match talgebra_to_smc(&a) {
                    Ok(back) => equal_as("presentation round trip", back.normalized() == s.normalized(), || format!("{back:?}")),
                    Err(e) => Verdict::from_error("presentation round trip", &e),
                });
            }
        }
    }
    let mut cats = vec![(String::from("algebra/free on a→b→c"), arrows_category())];
    let mut r = rng(cfg.seed);
    for i in 0..cfg.samples {
        cats.push((format!("algebra/free on random category {i}"), random_category(&mut r, 3, 6)));
    }
    for (inst, c) in &cats {
        match unary(c).and_then(|t| free_talgebra(&t, b)) {
            Ok(a) => out.extend(inst, check_talgebra(&a, b)),
            Err(e) => out.push(inst, Verdict::from_error("free algebra", &e)),
        }
    }
}

fn z(n: usize) -> Result<TAlgebra> {
    smc_to_talgebra(&StrictMonCat::discrete_cyclic(n))
}

/// `k ↦ −k` on discrete `ℤ/n`.
fn negation(a: &TAlgebra, n: usize) -> Result<TAlgebraHom> {
    let neg = |k: usize| (n - k) % n;
    let objs: BTreeMap<Elem, Elem> = (0..n).map(|k| (Elem::atom(&format!("{k}")), Elem::atom(&format!("{}", neg(k))))).collect();
    let mors: BTreeMap<Elem, Elem> = (0..n)
        .map(|k| (Elem::atom(&identity_name(&format!("{k}"))), Elem::atom(&identity_name(&format!("{}", neg(k))))))
        .collect();
    Ok(TAlgebraHom::new(
        a,
        a,
        MapF::table(a.object(), a.object(), objs)?,
        MapF::table(&a.vector().apex, &a.vector().apex, mors)?,
    ))
}

pub(super) fn adjunction(cfg: &SuiteConfig, out: &mut Reports) {
    let b = cfg.bound;
    let two = FiniteCategory::new("a⇉b", &["a", "b"], &[("f", "a", "b"), ("g", "a", "b")], &[]);
    let arrow = FiniteCategory::new("a→b", &["a", "b"], &[("f", "a", "b")], &[]);
    let pairs: [(&str, Result<TMonoid>, usize); 3] = [
        ("adjunction/a⇉b with discrete Z2", unary(&two), 2),
        ("adjunction/a→b with discrete Z3", unary(&arrow), 3),
        ("adjunction/trivial on p, q with discrete Z2", Ok(TMonoid::trivial(&SetExpr::atoms(&["p", "q"]))), 2),
    ];
    for (inst, t, n) in pairs {
        let run = || -> Result<Vec<Verdict>> {
            let (t, a) = (t?, z(n)?);
            let twist = if cfg.mutation == Some(Mutation::TwistedCounit) && n > 2 { Some(negation(&a, n)?) } else { None };
            let target = (a.object().clone(), a.vector().clone());
            let counit = move |mka: &TAlgebra, to: &TAlgebra| {
                let e = counit_from(mka, to);
                match &twist {
                    Some(th) if (to.object(), to.vector()) == (&target.0, &target.1) => e.then(th),
                    _ => e,
                }
            };
            let mut vs = check_triangles_with(&t, &a, &unit_into, &counit, b)?;
            vs.extend(hom_bijection_oracle(&t, &a, b, DEFAULT_CAP)?.verdicts);
            Ok(vs)
        };
        out.extend_result(inst, "adjunction checks", run());
    }
}

fn cat(name: &str, objects: &[&str], morphisms: &[(&str, &str, &str)], comp: &[(&str, &str, &str)]) -> Result<Monoid> {
    cat_to_monoid(&FiniteCategory::new(name, objects, morphisms, comp))
}

/// The identity module of `m` with its right action multiplied by `e`.
fn twisted_identity(m: &Monoid, e: &str) -> Result<BiModule> {
    let i = BiModule::identity(m);
    let (mu, e) = (m.mu.map.clone(), Elem::atom(e));
    let act = MapF::native("e·(α·μ)", &i.right_action.from.apex, &i.carrier.apex, move |p| mu.apply(&Elem::pair(e.clone(), mu.apply(p)?)));
    BiModule::new(&i.name, &i.left, &i.right, i.carrier.clone(), i.left_action.map.clone(), act)
}

pub(super) fn prof(cfg: &SuiteConfig, out: &mut Reports) {
    let b = cfg.bound;
    let run = |out: &mut Reports| -> Result<()> {
        let arrow = cat("a→b", &["a", "b"], &[("f", "a", "b")], &[])?;
        let chain3 = cat("0→1→2", &["0", "1", "2"], &[("u", "0", "1"), ("v", "1", "2"), ("w", "0", "2")], &[("w", "v", "u")])?;
        let point = cat("point", &["*"], &[], &[])?;
        let idem = cat("{1,e}", &["*"], &[("e", "*", "*")], &[("e", "e", "e")])?;
        for m in [&arrow, &chain3, &point] {
            out.extend(&format!("prof/identity module on {}", m.name), check_bimodule(&BiModule::identity(m), b));
        }
        let i = if cfg.mutation == Some(Mutation::IdempotentAction) { twisted_identity(&idem, "e")? } else { BiModule::identity(&idem) };
        out.extend(&format!("prof/identity module on {}", idem.name), check_bimodule(&i, b));

        let f = functor(&arrow, &chain3, &[("a", "0"), ("b", "1")], &[("f", "u")])?;
        let g = functor(&chain3, &point, &[("0", "*"), ("1", "*"), ("2", "*")], &[("u", "id_*"), ("v", "id_*"), ("w", "id_*")])?;
        let h = functor(&point, &arrow, &[("*", "b")], &[])?;
        let (mf, mg, mh) = (representable(&f)?, representable(&g)?, representable(&h)?);
        for (name, m) in [("F", &mf), ("G", &mg), ("H", &mh)] {
            out.extend(&format!("prof/representable of {name}"), check_bimodule(m, b));
        }

        let inst = "prof/representables of F then G";
        let mgf = representable(&f.then(&g))?;
        let comp = module_compose(&mf, &mg)?;
        let cmp = representable_comparison(&g, &comp, &mgf);
        out.extend(inst, check_canonical_iso("composite of representables is representable", &comp, &mgf, &cmp, b));

        for (name, m) in [("representable of F", &mf), ("identity module on a→b", &BiModule::identity(&arrow))] {
            let inst = format!("prof/unitors of the {name}");
            let l = module_compose(&BiModule::identity(&m.right), m)?;
            let r = module_compose(m, &BiModule::identity(&m.left))?;
            let (fl, fr) = unitor_comparisons(m, &l, &r);
            out.extend(&inst, check_canonical_iso("left unitor", &l, m, &fl, b));
            out.extend(&inst, check_canonical_iso("right unitor", &r, m, &fr, b));
        }

        out.extend("prof/chain of representables F, G, H", mmod_equipment_laws(&[mf, mg, mh], b));
        Ok(())
    };
    if let Err(e) = run(out) {
        out.push("prof/fixtures", Verdict::from_error("fixtures", &e));
    }
}
