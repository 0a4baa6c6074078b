use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use proptest::prelude::*;

use super::mat::{check_mat_monoid, check_mat_tmonoid, multi_preorder};
use super::*;
use crate::fixtures::{random_category, rng};
use crate::quantale::{MatVector, Quantale};

fn all_ok(vs: &[Verdict]) -> bool {
    vs.iter().all(|v| v.ok)
}

fn failing(vs: &[Verdict]) -> Vec<&str> {
    vs.iter().filter(|v| !v.ok).map(|v| v.name.as_str()).collect()
}

fn arrow_cat() -> FiniteCategory {
    FiniteCategory::new("arrows", &["a", "b", "c"], &[("f", "a", "b"), ("g", "b", "c"), ("h", "a", "c")], &[("h", "g", "f")])
}

fn cyclic_cat(n: usize) -> FiniteCategory {
    let name = |k: usize| if k == 0 { identity_name("*") } else { format!("r{k}") };
    let mors: Vec<(String, String, String)> = (1..n).map(|k| (name(k), "*".into(), "*".into())).collect();
    let mut c = FiniteCategory::new(&format!("Z/{n} as a category"), &["*"], &[], &[]);
    c.morphisms = mors.into_iter().map(|(n, d, k)| MorDecl { name: n, dom: d, cod: k }).collect();
    for i in 1..n {
        for j in 1..n {
            c.comp.insert((name(i), name(j)), name((i + j) % n));
        }
    }
    c
}

/// Associativity and typing of a category table, checked directly on composable triples.
fn elementary_ok(c: &FiniteCategory) -> bool {
    let mors = c.all_morphisms();
    let ends = |m: &str| c.ends(m).unwrap();
    for g in &mors {
        for f in &mors {
            if ends(g).0 != ends(f).1 {
                continue;
            }
            let Some(gf) = c.compose(g, f) else { return false };
            match c.ends(&gf) {
                Some((d, k)) if d == ends(f).0 && k == ends(g).1 => {}
                _ => return false,
            }
            for h in &mors {
                if ends(h).0 != ends(g).1 {
                    continue;
                }
                let (Some(hg), Some(hgf)) = (c.compose(h, g), c.compose(h, &gf)) else { return false };
                if c.compose(&hg, f) != Some(hgf) {
                    return false;
                }
            }
        }
    }
    true
}

#[test]
fn trivial_monoid_passes() {
    let x = SetExpr::atoms(&["p", "q"]);
    assert!(all_ok(&check_monoid(&Monoid::trivial(&x), 2)));
}

#[test]
fn three_object_category_is_a_monoid_and_round_trips() {
    let c = arrow_cat();
    let m = cat_to_monoid(&c).unwrap();
    assert!(all_ok(&check_monoid(&m, 2)), "{:?}", check_monoid(&m, 2));
    assert_eq!(monoid_to_cat(&m).unwrap().normalized(), c.normalized());
}

#[test]
fn two_element_group_has_two_element_apex() {
    let c = cyclic_cat(2);
    let m = cat_to_monoid(&c).unwrap();
    assert_eq!(m.vector.apex.enumerate(1).items.len(), 2);
    assert!(all_ok(&check_monoid(&m, 2)));
    assert_eq!(monoid_to_cat(&m).unwrap().normalized(), c.normalized());
}

#[test]
fn single_object_single_morphism_is_trivial() {
    let c = FiniteCategory::new("point", &["*"], &[], &[]);
    let m = cat_to_monoid(&c).unwrap();
    assert_eq!(m.vector.apex.enumerate(1).items, vec![Elem::atom("id_*")]);
    assert!(all_ok(&check_monoid(&m, 2)));
}

#[test]
fn corrupted_composition_names_a_triple() {
    let mut c = cyclic_cat(3);
    c.comp.insert(("r1".into(), "r1".into()), "r1".into());
    assert!(!elementary_ok(&c));
    let vs = check_monoid(&cat_to_monoid(&c).unwrap(), 2);
    assert_eq!(failing(&vs), vec!["monoid associativity"]);
    let w = vs.iter().find(|v| !v.ok).unwrap().witness.clone().unwrap();
    assert!(w.starts_with("at (") && w.matches(',').count() >= 2, "{w}");
}

#[test]
fn ill_typed_composite_is_not_a_cell() {
    let mut c = arrow_cat();
    c.comp.insert(("g".into(), "f".into()), "g".into());
    let vs = check_monoid(&cat_to_monoid(&c).unwrap(), 2);
    assert!(failing(&vs).contains(&"mu is a cell"));
}

#[test]
fn random_categories_pass_and_round_trip() {
    let mut r = rng(11);
    for _ in 0..12 {
        let c = random_category(&mut r, 4, 10);
        assert!(elementary_ok(&c));
        let m = cat_to_monoid(&c).unwrap();
        assert!(all_ok(&check_monoid(&m, 2)), "{c:?}");
        assert_eq!(monoid_to_cat(&m).unwrap().normalized(), c.clone().normalized());
    }
}

#[test]
fn trivial_tmonoid_passes() {
    let x = SetExpr::atoms(&["p", "q"]);
    assert!(all_ok(&check_tmonoid(&TMonoid::trivial(&x), 3)));
}

fn fiber_sizes(m: &FiniteMulticat, colors: &[&str], max_len: usize) -> BTreeMap<(Elem, Elem), usize> {
    let cs = SetExpr::atoms(colors);
    let mut out = BTreeMap::new();
    for l in SetExpr::fm(cs.clone()).enumerate(max_len).items {
        for c in crate::fixtures::elems(&cs) {
            let n = m.hom(l.as_nest().unwrap(), &c, max_len).len();
            out.insert((l.clone(), c), n);
        }
    }
    out
}

#[test]
fn terminal_multicat_passes_with_singleton_fibers() {
    let m = FiniteMulticat::terminal(&["u", "v"]);
    let t = multicat_to_tmonoid(&m).unwrap();
    let vs = check_tmonoid(&t, 2);
    assert!(all_ok(&vs), "{vs:?}");
    for v in &vs {
        let want = if v.name == "eta is a cell" { Coverage::Exact } else { Coverage::UpTo(2) };
        assert_eq!(v.coverage, want, "{}", v.name);
    }
    assert!(fiber_sizes(&m, &["u", "v"], 3).values().all(|&n| n == 1));
}

#[test]
fn cyclic_multicat_matches_arithmetic() {
    let m = FiniteMulticat::cyclic(2);
    let t = multicat_to_tmonoid(&m).unwrap();
    assert!(all_ok(&check_tmonoid(&t, 3)));
    let back = tmonoid_to_multicat(&t, 3).unwrap();
    let (before, after) = (fiber_sizes(&m, &["0", "1"], 3), fiber_sizes(&back, &["0", "1"], 3));
    assert_eq!(before, after);
    for ((l, c), n) in before {
        let sum: usize = l.as_nest().unwrap().iter().map(|e| e.as_atom().unwrap().parse::<usize>().unwrap()).sum();
        let tgt: usize = c.as_atom().unwrap().parse().unwrap();
        assert_eq!(n, usize::from(sum % 2 == tgt), "{l} -> {c}");
    }
}

#[test]
fn identity_only_multicat_has_apex_isomorphic_to_objects() {
    let t = MulticatTable {
        name: "discrete".into(),
        colors: vec!["p".into(), "q".into()],
        ops: vec![],
        identities: BTreeMap::new(),
        comp: BTreeMap::new(),
    }
    .with_default_identities();
    let tm = multicat_to_tmonoid(&FiniteMulticat::from_table(&t).unwrap()).unwrap();
    assert_eq!(tm.vector.apex.enumerate(1).items.len(), 2);
    assert!(all_ok(&check_tmonoid(&tm, 2)));
    let back = tmonoid_to_multicat(&tm, 2).unwrap();
    assert_eq!(back.table.unwrap(), t);
}

#[test]
fn unary_multicat_agrees_with_the_category_along_singleton() {
    let c = arrow_cat();
    let m = cat_to_monoid(&c).unwrap();
    let t = multicat_to_tmonoid(&FiniteMulticat::from_table(&c.to_multicat_table()).unwrap()).unwrap();
    assert!(all_ok(&check_tmonoid(&t, 2)));
    assert_eq!(t.vector.apex, m.vector.apex);
    for f in m.vector.apex.enumerate(1).items {
        assert_eq!(t.vector.left.apply(&f).unwrap(), m.vector.left.apply(&f).unwrap());
        assert_eq!(t.vector.right.apply(&f).unwrap(), Elem::nest(vec![m.vector.right.apply(&f).unwrap()]));
    }
    for e in m.mu.from.apex.enumerate(2).items {
        let p = e.as_tuple().unwrap();
        let lifted = Elem::pair(p[0].clone(), Elem::nest(vec![p[1].clone()]));
        assert_eq!(t.mu.apply(&lifted).unwrap(), m.mu.apply(&e).unwrap());
    }
}

#[test]
fn table_round_trip_for_a_binary_operation() {
    let t = MulticatTable {
        name: "pairing".into(),
        colors: vec!["p".into(), "q".into()],
        ops: vec![
            OpDecl { name: "f".into(), sources: vec!["p".into(), "p".into()], target: "q".into() },
            OpDecl { name: "u".into(), sources: vec!["p".into()], target: "p".into() },
            OpDecl { name: "g".into(), sources: vec!["p".into(), "p".into()], target: "q".into() },
        ],
        identities: BTreeMap::new(),
        comp: [
            (("f", vec!["u", "id_p"]), "g"),
            (("f", vec!["id_p", "u"]), "g"),
            (("f", vec!["u", "u"]), "g"),
            (("g", vec!["u", "id_p"]), "g"),
            (("g", vec!["id_p", "u"]), "g"),
            (("g", vec!["u", "u"]), "g"),
            (("u", vec!["u"]), "u"),
        ]
        .into_iter()
        .map(|((f, gs), h)| ((f.to_string(), gs.into_iter().map(String::from).collect()), h.to_string()))
        .collect(),
    }
    .with_default_identities();
    let tm = multicat_to_tmonoid(&FiniteMulticat::from_table(&t).unwrap()).unwrap();
    let vs = check_tmonoid(&tm, 2);
    assert!(all_ok(&vs), "{vs:?}");
    assert_eq!(tmonoid_to_multicat(&tm, 2).unwrap().table.unwrap().normalized(), t.normalized());
}

#[test]
fn parity_is_a_hom_and_a_shifted_map_is_not() {
    let z4 = multicat_to_tmonoid(&FiniteMulticat::cyclic(4)).unwrap();
    let z2 = multicat_to_tmonoid(&FiniteMulticat::cyclic(2)).unwrap();
    let parity = |k: usize| crate::fixtures::table_map(&z4.object, &z2.object, &[k % 2, (k + 1) % 2, k % 2, (k + 1) % 2]);
    let h = thin_hom(&z4, &z2, parity(0));
    assert!(all_ok(&check_tmonoid_hom(&h, 3)));
    let bad = thin_hom(&z4, &z2, parity(1));
    let vs = check_tmonoid_hom(&bad, 3);
    assert_eq!(failing(&vs)[0], "phi is a cell");
    assert!(vs[0].witness.is_some());
}

#[test]
fn identity_and_composite_homs_pass() {
    let z4 = multicat_to_tmonoid(&FiniteMulticat::cyclic(4)).unwrap();
    let z2 = multicat_to_tmonoid(&FiniteMulticat::cyclic(2)).unwrap();
    let one = multicat_to_tmonoid(&FiniteMulticat::terminal(&["*"])).unwrap();
    assert!(all_ok(&check_tmonoid_hom(&TMonoidHom::identity(&z2), 3)));
    let p = thin_hom(&z4, &z2, crate::fixtures::table_map(&z4.object, &z2.object, &[0, 1, 0, 1]));
    let q = thin_hom(&z2, &one, crate::fixtures::table_map(&z2.object, &one.object, &[0, 0]));
    assert!(all_ok(&check_tmonoid_hom(&p.then(&q), 3)));
}

#[test]
fn lifting_the_trivial_monoid_gives_lists() {
    let x = SetExpr::atoms(&["p", "q"]);
    let t = T_on_monoids(&Monoid::trivial(&x), 3).unwrap();
    assert_eq!(t.object, SetExpr::fm(x));
    assert!(all_ok(&check_monoid(&t, 3)));
}

#[test]
fn lifted_category_hom_counts_are_products() {
    let c = FiniteCategory::new("two", &["a", "b"], &[("f", "a", "b"), ("g", "a", "b")], &[]);
    let m = cat_to_monoid(&c).unwrap();
    let t = T_on_monoids(&m, 3).unwrap();
    assert!(all_ok(&check_monoid(&t, 3)));
    let base = |u: &Elem, v: &Elem| m.vector.fiber(v, u, 1).items.len();
    let lists = t.object.enumerate(3).items;
    for u in &lists {
        for v in &lists {
            let (us, vs) = (u.as_nest().unwrap(), v.as_nest().unwrap());
            let want = if us.len() == vs.len() { us.iter().zip(vs).map(|(a, b)| base(a, b)).product() } else { 0 };
            // fibers are read (target, source)
            assert_eq!(t.vector.fiber(v, u, 3).items.len(), want, "{u} -> {v}");
        }
    }
}

#[test]
fn lifted_monad_is_a_monad_on_monoids() {
    let m = cat_to_monoid(&arrow_cat()).unwrap();
    let vs = lifted_monad_laws(&m, 2).unwrap();
    assert!(all_ok(&vs), "{vs:?}");
    let h = monoid_mult(&m, 2).unwrap();
    let fail = MonoidHom::new(&h.source, &h.target, h.scalar.clone(), MapF::identity(&h.source.vector.apex));
    assert!(!all_ok(&check_monoid_hom(&fail, 2)));
}

#[test]
fn lifting_is_functorial_on_homs() {
    let c = arrow_cat();
    let m = cat_to_monoid(&c).unwrap();
    let id = MonoidHom::identity(&m);
    let t_id = T_on_monoid_homs(&id, 2).unwrap();
    let tt = T_on_monoids(&m, 2).unwrap();
    let direct = MonoidHom::identity(&tt);
    let twice = t_id.then(&t_id);
    assert!(all_ok(&hom_equal("T(1∘1)", (&twice.scalar, &twice.phi.map), (&direct.scalar, &direct.phi.map), &tt.object, &tt.vector.apex, 3)));
    assert!(all_ok(&check_monoid_hom(&t_id, 3)));
}

#[test]
fn multi_preorder_is_a_t_category() {
    let q = Arc::new(Quantale::boolean());
    let r = multi_preorder(&q, &["a", "b", "c"]);
    let vs = check_mat_tmonoid(&r, 3).unwrap();
    assert!(all_ok(&vs), "{vs:?}");
    let x = r.source.clone();
    let strict = MatVector::pred(&q, &x, &SetExpr::fm(x.clone()), None, |t, l| {
        usize::from(l.as_nest().unwrap().iter().all(|y| y < t))
    });
    let vs = check_mat_tmonoid(&strict, 3).unwrap();
    assert_eq!(failing(&vs), vec!["unit: e ≤ a"]);
}

#[test]
fn order_relation_is_a_mat_monoid() {
    let q = Arc::new(Quantale::boolean());
    let x = SetExpr::atoms(&["a", "b", "c"]);
    let es: Vec<_> = crate::fixtures::elems(&x)
        .into_iter()
        .flat_map(|s| crate::fixtures::elems(&x).into_iter().map(move |t| (s.clone(), t)))
        .map(|(s, t)| {
            let v = usize::from(s <= t);
            ((s, t), v)
        })
        .collect();
    let le = MatVector::table(&q, &x, &x, es.clone()).unwrap();
    assert!(all_ok(&check_mat_monoid(&le, 1).unwrap()));
    let ne = MatVector::table(&q, &x, &x, es.into_iter().map(|((s, t), _)| ((s.clone(), t.clone()), usize::from(s != t)))).unwrap();
    assert!(!all_ok(&check_mat_monoid(&ne, 1).unwrap()));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn generated_categories_round_trip_through_tmonoids(seed in 0u64..10_000) {
        let c = random_category(&mut rng(seed), 4, 10);
        let table = c.to_multicat_table();
        let t = multicat_to_tmonoid(&FiniteMulticat::from_table(&table).unwrap()).unwrap();
        prop_assert!(all_ok(&check_tmonoid(&t, 1)));
        prop_assert_eq!(tmonoid_to_multicat(&t, 1).unwrap().table.unwrap().normalized(), table.normalized());
    }

    #[test]
    fn single_entry_mutations_are_caught(seed in 0u64..10_000, pick in 0usize..64, alt in 0usize..64) {
        let c = random_category(&mut rng(seed), 4, 10);
        prop_assume!(!c.comp.is_empty());
        let keys: Vec<_> = c.comp.keys().cloned().collect();
        let key = keys[pick % keys.len()].clone();
        let all = c.all_morphisms();
        let replacement = all[alt % all.len()].clone();
        prop_assume!(c.comp[&key] != replacement);
        let mut bad = c.clone();
        bad.comp.insert(key, replacement);
        let t = multicat_to_tmonoid(&FiniteMulticat::from_table(&bad.to_multicat_table()).unwrap()).unwrap();
        let vs = check_tmonoid(&t, 1);
        prop_assert_eq!(all_ok(&vs), elementary_ok(&bad));
        prop_assert!(vs.iter().all(|v| v.ok || v.witness.is_some()));
    }
}
