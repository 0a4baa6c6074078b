use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::string::String;
use alloc::vec::Vec;

use super::*;
use crate::monoids::{cat_to_monoid, check_monoid_hom, FiniteCategory};

fn all_ok(vs: &[Verdict]) -> bool {
    vs.iter().all(|v| v.ok)
}

fn bad(vs: &[Verdict]) -> Vec<String> {
    vs.iter().filter(|v| !v.ok).map(|v| format!("{}: {:?}", v.name, v.witness)).collect()
}

fn arrow() -> Monoid {
    cat_to_monoid(&FiniteCategory::new("arrow", &["a", "b"], &[("f", "a", "b")], &[])).unwrap()
}

fn chain3() -> Monoid {
    cat_to_monoid(&FiniteCategory::new(
        "0→1→2",
        &["0", "1", "2"],
        &[("u", "0", "1"), ("v", "1", "2"), ("w", "0", "2")],
        &[("w", "v", "u")],
    ))
    .unwrap()
}

fn point() -> Monoid {
    cat_to_monoid(&FiniteCategory::new("point", &["*"], &[], &[])).unwrap()
}

fn f_arrow_chain() -> MonoidHom {
    functor(&arrow(), &chain3(), &[("a", "0"), ("b", "1")], &[("f", "u")]).unwrap()
}

fn g_chain_point() -> MonoidHom {
    functor(&chain3(), &point(), &[("0", "*"), ("1", "*"), ("2", "*")], &[("u", "id_*"), ("v", "id_*"), ("w", "id_*")]).unwrap()
}

fn h_point_arrow() -> MonoidHom {
    functor(&point(), &arrow(), &[("*", "b")], &[]).unwrap()
}

/// Connected components of the zig-zag graph, found by breadth-first search over all triples.
fn bfs_classes(m: &BiModule, n: &BiModule) -> BTreeSet<BTreeSet<Elem>> {
    let ms = m.carrier.apex.enumerate(usize::MAX).items;
    let ns = n.carrier.apex.enumerate(usize::MAX).items;
    let bs = m.left.vector.apex.enumerate(usize::MAX).items;
    let (b, mc, nc) = (&m.left.vector, &m.carrier, &n.carrier);
    let mut nodes = Vec::new();
    for mu in &ms {
        for nu in &ns {
            if mc.right.apply(mu).unwrap() == nc.left.apply(nu).unwrap() {
                nodes.push(Elem::pair(mu.clone(), nu.clone()));
            }
        }
    }
    let mut adj: BTreeMap<Elem, Vec<Elem>> = nodes.iter().map(|p| (p.clone(), Vec::new())).collect();
    for mu in &ms {
        for be in &bs {
            if mc.right.apply(mu).unwrap() != b.left.apply(be).unwrap() {
                continue;
            }
            for nu in &ns {
                if b.right.apply(be).unwrap() != nc.left.apply(nu).unwrap() {
                    continue;
                }
                let p = Elem::pair(m.act_left(mu, be).unwrap(), nu.clone());
                let q = Elem::pair(mu.clone(), n.act_right(be, nu).unwrap());
                adj.get_mut(&p).unwrap().push(q.clone());
                adj.get_mut(&q).unwrap().push(p);
            }
        }
    }
    let mut seen = BTreeSet::new();
    let mut out = BTreeSet::new();
    for start in &nodes {
        if seen.contains(start) {
            continue;
        }
        let mut comp = BTreeSet::new();
        let mut queue = VecDeque::from([start.clone()]);
        seen.insert(start.clone());
        while let Some(v) = queue.pop_front() {
            for w in &adj[&v] {
                if seen.insert(w.clone()) {
                    queue.push_back(w.clone());
                }
            }
            comp.insert(v);
        }
        out.insert(comp);
    }
    out
}

fn classes_of(c: &Composite) -> BTreeSet<BTreeSet<Elem>> {
    c.classes().into_values().map(|v| v.into_iter().collect()).collect()
}

#[test]
fn identity_module_is_a_module() {
    for m in [arrow(), chain3(), point()] {
        let vs = check_bimodule(&BiModule::identity(&m), 1);
        assert!(all_ok(&vs), "{}: {:?}", m.name, bad(&vs));
    }
}

#[test]
fn composing_identity_modules_identifies_pairs() {
    let i = BiModule::identity(&arrow());
    let c = module_compose(&i, &i).unwrap();
    assert_eq!(c.raw_pairs.len(), 4);
    assert_eq!(c.module.carrier.apex.enumerate(1).items.len(), 3);
    assert_eq!(classes_of(&c), bfs_classes(&i, &i));
    let f_id = Elem::pair(Elem::atom("f"), Elem::atom("id_a"));
    let id_f = Elem::pair(Elem::atom("id_b"), Elem::atom("f"));
    assert_eq!(c.class_of(&f_id).unwrap(), c.class_of(&id_f).unwrap());
    assert!(all_ok(&check_bimodule(&c.module, 1)));
}

#[test]
fn quotient_matches_breadth_first_components() {
    let (f, g) = (f_arrow_chain(), g_chain_point());
    let pairs = [
        (representable(&f).unwrap(), representable(&g).unwrap()),
        (BiModule::identity(&chain3()), BiModule::identity(&chain3())),
        (representable(&f).unwrap(), BiModule::identity(&chain3())),
    ];
    for (m, n) in &pairs {
        let c = module_compose(m, n).unwrap();
        assert_eq!(classes_of(&c), bfs_classes(m, n), "{} then {}", m.name, n.name);
        for (rep, members) in c.classes() {
            assert_eq!(Some(&rep), members.iter().min());
        }
    }
}

#[test]
fn unit_modules_are_units() {
    for m in [representable(&f_arrow_chain()).unwrap(), BiModule::identity(&arrow())] {
        let l = module_compose(&BiModule::identity(&m.right), &m).unwrap();
        let r = module_compose(&m, &BiModule::identity(&m.left)).unwrap();
        let (fl, fr) = unitor_comparisons(&m, &l, &r);
        let vs = check_canonical_iso("left unitor", &l, &m, &fl, 1);
        assert!(all_ok(&vs), "{:?}", bad(&vs));
        let vs = check_canonical_iso("right unitor", &r, &m, &fr, 1);
        assert!(all_ok(&vs), "{:?}", bad(&vs));
    }
}

#[test]
fn representables_compose() {
    let (f, g) = (f_arrow_chain(), g_chain_point());
    assert!(all_ok(&check_monoid_hom(&f, 1)));
    let (mf, mg) = (representable(&f).unwrap(), representable(&g).unwrap());
    assert!(all_ok(&check_bimodule(&mf, 1)), "{:?}", bad(&check_bimodule(&mf, 1)));
    assert!(all_ok(&check_bimodule(&mg, 1)));
    let gf = f.then(&g);
    let mgf = representable(&gf).unwrap();
    let c = module_compose(&mf, &mg).unwrap();
    assert!(c.raw_pairs.len() > c.module.carrier.apex.enumerate(1).items.len());
    let cmp = representable_comparison(&g, &c, &mgf);
    let vs = check_canonical_iso("G∘F", &c, &mgf, &cmp, 1);
    assert!(all_ok(&vs), "{:?}", bad(&vs));
}

#[test]
fn composition_is_associative_on_a_three_chain() {
    let chain = [
        representable(&f_arrow_chain()).unwrap(),
        representable(&g_chain_point()).unwrap(),
        representable(&h_point_arrow()).unwrap(),
    ];
    let vs = mmod_equipment_laws(&chain, 1);
    assert!(all_ok(&vs), "{:?}", bad(&vs));
    assert!(vs.iter().all(|v| v.coverage == Coverage::Exact), "{vs:?}");
    assert!(vs.iter().any(|v| v.name.starts_with("associator at")));
}

#[test]
fn balanced_maps_factor_uniquely_through_the_quotient() {
    let (m, n) = (representable(&f_arrow_chain()).unwrap(), BiModule::identity(&chain3()));
    let c = module_compose(&m, &n).unwrap();
    let raw = &c.raw_pairs;
    assert!(raw.len() <= 16);
    let classes = c.classes().len();
    let triples = compose_n(&[m.carrier.clone(), m.left.vector.clone(), n.carrier.clone()]).unwrap().apex.enumerate(1).items;
    let mut balanced = 0;
    for code in 0u32..(1 << raw.len()) {
        let val = |p: &Elem| (code >> raw.iter().position(|q| q == p).unwrap()) & 1;
        let ok = triples.iter().all(|t| {
            let (mu, be, nu) = triple(t).unwrap();
            val(&Elem::pair(m.act_left(mu, be).unwrap(), nu.clone())) == val(&Elem::pair(mu.clone(), n.act_right(be, nu).unwrap()))
        });
        if ok {
            balanced += 1;
            for p in raw {
                assert_eq!(val(p), val(&c.class_of(p).unwrap()), "balanced map not constant on the class of {p}");
            }
        }
    }
    assert_eq!(balanced, 1 << classes);
}

#[test]
fn mismatched_monoids_do_not_compose() {
    let m = BiModule::identity(&arrow());
    let n = BiModule::identity(&chain3());
    assert!(matches!(module_compose(&m, &n), Err(Error::ChainMismatch { .. })));
}

#[test]
fn a_broken_action_is_caught() {
    let i = BiModule::identity(&arrow());
    let mu = i.left_action.map.clone();
    let broken = MapF::native("forgets f", &i.left_action.from.apex, &i.carrier.apex, move |e| {
        let v = mu.apply(e)?;
        Ok(if v == Elem::atom("f") && e.as_tuple().unwrap()[1] == Elem::atom("id_a") { Elem::atom("id_a") } else { v })
    });
    let m = BiModule::new("broken", &i.left, &i.right, i.carrier.clone(), broken, i.right_action.map.clone()).unwrap();
    let vs = check_bimodule(&m, 1);
    assert!(vs.iter().any(|v| !v.ok && v.witness.is_some()));
}
