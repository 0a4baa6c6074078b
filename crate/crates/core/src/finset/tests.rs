use super::*;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use proptest::prelude::*;

fn atoms(prefix: &str, n: usize) -> SetExpr {
    SetExpr::fin((0..n).map(|i| Elem::atom(&format!("{prefix}{i}"))))
}

fn table_from(dom: &SetExpr, cod: &SetExpr, images: &[usize]) -> MapF {
    let cods: Vec<Elem> = cod.as_fin().unwrap().iter().cloned().collect();
    let g: BTreeMap<Elem, Elem> =
        dom.as_fin().unwrap().iter().cloned().zip(images.iter().map(|i| cods[i % cods.len()].clone())).collect();
    MapF::table(dom, cod, g).unwrap()
}

fn l(items: &[&str]) -> Elem {
    Elem::nest(items.iter().map(|s| Elem::atom(s)).collect())
}

#[test]
fn eval_examples() {
    let x = SetExpr::atoms(&["p", "q"]);
    assert_eq!(MapF::singleton(&x).eval(&"p".into()).unwrap(), l(&["p"]));
    let ll = Elem::nest(vec![l(&["p"]), l(&["q", "p"])]);
    assert_eq!(MapF::concat(&x).eval(&ll).unwrap(), l(&["p", "q", "p"]));
    let mut g = BTreeMap::new();
    g.insert(Elem::atom("p"), Elem::atom("q"));
    g.insert(Elem::atom("q"), Elem::atom("q"));
    let f = MapF::table(&x, &x, g).unwrap();
    assert_eq!(MapF::map_of(&f).eval(&l(&["p", "p"])).unwrap(), l(&["q", "q"]));
}

#[test]
fn eval_rejects_non_members() {
    let x = SetExpr::atoms(&["p"]);
    assert!(matches!(MapF::singleton(&x).eval(&"z".into()), Err(crate::Error::Domain { .. })));
    let g = BTreeMap::new();
    assert!(matches!(MapF::table(&x, &x, g), Err(crate::Error::Rule { .. })));
}

#[test]
fn flatten_levels() {
    let x = SetExpr::atoms(&["p"]);
    let e = Elem::nest(vec![Elem::nest(vec![l(&["p"]), l(&[])]), Elem::nest(vec![l(&["p", "p"])])]);
    assert_eq!(MapF::flatten(3, &x).eval(&e).unwrap(), l(&["p", "p", "p"]));
    assert_eq!(MapF::flatten(0, &x).eval(&"p".into()).unwrap(), l(&["p"]));
}

#[test]
fn zip_and_unzip_are_inverse() {
    let a = SetExpr::atoms(&["a1", "a2"]);
    let b = SetExpr::atoms(&["b"]);
    let prod = SetExpr::product(vec![a.clone(), b.clone()]);
    let lists = SetExpr::product(vec![SetExpr::fm(a), SetExpr::fm(b)]);
    let z = MapF::zip(1, &lists, &SetExpr::fm(prod.clone()));
    let u = MapF::unzip(1, 2, &SetExpr::fm(prod), &lists);
    let t = Elem::pair(l(&["a1", "a2"]), l(&["b", "b"]));
    let zipped = z.eval(&t).unwrap();
    assert_eq!(zipped.to_string(), "[(a1,b),(a2,b)]");
    assert_eq!(u.eval(&zipped).unwrap(), t);
    assert!(z.apply(&Elem::pair(l(&["a1"]), l(&[]))).is_err());
}

#[test]
fn regroup_refills_a_shape() {
    let x = SetExpr::atoms(&["x"]);
    let a = SetExpr::atoms(&["p", "q", "r"]);
    let dom = SetExpr::product(vec![SetExpr::fm_n(2, x), SetExpr::fm(a.clone())]);
    let r = MapF::regroup(2, &dom, &SetExpr::fm_n(2, a));
    let shape = Elem::nest(vec![l(&["x", "x"]), l(&[]), l(&["x"])]);
    let out = r.eval(&Elem::pair(shape, l(&["p", "q", "r"]))).unwrap();
    assert_eq!(out.to_string(), "[[p,q],[],[r]]");
}

#[test]
fn free_monoid_enumeration_counts() {
    // lists of length at most 3 over 2 letters: 1 + 2 + 4 + 8
    let x = SetExpr::atoms(&["a", "b"]);
    let e = SetExpr::fm(x.clone()).enumerate(3);
    assert_eq!(e.items.len(), 15);
    assert!(!e.exact);
    // weight of a list of lists counts leaves and outer length
    let tt = SetExpr::fm_n(2, x).enumerate(1);
    assert_eq!(tt.items.len(), 1 + 1 + 2);
    assert!(SetExpr::fm(SetExpr::empty()).enumerate(2).exact);
}

#[test]
fn enumeration_is_canonically_sorted() {
    let x = SetExpr::atoms(&["b", "a"]);
    let e = SetExpr::fm(x).enumerate(2).items;
    let mut s: Vec<String> = e.iter().map(|e| format!("{e}")).collect();
    let orig = s.clone();
    s.sort();
    assert_eq!(s, orig);
}

#[test]
fn fibered_set_membership_and_fibers() {
    let x = SetExpr::atoms(&["0", "1"]);
    let tx = SetExpr::fm(x.clone());
    let f = FiberFiniteSet::new(
        "ops",
        x.clone(),
        tx.clone(),
        |e| e.as_tuple().map(|t| t[1].clone()),
        |e| e.as_tuple().map(|t| t[0].clone()),
        |tgt, src| vec![Elem::pair(src.clone(), tgt.clone())],
    );
    let s = SetExpr::fibered(f);
    let op = Elem::pair(l(&["0", "1"]), "1".into());
    assert!(s.contains(&op));
    assert!(!s.contains(&Elem::pair(l(&["2"]), "1".into())));
    let (left, right) = s.fibered_legs().unwrap();
    let pair = SetExpr::product(vec![x.clone(), tx.clone()]);
    let both = MapF::pairing(vec![left.clone(), right], &pair);
    let fib = s.preimage(&both, &Elem::pair("1".into(), l(&["0", "1"])), 3);
    assert!(fib.exact);
    assert_eq!(fib.items, vec![op]);
    // over target 0 with sources of length at most 2: 1 + 2 + 4
    let over = s.preimage(&left, &"0".into(), 2);
    assert!(!over.exact);
    assert_eq!(over.items.len(), 7);
}

#[test]
fn universal_property_by_exhaustive_search() {
    let a = atoms("a", 3);
    let b = atoms("b", 2);
    let c = atoms("c", 2);
    let f = table_from(&a, &c, &[0, 0, 1]);
    let g = table_from(&b, &c, &[0, 1]);
    let pb = pullback(&f, &g).unwrap();
    let apex: Vec<Elem> = pb.apex.enumerate(3).items;
    // two pairs over one point of the base, one over the other
    assert_eq!(apex.len(), 3);
    let w = atoms("w", 2);
    let ws: Vec<Elem> = w.as_fin().unwrap().iter().cloned().collect();
    let av: Vec<Elem> = a.as_fin().unwrap().iter().cloned().collect();
    let bv: Vec<Elem> = b.as_fin().unwrap().iter().cloned().collect();
    let mut cones = 0;
    for h in 0..av.len().pow(2) {
        for k in 0..bv.len().pow(2) {
            let hw = [av[h % 3].clone(), av[h / 3].clone()];
            let kw = [bv[k % 2].clone(), bv[k / 2].clone()];
            let commutes = (0..2).all(|i| f.apply(&hw[i]).unwrap() == g.apply(&kw[i]).unwrap());
            if !commutes {
                continue;
            }
            cones += 1;
            let mut factorizations = 0;
            for u in 0..apex.len().pow(2) {
                let uw = [apex[u % apex.len()].clone(), apex[u / apex.len()].clone()];
                let ok = (0..2).all(|i| {
                    pb.proj_left.apply(&uw[i]).unwrap() == hw[i] && pb.proj_right.apply(&uw[i]).unwrap() == kw[i]
                });
                if ok {
                    factorizations += 1;
                }
            }
            assert_eq!(factorizations, 1, "cone through {:?} {:?}", hw, kw);
        }
    }
    assert!(cones > 0);
    let _ = ws;
}

proptest! {
    #[test]
    fn pullback_cardinality_matches_fiber_products(
        na in 1usize..6, nb in 1usize..6, nc in 1usize..4,
        fi in proptest::collection::vec(0usize..4, 6), gi in proptest::collection::vec(0usize..4, 6),
    ) {
        let a = atoms("a", na);
        let b = atoms("b", nb);
        let c = atoms("c", nc);
        let f = table_from(&a, &c, &fi[..na]);
        let g = table_from(&b, &c, &gi[..nb]);
        let pb = pullback(&f, &g).unwrap();
        let got = pb.apex.enumerate(1);
        prop_assert!(got.exact);
        let mut expected = 0;
        for cc in c.as_fin().unwrap() {
            let fa = a.as_fin().unwrap().iter().filter(|x| f.apply(x).unwrap() == *cc).count();
            let gb = b.as_fin().unwrap().iter().filter(|x| g.apply(x).unwrap() == *cc).count();
            expected += fa * gb;
        }
        prop_assert_eq!(got.items.len(), expected);
    }

    #[test]
    fn compose_seq_agrees_with_sequential_evaluation(
        images1 in proptest::collection::vec(0usize..3, 3),
        images2 in proptest::collection::vec(0usize..3, 3),
        word in proptest::collection::vec(0usize..3, 0..4),
    ) {
        let x = atoms("x", 3);
        let f = table_from(&x, &x, &images1);
        let g = table_from(&x, &x, &images2);
        let tf = MapF::map_of(&f);
        let tg = MapF::map_of(&g);
        let h = MapF::compose(vec![tf.clone(), tg.clone()]);
        let xs: Vec<Elem> = x.as_fin().unwrap().iter().cloned().collect();
        let e = Elem::nest(word.iter().map(|i| xs[*i].clone()).collect());
        prop_assert_eq!(h.eval(&e).unwrap(), tg.eval(&tf.eval(&e).unwrap()).unwrap());
    }

    #[test]
    fn list_decompositions_count_is_a_product_of_fibers(
        gi in proptest::collection::vec(0usize..3, 4),
        word in proptest::collection::vec(0usize..3, 0..4),
    ) {
        let b = atoms("b", 4);
        let c = atoms("c", 3);
        let g = table_from(&b, &c, &gi);
        let cs: Vec<Elem> = c.as_fin().unwrap().iter().cloned().collect();
        let target = Elem::nest(word.iter().map(|i| cs[*i].clone()).collect());
        let got = list_decompositions(&target, &g);
        let expected: usize = word
            .iter()
            .map(|i| b.as_fin().unwrap().iter().filter(|x| g.apply(x).unwrap() == cs[*i]).count())
            .product();
        prop_assert_eq!(got.len(), expected);
        for d in &got {
            prop_assert_eq!(&MapF::map_of(&g).apply(d).unwrap(), &target);
        }
    }

    #[test]
    fn elem_serialization_round_trips(word in proptest::collection::vec(0usize..3, 0..5), depth in 0usize..3) {
        let mut e = Elem::nest(word.iter().map(|i| Elem::atom(&format!("v{i}"))).collect());
        for _ in 0..depth {
            e = Elem::tuple(vec![e.clone(), Elem::nest(vec![e])]);
        }
        prop_assert_eq!(Elem::parse(&format!("{e}")).unwrap(), e);
    }
}
