use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use proptest::prelude::*;
use rand::Rng;

use super::*;
use crate::fixtures::{random_category, random_list, rng};
use crate::monoids::{multicat_to_tmonoid, thin_hom, FiniteMulticat, MulticatTable};

fn all_ok(vs: &[Verdict]) -> bool {
    vs.iter().all(|v| v.ok)
}

fn bad(vs: &[Verdict]) -> Vec<String> {
    vs.iter().filter(|v| !v.ok).map(|v| alloc::format!("{}: {:?}", v.name, v.witness)).collect()
}

fn two_object_cat() -> FiniteCategory {
    FiniteCategory::new("two", &["a", "b"], &[("f", "a", "b"), ("g", "a", "b")], &[])
}

fn unary(c: &FiniteCategory) -> TMonoid {
    multicat_to_tmonoid(&FiniteMulticat::from_table(&c.to_multicat_table()).unwrap()).unwrap()
}

fn identities_only(colors: &[&str]) -> TMonoid {
    let t = MulticatTable {
        name: "identities".into(),
        colors: colors.iter().map(|c| String::from(*c)).collect(),
        ops: vec![],
        identities: Default::default(),
        comp: Default::default(),
    }
    .with_default_identities();
    multicat_to_tmonoid(&FiniteMulticat::from_table(&t).unwrap()).unwrap()
}

#[test]
fn l_of_kleisli_identity_is_the_identity() {
    let x = SetExpr::atoms(&["p", "q"]);
    let k = kappa_l0(&x, 3).unwrap();
    assert!(k.round_trips(3).unwrap().0);
    assert_eq!(k.forward.from, identity(&SetExpr::fm(x)));
}

#[test]
fn l_of_cyclic_multicat_is_lists_of_operations() {
    let t = multicat_to_tmonoid(&FiniteMulticat::cyclic(2)).unwrap();
    let l = L_on_kleisli(&KleisliVector::Span(t.vector.clone())).unwrap();
    let mut r = rng(3);
    for _ in 0..20 {
        let ops: Vec<Elem> = t.vector.apex.enumerate(2).items;
        let k = r.random_range(0..4);
        let list: Vec<Elem> = (0..k).map(|_| ops[r.random_range(0..ops.len())].clone()).collect();
        let e = Elem::nest(list.clone());
        let targets: Vec<Elem> = list.iter().map(|o| o.as_tuple().unwrap()[1].clone()).collect();
        let sources: Vec<Elem> = list.iter().flat_map(|o| o.as_tuple().unwrap()[0].as_nest().unwrap().to_vec()).collect();
        assert_eq!(l.left.apply(&e).unwrap(), Elem::nest(targets));
        assert_eq!(l.right.apply(&e).unwrap(), Elem::nest(sources));
    }
    assert!(matches!(
        L_on_kleisli(&KleisliVector::Mat(crate::quantale::mat_identity(
            &alloc::sync::Arc::new(crate::quantale::Quantale::boolean()),
            &SetExpr::atoms(&["p"])
        ))),
        Err(Error::NotInvertibleNuM)
    ));
}


#[test]
fn kappa_l2_is_invertible_on_a_slice() {
    let t = multicat_to_tmonoid(&FiniteMulticat::cyclic(2)).unwrap();
    let k = kappa_l2(&t.object, &t.vector, &t.vector, 2).unwrap();
    let (ok, cov, w) = k.round_trips(2).unwrap();
    assert!(ok, "{w:?}");
    assert_eq!(cov, Coverage::UpTo(2));
}

#[test]
fn free_algebra_on_identities_is_discrete_lists() {
    let t = identities_only(&["p", "q"]);
    let m = free_talgebra(&t, 3).unwrap();
    let vs = check_talgebra(&m, 3);
    assert!(all_ok(&vs), "{:?}", bad(&vs));
    let lists = m.object().enumerate(3).items;
    for u in &lists {
        for v in &lists {
            assert_eq!(m.vector().fiber(v, u, 3).items.len(), usize::from(u == v));
        }
        let uu = Elem::nest(vec![u.clone(), u.clone()]);
        let cat: Vec<Elem> = u.as_nest().unwrap().iter().chain(u.as_nest().unwrap()).cloned().collect();
        assert_eq!(m.action.apply(&uu).unwrap(), Elem::nest(cat));
    }
}

#[test]
fn free_algebra_on_a_category_has_product_hom_counts() {
    let c = two_object_cat();
    let t = unary(&c);
    let m = free_talgebra(&t, 3).unwrap();
    let vs = check_talgebra(&m, 2);
    assert!(all_ok(&vs), "{:?}", bad(&vs));
    let base = |u: &Elem, v: &Elem| c.all_morphisms().iter().filter(|f| c.ends(f) == Some((u.as_atom().unwrap().into(), v.as_atom().unwrap().into()))).count();
    let lists = m.object().enumerate(3).items;
    for u in &lists {
        for v in &lists {
            let (us, vs) = (u.as_nest().unwrap(), v.as_nest().unwrap());
            let want: usize = if us.len() == vs.len() { us.iter().zip(vs).map(|(a, b)| base(a, b)).product() } else { 0 };
            assert_eq!(m.vector().fiber(v, u, 3).items.len(), want, "{u} -> {v}");
        }
    }
}

#[test]
fn free_action_on_morphisms_concatenates() {
    let t = multicat_to_tmonoid(&FiniteMulticat::cyclic(2)).unwrap();
    let m = free_talgebra(&t, 2).unwrap();
    let ops = SetExpr::fm(t.vector.apex.clone());
    let ops_fin = SetExpr::fin(t.vector.apex.enumerate(2).items);
    let mut r = rng(5);
    for _ in 0..30 {
        let k = r.random_range(0..4);
        let lists: Vec<Elem> = (0..k).map(|_| random_list(&mut r, &ops_fin, 3)).collect();
        let flat: Vec<Elem> = lists.iter().flat_map(|l| l.as_nest().unwrap().to_vec()).collect();
        assert!(ops.contains(&Elem::nest(flat.clone())));
        assert_eq!(m.sigma.apply(&Elem::nest(lists)).unwrap(), Elem::nest(flat));
    }
}

#[test]
fn free_algebra_monoid_is_l_of_the_vector() {
    let t = multicat_to_tmonoid(&FiniteMulticat::cyclic(2)).unwrap();
    let m = free_talgebra(&t, 2).unwrap();
    assert_eq!(*m.vector(), L_on_kleisli(&KleisliVector::Span(t.vector.clone())).unwrap());
    let vs = check_talgebra(&m, 2);
    assert!(all_ok(&vs), "{:?}", bad(&vs));
}

#[test]
fn free_algebra_on_homs() {
    let z4 = multicat_to_tmonoid(&FiniteMulticat::cyclic(4)).unwrap();
    let z2 = multicat_to_tmonoid(&FiniteMulticat::cyclic(2)).unwrap();
    let id = M_on_homs(&TMonoidHom::identity(&z2), 2).unwrap();
    let ident = TAlgebraHom::identity(&free_talgebra(&z2, 2).unwrap());
    let apex = &id.source.vector().apex;
    assert!(all_ok(&crate::monoids::hom_equal("M(1) = 1", (id.scalar(), id.phi()), (ident.scalar(), ident.phi()), id.source.object(), apex, 2)));
    let p = thin_hom(&z4, &z2, crate::fixtures::table_map(&z4.object, &z2.object, &[0, 1, 0, 1]));
    let mp = M_on_homs(&p, 2).unwrap();
    let vs = check_talgebra_hom(&mp, 2);
    assert!(all_ok(&vs), "{:?}", bad(&vs));
    let q = thin_hom(&z2, &z2, MapF::identity(&z2.object));
    let both = M_on_homs(&p.then(&q), 2).unwrap();
    let seq = mp.then(&M_on_homs(&q, 2).unwrap());
    let apex = &both.source.vector().apex;
    assert!(all_ok(&crate::monoids::hom_equal("M(qp) = M(q)M(p)", (both.scalar(), both.phi()), (seq.scalar(), seq.phi()), both.source.object(), apex, 2)));
}

#[test]
fn discrete_cyclic_strict_monoidal_round_trips() {
    let s = StrictMonCat::discrete_cyclic(2);
    let a = smc_to_talgebra(&s).unwrap();
    let vs = check_talgebra(&a, 3);
    assert!(all_ok(&vs), "{:?}", bad(&vs));
    assert_eq!(a.vector().apex.enumerate(1).items.len(), 2);
    let l = Elem::nest(vec![Elem::atom("1"), Elem::atom("1"), Elem::atom("1")]);
    assert_eq!(a.action.apply(&l).unwrap(), Elem::atom("1"));
    assert_eq!(talgebra_to_smc(&a).unwrap().normalized(), s.normalized());
}

#[test]
fn one_point_strict_monoidal_is_trivial() {
    let s = StrictMonCat {
        category: FiniteCategory::new("point", &["*"], &[], &[]),
        unit: "*".into(),
        tensor_obj: [(("*".into(), "*".into()), "*".into())].into_iter().collect(),
        tensor_mor: Default::default(),
    };
    let a = smc_to_talgebra(&s).unwrap();
    assert!(all_ok(&check_talgebra(&a, 3)));
    assert_eq!(a.vector().apex.enumerate(1).items, vec![Elem::atom("id_*")]);
}

#[test]
fn mutated_sigma_fails_with_witness() {
    let s = StrictMonCat::discrete_cyclic(2);
    let a = smc_to_talgebra(&s).unwrap();
    let apex = a.vector().apex.clone();
    let broken = MapF::native("constant", &SetExpr::fm(apex.clone()), &apex, |_| Ok(Elem::atom("id_0")));
    let b = TAlgebra::new(a.monoid.clone(), a.action.clone(), broken);
    let vs = check_talgebra(&b, 2);
    let fails: Vec<&Verdict> = vs.iter().filter(|v| !v.ok).collect();
    assert!(!fails.is_empty());
    assert!(fails.iter().all(|v| v.witness.is_some()));
    assert!(fails.iter().any(|v| v.name == "sigma: phi is a cell"));
}

#[test]
fn non_associative_tensor_fails() {
    let mut s = StrictMonCat::discrete_cyclic(3);
    s.tensor_obj.insert(("1".into(), "1".into()), "0".into());
    let a = smc_to_talgebra(&s).unwrap();
    let vs = check_talgebra(&a, 3);
    assert!(vs.iter().any(|v| v.name == "action associativity: h∘m = h∘Th" && !v.ok));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn free_algebras_on_random_categories_are_valid(seed in 0u64..10_000) {
        let c = random_category(&mut rng(seed), 3, 6);
        let m = free_talgebra(&unary(&c), 2).unwrap();
        let vs = check_talgebra(&m, 2);
        prop_assert!(all_ok(&vs), "{:?}", bad(&vs));
    }
}
