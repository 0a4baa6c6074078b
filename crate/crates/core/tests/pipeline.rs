//! End-to-end runs through the public API, across modules.

use proptest::prelude::*;

use tmon_core::algebras::{check_talgebra, free_talgebra, smc_to_talgebra, talgebra_to_smc, StrictMonCat};
use tmon_core::fixtures::{random_category, random_chain, random_kl_chain, rng};
use tmon_core::kleisli::kl_associator;
use tmon_core::laws::{run_suite, Mutation, Suite, SuiteConfig};
use tmon_core::listmonad::kappa;
use tmon_core::monoids::{
    cat_to_monoid, check_monoid, check_tmonoid, check_tmonoid_hom, monoid_to_cat, multicat_to_tmonoid, FiniteCategory,
    FiniteMulticat,
};
use tmon_core::spaneq::{compose_chain, compositions, Partition};
use tmon_core::staradj::{adjunction_unit, check_triangles, underlying_tmonoid};
use tmon_core::{Elem, Verdict};

fn failing(vs: &[Verdict]) -> Vec<String> {
    vs.iter().filter(|v| !v.ok).map(|v| format!("{}: {:?}", v.name, v.witness)).collect()
}

fn walk() -> FiniteCategory {
    FiniteCategory::new("walk", &["a", "b", "c"], &[("f", "a", "b"), ("g", "b", "c"), ("h", "a", "c")], &[("h", "g", "f")])
}

#[test]
fn a_category_survives_every_representation() {
    let c = walk();
    let m = cat_to_monoid(&c).unwrap();
    assert!(failing(&check_monoid(&m, 3)).is_empty());
    assert_eq!(monoid_to_cat(&m).unwrap().normalized(), c.clone().normalized());

    let t = multicat_to_tmonoid(&FiniteMulticat::from_table(&c.to_multicat_table()).unwrap()).unwrap();
    assert!(failing(&check_tmonoid(&t, 3)).is_empty());

    let free = free_talgebra(&t, 3).unwrap();
    assert!(failing(&check_talgebra(&free, 2)).is_empty());
    // [f, g] → [b, c] has exactly one morphism, the list of f and g
    let hom = free.vector().fiber(&Elem::parse("[b,c]").unwrap(), &Elem::parse("[a,b]").unwrap(), 4).items;
    assert_eq!(hom.len(), 1);

    let eta = adjunction_unit(&t, 3).unwrap();
    assert!(failing(&check_tmonoid_hom(&eta, 2)).is_empty());
}

#[test]
fn readme_example() {
    let c = FiniteCategory::new("arrow", &["a", "b"], &[("f", "a", "b")], &[]);
    let t = multicat_to_tmonoid(&FiniteMulticat::from_table(&c.to_multicat_table()).unwrap()).unwrap();
    assert!(check_tmonoid(&t, 3).iter().all(|v| v.ok));

    let m = free_talgebra(&t, 3).unwrap();
    let (u, v) = (Elem::parse("[a,a]").unwrap(), Elem::parse("[b,b]").unwrap());
    let homs = m.vector().fiber(&v, &u, 4).items;
    assert_eq!(homs.len(), 1);
}

#[test]
fn strict_monoidal_categories_read_back() {
    for n in 1..=3 {
        let s = StrictMonCat::discrete_cyclic(n);
        let a = smc_to_talgebra(&s).unwrap();
        assert!(failing(&check_talgebra(&a, 3)).is_empty(), "Z/{n}");
        assert_eq!(talgebra_to_smc(&a).unwrap().normalized(), s.normalized());
        let k = underlying_tmonoid(&a).unwrap();
        assert!(failing(&check_tmonoid(&k, 3)).is_empty());
    }
}

#[test]
fn triangles_hold_for_the_walk_and_a_cyclic_group() {
    let t = multicat_to_tmonoid(&FiniteMulticat::from_table(&walk().to_multicat_table()).unwrap()).unwrap();
    let a = smc_to_talgebra(&StrictMonCat::discrete_cyclic(2)).unwrap();
    let vs = check_triangles(&t, &a, 2).unwrap();
    assert!(!vs.is_empty());
    assert!(failing(&vs).is_empty(), "{:?}", failing(&vs));
}

#[test]
fn every_suite_passes_and_every_mutation_is_caught() {
    for s in Suite::ALL {
        let reports = run_suite(&SuiteConfig::new(s, 3, 2).with_samples(1)).unwrap();
        let bad: Vec<_> = reports.iter().filter(|r| !r.ok).map(|r| &r.law).collect();
        assert!(bad.is_empty(), "{}: {bad:?}", s.name());
    }
    for m in Mutation::ALL {
        let cfg = SuiteConfig::new(m.suite(), 3, 3).with_samples(1).with_mutation(m);
        let reports = run_suite(&cfg).unwrap();
        let caught: Vec<_> = reports.iter().filter(|r| !r.ok).collect();
        assert!(!caught.is_empty(), "{} went unnoticed", m.name());
        assert!(caught.iter().all(|r| r.witness.is_some() && m.hits(&r.law)), "{}", m.name());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn generated_categories_are_monoids(seed in any::<u64>()) {
        let c = random_category(&mut rng(seed), 4, 8);
        let m = cat_to_monoid(&c).unwrap();
        prop_assert!(failing(&check_monoid(&m, 3)).is_empty());
        prop_assert_eq!(monoid_to_cat(&m).unwrap().normalized(), c.normalized());
    }

    #[test]
    fn zip_is_invertible_on_short_chains(seed in any::<u64>(), len in 0usize..=2) {
        let (x0, chain) = random_chain(&mut rng(seed), len, 3, 4);
        let (ok, _, w) = kappa(&x0, &chain, 2).unwrap().round_trips(2).unwrap();
        prop_assert!(ok, "moved {:?}", w);
    }

    #[test]
    fn composite_legs_land_in_the_end_objects(seed in any::<u64>(), len in 1usize..=3) {
        let (x0, chain) = random_chain(&mut rng(seed), len, 3, 3);
        let c = compose_chain(&x0, &chain).unwrap();
        for e in c.apex.enumerate(1).items {
            prop_assert!(c.source.contains(&c.left.apply(&e).unwrap()));
            prop_assert!(c.target.contains(&c.right.apply(&e).unwrap()));
        }
    }

    #[test]
    fn kleisli_associators_invert(seed in any::<u64>(), len in 1usize..=3) {
        let (x0, chain) = random_kl_chain(&mut rng(seed), len, 2, 2, 2);
        for p in compositions(len, 2).into_iter().chain([Partition::new(vec![len])]) {
            let ka = kl_associator(&p, &x0, &chain, 2).unwrap();
            prop_assert!(ka.to_flat.is_some(), "{} on a chain of {}", p, len);
        }
    }
}
