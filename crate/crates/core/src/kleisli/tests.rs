use super::*;
use crate::fixtures::{atoms, random_kl_chain, random_kl_span, rng};
use crate::listmonad::{lift_span, unit};
use crate::quantale::{barr_list_extension, mat_compose_n, Quantale};
use crate::spaneq::{cell_equal, compositions, compose_n};
use alloc::collections::BTreeSet;
use alloc::string::ToString;
use alloc::vec;
use proptest::prelude::*;

/// A multicategory as a Kleisli span: colors `p, q`; operations with target color and source list.
fn small_multicat() -> Span {
    let x = SetExpr::atoms(&["p", "q"]);
    let ops = [("f", "p", "[p,q]"), ("g", "q", "[p]"), ("h", "p", "[]"), ("u", "q", "[q,q]"), ("v", "p", "[p]")];
    let apex = SetExpr::fin(ops.iter().map(|o| Elem::atom(o.0)));
    let l = MapF::table(&apex, &x, ops.iter().map(|o| (Elem::atom(o.0), Elem::atom(o.1))).collect()).unwrap();
    let r = MapF::table(&apex, &SetExpr::fm(x.clone()), ops.iter().map(|o| (Elem::atom(o.0), Elem::parse(o.2).unwrap())).collect())
        .unwrap();
    Span::new(l, r).unwrap()
}

#[test]
fn identity_examples() {
    let x = atoms("x", 2);
    let i = kl_identity(&x);
    assert!(kl_compose_n(&x, core::slice::from_ref(&i)).unwrap() == i);
    assert_eq!(i.right.apply(&"x1".into()).unwrap(), Elem::parse("[x1]").unwrap());
    assert!(kl_compose_n(&x, &[]).unwrap() == i);
}

#[test]
fn substitution_count_matches_a_multicategory_oracle() {
    let a = small_multicat();
    let x = a.source.clone();
    let k = kl_compose_n(&x, &[a.clone(), a.clone()]).unwrap();
    let got = k.apex.enumerate(usize::MAX);
    assert!(got.exact);

    // oracle: an outer operation and, for each color of its source list, an inner operation with that target
    let ops: Vec<Elem> = a.apex.enumerate(1).items;
    let mut expect = BTreeSet::new();
    for outer in &ops {
        let srcs = a.right.apply(outer).unwrap();
        let mut partial: Vec<Vec<Elem>> = vec![vec![]];
        for c in srcs.as_nest().unwrap() {
            let fits: Vec<&Elem> = ops.iter().filter(|o| a.left.apply(o).unwrap() == *c).collect();
            partial = partial.iter().flat_map(|p| fits.iter().map(move |o| [p.clone(), vec![(*o).clone()]].concat())).collect();
        }
        for p in partial {
            expect.insert(Elem::pair(outer.clone(), Elem::nest(p)));
        }
    }
    assert_eq!(got.items.into_iter().collect::<BTreeSet<_>>(), expect);
    // f(v, g) has sources [p] ++ [p]
    let fvg = Elem::parse("(f,[v,g])").unwrap();
    assert_eq!(k.right.apply(&fvg).unwrap(), Elem::parse("[p,p]").unwrap());
    assert_eq!(k.left.apply(&fvg).unwrap(), Elem::atom("p"));
}

#[test]
fn singleton_partition_is_the_identity() {
    let mut r = rng(1);
    let (x0, chain) = random_kl_chain(&mut r, 2, 2, 3, 2);
    let ka = kl_associator(&Partition::new(vec![2]), &x0, &chain, 4).unwrap();
    assert!(ka.flat == ka.nested);
    let cmp = cell_equal(&ka.to_nested, &SpanCell::identity(&ka.flat), 4).unwrap();
    assert!(cmp.equal);
}

#[test]
fn units_are_absorbed_invertibly() {
    let a = small_multicat();
    let x = a.source.clone();
    for p in [vec![0, 1], vec![1, 0]] {
        let ka = kl_associator(&Partition::new(p.clone()), &x, core::slice::from_ref(&a), 3).unwrap();
        let inv = ka.to_flat.clone().expect("the list monad is Cartesian");
        let round = ka.to_nested.vcomp(&inv).unwrap();
        assert!(cell_equal(&round, &SpanCell::identity(&ka.flat), 3).unwrap().equal, "{p:?}");
    }
}

#[test]
fn displayed_components_agree_with_the_schedule() {
    let a = small_multicat();
    let x = a.source.clone();
    let bound = 3;
    for p in [vec![0, 1], vec![1, 0]] {
        let part = Partition::new(p);
        let ka = kl_associator(&part, &x, core::slice::from_ref(&a), bound).unwrap();
        let shown = displayed_component(&part, &x, core::slice::from_ref(&a), bound).unwrap().unwrap();
        let cmp = cell_equal(&shown, &ka.to_nested, bound).unwrap();
        assert!(cmp.equal, "{part}: {:?}", cmp.witness);
    }
    let chain = vec![a.clone(), a.clone(), a.clone()];
    for p in [vec![2, 1], vec![1, 2]] {
        let part = Partition::new(p);
        let ka = kl_associator(&part, &x, &chain, bound).unwrap();
        let shown = displayed_component(&part, &x, &chain, bound).unwrap().unwrap();
        let cmp = cell_equal(&shown, &ka.to_nested, bound).unwrap();
        assert!(cmp.equal, "{part}: {:?}", cmp.witness);
        assert!(ka.to_flat.is_some());
    }
    assert!(displayed_component(&Partition::new(vec![1, 1]), &x, &chain[..2], bound).unwrap().is_none());
}

#[test]
fn displayed_components_on_random_chains() {
    for seed in 0..6 {
        let mut r = rng(100 + seed);
        let (x0, chain) = random_kl_chain(&mut r, 3, 2, 3, 2);
        for p in [vec![2, 1], vec![1, 2]] {
            let part = Partition::new(p);
            let ka = kl_associator(&part, &x0, &chain, 3).unwrap();
            let shown = displayed_component(&part, &x0, &chain, 3).unwrap().unwrap();
            assert!(cell_equal(&shown, &ka.to_nested, 3).unwrap().equal, "seed {seed}, {part}");
        }
    }
}

#[test]
fn coherence_on_the_multicategory_battery() {
    let a = small_multicat();
    let x = a.source.clone();
    for total in 0..=3 {
        let chain = vec![a.clone(); total];
        for outer in compositions(total, 3) {
            let inners: Vec<Vec<Partition>> = outer.blocks.iter().map(|&nj| compositions(nj, 2)).collect();
            for pick in product(&inners) {
                let (ra, rb) = kl_coherence_routes(&outer, &pick, &x, &chain, 3).unwrap();
                let cmp = cell_equal(&ra, &rb, 3).unwrap();
                assert!(cmp.equal, "{outer} refined by {pick:?}: {:?}", cmp.witness);
            }
        }
    }
}

fn product(choices: &[Vec<Partition>]) -> Vec<Vec<Partition>> {
    let mut out: Vec<Vec<Partition>> = vec![vec![]];
    for c in choices {
        out = out.iter().flat_map(|p| c.iter().map(move |q| [p.clone(), vec![q.clone()]].concat())).collect();
    }
    out
}

#[test]
fn unary_composition_is_span_composition_along_the_unit() {
    let x = atoms("x", 3);
    let mut r = rng(9);
    let a = crate::fixtures::random_span(&mut r, "a", &x, &x, 4);
    let b = crate::fixtures::random_span(&mut r, "b", &x, &x, 3);
    let (ea, eb) = (a.with_right(&unit(&x)), b.with_right(&unit(&x)));
    let k = kl_compose_n(&x, &[ea, eb]).unwrap();
    let ab = compose_n(&[a.clone(), b.clone()]).unwrap().with_right(&unit(&x));
    // (α, [β]) ↦ (α, β)
    let to = MapF::pairing(vec![MapF::proj(&k.apex, 0), MapF::proj(&k.apex, 1).then(&MapF::unsingleton(&b.apex))], &ab.apex);
    let c = SpanCell::new(&k, &ab, to, 3).unwrap();
    let back = MapF::pairing(vec![MapF::proj(&ab.apex, 0), MapF::proj(&ab.apex, 1).then(&unit(&b.apex))], &k.apex);
    let d = SpanCell::new(&ab, &k, back, 3).unwrap();
    assert!(cell_equal(&c.vcomp(&d).unwrap(), &SpanCell::identity(&k), 3).unwrap().equal);
    assert!(cell_equal(&d.vcomp(&c).unwrap(), &SpanCell::identity(&ab), 3).unwrap().equal);
    assert_eq!(k.apex.enumerate(3).items.len(), ab.apex.enumerate(3).items.len());
}

#[test]
fn kleisli_cells_compose_horizontally() {
    let a = small_multicat();
    let x = a.source.clone();
    let ka = kl_associator(&Partition::new(vec![0, 1]), &x, core::slice::from_ref(&a), 3).unwrap();
    let h = kl_hcomp(&x, &[ka.to_nested.clone(), SpanCell::identity(&a)]).unwrap();
    assert!(h.recheck(3).is_ok());
    assert!(kl_hcomp(&x, &[]).unwrap().from == kl_identity(&x));
}

#[test]
fn chain_mismatch_is_reported() {
    let a = small_multicat();
    let y = atoms("y", 1);
    let b = random_kl_span(&mut rng(2), "b", &y, &y, 1, 1);
    assert!(matches!(kl_compose_n(&a.source, &[a.clone(), b]), Err(Error::ChainMismatch { .. })));
    let lifted = lift_span(&a);
    assert!(kl_compose_n(&a.source, &[lifted]).is_err());
}

mod convolution {
    use super::*;
    use crate::kleisli::mat;
    use crate::quantale::{embed_map, MatVector};
    use rand::Rng;

    fn random_rel<R: Rng>(r: &mut R, q: &Arc<Quantale>, x: &SetExpr, y: &SetExpr, max_len: usize) -> MatVector {
        let mut es = BTreeMap::new();
        let lists = SetExpr::fm(y.clone()).enumerate(max_len).items;
        for a in x.enumerate(1).items {
            for l in &lists {
                if r.random_bool(0.3) {
                    es.insert((a.clone(), l.clone()), r.random_range(1..q.size()));
                }
            }
        }
        let es = Arc::new(es);
        let b = q.bottom();
        MatVector::pred(q, x, &SetExpr::fm(y.clone()), Some(3), move |a, l| es.get(&(a.clone(), l.clone())).copied().unwrap_or(b))
    }

    #[test]
    fn boolean_convolution_matches_a_relational_oracle() {
        let q = Arc::new(Quantale::boolean());
        let x = atoms("x", 2);
        let bound = 3;
        for seed in 0..8 {
            let mut r = rng(seed);
            let (a, b) = (random_rel(&mut r, &q, &x, &x, 2), random_rel(&mut r, &q, &x, &x, 2));
            let k = mat::kl_compose_n(&x, &[a.clone(), b.clone()], bound).unwrap();
            let mids = SetExpr::fm(x.clone()).enumerate(bound).items;
            for xe in x.enumerate(1).items {
                for l in SetExpr::fm(x.clone()).enumerate(bound).items {
                    // ∃ w with a(x, w) and a cut of ℓ into |w| pieces with b(w_i, ℓ_i)
                    let rel = mids.iter().any(|w| {
                        a.entry(&xe, w) == 1 && {
                            let ws = w.as_nest().unwrap();
                            cuts(l.as_nest().unwrap(), ws.len()).iter().any(|c| ws.iter().zip(c).all(|(wi, ci)| b.entry(wi, ci) == 1))
                        }
                    });
                    assert_eq!(k.entry(&xe, &l) == 1, rel, "seed {seed} at ({xe}, {l})");
                }
            }
        }
    }

    fn cuts(l: &[Elem], k: usize) -> Vec<Vec<Elem>> {
        if k == 0 {
            return if l.is_empty() { vec![vec![]] } else { vec![] };
        }
        (0..=l.len())
            .flat_map(|i| cuts(&l[i..], k - 1).into_iter().map(move |mut rest| {
                rest.insert(0, Elem::nest(l[..i].to_vec()));
                rest
            }))
            .collect()
    }

    #[test]
    fn convolution_matches_the_matrix_formula() {
        let q = Arc::new(Quantale::lukasiewicz3());
        let x = atoms("x", 2);
        let mut r = rng(11);
        let (a, b) = (random_rel(&mut r, &q, &x, &x, 2), random_rel(&mut r, &q, &x, &x, 2));
        let k = mat::kl_compose_n(&x, &[a.clone(), b.clone()], 3).unwrap();
        let m = embed_map(&q, &MapF::concat(&x)).with_bound(3);
        let oracle = mat_compose_n(&[a, barr_list_extension(&b), m]).unwrap();
        assert!(k.equal(&oracle, 3).unwrap().0);
    }

    #[test]
    fn identities_are_units() {
        let q = Arc::new(Quantale::lukasiewicz3());
        let x = atoms("x", 2);
        let a = random_rel(&mut rng(12), &q, &x, &x, 2);
        let i = mat::kl_identity(&q, &x);
        assert_eq!(i.entry(&"x0".into(), &Elem::parse("[x0]").unwrap()), q.unit());
        assert_eq!(i.entry(&"x0".into(), &Elem::parse("[x1]").unwrap()), q.bottom());
        let left = mat::kl_compose_n(&x, &[i.clone(), a.clone()], 3).unwrap();
        let right = mat::kl_compose_n(&x, &[a.clone(), i], 3).unwrap();
        assert!(left.equal(&a, 3).unwrap().0);
        assert!(right.equal(&a, 3).unwrap().0);
    }

    #[test]
    fn flat_is_below_nested() {
        let q = Arc::new(Quantale::boolean());
        let x = atoms("x", 2);
        let mut r = rng(13);
        let chain: Vec<MatVector> = (0..3).map(|_| random_rel(&mut r, &q, &x, &x, 2)).collect();
        for p in [vec![1, 2], vec![2, 1], vec![1, 1, 1], vec![0, 3]] {
            let c = mat::kl_associator(&Partition::new(p), &x, &chain, 2).unwrap();
            assert_eq!(c.checked, Coverage::UpTo(2));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn associators_are_invertible_for_lists(seed in 0u64..1000, which in 0usize..6) {
        let parts = [vec![2, 1], vec![1, 2], vec![1, 1, 1], vec![0, 3], vec![3, 0], vec![1, 0, 2]];
        let mut r = rng(seed);
        let (x0, chain) = random_kl_chain(&mut r, 3, 2, 2, 2);
        let ka = kl_associator(&Partition::new(parts[which].clone()), &x0, &chain, 3).unwrap();
        let inv = ka.to_flat.clone();
        prop_assert!(inv.is_some());
        let round = ka.to_nested.vcomp(&inv.unwrap()).unwrap();
        prop_assert!(cell_equal(&round, &SpanCell::identity(&ka.flat), 3).unwrap().equal);
    }

    #[test]
    fn coherence_on_random_chains(seed in 0u64..1000, total in 0usize..4) {
        let mut r = rng(seed);
        let (x0, chain) = random_kl_chain(&mut r, total, 2, 2, 2);
        let outers = compositions(total, 3);
        let outer = &outers[(seed as usize) % outers.len()];
        let inner: Vec<Partition> = outer.blocks.iter().map(|&nj| {
            let cs = compositions(nj, 2);
            cs[(seed as usize / 7) % cs.len()].clone()
        }).collect();
        let (ra, rb) = kl_coherence_routes(outer, &inner, &x0, &chain, 3).unwrap();
        let cmp = cell_equal(&ra, &rb, 3).unwrap();
        prop_assert!(cmp.equal, "{} / {:?}: {:?}", outer, inner, cmp.witness);
    }
}

#[test]
fn associator_labels_render() {
    assert_eq!(Partition::new(vec![1, 2]).to_string(), "1+2");
}
