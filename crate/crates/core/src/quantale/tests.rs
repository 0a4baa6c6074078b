use super::*;
use crate::fixtures::{atoms, elems, random_map, rng, table_map};
use proptest::prelude::*;
use rand::Rng;

fn two() -> Arc<Quantale> {
    Arc::new(Quantale::boolean())
}

fn l3() -> Arc<Quantale> {
    Arc::new(Quantale::lukasiewicz3())
}

fn rel(q: &Arc<Quantale>, s: &SetExpr, t: &SetExpr, pairs: &[(&str, &str)]) -> MatVector {
    MatVector::table(q, s, t, pairs.iter().map(|(a, b)| ((Elem::atom(a), Elem::atom(b)), q.unit()))).unwrap()
}

fn random_matrix<R: Rng>(r: &mut R, q: &Arc<Quantale>, s: &SetExpr, t: &SetExpr) -> MatVector {
    let mut es = Vec::new();
    for x in elems(s) {
        for y in elems(t) {
            es.push(((x.clone(), y), r.random_range(0..q.size())));
        }
    }
    MatVector::table(q, s, t, es).unwrap()
}

#[test]
fn builtin_quantales_validate() {
    let q = Quantale::lukasiewicz3();
    assert_eq!(q.tensor(1, 1), 0);
    assert_eq!(q.tensor(1, 2), 1);
    assert_eq!(q.join(0, 1), 1);
    assert_eq!((q.bottom(), q.top(), q.unit()), (0, 2, 2));
    assert_eq!(Quantale::boolean().tensor_all([]), 1);
}

#[test]
fn rejects_a_non_distributive_tensor() {
    // the 3-chain with the "min(a+b, 2)" tensor has 0 as unit but 0 is also bottom
    let leq = (0..3).map(|a| (0..3).map(|b| a <= b).collect()).collect();
    let tensor = (0..3).map(|a: usize| (0..3).map(|b: usize| (a + b).min(2)).collect()).collect();
    assert!(matches!(Quantale::new("bad", &["0", "1", "2"], leq, tensor, 0), Err(Error::Quantale(_))));
}

#[test]
fn rejects_a_non_lattice() {
    // two incomparable maximal elements over a bottom: no top
    let leq = vec![vec![true, true, true], vec![false, true, false], vec![false, false, true]];
    let tensor = vec![vec![0, 0, 0], vec![0, 1, 2], vec![0, 2, 2]];
    assert!(Quantale::new("v", &["0", "a", "b"], leq, tensor, 1).is_err());
}

#[test]
fn identity_is_a_unit_for_composition() {
    let q = l3();
    let (x, y) = (atoms("x", 2), atoms("y", 3));
    let a = random_matrix(&mut rng(1), &q, &x, &y);
    let c = mat_compose_n(&[mat_identity(&q, &x), a.clone(), mat_identity(&q, &y)]).unwrap();
    assert!(c.equal(&a, 1).unwrap().0);
}

#[test]
fn boolean_composition_is_relational_composition() {
    let q = two();
    let (x, z, y) = (atoms("x", 2), atoms("z", 2), atoms("y", 2));
    let r = rel(&q, &x, &z, &[("x0", "z1")]);
    let s = rel(&q, &z, &y, &[("z1", "y0")]);
    let c = mat_compose_n(&[r, s]).unwrap();
    assert_eq!(support(&c, 1), vec![(Elem::atom("x0"), Elem::atom("y0"))]);
}

#[test]
fn boolean_composition_matches_a_relational_oracle() {
    let q = two();
    let mut r = rng(2);
    let (x, z, y) = (atoms("x", 3), atoms("z", 4), atoms("y", 3));
    for _ in 0..20 {
        let a = random_matrix(&mut r, &q, &x, &z);
        let b = random_matrix(&mut r, &q, &z, &y);
        let c = mat_compose_n(&[a.clone(), b.clone()]).unwrap();
        for xe in elems(&x) {
            for ye in elems(&y) {
                let related = elems(&z).iter().any(|ze| a.entry(&xe, ze) == 1 && b.entry(ze, &ye) == 1);
                assert_eq!(c.entry(&xe, &ye) == 1, related);
            }
        }
    }
}

#[test]
fn lukasiewicz_composition_matches_brute_force() {
    let q = l3();
    let (x, z, y) = (atoms("x", 2), atoms("z", 2), atoms("y", 2));
    let mut r = rng(3);
    let a = random_matrix(&mut r, &q, &x, &z);
    let b = random_matrix(&mut r, &q, &z, &y);
    let c = mat_compose_n(&[a.clone(), b.clone()]).unwrap();
    for xe in elems(&x) {
        for ye in elems(&y) {
            // ½ is 1, so a ⊗ b = max(0, a + b − 2) in index arithmetic
            let best = elems(&z).iter().map(|ze| (a.entry(&xe, ze) + b.entry(ze, &ye)).saturating_sub(2)).max().unwrap();
            assert_eq!(c.entry(&xe, &ye), best);
        }
    }
}

#[test]
fn embedding_examples() {
    let q = two();
    let x = atoms("x", 2);
    assert!(embed_map(&q, &MapF::identity(&x)).equal(&mat_identity(&q, &x), 1).unwrap().0);
    let pt = atoms("p", 1);
    let c = table_map(&x, &pt, &[0, 0]);
    let e = embed_map(&q, &c);
    assert_eq!(support(&e, 1).len(), 2);
    let s = mat_star(&q, &c);
    assert_eq!(support(&s, 1), vec![("p0".into(), "x0".into()), ("p0".into(), "x1".into())]);
}

#[test]
fn embedding_is_functorial() {
    let q = l3();
    let mut r = rng(4);
    let (x, y, z) = (atoms("x", 3), atoms("y", 2), atoms("z", 3));
    let f = random_map(&mut r, &x, &y);
    let g = random_map(&mut r, &y, &z);
    let lhs = embed_map(&q, &f.then(&g));
    let rhs = mat_compose_n(&[embed_map(&q, &f), embed_map(&q, &g)]).unwrap();
    assert!(lhs.equal(&rhs, 1).unwrap().0);
    let s1 = mat_star(&q, &f.then(&g));
    let s2 = mat_compose_n(&[mat_star(&q, &g), mat_star(&q, &f)]).unwrap();
    assert!(s1.equal(&s2, 1).unwrap().0);
}

#[test]
fn list_extension_examples() {
    let q = two();
    let (x, y) = (atoms("x", 1), atoms("y", 1));
    let r = rel(&q, &x, &y, &[("x0", "y0")]);
    let t = barr_list_extension(&r);
    let u = Elem::parse("[x0,x0]").unwrap();
    assert_eq!(t.entry(&u, &Elem::parse("[y0,y0]").unwrap()), 1);
    assert_eq!(t.entry(&u, &Elem::parse("[y0]").unwrap()), 0);
    assert_eq!(t.entry(&Elem::empty_list(), &Elem::empty_list()), 1);

    let ti = barr_list_extension(&mat_identity(&q, &x)).with_bound(3);
    let id = mat_identity(&q, &SetExpr::fm(x.clone())).with_bound(3);
    let (eq, _, cov) = ti.equal(&id, 3).unwrap();
    assert!(eq);
    assert_eq!(cov, Coverage::UpTo(3));
}

#[test]
fn composites_through_lists_need_a_bound() {
    let q = two();
    let x = atoms("x", 1);
    let t = barr_list_extension(&mat_identity(&q, &x));
    assert!(matches!(mat_compose_n(&[t.clone(), t.clone()]), Err(Error::UnboundedComposite(_))));
    assert!(mat_compose_n(&[t.with_bound(2), t]).is_ok());
}

#[test]
fn list_extension_is_lax_and_strict_on_maps() {
    let mut r = rng(5);
    let (x, y, z) = (atoms("x", 2), atoms("y", 2), atoms("z", 2));
    for q in [two(), l3()] {
        let a = random_matrix(&mut r, &q, &x, &y);
        let b = random_matrix(&mut r, &q, &y, &z);
        let whole = barr_list_extension(&mat_compose_n(&[a.clone(), b.clone()]).unwrap()).with_bound(3);
        let parts = mat_compose_n(&[barr_list_extension(&a).with_bound(3), barr_list_extension(&b)]).unwrap();
        assert!(MatCell::new(&parts, &whole, 3).is_ok());
    }
    let q = two();
    let f = random_map(&mut r, &x, &y);
    let g = random_map(&mut r, &y, &z);
    let whole = barr_list_extension(&mat_compose_n(&[embed_map(&q, &f), embed_map(&q, &g)]).unwrap()).with_bound(3);
    let parts = mat_compose_n(&[barr_list_extension(&embed_map(&q, &f)).with_bound(3), barr_list_extension(&embed_map(&q, &g))]).unwrap();
    assert!(whole.equal(&parts, 3).unwrap().0);
}

#[test]
fn nu_squares_hold_entrywise() {
    let mut r = rng(6);
    let (x, y) = (atoms("x", 2), atoms("y", 2));
    for q in [two(), l3()] {
        let a = random_matrix(&mut r, &q, &x, &y).with_bound(3);
        let m = |s: &SetExpr| embed_map(&q, &MapF::concat(s)).with_bound(3);
        let e = |s: &SetExpr| embed_map(&q, &MapF::singleton(s)).with_bound(3);
        let top = mat_compose_n(&[barr_list_extension_n(2, &a), m(&y)]).unwrap();
        let bottom = mat_compose_n(&[m(&x), barr_list_extension(&a)]).unwrap();
        assert!(MatCell::new(&top, &bottom, 3).is_ok());
        let top = mat_compose_n(&[a.clone(), e(&y)]).unwrap();
        let bottom = mat_compose_n(&[e(&x), barr_list_extension(&a)]).unwrap();
        assert!(MatCell::new(&top, &bottom, 3).is_ok());
    }
}

#[test]
fn mat_cell_reports_a_witness() {
    let q = two();
    let x = atoms("x", 2);
    let full = rel(&q, &x, &x, &[("x0", "x1"), ("x1", "x0")]);
    let id = mat_identity(&q, &x);
    let err = MatCell::new(&id, &full, 1).unwrap_err();
    assert!(err.to_string().contains("x0"));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn composition_is_associative(seed in 0u64..10_000, lk in any::<bool>()) {
        let q = if lk { l3() } else { two() };
        let mut r = rng(seed);
        let sets: Vec<SetExpr> = (0..4).map(|i| atoms(&alloc::format!("s{i}_"), r.random_range(1..4))).collect();
        let ms: Vec<MatVector> = (0..3).map(|i| random_matrix(&mut r, &q, &sets[i], &sets[i + 1])).collect();
        let flat = mat_compose_n(&ms).unwrap();
        let left = mat_compose_n(&[mat_compose_n(&ms[..2]).unwrap(), ms[2].clone()]).unwrap();
        let right = mat_compose_n(&[ms[0].clone(), mat_compose_n(&ms[1..]).unwrap()]).unwrap();
        prop_assert!(flat.equal(&left, 1).unwrap().0);
        prop_assert!(flat.equal(&right, 1).unwrap().0);
    }

    #[test]
    fn transpose_is_an_involution(seed in 0u64..10_000) {
        let q = l3();
        let mut r = rng(seed);
        let (x, y) = (atoms("x", 3), atoms("y", 2));
        let a = random_matrix(&mut r, &q, &x, &y);
        prop_assert!(a.transpose().transpose().equal(&a, 1).unwrap().0);
    }
}
