//! Deterministic generators of small instances, shared by tests, law batteries and the CLI.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::sync::Arc;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::finset::{Elem, MapF, SetExpr};
use crate::monoids::{identity_name, FiniteCategory, MorDecl};
use crate::quantale::{MatVector, Quantale};
use crate::spaneq::Span;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `{prefix0, …, prefix(n-1)}`.
pub fn atoms(prefix: &str, n: usize) -> SetExpr {
    SetExpr::fin((0..n).map(|i| Elem::atom(&format!("{prefix}{i}"))))
}

pub fn elems(s: &SetExpr) -> Vec<Elem> {
    s.as_fin().map(|s| s.iter().cloned().collect()).unwrap_or_default()
}

/// A table map sending the i-th element of `dom` to the `images[i]`-th element of `cod`.
pub fn table_map(dom: &SetExpr, cod: &SetExpr, images: &[usize]) -> MapF {
    let cs = elems(cod);
    let g: BTreeMap<Elem, Elem> = elems(dom).into_iter().zip(images.iter().map(|i| cs[*i].clone())).collect();
    MapF::table(dom, cod, g).expect("generated table is total")
}

pub fn random_map<R: Rng>(rng: &mut R, dom: &SetExpr, cod: &SetExpr) -> MapF {
    let n = elems(cod).len();
    let images: Vec<usize> = (0..elems(dom).len()).map(|_| rng.random_range(0..n)).collect();
    table_map(dom, cod, &images)
}

/// A span between finite sets with a finite apex of `apex_size` elements named `{name}{i}`.
pub fn random_span<R: Rng>(rng: &mut R, name: &str, source: &SetExpr, target: &SetExpr, apex_size: usize) -> Span {
    let apex = atoms(name, apex_size);
    let l = random_map(rng, &apex, source);
    let r = random_map(rng, &apex, target);
    Span::new(l, r).expect("legs share the apex")
}

/// A composable chain of random finite spans over objects of at most `max_obj` elements.
pub fn random_chain<R: Rng>(rng: &mut R, len: usize, max_obj: usize, max_apex: usize) -> (SetExpr, Vec<Span>) {
    let objs: Vec<SetExpr> =
        (0..=len).map(|i| atoms(&format!("o{i}_"), rng.random_range(1..=max_obj))).collect();
    let chain = (0..len)
        .map(|i| {
            let k = rng.random_range(0..=max_apex);
            random_span(rng, &format!("s{i}_"), &objs[i], &objs[i + 1], k)
        })
        .collect();
    (objs[0].clone(), chain)
}

/// A random list of length at most `max_len` over the finite set `s`.
pub fn random_list<R: Rng>(rng: &mut R, s: &SetExpr, max_len: usize) -> Elem {
    let es = elems(s);
    let len = if es.is_empty() { 0 } else { rng.random_range(0..=max_len) };
    Elem::nest((0..len).map(|_| es[rng.random_range(0..es.len())].clone()).collect())
}

/// A Kleisli span `source ⇸ T target` with a finite apex and right-leg lists of length at most `max_arity`.
pub fn random_kl_span<R: Rng>(
    rng: &mut R,
    name: &str,
    source: &SetExpr,
    target: &SetExpr,
    apex_size: usize,
    max_arity: usize,
) -> Span {
    let apex = atoms(name, apex_size);
    let l = random_map(rng, &apex, source);
    let tt = SetExpr::fm(target.clone());
    let g: BTreeMap<Elem, Elem> = elems(&apex).into_iter().map(|e| (e, random_list(rng, target, max_arity))).collect();
    let r = MapF::table(&apex, &tt, g).expect("random lists lie in the list set");
    Span::new(l, r).expect("legs share the apex")
}

/// A composable chain of random Kleisli spans.
pub fn random_kl_chain<R: Rng>(
    rng: &mut R,
    len: usize,
    max_obj: usize,
    max_apex: usize,
    max_arity: usize,
) -> (SetExpr, Vec<Span>) {
    let objs: Vec<SetExpr> =
        (0..=len).map(|i| atoms(&format!("o{i}_"), rng.random_range(1..=max_obj))).collect();
    let chain = (0..len)
        .map(|i| {
            let k = rng.random_range(0..=max_apex);
            random_kl_span(rng, &format!("k{i}_"), &objs[i], &objs[i + 1], k, max_arity)
        })
        .collect();
    (objs[0].clone(), chain)
}

/// A random finite category on at most `max_obj` objects with at most `max_mor` non-identity
/// morphisms. Objects are ordered; `hom(i, j)` for `i < j` is a chain of levels composing by
/// maximum, and one object may carry an idempotent that acts trivially.
pub fn random_category<R: Rng>(rng: &mut R, max_obj: usize, max_mor: usize) -> FiniteCategory {
    let n = rng.random_range(1..=max_obj.max(1));
    loop {
        let mut rel = vec![vec![false; n]; n];
        for (i, row) in rel.iter_mut().enumerate() {
            for cell in row.iter_mut().skip(i + 1) {
                *cell = rng.random_bool(0.5);
            }
        }
        for p in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if rel[i][p] && rel[p][j] {
                        rel[i][j] = true;
                    }
                }
            }
        }
        let mut levels = vec![vec![0usize; n]; n];
        for d in 1..n {
            for i in 0..n - d {
                let j = i + d;
                if rel[i][j] {
                    let need = (i + 1..j).filter(|&p| rel[i][p] && rel[p][j]).map(|p| levels[i][p].max(levels[p][j])).max();
                    levels[i][j] = need.unwrap_or(0).max(rng.random_range(1..=2));
                }
            }
        }
        let idem = rng.random_bool(0.5).then(|| rng.random_range(0..n));
        let count: usize = levels.iter().flatten().sum::<usize>() + usize::from(idem.is_some());
        if count > max_mor {
            continue;
        }
        return category_from_levels(n, &levels, idem);
    }
}

#[allow(clippy::needless_range_loop)]
fn category_from_levels(n: usize, levels: &[Vec<usize>], idem: Option<usize>) -> FiniteCategory {
    let obj = |i: usize| format!("o{i}");
    let mor = |i: usize, j: usize, s: usize| format!("f{i}{j}_{s}");
    let mut morphisms = Vec::new();
    let mut comp = BTreeMap::new();
    for i in 0..n {
        for j in 0..n {
            for s in 0..levels[i][j] {
                morphisms.push(MorDecl { name: mor(i, j, s), dom: obj(i), cod: obj(j) });
            }
        }
    }
    for i in 0..n {
        for p in 0..n {
            for j in 0..n {
                for s in 0..levels[i][p] {
                    for t in 0..levels[p][j] {
                        comp.insert((mor(p, j, t), mor(i, p, s)), mor(i, j, s.max(t)));
                    }
                }
            }
        }
    }
    if let Some(k) = idem {
        let e = format!("e{k}");
        morphisms.push(MorDecl { name: e.clone(), dom: obj(k), cod: obj(k) });
        comp.insert((e.clone(), e.clone()), e.clone());
        for d in &morphisms {
            if d.name == e {
                continue;
            }
            if d.dom == obj(k) {
                comp.insert((d.name.clone(), e.clone()), d.name.clone());
            }
            if d.cod == obj(k) {
                comp.insert((e.clone(), d.name.clone()), d.name.clone());
            }
        }
    }
    let objects: Vec<String> = (0..n).map(obj).collect();
    let identities = objects.iter().map(|o| (o.clone(), identity_name(o))).collect();
    FiniteCategory { name: "random".into(), objects, morphisms, identities, comp }
}

/// `ℤ/n` as a one-object category: morphisms `r1, …, r(n-1)` and the identity, composing by addition.
pub fn cyclic_category(n: usize) -> FiniteCategory {
    let name = |k: usize| if k == 0 { identity_name("*") } else { format!("r{k}") };
    let mut c = FiniteCategory::new(&format!("Z/{n} as a category"), &["*"], &[], &[]);
    c.morphisms = (1..n).map(|k| MorDecl { name: name(k), dom: "*".into(), cod: "*".into() }).collect();
    for i in 1..n {
        for j in 1..n {
            c.comp.insert((name(i), name(j)), name((i + j) % n));
        }
    }
    c
}

/// A random matrix `x ⇸ Ty` with nonzero entries on about a third of the lists of length at most
/// `max_len`; lists beyond that are bottom.
pub fn random_relation<R: Rng>(rng: &mut R, q: &Arc<Quantale>, x: &SetExpr, y: &SetExpr, max_len: usize) -> MatVector {
    let mut es = BTreeMap::new();
    let lists = SetExpr::fm(y.clone()).enumerate(max_len).items;
    for a in elems(x) {
        for l in &lists {
            if rng.random_bool(0.3) {
                es.insert((a.clone(), l.clone()), rng.random_range(1..q.size()));
            }
        }
    }
    let es = Arc::new(es);
    let b = q.bottom();
    MatVector::pred(q, x, &SetExpr::fm(y.clone()), Some(max_len + 1), move |a, l| es.get(&(a.clone(), l.clone())).copied().unwrap_or(b))
}
