use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::elem::canonical_sort;
use super::map::{MapF, Rule, Struct};
use super::Elem;

pub type LegBody = dyn Fn(&Elem) -> Option<Elem> + Send + Sync;
pub type FiberBody = dyn Fn(&Elem, &Elem) -> Vec<Elem> + Send + Sync;

/// A possibly infinite set whose fibers over pairs of index elements are finite.
///
/// Tokens are produced by `fiber(s, t)`; `left`/`right` recover the index pair of a token.
pub struct FiberFiniteSet {
    pub name: Arc<str>,
    pub index_left: SetExpr,
    pub index_right: SetExpr,
    left: Arc<LegBody>,
    right: Arc<LegBody>,
    fiber: Arc<FiberBody>,
}

impl FiberFiniteSet {
    pub fn new(
        name: &str,
        index_left: SetExpr,
        index_right: SetExpr,
        left: impl Fn(&Elem) -> Option<Elem> + Send + Sync + 'static,
        right: impl Fn(&Elem) -> Option<Elem> + Send + Sync + 'static,
        fiber: impl Fn(&Elem, &Elem) -> Vec<Elem> + Send + Sync + 'static,
    ) -> Arc<Self> {
        Arc::new(FiberFiniteSet {
            name: Arc::from(name),
            index_left,
            index_right,
            left: Arc::new(left),
            right: Arc::new(right),
            fiber: Arc::new(fiber),
        })
    }

    /// The tokens over `(s, t)` in canonical order.
    pub fn fiber(&self, s: &Elem, t: &Elem) -> Vec<Elem> {
        if !self.index_left.contains(s) || !self.index_right.contains(t) {
            return Vec::new();
        }
        let mut v = (self.fiber)(s, t);
        canonical_sort(&mut v);
        v.dedup();
        v
    }

    pub fn left_of(&self, e: &Elem) -> Option<Elem> {
        (self.left)(e)
    }

    pub fn right_of(&self, e: &Elem) -> Option<Elem> {
        (self.right)(e)
    }

    pub fn contains(&self, e: &Elem) -> bool {
        match (self.left_of(e), self.right_of(e)) {
            (Some(s), Some(t)) => self.fiber(&s, &t).contains(e),
            _ => false,
        }
    }

    fn left_name(&self) -> String {
        alloc::format!("{}.left", self.name)
    }

    fn right_name(&self) -> String {
        alloc::format!("{}.right", self.name)
    }
}

/// Wide pullback `factors[0] ×_{C_0} factors[1] ×_{C_1} …`.
///
/// `links[i] = Some((f, g))` requires `f(x_i) = g(x_{i+1})`; `None` leaves the pair unconstrained.
#[derive(Clone, PartialEq)]
pub struct WidePullback {
    pub factors: Vec<SetExpr>,
    pub links: Vec<Option<(MapF, MapF)>>,
}

#[derive(Clone)]
pub enum SetExpr {
    Fin(Arc<BTreeSet<Elem>>),
    FM(Arc<SetExpr>),
    Pullback(Arc<WidePullback>),
    Fibered(Arc<FiberFiniteSet>),
}

impl PartialEq for SetExpr {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (SetExpr::Fin(a), SetExpr::Fin(b)) => Arc::ptr_eq(a, b) || a == b,
            (SetExpr::FM(a), SetExpr::FM(b)) => Arc::ptr_eq(a, b) || a == b,
            (SetExpr::Pullback(a), SetExpr::Pullback(b)) => Arc::ptr_eq(a, b) || a == b,
            (SetExpr::Fibered(a), SetExpr::Fibered(b)) => Arc::ptr_eq(a, b) || a.name == b.name,
            _ => false,
        }
    }
}

/// Result of a bounded enumeration. `exact` means nothing was left out.
#[derive(Clone, Debug, PartialEq)]
pub struct Enumerated {
    pub items: Vec<Elem>,
    pub exact: bool,
}

type Weighted = Vec<(Elem, usize)>;

impl SetExpr {
    pub fn fin(items: impl IntoIterator<Item = Elem>) -> SetExpr {
        SetExpr::Fin(Arc::new(items.into_iter().collect()))
    }

    pub fn atoms(names: &[&str]) -> SetExpr {
        SetExpr::fin(names.iter().map(|n| Elem::atom(n)))
    }

    pub fn empty() -> SetExpr {
        SetExpr::fin(core::iter::empty())
    }

    pub fn fm(base: SetExpr) -> SetExpr {
        SetExpr::FM(Arc::new(base))
    }

    pub fn fm_n(n: usize, base: SetExpr) -> SetExpr {
        let mut s = base;
        for _ in 0..n {
            s = SetExpr::fm(s);
        }
        s
    }

    pub fn pullback(factors: Vec<SetExpr>, links: Vec<(MapF, MapF)>) -> SetExpr {
        assert_eq!(factors.len(), links.len() + 1, "a wide pullback needs one link between neighbouring factors");
        SetExpr::Pullback(Arc::new(WidePullback { factors, links: links.into_iter().map(Some).collect() }))
    }

    pub fn product(factors: Vec<SetExpr>) -> SetExpr {
        let links = vec![None; factors.len().saturating_sub(1)];
        SetExpr::Pullback(Arc::new(WidePullback { factors, links }))
    }

    pub fn fibered(f: Arc<FiberFiniteSet>) -> SetExpr {
        SetExpr::Fibered(f)
    }

    pub fn as_fin(&self) -> Option<&BTreeSet<Elem>> {
        match self {
            SetExpr::Fin(s) => Some(s),
            _ => None,
        }
    }

    pub fn as_pullback(&self) -> Option<&WidePullback> {
        match self {
            SetExpr::Pullback(p) => Some(p),
            _ => None,
        }
    }

    pub fn as_fibered(&self) -> Option<&Arc<FiberFiniteSet>> {
        match self {
            SetExpr::Fibered(f) => Some(f),
            _ => None,
        }
    }

    /// The base of a free-monoid set.
    pub fn fm_base(&self) -> Option<&SetExpr> {
        match self {
            SetExpr::FM(b) => Some(b),
            _ => None,
        }
    }

    /// The left and right legs of a fibered set as maps into its index sets.
    pub fn fibered_legs(&self) -> Option<(MapF, MapF)> {
        let f = self.as_fibered()?.clone();
        let (fl, fr) = (f.clone(), f.clone());
        let l = MapF::native(&f.left_name(), self, &f.index_left, move |e| {
            fl.left_of(e).ok_or_else(|| crate::Error::Domain { elem: alloc::format!("{e}"), set: alloc::format!("{}", fl.name) })
        });
        let r = MapF::native(&f.right_name(), self, &f.index_right, move |e| {
            fr.right_of(e).ok_or_else(|| crate::Error::Domain { elem: alloc::format!("{e}"), set: alloc::format!("{}", fr.name) })
        });
        Some((l, r))
    }

    pub fn contains(&self, e: &Elem) -> bool {
        match self {
            SetExpr::Fin(s) => s.contains(e),
            SetExpr::FM(b) => match e {
                Elem::Nest(v) => v.iter().all(|x| b.contains(x)),
                _ => false,
            },
            SetExpr::Pullback(p) => match e {
                Elem::Tuple(v) if v.len() == p.factors.len() => {
                    p.factors.iter().zip(v).all(|(f, x)| f.contains(x))
                        && p.links.iter().enumerate().all(|(i, l)| match l {
                            None => true,
                            Some((f, g)) => match (f.apply(&v[i]), g.apply(&v[i + 1])) {
                                (Ok(a), Ok(b)) => a == b,
                                _ => false,
                            },
                        })
                }
                _ => false,
            },
            SetExpr::Fibered(f) => f.contains(e),
        }
    }

    /// The weight used by bounded enumeration: atoms and tokens weigh 1, a list weighs the larger of
    /// its length and the sum of its items, a tuple the largest of its components.
    pub fn weight(&self, e: &Elem) -> usize {
        match (self, e) {
            (SetExpr::FM(b), Elem::Nest(v)) => v.len().max(v.iter().map(|x| b.weight(x)).sum()),
            (SetExpr::Pullback(p), Elem::Tuple(v)) => {
                p.factors.iter().zip(v).map(|(f, x)| f.weight(x)).max().unwrap_or(0)
            }
            _ => 1,
        }
    }

    /// Whether bounded enumeration can be expected to be complete.
    pub fn exactly_enumerable(&self) -> bool {
        match self {
            SetExpr::Fin(_) => true,
            SetExpr::FM(b) => matches!(&**b, SetExpr::Fin(s) if s.is_empty()),
            SetExpr::Pullback(p) => p.factors.iter().any(|f| f.exactly_enumerable()),
            SetExpr::Fibered(f) => f.index_left.exactly_enumerable() && f.index_right.exactly_enumerable(),
        }
    }

    /// All elements of weight at most `bound`, in canonical order.
    pub fn enumerate(&self, bound: usize) -> Enumerated {
        let (w, exact) = self.enum_w(bound);
        finish(w, exact)
    }

    /// The elements `e` of this set (of weight at most `bound`) with `map(e) = value`.
    pub fn preimage(&self, map: &MapF, value: &Elem, bound: usize) -> Enumerated {
        let (w, exact) = self.pre_w(map, value, bound);
        finish(w, exact)
    }

    pub(crate) fn enum_w(&self, bound: usize) -> (Weighted, bool) {
        match self {
            SetExpr::Fin(s) => {
                if bound == 0 {
                    (Vec::new(), s.is_empty())
                } else {
                    (s.iter().map(|e| (e.clone(), 1)).collect(), true)
                }
            }
            SetExpr::FM(b) => {
                let (items, base_exact) = b.enum_w(bound);
                let mut out = Vec::new();
                let mut cur = Vec::new();
                gen_lists(&items, bound, &mut cur, 0, &mut out);
                (out, base_exact && items.is_empty())
            }
            SetExpr::Pullback(p) => {
                let start = p.factors.iter().position(|f| f.exactly_enumerable()).unwrap_or(0);
                let (seeds, mut exact) = p.factors[start].enum_w(bound);
                let mut out = Vec::new();
                for (e, w) in seeds {
                    let (v, ex) = extend_tuple(p, start, e, w, bound);
                    exact &= ex;
                    out.extend(v);
                }
                (out, exact)
            }
            SetExpr::Fibered(f) => {
                let (ls, le) = f.index_left.enum_w(bound);
                let (rs, re) = f.index_right.enum_w(bound);
                let mut out = Vec::new();
                if bound == 0 {
                    return (out, false);
                }
                for (l, _) in &ls {
                    for (r, _) in &rs {
                        out.extend((f.fiber)(l, r).into_iter().map(|t| (t, 1)));
                    }
                }
                (out, le && re)
            }
        }
    }

    pub(crate) fn pre_w(&self, map: &MapF, value: &Elem, bound: usize) -> (Weighted, bool) {
        if let SetExpr::Fin(_) = self {
            return self.filter_w(map, value, bound);
        }
        let s = match &map.rule {
            Rule::Struct(s) => s,
            Rule::Table(_) => return self.filter_w(map, value, bound),
        };
        match (s, self) {
            (Struct::Identity, _) | (Struct::Flatten(1), _) => self.single(value, bound),
            (Struct::Singleton, _) | (Struct::Flatten(0), _) => match value.as_nest() {
                Some([x]) => self.single(x, bound),
                _ => (Vec::new(), true),
            },
            (Struct::Unsingleton, SetExpr::FM(_)) => self.single(&Elem::Nest(vec![value.clone()]), bound),
            (Struct::ConstTo(c), _) => {
                if c == value {
                    self.enum_w(bound)
                } else {
                    (Vec::new(), true)
                }
            }
            (Struct::MapOf(f), SetExpr::FM(base)) => {
                let Some(vs) = value.as_nest() else { return (Vec::new(), true) };
                if vs.len() > bound {
                    return (Vec::new(), false);
                }
                let mut cands = Vec::with_capacity(vs.len());
                let mut exact = true;
                for v in vs {
                    let (c, ex) = base.pre_w(f, v, bound);
                    exact &= ex;
                    if c.is_empty() {
                        return (Vec::new(), exact);
                    }
                    cands.push(c);
                }
                let (out, pruned) = list_product(&cands, bound);
                (out, exact && !pruned)
            }
            (Struct::Concat, SetExpr::FM(inner)) | (Struct::Flatten(2), SetExpr::FM(inner)) => {
                let Some(vs) = value.as_nest() else { return (Vec::new(), true) };
                let Some(base) = inner.fm_base() else { return self.filter_w(map, value, bound) };
                if !vs.iter().all(|v| base.contains(v)) {
                    return (Vec::new(), true);
                }
                let mut out = Vec::new();
                for parts in splits(vs.len(), bound) {
                    let mut start = 0;
                    let mut lists = Vec::with_capacity(parts.len());
                    for len in parts {
                        lists.push(Elem::Nest(vs[start..start + len].to_vec()));
                        start += len;
                    }
                    let e = Elem::Nest(lists);
                    let w = self.weight(&e);
                    if w <= bound {
                        out.push((e, w));
                    }
                }
                (out, false)
            }
            (Struct::ComposeSeq(fs), _) => {
                let (last, init) = fs.split_last().expect("non-empty composition");
                let mids = last.domain.pre_w(last, value, bound);
                let rest = MapF::compose(init.to_vec());
                let mut exact = mids.1;
                let mut out = Vec::new();
                for (m, _) in mids.0 {
                    let (v, ex) = self.pre_w(&rest, &m, bound);
                    exact &= ex;
                    out.extend(v);
                }
                (out, exact)
            }
            (Struct::Proj(i), SetExpr::Pullback(p)) => {
                if !p.factors[*i].contains(value) {
                    return (Vec::new(), true);
                }
                let w = p.factors[*i].weight(value);
                if w > bound {
                    return (Vec::new(), false);
                }
                extend_tuple(p, *i, value.clone(), w, bound)
            }
            (Struct::Pairing(fs), _) => self.pre_pairing(fs, value, bound),
            (Struct::Native(n), SetExpr::Fibered(f)) => {
                if *n.name == *f.left_name() {
                    let (rs, ex) = f.index_right.enum_w(bound);
                    let out = rs.iter().flat_map(|(r, _)| f.fiber(value, r)).map(|t| (t, 1)).collect();
                    (out, ex && bound > 0)
                } else if *n.name == *f.right_name() {
                    let (ls, ex) = f.index_left.enum_w(bound);
                    let out = ls.iter().flat_map(|(l, _)| f.fiber(l, value)).map(|t| (t, 1)).collect();
                    (out, ex && bound > 0)
                } else {
                    self.filter_w(map, value, bound)
                }
            }
            _ => self.filter_w(map, value, bound),
        }
    }

    fn single(&self, value: &Elem, bound: usize) -> (Weighted, bool) {
        if !self.contains(value) {
            return (Vec::new(), true);
        }
        let w = self.weight(value);
        if w <= bound {
            (vec![(value.clone(), w)], true)
        } else {
            (Vec::new(), false)
        }
    }

    fn filter_w(&self, map: &MapF, value: &Elem, bound: usize) -> (Weighted, bool) {
        let (all, exact) = self.enum_w(bound);
        (all.into_iter().filter(|(e, _)| map.apply(e).as_ref() == Ok(value)).collect(), exact)
    }

    fn pre_pairing(&self, fs: &[MapF], value: &Elem, bound: usize) -> (Weighted, bool) {
        let Some(vs) = value.as_tuple().filter(|v| v.len() == fs.len()) else {
            return (Vec::new(), true);
        };
        if let SetExpr::Fibered(f) = self {
            if fs.len() == 2 {
                let names: Vec<Option<&str>> = fs
                    .iter()
                    .map(|m| match &m.rule {
                        Rule::Struct(Struct::Native(n)) => Some(&*n.name),
                        _ => None,
                    })
                    .collect();
                if names[0] == Some(&f.left_name()) && names[1] == Some(&f.right_name()) {
                    if bound == 0 {
                        return (Vec::new(), f.fiber(&vs[0], &vs[1]).is_empty());
                    }
                    return (f.fiber(&vs[0], &vs[1]).into_iter().map(|t| (t, 1)).collect(), true);
                }
            }
        }
        if let Some(r) = self.pre_list_of_cells(fs, vs, bound) {
            return r;
        }
        let keep = |cands: Weighted| -> Weighted {
            cands
                .into_iter()
                .filter(|(e, _)| fs.iter().zip(vs).all(|(m, v)| m.apply(e).as_ref() == Ok(v)))
                .collect()
        };
        let mut first = None;
        for (m, v) in fs.iter().zip(vs) {
            let (c, ex) = self.pre_w(m, v, bound);
            if ex {
                return (keep(c), true);
            }
            if first.is_none() {
                first = Some(c);
            }
        }
        (keep(first.unwrap_or_default()), false)
    }

    /// Fibers of `<T l, m ∘ T r>` on `FM(base)`: split the second value into one segment per entry of the first.
    fn pre_list_of_cells(&self, fs: &[MapF], vs: &[Elem], bound: usize) -> Option<(Weighted, bool)> {
        let SetExpr::FM(base) = self else { return None };
        if fs.len() != 2 {
            return None;
        }
        let l = match fs[0].as_struct()? {
            Struct::MapOf(l) => l,
            _ => return None,
        };
        let r = match fs[1].as_struct()? {
            Struct::ComposeSeq(gs) if gs.len() == 2 && matches!(gs[1].as_struct(), Some(Struct::Concat)) => {
                match gs[0].as_struct()? {
                    Struct::MapOf(r) => r,
                    _ => return None,
                }
            }
            _ => return None,
        };
        let targets = vs[0].as_nest()?;
        let flat = vs[1].as_nest()?;
        if targets.len() > bound {
            return Some((Vec::new(), false));
        }
        let pair_set = SetExpr::product(vec![l.codomain.clone(), r.codomain.clone()]);
        let cell = MapF::pairing(vec![(**l).clone(), (**r).clone()], &pair_set);
        let mut out = Vec::new();
        let mut exact = true;
        for parts in splits_exact(flat.len(), targets.len()) {
            let mut start = 0;
            let mut cands = Vec::with_capacity(parts.len());
            let mut dead = false;
            for (t, len) in targets.iter().zip(parts) {
                let seg = Elem::Nest(flat[start..start + len].to_vec());
                start += len;
                let (c, ex) = base.pre_w(&cell, &Elem::pair(t.clone(), seg), bound);
                exact &= ex;
                if c.is_empty() {
                    dead = true;
                    break;
                }
                cands.push(c);
            }
            if dead {
                continue;
            }
            let (v, pruned) = list_product(&cands, bound);
            exact &= !pruned;
            out.extend(v);
        }
        Some((out, exact))
    }
}

fn finish(mut w: Weighted, exact: bool) -> Enumerated {
    let mut items: Vec<Elem> = w.drain(..).map(|(e, _)| e).collect();
    canonical_sort(&mut items);
    items.dedup();
    Enumerated { items, exact }
}

fn gen_lists(items: &[(Elem, usize)], bound: usize, cur: &mut Vec<Elem>, weight: usize, out: &mut Weighted) {
    out.push((Elem::Nest(cur.clone()), weight.max(cur.len())));
    if cur.len() >= bound {
        return;
    }
    for (e, w) in items {
        if weight + w <= bound {
            cur.push(e.clone());
            gen_lists(items, bound, cur, weight + w, out);
            cur.pop();
        }
    }
}

/// All lists picking one candidate per position, keeping those of weight at most `bound`.
/// Returns whether any combination was dropped.
fn list_product(cands: &[Weighted], bound: usize) -> (Weighted, bool) {
    let mut acc: Vec<(Vec<Elem>, usize)> = vec![(Vec::new(), 0)];
    let mut pruned = false;
    for c in cands {
        let mut next = Vec::with_capacity(acc.len() * c.len());
        for (prefix, w) in &acc {
            for (e, we) in c {
                if w + we <= bound {
                    let mut p = prefix.clone();
                    p.push(e.clone());
                    next.push((p, w + we));
                } else {
                    pruned = true;
                }
            }
        }
        acc = next;
    }
    let n = cands.len();
    (acc.into_iter().map(|(v, w)| (Elem::Nest(v), w.max(n))).collect(), pruned)
}

/// Compositions of `n` into at most `max_parts` (possibly empty) parts.
fn splits(n: usize, max_parts: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for k in 0..=max_parts {
        out.extend(splits_exact(n, k));
    }
    out
}

/// Compositions of `n` into exactly `k` (possibly empty) parts.
pub(crate) fn splits_exact(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == 0 {
            if n == 0 {
                out.push(cur.clone());
            }
            return;
        }
        if k == 1 {
            cur.push(n);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for first in 0..=n {
            cur.push(first);
            go(n - first, k - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, k, &mut Vec::new(), &mut out);
    out
}

/// Grows a partial tuple fixed at factor `start` to full tuples, left and right.
fn extend_tuple(p: &WidePullback, start: usize, seed: Elem, w: usize, bound: usize) -> (Weighted, bool) {
    let n = p.factors.len();
    let mut partial: Vec<(Vec<Elem>, usize)> = vec![(vec![seed], w)];
    let mut exact = true;
    for j in start + 1..n {
        let mut next = Vec::new();
        for (comps, w) in &partial {
            let (c, ex) = match &p.links[j - 1] {
                None => p.factors[j].enum_w(bound),
                Some((f, g)) => match f.apply(comps.last().unwrap()) {
                    Ok(v) => p.factors[j].pre_w(g, &v, bound),
                    Err(_) => (Vec::new(), true),
                },
            };
            exact &= ex;
            for (e, we) in c {
                let mut nc = comps.clone();
                nc.push(e);
                next.push((nc, (*w).max(we)));
            }
        }
        partial = next;
    }
    for j in (0..start).rev() {
        let mut next = Vec::new();
        for (comps, w) in &partial {
            let (c, ex) = match &p.links[j] {
                None => p.factors[j].enum_w(bound),
                Some((f, g)) => match g.apply(&comps[0]) {
                    Ok(v) => p.factors[j].pre_w(f, &v, bound),
                    Err(_) => (Vec::new(), true),
                },
            };
            exact &= ex;
            for (e, we) in c {
                let mut nc = Vec::with_capacity(comps.len() + 1);
                nc.push(e);
                nc.extend_from_slice(comps);
                next.push((nc, (*w).max(we)));
            }
        }
        partial = next;
    }
    (partial.into_iter().map(|(c, w)| (Elem::Tuple(c), w)).collect(), exact)
}

impl fmt::Display for SetExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SetExpr::Fin(s) => {
                write!(f, "{{")?;
                for (i, e) in s.iter().take(6).enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{e}")?;
                }
                if s.len() > 6 {
                    write!(f, ",… {} total", s.len())?;
                }
                write!(f, "}}")
            }
            SetExpr::FM(b) => write!(f, "T{b}"),
            SetExpr::Pullback(p) => {
                write!(f, "pb(")?;
                for (i, x) in p.factors.iter().enumerate() {
                    if i > 0 {
                        write!(f, " × ")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
            SetExpr::Fibered(x) => write!(f, "{}", x.name),
        }
    }
}

impl fmt::Debug for SetExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
