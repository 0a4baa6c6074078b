use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use super::{Elem, SetExpr};
use crate::error::{Error, Result};

pub type NativeBody = dyn Fn(&Elem) -> Result<Elem> + Send + Sync;

/// A named, opaque rule. Two native rules are equal iff their names are.
#[derive(Clone)]
pub struct NativeFn {
    pub name: Arc<str>,
    body: Arc<NativeBody>,
}

impl NativeFn {
    pub fn new(name: &str, body: impl Fn(&Elem) -> Result<Elem> + Send + Sync + 'static) -> Self {
        NativeFn { name: Arc::from(name), body: Arc::new(body) }
    }

    pub fn call(&self, e: &Elem) -> Result<Elem> {
        (self.body)(e)
    }
}

impl PartialEq for NativeFn {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
    }
}

/// Structural rules, total on well-typed input by construction.
#[derive(Clone, PartialEq)]
pub enum Struct {
    Identity,
    Singleton,
    Concat,
    /// `Flatten(0)` is the singleton map, `Flatten(1)` the identity, `Flatten(n)` concatenates n levels into one.
    Flatten(usize),
    MapOf(Box<MapF>),
    ComposeSeq(Vec<MapF>),
    ConstTo(Elem),
    Proj(usize),
    Pairing(Vec<MapF>),
    /// Turns a tuple of equally shaped depth-d nested lists into a depth-d nested list of tuples.
    Zip(usize),
    Unzip { depth: usize, arity: usize },
    /// `(shape, flat)` with `shape` of n list levels: refills the leaves of `shape` from `flat`.
    Regroup(usize),
    Unsingleton,
    Native(NativeFn),
}

#[derive(Clone, PartialEq)]
pub enum Rule {
    Table(Arc<BTreeMap<Elem, Elem>>),
    Struct(Struct),
}

/// A map between two set expressions.
#[derive(Clone, PartialEq)]
pub struct MapF {
    pub domain: SetExpr,
    pub codomain: SetExpr,
    pub rule: Rule,
}

fn malformed(e: &Elem, what: &str) -> Error {
    Error::Domain { elem: e.to_string(), set: what.to_string() }
}

fn concat_once(e: &Elem) -> Result<Elem> {
    let outer = e.as_nest().ok_or_else(|| malformed(e, "lists of lists"))?;
    let mut out = Vec::new();
    for inner in outer {
        out.extend_from_slice(inner.as_nest().ok_or_else(|| malformed(e, "lists of lists"))?);
    }
    Ok(Elem::Nest(out))
}

fn zip(depth: usize, e: &Elem) -> Result<Elem> {
    if depth == 0 {
        return Ok(e.clone());
    }
    let comps = e.as_tuple().ok_or_else(|| malformed(e, "tuples of lists"))?;
    if comps.is_empty() {
        return Err(malformed(e, "non-empty tuples"));
    }
    let lists: Vec<&[Elem]> = comps
        .iter()
        .map(|c| c.as_nest().ok_or_else(|| malformed(e, "tuples of lists")))
        .collect::<Result<_>>()?;
    let n = lists[0].len();
    if lists.iter().any(|l| l.len() != n) {
        return Err(malformed(e, "tuples of equally long lists"));
    }
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        out.push(zip(depth - 1, &Elem::Tuple(lists.iter().map(|l| l[i].clone()).collect()))?);
    }
    Ok(Elem::Nest(out))
}

fn unzip(depth: usize, arity: usize, e: &Elem) -> Result<Elem> {
    if depth == 0 {
        return match e.as_tuple() {
            Some(t) if t.len() == arity => Ok(e.clone()),
            _ => Err(malformed(e, "tuples of the declared arity")),
        };
    }
    let items = e.as_nest().ok_or_else(|| malformed(e, "lists"))?;
    let mut cols: Vec<Vec<Elem>> = (0..arity).map(|_| Vec::with_capacity(items.len())).collect();
    for it in items {
        let part = unzip(depth - 1, arity, it)?;
        for (k, c) in part.as_tuple().expect("unzip yields tuples").iter().enumerate() {
            cols[k].push(c.clone());
        }
    }
    Ok(Elem::Tuple(cols.into_iter().map(Elem::Nest).collect()))
}

fn regroup(levels: usize, shape: &Elem, flat: &mut core::slice::Iter<'_, Elem>, whole: &Elem) -> Result<Elem> {
    if levels == 0 {
        return flat.next().cloned().ok_or_else(|| malformed(whole, "a flat list as long as the shape"));
    }
    let kids = shape.as_nest().ok_or_else(|| malformed(whole, "a nested shape"))?;
    let mut out = Vec::with_capacity(kids.len());
    for k in kids {
        out.push(regroup(levels - 1, k, flat, whole)?);
    }
    Ok(Elem::Nest(out))
}

impl Struct {
    fn apply(&self, e: &Elem) -> Result<Elem> {
        match self {
            Struct::Identity => Ok(e.clone()),
            Struct::Singleton => Ok(Elem::Nest(alloc::vec![e.clone()])),
            Struct::Concat => concat_once(e),
            Struct::Flatten(n) => match n {
                0 => Ok(Elem::Nest(alloc::vec![e.clone()])),
                1 => Ok(e.clone()),
                _ => {
                    let mut cur = concat_once(e)?;
                    for _ in 2..*n {
                        cur = concat_once(&cur)?;
                    }
                    Ok(cur)
                }
            },
            Struct::MapOf(f) => {
                let items = e.as_nest().ok_or_else(|| malformed(e, "lists"))?;
                Ok(Elem::Nest(items.iter().map(|x| f.apply(x)).collect::<Result<_>>()?))
            }
            Struct::ComposeSeq(fs) => {
                let mut cur = e.clone();
                for f in fs {
                    cur = f.apply(&cur)?;
                }
                Ok(cur)
            }
            Struct::ConstTo(c) => Ok(c.clone()),
            Struct::Proj(i) => e
                .as_tuple()
                .and_then(|t| t.get(*i))
                .cloned()
                .ok_or_else(|| malformed(e, "tuples")),
            Struct::Pairing(fs) => Ok(Elem::Tuple(fs.iter().map(|f| f.apply(e)).collect::<Result<_>>()?)),
            Struct::Zip(d) => zip(*d, e),
            Struct::Unzip { depth, arity } => unzip(*depth, *arity, e),
            Struct::Regroup(n) => {
                let t = e.as_tuple().filter(|t| t.len() == 2).ok_or_else(|| malformed(e, "(shape, list) pairs"))?;
                let flat = t[1].as_nest().ok_or_else(|| malformed(e, "(shape, list) pairs"))?;
                let mut it = flat.iter();
                let out = regroup(*n, &t[0], &mut it, e)?;
                if it.next().is_some() {
                    return Err(malformed(e, "a flat list as long as the shape"));
                }
                Ok(out)
            }
            Struct::Unsingleton => match e.as_nest() {
                Some([x]) => Ok(x.clone()),
                _ => Err(malformed(e, "singleton lists")),
            },
            Struct::Native(n) => n.call(e),
        }
    }
}

impl MapF {
    fn structural(domain: SetExpr, codomain: SetExpr, s: Struct) -> MapF {
        MapF { domain, codomain, rule: Rule::Struct(s) }
    }

    pub fn identity(s: &SetExpr) -> MapF {
        Self::structural(s.clone(), s.clone(), Struct::Identity)
    }

    pub fn singleton(s: &SetExpr) -> MapF {
        Self::structural(s.clone(), SetExpr::fm(s.clone()), Struct::Singleton)
    }

    pub fn concat(s: &SetExpr) -> MapF {
        Self::structural(SetExpr::fm_n(2, s.clone()), SetExpr::fm(s.clone()), Struct::Concat)
    }

    /// `FM^n(s) -> FM(s)`.
    pub fn flatten(n: usize, s: &SetExpr) -> MapF {
        match n {
            1 => {
                let t = SetExpr::fm(s.clone());
                Self::structural(t.clone(), t, Struct::Flatten(1))
            }
            _ => Self::structural(SetExpr::fm_n(n, s.clone()), SetExpr::fm(s.clone()), Struct::Flatten(n)),
        }
    }

    pub fn map_of(f: &MapF) -> MapF {
        Self::structural(SetExpr::fm(f.domain.clone()), SetExpr::fm(f.codomain.clone()), Struct::MapOf(Box::new(f.clone())))
    }

    /// `FM^depth(f)`.
    pub fn map_of_n(depth: usize, f: &MapF) -> MapF {
        let mut g = f.clone();
        for _ in 0..depth {
            g = MapF::map_of(&g);
        }
        g
    }

    /// Applies the maps in order: `compose([f, g])` is `g ∘ f`.
    pub fn compose(maps: Vec<MapF>) -> MapF {
        assert!(!maps.is_empty(), "compose needs at least one map");
        for w in maps.windows(2) {
            debug_assert!(
                w[0].codomain == w[1].domain,
                "composing {} into {} but next domain is {}",
                w[0],
                w[0].codomain,
                w[1].domain
            );
        }
        let d0 = maps[0].domain.clone();
        let mut flat = Vec::new();
        for m in maps {
            match m.rule {
                Rule::Struct(Struct::ComposeSeq(inner)) => flat.extend(inner),
                Rule::Struct(Struct::Identity) => {}
                _ => flat.push(m),
            }
        }
        match flat.len() {
            0 => MapF::identity(&d0),
            1 => flat.pop().unwrap(),
            _ => {
                let d = flat[0].domain.clone();
                let c = flat.last().unwrap().codomain.clone();
                Self::structural(d, c, Struct::ComposeSeq(flat))
            }
        }
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &MapF) -> MapF {
        match (&self.rule, &g.rule) {
            (_, Rule::Struct(Struct::Identity)) => self.clone(),
            (Rule::Struct(Struct::Identity), _) => g.clone(),
            _ => MapF::compose(alloc::vec![self.clone(), g.clone()]),
        }
    }

    pub fn const_to(domain: &SetExpr, codomain: &SetExpr, c: Elem) -> MapF {
        Self::structural(domain.clone(), codomain.clone(), Struct::ConstTo(c))
    }

    /// Projection out of a pullback or product set.
    pub fn proj(from: &SetExpr, i: usize) -> MapF {
        let factor = match from {
            SetExpr::Pullback(p) => p.factors[i].clone(),
            _ => panic!("projection out of a non-pullback set {from}"),
        };
        Self::structural(from.clone(), factor, Struct::Proj(i))
    }

    pub fn pairing(maps: Vec<MapF>, codomain: &SetExpr) -> MapF {
        let d = maps[0].domain.clone();
        Self::structural(d, codomain.clone(), Struct::Pairing(maps))
    }

    pub fn zip(depth: usize, domain: &SetExpr, codomain: &SetExpr) -> MapF {
        Self::structural(domain.clone(), codomain.clone(), Struct::Zip(depth))
    }

    pub fn unzip(depth: usize, arity: usize, domain: &SetExpr, codomain: &SetExpr) -> MapF {
        Self::structural(domain.clone(), codomain.clone(), Struct::Unzip { depth, arity })
    }

    pub fn regroup(levels: usize, domain: &SetExpr, codomain: &SetExpr) -> MapF {
        Self::structural(domain.clone(), codomain.clone(), Struct::Regroup(levels))
    }

    pub fn unsingleton(s: &SetExpr) -> MapF {
        Self::structural(SetExpr::fm(s.clone()), s.clone(), Struct::Unsingleton)
    }

    pub fn native(
        name: &str,
        domain: &SetExpr,
        codomain: &SetExpr,
        body: impl Fn(&Elem) -> Result<Elem> + Send + Sync + 'static,
    ) -> MapF {
        Self::structural(domain.clone(), codomain.clone(), Struct::Native(NativeFn::new(name, body)))
    }

    pub fn native_fn(domain: &SetExpr, codomain: &SetExpr, f: NativeFn) -> MapF {
        Self::structural(domain.clone(), codomain.clone(), Struct::Native(f))
    }

    /// A finite table; must be total on the finite domain and land in the codomain.
    pub fn table(domain: &SetExpr, codomain: &SetExpr, graph: BTreeMap<Elem, Elem>) -> Result<MapF> {
        let SetExpr::Fin(dom) = domain else {
            return Err(Error::Presentation(format!("table maps need a finite domain, got {domain}")));
        };
        for x in dom.iter() {
            match graph.get(x) {
                None => return Err(Error::Rule { map: "table".into(), elem: x.to_string() }),
                Some(y) if !codomain.contains(y) => {
                    return Err(Error::Domain { elem: y.to_string(), set: codomain.to_string() })
                }
                _ => {}
            }
        }
        if let Some(extra) = graph.keys().find(|k| !dom.contains(*k)) {
            return Err(Error::Domain { elem: extra.to_string(), set: domain.to_string() });
        }
        Ok(MapF { domain: domain.clone(), codomain: codomain.clone(), rule: Rule::Table(Arc::new(graph)) })
    }

    /// The same rule with a replaced codomain, e.g. to land in a subset known to contain the image.
    pub fn with_codomain(&self, codomain: &SetExpr) -> MapF {
        MapF { domain: self.domain.clone(), codomain: codomain.clone(), rule: self.rule.clone() }
    }

    pub fn with_domain(&self, domain: &SetExpr) -> MapF {
        MapF { domain: domain.clone(), codomain: self.codomain.clone(), rule: self.rule.clone() }
    }

    pub fn as_struct(&self) -> Option<&Struct> {
        match &self.rule {
            Rule::Struct(s) => Some(s),
            Rule::Table(_) => None,
        }
    }

    pub fn is_identity(&self) -> bool {
        matches!(self.rule, Rule::Struct(Struct::Identity) | Rule::Struct(Struct::Flatten(1)))
    }

    /// Evaluation without membership checks.
    pub fn apply(&self, e: &Elem) -> Result<Elem> {
        match &self.rule {
            Rule::Table(t) => t.get(e).cloned().ok_or_else(|| Error::Rule { map: self.to_string(), elem: e.to_string() }),
            Rule::Struct(s) => s.apply(e),
        }
    }

    /// Checked evaluation: `e` must lie in the domain and the result in the codomain.
    pub fn eval(&self, e: &Elem) -> Result<Elem> {
        if !self.domain.contains(e) {
            return Err(Error::Domain { elem: e.to_string(), set: self.domain.to_string() });
        }
        let y = self.apply(e)?;
        if !self.codomain.contains(&y) {
            return Err(Error::CodomainMismatch(format!("{self} sends {e} to {y}, outside {}", self.codomain)));
        }
        Ok(y)
    }

    /// The finite graph when the rule is a table.
    pub fn graph(&self) -> Option<&BTreeMap<Elem, Elem>> {
        match &self.rule {
            Rule::Table(t) => Some(t),
            _ => None,
        }
    }

    pub fn describe(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for MapF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.rule {
            Rule::Table(t) => write!(f, "table[{}]", t.len()),
            Rule::Struct(s) => match s {
                Struct::Identity => write!(f, "id"),
                Struct::Singleton => write!(f, "e"),
                Struct::Concat => write!(f, "m"),
                Struct::Flatten(n) => write!(f, "m{n}"),
                Struct::MapOf(g) => write!(f, "T({g})"),
                Struct::ComposeSeq(gs) => {
                    for (i, g) in gs.iter().enumerate() {
                        if i > 0 {
                            write!(f, ";")?;
                        }
                        write!(f, "{g}")?;
                    }
                    Ok(())
                }
                Struct::ConstTo(c) => write!(f, "const {c}"),
                Struct::Proj(i) => write!(f, "pi{i}"),
                Struct::Pairing(gs) => {
                    write!(f, "<")?;
                    for (i, g) in gs.iter().enumerate() {
                        if i > 0 {
                            write!(f, ", ")?;
                        }
                        write!(f, "{g}")?;
                    }
                    write!(f, ">")
                }
                Struct::Zip(d) => write!(f, "zip{d}"),
                Struct::Unzip { depth, .. } => write!(f, "unzip{depth}"),
                Struct::Regroup(n) => write!(f, "regroup{n}"),
                Struct::Unsingleton => write!(f, "unsingleton"),
                Struct::Native(n) => write!(f, "{}", n.name),
            },
        }
    }
}

impl fmt::Debug for MapF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}: {} -> {}", self.domain, self.codomain)
    }
}
