//! Finite categories and multicategories, and their translation to span monoids and T-monoids.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::{Monoid, TMonoid, TMonoidHom};
use crate::error::{Error, Result};
use crate::finset::{Elem, FiberFiniteSet, MapF, NativeFn, SetExpr};
use crate::spaneq::Span;

/// The default name of the identity on an object.
pub fn identity_name(object: &str) -> String {
    format!("id_{object}")
}

fn atom_name(e: &Elem) -> Result<String> {
    e.as_atom().map(String::from).ok_or_else(|| Error::Presentation(format!("{e} is not a named element")))
}

fn atoms_set<'a>(names: impl IntoIterator<Item = &'a String>) -> SetExpr {
    SetExpr::fin(names.into_iter().map(|n| Elem::atom(n)))
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct MorDecl {
    pub name: String,
    pub dom: String,
    pub cod: String,
}

/// A finite category given by its non-identity morphisms and a composition table.
///
/// `comp[(g, f)] = h` records `h = g . f`. Composites with identities are implicit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteCategory {
    pub name: String,
    pub objects: Vec<String>,
    pub morphisms: Vec<MorDecl>,
    pub identities: BTreeMap<String, String>,
    pub comp: BTreeMap<(String, String), String>,
}

impl FiniteCategory {
    /// Identities get their default names.
    pub fn new(name: &str, objects: &[&str], morphisms: &[(&str, &str, &str)], comp: &[(&str, &str, &str)]) -> FiniteCategory {
        FiniteCategory {
            name: name.into(),
            objects: objects.iter().map(|s| s.to_string()).collect(),
            morphisms: morphisms
                .iter()
                .map(|(n, d, c)| MorDecl { name: n.to_string(), dom: d.to_string(), cod: c.to_string() })
                .collect(),
            identities: objects.iter().map(|o| (o.to_string(), identity_name(o))).collect(),
            comp: comp.iter().map(|(h, g, f)| ((g.to_string(), f.to_string()), h.to_string())).collect(),
        }
    }

    /// Objects and morphisms in sorted order, for comparing presentations.
    pub fn normalized(mut self) -> FiniteCategory {
        self.objects.sort();
        self.morphisms.sort();
        self
    }

    /// `(dom, cod)` of a morphism, identities included.
    pub fn ends(&self, m: &str) -> Option<(String, String)> {
        if let Some(o) = self.identities.iter().find(|(_, i)| *i == m).map(|(o, _)| o) {
            return Some((o.clone(), o.clone()));
        }
        self.morphisms.iter().find(|d| d.name == m).map(|d| (d.dom.clone(), d.cod.clone()))
    }

    fn is_identity(&self, m: &str) -> bool {
        self.identities.values().any(|i| i == m)
    }

    /// `g . f` when it is defined by the presentation.
    pub fn compose(&self, g: &str, f: &str) -> Option<String> {
        if self.is_identity(g) {
            return Some(f.into());
        }
        if self.is_identity(f) {
            return Some(g.into());
        }
        self.comp.get(&(g.to_string(), f.to_string())).cloned()
    }

    /// All morphisms, identities first.
    pub fn all_morphisms(&self) -> Vec<String> {
        let mut v: Vec<String> = self.objects.iter().map(|o| self.identities[o].clone()).collect();
        v.extend(self.morphisms.iter().map(|d| d.name.clone()));
        v
    }

    /// The same category with unary operations.
    pub fn to_multicat_table(&self) -> MulticatTable {
        MulticatTable {
            name: self.name.clone(),
            colors: self.objects.clone(),
            ops: self
                .morphisms
                .iter()
                .map(|d| OpDecl { name: d.name.clone(), sources: alloc::vec![d.dom.clone()], target: d.cod.clone() })
                .collect(),
            identities: self.identities.clone(),
            comp: self.comp.iter().map(|((g, f), h)| ((g.clone(), alloc::vec![f.clone()]), h.clone())).collect(),
        }
    }
}

/// Encodes a finite category as a span monoid. The apex is the set of morphisms, the left leg
/// sends a morphism to its codomain and the right leg to its domain; `μ(g, f) = g . f`.
pub fn cat_to_monoid(c: &FiniteCategory) -> Result<Monoid> {
    let x = atoms_set(&c.objects);
    let mors = c.all_morphisms();
    let apex = atoms_set(&mors);
    let (mut cod, mut dom) = (BTreeMap::new(), BTreeMap::new());
    for m in &mors {
        let (d, k) = c.ends(m).ok_or_else(|| Error::Presentation(format!("unknown morphism {m}")))?;
        for o in [&d, &k] {
            if !c.objects.contains(o) {
                return Err(Error::Presentation(format!("{m} mentions the unknown object {o}")));
            }
        }
        cod.insert(Elem::atom(m), Elem::atom(&k));
        dom.insert(Elem::atom(m), Elem::atom(&d));
    }
    let a = Span::new(MapF::table(&apex, &x, cod)?, MapF::table(&apex, &x, dom)?)?;
    let cat = Arc::new(c.clone());
    let mu = NativeFn::new(&format!("composition of {}", c.name), move |e: &Elem| {
        let bad = || Error::Rule { map: "composition".into(), elem: format!("{e}") };
        let t = e.as_tuple().ok_or_else(bad)?;
        let (g, f) = (atom_name(&t[0])?, atom_name(&t[1])?);
        cat.compose(&g, &f).map(|h| Elem::atom(&h)).ok_or_else(bad)
    });
    let aa = crate::spaneq::compose_n(&[a.clone(), a.clone()])?;
    let ids = c.identities.iter().map(|(o, i)| (Elem::atom(o), Elem::atom(i))).collect();
    Monoid::new(&c.name, a, MapF::native_fn(&aa.apex, &apex, mu), MapF::table(&x, &apex, ids)?)
}

/// Reads a finite category back from a span monoid with a finite apex of named elements.
pub fn monoid_to_cat(m: &Monoid) -> Result<FiniteCategory> {
    let objs = m.object.as_fin().ok_or_else(|| Error::Presentation("objects must be a finite set".into()))?;
    let mors = m.vector.apex.as_fin().ok_or_else(|| Error::Presentation("morphisms must be a finite set".into()))?;
    let objects: Vec<String> = objs.iter().map(atom_name).collect::<Result<_>>()?;
    let mut identities = BTreeMap::new();
    for o in objs {
        identities.insert(atom_name(o)?, atom_name(&m.eta.apply(o)?)?);
    }
    let ids: BTreeSet<&String> = identities.values().collect();
    let mut morphisms = Vec::new();
    for f in mors {
        let name = atom_name(f)?;
        if !ids.contains(&name) {
            morphisms.push(MorDecl { name, dom: atom_name(&m.vector.right.apply(f)?)?, cod: atom_name(&m.vector.left.apply(f)?)? });
        }
    }
    let mut comp = BTreeMap::new();
    for e in m.mu.from.apex.enumerate(2).items {
        let t = e.as_tuple().expect("composable pairs are tuples");
        let (g, f) = (atom_name(&t[0])?, atom_name(&t[1])?);
        if !ids.contains(&g) && !ids.contains(&f) {
            comp.insert((g, f), atom_name(&m.mu.apply(&e)?)?);
        }
    }
    Ok(FiniteCategory { name: m.name.clone(), objects, morphisms, identities, comp })
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct OpDecl {
    pub name: String,
    pub sources: Vec<String>,
    pub target: String,
}

/// A multicategory with finitely many operations, given by a substitution table.
///
/// `comp[(f, [g_1, …, g_n])] = h` records `h = f ∘ (g_1, …, g_n)`. Substitutions where `f` is an
/// identity or all `g_i` are identities are implicit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MulticatTable {
    pub name: String,
    pub colors: Vec<String>,
    pub ops: Vec<OpDecl>,
    pub identities: BTreeMap<String, String>,
    pub comp: BTreeMap<(String, Vec<String>), String>,
}

impl MulticatTable {
    /// Colors and operations in sorted order, for comparing presentations.
    pub fn normalized(mut self) -> MulticatTable {
        self.colors.sort();
        self.ops.sort();
        self
    }

    pub fn is_identity(&self, op: &str) -> bool {
        self.identities.values().any(|i| i == op)
    }

    /// `(sources, target)` of an operation, identities included.
    pub fn profile(&self, op: &str) -> Option<(Vec<String>, String)> {
        if let Some(c) = self.identities.iter().find(|(_, i)| *i == op).map(|(c, _)| c) {
            return Some((alloc::vec![c.clone()], c.clone()));
        }
        self.ops.iter().find(|d| d.name == op).map(|d| (d.sources.clone(), d.target.clone()))
    }

    pub fn compose(&self, f: &str, gs: &[String]) -> Option<String> {
        if self.is_identity(f) {
            return match gs {
                [g] => Some(g.clone()),
                _ => None,
            };
        }
        if gs.iter().all(|g| self.is_identity(g)) {
            return Some(f.into());
        }
        self.comp.get(&(f.to_string(), gs.to_vec())).cloned()
    }

    pub fn all_ops(&self) -> Vec<String> {
        let mut v: Vec<String> = self.colors.iter().filter_map(|c| self.identities.get(c).cloned()).collect();
        v.extend(self.ops.iter().map(|d| d.name.clone()));
        v
    }

    pub fn max_arity(&self) -> usize {
        self.ops.iter().map(|d| d.sources.len()).max().unwrap_or(1).max(1)
    }

    pub fn with_default_identities(mut self) -> MulticatTable {
        self.identities = self.colors.iter().map(|c| (c.clone(), identity_name(c))).collect();
        self
    }
}

type ComposeBody = dyn Fn(&Elem, &[Elem]) -> Result<Elem> + Send + Sync;

/// A multicategory: colors, a (possibly infinite, fiber-finite) set of operations, and
/// substitution. Built from a table or generated by a rule.
#[derive(Clone)]
pub struct FiniteMulticat {
    pub name: String,
    pub colors: SetExpr,
    pub ops: SetExpr,
    pub target: MapF,
    pub sources: MapF,
    pub identity: MapF,
    compose: Arc<ComposeBody>,
    pub table: Option<MulticatTable>,
}

impl core::fmt::Debug for FiniteMulticat {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "FiniteMulticat({}, colors {}, ops {})", self.name, self.colors, self.ops)
    }
}

impl FiniteMulticat {
    /// `f ∘ (g_1, …, g_n)`.
    pub fn compose(&self, f: &Elem, gs: &[Elem]) -> Result<Elem> {
        (self.compose)(f, gs)
    }

    /// Operations with the given sources and target, up to `bound` when the set is infinite.
    pub fn hom(&self, sources: &[Elem], target: &Elem, bound: usize) -> Vec<Elem> {
        let key = Elem::pair(target.clone(), Elem::nest(sources.to_vec()));
        let legs = MapF::pairing(
            alloc::vec![self.target.clone(), self.sources.clone()],
            &SetExpr::product(alloc::vec![self.colors.clone(), SetExpr::fm(self.colors.clone())]),
        );
        self.ops.preimage(&legs, &key, bound.max(sources.len())).items
    }

    pub fn from_table(t: &MulticatTable) -> Result<FiniteMulticat> {
        let colors = atoms_set(&t.colors);
        let names = t.all_ops();
        let ops = atoms_set(&names);
        let (mut tg, mut src) = (BTreeMap::new(), BTreeMap::new());
        for op in &names {
            let (ss, k) = t.profile(op).ok_or_else(|| Error::Presentation(format!("unknown operation {op}")))?;
            for c in ss.iter().chain([&k]) {
                if !t.colors.contains(c) {
                    return Err(Error::Presentation(format!("{op} mentions the unknown object {c}")));
                }
            }
            tg.insert(Elem::atom(op), Elem::atom(&k));
            src.insert(Elem::atom(op), Elem::nest(ss.iter().map(|s| Elem::atom(s)).collect()));
        }
        if names.iter().collect::<BTreeSet<_>>().len() != names.len() {
            return Err(Error::Presentation(format!("{}: operation names are not distinct", t.name)));
        }
        let ids = t.identities.iter().map(|(c, i)| (Elem::atom(c), Elem::atom(i))).collect();
        let table = Arc::new(t.clone());
        let compose = move |f: &Elem, gs: &[Elem]| -> Result<Elem> {
            let bad = || Error::Rule { map: "substitution".into(), elem: format!("{f} ∘ {}", Elem::nest(gs.to_vec())) };
            let f = atom_name(f)?;
            let gs: Vec<String> = gs.iter().map(atom_name).collect::<Result<_>>()?;
            table.compose(&f, &gs).map(|h| Elem::atom(&h)).ok_or_else(bad)
        };
        Ok(FiniteMulticat {
            name: t.name.clone(),
            target: MapF::table(&ops, &colors, tg)?,
            sources: MapF::table(&ops, &SetExpr::fm(colors.clone()), src)?,
            identity: MapF::table(&colors, &ops, ids)?,
            colors,
            ops,
            compose: Arc::new(compose),
            table: Some(t.clone()),
        })
    }

    /// The multicategory with at most one operation `ℓ → c`, present exactly when `hom(ℓ, c)`.
    /// The operation is the token `(ℓ, c)`.
    pub fn thin(name: &str, colors: &[&str], hom: impl Fn(&[Elem], &Elem) -> bool + Send + Sync + 'static) -> FiniteMulticat {
        let cs = SetExpr::atoms(colors);
        let ops = SetExpr::fibered(FiberFiniteSet::new(
            name,
            cs.clone(),
            SetExpr::fm(cs.clone()),
            |t| t.as_tuple().map(|v| v[1].clone()),
            |t| t.as_tuple().map(|v| v[0].clone()),
            move |c, l| {
                let ok = l.as_nest().is_some_and(|v| hom(v, c));
                if ok {
                    alloc::vec![Elem::pair(l.clone(), c.clone())]
                } else {
                    Vec::new()
                }
            },
        ));
        let (target, sources) = ops.fibered_legs().expect("a fibered set has legs");
        let identity = MapF::native(&format!("identities of {name}"), &cs, &ops, |c| {
            Ok(Elem::pair(Elem::nest(alloc::vec![c.clone()]), c.clone()))
        });
        let compose = |f: &Elem, gs: &[Elem]| -> Result<Elem> {
            let bad = || Error::Rule { map: "substitution".into(), elem: format!("{f}") };
            let tgt = f.as_tuple().ok_or_else(bad)?[1].clone();
            let mut srcs = Vec::new();
            for g in gs {
                srcs.extend_from_slice(g.as_tuple().and_then(|v| v[0].as_nest()).ok_or_else(bad)?);
            }
            Ok(Elem::pair(Elem::nest(srcs), tgt))
        };
        FiniteMulticat {
            name: name.into(),
            colors: cs,
            ops,
            target,
            sources,
            identity,
            compose: Arc::new(compose),
            table: None,
        }
    }

    /// `hom([m_1, …, m_n], m)` is a point iff `Σ m_i ≡ m (mod n)`; colors are `0, …, n-1`.
    pub fn cyclic(n: usize) -> FiniteMulticat {
        let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        let val = |e: &Elem| e.as_atom().and_then(|s| s.parse::<usize>().ok()).unwrap_or(0);
        FiniteMulticat::thin(&format!("Z/{n}"), &refs, move |l, c| l.iter().map(val).sum::<usize>() % n == val(c) % n)
    }

    /// One operation `ℓ → c` for every list and color.
    pub fn terminal(colors: &[&str]) -> FiniteMulticat {
        FiniteMulticat::thin(&format!("terminal{{{}}}", colors.join(",")), colors, |_, _| true)
    }
}

/// `a^l` = target, `a^r` = source list, `μ(f, [g_1, …, g_n]) = f ∘ (g_1, …, g_n)`, `η(c) = 1_c`.
pub fn multicat_to_tmonoid(m: &FiniteMulticat) -> Result<TMonoid> {
    let a = Span::new(m.target.clone(), m.sources.clone())?;
    let aa = crate::kleisli::kl_compose_n(&m.colors, &[a.clone(), a.clone()])?;
    let mc = m.clone();
    let mu = MapF::native(&format!("substitution in {}", m.name), &aa.apex, &m.ops, move |e| {
        let bad = || Error::Rule { map: "substitution".into(), elem: format!("{e}") };
        let t = e.as_tuple().ok_or_else(bad)?;
        mc.compose(&t[0], t[1].as_nest().ok_or_else(bad)?)
    });
    TMonoid::new(&m.name, a, mu, m.identity.clone())
}

/// Reads a multicategory back from a T-monoid. A finite apex of named operations also yields the
/// substitution table, read off the composable pairs of arity at most `bound`.
pub fn tmonoid_to_multicat(t: &TMonoid, bound: usize) -> Result<FiniteMulticat> {
    let tc = t.clone();
    let compose = move |f: &Elem, gs: &[Elem]| tc.mu.apply(&Elem::pair(f.clone(), Elem::nest(gs.to_vec())));
    let table = match (t.object.as_fin(), t.vector.apex.as_fin()) {
        (Some(cs), Some(os)) if os.iter().all(|o| o.as_atom().is_some()) => Some(read_table(t, cs, os, bound)?),
        _ => None,
    };
    Ok(FiniteMulticat {
        name: t.name.clone(),
        colors: t.object.clone(),
        ops: t.vector.apex.clone(),
        target: t.vector.left.clone(),
        sources: t.vector.right.clone(),
        identity: t.eta.map.clone(),
        compose: Arc::new(compose),
        table,
    })
}

fn read_table(t: &TMonoid, cs: &BTreeSet<Elem>, os: &BTreeSet<Elem>, bound: usize) -> Result<MulticatTable> {
    let colors: Vec<String> = cs.iter().map(atom_name).collect::<Result<_>>()?;
    let mut identities = BTreeMap::new();
    for c in cs {
        identities.insert(atom_name(c)?, atom_name(&t.eta.apply(c)?)?);
    }
    let ids: BTreeSet<String> = identities.values().cloned().collect();
    let mut ops = Vec::new();
    for o in os {
        let name = atom_name(o)?;
        if ids.contains(&name) {
            continue;
        }
        let srcs = t.vector.right.apply(o)?;
        let sources = srcs.as_nest().unwrap_or_default().iter().map(atom_name).collect::<Result<_>>()?;
        ops.push(OpDecl { name, sources, target: atom_name(&t.vector.left.apply(o)?)? });
    }
    let mut comp = BTreeMap::new();
    for e in t.mu.from.apex.enumerate(bound.max(1)).items {
        let v = e.as_tuple().expect("composable pairs are tuples");
        let f = atom_name(&v[0])?;
        let gs: Vec<String> = v[1].as_nest().unwrap_or_default().iter().map(atom_name).collect::<Result<_>>()?;
        if ids.contains(&f) || gs.iter().all(|g| ids.contains(g)) {
            continue;
        }
        comp.insert((f, gs), atom_name(&t.mu.apply(&e)?)?);
    }
    Ok(MulticatTable { name: t.name.clone(), colors, ops, identities, comp })
}

/// The homomorphism of thin multicategories induced by a map of colors; it sends the token
/// `(ℓ, c)` to `(Tf ℓ, f c)`.
pub fn thin_hom(source: &TMonoid, target: &TMonoid, f: MapF) -> TMonoidHom {
    let tf = MapF::map_of(&f);
    let g = f.clone();
    let phi = MapF::native(&format!("{f} on operations"), &source.vector.apex, &target.vector.apex, move |e| {
        let bad = || Error::Rule { map: "thin hom".into(), elem: format!("{e}") };
        let v = e.as_tuple().ok_or_else(bad)?;
        Ok(Elem::pair(tf.apply(&v[0])?, g.apply(&v[1])?))
    });
    TMonoidHom::new(source, target, f, phi)
}
