//! Finite posetal quantales and the matrix equipment over them.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::coverage::Coverage;
use crate::error::{Error, Result};
use crate::finset::{Elem, MapF, SetExpr};

/// A value of a quantale, as an index into its carrier.
pub type Val = usize;

/// A finite lattice with an associative, unital tensor distributing over joins.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quantale {
    name: String,
    labels: Vec<String>,
    leq: Vec<Vec<bool>>,
    tensor: Vec<Vec<Val>>,
    join: Vec<Vec<Val>>,
    unit: Val,
    bottom: Val,
    top: Val,
}

impl Quantale {
    /// Validates the order, the lattice structure and the quantale axioms exhaustively.
    pub fn new(name: &str, labels: &[&str], leq: Vec<Vec<bool>>, tensor: Vec<Vec<Val>>, unit: Val) -> Result<Quantale> {
        let n = labels.len();
        let bad = |m: String| Err(Error::Quantale(format!("{name}: {m}")));
        if n == 0 || leq.len() != n || tensor.len() != n || unit >= n {
            return bad("carrier, order and tensor sizes disagree".into());
        }
        if leq.iter().any(|r| r.len() != n) || tensor.iter().any(|r| r.len() != n || r.iter().any(|&v| v >= n)) {
            return bad("tables are not square over the carrier".into());
        }
        for a in 0..n {
            if !leq[a][a] {
                return bad(format!("{} is not below itself", labels[a]));
            }
            for b in 0..n {
                if a != b && leq[a][b] && leq[b][a] {
                    return bad(format!("{} and {} are mutually below", labels[a], labels[b]));
                }
                for c in 0..n {
                    if leq[a][b] && leq[b][c] && !leq[a][c] {
                        return bad(format!("order is not transitive at {}, {}, {}", labels[a], labels[b], labels[c]));
                    }
                }
            }
        }
        let least = |cands: &mut dyn Iterator<Item = Val>| -> Option<Val> {
            let ub: Vec<Val> = cands.collect();
            ub.iter().copied().find(|&u| ub.iter().all(|&v| leq[u][v]))
        };
        let Some(bottom) = least(&mut (0..n)) else { return bad("no bottom element".into()) };
        let Some(top) = (0..n).find(|&t| (0..n).all(|v| leq[v][t])) else { return bad("no top element".into()) };
        let mut join = vec![vec![0; n]; n];
        for a in 0..n {
            for b in 0..n {
                match least(&mut (0..n).filter(|&u| leq[a][u] && leq[b][u])) {
                    Some(j) => join[a][b] = j,
                    None => return bad(format!("{} and {} have no join", labels[a], labels[b])),
                }
            }
        }
        let q = Quantale {
            name: name.to_string(),
            labels: labels.iter().map(|s| s.to_string()).collect(),
            leq,
            tensor,
            join,
            unit,
            bottom,
            top,
        };
        q.check_axioms()?;
        Ok(q)
    }

    fn check_axioms(&self) -> Result<()> {
        let n = self.size();
        let l = |v: Val| &self.labels[v];
        let bad = |m: String| Err(Error::Quantale(format!("{}: {m}", self.name)));
        for a in 0..n {
            if self.tensor(a, self.unit) != a || self.tensor(self.unit, a) != a {
                return bad(format!("unit fails at {}", l(a)));
            }
            if self.tensor(a, self.bottom) != self.bottom || self.tensor(self.bottom, a) != self.bottom {
                return bad(format!("tensor with bottom is not bottom at {}", l(a)));
            }
            for b in 0..n {
                for c in 0..n {
                    if self.tensor(self.tensor(a, b), c) != self.tensor(a, self.tensor(b, c)) {
                        return bad(format!("tensor is not associative at {}, {}, {}", l(a), l(b), l(c)));
                    }
                    if self.tensor(a, self.join(b, c)) != self.join(self.tensor(a, b), self.tensor(a, c))
                        || self.tensor(self.join(b, c), a) != self.join(self.tensor(b, a), self.tensor(c, a))
                    {
                        return bad(format!("tensor does not distribute at {}, {}, {}", l(a), l(b), l(c)));
                    }
                    if self.leq(b, c) && !(self.leq(self.tensor(a, b), self.tensor(a, c)) && self.leq(self.tensor(b, a), self.tensor(c, a))) {
                        return bad(format!("tensor is not monotone at {}, {}, {}", l(a), l(b), l(c)));
                    }
                }
            }
        }
        Ok(())
    }

    /// The two-element lattice with conjunction.
    pub fn boolean() -> Quantale {
        Quantale::new("2", &["0", "1"], vec![vec![true, true], vec![false, true]], vec![vec![0, 0], vec![0, 1]], 1)
            .expect("2 is a quantale")
    }

    /// The chain 0 < ½ < 1 with the truncated sum `max(0, a + b − 1)`.
    pub fn lukasiewicz3() -> Quantale {
        let leq = (0..3).map(|a| (0..3).map(|b| a <= b).collect()).collect();
        let tensor = (0..3).map(|a: usize| (0..3).map(|b: usize| (a + b).saturating_sub(2)).collect()).collect();
        Quantale::new("L3", &["0", "1/2", "1"], leq, tensor, 2).expect("the Łukasiewicz chain is a quantale")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, v: Val) -> &str {
        &self.labels[v]
    }

    pub fn value(&self, label: &str) -> Option<Val> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn leq(&self, a: Val, b: Val) -> bool {
        self.leq[a][b]
    }

    pub fn join(&self, a: Val, b: Val) -> Val {
        self.join[a][b]
    }

    pub fn tensor(&self, a: Val, b: Val) -> Val {
        self.tensor[a][b]
    }

    pub fn unit(&self) -> Val {
        self.unit
    }

    pub fn bottom(&self) -> Val {
        self.bottom
    }

    pub fn top(&self) -> Val {
        self.top
    }

    pub fn join_all(&self, vals: impl IntoIterator<Item = Val>) -> Val {
        vals.into_iter().fold(self.bottom, |a, b| self.join(a, b))
    }

    pub fn tensor_all(&self, vals: impl IntoIterator<Item = Val>) -> Val {
        vals.into_iter().fold(self.unit, |a, b| self.tensor(a, b))
    }
}

type EntryFn = dyn Fn(&Elem, &Elem) -> Val + Send + Sync;

#[derive(Clone)]
pub enum Entries {
    /// Missing pairs are bottom.
    Table(Arc<BTreeMap<(Elem, Elem), Val>>),
    /// A decidable entry function; law checks look at lists up to `check_bound` only.
    Pred { f: Arc<EntryFn>, check_bound: Option<usize> },
}

/// An index pair and its entry.
pub type Entry = ((Elem, Elem), Val);

/// Whether a comparison held, a witness pair if not, and how much was compared.
pub type Comparison = (bool, Option<(Elem, Elem)>, Coverage);

/// A matrix `source ⇸ target` of quantale values.
#[derive(Clone)]
pub struct MatVector {
    pub quantale: Arc<Quantale>,
    pub source: SetExpr,
    pub target: SetExpr,
    pub entries: Entries,
}

impl fmt::Debug for MatVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.entries {
            Entries::Table(t) => write!(f, "MatVector({} ⇸ {}, {} entries)", self.source, self.target, t.len()),
            Entries::Pred { check_bound, .. } => {
                write!(f, "MatVector({} ⇸ {}, predicate, bound {:?})", self.source, self.target, check_bound)
            }
        }
    }
}

impl MatVector {
    pub fn table(
        q: &Arc<Quantale>,
        source: &SetExpr,
        target: &SetExpr,
        entries: impl IntoIterator<Item = ((Elem, Elem), Val)>,
    ) -> Result<MatVector> {
        if source.as_fin().is_none() || target.as_fin().is_none() {
            return Err(Error::Presentation(format!("table matrices need finite endpoints, got {source} ⇸ {target}")));
        }
        let mut t = BTreeMap::new();
        for ((x, y), v) in entries {
            if !source.contains(&x) || !target.contains(&y) || v >= q.size() {
                return Err(Error::Presentation(format!("entry ({x}, {y}) = {v} is out of range")));
            }
            if v != q.bottom() {
                t.insert((x, y), v);
            }
        }
        Ok(MatVector { quantale: q.clone(), source: source.clone(), target: target.clone(), entries: Entries::Table(Arc::new(t)) })
    }

    pub fn pred(
        q: &Arc<Quantale>,
        source: &SetExpr,
        target: &SetExpr,
        check_bound: Option<usize>,
        f: impl Fn(&Elem, &Elem) -> Val + Send + Sync + 'static,
    ) -> MatVector {
        MatVector {
            quantale: q.clone(),
            source: source.clone(),
            target: target.clone(),
            entries: Entries::Pred { f: Arc::new(f), check_bound },
        }
    }

    pub fn entry(&self, x: &Elem, y: &Elem) -> Val {
        match &self.entries {
            Entries::Table(t) => t.get(&(x.clone(), y.clone())).copied().unwrap_or(self.quantale.bottom()),
            Entries::Pred { f, .. } => f(x, y),
        }
    }

    pub fn check_bound(&self) -> Option<usize> {
        match &self.entries {
            Entries::Table(_) => None,
            Entries::Pred { check_bound, .. } => *check_bound,
        }
    }

    /// Sets the bound used when this matrix is composed or checked; tables are unaffected.
    pub fn with_bound(&self, bound: usize) -> MatVector {
        match &self.entries {
            Entries::Table(_) => self.clone(),
            Entries::Pred { f, .. } => MatVector { entries: Entries::Pred { f: f.clone(), check_bound: Some(bound) }, ..self.clone() },
        }
    }

    /// Every index pair up to `bound`, with its entry.
    pub fn entries_up_to(&self, bound: usize) -> (Vec<Entry>, Coverage) {
        let xs = self.source.enumerate(bound);
        let ys = self.target.enumerate(bound);
        let mut out = Vec::with_capacity(xs.items.len() * ys.items.len());
        for x in &xs.items {
            for y in &ys.items {
                out.push(((x.clone(), y.clone()), self.entry(x, y)));
            }
        }
        (out, Coverage::from_enumeration(xs.exact && ys.exact, bound))
    }

    /// Whether `self ≤ other` entrywise up to `bound`, with a witness pair if not.
    pub fn leq(&self, other: &MatVector, bound: usize) -> Result<Comparison> {
        self.parallel(other)?;
        let (es, cov) = self.entries_up_to(bound);
        let q = &self.quantale;
        let bad = es.into_iter().find(|((x, y), v)| !q.leq(*v, other.entry(x, y)));
        Ok((bad.is_none(), bad.map(|(p, _)| p), cov))
    }

    /// Entrywise equality up to `bound`.
    pub fn equal(&self, other: &MatVector, bound: usize) -> Result<Comparison> {
        let (a, w, c) = self.leq(other, bound)?;
        if !a {
            return Ok((false, w, c));
        }
        other.leq(self, bound)
    }

    fn parallel(&self, other: &MatVector) -> Result<()> {
        if self.source != other.source || self.target != other.target || self.quantale != other.quantale {
            return Err(Error::BoundaryMismatch(format!("{self:?} vs {other:?}")));
        }
        Ok(())
    }

    /// `(i, j) ↦ self(j, i)`.
    pub fn transpose(&self) -> MatVector {
        match &self.entries {
            Entries::Table(t) => MatVector {
                quantale: self.quantale.clone(),
                source: self.target.clone(),
                target: self.source.clone(),
                entries: Entries::Table(Arc::new(t.iter().map(|((x, y), v)| ((y.clone(), x.clone()), *v)).collect())),
            },
            Entries::Pred { f, check_bound } => {
                let f = f.clone();
                MatVector::pred(&self.quantale, &self.target, &self.source, *check_bound, move |y, x| f(x, y))
            }
        }
    }
}

/// A 2-cell of matrices over a posetal quantale: the entrywise order.
#[derive(Clone, Debug)]
pub struct MatCell {
    pub from: MatVector,
    pub to: MatVector,
    pub checked: Coverage,
}

impl MatCell {
    pub fn new(from: &MatVector, to: &MatVector, bound: usize) -> Result<MatCell> {
        match from.leq(to, bound)? {
            (true, _, checked) => Ok(MatCell { from: from.clone(), to: to.clone(), checked }),
            (false, Some((x, y)), _) => {
                let q = &from.quantale;
                Err(Error::NotACell(format!(
                    "entry ({x}, {y}): {} is not below {}",
                    q.label(from.entry(&x, &y)),
                    q.label(to.entry(&x, &y))
                )))
            }
            (false, None, _) => unreachable!("a failed comparison has a witness"),
        }
    }
}

/// `f` as a matrix: the unit on `(x, f x)` and bottom elsewhere.
pub fn embed_map(q: &Arc<Quantale>, f: &MapF) -> MatVector {
    if let (Some(dom), Some(_)) = (f.domain.as_fin(), f.codomain.as_fin()) {
        let es = dom.iter().filter_map(|x| f.apply(x).ok().map(|y| ((x.clone(), y), q.unit())));
        return MatVector::table(q, &f.domain, &f.codomain, es).expect("a map lands in its codomain");
    }
    let (g, u, b) = (f.clone(), q.unit(), q.bottom());
    MatVector::pred(q, &f.domain, &f.codomain, None, move |x, y| if g.apply(x).as_ref() == Ok(y) { u } else { b })
}

/// The transpose of `embed_map(f)`.
pub fn mat_star(q: &Arc<Quantale>, f: &MapF) -> MatVector {
    embed_map(q, f).transpose()
}

pub fn mat_identity(q: &Arc<Quantale>, x: &SetExpr) -> MatVector {
    embed_map(q, &MapF::identity(x))
}

/// `(a_1 ⋯ a_n)(x, y) = ⋁_{z_1, …} a_1(x, z_1) ⊗ ⋯ ⊗ a_n(z_{n-1}, y)`.
pub fn mat_compose_n(chain: &[MatVector]) -> Result<MatVector> {
    let Some(first) = chain.first() else {
        return Err(Error::ChainMismatch { position: 0, detail: "empty chain has no endpoints".into() });
    };
    let q = first.quantale.clone();
    if chain.len() == 1 {
        return Ok(first.clone());
    }
    for (i, w) in chain.windows(2).enumerate() {
        if w[0].target != w[1].source || *w[0].quantale != *w[1].quantale {
            return Err(Error::ChainMismatch { position: i + 1, detail: format!("{:?} then {:?}", w[0], w[1]) });
        }
    }
    let bound = chain.iter().filter_map(MatVector::check_bound).min();
    let mut mids = Vec::with_capacity(chain.len() - 1);
    for a in &chain[..chain.len() - 1] {
        let e = match bound {
            Some(b) => a.target.enumerate(b),
            None if a.target.exactly_enumerable() => a.target.enumerate(usize::MAX),
            None => return Err(Error::UnboundedComposite(format!("no bound for the intermediate set {}", a.target))),
        };
        mids.push(e.items);
    }
    let source = first.source.clone();
    let target = chain[chain.len() - 1].target.clone();
    let chain: Vec<MatVector> = chain.to_vec();
    let mids = Arc::new(mids);
    let qq = q.clone();
    let eval = move |x: &Elem, y: &Elem| -> Val {
        let mut row: Vec<Val> = mids[0].iter().map(|z| chain[0].entry(x, z)).collect();
        for i in 1..mids.len() {
            row = mids[i]
                .iter()
                .map(|z| qq.join_all(mids[i - 1].iter().zip(&row).map(|(w, &v)| if v == qq.bottom() { v } else { qq.tensor(v, chain[i].entry(w, z)) })))
                .collect();
        }
        let last = &chain[chain.len() - 1];
        qq.join_all(mids[mids.len() - 1].iter().zip(&row).map(|(w, &v)| if v == qq.bottom() { v } else { qq.tensor(v, last.entry(w, y)) }))
    };
    if let (Some(xs), Some(ys)) = (source.as_fin(), target.as_fin()) {
        let mut es = Vec::new();
        for x in xs {
            for y in ys {
                es.push(((x.clone(), y.clone()), eval(x, y)));
            }
        }
        return MatVector::table(&q, &source, &target, es);
    }
    Ok(MatVector::pred(&q, &source, &target, bound, eval))
}

/// `T(r)(u, v) = ⊗_i r(u_i, v_i)` for lists of equal length, bottom otherwise.
pub fn barr_list_extension(r: &MatVector) -> MatVector {
    let q = r.quantale.clone();
    let r2 = r.clone();
    let qq = q.clone();
    MatVector::pred(&q, &SetExpr::fm(r.source.clone()), &SetExpr::fm(r.target.clone()), r.check_bound(), move |u, v| {
        match (u.as_nest(), v.as_nest()) {
            (Some(u), Some(v)) if u.len() == v.len() => qq.tensor_all(u.iter().zip(v).map(|(a, b)| r2.entry(a, b))),
            _ => qq.bottom(),
        }
    })
}

/// `T^k(r)`.
pub fn barr_list_extension_n(k: usize, r: &MatVector) -> MatVector {
    (0..k).fold(r.clone(), |acc, _| barr_list_extension(&acc))
}

/// The relation given by the support of a matrix over `2`, for display.
pub fn support(m: &MatVector, bound: usize) -> Vec<(Elem, Elem)> {
    let (es, _) = m.entries_up_to(bound);
    es.into_iter().filter(|(_, v)| *v != m.quantale.bottom()).map(|(p, _)| p).collect()
}

#[cfg(test)]
mod tests;
