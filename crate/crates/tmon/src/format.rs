//! The text format for finite categories, multicategories, strict monoidal categories and
//! relations. See `docs/format.md` for the grammar.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use tmon_core::algebras::StrictMonCat;
use tmon_core::monoids::{identity_name, FiniteCategory, FiniteMulticat, MorDecl, MulticatTable, OpDecl};
use tmon_core::quantale::{MatVector, Quantale};
use tmon_core::{Elem, SetExpr};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

type PResult<T> = Result<T, ParseError>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    Category(FiniteCategory),
    Multicat(Multicat),
    StrictMon(StrictMonCat),
    Relation(Relation),
}

impl Source {
    pub fn kind(&self) -> &'static str {
        match self {
            Source::Category(_) => "category",
            Source::Multicat(_) => "multicat",
            Source::StrictMon(_) => "strictmon",
            Source::Relation(_) => "relation",
        }
    }

    pub fn name(&self) -> &str {
        match self {
            Source::Category(c) => &c.name,
            Source::Multicat(Multicat::Table(t)) => &t.name,
            Source::Multicat(Multicat::Cyclic { name, .. }) => name,
            Source::StrictMon(s) => &s.category.name,
            Source::Relation(r) => &r.name,
        }
    }
}

/// A multicategory file: an explicit table, or the rule `sum mod n` on the colors `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Multicat {
    Table(MulticatTable),
    Cyclic { name: String, modulus: usize },
}

impl Multicat {
    pub fn build(&self) -> tmon_core::Result<FiniteMulticat> {
        match self {
            Multicat::Table(t) => FiniteMulticat::from_table(t),
            Multicat::Cyclic { name, modulus } => {
                let mut m = FiniteMulticat::cyclic(*modulus);
                m.name = name.clone();
                Ok(m)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RelTarget {
    Object(String),
    List(Vec<String>),
}

/// A boolean relation `x ⇸ x`, or `x ⇸ Tx` when the pairs have list targets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub name: String,
    pub objects: Vec<String>,
    pub pairs: Vec<(String, RelTarget)>,
    pub bound: Option<usize>,
}

impl Relation {
    pub fn is_list_valued(&self) -> bool {
        self.pairs.iter().any(|(_, t)| matches!(t, RelTarget::List(_)))
    }

    pub fn to_matrix(&self, bound: usize) -> tmon_core::Result<MatVector> {
        let q = Arc::new(Quantale::boolean());
        let x = SetExpr::fin(self.objects.iter().map(|o| Elem::atom(o)));
        let key = |s: &str, t: &RelTarget| {
            let t = match t {
                RelTarget::Object(o) => Elem::atom(o),
                RelTarget::List(l) => Elem::nest(l.iter().map(|o| Elem::atom(o)).collect()),
            };
            (Elem::atom(s), t)
        };
        let set: BTreeSet<(Elem, Elem)> = self.pairs.iter().map(|(s, t)| key(s, t)).collect();
        if self.is_list_valued() {
            let (top, bot) = (q.unit(), q.bottom());
            Ok(MatVector::pred(&q, &x, &SetExpr::fm(x.clone()), Some(bound), move |a, l| {
                if set.contains(&(a.clone(), l.clone())) {
                    top
                } else {
                    bot
                }
            }))
        } else {
            let top = q.unit();
            MatVector::table(&q, &x, &x, set.into_iter().map(|p| (p, top)))
        }
    }
}

pub const DEFAULT_NAME: &str = "untitled";

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Sym(&'static str),
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Sym(s) => write!(f, "`{s}`"),
        }
    }
}

const SYMBOLS: [&str; 13] = ["->", ":", ",", "[", "]", "(", ")", "=", ".", "∘", "*", "⊗", "→"];

fn ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

fn lex(line: usize, text: &str) -> PResult<Vec<(Tok, usize)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c == '#' {
            break;
        }
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let col = i + 1;
        if ident_char(c) {
            let start = i;
            while i < chars.len() && ident_char(chars[i]) {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), col));
            continue;
        }
        let rest: String = chars[i..].iter().take(2).collect();
        match SYMBOLS.iter().find(|s| rest.starts_with(**s)) {
            Some(s) => {
                let s = if *s == "→" { "->" } else { s };
                out.push((Tok::Sym(s), col));
                i += if s == "->" && c == '-' { 2 } else { 1 };
            }
            None => return Err(ParseError { line, column: col, message: format!("unexpected character `{c}`") }),
        }
    }
    Ok(out)
}

struct Line {
    no: usize,
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

impl Line {
    fn err<T>(&self, column: usize, message: impl Into<String>) -> PResult<T> {
        Err(ParseError { line: self.no, column, message: message.into() })
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.1)
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    fn finish(&self) -> PResult<()> {
        match self.peek() {
            None => Ok(()),
            Some(t) => self.err(self.col(), format!("unexpected {t} at end of line")),
        }
    }

    fn sym(&mut self, s: &'static str) -> PResult<()> {
        match self.peek() {
            Some(Tok::Sym(x)) if *x == s => {
                self.pos += 1;
                Ok(())
            }
            Some(t) => self.err(self.col(), format!("expected `{s}`, found {t}")),
            None => self.err(self.col(), format!("expected `{s}`, found end of line")),
        }
    }

    fn eat(&mut self, s: &'static str) -> bool {
        if self.peek() == Some(&Tok::Sym(s)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn ident(&mut self, what: &str) -> PResult<(String, usize)> {
        let col = self.col();
        match self.peek().cloned() {
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                Ok((s, col))
            }
            Some(t) => self.err(col, format!("expected {what}, found {t}")),
            None => self.err(col, format!("expected {what}, found end of line")),
        }
    }

    /// `a, b, c` up to the end of the line, possibly empty.
    fn ident_list(&mut self, what: &str) -> PResult<Vec<(String, usize)>> {
        let mut v = Vec::new();
        if self.at_end() {
            return Ok(v);
        }
        loop {
            v.push(self.ident(what)?);
            if !self.eat(",") {
                return Ok(v);
            }
        }
    }

    /// `[a, b, c]`, possibly empty.
    fn bracket_list(&mut self, what: &str) -> PResult<Vec<(String, usize)>> {
        self.sym("[")?;
        let mut v = Vec::new();
        if self.eat("]") {
            return Ok(v);
        }
        loop {
            v.push(self.ident(what)?);
            if self.eat("]") {
                return Ok(v);
            }
            self.sym(",")?;
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    Category,
    Multicat,
    StrictMon,
    Relation,
}

struct Builder {
    kind: Kind,
    name: String,
    objects: Option<Vec<String>>,
    /// name → (sources, target), identities included.
    profiles: BTreeMap<String, (Vec<String>, String)>,
    decls: Vec<(String, Vec<String>, String)>,
    comp: BTreeMap<(String, Vec<String>), String>,
    unit: Option<String>,
    tensor_obj: BTreeMap<(String, String), String>,
    tensor_mor: BTreeMap<(String, String), String>,
    pairs: Vec<(String, RelTarget)>,
    bound: Option<usize>,
    rule: Option<usize>,
}

impl Builder {
    fn objects(&self, l: &Line) -> PResult<&Vec<String>> {
        match &self.objects {
            Some(o) => Ok(o),
            None => l.err(1, "the `objects:` line must come first"),
        }
    }

    fn object(&self, l: &Line, (o, col): &(String, usize)) -> PResult<String> {
        if self.objects(l)?.contains(o) {
            Ok(o.clone())
        } else {
            l.err(*col, format!("unknown object `{o}`"))
        }
    }

    fn profile(&self, l: &Line, (m, col): &(String, usize)) -> PResult<(Vec<String>, String)> {
        match self.profiles.get(m) {
            Some(p) => Ok(p.clone()),
            None => l.err(*col, format!("unknown {} `{m}`", self.op_word())),
        }
    }

    fn op_word(&self) -> &'static str {
        if self.kind == Kind::Multicat {
            "operation"
        } else {
            "morphism"
        }
    }

    fn is_identity(&self, m: &str) -> bool {
        self.objects.as_ref().is_some_and(|os| os.iter().any(|o| identity_name(o) == m))
    }

    fn line(&mut self, l: &mut Line) -> PResult<()> {
        let (kw, col) = l.ident("a keyword")?;
        let allowed = match kw.as_str() {
            "objects" => true,
            "mor" | "comp" => matches!(self.kind, Kind::Category | Kind::StrictMon) || (kw == "comp" && self.kind == Kind::Multicat),
            "op" | "rule" => self.kind == Kind::Multicat,
            "unit" | "tensor" => self.kind == Kind::StrictMon,
            "pairs" | "bound" => self.kind == Kind::Relation,
            _ => return l.err(col, format!("unknown keyword `{kw}`")),
        };
        if !allowed {
            return l.err(col, format!("`{kw}` is not allowed in a {} file", kind_name(self.kind)));
        }
        if kw != "objects" {
            self.objects(l)?;
        }
        if self.rule.is_some() && matches!(kw.as_str(), "op" | "comp") {
            return l.err(col, "a multicategory given by a rule has no declarations");
        }
        match kw.as_str() {
            "objects" => self.objects_line(l, col),
            "mor" | "op" => self.decl(l),
            "comp" => self.comp_line(l),
            "unit" => {
                l.sym(":")?;
                let o = l.ident("an object")?;
                if self.unit.is_some() {
                    return l.err(o.1, "the unit is already given");
                }
                self.unit = Some(self.object(l, &o)?);
                Ok(())
            }
            "tensor" => self.tensor_line(l),
            "pairs" => {
                l.sym(":")?;
                self.pairs_line(l)
            }
            "bound" => {
                l.sym(":")?;
                let n = number(l)?;
                if self.bound.replace(n).is_some() {
                    return l.err(col, "the bound is already given");
                }
                Ok(())
            }
            "rule" => {
                l.sym(":")?;
                self.rule_line(l, col)
            }
            _ => unreachable!(),
        }?;
        l.finish()
    }

    fn objects_line(&mut self, l: &mut Line, col: usize) -> PResult<()> {
        l.sym(":")?;
        if self.objects.is_some() {
            return l.err(col, "objects are already given");
        }
        let mut os = Vec::new();
        for (o, c) in l.ident_list("an object")? {
            if os.contains(&o) {
                return l.err(c, format!("object `{o}` is listed twice"));
            }
            os.push(o);
        }
        for o in &os {
            self.profiles.insert(identity_name(o), (vec![o.clone()], o.clone()));
        }
        self.objects = Some(os);
        Ok(())
    }

    fn decl(&mut self, l: &mut Line) -> PResult<()> {
        let (name, col) = l.ident("a name")?;
        l.sym(":")?;
        let sources = if l.peek() == Some(&Tok::Sym("[")) {
            l.bracket_list("an object")?
        } else {
            vec![l.ident("an object")?]
        };
        let scol = sources.first().map_or(col, |s| s.1);
        l.sym("->")?;
        let target = l.ident("an object")?;
        if self.kind != Kind::Multicat && sources.len() != 1 {
            return l.err(scol, format!("a morphism has exactly one source, `{name}` has {}", sources.len()));
        }
        if self.is_identity(&name) {
            return l.err(col, format!("`{name}` is reserved for an identity"));
        }
        if self.profiles.contains_key(&name) {
            return l.err(col, format!("`{name}` is declared twice"));
        }
        let sources = sources.iter().map(|s| self.object(l, s)).collect::<PResult<Vec<_>>>()?;
        let target = self.object(l, &target)?;
        self.profiles.insert(name.clone(), (sources.clone(), target.clone()));
        self.decls.push((name, sources, target));
        Ok(())
    }

    /// `h = g . f`, or `h = f ∘ (g1, ..., gn)` in a multicategory.
    fn comp_line(&mut self, l: &mut Line) -> PResult<()> {
        let h = l.ident("a name")?;
        l.sym("=")?;
        let first = l.ident("a name")?;
        if !(l.eat(".") || l.eat("∘")) {
            return l.err(l.col(), "expected `.` or `∘`");
        }
        let (outer, inner) = if l.peek() == Some(&Tok::Sym("(")) {
            if self.kind != Kind::Multicat {
                return l.err(l.col(), "tuple composites are only allowed in a multicat file");
            }
            l.sym("(")?;
            let mut gs = vec![l.ident("a name")?];
            while l.eat(",") {
                gs.push(l.ident("a name")?);
            }
            l.sym(")")?;
            (first, gs)
        } else {
            (first, vec![l.ident("a name")?])
        };
        let (hp, fp) = (self.profile(l, &h)?, self.profile(l, &outer)?);
        let gps = inner.iter().map(|g| self.profile(l, g)).collect::<PResult<Vec<_>>>()?;
        if self.is_identity(&outer.0) || inner.iter().all(|g| self.is_identity(&g.0)) {
            return l.err(outer.1, "composites with identities are implicit");
        }
        if fp.0.len() != gps.len() {
            return l.err(outer.1, format!("`{}` takes {} inputs, got {}", outer.0, fp.0.len(), gps.len()));
        }
        for ((g, gp), s) in inner.iter().zip(&gps).zip(&fp.0) {
            if gp.1 != *s {
                return l.err(g.1, format!("`{}` lands in `{}` but `{}` expects `{s}`", g.0, gp.1, outer.0));
            }
        }
        let sources: Vec<String> = gps.iter().flat_map(|p| p.0.clone()).collect();
        if hp.0 != sources || hp.1 != fp.1 {
            return l.err(h.1, format!("`{}` does not have the type of the composite", h.0));
        }
        let key = (outer.0, inner.into_iter().map(|g| g.0).collect());
        if self.comp.insert(key, h.0).is_some() {
            return l.err(h.1, "this composite is already given");
        }
        Ok(())
    }

    /// `a * b = c` on objects or on morphisms.
    fn tensor_line(&mut self, l: &mut Line) -> PResult<()> {
        let a = l.ident("a name")?;
        if !(l.eat("*") || l.eat("⊗")) {
            return l.err(l.col(), "expected `*` or `⊗`");
        }
        let b = l.ident("a name")?;
        l.sym("=")?;
        let c = l.ident("a name")?;
        let objs = self.objects(l)?;
        let key = (a.0.clone(), b.0.clone());
        if objs.contains(&a.0) {
            let (b, c) = (self.object(l, &b)?, self.object(l, &c)?);
            if self.tensor_obj.insert(key, c).is_some() {
                return l.err(a.1, format!("`{} * {b}` is already given", a.0));
            }
            return Ok(());
        }
        let (pa, pb, pc) = (self.profile(l, &a)?, self.profile(l, &b)?, self.profile(l, &c)?);
        for (what, x, y) in [("source", &pa.0[0], &pb.0[0]), ("target", &pa.1, &pb.1)] {
            let want = self.tensor_obj.get(&(x.clone(), y.clone()));
            let got = if what == "source" { &pc.0[0] } else { &pc.1 };
            if want != Some(got) {
                return l.err(c.1, format!("the {what} of `{}` is not `{x} * {y}`", c.0));
            }
        }
        if self.tensor_mor.insert(key, c.0).is_some() {
            return l.err(a.1, format!("`{} * {}` is already given", a.0, b.0));
        }
        Ok(())
    }

    /// `(x, y), (x, [y, z]), ...`
    fn pairs_line(&mut self, l: &mut Line) -> PResult<()> {
        if l.at_end() {
            return Ok(());
        }
        loop {
            l.sym("(")?;
            let s = l.ident("an object")?;
            let s = self.object(l, &s)?;
            l.sym(",")?;
            let col = l.col();
            let t = if l.peek() == Some(&Tok::Sym("[")) {
                let v = l.bracket_list("an object")?;
                RelTarget::List(v.iter().map(|o| self.object(l, o)).collect::<PResult<_>>()?)
            } else {
                let o = l.ident("an object")?;
                RelTarget::Object(self.object(l, &o)?)
            };
            l.sym(")")?;
            if let Some((_, prev)) = self.pairs.first() {
                if matches!(prev, RelTarget::List(_)) != matches!(t, RelTarget::List(_)) {
                    return l.err(col, "pairs mix list targets and plain targets");
                }
            }
            if self.pairs.iter().any(|p| p.0 == s && p.1 == t) {
                return l.err(col, "this pair is already listed");
            }
            self.pairs.push((s, t));
            if !l.eat(",") {
                return Ok(());
            }
        }
    }

    /// `sum mod n`.
    fn rule_line(&mut self, l: &mut Line, col: usize) -> PResult<()> {
        let (w, c) = l.ident("`sum`")?;
        if w != "sum" {
            return l.err(c, format!("unknown rule `{w}`"));
        }
        let (w, c) = l.ident("`mod`")?;
        if w != "mod" {
            return l.err(c, "expected `mod`");
        }
        let n = number(l)?;
        let want: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        if n == 0 || self.objects.as_ref() != Some(&want) {
            return l.err(col, format!("`sum mod {n}` needs the objects 0, ..., {}", n.saturating_sub(1)));
        }
        if !self.decls.is_empty() || self.rule.replace(n).is_some() {
            return l.err(col, "a multicategory given by a rule has no other declarations");
        }
        Ok(())
    }

    fn finish(self, last_line: usize) -> PResult<Source> {
        let at_end = |message: String| Err(ParseError { line: last_line, column: 1, message });
        let objects = match self.objects {
            Some(o) => o,
            None => return at_end("missing `objects:` line".into()),
        };
        let identities: BTreeMap<String, String> = objects.iter().map(|o| (o.clone(), identity_name(o))).collect();
        let category = || FiniteCategory {
            name: self.name.clone(),
            objects: objects.clone(),
            morphisms: self
                .decls
                .iter()
                .map(|(n, s, t)| MorDecl { name: n.clone(), dom: s[0].clone(), cod: t.clone() })
                .collect(),
            identities: identities.clone(),
            comp: self.comp.iter().map(|((g, fs), h)| ((g.clone(), fs[0].clone()), h.clone())).collect(),
        };
        Ok(match self.kind {
            Kind::Category => Source::Category(category()),
            Kind::Multicat => match self.rule {
                Some(modulus) => Source::Multicat(Multicat::Cyclic { name: self.name, modulus }),
                None => Source::Multicat(Multicat::Table(MulticatTable {
                    name: self.name.clone(),
                    colors: objects.clone(),
                    ops: self
                        .decls
                        .iter()
                        .map(|(n, s, t)| OpDecl { name: n.clone(), sources: s.clone(), target: t.clone() })
                        .collect(),
                    identities: identities.clone(),
                    comp: self.comp.clone(),
                })),
            },
            Kind::StrictMon => {
                let Some(unit) = self.unit.clone() else { return at_end("missing `unit:` line".into()) };
                if self.tensor_obj.is_empty() {
                    return at_end("the tensor table is empty".into());
                }
                for a in &objects {
                    for b in &objects {
                        if !self.tensor_obj.contains_key(&(a.clone(), b.clone())) {
                            return at_end(format!("the tensor table misses `{a} * {b}`"));
                        }
                    }
                }
                Source::StrictMon(StrictMonCat {
                    category: category(),
                    unit,
                    tensor_obj: self.tensor_obj.clone(),
                    tensor_mor: self.tensor_mor.clone(),
                })
            }
            Kind::Relation => Source::Relation(Relation { name: self.name, objects, pairs: self.pairs, bound: self.bound }),
        })
    }
}

fn number(l: &mut Line) -> PResult<usize> {
    let (s, col) = l.ident("a number")?;
    match s.parse() {
        Ok(n) => Ok(n),
        Err(_) => l.err(col, format!("expected a number, found `{s}`")),
    }
}

fn kind_name(k: Kind) -> &'static str {
    match k {
        Kind::Category => "category",
        Kind::Multicat => "multicat",
        Kind::StrictMon => "strictmon",
        Kind::Relation => "relation",
    }
}

/// Parses a whole file. The first non-blank line is the header.
pub fn parse(text: &str) -> PResult<Source> {
    let mut builder: Option<Builder> = None;
    let mut last = 1;
    for (i, raw) in text.lines().enumerate() {
        let no = i + 1;
        let toks = lex(no, raw)?;
        if toks.is_empty() {
            continue;
        }
        last = no;
        let mut l = Line { no, toks, pos: 0, end: raw.chars().count() + 1 };
        match builder.as_mut() {
            Some(b) => b.line(&mut l)?,
            None => {
                let (kw, col) = l.ident("a header")?;
                let kind = match kw.as_str() {
                    "category" => Kind::Category,
                    "multicat" => Kind::Multicat,
                    "strictmon" => Kind::StrictMon,
                    "relation" => Kind::Relation,
                    _ => return l.err(col, format!("expected `category`, `multicat`, `strictmon` or `relation`, found `{kw}`")),
                };
                let name = if l.at_end() { DEFAULT_NAME.to_string() } else { l.ident("a name")?.0 };
                l.finish()?;
                builder = Some(Builder {
                    kind,
                    name,
                    objects: None,
                    profiles: BTreeMap::new(),
                    decls: Vec::new(),
                    comp: BTreeMap::new(),
                    unit: None,
                    tensor_obj: BTreeMap::new(),
                    tensor_mor: BTreeMap::new(),
                    pairs: Vec::new(),
                    bound: None,
                    rule: None,
                });
            }
        }
    }
    match builder {
        Some(b) => b.finish(last),
        None => Err(ParseError { line: 1, column: 1, message: "empty file".into() }),
    }
}

fn write_list(f: &mut fmt::Formatter<'_>, key: &str, items: &[String]) -> fmt::Result {
    if items.is_empty() {
        writeln!(f, "{key}:")
    } else {
        writeln!(f, "{key}: {}", items.join(", "))
    }
}

fn write_category_body(f: &mut fmt::Formatter<'_>, c: &FiniteCategory) -> fmt::Result {
    write_list(f, "objects", &c.objects)?;
    for d in &c.morphisms {
        writeln!(f, "mor {} : {} -> {}", d.name, d.dom, d.cod)?;
    }
    for ((g, fm), h) in &c.comp {
        writeln!(f, "comp {h} = {g} . {fm}")?;
    }
    Ok(())
}

/// The canonical text of a source; parsing it gives back an equal value.
impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.kind(), self.name())?;
        match self {
            Source::Category(c) => write_category_body(f, c),
            Source::Multicat(Multicat::Cyclic { modulus, .. }) => {
                let os: Vec<String> = (0..*modulus).map(|i| i.to_string()).collect();
                writeln!(f, "objects: {}", os.join(", "))?;
                writeln!(f, "rule: sum mod {modulus}")
            }
            Source::Multicat(Multicat::Table(t)) => {
                write_list(f, "objects", &t.colors)?;
                for d in &t.ops {
                    writeln!(f, "op {} : [{}] -> {}", d.name, d.sources.join(", "), d.target)?;
                }
                for ((g, gs), h) in &t.comp {
                    writeln!(f, "comp {h} = {g} ∘ ({})", gs.join(", "))?;
                }
                Ok(())
            }
            Source::StrictMon(s) => {
                write_category_body(f, &s.category)?;
                writeln!(f, "unit: {}", s.unit)?;
                for ((a, b), c) in s.tensor_obj.iter().chain(&s.tensor_mor) {
                    writeln!(f, "tensor {a} * {b} = {c}")?;
                }
                Ok(())
            }
            Source::Relation(r) => {
                write_list(f, "objects", &r.objects)?;
                let ps: Vec<String> = r
                    .pairs
                    .iter()
                    .map(|(s, t)| match t {
                        RelTarget::Object(o) => format!("({s}, {o})"),
                        RelTarget::List(l) => format!("({s}, [{}])", l.join(", ")),
                    })
                    .collect();
                write_list(f, "pairs", &ps)?;
                match r.bound {
                    Some(n) => writeln!(f, "bound: {n}"),
                    None => Ok(()),
                }
            }
        }
    }
}
