//! The subcommands, independent of argument parsing and printing.

use std::path::{Path, PathBuf};

use tmon_core::algebras::{check_talgebra, free_talgebra, smc_to_talgebra, TAlgebra};
use tmon_core::laws::{run_suite, LawReport, Mutation, Suite, SuiteConfig};
use tmon_core::monoids::mat::{check_mat_monoid, check_mat_tmonoid};
use tmon_core::monoids::{cat_to_monoid, check_monoid, check_tmonoid, monoid_to_cat, multicat_to_tmonoid, FiniteCategory, FiniteMulticat, TMonoid};
use tmon_core::staradj::{check_triangles, hom_bijection_oracle, underlying_tmonoid, DEFAULT_CAP};
use tmon_core::{Coverage, Elem, Verdict};

use crate::format::{parse, ParseError, Source};
use crate::report::{Document, HomEntry, Listing};

pub const DEFAULT_BOUND: usize = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{}: {source}", path.display())]
    Parse { path: PathBuf, source: ParseError },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] tmon_core::Error),
}

/// What a command produced. Exit status 1 means some law failed.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub listing: Option<Listing>,
    pub reports: Vec<LawReport>,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.reports.iter().all(|r| r.ok)
    }

    pub fn document(&self) -> Document {
        Document::new(self.listing.clone(), &self.reports)
    }
}

pub fn load(path: &Path) -> Result<Source, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })?;
    parse(&text).map_err(|source| CliError::Parse { path: path.into(), source })
}

fn reports(instance: &str, seed: u64, vs: impl IntoIterator<Item = Verdict>) -> Vec<LawReport> {
    vs.into_iter().map(|v| LawReport::from_verdict(instance, seed, v)).collect()
}

fn instance(s: &Source) -> String {
    format!("{} {}", s.kind(), s.name())
}

/// The multicategory of a `multicat` file, or of a `category` file read as unary.
fn multicat_of(s: &Source, what: &str) -> Result<FiniteMulticat, CliError> {
    match s {
        Source::Multicat(m) => Ok(m.build()?),
        Source::Category(c) => Ok(FiniteMulticat::from_table(&c.to_multicat_table())?),
        _ => Err(CliError::Usage(format!("{what} must be a multicat or category file, got {}", s.kind()))),
    }
}

fn strictmon_of(s: &Source, what: &str) -> Result<TAlgebra, CliError> {
    match s {
        Source::StrictMon(m) => Ok(smc_to_talgebra(m)?),
        _ => Err(CliError::Usage(format!("{what} must be a strictmon file, got {}", s.kind()))),
    }
}

fn round_trip(c: &FiniteCategory) -> Verdict {
    let law = "presentation round trip";
    let back = cat_to_monoid(c).and_then(|m| monoid_to_cat(&m));
    match back.map(FiniteCategory::normalized) {
        Ok(b) if b == c.clone().normalized() => Verdict::pass(law, Coverage::Exact),
        Ok(b) => Verdict::fail(law, Coverage::Exact, format!("read back {b:?}")),
        Err(e) => Verdict::from_error(law, &e),
    }
}

/// The axioms of whatever the file describes. `bound` overrides a relation's own bound.
pub fn check(path: &Path, bound: Option<usize>, seed: u64) -> Result<Outcome, CliError> {
    let s = load(path)?;
    let inst = instance(&s);
    let b = bound.unwrap_or(DEFAULT_BOUND);
    let vs = match &s {
        Source::Category(c) => {
            let mut vs = check_monoid(&cat_to_monoid(c)?, b);
            vs.push(round_trip(c));
            vs
        }
        Source::Multicat(m) => check_tmonoid(&multicat_to_tmonoid(&m.build()?)?, b),
        Source::StrictMon(_) => check_talgebra(&strictmon_of(&s, "the file")?, b),
        Source::Relation(r) => {
            let b = bound.or(r.bound).unwrap_or(DEFAULT_BOUND);
            let a = r.to_matrix(b)?;
            if r.is_list_valued() {
                check_mat_tmonoid(&a, b)?
            } else {
                check_mat_monoid(&a, b)?
            }
        }
    };
    Ok(Outcome { listing: None, reports: reports(&inst, seed, vs) })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Emit {
    Homs,
    Counts,
}

/// Lists in the order of length, then of their text.
fn sort_lists(v: &mut [Elem]) {
    v.sort_by_cached_key(|e| (e.as_nest().map_or(0, <[Elem]>::len), e.to_string()));
}

/// Objects and hom-sets of the free strict monoidal category on a multicategory, on lists of
/// length at most `max_len`. `counts` lists every pair of objects; `homs` only nonempty ones.
pub fn free_monoidal(path: &Path, max_len: usize, emit: Emit) -> Result<Outcome, CliError> {
    let s = load(path)?;
    let t = multicat_to_tmonoid(&multicat_of(&s, "the file")?)?;
    let m = free_talgebra(&t, max_len.max(1))?;
    let mut objects = m.object().enumerate(max_len).items;
    objects.retain(|u| u.as_nest().is_some_and(|v| v.len() <= max_len));
    sort_lists(&mut objects);
    let mut homs = Vec::new();
    for u in &objects {
        for v in &objects {
            let fiber = m.vector().fiber(v, u, max_len.max(1) * max_len.max(1));
            let elems: Vec<String> = fiber.items.iter().map(Elem::to_string).collect();
            if emit == Emit::Homs && elems.is_empty() {
                continue;
            }
            homs.push(HomEntry {
                source: u.to_string(),
                target: v.to_string(),
                count: elems.len(),
                elements: (emit == Emit::Homs).then_some(elems),
            });
        }
    }
    Ok(Outcome { listing: Some(Listing { objects: objects.iter().map(Elem::to_string).collect(), homs }), reports: Vec::new() })
}

/// The operations `ℓ → y` of the underlying multicategory of a strict monoidal category, for
/// source lists up to length `max_arity`. Each operation is shown as its morphism `⊗ℓ → y`.
pub fn underlying(path: &Path, max_arity: usize) -> Result<Outcome, CliError> {
    let s = load(path)?;
    let a = strictmon_of(&s, "the file")?;
    let k = underlying_tmonoid(&a)?;
    let mut lists = tmon_core::SetExpr::fm(k.object.clone()).enumerate(max_arity).items;
    lists.retain(|l| l.as_nest().is_some_and(|v| v.len() <= max_arity));
    sort_lists(&mut lists);
    let colors = k.object.enumerate(1).items;
    let mut homs = Vec::new();
    for l in &lists {
        for y in &colors {
            let ops = k.vector.fiber(y, l, max_arity.max(1)).items;
            let elements: Vec<String> = ops
                .iter()
                .map(|op| op.as_tuple().map_or_else(|| op.to_string(), |p| p[0].to_string()))
                .collect();
            homs.push(HomEntry { source: l.to_string(), target: y.to_string(), count: elements.len(), elements: Some(elements) });
        }
    }
    Ok(Outcome { listing: Some(Listing { objects: Vec::new(), homs }), reports: Vec::new() })
}

fn prefixed(p: &str, vs: Vec<Verdict>) -> Vec<Verdict> {
    vs.into_iter().map(|mut v| {
        v.name = format!("{p}{}", v.name);
        v
    }).collect()
}

/// Validates both structures, then checks the triangle identities of the adjunction between
/// them and compares both hom-sets by enumeration. At bound 0 nothing is enumerated and the
/// check passes vacuously.
pub fn adjunction_check(multicat: &Path, strictmon: &Path, bound: usize, seed: u64) -> Result<Outcome, CliError> {
    let (ms, ss) = (load(multicat)?, load(strictmon)?);
    let inst = format!("{} ⊣ {}", instance(&ms), instance(&ss));
    let t: TMonoid = multicat_to_tmonoid(&multicat_of(&ms, "the first file")?)?;
    let a = strictmon_of(&ss, "the second file")?;
    if bound == 0 {
        let v = Verdict::pass("adjunction (vacuous: nothing enumerated)", Coverage::UpTo(0));
        return Ok(Outcome { listing: None, reports: reports(&inst, seed, [v]) });
    }
    let mut vs = prefixed("multicat: ", check_tmonoid(&t, bound));
    vs.extend(prefixed("strictmon: ", check_talgebra(&a, bound)));
    if vs.iter().all(|v| v.ok) {
        vs.extend(check_triangles(&t, &a, bound)?);
        vs.extend(hom_bijection_oracle(&t, &a, bound, DEFAULT_CAP)?.verdicts);
    }
    Ok(Outcome { listing: None, reports: reports(&inst, seed, vs) })
}

/// `suite` is a suite name or `all`.
pub fn laws(suite: &str, samples: usize, seed: u64, bound: usize, mutation: Option<&str>) -> Result<Outcome, CliError> {
    let usage = |e: tmon_core::Error| match e {
        tmon_core::Error::Presentation(m) => CliError::Usage(m),
        e => CliError::Usage(e.to_string()),
    };
    let suites: Vec<Suite> = if suite == "all" { Suite::ALL.to_vec() } else { vec![suite.parse().map_err(usage)?] };
    let mutation: Option<Mutation> = mutation.map(str::parse).transpose().map_err(usage)?;
    if let Some(m) = mutation {
        if !suites.contains(&m.suite()) {
            return Err(CliError::Usage(format!("mutation `{m}` belongs to the {} suite", m.suite())));
        }
    }
    let mut out = Vec::new();
    for s in suites {
        let mut cfg = SuiteConfig::new(s, seed, bound).with_samples(samples);
        if let Some(m) = mutation.filter(|m| m.suite() == s) {
            cfg = cfg.with_mutation(m);
        }
        out.extend(run_suite(&cfg)?);
    }
    Ok(Outcome { listing: None, reports: out })
}
