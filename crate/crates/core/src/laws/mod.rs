//! Named law suites over deterministic instance batteries, with counterexample reporting.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::coverage::Coverage;
use crate::error::{Error, Result};
use crate::verdict::Verdict;

mod pasting;
mod suites;

pub use pasting::{diagram_equal, kl_coherence_pastings, Pasting};

/// Random instances added to each fixed battery unless configured otherwise.
pub const DEFAULT_SAMPLES: usize = 4;

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Span,
    Mat2,
    Monad,
    Kleisli,
    Monoid,
    TMonoid,
    Algebra,
    Adjunction,
    Prof,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Span,
        Suite::Mat2,
        Suite::Monad,
        Suite::Kleisli,
        Suite::Monoid,
        Suite::TMonoid,
        Suite::Algebra,
        Suite::Adjunction,
        Suite::Prof,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Span => "span",
            Suite::Mat2 => "mat2",
            Suite::Monad => "monad",
            Suite::Kleisli => "kleisli",
            Suite::Monoid => "monoid",
            Suite::TMonoid => "tmonoid",
            Suite::Algebra => "algebra",
            Suite::Adjunction => "adjunction",
            Suite::Prof => "prof",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Presentation(format!("unknown suite `{s}`")))
    }
}

/// A deliberate defect injected into one instance of a suite, breaking a known law.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mutation {
    /// monad: concatenation reverses its result when an outer list of length ≥ 2 holds a
    /// non-singleton list. Both unit laws only see singletons or outer singletons.
    ReversingMult,
    /// monoid: `r1∘r1 = r1` in `ℤ/3`.
    Composition,
    /// tmonoid: the same redirected composite in the unary multicategory of `ℤ/3`.
    MulticatComposition,
    /// algebra: `1⊗1 = 0` in discrete `ℤ/3`.
    Tensor,
    /// adjunction: the counit into discrete `ℤ/3` followed by negation.
    TwistedCounit,
    /// mat2: the multi-preorder loses its entries `(x, [x])`.
    Reflexivity,
    /// prof: the right action on the identity module of `{1, e}` multiplied by the idempotent `e`.
    IdempotentAction,
}

impl Mutation {
    pub const ALL: [Mutation; 7] = [
        Mutation::ReversingMult,
        Mutation::Composition,
        Mutation::MulticatComposition,
        Mutation::Tensor,
        Mutation::TwistedCounit,
        Mutation::Reflexivity,
        Mutation::IdempotentAction,
    ];

    pub fn suite(self) -> Suite {
        match self {
            Mutation::ReversingMult => Suite::Monad,
            Mutation::Composition => Suite::Monoid,
            Mutation::MulticatComposition => Suite::TMonoid,
            Mutation::Tensor => Suite::Algebra,
            Mutation::TwistedCounit => Suite::Adjunction,
            Mutation::Reflexivity => Suite::Mat2,
            Mutation::IdempotentAction => Suite::Prof,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Mutation::ReversingMult => "reversing-mult",
            Mutation::Composition => "composition",
            Mutation::MulticatComposition => "multicat-composition",
            Mutation::Tensor => "tensor",
            Mutation::TwistedCounit => "twisted-counit",
            Mutation::Reflexivity => "reflexivity",
            Mutation::IdempotentAction => "idempotent-action",
        }
    }

    /// Prefixes of the law names the mutation is built to break. Exactly these fail.
    pub fn targets(self) -> &'static [&'static str] {
        match self {
            Mutation::ReversingMult => &["monad associativity"],
            Mutation::Composition => &["monoid associativity"],
            Mutation::MulticatComposition => &["T-monoid associativity"],
            Mutation::Tensor => &["action associativity", "sigma associativity"],
            Mutation::TwistedCounit => &["triangle (Kε)(ηK) = 1"],
            Mutation::Reflexivity => &["unit: e ≤ a"],
            Mutation::IdempotentAction => &["right action unit"],
        }
    }

    /// Whether `law` is one the mutation targets.
    pub fn hits(self, law: &str) -> bool {
        self.targets().iter().any(|t| law.starts_with(t))
    }
}

impl fmt::Display for Mutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Mutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Mutation> {
        Mutation::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Presentation(format!("unknown mutation `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub suite: Suite,
    /// Random instances on top of the fixed battery; suites with a fixed battery only ignore it.
    pub samples: usize,
    pub seed: u64,
    pub bound: usize,
    pub mutation: Option<Mutation>,
}

impl SuiteConfig {
    pub fn new(suite: Suite, seed: u64, bound: usize) -> SuiteConfig {
        SuiteConfig { suite, samples: DEFAULT_SAMPLES, seed, bound, mutation: None }
    }

    pub fn with_samples(self, samples: usize) -> SuiteConfig {
        SuiteConfig { samples, ..self }
    }

    pub fn with_mutation(self, mutation: Mutation) -> SuiteConfig {
        SuiteConfig { mutation: Some(mutation), ..self }
    }
}

/// One law checked on one instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawReport {
    pub law: String,
    pub instance: String,
    pub ok: bool,
    /// `exact` or the enumeration bound that limited the check.
    pub bound: Coverage,
    pub witness: Option<String>,
    pub seed: u64,
}

impl LawReport {
    pub fn from_verdict(instance: &str, seed: u64, v: Verdict) -> LawReport {
        LawReport { law: v.name, instance: instance.to_string(), ok: v.ok, bound: v.coverage, witness: v.witness, seed }
    }

    pub fn verdict(&self) -> &'static str {
        if self.ok {
            "pass"
        } else {
            "fail"
        }
    }
}

impl fmt::Display for LawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} | {} | {} | {} | seed {}", self.verdict(), self.instance, self.law, self.bound, self.seed)?;
        if let Some(w) = &self.witness {
            write!(f, " | witness: {w}")?;
        }
        Ok(())
    }
}

/// Runs every law of `cfg.suite` on its battery. Reports come out in battery order and, within
/// an instance, in the order the laws are checked.
pub fn run_suite(cfg: &SuiteConfig) -> Result<Vec<LawReport>> {
    if let Some(m) = cfg.mutation {
        if m.suite() != cfg.suite {
            return Err(Error::Presentation(format!("mutation `{m}` belongs to the {} suite, not {}", m.suite(), cfg.suite)));
        }
    }
    let mut out = Reports { seed: cfg.seed, items: Vec::new() };
    match cfg.suite {
        Suite::Span => suites::span(cfg, &mut out),
        Suite::Mat2 => suites::mat2(cfg, &mut out),
        Suite::Monad => suites::monad(cfg, &mut out),
        Suite::Kleisli => suites::kleisli(cfg, &mut out),
        Suite::Monoid => suites::monoid(cfg, &mut out),
        Suite::TMonoid => suites::tmonoid(cfg, &mut out),
        Suite::Algebra => suites::algebra(cfg, &mut out),
        Suite::Adjunction => suites::adjunction(cfg, &mut out),
        Suite::Prof => suites::prof(cfg, &mut out),
    }
    Ok(out.items)
}

struct Reports {
    seed: u64,
    items: Vec<LawReport>,
}

impl Reports {
    fn push(&mut self, instance: &str, v: Verdict) {
        self.items.push(LawReport::from_verdict(instance, self.seed, v));
    }

    fn extend(&mut self, instance: &str, vs: impl IntoIterator<Item = Verdict>) {
        for v in vs {
            self.push(instance, v);
        }
    }

    /// A check that could not be built counts as a failure of `law`.
    fn extend_result(&mut self, instance: &str, law: &str, vs: Result<Vec<Verdict>>) {
        match vs {
            Ok(vs) => self.extend(instance, vs),
            Err(e) => self.push(instance, Verdict::from_error(law, &e)),
        }
    }
}
