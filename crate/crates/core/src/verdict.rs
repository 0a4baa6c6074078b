//! Named pass/fail outcomes of law checks.

use alloc::format;
use alloc::string::{String, ToString};

use crate::coverage::Coverage;
use crate::error::{Error, Result};
use crate::finset::{Elem, SetExpr};

/// Outcome of one law or property check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub name: String,
    pub ok: bool,
    pub coverage: Coverage,
    pub witness: Option<String>,
}

impl Verdict {
    pub fn pass(name: &str, coverage: Coverage) -> Verdict {
        Verdict { name: name.to_string(), ok: true, coverage, witness: None }
    }

    pub fn fail(name: &str, coverage: Coverage, witness: String) -> Verdict {
        Verdict { name: name.to_string(), ok: false, coverage, witness: Some(witness) }
    }

    pub fn from_error(name: &str, err: &Error) -> Verdict {
        Verdict::fail(name, Coverage::Exact, err.to_string())
    }

    /// Turns a check that may error into a verdict.
    pub fn from_result(name: &str, r: Result<Verdict>) -> Verdict {
        r.unwrap_or_else(|e| Verdict::from_error(name, &e))
    }
}

/// Checks `law` at every element of `dom` up to `bound`. The first element where `law` returns a
/// complaint or an error becomes the witness.
pub fn pointwise(
    name: &str,
    dom: &SetExpr,
    bound: usize,
    mut law: impl FnMut(&Elem) -> Result<Option<String>>,
) -> Verdict {
    let items = dom.enumerate(bound);
    let cov = Coverage::from_enumeration(items.exact, bound);
    for e in &items.items {
        match law(e) {
            Ok(None) => {}
            Ok(Some(why)) => return Verdict::fail(name, cov, format!("at {e}: {why}")),
            Err(err) => return Verdict::fail(name, cov, format!("at {e}: {err}")),
        }
    }
    Verdict::pass(name, cov)
}

/// `Some(complaint)` when the two sides differ.
pub fn differ(lhs: &Elem, rhs: &Elem) -> Option<String> {
    (lhs != rhs).then(|| format!("{lhs} vs {rhs}"))
}
