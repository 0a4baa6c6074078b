use core::fmt;

/// How much of a possibly infinite domain a check covered.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Coverage {
    Exact,
    UpTo(usize),
}

impl Coverage {
    pub fn from_enumeration(exact: bool, bound: usize) -> Coverage {
        if exact {
            Coverage::Exact
        } else {
            Coverage::UpTo(bound)
        }
    }

    /// The weaker of two coverages.
    pub fn meet(self, other: Coverage) -> Coverage {
        match (self, other) {
            (Coverage::Exact, c) | (c, Coverage::Exact) => c,
            (Coverage::UpTo(a), Coverage::UpTo(b)) => Coverage::UpTo(a.min(b)),
        }
    }

    pub fn is_exact(self) -> bool {
        self == Coverage::Exact
    }
}

impl fmt::Display for Coverage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coverage::Exact => write!(f, "exact"),
            Coverage::UpTo(b) => write!(f, "bound {b}"),
        }
    }
}
