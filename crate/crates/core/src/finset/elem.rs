use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

/// An element of a finite set or of an iterated free monoid over one.
///
/// `Tuple` holds the elements of (wide) pullback apexes.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Elem {
    Atom(Arc<str>),
    Nest(Vec<Elem>),
    Tuple(Vec<Elem>),
}

impl Elem {
    pub fn atom(name: &str) -> Self {
        Elem::Atom(Arc::from(name))
    }

    pub fn nest(items: Vec<Elem>) -> Self {
        Elem::Nest(items)
    }

    pub fn tuple(items: Vec<Elem>) -> Self {
        Elem::Tuple(items)
    }

    pub fn pair(a: Elem, b: Elem) -> Self {
        Elem::Tuple(alloc::vec![a, b])
    }

    pub fn empty_list() -> Self {
        Elem::Nest(Vec::new())
    }

    pub fn as_atom(&self) -> Option<&str> {
        match self {
            Elem::Atom(s) => Some(s),
            _ => None,
        }
    }

    pub fn as_nest(&self) -> Option<&[Elem]> {
        match self {
            Elem::Nest(v) => Some(v),
            _ => None,
        }
    }

    pub fn as_tuple(&self) -> Option<&[Elem]> {
        match self {
            Elem::Tuple(v) => Some(v),
            _ => None,
        }
    }

    /// Nesting depth when every branch has the same number of list levels above its atoms.
    ///
    /// Empty lists are compatible with any depth of at least one.
    pub fn uniform_depth(&self) -> Option<usize> {
        fn go(e: &Elem) -> Option<Option<usize>> {
            match e {
                Elem::Atom(_) | Elem::Tuple(_) => Some(Some(0)),
                Elem::Nest(v) => {
                    let mut depth: Option<usize> = None;
                    for c in v {
                        match go(c)? {
                            None => {}
                            Some(d) => match depth {
                                None => depth = Some(d),
                                Some(prev) if prev == d => {}
                                Some(_) => return None,
                            },
                        }
                    }
                    Some(depth.map(|d| d + 1))
                }
            }
        }
        match go(self)? {
            Some(d) => Some(d),
            None => Some(1),
        }
    }

    /// Parses the serialization produced by `Display`.
    pub fn parse(text: &str) -> Result<Elem, String> {
        let mut p = Parser { s: text.as_bytes(), pos: 0, text };
        let e = p.elem()?;
        p.skip_ws();
        if p.pos != p.s.len() {
            return Err(alloc::format!("trailing input at byte {}", p.pos));
        }
        Ok(e)
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    text: &'a str,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn elem(&mut self) -> Result<Elem, String> {
        self.skip_ws();
        match self.s.get(self.pos) {
            Some(b'[') => Ok(Elem::Nest(self.seq(b']')?)),
            Some(b'(') => Ok(Elem::Tuple(self.seq(b')')?)),
            Some(_) => {
                let start = self.pos;
                while self.pos < self.s.len() && !b"[](),".contains(&self.s[self.pos]) && !self.s[self.pos].is_ascii_whitespace() {
                    self.pos += 1;
                }
                if start == self.pos {
                    return Err(alloc::format!("unexpected character at byte {}", self.pos));
                }
                Ok(Elem::atom(&self.text[start..self.pos]))
            }
            None => Err("unexpected end of input".to_string()),
        }
    }

    fn seq(&mut self, close: u8) -> Result<Vec<Elem>, String> {
        self.pos += 1;
        let mut out = Vec::new();
        self.skip_ws();
        if self.s.get(self.pos) == Some(&close) {
            self.pos += 1;
            return Ok(out);
        }
        loop {
            out.push(self.elem()?);
            self.skip_ws();
            match self.s.get(self.pos) {
                Some(b',') => self.pos += 1,
                Some(c) if *c == close => {
                    self.pos += 1;
                    return Ok(out);
                }
                _ => return Err(alloc::format!("expected ',' or closing bracket at byte {}", self.pos)),
            }
        }
    }
}

fn write_seq(f: &mut fmt::Formatter<'_>, items: &[Elem], open: char, close: char) -> fmt::Result {
    write!(f, "{open}")?;
    for (i, e) in items.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{e}")?;
    }
    write!(f, "{close}")
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Elem::Atom(s) => f.write_str(s),
            Elem::Nest(v) => write_seq(f, v, '[', ']'),
            Elem::Tuple(v) => write_seq(f, v, '(', ')'),
        }
    }
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<&str> for Elem {
    fn from(s: &str) -> Self {
        Elem::atom(s)
    }
}

/// Sorts elements by their serialization, the canonical enumeration order.
pub fn canonical_sort(items: &mut [Elem]) {
    items.sort_by_cached_key(|e| e.to_string());
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn display_and_parse_round_trip() {
        let e = Elem::nest(vec![Elem::atom("p"), Elem::pair(Elem::atom("q"), Elem::empty_list())]);
        assert_eq!(e.to_string(), "[p,(q,[])]");
        assert_eq!(Elem::parse("[p, (q, [])]").unwrap(), e);
    }

    #[test]
    fn uniform_depth() {
        let p = Elem::atom("p");
        assert_eq!(p.uniform_depth(), Some(0));
        let l = Elem::nest(vec![Elem::nest(vec![p.clone()]), Elem::empty_list()]);
        assert_eq!(l.uniform_depth(), Some(2));
        let bad = Elem::nest(vec![p.clone(), Elem::nest(vec![p])]);
        assert_eq!(bad.uniform_depth(), None);
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(Elem::parse("[p,").is_err());
        assert!(Elem::parse("p q").is_err());
    }
}
