//! Textual connection sets: `"(0,1),(2,0)"`, or bare integers such as
//! `"1,5"` for cyclic groups. The empty string is the empty set.

use crate::error::{invalid, Error, Result};
use crate::group::{ElementSet, GroupSpec};

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            position: self.pos,
            message: message.into(),
        }
    }

    fn expect(&mut self, ch: u8) -> Result<()> {
        match self.peek() {
            Some(c) if c == ch => {
                self.pos += 1;
                Ok(())
            }
            Some(c) => Err(self.error(format!("expected '{}', found '{}'", ch as char, c as char))),
            None => Err(self.error(format!("expected '{}', found end of input", ch as char))),
        }
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.src.get(self.pos), Some(b'-') | Some(b'+')) {
            self.pos += 1;
        }
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii slice");
        text.parse().map_err(|_| Error::Parse {
            position: start,
            message: "expected an integer".into(),
        })
    }
}

/// Parses a connection set over `g`.
///
/// With `reduce` set, coordinates are taken modulo their factor; otherwise a
/// coordinate outside `[0, n_j)` is an error. The identity is always rejected.
pub fn parse_set(spec: &str, g: &GroupSpec, reduce: bool) -> Result<ElementSet> {
    let mut cur = Cursor {
        src: spec.as_bytes(),
        pos: 0,
    };
    let mut out = ElementSet::new();
    if cur.peek().is_none() {
        return Ok(out);
    }
    loop {
        let start = {
            cur.skip_ws();
            cur.pos
        };
        let coords = if cur.peek() == Some(b'(') {
            cur.pos += 1;
            let mut coords = vec![cur.integer()?];
            while cur.peek() == Some(b',') {
                cur.pos += 1;
                coords.push(cur.integer()?);
            }
            cur.expect(b')')?;
            coords
        } else {
            vec![cur.integer()?]
        };
        let at = |e: Error| match e {
            Error::InvalidInput(message) => Error::Parse {
                position: start,
                message,
            },
            other => other,
        };
        if coords.len() != g.rank() {
            return Err(at(invalid(format!(
                "element has {} coordinates, group {} has rank {}",
                coords.len(),
                g,
                g.rank()
            ))));
        }
        let x = if reduce {
            g.element(&coords)
        } else {
            g.element_strict(&coords)
        }
        .map_err(at)?;
        if x.is_zero() {
            return Err(at(invalid("the identity element is excluded from connection sets")));
        }
        out.insert(x);
        match cur.peek() {
            None => return Ok(out),
            Some(b',') => cur.pos += 1,
            Some(c) => return Err(cur.error(format!("expected ',' or end of input, found '{}'", c as char))),
        }
    }
}
