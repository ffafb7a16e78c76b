use serde::{Deserialize, Serialize};
use std::fmt;

use crate::{Error, Result};

/// Vertex identifier. Numbered vertices play the residue role in derived
/// embeddings, lettered vertices come from vortices and table data, and
/// crossing vertices are the auxiliary degree-4 vertices of a planarized
/// drawing. The derived order (numbered < lettered < crossing) is the fixed
/// total order used for canonical rotation starts.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum VertexId {
    Num(i64),
    Letter(char, Option<u32>),
    Cross(u32),
}

impl VertexId {
    pub fn num(n: i64) -> Self {
        VertexId::Num(n)
    }

    pub fn letter(c: char) -> Self {
        VertexId::Letter(c, None)
    }

    pub fn lettered(c: char, sub: u32) -> Self {
        VertexId::Letter(c, Some(sub))
    }

    pub fn is_numbered(&self) -> bool {
        matches!(self, VertexId::Num(_))
    }

    pub fn is_lettered(&self) -> bool {
        matches!(self, VertexId::Letter(..))
    }

    pub fn is_crossing(&self) -> bool {
        matches!(self, VertexId::Cross(_))
    }

    /// Parses a vertex token: an integer, or a letter with an optional
    /// (possibly underscore-separated) numeric subscript, e.g. `7`, `x`,
    /// `w0`, `c_1`.
    pub fn parse(tok: &str) -> Result<Self> {
        if tok.is_empty() {
            return Err(Error::input("empty vertex token"));
        }
        if tok.chars().next().unwrap().is_ascii_digit() || tok.starts_with('-') {
            return tok
                .parse::<i64>()
                .map(VertexId::Num)
                .map_err(|_| Error::input(format!("bad vertex token `{tok}`")));
        }
        let mut chars = tok.chars();
        let c = chars.next().unwrap();
        if !c.is_ascii_alphabetic() {
            return Err(Error::input(format!("bad vertex token `{tok}`")));
        }
        let rest: String = chars.collect();
        if rest.is_empty() {
            return Ok(VertexId::Letter(c, None));
        }
        let digits = rest.strip_prefix('_').unwrap_or(&rest);
        digits
            .parse::<u32>()
            .map(|s| VertexId::Letter(c, Some(s)))
            .map_err(|_| Error::input(format!("bad vertex token `{tok}`")))
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexId::Num(n) => write!(f, "{n}"),
            VertexId::Letter(c, None) => write!(f, "{c}"),
            VertexId::Letter(c, Some(s)) => write!(f, "{c}{s}"),
            VertexId::Cross(k) => write!(f, "X{k}"),
        }
    }
}

impl fmt::Debug for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_tokens() {
        assert_eq!(VertexId::parse("7").unwrap(), VertexId::num(7));
        assert_eq!(VertexId::parse("x").unwrap(), VertexId::letter('x'));
        assert_eq!(VertexId::parse("w0").unwrap(), VertexId::lettered('w', 0));
        assert_eq!(VertexId::parse("c_1").unwrap(), VertexId::lettered('c', 1));
        assert!(VertexId::parse("").is_err());
        assert!(VertexId::parse("3x").is_err());
    }

    #[test]
    fn order_numbered_before_lettered() {
        let mut v = vec![
            VertexId::letter('a'),
            VertexId::num(3),
            VertexId::Cross(0),
            VertexId::num(0),
            VertexId::lettered('a', 1),
        ];
        v.sort();
        assert_eq!(
            v,
            vec![
                VertexId::num(0),
                VertexId::num(3),
                VertexId::letter('a'),
                VertexId::lettered('a', 1),
                VertexId::Cross(0),
            ]
        );
    }
}
