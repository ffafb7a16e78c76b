//! Text formats. Rotation systems are exchanged in a line-oriented format:
//!
//! ```text
//! # comment
//! 0. 1 5 4 2
//! w0. 0 2 4
//! twisted: (0,1) (2,4)
//! ```
//!
//! A drawing file is the rotation-system file of the subembedding followed
//! by a `crossings:` section with one `(u,v) over (x,y)` line per ledger
//! record. The JSON export mirrors the drawing format field for field.

use std::collections::{BTreeMap, BTreeSet};

use serde_json::{json, Value};

use crate::graph::Edge;
use crate::rotation::RotationSystem;
use crate::vertex::VertexId;
use crate::{Error, Result};

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

/// Parses an edge written as `(u,v)`.
pub fn parse_edge_token(tok: &str) -> Result<Edge> {
    let inner = tok
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| Error::input(format!("bad edge token `{tok}`")))?;
    let (a, b) = inner
        .split_once(',')
        .ok_or_else(|| Error::input(format!("bad edge token `{tok}`")))?;
    Ok(Edge::new(
        VertexId::parse(a.trim())?,
        VertexId::parse(b.trim())?,
    ))
}

pub struct DrawingFile {
    pub rotation: RotationSystem,
    /// (inserted edge, crossed edge) in ledger order.
    pub crossings: Vec<(Edge, Edge)>,
}

pub fn parse_rotation_system(text: &str) -> Result<RotationSystem> {
    let file = parse_drawing_file(text)?;
    if !file.crossings.is_empty() {
        return Err(Error::input(
            "expected a plain rotation system, found a crossings section",
        ));
    }
    Ok(file.rotation)
}

pub fn parse_drawing_file(text: &str) -> Result<DrawingFile> {
    let mut rot: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
    let mut twisted: BTreeSet<Edge> = BTreeSet::new();
    let mut crossings: Vec<(Edge, Edge)> = Vec::new();
    let mut in_crossings = false;
    for (ln, raw) in text.lines().enumerate() {
        let ln = ln + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("twisted:") {
            for tok in rest.split_whitespace() {
                let e = parse_edge_token(tok).map_err(|e| parse_err(ln, e.to_string()))?;
                twisted.insert(e);
            }
            continue;
        }
        if line == "crossings:" {
            in_crossings = true;
            continue;
        }
        if in_crossings {
            let (ins, over) = line
                .split_once(" over ")
                .ok_or_else(|| parse_err(ln, "expected `(u,v) over (x,y)`"))?;
            let a = parse_edge_token(ins.trim()).map_err(|e| parse_err(ln, e.to_string()))?;
            let b = parse_edge_token(over.trim()).map_err(|e| parse_err(ln, e.to_string()))?;
            crossings.push((a, b));
            continue;
        }
        let (head, rest) = line
            .split_once('.')
            .ok_or_else(|| parse_err(ln, "expected `<vertex>. <nbr> ...`"))?;
        let v = VertexId::parse(head.trim()).map_err(|e| parse_err(ln, e.to_string()))?;
        let mut nbrs = Vec::new();
        for tok in rest.split_whitespace() {
            nbrs.push(VertexId::parse(tok).map_err(|e| parse_err(ln, e.to_string()))?);
        }
        if rot.insert(v, nbrs).is_some() {
            return Err(parse_err(ln, format!("vertex {v} listed twice")));
        }
    }
    let rotation = RotationSystem::new(rot, twisted)?;
    Ok(DrawingFile {
        rotation,
        crossings,
    })
}

pub fn serialize_rotation_system(rs: &RotationSystem) -> String {
    let mut out = String::new();
    for v in rs.vertices() {
        out.push_str(&format!("{v}."));
        for u in rs.rotation(v).unwrap() {
            out.push_str(&format!(" {u}"));
        }
        out.push('\n');
    }
    if !rs.twisted_edges().is_empty() {
        out.push_str("twisted:");
        for e in rs.twisted_edges() {
            out.push_str(&format!(" {e}"));
        }
        out.push('\n');
    }
    out
}

pub fn serialize_drawing_file(rs: &RotationSystem, crossings: &[(Edge, Edge)]) -> String {
    let mut out = serialize_rotation_system(rs);
    if !crossings.is_empty() {
        out.push_str("crossings:\n");
        for (ins, over) in crossings {
            out.push_str(&format!("{ins} over {over}\n"));
        }
    }
    out
}

/// JSON mirror of the drawing file format.
pub fn drawing_to_json(rs: &RotationSystem, crossings: &[(Edge, Edge)]) -> Value {
    let rotations: Vec<Value> = rs
        .vertices()
        .map(|v| {
            json!({
                "vertex": v.to_string(),
                "neighbors": rs.rotation(v).unwrap().iter().map(|u| u.to_string()).collect::<Vec<_>>(),
            })
        })
        .collect();
    let twisted: Vec<Value> = rs
        .twisted_edges()
        .iter()
        .map(|e| json!([e.0.to_string(), e.1.to_string()]))
        .collect();
    let crossings: Vec<Value> = crossings
        .iter()
        .map(|(i, o)| {
            json!({
                "insert": [i.0.to_string(), i.1.to_string()],
                "over": [o.0.to_string(), o.1.to_string()],
            })
        })
        .collect();
    json!({
        "rotations": rotations,
        "twisted": twisted,
        "crossings": crossings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_with_twists_and_comments() {
        let text = "\
# a triangle with one twisted edge
0. 1 2
1. 0 2   # inline comment
2. 0 1

twisted: (0,1)
";
        let rs = parse_rotation_system(text).unwrap();
        assert_eq!(rs.vertex_count(), 3);
        assert_eq!(rs.twisted_edges().len(), 1);
        let out = serialize_rotation_system(&rs);
        let rs2 = parse_rotation_system(&out).unwrap();
        assert_eq!(rs, rs2);
    }

    #[test]
    fn lettered_vertices_and_crossings_section() {
        let text = "\
w0. 0 1
0. w0 1 x
1. 0 w0 x
x. 0 1
crossings:
(0,1) over (x,w0)
";
        // not a meaningful drawing, just format structure
        let f = parse_drawing_file(text).unwrap();
        assert_eq!(f.crossings.len(), 1);
        assert_eq!(
            f.crossings[0].0,
            Edge::new(VertexId::num(0), VertexId::num(1))
        );
        let out = serialize_drawing_file(&f.rotation, &f.crossings);
        let f2 = parse_drawing_file(&out).unwrap();
        assert_eq!(f.rotation, f2.rotation);
        assert_eq!(f.crossings, f2.crossings);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = parse_rotation_system("0. 1\nbogus line\n1. 0\n").unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected error {other}"),
        }
    }
}
