//! The PLG text format and DOT export.
//!
//! ```text
//! plg 1
//! # a triangle
//! v 0
//! v 1
//! v 2
//! e 0 0 1
//! e 1 1 2
//! e 2 2 0
//! rot 0 0+ 2-
//! rot 1 1+ 0-
//! rot 2 2+ 1-
//! anchor 0 root
//! ```
//!
//! `e <id> <u> <v>` declares an edge whose dart `<id>+` leaves `u` toward
//! `v` and whose dart `<id>-` goes back. `rot <v> ...` lists the darts
//! leaving `v` counterclockwise. Components are numbered by their first
//! declared vertex; `anchor <c> root` or `anchor <c> in <p> <f>` places
//! component `c` at the root or inside local face `f` (trace order) of
//! component `p`. An optional trailing `outer <f>` picks which local face of
//! `c` faces outward (default 0). Components without an anchor line are
//! placed at the root. `kind <id> true|dummy` lines mark augmented edges.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use crate::augment::EdgeKind;
use crate::error::{EmbeddingError, Error, Result};
use crate::plane::{Anchor, Dart, PlaneMultigraph, UnionFind};
use crate::verify::{Side, TwoColoring};

/// A parsed PLG file, with edge kinds when the file carries them.
#[derive(Clone, Debug)]
pub struct PlgDocument {
    pub graph: PlaneMultigraph,
    pub kinds: Option<Vec<EdgeKind>>,
}

fn perr(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn num(tok: &str, line: usize, what: &str) -> Result<u32> {
    tok.parse::<u32>()
        .map_err(|_| perr(line, format!("expected {what}, found `{tok}`")))
}

/// Parses PLG text into a validated graph.
pub fn parse_plg(text: &str) -> Result<PlaneMultigraph> {
    Ok(parse_plg_document(text)?.graph)
}

pub fn parse_plg_document(text: &str) -> Result<PlgDocument> {
    let mut header_seen = false;
    let mut vertex_labels: Vec<u32> = Vec::new();
    let mut vindex: HashMap<u32, usize> = HashMap::new();
    let mut edge_labels: Vec<u32> = Vec::new();
    let mut eindex: HashMap<u32, usize> = HashMap::new();
    let mut ends = Vec::new();
    let mut rot_lines: Vec<(usize, usize, Vec<String>)> = Vec::new();
    let mut anchor_lines: HashMap<usize, (usize, Anchor)> = HashMap::new();
    let mut kind_lines: Vec<(usize, u32, EdgeKind)> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        if !header_seen {
            if toks != ["plg", "1"] {
                return Err(perr(lineno, "expected header `plg 1`"));
            }
            header_seen = true;
            continue;
        }
        match toks[0] {
            "v" => {
                if toks.len() != 2 {
                    return Err(perr(lineno, "expected `v <id>`"));
                }
                let l = num(toks[1], lineno, "vertex id")?;
                if vindex.insert(l, vertex_labels.len()).is_some() {
                    return Err(perr(lineno, format!("duplicate vertex {l}")));
                }
                vertex_labels.push(l);
            }
            "e" => {
                if toks.len() != 4 {
                    return Err(perr(lineno, "expected `e <id> <u> <v>`"));
                }
                let l = num(toks[1], lineno, "edge id")?;
                let endpoint = |t: &str| -> Result<usize> {
                    let x = num(t, lineno, "vertex id")?;
                    vindex
                        .get(&x)
                        .copied()
                        .ok_or_else(|| perr(lineno, format!("unknown vertex {x}")))
                };
                let u = endpoint(toks[2])?;
                let v = endpoint(toks[3])?;
                if eindex.insert(l, edge_labels.len()).is_some() {
                    return Err(perr(lineno, format!("duplicate edge {l}")));
                }
                edge_labels.push(l);
                ends.push((u, v));
            }
            "rot" => {
                if toks.len() < 2 {
                    return Err(perr(lineno, "expected `rot <v> <darts>`"));
                }
                let l = num(toks[1], lineno, "vertex id")?;
                let v = *vindex
                    .get(&l)
                    .ok_or_else(|| perr(lineno, format!("unknown vertex {l}")))?;
                rot_lines.push((lineno, v, toks[2..].iter().map(|s| s.to_string()).collect()));
            }
            "anchor" => {
                let c = num(
                    toks.get(1).copied().unwrap_or(""),
                    lineno,
                    "component index",
                )? as usize;
                let (parent, rest) = match toks.get(2).copied() {
                    Some("root") => (None, &toks[3..]),
                    Some("in") if toks.len() >= 5 => {
                        let p = num(toks[3], lineno, "component index")? as usize;
                        let f = num(toks[4], lineno, "face index")? as usize;
                        (Some((p, f)), &toks[5..])
                    }
                    _ => {
                        return Err(perr(
                            lineno,
                            "expected `anchor <c> root` or `anchor <c> in <p> <f>`",
                        ))
                    }
                };
                let outer = match rest {
                    [] => 0,
                    ["outer", f] => num(f, lineno, "face index")? as usize,
                    _ => return Err(perr(lineno, "unexpected tokens after anchor")),
                };
                if anchor_lines
                    .insert(c, (lineno, Anchor { parent, outer }))
                    .is_some()
                {
                    return Err(perr(lineno, format!("duplicate anchor for component {c}")));
                }
            }
            "kind" => {
                if toks.len() != 3 {
                    return Err(perr(lineno, "expected `kind <edge> true|dummy`"));
                }
                let l = num(toks[1], lineno, "edge id")?;
                let k = match toks[2] {
                    "true" => EdgeKind::True,
                    "dummy" => EdgeKind::Dummy,
                    other => return Err(perr(lineno, format!("unknown edge kind `{other}`"))),
                };
                kind_lines.push((lineno, l, k));
            }
            other => return Err(perr(lineno, format!("unknown record `{other}`"))),
        }
    }
    if !header_seen {
        return Err(perr(1, "missing header `plg 1`"));
    }

    let n = vertex_labels.len();
    let mut rot = vec![Vec::new(); n];
    let mut has_rot = vec![false; n];
    for (lineno, v, darts) in rot_lines {
        if std::mem::replace(&mut has_rot[v], true) {
            return Err(perr(
                lineno,
                format!("duplicate rotation for vertex {}", vertex_labels[v]),
            ));
        }
        for t in darts {
            let (body, fwd) = match t.strip_suffix('+') {
                Some(b) => (b, true),
                None => match t.strip_suffix('-') {
                    Some(b) => (b, false),
                    None => return Err(perr(lineno, format!("dart `{t}` lacks a + or - suffix"))),
                },
            };
            let l = num(body, lineno, "edge id")?;
            let e = *eindex
                .get(&l)
                .ok_or_else(|| perr(lineno, format!("unknown edge {l}")))?;
            rot[v].push(Dart::new(e, fwd));
        }
    }

    let kinds = if kind_lines.is_empty() {
        None
    } else {
        let mut kinds = vec![None; edge_labels.len()];
        for (lineno, l, k) in kind_lines {
            let e = *eindex
                .get(&l)
                .ok_or_else(|| perr(lineno, format!("unknown edge {l}")))?;
            kinds[e] = Some(k);
        }
        Some(
            kinds
                .into_iter()
                .enumerate()
                .map(|(e, k)| {
                    k.ok_or_else(|| perr(0, format!("edge {} has no kind", edge_labels[e])))
                })
                .collect::<Result<Vec<_>>>()?,
        )
    };

    // Component count, numbered by first vertex, to size the anchor list.
    let mut uf = UnionFind::new(n);
    for &(u, v) in &ends {
        uf.union(u, v);
    }
    let mut comp_index: HashMap<usize, usize> = HashMap::new();
    for v in 0..n {
        let r = uf.find(v);
        let next = comp_index.len();
        comp_index.entry(r).or_insert(next);
    }
    let k = comp_index.len();
    if let Some((&c, _)) = anchor_lines.iter().find(|(&c, _)| c >= k) {
        return Err(EmbeddingError::AnchorOutOfRange {
            component: c,
            detail: format!("only {k} components"),
        }
        .into());
    }
    let anchors = (0..k)
        .map(|c| anchor_lines.get(&c).map(|x| x.1).unwrap_or(Anchor::ROOT))
        .collect();
    let graph = PlaneMultigraph::new(vertex_labels, edge_labels, ends, rot, anchors)?;
    Ok(PlgDocument { graph, kinds })
}

/// Serializes a graph as PLG. Output is a pure function of the graph.
pub fn write_plg(g: &PlaneMultigraph) -> String {
    write_plg_with_kinds(g, None)
}

pub fn write_plg_with_kinds(g: &PlaneMultigraph, kinds: Option<&[EdgeKind]>) -> String {
    let mut s = String::from("plg 1\n");
    for v in g.vertices() {
        let _ = writeln!(s, "v {}", g.vertex_label(v));
    }
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let _ = writeln!(
            s,
            "e {} {} {}",
            g.edge_label(e),
            g.vertex_label(u),
            g.vertex_label(v)
        );
    }
    for v in g.vertices() {
        let r = g.rotation(v);
        if r.is_empty() {
            continue;
        }
        let _ = write!(s, "rot {}", g.vertex_label(v));
        for &d in r {
            let _ = write!(s, " {}", g.dart_label(d));
        }
        s.push('\n');
    }
    for c in 0..g.component_count() {
        let a = g.anchor(c);
        match a.parent {
            None => {
                let _ = write!(s, "anchor {c} root");
            }
            Some((p, f)) => {
                let _ = write!(s, "anchor {c} in {p} {f}");
            }
        }
        if a.outer != 0 {
            let _ = write!(s, " outer {}", a.outer);
        }
        s.push('\n');
    }
    if let Some(kinds) = kinds {
        for (e, k) in kinds.iter().enumerate() {
            let name = match k {
                EdgeKind::True => "true",
                EdgeKind::Dummy => "dummy",
            };
            let _ = writeln!(s, "kind {} {name}", g.edge_label(e));
        }
    }
    s
}

/// DOT rendering of the underlying abstract multigraph (no embedding data).
/// Color classes, when given, become fill colors.
pub fn to_dot(g: &PlaneMultigraph, coloring: Option<&TwoColoring>) -> String {
    let mut s = String::from("graph G {\n");
    for v in g.vertices() {
        let l = g.vertex_label(v);
        match coloring {
            Some(c) => {
                let fill = match c.side(v) {
                    Side::A => "lightblue",
                    Side::B => "salmon",
                };
                let _ = writeln!(s, "  \"{l}\" [style=filled, fillcolor={fill}];");
            }
            None => {
                let _ = writeln!(s, "  \"{l}\";");
            }
        }
    }
    let mut seen = HashSet::new();
    for &(u, v) in g.edges() {
        let key = (u.min(v), u.max(v));
        let style = if seen.insert(key) {
            ""
        } else {
            " [style=dashed]"
        };
        let _ = writeln!(
            s,
            "  \"{}\" -- \"{}\"{style};",
            g.vertex_label(u),
            g.vertex_label(v)
        );
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    #[test]
    fn kinds_round_trip() {
        let g = generators::polygon(4);
        let kinds = [
            EdgeKind::True,
            EdgeKind::Dummy,
            EdgeKind::True,
            EdgeKind::True,
        ];
        let text = write_plg_with_kinds(&g, Some(&kinds));
        assert!(text.contains("kind 1 dummy"));
        let doc = parse_plg_document(&text).unwrap();
        assert_eq!(doc.kinds.as_deref(), Some(&kinds[..]));
        assert_eq!(write_plg(&doc.graph), write_plg(&g));
    }

    #[test]
    fn outer_extension() {
        let base = "plg 1\nv 0\nv 1\nv 2\ne 0 0 1\ne 1 1 2\ne 2 2 0\nrot 0 0+ 2-\nrot 1 1+ 0-\nrot 2 2+ 1-\n";
        let g = parse_plg(&format!("{base}anchor 0 root outer 1\n")).unwrap();
        assert_eq!(g.anchor(0).outer, 1);
        assert!(write_plg(&g).contains("anchor 0 root outer 1"));
        let h = parse_plg(base).unwrap();
        assert_eq!(h.anchor(0).outer, 0);
        assert!(!write_plg(&h).contains("outer"));
    }

    #[test]
    fn dot_marks_classes() {
        let g = generators::polygon(3);
        let c = TwoColoring::new(vec![Side::A, Side::B, Side::B]);
        let dot = to_dot(&g, Some(&c));
        assert!(dot.starts_with("graph"));
        assert_eq!(dot.matches("lightblue").count(), 1);
        assert_eq!(dot.matches("salmon").count(), 2);
        assert_eq!(dot.matches(" -- ").count(), 3);
    }
}
