//! Domination, face-hitting and coloring audits.

use serde::Serialize;

use crate::plane::{FaceId, PlaneMultigraph, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Side {
    A,
    B,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }
}

/// A total assignment of the vertices to two classes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwoColoring {
    sides: Vec<Side>,
}

impl TwoColoring {
    pub fn new(sides: Vec<Side>) -> Self {
        TwoColoring { sides }
    }

    pub fn uniform(n: usize, side: Side) -> Self {
        TwoColoring {
            sides: vec![side; n],
        }
    }

    pub fn len(&self) -> usize {
        self.sides.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sides.is_empty()
    }

    pub fn side(&self, v: Vertex) -> Side {
        self.sides[v]
    }

    pub fn set(&mut self, v: Vertex, side: Side) {
        self.sides[v] = side;
    }

    pub fn flip(&mut self, v: Vertex) {
        self.sides[v] = self.sides[v].other();
    }

    pub fn sides(&self) -> &[Side] {
        &self.sides
    }

    /// Vertices of one class, ascending.
    pub fn class(&self, side: Side) -> Vec<Vertex> {
        (0..self.sides.len())
            .filter(|&v| self.sides[v] == side)
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// The closed neighborhood of `vertex` has no vertex of class `missing`.
    Vertex { vertex: Vertex, missing: Side },
    /// Face `face` has no boundary vertex of class `missing`.
    Face {
        face: FaceId,
        length: usize,
        missing: Side,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColoringAudit {
    pub domatic: bool,
    pub polychromatic: bool,
    pub polychromatic_3plus: bool,
    pub violations: Vec<Violation>,
}

fn mask(g: &PlaneMultigraph, s: &[Vertex]) -> Vec<bool> {
    let mut m = vec![false; g.vertex_count()];
    for &v in s {
        m[v] = true;
    }
    m
}

/// Every vertex outside `s` has a neighbor in `s`.
pub fn is_dominating(g: &PlaneMultigraph, s: &[Vertex]) -> bool {
    let m = mask(g, s);
    g.vertices().all(|v| m[v] || g.adj(v).iter().any(|&u| m[u]))
}

/// Every global face has a boundary vertex in `s`.
pub fn is_face_hitting(g: &PlaneMultigraph, s: &[Vertex]) -> bool {
    let m = mask(g, s);
    g.faces()
        .iter()
        .all(|f| f.boundary_vertices.iter().any(|&v| m[v]))
}

pub fn audit_two_coloring(g: &PlaneMultigraph, c: &TwoColoring) -> ColoringAudit {
    assert_eq!(c.len(), g.vertex_count(), "coloring is not total");
    let mut violations = Vec::new();
    for v in g.vertices() {
        for side in [Side::A, Side::B] {
            let sees = c.side(v) == side || g.adj(v).iter().any(|&u| c.side(u) == side);
            if !sees {
                violations.push(Violation::Vertex {
                    vertex: v,
                    missing: side,
                });
            }
        }
    }
    for f in g.faces() {
        for side in [Side::A, Side::B] {
            if !f.boundary_vertices.iter().any(|&v| c.side(v) == side) {
                violations.push(Violation::Face {
                    face: f.id,
                    length: f.length,
                    missing: side,
                });
            }
        }
    }
    let domatic = !violations
        .iter()
        .any(|x| matches!(x, Violation::Vertex { .. }));
    let polychromatic = !violations
        .iter()
        .any(|x| matches!(x, Violation::Face { .. }));
    let polychromatic_3plus = !violations
        .iter()
        .any(|x| matches!(x, Violation::Face { length, .. } if *length >= 3));
    ColoringAudit {
        domatic,
        polychromatic,
        polychromatic_3plus,
        violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{octahedron, polygon};
    use crate::plg::parse_plg;

    fn two_edges() -> PlaneMultigraph {
        parse_plg(
            "plg 1\nv 0\nv 1\nv 2\nv 3\ne 0 0 1\ne 1 2 3\nrot 0 0+\nrot 1 0-\nrot 2 1+\nrot 3 1-\n",
        )
        .unwrap()
    }

    fn nested_triangles() -> PlaneMultigraph {
        parse_plg(
            "plg 1\nv 0\nv 1\nv 2\nv 3\nv 4\nv 5\n\
             e 0 0 1\ne 1 1 2\ne 2 2 0\ne 3 3 4\ne 4 4 5\ne 5 5 3\n\
             rot 0 0+ 2-\nrot 1 1+ 0-\nrot 2 2+ 1-\n\
             rot 3 3+ 5-\nrot 4 4+ 3-\nrot 5 5+ 4-\n\
             anchor 0 root\nanchor 1 in 0 1\n",
        )
        .unwrap()
    }

    #[test]
    fn dominating_examples() {
        let c4 = polygon(4);
        assert!(is_dominating(&c4, &[0, 2]));
        assert!(!is_dominating(&two_edges(), &[0]));
        let oct = octahedron();
        for v in oct.vertices() {
            for &u in oct.adj(v) {
                assert!(is_dominating(&oct, &[v, u]));
            }
        }
    }

    #[test]
    fn face_hitting_examples() {
        let t = polygon(3);
        for v in 0..3 {
            assert!(is_face_hitting(&t, &[v]));
        }
        let g = nested_triangles();
        assert_eq!(g.faces().len(), 3);
        for a in 0..3 {
            for b in 3..6 {
                assert!(is_face_hitting(&g, &[a, b]));
            }
            assert!(!is_face_hitting(&g, &[a]));
        }
    }

    #[test]
    fn audit_examples() {
        let c4 = polygon(4);
        let c = TwoColoring::new(vec![Side::A, Side::B, Side::A, Side::B]);
        let a = audit_two_coloring(&c4, &c);
        assert!(a.domatic && a.polychromatic && a.violations.is_empty());

        let t = polygon(3);
        let c = TwoColoring::new(vec![Side::A, Side::B, Side::B]);
        let a = audit_two_coloring(&t, &c);
        assert!(a.domatic && a.polychromatic);

        let p =
            parse_plg("plg 1\nv 0\nv 1\nv 2\ne 0 0 1\ne 1 1 2\nrot 0 0+\nrot 1 1+ 0-\nrot 2 1-\n")
                .unwrap();
        assert_eq!(p.faces().len(), 1);
        let c = TwoColoring::new(vec![Side::A, Side::B, Side::A]);
        let a = audit_two_coloring(&p, &c);
        assert!(a.domatic && a.polychromatic);
    }

    #[test]
    fn audit_lists_violations() {
        let c4 = polygon(4);
        let c = TwoColoring::new(vec![Side::A, Side::A, Side::B, Side::B]);
        let a = audit_two_coloring(&c4, &c);
        assert!(a.domatic && a.polychromatic);
        let c = TwoColoring::uniform(4, Side::A);
        let a = audit_two_coloring(&c4, &c);
        assert!(!a.domatic && !a.polychromatic && !a.polychromatic_3plus);
        assert_eq!(a.violations.len(), 4 + 2);
    }
}
