//! Incremental construction of embeddings.

use crate::error::{Error, Result};
use crate::plane::{
    dart_head, dart_tail, rotation_positions, topology, Anchor, Dart, EdgeId, PlaneMultigraph,
    Vertex,
};

/// Where a new dart goes in a rotation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Position {
    End,
    After(Dart),
    Before(Dart),
}

/// Placement request for the component containing a vertex: the face
/// containing `host` (or the root when `None`), and the local face
/// containing `outer` as the component's outer face (local face 0 when
/// `None`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Placement {
    vertex: Vertex,
    host: Option<Dart>,
    outer: Option<Dart>,
}

/// Mutable rotation system. Labels of the built graph are dense indices.
#[derive(Clone, Debug, Default)]
pub struct PlaneBuilder {
    ends: Vec<(Vertex, Vertex)>,
    alive: Vec<bool>,
    rot: Vec<Vec<Dart>>,
    placements: Vec<Placement>,
}

impl PlaneBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_vertices(n: usize) -> Self {
        PlaneBuilder {
            rot: vec![Vec::new(); n],
            ..Self::default()
        }
    }

    pub fn from_graph(g: &PlaneMultigraph) -> Self {
        let mut b = PlaneBuilder::with_vertices(0);
        b.append(g);
        b
    }

    pub fn vertex_count(&self) -> usize {
        self.rot.len()
    }

    pub fn add_vertex(&mut self) -> Vertex {
        self.rot.push(Vec::new());
        self.rot.len() - 1
    }

    pub fn tail(&self, d: Dart) -> Vertex {
        dart_tail(&self.ends, d)
    }

    pub fn head(&self, d: Dart) -> Vertex {
        dart_head(&self.ends, d)
    }

    pub fn rotation(&self, v: Vertex) -> &[Dart] {
        &self.rot[v]
    }

    pub fn is_alive(&self, e: EdgeId) -> bool {
        self.alive[e]
    }

    pub fn live_edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.ends.len()).filter(|&e| self.alive[e])
    }

    pub fn endpoints(&self, e: EdgeId) -> (Vertex, Vertex) {
        self.ends[e]
    }

    fn insert_at(&mut self, v: Vertex, pos: Position, d: Dart) {
        let idx = match pos {
            Position::End => self.rot[v].len(),
            Position::After(x) => self.index_in(v, x) + 1,
            Position::Before(x) => self.index_in(v, x),
        };
        self.rot[v].insert(idx, d);
    }

    fn index_in(&self, v: Vertex, d: Dart) -> usize {
        self.rot[v]
            .iter()
            .position(|&x| x == d)
            .unwrap_or_else(|| panic!("dart {d:?} is not in the rotation at {v}"))
    }

    /// Adds an edge from `u` to `v`; its forward dart is placed in `u`'s
    /// rotation at `at_u` and its reverse dart in `v`'s at `at_v`.
    pub fn add_edge(&mut self, u: Vertex, at_u: Position, v: Vertex, at_v: Position) -> EdgeId {
        let e = self.ends.len();
        self.ends.push((u, v));
        self.alive.push(true);
        self.insert_at(u, at_u, Dart::new(e, true));
        self.insert_at(v, at_v, Dart::new(e, false));
        e
    }

    pub fn remove_edge(&mut self, e: EdgeId) {
        assert!(self.alive[e], "edge {e} already removed");
        // Placements referring to e move to another dart of the same face.
        let relocate = |b: &Self, d: Option<Dart>| -> Option<Dart> {
            let d = d?;
            if d.edge() != e {
                return Some(d);
            }
            b.face_walk(d).into_iter().find(|x| x.edge() != e)
        };
        for i in 0..self.placements.len() {
            let p = self.placements[i];
            self.placements[i].host = relocate(self, p.host);
            self.placements[i].outer = relocate(self, p.outer);
        }
        self.alive[e] = false;
        let (u, v) = self.ends[e];
        self.rot[u].retain(|d| d.edge() != e);
        if v != u {
            self.rot[v].retain(|d| d.edge() != e);
        }
    }

    /// Face successor in the current rotation system.
    pub fn face_successor(&self, d: Dart) -> Dart {
        let t = d.twin();
        let at = self.tail(t);
        let r = &self.rot[at];
        let i = self.index_in(at, t);
        r[(i + 1) % r.len()]
    }

    /// Closed face walk through `d`.
    pub fn face_walk(&self, d: Dart) -> Vec<Dart> {
        let mut walk = vec![d];
        let mut cur = self.face_successor(d);
        while cur != d {
            walk.push(cur);
            cur = self.face_successor(cur);
        }
        walk
    }

    /// Places the component containing `vertex` inside the face containing
    /// `host` (root when `None`), with the local face containing `outer` as
    /// its outer face.
    pub fn place(&mut self, vertex: Vertex, host: Option<Dart>, outer: Option<Dart>) {
        self.placements.retain(|p| p.vertex != vertex);
        self.placements.push(Placement {
            vertex,
            host,
            outer,
        });
    }

    /// Copies `g` into this builder as additional components, keeping its
    /// nesting. Returns the vertex and edge offsets.
    pub fn append(&mut self, g: &PlaneMultigraph) -> (usize, usize) {
        let voff = self.rot.len();
        let eoff = self.ends.len();
        let shift = |d: Dart| Dart(d.index() + 2 * eoff);
        for &(u, v) in g.edges() {
            self.ends.push((u + voff, v + voff));
            self.alive.push(true);
        }
        for v in g.vertices() {
            self.rot
                .push(g.rotation(v).iter().map(|&d| shift(d)).collect());
        }
        for c in 0..g.component_count() {
            let a = g.anchor(c);
            let outer = g.local_faces(c)[a.outer].first().map(|&d| shift(d));
            let host = a.parent.map(|(p, f)| shift(g.local_faces(p)[f][0]));
            self.placements.push(Placement {
                vertex: g.component_vertices(c)[0] + voff,
                host,
                outer,
            });
        }
        (voff, eoff)
    }

    pub fn build(&self) -> Result<PlaneMultigraph> {
        let n = self.rot.len();
        let mut new_id = vec![usize::MAX; self.ends.len()];
        let mut ends = Vec::new();
        for e in 0..self.ends.len() {
            if self.alive[e] {
                new_id[e] = ends.len();
                ends.push(self.ends[e]);
            }
        }
        let map = |d: Dart| -> Result<Dart> {
            match new_id.get(d.edge()) {
                Some(&id) if id != usize::MAX => Ok(Dart::new(id, d.is_forward())),
                _ => Err(Error::BadParameter(format!(
                    "dart {d:?} refers to a removed edge"
                ))),
            }
        };
        let rot: Vec<Vec<Dart>> = self
            .rot
            .iter()
            .map(|r| r.iter().map(|&d| map(d)).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        let pos = rotation_positions(&rot, 2 * ends.len());
        let topo = topology(n, &ends, &rot, &pos);
        let k = topo.comps.len();
        let mut outer = vec![0usize; k];
        let mut host: Vec<Option<(usize, usize)>> = vec![None; k];
        for p in &self.placements {
            let c = topo.comp_of[p.vertex];
            if let Some(d) = p.outer {
                let d = map(d)?;
                if topo.comp_of[dart_tail(&ends, d)] != c {
                    return Err(Error::BadParameter(
                        "outer dart lies in another component".into(),
                    ));
                }
                outer[c] = topo.local_of_dart[d.index()];
            }
            host[c] = match p.host {
                Some(d) => {
                    let d = map(d)?;
                    Some((
                        topo.comp_of[dart_tail(&ends, d)],
                        topo.local_of_dart[d.index()],
                    ))
                }
                None => None,
            };
        }
        // A component placed in the outer face of another one really sits
        // wherever that one sits.
        let mut anchors = vec![Anchor::ROOT; k];
        for c in 0..k {
            let mut h = host[c];
            let mut hops = 0;
            while let Some((p, f)) = h {
                if f != outer[p] || hops > k {
                    break;
                }
                h = host[p];
                hops += 1;
            }
            anchors[c] = Anchor {
                parent: h,
                outer: outer[c],
            };
        }
        PlaneMultigraph::new(
            (0..n as u32).collect(),
            (0..ends.len() as u32).collect(),
            ends,
            rot,
            anchors,
        )
    }
}

/// Builds a single-component embedding from counterclockwise oriented
/// triangles covering a sphere (every edge in exactly two triangles with
/// opposite orientations). Edges are numbered in order of first appearance.
pub fn from_oriented_triangles(n: usize, triangles: &[[Vertex; 3]]) -> Result<PlaneMultigraph> {
    use std::collections::HashMap;
    let mut dart_of: HashMap<(Vertex, Vertex), Dart> = HashMap::new();
    let mut ends = Vec::new();
    let mut dart = |a: Vertex, b: Vertex, ends: &mut Vec<(Vertex, Vertex)>| -> Dart {
        if let Some(&d) = dart_of.get(&(a, b)) {
            return d;
        }
        let e = ends.len();
        ends.push((a, b));
        dart_of.insert((a, b), Dart::new(e, true));
        dart_of.insert((b, a), Dart::new(e, false));
        Dart::new(e, true)
    };
    // next[x] = rotation successor of dart x around its tail.
    let mut next: HashMap<Dart, Dart> = HashMap::new();
    for t in triangles {
        for i in 0..3 {
            let (a, b, c) = (t[i], t[(i + 1) % 3], t[(i + 2) % 3]);
            if a >= n || b >= n || c >= n || a == b || b == c || a == c {
                return Err(Error::BadParameter(format!("bad triangle {t:?}")));
            }
            // Walk a -> b -> c: at b, the successor of b->a is b->c.
            let ba = dart(b, a, &mut ends);
            let bc = dart(b, c, &mut ends);
            if next.insert(ba, bc).is_some() {
                return Err(Error::BadParameter(format!(
                    "inconsistent orientation at triangle {t:?}"
                )));
            }
        }
    }
    let mut rot = vec![Vec::new(); n];
    let mut first: Vec<Option<Dart>> = vec![None; n];
    for (e, &(u, v)) in ends.iter().enumerate() {
        for (x, d) in [(u, Dart::new(e, true)), (v, Dart::new(e, false))] {
            if first[x].is_none_or(|f| d < f) {
                first[x] = Some(d);
            }
        }
    }
    for v in 0..n {
        let Some(start) = first[v] else { continue };
        let mut cur = start;
        loop {
            rot[v].push(cur);
            cur = *next.get(&cur).ok_or_else(|| {
                Error::BadParameter(format!("vertex {v} is not surrounded by triangles"))
            })?;
            if cur == start {
                break;
            }
            if rot[v].len() > 2 * ends.len() {
                return Err(Error::BadParameter(format!(
                    "rotation at {v} does not close"
                )));
            }
        }
    }
    let m = ends.len();
    PlaneMultigraph::new(
        (0..n as u32).collect(),
        (0..m as u32).collect(),
        ends,
        rot,
        vec![Anchor::ROOT; 1.min(n)],
    )
}
