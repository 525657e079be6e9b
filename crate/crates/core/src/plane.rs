//! Dart-based plane multigraphs.
//!
//! An embedding is a rotation system (the counterclockwise cyclic order of
//! darts around every vertex) together with a nesting forest that places each
//! connected component inside a face of another component, or at the root.
//! Faces of a single component ("local faces") are the orbits of the face
//! successor: the successor of dart `d` is the dart following `twin(d)` in the
//! rotation at `head(d)`. Global faces merge a local face with the outer
//! faces of every component anchored in it.

use std::collections::{BTreeSet, HashMap};

use crate::error::{EmbeddingError, Error, Result};

pub type Vertex = usize;
pub type EdgeId = usize;
pub type FaceId = usize;

/// A half-edge. Edge `e` owns darts `2e` (from its first endpoint to its
/// second) and `2e + 1` (the reverse).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub struct Dart(pub usize);

impl Dart {
    pub fn new(edge: EdgeId, forward: bool) -> Dart {
        Dart(2 * edge + usize::from(!forward))
    }

    #[inline]
    pub fn edge(self) -> EdgeId {
        self.0 >> 1
    }

    #[inline]
    pub fn is_forward(self) -> bool {
        self.0 & 1 == 0
    }

    #[inline]
    pub fn twin(self) -> Dart {
        Dart(self.0 ^ 1)
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

/// Placement of a connected component: the face of another component it sits
/// in (`None` for the root), and which of its own local faces faces outward.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Anchor {
    pub parent: Option<(usize, usize)>,
    pub outer: usize,
}

impl Anchor {
    pub const ROOT: Anchor = Anchor {
        parent: None,
        outer: 0,
    };

    pub fn root(outer: usize) -> Anchor {
        Anchor {
            parent: None,
            outer,
        }
    }

    pub fn nested(parent: usize, face: usize, outer: usize) -> Anchor {
        Anchor {
            parent: Some((parent, face)),
            outer,
        }
    }
}

/// One closed boundary walk of a global face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FaceWalk {
    Darts(Vec<Dart>),
    /// An isolated vertex lying in the face, a walk of length zero.
    Isolated(Vertex),
}

impl FaceWalk {
    pub fn len(&self) -> usize {
        match self {
            FaceWalk::Darts(d) => d.len(),
            FaceWalk::Isolated(_) => 0,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlobalFace {
    pub id: FaceId,
    pub walks: Vec<FaceWalk>,
    /// Total number of darts over all walks.
    pub length: usize,
    /// The vertex set V(f), sorted.
    pub boundary_vertices: Vec<Vertex>,
    /// The (component, local face) pairs merged into this face.
    pub members: Vec<(usize, usize)>,
}

/// Connected components and their local faces, computed from a valid
/// rotation system.
pub(crate) struct Topology {
    pub comp_of: Vec<usize>,
    pub comps: Vec<Vec<Vertex>>,
    pub comp_edges: Vec<usize>,
    pub local_faces: Vec<Vec<Vec<Dart>>>,
    pub local_of_dart: Vec<usize>,
}

#[inline]
pub(crate) fn dart_tail(ends: &[(Vertex, Vertex)], d: Dart) -> Vertex {
    let (u, v) = ends[d.edge()];
    if d.is_forward() {
        u
    } else {
        v
    }
}

#[inline]
pub(crate) fn dart_head(ends: &[(Vertex, Vertex)], d: Dart) -> Vertex {
    dart_tail(ends, d.twin())
}

pub(crate) fn rotation_positions(rot: &[Vec<Dart>], darts: usize) -> Vec<usize> {
    let mut pos = vec![usize::MAX; darts];
    for r in rot {
        for (i, d) in r.iter().enumerate() {
            pos[d.index()] = i;
        }
    }
    pos
}

pub(crate) fn topology(
    n: usize,
    ends: &[(Vertex, Vertex)],
    rot: &[Vec<Dart>],
    pos: &[usize],
) -> Topology {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in ends {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut comp_of = vec![usize::MAX; n];
    let mut comps: Vec<Vec<Vertex>> = Vec::new();
    for s in 0..n {
        if comp_of[s] != usize::MAX {
            continue;
        }
        let c = comps.len();
        comp_of[s] = c;
        let mut members = vec![s];
        let mut i = 0;
        while i < members.len() {
            let x = members[i];
            i += 1;
            for &y in &adj[x] {
                if comp_of[y] == usize::MAX {
                    comp_of[y] = c;
                    members.push(y);
                }
            }
        }
        members.sort_unstable();
        comps.push(members);
    }
    let mut comp_edges = vec![0; comps.len()];
    for &(u, _) in ends {
        comp_edges[comp_of[u]] += 1;
    }
    let mut local_faces: Vec<Vec<Vec<Dart>>> = vec![Vec::new(); comps.len()];
    for (c, faces) in local_faces.iter_mut().enumerate() {
        if comp_edges[c] == 0 {
            faces.push(Vec::new());
        }
    }
    let darts = 2 * ends.len();
    let mut local_of_dart = vec![usize::MAX; darts];
    for start in 0..darts {
        if local_of_dart[start] != usize::MAX {
            continue;
        }
        let c = comp_of[dart_tail(ends, Dart(start))];
        let idx = local_faces[c].len();
        let mut walk = Vec::new();
        let mut cur = Dart(start);
        loop {
            local_of_dart[cur.index()] = idx;
            walk.push(cur);
            let t = cur.twin();
            let at = dart_tail(ends, t);
            let r = &rot[at];
            cur = r[(pos[t.index()] + 1) % r.len()];
            if cur.index() == start {
                break;
            }
        }
        local_faces[c].push(walk);
    }
    Topology {
        comp_of,
        comps,
        comp_edges,
        local_faces,
        local_of_dart,
    }
}

/// Minimal union-find used for face merging.
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

/// Correspondence between a subgraph and the graph it was cut from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgraphMap {
    pub vertex_to_parent: Vec<Vertex>,
    pub edge_to_parent: Vec<EdgeId>,
    pub parent_to_vertex: Vec<Option<Vertex>>,
}

/// An embedded plane multigraph, possibly disconnected, possibly with
/// parallel edges and self-loops. Immutable once built; every mutation
/// returns a new value.
#[derive(Clone, Debug)]
pub struct PlaneMultigraph {
    vertex_labels: Vec<u32>,
    edge_labels: Vec<u32>,
    ends: Vec<(Vertex, Vertex)>,
    rot: Vec<Vec<Dart>>,
    rot_pos: Vec<usize>,
    nbrs: Vec<Vec<Vertex>>,
    comp_of: Vec<usize>,
    comps: Vec<Vec<Vertex>>,
    comp_edges: Vec<usize>,
    anchors: Vec<Anchor>,
    local_faces: Vec<Vec<Vec<Dart>>>,
    local_of_dart: Vec<usize>,
    global_of_local: Vec<Vec<FaceId>>,
    faces: Vec<GlobalFace>,
    face_of_dart: Vec<FaceId>,
    outer_face: Option<FaceId>,
    label_index: HashMap<u32, Vertex>,
}

impl PlaneMultigraph {
    /// Builds and validates an embedding. `rot[v]` lists the darts leaving
    /// `v` in counterclockwise order; `anchors` has one entry per connected
    /// component, components being numbered by their smallest vertex.
    pub fn new(
        vertex_labels: Vec<u32>,
        edge_labels: Vec<u32>,
        ends: Vec<(Vertex, Vertex)>,
        rot: Vec<Vec<Dart>>,
        anchors: Vec<Anchor>,
    ) -> Result<Self> {
        let n = vertex_labels.len();
        let m = ends.len();
        if edge_labels.len() != m {
            return Err(Error::BadParameter(format!(
                "{} edge labels for {m} edges",
                edge_labels.len()
            )));
        }
        if rot.len() != n {
            return Err(Error::BadParameter(format!(
                "{} rotations for {n} vertices",
                rot.len()
            )));
        }
        let mut label_index = HashMap::with_capacity(n);
        for (v, &l) in vertex_labels.iter().enumerate() {
            if label_index.insert(l, v).is_some() {
                return Err(Error::BadParameter(format!("duplicate vertex label {l}")));
            }
        }
        let mut seen_edge = std::collections::HashSet::with_capacity(m);
        for &l in &edge_labels {
            if !seen_edge.insert(l) {
                return Err(Error::BadParameter(format!("duplicate edge label {l}")));
            }
        }
        for (e, &(u, v)) in ends.iter().enumerate() {
            if u >= n || v >= n {
                return Err(EmbeddingError::EndpointOutOfRange {
                    edge: edge_labels[e],
                }
                .into());
            }
        }

        let dart_name = |d: Dart| -> String {
            if d.edge() < m {
                format!(
                    "{}{}",
                    edge_labels[d.edge()],
                    if d.is_forward() { '+' } else { '-' }
                )
            } else {
                format!("#{}", d.index())
            }
        };
        let mut seen = vec![false; 2 * m];
        for (v, r) in rot.iter().enumerate() {
            for &d in r {
                if d.index() >= 2 * m || dart_tail(&ends, d) != v {
                    return Err(EmbeddingError::ForeignDart {
                        vertex: vertex_labels[v],
                        dart: dart_name(d),
                    }
                    .into());
                }
                if std::mem::replace(&mut seen[d.index()], true) {
                    return Err(EmbeddingError::DuplicateDart {
                        vertex: vertex_labels[v],
                        dart: dart_name(d),
                    }
                    .into());
                }
            }
        }
        if let Some(d) = seen.iter().position(|s| !s) {
            let d = Dart(d);
            return Err(EmbeddingError::MissingDart {
                vertex: vertex_labels[dart_tail(&ends, d)],
                dart: dart_name(d),
            }
            .into());
        }

        let rot_pos = rotation_positions(&rot, 2 * m);
        let topo = topology(n, &ends, &rot, &rot_pos);
        for (c, verts) in topo.comps.iter().enumerate() {
            let f = topo.local_faces[c].len();
            let (nv, ne) = (verts.len(), topo.comp_edges[c]);
            if nv as i64 - ne as i64 + f as i64 != 2 {
                return Err(EmbeddingError::Euler {
                    component: c,
                    vertices: nv,
                    edges: ne,
                    faces: f,
                }
                .into());
            }
        }

        let k = topo.comps.len();
        if anchors.len() != k {
            return Err(EmbeddingError::AnchorCount {
                expected: k,
                found: anchors.len(),
            }
            .into());
        }
        for (c, a) in anchors.iter().enumerate() {
            if a.outer >= topo.local_faces[c].len() {
                return Err(EmbeddingError::AnchorOutOfRange {
                    component: c,
                    detail: format!("outer face {} does not exist", a.outer),
                }
                .into());
            }
            if let Some((p, f)) = a.parent {
                if p >= k || p == c {
                    return Err(EmbeddingError::AnchorOutOfRange {
                        component: c,
                        detail: format!("parent component {p}"),
                    }
                    .into());
                }
                if f >= topo.local_faces[p].len() {
                    return Err(EmbeddingError::AnchorOutOfRange {
                        component: c,
                        detail: format!("component {p} has no local face {f}"),
                    }
                    .into());
                }
                if f == anchors[p].outer {
                    return Err(EmbeddingError::AnchorInOuterFace {
                        component: c,
                        parent: p,
                    }
                    .into());
                }
            }
        }
        for start in 0..k {
            let mut cur = start;
            let mut steps = 0;
            while let Some((p, _)) = anchors[cur].parent {
                cur = p;
                steps += 1;
                if steps > k {
                    return Err(EmbeddingError::NestingCycle { component: start }.into());
                }
            }
        }

        // Global faces: merge every component's outer face into the face it
        // is anchored in; root components share the unbounded face.
        let mut offsets = Vec::with_capacity(k + 1);
        let mut total = 0;
        for faces in &topo.local_faces {
            offsets.push(total);
            total += faces.len();
        }
        let root = total;
        let mut uf = UnionFind::new(total + 1);
        for (c, a) in anchors.iter().enumerate() {
            let x = offsets[c] + a.outer;
            let y = match a.parent {
                Some((p, f)) => offsets[p] + f,
                None => root,
            };
            uf.union(x, y);
        }
        let mut id_of_class = vec![usize::MAX; total + 1];
        let mut faces: Vec<GlobalFace> = Vec::new();
        let mut global_of_local = Vec::with_capacity(k);
        for (c, locals) in topo.local_faces.iter().enumerate() {
            let mut ids = Vec::with_capacity(locals.len());
            for (lf, walk) in locals.iter().enumerate() {
                let cls = uf.find(offsets[c] + lf);
                if id_of_class[cls] == usize::MAX {
                    id_of_class[cls] = faces.len();
                    faces.push(GlobalFace {
                        id: faces.len(),
                        walks: Vec::new(),
                        length: 0,
                        boundary_vertices: Vec::new(),
                        members: Vec::new(),
                    });
                }
                let face = &mut faces[id_of_class[cls]];
                face.members.push((c, lf));
                if walk.is_empty() {
                    face.walks.push(FaceWalk::Isolated(topo.comps[c][0]));
                    face.boundary_vertices.push(topo.comps[c][0]);
                } else {
                    face.length += walk.len();
                    face.boundary_vertices
                        .extend(walk.iter().map(|&d| dart_tail(&ends, d)));
                    face.walks.push(FaceWalk::Darts(walk.clone()));
                }
                ids.push(id_of_class[cls]);
            }
            global_of_local.push(ids);
        }
        for f in &mut faces {
            f.boundary_vertices.sort_unstable();
            f.boundary_vertices.dedup();
        }
        let outer_face = if k > 0 {
            let cls = uf.find(root);
            Some(id_of_class[cls])
        } else {
            None
        };
        let mut face_of_dart = vec![0; 2 * m];
        for d in 0..2 * m {
            let c = topo.comp_of[dart_tail(&ends, Dart(d))];
            face_of_dart[d] = global_of_local[c][topo.local_of_dart[d]];
        }

        let mut nbrs = vec![Vec::new(); n];
        for &(u, v) in &ends {
            if u != v {
                nbrs[u].push(v);
                nbrs[v].push(u);
            }
        }
        for l in &mut nbrs {
            l.sort_unstable();
            l.dedup();
        }

        Ok(PlaneMultigraph {
            vertex_labels,
            edge_labels,
            ends,
            rot,
            rot_pos,
            nbrs,
            comp_of: topo.comp_of,
            comps: topo.comps,
            comp_edges: topo.comp_edges,
            anchors,
            local_faces: topo.local_faces,
            local_of_dart: topo.local_of_dart,
            global_of_local,
            faces,
            face_of_dart,
            outer_face,
            label_index,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.ends.len()
    }

    pub fn dart_count(&self) -> usize {
        2 * self.ends.len()
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.vertex_count()
    }

    pub fn darts(&self) -> impl Iterator<Item = Dart> {
        (0..self.dart_count()).map(Dart)
    }

    pub fn vertex_label(&self, v: Vertex) -> u32 {
        self.vertex_labels[v]
    }

    pub fn vertex_labels(&self) -> &[u32] {
        &self.vertex_labels
    }

    pub fn vertex_by_label(&self, label: u32) -> Option<Vertex> {
        self.label_index.get(&label).copied()
    }

    pub fn edge_label(&self, e: EdgeId) -> u32 {
        self.edge_labels[e]
    }

    pub fn edge_labels(&self) -> &[u32] {
        &self.edge_labels
    }

    pub fn endpoints(&self, e: EdgeId) -> (Vertex, Vertex) {
        self.ends[e]
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.ends
    }

    /// Textual dart name as used in PLG: `<edge-label>+` or `<edge-label>-`.
    pub fn dart_label(&self, d: Dart) -> String {
        format!(
            "{}{}",
            self.edge_labels[d.edge()],
            if d.is_forward() { '+' } else { '-' }
        )
    }

    #[inline]
    pub fn tail(&self, d: Dart) -> Vertex {
        dart_tail(&self.ends, d)
    }

    #[inline]
    pub fn head(&self, d: Dart) -> Vertex {
        dart_head(&self.ends, d)
    }

    pub fn rotation(&self, v: Vertex) -> &[Dart] {
        &self.rot[v]
    }

    pub fn rotation_index(&self, d: Dart) -> usize {
        self.rot_pos[d.index()]
    }

    /// Next dart counterclockwise around `tail(d)`.
    pub fn rotation_next(&self, d: Dart) -> Dart {
        let r = &self.rot[self.tail(d)];
        r[(self.rot_pos[d.index()] + 1) % r.len()]
    }

    pub fn rotation_prev(&self, d: Dart) -> Dart {
        let r = &self.rot[self.tail(d)];
        r[(self.rot_pos[d.index()] + r.len() - 1) % r.len()]
    }

    /// The dart following `d` along its face: the rotation successor of
    /// `twin(d)` at `head(d)`.
    pub fn face_successor(&self, d: Dart) -> Dart {
        self.rotation_next(d.twin())
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v))
        }
    }

    /// Distinct neighbors of `v`; parallel edges collapse and self-loops do
    /// not make `v` its own neighbor.
    pub fn neighbors(&self, v: Vertex) -> Result<&[Vertex]> {
        self.check_vertex(v)?;
        Ok(&self.nbrs[v])
    }

    pub fn degree(&self, v: Vertex) -> Result<usize> {
        Ok(self.neighbors(v)?.len())
    }

    /// Unchecked neighbor slice for internal hot paths.
    #[inline]
    pub(crate) fn adj(&self, v: Vertex) -> &[Vertex] {
        &self.nbrs[v]
    }

    pub fn are_adjacent(&self, u: Vertex, v: Vertex) -> bool {
        self.nbrs[u].binary_search(&v).is_ok()
    }

    pub fn self_loops(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.ends
            .iter()
            .enumerate()
            .filter(|(_, (u, v))| u == v)
            .map(|(e, _)| e)
    }

    pub fn has_parallel_edges(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.ends
            .iter()
            .any(|&(u, v)| !seen.insert((u.min(v), u.max(v))))
    }

    pub fn component_count(&self) -> usize {
        self.comps.len()
    }

    pub fn component_of(&self, v: Vertex) -> usize {
        self.comp_of[v]
    }

    pub fn component_vertices(&self, c: usize) -> &[Vertex] {
        &self.comps[c]
    }

    pub fn component_edge_count(&self, c: usize) -> usize {
        self.comp_edges[c]
    }

    pub fn anchor(&self, c: usize) -> Anchor {
        self.anchors[c]
    }

    pub fn anchors(&self) -> &[Anchor] {
        &self.anchors
    }

    /// Local faces of component `c` in trace order. An isolated vertex has a
    /// single empty local face.
    pub fn local_faces(&self, c: usize) -> &[Vec<Dart>] {
        &self.local_faces[c]
    }

    pub fn local_face_of_dart(&self, d: Dart) -> usize {
        self.local_of_dart[d.index()]
    }

    pub fn global_face_of_local(&self, c: usize, local: usize) -> FaceId {
        self.global_of_local[c][local]
    }

    pub fn faces(&self) -> &[GlobalFace] {
        &self.faces
    }

    pub fn face(&self, f: FaceId) -> &GlobalFace {
        &self.faces[f]
    }

    pub fn face_of_dart(&self, d: Dart) -> FaceId {
        self.face_of_dart[d.index()]
    }

    pub fn outer_face(&self) -> Option<FaceId> {
        self.outer_face
    }

    /// The face whose region contains vertex `v`'s surroundings when `v` has
    /// no incident darts.
    fn region_face_of_vertex(&self, v: Vertex) -> FaceId {
        match self.rot[v].first() {
            Some(&d) => self.face_of_dart(d),
            None => self.global_of_local[self.comp_of[v]][0],
        }
    }

    /// Components nested (directly or transitively) inside component `c`,
    /// including `c` itself, in ascending order.
    pub fn nesting_subtree(&self, c: usize) -> Vec<usize> {
        let mut children = vec![Vec::new(); self.comps.len()];
        for (x, a) in self.anchors.iter().enumerate() {
            if let Some((p, _)) = a.parent {
                children[p].push(x);
            }
        }
        let mut out = vec![c];
        let mut i = 0;
        while i < out.len() {
            let x = out[i];
            i += 1;
            out.extend_from_slice(&children[x]);
        }
        out.sort_unstable();
        out
    }

    /// Nesting depth of component `c` (root components have depth 0).
    pub fn nesting_depth(&self, c: usize) -> usize {
        let mut depth = 0;
        let mut cur = c;
        while let Some((p, _)) = self.anchors[cur].parent {
            depth += 1;
            cur = p;
        }
        depth
    }

    /// The global faces, each returned with its walks; same as [`faces`](Self::faces).
    pub fn trace_faces(&self) -> Vec<GlobalFace> {
        self.faces.clone()
    }

    /// Induced embedded subgraph on the kept vertices and kept edges (an
    /// edge survives only if both endpoints do). Rotations are restricted in
    /// order and the nesting forest is recomputed from the regions of the
    /// original embedding.
    pub fn subgraph(
        &self,
        keep_vertex: &[bool],
        keep_edge: &[bool],
    ) -> Result<(PlaneMultigraph, SubgraphMap)> {
        let n = self.vertex_count();
        let m = self.edge_count();
        assert_eq!(keep_vertex.len(), n);
        assert_eq!(keep_edge.len(), m);

        let mut parent_to_vertex = vec![None; n];
        let mut vertex_to_parent = Vec::new();
        for v in 0..n {
            if keep_vertex[v] {
                parent_to_vertex[v] = Some(vertex_to_parent.len());
                vertex_to_parent.push(v);
            }
        }
        let mut new_edge = vec![None; m];
        let mut edge_to_parent = Vec::new();
        for e in 0..m {
            let (u, v) = self.ends[e];
            if keep_edge[e] && keep_vertex[u] && keep_vertex[v] {
                new_edge[e] = Some(edge_to_parent.len());
                edge_to_parent.push(e);
            }
        }
        let map_dart = |d: Dart| new_edge[d.edge()].map(|e| Dart::new(e, d.is_forward()));
        let ends: Vec<(Vertex, Vertex)> = edge_to_parent
            .iter()
            .map(|&e| {
                let (u, v) = self.ends[e];
                (parent_to_vertex[u].unwrap(), parent_to_vertex[v].unwrap())
            })
            .collect();
        let rot: Vec<Vec<Dart>> = vertex_to_parent
            .iter()
            .map(|&v| self.rot[v].iter().filter_map(|&d| map_dart(d)).collect())
            .collect();
        let nn = vertex_to_parent.len();
        let pos = rotation_positions(&rot, 2 * ends.len());
        let topo = topology(nn, &ends, &rot, &pos);
        let k = topo.comps.len();
        let old_dart = |d: Dart| Dart::new(edge_to_parent[d.edge()], d.is_forward());

        // Representative face of the original graph for each new component.
        let rep: Vec<FaceId> = (0..k)
            .map(|c| {
                if topo.comp_edges[c] > 0 {
                    self.face_of_dart(old_dart(topo.local_faces[c][0][0]))
                } else {
                    self.region_face_of_vertex(vertex_to_parent[topo.comps[c][0]])
                }
            })
            .collect();

        let mut outer = vec![0usize; k];
        let mut contains: Vec<Vec<Option<usize>>> = vec![vec![None; k]; k];
        let root_face = self.outer_face;
        for x in 0..k {
            if topo.comp_edges[x] == 0 {
                continue;
            }
            // Regions of the original faces merge across every edge that is
            // not part of component x.
            let mut uf = UnionFind::new(self.faces.len());
            for e in 0..m {
                let inside_x = new_edge[e].is_some_and(|ne| topo.comp_of[ends[ne].0] == x);
                if !inside_x {
                    let a = self.face_of_dart[2 * e];
                    let b = self.face_of_dart[2 * e + 1];
                    uf.union(a, b);
                }
            }
            let mut local_of_class = vec![None; self.faces.len()];
            for (lf, walk) in topo.local_faces[x].iter().enumerate() {
                for &d in walk {
                    let cls = uf.find(self.face_of_dart(old_dart(d)));
                    match local_of_class[cls] {
                        None => local_of_class[cls] = Some(lf),
                        Some(prev) if prev != lf => {
                            return Err(Error::Internal(format!(
                                "region of component {x} touches local faces {prev} and {lf}"
                            )))
                        }
                        _ => {}
                    }
                }
            }
            let lookup = |uf: &mut UnionFind, f: FaceId| -> Result<usize> {
                local_of_class[uf.find(f)].ok_or_else(|| {
                    Error::Internal(format!("face {f} has no region in component {x}"))
                })
            };
            let rf = root_face.ok_or_else(|| Error::Internal("no outer face".into()))?;
            outer[x] = lookup(&mut uf, rf)?;
            for y in 0..k {
                if y == x {
                    continue;
                }
                let lf = lookup(&mut uf, rep[y])?;
                if lf != outer[x] {
                    contains[x][y] = Some(lf);
                }
            }
        }
        let depth: Vec<usize> = (0..k)
            .map(|y| (0..k).filter(|&x| contains[x][y].is_some()).count())
            .collect();
        let anchors: Vec<Anchor> = (0..k)
            .map(|y| {
                let parent = (0..k)
                    .filter(|&x| contains[x][y].is_some())
                    .max_by(|&a, &b| depth[a].cmp(&depth[b]).then(b.cmp(&a)));
                match parent {
                    Some(x) => Anchor::nested(x, contains[x][y].unwrap(), outer[y]),
                    None => Anchor::root(outer[y]),
                }
            })
            .collect();

        let g = PlaneMultigraph::new(
            vertex_to_parent
                .iter()
                .map(|&v| self.vertex_labels[v])
                .collect(),
            edge_to_parent
                .iter()
                .map(|&e| self.edge_labels[e])
                .collect(),
            ends,
            rot,
            anchors,
        )?;
        Ok((
            g,
            SubgraphMap {
                vertex_to_parent,
                edge_to_parent,
                parent_to_vertex,
            },
        ))
    }

    /// Removes the given vertices and every dart incident to them.
    pub fn delete_vertices(&self, removed: &BTreeSet<Vertex>) -> Result<PlaneMultigraph> {
        Ok(self.delete_vertices_mapped(removed)?.0)
    }

    pub fn delete_vertices_mapped(
        &self,
        removed: &BTreeSet<Vertex>,
    ) -> Result<(PlaneMultigraph, SubgraphMap)> {
        let mut keep = vec![true; self.vertex_count()];
        for &v in removed {
            self.check_vertex(v)?;
            keep[v] = false;
        }
        self.subgraph(&keep, &vec![true; self.edge_count()])
    }

    pub fn delete_edges(&self, removed: &BTreeSet<EdgeId>) -> Result<PlaneMultigraph> {
        let mut keep = vec![true; self.edge_count()];
        for &e in removed {
            if e >= keep.len() {
                return Err(Error::BadParameter(format!("unknown edge {e}")));
            }
            keep[e] = false;
        }
        Ok(self.subgraph(&vec![true; self.vertex_count()], &keep)?.0)
    }

    /// Component `c` as a standalone graph.
    pub fn component_subgraph(&self, c: usize) -> Result<(PlaneMultigraph, SubgraphMap)> {
        let keep: Vec<bool> = self.comp_of.iter().map(|&x| x == c).collect();
        self.subgraph(&keep, &vec![true; self.edge_count()])
    }
}
