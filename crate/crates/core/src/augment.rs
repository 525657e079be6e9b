//! Dummy-edge augmentation.
//!
//! A vertex `v` is happy when two true neighbors of `v` are adjacent in the
//! augmented graph; a face of the base graph is happy when its boundary
//! vertex set induces a triangle. Dummy edges are only ever added across a
//! corner `u -> v -> w` of a face whose two darts are true edges, so each
//! dummy closes a facial triangle with two true sides.
//!
//! [`augment`] reaches a state with every face of length at least three
//! happy and at most one unhappy vertex by local moves: chords across free
//! true angles, deletion of redundant dummies, exchanging the dummies of an
//! occupied angle for a chord across it, and shifting unhappiness along a
//! shortest true path between two unhappy vertices.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

use crate::error::{Error, Precondition, Result};
use crate::plane::{
    dart_head, dart_tail, rotation_positions, topology, Anchor, Dart, EdgeId, FaceId,
    PlaneMultigraph, Vertex,
};
use crate::plg::write_plg_with_kinds;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeKind {
    True,
    Dummy,
}

/// A gap between cyclically consecutive true darts at `apex` that lead to
/// two distinct vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TrueAngle {
    pub apex: Vertex,
    pub arms: (Dart, Dart),
    /// Dummy darts strictly between the arms.
    pub occupied: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SatisfyOutcome {
    MadeHappy,
    NoFreeAngle,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HappinessLedger {
    pub happy_vertices: Vec<Vertex>,
    /// Happy faces of the base among those of length at least three.
    pub happy_faces: Vec<FaceId>,
    /// Dummy edges (ids in the augmented graph) incident to each vertex.
    pub dummy_at: Vec<Vec<EdgeId>>,
    /// For each dummy edge, the vertices it makes happy (those having both
    /// endpoints as true neighbors).
    pub made_happy_by: BTreeMap<EdgeId, Vec<Vertex>>,
}

/// A base graph together with an augmented supergraph. Edge `e < m` of
/// `graph` is edge `e` of `base`; dummy edges follow.
#[derive(Clone, Debug)]
pub struct AugmentedGraph {
    base: PlaneMultigraph,
    graph: PlaneMultigraph,
    kinds: Vec<EdgeKind>,
}

/// Mutable working state shared by every augmentation move.
#[derive(Clone)]
struct Work<'a> {
    base: &'a PlaneMultigraph,
    ends: Vec<(Vertex, Vertex)>,
    kind: Vec<EdgeKind>,
    alive: Vec<bool>,
    home: Vec<Option<FaceId>>,
    rot: Vec<Vec<Dart>>,
    adj: Vec<BTreeMap<Vertex, usize>>,
    vhappy: Vec<bool>,
    fhappy: Vec<bool>,
    target: Vec<bool>,
    faces_of: Vec<Vec<FaceId>>,
    dummies: usize,
}

impl<'a> Work<'a> {
    fn new(base: &'a PlaneMultigraph, graph: &PlaneMultigraph, kinds: &[EdgeKind]) -> Self {
        let n = base.vertex_count();
        let mut adj = vec![BTreeMap::new(); n];
        for &(u, v) in graph.edges() {
            if u != v {
                *adj[u].entry(v).or_insert(0) += 1;
                *adj[v].entry(u).or_insert(0) += 1;
            }
        }
        let target: Vec<bool> = base.faces().iter().map(|f| f.length >= 3).collect();
        let mut faces_of = vec![Vec::new(); n];
        for f in base.faces() {
            if target[f.id] {
                for &v in &f.boundary_vertices {
                    faces_of[v].push(f.id);
                }
            }
        }
        let mut w = Work {
            base,
            ends: graph.edges().to_vec(),
            kind: kinds.to_vec(),
            alive: vec![true; graph.edge_count()],
            home: vec![None; graph.edge_count()],
            rot: graph
                .vertices()
                .map(|v| graph.rotation(v).to_vec())
                .collect(),
            adj,
            vhappy: vec![false; n],
            fhappy: vec![false; base.faces().len()],
            target,
            faces_of,
            dummies: kinds.iter().filter(|&&k| k == EdgeKind::Dummy).count(),
        };
        for e in 0..w.ends.len() {
            if w.kind[e] == EdgeKind::Dummy {
                w.home[e] = w.locate_home(graph, Dart::new(e, true));
            }
        }
        for v in 0..n {
            w.vhappy[v] = w.check_vertex(v);
        }
        for f in 0..w.fhappy.len() {
            w.fhappy[f] = w.check_face(f);
        }
        w
    }

    /// Base face enclosing a dummy dart: the base face of the first true
    /// dart on either side of it.
    fn locate_home(&self, graph: &PlaneMultigraph, d: Dart) -> Option<FaceId> {
        for start in [d, d.twin()] {
            let mut cur = start;
            loop {
                if self.kind[cur.edge()] == EdgeKind::True {
                    return Some(self.base.face_of_dart(cur));
                }
                cur = graph.face_successor(cur);
                if cur == start {
                    break;
                }
            }
        }
        None
    }

    fn tail(&self, d: Dart) -> Vertex {
        dart_tail(&self.ends, d)
    }

    fn head(&self, d: Dart) -> Vertex {
        dart_head(&self.ends, d)
    }

    fn is_true(&self, d: Dart) -> bool {
        self.kind[d.edge()] == EdgeKind::True
    }

    fn index_in(&self, v: Vertex, d: Dart) -> usize {
        self.rot[v]
            .iter()
            .position(|&x| x == d)
            .expect("dart at vertex")
    }

    fn succ(&self, d: Dart) -> Dart {
        let t = d.twin();
        let at = self.tail(t);
        let r = &self.rot[at];
        r[(self.index_in(at, t) + 1) % r.len()]
    }

    fn region_home(&self, d: Dart) -> Option<FaceId> {
        if self.is_true(d) {
            Some(self.base.face_of_dart(d))
        } else {
            self.home[d.edge()]
        }
    }

    fn adjacent(&self, u: Vertex, w: Vertex) -> bool {
        self.adj[u].contains_key(&w)
    }

    fn is_true_nbr(&self, x: Vertex, y: Vertex) -> bool {
        self.base.adj(x).binary_search(&y).is_ok()
    }

    fn check_vertex(&self, x: Vertex) -> bool {
        let tn = self.base.adj(x);
        tn.iter().any(|&u| {
            self.adj[u]
                .keys()
                .any(|&y| y != x && y != u && self.is_true_nbr(x, y))
        })
    }

    fn check_face(&self, f: FaceId) -> bool {
        let s = &self.base.face(f).boundary_vertices;
        let inside = |x: &Vertex| s.binary_search(x).is_ok();
        s.iter().any(|&u| {
            self.adj[u].range(u + 1..).any(|(&x, _)| {
                inside(&x)
                    && self.adj[x]
                        .range(x + 1..)
                        .any(|(&y, _)| inside(&y) && self.adjacent(u, y))
            })
        })
    }

    /// Recomputes happiness of everything the edge `uw` can influence.
    fn refresh(&mut self, u: Vertex, w: Vertex) {
        let common: Vec<Vertex> = self
            .base
            .adj(u)
            .iter()
            .copied()
            .filter(|&x| self.is_true_nbr(w, x))
            .collect();
        for x in common {
            self.vhappy[x] = self.check_vertex(x);
        }
        let faces: Vec<FaceId> = self.faces_of[u]
            .iter()
            .copied()
            .filter(|f| self.faces_of[w].binary_search(f).is_ok())
            .collect();
        for f in faces {
            self.fhappy[f] = self.check_face(f);
        }
    }

    fn happy_count(&self) -> usize {
        self.vhappy.iter().filter(|&&h| h).count()
    }

    fn unhappy(&self) -> Vec<Vertex> {
        (0..self.vhappy.len())
            .filter(|&v| !self.vhappy[v])
            .collect()
    }

    fn faces_ok(&self) -> bool {
        (0..self.fhappy.len()).all(|f| !self.target[f] || self.fhappy[f])
    }

    /// Adds the chord `u -> w` across the corner `d_in = u -> v`,
    /// `d_out = v -> w`, where `d_out` follows `d_in` along a face.
    fn add_chord(&mut self, d_in: Dart, d_out: Dart) -> EdgeId {
        let u = self.tail(d_in);
        let w = self.head(d_out);
        debug_assert_ne!(u, w);
        debug_assert_eq!(self.succ(d_in), d_out);
        let home = self.region_home(d_in);
        let e = self.ends.len();
        self.ends.push((u, w));
        self.kind.push(EdgeKind::Dummy);
        self.alive.push(true);
        self.home.push(home);
        let fwd = Dart::new(e, true);
        let i = self.index_in(u, d_in);
        self.rot[u].insert(i, fwd);
        let j = self.index_in(w, d_out.twin());
        self.rot[w].insert(j + 1, fwd.twin());
        *self.adj[u].entry(w).or_insert(0) += 1;
        *self.adj[w].entry(u).or_insert(0) += 1;
        self.dummies += 1;
        self.refresh(u, w);
        e
    }

    fn remove_edge(&mut self, e: EdgeId) {
        debug_assert!(self.alive[e] && self.kind[e] == EdgeKind::Dummy);
        let (u, w) = self.ends[e];
        self.alive[e] = false;
        self.rot[u].retain(|d| d.edge() != e);
        self.rot[w].retain(|d| d.edge() != e);
        for (a, b) in [(u, w), (w, u)] {
            let c = self.adj[a].get_mut(&b).expect("edge counted");
            *c -= 1;
            if *c == 0 {
                self.adj[a].remove(&b);
            }
        }
        self.dummies -= 1;
        self.refresh(u, w);
    }

    /// Chords every unhappy face of length at least three, scanning corners
    /// in boundary-walk order. Returns whether all such faces end up happy.
    fn satisfy_faces(&mut self) -> bool {
        for f in 0..self.fhappy.len() {
            if !self.target[f] || self.fhappy[f] {
                continue;
            }
            let darts: Vec<Dart> = self
                .base
                .face(f)
                .walks
                .iter()
                .flat_map(|w| match w {
                    crate::plane::FaceWalk::Darts(d) => d.clone(),
                    crate::plane::FaceWalk::Isolated(_) => Vec::new(),
                })
                .collect();
            for d_in in darts {
                let d_out = self.succ(d_in);
                if !self.is_true(d_out) {
                    continue;
                }
                let (u, w) = (self.tail(d_in), self.head(d_out));
                if u != w && !self.adjacent(u, w) && u != self.head(d_in) && w != self.head(d_in) {
                    self.add_chord(d_in, d_out);
                    break;
                }
            }
            if !self.fhappy[f] {
                return false;
            }
        }
        true
    }

    /// True angles at `v` as (index of first arm, index of second arm) in
    /// the current rotation.
    fn angles(&self, v: Vertex) -> Vec<(usize, usize)> {
        let r = &self.rot[v];
        let trues: Vec<usize> = (0..r.len()).filter(|&i| self.is_true(r[i])).collect();
        let mut out = Vec::new();
        if trues.len() < 2 {
            return out;
        }
        for k in 0..trues.len() {
            let (i, j) = (trues[k], trues[(k + 1) % trues.len()]);
            if self.head(r[i]) != self.head(r[j]) {
                out.push((i, j));
            }
        }
        out
    }

    fn free_angle(&self, v: Vertex) -> Option<(Dart, Dart)> {
        let r = &self.rot[v];
        self.angles(v)
            .into_iter()
            .find(|&(i, j)| (i + 1) % r.len() == j)
            .map(|(i, j)| (r[i].twin(), r[j]))
    }

    /// Occupied angles at `v`: arms and the dummy edges between them.
    fn occupied_angles(&self, v: Vertex) -> Vec<(Dart, Dart, Vec<EdgeId>)> {
        let r = &self.rot[v];
        let len = r.len();
        self.angles(v)
            .into_iter()
            .filter_map(|(i, j)| {
                let mut between = Vec::new();
                let mut k = (i + 1) % len;
                while k != j {
                    between.push(r[k].edge());
                    k = (k + 1) % len;
                }
                (!between.is_empty()).then(|| (r[i], r[j], between))
            })
            .collect()
    }

    /// Deletes the first dummy whose removal costs no happy vertex and no
    /// happy face.
    fn remove_one_redundant(&mut self) -> bool {
        for e in 0..self.ends.len() {
            if !self.alive[e] || self.kind[e] != EdgeKind::Dummy {
                continue;
            }
            let (u, w) = self.ends[e];
            let before_v = self.vhappy.clone();
            let before_f = self.fhappy.clone();
            let mut trial = self.clone();
            trial.remove_edge(e);
            let keeps_v = (0..before_v.len()).all(|x| !before_v[x] || trial.vhappy[x]);
            let keeps_f = (0..before_f.len()).all(|f| !before_f[f] || trial.fhappy[f]);
            let _ = (u, w);
            if keeps_v && keeps_f {
                *self = trial;
                return true;
            }
        }
        false
    }

    /// Removes the dummies of an occupied angle at `v`, chords across the
    /// freed angle and re-satisfies faces.
    fn reopen(&self, v: Vertex, a: Dart, b: Dart, dummies: &[EdgeId]) -> Option<Work<'a>> {
        let mut t = self.clone();
        for &e in dummies {
            t.remove_edge(e);
        }
        debug_assert_eq!(t.rot[v][(t.index_in(v, a) + 1) % t.rot[v].len()], b);
        t.add_chord(a.twin(), b);
        if !t.satisfy_faces() || !t.vhappy[v] {
            return None;
        }
        Some(t)
    }

    fn try_exchange(&mut self, v: Vertex) -> bool {
        let before = self.happy_count();
        for (a, b, dummies) in self.occupied_angles(v) {
            if let Some(t) = self.reopen(v, a, b, &dummies) {
                if t.happy_count() > before {
                    *self = t;
                    return true;
                }
            }
        }
        false
    }

    fn try_shift(&mut self, v: Vertex, u: Vertex) -> bool {
        let mut expected: BTreeSet<Vertex> = self.unhappy().into_iter().collect();
        expected.remove(&v);
        expected.insert(u);
        for (a, b, dummies) in self.occupied_angles(v) {
            if let Some(t) = self.reopen(v, a, b, &dummies) {
                let got: BTreeSet<Vertex> = t.unhappy().into_iter().collect();
                if got == expected && t.dummies <= self.dummies {
                    *self = t;
                    return true;
                }
            }
        }
        false
    }

    fn finish(self, base: &PlaneMultigraph) -> Result<AugmentedGraph> {
        let mut new_id = vec![usize::MAX; self.ends.len()];
        let mut ends = Vec::new();
        let mut kinds = Vec::new();
        for e in 0..self.ends.len() {
            if self.alive[e] {
                new_id[e] = ends.len();
                ends.push(self.ends[e]);
                kinds.push(self.kind[e]);
            }
        }
        let rot: Vec<Vec<Dart>> = self
            .rot
            .iter()
            .map(|r| {
                r.iter()
                    .map(|d| Dart::new(new_id[d.edge()], d.is_forward()))
                    .collect()
            })
            .collect();
        let n = base.vertex_count();
        let pos = rotation_positions(&rot, 2 * ends.len());
        let topo = topology(n, &ends, &rot, &pos);
        // Base edges keep their ids, so base darts are valid darts here.
        let local_of = |d: Dart| topo.local_of_dart[d.index()];
        let anchors: Vec<Anchor> = (0..base.component_count())
            .map(|c| {
                let a = base.anchor(c);
                let outer = base.local_faces(c)[a.outer]
                    .first()
                    .map_or(0, |&d| local_of(d));
                match a.parent {
                    None => Anchor::root(outer),
                    Some((p, f)) => Anchor::nested(p, local_of(base.local_faces(p)[f][0]), outer),
                }
            })
            .collect();
        let mut labels = base.edge_labels().to_vec();
        let mut next = labels.iter().max().map_or(0, |&x| x + 1);
        while labels.len() < ends.len() {
            labels.push(next);
            next += 1;
        }
        let graph =
            PlaneMultigraph::new(base.vertex_labels().to_vec(), labels, ends, rot, anchors)?;
        Ok(AugmentedGraph {
            base: base.clone(),
            graph,
            kinds,
        })
    }
}

impl AugmentedGraph {
    /// The base graph with no dummy edges.
    pub fn new(base: &PlaneMultigraph) -> Self {
        AugmentedGraph {
            base: base.clone(),
            graph: base.clone(),
            kinds: vec![EdgeKind::True; base.edge_count()],
        }
    }

    pub fn base(&self) -> &PlaneMultigraph {
        &self.base
    }

    pub fn graph(&self) -> &PlaneMultigraph {
        &self.graph
    }

    pub fn edge_kinds(&self) -> &[EdgeKind] {
        &self.kinds
    }

    pub fn edge_kind(&self, e: EdgeId) -> EdgeKind {
        self.kinds[e]
    }

    pub fn dummy_edges(&self) -> Vec<EdgeId> {
        (0..self.kinds.len())
            .filter(|&e| self.kinds[e] == EdgeKind::Dummy)
            .collect()
    }

    pub fn dummy_count(&self) -> usize {
        self.dummy_edges().len()
    }

    fn work(&self) -> Work<'_> {
        Work::new(&self.base, &self.graph, &self.kinds)
    }

    pub fn is_vertex_happy(&self, v: Vertex) -> Result<bool> {
        self.base.check_vertex(v)?;
        Ok(self.work().check_vertex(v))
    }

    /// Whether base face `f` is happy.
    pub fn is_face_happy(&self, f: FaceId) -> Result<bool> {
        if f >= self.base.faces().len() {
            return Err(Error::BadParameter(format!("unknown face {f}")));
        }
        Ok(self.work().check_face(f))
    }

    pub fn unhappy_vertices(&self) -> Vec<Vertex> {
        self.work().unhappy()
    }

    /// Base faces of length at least three that are not happy.
    pub fn unhappy_faces(&self) -> Vec<FaceId> {
        let w = self.work();
        (0..w.fhappy.len())
            .filter(|&f| w.target[f] && !w.fhappy[f])
            .collect()
    }

    pub fn ledger(&self) -> HappinessLedger {
        let w = self.work();
        let n = self.base.vertex_count();
        let mut dummy_at = vec![Vec::new(); n];
        let mut made_happy_by = BTreeMap::new();
        for e in self.dummy_edges() {
            let (u, x) = self.graph.endpoints(e);
            dummy_at[u].push(e);
            if x != u {
                dummy_at[x].push(e);
            }
            let helped: Vec<Vertex> = self
                .base
                .adj(u)
                .iter()
                .copied()
                .filter(|&y| self.base.adj(x).binary_search(&y).is_ok())
                .collect();
            made_happy_by.insert(e, helped);
        }
        HappinessLedger {
            happy_vertices: (0..n).filter(|&v| w.vhappy[v]).collect(),
            happy_faces: (0..w.fhappy.len())
                .filter(|&f| w.target[f] && w.fhappy[f])
                .collect(),
            dummy_at,
            made_happy_by,
        }
    }

    pub fn true_angles(&self, v: Vertex) -> Result<Vec<TrueAngle>> {
        let degree = self.base.degree(v)?;
        if degree < 2 {
            return Err(Error::DegreeTooLow { vertex: v, degree });
        }
        let w = self.work();
        let r = &w.rot[v];
        Ok(w.angles(v)
            .into_iter()
            .map(|(i, j)| TrueAngle {
                apex: v,
                arms: (r[i], r[j]),
                occupied: (j + r.len() - i) % r.len() - 1,
            })
            .collect())
    }

    /// Adds a dummy edge `u -- w` across a corner `u -> v -> w` of face `f`
    /// of the augmented graph whose two darts are true edges.
    pub fn add_dummy_chord(&self, f: FaceId, u: Vertex, w: Vertex) -> Result<AugmentedGraph> {
        self.base.check_vertex(u)?;
        self.base.check_vertex(w)?;
        if u == w {
            return Err(Error::WouldSelfLoop(u));
        }
        if f >= self.graph.faces().len() {
            return Err(Error::BadParameter(format!("unknown face {f}")));
        }
        let mut work = self.work();
        for walk in &self.graph.face(f).walks {
            let crate::plane::FaceWalk::Darts(darts) = walk else {
                continue;
            };
            for &d_in in darts {
                let d_out = self.graph.face_successor(d_in);
                if work.tail(d_in) == u
                    && work.head(d_out) == w
                    && work.is_true(d_in)
                    && work.is_true(d_out)
                    && work.head(d_in) != u
                    && work.head(d_in) != w
                {
                    work.add_chord(d_in, d_out);
                    return work.finish(&self.base);
                }
            }
        }
        Err(Error::NotAChord { face: f, u, w })
    }

    pub fn satisfy_faces(&self) -> Result<AugmentedGraph> {
        let mut w = self.work();
        if !w.satisfy_faces() {
            return Err(Error::Internal("a face could not be made happy".into()));
        }
        w.finish(&self.base)
    }

    pub fn satisfy_vertex(&self, v: Vertex) -> Result<(AugmentedGraph, SatisfyOutcome)> {
        let degree = self.base.degree(v)?;
        let mut w = self.work();
        if w.vhappy[v] {
            return Err(Error::VertexAlreadyHappy(v));
        }
        if degree < 2 {
            return Err(Error::DegreeTooLow { vertex: v, degree });
        }
        match w.free_angle(v) {
            Some((d_in, d_out)) => {
                w.add_chord(d_in, d_out);
                Ok((w.finish(&self.base)?, SatisfyOutcome::MadeHappy))
            }
            None => Ok((self.clone(), SatisfyOutcome::NoFreeAngle)),
        }
    }

    /// Deletes one dummy edge whose removal keeps every happy vertex and
    /// every happy face happy. Returns whether an edge was removed.
    pub fn remove_redundant_dummy(&self) -> Result<(AugmentedGraph, bool)> {
        let mut w = self.work();
        if w.remove_one_redundant() {
            Ok((w.finish(&self.base)?, true))
        } else {
            Ok((self.clone(), false))
        }
    }

    /// Moves the unhappiness of `v` to its true neighbor `u` by trading the
    /// dummies of an occupied angle at `v` for a chord across that angle.
    pub fn shift_unhappiness(&self, v: Vertex, u: Vertex) -> Result<AugmentedGraph> {
        self.base.check_vertex(v)?;
        self.base.check_vertex(u)?;
        let mut w = self.work();
        if w.vhappy[v] {
            return Err(Error::VertexAlreadyHappy(v));
        }
        let no = Error::NoTransferEdge { from: v, to: u };
        if !w.is_true_nbr(v, u) || !w.vhappy[u] || w.free_angle(v).is_some() {
            return Err(no);
        }
        if w.try_shift(v, u) {
            w.finish(&self.base)
        } else {
            Err(no)
        }
    }

    /// The augmented graph as PLG with `kind` lines.
    pub fn to_plg(&self) -> String {
        write_plg_with_kinds(&self.graph, Some(&self.kinds))
    }

    /// The augmented graph with every dummy edge deleted.
    pub fn strip_dummies(&self) -> Result<PlaneMultigraph> {
        let dummies: BTreeSet<EdgeId> = self.dummy_edges().into_iter().collect();
        self.graph.delete_edges(&dummies)
    }

    /// Dummy edges that do not close a facial triangle with two true edges.
    pub fn dummy_rule_violations(&self) -> Vec<EdgeId> {
        let g = &self.graph;
        self.dummy_edges()
            .into_iter()
            .filter(|&e| {
                ![Dart::new(e, true), Dart::new(e, false)].iter().any(|&d| {
                    let d1 = g.face_successor(d);
                    let d2 = g.face_successor(d1);
                    g.face_successor(d2) == d
                        && self.kinds[d1.edge()] == EdgeKind::True
                        && self.kinds[d2.edge()] == EdgeKind::True
                })
            })
            .collect()
    }
}

/// Shortest true path between the closest pair of the given vertices.
fn closest_pair_path(g: &PlaneMultigraph, targets: &[Vertex]) -> Option<Vec<Vertex>> {
    let n = g.vertex_count();
    let is_target: Vec<bool> = {
        let mut m = vec![false; n];
        for &t in targets {
            m[t] = true;
        }
        m
    };
    let mut best: Option<Vec<Vertex>> = None;
    for &s in targets {
        let mut parent = vec![usize::MAX; n];
        parent[s] = s;
        let mut queue = VecDeque::from([s]);
        let mut found = None;
        while let Some(x) = queue.pop_front() {
            if x != s && is_target[x] {
                found = Some(x);
                break;
            }
            for &y in g.adj(x) {
                if parent[y] == usize::MAX {
                    parent[y] = x;
                    queue.push_back(y);
                }
            }
        }
        if let Some(t) = found {
            let mut path = vec![t];
            while *path.last().unwrap() != s {
                path.push(parent[*path.last().unwrap()]);
            }
            path.reverse();
            if best.as_ref().is_none_or(|b| path.len() < b.len()) {
                best = Some(path);
            }
        }
    }
    best
}

/// Checks that `g` is connected, loopless and has minimum degree two.
pub fn check_lemma_preconditions(g: &PlaneMultigraph) -> Result<()> {
    let fail = |p| Err(Error::PreconditionViolated(p));
    if g.vertex_count() == 0 {
        return fail(Precondition::Empty);
    }
    if let Some(e) = g.self_loops().next() {
        return fail(Precondition::SelfLoop {
            edge: g.edge_label(e),
        });
    }
    if g.component_count() != 1 {
        return fail(Precondition::Disconnected {
            components: g.component_count(),
        });
    }
    for v in g.vertices() {
        let d = g.adj(v).len();
        if d < 2 {
            return fail(Precondition::MinDegree {
                vertex: g.vertex_label(v),
                degree: d,
            });
        }
    }
    Ok(())
}

/// Augments `g` until every face of length at least three is happy and at
/// most one vertex is unhappy.
pub fn augment(g: &PlaneMultigraph) -> Result<AugmentedGraph> {
    check_lemma_preconditions(g)?;
    let start = AugmentedGraph::new(g);
    let mut w = start.work();
    if !w.satisfy_faces() {
        return Err(Error::Internal("a face could not be made happy".into()));
    }
    let cap = 10 * (g.vertex_count() + g.edge_count());
    let mut steps = 0;
    loop {
        if steps > cap {
            return Err(Error::NonConvergence { steps });
        }
        let mut changed = false;
        for v in w.unhappy() {
            if !w.vhappy[v] {
                if let Some((d_in, d_out)) = w.free_angle(v) {
                    w.add_chord(d_in, d_out);
                    steps += 1;
                    changed = true;
                }
            }
        }
        while w.remove_one_redundant() {
            steps += 1;
            changed = true;
        }
        if changed {
            continue;
        }
        if w.unhappy().into_iter().any(|v| w.try_exchange(v)) {
            steps += 1;
            continue;
        }
        let unhappy = w.unhappy();
        if unhappy.len() <= 1 {
            break;
        }
        let path = closest_pair_path(g, &unhappy).ok_or(Error::NonConvergence { steps })?;
        let k = path.len() - 1;
        if k < 2 {
            return Err(Error::NonConvergence { steps });
        }
        if !(w.try_shift(path[0], path[1]) || w.try_shift(path[k], path[k - 1])) {
            return Err(Error::NonConvergence { steps });
        }
        steps += 1;
    }
    debug_assert!(w.faces_ok());
    w.finish(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{octahedron, polygon, stacked_triangulation};
    use crate::plg::{parse_plg, write_plg};

    fn face_with(g: &PlaneMultigraph, len: usize) -> FaceId {
        g.faces().iter().find(|f| f.length == len).unwrap().id
    }

    /// Bounded face of a polygon: the one traced by the forward darts.
    fn inner_face(g: &PlaneMultigraph) -> FaceId {
        g.face_of_dart(Dart::new(0, true))
    }

    #[test]
    fn triangle_is_happy_everywhere() {
        let a = AugmentedGraph::new(&polygon(3));
        for v in 0..3 {
            assert!(a.is_vertex_happy(v).unwrap());
        }
        for f in 0..2 {
            assert!(a.is_face_happy(f).unwrap());
        }
        let b = augment(&polygon(3)).unwrap();
        assert_eq!(b.dummy_count(), 0);
        assert!(b.unhappy_vertices().is_empty());
    }

    #[test]
    fn four_cycle_happiness() {
        let c4 = polygon(4);
        let a = AugmentedGraph::new(&c4);
        assert_eq!(a.unhappy_vertices(), vec![0, 1, 2, 3]);
        let f = inner_face(&c4);
        let b = a.add_dummy_chord(f, 0, 2).unwrap();
        assert_eq!(b.unhappy_vertices(), vec![0, 2]);
        // Both faces have vertex set {0, 1, 2, 3}, which now spans a triangle.
        assert!(b.is_face_happy(f).unwrap());
        assert!(b.is_face_happy(1 - f).unwrap());
    }

    #[test]
    fn chord_errors() {
        let c4 = polygon(4);
        let a = AugmentedGraph::new(&c4);
        let f = inner_face(&c4);
        assert_eq!(
            a.add_dummy_chord(f, 0, 0).unwrap_err(),
            Error::WouldSelfLoop(0)
        );
        assert!(matches!(
            a.add_dummy_chord(f, 0, 1),
            Err(Error::NotAChord { .. })
        ));
    }

    #[test]
    fn chords_split_a_pentagon() {
        let c5 = polygon(5);
        let a = AugmentedGraph::new(&c5);
        let f = inner_face(&c5);
        let b = a.add_dummy_chord(f, 0, 2).unwrap();
        let g = b.graph();
        // The surviving 4-face of the augmented graph.
        let f4 = face_with(g, 4);
        let c = b.add_dummy_chord(f4, 2, 4).unwrap();
        assert_eq!(c.dummy_count(), 2);
        assert!(c.dummy_rule_violations().is_empty());
        assert_eq!(
            c.graph().faces().iter().filter(|f| f.length == 3).count(),
            3
        );
        // 3 sits between true neighbors 2 and 4, now adjacent.
        assert!(c.is_vertex_happy(3).unwrap());
        assert!(c.is_vertex_happy(1).unwrap());
        let angles = c.true_angles(2).unwrap();
        assert_eq!(angles.len(), 2);
        assert_eq!(angles.iter().map(|a| a.occupied).sum::<usize>(), 2);
    }

    #[test]
    fn pentagon_path_of_dummies_without_triangle() {
        // Dummies 0-2 and 2-4 share vertex 2 but 0-4 is a true edge, so
        // take the non-closing pair 0-2, 1-3 instead.
        let c5 = polygon(5);
        let a = AugmentedGraph::new(&c5);
        let f = inner_face(&c5);
        let b = a.add_dummy_chord(f, 0, 2).unwrap();
        let f4 = face_with(b.graph(), 4);
        let c = b.add_dummy_chord(f4, 2, 4).unwrap();
        // The induced subgraph on {0..4} now has triangle 0-2-4? 0-4 is true.
        assert!(c.is_face_happy(f).unwrap());
        let single = AugmentedGraph::new(&c5);
        assert!(!single.is_face_happy(f).unwrap());
        let one = single.add_dummy_chord(f, 0, 2).unwrap();
        // Triangle 0-1-2 in the induced subgraph.
        assert!(one.is_face_happy(f).unwrap());
    }

    #[test]
    fn true_angle_counts() {
        let c4 = polygon(4);
        let a = AugmentedGraph::new(&c4);
        assert_eq!(a.true_angles(0).unwrap().len(), 2);
        let k4 = stacked_triangulation(4, 1).unwrap();
        let a = AugmentedGraph::new(&k4);
        assert_eq!(a.true_angles(0).unwrap().len(), 3);
        let p = parse_plg("plg 1\nv 0\nv 1\ne 0 0 1\nrot 0 0+\nrot 1 0-\n").unwrap();
        assert!(matches!(
            AugmentedGraph::new(&p).true_angles(0),
            Err(Error::DegreeTooLow { .. })
        ));
    }

    #[test]
    fn parallel_arms_form_no_angle() {
        // 0 has two parallel edges to 1 and one edge to 2; triangle 0-1-2
        // with 0-1 doubled.
        let g = parse_plg(
            "plg 1\nv 0\nv 1\nv 2\ne 0 0 1\ne 1 0 1\ne 2 1 2\ne 3 2 0\n\
             rot 0 0+ 1+ 3-\nrot 1 2+ 1- 0-\nrot 2 3+ 2-\n",
        )
        .unwrap();
        let a = AugmentedGraph::new(&g);
        let angles = a.true_angles(0).unwrap();
        // Darts to 1,1,2 cyclically: gaps (1,1) is skipped.
        assert_eq!(angles.len(), 2);
        for t in angles {
            assert_ne!(g.head(t.arms.0), g.head(t.arms.1));
        }
    }

    #[test]
    fn satisfy_faces_examples() {
        let oct = octahedron();
        let a = AugmentedGraph::new(&oct).satisfy_faces().unwrap();
        assert_eq!(a.dummy_count(), 0);
        // One chord serves both faces of a cycle: they share a vertex set.
        let a = AugmentedGraph::new(&polygon(4)).satisfy_faces().unwrap();
        assert!(a.unhappy_faces().is_empty());
        assert_eq!(a.dummy_count(), 1);
        let a = AugmentedGraph::new(&polygon(6)).satisfy_faces().unwrap();
        assert!(a.unhappy_faces().is_empty());
        assert_eq!(a.dummy_count(), 1);
        assert!(a.dummy_rule_violations().is_empty());
    }

    #[test]
    fn satisfy_vertex_outcomes() {
        let c4 = polygon(4);
        let a = AugmentedGraph::new(&c4);
        let (b, out) = a.satisfy_vertex(0).unwrap();
        assert_eq!(out, SatisfyOutcome::MadeHappy);
        assert!(b.is_vertex_happy(0).unwrap());
        let (u, w) = b.graph().endpoints(b.dummy_edges()[0]);
        assert_eq!((u.min(w), u.max(w)), (1, 3));
        assert_eq!(
            b.satisfy_vertex(0).unwrap_err(),
            Error::VertexAlreadyHappy(0)
        );
    }

    #[test]
    fn no_free_angle_when_occupied() {
        // Both faces of a 4-cycle chorded by 1-3: vertex 0 has both angles
        // occupied only if the chords run 1-3 on each side.
        let c4 = polygon(4);
        let a = AugmentedGraph::new(&c4);
        let f = inner_face(&c4);
        let b = a.add_dummy_chord(f, 1, 3).unwrap();
        let outer = b.graph().face_of_dart(Dart::new(0, false));
        let c = b.add_dummy_chord(outer, 3, 1).unwrap();
        assert_eq!(c.dummy_count(), 2);
        let (_, out) = c.satisfy_vertex(1).unwrap();
        assert_eq!(out, SatisfyOutcome::NoFreeAngle);
        // Parallel dummies: one is redundant.
        let (d, changed) = c.remove_redundant_dummy().unwrap();
        assert!(changed);
        assert_eq!(d.dummy_count(), 1);
        let (_, changed) = d.remove_redundant_dummy().unwrap();
        assert!(!changed);
    }

    #[test]
    fn covered_dummy_is_redundant() {
        // Pentagon with chord 0-2 drawn on both sides of vertex 1: either
        // copy alone keeps 1 and both faces happy.
        let c5 = polygon(5);
        let a = AugmentedGraph::new(&c5);
        let f = inner_face(&c5);
        let b = a.add_dummy_chord(f, 0, 2).unwrap();
        let outer = b.graph().face_of_dart(Dart::new(1, false));
        let c = b.add_dummy_chord(outer, 2, 0).unwrap();
        assert_eq!(c.dummy_count(), 2);
        let (d, changed) = c.remove_redundant_dummy().unwrap();
        assert!(changed);
        assert_eq!(d.dummy_count(), 1);
        assert!(d.is_vertex_happy(1).unwrap());
        assert!(d.unhappy_faces().is_empty());
        let (_, changed) = d.remove_redundant_dummy().unwrap();
        assert!(!changed);
    }

    #[test]
    fn shift_guard_on_free_angle() {
        let c4 = polygon(4);
        let a = AugmentedGraph::new(&c4);
        let b = a.add_dummy_chord(inner_face(&c4), 0, 2).unwrap();
        assert_eq!(
            b.shift_unhappiness(0, 1).unwrap_err(),
            Error::NoTransferEdge { from: 0, to: 1 }
        );
    }

    #[test]
    fn augment_four_cycle() {
        let a = augment(&polygon(4)).unwrap();
        assert!(a.unhappy_vertices().len() <= 1);
        assert!(a.unhappy_faces().is_empty());
        assert!(a.dummy_rule_violations().is_empty());
        assert_eq!(
            write_plg(&a.strip_dummies().unwrap()),
            write_plg(&polygon(4))
        );
    }

    #[test]
    fn augment_triangulations_needs_nothing() {
        for seed in 0..5 {
            let t = stacked_triangulation(30, seed).unwrap();
            let a = augment(&t).unwrap();
            assert_eq!(a.dummy_count(), 0);
            assert!(a.unhappy_vertices().is_empty());
        }
    }

    #[test]
    fn augment_rejects_bad_inputs() {
        let p = parse_plg("plg 1\nv 0\nv 1\ne 0 0 1\nrot 0 0+\nrot 1 0-\n").unwrap();
        assert!(matches!(
            augment(&p),
            Err(Error::PreconditionViolated(Precondition::MinDegree { .. }))
        ));
    }

    #[test]
    fn augmented_plg_round_trip() {
        let a = augment(&polygon(6)).unwrap();
        let doc = crate::plg::parse_plg_document(&a.to_plg()).unwrap();
        assert_eq!(doc.kinds.as_deref(), Some(a.edge_kinds()));
        assert_eq!(write_plg(&doc.graph), write_plg(a.graph()));
    }
}
