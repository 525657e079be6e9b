//! Deterministic instance generators.
//!
//! Every random choice comes from a SplitMix64 stream seeded with the
//! caller's 64-bit seed (`rand_xoshiro::SplitMix64`), consumed through
//! `rand::Rng::gen_range`, so a fixed `(parameters, seed)` pair always gives
//! the same graph and the same PLG bytes.

use std::collections::{HashMap, HashSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::builder::{from_oriented_triangles, PlaneBuilder, Position};
use crate::error::{Error, Result};
use crate::plane::{Dart, PlaneMultigraph, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    Edges,
    /// Paths with three edges (four vertices).
    Paths3Edge,
    Cycles4,
}

/// Cycle `0 -> 1 -> ... -> k-1 -> 0`. Edge `i` runs from `i` to `i + 1`;
/// the forward darts bound the inner face.
pub fn polygon(k: usize) -> PlaneMultigraph {
    assert!(k >= 3, "a polygon needs at least three vertices");
    let mut b = PlaneBuilder::with_vertices(k);
    for i in 0..k {
        b.add_edge(i, Position::End, (i + 1) % k, Position::End);
    }
    b.place(0, None, Some(Dart::new(0, false)));
    b.build().expect("polygon is valid")
}

/// Vertex 0 on top, 1..=4 around the equator, 5 at the bottom.
pub fn octahedron() -> PlaneMultigraph {
    let mut t = Vec::new();
    for i in 0..4 {
        let (a, b) = (1 + i, 1 + (i + 1) % 4);
        t.push([0, a, b]);
        t.push([5, b, a]);
    }
    from_oriented_triangles(6, &t).expect("octahedron is valid")
}

/// Vertex 0 on top, 1..=5 the upper ring, 6..=10 the lower ring, 11 at the
/// bottom.
pub fn icosahedron() -> PlaneMultigraph {
    let mut t = Vec::new();
    for i in 0..5 {
        let (u, u1) = (1 + i, 1 + (i + 1) % 5);
        let (l, l1) = (6 + i, 6 + (i + 1) % 5);
        t.push([0, u, u1]);
        t.push([u, l, u1]);
        t.push([u1, l, l1]);
        t.push([11, l1, l]);
    }
    from_oriented_triangles(12, &t).expect("icosahedron is valid")
}

/// Faces of a random stacked triangulation on `n` vertices after `n`
/// simplicity-preserving flips, oriented consistently.
fn stacked_triangles(n: usize, rng: &mut SplitMix64) -> Vec<[Vertex; 3]> {
    let mut tris = vec![[0, 1, 2], [0, 2, 1]];
    for v in 3..n {
        let i = rng.gen_range(0..tris.len());
        let [a, b, c] = tris[i];
        tris[i] = [a, b, v];
        tris.push([b, c, v]);
        tris.push([c, a, v]);
    }
    let mut edges: HashSet<(Vertex, Vertex)> = HashSet::new();
    let mut owner: HashMap<(Vertex, Vertex), usize> = HashMap::new();
    for (i, t) in tris.iter().enumerate() {
        for k in 0..3 {
            let (a, b) = (t[k], t[(k + 1) % 3]);
            edges.insert((a.min(b), a.max(b)));
            owner.insert((a, b), i);
        }
    }
    for _ in 0..n {
        let i = rng.gen_range(0..tris.len());
        let k = rng.gen_range(0..3);
        let t = tris[i];
        let (a, b, c) = (t[k], t[(k + 1) % 3], t[(k + 2) % 3]);
        let j = owner[&(b, a)];
        let s = tris[j];
        let p = s.iter().position(|&x| x == b).unwrap();
        debug_assert_eq!(s[(p + 1) % 3], a);
        let d = s[(p + 2) % 3];
        if c == d || edges.contains(&(c.min(d), c.max(d))) {
            continue;
        }
        // (a, b, c) + (b, a, d) -> (a, d, c) + (d, b, c)
        edges.remove(&(a.min(b), a.max(b)));
        edges.insert((c.min(d), c.max(d)));
        owner.remove(&(a, b));
        owner.remove(&(b, a));
        tris[i] = [a, d, c];
        tris[j] = [d, b, c];
        for (idx, t) in [(i, tris[i]), (j, tris[j])] {
            for k in 0..3 {
                owner.insert((t[k], t[(k + 1) % 3]), idx);
            }
        }
    }
    tris
}

/// Random simple plane triangulation: a triangle grown by inserting each new
/// vertex into a uniformly chosen face, then `n` random edge flips that keep
/// the graph simple.
pub fn stacked_triangulation(n: usize, seed: u64) -> Result<PlaneMultigraph> {
    if n < 3 {
        return Err(Error::BadParameter(format!(
            "a triangulation needs at least 3 vertices, got {n}"
        )));
    }
    let mut rng = SplitMix64::seed_from_u64(seed);
    from_oriented_triangles(n, &stacked_triangles(n, &mut rng))
}

/// A random triangulation on `base` vertices with one extra vertex stacked
/// into every face. The added `2 * base - 4` vertices are independent, so
/// the independence ratio is at least one half.
pub fn kleetope(base: usize, seed: u64) -> Result<PlaneMultigraph> {
    if base < 4 {
        return Err(Error::BadParameter(format!(
            "a kleetope needs a base of at least 4 vertices, got {base}"
        )));
    }
    let mut rng = SplitMix64::seed_from_u64(seed);
    let tris = stacked_triangles(base, &mut rng);
    let mut out = Vec::with_capacity(3 * tris.len());
    for (i, &[a, b, c]) in tris.iter().enumerate() {
        let v = base + i;
        out.push([a, b, v]);
        out.push([b, c, v]);
        out.push([c, a, v]);
    }
    from_oriented_triangles(base + tris.len(), &out)
}

/// `k` disjoint copies of a small graph side by side in the outer face.
pub fn disjoint_family(kind: FamilyKind, k: usize) -> Result<PlaneMultigraph> {
    if k == 0 {
        return Err(Error::BadParameter("k must be at least 1".into()));
    }
    let mut b = PlaneBuilder::new();
    for _ in 0..k {
        match kind {
            FamilyKind::Edges => {
                let u = b.add_vertex();
                let v = b.add_vertex();
                b.add_edge(u, Position::End, v, Position::End);
            }
            FamilyKind::Paths3Edge => {
                let vs: Vec<Vertex> = (0..4).map(|_| b.add_vertex()).collect();
                for w in vs.windows(2) {
                    b.add_edge(w[0], Position::End, w[1], Position::End);
                }
            }
            FamilyKind::Cycles4 => {
                let vs: Vec<Vertex> = (0..4).map(|_| b.add_vertex()).collect();
                let mut first = None;
                for i in 0..4 {
                    let e = b.add_edge(vs[i], Position::End, vs[(i + 1) % 4], Position::End);
                    first.get_or_insert(e);
                }
                b.place(vs[0], None, Some(Dart::new(first.unwrap(), false)));
            }
        }
    }
    b.build()
}

/// Adds a parallel copy of edge `e`, forming a 2-face with its forward dart.
/// Returns the new edge.
fn double_edge(b: &mut PlaneBuilder, e: usize) -> usize {
    let (x, y) = b.endpoints(e);
    b.add_edge(
        x,
        Position::After(Dart::new(e, true)),
        y,
        Position::Before(Dart::new(e, false)),
    )
}

/// `k` copies of K4 with every edge doubled, each copy's outer face a
/// triangle.
pub fn doubled_k4_family(k: usize) -> Result<PlaneMultigraph> {
    if k == 0 {
        return Err(Error::BadParameter("k must be at least 1".into()));
    }
    let k4 = from_oriented_triangles(4, &[[0, 1, 2], [0, 2, 3], [0, 3, 1], [1, 3, 2]])?;
    let mut b = PlaneBuilder::from_graph(&k4);
    for e in 0..k4.edge_count() {
        double_edge(&mut b, e);
    }
    let d = Dart::new(0, true);
    debug_assert_eq!(b.face_walk(d).len(), 3);
    b.place(b.tail(d), None, Some(d));
    let one = b.build()?;
    let mut all = PlaneBuilder::new();
    for _ in 0..k {
        all.append(&one);
    }
    all.build()
}

/// A vertex with three self-loops, each enclosing a pendant neighbor. Every
/// face has length three; one face is bounded by the three loops alone.
pub fn loop_gadget() -> PlaneMultigraph {
    let l = |e, f| Dart::new(e, f);
    PlaneMultigraph::new(
        vec![0, 1, 2, 3],
        (0..6).collect(),
        vec![(0, 0), (0, 0), (0, 0), (0, 1), (0, 2), (0, 3)],
        vec![
            vec![
                l(0, false),
                l(3, true),
                l(0, true),
                l(1, false),
                l(4, true),
                l(1, true),
                l(2, false),
                l(5, true),
                l(2, true),
            ],
            vec![l(3, false)],
            vec![l(4, false)],
            vec![l(5, false)],
        ],
        vec![crate::plane::Anchor::root(3)],
    )
    .expect("loop gadget is valid")
}

/// Adds a small component (2, 3 or 4 vertices: edge, path, triangle or
/// 4-cycle) and places it in the face containing `host`. Returns a dart of
/// its bounded face, if it has one.
fn add_small_component(b: &mut PlaneBuilder, size: usize, cycle: bool, host: Dart) -> Option<Dart> {
    let vs: Vec<Vertex> = (0..size).map(|_| b.add_vertex()).collect();
    let mut edges = Vec::new();
    for w in vs.windows(2) {
        edges.push(b.add_edge(w[0], Position::End, w[1], Position::End));
    }
    if cycle && size >= 3 {
        edges.push(b.add_edge(vs[size - 1], Position::End, vs[0], Position::End));
        b.place(vs[0], Some(host), Some(Dart::new(edges[0], false)));
        Some(Dart::new(edges[0], true))
    } else {
        b.place(vs[0], Some(host), None);
        None
    }
}

/// Random graph meeting the partition theorem's hypotheses: a stacked
/// triangulation with random non-bridge edges removed, plus (budget
/// permitting) a doubled edge with a component nested in its 2-face, small
/// nested components, and pendant trees.
pub fn random_theorem_instance(n: usize, seed: u64) -> Result<PlaneMultigraph> {
    if n < 2 {
        return Err(Error::BadParameter(format!(
            "need at least 2 vertices, got {n}"
        )));
    }
    if n == 2 {
        return disjoint_family(FamilyKind::Edges, 1);
    }
    let mut rng = SplitMix64::seed_from_u64(seed);
    let extra = rng.gen_range(0..=(n - 3).min(n / 3));
    let base = n - extra;
    let tris = stacked_triangles(base, &mut rng);
    let mut b = PlaneBuilder::from_graph(&from_oriented_triangles(base, &tris)?);

    let mut order: Vec<usize> = b.live_edges().collect();
    order.shuffle(&mut rng);
    let quota = rng.gen_range(0..=order.len() / 2);
    for e in order.into_iter().take(quota) {
        let d = Dart::new(e, true);
        if !b.face_walk(d).contains(&d.twin()) && rng.gen_bool(0.7) {
            b.remove_edge(e);
        }
    }

    let mut left = extra;
    let mut hosts: Vec<Dart> = Vec::new();
    if left >= 2 && rng.gen_bool(0.5) {
        let live: Vec<usize> = b.live_edges().collect();
        let e = live[rng.gen_range(0..live.len())];
        let twin = double_edge(&mut b, e);
        add_small_component(&mut b, 2, false, Dart::new(twin, true));
        left -= 2;
    }
    while left >= 2 && rng.gen_bool(0.6) {
        let size = rng.gen_range(2..=left.min(4));
        let cycle = size >= 3 && rng.gen_bool(0.7);
        let host = if !hosts.is_empty() && rng.gen_bool(0.4) {
            hosts[rng.gen_range(0..hosts.len())]
        } else {
            let live: Vec<usize> = b.live_edges().collect();
            let e = live[rng.gen_range(0..live.len())];
            Dart::new(e, rng.gen_bool(0.5))
        };
        if let Some(inner) = add_small_component(&mut b, size, cycle, host) {
            hosts.push(inner);
        }
        left -= size;
    }
    for _ in 0..left {
        let x = rng.gen_range(0..b.vertex_count());
        let r = b.rotation(x);
        let at = if r.is_empty() {
            Position::End
        } else {
            Position::After(r[rng.gen_range(0..r.len())])
        };
        let p = b.add_vertex();
        b.add_edge(x, at, p, Position::End);
    }
    let g = b.build()?;
    crate::domatic::check_theorem_preconditions(&g)
        .map_err(|e| Error::Internal(format!("generator produced an inadmissible graph: {e}")))?;
    Ok(g)
}

/// Random connected loopless graph of minimum degree two: a stacked
/// triangulation with random non-bridge edges removed (keeping every degree
/// at least two) and some edges doubled.
pub fn random_lemma_instance(n: usize, seed: u64) -> Result<PlaneMultigraph> {
    if n < 3 {
        return Err(Error::BadParameter(format!(
            "need at least 3 vertices, got {n}"
        )));
    }
    let mut rng = SplitMix64::seed_from_u64(seed);
    let tris = stacked_triangles(n, &mut rng);
    let mut b = PlaneBuilder::from_graph(&from_oriented_triangles(n, &tris)?);
    let mut order: Vec<usize> = b.live_edges().collect();
    order.shuffle(&mut rng);
    let quota = rng.gen_range(0..=order.len() * 2 / 3);
    let distinct = |b: &PlaneBuilder, v: Vertex| {
        let mut h: Vec<Vertex> = b.rotation(v).iter().map(|&d| b.head(d)).collect();
        h.sort_unstable();
        h.dedup();
        h.len()
    };
    for e in order.into_iter().take(quota) {
        let d = Dart::new(e, true);
        let (u, v) = b.endpoints(e);
        if !b.face_walk(d).contains(&d.twin()) && distinct(&b, u) > 2 && distinct(&b, v) > 2 {
            b.remove_edge(e);
        }
    }
    let live: Vec<usize> = b.live_edges().collect();
    for _ in 0..rng.gen_range(0..=2) {
        let e = live[rng.gen_range(0..live.len())];
        double_edge(&mut b, e);
    }
    b.build()
}

/// Named fixtures used across the test suites.
pub fn corpus() -> Vec<(String, PlaneMultigraph)> {
    let mut out: Vec<(String, PlaneMultigraph)> = Vec::new();
    for k in 3..=8 {
        out.push((format!("polygon-{k}"), polygon(k)));
    }
    out.push(("octahedron".into(), octahedron()));
    out.push(("icosahedron".into(), icosahedron()));
    out.push(("loop-gadget".into(), loop_gadget()));
    for k in 1..=2 {
        out.push((format!("doubled-k4-{k}"), doubled_k4_family(k).unwrap()));
    }
    for (name, kind) in [
        ("edges", FamilyKind::Edges),
        ("paths", FamilyKind::Paths3Edge),
        ("cycles", FamilyKind::Cycles4),
    ] {
        for k in 1..=3 {
            out.push((format!("{name}-{k}"), disjoint_family(kind, k).unwrap()));
        }
    }
    out.push((
        "edges-5".into(),
        disjoint_family(FamilyKind::Edges, 5).unwrap(),
    ));
    for (n, seed) in [
        (4, 0),
        (5, 1),
        (6, 2),
        (7, 3),
        (8, 4),
        (10, 5),
        (12, 6),
        (15, 7),
        (20, 8),
        (30, 9),
        (50, 10),
        (100, 11),
    ] {
        out.push((
            format!("stacked-{n}-s{seed}"),
            stacked_triangulation(n, seed).unwrap(),
        ));
    }
    for (base, seed) in [(4, 0), (5, 1), (6, 2), (8, 3), (12, 4), (20, 5)] {
        out.push((
            format!("kleetope-{base}-s{seed}"),
            kleetope(base, seed).unwrap(),
        ));
    }
    for n in [2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12] {
        for seed in 0..4 {
            out.push((
                format!("theorem-{n}-s{seed}"),
                random_theorem_instance(n, seed).unwrap(),
            ));
        }
    }
    for (n, seed) in [(20, 0), (40, 1), (80, 2)] {
        out.push((
            format!("theorem-{n}-s{seed}"),
            random_theorem_instance(n, seed).unwrap(),
        ));
    }
    for n in [3, 4, 5, 6, 8, 10, 12, 16, 25, 40, 60] {
        for seed in 0..3 {
            out.push((
                format!("lemma-{n}-s{seed}"),
                random_lemma_instance(n, seed).unwrap(),
            ));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plg::write_plg;
    use crate::triangulation::is_plane_triangulation;

    #[test]
    fn small_triangulations() {
        let t = stacked_triangulation(3, 5).unwrap();
        assert_eq!(
            (t.vertex_count(), t.edge_count(), t.faces().len()),
            (3, 3, 2)
        );
        for seed in 0..5 {
            let k4 = stacked_triangulation(4, seed).unwrap();
            assert_eq!(k4.edge_count(), 6);
            assert!(k4.vertices().all(|v| k4.adj(v).len() == 3));
        }
        let t = stacked_triangulation(50, 1).unwrap();
        assert!(is_plane_triangulation(&t));
        assert_eq!(t.edge_count(), 144);
        assert!(stacked_triangulation(2, 0).is_err());
    }

    #[test]
    fn kleetope_has_large_independent_set() {
        let g = kleetope(6, 2).unwrap();
        assert!(is_plane_triangulation(&g));
        assert_eq!(g.vertex_count(), 6 + 8);
        for v in 6..14 {
            assert_eq!(g.adj(v).len(), 3);
            assert!(g.adj(v).iter().all(|&u| u < 6));
        }
    }

    #[test]
    fn families() {
        let g = disjoint_family(FamilyKind::Edges, 3).unwrap();
        assert_eq!(
            (g.vertex_count(), g.component_count(), g.faces().len()),
            (6, 3, 1)
        );
        let g = disjoint_family(FamilyKind::Paths3Edge, 2).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (8, 6));
        let g = disjoint_family(FamilyKind::Cycles4, 2).unwrap();
        assert_eq!((g.vertex_count(), g.faces().len()), (8, 3));
        assert!(disjoint_family(FamilyKind::Edges, 0).is_err());
    }

    #[test]
    fn doubled_k4_shape() {
        let g = doubled_k4_family(1).unwrap();
        assert_eq!((g.vertex_count(), g.dart_count()), (4, 24));
        assert_eq!(g.local_faces(0).len(), 10);
        assert_eq!(g.faces().iter().filter(|f| f.length == 2).count(), 6);
        let outer = g.outer_face().unwrap();
        assert_eq!(g.face(outer).length, 3);
        let g2 = doubled_k4_family(2).unwrap();
        assert_eq!(g2.faces().len(), 19);
    }

    #[test]
    fn loop_gadget_faces() {
        let g = loop_gadget();
        assert!(g.faces().iter().all(|f| f.length == 3));
        assert!(g
            .faces()
            .iter()
            .any(|f| f.boundary_vertices == vec![0] && f.length == 3));
        assert_eq!(g.self_loops().count(), 3);
    }

    #[test]
    fn theorem_instances_are_admissible_and_deterministic() {
        let g = random_theorem_instance(2, 9).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (2, 1));
        for n in [3, 5, 10, 30, 77] {
            for seed in 0..10 {
                let g = random_theorem_instance(n, seed).unwrap();
                assert_eq!(g.vertex_count(), n);
                crate::domatic::check_theorem_preconditions(&g).unwrap();
            }
        }
        let a = write_plg(&random_theorem_instance(30, 42).unwrap());
        let b = write_plg(&random_theorem_instance(30, 42).unwrap());
        assert_eq!(a, b);
    }

    #[test]
    fn lemma_instances_meet_preconditions() {
        for n in [3, 6, 20, 50] {
            for seed in 0..10 {
                let g = random_lemma_instance(n, seed).unwrap();
                crate::augment::check_lemma_preconditions(&g).unwrap();
            }
        }
    }
}
