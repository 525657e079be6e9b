//! Two-colorings that are domatic and face-hitting.
//!
//! [`lemma_coloring`] handles connected loopless graphs of minimum degree
//! two: augment, four-color the augmented graph, and merge colors 1, 3 and
//! 2, 4. [`theorem_coloring`] reduces an arbitrary admissible graph to that
//! case by trimming degree-one vertices, colors every core component, puts
//! pendants back with the color opposite their parent, and finally flips
//! whole nested components to repair faces that see only one color.

use serde::Serialize;

use crate::augment::{augment, check_lemma_preconditions};
use crate::error::{Error, Precondition, Result};
use crate::fourcolor::{four_color, to_simple};
use crate::oracle::{exists_dp_two_coloring, OracleBudget};
use crate::plane::{EdgeId, PlaneMultigraph, SubgraphMap, Vertex};
use crate::verify::{audit_two_coloring, Side, TwoColoring};

/// Largest graph for which a failed augmentation falls back to exhaustive
/// search.
pub const FALLBACK_MAX_VERTICES: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrimStep {
    pub pendant: Vertex,
    pub parent: Vertex,
    pub edges: Vec<EdgeId>,
}

/// Removed pendants in deletion order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TrimRecord {
    pub steps: Vec<TrimStep>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ComponentKind {
    Nontrivial,
    Trivial,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ColoringSource {
    Lemma,
    Arbitrary,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentPlan {
    pub kind: ComponentKind,
    pub source: ColoringSource,
}

#[derive(Clone, Debug)]
pub struct Trimmed {
    pub core: PlaneMultigraph,
    pub record: TrimRecord,
    /// Core vertices to vertices of the trimmed graph.
    pub map: SubgraphMap,
}

/// Repeatedly removes vertices with exactly one distinct neighbor.
pub fn trim(g: &PlaneMultigraph) -> Result<Trimmed> {
    let n = g.vertex_count();
    let mut alive = vec![true; n];
    let mut deg: Vec<usize> = g.vertices().map(|v| g.adj(v).len()).collect();
    let mut edges_at: Vec<Vec<EdgeId>> = vec![Vec::new(); n];
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        edges_at[u].push(e);
        if v != u {
            edges_at[v].push(e);
        }
    }
    let mut queue: std::collections::BTreeSet<Vertex> =
        g.vertices().filter(|&v| deg[v] == 1).collect();
    let mut record = TrimRecord::default();
    while let Some(v) = queue.pop_first() {
        if !alive[v] || deg[v] != 1 {
            continue;
        }
        let parent = *g.adj(v).iter().find(|&&u| alive[u]).expect("live neighbor");
        alive[v] = false;
        deg[parent] -= 1;
        let edges = edges_at[v]
            .iter()
            .copied()
            .filter(|&e| {
                let (a, b) = g.endpoints(e);
                a == parent || b == parent
            })
            .collect();
        record.steps.push(TrimStep {
            pendant: v,
            parent,
            edges,
        });
        if deg[parent] == 1 {
            queue.insert(parent);
        }
    }
    let (core, map) = g.subgraph(&alive, &vec![true; g.edge_count()])?;
    Ok(Trimmed { core, record, map })
}

/// Coloring of a connected loopless graph of minimum degree two in which
/// both classes dominate and every face of length at least three sees both
/// classes.
pub fn lemma_coloring(g: &PlaneMultigraph) -> Result<TwoColoring> {
    check_lemma_preconditions(g)?;
    let aug = match augment(g) {
        Ok(a) => a,
        Err(Error::NonConvergence { steps }) => {
            if g.vertex_count() <= FALLBACK_MAX_VERTICES {
                let budget = OracleBudget {
                    max_vertices: FALLBACK_MAX_VERTICES,
                    ..OracleBudget::default()
                };
                return exists_dp_two_coloring(g, true, budget)?
                    .ok_or_else(|| Error::Internal("no coloring exists for a lemma input".into()));
            }
            return Err(Error::NonConvergence { steps });
        }
        Err(e) => return Err(e),
    };
    let simple = to_simple(aug.graph())?;
    let mut phi = four_color(&simple)?;
    if let Some(&v) = aug.unhappy_vertices().first() {
        // Rename so that v gets 1 and its smallest true neighbor gets 2.
        let cv = phi.color(v);
        let u = g.adj(v)[0];
        let cu = phi.color(u);
        let mut perm = [0u8; 4];
        perm[cv as usize - 1] = 1;
        perm[cu as usize - 1] = 2;
        let mut next = 3;
        for slot in &mut perm {
            if *slot == 0 {
                *slot = next;
                next += 1;
            }
        }
        phi.permute(perm);
    }
    Ok(TwoColoring::new(
        phi.colors()
            .iter()
            .map(|&c| if c % 2 == 1 { Side::A } else { Side::B })
            .collect(),
    ))
}

/// Checks the hypotheses of the partition theorem: at least one vertex, no
/// self-loop, no isolated vertex, and no face bounded by a 2-cycle.
pub fn check_theorem_preconditions(g: &PlaneMultigraph) -> Result<()> {
    let fail = |p| Err(Error::PreconditionViolated(p));
    if g.vertex_count() == 0 {
        return fail(Precondition::Empty);
    }
    if let Some(e) = g.self_loops().next() {
        return fail(Precondition::SelfLoop {
            edge: g.edge_label(e),
        });
    }
    if let Some(v) = g.vertices().find(|&v| g.rotation(v).is_empty()) {
        return fail(Precondition::IsolatedVertex {
            vertex: g.vertex_label(v),
        });
    }
    for f in g.faces() {
        if f.length == 2 {
            let darts: Vec<_> = f
                .walks
                .iter()
                .flat_map(|w| match w {
                    crate::plane::FaceWalk::Darts(d) => d.clone(),
                    crate::plane::FaceWalk::Isolated(_) => Vec::new(),
                })
                .collect();
            if darts[0].edge() != darts[1].edge() {
                return fail(Precondition::TwoFace { face: f.id });
            }
        }
    }
    Ok(())
}

/// Per-component plan for the trimmed core.
pub fn component_plans(core: &PlaneMultigraph) -> Vec<ComponentPlan> {
    (0..core.component_count())
        .map(|c| {
            if core.component_edge_count(c) == 0 {
                ComponentPlan {
                    kind: ComponentKind::Trivial,
                    source: ColoringSource::Arbitrary,
                }
            } else {
                ComponentPlan {
                    kind: ComponentKind::Nontrivial,
                    source: ColoringSource::Lemma,
                }
            }
        })
        .collect()
}

/// A two-coloring in which both classes are dominating and face-hitting.
pub fn theorem_coloring(g: &PlaneMultigraph) -> Result<TwoColoring> {
    check_theorem_preconditions(g)?;
    let trimmed = trim(g)?;
    let core = &trimmed.core;
    let mut coloring = TwoColoring::uniform(g.vertex_count(), Side::A);
    for (c, plan) in component_plans(core).into_iter().enumerate() {
        if plan.kind == ComponentKind::Trivial {
            continue;
        }
        let (sub, sub_map) = core.component_subgraph(c)?;
        let psi = lemma_coloring(&sub)?;
        for x in sub.vertices() {
            let in_core = sub_map.vertex_to_parent[x];
            coloring.set(trimmed.map.vertex_to_parent[in_core], psi.side(x));
        }
    }
    for step in trimmed.record.steps.iter().rev() {
        let s = coloring.side(step.parent).other();
        coloring.set(step.pendant, s);
    }
    flip_pass(g, &mut coloring)?;
    let audit = audit_two_coloring(g, &coloring);
    if !(audit.domatic && audit.polychromatic) {
        return Err(Error::Internal(format!(
            "coloring fails its audit: {:?}",
            audit.violations
        )));
    }
    Ok(coloring)
}

/// Satisfies monochromatic faces shared by several components by flipping
/// an inner component together with everything nested inside it. Such a
/// flip changes no other face and no closed neighborhood.
fn flip_pass(g: &PlaneMultigraph, coloring: &mut TwoColoring) -> Result<()> {
    let mut todo: Vec<(usize, usize)> = Vec::new();
    for f in g.faces() {
        let first = coloring.side(f.boundary_vertices[0]);
        if f.boundary_vertices
            .iter()
            .all(|&v| coloring.side(v) == first)
        {
            let owner_depth = f
                .members
                .iter()
                .filter(|&&(c, lf)| g.anchor(c).outer != lf)
                .map(|&(c, _)| g.nesting_depth(c) + 1)
                .next()
                .unwrap_or(0);
            todo.push((owner_depth, f.id));
        }
    }
    todo.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    for (_, fid) in todo {
        let f = g.face(fid);
        let first = coloring.side(f.boundary_vertices[0]);
        if f.boundary_vertices
            .iter()
            .any(|&v| coloring.side(v) != first)
        {
            continue;
        }
        let child = f
            .members
            .iter()
            .filter(|&&(c, lf)| g.anchor(c).outer == lf)
            .map(|&(c, _)| c)
            .min();
        let Some(child) = child.filter(|_| f.members.len() >= 2) else {
            return Err(Error::Internal(format!(
                "face {fid} sees one color and has no component to flip"
            )));
        };
        for c in g.nesting_subtree(child) {
            for &v in g.component_vertices(c) {
                coloring.flip(v);
            }
        }
    }
    Ok(())
}

/// The two color classes of [`theorem_coloring`], class A first.
pub fn theorem_partition(g: &PlaneMultigraph) -> Result<(Vec<Vertex>, Vec<Vertex>)> {
    let c = theorem_coloring(g)?;
    Ok((c.class(Side::A), c.class(Side::B)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{
        disjoint_family, doubled_k4_family, loop_gadget, polygon, random_theorem_instance,
        stacked_triangulation, FamilyKind,
    };
    use crate::plg::parse_plg;
    use crate::verify::{is_dominating, is_face_hitting};

    fn star(k: usize) -> PlaneMultigraph {
        let mut s = String::from("plg 1\n");
        for v in 0..=k {
            s += &format!("v {v}\n");
        }
        for e in 0..k {
            s += &format!("e {e} 0 {}\n", e + 1);
        }
        s += "rot 0";
        for e in 0..k {
            s += &format!(" {e}+");
        }
        s += "\n";
        for e in 0..k {
            s += &format!("rot {} {e}-\n", e + 1);
        }
        parse_plg(&s).unwrap()
    }

    /// Triangle 0-1-2 with the path 0-3-4 hanging off vertex 0.
    fn triangle_with_tail() -> PlaneMultigraph {
        parse_plg(
            "plg 1\nv 0\nv 1\nv 2\nv 3\nv 4\n\
             e 0 0 1\ne 1 1 2\ne 2 2 0\ne 3 0 3\ne 4 3 4\n\
             rot 0 0+ 3+ 2-\nrot 1 1+ 0-\nrot 2 2+ 1-\nrot 3 4+ 3-\nrot 4 4-\n",
        )
        .unwrap()
    }

    /// Two 2-cycles, the second nested inside the first's 2-cycle. The
    /// first has a pendant outside, the second a pendant inside, so the face
    /// between them has two walks of length two.
    fn nested_two_cycles() -> PlaneMultigraph {
        parse_plg(
            "plg 1\nv 0\nv 1\nv 2\nv 3\nv 4\nv 5\n\
             e 0 0 1\ne 1 0 1\ne 2 2 3\ne 3 2 3\ne 4 0 4\ne 5 2 5\n\
             rot 0 0+ 4+ 1+\nrot 1 1- 0-\nrot 2 2+ 5+ 3+\nrot 3 3- 2-\nrot 4 4-\nrot 5 5-\n\
             anchor 0 root outer 1\nanchor 1 in 0 0\n",
        )
        .unwrap()
    }

    #[test]
    fn trim_examples() {
        let t = trim(&star(4)).unwrap();
        assert_eq!(t.core.vertex_count(), 1);
        assert_eq!(t.record.steps.len(), 4);
        let t = trim(&polygon(5)).unwrap();
        assert!(t.record.steps.is_empty());
        assert_eq!(t.core.vertex_count(), 5);
        let t = trim(&triangle_with_tail()).unwrap();
        assert_eq!(t.core.vertex_count(), 3);
        let order: Vec<_> = t
            .record
            .steps
            .iter()
            .map(|s| (s.pendant, s.parent))
            .collect();
        assert_eq!(order, vec![(4, 3), (3, 0)]);
        assert_eq!(t.core.component_count(), 1);
    }

    #[test]
    fn lemma_examples() {
        for g in [
            polygon(3),
            polygon(4),
            stacked_triangulation(50, 9).unwrap(),
        ] {
            let c = lemma_coloring(&g).unwrap();
            let a = audit_two_coloring(&g, &c);
            assert!(a.domatic && a.polychromatic_3plus, "{a:?}");
        }
        let t = stacked_triangulation(50, 9).unwrap();
        assert!(audit_two_coloring(&t, &lemma_coloring(&t).unwrap()).polychromatic);
    }

    #[test]
    fn theorem_examples() {
        let g = nested_two_cycles();
        check_theorem_preconditions(&g).unwrap();
        let c = theorem_coloring(&g).unwrap();
        let a = audit_two_coloring(&g, &c);
        assert!(a.domatic && a.polychromatic);

        let c4 = polygon(4);
        assert_eq!(theorem_coloring(&c4).unwrap(), lemma_coloring(&c4).unwrap());

        let single = disjoint_family(FamilyKind::Edges, 1).unwrap();
        let (a, b) = theorem_partition(&single).unwrap();
        assert_eq!((a.len(), b.len()), (1, 1));

        let five = disjoint_family(FamilyKind::Edges, 5).unwrap();
        let (a, b) = theorem_partition(&five).unwrap();
        assert_eq!((a.len(), b.len()), (5, 5));
        for s in [&a, &b] {
            assert!(is_dominating(&five, s) && is_face_hitting(&five, s));
        }
    }

    #[test]
    fn matching_removed_from_triangulation() {
        let t = stacked_triangulation(20, 4).unwrap();
        // Greedy matching of non-bridge edges whose removal keeps faces
        // longer than two; any admissible result must color correctly.
        let mut used = [false; 20];
        let mut removed = std::collections::BTreeSet::new();
        for (e, &(u, v)) in t.edges().iter().enumerate() {
            if !used[u] && !used[v] && t.adj(u).len() > 3 && t.adj(v).len() > 3 {
                used[u] = true;
                used[v] = true;
                removed.insert(e);
            }
        }
        let g = t.delete_edges(&removed).unwrap();
        check_theorem_preconditions(&g).unwrap();
        let c = theorem_coloring(&g).unwrap();
        let a = audit_two_coloring(&g, &c);
        assert!(a.domatic && a.polychromatic);
    }

    #[test]
    fn preconditions_are_named() {
        let err = theorem_coloring(&doubled_k4_family(1).unwrap()).unwrap_err();
        assert!(matches!(
            err,
            Error::PreconditionViolated(Precondition::TwoFace { .. })
        ));
        assert!(err.to_string().contains("2-face"));
        let err = theorem_coloring(&loop_gadget()).unwrap_err();
        assert!(matches!(
            err,
            Error::PreconditionViolated(Precondition::SelfLoop { .. })
        ));
        let iso = parse_plg("plg 1\nv 0\nv 1\nv 2\ne 0 0 1\nrot 0 0+\nrot 1 0-\n").unwrap();
        let err = theorem_coloring(&iso).unwrap_err();
        assert_eq!(
            err,
            Error::PreconditionViolated(Precondition::IsolatedVertex { vertex: 2 })
        );
    }

    #[test]
    fn random_instances_partition() {
        for seed in 0..40 {
            let g = random_theorem_instance(10 + seed as usize * 3, seed).unwrap();
            let (a, b) = theorem_partition(&g).unwrap();
            assert_eq!(a.len() + b.len(), g.vertex_count());
            for s in [&a, &b] {
                assert!(is_dominating(&g, s), "seed {seed}");
                assert!(is_face_hitting(&g, s), "seed {seed}");
            }
        }
    }
}
