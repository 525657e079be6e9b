//! Exact exponential-time solvers for small instances.

use crate::error::{Error, Result};
use crate::plane::{PlaneMultigraph, Vertex};
use crate::verify::{Side, TwoColoring};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_vertices: usize,
    pub max_nodes: u64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_vertices: 20,
            max_nodes: 50_000_000,
        }
    }
}

impl OracleBudget {
    fn admit(&self, g: &PlaneMultigraph) -> Result<()> {
        let n = g.vertex_count();
        if n > self.max_vertices || n > 64 {
            return Err(Error::BudgetExceeded(format!(
                "{n} vertices exceeds the limit of {}",
                self.max_vertices.min(64)
            )));
        }
        Ok(())
    }
}

fn bits(mask: u64) -> impl Iterator<Item = usize> {
    let mut m = mask;
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

fn to_vertices(mask: u64) -> Vec<Vertex> {
    bits(mask).collect()
}

fn closed_nbhd(g: &PlaneMultigraph, v: Vertex) -> u64 {
    g.adj(v).iter().fold(1u64 << v, |m, &u| m | 1u64 << u)
}

fn face_mask(g: &PlaneMultigraph, f: usize) -> u64 {
    g.face(f)
        .boundary_vertices
        .iter()
        .fold(0u64, |m, &v| m | 1u64 << v)
}

struct HittingSearch<'a> {
    sets: &'a [u64],
    best: u64,
    best_size: u32,
    nodes: u64,
    max_nodes: u64,
}

impl HittingSearch<'_> {
    /// Number of pairwise disjoint unhit sets found greedily: a lower bound
    /// on how many more elements are needed.
    fn lower_bound(&self, chosen: u64) -> u32 {
        let mut used = 0u64;
        let mut count = 0;
        for &s in self.sets {
            if s & chosen == 0 && s & used == 0 {
                used |= s;
                count += 1;
            }
        }
        count
    }

    fn go(&mut self, chosen: u64) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return Err(Error::BudgetExceeded(format!(
                "search exceeded {} nodes",
                self.max_nodes
            )));
        }
        let size = chosen.count_ones();
        if size + self.lower_bound(chosen) >= self.best_size {
            return Ok(());
        }
        // Branch on the unhit set with fewest elements.
        let pick = self
            .sets
            .iter()
            .filter(|&&s| s & chosen == 0)
            .min_by_key(|&&s| s.count_ones());
        let Some(&s) = pick else {
            self.best = chosen;
            self.best_size = size;
            return Ok(());
        };
        for v in bits(s) {
            self.go(chosen | 1u64 << v)?;
        }
        Ok(())
    }
}

/// Smallest set meeting every set in `sets`, by branch and bound.
fn min_hitting_set(sets: &[u64], max_nodes: u64) -> Result<u64> {
    if sets.contains(&0) {
        return Err(Error::Internal("empty constraint set".into()));
    }
    // Greedy upper bound.
    let mut greedy = 0u64;
    loop {
        let open: Vec<u64> = sets.iter().copied().filter(|&s| s & greedy == 0).collect();
        if open.is_empty() {
            break;
        }
        let all = open.iter().fold(0u64, |m, &s| m | s);
        let v = bits(all)
            .max_by_key(|&v| {
                (
                    open.iter().filter(|&&s| s >> v & 1 == 1).count(),
                    std::cmp::Reverse(v),
                )
            })
            .unwrap();
        greedy |= 1u64 << v;
    }
    let mut search = HittingSearch {
        sets,
        best: greedy,
        best_size: greedy.count_ones(),
        nodes: 0,
        max_nodes,
    };
    search.go(0)?;
    Ok(search.best)
}

/// Minimum dominating set: its size and a witness.
pub fn min_dominating_exact(
    g: &PlaneMultigraph,
    budget: OracleBudget,
) -> Result<(usize, Vec<Vertex>)> {
    budget.admit(g)?;
    let sets: Vec<u64> = g.vertices().map(|v| closed_nbhd(g, v)).collect();
    let m = min_hitting_set(&sets, budget.max_nodes)?;
    Ok((m.count_ones() as usize, to_vertices(m)))
}

/// Minimum face-hitting set: its size and a witness.
pub fn min_face_hitting_exact(
    g: &PlaneMultigraph,
    budget: OracleBudget,
) -> Result<(usize, Vec<Vertex>)> {
    budget.admit(g)?;
    let sets: Vec<u64> = (0..g.faces().len()).map(|f| face_mask(g, f)).collect();
    let m = min_hitting_set(&sets, budget.max_nodes)?;
    Ok((m.count_ones() as usize, to_vertices(m)))
}

/// Maximum independent set of the underlying simple graph.
pub fn max_independent_exact(g: &PlaneMultigraph, budget: OracleBudget) -> Result<Vec<Vertex>> {
    budget.admit(g)?;
    let n = g.vertex_count();
    let nb: Vec<u64> = g
        .vertices()
        .map(|v| closed_nbhd(g, v) & !(1u64 << v))
        .collect();
    let mut best = 0u64;
    let mut nodes = 0u64;
    fn go(
        nb: &[u64],
        cand: u64,
        cur: u64,
        best: &mut u64,
        nodes: &mut u64,
        max: u64,
    ) -> Result<()> {
        *nodes += 1;
        if *nodes > max {
            return Err(Error::BudgetExceeded(format!(
                "search exceeded {max} nodes"
            )));
        }
        if cand == 0 {
            if cur.count_ones() > best.count_ones() {
                *best = cur;
            }
            return Ok(());
        }
        if cur.count_ones() + cand.count_ones() <= best.count_ones() {
            return Ok(());
        }
        let v = cand.trailing_zeros() as usize;
        go(
            nb,
            cand & !(1u64 << v) & !nb[v],
            cur | 1u64 << v,
            best,
            nodes,
            max,
        )?;
        // Skipping v only helps if a neighbor of v gets taken.
        if nb[v] & cand != 0 {
            go(nb, cand & !(1u64 << v), cur, best, nodes, max)?;
        }
        Ok(())
    }
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    go(&nb, all, 0, &mut best, &mut nodes, budget.max_nodes)?;
    Ok(to_vertices(best))
}

/// Searches for a 2-coloring in which every closed neighborhood and every
/// face (only faces of length at least three when `require_3plus_only`) has
/// both colors. Vertex 0 is fixed to class A.
pub fn exists_dp_two_coloring(
    g: &PlaneMultigraph,
    require_3plus_only: bool,
    budget: OracleBudget,
) -> Result<Option<TwoColoring>> {
    budget.admit(g)?;
    let n = g.vertex_count();
    if n == 0 {
        return Ok(Some(TwoColoring::new(Vec::new())));
    }
    let mut sets: Vec<u64> = g.vertices().map(|v| closed_nbhd(g, v)).collect();
    for f in g.faces() {
        if !require_3plus_only || f.length >= 3 {
            sets.push(face_mask(g, f.id));
        }
    }
    sets.sort_unstable();
    sets.dedup();

    struct Search<'a> {
        sets: &'a [u64],
        n: usize,
        nodes: u64,
        max: u64,
    }
    impl Search<'_> {
        /// Unit propagation; `None` on a monochromatic constraint.
        fn propagate(&self, mut a: u64, mut b: u64) -> Option<(u64, u64)> {
            loop {
                let mut changed = false;
                for &s in self.sets {
                    let free = s & !(a | b);
                    let has_a = s & a != 0;
                    let has_b = s & b != 0;
                    if has_a && has_b {
                        continue;
                    }
                    match free.count_ones() {
                        0 => return None,
                        1 if !has_a => {
                            a |= free;
                            changed = true;
                        }
                        1 if !has_b => {
                            b |= free;
                            changed = true;
                        }
                        _ => {}
                    }
                }
                if !changed {
                    return Some((a, b));
                }
            }
        }

        fn go(&mut self, a: u64, b: u64) -> Result<Option<(u64, u64)>> {
            self.nodes += 1;
            if self.nodes > self.max {
                return Err(Error::BudgetExceeded(format!(
                    "search exceeded {} nodes",
                    self.max
                )));
            }
            let Some((a, b)) = self.propagate(a, b) else {
                return Ok(None);
            };
            let assigned = a | b;
            let Some(v) = (0..self.n).find(|&v| assigned >> v & 1 == 0) else {
                return Ok(Some((a, b)));
            };
            if let Some(r) = self.go(a | 1u64 << v, b)? {
                return Ok(Some(r));
            }
            self.go(a, b | 1u64 << v)
        }
    }

    let mut s = Search {
        sets: &sets,
        n,
        nodes: 0,
        max: budget.max_nodes,
    };
    Ok(s.go(1, 0)?.map(|(a, _)| {
        TwoColoring::new(
            (0..n)
                .map(|v| if a >> v & 1 == 1 { Side::A } else { Side::B })
                .collect(),
        )
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{
        disjoint_family, doubled_k4_family, loop_gadget, octahedron, polygon,
        stacked_triangulation, FamilyKind,
    };
    use crate::verify::{audit_two_coloring, is_dominating, is_face_hitting};

    fn b() -> OracleBudget {
        OracleBudget::default()
    }

    #[test]
    fn domination_numbers() {
        let k4 = stacked_triangulation(4, 3).unwrap();
        assert_eq!(min_dominating_exact(&k4, b()).unwrap().0, 1);
        for k in 1..=5 {
            let g = disjoint_family(FamilyKind::Edges, k).unwrap();
            let (size, w) = min_dominating_exact(&g, b()).unwrap();
            assert_eq!(size, k);
            assert!(is_dominating(&g, &w));
        }
        let oct = octahedron();
        let (size, w) = min_dominating_exact(&oct, b()).unwrap();
        assert_eq!(size, 2);
        assert!(is_dominating(&oct, &w));
        assert!(oct.vertices().all(|v| !is_dominating(&oct, &[v])));
    }

    #[test]
    fn face_hitting_numbers() {
        assert_eq!(min_face_hitting_exact(&polygon(3), b()).unwrap().0, 1);
        let d1 = doubled_k4_family(1).unwrap();
        let (size, w) = min_face_hitting_exact(&d1, b()).unwrap();
        assert_eq!(size, 3);
        assert!(is_face_hitting(&d1, &w));
        assert_eq!(
            min_face_hitting_exact(&doubled_k4_family(2).unwrap(), b())
                .unwrap()
                .0,
            6
        );
    }

    #[test]
    fn budget_is_enforced() {
        let t = stacked_triangulation(30, 1).unwrap();
        assert!(matches!(
            min_dominating_exact(&t, b()),
            Err(Error::BudgetExceeded(_))
        ));
        let tiny = OracleBudget {
            max_vertices: 20,
            max_nodes: 2,
        };
        let t = stacked_triangulation(12, 1).unwrap();
        assert!(matches!(
            exists_dp_two_coloring(&t, false, tiny),
            Err(Error::BudgetExceeded(_))
        ));
    }

    #[test]
    fn two_coloring_search() {
        let c4 = polygon(4);
        let c = exists_dp_two_coloring(&c4, false, b()).unwrap().unwrap();
        let a = audit_two_coloring(&c4, &c);
        assert!(a.domatic && a.polychromatic);
        assert_eq!(c.side(0), Side::A);
        assert_eq!(
            exists_dp_two_coloring(&loop_gadget(), false, b()).unwrap(),
            None
        );
    }

    #[test]
    fn independent_sets() {
        assert_eq!(max_independent_exact(&octahedron(), b()).unwrap().len(), 2);
        let k4 = stacked_triangulation(4, 0).unwrap();
        assert_eq!(max_independent_exact(&k4, b()).unwrap().len(), 1);
        assert_eq!(max_independent_exact(&polygon(7), b()).unwrap().len(), 3);
    }
}
