//! Dominating sets of plane triangulations from independent sets.
//!
//! Deleting an independent set `I` from a simple plane triangulation leaves
//! a graph with no isolated vertex, self-loop or 2-face, so its smaller
//! partition class has at most `(n - |I|) / 2` vertices. Every deleted vertex
//! ends up alone in a face bounded by its former neighbors, so that class
//! also dominates the triangulation.

use std::collections::BTreeSet;

use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_xoshiro::SplitMix64;
use serde::Serialize;

use crate::domatic::{check_theorem_preconditions, theorem_partition};
use crate::error::{Error, Result};
use crate::oracle::{max_independent_exact, min_dominating_exact, OracleBudget};
use crate::plane::{PlaneMultigraph, Vertex};
use crate::verify::is_dominating;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MisStrategy {
    MinDegreeFirst,
    MaxDegreeFirst,
    Random(u64),
}

impl MisStrategy {
    pub fn name(&self) -> String {
        match self {
            MisStrategy::MinDegreeFirst => "min-degree".into(),
            MisStrategy::MaxDegreeFirst => "max-degree".into(),
            MisStrategy::Random(s) => format!("random:{s}"),
        }
    }
}

/// Simple, connected, at least three vertices, every face of length three.
pub fn is_plane_triangulation(g: &PlaneMultigraph) -> bool {
    triangulation_problem(g).is_none()
}

fn triangulation_problem(g: &PlaneMultigraph) -> Option<String> {
    if g.vertex_count() < 3 {
        return Some(format!("{} vertices", g.vertex_count()));
    }
    if g.self_loops().next().is_some() {
        return Some("self-loop present".into());
    }
    if g.has_parallel_edges() {
        return Some("parallel edges present".into());
    }
    if g.component_count() != 1 {
        return Some(format!("{} components", g.component_count()));
    }
    g.faces()
        .iter()
        .find(|f| f.length != 3)
        .map(|f| format!("face {} has length {}", f.id, f.length))
}

/// A maximal independent set. The degree strategies pick the vertex of
/// smallest (largest) degree among the remaining candidates, counting only
/// candidate neighbors; ties go to the smallest id.
pub fn greedy_mis(g: &PlaneMultigraph, strategy: MisStrategy) -> Vec<Vertex> {
    let n = g.vertex_count();
    let mut cand = vec![true; n];
    let mut left = n;
    let mut out = Vec::new();
    let mut order: Vec<Vertex> = (0..n).collect();
    if let MisStrategy::Random(seed) = strategy {
        order.shuffle(&mut SplitMix64::seed_from_u64(seed));
    }
    let mut cursor = 0;
    while left > 0 {
        let live_deg = |v: Vertex| g.adj(v).iter().filter(|&&u| cand[u]).count();
        let v = match strategy {
            MisStrategy::MinDegreeFirst => (0..n)
                .filter(|&v| cand[v])
                .min_by_key(|&v| (live_deg(v), v))
                .unwrap(),
            MisStrategy::MaxDegreeFirst => (0..n)
                .filter(|&v| cand[v])
                .min_by_key(|&v| (std::cmp::Reverse(live_deg(v)), v))
                .unwrap(),
            MisStrategy::Random(_) => {
                while !cand[order[cursor]] {
                    cursor += 1;
                }
                order[cursor]
            }
        };
        out.push(v);
        cand[v] = false;
        left -= 1;
        for &u in g.adj(v) {
            if cand[u] {
                cand[u] = false;
                left -= 1;
            }
        }
    }
    out.sort_unstable();
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Winner {
    Mt,
    Crr,
    Ours,
}

impl Winner {
    pub fn code(&self) -> &'static str {
        match self {
            Winner::Mt => "mt",
            Winner::Crr => "crr",
            Winner::Ours => "ours",
        }
    }
}

/// Exact rationals serialize as `"p/q"`.
fn ratio_str<S: serde::Serializer>(r: &Ratio<u64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_ratio(r))
}

pub fn fmt_ratio(r: &Ratio<u64>) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub n: usize,
    pub independent_size: usize,
    #[serde(serialize_with = "ratio_str")]
    pub alpha: Ratio<u64>,
    pub dominating_size: usize,
    /// n / 3.
    #[serde(serialize_with = "ratio_str")]
    pub bound_mt: Ratio<u64>,
    /// 2n / 7.
    #[serde(serialize_with = "ratio_str")]
    pub bound_crr: Ratio<u64>,
    /// (1 - alpha) n / 2.
    #[serde(serialize_with = "ratio_str")]
    pub bound_ours: Ratio<u64>,
    pub gamma_exact: Option<usize>,
    pub winner: Winner,
}

impl BoundReport {
    pub fn new(
        n: usize,
        independent: usize,
        dominating: usize,
        gamma_exact: Option<usize>,
    ) -> Self {
        let nn = n as u64;
        let bound_mt = Ratio::new(nn, 3);
        let bound_crr = Ratio::new(2 * nn, 7);
        let bound_ours = Ratio::new(nn - independent as u64, 2);
        let mut winner = Winner::Mt;
        let mut best = bound_mt;
        for (w, b) in [(Winner::Crr, bound_crr), (Winner::Ours, bound_ours)] {
            if b < best {
                best = b;
                winner = w;
            }
        }
        BoundReport {
            n,
            independent_size: independent,
            alpha: if n == 0 {
                Ratio::from_integer(0)
            } else {
                Ratio::new(independent as u64, nn)
            },
            dominating_size: dominating,
            bound_mt,
            bound_crr,
            bound_ours,
            gamma_exact,
            winner,
        }
    }

    pub const CSV_HEADER: &'static str =
        "n,independent,alpha,dominating,bound_mt,bound_crr,bound_ours,gamma_exact,winner";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.n,
            self.independent_size,
            fmt_ratio(&self.alpha),
            self.dominating_size,
            fmt_ratio(&self.bound_mt),
            fmt_ratio(&self.bound_crr),
            fmt_ratio(&self.bound_ours),
            self.gamma_exact.map(|g| g.to_string()).unwrap_or_default(),
            self.winner.code()
        )
    }
}

/// The largest independent set among the greedy strategies (and the exact
/// maximum when `n <= 20`). Returns the set and the strategy that found it.
pub fn best_independent_set(g: &PlaneMultigraph) -> (Vec<Vertex>, String) {
    let mut best = (Vec::new(), String::new());
    let strategies = [
        MisStrategy::MinDegreeFirst,
        MisStrategy::MaxDegreeFirst,
        MisStrategy::Random(g.vertex_count() as u64),
    ];
    for s in strategies {
        let i = greedy_mis(g, s);
        if i.len() > best.0.len() {
            best = (i, s.name());
        }
    }
    if g.vertex_count() <= 20 {
        if let Ok(i) = max_independent_exact(g, OracleBudget::default()) {
            if i.len() > best.0.len() {
                best = (i, "exact".into());
            }
        }
    }
    best
}

/// Options for [`corollary_dominating_set_with`].
#[derive(Clone, Copy, Debug, Default)]
pub struct CorollaryOptions {
    /// Also compute the domination number exactly (small graphs only).
    pub exact: bool,
}

pub fn corollary_dominating_set(
    g: &PlaneMultigraph,
    independent: Option<&[Vertex]>,
) -> Result<(Vec<Vertex>, BoundReport)> {
    corollary_dominating_set_with(g, independent, CorollaryOptions::default())
}

/// Dominating set of size at most `(n - |I|) / 2` for a simple plane
/// triangulation and an independent set `I` (the best greedy one when not
/// given).
pub fn corollary_dominating_set_with(
    g: &PlaneMultigraph,
    independent: Option<&[Vertex]>,
    options: CorollaryOptions,
) -> Result<(Vec<Vertex>, BoundReport)> {
    if let Some(p) = triangulation_problem(g) {
        return Err(Error::NotATriangulation(p));
    }
    let i: Vec<Vertex> = match independent {
        Some(i) => {
            for &v in i {
                g.check_vertex(v)?;
            }
            for &v in i {
                if let Some(&u) = g.adj(v).iter().find(|u| i.contains(u)) {
                    return Err(Error::NotIndependent(v.min(u), v.max(u)));
                }
            }
            let set: BTreeSet<Vertex> = i.iter().copied().collect();
            set.into_iter().collect()
        }
        None => best_independent_set(g).0,
    };
    let removed: BTreeSet<Vertex> = i.iter().copied().collect();
    let (rest, map) = g.delete_vertices_mapped(&removed)?;
    check_theorem_preconditions(&rest).map_err(|e| {
        Error::Internal(format!(
            "deleting an independent set broke the theorem hypotheses: {e}"
        ))
    })?;
    let (a, b) = theorem_partition(&rest)?;
    let small = if b.len() < a.len() { b } else { a };
    let s: Vec<Vertex> = small.iter().map(|&v| map.vertex_to_parent[v]).collect();
    if !is_dominating(g, &s) {
        return Err(Error::Internal("corollary set does not dominate".into()));
    }
    let n = g.vertex_count();
    if 2 * s.len() > n - i.len() {
        return Err(Error::Internal("corollary set exceeds its bound".into()));
    }
    let gamma = if options.exact {
        Some(min_dominating_exact(g, OracleBudget::default())?.0)
    } else {
        None
    };
    let report = BoundReport::new(n, i.len(), s.len(), gamma);
    Ok((s, report))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundSummary {
    pub instances: usize,
    /// Fraction of instances with alpha > 3/7.
    pub frac_alpha_above_3_7: f64,
    /// Fraction of instances whose independent set is smaller than 2n/7.
    pub frac_mis_below_2n_7: f64,
    pub mean_dominating_ratio: f64,
    pub wins_mt: usize,
    pub wins_crr: usize,
    pub wins_ours: usize,
}

pub fn compare_bounds(reports: &[BoundReport]) -> BoundSummary {
    let k = reports.len();
    let frac = |c: usize| if k == 0 { 0.0 } else { c as f64 / k as f64 };
    let above = reports
        .iter()
        .filter(|r| r.alpha > Ratio::new(3, 7))
        .count();
    let below = reports
        .iter()
        .filter(|r| 7 * r.independent_size < 2 * r.n)
        .count();
    let mean = if k == 0 {
        0.0
    } else {
        reports
            .iter()
            .map(|r| r.dominating_size as f64 / r.n as f64)
            .sum::<f64>()
            / k as f64
    };
    let wins = |w: Winner| reports.iter().filter(|r| r.winner == w).count();
    BoundSummary {
        instances: k,
        frac_alpha_above_3_7: frac(above),
        frac_mis_below_2n_7: frac(below),
        mean_dominating_ratio: mean,
        wins_mt: wins(Winner::Mt),
        wins_crr: wins(Winner::Crr),
        wins_ours: wins(Winner::Ours),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{octahedron, polygon, stacked_triangulation};
    use crate::plg::parse_plg;

    #[test]
    fn recognizes_triangulations() {
        assert!(is_plane_triangulation(
            &stacked_triangulation(4, 0).unwrap()
        ));
        assert!(!is_plane_triangulation(&polygon(4)));
        let oct = octahedron();
        assert!(is_plane_triangulation(&oct));
        assert_eq!(oct.faces().len(), 8);
        assert!(oct.faces().iter().all(|f| f.length == 3));
        // A lone triangle: two faces of length three.
        assert!(is_plane_triangulation(&polygon(3)));
    }

    #[test]
    fn greedy_examples() {
        let k4 = stacked_triangulation(4, 0).unwrap();
        for s in [
            MisStrategy::MinDegreeFirst,
            MisStrategy::MaxDegreeFirst,
            MisStrategy::Random(3),
        ] {
            assert_eq!(greedy_mis(&k4, s).len(), 1);
        }
        let oct = octahedron();
        let i = greedy_mis(&oct, MisStrategy::MinDegreeFirst);
        assert_eq!(i.len(), 2);
        assert!(!oct.are_adjacent(i[0], i[1]));
        let empty = parse_plg("plg 1\nv 0\nv 1\nv 2\nv 3\nv 4\n").unwrap();
        assert_eq!(
            greedy_mis(&empty, MisStrategy::MaxDegreeFirst),
            vec![0, 1, 2, 3, 4]
        );
    }

    #[test]
    fn greedy_is_maximal() {
        for seed in 0..10 {
            let t = stacked_triangulation(40, seed).unwrap();
            for s in [
                MisStrategy::MinDegreeFirst,
                MisStrategy::MaxDegreeFirst,
                MisStrategy::Random(seed),
            ] {
                let i = greedy_mis(&t, s);
                let set: BTreeSet<_> = i.iter().copied().collect();
                for &v in &i {
                    assert!(t.adj(v).iter().all(|u| !set.contains(u)));
                }
                for v in t.vertices() {
                    assert!(set.contains(&v) || t.adj(v).iter().any(|u| set.contains(u)));
                }
            }
        }
    }

    #[test]
    fn k4_corollary() {
        let k4 = stacked_triangulation(4, 0).unwrap();
        let (s, r) =
            corollary_dominating_set_with(&k4, Some(&[0]), CorollaryOptions { exact: true })
                .unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(r.gamma_exact, Some(1));
        assert_eq!(r.bound_ours, Ratio::new(3, 2));
    }

    #[test]
    fn octahedron_corollary() {
        let oct = octahedron();
        let (s, r) =
            corollary_dominating_set_with(&oct, Some(&[0, 5]), CorollaryOptions { exact: true })
                .unwrap();
        assert!(s.len() <= 2);
        assert!(is_dominating(&oct, &s));
        assert_eq!(r.alpha, Ratio::new(1, 3));
        assert_eq!(r.gamma_exact, Some(2));
    }

    #[test]
    fn corollary_errors() {
        assert!(matches!(
            corollary_dominating_set(&polygon(4), None),
            Err(Error::NotATriangulation(_))
        ));
        let oct = octahedron();
        assert_eq!(
            corollary_dominating_set(&oct, Some(&[0, 1])).unwrap_err(),
            Error::NotIndependent(0, 1)
        );
    }

    #[test]
    fn winners() {
        let r = BoundReport::new(28, 14, 7, None);
        assert_eq!(r.alpha, Ratio::new(1, 2));
        assert_eq!(r.bound_ours, Ratio::new(7, 1));
        assert_eq!(r.winner, Winner::Ours);
        let r = BoundReport::new(30, 10, 10, None);
        assert_eq!(r.winner, Winner::Crr);
        let r = BoundReport::new(4, 1, 1, None);
        assert_eq!(r.bound_ours, Ratio::new(3, 2));
        assert_eq!(r.bound_crr, Ratio::new(8, 7));
        assert_eq!(r.winner, Winner::Crr);
    }

    #[test]
    fn summary_recomputes_rows() {
        let reports: Vec<BoundReport> = (0..30)
            .map(|seed| {
                corollary_dominating_set(&stacked_triangulation(25, seed).unwrap(), None)
                    .unwrap()
                    .1
            })
            .collect();
        let s = compare_bounds(&reports);
        assert_eq!(s.instances, 30);
        assert_eq!(s.wins_mt + s.wins_crr + s.wins_ours, 30);
        for f in [
            s.frac_alpha_above_3_7,
            s.frac_mis_below_2n_7,
            s.mean_dominating_ratio,
        ] {
            assert!((0.0..=1.0).contains(&f));
        }
        let ours = reports
            .iter()
            .filter(|r| r.alpha > Ratio::new(3, 7))
            .count();
        assert_eq!(s.frac_alpha_above_3_7, ours as f64 / 30.0);
    }
}
