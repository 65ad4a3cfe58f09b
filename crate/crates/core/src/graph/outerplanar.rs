//! Maximal-outerplanar recognition by ear peeling.
//!
//! An *ear* is a degree-2 vertex whose two neighbours are adjacent. A graph
//! on `n >= 3` vertices with `m = 2n - 3` edges that peels down to a triangle
//! by repeated ear removal is accepted; the peeling order is returned so the
//! certifier can reuse it.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::Graph;

/// One removed ear: the vertex and its two neighbours at removal time.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EarStep {
    pub vertex: usize,
    pub neighbors: (usize, usize),
}

/// Outcome of recognition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MopCheck {
    /// Recognised; `ears` lists removals down to the final triangle
    /// (empty for `K_3`).
    Yes { ears: Vec<EarStep> },
    No { reason: MopFailure },
}

impl MopCheck {
    pub fn is_yes(&self) -> bool {
        matches!(self, MopCheck::Yes { .. })
    }
}

/// Structured reasons for rejection.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MopFailure {
    TooFewVertices { n: usize },
    WrongEdgeCount { m: usize, expected: usize },
    /// No ear available; the remaining vertex set is reported.
    PeelingStuck { remaining: Vec<usize> },
}

impl std::fmt::Display for MopFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MopFailure::TooFewVertices { n } => write!(f, "only {n} vertices (need >= 3)"),
            MopFailure::WrongEdgeCount { m, expected } => {
                write!(f, "edge count {m} != 2n-3 = {expected}")
            }
            MopFailure::PeelingStuck { remaining } => {
                write!(f, "ear peeling stuck with {} vertices remaining", remaining.len())
            }
        }
    }
}

/// Recognises maximal outerplanar graphs (triangulations of a polygon).
///
/// Lowest-index ear first, so the order is deterministic.
pub fn is_maximal_outerplanar(g: &Graph) -> MopCheck {
    let n = g.n();
    if n < 3 {
        return MopCheck::No { reason: MopFailure::TooFewVertices { n } };
    }
    let expected = 2 * n - 3;
    if g.m() != expected {
        return MopCheck::No { reason: MopFailure::WrongEdgeCount { m: g.m(), expected } };
    }
    let mut alive = vec![true; n];
    let mut deg: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    let mut alive_count = n;
    let mut ears = Vec::new();

    // A vertex is a candidate once its degree hits 2; whether its two alive
    // neighbours are adjacent is fixed from that moment (degrees only drop).
    let alive_pair = |v: usize, alive: &[bool]| -> Option<(usize, usize)> {
        let mut it = g.neighbors(v).iter().copied().filter(|&w| alive[w]);
        let a = it.next()?;
        let b = it.next()?;
        debug_assert!(it.next().is_none());
        Some((a, b))
    };
    let mut candidates: BTreeSet<usize> = g
        .vertices()
        .filter(|&v| deg[v] == 2)
        .filter(|&v| {
            let (a, b) = alive_pair(v, &alive).unwrap();
            g.has_edge(a, b)
        })
        .collect();

    while alive_count > 3 {
        let Some(&v) = candidates.iter().next() else {
            let remaining: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
            return MopCheck::No { reason: MopFailure::PeelingStuck { remaining } };
        };
        candidates.remove(&v);
        if !alive[v] || deg[v] != 2 {
            continue;
        }
        let (a, b) = alive_pair(v, &alive).unwrap();
        debug_assert!(g.has_edge(a, b));
        ears.push(EarStep { vertex: v, neighbors: (a, b) });
        alive[v] = false;
        alive_count -= 1;
        for w in [a, b] {
            deg[w] -= 1;
            candidates.remove(&w); // stale entries (degree changed) drop out
            if deg[w] == 2 {
                if let Some((x, y)) = alive_pair(w, &alive) {
                    if g.has_edge(x, y) {
                        candidates.insert(w);
                    }
                }
            }
        }
    }

    // 2n-3 edges minus two per ear leaves exactly 3; verify they form K_3.
    let rest: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
    let triangle = g.has_edge(rest[0], rest[1])
        && g.has_edge(rest[0], rest[2])
        && g.has_edge(rest[1], rest[2]);
    if !triangle {
        return MopCheck::No { reason: MopFailure::PeelingStuck { remaining: rest } };
    }
    MopCheck::Yes { ears }
}

/// Fan: path `v_0..v_{k-1}` plus an apex adjacent to every path vertex. A
/// polygon triangulation, handy as a fixture.
#[cfg(test)]
pub(crate) fn fan(total: usize) -> Graph {
    let k = total - 1;
    let mut edges: Vec<_> = (1..k).map(|i| (i - 1, i)).collect();
    for i in 0..k {
        edges.push((i, k));
    }
    Graph::from_edges(total, &edges).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::family::FamilySpec;

    fn cycle(n: usize) -> Graph {
        FamilySpec::parse(&format!("cycle:{n}"), 0).unwrap().generate().unwrap()
    }

    #[test]
    fn triangle_is_base_case() {
        let g = FamilySpec::parse("complete:3", 0).unwrap().generate().unwrap();
        match is_maximal_outerplanar(&g) {
            MopCheck::Yes { ears } => assert!(ears.is_empty()),
            no => panic!("expected yes, got {no:?}"),
        }
    }

    #[test]
    fn c5_fails_edge_count() {
        let g = cycle(5);
        assert_eq!(
            is_maximal_outerplanar(&g),
            MopCheck::No { reason: MopFailure::WrongEdgeCount { m: 5, expected: 7 } }
        );
    }

    #[test]
    fn fan_f5_is_recognised() {
        let g = fan(5);
        let MopCheck::Yes { ears } = is_maximal_outerplanar(&g) else {
            panic!("fan must be maximal outerplanar");
        };
        assert_eq!(ears.len(), 2);
        // First ear is the lowest-index degree-2 vertex, an endpoint of the path.
        assert_eq!(ears[0].vertex, 0);
    }

    #[test]
    fn k4_rejected() {
        let g = FamilySpec::parse("complete:4", 0).unwrap().generate().unwrap();
        // K_4 has 6 edges but 2n-3 = 5.
        assert!(!is_maximal_outerplanar(&g).is_yes());
    }

    #[test]
    fn generated_mops_recognised() {
        for n in [3usize, 4, 5, 8, 13, 50] {
            for seed in 0..5 {
                let g = FamilySpec::parse(&format!("maximal-outerplanar:{n}"), seed)
                    .unwrap()
                    .generate()
                    .unwrap();
                assert!(is_maximal_outerplanar(&g).is_yes(), "n={n} seed={seed}");
            }
        }
    }

    #[test]
    fn right_edge_count_but_stuck() {
        // C_4 plus a pendant path has no ear anywhere: take C_5 with two chords
        // making... simpler: K_{2,3} has 6 edges, 2*5-3 = 7, so use a direct
        // construction: C_6 with chords (0,2), (0,4), (2,4) has n=6, m=9=2n-3
        // but the "inner" triangle peels fine; instead use the book graph
        // B_2 missing structure: a 4-cycle 0-1-2-3 plus vertex 4 adjacent to
        // 0 and 2 (m = 6, n = 5, 2n-3 = 7 mismatch). Fall back to a stuck
        // example: the prism K_3 x K_2 (n=6, m=9=2n-3) has no degree-2 vertex.
        let prism = Graph::from_edges(
            6,
            &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)],
        )
        .unwrap();
        match is_maximal_outerplanar(&prism) {
            MopCheck::No { reason: MopFailure::PeelingStuck { remaining } } => {
                assert_eq!(remaining.len(), 6)
            }
            other => panic!("expected stuck, got {other:?}"),
        }
    }
}
