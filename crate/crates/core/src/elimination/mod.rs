//! Strong degeneracy via greedy elimination of `d`-removable vertices,
//! ordinary degeneracy, and obstruction extraction from stuck eliminations.
//!
//! A vertex `v` is *d-removable* when `deg(v) <= d` and at most one of its
//! neighbours has degree exceeding `d`. A graph is strongly `d`-degenerate
//! when every non-empty subgraph contains a `d`-removable vertex; greedy
//! removal decides this because removability is preserved under vertex
//! deletion (degrees only drop).

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::graph::Graph;

pub mod obstruction;

pub use obstruction::{ObstructionError, ObstructionWitness, SubdivisionEdge, extract_obstruction};

/// One elimination step: the removed vertex, its neighbours in the remaining
/// graph, and those neighbours' degrees at removal time.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EliminationStep {
    pub vertex: usize,
    pub neighbors: Vec<usize>,
    pub neighbor_degrees: Vec<usize>,
}

/// A witnessing order for strong `d`-degeneracy.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EliminationOrder {
    pub d: usize,
    pub steps: Vec<EliminationStep>,
}

/// Result of one greedy elimination run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EliminationOutcome {
    Eliminated(EliminationOrder),
    /// Vertex set of the remaining induced subgraph, which contains no
    /// `d`-removable vertex.
    Stuck { remaining: Vec<usize> },
}

impl EliminationOutcome {
    pub fn is_eliminated(&self) -> bool {
        matches!(self, EliminationOutcome::Eliminated(_))
    }
}

/// True iff `deg(v) <= d` and at most one neighbour of `v` has degree `> d`.
pub fn is_d_removable(g: &Graph, v: usize, d: usize) -> bool {
    assert!(v < g.n(), "vertex {v} out of range");
    assert!(d >= 1, "d must be >= 1");
    if g.degree(v) > d {
        return false;
    }
    g.neighbors(v).iter().filter(|&&w| g.degree(w) > d).count() <= 1
}

/// Greedily removes `d`-removable vertices, lowest index first, until the
/// graph is empty (success) or no candidate remains (stuck).
///
/// Success is order-independent: removability survives vertex deletions, so
/// if any greedy run empties the graph, every greedy run does.
pub fn strong_elimination(g: &Graph, d: usize) -> EliminationOutcome {
    assert!(d >= 1, "d must be >= 1");
    let n = g.n();
    let mut alive = vec![true; n];
    let mut deg: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    // over[v] = number of alive neighbours of v with degree > d.
    let mut over = vec![0usize; n];
    for v in 0..n {
        over[v] = g.neighbors(v).iter().filter(|&&w| deg[w] > d).count();
    }
    let removable = |v: usize, deg: &[usize], over: &[usize]| deg[v] <= d && over[v] <= 1;
    let mut candidates: BTreeSet<usize> =
        (0..n).filter(|&v| removable(v, &deg, &over)).collect();
    let mut steps = Vec::with_capacity(n);
    let mut alive_count = n;

    while alive_count > 0 {
        let Some(&v) = candidates.iter().next() else {
            let remaining = (0..n).filter(|&u| alive[u]).collect();
            return EliminationOutcome::Stuck { remaining };
        };
        candidates.remove(&v);
        debug_assert!(alive[v] && removable(v, &deg, &over));
        let neighbors: Vec<usize> =
            g.neighbors(v).iter().copied().filter(|&w| alive[w]).collect();
        let neighbor_degrees: Vec<usize> = neighbors.iter().map(|&w| deg[w]).collect();
        steps.push(EliminationStep { vertex: v, neighbors: neighbors.clone(), neighbor_degrees });
        alive[v] = false;
        alive_count -= 1;
        for &w in &neighbors {
            let before = deg[w];
            deg[w] -= 1;
            if before == d + 1 {
                // w crossed from heavy to light: neighbours lose one heavy
                // neighbour each, which can unlock them.
                for &x in g.neighbors(w) {
                    if alive[x] {
                        over[x] -= 1;
                        if removable(x, &deg, &over) {
                            candidates.insert(x);
                        }
                    }
                }
            }
            if alive[w] && removable(w, &deg, &over) {
                candidates.insert(w);
            }
        }
    }
    EliminationOutcome::Eliminated(EliminationOrder { d, steps })
}

/// Minimum `d >= 1` for which greedy elimination succeeds, with a witnessing
/// order. Succeeds at `d = max degree` at the latest.
pub fn strong_degeneracy(g: &Graph) -> (usize, EliminationOrder) {
    let limit = g.max_degree().max(1);
    for d in 1..=limit {
        if let EliminationOutcome::Eliminated(order) = strong_elimination(g, d) {
            return (d, order);
        }
    }
    unreachable!("every vertex is removable at d = max degree")
}

/// Standard degeneracy: the maximum, over the min-degree peel, of the
/// degree at removal time. Zero for edgeless graphs.
pub fn degeneracy(g: &Graph) -> usize {
    let n = g.n();
    if n == 0 {
        return 0;
    }
    let mut deg: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    let mut alive = vec![true; n];
    // Bucket queue over degrees.
    let max_deg = g.max_degree();
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); max_deg + 1];
    for v in 0..n {
        buckets[deg[v]].push(v);
    }
    let mut result = 0;
    let mut cursor = 0usize;
    for _ in 0..n {
        let v = loop {
            while cursor <= max_deg && buckets[cursor].is_empty() {
                cursor += 1;
            }
            let v = buckets[cursor].pop().unwrap();
            if alive[v] && deg[v] == cursor {
                break v;
            }
        };
        result = result.max(deg[v]);
        alive[v] = false;
        for &w in g.neighbors(v) {
            if alive[w] {
                deg[w] -= 1;
                buckets[deg[w]].push(w);
                cursor = cursor.min(deg[w]);
            }
        }
    }
    result
}

/// Errors from re-validating an [`EliminationOrder`] against its host graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrderError {
    WrongLength { expected: usize, found: usize },
    RepeatedVertex { vertex: usize },
    WrongNeighbors { step: usize },
    WrongDegrees { step: usize },
    NotRemovable { step: usize, vertex: usize },
}

impl std::fmt::Display for OrderError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OrderError::WrongLength { expected, found } => {
                write!(f, "order has {found} steps, graph has {expected} vertices")
            }
            OrderError::RepeatedVertex { vertex } => write!(f, "vertex {vertex} repeated"),
            OrderError::WrongNeighbors { step } => write!(f, "step {step}: neighbour list mismatch"),
            OrderError::WrongDegrees { step } => write!(f, "step {step}: recorded degrees mismatch"),
            OrderError::NotRemovable { step, vertex } => {
                write!(f, "step {step}: vertex {vertex} is not removable")
            }
        }
    }
}

impl std::error::Error for OrderError {}

impl EliminationOrder {
    /// Replays the order against `g`, checking the recorded neighbour lists,
    /// degrees, and the removability condition at every step.
    pub fn validate(&self, g: &Graph) -> Result<(), OrderError> {
        let n = g.n();
        if self.steps.len() != n {
            return Err(OrderError::WrongLength { expected: n, found: self.steps.len() });
        }
        let mut alive = vec![true; n];
        let mut deg: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
        for (i, step) in self.steps.iter().enumerate() {
            let v = step.vertex;
            if v >= n || !alive[v] {
                return Err(OrderError::RepeatedVertex { vertex: v });
            }
            let neighbors: Vec<usize> =
                g.neighbors(v).iter().copied().filter(|&w| alive[w]).collect();
            if neighbors != step.neighbors {
                return Err(OrderError::WrongNeighbors { step: i });
            }
            let degrees: Vec<usize> = neighbors.iter().map(|&w| deg[w]).collect();
            if degrees != step.neighbor_degrees {
                return Err(OrderError::WrongDegrees { step: i });
            }
            let heavy = degrees.iter().filter(|&&x| x > self.d).count();
            if deg[v] > self.d || heavy > 1 {
                return Err(OrderError::NotRemovable { step: i, vertex: v });
            }
            alive[v] = false;
            for &w in &neighbors {
                deg[w] -= 1;
            }
        }
        Ok(())
    }

    /// The removal order as a plain vertex sequence.
    pub fn vertices(&self) -> Vec<usize> {
        self.steps.iter().map(|s| s.vertex).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::family::FamilySpec;

    fn gen(text: &str, seed: u64) -> Graph {
        FamilySpec::parse(text, seed).unwrap().generate().unwrap()
    }

    #[test]
    fn removability_on_k23() {
        let g = gen("complete-bipartite:2,3", 0);
        // Vertices 2..5 are the degree-2 side; 0 and 1 have degree 3.
        assert!(!is_d_removable(&g, 2, 2)); // both neighbours have degree 3 > 2
        assert!(is_d_removable(&g, 2, 3));
    }

    #[test]
    fn leaves_are_1_removable() {
        for seed in 0..5 {
            let g = gen("random-tree:9", seed);
            let leaf = g.vertices().find(|&v| g.degree(v) == 1).unwrap();
            assert!(is_d_removable(&g, leaf, 1));
        }
    }

    #[test]
    fn c5_eliminates_at_2() {
        let g = gen("cycle:5", 0);
        let EliminationOutcome::Eliminated(order) = strong_elimination(&g, 2) else {
            panic!("C_5 is strongly 2-degenerate");
        };
        assert_eq!(order.steps.len(), 5);
        order.validate(&g).unwrap();
    }

    #[test]
    fn k23_stuck_at_2() {
        let g = gen("complete-bipartite:2,3", 0);
        assert_eq!(
            strong_elimination(&g, 2),
            EliminationOutcome::Stuck { remaining: vec![0, 1, 2, 3, 4] }
        );
    }

    #[test]
    fn subdivided_k4_stuck_at_2() {
        let g = gen("one-subdivision-of(complete:4)", 0);
        let EliminationOutcome::Stuck { remaining } = strong_elimination(&g, 2) else {
            panic!("the 1-subdivision of K_4 has no 2-removable vertex");
        };
        assert_eq!(remaining.len(), 10);
        for v in g.vertices() {
            assert!(!is_d_removable(&g, v, 2), "vertex {v}");
        }
    }

    #[test]
    fn family_values() {
        for seed in 0..3 {
            let (d, order) = strong_degeneracy(&gen("random-tree:10", seed));
            assert_eq!(d, 1);
            order.validate(&gen("random-tree:10", seed)).unwrap();
        }
        for n in 3..=8 {
            assert_eq!(strong_degeneracy(&gen(&format!("cycle:{n}"), 0)).0, 2);
        }
        for s in 2..=6 {
            assert_eq!(strong_degeneracy(&gen(&format!("complete-bipartite:2,{s}"), 0)).0, s);
        }
        for n in 2..=7 {
            assert_eq!(strong_degeneracy(&gen(&format!("complete:{n}"), 0)).0, n - 1);
        }
        for seed in 0..5 {
            let (d, _) = strong_degeneracy(&gen("maximal-outerplanar:30", seed));
            assert!(d <= 4, "outerplanar strong degeneracy {d} > 4");
        }
    }

    #[test]
    fn edge_cases() {
        let empty = Graph::edgeless(0);
        assert!(strong_elimination(&empty, 1).is_eliminated());
        assert_eq!(strong_degeneracy(&empty).0, 1);
        let isolated = Graph::edgeless(4);
        assert_eq!(strong_degeneracy(&isolated).0, 1);
        assert_eq!(degeneracy(&isolated), 0);
    }

    #[test]
    fn degeneracy_values() {
        assert_eq!(degeneracy(&gen("complete-bipartite:2,3", 0)), 2);
        for n in 2..=8 {
            assert_eq!(degeneracy(&gen(&format!("complete:{n}"), 0)), n - 1);
        }
        for seed in 0..3 {
            assert_eq!(degeneracy(&gen("random-tree:12", seed)), 1);
        }
        assert_eq!(degeneracy(&gen("cycle:7", 0)), 2);
    }

    #[test]
    fn degeneracy_never_exceeds_strong() {
        for (text, seed) in [
            ("complete:6", 0),
            ("cycle:9", 0),
            ("complete-bipartite:2,4", 0),
            ("gnp:10,0.4", 3),
            ("maximal-outerplanar:12", 1),
            ("one-subdivision-of(complete:4)", 0),
        ] {
            let g = gen(text, seed);
            assert!(degeneracy(&g) <= strong_degeneracy(&g).0, "{text}");
        }
    }

    #[test]
    fn validate_rejects_tampering() {
        let g = gen("cycle:5", 0);
        let EliminationOutcome::Eliminated(mut order) = strong_elimination(&g, 2) else {
            unreachable!()
        };
        order.steps[0].neighbor_degrees[0] = 99;
        assert!(order.validate(&g).is_err());
    }
}
