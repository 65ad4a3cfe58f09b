//! Obstruction witnesses extracted from stuck eliminations.
//!
//! When greedy elimination at threshold `d` gets stuck, the remaining induced
//! subgraph splits into light vertices `A` (degree <= d) and heavy vertices
//! `B` (degree > d). Each light vertex has at least two heavy neighbours, and
//! fixing two per light vertex builds an auxiliary graph `H` on `B`. Either
//! some heavy pair is chosen by `d + 1` light vertices (a `K_{2,d+1}`
//! subgraph), or peeling `H` to its densest core yields a graph `F` of min
//! degree `delta` whose 1-subdivision embeds in the host via the chosen
//! middles. With `A` empty the stuck subgraph itself plays the role of `H`
//! and the embedding has no subdivided edges.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::graph::Graph;

use super::{EliminationOutcome, strong_elimination};

/// An edge of the extracted graph `F`, with the host middle vertex realising
/// it as a path of length two (or `None` when the edge is a direct host edge).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubdivisionEdge {
    pub u: usize,
    pub v: usize,
    pub middle: Option<usize>,
}

/// Certificate that a graph is not strongly `d`-degenerate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "snake_case")]
pub enum ObstructionWitness {
    /// `K_{2,s}` subgraph: two centres adjacent to `s` common neighbours.
    Bipartite { centers: (usize, usize), commons: Vec<usize> },
    /// A graph `F` on `branch_vertices` with min degree `delta`, embedded in
    /// the host as a 1-subdivision through the listed (distinct) middles.
    Subdivision {
        branch_vertices: Vec<usize>,
        delta: usize,
        edges: Vec<SubdivisionEdge>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ObstructionError {
    /// Elimination at this `d` is not stuck, so there is nothing to extract.
    NotStuck { d: usize },
}

impl std::fmt::Display for ObstructionError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ObstructionError::NotStuck { d } => {
                write!(f, "elimination succeeds at d = {d}; no obstruction to extract")
            }
        }
    }
}

impl std::error::Error for ObstructionError {}

/// Runs `strong_elimination(g, d)` and extracts a witness from the stuck
/// induced subgraph. Vertex ids in the witness refer to the host graph.
pub fn extract_obstruction(g: &Graph, d: usize) -> Result<ObstructionWitness, ObstructionError> {
    let EliminationOutcome::Stuck { remaining } = strong_elimination(g, d) else {
        return Err(ObstructionError::NotStuck { d });
    };
    let mut keep = vec![false; g.n()];
    for &v in &remaining {
        keep[v] = true;
    }
    let deg = g.induced_degrees(&keep);

    let light: Vec<usize> = remaining.iter().copied().filter(|&v| deg[v] <= d).collect();
    let heavy: Vec<usize> = remaining.iter().copied().filter(|&v| deg[v] > d).collect();

    if light.is_empty() {
        // The stuck subgraph itself has min degree > d; peel it directly.
        let mut h_adj: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &v in &heavy {
            h_adj.insert(v, g.neighbors(v).iter().copied().filter(|&w| keep[w]).collect());
        }
        let (core, delta) = densest_core(&h_adj);
        let mut edges = Vec::new();
        for &u in &core {
            for &v in &h_adj[&u] {
                if u < v && core.binary_search(&v).is_ok() {
                    edges.push(SubdivisionEdge { u, v, middle: None });
                }
            }
        }
        return Ok(ObstructionWitness::Subdivision { branch_vertices: core, delta, edges });
    }

    // Each light vertex picks its two smallest heavy neighbours.
    let mut pair_choosers: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for &a in &light {
        let bs: Vec<usize> = g
            .neighbors(a)
            .iter()
            .copied()
            .filter(|&w| keep[w] && deg[w] > d)
            .take(2)
            .collect();
        debug_assert!(bs.len() >= 2, "a non-removable light vertex has >= 2 heavy neighbours");
        pair_choosers.entry((bs[0], bs[1])).or_default().push(a);
    }

    // A pair chosen d+1 times yields K_{2,d+1} directly.
    for (&(b1, b2), choosers) in &pair_choosers {
        if choosers.len() >= d + 1 {
            return Ok(ObstructionWitness::Bipartite {
                centers: (b1, b2),
                commons: choosers.clone(),
            });
        }
    }

    // Otherwise build H on the heavy side from the chosen pairs; each H-edge
    // remembers its smallest chooser as the subdivision middle.
    let mut h_adj: BTreeMap<usize, Vec<usize>> = heavy.iter().map(|&b| (b, Vec::new())).collect();
    let mut middle: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (&(b1, b2), choosers) in &pair_choosers {
        h_adj.get_mut(&b1).unwrap().push(b2);
        h_adj.get_mut(&b2).unwrap().push(b1);
        middle.insert((b1, b2), choosers[0]);
    }
    for list in h_adj.values_mut() {
        list.sort_unstable();
    }
    let (core, delta) = densest_core(&h_adj);
    let mut edges = Vec::new();
    for &u in &core {
        for &v in &h_adj[&u] {
            if u < v && core.binary_search(&v).is_ok() {
                edges.push(SubdivisionEdge { u, v, middle: Some(middle[&(u, v)]) });
            }
        }
    }
    Ok(ObstructionWitness::Subdivision { branch_vertices: core, delta, edges })
}

/// Peels the graph to its non-empty core of maximum min-degree: repeatedly
/// delete vertices of degree `< delta` for the largest `delta` with a
/// non-empty result. Returns the core's sorted vertex set and its actual
/// minimum degree.
fn densest_core(adj: &BTreeMap<usize, Vec<usize>>) -> (Vec<usize>, usize) {
    let ids: Vec<usize> = adj.keys().copied().collect();
    let index: BTreeMap<usize, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let lists: Vec<Vec<usize>> =
        ids.iter().map(|v| adj[v].iter().map(|w| index[w]).collect()).collect();
    let k = ids.len();

    // Min-degree peel to find the largest workable threshold (the degeneracy).
    let mut deg: Vec<usize> = lists.iter().map(Vec::len).collect();
    let mut alive = vec![true; k];
    let mut best = 0usize;
    for _ in 0..k {
        let v = (0..k).filter(|&v| alive[v]).min_by_key(|&v| (deg[v], v)).unwrap();
        best = best.max(deg[v]);
        alive[v] = false;
        for &w in &lists[v] {
            if alive[w] {
                deg[w] -= 1;
            }
        }
    }

    // Rebuild the core: iteratively delete vertices of degree < best.
    let mut deg: Vec<usize> = lists.iter().map(Vec::len).collect();
    let mut alive = vec![true; k];
    loop {
        let doomed: Vec<usize> = (0..k).filter(|&v| alive[v] && deg[v] < best).collect();
        if doomed.is_empty() {
            break;
        }
        for v in doomed {
            alive[v] = false;
            for &w in &lists[v] {
                if alive[w] {
                    deg[w] -= 1;
                }
            }
        }
    }
    let core: Vec<usize> = (0..k).filter(|&v| alive[v]).map(|v| ids[v]).collect();
    debug_assert!(!core.is_empty());
    let min_deg = (0..k).filter(|&v| alive[v]).map(|v| deg[v]).min().unwrap_or(0);
    (core, min_deg)
}

impl ObstructionWitness {
    /// Re-validates the witness against the host graph's edge set.
    pub fn validate(&self, g: &Graph) -> Result<(), String> {
        match self {
            ObstructionWitness::Bipartite { centers: (b1, b2), commons } => {
                if b1 == b2 {
                    return Err("centres coincide".into());
                }
                let mut seen = std::collections::BTreeSet::new();
                for &a in commons {
                    if !seen.insert(a) {
                        return Err(format!("common neighbour {a} repeated"));
                    }
                    if a == *b1 || a == *b2 {
                        return Err(format!("common neighbour {a} equals a centre"));
                    }
                    if !g.has_edge(a.min(*b1), a.max(*b1)) || !g.has_edge(a.min(*b2), a.max(*b2)) {
                        return Err(format!("missing host edge at common neighbour {a}"));
                    }
                }
                Ok(())
            }
            ObstructionWitness::Subdivision { branch_vertices, delta, edges } => {
                let branch: std::collections::BTreeSet<usize> =
                    branch_vertices.iter().copied().collect();
                if branch.len() != branch_vertices.len() {
                    return Err("branch vertices repeated".into());
                }
                let mut deg: BTreeMap<usize, usize> =
                    branch_vertices.iter().map(|&v| (v, 0)).collect();
                let mut middles = std::collections::BTreeSet::new();
                let mut seen_edges = std::collections::BTreeSet::new();
                for e in edges {
                    if !branch.contains(&e.u) || !branch.contains(&e.v) || e.u == e.v {
                        return Err(format!("edge ({}, {}) not on branch vertices", e.u, e.v));
                    }
                    if !seen_edges.insert((e.u.min(e.v), e.u.max(e.v))) {
                        return Err(format!("edge ({}, {}) repeated", e.u, e.v));
                    }
                    *deg.get_mut(&e.u).unwrap() += 1;
                    *deg.get_mut(&e.v).unwrap() += 1;
                    match e.middle {
                        None => {
                            if !g.has_edge(e.u.min(e.v), e.u.max(e.v)) {
                                return Err(format!("missing host edge ({}, {})", e.u, e.v));
                            }
                        }
                        Some(m) => {
                            if branch.contains(&m) {
                                return Err(format!("middle {m} is a branch vertex"));
                            }
                            if !middles.insert(m) {
                                return Err(format!("middle {m} reused (paths not disjoint)"));
                            }
                            if !g.has_edge(m.min(e.u), m.max(e.u))
                                || !g.has_edge(m.min(e.v), m.max(e.v))
                            {
                                return Err(format!("missing host path through middle {m}"));
                            }
                        }
                    }
                }
                let min_deg = deg.values().copied().min().unwrap_or(0);
                if min_deg != *delta {
                    return Err(format!("stated delta {delta} but min degree of F is {min_deg}"));
                }
                Ok(())
            }
        }
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
    fn k23_gives_bipartite_witness() {
        let g = gen("complete-bipartite:2,3", 0);
        let w = extract_obstruction(&g, 2).unwrap();
        match &w {
            ObstructionWitness::Bipartite { centers, commons } => {
                assert_eq!(*centers, (0, 1));
                assert_eq!(commons.len(), 3);
            }
            other => panic!("expected bipartite witness, got {other:?}"),
        }
        w.validate(&g).unwrap();
    }

    #[test]
    fn subdivided_k4_gives_subdivision_witness() {
        let g = gen("one-subdivision-of(complete:4)", 0);
        let w = extract_obstruction(&g, 2).unwrap();
        match &w {
            ObstructionWitness::Subdivision { branch_vertices, delta, edges } => {
                assert_eq!(branch_vertices, &vec![0, 1, 2, 3]);
                assert_eq!(*delta, 3);
                assert_eq!(edges.len(), 6); // F = K_4
                assert!(edges.iter().all(|e| e.middle.is_some()));
            }
            other => panic!("expected subdivision witness, got {other:?}"),
        }
        w.validate(&g).unwrap();
    }

    #[test]
    fn c4_at_d1_degenerates_to_identity_embedding() {
        let g = gen("cycle:4", 0);
        let w = extract_obstruction(&g, 1).unwrap();
        match &w {
            ObstructionWitness::Subdivision { branch_vertices, delta, edges } => {
                assert_eq!(branch_vertices.len(), 4);
                assert!(*delta >= 2);
                assert!(edges.iter().all(|e| e.middle.is_none()));
            }
            other => panic!("expected subdivision witness, got {other:?}"),
        }
        w.validate(&g).unwrap();
    }

    #[test]
    fn not_stuck_is_an_error() {
        let g = gen("cycle:5", 0);
        assert_eq!(extract_obstruction(&g, 2), Err(ObstructionError::NotStuck { d: 2 }));
    }

    #[test]
    fn validation_catches_corruption() {
        let g = gen("complete-bipartite:2,3", 0);
        let w = extract_obstruction(&g, 2).unwrap();
        let ObstructionWitness::Bipartite { centers, mut commons } = w else { unreachable!() };
        commons.push(commons[0]);
        let bad = ObstructionWitness::Bipartite { centers, commons };
        assert!(bad.validate(&g).is_err());
    }
}
