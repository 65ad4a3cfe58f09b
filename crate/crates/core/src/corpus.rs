//! The named small-graph corpus used by the validation suites.
//!
//! Families and seeds are fixed so every suite exercises the same graphs.

use crate::graph::family::FamilySpec;
use crate::graph::Graph;

pub struct NamedGraph {
    pub name: String,
    pub graph: Graph,
}

fn from_spec(text: &str, seed: u64) -> NamedGraph {
    let spec = FamilySpec::parse(text, seed).expect("corpus spec parses");
    NamedGraph {
        name: if spec.family.is_random() { format!("{text}#{seed}") } else { text.to_string() },
        graph: spec.generate().expect("corpus spec generates"),
    }
}

/// Petersen graph: the standard 3-regular girth-5 graph on 10 vertices.
pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((i + 5, 5 + (i + 2) % 5));
    }
    let edges: Vec<(usize, usize)> =
        edges.into_iter().map(|(u, v)| (u.min(v), u.max(v))).collect();
    Graph::from_edges(10, &edges).unwrap()
}

/// The standard corpus: paths, stars, random trees, cycles, cliques,
/// complete bipartite graphs, subdivisions, outerplanar triangulations, and
/// sparse random graphs.
pub fn corpus() -> Vec<NamedGraph> {
    let mut out = Vec::new();
    for n in 1..=6 {
        out.push(from_spec(&format!("path:{n}"), 0));
    }
    out.push(from_spec("path:10", 0));
    out.push(from_spec("complete-bipartite:1,4", 0)); // star K_{1,4}
    out.push(from_spec("complete-bipartite:1,7", 0));
    for seed in [1, 2] {
        out.push(from_spec("random-tree:8", seed));
        out.push(from_spec("random-tree:10", seed));
    }
    for n in 3..=12 {
        out.push(from_spec(&format!("cycle:{n}"), 0));
    }
    for n in 1..=8 {
        out.push(from_spec(&format!("complete:{n}"), 0));
    }
    for s in 2..=6 {
        out.push(from_spec(&format!("complete-bipartite:2,{s}"), 0));
    }
    out.push(from_spec("complete-bipartite:3,3", 0));
    out.push(from_spec("one-subdivision-of(complete:4)", 0));
    out.push(from_spec("one-subdivision-of(complete:5)", 0));
    out.push(from_spec("one-subdivision-of(cycle:5)", 0));
    for seed in [1, 5] {
        out.push(from_spec("maximal-outerplanar:6", seed));
        out.push(from_spec("maximal-outerplanar:9", seed));
    }
    for seed in [3, 4, 5] {
        out.push(from_spec("gnp:8,2/5", seed));
        out.push(from_spec("gnp:10,3/10", seed));
    }
    out.push(NamedGraph { name: "petersen".into(), graph: petersen() });
    out.push(NamedGraph { name: "edgeless:4".into(), graph: Graph::edgeless(4) });
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_builds_and_names_are_unique() {
        let c = corpus();
        assert!(c.len() > 40);
        let mut names: Vec<&str> = c.iter().map(|g| g.name.as_str()).collect();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), c.len());
    }

    #[test]
    fn petersen_is_3_regular_girth_5() {
        let g = petersen();
        assert_eq!((g.n(), g.m()), (10, 15));
        assert!(g.vertices().all(|v| g.degree(v) == 3));
        // Girth 5 means no two vertices share two common neighbours.
        let (s, _) = crate::graph::max_common_neighbors(&g);
        assert_eq!(s, 1);
    }
}
