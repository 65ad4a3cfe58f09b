//! Immutable simple undirected graphs on vertices `0..n`, the canonical
//! edge-list text format, and the common-neighbour detector.
//!
//! # Edge-list format
//!
//! UTF-8 text. The first non-comment line is `n m`; then exactly `m` lines
//! `u v` with `0 <= u < v < n`. Lines starting with `#` are comments and may
//! appear anywhere; blank lines are ignored. Duplicate edges and loops are
//! rejected.

use std::collections::BTreeMap;
use std::fmt;

pub mod family;
pub mod outerplanar;

pub use family::{Family, FamilySpec, Probability};
pub use outerplanar::{EarStep, MopCheck, MopFailure, is_maximal_outerplanar};

/// Simple undirected graph. Vertices are dense integers `0..n`; the adjacency
/// list of every vertex is sorted. Immutable after construction, so shared
/// references are safe across threads.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    m: usize,
    adj: Vec<Vec<usize>>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, m={})", self.n, self.m)
    }
}

/// Construction errors for [`Graph::from_edges`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphError {
    VertexOutOfRange { vertex: usize, n: usize },
    Loop { vertex: usize },
    DuplicateEdge { u: usize, v: usize },
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::VertexOutOfRange { vertex, n } => {
                write!(f, "vertex {vertex} out of range for n = {n}")
            }
            GraphError::Loop { vertex } => write!(f, "loop at vertex {vertex}"),
            GraphError::DuplicateEdge { u, v } => write!(f, "duplicate edge {u} {v}"),
        }
    }
}

impl std::error::Error for GraphError {}

impl Graph {
    /// Builds a graph from an edge list, validating simplicity.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n {
                return Err(GraphError::VertexOutOfRange { vertex: u, n });
            }
            if v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n });
            }
            if u == v {
                return Err(GraphError::Loop { vertex: u });
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        for (u, list) in adj.iter().enumerate() {
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                let (a, b) = if u < w[0] { (u, w[0]) } else { (w[0], u) };
                return Err(GraphError::DuplicateEdge { u: a, v: b });
            }
        }
        Ok(Graph { n, m: edges.len(), adj })
    }

    /// Graph with no edges.
    pub fn edgeless(n: usize) -> Graph {
        Graph { n, m: 0, adj: vec![Vec::new(); n] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Sorted neighbours of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    /// All edges as `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m);
        for u in 0..self.n {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Degrees of all vertices inside the induced subgraph on `keep`.
    pub fn induced_degrees(&self, keep: &[bool]) -> Vec<usize> {
        let mut deg = vec![0usize; self.n];
        for v in 0..self.n {
            if keep[v] {
                deg[v] = self.adj[v].iter().filter(|&&w| keep[w]).count();
            }
        }
        deg
    }

    /// Renders the graph in the canonical edge-list format.
    pub fn to_edge_list(&self) -> String {
        let mut s = format!("{} {}\n", self.n, self.m);
        for (u, v) in self.edges() {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }
}

/// Parse errors for the edge-list format, each naming the offending 1-based
/// line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseError {
    MissingHeader,
    MalformedHeader { line: usize },
    MalformedLine { line: usize },
    VertexOutOfRange { line: usize, vertex: usize, n: usize },
    Loop { line: usize },
    /// Edge lines must satisfy `u < v`.
    UnorderedEdge { line: usize },
    DuplicateEdge { line: usize },
    MissingEdges { expected: usize, found: usize },
    ExtraEdges { line: usize },
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::MissingHeader => write!(f, "missing `n m` header line"),
            ParseError::MalformedHeader { line } => write!(f, "line {line}: malformed header"),
            ParseError::MalformedLine { line } => write!(f, "line {line}: malformed edge line"),
            ParseError::VertexOutOfRange { line, vertex, n } => {
                write!(f, "line {line}: vertex {vertex} out of range for n = {n}")
            }
            ParseError::Loop { line } => write!(f, "line {line}: loop"),
            ParseError::UnorderedEdge { line } => {
                write!(f, "line {line}: edge must be written `u v` with u < v")
            }
            ParseError::DuplicateEdge { line } => write!(f, "line {line}: duplicate edge"),
            ParseError::MissingEdges { expected, found } => {
                write!(f, "expected {expected} edge lines, found {found}")
            }
            ParseError::ExtraEdges { line } => write!(f, "line {line}: more edge lines than m"),
        }
    }
}

impl std::error::Error for ParseError {}

/// Parses the canonical edge-list format.
pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut seen: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut it = line.split_ascii_whitespace();
        let a = it.next();
        let b = it.next();
        let rest = it.next();
        let (Some(a), Some(b), None) = (a, b, rest) else {
            return Err(if header.is_none() {
                ParseError::MalformedHeader { line: line_no }
            } else {
                ParseError::MalformedLine { line: line_no }
            });
        };
        match header {
            None => {
                let n = a.parse().map_err(|_| ParseError::MalformedHeader { line: line_no })?;
                let m = b.parse().map_err(|_| ParseError::MalformedHeader { line: line_no })?;
                header = Some((n, m));
            }
            Some((n, m)) => {
                if edges.len() == m {
                    return Err(ParseError::ExtraEdges { line: line_no });
                }
                let u: usize = a.parse().map_err(|_| ParseError::MalformedLine { line: line_no })?;
                let v: usize = b.parse().map_err(|_| ParseError::MalformedLine { line: line_no })?;
                if u == v {
                    return Err(ParseError::Loop { line: line_no });
                }
                if u > v {
                    return Err(ParseError::UnorderedEdge { line: line_no });
                }
                if v >= n {
                    return Err(ParseError::VertexOutOfRange { line: line_no, vertex: v, n });
                }
                if seen.insert((u, v), line_no).is_some() {
                    return Err(ParseError::DuplicateEdge { line: line_no });
                }
                edges.push((u, v));
            }
        }
    }
    let Some((n, m)) = header else {
        return Err(ParseError::MissingHeader);
    };
    if edges.len() != m {
        return Err(ParseError::MissingEdges { expected: m, found: edges.len() });
    }
    Ok(Graph::from_edges(n, &edges).expect("edges validated during parse"))
}

/// Maximum number of common neighbours over all vertex pairs, with a pair
/// attaining it. Returns `(0, None)` when no two vertices share a neighbour.
///
/// The returned `s` is the largest value such that `K_{2,s}` is a subgraph
/// (for `s >= 1`). Counting walks over wedges, so the cost is
/// `O(sum_v deg(v)^2)` rather than `O(n^2)`.
pub fn max_common_neighbors(g: &Graph) -> (usize, Option<(usize, usize)>) {
    let mut wedge_counts: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for v in g.vertices() {
        let nb = g.neighbors(v);
        for i in 0..nb.len() {
            for j in i + 1..nb.len() {
                *wedge_counts.entry((nb[i], nb[j])).or_insert(0) += 1;
            }
        }
    }
    let mut best: Option<(usize, (usize, usize))> = None;
    for (&pair, &count) in &wedge_counts {
        // BTreeMap iterates pairs in order, so ties keep the smallest pair.
        if best.map_or(true, |(bc, _)| count > bc) {
            best = Some((count, pair));
        }
    }
    match best {
        Some((count, pair)) => (count, Some(pair)),
        None => (0, None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete_bipartite(a: usize, b: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..a {
            for v in a..a + b {
                edges.push((u, v));
            }
        }
        Graph::from_edges(a + b, &edges).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i.min((i + 1) % n), i.max((i + 1) % n))).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn parses_triangle() {
        let g = parse_edge_list("3 3\n0 1\n1 2\n0 2").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.m(), 3);
        assert_eq!((0..3).map(|v| g.degree(v)).collect::<Vec<_>>(), vec![2, 2, 2]);
    }

    #[test]
    fn rejects_loop() {
        assert_eq!(parse_edge_list("2 1\n0 0"), Err(ParseError::Loop { line: 2 }));
    }

    #[test]
    fn parses_c4() {
        let g = parse_edge_list("4 4\n0 1\n1 2\n2 3\n# a comment\n0 3").unwrap();
        assert_eq!(g.m(), 4);
        assert!((0..4).all(|v| g.degree(v) == 2));
    }

    #[test]
    fn rejects_duplicates_and_out_of_range() {
        assert_eq!(
            parse_edge_list("3 2\n0 1\n0 1"),
            Err(ParseError::DuplicateEdge { line: 3 })
        );
        assert_eq!(
            parse_edge_list("3 1\n0 3"),
            Err(ParseError::VertexOutOfRange { line: 2, vertex: 3, n: 3 })
        );
        assert_eq!(parse_edge_list("3 1\n1 0"), Err(ParseError::UnorderedEdge { line: 2 }));
        assert_eq!(parse_edge_list("3 2\n0 1"), Err(ParseError::MissingEdges { expected: 2, found: 1 }));
        assert_eq!(parse_edge_list("zz 1\n0 1"), Err(ParseError::MalformedHeader { line: 1 }));
        assert_eq!(parse_edge_list(""), Err(ParseError::MissingHeader));
        assert_eq!(parse_edge_list("2 1\n0 1\n0 1x"), Err(ParseError::ExtraEdges { line: 3 }));
    }

    #[test]
    fn edge_list_round_trip() {
        let g = cycle(5);
        let text = g.to_edge_list();
        let h = parse_edge_list(&text).unwrap();
        assert_eq!(g, h);
    }

    #[test]
    fn common_neighbors_k23() {
        let g = complete_bipartite(2, 3);
        let (s, pair) = max_common_neighbors(&g);
        assert_eq!(s, 3);
        assert_eq!(pair, Some((0, 1))); // the two degree-3 centres
    }

    #[test]
    fn common_neighbors_cycles() {
        let (s, pair) = max_common_neighbors(&cycle(5));
        assert_eq!(s, 1);
        assert!(pair.is_some());
        let (s, pair) = max_common_neighbors(&cycle(4));
        assert_eq!(s, 2);
        assert_eq!(pair, Some((0, 2))); // a diagonal pair
    }

    #[test]
    fn common_neighbors_no_wedge() {
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        assert_eq!(max_common_neighbors(&g), (0, None));
        assert_eq!(max_common_neighbors(&Graph::edgeless(4)), (0, None));
    }
}
