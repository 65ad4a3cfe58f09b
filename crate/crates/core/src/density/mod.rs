//! Shallow-minor density measures and the strong-degeneracy bound formulas.
//!
//! Depth 0 (maximum subgraph density) is computed exactly by parametric
//! binary search with a max-flow feasibility test per candidate rational;
//! every capacity is an integer, so feasibility is exact. Depths 1/2 and 1
//! are desk-scale brute forces over branch sets and contraction families.
//! All values are exact rationals with denominator at most `n`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::graph::Graph;
use crate::ratio::{Rat, floor_i64, rat_serde};

mod flow;

use flow::Dinic;

/// Default vertex-count guard for [`topgrad_half`].
pub const TOPGRAD_HALF_GUARD: usize = 14;
/// Default vertex-count guard for [`grad_one`].
pub const GRAD_ONE_GUARD: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DensityError {
    TooLarge { n: usize, guard: usize },
    BadInput(String),
}

impl fmt::Display for DensityError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DensityError::TooLarge { n, guard } => {
                write!(f, "graph has {n} vertices, brute-force guard is {guard}")
            }
            DensityError::BadInput(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for DensityError {}

/// Maximum subgraph density with a witnessing vertex set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgraphDensity {
    #[serde(with = "rat_serde")]
    pub value: Rat,
    pub vertices: Vec<usize>,
}

fn induced_edge_count(g: &Graph, keep: &[bool]) -> usize {
    g.edges().iter().filter(|&&(u, v)| keep[u] && keep[v]).count()
}

/// Tests whether some non-empty subgraph `H` satisfies
/// `den * e(H) - num * v(H) > 0`, i.e. density strictly above `num/den`.
/// Returns the witnessing vertex set from the minimum cut.
fn denser_than(g: &Graph, num: u128, den: u128) -> Option<Vec<usize>> {
    let n = g.n();
    let m = g.m();
    if m == 0 {
        return None;
    }
    // Source 0; edge nodes 1..=m; vertex nodes m+1..=m+n; sink m+n+1.
    let source = 0;
    let sink = m + n + 1;
    let infinite = den * m as u128 + num * n as u128 + 1;
    let mut net = Dinic::new(m + n + 2);
    for (i, (u, v)) in g.edges().into_iter().enumerate() {
        net.add_edge(source, 1 + i, den);
        net.add_edge(1 + i, m + 1 + u, infinite);
        net.add_edge(1 + i, m + 1 + v, infinite);
    }
    for v in 0..n {
        net.add_edge(m + 1 + v, sink, num);
    }
    let flow = net.max_flow(source, sink);
    if flow >= den * m as u128 {
        return None;
    }
    let side = net.min_cut_side(source);
    let vertices: Vec<usize> = (0..n).filter(|&v| side[m + 1 + v]).collect();
    debug_assert!(!vertices.is_empty());
    Some(vertices)
}

fn denser_than_rational(g: &Graph, lambda: &BigRational) -> Option<Vec<usize>> {
    if lambda.is_negative() {
        // Any single vertex beats a negative threshold.
        return if g.n() > 0 { Some(vec![0]) } else { None };
    }
    let num = lambda.numer().to_u128().expect("threshold numerator fits u128");
    let den = lambda.denom().to_u128().expect("threshold denominator fits u128");
    denser_than(g, num, den)
}

/// Exact maximum of `e(H)/v(H)` over non-empty subgraphs, by binary search
/// over candidate rationals (the optimum has denominator at most `n`) with a
/// max-flow feasibility test per candidate.
pub fn max_subgraph_density(g: &Graph) -> SubgraphDensity {
    let n = g.n();
    if n == 0 {
        return SubgraphDensity { value: Rat::new(0, 1), vertices: Vec::new() };
    }
    if g.m() == 0 {
        return SubgraphDensity { value: Rat::new(0, 1), vertices: vec![0] };
    }
    let big = |x: usize| BigInt::from(x);
    // Invariant: optimum in (lo, hi].
    let mut lo = BigRational::zero();
    let mut hi = BigRational::new(big(n - 1), big(2));
    // Distinct candidate densities differ by at least 1/n^2.
    let resolution = BigRational::new(BigInt::one(), big(n) * big(n) * big(2));
    while (&hi - &lo) > resolution {
        let mid = (&hi + &lo) / BigRational::from_integer(big(2));
        if denser_than_rational(g, &mid).is_some() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // The unique fraction with denominator <= n in (lo, hi].
    let mut value: Option<Rat> = None;
    for den in 1..=n {
        let scaled = &hi * BigRational::from_integer(big(den));
        let num = scaled.floor().numer().clone();
        let cand = BigRational::new(num.clone(), big(den));
        if cand > lo && cand <= hi {
            let reduced = Rat::new(num.to_u64().expect("numerator fits u64"), den as u64);
            match &value {
                None => value = Some(reduced),
                Some(prev) => debug_assert_eq!(*prev, reduced),
            }
        }
    }
    let value = value.expect("interval isolates the optimum");
    // Witness: test strictly between the optimum and the next density below.
    let opt = BigRational::new(BigInt::from(*value.numer()), BigInt::from(*value.denom()));
    let eps = BigRational::new(BigInt::one(), big(n) * big(n) * big(2));
    let vertices = denser_than_rational(g, &(&opt - &eps)).expect("optimum is attained");
    let mut keep = vec![false; n];
    for &v in &vertices {
        keep[v] = true;
    }
    let e = induced_edge_count(g, &keep);
    debug_assert_eq!(Rat::new(e as u64, vertices.len() as u64), value);
    SubgraphDensity { value, vertices }
}

/// One extra edge of a depth-1/2 topological minor, realised by a middle
/// vertex adjacent to both endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MiddleEdge {
    pub u: usize,
    pub v: usize,
    pub middle: usize,
}

/// Densest shallow topological minor at depth 1/2: branch set, direct edges,
/// and middle-realised edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TopHalfDensity {
    #[serde(with = "rat_serde")]
    pub value: Rat,
    pub branch: Vec<usize>,
    pub direct_edges: Vec<(usize, usize)>,
    pub middle_edges: Vec<MiddleEdge>,
}

/// Exact maximum density over shallow topological minors at depth 1/2, by
/// brute force over branch sets; the extra edges per branch set are a
/// maximum bipartite matching between outside vertices and non-adjacent
/// branch pairs.
pub fn topgrad_half(g: &Graph) -> Result<TopHalfDensity, DensityError> {
    topgrad_half_guarded(g, TOPGRAD_HALF_GUARD)
}

pub fn topgrad_half_guarded(g: &Graph, guard: usize) -> Result<TopHalfDensity, DensityError> {
    let n = g.n();
    if n > guard {
        return Err(DensityError::TooLarge { n, guard });
    }
    if n == 0 {
        return Ok(TopHalfDensity {
            value: Rat::new(0, 1),
            branch: Vec::new(),
            direct_edges: Vec::new(),
            middle_edges: Vec::new(),
        });
    }
    let nbr_mask: Vec<u32> =
        g.vertices().map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | 1 << w)).collect();
    let mut best: Option<TopHalfDensity> = None;
    for mask in 1u32..1 << n {
        let branch: Vec<usize> = (0..n).filter(|&v| mask & (1 << v) != 0).collect();
        let direct_edges: Vec<(usize, usize)> = g
            .edges()
            .into_iter()
            .filter(|&(u, v)| mask & (1 << u) != 0 && mask & (1 << v) != 0)
            .collect();
        // Candidate pairs: non-adjacent branch pairs, addable via middles.
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        for (i, &u) in branch.iter().enumerate() {
            for &v in &branch[i + 1..] {
                if !g.has_edge(u, v) {
                    pairs.push((u, v));
                }
            }
        }
        let middles: Vec<usize> = (0..n)
            .filter(|&x| mask & (1 << x) == 0 && (nbr_mask[x] & mask).count_ones() >= 2)
            .collect();
        // Kuhn's matching: middles on the left, candidate pairs on the right.
        let adj: Vec<Vec<usize>> = middles
            .iter()
            .map(|&x| {
                pairs
                    .iter()
                    .enumerate()
                    .filter(|(_, &(u, v))| {
                        nbr_mask[x] & (1 << u) != 0 && nbr_mask[x] & (1 << v) != 0
                    })
                    .map(|(j, _)| j)
                    .collect()
            })
            .collect();
        let mut pair_owner: Vec<Option<usize>> = vec![None; pairs.len()];
        let mut matched = 0usize;
        for x in 0..middles.len() {
            let mut seen = vec![false; pairs.len()];
            if augment(x, &adj, &mut pair_owner, &mut seen) {
                matched += 1;
            }
        }
        let value = Rat::new((direct_edges.len() + matched) as u64, branch.len() as u64);
        if best.as_ref().map_or(true, |b| value > b.value) {
            let middle_edges: Vec<MiddleEdge> = pair_owner
                .iter()
                .enumerate()
                .filter_map(|(j, owner)| {
                    owner.map(|x| MiddleEdge { u: pairs[j].0, v: pairs[j].1, middle: middles[x] })
                })
                .collect();
            best = Some(TopHalfDensity { value, branch, direct_edges, middle_edges });
        }
    }
    Ok(best.expect("at least one branch set"))
}

fn augment(
    x: usize,
    adj: &[Vec<usize>],
    pair_owner: &mut Vec<Option<usize>>,
    seen: &mut Vec<bool>,
) -> bool {
    for &j in &adj[x] {
        if seen[j] {
            continue;
        }
        seen[j] = true;
        if pair_owner[j].is_none() || augment(pair_owner[j].unwrap(), adj, pair_owner, seen) {
            pair_owner[j] = Some(x);
            return true;
        }
    }
    false
}

/// One contracted set of a depth-1 minor model: a centre and the vertices it
/// dominates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Part {
    pub center: usize,
    pub vertices: Vec<usize>,
}

/// Densest shallow minor at depth 1: disjoint radius-1 sets, contracted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradOneDensity {
    #[serde(with = "rat_serde")]
    pub value: Rat,
    pub parts: Vec<Part>,
}

/// Exact maximum density over depth-1 shallow minors, enumerating families
/// of disjoint dominated sets (each a centre plus a subset of its
/// neighbourhood), contracting, and counting inter-set adjacencies.
pub fn grad_one(g: &Graph) -> Result<GradOneDensity, DensityError> {
    grad_one_guarded(g, GRAD_ONE_GUARD)
}

pub fn grad_one_guarded(g: &Graph, guard: usize) -> Result<GradOneDensity, DensityError> {
    let n = g.n();
    if n > guard {
        return Err(DensityError::TooLarge { n, guard });
    }
    if n == 0 {
        return Ok(GradOneDensity { value: Rat::new(0, 1), parts: Vec::new() });
    }
    let nbr_mask: Vec<u32> =
        g.vertices().map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | 1 << w)).collect();

    struct Search<'a> {
        n: usize,
        nbr_mask: &'a [u32],
        // Per current part: (center, member mask, closed-neighbourhood mask).
        parts: Vec<(usize, u32, u32)>,
        best: Option<(Rat, Vec<Part>)>,
    }

    impl Search<'_> {
        fn evaluate(&mut self) {
            let p = self.parts.len();
            if p == 0 {
                return;
            }
            let mut edges = 0u64;
            for i in 0..p {
                for j in i + 1..p {
                    // Parts adjacent iff some member of one neighbours the other.
                    if self.parts[i].2 & self.parts[j].1 != 0 {
                        edges += 1;
                    }
                }
            }
            let value = Rat::new(edges, p as u64);
            if self.best.as_ref().map_or(true, |(b, _)| value > *b) {
                let parts = self
                    .parts
                    .iter()
                    .map(|&(center, members, _)| Part {
                        center,
                        vertices: (0..self.n).filter(|&v| members & (1 << v) != 0).collect(),
                    })
                    .collect();
                self.best = Some((value, parts));
            }
        }

        /// `decided`: vertices already skipped or used.
        fn recurse(&mut self, decided: u32) {
            let v = match (0..self.n).find(|&v| decided & (1 << v) == 0) {
                None => {
                    self.evaluate();
                    return;
                }
                Some(v) => v,
            };
            let vbit = 1u32 << v;
            // Option A: v belongs to no part.
            self.recurse(decided | vbit);
            // Option B: v joins a new part with centre x in N[v]; remaining
            // members come from the centre's undecided neighbours.
            let candidates: Vec<usize> = std::iter::once(v)
                .chain(self.nbr_mask[v].iter_ones(self.n))
                .filter(|&x| x == v || decided & (1 << x) == 0)
                .collect();
            for x in candidates {
                let xbit = 1u32 << x;
                let pool: Vec<usize> = self.nbr_mask[x]
                    .iter_ones(self.n)
                    .filter(|&w| decided & (1 << w) == 0 && w != v && w != x)
                    .collect();
                // Subsets of the pool; the part is {x, v} plus the subset.
                for sub in 0u32..1 << pool.len() {
                    let mut members = xbit | vbit;
                    for (i, &w) in pool.iter().enumerate() {
                        if sub & (1 << i) != 0 {
                            members |= 1 << w;
                        }
                    }
                    let mut closed = members;
                    for w in members.iter_ones(self.n) {
                        closed |= self.nbr_mask[w];
                    }
                    self.parts.push((x, members, closed));
                    self.recurse(decided | members);
                    self.parts.pop();
                }
            }
        }
    }

    trait IterOnes {
        fn iter_ones(self, n: usize) -> std::vec::IntoIter<usize>;
    }
    impl IterOnes for u32 {
        fn iter_ones(self, n: usize) -> std::vec::IntoIter<usize> {
            (0..n).filter(|&i| self & (1 << i) != 0).collect::<Vec<_>>().into_iter()
        }
    }

    let mut search = Search { n, nbr_mask: &nbr_mask, parts: Vec::new(), best: None };
    search.recurse(0);
    let (value, parts) = search.best.expect("singleton family always evaluated");
    Ok(GradOneDensity { value, parts })
}

/// `floor((2*t0 - 2)(s - 1)*th + 2*t0)`: the strong-degeneracy bound from
/// the depth-0 and depth-1/2 top-grads of a `K_{2,s}`-free graph.
pub fn strongdeg_bound_from_topgrads(
    s: u64,
    t0: &BigRational,
    th: &BigRational,
) -> Result<i64, DensityError> {
    if s < 2 {
        return Err(DensityError::BadInput(format!("s = {s} must be >= 2")));
    }
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    if !(t0.is_zero() || *t0 >= half) {
        return Err(DensityError::BadInput("t0 must be 0 or >= 1/2".into()));
    }
    if th < t0 {
        return Err(DensityError::BadInput("th must be >= t0".into()));
    }
    let two = BigRational::from_integer(BigInt::from(2));
    let s1 = BigRational::from_integer(BigInt::from(s - 1));
    let value = (&two * t0 - &two) * s1 * th + &two * t0;
    floor_i64(&value).map_err(DensityError::BadInput)
}

/// `floor(2*s*g1)`: the strong-degeneracy bound from the depth-1 grad of a
/// `K_{2,s}`-free graph.
pub fn strongdeg_bound_from_grad1(s: u64, g1: &BigRational) -> Result<i64, DensityError> {
    if s < 2 {
        return Err(DensityError::BadInput(format!("s = {s} must be >= 2")));
    }
    if g1.is_negative() {
        return Err(DensityError::BadInput("g1 must be >= 0".into()));
    }
    let value = BigRational::from_integer(BigInt::from(2 * s)) * g1;
    floor_i64(&value).map_err(DensityError::BadInput)
}

pub fn rat_to_big(r: &Rat) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

impl SubgraphDensity {
    /// Recomputes the witness's density and compares with the stated value.
    pub fn validate(&self, g: &Graph) -> Result<(), String> {
        if self.vertices.is_empty() {
            return if self.value == Rat::new(0, 1) {
                Ok(())
            } else {
                Err("empty witness with non-zero density".into())
            };
        }
        let mut keep = vec![false; g.n()];
        for &v in &self.vertices {
            if v >= g.n() || keep[v] {
                return Err(format!("bad witness vertex {v}"));
            }
            keep[v] = true;
        }
        let e = induced_edge_count(g, &keep);
        let d = Rat::new(e as u64, self.vertices.len() as u64);
        if d == self.value { Ok(()) } else { Err(format!("witness density {d} != {}", self.value)) }
    }
}

impl TopHalfDensity {
    pub fn validate(&self, g: &Graph) -> Result<(), String> {
        let mut in_branch = vec![false; g.n()];
        for &v in &self.branch {
            if v >= g.n() || in_branch[v] {
                return Err(format!("bad branch vertex {v}"));
            }
            in_branch[v] = true;
        }
        let mut pairs = std::collections::BTreeSet::new();
        for &(u, v) in &self.direct_edges {
            if !in_branch[u] || !in_branch[v] || !g.has_edge(u.min(v), u.max(v)) {
                return Err(format!("bad direct edge ({u}, {v})"));
            }
            if !pairs.insert((u.min(v), u.max(v))) {
                return Err(format!("pair ({u}, {v}) repeated"));
            }
        }
        let mut middles = std::collections::BTreeSet::new();
        for e in &self.middle_edges {
            if !in_branch[e.u] || !in_branch[e.v] || e.u == e.v {
                return Err(format!("bad middle edge ({}, {})", e.u, e.v));
            }
            if in_branch[e.middle] || !middles.insert(e.middle) {
                return Err(format!("middle {} reused or in the branch set", e.middle));
            }
            if !g.has_edge(e.middle.min(e.u), e.middle.max(e.u))
                || !g.has_edge(e.middle.min(e.v), e.middle.max(e.v))
            {
                return Err(format!("middle {} not adjacent to both endpoints", e.middle));
            }
            if !pairs.insert((e.u.min(e.v), e.u.max(e.v))) {
                return Err(format!("pair ({}, {}) repeated", e.u, e.v));
            }
        }
        let d = Rat::new(pairs.len() as u64, self.branch.len() as u64);
        if d == self.value { Ok(()) } else { Err(format!("model density {d} != {}", self.value)) }
    }
}

impl GradOneDensity {
    pub fn validate(&self, g: &Graph) -> Result<(), String> {
        let mut owner = vec![usize::MAX; g.n()];
        for (i, part) in self.parts.iter().enumerate() {
            if !part.vertices.contains(&part.center) {
                return Err(format!("part {i}: centre not a member"));
            }
            for &v in &part.vertices {
                if v >= g.n() || owner[v] != usize::MAX {
                    return Err(format!("part {i}: vertex {v} reused"));
                }
                owner[v] = i;
                if v != part.center && !g.has_edge(v.min(part.center), v.max(part.center)) {
                    return Err(format!("part {i}: vertex {v} not dominated by the centre"));
                }
            }
        }
        let p = self.parts.len();
        let mut adjacent = vec![false; p * p];
        for (u, v) in g.edges() {
            let (a, b) = (owner[u], owner[v]);
            if a != usize::MAX && b != usize::MAX && a != b {
                adjacent[a * p + b] = true;
                adjacent[b * p + a] = true;
            }
        }
        let edges = (0..p).map(|i| (i + 1..p).filter(|&j| adjacent[i * p + j]).count()).sum::<usize>();
        if p == 0 {
            return if self.value == Rat::new(0, 1) { Ok(()) } else { Err("no parts".into()) };
        }
        let d = Rat::new(edges as u64, p as u64);
        if d == self.value { Ok(()) } else { Err(format!("model density {d} != {}", self.value)) }
    }
}
