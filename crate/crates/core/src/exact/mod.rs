//! Exact decision of the (multi-guess) hat game on tiny graphs.
//!
//! Colours are `0..q`. A strategy assigns every vertex, for every view of its
//! neighbours' colours, a guess set of at most `g(v)` colours; the players
//! win a colouring when some vertex's set contains its own colour. A *mean*
//! colouring defeats every vertex.
//!
//! Views are encoded mixed-radix: for sorted neighbours `w_0 < w_1 < ...`,
//! the view index is `sum_i c(w_i) * q^i` (least significant first). The
//! same encoding is used in the JSON serialisation, so external tools can
//! replay verification.

use std::fmt;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::certify::GuessBudget;
use crate::graph::Graph;

mod solver;

/// Guesses of one vertex: `guesses[view]` is a sorted set of colours.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexStrategy {
    pub v: usize,
    pub neighbors: Vec<usize>,
    pub guesses: Vec<Vec<u32>>,
}

/// A full strategy table for the game with `q` colours.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrategyTable {
    pub q: u32,
    pub vertices: Vec<VertexStrategy>,
}

/// Result of verifying a strategy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VerifyOutcome {
    Winning,
    /// Lexicographically first colouring under which no vertex guesses
    /// correctly.
    Mean(Vec<u32>),
}

/// Malformed-table errors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StrategyError {
    WrongVertexCount { expected: usize, found: usize },
    WrongVertexId { position: usize },
    WrongNeighbors { v: usize },
    MissingViews { v: usize, expected: u64, found: usize },
    OversizedGuessSet { v: usize, view: usize },
    BadGuessSet { v: usize, view: usize },
    BudgetMissing { v: usize },
    TooLarge { what: String },
}

impl fmt::Display for StrategyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StrategyError::WrongVertexCount { expected, found } => {
                write!(f, "table lists {found} vertices, graph has {expected}")
            }
            StrategyError::WrongVertexId { position } => {
                write!(f, "table entry {position} has the wrong vertex id")
            }
            StrategyError::WrongNeighbors { v } => write!(f, "vertex {v}: neighbour list mismatch"),
            StrategyError::MissingViews { v, expected, found } => {
                write!(f, "vertex {v}: {found} views listed, expected {expected}")
            }
            StrategyError::OversizedGuessSet { v, view } => {
                write!(f, "vertex {v}, view {view}: guess set exceeds the budget")
            }
            StrategyError::BadGuessSet { v, view } => {
                write!(f, "vertex {v}, view {view}: guesses must be sorted, unique and < q")
            }
            StrategyError::BudgetMissing { v } => write!(f, "budget missing for vertex {v}"),
            StrategyError::TooLarge { what } => write!(f, "instance too large: {what}"),
        }
    }
}

impl std::error::Error for StrategyError {}

fn checked_pow(q: u32, e: usize) -> Option<u64> {
    (q as u64).checked_pow(u32::try_from(e).ok()?)
}

/// View index of `v` under colouring `c` (mixed radix, least significant
/// first over sorted neighbours).
pub fn view_index(g: &Graph, v: usize, c: &[u32], q: u32) -> usize {
    let mut idx = 0usize;
    let mut mult = 1usize;
    for &w in g.neighbors(v) {
        idx += c[w] as usize * mult;
        mult *= q as usize;
    }
    idx
}

/// Checks a strategy table against every colouring. Returns the
/// lexicographically first mean colouring if one exists.
pub fn verify_strategy(
    g: &Graph,
    budgets: &GuessBudget,
    q: u32,
    table: &StrategyTable,
) -> Result<VerifyOutcome, StrategyError> {
    let n = g.n();
    if table.vertices.len() != n {
        return Err(StrategyError::WrongVertexCount { expected: n, found: table.vertices.len() });
    }
    for (i, vs) in table.vertices.iter().enumerate() {
        if vs.v != i {
            return Err(StrategyError::WrongVertexId { position: i });
        }
        if vs.neighbors != g.neighbors(i) {
            return Err(StrategyError::WrongNeighbors { v: i });
        }
        let views = checked_pow(q, g.degree(i))
            .filter(|&x| x <= 100_000_000)
            .ok_or(StrategyError::TooLarge { what: format!("q^deg({i})") })?;
        if vs.guesses.len() as u64 != views {
            return Err(StrategyError::MissingViews { v: i, expected: views, found: vs.guesses.len() });
        }
        let budget = budgets.get(i).ok_or(StrategyError::BudgetMissing { v: i })?;
        for (view, set) in vs.guesses.iter().enumerate() {
            if set.len() as u128 > budget {
                return Err(StrategyError::OversizedGuessSet { v: i, view });
            }
            let sorted = set.windows(2).all(|w| w[0] < w[1]);
            if !sorted || set.iter().any(|&c| c >= q) {
                return Err(StrategyError::BadGuessSet { v: i, view });
            }
        }
    }
    if n == 0 {
        // No vertex can guess, so the single (empty) colouring is mean.
        return Ok(VerifyOutcome::Mean(Vec::new()));
    }
    // Odometer over colourings, rightmost coordinate fastest: lexicographic
    // order on (c(0), ..., c(n-1)).
    let mut c = vec![0u32; n];
    loop {
        let mut someone_correct = false;
        for v in 0..n {
            let idx = view_index(g, v, &c, q);
            if table.vertices[v].guesses[idx].binary_search(&c[v]).is_ok() {
                someone_correct = true;
                break;
            }
        }
        if !someone_correct {
            return Ok(VerifyOutcome::Mean(c));
        }
        let mut pos = n;
        loop {
            if pos == 0 {
                return Ok(VerifyOutcome::Winning);
            }
            pos -= 1;
            c[pos] += 1;
            if c[pos] < q {
                break;
            }
            c[pos] = 0;
        }
    }
}

/// The classical strategy on `K_n` with `q = n`: player `i` guesses the
/// unique colour making the total colour sum congruent to `i` mod `n`.
pub fn clique_sum_strategy(n: usize) -> StrategyTable {
    let q = n as u32;
    let mut vertices = Vec::with_capacity(n);
    for i in 0..n {
        let neighbors: Vec<usize> = (0..n).filter(|&j| j != i).collect();
        let views = (n as u64).pow((n - 1) as u32) as usize;
        let mut guesses = Vec::with_capacity(views);
        for view in 0..views {
            let mut rest = view;
            let mut sum = 0usize;
            for _ in 0..n - 1 {
                sum += rest % n;
                rest /= n;
            }
            let guess = (i + n - (sum % n)) % n;
            guesses.push(vec![guess as u32]);
        }
        vertices.push(VertexStrategy { v: i, neighbors, guesses });
    }
    StrategyTable { q, vertices }
}

/// Scale guard for the exhaustive solver.
#[derive(Clone, Copy, Debug)]
pub struct Limits {
    pub max_colourings: u64,
    pub max_cells: u64,
}

impl Default for Limits {
    fn default() -> Self {
        // q^n colourings and sum of q^deg table cells both at most ~1e5.
        Limits { max_colourings: 100_000, max_cells: 100_000 }
    }
}

impl Limits {
    pub fn unlimited() -> Self {
        Limits { max_colourings: u64::MAX, max_cells: u64::MAX }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveError {
    ScaleExceeded { what: String },
    QOutOfRange { q: u32 },
    /// Budget missing or zero for a vertex.
    BadBudget { v: usize },
}

impl fmt::Display for SolveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolveError::ScaleExceeded { what } => {
                write!(f, "instance exceeds the scale guard: {what}")
            }
            SolveError::QOutOfRange { q } => write!(f, "q = {q} outside supported range 1..=30"),
            SolveError::BadBudget { v } => write!(f, "budget missing or zero for vertex {v}"),
        }
    }
}

impl std::error::Error for SolveError {}

/// Search effort counters.
#[derive(Clone, Copy, Debug, Default, Serialize, Deserialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub elapsed: Duration,
}

/// Verdict of the exhaustive search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Winnability {
    Winnable(StrategyTable),
    Unwinnable,
}

/// Outcome with search statistics. A returned table always verifies as
/// winning; `Unwinnable` is an exhaustive-search verdict.
#[derive(Clone, Debug)]
pub struct GameOutcome {
    pub winnability: Winnability,
    pub stats: SearchStats,
}

/// Decides whether the players can win with `q` colours, by backtracking
/// over table cells with clause propagation. Deterministic: identical inputs
/// give identical outcomes and tables for every `threads` value.
pub fn decide_winnable(
    g: &Graph,
    budgets: &GuessBudget,
    q: u32,
    limits: Limits,
    threads: usize,
) -> Result<GameOutcome, SolveError> {
    solver::decide(g, budgets, q, limits, threads)
}

/// Exact hat-guessing value, capped at `q_max`.
#[derive(Clone, Debug)]
pub struct HatNumber {
    /// Largest q decided winnable (0 when even one colour is unwinnable,
    /// which happens only on the empty graph).
    pub value: u32,
    /// False when winnable at `q_max` itself: the true value is `>= value`.
    pub exact: bool,
    /// Witnessing table for `value` (absent when `value` is 0).
    pub table: Option<StrategyTable>,
    pub stats: SearchStats,
}

/// Scans `q = 1, 2, ...` up to `q_max`, relying on downward monotonicity of
/// winnability in `q`.
pub fn hat_guessing_number(
    g: &Graph,
    budgets: &GuessBudget,
    q_max: u32,
    limits: Limits,
    threads: usize,
) -> Result<HatNumber, SolveError> {
    let mut best: Option<StrategyTable> = None;
    let mut stats = SearchStats::default();
    for q in 1..=q_max {
        let outcome = decide_winnable(g, budgets, q, limits, threads)?;
        stats.nodes += outcome.stats.nodes;
        stats.elapsed += outcome.stats.elapsed;
        match outcome.winnability {
            Winnability::Winnable(table) => best = Some(table),
            Winnability::Unwinnable => {
                return Ok(HatNumber { value: q - 1, exact: true, table: best, stats });
            }
        }
    }
    Ok(HatNumber { value: q_max, exact: false, table: best, stats })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::family::FamilySpec;

    fn gen(text: &str) -> Graph {
        FamilySpec::parse(text, 0).unwrap().generate().unwrap()
    }

    fn unit(g: &Graph) -> GuessBudget {
        GuessBudget::uniform(g, 1)
    }

    #[test]
    fn single_vertex_fixed_guess_has_mean() {
        let g = Graph::edgeless(1);
        let table = StrategyTable {
            q: 2,
            vertices: vec![VertexStrategy { v: 0, neighbors: vec![], guesses: vec![vec![0]] }],
        };
        let out = verify_strategy(&g, &unit(&g), 2, &table).unwrap();
        assert_eq!(out, VerifyOutcome::Mean(vec![1]));
    }

    #[test]
    fn k2_opposite_strategy_wins() {
        // Player 0 guesses 1's colour; player 1 guesses the opposite of 0's.
        let g = gen("complete:2");
        let table = StrategyTable {
            q: 2,
            vertices: vec![
                VertexStrategy { v: 0, neighbors: vec![1], guesses: vec![vec![0], vec![1]] },
                VertexStrategy { v: 1, neighbors: vec![0], guesses: vec![vec![1], vec![0]] },
            ],
        };
        assert_eq!(verify_strategy(&g, &unit(&g), 2, &table).unwrap(), VerifyOutcome::Winning);
    }

    #[test]
    fn clique_sum_strategies_win() {
        for n in 1..=4 {
            let g = gen(&format!("complete:{n}"));
            let table = clique_sum_strategy(n);
            assert_eq!(
                verify_strategy(&g, &unit(&g), n as u32, &table).unwrap(),
                VerifyOutcome::Winning,
                "clique sum strategy on K_{n}"
            );
        }
    }

    #[test]
    fn clique_sum_exactly_one_correct() {
        let n = 3;
        let g = gen("complete:3");
        let table = clique_sum_strategy(n);
        let q = 3u32;
        let mut c = vec![0u32; n];
        loop {
            let correct = (0..n)
                .filter(|&v| {
                    let idx = view_index(&g, v, &c, q);
                    table.vertices[v].guesses[idx].binary_search(&c[v]).is_ok()
                })
                .count();
            assert_eq!(correct, 1, "colouring {c:?}");
            let mut pos = n;
            let done = loop {
                if pos == 0 {
                    break true;
                }
                pos -= 1;
                c[pos] += 1;
                if c[pos] < q {
                    break false;
                }
                c[pos] = 0;
            };
            if done {
                break;
            }
        }
    }

    #[test]
    fn malformed_tables_rejected() {
        let g = gen("complete:2");
        let missing = StrategyTable {
            q: 2,
            vertices: vec![
                VertexStrategy { v: 0, neighbors: vec![1], guesses: vec![vec![0]] },
                VertexStrategy { v: 1, neighbors: vec![0], guesses: vec![vec![1], vec![0]] },
            ],
        };
        assert!(matches!(
            verify_strategy(&g, &unit(&g), 2, &missing),
            Err(StrategyError::MissingViews { v: 0, .. })
        ));
        let oversized = StrategyTable {
            q: 2,
            vertices: vec![
                VertexStrategy { v: 0, neighbors: vec![1], guesses: vec![vec![0, 1], vec![1]] },
                VertexStrategy { v: 1, neighbors: vec![0], guesses: vec![vec![1], vec![0]] },
            ],
        };
        assert!(matches!(
            verify_strategy(&g, &unit(&g), 2, &oversized),
            Err(StrategyError::OversizedGuessSet { v: 0, view: 0 })
        ));
    }

    #[test]
    fn k1_budget_k_wins_iff_q_at_most_k() {
        let g = Graph::edgeless(1);
        for k in 1..=3u128 {
            let budgets = GuessBudget::uniform(&g, k);
            for q in 1..=4u32 {
                let out = decide_winnable(&g, &budgets, q, Limits::default(), 1).unwrap();
                assert_eq!(
                    matches!(out.winnability, Winnability::Winnable(_)),
                    (q as u128) <= k,
                    "K_1 with budget {k} at q = {q}"
                );
            }
        }
    }

    #[test]
    fn triangle_hat_number_is_three() {
        let g = gen("complete:3");
        let out = decide_winnable(&g, &unit(&g), 3, Limits::default(), 1).unwrap();
        let Winnability::Winnable(table) = out.winnability else {
            panic!("K_3 winnable at 3");
        };
        assert_eq!(verify_strategy(&g, &unit(&g), 3, &table).unwrap(), VerifyOutcome::Winning);
        let out = decide_winnable(&g, &unit(&g), 4, Limits::default(), 1).unwrap();
        assert_eq!(out.winnability, Winnability::Unwinnable);
    }

    #[test]
    fn c4_hat_number_is_three() {
        let g = gen("cycle:4");
        let hn = hat_guessing_number(&g, &unit(&g), 4, Limits::default(), 1).unwrap();
        assert_eq!((hn.value, hn.exact), (3, true));
    }

    #[test]
    fn small_trees_have_value_two() {
        for text in ["path:2", "path:3", "path:4"] {
            let g = gen(text);
            let hn = hat_guessing_number(&g, &unit(&g), 4, Limits::default(), 1).unwrap();
            assert_eq!((hn.value, hn.exact), (2, true), "{text}");
            let table = hn.table.unwrap();
            assert_eq!(verify_strategy(&g, &unit(&g), 2, &table).unwrap(), VerifyOutcome::Winning);
        }
    }

    #[test]
    fn c5_hat_number_is_two() {
        let g = gen("cycle:5");
        let hn = hat_guessing_number(&g, &unit(&g), 4, Limits::default(), 1).unwrap();
        assert_eq!((hn.value, hn.exact), (2, true));
    }

    #[test]
    fn empty_graph_unwinnable() {
        let g = Graph::edgeless(0);
        let hn = hat_guessing_number(&g, &GuessBudget::uniform(&g, 1), 3, Limits::default(), 1)
            .unwrap();
        assert_eq!((hn.value, hn.exact), (0, true));
    }

    #[test]
    fn scale_guard_fires() {
        let g = gen("complete:5");
        let tight = Limits { max_colourings: 10, max_cells: 100_000 };
        assert!(matches!(
            decide_winnable(&g, &unit(&g), 3, tight, 1),
            Err(SolveError::ScaleExceeded { .. })
        ));
    }

    #[test]
    fn thread_counts_agree() {
        for (text, q) in [("cycle:4", 3), ("cycle:4", 4), ("complete:3", 3), ("path:3", 3)] {
            let g = gen(text);
            let a = decide_winnable(&g, &unit(&g), q, Limits::default(), 1).unwrap();
            let b = decide_winnable(&g, &unit(&g), q, Limits::default(), 4).unwrap();
            assert_eq!(a.winnability, b.winnability, "{text} at q = {q}");
        }
    }
}
