//! Backtracking search over strategy-table cells with clause propagation.
//!
//! Variables are table cells `(vertex, view)`; a value is a guess set of
//! size exactly `min(g(v), q)`, kept as a colour bitmask. Every colouring is
//! a clause "some vertex guesses correctly"; a clause holds one literal
//! `(cell, colour)` per vertex.
//!
//! Propagation and pruning:
//! - a clause with no covering assigned cell and no unassigned cell left is
//!   a conflict;
//! - a clause with exactly one undecided cell that could still cover it
//!   forces colours into that cell (unit rule); a cell forced to more
//!   colours than its budget is a conflict, a cell forced to exactly its
//!   budget is assigned immediately;
//! - each unassigned cell can cover at most its top-`k` bucket sum of
//!   currently uncovered incident clauses; if those caps sum below the
//!   number of uncovered clauses, the branch is hopeless.
//!
//! Branching is fail-first on clauses: take the uncovered colouring with the
//! fewest undecided cells (lowest id on ties) and branch on its lowest
//! undecided cell. Uncovered clauses that share no undecided cell are
//! independent, so the search splits them into components solved separately,
//! and exhausted component states (clause set plus undecided cells) are
//! cached as nogoods; recurring residual subproblems are refuted once.
//!
//! Colour-permutation symmetry: the very first branched cell (nothing else
//! assigned) only tries the two canonical guess sets `{0..k-1}` and
//! `{1..k}`; any winning strategy can be recoloured, by a permutation fixing
//! the branched view, so that its guess there is one of these.
//!
//! Parallel mode partitions the canonical values of the first branch among
//! workers; the reported table is the one from the earliest value that
//! admits a win, so outcome and table are independent of the worker count.

use std::sync::Mutex;
use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};
use std::time::Instant;

use crate::certify::GuessBudget;
use crate::graph::Graph;

use super::{
    GameOutcome, Limits, SearchStats, SolveError, StrategyTable, VertexStrategy, Winnability,
};

const UNASSIGNED: u32 = u32::MAX;
const MAX_Q: u32 = 30;

struct Instance {
    n: usize,
    q: u32,
    budget: Vec<u32>, // clamped to min(g(v), q), >= 1
    cell_offset: Vec<usize>,
    cell_vertex: Vec<u32>,
    n_cells: usize,
    n_clauses: usize,
    /// `clause_cells[cl * n + v]` is the cell of vertex `v` watching clause `cl`.
    clause_cells: Vec<u32>,
    /// Incident clauses per cell.
    cell_clauses: Vec<Vec<u32>>,
    pow_q: Vec<u64>,
}

impl Instance {
    #[inline]
    fn digit(&self, clause: u32, v: usize) -> u32 {
        ((clause as u64 / self.pow_q[v]) % self.q as u64) as u32
    }
}

fn build(g: &Graph, budgets: &GuessBudget, q: u32, limits: Limits) -> Result<Instance, SolveError> {
    if q == 0 || q > MAX_Q {
        return Err(SolveError::QOutOfRange { q });
    }
    let n = g.n();
    let mut budget = Vec::with_capacity(n);
    for v in 0..n {
        let b = budgets.get(v).ok_or(SolveError::BadBudget { v })?;
        if b == 0 {
            return Err(SolveError::BadBudget { v });
        }
        budget.push(b.min(q as u128) as u32);
    }
    let mut n_clauses: u64 = 1;
    for _ in 0..n {
        n_clauses = n_clauses
            .checked_mul(q as u64)
            .filter(|&x| x <= limits.max_colourings)
            .ok_or_else(|| SolveError::ScaleExceeded {
                what: format!("q^n > {} colourings", limits.max_colourings),
            })?;
    }
    let mut cell_offset = Vec::with_capacity(n + 1);
    let mut cell_vertex = Vec::new();
    let mut total: u64 = 0;
    for v in 0..n {
        cell_offset.push(total as usize);
        let views = (q as u64)
            .checked_pow(g.degree(v) as u32)
            .filter(|&x| total + x <= limits.max_cells)
            .ok_or_else(|| SolveError::ScaleExceeded {
                what: format!("table cells > {}", limits.max_cells),
            })?;
        total += views;
        for _ in 0..views {
            cell_vertex.push(v as u32);
        }
    }
    cell_offset.push(total as usize);
    let n_cells = total as usize;
    let n_clauses = n_clauses as usize;
    let pow_q: Vec<u64> = (0..=n as u32).map(|i| (q as u64).pow(i)).collect();

    let mut clause_cells = vec![0u32; n_clauses * n];
    let mut cell_clauses: Vec<Vec<u32>> = vec![Vec::new(); n_cells];
    for cl in 0..n_clauses as u32 {
        for v in 0..n {
            let mut view = 0u64;
            let mut mult = 1u64;
            for &w in g.neighbors(v) {
                view += ((cl as u64 / pow_q[w]) % q as u64) * mult;
                mult *= q as u64;
            }
            let cell = cell_offset[v] as u32 + view as u32;
            clause_cells[cl as usize * n + v] = cell;
            cell_clauses[cell as usize].push(cl);
        }
    }
    Ok(Instance {
        n,
        q,
        budget,
        cell_offset,
        cell_vertex,
        n_cells,
        n_clauses,
        clause_cells,
        cell_clauses,
        pow_q,
    })
}

#[derive(Clone)]
struct State<'i> {
    inst: &'i Instance,
    assigned: Vec<u32>,
    covered: Vec<u16>,
    unassigned: Vec<u16>,
    /// `bucket[cell * q + colour]` = uncovered incident clauses of `cell`
    /// whose literal colour there is `colour`. Maintained for every cell.
    bucket: Vec<u32>,
    cap: Vec<u64>,
    total_cap: u64,
    uncovered: u64,
    nodes: u64,
    /// Cells assigned so far, in order; checkpoints index into this.
    assign_log: Vec<usize>,
    /// Exhausted component states: sorted live clause ids, a separator,
    /// then the component's undecided cells.
    nogoods: std::collections::HashSet<Vec<u32>>,
    // Generation-stamped scratch for component traversal.
    clause_mark: Vec<u32>,
    clause_seen: Vec<u32>,
    cell_seen: Vec<u32>,
    generation: u32,
}

impl<'i> State<'i> {
    fn init(inst: &'i Instance) -> State<'i> {
        let q = inst.q as usize;
        let mut bucket = vec![0u32; inst.n_cells * q];
        for cl in 0..inst.n_clauses as u32 {
            for v in 0..inst.n {
                let cell = inst.clause_cells[cl as usize * inst.n + v] as usize;
                bucket[cell * q + inst.digit(cl, v) as usize] += 1;
            }
        }
        let mut st = State {
            inst,
            assigned: vec![UNASSIGNED; inst.n_cells],
            covered: vec![0; inst.n_clauses],
            unassigned: vec![inst.n as u16; inst.n_clauses],
            bucket,
            cap: vec![0; inst.n_cells],
            total_cap: 0,
            uncovered: inst.n_clauses as u64,
            nodes: 0,
            assign_log: Vec::new(),
            nogoods: std::collections::HashSet::new(),
            clause_mark: vec![0; inst.n_clauses],
            clause_seen: vec![0; inst.n_clauses],
            cell_seen: vec![0; inst.n_cells],
            generation: 0,
        };
        for c in 0..inst.n_cells {
            st.cap[c] = st.cap_of(c);
            st.total_cap += st.cap[c];
        }
        st
    }

    /// Top-`k` bucket sum: the most uncovered clauses one assignment of this
    /// cell can still cover.
    fn cap_of(&self, cell: usize) -> u64 {
        let q = self.inst.q as usize;
        let k = self.inst.budget[self.inst.cell_vertex[cell] as usize] as usize;
        let row = &self.bucket[cell * q..cell * q + q];
        if k == 1 {
            return *row.iter().max().unwrap_or(&0) as u64;
        }
        let mut tmp = [0u32; MAX_Q as usize];
        tmp[..q].copy_from_slice(row);
        let mut sum = 0u64;
        for _ in 0..k.min(q) {
            let (i, &best) = tmp[..q].iter().enumerate().max_by_key(|&(_, &x)| x).unwrap();
            sum += best as u64;
            tmp[i] = 0;
        }
        sum
    }

    fn refresh_cap(&mut self, cell: usize) {
        let new = self.cap_of(cell);
        if self.assigned[cell] == UNASSIGNED {
            self.total_cap = self.total_cap + new - self.cap[cell];
        }
        self.cap[cell] = new;
    }

    /// Assigns `mask` to `cell`, updating clause coverage and buckets.
    /// Returns false on a dead clause; the state stays consistent either way
    /// and must be rolled back with [`State::unassign`].
    fn assign(&mut self, cell: usize, mask: u32, units: &mut Vec<u32>) -> bool {
        debug_assert_eq!(self.assigned[cell], UNASSIGNED);
        let q = self.inst.q as usize;
        let n = self.inst.n;
        self.total_cap -= self.cap[cell];
        self.assigned[cell] = mask;
        let v = self.inst.cell_vertex[cell] as usize;
        let mut ok = true;
        for idx in 0..self.inst.cell_clauses[cell].len() {
            let cl = self.inst.cell_clauses[cell][idx];
            let cli = cl as usize;
            self.unassigned[cli] -= 1;
            let col = self.inst.digit(cl, v);
            if mask & (1 << col) != 0 {
                self.covered[cli] += 1;
                if self.covered[cli] == 1 {
                    self.uncovered -= 1;
                    for pos in 0..n {
                        let cell2 = self.inst.clause_cells[cli * n + pos] as usize;
                        let col2 = self.inst.digit(cl, pos) as usize;
                        self.bucket[cell2 * q + col2] -= 1;
                        self.refresh_cap(cell2);
                    }
                }
            } else if self.covered[cli] == 0 {
                match self.unassigned[cli] {
                    0 => ok = false,
                    1 => units.push(cl),
                    _ => {}
                }
            }
        }
        ok
    }

    fn unassign(&mut self, cell: usize) {
        let mask = self.assigned[cell];
        debug_assert_ne!(mask, UNASSIGNED);
        let q = self.inst.q as usize;
        let n = self.inst.n;
        let v = self.inst.cell_vertex[cell] as usize;
        for idx in (0..self.inst.cell_clauses[cell].len()).rev() {
            let cl = self.inst.cell_clauses[cell][idx];
            let cli = cl as usize;
            self.unassigned[cli] += 1;
            let col = self.inst.digit(cl, v);
            if mask & (1 << col) != 0 {
                self.covered[cli] -= 1;
                if self.covered[cli] == 0 {
                    self.uncovered += 1;
                    for pos in 0..n {
                        let cell2 = self.inst.clause_cells[cli * n + pos] as usize;
                        let col2 = self.inst.digit(cl, pos) as usize;
                        self.bucket[cell2 * q + col2] += 1;
                        self.refresh_cap(cell2);
                    }
                }
            }
        }
        self.assigned[cell] = UNASSIGNED;
        self.cap[cell] = self.cap_of(cell);
        self.total_cap += self.cap[cell];
    }

    /// Colours demanded of `cell` by its unit clauses.
    fn demand_mask(&self, cell: usize) -> u32 {
        let v = self.inst.cell_vertex[cell] as usize;
        let mut mask = 0u32;
        for &cl in &self.inst.cell_clauses[cell] {
            let cli = cl as usize;
            if self.covered[cli] == 0 && self.unassigned[cli] == 1 {
                mask |= 1 << self.inst.digit(cl, v);
            }
        }
        mask
    }

    /// Drains the unit queue, assigning forced cells (logged for undo).
    fn propagate(&mut self, units: &mut Vec<u32>) -> bool {
        while let Some(cl) = units.pop() {
            let cli = cl as usize;
            if self.covered[cli] > 0 {
                continue;
            }
            match self.unassigned[cli] {
                0 => return false,
                1 => {
                    let mut cell = usize::MAX;
                    for pos in 0..self.inst.n {
                        let c2 = self.inst.clause_cells[cli * self.inst.n + pos] as usize;
                        if self.assigned[c2] == UNASSIGNED {
                            cell = c2;
                            break;
                        }
                    }
                    debug_assert_ne!(cell, usize::MAX);
                    let demanded = self.demand_mask(cell);
                    let k = self.inst.budget[self.inst.cell_vertex[cell] as usize];
                    let forced = demanded.count_ones();
                    if forced > k {
                        return false;
                    }
                    if forced == k {
                        self.nodes += 1;
                        self.assign_log.push(cell);
                        if !self.assign(cell, demanded, units) {
                            return false;
                        }
                    }
                }
                _ => {}
            }
        }
        self.total_cap >= self.uncovered
    }

    /// Assigns and runs propagation plus the coverage-cap prune. All
    /// assignments land on the log; roll back with [`State::undo_to`].
    fn assign_checked(&mut self, cell: usize, mask: u32) -> bool {
        let mut units = Vec::new();
        self.assign_log.push(cell);
        self.assign(cell, mask, &mut units) && self.propagate(&mut units)
    }

    fn undo_to(&mut self, checkpoint: usize) {
        while self.assign_log.len() > checkpoint {
            let cell = self.assign_log.pop().unwrap();
            self.unassign(cell);
        }
    }

    /// Splits the still-uncovered clauses of `scope` into components
    /// connected through shared undecided cells. Components come out sorted
    /// internally and ordered by smallest clause id.
    fn components(&mut self, scope: &[u32]) -> Vec<Vec<u32>> {
        self.generation += 1;
        let gen = self.generation;
        let n = self.inst.n;
        let mut live = Vec::with_capacity(scope.len());
        for &cl in scope {
            if self.covered[cl as usize] == 0 {
                self.clause_mark[cl as usize] = gen;
                live.push(cl);
            }
        }
        let mut comps = Vec::new();
        let mut queue = Vec::new();
        for &seed in &live {
            if self.clause_seen[seed as usize] == gen {
                continue;
            }
            self.clause_seen[seed as usize] = gen;
            queue.clear();
            queue.push(seed);
            let mut comp = Vec::new();
            while let Some(cl) = queue.pop() {
                comp.push(cl);
                for pos in 0..n {
                    let cell = self.inst.clause_cells[cl as usize * n + pos] as usize;
                    if self.assigned[cell] != UNASSIGNED || self.cell_seen[cell] == gen {
                        continue;
                    }
                    self.cell_seen[cell] = gen;
                    for &cl2 in &self.inst.cell_clauses[cell] {
                        let c2 = cl2 as usize;
                        if self.clause_mark[c2] == gen && self.clause_seen[c2] != gen {
                            self.clause_seen[c2] = gen;
                            queue.push(cl2);
                        }
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    /// Cache key for a component: its clause ids, a separator, then its
    /// undecided cells. Two states with equal keys pose the identical
    /// residual covering problem.
    fn component_key(&mut self, comp: &[u32]) -> Vec<u32> {
        self.generation += 1;
        let gen = self.generation;
        let n = self.inst.n;
        let mut key = Vec::with_capacity(comp.len() * 2);
        key.extend_from_slice(comp);
        key.push(u32::MAX);
        let mark = key.len();
        for &cl in comp {
            for pos in 0..n {
                let cell = self.inst.clause_cells[cl as usize * n + pos] as usize;
                if self.assigned[cell] == UNASSIGNED && self.cell_seen[cell] != gen {
                    self.cell_seen[cell] = gen;
                    key.push(cell as u32);
                }
            }
        }
        key[mark..].sort_unstable();
        key
    }
}

/// Guess-set candidates: all size-`k` supersets of `demanded` in
/// lexicographic order of the sorted colour lists.
fn candidate_masks(demanded: u32, k: u32, q: u32) -> Vec<u32> {
    let forced = demanded.count_ones();
    if forced > k {
        return Vec::new();
    }
    let free: Vec<u32> = (0..q).filter(|c| demanded & (1 << c) == 0).collect();
    let pick = (k - forced) as usize;
    let mut out = Vec::new();
    if pick > free.len() {
        return out;
    }
    let mut idx: Vec<usize> = (0..pick).collect();
    loop {
        let mut mask = demanded;
        for &i in &idx {
            mask |= 1 << free[i];
        }
        out.push(mask);
        if pick == 0 {
            break;
        }
        // Next combination.
        let mut i = pick;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + free.len() - pick {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..pick {
            idx[j] = idx[j - 1] + 1;
        }
    }
    out
}

/// The two canonical first guesses under colour permutation: `{0..k-1}` and,
/// when a colour is left over, `{1..k}`.
fn canonical_first_masks(k: u32, q: u32) -> Vec<u32> {
    let base = (1u32 << k) - 1;
    if k < q { vec![base, base << 1] } else { vec![base] }
}

enum SolveOutcome {
    Solved,
    Unsolvable,
    Aborted,
}

struct Aborter<'a> {
    best_win: Option<&'a AtomicUsize>,
    my_index: usize,
}

impl Aborter<'_> {
    #[inline]
    fn should_abort(&self, nodes: u64) -> bool {
        if nodes & 0xfff != 0 {
            return false;
        }
        if std::env::var_os("HATDEG_TRACE").is_some() && nodes & 0xfffff == 0 {
            eprintln!(
                "... {} knodes, {} nogood hits",
                nodes >> 10,
                NOGOOD_HITS.load(Ordering::Relaxed)
            );
        }
        match self.best_win {
            Some(best) => best.load(Ordering::Relaxed) < self.my_index,
            None => false,
        }
    }
}

/// Per-search context: the colour-symmetry break applies only to the first
/// branch, and a pinned index restricts that branch to one canonical value
/// (used to partition work among threads).
struct Ctx<'a> {
    first_branch_pending: bool,
    pin: Option<usize>,
    aborter: Aborter<'a>,
}

const NOGOOD_CAPACITY: usize = 1 << 20;
pub(super) static NOGOOD_HITS: AtomicU64 = AtomicU64::new(0);

/// Decides whether every still-uncovered clause in `scope` can be covered.
/// On `Solved` the witnessing assignments stay in place; otherwise the state
/// is restored to its entry configuration.
fn solve(st: &mut State<'_>, scope: &[u32], ctx: &mut Ctx<'_>) -> SolveOutcome {
    let comps = st.components(scope);
    if comps.is_empty() {
        return SolveOutcome::Solved;
    }
    if comps.len() > 1 {
        let checkpoint = st.assign_log.len();
        for comp in &comps {
            match solve(st, comp, ctx) {
                SolveOutcome::Solved => continue,
                other => {
                    st.undo_to(checkpoint);
                    return other;
                }
            }
        }
        return SolveOutcome::Solved;
    }

    let comp = &comps[0];
    let key = st.component_key(comp);
    if st.nogoods.contains(&key) {
        if std::env::var_os("HATDEG_TRACE").is_some() {
            NOGOOD_HITS.fetch_add(1, Ordering::Relaxed);
        }
        return SolveOutcome::Unsolvable;
    }

    // Fail-first: target the clause with the fewest undecided cells, branch
    // on its lowest undecided cell.
    let target = *comp
        .iter()
        .min_by_key(|&&cl| (st.unassigned[cl as usize], cl))
        .expect("component is non-empty");
    let n = st.inst.n;
    let cell = (0..n)
        .map(|pos| st.inst.clause_cells[target as usize * n + pos] as usize)
        .filter(|&c| st.assigned[c] == UNASSIGNED)
        .min()
        .expect("uncovered clause keeps an undecided cell");
    let k = st.inst.budget[st.inst.cell_vertex[cell] as usize];
    let demanded = st.demand_mask(cell);
    let masks: Vec<u32> = if ctx.first_branch_pending {
        ctx.first_branch_pending = false;
        let canonical: Vec<u32> = canonical_first_masks(k, st.inst.q)
            .into_iter()
            .filter(|m| m & demanded == demanded)
            .collect();
        match ctx.pin {
            Some(i) => canonical.into_iter().skip(i).take(1).collect(),
            None => canonical,
        }
    } else {
        candidate_masks(demanded, k, st.inst.q)
    };

    for mask in masks {
        st.nodes += 1;
        if ctx.aborter.should_abort(st.nodes) {
            return SolveOutcome::Aborted;
        }
        let checkpoint = st.assign_log.len();
        if st.assign_checked(cell, mask) {
            match solve(st, comp, ctx) {
                SolveOutcome::Solved => return SolveOutcome::Solved,
                SolveOutcome::Aborted => {
                    st.undo_to(checkpoint);
                    return SolveOutcome::Aborted;
                }
                SolveOutcome::Unsolvable => {}
            }
        }
        st.undo_to(checkpoint);
    }
    if st.nogoods.len() < NOGOOD_CAPACITY {
        st.nogoods.insert(key);
    }
    SolveOutcome::Unsolvable
}

/// Root setup: initial dead-clause scan and unit propagation (single-vertex
/// games resolve here). Returns None on an immediate conflict.
fn root_prepare<'i>(inst: &'i Instance) -> Option<State<'i>> {
    let mut st = State::init(inst);
    let mut units: Vec<u32> = Vec::new();
    for cl in 0..inst.n_clauses {
        if st.covered[cl] == 0 {
            match st.unassigned[cl] {
                0 => return None,
                1 => units.push(cl as u32),
                _ => {}
            }
        }
    }
    if !st.propagate(&mut units) {
        return None;
    }
    Some(st)
}

fn extract_table(st: &State<'_>, g: &Graph) -> StrategyTable {
    let inst = st.inst;
    let mut vertices = Vec::with_capacity(inst.n);
    for v in 0..inst.n {
        let views = inst.cell_offset[v + 1] - inst.cell_offset[v];
        let k = inst.budget[v];
        let mut guesses = Vec::with_capacity(views);
        for view in 0..views {
            let mask = match st.assigned[inst.cell_offset[v] + view] {
                UNASSIGNED => (1u32 << k) - 1, // don't-care cell: lexicographically least set
                m => m,
            };
            guesses.push((0..inst.q).filter(|c| mask & (1 << c) != 0).collect());
        }
        vertices.push(VertexStrategy { v, neighbors: g.neighbors(v).to_vec(), guesses });
    }
    StrategyTable { q: inst.q, vertices }
}

pub(super) fn decide(
    g: &Graph,
    budgets: &GuessBudget,
    q: u32,
    limits: Limits,
    threads: usize,
) -> Result<GameOutcome, SolveError> {
    let start = Instant::now();
    let inst = build(g, budgets, q, limits)?;
    let threads = threads.max(1);

    let finish = |winnability: Winnability, nodes: u64| {
        Ok(GameOutcome { winnability, stats: SearchStats { nodes, elapsed: start.elapsed() } })
    };

    let Some(root) = root_prepare(&inst) else {
        return finish(Winnability::Unwinnable, 0);
    };
    if root.uncovered == 0 {
        let table = extract_table(&root, g);
        return finish(Winnability::Winnable(table), root.nodes);
    }
    if root.total_cap < root.uncovered {
        return finish(Winnability::Unwinnable, root.nodes);
    }
    let scope: Vec<u32> = (0..inst.n_clauses as u32).collect();

    if threads == 1 {
        let mut st = root;
        let mut ctx = Ctx {
            first_branch_pending: true,
            pin: None,
            aborter: Aborter { best_win: None, my_index: 0 },
        };
        let outcome = solve(&mut st, &scope, &mut ctx);
        let nodes = st.nodes;
        return match outcome {
            SolveOutcome::Solved => finish(Winnability::Winnable(extract_table(&st, g)), nodes),
            SolveOutcome::Unsolvable => finish(Winnability::Unwinnable, nodes),
            SolveOutcome::Aborted => unreachable!("sequential search never aborts"),
        };
    }

    // Parallel: one worker per canonical value of the first branch (at most
    // two). The merged result is the earliest value admitting a win, which
    // matches the sequential order, so outcome and table are independent of
    // the worker count.
    let best_win = AtomicUsize::new(usize::MAX);
    let total_nodes = AtomicU64::new(root.nodes);
    let workers = 2usize;
    let results: Vec<Mutex<Option<(SolveOutcome, Option<StrategyTable>)>>> =
        (0..workers).map(|_| Mutex::new(None)).collect();
    std::thread::scope(|scope_| {
        for i in 0..workers {
            let root_ref = &root;
            let scope_ref = &scope;
            let best_ref = &best_win;
            let nodes_ref = &total_nodes;
            let slot = &results[i];
            scope_.spawn(move || {
                let mut st = root_ref.clone();
                let mut ctx = Ctx {
                    first_branch_pending: true,
                    pin: Some(i),
                    aborter: Aborter { best_win: Some(best_ref), my_index: i },
                };
                let outcome = solve(&mut st, scope_ref, &mut ctx);
                let table = match &outcome {
                    SolveOutcome::Solved => {
                        best_ref.fetch_min(i, Ordering::SeqCst);
                        Some(extract_table(&st, g))
                    }
                    _ => None,
                };
                nodes_ref.fetch_add(st.nodes, Ordering::Relaxed);
                *slot.lock().unwrap() = Some((outcome, table));
            });
        }
    });

    let nodes = total_nodes.load(Ordering::Relaxed);
    for slot in &results {
        let guard = slot.lock().unwrap();
        match guard.as_ref() {
            Some((SolveOutcome::Solved, Some(table))) => {
                return finish(Winnability::Winnable(table.clone()), nodes);
            }
            Some((SolveOutcome::Unsolvable, _)) => continue,
            Some((SolveOutcome::Aborted, _)) | Some((SolveOutcome::Solved, None)) | None => {
                // An aborted worker implies an earlier winner already returned.
                unreachable!("aborted worker scanned before a win")
            }
        }
    }
    finish(Winnability::Unwinnable, nodes)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn candidate_masks_cover_supersets_in_order() {
        // q = 4, k = 2, nothing demanded: all 2-subsets in lex order.
        let masks = candidate_masks(0, 2, 4);
        assert_eq!(masks, vec![0b0011, 0b0101, 0b1001, 0b0110, 0b1010, 0b1100]);
        // Demanded {2}: all 2-supersets of {2}.
        let masks = candidate_masks(0b100, 2, 4);
        assert_eq!(masks, vec![0b0101, 0b0110, 0b1100]);
        // Demanded larger than k: none.
        assert!(candidate_masks(0b111, 2, 4).is_empty());
    }

    #[test]
    fn canonical_first() {
        assert_eq!(canonical_first_masks(1, 3), vec![0b01, 0b10]);
        assert_eq!(canonical_first_masks(3, 3), vec![0b111]);
        assert_eq!(canonical_first_masks(2, 4), vec![0b011, 0b110]);
    }
}
