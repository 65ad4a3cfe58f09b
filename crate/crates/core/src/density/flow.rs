//! Dinic maximum flow with exact integer capacities.

use std::collections::VecDeque;

#[derive(Clone, Debug)]
struct Arc {
    to: usize,
    cap: u128,
    rev: usize,
}

/// Max-flow network over `u128` capacities; big enough for the scaled
/// densest-subgraph tests, exact by construction.
pub struct Dinic {
    graph: Vec<Vec<Arc>>,
}

impl Dinic {
    pub fn new(n: usize) -> Dinic {
        Dinic { graph: vec![Vec::new(); n] }
    }

    pub fn add_edge(&mut self, from: usize, to: usize, cap: u128) {
        let rev_f = self.graph[to].len();
        let rev_t = self.graph[from].len();
        self.graph[from].push(Arc { to, cap, rev: rev_f });
        self.graph[to].push(Arc { to: from, cap: 0, rev: rev_t });
    }

    fn bfs(&self, s: usize, t: usize, level: &mut [i32]) -> bool {
        level.fill(-1);
        level[s] = 0;
        let mut queue = VecDeque::new();
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            for arc in &self.graph[u] {
                if arc.cap > 0 && level[arc.to] == -1 {
                    level[arc.to] = level[u] + 1;
                    queue.push_back(arc.to);
                }
            }
        }
        level[t] != -1
    }

    fn dfs(&mut self, u: usize, t: usize, pushed: u128, level: &[i32], iter: &mut [usize]) -> u128 {
        if u == t {
            return pushed;
        }
        while iter[u] < self.graph[u].len() {
            let i = iter[u];
            let (to, cap) = {
                let arc = &self.graph[u][i];
                (arc.to, arc.cap)
            };
            if cap > 0 && level[to] == level[u] + 1 {
                let got = self.dfs(to, t, pushed.min(cap), level, iter);
                if got > 0 {
                    let rev = self.graph[u][i].rev;
                    self.graph[u][i].cap -= got;
                    self.graph[to][rev].cap += got;
                    return got;
                }
            }
            iter[u] += 1;
        }
        0
    }

    pub fn max_flow(&mut self, s: usize, t: usize) -> u128 {
        let n = self.graph.len();
        let mut flow = 0u128;
        let mut level = vec![-1i32; n];
        while self.bfs(s, t, &mut level) {
            let mut iter = vec![0usize; n];
            loop {
                let pushed = self.dfs(s, t, u128::MAX, &level, &mut iter);
                if pushed == 0 {
                    break;
                }
                flow += pushed;
            }
        }
        flow
    }

    /// Nodes reachable from `s` in the residual network (the source side of
    /// a minimum cut after `max_flow`).
    pub fn min_cut_side(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.graph.len()];
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(u) = stack.pop() {
            for arc in &self.graph[u] {
                if arc.cap > 0 && !seen[arc.to] {
                    seen[arc.to] = true;
                    stack.push(arc.to);
                }
            }
        }
        seen
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn textbook_max_flow() {
        let mut d = Dinic::new(6);
        d.add_edge(0, 1, 10);
        d.add_edge(0, 2, 10);
        d.add_edge(1, 3, 4);
        d.add_edge(1, 4, 8);
        d.add_edge(2, 4, 9);
        d.add_edge(3, 5, 10);
        d.add_edge(4, 3, 6);
        d.add_edge(4, 5, 10);
        assert_eq!(d.max_flow(0, 5), 19);
    }

    #[test]
    fn disconnected_sink() {
        let mut d = Dinic::new(4);
        d.add_edge(0, 1, 10);
        d.add_edge(2, 3, 5);
        assert_eq!(d.max_flow(0, 3), 0);
        let side = d.min_cut_side(0);
        assert!(side[0] && side[1] && !side[2] && !side[3]);
    }
}
