//! Dinic max-flow, used with unit capacities for vertex-disjoint paths.

use std::collections::VecDeque;

#[derive(Clone, Debug)]
struct Arc {
    to: usize,
    cap: i64,
}

#[derive(Clone, Debug, Default)]
pub struct FlowNetwork {
    arcs: Vec<Arc>,
    adj: Vec<Vec<usize>>,
    original: Vec<i64>,
}

impl FlowNetwork {
    pub fn new(n: usize) -> Self {
        Self { arcs: Vec::new(), adj: vec![Vec::new(); n], original: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    /// Adds `u → v` with capacity `cap`; returns the arc id.
    pub fn add_arc(&mut self, u: usize, v: usize, cap: i64) -> usize {
        let id = self.arcs.len();
        self.arcs.push(Arc { to: v, cap });
        self.arcs.push(Arc { to: u, cap: 0 });
        self.original.push(cap);
        self.original.push(0);
        self.adj[u].push(id);
        self.adj[v].push(id + 1);
        id
    }

    /// Flow currently carried by arc `id`.
    pub fn flow(&self, id: usize) -> i64 {
        self.original[id] - self.arcs[id].cap
    }

    pub fn arcs_from(&self, u: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj[u].iter().filter(|&&id| id % 2 == 0).map(move |&id| (id, self.arcs[id].to))
    }

    pub fn max_flow(&mut self, s: usize, t: usize) -> i64 {
        let n = self.adj.len();
        let mut total = 0;
        let mut level = vec![-1i32; n];
        let mut it = vec![0usize; n];
        loop {
            level.iter_mut().for_each(|l| *l = -1);
            level[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &id in &self.adj[u] {
                    let a = &self.arcs[id];
                    if a.cap > 0 && level[a.to] < 0 {
                        level[a.to] = level[u] + 1;
                        queue.push_back(a.to);
                    }
                }
            }
            if level[t] < 0 {
                return total;
            }
            it.iter_mut().for_each(|x| *x = 0);
            loop {
                let f = self.augment(s, t, i64::MAX, &level, &mut it);
                if f == 0 {
                    break;
                }
                total += f;
            }
        }
    }

    // Iterative DFS along the level graph.
    fn augment(&mut self, s: usize, t: usize, limit: i64, level: &[i32], it: &mut [usize]) -> i64 {
        let mut stack: Vec<usize> = Vec::new(); // arc ids along the current path
        let mut u = s;
        loop {
            if u == t {
                let f = stack.iter().map(|&id| self.arcs[id].cap).min().unwrap_or(limit).min(limit);
                for &id in &stack {
                    self.arcs[id].cap -= f;
                    self.arcs[id ^ 1].cap += f;
                }
                return f;
            }
            let mut advanced = false;
            while it[u] < self.adj[u].len() {
                let id = self.adj[u][it[u]];
                let a = &self.arcs[id];
                if a.cap > 0 && level[a.to] == level[u] + 1 {
                    stack.push(id);
                    u = a.to;
                    advanced = true;
                    break;
                }
                it[u] += 1;
            }
            if !advanced {
                // dead end: retreat
                match stack.pop() {
                    None => return 0,
                    Some(id) => {
                        u = self.arcs[id ^ 1].to;
                        it[u] += 1;
                    }
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_network() {
        let mut g = FlowNetwork::new(4);
        g.add_arc(0, 1, 3);
        g.add_arc(0, 2, 2);
        g.add_arc(1, 2, 5);
        g.add_arc(1, 3, 2);
        g.add_arc(2, 3, 3);
        assert_eq!(g.max_flow(0, 3), 5);
    }

    #[test]
    fn disconnected() {
        let mut g = FlowNetwork::new(3);
        g.add_arc(0, 1, 1);
        assert_eq!(g.max_flow(0, 2), 0);
    }
}
