//! Highest-label push–relabel max-flow with the gap heuristic, on real
//! capacities.

use alloc::vec;
use alloc::vec::Vec;

/// Directed network; arc `2k` and its reverse `2k + 1` are added together.
#[derive(Clone, Debug)]
pub struct FlowNetwork {
    n: usize,
    to: Vec<usize>,
    capacity: Vec<f64>,
    flow: Vec<f64>,
    adjacency: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MaxFlow {
    pub value: f64,
    /// Vertices reachable from the source in the residual network.
    pub source_side: Vec<bool>,
    /// Capacity of the arcs leaving `source_side`.
    pub cut_capacity: f64,
}

impl FlowNetwork {
    pub fn new(n: usize) -> Self {
        FlowNetwork { n, to: Vec::new(), capacity: Vec::new(), flow: Vec::new(), adjacency: vec![Vec::new(); n] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Arc `u -> v`; returns its index.
    pub fn add_arc(&mut self, u: usize, v: usize, capacity: f64) -> usize {
        let k = self.to.len();
        self.to.extend([v, u]);
        self.capacity.extend([capacity.max(0.0), 0.0]);
        self.flow.extend([0.0, 0.0]);
        self.adjacency[u].push(k);
        self.adjacency[v].push(k + 1);
        k
    }

    /// Tail and head of arc `k`.
    pub fn arc(&self, k: usize) -> (usize, usize) {
        (self.to[k ^ 1], self.to[k])
    }

    pub fn flow(&self, k: usize) -> f64 {
        self.flow[k]
    }

    pub fn capacity(&self, k: usize) -> f64 {
        self.capacity[k]
    }

    pub fn num_arcs(&self) -> usize {
        self.to.len()
    }

    fn residual(&self, k: usize) -> f64 {
        self.capacity[k] - self.flow[k]
    }

    fn push(&mut self, k: usize, delta: f64) {
        self.flow[k] += delta;
        self.flow[k ^ 1] -= delta;
    }

    /// Maximum `s`-`t` flow; flows are stored on the arcs.
    pub fn max_flow(&mut self, s: usize, t: usize) -> MaxFlow {
        let n = self.n;
        self.flow.iter_mut().for_each(|f| *f = 0.0);
        let scale = self.capacity.iter().copied().fold(0.0, f64::max).max(1.0);
        let eps = 1e-13 * scale;
        let max_height = 2 * n;

        let mut height = vec![0usize; n];
        let mut excess = vec![0.0f64; n];
        let mut current = vec![0usize; n];
        let mut count = vec![0usize; max_height + 1];
        let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); max_height + 1];
        height[s] = n;
        count[0] = n - 1;
        count[n] += 1;

        for i in 0..self.adjacency[s].len() {
            let k = self.adjacency[s][i];
            let c = self.residual(k);
            if c > 0.0 {
                let v = self.to[k];
                self.push(k, c);
                excess[v] += c;
                excess[s] -= c;
            }
        }
        let mut highest = 0;
        for v in 0..n {
            if v != s && v != t && excess[v] > eps {
                buckets[height[v]].push(v);
            }
        }

        loop {
            while highest > 0 && buckets[highest].is_empty() {
                highest -= 1;
            }
            let Some(u) = buckets[highest].pop() else { break };
            if height[u] != highest || excess[u] <= eps {
                // stale entry; re-file under its current height
                if excess[u] > eps && height[u] < max_height {
                    buckets[height[u]].push(u);
                    highest = highest.max(height[u]);
                }
                continue;
            }
            // discharge u
            while excess[u] > eps {
                if current[u] == self.adjacency[u].len() {
                    let old = height[u];
                    let mut new = max_height;
                    for &k in &self.adjacency[u] {
                        if self.residual(k) > eps {
                            new = new.min(height[self.to[k]] + 1);
                        }
                    }
                    count[old] -= 1;
                    if count[old] == 0 && old < n {
                        // gap: nothing above `old` can reach the sink
                        for v in 0..n {
                            if height[v] > old && height[v] < n && v != s {
                                count[height[v]] -= 1;
                                height[v] = n + 1;
                                count[n + 1] += 1;
                                current[v] = 0;
                                if excess[v] > eps && v != t {
                                    buckets[n + 1].push(v);
                                }
                            }
                        }
                        new = new.max(n + 1);
                    }
                    height[u] = new.min(max_height);
                    count[height[u]] += 1;
                    current[u] = 0;
                    if height[u] >= max_height {
                        break;
                    }
                    highest = highest.max(n + 1).min(max_height);
                    continue;
                }
                let k = self.adjacency[u][current[u]];
                let v = self.to[k];
                let r = self.residual(k);
                if r > eps && height[u] == height[v] + 1 {
                    let delta = excess[u].min(r);
                    self.push(k, delta);
                    excess[u] -= delta;
                    let was_inactive = excess[v] <= eps;
                    excess[v] += delta;
                    if was_inactive && v != s && v != t && excess[v] > eps {
                        buckets[height[v]].push(v);
                    }
                } else {
                    current[u] += 1;
                }
            }
            if excess[u] > eps && height[u] < max_height {
                buckets[height[u]].push(u);
            }
            highest = highest.max(height[u].min(max_height - 1));
        }

        let value = self.adjacency[t].iter().map(|&k| -self.flow[k]).sum();
        let source_side = self.residual_reachable(s, eps);
        let cut_capacity = (0..self.num_arcs())
            .step_by(2)
            .filter(|&k| {
                let (a, b) = self.arc(k);
                source_side[a] && !source_side[b]
            })
            .map(|k| self.capacity[k])
            .sum();
        MaxFlow { value, source_side, cut_capacity }
    }

    fn residual_reachable(&self, s: usize, eps: f64) -> Vec<bool> {
        let mut seen = vec![false; self.n];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &k in &self.adjacency[u] {
                let v = self.to[k];
                if !seen[v] && self.residual(k) > eps {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen
    }

    /// Largest violation of capacity bounds or conservation at inner nodes.
    pub fn audit(&self, s: usize, t: usize) -> f64 {
        let mut worst = 0.0f64;
        for k in 0..self.num_arcs() {
            worst = worst.max(self.flow[k] - self.capacity[k]).max((self.flow[k] + self.flow[k ^ 1]).abs());
        }
        for v in 0..self.n {
            if v == s || v == t {
                continue;
            }
            let net: f64 = self.adjacency[v].iter().map(|&k| self.flow[k]).sum();
            worst = worst.max(net.abs());
        }
        worst
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn classic_network() {
        // CLRS example, max flow 23
        let mut g = FlowNetwork::new(6);
        for (u, v, c) in [
            (0, 1, 16.0),
            (0, 2, 13.0),
            (2, 1, 4.0),
            (1, 3, 12.0),
            (3, 2, 9.0),
            (2, 4, 14.0),
            (4, 3, 7.0),
            (3, 5, 20.0),
            (4, 5, 4.0),
        ] {
            g.add_arc(u, v, c);
        }
        let r = g.max_flow(0, 5);
        assert!((r.value - 23.0).abs() < 1e-12);
        assert!((r.cut_capacity - 23.0).abs() < 1e-12);
        assert!(g.audit(0, 5) < 1e-12);
    }

    /// Minimum cut by enumeration of all source sides.
    fn brute_min_cut(n: usize, arcs: &[(usize, usize, f64)]) -> f64 {
        let mut best = f64::INFINITY;
        for bits in 0u32..1 << n {
            if bits & 1 == 0 || bits >> (n - 1) & 1 == 1 {
                continue;
            }
            let cut: f64 = arcs.iter().filter(|(u, v, _)| bits >> u & 1 == 1 && bits >> v & 1 == 0).map(|a| a.2).sum();
            best = best.min(cut);
        }
        best
    }

    proptest! {
        #[test]
        fn matches_enumerated_min_cut(
            n in 2usize..8,
            raw in proptest::collection::vec((0usize..8, 0usize..8, 0.0f64..5.0), 0..25),
        ) {
            let arcs: Vec<_> = raw.into_iter().filter(|(u, v, _)| u < &n && v < &n && u != v).collect();
            let mut g = FlowNetwork::new(n);
            for &(u, v, c) in &arcs {
                g.add_arc(u, v, c);
            }
            let r = g.max_flow(0, n - 1);
            let brute = brute_min_cut(n, &arcs);
            prop_assert!((r.value - brute).abs() < 1e-9, "{} vs {}", r.value, brute);
            prop_assert!((r.cut_capacity - r.value).abs() < 1e-9);
            prop_assert!(g.audit(0, n - 1) < 1e-9);
        }
    }
}
