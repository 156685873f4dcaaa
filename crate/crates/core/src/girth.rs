//! Girth measurement.
//!
//! Two independent routes: [`girth_oracle`] runs a plain breadth-first
//! search from every vertex of an explicit graph, while [`girth_fast`] and
//! the search pruning work directly on offsets. Translating every label by
//! `2b` is an automorphism of a pattern graph (and of any partial graph
//! built from whole offset classes), so only the `2b` class
//! representatives need to be used as roots.

use std::fmt;

use crate::graph::ExpandedGraph;
use crate::pattern::OffsetPattern;
use crate::search::PartialAssignment;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GirthResult {
    /// Length of a shortest cycle.
    Exact(u32),
    /// No cycle of length at most the echoed cap.
    ExceedsCap(u32),
}

impl GirthResult {
    pub fn exact(self) -> Option<u32> {
        match self {
            GirthResult::Exact(g) => Some(g),
            GirthResult::ExceedsCap(_) => None,
        }
    }

    /// True when the graph has no cycle shorter than `g`. Only decidable
    /// when `g - 1` does not exceed the cap used for the measurement.
    pub fn is_at_least(self, g: u32) -> bool {
        match self {
            GirthResult::Exact(v) => v >= g,
            GirthResult::ExceedsCap(cap) => {
                debug_assert!(g <= cap + 1, "cap {cap} too small to decide girth >= {g}");
                true
            }
        }
    }
}

impl fmt::Display for GirthResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GirthResult::Exact(g) => write!(f, "{g}"),
            GirthResult::ExceedsCap(cap) => write!(f, ">{cap}"),
        }
    }
}

/// Reference girth computation. BFS from every vertex to depth
/// `ceil(cap / 2)`; every non-tree edge `(u, w)` closes a walk of length
/// `d(u) + d(w) + 1` that contains a cycle no longer than that, and the
/// root on a shortest cycle sees exactly its length.
pub fn girth_oracle(graph: &ExpandedGraph, cap: u32) -> GirthResult {
    const UNSEEN: u32 = u32::MAX;
    let n = graph.order();
    let max_depth = cap.div_ceil(2);
    let mut best = u32::MAX;
    let mut dist = vec![UNSEEN; n];
    let mut parent = vec![UNSEEN; n];
    // Visit order doubles as the BFS queue and as the list of entries to
    // reset before the next root.
    let mut order: Vec<usize> = Vec::with_capacity(n);
    for root in 0..n {
        dist[root] = 0;
        order.push(root);
        let mut head = 0;
        while head < order.len() {
            let u = order[head];
            head += 1;
            let du = dist[u];
            if du >= max_depth {
                continue;
            }
            for &w in graph.neighbors(u) {
                if parent[u] == w {
                    continue;
                }
                let w = w as usize;
                if dist[w] == UNSEEN {
                    dist[w] = du + 1;
                    parent[w] = u as u32;
                    order.push(w);
                } else {
                    best = best.min(du + dist[w] + 1);
                }
            }
        }
        for &v in &order {
            dist[v] = UNSEEN;
            parent[v] = UNSEEN;
        }
        order.clear();
    }
    if best <= cap {
        GirthResult::Exact(best)
    } else {
        GirthResult::ExceedsCap(cap)
    }
}

/// Girth of a pattern's graph measured from the `2b` class representatives.
/// Agrees with `girth_oracle(&pattern.expand(), cap)`.
pub fn girth_fast(pattern: &OffsetPattern, cap: u32) -> GirthResult {
    let mut scanner = CycleScanner::new();
    let n = pattern.order();
    let best = (0..pattern.offsets().len() as u32)
        .filter_map(|root| scanner.shortest_cycle_through(n, pattern.offsets(), root, cap))
        .min();
    match best {
        Some(g) => GirthResult::Exact(g),
        None => GirthResult::ExceedsCap(cap),
    }
}

/// Exact girth of a pattern (cap = order).
pub fn girth_exact(pattern: &OffsetPattern) -> u32 {
    girth_fast(pattern, pattern.order())
        .exact()
        .expect("the Hamiltonian cycle bounds the girth by the order")
}

/// False only if the edges fixed so far (the Hamiltonian cycle plus every
/// assigned chord class) already close a cycle shorter than `g`.
pub fn has_girth_at_least(partial: &PartialAssignment, g: u32) -> bool {
    if g <= 3 {
        return true;
    }
    let mut scanner = CycleScanner::new();
    let n = partial.order();
    (0..partial.raw_offsets().len() as u32)
        .all(|root| scanner.shortest_cycle_through(n, partial.raw_offsets(), root, g - 1).is_none())
}

/// Reusable BFS buffers for cycle detection on an offset graph given as a
/// period of residues, where `0` marks an unassigned chord class.
#[derive(Debug, Default, Clone)]
pub struct CycleScanner {
    depth: Vec<u32>,
    parent: Vec<u32>,
    stamp: Vec<u32>,
    epoch: u32,
    queue: Vec<u32>,
}

impl CycleScanner {
    pub fn new() -> Self {
        Self::default()
    }

    fn reset(&mut self, n: usize) {
        if self.stamp.len() < n {
            self.depth.resize(n, 0);
            self.parent.resize(n, 0);
            self.stamp.resize(n, 0);
        }
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.stamp.iter_mut().for_each(|s| *s = 0);
            self.epoch = 1;
        }
        self.queue.clear();
    }

    /// Length of a shortest closed walk found through `root` that is at most
    /// `limit`, or `None` when there is none. A returned value `L` proves a
    /// cycle of length at most `L` exists; every cycle through `root` of
    /// length at most `limit` is found.
    pub fn shortest_cycle_through(&mut self, n: u32, offsets: &[u32], root: u32, limit: u32) -> Option<u32> {
        self.reset(n as usize);
        let period = offsets.len() as u32;
        let epoch = self.epoch;
        self.stamp[root as usize] = epoch;
        self.depth[root as usize] = 0;
        self.parent[root as usize] = u32::MAX;
        self.queue.push(root);
        let mut best = u32::MAX;
        let mut head = 0;
        while head < self.queue.len() {
            let u = self.queue[head];
            head += 1;
            let du = self.depth[u as usize];
            if 2 * du + 1 > limit || 2 * du + 1 >= best {
                break;
            }
            let off = offsets[(u % period) as usize];
            let nbrs = [
                if u == 0 { n - 1 } else { u - 1 },
                if u + 1 == n { 0 } else { u + 1 },
                if off == 0 { u32::MAX } else { (u + off) % n },
            ];
            let pu = self.parent[u as usize];
            for w in nbrs {
                if w == u32::MAX || w == pu {
                    continue;
                }
                let wi = w as usize;
                if self.stamp[wi] == epoch {
                    best = best.min(du + self.depth[wi] + 1);
                } else {
                    self.stamp[wi] = epoch;
                    self.depth[wi] = du + 1;
                    self.parent[wi] = u;
                    self.queue.push(w);
                }
            }
        }
        (best <= limit).then_some(best)
    }
}
