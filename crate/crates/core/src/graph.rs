//! Explicit adjacency for an expanded pattern.

/// A cubic graph on vertices `0..n`, stored as `[previous, next, chord]`
/// along the Hamiltonian cycle `0 -> 1 -> ... -> n-1 -> 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpandedGraph {
    adjacency: Vec<[u32; 3]>,
}

impl ExpandedGraph {
    pub(crate) fn from_adjacency_unchecked(adjacency: Vec<[u32; 3]>) -> Self {
        Self { adjacency }
    }

    pub fn order(&self) -> usize {
        self.adjacency.len()
    }

    pub fn neighbors(&self, v: usize) -> &[u32; 3] {
        &self.adjacency[v]
    }

    /// Chord endpoint of `v`.
    pub fn chord(&self, v: usize) -> usize {
        self.adjacency[v][2] as usize
    }

    /// Each undirected edge once, as `(u, v)` with `u < v`, in ascending order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut edges: Vec<(usize, usize)> = self
            .adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, nbrs)| nbrs.iter().map(move |&v| (u, v as usize)))
            .filter(|(u, v)| u < v)
            .collect();
        edges.sort_unstable();
        edges.dedup();
        edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges().len()
    }

    /// Every vertex has three distinct neighbors, none equal to itself, and
    /// adjacency is symmetric.
    pub fn is_simple_cubic(&self) -> bool {
        let n = self.order();
        self.adjacency.iter().enumerate().all(|(v, nbrs)| {
            let [a, b, c] = *nbrs;
            a != b
                && b != c
                && a != c
                && nbrs.iter().all(|&w| {
                    (w as usize) < n && w as usize != v && self.adjacency[w as usize].contains(&(v as u32))
                })
        })
    }

    /// Every edge joins an even label to an odd label.
    pub fn is_bipartite_by_parity(&self) -> bool {
        self.adjacency
            .iter()
            .enumerate()
            .all(|(v, nbrs)| nbrs.iter().all(|&w| (w as usize + v) % 2 == 1))
    }

    /// The labeled cycle `0 -> 1 -> ... -> n-1 -> 0` is present.
    pub fn contains_labeled_cycle(&self) -> bool {
        let n = self.order();
        (0..n).all(|v| self.adjacency[v].contains(&(((v + 1) % n) as u32)))
    }

    /// Each vertex has exactly one neighbor that is not a cycle neighbor.
    pub fn has_perfect_chord_matching(&self) -> bool {
        let n = self.order();
        (0..n).all(|v| {
            let prev = ((v + n - 1) % n) as u32;
            let next = ((v + 1) % n) as u32;
            let off_cycle = self.adjacency[v].iter().filter(|&&w| w != prev && w != next).count();
            let c = self.chord(v);
            off_cycle == 1 && self.chord(c) == v
        })
    }
}
