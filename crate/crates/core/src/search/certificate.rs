use std::time::Duration;

use super::partition::ShardRange;

/// Tag written into every certificate; bump when the enumeration order or
/// the meaning of any counter changes.
pub const ENGINE_VERSION: &str = concat!("hbg-", env!("CARGO_PKG_VERSION"), "/dfs-pairs-asc");

/// Node and rejection counts of a depth-first enumeration.
///
/// Depth `k` holds the children generated at the `k`-th branching decision.
/// Every child is classified exactly once: rejected because its partner
/// position was taken, rejected by the symmetry reduction, rejected because
/// a cycle shorter than the target girth closed, kept as an interior node,
/// or kept as a complete leaf.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SearchCounts {
    pub nodes: Vec<u64>,
    pub interior: Vec<u64>,
    pub rejected_matching: u64,
    pub rejected_symmetry: u64,
    pub rejected_girth: u64,
    pub leaves: u64,
}

impl SearchCounts {
    pub fn with_depth(depth: usize) -> Self {
        Self {
            nodes: vec![0; depth],
            interior: vec![0; depth],
            ..Self::default()
        }
    }

    pub fn total_nodes(&self) -> u64 {
        self.nodes.iter().sum()
    }

    pub fn absorb(&mut self, other: &SearchCounts) {
        if self.nodes.len() < other.nodes.len() {
            self.nodes.resize(other.nodes.len(), 0);
            self.interior.resize(other.interior.len(), 0);
        }
        for (a, b) in self.nodes.iter_mut().zip(&other.nodes) {
            *a += b;
        }
        for (a, b) in self.interior.iter_mut().zip(&other.interior) {
            *a += b;
        }
        self.rejected_matching += other.rejected_matching;
        self.rejected_symmetry += other.rejected_symmetry;
        self.rejected_girth += other.rejected_girth;
        self.leaves += other.leaves;
    }
}

/// Record that the pattern space of one `(girth, b, order)` instance was
/// enumerated, or, with `complete == false`, how far a budget-limited run
/// got.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExhaustionCertificate {
    pub girth: u32,
    pub symmetry_factor: u32,
    pub order: u32,
    pub symmetry_reduction: bool,
    /// Positions in one period (`2b`); each branching decision fixes two.
    pub positions: u32,
    /// Odd non-degenerate residues tried at every branching decision.
    pub values_per_position: u32,
    /// First-position value ranges this certificate covers.
    pub covered: Vec<ShardRange>,
    /// Whether the empty assignment (the bare Hamiltonian cycle) passed the
    /// girth test. When it does not, nothing below it is generated.
    pub root_accepted: bool,
    pub counts: SearchCounts,
    pub engine: String,
    pub complete: bool,
    /// Not part of the serialized form.
    pub wall_time: Duration,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CertificateError {
    #[error("certificate counts are inconsistent: {0}")]
    Inconsistent(String),
    #[error("certificates describe different instances")]
    Mismatch,
    #[error("certificate for order {0} is incomplete (budget-limited run)")]
    Incomplete(u32),
}

impl ExhaustionCertificate {
    pub fn total_nodes(&self) -> u64 {
        self.counts.total_nodes()
    }

    /// Number of first-position values covered by `covered`.
    pub fn covered_values(&self) -> u64 {
        self.covered.iter().map(|r| r.len() as u64).sum()
    }

    /// Checks the bookkeeping identities: every generated node is classified
    /// once, each interior node at depth `k` generates exactly
    /// `values_per_position` children at depth `k + 1`, and the first level
    /// has one node per covered value.
    ///
    /// An incomplete certificate may hold partly walked subtrees, so for it
    /// the level identities only hold as upper bounds.
    pub fn check_consistency(&self) -> Result<(), CertificateError> {
        let c = &self.counts;
        let depth = (self.positions / 2) as usize;
        let fail = |msg: String| Err(CertificateError::Inconsistent(msg));
        if c.nodes.len() != depth || c.interior.len() != depth {
            return fail(format!("expected {depth} depth levels, found {}", c.nodes.len()));
        }
        let classified = c.rejected_matching + c.rejected_symmetry + c.rejected_girth + c.leaves
            + c.interior.iter().sum::<u64>();
        if classified != c.total_nodes() {
            return fail(format!("{} nodes but {} classified", c.total_nodes(), classified));
        }
        let first = c.nodes.first().copied().unwrap_or(0);
        let expected_first = if self.root_accepted { self.covered_values() } else { 0 };
        if first < expected_first || (self.complete && first != expected_first) {
            return fail(format!("first level has {first} nodes, expected {expected_first}"));
        }
        for k in 0..depth.saturating_sub(1) {
            let expected = c.interior[k] * u64::from(self.values_per_position);
            if c.nodes[k + 1] > expected || (self.complete && c.nodes[k + 1] != expected) {
                return fail(format!("level {} has {} nodes, expected {}", k + 1, c.nodes[k + 1], expected));
            }
        }
        if depth > 0 && c.interior[depth - 1] != 0 {
            return fail("interior nodes at the last level".to_string());
        }
        if self.total_nodes() < c.leaves {
            return fail("fewer nodes than leaves".to_string());
        }
        if self.complete && self.covered_values() != u64::from(self.values_per_position) {
            return fail(format!(
                "marked complete but covers {} of {} first-position values",
                self.covered_values(),
                self.values_per_position
            ));
        }
        Ok(())
    }

    /// A complete, consistent certificate with no accepted leaf.
    pub fn proves_nonexistence(&self) -> bool {
        self.complete && self.counts.leaves == 0 && self.check_consistency().is_ok()
    }

    /// Sums counts of certificates for disjoint parts of the same instance.
    pub fn merge(parts: &[ExhaustionCertificate]) -> Result<ExhaustionCertificate, CertificateError> {
        let Some(first) = parts.first() else {
            return Err(CertificateError::Mismatch);
        };
        let mut merged = first.clone();
        merged.wall_time = Duration::ZERO;
        merged.counts = SearchCounts::with_depth(first.counts.nodes.len());
        merged.covered.clear();
        for part in parts {
            let same = (part.girth, part.symmetry_factor, part.order, part.symmetry_reduction, part.positions)
                == (first.girth, first.symmetry_factor, first.order, first.symmetry_reduction, first.positions);
            if !same || part.root_accepted != first.root_accepted {
                return Err(CertificateError::Mismatch);
            }
            merged.counts.absorb(&part.counts);
            merged.covered.extend_from_slice(&part.covered);
            merged.wall_time = merged.wall_time.max(part.wall_time);
        }
        merged.covered = ShardRange::coalesce(merged.covered);
        merged.complete = merged.covered_values() == u64::from(merged.values_per_position);
        Ok(merged)
    }
}
