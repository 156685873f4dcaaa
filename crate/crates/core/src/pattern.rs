//! Offset patterns: a trivalent Hamiltonian bipartite graph of order `2m`
//! described by the chord offsets along its Hamiltonian cycle, repeating
//! with period `2b`.
//!
//! Vertices are labeled `0..2m` internally. Vertex `v` is joined to
//! `v - 1`, `v + 1` and `v + offsets[v mod 2b]` (all mod `2m`). Offsets are
//! kept as least positive residues. External formats add one to every
//! label; offsets are unaffected by that shift.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::graph::ExpandedGraph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PatternError {
    #[error("order 2m = {order} is too small; a simple trivalent graph needs m >= 3")]
    Range { order: u64 },
    #[error("order {order} is odd; a bipartite Hamiltonian graph has even order")]
    OddOrder { order: u64 },
    #[error("symmetry factor {b} does not divide m = {m}")]
    Divisibility { m: u32, b: u32 },
    #[error("expected {expected} offsets (2b), found {found}")]
    Length { expected: usize, found: usize },
    #[error("offset {offset} at position {position} is even; chords must join opposite parity classes")]
    Parity { position: usize, offset: u32 },
    #[error("offset {offset} at position {position} is degenerate (0, 1 or -1 mod 2m)")]
    DegenerateChord { position: usize, offset: u32 },
    #[error(
        "chords do not form a perfect matching: position {position} points at position \
         {partner}, which holds {found} instead of {expected}"
    )]
    Matching {
        position: usize,
        partner: usize,
        expected: u32,
        found: u32,
    },
}

/// A validated offset pattern.
///
/// Invariants (checked by [`OffsetPattern::new`]): `b | m`, `m >= 3`,
/// exactly `2b` offsets, every offset odd and outside `{0, 1, 2m - 1}`, and
/// the chords close up into a perfect matching.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OffsetPattern {
    half_order: u32,
    symmetry_factor: u32,
    offsets: Vec<u32>,
}

impl OffsetPattern {
    /// Validates and normalizes a pattern. Offsets may be given as arbitrary
    /// integers; they are reduced mod `2m`.
    pub fn new(half_order: u32, symmetry_factor: u32, offsets: &[i64]) -> Result<Self, PatternError> {
        let m = half_order;
        let b = symmetry_factor;
        if m < 3 {
            return Err(PatternError::Range { order: 2 * u64::from(m) });
        }
        if b == 0 || m % b != 0 {
            return Err(PatternError::Divisibility { m, b });
        }
        let period = 2 * b as usize;
        if offsets.len() != period {
            return Err(PatternError::Length {
                expected: period,
                found: offsets.len(),
            });
        }
        let n = 2 * i64::from(m);
        let normalized: Vec<u32> = offsets.iter().map(|&d| d.rem_euclid(n) as u32).collect();
        check_offsets(m, &normalized)?;
        Ok(Self {
            half_order: m,
            symmetry_factor: b,
            offsets: normalized,
        })
    }

    /// Validates residues that are already reduced mod `2m`.
    pub fn from_residues(half_order: u32, symmetry_factor: u32, offsets: Vec<u32>) -> Result<Self, PatternError> {
        let signed: Vec<i64> = offsets.iter().map(|&d| i64::from(d)).collect();
        Self::new(half_order, symmetry_factor, &signed)
    }

    /// Builds a pattern from residues already known to satisfy every
    /// invariant (used on search leaves, which are re-checked by callers).
    pub(crate) fn from_residues_unchecked(half_order: u32, symmetry_factor: u32, offsets: Vec<u32>) -> Self {
        debug_assert_eq!(check_offsets(half_order, &offsets), Ok(()));
        Self {
            half_order,
            symmetry_factor,
            offsets,
        }
    }

    /// `m`: half the number of vertices.
    pub fn half_order(&self) -> u32 {
        self.half_order
    }

    /// Number of vertices, `2m`.
    pub fn order(&self) -> u32 {
        2 * self.half_order
    }

    /// The symmetry factor `b` this pattern was stated with.
    pub fn symmetry_factor(&self) -> u32 {
        self.symmetry_factor
    }

    /// The `2b` offsets as least positive residues mod `2m`.
    pub fn offsets(&self) -> &[u32] {
        &self.offsets
    }

    /// Chord offset of vertex `v` (0-based).
    #[inline]
    pub fn offset_at(&self, v: u32) -> u32 {
        self.offsets[(v as usize) % self.offsets.len()]
    }

    /// Chord endpoint of vertex `v` (0-based).
    #[inline]
    pub fn chord(&self, v: u32) -> u32 {
        (v + self.offset_at(v)) % self.order()
    }

    pub fn expand(&self) -> ExpandedGraph {
        let n = self.order();
        let adjacency = (0..n)
            .map(|v| [(v + n - 1) % n, (v + 1) % n, self.chord(v)])
            .collect();
        ExpandedGraph::from_adjacency_unchecked(adjacency)
    }

    /// Smallest `p` dividing `2b` such that the periodic offset sequence
    /// repeats every `p` positions.
    pub fn minimal_period(&self) -> usize {
        let len = self.offsets.len();
        (1..=len)
            .filter(|p| len % p == 0)
            .find(|&p| (p..len).all(|i| self.offsets[i] == self.offsets[i - p]))
            .unwrap_or(len)
    }

    /// Every `b'` dividing `m` for which this graph, under the same
    /// labeling, has symmetry factor `b'`: those whose period `2b'` is a
    /// multiple of the minimal period.
    pub fn derived_symmetry_factors(&self) -> BTreeSet<u32> {
        let p = self.minimal_period() as u32;
        divisors(self.half_order)
            .into_iter()
            .filter(|&d| (2 * d) % p == 0)
            .collect()
    }

    /// Restates the pattern with a different symmetry factor, if the offset
    /// sequence is periodic with period `2 * factor`.
    pub fn with_symmetry_factor(&self, factor: u32) -> Option<OffsetPattern> {
        if !self.derived_symmetry_factors().contains(&factor) {
            return None;
        }
        let offsets = (0..2 * factor as usize)
            .map(|i| self.offsets[i % self.offsets.len()])
            .collect();
        Some(Self::from_residues_unchecked(self.half_order, factor, offsets))
    }

    pub fn transform(&self, transform: &PatternTransform) -> OffsetPattern {
        let n = self.order();
        let len = self.offsets.len();
        let offsets = match transform {
            PatternTransform::Shift(k) => {
                let k = *k as usize % len;
                (0..len).map(|j| self.offsets[(j + k) % len]).collect()
            }
            PatternTransform::Reflect => (0..len).map(|j| n - self.offsets[(len - j) % len]).collect(),
            PatternTransform::Compose(steps) => {
                return steps.iter().fold(self.clone(), |p, t| p.transform(t));
            }
        };
        Self::from_residues_unchecked(self.half_order, self.symmetry_factor, offsets)
    }

    /// Lexicographically smallest offset sequence over all cyclic relabelings
    /// of the start vertex and both traversal directions.
    pub fn canonical_form(&self) -> OffsetPattern {
        let n = self.order();
        let len = self.offsets.len();
        let reflected: Vec<u32> = (0..len).map(|j| n - self.offsets[(len - j) % len]).collect();
        let mut best: &[u32] = &self.offsets;
        let mut best_shift = 0;
        for base in [&self.offsets, &reflected] {
            for k in 0..len {
                if rotated_cmp(base, k, best, best_shift) == Ordering::Less {
                    best = base;
                    best_shift = k;
                }
            }
        }
        let offsets = (0..len).map(|j| best[(j + best_shift) % len]).collect();
        Self::from_residues_unchecked(self.half_order, self.symmetry_factor, offsets)
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical_form().offsets == self.offsets
    }
}

impl PartialOrd for OffsetPattern {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for OffsetPattern {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.half_order, self.symmetry_factor, &self.offsets).cmp(&(
            other.half_order,
            other.symmetry_factor,
            &other.offsets,
        ))
    }
}

impl fmt::Display for OffsetPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} b={} [", self.order(), self.symmetry_factor)?;
        for (i, d) in self.offsets.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{d}")?;
        }
        f.write_str("]")
    }
}

fn rotated_cmp(a: &[u32], a_shift: usize, b: &[u32], b_shift: usize) -> Ordering {
    let len = a.len();
    for j in 0..len {
        match a[(j + a_shift) % len].cmp(&b[(j + b_shift) % len]) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

/// Checks parity, non-degeneracy and involution closure of normalized
/// residues.
fn check_offsets(m: u32, offsets: &[u32]) -> Result<(), PatternError> {
    let n = 2 * m;
    let len = offsets.len();
    for (j, &d) in offsets.iter().enumerate() {
        if d % 2 == 0 {
            // 0 is even too, but reported as degenerate since it is a loop.
            if d == 0 {
                return Err(PatternError::DegenerateChord { position: j + 1, offset: d });
            }
            return Err(PatternError::Parity { position: j + 1, offset: d });
        }
        if d == 1 || d == n - 1 {
            return Err(PatternError::DegenerateChord { position: j + 1, offset: d });
        }
    }
    for (j, &d) in offsets.iter().enumerate() {
        let t = (j + d as usize) % len;
        let expected = n - d;
        if offsets[t] != expected {
            return Err(PatternError::Matching {
                position: j + 1,
                partner: t + 1,
                expected,
                found: offsets[t],
            });
        }
    }
    Ok(())
}

pub(crate) fn divisors(x: u32) -> Vec<u32> {
    (1..=x).filter(|d| x % d == 0).collect()
}

/// Relabelings of the Hamiltonian cycle that map patterns to patterns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PatternTransform {
    /// Move the start of the labeling forward by this many vertices.
    Shift(u32),
    /// Traverse the cycle in the opposite direction, keeping vertex 0 fixed.
    Reflect,
    /// Apply the steps left to right.
    Compose(Vec<PatternTransform>),
}
