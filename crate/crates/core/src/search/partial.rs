use crate::pattern::{OffsetPattern, PatternError};

/// Offsets assigned for some positions of the period, `0` marking the rest.
/// Assigning a position also fixes the position its chords land on, so
/// assigned positions always come in matched pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialAssignment {
    half_order: u32,
    symmetry_factor: u32,
    offsets: Vec<u32>,
}

impl PartialAssignment {
    pub fn new(half_order: u32, symmetry_factor: u32) -> Result<Self, PatternError> {
        if half_order < 3 {
            return Err(PatternError::Range {
                order: 2 * u64::from(half_order),
            });
        }
        if symmetry_factor == 0 || half_order % symmetry_factor != 0 {
            return Err(PatternError::Divisibility {
                m: half_order,
                b: symmetry_factor,
            });
        }
        Ok(Self {
            half_order,
            symmetry_factor,
            offsets: vec![0; 2 * symmetry_factor as usize],
        })
    }

    /// The state the depth-first search reaches after following `pattern`
    /// for `steps` branching decisions.
    pub fn replay(pattern: &OffsetPattern, steps: usize) -> Self {
        let mut partial = Self::new(pattern.half_order(), pattern.symmetry_factor())
            .expect("pattern parameters are valid");
        for _ in 0..steps {
            let Some(j) = partial.frontier() else { break };
            partial
                .assign(j, pattern.offsets()[j])
                .expect("a valid pattern assigns consistently");
        }
        partial
    }

    pub fn order(&self) -> u32 {
        2 * self.half_order
    }

    pub fn half_order(&self) -> u32 {
        self.half_order
    }

    pub fn symmetry_factor(&self) -> u32 {
        self.symmetry_factor
    }

    /// One entry per position; `0` where unassigned.
    pub fn raw_offsets(&self) -> &[u32] {
        &self.offsets
    }

    /// Lowest unassigned position, the next branching point.
    pub fn frontier(&self) -> Option<usize> {
        self.offsets.iter().position(|&d| d == 0)
    }

    pub fn is_complete(&self) -> bool {
        self.frontier().is_none()
    }

    /// Position whose chords are the far ends of the chords at `position`
    /// when it holds `offset`.
    pub fn partner(&self, position: usize, offset: u32) -> usize {
        (position + offset as usize) % self.offsets.len()
    }

    /// Assigns `offset` (any integer, reduced mod `2m`) at `position` and
    /// its negation at the partner position. Returns the partner.
    pub fn assign(&mut self, position: usize, offset: u32) -> Result<usize, PatternError> {
        let n = self.order();
        let d = offset % n;
        if d == 0 || d == 1 || d == n - 1 {
            return Err(PatternError::DegenerateChord {
                position: position + 1,
                offset: d,
            });
        }
        if d % 2 == 0 {
            return Err(PatternError::Parity {
                position: position + 1,
                offset: d,
            });
        }
        let t = self.partner(position, d);
        if self.offsets[position] != 0 || self.offsets[t] != 0 {
            return Err(PatternError::Matching {
                position: position + 1,
                partner: t + 1,
                expected: n - d,
                found: self.offsets[t],
            });
        }
        self.offsets[position] = d;
        self.offsets[t] = n - d;
        Ok(t)
    }

    /// Clears `position` and its partner.
    pub fn unassign(&mut self, position: usize) {
        let d = self.offsets[position];
        if d != 0 {
            let t = self.partner(position, d);
            self.offsets[position] = 0;
            self.offsets[t] = 0;
        }
    }

    pub fn to_pattern(&self) -> Option<OffsetPattern> {
        if !self.is_complete() {
            return None;
        }
        OffsetPattern::from_residues(self.half_order, self.symmetry_factor, self.offsets.clone()).ok()
    }
}
