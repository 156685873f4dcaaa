use std::fmt;

/// Inclusive range of odd offsets tried at the first branching position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ShardRange {
    pub lo: u32,
    pub hi: u32,
}

impl ShardRange {
    /// All first-position values for order `n`: odd residues `3..=n-3`.
    pub fn full(order: u32) -> Self {
        Self { lo: 3, hi: order - 3 }
    }

    /// Number of odd values in the range.
    pub fn len(&self) -> u32 {
        if self.hi < self.lo {
            0
        } else {
            (self.hi - self.lo) / 2 + 1
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn values(&self) -> impl Iterator<Item = u32> {
        (self.lo..=self.hi).step_by(2)
    }

    /// Sorts and joins ranges that abut (`next.lo == prev.hi + 2`).
    pub fn coalesce(mut ranges: Vec<ShardRange>) -> Vec<ShardRange> {
        ranges.retain(|r| !r.is_empty());
        ranges.sort();
        let mut out: Vec<ShardRange> = Vec::with_capacity(ranges.len());
        for r in ranges {
            match out.last_mut() {
                Some(last) if r.lo <= last.hi + 2 => last.hi = last.hi.max(r.hi),
                _ => out.push(r),
            }
        }
        out
    }

    /// Splits into at most `shards` contiguous, non-empty, near-equal parts.
    pub fn split(&self, shards: usize) -> Vec<ShardRange> {
        let total = self.len() as usize;
        let shards = shards.clamp(1, total.max(1));
        let mut out = Vec::with_capacity(shards);
        let mut start = 0usize;
        for i in 0..shards {
            let size = total / shards + usize::from(i < total % shards);
            if size == 0 {
                continue;
            }
            let lo = self.lo + 2 * start as u32;
            let hi = lo + 2 * (size as u32 - 1);
            out.push(ShardRange { lo, hi });
            start += size;
        }
        out
    }
}

impl fmt::Display for ShardRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.lo, self.hi)
    }
}

/// Work left for one shard after a budget stop: the first-position values
/// in `range`, where the subtree of `range.lo` may be partly walked.
///
/// A non-empty `cursor` starts with `range.lo` and lists the values chosen at
/// each branching decision down to the first node that was not generated.
/// Everything before that node in depth-first order is already counted.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PendingRange {
    pub range: ShardRange,
    pub cursor: Vec<u32>,
}

impl PendingRange {
    pub fn fresh(range: ShardRange) -> Self {
        Self {
            range,
            cursor: Vec::new(),
        }
    }
}

impl fmt::Display for PendingRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.range)?;
        if !self.cursor.is_empty() {
            write!(f, " at")?;
            for v in &self.cursor {
                write!(f, " {v}")?;
            }
        }
        Ok(())
    }
}

/// Disjoint first-position ranges covering every value for `order`.
pub fn partition(order: u32, shards: usize) -> Vec<ShardRange> {
    ShardRange::full(order).split(shards)
}
