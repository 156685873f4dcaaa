//! Depth-first walker over offset assignments for one first-position range.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::time::Instant;

use super::certificate::SearchCounts;
use super::partition::{PendingRange, ShardRange};
use super::{SearchMode, Witness};
use crate::girth::{girth_exact, CycleScanner};
use crate::pattern::OffsetPattern;

const POLL_INTERVAL: u64 = 1 << 12;

/// Shared node/wall-clock budget. Charged once per generated node.
#[derive(Debug)]
pub(super) struct Tracker {
    used: AtomicU64,
    max_nodes: Option<u64>,
    deadline: Option<Instant>,
    tripped: AtomicBool,
}

impl Tracker {
    pub(super) fn new(max_nodes: Option<u64>, deadline: Option<Instant>) -> Self {
        Self {
            used: AtomicU64::new(0),
            max_nodes,
            deadline,
            tripped: AtomicBool::new(false),
        }
    }

    /// Returns false once the budget is spent.
    #[inline]
    fn charge(&self) -> bool {
        let used = self.used.fetch_add(1, Ordering::Relaxed) + 1;
        if let Some(max) = self.max_nodes {
            if used > max {
                self.tripped.store(true, Ordering::Relaxed);
                return false;
            }
        }
        if used % POLL_INTERVAL == 0 {
            if let Some(deadline) = self.deadline {
                if Instant::now() >= deadline {
                    self.tripped.store(true, Ordering::Relaxed);
                }
            }
        }
        !self.tripped.load(Ordering::Relaxed)
    }
}

/// Lowest shard index that has found a witness, for first-witness
/// cancellation. Shards above it stop; shards below it run on, so the
/// reported witness is the one a serial walk would meet first.
#[derive(Debug)]
pub(super) struct FirstFound(AtomicUsize);

impl FirstFound {
    pub(super) fn new() -> Self {
        Self(AtomicUsize::new(usize::MAX))
    }

    fn record(&self, shard: usize) {
        self.0.fetch_min(shard, Ordering::Relaxed);
    }

    fn beaten(&self, shard: usize) -> bool {
        self.0.load(Ordering::Relaxed) < shard
    }
}

#[derive(Debug, Clone, Copy)]
pub(super) struct WalkConfig {
    pub girth: u32,
    pub half_order: u32,
    pub symmetry_factor: u32,
    pub mode: SearchMode,
    pub symmetry_reduction: bool,
}

#[derive(Debug)]
pub(super) struct ShardResult {
    pub counts: SearchCounts,
    /// Values whose subtrees were fully walked.
    pub covered: Vec<ShardRange>,
    /// Work not done because the budget ran out. Counts and witnesses of a
    /// partly walked subtree are already included above.
    pub pending: Option<PendingRange>,
    /// Canonical witnesses with measured girth.
    pub witnesses: BTreeMap<OffsetPattern, u32>,
    /// Set when the walk stopped at a leaf (first-witness / prove modes).
    pub stopped_at_leaf: bool,
    pub cancelled: bool,
}

#[derive(Debug, PartialEq, Eq)]
enum Flow {
    Continue,
    Stop,
}

#[derive(Debug, PartialEq, Eq)]
enum Interrupt {
    Budget,
    Cancelled,
}

struct Walker<'a> {
    cfg: WalkConfig,
    n: u32,
    period: usize,
    levels: usize,
    offsets: Vec<u32>,
    scanner: CycleScanner,
    counts: SearchCounts,
    found: BTreeMap<OffsetPattern, u32>,
    tracker: &'a Tracker,
    first_found: &'a FirstFound,
    shard: usize,
    polled: u64,
    /// Values on the current root-to-node path.
    path: Vec<u32>,
    /// Set on a budget stop: the path to the node that was refused.
    cut: Option<Vec<u32>>,
}

impl Walker<'_> {
    fn try_child(&mut self, level: usize, j: usize, d: u32) -> Result<Flow, Interrupt> {
        if !self.tracker.charge() {
            let mut cut = self.path.clone();
            cut.push(d);
            self.cut = Some(cut);
            return Err(Interrupt::Budget);
        }
        self.polled += 1;
        if self.polled % POLL_INTERVAL == 0 && self.first_found.beaten(self.shard) {
            return Err(Interrupt::Cancelled);
        }
        self.counts.nodes[level] += 1;
        let t = (j + d as usize) % self.period;
        if self.offsets[t] != 0 {
            self.counts.rejected_matching += 1;
            return Ok(Flow::Continue);
        }
        if self.cfg.symmetry_reduction && !self.admissible(j, d) {
            self.counts.rejected_symmetry += 1;
            return Ok(Flow::Continue);
        }
        self.offsets[j] = d;
        self.offsets[t] = self.n - d;
        // Any new short cycle uses a new chord, and every new chord has an
        // endpoint in class `j`; translation by 2b moves it onto vertex `j`.
        let short = self
            .scanner
            .shortest_cycle_through(self.n, &self.offsets, j as u32, self.cfg.girth - 1)
            .is_some();
        let flow = if short {
            self.counts.rejected_girth += 1;
            Ok(Flow::Continue)
        } else if level + 1 == self.levels {
            self.counts.leaves += 1;
            Ok(self.on_leaf())
        } else {
            self.counts.interior[level] += 1;
            self.descend(level, d, &[])
        };
        self.offsets[j] = 0;
        self.offsets[t] = 0;
        flow
    }

    /// Walks the children of the node just assigned at `level` with value
    /// `d`, starting from `resume_at` if given.
    fn descend(&mut self, level: usize, d: u32, resume_at: &[u32]) -> Result<Flow, Interrupt> {
        self.path.push(d);
        let flow = self.expand(level + 1, resume_at);
        self.path.pop();
        flow
    }

    /// Re-enters an interior node counted by an earlier run and continues
    /// its walk at `rest`.
    fn reenter(&mut self, level: usize, j: usize, d: u32, rest: &[u32]) -> Result<Flow, Interrupt> {
        let t = (j + d as usize) % self.period;
        self.offsets[j] = d;
        self.offsets[t] = self.n - d;
        let flow = self.descend(level, d, rest);
        self.offsets[j] = 0;
        self.offsets[t] = 0;
        flow
    }

    /// Generates the children of the current node. With a non-empty
    /// `resume_at`, children before `resume_at[0]` are skipped as already
    /// walked; if more values follow, that child is re-entered rather than
    /// generated again.
    fn expand(&mut self, level: usize, resume_at: &[u32]) -> Result<Flow, Interrupt> {
        let j = self
            .offsets
            .iter()
            .position(|&d| d == 0)
            .expect("interior node has a free position");
        let mut d = 3;
        if let Some((&first, rest)) = resume_at.split_first() {
            d = first;
            if !rest.is_empty() {
                if self.reenter(level, j, first, rest)? == Flow::Stop {
                    return Ok(Flow::Stop);
                }
                d += 2;
            }
        }
        while d <= self.n - 3 {
            if self.try_child(level, j, d)? == Flow::Stop {
                return Ok(Flow::Stop);
            }
            d += 2;
        }
        Ok(Flow::Continue)
    }

    /// Orbit-representative filter: the lexicographically least member of a
    /// shift/reflection orbit starts with the smallest value among all
    /// offsets and their negations.
    fn admissible(&self, j: usize, d: u32) -> bool {
        if j == 0 {
            d <= self.n - d
        } else {
            let first = self.offsets[0];
            d >= first && self.n - d >= first
        }
    }

    fn on_leaf(&mut self) -> Flow {
        let pattern = OffsetPattern::from_residues(self.cfg.half_order, self.cfg.symmetry_factor, self.offsets.clone())
            .expect("search leaves satisfy every pattern invariant");
        match self.cfg.mode {
            SearchMode::CountOnly => Flow::Continue,
            SearchMode::AllWitnesses => {
                let canonical = pattern.canonical_form();
                if let std::collections::btree_map::Entry::Vacant(slot) = self.found.entry(canonical) {
                    let girth = girth_exact(slot.key());
                    slot.insert(girth);
                }
                Flow::Continue
            }
            SearchMode::FirstWitness | SearchMode::ProveNonexistence => {
                let canonical = pattern.canonical_form();
                let girth = girth_exact(&canonical);
                self.found.insert(canonical, girth);
                self.first_found.record(self.shard);
                Flow::Stop
            }
        }
    }
}

/// Walks every first-position value in `work.range`, one subtree at a time,
/// starting inside the first subtree if `work.cursor` says so.
pub(super) fn run_shard(
    cfg: WalkConfig,
    work: &PendingRange,
    shard: usize,
    tracker: &Tracker,
    first_found: &FirstFound,
) -> ShardResult {
    let levels = cfg.symmetry_factor as usize;
    let period = 2 * levels;
    let mut walker = Walker {
        cfg,
        n: 2 * cfg.half_order,
        period,
        levels,
        offsets: vec![0; period],
        scanner: CycleScanner::new(),
        counts: SearchCounts::with_depth(levels),
        found: BTreeMap::new(),
        tracker,
        first_found,
        shard,
        polled: 0,
        path: Vec::new(),
        cut: None,
    };
    let range = work.range;
    let mut result = ShardResult {
        counts: SearchCounts::with_depth(levels),
        covered: Vec::new(),
        pending: None,
        witnesses: BTreeMap::new(),
        stopped_at_leaf: false,
        cancelled: false,
    };
    for d in range.values() {
        walker.counts = SearchCounts::with_depth(levels);
        walker.offsets.iter_mut().for_each(|x| *x = 0);
        walker.found.clear();
        let step = match work.cursor.split_first() {
            Some((&first, rest)) if first == d && !rest.is_empty() => walker.reenter(0, 0, d, rest),
            _ => walker.try_child(0, 0, d),
        };
        match step {
            Ok(flow) => {
                result.counts.absorb(&walker.counts);
                result.covered.push(ShardRange { lo: d, hi: d });
                result.witnesses.append(&mut walker.found);
                if flow == Flow::Stop {
                    result.stopped_at_leaf = true;
                    break;
                }
            }
            Err(Interrupt::Budget) => {
                result.counts.absorb(&walker.counts);
                result.witnesses.append(&mut walker.found);
                let cut = walker.cut.take().expect("budget stop records its position");
                let cursor = if cut.len() > 1 { cut } else { Vec::new() };
                result.pending = Some(PendingRange {
                    range: ShardRange { lo: d, hi: range.hi },
                    cursor,
                });
                break;
            }
            Err(Interrupt::Cancelled) => {
                result.cancelled = true;
                break;
            }
        }
    }
    result.covered = ShardRange::coalesce(result.covered);
    result
}

pub(super) fn into_witnesses(found: BTreeMap<OffsetPattern, u32>) -> Vec<Witness> {
    found
        .into_iter()
        .map(|(pattern, measured_girth)| Witness { pattern, measured_girth })
        .collect()
}
