//! Exhaustive enumeration of offset patterns with a girth floor.
//!
//! The walk branches on the lowest unassigned position of the period and
//! tries every odd non-degenerate residue there; each choice also fixes the
//! partner position its chords land on, so a pattern with symmetry factor
//! `b` is complete after `b` decisions. A node is cut as soon as the fixed
//! edges close a cycle shorter than the target girth.

mod certificate;
mod engine;
mod partial;
mod partition;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use thiserror::Error;

pub use certificate::{CertificateError, ExhaustionCertificate, SearchCounts, ENGINE_VERSION};
pub use partial::PartialAssignment;
pub use partition::{partition, PendingRange, ShardRange};

use crate::pattern::OffsetPattern;
use engine::{run_shard, FirstFound, ShardResult, Tracker, WalkConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SearchMode {
    FirstWitness,
    AllWitnesses,
    CountOnly,
    ProveNonexistence,
}

impl SearchMode {
    pub fn as_str(self) -> &'static str {
        match self {
            SearchMode::FirstWitness => "first",
            SearchMode::AllWitnesses => "all",
            SearchMode::CountOnly => "count",
            SearchMode::ProveNonexistence => "prove",
        }
    }
}

impl fmt::Display for SearchMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SearchMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "first" => Ok(SearchMode::FirstWitness),
            "all" => Ok(SearchMode::AllWitnesses),
            "count" => Ok(SearchMode::CountOnly),
            "prove" => Ok(SearchMode::ProveNonexistence),
            other => Err(format!("unknown search mode `{other}` (expected first, all, count or prove)")),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    pub max_wall: Option<Duration>,
}

/// One sub-problem: patterns of girth at least `girth` and symmetry factor
/// `symmetry_factor`, over a list of orders.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchSpec {
    pub girth: u32,
    pub symmetry_factor: u32,
    pub orders: Vec<u32>,
    pub mode: SearchMode,
    pub budget: Budget,
    /// Walk only orbit representatives under shifts and reflection.
    pub symmetry_reduction: bool,
    /// Number of disjoint subtrees (and worker threads) per order.
    pub shards: usize,
}

impl SearchSpec {
    pub fn new(girth: u32, symmetry_factor: u32, orders: Vec<u32>, mode: SearchMode) -> Result<Self, SearchError> {
        if girth < 4 || girth % 2 != 0 {
            return Err(SearchError::InvalidSpec(format!("girth must be even and at least 4, got {girth}")));
        }
        if symmetry_factor == 0 {
            return Err(SearchError::InvalidSpec("symmetry factor must be positive".into()));
        }
        for &n in &orders {
            if n % 2 != 0 || n < 6 {
                return Err(SearchError::InvalidSpec(format!("order {n} must be even and at least 6")));
            }
            if (n / 2) % symmetry_factor != 0 {
                return Err(SearchError::InvalidSpec(format!(
                    "symmetry factor {symmetry_factor} does not divide m = {} (order {n})",
                    n / 2
                )));
            }
        }
        if orders.windows(2).any(|w| w[0] >= w[1]) {
            return Err(SearchError::InvalidSpec("orders must be strictly ascending".into()));
        }
        Ok(Self {
            girth,
            symmetry_factor,
            orders,
            mode,
            budget: Budget::default(),
            symmetry_reduction: false,
            shards: 1,
        })
    }

    pub fn with_budget(mut self, budget: Budget) -> Self {
        self.budget = budget;
        self
    }

    pub fn with_shards(mut self, shards: usize) -> Self {
        self.shards = shards.max(1);
        self
    }

    pub fn with_symmetry_reduction(mut self, on: bool) -> Self {
        self.symmetry_reduction = on;
        self
    }

    fn walk_config(&self, order: u32) -> WalkConfig {
        WalkConfig {
            girth: self.girth,
            half_order: order / 2,
            symmetry_factor: self.symmetry_factor,
            mode: self.mode,
            symmetry_reduction: self.symmetry_reduction,
        }
    }
}

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("invalid search: {0}")]
    InvalidSpec(String),
    #[error("budget exceeded at order {}; {} first-position range(s) pending", .0.orders.first().copied().unwrap_or(0), .0.pending.len())]
    BudgetExceeded(Box<ResumeState>),
}

/// A found pattern (in canonical form) with its exactly measured girth,
/// which may exceed the target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub pattern: OffsetPattern,
    pub measured_girth: u32,
}

impl Witness {
    pub fn has_girth_surplus(&self, target: u32) -> bool {
        self.measured_girth > target
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrderResult {
    /// At least one pattern reached the girth floor. `leaves` counts
    /// labeled patterns accepted (every one in all/count modes, one in
    /// first/prove modes). A certificate of the full walk is attached in
    /// all/count modes.
    Witnesses {
        witnesses: Vec<Witness>,
        leaves: u64,
        certificate: Option<ExhaustionCertificate>,
    },
    /// The whole space was walked without an accepted leaf.
    Exhausted(ExhaustionCertificate),
    /// The budget ran out first; nothing is claimed.
    Undecided(Box<ResumeState>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderOutcome {
    pub order: u32,
    pub result: OrderResult,
}

impl OrderOutcome {
    pub fn witnesses(&self) -> &[Witness] {
        match &self.result {
            OrderResult::Witnesses { witnesses, .. } => witnesses,
            _ => &[],
        }
    }

    pub fn certificate(&self) -> Option<&ExhaustionCertificate> {
        match &self.result {
            OrderResult::Witnesses { certificate, .. } => certificate.as_ref(),
            OrderResult::Exhausted(cert) => Some(cert),
            OrderResult::Undecided(_) => None,
        }
    }

    pub fn is_exhausted(&self) -> bool {
        matches!(self.result, OrderResult::Exhausted(_))
    }

    pub fn has_witness(&self) -> bool {
        matches!(self.result, OrderResult::Witnesses { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub girth: u32,
    pub symmetry_factor: u32,
    pub orders: Vec<OrderOutcome>,
    /// Smallest order with a witness.
    pub minimal_order: Option<u32>,
}

impl SearchOutcome {
    pub fn is_undecided(&self) -> bool {
        self.orders.iter().any(|o| matches!(o.result, OrderResult::Undecided(_)))
    }

    pub fn exhausted_orders(&self) -> Vec<u32> {
        self.orders.iter().filter(|o| o.is_exhausted()).map(|o| o.order).collect()
    }
}

/// Everything needed to continue a budget-limited run: the remaining
/// orders (the first one partially walked), the first-position ranges still
/// pending for it, the counts of the finished part and any witnesses found
/// there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResumeState {
    pub girth: u32,
    pub symmetry_factor: u32,
    pub mode: SearchMode,
    pub symmetry_reduction: bool,
    pub orders: Vec<u32>,
    pub pending: Vec<PendingRange>,
    pub progress: ExhaustionCertificate,
    pub witnesses: Vec<Witness>,
}

impl ResumeState {
    /// The search this state continues, with the given budget and shards.
    pub fn to_spec(&self, budget: Budget, shards: usize) -> Result<SearchSpec, SearchError> {
        Ok(SearchSpec::new(self.girth, self.symmetry_factor, self.orders.clone(), self.mode)?
            .with_budget(budget)
            .with_shards(shards)
            .with_symmetry_reduction(self.symmetry_reduction))
    }
}

/// Carry-over for a partially walked order.
struct Carry {
    pending: Vec<PendingRange>,
    progress: ExhaustionCertificate,
    witnesses: Vec<Witness>,
}

/// Walks one order of `spec`.
pub fn enumerate(spec: &SearchSpec, order: u32) -> Result<OrderOutcome, SearchError> {
    let single = SearchSpec {
        orders: vec![order],
        ..spec.clone()
    };
    SearchSpec::new(single.girth, single.symmetry_factor, single.orders.clone(), single.mode)?;
    let tracker = tracker_for(&spec.budget);
    run_order(&single, order, None, &tracker)
}

/// Walks the orders of `spec` in ascending order. In first-witness mode it
/// stops at the first order with a witness. A budget breach marks the
/// current order undecided and ends the run.
pub fn min_order(spec: &SearchSpec) -> SearchOutcome {
    drive(spec, None)
}

/// Continues a run from a saved state.
pub fn resume(state: &ResumeState, budget: Budget, shards: usize) -> Result<SearchOutcome, SearchError> {
    let spec = state.to_spec(budget, shards)?;
    let carry = Carry {
        pending: state.pending.clone(),
        progress: state.progress.clone(),
        witnesses: state.witnesses.clone(),
    };
    Ok(drive(&spec, Some(carry)))
}

fn tracker_for(budget: &Budget) -> Tracker {
    Tracker::new(budget.max_nodes, budget.max_wall.map(|d| Instant::now() + d))
}

fn drive(spec: &SearchSpec, mut carry: Option<Carry>) -> SearchOutcome {
    let tracker = tracker_for(&spec.budget);
    let mut outcome = SearchOutcome {
        girth: spec.girth,
        symmetry_factor: spec.symmetry_factor,
        orders: Vec::new(),
        minimal_order: None,
    };
    for (i, &order) in spec.orders.iter().enumerate() {
        match run_order(spec, order, carry.take(), &tracker) {
            Ok(result) => {
                let found = result.has_witness();
                if found && outcome.minimal_order.is_none() {
                    outcome.minimal_order = Some(order);
                }
                outcome.orders.push(result);
                if found && spec.mode == SearchMode::FirstWitness {
                    break;
                }
            }
            Err(SearchError::BudgetExceeded(mut state)) => {
                state.orders = spec.orders[i..].to_vec();
                outcome.orders.push(OrderOutcome {
                    order,
                    result: OrderResult::Undecided(state),
                });
                break;
            }
            Err(SearchError::InvalidSpec(msg)) => unreachable!("spec validated on construction: {msg}"),
        }
    }
    outcome
}

fn empty_certificate(spec: &SearchSpec, order: u32, root_accepted: bool) -> ExhaustionCertificate {
    let b = spec.symmetry_factor;
    ExhaustionCertificate {
        girth: spec.girth,
        symmetry_factor: b,
        order,
        symmetry_reduction: spec.symmetry_reduction,
        positions: 2 * b,
        values_per_position: ShardRange::full(order).len(),
        covered: Vec::new(),
        root_accepted,
        counts: SearchCounts::with_depth(b as usize),
        engine: ENGINE_VERSION.to_string(),
        complete: false,
        wall_time: Duration::ZERO,
    }
}

fn run_order(
    spec: &SearchSpec,
    order: u32,
    carry: Option<Carry>,
    tracker: &Tracker,
) -> Result<OrderOutcome, SearchError> {
    let start = Instant::now();
    let cfg = spec.walk_config(order);

    // The bare Hamiltonian cycle is itself a cycle of length `order`.
    let root_accepted = order >= spec.girth;
    if !root_accepted {
        let mut cert = empty_certificate(spec, order, false);
        cert.covered = vec![ShardRange::full(order)];
        cert.complete = true;
        cert.wall_time = start.elapsed();
        return Ok(OrderOutcome {
            order,
            result: OrderResult::Exhausted(cert),
        });
    }

    let (ranges, progress, mut carried) = match carry {
        Some(c) => (c.pending, Some(c.progress), c.witnesses),
        None => (
            partition(order, spec.shards).into_iter().map(PendingRange::fresh).collect(),
            None,
            Vec::new(),
        ),
    };

    let first_found = FirstFound::new();
    let work = |(i, range): (usize, &PendingRange)| run_shard(cfg, range, i, tracker, &first_found);
    let results: Vec<ShardResult> = if spec.shards <= 1 || ranges.len() <= 1 {
        ranges.iter().enumerate().map(work).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(spec.shards)
            .build()
            .expect("worker pool");
        pool.install(|| ranges.par_iter().enumerate().map(work).collect())
    };

    let stops_at_leaf = matches!(spec.mode, SearchMode::FirstWitness | SearchMode::ProveNonexistence);
    if stops_at_leaf {
        if let Some(c) = carried.first() {
            return Ok(found(order, vec![c.clone()], 1, None));
        }
        if let Some(winner) = results.iter().find(|r| r.stopped_at_leaf) {
            let witnesses = engine::into_witnesses(winner.witnesses.clone());
            return Ok(found(order, witnesses, 1, None));
        }
    }

    let mut parts = Vec::with_capacity(results.len() + 1);
    if let Some(p) = progress {
        parts.push(p);
    }
    let mut pending = Vec::new();
    let mut witnesses: BTreeMap<OffsetPattern, u32> = carried
        .drain(..)
        .map(|w| (w.pattern, w.measured_girth))
        .collect();
    for r in results {
        let mut cert = empty_certificate(spec, order, true);
        cert.counts = r.counts;
        cert.covered = r.covered;
        parts.push(cert);
        pending.extend(r.pending);
        witnesses.extend(r.witnesses);
    }
    let mut cert = ExhaustionCertificate::merge(&parts).expect("parts share one instance");
    cert.wall_time = start.elapsed();
    let witnesses = engine::into_witnesses(witnesses);

    if !pending.is_empty() {
        cert.complete = false;
        return Err(SearchError::BudgetExceeded(Box::new(ResumeState {
            girth: spec.girth,
            symmetry_factor: spec.symmetry_factor,
            mode: spec.mode,
            symmetry_reduction: spec.symmetry_reduction,
            orders: vec![order],
            pending: {
                pending.sort();
                pending
            },
            progress: cert,
            witnesses,
        })));
    }
    debug_assert_eq!(cert.check_consistency(), Ok(()));
    if cert.counts.leaves == 0 {
        return Ok(OrderOutcome {
            order,
            result: OrderResult::Exhausted(cert),
        });
    }
    let leaves = cert.counts.leaves;
    Ok(found(order, witnesses, leaves, Some(cert)))
}

fn found(order: u32, witnesses: Vec<Witness>, leaves: u64, certificate: Option<ExhaustionCertificate>) -> OrderOutcome {
    OrderOutcome {
        order,
        result: OrderResult::Witnesses {
            witnesses,
            leaves,
            certificate,
        },
    }
}
