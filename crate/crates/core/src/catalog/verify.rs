//! Independent witness checker. Uses only pattern validation, explicit
//! expansion and the reference girth oracle; nothing from the search path.

use std::collections::BTreeSet;
use std::fmt;

use super::CatalogEntry;
use crate::girth::girth_oracle;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
    pub measured_girth: Option<u32>,
    pub derived_factors: Option<BTreeSet<u32>>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// First failing check, if any.
    pub fn failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }

    fn push(&mut self, name: &'static str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name,
            passed,
            detail: detail.into(),
        });
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.failure(), self.measured_girth) {
            (None, Some(g)) => writeln!(f, "PASS girth={g}")?,
            (None, None) => writeln!(f, "PASS")?,
            (Some(c), _) => writeln!(f, "FAIL {}: {}", c.name, c.detail)?,
        }
        for c in &self.checks {
            writeln!(f, "  [{}] {}: {}", if c.passed { "ok" } else { "FAIL" }, c.name, c.detail)?;
        }
        Ok(())
    }
}

/// Orders above this are refused rather than expanded.
pub const MAX_VERIFIABLE_ORDER: u32 = 1 << 20;

pub fn verify_witness(entry: &CatalogEntry) -> VerificationReport {
    let mut report = VerificationReport {
        checks: Vec::new(),
        measured_girth: None,
        derived_factors: None,
    };
    if entry.order > MAX_VERIFIABLE_ORDER {
        report.push("pattern", false, format!("order {} exceeds {MAX_VERIFIABLE_ORDER}", entry.order));
        return report;
    }
    let pattern = match entry.pattern() {
        Ok(p) => {
            report.push("pattern", true, format!("{} offsets valid for n={}", p.offsets().len(), p.order()));
            p
        }
        Err(e) => {
            report.push("pattern", false, e.to_string());
            return report;
        }
    };

    let graph = pattern.expand();
    let shape_ok = graph.is_simple_cubic()
        && graph.is_bipartite_by_parity()
        && graph.contains_labeled_cycle()
        && graph.edge_count() == 3 * graph.order() / 2;
    report.push(
        "graph",
        shape_ok,
        format!("{} vertices, {} edges, cubic bipartite Hamiltonian", graph.order(), graph.edge_count()),
    );

    let measured = girth_oracle(&graph, pattern.order())
        .exact()
        .expect("girth never exceeds the order of a Hamiltonian graph");
    report.measured_girth = Some(measured);
    if measured >= entry.girth {
        report.push("girth", true, format!("measured {measured} >= claimed {}", entry.girth));
    } else {
        report.push("girth", false, format!("girth {measured} < {}", entry.girth));
    }

    let factors = pattern.derived_symmetry_factors();
    let listed = factors.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
    report.push(
        "symmetry",
        factors.contains(&entry.symmetry_factor),
        format!("claimed b={} among derived {{{listed}}}", entry.symmetry_factor),
    );
    report.derived_factors = Some(factors);
    report
}
