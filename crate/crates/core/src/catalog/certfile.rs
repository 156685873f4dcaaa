use std::fmt::Write as _;
use std::time::Duration;

use super::{join, parse_bool, parse_int, parse_ints, CatalogError, Lines};
use crate::search::{ExhaustionCertificate, SearchCounts, ShardRange};

const MAGIC: &str = "HBG-CERT 1";

/// Serializes a certificate. Wall time is left out so that repeated runs
/// produce identical files.
pub fn write_certificate(cert: &ExhaustionCertificate) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{MAGIC}");
    let _ = writeln!(out, "g {}", cert.girth);
    let _ = writeln!(out, "b {}", cert.symmetry_factor);
    let _ = writeln!(out, "n {}", cert.order);
    write_body(&mut out, cert);
    out
}

/// Everything after the instance identification; shared with resume files.
pub(super) fn write_body(out: &mut String, cert: &ExhaustionCertificate) {
    let _ = writeln!(out, "reduction {}", if cert.symmetry_reduction { "on" } else { "off" });
    let _ = writeln!(out, "positions {}", cert.positions);
    let _ = writeln!(out, "values {}", cert.values_per_position);
    let _ = writeln!(out, "root {}", if cert.root_accepted { "accepted" } else { "rejected" });
    for r in &cert.covered {
        let _ = writeln!(out, "covered {} {}", r.lo, r.hi);
    }
    let c = &cert.counts;
    let _ = writeln!(out, "nodes {}", join(&c.nodes));
    let _ = writeln!(out, "interior {}", join(&c.interior));
    let _ = writeln!(out, "rejected_matching {}", c.rejected_matching);
    let _ = writeln!(out, "rejected_symmetry {}", c.rejected_symmetry);
    let _ = writeln!(out, "rejected_girth {}", c.rejected_girth);
    let _ = writeln!(out, "leaves {}", c.leaves);
    let _ = writeln!(out, "engine {}", cert.engine);
    let _ = writeln!(out, "complete {}", cert.complete);
}

/// Accumulates certificate keys; other formats feed it the lines they do
/// not own.
#[derive(Default)]
pub(super) struct CertBuilder {
    girth: Option<u32>,
    b: Option<u32>,
    order: Option<u32>,
    reduction: Option<bool>,
    positions: Option<u32>,
    values: Option<u32>,
    root: Option<bool>,
    covered: Vec<ShardRange>,
    nodes: Option<Vec<u64>>,
    interior: Option<Vec<u64>>,
    rejected_matching: Option<u64>,
    rejected_symmetry: Option<u64>,
    rejected_girth: Option<u64>,
    leaves: Option<u64>,
    engine: Option<String>,
    complete: Option<bool>,
}

fn set<T>(slot: &mut Option<T>, value: T, line: usize, key: &str) -> Result<(), CatalogError> {
    if slot.replace(value).is_some() {
        return Err(CatalogError::parse(line, format!("duplicate key `{key}`")));
    }
    Ok(())
}

impl CertBuilder {
    pub(super) fn set_instance(&mut self, girth: u32, b: u32, order: u32) {
        self.girth = Some(girth);
        self.b = Some(b);
        self.order = Some(order);
    }

    /// Returns `Ok(false)` for keys that are not certificate keys.
    pub(super) fn accept(&mut self, line: usize, key: &str, value: &str) -> Result<bool, CatalogError> {
        match key {
            "g" => set(&mut self.girth, parse_int(line, key, value)?, line, key)?,
            "b" => set(&mut self.b, parse_int(line, key, value)?, line, key)?,
            "n" => set(&mut self.order, parse_int(line, key, value)?, line, key)?,
            "reduction" => set(&mut self.reduction, parse_bool(line, key, value, "on", "off")?, line, key)?,
            "positions" => set(&mut self.positions, parse_int(line, key, value)?, line, key)?,
            "values" => set(&mut self.values, parse_int(line, key, value)?, line, key)?,
            "root" => set(&mut self.root, parse_bool(line, key, value, "accepted", "rejected")?, line, key)?,
            "covered" => {
                let v: Vec<u32> = parse_ints(line, key, value)?;
                let [lo, hi] = v[..] else {
                    return Err(CatalogError::parse(line, "`covered` expects `lo hi`"));
                };
                self.covered.push(ShardRange { lo, hi });
            }
            "nodes" => set(&mut self.nodes, parse_ints(line, key, value)?, line, key)?,
            "interior" => set(&mut self.interior, parse_ints(line, key, value)?, line, key)?,
            "rejected_matching" => set(&mut self.rejected_matching, parse_int(line, key, value)?, line, key)?,
            "rejected_symmetry" => set(&mut self.rejected_symmetry, parse_int(line, key, value)?, line, key)?,
            "rejected_girth" => set(&mut self.rejected_girth, parse_int(line, key, value)?, line, key)?,
            "leaves" => set(&mut self.leaves, parse_int(line, key, value)?, line, key)?,
            "engine" => set(&mut self.engine, value.to_string(), line, key)?,
            "complete" => set(&mut self.complete, parse_bool(line, key, value, "true", "false")?, line, key)?,
            _ => return Ok(false),
        }
        Ok(true)
    }

    pub(super) fn finish(self) -> Result<ExhaustionCertificate, CatalogError> {
        fn req<T>(v: Option<T>, key: &str) -> Result<T, CatalogError> {
            v.ok_or_else(|| CatalogError::parse(0, format!("missing key `{key}`")))
        }
        Ok(ExhaustionCertificate {
            girth: req(self.girth, "g")?,
            symmetry_factor: req(self.b, "b")?,
            order: req(self.order, "n")?,
            symmetry_reduction: req(self.reduction, "reduction")?,
            positions: req(self.positions, "positions")?,
            values_per_position: req(self.values, "values")?,
            covered: self.covered,
            root_accepted: req(self.root, "root")?,
            counts: SearchCounts {
                nodes: req(self.nodes, "nodes")?,
                interior: req(self.interior, "interior")?,
                rejected_matching: req(self.rejected_matching, "rejected_matching")?,
                rejected_symmetry: req(self.rejected_symmetry, "rejected_symmetry")?,
                rejected_girth: req(self.rejected_girth, "rejected_girth")?,
                leaves: req(self.leaves, "leaves")?,
            },
            engine: req(self.engine, "engine")?,
            complete: req(self.complete, "complete")?,
            wall_time: Duration::ZERO,
        })
    }
}

/// Parses a certificate file. Bookkeeping consistency is not checked here;
/// see [`ExhaustionCertificate::check_consistency`].
pub fn parse_certificate(text: &str) -> Result<ExhaustionCertificate, CatalogError> {
    let mut lines = Lines::open(text, MAGIC)?;
    let mut builder = CertBuilder::default();
    while let Some((line, key, value)) = lines.next_pair() {
        if !builder.accept(line, key, value)? {
            return Err(CatalogError::parse(line, format!("unknown key `{key}`")));
        }
    }
    builder.finish()
}
