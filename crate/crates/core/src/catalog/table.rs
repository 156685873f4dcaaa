//! Per-symmetry-factor lower and upper bounds for one girth.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};

use super::{lower_bound_order, parse_int, parse_ints, CatalogError, LowerBoundConfig, Lines};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum EvidenceSource {
    /// Certificates and witnesses checked by this tool.
    Verified,
    /// Values taken on trust, e.g. from the literature.
    Claimed,
}

impl EvidenceSource {
    fn as_str(self) -> &'static str {
        match self {
            EvidenceSource::Verified => "verified",
            EvidenceSource::Claimed => "claimed",
        }
    }
}

/// What is known for one symmetry factor: orders proven empty and orders
/// with a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Evidence {
    pub exhausted: BTreeSet<u32>,
    pub witnesses: BTreeSet<u32>,
    pub source: EvidenceSource,
}

impl Evidence {
    pub fn verified() -> Self {
        Self {
            exhausted: BTreeSet::new(),
            witnesses: BTreeSet::new(),
            source: EvidenceSource::Verified,
        }
    }

    /// Parses a claims file:
    ///
    /// ```text
    /// HBG-CLAIMS 1
    /// g 14
    /// exhausted 4 264 272 280
    /// upper 4 440
    /// ```
    ///
    /// Returns the girth and the evidence per symmetry factor.
    pub fn parse_claims(text: &str) -> Result<(u32, BTreeMap<u32, Evidence>), CatalogError> {
        let mut lines = Lines::open(text, "HBG-CLAIMS 1")?;
        let mut girth = None;
        let mut out: BTreeMap<u32, Evidence> = BTreeMap::new();
        while let Some((line, key, value)) = lines.next_pair() {
            match key {
                "g" => {
                    if girth.replace(parse_int::<u32>(line, key, value)?).is_some() {
                        return Err(CatalogError::parse(line, "duplicate key `g`"));
                    }
                }
                "exhausted" | "upper" => {
                    let v: Vec<u32> = parse_ints(line, key, value)?;
                    let Some((&b, orders)) = v.split_first() else {
                        return Err(CatalogError::parse(line, format!("`{key}` expects `b order...`")));
                    };
                    if b == 0 || orders.iter().any(|n| n % (2 * b) != 0) {
                        return Err(CatalogError::parse(line, format!("orders must be multiples of 2b = {}", 2 * b)));
                    }
                    let e = out.entry(b).or_insert_with(|| Evidence {
                        source: EvidenceSource::Claimed,
                        ..Evidence::verified()
                    });
                    let set = if key == "exhausted" { &mut e.exhausted } else { &mut e.witnesses };
                    set.extend(orders);
                }
                other => return Err(CatalogError::parse(line, format!("unknown key `{other}`"))),
            }
        }
        let girth = girth.ok_or_else(|| CatalogError::parse(0, "missing key `g`"))?;
        Ok((girth, out))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundStatus {
    /// Every order from the lower bound on was exhausted and no witness is
    /// known.
    NotExist,
    /// Proven lower bound meets the smallest known witness.
    Resolved,
    /// Proven lower bound moved past `lb` but does not meet the upper bound.
    LowerImproved,
    /// Nothing beyond `lb`.
    Open,
}

impl BoundStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            BoundStatus::NotExist => "not-exist",
            BoundStatus::Resolved => "resolved",
            BoundStatus::LowerImproved => "lb-improved",
            BoundStatus::Open => "open",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundsRow {
    pub symmetry_factor: u32,
    /// Smallest multiple of `2b` at least the known lower bound for the girth.
    pub lb: u32,
    /// First order from `lb` upward (in steps of `2b`) not covered by an
    /// exhaustion.
    pub lower: u32,
    /// Smallest order with a witness.
    pub upper: Option<u32>,
    pub status: BoundStatus,
    pub source: Option<EvidenceSource>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundsTable {
    pub girth: u32,
    pub rows: Vec<BoundsRow>,
}

pub fn bounds_table(
    girth: u32,
    symmetry_factors: &[u32],
    config: &LowerBoundConfig,
    evidence: &BTreeMap<u32, Evidence>,
) -> BoundsTable {
    let rows = symmetry_factors
        .iter()
        .map(|&b| {
            let lb = lower_bound_order(girth, b, config);
            let e = evidence.get(&b);
            let mut lower = lb;
            if let Some(e) = e {
                while e.exhausted.contains(&lower) {
                    lower += 2 * b;
                }
            }
            let upper = e.and_then(|e| e.witnesses.iter().next().copied());
            let status = match upper {
                Some(u) if u == lower => BoundStatus::Resolved,
                None if lower > lb => BoundStatus::NotExist,
                _ if lower > lb => BoundStatus::LowerImproved,
                _ => BoundStatus::Open,
            };
            BoundsRow {
                symmetry_factor: b,
                lb,
                lower,
                upper,
                status,
                source: e.map(|e| e.source),
            }
        })
        .collect();
    BoundsTable { girth, rows }
}

impl BoundsTable {
    /// Machine-readable form, one `row` line per symmetry factor.
    pub fn to_machine_text(&self) -> String {
        let mut out = String::from("HBG-TABLE 1\n");
        let _ = writeln!(out, "g {}", self.girth);
        for r in &self.rows {
            let _ = writeln!(
                out,
                "row {} {} {} {} {} {}",
                r.symmetry_factor,
                r.lb,
                r.lower,
                r.upper.map_or("-".to_string(), |u| u.to_string()),
                r.status.as_str(),
                r.source.map_or("none", EvidenceSource::as_str),
            );
        }
        out
    }
}

impl fmt::Display for BoundsTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "girth {}", self.girth)?;
        writeln!(f, "{:>4}  {:>6}  {:>6}  {:>6}  {:<12}  source", "b", "lb", "lower", "upper", "status")?;
        for r in &self.rows {
            writeln!(
                f,
                "{:>4}  {:>6}  {:>6}  {:>6}  {:<12}  {}",
                r.symmetry_factor,
                r.lb,
                r.lower,
                r.upper.map_or("-".to_string(), |u| u.to_string()),
                r.status.as_str(),
                r.source.map_or("none", EvidenceSource::as_str),
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_evidence_gives_open_row() {
        let t = bounds_table(14, &[10], &LowerBoundConfig::default(), &BTreeMap::new());
        let r = &t.rows[0];
        assert_eq!((r.lb, r.lower, r.upper, r.status), (260, 260, None, BoundStatus::Open));
    }

    #[test]
    fn claims_reproduce_a_resolved_row() {
        let text = "HBG-CLAIMS 1\ng 14\nexhausted 4 264 272 280 288 296 304 312 320 328 336 344 352 360 368 \
                    376 384 392 400 408 416 424 432 456\nupper 4 440\n";
        let (g, ev) = Evidence::parse_claims(text).unwrap();
        let t = bounds_table(g, &[4], &LowerBoundConfig::default(), &ev);
        let r = &t.rows[0];
        assert_eq!((r.lb, r.lower, r.upper), (264, 440, Some(440)));
        assert_eq!(r.status, BoundStatus::Resolved);
        assert!(t.to_machine_text().contains("row 4 264 440 440 resolved claimed"));
    }

    #[test]
    fn claims_reject_orders_off_the_lattice() {
        assert!(Evidence::parse_claims("HBG-CLAIMS 1\ng 14\nupper 4 442\n").is_err());
    }
}
