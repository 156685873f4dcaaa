use std::fmt::Write as _;

use super::certfile::{write_body, CertBuilder};
use super::{join, parse_int, parse_ints, CatalogError, Lines};
use crate::girth::girth_exact;
use crate::pattern::OffsetPattern;
use crate::search::{PartialAssignment, PendingRange, ResumeState, SearchMode, ShardRange, Witness};

const MAGIC: &str = "HBG-RESUME 1";

/// ```text
/// HBG-RESUME 1
/// g 14
/// b 7
/// mode prove
/// orders 266 280
/// reduction off
/// ...            (progress counts for the first order, as in certificates)
/// witness 5 9    (canonical offsets of witnesses found so far)
/// shard 3 41
/// shard 77 263 at 77 19 5
/// ```
///
/// A `shard` line may end in `at` and a cursor: the values chosen at each
/// branching decision down to the first node not yet generated.
pub fn write_resume(state: &ResumeState) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{MAGIC}");
    let _ = writeln!(out, "g {}", state.girth);
    let _ = writeln!(out, "b {}", state.symmetry_factor);
    let _ = writeln!(out, "mode {}", state.mode);
    let _ = writeln!(out, "orders {}", join(&state.orders));
    write_body(&mut out, &state.progress);
    for w in &state.witnesses {
        let _ = writeln!(out, "witness {}", join(w.pattern.offsets()));
    }
    for r in &state.pending {
        let _ = writeln!(out, "shard {r}");
    }
    out
}

pub fn parse_resume(text: &str) -> Result<ResumeState, CatalogError> {
    let mut lines = Lines::open(text, MAGIC)?;
    let (mut g, mut b, mut mode, mut orders) = (None, None, None, None);
    let mut witnesses: Vec<(usize, Vec<u32>)> = Vec::new();
    let mut pending = Vec::new();
    let mut builder = CertBuilder::default();
    while let Some((line, key, value)) = lines.next_pair() {
        let dup = match key {
            "g" => g.replace(parse_int::<u32>(line, key, value)?).is_some(),
            "b" => b.replace(parse_int::<u32>(line, key, value)?).is_some(),
            "mode" => mode
                .replace(value.parse::<SearchMode>().map_err(|e| CatalogError::parse(line, e))?)
                .is_some(),
            "orders" => orders.replace(parse_ints::<u32>(line, key, value)?).is_some(),
            "witness" => {
                witnesses.push((line, parse_ints(line, key, value)?));
                false
            }
            "shard" => {
                let (bounds, cursor) = match value.split_once(" at ") {
                    Some((bounds, cursor)) => (bounds, parse_ints::<u32>(line, key, cursor)?),
                    None => (value, Vec::new()),
                };
                let v: Vec<u32> = parse_ints(line, key, bounds)?;
                let [lo, hi] = v[..] else {
                    return Err(CatalogError::parse(line, "`shard` expects `lo hi [at cursor...]`"));
                };
                if lo % 2 == 0 || hi % 2 == 0 || lo > hi {
                    return Err(CatalogError::parse(line, "shard bounds must be odd with lo <= hi"));
                }
                if cursor.first().is_some_and(|&c| c != lo) {
                    return Err(CatalogError::parse(line, "cursor must start at the range's first value"));
                }
                pending.push((line, PendingRange { range: ShardRange { lo, hi }, cursor }));
                false
            }
            _ => {
                if !builder.accept(line, key, value)? {
                    return Err(CatalogError::parse(line, format!("unknown key `{key}`")));
                }
                false
            }
        };
        if dup {
            return Err(CatalogError::parse(line, format!("duplicate key `{key}`")));
        }
    }
    let missing = |k: &str| CatalogError::parse(0, format!("missing key `{k}`"));
    let girth = g.ok_or_else(|| missing("g"))?;
    let symmetry_factor = b.ok_or_else(|| missing("b"))?;
    let orders = orders.ok_or_else(|| missing("orders"))?;
    let Some(&order) = orders.first() else {
        return Err(CatalogError::parse(0, "`orders` is empty"));
    };
    if order % 2 != 0 {
        return Err(CatalogError::parse(0, format!("order {order} is odd")));
    }
    builder.set_instance(girth, symmetry_factor, order);
    let progress = builder.finish()?;
    let full = ShardRange::full(order);
    for (line, p) in &pending {
        if p.range.lo < full.lo || p.range.hi > full.hi {
            return Err(CatalogError::parse(*line, format!("shard outside {}..={}", full.lo, full.hi)));
        }
        check_cursor(order, symmetry_factor, &p.cursor).map_err(|msg| CatalogError::parse(*line, msg))?;
    }
    let pending = pending.into_iter().map(|(_, p)| p).collect();
    let witnesses = witnesses
        .into_iter()
        .map(|(line, offsets)| {
            let pattern = OffsetPattern::from_residues(order / 2, symmetry_factor, offsets)
                .map_err(|e| CatalogError::parse(line, e.to_string()))?;
            let measured_girth = girth_exact(&pattern);
            Ok(Witness { pattern, measured_girth })
        })
        .collect::<Result<Vec<_>, CatalogError>>()?;
    Ok(ResumeState {
        girth,
        symmetry_factor,
        mode: mode.ok_or_else(|| missing("mode"))?,
        symmetry_reduction: progress.symmetry_reduction,
        orders,
        pending,
        progress,
        witnesses,
    })
}

/// A cursor must describe a reachable node: every value but the last is a
/// consistent assignment at the next free position, and the last is a
/// value the walk could try there.
fn check_cursor(order: u32, b: u32, cursor: &[u32]) -> Result<(), String> {
    let Some((_, path)) = cursor.split_last() else {
        return Ok(());
    };
    if cursor.len() > b as usize {
        return Err(format!("cursor has {} values but a pattern has only {b} decisions", cursor.len()));
    }
    if cursor.iter().any(|&v| v % 2 == 0 || v < 3 || v > order - 3) {
        return Err(format!("cursor values must be odd and in 3..={}", order - 3));
    }
    let mut partial = PartialAssignment::new(order / 2, b).map_err(|e| e.to_string())?;
    for &v in path {
        let j = partial.frontier().ok_or("cursor runs past a complete pattern")?;
        partial.assign(j, v).map_err(|e| format!("cursor is not a consistent path: {e}"))?;
    }
    Ok(())
}
