use std::collections::BTreeMap;

use super::{parse_int, CatalogError};

/// Counting lower bound on the order of a cubic graph of even girth `g`:
/// `2 (2^(g/2) - 1)`.
pub fn moore_floor(girth: u32) -> u32 {
    2 * ((1u32 << (girth / 2)) - 1)
}

/// Best known lower bound on the order of a `(3, g)` graph, per girth.
/// Girths without an override fall back to the Moore floor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LowerBoundConfig {
    overrides: BTreeMap<u32, u32>,
}

impl Default for LowerBoundConfig {
    /// Moore floors everywhere except girth 14, whose published bound is 258.
    fn default() -> Self {
        Self {
            overrides: BTreeMap::from([(14, 258)]),
        }
    }
}

impl LowerBoundConfig {
    /// Moore floors only.
    pub fn moore_only() -> Self {
        Self {
            overrides: BTreeMap::new(),
        }
    }

    pub fn bound(&self, girth: u32) -> u32 {
        self.overrides.get(&girth).copied().unwrap_or_else(|| moore_floor(girth))
    }

    pub fn set(&mut self, girth: u32, bound: u32) -> Result<(), CatalogError> {
        if girth < 4 || girth % 2 != 0 {
            return Err(CatalogError::parse(0, format!("girth {girth} must be even and at least 4")));
        }
        if bound < moore_floor(girth) {
            return Err(CatalogError::parse(
                0,
                format!("bound {bound} for girth {girth} is below the Moore floor {}", moore_floor(girth)),
            ));
        }
        self.overrides.insert(girth, bound);
        Ok(())
    }

    /// Applies `girth bound` lines on top of the defaults. Blank lines and
    /// `#` comments are ignored.
    pub fn parse_overrides(&mut self, text: &str) -> Result<(), CatalogError> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let [g, bound] = fields[..] else {
                return Err(CatalogError::parse(i + 1, "expected `girth bound`"));
            };
            let g: u32 = parse_int(i + 1, "girth", g)?;
            let bound: u32 = parse_int(i + 1, "bound", bound)?;
            self.set(g, bound).map_err(|e| match e {
                CatalogError::Parse { message, .. } => CatalogError::parse(i + 1, message),
                other => other,
            })?;
        }
        Ok(())
    }
}

/// Smallest order at least the configured bound for `girth` that is
/// divisible by `2b`.
pub fn lower_bound_order(girth: u32, symmetry_factor: u32, config: &LowerBoundConfig) -> u32 {
    let step = 2 * symmetry_factor;
    config.bound(girth).div_ceil(step) * step
}
