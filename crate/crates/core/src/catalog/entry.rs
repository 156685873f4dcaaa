use std::fmt::Write as _;

use super::{join, parse_int, parse_ints, CatalogError, Lines};
use crate::pattern::{OffsetPattern, PatternError};
use crate::search::Witness;

const MAGIC: &str = "HBG 1";

/// A witness as stored on disk.
///
/// ```text
/// HBG 1
/// g 6
/// n 14
/// b 1
/// offsets 5 9
/// note heawood
/// ```
///
/// Offsets are kept exactly as read so hostile files can be reported on;
/// [`CatalogEntry::pattern`] validates them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub girth: u32,
    pub order: u32,
    pub symmetry_factor: u32,
    pub offsets: Vec<i64>,
    pub note: Option<String>,
}

impl CatalogEntry {
    pub fn from_pattern(girth: u32, pattern: &OffsetPattern, note: Option<String>) -> Self {
        Self {
            girth,
            order: pattern.order(),
            symmetry_factor: pattern.symmetry_factor(),
            offsets: pattern.offsets().iter().map(|&d| i64::from(d)).collect(),
            note,
        }
    }

    pub fn from_witness(girth: u32, witness: &Witness, note: Option<String>) -> Self {
        Self::from_pattern(girth, &witness.pattern, note)
    }

    /// Validates the stored offsets as a pattern.
    pub fn pattern(&self) -> Result<OffsetPattern, PatternError> {
        if self.order % 2 != 0 {
            return Err(PatternError::OddOrder {
                order: u64::from(self.order),
            });
        }
        OffsetPattern::new(self.order / 2, self.symmetry_factor, &self.offsets)
    }

    pub fn parse(text: &str) -> Result<Self, CatalogError> {
        let mut lines = Lines::open(text, MAGIC)?;
        let (mut g, mut n, mut b, mut offsets, mut note) = (None, None, None, None, None);
        while let Some((line, key, value)) = lines.next_pair() {
            let duplicate = match key {
                "g" => g.replace(parse_int::<u32>(line, key, value)?).is_some(),
                "n" => n.replace(parse_int::<u32>(line, key, value)?).is_some(),
                "b" => b.replace(parse_int::<u32>(line, key, value)?).is_some(),
                "offsets" => offsets.replace(parse_ints::<i64>(line, key, value)?).is_some(),
                "note" => note.replace(value.to_string()).is_some(),
                other => return Err(CatalogError::parse(line, format!("unknown key `{other}`"))),
            };
            if duplicate {
                return Err(CatalogError::parse(line, format!("duplicate key `{key}`")));
            }
        }
        let missing = |k: &str| CatalogError::parse(0, format!("missing key `{k}`"));
        Ok(Self {
            girth: g.ok_or_else(|| missing("g"))?,
            order: n.ok_or_else(|| missing("n"))?,
            symmetry_factor: b.ok_or_else(|| missing("b"))?,
            offsets: offsets.ok_or_else(|| missing("offsets"))?,
            note,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{MAGIC}");
        let _ = writeln!(out, "g {}", self.girth);
        let _ = writeln!(out, "n {}", self.order);
        let _ = writeln!(out, "b {}", self.symmetry_factor);
        let _ = writeln!(out, "offsets {}", join(&self.offsets));
        if let Some(note) = &self.note {
            let _ = writeln!(out, "note {note}");
        }
        out
    }

    /// File stem used by the search command: `g6-n14-b1-0`.
    pub fn file_stem(&self, index: usize) -> String {
        format!("g{}-n{}-b{}-{}", self.girth, self.order, self.symmetry_factor, index)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const HEAWOOD: &str = "HBG 1\ng 6\nn 14\nb 1\noffsets 5 9\nnote heawood graph\n";

    #[test]
    fn parses_and_reserializes_byte_exact() {
        let e = CatalogEntry::parse(HEAWOOD).unwrap();
        assert_eq!(e.offsets, vec![5, 9]);
        assert_eq!(e.note.as_deref(), Some("heawood graph"));
        assert_eq!(e.to_text(), HEAWOOD);
    }

    #[test]
    fn rejects_unknown_and_duplicate_keys() {
        let err = CatalogEntry::parse("HBG 1\ng 6\ncolor red\n").unwrap_err();
        assert!(err.to_string().contains("line 3: unknown key `color`"), "{err}");
        let err = CatalogEntry::parse("HBG 1\ng 6\ng 8\n").unwrap_err();
        assert!(err.to_string().contains("duplicate"), "{err}");
    }

    #[test]
    fn rejects_bad_header_and_missing_keys() {
        assert!(CatalogEntry::parse("HBG 2\ng 6\n").is_err());
        assert!(CatalogEntry::parse("").is_err());
        let err = CatalogEntry::parse("HBG 1\ng 6\nn 14\nb 1\n").unwrap_err();
        assert!(err.to_string().contains("missing key `offsets`"));
        let err = CatalogEntry::parse("HBG 1\ng six\n").unwrap_err();
        assert!(err.to_string().contains("line 2"));
    }

    #[test]
    fn pattern_validation_is_deferred() {
        let e = CatalogEntry::parse("HBG 1\ng 6\nn 14\nb 1\noffsets 4 10\n").unwrap();
        assert!(matches!(e.pattern(), Err(PatternError::Parity { .. })));
        let e = CatalogEntry::parse("HBG 1\ng 6\nn 15\nb 1\noffsets 5 9\n").unwrap();
        assert!(e.pattern().is_err());
    }
}
