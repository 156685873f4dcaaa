//! Circular-layout SVG drawing of a witness: vertices on a circle in label
//! order, cycle edges between neighbours, chords as straight segments
//! colored by the offset-position orbit they belong to.

use std::f64::consts::PI;
use std::fmt::Write as _;

use hbg::catalog::{verify_witness, CatalogEntry};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq)]
pub struct RenderStyle {
    /// Radius of the vertex circle.
    pub radius: f64,
    /// Radius of each vertex glyph.
    pub vertex_size: f64,
    pub cycle_stroke: f64,
    pub chord_stroke: f64,
    /// One color per chord orbit, reused cyclically when there are more
    /// orbits than colors.
    pub orbit_colors: Vec<String>,
}

impl Default for RenderStyle {
    fn default() -> Self {
        Self {
            radius: 300.0,
            vertex_size: 4.0,
            cycle_stroke: 1.5,
            chord_stroke: 1.0,
            orbit_colors: [
                "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf",
                "#bcbd22", "#7f7f7f",
            ]
            .into_iter()
            .map(String::from)
            .collect(),
        }
    }
}

#[derive(Debug, Error)]
pub enum RenderError {
    #[error("refusing to render an unverified witness: {0}")]
    Unverified(String),
    #[error("style has no orbit colors")]
    NoColors,
}

pub fn render(entry: &CatalogEntry, style: &RenderStyle) -> Result<String, RenderError> {
    let report = verify_witness(entry);
    if let Some(c) = report.failure() {
        return Err(RenderError::Unverified(format!("{}: {}", c.name, c.detail)));
    }
    if style.orbit_colors.is_empty() {
        return Err(RenderError::NoColors);
    }
    let pattern = entry.pattern().map_err(|e| RenderError::Unverified(e.to_string()))?;
    let n = pattern.order();
    let period = pattern.offsets().len() as u32;

    let margin = style.vertex_size * 2.0 + 10.0;
    let size = 2.0 * (style.radius + margin);
    let c = size / 2.0;
    let at = |v: u32| {
        let a = 2.0 * PI * f64::from(v) / f64::from(n) - PI / 2.0;
        (c + style.radius * a.cos(), c + style.radius * a.sin())
    };

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8" standalone="no"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size:.0}" height="{size:.0}" viewBox="0 0 {size:.0} {size:.0}">"#
    );
    let _ = writeln!(
        out,
        "<title>n={} b={} offsets {}</title>",
        n,
        pattern.symmetry_factor(),
        pattern.offsets().iter().map(u32::to_string).collect::<Vec<_>>().join(" ")
    );

    let _ = writeln!(out, r##"<g stroke="#000000" stroke-width="{}">"##, style.cycle_stroke);
    for v in 0..n {
        let (x1, y1) = at(v);
        let (x2, y2) = at((v + 1) % n);
        let _ = writeln!(out, r#"<line class="cycle" x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}"/>"#);
    }
    let _ = writeln!(out, "</g>");

    // Each chord is drawn once, from its lower endpoint. Its orbit is the
    // smaller of the two offset positions it joins.
    let _ = writeln!(out, r#"<g stroke-width="{}">"#, style.chord_stroke);
    for u in 0..n {
        let w = pattern.chord(u);
        if w < u {
            continue;
        }
        let orbit = (u % period).min(w % period);
        let color = &style.orbit_colors[orbit as usize % style.orbit_colors.len()];
        let (x1, y1) = at(u);
        let (x2, y2) = at(w);
        let _ = writeln!(
            out,
            r#"<line class="chord orbit-{orbit}" stroke="{color}" x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}"/>"#
        );
    }
    let _ = writeln!(out, "</g>");

    let _ = writeln!(out, r##"<g fill="#ffffff" stroke="#000000" stroke-width="1">"##);
    for v in 0..n {
        let (x, y) = at(v);
        let _ = writeln!(out, r#"<circle class="vertex" cx="{x:.3}" cy="{y:.3}" r="{}"/>"#, style.vertex_size);
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(out, "</svg>");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn entry(g: u32, n: u32, b: u32, offsets: &[i64]) -> CatalogEntry {
        CatalogEntry {
            girth: g,
            order: n,
            symmetry_factor: b,
            offsets: offsets.to_vec(),
            note: None,
        }
    }

    fn count(svg: &str, needle: &str) -> usize {
        svg.matches(needle).count()
    }

    #[test]
    fn k33_element_counts() {
        let svg = render(&entry(4, 6, 1, &[3, 3]), &RenderStyle::default()).unwrap();
        assert_eq!(count(&svg, "<circle"), 6);
        assert_eq!(count(&svg, r#"class="cycle""#), 6);
        assert_eq!(count(&svg, r#"class="chord"#), 3);
    }

    #[test]
    fn heawood_counts_and_single_orbit() {
        let svg = render(&entry(6, 14, 1, &[5, 9]), &RenderStyle::default()).unwrap();
        assert_eq!(count(&svg, "<circle"), 14);
        assert_eq!(count(&svg, r#"class="cycle""#) + count(&svg, r#"class="chord"#), 21);
        // positions 0 and 1 are partners, so every chord is in orbit 0
        assert_eq!(count(&svg, "orbit-0"), 7);
    }

    #[test]
    fn orbits_share_colors() {
        let svg = render(&entry(8, 30, 3, &[7, 23, 9, 13, 17, 21]), &RenderStyle::default()).unwrap();
        for line in svg.lines().filter(|l| l.contains("orbit-")) {
            let orbit: usize = line.split("orbit-").nth(1).unwrap().split('"').next().unwrap().parse().unwrap();
            assert!(line.contains(&RenderStyle::default().orbit_colors[orbit]));
        }
        assert_eq!(count(&svg, r#"class="chord"#), 15);
    }

    #[test]
    fn output_is_deterministic() {
        let e = entry(6, 14, 1, &[5, 9]);
        assert_eq!(render(&e, &RenderStyle::default()).unwrap(), render(&e, &RenderStyle::default()).unwrap());
    }

    #[test]
    fn refuses_unverified_entries() {
        assert!(matches!(
            render(&entry(8, 14, 1, &[5, 9]), &RenderStyle::default()),
            Err(RenderError::Unverified(_))
        ));
        let style = RenderStyle {
            orbit_colors: Vec::new(),
            ..RenderStyle::default()
        };
        assert!(matches!(render(&entry(6, 14, 1, &[5, 9]), &style), Err(RenderError::NoColors)));
    }
}
