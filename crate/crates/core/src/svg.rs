//! Deterministic SVG drawings of complexes with nerve overlays.

use std::fmt::Write;

use crate::complex::SimplicialComplex;
use crate::error::Result;
use crate::geometry::{Point2, SimplePolygon};
use crate::nerve::star;

const SIZE: f64 = 600.0;
const PAD: f64 = 20.0;
const PALETTE: [&str; 8] = [
    "#e6194b", "#3cb44b", "#4363d8", "#f58231", "#911eb4", "#42d4f4", "#f032e6", "#bfef45",
];

/// What to draw on top of the triangulation.
#[derive(Debug, Clone, Default)]
pub struct Overlays<'a> {
    pub shape: Option<&'a SimplePolygon>,
    /// Nuclei whose stars are filled.
    pub nerves: Vec<usize>,
    /// Nuclei of maximal nucleus clusters, outlined in bold.
    pub highlight: Vec<usize>,
}

struct Frame {
    min_x: f64,
    max_y: f64,
    scale: f64,
}

impl Frame {
    fn new(points: impl Iterator<Item = (f64, f64)>) -> Self {
        let (mut lo, mut hi) = ((f64::INFINITY, f64::INFINITY), (f64::NEG_INFINITY, f64::NEG_INFINITY));
        for (x, y) in points {
            lo = (lo.0.min(x), lo.1.min(y));
            hi = (hi.0.max(x), hi.1.max(y));
        }
        if !lo.0.is_finite() {
            lo = (0.0, 0.0);
            hi = (1.0, 1.0);
        }
        let span = (hi.0 - lo.0).max(hi.1 - lo.1);
        let scale = if span > 0.0 { (SIZE - 2.0 * PAD) / span } else { 1.0 };
        Frame {
            min_x: lo.0,
            max_y: hi.1,
            scale,
        }
    }

    fn map(&self, p: &Point2) -> (f64, f64) {
        let (x, y) = p.to_f64();
        (PAD + (x - self.min_x) * self.scale, PAD + (self.max_y - y) * self.scale)
    }

    fn path(&self, ring: &[&Point2]) -> String {
        let mut d = String::new();
        for (i, p) in ring.iter().enumerate() {
            let (x, y) = self.map(p);
            let _ = write!(d, "{}{x:.3} {y:.3} ", if i == 0 { "M" } else { "L" });
        }
        d.push('Z');
        d
    }
}

pub fn render_svg(complex: &SimplicialComplex, overlays: &Overlays<'_>) -> Result<String> {
    let stars = overlays
        .nerves
        .iter()
        .map(|&p| star(complex, p))
        .collect::<Result<Vec<_>>>()?;
    let highlighted = overlays
        .highlight
        .iter()
        .map(|&p| star(complex, p))
        .collect::<Result<Vec<_>>>()?;

    let mut extent: Vec<(f64, f64)> = complex.vertices().iter().map(Point2::to_f64).collect();
    if let Some(shape) = overlays.shape {
        extent.extend(shape.rings().flatten().map(Point2::to_f64));
    }
    let frame = Frame::new(extent.into_iter());
    let tri = |t: usize| {
        let [a, b, c] = complex.triangle(t);
        frame.path(&[complex.vertex(a), complex.vertex(b), complex.vertex(c)])
    };

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    out.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    for (i, s) in stars.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        for &t in s.triangle_ids() {
            let _ = writeln!(
                out,
                r#"<path class="nerve" d="{}" fill="{color}" fill-opacity="0.5" stroke="none"/>"#,
                tri(t)
            );
        }
    }
    for t in 0..complex.num_triangles() {
        let _ = writeln!(
            out,
            r##"<path class="triangle" d="{}" fill="none" stroke="#555555" stroke-width="0.8"/>"##,
            tri(t)
        );
    }
    for s in &highlighted {
        for &t in s.triangle_ids() {
            let _ = writeln!(
                out,
                r##"<path class="mnc" d="{}" fill="none" stroke="#000000" stroke-width="2.5"/>"##,
                tri(t)
            );
        }
    }
    if let Some(shape) = overlays.shape {
        let d = shape
            .rings()
            .map(|r| frame.path(&r.iter().collect::<Vec<_>>()))
            .collect::<Vec<_>>()
            .join(" ");
        let _ = writeln!(
            out,
            r##"<path class="outline" d="{d}" fill="none" stroke="#1f3a93" stroke-width="2" fill-rule="evenodd"/>"##
        );
    }
    for p in complex.vertices() {
        let (x, y) = frame.map(p);
        let _ = writeln!(
            out,
            r#"<circle class="vertex" cx="{x:.3}" cy="{y:.3}" r="2" fill="black"/>"#
        );
    }
    for s in stars.iter().chain(&highlighted) {
        let (x, y) = frame.map(complex.vertex(s.nucleus()));
        let _ = writeln!(
            out,
            r#"<circle class="nucleus" cx="{x:.3}" cy="{y:.3}" r="6" fill="none" stroke="black" stroke-width="1.5"/>"#
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::fixtures;

    fn count(svg: &str, class: &str) -> usize {
        svg.matches(&format!("class=\"{class}\"")).count()
    }

    #[test]
    fn single_triangle_without_overlays() {
        let k = SimplicialComplex::new(
            vec![Point2::int(0, 0), Point2::int(1, 0), Point2::int(0, 1)],
            vec![[0, 1, 2]],
        )
        .unwrap();
        let svg = render_svg(&k, &Overlays::default()).unwrap();
        assert_eq!(svg.matches("<path").count(), 1);
        assert_eq!(count(&svg, "vertex"), 3);
        assert!(svg.starts_with("<svg"));
    }

    #[test]
    fn center_nerve_overlay() {
        let k = fixtures::hexagon_with_center();
        let svg = render_svg(
            &k,
            &Overlays {
                nerves: vec![6],
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(count(&svg, "nerve"), 6);
        assert_eq!(count(&svg, "nucleus"), 1);
        assert!(svg.contains("fill-opacity=\"0.5\""));
        assert!(svg.contains("class=\"nucleus\"") && svg.contains("r=\"6\" fill=\"none\""));
    }

    #[test]
    fn distinct_fills_and_outline() {
        let sc = fixtures::annulus_shape_complex();
        let svg = render_svg(
            sc.complex(),
            &Overlays {
                shape: Some(sc.shape()),
                nerves: vec![0, 1],
                highlight: vec![2],
            },
        )
        .unwrap();
        assert!(svg.contains(PALETTE[0]) && svg.contains(PALETTE[1]));
        assert_eq!(count(&svg, "outline"), 1);
        // Outer ring plus the hole, each closed.
        let outline = svg.lines().find(|l| l.contains("class=\"outline\"")).unwrap();
        assert_eq!(outline.matches('Z').count(), 2);
        assert!(count(&svg, "mnc") > 0);
    }

    #[test]
    fn deterministic() {
        let sc = fixtures::hexagon_shape_complex();
        let o = Overlays {
            shape: Some(sc.shape()),
            nerves: vec![6],
            highlight: vec![],
        };
        assert_eq!(
            render_svg(sc.complex(), &o).unwrap(),
            render_svg(sc.complex(), &o).unwrap()
        );
    }

    #[test]
    fn unknown_nucleus() {
        let k = fixtures::hexagon_with_center();
        let o = Overlays {
            nerves: vec![99],
            ..Default::default()
        };
        assert_eq!(render_svg(&k, &o).unwrap_err(), Error::UnknownVertex { vertex: 99 });
    }
}
