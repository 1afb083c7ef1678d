//! Static SVG drawings of planar configurations.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::geometry::Configuration;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundingBox {
    pub x0: f64,
    pub y0: f64,
    pub x1: f64,
    pub y1: f64,
}

impl BoundingBox {
    /// Parses `x0,y0,x1,y1`.
    pub fn parse(text: &str) -> Result<BoundingBox> {
        let parts: Vec<f64> = text
            .split(',')
            .map(|s| s.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::domain(format!("bounding box: {e}")))?;
        let [x0, y0, x1, y1] = parts[..] else {
            return Err(Error::domain("bounding box needs four numbers x0,y0,x1,y1"));
        };
        if !(x0 < x1 && y0 < y1) {
            return Err(Error::domain("bounding box must have x0 < x1 and y0 < y1"));
        }
        Ok(BoundingBox { x0, y0, x1, y1 })
    }

    /// Points' extent padded by a fifth on every side.
    pub fn around(points: &[(f64, f64)]) -> BoundingBox {
        if points.is_empty() {
            return BoundingBox { x0: -1.0, y0: -1.0, x1: 1.0, y1: 1.0 };
        }
        let (mut x0, mut y0, mut x1, mut y1) = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
        for &(x, y) in points {
            x0 = x0.min(x);
            x1 = x1.max(x);
            y0 = y0.min(y);
            y1 = y1.max(y);
        }
        let pad = 0.2 * (x1 - x0).max(y1 - y0).max(1.0);
        BoundingBox { x0: x0 - pad, y0: y0 - pad, x1: x1 + pad, y1: y1 + pad }
    }
}

/// The part of `c0 + c1 x + c2 y = 0` inside the box, if any.
pub fn clip_line(c: [f64; 3], b: &BoundingBox) -> Option<((f64, f64), (f64, f64))> {
    let [c0, c1, c2] = c;
    let mut hits: Vec<(f64, f64)> = Vec::new();
    if c2 != 0.0 {
        for x in [b.x0, b.x1] {
            let y = -(c0 + c1 * x) / c2;
            if y >= b.y0 - 1e-12 && y <= b.y1 + 1e-12 {
                hits.push((x, y));
            }
        }
    }
    if c1 != 0.0 {
        for y in [b.y0, b.y1] {
            let x = -(c0 + c2 * y) / c1;
            if x >= b.x0 - 1e-12 && x <= b.x1 + 1e-12 {
                hits.push((x, y));
            }
        }
    }
    hits.sort_by(|p, q| p.0.total_cmp(&q.0).then(p.1.total_cmp(&q.1)));
    hits.dedup_by(|p, q| (p.0 - q.0).abs() < 1e-12 && (p.1 - q.1).abs() < 1e-12);
    match hits.as_slice() {
        [a, .., z] => Some((*a, *z)),
        _ => None,
    }
}

/// Dots and labels for points, clipped lines with labels and an arrowhead
/// pointing to each line's positive side.
pub fn render(c: &Configuration, bbox: Option<BoundingBox>) -> Result<String> {
    if c.dim != 2 {
        return Err(Error::domain(format!("only planar configurations render, got dimension {}", c.dim)));
    }
    let f = &c.field;
    let points: Vec<(f64, f64)> = c
        .points
        .iter()
        .map(|p| (f.to_f64(&p.coords[0]), f.to_f64(&p.coords[1])))
        .collect();
    let b = bbox.unwrap_or_else(|| BoundingBox::around(&points));
    let size = 600.0;
    let scale = size / (b.x1 - b.x0).max(b.y1 - b.y0);
    let width = (b.x1 - b.x0) * scale;
    let height = (b.y1 - b.y0) * scale;
    let tx = |x: f64| (x - b.x0) * scale;
    let ty = |y: f64| (b.y1 - y) * scale;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r##"<?xml version="1.0" encoding="UTF-8"?>
<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.1}" height="{height:.1}" viewBox="0 0 {width:.1} {height:.1}">
<defs><marker id="arrow" viewBox="0 0 10 10" refX="10" refY="5" markerWidth="6" markerHeight="6" orient="auto"><path d="M0,0 L10,5 L0,10 z" fill="#555"/></marker></defs>
<rect x="0" y="0" width="{width:.1}" height="{height:.1}" fill="white"/>"##
    );
    for (j, h) in c.hyperplanes.iter().enumerate() {
        let coeffs = [f.to_f64(&h.coeffs[0]), f.to_f64(&h.coeffs[1]), f.to_f64(&h.coeffs[2])];
        let Some((p, q)) = clip_line(coeffs, &b) else {
            continue;
        };
        let label = Configuration::hyperplane_label(j);
        let _ = writeln!(
            out,
            r##"<line id="{label}" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#1f4e9c" stroke-width="1.5"/>"##,
            tx(p.0), ty(p.1), tx(q.0), ty(q.1)
        );
        let mid = ((p.0 + q.0) / 2.0, (p.1 + q.1) / 2.0);
        let norm = (coeffs[1] * coeffs[1] + coeffs[2] * coeffs[2]).sqrt();
        let len = 24.0;
        let (dx, dy) = (coeffs[1] / norm * len, -coeffs[2] / norm * len);
        let (sx, sy) = (tx(mid.0), ty(mid.1));
        let _ = writeln!(
            out,
            r##"<line x1="{sx:.2}" y1="{sy:.2}" x2="{:.2}" y2="{:.2}" stroke="#555" marker-end="url(#arrow)"/>"##,
            sx + dx, sy + dy
        );
        let _ = writeln!(
            out,
            r##"<text x="{:.2}" y="{:.2}" font-size="13" fill="#1f4e9c">{label}</text>"##,
            tx(q.0) - 18.0, ty(q.1) + if ty(q.1) < 20.0 { 16.0 } else { -4.0 }
        );
    }
    for (i, &(x, y)) in points.iter().enumerate() {
        let label = Configuration::point_label(i);
        let _ = writeln!(
            out,
            r##"<circle id="{label}" cx="{:.2}" cy="{:.2}" r="4" fill="#b22222"/>"##,
            tx(x), ty(y)
        );
        let _ = writeln!(
            out,
            r##"<text x="{:.2}" y="{:.2}" font-size="13" fill="#b22222">{label}</text>"##,
            tx(x) + 6.0, ty(y) - 6.0
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::fixture;

    #[test]
    fn clipping() {
        let b = BoundingBox { x0: 0.0, y0: 0.0, x1: 10.0, y1: 10.0 };
        let (p, q) = clip_line([-5.0, 0.0, 1.0], &b).unwrap();
        assert_eq!((p, q), ((0.0, 5.0), (10.0, 5.0)));
        let (p, q) = clip_line([0.0, -1.0, 1.0], &b).unwrap();
        assert_eq!((p, q), ((0.0, 0.0), (10.0, 10.0)));
        assert!(clip_line([-20.0, 0.0, 1.0], &b).is_none());
    }

    #[test]
    fn bbox_parse() {
        assert_eq!(
            BoundingBox::parse("-1,-2,3,4").unwrap(),
            BoundingBox { x0: -1.0, y0: -2.0, x1: 3.0, y1: 4.0 }
        );
        assert!(BoundingBox::parse("1,2,3").is_err());
        assert!(BoundingBox::parse("3,0,1,1").is_err());
    }

    #[test]
    fn draws_every_element() {
        let c = fixture("perles_config").unwrap().configuration().cloned().unwrap();
        let svg = render(&c, None).unwrap();
        assert!(svg.starts_with("<?xml"));
        assert_eq!(svg.matches("<circle").count(), 9);
        for j in 1..=9 {
            assert!(svg.contains(&format!(r#"id="l{j}""#)));
        }
    }
}
