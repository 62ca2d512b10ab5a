//! Display offsets for concurrent curves and SVG output.

use std::fmt::Write;

use super::{Diagram, SegmentKind, Style};
use crate::geom::Point;
use crate::Scalar;

/// Display polylines (set → loops) with concurrent segments pulled apart
/// into parallel strands: the `i`-th of `k` curves in a bundle is offset by
/// `(i − (k − 1) / 2) · w` along the shared route's normal. Without bundles
/// this is the exact geometry.
pub fn apply_concurrency<T: Scalar>(diagram: &Diagram<T>, style: &Style) -> Vec<Vec<Vec<Point<T>>>> {
    let w = style.offset_width();
    diagram
        .curves
        .iter()
        .map(|curve| {
            curve
                .loops
                .iter()
                .map(|lp| {
                    let mut out: Vec<Point<T>> = Vec::new();
                    for seg in &lp.segments {
                        let mut pts = seg.samples.clone();
                        if seg.kind == SegmentKind::Concurrent {
                            let bundle = diagram.bundles.iter().find(|b| b.link == seg.link);
                            if let Some(b) = bundle {
                                let i = b.sets.iter().position(|&s| s == curve.set).unwrap_or(0);
                                let off = T::lit(b.offsets(w)[i]);
                                if seg.reversed {
                                    pts.reverse();
                                }
                                pts = offset_polyline(&pts, off);
                                if seg.reversed {
                                    pts.reverse();
                                }
                            }
                        }
                        // Keep the short jog where an offset strand meets an
                        // unshifted neighbour.
                        let skip = usize::from(out.last() == pts.first());
                        out.extend(pts.into_iter().skip(skip));
                    }
                    if let Some(&f) = out.first() {
                        let n = out.len();
                        out[n - 1] = f;
                    }
                    out
                })
                .collect()
        })
        .collect()
}

fn offset_polyline<T: Scalar>(pts: &[Point<T>], off: T) -> Vec<Point<T>> {
    let n = pts.len();
    (0..n)
        .map(|i| {
            let a = pts[i.saturating_sub(1)];
            let b = pts[(i + 1).min(n - 1)];
            let d = b - a;
            let len = d.norm();
            if len == T::zero() {
                pts[i]
            } else {
                pts[i] + d.perp() * (off / len)
            }
        })
        .collect()
}

/// SVG document: one closed `<path data-set=…>` per set with the exact
/// curve geometry, so the file verifies like the diagram itself. Concurrent
/// stretches are then drawn over it as parallel strands (see
/// [`apply_concurrency`]) in a separate group: a background-colored band
/// masks the shared stretch and each bundled set's strand is drawn at its
/// offset. The strands are decoration only and carry no `data-set`.
pub fn emit_svg<T: Scalar>(diagram: &Diagram<T>, style: &Style) -> String {
    let exact = diagram.polylines();
    let s = style.scale;
    let to_svg = |p: &Point<T>| (p.x.to_f64().unwrap_or(0.0) * s, -p.y.to_f64().unwrap_or(0.0) * s);
    let (mut x0, mut y0, mut x1, mut y1) = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in exact.iter().flatten().flatten() {
        let (x, y) = to_svg(p);
        x0 = x0.min(x);
        y0 = y0.min(y);
        x1 = x1.max(x);
        y1 = y1.max(y);
    }
    if !x0.is_finite() {
        (x0, y0, x1, y1) = (0.0, 0.0, 1.0, 1.0);
    }
    let margin = 0.05 * (x1 - x0).max(y1 - y0).max(1e-9);
    let (vx, vy, vw, vh) = (x0 - margin, y0 - margin, x1 - x0 + 2.0 * margin, y1 - y0 + 2.0 * margin);
    let polyline = |pts: &[Point<T>], closed: bool| {
        let mut d = String::new();
        let n = if closed { pts.len().saturating_sub(1) } else { pts.len() };
        for (i, p) in pts.iter().take(n).enumerate() {
            let (x, y) = to_svg(p);
            let _ = write!(d, "{}{x:.3},{y:.3} ", if i == 0 { "M" } else { "L" });
        }
        if closed {
            d.push_str("Z ");
        }
        d
    };
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{vx:.3} {vy:.3} {vw:.3} {vh:.3}" width="{vw:.0}" height="{vh:.0}">"#
    );
    for (curve, loops) in diagram.curves.iter().zip(&exact) {
        let d: String = loops.iter().map(|lp| polyline(lp, true)).collect();
        let _ = writeln!(
            out,
            r#"  <path data-set="{}" d="{}" fill="none" stroke="{}" stroke-width="{}" stroke-linejoin="round"/>"#,
            escape(&curve.name),
            d.trim_end(),
            escape(style.color(curve.set)),
            style.stroke_width
        );
    }
    if !diagram.bundles.is_empty() {
        let w = style.offset_width();
        let mut masks: Vec<Vec<Point<T>>> = Vec::new();
        let mut strands = String::new();
        for curve in &diagram.curves {
            for seg in curve.loops.iter().flat_map(|lp| &lp.segments) {
                if seg.kind != SegmentKind::Concurrent {
                    continue;
                }
                let Some(b) = diagram.bundles.iter().find(|b| b.link == seg.link) else { continue };
                let i = b.sets.iter().position(|&s| s == curve.set).unwrap_or(0);
                let mut pts = seg.samples.clone();
                if seg.reversed {
                    pts.reverse();
                }
                if !masks.contains(&pts) {
                    masks.push(pts.clone());
                }
                let shifted = offset_polyline(&pts, T::lit(b.offsets(w)[i]));
                let _ = writeln!(
                    strands,
                    r#"    <path d="{}" stroke="{}" stroke-width="{}"/>"#,
                    polyline(&shifted, false).trim_end(),
                    escape(style.color(curve.set)),
                    style.stroke_width
                );
            }
        }
        let k = diagram.bundles.iter().map(|b| b.sets.len()).max().unwrap_or(1) as f64;
        let _ = writeln!(out, r#"  <g data-role="concurrency" fill="none" stroke-linejoin="round">"#);
        for m in &masks {
            let _ = writeln!(
                out,
                r#"    <path d="{}" stroke="{}" stroke-width="{}"/>"#,
                polyline(m, false).trim_end(),
                escape(&style.background),
                (k - 1.0) * w * s + style.stroke_width * 1.5
            );
        }
        out.push_str(&strands);
        out.push_str("  </g>\n");
    }
    out.push_str("</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('"', "&quot;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dual::{build_dual, venn_dual};
    use crate::layout::layout_circular;
    use crate::model::{parse_description, AbstractDescription};
    use crate::render::{render_diagram, SMOOTHING_LEVELS};

    #[test]
    fn one_path_per_set_and_deterministic() {
        let d = AbstractDescription::full_venn(3).unwrap();
        let dual = venn_dual(3).unwrap();
        let layout = layout_circular::<f64>(&dual);
        let style = Style::default();
        let a = emit_svg(&render_diagram(&d, &dual, &layout, &style, SMOOTHING_LEVELS[0]).unwrap(), &style);
        let b = emit_svg(&render_diagram(&d, &dual, &layout, &style, SMOOTHING_LEVELS[0]).unwrap(), &style);
        assert_eq!(a, b);
        assert_eq!(a.matches("<path").count(), 3);
        assert!(a.contains(r#"data-set="A""#));
    }

    #[test]
    fn bundled_curves_are_parallel_at_offsets() {
        let d = parse_description("A,C,O\n0\na\nac\naco\nco\n", Default::default()).unwrap().0;
        let dual = build_dual(&d).unwrap();
        let layout = layout_circular::<f64>(&dual);
        let style = Style::default();
        let diagram = render_diagram(&d, &dual, &layout, &style, SMOOTHING_LEVELS[2]).unwrap();
        let shown = apply_concurrency(&diagram, &style);
        let w = style.offset_width();
        // Displaced points of C and O are w apart.
        let moved = |set: usize| -> Vec<Point<f64>> {
            let exact = diagram.curves[set].loops[0].samples();
            shown[set][0].iter().copied().filter(|p| !exact.contains(p)).collect()
        };
        let (c, o) = (moved(1), moved(2));
        assert!(!c.is_empty());
        let min =
            c.iter().map(|p| o.iter().map(|q| p.dist(*q)).fold(f64::INFINITY, f64::min)).fold(f64::INFINITY, f64::min);
        assert!((min - w).abs() < 0.2 * w, "min distance {min}, w {w}");
    }
}
