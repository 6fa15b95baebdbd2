//! SVG rendering of a two-neighbourhood lens.

use std::fmt::Write;

use super::lens::LensRegion;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 400.0;
const PAD: f64 = 20.0;
const CURVE_SAMPLES: usize = 200;

struct Frame {
    x_min: f64,
    x_max: f64,
    y_max: f64,
}

impl Frame {
    fn px(&self, x: f64, y: f64) -> (f64, f64) {
        let sx = PAD + (x - self.x_min) / (self.x_max - self.x_min) * (WIDTH - 2.0 * PAD);
        let sy = HEIGHT - PAD - y / self.y_max * (HEIGHT - 2.0 * PAD);
        (sx, sy)
    }
}

fn polyline(frame: &Frame, points: impl Iterator<Item = (f64, f64)>) -> String {
    let mut out = String::new();
    for (x, y) in points {
        let (sx, sy) = frame.px(x, y);
        let _ = write!(out, "{sx:.3},{sy:.3} ");
    }
    out.trim_end().to_string()
}

/// Both neighbourhood outlines, the shaded lens and its saddle point.
pub fn lens_svg(lens: &LensRegion) -> String {
    let profile = lens.profile();
    let a_n = profile.half_width();
    let cap = profile.cap();
    let frame = Frame { x_min: lens.a() - 1.5 * a_n, x_max: lens.b() + 1.5 * a_n, y_max: 1.2 * cap };

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let (ax0, ay) = frame.px(frame.x_min, 0.0);
    let (ax1, _) = frame.px(frame.x_max, 0.0);
    let _ = writeln!(svg, r#"  <line x1="{ax0:.3}" y1="{ay:.3}" x2="{ax1:.3}" y2="{ay:.3}" stroke="black"/>"#);

    if lens.intersecting() {
        let (a, b) = (lens.a(), lens.b());
        let roof = (0..=CURVE_SAMPLES).map(|i| {
            let u = a + (b - a) * i as f64 / CURVE_SAMPLES as f64;
            (u, lens.roof(u))
        });
        let pts = polyline(&frame, roof.chain([(b, 0.0), (a, 0.0)]));
        let _ = writeln!(svg, r##"  <polygon points="{pts}" fill="#9ecae1" fill-opacity="0.6" stroke="none"/>"##);
    }

    for anchor in [lens.a(), lens.b()] {
        let outline = (0..=CURVE_SAMPLES)
            .map(|i| -a_n + 2.0 * a_n * i as f64 / CURVE_SAMPLES as f64)
            .map(|t| (anchor + t, profile.extended(t)))
            .chain(std::iter::once((anchor - a_n, cap)));
        let pts = polyline(&frame, outline);
        let _ = writeln!(svg, r##"  <polyline points="{pts}" fill="none" stroke="#08519c" stroke-width="1.5"/>"##);
        let (sx, sy) = frame.px(anchor, 0.0);
        let _ = writeln!(svg, r#"  <circle cx="{sx:.3}" cy="{sy:.3}" r="3" fill="black"/>"#);
    }

    if lens.intersecting() {
        let s = lens.saddle();
        let (sx, sy) = frame.px(s.x, s.y);
        let _ = writeln!(svg, r##"  <circle cx="{sx:.3}" cy="{sy:.3}" r="4" fill="#de2d26"/>"##);
        let _ = writeln!(
            svg,
            r#"  <text x="{:.3}" y="{:.3}" font-size="12">({:.4}, {:.4})</text>"#,
            sx + 6.0,
            sy - 6.0,
            s.x,
            s.y
        );
    }
    svg.push_str("</svg>\n");
    svg
}
