//! Equirectangular theta–phi heatmap of a Wigner grid as plain SVG.
//!
//! Colors follow a cool–warm diverging map on `[-max|W|, max|W|]`, so zero is
//! the neutral midpoint and negative (interference) regions show up blue.
//! Horizontally adjacent cells of identical color are merged into one rect.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::path::Path;

use blochwalk_core::{SiteIndexing, WignerGrid};

use crate::error::RunError;

const LEFT: f64 = 64.0;
const TOP: f64 = 36.0;
const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 360.0;
const BAR_X: f64 = LEFT + WIDTH + 24.0;
const BAR_W: f64 = 16.0;

const COOL: [f64; 3] = [59.0, 76.0, 192.0];
const MID: [f64; 3] = [221.0, 221.0, 221.0];
const WARM: [f64; 3] = [180.0, 4.0, 38.0];

/// `t` in `[-1, 1]` to `#rrggbb`.
pub fn diverging_color(t: f64) -> String {
    let t = if t.is_finite() { t.clamp(-1.0, 1.0) } else { 0.0 };
    let (end, s) = if t < 0.0 { (COOL, -t) } else { (WARM, t) };
    let c: Vec<u8> = (0..3).map(|i| (MID[i] + (end[i] - MID[i]) * s).round() as u8).collect();
    format!("#{:02x}{:02x}{:02x}", c[0], c[1], c[2])
}

pub fn heatmap_svg(grid: &WignerGrid, indexing: &SiteIndexing, title: &str) -> String {
    let scale = grid.max_abs();
    let n_phi = grid.n_phi();
    let dphi = grid.delta_phi();
    let cell_w = WIDTH / n_phi as f64;
    let theta = grid.theta_nodes();

    // row edges halfway between polar nodes, closed off at the poles
    let mut edges = Vec::with_capacity(theta.len() + 1);
    edges.push(0.0);
    edges.extend(theta.windows(2).map(|w| 0.5 * (w[0] + w[1])));
    edges.push(PI);
    let y_of = |t: f64| TOP + t / PI * HEIGHT;
    // phi_j is the centre of column j; the first column starts half a cell before -pi
    let x_of = |phi: f64| LEFT + (phi + PI + 0.5 * dphi) / (2.0 * PI) * WIDTH;

    let mut s = String::new();
    let total_w = BAR_X + BAR_W + 72.0;
    let total_h = TOP + HEIGHT + 48.0;
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{total_w:.0}" height="{total_h:.0}" viewBox="0 0 {total_w:.0} {total_h:.0}">"#
    );
    let _ = writeln!(s, r#"<rect x="0" y="0" width="{total_w:.0}" height="{total_h:.0}" fill="white"/>"#);
    let _ = writeln!(s, r#"<text x="{LEFT:.0}" y="22" font-family="sans-serif" font-size="14">{}</text>"#, escape(title));

    let _ = writeln!(s, r#"<g id="cells" shape-rendering="crispEdges">"#);
    for i in 0..grid.n_theta() {
        let (y0, y1) = (y_of(edges[i]), y_of(edges[i + 1]));
        let row = grid.row(i);
        let mut j = 0;
        while j < n_phi {
            let color = diverging_color(if scale > 0.0 { row[j] / scale } else { 0.0 });
            let mut end = j + 1;
            while end < n_phi && diverging_color(if scale > 0.0 { row[end] / scale } else { 0.0 }) == color {
                end += 1;
            }
            let _ = writeln!(
                s,
                r#"<rect x="{:.3}" y="{:.3}" width="{:.3}" height="{:.3}" fill="{color}"/>"#,
                LEFT + j as f64 * cell_w,
                y0,
                (end - j) as f64 * cell_w,
                y1 - y0
            );
            j = end;
        }
    }
    let _ = writeln!(s, "</g>");

    // frame and axes
    let _ = writeln!(
        s,
        r#"<rect x="{LEFT:.0}" y="{TOP:.0}" width="{WIDTH:.0}" height="{HEIGHT:.0}" fill="none" stroke="black"/>"#
    );
    let _ = writeln!(s, r#"<g id="phi-ticks" font-family="sans-serif" font-size="10" text-anchor="middle">"#);
    let sites = indexing.sites() as usize;
    let label_every = sites.div_ceil(20).max(1);
    for n in indexing.site_indices() {
        let phi = n as f64 * indexing.delta_phi();
        if phi >= PI - 0.5 * dphi {
            // site at +pi coincides with the -pi column
            continue;
        }
        let x = x_of(phi);
        let _ = writeln!(
            s,
            r#"<line x1="{x:.3}" y1="{:.3}" x2="{x:.3}" y2="{:.3}" stroke="black"/>"#,
            TOP + HEIGHT,
            TOP + HEIGHT + 5.0
        );
        if (n.unsigned_abs() as usize).is_multiple_of(label_every) {
            let _ = writeln!(s, r#"<text x="{x:.3}" y="{:.3}">{n}</text>"#, TOP + HEIGHT + 16.0);
        }
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(
        s,
        r#"<text x="{:.0}" y="{:.0}" font-family="sans-serif" font-size="12" text-anchor="middle">site n (phi = n * 2pi/{sites})</text>"#,
        LEFT + 0.5 * WIDTH,
        TOP + HEIGHT + 34.0
    );
    let _ = writeln!(s, r#"<g id="theta-ticks" font-family="sans-serif" font-size="10" text-anchor="end">"#);
    for (t, label) in [(0.0, "0"), (0.5 * PI, "pi/2"), (PI, "pi")] {
        let y = y_of(t);
        let _ = writeln!(s, r#"<line x1="{:.3}" y1="{y:.3}" x2="{LEFT:.3}" y2="{y:.3}" stroke="black"/>"#, LEFT - 5.0);
        let _ = writeln!(s, r#"<text x="{:.3}" y="{:.3}">{label}</text>"#, LEFT - 8.0, y + 3.0);
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(
        s,
        r#"<text x="14" y="{:.0}" font-family="sans-serif" font-size="12" transform="rotate(-90 14 {:.0})" text-anchor="middle">theta</text>"#,
        TOP + 0.5 * HEIGHT,
        TOP + 0.5 * HEIGHT
    );

    // color bar, top = +max|W|
    let _ = writeln!(s, r#"<g id="colorbar" shape-rendering="crispEdges">"#);
    let steps = 64;
    for k in 0..steps {
        let t = 1.0 - 2.0 * (k as f64 + 0.5) / steps as f64;
        let _ = writeln!(
            s,
            r#"<rect x="{BAR_X:.0}" y="{:.3}" width="{BAR_W:.0}" height="{:.3}" fill="{}"/>"#,
            TOP + k as f64 * HEIGHT / steps as f64,
            HEIGHT / steps as f64,
            diverging_color(t)
        );
    }
    let _ = writeln!(s, "</g>");
    for (y, v) in [(TOP, scale), (TOP + 0.5 * HEIGHT, 0.0), (TOP + HEIGHT, -scale)] {
        let _ = writeln!(
            s,
            r#"<text x="{:.0}" y="{:.3}" font-family="sans-serif" font-size="10">{v:+.3e}</text>"#,
            BAR_X + BAR_W + 4.0,
            y + 3.0
        );
    }
    s.push_str("</svg>\n");
    s
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

pub fn render_heatmap_svg(grid: &WignerGrid, indexing: &SiteIndexing, title: &str, path: &Path) -> Result<(), RunError> {
    std::fs::write(path, heatmap_svg(grid, indexing, title)).map_err(|e| RunError::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn color_endpoints() {
        assert_eq!(diverging_color(0.0), "#dddddd");
        assert_eq!(diverging_color(-1.0), "#3b4cc0");
        assert_eq!(diverging_color(1.0), "#b40426");
        assert_eq!(diverging_color(7.0), diverging_color(1.0));
        assert_eq!(diverging_color(f64::NAN), "#dddddd");
    }
}
