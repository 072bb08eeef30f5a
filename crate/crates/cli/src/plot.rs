//! Hand-emitted SVG figures and their plot-data CSV twins.
//!
//! Three figures: juxtaposed bars, overlapped bars (shared ground rendered
//! darker by stacking translucent fills), and the worst/balanced/ideal
//! triangle with the cohort's center of gravity marked.

use cograde_core::models::{CogPoint, TriangleFrame};
use cograde_core::{Distribution, ModelConfig};

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const MARGIN_LEFT: f64 = 52.0;
const MARGIN_RIGHT: f64 = 20.0;
const MARGIN_TOP: f64 = 24.0;
const MARGIN_BOTTOM: f64 = 44.0;

struct Frame {
    x_max: f64,
    y_max: f64,
}

impl Frame {
    fn x(&self, x: f64) -> f64 {
        MARGIN_LEFT + x / self.x_max * (WIDTH - MARGIN_LEFT - MARGIN_RIGHT)
    }

    fn y(&self, y: f64) -> f64 {
        HEIGHT - MARGIN_BOTTOM - y / self.y_max * (HEIGHT - MARGIN_TOP - MARGIN_BOTTOM)
    }
}

fn document(body: String) -> String {
    format!(
        concat!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" ",
            "viewBox=\"0 0 {w} {h}\">\n",
            "<rect width=\"{w}\" height=\"{h}\" fill=\"white\"/>\n",
            "{body}</svg>\n"
        ),
        w = WIDTH,
        h = HEIGHT,
        body = body
    )
}

fn axes(frame: &Frame, y_label: &str) -> String {
    let mut s = String::new();
    s.push_str(&format!(
        "<line x1=\"{:.1}\" y1=\"{:.1}\" x2=\"{:.1}\" y2=\"{:.1}\" stroke=\"black\"/>\n",
        frame.x(0.0),
        frame.y(0.0),
        frame.x(frame.x_max),
        frame.y(0.0)
    ));
    s.push_str(&format!(
        "<line x1=\"{:.1}\" y1=\"{:.1}\" x2=\"{:.1}\" y2=\"{:.1}\" stroke=\"black\"/>\n",
        frame.x(0.0),
        frame.y(0.0),
        frame.x(0.0),
        frame.y(frame.y_max)
    ));
    s.push_str(&format!(
        "<text x=\"{:.1}\" y=\"{:.1}\" font-size=\"12\" text-anchor=\"end\">{}</text>\n",
        frame.x(0.0) - 6.0,
        frame.y(frame.y_max) + 4.0,
        y_label
    ));
    s
}

/// Bars for either rectangular variant; the config decides whether the
/// bases touch or overlap. Overlaps darken because each bar is translucent.
pub fn bars_svg(dist: &Distribution, cfg: &ModelConfig, labels: &[String]) -> String {
    let translucent = cfg.variant().is_overlapping();
    let y_top = dist.values().iter().cloned().fold(0.0f64, f64::max).max(1e-9) * 1.15;
    let frame = Frame { x_max: cfg.extent(), y_max: y_top };
    let mut body = axes(&frame, "y");
    for (i, &y) in dist.values().iter().enumerate() {
        let (x0, x1) = cfg.base_interval(i);
        let (style, opacity) = if translucent {
            ("fill=\"steelblue\" stroke=\"navy\"", " fill-opacity=\"0.45\"")
        } else {
            ("fill=\"steelblue\" stroke=\"navy\"", "")
        };
        body.push_str(&format!(
            "<rect x=\"{:.2}\" y=\"{:.2}\" width=\"{:.2}\" height=\"{:.2}\" {}{}/>\n",
            frame.x(x0),
            frame.y(y),
            frame.x(x1) - frame.x(x0),
            frame.y(0.0) - frame.y(y),
            style,
            opacity
        ));
        let label = labels.get(i).map(String::as_str).unwrap_or("");
        body.push_str(&format!(
            "<text x=\"{:.1}\" y=\"{:.1}\" font-size=\"12\" text-anchor=\"middle\">{}</text>\n",
            frame.x(0.5 * (x0 + x1)),
            frame.y(0.0) + 16.0,
            label
        ));
    }
    body.push_str(&format!(
        "<text x=\"{:.1}\" y=\"{:.1}\" font-size=\"12\" text-anchor=\"middle\">x</text>\n",
        frame.x(frame.x_max),
        frame.y(0.0) + 32.0
    ));
    document(body)
}

/// `index,label,x0,x1,height` rows matching the drawn bars exactly.
pub fn bars_data(dist: &Distribution, cfg: &ModelConfig, labels: &[String]) -> String {
    let mut out = String::from("index,label,x0,x1,height\n");
    for (i, &y) in dist.values().iter().enumerate() {
        let (x0, x1) = cfg.base_interval(i);
        let label = labels.get(i).map(String::as_str).unwrap_or("");
        out.push_str(&format!("{i},{label},{x0},{x1},{y}\n"));
    }
    out
}

/// The worst/balanced/ideal triangle with the cohort's COG marked.
pub fn triangle_svg(tri: &TriangleFrame, cog: CogPoint) -> String {
    let x_max = tri.ideal.xc + tri.worst.xc;
    let y_max = tri.worst.yc.max(cog.yc) * 1.2;
    let frame = Frame { x_max, y_max };
    let mut body = axes(&frame, "yc");
    body.push_str(&format!(
        "<polygon points=\"{:.2},{:.2} {:.2},{:.2} {:.2},{:.2}\" fill=\"none\" stroke=\"darkgreen\" stroke-width=\"1.5\"/>\n",
        frame.x(tri.worst.xc),
        frame.y(tri.worst.yc),
        frame.x(tri.balanced.xc),
        frame.y(tri.balanced.yc),
        frame.x(tri.ideal.xc),
        frame.y(tri.ideal.yc)
    ));
    for (p, name, anchor) in [
        (tri.worst, "worst", "end"),
        (tri.balanced, "balanced", "middle"),
        (tri.ideal, "ideal", "start"),
    ] {
        body.push_str(&format!(
            "<text x=\"{:.1}\" y=\"{:.1}\" font-size=\"12\" text-anchor=\"{}\">{} ({}, {})</text>\n",
            frame.x(p.xc),
            frame.y(p.yc) - 8.0,
            anchor,
            name,
            p.xc,
            p.yc
        ));
    }
    body.push_str(&format!(
        "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"4\" fill=\"crimson\"/>\n",
        frame.x(cog.xc),
        frame.y(cog.yc)
    ));
    body.push_str(&format!(
        "<text x=\"{:.1}\" y=\"{:.1}\" font-size=\"12\" fill=\"crimson\">cog ({:.3}, {:.3})</text>\n",
        frame.x(cog.xc) + 8.0,
        frame.y(cog.yc) + 4.0,
        cog.xc,
        cog.yc
    ));
    document(body)
}

/// `point,x,y` rows for the three vertices and the cohort's COG.
pub fn triangle_data(tri: &TriangleFrame, cog: CogPoint) -> String {
    format!(
        "point,x,y\nworst,{},{}\nbalanced,{},{}\nideal,{},{}\ncog,{},{}\n",
        tri.worst.xc,
        tri.worst.yc,
        tri.balanced.xc,
        tri.balanced.yc,
        tri.ideal.xc,
        tri.ideal.yc,
        cog.xc,
        cog.yc
    )
}
