//! Minimal static SVG renderings: an overlaid line chart for vocabulary
//! growth curves and a scatter for embedding coordinates. No dependencies;
//! the output is plain shapes sized for a quick look in any browser.

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 480.0;
const MARGIN: f64 = 54.0;

const PALETTE: [&str; 6] = ["#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b"];

struct Bounds {
    x_min: f64,
    x_max: f64,
    y_min: f64,
    y_max: f64,
}

impl Bounds {
    /// Covering box of all points, padded so a degenerate axis still has
    /// nonzero span to map onto.
    fn of(points: impl Iterator<Item = (f64, f64)>) -> Bounds {
        let mut b = Bounds { x_min: f64::MAX, x_max: f64::MIN, y_min: f64::MAX, y_max: f64::MIN };
        let mut any = false;
        for (x, y) in points {
            any = true;
            b.x_min = b.x_min.min(x);
            b.x_max = b.x_max.max(x);
            b.y_min = b.y_min.min(y);
            b.y_max = b.y_max.max(y);
        }
        if !any {
            return Bounds { x_min: 0.0, x_max: 1.0, y_min: 0.0, y_max: 1.0 };
        }
        if b.x_max - b.x_min < 1e-12 {
            b.x_min -= 0.5;
            b.x_max += 0.5;
        }
        if b.y_max - b.y_min < 1e-12 {
            b.y_min -= 0.5;
            b.y_max += 0.5;
        }
        b
    }

    fn px(&self, x: f64) -> f64 {
        MARGIN + (x - self.x_min) / (self.x_max - self.x_min) * (WIDTH - 2.0 * MARGIN)
    }

    /// SVG y grows downward; data y grows upward.
    fn py(&self, y: f64) -> f64 {
        HEIGHT - MARGIN - (y - self.y_min) / (self.y_max - self.y_min) * (HEIGHT - 2.0 * MARGIN)
    }
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn header(title: &str) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" \
         viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n\
         <rect width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>\n\
         <text x=\"{}\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" \
         font-size=\"15\">{}</text>\n",
        WIDTH / 2.0,
        escape(title)
    )
}

fn axes(b: &Bounds) -> String {
    let (left, right) = (MARGIN, WIDTH - MARGIN);
    let (top, bottom) = (MARGIN, HEIGHT - MARGIN);
    let mut out = format!(
        "<line x1=\"{left}\" y1=\"{bottom}\" x2=\"{right}\" y2=\"{bottom}\" stroke=\"black\"/>\n\
         <line x1=\"{left}\" y1=\"{top}\" x2=\"{left}\" y2=\"{bottom}\" stroke=\"black\"/>\n"
    );
    for i in 0..=4 {
        let t = i as f64 / 4.0;
        let x = b.x_min + t * (b.x_max - b.x_min);
        let y = b.y_min + t * (b.y_max - b.y_min);
        out.push_str(&format!(
            "<text x=\"{:.1}\" y=\"{:.1}\" text-anchor=\"middle\" font-family=\"sans-serif\" \
             font-size=\"11\">{x:.4}</text>\n",
            b.px(x),
            bottom + 18.0
        ));
        out.push_str(&format!(
            "<text x=\"{:.1}\" y=\"{:.1}\" text-anchor=\"end\" font-family=\"sans-serif\" \
             font-size=\"11\">{y:.4}</text>\n",
            left - 6.0,
            b.py(y) + 4.0
        ));
    }
    out
}

/// One polyline per series, all sharing the axes. Empty series are skipped.
pub fn line_chart(title: &str, series: &[(String, Vec<(f64, f64)>)]) -> String {
    let bounds = Bounds::of(series.iter().flat_map(|(_, pts)| pts.iter().copied()));
    let mut out = header(title);
    out.push_str(&axes(&bounds));
    for (i, (name, pts)) in series.iter().enumerate() {
        if pts.is_empty() {
            continue;
        }
        let coords: Vec<String> = pts
            .iter()
            .map(|&(x, y)| format!("{:.1},{:.1}", bounds.px(x), bounds.py(y)))
            .collect();
        out.push_str(&format!(
            "<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1\" points=\"{}\">\
             <title>{}</title></polyline>\n",
            PALETTE[i % PALETTE.len()],
            coords.join(" "),
            escape(name)
        ));
    }
    out.push_str("</svg>\n");
    out
}

/// One circle per labelled point; the label is a hover title.
pub fn scatter(title: &str, points: &[(String, f64, f64)]) -> String {
    let bounds = Bounds::of(points.iter().map(|&(_, x, y)| (x, y)));
    let mut out = header(title);
    out.push_str(&axes(&bounds));
    for (i, (name, x, y)) in points.iter().enumerate() {
        out.push_str(&format!(
            "<circle cx=\"{:.1}\" cy=\"{:.1}\" r=\"4\" fill=\"{}\" fill-opacity=\"0.7\">\
             <title>{}</title></circle>\n",
            bounds.px(*x),
            bounds.py(*y),
            PALETTE[i % PALETTE.len()],
            escape(name)
        ));
    }
    out.push_str("</svg>\n");
    out
}
