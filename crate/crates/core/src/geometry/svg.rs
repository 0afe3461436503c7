//! Deterministic SVG 1.1 rendering of scenes: one element per object, optional
//! per-object annotation text.

use super::{GeoObject, Rat, Scene, Shape};
use num_traits::ToPrimitive;
use std::fmt::Write;

fn f(r: &Rat) -> String {
    format!("{:.4}", r.to_f64().unwrap_or(0.0))
}

/// Render a scene. `annotations[i]`, when present, is drawn near object `i`.
pub fn render_svg(scene: &Scene, annotations: &[Option<String>]) -> String {
    let mut body = String::new();
    let palette = [
        "#4878cf", "#d65f5f", "#59a14f", "#b279a2", "#e8a33d", "#6dccda",
    ];
    for (i, o) in scene.objects.iter().enumerate() {
        let color = palette[i % palette.len()];
        match &o.shape {
            Shape::Disk { center, radius } => {
                writeln!(
                    body,
                    r#"  <circle cx="{}" cy="{}" r="{}" fill="{}" fill-opacity="0.35" stroke="{}"/>"#,
                    f(&center.x),
                    f(&center.y),
                    f(radius),
                    color,
                    color
                )
                .unwrap();
            }
            Shape::Segment { p, q } => {
                writeln!(
                    body,
                    r#"  <line x1="{}" y1="{}" x2="{}" y2="{}" stroke="{}" stroke-width="0.05"/>"#,
                    f(&p.x),
                    f(&p.y),
                    f(&q.x),
                    f(&q.y),
                    color
                )
                .unwrap();
            }
            Shape::Triangle { a, b, c } => {
                writeln!(
                    body,
                    r#"  <polygon points="{},{} {},{} {},{}" fill="{}" fill-opacity="0.35" stroke="{}"/>"#,
                    f(&a.x),
                    f(&a.y),
                    f(&b.x),
                    f(&b.y),
                    f(&c.x),
                    f(&c.y),
                    color,
                    color
                )
                .unwrap();
            }
            Shape::ConvexPolygon { vertices } => {
                let pts: Vec<String> = vertices
                    .iter()
                    .map(|p| format!("{},{}", f(&p.x), f(&p.y)))
                    .collect();
                writeln!(
                    body,
                    r#"  <polygon points="{}" fill="{}" fill-opacity="0.35" stroke="{}"/>"#,
                    pts.join(" "),
                    color,
                    color
                )
                .unwrap();
            }
            Shape::Polyline { points } => {
                let pts: Vec<String> = points
                    .iter()
                    .map(|p| format!("{},{}", f(&p.x), f(&p.y)))
                    .collect();
                writeln!(
                    body,
                    r#"  <polyline points="{}" fill="none" stroke="{}" stroke-width="0.05"/>"#,
                    pts.join(" "),
                    color
                )
                .unwrap();
            }
        }
        if let Some(Some(text)) = annotations.get(i) {
            let (xmin, _, ymin, _) = o.shape.extent();
            writeln!(
                body,
                r#"  <text x="{}" y="{}" font-size="0.5">{}</text>"#,
                f(&xmin),
                f(&ymin),
                text
            )
            .unwrap();
        }
    }

    let (view, width, height) = if scene.is_empty() {
        ("0 0 1 1".to_string(), 1.0, 1.0)
    } else {
        let mut xmin = f64::INFINITY;
        let mut xmax = f64::NEG_INFINITY;
        let mut ymin = f64::INFINITY;
        let mut ymax = f64::NEG_INFINITY;
        for o in &scene.objects {
            let (a, b, c, d) = o.shape.extent();
            xmin = xmin.min(a.to_f64().unwrap_or(0.0));
            xmax = xmax.max(b.to_f64().unwrap_or(0.0));
            ymin = ymin.min(c.to_f64().unwrap_or(0.0));
            ymax = ymax.max(d.to_f64().unwrap_or(0.0));
        }
        let pad = 1.0;
        let w = xmax - xmin + 2.0 * pad;
        let h = ymax - ymin + 2.0 * pad;
        (
            format!("{:.4} {:.4} {:.4} {:.4}", xmin - pad, ymin - pad, w, h),
            w,
            h,
        )
    };
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"{view}\" width=\"{width:.0}\" height=\"{height:.0}\">\n{body}</svg>\n"
    )
}
