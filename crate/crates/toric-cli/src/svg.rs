//! Deterministic SVG rendering of 2-dimensional fans and polytopes.
//!
//! Fixed scale of 40 pixels per lattice unit and an origin-centered viewBox
//! padded by one unit; every emitted coordinate is an integer, so identical
//! input yields byte-identical output.

use std::fmt::Write as _;

use num_bigint::BigInt;
use toric::{Fan, LatticePolytope, ToricError};

const SCALE: i64 = 40;

fn coord(value: &BigInt) -> Result<i64, ToricError> {
    i64::try_from(value.clone())
        .map_err(|_| ToricError::Internal("coordinate exceeds the renderable range".into()))
}

fn point(v: &toric::LatticeVector) -> Result<(i64, i64), ToricError> {
    Ok((coord(v.coord(0))?, coord(v.coord(1))?))
}

pub fn render_svg(fan: &Fan, polytope: Option<&LatticePolytope<'_>>) -> Result<String, ToricError> {
    if fan.dim() != 2 {
        return Err(ToricError::Unsupported(
            "rendering supports dimension 2 only".into(),
        ));
    }

    let rays: Vec<(i64, i64)> = fan.rays().iter().map(point).collect::<Result<_, _>>()?;
    let vertices: Vec<(i64, i64)> = match polytope {
        Some(p) => p.vertices().iter().map(point).collect::<Result<_, _>>()?,
        None => Vec::new(),
    };

    // Arrows extend to twice the primitive point, echoing the usual figures.
    let mut rx: i64 = 1;
    let mut ry: i64 = 1;
    for &(x, y) in &rays {
        rx = rx.max((2 * x).abs());
        ry = ry.max((2 * y).abs());
    }
    for &(x, y) in &vertices {
        rx = rx.max(x.abs());
        ry = ry.max(y.abs());
    }
    let half_w = (rx + 1) * SCALE;
    let half_h = (ry + 1) * SCALE;

    let px = |x: i64| x * SCALE;
    let py = |y: i64| -y * SCALE; // SVG y grows downwards

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}" width="{}" height="{}">"#,
        -half_w,
        -half_h,
        2 * half_w,
        2 * half_h,
        2 * half_w,
        2 * half_h
    );
    out.push_str(concat!(
        r#"<defs><marker id="arrow" viewBox="0 0 10 10" refX="8" refY="5" "#,
        r#"markerWidth="6" markerHeight="6" orient="auto-start-reverse">"#,
        r#"<path d="M 0 0 L 10 5 L 0 10 z"/></marker></defs>"#,
        "\n"
    ));

    if let Some(p) = polytope {
        // The polygon boundary is the cone cycle of the unique 2-face.
        let face = &p.two_faces()[0];
        let mut points = String::new();
        for (i, &c) in face.cone_cycle.iter().enumerate() {
            if i > 0 {
                points.push(' ');
            }
            let (x, y) = vertices[c];
            let _ = write!(points, "{},{}", px(x), py(y));
        }
        let _ = writeln!(
            out,
            r##"<polygon points="{points}" fill="#dbeafe" stroke="#1d4ed8" stroke-width="3"/>"##
        );
    }

    for (i, &(x, y)) in rays.iter().enumerate() {
        let _ = writeln!(
            out,
            r##"<line x1="0" y1="0" x2="{}" y2="{}" stroke="#000000" stroke-width="3" marker-end="url(#arrow)"/>"##,
            px(2 * x),
            py(2 * y)
        );
        let _ = writeln!(
            out,
            r##"<circle cx="{}" cy="{}" r="5" fill="#000000"><title>ray {i}</title></circle>"##,
            px(x),
            py(y)
        );
    }

    if polytope.is_some() {
        for (c, &(x, y)) in vertices.iter().enumerate() {
            let _ = writeln!(
                out,
                r##"<circle cx="{}" cy="{}" r="6" fill="#1d4ed8"/>"##,
                px(x),
                py(y)
            );
            let _ = writeln!(
                out,
                r#"<text x="{}" y="{}" font-family="monospace" font-size="16">p{c}</text>"#,
                px(x) + 8,
                py(y) - 8
            );
        }
    }

    let _ = writeln!(out, r##"<circle cx="0" cy="0" r="7" fill="#000000"/>"##);
    out.push_str("</svg>\n");
    Ok(out)
}
