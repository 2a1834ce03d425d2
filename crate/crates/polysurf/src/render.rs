//! Deterministic SVG rendering via Tutte's barycentric layout.
//!
//! Balls (complexes with one boundary cycle) are drawn with the rim fixed on
//! a convex polygon and every interior vertex at the average of its
//! neighbors. A closed sphere complex is drawn by deleting its highest-id
//! face and using that face's corners as the rim. Faces are colored by side
//! count; vertex labels show the exact curvature on request. Output is
//! byte-identical across runs for identical inputs.

use std::fmt::Write as _;

use thiserror::Error;

use crate::complex::{DartId, FaceId, PolygonalComplex};
use crate::curvature::curvature;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RenderError {
    #[error("complex is not a planar ball: {0}")]
    NotPlanar(String),
    #[error("layout degenerated: face {0} has (near) zero area")]
    LayoutDegenerate(FaceId),
}

#[derive(Debug, Clone)]
pub struct RenderOptions {
    /// Canvas width/height in pixels.
    pub size: f64,
    pub stroke_width: f64,
    /// Label interior vertices with their exact curvature.
    pub label_curvature: bool,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions { size: 720.0, stroke_width: 1.5, label_curvature: false }
    }
}

const PALETTE: [&str; 8] = [
    "#66c2a5", "#fc8d62", "#8da0cb", "#e78ac3", "#a6d854", "#ffd92f", "#e5c494", "#b3b3b3",
];

fn fill_for(sides: usize) -> &'static str {
    PALETTE[(sides - 3) % PALETTE.len()]
}

/// The rim as a cycle of boundary darts: successor of a boundary dart is the
/// next boundary dart counterclockwise around its head vertex.
fn boundary_cycles(complex: &PolygonalComplex) -> Vec<Vec<DartId>> {
    let mut seen = vec![false; complex.num_darts()];
    let mut cycles = Vec::new();
    for start in complex.boundary_darts() {
        if seen[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut d = start;
        loop {
            seen[d] = true;
            cycle.push(d);
            let mut t = complex.phi(d);
            while let Some(a) = complex.alpha(t) {
                t = complex.phi(a);
            }
            d = t;
            if d == start {
                break;
            }
        }
        cycles.push(cycle);
    }
    cycles
}

struct Layout {
    positions: Vec<(f64, f64)>,
    /// Face left out of the drawing (the outer face of a punctured sphere).
    skipped_face: Option<FaceId>,
}

fn tutte_layout(complex: &PolygonalComplex) -> Result<Layout, RenderError> {
    let chi = complex.euler_characteristic_raw();
    let (rim_vertices, skipped_face) = if complex.is_closed() {
        if chi != 2 {
            return Err(RenderError::NotPlanar(format!(
                "closed complex has Euler characteristic {chi}, not 2"
            )));
        }
        // delete the highest face; its corners become the rim
        let f = complex.num_faces() - 1;
        let rim: Vec<usize> = (0..complex.sides(f))
            .map(|s| complex.vertex_of_corner(complex.dart(crate::complex::Slot::new(f, s))))
            .collect();
        (rim, Some(f))
    } else {
        if chi != 1 {
            return Err(RenderError::NotPlanar(format!(
                "ball has Euler characteristic {chi}, not 1"
            )));
        }
        let cycles = boundary_cycles(complex);
        if cycles.len() != 1 {
            return Err(RenderError::NotPlanar(format!(
                "{} boundary cycles, need exactly 1",
                cycles.len()
            )));
        }
        let rim: Vec<usize> =
            cycles[0].iter().map(|&d| complex.vertex_of_corner(d)).collect();
        (rim, None)
    };
    let nv = complex.num_vertices();
    let mut on_rim = vec![false; nv];
    let mut positions = vec![(0.0f64, 0.0f64); nv];
    let rim_len = rim_vertices.len();
    for (k, &v) in rim_vertices.iter().enumerate() {
        if on_rim[v] {
            return Err(RenderError::NotPlanar(format!(
                "vertex {v} appears twice on the rim"
            )));
        }
        on_rim[v] = true;
        let theta = 2.0 * std::f64::consts::PI * k as f64 / rim_len as f64;
        positions[v] = (theta.cos(), theta.sin());
    }

    // neighbor lists over all edges, loops dropped
    let mut neighbors: Vec<Vec<usize>> = vec![Vec::new(); nv];
    for d in complex.edges() {
        let u = complex.vertex_of_corner(d);
        let v = complex.vertex_of_corner(complex.phi(d));
        if u != v {
            neighbors[u].push(v);
            neighbors[v].push(u);
        }
    }

    // Gauss-Seidel sweeps of the barycentric equations, fixed order
    for _ in 0..4000 {
        let mut delta = 0.0f64;
        for v in 0..nv {
            if on_rim[v] || neighbors[v].is_empty() {
                continue;
            }
            let (mut sx, mut sy) = (0.0, 0.0);
            for &u in &neighbors[v] {
                sx += positions[u].0;
                sy += positions[u].1;
            }
            let n = neighbors[v].len() as f64;
            let (nx, ny) = (sx / n, sy / n);
            delta = delta.max((nx - positions[v].0).abs() + (ny - positions[v].1).abs());
            positions[v] = (nx, ny);
        }
        if delta < 1e-12 {
            break;
        }
    }
    Ok(Layout { positions, skipped_face })
}

fn face_corner_vertices(complex: &PolygonalComplex, face: FaceId) -> Vec<usize> {
    (0..complex.sides(face))
        .map(|s| complex.vertex_of_corner(complex.dart(crate::complex::Slot::new(face, s))))
        .collect()
}

fn polygon_area(points: &[(f64, f64)]) -> f64 {
    let mut area = 0.0;
    for i in 0..points.len() {
        let (x0, y0) = points[i];
        let (x1, y1) = points[(i + 1) % points.len()];
        area += x0 * y1 - x1 * y0;
    }
    0.5 * area
}

/// Renders a complex to an SVG document string.
pub fn render_svg(
    complex: &PolygonalComplex,
    options: &RenderOptions,
) -> Result<String, RenderError> {
    let layout = tutte_layout(complex)?;
    let size = options.size;
    let scale = size / 2.4;
    let project = |(x, y): (f64, f64)| (size / 2.0 + scale * x, size / 2.0 - scale * y);

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{size}\" height=\"{size}\" \
         viewBox=\"0 0 {size} {size}\">"
    );
    let _ = writeln!(svg, "  <rect width=\"{size}\" height=\"{size}\" fill=\"white\"/>");
    for f in 0..complex.num_faces() {
        if layout.skipped_face == Some(f) {
            continue;
        }
        let corners = face_corner_vertices(complex, f);
        let pts: Vec<(f64, f64)> = corners.iter().map(|&v| layout.positions[v]).collect();
        if polygon_area(&pts).abs() < 1e-9 {
            return Err(RenderError::LayoutDegenerate(f));
        }
        let mut path = String::new();
        for (i, &p) in pts.iter().enumerate() {
            let (x, y) = project(p);
            let _ = write!(path, "{}{x:.4},{y:.4}", if i == 0 { "" } else { " " });
        }
        let _ = writeln!(
            svg,
            "  <polygon points=\"{path}\" fill=\"{}\" stroke=\"black\" stroke-width=\"{}\"/>",
            fill_for(complex.sides(f)),
            options.stroke_width
        );
    }
    if options.label_curvature {
        for v in complex.vertex_records() {
            if v.is_boundary {
                continue;
            }
            let (x, y) = project(layout.positions[v.id]);
            let kappa = curvature(&v.vertex_type);
            let _ = writeln!(
                svg,
                "  <text x=\"{x:.4}\" y=\"{y:.4}\" font-size=\"{:.1}\" \
                 text-anchor=\"middle\">{kappa}</text>",
                size / 60.0
            );
        }
    }
    let _ = writeln!(svg, "</svg>");
    Ok(svg)
}

/// Per-vertex planar coordinates.
pub type VertexPositions = Vec<(f64, f64)>;

/// Straight-line layout positions, exposed for crossing checks in tests.
/// The second value names the face left undrawn when the input was closed.
pub fn layout_positions(
    complex: &PolygonalComplex,
) -> Result<(VertexPositions, Option<FaceId>), RenderError> {
    let layout = tutte_layout(complex)?;
    Ok((layout.positions, layout.skipped_face))
}
