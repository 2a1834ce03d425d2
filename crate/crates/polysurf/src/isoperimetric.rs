//! Combinatorial and metric isoperimetric quantities for finite face sets.
//!
//! For a selection `H` of faces inside a host complex, the boundary edges are
//! those with one side in `H` and the other side out of it (an unglued edge
//! of a selected face also counts: it faces the rest of the ambient tiling).
//! The combinatorial ratio `|F(H)| / |E(∂H)|` stays bounded on negatively
//! curved hosts and grows without bound on flat ones; the metric quantities
//! use exact Euclidean unit-polygon areas and unit edge lengths.

use std::collections::{BTreeSet, VecDeque};
use std::f64::consts::PI;

use thiserror::Error;

use crate::complex::{ComplexError, DartId, FaceId, GluingData, PolygonalComplex, Slot};
use crate::curvature::{rational, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IsoperimetricError {
    #[error("face selection is empty")]
    EmptySelection,
    #[error("selection has no boundary edges; the isoperimetric ratio is undefined")]
    ClosedSelection,
    #[error("selected face {0} is out of range")]
    FaceOutOfRange(FaceId),
    #[error("ball of radius {radius} touches the host boundary; grow the host window")]
    BallTouchesBoundary { radius: usize },
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// A finite set of faces inside a host complex.
#[derive(Debug, Clone)]
pub struct SubcomplexSelection<'a> {
    host: &'a PolygonalComplex,
    faces: BTreeSet<FaceId>,
}

impl<'a> SubcomplexSelection<'a> {
    pub fn new(
        host: &'a PolygonalComplex,
        faces: impl IntoIterator<Item = FaceId>,
    ) -> Result<Self, IsoperimetricError> {
        let faces: BTreeSet<FaceId> = faces.into_iter().collect();
        if faces.is_empty() {
            return Err(IsoperimetricError::EmptySelection);
        }
        if let Some(&f) = faces.iter().find(|&&f| f >= host.num_faces()) {
            return Err(IsoperimetricError::FaceOutOfRange(f));
        }
        Ok(SubcomplexSelection { host, faces })
    }

    pub fn host(&self) -> &PolygonalComplex {
        self.host
    }

    pub fn faces(&self) -> &BTreeSet<FaceId> {
        &self.faces
    }

    pub fn contains(&self, face: FaceId) -> bool {
        self.faces.contains(&face)
    }
}

/// Edges adjacent to exactly one selected face, as canonical darts.
pub fn boundary_edges(sel: &SubcomplexSelection) -> Vec<DartId> {
    let host = sel.host();
    let mut out = Vec::new();
    for d in host.edges() {
        let inside_a = sel.contains(host.face_of(d));
        let inside_b = host.alpha(d).map(|e| sel.contains(host.face_of(e)));
        let is_boundary = match inside_b {
            Some(inside_b) => inside_a != inside_b,
            // unglued edge of a selected face: the far side lies outside the
            // window the host complex cut out of the ambient tiling
            None => inside_a,
        };
        if is_boundary {
            out.push(d);
        }
    }
    out
}

/// Exact area of the unit-side regular Euclidean n-gon, `n / (4 tan(π/n))`.
pub fn unit_polygon_area(n: usize) -> f64 {
    n as f64 / (4.0 * (PI / n as f64).tan())
}

#[derive(Debug, Clone, PartialEq)]
pub struct IsoperimetricReport {
    pub radius: Option<usize>,
    pub face_count: usize,
    pub boundary_edge_count: usize,
    /// `|F(H)| / |E(∂H)|`, exact.
    pub ratio: Rational,
    /// Sum of exact Euclidean unit-polygon areas over the selection.
    pub rho_area: f64,
    /// Boundary length: one unit per boundary edge.
    pub rho_perimeter: f64,
}

pub fn isoperimetric_report(
    sel: &SubcomplexSelection,
) -> Result<IsoperimetricReport, IsoperimetricError> {
    let boundary = boundary_edges(sel);
    if boundary.is_empty() {
        return Err(IsoperimetricError::ClosedSelection);
    }
    let host = sel.host();
    let mut rho_area = 0.0;
    for &f in sel.faces() {
        let n = host.sides(f);
        let area = unit_polygon_area(n);
        // coarse analytic bound on unit regular polygon area
        debug_assert!(area < (n * n) as f64 / (4.0 * PI));
        rho_area += area;
    }
    Ok(IsoperimetricReport {
        radius: None,
        face_count: sel.faces().len(),
        boundary_edge_count: boundary.len(),
        ratio: rational(sel.faces().len() as i64, boundary.len() as i64),
        rho_area,
        rho_perimeter: boundary.len() as f64,
    })
}

/// Dual-graph BFS distances from a face; `None` where unreachable.
fn dual_bfs(host: &PolygonalComplex, center: FaceId) -> Vec<Option<usize>> {
    let mut dist = vec![None; host.num_faces()];
    dist[center] = Some(0);
    let mut queue = VecDeque::from([center]);
    while let Some(f) = queue.pop_front() {
        let df = dist[f].expect("popped faces have distances");
        for neighbor in host.neighbors(f).flatten() {
            if dist[neighbor].is_none() {
                dist[neighbor] = Some(df + 1);
                queue.push_back(neighbor);
            }
        }
    }
    dist
}

/// Reports for the BFS balls of radius `0..=max_radius` around a center
/// face. Fails if any requested ball contains a face touching the host's
/// boundary, since the counts would then be truncated by the window.
pub fn ball_profile(
    host: &PolygonalComplex,
    center: FaceId,
    max_radius: usize,
) -> Result<Vec<IsoperimetricReport>, IsoperimetricError> {
    if center >= host.num_faces() {
        return Err(IsoperimetricError::FaceOutOfRange(center));
    }
    let dist = dual_bfs(host, center);
    let mut reports = Vec::with_capacity(max_radius + 1);
    for radius in 0..=max_radius {
        let faces: Vec<FaceId> = (0..host.num_faces())
            .filter(|&f| dist[f].is_some_and(|d| d <= radius))
            .collect();
        let touches_rim = faces.iter().any(|&f| {
            (0..host.sides(f)).any(|s| host.alpha(host.dart(Slot::new(f, s))).is_none())
        });
        if touches_rim {
            return Err(IsoperimetricError::BallTouchesBoundary { radius });
        }
        let sel = SubcomplexSelection::new(host, faces)?;
        let mut report = isoperimetric_report(&sel)?;
        report.radius = Some(radius);
        reports.push(report);
    }
    Ok(reports)
}

/// Star subdivision: each n-gon becomes n triangles sharing a new center
/// vertex. Original gluings carry over to the outer triangle sides; each
/// spoke is shared by consecutive triangles of the same face. The Euler
/// characteristic is unchanged. In the flat metric the spokes have length
/// equal to the polygon circumradius, which is at least `1/√3` (the value
/// for the triangle), so subdivided boundary edges are never shorter than
/// that.
pub fn star_subdivide(complex: &PolygonalComplex) -> Result<PolygonalComplex, ComplexError> {
    let mut data = GluingData::new();
    // triangle j of face f: sides 0 = original side j, 1 = spoke corner
    // j+1 → center, 2 = spoke center → corner j
    let mut tri = Vec::with_capacity(complex.num_faces());
    for f in 0..complex.num_faces() {
        let mut ids = Vec::with_capacity(complex.sides(f));
        for j in 0..complex.sides(f) {
            ids.push(data.add_face(format!("{}s{}", complex.face_name(f), j), 3));
        }
        tri.push(ids);
    }
    for f in 0..complex.num_faces() {
        let n = complex.sides(f);
        for j in 0..n {
            let next = (j + 1) % n;
            data.add_gluing(Slot::new(tri[f][j], 1), Slot::new(tri[f][next], 2));
            let d = complex.dart(Slot::new(f, j));
            if let Some(e) = complex.alpha(d) {
                if d < e {
                    let se = complex.slot(e);
                    data.add_gluing_with(
                        Slot::new(tri[f][j], 0),
                        Slot::new(tri[se.face][se.side], 0),
                        complex.is_reversing(d),
                    );
                }
            }
        }
    }
    PolygonalComplex::build(&data)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{generate, GeneratorSpec, PlatonicSolid};

    #[test]
    fn single_heptagon_in_a_73_ball() {
        let host = generate(GeneratorSpec::PqBall { p: 7, q: 3, radius: 3 }).unwrap();
        let sel = SubcomplexSelection::new(&host, [0]).unwrap();
        assert_eq!(boundary_edges(&sel).len(), 7);
        let report = isoperimetric_report(&sel).unwrap();
        assert_eq!(report.ratio, rational(1, 7));
        assert!((report.rho_area - unit_polygon_area(7)).abs() < 1e-12);
    }

    #[test]
    fn full_selection_of_a_closed_complex_has_no_boundary() {
        let cube = generate(GeneratorSpec::Platonic(PlatonicSolid::Cube)).unwrap();
        let sel = SubcomplexSelection::new(&cube, 0..cube.num_faces()).unwrap();
        assert!(boundary_edges(&sel).is_empty());
        assert!(matches!(
            isoperimetric_report(&sel),
            Err(IsoperimetricError::ClosedSelection)
        ));
    }

    #[test]
    fn center_plus_neighbors_matches_a_brute_force_scan() {
        let host = generate(GeneratorSpec::PqBall { p: 7, q: 3, radius: 3 }).unwrap();
        let mut faces: Vec<FaceId> = vec![0];
        faces.extend(host.neighbors(0).flatten());
        assert_eq!(faces.len(), 8);
        let sel = SubcomplexSelection::new(&host, faces.clone()).unwrap();
        let fast = boundary_edges(&sel).len();
        // brute force straight from the definition
        let inside: BTreeSet<FaceId> = faces.into_iter().collect();
        let mut slow = 0;
        for d in host.edges() {
            let a = inside.contains(&host.face_of(d));
            let b = host.alpha(d).map(|e| inside.contains(&host.face_of(e)));
            if match b {
                Some(b) => a != b,
                None => a,
            } {
                slow += 1;
            }
        }
        assert_eq!(fast, slow);
    }

    #[test]
    fn hexagon_area_respects_the_coarse_bound() {
        let area = unit_polygon_area(6);
        assert!((area - 1.5 * 3f64.sqrt()).abs() < 1e-12);
        assert!(area <= 36.0 / (4.0 * PI));
        for n in 3..=40 {
            assert!(unit_polygon_area(n) < (n * n) as f64 / (4.0 * PI), "n = {n}");
        }
    }

    #[test]
    fn heptagonal_ball_ratios_stay_bounded() {
        let host = generate(GeneratorSpec::PqBall { p: 7, q: 3, radius: 8 }).unwrap();
        let reports = ball_profile(&host, 0, 4).unwrap();
        let counts: Vec<(usize, usize)> =
            reports.iter().map(|r| (r.face_count, r.boundary_edge_count)).collect();
        assert_eq!(counts, vec![(1, 7), (8, 28), (29, 77), (85, 203), (232, 532)]);
        for r in &reports {
            assert!(r.ratio < rational(1, 2), "radius {:?}: ratio {}", r.radius, r.ratio);
        }
    }

    #[test]
    fn hexagonal_ball_ratios_grow_linearly() {
        let host = generate(GeneratorSpec::PqBall { p: 6, q: 3, radius: 8 }).unwrap();
        let reports = ball_profile(&host, 0, 4).unwrap();
        for (k, r) in reports.iter().enumerate() {
            // hexagonal balls: F = 3k² + 3k + 1, boundary edges 6(2k + 1)
            assert_eq!(r.face_count, 3 * k * k + 3 * k + 1);
            assert_eq!(r.boundary_edge_count, 6 * (2 * k + 1));
        }
        for w in reports.windows(2) {
            assert!(w[1].ratio > w[0].ratio);
        }
    }

    #[test]
    fn ball_touching_the_rim_is_rejected() {
        let host = generate(GeneratorSpec::PqBall { p: 7, q: 3, radius: 2 }).unwrap();
        assert!(matches!(
            ball_profile(&host, 0, 2),
            Err(IsoperimetricError::BallTouchesBoundary { .. })
        ));
    }

    #[test]
    fn radius_zero_ratio_is_one_over_sides() {
        let host = generate(GeneratorSpec::PqBall { p: 6, q: 3, radius: 4 }).unwrap();
        let reports = ball_profile(&host, 0, 0).unwrap();
        assert_eq!(reports[0].ratio, rational(1, 6));
    }

    #[test]
    fn star_subdivision_of_the_cube() {
        let cube = generate(GeneratorSpec::Platonic(PlatonicSolid::Cube)).unwrap();
        let sub = star_subdivide(&cube).unwrap();
        assert_eq!(sub.num_faces(), 24);
        assert_eq!(sub.num_vertices(), 8 + 6);
        assert_eq!(sub.num_edges(), 12 + 24);
        assert_eq!(sub.euler_characteristic_raw(), 2);
        assert!((0..sub.num_faces()).all(|f| sub.sides(f) == 3));
    }

    #[test]
    fn star_subdivision_of_the_square_torus() {
        let torus = generate(GeneratorSpec::SquareTorus).unwrap();
        let sub = star_subdivide(&torus).unwrap();
        assert_eq!(sub.num_faces(), 4);
        assert_eq!(sub.num_vertices(), 2);
        assert_eq!(sub.num_edges(), 6);
        assert_eq!(sub.euler_characteristic_raw(), 0);
    }

    #[test]
    fn star_subdivision_preserves_chi_everywhere() {
        for (spec, complex) in crate::generators::standard_closed_fixtures() {
            let sub = star_subdivide(&complex).unwrap();
            assert_eq!(
                sub.euler_characteristic_raw(),
                complex.euler_characteristic_raw(),
                "{spec}"
            );
            let total_sides: usize = (0..complex.num_faces()).map(|f| complex.sides(f)).sum();
            assert_eq!(sub.num_edges(), complex.num_edges() + total_sides, "{spec}");
        }
    }

    #[test]
    fn spoke_lengths_are_at_least_one_over_sqrt3() {
        // circumradius of the unit n-gon, 1/(2 sin(π/n)), grows with n
        for n in 3..=40 {
            let circumradius = 0.5 / (PI / n as f64).sin();
            assert!(circumradius >= 1.0 / 3f64.sqrt() - 1e-12, "n = {n}");
        }
    }
}
