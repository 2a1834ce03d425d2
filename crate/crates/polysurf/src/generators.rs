//! Deterministic builders for the standard complexes: Platonic solids,
//! prisms, antiprisms, double n-gons, flat tori, the genus-2 octagon, and
//! combinatorial {p,q} balls.
//!
//! The Platonic solids are hard-coded incidence tables — faces listed as
//! vertex cycles, all counterclockwise from outside — and serve as ground
//! truth for everything else. Gluings are derived by matching each directed
//! edge `u→v` with its reverse `v→u`.
//!
//! {p,q} balls are raw developments: they contain exactly the faces within
//! dual-graph distance `radius` of the seed, and a vertex link is glued shut
//! only once all `q` of its corners are present. Rim vertices keep their
//! partial links; no extra faces are attached to complete them.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::complex::{GluingData, PolygonalComplex, Slot, VertexType};
use crate::cover::{develop_uniform, CoverError};
use crate::gauss_bonnet::check_gauss_bonnet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeneratorError {
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
    #[error("bad parameters for {family}: {reason}")]
    BadParameters { family: String, reason: String },
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error(transparent)]
    Complex(#[from] crate::complex::ComplexError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlatonicSolid {
    Tetrahedron,
    Cube,
    Octahedron,
    Dodecahedron,
    Icosahedron,
}

impl PlatonicSolid {
    pub const ALL: [PlatonicSolid; 5] = [
        PlatonicSolid::Tetrahedron,
        PlatonicSolid::Cube,
        PlatonicSolid::Octahedron,
        PlatonicSolid::Dodecahedron,
        PlatonicSolid::Icosahedron,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PlatonicSolid::Tetrahedron => "tetrahedron",
            PlatonicSolid::Cube => "cube",
            PlatonicSolid::Octahedron => "octahedron",
            PlatonicSolid::Dodecahedron => "dodecahedron",
            PlatonicSolid::Icosahedron => "icosahedron",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorSpec {
    Platonic(PlatonicSolid),
    Prism(usize),
    Antiprism(usize),
    DoubleNgon(usize),
    PqBall { p: usize, q: usize, radius: usize },
    SquareTorus,
    HexagonalTorus,
    Genus2Octagon,
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorSpec::Platonic(s) => f.write_str(s.name()),
            GeneratorSpec::Prism(n) => write!(f, "prism {n}"),
            GeneratorSpec::Antiprism(n) => write!(f, "antiprism {n}"),
            GeneratorSpec::DoubleNgon(n) => write!(f, "double-ngon {n}"),
            GeneratorSpec::PqBall { p, q, radius } => write!(f, "pq-ball {p} {q} {radius}"),
            GeneratorSpec::SquareTorus => f.write_str("square-torus"),
            GeneratorSpec::HexagonalTorus => f.write_str("hexagonal-torus"),
            GeneratorSpec::Genus2Octagon => f.write_str("genus2-octagon"),
        }
    }
}

impl GeneratorSpec {
    /// Parses the textual form used by the CLI and the C API, e.g.
    /// `"dodecahedron"`, `"prism 5"`, `"pq-ball 7 3 2"`.
    pub fn parse(text: &str) -> Result<Self, GeneratorError> {
        let mut parts = text.split_whitespace();
        let family = parts.next().unwrap_or("").to_string();
        let args: Vec<usize> = parts
            .map(|p| {
                p.parse::<usize>().map_err(|_| GeneratorError::BadParameters {
                    family: family.clone(),
                    reason: format!("parameter {p:?} is not a nonnegative integer"),
                })
            })
            .collect::<Result<_, _>>()?;
        let need = |n: usize| -> Result<(), GeneratorError> {
            if args.len() == n {
                Ok(())
            } else {
                Err(GeneratorError::BadParameters {
                    family: family.clone(),
                    reason: format!("expected {n} parameters, got {}", args.len()),
                })
            }
        };
        let spec = match family.as_str() {
            "tetrahedron" => GeneratorSpec::Platonic(PlatonicSolid::Tetrahedron),
            "cube" => GeneratorSpec::Platonic(PlatonicSolid::Cube),
            "octahedron" => GeneratorSpec::Platonic(PlatonicSolid::Octahedron),
            "dodecahedron" => GeneratorSpec::Platonic(PlatonicSolid::Dodecahedron),
            "icosahedron" => GeneratorSpec::Platonic(PlatonicSolid::Icosahedron),
            "prism" => {
                need(1)?;
                GeneratorSpec::Prism(args[0])
            }
            "antiprism" => {
                need(1)?;
                GeneratorSpec::Antiprism(args[0])
            }
            "double-ngon" => {
                need(1)?;
                GeneratorSpec::DoubleNgon(args[0])
            }
            "pq-ball" => {
                need(3)?;
                GeneratorSpec::PqBall { p: args[0], q: args[1], radius: args[2] }
            }
            "square-torus" => GeneratorSpec::SquareTorus,
            "hexagonal-torus" => GeneratorSpec::HexagonalTorus,
            "genus2-octagon" => GeneratorSpec::Genus2Octagon,
            other => return Err(GeneratorError::UnknownFamily(other.to_string())),
        };
        if !matches!(
            spec,
            GeneratorSpec::Prism(_)
                | GeneratorSpec::Antiprism(_)
                | GeneratorSpec::DoubleNgon(_)
                | GeneratorSpec::PqBall { .. }
        ) {
            need(0)?;
        }
        spec.validate()?;
        Ok(spec)
    }

    /// Family-specific parameter ranges.
    pub fn validate(&self) -> Result<(), GeneratorError> {
        let check_n = |n: usize, family: &str| {
            if n < 3 {
                Err(GeneratorError::BadParameters {
                    family: family.to_string(),
                    reason: format!("n = {n} is below 3"),
                })
            } else {
                Ok(())
            }
        };
        match *self {
            GeneratorSpec::Prism(n) => check_n(n, "prism"),
            GeneratorSpec::Antiprism(n) => check_n(n, "antiprism"),
            GeneratorSpec::DoubleNgon(n) => check_n(n, "double-ngon"),
            GeneratorSpec::PqBall { p, q, .. } => {
                check_n(p, "pq-ball")?;
                check_n(q, "pq-ball")
            }
            _ => Ok(()),
        }
    }
}

/// Builds gluing data from faces given as vertex cycles, all oriented the
/// same way: side `i` of a face `[v_0, …, v_{n−1}]` is the directed edge
/// `v_i → v_{i+1}`, and it glues (reversing) to the side carrying the
/// opposite direction.
fn from_vertex_cycles(
    family: &str,
    cycles: &[Vec<usize>],
) -> Result<GluingData, GeneratorError> {
    let mut data = GluingData::new();
    let mut directed: HashMap<(usize, usize), Slot> = HashMap::new();
    for (f, cycle) in cycles.iter().enumerate() {
        data.add_face(format!("f{f}"), cycle.len());
        for (i, (&u, &v)) in cycle.iter().zip(cycle.iter().cycle().skip(1)).enumerate() {
            if directed.insert((u, v), Slot::new(f, i)).is_some() {
                return Err(GeneratorError::BadParameters {
                    family: family.to_string(),
                    reason: format!("directed edge {u}->{v} appears twice"),
                });
            }
        }
    }
    // emit gluings in face/side declaration order
    for (f, cycle) in cycles.iter().enumerate() {
        for (i, (&u, &v)) in cycle.iter().zip(cycle.iter().cycle().skip(1)).enumerate() {
            if u < v {
                let twin =
                    directed.get(&(v, u)).ok_or_else(|| GeneratorError::BadParameters {
                        family: family.to_string(),
                        reason: format!("edge {u}->{v} has no reverse"),
                    })?;
                data.add_gluing(Slot::new(f, i), *twin);
            }
        }
    }
    Ok(data)
}

// Faces as vertex cycles, counterclockwise from outside.
const TETRAHEDRON: [[usize; 3]; 4] = [[0, 1, 2], [0, 2, 3], [0, 3, 1], [1, 3, 2]];

const CUBE: [[usize; 4]; 6] = [
    [0, 3, 2, 1],
    [4, 5, 6, 7],
    [0, 1, 5, 4],
    [1, 2, 6, 5],
    [2, 3, 7, 6],
    [3, 0, 4, 7],
];

const OCTAHEDRON: [[usize; 3]; 8] = [
    [0, 1, 2],
    [0, 2, 3],
    [0, 3, 4],
    [0, 4, 1],
    [5, 2, 1],
    [5, 3, 2],
    [5, 4, 3],
    [5, 1, 4],
];

const ICOSAHEDRON: [[usize; 3]; 20] = [
    [0, 1, 2],
    [0, 2, 3],
    [0, 3, 4],
    [0, 4, 5],
    [0, 5, 1],
    [1, 5, 10],
    [1, 10, 6],
    [1, 6, 2],
    [2, 6, 7],
    [2, 7, 3],
    [3, 7, 8],
    [3, 8, 4],
    [4, 8, 9],
    [4, 9, 5],
    [5, 9, 10],
    [6, 10, 11],
    [6, 11, 7],
    [7, 11, 8],
    [8, 11, 9],
    [9, 11, 10],
];

// Dual of the icosahedron table: one pentagon per icosahedron vertex, listed
// as the cycle of incident icosahedron faces.
const DODECAHEDRON: [[usize; 5]; 12] = [
    [0, 4, 3, 2, 1],
    [0, 7, 6, 5, 4],
    [0, 1, 9, 8, 7],
    [1, 2, 11, 10, 9],
    [2, 3, 13, 12, 11],
    [3, 4, 5, 14, 13],
    [6, 7, 8, 16, 15],
    [8, 9, 10, 17, 16],
    [10, 11, 12, 18, 17],
    [12, 13, 14, 19, 18],
    [5, 6, 15, 19, 14],
    [15, 16, 17, 18, 19],
];

fn platonic_cycles(solid: PlatonicSolid) -> Vec<Vec<usize>> {
    let rows: Vec<Vec<usize>> = match solid {
        PlatonicSolid::Tetrahedron => TETRAHEDRON.iter().map(|r| r.to_vec()).collect(),
        PlatonicSolid::Cube => CUBE.iter().map(|r| r.to_vec()).collect(),
        PlatonicSolid::Octahedron => OCTAHEDRON.iter().map(|r| r.to_vec()).collect(),
        PlatonicSolid::Dodecahedron => DODECAHEDRON.iter().map(|r| r.to_vec()).collect(),
        PlatonicSolid::Icosahedron => ICOSAHEDRON.iter().map(|r| r.to_vec()).collect(),
    };
    rows
}

fn prism_cycles(n: usize) -> Vec<Vec<usize>> {
    // bottom vertices 0..n, top n..2n
    let mut cycles = Vec::with_capacity(n + 2);
    cycles.push((0..n).rev().collect());
    cycles.push((n..2 * n).collect());
    for i in 0..n {
        let j = (i + 1) % n;
        cycles.push(vec![i, j, n + j, n + i]);
    }
    cycles
}

fn antiprism_cycles(n: usize) -> Vec<Vec<usize>> {
    let mut cycles = Vec::with_capacity(2 * n + 2);
    cycles.push((0..n).rev().collect());
    cycles.push((n..2 * n).collect());
    for i in 0..n {
        let j = (i + 1) % n;
        cycles.push(vec![i, j, n + i]);
        cycles.push(vec![j, n + j, n + i]);
    }
    cycles
}

fn double_ngon_data(n: usize) -> GluingData {
    // two n-gons sewn rim to rim (the "beach ball"); with both faces listed
    // counterclockwise the matching side of the second face is mirrored
    let mut data = GluingData::new();
    let a = data.add_face("f0", n);
    let b = data.add_face("f1", n);
    for i in 0..n {
        data.add_gluing(Slot::new(a, i), Slot::new(b, n - 1 - i));
    }
    data
}

fn square_torus_data() -> GluingData {
    let mut data = GluingData::new();
    let f = data.add_face("f0", 4);
    data.add_gluing(Slot::new(f, 0), Slot::new(f, 2));
    data.add_gluing(Slot::new(f, 1), Slot::new(f, 3));
    data
}

fn hexagonal_torus_data() -> GluingData {
    let mut data = GluingData::new();
    let f = data.add_face("f0", 6);
    for i in 0..3 {
        data.add_gluing(Slot::new(f, i), Slot::new(f, i + 3));
    }
    data
}

fn genus2_octagon_data() -> GluingData {
    let mut data = GluingData::new();
    let f = data.add_face("f0", 8);
    for (a, b) in [(0, 2), (1, 3), (4, 6), (5, 7)] {
        data.add_gluing(Slot::new(f, a), Slot::new(f, b));
    }
    data
}

/// Gluing data for a family; deterministic.
pub fn generate_data(spec: GeneratorSpec) -> Result<GluingData, GeneratorError> {
    spec.validate()?;
    match spec {
        GeneratorSpec::Platonic(solid) => from_vertex_cycles(solid.name(), &platonic_cycles(solid)),
        GeneratorSpec::Prism(n) => from_vertex_cycles("prism", &prism_cycles(n)),
        GeneratorSpec::Antiprism(n) => from_vertex_cycles("antiprism", &antiprism_cycles(n)),
        GeneratorSpec::DoubleNgon(n) => Ok(double_ngon_data(n)),
        GeneratorSpec::PqBall { p, q, radius } => {
            let ball = develop_uniform(p, q, radius)?;
            Ok(ball.complex.to_gluing_data())
        }
        GeneratorSpec::SquareTorus => Ok(square_torus_data()),
        GeneratorSpec::HexagonalTorus => Ok(hexagonal_torus_data()),
        GeneratorSpec::Genus2Octagon => Ok(genus2_octagon_data()),
    }
}

pub fn generate(spec: GeneratorSpec) -> Result<PolygonalComplex, GeneratorError> {
    Ok(PolygonalComplex::build(&generate_data(spec)?)?)
}

/// Family-specific postconditions: face/vertex/edge counts, vertex-types,
/// Euler characteristic via Gauss–Bonnet, edge-to-edge flags.
pub fn verify_generator(spec: GeneratorSpec, complex: &PolygonalComplex) -> bool {
    let closed_checks = |chi: i64| -> bool {
        complex.is_closed()
            && complex.is_orientable()
            && check_gauss_bonnet(complex).map(|r| r.consistent && r.chi_euler == chi).unwrap_or(false)
    };
    let all_types = |sizes: &[usize]| -> bool {
        let want = VertexType::cyclic(sizes).expect("valid type");
        complex.vertex_records().iter().all(|v| v.vertex_type == want)
    };
    match spec {
        GeneratorSpec::Platonic(solid) => {
            let (f, v, e, link): (usize, usize, usize, Vec<usize>) = match solid {
                PlatonicSolid::Tetrahedron => (4, 4, 6, vec![3, 3, 3]),
                PlatonicSolid::Cube => (6, 8, 12, vec![4, 4, 4]),
                PlatonicSolid::Octahedron => (8, 6, 12, vec![3, 3, 3, 3]),
                PlatonicSolid::Dodecahedron => (12, 20, 30, vec![5, 5, 5]),
                PlatonicSolid::Icosahedron => (20, 12, 30, vec![3, 3, 3, 3, 3]),
            };
            closed_checks(2)
                && complex.num_faces() == f
                && complex.num_vertices() == v
                && complex.num_edges() == e
                && all_types(&link)
                && complex.is_edge_to_edge()
        }
        GeneratorSpec::Prism(n) => {
            closed_checks(2)
                && complex.num_faces() == n + 2
                && complex.num_vertices() == 2 * n
                && all_types(&[4, 4, n])
        }
        GeneratorSpec::Antiprism(n) => {
            closed_checks(2)
                && complex.num_faces() == 2 * n + 2
                && complex.num_vertices() == 2 * n
                && all_types(&[3, 3, 3, n])
        }
        GeneratorSpec::DoubleNgon(n) => {
            closed_checks(2)
                && complex.num_faces() == 2
                && complex.num_vertices() == n
                && complex.num_edges() == n
                && all_types(&[n, n])
                && !complex.is_edge_to_edge()
        }
        GeneratorSpec::PqBall { p, q, .. } => {
            let want = VertexType::cyclic(&vec![p; q]).expect("valid type");
            (0..complex.num_faces()).all(|f| complex.sides(f) == p)
                && complex
                    .vertex_records()
                    .iter()
                    .filter(|v| !v.is_boundary)
                    .all(|v| v.vertex_type == want)
        }
        GeneratorSpec::SquareTorus => {
            closed_checks(0) && complex.num_faces() == 1 && all_types(&[4, 4, 4, 4])
        }
        GeneratorSpec::HexagonalTorus => {
            closed_checks(0) && complex.num_faces() == 1 && all_types(&[6, 6, 6])
        }
        GeneratorSpec::Genus2Octagon => {
            closed_checks(-2) && complex.num_faces() == 1 && all_types(&[8; 8])
        }
    }
}

/// Every closed fixture family at the sizes the test suites use.
pub fn standard_closed_fixtures() -> Vec<(GeneratorSpec, PolygonalComplex)> {
    let mut specs: Vec<GeneratorSpec> =
        PlatonicSolid::ALL.iter().map(|&s| GeneratorSpec::Platonic(s)).collect();
    for n in 3..=8 {
        specs.push(GeneratorSpec::Prism(n));
        specs.push(GeneratorSpec::Antiprism(n));
        specs.push(GeneratorSpec::DoubleNgon(n));
    }
    specs.push(GeneratorSpec::SquareTorus);
    specs.push(GeneratorSpec::HexagonalTorus);
    specs.push(GeneratorSpec::Genus2Octagon);
    specs
        .into_iter()
        .map(|s| {
            let c = generate(s).expect("fixture generates");
            (s, c)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::{develop_universal_cover, DevelopmentLimit, HaltReason};
    use crate::curvature::{curvature, rational};
    use crate::gauss_bonnet::curvature_sum;

    #[test]
    fn every_fixture_satisfies_its_postconditions() {
        for (spec, complex) in standard_closed_fixtures() {
            assert!(verify_generator(spec, &complex), "{spec} failed verification");
        }
    }

    #[test]
    fn dodecahedron_counts_and_types() {
        let c = generate(GeneratorSpec::Platonic(PlatonicSolid::Dodecahedron)).unwrap();
        assert_eq!(
            (c.num_faces(), c.num_edges(), c.num_vertices()),
            (12, 30, 20)
        );
        assert_eq!(c.euler_characteristic_raw(), 2);
        let t555 = VertexType::cyclic(&[5, 5, 5]).unwrap();
        assert!(c.vertex_records().iter().all(|v| v.vertex_type == t555));
        assert!(c.is_edge_to_edge());
        assert!(c.is_orientable());
    }

    #[test]
    fn double_hexagon_matches_the_two_hexagon_sphere() {
        let c = generate(GeneratorSpec::DoubleNgon(6)).unwrap();
        assert_eq!((c.num_faces(), c.num_edges(), c.num_vertices()), (2, 6, 6));
        let t66 = VertexType::cyclic(&[6, 6]).unwrap();
        for v in c.vertex_records() {
            assert_eq!(v.vertex_type, t66);
            assert_eq!(c.vertex_degree(v.id), 2);
        }
        assert!(!c.is_edge_to_edge());
        assert_eq!(curvature_sum(&c).unwrap(), rational(2, 1));
    }

    #[test]
    fn prism_and_antiprism_curvatures() {
        let c = generate(GeneratorSpec::Prism(3)).unwrap();
        let t = VertexType::cyclic(&[3, 4, 4]).unwrap();
        assert_eq!(curvature(&t), rational(1, 3));
        assert_eq!(c.num_vertices(), 6);
        assert_eq!(curvature_sum(&c).unwrap(), rational(2, 1));

        let c = generate(GeneratorSpec::Antiprism(4)).unwrap();
        let t = VertexType::cyclic(&[3, 3, 3, 4]).unwrap();
        assert_eq!(curvature(&t), rational(1, 4));
        assert_eq!(c.num_vertices(), 8);
        assert_eq!(curvature_sum(&c).unwrap(), rational(2, 1));
    }

    #[test]
    fn pq_ball_interior_types() {
        let c = generate(GeneratorSpec::PqBall { p: 7, q: 3, radius: 2 }).unwrap();
        assert!(!c.is_closed());
        let want = VertexType::cyclic(&[7, 7, 7]).unwrap();
        let interior: Vec<_> =
            c.vertex_records().iter().filter(|v| !v.is_boundary).collect();
        assert!(!interior.is_empty());
        for v in interior {
            assert_eq!(v.vertex_type, want);
            assert_eq!(curvature(&v.vertex_type), rational(-1, 14));
        }
    }

    #[test]
    fn spherical_pq_balls_close_into_platonic_solids() {
        for (p, q, solid) in [
            (3, 3, PlatonicSolid::Tetrahedron),
            (4, 3, PlatonicSolid::Cube),
            (3, 4, PlatonicSolid::Octahedron),
            (5, 3, PlatonicSolid::Dodecahedron),
            (3, 5, PlatonicSolid::Icosahedron),
        ] {
            let ball = generate(GeneratorSpec::PqBall { p, q, radius: 30 }).unwrap();
            assert!(ball.is_closed(), "{{{p},{q}}} did not close");
            let reference = generate(GeneratorSpec::Platonic(solid)).unwrap();
            assert_eq!(ball.num_faces(), reference.num_faces());
            assert_eq!(ball.num_vertices(), reference.num_vertices());
            assert_eq!(ball.num_edges(), reference.num_edges());
            // full structural agreement with the hard-coded incidence tables
            let isomorphic = (0..reference.num_darts())
                .any(|d| crate::complex::rooted_isomorphic(&ball, 0, &reference, d));
            assert!(isomorphic, "{{{p},{q}}} is not the {}", solid.name());
        }
    }

    #[test]
    fn platonic_solids_develop_to_themselves() {
        // spheres are their own universal covers
        for solid in PlatonicSolid::ALL {
            let base = generate(GeneratorSpec::Platonic(solid)).unwrap();
            let ball =
                develop_universal_cover(&base, DevelopmentLimit::MaxFaces(1000)).unwrap();
            assert_eq!(ball.halted, HaltReason::Closure, "{}", solid.name());
            assert_eq!(ball.complex.num_faces(), base.num_faces());
            assert_eq!(ball.complex.num_vertices(), base.num_vertices());
            // the projection is a bijection on darts
            let mut seen = vec![false; base.num_darts()];
            for &b in &ball.projection {
                assert!(!seen[b]);
                seen[b] = true;
            }
            assert!(seen.iter().all(|&s| s));
        }
    }

    #[test]
    fn generator_output_is_deterministic() {
        for (spec, complex) in standard_closed_fixtures() {
            let again = generate(spec).unwrap();
            assert_eq!(complex, again, "{spec}");
        }
        let a = generate(GeneratorSpec::PqBall { p: 7, q: 3, radius: 3 }).unwrap();
        let b = generate(GeneratorSpec::PqBall { p: 7, q: 3, radius: 3 }).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn parse_round_trips() {
        for text in [
            "dodecahedron",
            "prism 5",
            "antiprism 3",
            "double-ngon 6",
            "pq-ball 7 3 2",
            "square-torus",
            "hexagonal-torus",
            "genus2-octagon",
        ] {
            let spec = GeneratorSpec::parse(text).unwrap();
            assert_eq!(spec.to_string(), text);
        }
        assert!(matches!(
            GeneratorSpec::parse("klein-bottle"),
            Err(GeneratorError::UnknownFamily(_))
        ));
        assert!(matches!(
            GeneratorSpec::parse("prism"),
            Err(GeneratorError::BadParameters { .. })
        ));
        assert!(matches!(
            GeneratorSpec::parse("prism 2"),
            Err(GeneratorError::BadParameters { .. })
        ));
    }
}
